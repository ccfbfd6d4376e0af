//! Gain and reflection response of a fixed design across frequency, as CSV
//! on stdout. Physical lengths stay fixed, so electrical lengths scale with
//! frequency.
//!
//! ```bash
//! cargo run -p ampso --example frequency_sweep > response.csv
//! ```

use ampso::design::{sweep, DesignSpec};
use ampso::reference::{FHX35X_DESIGN_FREQUENCY_HZ, FHX35X_TRIALS};
use ampso::report::sweep_csv;
use ampso::touchstone::parse_device_file;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../devices/fhx35x.s2p");
    let device = parse_device_file(&std::fs::read_to_string(path)?)?;
    let spec = DesignSpec::new(device, FHX35X_DESIGN_FREQUENCY_HZ);

    // the third reference design, swept over the full fixture range
    let v = FHX35X_TRIALS[2].design_vector()?;
    let points = 141;
    let (lo, hi) = (1.0e9, 8.0e9);
    let freqs: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();

    let response = sweep(&spec, &v, &freqs)?;
    print!("{}", sweep_csv(&response));
    Ok(())
}
