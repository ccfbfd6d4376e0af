//! Export the 1 dB noise-figure circle with the five reference-design Γs
//! points overlaid (all five land inside), as Smith-chart-ready CSV.
//!
//! ```bash
//! cargo run -p ampso --example noise_circles > circle.csv
//! ```

use ampso::amplifier::noise_circle;
use ampso::network::source_reflection;
use ampso::reference::{FHX35X_DESIGN_FREQUENCY_HZ, FHX35X_NF_LIMIT_DB, FHX35X_TRIALS};
use ampso::report::circles_csv;
use ampso::touchstone::parse_device_file;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../devices/fhx35x.s2p");
    let device = parse_device_file(&std::fs::read_to_string(path)?)?;
    let (_, noise) = device.at(FHX35X_DESIGN_FREQUENCY_HZ)?;

    let circle = noise_circle(&noise, FHX35X_NF_LIMIT_DB, device.reference_impedance)?;
    eprintln!(
        "1 dB circle: center {:.4} at {:.2} deg, radius {:.4}",
        circle.center.norm(),
        circle.center.arg().to_degrees(),
        circle.radius
    );

    let overlays: Vec<_> = FHX35X_TRIALS
        .iter()
        .map(|t| {
            let v = t.design_vector().unwrap();
            source_reflection(v.d1, v.l1).unwrap()
        })
        .collect();

    print!("{}", circles_csv(&circle, 360, &overlays));
    Ok(())
}
