//! Fixture fidelity report: how closely the shipped FHX35X fixture
//! reproduces the recorded reference-design observables (source reflections,
//! noise figures, and the verified gain and terminal reflections of the
//! third design).
//!
//! ```bash
//! cargo run -p ampso --example reference_check
//! ```

use ampso::reference::{compare_fixture, FHX35X_DESIGN_FREQUENCY_HZ};
use ampso::touchstone::parse_device_file;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../devices/fhx35x.s2p");
    let device = parse_device_file(&std::fs::read_to_string(path)?)?;
    let report = compare_fixture(&device, FHX35X_DESIGN_FREQUENCY_HZ)?;
    print!("{}", report.render());

    let all_inside = report.trials.iter().all(|t| t.inside_nf_limit_circle);
    println!("all reference designs inside the 1 dB noise circle: {all_inside}");
    Ok(())
}
