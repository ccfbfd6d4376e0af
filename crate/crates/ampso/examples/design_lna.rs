//! Full end-to-end amplifier design: 15 particles over the four matching
//! lengths, 3000 iterations, 20 dB gain target with the noise figure kept
//! below 1 dB.
//!
//! ```bash
//! cargo run -p ampso --example design_lna
//! ```

use std::time::Instant;

use ampso::design::{design_amplifier, DesignSpec};
use ampso::report::render_run_report;
use ampso::touchstone::parse_device_file;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../devices/fhx35x.s2p");
    let device = parse_device_file(&std::fs::read_to_string(path)?)?;

    let mut spec = DesignSpec::new(device, 4.0e9);
    spec.swarm.seed = 2024;

    let started = Instant::now();
    let result = design_amplifier(&spec)?;
    print!(
        "{}",
        render_run_report(&spec, &result, Some(started.elapsed()))
    );

    println!();
    println!("convergence (iteration: converged/feasible of 15):");
    for &it in &[0usize, 50, 100, 250, 500, 1000, 3000] {
        let r = &result.trace.records[it];
        println!(
            "  {:4}: {:2}/{:2}  gbest fitness {:.4} dB",
            r.iteration, r.n_converged, r.n_feasible, r.gbest_fitness
        );
    }
    Ok(())
}
