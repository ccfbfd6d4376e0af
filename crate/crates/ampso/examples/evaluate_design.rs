//! Evaluate fixed designs: the five FHX35X reference designs against the
//! shipped fixture, with gain, noise figure and reflection magnitudes.
//!
//! ```bash
//! cargo run -p ampso --example evaluate_design
//! ```

use ampso::design::{evaluate_fixed, DesignSpec};
use ampso::reference::{FHX35X_DESIGN_FREQUENCY_HZ, FHX35X_TRIALS};
use ampso::touchstone::parse_device_file;
use ampso::units::db_from_magnitude;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../devices/fhx35x.s2p");
    let device = parse_device_file(&std::fs::read_to_string(path)?)?;
    let spec = DesignSpec::new(device, FHX35X_DESIGN_FREQUENCY_HZ);

    println!("trial   gain dB   NF dB   |Gs|      ang(Gs)    |Gin| dB  |Gout| dB");
    for (i, trial) in FHX35X_TRIALS.iter().enumerate() {
        let v = trial.design_vector()?;
        let m = evaluate_fixed(&spec, &v)?;
        println!(
            "{:5}   {:7.3}   {:.3}   {:.6}  {:9.5}  {:8.3}  {:8.3}",
            i + 1,
            m.gain_db,
            m.noise_figure_db,
            m.gamma_s.norm(),
            m.gamma_s.arg().to_degrees(),
            db_from_magnitude(m.gamma_in.norm()),
            db_from_magnitude(m.gamma_out.norm()),
        );
    }
    Ok(())
}
