//! Read a two-port device file, interpolate between its frequency rows and
//! write it back out in RI form.
//!
//! ```bash
//! cargo run -p ampso --example parse_device
//! ```

use ampso::touchstone::{parse_device_file, serialize_device};
use ampso::units::db_from_linear;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../devices/fhx35x.s2p");
    let device = parse_device_file(&std::fs::read_to_string(path)?)?;

    println!("device: {}", device.name);
    println!("reference impedance: {} ohm", device.reference_impedance);
    println!(
        "{} points from {:.1} to {:.1} GHz",
        device.points.len(),
        device.min_frequency() / 1e9,
        device.max_frequency() / 1e9
    );

    // tabulated row
    let (s, n) = device.at(4.0e9)?;
    println!(
        "at 4.00 GHz (tabulated): |S21| = {:.4} ({:.2} dB), Fmin = {:.4} dB",
        s.s21.norm(),
        db_from_linear(s.s21.norm_sqr()),
        db_from_linear(n.f_min)
    );

    // interpolated between the 4.0 and 4.5 GHz rows
    let (s, n) = device.at(4.25e9)?;
    println!(
        "at 4.25 GHz (interpolated): |S21| = {:.4}, Fmin = {:.4} dB, |Gopt| = {:.4}",
        s.s21.norm(),
        db_from_linear(n.f_min),
        n.gamma_opt.norm()
    );

    let text = serialize_device(&device);
    println!(
        "re-serialized to {} lines, option line: {}",
        text.lines().count(),
        text.lines().find(|l| l.starts_with('#')).unwrap()
    );
    Ok(())
}
