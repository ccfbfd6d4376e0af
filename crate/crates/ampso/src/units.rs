//! Decibel conversions.
//!
//! Power ratios use 10·log10, wave-amplitude magnitudes (reflection
//! coefficients) use 20·log10. Internally everything is linear; dB appears
//! only at I/O boundaries.

/// Power ratio → dB.
pub fn db_from_linear(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// dB → power ratio.
pub fn linear_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Amplitude magnitude → dB (20·log10).
///
/// Magnitudes below 1e-15 are clamped so the result stays finite and
/// machine-parseable in CSV output.
pub fn db_from_magnitude(mag: f64) -> f64 {
    20.0 * mag.max(1e-15).log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_linear_round_trip() {
        // round-trip to 1e-12 across [-100, 100] dB
        let mut x = -100.0;
        while x <= 100.0 {
            let back = db_from_linear(linear_from_db(x));
            assert!((back - x).abs() < 1e-12, "x={x} back={back}");
            x += 2.5;
        }
    }

    #[test]
    fn magnitude_db_reference_points() {
        assert!((db_from_magnitude(1.0) - 0.0).abs() < 1e-12);
        assert!((db_from_magnitude(0.1) + 20.0).abs() < 1e-12);
        assert!(db_from_magnitude(0.0).is_finite());
    }
}
