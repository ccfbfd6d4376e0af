//! Touchstone v1 two-port device files.
//!
//! Parses `.s2p`-style text into [`DeviceData`]: an option line
//! `# <freq-unit> S <format> R <z0>`, S-parameter rows of 9 numbers
//! (frequency plus four complex pairs), and an optional trailing noise block
//! of 5-number rows (frequency, Fmin in dB, |Γopt|, ∠Γopt in degrees, rn/z0).
//! Comments start with `!`. MA, RI and DB value formats are accepted on
//! input; the internal representation is always rectangular complex, hertz,
//! linear noise factor and rn in ohms. Serialization always emits
//! `# HZ S RI R <z0>`.

use num_complex::Complex64;

use crate::units::linear_from_db;

/// Two-port scattering parameters at a single frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SParameters {
    pub s11: Complex64,
    pub s12: Complex64,
    pub s21: Complex64,
    pub s22: Complex64,
}

/// Device noise parameters at a single frequency.
///
/// `f_min` is the linear minimum noise factor (≥ 1), `gamma_opt` the source
/// reflection coefficient achieving it (|Γopt| < 1), and `r_n` the equivalent
/// noise resistance in ohms (≥ 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParameters {
    pub f_min: f64,
    pub gamma_opt: Complex64,
    pub r_n: f64,
}

/// One tabulated frequency point.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceDataPoint {
    /// Frequency in hertz, strictly positive.
    pub frequency: f64,
    pub s: SParameters,
    pub noise: Option<NoiseParameters>,
}

/// Frequency-tabulated two-port data for one device.
///
/// Points are sorted by strictly increasing frequency with no duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceData {
    pub name: String,
    /// Reference impedance Z0 in ohms.
    pub reference_impedance: f64,
    pub points: Vec<DeviceDataPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TouchstoneError {
    /// Option line missing or unreadable.
    OptionLine { line: usize, reason: String },
    /// A token in the option line names an unsupported convention.
    UnsupportedFormat { line: usize, token: String },
    /// A data row had the wrong number of fields.
    FieldCount {
        line: usize,
        expected: usize,
        got: usize,
    },
    /// A field failed to parse as a number.
    Number { line: usize, field: String },
    /// Frequencies must be strictly increasing.
    NonMonotonic { line: usize },
    /// Noise rows must sit on an existing S-parameter frequency.
    NoiseFrequency { line: usize },
    /// A noise row violates |Γopt| < 1, Fmin ≥ 0 dB or rn ≥ 0.
    NoiseParameter { line: usize, reason: String },
    /// Frequencies must be strictly positive.
    Frequency { line: usize },
    /// No data rows found.
    Empty,
    /// Frequency outside the tabulated range.
    OutOfRange { frequency: f64, min: f64, max: f64 },
    /// Noise data requested but absent at a bracketing point.
    MissingNoise { frequency: f64 },
}

impl std::fmt::Display for TouchstoneError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TouchstoneError::OptionLine { line, reason } => {
                write!(f, "line {line}: malformed option line: {reason}")
            }
            TouchstoneError::UnsupportedFormat { line, token } => {
                write!(f, "line {line}: unsupported format token '{token}'")
            }
            TouchstoneError::FieldCount {
                line,
                expected,
                got,
            } => write!(f, "line {line}: expected {expected} fields, got {got}"),
            TouchstoneError::Number { line, field } => {
                write!(f, "line {line}: cannot parse '{field}' as a number")
            }
            TouchstoneError::NonMonotonic { line } => {
                write!(f, "line {line}: frequencies must be strictly increasing")
            }
            TouchstoneError::NoiseFrequency { line } => write!(
                f,
                "line {line}: noise row frequency does not match any S-parameter row"
            ),
            TouchstoneError::NoiseParameter { line, reason } => {
                write!(f, "line {line}: invalid noise parameters: {reason}")
            }
            TouchstoneError::Frequency { line } => {
                write!(f, "line {line}: frequency must be positive")
            }
            TouchstoneError::Empty => write!(f, "no data rows in device file"),
            TouchstoneError::OutOfRange {
                frequency,
                min,
                max,
            } => write!(
                f,
                "frequency {frequency:.6e} Hz outside tabulated range [{min:.6e}, {max:.6e}]"
            ),
            TouchstoneError::MissingNoise { frequency } => {
                write!(f, "no noise parameters available at {frequency:.6e} Hz")
            }
        }
    }
}

impl std::error::Error for TouchstoneError {}

#[derive(Clone, Copy)]
enum ValueFormat {
    MagnitudeAngle,
    DbAngle,
    RealImag,
}

impl ValueFormat {
    fn parse_pair(self, a: f64, b: f64) -> Complex64 {
        match self {
            ValueFormat::MagnitudeAngle => Complex64::from_polar(a, b.to_radians()),
            ValueFormat::DbAngle => Complex64::from_polar(10f64.powf(a / 20.0), b.to_radians()),
            ValueFormat::RealImag => Complex64::new(a, b),
        }
    }
}

struct OptionLine {
    freq_scale: f64,
    format: ValueFormat,
    z0: f64,
}

fn parse_option_line(text: &str, line: usize) -> Result<OptionLine, TouchstoneError> {
    let mut freq_scale = 1e9;
    let mut format = ValueFormat::MagnitudeAngle;
    let mut z0 = 50.0;
    let mut saw_parameter = false;
    let mut tokens = text.trim_start_matches('#').split_whitespace();
    while let Some(tok) = tokens.next() {
        match tok.to_ascii_uppercase().as_str() {
            "HZ" => freq_scale = 1.0,
            "KHZ" => freq_scale = 1e3,
            "MHZ" => freq_scale = 1e6,
            "GHZ" => freq_scale = 1e9,
            "S" => saw_parameter = true,
            "Y" | "Z" | "G" | "H" => {
                return Err(TouchstoneError::UnsupportedFormat {
                    line,
                    token: tok.to_string(),
                })
            }
            "MA" => format = ValueFormat::MagnitudeAngle,
            "DB" => format = ValueFormat::DbAngle,
            "RI" => format = ValueFormat::RealImag,
            "R" => {
                let value = tokens.next().ok_or_else(|| TouchstoneError::OptionLine {
                    line,
                    reason: "R not followed by a resistance".into(),
                })?;
                z0 = value.parse().map_err(|_| TouchstoneError::Number {
                    line,
                    field: value.to_string(),
                })?;
                if z0 <= 0.0 {
                    return Err(TouchstoneError::OptionLine {
                        line,
                        reason: "reference impedance must be positive".into(),
                    });
                }
            }
            other => {
                return Err(TouchstoneError::UnsupportedFormat {
                    line,
                    token: other.to_string(),
                })
            }
        }
    }
    if !saw_parameter {
        return Err(TouchstoneError::OptionLine {
            line,
            reason: "parameter type 'S' missing".into(),
        });
    }
    Ok(OptionLine {
        freq_scale,
        format,
        z0,
    })
}

fn parse_fields(fields: &[&str], line: usize) -> Result<Vec<f64>, TouchstoneError> {
    fields
        .iter()
        .map(|field| {
            field.parse().map_err(|_| TouchstoneError::Number {
                line,
                field: field.to_string(),
            })
        })
        .collect()
}

/// Parse Touchstone v1 two-port text into [`DeviceData`].
///
/// The first comment line before the option line, if any, becomes the device
/// label; [`serialize_device`] writes it back so labelled files round-trip.
pub fn parse_device_file(text: &str) -> Result<DeviceData, TouchstoneError> {
    let mut name = String::new();
    let mut option: Option<OptionLine> = None;
    let mut points: Vec<DeviceDataPoint> = Vec::new();
    let mut in_noise_block = false;
    let mut last_noise_freq = f64::NEG_INFINITY;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('!') {
            Some(pos) => {
                if option.is_none() && name.is_empty() {
                    let comment = raw[pos + 1..].trim();
                    if !comment.is_empty() {
                        name = comment.to_string();
                    }
                }
                &raw[..pos]
            }
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('#') {
            if option.is_some() {
                return Err(TouchstoneError::OptionLine {
                    line,
                    reason: "duplicate option line".into(),
                });
            }
            option = Some(parse_option_line(content, line)?);
            continue;
        }
        let opt = option.as_ref().ok_or_else(|| TouchstoneError::OptionLine {
            line,
            reason: "data before option line".into(),
        })?;

        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() == 5 && !points.is_empty() {
            // noise block row
            in_noise_block = true;
            let v = parse_fields(&fields, line)?;
            let frequency = v[0] * opt.freq_scale;
            if frequency <= last_noise_freq {
                return Err(TouchstoneError::NonMonotonic { line });
            }
            last_noise_freq = frequency;
            let gamma_mag = v[2];
            if gamma_mag >= 1.0 {
                return Err(TouchstoneError::NoiseParameter {
                    line,
                    reason: format!("|gamma_opt| = {gamma_mag} must be below 1"),
                });
            }
            if gamma_mag < 0.0 {
                return Err(TouchstoneError::NoiseParameter {
                    line,
                    reason: "|gamma_opt| must be non-negative".into(),
                });
            }
            if v[1] < 0.0 {
                return Err(TouchstoneError::NoiseParameter {
                    line,
                    reason: "Fmin must be at least 0 dB".into(),
                });
            }
            if v[4] < 0.0 {
                return Err(TouchstoneError::NoiseParameter {
                    line,
                    reason: "rn must be non-negative".into(),
                });
            }
            let noise = NoiseParameters {
                f_min: linear_from_db(v[1]),
                gamma_opt: Complex64::from_polar(gamma_mag, v[3].to_radians()),
                r_n: v[4] * opt.z0,
            };
            let point = points
                .iter_mut()
                .find(|p| p.frequency == frequency)
                .ok_or(TouchstoneError::NoiseFrequency { line })?;
            point.noise = Some(noise);
            continue;
        }
        if fields.len() != 9 {
            return Err(TouchstoneError::FieldCount {
                line,
                expected: if in_noise_block { 5 } else { 9 },
                got: fields.len(),
            });
        }
        if in_noise_block {
            // S rows may not resume after the noise block has started.
            return Err(TouchstoneError::FieldCount {
                line,
                expected: 5,
                got: fields.len(),
            });
        }
        let v = parse_fields(&fields, line)?;
        let frequency = v[0] * opt.freq_scale;
        if frequency <= 0.0 {
            return Err(TouchstoneError::Frequency { line });
        }
        if let Some(last) = points.last() {
            if frequency <= last.frequency {
                return Err(TouchstoneError::NonMonotonic { line });
            }
        }
        points.push(DeviceDataPoint {
            frequency,
            s: SParameters {
                s11: opt.format.parse_pair(v[1], v[2]),
                s21: opt.format.parse_pair(v[3], v[4]),
                s12: opt.format.parse_pair(v[5], v[6]),
                s22: opt.format.parse_pair(v[7], v[8]),
            },
            noise: None,
        });
    }

    let opt = option.ok_or(TouchstoneError::OptionLine {
        line: text.lines().count().max(1),
        reason: "option line missing".into(),
    })?;
    if points.is_empty() {
        return Err(TouchstoneError::Empty);
    }
    Ok(DeviceData {
        name,
        reference_impedance: opt.z0,
        points,
    })
}

/// Serialize back to Touchstone text with a `# HZ S RI R <z0>` option line.
///
/// Values are printed with enough digits that a parse round-trip agrees
/// field-wise to better than 1e-9 relative.
pub fn serialize_device(device: &DeviceData) -> String {
    let mut out = String::new();
    if !device.name.is_empty() {
        out.push_str(&format!("! {}\n", device.name));
    }
    out.push_str(&format!("# HZ S RI R {}\n", device.reference_impedance));
    for p in &device.points {
        out.push_str(&format!(
            "{:.10e} {:.10e} {:.10e} {:.10e} {:.10e} {:.10e} {:.10e} {:.10e} {:.10e}\n",
            p.frequency,
            p.s.s11.re,
            p.s.s11.im,
            p.s.s21.re,
            p.s.s21.im,
            p.s.s12.re,
            p.s.s12.im,
            p.s.s22.re,
            p.s.s22.im,
        ));
    }
    if device.points.iter().any(|p| p.noise.is_some()) {
        out.push_str("! noise parameters\n");
        for p in &device.points {
            if let Some(n) = &p.noise {
                out.push_str(&format!(
                    "{:.10e} {:.10e} {:.10e} {:.10e} {:.10e}\n",
                    p.frequency,
                    10.0 * n.f_min.log10(),
                    n.gamma_opt.norm(),
                    n.gamma_opt.arg().to_degrees(),
                    n.r_n / device.reference_impedance,
                ));
            }
        }
    }
    out
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn lerp_c(a: Complex64, b: Complex64, t: f64) -> Complex64 {
    Complex64::new(lerp(a.re, b.re, t), lerp(a.im, b.im, t))
}

fn lerp_s(a: &SParameters, b: &SParameters, t: f64) -> SParameters {
    SParameters {
        s11: lerp_c(a.s11, b.s11, t),
        s12: lerp_c(a.s12, b.s12, t),
        s21: lerp_c(a.s21, b.s21, t),
        s22: lerp_c(a.s22, b.s22, t),
    }
}

impl DeviceData {
    /// Parse from Touchstone text. See [`parse_device_file`].
    pub fn parse(text: &str) -> Result<Self, TouchstoneError> {
        parse_device_file(text)
    }

    pub fn min_frequency(&self) -> f64 {
        self.points.first().map(|p| p.frequency).unwrap_or(0.0)
    }

    pub fn max_frequency(&self) -> f64 {
        self.points.last().map(|p| p.frequency).unwrap_or(0.0)
    }

    /// Bracketing indices (lo, hi, t) for a frequency, or the exact index.
    fn bracket(&self, frequency: f64) -> Result<BracketResult, TouchstoneError> {
        if let Some(idx) = self.points.iter().position(|p| p.frequency == frequency) {
            return Ok(BracketResult::Exact(idx));
        }
        let min = self.min_frequency();
        let max = self.max_frequency();
        if frequency < min || frequency > max {
            return Err(TouchstoneError::OutOfRange {
                frequency,
                min,
                max,
            });
        }
        let hi = self
            .points
            .iter()
            .position(|p| p.frequency > frequency)
            .expect("frequency below max but no upper bracket");
        let lo = hi - 1;
        let t = (frequency - self.points[lo].frequency)
            / (self.points[hi].frequency - self.points[lo].frequency);
        Ok(BracketResult::Between(lo, hi, t))
    }

    /// S-parameters at a frequency: tabulated values bit-exactly on grid
    /// points, otherwise linear interpolation of real/imaginary parts.
    pub fn s_at(&self, frequency: f64) -> Result<SParameters, TouchstoneError> {
        match self.bracket(frequency)? {
            BracketResult::Exact(i) => Ok(self.points[i].s),
            BracketResult::Between(lo, hi, t) => {
                Ok(lerp_s(&self.points[lo].s, &self.points[hi].s, t))
            }
        }
    }

    /// S- and noise parameters at a frequency.
    ///
    /// Interpolation is linear in the real/imaginary parts of `gamma_opt`
    /// and in `f_min` and `r_n`; noise data must be present at both
    /// bracketing points.
    pub fn at(&self, frequency: f64) -> Result<(SParameters, NoiseParameters), TouchstoneError> {
        match self.bracket(frequency)? {
            BracketResult::Exact(i) => {
                let p = &self.points[i];
                let noise = p.noise.ok_or(TouchstoneError::MissingNoise { frequency })?;
                Ok((p.s, noise))
            }
            BracketResult::Between(lo, hi, t) => {
                let (a, b) = (&self.points[lo], &self.points[hi]);
                let (na, nb) = match (a.noise, b.noise) {
                    (Some(na), Some(nb)) => (na, nb),
                    _ => return Err(TouchstoneError::MissingNoise { frequency }),
                };
                Ok((
                    lerp_s(&a.s, &b.s, t),
                    NoiseParameters {
                        f_min: lerp(na.f_min, nb.f_min, t),
                        gamma_opt: lerp_c(na.gamma_opt, nb.gamma_opt, t),
                        r_n: lerp(na.r_n, nb.r_n, t),
                    },
                ))
            }
        }
    }
}

enum BracketResult {
    Exact(usize),
    Between(usize, usize, f64),
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLE: &str = "\
! test device
# GHZ S MA R 50
12.0 0.6 -60 3.2 100 0.05 30 0.5 -45
";

    #[test]
    fn parses_ma_row() {
        let dev = parse_device_file(SIMPLE).unwrap();
        assert_eq!(dev.points.len(), 1);
        assert_eq!(dev.reference_impedance, 50.0);
        assert_eq!(dev.name, "test device");
        let p = &dev.points[0];
        assert_eq!(p.frequency, 12.0e9);
        let want_s11 = Complex64::from_polar(0.6, (-60f64).to_radians());
        let want_s21 = Complex64::from_polar(3.2, 100f64.to_radians());
        assert!((p.s.s11 - want_s11).norm() < 1e-15);
        assert!((p.s.s21 - want_s21).norm() < 1e-15);
    }

    #[test]
    fn parses_noise_row() {
        let text = "\
# GHZ S MA R 50
12.0 0.6 -60 3.2 100 0.05 30 0.5 -45
12.0 0.45 0.55 150 0.3
";
        let dev = parse_device_file(text).unwrap();
        let n = dev.points[0].noise.unwrap();
        assert!((n.f_min - 10f64.powf(0.045)).abs() < 1e-12);
        assert!((n.gamma_opt.norm() - 0.55).abs() < 1e-12);
        assert!((n.gamma_opt.arg().to_degrees() - 150.0).abs() < 1e-9);
        assert!((n.r_n - 15.0).abs() < 1e-12);
    }

    #[test]
    fn wrong_field_count_names_line() {
        let text = "\
# GHZ S MA R 50
12.0 0.6 -60 3.2 100 0.05 30 0.5
";
        let err = parse_device_file(text).unwrap_err();
        assert_eq!(
            err,
            TouchstoneError::FieldCount {
                line: 2,
                expected: 9,
                got: 8
            }
        );
        assert!(err.to_string().contains("line 2"));
        assert!(err.to_string().contains("expected 9 fields"));
    }

    #[test]
    fn non_monotone_frequencies_rejected() {
        let text = "\
# GHZ S RI R 50
2.0 0 0 0 0 0 0 0 0
1.0 0 0 0 0 0 0 0 0
";
        assert_eq!(
            parse_device_file(text).unwrap_err(),
            TouchstoneError::NonMonotonic { line: 3 }
        );
    }

    #[test]
    fn gamma_opt_at_least_one_rejected() {
        let text = "\
# GHZ S MA R 50
2.0 0.5 0 2 90 0.05 30 0.5 -45
2.0 0.5 1.0 30 0.3
";
        match parse_device_file(text).unwrap_err() {
            TouchstoneError::NoiseParameter { line: 3, .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unsupported_parameter_type_rejected() {
        let err = parse_device_file("# GHZ Y MA R 50\n1.0 0 0 0 0 0 0 0 0\n").unwrap_err();
        assert_eq!(
            err,
            TouchstoneError::UnsupportedFormat {
                line: 1,
                token: "Y".into()
            }
        );
    }

    #[test]
    fn db_format_accepted() {
        let text = "\
# MHZ S DB R 75
500 -6.0205999 0 12.0411998 90 -26.0205999 45 -3.0102999 -30
";
        let dev = parse_device_file(text).unwrap();
        assert_eq!(dev.reference_impedance, 75.0);
        assert_eq!(dev.points[0].frequency, 5.0e8);
        assert!((dev.points[0].s.s11.norm() - 0.5).abs() < 1e-7);
        assert!((dev.points[0].s.s21.norm() - 4.0).abs() < 1e-7);
        assert!((dev.points[0].s.s12.norm() - 0.05).abs() < 1e-8);
    }

    #[test]
    fn interpolation_midpoint_and_exact() {
        let text = "\
# HZ S RI R 50
1.0e9 0.2 0.0 1.0 0.0 0.0 0.0 0.1 0.0
2.0e9 0.4 0.0 2.0 0.0 0.0 0.0 0.3 0.0
1.0e9 0.5 0.6 20 0.2
2.0e9 0.7 0.8 40 0.4
";
        let dev = parse_device_file(text).unwrap();
        let (s, n) = dev.at(1.5e9).unwrap();
        assert!((s.s11 - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        assert!((s.s21 - Complex64::new(1.5, 0.0)).norm() < 1e-15);
        let f_min_mid = (linear_from_db(0.5) + linear_from_db(0.7)) / 2.0;
        assert!((n.f_min - f_min_mid).abs() < 1e-12);
        assert!((n.r_n - 15.0).abs() < 1e-12);

        // grid point returns tabulated values bit-exactly
        let (s1, _) = dev.at(1.0e9).unwrap();
        assert_eq!(s1, dev.points[0].s);
    }

    #[test]
    fn out_of_range_rejected() {
        let dev = parse_device_file(SIMPLE).unwrap();
        match dev.s_at(1.0e9).unwrap_err() {
            TouchstoneError::OutOfRange { .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_noise_reported() {
        let dev = parse_device_file(SIMPLE).unwrap();
        assert_eq!(
            dev.at(12.0e9).unwrap_err(),
            TouchstoneError::MissingNoise { frequency: 12.0e9 }
        );
    }

    #[test]
    fn round_trip_preserves_values() {
        let text = "\
# GHZ S MA R 50
1.0 0.9 -20 4.5 150 0.03 70 0.6 -30
2.0 0.85 -40 4.0 120 0.05 50 0.55 -50
1.0 0.4 0.8 20 0.5
2.0 0.5 0.7 40 0.4
";
        let dev = parse_device_file(text).unwrap();
        let back = parse_device_file(&serialize_device(&dev)).unwrap();
        assert_eq!(back.points.len(), dev.points.len());
        for (a, b) in dev.points.iter().zip(back.points.iter()) {
            assert!((a.frequency - b.frequency).abs() <= 1e-9 * a.frequency);
            assert!((a.s.s11 - b.s.s11).norm() < 1e-9);
            assert!((a.s.s21 - b.s.s21).norm() < 1e-9);
            let (na, nb) = (a.noise.unwrap(), b.noise.unwrap());
            assert!((na.f_min - nb.f_min).abs() < 1e-9);
            assert!((na.gamma_opt - nb.gamma_opt).norm() < 1e-9);
            assert!((na.r_n - nb.r_n).abs() < 1e-9);
        }
    }

    #[test]
    fn device_without_noise_serializes_without_noise_rows() {
        let dev = parse_device_file(SIMPLE).unwrap();
        let text = serialize_device(&dev);
        assert!(!text.contains("noise"));
        assert_eq!(
            text.lines().filter(|l| !l.starts_with(['!', '#'])).count(),
            1
        );
    }

    #[test]
    fn single_point_single_row() {
        let dev = parse_device_file(SIMPLE).unwrap();
        let text = serialize_device(&dev);
        assert!(text.starts_with("! test device\n# HZ S RI R 50\n"));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_complex(max: f64) -> impl Strategy<Value = Complex64> {
            (-max..max, -max..max).prop_map(|(re, im)| Complex64::new(re, im))
        }

        fn arb_noise() -> impl Strategy<Value = NoiseParameters> {
            (1.0..3.0f64, 0.0..0.95f64, -3.1..3.1f64, 0.0..60.0f64).prop_map(
                |(f_min, mag, angle, r_n)| NoiseParameters {
                    f_min,
                    gamma_opt: Complex64::from_polar(mag, angle),
                    r_n,
                },
            )
        }

        fn arb_device() -> impl Strategy<Value = DeviceData> {
            (
                proptest::collection::vec(
                    (
                        arb_complex(5.0),
                        arb_complex(5.0),
                        arb_complex(5.0),
                        arb_complex(5.0),
                    ),
                    1..5,
                ),
                proptest::option::of(arb_noise()),
                1.0..200.0f64,
            )
                .prop_map(|(rows, noise, z0)| DeviceData {
                    name: "prop".into(),
                    reference_impedance: z0,
                    points: rows
                        .into_iter()
                        .enumerate()
                        .map(|(i, (s11, s12, s21, s22))| DeviceDataPoint {
                            frequency: 1.0e9 * (i + 1) as f64,
                            s: SParameters { s11, s12, s21, s22 },
                            noise,
                        })
                        .collect(),
                })
        }

        fn close(a: f64, b: f64) -> bool {
            (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
        }

        proptest! {
            #[test]
            fn round_trip_any_valid_device(dev in arb_device()) {
                let back = parse_device_file(&serialize_device(&dev)).unwrap();
                prop_assert_eq!(dev.points.len(), back.points.len());
                prop_assert!(close(dev.reference_impedance, back.reference_impedance));
                for (a, b) in dev.points.iter().zip(&back.points) {
                    prop_assert!(close(a.frequency, b.frequency));
                    prop_assert!(close(a.s.s11.re, b.s.s11.re) && close(a.s.s11.im, b.s.s11.im));
                    prop_assert!(close(a.s.s21.re, b.s.s21.re) && close(a.s.s21.im, b.s.s21.im));
                    match (a.noise, b.noise) {
                        (Some(na), Some(nb)) => {
                            prop_assert!(close(na.f_min, nb.f_min));
                            prop_assert!(close(na.gamma_opt.re, nb.gamma_opt.re));
                            prop_assert!(close(na.gamma_opt.im, nb.gamma_opt.im));
                            prop_assert!(close(na.r_n, nb.r_n));
                        }
                        (None, None) => {}
                        _ => prop_assert!(false, "noise presence changed"),
                    }
                }
            }

            #[test]
            fn interpolated_gamma_opt_stays_in_disk(
                mag_a in 0.0..0.999f64, ang_a in -3.1..3.1f64,
                mag_b in 0.0..0.999f64, ang_b in -3.1..3.1f64,
                t in 0.0..1.0f64,
            ) {
                // linear interpolation of real/imag parts cannot leave the
                // unit disk when both endpoints are inside it
                let a = Complex64::from_polar(mag_a, ang_a);
                let b = Complex64::from_polar(mag_b, ang_b);
                let mid = lerp_c(a, b, t);
                prop_assert!(mid.norm() < 1.0);
            }
        }
    }
}
