//! Matching-network reflection coefficients.
//!
//! Each side of the amplifier is a short-circuited shunt stub of electrical
//! length `l` across the reference termination, followed by a series line of
//! electrical length `d`, all with unit-normalized characteristic impedance.
//! Lengths are wavelength fractions; the whole network is periodic in 0.5 λ
//! because only tan(2πl) enters the impedance transforms.
//!
//! Transforms are evaluated in homogeneous (numerator, denominator) form so
//! that reflection coefficients stay well conditioned even where intermediate
//! impedances blow up (the tan singularity at quarter-wave lengths).

use num_complex::Complex64;
use std::f64::consts::TAU;

/// A transmission-line length as a fraction of the operating wavelength,
/// canonicalized into [0, 0.5).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ElectricalLength(f64);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NetworkError {
    /// Lengths must be finite.
    NonFiniteLength(f64),
    /// The impedance transform has no finite value (degenerate load).
    SingularTransform,
    /// Reflection coefficient undefined at z = -1.
    SingularReflection,
}

impl std::fmt::Display for NetworkError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NetworkError::NonFiniteLength(v) => write!(f, "non-finite electrical length {v}"),
            NetworkError::SingularTransform => write!(f, "singular line transform"),
            NetworkError::SingularReflection => {
                write!(f, "reflection coefficient singular at z = -1")
            }
        }
    }
}

impl std::error::Error for NetworkError {}

/// Reduce a raw length modulo the 0.5 λ period into [0, 0.5).
pub fn canonicalize(raw: f64) -> Result<f64, NetworkError> {
    if !raw.is_finite() {
        return Err(NetworkError::NonFiniteLength(raw));
    }
    let mut v = raw.rem_euclid(0.5);
    if v >= 0.5 {
        v = 0.0;
    }
    Ok(v)
}

impl ElectricalLength {
    /// Canonicalize a raw wavelength fraction.
    pub fn new(raw: f64) -> Result<Self, NetworkError> {
        Ok(ElectricalLength(canonicalize(raw)?))
    }

    /// Electrical angle in degrees (βl = 360°·l) reduced into [0°, 180°).
    pub fn from_degrees(degrees: f64) -> Result<Self, NetworkError> {
        Self::new(degrees / 360.0)
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn degrees(&self) -> f64 {
        self.0 * 360.0
    }
}

/// The four matching-line lengths that define one candidate design.
///
/// `d1`/`l1` are the source-side series line and stub, `d2`/`l2` the
/// load-side pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignVector {
    pub d1: ElectricalLength,
    pub l1: ElectricalLength,
    pub d2: ElectricalLength,
    pub l2: ElectricalLength,
}

impl DesignVector {
    pub fn new(
        d1: ElectricalLength,
        l1: ElectricalLength,
        d2: ElectricalLength,
        l2: ElectricalLength,
    ) -> Self {
        DesignVector { d1, l1, d2, l2 }
    }

    /// Canonicalize four raw wavelength fractions in (d1, l1, d2, l2) order.
    pub fn from_lambdas(raw: [f64; 4]) -> Result<Self, NetworkError> {
        Ok(DesignVector {
            d1: ElectricalLength::new(raw[0])?,
            l1: ElectricalLength::new(raw[1])?,
            d2: ElectricalLength::new(raw[2])?,
            l2: ElectricalLength::new(raw[3])?,
        })
    }

    /// Like [`DesignVector::from_lambdas`] for slices of length 4.
    pub fn from_slice(raw: &[f64]) -> Result<Self, NetworkError> {
        assert_eq!(raw.len(), 4, "design vector needs 4 lengths");
        Self::from_lambdas([raw[0], raw[1], raw[2], raw[3]])
    }

    pub fn as_lambdas(&self) -> [f64; 4] {
        [
            self.d1.value(),
            self.l1.value(),
            self.d2.value(),
            self.l2.value(),
        ]
    }
}

/// Impedance of the reference termination in parallel with a short-circuited
/// stub of length `l`, normalized to Z0 = 1.
///
/// Equals j·t/(1 + j·t) with t = tan(2πl), evaluated as
/// sin²θ + j·sinθ·cosθ which is finite for every length; the tan singularity
/// at l = 0.25 lands on the analytic limit 1 + 0j.
pub fn stub_parallel_impedance(l: ElectricalLength) -> Complex64 {
    let theta = TAU * l.value();
    let (s, c) = theta.sin_cos();
    Complex64::new(s * s, s * c)
}

/// Transform a normalized load impedance through a series line of length `d`.
///
/// z_in = (z + j·t)/(1 + j·z·t) with t = tan(2πd), evaluated in homogeneous
/// form (z·cosθ + j·sinθ)/(cosθ + j·z·sinθ); at d = 0.25 this lands on the
/// quarter-wave limit 1/z.
pub fn line_transform(z: Complex64, d: ElectricalLength) -> Result<Complex64, NetworkError> {
    let (num, den) = line_transform_parts(z, d);
    if den.norm() <= 1e-15 * num.norm().max(1.0) {
        return Err(NetworkError::SingularTransform);
    }
    Ok(num / den)
}

fn line_transform_parts(z: Complex64, d: ElectricalLength) -> (Complex64, Complex64) {
    let theta = TAU * d.value();
    let (s, c) = theta.sin_cos();
    let num = z * c + Complex64::new(0.0, s);
    let den = Complex64::new(c, 0.0) + Complex64::new(0.0, s) * z;
    (num, den)
}

/// Γ = (z − 1)/(z + 1).
pub fn reflection_from_impedance(z: Complex64) -> Result<Complex64, NetworkError> {
    let den = z + 1.0;
    if den.norm() <= 1e-15 {
        return Err(NetworkError::SingularReflection);
    }
    Ok((z - 1.0) / den)
}

/// Reflection coefficient of a stub-plus-line section, composed in
/// homogeneous form: Γ = (num − den)/(num + den) of the line transform of
/// the stub node impedance.
fn section_reflection(d: ElectricalLength, l: ElectricalLength) -> Result<Complex64, NetworkError> {
    let (num, den) = line_transform_parts(stub_parallel_impedance(l), d);
    let sum = num + den;
    if sum.norm() <= 1e-15 {
        return Err(NetworkError::SingularReflection);
    }
    Ok((num - den) / sum)
}

/// Reflection coefficient looking from the transistor input toward the
/// source, for a source-side stub `l1` and series line `d1`.
pub fn source_reflection(
    d1: ElectricalLength,
    l1: ElectricalLength,
) -> Result<Complex64, NetworkError> {
    section_reflection(d1, l1)
}

/// Reflection coefficient looking from the transistor output toward the
/// load; the load network mirrors the source network with (d2, l2).
pub fn load_reflection(
    d2: ElectricalLength,
    l2: ElectricalLength,
) -> Result<Complex64, NetworkError> {
    section_reflection(d2, l2)
}
