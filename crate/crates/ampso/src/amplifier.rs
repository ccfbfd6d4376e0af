//! Candidate-design evaluation: transducer gain, noise figure, terminal
//! reflection coefficients and constant-noise-figure circles.

use num_complex::Complex64;

use crate::network::{self, DesignVector, NetworkError};
use crate::touchstone::{NoiseParameters, SParameters};
use crate::units::{db_from_linear, linear_from_db};

/// Everything the design problem needs to know about one candidate at one
/// frequency. Linear and dB forms are kept together; `gain_db` is
/// 10·log10(gain_linear) (−∞ for zero gain) and likewise for the noise
/// figure, which is +∞ where the source reflection leaves no positive source
/// conductance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierMetrics {
    pub gain_linear: f64,
    pub gain_db: f64,
    pub noise_figure_linear: f64,
    pub noise_figure_db: f64,
    pub gamma_s: Complex64,
    pub gamma_l: Complex64,
    pub gamma_in: Complex64,
    pub gamma_out: Complex64,
}

/// Source admittance Y_S = G_S + jB_S in siemens.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceAdmittance {
    pub y: Complex64,
}

impl SourceAdmittance {
    /// G_S, the real part.
    pub fn conductance(&self) -> f64 {
        self.y.re
    }

    /// B_S, the imaginary part.
    pub fn susceptance(&self) -> f64 {
        self.y.im
    }
}

/// Locus of constant noise figure in the Γs plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseCircle {
    pub center: Complex64,
    pub radius: f64,
    pub f_target_db: f64,
}

impl NoiseCircle {
    pub fn contains(&self, gamma: Complex64) -> bool {
        (gamma - self.center).norm() <= self.radius + 1e-12
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    /// Gain denominator vanished (oscillation boundary).
    SingularGain,
    /// 1 − S22·ΓL (or the input-side mirror) vanished.
    SingularReflection,
    /// Source admittance undefined at Γs = −1.
    SingularAdmittance,
    /// Noise figure needs |Γs| < 1 for positive source conductance.
    UndefinedNoiseFigure {
        gamma_s_mag: f64,
    },
    /// Requested noise-figure target below the device minimum.
    EmptyNoiseCircle {
        f_target_db: f64,
        f_min_db: f64,
    },
    /// rn = 0 makes every |Γs| < 1 meet the target: no boundary exists.
    DegenerateNoiseCircle,
    Network(NetworkError),
}

impl std::fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnalysisError::SingularGain => write!(f, "transducer gain denominator vanished"),
            AnalysisError::SingularReflection => {
                write!(f, "terminal reflection denominator vanished")
            }
            AnalysisError::SingularAdmittance => {
                write!(f, "source admittance singular at gamma_s = -1")
            }
            AnalysisError::UndefinedNoiseFigure { gamma_s_mag } => write!(
                f,
                "noise figure undefined for |gamma_s| = {gamma_s_mag} >= 1"
            ),
            AnalysisError::EmptyNoiseCircle {
                f_target_db,
                f_min_db,
            } => write!(
                f,
                "noise-figure target {f_target_db} dB below device minimum {f_min_db} dB"
            ),
            AnalysisError::DegenerateNoiseCircle => write!(
                f,
                "rn = 0: the whole |gamma_s| < 1 disk meets the target, no circle boundary"
            ),
            AnalysisError::Network(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AnalysisError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            AnalysisError::Network(e) => Some(e),
            _ => None,
        }
    }
}

impl From<NetworkError> for AnalysisError {
    fn from(e: NetworkError) -> Self {
        AnalysisError::Network(e)
    }
}

/// Transducer power gain: the ratio of power delivered to the load to the
/// power available from the source,
///
/// G_T = |S21|²(1 − |Γs|²)(1 − |ΓL|²) / |(1 − S11Γs)(1 − S22ΓL) − S12S21ΓsΓL|²
pub fn transducer_gain(
    s: &SParameters,
    gamma_s: Complex64,
    gamma_l: Complex64,
) -> Result<f64, AnalysisError> {
    let den = (1.0 - s.s11 * gamma_s) * (1.0 - s.s22 * gamma_l) - s.s12 * s.s21 * gamma_s * gamma_l;
    let den_sq = den.norm_sqr();
    if den_sq <= 1e-30 {
        return Err(AnalysisError::SingularGain);
    }
    // fully reflective terminations can leave the mismatch factors a few
    // ulp below zero; the delivered power is never negative
    let num = s.s21.norm_sqr()
        * (1.0 - gamma_s.norm_sqr()).max(0.0)
        * (1.0 - gamma_l.norm_sqr()).max(0.0);
    Ok(num / den_sq)
}

/// Γin = S11 + S12·S21·ΓL / (1 − S22·ΓL)
pub fn input_reflection(s: &SParameters, gamma_l: Complex64) -> Result<Complex64, AnalysisError> {
    let den = 1.0 - s.s22 * gamma_l;
    if den.norm() <= 1e-15 {
        return Err(AnalysisError::SingularReflection);
    }
    Ok(s.s11 + s.s12 * s.s21 * gamma_l / den)
}

/// Γout = S22 + S12·S21·Γs / (1 − S11·Γs)
pub fn output_reflection(s: &SParameters, gamma_s: Complex64) -> Result<Complex64, AnalysisError> {
    let den = 1.0 - s.s11 * gamma_s;
    if den.norm() <= 1e-15 {
        return Err(AnalysisError::SingularReflection);
    }
    Ok(s.s22 + s.s12 * s.s21 * gamma_s / den)
}

/// Y_S = (1/Z0)·(1 − Γs)/(1 + Γs)
pub fn source_admittance(gamma_s: Complex64, z0: f64) -> Result<SourceAdmittance, AnalysisError> {
    let den = 1.0 + gamma_s;
    if den.norm() <= 1e-15 {
        return Err(AnalysisError::SingularAdmittance);
    }
    Ok(SourceAdmittance {
        y: (1.0 - gamma_s) / den / z0,
    })
}

/// Linear noise factor F = Fmin + (RN/G_S)·|Y_S − Y_opt|².
pub fn noise_figure(
    n: &NoiseParameters,
    gamma_s: Complex64,
    z0: f64,
) -> Result<f64, AnalysisError> {
    if gamma_s.norm() >= 1.0 {
        return Err(AnalysisError::UndefinedNoiseFigure {
            gamma_s_mag: gamma_s.norm(),
        });
    }
    let ys = source_admittance(gamma_s, z0)?;
    let yopt = source_admittance(n.gamma_opt, z0)?;
    Ok(n.f_min + n.r_n / ys.conductance() * (ys.y - yopt.y).norm_sqr())
}

/// Constant-noise-figure circle for a target in dB.
///
/// With N = (F − Fmin)·|1 + Γopt|²·Z0/(4·RN): center Γopt/(1 + N), radius
/// √(N² + N(1 − |Γopt|²))/(1 + N).
pub fn noise_circle(
    n: &NoiseParameters,
    f_target_db: f64,
    z0: f64,
) -> Result<NoiseCircle, AnalysisError> {
    let f_target = linear_from_db(f_target_db);
    if f_target < n.f_min * (1.0 - 1e-12) {
        return Err(AnalysisError::EmptyNoiseCircle {
            f_target_db,
            f_min_db: db_from_linear(n.f_min),
        });
    }
    if n.r_n == 0.0 {
        return Err(AnalysisError::DegenerateNoiseCircle);
    }
    let big_n = (f_target - n.f_min).max(0.0) * (1.0 + n.gamma_opt).norm_sqr() * z0 / (4.0 * n.r_n);
    let center = n.gamma_opt / (1.0 + big_n);
    let radius = (big_n * big_n + big_n * (1.0 - n.gamma_opt.norm_sqr())).sqrt() / (1.0 + big_n);
    Ok(NoiseCircle {
        center,
        radius,
        f_target_db,
    })
}

/// Evaluate one candidate design at one frequency.
///
/// Composes the matching-network reflection coefficients with gain, noise
/// figure and terminal reflections. A fully reflective source (|Γs| = 1)
/// yields vanishing gain and an unbounded noise figure rather than an error,
/// so degenerate candidates stay rankable during optimization.
pub fn evaluate_design(
    s: &SParameters,
    n: &NoiseParameters,
    v: &DesignVector,
    z0: f64,
) -> Result<AmplifierMetrics, AnalysisError> {
    let gamma_s = network::source_reflection(v.d1, v.l1)?;
    let gamma_l = network::load_reflection(v.d2, v.l2)?;
    let gain_linear = transducer_gain(s, gamma_s, gamma_l)?;
    let gamma_in = input_reflection(s, gamma_l)?;
    let gamma_out = output_reflection(s, gamma_s)?;
    let noise_figure_linear = if gamma_s.norm() < 1.0 {
        noise_figure(n, gamma_s, z0)?
    } else {
        f64::INFINITY
    };
    Ok(AmplifierMetrics {
        gain_linear,
        gain_db: if gain_linear > 0.0 {
            db_from_linear(gain_linear)
        } else {
            f64::NEG_INFINITY
        },
        noise_figure_linear,
        noise_figure_db: db_from_linear(noise_figure_linear),
        gamma_s,
        gamma_l,
        gamma_in,
        gamma_out,
    })
}
