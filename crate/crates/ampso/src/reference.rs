//! Known-good reference designs for the FHX35X device study, used as
//! regression fixtures and for fidelity reporting.
//!
//! Five independently obtained matching-network designs are recorded with
//! their reported source reflection coefficients and noise figures, plus the
//! verified gain and terminal reflections of the third design. The device
//! data behind these numbers was never published alongside them; the shipped
//! `devices/fhx35x.s2p` fixture reconstructs it (see the file header), so
//! comparisons against these constants measure fixture fidelity, not
//! analysis-chain correctness.

use crate::amplifier::{self, AnalysisError};
use crate::network::{DesignVector, ElectricalLength, NetworkError};
use crate::touchstone::{DeviceData, TouchstoneError};
use crate::units::db_from_magnitude;

/// One reference design: four line lengths in electrical degrees with the
/// reported source reflection coefficient and noise figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceTrial {
    pub d1_deg: f64,
    pub l1_deg: f64,
    pub d2_deg: f64,
    pub l2_deg: f64,
    pub gamma_s_mag: f64,
    pub gamma_s_deg: f64,
    pub noise_figure_db: f64,
}

impl ReferenceTrial {
    pub fn design_vector(&self) -> Result<DesignVector, NetworkError> {
        Ok(DesignVector::new(
            ElectricalLength::from_degrees(self.d1_deg)?,
            ElectricalLength::from_degrees(self.l1_deg)?,
            ElectricalLength::from_degrees(self.d2_deg)?,
            ElectricalLength::from_degrees(self.l2_deg)?,
        ))
    }
}

pub const FHX35X_TRIALS: [ReferenceTrial; 5] = [
    ReferenceTrial {
        d1_deg: 41.1599,
        l1_deg: 23.8961,
        d2_deg: 34.3209,
        l2_deg: 50.9232,
        gamma_s_mag: 0.748292,
        gamma_s_deg: 56.06473,
        noise_figure_db: 0.847376,
    },
    ReferenceTrial {
        d1_deg: 43.9317,
        l1_deg: 20.6296,
        d2_deg: 30.6803,
        l2_deg: 61.7606,
        gamma_s_mag: 0.798747,
        gamma_s_deg: 55.08966,
        noise_figure_db: 0.901598,
    },
    ReferenceTrial {
        d1_deg: 45.1513,
        l1_deg: 21.6466,
        d2_deg: 16.1073,
        l2_deg: 61.3262,
        gamma_s_mag: 0.783121,
        gamma_s_deg: 51.18767,
        noise_figure_db: 0.714466,
    },
    ReferenceTrial {
        d1_deg: 46.9831,
        l1_deg: 20.7794,
        d2_deg: 29.0269,
        l2_deg: 56.6803,
        gamma_s_mag: 0.796434,
        gamma_s_deg: 48.84327,
        noise_figure_db: 0.656502,
    },
    ReferenceTrial {
        d1_deg: 41.771,
        l1_deg: 23.9152,
        d2_deg: 41.7792,
        l2_deg: 43.972,
        gamma_s_mag: 0.74804,
        gamma_s_deg: 54.82775,
        noise_figure_db: 0.800902,
    },
];

/// Design frequency the shipped FHX35X fixture is anchored at.
pub const FHX35X_DESIGN_FREQUENCY_HZ: f64 = 4.0e9;

/// Verified gain of the third reference design, in dB.
pub const FHX35X_TRIAL3_GAIN_DB: f64 = 20.01;

/// Verified terminal reflection magnitudes of the third design, in dB.
pub const FHX35X_TRIAL3_S11_DB: f64 = -2.50;
pub const FHX35X_TRIAL3_S22_DB: f64 = -2.73;

/// Noise-figure ceiling the reference designs were screened against, in dB.
pub const FHX35X_NF_LIMIT_DB: f64 = 1.0;

/// Per-trial fidelity of a device fixture against the reference values.
#[derive(Debug, Clone)]
pub struct TrialFidelity {
    pub trial: usize,
    pub gamma_s_mag_error: f64,
    pub gamma_s_deg_error: f64,
    pub noise_figure_db_error: f64,
    pub gain_db: f64,
    pub inside_nf_limit_circle: bool,
}

/// How closely a device fixture reproduces the reference study at one
/// frequency.
#[derive(Debug, Clone)]
pub struct FidelityReport {
    pub frequency: f64,
    pub trials: Vec<TrialFidelity>,
    /// Gain of the third design minus [`FHX35X_TRIAL3_GAIN_DB`].
    pub trial3_gain_db_error: f64,
    pub trial3_s11_db_error: f64,
    pub trial3_s22_db_error: f64,
}

#[derive(Debug)]
pub enum FidelityError {
    Device(TouchstoneError),
    Analysis(AnalysisError),
    Network(NetworkError),
}

impl std::fmt::Display for FidelityError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FidelityError::Device(e) => write!(f, "{e}"),
            FidelityError::Analysis(e) => write!(f, "{e}"),
            FidelityError::Network(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FidelityError {}

impl From<TouchstoneError> for FidelityError {
    fn from(e: TouchstoneError) -> Self {
        FidelityError::Device(e)
    }
}
impl From<AnalysisError> for FidelityError {
    fn from(e: AnalysisError) -> Self {
        FidelityError::Analysis(e)
    }
}
impl From<NetworkError> for FidelityError {
    fn from(e: NetworkError) -> Self {
        FidelityError::Network(e)
    }
}

/// Evaluate every reference trial against a device fixture.
pub fn compare_fixture(
    device: &DeviceData,
    frequency: f64,
) -> Result<FidelityReport, FidelityError> {
    let (s, n) = device.at(frequency)?;
    let z0 = device.reference_impedance;
    let circle = amplifier::noise_circle(&n, FHX35X_NF_LIMIT_DB, z0)?;

    let mut trials = Vec::new();
    for (idx, trial) in FHX35X_TRIALS.iter().enumerate() {
        let v = trial.design_vector()?;
        let m = amplifier::evaluate_design(&s, &n, &v, z0)?;
        trials.push(TrialFidelity {
            trial: idx + 1,
            gamma_s_mag_error: m.gamma_s.norm() - trial.gamma_s_mag,
            gamma_s_deg_error: m.gamma_s.arg().to_degrees() - trial.gamma_s_deg,
            noise_figure_db_error: m.noise_figure_db - trial.noise_figure_db,
            gain_db: m.gain_db,
            inside_nf_limit_circle: circle.contains(m.gamma_s),
        });
    }

    let v3 = FHX35X_TRIALS[2].design_vector()?;
    let m3 = amplifier::evaluate_design(&s, &n, &v3, z0)?;
    Ok(FidelityReport {
        frequency,
        trials,
        trial3_gain_db_error: m3.gain_db - FHX35X_TRIAL3_GAIN_DB,
        trial3_s11_db_error: db_from_magnitude(m3.gamma_in.norm()) - FHX35X_TRIAL3_S11_DB,
        trial3_s22_db_error: db_from_magnitude(m3.gamma_out.norm()) - FHX35X_TRIAL3_S22_DB,
    })
}

impl FidelityReport {
    /// Plain-text rendering, one line per compared quantity.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "fixture fidelity at {:.4e} Hz (reference values vs this fixture)\n",
            self.frequency
        ));
        for t in &self.trials {
            out.push_str(&format!(
                "trial {}: d|Gs|={:+.6} dang={:+.4} deg  dNF={:+.6} dB  gain={:.3} dB  in_1dB_circle={}\n",
                t.trial,
                t.gamma_s_mag_error,
                t.gamma_s_deg_error,
                t.noise_figure_db_error,
                t.gain_db,
                t.inside_nf_limit_circle,
            ));
        }
        out.push_str(&format!(
            "trial 3 gain error: {:+.4} dB (reference {:.2} dB)\n",
            self.trial3_gain_db_error, FHX35X_TRIAL3_GAIN_DB
        ));
        out.push_str(&format!(
            "trial 3 |S11| error: {:+.4} dB (reference {:.2} dB)\n",
            self.trial3_s11_db_error, FHX35X_TRIAL3_S11_DB
        ));
        out.push_str(&format!(
            "trial 3 |S22| error: {:+.4} dB (reference {:.2} dB)\n",
            self.trial3_s22_db_error, FHX35X_TRIAL3_S22_DB
        ));
        out
    }
}
