//! The amplifier design problem: a constrained objective over the four
//! matching-line lengths, bound to the swarm engine.
//!
//! Fitness is the absolute deviation of the gain from its target in dB; the
//! noise-figure ceiling, the terminal-reflection bound and |Γs|, |ΓL| < 1
//! are feasibility constraints handled by the engine's feasibility-first
//! ordering. Among infeasible candidates only, constraint excesses are added
//! to the fitness so the swarm is still pulled toward the feasible region.

use crate::amplifier::{self, AmplifierMetrics, AnalysisError};
use crate::network::{DesignVector, NetworkError};
use crate::pso::{self, ConvergenceTrace, Evaluation, PsoError, SwarmConfig};
use crate::touchstone::{DeviceData, NoiseParameters, SParameters, TouchstoneError};

/// Gain target, noise ceiling, stability bound and the convergence band that
/// defines a "reached a solution" particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignTargets {
    pub gain_target_db: f64,
    pub nf_max_db: f64,
    pub reflection_max: f64,
    pub gain_tolerance_db: f64,
}

impl Default for DesignTargets {
    fn default() -> Self {
        DesignTargets {
            gain_target_db: 20.0,
            nf_max_db: 1.0,
            reflection_max: 0.99,
            gain_tolerance_db: 0.05,
        }
    }
}

impl DesignTargets {
    pub fn validate(&self) -> Result<(), DesignError> {
        if !(self.reflection_max > 0.0 && self.reflection_max <= 1.0) {
            return Err(DesignError::InvalidTargets(
                "reflection_max must be in (0, 1]".into(),
            ));
        }
        if self.nf_max_db.is_nan() || self.nf_max_db < 0.0 {
            return Err(DesignError::InvalidTargets(
                "nf_max_db must be non-negative".into(),
            ));
        }
        if self.gain_tolerance_db.is_nan() || self.gain_tolerance_db <= 0.0 {
            return Err(DesignError::InvalidTargets(
                "gain_tolerance_db must be positive".into(),
            ));
        }
        if !self.gain_target_db.is_finite() {
            return Err(DesignError::InvalidTargets(
                "gain_target_db must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// A complete design task: device data, design frequency, targets and the
/// swarm configuration driving the search.
#[derive(Debug, Clone)]
pub struct DesignSpec {
    pub device: DeviceData,
    pub design_frequency: f64,
    pub targets: DesignTargets,
    pub swarm: SwarmConfig,
}

impl DesignSpec {
    /// Standard protocol: 15 particles over the four lengths,
    /// 3000 iterations, initialization in [0, 0.1] λ, positions wrapped over
    /// the 0.5 λ period of the impedance transforms.
    pub fn new(device: DeviceData, design_frequency: f64) -> Self {
        let targets = DesignTargets::default();
        let swarm = SwarmConfig::new(4).with_wrap(0.5);
        DesignSpec {
            device,
            design_frequency,
            targets,
            swarm,
        }
    }
}

/// Result of one design run.
#[derive(Debug, Clone)]
pub struct DesignResult {
    pub best: DesignVector,
    pub metrics: AmplifierMetrics,
    pub fitness: f64,
    pub feasible: bool,
    pub trace: ConvergenceTrace,
    pub seed: u64,
}

/// A single point of a frequency sweep. The noise figure is absent where the
/// device carries no noise data at that frequency.
#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub frequency: f64,
    pub gain_db: f64,
    pub noise_figure_db: Option<f64>,
    pub gamma_s: num_complex::Complex64,
    pub gamma_l: num_complex::Complex64,
    pub gamma_in: num_complex::Complex64,
    pub gamma_out: num_complex::Complex64,
}

#[derive(Debug)]
pub enum DesignError {
    Device(TouchstoneError),
    Network(NetworkError),
    Analysis(AnalysisError),
    Swarm(PsoError),
    InvalidTargets(String),
    /// The swarm configuration does not describe a four-length search.
    InvalidSwarmConfig(String),
}

impl std::fmt::Display for DesignError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DesignError::Device(e) => write!(f, "{e}"),
            DesignError::Network(e) => write!(f, "{e}"),
            DesignError::Analysis(e) => write!(f, "{e}"),
            DesignError::Swarm(e) => write!(f, "{e}"),
            DesignError::InvalidTargets(reason) => write!(f, "invalid targets: {reason}"),
            DesignError::InvalidSwarmConfig(reason) => {
                write!(f, "invalid swarm config for design: {reason}")
            }
        }
    }
}

impl std::error::Error for DesignError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            DesignError::Device(e) => Some(e),
            DesignError::Network(e) => Some(e),
            DesignError::Analysis(e) => Some(e),
            DesignError::Swarm(e) => Some(e),
            _ => None,
        }
    }
}

impl From<TouchstoneError> for DesignError {
    fn from(e: TouchstoneError) -> Self {
        DesignError::Device(e)
    }
}
impl From<NetworkError> for DesignError {
    fn from(e: NetworkError) -> Self {
        DesignError::Network(e)
    }
}
impl From<AnalysisError> for DesignError {
    fn from(e: AnalysisError) -> Self {
        DesignError::Analysis(e)
    }
}
impl From<PsoError> for DesignError {
    fn from(e: PsoError) -> Self {
        DesignError::Swarm(e)
    }
}

/// Rank one set of metrics against the targets.
///
/// Feasible candidates score |gain − target| in dB. Infeasible candidates add
/// each constraint excess in its natural unit (dB for the noise figure,
/// magnitude for reflections); under feasibility-first ordering that sum only
/// ranks infeasible candidates among themselves.
pub fn fitness(metrics: &AmplifierMetrics, targets: &DesignTargets) -> (f64, bool) {
    let gs = metrics.gamma_s.norm();
    let gl = metrics.gamma_l.norm();
    let gin = metrics.gamma_in.norm();
    let gout = metrics.gamma_out.norm();
    let feasible = metrics.noise_figure_db <= targets.nf_max_db
        && gin < targets.reflection_max
        && gout < targets.reflection_max
        && gs < 1.0
        && gl < 1.0;
    let base = (metrics.gain_db - targets.gain_target_db).abs();
    if feasible {
        (base, true)
    } else {
        let mut penalty = base;
        penalty += (metrics.noise_figure_db - targets.nf_max_db).max(0.0);
        penalty += (gin - targets.reflection_max).max(0.0);
        penalty += (gout - targets.reflection_max).max(0.0);
        penalty += (gs - 1.0).max(0.0);
        penalty += (gl - 1.0).max(0.0);
        if penalty.is_nan() {
            penalty = f64::INFINITY;
        }
        (penalty, false)
    }
}

/// A particle has "reached a solution" when it is feasible and its gain sits
/// within the convergence band of the target.
pub fn is_converged(fitness: f64, feasible: bool, targets: &DesignTargets) -> bool {
    feasible && fitness <= targets.gain_tolerance_db
}

/// Objective closure for the swarm: positions are raw wavelength fractions,
/// canonicalized before evaluation. Singular evaluations rank as infeasible
/// with worst fitness instead of aborting the run.
fn objective_for(
    s: SParameters,
    n: NoiseParameters,
    z0: f64,
    targets: DesignTargets,
) -> impl Fn(&[f64]) -> Evaluation + Sync {
    move |position: &[f64]| {
        let v = match DesignVector::from_slice(position) {
            Ok(v) => v,
            Err(_) => {
                return Evaluation {
                    fitness: f64::INFINITY,
                    feasible: false,
                }
            }
        };
        match amplifier::evaluate_design(&s, &n, &v, z0) {
            Ok(metrics) => {
                let (fitness, feasible) = fitness(&metrics, &targets);
                Evaluation { fitness, feasible }
            }
            Err(_) => Evaluation {
                fitness: f64::INFINITY,
                feasible: false,
            },
        }
    }
}

/// Run the full design: bind the evaluation chain to the swarm, optimize,
/// and re-evaluate the winner.
///
/// Device-data problems (frequency out of range, missing noise block)
/// surface before any swarm work. The engine's convergence threshold is tied
/// to the gain tolerance so trace convergence counts match [`is_converged`].
pub fn design_amplifier(spec: &DesignSpec) -> Result<DesignResult, DesignError> {
    spec.targets.validate()?;
    if spec.swarm.n_dimensions != 4 {
        return Err(DesignError::InvalidSwarmConfig(format!(
            "expected 4 dimensions, got {}",
            spec.swarm.n_dimensions
        )));
    }
    let (s, n) = spec.device.at(spec.design_frequency)?;
    let z0 = spec.device.reference_impedance;

    let mut config = spec.swarm.clone();
    config.convergence_epsilon = spec.targets.gain_tolerance_db;

    let objective = objective_for(s, n, z0, spec.targets);
    let outcome = pso::run(&config, &objective)?;

    let best = DesignVector::from_slice(&outcome.best_position)?;
    let metrics = amplifier::evaluate_design(&s, &n, &best, z0)?;
    let (fit, feasible) = fitness(&metrics, &spec.targets);
    Ok(DesignResult {
        best,
        metrics,
        fitness: fit,
        feasible,
        trace: outcome.trace,
        seed: config.seed,
    })
}

/// Evaluate one fixed design at the design frequency.
pub fn evaluate_fixed(
    spec: &DesignSpec,
    v: &DesignVector,
) -> Result<AmplifierMetrics, DesignError> {
    let (s, n) = spec.device.at(spec.design_frequency)?;
    Ok(amplifier::evaluate_design(
        &s,
        &n,
        v,
        spec.device.reference_impedance,
    )?)
}

/// Sweep a fixed design across frequency.
///
/// Physical line lengths are fixed, so each electrical length scales by
/// f/f_design (modulo the 0.5 λ period) before evaluation. The noise figure
/// is reported only where the device tabulates noise data.
pub fn sweep(
    spec: &DesignSpec,
    v: &DesignVector,
    frequencies: &[f64],
) -> Result<Vec<SweepPoint>, DesignError> {
    let z0 = spec.device.reference_impedance;
    let base = v.as_lambdas();
    let mut points = Vec::with_capacity(frequencies.len());
    for &f in frequencies {
        let ratio = f / spec.design_frequency;
        let scaled = DesignVector::from_lambdas([
            base[0] * ratio,
            base[1] * ratio,
            base[2] * ratio,
            base[3] * ratio,
        ])?;
        let s = spec.device.s_at(f)?;
        let gamma_s = crate::network::source_reflection(scaled.d1, scaled.l1)?;
        let gamma_l = crate::network::load_reflection(scaled.d2, scaled.l2)?;
        let gain = amplifier::transducer_gain(&s, gamma_s, gamma_l)?;
        let gamma_in = amplifier::input_reflection(&s, gamma_l)?;
        let gamma_out = amplifier::output_reflection(&s, gamma_s)?;
        let noise_figure_db = match spec.device.at(f) {
            Ok((_, noise)) => {
                if gamma_s.norm() < 1.0 {
                    Some(crate::units::db_from_linear(amplifier::noise_figure(
                        &noise, gamma_s, z0,
                    )?))
                } else {
                    Some(f64::INFINITY)
                }
            }
            Err(TouchstoneError::MissingNoise { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        points.push(SweepPoint {
            frequency: f,
            gain_db: if gain > 0.0 {
                crate::units::db_from_linear(gain)
            } else {
                f64::NEG_INFINITY
            },
            noise_figure_db,
            gamma_s,
            gamma_l,
            gamma_in,
            gamma_out,
        });
    }
    Ok(points)
}
