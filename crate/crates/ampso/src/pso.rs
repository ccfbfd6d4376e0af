//! Particle swarm optimizer with deterministic seeding and feasibility-first
//! constraint handling.
//!
//! Velocities follow v' = w·v + c·r1·(pbest − x) + c·r2·(gbest − x) with a
//! per-dimension clamp, positions move by x' = x + v with optional modular
//! wrapping. Each particle draws from its own counter-based RNG stream
//! derived from (seed, particle index), so serial and parallel evaluation
//! produce bit-identical runs.
//!
//! Ranking is feasibility-first: a feasible point beats every infeasible
//! point; within a class, lower fitness wins. This handles constraints
//! without penalty weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How many random draws back one velocity update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrawMode {
    /// Fresh r1, r2 for every dimension (two draws per dimension).
    #[default]
    PerDimension,
    /// One r1, r2 pair shared by all dimensions of a particle.
    PerParticle,
}

/// Engine configuration. Defaults follow the amplifier design protocol:
/// 15 particles, 3000 iterations, inertia 0.4, learning coefficient 2.0,
/// initialization in [0, 0.1] per dimension.
#[derive(Debug, Clone)]
pub struct SwarmConfig {
    pub n_particles: usize,
    pub n_dimensions: usize,
    pub max_iterations: usize,
    pub inertia_weight: f64,
    pub learning_coeff: f64,
    pub init_lower: Vec<f64>,
    pub init_upper: Vec<f64>,
    /// Positions in a dimension with `Some(p)` are reduced modulo p into [0, p).
    pub wrap_period: Vec<Option<f64>>,
    /// Per-dimension velocity clamp, applied after every update.
    pub v_max: Vec<f64>,
    pub seed: u64,
    /// Fitness threshold below which a feasible particle counts as converged.
    pub convergence_epsilon: f64,
    pub draw_mode: DrawMode,
    /// Evaluate all particles of one iteration on the rayon pool.
    pub parallel: bool,
    /// Stop once every particle's personal best has converged.
    pub stop_when_all_converged: bool,
}

impl SwarmConfig {
    pub fn new(n_dimensions: usize) -> Self {
        SwarmConfig {
            n_particles: 15,
            n_dimensions,
            max_iterations: 3000,
            inertia_weight: 0.4,
            learning_coeff: 2.0,
            init_lower: vec![0.0; n_dimensions],
            init_upper: vec![0.1; n_dimensions],
            wrap_period: vec![None; n_dimensions],
            v_max: vec![0.25; n_dimensions],
            seed: 1,
            convergence_epsilon: 0.05,
            draw_mode: DrawMode::PerDimension,
            parallel: false,
            stop_when_all_converged: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_particles(mut self, n: usize) -> Self {
        self.n_particles = n;
        self
    }

    pub fn with_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_init_bounds(mut self, lower: f64, upper: f64) -> Self {
        self.init_lower = vec![lower; self.n_dimensions];
        self.init_upper = vec![upper; self.n_dimensions];
        self
    }

    pub fn with_wrap(mut self, period: f64) -> Self {
        self.wrap_period = vec![Some(period); self.n_dimensions];
        self
    }

    pub fn with_v_max(mut self, v_max: f64) -> Self {
        self.v_max = vec![v_max; self.n_dimensions];
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn validate(&self) -> Result<(), PsoError> {
        let d = self.n_dimensions;
        if self.n_particles == 0 {
            return Err(PsoError::InvalidConfig(
                "n_particles must be at least 1".into(),
            ));
        }
        if d == 0 {
            return Err(PsoError::InvalidConfig(
                "n_dimensions must be at least 1".into(),
            ));
        }
        if self.init_lower.len() != d
            || self.init_upper.len() != d
            || self.wrap_period.len() != d
            || self.v_max.len() != d
        {
            return Err(PsoError::InvalidConfig(format!(
                "per-dimension vectors must have length {d}"
            )));
        }
        for i in 0..d {
            if !self.init_lower[i].is_finite() || !self.init_upper[i].is_finite() {
                return Err(PsoError::InvalidConfig(format!(
                    "init bounds for dimension {i} must be finite"
                )));
            }
            if self.init_lower[i] > self.init_upper[i] {
                return Err(PsoError::InvalidConfig(format!(
                    "init_lower[{i}] must not exceed init_upper[{i}]"
                )));
            }
            if !self.v_max[i].is_finite() || self.v_max[i] <= 0.0 {
                return Err(PsoError::InvalidConfig(format!(
                    "v_max[{i}] must be positive"
                )));
            }
            if let Some(p) = self.wrap_period[i] {
                if !p.is_finite() || p <= 0.0 {
                    return Err(PsoError::InvalidConfig(format!(
                        "wrap_period[{i}] must be positive"
                    )));
                }
            }
        }
        if !self.inertia_weight.is_finite() || !self.learning_coeff.is_finite() {
            return Err(PsoError::InvalidConfig(
                "inertia and learning coefficients must be finite".into(),
            ));
        }
        if self.convergence_epsilon.is_nan() || self.convergence_epsilon < 0.0 {
            return Err(PsoError::InvalidConfig(
                "convergence_epsilon must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// One fitness evaluation: a value to minimize plus a feasibility flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub fitness: f64,
    pub feasible: bool,
}

/// Objective contract: pure and deterministic, safe to call concurrently.
/// Feasible evaluations must return finite fitness.
pub trait Objective: Sync {
    fn evaluate(&self, position: &[f64]) -> Evaluation;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> Evaluation + Sync,
{
    fn evaluate(&self, position: &[f64]) -> Evaluation {
        self(position)
    }
}

/// Feasibility-first ordering: does (f_new, ok_new) strictly improve on
/// (f_old, ok_old)?
pub fn improves(f_new: f64, ok_new: bool, f_old: f64, ok_old: bool) -> bool {
    if ok_new != ok_old {
        return ok_new;
    }
    f_new < f_old
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_fitness: f64,
    pub pbest_feasible: bool,
}

#[derive(Debug, Clone)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    pub gbest_position: Vec<f64>,
    pub gbest_fitness: f64,
    pub gbest_feasible: bool,
    pub iteration: usize,
    rngs: Vec<ChaCha8Rng>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PsoError {
    InvalidConfig(String),
    /// A feasible evaluation returned non-finite fitness.
    ObjectiveContract {
        particle: usize,
        fitness: f64,
    },
}

impl std::fmt::Display for PsoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsoError::InvalidConfig(reason) => write!(f, "invalid swarm config: {reason}"),
            PsoError::ObjectiveContract { particle, fitness } => write!(
                f,
                "objective returned non-finite fitness {fitness} for feasible particle {particle}"
            ),
        }
    }
}

impl std::error::Error for PsoError {}

/// One velocity update without side effects, exposed for direct testing.
pub fn velocity_update(
    p: &Particle,
    gbest: &[f64],
    config: &SwarmConfig,
    r1: &[f64],
    r2: &[f64],
) -> Vec<f64> {
    let w = config.inertia_weight;
    let c = config.learning_coeff;
    (0..config.n_dimensions)
        .map(|i| {
            let v = w * p.velocity[i]
                + c * r1[i] * (p.pbest_position[i] - p.position[i])
                + c * r2[i] * (gbest[i] - p.position[i]);
            v.clamp(-config.v_max[i], config.v_max[i])
        })
        .collect()
}

/// x' = x + v, wrapped into [0, period) where a period is set.
pub fn position_update(
    position: &[f64],
    velocity: &[f64],
    wrap_period: &[Option<f64>],
) -> Vec<f64> {
    position
        .iter()
        .zip(velocity)
        .zip(wrap_period)
        .map(|((x, v), wrap)| {
            let moved = x + v;
            match wrap {
                Some(p) => {
                    let mut m = moved.rem_euclid(*p);
                    if m >= *p {
                        m = 0.0;
                    }
                    m
                }
                None => moved,
            }
        })
        .collect()
}

fn draw_factors(rng: &mut ChaCha8Rng, config: &SwarmConfig) -> (Vec<f64>, Vec<f64>) {
    let d = config.n_dimensions;
    match config.draw_mode {
        DrawMode::PerDimension => {
            let r1 = (0..d).map(|_| rng.gen::<f64>()).collect();
            let r2 = (0..d).map(|_| rng.gen::<f64>()).collect();
            (r1, r2)
        }
        DrawMode::PerParticle => {
            let a = rng.gen::<f64>();
            let b = rng.gen::<f64>();
            (vec![a; d], vec![b; d])
        }
    }
}

fn advance(p: &mut Particle, rng: &mut ChaCha8Rng, gbest: &[f64], config: &SwarmConfig) {
    let (r1, r2) = draw_factors(rng, config);
    p.velocity = velocity_update(p, gbest, config, &r1, &r2);
    p.position = position_update(&p.position, &p.velocity, &config.wrap_period);
}

/// A swarm plus its configuration; step it manually or drive it with [`run`].
#[derive(Debug, Clone)]
pub struct Swarm {
    config: SwarmConfig,
    state: SwarmState,
}

impl Swarm {
    /// Initialize: uniform positions inside the init box, zero velocities,
    /// personal bests from one evaluation of each particle.
    pub fn new<O: Objective>(config: SwarmConfig, objective: &O) -> Result<Self, PsoError> {
        config.validate()?;
        let d = config.n_dimensions;
        let mut rngs: Vec<ChaCha8Rng> = (0..config.n_particles)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(i as u64);
                rng
            })
            .collect();
        let mut particles: Vec<Particle> = rngs
            .iter_mut()
            .map(|rng| {
                let position: Vec<f64> = (0..d)
                    .map(|dim| {
                        let lo = config.init_lower[dim];
                        let hi = config.init_upper[dim];
                        lo + (hi - lo) * rng.gen::<f64>()
                    })
                    .collect();
                Particle {
                    pbest_position: position.clone(),
                    velocity: vec![0.0; d],
                    position,
                    pbest_fitness: f64::INFINITY,
                    pbest_feasible: false,
                }
            })
            .collect();

        let evals = evaluate_all(&particles, objective, config.parallel);
        for (i, (p, eval)) in particles.iter_mut().zip(&evals).enumerate() {
            check_contract(i, eval)?;
            p.pbest_fitness = eval.fitness;
            p.pbest_feasible = eval.feasible;
        }

        let mut swarm = Swarm {
            state: SwarmState {
                particles,
                gbest_position: vec![0.0; d],
                gbest_fitness: f64::INFINITY,
                gbest_feasible: false,
                iteration: 0,
                rngs,
            },
            config,
        };
        swarm.recompute_gbest();
        Ok(swarm)
    }

    pub fn config(&self) -> &SwarmConfig {
        &self.config
    }

    pub fn state(&self) -> &SwarmState {
        &self.state
    }

    /// One synchronous iteration: every particle moves against the current
    /// gbest snapshot, is evaluated, then personal and global bests are
    /// reduced in particle-index order.
    pub fn step<O: Objective>(&mut self, objective: &O) -> Result<(), PsoError> {
        let gbest = self.state.gbest_position.clone();
        let config = &self.config;
        let particles = &mut self.state.particles;
        let rngs = &mut self.state.rngs;

        let evals: Vec<Evaluation> = if config.parallel {
            particles
                .par_iter_mut()
                .zip(rngs.par_iter_mut())
                .map(|(p, rng)| {
                    advance(p, rng, &gbest, config);
                    objective.evaluate(&p.position)
                })
                .collect()
        } else {
            particles
                .iter_mut()
                .zip(rngs.iter_mut())
                .map(|(p, rng)| {
                    advance(p, rng, &gbest, config);
                    objective.evaluate(&p.position)
                })
                .collect()
        };

        for (i, (p, eval)) in particles.iter_mut().zip(&evals).enumerate() {
            check_contract(i, eval)?;
            if improves(
                eval.fitness,
                eval.feasible,
                p.pbest_fitness,
                p.pbest_feasible,
            ) {
                p.pbest_position.copy_from_slice(&p.position);
                p.pbest_fitness = eval.fitness;
                p.pbest_feasible = eval.feasible;
            }
        }
        self.recompute_gbest();
        self.state.iteration += 1;
        Ok(())
    }

    fn recompute_gbest(&mut self) {
        let mut best = 0;
        for i in 1..self.state.particles.len() {
            let p = &self.state.particles[i];
            let b = &self.state.particles[best];
            if improves(
                p.pbest_fitness,
                p.pbest_feasible,
                b.pbest_fitness,
                b.pbest_feasible,
            ) {
                best = i;
            }
        }
        let p = &self.state.particles[best];
        self.state.gbest_position = p.pbest_position.clone();
        self.state.gbest_fitness = p.pbest_fitness;
        self.state.gbest_feasible = p.pbest_feasible;
    }

    /// Snapshot of the quantities a convergence trace records.
    pub fn trace_record(&self) -> TraceRecord {
        let eps = self.config.convergence_epsilon;
        let n_feasible = self
            .state
            .particles
            .iter()
            .filter(|p| p.pbest_feasible)
            .count();
        let n_converged = self
            .state
            .particles
            .iter()
            .filter(|p| p.pbest_feasible && p.pbest_fitness <= eps)
            .count();
        TraceRecord {
            iteration: self.state.iteration,
            gbest_fitness: self.state.gbest_fitness,
            gbest_feasible: self.state.gbest_feasible,
            n_converged,
            n_feasible,
        }
    }
}

fn evaluate_all<O: Objective>(
    particles: &[Particle],
    objective: &O,
    parallel: bool,
) -> Vec<Evaluation> {
    if parallel {
        particles
            .par_iter()
            .map(|p| objective.evaluate(&p.position))
            .collect()
    } else {
        particles
            .iter()
            .map(|p| objective.evaluate(&p.position))
            .collect()
    }
}

fn check_contract(particle: usize, eval: &Evaluation) -> Result<(), PsoError> {
    if eval.feasible && !eval.fitness.is_finite() {
        return Err(PsoError::ObjectiveContract {
            particle,
            fitness: eval.fitness,
        });
    }
    Ok(())
}

/// One row of the per-iteration convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub gbest_fitness: f64,
    pub gbest_feasible: bool,
    /// Particles whose personal best is feasible with fitness within the
    /// convergence threshold.
    pub n_converged: usize,
    /// Particles whose personal best is feasible.
    pub n_feasible: usize,
}

/// Per-iteration history including the initial population, so a full run
/// holds `iterations + 1` records.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTrace {
    pub records: Vec<TraceRecord>,
}

impl ConvergenceTrace {
    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }
}

/// Result of a full swarm run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub best_feasible: bool,
    pub trace: ConvergenceTrace,
}

/// Initialize and iterate `max_iterations` times (optionally stopping early
/// once every particle has converged), collecting the trace.
pub fn run<O: Objective>(config: &SwarmConfig, objective: &O) -> Result<RunOutcome, PsoError> {
    let mut swarm = Swarm::new(config.clone(), objective)?;
    let mut trace = ConvergenceTrace {
        records: vec![swarm.trace_record()],
    };
    for _ in 0..config.max_iterations {
        swarm.step(objective)?;
        let record = swarm.trace_record();
        let all_converged = record.n_converged == config.n_particles;
        trace.records.push(record);
        if config.stop_when_all_converged && all_converged {
            break;
        }
    }
    Ok(RunOutcome {
        best_position: swarm.state.gbest_position.clone(),
        best_fitness: swarm.state.gbest_fitness,
        best_feasible: swarm.state.gbest_feasible,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(position: &[f64]) -> Evaluation {
        Evaluation {
            fitness: position.iter().map(|x| x * x).sum(),
            feasible: true,
        }
    }

    fn particle(position: Vec<f64>, velocity: Vec<f64>, pbest: Vec<f64>) -> Particle {
        Particle {
            position,
            velocity,
            pbest_position: pbest,
            pbest_fitness: 0.0,
            pbest_feasible: true,
        }
    }

    #[test]
    fn velocity_update_arithmetic() {
        let mut cfg = SwarmConfig::new(1);
        cfg.v_max = vec![10.0];
        let p = particle(vec![0.0], vec![0.01], vec![0.02]);
        let v = velocity_update(&p, &[-0.01], &cfg, &[0.5], &[0.25]);
        assert!((v[0] - 0.019).abs() < 1e-15);
    }

    #[test]
    fn velocity_update_pure_inertia() {
        let cfg = SwarmConfig::new(2);
        let p = particle(vec![0.3, 0.1], vec![0.02, -0.04], vec![0.3, 0.1]);
        let v = velocity_update(&p, &[0.3, 0.1], &cfg, &[0.9, 0.1], &[0.3, 0.7]);
        assert!((v[0] - 0.4 * 0.02).abs() < 1e-15);
        assert!((v[1] + 0.4 * 0.04).abs() < 1e-15);
    }

    #[test]
    fn velocity_clamped_exactly() {
        let mut cfg = SwarmConfig::new(1);
        cfg.v_max = vec![0.05];
        let p = particle(vec![0.0], vec![0.0], vec![1.0]);
        let v = velocity_update(&p, &[1.0], &cfg, &[1.0], &[1.0]);
        assert_eq!(v[0], 0.05);
        let p = particle(vec![0.0], vec![0.0], vec![-1.0]);
        let v = velocity_update(&p, &[-1.0], &cfg, &[1.0], &[1.0]);
        assert_eq!(v[0], -0.05);
    }

    #[test]
    fn position_update_cases() {
        assert!((position_update(&[0.1], &[0.05], &[None])[0] - 0.15).abs() < 1e-15);
        let wrapped = position_update(&[0.45], &[0.1], &[Some(0.5)]);
        assert!((wrapped[0] - 0.05).abs() < 1e-12);
        assert_eq!(position_update(&[0.3], &[0.0], &[None])[0], 0.3);
    }

    #[test]
    fn init_is_deterministic() {
        let cfg = SwarmConfig::new(4).with_seed(99);
        let a = Swarm::new(cfg.clone(), &sphere).unwrap();
        let b = Swarm::new(cfg, &sphere).unwrap();
        assert_eq!(a.state.particles, b.state.particles);
        assert_eq!(a.state.gbest_position, b.state.gbest_position);
    }

    #[test]
    fn degenerate_init_interval() {
        let cfg = SwarmConfig::new(3).with_init_bounds(0.07, 0.07);
        let swarm = Swarm::new(cfg, &sphere).unwrap();
        for p in &swarm.state.particles {
            assert_eq!(p.position, vec![0.07, 0.07, 0.07]);
        }
    }

    #[test]
    fn default_config_shape() {
        let cfg = SwarmConfig::new(4);
        assert_eq!(cfg.n_particles, 15);
        assert_eq!(cfg.max_iterations, 3000);
        assert_eq!(cfg.inertia_weight, 0.4);
        assert_eq!(cfg.learning_coeff, 2.0);
        let swarm = Swarm::new(cfg, &sphere).unwrap();
        assert_eq!(swarm.state.particles.len(), 15);
        for p in &swarm.state.particles {
            assert_eq!(p.position.len(), 4);
            assert!(p.position.iter().all(|x| (0.0..=0.1).contains(x)));
            assert!(p.velocity.iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn constant_objective_keeps_gbest() {
        let constant = |_: &[f64]| Evaluation {
            fitness: 7.0,
            feasible: true,
        };
        let cfg = SwarmConfig::new(2).with_seed(5);
        let mut swarm = Swarm::new(cfg, &constant).unwrap();
        let before = swarm.state.gbest_fitness;
        for _ in 0..10 {
            swarm.step(&constant).unwrap();
        }
        assert_eq!(swarm.state.gbest_fitness, before);
    }

    #[test]
    fn particle_at_optimum_is_fixed_point() {
        let cfg = {
            let mut c = SwarmConfig::new(2).with_particles(1).with_seed(3);
            c.init_lower = vec![0.0, 0.0];
            c.init_upper = vec![0.0, 0.0];
            c
        };
        let mut swarm = Swarm::new(cfg, &sphere).unwrap();
        for _ in 0..20 {
            swarm.step(&sphere).unwrap();
        }
        assert_eq!(swarm.state.particles[0].position, vec![0.0, 0.0]);
        assert_eq!(swarm.state.gbest_fitness, 0.0);
    }

    #[test]
    fn contract_violation_detected() {
        let bad = |_: &[f64]| Evaluation {
            fitness: f64::NAN,
            feasible: true,
        };
        let cfg = SwarmConfig::new(1);
        assert!(matches!(
            Swarm::new(cfg, &bad),
            Err(PsoError::ObjectiveContract { .. })
        ));
    }

    #[test]
    fn zero_iterations_returns_initial_best() {
        let cfg = SwarmConfig::new(3).with_iterations(0).with_seed(11);
        let outcome = run(&cfg, &sphere).unwrap();
        assert_eq!(outcome.trace.records.len(), 1);
        let swarm = Swarm::new(SwarmConfig::new(3).with_seed(11), &sphere).unwrap();
        assert_eq!(outcome.best_position, swarm.state.gbest_position);
    }

    #[test]
    fn run_is_deterministic() {
        let cfg = SwarmConfig::new(4).with_seed(42).with_iterations(50);
        let a = run(&cfg, &sphere).unwrap();
        let b = run(&cfg, &sphere).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let serial = SwarmConfig::new(4).with_seed(42).with_iterations(60);
        let parallel = serial.clone().with_parallel(true);
        let a = run(&serial, &sphere).unwrap();
        let b = run(&parallel, &sphere).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn frozen_coefficients_freeze_positions() {
        let mut cfg = SwarmConfig::new(2).with_seed(8).with_iterations(0);
        cfg.inertia_weight = 0.0;
        cfg.learning_coeff = 0.0;
        let mut swarm = Swarm::new(cfg, &sphere).unwrap();
        let positions: Vec<Vec<f64>> = swarm
            .state
            .particles
            .iter()
            .map(|p| p.position.clone())
            .collect();
        for _ in 0..5 {
            swarm.step(&sphere).unwrap();
        }
        for (p, before) in swarm.state.particles.iter().zip(&positions) {
            assert_eq!(&p.position, before);
        }
    }

    #[test]
    fn sphere_converges_quickly() {
        let cfg = SwarmConfig::new(4)
            .with_seed(0)
            .with_iterations(500)
            .with_init_bounds(-5.0, 5.0)
            .with_v_max(2.5);
        let outcome = run(&cfg, &sphere).unwrap();
        assert!(outcome.best_fitness < 1e-3, "{}", outcome.best_fitness);
    }

    #[test]
    fn gbest_trace_non_increasing_and_bounds_hold() {
        let cfg = SwarmConfig::new(3)
            .with_seed(17)
            .with_iterations(120)
            .with_wrap(0.5);
        let mut swarm = Swarm::new(cfg.clone(), &sphere).unwrap();
        let mut last = swarm.state.gbest_fitness;
        for _ in 0..cfg.max_iterations {
            swarm.step(&sphere).unwrap();
            assert!(swarm.state.gbest_fitness <= last);
            last = swarm.state.gbest_fitness;
            for p in &swarm.state.particles {
                for (dim, v) in p.velocity.iter().enumerate() {
                    assert!(v.abs() <= cfg.v_max[dim] + 1e-15);
                }
                for x in &p.position {
                    assert!((0.0..0.5).contains(x), "wrapped position {x}");
                }
            }
        }
    }

    #[test]
    fn per_particle_draws_share_factors_across_dimensions() {
        let mut cfg = SwarmConfig::new(3).with_particles(2).with_seed(6);
        cfg.draw_mode = DrawMode::PerParticle;
        cfg.v_max = vec![100.0; 3];
        let mut swarm = Swarm::new(cfg.clone(), &sphere).unwrap();
        let gbest = swarm.state.gbest_position.clone();
        // pick the particle that did not supply the gbest
        let idx = (0..2)
            .find(|&i| swarm.state.particles[i].position != gbest)
            .unwrap();
        let x0 = swarm.state.particles[idx].position.clone();
        swarm.step(&sphere).unwrap();
        // from zero velocity with pbest == x, v = c·r2·(gbest − x), so the
        // per-dimension ratio exposes the shared draw
        let v = &swarm.state.particles[idx].velocity;
        let ratios: Vec<f64> = (0..3).map(|d| v[d] / (gbest[d] - x0[d])).collect();
        for r in &ratios[1..] {
            assert!((r - ratios[0]).abs() < 1e-12, "ratios {ratios:?}");
        }

        let a = run(&cfg.clone().with_iterations(30), &sphere).unwrap();
        let b = run(&cfg.with_iterations(30), &sphere).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn early_stop_when_all_converged() {
        let mut cfg = SwarmConfig::new(2).with_seed(4).with_iterations(5000);
        cfg.stop_when_all_converged = true;
        cfg.convergence_epsilon = 1e-3;
        let outcome = run(&cfg, &sphere).unwrap();
        let last = outcome.trace.last().unwrap();
        assert_eq!(last.n_converged, cfg.n_particles);
        assert!(outcome.trace.records.len() < cfg.max_iterations + 1);
        assert_eq!(outcome.trace.records.len(), last.iteration + 1);
    }

    #[test]
    fn feasibility_first_ordering() {
        assert!(improves(5.0, true, 1.0, false));
        assert!(!improves(1.0, false, 5.0, true));
        assert!(improves(1.0, true, 2.0, true));
        assert!(!improves(2.0, true, 2.0, true));
        assert!(improves(3.0, false, 4.0, false));
    }

    #[test]
    fn infeasible_never_displaces_feasible_gbest() {
        // fitness rewards infeasible region; feasible-first must still pin
        // gbest to a feasible point once one is seen
        let tricky = |x: &[f64]| {
            let inside = x[0] >= 0.0 && x[0] <= 0.2;
            Evaluation {
                fitness: if inside { x[0].abs() } else { -1.0 },
                feasible: inside,
            }
        };
        let cfg = SwarmConfig::new(1).with_seed(2).with_iterations(100);
        let mut swarm = Swarm::new(cfg, &tricky).unwrap();
        let mut seen_feasible = false;
        for _ in 0..100 {
            swarm.step(&tricky).unwrap();
            seen_feasible |= swarm.state.gbest_feasible;
            if seen_feasible {
                assert!(swarm.state.gbest_feasible);
            }
        }
        assert!(seen_feasible);
    }
}
