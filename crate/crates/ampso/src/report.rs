//! Machine-readable output: the versioned run report, CSV exports and
//! atomic file writes.
//!
//! The run report is a `key: value` document. Everything above the
//! `elapsed_ms` line is deterministic for a given seed and configuration;
//! consumers comparing runs should strip lines starting with `elapsed_ms`.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use num_complex::Complex64;

use crate::amplifier::{AmplifierMetrics, NoiseCircle};
use crate::design::{DesignResult, DesignSpec, SweepPoint};
use crate::network::ElectricalLength;
use crate::pso::ConvergenceTrace;
use crate::units::db_from_magnitude;

pub const REPORT_VERSION: u32 = 1;

/// Environment variable consulted for the seed when no flag is given.
pub const SEED_ENV_VAR: &str = "AMPSO_SEED";

/// Render the full design report: effective configuration echo, the best
/// design in both λ-fractions and degrees, its metrics, and a trace summary.
pub fn render_run_report(
    spec: &DesignSpec,
    result: &DesignResult,
    elapsed: Option<Duration>,
) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k}: {v}\n"));

    line("ampso_report_version", REPORT_VERSION.to_string());
    line("device", spec.device.name.clone());
    line(
        "reference_impedance_ohm",
        fmt(spec.device.reference_impedance),
    );
    line("design_frequency_hz", fmt(spec.design_frequency));
    line("gain_target_db", fmt(spec.targets.gain_target_db));
    line("nf_max_db", fmt(spec.targets.nf_max_db));
    line("reflection_max", fmt(spec.targets.reflection_max));
    line("gain_tolerance_db", fmt(spec.targets.gain_tolerance_db));
    line("particles", spec.swarm.n_particles.to_string());
    line("iterations", spec.swarm.max_iterations.to_string());
    line("inertia_weight", fmt(spec.swarm.inertia_weight));
    line("learning_coeff", fmt(spec.swarm.learning_coeff));
    line("init_lower_lambda", fmt(spec.swarm.init_lower[0]));
    line("init_upper_lambda", fmt(spec.swarm.init_upper[0]));
    line("v_max_lambda", fmt(spec.swarm.v_max[0]));
    line(
        "wrap_period_lambda",
        spec.swarm.wrap_period[0]
            .map(fmt)
            .unwrap_or_else(|| "none".into()),
    );
    line("draw_mode", format!("{:?}", spec.swarm.draw_mode));
    line("parallel", spec.swarm.parallel.to_string());
    line("seed", result.seed.to_string());

    line("feasible", result.feasible.to_string());
    line("fitness_db", fmt(result.fitness));
    for (name, len) in [
        ("d1", result.best.d1),
        ("l1", result.best.l1),
        ("d2", result.best.d2),
        ("l2", result.best.l2),
    ] {
        line(&format!("{name}_lambda"), fmt(len.value()));
        line(&format!("{name}_deg"), fmt(len.degrees()));
    }
    push_metrics(&mut out, &result.metrics);

    let last = result.trace.last().expect("trace always has records");
    out.push_str(&format!("trace_records: {}\n", result.trace.records.len()));
    out.push_str(&format!("final_converged: {}\n", last.n_converged));
    out.push_str(&format!("final_feasible: {}\n", last.n_feasible));
    if let Some(elapsed) = elapsed {
        out.push_str(&format!("elapsed_ms: {}\n", elapsed.as_millis()));
    }
    out
}

fn push_metrics(out: &mut String, m: &AmplifierMetrics) {
    out.push_str(&format!("gain_db: {}\n", fmt(m.gain_db)));
    out.push_str(&format!("noise_figure_db: {}\n", fmt(m.noise_figure_db)));
    out.push_str(&format!("gamma_s_mag: {}\n", fmt(m.gamma_s.norm())));
    out.push_str(&format!(
        "gamma_s_deg: {}\n",
        fmt(m.gamma_s.arg().to_degrees())
    ));
    out.push_str(&format!("gamma_l_mag: {}\n", fmt(m.gamma_l.norm())));
    out.push_str(&format!(
        "gamma_l_deg: {}\n",
        fmt(m.gamma_l.arg().to_degrees())
    ));
    out.push_str(&format!("gamma_in_mag: {}\n", fmt(m.gamma_in.norm())));
    out.push_str(&format!(
        "gamma_in_db: {}\n",
        fmt(db_from_magnitude(m.gamma_in.norm()))
    ));
    out.push_str(&format!("gamma_out_mag: {}\n", fmt(m.gamma_out.norm())));
    out.push_str(&format!(
        "gamma_out_db: {}\n",
        fmt(db_from_magnitude(m.gamma_out.norm()))
    ));
}

/// Metrics block alone, for fixed-design evaluation output.
pub fn render_eval_report(m: &AmplifierMetrics) -> String {
    let mut out = String::new();
    push_metrics(&mut out, m);
    out
}

fn fmt(v: f64) -> String {
    format!("{v:.9}")
}

fn fmt_csv(v: f64) -> String {
    format!("{v:.6}")
}

/// Per-iteration trace rows: `iteration,gbest_fitness,n_converged,n_feasible`.
pub fn trace_csv(trace: &ConvergenceTrace) -> String {
    let mut out = String::from("iteration,gbest_fitness,n_converged,n_feasible\n");
    for r in &trace.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.iteration,
            fmt_csv(r.gbest_fitness),
            r.n_converged,
            r.n_feasible
        ));
    }
    out
}

/// Sweep rows: `freq_hz,gain_db,nf_db,s11_db,s22_db`, ascending frequency,
/// `nf_db` empty where the device has no noise data. `s11_db`/`s22_db` are
/// the terminal reflection magnitudes of the terminated amplifier in dB.
pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("freq_hz,gain_db,nf_db,s11_db,s22_db\n");
    for p in points {
        let nf = p.noise_figure_db.map(fmt_csv).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_csv(p.frequency),
            fmt_csv(p.gain_db),
            nf,
            fmt_csv(db_from_magnitude(p.gamma_in.norm())),
            fmt_csv(db_from_magnitude(p.gamma_out.norm())),
        ));
    }
    out
}

/// Noise-circle export: boundary samples in uniform angle order, then one
/// row per overlay point flagged inside/outside. A zero-radius circle
/// collapses to a single boundary row at the center.
pub fn circles_csv(circle: &NoiseCircle, samples: usize, overlays: &[Complex64]) -> String {
    let mut out = String::from("re,im,kind,inside\n");
    if circle.radius <= 0.0 {
        out.push_str(&format!(
            "{},{},boundary,\n",
            fmt_csv(circle.center.re),
            fmt_csv(circle.center.im)
        ));
    } else {
        for k in 0..samples {
            let angle = std::f64::consts::TAU * k as f64 / samples as f64;
            let p = circle.center + Complex64::from_polar(circle.radius, angle);
            out.push_str(&format!("{},{},boundary,\n", fmt_csv(p.re), fmt_csv(p.im)));
        }
    }
    for g in overlays {
        out.push_str(&format!(
            "{},{},overlay,{}\n",
            fmt_csv(g.re),
            fmt_csv(g.im),
            circle.contains(*g)
        ));
    }
    out
}

/// Write via a temp file in the destination directory plus rename, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)?;
    Ok(())
}

/// Parse a CLI length: `41.16deg`, `0.114lam`, or a bare λ-fraction.
pub fn parse_length_flag(text: &str) -> Result<ElectricalLength, String> {
    let trimmed = text.trim();
    let (number, is_degrees) = if let Some(v) = trimmed.strip_suffix("deg") {
        (v, true)
    } else if let Some(v) = trimmed.strip_suffix("lam") {
        (v, false)
    } else {
        (trimmed, false)
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse length '{text}'"))?;
    let result = if is_degrees {
        ElectricalLength::from_degrees(value)
    } else {
        ElectricalLength::new(value)
    };
    result.map_err(|e| e.to_string())
}

/// Parse an overlay reflection coefficient given as `mag,angle_deg`.
pub fn parse_overlay_flag(text: &str) -> Result<Complex64, String> {
    let (mag, deg) = text
        .split_once(',')
        .ok_or_else(|| format!("overlay '{text}' must be mag,angle_deg"))?;
    let mag: f64 = mag
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse overlay magnitude '{mag}'"))?;
    let deg: f64 = deg
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse overlay angle '{deg}'"))?;
    Ok(Complex64::from_polar(mag, deg.to_radians()))
}
