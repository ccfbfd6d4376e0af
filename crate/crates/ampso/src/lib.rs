//! Single-stage low-noise microwave amplifier design by constrained
//! particle swarm optimization.
//!
//! A candidate amplifier is four transmission-line lengths: a shunt stub and
//! series line on each side of the transistor. The library evaluates each
//! candidate with closed-form transducer gain, noise figure and terminal
//! reflection expressions against tabulated two-port device data, and drives
//! a deterministic, feasibility-first particle swarm over the lengths until
//! the gain target is met with the noise figure and reflections inside their
//! limits.
//!
//! ## Modules
//!
//! - [`touchstone`] — `.s2p` device files in and out, frequency interpolation
//! - [`network`] — stub/line impedance transforms and Γs, ΓL
//! - [`amplifier`] — gain, noise figure, noise circles, candidate metrics
//! - [`pso`] — the swarm engine (seeded, wrappable, serial or parallel)
//! - [`design`] — the constrained design problem, fixed evaluation, sweeps
//! - [`report`] — run reports, CSV exports, atomic writes
//! - [`reference`](mod@reference) — known-good FHX35X reference designs and fidelity checks
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p ampso --example parse_device      # read and interpolate .s2p data
//! cargo run -p ampso --example sphere_pso        # the bare swarm on a benchmark
//! cargo run -p ampso --example evaluate_design   # metrics of fixed designs
//! cargo run -p ampso --example design_lna        # full end-to-end design run
//! cargo run -p ampso --example frequency_sweep   # gain/reflection response CSV
//! cargo run -p ampso --example noise_circles     # Smith-chart noise-circle CSV
//! cargo run -p ampso --example reference_check   # fixture fidelity report
//! ```
//!
//! The same flows are scriptable through the `ampso` binary
//! (`design`, `eval`, `sweep`, `circles` subcommands); see the README.

pub mod amplifier;
pub mod design;
pub mod network;
pub mod pso;
pub mod reference;
pub mod report;
pub mod touchstone;
pub mod units;

pub use amplifier::{AmplifierMetrics, NoiseCircle};
pub use design::{DesignResult, DesignSpec, DesignTargets, SweepPoint};
pub use network::{DesignVector, ElectricalLength};
pub use pso::{ConvergenceTrace, Evaluation, SwarmConfig};
pub use touchstone::{DeviceData, NoiseParameters, SParameters};
