//! The bare swarm engine on a 4-D sphere function: deterministic seeding,
//! convergence trace, and the serial/parallel equivalence.
//!
//! ```bash
//! cargo run -p ampso --example sphere_pso
//! ```

use ampso::pso::{run, Evaluation, SwarmConfig};

fn main() {
    let sphere = |x: &[f64]| Evaluation {
        fitness: x.iter().map(|v| v * v).sum(),
        feasible: true,
    };

    let config = SwarmConfig::new(4)
        .with_seed(42)
        .with_init_bounds(-5.0, 5.0)
        .with_v_max(2.5)
        .with_iterations(3000);

    let outcome = run(&config, &sphere).expect("valid config");
    println!(
        "best fitness {:.3e} at {:?}",
        outcome.best_fitness,
        outcome
            .best_position
            .iter()
            .map(|v| format!("{v:.2e}"))
            .collect::<Vec<_>>()
    );

    for &it in &[0usize, 10, 50, 100, 500, 3000] {
        let r = &outcome.trace.records[it];
        println!(
            "iteration {:4}: gbest {:.3e}, {} of {} particles converged",
            r.iteration, r.gbest_fitness, r.n_converged, config.n_particles
        );
    }

    let parallel = run(&config.clone().with_parallel(true), &sphere).unwrap();
    println!(
        "parallel evaluation reproduces the serial run bit for bit: {}",
        parallel == outcome
    );
}
