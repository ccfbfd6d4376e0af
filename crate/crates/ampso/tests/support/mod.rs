//! Shared test support: an independent wave-solution oracle for two-port
//! gain and terminal reflections, plus random passive-case generation.
//!
//! The oracle never uses the closed-form gain expression. It imposes the
//! source and load boundary conditions on the scattering relations, solves
//! the resulting linear system numerically, and derives delivered and
//! available power from the wave amplitudes.

use ampso::touchstone::SParameters;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Solve a complex 2x2 system by Gaussian elimination with partial pivoting.
fn solve2(
    mut a11: Complex64,
    mut a12: Complex64,
    mut c1: Complex64,
    mut a21: Complex64,
    mut a22: Complex64,
    mut c2: Complex64,
) -> (Complex64, Complex64) {
    if a21.norm() > a11.norm() {
        std::mem::swap(&mut a11, &mut a21);
        std::mem::swap(&mut a12, &mut a22);
        std::mem::swap(&mut c1, &mut c2);
    }
    let m = a21 / a11;
    let a22p = a22 - m * a12;
    let c2p = c2 - m * c1;
    let x2 = c2p / a22p;
    let x1 = (c1 - a12 * x2) / a11;
    (x1, x2)
}

/// Transducer gain plus b1/a1 and b2/a2 wave ratios from first principles.
///
/// Forward experiment: a unit source wave at port 1, load termination
/// a2 = ΓL·b2. Reverse experiment for Γout: port 1 terminated with Γs,
/// a unit incident wave at port 2.
pub fn wave_oracle(
    s: &SParameters,
    gamma_s: Complex64,
    gamma_l: Complex64,
) -> (f64, Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // a1 = 1 + Γs·b1, b1 = S11·a1 + S12·a2, b2 = S21·a1 + S22·a2, a2 = ΓL·b2
    let (a1, a2) = solve2(
        one - gamma_s * s.s11,
        -gamma_s * s.s12,
        one,
        -gamma_l * s.s21,
        one - gamma_l * s.s22,
        zero,
    );
    let b1 = s.s11 * a1 + s.s12 * a2;
    let b2 = s.s21 * a1 + s.s22 * a2;
    let p_load = b2.norm_sqr() * (1.0 - gamma_l.norm_sqr());
    let p_available = 1.0 / (1.0 - gamma_s.norm_sqr());
    let gain = p_load / p_available;
    let gamma_in = b1 / a1;

    let a1_rev = gamma_s * s.s12 / (one - gamma_s * s.s11);
    let gamma_out = s.s21 * a1_rev + s.s22;

    (gain, gamma_in, gamma_out)
}

/// Largest singular value of the 2x2 scattering matrix.
pub fn spectral_norm(s: &SParameters) -> f64 {
    let a = s.s11.norm_sqr() + s.s21.norm_sqr();
    let d = s.s12.norm_sqr() + s.s22.norm_sqr();
    let b = s.s11.conj() * s.s12 + s.s21.conj() * s.s22;
    let mid = (a + d) / 2.0;
    let gap = ((a - d) / 2.0).powi(2) + b.norm_sqr();
    (mid + gap.sqrt()).sqrt()
}

pub fn random_unit_disk(rng: &mut ChaCha8Rng, max_mag: f64) -> Complex64 {
    let mag = max_mag * rng.gen::<f64>();
    let angle = std::f64::consts::TAU * rng.gen::<f64>();
    Complex64::from_polar(mag, angle)
}

/// Random S-parameters scaled to spectral norm at most 1.
pub fn random_passive_s(rng: &mut ChaCha8Rng) -> SParameters {
    let mut s = SParameters {
        s11: random_unit_disk(rng, 1.0),
        s12: random_unit_disk(rng, 1.0),
        s21: random_unit_disk(rng, 1.0),
        s22: random_unit_disk(rng, 1.0),
    };
    let norm = spectral_norm(&s);
    if norm > 1.0 {
        let scale = 0.999 / norm;
        s.s11 *= scale;
        s.s12 *= scale;
        s.s21 *= scale;
        s.s22 *= scale;
    }
    s
}
