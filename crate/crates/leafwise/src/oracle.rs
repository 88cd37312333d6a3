//! Independent reference routes used by the test suites.
//!
//! Nothing in the solver paths may call into this module: each function here
//! exists to cross-check a closed form or an iteration by a structurally
//! different computation (companion-matrix eigenvalues, product formulas,
//! brute-force sampling).

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

/// Discriminant of a polynomial with known roots: a²ⁿ⁻² Π_{i<j} (rᵢ − rⱼ)².
pub fn discriminant_from_roots(leading: f64, roots: &[f64]) -> f64 {
    let n = roots.len();
    let mut prod = 1.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = roots[i] - roots[j];
            prod *= d * d;
        }
    }
    leading.powi(2 * n as i32 - 2) * prod
}

/// Real roots of a polynomial (descending coefficients) from the eigenvalues
/// of its companion matrix.
pub fn roots_companion(coeffs_desc: &[f64], imag_tol: f64) -> Vec<f64> {
    let mut c = coeffs_desc.to_vec();
    while c.len() > 1 && c[0] == 0.0 {
        c.remove(0);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[0];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[n - i] / lead;
    }
    let eig = m.complex_eigenvalues();
    let mut roots: Vec<f64> = eig
        .iter()
        .filter(|z| z.im.abs() <= imag_tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    roots
}

/// Count of real roots by the companion-matrix route.
pub fn real_root_count(coeffs_desc: &[f64], imag_tol: f64) -> usize {
    roots_companion(coeffs_desc, imag_tol).len()
}

/// Minimum of a function over a uniform sample of [lo, hi].
pub fn sampled_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    (0..=n)
        .map(|k| f(lo + (hi - lo) * k as f64 / n as f64))
        .fold(f64::INFINITY, f64::min)
}
