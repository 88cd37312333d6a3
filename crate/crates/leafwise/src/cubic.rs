//! Polynomial machinery: cubic discriminants and roots, the trigonometric
//! solution of depressed cubics, positive-root bounds, the `[0,1]`-positivity
//! criterion and Sylvester resultants.
//!
//! Everything here is exact closed-form arithmetic plus a safeguarded Newton
//! polish; no iteration-to-convergence. Root lists are sorted ascending and a
//! tie within `TIE_TOL` (relative) marks the analysis as degenerate: the
//! strict orderings consumed downstream presume distinct roots, so boundary
//! cases are detected rather than silently ordered.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance under which two polished roots count as one repeated root.
pub const TIE_TOL: f64 = 1e-10;

/// Coefficients, discriminant and real roots of P(z) = a₃z³ + a₂z² + a₁z + a₀.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubicAnalysis {
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub discriminant: f64,
    /// Real roots, ascending. Repeated roots are listed once per multiplicity.
    pub real_roots: Vec<f64>,
    /// True when a conjugate complex pair accompanies the real roots.
    pub complex_pair: bool,
    /// Two roots coincided within [`TIE_TOL`].
    pub degenerate: bool,
}

/// Standard discriminant of a₃z³ + a₂z² + a₁z + a₀.
///
/// For P(z) = Ψ₃z³ + βz² + Ψ₁z − Ψ₂ this evaluates to
/// 4Ψ₂β³ + Ψ₁²β² − 18Ψ₁Ψ₂Ψ₃β − (4Ψ₁³ + 27Ψ₂²Ψ₃)Ψ₃.
pub fn discriminant_cubic(a3: f64, a2: f64, a1: f64, a0: f64) -> f64 {
    18.0 * a3 * a2 * a1 * a0 - 4.0 * a2.powi(3) * a0 + a2 * a2 * a1 * a1
        - 4.0 * a3 * a1.powi(3)
        - 27.0 * a3 * a3 * a0 * a0
}

/// Horner evaluation of a polynomial given by descending coefficients.
pub fn eval_poly_desc(coeffs_desc: &[f64], t: f64) -> f64 {
    coeffs_desc.iter().fold(0.0, |acc, &c| acc * t + c)
}

use eval_poly_desc as poly_eval;

fn poly_derivative(coeffs_desc: &[f64]) -> Vec<f64> {
    let n = coeffs_desc.len();
    if n <= 1 {
        return vec![0.0];
    }
    coeffs_desc[..n - 1]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (n - 1 - i) as f64)
        .collect()
}

/// One safeguarded Newton step on the original coefficients; the step is
/// rejected unless it reduces |P|.
fn polish_root(coeffs_desc: &[f64], root: f64) -> f64 {
    let deriv = poly_derivative(coeffs_desc);
    let mut r = root;
    for _ in 0..2 {
        let p = poly_eval(coeffs_desc, r);
        let dp = poly_eval(&deriv, r);
        if dp == 0.0 || !p.is_finite() {
            break;
        }
        let cand = r - p / dp;
        if !cand.is_finite() {
            break;
        }
        if poly_eval(coeffs_desc, cand).abs() < p.abs() {
            r = cand;
        } else {
            break;
        }
    }
    r
}

/// All real roots of a₃z³ + a₂z² + a₁z + a₀, with quadratic/linear fallback
/// when leading coefficients vanish.
pub fn roots_cubic(a3: f64, a2: f64, a1: f64, a0: f64) -> Result<CubicAnalysis> {
    if a3 == 0.0 && a2 == 0.0 && a1 == 0.0 && a0 == 0.0 {
        return Err(Error::InvalidArgument("all-zero cubic coefficients".into()));
    }
    let coeffs = [a3, a2, a1, a0];
    let (mut roots, complex_pair) = if a3 != 0.0 {
        let disc = discriminant_cubic(a3, a2, a1, a0);
        (solve_cubic_nonzero(a3, a2, a1, a0, disc), disc < 0.0)
    } else if a2 != 0.0 {
        solve_quadratic(a2, a1, a0)
    } else if a1 != 0.0 {
        (vec![-a0 / a1], false)
    } else {
        // Nonzero constant: no roots.
        (Vec::new(), false)
    };

    for r in roots.iter_mut() {
        *r = polish_root(&coeffs, *r);
    }
    roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));

    let scale = 1.0 + roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let degenerate = roots.windows(2).any(|w| (w[1] - w[0]).abs() <= TIE_TOL * scale);

    Ok(CubicAnalysis {
        a3,
        a2,
        a1,
        a0,
        discriminant: if a3 != 0.0 {
            discriminant_cubic(a3, a2, a1, a0)
        } else {
            a1 * a1 - 4.0 * a2 * a0
        },
        real_roots: roots,
        complex_pair,
        degenerate,
    })
}

fn solve_quadratic(a: f64, b: f64, c: f64) -> (Vec<f64>, bool) {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return (Vec::new(), true);
    }
    let s = disc.sqrt();
    // Citardauq pairing avoids cancellation.
    let q = -0.5 * (b + b.signum() * s);
    if q == 0.0 {
        return (vec![0.0, 0.0], false);
    }
    (vec![q / a, c / q], false)
}

fn solve_cubic_nonzero(a3: f64, a2: f64, a1: f64, a0: f64, disc: f64) -> Vec<f64> {
    // Depressed form t = z + a2/(3 a3):  t³ + pt + q.
    let b = a2 / a3;
    let c = a1 / a3;
    let d = a0 / a3;
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b.powi(3) / 27.0 - b * c / 3.0 + d;

    let ts: Vec<f64> = if disc > 0.0 {
        // Three distinct real roots; p < 0 is guaranteed here.
        let (m1, m2, m3) = trig_depressed_clamped(p, q);
        vec![m1, m2, m3]
    } else if disc < 0.0 {
        vec![cardano_single(p, q)]
    } else if p.abs() <= f64::EPSILON * (1.0 + b * b) && q.abs() <= f64::EPSILON * (1.0 + b.abs().powi(3)) {
        vec![0.0, 0.0, 0.0]
    } else {
        // Double root 3q/(2p)·(-1) and simple root 3q/p.
        let double = -1.5 * q / p;
        let single = 3.0 * q / p;
        vec![single, double, double]
    };
    ts.into_iter().map(|t| t - shift).collect()
}

fn cardano_single(p: f64, q: f64) -> f64 {
    let s = (q * q / 4.0 + p.powi(3) / 27.0).max(0.0).sqrt();
    let u = if q <= 0.0 {
        (-q / 2.0 + s).cbrt()
    } else {
        -(q / 2.0 + s).cbrt()
    };
    if u == 0.0 {
        0.0
    } else {
        u - p / (3.0 * u)
    }
}

fn trig_depressed_clamped(p: f64, q: f64) -> (f64, f64, f64) {
    let amp = 2.0 * (-p / 3.0).sqrt();
    let cos3phi = (-4.0 * q / amp.powi(3)).clamp(-1.0, 1.0);
    let phi = cos3phi.acos() / 3.0;
    let two_thirds_pi = 2.0 * std::f64::consts::FRAC_PI_3;
    (
        amp * phi.cos(),
        amp * (phi - two_thirds_pi).cos(),
        amp * (phi + two_thirds_pi).cos(),
    )
}

/// Trigonometric roots of the depressed cubic μ³ + pμ + q in the
/// three-real-root regime.
///
/// Requires p < 0; with amplitude A = 2(−p/3)^{1/2} and cos 3φ = −4q/A³ the
/// roots are μ₁ = A cos φ ≥ μ₂ = A cos(φ − 2π/3) ≥ μ₃ = A cos(φ + 2π/3).
/// |cos 3φ| > 1 means a single real root; the caller should fall back to
/// [`roots_cubic`] there.
pub fn trig_roots_depressed(p: f64, q: f64) -> Result<(f64, f64, f64)> {
    if p >= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "trigonometric form needs p < 0, got p = {p}"
        )));
    }
    let amp = 2.0 * (-p / 3.0).sqrt();
    let cos3phi = -4.0 * q / amp.powi(3);
    if cos3phi.abs() > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "|cos 3φ| = {} > 1: single-real-root regime",
            cos3phi.abs()
        )));
    }
    Ok(trig_depressed_clamped(p, q))
}

/// C(z) = −(5832z² + 540z − 1)/(216z + 1)^{3/2}, strictly decreasing from 1
/// to −1 on [0, 1/27]. It is the cos 3φ profile of the depressed-cubic angle
/// as a function of z = θ₃θ₂²/θ₁³.
pub fn c_of_z(z: f64) -> Result<f64> {
    if !(0.0..=1.0 / 27.0 + 1e-15).contains(&z) {
        return Err(Error::InvalidArgument(format!(
            "z = {z} outside [0, 1/27]"
        )));
    }
    Ok(-(5832.0 * z * z + 540.0 * z - 1.0) / (216.0 * z + 1.0).powf(1.5))
}

/// Upper bound for the positive roots of a real polynomial, or a marker that
/// no positive roots need bounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PositiveRootBound {
    Bound(f64),
    /// No negative coefficient: the polynomial is positive on (0, ∞).
    NoNegativeCoefficients,
}

impl PositiveRootBound {
    /// The bound as a number, with the no-negative-coefficients marker mapped to +∞.
    pub fn value(self) -> f64 {
        match self {
            PositiveRootBound::Bound(b) => b,
            PositiveRootBound::NoNegativeCoefficients => f64::INFINITY,
        }
    }
}

/// Positive-root upper bound 1 + (B/a₀)^{1/m} for a polynomial given by
/// descending coefficients a₀tⁿ + a₁t^{n−1} + … + aₙ.
///
/// m is the index of the first negative coefficient and B the largest
/// absolute value among the negative coefficients.
pub fn maclaurin_bound(coeffs_desc: &[f64]) -> Result<PositiveRootBound> {
    let a0 = *coeffs_desc
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty coefficient list".into()))?;
    if a0 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "leading coefficient must be positive, got {a0}"
        )));
    }
    let m = match coeffs_desc.iter().position(|&c| c < 0.0) {
        Some(m) => m,
        None => return Ok(PositiveRootBound::NoNegativeCoefficients),
    };
    let b = coeffs_desc
        .iter()
        .filter(|&&c| c < 0.0)
        .fold(0.0f64, |acc, &c| acc.max(c.abs()));
    Ok(PositiveRootBound::Bound(1.0 + (b / a0).powf(1.0 / m as f64)))
}

/// True iff the constant term exceeds the sum of absolute values of all
/// negative coefficients; then the polynomial is strictly positive on [0, 1].
pub fn positivity_criterion(coeffs_desc: &[f64]) -> bool {
    let Some((&constant, rest)) = coeffs_desc.split_last() else {
        return false;
    };
    let neg_sum: f64 = rest.iter().filter(|&&c| c < 0.0).map(|c| c.abs()).sum();
    constant > neg_sum
}

/// Resultant of two polynomials (descending coefficients) as the determinant
/// of their Sylvester matrix. Degrees are structural: the slices must carry
/// nonzero leading coefficients.
pub fn sylvester_resultant(f_desc: &[f64], g_desc: &[f64]) -> Result<f64> {
    let m = f_desc.len().checked_sub(1).filter(|_| !f_desc.is_empty());
    let n = g_desc.len().checked_sub(1).filter(|_| !g_desc.is_empty());
    let (m, n) = match (m, n) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::InvalidArgument("empty polynomial".into())),
    };
    if m == 0 && n == 0 {
        return Ok(1.0);
    }
    if f_desc[0] == 0.0 || g_desc[0] == 0.0 {
        return Err(Error::InvalidArgument(
            "leading coefficient must be nonzero for a structural resultant".into(),
        ));
    }
    let size = m + n;
    let mut syl = DMatrix::<f64>::zeros(size, size);
    for row in 0..n {
        for (j, &c) in f_desc.iter().enumerate() {
            syl[(row, row + j)] = c;
        }
    }
    for row in 0..m {
        for (j, &c) in g_desc.iter().enumerate() {
            syl[(n + row, row + j)] = c;
        }
    }
    Ok(syl.lu().determinant())
}
