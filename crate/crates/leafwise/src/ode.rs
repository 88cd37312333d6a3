//! The scalar comparison problem y′ = f(y) = P(y²)/y³ with
//! P(z) = Ψ₃z³ + βz² + Ψ₁z − Ψ₂: stationary points with stability tags,
//! adaptive integration with blow-up/blow-down event detection, and basin
//! probing. Spatially constant solutions of the full heat flow obey exactly
//! this problem, which makes it the oracle for the PDE path.

use serde::{Deserialize, Serialize};

use crate::cubic::roots_cubic;
use crate::error::{Error, Result};

/// Coefficients of P(z) = Ψ₃z³ + βz² + Ψ₁z − Ψ₂ (all signed, as they appear
/// in the equation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeParams {
    pub psi3: f64,
    pub beta: f64,
    pub psi1: f64,
    pub psi2: f64,
}

impl OdeParams {
    pub fn new(psi3: f64, beta: f64, psi1: f64, psi2: f64) -> Self {
        Self { psi3, beta, psi1, psi2 }
    }

    /// f(y) = Ψ₃y³ + βy + Ψ₁y⁻¹ − Ψ₂y⁻³.
    pub fn f(&self, y: f64) -> f64 {
        self.psi3 * y.powi(3) + self.beta * y + self.psi1 / y - self.psi2 / y.powi(3)
    }

    /// f′(y) = 3Ψ₃y² + β − Ψ₁y⁻² + 3Ψ₂y⁻⁴.
    pub fn f_prime(&self, y: f64) -> f64 {
        3.0 * self.psi3 * y * y + self.beta - self.psi1 / (y * y) + 3.0 * self.psi2 / y.powi(4)
    }

    /// P(z) coefficients, descending.
    pub fn poly(&self) -> [f64; 4] {
        [self.psi3, self.beta, self.psi1, -self.psi2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    Stable,
    Unstable,
    Marginal,
}

pub const MARGINAL_TOL: f64 = 1e-10;

/// Positive stationary points y = √z over positive roots z of P, tagged by
/// the sign of f′.
pub fn stationary_points(params: &OdeParams) -> Result<Vec<(f64, Stability)>> {
    let [a3, a2, a1, a0] = params.poly();
    let analysis = roots_cubic(a3, a2, a1, a0)?;
    let scale = 1.0
        + analysis
            .real_roots
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs()));
    let mut out = Vec::new();
    for &z in &analysis.real_roots {
        if z <= 1e-14 * scale {
            continue;
        }
        let y = z.sqrt();
        let slope = params.f_prime(y);
        let tag = if slope.abs() <= MARGINAL_TOL {
            Stability::Marginal
        } else if slope < 0.0 {
            Stability::Stable
        } else {
            Stability::Unstable
        };
        out.push((y, tag));
    }
    Ok(out)
}

/// Terminal state of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Terminal {
    /// |f(y*)| < 1e−10 with f′(y*) < 0.
    Converged(f64),
    /// y crossed below [`BLOW_DOWN_THRESHOLD`].
    BlowDown,
    /// y exceeded [`BLOW_UP_THRESHOLD`].
    BlowUp,
    MaxTime,
}

pub const BLOW_DOWN_THRESHOLD: f64 = 1e-8;
pub const BLOW_UP_THRESHOLD: f64 = 1e6;
pub const CONVERGENCE_SLOPE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OdeRun {
    pub params: OdeParams,
    pub y0: f64,
    pub t_end: f64,
    pub trajectory: Vec<(f64, f64)>,
    pub terminal: Terminal,
}

impl OdeRun {
    pub fn final_state(&self) -> (f64, f64) {
        *self.trajectory.last().expect("trajectory never empty")
    }

    /// CSV dump: header `t,y`, one step per line.
    pub fn to_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,y")?;
        for (t, y) in &self.trajectory {
            writeln!(w, "{t:.12e},{y:.17e}")?;
        }
        Ok(())
    }
}

/// Cash-Karp embedded 4(5) pair for the scalar autonomous problem.
struct CashKarp<'a> {
    params: &'a OdeParams,
}

impl CashKarp<'_> {
    /// One attempted step; returns (y5, error_estimate).
    fn step(&self, y: f64, h: f64) -> (f64, f64) {
        const A2: f64 = 0.2;
        const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
        const A4: [f64; 3] = [0.3, -0.9, 1.2];
        const A5: [f64; 4] = [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0];
        const A6: [f64; 5] = [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ];
        const B5: [f64; 6] = [37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0];
        const B4: [f64; 6] = [
            2825.0 / 27648.0,
            0.0,
            18575.0 / 48384.0,
            13525.0 / 55296.0,
            277.0 / 14336.0,
            0.25,
        ];
        let f = |y: f64| self.params.f(y);
        let k1 = f(y);
        let k2 = f(y + h * A2 * k1);
        let k3 = f(y + h * (A3[0] * k1 + A3[1] * k2));
        let k4 = f(y + h * (A4[0] * k1 + A4[1] * k2 + A4[2] * k3));
        let k5 = f(y + h * (A5[0] * k1 + A5[1] * k2 + A5[2] * k3 + A5[3] * k4));
        let k6 = f(y + h * (A6[0] * k1 + A6[1] * k2 + A6[2] * k3 + A6[3] * k4 + A6[4] * k5));
        let ks = [k1, k2, k3, k4, k5, k6];
        let y5 = y + h * ks.iter().zip(B5).map(|(k, b)| k * b).sum::<f64>();
        let y4 = y + h * ks.iter().zip(B4).map(|(k, b)| k * b).sum::<f64>();
        (y5, (y5 - y4).abs())
    }
}

pub const DEFAULT_ODE_TOL: f64 = 1e-10;

/// Adaptive integration of y′ = f(y), y(0) = y₀ > 0 up to `t_end`, with step
/// rejection near y → 0 and blow-up/blow-down event detection.
pub fn integrate(params: &OdeParams, y0: f64, t_end: f64) -> Result<OdeRun> {
    integrate_with_tol(params, y0, t_end, DEFAULT_ODE_TOL)
}

pub fn integrate_with_tol(params: &OdeParams, y0: f64, t_end: f64, tol: f64) -> Result<OdeRun> {
    if !(y0 > 0.0) {
        return Err(Error::InvalidArgument(format!("y0 must be positive, got {y0}")));
    }
    if !(t_end > 0.0) {
        return Err(Error::InvalidArgument(format!("t_end must be positive, got {t_end}")));
    }
    let stepper = CashKarp { params };
    let mut t = 0.0;
    let mut y = y0;
    let mut traj = vec![(0.0, y0)];
    let mut h = (t_end / 100.0).min(1e-2).max(1e-12);
    let mut terminal = Terminal::MaxTime;
    let max_steps = 50_000_000usize;

    for _ in 0..max_steps {
        if t >= t_end {
            break;
        }
        let slope = params.f(y);
        if slope.abs() < CONVERGENCE_SLOPE_TOL && params.f_prime(y) < 0.0 {
            terminal = Terminal::Converged(y);
            break;
        }
        h = h.min(t_end - t).min(MAX_STEP);
        let (y_new, err) = stepper.step(y, h);
        let scale = tol * (1.0 + y.abs());
        if !y_new.is_finite() || (y_new <= 0.0 && err > scale) || err > scale {
            h *= if y_new.is_finite() && y_new > 0.0 {
                0.9 * (scale / err).powf(0.2).clamp(0.1, 1.0)
            } else {
                0.25
            };
            if h < 1e-15 {
                // The step collapsed against one of the singular walls: the
                // solution reaches it in finite time faster than any
                // resolvable scale.
                terminal = match wall(params, y) {
                    Some(w) => w,
                    None => return Err(Error::Integration(format!("step underflow at t = {t}"))),
                };
                break;
            }
            continue;
        }
        t += h;
        y = y_new;
        traj.push((t, y));
        if y <= BLOW_DOWN_THRESHOLD {
            terminal = Terminal::BlowDown;
            break;
        }
        if y >= BLOW_UP_THRESHOLD {
            terminal = Terminal::BlowUp;
            break;
        }
        if err > 0.0 {
            h *= 0.9 * (scale / err).powf(0.2).clamp(0.2, 5.0);
        } else {
            h *= 5.0;
        }
    }
    Ok(OdeRun {
        params: *params,
        y0,
        t_end,
        trajectory: traj,
        terminal,
    })
}

/// Keeps trajectories sampled densely enough for decay-rate fits.
pub const MAX_STEP: f64 = 0.25;

/// Classifies a step-size collapse: falling into the y → 0 singularity or
/// running up the cubic growth at ∞. Away from the walls a collapse is a
/// genuine integration failure.
fn wall(params: &OdeParams, y: f64) -> Option<Terminal> {
    if y < 1e-2 && params.f(y) < 0.0 {
        Some(Terminal::BlowDown)
    } else if y > 1e3 && params.f(y) > 0.0 {
        Some(Terminal::BlowUp)
    } else {
        None
    }
}

/// Integrates and reports y at exactly the requested times (clipping adaptive
/// steps at each target). Times must be nonnegative and ascending. If the
/// trajectory hits a blow-up/blow-down wall the remaining samples repeat the
/// terminal value.
pub fn integrate_to_times(params: &OdeParams, y0: f64, times: &[f64]) -> Result<Vec<f64>> {
    if !(y0 > 0.0) {
        return Err(Error::InvalidArgument(format!("y0 must be positive, got {y0}")));
    }
    let stepper = CashKarp { params };
    let mut out = Vec::with_capacity(times.len());
    let mut t = 0.0;
    let mut y = y0;
    let mut h: f64 = 1e-4;
    let tol = DEFAULT_ODE_TOL;
    let mut dead = false;
    for &target in times {
        if target < t - 1e-14 {
            return Err(Error::InvalidArgument("times must be ascending".into()));
        }
        while t < target && !dead {
            // Near a stable point nothing moves; skip ahead analytically.
            if params.f(y).abs() < 1e-14 && params.f_prime(y) < 0.0 {
                t = target;
                break;
            }
            h = h.min(target - t).min(MAX_STEP).max(1e-15);
            let (y_new, err) = stepper.step(y, h);
            let scale = tol * (1.0 + y.abs());
            if !y_new.is_finite() || (y_new <= 0.0 && err > scale) {
                h *= 0.25;
                if h < 1e-14 {
                    dead = true;
                }
                continue;
            }
            if err > scale {
                h *= 0.9 * (scale / err).powf(0.2).clamp(0.1, 1.0);
                if h < 1e-14 {
                    dead = true;
                }
                continue;
            }
            t += h;
            y = y_new;
            if y <= BLOW_DOWN_THRESHOLD || y >= BLOW_UP_THRESHOLD {
                dead = true;
            }
            if err > 0.0 {
                h *= 0.9 * (scale / err).powf(0.2).clamp(0.2, 5.0);
            } else {
                h *= 5.0;
            }
        }
        out.push(y);
    }
    Ok(out)
}
