//! Envelope coefficients and the constant-coefficient envelope functions φ±.
//!
//! After the substitution u = e₀w the reaction term is squeezed between two
//! constant-coefficient functions built from the extrema of |Ψ₁|e₀⁻²,
//! |Ψ₂|e₀⁻⁴ and |Ψ₃|e₀². Each sign regime of Ψ₃ has its own arrangement of
//! signs; this module knows all of them and hands out the polynomials whose
//! positive roots make up the root ladder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScalarField;
use crate::ode::OdeParams;

/// The six envelope extrema, all nonnegative (absolute values are taken
/// before the extrema).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSet {
    pub psi1_minus: f64,
    pub psi1_plus: f64,
    pub psi2_minus: f64,
    pub psi2_plus: f64,
    pub psi3_minus: f64,
    pub psi3_plus: f64,
}

impl EnvelopeSet {
    /// All spreads collapsed: Ψ_k^− = Ψ_k^+ (constant coefficients with a
    /// constant ground state).
    pub fn collapsed(psi1: f64, psi2: f64, psi3: f64) -> Self {
        Self {
            psi1_minus: psi1.abs(),
            psi1_plus: psi1.abs(),
            psi2_minus: psi2.abs(),
            psi2_plus: psi2.abs(),
            psi3_minus: psi3.abs(),
            psi3_plus: psi3.abs(),
        }
    }

    pub fn delta3(&self) -> f64 {
        self.psi3_plus - self.psi3_minus
    }

    pub fn psi2_is_zero(&self) -> bool {
        self.psi2_plus == 0.0
    }

    pub fn psi1_is_zero(&self) -> bool {
        self.psi1_plus == 0.0
    }

    pub fn psi3_is_zero(&self) -> bool {
        self.psi3_plus == 0.0
    }

    fn validate(&self) -> Result<()> {
        let pairs = [
            ("psi1", self.psi1_minus, self.psi1_plus),
            ("psi2", self.psi2_minus, self.psi2_plus),
            ("psi3", self.psi3_minus, self.psi3_plus),
        ];
        for (name, lo, hi) in pairs {
            if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "envelope {name} must satisfy 0 ≤ min ≤ max, got ({lo}, {hi})"
                )));
            }
        }
        Ok(())
    }

    pub fn checked(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }
}

/// Ψ_k^± = extrema of |Ψ_k|·e₀^{−2k} for k = 1, 2 and of |Ψ₃|·e₀² for k = 3.
pub fn envelope_coefficients(
    psi1: &ScalarField,
    psi2: &ScalarField,
    psi3: &ScalarField,
    e0: &ScalarField,
) -> Result<EnvelopeSet> {
    if !e0.is_strictly_positive() {
        return Err(Error::NonPositiveField { min: e0.min() });
    }
    let w1 = psi1.zip_with(e0, |p, e| p.abs() / (e * e))?;
    let w2 = psi2.zip_with(e0, |p, e| p.abs() / e.powi(4))?;
    let w3 = psi3.zip_with(e0, |p, e| p.abs() * e * e)?;
    let (p1m, p1p) = w1.min_max();
    let (p2m, p2p) = w2.min_max();
    let (p3m, p3p) = w3.min_max();
    EnvelopeSet {
        psi1_minus: p1m,
        psi1_plus: p1p,
        psi2_minus: p2m,
        psi2_plus: p2p,
        psi3_minus: p3m,
        psi3_plus: p3p,
    }
    .checked()
}

/// Sign regime of the cubic coefficient: the branch structure of the whole
/// stationary analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeTag {
    /// Ψ₃ > 0.
    A,
    /// Ψ₃ < 0.
    B,
    /// Ψ₃ = 0, β < 0.
    C1,
    /// Ψ₃ = 0, β > 0.
    C2,
    /// Ψ₃ = 0, Ψ₂ = 0.
    C3,
    Degenerate,
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegimeTag::A => "A",
            RegimeTag::B => "B",
            RegimeTag::C1 => "C1",
            RegimeTag::C2 => "C2",
            RegimeTag::C3 => "C3",
            RegimeTag::Degenerate => "DEGENERATE",
        };
        f.write_str(s)
    }
}

/// Classification from constant coefficient signs; deterministic, signs only.
pub fn classify_constants(psi3: f64, beta: f64, psi2: f64) -> RegimeTag {
    if psi3 > 0.0 {
        RegimeTag::A
    } else if psi3 < 0.0 {
        RegimeTag::B
    } else if psi2 == 0.0 {
        RegimeTag::C3
    } else if beta < 0.0 {
        RegimeTag::C1
    } else if beta > 0.0 {
        RegimeTag::C2
    } else {
        RegimeTag::Degenerate
    }
}

/// Field-level classification: a field counts as positive/negative only when
/// the sign is uniform over the grid; mixed signs degrade to `Degenerate`.
pub fn classify_fields(psi3: &ScalarField, beta: &ScalarField, psi2: &ScalarField) -> RegimeTag {
    fn uniform_sign(f: &ScalarField) -> Option<f64> {
        let (lo, hi) = f.min_max();
        if lo > 0.0 {
            Some(1.0)
        } else if hi < 0.0 {
            Some(-1.0)
        } else if lo == 0.0 && hi == 0.0 {
            Some(0.0)
        } else {
            None
        }
    }
    match (uniform_sign(psi3), uniform_sign(beta), uniform_sign(psi2)) {
        (Some(s3), _, _) if s3 > 0.0 => RegimeTag::A,
        (Some(s3), _, _) if s3 < 0.0 => RegimeTag::B,
        (Some(0.0), _, Some(0.0)) => RegimeTag::C3,
        (Some(0.0), Some(sb), _) if sb < 0.0 => RegimeTag::C1,
        (Some(0.0), Some(sb), _) if sb > 0.0 => RegimeTag::C2,
        _ => RegimeTag::Degenerate,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

/// z-polynomial (descending coefficients) of the envelope function φ_±:
/// φ_±(y) = P(y²)/y³ in regimes A/B/C1, reduced degrees when Ψ₂ or Ψ₃ vanish.
pub fn phi_poly(regime: RegimeTag, lambda0: f64, env: &EnvelopeSet, side: Side) -> Result<Vec<f64>> {
    let e = env;
    let poly = match (regime, side) {
        // Regime A, upper envelope: max Ψ₁, min Ψ₂, max Ψ₃.
        (RegimeTag::A, Side::Plus) if !e.psi2_is_zero() => {
            vec![e.psi3_plus, -lambda0, e.psi1_plus, -e.psi2_minus]
        }
        (RegimeTag::A, Side::Minus) if !e.psi2_is_zero() => {
            vec![e.psi3_minus, -lambda0, e.psi1_minus, -e.psi2_plus]
        }
        // Ψ₂ ≡ 0 reduction: biquadratic.
        (RegimeTag::A, Side::Plus) => vec![e.psi3_plus, -lambda0, e.psi1_plus],
        (RegimeTag::A, Side::Minus) => vec![e.psi3_minus, -lambda0, e.psi1_minus],
        // Regime B: everything subtracts, upper envelope takes the minima.
        (RegimeTag::B, Side::Plus) => {
            vec![-e.psi3_minus, -lambda0, -e.psi1_minus, -e.psi2_minus]
        }
        (RegimeTag::B, Side::Minus) => {
            vec![-e.psi3_plus, -lambda0, -e.psi1_plus, -e.psi2_plus]
        }
        // Ψ₃ ≡ 0 regimes: biquadratic in y, quadratic in z.
        (RegimeTag::C1 | RegimeTag::C3, Side::Plus) => {
            vec![-lambda0, e.psi1_plus, -e.psi2_minus]
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Minus) => {
            vec![-lambda0, e.psi1_minus, -e.psi2_plus]
        }
        (other, _) => {
            return Err(Error::InvalidArgument(format!(
                "no envelope functions for regime {other}"
            )))
        }
    };
    Ok(poly)
}

/// z-polynomial of the derivative envelope (∂_yφ)_± (the pointwise bound on
/// ∂_yφ over the coefficient box).
pub fn dphi_envelope_poly(
    regime: RegimeTag,
    lambda0: f64,
    env: &EnvelopeSet,
    side: Side,
) -> Result<Vec<f64>> {
    let e = env;
    let poly = match (regime, side) {
        // A: ∂_yφ = −λ₀ − θ₁y⁻² + 3θ₂y⁻⁴ + 3θ₃y²; upper bound: min θ₁, max θ₂, max θ₃.
        (RegimeTag::A, Side::Plus) if !e.psi2_is_zero() => {
            vec![3.0 * e.psi3_plus, -lambda0, -e.psi1_minus, 3.0 * e.psi2_plus]
        }
        (RegimeTag::A, Side::Minus) if !e.psi2_is_zero() => {
            vec![3.0 * e.psi3_minus, -lambda0, -e.psi1_plus, 3.0 * e.psi2_minus]
        }
        (RegimeTag::A, Side::Plus) => vec![3.0 * e.psi3_plus, -lambda0, -e.psi1_minus],
        (RegimeTag::A, Side::Minus) => vec![3.0 * e.psi3_minus, -lambda0, -e.psi1_plus],
        // B: ∂_yφ = −λ₀ + θ₁y⁻² + 3θ₂y⁻⁴ − 3θ₃y².
        (RegimeTag::B, Side::Plus) => {
            vec![-3.0 * e.psi3_minus, -lambda0, e.psi1_plus, 3.0 * e.psi2_plus]
        }
        (RegimeTag::B, Side::Minus) => {
            vec![-3.0 * e.psi3_plus, -lambda0, e.psi1_minus, 3.0 * e.psi2_minus]
        }
        // C: ∂_yφ = −λ₀ − θ₁y⁻² + 3θ₂y⁻⁴; here (∂_yφ)₊ coincides with ∂_y(φ₋).
        (RegimeTag::C1 | RegimeTag::C3, Side::Plus) => {
            vec![-lambda0, -e.psi1_minus, 3.0 * e.psi2_plus]
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Minus) => {
            vec![-lambda0, -e.psi1_plus, 3.0 * e.psi2_minus]
        }
        (other, _) => {
            return Err(Error::InvalidArgument(format!(
                "no derivative envelopes for regime {other}"
            )))
        }
    };
    Ok(poly)
}

/// z-polynomial of ∂_y(φ_±), the derivative *of* the envelope function
/// itself (one endpoint of the resultant pencils).
pub fn phi_derivative_poly(
    regime: RegimeTag,
    lambda0: f64,
    env: &EnvelopeSet,
    side: Side,
) -> Result<Vec<f64>> {
    let e = env;
    let poly = match (regime, side) {
        (RegimeTag::A, Side::Minus) if !e.psi2_is_zero() => {
            vec![3.0 * e.psi3_minus, -lambda0, -e.psi1_minus, 3.0 * e.psi2_plus]
        }
        (RegimeTag::A, Side::Plus) if !e.psi2_is_zero() => {
            vec![3.0 * e.psi3_plus, -lambda0, -e.psi1_plus, 3.0 * e.psi2_minus]
        }
        (RegimeTag::A, Side::Minus) => vec![3.0 * e.psi3_minus, -lambda0, -e.psi1_minus],
        (RegimeTag::A, Side::Plus) => vec![3.0 * e.psi3_plus, -lambda0, -e.psi1_plus],
        (RegimeTag::B, Side::Minus) => {
            vec![-3.0 * e.psi3_plus, -lambda0, e.psi1_plus, 3.0 * e.psi2_plus]
        }
        (RegimeTag::B, Side::Plus) => {
            vec![-3.0 * e.psi3_minus, -lambda0, e.psi1_minus, 3.0 * e.psi2_minus]
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Minus) => {
            vec![-lambda0, -e.psi1_minus, 3.0 * e.psi2_plus]
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Plus) => {
            vec![-lambda0, -e.psi1_plus, 3.0 * e.psi2_minus]
        }
        (other, _) => {
            return Err(Error::InvalidArgument(format!(
                "no envelope derivative for regime {other}"
            )))
        }
    };
    Ok(poly)
}

/// Evaluate an envelope function φ_± at y > 0 from its z-polynomial:
/// φ(y) = P(y²)/y³ with the degree convention of the regime.
pub fn phi_eval(regime: RegimeTag, lambda0: f64, env: &EnvelopeSet, side: Side, y: f64) -> Result<f64> {
    Ok(envelope_ode_params(regime, lambda0, env, side)?.f(y))
}

/// Evaluate the derivative envelope (∂_yφ)_± at y > 0.
pub fn dphi_envelope_eval(
    regime: RegimeTag,
    lambda0: f64,
    env: &EnvelopeSet,
    side: Side,
    y: f64,
) -> Result<f64> {
    let e = env;
    let v = match (regime, side) {
        (RegimeTag::A, Side::Plus) => {
            -lambda0 - e.psi1_minus / (y * y) + 3.0 * e.psi2_plus / y.powi(4)
                + 3.0 * e.psi3_plus * y * y
        }
        (RegimeTag::A, Side::Minus) => {
            -lambda0 - e.psi1_plus / (y * y) + 3.0 * e.psi2_minus / y.powi(4)
                + 3.0 * e.psi3_minus * y * y
        }
        (RegimeTag::B, Side::Plus) => {
            -lambda0 + e.psi1_plus / (y * y) + 3.0 * e.psi2_plus / y.powi(4)
                - 3.0 * e.psi3_minus * y * y
        }
        (RegimeTag::B, Side::Minus) => {
            -lambda0 + e.psi1_minus / (y * y) + 3.0 * e.psi2_minus / y.powi(4)
                - 3.0 * e.psi3_plus * y * y
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Plus) => {
            // Coincides with ∂_y(φ₋), which carries this regime's rate bound.
            -lambda0 - e.psi1_minus / (y * y) + 3.0 * e.psi2_plus / y.powi(4)
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Minus) => {
            -lambda0 - e.psi1_plus / (y * y) + 3.0 * e.psi2_minus / y.powi(4)
        }
        (other, _) => {
            return Err(Error::InvalidArgument(format!(
                "no derivative envelopes for regime {other}"
            )))
        }
    };
    Ok(v)
}

/// The envelope function as signed ODE coefficients, so barriers can be
/// integrated by the comparison-ODE machinery: φ(y) = P(y²)/y³ with
/// P(z) = Ψ₃z³ + βz² + Ψ₁z − Ψ₂ and β = −λ₀.
pub fn envelope_ode_params(
    regime: RegimeTag,
    lambda0: f64,
    env: &EnvelopeSet,
    side: Side,
) -> Result<OdeParams> {
    let e = env;
    let p = match (regime, side) {
        (RegimeTag::A, Side::Plus) => OdeParams::new(e.psi3_plus, -lambda0, e.psi1_plus, e.psi2_minus),
        (RegimeTag::A, Side::Minus) => {
            OdeParams::new(e.psi3_minus, -lambda0, e.psi1_minus, e.psi2_plus)
        }
        (RegimeTag::B, Side::Plus) => {
            OdeParams::new(-e.psi3_minus, -lambda0, -e.psi1_minus, e.psi2_minus)
        }
        (RegimeTag::B, Side::Minus) => {
            OdeParams::new(-e.psi3_plus, -lambda0, -e.psi1_plus, e.psi2_plus)
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Plus) => {
            OdeParams::new(0.0, -lambda0, e.psi1_plus, e.psi2_minus)
        }
        (RegimeTag::C1 | RegimeTag::C3, Side::Minus) => {
            OdeParams::new(0.0, -lambda0, e.psi1_minus, e.psi2_plus)
        }
        (other, _) => {
            return Err(Error::InvalidArgument(format!(
                "no envelope functions for regime {other}"
            )))
        }
    };
    Ok(p)
}
