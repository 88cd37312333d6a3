//! Root ladders of the envelope functions and the resultant separation
//! certificates R₁, R₂, R₃.
//!
//! The ladder collects the positive roots of φ± and of the derivative
//! envelopes, named y₁±…y₅± according to the regime, verifies the strict
//! ordering chain by direct comparison, and produces the decay-rate bound μ⁺.
//! The resultant sweeps check, on the whole pencil between a derivative
//! envelope and the derivative of an envelope, that the printed closed-form
//! coefficients agree with a generic Sylvester determinant and that the
//! resultant stays one-signed on [0,1].

use serde::Serialize;

use crate::cubic::{discriminant_cubic, eval_poly_desc, roots_cubic, sylvester_resultant};
use crate::envelope::{
    dphi_envelope_eval, dphi_envelope_poly, phi_derivative_poly, phi_poly, EnvelopeSet, RegimeTag,
    Side,
};
use crate::error::{Error, Result};

/// Named positive roots of the envelope machinery, their ordering status and
/// the decay-rate bound.
#[derive(Debug, Clone, Serialize)]
pub struct RootLadder {
    pub regime: RegimeTag,
    pub lambda0: f64,
    pub envelopes: EnvelopeSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y1_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y2_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y3_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y4_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y5_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y1_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y2_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y3_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y4_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y5_plus: Option<f64>,
    /// Lower margin used for μ⁺ (inside the admissible interval).
    pub sigma: f64,
    /// Upper margin used for μ⁺ and the monitored band.
    pub tau: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_plus: Option<f64>,
    /// The regime's strict ordering chain held under direct comparison.
    pub ordering_verified: bool,
    /// Some envelope polynomial had a repeated root within tolerance.
    pub degenerate: bool,
}

impl RootLadder {
    /// The attraction window [y₂⁻, y₂⁺] in ratio-to-ground-state coordinates.
    pub fn y2_band(&self) -> Result<(f64, f64)> {
        match (self.y2_minus, self.y2_plus) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::InvalidArgument("ladder lacks y₂ roots".into())),
        }
    }

    /// The wider invariant band [y₂⁻ − σ, y₂⁺ + τ] used by the monitors.
    pub fn monitored_band(&self) -> Result<(f64, f64)> {
        let (lo, hi) = self.y2_band()?;
        Ok((lo - self.sigma, hi + self.tau))
    }

    /// The uniqueness basin in ratio coordinates: (y₃⁻, y₁⁺) in regime A,
    /// (y₁⁻, ∞) in regimes B and C1, all of (0, ∞) when a single root remains.
    pub fn basin(&self) -> (f64, f64) {
        match self.regime {
            RegimeTag::A => (
                self.y3_minus.unwrap_or(0.0),
                self.y1_plus.unwrap_or(f64::INFINITY),
            ),
            RegimeTag::B | RegimeTag::C1 => (self.y1_minus.unwrap_or(0.0), f64::INFINITY),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Ordered (name, value) pairs of the chain this regime asserts.
    pub fn chain(&self) -> Vec<(&'static str, f64)> {
        let take = |name: &'static str, v: Option<f64>| v.map(|v| (name, v));
        let candidates: Vec<Option<(&'static str, f64)>> = match self.regime {
            RegimeTag::A if self.envelopes.psi2_is_zero() => vec![
                take("y2-", self.y2_minus),
                take("y2+", self.y2_plus),
                take("y4-", self.y4_minus),
                take("y1+", self.y1_plus),
                take("y1-", self.y1_minus),
            ],
            RegimeTag::A => vec![
                take("y3+", self.y3_plus),
                take("y3-", self.y3_minus),
                take("y5+", self.y5_plus),
                take("y2-", self.y2_minus),
                take("y2+", self.y2_plus),
                take("y4-", self.y4_minus),
                take("y1+", self.y1_plus),
                take("y1-", self.y1_minus),
            ],
            RegimeTag::B if self.envelopes.psi2_is_zero() => vec![
                take("y3+", self.y3_plus),
                take("y2-", self.y2_minus),
                take("y2+", self.y2_plus),
            ],
            RegimeTag::B => vec![
                take("y1+", self.y1_plus),
                take("y1-", self.y1_minus),
                take("y3+", self.y3_plus),
                take("y2-", self.y2_minus),
                take("y2+", self.y2_plus),
            ],
            RegimeTag::C1 => vec![
                take("y1+", self.y1_plus),
                take("y1-", self.y1_minus),
                take("y3-", self.y3_minus),
                take("y2-", self.y2_minus),
                take("y2+", self.y2_plus),
            ],
            _ => vec![take("y2-", self.y2_minus), take("y2+", self.y2_plus)],
        };
        candidates.into_iter().flatten().collect()
    }
}

fn hypothesis(check: &str, detail: String) -> Error {
    Error::Hypothesis {
        check: check.into(),
        detail,
    }
}

/// Positive y-roots (ascending) of a z-polynomial via y = √z.
fn positive_y_roots(poly_desc: &[f64]) -> Result<(Vec<f64>, bool)> {
    let padded: [f64; 4] = match poly_desc.len() {
        4 => [poly_desc[0], poly_desc[1], poly_desc[2], poly_desc[3]],
        3 => [0.0, poly_desc[0], poly_desc[1], poly_desc[2]],
        2 => [0.0, 0.0, poly_desc[0], poly_desc[1]],
        n => {
            return Err(Error::InvalidArgument(format!(
                "unexpected polynomial degree {n}"
            )))
        }
    };
    let analysis = roots_cubic(padded[0], padded[1], padded[2], padded[3])?;
    let scale = 1.0
        + analysis
            .real_roots
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs()));
    let ys = analysis
        .real_roots
        .iter()
        .filter(|&&z| z > 1e-12 * scale)
        .map(|z| z.sqrt())
        .collect();
    Ok((ys, analysis.degenerate))
}

fn expect_roots(
    poly: &[f64],
    count: usize,
    check: &str,
    what: &str,
) -> Result<(Vec<f64>, bool)> {
    let (ys, degenerate) = positive_y_roots(poly)?;
    if ys.len() != count {
        return Err(hypothesis(
            check,
            format!(
                "{what} must have {count} positive roots, found {} (coefficients {poly:?})",
                ys.len()
            ),
        ));
    }
    Ok((ys, degenerate))
}

fn verify_chain(values: &[(&'static str, f64)]) -> bool {
    values.windows(2).all(|w| w[0].1 < w[1].1)
}

/// Ties between corresponding plus/minus roots (collapsed envelopes) make the
/// ladder degenerate even when each polynomial has simple roots.
fn cross_ties(pairs: &[(f64, f64)]) -> bool {
    pairs
        .iter()
        .any(|&(a, b)| (a - b).abs() <= crate::cubic::TIE_TOL * (1.0 + a.abs().max(b.abs())))
}

/// Maximum of the derivative envelope (∂_yφ)₊ on [lo, hi]: endpoints,
/// interior critical points, and a dense sample as a guard.
fn max_dphi_plus(regime: RegimeTag, lambda0: f64, env: &EnvelopeSet, lo: f64, hi: f64) -> Result<f64> {
    let eval = |y: f64| dphi_envelope_eval(regime, lambda0, env, Side::Plus, y);
    let mut best = f64::NEG_INFINITY;
    for y in [lo, hi] {
        best = best.max(eval(y)?);
    }
    // d/dy (∂_yφ)₊ = 0 reduces to a cubic in s = y² for every regime.
    let crit: Vec<f64> = match regime {
        RegimeTag::A => {
            // 6Ψ₃⁺s³ + 2Ψ₁⁻s − 12Ψ₂⁺ = 0
            roots_cubic(6.0 * env.psi3_plus, 0.0, 2.0 * env.psi1_minus, -12.0 * env.psi2_plus)?
                .real_roots
        }
        RegimeTag::B => {
            // −6Ψ₃⁻s³ − 2Ψ₁⁺s − 12Ψ₂⁺ = 0
            roots_cubic(-6.0 * env.psi3_minus, 0.0, -2.0 * env.psi1_plus, -12.0 * env.psi2_plus)?
                .real_roots
        }
        RegimeTag::C1 | RegimeTag::C3 => {
            // 2Ψ₁⁻s − 12Ψ₂⁺ = 0
            roots_cubic(0.0, 0.0, 2.0 * env.psi1_minus, -12.0 * env.psi2_plus)?.real_roots
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "no derivative envelope for regime {other}"
            )))
        }
    };
    for s in crit {
        if s > 0.0 {
            let y = s.sqrt();
            if (lo..=hi).contains(&y) {
                best = best.max(eval(y)?);
            }
        }
    }
    for k in 0..=256 {
        let y = lo + (hi - lo) * k as f64 / 256.0;
        best = best.max(eval(y)?);
    }
    Ok(best)
}

/// Builds the regime's root ladder from the spectral level and the envelope
/// extrema. Fails with a diagnostic naming the violated inequality whenever a
/// required positive root is missing.
pub fn root_ladder(regime: RegimeTag, lambda0: f64, env: &EnvelopeSet) -> Result<RootLadder> {
    let env = (*env).checked()?;
    match regime {
        RegimeTag::A => ladder_a(lambda0, &env),
        RegimeTag::B => ladder_b(lambda0, &env),
        RegimeTag::C1 => ladder_c1(lambda0, &env),
        RegimeTag::C3 => ladder_c3(lambda0, &env),
        other => Err(Error::InvalidArgument(format!(
            "no ladder is defined for regime {other}"
        ))),
    }
}

fn blank(regime: RegimeTag, lambda0: f64, env: &EnvelopeSet) -> RootLadder {
    RootLadder {
        regime,
        lambda0,
        envelopes: *env,
        y1_minus: None,
        y2_minus: None,
        y3_minus: None,
        y4_minus: None,
        y5_minus: None,
        y1_plus: None,
        y2_plus: None,
        y3_plus: None,
        y4_plus: None,
        y5_plus: None,
        sigma: 0.0,
        tau: 0.0,
        mu_plus: None,
        ordering_verified: false,
        degenerate: false,
    }
}

fn ladder_a(lambda0: f64, env: &EnvelopeSet) -> Result<RootLadder> {
    if lambda0 <= 0.0 {
        return Err(hypothesis("lambda0_positive", format!("λ₀ = {lambda0} ≤ 0")));
    }
    if env.psi1_minus <= 0.0 {
        return Err(hypothesis("psi1_positive", "Ψ₁⁻ must be positive".into()));
    }
    if env.psi3_minus <= 0.0 {
        return Err(hypothesis("psi3_positive", "Ψ₃⁻ must be positive".into()));
    }
    let mut lad = blank(RegimeTag::A, lambda0, env);

    if env.psi2_is_zero() {
        // Biquadratic reduction: two roots per envelope, one derivative root.
        let window = lambda0 * lambda0 - 4.0 * env.psi1_plus * env.psi3_plus;
        if window <= 0.0 {
            return Err(hypothesis(
                "lambda0_quadratic_window",
                format!("λ₀² − 4Ψ₁⁺Ψ₃⁺ = {window} ≤ 0"),
            ));
        }
        let (yp, d1) = expect_roots(
            &phi_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
            2,
            "lambda0_quadratic_window",
            "φ₊",
        )?;
        let (ym, d2) = expect_roots(
            &phi_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
            2,
            "lambda0_quadratic_window",
            "φ₋",
        )?;
        let (dm, d3) = expect_roots(
            &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
            1,
            "derivative_minus_one_root",
            "(∂φ)₋",
        )?;
        let (dp, d4) = expect_roots(
            &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
            1,
            "derivative_plus_one_root",
            "(∂φ)₊",
        )?;
        lad.y2_plus = Some(yp[0]);
        lad.y1_plus = Some(yp[1]);
        lad.y2_minus = Some(ym[0]);
        lad.y1_minus = Some(ym[1]);
        lad.y4_minus = Some(dm[0]);
        lad.y4_plus = Some(dp[0]);
        lad.degenerate =
            d1 || d2 || d3 || d4 || cross_ties(&[(yp[0], ym[0]), (yp[1], ym[1])]);
        lad.ordering_verified = verify_chain(&lad.chain());
        if yp[0] < dp[0] {
            lad.sigma = ym[0] / 2.0;
            lad.tau = (dp[0] - yp[0]) / 2.0;
            let m = max_dphi_plus(RegimeTag::A, lambda0, env, ym[0] - lad.sigma, yp[0] + lad.tau)?;
            if m < 0.0 {
                lad.mu_plus = Some(-m);
            }
        }
        return Ok(lad);
    }

    let disc_minus = discriminant_cubic(env.psi3_minus, -lambda0, env.psi1_minus, -env.psi2_plus);
    let disc_plus = discriminant_cubic(env.psi3_plus, -lambda0, env.psi1_plus, -env.psi2_minus);
    if disc_minus <= 0.0 {
        return Err(hypothesis(
            "envelope_discriminant_minus",
            format!("D(P_φ₋)(λ₀) = {disc_minus} ≤ 0: φ₋ lacks three positive roots"),
        ));
    }
    if disc_plus <= 0.0 {
        return Err(hypothesis(
            "envelope_discriminant_plus",
            format!("D(P_φ₊)(λ₀) = {disc_plus} ≤ 0: φ₊ lacks three positive roots"),
        ));
    }
    let (yp, d1) = expect_roots(
        &phi_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
        3,
        "envelope_discriminant_plus",
        "φ₊",
    )?;
    let (ym, d2) = expect_roots(
        &phi_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
        3,
        "envelope_discriminant_minus",
        "φ₋",
    )?;
    let (dm, d3) = expect_roots(
        &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
        2,
        "derivative_minus_two_roots",
        "(∂φ)₋",
    )?;
    let (dp, d4) = expect_roots(
        &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
        2,
        "derivative_plus_two_roots",
        "(∂φ)₊",
    )?;
    lad.y3_plus = Some(yp[0]);
    lad.y2_plus = Some(yp[1]);
    lad.y1_plus = Some(yp[2]);
    lad.y3_minus = Some(ym[0]);
    lad.y2_minus = Some(ym[1]);
    lad.y1_minus = Some(ym[2]);
    lad.y5_minus = Some(dm[0]);
    lad.y4_minus = Some(dm[1]);
    lad.y5_plus = Some(dp[0]);
    lad.y4_plus = Some(dp[1]);
    lad.degenerate = d1
        || d2
        || d3
        || d4
        || cross_ties(&[(yp[0], ym[0]), (yp[1], ym[1]), (yp[2], ym[2])]);
    lad.ordering_verified = verify_chain(&lad.chain());
    // μ⁺ needs exactly y₅⁺ < y₂⁻ and y₂⁺ < y₄⁺ (the band on which (∂φ)₊ < 0);
    // collapsed envelopes satisfy both even though the full strict chain ties.
    if dp[0] < ym[1] && yp[1] < dp[1] {
        lad.sigma = (ym[1] - dp[0]) / 2.0;
        lad.tau = (dp[1] - yp[1]) / 2.0;
        let m = max_dphi_plus(
            RegimeTag::A,
            lambda0,
            env,
            ym[1] - lad.sigma,
            yp[1] + lad.tau,
        )?;
        if m < 0.0 {
            lad.mu_plus = Some(-m);
        }
    }
    Ok(lad)
}

fn ladder_b(lambda0: f64, env: &EnvelopeSet) -> Result<RootLadder> {
    if lambda0 >= 0.0 {
        return Err(hypothesis("lambda0_negative", format!("λ₀ = {lambda0} ≥ 0")));
    }
    if env.psi3_minus <= 0.0 {
        return Err(hypothesis("psi3_positive", "|Ψ₃|⁻ must be positive".into()));
    }
    let mut lad = blank(RegimeTag::B, lambda0, env);

    if env.psi2_is_zero() {
        if !env.psi1_is_zero() {
            return Err(hypothesis(
                "psi1_zero_when_psi2_zero",
                "the geometric coefficient map forces Ψ₁ = 0 when Ψ₂ ≡ 0 and Ψ₃ < 0".into(),
            ));
        }
        let y2m = (-lambda0 / env.psi3_plus).sqrt();
        let y2p = (-lambda0 / env.psi3_minus).sqrt();
        let y3p = (-lambda0 / (3.0 * env.psi3_minus)).sqrt();
        let y3m = (-lambda0 / (3.0 * env.psi3_plus)).sqrt();
        lad.y2_minus = Some(y2m);
        lad.y2_plus = Some(y2p);
        lad.y3_plus = Some(y3p);
        lad.y3_minus = Some(y3m);
        lad.degenerate = cross_ties(&[(y2m, y2p)]);
        lad.ordering_verified = verify_chain(&lad.chain());
        if y3p < y2m {
            lad.sigma = (y2m - y3p) / 2.0;
            lad.tau = y2p;
            let m = dphi_envelope_eval(RegimeTag::B, lambda0, env, Side::Plus, y2m - lad.sigma)?;
            if m < 0.0 {
                lad.mu_plus = Some(-m);
            }
        }
        return Ok(lad);
    }

    let disc_minus = discriminant_cubic(-env.psi3_plus, -lambda0, -env.psi1_plus, -env.psi2_plus);
    let disc_plus = discriminant_cubic(-env.psi3_minus, -lambda0, -env.psi1_minus, -env.psi2_minus);
    if disc_minus <= 0.0 {
        return Err(hypothesis(
            "envelope_discriminant_minus",
            format!("D(P_φ₋)(λ₀) = {disc_minus} ≤ 0: φ₋ lacks two positive roots"),
        ));
    }
    if disc_plus <= 0.0 {
        return Err(hypothesis(
            "envelope_discriminant_plus",
            format!("D(P_φ₊)(λ₀) = {disc_plus} ≤ 0: φ₊ lacks two positive roots"),
        ));
    }
    let (yp, d1) = expect_roots(
        &phi_poly(RegimeTag::B, lambda0, env, Side::Plus)?,
        2,
        "envelope_discriminant_plus",
        "φ₊",
    )?;
    let (ym, d2) = expect_roots(
        &phi_poly(RegimeTag::B, lambda0, env, Side::Minus)?,
        2,
        "envelope_discriminant_minus",
        "φ₋",
    )?;
    let (dp, d3) = expect_roots(
        &dphi_envelope_poly(RegimeTag::B, lambda0, env, Side::Plus)?,
        1,
        "derivative_plus_one_root",
        "(∂φ)₊",
    )?;
    let (dm, d4) = expect_roots(
        &dphi_envelope_poly(RegimeTag::B, lambda0, env, Side::Minus)?,
        1,
        "derivative_minus_one_root",
        "(∂φ)₋",
    )?;
    lad.y1_plus = Some(yp[0]);
    lad.y2_plus = Some(yp[1]);
    lad.y1_minus = Some(ym[0]);
    lad.y2_minus = Some(ym[1]);
    lad.y3_plus = Some(dp[0]);
    lad.y3_minus = Some(dm[0]);
    lad.degenerate = d1 || d2 || d3 || d4 || cross_ties(&[(yp[0], ym[0]), (yp[1], ym[1])]);
    lad.ordering_verified = verify_chain(&lad.chain());
    if dp[0] < ym[1] {
        lad.sigma = (ym[1] - dp[0]) / 2.0;
        lad.tau = yp[1];
        let m = dphi_envelope_eval(RegimeTag::B, lambda0, env, Side::Plus, ym[1] - lad.sigma)?;
        if m < 0.0 {
            lad.mu_plus = Some(-m);
        }
    }
    Ok(lad)
}

fn ladder_c1(lambda0: f64, env: &EnvelopeSet) -> Result<RootLadder> {
    if env.psi1_minus <= 0.0 {
        return Err(hypothesis("psi1_positive", "Ψ₁⁻ must be positive".into()));
    }
    if env.psi2_plus <= 0.0 {
        // No y⁻³ term anywhere: this is the single-root reduction.
        return ladder_c3(lambda0, env);
    }
    let window = env.psi1_minus * env.psi1_minus / (4.0 * env.psi2_plus);
    if !(lambda0 > 0.0 && lambda0 < window) {
        return Err(hypothesis(
            "lambda0_window",
            format!("need 0 < λ₀ < (Ψ₁⁻)²/(4Ψ₂⁺) = {window}, got λ₀ = {lambda0}"),
        ));
    }
    let mut lad = blank(RegimeTag::C1, lambda0, env);
    let (yp, d1) = expect_roots(
        &phi_poly(RegimeTag::C1, lambda0, env, Side::Plus)?,
        2,
        "lambda0_window",
        "φ₊",
    )?;
    let (ym, d2) = expect_roots(
        &phi_poly(RegimeTag::C1, lambda0, env, Side::Minus)?,
        2,
        "lambda0_window",
        "φ₋",
    )?;
    let (dm, d3) = expect_roots(
        &phi_derivative_poly(RegimeTag::C1, lambda0, env, Side::Minus)?,
        1,
        "derivative_minus_one_root",
        "∂(φ₋)",
    )?;
    lad.y1_plus = Some(yp[0]);
    lad.y2_plus = Some(yp[1]);
    lad.y1_minus = Some(ym[0]);
    lad.y2_minus = Some(ym[1]);
    lad.y3_minus = Some(dm[0]);
    lad.degenerate = d1 || d2 || d3 || cross_ties(&[(yp[0], ym[0]), (yp[1], ym[1])]);
    lad.ordering_verified = verify_chain(&lad.chain());
    if dm[0] < ym[1] {
        lad.sigma = (ym[1] - dm[0]) / 2.0;
        lad.tau = yp[1];
        let slope = dphi_envelope_eval(RegimeTag::C1, lambda0, env, Side::Plus, ym[1] - lad.sigma)?;
        if slope < 0.0 {
            lad.mu_plus = Some(slope.abs().min(lambda0));
        }
    }
    Ok(lad)
}

fn ladder_c3(lambda0: f64, env: &EnvelopeSet) -> Result<RootLadder> {
    if lambda0 <= 0.0 {
        return Err(hypothesis("lambda0_positive", format!("λ₀ = {lambda0} ≤ 0")));
    }
    if env.psi1_minus <= 0.0 {
        return Err(hypothesis("psi1_positive", "Ψ₁⁻ must be positive".into()));
    }
    let mut lad = blank(RegimeTag::C3, lambda0, env);
    let y2m = (env.psi1_minus / lambda0).sqrt();
    let y2p = (env.psi1_plus / lambda0).sqrt();
    lad.y2_minus = Some(y2m);
    lad.y2_plus = Some(y2p);
    lad.ordering_verified = y2m <= y2p;
    lad.sigma = y2m / 2.0;
    lad.tau = y2p;
    // ∂_yφ₋ = −λ₀ − Ψ₁⁻y⁻² < −λ₀ everywhere.
    lad.mu_plus = Some(lambda0);
    lad.regime = RegimeTag::C3;
    Ok(lad)
}

/// Closed-form coefficients of a resultant pencil, its cross-check against a
/// generic Sylvester determinant, and its minimum over [0, 1].
#[derive(Debug, Clone, Serialize)]
pub struct ResultantSweep {
    pub label: String,
    /// Descending coefficients in t.
    pub coeffs: Vec<f64>,
    pub min_on_unit: f64,
    pub argmin: f64,
}

fn pencil(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (1.0 - t) * x + t * y)
        .collect()
}

/// Interpolates the polynomial of degree `nodes.len() − 1` through the given
/// values (Vandermonde solve); returns descending coefficients.
fn fit_poly(nodes: &[f64], vals: &[f64]) -> Result<Vec<f64>> {
    let n = nodes.len();
    let mut vand = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (r, &t) in nodes.iter().enumerate() {
        for c in 0..n {
            vand[(r, c)] = t.powi((n - 1 - c) as i32);
        }
    }
    let rhs = nalgebra::DVector::from_column_slice(vals);
    vand.lu()
        .solve(&rhs)
        .map(|x| x.as_slice().to_vec())
        .ok_or_else(|| Error::InvalidArgument("degenerate interpolation nodes".into()))
}

fn sweep_minimum(coeffs_desc: &[f64]) -> (f64, f64) {
    let mut best = (f64::INFINITY, 0.0);
    let mut consider = |t: f64| {
        let v = eval_poly_desc(coeffs_desc, t);
        if v < best.0 {
            best = (v, t);
        }
    };
    for k in 0..=1000 {
        consider(k as f64 / 1000.0);
    }
    // Extrema of a cubic complete the certificate.
    if coeffs_desc.len() == 4 {
        let d = [3.0 * coeffs_desc[0], 2.0 * coeffs_desc[1], coeffs_desc[2]];
        let disc = d[1] * d[1] - 4.0 * d[0] * d[2];
        if disc >= 0.0 && d[0] != 0.0 {
            let s = disc.sqrt();
            for r in [(-d[1] + s) / (2.0 * d[0]), (-d[1] - s) / (2.0 * d[0])] {
                if (0.0..=1.0).contains(&r) {
                    consider(r);
                }
            }
        }
    } else if coeffs_desc.len() == 3 && coeffs_desc[0] != 0.0 {
        let r = -coeffs_desc[1] / (2.0 * coeffs_desc[0]);
        if (0.0..=1.0).contains(&r) {
            consider(r);
        }
    }
    best
}

/// Verifies the closed-form coefficients against the generic Sylvester route
/// R(t) = −Res(f, pencil)/divisor and sweeps the minimum. The divisor carries
/// the orientation: each case is normalized so that R(0) > 0 under its
/// hypotheses.
fn check_and_sweep(
    label: &str,
    f_poly: &[f64],
    pencil_from: &[f64],
    pencil_to: &[f64],
    divisor: f64,
    closed: Vec<f64>,
) -> Result<ResultantSweep> {
    let nodes: Vec<f64> = (0..closed.len())
        .map(|k| k as f64 / (closed.len() - 1).max(1) as f64)
        .collect();
    let generic: Result<Vec<f64>> = nodes
        .iter()
        .map(|&t| Ok(-sylvester_resultant(f_poly, &pencil(pencil_from, pencil_to, t))? / divisor))
        .collect();
    let fitted = fit_poly(&nodes, &generic?)?;
    let scale = closed.iter().fold(0.0f64, |m, c| m.max(c.abs())) + 1.0;
    for (c, g) in closed.iter().zip(&fitted) {
        if (c - g).abs() > 1e-8 * scale {
            return Err(Error::ResultantMismatch {
                detail: format!("{label}: closed {closed:?} vs Sylvester fit {fitted:?}"),
            });
        }
    }
    let (min_on_unit, argmin) = sweep_minimum(&closed);
    Ok(ResultantSweep {
        label: label.into(),
        coeffs: closed,
        min_on_unit,
        argmin,
    })
}

/// R₁(t) = −Res(P_φ₋, (1−t)·P_∂(φ₋) + t·P_(∂φ)₊)/Ψ₂⁺ in the Ψ₃ > 0 regime:
/// separates y₅⁺ strictly between y₃⁻ and y₂⁻.
pub fn resultant_sweep_r1(lambda0: f64, env: &EnvelopeSet) -> Result<ResultantSweep> {
    if env.psi2_is_zero() {
        return Err(Error::InvalidArgument(
            "R₁ is only defined with a nonzero Ψ₂ envelope".into(),
        ));
    }
    let e = env;
    let d3 = e.delta3();
    let disc = discriminant_cubic(e.psi3_minus, -lambda0, e.psi1_minus, -e.psi2_plus);
    let closed = vec![
        -27.0 * d3.powi(3) * e.psi2_plus * e.psi2_plus,
        18.0 * d3
            * d3
            * (4.0 * e.psi1_minus * e.psi2_plus * lambda0
                - e.psi1_minus.powi(3)
                - 9.0 * e.psi2_plus * e.psi2_plus * e.psi3_minus),
        12.0 * d3 * disc,
        8.0 * e.psi3_minus * disc,
    ];
    check_and_sweep(
        "R1",
        &phi_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
        &phi_derivative_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
        &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
        e.psi2_plus,
        closed,
    )
}

/// R₂(t) = −Res(P_φ₊, (1−t)·P_∂(φ₊) + t·P_(∂φ)₋) in the Ψ₃ > 0 regime
/// (divided by Ψ₂⁻, or by Ψ₃⁺ in the Ψ₂ ≡ 0 reduction): separates y₄⁻
/// strictly between y₂⁺ and y₁⁺.
pub fn resultant_sweep_r2(lambda0: f64, env: &EnvelopeSet) -> Result<ResultantSweep> {
    let e = env;
    let d3 = e.delta3();
    if env.psi2_is_zero() {
        let window = lambda0 * lambda0 - 4.0 * e.psi1_plus * e.psi3_plus;
        let closed = vec![
            -9.0 * d3 * d3 * e.psi1_plus,
            -6.0 * d3 * window,
            4.0 * e.psi3_plus * window,
        ];
        // The printed coefficients correspond to normalizing by the constant
        // coefficient Ψ₁⁺ of P_φ₊ in this reduction.
        return check_and_sweep(
            "R2",
            &phi_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
            &phi_derivative_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
            &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
            e.psi1_plus,
            closed,
        );
    }
    let disc = discriminant_cubic(e.psi3_plus, -lambda0, e.psi1_plus, -e.psi2_minus);
    let closed = vec![
        27.0 * d3.powi(3) * e.psi2_minus * e.psi2_minus,
        18.0 * d3
            * d3
            * (4.0 * e.psi1_plus * e.psi2_minus * lambda0
                - e.psi1_plus.powi(3)
                - 9.0 * e.psi2_minus * e.psi2_minus * e.psi3_plus),
        -12.0 * d3 * disc,
        8.0 * e.psi3_plus * disc,
    ];
    check_and_sweep(
        "R2",
        &phi_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
        &phi_derivative_poly(RegimeTag::A, lambda0, env, Side::Plus)?,
        &dphi_envelope_poly(RegimeTag::A, lambda0, env, Side::Minus)?,
        e.psi2_minus,
        closed,
    )
}

/// R₃(t) = −Res(P_φ₋, (1−t)·P_∂(φ₋) + t·P_(∂φ)₊) in the Ψ₃ < 0 regime
/// (divided by Ψ₂⁺, or by λ₀ in the Ψ₂ ≡ 0 reduction): separates y₃⁺
/// strictly between y₁⁻ and y₂⁻.
pub fn resultant_sweep_r3(lambda0: f64, env: &EnvelopeSet) -> Result<ResultantSweep> {
    let e = env;
    let d3 = e.delta3();
    if env.psi2_is_zero() {
        if !env.psi1_is_zero() {
            return Err(Error::InvalidArgument(
                "the Ψ₂ ≡ 0 reduction of R₃ requires Ψ₁ ≡ 0".into(),
            ));
        }
        let closed = vec![-3.0 * (e.psi3_plus - e.psi3_minus), 2.0 * e.psi3_plus];
        // Linear pencil of linear polynomials: P_φ₋ = −Ψ₃⁺z − λ₀ and the
        // derivative pair −3Ψ₃^±z − λ₀, divided by λ₀.
        return check_and_sweep(
            "R3",
            &[-e.psi3_plus, -lambda0],
            &[-3.0 * e.psi3_plus, -lambda0],
            &[-3.0 * e.psi3_minus, -lambda0],
            lambda0,
            closed,
        );
    }
    let disc = discriminant_cubic(-e.psi3_plus, -lambda0, -e.psi1_plus, -e.psi2_plus);
    let closed = vec![
        27.0 * d3.powi(3) * e.psi2_plus * e.psi2_plus,
        -18.0 * d3
            * d3
            * (4.0 * e.psi1_plus * e.psi2_plus * (-lambda0)
                + e.psi1_plus.powi(3)
                + 9.0 * e.psi2_plus * e.psi2_plus * e.psi3_plus),
        -12.0 * d3 * disc,
        8.0 * e.psi3_plus * disc,
    ];
    // The negative leading coefficients of this regime flip the Sylvester
    // determinant's orientation; −Ψ₂⁺ restores R₃(0) = 8Ψ₃⁺·D(P_φ₋) > 0.
    check_and_sweep(
        "R3",
        &phi_poly(RegimeTag::B, lambda0, env, Side::Minus)?,
        &phi_derivative_poly(RegimeTag::B, lambda0, env, Side::Minus)?,
        &dphi_envelope_poly(RegimeTag::B, lambda0, env, Side::Plus)?,
        -e.psi2_plus,
        closed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn collapsed_a() -> EnvelopeSet {
        EnvelopeSet::collapsed(3.5, 1.0, 1.0)
    }

    #[test]
    fn ladder_regime_a_collapsed() {
        let lad = root_ladder(RegimeTag::A, 3.5, &collapsed_a()).unwrap();
        let s = 0.5f64.sqrt();
        assert!((lad.y3_minus.unwrap() - s).abs() < 1e-10);
        assert!((lad.y2_minus.unwrap() - 1.0).abs() < 1e-10);
        assert!((lad.y1_minus.unwrap() - 2f64.sqrt()).abs() < 1e-10);
        assert!((lad.y3_plus.unwrap() - lad.y3_minus.unwrap()).abs() < 1e-10);
        assert!((lad.y2_plus.unwrap() - lad.y2_minus.unwrap()).abs() < 1e-10);
        assert!((lad.y1_plus.unwrap() - lad.y1_minus.unwrap()).abs() < 1e-10);
        // Derivative envelopes: 3z³ − 3.5z² − 3.5z + 3 = (z+1)(3z² − 6.5z + 3),
        // positive roots z = 2/3 and 3/2.
        assert!((lad.y5_plus.unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-10);
        assert!((lad.y4_plus.unwrap() - 1.5f64.sqrt()).abs() < 1e-10);
        // Collapsed ladders tie y_k⁺ = y_k⁻: degenerate, strict chain fails,
        // but μ⁺ is still available through the explicit band.
        assert!(lad.degenerate);
        assert!(!lad.ordering_verified);
        let mu = lad.mu_plus.expect("band exists even when collapsed");
        assert!((0.5..0.8).contains(&mu), "μ⁺ = {mu}");
    }

    #[test]
    fn ladder_regime_a_with_spread() {
        let env = EnvelopeSet {
            psi1_minus: 3.45,
            psi1_plus: 3.55,
            psi2_minus: 0.99,
            psi2_plus: 1.01,
            psi3_minus: 0.99,
            psi3_plus: 1.01,
        };
        let lad = root_ladder(RegimeTag::A, 3.5, &env).unwrap();
        assert!(lad.ordering_verified, "chain: {:?}", lad.chain());
        let mu = lad.mu_plus.expect("rate bound");
        assert!(mu > 0.0 && mu < 1.0, "μ⁺ = {mu}");
        assert!(!lad.degenerate);
    }

    #[test]
    fn ladder_regime_a_failure_names_discriminant() {
        // λ₀ far outside the admissible window: envelope cubic loses roots.
        let err = root_ladder(RegimeTag::A, 30.0, &collapsed_a()).unwrap_err();
        match err {
            Error::Hypothesis { check, .. } => {
                assert!(check.starts_with("envelope_discriminant"), "{check}");
            }
            other => panic!("unexpected error {other}"),
        }
        let err = root_ladder(RegimeTag::A, -1.0, &collapsed_a()).unwrap_err();
        match err {
            Error::Hypothesis { check, .. } => assert_eq!(check, "lambda0_positive"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn ladder_regime_b() {
        // Collapsed |Ψ| = (2.75, 1, 1) at λ₀ = −7: roots of −z³ + 7z² − 2.75z − 1.
        let env = EnvelopeSet::collapsed(2.75, 1.0, 1.0);
        let lad = root_ladder(RegimeTag::B, -7.0, &env).unwrap();
        let y1 = lad.y1_minus.unwrap();
        let y2 = lad.y2_minus.unwrap();
        assert!(y1 < y2);
        // Cross-check against the cubic solved directly.
        let roots = crate::cubic::roots_cubic(-1.0, 7.0, -2.75, -1.0).unwrap();
        let pos: Vec<f64> = roots.real_roots.iter().filter(|&&z| z > 0.0).map(|z| z.sqrt()).collect();
        assert!((y1 - pos[0]).abs() < 1e-10);
        assert!((y2 - pos[1]).abs() < 1e-10);

        let spread = EnvelopeSet {
            psi1_minus: 2.7,
            psi1_plus: 2.8,
            psi2_minus: 0.99,
            psi2_plus: 1.01,
            psi3_minus: 0.98,
            psi3_plus: 1.02,
        };
        let lad = root_ladder(RegimeTag::B, -7.0, &spread).unwrap();
        assert!(lad.ordering_verified, "chain: {:?}", lad.chain());
        assert!(lad.mu_plus.unwrap() > 0.0);
    }

    #[test]
    fn ladder_regime_c1_closed_form() {
        // β = −1, Ψ₁ = 2, Ψ₂ = 0.5 → y₂ = ((2 + √2)/2)^{1/2}.
        let env = EnvelopeSet::collapsed(2.0, 0.5, 0.0);
        let lad = root_ladder(RegimeTag::C1, 1.0, &env).unwrap();
        let expect = ((2.0 + 2f64.sqrt()) / 2.0).sqrt();
        assert!((lad.y2_minus.unwrap() - expect).abs() < 1e-10);
        assert!((lad.y2_plus.unwrap() - expect).abs() < 1e-10);
        // μ⁺ = min{|∂φ₋(y₂⁻ − σ)|, λ₀} = λ₀ here.
        assert!((lad.mu_plus.unwrap() - 1.0).abs() < 1e-9);

        let err = root_ladder(RegimeTag::C1, 2.5, &env).unwrap_err();
        match err {
            Error::Hypothesis { check, .. } => assert_eq!(check, "lambda0_window"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn ladder_regime_c3_closed_form() {
        let env = EnvelopeSet::collapsed(4.0, 0.0, 0.0);
        let lad = root_ladder(RegimeTag::C3, 1.0, &env).unwrap();
        assert!((lad.y2_minus.unwrap() - 2.0).abs() < 1e-12);
        assert!((lad.y2_plus.unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(lad.mu_plus, Some(1.0));
    }

    #[test]
    fn r3_linear_case_matches_printed_form() {
        let env = EnvelopeSet {
            psi1_minus: 0.0,
            psi1_plus: 0.0,
            psi2_minus: 0.0,
            psi2_plus: 0.0,
            psi3_minus: 0.5,
            psi3_plus: 1.0,
        };
        let sweep = resultant_sweep_r3(-2.0, &env).unwrap();
        assert_eq!(sweep.coeffs.len(), 2);
        assert!((sweep.coeffs[0] + 1.5).abs() < 1e-12);
        assert!((sweep.coeffs[1] - 2.0).abs() < 1e-12);
        assert!((sweep.min_on_unit - 0.5).abs() < 1e-12);
        assert!((sweep.argmin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn r1_collapsed_envelope_reduces_to_discriminant_term() {
        let env = collapsed_a();
        let sweep = resultant_sweep_r1(3.5, &env).unwrap();
        // δ₃ = 0: only the constant term 8Ψ₃⁻·D(P_φ₋) survives.
        assert!(sweep.coeffs[0].abs() < 1e-12);
        assert!(sweep.coeffs[1].abs() < 1e-12);
        assert!(sweep.coeffs[2].abs() < 1e-12);
        let d = discriminant_cubic(1.0, -3.5, 3.5, -1.0);
        assert!((sweep.coeffs[3] - 8.0 * d).abs() < 1e-10);
        assert!((sweep.min_on_unit - 8.0 * d).abs() < 1e-10);
    }

    #[test]
    fn resultant_closed_forms_match_sylvester_on_random_instances() {
        let mut rng = oracle::seeded_rng(31);
        let mut done_a = 0;
        let mut done_b = 0;
        while done_a < 200 || done_b < 200 {
            let base1 = oracle::uniform(&mut rng, 2.0, 5.0);
            let base2 = oracle::uniform(&mut rng, 0.5, 1.5);
            let base3 = oracle::uniform(&mut rng, 0.5, 1.5);
            let spread = oracle::uniform(&mut rng, 0.0, 0.08);
            let env = EnvelopeSet {
                psi1_minus: base1 * (1.0 - spread),
                psi1_plus: base1 * (1.0 + spread),
                psi2_minus: base2 * (1.0 - spread),
                psi2_plus: base2 * (1.0 + spread),
                psi3_minus: base3 * (1.0 - spread),
                psi3_plus: base3 * (1.0 + spread),
            };
            if done_a < 200 {
                // Any admissible λ₀ works for the transcription check itself.
                let lam = oracle::uniform(&mut rng, 0.5, 5.0);
                assert!(resultant_sweep_r1(lam, &env).is_ok());
                assert!(resultant_sweep_r2(lam, &env).is_ok());
                done_a += 1;
            }
            if done_b < 200 {
                let lam = -oracle::uniform(&mut rng, 4.0, 10.0);
                assert!(resultant_sweep_r3(lam, &env).is_ok());
                done_b += 1;
            }
        }
    }

    #[test]
    fn r2_quadratic_reduction_matches_sylvester() {
        let env = EnvelopeSet {
            psi1_minus: 1.8,
            psi1_plus: 2.2,
            psi2_minus: 0.0,
            psi2_plus: 0.0,
            psi3_minus: 0.9,
            psi3_plus: 1.1,
        };
        let sweep = resultant_sweep_r2(4.0, &env).unwrap();
        assert_eq!(sweep.coeffs.len(), 3);
        // a₂ = 4Ψ₃⁺(λ₀² − 4Ψ₁⁺Ψ₃⁺)
        let expect = 4.0 * 1.1 * (16.0 - 4.0 * 2.2 * 1.1);
        assert!((sweep.coeffs[2] - expect).abs() < 1e-9);
    }

    #[test]
    fn monotonicity_increasing_psi2_plus_decreases_y2_minus() {
        let mut rng = oracle::seeded_rng(37);
        for _ in 0..20 {
            let base1 = oracle::uniform(&mut rng, 3.0, 4.0);
            let base2 = oracle::uniform(&mut rng, 0.8, 1.2);
            let env = EnvelopeSet {
                psi1_minus: base1 * 0.98,
                psi1_plus: base1 * 1.02,
                psi2_minus: base2 * 0.98,
                psi2_plus: base2 * 1.02,
                psi3_minus: 0.98,
                psi3_plus: 1.02,
            };
            let Ok(lad) = root_ladder(RegimeTag::A, 3.5, &env) else {
                continue;
            };
            if !lad.ordering_verified {
                continue;
            }
            let mut bumped = env;
            bumped.psi2_plus *= 1.02;
            let Ok(lad2) = root_ladder(RegimeTag::A, 3.5, &bumped) else {
                continue;
            };
            assert!(
                lad2.y2_minus.unwrap() < lad.y2_minus.unwrap(),
                "y₂⁻ must strictly decrease when Ψ₂⁺ grows"
            );
        }
    }
}
