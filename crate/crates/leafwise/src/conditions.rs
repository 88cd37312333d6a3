//! Hypothesis checkers: every inequality a theorem attaches to its regime,
//! evaluated with explicit numeric margins, plus the admissible interval of
//! the constant curvature target Φ where the theorem provides one.
//!
//! Check names are stable identifiers used by reports and tests; `margin` is
//! signed so that a positive margin means the check passes with that much
//! room.

use serde::{Deserialize, Serialize};

use crate::envelope::{envelope_coefficients, EnvelopeSet};
use crate::error::{Error, Result};
use crate::grid::ScalarField;
use crate::spectral::SpectralResult;

/// The uniqueness threshold K₂ is printed with an ambiguous grouping of the
/// Ψ₃ factors; both readings are implemented and the report records which
/// one was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum K2Grouping {
    /// 27ψ₃⁺(ψ₂⁺)²(ψ₃⁺)² + 3(ψ₃⁻)² + (ψ₁⁺)³(ψ₃⁺+3ψ₃⁻)², exactly as printed.
    #[default]
    AsPrinted,
    /// 27ψ₃⁺(ψ₂⁺)²((ψ₃⁺)² + 3(ψ₃⁻)²) + (ψ₁⁺)³(ψ₃⁺+3ψ₃⁻)².
    Factored,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct CheckConfig {
    #[serde(default)]
    pub k2_grouping: K2Grouping,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub margin: f64,
}

/// Pass/fail record for one theorem case. `phi_interval` is the admissible
/// window for a constant Φ (a `null` endpoint means unbounded on that side);
/// it is absent when the hypotheses fail or the theorem fixes no window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub theorem: String,
    pub case: String,
    pub checks: Vec<Check>,
    pub phi_interval: Option<(Option<f64>, Option<f64>)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Scalar reductions of the geometry inputs consumed by the pseudo-Riemannian
/// window theorem.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GeometryScalars {
    pub n: usize,
    pub h_top_sq_min: f64,
    pub t_bot_sq_max: f64,
}

/// Everything the checkers consume, reduced to scalars.
#[derive(Debug, Clone)]
pub struct TheoremInputs {
    pub lambda0: f64,
    pub delta_e0: f64,
    /// Extrema of the signed coefficient fields.
    pub psi1_min: f64,
    pub psi1_max: f64,
    pub psi2_min: f64,
    pub psi2_max: f64,
    pub psi3_min: f64,
    pub psi3_max: f64,
    /// Extrema of |Ψᵢ| (the ψᵢ± of the Maclaurin thresholds).
    pub psi_abs_min: [f64; 3],
    pub psi_abs_max: [f64; 3],
    pub beta_top_min: f64,
    pub beta_top_max: f64,
    /// δ(|Ψ₃|) when |Ψ₃| is bounded away from zero.
    pub delta_psi3_abs: Option<f64>,
    /// Ground-state-weighted envelope extrema.
    pub envelopes: EnvelopeSet,
    pub geometry: Option<GeometryScalars>,
}

impl TheoremInputs {
    pub fn from_fields(
        beta_top: &ScalarField,
        psi1: &ScalarField,
        psi2: &ScalarField,
        psi3: &ScalarField,
        spectral: &SpectralResult,
        geometry: Option<GeometryScalars>,
    ) -> Result<Self> {
        let envelopes = envelope_coefficients(psi1, psi2, psi3, &spectral.ground_state)?;
        let abs_ext = |f: &ScalarField| -> Result<(f64, f64)> { Ok(f.map(f64::abs)?.min_max()) };
        let (a1m, a1p) = abs_ext(psi1)?;
        let (a2m, a2p) = abs_ext(psi2)?;
        let (a3m, a3p) = abs_ext(psi3)?;
        let (p1min, p1max) = psi1.min_max();
        let (p2min, p2max) = psi2.min_max();
        let (p3min, p3max) = psi3.min_max();
        let (bmin, bmax) = beta_top.min_max();
        let delta_psi3_abs = if a3m > 0.0 { Some(a3m / a3p) } else { None };
        Ok(Self {
            lambda0: spectral.lambda0,
            delta_e0: spectral.delta_e0,
            psi1_min: p1min,
            psi1_max: p1max,
            psi2_min: p2min,
            psi2_max: p2max,
            psi3_min: p3min,
            psi3_max: p3max,
            psi_abs_min: [a1m, a2m, a3m],
            psi_abs_max: [a1p, a2p, a3p],
            beta_top_min: bmin,
            beta_top_max: bmax,
            delta_psi3_abs,
            envelopes,
            geometry,
        })
    }
}

fn lt(name: &str, lhs: f64, rhs: f64) -> Check {
    Check {
        name: name.into(),
        lhs,
        rhs,
        pass: lhs < rhs,
        margin: rhs - lhs,
    }
}

fn gt(name: &str, lhs: f64, rhs: f64) -> Check {
    Check {
        name: name.into(),
        lhs,
        rhs,
        pass: lhs > rhs,
        margin: lhs - rhs,
    }
}

fn value_check(name: &str, value: f64) -> Check {
    Check {
        name: name.into(),
        lhs: value,
        rhs: 0.0,
        pass: value.is_finite() && value >= 0.0,
        margin: value,
    }
}

/// K₁ = ψ₃⁺·max{18ψ₁⁺ψ₂⁺, 4(ψ₁⁺)³ + 27(ψ₂⁺)²ψ₃⁺}/(4ψ₂⁻) from |Ψᵢ| extrema.
pub fn k1_threshold(inputs: &TheoremInputs) -> f64 {
    let [p1p, p2p, p3p] = inputs.psi_abs_max;
    let p2m = inputs.psi_abs_min[1];
    p3p * (18.0 * p1p * p2p).max(4.0 * p1p.powi(3) + 27.0 * p2p * p2p * p3p) / (4.0 * p2m)
}

/// K̄ of the Ψ₃ < 0 existence bound λ₀ < −K̄, from envelope extrema.
pub fn maclaurin_kbar(env: &EnvelopeSet) -> f64 {
    1.0 + ((18.0 * env.psi1_plus * env.psi2_plus)
        .max(4.0 * env.psi1_plus.powi(3) + 27.0 * env.psi2_plus * env.psi2_plus * env.psi3_plus)
        * env.psi3_plus
        / (4.0 * env.psi2_minus))
        .sqrt()
}

/// K of the Ψ₃ < 0 uniqueness bound −λ₀ > 1 + √K, from envelope extrema.
pub fn uniqueness_k(env: &EnvelopeSet) -> f64 {
    let e = env;
    let num = (36.0 * e.psi1_plus * e.psi2_plus * e.psi3_minus * (e.psi3_minus + e.psi3_plus))
        .max(
            27.0 * e.psi3_plus
                * e.psi2_plus
                * e.psi2_plus
                * (e.psi3_plus * e.psi3_plus + 3.0 * e.psi3_minus * e.psi3_minus)
                + e.psi1_plus.powi(3) * (e.psi3_plus + 3.0 * e.psi3_minus).powi(2),
        );
    num / (8.0 * e.psi2_plus * (3.0 * e.psi3_minus - e.psi3_plus))
}

/// K₂ of the closed-manifold uniqueness bound, from |Ψᵢ| extrema, in the
/// grouping selected by the config.
pub fn k2_threshold(inputs: &TheoremInputs, grouping: K2Grouping) -> f64 {
    let [p1p, p2p, p3p] = inputs.psi_abs_max;
    let p3m = inputs.psi_abs_min[2];
    let first = 36.0 * p1p * p2p * p3m * (p3m + p3p);
    let second = match grouping {
        K2Grouping::AsPrinted => {
            27.0 * p3p * p2p * p2p * p3p * p3p
                + 3.0 * p3m * p3m
                + p1p.powi(3) * (p3p + 3.0 * p3m).powi(2)
        }
        K2Grouping::Factored => {
            27.0 * p3p * p2p * p2p * (p3p * p3p + 3.0 * p3m * p3m)
                + p1p.powi(3) * (p3p + 3.0 * p3m).powi(2)
        }
    };
    first.max(second) / (8.0 * p2p * (3.0 * p3m - p3p))
}

/// The two depressed-cubic bound quantities of the amplitude-gap condition:
/// returns (μ₁⁻, μ₂⁺).
pub fn depressed_mu_bounds(env: &EnvelopeSet) -> Result<(f64, f64)> {
    let e = env;
    let z_plus = e.psi3_plus * e.psi2_plus * e.psi2_plus / e.psi1_minus.powi(3);
    let z_minus = e.psi3_minus * e.psi2_minus * e.psi2_minus / e.psi1_plus.powi(3);
    let phi_plus = crate::cubic::c_of_z(z_plus)?.acos() / 3.0;
    let _phi_minus = crate::cubic::c_of_z(z_minus)?.acos() / 3.0;
    let p_plus = -e.psi1_minus
        * (e.psi1_minus.powi(3) + 216.0 * e.psi2_minus * e.psi2_minus * e.psi3_minus)
        / (48.0 * e.psi2_plus * e.psi2_plus);
    let p_minus = -e.psi1_plus
        * (e.psi1_plus.powi(3) + 216.0 * e.psi2_plus * e.psi2_plus * e.psi3_plus)
        / (48.0 * e.psi2_minus * e.psi2_minus);
    let amp_plus = 2.0 * (-p_minus / 3.0).sqrt();
    let amp_minus = 2.0 * (-p_plus / 3.0).sqrt();
    let mu1_minus = amp_minus * phi_plus.cos();
    let c2 = (phi_plus - 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let mu2_plus = if c2 > 0.0 { amp_plus * c2 } else { amp_minus * c2 };
    Ok((mu1_minus, mu2_plus))
}

fn attractor_a_checks(inputs: &TheoremInputs) -> Result<Vec<Check>> {
    let e = &inputs.envelopes;
    let lam = inputs.lambda0;
    let mut checks = vec![
        gt("lambda0_positive", lam, 0.0),
        gt(
            "envelope_cubic_margin",
            e.psi1_minus.powi(3),
            27.0 * e.psi2_plus * e.psi2_plus * e.psi3_plus,
        ),
        gt("psi3_spread_third", 3.0 * e.psi3_minus, e.psi3_plus),
    ];
    // δ₃² against the resultant-positivity bound.
    let d3 = e.delta3();
    let disc_minus =
        crate::cubic::discriminant_cubic(e.psi3_minus, -lam, e.psi1_minus, -e.psi2_plus);
    let disc_plus = crate::cubic::discriminant_cubic(e.psi3_plus, -lam, e.psi1_plus, -e.psi2_minus);
    let second = 8.0 * e.psi3_minus * disc_minus
        / (27.0 * e.psi2_plus * e.psi2_plus
            + 18.0
                * (4.0 * e.psi1_minus * e.psi2_plus * lam
                    + e.psi1_minus.powi(3)
                    + 9.0 * e.psi2_plus * e.psi2_plus * e.psi3_minus));
    let third = (3.0 * e.psi3_minus - e.psi3_plus) * disc_plus
        / (9.0
            * (4.0 * e.psi1_plus * e.psi2_minus * lam
                + e.psi1_plus.powi(3)
                + 9.0 * e.psi2_minus * e.psi2_minus * e.psi3_plus));
    let bound = 1.0f64.min(second).min(third);
    checks.push(Check {
        name: "delta3_resultant_bound".into(),
        lhs: d3 * d3,
        rhs: bound,
        pass: d3 * d3 <= bound,
        margin: bound - d3 * d3,
    });
    let (mu1_minus, mu2_plus) = depressed_mu_bounds(e)?;
    let lhs = e.psi1_plus * e.psi1_plus / (12.0 * e.psi2_minus)
        - e.psi1_minus * e.psi1_minus / (12.0 * e.psi2_plus);
    checks.push(lt("depressed_amplitude_gap", lhs, mu1_minus - mu2_plus));
    Ok(checks)
}

fn attractor_b_checks(inputs: &TheoremInputs) -> Vec<Check> {
    let e = &inputs.envelopes;
    let kbar = maclaurin_kbar(e);
    let k = uniqueness_k(e);
    vec![
        lt("lambda0_below_maclaurin", inputs.lambda0, -kbar),
        gt("psi3_spread_third", 3.0 * e.psi3_minus, e.psi3_plus),
        gt(
            "lambda0_uniqueness_maclaurin",
            -inputs.lambda0,
            1.0 + k.max(0.0).sqrt(),
        ),
    ]
}

fn attractor_c1_checks(inputs: &TheoremInputs) -> Vec<Check> {
    let e = &inputs.envelopes;
    let window = e.psi1_minus * e.psi1_minus / (4.0 * e.psi2_plus);
    let lam = inputs.lambda0;
    vec![Check {
        name: "lambda0_window".into(),
        lhs: lam,
        rhs: window,
        pass: lam > 0.0 && lam < window,
        margin: lam.min(window - lam),
    }]
}

fn sign_check(name: &str, lo: f64, hi: f64, want_positive: bool) -> Check {
    if want_positive {
        gt(name, lo, 0.0)
    } else {
        lt(name, hi, 0.0)
    }
}

fn zero_check(name: &str, lo: f64, hi: f64) -> Check {
    let sup = lo.abs().max(hi.abs());
    Check {
        name: name.into(),
        lhs: sup,
        rhs: 0.0,
        pass: sup == 0.0,
        margin: -sup,
    }
}

/// Evaluates the hypotheses of one theorem case and derives its admissible
/// Φ-window.
///
/// Theorem ids: `attractor_a`, `attractor_b`, `attractor_c1` (the PDE
/// attractor results per sign regime), `leaf_existence_a/b/c` (prescription
/// along one compact leaf), `bundle_uniqueness_b/c` (closed fibred manifold),
/// `geometry_window` (the pseudo-Riemannian case driven by curvature
/// scalars).
pub fn check_conditions(
    theorem: &str,
    inputs: &TheoremInputs,
    cfg: &CheckConfig,
) -> Result<ConditionReport> {
    let delta = inputs.delta_e0;
    let mut notes = Vec::new();
    let (case, checks, phi_interval): (&str, Vec<Check>, Option<(Option<f64>, Option<f64>)>) =
        match theorem {
            "attractor_a" => ("psi3_positive", attractor_a_checks(inputs)?, None),
            "attractor_b" => ("psi3_negative", attractor_b_checks(inputs), None),
            "attractor_c1" => ("psi3_zero", attractor_c1_checks(inputs), None),
            "leaf_existence_a" => {
                let lhs = 27.0 * inputs.psi_abs_max[1] * inputs.psi_abs_max[1]
                    * inputs.psi_abs_max[2]
                    / inputs.psi_abs_min[0].powi(3);
                let checks = vec![
                    sign_check("sign_psi3_positive", inputs.psi3_min, inputs.psi3_max, true),
                    sign_check("sign_psi1_positive", inputs.psi1_min, inputs.psi1_max, true),
                    lt("cubic_balance_delta8", lhs, delta.powi(8)),
                ];
                let ok = checks.iter().all(|c| c.pass);
                let interval = ok.then_some((None, Some(-inputs.beta_top_max)));
                ("psi3_positive", checks, interval)
            }
            "leaf_existence_b" => {
                let k1 = k1_threshold(inputs);
                let checks = vec![
                    sign_check("sign_psi3_negative", inputs.psi3_min, inputs.psi3_max, false),
                    sign_check("sign_psi1_negative", inputs.psi1_min, inputs.psi1_max, false),
                    value_check("k1_value", k1),
                ];
                let ok = checks.iter().all(|c| c.pass);
                let lower = -inputs.beta_top_min + 1.0 + delta.powi(-4) * k1.sqrt();
                let interval = ok.then_some((Some(lower), None));
                ("psi3_negative", checks, interval)
            }
            "leaf_existence_c" => {
                let checks = vec![
                    zero_check("sign_psi3_zero", inputs.psi3_min, inputs.psi3_max),
                    sign_check("sign_psi1_positive", inputs.psi1_min, inputs.psi1_max, true),
                    gt("sign_psi2_positive", inputs.psi2_min, 0.0),
                ];
                let ok = checks.iter().all(|c| c.pass);
                let width =
                    delta.powi(4) * inputs.psi1_min * inputs.psi1_min / (4.0 * inputs.psi2_max);
                let interval = ok.then_some((
                    Some(-inputs.beta_top_min - width),
                    Some(-inputs.beta_top_max),
                ));
                ("psi3_zero", checks, interval)
            }
            "bundle_uniqueness_b" => {
                let d3 = inputs.delta_psi3_abs.unwrap_or(0.0);
                let k2 = k2_threshold(inputs, cfg.k2_grouping);
                notes.push(format!("k2_grouping: {:?}", cfg.k2_grouping));
                let checks = vec![
                    sign_check("sign_psi3_negative", inputs.psi3_min, inputs.psi3_max, false),
                    sign_check("sign_psi1_negative", inputs.psi1_min, inputs.psi1_max, false),
                    gt("psi3_delta_third", d3 * delta * delta, 1.0 / 3.0),
                    value_check("k2_value", k2),
                ];
                let ok = checks.iter().all(|c| c.pass);
                let lower = 1.0 - inputs.beta_top_min + delta.powi(-4) * k2.max(0.0).sqrt();
                let interval = ok.then_some((Some(lower), None));
                ("psi3_negative", checks, interval)
            }
            "bundle_uniqueness_c" => {
                let checks = vec![
                    zero_check("sign_psi3_zero", inputs.psi3_min, inputs.psi3_max),
                    sign_check("sign_psi1_positive", inputs.psi1_min, inputs.psi1_max, true),
                    gt("sign_psi2_positive", inputs.psi2_min, 0.0),
                ];
                let ok = checks.iter().all(|c| c.pass);
                let width =
                    delta.powi(4) * inputs.psi1_min * inputs.psi1_min / (4.0 * inputs.psi2_max);
                let interval = ok.then_some((
                    Some(-inputs.beta_top_min - width),
                    Some(-inputs.beta_top_max),
                ));
                ("psi3_zero", checks, interval)
            }
            "geometry_window" => {
                let geom = inputs.geometry.ok_or_else(|| {
                    Error::InvalidArgument("geometry scalars required for this theorem".into())
                })?;
                let width = delta.powi(4) * geom.h_top_sq_min * geom.h_top_sq_min
                    / (4.0 * geom.n as f64 * geom.t_bot_sq_max);
                let checks = vec![
                    gt("t_bot_sq_nonzero", geom.t_bot_sq_max, 0.0),
                    gt("h_top_sq_nonzero", geom.h_top_sq_min, 0.0),
                    value_check("geometry_width", width),
                ];
                let ok = checks.iter().all(|c| c.pass);
                let interval = ok.then_some((
                    Some(-inputs.beta_top_min - width),
                    Some(-inputs.beta_top_max),
                ));
                ("psi3_zero", checks, interval)
            }
            other => return Err(Error::UnknownTheorem(other.into())),
        };
    Ok(ConditionReport {
        theorem: theorem.into(),
        case: case.into(),
        checks,
        phi_interval,
        notes,
    })
}

pub const THEOREM_IDS: &[&str] = &[
    "attractor_a",
    "attractor_b",
    "attractor_c1",
    "leaf_existence_a",
    "leaf_existence_b",
    "leaf_existence_c",
    "bundle_uniqueness_b",
    "bundle_uniqueness_c",
    "geometry_window",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::EnvelopeSet;

    fn inputs_constant(
        lambda0: f64,
        psi1: f64,
        psi2: f64,
        psi3: f64,
        beta_top: f64,
    ) -> TheoremInputs {
        TheoremInputs {
            lambda0,
            delta_e0: 1.0,
            psi1_min: psi1,
            psi1_max: psi1,
            psi2_min: psi2,
            psi2_max: psi2,
            psi3_min: psi3,
            psi3_max: psi3,
            psi_abs_min: [psi1.abs(), psi2.abs(), psi3.abs()],
            psi_abs_max: [psi1.abs(), psi2.abs(), psi3.abs()],
            beta_top_min: beta_top,
            beta_top_max: beta_top,
            delta_psi3_abs: (psi3 != 0.0).then_some(1.0),
            envelopes: EnvelopeSet::collapsed(psi1, psi2, psi3),
            geometry: None,
        }
    }

    #[test]
    fn cubic_balance_example() {
        let inputs = inputs_constant(3.5, 3.5, 1.0, 1.0, -3.5);
        let report =
            check_conditions("leaf_existence_a", &inputs, &CheckConfig::default()).unwrap();
        let c = report.check("cubic_balance_delta8").unwrap();
        assert!((c.lhs - 27.0 / 42.875).abs() < 1e-12);
        assert!(c.pass);
        assert!(report.all_pass());
        // Φ < −β⊤ = 3.5, unbounded below.
        let (lo, hi) = report.phi_interval.unwrap();
        assert!(lo.is_none());
        assert!((hi.unwrap() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn psi3_delta_third_example() {
        let mut inputs = inputs_constant(-7.0, -2.75, 1.0, -1.0, 7.0);
        inputs.delta_psi3_abs = Some(0.5);
        let report =
            check_conditions("bundle_uniqueness_b", &inputs, &CheckConfig::default()).unwrap();
        let c = report.check("psi3_delta_third").unwrap();
        assert!((c.lhs - 0.5).abs() < 1e-12);
        assert!(c.pass);
        inputs.delta_psi3_abs = Some(0.3);
        let report =
            check_conditions("bundle_uniqueness_b", &inputs, &CheckConfig::default()).unwrap();
        assert!(!report.check("psi3_delta_third").unwrap().pass);
        assert_eq!(report.failing(), vec!["psi3_delta_third"]);
        assert!(report.phi_interval.is_none());
    }

    #[test]
    fn geometry_window_example() {
        // n = 1, ⟨h⊤,h⊤⟩ ≡ 2, ⟨T⊥,T⊥⟩ ≡ 1, δ(e₀) = 1, β⊤ = −1:
        // width = 4/(4·1·1) = 1, interval (0, 1).
        let mut inputs = inputs_constant(1.0, 2.0, 1.0, 0.0, -1.0);
        inputs.geometry = Some(GeometryScalars {
            n: 1,
            h_top_sq_min: 2.0,
            t_bot_sq_max: 1.0,
        });
        let report = check_conditions("geometry_window", &inputs, &CheckConfig::default()).unwrap();
        assert!(report.all_pass());
        let (lo, hi) = report.phi_interval.unwrap();
        assert!((lo.unwrap() - 0.0).abs() < 1e-12);
        assert!((hi.unwrap() - 1.0).abs() < 1e-12);
        let w = report.check("geometry_width").unwrap();
        assert!((w.lhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_thresholds_on_constant_instance() {
        let inputs = inputs_constant(-7.0, -2.75, 1.0, -1.0, 7.0);
        assert!((k1_threshold(&inputs) - 27.546875).abs() < 1e-12);
        assert!((maclaurin_kbar(&inputs.envelopes) - (1.0 + 27.546875f64.sqrt())).abs() < 1e-12);
        assert!((uniqueness_k(&inputs.envelopes) - 27.546875).abs() < 1e-12);
        assert!((k2_threshold(&inputs, K2Grouping::AsPrinted) - 362.75 / 16.0).abs() < 1e-12);
        assert!((k2_threshold(&inputs, K2Grouping::Factored) - 440.75 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn attractor_b_checks_pass_at_deep_lambda() {
        let inputs = inputs_constant(-7.0, -2.75, 1.0, -1.0, 7.0);
        let report = check_conditions("attractor_b", &inputs, &CheckConfig::default()).unwrap();
        assert!(report.all_pass(), "failing: {:?}", report.failing());
        // At λ₀ = −4.75 the Maclaurin threshold −6.2485 is not met.
        let shallow = inputs_constant(-4.75, -2.75, 1.0, -1.0, 4.75);
        let report = check_conditions("attractor_b", &shallow, &CheckConfig::default()).unwrap();
        assert!(!report.check("lambda0_below_maclaurin").unwrap().pass);
    }

    #[test]
    fn attractor_a_checks_on_collapsed_instance() {
        let inputs = inputs_constant(3.5, 3.5, 1.0, 1.0, -3.5);
        let report = check_conditions("attractor_a", &inputs, &CheckConfig::default()).unwrap();
        assert!(report.all_pass(), "failing: {:?}", report.failing());
        let c = report.check("envelope_cubic_margin").unwrap();
        assert!((c.lhs - 42.875).abs() < 1e-12);
        assert!((c.rhs - 27.0).abs() < 1e-12);
        // Collapsed envelopes: the amplitude gap has lhs 0 and positive rhs.
        let gap = report.check("depressed_amplitude_gap").unwrap();
        assert!(gap.lhs.abs() < 1e-12);
        assert!(gap.rhs > 0.0);
    }

    #[test]
    fn attractor_c1_window() {
        let inputs = inputs_constant(1.0, 2.0, 0.5, 0.0, -1.0);
        let report = check_conditions("attractor_c1", &inputs, &CheckConfig::default()).unwrap();
        let w = report.check("lambda0_window").unwrap();
        assert!(w.pass);
        assert!((w.rhs - 2.0).abs() < 1e-12);
        let bad = inputs_constant(2.5, 2.0, 0.5, 0.0, -2.5);
        let report = check_conditions("attractor_c1", &bad, &CheckConfig::default()).unwrap();
        assert!(!report.all_pass());
    }

    #[test]
    fn unknown_theorem_is_an_error() {
        let inputs = inputs_constant(1.0, 1.0, 1.0, 0.0, -1.0);
        assert!(matches!(
            check_conditions("nonsense", &inputs, &CheckConfig::default()),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn violating_exactly_one_hypothesis_is_named() {
        // Regime A with the cubic-balance margin broken by inflating Ψ₂.
        let mut inputs = inputs_constant(3.5, 3.5, 1.0, 1.0, -3.5);
        inputs.psi_abs_max[1] = 2.0;
        inputs.psi_abs_min[1] = 2.0;
        let report =
            check_conditions("leaf_existence_a", &inputs, &CheckConfig::default()).unwrap();
        assert_eq!(report.failing(), vec!["cubic_balance_delta8"]);
    }
}
