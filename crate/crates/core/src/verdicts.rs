//! Theorem-level decisions built on the invariants.
//!
//! Each verdict lists the hypotheses it needs together with their truth
//! values. When any of them fails the conclusion is
//! [`Conclusion::Undetermined`]; nothing is claimed outside the hypotheses.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bundle::{bridge_membership, ci_class, classify, BridgeMembership, BundleOverCurve, HnBlock, Region};
use crate::error::{Error, Result};
use crate::exact::{rat, Rat, Sign, UniPoly};
use crate::invariants::{self, alpha, e_margin, kf_top, kf_top_balanced, slope_margin, PositivityReport, RelativeCI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    SmallH,
    Asymptotic,
    Slope,
    ConeMembership,
    Instability,
    ExampleFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Conclusion {
    FPositiveAllSmallH,
    NotFPositiveSmallH,
    StrictlyFPositiveEventually,
    NotFPositiveEventually,
    /// `α = 0`: the top coefficient vanishes and no eventual sign is claimed.
    Boundary,
    SlopeHolds,
    SlopeFails,
    Cone { region: Region },
    Bridge { membership: BridgeMembership },
    /// Fibres are Chow unstable for `h < min k_i` and for `h ≫ 0`;
    /// `dualizing` also with respect to the dualizing sheaf.
    ChowUnstable { small_h: bool, large_h: bool, dualizing: bool },
    ExampleConsistent,
    ExampleInconsistent,
    Undetermined,
}

/// A conclusion with the hypotheses it depends on and exact witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub theorem: Theorem,
    pub hypotheses: Vec<(String, bool)>,
    pub conclusion: Conclusion,
    /// Exact values as decimal strings, in a fixed order.
    pub witnesses: Vec<(String, String)>,
}

impl VerdictReport {
    fn new(theorem: Theorem) -> Self {
        VerdictReport { theorem, hypotheses: Vec::new(), conclusion: Conclusion::Undetermined, witnesses: Vec::new() }
    }

    fn hypothesis(&mut self, name: &str, holds: bool) -> &mut Self {
        self.hypotheses.push((name.to_owned(), holds));
        self
    }

    fn witness(&mut self, name: impl Into<String>, value: impl ToString) -> &mut Self {
        self.witnesses.push((name.into(), value.to_string()));
        self
    }

    fn conclude(&mut self, conclusion: Conclusion) {
        self.conclusion = if self.hypotheses_hold() { conclusion } else { Conclusion::Undetermined };
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|(_, h)| *h)
    }

    pub fn witness_value(&self, name: &str) -> Option<&str> {
        self.witnesses.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

/// f-positivity of `O_X(h)` for every `1 ≤ h < min k_i`, decided by `α ≥ 0`.
pub fn small_h_verdict(x: &RelativeCI) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(Theorem::SmallH);
    let a = alpha(x);
    let ratio = x.twist_ratio();
    let c_mu = x.bundle().bridge_threshold(x.c());
    report.witness("alpha", &a).witness("sum_y_over_k", &ratio).witness("c_mu", &c_mu);

    let mut all_nonneg = true;
    for h in 1..x.min_k() {
        let m = e_margin(x, h)?;
        all_nonneg &= m.is_f_positive();
        report.witness(format!("margin_h{h}"), &m.e_cleared);
    }
    let by_alpha = !a.is_negative();
    let by_ratio = ratio <= c_mu;
    if by_alpha != by_ratio || (x.min_k() > 1 && by_alpha != all_nonneg) {
        return Err(Error::Internal(format!(
            "small-h criteria disagree: alpha >= 0 is {by_alpha}, ratio test {by_ratio}, margins {all_nonneg}"
        )));
    }
    report.conclude(if by_alpha { Conclusion::FPositiveAllSmallH } else { Conclusion::NotFPositiveSmallH });
    Ok(report)
}

/// Sign of `α` decides f-positivity for `h ≫ 0`. The exact margin
/// polynomial on the stable regime is attached as a witness, along with
/// whether its own eventual sign agrees.
pub fn asymptotic_verdict(x: &RelativeCI) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(Theorem::Asymptotic);
    let a = alpha(x);
    let poly = invariants::stable_margin_polynomial(x)?;
    let eventual = Sign::of(&poly.leading());
    let top = (x.dim() - 1) as usize;
    report
        .witness("alpha", &a)
        .witness("stable_polynomial", &poly)
        .witness("eventual_sign", eventual)
        .witness(format!("coefficient_h{top}"), poly.coeff(top));
    let conclusion = match Sign::of(&a) {
        Sign::Positive => Conclusion::StrictlyFPositiveEventually,
        Sign::Negative => Conclusion::NotFPositiveEventually,
        Sign::Zero => Conclusion::Boundary,
    };
    let consistent = match conclusion {
        Conclusion::StrictlyFPositiveEventually => eventual == Sign::Positive,
        Conclusion::NotFPositiveEventually => eventual == Sign::Negative,
        _ => true,
    };
    report.witness("matches_exact_polynomial", consistent);
    report.conclude(conclusion);
    Ok(report)
}

/// Balanced, `k > 1`, `ck > r`: `K_f^n ≥ 0` ⟺ slope inequality ⟺
/// `μ ≥ y_J/(ck)`.
pub fn slope_verdict(x: &RelativeCI) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(Theorem::Slope);
    let balanced = x.is_balanced();
    let k = x.k()[0];
    let c = x.c() as i64;
    report
        .hypothesis("balanced", balanced)
        .hypothesis("k > 1", balanced && k > 1)
        .hypothesis("ck > r", balanced && c * k > x.r());
    if !report.hypotheses_hold() {
        report.conclude(Conclusion::Undetermined);
        return Ok(report);
    }
    let kf = kf_top(x);
    if kf != kf_top_balanced(x)? {
        return Err(Error::Internal("K_f^n disagrees with its balanced closed form".into()));
    }
    let margin = slope_margin(x)?;
    let criterion = x.bundle().slope() >= rat(x.y_sum(), c * k);
    report
        .witness("alpha", alpha(x))
        .witness("kf_top", &kf)
        .witness("slope_margin", &margin.direct)
        .witness("rank_f_omega", &margin.rank)
        .witness("deg_f_omega", &margin.deg_omega)
        .witness("mu", x.bundle().slope())
        .witness("y_J_over_ck", rat(x.y_sum(), c * k));
    if !kf.is_negative() != criterion || !margin.direct.is_negative() != criterion {
        return Err(Error::Internal(format!(
            "slope predicates disagree: kf_top {kf}, margin {}, criterion {criterion}",
            margin.direct
        )));
    }
    report.conclude(if criterion { Conclusion::SlopeHolds } else { Conclusion::SlopeFails });
    Ok(report)
}

/// Position of the class of `X` relative to the nef, bridge and pseff
/// cones. Without HN data only bridge membership is reported.
pub fn cone_verdict(x: &RelativeCI) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(Theorem::ConeMembership);
    let class = ci_class(x);
    let e = x.bundle();
    report
        .witness("class_p", &class.p)
        .witness("class_q", &class.q)
        .witness("bridge_threshold", e.bridge_threshold(x.c()));
    if e.hn().is_some() {
        let th = e.thresholds(x.c())?;
        report.witness("nef_threshold", &th.nef).witness("pseff_threshold", &th.pseff);
        report.conclude(Conclusion::Cone { region: classify(e, &class)? });
    } else {
        report.witness("note", "virtual slopes unavailable: no Harder-Narasimhan data");
        report.conclude(Conclusion::Bridge { membership: bridge_membership(e, &class)? });
    }
    Ok(report)
}

/// `Σ y_i/k_i > cμ` forces Chow instability of the fibres. The implication
/// is one-directional; otherwise the verdict is undetermined.
pub fn instability_verdict(x: &RelativeCI) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(Theorem::Instability);
    let ratio = x.twist_ratio();
    let c_mu = x.bundle().bridge_threshold(x.c());
    report
        .hypothesis("sum y_i/k_i > c*mu", ratio > c_mu)
        .witness("sum_y_over_k", &ratio)
        .witness("c_mu", &c_mu)
        .witness("alpha", alpha(x));
    let dualizing = x.is_balanced() && x.k_sum() > x.r();
    report.conclude(Conclusion::ChowUnstable { small_h: true, large_h: true, dualizing });
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `k_i = m(ra - 1)`, `y_i = m(r + 1)`.
    AsWritten,
    /// `k_i = m(r + 1)`, `y_i = m(ra - 1)`.
    Swapped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleBuild {
    pub bundle: BundleOverCurve,
    pub ci: RelativeCI,
    pub report: VerdictReport,
}

/// Builds the family over `P^1` with `E = O(a)^{r-1} ⊕ O(a-1)` and `c`
/// equal hypersurfaces, then checks effectivity (`y/k ≤ μ_1`), the
/// base-locus condition (`y/k > μ_2`) and the instability premise
/// (`Σ y_i/k_i > cμ`).
pub fn build_example(a: i64, r: i64, c: i64, m: i64, orientation: Orientation) -> Result<ExampleBuild> {
    if a < 1 || m < 1 {
        return Err(Error::invalid("a, m", "must be positive"));
    }
    if r < 3 {
        return Err(Error::invalid("r", format!("must be >= 3, got {r}")));
    }
    if !(1..=r - 2).contains(&c) {
        return Err(Error::invalid("c", format!("must lie in 1..={}, got {c}", r - 2)));
    }
    let d = r * a - 1;
    let hn = vec![HnBlock::new(r - 1, a * (r - 1)), HnBlock::new(1, a - 1)];
    let bundle = BundleOverCurve::new(r, d, 0, Some(hn))?;
    let (k, y) = match orientation {
        Orientation::AsWritten => (m * d, m * (r + 1)),
        Orientation::Swapped => (m * (r + 1), m * d),
    };
    let ci = RelativeCI::new(bundle.clone(), vec![k; c as usize], vec![y; c as usize])?;

    let ratio = rat(y, k);
    let mu1 = bundle.mu_max()?;
    let mu2 = bundle.mu_second()?.expect("two HN blocks");
    let effective = ratio <= mu1;
    let base_locus = ratio > mu2;
    let unstable = ci.twist_ratio() > bundle.bridge_threshold(c as usize);

    let mut report = VerdictReport::new(Theorem::ExampleFamily);
    report
        .hypothesis("a >= 1, m >= 1, r >= 3, 1 <= c <= r-2", true)
        .witness("k", k)
        .witness("y", y)
        .witness("y_over_k", &ratio)
        .witness("mu_1", &mu1)
        .witness("mu_2", &mu2)
        .witness("mu", bundle.slope())
        .witness("effective", effective)
        .witness("base_locus_condition", base_locus)
        .witness("instability_condition", unstable);
    report.conclude(if effective && base_locus && unstable {
        Conclusion::ExampleConsistent
    } else {
        Conclusion::ExampleInconsistent
    });
    Ok(ExampleBuild { bundle, ci, report })
}

/// Margins for `h = 1..=h_max` together with the exact stable-regime
/// polynomial and a point `h0` past which the sign no longer changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub reports: Vec<PositivityReport>,
    /// `h ↦ e_cleared(h) / h^{n-1}` for `h ≥ k_J`.
    pub stable_polynomial: UniPoly,
    pub h0: i64,
    pub eventual_sign: Sign,
}

pub fn h_sweep(x: &RelativeCI, h_max: i64) -> Result<Sweep> {
    if h_max < 1 {
        return Err(Error::invalid("h_max", format!("must be >= 1, got {h_max}")));
    }
    let reports = (1..=h_max).map(|h| e_margin(x, h)).collect::<Result<Vec<_>>>()?;
    let poly = invariants::stable_margin_polynomial(x)?;
    let start = invariants::stable_start(x);
    let h0 = match poly.root_bound() {
        Some(bound) => ceil(&bound).max(start),
        None => start,
    };
    Ok(Sweep { reports, eventual_sign: Sign::of(&poly.leading()), stable_polynomial: poly, h0 })
}

fn ceil(q: &Rat) -> i64 {
    q.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

/// Every verdict for one instance.
pub fn all_verdicts(x: &RelativeCI) -> Result<Vec<VerdictReport>> {
    Ok(vec![
        small_h_verdict(x)?,
        asymptotic_verdict(x)?,
        slope_verdict(x)?,
        cone_verdict(x)?,
        instability_verdict(x)?,
    ])
}
