//! Vector bundles over a curve, their virtual slopes, and the cones of
//! codimension-`c` classes in `N^c(P(E))`.
//!
//! `N^c(P)` is two-dimensional with basis `H^c`, `H^{c-1}Σ`. A class is written
//! `p·H^c + q·H^{c-1}Σ`. All three cones handled here share the ray
//! `H^{c-1}Σ`; their second rays are `H^c - t·H^{c-1}Σ` for a threshold `t`,
//! so membership of a class with `p > 0` reduces to comparing `-q/p` with `t`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Rat};
use crate::invariants::RelativeCI;

/// One Harder–Narasimhan subquotient `E_j / E_{j-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HnBlock {
    pub rank: i64,
    pub degree: i64,
}

impl HnBlock {
    pub fn new(rank: i64, degree: i64) -> Self {
        HnBlock { rank, degree }
    }

    pub fn slope(&self) -> Rat {
        rat(self.degree, self.rank)
    }
}

/// A vector bundle `E` on a smooth curve `B`, known through its numerical
/// data and optionally its Harder–Narasimhan type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleOverCurve {
    rank: i64,
    degree: i64,
    base_genus: i64,
    hn: Option<Vec<HnBlock>>,
}

impl BundleOverCurve {
    pub fn new(rank: i64, degree: i64, base_genus: i64, hn: Option<Vec<HnBlock>>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::invalid("bundle.rank", format!("must be >= 2, got {rank}")));
        }
        if base_genus < 0 {
            return Err(Error::invalid("bundle.base_genus", format!("must be >= 0, got {base_genus}")));
        }
        if let Some(blocks) = &hn {
            validate_hn(blocks, rank, degree)?;
        }
        Ok(BundleOverCurve { rank, degree, base_genus, hn })
    }

    /// Semistable bundle: a single Harder–Narasimhan block.
    pub fn semistable(rank: i64, degree: i64) -> Result<Self> {
        Self::new(rank, degree, 0, Some(vec![HnBlock::new(rank, degree)]))
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Echoed metadata; no invariant depends on it.
    pub fn base_genus(&self) -> i64 {
        self.base_genus
    }

    pub fn hn(&self) -> Option<&[HnBlock]> {
        self.hn.as_deref()
    }

    fn require_hn(&self, what: &str) -> Result<&[HnBlock]> {
        self.hn()
            .ok_or_else(|| Error::MissingHn(format!("{what} needs the Harder-Narasimhan type of E")))
    }

    /// `μ(E) = d / r`.
    pub fn slope(&self) -> Rat {
        rat(self.degree, self.rank)
    }

    /// `μ_1`, the slope of the maximal destabilizing subbundle.
    pub fn mu_max(&self) -> Result<Rat> {
        Ok(self.require_hn("mu_1")?[0].slope())
    }

    /// `μ_ℓ`, the slope of the last subquotient.
    pub fn mu_min(&self) -> Result<Rat> {
        let hn = self.require_hn("mu_l")?;
        Ok(hn[hn.len() - 1].slope())
    }

    /// Second HN slope `μ_2`, if the filtration has at least two steps.
    pub fn mu_second(&self) -> Result<Option<Rat>> {
        Ok(self.require_hn("mu_2")?.get(1).map(HnBlock::slope))
    }

    pub fn is_semistable(&self) -> Option<bool> {
        self.hn().map(|b| b.len() == 1)
    }

    /// Virtual slopes in non-increasing order: each HN slope repeated by the
    /// rank of its block. They sum to `d`.
    pub fn virtual_slopes(&self) -> Result<Vec<Rat>> {
        let hn = self.require_hn("virtual slopes")?;
        Ok(hn
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.slope(), b.rank as usize))
            .collect())
    }

    fn check_codim(&self, c: usize) -> Result<()> {
        if c == 0 || c as i64 > self.rank - 1 {
            return Err(Error::invalid(
                "c",
                format!("codimension must lie in 1..={}, got {c}", self.rank - 1),
            ));
        }
        Ok(())
    }

    /// The three cone thresholds in codimension `c`.
    pub fn thresholds(&self, c: usize) -> Result<ConeThresholds> {
        self.check_codim(c)?;
        let slopes = self.virtual_slopes()?;
        let pseff = slopes[..c].iter().sum();
        let nef = slopes[slopes.len() - c..].iter().sum();
        Ok(ConeThresholds {
            nef,
            bridge: self.bridge_threshold(c),
            pseff,
        })
    }

    /// `cμ`, the threshold of the bridge cone. Needs only `(r, d)`.
    pub fn bridge_threshold(&self, c: usize) -> Rat {
        self.slope() * rat_int(c as i64)
    }
}

fn validate_hn(blocks: &[HnBlock], rank: i64, degree: i64) -> Result<()> {
    if blocks.is_empty() {
        return Err(Error::invalid("bundle.hn", "filtration must have at least one block"));
    }
    if let Some(b) = blocks.iter().find(|b| b.rank < 1) {
        return Err(Error::invalid("bundle.hn", format!("block rank must be >= 1, got {}", b.rank)));
    }
    let r: i64 = blocks.iter().map(|b| b.rank).sum();
    let d: i64 = blocks.iter().map(|b| b.degree).sum();
    if r != rank || d != degree {
        return Err(Error::invalid(
            "bundle.hn",
            format!("blocks sum to (rank {r}, degree {d}), expected ({rank}, {degree})"),
        ));
    }
    if blocks.windows(2).any(|w| w[0].slope() <= w[1].slope()) {
        return Err(Error::invalid("bundle.hn", "slopes must be strictly decreasing"));
    }
    Ok(())
}

/// Cone thresholds `t` in codimension `c`: a class `H^c - t·H^{c-1}Σ`
/// spans the second ray of each cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeThresholds {
    /// Sum of the `c` smallest virtual slopes.
    pub nef: Rat,
    /// `cμ`.
    pub bridge: Rat,
    /// Sum of the `c` largest virtual slopes.
    pub pseff: Rat,
}

/// `p·H^c + q·H^{c-1}Σ` in `N^c(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    pub codim: usize,
    pub p: Rat,
    pub q: Rat,
}

impl CycleClass {
    pub fn new(codim: usize, p: Rat, q: Rat) -> Self {
        CycleClass { codim, p, q }
    }

    /// `-q/p`, the position of the class along the pencil of second rays.
    pub fn ray_position(&self) -> Option<Rat> {
        (!self.p.is_zero()).then(|| -&self.q / &self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeLabel {
    Pseff,
    Nef,
    Bridge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    pub codim: usize,
    pub label: ConeLabel,
    /// Always `H^{c-1}Σ`.
    pub ray1: CycleClass,
    /// `H^c - t·H^{c-1}Σ`.
    pub ray2: CycleClass,
}

impl ConeDescription {
    pub fn threshold(&self) -> Rat {
        -&self.ray2.q
    }
}

pub fn cone(bundle: &BundleOverCurve, c: usize, label: ConeLabel) -> Result<ConeDescription> {
    bundle.check_codim(c)?;
    let t = match label {
        ConeLabel::Bridge => bundle.bridge_threshold(c),
        ConeLabel::Pseff => bundle.thresholds(c)?.pseff,
        ConeLabel::Nef => bundle.thresholds(c)?.nef,
    };
    Ok(ConeDescription {
        codim: c,
        label,
        ray1: CycleClass::new(c, rat_int(0), rat_int(1)),
        ray2: CycleClass::new(c, rat_int(1), -t),
    })
}

/// Effectivity and nefness of the divisor class `kH - mΣ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTest {
    pub pseff: bool,
    pub nef: bool,
}

/// Miyaoka–Nakayama: `kH - mΣ` is pseudo-effective iff `m/k ≤ μ_1` and nef
/// iff `m/k ≤ μ_ℓ`.
pub fn mn_divisor_test(bundle: &BundleOverCurve, k: i64, m: i64) -> Result<DivisorTest> {
    if k <= 0 {
        return Err(Error::invalid("k", format!("must be >= 1, got {k}")));
    }
    let ratio = rat(m, k);
    Ok(DivisorTest {
        pseff: ratio <= bundle.mu_max()?,
        nef: ratio <= bundle.mu_min()?,
    })
}

/// Class of `X = ∏(k_i H - y_i Σ)` in `N^c(P)`, using `Σ² = 0`.
pub fn ci_class(x: &RelativeCI) -> CycleClass {
    let k = x.k();
    let y = x.y();
    let p: i64 = k.iter().product();
    let q: i64 = (0..k.len())
        .map(|i| {
            let others: i64 = k.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v).product();
            others * y[i]
        })
        .sum();
    CycleClass::new(k.len(), rat_int(p), rat_int(-q))
}

/// Position of a class relative to the nested cones `Nef ⊆ 𝔹 ⊆ Pseff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    InsideNef,
    NefBoundary,
    InsideBridgeOutsideNef,
    BridgeBoundary,
    InsidePseffOutsideBridge,
    PseffBoundary,
    OutsidePseff,
}

impl Region {
    /// Strictly outside the bridge cone `𝔹`.
    pub fn outside_bridge(self) -> bool {
        matches!(
            self,
            Region::InsidePseffOutsideBridge | Region::PseffBoundary | Region::OutsidePseff
        )
    }
}

fn check_candidate(bundle: &BundleOverCurve, class: &CycleClass) -> Result<()> {
    bundle.check_codim(class.codim)?;
    if class.p.is_negative() {
        return Err(Error::invalid("class.p", "negative H^c coefficient is not a candidate effective class"));
    }
    Ok(())
}

/// Places a class among the three cones. When several boundaries coincide
/// (semistable `E`), the first in nef, bridge, pseff order is reported.
pub fn classify(bundle: &BundleOverCurve, class: &CycleClass) -> Result<Region> {
    check_candidate(bundle, class)?;
    let th = bundle.thresholds(class.codim)?;
    let Some(t) = class.ray_position() else {
        return Ok(Region::NefBoundary);
    };
    Ok(match t.cmp(&th.nef) {
        Ordering::Less => Region::InsideNef,
        Ordering::Equal => Region::NefBoundary,
        Ordering::Greater => match t.cmp(&th.bridge) {
            Ordering::Less => Region::InsideBridgeOutsideNef,
            Ordering::Equal => Region::BridgeBoundary,
            Ordering::Greater => match t.cmp(&th.pseff) {
                Ordering::Less => Region::InsidePseffOutsideBridge,
                Ordering::Equal => Region::PseffBoundary,
                Ordering::Greater => Region::OutsidePseff,
            },
        },
    })
}

/// Membership in `𝔹` alone; available without HN data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BridgeMembership {
    Interior,
    Boundary,
    Outside,
}

pub fn bridge_membership(bundle: &BundleOverCurve, class: &CycleClass) -> Result<BridgeMembership> {
    check_candidate(bundle, class)?;
    let Some(t) = class.ray_position() else {
        return Ok(BridgeMembership::Boundary);
    };
    Ok(match t.cmp(&bundle.bridge_threshold(class.codim)) {
        Ordering::Less => BridgeMembership::Interior,
        Ordering::Equal => BridgeMembership::Boundary,
        Ordering::Greater => BridgeMembership::Outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn split_210() -> BundleOverCurve {
        BundleOverCurve::new(
            3,
            3,
            0,
            Some(vec![HnBlock::new(1, 2), HnBlock::new(1, 1), HnBlock::new(1, 0)]),
        )
        .unwrap()
    }

    #[test]
    fn virtual_slope_examples() {
        assert_eq!(split_210().virtual_slopes().unwrap(), vec![rat(2, 1), rat(1, 1), rat(0, 1)]);
        let ss = BundleOverCurve::semistable(3, 3).unwrap();
        assert_eq!(ss.virtual_slopes().unwrap(), vec![rat(1, 1); 3]);
        let e = BundleOverCurve::new(4, 4, 1, Some(vec![HnBlock::new(2, 3), HnBlock::new(2, 1)])).unwrap();
        let vs = e.virtual_slopes().unwrap();
        assert_eq!(vs, vec![rat(3, 2), rat(3, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(vs.iter().sum::<Rat>(), rat(4, 1));
    }

    #[test]
    fn hn_validation() {
        let bad_order = BundleOverCurve::new(3, 3, 0, Some(vec![HnBlock::new(1, 0), HnBlock::new(2, 3)]));
        assert!(bad_order.is_err());
        let bad_sum = BundleOverCurve::new(3, 4, 0, Some(vec![HnBlock::new(3, 3)]));
        assert!(bad_sum.is_err());
        let equal_slopes = BundleOverCurve::new(4, 4, 0, Some(vec![HnBlock::new(2, 2), HnBlock::new(2, 2)]));
        assert!(equal_slopes.is_err());
        assert!(BundleOverCurve::new(1, 0, 0, None).is_err());
        assert!(BundleOverCurve::new(3, 0, -1, None).is_err());
    }

    #[test]
    fn cone_examples_split() {
        let e = split_210();
        let q = |label| cone(&e, 2, label).unwrap().ray2.q;
        assert_eq!(q(ConeLabel::Pseff), rat(-3, 1));
        assert_eq!(q(ConeLabel::Nef), rat(-1, 1));
        assert_eq!(q(ConeLabel::Bridge), rat(-2, 1));
        let d = cone(&e, 2, ConeLabel::Nef).unwrap();
        assert_eq!(d.ray1, CycleClass::new(2, rat(0, 1), rat(1, 1)));
        assert_eq!(d.ray2.p, rat(1, 1));

        // c = 1 matches the Miyaoka–Nakayama thresholds μ_1 = 2, μ_ℓ = 0
        assert_eq!(cone(&e, 1, ConeLabel::Pseff).unwrap().threshold(), e.mu_max().unwrap());
        assert_eq!(cone(&e, 1, ConeLabel::Nef).unwrap().threshold(), e.mu_min().unwrap());
        assert!(cone(&e, 0, ConeLabel::Nef).is_err());
        assert!(cone(&e, 3, ConeLabel::Bridge).is_err());
    }

    #[test]
    fn semistable_cones_coincide() {
        let e = BundleOverCurve::semistable(5, 7).unwrap();
        for c in 1..5 {
            let th = e.thresholds(c).unwrap();
            assert_eq!(th.nef, th.bridge);
            assert_eq!(th.bridge, th.pseff);
        }
    }

    #[test]
    fn bridge_without_hn() {
        let e = BundleOverCurve::new(3, 3, 2, None).unwrap();
        assert_eq!(cone(&e, 2, ConeLabel::Bridge).unwrap().threshold(), rat(2, 1));
        assert!(matches!(cone(&e, 2, ConeLabel::Nef), Err(Error::MissingHn(_))));
        let class = CycleClass::new(2, rat(1, 1), rat(-3, 1));
        assert_eq!(bridge_membership(&e, &class).unwrap(), BridgeMembership::Outside);
        assert!(classify(&e, &class).is_err());
    }

    #[test]
    fn mn_examples() {
        let e = split_210();
        assert!(!mn_divisor_test(&e, 2, 5).unwrap().pseff);
        assert_eq!(mn_divisor_test(&e, 2, 3).unwrap(), DivisorTest { pseff: true, nef: false });
        let ss = BundleOverCurve::semistable(3, 3).unwrap();
        assert_eq!(mn_divisor_test(&ss, 1, 1).unwrap(), DivisorTest { pseff: true, nef: true });
        assert!(mn_divisor_test(&e, 0, 1).is_err());
    }

    #[test]
    fn ci_class_examples() {
        let e = BundleOverCurve::semistable(4, 4).unwrap();
        let cls = |k: Vec<i64>, y: Vec<i64>| ci_class(&RelativeCI::new(e.clone(), k, y).unwrap());
        assert_eq!(cls(vec![2, 2], vec![1, 1]), CycleClass::new(2, rat(4, 1), rat(-4, 1)));
        assert_eq!(cls(vec![2], vec![0]), CycleClass::new(1, rat(2, 1), rat(0, 1)));
        assert_eq!(cls(vec![3, 3], vec![1, 2]), CycleClass::new(2, rat(9, 1), rat(-9, 1)));
    }

    #[test]
    fn classify_examples() {
        let e = split_210();
        let region = |p, q| classify(&e, &CycleClass::new(2, p, q)).unwrap();
        assert_eq!(region(rat(4, 1), rat(-4, 1)), Region::NefBoundary);
        assert_eq!(region(rat(1, 1), rat(-5, 2)), Region::InsidePseffOutsideBridge);
        assert_eq!(region(rat(1, 1), rat(0, 1)), Region::InsideNef);
        assert_eq!(region(rat(1, 1), rat(-3, 2)), Region::InsideBridgeOutsideNef);
        assert_eq!(region(rat(2, 1), rat(-4, 1)), Region::BridgeBoundary);
        assert_eq!(region(rat(1, 1), rat(-3, 1)), Region::PseffBoundary);
        assert_eq!(region(rat(1, 1), rat(-4, 1)), Region::OutsidePseff);
        assert_eq!(region(rat(0, 1), rat(1, 1)), Region::NefBoundary);
        assert!(classify(&e, &CycleClass::new(2, rat(-1, 1), rat(0, 1))).is_err());

        let ss = BundleOverCurve::semistable(3, 3).unwrap();
        let on_boundary = classify(&ss, &CycleClass::new(2, rat(1, 1), rat(-2, 1))).unwrap();
        assert_eq!(on_boundary, Region::NefBoundary);
    }
}
