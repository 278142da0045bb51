//! Brute-force routes to the quantities computed in closed form by
//! [`crate::invariants`]. None of the code here calls into that module's
//! formulas; the suite runner compares the two.
//!
//! * degrees of `Sym^a E ⊗ O(-M)` for split `E` by enumerating monomials;
//! * `deg f_*O_X(h)` by summing those over the Koszul complex;
//! * `h⁰(F, O_F(h))` as a coefficient of `∏(1 - t^{k_i}) / (1 - t)^r`;
//! * intersection numbers by normal forms in `Z[H, Σ] / (Σ², H^r - d·H^{r-1}Σ)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::bundle::{ci_class, BundleOverCurve, CycleClass, HnBlock};
use crate::error::{Error, Result};
use crate::exact::{all_subsets, int, rat_int, to_integer, Int, Rat};
use crate::invariants::{self, RelativeCI};

/// `E = O(a_1) ⊕ … ⊕ O(a_r)` on a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBundle {
    line_degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(line_degrees: Vec<i64>) -> Result<Self> {
        if line_degrees.len() < 2 {
            return Err(Error::invalid("bundle.split", "need at least two line bundles"));
        }
        Ok(SplitBundle { line_degrees })
    }

    pub fn line_degrees(&self) -> &[i64] {
        &self.line_degrees
    }

    pub fn rank(&self) -> i64 {
        self.line_degrees.len() as i64
    }

    pub fn degree(&self) -> i64 {
        self.line_degrees.iter().sum()
    }

    /// HN type: equal degrees grouped, in decreasing order.
    pub fn hn(&self) -> Vec<HnBlock> {
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for &a in &self.line_degrees {
            *counts.entry(a).or_default() += 1;
        }
        counts
            .into_iter()
            .rev()
            .map(|(a, n)| HnBlock::new(n, n * a))
            .collect()
    }

    pub fn to_bundle(&self, base_genus: i64) -> Result<BundleOverCurve> {
        BundleOverCurve::new(self.rank(), self.degree(), base_genus, Some(self.hn()))
    }
}

/// Enumeration caps for the multiset oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_rank: i64,
    pub max_power: i64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_rank: 5, max_power: 12 }
    }
}

/// Visits every multiset of size `size` drawn from `items`, passing the sum
/// of its elements.
fn for_each_multiset(items: &[i64], size: usize, visit: &mut impl FnMut(i64)) {
    fn rec(items: &[i64], start: usize, left: usize, acc: i64, visit: &mut impl FnMut(i64)) {
        if left == 0 {
            visit(acc);
            return;
        }
        for i in start..items.len() {
            rec(items, i, left - 1, acc + items[i], visit);
        }
    }
    rec(items, 0, size, 0, visit);
}

/// `deg Sym^a E ⊗ O(-M)` with `deg M = twist`, by listing the monomials of
/// degree `a` in the line summands.
pub fn sym_degree_bruteforce(split: &SplitBundle, a: i64, twist: i64) -> Result<Int> {
    if a < 0 {
        return Err(Error::invalid("a", format!("must be >= 0, got {a}")));
    }
    let mut total = Int::zero();
    let mut count = Int::zero();
    for_each_multiset(&split.line_degrees, a as usize, &mut |s| {
        total += s;
        count += 1;
    });
    Ok(total - count * twist)
}

/// `deg f_*O_X(h)` as the alternating Koszul sum of symmetric-power degrees.
/// The `I` term is `π_*O((h - k_I)H + π*M_I) = Sym^{h-k_I} E ⊗ O(M_I)`.
pub fn koszul_degree_bruteforce(split: &SplitBundle, x: &RelativeCI, h: i64) -> Result<Int> {
    if split.rank() != x.r() || split.degree() != x.d() {
        return Err(Error::invalid(
            "bundle.split",
            format!(
                "split bundle has (rank {}, degree {}) but X lives in P(E) with ({}, {})",
                split.rank(),
                split.degree(),
                x.r(),
                x.d()
            ),
        ));
    }
    let mut total = Int::zero();
    for subset in all_subsets(x.c()) {
        let a = h - subset.sum_of(x.k());
        if a < 0 {
            continue;
        }
        let term = sym_degree_bruteforce(split, a, -subset.sum_of(x.y()))?;
        if subset.len() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Coefficient of `t^h` in `∏_i (1 - t^{k_i}) / (1 - t)^r`.
pub fn hilbert_series_rank(k: &[i64], r: i64, h: i64) -> Result<Int> {
    if h < 0 {
        return Err(Error::invalid("h", format!("must be >= 0, got {h}")));
    }
    let len = h as usize + 1;
    // 1/(1-t)^r: r successive prefix sums of the series 1
    let mut series = vec![Int::zero(); len];
    series[0] = Int::one();
    for _ in 0..r {
        for i in 1..len {
            let prev = series[i - 1].clone();
            series[i] += prev;
        }
    }
    for &ki in k {
        let shift = ki as usize;
        for i in (shift..len).rev() {
            let lower = series[i - shift].clone();
            series[i] -= lower;
        }
    }
    Ok(series.swap_remove(h as usize))
}

/// `u·H^p + v·H^{p-1}Σ` in the numerical Chow ring of `P(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElement {
    pub codim: usize,
    pub u: Rat,
    pub v: Rat,
}

impl ChowElement {
    pub fn one() -> Self {
        ChowElement { codim: 0, u: Rat::one(), v: Rat::zero() }
    }

    /// `a·H - b·Σ`.
    pub fn divisor(a: i64, b: i64) -> Self {
        ChowElement { codim: 1, u: rat_int(a), v: rat_int(-b) }
    }

    pub fn mul(&self, other: &ChowElement) -> ChowElement {
        ChowElement {
            codim: self.codim + other.codim,
            u: &self.u * &other.u,
            v: &self.u * &other.v + &self.v * &other.u,
        }
    }

    pub fn pow(&self, n: u32) -> ChowElement {
        (0..n).fold(ChowElement::one(), |acc, _| acc.mul(self))
    }

    /// Degree of a top-codimension class: `H^r ↦ d`, `H^{r-1}Σ ↦ 1`.
    pub fn contract(&self, rank: i64, degree: i64) -> Result<Rat> {
        if self.codim as i64 != rank {
            return Err(Error::invalid(
                "chow",
                format!("cannot take the degree of a codimension-{} class on P(E) of dimension {rank}", self.codim),
            ));
        }
        Ok(&self.u * rat_int(degree) + &self.v)
    }
}

/// Intersection numbers of `X` obtained by expanding in the Chow ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowExpansion {
    pub h_top: Int,
    pub fibre_deg: Int,
    pub kf_top: Int,
    pub class: CycleClass,
}

pub fn chow_expand(x: &RelativeCI) -> Result<ChowExpansion> {
    let (r, d) = (x.r(), x.d());
    let n = x.dim() as u32;
    let class = x
        .k()
        .iter()
        .zip(x.y())
        .fold(ChowElement::one(), |acc, (&k, &y)| acc.mul(&ChowElement::divisor(k, y)));
    let hyperplane = ChowElement::divisor(1, 0);
    let fibre = ChowElement::divisor(0, -1);
    let h_top = hyperplane.pow(n).mul(&class).contract(r, d)?;
    let fibre_deg = hyperplane.pow(n - 1).mul(&fibre).mul(&class).contract(r, d)?;
    let canonical = ChowElement::divisor(x.k_sum() - r, x.y_sum() - d);
    let kf_top = canonical.pow(n).mul(&class).contract(r, d)?;
    Ok(ChowExpansion {
        h_top: to_integer(&h_top, "H_X^n")?,
        fibre_deg: to_integer(&fibre_deg, "H_F^{n-1}")?,
        kf_top: to_integer(&kf_top, "K_f^n")?,
        class: CycleClass::new(x.c(), class.u, class.v),
    })
}

/// Outcome of one oracle comparison suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, checks: 0, mismatches: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Closed form `C(a+r-1, r-1)·(a·d - twist·r) / r`.
pub fn sym_degree_closed_form(r: i64, d: i64, a: i64, twist: i64) -> Result<Int> {
    let count = crate::exact::binom_trunc(a + r - 1, r - 1)?;
    to_integer(&Rat::new(count * (a * d - twist * r), int(r)), "deg Sym^a E(-M)")
}

/// Runs the four oracle suites for `X` over a split bundle, `h = 0..=h_max`.
pub fn run_suites(split: &SplitBundle, x: &RelativeCI, h_max: i64, limits: OracleLimits) -> Result<Vec<SuiteResult>> {
    if split.rank() > limits.max_rank {
        return Err(Error::invalid(
            "bundle.split",
            format!("rank {} exceeds the oracle cap {}", split.rank(), limits.max_rank),
        ));
    }
    let h_max = h_max.min(limits.max_power);
    let (r, d) = (x.r(), x.d());

    let mut sym = SuiteResult::new("sym_degree");
    let twists: Vec<i64> = all_subsets(x.c()).map(|s| -s.sum_of(x.y())).collect();
    for a in 0..=h_max {
        for &t in &twists {
            let brute = sym_degree_bruteforce(split, a, t)?;
            let closed = sym_degree_closed_form(r, d, a, t)?;
            sym.check(brute == closed, || format!("a = {a}, twist = {t}: brute {brute} != closed {closed}"));
        }
    }

    let mut koszul = SuiteResult::new("koszul_degree");
    let mut hilbert = SuiteResult::new("hilbert_rank");
    for h in 0..=h_max {
        let brute = koszul_degree_bruteforce(split, x, h)?;
        let closed = invariants::deg_pf(x, h)?;
        koszul.check(brute == closed, || format!("h = {h}: brute {brute} != deg_pf {closed}"));
        let series = hilbert_series_rank(x.k(), r, h)?;
        let rank = invariants::rank_pf(x, h)?;
        hilbert.check(series == rank, || format!("h = {h}: series {series} != rank_pf {rank}"));
    }

    let mut chow = SuiteResult::new("chow_expand");
    let e = chow_expand(x)?;
    let pairs = [
        ("h_top", e.h_top.clone(), invariants::h_top(x)),
        ("fibre_deg", e.fibre_deg.clone(), invariants::fibre_deg(x)),
        ("kf_top", e.kf_top.clone(), invariants::kf_top(x)),
    ];
    for (name, ring, closed) in pairs {
        chow.check(ring == closed, || format!("{name}: ring {ring} != closed {closed}"));
    }
    let class = ci_class(x);
    chow.check(e.class == class, || format!("class: ring ({}, {}) != closed ({}, {})", e.class.p, e.class.q, class.p, class.q));

    Ok(vec![sym, koszul, hilbert, chow])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn split(v: &[i64]) -> SplitBundle {
        SplitBundle::new(v.to_vec()).unwrap()
    }

    fn worked(s: &SplitBundle) -> RelativeCI {
        RelativeCI::new(s.to_bundle(0).unwrap(), vec![3, 3], vec![1, 2]).unwrap()
    }

    #[test]
    fn split_hn_grouping() {
        let s = split(&[0, 2, 1, 2]);
        assert_eq!(s.hn(), vec![HnBlock::new(2, 4), HnBlock::new(1, 1), HnBlock::new(1, 0)]);
        assert_eq!(split(&[1, 1, 1]).hn(), vec![HnBlock::new(3, 3)]);
        assert!(SplitBundle::new(vec![1]).is_err());
    }

    #[test]
    fn sym_degree_examples() {
        assert_eq!(sym_degree_bruteforce(&split(&[1, 0]), 2, 0).unwrap(), int(3));
        assert_eq!(sym_degree_bruteforce(&split(&[3, -1, 2]), 0, 5).unwrap(), int(-5));
        assert_eq!(sym_degree_bruteforce(&split(&[2, 1, 0]), 1, 1).unwrap(), int(0));
        assert_eq!(sym_degree_closed_form(2, 1, 2, 0).unwrap(), int(3));
    }

    #[test]
    fn koszul_examples() {
        let s = split(&[1, 1, 1, 1]);
        let x = worked(&s);
        assert_eq!(koszul_degree_bruteforce(&s, &x, 2).unwrap(), int(20));
        assert_eq!(koszul_degree_bruteforce(&s, &x, 0).unwrap(), int(0));
        // below min k only the empty subset contributes
        assert_eq!(
            koszul_degree_bruteforce(&s, &x, 2).unwrap(),
            sym_degree_bruteforce(&s, 2, 0).unwrap()
        );
        assert!(koszul_degree_bruteforce(&split(&[1, 1, 1, 0]), &x, 2).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_series_rank(&[2], 3, 1).unwrap(), int(3));
        assert_eq!(hilbert_series_rank(&[2, 2], 4, 2).unwrap(), int(8));
        assert_eq!(hilbert_series_rank(&[3, 3], 4, 0).unwrap(), int(1));
        // a (3,3) curve in P^3 has Hilbert polynomial 9h - 9
        assert_eq!(hilbert_series_rank(&[3, 3], 4, 10).unwrap(), int(81));
    }

    #[test]
    fn chow_examples() {
        let s = split(&[1, 1, 1, 1]);
        let e = chow_expand(&worked(&s)).unwrap();
        assert_eq!((e.h_top, e.fibre_deg, e.kf_top), (int(27), int(9), int(144)));
        assert_eq!((e.class.p.clone(), e.class.q.clone()), (rat(9, 1), rat(-9, 1)));

        let b = split(&[2, 1, 0]).to_bundle(0).unwrap();
        let hyper = chow_expand(&RelativeCI::new(b.clone(), vec![4], vec![3]).unwrap()).unwrap();
        assert_eq!(hyper.h_top, int(4 * 3 - 3));
        assert_eq!((hyper.class.p, hyper.class.q), (rat(4, 1), rat(-3, 1)));

        let untwisted = chow_expand(&RelativeCI::new(split(&[2, 1, 0, 0, 1]).to_bundle(0).unwrap(), vec![2, 3], vec![0, 0]).unwrap()).unwrap();
        assert_eq!(untwisted.h_top, int(6 * 4));
        assert_eq!(untwisted.class.q, rat(0, 1));
    }

    #[test]
    fn contract_requires_top_degree() {
        assert!(ChowElement::divisor(1, 0).contract(3, 1).is_err());
    }

    #[test]
    fn suites_pass_on_worked_instance() {
        let s = split(&[1, 1, 1, 1]);
        let results = run_suites(&s, &worked(&s), 8, OracleLimits::default()).unwrap();
        assert_eq!(results.len(), 4);
        assert!(results.iter().all(SuiteResult::passed), "{results:?}");
        assert!(run_suites(&split(&[0; 6]), &RelativeCI::new(split(&[0; 6]).to_bundle(0).unwrap(), vec![2], vec![0]).unwrap(), 3, OracleLimits::default()).is_err());
    }
}
