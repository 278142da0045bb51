//! Numerical invariants of a relative complete intersection
//! `X = X_1 ∩ … ∩ X_c ⊂ P(E)`, `X_i ∈ |k_i H - π*M_i|`, `deg M_i = y_i`,
//! fibred over the base curve by `f: X → B`.
//!
//! Write `n = r - c = dim X`, `P = ∏ k_i`, `S = Σ_i (∏_{j≠i} k_j) y_i`. Then
//!
//! * `H_X^n = P·d - S` and `H_F^{n-1} = P`;
//! * `rank f_*O_X(h)` and `deg f_*O_X(h)` are alternating sums over subsets
//!   `I ⊆ {1..c}` coming from the Koszul resolution of `O_X`;
//! * the f-positivity margin of `O_X(h)`, cleared of the division by the
//!   rank, is `h^n·H_X^n·rank - n·h^{n-1}·P·deg`;
//! * `α = c·P·d - r·S`; its sign is the sign of `cμ - Σ y_i/k_i`.
//!
//! Margins are kept in cleared integer form so that every sign test is exact.

use num_traits::Zero;

use crate::bundle::BundleOverCurve;
use crate::error::{Error, Result};
use crate::exact::{all_subsets, binom_unchecked, interpolate, int, rat, rat_int, to_integer, Int, Rat, Sign, UniPoly};

/// A relative complete intersection of codimension `c` in `P(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeCI {
    bundle: BundleOverCurve,
    k: Vec<i64>,
    y: Vec<i64>,
}

impl RelativeCI {
    pub fn new(bundle: BundleOverCurve, k: Vec<i64>, y: Vec<i64>) -> Result<Self> {
        if k.len() != y.len() {
            return Err(Error::invalid(
                "ci.y",
                format!("expected {} twists (one per degree), got {}", k.len(), y.len()),
            ));
        }
        let c = k.len() as i64;
        let r = bundle.rank();
        if c < 1 || c > r - 2 {
            return Err(Error::invalid(
                "ci.k",
                format!("codimension c = {c} must satisfy 1 <= c <= r - 2 = {}", r - 2),
            ));
        }
        if let Some((i, ki)) = k.iter().enumerate().find(|(_, &ki)| ki < 2) {
            return Err(Error::invalid(format!("ci.k[{i}]"), format!("degree must be >= 2, got {ki}")));
        }
        Ok(RelativeCI { bundle, k, y })
    }

    pub fn bundle(&self) -> &BundleOverCurve {
        &self.bundle
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn y(&self) -> &[i64] {
        &self.y
    }

    pub fn r(&self) -> i64 {
        self.bundle.rank()
    }

    pub fn d(&self) -> i64 {
        self.bundle.degree()
    }

    pub fn c(&self) -> usize {
        self.k.len()
    }

    /// `n = r - c`, the dimension of `X`.
    pub fn dim(&self) -> i64 {
        self.r() - self.c() as i64
    }

    pub fn k_sum(&self) -> i64 {
        self.k.iter().sum()
    }

    pub fn y_sum(&self) -> i64 {
        self.y.iter().sum()
    }

    pub fn min_k(&self) -> i64 {
        *self.k.iter().min().expect("c >= 1")
    }

    pub fn is_balanced(&self) -> bool {
        self.k.windows(2).all(|w| w[0] == w[1])
    }

    /// `Σ y_i / k_i`, the position of the class of `X` along the cone pencil.
    pub fn twist_ratio(&self) -> Rat {
        self.k.iter().zip(&self.y).map(|(&k, &y)| rat(y, k)).sum()
    }

    /// Non-fatal diagnostics. A divisor `k_i H - y_i Σ` with `y_i/k_i > μ_1`
    /// is not pseudo-effective, so no effective `X_i` exists.
    pub fn warnings(&self) -> Vec<String> {
        let Ok(mu1) = self.bundle.mu_max() else {
            return Vec::new();
        };
        self.k
            .iter()
            .zip(&self.y)
            .enumerate()
            .filter(|(_, (&k, &y))| rat(y, k) > mu1)
            .map(|(i, (&k, &y))| {
                format!("X_{} in |{k}H - {y}F| is not effective: y/k = {} exceeds mu_1 = {mu1}", i + 1, rat(y, k))
            })
            .collect()
    }

    fn product_k(&self) -> i64 {
        self.k.iter().product()
    }

    /// `Σ_i (∏_{j≠i} k_j) y_i`.
    fn weighted_twists(&self) -> Int {
        (0..self.c())
            .map(|i| {
                let others: Int = self
                    .k
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| int(v))
                    .product();
                others * self.y[i]
            })
            .sum()
    }
}

/// `H_X^{r-c} = (∏k_i)·d - Σ_i (∏_{j≠i}k_j)·y_i`.
pub fn h_top(x: &RelativeCI) -> Int {
    int(x.product_k()) * x.d() - x.weighted_twists()
}

/// `H_F^{r-c-1} = ∏ k_i`.
pub fn fibre_deg(x: &RelativeCI) -> Int {
    int(x.product_k())
}

/// `α = c·(∏k_i)·d - r·Σ_i (∏_{j≠i}k_j)·y_i`.
pub fn alpha(x: &RelativeCI) -> Int {
    int(x.c() as i64) * int(x.product_k()) * x.d() - x.weighted_twists() * x.r()
}

/// Rank and `r·deg` of `f_*O_X(h)` in one pass over the Koszul terms.
fn koszul_sums(x: &RelativeCI, h: i64) -> (Int, Int) {
    let r = x.r();
    let d = x.d();
    let mut rank = Int::zero();
    let mut deg_r = Int::zero();
    if x.is_balanced() {
        // every |I| = i term has k_I = i·k; Σ_{|I|=i} y_I = C(c-1, i-1)·y_J
        let c = x.c() as i64;
        let k = x.k[0];
        let y_j = x.y_sum();
        for i in 0..=c {
            let b = binom_unchecked(h - i * k + r - 1, (r - 1) as u64);
            if b.is_zero() {
                continue;
            }
            let choose_c = binom_unchecked(c, i as u64);
            let choose_c1 = if i == 0 { Int::zero() } else { binom_unchecked(c - 1, (i - 1) as u64) };
            let weight = &choose_c * (h - i * k) * d + choose_c1 * y_j * r;
            if i % 2 == 0 {
                rank += &b * &choose_c;
                deg_r += b * weight;
            } else {
                rank -= &b * &choose_c;
                deg_r -= b * weight;
            }
        }
    } else {
        for subset in all_subsets(x.c()) {
            let k_i = subset.sum_of(&x.k);
            let b = binom_unchecked(h - k_i + r - 1, (r - 1) as u64);
            if b.is_zero() {
                continue;
            }
            let weight = int(h - k_i) * d + int(subset.sum_of(&x.y)) * r;
            if subset.len() % 2 == 0 {
                rank += &b;
                deg_r += b * weight;
            } else {
                rank -= &b;
                deg_r -= b * weight;
            }
        }
    }
    (rank, deg_r)
}

fn check_h(h: i64, min: i64) -> Result<()> {
    if h < min {
        return Err(Error::invalid("h", format!("must be >= {min}, got {h}")));
    }
    Ok(())
}

/// `rank f_*O_X(h) = h⁰(F, O_F(h))`.
pub fn rank_pf(x: &RelativeCI, h: i64) -> Result<Int> {
    check_h(h, 0)?;
    Ok(koszul_sums(x, h).0)
}

/// `deg f_*O_X(h)`. The formula carries a `/r` that always cancels; a
/// remainder is reported as an internal error.
pub fn deg_pf(x: &RelativeCI, h: i64) -> Result<Int> {
    check_h(h, 0)?;
    pushforward_deg(x, h, koszul_sums(x, h).1)
}

fn pushforward_deg(x: &RelativeCI, h: i64, deg_r: Int) -> Result<Int> {
    to_integer(&Rat::new(deg_r, int(x.r())), &format!("deg f_*O_X({h})"))
}

/// Rank and degree of `f_*O_X(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardSummary {
    pub h: i64,
    pub rank: Int,
    pub degree: Int,
}

pub fn pushforward(x: &RelativeCI, h: i64) -> Result<PushforwardSummary> {
    check_h(h, 0)?;
    let (rank, deg_r) = koszul_sums(x, h);
    Ok(PushforwardSummary { h, rank, degree: pushforward_deg(x, h, deg_r)? })
}

/// f-positivity margin of `O_X(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityReport {
    pub h: i64,
    pub rank: Int,
    pub degree: Int,
    /// `h^n·H_X^n·rank - n·h^{n-1}·H_F^{n-1}·deg`.
    pub e_cleared: Int,
    /// `e(O_X(h)) = e_cleared / rank`; absent when the rank vanishes.
    pub e_rational: Option<Rat>,
    pub sign: Sign,
}

impl PositivityReport {
    fn new(h: i64, rank: Int, degree: Int, e_cleared: Int) -> Result<Self> {
        let e_rational = (!rank.is_zero()).then(|| Rat::new(e_cleared.clone(), rank.clone()));
        let sign = Sign::of(&e_cleared);
        if let Some(e) = &e_rational {
            if Sign::of(e) != sign {
                return Err(Error::Internal(format!("sign of e(L) disagrees with cleared margin at h = {h}")));
            }
        }
        Ok(PositivityReport { h, rank, degree, e_cleared, e_rational, sign })
    }

    pub fn is_f_positive(&self) -> bool {
        self.sign.is_nonnegative()
    }
}

pub fn e_margin(x: &RelativeCI, h: i64) -> Result<PositivityReport> {
    check_h(h, 1)?;
    let pf = pushforward(x, h)?;
    let n = x.dim() as u32;
    let hh = int(h);
    let e = hh.pow(n) * h_top(x) * &pf.rank - int(x.dim()) * hh.pow(n - 1) * fibre_deg(x) * &pf.degree;
    PositivityReport::new(h, pf.rank, pf.degree, e)
}

/// `e_cleared / h^{n-1} = h·H_X^n·rank - n·P·deg`. Polynomial in `h` once
/// `h ≥ k_J - r + 1`.
pub fn reduced_margin(x: &RelativeCI, h: i64) -> Result<Int> {
    check_h(h, 1)?;
    let pf = pushforward(x, h)?;
    Ok(int(h) * h_top(x) * pf.rank - int(x.dim()) * fibre_deg(x) * pf.degree)
}

/// First abscissa of the stable regime used for interpolation.
pub fn stable_start(x: &RelativeCI) -> i64 {
    x.k_sum()
}

/// The exact polynomial `h ↦ e_cleared(h) / h^{n-1}` on the stable regime,
/// interpolated from `n + 2` samples starting at `h = k_J`.
pub fn stable_margin_polynomial(x: &RelativeCI) -> Result<UniPoly> {
    let start = stable_start(x);
    let samples = (start..start + x.dim() + 2)
        .map(|h| Ok((h, rat_int(reduced_margin(x, h)?))))
        .collect::<Result<Vec<_>>>()?;
    interpolate(&samples)
}

/// `K_f ≡ a·H_X - b·F` with `a = k_J - r`, `b = y_J - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalClass {
    pub a: i64,
    pub b: i64,
    /// `k_J > r`: canonical sheaf of the fibres is very ample.
    pub general_type_fibres: bool,
}

pub fn canonical_coeffs(x: &RelativeCI) -> CanonicalClass {
    let a = x.k_sum() - x.r();
    CanonicalClass { a, b: x.y_sum() - x.d(), general_type_fibres: a > 0 }
}

/// `K_f^{n} = a^n·H_X^n - n·a^{n-1}·b·P`, expanded with `F² = 0`.
pub fn kf_top(x: &RelativeCI) -> Int {
    let CanonicalClass { a, b, .. } = canonical_coeffs(x);
    let n = x.dim() as u32;
    let a = int(a);
    a.pow(n) * h_top(x) - int(x.dim()) * a.pow(n - 1) * b * fibre_deg(x)
}

/// The canonical slope margin computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeMargin {
    /// `k_J - r`.
    pub h: i64,
    pub kf_top: Int,
    /// `h⁰(F, K_F) = rank f_*ω_f`.
    pub rank: Int,
    /// `K_F^{n-1} = (k_J - r)^{n-1}·P`.
    pub kf_fibre_degree: Int,
    /// `deg f_*ω_f = deg f_*O_X(k_J - r) - (y_J - d)·rank`.
    pub deg_omega: Int,
    /// `K_f^n·rank - n·K_F^{n-1}·deg f_*ω_f`.
    pub direct: Int,
    /// Margin of `O_X(k_J - r)`; equal to `direct` by the twist lemma.
    pub via_twist: PositivityReport,
}

impl SlopeMargin {
    pub fn sign(&self) -> Sign {
        Sign::of(&self.direct)
    }
}

fn require_general_type(x: &RelativeCI) -> Result<i64> {
    let h = x.k_sum() - x.r();
    if h < 1 {
        return Err(Error::hypothesis(
            "k_J > r",
            format!("k_J = {} <= r = {}: K_f is not relatively ample", x.k_sum(), x.r()),
        ));
    }
    Ok(h)
}

pub fn slope_margin(x: &RelativeCI) -> Result<SlopeMargin> {
    let h = require_general_type(x)?;
    let CanonicalClass { b, .. } = canonical_coeffs(x);
    let n = x.dim();
    let pf = pushforward(x, h)?;
    let kf = kf_top(x);
    let kf_fibre_degree = int(h).pow((n - 1) as u32) * fibre_deg(x);
    let deg_omega = &pf.degree - int(b) * &pf.rank;
    let direct = &kf * &pf.rank - int(n) * &kf_fibre_degree * &deg_omega;
    let via_twist = e_margin(x, h)?;
    if direct != via_twist.e_cleared {
        return Err(Error::Internal(format!(
            "twist identity violated: direct canonical margin {direct} != margin of O_X({h}) {}",
            via_twist.e_cleared
        )));
    }
    Ok(SlopeMargin { h, kf_top: kf, rank: pf.rank, kf_fibre_degree, deg_omega, direct, via_twist })
}

fn require_balanced(x: &RelativeCI) -> Result<i64> {
    if !x.is_balanced() {
        return Err(Error::hypothesis("balanced", format!("degrees {:?} are not all equal", x.k())));
    }
    Ok(x.k[0])
}

fn alternating_binoms(h: i64, k: i64, r: i64, count: i64, shift: i64) -> Int {
    (0..=count)
        .map(|i| {
            let term = binom_unchecked(count, i as u64) * binom_unchecked(h - (i + shift) * k + r - 1, (r - 1) as u64);
            if i % 2 == 0 { term } else { -term }
        })
        .sum()
}

/// Balanced closed form of the margin of `O_X(h)`, multiplied by `r`:
///
/// `α·k^{c-1}·[ h·Σ_{i=0}^{c} (-1)^i C(c,i) b(h-ik) - k(r-c)·Σ_{i=0}^{c-1} (-1)^i C(c-1,i) b(h-(i+1)k) ]`
///
/// with `b(m) = C(m+r-1, r-1)` truncated. It satisfies
/// `balanced_margin · h^{n-1} = r·k^{c-1}·e_cleared`.
pub fn balanced_margin(x: &RelativeCI, h: i64) -> Result<Int> {
    let k = require_balanced(x)?;
    check_h(h, 1)?;
    let (r, c) = (x.r(), x.c() as i64);
    let bracket = int(h) * alternating_binoms(h, k, r, c, 0) - int(k * (r - c)) * alternating_binoms(h, k, r, c - 1, 1);
    Ok(alpha(x) * int(k).pow((c - 1) as u32) * bracket)
}

/// The bracket of the balanced formula in its commonly quoted form, with
/// `+k(r-c)·Σ (-1)^i C(c-1,i) b(h-ik)` as second term. This is not
/// proportional to the margin; kept for comparison only.
pub fn balanced_bracket_as_printed(x: &RelativeCI, h: i64) -> Result<Int> {
    let k = require_balanced(x)?;
    check_h(h, 1)?;
    let (r, c) = (x.r(), x.c() as i64);
    Ok(int(h) * alternating_binoms(h, k, r, c, 0) + int(k * (r - c)) * alternating_binoms(h, k, r, c - 1, 0))
}

/// Closed forms for surfaces (`c = r - 2`, balanced, `ck > r`) checked
/// against the general computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnokizonoCheck {
    /// `α' = c·d·k - r·y_J`.
    pub alpha_prime: Int,
    /// `((r-2)k - r)(k-1)k^{r-3}·α'`.
    pub kf2_formula: Int,
    /// `((3r-5)k - 3r + 1)(k-1)k^{r-3}·α' / 24`.
    pub degpf_formula: Rat,
    pub kf2_direct: Int,
    pub degpf_direct: Int,
    pub kf2_matches: bool,
    pub degpf_matches: bool,
    /// `K_f²·((3r-5)k - 3r + 1) = 24((r-2)k - r)·deg f_*ω_f`.
    pub ratio_holds: bool,
}

pub fn enokizono(x: &RelativeCI) -> Result<EnokizonoCheck> {
    let k = require_balanced(x)?;
    let (r, c) = (x.r(), x.c() as i64);
    if c != r - 2 {
        return Err(Error::hypothesis("c = r - 2", format!("X is not a surface (c = {c}, r = {r})")));
    }
    if c * k <= r {
        return Err(Error::hypothesis("ck > r", format!("ck = {} <= r = {r}", c * k)));
    }
    let slope = slope_margin(x)?;
    let alpha_prime = int(c * x.d() * k - r * x.y_sum());
    let common = int(k - 1) * int(k).pow((r - 3) as u32) * &alpha_prime;
    let kf2_formula = int((r - 2) * k - r) * &common;
    let deg_const = (3 * r - 5) * k - 3 * r + 1;
    let degpf_formula = Rat::new(int(deg_const) * &common, int(24));
    let kf2_matches = kf2_formula == slope.kf_top;
    let degpf_matches = degpf_formula == rat_int(slope.deg_omega.clone());
    let ratio_holds = &slope.kf_top * deg_const == int(24 * ((r - 2) * k - r)) * &slope.deg_omega;
    Ok(EnokizonoCheck {
        alpha_prime,
        kf2_formula,
        degpf_formula,
        kf2_direct: slope.kf_top,
        degpf_direct: slope.deg_omega,
        kf2_matches,
        degpf_matches,
        ratio_holds,
    })
}

/// `(ck - r)^{n-1}(k-1)·α`, the balanced closed form of `K_f^n`.
pub fn kf_top_balanced(x: &RelativeCI) -> Result<Int> {
    let k = require_balanced(x)?;
    let a = int(x.c() as i64 * k - x.r());
    Ok(a.pow((x.dim() - 1) as u32) * (k - 1) * alpha(x))
}

/// `h^{n-1}·(h/r)·C(h+r-1, r-1)·α`: the margin for `h < min k_i`.
pub fn small_h_margin(x: &RelativeCI, h: i64) -> Result<Int> {
    check_h(h, 1)?;
    let r = x.r();
    let num = int(h).pow(x.dim() as u32) * binom_unchecked(h + r - 1, (r - 1) as u64) * alpha(x);
    to_integer(&Rat::new(num, int(r)), "small-h margin")
}
