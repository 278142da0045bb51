//! Exact arithmetic layer: rationals, truncated binomials, subset streams and
//! polynomial interpolation.
//!
//! Everything here is exact. There is no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rat = BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// Converts a rational to an integer, failing if it is not integral.
pub fn to_integer(q: &Rat, what: &str) -> Result<Int> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Internal(format!("{what} is not integral: {q}")))
    }
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_nonnegative(self) -> bool {
        self != Sign::Negative
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Binomial coefficient with the truncation convention: `C(n, m) = 0`
/// whenever `n < m`, including every negative `n`.
pub fn binom_trunc(n: i64, m: i64) -> Result<Int> {
    if m < 0 {
        return Err(Error::invalid("m", format!("lower index must be >= 0, got {m}")));
    }
    Ok(binom_unchecked(n, m as u64))
}

pub(crate) fn binom_unchecked(n: i64, m: u64) -> Int {
    if n < 0 || (n as u64) < m {
        return Int::zero();
    }
    let n = n as u64;
    let m = m.min(n - m);
    let mut acc = Int::one();
    for i in 0..m {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// A subset `I` of `{1, …, c}`, stored as strictly increasing zero-based
/// positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    positions: Vec<usize>,
}

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex { positions: Vec::new() }
    }

    /// Builds a subset from zero-based positions; they must be strictly
    /// increasing and below `c`.
    pub fn new(positions: Vec<usize>, c: usize) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("multi-index", "positions must be strictly increasing"));
        }
        if positions.last().is_some_and(|&p| p >= c) {
            return Err(Error::invalid("multi-index", format!("position out of range 0..{c}")));
        }
        Ok(MultiIndex { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `Σ_{i ∈ I} values[i]`; zero for the empty subset.
    pub fn sum_of(&self, values: &[i64]) -> i64 {
        self.positions.iter().map(|&p| values[p]).sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, p) in self.positions.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str("}")
    }
}

/// Streams the `C(c, l)` subsets of size `l` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Subsets {
    c: usize,
    current: Option<Vec<usize>>,
}

pub fn subsets_of_size(c: usize, l: usize) -> Subsets {
    Subsets {
        c,
        current: (l <= c).then(|| (0..l).collect()),
    }
}

impl Iterator for Subsets {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.current.as_mut()?;
        let out = MultiIndex { positions: current.clone() };
        let l = current.len();
        // advance to the next combination
        let mut i = l;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if current[i] < self.c - l + i {
                current[i] += 1;
                for j in i + 1..l {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Every subset of `{1, …, c}`, grouped by size.
pub fn all_subsets(c: usize) -> impl Iterator<Item = MultiIndex> {
    (0..=c).flat_map(move |l| subsets_of_size(c, l))
}

/// Univariate polynomial with rational coefficients, index = power.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `h^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Multiplies by `(h - root)`.
    fn mul_linear(&self, root: &Rat) -> UniPoly {
        let mut out = vec![Rat::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        UniPoly::from_coeffs(out)
    }

    fn add_scaled(&mut self, other: &UniPoly, scale: &Rat) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rat::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * scale;
        }
        self.trim();
    }

    /// Cauchy bound: every real root lies in `|h| < 1 + max |a_i / a_lead|`.
    /// `None` for constants (no roots, or identically zero).
    pub fn root_bound(&self) -> Option<Rat> {
        let deg = self.degree().filter(|&d| d > 0)?;
        let lead = &self.coeffs[deg];
        let max = self.coeffs[..deg]
            .iter()
            .map(|a| (a / lead).abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Some(Rat::one() + max)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    f.write_str("h")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exact interpolation through `(x, y)` samples (Newton divided differences).
/// Returns the unique polynomial of degree `< samples.len()`.
pub fn interpolate(samples: &[(i64, Rat)]) -> Result<UniPoly> {
    if samples.is_empty() {
        return Err(Error::invalid("samples", "at least one sample is required"));
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(x2, _)| x2 == x) {
            return Err(Error::invalid("samples", format!("duplicate abscissa {x}")));
        }
    }
    let xs: Vec<Rat> = samples.iter().map(|(x, _)| rat_int(*x)).collect();
    let mut table: Vec<Rat> = samples.iter().map(|(_, y)| y.clone()).collect();
    let n = table.len();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut result = UniPoly::zero();
    let mut basis = UniPoly::constant(Rat::one());
    for (i, coeff) in table.iter().enumerate() {
        result.add_scaled(&basis, coeff);
        basis = basis.mul_linear(&xs[i]);
    }
    Ok(result)
}
