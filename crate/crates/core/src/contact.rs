//! Degrees of contact and the Hilbert–Mumford inequality, at the level of
//! formulas: `e_F` values are inputs, not computed from Chow forms.
//!
//! For a cycle `T ⊂ P^n` and a weighted filtration with weights `r_0..r_n`,
//! `T` passes the test for that filtration when
//! `e_F(T) / ((dim T + 1)·deg T) ≤ (Σ r_i) / (n + 1)`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactInstance {
    pub ambient_n: i64,
    pub dim: i64,
    pub deg: i64,
    pub e_f: Rat,
}

impl ContactInstance {
    pub fn new(ambient_n: i64, dim: i64, deg: i64, e_f: Rat) -> Result<Self> {
        if ambient_n < 0 {
            return Err(Error::invalid("ambient_n", format!("must be >= 0, got {ambient_n}")));
        }
        if !(0..=ambient_n).contains(&dim) {
            return Err(Error::invalid("dim", format!("must lie in 0..={ambient_n}, got {dim}")));
        }
        if deg < 1 {
            return Err(Error::invalid("deg", format!("must be >= 1, got {deg}")));
        }
        Ok(ContactInstance { ambient_n, dim, deg, e_f })
    }

    /// `e_F / ((dim + 1)·deg)`.
    pub fn normalized_weight(&self) -> Rat {
        &self.e_f / rat_int((self.dim + 1) * self.deg)
    }

    /// The largest `e_F` passing the semistable test for `weights`.
    pub fn semistable_bound(&self, weights: &WeightFiltration) -> Rat {
        weights.average() * rat_int((self.dim + 1) * self.deg)
    }
}

/// Weights `r_0..r_n` of a one-parameter subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    weights: Vec<Rat>,
}

impl WeightFiltration {
    pub fn new(weights: Vec<Rat>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("weights", "need n + 1 >= 1 weights"));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::invalid("weights", "weights must be nonnegative"));
        }
        if weights.iter().all(Zero::is_zero) {
            return Err(Error::invalid("weights", "weights must not all vanish"));
        }
        Ok(WeightFiltration { weights })
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn ambient_n(&self) -> i64 {
        self.weights.len() as i64 - 1
    }

    pub fn total(&self) -> Rat {
        self.weights.iter().sum()
    }

    /// `(Σ r_i) / (n + 1)`.
    pub fn average(&self) -> Rat {
        self.total() / rat_int(self.weights.len() as i64)
    }
}

/// Outcome of the Hilbert–Mumford test for a single filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HmOutcome {
    Stable,
    Semistable,
    Unstable,
}

impl HmOutcome {
    pub fn at_most_semistable(self) -> bool {
        self != HmOutcome::Unstable
    }
}

fn check_ambient(t: &ContactInstance, w: &WeightFiltration) -> Result<()> {
    if t.ambient_n != w.ambient_n() {
        return Err(Error::invalid(
            "weights",
            format!("{} weights given for P^{}", w.weights.len(), t.ambient_n),
        ));
    }
    Ok(())
}

/// Strictly below the bound: `Stable`; on it: `Semistable`; above: `Unstable`.
pub fn hm_test(t: &ContactInstance, w: &WeightFiltration) -> Result<HmOutcome> {
    check_ambient(t, w)?;
    Ok(match t.normalized_weight().cmp(&w.average()) {
        Ordering::Less => HmOutcome::Stable,
        Ordering::Equal => HmOutcome::Semistable,
        Ordering::Greater => HmOutcome::Unstable,
    })
}

/// Degree of contact of a proper intersection:
/// `e_F(Y·Z) = deg Y·e_F(Z) + deg Z·e_F(Y) - deg Y·deg Z·Σ r_i`.
pub fn contact_of_intersection(y: &ContactInstance, z: &ContactInstance, w: &WeightFiltration) -> Result<ContactInstance> {
    check_ambient(y, w)?;
    check_ambient(z, w)?;
    let n = y.ambient_n;
    let dim = y.dim + z.dim - n;
    if dim < 0 {
        return Err(Error::invalid(
            "dim",
            format!("dim Y + dim Z = {} < n = {n}: intersection cannot be proper", y.dim + z.dim),
        ));
    }
    let e_f = rat_int(y.deg) * &z.e_f + rat_int(z.deg) * &y.e_f - rat_int(y.deg * z.deg) * w.total();
    ContactInstance::new(n, dim, y.deg * z.deg, e_f)
}

/// Result of checking that semistability passes to the intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationCheck {
    pub intersection: ContactInstance,
    pub outcome: HmOutcome,
    /// Semistable inputs give an at-most-semistable intersection.
    pub holds: bool,
    /// A stable input gives a stable intersection.
    pub strict_holds: bool,
}

/// Inputs that fail the semistable test are reported as an error, not
/// asserted.
pub fn intersection_semistability_check(y: &ContactInstance, z: &ContactInstance, w: &WeightFiltration) -> Result<PropagationCheck> {
    let oy = hm_test(y, w)?;
    let oz = hm_test(z, w)?;
    if !oy.at_most_semistable() || !oz.at_most_semistable() {
        return Err(Error::hypothesis(
            "semistable inputs",
            format!("Y is {oy:?}, Z is {oz:?} for this filtration"),
        ));
    }
    let intersection = contact_of_intersection(y, z, w)?;
    let outcome = hm_test(&intersection, w)?;
    let strict_expected = oy == HmOutcome::Stable || oz == HmOutcome::Stable;
    Ok(PropagationCheck {
        holds: outcome.at_most_semistable(),
        strict_holds: !strict_expected || outcome == HmOutcome::Stable,
        intersection,
        outcome,
    })
}
