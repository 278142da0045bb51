//! Fixtures shared by the benchmarks in `benches/`.

use relci::bundle::BundleOverCurve;
use relci::oracles::SplitBundle;
use relci::RelativeCI;

/// Balanced instance with `c` hypersurfaces of degree `k` in `P(E)`,
/// `E` semistable of rank `r` and degree `r`.
pub fn balanced(r: i64, c: usize, k: i64) -> RelativeCI {
    let y = (1..=c as i64).collect();
    RelativeCI::new(BundleOverCurve::semistable(r, r).unwrap(), vec![k; c], y).unwrap()
}

/// Unbalanced instance on a split bundle of rank 5.
pub fn split_instance() -> (SplitBundle, RelativeCI) {
    let split = SplitBundle::new(vec![3, 1, 0, 0, -2]).unwrap();
    let x = RelativeCI::new(split.to_bundle(0).unwrap(), vec![2, 3, 4], vec![1, -2, 3]).unwrap();
    (split, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(balanced(8, 3, 5).is_balanced());
        let (split, x) = split_instance();
        assert_eq!(split.degree(), x.d());
    }
}
