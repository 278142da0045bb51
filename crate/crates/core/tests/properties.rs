//! Randomized invariants across modules.

use num_traits::Signed;
use proptest::prelude::*;

use relci::bundle::{ci_class, classify, mn_divisor_test, BundleOverCurve, CycleClass, HnBlock};
use relci::contact::{intersection_semistability_check, ContactInstance, HmOutcome, WeightFiltration};
use relci::exact::{rat, rat_int, Rat, Sign};
use relci::invariants::{self as inv, RelativeCI};
use relci::oracles::{self, SplitBundle};
use relci::verdicts::{h_sweep, small_h_verdict, Conclusion};

fn hn_profile() -> impl Strategy<Value = BundleOverCurve> {
    // strictly decreasing slopes: pick ranks, then degrees from increasing gaps
    prop::collection::vec((1i64..4, 0i64..6), 1..5).prop_filter_map("slopes must decrease", |blocks| {
        let mut hn = Vec::new();
        let mut prev: Option<Rat> = None;
        let mut base = 10i64;
        for (rank, gap) in blocks {
            base -= gap;
            let block = HnBlock::new(rank, base * rank + (gap % rank));
            if prev.as_ref().is_some_and(|p| block.slope() >= *p) {
                return None;
            }
            prev = Some(block.slope());
            hn.push(block);
        }
        let r: i64 = hn.iter().map(|b| b.rank).sum();
        let d: i64 = hn.iter().map(|b| b.degree).sum();
        BundleOverCurve::new(r, d, 1, Some(hn)).ok().filter(|e| e.rank() >= 2)
    })
}

fn relative_ci() -> impl Strategy<Value = RelativeCI> {
    (3i64..8, -10i64..10).prop_flat_map(|(r, d)| {
        (1usize..=(r as usize - 2)).prop_flat_map(move |c| {
            (prop::collection::vec(2i64..6, c), prop::collection::vec(-10i64..10, c)).prop_map(move |(k, y)| {
                RelativeCI::new(BundleOverCurve::semistable(r, d).unwrap(), k, y).unwrap()
            })
        })
    })
}

fn split_ci() -> impl Strategy<Value = (SplitBundle, RelativeCI)> {
    prop::collection::vec(-4i64..=4, 3..=5).prop_flat_map(|degrees| {
        let s = SplitBundle::new(degrees).unwrap();
        let c_max = s.rank() as usize - 2;
        (Just(s), 1..=c_max).prop_flat_map(|(s, c)| {
            (Just(s), prop::collection::vec(2i64..=5, c), prop::collection::vec(-4i64..=4, c)).prop_map(|(s, k, y)| {
                let x = RelativeCI::new(s.to_bundle(0).unwrap(), k, y).unwrap();
                (s, x)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn virtual_slopes_sum_to_degree(e in hn_profile()) {
        let total: Rat = e.virtual_slopes().unwrap().iter().sum();
        prop_assert_eq!(total, rat_int(e.degree()));
    }

    #[test]
    fn cone_thresholds_nest(e in hn_profile()) {
        let semistable = e.hn().unwrap().len() == 1;
        for c in 1..e.rank() as usize {
            let th = e.thresholds(c).unwrap();
            prop_assert!(th.nef <= th.bridge && th.bridge <= th.pseff);
            prop_assert_eq!(th.nef < th.bridge, !semistable);
            prop_assert_eq!(th.bridge < th.pseff, !semistable);
        }
        let th1 = e.thresholds(1).unwrap();
        prop_assert_eq!(th1.pseff, e.mu_max().unwrap());
        prop_assert_eq!(th1.nef, e.mu_min().unwrap());
    }

    #[test]
    fn mn_agrees_with_codim_one_cones(e in hn_profile(), k in 1i64..6, m in -20i64..20) {
        let test = mn_divisor_test(&e, k, m).unwrap();
        let class = CycleClass::new(1, rat_int(k), rat_int(-m));
        let region = classify(&e, &class).unwrap();
        use relci::Region::*;
        prop_assert_eq!(test.pseff, region != OutsidePseff);
        prop_assert_eq!(test.nef, matches!(region, InsideNef | NefBoundary));
    }

    #[test]
    fn classify_is_scale_invariant(e in hn_profile(), p in 1i64..20, q in -60i64..20, s in 1i64..9) {
        let c = 1.max(e.rank() as usize / 2);
        let a = classify(&e, &CycleClass::new(c, rat_int(p), rat_int(q))).unwrap();
        let b = classify(&e, &CycleClass::new(c, rat(p * s, 3), rat(q * s, 3))).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn degree_is_integral_and_matches_oracles((s, x) in split_ci()) {
        for h in 0..=x.k_sum() + x.r() {
            let rank = inv::rank_pf(&x, h).unwrap();
            prop_assert_eq!(&rank, &oracles::hilbert_series_rank(x.k(), x.r(), h).unwrap());
            if h <= 12 {
                prop_assert_eq!(inv::deg_pf(&x, h).unwrap(), oracles::koszul_degree_bruteforce(&s, &x, h).unwrap());
            }
        }
    }

    #[test]
    fn sym_degree_closed_form((s, _x) in split_ci(), a in 0i64..=12, twist in -6i64..6) {
        prop_assert_eq!(
            oracles::sym_degree_bruteforce(&s, a, twist).unwrap(),
            oracles::sym_degree_closed_form(s.rank(), s.degree(), a, twist).unwrap()
        );
    }

    #[test]
    fn chow_expansion_matches_closed_forms(x in relative_ci()) {
        let e = oracles::chow_expand(&x).unwrap();
        prop_assert_eq!(e.h_top, inv::h_top(&x));
        prop_assert_eq!(e.fibre_deg, inv::fibre_deg(&x));
        prop_assert_eq!(e.kf_top, inv::kf_top(&x));
        prop_assert_eq!(e.class, ci_class(&x));
    }

    #[test]
    fn small_h_band_sign_follows_alpha(x in relative_ci()) {
        let a = inv::alpha(&x);
        for h in 1..x.min_k() {
            let m = inv::e_margin(&x, h).unwrap();
            prop_assert_eq!(m.sign, Sign::of(&a));
        }
        let v = small_h_verdict(&x).unwrap();
        let expected = if a.is_negative() { Conclusion::NotFPositiveSmallH } else { Conclusion::FPositiveAllSmallH };
        prop_assert_eq!(v.conclusion, expected);
    }

    #[test]
    fn hypersurface_sweep_has_constant_sign(r in 3i64..8, d in -10i64..10, k in 2i64..7, y in -10i64..10) {
        let x = RelativeCI::new(BundleOverCurve::semistable(r, d).unwrap(), vec![k], vec![y]).unwrap();
        let sweep = h_sweep(&x, 3 * k).unwrap();
        let expected = Sign::of(&inv::alpha(&x));
        prop_assert!(sweep.reports.iter().all(|m| m.sign == expected));
        prop_assert_eq!(sweep.eventual_sign, expected);
    }

    #[test]
    fn sweep_sign_is_constant_past_h0(x in relative_ci()) {
        let sweep = h_sweep(&x, 1).unwrap();
        for h in sweep.h0 + 1..sweep.h0 + 6 {
            let value = sweep.stable_polynomial.eval(&rat_int(h));
            prop_assert_eq!(Sign::of(&value), sweep.eventual_sign);
            prop_assert_eq!(inv::e_margin(&x, h).unwrap().sign, sweep.eventual_sign);
        }
    }

    #[test]
    fn semistability_propagates(
        n in 2i64..7,
        weights in prop::collection::vec(0i64..6, 7),
        dims in (0i64..7, 0i64..7),
        degs in (1i64..6, 1i64..6),
        slack in (0i64..4, 0i64..4),
    ) {
        let w: Vec<Rat> = weights[..=n as usize].iter().map(|&v| rat_int(v)).collect();
        prop_assume!(w.iter().any(|v| v.is_positive()));
        let w = WeightFiltration::new(w).unwrap();
        let (dy, dz) = (dims.0.min(n), dims.1.min(n));
        prop_assume!(dy + dz >= n);
        let make = |dim, deg, s: i64| {
            let t = ContactInstance::new(n, dim, deg, rat_int(0)).unwrap();
            ContactInstance::new(n, dim, deg, t.semistable_bound(&w) - rat(s, 2)).unwrap()
        };
        let y = make(dy, degs.0, slack.0);
        let z = make(dz, degs.1, slack.1);
        let check = intersection_semistability_check(&y, &z, &w).unwrap();
        prop_assert!(check.holds && check.strict_holds);
        if slack.0 == 0 && slack.1 == 0 {
            prop_assert_eq!(check.outcome, HmOutcome::Semistable);
        }
    }
}
