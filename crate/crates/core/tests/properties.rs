//! Invariants over generated fuzzy numbers, checked with proptest.

use fuzzymetric::generators::{random_fuzzy, GenSpec};
use fuzzymetric::oracle::{oracle_D, oracle_Gamma};
use fuzzymetric::{
    add, convex_combo, from_json_str, level_distance, metric_D, metric_Gamma, metric_dinf, metric_dq,
    to_json_string, FuzzyNumber,
};
use proptest::prelude::*;

fn number(seed: u64, dim: usize) -> FuzzyNumber {
    random_fuzzy(seed, dim, 4, 1.0).expect("generated numbers are valid")
}

fn pair() -> impl Strategy<Value = (FuzzyNumber, FuzzyNumber)> {
    (any::<u64>(), any::<u64>(), 1usize..=2).prop_map(|(a, b, dim)| (number(a, dim), number(b, dim)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_cuts_are_nested(seed in any::<u64>(), dim in 1usize..=2, levels in 2usize..=6) {
        let u = random_fuzzy(seed, dim, levels, 3.0).unwrap();
        let alphas: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        for w in alphas.windows(2) {
            let (lo, hi) = (u.cut_at(w[0]).unwrap(), u.cut_at(w[1]).unwrap());
            prop_assert!(lo.contains_cut(&hi, 1e-9));
        }
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), dim in 1usize..=2) {
        prop_assert_eq!(number(seed, dim), number(seed, dim));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), dim in 1usize..=2) {
        let u = number(seed, dim);
        prop_assert_eq!(from_json_str(&to_json_string(&u)).unwrap(), u);
    }

    #[test]
    fn spec_strings_round_trip(seed in any::<u64>(), dim in 1usize..=2, levels in 2usize..=6) {
        let spec = GenSpec::Random { seed, dim, levels, scale: 2.5 };
        prop_assert_eq!(spec.to_string().parse::<GenSpec>().unwrap(), spec);
    }

    #[test]
    fn metrics_are_symmetric((u, v) in pair()) {
        let h = 0.02;
        let (a, b) = (metric_D(&u, &v, h).unwrap(), metric_D(&v, &u, h).unwrap());
        prop_assert!(a.overlaps(&b, 1e-9));
        let (a, b) = (metric_Gamma(&u, &v, h).unwrap(), metric_Gamma(&v, &u, h).unwrap());
        prop_assert!(a.overlaps(&b, 1e-9));
        prop_assert_eq!(metric_dinf(&u, &v).unwrap(), metric_dinf(&v, &u).unwrap());
        let (a, b) = (metric_dq(&u, &v, 2.0, 16).unwrap(), metric_dq(&v, &u, 2.0, 16).unwrap());
        prop_assert!(a.overlaps(&b, 1e-9));
    }

    #[test]
    fn enclosures_have_the_requested_width((u, v) in pair(), h in 0.005f64..0.1) {
        prop_assert!(metric_D(&u, &v, h).unwrap().half_width <= 0.5 * h + 1e-12);
        prop_assert!(metric_Gamma(&u, &v, h).unwrap().half_width <= 0.5 * h + 1e-12);
    }

    #[test]
    fn chain_holds_pointwise((u, v) in pair()) {
        let g = metric_Gamma(&u, &v, 0.01).unwrap();
        let d = metric_D(&u, &v, 0.01).unwrap();
        let s = metric_dinf(&u, &v).unwrap();
        let q = metric_dq(&u, &v, 2.0, 32).unwrap();
        prop_assert!(g.lower() <= d.upper() + 1e-9);
        prop_assert!(d.lower() <= s.upper() + 1e-9);
        prop_assert!(q.lower() <= s.upper() + 1e-9);
        prop_assert!(g.lower() <= 1.0 + 1e-9);
    }

    #[test]
    fn dinf_dominates_every_level((u, v) in pair(), alpha in 0.0f64..=1.0) {
        let s = metric_dinf(&u, &v).unwrap().value;
        prop_assert!(level_distance(&u, &v, alpha).unwrap() <= s + 1e-12);
    }

    #[test]
    fn sums_and_combinations_stay_valid((u, v) in pair(), t in 0.0f64..=1.0) {
        let w = convex_combo(t, &u, &v).unwrap();
        let s = add(&[u.clone(), v.clone()]).unwrap();
        prop_assert!(w.support().contains_cut(w.core(), 1e-9));
        prop_assert!(s.support().contains_cut(s.core(), 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fast_path_agrees_with_oracle((u, v) in pair()) {
        let h = 0.02 * fuzzymetric::joint_diameter(&[&u, &v]);
        let fast = metric_D(&u, &v, h).unwrap();
        let slow = oracle_D(&u, &v, h).unwrap();
        prop_assert!(fast.overlaps(&slow, 1e-9), "D fast {fast} oracle {slow}");
        let fast = metric_Gamma(&u, &v, h).unwrap();
        let slow = oracle_Gamma(&u, &v, h, 1.0).unwrap();
        prop_assert!(fast.overlaps(&slow, 1e-9), "Gamma fast {fast} oracle {slow}");
    }
}

/// Every generated value passes validation, over 10^4 seeds.
#[test]
fn generator_fuzz() {
    for seed in 0..10_000u64 {
        let dim = 1 + (seed % 2) as usize;
        let levels = 2 + (seed % 5) as usize;
        let scale = [0.1, 1.0, 100.0][(seed % 3) as usize];
        let u = random_fuzzy(seed, dim, levels, scale).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(u.dim(), dim);
        assert!(u.support().contains_cut(u.core(), 1e-9), "seed {seed}");
    }
}
