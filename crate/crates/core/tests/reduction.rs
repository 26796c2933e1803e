mod common;

use common::{persistence_oracle, random_complex};
use phkit::complex::{boundary_matrix, euler_characteristic};
use phkit::datasets::SplitMix64;
use phkit::reduction::{betti_numbers, compute_barcode, Algorithm};
use proptest::prelude::*;

fn intervals(k: &phkit::complex::FilteredComplex, alg: Algorithm) -> Vec<(usize, f64, f64)> {
    compute_barcode(k, alg, true).intervals().iter().map(|i| (i.dim, i.birth, i.death)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algorithms_agree_with_oracle(seed in any::<u64>(), size in 3usize..40) {
        let mut rng = SplitMix64::new(seed);
        let k = random_complex(&mut rng, size, 3);
        let want = persistence_oracle(&k);
        for alg in [Algorithm::Standard, Algorithm::Twist, Algorithm::Dual] {
            let state = alg.reduce(&boundary_matrix(&k), &k.dims());
            prop_assert!(state.is_partition());
            prop_assert_eq!(intervals(&k, alg), want.clone());
        }
    }

    #[test]
    fn euler_is_alternating_betti_sum(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let k = random_complex(&mut rng, 60, 3);
        let betti = betti_numbers(&k);
        let alt: i64 = betti.iter().enumerate().map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alt, euler_characteristic(&k));
    }

    #[test]
    fn standard_reduction_is_reduced(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let k = random_complex(&mut rng, 60, 3);
        let state = Algorithm::Standard.reduce(&boundary_matrix(&k), &k.dims());
        prop_assert!(state.is_reduced());
        // every pair (i, j) has low(j) = i
        for &(i, j) in state.pairs() {
            prop_assert_eq!(state.low(j), Some(i));
        }
    }

    #[test]
    fn keeping_zero_length_only_adds_empty_intervals(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let k = random_complex(&mut rng, 60, 3);
        let kept = compute_barcode(&k, Algorithm::Twist, false);
        let dropped = compute_barcode(&k, Algorithm::Twist, true);
        let nonzero: Vec<_> = kept.intervals().iter().filter(|i| i.birth < i.death).copied().collect();
        prop_assert_eq!(nonzero, dropped.intervals().to_vec());
        prop_assert_eq!(kept.len() * 2 - kept.intervals().iter().filter(|i| i.is_essential()).count(), k.len());
    }
}
