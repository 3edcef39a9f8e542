mod common;

use common::*;
use latfuse_core::ctc::{build_blank_remover, collapse, ctc_lattice};
use latfuse_core::wfst::{shortest_distance, shortest_path};
use latfuse_core::Label;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lattice_matches_frame_path_enumeration(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_posteriors(&mut rng, 6, 4);
        let l = ctc_lattice(&y, f64::INFINITY).unwrap();
        prop_assert!(l.is_deterministic());
        let want = brute_force_ctc(&y);
        let got = enumerate(&l);
        prop_assert!(same_map(&got, &want, 1e-9), "{:?}\n{:?}", got, want);
        prop_assert!(shortest_distance(&l).unwrap().value().abs() < 1e-9);
    }

    #[test]
    fn best_path_is_the_most_probable_string(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_posteriors(&mut rng, 5, 3);
        let l = ctc_lattice(&y, f64::INFINITY).unwrap();
        let want = brute_force_ctc(&y);
        let best = want.values().copied().fold(f64::INFINITY, f64::min);
        let p = shortest_path(&l).unwrap();
        prop_assert!((p.cost.value() - best).abs() < 1e-9);
        prop_assert!((want[&p.labels] - best).abs() < 1e-9);
    }

    #[test]
    fn remover_agrees_with_collapse(frames in proptest::collection::vec(1u32..=3, 0..8)) {
        let b = build_blank_remover(&[1, 2, 3], 3);
        let mut q = b.start().unwrap();
        let mut out: Vec<Label> = Vec::new();
        for &x in &frames {
            let e = b.arcs(q).iter().find(|e| e.ilabel == x).unwrap();
            if e.olabel != 0 {
                out.push(e.olabel);
            }
            q = e.next;
        }
        prop_assert_eq!(out, collapse(&frames, 3));
    }
}
