//! Property suites: metric axioms, traversal-vs-oracle agreement, symmetry
//! invariance, the three frame-transformation laws on randomized frames,
//! covering-radius preservation under lifting, greedy-path convexity, and
//! the seller-value ceiling on random frames.

use num::One;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nml_core::bounds;
use nml_core::constructions::{extend_length, fold_alphabet, lift_code, split_symbols};
use nml_core::nm;
use nml_core::rational::{ratio_u64, Rational};
use nml_core::search::{self, SearchMode, SearchOptions};
use nml_core::space::{
    apply_coordinate_permutation, apply_symbol_permutations, hamming_distance, neighbors,
    space_size, OutcomeIndex,
};
use nml_core::{Limits, LotteryFrame};

fn lim() -> Limits {
    Limits::default()
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

/// A random frame with the given shape and a uniformly sized winning set.
fn random_frame_with_n(rng: &mut ChaCha8Rng, q: u32, n: u32) -> LotteryFrame {
    let space = (q as u64).pow(n);
    let w_count = rng.gen_range(1..=space);
    let mut all: Vec<u64> = (0..space).collect();
    all.shuffle(rng);
    all.truncate(w_count as usize);
    LotteryFrame::new(q, n, all.into_iter().map(OutcomeIndex).collect()).unwrap()
}

/// A random frame over the given alphabet with q^n bounded.
fn random_frame(rng: &mut ChaCha8Rng, q: u32, max_space: u64) -> LotteryFrame {
    let mut max_n = 1;
    while (q as u64).pow(max_n + 1) <= max_space {
        max_n += 1;
    }
    let n = rng.gen_range(1..=max_n);
    random_frame_with_n(rng, q, n)
}

proptest! {
    #[test]
    fn metric_axioms(
        n in 1usize..8,
        q in 2u32..8,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vector = |rng: &mut ChaCha8Rng| -> Vec<u32> {
            (0..n).map(|_| rng.gen_range(0..q)).collect()
        };
        let (x, y, z) = (vector(&mut rng), vector(&mut rng), vector(&mut rng));
        let dxy = hamming_distance(&x, &y).unwrap();
        let dyx = hamming_distance(&y, &x).unwrap();
        let dxz = hamming_distance(&x, &z).unwrap();
        let dzy = hamming_distance(&z, &y).unwrap();
        prop_assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
        prop_assert_eq!(dxy, dyx);
        prop_assert!(dxy <= dxz + dzy, "triangle inequality");
        prop_assert!((dxy == 0) == (x == y));
    }

    #[test]
    fn encode_decode_round_trip(
        q in 2u32..10,
        digits in prop::collection::vec(0u32..10, 1..8),
    ) {
        let digits: Vec<u32> = digits.into_iter().map(|d| d % q).collect();
        let index = OutcomeIndex::encode(&digits, q).unwrap();
        prop_assert_eq!(index.decode(q, digits.len() as u32), digits);
    }

    #[test]
    fn neighbor_sets_are_exact(q in 2u32..6, n in 1u32..6, pick in any::<u64>()) {
        let space = space_size(q, n).unwrap();
        let center = OutcomeIndex(pick % space);
        let nbs: Vec<OutcomeIndex> = neighbors(center, q, n).collect();
        prop_assert_eq!(nbs.len() as u64, n as u64 * (q as u64 - 1));
        let mut unique = nbs.clone();
        unique.sort_unstable();
        unique.dedup();
        prop_assert_eq!(unique.len(), nbs.len(), "no duplicates");
        let cd = center.decode(q, n);
        for nb in nbs {
            prop_assert_eq!(hamming_distance(&cd, &nb.decode(q, n)).unwrap(), 1);
        }
    }
}

#[test]
fn traversal_matches_naive_oracle_on_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_b0f5);
    for trial in 0..200 {
        let q = rng.gen_range(2..=6);
        let frame = random_frame(&mut rng, q, 4096);
        assert_eq!(
            nm::distance_profile(&frame, &lim()).unwrap(),
            nm::naive_distance_profile(&frame, &lim()).unwrap(),
            "trial {trial}: q={} n={}",
            frame.q(),
            frame.n()
        );
    }
}

#[test]
fn profile_invariants_on_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_51de);
    for _ in 0..200 {
        let q = rng.gen_range(2..=6);
        let frame = random_frame(&mut rng, q, 4096);
        let report = nm::near_miss_report(&frame, &lim()).unwrap();
        let counts = report.profile.counts();
        assert_eq!(report.profile.total(), frame.space_size());
        assert_eq!(counts[0], frame.win_count());
        assert_eq!(
            report.profile.covering_radius() as usize,
            counts.iter().rposition(|&c| c > 0).unwrap()
        );
        // p <= NM <= 1, with NM = 1 exactly for the full winning set
        assert!(report.index >= report.win_probability);
        assert!(report.index <= Rational::one());
        assert_eq!(report.index == Rational::one(), frame.is_full());
        // index = 1 - (sum k c_k)/(n q^n) exactly
        let expected = Rational::one()
            - ratio_u64(
                report.profile.distance_sum(),
                frame.n() as u64 * frame.space_size(),
            );
        assert_eq!(report.index, expected);
    }
}

#[test]
fn index_is_invariant_under_relabelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_ca7);
    for _ in 0..100 {
        let q = rng.gen_range(2..=5);
        let frame = random_frame(&mut rng, q, 4096);
        let baseline = nm::distance_profile(&frame, &lim()).unwrap();

        let perms: Vec<Vec<u32>> = (0..frame.n())
            .map(|_| {
                let mut p: Vec<u32> = (0..frame.q()).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let relabeled = apply_symbol_permutations(&frame, &perms).unwrap();
        assert_eq!(
            nm::distance_profile(&relabeled, &lim()).unwrap(),
            baseline,
            "per-coordinate symbol permutations preserve the profile"
        );

        let mut coord: Vec<u32> = (0..frame.n()).collect();
        coord.shuffle(&mut rng);
        let permuted = apply_coordinate_permutation(&frame, &coord).unwrap();
        assert_eq!(
            nm::distance_profile(&permuted, &lim()).unwrap(),
            baseline,
            "coordinate permutations preserve the profile"
        );
    }
}

#[test]
fn fold_weakly_improves_the_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_f01d);
    let shapes = [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (4, 2)];
    for trial in 0..200 {
        let (base, t) = shapes[trial % shapes.len()];
        let q = base.pow(t);
        let frame = random_frame(&mut rng, q, 4096);
        let folded = fold_alphabet(&frame, base, t).unwrap();
        assert_eq!(folded.win_count(), frame.win_count());
        assert_eq!(folded.win_probability(), frame.win_probability());
        let before = nm::near_miss_index(&frame, &lim()).unwrap();
        let after = nm::near_miss_index(&folded, &lim()).unwrap();
        assert!(
            after >= before,
            "trial {trial}: fold must not lower the index (q={q}, n={})",
            frame.n()
        );
    }
}

#[test]
fn split_preserves_the_index_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_5197);
    for trial in 0..200 {
        let t = rng.gen_range(1..=3u32);
        let q = rng.gen_range(2..=4u32);
        // keep the split space (t·q)^n within the exhaustive range
        let mut max_n = 1;
        while ((q * t) as u64).pow(max_n + 1) <= 4096 {
            max_n += 1;
        }
        let n = rng.gen_range(1..=max_n);
        let frame = random_frame_with_n(&mut rng, q, n);
        let split = split_symbols(&frame, t, &lim()).unwrap();
        assert_eq!(split.win_count(), frame.win_count() * (t as u64).pow(frame.n()));
        assert_eq!(split.win_probability(), frame.win_probability());
        assert_eq!(
            nm::near_miss_index(&split, &lim()).unwrap(),
            nm::near_miss_index(&frame, &lim()).unwrap(),
            "trial {trial}"
        );
    }
}

#[test]
fn split_strict_witness_at_quarter_probability() {
    // with q = n = t = 2 and p = 1/4 the construction is beatable: the best
    // four-winner frame over the doubled alphabet strictly exceeds the best
    // single-winner frame over the original one
    let (_, best_split) = search::optimal_frame(4, 2, 4, &opts(), &lim()).unwrap();
    let (_, best_orig) = search::optimal_frame(2, 2, 1, &opts(), &lim()).unwrap();
    assert!(best_split > best_orig);
    assert_eq!(best_orig, ratio_u64(1, 2));
    assert_eq!(best_split, ratio_u64(5, 8));
}

#[test]
fn extend_follows_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_e27e);
    for trial in 0..200 {
        let q = rng.gen_range(2..=5);
        let frame = random_frame(&mut rng, q, 2048 / q as u64);
        let extended = extend_length(&frame).unwrap();
        assert_eq!(extended.win_count(), frame.win_count() * frame.q() as u64);
        assert_eq!(extended.win_probability(), frame.win_probability());
        let before = nm::near_miss_index(&frame, &lim()).unwrap();
        let after = nm::near_miss_index(&extended, &lim()).unwrap();
        let n = frame.n() as u64;
        let expected =
            Rational::one() - ratio_u64(n, n + 1) * (Rational::one() - before.clone());
        assert_eq!(after, expected, "trial {trial}");
        if before < Rational::one() {
            assert!(after > before, "strict improvement below index 1");
        }
    }
}

#[test]
fn lift_preserves_covering_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_11f7);
    for trial in 0..200 {
        let q = rng.gen_range(2..=5);
        let frame = random_frame(&mut rng, q, 2048 / q as u64);
        let lifted = lift_code(&frame).unwrap();
        assert_eq!(
            nm::covering_radius(&lifted, &lim()).unwrap(),
            nm::covering_radius(&frame, &lim()).unwrap(),
            "trial {trial}"
        );
    }
}

#[test]
fn lifting_a_minimal_code_meets_the_next_table_entry() {
    // K_2(3,1) = 2 lifts to a length-4 cover of size 4 = K_2(4,1)
    let cert = search::minimal_covering_code(2, 3, 1, SearchMode::Exact, &opts(), &lim()).unwrap();
    let lifted = lift_code(&cert.frame).unwrap();
    assert_eq!(lifted.win_count(), 4);
    assert_eq!(nm::covering_radius(&lifted, &lim()).unwrap(), 1);

    // K_2(5,1) = 7 lifts to length 6 at size 14, an upper-bound witness only
    let cert = search::minimal_covering_code(2, 5, 1, SearchMode::Exact, &opts(), &lim()).unwrap();
    assert_eq!(cert.frame.win_count(), 7);
    let lifted = lift_code(&cert.frame).unwrap();
    assert_eq!(lifted.win_count(), 14);
    assert_eq!(nm::covering_radius(&lifted, &lim()).unwrap(), 1);
}

#[test]
fn sphere_bound_never_exceeds_certified_minima() {
    use num::ToPrimitive;
    let radius1 = [1u64, 2, 2, 4, 7];
    for (n, &k) in (1u32..=5).zip(&radius1) {
        let cert =
            search::minimal_covering_code(2, n, 1, SearchMode::Exact, &opts(), &lim()).unwrap();
        assert_eq!(cert.frame.win_count(), k);
        let bound = bounds::sphere_covering_bound(2, n, 1)
            .unwrap()
            .to_u64()
            .unwrap();
        assert!(bound <= k);
        // the unceiled bound is met with equality exactly at perfect
        // parameters n = 2^m - 1
        let ball = 1 + n as u64;
        if n == 1 || n == 3 {
            assert_eq!(k * ball, 2u64.pow(n));
        } else {
            assert_ne!(k * ball, 2u64.pow(n));
        }
    }
}

#[test]
fn exact_minima_match_the_published_binary_table_through_length_six() {
    let radius1 = [1u64, 2, 2, 4, 7, 12];
    for (n, &k) in (1u32..=6).zip(&radius1) {
        let cert =
            search::minimal_covering_code(2, n, 1, SearchMode::Exact, &opts(), &lim()).unwrap();
        assert_eq!(cert.frame.win_count(), k, "K_2({n},1)");
    }
    let radius2 = [1u64, 2, 2, 2, 4];
    for (n, &k) in (2u32..=6).zip(&radius2) {
        let cert =
            search::minimal_covering_code(2, n, 2, SearchMode::Exact, &opts(), &lim()).unwrap();
        assert_eq!(cert.frame.win_count(), k, "K_2({n},2)");
    }
}

#[test]
fn length_three_design_size_is_minimal_for_ternary() {
    // the target size (q²+1)/2 used by the length-3 construction is a true
    // minimum: exact search certifies K_3(3,1) = 5
    let cert = search::minimal_covering_code(3, 3, 1, SearchMode::Exact, &opts(), &lim()).unwrap();
    assert_eq!(cert.frame.win_count(), 5);
    let designed = nml_core::constructions::radius1_length3_code(3, 0, &lim()).unwrap();
    assert_eq!(designed.win_count(), cert.frame.win_count());
}

#[test]
fn greedy_paths_are_monotone_and_convex() {
    for q in 2u32..=16 {
        let mut n = 1u32;
        while (q as u64).pow(n) <= 256 {
            let path = search::greedy_frame_path(q, n, &lim()).unwrap();
            let sums: Vec<u64> = path
                .iter()
                .map(|(frame, _)| {
                    nm::distance_profile(frame, &lim()).unwrap().distance_sum()
                })
                .collect();
            assert_eq!(sums[0], n as u64 * (q as u64 - 1) * (q as u64).pow(n - 1));
            assert_eq!(*sums.last().unwrap(), 0);
            for pair in sums.windows(2) {
                if pair[0] > 0 {
                    assert!(pair[1] < pair[0], "sum strictly decreases until zero");
                }
            }
            assert!(search::is_convex(&sums), "greedy path convex for q={q} n={n}");
            for pair in path.windows(2) {
                assert!(pair[1].1 >= pair[0].1, "index non-decreasing");
            }
            n += 1;
        }
    }
}

#[test]
fn curve_is_convex_and_agrees_with_optimal_frames() {
    for (q, n) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2)] {
        let curve = search::min_distance_sum_curve(q, n, &opts()).unwrap();
        assert!(search::is_convex(&curve), "q={q} n={n}");
        assert_eq!(curve[0], n as u64 * (q as u64 - 1) * (q as u64).pow(n - 1));
        assert_eq!(*curve.last().unwrap(), 0);
        let space = space_size(q, n).unwrap();
        for m in 1..=space {
            let (_, index) = search::optimal_frame(q, n, m, &opts(), &lim()).unwrap();
            let expected =
                Rational::one() - ratio_u64(curve[m as usize - 1], n as u64 * space);
            assert_eq!(index, expected, "q={q} n={n} m={m}");
        }
    }
}

#[test]
fn seller_value_respects_the_ceiling_on_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x_5e11);
    for trial in 0..500 {
        let q = if trial % 2 == 0 { 2 } else { 3 };
        let frame = random_frame(&mut rng, q, (q as u64).pow(8).min(6561));
        let report = nm::near_miss_report(&frame, &lim()).unwrap();
        let bound =
            bounds::seller_value_upper_bound(frame.n() as u64, &report.win_probability).unwrap();
        assert!(
            report.seller_value <= bound,
            "trial {trial}: q={} n={} |W|={}",
            frame.q(),
            frame.n(),
            frame.win_count()
        );
    }
}

#[test]
fn claim_chain_on_certified_covering_numbers() {
    // exact K_2(n,1) for n <= 5, plus K_2(7,1) = 16 pinned by the matching
    // sphere bound and Hamming witness
    let k = [1u64, 2, 2, 4, 7];
    let k7 = 16u64;
    {
        use num::ToPrimitive;
        let lower = bounds::sphere_covering_bound(2, 7, 1)
            .unwrap()
            .to_u64()
            .unwrap();
        let witness = nml_core::constructions::hamming_frame(2, 3, &lim()).unwrap();
        assert_eq!(lower, k7);
        assert_eq!(witness.win_count(), k7);
        assert_eq!(nm::covering_radius(&witness, &lim()).unwrap(), 1);
    }
    // perfect lengths satisfy K(n) < q^j K(n-j) for every shortening
    assert!(k[2] < 2 * k[1] && k[2] < 4 * k[0]);
    for j in 2..=6u32 {
        let shorter = (7 - j) as usize;
        assert!(k7 < 2u64.pow(j) * k[shorter - 1], "j={j}");
    }
}
