mod common;

use brauer_core::blocks::is_balanced;
use brauer_core::weights::*;
use brauer_core::weyl::*;
use proptest::prelude::*;

fn gen_strategy(n: usize) -> impl Strategy<Value = ReflectionGen> {
    (1..n, any::<bool>(), -2i64..=2).prop_flat_map(move |(i, sum, r)| {
        (i + 1..=n).prop_map(move |j| {
            if sum {
                ReflectionGen::sum(i, j, r).unwrap()
            } else {
                ReflectionGen::diff(i, j, r).unwrap()
            }
        })
    })
}

fn weight_strategy(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-12i64..12, n).prop_map(Weight::new)
}

proptest! {
    #[test]
    fn generators_are_involutions(
        (n, g, w) in (2usize..=8).prop_flat_map(|n| (Just(n), gen_strategy(n), weight_strategy(n))),
        delta in -4i64..6,
        p in prop::sample::select(vec![3u64, 5, 7]),
    ) {
        let ctx = Context::modular(n, delta, p).unwrap();
        let once = apply_generator(&g, &w, &ctx).unwrap();
        prop_assert_eq!(apply_generator(&g, &once, &ctx).unwrap(), w.clone());
        let change = once.size() - w.size();
        match g.kind() {
            RootKind::Diff => prop_assert_eq!(change, 0),
            RootKind::Sum => prop_assert_eq!(change.rem_euclid(2), 0),
        }
    }

    #[test]
    fn word_then_reverse_is_identity(
        (n, gens, w) in (2usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(gen_strategy(n), 0..6), weight_strategy(n))),
    ) {
        let ctx = Context::modular(n, 2, 5).unwrap();
        let word = ReflectionWord::new(gens);
        let there = word.apply(&w, &ctx).unwrap();
        prop_assert_eq!(word.reversed().apply(&there, &ctx).unwrap(), w);
        let text: ReflectionWord = word.to_string().parse().unwrap();
        prop_assert_eq!(text, word);
    }

    #[test]
    fn delta_shift_identities(
        (n, i, j, w) in (2usize..=6).prop_flat_map(|n| (Just(n), 1..n, Just(n), weight_strategy(n)))
            .prop_flat_map(|(n, i, _, w)| (Just(n), Just(i), i + 1..=n, Just(w))),
        r in -2i64..=2,
        p in prop::sample::select(vec![3i64, 5]),
        delta in -4i64..6,
    ) {
        let sum0 = ReflectionGen::sum(i, j, 0).unwrap();
        let sum_r = ReflectionGen::sum(i, j, r).unwrap();
        prop_assert_eq!(sum0.dot(&w, delta + r * p, p), sum_r.dot(&w, delta, p));
        let diff0 = ReflectionGen::diff(i, j, 0).unwrap();
        prop_assert_eq!(diff0.dot(&w, delta + r * p, p), diff0.dot(&w, delta, p));
        // Translation by rp(ε_i + ε_j).
        let mut moved = w.padded(n).unwrap().entries().to_vec();
        moved[i - 1] += r * p;
        moved[j - 1] += r * p;
        prop_assert_eq!(sum_r.dot(&sum0.dot(&w, delta, p), delta, p), Weight::new(moved));
    }

    #[test]
    fn diff_as_conjugated_sum(
        (n, w) in (3usize..=6).prop_flat_map(|n| (Just(n), weight_strategy(n))),
        rows in prop::sample::subsequence((1usize..=6).collect::<Vec<_>>(), 3),
        r in -2i64..=2,
        p in prop::sample::select(vec![3i64, 5]),
        delta in -4i64..6,
    ) {
        prop_assume!(rows.iter().all(|&x| x <= n));
        let (i, j, k) = (rows[0], rows[1], rows[2]);
        for (a, b, c) in [(i, j, k), (j, i, k), (i, k, j), (k, i, j)] {
            let lhs = ReflectionGen::diff(a, b, r).unwrap().dot(&w, delta, p);
            let outer = ReflectionGen::sum(b, c, 0).unwrap();
            let mid = ReflectionGen::sum(a, c, r).unwrap();
            let rhs = outer.dot(&mid.dot(&outer.dot(&w, delta, p), delta, p), delta, p);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn finite_witness_agrees_with_brute_force(
        (n, a, b) in (1usize..=5).prop_flat_map(|n| (Just(n), weight_strategy(n), weight_strategy(n))),
        delta in -3i64..5,
    ) {
        let ctx = Context::char_zero(n, delta).unwrap();
        let ca = content_sequence(&a, &ctx).unwrap();
        let cb = content_sequence(&b, &ctx).unwrap();
        let found = orbit_member_finite(&a, &b, &ctx).unwrap();
        prop_assert_eq!(found.is_some(), common::brute_orbit(&ca, &cb, &ctx));
        if let Some(w) = found {
            prop_assert!(w.validate(&a, &b, &ctx));
        }
        // An image built by reversing rows and flipping two contents.
        let mut shuffled = ca.clone();
        shuffled.reverse();
        if n >= 2 {
            shuffled[0] = 2 - delta - shuffled[0];
            shuffled[1] = 2 - delta - shuffled[1];
        }
        let image = Weight::new(shuffled.iter().enumerate().map(|(k, c)| k as i64 + 1 - c).collect());
        let w = orbit_member_finite(&a, &image, &ctx).unwrap();
        prop_assert!(w.is_some_and(|w| w.validate(&a, &image, &ctx)));
    }

    #[test]
    fn affine_witness_agrees_with_brute_force(
        (n, a, b) in (1usize..=5).prop_flat_map(|n| (Just(n), weight_strategy(n), weight_strategy(n))),
        p in prop::sample::select(vec![3u64, 5, 7]),
        delta in 0i64..7,
    ) {
        let ctx = Context::modular(n, delta, p).unwrap();
        let ca = content_sequence(&a, &ctx).unwrap();
        let cb = content_sequence(&b, &ctx).unwrap();
        let parity = (a.size() - b.size()).rem_euclid(2) == 0;
        let found = orbit_member_affine(&a, &b, &ctx).unwrap();
        prop_assert_eq!(found.is_some(), parity && common::brute_orbit(&ca, &cb, &ctx));
        if let Some(w) = found {
            prop_assert!(w.validate(&a, &b, &ctx));
        }
    }
}

#[test]
fn finite_membership_matches_closure_for_small_ranks() {
    for n in 1..=5 {
        let labels = labels_by_parity(n);
        for delta in [-3, -1, 1, 2, 4] {
            let ctx = Context::char_zero(n, delta).unwrap();
            for a in &labels {
                let closure = orbit_closure(&a.as_weight(), &ctx, 10).unwrap();
                for b in &labels {
                    let w = orbit_member_finite(&a.as_weight(), &b.as_weight(), &ctx).unwrap();
                    assert_eq!(w.is_some(), closure.contains(&b.as_weight()), "{a} {b} {delta}");
                }
            }
        }
    }
}

#[test]
fn affine_membership_matches_closure_for_small_ranks() {
    for n in 1..=3 {
        let labels = labels_by_parity(n);
        for (p, delta) in [(3, 0), (3, 2), (5, 1)] {
            let ctx = Context::modular(n, delta, p).unwrap();
            for a in &labels {
                let closure = orbit_closure(&a.as_weight(), &ctx, 12).unwrap();
                for b in &labels {
                    let w = orbit_member_affine(&a.as_weight(), &b.as_weight(), &ctx).unwrap();
                    assert_eq!(w.is_some(), closure.contains(&b.as_weight()), "{a} {b} {p} {delta}");
                }
            }
        }
    }
}

/// Box-level balance of `η/κ` for a weight `η ≥ κ` row by row.
fn skew_weight_balanced(eta: &Weight, kappa: &Partition, delta: i64) -> bool {
    let mut boxes = Vec::new();
    for i in 1..=eta.rank().max(kappa.len()) {
        let (hi, lo) = (eta.coord(i), kappa.part(i) as i64);
        if hi < lo {
            return false;
        }
        boxes.extend((lo + 1..=hi).map(|col| (i as i64, col, i as i64 - col)));
    }
    let content = |c: i64| boxes.iter().filter(|b| b.2 == c).count();
    for b in &boxes {
        let (c, d) = (b.2, 1 - delta - b.2);
        if c == d && content(c) % 2 != 0 || content(c) != content(d) {
            return false;
        }
    }
    if delta % 2 != 0 {
        return true;
    }
    let (x, y) = (-delta / 2, (2 - delta) / 2);
    let has = |r: i64, col: i64| boxes.iter().any(|b| b.0 == r && b.1 == col);
    let mut dominoes = 0;
    for &(r, col, c) in &boxes {
        if c == y {
            if !has(r, col + 1) {
                return true;
            }
            dominoes += 1;
        } else if c == x && !has(r, col - 1) {
            return true;
        }
    }
    dominoes % 2 == 0
}

#[test]
fn chains_exist_for_all_balanced_pairs() {
    for n in 1..=7 {
        let labels = labels_by_parity(n);
        for delta in [-3, -2, -1, 1, 2, 3, 4] {
            let ctx = Context::char_zero(n, delta).unwrap();
            for a in &labels {
                for b in &labels {
                    if !is_balanced(a, b, &ctx).unwrap() {
                        continue;
                    }
                    let meet = a.intersection(b);
                    let steps = linking_steps(a, b, &ctx).unwrap();
                    let mut cur = a.as_weight();
                    for s in &steps {
                        cur = s.word.apply(&cur, &ctx).unwrap();
                        assert_eq!(cur, s.result);
                        assert!(is_rho_dominant(&cur));
                        assert!(skew_weight_balanced(&cur, &meet, delta), "{cur} over {meet}");
                    }
                    assert_eq!(cur, b.as_weight());
                    let word = linking_chain(a, b, &ctx).unwrap();
                    assert_eq!(word.apply(&a.as_weight(), &ctx).unwrap(), b.as_weight());
                }
            }
        }
    }
}

#[test]
fn worked_chain_example() {
    let ctx = Context::char_zero(7, 2).unwrap();
    let lambda: Partition = "8,8,8,7,3,3,2".parse().unwrap();
    let mu: Partition = "6,5,1,1".parse().unwrap();
    let word = linking_chain(&lambda, &mu, &ctx).unwrap();
    assert_eq!(word.apply(&lambda.as_weight(), &ctx).unwrap(), mu.as_weight());
    let fixture: ReflectionWord = "s[3,+4] s[2,4] s[2,+5] s[1,3] s[1,+6] s[1,2] s[1,+7]"
        .parse()
        .unwrap();
    assert_eq!(fixture.apply(&lambda.as_weight(), &ctx).unwrap(), mu.as_weight());
    let first: ReflectionWord = "s[1,2] s[1,+7]".parse().unwrap();
    assert_eq!(
        first.apply(&lambda.as_weight(), &ctx).unwrap().to_string(),
        "7,7,8,7,3,3"
    );
}

#[test]
fn closure_reaches_agrees_with_invariants_and_search() {
    let ctx = Context::char_zero(6, 1).unwrap();
    let labels = labels_by_parity(6);
    for a in &labels {
        for b in &labels {
            let reach = closure_reaches(&a.as_weight(), &b.as_weight(), &ctx, 14).unwrap();
            let member = orbit_member_finite(&a.as_weight(), &b.as_weight(), &ctx).unwrap();
            assert_eq!(reach, member.is_some(), "{a} {b}");
        }
    }
}
