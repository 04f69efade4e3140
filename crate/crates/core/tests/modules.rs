use std::collections::BTreeSet;

use halfspace::building::{enumerate_submodules, howell_form, FiniteModule, SubmoduleFilter};
use proptest::prelude::*;

/// Every `Z/q`-combination of the generators, by brute force.
fn span_by_enumeration(q: u64, rank: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut set = BTreeSet::from([vec![0; rank]]);
    for g in gens {
        let mut next = BTreeSet::new();
        for v in &set {
            for c in 0..q {
                next.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % q).collect());
            }
        }
        set = next;
    }
    set
}

fn ring_and_gens() -> impl Strategy<Value = (u64, u32, usize, Vec<Vec<u64>>)> {
    (prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((3, 1)), Just((2, 3)), Just((3, 2))], 1usize..=3).prop_flat_map(|((p, n), rank)| {
        let q = p.pow(n);
        (Just(p), Just(n), Just(rank), prop::collection::vec(prop::collection::vec(0..q, rank), 0..4))
    })
}

proptest! {
    #[test]
    fn howell_span_has_the_same_elements((p, n, rank, gens) in ring_and_gens()) {
        let q = p.pow(n);
        let form = howell_form(p, n, rank, &gens);
        prop_assert_eq!(span_by_enumeration(q, rank, &form), span_by_enumeration(q, rank, &gens));
    }

    #[test]
    fn howell_form_is_canonical((p, n, rank, gens) in ring_and_gens(), extra in 0u64..9) {
        let q = p.pow(n);
        // Adding a combination of existing generators does not change the span.
        let mut more = gens.clone();
        if let (Some(a), Some(b)) = (gens.first(), gens.last()) {
            more.push(a.iter().zip(b).map(|(x, y)| (x * extra + y) % q).collect());
        }
        more.reverse();
        prop_assert_eq!(howell_form(p, n, rank, &gens), howell_form(p, n, rank, &more));
    }

    #[test]
    fn log_order_counts_elements((p, n, rank, gens) in ring_and_gens()) {
        let u = FiniteModule::span(p, n, rank, &gens).unwrap();
        let count = span_by_enumeration(p.pow(n), rank, &gens).len() as u64;
        prop_assert_eq!(p.pow(u.log_order()), count);
        prop_assert_eq!(u.elements().len() as u64, count);
    }

    #[test]
    fn intersection_and_sum_match_element_sets((p, n, rank, a) in ring_and_gens(), b_seed in prop::collection::vec(0u64..27, 0..9)) {
        let q = p.pow(n);
        let b: Vec<Vec<u64>> = b_seed.chunks(rank).filter(|c| c.len() == rank).map(|c| c.iter().map(|x| x % q).collect()).collect();
        let (u, v) = (FiniteModule::span(p, n, rank, &a).unwrap(), FiniteModule::span(p, n, rank, &b).unwrap());
        let (eu, ev) = (span_by_enumeration(q, rank, &a), span_by_enumeration(q, rank, &b));
        let meet: BTreeSet<Vec<u64>> = eu.intersection(&ev).cloned().collect();
        let join = span_by_enumeration(q, rank, &[a.clone(), b.clone()].concat());
        prop_assert_eq!(u.intersect(&v).unwrap().elements().into_iter().collect::<BTreeSet<_>>(), meet);
        prop_assert_eq!(u.sum(&v).unwrap().elements().into_iter().collect::<BTreeSet<_>>(), join);
        prop_assert_eq!(u.contains(&v), ev.is_subset(&eu));
    }
}

/// Number of `k`-dimensional subspaces of `F_q^m`.
fn gaussian_binomial(q: u64, m: u32, k: u32) -> u64 {
    let num: u64 = (0..k).map(|i| q.pow(m - i) - 1).product();
    let den: u64 = (0..k).map(|i| q.pow(k - i) - 1).product();
    num / den
}

#[test]
fn subspace_counts_over_prime_fields() {
    for (q, m) in [(2u64, 2u32), (2, 3), (3, 3), (2, 4)] {
        let all = enumerate_submodules(q, 1, m as usize, SubmoduleFilter::All).unwrap();
        let total: u64 = (0..=m).map(|k| gaussian_binomial(q, m, k)).sum();
        assert_eq!(all.len() as u64, total, "q={q} m={m}");
        for k in 0..=m {
            let got = all.iter().filter(|u| u.log_order() == k).count() as u64;
            assert_eq!(got, gaussian_binomial(q, m, k), "q={q} m={m} k={k}");
        }
    }
}

/// Submodules of `(Z/p^n)^r` with `r ≤ 2` need at most two generators, so
/// spans of all pairs of vectors list every one of them.
#[test]
fn submodule_count_matches_brute_force() {
    for (p, n, rank) in [(2u64, 2u32, 2usize), (3, 2, 2), (2, 3, 2), (5, 1, 2)] {
        let q = p.pow(n);
        let vectors: Vec<Vec<u64>> = (0..q.pow(rank as u32)).map(|x| (0..rank).map(|i| x / q.pow(i as u32) % q).collect()).collect();
        let mut spans = BTreeSet::new();
        for a in &vectors {
            for b in &vectors {
                spans.insert(span_by_enumeration(q, rank, &[a.clone(), b.clone()]));
            }
        }
        let got = enumerate_submodules(p, n, rank, SubmoduleFilter::All).unwrap();
        assert_eq!(got.len(), spans.len(), "p={p} n={n} rank={rank}");
    }
}
