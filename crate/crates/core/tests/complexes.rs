use halfspace::building::{order_complex_homology, order_complex_homology_full, parabolic_coset_count, steinberg_complex, steinberg_complex_homology, Poset};
use proptest::prelude::*;

/// Random strict partial order: a random relation on `i < j`, closed transitively.
fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..9).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let mut rel = vec![vec![false; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                rel[a][b] = bits[a * n + b];
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if rel[a][k] && rel[k][b] {
                        rel[a][b] = true;
                    }
                }
            }
        }
        Poset::from_relation(n, |a, b| rel[a][b]).unwrap()
    }))
}

proptest! {
    #[test]
    fn core_reduction_preserves_homology(p in random_poset()) {
        prop_assert_eq!(order_complex_homology(&p).unwrap(), order_complex_homology_full(&p).unwrap());
    }

    #[test]
    fn order_complex_boundary_squares_to_zero(p in random_poset()) {
        let c = p.order_complex().unwrap();
        for pair in c.maps().windows(2) {
            prop_assert!(pair[1].mul(&pair[0]).unwrap().is_zero());
        }
    }
}

#[test]
fn chains_and_cones() {
    // A poset with a maximum is a cone.
    let cone = Poset::from_relation(4, |a, b| b == 3 && a != 3).unwrap();
    assert!(order_complex_homology_full(&cone).unwrap().is_acyclic());
    // Two incomparable points form a 0-sphere.
    let sphere = Poset::from_relation(2, |_, _| false).unwrap();
    assert_eq!(order_complex_homology_full(&sphere).unwrap().nonzero(), vec![(0, 1)]);
    // The face poset of the boundary of a square is a circle.
    let circle = Poset::from_relation(8, |a, b| a < 4 && b >= 4 && (b - 4 == a || b - 4 == (a + 1) % 4)).unwrap();
    assert_eq!(order_complex_homology(&circle).unwrap().nonzero(), vec![(1, 1)]);
}

fn gaussian_binomial(q: u128, m: u32, k: u32) -> u128 {
    let num: u128 = (0..k).map(|i| q.pow(m - i) - 1).product();
    let den: u128 = (0..k).map(|i| q.pow(k - i) - 1).product();
    num / den
}

/// Partial flags with subspace dimensions `dims` in `F_q^m`.
fn flag_count(q: u128, m: u32, dims: &[u32]) -> u128 {
    let mut prev = 0;
    let mut count = 1;
    for &a in dims {
        count *= gaussian_binomial(q, m - prev, a - prev);
        prev = a;
    }
    count
}

#[test]
fn steinberg_terms_count_partial_flags() {
    for (q, d) in [(2u64, 1usize), (2, 2), (3, 2), (2, 3)] {
        for j in 0..=d {
            let c = steinberg_complex(q, d, j).unwrap();
            for (k, sets) in c.index_sets.iter().enumerate() {
                let expected: u128 = sets
                    .iter()
                    .map(|set| {
                        let dims: Vec<u32> = (0..d).filter(|i| !set.contains(i)).map(|i| i as u32 + 1).collect();
                        flag_count(q as u128, d as u32 + 1, &dims)
                    })
                    .sum();
                let from_lib: u128 = sets.iter().map(|s| parabolic_coset_count(q, d, s)).sum();
                assert_eq!(c.complex.dims()[k] as u128, expected, "q={q} d={d} j={j} k={k}");
                assert_eq!(from_lib, expected);
            }
        }
    }
}

#[test]
fn steinberg_representation_dimension() {
    // The top complex resolves St, of dimension q^{d(d+1)/2}.
    for (q, d) in [(2u64, 1usize), (2, 2), (3, 2), (2, 3)] {
        let h = steinberg_complex_homology(q, d, d).unwrap();
        assert_eq!(h.homology[0] as u64, q.pow((d * (d + 1) / 2) as u32), "q={q} d={d}");
        assert!(h.homology[1..].iter().all(|&x| x == 0));
    }
}
