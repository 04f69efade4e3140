use halfspace::bott::{bwb_cohomology, irrep_character, weyl_dim, Character};
use halfspace::localcoh::{euler_characteristic_oracle, indlim_oracle, twisted_localcoh_character};
use halfspace::pieri::{dual_pieri_decompose, pieri_decompose};
use halfspace::Weight;
use proptest::prelude::*;

fn dominant(n: usize) -> impl Strategy<Value = Weight> {
    (prop::collection::vec(0i64..4, n - 1), -3i64..3).prop_map(|(gaps, last)| {
        let mut v = vec![last];
        for g in gaps {
            v.push(v.last().unwrap() + g);
        }
        v.reverse();
        Weight::new(v)
    })
}

fn weyl_product(mu: &[i64]) -> u64 {
    let (mut num, mut den) = (1i128, 1i128);
    for a in 0..mu.len() {
        for b in a + 1..mu.len() {
            num *= (mu[a] - mu[b] + (b - a) as i64) as i128;
            den *= (b - a) as i128;
        }
    }
    (num / den) as u64
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sum_of(parts: &[Weight]) -> Character {
    parts.iter().fold(Character::empty(), |acc, p| acc.plus(&irrep_character(p).unwrap()))
}

proptest! {
    #[test]
    fn weyl_dimension_matches_product_formula(mu in (1usize..5).prop_flat_map(dominant)) {
        prop_assert_eq!(weyl_dim(&mu).unwrap(), weyl_product(mu.entries()));
        prop_assert_eq!(irrep_character(&mu).unwrap().mass(), weyl_product(mu.entries()));
    }

    #[test]
    fn pieri_matches_convolution(nu in (1usize..5).prop_flat_map(dominant), k in 0u32..4) {
        let n = nu.len();
        let mut sym = vec![0; n];
        sym[0] = k as i64;
        let sym = Weight::new(sym);
        let v = irrep_character(&nu).unwrap();
        let forward = irrep_character(&sym).unwrap().convolve(&v).unwrap();
        prop_assert!(sum_of(&pieri_decompose(k, &nu, n).unwrap()).agrees_with(&forward));
        let dual = irrep_character(&sym.dual()).unwrap().convolve(&v).unwrap();
        prop_assert!(sum_of(&dual_pieri_decompose(k, &nu, n).unwrap()).agrees_with(&dual));
    }
}

#[test]
fn line_bundle_euler_characteristic() {
    // χ(P^d, O(r)) = C(r + d, d) as a polynomial in r.
    for d in 1..=3usize {
        for r in -6..=3i64 {
            let poly: i64 = (1..=d as i64).map(|a| r + a).product::<i64>() / (1..=d as i64).product::<i64>();
            assert_eq!(euler_characteristic_oracle(d, r).unwrap(), poly, "d={d} r={r}");
            let mut lambda = vec![0; d + 1];
            lambda[0] = r;
            assert_eq!(bwb_cohomology(d, &Weight::new(lambda)).unwrap().euler_characteristic(), poly, "d={d} r={r}");
            if r >= 0 {
                assert_eq!(poly, binom(r + d as i64, d as i64));
            }
        }
    }
}

#[test]
fn local_cohomology_matches_direct_limit() {
    for d in 1..=3usize {
        for j in 0..d {
            for r in -(d as i64) - 2..=2 {
                let a = twisted_localcoh_character(d, j, r, 4).unwrap();
                let b = indlim_oracle(d, j, r, 4).unwrap();
                assert!(a.agrees_with(&b), "d={d} j={j} r={r}");
            }
        }
    }
}

#[test]
fn top_local_cohomology_counts() {
    // H^d_{P^0}(P^d, O(r)) with exponents k_0 ≥ 0 and k_a ≤ −1 for a ≥ 1, total r,
    // and total pole order `−Σ_{a≥1} k_a` at most 4: count the tuples directly.
    for d in 1..=3usize {
        for r in -5..=2i64 {
            let c = twisted_localcoh_character(d, 0, r, 4).unwrap();
            let mut count = 0u64;
            let mut stack = vec![(0usize, 0i64)];
            while let Some((len, sum)) = stack.pop() {
                if len == d {
                    if r - sum >= 0 && sum >= -4 {
                        count += 1;
                    }
                    continue;
                }
                for k in -4..=-1 {
                    stack.push((len + 1, sum + k));
                }
            }
            assert_eq!(c.mass(), count, "d={d} r={r}");
        }
    }
}
