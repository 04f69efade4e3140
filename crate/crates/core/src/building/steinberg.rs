//! The complex `⊕_{|I|=k} Z[G/P_I]` for `G = GL_{d+1}(F_q)`, over the
//! subsets `I` of simple roots containing `{α_0, …, α_{d−j−1}}`, with
//! differentials along the projections `G/P_I → G/P_{I ∪ {α}}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::module::{enumerate_submodules, FiniteModule, SubmoduleFilter};
use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, SparseMatrix};

/// Largest number of partial flags the builder will list.
pub const FLAG_LIMIT: u128 = 200_000;

/// The complex together with its index sets per position.
#[derive(Debug, Clone)]
pub struct SteinbergComplex {
    pub q: u64,
    pub d: usize,
    pub j: usize,
    /// `index_sets[k]` lists the sets `I` in position `k`, each sorted.
    pub index_sets: Vec<Vec<Vec<usize>>>,
    pub complex: ChainComplex,
}

/// Homology of the complex per position, with the term dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergHomology {
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
}

fn q_integer(q: u128, m: u32) -> u128 {
    (0..m).map(|e| q.pow(e)).sum()
}

fn q_factorial(q: u128, m: u32) -> u128 {
    (1..=m).map(|k| q_integer(q, k)).product()
}

/// Dimensions `i+1` of the subspaces in a flag of type `I`: one per simple
/// root `α_i ∉ I`.
fn flag_type(d: usize, subset: &[usize]) -> Vec<usize> {
    (0..d).filter(|i| !subset.contains(i)).map(|i| i + 1).collect()
}

/// `|G/P_I|`, the number of partial flags of type `I` in `F_q^{d+1}`.
pub fn parabolic_coset_count(q: u64, d: usize, subset: &[usize]) -> u128 {
    let dims = flag_type(d, subset);
    let mut blocks = Vec::new();
    let mut prev = 0;
    for &k in dims.iter().chain(std::iter::once(&(d + 1))) {
        blocks.push((k - prev) as u32);
        prev = k;
    }
    let q = q as u128;
    q_factorial(q, (d + 1) as u32) / blocks.iter().map(|&b| q_factorial(q, b)).product::<u128>()
}

/// `Σ_{J ⊇ constraint} (−1)^{|J∖constraint|} |G/P_J|`, the dimension of the
/// generalized Steinberg representation.
pub fn generalized_steinberg_dimension(q: u64, d: usize, j: usize) -> Result<i128> {
    let constraint = constraint(d, j)?;
    let free: Vec<usize> = (0..d).filter(|i| !constraint.contains(i)).collect();
    let mut total: i128 = 0;
    for mask in 0u32..(1 << free.len()) {
        let mut set = constraint.clone();
        set.extend(free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &a)| a));
        set.sort();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        total += sign * parabolic_coset_count(q, d, &set) as i128;
    }
    Ok(total)
}

fn constraint(d: usize, j: usize) -> Result<Vec<usize>> {
    if j > d {
        return Err(Error::Precondition(format!("j = {j} exceeds d = {d}")));
    }
    Ok((0..d - j).collect())
}

/// All flags `V_{k_1} ⊂ V_{k_2} ⊂ …` with the given dimensions.
fn flags(subspaces: &[Vec<usize>], modules: &[FiniteModule], dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &k in dims {
        let mut next = Vec::new();
        for f in &out {
            for &s in &subspaces[k] {
                if f.last().map_or(true, |&t| modules[s].contains(&modules[t])) {
                    let mut g = f.clone();
                    g.push(s);
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out
}

pub fn steinberg_complex(q: u64, d: usize, j: usize) -> Result<SteinbergComplex> {
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    let fixed = constraint(d, j)?;
    let estimate = parabolic_coset_count(q, d, &[]);
    if estimate > FLAG_LIMIT {
        return Err(Error::TooLarge { estimate, limit: FLAG_LIMIT });
    }
    let modules = enumerate_submodules(q, 1, d + 1, SubmoduleFilter::All)?;
    let mut subspaces = vec![Vec::new(); d + 2];
    for (i, m) in modules.iter().enumerate() {
        subspaces[m.ranks().0].push(i);
    }

    let free: Vec<usize> = (0..d).filter(|i| !fixed.contains(i)).collect();
    let mut index_sets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); free.len() + 1];
    for mask in 0u32..(1 << free.len()) {
        let mut set = fixed.clone();
        set.extend(free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &a)| a));
        set.sort();
        index_sets[mask.count_ones() as usize].push(set);
    }
    for level in &mut index_sets {
        level.sort();
    }

    // Basis of each position: (set, flag) pairs, flags listed per set.
    let mut bases: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let mut lookup: Vec<HashMap<(usize, Vec<usize>), usize>> = Vec::new();
    for level in &index_sets {
        let mut basis = Vec::new();
        for (s, set) in level.iter().enumerate() {
            for f in flags(&subspaces, &modules, &flag_type(d, set)) {
                basis.push((s, f));
            }
        }
        lookup.push(basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect());
        bases.push(basis);
    }

    let mut maps = Vec::new();
    for k in 0..free.len() {
        let mut m = SparseMatrix::zeros(bases[k + 1].len(), bases[k].len());
        for (col, (s, flag)) in bases[k].iter().enumerate() {
            let set = &index_sets[k][*s];
            let dims = flag_type(d, set);
            for &alpha in free.iter().filter(|a| !set.contains(a)) {
                let mut bigger = set.clone();
                bigger.push(alpha);
                bigger.sort();
                let t = index_sets[k + 1].binary_search(&bigger).expect("index sets are closed upward");
                let pos = dims.iter().position(|&x| x == alpha + 1).expect("α ∉ I contributes a dimension");
                let mut image = flag.clone();
                image.remove(pos);
                let row = lookup[k + 1][&(t, image)];
                let sign = if set.iter().filter(|&&b| b < alpha).count() % 2 == 0 { 1 } else { -1 };
                m.add(row, col, sign);
            }
        }
        maps.push(m);
    }
    let dims = bases.iter().map(Vec::len).collect();
    Ok(SteinbergComplex { q, d, j, index_sets, complex: ChainComplex::new(dims, maps)? })
}

pub fn steinberg_complex_homology(q: u64, d: usize, j: usize) -> Result<SteinbergHomology> {
    let c = steinberg_complex(q, d, j)?;
    Ok(SteinbergHomology { dims: c.complex.dims().to_vec(), homology: c.complex.homology() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3_f2() {
        let h = steinberg_complex_homology(2, 2, 2).unwrap();
        assert_eq!(h.dims, vec![21, 14, 1]);
        assert_eq!(h.homology, vec![8, 0, 0]);
        assert_eq!(generalized_steinberg_dimension(2, 2, 2).unwrap(), 8);
    }

    #[test]
    fn single_term() {
        let h = steinberg_complex_homology(3, 2, 0).unwrap();
        assert_eq!(h.dims, vec![1]);
        assert_eq!(h.homology, vec![1]);
    }

    #[test]
    fn coset_counts() {
        assert_eq!(parabolic_coset_count(2, 2, &[]), 21);
        assert_eq!(parabolic_coset_count(2, 2, &[0]), 7);
        assert_eq!(parabolic_coset_count(3, 3, &[0, 1, 2]), 1);
        assert_eq!(parabolic_coset_count(3, 3, &[1, 2]), 40);
    }
}
