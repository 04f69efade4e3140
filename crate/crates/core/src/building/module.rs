//! Submodules of `(Z/p^n)^r` in Howell normal form.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient module `(Z/p^n)^r` the enumerators accept, in elements.
pub const AMBIENT_LIMIT: u128 = 1 << 14;

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

pub(crate) fn check_params(p: u64, n: u32, rank: usize) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::Precondition("exponent n must be at least 1".into()));
    }
    if rank == 0 {
        return Err(Error::Precondition("ambient rank must be positive".into()));
    }
    p.checked_pow(n).filter(|q| q.checked_pow(rank as u32).is_some()).ok_or(Error::Overflow("p^n"))
}

fn valuation(p: u64, n: u32, x: u64) -> u32 {
    if x == 0 {
        return n;
    }
    let mut k = 0;
    let mut y = x;
    while y % p == 0 {
        y /= p;
        k += 1;
    }
    k
}

fn inverse_mod(a: u64, q: u64) -> u64 {
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, q as i128, a as i128);
    while nr != 0 {
        let quo = r / nr;
        (t, nt) = (nt, t - quo * nt);
        (r, nr) = (nr, r - quo * nr);
    }
    debug_assert_eq!(r, 1, "{a} is not a unit mod {q}");
    t.rem_euclid(q as i128) as u64
}

/// `row ← row − f·other` modulo `q`.
fn axpy(row: &mut [u64], f: u64, other: &[u64], q: u64) {
    for (a, &b) in row.iter_mut().zip(other) {
        *a = (*a + q - (f % q) * b % q) % q;
    }
}

fn scale(row: &[u64], f: u64, q: u64) -> Vec<u64> {
    row.iter().map(|&x| x * (f % q) % q).collect()
}

/// Howell normal form of the span of `gens` in `(Z/p^n)^rank`.
pub fn howell_form(p: u64, n: u32, rank: usize, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let q = p.pow(n);
    let mut work: Vec<Vec<u64>> =
        gens.iter().map(|g| g.iter().map(|x| x % q).collect::<Vec<u64>>()).filter(|g| g.iter().any(|&x| x != 0)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut cols = Vec::new();
    for c in 0..rank {
        let best = work.iter().enumerate().filter(|(_, r)| r[c] != 0).min_by_key(|(_, r)| valuation(p, n, r[c])).map(|(i, _)| i);
        let Some(b) = best else { continue };
        let row = work.swap_remove(b);
        let k = valuation(p, n, row[c]);
        let pk = p.pow(k);
        let piv = scale(&row, inverse_mod(row[c] / pk, q), q);
        for r in work.iter_mut() {
            if r[c] != 0 {
                let f = r[c] / pk;
                axpy(r, f, &piv, q);
            }
        }
        if k > 0 {
            let extra = scale(&piv, p.pow(n - k), q);
            if extra.iter().any(|&x| x != 0) {
                work.push(extra);
            }
        }
        work.retain(|r| r.iter().any(|&x| x != 0));
        out.push(piv);
        cols.push(c);
    }
    for i in 0..out.len() {
        let (c, pk) = (cols[i], out[i][cols[i]]);
        let (above, below) = out.split_at_mut(i);
        for r in above.iter_mut() {
            let f = r[c] / pk;
            if f != 0 {
                axpy(r, f, &below[0], q);
            }
        }
    }
    out
}

/// A submodule `U ⊆ M = (Z/p^n)^{ambient_rank}`, stored in Howell normal
/// form, so that equal submodules have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiniteModule {
    p: u64,
    n: u32,
    ambient_rank: usize,
    rows: Vec<Vec<u64>>,
}

impl FiniteModule {
    /// The submodule generated by `gens`.
    pub fn span(p: u64, n: u32, ambient_rank: usize, gens: &[Vec<u64>]) -> Result<Self> {
        check_params(p, n, ambient_rank)?;
        for g in gens {
            if g.len() != ambient_rank {
                return Err(Error::Dimension { expected: ambient_rank, got: g.len() });
            }
        }
        Ok(FiniteModule { p, n, ambient_rank, rows: howell_form(p, n, ambient_rank, gens) })
    }

    pub fn zero(p: u64, n: u32, ambient_rank: usize) -> Result<Self> {
        Self::span(p, n, ambient_rank, &[])
    }

    pub fn ambient(p: u64, n: u32, ambient_rank: usize) -> Result<Self> {
        let basis: Vec<Vec<u64>> = (0..ambient_rank).map(|a| (0..ambient_rank).map(|b| (a == b) as u64).collect()).collect();
        Self::span(p, n, ambient_rank, &basis)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Rows of the Howell normal form.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn pivots(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.rows.iter().map(|r| {
            let c = r.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
            (c, r[c])
        })
    }

    fn same_ambient(&self, other: &FiniteModule) -> Result<()> {
        if (self.p, self.n, self.ambient_rank) != (other.p, other.n, other.ambient_rank) {
            return Err(Error::Precondition("submodules of different ambient modules".into()));
        }
        Ok(())
    }

    /// `|U| = p^{log_order}`.
    pub fn log_order(&self) -> u32 {
        self.pivots().map(|(_, pk)| self.n - valuation(self.p, self.n, pk)).sum()
    }

    pub fn contains_vector(&self, x: &[u64]) -> bool {
        if x.len() != self.ambient_rank {
            return false;
        }
        let q = self.modulus();
        let mut v: Vec<u64> = x.iter().map(|a| a % q).collect();
        for (row, (c, pk)) in self.rows.iter().zip(self.pivots()) {
            if v[..c].iter().any(|&a| a != 0) {
                return false;
            }
            if v[c] % pk != 0 {
                return false;
            }
            let f = v[c] / pk;
            axpy(&mut v, f, row, q);
        }
        v.iter().all(|&a| a == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &FiniteModule) -> bool {
        self.same_ambient(other).is_ok() && other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        self.same_ambient(other)?;
        let gens: Vec<Vec<u64>> = self.rows.iter().chain(&other.rows).cloned().collect();
        FiniteModule::span(self.p, self.n, self.ambient_rank, &gens)
    }

    pub fn intersect(&self, other: &FiniteModule) -> Result<FiniteModule> {
        self.same_ambient(other)?;
        let (small, big) = if self.log_order() <= other.log_order() { (self, other) } else { (other, self) };
        let common: Vec<Vec<u64>> = small.elements().into_iter().filter(|x| big.contains_vector(x)).collect();
        FiniteModule::span(self.p, self.n, self.ambient_rank, &common)
    }

    /// All elements, each exactly once.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let q = self.modulus();
        let mut out = vec![vec![0u64; self.ambient_rank]];
        for (row, (_, pk)) in self.rows.iter().zip(self.pivots()) {
            let order = q / pk;
            let mut next = Vec::with_capacity(out.len() * order as usize);
            for x in &out {
                for c in 0..order {
                    let mut y = x.clone();
                    for (a, &b) in y.iter_mut().zip(row) {
                        *a = (*a + c * b) % q;
                    }
                    next.push(y);
                }
            }
            out = next;
        }
        out
    }

    /// `p·U`.
    pub fn times_p(&self) -> FiniteModule {
        let q = self.modulus();
        let gens: Vec<Vec<u64>> = self.rows.iter().map(|r| scale(r, self.p, q)).collect();
        FiniteModule { rows: howell_form(self.p, self.n, self.ambient_rank, &gens), ..self.clone() }
    }

    /// `(rk, rk′)`: `dim_{F_p} (U + pM)/pM` and `dim_{F_p} U/pU`.
    pub fn ranks(&self) -> (usize, usize) {
        let reduced: Vec<Vec<u64>> = self.rows.iter().map(|r| r.iter().map(|x| x % self.p).collect()).collect();
        let rk = howell_form(self.p, 1, self.ambient_rank, &reduced).len();
        let rk_prime = (self.log_order() - self.times_p().log_order()) as usize;
        (rk, rk_prime)
    }

    /// `U` is free; then `U` is a direct summand and `M/U` is free as well.
    pub fn is_free(&self) -> bool {
        let (a, b) = self.ranks();
        a == b
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// `(rk(U), rk′(U))`.
pub fn module_ranks(u: &FiniteModule) -> (usize, usize) {
    u.ranks()
}

/// Which submodules to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubmoduleFilter {
    All,
    /// `rk ≥ 1` and `rk′ ≤ d`.
    T,
    /// Free proper nonzero submodules, i.e. direct summands with free quotient.
    TFree,
}

impl SubmoduleFilter {
    pub fn accepts(self, u: &FiniteModule) -> bool {
        let (rk, rk_prime) = u.ranks();
        let d = u.ambient_rank() - 1;
        match self {
            SubmoduleFilter::All => true,
            SubmoduleFilter::T => rk >= 1 && rk_prime <= d,
            SubmoduleFilter::TFree => rk >= 1 && rk_prime <= d && rk == rk_prime,
        }
    }
}

fn ambient_vectors(q: u64, rank: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..q).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Visits every submodule of `(Z/p^n)^rank` once, in breadth-first order
/// from the zero module.
pub fn for_each_submodule(p: u64, n: u32, rank: usize, mut visit: impl FnMut(&FiniteModule)) -> Result<()> {
    let q = check_params(p, n, rank)?;
    let size = (q as u128).pow(rank as u32);
    if size > AMBIENT_LIMIT {
        return Err(Error::TooLarge { estimate: size, limit: AMBIENT_LIMIT });
    }
    let vectors = ambient_vectors(q, rank);
    let zero = FiniteModule::zero(p, n, rank)?;
    let mut seen: BTreeSet<FiniteModule> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(u) = queue.pop_front() {
        visit(&u);
        for v in &vectors {
            if u.contains_vector(v) {
                continue;
            }
            let mut gens = u.rows.clone();
            gens.push(v.clone());
            let w = FiniteModule { rows: howell_form(p, n, rank, &gens), ..u.clone() };
            if !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(())
}

/// All submodules passing `filter`, sorted by canonical form.
pub fn enumerate_submodules(p: u64, n: u32, ambient_rank: usize, filter: SubmoduleFilter) -> Result<Vec<FiniteModule>> {
    if ambient_rank < 2 {
        return Err(Error::Precondition("ambient rank must be at least 2".into()));
    }
    let mut out = Vec::new();
    for_each_submodule(p, n, ambient_rank, |u| {
        if filter.accepts(u) {
            out.push(u.clone());
        }
    })?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(p: u64, n: u32, gens: &[&[u64]]) -> FiniteModule {
        let r = gens.first().map_or(2, |g| g.len());
        FiniteModule::span(p, n, r, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(span(2, 2, &[&[1, 2], &[0, 2]]), span(2, 2, &[&[1, 0], &[0, 2]]));
        assert_eq!(span(2, 2, &[&[2, 2]]).rows(), &[vec![2, 2]]);
        let u = span(2, 2, &[&[2, 1]]);
        assert_eq!(u.log_order(), 2);
        assert!(u.contains_vector(&[0, 2]));
        assert!(!u.contains_vector(&[0, 1]));
        assert_eq!(u.elements().len(), 4);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(span(2, 2, &[&[1, 0]]).ranks(), (1, 1));
        assert_eq!(span(2, 2, &[&[2, 0], &[0, 2]]).ranks(), (0, 2));
        assert_eq!(span(2, 2, &[&[1, 0], &[0, 2]]).ranks(), (1, 2));
    }

    #[test]
    fn counts() {
        let t = enumerate_submodules(2, 1, 3, SubmoduleFilter::T).unwrap();
        assert_eq!(t.len(), 14);
        // Subgroups of Z/4 x Z/4.
        assert_eq!(enumerate_submodules(2, 2, 2, SubmoduleFilter::All).unwrap().len(), 15);
        assert!(enumerate_submodules(7, 3, 3, SubmoduleFilter::All).is_err());
    }
}
