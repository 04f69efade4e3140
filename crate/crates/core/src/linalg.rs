//! Exact rank of sparse integer matrices and homology of finite cochain
//! complexes over the rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A sparse integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) outside {}x{}", self.rows, self.cols);
        let e = self.data[r].entry(c).or_insert(0);
        *e += v;
        if *e == 0 {
            self.data[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r].get(&c).copied().unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, &v) in row {
                t.data[c].insert(r, v);
            }
        }
        t
    }

    /// `self · other`, failing on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, got: other.rows });
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &a) in row {
                for (&c, &b) in &other.data[k] {
                    let p = a.checked_mul(b).ok_or_else(overflow)?;
                    let e = acc.entry(c).or_insert(0);
                    *e = e.checked_add(p).ok_or_else(overflow)?;
                }
            }
            acc.retain(|_, v| *v != 0);
            out.data[r] = acc;
        }
        Ok(out)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (pivots, rest) = unit_pivot_phase(self.data.clone());
        pivots + rational_rank(rest)
    }

    /// Rank over `F_p`, `p` prime.
    pub fn rank_mod(&self, p: i64) -> usize {
        let mut pivots: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
        for row in &self.data {
            let mut r: BTreeMap<usize, i64> = row.iter().map(|(&c, &v)| (c, v.rem_euclid(p))).filter(|(_, v)| *v != 0).collect();
            while let Some((&c, &v)) = r.iter().next() {
                match pivots.get(&c) {
                    Some(pr) => {
                        for (&k, &w) in pr {
                            let e = r.entry(k).or_insert(0);
                            *e = (*e - v * w).rem_euclid(p);
                        }
                        r.retain(|_, x| *x != 0);
                    }
                    None => {
                        let inv = mod_pow(v, p - 2, p);
                        let normal = r.iter().map(|(&k, &w)| (k, w * inv % p)).collect();
                        pivots.insert(c, normal);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

fn overflow() -> Error {
    Error::Overflow("sparse matrix product")
}

fn mod_pow(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Eliminates with `±1` pivots while they exist, in integers. Returns the
/// number of pivots used and the remaining rows.
fn unit_pivot_phase(mut rows: Vec<BTreeMap<usize, i64>>) -> (usize, Vec<BTreeMap<usize, i64>>) {
    let mut by_col: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            by_col.entry(c).or_default().insert(r);
        }
    }
    let mut alive: BTreeSet<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut pivots = 0;
    loop {
        let choice = alive
            .iter()
            .filter_map(|&r| rows[r].iter().find(|(_, v)| v.abs() == 1).map(|(&c, _)| (rows[r].len(), r, c)))
            .min();
        let Some((_, pr, pc)) = choice else { break };
        let prow = rows[pr].clone();
        let pv = prow[&pc];
        let targets: Vec<usize> = by_col[&pc].iter().copied().filter(|&r| r != pr).collect();
        let mut updates = Vec::with_capacity(targets.len());
        for &r in &targets {
            let f = rows[r][&pc] * pv;
            let mut new = rows[r].clone();
            let mut ok = true;
            for (&c, &v) in &prow {
                let e = new.entry(c).or_insert(0);
                match v.checked_mul(f).and_then(|x| e.checked_sub(x)) {
                    Some(x) => *e = x,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                return (pivots, alive.iter().map(|&r| rows[r].clone()).collect());
            }
            new.retain(|_, v| *v != 0);
            updates.push((r, new));
        }
        for (r, new) in updates {
            for c in rows[r].keys() {
                by_col.get_mut(c).map(|s| s.remove(&r));
            }
            for &c in new.keys() {
                by_col.entry(c).or_default().insert(r);
            }
            if new.is_empty() {
                alive.remove(&r);
            }
            rows[r] = new;
        }
        for c in prow.keys() {
            by_col.get_mut(c).map(|s| s.remove(&pr));
        }
        alive.remove(&pr);
        rows[pr].clear();
        pivots += 1;
    }
    (pivots, alive.iter().map(|&r| rows[r].clone()).collect())
}

fn rational_rank(rows: Vec<BTreeMap<usize, i64>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, BigRational> =
            row.into_iter().map(|(c, v)| (c, BigRational::from_integer(BigInt::from(v)))).collect();
        while let Some((&c, v)) = r.iter().next() {
            let v = v.clone();
            match pivots.get(&c) {
                Some(pr) => {
                    for (&k, w) in pr {
                        let e = r.entry(k).or_insert_with(BigRational::zero);
                        *e -= &v * w;
                    }
                    r.retain(|_, x| !x.is_zero());
                }
                None => {
                    let inv = BigRational::one() / v;
                    let normal = r.iter().map(|(&k, w)| (k, w * &inv)).collect();
                    pivots.insert(c, normal);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `V_0 → V_1 → … → V_m` with `maps[k]: V_k → V_{k+1}` given as
/// `dims[k+1] × dims[k]` matrices. Consecutive maps compose to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    maps: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self> {
        if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
            return Err(Error::Dimension { expected: dims.len().saturating_sub(1), got: maps.len() });
        }
        for (k, m) in maps.iter().enumerate() {
            if m.cols() != dims[k] || m.rows() != dims[k + 1] {
                return Err(Error::Precondition(format!("map {k} has shape {}x{}", m.rows(), m.cols())));
            }
        }
        for k in 1..maps.len() {
            if !maps[k].mul(&maps[k - 1])?.is_zero() {
                return Err(Error::Precondition(format!("maps {} and {k} do not compose to zero", k - 1)));
            }
        }
        Ok(ChainComplex { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    /// `dim ker / im` at every position.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(SparseMatrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.add(r, c, v);
                }
            }
        }
        m
    }

    #[test]
    fn ranks() {
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(dense(&[&[2, 0], &[0, 3]]).rank(), 2);
        assert_eq!(dense(&[&[2, 4], &[3, 6]]).rank(), 1);
        assert_eq!(dense(&[&[2, 0], &[0, 2]]).rank_mod(2), 0);
        assert_eq!(SparseMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn complex_checks_composition() {
        let a = dense(&[&[1], &[1]]);
        let b = dense(&[&[1, -1]]);
        let c = ChainComplex::new(vec![1, 2, 1], vec![a.clone(), b]).unwrap();
        assert_eq!(c.homology(), vec![0, 0, 0]);
        let bad = dense(&[&[1, 1]]);
        assert!(ChainComplex::new(vec![1, 2, 1], vec![a, bad]).is_err());
    }
}
