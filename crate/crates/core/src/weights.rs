//! Weights of the diagonal torus of `GL_{d+1}`, the Weyl words `w_i`, the
//! dot action and the Bott index `i0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integral weight `(λ_0, …, λ_{n-1})`; coordinate `a` pairs with `ε_a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The basis character `ε_a` of length `n`.
    pub fn unit(n: usize, a: usize) -> Self {
        let mut v = vec![0; n];
        v[a] = 1;
        Weight(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Weakly decreasing entries.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        check_len(self.len(), other.len())?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        check_len(self.len(), other.len())?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `(-λ_{n-1}, …, -λ_0)`, the highest weight of the dual module.
    pub fn dual(&self) -> Weight {
        Weight(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }

    /// Splits into `(first len entries, rest)`.
    pub fn split_at(&self, len: usize) -> (Weight, Weight) {
        let (a, b) = self.0.split_at(len);
        (Weight(a.to_vec()), Weight(b.to_vec()))
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl From<&[i64]> for Weight {
    fn from(v: &[i64]) -> Self {
        Weight(v.to_vec())
    }
}

impl std::ops::Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated signed integers, e.g. `-1,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Precondition("empty weight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Precondition(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}

/// Root data of `GL_{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub d: usize,
}

impl RootSystem {
    pub fn new(d: usize) -> Self {
        RootSystem { d }
    }

    pub fn rank(&self) -> usize {
        self.d + 1
    }

    /// `α_{i,j} = ε_i − ε_j`.
    pub fn root(&self, i: usize, j: usize) -> Weight {
        let mut v = vec![0; self.d + 1];
        v[i] += 1;
        v[j] -= 1;
        Weight(v)
    }

    /// `α_i = α_{i+1,i}` for `0 ≤ i ≤ d−1`.
    pub fn simple_root(&self, i: usize) -> Weight {
        self.root(i + 1, i)
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.d).map(|i| self.simple_root(i)).collect()
    }

    pub fn all_roots(&self) -> Vec<Weight> {
        let n = self.d + 1;
        let mut out = Vec::with_capacity(n * (n - 1));
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(self.root(i, j));
                }
            }
        }
        out
    }

    /// `ρ = (0, −1, …, −d)`.
    pub fn rho(&self) -> Weight {
        Weight((0..=self.d as i64).map(|a| -a).collect())
    }
}

/// A permutation of coordinate positions; `apply` sends entry `a` to
/// position `map[a]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// The simple reflection `s_k`, swapping positions `k−1` and `k` (`1 ≤ k < n`).
    pub fn simple(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Precondition(format!("s_{k} undefined for rank {n}")));
        }
        let mut p = Self::identity(n);
        p.map.swap(k - 1, k);
        Ok(p)
    }

    /// Product `s_{k_1}·s_{k_2}·…` (rightmost factor acts first).
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &k in word {
            p = p.compose(&Self::simple(n, k)?);
        }
        Ok(p)
    }

    /// The permutation sending position `a` to `map[a]`.
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &m in &map {
            if m >= map.len() || seen[m] {
                return Err(Error::Precondition("not a permutation".into()));
            }
            seen[m] = true;
        }
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { map: other.map.iter().map(|&a| self.map[a]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Permutation { map: inv }
    }

    /// Linear action on weights.
    pub fn apply(&self, w: &Weight) -> Result<Weight> {
        check_len(self.map.len(), w.len())?;
        let mut out = vec![0; w.len()];
        for (a, &b) in self.map.iter().enumerate() {
            out[b] = w.0[a];
        }
        Ok(Weight(out))
    }

    /// Number of inversions (the Coxeter length).
    pub fn length(&self) -> usize {
        let n = self.map.len();
        let mut c = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.map[a] > self.map[b] {
                    c += 1;
                }
            }
        }
        c
    }
}

/// The Weyl word `w_i = s_i·s_{i−1}·…·s_1` in `S_{d+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylWord {
    pub d: usize,
    pub i: usize,
}

impl WeylWord {
    pub fn new(d: usize, i: usize) -> Result<Self> {
        if i > d {
            return Err(Error::Precondition(format!("w_{i} undefined for d = {d}")));
        }
        Ok(WeylWord { d, i })
    }

    pub fn word(&self) -> Vec<usize> {
        (1..=self.i).rev().collect()
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_word(self.d + 1, &self.word()).expect("indices in range")
    }
}

/// `w ∗ λ = w(λ + ρ) − ρ` for an arbitrary permutation.
pub fn dot_action_perm(w: &Permutation, lambda: &Weight) -> Result<Weight> {
    check_len(w.len(), lambda.len())?;
    let rho = RootSystem::new(lambda.len() - 1).rho();
    w.apply(&lambda.add(&rho)?)?.sub(&rho)
}

/// `w_i ∗ λ`.
pub fn dot_action(w: &WeylWord, lambda: &Weight) -> Result<Weight> {
    check_len(w.d + 1, lambda.len())?;
    dot_action_perm(&w.permutation(), lambda)
}

/// Whether the Bott index comes with nonvanishing cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BottCase {
    DominantRegular,
    Degenerate,
}

impl fmt::Display for BottCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BottCase::DominantRegular => write!(f, "dominant-regular"),
            BottCase::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// `λ_1 ≥ … ≥ λ_d`, i.e. dominance for the Levi `L_{(1,d)}`.
pub fn check_levi_dominant(d: usize, lambda: &Weight) -> Result<()> {
    check_len(d + 1, lambda.len())?;
    if lambda.0[1..].windows(2).all(|w| w[0] >= w[1]) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{lambda} is not dominant for L_(1,{d}): need λ_1 ≥ … ≥ λ_d"
        )))
    }
}

/// The Bott index `i0` and its case.
pub fn find_i0(d: usize, lambda: &Weight) -> Result<(usize, BottCase)> {
    check_levi_dominant(d, lambda)?;
    let chain: Vec<Weight> = (0..=d)
        .map(|i| dot_action(&WeylWord { d, i }, lambda))
        .collect::<Result<_>>()?;
    if let Some(i) = chain.iter().position(Weight::is_dominant) {
        return Ok((i, BottCase::DominantRegular));
    }
    (0..d)
        .find(|&i| chain[i] == chain[i + 1])
        .map(|i| (i, BottCase::Degenerate))
        .ok_or_else(|| Error::Precondition(format!("no Bott index for {lambda}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// Dominance order: equal totals and nonnegative prefix sums of `μ − ν`.
pub fn dominance_compare(mu: &Weight, nu: &Weight) -> Result<Dominance> {
    check_len(mu.len(), nu.len())?;
    if mu == nu {
        return Ok(Dominance::Equal);
    }
    if mu.sum() != nu.sum() {
        return Ok(Dominance::Incomparable);
    }
    let mut s = 0;
    let (mut ge, mut le) = (true, true);
    for (a, b) in mu.0.iter().zip(&nu.0) {
        s += a - b;
        ge &= s >= 0;
        le &= s <= 0;
    }
    Ok(match (ge, le) {
        (true, _) => Dominance::Greater,
        (_, true) => Dominance::Less,
        _ => Dominance::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from(v)
    }

    #[test]
    fn dot_action_examples() {
        assert_eq!(dot_action(&WeylWord::new(2, 1).unwrap(), &w(&[0, 0, 0])).unwrap(), w(&[-1, 1, 0]));
        assert_eq!(dot_action(&WeylWord::new(2, 2).unwrap(), &w(&[-2, 1, 1])).unwrap(), w(&[0, 0, 0]));
        let l = w(&[3, -1, 2]);
        assert_eq!(dot_action(&WeylWord::new(2, 0).unwrap(), &l).unwrap(), l);
    }

    #[test]
    fn dot_action_length_mismatch() {
        let e = dot_action(&WeylWord::new(3, 1).unwrap(), &w(&[0, 0])).unwrap_err();
        assert_eq!(e, Error::Dimension { expected: 4, got: 2 });
    }

    #[test]
    fn word_lengths() {
        for d in 0..5 {
            for i in 0..=d {
                assert_eq!(WeylWord::new(d, i).unwrap().permutation().length(), i);
            }
        }
    }

    #[test]
    fn i0_examples() {
        assert_eq!(find_i0(2, &w(&[0, 0, 0])).unwrap(), (0, BottCase::DominantRegular));
        assert_eq!(find_i0(2, &w(&[-1, 1, 0])).unwrap(), (1, BottCase::DominantRegular));
        assert_eq!(find_i0(2, &w(&[0, 1, 0])).unwrap(), (0, BottCase::Degenerate));
        assert!(matches!(find_i0(2, &w(&[1, 0, 2])), Err(Error::Precondition(_))));
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance_compare(&w(&[0, 0, 0]), &w(&[-1, 1, 0])).unwrap(), Dominance::Greater);
        assert_eq!(dominance_compare(&w(&[-1, 1, 0]), &w(&[0, 0, 0])).unwrap(), Dominance::Less);
        assert_eq!(dominance_compare(&w(&[2, 0, 1]), &w(&[2, 0, 1])).unwrap(), Dominance::Equal);
        assert_eq!(dominance_compare(&w(&[1, -1, 0]), &w(&[0, 1, -1])).unwrap(), Dominance::Incomparable);
    }

    #[test]
    fn parse_weight() {
        assert_eq!("-1, 1,0".parse::<Weight>().unwrap(), w(&[-1, 1, 0]));
        assert!("1,x".parse::<Weight>().is_err());
        assert!("".parse::<Weight>().is_err());
    }

    #[test]
    fn roots() {
        let r = RootSystem::new(2);
        assert_eq!(r.simple_root(0), w(&[-1, 1, 0]));
        assert_eq!(r.all_roots().len(), 6);
        assert_eq!(r.rho(), w(&[0, -1, -2]));
    }
}
