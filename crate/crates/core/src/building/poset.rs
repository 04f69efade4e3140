//! Finite posets, their order complexes, reduced homology, and Quillen's
//! contractibility criterion.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::module::FiniteModule;
use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, SparseMatrix};

/// Largest number of chains an order complex may have.
pub const CHAIN_LIMIT: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// A finite strict partial order on `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    /// `above[a]` holds every `b` with `a < b`.
    above: Vec<BitSet>,
    below: Vec<BitSet>,
}

impl Poset {
    /// Builds the order from `less(a, b)` and checks it is a strict partial order.
    pub fn from_relation(len: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut above = vec![BitSet::new(len); len];
        let mut below = vec![BitSet::new(len); len];
        for a in 0..len {
            for b in 0..len {
                if less(a, b) {
                    if a == b {
                        return Err(Error::Precondition(format!("relation is reflexive at {a}")));
                    }
                    above[a].insert(b);
                    below[b].insert(a);
                }
            }
        }
        for a in 0..len {
            for b in above[a].ones() {
                if above[b].contains(a) {
                    return Err(Error::Precondition(format!("relation is symmetric at ({a},{b})")));
                }
                if !above[b].is_subset(&above[a]) {
                    return Err(Error::Precondition(format!("relation is not transitive through {b}")));
                }
            }
        }
        Ok(Poset { above, below })
    }

    /// A chain `0 < 1 < … < len−1`.
    pub fn total_order(len: usize) -> Self {
        Self::from_relation(len, |a, b| a < b).expect("a total order")
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    /// The induced order on `keep`, relabelled `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        Self::from_relation(keep.len(), |a, b| self.less(keep[a], keep[b])).expect("restriction of a partial order")
    }

    /// Elements left after repeatedly removing beat points: elements whose
    /// strict up-set has a minimum or whose strict down-set has a maximum.
    /// The order complex of the core is homotopy equivalent to the original.
    pub fn core(&self) -> Vec<usize> {
        let n = self.len();
        let mut alive = BitSet::new(n);
        for a in 0..n {
            alive.insert(a);
        }
        loop {
            let mut removed = false;
            for x in 0..n {
                if !alive.contains(x) {
                    continue;
                }
                let beat = |rel: &Vec<BitSet>| {
                    let s = rel[x].and(&alive);
                    let hit = s.ones().any(|m| {
                        let mut rest = s.clone();
                        rest.0[m / 64] &= !(1 << (m % 64));
                        rest.is_subset(&rel[m])
                    });
                    hit
                };
                if beat(&self.above) || beat(&self.below) {
                    alive.0[x / 64] &= !(1 << (x % 64));
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
        alive.ones().collect()
    }

    /// A linear extension: every element after everything below it.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (self.below[a].ones().count(), a));
        order
    }

    /// Chains grouped by size: `chains[k]` has the chains with `k + 1`
    /// elements, each listed increasingly, `chains` sorted.
    pub fn chains(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let order = self.linear_extension();
        let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut count: u128 = 0;
        let mut stack: Vec<Vec<usize>> = order.iter().map(|&a| vec![a]).collect();
        while let Some(c) = stack.pop() {
            count += 1;
            if count > CHAIN_LIMIT {
                return Err(Error::TooLarge { estimate: count, limit: CHAIN_LIMIT });
            }
            let top = *c.last().expect("chains are nonempty");
            for b in self.above[top].ones() {
                let mut next = c.clone();
                next.push(b);
                stack.push(next);
            }
            if by_size.len() < c.len() {
                by_size.resize(c.len(), Vec::new());
            }
            by_size[c.len() - 1].push(c);
        }
        for level in &mut by_size {
            level.sort();
        }
        Ok(by_size)
    }

    /// The augmented cochain complex of the order complex: position `0` is
    /// the empty chain, position `k+1` the `k`-simplices.
    pub fn order_complex(&self) -> Result<ChainComplex> {
        let chains = self.chains()?;
        let mut dims = vec![1usize];
        dims.extend(chains.iter().map(Vec::len));
        let mut maps = Vec::with_capacity(chains.len());
        let mut prev_index: HashMap<&[usize], usize> = HashMap::new();
        prev_index.insert(&[], 0);
        for level in &chains {
            let mut m = SparseMatrix::zeros(level.len(), prev_index.len());
            for (row, c) in level.iter().enumerate() {
                for i in 0..c.len() {
                    let face: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
                    let col = prev_index[face.as_slice()];
                    m.add(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
            maps.push(m);
            prev_index = level.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
        }
        ChainComplex::new(dims, maps)
    }
}

/// Reduced Betti numbers over the rationals; `betti[0]` is degree `−1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedHomology {
    pub betti: Vec<u64>,
}

impl ReducedHomology {
    pub fn degree(&self, k: i64) -> u64 {
        usize::try_from(k + 1).ok().and_then(|i| self.betti.get(i)).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// `(degree, rank)` for every nonzero group.
    pub fn nonzero(&self) -> Vec<(i64, u64)> {
        self.betti.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, &b)| (i as i64 - 1, b)).collect()
    }

    fn trim(mut self) -> Self {
        while self.betti.len() > 1 && self.betti.last() == Some(&0) {
            self.betti.pop();
        }
        self
    }
}

/// Reduced homology of the order complex, by exact rank computation on
/// the full chain complex.
pub fn order_complex_homology_full(p: &Poset) -> Result<ReducedHomology> {
    let h = p.order_complex()?.homology();
    Ok(ReducedHomology { betti: h.into_iter().map(|x| x as u64).collect() }.trim())
}

/// Reduced homology of the order complex, computed on the core of the poset.
pub fn order_complex_homology(p: &Poset) -> Result<ReducedHomology> {
    order_complex_homology_full(&p.induced(&p.core()))
}

/// Submodules ordered by strict inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoset {
    elements: Vec<FiniteModule>,
    index: HashMap<FiniteModule, usize>,
    order: Poset,
}

impl FlagPoset {
    pub fn new(mut elements: Vec<FiniteModule>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        // Inclusion between modules of equal order is equality.
        let orders: Vec<u32> = elements.iter().map(FiniteModule::log_order).collect();
        let order = Poset::from_relation(elements.len(), |a, b| orders[a] < orders[b] && elements[b].contains(&elements[a]))?;
        let index = elements.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        Ok(FlagPoset { elements, index, order })
    }

    pub fn elements(&self) -> &[FiniteModule] {
        &self.elements
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, u: &FiniteModule) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// `{W : U ⊆ W}` inside this poset.
    pub fn up_set(&self, u: &FiniteModule) -> Result<FlagPoset> {
        FlagPoset::new(self.elements.iter().filter(|w| w.contains(u)).cloned().collect())
    }

    pub fn homology(&self) -> Result<ReducedHomology> {
        order_complex_homology(&self.order)
    }
}

/// Quillen's criterion on index maps: `f` order preserving with
/// `x ≥ f(x) ≤ x₀` for every `x`. A `true` answer certifies that the order
/// complex is contractible.
pub fn quillen_check_indices(p: &Poset, f: &[usize], x0: usize) -> Result<bool> {
    if f.len() != p.len() || x0 >= p.len() || f.iter().any(|&y| y >= p.len()) {
        return Err(Error::NotSelfMap("map or base point outside the poset".into()));
    }
    for a in 0..p.len() {
        if !p.leq(f[a], a) || !p.leq(f[a], x0) {
            return Ok(false);
        }
        for b in 0..p.len() {
            if p.less(a, b) && !p.leq(f[a], f[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quillen's criterion for a map given on submodules.
pub fn quillen_check(p: &FlagPoset, f: impl Fn(&FiniteModule) -> Result<FiniteModule>, x0: &FiniteModule) -> Result<bool> {
    let base = p.index_of(x0).ok_or_else(|| Error::NotSelfMap(format!("base point {x0} not in the poset")))?;
    let images = p
        .elements()
        .iter()
        .map(|u| {
            let v = f(u)?;
            p.index_of(&v).ok_or_else(|| Error::NotSelfMap(format!("{u} maps to {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    quillen_check_indices(p.order(), &images, base)
}
