//! One-row Pieri rule, its dual, and the block-wise version for a Levi
//! subgroup with two blocks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bott::weyl_dim;
use crate::error::{Error, Result};
use crate::weights::{check_len, Weight};

/// Block sizes `(i_1, …, i_r)` of a standard Levi subgroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeviShape {
    blocks: Vec<usize>,
}

impl LeviShape {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Precondition(format!("bad block sizes {blocks:?}")));
        }
        Ok(LeviShape { blocks })
    }

    pub fn two(a: usize, b: usize) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Splits a weight of length `total()` into block weights.
    pub fn split(&self, w: &Weight) -> Result<Vec<Weight>> {
        check_len(self.total(), w.len())?;
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut start = 0;
        for &b in &self.blocks {
            out.push(Weight::from(&w.entries()[start..start + b]));
            start += b;
        }
        Ok(out)
    }
}

impl fmt::Display for LeviShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An irreducible representation `V_{μ_1} ⊠ … ⊠ V_{μ_r}` of a Levi
/// subgroup, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrrepDescriptor {
    pub shape: LeviShape,
    pub block_weights: Vec<Weight>,
    pub multiplicity: u64,
    pub dimension: u64,
}

impl IrrepDescriptor {
    pub fn new(shape: LeviShape, block_weights: Vec<Weight>, multiplicity: u64) -> Result<Self> {
        if shape.blocks().len() != block_weights.len() {
            return Err(Error::Precondition("one block weight per block".into()));
        }
        let mut dimension = 1;
        for (b, w) in shape.blocks().iter().zip(&block_weights) {
            check_len(*b, w.len())?;
            dimension *= weyl_dim(w)?;
        }
        if multiplicity == 0 {
            return Err(Error::Precondition("multiplicity must be positive".into()));
        }
        Ok(IrrepDescriptor { shape, block_weights, multiplicity, dimension })
    }

    /// From a full-length weight split along the shape.
    pub fn from_weight(shape: LeviShape, w: &Weight) -> Result<Self> {
        let blocks = shape.split(w)?;
        Self::new(shape, blocks, 1)
    }

    /// The concatenated highest weight.
    pub fn highest_weight(&self) -> Weight {
        self.block_weights.iter().fold(Weight::new(vec![]), |acc, b| acc.concat(b))
    }
}

fn require_dominant(nu: &Weight, n: usize) -> Result<()> {
    check_len(n, nu.len())?;
    if !nu.is_dominant() {
        return Err(Error::Precondition(format!("{nu} is not dominant")));
    }
    Ok(())
}

/// Compositions `c` of `k` with `c_0` free and `c_a ≤ caps[a-1]` for `a ≥ 1`.
pub(crate) fn capped_compositions(k: i64, n: usize, caps: &[i64]) -> Vec<Vec<i64>> {
    fn go(k: i64, a: usize, n: usize, caps: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if a == n {
            if k == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = if a == 0 { k } else { k.min(caps[a - 1]) };
        for c in 0..=hi {
            cur.push(c);
            go(k - c, a + 1, n, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 0, n, caps, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `V_{(k,0,…,0)} ⊗ V_ν = ⊕ V_{ν+c}` with `Σc = k`, `c_{a+1} ≤ ν_a − ν_{a+1}`.
pub fn pieri_decompose(k: u32, nu: &Weight, n: usize) -> Result<Vec<Weight>> {
    require_dominant(nu, n)?;
    let e = nu.entries();
    let caps: Vec<i64> = e.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out: Vec<Weight> = capped_compositions(k as i64, n, &caps)
        .into_iter()
        .map(|c| Weight::new(e.iter().zip(&c).map(|(a, b)| a + b).collect()))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `V_{(0,…,0,−k)} ⊗ V_{μ'}`, computed through the dual module.
pub fn dual_pieri_decompose(k: u32, mu: &Weight, n: usize) -> Result<Vec<Weight>> {
    require_dominant(mu, n)?;
    let mut out: Vec<Weight> = pieri_decompose(k, &mu.dual(), n)?.iter().map(Weight::dual).collect();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `(V_{(0,…,0,−k)} ⊗ V_{μ'}) ⊠ (V_{(k,0,…,0)} ⊗ V_{μ''})` for a two-block
/// descriptor.
pub fn levi_tensor_decompose(k: u32, v: &IrrepDescriptor) -> Result<Vec<IrrepDescriptor>> {
    let blocks = v.shape.blocks();
    if blocks.len() != 2 {
        return Err(Error::Precondition(format!("expected a two-block shape, got {}", v.shape)));
    }
    let left = dual_pieri_decompose(k, &v.block_weights[0], blocks[0])?;
    let right = pieri_decompose(k, &v.block_weights[1], blocks[1])?;
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in &left {
        for b in &right {
            out.push(IrrepDescriptor::new(v.shape.clone(), vec![a.clone(), b.clone()], v.multiplicity)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from(v)
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_decompose(3, &w(&[0, 0, 0]), 3).unwrap(), vec![w(&[3, 0, 0])]);
        assert_eq!(pieri_decompose(1, &w(&[1, 0]), 2).unwrap(), vec![w(&[2, 0]), w(&[1, 1])]);
        assert_eq!(pieri_decompose(2, &w(&[1, 0, 0]), 3).unwrap(), vec![w(&[3, 0, 0]), w(&[2, 1, 0])]);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_pieri_decompose(0, &w(&[2, -1]), 2).unwrap(), vec![w(&[2, -1])]);
        assert_eq!(dual_pieri_decompose(1, &w(&[0, 0]), 2).unwrap(), vec![w(&[0, -1])]);
        assert_eq!(dual_pieri_decompose(1, &w(&[1, 0]), 2).unwrap(), vec![w(&[1, -1]), w(&[0, 0])]);
    }

    #[test]
    fn levi_examples() {
        let v = IrrepDescriptor::new(LeviShape::two(1, 2).unwrap(), vec![w(&[-1]), w(&[1, 0])], 1).unwrap();
        let got: Vec<Vec<Weight>> = levi_tensor_decompose(1, &v).unwrap().into_iter().map(|x| x.block_weights).collect();
        assert_eq!(got, vec![vec![w(&[-2]), w(&[2, 0])], vec![w(&[-2]), w(&[1, 1])]]);

        let v = IrrepDescriptor::new(LeviShape::two(2, 1).unwrap(), vec![w(&[1, 0]), w(&[0])], 1).unwrap();
        let got: Vec<Vec<Weight>> = levi_tensor_decompose(1, &v).unwrap().into_iter().map(|x| x.block_weights).collect();
        assert_eq!(got, vec![vec![w(&[1, -1]), w(&[1])], vec![w(&[0, 0]), w(&[1])]]);

        assert_eq!(levi_tensor_decompose(0, &v).unwrap(), vec![v.clone()]);

        let three = IrrepDescriptor::new(LeviShape::new(vec![1, 1, 1]).unwrap(), vec![w(&[0]); 3], 1).unwrap();
        assert!(levi_tensor_decompose(1, &three).is_err());
    }
}
