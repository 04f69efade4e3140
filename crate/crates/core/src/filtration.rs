//! The weights `μ_{j,λ}`, the sets `Φ_{j,λ}` and `Ψ_{j,λ}`, the modules
//! `N`, the block swap `z_j`, and the assembled subquotient report.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bott::{bwb_cohomology, CohomologyResult};
use crate::error::{Error, Result};
use crate::pieri::{capped_compositions, IrrepDescriptor, LeviShape};
use crate::weights::{check_levi_dominant, dot_action, find_i0, BottCase, Permutation, Weight, WeylWord};

/// The block permutation `z_i`, exchanging block structure `(i, d+1−i)`
/// with `(d+1−i, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSwap {
    pub d: usize,
    pub i: usize,
}

impl BlockSwap {
    pub fn new(d: usize, i: usize) -> Result<Self> {
        if i > d + 1 {
            return Err(Error::Precondition(format!("z_{i} undefined for d = {d}")));
        }
        Ok(BlockSwap { d, i })
    }

    /// `(ν'', ν') ↦ (ν', ν'')` with `ν'` of length `i`: the action of `z_i`.
    pub fn permutation(&self) -> Permutation {
        self.inverse_permutation().inverse()
    }

    /// `(μ', μ'') ↦ (μ'', μ')` with `μ'` of length `i`: the action of `z_i^{-1}`.
    pub fn inverse_permutation(&self) -> Permutation {
        let (n, i) = (self.d + 1, self.i);
        let map = (0..n).map(|a| if a < i { a + n - i } else { a - i }).collect();
        Permutation::from_map(map).expect("block swap is a permutation")
    }

    pub fn apply(&self, w: &Weight) -> Result<Weight> {
        self.permutation().apply(w)
    }

    pub fn apply_inverse(&self, w: &Weight) -> Result<Weight> {
        self.inverse_permutation().apply(w)
    }
}

/// A direct sum of irreducible Levi representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub summands: Vec<IrrepDescriptor>,
    pub total_dimension: u64,
}

impl ModuleDescriptor {
    pub fn new(summands: Vec<IrrepDescriptor>) -> Self {
        let total_dimension = summands.iter().map(|s| s.multiplicity * s.dimension).sum();
        ModuleDescriptor { summands, total_dimension }
    }
}

fn check_index(j: usize, d: usize) -> Result<()> {
    if j == 0 || j > d {
        return Err(Error::Precondition(format!("index {j} outside 1..={d}")));
    }
    Ok(())
}

/// `μ_{j,λ} = w_{j−1} ∗ λ` if `j ≤ i0`, else `w_j ∗ λ`.
pub fn mu_weight(j: usize, d: usize, lambda: &Weight) -> Result<Weight> {
    check_index(j, d)?;
    let (i0, _) = find_i0(d, lambda)?;
    let k = if j <= i0 { j - 1 } else { j };
    dot_action(&WeylWord::new(d, k)?, lambda)
}

/// Pairs `(μ' − (d_i,…,d_1), μ'' + (c_1,…))` for one `μ_{i,λ}`.
fn phi_pairs(i: usize, d: usize, lambda: &Weight) -> Result<Vec<(Weight, Weight)>> {
    let mu = mu_weight(i, d, lambda)?;
    let (m1, m2) = mu.split_at(i);
    let (a, b) = (m1.entries(), m2.entries());
    let caps_c: Vec<i64> = b.windows(2).map(|w| w[0] - w[1]).collect();
    // d_{l+1} ≤ μ'_{i−l} − μ'_{i−l+1}, 1-indexed; d_1 hits the last entry.
    let caps_d: Vec<i64> = (1..i).map(|l| a[i - l - 1] - a[i - l]).collect();
    let kmax = b[0] - b[b.len() - 1];
    let mut out = BTreeSet::new();
    for k in 0..=kmax {
        let cs = capped_compositions(k, b.len(), &caps_c);
        let ds = capped_compositions(k, i, &caps_d);
        for c in &cs {
            for dv in &ds {
                if c[0] != 0 && dv[0] != 0 {
                    continue;
                }
                let left = Weight::new((0..i).map(|p| a[p] - dv[i - 1 - p]).collect());
                let right = Weight::new(b.iter().zip(c).map(|(x, y)| x + y).collect());
                out.insert((left, right));
            }
        }
    }
    Ok(out.into_iter().rev().collect())
}

/// `Φ_{i,λ}`, sorted lexicographically decreasing.
pub fn phi_set(i: usize, d: usize, lambda: &Weight) -> Result<Vec<Weight>> {
    Ok(phi_pairs(i, d, lambda)?.into_iter().map(|(a, b)| a.concat(&b)).collect())
}

/// `Ψ_{j,λ} = z_j^{-1} · Φ_{j,λ}`, sorted lexicographically decreasing.
pub fn psi_set(j: usize, d: usize, lambda: &Weight) -> Result<Vec<Weight>> {
    let mut out: Vec<Weight> = phi_pairs(j, d, lambda)?.into_iter().map(|(a, b)| b.concat(&a)).collect();
    out.sort_by(|x, y| y.cmp(x));
    Ok(out)
}

/// `⊕_{μ ∈ Ψ_{j,λ}} V_μ` for the Levi with blocks `(d+1−j, j)`.
pub fn n_module(j: usize, d: usize, lambda: &Weight) -> Result<ModuleDescriptor> {
    let shape = LeviShape::two(d + 1 - j, j)?;
    let summands = psi_set(j, d, lambda)?
        .iter()
        .map(|w| IrrepDescriptor::from_weight(shape.clone(), w))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleDescriptor::new(summands))
}

/// The finite part `v^G_P(H^j)` of a subquotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicPart {
    /// Type of the parabolic, `(d+1−j, 1, …, 1)`.
    pub parabolic: Vec<usize>,
    pub tag: String,
    pub coefficient_dimension: u64,
    /// The parabolic is a Borel subgroup, so the tag is the Steinberg representation.
    pub steinberg: bool,
}

/// The induced part: `N` together with the Steinberg factor `St_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticPart {
    /// Index of `N` in the local cohomology labelling, `d − j`.
    pub module_index: usize,
    pub n_module: ModuleDescriptor,
    pub psi: Vec<Weight>,
    pub steinberg_tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubquotientDescriptor {
    pub j: usize,
    pub parabolic: LeviShape,
    pub algebraic_part: Option<AlgebraicPart>,
    pub analytic_part: AnalyticPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub d: usize,
    pub lambda: Weight,
    pub i0: usize,
    pub case: BottCase,
    pub cohomology: CohomologyResult,
    /// `dim W^0 = dim H^0(P^d, F_λ)`.
    pub floor_dimension: u64,
    pub subquotients: Vec<SubquotientDescriptor>,
}

fn parabolic_tag(d: usize, j: usize) -> Vec<usize> {
    let mut p = vec![d + 1 - j];
    p.extend(std::iter::repeat(1).take(j));
    p
}

pub fn filtration_report(d: usize, lambda: &Weight) -> Result<FiltrationReport> {
    check_levi_dominant(d, lambda)?;
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    let (i0, case) = find_i0(d, lambda)?;
    let cohomology = bwb_cohomology(d, lambda)?;
    let mut subquotients = Vec::with_capacity(d);
    for j in 1..=d {
        let algebraic_part = (cohomology.degree == Some(j)).then(|| {
            let parabolic = parabolic_tag(d, j);
            let inner: Vec<String> = parabolic.iter().map(|x| x.to_string()).collect();
            AlgebraicPart {
                tag: format!("v^G_P({})", inner.join(",")),
                parabolic,
                coefficient_dimension: cohomology.dimension,
                steinberg: j == d,
            }
        });
        subquotients.push(SubquotientDescriptor {
            j,
            parabolic: LeviShape::two(d + 1 - j, j)?,
            algebraic_part,
            analytic_part: AnalyticPart {
                module_index: d - j,
                n_module: n_module(j, d, lambda)?,
                psi: psi_set(j, d, lambda)?,
                steinberg_tag: format!("St_{j}"),
            },
        });
    }
    Ok(FiltrationReport {
        d,
        lambda: lambda.clone(),
        i0,
        case,
        floor_dimension: cohomology.dimension_in_degree(0),
        cohomology,
        subquotients,
    })
}
