//! Stalks of the flag complexes at a point of `P^d`, seen through the
//! reduction of the point to a line over `O^{(n)}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::extension::{tube_member, ExtensionRing, Line};
use super::module::{enumerate_submodules, FiniteModule, SubmoduleFilter};
use super::poset::{FlagPoset, ReducedHomology};
use crate::error::{Error, Result};

/// Which submodules may appear in a flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StalkVariant {
    /// Free submodules with free quotient.
    FreeFlags,
    /// Every submodule with `rk ≥ 1` and `rk′ ≤ d`.
    AllSubmodules,
}

impl StalkVariant {
    pub fn filter(self) -> SubmoduleFilter {
        match self {
            StalkVariant::FreeFlags => SubmoduleFilter::TFree,
            StalkVariant::AllSubmodules => SubmoduleFilter::T,
        }
    }
}

/// The stalk at one line: `C⁰ = {U : L ⊆ U ⊗ O^{(n)}}` and the reduced
/// homology of its order complex, i.e. of the augmented stalk complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stalk {
    /// The smallest `Z/p^n`-module whose tube contains the line.
    pub support: FiniteModule,
    pub size: usize,
    pub homology: ReducedHomology,
}

/// Enumerated submodules for repeated stalk computations at fixed `(p, n, d)`.
#[derive(Debug, Clone)]
pub struct StalkContext {
    ring: ExtensionRing,
    d: usize,
    variant: StalkVariant,
    poset: FlagPoset,
    cache: BTreeMap<FiniteModule, Stalk>,
}

impl StalkContext {
    pub fn new(ring: ExtensionRing, d: usize, variant: StalkVariant) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("d must be at least 1".into()));
        }
        let elements = enumerate_submodules(ring.p(), ring.n(), d + 1, variant.filter())?;
        Ok(StalkContext { ring, d, variant, poset: FlagPoset::new(elements)?, cache: BTreeMap::new() })
    }

    pub fn variant(&self) -> StalkVariant {
        self.variant
    }

    pub fn poset(&self) -> &FlagPoset {
        &self.poset
    }

    /// The elements of the poset whose tube contains the line.
    pub fn covering(&self, line: &Line) -> Result<FlagPoset> {
        self.check(line)?;
        let mut keep = Vec::new();
        for u in self.poset.elements() {
            if tube_member(u, line)? {
                keep.push(u.clone());
            }
        }
        FlagPoset::new(keep)
    }

    fn check(&self, line: &Line) -> Result<()> {
        if *line.ring() != self.ring || line.generator().len() != self.d + 1 {
            return Err(Error::Precondition("line over a different ring or of a different rank".into()));
        }
        Ok(())
    }

    /// The stalk at `line`. An empty `C⁰` gives the zero complex.
    pub fn stalk(&mut self, line: &Line) -> Result<Stalk> {
        self.check(line)?;
        let support = line.support()?;
        if let Some(s) = self.cache.get(&support) {
            return Ok(s.clone());
        }
        let cover = self.covering(line)?;
        let homology = if cover.is_empty() { ReducedHomology { betti: vec![0] } } else { cover.homology()? };
        let stalk = Stalk { support: support.clone(), size: cover.len(), homology };
        self.cache.insert(support, stalk.clone());
        Ok(stalk)
    }
}

/// Reduced homology of the augmented stalk complex at `line`.
pub fn stalk_complex_homology(p: u64, n: u32, d: usize, line: &Line, variant: StalkVariant) -> Result<ReducedHomology> {
    let ring = ExtensionRing::new(p, n)?;
    if *line.ring() != ring {
        return Err(Error::Precondition("line is not over the default extension of Z/p^n".into()));
    }
    Ok(StalkContext::new(ring, d, variant)?.stalk(line)?.homology)
}

/// Numbers of free summands of each rank `1..=d` containing `u`.
pub fn free_covers(u: &FiniteModule) -> Result<Vec<usize>> {
    let d = u.ambient_rank() - 1;
    let free = enumerate_submodules(u.p(), u.n(), d + 1, SubmoduleFilter::TFree)?;
    let mut counts = vec![0; d];
    for w in free.iter().filter(|w| w.contains(u)) {
        counts[w.ranks().0 - 1] += 1;
    }
    Ok(counts)
}
