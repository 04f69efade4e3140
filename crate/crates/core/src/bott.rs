//! Borel–Weil–Bott cohomology of `F_λ` on `P^d`, the Weyl dimension
//! formula, torus characters with certified regions, irreducible characters
//! and their decomposition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{dot_action, find_i0, BottCase, Permutation, Weight, WeylWord};

/// One half-space constraint on weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// Every coordinate lies in `[-r, r]`.
    MaxAbs(i64),
    /// Pole order `Σ_{μ_a < 0} (−μ_a)` is at most the bound.
    MaxPole(i64),
    /// `μ_0 + … + μ_{len−1} ≤ max`.
    PrefixSum { len: usize, max: i64 },
}

impl Bound {
    pub fn contains(&self, w: &Weight) -> bool {
        let e = w.entries();
        match *self {
            Bound::MaxAbs(r) => e.iter().all(|x| x.abs() <= r),
            Bound::MaxPole(m) => e.iter().filter(|&&x| x < 0).map(|x| -x).sum::<i64>() <= m,
            Bound::PrefixSum { len, max } => e.iter().take(len).sum::<i64>() <= max,
        }
    }

    fn permutation_invariant(&self) -> bool {
        !matches!(self, Bound::PrefixSum { .. })
    }
}

/// The set of weights on which a character is known exactly: the
/// intersection of its bounds. No bounds means complete.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    bounds: Vec<Bound>,
}

impl Region {
    pub fn complete() -> Self {
        Region::default()
    }

    pub fn with(bound: Bound) -> Self {
        Region { bounds: vec![bound] }
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn is_complete(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.bounds.iter().all(|b| b.contains(w))
    }

    /// Intersection; repeated bounds of one kind keep the tighter value.
    pub fn intersect(&self, other: &Region) -> Region {
        let mut out: Vec<Bound> = Vec::new();
        for b in self.bounds.iter().chain(&other.bounds) {
            let slot = out.iter_mut().find(|x| match (**x, *b) {
                (Bound::MaxAbs(_), Bound::MaxAbs(_)) | (Bound::MaxPole(_), Bound::MaxPole(_)) => true,
                (Bound::PrefixSum { len: a, .. }, Bound::PrefixSum { len: c, .. }) => a == c,
                _ => false,
            });
            match slot {
                None => out.push(*b),
                Some(x) => {
                    *x = match (*x, *b) {
                        (Bound::MaxAbs(a), Bound::MaxAbs(c)) => Bound::MaxAbs(a.min(c)),
                        (Bound::MaxPole(a), Bound::MaxPole(c)) => Bound::MaxPole(a.min(c)),
                        (Bound::PrefixSum { len, max: a }, Bound::PrefixSum { max: c, .. }) => {
                            Bound::PrefixSum { len, max: a.min(c) }
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        out.sort();
        Region { bounds: out }
    }
}

/// A torus character: weight multiplicities, exact on `region`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    terms: BTreeMap<Weight, u64>,
    region: Region,
}

impl Character {
    pub fn empty() -> Self {
        Character::default()
    }

    /// A complete (finite) character.
    pub fn complete<I: IntoIterator<Item = (Weight, u64)>>(terms: I) -> Self {
        Self::truncated(terms, Region::complete())
    }

    /// A character known exactly on `region`; terms outside it are dropped.
    pub fn truncated<I: IntoIterator<Item = (Weight, u64)>>(terms: I, region: Region) -> Self {
        let mut map = BTreeMap::new();
        for (w, m) in terms {
            if m > 0 && region.contains(&w) {
                *map.entry(w).or_insert(0) += m;
            }
        }
        Character { terms: map, region }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn is_complete(&self) -> bool {
        self.region.is_complete()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total multiplicity.
    pub fn mass(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Lexicographically largest weight.
    pub fn lex_max(&self) -> Option<&Weight> {
        self.terms.keys().next_back()
    }

    pub fn restrict(&self, region: &Region) -> Character {
        let region = self.region.intersect(region);
        Character {
            terms: self.terms.iter().filter(|(w, _)| region.contains(w)).map(|(w, &m)| (w.clone(), m)).collect(),
            region,
        }
    }

    pub fn scale(&self, m: u64) -> Character {
        Character::truncated(self.terms.iter().map(|(w, &c)| (w.clone(), c * m)), self.region.clone())
    }

    /// Sum, exact on the intersection of the two regions.
    pub fn plus(&self, other: &Character) -> Character {
        let region = self.region.intersect(&other.region);
        Character::truncated(self.terms().chain(other.terms()).map(|(w, m)| (w.clone(), m)), region)
    }

    /// Difference on the intersection of regions; fails if some coefficient
    /// would be negative.
    pub fn checked_sub(&self, other: &Character) -> Result<Character> {
        let region = self.region.intersect(&other.region);
        let diff = VirtualCharacter::from(self).minus(&VirtualCharacter::from(other)).restrict(&region);
        diff.into_character()
    }

    /// Equality on the intersection of certified regions.
    pub fn agrees_with(&self, other: &Character) -> bool {
        let region = self.region.intersect(&other.region);
        self.restrict(&region).terms == other.restrict(&region).terms
    }

    /// Coefficient-wise `self ≤ other` on the intersection of regions.
    pub fn dominated_by(&self, other: &Character) -> bool {
        let region = self.region.intersect(&other.region);
        self.terms.iter().filter(|(w, _)| region.contains(w)).all(|(w, &m)| m <= other.multiplicity(w))
    }

    /// Weight-wise convolution (tensor product). Both factors must be complete.
    pub fn convolve(&self, other: &Character) -> Result<Character> {
        if !self.is_complete() || !other.is_complete() {
            return Err(Error::Uncertified("convolution of truncated characters".into()));
        }
        let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
        for (a, &m) in &self.terms {
            for (b, &n) in &other.terms {
                *map.entry(a.add(b)?).or_insert(0) += m * n;
            }
        }
        Ok(Character { terms: map, region: Region::complete() })
    }

    /// Permutes coordinates of every weight. The region must be invariant.
    pub fn permute(&self, p: &Permutation) -> Result<Character> {
        if !self.region.bounds.iter().all(Bound::permutation_invariant) {
            return Err(Error::Uncertified("region not invariant under the permutation".into()));
        }
        let terms = self.terms.iter().map(|(w, &m)| Ok((p.apply(w)?, m))).collect::<Result<Vec<_>>>()?;
        Ok(Character::truncated(terms, self.region.clone()))
    }

    /// Shifts every weight by `s`. Only allowed on complete characters.
    pub fn shift(&self, s: &Weight) -> Result<Character> {
        if !self.is_complete() {
            return Err(Error::Uncertified("shift of a truncated character".into()));
        }
        let terms = self.terms.iter().map(|(w, &m)| Ok((w.add(s)?, m))).collect::<Result<Vec<_>>>()?;
        Ok(Character::complete(terms))
    }
}

/// A signed combination of weights, used for alternating sums.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
    region: Region,
}

impl VirtualCharacter {
    pub fn zero(region: Region) -> Self {
        VirtualCharacter { terms: BTreeMap::new(), region }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn coefficient(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    fn add_scaled(&self, other: &VirtualCharacter, sign: i64) -> VirtualCharacter {
        let region = self.region.intersect(&other.region);
        let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, m) in self.terms().chain(other.terms().map(|(w, m)| (w, sign * m))) {
            if region.contains(w) {
                *terms.entry(w.clone()).or_insert(0) += m;
            }
        }
        terms.retain(|_, m| *m != 0);
        VirtualCharacter { terms, region }
    }

    pub fn plus(&self, other: &VirtualCharacter) -> VirtualCharacter {
        self.add_scaled(other, 1)
    }

    pub fn minus(&self, other: &VirtualCharacter) -> VirtualCharacter {
        self.add_scaled(other, -1)
    }

    pub fn restrict(&self, region: &Region) -> VirtualCharacter {
        let region = self.region.intersect(region);
        VirtualCharacter {
            terms: self.terms.iter().filter(|(w, _)| region.contains(w)).map(|(w, &m)| (w.clone(), m)).collect(),
            region,
        }
    }

    /// Equality on the intersection of regions.
    pub fn agrees_with(&self, other: &VirtualCharacter) -> bool {
        self.minus(other).terms.is_empty()
    }

    pub fn into_character(self) -> Result<Character> {
        if let Some((w, m)) = self.terms.iter().find(|(_, &m)| m < 0) {
            return Err(Error::NotACharacter(format!("coefficient {m} at {w}")));
        }
        Ok(Character::truncated(self.terms.into_iter().map(|(w, m)| (w, m as u64)), self.region))
    }
}

impl From<&Character> for VirtualCharacter {
    fn from(c: &Character) -> Self {
        VirtualCharacter {
            terms: c.terms.iter().map(|(w, &m)| (w.clone(), m as i64)).collect(),
            region: c.region.clone(),
        }
    }
}

/// Cohomology of `F_λ` on `P^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub degree: Option<usize>,
    pub highest_weight: Option<Weight>,
    pub dimension: u64,
}

impl CohomologyResult {
    /// `dim H^i`, signed Euler contribution summed over all `i`.
    pub fn euler_characteristic(&self) -> i64 {
        match self.degree {
            Some(i) if i % 2 == 1 => -(self.dimension as i64),
            Some(_) => self.dimension as i64,
            None => 0,
        }
    }

    pub fn dimension_in_degree(&self, i: usize) -> u64 {
        if self.degree == Some(i) {
            self.dimension
        } else {
            0
        }
    }
}

/// Bott's theorem: at most one nonvanishing degree, namely `i0`.
pub fn bwb_cohomology(d: usize, lambda: &Weight) -> Result<CohomologyResult> {
    let (i0, case) = find_i0(d, lambda)?;
    Ok(match case {
        BottCase::Degenerate => CohomologyResult { degree: None, highest_weight: None, dimension: 0 },
        BottCase::DominantRegular => {
            let hw = dot_action(&WeylWord::new(d, i0)?, lambda)?;
            let dimension = weyl_dim(&hw)?;
            CohomologyResult { degree: Some(i0), highest_weight: Some(hw), dimension }
        }
    })
}

fn require_dominant(mu: &Weight) -> Result<()> {
    if mu.is_empty() {
        return Err(Error::Precondition("empty weight".into()));
    }
    if !mu.is_dominant() {
        return Err(Error::Precondition(format!("{mu} is not dominant")));
    }
    Ok(())
}

/// `∏_{i<j} (μ_i − μ_j + j − i)/(j − i)`.
pub fn weyl_dim(mu: &Weight) -> Result<u64> {
    require_dominant(mu)?;
    let e = mu.entries();
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            num *= e[i] - e[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den).to_u64().ok_or_else(|| Error::Precondition(format!("dimension of {mu} overflows")))
}

/// Weight multiplicities of `V_μ` from semistandard tableaux.
pub fn irrep_character(mu: &Weight) -> Result<Character> {
    require_dominant(mu)?;
    let n = mu.len();
    let base = mu[n - 1];
    let shape: Vec<usize> = mu.entries().iter().map(|&x| (x - base) as usize).collect();
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut content = vec![0i64; n];
    let mut terms: BTreeMap<Weight, u64> = BTreeMap::new();
    fill(&shape, &mut tableau, 0, 0, n, &mut content, &mut |c| {
        let w = Weight::new(c.iter().map(|x| x + base).collect());
        *terms.entry(w).or_insert(0) += 1;
    });
    Ok(Character { terms, region: Region::complete() })
}

fn fill(
    shape: &[usize],
    t: &mut Vec<Vec<usize>>,
    row: usize,
    col: usize,
    n: usize,
    content: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if row == shape.len() || shape[row] == 0 {
        emit(content);
        return;
    }
    if col == shape[row] {
        fill(shape, t, row + 1, 0, n, content, emit);
        return;
    }
    let lo_left = if col > 0 { t[row][col - 1] } else { 0 };
    let lo_up = if row > 0 { t[row - 1][col] + 1 } else { 0 };
    // An entry in row r is at least r, and leaves room below it.
    let hi = n - (shape.iter().skip(row).take_while(|&&l| l > col).count());
    for v in lo_left.max(lo_up)..=hi {
        t[row][col] = v;
        content[v] += 1;
        fill(shape, t, row, col + 1, n, content, emit);
        content[v] -= 1;
    }
}

/// Irreducible decomposition by peeling off the lexicographically largest
/// weight. The character must be complete.
pub fn decompose_character(chi: &Character) -> Result<Vec<(Weight, u64)>> {
    if !chi.is_complete() {
        return Err(Error::Uncertified("decomposition needs a complete character".into()));
    }
    let mut rest = VirtualCharacter::from(chi);
    let mut out = Vec::new();
    while let Some((mu, m)) = rest.terms.iter().next_back().map(|(w, &m)| (w.clone(), m)) {
        if m < 0 || !mu.is_dominant() {
            return Err(Error::NotACharacter(format!("leading term {m}·{mu}")));
        }
        let irr = VirtualCharacter::from(&irrep_character(&mu)?.scale(m as u64));
        rest = rest.minus(&irr);
        if let Some((w, c)) = rest.terms.iter().find(|(_, &c)| c < 0) {
            return Err(Error::NotACharacter(format!("coefficient {c} at {w} after removing {m}·V{mu}")));
        }
        out.push((mu, m as u64));
    }
    Ok(out)
}

/// Character of `V_{μ_1} ⊠ … ⊠ V_{μ_r}` for a Levi subgroup, as a weight of
/// the concatenated length.
pub fn levi_irrep_character(blocks: &[Weight]) -> Result<Character> {
    let mut acc = Character::complete([(Weight::new(vec![]), 1)]);
    for b in blocks {
        let c = irrep_character(b)?;
        let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
        for (a, m) in acc.terms() {
            for (w, n) in c.terms() {
                *map.entry(a.concat(w)).or_insert(0) += m * n;
            }
        }
        acc = Character::complete(map);
    }
    Ok(acc)
}
