//! The unramified quadratic extension `O^{(n)} = (Z/p^n)[t]/(f)` and lines
//! in `(O^{(n)})^{d+1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::module::{check_params, FiniteModule};
use crate::error::{Error, Result};

/// `(Z/p^n)[t]/(t² + a₁t + a₀)` with the modulus irreducible mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtensionRing {
    p: u64,
    n: u32,
    a0: u64,
    a1: u64,
}

/// `c0 + c1·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingElement {
    pub c0: u64,
    pub c1: u64,
}

impl ExtensionRing {
    /// `t² + t + 1` for `p = 2`, `t² − s` with `s` the least non-square otherwise.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        check_params(p, n, 1)?;
        if p == 2 {
            return Self::with_modulus(p, n, 1, 1);
        }
        let s = (2..p).find(|&s| (1..p).all(|x| x * x % p != s)).expect("odd primes have non-squares");
        let q = p.pow(n);
        Self::with_modulus(p, n, q - s, 0)
    }

    pub fn with_modulus(p: u64, n: u32, a0: u64, a1: u64) -> Result<Self> {
        let q = check_params(p, n, 1)?;
        let (a0, a1) = (a0 % q, a1 % q);
        if (0..p).any(|x| (x * x + a1 % p * x + a0 % p) % p == 0) {
            return Err(Error::Precondition(format!("t^2 + {a1}t + {a0} has a root mod {p}")));
        }
        Ok(ExtensionRing { p, n, a0, a1 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn q(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn size(&self) -> u64 {
        self.q() * self.q()
    }

    pub fn element(&self, c0: u64, c1: u64) -> RingElement {
        RingElement { c0: c0 % self.q(), c1: c1 % self.q() }
    }

    pub fn zero(&self) -> RingElement {
        self.element(0, 0)
    }

    pub fn one(&self) -> RingElement {
        self.element(1, 0)
    }

    /// The class of `t`, a unit whose reduction generates the residue field over `F_p`.
    pub fn generator(&self) -> RingElement {
        self.element(0, 1)
    }

    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        self.element(a.c0 + b.c0, a.c1 + b.c1)
    }

    pub fn neg(&self, a: RingElement) -> RingElement {
        let q = self.q();
        self.element(q - a.c0, q - a.c1)
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        let q = self.q();
        let c0 = a.c0 * b.c0 % q;
        let c1 = (a.c0 * b.c1 + a.c1 * b.c0) % q;
        let c2 = a.c1 * b.c1 % q;
        // t² = −a₁t − a₀
        self.element(c0 + q - c2 * self.a0 % q, c1 + q - c2 * self.a1 % q)
    }

    pub fn pow(&self, a: RingElement, mut e: u64) -> RingElement {
        let (mut base, mut acc) = (a, self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: RingElement) -> bool {
        a.c0 % self.p != 0 || a.c1 % self.p != 0
    }

    pub fn inverse(&self, a: RingElement) -> Result<RingElement> {
        if !self.is_unit(a) {
            return Err(Error::Precondition(format!("{a} is not a unit")));
        }
        let units = self.size() - self.size() / (self.p * self.p);
        Ok(self.pow(a, units - 1))
    }

    pub fn elements(&self) -> Vec<RingElement> {
        let q = self.q();
        (0..q).flat_map(|c1| (0..q).map(move |c0| RingElement { c0, c1 })).collect()
    }

    /// The line spanned by a vector with some unit coordinate, normalized so
    /// that its first unit coordinate is `1`.
    pub fn line(&self, v: Vec<RingElement>) -> Result<Line> {
        let first = v.iter().position(|&x| self.is_unit(x)).ok_or_else(|| Error::Precondition("vector is not unimodular".into()))?;
        let inv = self.inverse(v[first])?;
        let generator = v.into_iter().map(|x| self.mul(x, inv)).collect();
        Ok(Line { ring: *self, generator })
    }

    /// All points of `P^d(O^{(n)})`, one normalized generator each.
    pub fn lines(&self, d: usize) -> Result<Vec<Line>> {
        let n = d + 1;
        let all = self.elements();
        let nonunits: Vec<RingElement> = all.iter().copied().filter(|&x| !self.is_unit(x)).collect();
        let estimate = (self.size() as u128).pow(d as u32) * n as u128;
        if estimate > 1 << 22 {
            return Err(Error::TooLarge { estimate, limit: 1 << 22 });
        }
        let mut out = Vec::new();
        for lead in 0..n {
            let mut partial: Vec<Vec<RingElement>> = vec![vec![]];
            for a in 0..n {
                let choices: &[RingElement] = if a < lead {
                    &nonunits
                } else if a == lead {
                    &[RingElement { c0: 1, c1: 0 }]
                } else {
                    &all
                };
                partial = partial.into_iter().flat_map(|v| choices.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
            }
            out.extend(partial.into_iter().map(|generator| Line { ring: *self, generator }));
        }
        Ok(out)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}t"),
            (a, b) => write!(f, "{a}+{b}t"),
        }
    }
}

/// A free rank-one `O^{(n)}`-submodule of `(O^{(n)})^{d+1}` with a normalized generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Line {
    ring: ExtensionRing,
    generator: Vec<RingElement>,
}

impl Line {
    pub fn ring(&self) -> &ExtensionRing {
        &self.ring
    }

    pub fn generator(&self) -> &[RingElement] {
        &self.generator
    }

    /// `(v₀, v₁)` with generator `v₀ + t·v₁`, `v_k ∈ (Z/p^n)^{d+1}`.
    pub fn coefficient_vectors(&self) -> (Vec<u64>, Vec<u64>) {
        (self.generator.iter().map(|x| x.c0).collect(), self.generator.iter().map(|x| x.c1).collect())
    }

    /// The smallest `Z/p^n`-submodule `W` with `L ⊆ W ⊗ O^{(n)}`, spanned by `v₀, v₁`.
    pub fn support(&self) -> Result<FiniteModule> {
        let (v0, v1) = self.coefficient_vectors();
        FiniteModule::span(self.ring.p(), self.ring.n(), self.generator.len(), &[v0, v1])
    }

    /// Defined over `Z/p^n`: the normalized generator has no `t` component.
    pub fn is_rational(&self) -> bool {
        self.generator.iter().all(|x| x.c1 == 0)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generator.iter().map(|x| x.to_string()).collect();
        write!(f, "<({})>", parts.join(", "))
    }
}

/// `L ⊆ U ⊗ O^{(n)}`. Since `O^{(n)} = Z/p^n ⊕ t·Z/p^n` as a module, this
/// holds iff both coefficient vectors of the generator lie in `U`.
pub fn tube_member(u: &FiniteModule, line: &Line) -> Result<bool> {
    let ring = line.ring();
    if (u.p(), u.n(), u.ambient_rank()) != (ring.p(), ring.n(), line.generator().len()) {
        return Err(Error::Precondition("line and submodule live in different ambient modules".into()));
    }
    let (v0, v1) = line.coefficient_vectors();
    Ok(u.contains_vector(&v0) && u.contains_vector(&v1))
}
