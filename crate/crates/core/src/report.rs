//! The document behind `halfspace report`: filtration data for one `(d, λ)`
//! with truncated kernel characters, as deterministic JSON or text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bott::CohomologyResult;
use crate::error::{Error, Result};
use crate::filtration::{filtration_report, AlgebraicPart, ModuleDescriptor};
use crate::localcoh::verma_kernel_character;
use crate::pieri::LeviShape;
use crate::weights::{BottCase, Weight};

/// Identifier of the JSON layout, bumped on any incompatible change.
pub const SCHEMA_VERSION: &str = "halfspace-report/1";

/// Marker for infinite-dimensional objects; serializes as `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Infinite {
    #[serde(rename = "infinite")]
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportInput {
    pub d: usize,
    pub lambda: Weight,
    pub pole_bound: i64,
}

/// The Steinberg factor `St_j` of `GL_j`, recorded by name only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteinbergFactor {
    pub tag: String,
    pub dimension: Infinite,
}

/// Truncated kernel of `U(g) ⊗ N → H̃`, by `U(u^+)`-degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelSummary {
    Computed {
        bound: i64,
        /// Smallest first-block weight sum on `N`.
        base_degree: i64,
        /// `masses[t]` = dimension of the kernel in degree `t`.
        masses: Vec<u64>,
    },
    Unavailable {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubquotientEntry {
    pub j: usize,
    /// Levi blocks `(d+1−j, j)` of the parabolic inducing the analytic part.
    pub parabolic: LeviShape,
    pub dimension: Infinite,
    pub algebraic_part: Option<AlgebraicPart>,
    pub psi: Vec<Weight>,
    pub n_module: ModuleDescriptor,
    pub steinberg: SteinbergFactor,
    pub kernel: KernelSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub input: ReportInput,
    pub i0: usize,
    pub case: BottCase,
    pub cohomology: CohomologyResult,
    pub floor_dimension: u64,
    pub subquotients: Vec<SubquotientEntry>,
    pub notes: Vec<String>,
}

/// Largest `d` the report computes kernel characters for.
pub const KERNEL_MAX_D: usize = 4;

pub fn build_report(d: usize, lambda: &Weight, pole_bound: i64) -> Result<ReportDocument> {
    if pole_bound < 0 {
        return Err(Error::Precondition("pole bound must be nonnegative".into()));
    }
    let f = filtration_report(d, lambda)?;
    let mut subquotients = Vec::with_capacity(f.subquotients.len());
    for s in f.subquotients {
        let kernel = if d > KERNEL_MAX_D {
            KernelSummary::Unavailable { reason: format!("kernel characters are computed for d ≤ {KERNEL_MAX_D}") }
        } else {
            match verma_kernel_character(d, d - s.j, lambda, &s.analytic_part.n_module, pole_bound) {
                Ok(k) => KernelSummary::Computed { bound: pole_bound, base_degree: k.base_degree, masses: k.masses() },
                Err(e) => KernelSummary::Unavailable { reason: e.to_string() },
            }
        };
        subquotients.push(SubquotientEntry {
            j: s.j,
            parabolic: s.parabolic,
            dimension: Infinite::Infinite,
            algebraic_part: s.algebraic_part,
            psi: s.analytic_part.psi,
            n_module: s.analytic_part.n_module,
            steinberg: SteinbergFactor { tag: s.analytic_part.steinberg_tag, dimension: Infinite::Infinite },
            kernel,
        });
    }
    let notes = vec![
        "psi lists the highest weights of N for the Levi blocks (d+1-j, j)".to_string(),
        "kernel masses are graded by U(u+)-degree, complete up to the bound".to_string(),
        "an algebraic part is present exactly when j equals the cohomological degree".to_string(),
    ];
    Ok(ReportDocument {
        schema: SCHEMA_VERSION.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input: ReportInput { d, lambda: lambda.clone(), pole_bound },
        i0: f.i0,
        case: f.case,
        cohomology: f.cohomology,
        floor_dimension: f.floor_dimension,
        subquotients,
        notes,
    })
}

fn weights(ws: &[Weight]) -> String {
    ws.iter().map(Weight::to_string).collect::<Vec<_>>().join(" ")
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Precondition(format!("bad report document: {e}")))
    }

    /// The same data as the JSON form, one fact per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "schema {}", self.schema);
        let _ = writeln!(out, "tool_version {}", self.tool_version);
        let _ = writeln!(out, "d {}", self.input.d);
        let _ = writeln!(out, "lambda {}", self.input.lambda);
        let _ = writeln!(out, "pole_bound {}", self.input.pole_bound);
        let _ = writeln!(out, "i0 {} ({})", self.i0, self.case);
        let c = &self.cohomology;
        match (&c.degree, &c.highest_weight) {
            (Some(i), Some(w)) => {
                let _ = writeln!(out, "cohomology H^{i} highest weight {w} dimension {}", c.dimension);
            }
            _ => {
                let _ = writeln!(out, "cohomology vanishes");
            }
        }
        let _ = writeln!(out, "floor_dimension {}", self.floor_dimension);
        for s in &self.subquotients {
            let _ = writeln!(out, "subquotient j={} parabolic {} dimension infinite", s.j, s.parabolic);
            match &s.algebraic_part {
                Some(a) => {
                    let _ = writeln!(
                        out,
                        "  algebraic {} coefficient_dimension {}{}",
                        a.tag,
                        a.coefficient_dimension,
                        if a.steinberg { " steinberg" } else { "" }
                    );
                }
                None => {
                    let _ = writeln!(out, "  algebraic none");
                }
            }
            let _ = writeln!(out, "  psi {}", weights(&s.psi));
            for m in &s.n_module.summands {
                let _ = writeln!(out, "  N summand {} dimension {} multiplicity {}", weights(&m.block_weights), m.dimension, m.multiplicity);
            }
            let _ = writeln!(out, "  N total_dimension {}", s.n_module.total_dimension);
            let _ = writeln!(out, "  steinberg {} dimension infinite", s.steinberg.tag);
            match &s.kernel {
                KernelSummary::Computed { bound, base_degree, masses } => {
                    let m: Vec<String> = masses.iter().map(u64::to_string).collect();
                    let _ = writeln!(out, "  kernel bound {bound} base_degree {base_degree} masses {}", m.join(" "));
                }
                KernelSummary::Unavailable { reason } => {
                    let _ = writeln!(out, "  kernel unavailable: {reason}");
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_sheaf_d2() {
        let r = build_report(2, &Weight::from(&[0, 0, 0][..]), 2).unwrap();
        assert_eq!(r.floor_dimension, 1);
        assert!(r.subquotients.iter().all(|s| s.algebraic_part.is_none()));
        let sizes: Vec<usize> = r.subquotients.iter().map(|s| s.psi.len()).collect();
        assert_eq!(sizes, vec![2, 1]);
        let back = ReportDocument::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"infinite\""));
    }

    #[test]
    fn rejects_non_dominant() {
        assert!(build_report(2, &Weight::from(&[1, 0, 2][..]), 2).is_err());
    }
}
