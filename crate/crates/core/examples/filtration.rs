//! Subquotients of the filtration for the cotangent bundle on `P^3`:
//! the weight sets `Φ_j`, `Ψ_j`, the Levi module `N` and the algebraic parts.

use halfspace::filtration::{filtration_report, phi_set};
use halfspace::{Result, Weight};

fn main() -> Result<()> {
    let d = 3;
    let lambda = Weight::from(&[-1, 1, 0, 0][..]);
    let r = filtration_report(d, &lambda)?;
    println!("lambda {lambda}: i0 = {} ({}), floor dimension {}", r.i0, r.case, r.floor_dimension);
    for s in &r.subquotients {
        println!("j = {} parabolic {}", s.j, s.parabolic);
        let phi: Vec<String> = phi_set(s.j, d, &lambda)?.iter().map(|w| w.to_string()).collect();
        let psi: Vec<String> = s.analytic_part.psi.iter().map(|w| w.to_string()).collect();
        println!("  phi {}", phi.join(" "));
        println!("  psi {}", psi.join(" "));
        for m in &s.analytic_part.n_module.summands {
            println!("  N ⊇ {:?} of dimension {} (x{})", m.block_weights, m.dimension, m.multiplicity);
        }
        if let Some(a) = &s.algebraic_part {
            println!("  algebraic part {} with coefficients of dimension {}", a.tag, a.coefficient_dimension);
        }
        println!("  {}", s.analytic_part.steinberg_tag);
    }
    Ok(())
}
