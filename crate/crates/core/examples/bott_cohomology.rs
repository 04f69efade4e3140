//! Cohomology of `F_λ` on `P^d` by Bott's theorem, with the Weyl dimension
//! and the character of the resulting `GL_{d+1}` module.

use halfspace::bott::{bwb_cohomology, decompose_character, irrep_character};
use halfspace::{Result, Weight};

fn main() -> Result<()> {
    let cases: [(usize, &[i64]); 5] = [
        (2, &[0, 0, 0]),
        (2, &[2, 0, 0]),
        (2, &[-2, 1, 1]),
        (2, &[-4, 0, 0]),
        (3, &[-1, 1, 0, 0]),
    ];
    for (d, l) in cases {
        let lambda = Weight::from(l);
        let h = bwb_cohomology(d, &lambda)?;
        match (h.degree, &h.highest_weight) {
            (Some(i), Some(w)) => {
                println!("d={d} lambda={lambda}: H^{i} = V{w}, dimension {}", h.dimension);
                let chi = irrep_character(w)?;
                println!("  {} weights, decomposes as {:?}", chi.len(), decompose_character(&chi)?);
            }
            _ => println!("d={d} lambda={lambda}: all cohomology vanishes"),
        }
    }
    Ok(())
}
