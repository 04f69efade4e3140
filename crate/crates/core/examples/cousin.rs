//! The Cousin complex of the Schubert stratification: the alternating sum of
//! the cell characters against Bott cohomology, and the quotients `H̃^i`
//! compared with their polynomial presentation.

use halfspace::localcoh::{cousin_euler_sums, quotient_containment};
use halfspace::{Result, Weight};

fn main() -> Result<()> {
    let (d, radius) = (2, 3);
    for (name, l) in [("O", [0, 0, 0]), ("canonical", [-2, 1, 1]), ("cotangent", [-1, 1, 0])] {
        let lambda = Weight::from(&l[..]);
        let (cells, bott) = cousin_euler_sums(d, &lambda, radius)?;
        println!("{name}: Euler identity on the box of radius {radius}: {}", cells.agrees_with(&bott));
        for i in 1..=d {
            let c = quotient_containment(d, i, &lambda, radius)?;
            let defect: i64 = c.defect.terms().map(|(_, x)| x).sum();
            println!("  i={i}: contained {}, defect mass {defect}", c.holds);
        }
    }
    Ok(())
}
