//! The Steinberg complexes of `GL_{d+1}(F_q)` and the Solomon–Tits theorem
//! for the building of `F_q^{d+1}`.

use halfspace::building::{enumerate_submodules, generalized_steinberg_dimension, steinberg_complex_homology, FlagPoset, SubmoduleFilter};
use halfspace::Result;

fn main() -> Result<()> {
    let (q, d) = (2, 2);
    for j in 0..=d {
        let h = steinberg_complex_homology(q, d, j)?;
        println!(
            "q={q} d={d} j={j}: term dimensions {:?}, homology {:?}, expected end {}",
            h.dims,
            h.homology,
            generalized_steinberg_dimension(q, d, j)?
        );
    }
    let building = FlagPoset::new(enumerate_submodules(q, 1, d + 1, SubmoduleFilter::TFree)?)?;
    println!("building of F_{q}^{}: {} vertices, reduced homology {:?}", d + 1, building.len(), building.homology()?.nonzero());
    Ok(())
}
