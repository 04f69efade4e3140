//! Stalks of the finite building complex over `Z/4` at the reduction of a
//! point of the half-space, for free flags and for all submodules.

use halfspace::building::{ExtensionRing, StalkContext, StalkVariant};
use halfspace::Result;

fn main() -> Result<()> {
    let ring = ExtensionRing::new(2, 2)?;
    // Reduction of 2·e₀ + t·e₂ in the unramified quadratic extension of Z/4.
    let line = ring.line(vec![ring.element(2, 0), ring.zero(), ring.generator()])?;
    for variant in [StalkVariant::FreeFlags, StalkVariant::AllSubmodules] {
        let mut ctx = StalkContext::new(ring, 2, variant)?;
        let stalk = ctx.stalk(&line)?;
        println!("{variant:?} at {line}: support {}, {} submodules", stalk.support, stalk.size);
        for u in ctx.covering(&line)?.elements() {
            println!("  {u}  ranks {:?}", u.ranks());
        }
        println!("  reduced homology {:?}, acyclic {}", stalk.homology.nonzero(), stalk.homology.is_acyclic());
    }

    let mut ctx = StalkContext::new(ring, 2, StalkVariant::FreeFlags)?;
    let lines = ring.lines(2)?;
    let mut bad = 0;
    for l in &lines {
        if !ctx.stalk(l)?.homology.is_acyclic() {
            bad += 1;
        }
    }
    println!("free flags: {bad} of {} lines have non-acyclic stalks", lines.len());
    Ok(())
}
