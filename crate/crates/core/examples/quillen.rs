//! Quillen's fiber criterion with `U ↦ U ∩ U₀` on the covering posets of
//! stalks, compared with a direct homology computation.

use halfspace::building::{quillen_check, ExtensionRing, StalkContext, StalkVariant};
use halfspace::{Error, Result};

fn main() -> Result<()> {
    let ring = ExtensionRing::new(3, 1)?;
    let mut ctx = StalkContext::new(ring, 2, StalkVariant::AllSubmodules)?;
    for line in ring.lines(2)?.into_iter().take(6) {
        let poset = ctx.covering(&line)?;
        let acyclic = ctx.stalk(&line)?.homology.is_acyclic();
        let mut certified = None;
        for u0 in poset.elements() {
            match quillen_check(&poset, |u| u.intersect(u0), u0) {
                Ok(true) => {
                    certified = Some(u0.clone());
                    break;
                }
                Ok(false) | Err(Error::NotSelfMap(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match certified {
            Some(u0) => println!("{line}: contractible via U0 = {u0}; homology acyclic {acyclic}"),
            None => println!("{line}: no certificate; homology acyclic {acyclic}"),
        }
    }
    Ok(())
}
