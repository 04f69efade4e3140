//! Torus characters of `H^{d−j}_{P^j}(P^d, O(r))`: the monomial description
//! against the direct limit of Ext groups, and generation from the lowest
//! Levi module under the Lie algebra action.

use halfspace::localcoh::{generation_saturate, indlim_oracle, twisted_localcoh_character, LaurentModule};
use halfspace::{Result, Weight};

fn main() -> Result<()> {
    let (d, pole) = (2, 4);
    for j in 0..d {
        for r in [-3, 0, 1] {
            let direct = twisted_localcoh_character(d, j, r, pole)?;
            let limit = indlim_oracle(d, j, r, pole)?;
            println!("d={d} j={j} r={r}: {} monomials up to pole order {pole}, matches direct limit: {}", direct.mass(), direct.agrees_with(&limit));
        }
    }

    // H^1_{P^1}(P^2, O) is generated by X_0 X_2^{-1} and X_1 X_2^{-1}.
    let m = LaurentModule::local_cohomology(2, 1, 0, pole)?;
    let seed = [Weight::from(&[1, 0, -1][..]), Weight::from(&[0, 1, -1][..])];
    let (covers, frontier) = generation_saturate(&m, &seed, pole)?;
    println!("generated from Sym^1 ⊠ det^-1: {covers} ({} monomials missed)", frontier.mass());
    Ok(())
}
