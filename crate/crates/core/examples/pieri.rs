//! `Sym^k(K^n) ⊗ V_ν` and `Sym^k(K^n)′ ⊗ V_μ` by the Pieri rules, checked
//! against the convolution of characters.

use halfspace::bott::{irrep_character, weyl_dim, Character};
use halfspace::pieri::{dual_pieri_decompose, pieri_decompose};
use halfspace::{Result, Weight};

fn sum_of(parts: &[Weight]) -> Result<Character> {
    parts.iter().try_fold(Character::empty(), |acc, p| Ok(acc.plus(&irrep_character(p)?)))
}

fn main() -> Result<()> {
    let nu = Weight::from(&[2, 1, 0][..]);
    let k = 2;
    let mut sym = Weight::zero(3).into_entries();
    sym[0] = k as i64;
    let sym = Weight::new(sym);

    let parts = pieri_decompose(k, &nu, 3)?;
    println!("Sym^{k}(K^3) ⊗ V{nu}:");
    for p in &parts {
        println!("  V{p}  dim {}", weyl_dim(p)?);
    }
    let convolution = irrep_character(&sym)?.convolve(&irrep_character(&nu)?)?;
    println!("  agrees with convolution: {}", sum_of(&parts)?.agrees_with(&convolution));

    let dual = dual_pieri_decompose(k, &nu, 3)?;
    println!("Sym^{k}(K^3)' ⊗ V{nu}:");
    for p in &dual {
        println!("  V{p}  dim {}", weyl_dim(p)?);
    }
    let convolution = irrep_character(&sym.dual())?.convolve(&irrep_character(&nu)?)?;
    println!("  agrees with convolution: {}", sum_of(&dual)?.agrees_with(&convolution));
    Ok(())
}
