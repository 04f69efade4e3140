//! The chain `w_i ∗ λ` and the Bott index for a few weights on `P^3`.
//!
//! Run with `cargo run --example dot_action`.

use halfspace::weights::{dot_action, find_i0, WeylWord};
use halfspace::{Result, Weight};

fn main() -> Result<()> {
    let d = 3;
    for lambda in [[0, 0, 0, 0], [-4, 1, 1, 1], [-1, 1, 0, 0], [-2, 0, 0, 0]] {
        let lambda = Weight::from(&lambda[..]);
        println!("lambda = {lambda}");
        for i in 0..=d {
            let mu = dot_action(&WeylWord::new(d, i)?, &lambda)?;
            println!("  w_{i} * lambda = {mu}{}", if mu.is_dominant() { "  dominant" } else { "" });
        }
        let (i0, case) = find_i0(d, &lambda)?;
        println!("  i0 = {i0} ({case})\n");
    }
    Ok(())
}
