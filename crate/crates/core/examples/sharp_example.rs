//! E = Γ × Γ under x₁y₁z₁ + x₂y₂z₂: the image is Γ + Γ, which misses values.

use mlgeom::analysis::sharp_example;
use mlgeom::rational::render;
use mlgeom::{Enumeration, Result};

pub fn main() -> Result<()> {
    let en = Enumeration::default();
    for (q, s) in [(13, 4), (31, 6), (37, 9)] {
        let ex = sharp_example(q, s, &en)?;
        println!(
            "q = {q}, s = {s}: Γ = {:?}, |E| = {}, missing {:?}, bound {} > {}: {}",
            ex.subgroup,
            ex.set_size,
            ex.missing,
            ex.bound.lhs,
            render(&ex.bound.rhs),
            ex.bound.satisfied
        );
    }
    match sharp_example(5, 1, &en) {
        Ok(_) => println!("q = 5, s = 1: unexpectedly sharp"),
        Err(e) => println!("q = 5, s = 1: {e}"),
    }
    Ok(())
}
