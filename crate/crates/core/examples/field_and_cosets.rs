//! Prime-field arithmetic, primitive roots and multiplicative cosets.

use mlgeom::{MultiplicativeSubgroup, PrimeField, Result};

pub fn main() -> Result<()> {
    let f = PrimeField::new(13)?;
    let g = f.primitive_root().root;
    println!("F_13: primitive root {}, 5^-1 = {}", g.value(), f.inv(5)?);

    for s in [2, 3, 4, 6] {
        let gamma = MultiplicativeSubgroup::of_index(f, s)?;
        let reps: Vec<u64> = gamma
            .coset_representatives(s as usize)?
            .iter()
            .map(|h| h.value())
            .collect();
        println!(
            "index {s}: Γ = {:?}, generator {}, coset representatives {reps:?}",
            gamma.residues(),
            gamma.generator().value()
        );
    }

    let gamma = MultiplicativeSubgroup::of_index(f, 4)?;
    let union = gamma.coset_union(&[f.scalar(1), f.scalar(2)])?;
    println!("Γ ∪ 2Γ = {union:?}");
    Ok(())
}
