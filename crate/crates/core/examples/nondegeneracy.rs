//! (A, B)-non-degeneracy of the ternary dot product, two ways.

use mlgeom::{FVector, MultiLinearForm, PrimeField, Result, Subspace};

pub fn main() -> Result<()> {
    let f = PrimeField::new(7)?;
    let dot = MultiLinearForm::dot_form(f, 2, 3)?;
    let full_a = Subspace::full(f, 4);
    let full_b = Subspace::full(f, 2);

    for k in 1..=3 {
        let v = dot.nondegeneracy(k, &full_a, &full_b)?;
        println!(
            "k = {k}: non-degenerate {}, row space dim {}",
            v.nondegenerate,
            v.row_space.dim()
        );
    }

    // Restrict A to W ⊗ W with W = {x : x_1 = 0}.
    let w = Subspace::span_of(f, 2, &[FVector::new(f, vec![0, 1])])?;
    let a = Subspace::tensor_product(&[&w, &w])?;
    let v = dot.nondegeneracy(3, &a, &full_b)?;
    println!(
        "A = W⊗W: non-degenerate {}, witness {}",
        v.nondegenerate,
        v.witness.expect("degenerate")
    );
    println!(
        "by enumeration: {}",
        dot.is_nondegenerate_by_enumeration(3, &a, &full_b)?
    );
    Ok(())
}
