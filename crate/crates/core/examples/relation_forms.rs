//! Forms of relations θ ⊂ [d]^n and their coordinate projections.

use mlgeom::{FVector, PrimeField, Relation, Result, Subspace};

pub fn main() -> Result<()> {
    let f = PrimeField::new(5)?;

    let diagonal = Relation::new(2, 3, [vec![1, 1, 1], vec![2, 2, 2]])?;
    let p = diagonal.projection_properties(3)?;
    let a = Subspace::span_of(f, 4, &diagonal.preimage_tensors(f, 3)?)?;
    println!(
        "diagonal: bijective {}, non-degenerate on its preimages {}",
        p.bijective,
        diagonal.form(f)?.is_nondegenerate(3, &a, &Subspace::full(f, 2))?
    );

    let single = Relation::new(2, 3, [vec![1, 1, 1]])?;
    let p = single.projection_properties(3)?;
    let missing = p.missing[0];
    let b = Subspace::span_of(f, 2, &[FVector::basis(f, 2, missing)])?;
    println!(
        "{{(1,1,1)}}: misses {missing}, non-degenerate with e_{missing} ∈ B: {}",
        single.form(f)?.is_nondegenerate(3, &Subspace::full(f, 4), &b)?
    );

    let full = Relation::full(2, 3)?;
    let b = Subspace::span_of(f, 2, &[FVector::new(f, vec![1, 4])])?;
    println!(
        "[2]^3: surjective {}, non-degenerate with B = <(1,-1)>: {}",
        full.projection_properties(3)?.surjective,
        full.form(f)?.is_nondegenerate(3, &Subspace::full(f, 4), &b)?
    );

    let shared = Relation::new(2, 3, [vec![1, 1, 1], vec![1, 1, 2]])?;
    let a = Subspace::span_of(f, 4, &shared.preimage_tensors(f, 3)?)?;
    let v = shared.form(f)?.nondegeneracy(3, &a, &Subspace::full(f, 2))?;
    println!(
        "{{(1,1,1),(1,1,2)}}: bijective {}, yet degenerate on its preimage (witness {})",
        shared.projection_properties(3)?.bijective,
        v.witness.expect("degenerate")
    );
    Ok(())
}
