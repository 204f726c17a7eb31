//! The covering bound |E|^n > q^(r+n-1)(1 - α(1 - 2/q)) against brute force.

use mlgeom::analysis::theorem_bound;
use mlgeom::rational::render;
use mlgeom::sets::covers_nonzero;
use mlgeom::{Enumeration, MultiLinearForm, MultiplicativeSubgroup, PointSet, PrimeField, Result};

pub fn main() -> Result<()> {
    let en = Enumeration::default();
    for q in [5u64, 7, 11] {
        let f = PrimeField::new(q)?;
        let dot = MultiLinearForm::dot_form(f, 2, 3)?;
        let squares = MultiplicativeSubgroup::of_index(f, 2)?;
        for (name, e) in [
            ("F_q^2 \\ 0", PointSet::punctured_space(f, 2)),
            ("Γ × Γ", PointSet::square(f, squares.residues())),
        ] {
            let r = theorem_bound(&dot, &e, None, None, &en)?;
            println!(
                "q = {q:>2}, E = {name:<9} |E| = {:>3}  α = {:<5} r = {}  {} > {}: {:<5}  hypotheses {}  covered {}",
                r.set_size,
                render(&r.alpha),
                r.subspace_dim,
                r.lhs,
                render(&r.rhs),
                r.satisfied,
                r.hypotheses_hold,
                covers_nonzero(&dot, &e, &en)?
            );
        }
    }
    Ok(())
}
