//! Omphaloi: k lines through the origin with ℓ points each, and their bound.

use mlgeom::analysis::omphalos_bound_check;
use mlgeom::rational::render;
use mlgeom::sets::{coset_omphalos, covers_nonzero, make_omphalos, projective_index, validate_omphalos};
use mlgeom::{Enumeration, MultiLinearForm, OmphalosSpec, PrimeField, Result};

pub fn main() -> Result<()> {
    let en = Enumeration::default();
    let f = PrimeField::new(7)?;
    let full = make_omphalos(&OmphalosSpec::full_plane(f))?;
    let (k, ell) = validate_omphalos(&full).expect("omphalos");
    let b = omphalos_bound_check(7, k as u64, ell as u64);
    println!(
        "full plane: (k, ℓ) = ({k}, {ell}), α = {}, {} > {}: {}",
        render(&projective_index(&full)?.alpha),
        b.lhs,
        b.rhs,
        b.holds
    );

    let f = PrimeField::new(13)?;
    let dot13 = MultiLinearForm::dot_form(f, 2, 3)?;
    for reps in [vec![1], vec![1, 2], vec![1, 2, 4]] {
        let scalars: Vec<_> = reps.iter().map(|&h| f.scalar(h)).collect();
        let e = coset_omphalos(f, 4, &scalars)?;
        let (k, ell) = validate_omphalos(&e).expect("coset omphalos");
        let b = omphalos_bound_check(13, k as u64, ell as u64);
        println!(
            "q = 13, s = 4, H = {reps:?}: (k, ℓ) = ({k}, {ell}), α = {}, bound {}, covered {}",
            render(&projective_index(&e)?.alpha),
            b.holds,
            covers_nonzero(&dot13, &e, &en)?
        );
    }
    Ok(())
}
