//! Level-set counts ν(t) and the remainder inequality they satisfy.

use mlgeom::analysis::{nu_profile, remainder_checks};
use mlgeom::rational::render;
use mlgeom::sets::coset_omphalos;
use mlgeom::{Enumeration, MultiLinearForm, PrimeField, Result};

pub fn main() -> Result<()> {
    let en = Enumeration::default();
    let f = PrimeField::new(13)?;
    let dot = MultiLinearForm::dot_form(f, 2, 3)?;
    let e = coset_omphalos(f, 4, &[f.scalar(1), f.scalar(2)])?;

    let p = nu_profile(&dot, &e, &en)?;
    println!("ν = {:?}", p.counts);
    println!(
        "Σ ν(t) = {} = |E^⊠2|·|E| = {}·{}",
        p.total(),
        p.tensor_set_size,
        p.set_size
    );

    let report = remainder_checks(&dot, &e, None, None, &en)?;
    for entry in &report.entries {
        println!(
            "t = {:>2}: ν = {:>4}  qR = {:>5}  margin {}",
            entry.t,
            entry.nu,
            entry.scaled_remainder,
            render(&entry.margin)
        );
    }
    println!("all hold: {}", report.all_hold);
    Ok(())
}
