//! Where the covering bound can be non-vacuous: ℓ^(n-1) - nℓ + n < 2.

use mlgeom::analysis::{vacuity_check, vacuity_exponent};
use mlgeom::rational::{ratio, render};
use mlgeom::Result;

pub fn main() -> Result<()> {
    println!("ℓ^(n-1) - nℓ + n (* marks values below 2)");
    print!("n\\ℓ");
    for ell in 1..=6 {
        print!("{ell:>6}");
    }
    println!();
    for n in 2u32..=6 {
        print!("{n:>3}");
        for ell in 1u32..=6 {
            let e = vacuity_exponent(n, ell);
            print!("{:>5}{}", e, if e < 2 { "*" } else { " " });
        }
        println!();
    }

    for (n, ell, alpha) in [(3, 2, ratio(1, 1)), (3, 2, ratio(0, 1)), (4, 2, ratio(1, 1)), (2, 3, ratio(0, 1))] {
        let v = vacuity_check(n, ell, 7, &alpha)?;
        println!(
            "n = {n}, ℓ = {ell}, α = {}: value {}, feasible {}",
            render(&alpha),
            render(&v.value),
            v.feasible
        );
    }
    Ok(())
}
