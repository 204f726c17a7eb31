//! A·A·A + A·A·A·A·A·A ⊇ F_q^* for A = HΓ whenever the coset corollary holds.

use mlgeom::analysis::{coset_corollary, min_r};
use mlgeom::field::is_prime;
use mlgeom::sets::evaluate_expression;
use mlgeom::{MultiplicativeSubgroup, PrimeField, Result, ScalarSet};

pub fn main() -> Result<()> {
    // Least prime with a proper subset of cosets satisfying the corollary.
    let (q, s, r) = (3..)
        .filter(|&q| is_prime(q))
        .find_map(|q| {
            (2..=8u64)
                .filter(|s| (q - 1) % s == 0)
                .find_map(|s| min_r(q, s).ok().flatten().filter(|&r| r < s).map(|r| (q, s, r)))
        })
        .expect("a witness exists");
    let c = coset_corollary(q, s, r)?;
    println!("q = {q}, s = {s}, r = {r}: corollary lhs = {} > 0", c.lhs);

    let f = PrimeField::new(q)?;
    let gamma = MultiplicativeSubgroup::of_index(f, s)?;
    let reps = gamma.coset_representatives(r as usize)?;
    let a = ScalarSet::new(f, gamma.coset_union(&reps)?);
    let value = evaluate_expression(&a, "AAA+AAAAAA")?;
    println!(
        "|A| = {}, AAA+AAAAAA covers F_{q}^*: {} (missing {:?})",
        a.len(),
        value.covers_nonzero(),
        value.missing_nonzero()
    );

    let one = ScalarSet::new(f, [1]);
    println!("A = {{1}}: {:?}", evaluate_expression(&one, "AAA+AAAAAA")?.elements());
    Ok(())
}
