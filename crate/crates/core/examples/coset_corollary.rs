//! The coset corollary at q = 160001, s = 20, and f(q, s) for small fields.

use mlgeom::analysis::{coset_corollary, min_r};
use mlgeom::field::is_prime;
use mlgeom::Result;

pub fn main() -> Result<()> {
    let c = coset_corollary(160_001, 20, 16)?;
    println!("q = 160001, s = 20, r = 16: lhs = {}, holds {}", c.lhs, c.holds);
    println!("f(160001, 20) = {:?}", min_r(160_001, 20)?);

    for s in 2..=8u64 {
        let hit = (s + 1..2_000)
            .filter(|&q| is_prime(q) && (q - 1) % s == 0)
            .find_map(|q| min_r(q, s).ok().flatten().filter(|&r| r < s).map(|r| (q, r)));
        match hit {
            Some((q, r)) => println!("s = {s}: least q with f(q, s) < s is {q}, f = {r}"),
            None => println!("s = {s}: no q < 2000 with f(q, s) < s"),
        }
    }
    Ok(())
}
