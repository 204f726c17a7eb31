//! Subgroups and cosets of the cyclic group F_q^*.

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};

/// The subgroup of F_q^* of index `s`, i.e. the nonzero `s`-th powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeSubgroup {
    field: PrimeField,
    index: u64,
    generator: Scalar,
    /// Sorted residues.
    elements: Vec<u64>,
    /// `coset_of[a]` is the coset label of `a` for nonzero `a`; `a ~ b` iff
    /// `a / b` lies in the subgroup. Labels are discrete logarithms mod `s`.
    coset_of: Vec<u32>,
}

impl MultiplicativeSubgroup {
    pub fn of_index(field: PrimeField, s: u64) -> Result<Self> {
        let order = field.order() - 1;
        if s == 0 || !order.is_multiple_of(s) {
            return Err(Error::IndexDoesNotDivide { s, order });
        }
        let g = field.primitive_root().root;
        let generator = g.pow(s);
        let mut elements: Vec<u64> = Vec::with_capacity((order / s) as usize);
        let mut coset_of = vec![u32::MAX; field.order() as usize];
        let mut x = 1u64;
        for i in 0..order {
            if i % s == 0 {
                elements.push(x);
            }
            coset_of[x as usize] = (i % s) as u32;
            x = field.mul(x, g.value());
        }
        elements.sort_unstable();
        Ok(MultiplicativeSubgroup {
            field,
            index: s,
            generator,
            elements,
            coset_of,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of cosets.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn generator(&self) -> Scalar {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn residues(&self) -> &[u64] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<Scalar> {
        self.elements
            .iter()
            .map(|&v| Scalar::new(self.field, v))
            .collect()
    }

    pub fn contains(&self, a: u64) -> bool {
        a != 0 && self.coset_of[a as usize] == 0
    }

    /// Coset label of a nonzero residue, or `None` for zero.
    pub fn coset_label(&self, a: u64) -> Option<u32> {
        (a != 0).then(|| self.coset_of[a as usize])
    }

    pub fn same_coset(&self, a: u64, b: u64) -> bool {
        a != 0 && b != 0 && self.coset_of[a as usize] == self.coset_of[b as usize]
    }

    /// Smallest representative of each of the first `count` cosets, with
    /// cosets ordered by their smallest element.
    pub fn coset_representatives(&self, count: usize) -> Result<Vec<Scalar>> {
        let available = self.index as usize;
        if count == 0 || count > available {
            return Err(Error::TooManyCosets {
                requested: count,
                available,
            });
        }
        let mut seen = vec![false; available];
        let mut reps = Vec::with_capacity(count);
        for a in 1..self.field.order() {
            let label = self.coset_of[a as usize] as usize;
            if !seen[label] {
                seen[label] = true;
                reps.push(Scalar::new(self.field, a));
                if reps.len() == count {
                    break;
                }
            }
        }
        Ok(reps)
    }

    /// The union `H·Γ` of the cosets of the given representatives, sorted.
    ///
    /// Fails if two representatives share a coset.
    pub fn coset_union(&self, reps: &[Scalar]) -> Result<Vec<u64>> {
        for r in reps {
            self.field.check(&r.field())?;
            if r.is_zero() {
                return Err(Error::invalid("coset representative must be nonzero"));
            }
        }
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                if self.same_coset(a.value(), b.value()) {
                    return Err(Error::SameCoset {
                        a: a.value(),
                        b: b.value(),
                    });
                }
            }
        }
        let mut out: Vec<u64> = reps
            .iter()
            .flat_map(|h| {
                self.elements
                    .iter()
                    .map(move |&g| self.field.mul(h.value(), g))
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}
