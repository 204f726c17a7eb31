//! Vectors and subspaces over F_q, with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};

/// A vector in F_q^m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector {
    field: PrimeField,
    coords: Vec<u64>,
}

impl FVector {
    /// Builds a vector from residues; entries are reduced mod q.
    pub fn new(field: PrimeField, coords: Vec<u64>) -> Self {
        let q = field.order();
        FVector {
            field,
            coords: coords.into_iter().map(|c| c % q).collect(),
        }
    }

    pub fn from_signed(field: PrimeField, coords: &[i64]) -> Self {
        FVector {
            field,
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    pub fn zero(field: PrimeField, dim: usize) -> Self {
        FVector {
            field,
            coords: vec![0; dim],
        }
    }

    /// Standard basis vector `e_i`, with `i` 1-based.
    pub fn basis(field: PrimeField, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(field, dim);
        v.coords[i - 1] = 1;
        v
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn residues(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_residues(self) -> Vec<u64> {
        self.coords
    }

    pub fn get(&self, i: usize) -> Scalar {
        Scalar::new(self.field, self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: u64) -> FVector {
        let f = self.field;
        FVector {
            field: f,
            coords: self.coords.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn add(&self, other: &FVector) -> Result<FVector> {
        self.compatible(other)?;
        let f = self.field;
        Ok(FVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn dot(&self, other: &FVector) -> Result<Scalar> {
        self.compatible(other)?;
        Ok(Scalar::new(
            self.field,
            dot_residues(self.field, &self.coords, &other.coords),
        ))
    }

    /// Flattened tensor product `self ⊗ other` (slot 1 most significant).
    pub fn tensor(&self, other: &FVector) -> Result<FVector> {
        self.field.check(&other.field)?;
        let f = self.field;
        let mut coords = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.coords {
            coords.extend(other.coords.iter().map(|&b| f.mul(a, b)));
        }
        Ok(FVector { field: f, coords })
    }

    fn compatible(&self, other: &FVector) -> Result<()> {
        self.field.check(&other.field)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot_residues(f: PrimeField, a: &[u64], b: &[u64]) -> u64 {
    // Accumulate in u128 to defer reduction.
    let acc: u128 = a.iter().zip(b).map(|(&x, &y)| (x * y) as u128).sum();
    (acc % f.order() as u128) as u64
}

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub(crate) fn rref(f: PrimeField, rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of F_q^m, stored by its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut row = vec![0; ambient_dim];
                row[i] = 1;
                row
            })
            .collect();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of a list of vectors.
    pub fn span_of<'a, I>(field: PrimeField, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a FVector>,
    {
        let mut builder = SpanBuilder::new(field, ambient_dim);
        for v in vectors {
            builder.push(v)?;
        }
        Ok(builder.finish())
    }

    /// Span of raw residue rows (already reduced mod q).
    pub(crate) fn from_rows(field: PrimeField, ambient_dim: usize, mut rows: Vec<Vec<u64>>) -> Self {
        let pivots = rref(field, &mut rows, ambient_dim);
        Subspace {
            field,
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    /// Null space `{x : M x = 0}` of a matrix given by rows of length `cols`.
    pub fn kernel_of(field: PrimeField, cols: usize, matrix: &[FVector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(matrix.len());
        for row in matrix {
            field.check(&row.field)?;
            if row.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.dim(),
                });
            }
            rows.push(row.coords.clone());
        }
        Ok(Self::kernel_of_rows(field, cols, rows))
    }

    pub(crate) fn kernel_of_rows(field: PrimeField, cols: usize, mut rows: Vec<Vec<u64>>) -> Self {
        let pivots = rref(field, &mut rows, cols);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let kernel_rows = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0; cols];
                v[fc] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = field.neg(row[fc]);
                }
                v
            })
            .collect();
        Self::from_rows(field, cols, kernel_rows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Vec<FVector> {
        self.basis
            .iter()
            .map(|row| FVector {
                field: self.field,
                coords: row.clone(),
            })
            .collect()
    }

    pub(crate) fn basis_rows(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace {
        Self::kernel_of_rows(self.field, self.ambient_dim, self.basis.clone())
    }

    pub fn contains(&self, v: &FVector) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.contains_residues(&v.coords))
    }

    pub(crate) fn contains_residues(&self, v: &[u64]) -> bool {
        // Eliminate against pivots; the remainder is zero iff v is in the span.
        let f = self.field;
        let mut rem = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = rem[pc];
            if c != 0 {
                for (x, &b) in rem.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis.iter().all(|row| other.contains_residues(row)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows(self.field, self.ambient_dim, rows))
    }

    /// `S1 ∩ S2 = (S1^⊥ + S2^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let perp = self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?;
        Ok(perp.orthogonal_complement())
    }

    /// Every vector of the subspace; intended for tiny dimensions only.
    pub fn enumerate(&self) -> Vec<FVector> {
        let q = self.field.order();
        let dim = self.dim();
        let total = q.pow(dim as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0u64; self.ambient_dim];
                for row in &self.basis {
                    let c = code % q;
                    code /= q;
                    if c != 0 {
                        for (x, &b) in v.iter_mut().zip(row) {
                            *x = self.field.add(*x, self.field.mul(c, b));
                        }
                    }
                }
                FVector {
                    field: self.field,
                    coords: v,
                }
            })
            .collect()
    }

    /// The tensor product space `S1 ⊗ ... ⊗ Sm`, flattened.
    pub fn tensor_product(factors: &[&Subspace]) -> Result<Subspace> {
        let first = factors
            .first()
            .ok_or_else(|| Error::invalid("tensor product of no factors"))?;
        let field = first.field;
        let mut rows: Vec<Vec<u64>> = vec![vec![1]];
        let mut dim = 1;
        for s in factors {
            field.check(&s.field)?;
            let mut next = Vec::with_capacity(rows.len() * s.dim());
            for r in &rows {
                for b in &s.basis {
                    let mut t = Vec::with_capacity(dim * s.ambient_dim);
                    for &x in r {
                        t.extend(b.iter().map(|&y| field.mul(x, y)));
                    }
                    next.push(t);
                }
            }
            rows = next;
            dim *= s.ambient_dim;
        }
        Ok(Self::from_rows(field, dim, rows))
    }

    fn check_vector(&self, v: &FVector) -> Result<()> {
        self.field.check(&v.field)?;
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field.check(&other.field)?;
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// Incremental span computation; stops doing work once the span is full.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    space: Subspace,
}

impl SpanBuilder {
    pub fn new(field: PrimeField, ambient_dim: usize) -> Self {
        SpanBuilder {
            space: Subspace::zero(field, ambient_dim),
        }
    }

    pub fn push(&mut self, v: &FVector) -> Result<()> {
        self.space.check_vector(v)?;
        self.push_residues(&v.coords);
        Ok(())
    }

    pub(crate) fn push_residues(&mut self, v: &[u64]) {
        if self.space.is_full() || self.space.contains_residues(v) {
            return;
        }
        let mut rows = std::mem::take(&mut self.space.basis);
        rows.push(v.to_vec());
        self.space = Subspace::from_rows(self.space.field, self.space.ambient_dim, rows);
    }

    pub fn is_full(&self) -> bool {
        self.space.is_full()
    }

    pub fn finish(self) -> Subspace {
        self.space
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn v(field: PrimeField, c: &[u64]) -> FVector {
        FVector::new(field, c.to_vec())
    }

    #[test]
    fn coordinate_duality() {
        let field = f(5);
        let line = Subspace::span_of(field, 2, &[v(field, &[1, 0])]).unwrap();
        let perp = line.orthogonal_complement();
        assert_eq!(perp, Subspace::span_of(field, 2, &[v(field, &[0, 1])]).unwrap());
        let other = Subspace::span_of(field, 2, &[v(field, &[0, 1])]).unwrap();
        assert!(line.intersect(&other).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let field = f(7);
        let zero = vec![FVector::zero(field, 3); 2];
        let k = Subspace::kernel_of(field, 3, &zero).unwrap();
        assert_eq!(k.dim(), 3);
        assert!(k.is_full());
    }

    #[test]
    fn kernel_of_simple_matrix() {
        let field = f(7);
        // x + 2y + 3z = 0
        let k = Subspace::kernel_of(field, 3, &[v(field, &[1, 2, 3])]).unwrap();
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert_eq!(b.dot(&v(field, &[1, 2, 3])).unwrap().value(), 0);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let field = f(3);
        let a = Subspace::full(field, 2);
        let b = Subspace::full(field, 3);
        assert!(matches!(
            a.intersect(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(a.contains(&v(field, &[1, 1, 1])).is_err());
    }

    #[test]
    fn enumerate_counts() {
        let field = f(3);
        let s = Subspace::span_of(field, 3, &[v(field, &[1, 1, 0]), v(field, &[0, 1, 1])]).unwrap();
        let all = s.enumerate();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|x| s.contains(x).unwrap()));
    }

    fn arb_rows() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=6).prop_flat_map(|(q, m)| {
            let rows = prop::collection::vec(prop::collection::vec(0..q, m), 0..=m + 1);
            (Just(q), Just(m), rows)
        })
    }

    proptest! {
        #[test]
        fn perp_dimension_and_double_perp((q, m, rows) in arb_rows()) {
            let field = f(q);
            let s = Subspace::from_rows(field, m, rows);
            let perp = s.orthogonal_complement();
            prop_assert_eq!(s.dim() + perp.dim(), m);
            prop_assert_eq!(perp.orthogonal_complement(), s.clone());
            for a in s.basis() {
                for b in perp.basis() {
                    prop_assert_eq!(a.dot(&b).unwrap().value(), 0);
                }
            }
        }

        #[test]
        fn rref_is_idempotent((q, m, rows) in arb_rows()) {
            let field = f(q);
            let s = Subspace::from_rows(field, m, rows);
            let again = Subspace::from_rows(field, m, s.basis_rows().to_vec());
            prop_assert_eq!(&again, &s);
            for (row, &p) in s.basis_rows().iter().zip(s.pivots()) {
                prop_assert_eq!(row[p], 1);
                for other in s.basis_rows() {
                    if other != row {
                        prop_assert_eq!(other[p], 0);
                    }
                }
            }
            prop_assert!(s.pivots().windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn intersection_matches_enumeration((q, m, rows) in arb_rows(), seed in 0u64..1000) {
            prop_assume!(q.pow(m as u32) <= 256);
            let field = f(q);
            let s1 = Subspace::from_rows(field, m, rows.clone());
            let mut other = rows;
            let shift = other.len().min(1);
            other.rotate_left(shift);
            if let Some(r) = other.first_mut() {
                for x in r.iter_mut() { *x = (*x + seed) % q; }
            }
            let s2 = Subspace::from_rows(field, m, other);
            let meet = s1.intersect(&s2).unwrap();
            let brute: Vec<FVector> = s1.enumerate().into_iter()
                .filter(|x| s2.contains(x).unwrap()).collect();
            prop_assert_eq!(brute.len() as u64, q.pow(meet.dim() as u32));
            prop_assert!(brute.iter().all(|x| meet.contains(x).unwrap()));
        }
    }
}
