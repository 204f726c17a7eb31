//! Multilinear forms stored as dense coefficient tensors.
//!
//! A form of arity `n` on F_q^d is the array `u` over `[d]^n` with
//! `ϖ(x_1, ..., x_n) = Σ u[i_1..i_n] x_{1,i_1} ⋯ x_{n,i_n}`.
//!
//! Multi-indices are 1-based at the API surface. Storage is row-major with
//! slot 1 most significant: `(i_1, ..., i_m)` lives at
//! `Σ_j (i_j - 1) d^(m - j)`. The same flattening identifies
//! `(F_q^d)^⊗m` with `F_q^(d^m)` everywhere in the crate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::linalg::{dot_residues, FVector, Subspace};

/// Flat 0-based offset of a 1-based multi-index.
pub fn flat_index(d: usize, index: &[usize]) -> usize {
    index.iter().fold(0, |acc, &i| acc * d + (i - 1))
}

/// Inverse of [`flat_index`]: the 1-based multi-index of length `m`.
pub fn multi_index(d: usize, m: usize, mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for slot in (0..m).rev() {
        out[slot] = flat % d + 1;
        flat /= d;
    }
    out
}

/// Flattening of the pure tensor `x_1 ⊗ ⋯ ⊗ x_m`.
pub fn flatten(vectors: &[FVector]) -> Result<FVector> {
    let (first, rest) = vectors
        .split_first()
        .ok_or_else(|| Error::invalid("cannot flatten an empty tensor"))?;
    rest.iter().try_fold(first.clone(), |acc, v| acc.tensor(v))
}

fn checked_pow(d: usize, m: usize) -> Result<usize> {
    d.checked_pow(m as u32)
        .filter(|&len| len <= 1 << 24)
        .ok_or_else(|| Error::invalid(format!("tensor of shape {d}^{m} is too large")))
}

/// An `n`-linear form on F_q^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiLinearForm {
    field: PrimeField,
    d: usize,
    n: usize,
    coeffs: Vec<u64>,
}

impl MultiLinearForm {
    pub fn zero(field: PrimeField, d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension d must be at least 1"));
        }
        if n < 2 {
            return Err(Error::invalid("arity n must be at least 2"));
        }
        Ok(MultiLinearForm {
            field,
            d,
            n,
            coeffs: vec![0; checked_pow(d, n)?],
        })
    }

    /// Dense constructor; `coeffs` is in flattened order.
    pub fn from_dense(field: PrimeField, d: usize, n: usize, coeffs: Vec<u64>) -> Result<Self> {
        let mut form = Self::zero(field, d, n)?;
        if coeffs.len() != form.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: form.coeffs.len(),
                got: coeffs.len(),
            });
        }
        form.coeffs = coeffs.into_iter().map(|c| c % field.order()).collect();
        Ok(form)
    }

    /// Sparse constructor from `(1-based index, value)` pairs. Repeated
    /// indices accumulate.
    pub fn from_sparse<I>(field: PrimeField, d: usize, n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, i64)>,
    {
        let mut form = Self::zero(field, d, n)?;
        for (index, value) in entries {
            form.check_index(&index)?;
            let slot = &mut form.coeffs[flat_index(d, &index)];
            *slot = field.add(*slot, field.reduce(value));
        }
        Ok(form)
    }

    /// The generalized dot product `Σ_i x_{1,i} ⋯ x_{n,i}`.
    pub fn dot_form(field: PrimeField, d: usize, n: usize) -> Result<Self> {
        Self::from_sparse(field, d, n, (1..=d).map(|i| (vec![i; n], 1)))
    }

    /// `det(x_1, ..., x_d)` as a `d`-linear form on F_q^d.
    pub fn determinant_form(field: PrimeField, d: usize, n: usize) -> Result<Self> {
        if n != d {
            return Err(Error::invalid(format!(
                "determinant form needs n = d, got n = {n}, d = {d}"
            )));
        }
        let mut form = Self::zero(field, d, n)?;
        for flat in 0..form.coeffs.len() {
            let idx = multi_index(d, n, flat);
            if let Some(sign) = permutation_sign(&idx) {
                form.coeffs[flat] = field.reduce(sign);
            }
        }
        Ok(form)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, index: &[usize]) -> Result<Scalar> {
        self.check_index(index)?;
        Ok(Scalar::new(self.field, self.coeffs[flat_index(self.d, index)]))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero coefficients as `(1-based index, residue)` pairs in flat order.
    pub fn sparse_entries(&self) -> Vec<(Vec<usize>, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(flat, &c)| (multi_index(self.d, self.n, flat), c))
            .collect()
    }

    fn check_index(&self, index: &[usize]) -> Result<()> {
        if index.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: index.len(),
            });
        }
        if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > self.d) {
            return Err(Error::invalid(format!(
                "index entry {bad} outside 1..={}",
                self.d
            )));
        }
        Ok(())
    }

    pub(crate) fn check_coordinate(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::CoordinateOutOfRange { k, n: self.n });
        }
        Ok(())
    }

    fn check_vector(&self, v: &FVector, dim: usize) -> Result<()> {
        self.field.check(&v.field())?;
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// `ϖ(x_1, ..., x_n)`.
    pub fn evaluate(&self, args: &[FVector]) -> Result<Scalar> {
        if args.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: args.len(),
            });
        }
        for a in args {
            self.check_vector(a, self.d)?;
        }
        let mut cur = self.coeffs.clone();
        for a in args {
            cur = contract_leading(self.field, &cur, a.residues());
        }
        Ok(Scalar::new(self.field, cur[0]))
    }

    /// `ϖ(z, w)` for a flattened `z ∈ (F_q^d)^⊗(n-1)` and `w ∈ F_q^d`.
    pub fn evaluate_flat(&self, z: &FVector, w: &FVector) -> Result<Scalar> {
        self.check_vector(z, self.coeffs.len() / self.d)?;
        self.check_vector(w, self.d)?;
        Ok(Scalar::new(
            self.field,
            self.evaluate_flat_residues(z.residues(), w.residues()),
        ))
    }

    pub(crate) fn evaluate_flat_residues(&self, z: &[u64], w: &[u64]) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for (a, &za) in z.iter().enumerate() {
            if za == 0 {
                continue;
            }
            let row = &self.coeffs[a * self.d..(a + 1) * self.d];
            acc = f.add(acc, f.mul(za, dot_residues(f, row, w)));
        }
        acc
    }

    /// The functional `x ↦ ϖ(x_1, ..., x_{k-1}, y, x_{k+1}, ..., x_n)` on the
    /// remaining `n - 1` slots, with `k` 1-based.
    pub fn eval_k(&self, k: usize, y: &FVector) -> Result<LinearFunctionalTensor> {
        self.check_coordinate(k)?;
        self.check_vector(y, self.d)?;
        let f = self.field;
        let d = self.d;
        let inner = d.pow((self.n - k) as u32);
        let outer = d.pow((k - 1) as u32);
        let mut coeffs = vec![0u64; outer * inner];
        for o in 0..outer {
            for i in 0..d {
                let yi = y.residues()[i];
                if yi == 0 {
                    continue;
                }
                let base = (o * d + i) * inner;
                for r in 0..inner {
                    let slot = &mut coeffs[o * inner + r];
                    *slot = f.add(*slot, f.mul(yi, self.coeffs[base + r]));
                }
            }
        }
        Ok(LinearFunctionalTensor {
            field: f,
            d,
            m: self.n - 1,
            coeffs,
        })
    }

    /// The `k`-rows: for every multi-index of the other slots (in
    /// lexicographic order), the `d`-vector obtained by letting slot `k` vary.
    pub fn k_rows(&self, k: usize) -> Result<Vec<FVector>> {
        self.check_coordinate(k)?;
        Ok(self
            .k_row_residues(k)
            .into_iter()
            .map(|r| FVector::new(self.field, r))
            .collect())
    }

    fn k_row_residues(&self, k: usize) -> Vec<Vec<u64>> {
        let d = self.d;
        let inner = d.pow((self.n - k) as u32);
        let outer = d.pow((k - 1) as u32);
        let mut rows = Vec::with_capacity(outer * inner);
        for o in 0..outer {
            for r in 0..inner {
                rows.push((0..d).map(|i| self.coeffs[(o * d + i) * inner + r]).collect());
            }
        }
        rows
    }

    /// `x ↦ (eval_k(ϖ, e_1)(x), ..., eval_k(ϖ, e_d)(x))` applied to a
    /// flattened `x`, computed as `Σ_a x_a · row_a`.
    fn row_map(&self, rows: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0u64; self.d];
        for (row, &xa) in rows.iter().zip(x) {
            if xa == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(xa, r));
            }
        }
        out
    }

    fn check_tensor_space(&self, a: &Subspace) -> Result<()> {
        self.field.check(&a.field())?;
        let expected = self.coeffs.len() / self.d;
        if a.ambient_dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: a.ambient_dim(),
            });
        }
        Ok(())
    }

    fn check_base_space(&self, b: &Subspace) -> Result<()> {
        self.field.check(&b.field())?;
        if b.ambient_dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: b.ambient_dim(),
            });
        }
        Ok(())
    }

    /// The `(k, A)`-row space, a subspace of F_q^d.
    pub fn row_space(&self, k: usize, a: &Subspace) -> Result<Subspace> {
        self.check_coordinate(k)?;
        self.check_tensor_space(a)?;
        let rows = self.k_row_residues(k);
        let images = a
            .basis_rows()
            .iter()
            .map(|x| self.row_map(&rows, x))
            .collect();
        Ok(Subspace::from_rows(self.field, self.d, images))
    }

    /// `(A, B)`-non-degeneracy in coordinate `k`.
    ///
    /// Computes both the kernel of `B → hom(A, F)`, `y ↦ eval_k(ϖ, y)|_A`, and
    /// `B ∩ row_{k,A}(ϖ)^⊥`; the two must coincide.
    pub fn nondegeneracy(&self, k: usize, a: &Subspace, b: &Subspace) -> Result<Nondegeneracy> {
        self.check_coordinate(k)?;
        self.check_tensor_space(a)?;
        self.check_base_space(b)?;

        // Kernel criterion: column j of M is eval_k(ϖ, b_j) restricted to A.
        let b_basis = b.basis();
        let functionals = b_basis
            .iter()
            .map(|y| self.eval_k(k, y))
            .collect::<Result<Vec<_>>>()?;
        let restricted: Vec<Vec<u64>> = a
            .basis_rows()
            .iter()
            .map(|x| functionals.iter().map(|phi| phi.apply_residues(x)).collect())
            .collect();
        let coeff_kernel = Subspace::kernel_of_rows(self.field, b_basis.len(), restricted);
        let kernel = Subspace::from_rows(
            self.field,
            self.d,
            coeff_kernel
                .basis_rows()
                .iter()
                .map(|c| combine(self.field, self.d, c, &b_basis))
                .collect(),
        );

        // Orthogonal-complement criterion.
        let row_space = self.row_space(k, a)?;
        let perp_meet = b.intersect(&row_space.orthogonal_complement())?;

        if kernel != perp_meet {
            return Err(Error::invalid(format!(
                "non-degeneracy criteria disagree (kernel dim {}, B ∩ row^⊥ dim {})",
                kernel.dim(),
                perp_meet.dim()
            )));
        }
        let witness = kernel.basis().into_iter().next();
        Ok(Nondegeneracy {
            nondegenerate: witness.is_none(),
            witness,
            kernel_dim: kernel.dim(),
            row_space,
        })
    }

    pub fn is_nondegenerate(&self, k: usize, a: &Subspace, b: &Subspace) -> Result<bool> {
        Ok(self.nondegeneracy(k, a, b)?.nondegenerate)
    }

    /// Non-degeneracy by direct enumeration of `B^*`: every nonzero `y ∈ B`
    /// must give a functional that is nonzero on `A`. Exponential in `dim B`.
    pub fn is_nondegenerate_by_enumeration(
        &self,
        k: usize,
        a: &Subspace,
        b: &Subspace,
    ) -> Result<bool> {
        self.check_coordinate(k)?;
        self.check_tensor_space(a)?;
        self.check_base_space(b)?;
        for y in b.enumerate().into_iter().filter(|y| !y.is_zero()) {
            let phi = self.eval_k(k, &y)?;
            if a.basis_rows().iter().all(|x| phi.apply_residues(x) == 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Bounded search for an explicit witness of non-vanishing at `y`: a sum of
    /// at most `max_terms` pure tensors with nonzero factors, lying in `A^*`,
    /// on which `eval_k(ϖ, y)` is nonzero. Only feasible for tiny `q`, `d`.
    pub fn find_pure_tensor_witness(
        &self,
        k: usize,
        a: &Subspace,
        y: &FVector,
        max_terms: usize,
    ) -> Result<Option<Vec<Vec<FVector>>>> {
        self.check_tensor_space(a)?;
        let phi = self.eval_k(k, y)?;
        let f = self.field;
        let nonzero: Vec<FVector> = (0..f.order().pow(self.d as u32))
            .map(|code| {
                let mut c = code;
                let coords = (0..self.d)
                    .map(|_| {
                        let r = c % f.order();
                        c /= f.order();
                        r
                    })
                    .collect();
                FVector::new(f, coords)
            })
            .filter(|v| !v.is_zero())
            .collect();
        let m = self.n - 1;
        let count = nonzero.len().pow(m as u32);
        let pure = |mut code: usize| -> (Vec<FVector>, Vec<u64>) {
            let factors: Vec<FVector> = (0..m)
                .map(|_| {
                    let v = nonzero[code % nonzero.len()].clone();
                    code /= nonzero.len();
                    v
                })
                .collect();
            let flat = flatten(&factors).expect("same field").into_residues();
            (factors, flat)
        };
        for c1 in 0..count {
            let (f1, t1) = pure(c1);
            if a.contains_residues(&t1) && phi.apply_residues(&t1) != 0 {
                return Ok(Some(vec![f1]));
            }
            if max_terms >= 2 {
                for c2 in c1..count {
                    let (f2, t2) = pure(c2);
                    let sum: Vec<u64> = t1.iter().zip(&t2).map(|(&x, &y)| f.add(x, y)).collect();
                    if sum.iter().any(|&x| x != 0)
                        && a.contains_residues(&sum)
                        && phi.apply_residues(&sum) != 0
                    {
                        return Ok(Some(vec![f1, f2]));
                    }
                }
            }
        }
        Ok(None)
    }

    /// The same form with slot `k` moved to the last position, the other
    /// slots keeping their relative order.
    pub fn with_slot_last(&self, k: usize) -> Result<MultiLinearForm> {
        self.check_coordinate(k)?;
        let mut out = self.clone();
        for flat in 0..self.coeffs.len() {
            let mut idx = multi_index(self.d, self.n, flat);
            let moved = idx.remove(k - 1);
            idx.push(moved);
            out.coeffs[flat_index(self.d, &idx)] = self.coeffs[flat];
        }
        Ok(out)
    }
}

/// Σ_i x_i · t[i, rest]: contracts the most significant slot of `t`.
pub(crate) fn contract_leading(f: PrimeField, t: &[u64], x: &[u64]) -> Vec<u64> {
    let d = x.len();
    let inner = t.len() / d;
    let mut out = vec![0u128; inner];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (o, &c) in out.iter_mut().zip(&t[i * inner..(i + 1) * inner]) {
            *o += (xi * c) as u128;
        }
    }
    let q = f.order() as u128;
    out.into_iter().map(|v| (v % q) as u64).collect()
}

fn combine(f: PrimeField, d: usize, coeffs: &[u64], vectors: &[FVector]) -> Vec<u64> {
    let mut out = vec![0u64; d];
    for (&c, v) in coeffs.iter().zip(vectors) {
        for (o, &x) in out.iter_mut().zip(v.residues()) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

/// Sign of a permutation of `1..=m`, or `None` if `idx` is not one.
fn permutation_sign(idx: &[usize]) -> Option<i64> {
    let m = idx.len();
    let mut seen = vec![false; m];
    for &i in idx {
        if i == 0 || i > m || seen[i - 1] {
            return None;
        }
        seen[i - 1] = true;
    }
    let inversions = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .filter(|&(a, b)| idx[a] > idx[b])
        .count();
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Verdict of a non-degeneracy test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    /// A nonzero `y ∈ B` with `eval_k(ϖ, y)|_A = 0`, when degenerate.
    pub witness: Option<FVector>,
    pub kernel_dim: usize,
    pub row_space: Subspace,
}

/// An element of `hom((F_q^d)^⊗m, F_q)` by its coefficient array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctionalTensor {
    field: PrimeField,
    d: usize,
    m: usize,
    coeffs: Vec<u64>,
}

impl LinearFunctionalTensor {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient at a 1-based multi-index of length `m`.
    pub fn coeff(&self, index: &[usize]) -> Scalar {
        Scalar::new(self.field, self.coeffs[flat_index(self.d, index)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Value on a flattened tensor.
    pub fn apply(&self, x: &FVector) -> Result<Scalar> {
        self.field.check(&x.field())?;
        if x.dim() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: x.dim(),
            });
        }
        Ok(Scalar::new(self.field, self.apply_residues(x.residues())))
    }

    pub(crate) fn apply_residues(&self, x: &[u64]) -> u64 {
        dot_residues(self.field, &self.coeffs, x)
    }

    pub fn arity(&self) -> usize {
        self.m
    }
}

/// An `n`-ary relation on `[d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    d: usize,
    n: usize,
    tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn new<I>(d: usize, n: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if d == 0 || n == 0 {
            return Err(Error::invalid("relation needs d >= 1 and n >= 1"));
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: t.len(),
                });
            }
            if t.iter().any(|&i| i == 0 || i > d) {
                return Err(Error::invalid(format!("tuple {t:?} has entries outside 1..={d}")));
            }
            set.insert(t);
        }
        Ok(Relation { d, n, tuples: set })
    }

    /// The full relation `[d]^n`.
    pub fn full(d: usize, n: usize) -> Result<Self> {
        let total = checked_pow(d, n)?;
        Self::new(d, n, (0..total).map(|flat| multi_index(d, n, flat)))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// The F_q-form of the relation: coefficient 1 on tuples in the relation.
    pub fn form(&self, field: PrimeField) -> Result<MultiLinearForm> {
        MultiLinearForm::from_sparse(field, self.d, self.n, self.tuples.iter().map(|t| (t.clone(), 1)))
    }

    /// Surjectivity and bijectivity of the `k`-th coordinate projection
    /// `θ → [d]`.
    pub fn projection_properties(&self, k: usize) -> Result<ProjectionProperties> {
        if k == 0 || k > self.n {
            return Err(Error::CoordinateOutOfRange { k, n: self.n });
        }
        let mut hits = vec![0usize; self.d];
        for t in &self.tuples {
            hits[t[k - 1] - 1] += 1;
        }
        let missing: Vec<usize> = (1..=self.d).filter(|&a| hits[a - 1] == 0).collect();
        Ok(ProjectionProperties {
            surjective: missing.is_empty(),
            bijective: hits.iter().all(|&h| h == 1),
            missing,
        })
    }

    /// For a bijective projection, the flattened pure tensors
    /// `e_{i_1} ⊗ ⋯ ⊗ ê_{i_k} ⊗ ⋯ ⊗ e_{i_n}` of each preimage, slot `k` removed.
    pub fn preimage_tensors(&self, field: PrimeField, k: usize) -> Result<Vec<FVector>> {
        if k == 0 || k > self.n {
            return Err(Error::CoordinateOutOfRange { k, n: self.n });
        }
        let len = checked_pow(self.d, self.n - 1)?;
        Ok(self
            .tuples
            .iter()
            .map(|t| {
                let mut rest = t.clone();
                rest.remove(k - 1);
                let mut coords = vec![0; len];
                coords[flat_index(self.d, &rest)] = 1;
                FVector::new(field, coords)
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionProperties {
    pub surjective: bool,
    pub bijective: bool,
    /// Values of `[d]` not hit by the projection.
    pub missing: Vec<usize>,
}
