//! Point sets in F_q^d, their tensor-power images, the projective index,
//! omphaloi, and sum/product set algebra in F_q.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;

use crate::enumerate::{saturating_pow, Enumeration};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::forms::{contract_leading, MultiLinearForm};
use crate::group::MultiplicativeSubgroup;
use crate::linalg::FVector;
use crate::rational::{ratio, Rational};

/// A finite set `E ⊂ F_q^d`, deduplicated and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    field: PrimeField,
    d: usize,
    points: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn new(field: PrimeField, d: usize, points: Vec<FVector>) -> Result<Self> {
        let mut raw = Vec::with_capacity(points.len());
        for p in points {
            field.check(&p.field())?;
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                });
            }
            raw.push(p.into_residues());
        }
        Ok(Self::from_residues(field, d, raw))
    }

    pub(crate) fn from_residues(field: PrimeField, d: usize, mut points: Vec<Vec<u64>>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet { field, d, points }
    }

    /// `F_q^d \ {0}`.
    pub fn punctured_space(field: PrimeField, d: usize) -> Self {
        let q = field.order();
        let total = q.pow(d as u32);
        let points = (1..total)
            .map(|mut code| {
                let mut v = vec![0; d];
                for slot in (0..d).rev() {
                    v[slot] = code % q;
                    code /= q;
                }
                v
            })
            .collect();
        Self::from_residues(field, d, points)
    }

    /// `X × X ⊂ F_q^2` for a set of scalars `X`.
    pub fn square(field: PrimeField, xs: &[u64]) -> Self {
        let points = xs
            .iter()
            .flat_map(|&a| xs.iter().map(move |&b| vec![a % field.order(), b % field.order()]))
            .collect();
        Self::from_residues(field, 2, points)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> Vec<FVector> {
        self.points
            .iter()
            .map(|p| FVector::new(self.field, p.clone()))
            .collect()
    }

    pub(crate) fn residues(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn contains(&self, v: &FVector) -> bool {
        v.field() == self.field && self.contains_residues(v.residues())
    }

    pub(crate) fn contains_residues(&self, v: &[u64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(v)).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.points.first().is_some_and(|p| p.iter().all(|&c| c == 0))
    }

    /// `{c·x : x ∈ E}`.
    pub fn scaled(&self, c: u64) -> PointSet {
        let f = self.field;
        Self::from_residues(
            f,
            self.d,
            self.points
                .iter()
                .map(|p| p.iter().map(|&x| f.mul(x, c)).collect())
                .collect(),
        )
    }
}

/// `E^⊠m`: flattened pure tensors with every factor in `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTensorSet {
    field: PrimeField,
    ambient_dim: usize,
    factors: usize,
    points: Vec<Vec<u64>>,
}

impl FlatTensorSet {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of tensor factors `m`.
    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> Vec<FVector> {
        self.points
            .iter()
            .map(|p| FVector::new(self.field, p.clone()))
            .collect()
    }

    pub(crate) fn residues(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn contains(&self, v: &FVector) -> bool {
        v.field() == self.field
            && self
                .points
                .binary_search_by(|p| p.as_slice().cmp(v.residues()))
                .is_ok()
    }
}

fn tensor_residues(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        out.extend(b.iter().map(|&y| f.mul(x, y)));
    }
    out
}

fn merge_sorted(mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    a.extend(b);
    a.sort_unstable();
    a.dedup();
    a
}

/// `E^⊠m` as a deduplicated, sorted set of flattened tensors.
pub fn tensor_power_set(e: &PointSet, m: usize, en: &Enumeration) -> Result<FlatTensorSet> {
    if m == 0 {
        return Err(Error::invalid("tensor power needs m >= 1"));
    }
    en.admit(saturating_pow(e.len(), m))?;
    let f = e.field;
    let mut current: Vec<Vec<u64>> = e.points.clone();
    for _ in 1..m {
        let prev = &current;
        current = en.map_reduce(
            prev.len(),
            Vec::new(),
            |range| {
                let mut part: Vec<Vec<u64>> = prev[range]
                    .iter()
                    .flat_map(|t| e.points.iter().map(move |x| tensor_residues(f, t, x)))
                    .collect();
                part.sort_unstable();
                part.dedup();
                part
            },
            merge_sorted,
        );
    }
    Ok(FlatTensorSet {
        field: f,
        ambient_dim: e.d.pow(m as u32),
        factors: m,
        points: current,
    })
}

/// The exact projective-index ratio and the count behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveIndex {
    /// `|{(a, w) : a ∈ F_q^* \ {1}, w ∈ E, aw ∈ E}|`.
    pub pair_count: u64,
    pub set_size: u64,
    /// `pair_count / ((q - 2)|E|)`, the largest α the definition admits.
    pub alpha: Rational,
    /// `0 ∈ E` inflates the count: `(a, 0)` is a pair for every `a`.
    pub zero_in_set: bool,
}

pub fn projective_index(e: &PointSet) -> Result<ProjectiveIndex> {
    let q = e.field.order();
    if q == 2 {
        return Err(Error::invalid("projective index is undefined for q = 2"));
    }
    if e.is_empty() {
        return Err(Error::invalid("projective index of an empty set"));
    }
    let f = e.field;
    let mut pair_count = 0u64;
    let mut scaled = vec![0u64; e.d];
    for w in &e.points {
        for a in 2..q {
            for (s, &x) in scaled.iter_mut().zip(w) {
                *s = f.mul(a, x);
            }
            if e.contains_residues(&scaled) {
                pair_count += 1;
            }
        }
    }
    let set_size = e.len() as u64;
    Ok(ProjectiveIndex {
        pair_count,
        set_size,
        alpha: ratio(pair_count, BigInt::from(q - 2) * BigInt::from(set_size)),
        zero_in_set: e.contains_zero(),
    })
}

/// `k` lines through the origin in F_q^2 with `ℓ` chosen multiples on each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmphalosSpec {
    pub field: PrimeField,
    /// Direction vectors, pairwise non-proportional.
    pub lines: Vec<FVector>,
    /// Per line, the distinct nonzero multiples of its direction.
    pub selections: Vec<Vec<u64>>,
}

/// Line label: the direction scaled so its first nonzero coordinate is 1.
fn normalize_direction(f: PrimeField, v: &[u64]) -> Option<Vec<u64>> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let inv = f.inv(lead).ok()?;
    Some(v.iter().map(|&c| f.mul(c, inv)).collect())
}

impl OmphalosSpec {
    /// All `q + 1` lines, each with every nonzero multiple.
    pub fn full_plane(field: PrimeField) -> Self {
        let lines = all_directions(field);
        let selections = vec![(1..field.order()).collect(); lines.len()];
        OmphalosSpec {
            field,
            lines,
            selections,
        }
    }

    /// Checks the invariants and returns `(k, ℓ)`.
    pub fn validate(&self) -> Result<(usize, usize)> {
        let f = self.field;
        if self.lines.is_empty() {
            return Err(Error::invalid("omphalos needs at least one line"));
        }
        if self.lines.len() != self.selections.len() {
            return Err(Error::invalid(format!(
                "{} lines but {} selections",
                self.lines.len(),
                self.selections.len()
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, line) in self.lines.iter().enumerate() {
            f.check(&line.field())?;
            if line.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: line.dim(),
                });
            }
            let key = normalize_direction(f, line.residues())
                .ok_or_else(|| Error::invalid(format!("line {} has zero direction", i + 1)))?;
            if let Some(j) = seen.insert(key, i) {
                return Err(Error::invalid(format!(
                    "lines {} and {} are proportional",
                    j + 1,
                    i + 1
                )));
            }
        }
        let ell = self.selections[0].len();
        for (i, sel) in self.selections.iter().enumerate() {
            if sel.len() != ell {
                return Err(Error::invalid(format!(
                    "line {} has {} points, expected {ell}",
                    i + 1,
                    sel.len()
                )));
            }
            let mut sorted: Vec<u64> = sel.iter().map(|&c| c % f.order()).collect();
            if sorted.contains(&0) {
                return Err(Error::invalid(format!("line {} selects the zero multiple", i + 1)));
            }
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("line {} repeats a multiple", i + 1)));
            }
        }
        if ell == 0 {
            return Err(Error::invalid("omphalos needs at least one point per line"));
        }
        Ok((self.lines.len(), ell))
    }
}

/// One direction per line through the origin of F_q^2: `(1, y)` for each `y`
/// and `(0, 1)`.
pub fn all_directions(field: PrimeField) -> Vec<FVector> {
    let mut lines: Vec<FVector> = (0..field.order())
        .map(|y| FVector::new(field, vec![1, y]))
        .collect();
    lines.push(FVector::new(field, vec![0, 1]));
    lines
}

pub fn make_omphalos(spec: &OmphalosSpec) -> Result<PointSet> {
    spec.validate()?;
    let f = spec.field;
    let points = spec
        .lines
        .iter()
        .zip(&spec.selections)
        .flat_map(|(line, sel)| sel.iter().map(move |&c| line.scale(c).into_residues()))
        .collect();
    Ok(PointSet::from_residues(f, 2, points))
}

/// Recovers `(k, ℓ)` if `E` is an omphalos: `0 ∉ E`, `d = 2` and every line
/// meeting `E` carries the same number of points.
pub fn validate_omphalos(e: &PointSet) -> Option<(usize, usize)> {
    if e.d != 2 || e.is_empty() || e.contains_zero() {
        return None;
    }
    let mut per_line: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for p in &e.points {
        *per_line.entry(normalize_direction(e.field, p)?).or_default() += 1;
    }
    let ell = *per_line.values().next()?;
    per_line
        .values()
        .all(|&c| c == ell)
        .then_some((per_line.len(), ell))
}

/// `{x(1, y) : x, y ∈ HΓ}` for `Γ` of index `s` and coset representatives `H`.
pub fn coset_omphalos(field: PrimeField, s: u64, reps: &[Scalar]) -> Result<PointSet> {
    let gamma = MultiplicativeSubgroup::of_index(field, s)?;
    if reps.is_empty() {
        return Err(Error::invalid("need at least one coset representative"));
    }
    let union = gamma.coset_union(reps)?;
    let points = union
        .iter()
        .flat_map(|&x| union.iter().map(move |&y| vec![x, field.mul(x, y)]))
        .collect();
    Ok(PointSet::from_residues(field, 2, points))
}

/// A subset of F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarSet {
    field: PrimeField,
    elements: Vec<u64>,
}

impl ScalarSet {
    pub fn new(field: PrimeField, elements: impl IntoIterator<Item = u64>) -> Self {
        let mut elements: Vec<u64> = elements.into_iter().map(|e| e % field.order()).collect();
        elements.sort_unstable();
        elements.dedup();
        ScalarSet { field, elements }
    }

    fn from_mask(field: PrimeField, mask: &[bool]) -> Self {
        ScalarSet {
            field,
            elements: (0..mask.len() as u64).filter(|&t| mask[t as usize]).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: u64) -> bool {
        self.elements.binary_search(&t).is_ok()
    }

    fn combine(&self, other: &ScalarSet, op: impl Fn(u64, u64) -> u64) -> Result<ScalarSet> {
        self.field.check(&other.field)?;
        let mut mask = vec![false; self.field.order() as usize];
        for &a in &self.elements {
            for &b in &other.elements {
                mask[op(a, b) as usize] = true;
            }
        }
        Ok(Self::from_mask(self.field, &mask))
    }

    /// `X·Y = {xy}`.
    pub fn product(&self, other: &ScalarSet) -> Result<ScalarSet> {
        let f = self.field;
        self.combine(other, |a, b| f.mul(a, b))
    }

    /// `X + Y = {x + y}`.
    pub fn sum(&self, other: &ScalarSet) -> Result<ScalarSet> {
        let f = self.field;
        self.combine(other, |a, b| f.add(a, b))
    }

    /// `X·X⋯X` with `times` factors.
    pub fn power_product(&self, times: usize) -> Result<ScalarSet> {
        if times == 0 {
            return Err(Error::invalid("empty product"));
        }
        (1..times).try_fold(self.clone(), |acc, _| acc.product(self))
    }

    pub fn covers_nonzero(&self) -> bool {
        (1..self.field.order()).all(|t| self.contains(t))
    }

    /// `F_q^* \ X`.
    pub fn missing_nonzero(&self) -> Vec<u64> {
        (1..self.field.order()).filter(|&t| !self.contains(t)).collect()
    }
}

/// Term lengths of a sum of products such as `AAA+AAAAAA` or `A·A + A*A*A`.
pub fn parse_expression(expr: &str) -> Result<Vec<usize>> {
    let mut terms = Vec::new();
    for (i, term) in expr.split('+').enumerate() {
        let mut factors = 0;
        for c in term.chars() {
            match c {
                'A' => factors += 1,
                '·' | '*' | '.' => {}
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::invalid(format!(
                        "unexpected {c:?} in term {} of {expr:?}",
                        i + 1
                    )))
                }
            }
        }
        if factors == 0 {
            return Err(Error::invalid(format!("empty term {} in {expr:?}", i + 1)));
        }
        terms.push(factors);
    }
    Ok(terms)
}

/// Evaluates a sum of products of `a`, e.g. `AAA+AAAAAA = A·A·A + A·A·A·A·A·A`.
pub fn evaluate_expression(a: &ScalarSet, expr: &str) -> Result<ScalarSet> {
    let mut value: Option<ScalarSet> = None;
    for factors in parse_expression(expr)? {
        let term = a.power_product(factors)?;
        value = Some(match value {
            None => term,
            Some(v) => v.sum(&term)?,
        });
    }
    Ok(value.expect("at least one term"))
}

fn check_form_set(form: &MultiLinearForm, e: &PointSet) -> Result<()> {
    form.field().check(&e.field)?;
    if form.dim() != e.d {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            got: e.d,
        });
    }
    Ok(())
}

/// Marks `ϖ(x_1, ..., x_n)` for every remaining tuple, contracting one slot
/// at a time. Returns early once `stop` is set.
fn mark_values(
    f: PrimeField,
    partial: &[u64],
    points: &[Vec<u64>],
    mask: &mut [bool],
    hit: &mut usize,
    stop: Option<&AtomicBool>,
) {
    if partial.len() == 1 {
        let t = partial[0] as usize;
        if !mask[t] {
            mask[t] = true;
            if t != 0 {
                *hit += 1;
            }
        }
        return;
    }
    for x in points {
        if stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
            return;
        }
        let next = contract_leading(f, partial, x);
        mark_values(f, &next, points, mask, hit, stop);
        if let Some(s) = stop {
            if *hit == mask.len() - 1 {
                s.store(true, Ordering::Relaxed);
                return;
            }
        }
    }
}

fn or_masks(mut a: Vec<bool>, b: Vec<bool>) -> Vec<bool> {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
    a
}

/// `ϖ(E^n) = {ϖ(x_1, ..., x_n) : x_j ∈ E}`.
pub fn image_set(form: &MultiLinearForm, e: &PointSet, en: &Enumeration) -> Result<ScalarSet> {
    check_form_set(form, e)?;
    en.admit(saturating_pow(e.len(), form.arity()))?;
    let f = form.field();
    let q = f.order() as usize;
    let mask = en.map_reduce(
        e.len(),
        vec![false; q],
        |range| {
            let mut mask = vec![false; q];
            let mut hit = 0;
            for x in &e.points[range] {
                let partial = contract_leading(f, form.coeffs(), x);
                mark_values(f, &partial, &e.points, &mut mask, &mut hit, None);
            }
            mask
        },
        or_masks,
    );
    Ok(ScalarSet::from_mask(f, &mask))
}

/// Whether `F_q^* ⊂ ϖ(E^n)`, stopping as soon as every nonzero value is hit.
pub fn covers_nonzero(form: &MultiLinearForm, e: &PointSet, en: &Enumeration) -> Result<bool> {
    check_form_set(form, e)?;
    en.admit(saturating_pow(e.len(), form.arity()))?;
    let f = form.field();
    let q = f.order() as usize;
    let done = AtomicBool::new(false);
    let mask = en.map_reduce(
        e.len(),
        vec![false; q],
        |range| {
            let mut mask = vec![false; q];
            let mut hit = 0;
            for x in &e.points[range] {
                if done.load(Ordering::Relaxed) {
                    break;
                }
                let partial = contract_leading(f, form.coeffs(), x);
                mark_values(f, &partial, &e.points, &mut mask, &mut hit, Some(&done));
            }
            mask
        },
        or_masks,
    );
    Ok(done.load(Ordering::Relaxed) || mask[1..].iter().all(|&b| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Relation;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn set(field: PrimeField, pts: &[[u64; 2]]) -> PointSet {
        PointSet::new(field, 2, pts.iter().map(|p| FVector::new(field, p.to_vec())).collect()).unwrap()
    }

    #[test]
    fn tensor_powers() {
        let en = Enumeration::default();
        let field = f(3);
        let e = set(field, &[[1, 0], [0, 1]]);
        let t = tensor_power_set(&e, 2, &en).unwrap();
        assert_eq!(t.len(), 4);
        for i in 1..=4 {
            assert!(t.contains(&FVector::basis(field, 4, i)));
        }
        let field = f(5);
        let e = set(field, &[[2, 0], [1, 0]]);
        assert_eq!(tensor_power_set(&e, 2, &en).unwrap().len(), 3);
        let single = set(field, &[[2, 3]]);
        assert_eq!(tensor_power_set(&single, 3, &en).unwrap().len(), 1);
        assert!(matches!(
            tensor_power_set(&e, 2, &Enumeration::with_cap(3)),
            Err(Error::CapExceeded { requested: 4, cap: 3 })
        ));
    }

    #[test]
    fn projective_index_examples() {
        let field = f(7);
        let line = set(field, &[[1, 2], [2, 4], [3, 6], [4, 1], [5, 3], [6, 5]]);
        assert_eq!(projective_index(&line).unwrap().alpha, ratio(1, 1));
        let single = set(field, &[[1, 2]]);
        assert_eq!(projective_index(&single).unwrap().alpha, ratio(0, 1));
        let squares = PointSet::square(field, &[1, 2, 4]);
        let pi = projective_index(&squares).unwrap();
        assert_eq!(pi.pair_count, 18);
        assert_eq!(pi.alpha, ratio(2, 5));
        assert!(!pi.zero_in_set);

        assert!(projective_index(&set(f(2), &[[1, 0]])).is_err());
        assert!(projective_index(&PointSet::new(field, 2, vec![]).unwrap()).is_err());

        let with_zero = set(field, &[[0, 0], [1, 1]]);
        let pi = projective_index(&with_zero).unwrap();
        assert!(pi.zero_in_set);
        assert_eq!(pi.pair_count, 5);
    }

    #[test]
    fn omphalos_construction() {
        let field = f(7);
        let full = make_omphalos(&OmphalosSpec::full_plane(field)).unwrap();
        assert_eq!(full.len(), 48);
        assert_eq!(validate_omphalos(&full), Some((8, 6)));
        assert_eq!(full, PointSet::punctured_space(field, 2));

        let spec = OmphalosSpec {
            field,
            lines: vec![FVector::new(field, vec![1, 0]), FVector::new(field, vec![0, 1])],
            selections: vec![vec![1, 2], vec![1, 2]],
        };
        let e = make_omphalos(&spec).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(validate_omphalos(&e), Some((2, 2)));

        assert_eq!(validate_omphalos(&set(field, &[[1, 0], [1, 1], [2, 2]])), None);
    }

    #[test]
    fn omphalos_spec_errors() {
        let field = f(7);
        let base = OmphalosSpec {
            field,
            lines: vec![FVector::new(field, vec![1, 1]), FVector::new(field, vec![2, 2])],
            selections: vec![vec![1], vec![1]],
        };
        assert!(make_omphalos(&base).is_err());
        let repeated = OmphalosSpec {
            lines: vec![FVector::new(field, vec![1, 1])],
            selections: vec![vec![3, 3]],
            ..base.clone()
        };
        assert!(make_omphalos(&repeated).is_err());
        let zero = OmphalosSpec {
            lines: vec![FVector::new(field, vec![1, 1])],
            selections: vec![vec![0, 3]],
            ..base
        };
        assert!(make_omphalos(&zero).is_err());
    }

    #[test]
    fn coset_omphaloi() {
        let field = f(7);
        let e = coset_omphalos(field, 3, &[field.scalar(1)]).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(validate_omphalos(&e), Some((2, 2)));

        let field = f(13);
        let e = coset_omphalos(field, 4, &[field.scalar(1), field.scalar(2)]).unwrap();
        assert_eq!(e.len(), 36);
        assert_eq!(validate_omphalos(&e), Some((6, 6)));
        assert_eq!(projective_index(&e).unwrap().alpha, ratio(5, 11));

        assert!(matches!(
            coset_omphalos(field, 4, &[field.scalar(1), field.scalar(3)]),
            Err(Error::SameCoset { .. })
        ));
    }

    #[test]
    fn scalar_algebra() {
        let field = f(13);
        let gamma = ScalarSet::new(field, [1, 3, 9]);
        assert_eq!(gamma.sum(&gamma).unwrap().elements(), &[2, 4, 5, 6, 10, 12]);
        let one = ScalarSet::new(field, [1]);
        let zero = ScalarSet::new(field, [0]);
        assert_eq!(gamma.product(&one).unwrap(), gamma);
        assert_eq!(gamma.sum(&zero).unwrap(), gamma);
        assert_eq!(gamma.power_product(3).unwrap(), gamma);
        assert!(!gamma.covers_nonzero());
        assert_eq!(gamma.missing_nonzero().len(), 9);
    }

    #[test]
    fn expressions() {
        assert_eq!(parse_expression("AAA+AAAAAA").unwrap(), vec![3, 6]);
        assert_eq!(parse_expression("A·A + A*A*A").unwrap(), vec![2, 3]);
        assert!(parse_expression("AB").is_err());
        assert!(parse_expression("A++A").is_err());
        let field = f(11);
        let all = ScalarSet::new(field, 1..11);
        let v = evaluate_expression(&all, "AAA+AAAAAA").unwrap();
        assert_eq!(v.len(), 11);
        let one = ScalarSet::new(field, [1]);
        assert_eq!(evaluate_expression(&one, "AAA+AAAAAA").unwrap().elements(), &[2]);
    }

    #[test]
    fn images_and_covers() {
        let en = Enumeration::default();
        let field = f(7);
        let dot = MultiLinearForm::dot_form(field, 2, 3).unwrap();
        let e = PointSet::punctured_space(field, 2);
        assert!(covers_nonzero(&dot, &e, &en).unwrap());
        assert_eq!(image_set(&dot, &e, &en).unwrap().len(), 7);

        let field = f(13);
        let theta = Relation::new(2, 3, [vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        let form = theta.form(field).unwrap();
        let e = PointSet::square(field, &[1, 3, 9]);
        let image = image_set(&form, &e, &en).unwrap();
        assert_eq!(image.elements(), &[2, 4, 5, 6, 10, 12]);
        assert!(!covers_nonzero(&form, &e, &en).unwrap());

        let zero = MultiLinearForm::zero(field, 2, 3).unwrap();
        assert_eq!(image_set(&zero, &e, &en).unwrap().elements(), &[0]);
        assert!(!covers_nonzero(&zero, &e, &en).unwrap());

        assert!(matches!(
            image_set(&form, &e, &Enumeration::with_cap(100)),
            Err(Error::CapExceeded { requested: 729, .. })
        ));
    }
}
