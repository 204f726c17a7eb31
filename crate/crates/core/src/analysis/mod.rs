//! Level-set counts, the covering bound and its supporting inequalities.
//!
//! Every verdict is exact: bounds stated with `n`-th roots are compared in
//! `n`-th-power form, and logarithmic criteria as power comparisons.

mod bounds;
mod sharp;
mod sweep;

pub use bounds::{
    coset_corollary, min_r, omphalos_bound_check, vacuity_check, vacuity_exponent, CosetCorollary,
    OmphalosBound, VacuityVerdict,
};
pub use sharp::{diagonal_relation, sharp_example, SharpExample};
pub use sweep::{
    build_corpus, soundness_sweep, CorpusConfig, Instance, SetOrigin, SweepReport, SweepRow,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::Enumeration;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::forms::MultiLinearForm;
use crate::linalg::{SpanBuilder, Subspace};
use crate::rational::{integer, serde_bigint, serde_rational, Rational};
use crate::sets::{projective_index, tensor_power_set, FlatTensorSet, PointSet, ProjectiveIndex};

/// `ν(t)` for every `t ∈ F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSetProfile {
    #[serde(skip)]
    pub field: PrimeField,
    /// `counts[t] = ν(t)`.
    pub counts: Vec<u64>,
    pub set_size: u64,
    pub tensor_set_size: u64,
}

impl LevelSetProfile {
    pub fn nu(&self, t: u64) -> u64 {
        self.counts[t as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ_t ν(t) = |E^⊠(n-1)|·|E|`.
    pub fn is_partition(&self) -> bool {
        self.total() == self.tensor_set_size * self.set_size
    }
}

fn check_form_set(form: &MultiLinearForm, e: &PointSet) -> Result<()> {
    form.field().check(&e.field())?;
    if form.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            got: e.dim(),
        });
    }
    Ok(())
}

/// Counts `L_t = {(z, w) ∈ E^⊠(n-1) × E : ϖ(z, w) = t}` for all `t`.
pub fn nu_profile(form: &MultiLinearForm, e: &PointSet, en: &Enumeration) -> Result<LevelSetProfile> {
    check_form_set(form, e)?;
    let tensors = tensor_power_set(e, form.arity() - 1, en)?;
    profile_over(form, e, &tensors, en)
}

fn profile_over(
    form: &MultiLinearForm,
    e: &PointSet,
    tensors: &FlatTensorSet,
    en: &Enumeration,
) -> Result<LevelSetProfile> {
    en.admit(tensors.len() as u128 * e.len() as u128)?;
    let q = form.field().order() as usize;
    let zs = tensors.residues();
    let ws = e.residues();
    let counts = en.map_reduce(
        zs.len(),
        vec![0u64; q],
        |range| {
            let mut counts = vec![0u64; q];
            for z in &zs[range] {
                for w in ws {
                    counts[form.evaluate_flat_residues(z, w) as usize] += 1;
                }
            }
            counts
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    Ok(LevelSetProfile {
        field: form.field(),
        counts,
        set_size: e.len() as u64,
        tensor_set_size: tensors.len() as u64,
    })
}

/// `|E^⊠(n-1)| ≥ |E|^(n-1) / q^(n-2)`, checked in integers.
pub fn tensor_size_lower_bound_holds(q: u64, n: usize, set_size: u64, tensor_set_size: u64) -> bool {
    let lhs = BigInt::from(tensor_set_size) * BigInt::from(q).pow((n - 2) as u32);
    let rhs = BigInt::from(set_size).pow((n - 1) as u32);
    lhs >= rhs
}

/// The theorem hypotheses other than the size bound, computed for given or
/// default subspaces.
#[derive(Debug, Clone)]
pub struct Hypotheses {
    pub a: Subspace,
    pub b: Subspace,
    pub tensors: FlatTensorSet,
    /// `E^⊠(n-1) ⊂ A`.
    pub tensors_in_a: bool,
    /// `E ⊂ B`.
    pub set_in_b: bool,
    /// Coordinates `k` in which the form is `(A, B)`-non-degenerate.
    pub nondegenerate_coordinates: Vec<usize>,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.tensors_in_a && self.set_in_b && !self.nondegenerate_coordinates.is_empty()
    }

    /// The coordinate used for level sets: the last non-degenerate one.
    pub fn coordinate(&self) -> Option<usize> {
        self.nondegenerate_coordinates.last().copied()
    }
}

/// Checks conditions (1)–(3). Omitted subspaces default to
/// `A = span(E^⊠(n-1))` and `B = span(E)`, the smallest admissible choices.
pub fn check_hypotheses(
    form: &MultiLinearForm,
    e: &PointSet,
    a: Option<&Subspace>,
    b: Option<&Subspace>,
    en: &Enumeration,
) -> Result<Hypotheses> {
    check_form_set(form, e)?;
    let f = form.field();
    let tensors = tensor_power_set(e, form.arity() - 1, en)?;
    let a = match a {
        Some(a) => a.clone(),
        None => {
            let mut span = SpanBuilder::new(f, tensors.ambient_dim());
            for z in tensors.residues() {
                if span.is_full() {
                    break;
                }
                span.push_residues(z);
            }
            span.finish()
        }
    };
    let b = match b {
        Some(b) => b.clone(),
        None => {
            let mut span = SpanBuilder::new(f, e.dim());
            for w in e.residues() {
                span.push_residues(w);
            }
            span.finish()
        }
    };
    let tensors_in_a = tensors.residues().iter().all(|z| a.contains_residues(z));
    let set_in_b = e.residues().iter().all(|w| b.contains_residues(w));
    let mut nondegenerate_coordinates = Vec::new();
    for k in 1..=form.arity() {
        if form.is_nondegenerate(k, &a, &b)? {
            nondegenerate_coordinates.push(k);
        }
    }
    Ok(Hypotheses {
        a,
        b,
        tensors,
        tensors_in_a,
        set_in_b,
        nondegenerate_coordinates,
    })
}

/// `|E|^n > q^(r+n-1)·(1 - α(1 - 2/q))`, exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundComparison {
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub satisfied: bool,
}

/// `1 - α(1 - 2/q)`.
pub fn projective_factor(q: u64, alpha: &Rational) -> Rational {
    let q = integer(q);
    Rational::one() - alpha * (Rational::one() - integer(2) / q)
}

pub fn bound_inequality(q: u64, n: usize, r: usize, alpha: &Rational, set_size: u64) -> BoundComparison {
    let lhs = BigInt::from(set_size).pow(n as u32);
    let rhs = integer(BigInt::from(q).pow((r + n - 1) as u32)) * projective_factor(q, alpha);
    let satisfied = integer(lhs.clone()) > rhs;
    BoundComparison { lhs, rhs, satisfied }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    /// `r = dim A`.
    pub subspace_dim: usize,
    pub b_dim: usize,
    pub set_size: u64,
    pub tensor_set_size: u64,
    pub pair_count: u64,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub satisfied: bool,
    /// Condition (1): `E^⊠(n-1) ⊂ A`.
    pub tensors_in_a: bool,
    /// Condition (2): `E ⊂ B`.
    pub set_in_b: bool,
    /// Condition (3), per coordinate.
    pub nondegenerate_coordinates: Vec<usize>,
    pub hypotheses_hold: bool,
    pub zero_in_set: bool,
    pub tensor_size_bound_holds: bool,
}

impl BoundReport {
    /// Whether the theorem applies and therefore predicts `F_q^* ⊂ ϖ(E^n)`.
    pub fn predicts_cover(&self) -> bool {
        self.hypotheses_hold && self.satisfied
    }
}

fn bound_report(form: &MultiLinearForm, e: &PointSet, h: &Hypotheses, pi: &ProjectiveIndex) -> BoundReport {
    let q = form.field().order();
    let n = form.arity();
    let r = h.a.dim();
    let cmp = bound_inequality(q, n, r, &pi.alpha, e.len() as u64);
    BoundReport {
        q,
        n,
        d: form.dim(),
        subspace_dim: r,
        b_dim: h.b.dim(),
        set_size: e.len() as u64,
        tensor_set_size: h.tensors.len() as u64,
        pair_count: pi.pair_count,
        alpha: pi.alpha.clone(),
        lhs: cmp.lhs,
        rhs: cmp.rhs,
        satisfied: cmp.satisfied,
        tensors_in_a: h.tensors_in_a,
        set_in_b: h.set_in_b,
        nondegenerate_coordinates: h.nondegenerate_coordinates.clone(),
        hypotheses_hold: h.hold(),
        zero_in_set: pi.zero_in_set,
        tensor_size_bound_holds: tensor_size_lower_bound_holds(
            q,
            n,
            e.len() as u64,
            h.tensors.len() as u64,
        ),
    }
}

/// Evaluates the covering bound for `ϖ` and `E`, verifying every hypothesis.
pub fn theorem_bound(
    form: &MultiLinearForm,
    e: &PointSet,
    a: Option<&Subspace>,
    b: Option<&Subspace>,
    en: &Enumeration,
) -> Result<BoundReport> {
    let pi = projective_index(e)?;
    let h = check_hypotheses(form, e, a, b, en)?;
    Ok(bound_report(form, e, &h, &pi))
}

/// One instance of the remainder inequality
/// `(qν(t) - |E^⊠(n-1)||E|)² ≤ q²|E^⊠(n-1)||E|q^(r-1)(1 - α(1 - 2/q))`,
/// scaled by the denominator of α so both sides are integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemainderEntry {
    pub t: u64,
    pub nu: u64,
    /// `qR = qν(t) - |E^⊠(n-1)||E|`.
    #[serde(with = "serde_bigint")]
    pub scaled_remainder: BigInt,
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "serde_bigint")]
    pub rhs: BigInt,
    /// `(rhs - lhs) / den(α)`, the slack in unscaled units.
    #[serde(with = "serde_rational")]
    pub margin: Rational,
    pub holds: bool,
}

pub fn remainder_inequality(
    q: u64,
    r: usize,
    alpha: &Rational,
    tensor_set_size: u64,
    set_size: u64,
    t: u64,
    nu: u64,
) -> RemainderEntry {
    let qb = BigInt::from(q);
    let mass = BigInt::from(tensor_set_size) * BigInt::from(set_size);
    let scaled_remainder = &qb * BigInt::from(nu) - &mass;
    let (a, b) = (alpha.numer().clone(), alpha.denom().clone());
    let lhs = &scaled_remainder * &scaled_remainder * &b;
    let rhs = &mass * qb.pow(r as u32) * (&b * &qb - a * (&qb - 2));
    let margin = Rational::new(&rhs - &lhs, b);
    RemainderEntry {
        t,
        nu,
        scaled_remainder,
        holds: lhs <= rhs,
        lhs,
        rhs,
        margin,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemainderReport {
    /// Slot holding `w` in the level sets: a coordinate of non-degeneracy.
    pub coordinate: usize,
    pub subspace_dim: usize,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    pub set_size: u64,
    pub tensor_set_size: u64,
    pub entries: Vec<RemainderEntry>,
    pub all_hold: bool,
}

fn remainder_from(
    form: &MultiLinearForm,
    e: &PointSet,
    h: &Hypotheses,
    pi: &ProjectiveIndex,
    en: &Enumeration,
) -> Result<RemainderReport> {
    if !h.hold() {
        return Err(Error::invalid(
            "remainder check needs E^⊠(n-1) ⊂ A, E ⊂ B and (A, B)-non-degeneracy",
        ));
    }
    let k = h.coordinate().expect("hypotheses hold");
    let moved = form.with_slot_last(k)?;
    let profile = profile_over(&moved, e, &h.tensors, en)?;
    let q = form.field().order();
    let r = h.a.dim();
    let entries: Vec<RemainderEntry> = (1..q)
        .map(|t| {
            remainder_inequality(
                q,
                r,
                &pi.alpha,
                profile.tensor_set_size,
                profile.set_size,
                t,
                profile.nu(t),
            )
        })
        .collect();
    Ok(RemainderReport {
        coordinate: k,
        subspace_dim: r,
        alpha: pi.alpha.clone(),
        set_size: profile.set_size,
        tensor_set_size: profile.tensor_set_size,
        all_hold: entries.iter().all(|e| e.holds),
        entries,
    })
}

/// The remainder inequality for every `t ≠ 0`.
pub fn remainder_checks(
    form: &MultiLinearForm,
    e: &PointSet,
    a: Option<&Subspace>,
    b: Option<&Subspace>,
    en: &Enumeration,
) -> Result<RemainderReport> {
    let pi = projective_index(e)?;
    let h = check_hypotheses(form, e, a, b, en)?;
    remainder_from(form, e, &h, &pi, en)
}

/// The remainder inequality at a single nonzero `t`.
pub fn remainder_check(
    form: &MultiLinearForm,
    e: &PointSet,
    a: Option<&Subspace>,
    b: Option<&Subspace>,
    t: Scalar,
    en: &Enumeration,
) -> Result<RemainderEntry> {
    form.field().check(&t.field())?;
    if t.is_zero() {
        return Err(Error::invalid("remainder check requires t != 0"));
    }
    let report = remainder_checks(form, e, a, b, en)?;
    Ok(report.entries[(t.value() - 1) as usize].clone())
}

/// Everything the sweep needs for one `(ϖ, E)` pair, sharing the tensor set.
pub(crate) fn analyze(
    form: &MultiLinearForm,
    e: &PointSet,
    en: &Enumeration,
) -> Result<(BoundReport, Option<RemainderReport>)> {
    let pi = projective_index(e)?;
    let h = check_hypotheses(form, e, None, None, en)?;
    let report = bound_report(form, e, &h, &pi);
    let remainder = if h.hold() {
        Some(remainder_from(form, e, &h, &pi, en)?)
    } else {
        None
    };
    Ok((report, remainder))
}

pub(crate) fn is_positive(x: &BigInt) -> bool {
    x.is_positive() && !x.is_zero()
}
