//! Seeded corpus of `(ϖ, E)` pairs and the soundness sweep over it.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bounds::omphalos_bound_check;
use super::sharp::diagonal_relation;
use super::{analyze, bound_inequality, nu_profile};
use crate::enumerate::Enumeration;
use crate::error::Result;
use crate::field::{PrimeField, Scalar};
use crate::forms::{multi_index, MultiLinearForm, Relation};
use crate::group::MultiplicativeSubgroup;
use crate::rational::{ratio, serde_bigint, serde_rational, Rational};
use crate::sets::{
    all_directions, coset_omphalos, covers_nonzero, make_omphalos, validate_omphalos,
    OmphalosSpec, PointSet, ScalarSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusConfig {
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Random point sets drawn per prime and dimension.
    pub random_sets: usize,
    /// Random omphaloi and coset omphaloi drawn per prime.
    pub random_omphaloi: usize,
    /// Largest random point set.
    pub max_random_size: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 0x5eed,
            primes: vec![3, 5, 7, 11, 13],
            random_sets: 2,
            random_omphaloi: 2,
            max_random_size: 24,
        }
    }
}

/// Where a corpus set came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetOrigin {
    PuncturedSpace,
    Omphalos { k: usize, ell: usize },
    CosetOmphalos { s: u64, r: usize },
    /// `Γ × Γ` for the index-`s` subgroup.
    SubgroupSquare { s: u64 },
    Random,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub form_label: String,
    pub form: MultiLinearForm,
    pub origin: SetOrigin,
    pub set: PointSet,
}

impl Instance {
    /// The diagonal form on `Γ × Γ` with `Γ + Γ` missing a nonzero value.
    pub fn is_sharp_construction(&self) -> bool {
        let SetOrigin::SubgroupSquare { s } = self.origin else {
            return false;
        };
        if self.form_label != "diagonal" {
            return false;
        }
        let f = self.set.field();
        let gamma = MultiplicativeSubgroup::of_index(f, s).expect("corpus subgroup");
        let g = ScalarSet::new(f, gamma.residues().iter().copied());
        !g.sum(&g).expect("same field").covers_nonzero()
    }
}

fn random_relation(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Relation {
    let total = d.pow(n as u32);
    let count = rng.gen_range(1..=total);
    let mut flats: Vec<usize> = (0..total).collect();
    flats.shuffle(rng);
    Relation::new(d, n, flats[..count].iter().map(|&i| multi_index(d, n, i)))
        .expect("indices in range")
}

fn random_dense(rng: &mut ChaCha8Rng, field: PrimeField, d: usize, n: usize) -> MultiLinearForm {
    let q = field.order();
    let coeffs = (0..d.pow(n as u32)).map(|_| rng.gen_range(0..q)).collect();
    MultiLinearForm::from_dense(field, d, n, coeffs).expect("dense form")
}

fn random_set(rng: &mut ChaCha8Rng, field: PrimeField, d: usize, max: usize) -> PointSet {
    let q = field.order();
    let all = (q.pow(d as u32) - 1) as usize;
    let size = rng.gen_range(1..=max.min(all));
    let mut points = Vec::with_capacity(size);
    while points.len() < size {
        let p: Vec<u64> = (0..d).map(|_| rng.gen_range(0..q)).collect();
        if p.iter().any(|&c| c != 0) && !points.contains(&p) {
            points.push(p);
        }
    }
    PointSet::from_residues(field, d, points)
}

fn random_omphalos(rng: &mut ChaCha8Rng, field: PrimeField) -> PointSet {
    let q = field.order();
    let mut lines = all_directions(field);
    lines.shuffle(rng);
    let k = rng.gen_range(1..=lines.len());
    let ell = rng.gen_range(1..q) as usize;
    lines.truncate(k);
    let multiples: Vec<u64> = (1..q).collect();
    let selections = (0..k)
        .map(|_| multiples.choose_multiple(rng, ell).copied().collect())
        .collect();
    make_omphalos(&OmphalosSpec {
        field,
        lines,
        selections,
    })
    .expect("valid omphalos")
}

/// Representatives of `r` distinct random cosets.
fn random_reps(rng: &mut ChaCha8Rng, gamma: &MultiplicativeSubgroup, r: usize) -> Vec<Scalar> {
    let f = gamma.field();
    let mut candidates: Vec<u64> = (1..f.order()).collect();
    candidates.shuffle(rng);
    let mut reps: Vec<Scalar> = Vec::with_capacity(r);
    for a in candidates {
        if reps.len() == r {
            break;
        }
        if !reps.iter().any(|h| gamma.same_coset(h.value(), a)) {
            reps.push(Scalar::new(f, a));
        }
    }
    reps
}

fn subgroup_square(field: PrimeField, s: u64) -> PointSet {
    let gamma = MultiplicativeSubgroup::of_index(field, s).expect("s divides q - 1");
    let g = gamma.residues();
    let points = g
        .iter()
        .flat_map(|&x| g.iter().map(move |&y| vec![x, y]))
        .collect();
    PointSet::from_residues(field, 2, points)
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|s| m.is_multiple_of(*s)).collect()
}

/// Builds the corpus; the same config always yields the same instances.
pub fn build_corpus(config: &CorpusConfig) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for &q in &config.primes {
        let field = PrimeField::new(q)?;

        let mut planar: Vec<(SetOrigin, PointSet)> =
            vec![(SetOrigin::PuncturedSpace, PointSet::punctured_space(field, 2))];
        for s in divisors(q - 1).into_iter().filter(|&s| s >= 2) {
            planar.push((SetOrigin::SubgroupSquare { s }, subgroup_square(field, s)));
        }
        for _ in 0..config.random_omphaloi {
            let e = random_omphalos(&mut rng, field);
            let (k, ell) = validate_omphalos(&e).expect("constructed omphalos");
            planar.push((SetOrigin::Omphalos { k, ell }, e));

            let choices: Vec<u64> = divisors(q - 1);
            let s = *choices.choose(&mut rng).expect("1 divides q - 1");
            let gamma = MultiplicativeSubgroup::of_index(field, s)?;
            let r = rng.gen_range(1..=s as usize);
            let reps = random_reps(&mut rng, &gamma, r);
            planar.push((SetOrigin::CosetOmphalos { s, r }, coset_omphalos(field, s, &reps)?));
        }
        for _ in 0..config.random_sets {
            planar.push((
                SetOrigin::Random,
                random_set(&mut rng, field, 2, config.max_random_size),
            ));
        }

        let mut planar_forms: Vec<(String, MultiLinearForm)> = vec![
            ("dot3".into(), MultiLinearForm::dot_form(field, 2, 3)?),
            ("dot2".into(), MultiLinearForm::dot_form(field, 2, 2)?),
            ("det2".into(), MultiLinearForm::determinant_form(field, 2, 2)?),
            ("diagonal".into(), diagonal_relation().form(field)?),
        ];
        planar_forms.push(("relation".into(), random_relation(&mut rng, 2, 3).form(field)?));
        planar_forms.push(("dense".into(), random_dense(&mut rng, field, 2, 3)));

        for (label, form) in &planar_forms {
            for (origin, set) in &planar {
                out.push(Instance {
                    form_label: label.clone(),
                    form: form.clone(),
                    origin: origin.clone(),
                    set: set.clone(),
                });
            }
        }

        let mut spatial: Vec<(SetOrigin, PointSet)> = Vec::new();
        if q <= 5 {
            spatial.push((SetOrigin::PuncturedSpace, PointSet::punctured_space(field, 3)));
        }
        for _ in 0..config.random_sets {
            spatial.push((
                SetOrigin::Random,
                random_set(&mut rng, field, 3, config.max_random_size),
            ));
        }
        let spatial_forms: Vec<(String, MultiLinearForm)> = vec![
            ("det3".into(), MultiLinearForm::determinant_form(field, 3, 3)?),
            ("dot3".into(), MultiLinearForm::dot_form(field, 3, 3)?),
            ("relation".into(), random_relation(&mut rng, 3, 3).form(field)?),
        ];
        for (label, form) in &spatial_forms {
            for (origin, set) in &spatial {
                out.push(Instance {
                    form_label: label.clone(),
                    form: form.clone(),
                    origin: origin.clone(),
                    set: set.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// One corpus instance through every check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub form: String,
    pub origin: SetOrigin,
    pub q: u64,
    pub d: usize,
    pub n: usize,
    pub set_size: u64,
    pub r: usize,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub satisfied: bool,
    pub hypotheses: bool,
    pub covered: bool,
    /// `None` when the hypotheses fail and the remainder check does not apply.
    pub remainder_ok: Option<bool>,
    pub partition_ok: bool,
    pub tensor_size_ok: bool,
    /// For omphaloi: α equals `(ℓ-1)/(q-2)`.
    pub omphalos_alpha_ok: Option<bool>,
    /// For omphaloi: the cubed bound at `r = 4` matches `k³ℓ³ > q⁶ - (ℓ-1)q⁵`.
    pub omphalos_bound_ok: Option<bool>,
    /// For coset omphaloi: `k = ℓ = r(q-1)/s`.
    pub coset_shape_ok: Option<bool>,
    pub sharp_evidence: bool,
    pub seed: u64,
}

impl SweepRow {
    /// The theorem applies but the cover fails.
    pub fn is_violation(&self) -> bool {
        self.hypotheses && self.satisfied && !self.covered
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: CorpusConfig,
    pub instances: usize,
    /// Instances where hypotheses and bound both hold.
    pub applicable: usize,
    pub violations: usize,
    pub remainder_checked: usize,
    pub remainder_failures: usize,
    pub identity_failures: usize,
    pub omphalos_failures: usize,
    pub sharp_evidence: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
            && self.remainder_failures == 0
            && self.identity_failures == 0
            && self.omphalos_failures == 0
    }
}

fn sweep_row(index: usize, inst: &Instance, seed: u64, en: &Enumeration) -> Result<SweepRow> {
    let (bound, remainder) = analyze(&inst.form, &inst.set, en)?;
    let profile = nu_profile(&inst.form, &inst.set, en)?;
    let covered = covers_nonzero(&inst.form, &inst.set, en)?;
    let q = bound.q;
    let omphalos = validate_omphalos(&inst.set).filter(|_| q > 2);
    let omphalos_alpha_ok = omphalos.map(|(_, ell)| bound.alpha == ratio(ell as i64 - 1, q - 2));
    let omphalos_bound_ok = omphalos.map(|(k, ell)| {
        let alpha = ratio(ell as i64 - 1, q - 2);
        let cubed = bound_inequality(q, 3, 4, &alpha, (k * ell) as u64);
        cubed.satisfied == omphalos_bound_check(q, k as u64, ell as u64).holds
    });
    let coset_shape_ok = match inst.origin {
        SetOrigin::CosetOmphalos { s, r } => {
            let side = r * ((q - 1) / s) as usize;
            Some(omphalos == Some((side, side)))
        }
        _ => None,
    };
    let sharp_evidence = inst.is_sharp_construction() && !bound.satisfied && !covered;
    Ok(SweepRow {
        index,
        form: inst.form_label.clone(),
        origin: inst.origin.clone(),
        q,
        d: bound.d,
        n: bound.n,
        set_size: bound.set_size,
        r: bound.subspace_dim,
        alpha: bound.alpha.clone(),
        satisfied: bound.satisfied,
        hypotheses: bound.hypotheses_hold,
        lhs: bound.lhs.clone(),
        rhs: bound.rhs.clone(),
        covered,
        remainder_ok: remainder.map(|r| r.all_hold),
        partition_ok: profile.is_partition(),
        tensor_size_ok: bound.tensor_size_bound_holds,
        omphalos_alpha_ok,
        omphalos_bound_ok,
        coset_shape_ok,
        sharp_evidence,
        seed,
    })
}

/// Runs every check on every corpus instance. Instances are distributed
/// over workers; rows come back in corpus order.
pub fn soundness_sweep(config: &CorpusConfig, en: &Enumeration) -> Result<SweepReport> {
    let corpus = build_corpus(config)?;
    let rows = en.map_reduce(
        corpus.len(),
        Ok(Vec::new()),
        |range| {
            range
                .map(|i| sweep_row(i, &corpus[i], config.seed, en))
                .collect::<Result<Vec<_>>>()
        },
        |a: Result<Vec<SweepRow>>, b| {
            let mut a = a?;
            a.extend(b?);
            Ok(a)
        },
    )?;
    let count = |p: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| p(r)).count();
    Ok(SweepReport {
        config: config.clone(),
        instances: rows.len(),
        applicable: count(&|r| r.hypotheses && r.satisfied),
        violations: count(&|r| r.is_violation()),
        remainder_checked: count(&|r| r.remainder_ok.is_some()),
        remainder_failures: count(&|r| r.remainder_ok == Some(false)),
        identity_failures: count(&|r| !r.partition_ok || !r.tensor_size_ok),
        omphalos_failures: count(&|r| {
            r.omphalos_alpha_ok == Some(false)
                || r.omphalos_bound_ok == Some(false)
                || r.coset_shape_ok == Some(false)
        }),
        sharp_evidence: count(&|r| r.sharp_evidence),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CorpusConfig {
        CorpusConfig {
            primes: vec![3, 5, 7],
            random_sets: 1,
            random_omphaloi: 1,
            max_random_size: 10,
            ..Default::default()
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = build_corpus(&small()).unwrap();
        let b = build_corpus(&small()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.set, y.set);
            assert_eq!(x.form, y.form);
        }
        let other = build_corpus(&CorpusConfig { seed: 1, ..small() }).unwrap();
        assert!(a.iter().zip(&other).any(|(x, y)| x.set != y.set || x.form != y.form));
    }

    #[test]
    fn small_sweep_is_clean_and_parallel_invariant() {
        let seq = soundness_sweep(&small(), &Enumeration::sequential()).unwrap();
        assert!(seq.is_clean());
        assert!(seq.applicable > 0);
        let par = soundness_sweep(&small(), &Enumeration::default()).unwrap();
        assert_eq!(seq, par);
    }
}
