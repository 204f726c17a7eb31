//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL` line; all comparisons are exact.
//!
//! Run with `cargo test --test acceptance -- --nocapture --test-threads=1`
//! to see the lines in order.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mlgeom::analysis::{
    build_corpus, coset_corollary, min_r, nu_profile, omphalos_bound_check, sharp_example,
    soundness_sweep, tensor_size_lower_bound_holds, theorem_bound, vacuity_exponent,
    CorpusConfig, SetOrigin, SweepReport,
};
use mlgeom::forms::{multi_index, Relation};
use mlgeom::rational::ratio;
use mlgeom::sets::{covers_nonzero, projective_index, validate_omphalos};
use mlgeom::{
    Enumeration, FVector, MultiLinearForm, MultiplicativeSubgroup, PointSet, PrimeField, Subspace,
};

fn verdict(n: u32, name: &str, ok: bool, detail: String) {
    println!(
        "criterion {n:>2}: {} | {name} | {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn field(q: u64) -> PrimeField {
    PrimeField::new(q).unwrap()
}

struct Sweep {
    report: SweepReport,
    elapsed: Duration,
}

/// The default corpus, swept once on the calling thread and shared by
/// criteria 2, 3, 9 and 10.
fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let report = soundness_sweep(&CorpusConfig::default(), &Enumeration::sequential()).unwrap();
        Sweep {
            report,
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn criterion_01_coset_corollary_at_scale() {
    let start = Instant::now();
    let c = coset_corollary(160_001, 20, 16).unwrap();
    let m = min_r(160_001, 20).unwrap();
    let elapsed = start.elapsed();
    let expected: BigInt = "66706478748133752797593495551872000000".parse().unwrap();
    let ok = c.holds && c.lhs == expected && m == Some(16) && elapsed < Duration::from_secs(1);
    verdict(
        1,
        "coset corollary q=160001 s=20 r=16",
        ok,
        format!("lhs={} min_r={m:?} in {elapsed:?}", c.lhs),
    );
}

#[test]
fn criterion_02_soundness_sweep() {
    let s = sweep();
    let r = &s.report;
    let primes: Vec<u64> = {
        let mut p: Vec<u64> = r.rows.iter().map(|row| row.q).collect();
        p.dedup();
        p
    };
    let ok = r.instances >= 200
        && primes == [3, 5, 7, 11, 13]
        && r.applicable > 0
        && r.violations == 0
        && s.elapsed < Duration::from_secs(600);
    verdict(
        2,
        "theorem soundness sweep",
        ok,
        format!(
            "{} instances, {} with hypotheses and bound, {} violations, seed {}, {:?}",
            r.instances, r.applicable, r.violations, r.config.seed, s.elapsed
        ),
    );
}

#[test]
fn criterion_03_remainder_inequality() {
    let r = &sweep().report;
    let checked: usize = r
        .rows
        .iter()
        .filter(|row| row.remainder_ok.is_some())
        .map(|row| row.q as usize - 1)
        .sum();
    let hypotheses = r.rows.iter().filter(|row| row.hypotheses).count();
    let ok = r.remainder_failures == 0 && r.remainder_checked == hypotheses && checked > 0;
    verdict(
        3,
        "remainder inequality",
        ok,
        format!(
            "{} instances, {checked} (instance, t) pairs, {} failures",
            r.remainder_checked, r.remainder_failures
        ),
    );
}

#[test]
fn criterion_04_projective_index_formulas() {
    let mut squares = 0;
    let mut square_ok = true;
    for q in [5u64, 7, 11, 13] {
        let f = field(q);
        let gamma = MultiplicativeSubgroup::of_index(f, 2).unwrap();
        let e = PointSet::square(f, gamma.residues());
        let alpha = projective_index(&e).unwrap().alpha;
        square_ok &= alpha == ratio(q as i64 - 3, 2 * (q as i64 - 2));
        squares += 1;
    }
    let mut omphaloi = 0;
    let mut omphalos_ok = true;
    for inst in build_corpus(&CorpusConfig::default()).unwrap() {
        if let SetOrigin::Omphalos { .. } | SetOrigin::CosetOmphalos { .. } | SetOrigin::PuncturedSpace =
            inst.origin
        {
            if inst.set.dim() != 2 || inst.form_label != "dot3" {
                continue;
            }
            let q = inst.set.field().order();
            let (_, ell) = validate_omphalos(&inst.set).unwrap();
            omphalos_ok &= projective_index(&inst.set).unwrap().alpha == ratio(ell as i64 - 1, q - 2);
            omphaloi += 1;
        }
    }
    verdict(
        4,
        "projective-index formulas",
        square_ok && omphalos_ok && omphaloi > 0,
        format!("{squares} index-2 squares, {omphaloi} omphaloi"),
    );
}

#[test]
fn criterion_05_sharp_example() {
    let en = Enumeration::default();
    let ex = sharp_example(13, 4, &en).unwrap();
    let cover = covers_nonzero(&ex.form, &ex.set, &en).unwrap();
    let ok = ex.sumset == [2, 4, 5, 6, 10, 12]
        && !ex.missing.is_empty()
        && ex.missing.contains(&1)
        && !cover
        && ex.set_size == 9
        && ex.size_matches
        && ex.image_is_sumset
        && ex.bound.nondegenerate_coordinates.contains(&3);
    verdict(
        5,
        "sharp example q=13 s=4",
        ok,
        format!("Γ+Γ={:?} missing={:?} |E|={}", ex.sumset, ex.missing, ex.set_size),
    );
}

fn random_subspace(rng: &mut ChaCha8Rng, f: PrimeField, dim: usize) -> Subspace {
    let count = rng.gen_range(0..=dim.min(3));
    let q = f.order();
    let vs: Vec<FVector> = (0..count)
        .map(|_| FVector::new(f, (0..dim).map(|_| rng.gen_range(0..q)).collect()))
        .collect();
    Subspace::span_of(f, dim, &vs).unwrap()
}

#[test]
fn criterion_06_nondegeneracy_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances = 0;
    let mut agree = true;
    let mut corollary = true;
    for _ in 0..1200 {
        let q = [2u64, 3, 5][rng.gen_range(0..3)];
        let f = field(q);
        let d: usize = rng.gen_range(1..=3);
        let n: usize = rng.gen_range(2..=3);
        let coeffs = (0..d.pow(n as u32)).map(|_| rng.gen_range(0..q)).collect();
        let form = MultiLinearForm::from_dense(f, d, n, coeffs).unwrap();
        let k = rng.gen_range(1..=n);
        let a = random_subspace(&mut rng, f, d.pow(n as u32 - 1));
        let b = random_subspace(&mut rng, f, d);
        // Errors if the kernel and B ∩ row^⊥ criteria disagree.
        let Ok(v) = form.nondegeneracy(k, &a, &b) else {
            agree = false;
            continue;
        };
        agree &= v.nondegenerate == form.is_nondegenerate_by_enumeration(k, &a, &b).unwrap();
        let full_a = Subspace::full(f, d.pow(n as u32 - 1));
        let full_b = Subspace::full(f, d);
        let full = form.nondegeneracy(k, &full_a, &full_b).unwrap();
        corollary &= full.nondegenerate == form.row_space(k, &full_a).unwrap().is_full();
        instances += 1;
    }

    let f = field(7);
    let dot = MultiLinearForm::dot_form(f, 2, 3).unwrap();
    let full4 = Subspace::full(f, 4);
    let full2 = Subspace::full(f, 2);
    let positive = (1..=3).all(|k| dot.is_nondegenerate(k, &full4, &full2).unwrap());
    let w = Subspace::span_of(f, 2, &[FVector::new(f, vec![0, 1])]).unwrap();
    let w2 = Subspace::tensor_product(&[&w, &w]).unwrap();
    let restricted = dot.nondegeneracy(3, &w2, &full2).unwrap();
    let negative = !restricted.nondegenerate && restricted.witness == Some(FVector::new(f, vec![1, 0]));

    verdict(
        6,
        "non-degeneracy equivalence",
        instances >= 1000 && agree && corollary && positive && negative,
        format!("{instances} random instances; ternary dot non-degenerate, W⊗W degenerate"),
    );
}

#[test]
fn criterion_07_relation_propositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut relations = 0;
    let (mut surj_cases, mut bij_cases) = (0, 0);
    let mut ok = true;
    for i in 0..600 {
        let q = [3u64, 5][rng.gen_range(0..2)];
        let f = field(q);
        let d: usize = rng.gen_range(1..=3);
        let n = 3;
        let k = rng.gen_range(1..=n);
        let total = d * d * d;
        // Half the relations are bijective in coordinate k by construction.
        let theta = if i % 2 == 0 {
            Relation::new(
                d,
                n,
                (1..=d).map(|alpha| {
                    let mut t: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
                    t[k - 1] = alpha;
                    t
                }),
            )
            .unwrap()
        } else {
            Relation::new(
                d,
                n,
                (0..total).filter(|_| rng.gen_bool(0.3)).map(|i| multi_index(d, n, i)),
            )
            .unwrap()
        };
        relations += 1;
        let form = theta.form(f).unwrap();
        let props = theta.projection_properties(k).unwrap();
        let tensor_dim = d * d;

        for &alpha in &props.missing {
            let mut spanning = vec![FVector::basis(f, d, alpha)];
            spanning.extend(random_subspace(&mut rng, f, d).basis());
            let b = Subspace::span_of(f, d, &spanning).unwrap();
            let a = if rng.gen_bool(0.5) {
                Subspace::full(f, tensor_dim)
            } else {
                random_subspace(&mut rng, f, tensor_dim)
            };
            ok &= !form.is_nondegenerate(k, &a, &b).unwrap();
            surj_cases += 1;
        }

        // The proposition needs the preimages to differ off coordinate k;
        // otherwise a shared preimage tensor has k-row e_α + e_β.
        let mut rests: Vec<Vec<usize>> = theta
            .tuples()
            .map(|t| {
                let mut r = t.clone();
                r.remove(k - 1);
                r
            })
            .collect();
        rests.sort();
        rests.dedup();
        if props.bijective && rests.len() == theta.len() {
            let mut spanning = theta.preimage_tensors(f, k).unwrap();
            spanning.extend(random_subspace(&mut rng, f, tensor_dim).basis());
            let a = Subspace::span_of(f, tensor_dim, &spanning).unwrap();
            ok &= form.is_nondegenerate(k, &a, &Subspace::full(f, d)).unwrap();
            ok &= form.is_nondegenerate(k, &a, &random_subspace(&mut rng, f, d)).unwrap();
            bij_cases += 1;
        }
    }

    // θ = [d]^n: ϖ(x_1, ..., x_n) = Π Σ_i x_j(i), so any y ⊥ (1, ..., 1) kills slot k.
    let mut counterexample = true;
    for (q, d) in [(3u64, 2usize), (5, 2), (5, 3), (7, 3)] {
        let f = field(q);
        let full = Relation::full(d, 3).unwrap().form(f).unwrap();
        let mut y = vec![0; d];
        y[0] = 1;
        y[1] = q - 1;
        let b = Subspace::span_of(f, d, &[FVector::new(f, y)]).unwrap();
        let a = Subspace::full(f, d * d);
        for k in 1..=3 {
            counterexample &= !full.is_nondegenerate(k, &a, &b).unwrap();
            counterexample &= full.is_nondegenerate(k, &a, &Subspace::span_of(f, d, &[FVector::basis(f, d, 1)]).unwrap()).unwrap();
        }
    }

    // Bijective π_3 whose preimages share (1, 1): degenerate despite the A-condition.
    let f = field(5);
    let shared = Relation::new(2, 3, [vec![1, 1, 1], vec![1, 1, 2]]).unwrap();
    let a = Subspace::span_of(f, 4, &shared.preimage_tensors(f, 3).unwrap()).unwrap();
    let v = shared.form(f).unwrap().nondegeneracy(3, &a, &Subspace::full(f, 2)).unwrap();
    let shared_ok = shared.projection_properties(3).unwrap().bijective
        && !v.nondegenerate
        && v.witness == Some(FVector::new(f, vec![1, 4]));

    verdict(
        7,
        "relation-form propositions",
        relations >= 500 && ok && counterexample && shared_ok && surj_cases > 0 && bij_cases > 0,
        format!(
            "{relations} relations, {surj_cases} missing-value cases, {bij_cases} bijective cases, shared-preimage counterexample degenerate"
        ),
    );
}

#[test]
fn criterion_08_vacuity_enumeration() {
    let start = Instant::now();
    let mut ok = true;
    let mut small = Vec::new();
    for n in 2u32..=6 {
        for ell in 1u32..=6 {
            let holds = vacuity_exponent(n, ell) < 2;
            let expected = ell == 1 || n == 2 || (n, ell) == (3, 2);
            ok &= holds == expected;
            if holds {
                small.push((n, ell));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        8,
        "vacuity enumeration",
        ok && elapsed < Duration::from_secs(1),
        format!("{} pairs below 2, {elapsed:?}", small.len()),
    );
}

#[test]
fn criterion_09_cross_formula_consistency() {
    let corpus = build_corpus(&CorpusConfig::default()).unwrap();
    let en = Enumeration::default();
    let mut checked = 0;
    let mut ok = true;
    for inst in corpus.iter().filter(|i| i.form_label == "dot3" && i.set.dim() == 2) {
        let Some((k, ell)) = validate_omphalos(&inst.set) else {
            continue;
        };
        let q = inst.set.field().order();
        let alpha = ratio(ell as i64 - 1, q - 2);
        let cubed = mlgeom::analysis::bound_inequality(q, 3, 4, &alpha, (k * ell) as u64);
        ok &= cubed.satisfied == omphalos_bound_check(q, k as u64, ell as u64).holds;
        // With the realized α and r, a satisfied omphalos bound is a satisfied theorem bound
        // whenever r = 4.
        let report = theorem_bound(&inst.form, &inst.set, None, None, &en).unwrap();
        if report.subspace_dim == 4 {
            ok &= report.satisfied == cubed.satisfied;
        }
        checked += 1;
    }
    let swept = sweep().report.rows.iter().filter(|r| r.omphalos_bound_ok.is_some()).count();
    let sweep_ok = sweep().report.rows.iter().all(|r| r.omphalos_bound_ok != Some(false));
    verdict(
        9,
        "omphalos bound vs theorem bound",
        ok && sweep_ok && checked > 0,
        format!("{checked} corpus omphaloi under the ternary dot, {swept} sweep rows"),
    );
}

#[test]
fn criterion_10_partition_and_size_identities() {
    let r = &sweep().report;
    let rows_ok = r.rows.iter().all(|row| row.partition_ok && row.tensor_size_ok);
    let coset_rows = r.rows.iter().filter(|row| row.coset_shape_ok.is_some()).count();
    let coset_ok = r.rows.iter().all(|row| row.coset_shape_ok != Some(false));

    // Direct recomputation on every distinct corpus set.
    let en = Enumeration::default();
    let corpus = build_corpus(&CorpusConfig::default()).unwrap();
    let mut direct = 0;
    let mut direct_ok = true;
    for inst in &corpus {
        let p = nu_profile(&inst.form, &inst.set, &en).unwrap();
        direct_ok &= p.total() == p.tensor_set_size * p.set_size;
        direct_ok &= tensor_size_lower_bound_holds(
            inst.set.field().order(),
            inst.form.arity(),
            p.set_size,
            p.tensor_set_size,
        );
        if let SetOrigin::CosetOmphalos { s, r } = inst.origin {
            let side = r * ((inst.set.field().order() - 1) / s) as usize;
            direct_ok &= validate_omphalos(&inst.set) == Some((side, side));
        }
        direct += 1;
    }
    verdict(
        10,
        "partition and size identities",
        rows_ok && coset_ok && coset_rows > 0 && direct_ok,
        format!("{} profiles, {coset_rows} coset omphaloi, {direct} rechecked", r.rows.len()),
    );
}
