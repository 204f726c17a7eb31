//! Command-line front end.
//!
//! Every subcommand first resolves its inputs into a [`Request`], which is
//! embedded verbatim in the report; `check-report` re-executes it and compares
//! results.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    coset_corollary, min_r, nu_profile, omphalos_bound_check, remainder_checks, sharp_example,
    soundness_sweep, theorem_bound, vacuity_check, CorpusConfig, SweepReport,
};
use crate::enumerate::{Enumeration, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::forms::MultiLinearForm;
use crate::group::MultiplicativeSubgroup;
use crate::io::{
    parse_json, read_json, subspace_from_rows, subspace_rows, CosetOmphalosFile, FormFile,
    OmphalosFile, PointSetFile,
};
use crate::linalg::Subspace;
use crate::rational::{self, ratio, render};
use crate::sets::{
    covers_nonzero, evaluate_expression, image_set, projective_index, validate_omphalos, PointSet,
    ScalarSet,
};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "MLGEOM_CONFIG";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub cap: u128,
    pub seed: u64,
    pub format: OutputFormat,
    /// 0 = all cores.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cap: DEFAULT_CAP,
            seed: CorpusConfig::default().seed,
            format: OutputFormat::Json,
            workers: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        let config: RunConfig = toml::from_str(&text)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::invalid("cap must be at least 1"));
        }
        Ok(())
    }

    pub fn enumeration(&self) -> Enumeration {
        Enumeration {
            cap: self.cap,
            workers: self.workers,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mlgeom", version, about = "Exact checks for multilinear forms over prime fields")]
pub struct Cli {
    /// TOML config file; defaults to $MLGEOM_CONFIG when set.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Maximum number of tuples one enumeration may visit.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    /// RNG seed for generated corpora.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads; 0 = all cores.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FormSet {
    /// Form file, or a preset: dot(q,d,n), det(q,d), diagonal(q).
    #[arg(long)]
    pub form: String,
    /// Point-set file, or a preset: punctured(q,d), square(q,s),
    /// coset(q,s,h1;h2;...).
    #[arg(long)]
    pub set: String,
}

#[derive(Debug, Args)]
pub struct Subspaces {
    /// Spanning vectors of A, e.g. "1,0,0,0;0,0,0,1".
    #[arg(long)]
    pub a: Option<String>,
    /// Spanning vectors of B.
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// (A, B)-non-degeneracy in coordinate k (A, B default to the full spaces).
    Nondegenerate {
        #[arg(long)]
        form: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        spaces: Subspaces,
    },
    /// The (k, A)-row space.
    RowSpace {
        #[arg(long)]
        form: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: Option<String>,
    },
    /// Pair count and projective index α of a point set.
    ProjectiveIndex {
        #[arg(long)]
        set: String,
    },
    /// Level-set counts ν(t).
    Nu {
        #[command(flatten)]
        input: FormSet,
    },
    /// The covering bound with its hypotheses.
    Bound {
        #[command(flatten)]
        input: FormSet,
        #[command(flatten)]
        spaces: Subspaces,
        /// Also enumerate the image to confirm the cover.
        #[arg(long)]
        verify: bool,
    },
    /// The remainder inequality for every t != 0, or one t.
    Remainder {
        #[command(flatten)]
        input: FormSet,
        #[command(flatten)]
        spaces: Subspaces,
        #[arg(long)]
        t: Option<u64>,
    },
    /// The image ϖ(E^n) and the nonzero values it misses.
    Cover {
        #[command(flatten)]
        input: FormSet,
    },
    /// Builds an omphalos from a spec file (or the full plane) and checks its bound.
    Omphalos {
        #[arg(long, conflicts_with = "q")]
        spec: Option<PathBuf>,
        /// Full plane: every line, every multiple.
        #[arg(long)]
        q: Option<u64>,
    },
    /// {x(1, y) : x, y ∈ HΓ} with its corollary check.
    CosetOmphalos {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
        /// Coset representatives, e.g. "1,2".
        #[arg(long, conflicts_with = "r")]
        reps: Option<String>,
        /// Use the first r coset representatives.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Γ × Γ under the diagonal form, where the image misses values.
    SharpExample {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
    },
    /// Checks the coset corollary at (q, s, r).
    CosetCorollary {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
    },
    /// Least r satisfying the coset corollary.
    MinR {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
    },
    /// Whether the bound can be non-vacuous for an (n, ℓ) shape.
    Vacuity {
        #[arg(long)]
        n: u32,
        #[arg(long = "l")]
        ell: u32,
        #[arg(long)]
        q: u64,
        /// Rational "num/den".
        #[arg(long)]
        alpha: String,
    },
    /// Seeded soundness sweep over a generated corpus.
    Sweep {
        /// Comma-separated primes.
        #[arg(long, default_value = "3,5,7,11,13")]
        primes: String,
        #[arg(long, default_value_t = 2)]
        random_sets: usize,
        #[arg(long, default_value_t = 2)]
        random_omphaloi: usize,
        #[arg(long, default_value_t = 24)]
        max_random_size: usize,
    },
    /// Evaluates a sum of products such as AAA+AAAAAA over A ⊂ F_q.
    Sumproduct {
        #[arg(long)]
        q: u64,
        /// A = HΓ for the index-s subgroup Γ (with --reps or --r).
        #[arg(long, conflicts_with = "elements")]
        s: Option<u64>,
        #[arg(long, requires = "s")]
        reps: Option<String>,
        #[arg(long, requires = "s", conflicts_with = "reps")]
        r: Option<usize>,
        /// Explicit elements of A, e.g. "1,3,9".
        #[arg(long)]
        elements: Option<String>,
        #[arg(long, default_value = "AAA+AAAAAA")]
        expr: String,
    },
    /// Re-executes the request embedded in a JSON report and compares results.
    CheckReport { report: PathBuf },
}

/// A fully resolved invocation: everything needed to recompute the result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Request {
    Nondegenerate {
        form: FormFile,
        k: usize,
        a: Option<Vec<Vec<u64>>>,
        b: Option<Vec<Vec<u64>>>,
    },
    RowSpace {
        form: FormFile,
        k: usize,
        a: Option<Vec<Vec<u64>>>,
    },
    ProjectiveIndex {
        set: PointSetFile,
    },
    Nu {
        form: FormFile,
        set: PointSetFile,
    },
    Bound {
        form: FormFile,
        set: PointSetFile,
        a: Option<Vec<Vec<u64>>>,
        b: Option<Vec<Vec<u64>>>,
        verify: bool,
    },
    Remainder {
        form: FormFile,
        set: PointSetFile,
        a: Option<Vec<Vec<u64>>>,
        b: Option<Vec<Vec<u64>>>,
        t: Option<u64>,
    },
    Cover {
        form: FormFile,
        set: PointSetFile,
    },
    Omphalos {
        spec: OmphalosFile,
    },
    CosetOmphalos {
        spec: CosetOmphalosFile,
    },
    SharpExample {
        q: u64,
        s: u64,
    },
    CosetCorollary {
        q: u64,
        s: u64,
        r: u64,
    },
    MinR {
        q: u64,
        s: u64,
    },
    Vacuity {
        n: u32,
        l: u32,
        q: u64,
        alpha: String,
    },
    Sweep {
        corpus: CorpusConfig,
    },
    Sumproduct {
        q: u64,
        elements: Vec<u64>,
        expr: String,
    },
}

impl Request {
    pub fn name(&self) -> &'static str {
        match self {
            Request::Nondegenerate { .. } => "nondegenerate",
            Request::RowSpace { .. } => "row-space",
            Request::ProjectiveIndex { .. } => "projective-index",
            Request::Nu { .. } => "nu",
            Request::Bound { .. } => "bound",
            Request::Remainder { .. } => "remainder",
            Request::Cover { .. } => "cover",
            Request::Omphalos { .. } => "omphalos",
            Request::CosetOmphalos { .. } => "coset-omphalos",
            Request::SharpExample { .. } => "sharp-example",
            Request::CosetCorollary { .. } => "coset-corollary",
            Request::MinR { .. } => "min-r",
            Request::Vacuity { .. } => "vacuity",
            Request::Sweep { .. } => "sweep",
            Request::Sumproduct { .. } => "sumproduct",
        }
    }

    /// The field order, when the request has a single one.
    pub fn q(&self) -> Option<u64> {
        match self {
            Request::Nondegenerate { form, .. }
            | Request::RowSpace { form, .. }
            | Request::Nu { form, .. }
            | Request::Bound { form, .. }
            | Request::Remainder { form, .. }
            | Request::Cover { form, .. } => Some(form.q),
            Request::ProjectiveIndex { set } => Some(set.q),
            Request::Omphalos { spec } => Some(spec.q),
            Request::CosetOmphalos { spec } => Some(spec.q),
            Request::SharpExample { q, .. }
            | Request::CosetCorollary { q, .. }
            | Request::MinR { q, .. }
            | Request::Vacuity { q, .. }
            | Request::Sumproduct { q, .. } => Some(*q),
            Request::Sweep { .. } => None,
        }
    }
}

/// The document every subcommand prints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub q: Option<u64>,
    pub seed: u64,
    pub request: Request,
    pub result: Value,
}

fn parse_list(label: &str, text: &str) -> Result<Vec<u64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::invalid(format!("{label}: {t:?} is not a non-negative integer")))
        })
        .collect()
}

fn parse_rows(label: &str, text: &str) -> Result<Vec<Vec<u64>>> {
    text.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| parse_list(label, r))
        .collect()
}

/// `name(a,b,...)` into the name and its arguments.
fn parse_preset(text: &str) -> Option<(&str, Vec<&str>)> {
    let text = text.trim();
    let open = text.find('(')?;
    let inner = text.strip_suffix(')')?.get(open + 1..)?;
    Some((&text[..open], inner.split(',').map(str::trim).collect()))
}

fn preset_args(name: &str, args: &[&str], expected: usize) -> Result<Vec<u64>> {
    if args.len() != expected {
        return Err(Error::invalid(format!(
            "{name}(...) takes {expected} arguments, got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|a| {
            a.parse()
                .map_err(|_| Error::invalid(format!("{name}(...): {a:?} is not an integer")))
        })
        .collect()
}

pub fn resolve_form(text: &str) -> Result<FormFile> {
    let Some((name, args)) = parse_preset(text) else {
        return read_json(Path::new(text));
    };
    let form = match name {
        "dot" => {
            let v = preset_args(name, &args, 3)?;
            MultiLinearForm::dot_form(PrimeField::new(v[0])?, v[1] as usize, v[2] as usize)?
        }
        "det" => {
            let v = preset_args(name, &args, 2)?;
            MultiLinearForm::determinant_form(PrimeField::new(v[0])?, v[1] as usize, v[1] as usize)?
        }
        "diagonal" => {
            let v = preset_args(name, &args, 1)?;
            PrimeField::new(v[0])?;
            return Ok(FormFile::from_relation(
                v[0],
                &crate::analysis::diagonal_relation(),
            ));
        }
        other => return Err(Error::invalid(format!("unknown form preset {other:?}"))),
    };
    Ok(FormFile::from_form(&form))
}

pub fn resolve_set(text: &str) -> Result<PointSetFile> {
    let Some((name, args)) = parse_preset(text) else {
        return read_json(Path::new(text));
    };
    let set = match name {
        "punctured" => {
            let v = preset_args(name, &args, 2)?;
            PointSet::punctured_space(PrimeField::new(v[0])?, v[1] as usize)
        }
        "square" => {
            let v = preset_args(name, &args, 2)?;
            let field = PrimeField::new(v[0])?;
            let gamma = MultiplicativeSubgroup::of_index(field, v[1])?;
            PointSet::square(field, gamma.residues())
        }
        "coset" => {
            if args.len() != 3 {
                return Err(Error::invalid("coset(q,s,h1;h2;...) takes 3 arguments"));
            }
            let v = preset_args(name, &args[..2], 2)?;
            let reps = parse_list("coset reps", &args[2].replace(';', ","))?;
            CosetOmphalosFile {
                q: v[0],
                s: v[1],
                reps,
            }
            .build()?
        }
        other => return Err(Error::invalid(format!("unknown set preset {other:?}"))),
    };
    Ok(PointSetFile::from_set(&set))
}

fn first_reps(q: u64, s: u64, r: usize) -> Result<Vec<u64>> {
    let gamma = MultiplicativeSubgroup::of_index(PrimeField::new(q)?, s)?;
    Ok(gamma
        .coset_representatives(r)?
        .iter()
        .map(Scalar::value)
        .collect())
}

fn rows_opt(label: &str, text: &Option<String>) -> Result<Option<Vec<Vec<u64>>>> {
    text.as_deref().map(|t| parse_rows(label, t)).transpose()
}

/// Turns parsed arguments into a self-contained request.
pub fn resolve(command: &Command, config: &RunConfig) -> Result<Request> {
    Ok(match command {
        Command::Nondegenerate { form, k, spaces } => Request::Nondegenerate {
            form: resolve_form(form)?,
            k: *k,
            a: rows_opt("--a", &spaces.a)?,
            b: rows_opt("--b", &spaces.b)?,
        },
        Command::RowSpace { form, k, a } => Request::RowSpace {
            form: resolve_form(form)?,
            k: *k,
            a: rows_opt("--a", a)?,
        },
        Command::ProjectiveIndex { set } => Request::ProjectiveIndex {
            set: resolve_set(set)?,
        },
        Command::Nu { input } => Request::Nu {
            form: resolve_form(&input.form)?,
            set: resolve_set(&input.set)?,
        },
        Command::Bound {
            input,
            spaces,
            verify,
        } => Request::Bound {
            form: resolve_form(&input.form)?,
            set: resolve_set(&input.set)?,
            a: rows_opt("--a", &spaces.a)?,
            b: rows_opt("--b", &spaces.b)?,
            verify: *verify,
        },
        Command::Remainder { input, spaces, t } => Request::Remainder {
            form: resolve_form(&input.form)?,
            set: resolve_set(&input.set)?,
            a: rows_opt("--a", &spaces.a)?,
            b: rows_opt("--b", &spaces.b)?,
            t: *t,
        },
        Command::Cover { input } => Request::Cover {
            form: resolve_form(&input.form)?,
            set: resolve_set(&input.set)?,
        },
        Command::Omphalos { spec, q } => {
            let spec = match (spec, q) {
                (Some(path), None) => read_json(path)?,
                (None, Some(q)) => {
                    let field = PrimeField::new(*q)?;
                    let lines = crate::sets::all_directions(field);
                    OmphalosFile {
                        q: *q,
                        selections: vec![(1..*q).collect(); lines.len()],
                        lines: lines.into_iter().map(|l| l.into_residues()).collect(),
                    }
                }
                _ => return Err(Error::invalid("omphalos needs --spec or --q")),
            };
            Request::Omphalos { spec }
        }
        Command::CosetOmphalos { q, s, reps, r } => {
            let reps = match (reps, r) {
                (Some(text), None) => parse_list("--reps", text)?,
                (None, Some(r)) => first_reps(*q, *s, *r)?,
                (None, None) => first_reps(*q, *s, 1)?,
                _ => unreachable!("clap rejects both"),
            };
            Request::CosetOmphalos {
                spec: CosetOmphalosFile { q: *q, s: *s, reps },
            }
        }
        Command::SharpExample { q, s } => Request::SharpExample { q: *q, s: *s },
        Command::CosetCorollary { q, s, r } => Request::CosetCorollary {
            q: *q,
            s: *s,
            r: *r,
        },
        Command::MinR { q, s } => Request::MinR { q: *q, s: *s },
        Command::Vacuity { n, ell, q, alpha } => {
            rational::parse(alpha)?;
            Request::Vacuity {
                n: *n,
                l: *ell,
                q: *q,
                alpha: alpha.trim().to_string(),
            }
        }
        Command::Sweep {
            primes,
            random_sets,
            random_omphaloi,
            max_random_size,
        } => Request::Sweep {
            corpus: CorpusConfig {
                seed: config.seed,
                primes: parse_list("--primes", primes)?,
                random_sets: *random_sets,
                random_omphaloi: *random_omphaloi,
                max_random_size: *max_random_size,
            },
        },
        Command::Sumproduct {
            q,
            s,
            reps,
            r,
            elements,
            expr,
        } => {
            let field = PrimeField::new(*q)?;
            let elements = match (s, elements) {
                (Some(s), None) => {
                    let gamma = MultiplicativeSubgroup::of_index(field, *s)?;
                    let reps: Vec<Scalar> = match (reps, r) {
                        (Some(text), _) => parse_list("--reps", text)?
                            .into_iter()
                            .map(|h| Scalar::new(field, h))
                            .collect(),
                        (None, r) => gamma.coset_representatives(r.unwrap_or(1))?,
                    };
                    gamma.coset_union(&reps)?
                }
                (None, Some(text)) => parse_list("--elements", text)?,
                _ => return Err(Error::invalid("sumproduct needs --s or --elements")),
            };
            crate::sets::parse_expression(expr)?;
            Request::Sumproduct {
                q: *q,
                elements,
                expr: expr.clone(),
            }
        }
        Command::CheckReport { .. } => {
            return Err(Error::invalid("check-report has no request of its own"))
        }
    })
}

fn subspace_or_full(
    field: PrimeField,
    dim: usize,
    rows: &Option<Vec<Vec<u64>>>,
) -> Result<Subspace> {
    match rows {
        Some(rows) => subspace_from_rows(field, dim, rows),
        None => Ok(Subspace::full(field, dim)),
    }
}

fn subspace_opt(field: PrimeField, dim: usize, rows: &Option<Vec<Vec<u64>>>) -> Result<Option<Subspace>> {
    rows.as_ref()
        .map(|r| subspace_from_rows(field, dim, r))
        .transpose()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn form_and_set(form: &FormFile, set: &PointSetFile) -> Result<(MultiLinearForm, PointSet)> {
    let form = form.build()?;
    let set = set.build()?;
    form.field().check(&set.field())?;
    Ok((form, set))
}

/// Computes the result of a request.
pub fn execute(request: &Request, config: &RunConfig) -> Result<Value> {
    let en = config.enumeration();
    Ok(match request {
        Request::Nondegenerate { form, k, a, b } => {
            let form = form.build()?;
            let f = form.field();
            let a = subspace_or_full(f, form.dim().pow(form.arity() as u32 - 1), a)?;
            let b = subspace_or_full(f, form.dim(), b)?;
            let v = form.nondegeneracy(*k, &a, &b)?;
            json!({
                "nondegenerate": v.nondegenerate,
                "kernel_dim": v.kernel_dim,
                "witness": v.witness.map(|w| w.into_residues()),
                "a_dim": a.dim(),
                "b_dim": b.dim(),
                "row_space_dim": v.row_space.dim(),
                "row_space_full": v.row_space.is_full(),
            })
        }
        Request::RowSpace { form, k, a } => {
            let form = form.build()?;
            let f = form.field();
            let a = subspace_or_full(f, form.dim().pow(form.arity() as u32 - 1), a)?;
            let row = form.row_space(*k, &a)?;
            json!({
                "dim": row.dim(),
                "full": row.is_full(),
                "basis": subspace_rows(&row),
            })
        }
        Request::ProjectiveIndex { set } => {
            let pi = projective_index(&set.build()?)?;
            json!({
                "pair_count": pi.pair_count,
                "set_size": pi.set_size,
                "alpha": render(&pi.alpha),
                "zero_in_set": pi.zero_in_set,
            })
        }
        Request::Nu { form, set } => {
            let (form, set) = form_and_set(form, set)?;
            let p = nu_profile(&form, &set, &en)?;
            json!({
                "counts": p.counts,
                "set_size": p.set_size,
                "tensor_set_size": p.tensor_set_size,
                "total": p.total(),
                "partition": p.is_partition(),
            })
        }
        Request::Bound {
            form,
            set,
            a,
            b,
            verify,
        } => {
            let (form, set) = form_and_set(form, set)?;
            let f = form.field();
            let a = subspace_opt(f, form.dim().pow(form.arity() as u32 - 1), a)?;
            let b = subspace_opt(f, form.dim(), b)?;
            let report = theorem_bound(&form, &set, a.as_ref(), b.as_ref(), &en)?;
            let mut v = to_value(&report);
            v["predicts_cover"] = json!(report.predicts_cover());
            if *verify {
                v["covered"] = json!(covers_nonzero(&form, &set, &en)?);
            }
            v
        }
        Request::Remainder {
            form,
            set,
            a,
            b,
            t,
        } => {
            let (form, set) = form_and_set(form, set)?;
            let f = form.field();
            let a = subspace_opt(f, form.dim().pow(form.arity() as u32 - 1), a)?;
            let b = subspace_opt(f, form.dim(), b)?;
            if *t == Some(0) {
                return Err(Error::invalid("remainder check requires t != 0"));
            }
            if let Some(t) = t {
                if *t >= f.order() {
                    return Err(Error::invalid(format!("--t {t} is not a residue mod {}", f.order())));
                }
            }
            let mut report = remainder_checks(&form, &set, a.as_ref(), b.as_ref(), &en)?;
            if let Some(t) = t {
                report.entries.retain(|e| e.t == *t);
                report.all_hold = report.entries.iter().all(|e| e.holds);
            }
            to_value(&report)
        }
        Request::Cover { form, set } => {
            let (form, set) = form_and_set(form, set)?;
            let image = image_set(&form, &set, &en)?;
            json!({
                "covers_nonzero": image.covers_nonzero(),
                "image": image.elements(),
                "missing": image.missing_nonzero(),
            })
        }
        Request::Omphalos { spec } => omphalos_result(&spec.build()?, &en)?,
        Request::CosetOmphalos { spec } => {
            let set = spec.build()?;
            let mut v = omphalos_result(&set, &en)?;
            let r = spec.reps.len() as u64;
            let side = r * ((spec.q - 1) / spec.s);
            v["expected_k"] = json!(side);
            v["corollary"] = to_value(&coset_corollary(spec.q, spec.s, r)?);
            v
        }
        Request::SharpExample { q, s } => {
            let ex = sharp_example(*q, *s, &en)?;
            let mut v = to_value(&ex);
            v["covers_nonzero"] = json!(ex.covers_nonzero());
            v
        }
        Request::CosetCorollary { q, s, r } => to_value(&coset_corollary(*q, *s, *r)?),
        Request::MinR { q, s } => json!({ "min_r": min_r(*q, *s)? }),
        Request::Vacuity { n, l, q, alpha } => {
            PrimeField::new(*q)?;
            to_value(&vacuity_check(*n, *l, *q, &rational::parse(alpha)?)?)
        }
        Request::Sweep { corpus } => to_value(&sweep_summary(&soundness_sweep(corpus, &en)?)),
        Request::Sumproduct { q, elements, expr } => {
            let field = PrimeField::new(*q)?;
            let a = ScalarSet::new(field, elements.iter().copied());
            let value = evaluate_expression(&a, expr)?;
            json!({
                "set": a.elements(),
                "value": value.elements(),
                "covers_nonzero": value.covers_nonzero(),
                "missing": value.missing_nonzero(),
            })
        }
    })
}

/// The sweep result; rows go to the CSV table.
fn sweep_summary(report: &SweepReport) -> Value {
    to_value(report)
}

fn omphalos_result(set: &PointSet, en: &Enumeration) -> Result<Value> {
    let q = set.field().order();
    let (k, ell) = validate_omphalos(set)
        .ok_or_else(|| Error::invalid("set is not an omphalos"))?;
    let pi = projective_index(set)?;
    let expected = ratio(ell as i64 - 1, q - 2);
    let dot = MultiLinearForm::dot_form(set.field(), 2, 3)?;
    let bound = omphalos_bound_check(q, k as u64, ell as u64);
    let mut v = json!({
        "k": k,
        "l": ell,
        "set_size": set.len(),
        "alpha": render(&pi.alpha),
        "alpha_matches": pi.alpha == expected,
        "bound": to_value(&bound),
    });
    v["covered_by_ternary_dot"] = json!(covers_nonzero(&dot, set, en)?);
    Ok(v)
}

pub fn report(request: Request, config: &RunConfig) -> Result<Report> {
    let result = execute(&request, config)?;
    Ok(Report {
        tool: "mlgeom".into(),
        version: VERSION.into(),
        command: request.name().into(),
        q: request.q(),
        seed: config.seed,
        request,
        result,
    })
}

pub const SWEEP_COLUMNS: [&str; 12] = [
    "q",
    "d",
    "n",
    "set_size",
    "r",
    "alpha",
    "lhs",
    "rhs",
    "satisfied",
    "covered",
    "remainder_ok",
    "seed",
];

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Leaves of a JSON value as `(dotted.path, text)` pairs.
fn flatten_value(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_value(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten_value(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::Array(items) => out.push((
            prefix.to_string(),
            items.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        )),
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

/// Renders a report. CSV output is one row per instance for sweeps and a
/// `field,value` table otherwise.
pub fn render_report(report: &Report, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
            text.push('\n');
            Ok(text)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::invalid(format!("csv: {e}"));
            if let (Request::Sweep { .. }, Some(rows)) = (&report.request, report.result.get("rows")) {
                w.write_record(SWEEP_COLUMNS).map_err(csv_err)?;
                for row in rows.as_array().into_iter().flatten() {
                    w.write_record(SWEEP_COLUMNS.iter().map(|c| scalar_text(&row[*c])))
                        .map_err(csv_err)?;
                }
            } else {
                w.write_record(["field", "value"]).map_err(csv_err)?;
                let mut pairs = vec![
                    ("tool".to_string(), report.tool.clone()),
                    ("version".to_string(), report.version.clone()),
                    ("command".to_string(), report.command.clone()),
                    ("q".to_string(), report.q.map(|q| q.to_string()).unwrap_or_default()),
                    ("seed".to_string(), report.seed.to_string()),
                ];
                flatten_value("", &report.result, &mut pairs);
                for (k, v) in pairs {
                    w.write_record([k, v]).map_err(csv_err)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
    }
}

/// Outcome of re-executing a saved report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub command: String,
    pub matches: bool,
    pub version_matches: bool,
}

pub fn check_report(text: &str, config: &RunConfig) -> Result<CheckOutcome> {
    let saved: Report = parse_json("report", text)?;
    let config = RunConfig {
        seed: saved.seed,
        ..config.clone()
    };
    let fresh = report(saved.request.clone(), &config)?;
    Ok(CheckOutcome {
        command: saved.command.clone(),
        matches: fresh.result == saved.result && fresh.command == saved.command,
        version_matches: saved.version == VERSION,
    })
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut config = match path {
        Some(p) => RunConfig::load(&p)?,
        None => RunConfig::default(),
    };
    if let Some(cap) = cli.cap {
        config.cap = cap;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    if let Some(workers) = cli.workers {
        config.workers = workers;
    }
    config.validate()?;
    Ok(config)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::invalid(format!("stdout: {e}")))
        }
    }
}

fn run_cli(cli: &Cli) -> Result<u8> {
    let config = effective_config(cli)?;
    if let Command::CheckReport { report: path } = &cli.command {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        let outcome = check_report(&text, &config)?;
        let mut line = serde_json::to_string(&outcome).expect("serializes");
        line.push('\n');
        emit(cli, &line)?;
        return Ok(if outcome.matches { 0 } else { 1 });
    }
    let request = resolve(&cli.command, &config)?;
    let report = report(request, &config)?;
    emit(cli, &render_report(&report, config.format)?)?;
    Ok(0)
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 computed, 1 `check-report` mismatch, 2 input error, 3 cap exceeded.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_cli(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

pub fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
