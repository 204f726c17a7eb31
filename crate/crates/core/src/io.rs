//! JSON documents for forms, point sets and omphalos specifications.
//!
//! Scalars are 0-based residues; indices into `[d]` are 1-based.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::forms::{MultiLinearForm, Relation};
use crate::linalg::{FVector, Subspace};
use crate::sets::{coset_omphalos, make_omphalos, OmphalosSpec, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub index: Vec<usize>,
    pub value: i64,
}

/// A form given by sparse coefficients or by a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub q: u64,
    pub d: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuples: Option<Vec<Vec<usize>>>,
}

impl FormFile {
    pub fn from_form(form: &MultiLinearForm) -> Self {
        FormFile {
            q: form.field().order(),
            d: form.dim(),
            n: form.arity(),
            entries: Some(
                form.sparse_entries()
                    .into_iter()
                    .map(|(index, value)| Entry {
                        index,
                        value: value as i64,
                    })
                    .collect(),
            ),
            tuples: None,
        }
    }

    pub fn from_relation(q: u64, relation: &Relation) -> Self {
        FormFile {
            q,
            d: relation.dim(),
            n: relation.arity(),
            entries: None,
            tuples: Some(relation.tuples().cloned().collect()),
        }
    }

    pub fn build(&self) -> Result<MultiLinearForm> {
        let field = PrimeField::new(self.q)?;
        match (&self.entries, &self.tuples) {
            (Some(entries), None) => {
                for (i, e) in entries.iter().enumerate() {
                    check_index(self.d, self.n, &e.index)
                        .map_err(|m| Error::invalid(format!("entries[{i}].index: {m}")))?;
                }
                MultiLinearForm::from_sparse(
                    field,
                    self.d,
                    self.n,
                    entries.iter().map(|e| (e.index.clone(), e.value)),
                )
            }
            (None, Some(tuples)) => {
                for (i, t) in tuples.iter().enumerate() {
                    check_index(self.d, self.n, t)
                        .map_err(|m| Error::invalid(format!("tuples[{i}]: {m}")))?;
                }
                Relation::new(self.d, self.n, tuples.iter().cloned())?.form(field)
            }
            _ => Err(Error::invalid(
                "form needs exactly one of `entries` or `tuples`",
            )),
        }
    }
}

fn check_index(d: usize, n: usize, index: &[usize]) -> std::result::Result<(), String> {
    if index.len() != n {
        return Err(format!("expected {n} indices, got {}", index.len()));
    }
    if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > d) {
        return Err(format!("index {bad} outside 1..={d}"));
    }
    Ok(())
}

fn check_residues(q: u64, d: usize, what: &str, rows: &[Vec<u64>]) -> Result<()> {
    for (i, p) in rows.iter().enumerate() {
        if p.len() != d {
            return Err(Error::invalid(format!(
                "{what}[{i}]: expected {d} coordinates, got {}",
                p.len()
            )));
        }
        if let Some(&bad) = p.iter().find(|&&c| c >= q) {
            return Err(Error::invalid(format!(
                "{what}[{i}]: {bad} is not a residue mod {q}"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub q: u64,
    pub d: usize,
    pub points: Vec<Vec<u64>>,
}

impl PointSetFile {
    pub fn from_set(e: &PointSet) -> Self {
        PointSetFile {
            q: e.field().order(),
            d: e.dim(),
            points: e.points().into_iter().map(FVector::into_residues).collect(),
        }
    }

    pub fn build(&self) -> Result<PointSet> {
        let field = PrimeField::new(self.q)?;
        check_residues(self.q, self.d, "points", &self.points)?;
        PointSet::new(
            field,
            self.d,
            self.points
                .iter()
                .map(|p| FVector::new(field, p.clone()))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmphalosFile {
    pub q: u64,
    pub lines: Vec<Vec<u64>>,
    pub selections: Vec<Vec<u64>>,
}

impl OmphalosFile {
    pub fn spec(&self) -> Result<OmphalosSpec> {
        let field = PrimeField::new(self.q)?;
        check_residues(self.q, 2, "lines", &self.lines)?;
        Ok(OmphalosSpec {
            field,
            lines: self
                .lines
                .iter()
                .map(|l| FVector::new(field, l.clone()))
                .collect(),
            selections: self.selections.clone(),
        })
    }

    pub fn build(&self) -> Result<PointSet> {
        make_omphalos(&self.spec()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetOmphalosFile {
    pub q: u64,
    pub s: u64,
    pub reps: Vec<u64>,
}

impl CosetOmphalosFile {
    pub fn build(&self) -> Result<PointSet> {
        let field = PrimeField::new(self.q)?;
        if let Some(&bad) = self.reps.iter().find(|&&h| h >= self.q) {
            return Err(Error::invalid(format!(
                "reps: {bad} is not a residue mod {}",
                self.q
            )));
        }
        let reps: Vec<Scalar> = self.reps.iter().map(|&h| Scalar::new(field, h)).collect();
        coset_omphalos(field, self.s, &reps)
    }
}

/// A subspace given by spanning vectors.
pub fn subspace_from_rows(field: PrimeField, dim: usize, rows: &[Vec<u64>]) -> Result<Subspace> {
    check_residues(field.order(), dim, "span", rows)?;
    let vectors: Vec<FVector> = rows.iter().map(|r| FVector::new(field, r.clone())).collect();
    Subspace::span_of(field, dim, &vectors)
}

pub fn subspace_rows(s: &Subspace) -> Vec<Vec<u64>> {
    s.basis().into_iter().map(FVector::into_residues).collect()
}

/// Parses a JSON document, reporting the line and column of any error.
pub fn parse_json<T: DeserializeOwned>(label: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("{label}: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    parse_json(&path.display().to_string(), &text)
}

pub fn read_form(path: &Path) -> Result<MultiLinearForm> {
    read_json::<FormFile>(path)?.build()
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    read_json::<PointSetFile>(path)?.build()
}
