use serde::Serialize;

use super::{theorem_bound, BoundReport};
use crate::enumerate::Enumeration;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::{MultiLinearForm, Relation};
use crate::group::MultiplicativeSubgroup;
use crate::sets::{image_set, PointSet, ScalarSet};

/// `E = Γ × Γ` under the diagonal form `x₁y₁z₁ + x₂y₂z₂`, whose image is
/// `Γ + Γ`.
#[derive(Debug, Clone, Serialize)]
pub struct SharpExample {
    pub q: u64,
    pub s: u64,
    pub subgroup: Vec<u64>,
    pub sumset: Vec<u64>,
    /// `ϖ(E^3)`, by enumeration.
    pub image: Vec<u64>,
    /// `F_q^* \ ϖ(E^3)`.
    pub missing: Vec<u64>,
    pub set_size: u64,
    /// `|E| = ((q - 1)/s)²`.
    pub size_matches: bool,
    /// `ϖ(E^3) = Γ + Γ`.
    pub image_is_sumset: bool,
    pub bound: BoundReport,
    #[serde(skip)]
    pub form: MultiLinearForm,
    #[serde(skip)]
    pub set: PointSet,
}

impl SharpExample {
    pub fn covers_nonzero(&self) -> bool {
        self.missing.is_empty()
    }
}

/// The diagonal relation `{(1,1,1), (2,2,2)}`.
pub fn diagonal_relation() -> Relation {
    Relation::new(2, 3, [vec![1, 1, 1], vec![2, 2, 2]]).expect("valid relation")
}

pub fn sharp_example(q: u64, s: u64, en: &Enumeration) -> Result<SharpExample> {
    let field = PrimeField::new(q)?;
    let gamma = MultiplicativeSubgroup::of_index(field, s)?;
    let g = ScalarSet::new(field, gamma.residues().iter().copied());
    let sumset = g.sum(&g)?;
    if sumset.covers_nonzero() {
        return Err(Error::invalid(format!(
            "not sharp at these parameters: Γ+Γ covers F_{q}^* for s = {s}"
        )));
    }
    let form = diagonal_relation().form(field)?;
    let points = gamma
        .residues()
        .iter()
        .flat_map(|&x| gamma.residues().iter().map(move |&y| vec![x, y]))
        .collect();
    let set = PointSet::from_residues(field, 2, points);
    let image = image_set(&form, &set, en)?;
    let bound = theorem_bound(&form, &set, None, None, en)?;
    let order = (q - 1) / s;
    Ok(SharpExample {
        q,
        s,
        subgroup: gamma.residues().to_vec(),
        sumset: sumset.elements().to_vec(),
        missing: image.missing_nonzero(),
        image_is_sumset: image == sumset,
        image: image.elements().to_vec(),
        set_size: set.len() as u64,
        size_matches: set.len() as u64 == order * order,
        bound,
        form,
        set,
    })
}
