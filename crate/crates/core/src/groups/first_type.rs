//! Embedding a catalog group into `U(diag(1, 1, α))` with `α` negative at
//! the distinguished embedding and positive elsewhere.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::catalog::CatalogEntry;
use crate::groups::{closure, Budgets};
use crate::hermitian::HermitianForm;
use crate::numfield::{CmField, SignPattern};
use crate::ring::Ring;
use crate::CmMatrix;

#[derive(Debug, Clone)]
pub struct FirstTypeEmbedding {
    pub field: Arc<CmField>,
    pub form: HermitianForm,
    /// Generators, each verified to preserve `form`.
    pub generators: Vec<CmMatrix>,
    /// Closure order of the embedded group.
    pub order: usize,
}

/// `H_α = diag(1, 1, α)` for the entry, with invariance verified on every
/// element of the closed group.
pub fn embed_first_type(
    entry: &CatalogEntry,
    budgets: &Budgets,
) -> Result<FirstTypeEmbedding> {
    let field = entry.field.clone();
    let base = field.base();
    let alpha = base.weak_approx_find(&SignPattern::admissible(base.degree()), budgets.weak_approx)?;
    let form = HermitianForm::diagonal(field.clone(), &[base.one(), base.one(), alpha])?;
    if !form.is_admissible() {
        return Err(Error::InvariantViolation(format!(
            "{}: diag(1, 1, α) is not admissible",
            entry.name
        )));
    }
    let elements = closure(&field, 3, &entry.generators, budgets.closure_cap)?;
    if elements.len() != entry.order {
        return Err(Error::InvariantViolation(format!(
            "{}: closure has order {}, expected {}",
            entry.name,
            elements.len(),
            entry.order
        )));
    }
    if !elements.iter().all(|g| form.is_invariant_under(g)) {
        return Err(Error::InvariantViolation(format!(
            "{}: group does not preserve H_α",
            entry.name
        )));
    }
    Ok(FirstTypeEmbedding {
        field,
        form,
        generators: entry.generators.clone(),
        order: elements.len(),
    })
}
