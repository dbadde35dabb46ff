//! Finite matrix groups over a CM field and the invariant forms they preserve.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::linalg;
use crate::numfield::CmField;
use crate::CmMatrix;

pub mod catalog;
pub mod first_type;
pub mod regular;

pub use catalog::{catalog, CatalogEntry};
pub use first_type::{embed_first_type, FirstTypeEmbedding};
pub use regular::{regular_embed, regular_rep, ClassSelector, GroupTable, IntegralRep, RegularEmbedding};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;
/// Default maximal coordinate size for weak-approximation searches.
pub const DEFAULT_WEAK_APPROX_BUDGET: u64 = 20;

/// Search bounds shared by the embedding pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub weak_approx: u64,
    pub norm: u64,
    pub closure_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            weak_approx: DEFAULT_WEAK_APPROX_BUDGET,
            norm: crate::hermitian::DEFAULT_NORM_BUDGET,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

/// A finitely generated matrix group, closed on demand.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    field: Arc<CmField>,
    dim: usize,
    generators: Vec<CmMatrix>,
    elements: Option<Vec<CmMatrix>>,
}

impl MatrixGroup {
    pub fn new(field: Arc<CmField>, dim: usize, generators: Vec<CmMatrix>) -> Result<Self> {
        for g in &generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if linalg::det(&*field, g).is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixGroup {
            field,
            dim,
            generators,
            elements: None,
        })
    }

    /// Builds and closes the group in one step.
    pub fn closed(field: Arc<CmField>, dim: usize, generators: Vec<CmMatrix>, cap: usize) -> Result<Self> {
        let mut g = Self::new(field, dim, generators)?;
        g.close(cap)?;
        Ok(g)
    }

    pub fn field(&self) -> &Arc<CmField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CmMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[CmMatrix]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn close(&mut self, cap: usize) -> Result<&[CmMatrix]> {
        if self.elements.is_none() {
            self.elements = Some(closure(&self.field, self.dim, &self.generators, cap)?);
        }
        Ok(self.elements.as_deref().expect("just closed"))
    }
}

/// Breadth-first closure of `generators` under right multiplication,
/// starting from the identity.
pub fn closure(field: &CmField, dim: usize, generators: &[CmMatrix], cap: usize) -> Result<Vec<CmMatrix>> {
    let id = linalg::identity(field, dim);
    let mut seen: HashSet<CmMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = linalg::mul(field, &x, g);
            if seen.contains(&y) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            seen.insert(y.clone());
            order.push(y.clone());
            queue.push_back(y);
        }
    }
    Ok(order)
}

/// `H_G = Σ_g gᴴ·seed·g` over the closed group; verified invariant and
/// positive definite at every embedding.
pub fn average_form(group: &MatrixGroup, seed: Option<&HermitianForm>) -> Result<HermitianForm> {
    let field = &group.field;
    let elements = group
        .elements()
        .ok_or_else(|| Error::InvalidParameter("group has not been closed".into()))?;
    let seed = match seed {
        Some(s) => {
            if !s.field().same_field(field) {
                return Err(Error::FieldMismatch);
            }
            if s.dim() != group.dim {
                return Err(Error::DimensionMismatch("seed form has wrong size".into()));
            }
            if !s.is_positive_definite() {
                return Err(Error::InvalidParameter("seed form is not positive definite".into()));
            }
            s.entries().clone()
        }
        None => linalg::identity(&**field, group.dim),
    };
    let mut sum = linalg::zeros(&**field, group.dim, group.dim);
    for g in elements {
        sum = linalg::add(&**field, &sum, &linalg::congruence(&**field, &seed, g));
    }
    let h = HermitianForm::new(field.clone(), sum)?;
    if let Some(g) = elements.iter().find(|g| !h.is_invariant_under(g)) {
        return Err(Error::NotAGroup(format!(
            "averaged form is not invariant under {:?}; the element list is not closed",
            g.to_rows()
        )));
    }
    if !h.is_positive_definite() {
        return Err(Error::InvariantViolation("averaged form is not positive definite".into()));
    }
    Ok(h)
}

/// Every element satisfies `gᴴg = I`.
pub fn all_unitary(field: &CmField, elements: &[CmMatrix]) -> bool {
    elements.iter().all(|g| {
        let gg = linalg::mul(field, &linalg::adjoint(field, g), g);
        linalg::is_identity(field, &gg)
    })
}
