//! Abstract finite groups given by multiplication tables, their faithful
//! integral representations, and embedding them into the unitary group of
//! an admissible form `H_G ⊕ I ⊕ α`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{average_form, closure, Budgets, MatrixGroup};
use crate::hermitian::{equivalent, is_norm, twist_determinant, Equivalence, HermitianForm, NormResidueVerdict};
use crate::linalg::{self, Matrix};
use crate::numfield::{for_each_shell_vector, CmField, RealElem, SignPattern};
use crate::ring::{Field, Ring};
use crate::{CmMatrix, Rational};

/// A finite group on `0..order` with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, identity `0`, inverses and associativity.
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&c) = row.iter().find(|&&c| c >= n) {
                return Err(Error::NotAGroup(format!("entry {c} out of range")));
            }
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(Error::NotAGroup("0 is not the identity".into()));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mul[a][b] == 0)
                .ok_or_else(|| Error::NotAGroup(format!("{a} has no inverse")))?;
            if mul[b][a] != 0 {
                return Err(Error::NotAGroup(format!("{a} has no two-sided inverse")));
            }
            inverses.push(b);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(GroupTable { mul, inverses })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    /// The group generated by permutations of `0..degree`, elements listed in
    /// breadth-first order from the identity.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
                return Err(Error::NotAGroup(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id.clone(), 0)]);
        let mut elems = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&x, g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Self::new(mul)
    }

    /// `S_k` from a transposition and a `k`-cycle.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k <= 1 {
            return Ok(Self::trivial());
        }
        let mut swap: Vec<usize> = (0..k).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        Self::from_permutations(&[swap, cycle])
    }
}

fn int_mul(a: &Matrix<i64>, b: &Matrix<i64>) -> Matrix<i64> {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum())
}

/// A faithful homomorphism `G → GL(m; Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralRep {
    table: GroupTable,
    images: Vec<Matrix<i64>>,
}

impl IntegralRep {
    /// Checks `ρ(a)ρ(b) = ρ(ab)` on the whole table and that `ρ` is injective.
    pub fn new(table: GroupTable, images: Vec<Matrix<i64>>) -> Result<Self> {
        if images.len() != table.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a group of order {}",
                images.len(),
                table.order()
            )));
        }
        let m = images[0].rows();
        if images.iter().any(|g| g.rows() != m || g.cols() != m) {
            return Err(Error::DimensionMismatch("images have different sizes".into()));
        }
        let n = table.order();
        for a in 0..n {
            for b in 0..n {
                if int_mul(&images[a], &images[b]) != images[table.mul(a, b)] {
                    return Err(Error::NotAGroup(format!("ρ({a})ρ({b}) ≠ ρ({a}·{b})")));
                }
            }
        }
        for a in 1..n {
            if images[a] == images[0] {
                return Err(Error::NotAGroup(format!("element {a} is in the kernel")));
            }
        }
        Ok(IntegralRep { table, images })
    }

    pub fn dim(&self) -> usize {
        self.images[0].rows()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn images(&self) -> &[Matrix<i64>] {
        &self.images
    }
}

/// Left regular representation: `ρ(g)e_h = e_{gh}`.
pub fn regular_rep(table: &GroupTable) -> IntegralRep {
    let n = table.order();
    let images = (0..n)
        .map(|g| Matrix::from_fn(n, n, |i, j| i64::from(table.mul(g, j) == i)))
        .collect();
    IntegralRep::new(table.clone(), images).expect("regular representation is faithful")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassSelector {
    Default,
    Other,
}

#[derive(Debug, Clone)]
pub struct RegularEmbedding {
    pub form: HermitianForm,
    /// `ρ(g) ⊕ I` for every group element, in table order.
    pub images: Vec<CmMatrix>,
    /// The form built for [`ClassSelector::Default`].
    pub default_form: HermitianForm,
}

/// Embeds `rep` into `U(H)` for an admissible `H` of total dimension `n`.
///
/// The default form is `H_G ⊕ I_{n−1−m} ⊕ α` with `α` from weak
/// approximation (`−1` over `Q`). The other class replaces the last entry
/// through [`twist_determinant`] with a `γ` whose quotient by the default
/// determinant is certified not to be a norm.
pub fn regular_embed(
    rep: &IntegralRep,
    field: Arc<CmField>,
    n: usize,
    selector: ClassSelector,
    budgets: &Budgets,
) -> Result<RegularEmbedding> {
    let m = rep.dim();
    if n < m + 1 {
        return Err(Error::InvalidParameter(format!(
            "total dimension {n} leaves no room for the negative line of a degree-{m} representation"
        )));
    }
    let e = &*field;
    let base = e.base();
    let to_field = |g: &Matrix<i64>| g.map(|&x| e.from_int(x));
    let images: Vec<CmMatrix> = rep.images.iter().map(to_field).collect();

    let group = MatrixGroup::closed(field.clone(), m, images.clone(), budgets.closure_cap)?;
    if group.order() != Some(rep.table.order()) {
        return Err(Error::InvariantViolation("representation is not faithful over E".into()));
    }
    let h_g = average_form(&group, None)?;
    let positive = if n - 1 > m {
        h_g.direct_sum(&HermitianForm::identity(field.clone(), n - 1 - m))?
    } else {
        h_g
    };
    let admissible = SignPattern::admissible(base.degree());
    let alpha = base.weak_approx_find(&admissible, budgets.weak_approx)?;
    let default_form = positive.direct_sum(&HermitianForm::diagonal(field.clone(), &[alpha])?)?;

    let form = match selector {
        ClassSelector::Default => default_form.clone(),
        ClassSelector::Other => {
            let gamma = other_class_entry(e, &default_form.det(), &admissible, budgets)?;
            let mut diag = vec![base.one(); n - 1];
            diag.push(gamma);
            let h_prime = HermitianForm::diagonal(field.clone(), &diag)?;
            let hat = twist_determinant(&positive, &h_prime, budgets.norm)?;
            if equivalent(&hat, &default_form, budgets.norm)? != Equivalence::NotEquivalent {
                return Err(Error::InvariantViolation(
                    "twisted form did not leave the default class".into(),
                ));
            }
            hat
        }
    };

    if !form.is_admissible() {
        return Err(Error::InvariantViolation("embedded form is not admissible".into()));
    }
    let pad = linalg::identity(e, n - m);
    let extended: Vec<CmMatrix> = images.iter().map(|g| linalg::block_diag(e, &[g, &pad])).collect();
    if let Some(idx) = extended.iter().position(|g| !form.is_invariant_under(g)) {
        return Err(Error::InvariantViolation(format!("element {idx} does not preserve the form")));
    }
    let order = closure(e, n, &extended, budgets.closure_cap)?.len();
    if order != rep.table.order() {
        return Err(Error::InvariantViolation(format!(
            "extended representation has image of order {order}, expected {}",
            rep.table.order()
        )));
    }
    Ok(RegularEmbedding {
        form,
        images: extended,
        default_form,
    })
}

/// Smallest `γ` (by coordinate shells) with the admissible sign pattern and
/// `γ / det_default` certified not to be a norm.
fn other_class_entry(
    field: &CmField,
    det_default: &RealElem,
    admissible: &SignPattern,
    budgets: &Budgets,
) -> Result<RealElem> {
    let base = field.base();
    let det_inv = base.inv(det_default).expect("nondegenerate");
    let mut failure = None;
    for k in 1..=budgets.weak_approx as i64 {
        let mut found = None;
        for_each_shell_vector(base.degree(), k, |v| {
            let gamma = RealElem(v.iter().map(|&c| Rational::from_integer(c.into())).collect());
            if base.signs(&gamma) != admissible.0 {
                return false;
            }
            match is_norm(field, &base.mul(&gamma, &det_inv), budgets.norm) {
                Ok(NormResidueVerdict::IsNotNorm { .. }) => {
                    found = Some(gamma);
                    true
                }
                Ok(_) => false,
                Err(err) => {
                    failure = Some(err);
                    true
                }
            }
        });
        if let Some(err) = failure {
            return Err(err);
        }
        if let Some(gamma) = found {
            return Ok(gamma);
        }
    }
    Err(Error::UnknownClass(
        "no second determinant class could be certified with the implemented norm test".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::make_cyclotomic;

    fn gaussian() -> Arc<CmField> {
        Arc::new(CmField::gaussian())
    }

    #[test]
    fn table_validation() {
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(GroupTable::new(vec![]).is_err());
        assert_eq!(GroupTable::symmetric(3).unwrap().order(), 6);
        assert_eq!(GroupTable::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn regular_rep_examples() {
        let c2 = regular_rep(&GroupTable::cyclic(2).unwrap());
        let flip = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.images()[1], flip);
        let c3 = regular_rep(&GroupTable::cyclic(3).unwrap());
        assert_eq!(c3.dim(), 3);
        let s3 = regular_rep(&GroupTable::symmetric(3).unwrap());
        assert_eq!(s3.images().len(), 6);
        assert_eq!(s3.dim(), 6);
    }

    #[test]
    fn rep_rejects_non_homomorphism_and_kernel() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let one = Matrix::from_rows(vec![vec![1i64]]).unwrap();
        let two = Matrix::from_rows(vec![vec![2i64]]).unwrap();
        assert!(IntegralRep::new(c2.clone(), vec![one.clone(), two]).is_err());
        assert!(IntegralRep::new(c2, vec![one.clone(), one]).is_err());
    }

    fn sign_rep() -> IntegralRep {
        IntegralRep::new(
            GroupTable::cyclic(2).unwrap(),
            vec![
                Matrix::from_rows(vec![vec![1i64]]).unwrap(),
                Matrix::from_rows(vec![vec![-1i64]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn embed_examples() {
        let e = gaussian();
        let b = Budgets::default();
        let out = regular_embed(&sign_rep(), e.clone(), 2, ClassSelector::Default, &b).unwrap();
        assert_eq!(out.form, HermitianForm::diagonal_ints(e.clone(), &[2, -1]).unwrap());

        let s3 = regular_rep(&GroupTable::symmetric(3).unwrap());
        let out = regular_embed(&s3, e.clone(), 7, ClassSelector::Default, &b).unwrap();
        assert_eq!(
            out.form,
            HermitianForm::diagonal_ints(e.clone(), &[6, 6, 6, 6, 6, 6, -1]).unwrap()
        );

        let trivial = regular_rep(&GroupTable::trivial());
        let out = regular_embed(&trivial, e.clone(), 2, ClassSelector::Default, &b).unwrap();
        assert_eq!(out.form, HermitianForm::diagonal_ints(e.clone(), &[1, -1]).unwrap());

        assert!(regular_embed(&s3, e, 6, ClassSelector::Default, &b).is_err());
    }

    #[test]
    fn other_class() {
        let e = gaussian();
        let b = Budgets::default();
        let out = regular_embed(&sign_rep(), e.clone(), 2, ClassSelector::Other, &b).unwrap();
        assert_eq!(out.form, HermitianForm::diagonal_ints(e.clone(), &[2, -3]).unwrap());
        assert_eq!(
            equivalent(&out.form, &out.default_form, b.norm).unwrap(),
            Equivalence::NotEquivalent
        );

        let c3 = regular_rep(&GroupTable::cyclic(3).unwrap());
        let out = regular_embed(&c3, e, 5, ClassSelector::Other, &b).unwrap();
        assert!(out.form.is_admissible());
    }

    #[test]
    fn other_class_unknown_over_larger_base() {
        let e = Arc::new(make_cyclotomic(5).unwrap());
        let b = Budgets {
            weak_approx: 3,
            norm: 50,
            ..Budgets::default()
        };
        let trivial = regular_rep(&GroupTable::trivial());
        assert!(regular_embed(&trivial, e.clone(), 2, ClassSelector::Default, &b).is_ok());
        assert!(matches!(
            regular_embed(&trivial, e, 2, ClassSelector::Other, &b),
            Err(Error::UnknownClass(_))
        ));
    }
}
