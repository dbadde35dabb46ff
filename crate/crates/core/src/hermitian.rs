//! Hermitian forms over a CM field `E/F`.
//!
//! Signatures are read off the characteristic polynomial, whose coefficients
//! lie in `F`: a hermitian matrix has only real eigenvalues, so Descartes'
//! rule counts the positive ones exactly at every real embedding. The
//! determinant class lives in `F^×/N(E^×)`; that quotient is never built,
//! only pairwise class equality is decided through [`is_norm`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::{self, Place};
use crate::linalg;
use crate::numfield::{for_each_shell_vector, CmElem, CmField, RealElem, Sign};
use crate::poly::sign_variations;
use crate::ring::{Conjugation, Field, Ring};
use crate::roots::rational_sqrt;
use crate::{CmMatrix, Rational};

/// Default number of candidates tried by the norm witness search.
pub const DEFAULT_NORM_BUDGET: u64 = 10_000;

/// `(e₊, e₋)` at one embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignaturePair {
    pub positive: usize,
    pub negative: usize,
}

impl SignaturePair {
    /// `|e₊ − e₋|`.
    pub fn signature(&self) -> usize {
        self.positive.abs_diff(self.negative)
    }
}

impl fmt::Display for SignaturePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// Signature pairs at every embedding, embedding 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignatureProfile(pub Vec<SignaturePair>);

impl SignatureProfile {
    pub fn signatures(&self) -> Vec<usize> {
        self.0.iter().map(SignaturePair::signature).collect()
    }
}

/// `Inv(H) = (dim, signatures, det class)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariant {
    pub dim: usize,
    pub signatures: SignatureProfile,
    /// A representative of `det H` in `F^×/N(E^×)`.
    pub det_class: RealElem,
}

/// Where a norm equation fails locally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormObstruction {
    /// Negative at a real embedding of `F`, while norms are totally positive.
    RealEmbedding(usize),
    /// Nontrivial Hilbert symbol at a rational prime (only for `F = Q`).
    Prime(BigInt),
}

impl fmt::Display for NormObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormObstruction::RealEmbedding(l) => write!(f, "real embedding {l}"),
            NormObstruction::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormResidueVerdict {
    /// `witness`, when present, has relative norm exactly the queried value.
    IsNorm { witness: Option<CmElem> },
    IsNotNorm { obstruction: NormObstruction },
    Unknown,
}

impl NormResidueVerdict {
    pub fn is_norm(&self) -> bool {
        matches!(self, NormResidueVerdict::IsNorm { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Unknown,
}

/// A nondegenerate hermitian matrix over a CM field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    field: Arc<CmField>,
    entries: CmMatrix,
}

impl HermitianForm {
    pub fn new(field: Arc<CmField>, entries: CmMatrix) -> Result<Self> {
        if !entries.is_square() || entries.rows() == 0 {
            return Err(Error::DimensionMismatch(
                "a form needs a nonempty square matrix".into(),
            ));
        }
        let e = &*field;
        for i in 0..entries.rows() {
            for j in i..entries.cols() {
                if *entries.get(i, j) != e.conj(entries.get(j, i)) {
                    return Err(Error::NotHermitian { row: i, col: j });
                }
            }
        }
        if linalg::det(e, &entries).is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(HermitianForm { field, entries })
    }

    /// Diagonal form with entries in `F`.
    pub fn diagonal(field: Arc<CmField>, entries: &[RealElem]) -> Result<Self> {
        let diag: Vec<CmElem> = entries.iter().map(|x| field.embed(x)).collect();
        let m = linalg::diag(&*field, &diag);
        Self::new(field, m)
    }

    /// Diagonal form with integer entries.
    pub fn diagonal_ints(field: Arc<CmField>, entries: &[i64]) -> Result<Self> {
        let diag: Vec<RealElem> = entries.iter().map(|&x| field.base().from_int(x)).collect();
        Self::diagonal(field, &diag)
    }

    pub fn identity(field: Arc<CmField>, n: usize) -> Self {
        let m = linalg::identity(&*field, n);
        HermitianForm { field, entries: m }
    }

    pub fn field(&self) -> &Arc<CmField> {
        &self.field
    }

    pub fn entries(&self) -> &CmMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    /// Determinant, an element of `F`.
    pub fn det(&self) -> RealElem {
        let d = linalg::det(&*self.field, &self.entries);
        debug_assert!(d.is_real(), "hermitian determinant is fixed by conjugation");
        d.re
    }

    /// Characteristic polynomial `det(xI − H)` with coefficients in `F`.
    pub fn char_poly(&self) -> Vec<RealElem> {
        linalg::char_poly(&*self.field, &self.entries)
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_real());
                c.re
            })
            .collect()
    }

    /// `(e₊, e₋)` at real embedding `embedding` by Descartes' rule.
    pub fn signature_at(&self, embedding: usize) -> SignaturePair {
        signature_from_char_poly(&self.field, &self.char_poly(), embedding)
    }

    pub fn signature_profile(&self) -> SignatureProfile {
        let cp = self.char_poly();
        SignatureProfile(
            (0..self.field.base().degree())
                .map(|l| signature_from_char_poly(&self.field, &cp, l))
                .collect(),
        )
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature_profile()
            .0
            .iter()
            .all(|p| p.negative == 0)
    }

    pub fn invariants(&self) -> FormInvariant {
        FormInvariant {
            dim: self.dim(),
            signatures: self.signature_profile(),
            det_class: normalize_det_class(self.field.base(), &self.det()),
        }
    }

    /// Signature `n − 2` at embedding 0 and `n` at every other embedding.
    pub fn is_admissible(&self) -> bool {
        let n = self.dim();
        let sigs = self.signature_profile().signatures();
        n >= 2
            && sigs[0] == n - 2
            && sigs[1..].iter().all(|&s| s == n)
    }

    pub fn direct_sum(&self, other: &HermitianForm) -> Result<HermitianForm> {
        if !self.field.same_field(&other.field) {
            return Err(Error::FieldMismatch);
        }
        let m = linalg::block_diag(&*self.field, &[&self.entries, &other.entries]);
        Ok(HermitianForm {
            field: self.field.clone(),
            entries: m,
        })
    }

    /// `Tᴴ·H·T` for an invertible `T`.
    pub fn congruent(&self, t: &CmMatrix) -> Result<HermitianForm> {
        if t.rows() != self.dim() || !t.is_square() {
            return Err(Error::DimensionMismatch("transform has wrong shape".into()));
        }
        HermitianForm::new(
            self.field.clone(),
            linalg::congruence(&*self.field, &self.entries, t),
        )
    }

    /// `gᴴ·H·g = H`.
    pub fn is_invariant_under(&self, g: &CmMatrix) -> bool {
        g.rows() == self.dim()
            && g.is_square()
            && linalg::congruence(&*self.field, &self.entries, g) == self.entries
    }

    /// Diagonal entries, when the matrix is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<RealElem>> {
        linalg::is_diagonal(&*self.field, &self.entries)
            .then(|| self.entries.diagonal().into_iter().map(|x| x.re).collect())
    }
}

fn signature_from_char_poly(field: &CmField, cp: &[RealElem], embedding: usize) -> SignaturePair {
    let base = field.base();
    let signs = cp.iter().map(|c| base.sign_at(c, embedding).to_i8());
    let positive = sign_variations(signs);
    SignaturePair {
        positive,
        negative: cp.len() - 1 - positive,
    }
}

/// Strips square factors from rational determinants; other values are kept.
fn normalize_det_class(base: &crate::numfield::TotallyRealField, d: &RealElem) -> RealElem {
    match d.as_rational() {
        Some(q) if !q.is_zero() => {
            base.from_rational(&Rational::from_integer(hilbert::squarefree_class(&q)))
        }
        _ => d.clone(),
    }
}

/// Bounded search for `x ∈ E` with `N(x) = d`: tries `y` with integer
/// coordinates and accepts when `N(y)/d` is the square `c²` of a rational,
/// returning `x = y/c`.
fn norm_witness_search(field: &CmField, d: &RealElem, budget: u64) -> Option<CmElem> {
    let base = field.base();
    let s = base.degree();
    let d_inv = base.inv(d)?;
    let mut tried = 0u64;
    let mut found = None;
    let mut k = 1i64;
    while tried < budget && found.is_none() {
        for_each_shell_vector(2 * s, k, |v| {
            tried += 1;
            let coords = v.iter().map(|&c| Rational::from_integer(c.into())).collect();
            let y = field.from_coords(coords).expect("2s coordinates");
            let ratio = base.mul(&field.relative_norm(&y), &d_inv);
            if let Some(c) = ratio.as_rational().and_then(|r| rational_sqrt(&r)) {
                let c_inv = field.from_rational(&c.recip());
                found = Some(field.mul(&y, &c_inv));
                return true;
            }
            tried >= budget
        });
        k += 1;
    }
    found
}

/// Is `d ∈ F^×` a relative norm from `E`?
///
/// Over `F = Q` the answer is decided by Hilbert symbols `(d, δ)_v`. Over a
/// larger `F` only the real-place obstruction is implemented; otherwise a
/// bounded witness search runs and its failure yields `Unknown`.
pub fn is_norm(field: &CmField, d: &RealElem, budget: u64) -> Result<NormResidueVerdict> {
    if d.is_zero() {
        return Err(Error::InvalidParameter("norm test of zero".into()));
    }
    let base = field.base();
    if let Some(l) = (0..base.degree()).find(|&l| base.sign_at(d, l) == Sign::Negative) {
        return Ok(NormResidueVerdict::IsNotNorm {
            obstruction: NormObstruction::RealEmbedding(l),
        });
    }
    if base.is_rational_field() {
        let dq = d.as_rational().expect("degree one");
        let delta = field.delta().as_rational().expect("degree one");
        if let Some(place) = hilbert::norm_obstruction(&dq, &delta) {
            let obstruction = match place {
                Place::Real => NormObstruction::RealEmbedding(0),
                Place::Prime(p) => NormObstruction::Prime(p),
            };
            return Ok(NormResidueVerdict::IsNotNorm { obstruction });
        }
        return Ok(NormResidueVerdict::IsNorm {
            witness: norm_witness_search(field, d, budget),
        });
    }
    Ok(match norm_witness_search(field, d, budget) {
        Some(w) => NormResidueVerdict::IsNorm { witness: Some(w) },
        None => NormResidueVerdict::Unknown,
    })
}

/// Decides equivalence by comparing `Inv(H₁)` and `Inv(H₂)`.
pub fn equivalent(h1: &HermitianForm, h2: &HermitianForm, budget: u64) -> Result<Equivalence> {
    if !h1.field.same_field(&h2.field) {
        return Err(Error::FieldMismatch);
    }
    if h1.dim() != h2.dim() || h1.signature_profile() != h2.signature_profile() {
        return Ok(Equivalence::NotEquivalent);
    }
    let base = h1.field.base();
    let ratio = base.div(&h1.det(), &h2.det()).expect("nondegenerate");
    Ok(match is_norm(&h1.field, &ratio, budget)? {
        NormResidueVerdict::IsNorm { .. } => Equivalence::Equivalent,
        NormResidueVerdict::IsNotNorm { .. } => Equivalence::NotEquivalent,
        NormResidueVerdict::Unknown => Equivalence::Unknown,
    })
}

/// `Ĥ = H_G ⊕ β·I₁` landing in the determinant class of the diagonal
/// admissible form `H′`.
///
/// `β` is the product of the diagonal of `H′`. When `det H_G` is not a norm,
/// `β` is further multiplied by `det H_G` so that `det Ĥ = det(H_G)²·∏α_j`;
/// `det H_G` is totally positive, so the sign pattern of `β` is unchanged.
pub fn twist_determinant(
    h_g: &HermitianForm,
    h_prime: &HermitianForm,
    budget: u64,
) -> Result<HermitianForm> {
    if !h_g.field.same_field(&h_prime.field) {
        return Err(Error::FieldMismatch);
    }
    if h_prime.dim() != h_g.dim() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "H' has dimension {}, expected {}",
            h_prime.dim(),
            h_g.dim() + 1
        )));
    }
    if !h_g.is_positive_definite() {
        return Err(Error::InvalidParameter(
            "H_G must be positive definite at every embedding".into(),
        ));
    }
    let diag = h_prime
        .diagonal_entries()
        .ok_or_else(|| Error::InvalidParameter("H' is not diagonal".into()))?;
    if !h_prime.is_admissible() {
        return Err(Error::NotAdmissible("H' is not admissible".into()));
    }
    let base = h_g.field.base();
    let field = &h_g.field;
    let product = diag.iter().fold(base.one(), |acc, x| base.mul(&acc, x));
    let det_g = h_g.det();
    let det_g_verdict = is_norm(field, &det_g, budget)?;
    let beta = if det_g_verdict.is_norm() {
        product
    } else {
        base.mul(&product, &det_g)
    };

    let expected = crate::numfield::SignPattern::admissible(base.degree());
    if base.signs(&beta) != expected.0 {
        return Err(Error::InvariantViolation(
            "twisting element has the wrong sign pattern".into(),
        ));
    }
    let hat = h_g.direct_sum(&HermitianForm::diagonal(field.clone(), &[beta])?)?;
    if !hat.is_admissible() {
        return Err(Error::InvariantViolation("twisted form is not admissible".into()));
    }
    // det Ĥ / det H′ is det H_G (a norm) or det(H_G)² (a square).
    let ratio = base.div(&hat.det(), &h_prime.det()).expect("nondegenerate");
    let certified = if det_g_verdict.is_norm() {
        ratio == det_g
    } else {
        ratio == base.mul(&det_g, &det_g)
    };
    if !certified {
        return Err(Error::InvariantViolation(
            "twisted determinant is not in the class of H'".into(),
        ));
    }
    Ok(hat)
}

impl CmField {
    /// Same `F` and `δ`, ignoring how the field was built.
    pub fn same_field(&self, other: &CmField) -> bool {
        self.base().min_poly() == other.base().min_poly() && self.delta() == other.delta()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::numfield::TotallyRealField;

    fn gaussian() -> Arc<CmField> {
        Arc::new(CmField::gaussian())
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// `Q(√2)(√−1)` over `Q(√2)`.
    fn sqrt2_cm() -> Arc<CmField> {
        let f = Arc::new(
            TotallyRealField::new(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)])
                .unwrap(),
        );
        let delta = f.from_int(-1);
        Arc::new(CmField::new(f, delta).unwrap())
    }

    #[test]
    fn signature_examples() {
        let e = gaussian();
        let h = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -1]).unwrap();
        assert_eq!(
            h.char_poly().iter().map(|c| c.as_rational().unwrap()).collect::<Vec<_>>(),
            vec![q(1), q(-1), q(-1), q(1)]
        );
        assert_eq!(h.signature_at(0), SignaturePair { positive: 2, negative: 1 });
        let id = HermitianForm::identity(e, 4);
        assert_eq!(id.signature_at(0), SignaturePair { positive: 4, negative: 0 });

        let e = sqrt2_cm();
        let one_minus_2sqrt2 = RealElem(vec![q(1), q(-2)]);
        let h = HermitianForm::diagonal(
            e.clone(),
            &[e.base().one(), e.base().one(), one_minus_2sqrt2],
        )
        .unwrap();
        assert_eq!(h.signature_at(0), SignaturePair { positive: 2, negative: 1 });
        assert_eq!(h.signature_at(1), SignaturePair { positive: 3, negative: 0 });
        assert!(h.is_admissible());
    }

    #[test]
    fn invariants_examples() {
        let e = gaussian();
        let inv = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -1])
            .unwrap()
            .invariants();
        assert_eq!(inv.dim, 3);
        assert_eq!(inv.signatures.signatures(), vec![1]);
        assert_eq!(inv.det_class.as_rational(), Some(q(-1)));

        let inv = HermitianForm::identity(e.clone(), 2).invariants();
        assert_eq!(inv.signatures.signatures(), vec![2]);
        assert_eq!(inv.det_class.as_rational(), Some(q(1)));

        let inv = HermitianForm::diagonal_ints(e, &[2, -3]).unwrap().invariants();
        assert_eq!(inv.signatures.signatures(), vec![0]);
        assert_eq!(inv.det_class.as_rational(), Some(q(-6)));
    }

    #[test]
    fn rejects_non_hermitian_and_degenerate() {
        let e = gaussian();
        let i = e.zeta().unwrap();
        let m = Matrix::from_rows(vec![vec![e.one(), i.clone()], vec![i, e.one()]]).unwrap();
        assert!(matches!(
            HermitianForm::new(e.clone(), m),
            Err(Error::NotHermitian { .. })
        ));
        assert_eq!(
            HermitianForm::diagonal_ints(e, &[1, 0]),
            Err(Error::DegenerateForm)
        );
    }

    #[test]
    fn is_norm_examples() {
        let e = gaussian();
        let f = e.base();
        match is_norm(&e, &f.from_int(5), DEFAULT_NORM_BUDGET).unwrap() {
            NormResidueVerdict::IsNorm { witness: Some(w) } => {
                assert_eq!(e.relative_norm(&w), f.from_int(5));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            is_norm(&e, &f.from_int(-1), DEFAULT_NORM_BUDGET).unwrap(),
            NormResidueVerdict::IsNotNorm {
                obstruction: NormObstruction::RealEmbedding(0)
            }
        );
        match is_norm(&e, &f.one(), DEFAULT_NORM_BUDGET).unwrap() {
            NormResidueVerdict::IsNorm { witness: Some(w) } => assert_eq!(w, e.one()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(is_norm(&e, &f.zero(), 10).is_err());
    }

    #[test]
    fn is_norm_over_real_quadratic_base() {
        let e = sqrt2_cm();
        // 1 - 2√2 is negative at embedding 0
        assert_eq!(
            is_norm(&e, &RealElem(vec![q(1), q(-2)]), 100).unwrap(),
            NormResidueVerdict::IsNotNorm {
                obstruction: NormObstruction::RealEmbedding(0)
            }
        );
        // 3 + 2√2 = (1 + √2)², a square
        match is_norm(&e, &RealElem(vec![q(3), q(2)]), 1000).unwrap() {
            NormResidueVerdict::IsNorm { witness: Some(w) } => {
                assert_eq!(e.relative_norm(&w), RealElem(vec![q(3), q(2)]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equivalence_examples() {
        let e = gaussian();
        let base = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -1]).unwrap();
        let perm = HermitianForm::diagonal_ints(e.clone(), &[1, -1, 1]).unwrap();
        let four = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -4]).unwrap();
        let three = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -3]).unwrap();
        let b = DEFAULT_NORM_BUDGET;
        assert_eq!(equivalent(&base, &perm, b).unwrap(), Equivalence::Equivalent);
        assert_eq!(equivalent(&base, &four, b).unwrap(), Equivalence::Equivalent);
        assert_eq!(equivalent(&base, &three, b).unwrap(), Equivalence::NotEquivalent);
        let other = HermitianForm::identity(sqrt2_cm(), 3);
        assert_eq!(equivalent(&base, &other, b), Err(Error::FieldMismatch));
    }

    #[test]
    fn admissibility_examples() {
        let e = gaussian();
        assert!(HermitianForm::diagonal_ints(e.clone(), &[1, 1, -1]).unwrap().is_admissible());
        assert!(!HermitianForm::identity(e, 3).is_admissible());
    }

    #[test]
    fn direct_sum_examples() {
        let e = gaussian();
        let s = HermitianForm::identity(e.clone(), 2)
            .direct_sum(&HermitianForm::diagonal_ints(e.clone(), &[-1]).unwrap())
            .unwrap();
        assert_eq!(s, HermitianForm::diagonal_ints(e.clone(), &[1, 1, -1]).unwrap());
        let s = HermitianForm::diagonal_ints(e.clone(), &[2])
            .unwrap()
            .direct_sum(&HermitianForm::diagonal_ints(e.clone(), &[-3]).unwrap())
            .unwrap();
        assert_eq!(s.det().as_rational(), Some(q(-6)));
    }

    #[test]
    fn twist_examples() {
        let e = gaussian();
        let b = DEFAULT_NORM_BUDGET;
        let i2 = HermitianForm::identity(e.clone(), 2);
        let h3 = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -3]).unwrap();
        let h1 = HermitianForm::diagonal_ints(e.clone(), &[1, 1, -1]).unwrap();

        let hat = twist_determinant(&i2, &h3, b).unwrap();
        assert_eq!(hat, h3);
        assert_eq!(equivalent(&hat, &h1, b).unwrap(), Equivalence::NotEquivalent);

        let hat = twist_determinant(&i2, &h1, b).unwrap();
        assert_eq!(equivalent(&hat, &h1, b).unwrap(), Equivalence::Equivalent);

        let hg = HermitianForm::diagonal_ints(e.clone(), &[2, 1]).unwrap();
        let hat = twist_determinant(&hg, &h3, b).unwrap();
        assert_eq!(hat, HermitianForm::diagonal_ints(e.clone(), &[2, 1, -3]).unwrap());
        assert!(hat.is_admissible());
        assert_eq!(equivalent(&hat, &h3, b).unwrap(), Equivalence::Equivalent);

        // det H_G = 3 is not a norm from Q(i); β absorbs it.
        let hg = HermitianForm::diagonal_ints(e.clone(), &[3, 1]).unwrap();
        let hat = twist_determinant(&hg, &h3, b).unwrap();
        assert_eq!(hat, HermitianForm::diagonal_ints(e.clone(), &[3, 1, -9]).unwrap());
        assert_eq!(equivalent(&hat, &h3, b).unwrap(), Equivalence::Equivalent);

        // H' not diagonal / not admissible
        assert!(twist_determinant(&i2, &HermitianForm::identity(e.clone(), 3), b).is_err());
        let non_diag = {
            let m = Matrix::from_rows(vec![
                vec![e.from_int(1), e.from_int(1), e.zero()],
                vec![e.from_int(1), e.from_int(2), e.zero()],
                vec![e.zero(), e.zero(), e.from_int(-1)],
            ])
            .unwrap();
            HermitianForm::new(e.clone(), m).unwrap()
        };
        assert!(twist_determinant(&i2, &non_diag, b).is_err());
    }
}
