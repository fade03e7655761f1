//! Commutants of constant matrix systems and their real division-algebra
//! type (Schur's lemma).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{StructureError, WordError};
use crate::linalg::{solve_in_span, RowReducer, SparseVec};
use crate::matrix::RationalMatrix;
use crate::word::{decompose, render_expansion, Letter, Word};

/// Basis of `{S : S g = g S for every input g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantBasis {
    n: usize,
    basis: Vec<RationalMatrix>,
}

fn flatten(m: &RationalMatrix) -> SparseVec<BigRational> {
    m.data()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.clone()))
        .collect()
}

fn unflatten(n: usize, v: &SparseVec<BigRational>) -> RationalMatrix {
    RationalMatrix::from_fn(n, |i, j| v.get(&(i * n + j)).cloned().unwrap_or_else(BigRational::zero))
}

/// Sort key putting the identity word first, then `I < X < Y < A` slotwise.
fn word_key(w: &Word) -> Vec<u8> {
    w.letters()
        .iter()
        .map(|l| match l {
            Letter::I => 0,
            Letter::X => 1,
            Letter::Y => 2,
            Letter::A => 3,
            Letter::Q => 4,
        })
        .collect()
}

impl CommutantBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// True when every basis element commutes with every matrix in `mats`.
    pub fn commutes_with_all(&self, mats: &[RationalMatrix]) -> bool {
        self.basis.iter().all(|b| mats.iter().all(|g| b.commutes_with(g)))
    }

    pub fn contains_identity(&self) -> bool {
        self.in_span(&RationalMatrix::identity(self.n)).is_some()
    }

    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn in_span(&self, m: &RationalMatrix) -> Option<Vec<BigRational>> {
        let cols: Vec<_> = self.basis.iter().map(flatten).collect();
        solve_in_span(&cols, &flatten(m))
    }

    /// Every pairwise product lies back in the span.
    pub fn is_closed(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| self.in_span(&a.mul(b)).is_some()))
    }

    /// Word expansion of each basis element.
    pub fn expansions(&self) -> Vec<Vec<(BigRational, Word)>> {
        self.basis
            .iter()
            .map(|b| decompose(b).expect("power-of-two basis"))
            .collect()
    }

    /// The commutant as a span of single words, when it is one.
    pub fn word_basis(&self) -> Option<Vec<Word>> {
        if self.n < 2 {
            return None;
        }
        let mut support: Vec<Word> = self
            .expansions()
            .into_iter()
            .flatten()
            .map(|(_, w)| w)
            .collect();
        support.sort_by_key(word_key);
        support.dedup();
        (support.len() == self.dim()).then_some(support)
    }
}

/// Solves `S g - g S = 0` for every `g` over the exact rationals.
pub fn commutant_basis(mats: &[RationalMatrix]) -> Result<CommutantBasis, StructureError> {
    let first = mats.first().ok_or(StructureError::EmptyInput)?;
    let n = first.dim();
    if let Some(bad) = mats.iter().find(|m| m.dim() != n) {
        return Err(crate::error::MatrixError::DimensionMismatch(n, bad.dim()).into());
    }
    let mut red: RowReducer<BigRational> = RowReducer::new();
    for g in mats {
        let mut col_nz: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); n];
        let mut row_nz: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let v = g.get(i, j);
                if !v.is_zero() {
                    col_nz[j].push((i, v.clone()));
                    row_nz[i].push((j, v.clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                // (S g)_ij - (g S)_ij
                let mut eq = SparseVec::new();
                for (k, v) in &col_nz[j] {
                    add_to(&mut eq, i * n + k, v.clone());
                }
                for (k, v) in &row_nz[i] {
                    add_to(&mut eq, k * n + j, -v.clone());
                }
                red.push(eq);
            }
        }
    }
    let basis: Vec<RationalMatrix> = red.nullspace(n * n).iter().map(|v| unflatten(n, v)).collect();
    let mut out = CommutantBasis { n, basis };
    if let Some(words) = out.word_basis() {
        out.basis = words
            .iter()
            .map(|w| w.rational_matrix().expect("constant word"))
            .collect();
    }
    debug_assert!(out.commutes_with_all(mats));
    Ok(out)
}

fn add_to(v: &mut SparseVec<BigRational>, k: usize, x: BigRational) {
    let e = v.entry(k).or_insert_with(BigRational::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&k);
    }
}

/// `Q W -> (Y W, A W)`.  A constant matrix commutes with the operator word
/// iff it commutes with both, because `Q = (Y+A)/2 + i dt (Y-A)/2`.
pub fn expand_time_word(w: &Word) -> Result<(Word, Word), StructureError> {
    if !w.has_q() {
        return Err(WordError::MissingQ(w.to_string()).into());
    }
    Ok((w.with_letter(0, Letter::Y)?, w.with_letter(0, Letter::A)?))
}

/// Commutant of a word system; `Q`-words are replaced by their two constant
/// expansions.
pub fn commutant_of_words(words: &[Word]) -> Result<CommutantBasis, StructureError> {
    let mut mats = Vec::new();
    for w in words {
        if w.has_q() {
            let (y, a) = expand_time_word(w)?;
            mats.push(y.rational_matrix()?);
            mats.push(a.rational_matrix()?);
        } else {
            mats.push(w.rational_matrix()?);
        }
    }
    if let Some(bad) = words.iter().find(|w| w.len() != words[0].len()) {
        return Err(WordError::LengthMismatch(
            words[0].to_string(),
            words[0].len(),
            bad.to_string(),
            bad.len(),
        )
        .into());
    }
    commutant_basis(&mats)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DivisionAlgebraTag {
    R,
    C,
    H,
}

impl fmt::Display for DivisionAlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A structure element together with its word expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub matrix: RationalMatrix,
    pub expansion: Vec<(BigRational, Word)>,
}

impl Witness {
    fn new(matrix: RationalMatrix) -> Witness {
        let expansion = decompose(&matrix).unwrap_or_default();
        Witness { matrix, expansion }
    }

    /// The word when the witness is exactly one word with coefficient one.
    pub fn word(&self) -> Option<&Word> {
        match self.expansion.as_slice() {
            [(c, w)] if c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        render_expansion(&self.expansion)
    }
}

/// `J_i J_j = sign * J_k`, one-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionProduct {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionAlgebra {
    pub tag: DivisionAlgebraTag,
    pub commutant_dim: usize,
    /// Empty for R, `[J]` for C, `[J1, J2, J3]` for H.
    pub witnesses: Vec<Witness>,
    /// Products of distinct witnesses (H only).
    pub products: Vec<QuaternionProduct>,
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    fn isqrt(n: &BigInt) -> Option<BigInt> {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    }
    if r.is_negative() {
        return None;
    }
    Some(BigRational::new(isqrt(r.numer())?, isqrt(r.denom())?))
}

/// `(uv + vu)/2` when it is a multiple of the identity.
fn sym_product(u: &RationalMatrix, v: &RationalMatrix) -> Option<BigRational> {
    let two = BigRational::from_integer(2.into());
    u.mul(v).add(&v.mul(u)).scale(&(BigRational::one() / two)).as_scalar_multiple()
}

/// Scales `j` (with `j^2 = c`, `c < 0`) so that its square is `-1`.
fn normalize(j: &RationalMatrix) -> Result<RationalMatrix, StructureError> {
    let c = sym_product(j, j).ok_or_else(|| {
        StructureError::Reducible("a traceless structure element does not square to a scalar".into())
    })?;
    if c.is_zero() {
        return Err(StructureError::Reducible("nilpotent structure element".into()));
    }
    if c.is_positive() {
        return Err(StructureError::Reducible(format!(
            "split: structure element squares to +{} (not a division algebra)",
            crate::scalar::fmt_rational(&c)
        )));
    }
    let s = rational_sqrt(&-c.clone())
        .ok_or_else(|| StructureError::NotNormalizable(crate::scalar::fmt_rational(&-c)))?;
    Ok(j.scale(&(BigRational::one() / s)))
}

pub fn classify_division_algebra(basis: &CommutantBasis) -> Result<DivisionAlgebra, StructureError> {
    let dim = basis.dim();
    if !matches!(dim, 1 | 2 | 4) {
        return Err(StructureError::UnsupportedDimension(dim));
    }
    if dim == 1 {
        return Ok(DivisionAlgebra {
            tag: DivisionAlgebraTag::R,
            commutant_dim: 1,
            witnesses: Vec::new(),
            products: Vec::new(),
        });
    }
    if !basis.contains_identity() {
        return Err(StructureError::Reducible("commutant does not contain the identity".into()));
    }
    let n = basis.n();
    let nq = BigRational::from_integer(n.into());
    let id = RationalMatrix::identity(n);
    let mut red = RowReducer::new();
    let mut traceless = Vec::new();
    for b in basis.basis() {
        let t = b.sub(&id.scale(&(b.trace() / &nq)));
        if red.push(flatten(&t)) {
            traceless.push(t);
        }
    }
    if dim == 2 {
        let t = &traceless[0];
        let sq = t.mul(t);
        let cols = vec![flatten(&id), flatten(t)];
        let coef = solve_in_span(&cols, &flatten(&sq))
            .ok_or_else(|| StructureError::Reducible("commutant is not closed under products".into()))?;
        let half = BigRational::new(1.into(), 2.into());
        let j0 = t.sub(&id.scale(&(&coef[1] * &half)));
        let j = normalize(&j0)?;
        return Ok(DivisionAlgebra {
            tag: DivisionAlgebraTag::C,
            commutant_dim: 2,
            witnesses: vec![Witness::new(j)],
            products: Vec::new(),
        });
    }
    // Gram-Schmidt against the form (uv + vu)/2 on the traceless part.
    let mut es: Vec<RationalMatrix> = Vec::new();
    for t in &traceless {
        let mut e = t.clone();
        for prev in &es {
            let num = sym_product(t, prev).ok_or_else(|| {
                StructureError::Reducible("anticommutator of structure elements is not scalar".into())
            })?;
            let den = sym_product(prev, prev).expect("normalized");
            e = e.sub(&prev.scale(&(num / den)));
        }
        es.push(normalize(&e)?);
    }
    let mut products = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let p = es[i].mul(&es[j]);
            let sign = if p == es[k] {
                1
            } else if p == es[k].scale(&-BigRational::one()) {
                -1
            } else {
                return Err(StructureError::Reducible(format!(
                    "J{}J{} is not +-J{}: not a quaternion algebra",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            };
            products.push(QuaternionProduct {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                sign,
            });
        }
    }
    Ok(DivisionAlgebra {
        tag: DivisionAlgebraTag::H,
        commutant_dim: 4,
        witnesses: es.into_iter().map(Witness::new).collect(),
        products,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|w| w.parse().unwrap()).collect()
    }

    #[test]
    fn base_set_is_real() {
        let b = commutant_of_words(&words(&["X", "Y", "A"])).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(classify_division_algebra(&b).unwrap().tag, DivisionAlgebraTag::R);
    }

    #[test]
    fn identity_input() {
        let b = commutant_of_words(&words(&["I"])).unwrap();
        assert_eq!(b.dim(), 4);
        assert!(b.is_closed());
        assert_eq!(commutant_basis(&[]), Err(StructureError::EmptyInput));
    }

    #[test]
    fn expansion_of_time_words() {
        let (y, a) = expand_time_word(&"QYI".parse().unwrap()).unwrap();
        assert_eq!((y.to_string(), a.to_string()), ("YYI".into(), "AYI".into()));
        assert!(expand_time_word(&"XYI".parse().unwrap()).is_err());
    }

    #[test]
    fn complex_structure() {
        // dropping the space-like words XXX, XXY from Cl(4,3)
        let b = commutant_of_words(&words(&["XXA", "XYI", "XAI", "YII", "AII"])).unwrap();
        let d = classify_division_algebra(&b).unwrap();
        assert_eq!(d.tag, DivisionAlgebraTag::C);
        assert_eq!(d.witnesses[0].word().map(Word::to_string), Some("IIA".into()));
    }

    #[test]
    fn split_and_unsupported() {
        // I and IX: the traceless element squares to +1
        let b = commutant_of_words(&words(&["XI", "IX", "YI", "AI"])).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(matches!(classify_division_algebra(&b), Err(StructureError::Reducible(_))));
        let b = commutant_of_words(&words(&["XI"])).unwrap();
        assert_eq!(classify_division_algebra(&b), Err(StructureError::UnsupportedDimension(8)));
    }

    #[test]
    fn normalization_needs_rational_root() {
        assert_eq!(rational_sqrt(&BigRational::new(9.into(), 4.into())), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(rational_sqrt(&BigRational::from_integer(2.into())), None);
    }
}
