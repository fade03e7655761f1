//! The five-letter alphabet and tensor words.
//!
//! A word `w1 w2 ... wk` names the Kronecker product `w1 ⊗ w2 ⊗ ... ⊗ wk`,
//! with the first letter acting on the most significant index bit.  Word
//! positions are zero-based in this API; the "slot" numbers
//! reported by the LLE module are one-based.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::WordError;
use crate::matrix::{OpMatrix, RationalMatrix};
use crate::operator::OperatorPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    A,
    I,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairRelation {
    Commute,
    Anticommute,
    Neither,
}

impl Letter {
    pub const CONSTANT: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::A];

    pub fn from_char(c: char) -> Result<Letter, WordError> {
        match c {
            'X' => Ok(Letter::X),
            'Y' => Ok(Letter::Y),
            'A' => Ok(Letter::A),
            'I' => Ok(Letter::I),
            'Q' => Ok(Letter::Q),
            other => Err(WordError::UnknownLetter(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::A => 'A',
            Letter::I => 'I',
            Letter::Q => 'Q',
        }
    }

    pub fn is_constant(self) -> bool {
        self != Letter::Q
    }

    /// Block-antidiagonal letters.
    pub fn is_off_diagonal(self) -> bool {
        matches!(self, Letter::Y | Letter::A | Letter::Q)
    }

    /// The 2x2 matrix; `Q` carries `i*dt` in its lower-left entry.
    pub fn matrix(self) -> OpMatrix {
        let (a, b, c, d) = match self {
            Letter::X => (1, 0, 0, -1),
            Letter::Y => (0, 1, 1, 0),
            Letter::A => (0, 1, -1, 0),
            Letter::I => (1, 0, 0, 1),
            Letter::Q => {
                let idt = &OperatorPoly::i() * &OperatorPoly::dt();
                return OpMatrix::from_entries(
                    2,
                    vec![OperatorPoly::zero(), OperatorPoly::one(), idt, OperatorPoly::zero()],
                )
                .expect("2x2");
            }
        };
        OpMatrix::from_entries(2, [a, b, c, d].into_iter().map(OperatorPoly::int).collect())
            .expect("2x2")
    }

    /// `+1` or `-1` for constant letters; `None` for `Q` (whose square is `i*dt`).
    pub fn square_sign(self) -> Option<i8> {
        match self {
            Letter::A => Some(-1),
            Letter::Q => None,
            _ => Some(1),
        }
    }

    /// Slotwise relation of two letters.
    pub fn relation(self, other: Letter) -> PairRelation {
        use Letter::*;
        match (self, other) {
            (a, b) if a == b => PairRelation::Commute,
            (I, _) | (_, I) => PairRelation::Commute,
            (Q, X) | (X, Q) => PairRelation::Anticommute,
            (Q, _) | (_, Q) => PairRelation::Neither,
            _ => PairRelation::Anticommute,
        }
    }

    /// Product of two constant letters as `(sign, letter)`.
    pub fn mul(self, other: Letter) -> Option<(i8, Letter)> {
        use Letter::*;
        Some(match (self, other) {
            (Q, _) | (_, Q) => return None,
            (I, l) | (l, I) => (1, l),
            (X, X) | (Y, Y) => (1, I),
            (A, A) => (-1, I),
            (X, Y) => (1, A),
            (Y, X) => (-1, A),
            (X, A) => (1, Y),
            (A, X) => (-1, Y),
            (Y, A) => (-1, X),
            (A, Y) => (1, X),
        })
    }

    fn signed_perm(self) -> Option<SignedPerm> {
        let (perm, sign) = match self {
            Letter::X => ([0, 1], [1, -1]),
            Letter::Y => ([1, 0], [1, 1]),
            Letter::A => ([1, 0], [1, -1]),
            Letter::I => ([0, 1], [1, 1]),
            Letter::Q => return None,
        };
        Some(SignedPerm {
            perm: perm.to_vec(),
            sign: sign.to_vec(),
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A well-formed word: nonempty, at most one `Q`, and `Q` only in the first
/// position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        if letters.iter().skip(1).any(|l| *l == Letter::Q) {
            return Err(WordError::MisplacedQ {
                word: letters.iter().map(|l| l.as_char()).collect(),
            });
        }
        Ok(Word { letters })
    }

    /// Identity word `I...I` of length `len` (at least 1).
    pub fn identity(len: usize) -> Word {
        assert!(len > 0, "identity word needs a positive length");
        Word {
            letters: vec![Letter::I; len],
        }
    }

    /// All `4^len` constant words, in lexicographic order over `I, X, Y, A`.
    pub fn all_constant(len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Letter>| {
                    Letter::CONSTANT.iter().map(move |l| {
                        let mut w = prefix.clone();
                        w.push(*l);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|letters| Word { letters }).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn dim(&self) -> usize {
        1 << self.letters.len()
    }

    pub fn letter(&self, pos: usize) -> Letter {
        self.letters[pos]
    }

    pub fn has_q(&self) -> bool {
        self.letters[0] == Letter::Q
    }

    pub fn is_constant(&self) -> bool {
        !self.has_q()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|l| *l == Letter::I)
    }

    pub fn require_constant(&self) -> Result<(), WordError> {
        if self.has_q() {
            Err(WordError::NotConstant(self.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn matrix(&self) -> OpMatrix {
        let mut iter = self.letters.iter();
        let first = iter.next().expect("nonempty").matrix();
        iter.fold(first, |acc, l| acc.tensor(&l.matrix()))
    }

    pub fn signed_perm(&self) -> Result<SignedPerm, WordError> {
        self.require_constant()?;
        let mut iter = self.letters.iter();
        let first = iter.next().and_then(|l| l.signed_perm()).expect("constant");
        Ok(iter.fold(first, |acc, l| acc.kron(&l.signed_perm().expect("constant"))))
    }

    pub fn rational_matrix(&self) -> Result<RationalMatrix, WordError> {
        Ok(self.signed_perm()?.to_dense())
    }

    pub fn square_sign(&self) -> Result<i8, WordError> {
        self.require_constant()?;
        Ok(self
            .letters
            .iter()
            .map(|l| l.square_sign().expect("constant"))
            .product())
    }

    /// Slotwise product of two constant words, `(sign, word)`.
    pub fn mul(&self, other: &Word) -> Result<(i8, Word), WordError> {
        self.check_len(other)?;
        self.require_constant()?;
        other.require_constant()?;
        let mut sign = 1;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(a, b)| {
                let (s, l) = a.mul(*b).expect("constant");
                sign *= s;
                l
            })
            .collect();
        Ok((sign, Word { letters }))
    }

    fn check_len(&self, other: &Word) -> Result<(), WordError> {
        if self.len() != other.len() {
            return Err(WordError::LengthMismatch(
                self.to_string(),
                self.len(),
                other.to_string(),
                other.len(),
            ));
        }
        Ok(())
    }

    pub fn with_letter(&self, pos: usize, l: Letter) -> Result<Word, WordError> {
        let mut letters = self.letters.clone();
        letters[pos] = l;
        Word::new(letters)
    }

    pub fn with_inserted(&self, pos: usize, l: Letter) -> Result<Word, WordError> {
        let mut letters = self.letters.clone();
        letters.insert(pos, l);
        Word::new(letters)
    }

    pub fn with_removed(&self, pos: usize) -> Result<Word, WordError> {
        let mut letters = self.letters.clone();
        letters.remove(pos);
        Word::new(letters)
    }
}

/// Slotwise relation of two words of equal length.
pub fn pair_relation(u: &Word, v: &Word) -> Result<PairRelation, WordError> {
    u.check_len(v)?;
    let mut anti = false;
    for (a, b) in u.letters.iter().zip(&v.letters) {
        match a.relation(*b) {
            PairRelation::Neither => return Ok(PairRelation::Neither),
            PairRelation::Anticommute => anti = !anti,
            PairRelation::Commute => {}
        }
    }
    Ok(if anti {
        PairRelation::Anticommute
    } else {
        PairRelation::Commute
    })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Word, WordError> {
        let letters = s
            .trim()
            .chars()
            .map(Letter::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Signed permutation matrix: row `i` has its single nonzero entry
/// `sign[i]` in column `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            perm: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn column(&self, row: usize) -> usize {
        self.perm[row]
    }

    pub fn sign(&self, row: usize) -> i8 {
        self.sign[row]
    }

    pub fn kron(&self, other: &SignedPerm) -> SignedPerm {
        let m = other.dim();
        let n = self.dim() * m;
        let mut perm = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        for i in 0..self.dim() {
            for k in 0..m {
                perm.push(self.perm[i] * m + other.perm[k]);
                sign.push(self.sign[i] * other.sign[k]);
            }
        }
        SignedPerm { perm, sign }
    }

    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(self.dim(), other.dim());
        let (perm, sign) = (0..self.dim())
            .map(|i| {
                let j = self.perm[i];
                (other.perm[j], self.sign[i] * other.sign[j])
            })
            .unzip();
        SignedPerm { perm, sign }
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let n = self.dim();
        RationalMatrix::from_fn(n, |i, j| {
            if self.perm[i] == j {
                BigRational::from_integer(self.sign[i].into())
            } else {
                BigRational::zero()
            }
        })
    }

    /// Frobenius pairing `sum_ij self_ij * m_ij`.
    pub fn pair_with(&self, m: &RationalMatrix) -> BigRational {
        (0..self.dim()).fold(BigRational::zero(), |acc, i| {
            let v = m.get(i, self.perm[i]);
            if self.sign[i] > 0 {
                acc + v
            } else {
                acc - v
            }
        })
    }
}

/// Expansion of a real `2^k x 2^k` matrix in the constant-word basis.  Words
/// are mutually orthogonal under the Frobenius pairing with norm `2^k`, so
/// each coefficient is a single pairing.
pub fn decompose(m: &RationalMatrix) -> Result<Vec<(BigRational, Word)>, WordError> {
    let n = m.dim();
    if n < 2 || !n.is_power_of_two() {
        return Err(WordError::Empty);
    }
    let len = n.trailing_zeros() as usize;
    let norm = BigRational::from_integer(n.into());
    let mut out = Vec::new();
    for w in Word::all_constant(len) {
        let c = w.signed_perm()?.pair_with(m);
        if !c.is_zero() {
            out.push((c / &norm, w));
        }
    }
    Ok(out)
}

/// Renders a word expansion such as `IIA` or `1/2*IIX - IIY`.
pub fn render_expansion(terms: &[(BigRational, Word)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let pieces: Vec<(bool, String)> = terms
        .iter()
        .map(|(c, w)| {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = if mag.is_one() {
                w.to_string()
            } else {
                format!("{}*{}", crate::scalar::fmt_rational(&mag), w)
            };
            (neg, body)
        })
        .collect();
    crate::scalar::join_signed(&pieces)
}
