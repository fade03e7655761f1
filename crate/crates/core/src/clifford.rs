//! Clifford generator sets in alphabetic form and the `(p,q) -> (p+1,q+1)`
//! tower built from the three single-letter words.

use std::fmt;

use serde::Serialize;

use crate::error::CliffordError;
use crate::word::{pair_relation, Letter, PairRelation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordSet {
    generators: Vec<Word>,
    signature: Signature,
}

/// One relation of `{g_i, g_j} = 2 eta_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub left: Word,
    pub right: Word,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordReport {
    pub signature: Signature,
    pub checks: Vec<RelationCheck>,
}

impl CliffordReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const CATALOG_NAMES: [&str; 4] = ["Cl(2,1)", "Cl(3,2)", "Cl(4,3)-set1", "Cl(4,3)-set2"];

impl CliffordSet {
    /// Checks only the shape (nonempty, constant words of one length, count
    /// equal to `p + q`); the algebra itself is checked by [`CliffordSet::verify`].
    pub fn new(generators: Vec<Word>, signature: Signature) -> Result<CliffordSet, CliffordError> {
        let first = generators.first().ok_or(CliffordError::Empty)?;
        if generators.iter().any(|g| g.len() != first.len()) {
            return Err(CliffordError::MixedLengths);
        }
        for g in &generators {
            g.require_constant()?;
        }
        if signature.p + signature.q != generators.len() {
            return Err(CliffordError::SignatureCount {
                p: signature.p,
                q: signature.q,
                count: generators.len(),
            });
        }
        Ok(CliffordSet {
            generators,
            signature,
        })
    }

    pub fn parse(words: &[&str], p: usize, q: usize) -> Result<CliffordSet, CliffordError> {
        let generators = words
            .iter()
            .map(|w| w.parse())
            .collect::<Result<Vec<Word>, _>>()?;
        CliffordSet::new(generators, Signature { p, q })
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn word_len(&self) -> usize {
        self.generators[0].len()
    }

    /// Generators squaring to `+1`.
    pub fn space_like(&self) -> Vec<Word> {
        self.by_square(1)
    }

    /// Generators squaring to `-1`.
    pub fn time_like(&self) -> Vec<Word> {
        self.by_square(-1)
    }

    fn by_square(&self, sign: i8) -> Vec<Word> {
        self.generators
            .iter()
            .filter(|g| g.square_sign() == Ok(sign))
            .cloned()
            .collect()
    }

    /// Checks all `(p+q)(p+q+1)/2` relations.  The metric entries are matched
    /// to generators in order: a generator squaring to `+1` takes one of the
    /// `p` positive entries, one squaring to `-1` one of the `q` negative
    /// entries; a generator left without a matching entry fails.
    pub fn verify(&self) -> CliffordReport {
        let mut checks = Vec::new();
        let (mut p_left, mut q_left) = (self.signature.p, self.signature.q);
        for g in &self.generators {
            let sign = g.square_sign().expect("constant generator");
            let slot = if sign > 0 { &mut p_left } else { &mut q_left };
            let passed = *slot > 0;
            if passed {
                *slot -= 1;
            }
            let sq = if sign > 0 { "+1" } else { "-1" };
            let detail = if passed {
                format!("{g}^2 = {sq}")
            } else {
                format!("{g}^2 = {sq}, but signature {} has no such entry left", self.signature)
            };
            checks.push(RelationCheck {
                left: g.clone(),
                right: g.clone(),
                passed,
                detail,
            });
        }
        for (i, u) in self.generators.iter().enumerate() {
            for v in &self.generators[i + 1..] {
                let rel = pair_relation(u, v).expect("equal lengths");
                let passed = rel == PairRelation::Anticommute;
                checks.push(RelationCheck {
                    left: u.clone(),
                    right: v.clone(),
                    passed,
                    detail: format!("{{{u}, {v}}}: {rel:?}"),
                });
            }
        }
        CliffordReport {
            signature: self.signature,
            checks,
        }
    }

    /// `Cl(p,q) -> Cl(p+1,q+1)`: prefix `X` to every generator, then append
    /// `Y I..I` and `A I..I`.
    pub fn extend(&self) -> Result<CliffordSet, CliffordError> {
        let report = self.verify();
        if let Some(bad) = report.failures().next() {
            return Err(CliffordError::Invalid(bad.detail.clone()));
        }
        let k = self.word_len();
        let mut generators: Vec<Word> = self
            .generators
            .iter()
            .map(|g| g.with_inserted(0, Letter::X))
            .collect::<Result<_, _>>()?;
        let tail = Word::identity(k);
        generators.push(tail.with_inserted(0, Letter::Y)?);
        generators.push(tail.with_inserted(0, Letter::A)?);
        CliffordSet::new(
            generators,
            Signature {
                p: self.signature.p + 1,
                q: self.signature.q + 1,
            },
        )
    }
}

impl fmt::Display for CliffordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.generators.iter().map(Word::to_string).collect();
        write!(f, "{{{}}} {}", words.join(", "), self.signature)
    }
}

/// `Cl(2,1) = {X, Y, A}`.
pub fn base_set() -> CliffordSet {
    CliffordSet::parse(&["X", "Y", "A"], 2, 1).expect("base set")
}

/// The tower set with words of length `len`, i.e. `Cl(len+1, len)`.
pub fn tower(len: usize) -> Result<CliffordSet, CliffordError> {
    if len == 0 {
        return Err(CliffordError::Empty);
    }
    let mut set = base_set();
    for _ in 1..len {
        set = set.extend()?;
    }
    Ok(set)
}

pub fn named_set(name: &str) -> Result<CliffordSet, CliffordError> {
    match name {
        "Cl(2,1)" => tower(1),
        "Cl(3,2)" => tower(2),
        "Cl(4,3)-set1" => tower(3),
        "Cl(4,3)-set2" => CliffordSet::parse(&["XYX", "XYY", "XYA", "XXI", "XAI", "YII", "AII"], 4, 3),
        other => Err(CliffordError::UnknownSet(other.to_string())),
    }
}
