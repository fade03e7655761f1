//! Spinor classification of free equations.
//!
//! The commutant of the bare word system is in general much larger than the
//! division algebra of the spinor: a `d`-dimensional equation built from
//! `n x n` words leaves room for every space-like generator it does not use.
//! The classification therefore works on the ambient Clifford system: the
//! reference tower set of the same word length (or a named alternative)
//! with the unused space-like generators removed.  Chiral equations are
//! first reduced to their half system by deleting the Weyl slot.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use super::LleSpec;
use crate::clifford::{named_set, tower, CliffordSet};
use crate::error::{LleError, StructureError};
use crate::structure::{classify_division_algebra, commutant_of_words, DivisionAlgebra, DivisionAlgebraTag, Witness};
use crate::word::{Letter, Word};

/// Alternative reference sets tried after the tower set, by word length.
const ALTERNATIVES: [(usize, &str); 1] = [(3, "Cl(4,3)-set2")];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpinorType {
    M,
    MW,
    D,
    W,
    H,
    /// Chiral quaternionic; absent from the catalog but reachable from user input.
    HW,
}

impl SpinorType {
    pub fn from_parts(tag: DivisionAlgebraTag, chiral: bool) -> SpinorType {
        match (tag, chiral) {
            (DivisionAlgebraTag::R, false) => SpinorType::M,
            (DivisionAlgebraTag::R, true) => SpinorType::MW,
            (DivisionAlgebraTag::C, false) => SpinorType::D,
            (DivisionAlgebraTag::C, true) => SpinorType::W,
            (DivisionAlgebraTag::H, false) => SpinorType::H,
            (DivisionAlgebraTag::H, true) => SpinorType::HW,
        }
    }

    pub fn real_components(self, n: usize) -> usize {
        match self {
            SpinorType::M | SpinorType::D | SpinorType::H => n,
            SpinorType::MW | SpinorType::W | SpinorType::HW => n / 2,
        }
    }

    /// Component count as written in the classification table.
    pub fn component_label(self, n: usize) -> String {
        match self {
            SpinorType::M => format!("{n} real components"),
            SpinorType::MW => format!("{n}/2 = {} real components", n / 2),
            SpinorType::D => format!("{}_C ≡ {n} real components", n / 2),
            SpinorType::W => format!("{}_C ≡ {} real components", n / 4, n / 2),
            SpinorType::H => format!("{}_H ≡ {n} real components", n / 4),
            SpinorType::HW => format!("{}_H ≡ {} real components", n / 8, n / 2),
        }
    }
}

impl fmt::Display for SpinorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The system whose commutant decides the division algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSystem {
    pub words: Vec<Word>,
    /// Name of the reference set, or `None` for the bare-system fallback.
    pub reference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorClass {
    pub spinor_type: SpinorType,
    pub n: usize,
    pub d: usize,
    pub chiral: bool,
    /// One-based slot number.
    pub weyl_slot: Option<usize>,
    pub division_algebra: DivisionAlgebra,
    pub ambient: AmbientSystem,
    /// Witnesses lifted back to full length.
    pub witnesses: Vec<Witness>,
}

impl SpinorClass {
    pub fn real_components(&self) -> usize {
        self.spinor_type.real_components(self.n)
    }

    pub fn spacetime(&self) -> (usize, usize) {
        (1, self.d)
    }

    pub fn component_label(&self) -> String {
        self.spinor_type.component_label(self.n)
    }
}

/// Smallest one-based slot `j >= 2` where every word carries `Y` or `A`.
pub fn weyl_slot(spec: &LleSpec) -> Option<usize> {
    let words = spec.words();
    (1..spec.time_word().len())
        .find(|&pos| {
            words
                .iter()
                .all(|w| matches!(w.letter(pos), Letter::Y | Letter::A))
        })
        .map(|pos| pos + 1)
}

fn reference_sets(len: usize) -> Vec<(String, CliffordSet)> {
    let mut out = Vec::new();
    if let Ok(s) = tower(len) {
        out.push((format!("Cl({},{})", len + 1, len), s));
    }
    for (l, name) in ALTERNATIVES {
        if l == len {
            out.push((name.to_string(), named_set(name).expect("catalog set")));
        }
    }
    out
}

/// Ambient system of a (non-chiral) time word plus space words.
pub fn ambient_system(time: &Word, space: &[Word]) -> AmbientSystem {
    let len = time.len();
    let lead = Word::identity(len);
    let y_lead = lead.with_letter(0, Letter::Y).expect("valid");
    let time_ok = |set: &CliffordSet| {
        let (y, a) = (
            time.with_letter(0, Letter::Y).expect("valid"),
            time.with_letter(0, Letter::A).expect("valid"),
        );
        set.generators().contains(&y) && set.generators().contains(&a)
    };
    for (name, set) in reference_sets(len) {
        if !time_ok(&set) || !space.iter().all(|w| set.generators().contains(w)) {
            continue;
        }
        let words = set
            .generators()
            .iter()
            .filter(|g| g.square_sign() == Ok(-1) || **g == y_lead || space.contains(g))
            .cloned()
            .collect();
        return AmbientSystem {
            words,
            reference: Some(name),
        };
    }
    AmbientSystem {
        words: std::iter::once(time.clone()).chain(space.iter().cloned()).collect(),
        reference: None,
    }
}

fn lift(w: &Witness, pos: usize) -> Witness {
    let expansion: Vec<(BigRational, Word)> = w
        .expansion
        .iter()
        .map(|(c, word)| (c.clone(), word.with_inserted(pos, Letter::I).expect("constant word")))
        .collect();
    let n = 2 * w.matrix.dim();
    let mut matrix = crate::matrix::RationalMatrix::zeros(n);
    for (c, word) in &expansion {
        matrix = matrix.add(&word.rational_matrix().expect("constant").scale(c));
    }
    Witness { matrix, expansion }
}

pub fn classify(spec: &LleSpec) -> Result<SpinorClass, LleError> {
    if !spec.is_free() {
        return Err(LleError::HasPotential);
    }
    let slot = weyl_slot(spec);
    let (time, space) = match slot {
        Some(j) => (
            spec.time_word().with_removed(j - 1)?,
            spec.space_words()
                .iter()
                .map(|w| w.with_removed(j - 1))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => (spec.time_word().clone(), spec.space_words().to_vec()),
    };
    let ambient = ambient_system(&time, &space);
    let basis = commutant_of_words(&ambient.words)?;
    let algebra = classify_division_algebra(&basis).map_err(|e| match e {
        StructureError::UnsupportedDimension(d) if ambient.reference.is_none() => StructureError::Reducible(format!(
            "commutant dimension {d} of the bare system (no reference Clifford set contains its words)"
        )),
        other => other,
    })?;
    let witnesses = match slot {
        Some(j) => algebra.witnesses.iter().map(|w| lift(w, j - 1)).collect(),
        None => algebra.witnesses.clone(),
    };
    Ok(SpinorClass {
        spinor_type: SpinorType::from_parts(algebra.tag, slot.is_some()),
        n: spec.n(),
        d: spec.d(),
        chiral: slot.is_some(),
        weyl_slot: slot,
        division_algebra: algebra,
        ambient,
        witnesses,
    })
}
