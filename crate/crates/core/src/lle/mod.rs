//! Levy-Leblond equations `T psi = sum_k S_k d_k psi (+ sum_j P_j f_j psi)`
//! and their verification and classification.

mod catalog;
mod classify;
mod config;
mod dispersion;
mod verify;

pub use catalog::{
    catalog, catalog_entry, compare_table, generate_table, golden_rows, verify_catalog, TableMismatch,
    TableRow, CATALOG_KEYS, GOLDEN_TABLE,
};
pub use classify::{ambient_system, classify, weyl_slot, AmbientSystem, SpinorClass, SpinorType};
pub use config::{parse_config, LleConfig, PotentialConfig};
pub use dispersion::{dispersion_check, symbol_determinant, symbol_matrix};
pub use verify::{schrodinger_operator, verify_square_root, Check, VerificationReport};

use crate::error::{LleError, WordError};
use crate::matrix::OpMatrix;
use crate::operator::OperatorPoly;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialTerm {
    pub word: Word,
    pub function: OperatorPoly,
}

/// One Levy-Leblond equation.  Construction checks structure only (lengths,
/// `Q` placement, constant space words, potential terms being functions);
/// the algebraic conditions are reported by [`verify_square_root`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LleSpec {
    name: String,
    time_word: Word,
    space_words: Vec<Word>,
    potential: Vec<PotentialTerm>,
}

impl LleSpec {
    pub fn new(
        name: impl Into<String>,
        time_word: Word,
        space_words: Vec<Word>,
        potential: Vec<PotentialTerm>,
    ) -> Result<LleSpec, LleError> {
        if !time_word.has_q() {
            return Err(WordError::MissingQ(time_word.to_string()).into());
        }
        if space_words.is_empty() {
            return Err(LleError::Invalid("at least one space word is required".into()));
        }
        let len = time_word.len();
        for w in space_words.iter().chain(potential.iter().map(|p| &p.word)) {
            if w.len() != len {
                return Err(WordError::LengthMismatch(time_word.to_string(), len, w.to_string(), w.len()).into());
            }
            w.require_constant()?;
        }
        for p in &potential {
            if !p.function.is_function() || p.function.mentions_t() {
                return Err(LleError::Invalid(format!(
                    "potential term `{}` must be a function of x only",
                    p.function
                )));
            }
        }
        Ok(LleSpec {
            name: name.into(),
            time_word,
            space_words,
            potential,
        })
    }

    /// Free equation from word strings.
    pub fn free(name: &str, time: &str, space: &[&str]) -> Result<LleSpec, LleError> {
        let time_word = time.parse()?;
        let space_words = space.iter().map(|w| w.parse()).collect::<Result<Vec<Word>, _>>()?;
        LleSpec::new(name, time_word, space_words, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn time_word(&self) -> &Word {
        &self.time_word
    }

    pub fn space_words(&self) -> &[Word] {
        &self.space_words
    }

    pub fn potential(&self) -> &[PotentialTerm] {
        &self.potential
    }

    pub fn is_free(&self) -> bool {
        self.potential.is_empty()
    }

    /// Matrix size `2^k`.
    pub fn n(&self) -> usize {
        self.time_word.dim()
    }

    /// Number of space dimensions.
    pub fn d(&self) -> usize {
        self.space_words.len()
    }

    /// Time word followed by the space words.
    pub fn words(&self) -> Vec<Word> {
        std::iter::once(self.time_word.clone())
            .chain(self.space_words.iter().cloned())
            .collect()
    }

    /// `D = T - sum_k S_k d_k - sum_j P_j f_j`; the equation is `D psi = 0`.
    pub fn build_operator(&self) -> OpMatrix {
        let mut d = self.time_word.matrix();
        for (k, s) in self.space_words.iter().enumerate() {
            d = &d - &s.matrix().scale(&OperatorPoly::d(k));
        }
        for p in &self.potential {
            d = &d - &p.word.matrix().scale(&p.function);
        }
        d
    }
}

impl std::fmt::Display for LleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dirs: Vec<String> = self
            .space_words
            .iter()
            .enumerate()
            .map(|(k, w)| format!("{w}*d{}", crate::grammar::coord_name(k)))
            .collect();
        write!(f, "{} psi = ({}", self.time_word, dirs.join(" + "))?;
        for p in &self.potential {
            write!(f, " + {}*({})", p.word, p.function)?;
        }
        write!(f, ") psi")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_operator() {
        let spec = LleSpec::free("eq6", "Q", &["X"]).unwrap();
        let d = spec.build_operator();
        let expected = &"Q".parse::<Word>().unwrap().matrix() - &"X".parse::<Word>().unwrap().matrix().scale(&OperatorPoly::dx());
        assert_eq!(d, expected);
        assert_eq!(spec.to_string(), "Q psi = (X*dx) psi");
    }

    #[test]
    fn structural_validation() {
        assert!(matches!(LleSpec::free("e", "XI", &["XX"]), Err(LleError::Word(WordError::MissingQ(_)))));
        assert!(matches!(LleSpec::free("e", "QI", &["XXX"]), Err(LleError::Word(WordError::LengthMismatch(..)))));
        assert!(LleSpec::free("e", "QI", &[]).is_err());
        let bad = PotentialTerm {
            word: "XA".parse().unwrap(),
            function: OperatorPoly::dx(),
        };
        assert!(LleSpec::new("e", "QI".parse().unwrap(), vec!["XY".parse().unwrap()], vec![bad]).is_err());
    }
}
