use std::fmt;

use super::LleSpec;
use crate::error::LleError;
use crate::matrix::OpMatrix;
use crate::operator::OperatorPoly;
use crate::word::{pair_relation, PairRelation};

/// A single pass/fail entry.  Failing algebraic checks carry the nonzero
/// residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub residual: Option<OpMatrix>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            residual: None,
        }
    }

    /// Passes iff `residual` is zero; keeps the residual when it is not.
    pub fn residual(name: impl Into<String>, residual: OpMatrix) -> Check {
        let passed = residual.is_zero();
        Check {
            name: name.into(),
            passed,
            detail: if passed {
                "residual 0".into()
            } else {
                format!("residual {residual}")
            },
            residual: (!passed).then_some(residual),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> VerificationReport {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// `i*dt + sum_k dk^2` in `d` space dimensions.
pub fn schrodinger_operator(d: usize) -> OperatorPoly {
    let mut p = &OperatorPoly::i() * &OperatorPoly::dt();
    for k in 0..d {
        p += &OperatorPoly::d_pow(k, 2);
    }
    p
}

/// Checks that `D^2 = (i dt + sum dk^2) 1`, together with the square signs of
/// the space words and pairwise anticommutation that make it hold.
pub fn verify_square_root(spec: &LleSpec) -> Result<VerificationReport, LleError> {
    if !spec.is_free() {
        return Err(LleError::HasPotential);
    }
    let mut report = VerificationReport::new(spec.name());
    for w in spec.space_words() {
        let sign = w.square_sign()?;
        report.checks.push(Check::new(
            format!("{w}^2 = +1"),
            sign == 1,
            format!("{w}^2 = {}1", if sign == 1 { "+" } else { "-" }),
        ));
    }
    let words = spec.words();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            let rel = pair_relation(u, v)?;
            let name = format!("{{{u}, {v}}} = 0");
            let check = match rel {
                PairRelation::Anticommute => Check::new(name, true, "anticommute"),
                PairRelation::Commute => Check::new(name, false, "the words commute"),
                PairRelation::Neither => {
                    let ac = u.matrix().anticommutator(&v.matrix()).expect("equal sizes");
                    Check::residual(name, ac)
                }
            };
            report.checks.push(check);
        }
    }
    let d = spec.build_operator();
    let expected = OpMatrix::scalar_identity(spec.n(), &schrodinger_operator(spec.d()));
    let residual = &(&d * &d) - &expected;
    report
        .checks
        .push(Check::residual("D^2 = (i*dt + laplacian) 1", residual));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_square_root() {
        let spec = LleSpec::free("eq6", "Q", &["X"]).unwrap();
        let r = verify_square_root(&spec).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrupted_space_word_fails() {
        let spec = LleSpec::free("bad", "QII", &["XXX", "XXY", "YII"]).unwrap();
        let r = verify_square_root(&spec).unwrap();
        assert!(!r.passed());
        let c = r.check("D^2 = (i*dt + laplacian) 1").unwrap();
        assert!(!c.passed);
        assert!(c.residual.as_ref().is_some_and(|m| !m.is_zero()));
    }
}
