//! The 4x4 equation with a prepotential: `QI psi = XY dx psi + XA f(x) psi`.

use std::fmt;

use crate::error::LleError;
use crate::lle::{Check, LleSpec, PotentialTerm, VerificationReport};
use crate::matrix::OpMatrix;
use crate::operator::{OperatorPoly, Var};
use crate::word::Word;

fn word(s: &str) -> Word {
    s.parse().expect("fixed word")
}

fn spec(f: &OperatorPoly) -> Result<LleSpec, LleError> {
    LleSpec::new(
        "susy",
        word("QI"),
        vec![word("XY")],
        vec![PotentialTerm {
            word: word("XA"),
            function: f.clone(),
        }],
    )
}

/// `D = QI - XY dx - XA f`.  Fails when `f` has derivatives or depends on `t`.
pub fn build_potential_operator(f: &OperatorPoly) -> Result<OpMatrix, LleError> {
    Ok(spec(f)?.build_operator())
}

pub fn square_potential_operator(f: &OperatorPoly) -> Result<OpMatrix, LleError> {
    let d = build_potential_operator(f)?;
    Ok(&d * &d)
}

fn f_prime(f: &OperatorPoly) -> Result<OperatorPoly, LleError> {
    Ok(f.derivative(Var::Space(0))?)
}

/// `(i dt + dx^2 - f^2) 1 - (I (x) X) f'`.
pub fn closed_form_square(f: &OperatorPoly) -> Result<OpMatrix, LleError> {
    spec(f)?;
    let scalar = &(&(&OperatorPoly::i() * &OperatorPoly::dt()) + &OperatorPoly::d_pow(0, 2)) - &f.pow(2);
    let ix = word("IX").matrix().scale(&f_prime(f)?);
    Ok(&OpMatrix::scalar_identity(4, &scalar) - &ix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerPotentials {
    pub v_plus: OperatorPoly,
    pub v_minus: OperatorPoly,
}

/// `V+- = f^2 +- f'`.
pub fn partner_potentials(f: &OperatorPoly) -> Result<PartnerPotentials, LleError> {
    spec(f)?;
    let f2 = f.pow(2);
    let fp = f_prime(f)?;
    Ok(PartnerPotentials {
        v_plus: &f2 + &fp,
        v_minus: &f2 - &fp,
    })
}

/// `psi_target = op psi_source`, or `i dt psi_target = op psi_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRelation {
    pub target: usize,
    pub source: usize,
    pub time_derivative: bool,
    pub operator: OperatorPoly,
}

impl fmt::Display for ComponentRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = if self.time_derivative { "i*dt psi" } else { "psi" };
        write!(f, "{lhs}{} = ({}) psi{}", self.target, self.operator, self.source)
    }
}

/// `i dt psi_c = hamiltonian psi_c` with `hamiltonian = -dx^2 + potential`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchrodingerEquation {
    pub component: usize,
    pub hamiltonian: OperatorPoly,
    pub potential: OperatorPoly,
}

impl fmt::Display for SchrodingerEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i*dt psi{c} = ({}) psi{c}", self.hamiltonian, c = self.component)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSystem {
    /// `psi3` from `psi2`, `psi4` from `psi1`.
    pub algebraic: Vec<ComponentRelation>,
    /// `i dt psi1` from `psi4`, `i dt psi2` from `psi3`.
    pub dynamic: Vec<ComponentRelation>,
    /// One second-order equation per component, in order.
    pub schrodinger: Vec<SchrodingerEquation>,
    pub report: VerificationReport,
}

/// Reads row `r` of `D psi = 0` as `lead psi_t + e psi_s = 0`, where the lead
/// entry is `1` (algebraic) or `i dt` (dynamic).
fn read_row(d: &OpMatrix, r: usize) -> Result<ComponentRelation, LleError> {
    let idt = &OperatorPoly::i() * &OperatorPoly::dt();
    let entries: Vec<(usize, &OperatorPoly)> = (0..4).map(|c| (c, d.get(r, c))).filter(|(_, e)| !e.is_zero()).collect();
    let lead = entries
        .iter()
        .find(|(_, e)| e.is_constant_coefficient() && (**e == OperatorPoly::one() || **e == idt));
    let (Some(&(t, lead_op)), 2) = (lead, entries.len()) else {
        return Err(LleError::Invalid(format!("row {} does not have the two-component form", r + 1)));
    };
    let &(s, e) = entries.iter().find(|(c, _)| *c != t).expect("two entries");
    Ok(ComponentRelation {
        target: t + 1,
        source: s + 1,
        time_derivative: *lead_op == idt,
        operator: -e,
    })
}

pub fn derive_components(f: &OperatorPoly) -> Result<ComponentSystem, LleError> {
    let d = build_potential_operator(f)?;
    let rows = (0..4).map(|r| read_row(&d, r)).collect::<Result<Vec<_>, _>>()?;
    let (algebraic, dynamic): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| !r.time_derivative);
    let find = |list: &[ComponentRelation], target: usize| {
        list.iter()
            .find(|r| r.target == target)
            .cloned()
            .ok_or_else(|| LleError::Invalid(format!("no relation for psi{target}")))
    };
    let l32 = find(&algebraic, 3)?;
    let l41 = find(&algebraic, 4)?;
    let m14 = find(&dynamic, 1)?;
    let m23 = find(&dynamic, 2)?;
    let mut report = VerificationReport::new("susy components");
    if (l32.source, l41.source, m14.source, m23.source) != (2, 1, 4, 3) {
        report.checks.push(Check::new("component pairing", false, "unexpected coupling pattern"));
    }
    // psi1: i dt psi1 = M14 psi4 = M14 L41 psi1; psi3 = L32 psi2 gives
    // i dt psi3 = L32 M23 psi3 because L32 has no t.
    let idt = &OperatorPoly::i() * &OperatorPoly::dt();
    for (name, l) in [("L32", &l32), ("L41", &l41)] {
        let c = idt.commutator(&l.operator);
        report.checks.push(Check::new(
            format!("[i*dt, {name}] = 0"),
            c.is_zero(),
            format!("commutator {c}"),
        ));
    }
    let hams = [
        &m14.operator * &l41.operator,
        &m23.operator * &l32.operator,
        &l32.operator * &m23.operator,
        &l41.operator * &m14.operator,
    ];
    let pots = partner_potentials(f)?;
    let expected_v = [&pots.v_plus, &pots.v_minus, &pots.v_plus, &pots.v_minus];
    let minus_dx2 = -&OperatorPoly::d_pow(0, 2);
    let square = &d * &d;
    let mut schrodinger = Vec::new();
    for (c, h) in hams.iter().enumerate() {
        let potential = h + &OperatorPoly::d_pow(0, 2);
        let residual = &potential - expected_v[c];
        report.checks.push(Check::new(
            format!("psi{} potential", c + 1),
            residual.is_zero() && potential.is_function(),
            format!("V = {potential}"),
        ));
        let diag = square.get(c, c);
        let diag_residual = &(&idt - h) - diag;
        report.checks.push(Check::new(
            format!("(D^2)_{0}{0} = i*dt - H{0}", c + 1),
            diag_residual.is_zero(),
            format!("residual {diag_residual}"),
        ));
        debug_assert_eq!(h, &(&minus_dx2 + &potential));
        schrodinger.push(SchrodingerEquation {
            component: c + 1,
            hamiltonian: h.clone(),
            potential,
        });
    }
    let off_diag_zero = (0..4).all(|i| (0..4).all(|j| i == j || square.get(i, j).is_zero()));
    report
        .checks
        .push(Check::new("D^2 diagonal", off_diag_zero, "off-diagonal entries vanish"));
    Ok(ComponentSystem {
        algebraic: vec![l32, l41],
        dynamic: vec![m14, m23],
        schrodinger,
        report,
    })
}
