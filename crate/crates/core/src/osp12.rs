//! The conformal potential `f = g/x`: five osp(1|2) generators as 4x4 matrix
//! differential operators, their graded brackets and scaling weights.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Osp12Error;
use crate::exec::Exec;
use crate::linalg::{solve_in_span, SparseVec};
use crate::matrix::OpMatrix;
use crate::operator::{OperatorPoly, TermKey};
use crate::scalar::{rat, Gauss, ParamMono, Scalar};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GeneratorName {
    H,
    Omega,
    Dil,
    Xi,
    K,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 5] = [
        GeneratorName::H,
        GeneratorName::Omega,
        GeneratorName::Dil,
        GeneratorName::Xi,
        GeneratorName::K,
    ];

    pub fn is_odd(self) -> bool {
        matches!(self, GeneratorName::Omega | GeneratorName::Xi)
    }

    /// Expected scaling weight.
    pub fn weight(self) -> BigRational {
        match self {
            GeneratorName::H => rat(1, 1),
            GeneratorName::Omega => rat(1, 2),
            GeneratorName::Dil => rat(0, 1),
            GeneratorName::Xi => rat(-1, 2),
            GeneratorName::K => rat(-1, 1),
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: GeneratorName,
    pub body: OpMatrix,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.name.is_odd()
    }
}

/// Generator set for one choice of the auxiliary matrix `R = [[0,0],[r*lam,0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Osp12 {
    generators: Vec<Generator>,
    r_scale: i64,
}

impl Default for Osp12 {
    fn default() -> Self {
        Osp12::new()
    }
}

fn word(s: &str) -> OpMatrix {
    s.parse::<Word>().expect("fixed word").matrix()
}

fn p(s: &str) -> OperatorPoly {
    s.parse().expect("fixed expression")
}

fn two_by_two(entries: [OperatorPoly; 4]) -> OpMatrix {
    OpMatrix::from_entries(2, entries.to_vec()).expect("2x2")
}

/// `Lambda = diag(lam, lam + 1/2)`.
pub fn lambda_matrix() -> OpMatrix {
    two_by_two([p("lam"), OperatorPoly::zero(), OperatorPoly::zero(), p("lam + 1/2")])
}

/// `R = [[0, 0], [r*lam, 0]]`.
pub fn r_matrix(r_scale: i64) -> OpMatrix {
    let entry = OperatorPoly::lam().scale(&Scalar::int(r_scale));
    two_by_two([OperatorPoly::zero(), OperatorPoly::zero(), entry, OperatorPoly::zero()])
}

impl Osp12 {
    /// Uses `R = [[0,0],[2 lam,0]]`, the normalization for which the algebra
    /// closes for every `lam`.
    pub fn new() -> Osp12 {
        Osp12::with_r_scale(2)
    }

    pub fn with_r_scale(r_scale: i64) -> Osp12 {
        let id4 = |q: &str| OpMatrix::scalar_identity(4, &p(q));
        let eye2 = word("I");
        let lambda = lambda_matrix().tensor(&eye2);
        let h = &id4("i*dt + dx^2 - g^2*x^-2") + &word("IX").scale(&p("g*x^-2"));
        let omega = &(&word("QI") - &word("XY").scale(&p("dx"))) - &word("XA").scale(&p("g*x^-1"));
        let dil = &id4("1/4 + 1/2*x*dx + t*dt") + &lambda;
        let xi = &(&word("QI").left_scale(&p("-i*t")) - &word("XY").scale(&p("1/2*x"))) + &r_matrix(r_scale).tensor(&eye2);
        let k = &id4("-i*t^2*dt + 1/4*x^2") - &lambda.scale(&p("2*i*t"));
        let generators = vec![
            Generator { name: GeneratorName::H, body: h },
            Generator { name: GeneratorName::Omega, body: omega },
            Generator { name: GeneratorName::Dil, body: dil },
            Generator { name: GeneratorName::Xi, body: xi },
            Generator { name: GeneratorName::K, body: k },
        ];
        Osp12 { generators, r_scale }
    }

    pub fn r_scale(&self) -> i64 {
        self.r_scale
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, name: GeneratorName) -> &Generator {
        self.generators.iter().find(|g| g.name == name).expect("all five present")
    }

    pub fn graded_bracket(&self, a: GeneratorName, b: GeneratorName) -> OpMatrix {
        graded_bracket(&self.get(a).body, a.is_odd(), &self.get(b).body, b.is_odd())
    }

    /// Expansion of `m` in the span of the five generators with constant
    /// coefficients, in [`GeneratorName::ALL`] order.
    pub fn expand(&self, m: &OpMatrix) -> Option<Vec<Gauss>> {
        let mut index = BTreeMap::new();
        let columns: Vec<SparseVec<Gauss>> = self
            .generators
            .iter()
            .map(|g| coordinates(&g.body, &mut index))
            .collect();
        let target = coordinates(m, &mut index);
        solve_in_span(&columns, &target)
    }

    /// All fifteen graded brackets, each expanded in the generator span.
    pub fn verify_closure(&self, exec: Exec) -> ClosureReport {
        let rows = exec.map(&BRACKETS, |(a, b, expected)| {
            let bracket = self.graded_bracket(*a, *b);
            let coefficients = self.expand(&bracket);
            let expected: Option<Vec<Gauss>> = expected.map(|e| {
                GeneratorName::ALL
                    .iter()
                    .map(|n| {
                        e.iter()
                            .find(|(m, _, _)| m == n)
                            .map(|(_, num, den)| Gauss::new(rat(*num, *den), BigRational::zero()))
                            .unwrap_or_else(Gauss::zero)
                    })
                    .collect()
            });
            let passed = match (&coefficients, &expected) {
                (Some(c), Some(e)) => c == e,
                (Some(_), None) => true,
                (None, _) => false,
            };
            let residual = match (&coefficients, &expected) {
                (Some(c), Some(e)) if c != e => Some(&bracket - &self.combination(e)),
                (None, _) => Some(bracket.clone()),
                _ => None,
            };
            BracketRow {
                left: *a,
                right: *b,
                anticommutator: a.is_odd() && b.is_odd(),
                coefficients,
                expected,
                passed,
                residual,
            }
        });
        ClosureReport { rows }
    }

    pub fn combination(&self, coefficients: &[Gauss]) -> OpMatrix {
        let mut out = OpMatrix::zeros(4);
        for (g, c) in self.generators.iter().zip(coefficients) {
            if !c.is_zero() {
                out = &out + &g.body.scale_scalar(&Scalar::from_gauss(c.clone()));
            }
        }
        out
    }

    /// Graded Jacobi identity over all ordered triples; returns the failing
    /// triples.
    pub fn jacobi_failures(&self, exec: Exec) -> Vec<(GeneratorName, GeneratorName, GeneratorName)> {
        let triples: Vec<_> = GeneratorName::ALL
            .iter()
            .flat_map(|a| GeneratorName::ALL.iter().flat_map(move |b| GeneratorName::ALL.iter().map(move |c| (*a, *b, *c))))
            .collect();
        let ok = exec.map(&triples, |&(a, b, c)| {
            let ga = (&self.get(a).body, a.is_odd());
            let gb = (&self.get(b).body, b.is_odd());
            let gc = (&self.get(c).body, c.is_odd());
            graded_jacobi(ga, gb, gc).is_zero()
        });
        triples.into_iter().zip(ok).filter(|(_, ok)| !ok).map(|(t, _)| t).collect()
    }
}

fn coordinates(m: &OpMatrix, index: &mut BTreeMap<(usize, TermKey, ParamMono), usize>) -> SparseVec<Gauss> {
    let mut out = SparseVec::new();
    for (i, j, e) in m.nonzero_entries() {
        for (key, c) in e.terms() {
            for (pm, g) in c.terms() {
                let next = index.len();
                let idx = *index.entry((i * m.dim() + j, key.clone(), *pm)).or_insert(next);
                out.insert(idx, g.clone());
            }
        }
    }
    out
}

/// `[a, b} = ab - (-1)^(|a||b|) ba`.
pub fn graded_bracket(a: &OpMatrix, a_odd: bool, b: &OpMatrix, b_odd: bool) -> OpMatrix {
    if a_odd && b_odd {
        a.anticommutator(b).expect("equal sizes")
    } else {
        a.commutator(b).expect("equal sizes")
    }
}

/// `(-1)^(|a||c|) [a,[b,c}} + cyclic`.
pub fn graded_jacobi(a: (&OpMatrix, bool), b: (&OpMatrix, bool), c: (&OpMatrix, bool)) -> OpMatrix {
    let term = |x: (&OpMatrix, bool), y: (&OpMatrix, bool), z: (&OpMatrix, bool)| {
        let inner = graded_bracket(y.0, y.1, z.0, z.1);
        let outer = graded_bracket(x.0, x.1, &inner, y.1 ^ z.1);
        if x.1 && z.1 {
            -&outer
        } else {
            outer
        }
    };
    let s = &term(a, b, c) + &term(b, c, a);
    &s + &term(c, a, b)
}

type Expectation = Option<&'static [(GeneratorName, i64, i64)]>;

use GeneratorName::{Dil, Omega, Xi, H, K};

/// The fifteen brackets; `None` marks those whose value is computed rather
/// than asserted.
const BRACKETS: [(GeneratorName, GeneratorName, Expectation); 15] = [
    (Dil, H, Some(&[(H, -1, 1)])),
    (Dil, K, Some(&[(K, 1, 1)])),
    (H, K, Some(&[(Dil, 2, 1)])),
    (Dil, Omega, Some(&[(Omega, -1, 2)])),
    (Dil, Xi, Some(&[(Xi, 1, 2)])),
    (H, Omega, Some(&[])),
    (K, Xi, Some(&[])),
    (Omega, Omega, Some(&[(H, 2, 1)])),
    (Omega, Xi, Some(&[(Dil, 2, 1)])),
    (Xi, Xi, Some(&[(K, 2, 1)])),
    (H, Xi, None),
    (K, Omega, None),
    (H, H, Some(&[])),
    (Dil, Dil, Some(&[])),
    (K, K, Some(&[])),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketRow {
    pub left: GeneratorName,
    pub right: GeneratorName,
    pub anticommutator: bool,
    /// Expansion in [`GeneratorName::ALL`] order; `None` if outside the span.
    pub coefficients: Option<Vec<Gauss>>,
    pub expected: Option<Vec<Gauss>>,
    pub passed: bool,
    pub residual: Option<OpMatrix>,
}

impl BracketRow {
    pub fn label(&self) -> String {
        if self.anticommutator {
            format!("{{{}, {}}}", self.left, self.right)
        } else {
            format!("[{}, {}]", self.left, self.right)
        }
    }
}

/// Renders an expansion such as `-1/2*Omega` or `0`.
pub fn render_combination(coefficients: &[Gauss]) -> String {
    let mut names = Vec::new();
    for (n, c) in GeneratorName::ALL.iter().zip(coefficients) {
        if !c.is_zero() {
            names.push((Scalar::from_gauss(c.clone()), n));
        }
    }
    if names.is_empty() {
        return "0".into();
    }
    let pieces: Vec<(bool, String)> = names
        .iter()
        .map(|(c, n)| {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            let body = if mag == "1" { n.to_string() } else { format!("{mag}*{n}") };
            (neg, body)
        })
        .collect();
    crate::scalar::join_signed(&pieces)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub rows: Vec<BracketRow>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn row(&self, left: GeneratorName, right: GeneratorName) -> Option<&BracketRow> {
        self.rows.iter().find(|r| r.left == left && r.right == right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalingDimension {
    Zero,
    Homogeneous(BigRational),
    Inhomogeneous(Vec<BigRational>),
}

/// Weights `[t] = -1`, `[dt] = 1`, `[x] = -1/2`, `[dx] = 1/2`, plus the
/// positional weight `w(col) - w(row)` on the first tensor factor, with
/// component weights `(0, 1/2)`.
pub fn scaling_dimension(m: &OpMatrix) -> Result<ScalingDimension, Osp12Error> {
    let half_n = m.dim() / 2;
    let pos = |i: usize| if i / half_n.max(1) == 0 { rat(0, 1) } else { rat(1, 2) };
    let mut weights: Vec<BigRational> = Vec::new();
    for (i, j, e) in m.nonzero_entries() {
        for (key, _) in e.terms() {
            let f = &key.func;
            let d = &key.deriv;
            if f.has_f() || f.x_pows().len() > 1 || d.x_pows().len() > 1 {
                return Err(Osp12Error::UnsupportedSymbol(e.to_string()));
            }
            let w = rat(d.t_pow() as i64, 1) - rat(f.t_pow() as i64, 1) + rat(d.x_pow(0) as i64, 2)
                - rat(f.x_pow(0) as i64, 2)
                + pos(j)
                - pos(i);
            if !weights.contains(&w) {
                weights.push(w);
            }
        }
    }
    weights.sort();
    Ok(match weights.len() {
        0 => ScalingDimension::Zero,
        1 => ScalingDimension::Homogeneous(weights.remove(0)),
        _ => ScalingDimension::Inhomogeneous(weights),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianSplit {
    /// `1 * i dt`.
    pub left: OpMatrix,
    /// `1 (-dx^2 + g^2/x^2) - (I (x) X) g/x^2`.
    pub hamiltonian: OpMatrix,
    /// `H - (left - hamiltonian)`.
    pub residual: OpMatrix,
}

pub fn hamiltonian_split(osp: &Osp12) -> HamiltonianSplit {
    let left = OpMatrix::scalar_identity(4, &p("i*dt"));
    let hamiltonian = &OpMatrix::scalar_identity(4, &p("-dx^2 + g^2*x^-2")) - &word("IX").scale(&p("g*x^-2"));
    let residual = &osp.get(GeneratorName::H).body - &(&left - &hamiltonian);
    HamiltonianSplit {
        left,
        hamiltonian,
        residual,
    }
}
