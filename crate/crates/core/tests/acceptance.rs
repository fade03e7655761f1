//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;

use num_rational::BigRational;
use num_traits::{One, Zero};

use lle_core::clifford::{named_set, Signature};
use lle_core::lle::{catalog, classify, dispersion_check, generate_table, symbol_determinant, verify_square_root};
use lle_core::matrix::RationalMatrix;
use lle_core::osp12::{hamiltonian_split, scaling_dimension, GeneratorName, Osp12, ScalingDimension};
use lle_core::scalar::{gauss_int, rat, Gauss};
use lle_core::structure::{commutant_of_words, DivisionAlgebraTag};
use lle_core::susy::{derive_components, partner_potentials, square_potential_operator};
use lle_core::word::{pair_relation, PairRelation, Word};
use lle_core::{Exec, OpMatrix, OperatorPoly};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> OperatorPoly {
    s.parse().expect("test expression")
}

fn w(s: &str) -> Word {
    s.parse().expect("test word")
}

const TABLE: [&str; 11] = [
    "(2×2) matrices: M, (1+1), 2 real components",
    "(4×4) matrices: M, (1+2), 4 real components",
    "(4×4) matrices: MW, (1+1), 4/2 = 2 real components",
    "(8×8) matrices: M, (1+3), 8 real components",
    "(8×8) matrices: MW, (1+2), 8/2 = 4 real components",
    "(8×8) matrices: D, (1+1), 4_C ≡ 8 real components",
    "(16×16) matrices: M, (1+4), 16 real components",
    "(16×16) matrices: MW, (1+3), 16/2 = 8 real components",
    "(16×16) matrices: D, (1+2), 8_C ≡ 16 real components",
    "(16×16) matrices: W, (1+1), 4_C ≡ 8 real components",
    "(16×16) matrices: H, (1+1), 4_H ≡ 16 real components",
];

fn table_reproduction() -> Outcome {
    let rows = generate_table(Exec::default()).map_err(|e| e.to_string())?;
    let got: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
    ensure(got == TABLE, || format!("table differs: {got:#?}"))?;
    let sizes: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ensure(sizes == [2, 4, 4, 8, 8, 8, 16, 16, 16, 16, 16], || format!("sizes {sizes:?}"))?;
    let types: Vec<String> = rows.iter().map(|r| r.spinor_type.to_string()).collect();
    ensure(
        types == ["M", "M", "MW", "M", "MW", "D", "M", "MW", "D", "W", "H"],
        || format!("types {types:?}"),
    )
}

fn clifford_verification() -> Outcome {
    for (name, p, q) in [("Cl(2,1)", 2, 1), ("Cl(3,2)", 3, 2), ("Cl(4,3)-set1", 4, 3), ("Cl(4,3)-set2", 4, 3)] {
        let set = named_set(name).map_err(|e| e.to_string())?;
        ensure(set.signature() == Signature { p, q }, || format!("{name} signature"))?;
        let report = set.verify();
        let count = (p + q) * (p + q + 1) / 2;
        ensure(report.passed() && report.checks.len() == count, || format!("{name} relations"))?;
        // independent check on dense integer matrices
        let dense: Vec<_> = set.generators().iter().map(|g| common::dense_word(&g.to_string())).collect();
        for (i, a) in dense.iter().enumerate() {
            for b in &dense[i + 1..] {
                ensure(common::is_zero(&common::add(&common::mul(a, b), &common::mul(b, a), 1)), || {
                    format!("{name}: dense anticommutator nonzero")
                })?;
            }
        }
    }
    let s = named_set("Cl(3,2)").map_err(|e| e.to_string())?;
    let space: Vec<String> = s.space_like().iter().map(Word::to_string).collect();
    let time: Vec<String> = s.time_like().iter().map(Word::to_string).collect();
    ensure(space == ["XX", "XY", "YI"] && time == ["XA", "AI"], || format!("split {space:?} {time:?}"))
}

fn square_root_identity() -> Outcome {
    for spec in catalog() {
        let d = spec.build_operator();
        let mut lap = p("i*dt");
        for k in 0..spec.d() {
            lap += &OperatorPoly::d_pow(k, 2);
        }
        let residual = &(&d * &d) - &OpMatrix::scalar_identity(spec.n(), &lap);
        ensure(residual.is_zero(), || format!("{}: residual {residual}", spec.name()))?;
        let report = verify_square_root(&spec).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{}: {report}", spec.name()))?;
    }
    Ok(())
}

fn square_is_minus_one(m: &RationalMatrix) -> bool {
    m.mul(m) == RationalMatrix::identity(m.dim()).scale(&-BigRational::one())
}

fn commutant_classification() -> Outcome {
    let expected_dim = [
        ("eq6", 1),
        ("eq7", 1),
        ("eq8", 1),
        ("eq9", 1),
        ("eq10", 2),
        ("eq11", 1),
        ("eq12", 1),
        ("eq13", 2),
        ("eq14", 1),
        ("eq15", 2),
        ("eq16", 4),
    ];
    for spec in catalog() {
        let class = classify(&spec).map_err(|e| e.to_string())?;
        let dim = expected_dim.iter().find(|(k, _)| *k == spec.name()).map(|(_, d)| *d).unwrap();
        ensure(class.division_algebra.commutant_dim == dim, || {
            format!("{}: commutant dim {}", spec.name(), class.division_algebra.commutant_dim)
        })?;
        // the solver's basis must commute with the ambient system it was computed for
        let basis = commutant_of_words(&class.ambient.words).map_err(|e| e.to_string())?;
        ensure(basis.dim() == dim && basis.is_closed(), || format!("{}: basis", spec.name()))?;
        let labels: Vec<String> = class.witnesses.iter().map(|x| x.label()).collect();
        for wit in &class.witnesses {
            ensure(square_is_minus_one(&wit.matrix), || format!("{}: J^2 != -1", spec.name()))?;
            // lifted witnesses commute with the full operator's constant parts
            let full: Vec<String> = common::expand_q(&spec.words().iter().map(Word::to_string).collect::<Vec<_>>());
            let j = &wit.matrix;
            for f in &full {
                let g = w(f).rational_matrix().unwrap();
                ensure(j.commutes_with(&g), || format!("{}: witness vs {f}", spec.name()))?;
            }
        }
        match spec.name() {
            "eq10" => ensure(labels == ["IIA"], || format!("eq10 witnesses {labels:?}"))?,
            "eq13" | "eq15" => ensure(labels == ["IIIA"], || format!("{} witnesses {labels:?}", spec.name()))?,
            "eq16" => {
                let mut sorted = labels.clone();
                sorted.sort();
                ensure(sorted == ["IIAX", "IIAY", "IIIA"], || format!("eq16 witnesses {labels:?}"))?;
                ensure(class.division_algebra.tag == DivisionAlgebraTag::H, || "eq16 tag".into())?;
                let js: Vec<&RationalMatrix> = class.witnesses.iter().map(|x| &x.matrix).collect();
                for a in 0..3 {
                    for b in 0..3 {
                        if a == b {
                            continue;
                        }
                        let c = 3 - a - b;
                        let prod = js[a].mul(js[b]);
                        let closes = prod == *js[c] || prod == js[c].scale(&-BigRational::one());
                        ensure(closes, || format!("J{}J{} not +-J{}", a + 1, b + 1, c + 1))?;
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

fn susy_construction() -> Outcome {
    let f = OperatorPoly::f();
    let sys = derive_components(&f).map_err(|e| e.to_string())?;
    ensure(sys.report.passed(), || sys.report.to_string())?;
    let rel = |list: &[lle_core::susy::ComponentRelation], t: usize| list.iter().find(|r| r.target == t).cloned().unwrap();
    let checks = [
        (rel(&sys.algebraic, 3), 2, "dx + f"),
        (rel(&sys.algebraic, 4), 1, "dx - f"),
        (rel(&sys.dynamic, 1), 4, "-dx - f"),
        (rel(&sys.dynamic, 2), 3, "-dx + f"),
    ];
    for (r, source, op) in checks {
        ensure(r.source == source && r.operator == p(op), || format!("relation {r}"))?;
    }
    let vp = p("f^2 + f'");
    let vm = p("f^2 - f'");
    let pots = partner_potentials(&f).map_err(|e| e.to_string())?;
    ensure(pots.v_plus == vp && pots.v_minus == vm, || "partner potentials".into())?;
    let expected_v = [&vp, &vm, &vp, &vm];
    for (eq, v) in sys.schrodinger.iter().zip(expected_v) {
        ensure(eq.hamiltonian == &p("-dx^2") + v, || format!("component {}: {eq}", eq.component))?;
    }
    let sq = square_potential_operator(&f).map_err(|e| e.to_string())?;
    for (c, v) in expected_v.iter().enumerate() {
        ensure(*sq.get(c, c) == &p("i*dt + dx^2") - *v, || format!("diagonal {c}"))?;
    }
    Ok(())
}

fn only(coeffs: &[Gauss], name: GeneratorName) -> bool {
    GeneratorName::ALL
        .iter()
        .zip(coeffs)
        .all(|(n, c)| (*n == name) != c.is_zero())
}

fn osp12_closure() -> Outcome {
    let osp = Osp12::new();
    let report = osp.verify_closure(Exec::default());
    ensure(report.rows.len() == 15, || "fifteen brackets".into())?;
    for row in &report.rows {
        ensure(row.passed, || format!("{} not closed as expected", row.label()))?;
    }
    use GeneratorName::*;
    let hx = report.row(H, Xi).and_then(|r| r.coefficients.clone()).ok_or("[H,Xi] outside span")?;
    let ko = report.row(K, Omega).and_then(|r| r.coefficients.clone()).ok_or("[K,Omega] outside span")?;
    ensure(only(&hx, Omega) && only(&ko, Xi), || "proportionality".into())?;
    let om = &osp.get(Omega).body;
    ensure(om * om == osp.get(H).body, || "Omega^2 != H".into())?;
    for g in osp.generators() {
        let dim = scaling_dimension(&g.body).map_err(|e| e.to_string())?;
        ensure(dim == ScalingDimension::Homogeneous(g.name.weight()), || format!("weight of {}", g.name))?;
    }
    let expected_weights = [(H, rat(1, 1)), (Omega, rat(1, 2)), (Dil, rat(0, 1)), (Xi, rat(-1, 2)), (K, rat(-1, 1))];
    for (n, wgt) in expected_weights {
        ensure(n.weight() == wgt, || format!("table weight {n}"))?;
    }
    let failures = osp.jacobi_failures(Exec::default());
    ensure(failures.is_empty(), || format!("Jacobi fails on {failures:?}"))?;
    ensure(hamiltonian_split(&osp).residual.is_zero(), || "split residual".into())
}

fn dispersion_property() -> Outcome {
    for spec in catalog().into_iter().filter(|s| s.n() <= 8) {
        let report = dispersion_check(&spec, Exec::default()).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{}: {report}", spec.name()))?;
        let on = report.checks.iter().filter(|c| c.name.starts_with("on-shell")).count();
        let off = report.checks.iter().filter(|c| c.name.starts_with("off-shell")).count();
        ensure(on >= 5 && off >= 5, || format!("{}: {on} on-shell, {off} off-shell", spec.name()))?;
    }
    let eq6 = catalog().into_iter().next().unwrap();
    for e in -3..=6 {
        for k in -3..=3 {
            let det = symbol_determinant(&eq6, &gauss_int(e), &[gauss_int(k)]).map_err(|e| e.to_string())?;
            ensure(det == gauss_int(k * k - e), || format!("eq6 det at E={e}, k={k}"))?;
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    // systems with n <= 4: bare and ambient catalog systems, and every subset
    // of the two smallest Clifford sets
    let mut systems: Vec<Vec<String>> = Vec::new();
    for spec in catalog().into_iter().filter(|s| s.n() <= 4) {
        systems.push(spec.words().iter().map(Word::to_string).collect());
        let class = classify(&spec).map_err(|e| e.to_string())?;
        systems.push(class.ambient.words.iter().map(Word::to_string).collect());
    }
    for name in ["Cl(2,1)", "Cl(3,2)"] {
        let gens: Vec<String> = named_set(name).unwrap().generators().iter().map(Word::to_string).collect();
        for mask in 1..(1u32 << gens.len()) {
            systems.push(
                gens.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, g)| g.clone())
                    .collect(),
            );
        }
    }
    for sys in &systems {
        let words: Vec<Word> = sys.iter().map(|s| w(s)).collect();
        let solver = commutant_of_words(&words).map_err(|e| e.to_string())?.dim();
        let dense: Vec<_> = common::expand_q(sys).iter().map(|s| common::dense_word(s)).collect();
        let brute = common::brute_commutant_dim(&dense);
        ensure(solver == brute, || format!("{sys:?}: solver {solver}, brute force {brute}"))?;
    }
    for len in 1..=3 {
        let constant = common::words_over(&['I', 'X', 'Y', 'A'], len);
        for u in &constant {
            let du = common::dense_word(u);
            for v in &constant {
                let dv = common::dense_word(v);
                let (uv, vu) = (common::mul(&du, &dv), common::mul(&dv, &du));
                let direct = if common::is_zero(&common::add(&uv, &vu, -1)) {
                    PairRelation::Commute
                } else if common::is_zero(&common::add(&uv, &vu, 1)) {
                    PairRelation::Anticommute
                } else {
                    PairRelation::Neither
                };
                let got = pair_relation(&w(u), &w(v)).unwrap();
                ensure(got == direct, || format!("({u}, {v}): {got:?} vs {direct:?}"))?;
            }
        }
        let q_words: Vec<String> = common::words_over(&['I', 'X', 'Y', 'A'], len - 1)
            .into_iter()
            .map(|s| format!("Q{s}"))
            .collect();
        for u in &q_words {
            let mu = w(u).matrix();
            for v in constant.iter().chain(&q_words) {
                let mv = w(v).matrix();
                let direct = if mu.commutator(&mv).unwrap().is_zero() {
                    PairRelation::Commute
                } else if mu.anticommutator(&mv).unwrap().is_zero() {
                    PairRelation::Anticommute
                } else {
                    PairRelation::Neither
                };
                let got = pair_relation(&w(u), &w(v)).unwrap();
                ensure(got == direct, || format!("({u}, {v}): {got:?} vs {direct:?}"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 table reproduction", table_reproduction),
        ("2 Clifford verification", clifford_verification),
        ("3 square-root identity", square_root_identity),
        ("4 commutant classification", commutant_classification),
        ("5 SUSY construction", susy_construction),
        ("6 osp(1|2) closure", osp12_closure),
        ("7 dispersion property", dispersion_property),
        ("8 oracle equivalence", oracle_equivalence),
    ];
    let mut all = true;
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS  {name}"),
            Err(msg) => {
                all = false;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
