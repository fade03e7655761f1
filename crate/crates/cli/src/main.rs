use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lle_core::clifford::{named_set, CliffordSet, CATALOG_NAMES};
use lle_core::grammar;
use lle_core::lle::{
    catalog, catalog_entry, classify, compare_table, dispersion_check, generate_table, golden_rows, parse_config,
    verify_square_root, LleSpec, SpinorClass, VerificationReport, CATALOG_KEYS, GOLDEN_TABLE,
};
use lle_core::osp12::{render_combination, GeneratorName, Osp12};
use lle_core::susy::{derive_components, partner_potentials};
use lle_core::Exec;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "lle", version, about = "Exact checks for Levy-Leblond square-root operators")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Print residuals and intermediate data.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in equations and Clifford sets.
    Catalog,
    /// Classify every catalog equation and compare with the golden table.
    Table {
        /// Compare against this file instead of the embedded table.
        #[arg(long)]
        golden: Option<String>,
    },
    /// Run all checks for a catalog key, Clifford set name or config file.
    Verify { input: String },
    /// Check the dispersion relation of a free equation.
    Dispersion { input: String },
    /// Component equations for the 4x4 system with prepotential f.
    Susy {
        #[arg(long)]
        prepotential: String,
    },
    /// The osp(1|2) generators; with --check, the bracket table.
    Osp12 {
        #[arg(long)]
        check: bool,
    },
}

enum Outcome {
    Pass,
    Fail,
}

struct UsageError(String);

type CmdResult = Result<Outcome, UsageError>;

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

enum Input {
    Spec(LleSpec),
    Clifford(String, CliffordSet),
}

fn load_input(input: &str) -> Result<Input, UsageError> {
    if CATALOG_NAMES.contains(&input) {
        let set = named_set(input).map_err(|e| UsageError(e.to_string()))?;
        return Ok(Input::Clifford(input.to_string(), set));
    }
    if let Ok(spec) = catalog_entry(input) {
        return Ok(Input::Spec(spec));
    }
    let path = Path::new(input);
    if !path.is_file() {
        return Err(UsageError(format!(
            "`{input}` is neither a catalog key nor a readable file\nknown keys: {}; {}",
            CATALOG_KEYS.join(", "),
            CATALOG_NAMES.join(", ")
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{input}: {e}")))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(input);
    parse_config(&text, stem)
        .map(Input::Spec)
        .map_err(|e| UsageError(format!("{input}: {e}")))
}

fn report_json(r: &VerificationReport, verbose: bool) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let mut v = json!({"name": c.name, "passed": c.passed, "detail": c.detail});
            if verbose {
                if let Some(res) = &c.residual {
                    v["residual"] = json!(res.to_string());
                }
            }
            v
        })
        .collect();
    json!({"subject": r.subject, "passed": r.passed(), "checks": checks})
}

fn print_report(r: &VerificationReport, verbose: bool) {
    println!("== {}", r.subject);
    print!("{r}");
    if verbose {
        for c in &r.checks {
            if let Some(res) = c.residual.as_ref().filter(|m| !m.is_zero()) {
                println!("   {} residual: {res}", c.name);
            }
        }
    }
}

fn class_json(c: &SpinorClass) -> Value {
    json!({
        "type": c.spinor_type.to_string(),
        "n": c.n,
        "d": c.d,
        "chiral": c.chiral,
        "weyl_slot": c.weyl_slot,
        "division_algebra": c.division_algebra.tag.to_string(),
        "commutant_dim": c.division_algebra.commutant_dim,
        "reference": c.ambient.reference,
        "ambient": c.ambient.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "witnesses": c.witnesses.iter().map(|w| w.label()).collect::<Vec<_>>(),
        "components": c.component_label(),
    })
}

fn print_class(c: &SpinorClass, verbose: bool) {
    println!("== classification");
    println!("type: {} ({}x{}, 1+{})", c.spinor_type, c.n, c.n, c.d);
    println!("components: {}", c.component_label());
    println!(
        "commutant: dim {} ({})",
        c.division_algebra.commutant_dim, c.division_algebra.tag
    );
    if let Some(slot) = c.weyl_slot {
        println!("weyl slot: {slot}");
    }
    if !c.witnesses.is_empty() {
        let w: Vec<String> = c.witnesses.iter().map(|w| w.label()).collect();
        println!("witnesses: {}", w.join(", "));
    }
    if verbose {
        let words: Vec<String> = c.ambient.words.iter().map(|w| w.to_string()).collect();
        println!(
            "ambient: {} [{}]",
            words.join(" "),
            c.ambient.reference.as_deref().unwrap_or("bare system")
        );
    }
}

fn emit(format: Format, value: Value) {
    if format == Format::Json {
        let mut value = value;
        value["schema_version"] = json!(SCHEMA_VERSION);
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    }
}

fn cmd_catalog(format: Format) -> CmdResult {
    let specs = catalog();
    let sets: Vec<(String, CliffordSet)> = CATALOG_NAMES
        .iter()
        .map(|n| (n.to_string(), named_set(n).expect("built-in set")))
        .collect();
    if format == Format::Json {
        let eqs: Vec<Value> = specs
            .iter()
            .map(|s| json!({"key": s.name(), "n": s.n(), "d": s.d(), "equation": s.to_string()}))
            .collect();
        let cl: Vec<Value> = sets
            .iter()
            .map(|(n, s)| {
                json!({
                    "name": n,
                    "signature": s.signature().to_string(),
                    "generators": s.generators().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        emit(format, json!({"command": "catalog", "equations": eqs, "clifford_sets": cl}));
    } else {
        for s in &specs {
            println!("{:<5} {:>2}x{:<2} (1+{})  {s}", s.name(), s.n(), s.n(), s.d());
        }
        println!();
        for (n, s) in &sets {
            println!("{n:<13} {s}");
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_table(format: Format, golden: Option<String>) -> CmdResult {
    let golden = match golden {
        Some(path) => fs::read_to_string(&path).map_err(|e| UsageError(format!("{path}: {e}")))?,
        None => GOLDEN_TABLE.to_string(),
    };
    let rows = generate_table(Exec::default()).map_err(|e| UsageError(e.to_string()))?;
    let mismatches = compare_table(&rows, &golden);
    if format == Format::Json {
        let rows_json: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "key": r.key,
                    "n": r.n,
                    "type": r.spinor_type.to_string(),
                    "d": r.d,
                    "components": r.components,
                    "row": r.to_string(),
                })
            })
            .collect();
        let diff: Vec<Value> = mismatches
            .iter()
            .map(|m| json!({"row": m.row, "expected": m.expected, "got": m.got}))
            .collect();
        emit(
            format,
            json!({"command": "table", "rows": rows_json, "golden_rows": golden_rows(&golden).len(), "matches": mismatches.is_empty(), "mismatches": diff}),
        );
    } else {
        for r in &rows {
            println!("{r}");
        }
        for m in &mismatches {
            println!("row {}:", m.row);
            println!("- {}", m.expected.as_deref().unwrap_or("<missing>"));
            println!("+ {}", m.got.as_deref().unwrap_or("<missing>"));
        }
        if mismatches.is_empty() {
            println!("PASS  table matches golden data");
        } else {
            println!("FAIL  {} row(s) differ from golden data", mismatches.len());
        }
    }
    Ok(outcome(mismatches.is_empty()))
}

fn verify_clifford(format: Format, name: &str, set: &CliffordSet) -> CmdResult {
    let report = set.verify();
    if format == Format::Json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({"left": c.left.to_string(), "right": c.right.to_string(), "passed": c.passed, "detail": c.detail}))
            .collect();
        emit(
            format,
            json!({"command": "verify", "subject": name, "signature": report.signature.to_string(), "passed": report.passed(), "checks": checks}),
        );
    } else {
        println!("== {name} {}", report.signature);
        for c in &report.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            println!("{mark}  {{{}, {}}}: {}", c.left, c.right, c.detail);
        }
    }
    Ok(outcome(report.passed()))
}

fn cmd_verify(format: Format, verbose: bool, input: &str) -> CmdResult {
    let spec = match load_input(input)? {
        Input::Clifford(name, set) => return verify_clifford(format, &name, &set),
        Input::Spec(spec) => spec,
    };
    let mut reports = Vec::new();
    if spec.is_free() {
        reports.push(verify_square_root(&spec).map_err(|e| UsageError(e.to_string()))?);
        reports.push(dispersion_check(&spec, Exec::default()).map_err(|e| UsageError(e.to_string()))?);
    }
    let class = classify(&spec);
    let ok = reports.iter().all(VerificationReport::passed) && class.is_ok();
    if format == Format::Json {
        let class_value = match &class {
            Ok(c) => class_json(c),
            Err(e) => json!({"error": e.to_string()}),
        };
        emit(
            format,
            json!({
                "command": "verify",
                "subject": spec.name(),
                "equation": spec.to_string(),
                "passed": ok,
                "reports": reports.iter().map(|r| report_json(r, verbose)).collect::<Vec<_>>(),
                "classification": class_value,
            }),
        );
    } else {
        println!("{}: {spec}", spec.name());
        if verbose {
            println!("D = {}", spec.build_operator());
        }
        if !spec.is_free() {
            println!("note: equation has a potential; square-root and dispersion checks apply to free equations only");
        }
        for r in &reports {
            print_report(r, verbose);
        }
        match &class {
            Ok(c) => print_class(c, verbose),
            Err(e) => println!("FAIL  classification: {e}"),
        }
    }
    Ok(outcome(ok))
}

fn cmd_dispersion(format: Format, verbose: bool, input: &str) -> CmdResult {
    let spec = match load_input(input)? {
        Input::Spec(spec) => spec,
        Input::Clifford(name, _) => return Err(UsageError(format!("`{name}` is a Clifford set, not an equation"))),
    };
    let report = dispersion_check(&spec, Exec::default()).map_err(|e| UsageError(e.to_string()))?;
    if format == Format::Json {
        let mut v = report_json(&report, verbose);
        v["command"] = json!("dispersion");
        emit(format, v);
    } else {
        print_report(&report, verbose);
    }
    Ok(outcome(report.passed()))
}

fn cmd_susy(format: Format, verbose: bool, expr: &str) -> CmdResult {
    let f = grammar::parse(expr).map_err(|e| UsageError(format!("prepotential `{expr}`: {e}")))?;
    let pots = partner_potentials(&f).map_err(|e| UsageError(e.to_string()))?;
    let sys = derive_components(&f).map_err(|e| UsageError(e.to_string()))?;
    if format == Format::Json {
        let rel = |r: &lle_core::susy::ComponentRelation| {
            json!({"target": r.target, "source": r.source, "time_derivative": r.time_derivative, "operator": r.operator.to_string(), "equation": r.to_string()})
        };
        emit(
            format,
            json!({
                "command": "susy",
                "prepotential": f.to_string(),
                "v_plus": pots.v_plus.to_string(),
                "v_minus": pots.v_minus.to_string(),
                "algebraic": sys.algebraic.iter().map(rel).collect::<Vec<_>>(),
                "dynamic": sys.dynamic.iter().map(rel).collect::<Vec<_>>(),
                "schrodinger": sys.schrodinger.iter().map(|s| json!({
                    "component": s.component,
                    "hamiltonian": s.hamiltonian.to_string(),
                    "potential": s.potential.to_string(),
                    "equation": s.to_string(),
                })).collect::<Vec<_>>(),
                "report": report_json(&sys.report, verbose),
            }),
        );
    } else {
        println!("f = {f}");
        println!("V+ = {}", pots.v_plus);
        println!("V- = {}", pots.v_minus);
        for r in sys.algebraic.iter().chain(&sys.dynamic) {
            println!("{r}");
        }
        for s in &sys.schrodinger {
            println!("{s}");
        }
        print_report(&sys.report, verbose);
    }
    Ok(outcome(sys.report.passed()))
}

fn grading_rows() -> Vec<(GeneratorName, &'static str, String)> {
    GeneratorName::ALL
        .iter()
        .map(|g| (*g, if g.is_odd() { "odd" } else { "even" }, g.weight().to_string()))
        .collect()
}

fn cmd_osp12(format: Format, verbose: bool, check: bool) -> CmdResult {
    let osp = Osp12::new();
    let closure = check.then(|| osp.verify_closure(Exec::default()));
    let jacobi = check.then(|| osp.jacobi_failures(Exec::default()));
    let ok = closure.as_ref().is_none_or(|c| c.passed()) && jacobi.as_ref().is_none_or(Vec::is_empty);
    if format == Format::Json {
        let gens: Vec<Value> = osp
            .generators()
            .iter()
            .map(|g| json!({"name": g.name.to_string(), "grading": if g.is_odd() { "odd" } else { "even" }, "weight": g.name.weight().to_string(), "matrix": g.body.to_string()}))
            .collect();
        let mut v = json!({"command": "osp12", "generators": gens});
        if let (Some(c), Some(j)) = (&closure, &jacobi) {
            v["brackets"] = c
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "bracket": r.label(),
                        "computed": r.coefficients.as_deref().map(render_combination),
                        "expected": r.expected.as_deref().map_or("computed".to_string(), render_combination),
                        "passed": r.passed,
                    })
                })
                .collect();
            v["jacobi_failures"] = j.iter().map(|(a, b, c)| json!([a.to_string(), b.to_string(), c.to_string()])).collect();
            v["passed"] = json!(ok);
        }
        emit(format, v);
    } else {
        println!("{:<6} {:<5} weight", "gen", "grade");
        for (g, grade, w) in grading_rows() {
            println!("{:<6} {grade:<5} {w}", g.to_string());
        }
        if verbose || !check {
            for g in osp.generators() {
                println!("{} = {}", g.name, g.body);
            }
        }
        if let (Some(c), Some(j)) = (&closure, &jacobi) {
            println!();
            println!("{:<14} {:<18} expected", "bracket", "computed");
            for r in &c.rows {
                let computed = r.coefficients.as_deref().map_or("outside span".to_string(), render_combination);
                let expected = r.expected.as_deref().map_or("computed".to_string(), render_combination);
                let mark = if r.passed { "PASS" } else { "FAIL" };
                println!("{:<14} {computed:<18} {expected:<10} {mark}", r.label());
                if verbose {
                    if let Some(res) = r.residual.as_ref().filter(|m| !m.is_zero()) {
                        println!("   residual: {res}");
                    }
                }
            }
            if j.is_empty() {
                println!("PASS  graded Jacobi identity on all triples");
            } else {
                for (a, b, c) in j {
                    println!("FAIL  graded Jacobi ({a}, {b}, {c})");
                }
            }
        }
    }
    Ok(outcome(ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, verbose) = (cli.format, cli.verbose);
    let result = match cli.command {
        Command::Catalog => cmd_catalog(format),
        Command::Table { golden } => cmd_table(format, golden),
        Command::Verify { input } => cmd_verify(format, verbose, &input),
        Command::Dispersion { input } => cmd_dispersion(format, verbose, &input),
        Command::Susy { prepotential } => cmd_susy(format, verbose, &prepotential),
        Command::Osp12 { check } => cmd_osp12(format, verbose, check),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
