//! Command-line front end for the torsion-unit constraint engine: run single
//! solves, verify explicit group-ring units, and reproduce the whole-catalogue
//! battery against embedded expected values.

use clap::{Parser, Subcommand, ValueEnum};
use helpx::chartab::{parse_fusion, parse_table, CharacterTable};
use helpx::cyclotomic::divisors;
use helpx::fixtures;
use helpx::groupring::{FiniteGroup, GroupRingElement, OrderResult};
use helpx::help::{Classification, PADistribution, SolveReport, Solver, TorsionCase};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

mod table1;

#[derive(Parser)]
#[command(name = "helpx", version, about = "Torsion units in group rings: constraint solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the surviving partial-augmentation towers for one order
    Solve(SolveArgs),
    /// Check an explicit group-ring element against the surviving towers
    VerifyUnit(VerifyUnitArgs),
    /// Run every bundled group over all relevant orders and compare counts
    Table1,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
struct SolveArgs {
    /// Bundled character table id (see fixtures)
    #[arg(long, conflicts_with = "table")]
    group: Option<String>,
    /// Path to a character table JSON file
    #[arg(long)]
    table: Option<PathBuf>,
    /// Order n of the torsion unit
    #[arg(long)]
    order: u32,
    /// Conductor m of the coefficient ring (default: n)
    #[arg(long)]
    conductor: Option<u32>,
    /// Apply the ramified-prime congruence filter (default)
    #[arg(long, overrides_with = "no_wagner")]
    wagner: bool,
    /// Disable the ramified-prime congruence filter
    #[arg(long)]
    no_wagner: bool,
    /// Quotient fusion map JSON files (repeatable)
    #[arg(long)]
    quotient: Vec<PathBuf>,
    /// Add modular constraints at this prime for orders coprime to it
    #[arg(long)]
    brauer: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
struct VerifyUnitArgs {
    /// Path to the unit JSON file
    unit: PathBuf,
    /// Path to a character table JSON file (default: bundled table for the
    /// group id recorded in the unit file)
    #[arg(long)]
    table: Option<PathBuf>,
    /// Path to a permutation-group JSON file (default: bundled)
    #[arg(long)]
    group_fixture: Option<PathBuf>,
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::VerifyUnit(args) => cmd_verify_unit(args),
        Cmd::Table1 => table1::cmd_table1(),
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_table_arg(
    group: &Option<String>,
    table: &Option<PathBuf>,
) -> Result<CharacterTable, String> {
    match (group, table) {
        (_, Some(path)) => {
            let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_table(&bytes).map_err(|e| format!("{}: {e}", path.display()))
        }
        (Some(id), None) => fixtures::load_table(id).map_err(|e| e.to_string()),
        (None, None) => Err("one of --group or --table is required".into()),
    }
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    let table = match load_table_arg(&args.group, &args.table) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let mut solver = Solver::new(table);
    solver.set_wagner(!args.no_wagner);
    solver.set_brauer(args.brauer);
    for path in &args.quotient {
        let bytes = match std::fs::read(path) {
            Ok(b) => b,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        };
        let fusion = match parse_fusion(&bytes) {
            Ok(f) => f,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        };
        let target = match fixtures::load_table(&fusion.target_id) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        solver.add_quotient(fusion, target);
    }
    if args.order == 0 || args.conductor == Some(0) {
        return fail("order and conductor must be at least 1");
    }
    let report = match solver.solve_tower(args.order, args.conductor.unwrap_or(args.order)) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let rendered = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_report_text(&report),
    };
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            return fail(format!("{}: {e}", path.display()));
        }
    } else {
        print!("{rendered}");
    }
    match report.classification {
        Classification::NontrivialSurvivors(_) => ExitCode::from(10),
        Classification::Trivial | Classification::NoSolutions => ExitCode::SUCCESS,
    }
}

fn render_distribution(dist: &PADistribution, names: &[String]) -> String {
    dist.values
        .iter()
        .map(|(c, v)| format!("{}={}", names[*c], v.minimal()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_case(case: &TorsionCase, names: &[String]) -> String {
    case.tower
        .iter()
        .map(|(d, dist)| format!("u^{d}: [{}]", render_distribution(dist, names)))
        .collect::<Vec<_>>()
        .join("  ")
}

fn render_report_text(r: &SolveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "group {}  order {}  conductor {}\n",
        r.group_id, r.order, r.conductor
    ));
    let cls = match &r.classification {
        Classification::Trivial => "trivial (only group-element towers survive)".to_string(),
        Classification::NoSolutions => "no solutions".to_string(),
        Classification::NontrivialSurvivors(k) => format!("{k} nontrivial survivors"),
    };
    out.push_str(&format!("classification: {cls}\n"));
    out.push_str(&format!(
        "eliminated: {} by constraints, {} by congruence, {} by quotient\n",
        r.eliminated.help, r.eliminated.wagner, r.eliminated.quotient
    ));
    out.push_str(&format!("survivors ({}):\n", r.survivors.len()));
    for case in &r.survivors {
        out.push_str(&format!("  {}\n", render_case(case, r.class_names())));
    }
    out
}

fn cmd_verify_unit(args: VerifyUnitArgs) -> ExitCode {
    let bytes = match std::fs::read(&args.unit) {
        Ok(b) => b,
        Err(e) => return fail(format!("{}: {e}", args.unit.display())),
    };
    let group_id = match GroupRingElement::unit_file_group_id(&bytes) {
        Ok(id) => id,
        Err(e) => return fail(e),
    };
    let table = match load_table_arg(&Some(group_id.clone()), &args.table) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let group_bytes = match &args.group_fixture {
        Some(path) => match std::fs::read(path) {
            Ok(b) => b,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
        None => {
            let stem = fixtures::table_file_stem(&group_id).replacen("table_", "group_", 1);
            match fixtures::load_raw(&stem) {
                Ok(b) => b,
                Err(e) => return fail(e),
            }
        }
    };
    let group = match FiniteGroup::from_fixture(&group_bytes, &table) {
        Ok(g) => Arc::new(g),
        Err(e) => return fail(e),
    };
    let unit = match GroupRingElement::from_unit_file(&bytes, group) {
        Ok(u) => u,
        Err(e) => return fail(e),
    };

    println!("unit over {}, ring conductor {}", group_id, unit.ring.conductor);
    let aug = unit.augmentation();
    println!("augmentation: {aug}");
    if aug != helpx::cyclotomic::CycNumber::one() {
        eprintln!("error: unit is not normalized (augmentation != 1)");
        return ExitCode::from(11);
    }
    let n = match unit.element_order(table.exponent) {
        OrderResult::Order(n) => n,
        OrderResult::NotTorsionWithinBound => {
            eprintln!("error: not torsion within order bound {}", table.exponent);
            return ExitCode::from(11);
        }
    };
    println!("order: {n}");

    let names: Vec<String> = table.classes.iter().map(|c| c.name.clone()).collect();
    let mut tower = std::collections::BTreeMap::new();
    for d in divisors(n) {
        let pow = unit.gr_pow(d).expect("power");
        let pa = pow.partial_augmentations(&table, n / d);
        println!("partial augmentations of u^{d}: [{}]", render_distribution(&pa, &names));
        tower.insert(d, pa);
    }

    let mut element_orders: Vec<u32> = table.classes.iter().map(|c| c.element_order).collect();
    element_orders.sort_unstable();
    element_orders.dedup();
    for m in element_orders {
        println!("generalized trace over order-{m} elements: {}", unit.generalized_trace(m));
    }

    for chi in 0..table.irreducibles.len() {
        match unit.eigenvalue_multiplicities(&table, chi, n) {
            Ok(mults) => println!("eigenvalue multiplicities under character {chi}: {mults:?}"),
            Err(e) => return fail(e),
        }
    }

    let solver = Solver::new(table);
    let report = match solver.solve_tower(n, unit.ring.conductor) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let case = TorsionCase { order: n, conductor: report.conductor, tower };
    let key = render_case(&case, &names);
    match report.survivors.iter().position(|c| render_case(c, &names) == key) {
        Some(k) => println!("matches surviving case {} of {}", k + 1, report.survivors.len()),
        None => println!("matches no surviving case"),
    }
    ExitCode::SUCCESS
}
