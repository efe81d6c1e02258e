//! Command-line front end for the algebra engine: square evaluation, normal
//! forms, series, Adem normalization, Dickson invariants, the relation
//! solver, Bockstein pages, and the catalog verification sweep.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage error (bad grammar, unknown names).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sqring::bockstein::{b2_dimensions, run_bss};
use sqring::catalog::{self, format, VerifyOptions};
use sqring::dickson::dickson_generators;
use sqring::groebner::poincare_series;
use sqring::poly::parse_poly;
use sqring::solver::select_nonsplit;
use sqring::steenrod::{adem_normalize, parse_composite, sq};

#[derive(Parser)]
#[command(
    name = "sqring",
    version,
    about = "Exact unstable algebras over the mod-2 Steenrod algebra",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArg {
    /// Catalog entry to work in.
    #[arg(long)]
    algebra: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Sq^i on an element of a catalog algebra.
    Sq {
        /// The index i of the square.
        i: u32,
        /// The element, in the polynomial grammar (e.g. "y7^2*u8 + u15*y7").
        element: String,
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        json: bool,
    },
    /// Reduce an element to its normal form modulo the entry's relations.
    Nf {
        element: String,
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the Poincare series of a catalog algebra.
    Series {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 60)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Normalize a composite of squares into admissible form.
    Adem {
        /// Whitespace-separated composite, outermost first: "Sq2 Sq4"
        /// applies Sq4 first.
        composite: String,
        #[arg(long)]
        json: bool,
    },
    /// Construct Dickson invariants and their Steenrod action.
    Dickson {
        #[arg(long)]
        rank: u32,
        /// Also check invariance under a GL(n, F2) generating set.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Derive the unknown relation coefficients for bsol or g2q.
    SolveCoefficients {
        /// `bsol` or `g2q`.
        which: String,
        #[arg(long)]
        json: bool,
    },
    /// Bockstein spectral sequence operations.
    Bockstein {
        #[command(subcommand)]
        command: BocksteinCommand,
    },
    /// List, show, and verify catalog entries.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum BocksteinCommand {
    /// Second-page dimensions (Sq1-homology) and its tensor factors.
    B2 {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 60)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// The higher-Bockstein table at an odd prime power.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        epsilon: u8,
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        json: bool,
    },
    /// Run the spectral sequence to its terminal page.
    Run {
        #[arg(long)]
        q: u64,
        /// Restrict to one epsilon value (both are run when omitted).
        #[arg(long)]
        epsilon: Option<u8>,
        /// Restrict to one algebra (bsol and bg2q are run when omitted).
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 60)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names and descriptions of all entries.
    List {
        #[arg(long)]
        json: bool,
    },
    /// The presentation of one entry, in the file format.
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification sweep; exit code 1 on any failure.
    Verify {
        /// One entry, or every entry when omitted.
        name: Option<String>,
        #[arg(long, default_value_t = 30)]
        imax: u32,
        #[arg(long, default_value_t = 60)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> sqring::Result<bool> {
    match command {
        Command::Sq {
            i,
            element,
            algebra,
            json,
        } => {
            let entry = catalog::get(&algebra.algebra)?;
            let p = parse_poly(entry.vars(), &element)?;
            let result = sq(i, &p, &entry.presentation)?;
            if json {
                emit(json!({
                    "algebra": entry.name,
                    "i": i,
                    "input": element,
                    "result": result.to_string(),
                }));
            } else {
                println!("{result}");
            }
            Ok(true)
        }
        Command::Nf {
            element,
            algebra,
            json,
        } => {
            let entry = catalog::get(&algebra.algebra)?;
            let p = parse_poly(entry.vars(), &element)?;
            let result = entry.presentation.normal_form(&p);
            if json {
                emit(json!({
                    "algebra": entry.name,
                    "input": element,
                    "result": result.to_string(),
                }));
            } else {
                println!("{result}");
            }
            Ok(true)
        }
        Command::Series {
            algebra,
            max_degree,
            json,
        } => {
            let entry = catalog::get(&algebra.algebra)?;
            let series = poincare_series(entry.presentation.groebner_basis(), max_degree);
            if json {
                emit(json!({
                    "algebra": entry.name,
                    "max_degree": max_degree,
                    "coefficients": series.coeffs(),
                }));
            } else {
                let rendered: Vec<String> = series.coeffs().iter().map(u64::to_string).collect();
                println!("{}", rendered.join(" "));
            }
            Ok(true)
        }
        Command::Adem { composite, json } => {
            let element = parse_composite(&composite)?;
            let normalized = adem_normalize(&element);
            if json {
                emit(json!({
                    "input": composite,
                    "normalized": normalized.to_string(),
                    "admissible": true,
                }));
            } else {
                println!("{normalized}");
            }
            Ok(true)
        }
        Command::Dickson { rank, verify, json } => {
            let sys = dickson_generators(rank)?;
            let vars = sys.invariant_vars();
            let table = sys.action_table()?;
            let invariance = verify.then(|| sys.verify_invariance()).transpose()?;
            if json {
                let generators: Vec<_> = sys
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        json!({
                            "name": vars.name(i),
                            "degree": vars.degree(i),
                            "ambient": g.to_string(),
                        })
                    })
                    .collect();
                let action: Vec<_> = table
                    .iter()
                    .map(|(&(g, i), entry)| {
                        json!({
                            "generator": vars.name(g),
                            "i": i,
                            "value": entry.value.to_string(),
                        })
                    })
                    .collect();
                emit(json!({
                    "rank": rank,
                    "generators": generators,
                    "action": action,
                    "invariance": invariance.as_ref().map(|r| json!({
                        "checks": r.checks.len(),
                        "failures": r.failures,
                    })),
                }));
            } else {
                for (i, g) in sys.generators().iter().enumerate() {
                    println!("{} (degree {}) = {}", vars.name(i), vars.degree(i), g);
                }
                println!("{}", table.render(vars));
                if let Some(report) = &invariance {
                    println!(
                        "invariance: {} checks, {} failures",
                        report.checks.len(),
                        report.failures
                    );
                }
            }
            Ok(invariance.is_none_or(|r| r.passed()))
        }
        Command::SolveCoefficients { which, json } => {
            let name = match which.as_str() {
                "g2q" => "bg2q",
                other => other,
            };
            let entry = catalog::get(name)?;
            let ansatz = entry.relation_ansatz()?;
            let report = ansatz.solve()?;
            let selection = select_nonsplit(&report)?;
            if json {
                emit(json!({
                    "algebra": entry.name,
                    "lhs": ansatz.lhs().to_string(),
                    "unknowns": report.unknowns,
                    "candidates": ansatz.candidate_strings(),
                    "survivors": report.survivors,
                    "trace": report.trace,
                    "selected": selection.selected,
                    "rejected_split": selection.rejected_split,
                    "provenance": selection.provenance,
                }));
            } else {
                println!(
                    "ansatz: {} over {:?}",
                    ansatz.lhs(),
                    ansatz.candidate_strings()
                );
                for step in &report.trace {
                    println!("[{}] {}", step.applied, step.equation);
                    for fact in &step.forced {
                        println!("    => {fact}");
                    }
                }
                for s in &report.survivors {
                    let rendered: Vec<String> = report
                        .unknowns
                        .iter()
                        .zip(s)
                        .map(|(n, &v)| format!("{n}={}", u8::from(v)))
                        .collect();
                    println!("survivor: ({})", rendered.join(", "));
                }
                println!("selected: {:?}", selection.selected);
                println!("provenance: {}", selection.provenance);
            }
            Ok(true)
        }
        Command::Bockstein { command } => run_bockstein(command),
        Command::Catalog { command } => run_catalog(command),
    }
}

fn run_bockstein(command: BocksteinCommand) -> sqring::Result<bool> {
    match command {
        BocksteinCommand::B2 {
            algebra,
            max_degree,
            json,
        } => {
            let entry = catalog::get(&algebra.algebra)?;
            let dims = b2_dimensions(&entry.presentation, max_degree)?;
            let page = entry.b2(max_degree)?;
            if json {
                let factors: Vec<_> = page
                    .factors
                    .iter()
                    .map(|f| {
                        json!({
                            "class": f.name,
                            "degree": f.degree,
                            "kind": format!("{:?}", f.kind),
                        })
                    })
                    .collect();
                emit(json!({
                    "algebra": entry.name,
                    "max_degree": max_degree,
                    "dimensions": dims.coeffs(),
                    "factors": factors,
                }));
            } else {
                let rendered: Vec<String> = dims.coeffs().iter().map(u64::to_string).collect();
                println!("dimensions: {}", rendered.join(" "));
                for f in &page.factors {
                    println!("factor: {:?}[{}] degree {}", f.kind, f.name, f.degree);
                }
            }
            Ok(true)
        }
        BocksteinCommand::Table {
            q,
            epsilon,
            algebra,
            json,
        } => {
            let entry = catalog::get(&algebra.algebra)?;
            let table = entry.bockstein_table(q, epsilon != 0)?;
            if json {
                let entries: Vec<_> = table
                    .entries
                    .iter()
                    .map(|e| {
                        json!({
                            "source": e.source.to_string(),
                            "order": e.order,
                            "target": e.target.to_string(),
                        })
                    })
                    .collect();
                emit(json!({
                    "algebra": entry.name,
                    "q": q,
                    "epsilon": epsilon,
                    "k": table.k,
                    "entries": entries,
                }));
            } else {
                println!("k = nu2(q^2 - 1) = {}", table.k);
                for e in &table.entries {
                    println!("beta_{}({}) = {}", e.order, e.source, e.target);
                }
            }
            Ok(true)
        }
        BocksteinCommand::Run {
            q,
            epsilon,
            algebra,
            max_degree,
            json,
        } => {
            let names = match &algebra {
                Some(name) => vec![name.clone()],
                None => vec!["bsol".to_string(), "bg2q".to_string()],
            };
            let epsilons = match epsilon {
                Some(e) => vec![e != 0],
                None => vec![false, true],
            };
            let mut runs = Vec::new();
            for name in &names {
                let entry = catalog::get(name)?;
                let page2 = entry.b2(max_degree)?;
                for &eps in &epsilons {
                    let table = entry.bockstein_table(q, eps)?;
                    runs.push(run_bss(&page2, &table, max_degree)?);
                }
            }
            if json {
                emit(serde_json::to_value(&runs).expect("serializable"));
            } else {
                for run in &runs {
                    println!(
                        "== {} q={} epsilon={} ==",
                        run.algebra,
                        run.q,
                        u8::from(run.epsilon)
                    );
                    for page in &run.pages {
                        let total: u64 = page.dims.iter().sum();
                        println!("page {}: {:?} (total dim {total})", page.r, page.factors);
                    }
                    println!(
                        "terminal: {:?} (total dim {})",
                        run.terminal_factors,
                        run.terminal_total()
                    );
                    for note in &run.notes {
                        println!("note: {note}");
                    }
                }
            }
            Ok(true)
        }
    }
}

fn run_catalog(command: CatalogCommand) -> sqring::Result<bool> {
    match command {
        CatalogCommand::List { json } => {
            if json {
                let entries: Vec<_> = catalog::names()
                    .iter()
                    .map(|n| {
                        let e = catalog::get(n).expect("listed entry");
                        json!({ "name": e.name, "description": e.description })
                    })
                    .collect();
                emit(json!(entries));
            } else {
                for name in catalog::names() {
                    let entry = catalog::get(&name)?;
                    println!("{name:10} {}", entry.description);
                }
            }
            Ok(true)
        }
        CatalogCommand::Show { name, json } => {
            let entry = catalog::get(&name)?;
            let text = format::write_presentation(
                &entry.name,
                &entry.description,
                &entry.notes,
                &entry.presentation,
            );
            if json {
                emit(json!({
                    "name": entry.name,
                    "description": entry.description,
                    "notes": entry.notes,
                    "presentation": text,
                }));
            } else {
                print!("{text}");
            }
            Ok(true)
        }
        CatalogCommand::Verify {
            name,
            imax,
            max_degree,
            json,
        } => {
            let options = VerifyOptions { imax, max_degree };
            let reports = match name {
                Some(name) => vec![catalog::verify(&name, options)?],
                None => catalog::verify_all(options)?,
            };
            let all_passed = reports.iter().all(|r| r.passed());
            if json {
                emit(serde_json::to_value(&reports).expect("serializable"));
            } else {
                for report in &reports {
                    println!(
                        "== {} : {} ==",
                        report.entry,
                        if report.passed() { "PASS" } else { "FAIL" }
                    );
                    for check in &report.checks {
                        println!(
                            "  [{}] {} - {}",
                            if check.ok { "ok" } else { "FAIL" },
                            check.name,
                            check.detail
                        );
                    }
                }
            }
            Ok(all_passed)
        }
    }
}

fn emit(value: serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("serializable")
    );
}
