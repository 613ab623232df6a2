use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use oarray::array::{row_to_string, verify_strength};
use oarray::bounds::{analyze_array, bound_report, BoundOptions, BoundReportJson};
use oarray::constructions::{
    double_strength, dual_code_oa, even_weight_oa, kerdock, nordstrom_robinson, strength_of,
    sylvester_oa, zero_shorten_at, LinearCode,
};
use oarray::report::{Report, Source};
use oarray::search::{exists_oa, min_rows, SearchOutcomeJson, DEFAULT_BUDGET};
use oarray::table::{min_rows_table, TableCell, TableOptions};
use oarray::{BooleanFunction, Error, SearchOptions, SymbolArray};
use serde_json::json;

#[derive(Parser)]
#[command(name = "oa", version, about = "Orthogonal arrays: verification, bounds, constructions and search")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the strength of an array file (stdin if omitted or "-").
    Verify {
        file: Option<PathBuf>,
        /// Strength to test; without it only the maximum strength is reported.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Simplicity verdict and multiplicity census of a strength-2u array.
    Analyze {
        file: Option<PathBuf>,
        #[arg(long)]
        u: usize,
    },
    /// Lower bounds on the number of rows.
    Bound {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        t: usize,
        /// Also solve the Delsarte LP (s = 2).
        #[arg(long)]
        lp: bool,
        /// Round the best bound up to a multiple of s^t.
        #[arg(long)]
        integrality: bool,
    },
    /// Emit a constructed array in the text format.
    #[command(subcommand)]
    Construct(Construct),
    /// Exhaustive search for (simple) arrays.
    Search(SearchArgs),
    /// Certified intervals for the minimum size of simple binary arrays.
    Table {
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        max_t: usize,
        /// Skip the LP bound.
        #[arg(long)]
        no_lp: bool,
        /// Run exhaustive search on cells with at most this many columns.
        #[arg(long, default_value_t = 0)]
        search_max_k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Correlation-immunity order of a Boolean function.
    Ci {
        file: Option<PathBuf>,
        /// Read the support as an array file instead of a truth table.
        #[arg(long)]
        support: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// OA(2^h, 2^h - 1, 2, 2) from the Sylvester Hadamard matrix.
    Sylvester {
        #[arg(long, default_value_t = 3)]
        h: usize,
    },
    /// All even-weight words of length k.
    EvenWeight {
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// [0|A ; 1|complement(A)] for a simple array A of even strength.
    Double {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Rows with a given symbol in a balanced column, that column removed.
    Shorten {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Column index, counted from 0.
        #[arg(long, default_value_t = 0)]
        col: usize,
        #[arg(long, default_value_t = 0)]
        symbol: u8,
    },
    /// Codewords of the dual of a binary linear code.
    Dual {
        /// Generator file: "dim n" header, then dim rows of n digits.
        #[arg(long)]
        gen: Option<PathBuf>,
    },
    /// The (16, 256) Nordstrom-Robinson code.
    NordstromRobinson,
    /// Kerdock code of length 2^m (m = 4 or 6).
    Kerdock {
        #[arg(long, default_value_t = 4)]
        m: u32,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    s: u8,
    #[arg(long)]
    t: usize,
    /// Decide existence for exactly this many rows.
    #[arg(long, conflicts_with = "max_n", required_unless_present = "max_n")]
    n: Option<usize>,
    /// Smallest row count up to this limit.
    #[arg(long)]
    max_n: Option<usize>,
    /// Require distinct rows.
    #[arg(long)]
    simple: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Print node counts to stderr while searching.
    #[arg(long)]
    progress: bool,
    /// Search on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Failed,
}

struct Outcome {
    report: Report,
    text: String,
    status: Status,
}

impl Outcome {
    fn new(report: Report, text: String) -> Self {
        Outcome {
            report,
            text,
            status: Status::Ok,
        }
    }
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
            Ok(s)
        }
    }
}

fn read_array(path: Option<&Path>) -> anyhow::Result<SymbolArray> {
    Ok(SymbolArray::parse(&read_input(path)?)?)
}

fn source_name(path: Option<&Path>) -> String {
    match path {
        Some(p) if p != Path::new("-") => p.display().to_string(),
        _ => "<stdin>".into(),
    }
}

fn shape(a: &SymbolArray) -> String {
    format!("N = {}, k = {}, s = {}", a.num_rows(), a.num_cols(), a.symbols())
}

fn cmd_verify(file: Option<&Path>, t: Option<usize>) -> anyhow::Result<Outcome> {
    let a = read_array(file)?;
    let name = source_name(file);
    let mut report = Report::new("verify", json!({ "file": name, "t": t }));
    let max = strength_of(&a)?;
    let mut text = format!("{name}: {}\nmax strength: {max}\n", shape(&a));
    report.claim(format!("max strength {max}"), Source::VerifiedFile);
    let mut results = json!({
        "N": a.num_rows(),
        "k": a.num_cols(),
        "s": a.symbols(),
        "max_strength": max,
    });
    let mut status = Status::Ok;
    if let Some(t) = t {
        let r = verify_strength(&a, t)?;
        results["requested_t"] = json!(t);
        results["holds"] = json!(r.holds);
        results["lambda"] = json!(r.lambda.to_string());
        let _ = writeln!(text, "strength {t}: {} (lambda = {})", if r.holds { "holds" } else { "fails" }, r.lambda);
        report.claim(format!("lambda = {}", r.lambda), Source::VerifiedFile);
        if let Some(w) = &r.witness {
            let _ = writeln!(
                text,
                "witness: columns {:?}, tuple {} appears {} times, expected {}",
                w.columns,
                row_to_string(&w.tuple),
                w.observed,
                w.expected
            );
            results["witness"] = json!({
                "columns": w.columns,
                "tuple": row_to_string(&w.tuple),
                "observed": w.observed,
                "expected": w.expected.to_string(),
            });
            report.claim(
                format!("tuple {} appears {} times", row_to_string(&w.tuple), w.observed),
                Source::VerifiedFile,
            );
            status = Status::Failed;
        }
    }
    report.results = results;
    Ok(Outcome { report, text, status })
}

fn cmd_analyze(file: Option<&Path>, u: usize) -> anyhow::Result<Outcome> {
    let a = read_array(file)?;
    let name = source_name(file);
    let an = analyze_array(&a, u)?;
    let v = &an.verdict;
    let mut report = Report::new("analyze", json!({ "file": name, "u": u }));
    report
        .claim(format!("strength {} verified", 2 * u), Source::VerifiedFile)
        .claim(format!("M = {}", v.rao), Source::Bound)
        .claim(format!("rho_max bound {}", v.rho_max_bound), Source::Bound)
        .claim(format!("max multiplicity {}", an.census.max_multiplicity), Source::VerifiedFile);
    report.results = json!({
        "N": a.num_rows(),
        "k": a.num_cols(),
        "s": a.symbols(),
        "strength": 2 * u,
        "M": v.rao.to_string(),
        "verdict": v,
        "simple": an.census.is_simple,
        "distinct_rows": an.census.distinct_count,
        "max_multiplicity": an.census.max_multiplicity,
        "multiplicity_law_holds": an.multiplicity_law_holds,
        "rao_tight": an.rao_tight,
        "boundary_confirmed": an.boundary_confirmed,
        "consistent": an.consistent(),
    });
    let mut text = format!("{name}: {}\nstrength {} verified\n", shape(&a), 2 * u);
    let _ = writeln!(text, "M({},{},{}) = {}", a.num_cols(), a.symbols(), 2 * u, v.rao);
    let _ = writeln!(
        text,
        "{}, {} distinct rows, max multiplicity {} (bound {})",
        if an.census.is_simple { "simple" } else { "not simple" },
        an.census.distinct_count,
        an.census.max_multiplicity,
        v.rho_max_bound
    );
    let _ = writeln!(text, "verdict: {}", serde_json::to_value(v.case)?.as_str().unwrap_or(""));
    if an.rao_tight {
        let _ = writeln!(text, "N = M: Rao-tight");
    }
    if let Some(b) = an.boundary_confirmed {
        let _ = writeln!(text, "two copies of an even-weight translate: {}", if b { "yes" } else { "no" });
    }
    let _ = writeln!(text, "{}", v.details);
    let status = if an.consistent() { Status::Ok } else { Status::Failed };
    if status == Status::Failed {
        let _ = writeln!(text, "INCONSISTENT with the verdict");
    }
    Ok(Outcome { report, text, status })
}

fn cmd_bound(k: usize, s: u32, t: usize, lp: bool, integrality: bool) -> anyhow::Result<Outcome> {
    let r = bound_report(k, s, t, BoundOptions { lp, integrality })?;
    let mut report = Report::new(
        "bound",
        json!({ "k": k, "s": s, "t": t, "lp": lp, "integrality": integrality }),
    );
    let mut text = format!("k = {k}, s = {s}, t = {t}\n");
    if let Some(m) = r.rao {
        let label = if t % 2 == 0 { format!("M({k},{s},{t})") } else { format!("2 M({},2,{})", k - 1, t - 1) };
        let _ = writeln!(text, "rao: {label} = {m}");
        report.claim(format!("rao = {m}"), Source::Bound);
    }
    let _ = writeln!(text, "friedman-bierbrauer: {}", r.friedman_bierbrauer);
    report.claim(format!("friedman-bierbrauer = {}", r.friedman_bierbrauer), Source::Bound);
    if let Some(kh) = r.khalyavin {
        match r.khalyavin_value {
            Some(v) => {
                let _ = writeln!(text, "khalyavin: applies, N >= {v}");
                report.claim(format!("khalyavin = {v}"), Source::Bound);
            }
            None if !kh.applicable => {
                let _ = writeln!(text, "khalyavin: does not apply");
            }
            None => {}
        }
    }
    if let Some(c) = &r.lp {
        let _ = writeln!(text, "lp: {} (lifted to {})", c.optimum, c.integer_bound);
        report.claim(format!("lp = {}", c.optimum), Source::Lp);
    }
    let _ = writeln!(text, "best lower bound: {}", r.best_lower);
    report.claim(format!("best lower bound = {}", r.best_lower), if r.lp.is_some() { Source::Lp } else { Source::Bound });
    if let Some(v) = &r.verdict {
        let _ = writeln!(text, "verdict at N = {}: {}", r.best_lower, serde_json::to_value(v.case)?.as_str().unwrap_or(""));
    }
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
    report.results = serde_json::to_value(BoundReportJson::from(&r))?;
    Ok(Outcome::new(report, text))
}

fn cmd_construct(c: &Construct) -> anyhow::Result<Outcome> {
    let (name, params, a) = match c {
        Construct::Sylvester { h } => ("sylvester", json!({ "h": h }), sylvester_oa(*h)?),
        Construct::EvenWeight { k } => ("even-weight", json!({ "k": k }), even_weight_oa(*k)?),
        Construct::Double { input } => {
            let a = read_array(input.as_deref())?;
            ("double", json!({ "in": source_name(input.as_deref()) }), double_strength(&a)?)
        }
        Construct::Shorten { input, col, symbol } => {
            let a = read_array(input.as_deref())?;
            (
                "shorten",
                json!({ "in": source_name(input.as_deref()), "col": col, "symbol": symbol }),
                zero_shorten_at(&a, *col, *symbol)?,
            )
        }
        Construct::Dual { gen } => {
            let code = LinearCode::parse(&read_input(gen.as_deref())?)?;
            ("dual", json!({ "gen": source_name(gen.as_deref()) }), dual_code_oa(&code)?)
        }
        Construct::NordstromRobinson => ("nordstrom-robinson", json!({}), nordstrom_robinson()?),
        Construct::Kerdock { m } => ("kerdock", json!({ "m": m }), kerdock(*m)?),
    };
    let t = strength_of(&a)?;
    let simple = a.is_simple();
    let header = format!(
        "# {name}: OA({},{},{},{t}){}\n",
        a.num_rows(),
        a.num_cols(),
        a.symbols(),
        if simple { ", simple" } else { "" }
    );
    let body = a.to_text()?;
    let mut report = Report::new("construct", json!({ "kind": name, "params": params }));
    report
        .claim(format!("N = {}", a.num_rows()), Source::Construction)
        .claim(format!("strength {t} verified"), Source::Construction);
    report.results = json!({
        "N": a.num_rows(),
        "k": a.num_cols(),
        "s": a.symbols(),
        "strength": t,
        "simple": simple,
        "array": body,
    });
    Ok(Outcome::new(report, header + &body))
}

fn cmd_search(args: &SearchArgs) -> anyhow::Result<Outcome> {
    let mut opts = SearchOptions {
        budget: args.budget,
        parallel: !args.sequential,
        ..SearchOptions::default()
    };
    if args.progress {
        opts.progress = Some(Arc::new(|n| eprintln!("oa: {n} nodes")));
    }
    let inputs = json!({
        "k": args.k, "s": args.s, "t": args.t, "n": args.n, "max_n": args.max_n,
        "simple": args.simple, "budget": args.budget,
    });
    let what = if args.simple { "simple OA" } else { "OA" };
    let mut report = Report::new("search", inputs);
    let mut text = String::new();
    if let Some(n) = args.n {
        let o = exists_oa(n, args.k, args.s, args.t, args.simple, &opts)?;
        let params = format!("({n},{},{},{})", args.k, args.s, args.t);
        match &o.found {
            Some(a) => {
                let _ = writeln!(text, "found {what}{params}:");
                text.push_str(&a.to_text()?);
                report.claim(format!("{what}{params} exists"), Source::Search);
            }
            None => {
                let _ = writeln!(text, "no {what}{params}: exhausted after {} nodes", o.nodes_visited);
                if let Some(r) = &o.reason {
                    let _ = writeln!(text, "reason: {r}");
                }
                report.claim(format!("no {what}{params}"), Source::Search);
            }
        }
        for s in &o.symmetry_assumptions {
            let _ = writeln!(text, "assumed: {s}");
        }
        report.results = serde_json::to_value(SearchOutcomeJson::from(&o))?;
    } else {
        let limit = args.max_n.ok_or_else(|| anyhow!("one of --n or --max-n is required"))?;
        let r = min_rows(args.k, args.s, args.t, args.simple, limit, &opts)?;
        for o in &r.exhausted {
            let _ = writeln!(text, "N = {}: exhausted after {} nodes", o.n, o.nodes_visited);
            report.claim(format!("no {what} with N = {}", o.n), Source::Search);
        }
        match (&r.value, &r.array) {
            (Some(n), Some(a)) => {
                let _ = writeln!(text, "minimum N = {n}:");
                text.push_str(&a.to_text()?);
                report.claim(format!("{what} with N = {n} exists"), Source::Search);
            }
            _ => {
                let _ = writeln!(text, "no {what} with N <= {limit}");
            }
        }
        let certs: Vec<SearchOutcomeJson> = r.exhausted.iter().map(Into::into).collect();
        report.results = json!({
            "min_rows": r.value,
            "array": r.array.as_ref().map(|a| a.to_text()).transpose()?,
            "exhausted": certs,
        });
    }
    Ok(Outcome::new(report, text))
}

fn render_cell(c: &TableCell) -> String {
    match (c.resolved, c.upper) {
        (true, _) => c.lower.to_string(),
        (false, Some(u)) => format!("[{},{u}]", c.lower),
        (false, None) => format!("[{},?]", c.lower),
    }
}

fn cmd_table(max_k: usize, max_t: usize, lp: bool, search_max_k: usize, budget: u64) -> anyhow::Result<Outcome> {
    let opts = TableOptions {
        lp,
        search_max_k,
        search: SearchOptions {
            budget,
            ..SearchOptions::default()
        },
    };
    let cells = min_rows_table(max_k, max_t, &opts)?;
    let mut report = Report::new(
        "table",
        json!({ "max_k": max_k, "max_t": max_t, "lp": lp, "search_max_k": search_max_k }),
    );
    for c in &cells {
        report.provenance.extend(c.provenance.iter().cloned());
    }
    report.results = json!({ "cells": cells });

    let width = cells.iter().map(|c| render_cell(c).len()).max().unwrap_or(1).max(4);
    let mut text = format!("{:>4}", "k\\t");
    for t in 1..=max_t {
        let _ = write!(text, " {t:>width$}");
    }
    text.push('\n');
    for k in 1..=max_k {
        let mut line = format!("{k:>4}");
        for t in 1..=max_t {
            let cell = cells.iter().find(|c| c.k == k && c.t == t).map(render_cell).unwrap_or_default();
            let _ = write!(line, " {cell:>width$}");
        }
        text.push_str(line.trim_end());
        text.push('\n');
    }
    let open = cells.iter().filter(|c| !c.resolved).count();
    let _ = writeln!(text, "{} resolved, {open} open ([lower,upper])", cells.len() - open);
    Ok(Outcome::new(report, text))
}

fn cmd_ci(file: Option<&Path>, support: bool) -> anyhow::Result<Outcome> {
    let input = read_input(file)?;
    let f = if support {
        BooleanFunction::oa_to_support(&SymbolArray::parse(&input)?)?
    } else {
        BooleanFunction::parse(&input)?
    };
    let order = f.ci_order()?;
    let name = source_name(file);
    let mut report = Report::new("ci", json!({ "file": name, "support": support }));
    report.claim(format!("ci order {order}"), Source::VerifiedFile);
    report.results = json!({ "k": f.num_vars(), "weight": f.weight(), "ci_order": order });
    let text = format!("{name}: k = {}, weight {}\nci order: {order}\n", f.num_vars(), f.weight());
    Ok(Outcome::new(report, text))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Verify { file, t } => cmd_verify(file.as_deref(), *t),
        Command::Analyze { file, u } => cmd_analyze(file.as_deref(), *u),
        Command::Bound { k, s, t, lp, integrality } => cmd_bound(*k, *s, *t, *lp, *integrality),
        Command::Construct(c) => cmd_construct(c),
        Command::Search(args) => cmd_search(args),
        Command::Table { max_k, max_t, no_lp, search_max_k, budget } => {
            if *max_t > *max_k {
                bail!("--max-t must not exceed --max-k");
            }
            cmd_table(*max_k, *max_t, !no_lp, *search_max_k, *budget)
        }
        Command::Ci { file, support } => cmd_ci(file.as_deref(), *support),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::Verification(_) | Error::InsufficientStrength { .. } | Error::NotSimple { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let printed = if cli.json {
                serde_json::to_string_pretty(&out.report).map(|s| s + "\n").unwrap_or_default()
            } else {
                out.text
            };
            let mut stdout = io::stdout().lock();
            if stdout.write_all(printed.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("oa: error: {msg}");
            ExitCode::from(exit_code(&e))
        }
    }
}
