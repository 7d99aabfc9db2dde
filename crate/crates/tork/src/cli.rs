//! Command-line entry point: compute Betti tables for complex or module
//! inputs, run check suites, batch-enumerate complexes into JSONL run
//! records, and aggregate those records into reports.
//!
//! Exit codes: `0` success, `1` a proved check suite failed, `2` usage
//! error, `3` input/schema/I-O error, `4` the Hochster oracle disagreed
//! with the Koszul engine. Conjectural-suite failures are findings, not
//! errors, and exit `0`.

use crate::conjectures::{
    check_avramov_buchweitz, check_corner_bounds, check_duality, check_euler,
    check_evans_griffith, check_horrocks, check_parity_bounds, check_toral_rank_zk,
    check_weak_horrocks, PROVED_SUITES,
};
use crate::exactla::{format_rational, Rational};
use crate::grmod::{stanley_reisner, GradedModule};
use crate::hochster::hochster_betti;
use crate::koszul::{betti_table, full_j_max, BettiTable, BoundValue, CheckReport, CheckStatus};
use crate::simplicial::{enumerate_complexes, sample_complexes, SimplicialComplex};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROVED_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

/// Largest vertex count the Hochster oracle accepts (2^m subcomplexes).
const ORACLE_VERTEX_CAP: usize = 12;

#[derive(Parser)]
#[command(
    name = "tork",
    version,
    about = "Exact bigraded Betti tables over Q[v_1..v_m], with check suites and a Hochster-formula oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for tables, check reports, and summaries.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (overrides TORK_JOBS; default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Omit wall-clock timing fields so outputs are byte-reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Cross-check every Betti table against the Hochster-formula oracle
    /// (complex inputs only, at most 12 vertices).
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bigraded Betti table of a complex or module JSON file.
    Betti {
        /// Input file: complex JSON ({"facets", "m"}) or module JSON
        /// ({"m", "levels", "mult"}), auto-detected.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run check suites against the Betti table of the input.
    Check {
        /// Input file (complex or module JSON, auto-detected).
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated suites: horrocks, weak, corners, parity, ab, eg,
        /// trk, duality, euler — or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Enumerate or sample complexes on m vertices; append one RunRecord
    /// per complex to a JSONL file and print a summary.
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "sample"])))]
    Enum {
        /// Number of vertices.
        #[arg(long)]
        m: usize,
        /// Enumerate every complex on m vertices (m <= 5).
        #[arg(long)]
        exhaustive: bool,
        /// Sample complexes at random instead of enumerating.
        #[arg(long)]
        sample: bool,
        /// Number of samples.
        #[arg(long, default_value_t = 100, requires = "sample")]
        count: usize,
        /// RNG seed for sampling.
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
        /// JSONL output path (appended to; created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate a JSONL file of RunRecords into a summary.
    Report {
        /// JSONL file produced by `enum`.
        #[arg(long)]
        input: PathBuf,
    },
}

/// One line of a JSONL batch: everything needed to re-check the result
/// without the original input.
#[derive(Clone, serde::Serialize, serde::Deserialize)]
struct RunRecord {
    input: InputDescriptor,
    /// SHA-256 of the canonical complex JSON.
    hash: String,
    /// The canonical complex itself, so the record is self-contained.
    complex: serde_json::Value,
    /// dim K + 1.
    n: usize,
    betti: BettiTable,
    hrk: u64,
    pd: Option<usize>,
    euler: i64,
    poincare: Vec<u64>,
    checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    wall_ms: Option<u64>,
}

#[derive(Clone, serde::Serialize, serde::Deserialize)]
struct InputDescriptor {
    mode: String,
    m: usize,
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    seed: Option<u64>,
}

enum Input {
    Complex(SimplicialComplex),
    Module(GradedModule),
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn oracle(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_ORACLE,
            message: message.into(),
        }
    }
}

/// Parse arguments from the process environment, run, and return the exit
/// code. Clap itself exits with code 2 on malformed invocations.
pub fn run() -> i32 {
    let cli = Cli::parse();
    if let Err(f) = configure_jobs(cli.jobs) {
        eprintln!("error: {}", f.message);
        return f.code;
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn configure_jobs(flag: Option<usize>) -> Result<(), Failure> {
    let jobs = match flag {
        Some(n) => Some(n),
        None => match std::env::var("TORK_JOBS") {
            Ok(text) => Some(text.parse::<usize>().map_err(|_| {
                Failure::usage(format!("TORK_JOBS must be a positive integer, got {text:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        // A second initialization (e.g. in tests) is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Betti { input } => cmd_betti(input, cli.format, cli.oracle),
        Command::Check { input, suite } => cmd_check(input, suite, cli.format, cli.oracle),
        Command::Enum {
            m,
            exhaustive,
            sample: _,
            count,
            seed,
            out,
        } => cmd_enum(
            *m,
            *exhaustive,
            *count,
            *seed,
            out,
            cli.format,
            cli.oracle,
            cli.no_timestamp,
        ),
        Command::Report { input } => cmd_report(input, cli.format, cli.oracle),
    }
}

fn load_input(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{} is not valid JSON: {e}", path.display())))?;
    let Some(object) = value.as_object() else {
        return Err(Failure::input(format!(
            "{}: expected a JSON object",
            path.display()
        )));
    };
    match (object.contains_key("facets"), object.contains_key("levels")) {
        (true, false) => SimplicialComplex::from_json_str(&text)
            .map(Input::Complex)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        (false, true) => GradedModule::from_json_str(&text)
            .map(Input::Module)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        _ => Err(Failure::input(format!(
            "{}: unrecognized schema — expected a complex object with \"facets\" or a module object with \"levels\"",
            path.display()
        ))),
    }
}

/// The Betti table of an input: for a complex, the table of its
/// Stanley-Reisner ring truncated losslessly at degree m (strand 2j only
/// reads levels <= j); for a module, the full table.
fn table_of_input(input: &Input) -> Result<BettiTable, Failure> {
    match input {
        Input::Complex(k) => {
            let module = stanley_reisner(k, k.vertex_count());
            betti_table(&module, k.vertex_count())
                .map_err(|e| Failure::input(format!("Stanley-Reisner module rejected: {e}")))
        }
        Input::Module(module) => betti_table(module, full_j_max(module))
            .map_err(|e| Failure::input(format!("module rejected: {e}"))),
    }
}

fn table_diff(koszul: &BettiTable, oracle: &BettiTable) -> String {
    let mut keys: Vec<(usize, usize)> = koszul.entries().map(|(key, _)| key).collect();
    keys.extend(oracle.entries().map(|(key, _)| key));
    keys.sort_unstable();
    keys.dedup();
    let mut lines = vec!["Koszul and Hochster tables differ:".to_string()];
    for (i, j) in keys {
        let a = koszul.beta(i, j);
        let b = oracle.beta(i, j);
        if a != b {
            lines.push(format!("  i={i} 2j={}: koszul={a} hochster={b}", 2 * j));
        }
    }
    lines.join("\n")
}

fn oracle_check(complex: &SimplicialComplex, table: &BettiTable) -> Result<(), Failure> {
    if complex.vertex_count() > ORACLE_VERTEX_CAP {
        return Err(Failure::usage(format!(
            "--oracle supports at most {ORACLE_VERTEX_CAP} vertices, got {}",
            complex.vertex_count()
        )));
    }
    let reference =
        hochster_betti(complex).map_err(|e| Failure::input(format!("oracle failed: {e}")))?;
    if &reference == table {
        Ok(())
    } else {
        Err(Failure::oracle(table_diff(table, &reference)))
    }
}

fn cmd_betti(path: &Path, format: Format, oracle: bool) -> Result<i32, Failure> {
    let input = load_input(path)?;
    let table = table_of_input(&input)?;
    if oracle {
        match &input {
            Input::Complex(k) => oracle_check(k, &table)?,
            Input::Module(_) => {
                return Err(Failure::usage(
                    "--oracle applies to complex inputs only (Hochster's formula)",
                ));
            }
        }
    }
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&table).expect("table serializes")
        ),
        Format::Tsv => print!("{}", table.to_tsv()),
    }
    Ok(EXIT_OK)
}

const SUITE_NAMES: [&str; 9] = [
    "horrocks", "weak", "corners", "parity", "ab", "eg", "trk", "duality", "euler",
];

fn parse_suites(list: &str) -> Result<Vec<&'static str>, Failure> {
    let mut requested = Vec::new();
    for raw in list.split(',') {
        let name = raw.trim();
        if name == "all" {
            if list.trim() != "all" {
                return Err(Failure::usage("\"all\" cannot be combined with other suites"));
            }
            return Ok(SUITE_NAMES.to_vec());
        }
        match SUITE_NAMES.iter().find(|s| **s == name) {
            Some(s) => {
                if !requested.contains(s) {
                    requested.push(*s);
                }
            }
            None => {
                return Err(Failure::usage(format!(
                    "unknown suite {name:?}; expected one of {} or all",
                    SUITE_NAMES.join(", ")
                )));
            }
        }
    }
    Ok(requested)
}

/// Placeholder report for the toral-rank suite on raw module inputs, where
/// n = dim K + 1 is not defined.
fn trk_not_applicable() -> CheckReport {
    CheckReport {
        suite: "toral_rank_zk".to_string(),
        params: BTreeMap::from([
            ("applicable".to_string(), serde_json::json!(false)),
            (
                "note".to_string(),
                serde_json::json!("requires a complex input to determine n = dim K + 1"),
            ),
        ]),
        rows: Vec::new(),
        overall: CheckStatus::Na,
    }
}

/// Run one named suite. `explicit` distinguishes a user-requested suite
/// (errors abort) from an "all" sweep (inapplicable suites are skipped
/// with a warning).
fn run_suite(
    name: &str,
    table: &BettiTable,
    input: &Input,
    explicit: bool,
) -> Result<Option<CheckReport>, Failure> {
    let report = match name {
        "horrocks" => check_horrocks(table),
        "weak" => check_weak_horrocks(table),
        "corners" => check_corner_bounds(table),
        "parity" => check_parity_bounds(table),
        "ab" => check_avramov_buchweitz(table),
        "eg" => match check_evans_griffith(table) {
            Ok(report) => report,
            Err(e) => {
                if explicit {
                    return Err(Failure::input(format!("evans_griffith: {e}")));
                }
                eprintln!("warning: skipping evans_griffith: {e}");
                return Ok(None);
            }
        },
        "trk" => match input {
            Input::Complex(k) => {
                check_toral_rank_zk(table, (k.dimension() + 1) as usize)
            }
            Input::Module(_) => trk_not_applicable(),
        },
        "duality" => {
            let module = match input {
                Input::Complex(k) => stanley_reisner(k, k.vertex_count()),
                Input::Module(module) => module.clone(),
            };
            check_duality(&module).map_err(|e| Failure::input(format!("duality: {e}")))?
        }
        "euler" => check_euler(table),
        other => unreachable!("suite {other} validated earlier"),
    };
    Ok(Some(report))
}

fn bound_text(bound: &BoundValue) -> String {
    match bound {
        BoundValue::Int(v) => v.to_string(),
        BoundValue::Ratio(r) => format_rational(r),
    }
}

fn status_text(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Na => "na",
    }
}

fn print_reports(reports: &[CheckReport], format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(reports).expect("reports serialize")
        ),
        Format::Tsv => {
            println!("suite\trow\tlhs\trhs\tstatus");
            for report in reports {
                for row in &report.rows {
                    println!(
                        "{}\t{}\t{}\t{}\t{}",
                        report.suite,
                        row.id,
                        row.lhs,
                        bound_text(&row.rhs),
                        status_text(row.status)
                    );
                }
                println!(
                    "{}\toverall\t\t\t{}",
                    report.suite,
                    status_text(report.overall)
                );
            }
        }
    }
}

fn proved_failure(reports: &[CheckReport]) -> bool {
    reports.iter().any(|report| {
        report.overall == CheckStatus::Fail && PROVED_SUITES.contains(&report.suite.as_str())
    })
}

fn cmd_check(path: &Path, suites: &str, format: Format, oracle: bool) -> Result<i32, Failure> {
    let requested = parse_suites(suites)?;
    let explicit = suites.trim() != "all";
    let input = load_input(path)?;
    let table = table_of_input(&input)?;
    if oracle {
        match &input {
            Input::Complex(k) => oracle_check(k, &table)?,
            Input::Module(_) => {
                return Err(Failure::usage(
                    "--oracle applies to complex inputs only (Hochster's formula)",
                ));
            }
        }
    }
    let mut reports = Vec::new();
    for name in requested {
        if let Some(report) = run_suite(name, &table, &input, explicit)? {
            reports.push(report);
        }
    }
    print_reports(&reports, format);
    for report in &reports {
        eprintln!("{}: {}", report.suite, status_text(report.overall));
    }
    if proved_failure(&reports) {
        Ok(EXIT_PROVED_FAILURE)
    } else {
        Ok(EXIT_OK)
    }
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|byte| format!("{byte:02x}"))
        .collect()
}

/// Compute the full record for one enumerated complex: table, derived
/// stats, and all nine suites.
fn complex_record(
    complex: &SimplicialComplex,
    descriptor: InputDescriptor,
    timing: bool,
) -> Result<RunRecord, Failure> {
    let started = std::time::Instant::now();
    let canonical = complex.canonical_json();
    let m = complex.vertex_count();
    let module = stanley_reisner(complex, m);
    let table = betti_table(&module, m)
        .map_err(|e| Failure::input(format!("Stanley-Reisner module rejected: {e}")))?;
    let n = (complex.dimension() + 1) as usize;
    let mut checks = vec![
        check_horrocks(&table),
        check_weak_horrocks(&table),
        check_corner_bounds(&table),
        check_parity_bounds(&table),
        check_avramov_buchweitz(&table),
    ];
    checks.push(
        check_evans_griffith(&table)
            .expect("Stanley-Reisner tables have beta^{0,0} = 1, never zero"),
    );
    checks.push(check_toral_rank_zk(&table, n));
    checks.push(check_duality(&module).map_err(|e| Failure::input(format!("duality: {e}")))?);
    checks.push(check_euler(&table));
    Ok(RunRecord {
        input: descriptor,
        hash: sha256_hex(&canonical),
        complex: serde_json::from_str(&canonical).expect("canonical JSON parses"),
        n,
        hrk: table.hrk(),
        pd: table.projective_dimension(),
        euler: table.euler_characteristic(),
        poincare: table.poincare_vector(),
        betti: table,
        checks,
        wall_ms: timing.then(|| started.elapsed().as_millis() as u64),
    })
}

/// hrk / 2^{m-n} as an exact rational.
fn hrk_ratio(record: &RunRecord) -> Rational {
    let m = record.input.m;
    Rational::new(
        record.hrk.into(),
        num::BigInt::from(1u8) << (m - record.n),
    )
}

#[derive(Default, Clone, serde::Serialize)]
struct SuiteTally {
    pass: u64,
    fail: u64,
    na: u64,
}

fn tally_suites(records: &[RunRecord]) -> BTreeMap<String, SuiteTally> {
    let mut tallies: BTreeMap<String, SuiteTally> = BTreeMap::new();
    for record in records {
        for report in &record.checks {
            let tally = tallies.entry(report.suite.clone()).or_default();
            match report.overall {
                CheckStatus::Pass => tally.pass += 1,
                CheckStatus::Fail => tally.fail += 1,
                CheckStatus::Na => tally.na += 1,
            }
        }
    }
    tallies
}

/// Minimum hrk / 2^{m-n} over the records, with the hashes achieving it
/// (capped at 10 for display).
fn min_ratio_summary(records: &[RunRecord]) -> Option<(Rational, Vec<String>, usize)> {
    let min = records.iter().map(hrk_ratio).min()?;
    let hashes: Vec<String> = records
        .iter()
        .filter(|r| hrk_ratio(r) == min)
        .map(|r| r.hash.clone())
        .collect();
    let total = hashes.len();
    Some((min, hashes.into_iter().take(10).collect(), total))
}

#[allow(clippy::too_many_arguments)]
fn cmd_enum(
    m: usize,
    exhaustive: bool,
    count: usize,
    seed: u64,
    out: &Path,
    format: Format,
    oracle: bool,
    no_timestamp: bool,
) -> Result<i32, Failure> {
    if oracle && m > ORACLE_VERTEX_CAP {
        return Err(Failure::usage(format!(
            "--oracle supports at most {ORACLE_VERTEX_CAP} vertices, got {m}"
        )));
    }
    // Open before computing anything: an unwritable path must abort early.
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .map_err(|e| Failure::input(format!("cannot open {}: {e}", out.display())))?;
    let complexes: Vec<SimplicialComplex> = if exhaustive {
        enumerate_complexes(m)
            .map_err(|e| Failure::usage(format!("exhaustive enumeration: {e}")))?
            .collect()
    } else {
        sample_complexes(m, count, seed)
            .map_err(|e| Failure::usage(format!("sampling: {e}")))?
            .collect()
    };
    let mode = if exhaustive { "exhaustive" } else { "sample" };
    let records: Vec<Result<RunRecord, Failure>> = complexes
        .par_iter()
        .enumerate()
        .map(|(index, complex)| {
            complex_record(
                complex,
                InputDescriptor {
                    mode: mode.to_string(),
                    m,
                    index,
                    seed: (!exhaustive).then_some(seed),
                },
                !no_timestamp,
            )
        })
        .collect();
    let mut written = Vec::with_capacity(records.len());
    for record in records {
        written.push(record?);
    }
    let mut buffer = String::new();
    for record in &written {
        buffer.push_str(&serde_json::to_string(record).expect("record serializes"));
        buffer.push('\n');
    }
    file.write_all(buffer.as_bytes())
        .and_then(|_| file.flush())
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", out.display())))?;
    drop(file);

    if oracle {
        for record in &written {
            let complex = SimplicialComplex::from_json_str(&record.complex.to_string())
                .expect("embedded complex parses");
            oracle_check(&complex, &record.betti)?;
        }
    }

    let tallies = tally_suites(&written);
    let min_ratio = min_ratio_summary(&written);
    let failed = written.iter().any(|r| proved_failure(&r.checks));
    match format {
        Format::Json => {
            let mut summary = serde_json::json!({
                "mode": mode,
                "m": m,
                "records": written.len(),
                "out": out.display().to_string(),
                "suites": tallies,
                "proved_failures": failed,
            });
            if let Some((ratio, hashes, total)) = &min_ratio {
                summary["min_hrk_ratio"] = serde_json::json!(format_rational(ratio));
                summary["min_hrk_ratio_count"] = serde_json::json!(total);
                summary["min_hrk_ratio_hashes"] = serde_json::json!(hashes);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            );
        }
        Format::Tsv => {
            println!("records\t{}", written.len());
            for (suite, tally) in &tallies {
                println!("suite\t{suite}\t{}\t{}\t{}", tally.pass, tally.fail, tally.na);
            }
            if let Some((ratio, hashes, total)) = &min_ratio {
                println!("min_hrk_ratio\t{}", format_rational(ratio));
                println!("min_hrk_ratio_count\t{total}");
                for hash in hashes {
                    println!("min_hrk_ratio_hash\t{hash}");
                }
            }
            println!("proved_failures\t{failed}");
        }
    }
    if failed {
        Ok(EXIT_PROVED_FAILURE)
    } else {
        Ok(EXIT_OK)
    }
}

fn cmd_report(path: &Path, format: Format, oracle: bool) -> Result<i32, Failure> {
    let file = std::fs::File::open(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let mut records = Vec::new();
    let mut skipped = 0usize;
    for line in std::io::BufReader::new(file).lines() {
        let line = line.map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RunRecord>(&line) {
            Ok(record) => records.push(record),
            Err(_) => skipped += 1,
        }
    }
    if skipped > 0 {
        eprintln!("warning: skipped {skipped} corrupt line(s)");
    }

    let mut oracle_summary = None;
    if oracle {
        let mut checked = 0usize;
        let mut oracle_skipped = 0usize;
        for record in &records {
            let complex = SimplicialComplex::from_json_str(&record.complex.to_string())
                .map_err(|e| Failure::input(format!("record {}: {e}", record.hash)))?;
            if complex.vertex_count() > ORACLE_VERTEX_CAP {
                oracle_skipped += 1;
                continue;
            }
            oracle_check(&complex, &record.betti)?;
            checked += 1;
        }
        oracle_summary = Some((checked, oracle_skipped));
    }

    let mut hrk_distribution: BTreeMap<u64, u64> = BTreeMap::new();
    let mut pd_distribution: BTreeMap<String, u64> = BTreeMap::new();
    for record in &records {
        *hrk_distribution.entry(record.hrk).or_default() += 1;
        let pd_key = record
            .pd
            .map_or_else(|| "none".to_string(), |pd| pd.to_string());
        *pd_distribution.entry(pd_key).or_default() += 1;
    }
    let tallies = tally_suites(&records);
    let min_ratio = min_ratio_summary(&records);
    let extremal: Vec<serde_json::Value> = match &min_ratio {
        None => Vec::new(),
        Some((ratio, _, _)) => records
            .iter()
            .filter(|r| hrk_ratio(r) == *ratio)
            .take(10)
            .map(|r| {
                serde_json::json!({
                    "hash": r.hash,
                    "m": r.input.m,
                    "n": r.n,
                    "hrk": r.hrk,
                    "complex": r.complex,
                })
            })
            .collect(),
    };

    match format {
        Format::Json => {
            let mut summary = serde_json::json!({
                "records": records.len(),
                "skipped": skipped,
                "hrk_distribution": hrk_distribution,
                "pd_distribution": pd_distribution,
                "suites": tallies,
                "extremal": extremal,
            });
            if let Some((ratio, _, total)) = &min_ratio {
                summary["min_hrk_ratio"] = serde_json::json!(format_rational(ratio));
                summary["min_hrk_ratio_count"] = serde_json::json!(total);
            }
            if let Some((checked, oracle_skipped)) = oracle_summary {
                summary["oracle"] = serde_json::json!({
                    "checked": checked,
                    "skipped": oracle_skipped,
                    "mismatches": 0,
                });
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            );
        }
        Format::Tsv => {
            println!("records\t{}", records.len());
            println!("skipped\t{skipped}");
            for (hrk, count) in &hrk_distribution {
                println!("hrk\t{hrk}\t{count}");
            }
            for (pd, count) in &pd_distribution {
                println!("pd\t{pd}\t{count}");
            }
            for (suite, tally) in &tallies {
                println!("suite\t{suite}\t{}\t{}\t{}", tally.pass, tally.fail, tally.na);
            }
            if let Some((ratio, _, total)) = &min_ratio {
                println!("min_hrk_ratio\t{}", format_rational(ratio));
                println!("min_hrk_ratio_count\t{total}");
            }
            for value in &extremal {
                println!(
                    "extremal\t{}\t{}\t{}\t{}",
                    value["hash"].as_str().unwrap_or(""),
                    value["m"],
                    value["n"],
                    value["hrk"]
                );
            }
            if let Some((checked, oracle_skipped)) = oracle_summary {
                println!("oracle_checked\t{checked}");
                println!("oracle_skipped\t{oracle_skipped}");
            }
        }
    }
    Ok(EXIT_OK)
}
