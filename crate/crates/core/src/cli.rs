//! Command-line front end. `run` parses arguments, writes to the given
//! streams and returns the exit status; `main` only forwards it.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::blowup::{replay, Construction, ReplayReport, DEFAULT_REPLAYS};
use crate::bounds::{
    applicable_bounds, check_scenario, parse_fixtures, verify_fixture_cases, DiagramKind,
    FixtureLedger, Kappa, ScenarioRecord, DEFAULT_SCENARIOS,
};
use crate::discrepancy::{contracted_degree, discrepancies, end_discrepancies, IncidenceProfile};
use crate::hj::{hj_eval, hj_expand, Chain, CyclicQuotient};
use crate::invariants::{structural_identity_check, StructuralCheck};
use crate::tchain::{
    canonical_orientation, classify, dedupe_reversals, enumerate_tchains, verify_fibonacci_bound,
    CatalogRecord, ChainClass,
};
use crate::{Error, Result};

pub const FIXTURES_ENV: &str = "TSING_FIXTURES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    VerificationFailure,
    InputError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::VerificationFailure => 1,
            ExitStatus::InputError => 2,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            ExitStatus::Success
        } else {
            ExitStatus::VerificationFailure
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "tsing", version, about = "Exact computations with T-singularities")]
struct Cli {
    /// Structured JSON output instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hirzebruch-Jung expansion of m/q.
    Hj { fraction: String },
    /// Evaluate a chain "[b1,...,br]" to m/q.
    Eval { chain: String },
    /// Classify a chain as du Val, T-chain or neither.
    Recognize { chain: String },
    /// List the T-chains with given d and k = r - d.
    Enumerate {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u32,
        /// Keep one chain per reversal pair.
        #[arg(long)]
        dedupe: bool,
        /// Also write catalog records to this file, one JSON object per line.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Discrepancies of the contraction of a chain.
    Discrepancies { chain: String },
    /// Canonical degree of the image of a curve meeting the chain.
    Kwdeg {
        chain: String,
        /// Comma-separated 1-based positions with multiplicities, "i:mult,...".
        #[arg(long)]
        meets: String,
        /// K_X-degree of the curve.
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        kx: i64,
    },
    /// Length bounds, or a full inequality ledger when a chain is given.
    Bound(BoundArgs),
    /// Batch verification.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Replay a construction document.
    Replay { file: PathBuf },
    /// Write the reversal-deduplicated catalog of T-chains with d' <= D and k' <= K.
    Catalog {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Kodaira dimension of S; required when K_S is nef.
    #[arg(long)]
    kappa: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    kw2: i64,
    #[arg(long, allow_hyphen_values = true)]
    ks2: i64,
    /// K_S·π(C).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    lambda: i64,
    /// none, I or II.
    #[arg(long, default_value = "none")]
    diagram: String,
    /// Length of the leading (-2)-block of a type II diagram.
    #[arg(long)]
    s: Option<u64>,
    /// α with Γ² = -α in a type II diagram; does not enter the bounds.
    #[arg(long, default_value_t = 3)]
    alpha: i64,
    #[arg(long)]
    not_nef: bool,
    /// Check this chain; m is inferred from K_S² - m + r - d + 1 = K_W².
    #[arg(long)]
    chain: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Max index n against Fibonacci numbers over enumerated T-chains.
    Fibonacci {
        #[arg(long, default_value_t = 4)]
        max_d: u64,
        #[arg(long, default_value_t = 12)]
        max_k: u32,
    },
    /// End discrepancies, through-ends degree and the structural identity.
    Identities {
        #[arg(long, default_value_t = 4)]
        max_d: u64,
        #[arg(long, default_value_t = 10)]
        max_k: u32,
    },
    /// Classification fixtures and replay scripts.
    Fixtures,
}

/// Parses `argv` (including the program name) and runs the command against
/// stdout and stderr.
pub fn run<I, T>(argv: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return ExitStatus::Success;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{first}");
            return ExitStatus::InputError;
        }
    };
    match dispatch(&cli, out) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::InputError
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::input(format!("i/o error: {e}"))
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::input(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<ExitStatus> {
    let json = cli.json;
    macro_rules! say {
        ($($t:tt)*) => { writeln!(out, $($t)*).map_err(io)? };
    }
    match &cli.command {
        Command::Hj { fraction } => {
            let x: CyclicQuotient = fraction.parse()?;
            let c = hj_expand(&x);
            if json {
                emit_json(out, &json!({"order": x.order().to_string(), "weight": x.weight().to_string(), "chain": c}))?;
            } else {
                say!("{c}");
            }
        }
        Command::Eval { chain } => {
            let c: Chain = chain.parse()?;
            let x = hj_eval(&c);
            if json {
                emit_json(out, &json!({"chain": c, "order": x.order().to_string(), "weight": x.weight().to_string()}))?;
            } else {
                say!("{x}");
            }
        }
        Command::Recognize { chain } => {
            let c: Chain = chain.parse()?;
            recognize(&c, json, out)?;
        }
        Command::Enumerate { d, k, dedupe, jsonl } => {
            let mut chains = enumerate_tchains(*d, *k)?;
            if *dedupe {
                chains = dedupe_reversals(&chains);
            }
            let records = chains.iter().map(CatalogRecord::from_chain).collect::<Result<Vec<_>>>()?;
            if let Some(path) = jsonl {
                write_jsonl(path, &records)?;
            }
            if json {
                emit_json(out, &records)?;
            } else {
                for c in &chains {
                    say!("{c}");
                }
            }
        }
        Command::Discrepancies { chain } => {
            let c: Chain = chain.parse()?;
            let mu = discrepancies(&c);
            if json {
                let v: Vec<String> = mu.values().iter().map(ToString::to_string).collect();
                emit_json(out, &json!({"chain": c, "discrepancies": v}))?;
            } else {
                say!("{mu}");
            }
        }
        Command::Kwdeg { chain, meets, kx } => {
            let c: Chain = chain.parse()?;
            let f = IncidenceProfile::new(parse_meets(meets)?, *kx);
            let deg = contracted_degree(&c, &f)?;
            if json {
                emit_json(out, &json!({"chain": c, "meets": f.incidences, "kx": kx, "degree": deg.to_string()}))?;
            } else {
                say!("{deg}");
            }
        }
        Command::Bound(args) => return bound(args, json, out),
        Command::Verify { what } => {
            return match what {
                Verify::Fibonacci { max_d, max_k } => verify_fibonacci(*max_d, *max_k, json, out),
                Verify::Identities { max_d, max_k } => verify_identities(*max_d, *max_k, json, out),
                Verify::Fixtures => verify_fixtures(json, out),
            }
        }
        Command::Replay { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", file.display())))?;
            let report = replay(&Construction::parse(&text)?)?;
            if json {
                emit_json(out, &report)?;
            } else {
                print_replay(&report, out)?;
            }
            return Ok(ExitStatus::from_pass(report.passed()));
        }
        Command::Catalog { d, k, out: path } => {
            let mut all = BTreeSet::new();
            for dd in 1..=*d {
                for kk in 0..=*k {
                    all.extend(enumerate_tchains(dd, kk)?.iter().map(canonical_orientation));
                }
            }
            let mut records = all.iter().map(CatalogRecord::from_chain).collect::<Result<Vec<_>>>()?;
            records.sort_by(|a, b| (a.d, a.k, &a.chain).cmp(&(b.d, b.k, &b.chain)));
            write_jsonl(path, &records)?;
            if json {
                emit_json(out, &json!({"records": records.len(), "path": path}))?;
            } else {
                say!("wrote {} records to {}", records.len(), path.display());
            }
        }
    }
    Ok(ExitStatus::Success)
}

fn write_jsonl(path: &Path, records: &[CatalogRecord]) -> Result<()> {
    let mut buf = String::new();
    for r in records {
        buf.push_str(&serde_json::to_string(r).map_err(|e| Error::input(e.to_string()))?);
        buf.push('\n');
    }
    fs::write(path, buf).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn parse_meets(s: &str) -> Result<Vec<(usize, u64)>> {
    s.split(',')
        .map(|item| {
            let (i, m) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::input(format!("expected i:mult, got {item:?}")))?;
            let i = i.trim().parse().map_err(|_| Error::input(format!("bad position {i:?}")))?;
            let m = m.trim().parse().map_err(|_| Error::input(format!("bad multiplicity {m:?}")))?;
            Ok((i, m))
        })
        .collect()
}

fn recognize(c: &Chain, json: bool, out: &mut dyn Write) -> Result<()> {
    let x = hj_eval(c);
    let rev = x.inverse_weight();
    let class = classify(c);
    if json {
        let mut v = json!({
            "chain": c,
            "order": x.order().to_string(),
            "weight": x.weight().to_string(),
            "reverse_weight": rev.weight().to_string(),
        });
        match &class {
            ChainClass::TChain(p) => {
                v["class"] = "t_chain".into();
                v["d"] = p.d().into();
                v["n"] = p.n().to_string().into();
                v["a"] = p.a().to_string().into();
            }
            ChainClass::DuVal(r) => {
                v["class"] = "du_val".into();
                v["r"] = (*r).into();
            }
            ChainClass::NotT => v["class"] = "not_t".into(),
        }
        return emit_json(out, &v);
    }
    let line = match &class {
        ChainClass::TChain(p) => format!(
            "T-chain: d={} n={} a={} (order {}, weight {}); reverse is 1/{}(1,{})",
            p.d(),
            p.n(),
            p.a(),
            x.order(),
            x.weight(),
            rev.order(),
            rev.weight()
        ),
        ChainClass::DuVal(r) => format!("du Val A_{r}: 1/{}(1,{})", x.order(), x.weight()),
        ChainClass::NotT => format!("not a T-chain: 1/{}(1,{})", x.order(), x.weight()),
    };
    writeln!(out, "{line}").map_err(io)
}

fn bound(a: &BoundArgs, json: bool, out: &mut dyn Write) -> Result<ExitStatus> {
    let kappa = a.kappa.map(Kappa::from_int).transpose()?;
    let diagram = match a.diagram.as_str() {
        "none" => DiagramKind::NoLong,
        "I" | "i" => DiagramKind::TypeI,
        "II" | "ii" => {
            let s = a.s.ok_or_else(|| Error::input("--diagram II needs --s"))?;
            DiagramKind::type_ii(s, -a.alpha)?
        }
        other => return Err(Error::input(format!("--diagram must be none, I or II, got {other:?}"))),
    };
    let ks_nef = !a.not_nef;
    let Some(chain) = &a.chain else {
        let values = applicable_bounds(kappa, ks_nef, a.kw2, a.ks2, a.lambda, &diagram)?;
        if json {
            emit_json(out, &values)?;
        } else {
            for v in values {
                writeln!(out, "{}: r-d <= {}", v.name, v.value).map_err(io)?;
            }
        }
        return Ok(ExitStatus::Success);
    };
    let chain: Chain = chain.parse()?;
    let d = classify(&chain)
        .tparams()
        .ok_or_else(|| Error::input(format!("{chain} is not a T-chain")))?
        .d() as i64;
    let m = a.ks2 + chain.len() as i64 - d + 1 - a.kw2;
    let m = u64::try_from(m).map_err(|_| {
        Error::input(format!("K_S² = {} and K_W² = {} would need m = {m} < 0 blow-ups", a.ks2, a.kw2))
    })?;
    let ledger = check_scenario(&ScenarioRecord {
        kappa,
        ks_nef,
        ks2: a.ks2,
        kw2: a.kw2,
        lambda: a.lambda,
        diagram,
        chain,
        m,
    })?;
    if json {
        emit_json(out, &json!({"m": m, "ledger": ledger, "pass": ledger.passed()}))?;
    } else {
        writeln!(out, "m={m} r={} d={}", ledger.r, ledger.d).map_err(io)?;
        for e in &ledger.entries {
            writeln!(out, "{e}").map_err(io)?;
        }
    }
    Ok(ExitStatus::from_pass(ledger.passed()))
}

fn verify_fibonacci(max_d: u64, max_k: u32, json: bool, out: &mut dyn Write) -> Result<ExitStatus> {
    let mut reports = Vec::new();
    for d in 1..=max_d {
        for k in 0..=max_k {
            reports.push(verify_fibonacci_bound(d, k)?);
        }
    }
    let pass = reports.iter().all(|r| r.passed());
    if json {
        emit_json(out, &json!({"pass": pass, "table": reports}))?;
    } else {
        for r in &reports {
            let form = match r.extremal_form {
                Some(true) => " extremal form",
                Some(false) => " NOT extremal form",
                None => "",
            };
            writeln!(
                out,
                "d={} k={:>2} chains={:>5} max n={:>4} F_k={:>4} {}{}{} {}",
                r.d,
                r.k,
                r.chains,
                r.max_index,
                r.fibonacci,
                if r.bound_holds { "ok" } else { "VIOLATED" },
                if r.attained { ", attained" } else { "" },
                form,
                r.maximizers.join(" ")
            )
            .map_err(io)?;
        }
        writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).map_err(io)?;
    }
    Ok(ExitStatus::from_pass(pass))
}

#[derive(Serialize)]
struct IdentityRow {
    d: u64,
    k: u32,
    chains: usize,
    end_formula_holds: usize,
    through_ends_zero: usize,
    structural_applicable: usize,
    structural_holds: usize,
    failures: Vec<String>,
}

fn verify_identities(max_d: u64, max_k: u32, json: bool, out: &mut dyn Write) -> Result<ExitStatus> {
    let mut rows = Vec::new();
    for d in 1..=max_d {
        for k in 0..=max_k {
            let chains = enumerate_tchains(d, k)?;
            let mut row = IdentityRow {
                d,
                k,
                chains: chains.len(),
                end_formula_holds: 0,
                through_ends_zero: 0,
                structural_applicable: 0,
                structural_holds: 0,
                failures: vec![],
            };
            for c in &chains {
                match end_discrepancies(c) {
                    Some(e) if e.holds() => row.end_formula_holds += 1,
                    _ => row.failures.push(format!("{c}: end discrepancies")),
                }
                let deg = contracted_degree(c, &IncidenceProfile::minus_one_through_ends(c.len()))?;
                if num_traits::Zero::is_zero(&deg) {
                    row.through_ends_zero += 1;
                } else {
                    row.failures.push(format!("{c}: through-ends degree {deg}"));
                }
                match structural_identity_check(c) {
                    StructuralCheck::Pass { .. } => {
                        row.structural_applicable += 1;
                        row.structural_holds += 1;
                    }
                    StructuralCheck::Fail { .. } => {
                        row.structural_applicable += 1;
                        row.failures.push(format!("{c}: structural identity"));
                    }
                    StructuralCheck::NotApplicable => {}
                }
            }
            rows.push(row);
        }
    }
    let pass = rows.iter().all(|r| r.failures.is_empty());
    if json {
        emit_json(out, &json!({"pass": pass, "table": rows}))?;
    } else {
        for r in &rows {
            writeln!(
                out,
                "d={} k={:>2} chains={:>5} ends={} through-ends={} structural={}/{}",
                r.d, r.k, r.chains, r.end_formula_holds, r.through_ends_zero, r.structural_holds, r.structural_applicable
            )
            .map_err(io)?;
            for f in &r.failures {
                writeln!(out, "  FAIL {f}").map_err(io)?;
            }
        }
        writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).map_err(io)?;
    }
    Ok(ExitStatus::from_pass(pass))
}

/// Scenario and replay documents, from `$TSING_FIXTURES` when set and the
/// built-in copies otherwise.
pub fn load_fixture_documents() -> Result<(String, Vec<(String, String)>)> {
    let Some(dir) = std::env::var_os(FIXTURES_ENV) else {
        let replays = DEFAULT_REPLAYS
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect();
        return Ok((DEFAULT_SCENARIOS.to_string(), replays));
    };
    let dir = PathBuf::from(dir);
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|e| Error::input(format!("cannot read {}: {e}", p.display())))
    };
    let scenarios = read(&dir.join("scenarios.json"))?;
    let mut replays = Vec::new();
    let rdir = dir.join("replays");
    if rdir.is_dir() {
        let mut paths: Vec<PathBuf> = fs::read_dir(&rdir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            replays.push((name, read(&p)?));
        }
    }
    Ok((scenarios, replays))
}

#[derive(Serialize)]
struct FixtureReport {
    pass: bool,
    scenarios: FixtureLedger,
    replays: Vec<(String, ReplayReport)>,
}

fn verify_fixtures(json: bool, out: &mut dyn Write) -> Result<ExitStatus> {
    let (scenarios, replay_docs) = load_fixture_documents()?;
    let ledger = verify_fixture_cases(&parse_fixtures(&scenarios)?);
    let mut replays = Vec::new();
    for (name, text) in replay_docs {
        let doc = Construction::parse(&text).map_err(|e| Error::input(format!("{name}: {e}")))?;
        let report = replay(&doc).map_err(|e| Error::input(format!("{name}: {e}")))?;
        replays.push((name, report));
    }
    let pass = ledger.passed() && replays.iter().all(|(_, r)| r.passed());
    if json {
        emit_json(out, &FixtureReport { pass, scenarios: ledger, replays })?;
    } else {
        for v in &ledger.verdicts {
            writeln!(out, "{}", v.summary).map_err(io)?;
            for c in v.checks.iter().filter(|c| !c.pass) {
                writeln!(out, "  {}: {}", c.name, c.detail).map_err(io)?;
            }
        }
        for (name, r) in &replays {
            write!(out, "replay {name}: ").map_err(io)?;
            print_replay(r, out)?;
        }
        writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).map_err(io)?;
    }
    Ok(ExitStatus::from_pass(pass))
}

fn print_replay(r: &ReplayReport, out: &mut dyn Write) -> Result<()> {
    let chain = Chain::new(r.chain.clone())?;
    let kw2 = r.kw2.map_or("-".to_string(), |k| k.to_string());
    let mut line = format!(
        "{} {} m={} K_W²={kw2} λ={} Σe_i·ΣC={}",
        chain, r.classification, r.m, r.lambda, r.exceptional_sum
    );
    if let Some(f) = &r.designated {
        line.push_str(&format!(" φ({})·K_W={}", f.label, f.contracted_degree));
    }
    line.push_str(if r.passed() { " ok" } else { " FAIL" });
    writeln!(out, "{line}").map_err(io)?;
    for c in r.checks.iter().filter(|c| !c.pass) {
        writeln!(out, "  {}: {}", c.name, c.detail).map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("tsing").chain(args.iter().copied());
        let s = run_with(argv, &mut out, &mut err);
        (s.code(), String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn recognize_line() {
        let (code, out, _) = call(&["recognize", "[2,5,3]"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "T-chain: d=1 n=5 a=3 (order 25, weight 14); reverse is 1/25(1,9)");
        let (_, out, _) = call(&["recognize", "[2,4]"]);
        assert!(out.starts_with("not a T-chain"));
    }

    #[test]
    fn hj_and_eval() {
        assert_eq!(call(&["hj", "25/14"]).1.trim(), "[2,5,3]");
        assert_eq!(call(&["eval", "[2,5,3]"]).1.trim(), "25/14");
        assert_eq!(call(&["discrepancies", "[3,5,2]"]).1.trim(), "[-3/5,-4/5,-2/5]");
        assert_eq!(call(&["kwdeg", "[3,5,2]", "--meets", "2:1,3:1"]).1.trim(), "1/5");
    }

    #[test]
    fn input_errors_exit_2() {
        for args in [
            &["hj", "25/0"][..],
            &["eval", "[1,2]"],
            &["recognize", "2,5,3"],
            &["frobnicate"],
            &["enumerate", "--d", "0", "--k", "1"],
            &["kwdeg", "[2,4]", "--meets", "1:1"],
            &["bound", "--kw2", "1", "--ks2", "0"],
        ] {
            let (code, _, err) = call(args);
            assert_eq!(code, 2, "{args:?}");
            assert_eq!(err.trim().lines().count(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn bound_ledger() {
        let (code, out, _) = call(&[
            "bound", "--kappa", "0", "--kw2", "1", "--ks2", "0", "--lambda", "0", "--diagram", "II",
            "--s", "2", "--alpha", "6", "--chain", "[2,2,6,2,4]",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("m=4 r=5 d=1"));
        // r − d = 1 is shorter than 2s = 4.
        let (code, _, _) = call(&[
            "bound", "--kappa", "1", "--kw2", "1", "--ks2", "0", "--lambda", "1", "--diagram", "II",
            "--s", "2", "--chain", "[2,5]",
        ]);
        assert_eq!(code, 1);
        let (code, out, _) = call(&["bound", "--kappa", "0", "--kw2", "1", "--ks2", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("optimal: r-d <= 4"));
    }
}
