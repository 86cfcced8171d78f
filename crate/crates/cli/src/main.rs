use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use macmahon_core::congruence::{
    c3_congruence_checks, corollary_check, gordon_collapse, lemma2_check, prove_progression, scan,
    ScanCandidate, Verdict,
};
use macmahon_core::eisenstein::{bbe_eta_check, ramanujan_check, theta_bbe_check, ConstantTables};
use macmahon_core::macmahon::{
    bivariate_identity_check, compute, convolution_check, first_disagreement, hook_limit_check,
    limit_expansion_check, Family, MacMahonSeries, Method,
};
use macmahon_core::partitions::nekrasov_okounkov_check;
use macmahon_core::ring::parse_rational;
use macmahon_core::{Coefficient, Error, Report};

const PRECISION_CAP: usize = 1_000_000;
const CACHE_ENV: &str = "MACMAHON_CACHE_DIR";

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;
const EXIT_DISAGREEMENT: u8 = 4;

/// Exact q-series for MacMahon's partition analysis and congruence certificates.
#[derive(Parser)]
#[command(name = "macmahon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of U_a (family mo) or U_a* (family m).
    Series(SeriesArgs),
    /// Certify a congruence on an arithmetic progression mod a prime.
    Prove(ProveArgs),
    /// Run a named identity or congruence check.
    Check(CheckArgs),
    /// Search for progressions on which the coefficients vanish mod l.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Mo,
    M,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Mo => Family::Mo,
            FamilyArg::M => Family::M,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Direct,
    SingleSum,
    Recursion,
    Eisenstein,
    All,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckName {
    Ramanujan,
    Convolution,
    HookLimit,
    NoIdentity,
    Bivariate,
    Gordon,
    C3,
    Corollary,
    Lemma2,
    #[value(name = "theta-bbE")]
    ThetaBbe,
    LimitExpansion,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Lift the cap of 10^6 coefficients.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    a: u32,
    /// Number of coefficients.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "direct")]
    method: MethodArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ProveArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    modulus: u64,
    /// Residue class r of the progression pn + r.
    #[arg(long)]
    r: u64,
    /// Largest exponent of the direct recomputation.
    #[arg(long, default_value_t = 500)]
    guard: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    name: CheckName,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// The modulus l.
    #[arg(long)]
    modulus: Option<u64>,
    /// The prime p (corollary, lemma2).
    #[arg(long)]
    p: Option<u64>,
    /// Exponent m of the prime power (lemma2).
    #[arg(long)]
    m: Option<u32>,
    /// Rational parameter z (no-identity), e.g. 1/2.
    #[arg(long)]
    z: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    modulus: u64,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: Output,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("i/o error: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let outcome = match cli.command {
        Command::Series(args) => cmd_series(args),
        Command::Prove(args) => cmd_prove(args),
        Command::Check(args) => cmd_check(args),
        Command::Scan(args) => cmd_scan(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn open_output(out: &Output) -> Result<Box<dyn Write>, Failure> {
    Ok(match &out.output {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn check_precision(n: usize, out: &Output) -> Result<(), Failure> {
    if n == 0 {
        return Err(usage("precision --n must be at least 1"));
    }
    if n > PRECISION_CAP && !out.allow_large {
        return Err(usage(format!(
            "precision {n} exceeds the cap {PRECISION_CAP}; pass --allow-large to override"
        )));
    }
    Ok(())
}

/// Writes the constant tables for `a` into the cache directory, if one is set.
fn cache_constants(a: u32) -> Result<(), Failure> {
    let Some(dir) = std::env::var_os(CACHE_ENV) else {
        return Ok(());
    };
    let dir = Path::new(&dir);
    let path = dir.join(format!("constants-a{a}.json"));
    if path.exists() {
        return Ok(());
    }
    fs::create_dir_all(dir)?;
    let tables = ConstantTables::build(a);
    fs::write(&path, format!("{}\n", tables.to_json()))?;
    Ok(())
}

fn write_series(w: &mut dyn Write, s: &MacMahonSeries, format: Format) -> io::Result<()> {
    match format {
        Format::Text => {
            let coeffs: Vec<String> = s.series.coeffs().iter().map(|c| c.to_string()).collect();
            writeln!(w, "{}", coeffs.join(","))
        }
        Format::Json => writeln!(w, "{}", s.to_json()),
        Format::Csv => {
            writeln!(w, "n,coefficient")?;
            for (n, c) in s.series.coeffs().iter().enumerate() {
                writeln!(w, "{n},{c}")?;
            }
            Ok(())
        }
    }
}

fn cmd_series(args: SeriesArgs) -> Outcome {
    check_precision(args.n, &args.out)?;
    if args.a == 0 {
        return Err(usage("--a must be at least 1"));
    }
    let family = Family::from(args.family);
    let format = args.out.format.unwrap_or(Format::Text);
    let method = match args.method {
        MethodArg::Direct => Some(Method::Direct),
        MethodArg::SingleSum => Some(Method::SingleSum),
        MethodArg::Recursion => Some(Method::Recursion),
        MethodArg::Eisenstein => Some(Method::Eisenstein),
        MethodArg::All => None,
    };
    if matches!(method, Some(Method::Eisenstein) | None) {
        cache_constants(args.a)?;
    }
    let result = match method {
        Some(m) => compute(family, args.a, m, args.n)?,
        None => {
            let reference = compute(family, args.a, Method::Direct, args.n)?;
            for m in Method::available(family).into_iter().skip(1) {
                let other = compute(family, args.a, m, args.n)?;
                if let Some(n) = first_disagreement(&reference.series, &other.series) {
                    eprintln!(
                        "{}",
                        json!({
                            "disagreement": {"methods": ["direct", m.to_string()], "exponent": n,
                            "values": [reference.series.coeff(n).to_json(), other.series.coeff(n).to_json()]}
                        })
                    );
                    return Ok(EXIT_DISAGREEMENT);
                }
            }
            reference
        }
    };
    let mut w = open_output(&args.out)?;
    write_series(&mut *w, &result, format)?;
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_prove(args: ProveArgs) -> Outcome {
    let family = Family::from(args.family);
    cache_constants(args.a)?;
    let cert = prove_progression(family, args.a, args.modulus, args.r, args.guard)?;
    let mut w = open_output(&args.out)?;
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => writeln!(w, "{}", cert.to_json())?,
        Format::Text => {
            writeln!(
                w,
                "claim: {}({}; {}n+{}) = 0 mod {}",
                family, args.a, args.modulus, args.r, args.modulus
            )?;
            for p in &cert.pieces {
                writeln!(
                    w,
                    "piece weight {} sturm bound {}: {}",
                    p.weight,
                    p.sturm_bound,
                    if p.all_zero { "vanishes" } else { "non-zero" }
                )?;
            }
            writeln!(
                w,
                "guard: {} terms up to {}: {}",
                cert.guard.terms,
                cert.guard.checked_up_to,
                if cert.guard.passed { "pass" } else { "fail" }
            )?;
            writeln!(
                w,
                "verdict: {}",
                serde_json::to_value(&cert.verdict).unwrap()["status"]
                    .as_str()
                    .unwrap_or("")
            )?;
        }
        Format::Csv => {
            writeln!(w, "weight,sturm_bound,checked_coefficients,all_zero")?;
            for p in &cert.pieces {
                writeln!(
                    w,
                    "{},{},{},{}",
                    p.weight, p.sturm_bound, p.checked_coefficients, p.all_zero
                )?;
            }
        }
    }
    w.flush()?;
    Ok(match cert.verdict {
        Verdict::Proven => EXIT_OK,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::CounterexampleFound { .. } => EXIT_COUNTEREXAMPLE,
    })
}

fn reports_for(args: &CheckArgs) -> Result<Vec<Report>, Failure> {
    let n = |default: usize| -> Result<usize, Failure> {
        let n = args.n.unwrap_or(default);
        check_precision(n, &args.out)?;
        Ok(n)
    };
    let a_or = |range: std::ops::RangeInclusive<u32>| -> Vec<u32> {
        match args.a {
            Some(a) => vec![a],
            None => range.collect(),
        }
    };
    Ok(match args.name {
        CheckName::Ramanujan => vec![ramanujan_check(n(200)?)],
        CheckName::Convolution => {
            let n = n(60)?;
            a_or(1..=5)
                .into_iter()
                .map(|a| convolution_check(a, n))
                .collect()
        }
        CheckName::HookLimit => a_or(1..=6)
            .into_iter()
            .map(hook_limit_check)
            .collect::<Result<_, _>>()?,
        CheckName::NoIdentity => {
            let zs: Vec<String> = match &args.z {
                Some(z) => vec![z.clone()],
                None => ["0", "1", "2", "3", "-1", "1/2"].map(String::from).to_vec(),
            };
            let n = n(20)?;
            zs.iter()
                .map(|z| {
                    parse_rational(z)
                        .map(|z| nekrasov_okounkov_check(&z, n))
                        .ok_or_else(|| usage(format!("cannot parse z = {z:?}")))
                })
                .collect::<Result<_, _>>()?
        }
        CheckName::Bivariate => vec![bivariate_identity_check(args.a.unwrap_or(4), n(30)?)],
        CheckName::Gordon => {
            let cases: Vec<(u64, u32, usize)> = match (args.modulus, args.a) {
                (Some(l), Some(a)) => vec![(l, a, n(200)?)],
                (None, None) => vec![(3, 2, 200), (3, 5, 200), (11, 10, 200), (17, 16, 300)],
                _ => return Err(usage("gordon needs both --modulus and --a, or neither")),
            };
            cases
                .into_iter()
                .map(|(l, a, n)| gordon_collapse(l, a, n))
                .collect::<Result<_, _>>()?
        }
        CheckName::C3 => vec![c3_congruence_checks(n(200)?)?],
        CheckName::Corollary => {
            let n = n(2000)?;
            let cases: Vec<(u32, u64, u64)> = match (args.a, args.modulus, args.p) {
                (Some(a), Some(l), Some(p)) => vec![(a, l, p)],
                (None, None, None) => {
                    let mut v = vec![(2, 5, 19)];
                    v.extend((2..=5).map(|a| (a, 19, 37)));
                    v
                }
                _ => return Err(usage("corollary needs --a, --modulus and --p, or none")),
            };
            cases
                .into_iter()
                .map(|(a, l, p)| corollary_check(a, l, p, n))
                .collect::<Result<_, _>>()?
        }
        CheckName::Lemma2 => {
            let n = n(100)?;
            let cases: Vec<(u64, u32)> = match args.p {
                Some(p) => vec![(p, args.m.unwrap_or(1))],
                None => vec![
                    (2, 1),
                    (2, 2),
                    (2, 3),
                    (3, 1),
                    (3, 2),
                    (5, 1),
                    (5, 2),
                    (7, 1),
                    (7, 2),
                    (11, 1),
                    (13, 1),
                ],
            };
            cases
                .into_iter()
                .map(|(p, m)| lemma2_check(p, m, n))
                .collect::<Result<_, _>>()?
        }
        CheckName::ThetaBbe => {
            let n = n(40)?;
            let ts: Vec<u32> = a_or(1..=5);
            ts.iter()
                .flat_map(|&t| [theta_bbe_check(t, n), bbe_eta_check(t, n)])
                .collect()
        }
        CheckName::LimitExpansion => {
            let n = n(100)?;
            a_or(1..=5)
                .into_iter()
                .map(|a| limit_expansion_check(a, n))
                .collect()
        }
    })
}

fn cmd_check(args: CheckArgs) -> Outcome {
    if let Some(a) = args.a {
        cache_constants(a)?;
    }
    let reports = reports_for(&args)?;
    let format = args.out.format.unwrap_or(Format::Json);
    let mut w = open_output(&args.out)?;
    if format == Format::Csv {
        writeln!(w, "report,label,passed,detail")?;
    }
    let mut all = true;
    for r in &reports {
        all &= r.passed();
        for line in &r.lines {
            match format {
                Format::Json => writeln!(
                    w,
                    "{}",
                    json!({"report": r.name, "label": line.label, "passed": line.passed, "detail": line.detail})
                )?,
                Format::Csv => writeln!(
                    w,
                    "{},{},{},{}",
                    csv_field(&r.name),
                    csv_field(&line.label),
                    line.passed,
                    csv_field(line.detail.as_deref().unwrap_or(""))
                )?,
                Format::Text => writeln!(
                    w,
                    "{} {}: {}{}",
                    if line.passed { "PASS" } else { "FAIL" },
                    r.name,
                    line.label,
                    line.detail
                        .as_ref()
                        .map(|d| format!(" ({d})"))
                        .unwrap_or_default()
                )?,
            }
            w.flush()?;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn candidate_json(c: &ScanCandidate) -> Value {
    json!({
        "family": c.family, "a": c.a, "modulus": c.modulus, "t": c.t, "r": c.r,
        "n_max_checked": c.n_max_checked, "status": "candidate",
    })
}

fn cmd_scan(args: ScanArgs) -> Outcome {
    check_precision(args.n, &args.out)?;
    let family = Family::from(args.family);
    let found = scan(family, args.a, args.modulus, args.n)?;
    let mut w = open_output(&args.out)?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            writeln!(w, "{}", ScanCandidate::CSV_HEADER)?;
            for c in &found {
                writeln!(w, "{}", c.to_csv())?;
            }
        }
        Format::Json => {
            for c in &found {
                writeln!(w, "{}", candidate_json(c))?;
            }
        }
        Format::Text => {
            for c in &found {
                writeln!(
                    w,
                    "candidate: {}({}; {}n+{}) = 0 mod {} for n <= {}",
                    c.family, c.a, c.t, c.r, c.modulus, c.n_max_checked
                )?;
            }
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}
