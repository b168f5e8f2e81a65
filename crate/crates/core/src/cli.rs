//! Command-line driver: table emission and regression against the embedded
//! expected tables.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cfunction::numeric::numeric_selftest;
use crate::cfunction::{cocycle_check, random_parity, random_weight};
use crate::error::{Error, Result};
use crate::involutions::{classify_order_two, ClassRecord, EXCEPTIONAL, EXPECTED_CLASSES};
use crate::nilpotent::{arthur_cases, matches_expected, ArthurCase, EXPECTED_CASES};
use crate::rootsys::{CartanType, RootSystem};
use crate::sqint::{
    find_expected_verdict, matches_expected_verdict, verify_case, CaseVerdict, Status,
    VerifyOptions,
};
use crate::weyl::{count_min_coset_reps, longest_element, WeylElement};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "RESIDUAL_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_SOFT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CHECKPOINT: i32 = 74;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Parser)]
#[command(
    name = "residual",
    version,
    about = "Square-integrability checks for residual Eisenstein series on exceptional groups"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for the coset enumeration.
    #[arg(long, global = true, env = WORKERS_ENV, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Largest cancellation depth tried per coset.
    #[arg(long, global = true, default_value_t = 3)]
    pub kmax: i32,
    /// Journal file (`verify`) or directory of journals (`verify-all`).
    #[arg(long, global = true)]
    pub checkpoint: Option<PathBuf>,
    /// Suppress progress lines on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classes of order-two automorphisms.
    Involutions { group: String },
    /// Distinguished-orbit parameters `(lambda0, delta0)`.
    Parameters { group: String },
    /// Check one case; the orbit is the Bala-Carter label of the saturation.
    Verify {
        group: String,
        orbit: String,
        /// Restrict to one fixed subalgebra when the orbit label is ambiguous.
        #[arg(long)]
        fixed: Option<String>,
    },
    /// Check every case and diff against the expected table.
    VerifyAll {
        #[arg(long)]
        skip_e8: bool,
    },
    /// Weyl-group invariants, a cocycle run and the analytic checks.
    Selftest,
}

impl RunConfig {
    pub fn worker_count(&self) -> usize {
        self.workers.map(|w| w as usize).unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }
}

/// Rows for the csv and markdown writers.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    records: &T,
    table: Table,
) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&table.headers)
                .map_err(std::io::Error::from)?;
            for r in &table.rows {
                w.write_record(r).map_err(std::io::Error::from)?;
            }
            w.flush()?;
        }
        Format::Md => {
            writeln!(out, "| {} |", table.headers.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(table.headers.len()))?;
            for r in &table.rows {
                let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
                writeln!(out, "| {} |", cells.join(" | "))?;
            }
        }
    }
    Ok(())
}

fn ints(v: &[i64]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn opt(v: Option<i64>) -> String {
    v.map_or("NA".into(), |x| x.to_string())
}

fn parse_group(s: &str) -> Result<CartanType> {
    let t: CartanType = s.parse()?;
    if !EXCEPTIONAL.contains(&t.to_string().as_str()) {
        return Err(Error::UnknownType(format!("{s} is not exceptional")));
    }
    Ok(t)
}

fn involutions(cfg: &RunConfig, out: &mut dyn Write, group: &str) -> Result<i32> {
    let t = parse_group(group)?;
    let recs: Vec<ClassRecord> = classify_order_two(t)?
        .iter()
        .map(ClassRecord::from)
        .collect();
    let expected: Vec<_> = EXPECTED_CLASSES
        .iter()
        .filter(|e| e.0 == t.to_string())
        .collect();
    let agree = recs.len() == expected.len()
        && expected.iter().all(|e| {
            recs.iter()
                .any(|r| r.fixed_type == e.1 && r.is_levi == e.2 && r.deleted_nodes == e.3)
        });
    let rows = recs
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.fixed_type.clone(),
                r.is_levi.to_string(),
                format!("{:?}", r.deleted_nodes),
                r.lift_exponents
                    .as_ref()
                    .map_or("-".into(), |l| format!("{l:?}")),
            ]
        })
        .collect();
    let headers = vec!["group", "fixed_type", "levi", "deleted_nodes", "lift"];
    emit(out, cfg.format, &recs, Table { headers, rows })?;
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

fn parameters(cfg: &RunConfig, out: &mut dyn Write, group: &str) -> Result<i32> {
    let t = parse_group(group)?;
    let rs = RootSystem::new(t)?;
    let cases = arthur_cases(t)?;
    let expected: Vec<_> = EXPECTED_CASES
        .iter()
        .filter(|e| e.group == t.to_string())
        .collect();
    let agree = cases.len() == expected.len()
        && cases
            .iter()
            .zip(&expected)
            .all(|(c, e)| matches_expected(&rs, c, e));
    let rows = cases
        .iter()
        .map(|c| {
            vec![
                c.group.clone(),
                c.fixed_type.clone(),
                c.sub_orbit.clone(),
                c.saturation_label.clone(),
                ints(&c.lambda1),
                c.delta1.bits(),
                ints(&c.lambda0),
                c.delta0.bits(),
            ]
        })
        .collect();
    let headers = vec![
        "group",
        "fixed_type",
        "sub_orbit",
        "orbit",
        "lambda1",
        "delta1",
        "lambda0",
        "delta0",
    ];
    emit(out, cfg.format, &cases, Table { headers, rows })?;
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

/// A verdict next to its expected row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRow {
    #[serde(flatten)]
    pub verdict: CaseVerdict,
    pub expected_m: Option<i64>,
    pub expected_k_bd: Option<i64>,
    pub expected_wl_type: Option<String>,
    pub agreement: Agreement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Ok,
    Mismatch,
    /// Differs only through an inconclusive or unsupported outcome.
    Soft,
    Unexpected,
}

fn compare(v: CaseVerdict) -> VerdictRow {
    let e = find_expected_verdict(&v.group, &v.fixed_type, &v.orbit);
    let agreement = match e {
        None => Agreement::Unexpected,
        Some(e) if matches_expected_verdict(&v, e) && v.wl_type == e.wl_type => Agreement::Ok,
        Some(_) if matches!(v.status, Status::Inconclusive | Status::Unsupported) => {
            Agreement::Soft
        }
        Some(_) => Agreement::Mismatch,
    };
    VerdictRow {
        expected_m: e.and_then(|e| e.m),
        expected_k_bd: e.and_then(|e| e.k_bd),
        expected_wl_type: e.map(|e| e.wl_type.to_string()),
        verdict: v,
        agreement,
    }
}

fn verdict_table(rows: &[VerdictRow]) -> Table {
    let headers = vec![
        "group",
        "fixed_type",
        "orbit",
        "status",
        "wl_type",
        "sigma_L",
        "m",
        "k_bd",
        "good",
        "bad",
        "expected_m",
        "expected_k_bd",
        "agreement",
        "elapsed_sec",
    ];
    let rows = rows
        .iter()
        .map(|r| {
            let v = &r.verdict;
            vec![
                v.group.clone(),
                v.fixed_type.clone(),
                v.orbit.clone(),
                serde_json::to_value(v.status)
                    .unwrap()
                    .as_str()
                    .unwrap()
                    .to_string(),
                v.wl_type.clone(),
                format!("{:?}", v.sigma_l),
                opt(v.m),
                opt(v.k_bd),
                v.good_count.to_string(),
                v.bad_count.to_string(),
                opt(r.expected_m),
                opt(r.expected_k_bd),
                serde_json::to_value(r.agreement)
                    .unwrap()
                    .as_str()
                    .unwrap()
                    .to_string(),
                format!("{:.2}", v.elapsed_sec),
            ]
        })
        .collect();
    Table { headers, rows }
}

fn exit_for(rows: &[VerdictRow]) -> i32 {
    if rows
        .iter()
        .any(|r| matches!(r.agreement, Agreement::Mismatch | Agreement::Unexpected))
    {
        EXIT_MISMATCH
    } else if rows.iter().any(|r| r.agreement == Agreement::Soft) {
        EXIT_SOFT
    } else {
        EXIT_OK
    }
}

fn options(cfg: &RunConfig, journal: Option<PathBuf>) -> VerifyOptions {
    VerifyOptions {
        kmax: cfg.kmax,
        workers: cfg.worker_count(),
        journal,
        progress: !cfg.quiet,
        ..Default::default()
    }
}

fn journal_name(c: &ArthurCase) -> String {
    let raw = format!(
        "{}_{}_{}.journal",
        c.group, c.fixed_type, c.saturation_label
    );
    raw.chars()
        .map(|ch| {
            if ch.is_ascii_alphanumeric() || ch == '.' {
                ch
            } else {
                '_'
            }
        })
        .collect()
}

fn run_cases(cfg: &RunConfig, cases: &[ArthurCase], single_file: bool) -> Result<Vec<VerdictRow>> {
    let mut rows = Vec::new();
    for c in cases {
        if !cfg.quiet {
            eprintln!(
                "verifying {} {} {}",
                c.group, c.fixed_type, c.saturation_label
            );
        }
        let journal = match &cfg.checkpoint {
            Some(p) if single_file => Some(p.clone()),
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Checkpoint(format!("{}: {e}", dir.display())))?;
                Some(dir.join(journal_name(c)))
            }
            None => None,
        };
        let v = verify_case(c, &options(cfg, journal))?;
        if !cfg.quiet {
            eprintln!(
                "  {:?} m={} k_bd={} in {:.2}s",
                v.status,
                opt(v.m),
                opt(v.k_bd),
                v.elapsed_sec
            );
        }
        rows.push(compare(v));
    }
    Ok(rows)
}

fn verify(
    cfg: &RunConfig,
    out: &mut dyn Write,
    group: &str,
    orbit: &str,
    fixed: Option<&str>,
) -> Result<i32> {
    let t = parse_group(group)?;
    let cases: Vec<ArthurCase> = arthur_cases(t)?
        .into_iter()
        .filter(|c| c.saturation_label == orbit && fixed.is_none_or(|f| c.fixed_type == f))
        .collect();
    if cases.is_empty() {
        return Err(Error::NoSuchCase(format!("{group} {orbit}")));
    }
    if cases.len() > 1 && cfg.checkpoint.is_some() {
        return Err(Error::NoSuchCase(format!(
            "{orbit} occurs for several fixed subalgebras; pass --fixed"
        )));
    }
    let rows = run_cases(cfg, &cases, true)?;
    let code = exit_for(&rows);
    let table = verdict_table(&rows);
    if rows.len() == 1 {
        emit(out, cfg.format, &rows[0].verdict, table)?;
    } else {
        let verdicts: Vec<&CaseVerdict> = rows.iter().map(|r| &r.verdict).collect();
        emit(out, cfg.format, &verdicts, table)?;
    }
    Ok(code)
}

fn verify_all(cfg: &RunConfig, out: &mut dyn Write, skip_e8: bool) -> Result<i32> {
    let mut cases = Vec::new();
    for g in EXCEPTIONAL {
        if skip_e8 && g == "E8" {
            continue;
        }
        cases.extend(arthur_cases(g.parse()?)?);
    }
    let rows = run_cases(cfg, &cases, false)?;
    let code = exit_for(&rows);
    emit(out, cfg.format, &rows, verdict_table(&rows))?;
    Ok(code)
}

/// One line of the self-test report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn random_element(rs: &RootSystem, rng: &mut ChaCha8Rng, len: usize) -> WeylElement {
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..rs.rank())).collect();
    WeylElement::from_word(rs, &word)
}

/// Weyl-group invariants, cocycle run and analytic checks.
pub fn selftest_report() -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (t, order) in [("G2", 12u64), ("F4", 1152), ("E6", 51840)] {
        let rs = RootSystem::parse(t)?;
        let n = count_min_coset_reps(&rs, &[], 1)?;
        lines.push(CheckLine {
            check: format!("|W({t})|"),
            pass: n == order,
            detail: format!("{n}"),
        });
        let w0 = longest_element(&rs);
        let l = w0.length(&rs);
        lines.push(CheckLine {
            check: format!("l(w0) = #positive roots in {t}"),
            pass: l == rs.num_pos(),
            detail: format!("{l}"),
        });
        let mut bad = 0;
        for _ in 0..200 {
            let w = random_element(&rs, &mut rng, 20);
            let word = w.word(&rs);
            let back = WeylElement::from_word(&rs, &word);
            let inv = w.inverse(&rs);
            if back != w
                || word.len() != w.length(&rs)
                || w.compose(&rs, &inv) != WeylElement::identity(&rs)
            {
                bad += 1;
            }
        }
        lines.push(CheckLine {
            check: format!("reduced words and inverses in {t}"),
            pass: bad == 0,
            detail: format!("{bad} failures in 200"),
        });
    }
    for t in ["G2", "F4", "E6"] {
        let rs = RootSystem::parse(t)?;
        let mut bad = 0;
        for _ in 0..100 {
            let w1 = random_element(&rs, &mut rng, 12);
            let w2 = random_element(&rs, &mut rng, 12);
            let lambda = random_weight(rs.rank(), &mut rng);
            let mu = random_weight(rs.rank(), &mut rng);
            let delta = random_parity(rs.rank(), &mut rng);
            if !cocycle_check(&rs, &w1, &w2, &lambda, &mu, &delta).ok {
                bad += 1;
            }
        }
        lines.push(CheckLine {
            check: format!("cocycle in {t}"),
            pass: bad == 0,
            detail: format!("{bad} failures in 100"),
        });
    }
    for c in numeric_selftest()? {
        lines.push(CheckLine {
            check: c.check.clone(),
            pass: c.pass,
            detail: format!("error {:.3e} (tolerance {:.0e})", c.abs_error, c.tolerance),
        });
    }
    Ok(lines)
}

fn selftest(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let lines = selftest_report()?;
    let ok = lines.iter().all(|l| l.pass);
    let rows = lines
        .iter()
        .map(|l| {
            vec![
                l.check.clone(),
                if l.pass { "pass".into() } else { "FAIL".into() },
                l.detail.clone(),
            ]
        })
        .collect();
    emit(
        out,
        cfg.format,
        &lines,
        Table {
            headers: vec!["check", "result", "detail"],
            rows,
        },
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

/// Runs one command and returns the exit status.
pub fn run_command(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Involutions { group } => involutions(cfg, out, group),
        Command::Parameters { group } => parameters(cfg, out, group),
        Command::Verify {
            group,
            orbit,
            fixed,
        } => verify(cfg, out, group, orbit, fixed.as_deref()),
        Command::VerifyAll { skip_e8 } => verify_all(cfg, out, *skip_e8),
        Command::Selftest => selftest(cfg, out),
    }
}

/// Exit status for an error escaping `run_command`.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Checkpoint(_) => EXIT_CHECKPOINT,
        Error::UnknownType(_) | Error::NoSuchCase(_) => EXIT_USAGE,
        Error::Interrupted { .. } => EXIT_SOFT,
        _ => EXIT_MISMATCH,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let cfg =
            RunConfig::try_parse_from(std::iter::once("residual").chain(args.iter().copied()))
                .unwrap();
        let mut buf = Vec::new();
        let code = run_command(&cfg, &mut buf).unwrap_or_else(|e| error_exit_code(&e));
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn parameters_f4_markdown() {
        let (code, out) = run(&["parameters", "F4", "--format", "md"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2 + 4);
    }

    #[test]
    fn verify_g2() {
        let (code, out) = run(&["verify", "G2", "G2(a1)", "-q"]);
        assert_eq!(code, 0);
        let v: CaseVerdict = serde_json::from_str(&out).unwrap();
        assert_eq!(v.m, Some(-2));
    }

    #[test]
    fn json_round_trip() {
        let (_, out) = run(&["parameters", "E6"]);
        let cases: Vec<ArthurCase> = serde_json::from_str(&out).unwrap();
        assert_eq!(cases, arthur_cases("E6".parse().unwrap()).unwrap());
        let (_, out) = run(&["involutions", "E7"]);
        let recs: Vec<ClassRecord> = serde_json::from_str(&out).unwrap();
        assert_eq!(recs.len(), 3);
    }

    #[test]
    fn csv_quotes_commas() {
        let (_, out) = run(&["parameters", "G2", "--format", "csv"]);
        let mut r = csv::Reader::from_reader(out.as_bytes());
        let rec = r.records().next().unwrap().unwrap();
        assert_eq!(&rec[4], "[2,-1]");
    }

    #[test]
    fn bad_arguments() {
        assert!(RunConfig::try_parse_from(["residual", "verify"]).is_err());
        assert!(RunConfig::try_parse_from(["residual", "selftest", "--workers", "0"]).is_err());
        assert_eq!(run(&["parameters", "A3"]).0, EXIT_USAGE);
        assert_eq!(run(&["verify", "F4", "E8(a1)", "-q"]).0, EXIT_USAGE);
    }

    #[test]
    fn unreadable_checkpoint() {
        let dir = std::env::temp_dir().join(format!("residual-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("g2.journal");
        std::fs::write(&p, "CASE something else\n").unwrap();
        let (code, _) = run(&[
            "verify",
            "G2",
            "G2(a1)",
            "-q",
            "--checkpoint",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_CHECKPOINT);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
