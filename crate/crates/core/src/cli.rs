//! The `sworbits` command line.
//!
//! Every command writes plain lines to stdout. `--format tsv` turns the
//! space-separated fields of each line into tab-separated ones. Exit codes:
//! 0 success, 1 expectation mismatch or failed validation, 2 usage or input
//! error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::action::{subset_orbits, DEFAULT_ELEMENT_BOUND};
use crate::bsgs::StabilizerChain;
use crate::catalogue::{
    builtin_catalogue, find_record, parse_catalogue, validate_record, GroupRecord, Verification,
};
use crate::perm::parse_subset;
use crate::projline::theorem_check;
use crate::swcheck::{default_k_range, sw_scan, sw_scan_par, ud_counts};

#[derive(Debug, Parser)]
#[command(
    name = "sworbits",
    version,
    about = "Orbit lengths of permutation groups on k-subsets"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Args)]
struct Source {
    /// Use the shipped catalogue (the default).
    #[arg(long, conflicts_with = "catalogue")]
    builtin: bool,
    /// Read records from a catalogue file.
    #[arg(long, value_name = "PATH")]
    catalogue: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Selector {
    /// Group name.
    #[arg(value_name = "NAME", conflicts_with = "group")]
    name: Option<String>,
    #[arg(long, value_name = "NAME")]
    group: Option<String>,
}

impl Selector {
    fn get(&self) -> Option<&str> {
        self.name.as_deref().or(self.group.as_deref())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the order of a group.
    Order {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        selector: Selector,
    },
    /// Print the number of orbits on k-subsets.
    Sigma {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        selector: Selector,
        /// k range such as `1..4`; defaults to 1..n/2.
        #[arg(long, value_parser = parse_k_range)]
        k: Option<RangeInclusive<usize>>,
    },
    /// Search for k-subsets whose orbit is longer than every extension orbit.
    Swscan {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        selector: Selector,
        /// k range such as `3..5`; defaults to 2..n/2-1.
        #[arg(long, value_parser = parse_k_range)]
        k: Option<RangeInclusive<usize>>,
        /// Compare the witness k values with the records' expectations.
        #[arg(long)]
        expect: bool,
    },
    /// Run the PSL/PGL(2,q) stabilizer analysis on the projective line.
    Projline { q: u32 },
    /// Count u and d for a k-subset and a (k+1)-subset.
    Ud {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_name = "SUBSET")]
        delta: String,
        #[arg(long, value_name = "SUBSET")]
        sigma: String,
    },
    /// Check records against their stated metadata.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        selector: Selector,
        /// Also run the witness scan.
        #[arg(long)]
        full: bool,
    },
}

/// Accepts `a..b`, `a..=b` or a single `k`; both ends inclusive.
pub fn parse_k_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a k range like 3..5, got {text:?}");
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Out<'a> {
    sink: &'a mut dyn Write,
    format: Format,
}

impl Out<'_> {
    fn line(&mut self, text: &str) -> Result<(), Failure> {
        let text = match self.format {
            Format::Text => text.to_string(),
            Format::Tsv => text.replace(' ', "\t"),
        };
        writeln!(self.sink, "{text}").map_err(Failure::from)
    }

    fn lines(&mut self, text: &str) -> Result<(), Failure> {
        text.lines().try_for_each(|l| self.line(l))
    }
}

fn load(source: &Source) -> Result<Vec<GroupRecord>, Failure> {
    match &source.catalogue {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            parse_catalogue(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(builtin_catalogue()),
    }
}

fn one(records: &[GroupRecord], selector: &Selector) -> Result<GroupRecord, Failure> {
    let name = selector
        .get()
        .ok_or_else(|| Failure::Usage("a group name is required".into()))?;
    Ok(find_record(records, name)?.clone())
}

/// The named record, or every record not marked `skip_scan`.
fn many(records: Vec<GroupRecord>, selector: &Selector) -> Result<Vec<GroupRecord>, Failure> {
    match selector.get() {
        Some(_) => Ok(vec![one(&records, selector)?]),
        None => Ok(records.into_iter().filter(|r| !r.skip_scan).collect()),
    }
}

fn check_range(range: &RangeInclusive<usize>, degree: usize) -> Result<(), Failure> {
    if *range.start() < 1 || *range.end() + 1 > degree {
        return Err(Failure::Usage(format!(
            "k range {}..{} outside 1..{} for degree {degree}",
            range.start(),
            range.end(),
            degree.saturating_sub(1)
        )));
    }
    Ok(())
}

fn join(ks: &BTreeSet<usize>) -> String {
    if ks.is_empty() {
        "none".to_string()
    } else {
        ks.iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

struct ScanResult {
    lines: Vec<String>,
    matched: Option<bool>,
}

fn scan_record(
    record: &GroupRecord,
    k: &Option<RangeInclusive<usize>>,
    expect: bool,
    parallel: bool,
) -> Result<ScanResult, Failure> {
    let range = k.clone().unwrap_or_else(|| default_k_range(record.degree));
    if !range.is_empty() {
        check_range(&range, record.degree)?;
    }
    let group = record.group();
    let chain = StabilizerChain::build(&group);
    let witnesses = if parallel {
        sw_scan_par(&group, &chain, range.clone())?
    } else {
        sw_scan(&group, &chain, range.clone())?
    };
    let mut lines: Vec<String> = witnesses
        .iter()
        .map(|w| w.report_line(&record.name))
        .collect();
    let mut matched = None;
    if let (true, Some(expected)) = (expect, &record.expected_k) {
        let expected: BTreeSet<usize> = expected
            .iter()
            .copied()
            .filter(|k| range.contains(k))
            .collect();
        let found: BTreeSet<usize> = witnesses.iter().map(|w| w.k).collect();
        let ok = expected == found;
        lines.push(format!(
            "expect group={} expected={} found={} {}",
            record.name,
            join(&expected),
            join(&found),
            if ok { "ok" } else { "FAIL" }
        ));
        matched = Some(ok);
    }
    Ok(ScanResult { lines, matched })
}

fn execute(cli: Cli, out: &mut Out<'_>) -> Result<(), Failure> {
    let jobs = cli.jobs as usize;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    match cli.command {
        Command::Order { source, selector } => {
            let record = one(&load(&source)?, &selector)?;
            let order = StabilizerChain::build(&record.group()).order();
            out.line(&format!("order {} {}", record.name, order))
        }
        Command::Sigma {
            source,
            selector,
            k,
        } => {
            let record = one(&load(&source)?, &selector)?;
            let range = k.unwrap_or(1..=(record.degree / 2).max(1));
            check_range(&range, record.degree)?;
            let group = record.group();
            let chain = StabilizerChain::build(&group);
            let counts = pool.install(|| {
                range
                    .clone()
                    .into_par_iter()
                    .map(|k| subset_orbits(&group, &chain, k).map(|p| p.sigma()))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            for (k, count) in range.zip(counts) {
                out.line(&format!("sigma {} k={} {}", record.name, k, count))?;
            }
            Ok(())
        }
        Command::Swscan {
            source,
            selector,
            k,
            expect,
        } => {
            let records = many(load(&source)?, &selector)?;
            let parallel = jobs > 1;
            let results = pool.install(|| {
                records
                    .par_iter()
                    .map(|r| scan_record(r, &k, expect, parallel))
                    .collect::<Vec<_>>()
            });
            let (mut confirmed, mut mismatched) = (0, 0);
            for result in results {
                let result = result?;
                for line in &result.lines {
                    out.line(line)?;
                }
                match result.matched {
                    Some(true) => confirmed += 1,
                    Some(false) => mismatched += 1,
                    None => {}
                }
            }
            if expect {
                out.line(&format!(
                    "expect confirmed={confirmed} mismatched={mismatched}"
                ))?;
                if mismatched > 0 {
                    return Err(Failure::Mismatch);
                }
            }
            Ok(())
        }
        Command::Projline { q } => {
            let report = theorem_check(q, DEFAULT_ELEMENT_BOUND)?;
            out.lines(&report.to_string())
        }
        Command::Ud {
            source,
            selector,
            delta,
            sigma,
        } => {
            let record = one(&load(&source)?, &selector)?;
            let delta = parse_subset(&delta, record.degree)?;
            let sigma = parse_subset(&sigma, record.degree)?;
            let group = record.group();
            let chain = StabilizerChain::build(&group);
            out.line(&ud_counts(&group, &chain, &delta, &sigma)?.report_line())
        }
        Command::Validate {
            source,
            selector,
            full,
        } => {
            let records = many(load(&source)?, &selector)?;
            let level = if full {
                Verification::Full
            } else {
                Verification::Structure
            };
            let reports = pool.install(|| {
                records
                    .par_iter()
                    .map(|r| validate_record(r, level))
                    .collect::<Vec<_>>()
            });
            let failed = reports.iter().filter(|r| !r.passed()).count();
            for report in &reports {
                out.lines(&report.to_string())?;
            }
            out.line(&format!("validated {} failed={}", reports.len(), failed))?;
            if failed > 0 {
                return Err(Failure::Mismatch);
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let format = cli.format;
    let mut out = Out {
        sink: stdout,
        format,
    };
    match execute(cli, &mut out) {
        Ok(()) => 0,
        Err(Failure::Mismatch) => 1,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("sworbits").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("3..5"), Ok(3..=5));
        assert_eq!(parse_k_range("3..=5"), Ok(3..=5));
        assert_eq!(parse_k_range("4"), Ok(4..=4));
        assert!(parse_k_range("5..3").is_err());
        assert!(parse_k_range("a..3").is_err());
    }

    #[test]
    fn order_lines() {
        assert_eq!(call(&["order", "--builtin", "G1"]).1, "order G1 1152\n");
        assert_eq!(
            call(&["order", "--group", "trivial5"]).1,
            "order trivial5 1\n"
        );
        assert_eq!(call(&["order", "M24"]).1, "order M24 244823040\n");
    }

    #[test]
    fn sigma_lines() {
        let (code, out, _) = call(&["sigma", "G2", "--k", "1..4"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "sigma G2 k=1 1\nsigma G2 k=2 2\nsigma G2 k=3 5\nsigma G2 k=4 5\n"
        );
        assert_eq!(
            call(&["sigma", "Sym(5)", "--k", "1..2"]).1,
            "sigma Sym(5) k=1 1\nsigma Sym(5) k=2 1\n"
        );
        assert_eq!(call(&["sigma", "G2", "--k", "0..2"]).0, 2);
        assert_eq!(call(&["sigma", "G2", "--k", "1..9"]).0, 2);
    }

    #[test]
    fn swscan_single_group() {
        let (code, out, _) = call(&["swscan", "L2(7)"]);
        assert_eq!(code, 0);
        assert_eq!(out, "SW k=3 group=L2(7) delta={1,2,3} N=56 L=42\n");
        let (_, tsv, _) = call(&["swscan", "L2(7)", "--format", "tsv"]);
        assert_eq!(tsv, "SW\tk=3\tgroup=L2(7)\tdelta={1,2,3}\tN=56\tL=42\n");
    }

    #[test]
    fn swscan_expect_controls() {
        for name in ["Alt(5)", "Sym(7)", "M11", "M12"] {
            let (code, out, _) = call(&["swscan", name, "--expect"]);
            assert_eq!(code, 0, "{out}");
            assert!(out.ends_with("expect confirmed=1 mismatched=0\n"));
            assert!(!out.contains("SW "));
        }
    }

    #[test]
    fn expectation_mismatch_exits_one() {
        let dir = std::env::temp_dir().join(format!("sworbits-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.cat");
        let mut l27 = find_record(&builtin_catalogue(), "L2(7)").unwrap().clone();
        l27.name = "L".into();
        l27.expected_k = Some(vec![2]);
        std::fs::write(&path, crate::catalogue::render_catalogue(&[l27])).unwrap();
        let path = path.to_str().unwrap();
        let (code, out, _) = call(&["swscan", "--catalogue", path, "--expect"]);
        assert_eq!(code, 1);
        assert!(out.contains("expect group=L expected=2 found=3 FAIL"));
        assert_eq!(
            call(&["order", "--catalogue", path, "L"]).1,
            "order L 168\n"
        );
    }

    #[test]
    fn ud_lines() {
        let (_, out, _) = call(&["ud", "Sym(8)", "--delta", "{1,2,3}", "--sigma", "{1,2,3,4}"]);
        assert_eq!(out, "ud u=5 d=4 |D^G|=56 |S^G|=70 identity=ok\n");
        let (_, out, _) = call(&["ud", "G1", "--delta", "{1,2,3}", "--sigma", "{4,5,6,7}"]);
        assert!(
            out.ends_with("identity=fail note=not-nested-skipped\n"),
            "{out}"
        );
        assert_eq!(
            call(&["ud", "G1", "--delta", "{1,2", "--sigma", "{1,2,3}"]).0,
            2
        );
    }

    #[test]
    fn projline_report() {
        let (code, out, _) = call(&["projline", "7"]);
        assert_eq!(code, 0);
        assert!(out.contains("valid_exponents 0\n"));
        assert_eq!(call(&["projline", "4"]).0, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["order"]).0, 2);
        assert_eq!(call(&["order", "nope"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["order", "G1", "--jobs", "0"]).0, 2);
        assert_eq!(
            call(&["order", "--catalogue", "/nonexistent/x.cat", "G1"]).0,
            2
        );
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn validate_structure() {
        let (code, out, _) = call(&["validate", "G3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("validated 1 failed=0\n"));
    }
}
