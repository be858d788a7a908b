//! The `logconcave` command line tool.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0/1/2 for
//! verdicts, 64 usage, 65 malformed input, 66 search limits, 74 I/O.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::bfile::BFile;
use crate::exactnum::Integer;
use crate::explorer::{grid_search, ExplorerError, GridConfig, InitChoice};
use crate::logop::{apply_log_k, check_k_fold, check_k_fold_window, detect_stationary, FoldKind};
use crate::lucas::{classify, Certificate, LucasParams, TheoremBranch, VerdictKind, NAMED_SEQUENCES};
use crate::report::ReportDocument;
use crate::seqcore::{Mode, RightPolicy, SeqSource, SeqWindow};

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_PARSE: u8 = 65;
pub const EXIT_LIMITS: u8 = 66;
pub const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "logconcave",
    version,
    about = "Exact log-concavity of integer sequences and Lucas sequences U_n(P,Q)",
    allow_negative_numbers = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify U_n(P,Q): exit 0 ∞-log-concave, 1 not 1-fold, 2 outside scope
    Classify {
        #[arg(short = 'P', allow_negative_numbers = true)]
        p: Integer,
        #[arg(short = 'Q', allow_negative_numbers = true)]
        q: Integer,
        /// Accept P = 0 or Q = 0
        #[arg(long)]
        extended: bool,
    },
    /// Print the named Lucas sequences with their verdicts
    Table,
    /// Write a sequence as a b-file
    Gen {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 20)]
        horizon: usize,
    },
    /// Write L^k of a sequence as a b-file
    Logk {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        depth: usize,
        /// Last index for generated sources
        #[arg(long, default_value_t = 20)]
        horizon: usize,
    },
    /// Check k-fold log-concavity up to a horizon: exit 0 nonnegative, 1 failure
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 60)]
        horizon: usize,
        /// For b-file input: drop one index per depth instead of zero-filling
        #[arg(long)]
        truncate: bool,
    },
    /// Survey order-m recurrences over a coefficient grid
    Search {
        #[arg(long)]
        order: usize,
        /// Coefficient range `lo..hi`, inclusive
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 60)]
        horizon: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Initial values `a_0,…,a_{m-1}` (default 0,…,0,1)
        #[arg(long, allow_hyphen_values = true)]
        init: Option<String>,
        /// Write the machine-readable report here
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the human-readable table to stdout
        #[arg(long)]
        table: bool,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// b-file to read
    #[arg(long, conflicts_with_all = ["source", "p", "q"])]
    input: Option<PathBuf>,
    /// Generator: const:K, geom:K,B, lucas:P,Q, polygeo:S, rec:K1,..,Km/A0,..,Am-1
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
    source: Option<String>,
    /// Lucas P (with -Q)
    #[arg(short = 'P', allow_negative_numbers = true, requires = "q")]
    p: Option<Integer>,
    /// Lucas Q (with -P)
    #[arg(short = 'Q', allow_negative_numbers = true, requires = "p")]
    q: Option<Integer>,
    #[arg(long)]
    extended: bool,
}

/// Failure carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_PARSE, message: message.into() }
    }
}

enum Input {
    Source(SeqSource),
    File { path: PathBuf, file: BFile },
}

fn parse_list(text: &str) -> Result<Vec<Integer>, Failure> {
    text.split(',')
        .map(|t| Integer::from_str(t.trim()).map_err(|_| Failure::usage(format!("invalid integer `{t}`"))))
        .collect()
}

/// Parses a `--source` generator description; see [`SeqSource::parse_spec`].
pub fn parse_source(text: &str, mode: Mode) -> Result<SeqSource, String> {
    SeqSource::parse_spec(text, mode)
}

fn resolve_input(args: &InputArgs) -> Result<Input, Failure> {
    let mode = if args.extended { Mode::Extended } else { Mode::Strict };
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        })?;
        let file = BFile::parse(&text)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        return Ok(Input::File { path: path.clone(), file });
    }
    if let Some(text) = &args.source {
        return parse_source(text, mode).map(Input::Source).map_err(Failure::usage);
    }
    if let (Some(p), Some(q)) = (&args.p, &args.q) {
        return SeqSource::lucas(p.clone(), q.clone(), mode)
            .map(Input::Source)
            .map_err(|e| Failure::usage(e.to_string()));
    }
    Err(Failure::usage("give one of --input, --source or -P/-Q"))
}

fn file_header(path: &std::path::Path, file: &BFile) -> Vec<String> {
    let mut header = vec![format!("input {}", path.display())];
    if file.offset() != 0 {
        header.push(format!("input offset {} re-based to 0", file.offset()));
    }
    header
}

/// The named-sequence table, fixed layout.
pub fn table_text() -> String {
    let mut out = format!(
        "{:<11} {:>2} {:>3} {:>2}  {:<14} {}\n",
        "sequence", "P", "Q", "D", "verdict", "reason"
    );
    for (name, p, q) in NAMED_SEQUENCES {
        let params = LucasParams::new(p, q);
        let verdict = classify(&params, Mode::Strict);
        let reason = match &verdict.kind {
            VerdictKind::NotOneFold { index, value } => format!("L(U)_{index} = {value} < 0"),
            VerdictKind::InfinitelyLogConcave { certificate } => match certificate {
                Certificate::TheoremCase { branch: TheoremBranch::AboveTwoRootQ } => {
                    "Q ≥ 0 and P > 2√Q".to_string()
                }
                Certificate::TheoremCase { branch: TheoremBranch::BelowMinusTwoRootQ } => {
                    "Q ≥ 0 and P < -2√Q".to_string()
                }
                Certificate::DZeroCase { s } => format!("D = 0, S = {s}"),
            },
            VerdictKind::OutsideScope { reason } => reason.clone(),
        };
        out.push_str(&format!(
            "{:<11} {:>2} {:>3} {:>2}  {:<14} {}\n",
            name,
            p,
            q,
            params.discriminant(),
            verdict.short_label(),
            reason
        ));
    }
    out
}

fn parse_range(text: &str) -> Result<(i64, i64), Failure> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Failure::usage(format!("range `{text}` must look like lo..hi")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Failure::usage(format!("invalid range bound `{t}`")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let io = |e: std::io::Error| Failure { code: EXIT_IO, message: e.to_string() };
    match command {
        Command::Classify { p, q, extended } => {
            let mode = if extended { Mode::Extended } else { Mode::Strict };
            let params = LucasParams::new(p, q);
            let verdict = classify(&params, mode);
            writeln!(out, "U_n{params}: {verdict}").map_err(io)?;
            Ok(verdict.exit_code())
        }
        Command::Table => {
            out.write_all(table_text().as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Gen { input, horizon } => {
            let (header, values) = match resolve_input(&input)? {
                Input::Source(src) => (vec![format!("{src}, indices 0..={horizon}")], src.prefix(horizon + 1)),
                Input::File { path, file } => (file_header(&path, &file), file.into_values()),
            };
            let text = BFile::from_values(values).emit_with_header(&header);
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Logk { input, depth, horizon } => {
            if depth == 0 {
                return Err(Failure::usage("--depth must be at least 1"));
            }
            let (mut header, window) = match resolve_input(&input)? {
                Input::Source(src) => (vec![], src.generate(horizon)),
                Input::File { path, file } => {
                    (file_header(&path, &file), SeqWindow::truncating(file.into_values()))
                }
            };
            let result = apply_log_k(&window, depth).map_err(|e| Failure::parse(e.to_string()))?;
            header.push(format!("L^{depth} of {}", window.provenance()));
            header.push(match result.right_policy() {
                RightPolicy::Truncate => format!(
                    "right edge truncated: one index dropped per application, indices 0..={}",
                    result.len() as i64 - 1
                ),
                RightPolicy::Extendable => format!(
                    "right edge extended from the generator, indices 0..={}",
                    result.len() - 1
                ),
            });
            let text = BFile::from_values(result.into_values()).emit_with_header(&header);
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Check { input, depth, horizon, truncate } => {
            if depth == 0 {
                return Err(Failure::usage("--depth must be at least 1"));
            }
            let mut certify = true;
            let (src, verdict) = match resolve_input(&input)? {
                Input::Source(src) => {
                    let v = check_k_fold(&src, depth, horizon).map_err(|e| Failure::usage(e.to_string()))?;
                    (src, v)
                }
                Input::File { file, .. } => {
                    let window = SeqWindow::truncating(file.into_values());
                    certify = !truncate;
                    let v = if truncate {
                        check_k_fold_window(&window, depth)
                    } else {
                        check_k_fold(window.source(), depth, horizon)
                    }
                    .map_err(|e| Failure::parse(e.to_string()))?;
                    (window.source().clone(), v)
                }
            };
            writeln!(out, "source: {src}").map_err(io)?;
            writeln!(out, "verdict: {verdict}").map_err(io)?;
            if let FoldKind::Failure { witness, .. } = &verdict.kind {
                writeln!(
                    out,
                    "witness: left = {}, center = {}, right = {}",
                    witness.left, witness.center, witness.right
                )
                .map_err(io)?;
            }
            if certify && !verdict.is_failure() {
                match detect_stationary(&src, horizon) {
                    Some(cert) => writeln!(out, "certificate: {cert}").map_err(io)?,
                    None => writeln!(out, "certificate: none").map_err(io)?,
                }
            }
            Ok(u8::from(verdict.is_failure()))
        }
        Command::Search { order, range, horizon, depth, init, output, table } => {
            let (lo, hi) = parse_range(&range)?;
            let init = match init {
                Some(text) => InitChoice::Fixed { values: parse_list(&text)? },
                None => InitChoice::LucasLike,
            };
            let config = GridConfig { order, lo, hi, init, horizon, imax: depth };
            let entries = grid_search(&config).map_err(|e| match e {
                ExplorerError::InitLength { .. } => Failure::usage(e.to_string()),
                _ => Failure { code: EXIT_LIMITS, message: e.to_string() },
            })?;
            let doc = ReportDocument { config, entries };
            if let Some(path) = &output {
                std::fs::write(path, doc.emit_machine())
                    .map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })?;
                writeln!(err, "wrote {} records to {}", doc.entries.len(), path.display()).map_err(io)?;
            }
            if table {
                out.write_all(doc.emit_table().as_bytes()).map_err(io)?;
            }
            for line in doc.summary().lines() {
                writeln!(out, "{line}").map_err(io)?;
            }
            Ok(0)
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if shown {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if shown { 0 } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["logconcave"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_exit_codes() {
        assert_eq!(run_args(&["classify", "-P", "3", "-Q", "2"]).0, 0);
        let (code, out, _) = run_args(&["classify", "-P", "1", "-Q", "-1"]);
        assert_eq!(code, 1);
        assert!(out.contains("n = 2"), "{out}");
        assert_eq!(run_args(&["classify", "-P", "1", "-Q", "1"]).0, 2);
        assert_eq!(run_args(&["classify", "-P", "x", "-Q", "1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["classify", "-P", "1.5", "-Q", "1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["classify", "-P", "3", "-Q", "0"]).0, 2);
        assert_eq!(run_args(&["classify", "-P", "3", "-Q", "0", "--extended"]).0, 0);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("classify"));
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn source_specs() {
        let s = |t| parse_source(t, Mode::Strict);
        assert_eq!(s("const:3").unwrap(), SeqSource::constant(3));
        assert_eq!(s("geom:1,2").unwrap(), SeqSource::geometric(1, 2).unwrap());
        assert_eq!(s("lucas:1,-1").unwrap(), SeqSource::lucas(1, -1, Mode::Strict).unwrap());
        assert!(s("polygeo:2").is_ok());
        assert!(s("rec:1,1/0,1").is_ok());
        assert!(s("rec:1,1/0").is_err());
        assert!(s("lucas:1").is_err());
        assert!(s("lucas:1,1").is_err());
        assert!(s("nope:1").is_err());
        assert!(s("const").is_err());
        assert!(parse_source("lucas:3,0", Mode::Extended).is_ok());
    }

    #[test]
    fn gen_writes_bfile() {
        let (code, out, _) = run_args(&["gen", "--source", "lucas:2,-1", "--horizon", "5"]);
        assert_eq!(code, 0);
        let f = BFile::parse(&out).unwrap();
        assert_eq!(f.values(), &[0, 1, 2, 5, 12, 29].map(Integer::from)[..]);
        let (code, out, _) = run_args(&["gen", "-P", "3", "-Q", "2", "--horizon", "3"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("0 0\n1 1\n2 3\n3 7\n"));
        assert_eq!(run_args(&["gen"]).0, EXIT_USAGE);
    }

    #[test]
    fn check_exit_codes() {
        let (code, out, _) = run_args(&["check", "-P", "1", "-Q", "-1", "--depth", "1"]);
        assert_eq!(code, 1);
        assert!(out.contains("fails at depth 1"), "{out}");
        let (code, out, _) = run_args(&["check", "--source", "lucas:3,2", "--depth", "10", "--horizon", "64"]);
        assert_eq!(code, 0);
        assert!(out.contains("certificate: L-image is 1·(2)^(n-1)"), "{out}");
        assert_eq!(run_args(&["check", "--source", "const:1", "--depth", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn search_limits() {
        let (code, _, err) = run_args(&["search", "--order", "5", "--range", "-1..1"]);
        assert_eq!(code, EXIT_LIMITS);
        assert!(err.contains("order 5"));
        assert_eq!(run_args(&["search", "--order", "2", "--range", "-20..20"]).0, EXIT_LIMITS);
        assert_eq!(run_args(&["search", "--order", "2", "--range", "nope"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["search", "--order", "2", "--range", "-1..1", "--init", "1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("-3..3").unwrap(), (-3, 3));
        assert_eq!(parse_range("2..5").unwrap(), (2, 5));
        assert!(parse_range("3").is_err());
    }
}
