use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tortoise::complexity::{
    abel_stats, complexity_table, pf_thresholds, AgreementStat, ComplexityKind,
};
use tortoise::error::{Error, Result};
use tortoise::sequences::{load_dfao, InfiniteWord};
use tortoise::verify::{
    verify_all, verify_left_special_lemma, verify_pf_injectivity, verify_pf_rho_formula,
    verify_sandwich, verify_tm_class_structure, verify_tm_counters, verify_tm_rho_formula,
    VerificationReport,
};
use tortoise::word::{
    hare, iterate_tortoise, sort, tortoise, tortoise_sort_index, Word,
};
use tortoise::StabilizationPolicy;

/// Stack-sorting operators on words and complexity functions of automatic
/// sequences.
#[derive(Parser)]
#[command(name = "tortoise", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a word operation and print the result.
    Word {
        #[arg(value_enum)]
        op: WordOp,
        /// The word, as a digit string (or comma-separated symbols).
        word: String,
        /// Iteration count for `iterate`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Emit a complexity table over a range of factor lengths.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[command(flatten)]
        seq: SeqArgs,
        /// Factor length range, LO..HI inclusive (or a single length).
        #[arg(long, value_parser = parse_range)]
        n: Range,
        /// Tortoise iteration count (tortoise tables only).
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compute per-k statistics.
    Stat {
        #[arg(value_enum)]
        kind: StatKind,
        #[command(flatten)]
        seq: SeqArgs,
        /// Range of k, LO..HI inclusive (or a single k).
        #[arg(long, value_parser = parse_range)]
        k: Range,
        /// Largest factor length scanned; statistics are relative to it.
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite; exits 0 on pass, 1 on fail.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Factor length range, LO..HI inclusive.
        #[arg(long, value_parser = parse_range)]
        n: Range,
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WordOp {
    Hare,
    Tortoise,
    Sort,
    Index,
    Iterate,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Rho,
    Ab,
    Tortoise,
    Nearly,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatKind {
    Abel,
    Threshold,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    PfInj,
    PfRho,
    TmClasses,
    TmCounters,
    TmRho,
    Lemma1,
    Sandwich,
    All,
}

#[derive(Args)]
struct SeqArgs {
    /// Built-in sequence: `f` (paperfolding) or `t` (Thue-Morse).
    #[arg(long, conflicts_with = "dfao")]
    seq: Option<String>,
    /// Path to a DFAO description file defining the sequence.
    #[arg(long)]
    dfao: Option<PathBuf>,
}

#[derive(Args)]
struct PolicyArgs {
    /// Floor for the starting prefix length of factor enumeration.
    #[arg(long)]
    prefix_init: Option<u64>,
    /// Hard cap on the prefix length.
    #[arg(long)]
    prefix_max: Option<u64>,
    /// Consecutive stable doublings required before trusting a count.
    #[arg(long)]
    window: Option<u32>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy)]
struct Range {
    lo: usize,
    hi: usize,
}

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (
            lo.parse().map_err(|_| format!("bad range start {lo:?}"))?,
            hi.parse().map_err(|_| format!("bad range end {hi:?}"))?,
        ),
        None => {
            let v = s.parse().map_err(|_| format!("bad range {s:?}"))?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Range { lo, hi })
}

impl SeqArgs {
    fn resolve(&self) -> Result<InfiniteWord> {
        match (&self.seq, &self.dfao) {
            (Some(name), None) => match name.as_str() {
                "f" => Ok(InfiniteWord::paperfolding()),
                "t" => Ok(InfiniteWord::thue_morse()),
                other => Err(Error::Usage(format!(
                    "unknown sequence {other:?}; built-ins are `f` and `t`"
                ))),
            },
            (None, Some(path)) => {
                let dfao = load_dfao(path)?;
                Ok(InfiniteWord::from_dfao(path.display().to_string(), dfao, 0))
            }
            (None, None) => Err(Error::Usage(
                "a sequence is required: pass --seq f|t or --dfao PATH".into(),
            )),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }
}

impl PolicyArgs {
    fn resolve(&self) -> StabilizationPolicy {
        let mut policy = StabilizationPolicy::default();
        if let Some(v) = self.prefix_init {
            policy.initial_prefix = v;
        }
        if let Some(v) = self.prefix_max {
            policy.max_prefix = v;
        }
        if let Some(v) = self.window {
            policy.window = v;
        }
        policy
    }
}

impl OutArgs {
    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, content)?,
            None => print!("{content}"),
        }
        Ok(())
    }
}

fn run_word(op: WordOp, input: &str, k: Option<usize>) -> Result<String> {
    let word = Word::from_str(input)?;
    Ok(match op {
        WordOp::Hare => format!("{}\n", hare(&word)),
        WordOp::Tortoise => format!("{}\n", tortoise(&word)),
        WordOp::Sort => format!("{}\n", sort(&word)),
        WordOp::Index => format!("{}\n", tortoise_sort_index(&word)?),
        WordOp::Iterate => {
            let k = k.ok_or_else(|| Error::Usage("iterate requires --k".into()))?;
            format!("{}\n", iterate_tortoise(&word, k))
        }
    })
}

fn run_table(
    kind: TableKind,
    seq: &SeqArgs,
    n: Range,
    k: usize,
    policy: &StabilizationPolicy,
    out: &OutArgs,
) -> Result<()> {
    let x = seq.resolve()?;
    let kind = match kind {
        TableKind::Rho => ComplexityKind::Factor,
        TableKind::Ab => ComplexityKind::Abelian,
        TableKind::Tortoise => {
            if k == 0 {
                return Err(Error::Usage("tortoise tables require --k >= 1".into()));
            }
            ComplexityKind::Tortoise(k)
        }
        TableKind::Nearly => ComplexityKind::NearlyAbelian,
    };
    let table = complexity_table(&x, kind, n.lo, n.hi, policy)?;
    let content = match out.format {
        Format::Text => table.to_string(),
        Format::Csv => table.to_csv(),
        Format::Json => format!("{}\n", table.to_json()),
    };
    out.emit(&content)
}

fn run_stat(
    kind: StatKind,
    seq: &SeqArgs,
    k: Range,
    nmax: usize,
    policy: &StabilizationPolicy,
    out: &OutArgs,
) -> Result<()> {
    let content = match kind {
        StatKind::Abel => {
            let x = seq.resolve()?;
            let stats = abel_stats(&x, k.lo, k.hi, nmax, policy)?;
            render_abel(&x, &stats, nmax, out.format)?
        }
        StatKind::Threshold => {
            if let Some(name) = &seq.seq {
                if name != "f" {
                    return Err(Error::Usage(
                        "the threshold statistic is defined for the paperfolding word; \
                         omit --seq or pass --seq f"
                            .into(),
                    ));
                }
            }
            if seq.dfao.is_some() {
                return Err(Error::Usage(
                    "the threshold statistic is defined for the paperfolding word".into(),
                ));
            }
            let values = pf_thresholds(k.lo, k.hi, nmax, policy)?;
            render_thresholds(k, &values, nmax, out.format)?
        }
    };
    out.emit(&content)
}

fn render_abel(
    x: &InfiniteWord,
    stats: &[AgreementStat],
    nmax: usize,
    format: Format,
) -> Result<String> {
    Ok(match format {
        Format::Text => {
            let values: Vec<String> = stats.iter().map(|s| s.to_string()).collect();
            format!("{}\n# abel_{}(k), n_max = {nmax}\n", values.join(","), x.name())
        }
        Format::Csv => {
            let mut s = String::from("k,value,n_max\n");
            for stat in stats {
                let v = match stat.value {
                    Some(v) => v.to_string(),
                    None => String::new(),
                };
                writeln!(s, "{},{v},{nmax}", stat.k).unwrap();
            }
            s
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(stats).expect("serializable")),
    })
}

fn render_thresholds(k: Range, values: &[usize], nmax: usize, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => {
            let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            format!("{}\n# s(k), verified up to n_max = {nmax}\n", rendered.join(","))
        }
        Format::Csv => {
            let mut s = String::from("k,value,n_max\n");
            for (i, v) in values.iter().enumerate() {
                writeln!(s, "{},{v},{nmax}", k.lo + i).unwrap();
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = values
                .iter()
                .enumerate()
                .map(|(i, v)| serde_json::json!({"k": k.lo + i, "value": v, "n_max": nmax}))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows).expect("serializable"))
        }
    })
}

fn run_verify(
    suite: SuiteArg,
    n: Range,
    seq: &SeqArgs,
    policy: &StabilizationPolicy,
    out: &OutArgs,
) -> Result<bool> {
    let reports: Vec<VerificationReport> = match suite {
        SuiteArg::PfInj => vec![verify_pf_injectivity(n.lo, n.hi, policy)?],
        SuiteArg::PfRho => vec![verify_pf_rho_formula(n.lo, n.hi, policy)?],
        SuiteArg::TmClasses => vec![verify_tm_class_structure(n.lo, n.hi, policy)?],
        SuiteArg::TmCounters => vec![verify_tm_counters(n.lo, n.hi, policy)?],
        SuiteArg::TmRho => vec![verify_tm_rho_formula(n.lo, n.hi, policy)?],
        SuiteArg::Lemma1 => {
            let x = seq.resolve()?;
            vec![verify_left_special_lemma(&x, n.lo, n.hi, policy)?]
        }
        SuiteArg::Sandwich => {
            let x = seq.resolve()?;
            vec![verify_sandwich(&x, n.lo, n.hi, policy)?]
        }
        SuiteArg::All => verify_all(n.lo, n.hi, policy)?,
    };

    let all_passed = reports.iter().all(|r| r.passed());
    let content = match out.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("serializable")
        ),
        _ => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{r}").unwrap();
            }
            if reports.len() > 1 {
                writeln!(s, "overall: {}", if all_passed { "PASS" } else { "FAIL" }).unwrap();
            }
            s
        }
    };
    out.emit(&content)?;
    Ok(all_passed)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Word { op, word, k } => {
            print!("{}", run_word(op, &word, k)?);
            Ok(true)
        }
        Cmd::Table { kind, seq, n, k, policy, out } => {
            run_table(kind, &seq, n, k, &policy.resolve(), &out)?;
            Ok(true)
        }
        Cmd::Stat { kind, seq, k, nmax, policy, out } => {
            run_stat(kind, &seq, k, nmax, &policy.resolve(), &out)?;
            Ok(true)
        }
        Cmd::Verify { suite, n, seq, policy, out } => {
            run_verify(suite, n, &seq, &policy.resolve(), &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
