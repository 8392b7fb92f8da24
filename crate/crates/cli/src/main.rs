//! `cubewalk`: generate words, mark cube endings, scan runs and verify the
//! run-length laws from the command line.
//!
//! Output goes to stdout unless `--output` is given. A relative `--output`
//! path is resolved against `$CUBEWALK_OUT_DIR` when that is set. Files are
//! written in one step (temporary file, then rename) after the command has
//! finished.
//!
//! Exit codes: 0 success, 1 a verification failed (the report is still
//! written), 2 usage or word-spec error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubewalk_core::analysis::{self, marks_for, render_columns, VerificationReport};
use cubewalk_core::automata::{Dfa, PatternExpr};
use cubewalk_core::repetitions::brute_cube_ends;
use cubewalk_core::{census, compile, runs_of, zeck_encode, Count, WordSpec, ZeckRepr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const OUT_DIR_ENV: &str = "CUBEWALK_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "cubewalk",
    version,
    about = "Cube-ending positions in Fibonacci, Sturmian and morphic words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for sampled cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Word specs: `fib`, `doubling`, `morphic:0->0001,1->1011;seed=0`,
/// `cf:[0;4,(3)]`, `slope:(5-sqrt(13))/6`.
#[derive(Args)]
struct WordArgs {
    /// Word spec.
    #[arg(long, default_value = "fib", value_parser = parse_word)]
    word: WordSpec,

    /// Number of symbols to generate.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    horizon: u64,

    /// Smallest cube period that counts.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    min_period: u64,
}

impl WordArgs {
    fn horizon(&self) -> usize {
        self.horizon as usize
    }

    fn min_period(&self) -> usize {
        self.min_period as usize
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of the word.
    Prefix(WordArgs),
    /// The 0/1 sequence of cube-ending positions.
    Marks {
        #[command(flatten)]
        word: WordArgs,
        /// Cross-check this many randomly chosen positions (see --seed)
        /// against the direct cube test.
        #[arg(long, default_value_t = 0)]
        check_sample: usize,
    },
    /// Maximal symbol runs of the mark sequence.
    Runs {
        #[command(flatten)]
        word: WordArgs,
        /// Only runs of this symbol.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        symbol: Option<u8>,
    },
    /// Run-length census of the mark sequence (complete runs only).
    Census {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        symbol: u8,
        /// Ignore runs starting before this position.
        #[arg(long, default_value_t = 0)]
        burn_in: usize,
    },
    /// Partial sums S(n) at checkpoints.
    Sums {
        #[command(flatten)]
        word: WordArgs,
        /// Comma-separated, ascending; defaults to the horizon.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Vec<usize>,
    },
    /// Compare S_a(n) against S_b(n) over a range of n.
    Compare {
        /// Word a.
        #[arg(long, value_parser = parse_word)]
        word: WordSpec,
        /// Word b.
        #[arg(long, value_parser = parse_word)]
        against: WordSpec,
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 3000)]
        to: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min_period: u64,
        /// Exit 1 unless S_a(n) > S_b(n) throughout.
        #[arg(long)]
        expect_dominance: bool,
    },
    /// Zero counts Z(n) = n - S(n) and Z(n)/n.
    Density {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_delimiter = ',')]
        checkpoints: Vec<usize>,
    },
    /// Estimate the longest 0-run length that keeps recurring.
    Maxnocubes {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 0)]
        burn_in: usize,
        /// Occurrences needed to call a length recurring.
        #[arg(long, default_value_t = 5)]
        threshold: usize,
    },
    /// Check the run laws of the Fibonacci cube marks.
    Verify {
        #[arg(value_enum)]
        which: Law,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(100..))]
        horizon: u64,
    },
    /// Zeckendorf patterns: `0`, `1`, `ε`, juxtaposition, `+` inside
    /// parentheses, postfix `*`, `^*`, `^+`, `?`.
    Pattern {
        #[command(subcommand)]
        op: PatternOp,
    },
    /// S(n) for c_β and f at n = 500, 1000, 2000, 3000.
    Table1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Thm1,
    Thm2,
    Runstarts,
}

#[derive(Subcommand)]
enum PatternOp {
    /// Test one input. The input is a Zeckendorf digit string; `0` stands
    /// for the empty representation. With --int it is a decimal integer.
    Accepts {
        pattern: String,
        input: String,
        #[arg(long)]
        int: bool,
    },
    /// Number of accepted strings of each length up to --length.
    Count {
        pattern: String,
        #[arg(long)]
        length: usize,
    },
    /// Accepted strings of exactly --length symbols.
    Enumerate {
        pattern: String,
        #[arg(long)]
        length: usize,
    },
    /// Finite, polynomial or exponential.
    Growth { pattern: String },
}

fn parse_word(s: &str) -> Result<WordSpec, String> {
    s.parse::<WordSpec>().map_err(|e| e.to_string())
}

/// A usage error naming the flag or argument at fault.
struct UsageError {
    flag: &'static str,
    message: String,
}

fn usage(flag: &'static str, message: impl ToString) -> UsageError {
    UsageError {
        flag,
        message: message.to_string(),
    }
}

/// One command's result in all three formats.
struct Rendered {
    json: serde_json::Value,
    csv: (Vec<&'static str>, Vec<Vec<String>>),
    text: String,
    failed: bool,
}

impl Rendered {
    fn format(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv.0).expect("in-memory write");
                for row in &self.csv.1 {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
            }
        }
    }
}

fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| char::from(b'0' + b)).collect()
}

/// Zeckendorf strings for display; the empty representation prints as `0`.
fn show_zeck(z: &ZeckRepr) -> String {
    if z.is_empty() {
        "0".to_string()
    } else {
        z.to_string()
    }
}

fn show_digits(d: &[u8]) -> String {
    if d.is_empty() {
        "0".to_string()
    } else {
        bit_string(d)
    }
}

fn require_convention(word: &WordSpec, min_period: usize) -> Result<(), UsageError> {
    if word.is_sturmian() && !matches!(word, WordSpec::Fibonacci) && min_period != 1 {
        return Err(usage(
            "--min-period",
            "Sturmian words other than fib are analysed with --min-period 1 only",
        ));
    }
    Ok(())
}

fn generate(word: &WordSpec, horizon: usize) -> Result<cubewalk_core::Prefix, UsageError> {
    word.prefix(horizon).map_err(|e| usage("--word", e))
}

fn cmd_prefix(a: &WordArgs) -> Result<Rendered, UsageError> {
    let p = generate(&a.word, a.horizon())?;
    let bits = bit_string(p.symbols());
    Ok(Rendered {
        json: json!({ "word": a.word.to_string(), "horizon": a.horizon(), "prefix": bits }),
        csv: (
            vec!["position", "symbol"],
            p.symbols()
                .iter()
                .enumerate()
                .map(|(i, s)| vec![i.to_string(), s.to_string()])
                .collect(),
        ),
        text: format!("{bits}\n"),
        failed: false,
    })
}

fn cmd_marks(a: &WordArgs, check_sample: usize, seed: u64) -> Result<Rendered, UsageError> {
    let p = generate(&a.word, a.horizon())?;
    let marks = cubewalk_core::cube_marks(&p, a.min_period());
    let mut mismatches = Vec::new();
    if check_sample > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..check_sample {
            let j = rng.gen_range(0..p.len());
            let direct = brute_cube_ends(&p, j, a.min_period()).expect("sampled index is in range");
            if direct != (marks.bits[j] == 1) {
                mismatches.push(j);
            }
        }
    }
    let bits = bit_string(&marks.bits);
    let ones = marks.ones_before(marks.horizon());
    let mut text = format!(
        "marks  word={}  horizon={}  min_period={}  ones={}\n{bits}\n",
        a.word,
        a.horizon(),
        a.min_period(),
        ones
    );
    if check_sample > 0 {
        let _ = writeln!(
            text,
            "sampled {check_sample} positions (seed {seed}): {} mismatches {:?}",
            mismatches.len(),
            mismatches
        );
    }
    Ok(Rendered {
        json: json!({
            "word": a.word.to_string(),
            "horizon": a.horizon(),
            "min_period": a.min_period(),
            "ones": ones,
            "marks": bits,
            "sample": { "size": check_sample, "seed": seed, "mismatches": mismatches },
        }),
        csv: (
            vec!["position", "bit"],
            marks
                .bits
                .iter()
                .enumerate()
                .map(|(i, b)| vec![i.to_string(), b.to_string()])
                .collect(),
        ),
        text,
        failed: !mismatches.is_empty(),
    })
}

fn cmd_runs(a: &WordArgs, symbol: Option<u8>) -> Result<Rendered, UsageError> {
    let marks = marks_for(&a.word, a.horizon(), a.min_period()).map_err(|e| usage("--word", e))?;
    let mut runs = Vec::new();
    for s in [0, 1] {
        if symbol.is_none_or(|want| want == s) {
            runs.extend(runs_of(&marks.bits, s));
        }
    }
    runs.sort_by_key(|r| r.start);
    let rows: Vec<Vec<String>> = runs
        .iter()
        .map(|r| {
            vec![
                r.symbol.to_string(),
                r.start.to_string(),
                r.length.to_string(),
                r.complete.to_string(),
            ]
        })
        .collect();
    let text = format!(
        "runs  word={}  horizon={}  min_period={}\n{}",
        a.word,
        a.horizon(),
        a.min_period(),
        render_columns(&["symbol", "start", "length", "complete"], &rows)
    );
    Ok(Rendered {
        json: json!({
            "word": a.word.to_string(),
            "horizon": a.horizon(),
            "min_period": a.min_period(),
            "runs": runs,
        }),
        csv: (vec!["symbol", "start", "length", "complete"], rows),
        text,
        failed: false,
    })
}

fn cmd_census(a: &WordArgs, symbol: u8, burn_in: usize) -> Result<Rendered, UsageError> {
    let marks = marks_for(&a.word, a.horizon(), a.min_period()).map_err(|e| usage("--word", e))?;
    let c = census(&marks.bits, symbol, burn_in);
    let rows: Vec<Vec<String>> = c
        .counts
        .iter()
        .map(|(l, n)| vec![l.to_string(), n.to_string()])
        .collect();
    let text = format!(
        "census  word={}  horizon={}  min_period={}  symbol={}  burn_in={}\n{}",
        a.word,
        a.horizon(),
        a.min_period(),
        symbol,
        burn_in,
        render_columns(&["length", "count"], &rows)
    );
    Ok(Rendered {
        json: json!({
            "word": a.word.to_string(),
            "horizon": a.horizon(),
            "min_period": a.min_period(),
            "census": c,
        }),
        csv: (vec!["length", "count"], rows),
        text,
        failed: false,
    })
}

fn checkpoints_or_horizon(cp: &[usize], horizon: usize) -> Vec<usize> {
    if cp.is_empty() {
        vec![horizon]
    } else {
        cp.to_vec()
    }
}

fn cmd_sums(a: &WordArgs, checkpoints: &[usize]) -> Result<Rendered, UsageError> {
    require_convention(&a.word, a.min_period())?;
    let cp = checkpoints_or_horizon(checkpoints, a.horizon());
    let t = analysis::partial_sums(&a.word, &cp, a.min_period())
        .map_err(|e| usage("--checkpoints", e))?;
    Ok(Rendered {
        json: serde_json::to_value(&t).expect("serializable"),
        csv: (
            vec!["n", "S"],
            t.rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.s.to_string()])
                .collect(),
        ),
        text: t.to_text(),
        failed: false,
    })
}

fn cmd_compare(
    a: &WordSpec,
    b: &WordSpec,
    from: usize,
    to: usize,
    min_period: usize,
    expect_dominance: bool,
) -> Result<Rendered, UsageError> {
    require_convention(a, min_period)?;
    require_convention(b, min_period)?;
    let c =
        analysis::compare_sums(a, b, from, to, min_period).map_err(|e| usage("--from/--to", e))?;
    let rows = c
        .rows
        .iter()
        .map(|&(n, sa, sb)| {
            let sign = match sa.cmp(&sb) {
                std::cmp::Ordering::Greater => "+",
                std::cmp::Ordering::Equal => "0",
                std::cmp::Ordering::Less => "-",
            };
            vec![
                n.to_string(),
                sa.to_string(),
                sb.to_string(),
                sign.to_string(),
            ]
        })
        .collect();
    Ok(Rendered {
        json: serde_json::to_value(&c).expect("serializable"),
        csv: (vec!["n", "S_a", "S_b", "sign"], rows),
        text: c.to_text(),
        failed: expect_dominance && !c.strict_dominance,
    })
}

fn cmd_density(a: &WordArgs, checkpoints: &[usize]) -> Result<Rendered, UsageError> {
    require_convention(&a.word, a.min_period())?;
    let cp = checkpoints_or_horizon(checkpoints, a.horizon());
    let d = analysis::density_report(&a.word, &cp, a.min_period())
        .map_err(|e| usage("--checkpoints", e))?;
    Ok(Rendered {
        json: serde_json::to_value(&d).expect("serializable"),
        csv: (
            vec!["n", "Z", "fraction"],
            d.rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.zeros.to_string(),
                        format!("{:.6}", r.fraction),
                    ]
                })
                .collect(),
        ),
        text: d.to_text(),
        failed: false,
    })
}

fn cmd_maxnocubes(a: &WordArgs, burn_in: usize, threshold: usize) -> Result<Rendered, UsageError> {
    require_convention(&a.word, a.min_period())?;
    let e =
        analysis::max_no_cubes_estimate(&a.word, a.horizon(), burn_in, threshold, a.min_period())
            .map_err(|e| usage("--horizon/--burn-in/--threshold", e))?;
    let rows = e
        .census
        .iter()
        .map(|(l, n)| vec![l.to_string(), n.to_string(), (*n >= threshold).to_string()])
        .collect();
    Ok(Rendered {
        json: serde_json::to_value(&e).expect("serializable"),
        csv: (vec!["length", "count", "recurring"], rows),
        text: e.to_text(),
        failed: false,
    })
}

fn report_rendered(r: VerificationReport) -> Rendered {
    let rows = r
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
        .collect();
    let mut json = serde_json::to_value(&r).expect("serializable");
    json["passed"] = json!(r.passed());
    Rendered {
        text: r.to_text(),
        failed: !r.passed(),
        json,
        csv: (vec!["check", "passed", "detail"], rows),
    }
}

fn cmd_verify(which: Law, horizon: usize) -> Result<Rendered, UsageError> {
    let report = match which {
        Law::Thm1 => analysis::verify_theorem1(horizon),
        Law::Thm2 => analysis::verify_theorem2(horizon),
        Law::Runstarts => analysis::verify_run_starts(horizon),
    }
    .map_err(|e| usage("--horizon", e))?;
    Ok(report_rendered(report))
}

fn compile_pattern(pattern: &str) -> Result<Dfa, UsageError> {
    let expr: PatternExpr = pattern.parse().map_err(|e| usage("PATTERN", e))?;
    Ok(compile(&expr))
}

fn cmd_pattern(op: &PatternOp) -> Result<Rendered, UsageError> {
    match op {
        PatternOp::Accepts {
            pattern,
            input,
            int,
        } => {
            let dfa = compile_pattern(pattern)?;
            let repr = if *int {
                let n: u64 = input
                    .parse()
                    .map_err(|_| usage("INPUT", format!("`{input}` is not an integer")))?;
                zeck_encode(&n)
            } else if input == "0" {
                ZeckRepr::default()
            } else {
                input.parse::<ZeckRepr>().map_err(|e| usage("INPUT", e))?
            };
            let value: Count = repr.value().expect("unbounded value");
            let accepted = dfa.accepts_bits(repr.digits());
            let shown = show_zeck(&repr);
            Ok(Rendered {
                json: json!({ "pattern": pattern, "input": shown, "value": value.to_string(), "accepted": accepted }),
                csv: (
                    vec!["input", "value", "accepted"],
                    vec![vec![shown.clone(), value.to_string(), accepted.to_string()]],
                ),
                text: format!(
                    "{shown} ({value}): {}\n",
                    if accepted { "accepted" } else { "rejected" }
                ),
                failed: false,
            })
        }
        PatternOp::Count { pattern, length } => {
            let dfa = compile_pattern(pattern)?;
            let counts: Vec<Count> = (0..=*length)
                .map(|m| dfa.count_length::<Count>(m).expect("unbounded count"))
                .collect();
            let rows: Vec<Vec<String>> = counts
                .iter()
                .enumerate()
                .map(|(m, c)| vec![m.to_string(), c.to_string()])
                .collect();
            Ok(Rendered {
                json: json!({
                    "pattern": pattern,
                    "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
                text: format!(
                    "pattern {pattern}\n{}",
                    render_columns(&["length", "count"], &rows)
                ),
                csv: (vec!["length", "count"], rows),
                failed: false,
            })
        }
        PatternOp::Enumerate { pattern, length } => {
            let dfa = compile_pattern(pattern)?;
            let words: Vec<String> = dfa
                .enumerate(*length)
                .iter()
                .map(|w| show_digits(w))
                .collect();
            let mut text = String::new();
            for w in &words {
                text.push_str(w);
                text.push('\n');
            }
            Ok(Rendered {
                json: json!({ "pattern": pattern, "length": length, "strings": words }),
                csv: (
                    vec!["string"],
                    words.iter().map(|w| vec![w.clone()]).collect(),
                ),
                text,
                failed: false,
            })
        }
        PatternOp::Growth { pattern } => {
            let dfa = compile_pattern(pattern)?;
            let class = dfa.growth_class();
            let degree = dfa.polynomial_degree();
            let degree_s = degree.map_or(String::new(), |d| d.to_string());
            Ok(Rendered {
                json: json!({ "pattern": pattern, "class": class, "degree": degree }),
                csv: (
                    vec!["class", "degree"],
                    vec![vec![class.to_string(), degree_s.clone()]],
                ),
                text: match degree {
                    Some(d) => format!("{class} (degree {d})\n"),
                    None => format!("{class}\n"),
                },
                failed: false,
            })
        }
    }
}

const TABLE1_POINTS: [usize; 4] = [500, 1000, 2000, 3000];

fn cmd_table1() -> Rendered {
    let beta =
        analysis::partial_sums(&WordSpec::beta_cf(), &TABLE1_POINTS, 1).expect("fixed inputs");
    let fib =
        analysis::partial_sums(&WordSpec::Fibonacci, &TABLE1_POINTS, 1).expect("fixed inputs");
    let rows: Vec<Vec<String>> = beta
        .rows
        .iter()
        .zip(&fib.rows)
        .map(|(b, f)| vec![b.n.to_string(), b.s.to_string(), f.s.to_string()])
        .collect();
    Rendered {
        json: json!({
            "words": [beta.word, fib.word],
            "min_period": 1,
            "rows": beta.rows.iter().zip(&fib.rows).map(|(b, f)| json!({ "n": b.n, "S_cbeta": b.s, "S_f": f.s })).collect::<Vec<_>>(),
        }),
        text: render_columns(&["n", "S_cbeta(n)", "S_f(n)"], &rows),
        csv: (vec!["n", "S_cbeta", "S_f"], rows),
        failed: false,
    }
}

fn execute(cli: &Cli) -> Result<Rendered, UsageError> {
    match &cli.command {
        Command::Prefix(a) => cmd_prefix(a),
        Command::Marks { word, check_sample } => cmd_marks(word, *check_sample, cli.seed),
        Command::Runs { word, symbol } => cmd_runs(word, *symbol),
        Command::Census {
            word,
            symbol,
            burn_in,
        } => cmd_census(word, *symbol, *burn_in),
        Command::Sums { word, checkpoints } => cmd_sums(word, checkpoints),
        Command::Compare {
            word,
            against,
            from,
            to,
            min_period,
            expect_dominance,
        } => cmd_compare(
            word,
            against,
            *from,
            *to,
            *min_period as usize,
            *expect_dominance,
        ),
        Command::Density { word, checkpoints } => cmd_density(word, checkpoints),
        Command::Maxnocubes {
            word,
            burn_in,
            threshold,
        } => cmd_maxnocubes(word, *burn_in, *threshold),
        Command::Verify { which, horizon } => cmd_verify(*which, *horizon as usize),
        Command::Pattern { op } => cmd_pattern(op),
        Command::Table1 => Ok(cmd_table1()),
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {}", e.flag, e.message);
            return ExitCode::from(2);
        }
    };
    let out = rendered.format(cli.format);
    match &cli.output {
        Some(path) => {
            let path = resolve_output(path);
            if let Err(e) = write_atomically(&path, &out) {
                eprintln!("error: --output: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    if rendered.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
