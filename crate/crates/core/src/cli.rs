//! Command-line front end. [`run`] parses arguments, dispatches and renders;
//! the binary only forwards its exit code.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::dirichlet::{pole_zeros, EvalResult, Evaluator, SeriesId};
use crate::error::{Error, Result};
use crate::golden::GoldenNum;
use crate::sequences::{delta_exact, seq_range, SeqId};
use crate::verification::{bfile_crosscheck_parsed, run_suite, Coding, Report, Suite, SuiteParams};
use crate::zeckendorf::ZeckWord;

pub const SCHEMA_VERSION: u32 = 1;
/// Longest range `seq` will print.
pub const MAX_SEQ_SPAN: u64 = 10_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "fibdir",
    version,
    about = "Zeckendorf lattices, golden-ratio arithmetic and Dirichlet series over δ(n)"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand, echoed into the output.
#[derive(Clone, Debug, Args)]
pub struct CliConfig {
    /// Working precision in bits.
    #[arg(
        long = "precision",
        global = true,
        env = "FIBDIR_PRECISION_BITS",
        default_value_t = 128
    )]
    pub precision_bits: u32,
    /// Largest number of terms for direct sums.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub terms: u64,
    /// Target absolute error for series evaluation.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl CliConfig {
    pub fn validate(&self) -> Result<()> {
        if !(53..=4096).contains(&self.precision_bits) {
            return Err(Error::Config(format!(
                "precision must lie in 53..=4096 bits, got {}",
                self.precision_bits
            )));
        }
        if self.terms == 0 || self.terms > crate::verification::MAX_N {
            return Err(Error::Config(format!(
                "terms must lie in 1..={}",
                crate::verification::MAX_N
            )));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        Ok(())
    }

    pub fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
    }

    fn echo(&self) -> Value {
        json!({
            "precision_bits": self.precision_bits.to_string(),
            "terms": self.terms.to_string(),
            "tol": format!("{:e}", self.tol),
            "output": format!("{:?}", self.output).to_lowercase(),
            "threads": self.threads().to_string(),
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeckendorf encoding and decoding.
    Zeck {
        #[command(subcommand)]
        op: ZeckOp,
    },
    /// Terms of a coded sequence.
    Seq {
        #[arg(value_parser = parse_seq)]
        id: SeqId,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Exact δ(n) and δ′(n) in the basis {1, β}.
    Delta {
        n: u64,
        /// Also print decimal values.
        #[arg(long)]
        float: bool,
    },
    /// Dirichlet series evaluation.
    Series {
        #[command(subcommand)]
        op: SeriesOp,
    },
    /// Zeros of 1 − 2β^{−s} + β^{−3s} on the three lattice lines.
    Poles {
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        k_min: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        k_max: i64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n_max: Option<u64>,
        /// Richardson levels for the telescoping sums.
        #[arg(long, default_value_t = 2)]
        levels: u8,
    },
    /// Compare a b-file with a generated sequence.
    Crosscheck {
        #[arg(long)]
        bfile: std::path::PathBuf,
        #[arg(long, value_parser = parse_seq)]
        seq: SeqId,
        /// Value relabelling such as `1:0,2:1,3:2`.
        #[arg(long, default_value = "")]
        coding: String,
        /// Entries compared; defaults to the whole file.
        #[arg(long)]
        limit: Option<usize>,
        /// Generated index = file index + offset. Inferred when absent.
        #[arg(long, allow_negative_numbers = true)]
        offset: Option<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZeckOp {
    Encode {
        n: u64,
    },
    /// Decode a most-significant-first word.
    Decode {
        word: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    F,
    G,
    H,
    I,
    J,
    P,
    Q,
    K,
}

#[derive(Debug, Subcommand)]
pub enum SeriesOp {
    Eval {
        #[arg(value_enum, ignore_case = true)]
        series: SeriesName,
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        im: f64,
        /// Residue class for K: 0, 1, 2 or 3.
        #[arg(long)]
        k_variant: Option<u8>,
        /// `x` or `x:y` meaning `x + yβ`.
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "2/5:1/5")]
        b: String,
    },
    Residue {
        #[arg(value_enum, ignore_case = true)]
        series: SeriesName,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        at: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
    },
}

fn parse_seq(s: &str) -> std::result::Result<SeqId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

/// Tabular result of a command, or a verification report.
pub enum Output {
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
    Report(Report),
}

impl Output {
    fn table(columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output::Table { columns, rows }
    }

    fn failed(&self) -> bool {
        matches!(self, Output::Report(r) if !r.passed())
    }

    pub fn render(&self, command: &str, config: &CliConfig) -> String {
        match config.output {
            Format::Json => {
                let mut top = Map::new();
                top.insert("schema_version".into(), json!(SCHEMA_VERSION));
                top.insert("command".into(), json!(command));
                top.insert("config".into(), config.echo());
                match self {
                    Output::Table { columns, rows } => {
                        let rs: Vec<Value> = rows
                            .iter()
                            .map(|r| {
                                Value::Object(
                                    columns
                                        .iter()
                                        .map(|c| c.to_string())
                                        .zip(r.iter().map(|v| json!(v)))
                                        .collect(),
                                )
                            })
                            .collect();
                        top.insert("results".into(), Value::Array(rs));
                    }
                    Output::Report(r) => {
                        top.insert("report".into(), r.to_json(false));
                    }
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json renders");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                match self {
                    Output::Table { columns, rows } => {
                        w.write_record(columns).expect("in-memory write");
                        for r in rows {
                            w.write_record(r).expect("in-memory write");
                        }
                    }
                    Output::Report(r) => {
                        w.write_record(["check_id", "claim", "status", "measured", "expected", "tolerance"])
                            .expect("in-memory write");
                        for e in &r.entries {
                            w.write_record([
                                &e.check_id,
                                &e.claim,
                                e.status.name(),
                                &e.measured,
                                &e.expected,
                                &e.tolerance,
                            ])
                            .expect("in-memory write");
                        }
                    }
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
            }
            Format::Text => {
                let c = config;
                let mut out = format!(
                    "# {command}: precision_bits={} terms={} tol={:e} threads={}\n",
                    c.precision_bits,
                    c.terms,
                    c.tol,
                    c.threads()
                );
                match self {
                    Output::Table { columns, rows } => {
                        let widths: Vec<usize> = (0..columns.len())
                            .map(|i| {
                                rows.iter()
                                    .map(|r| r[i].chars().count())
                                    .chain([columns[i].len()])
                                    .max()
                                    .unwrap_or(0)
                            })
                            .collect();
                        let line = |cells: Vec<&str>| {
                            let padded: Vec<String> =
                                cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                            padded.join("  ").trim_end().to_string() + "\n"
                        };
                        out += &line(columns.clone());
                        for r in rows {
                            out += &line(r.iter().map(String::as_str).collect());
                        }
                    }
                    Output::Report(r) => out += &r.to_text(),
                }
                out
            }
        }
    }
}

fn eval_row(what: String, r: &EvalResult) -> Vec<String> {
    vec![
        what,
        r.value.re().to_string_radix(10, None),
        r.value.im().to_string_radix(10, None),
        format!("{:e}", r.error_bound),
        r.terms_used.to_string(),
        r.method.name().to_string(),
        r.truncation_m.to_string(),
    ]
}

const EVAL_COLUMNS: [&str; 7] = [
    "series",
    "re",
    "im",
    "error_bound",
    "terms_used",
    "method",
    "truncation_m",
];

fn series_id(name: SeriesName) -> Result<SeriesId> {
    match name {
        SeriesName::F => Ok(SeriesId::F),
        SeriesName::G => Ok(SeriesId::G),
        SeriesName::H => Ok(SeriesId::H),
        SeriesName::I => Ok(SeriesId::I),
        SeriesName::J => Ok(SeriesId::J),
        other => Err(Error::Config(format!(
            "{other:?} has no residue computation; use F, G, H, I or J"
        ))),
    }
}

/// Runs a parsed command. Configuration problems come back as
/// [`Error::Config`] and map to the usage exit code.
pub fn execute(cli: &Cli) -> Result<Output> {
    let cfg = &cli.config;
    cfg.validate()?;
    let prec = cfg.precision_bits;
    Ok(match &cli.command {
        Command::Zeck {
            op: ZeckOp::Encode { n },
        } => Output::table(
            vec!["n", "word"],
            vec![vec![n.to_string(), ZeckWord::encode(*n).to_string()]],
        ),
        Command::Zeck {
            op: ZeckOp::Decode { word },
        } => {
            let w: ZeckWord = word.parse()?;
            Output::table(vec!["word", "n"], vec![vec![word.clone(), w.decode()?.to_string()]])
        }
        Command::Seq { id, from, to } => {
            if *from == 0 || to < from {
                return Err(Error::Config(format!("need 1 ≤ from ≤ to, got {from}..{to}")));
            }
            if to - from >= MAX_SEQ_SPAN {
                return Err(Error::Config(format!("range longer than {MAX_SEQ_SPAN} terms")));
            }
            let vals = seq_range(*id, *from, *to)?;
            let rows = (*from..=*to)
                .zip(vals)
                .map(|(n, v)| vec![n.to_string(), v.to_string()])
                .collect();
            Output::table(vec!["n", id.name()], rows)
        }
        Command::Delta { n, float } => {
            let d = delta_exact(*n)?;
            let mut columns = vec!["n", "delta", "delta_prime"];
            let mut row = vec![n.to_string(), d.delta.to_string(), d.delta_prime.to_string()];
            if *float {
                columns.extend(["delta_float", "delta_prime_float", "error_bound"]);
                let a = d.delta.to_float(prec);
                let b = d.delta_prime.to_float(prec);
                // One rounding of a correctly rounded conversion.
                let ulp = a.to_f64().abs().max(1.0) * 2f64.powi(1 - prec as i32);
                row.extend([
                    a.to_string_radix(10, None),
                    b.to_string_radix(10, None),
                    format!("{ulp:e}"),
                ]);
            }
            Output::table(columns, vec![row])
        }
        Command::Series { op } => {
            let ev = Evaluator::new(prec)?.with_max_terms(cfg.terms);
            match op {
                SeriesOp::Eval {
                    series,
                    re,
                    im,
                    k_variant,
                    a,
                    b,
                } => {
                    let s = ev.point(*re, *im);
                    let (what, r) = match series {
                        SeriesName::P => ("P".to_string(), ev.p_eval(&s, cfg.tol)?),
                        SeriesName::Q => ("Q".to_string(), ev.q_eval(&s, cfg.tol)?),
                        SeriesName::K => {
                            let i = k_variant.ok_or_else(|| Error::Config("K needs --k-variant 0..=3".into()))?;
                            if i > 3 {
                                return Err(Error::Config(format!("--k-variant must be 0..=3, got {i}")));
                            }
                            let a: GoldenNum = a.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
                            let b: GoldenNum = b.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
                            (format!("K{i}[a={a}, b={b}]"), ev.k_eval(i, &a, &b, &s, cfg.tol)?)
                        }
                        other => {
                            let id = series_id(*other)?;
                            (id.to_string(), ev.eval_series(id, &s, cfg.tol)?)
                        }
                    };
                    Output::table(EVAL_COLUMNS.to_vec(), vec![eval_row(what, &r)])
                }
                SeriesOp::Residue { series, at, eps } => {
                    let id = series_id(*series)?;
                    if !(*eps > 0.0 && *eps < 0.5) {
                        return Err(Error::Config(format!("eps must lie in (0, 0.5), got {eps}")));
                    }
                    let r = ev.residue_at(id, &ev.point(*at, 0.0), *eps)?;
                    // The Richardson step size is the usable error estimate.
                    let bound = r.at_eps.sub(&r.at_half_eps).abs_f64();
                    Output::table(
                        vec!["series", "at", "re", "im", "error_bound", "eps"],
                        vec![vec![
                            id.to_string(),
                            at.to_string(),
                            r.value.re().to_string_radix(10, None),
                            r.value.im().to_string_radix(10, None),
                            format!("{bound:e}"),
                            format!("{eps:e}"),
                        ]],
                    )
                }
            }
        }
        Command::Poles { k_min, k_max } => {
            if k_min > k_max || k_max - k_min > 10_000 {
                return Err(Error::Config(format!(
                    "need k_min ≤ k_max with at most 10000 steps, got {k_min}..{k_max}"
                )));
            }
            let rows = pole_zeros(*k_min, *k_max, prec)
                .into_iter()
                .map(|p| {
                    vec![
                        p.line.name().to_string(),
                        p.k.to_string(),
                        p.s.re().to_string_radix(10, None),
                        p.s.im().to_string_radix(10, None),
                        format!("{:e}", p.residual),
                    ]
                })
                .collect();
            Output::table(vec!["line", "k", "re", "im", "residual"], rows)
        }
        Command::Verify { suite, n_max, levels } => {
            let params = SuiteParams {
                n_max: *n_max,
                precision_bits: prec,
                tol: cfg.tol,
                levels: *levels,
            };
            Output::Report(run_suite(*suite, &params)?)
        }
        Command::Crosscheck {
            bfile,
            seq,
            coding,
            limit,
            offset,
        } => {
            let coding: Coding = coding.parse()?;
            let file = crate::bfile::read_bfile(bfile)?;
            let limit = limit.unwrap_or(file.len());
            Output::Report(bfile_crosscheck_parsed(&file, *seq, &coding, limit, *offset)?)
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Zeck {
            op: ZeckOp::Encode { .. },
        } => "zeck encode",
        Command::Zeck {
            op: ZeckOp::Decode { .. },
        } => "zeck decode",
        Command::Seq { .. } => "seq",
        Command::Delta { .. } => "delta",
        Command::Series {
            op: SeriesOp::Eval { .. },
        } => "series eval",
        Command::Series {
            op: SeriesOp::Residue { .. },
        } => "series residue",
        Command::Poles { .. } => "poles",
        Command::Verify { .. } => "verify",
        Command::Crosscheck { .. } => "crosscheck",
    }
}

fn error_object(e: &Error) -> String {
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "kind": e.kind(), "message": e.to_string() },
    });
    serde_json::to_string_pretty(&v).expect("json renders") + "\n"
}

/// Full command cycle over `argv` (including the program name). Returns the
/// exit code; normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    // Fails harmlessly when a pool already exists in this process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.config.threads())
        .build_global();
    match execute(&cli) {
        Ok(output) => {
            let _ = out.write_all(output.render(command_name(&cli.command), &cli.config).as_bytes());
            if output.failed() {
                EXIT_VERIFY_FAIL
            } else {
                EXIT_OK
            }
        }
        Err(e @ Error::Config(_)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = out.write_all(error_object(&e).as_bytes());
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
    }
}
