//! Command-line front end for `qcyclo`.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a negative verdict
//! or a failed check, 2 on usage errors, 3 on domain errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qcyclo::dwork::{dwork_map, dwork_witness};
use qcyclo::integrality::{decide, decide_factorial_ratio, Mode, Verdict};
use qcyclo::oracle::{run_sweep, SweepConfig, SweepReport};
use qcyclo::parse::{parse_int_list, parse_pair, parse_rational, parse_spec};
use qcyclo::qvaluation::{
    hyper_phi_valuation, hyper_q_valuation, poch_phi_valuation, poch_q_valuation,
};
use qcyclo::steps::{delta_jump_table, xi_jump_table, JumpTable};
use qcyclo::{Error, Rational};

pub mod golden;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qcyclo",
    version,
    about = "Cyclotomic valuations and q-integrality criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the Dwork map D_b(α).
    Dwork {
        #[arg(long)]
        b: u64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
    /// Valuation of a Pochhammer symbol or a term at φ_b, or at q when --b is omitted.
    Val {
        #[arg(long)]
        b: Option<u64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["num", "den"])]
        pair: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        num: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        den: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        json: bool,
    },
    /// Jump table of Δ_b or Ξ(b, ·).
    Steps {
        #[arg(long)]
        b: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "-")]
        num: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-")]
        den: String,
        #[arg(long, value_enum, default_value_t = Kind::Delta)]
        kind: Kind,
        #[arg(long)]
        json: bool,
    },
    /// Decide an integrality property.
    Decide {
        #[arg(long, value_enum, default_value_t = ModeArg::Q)]
        mode: ModeArg,
        #[arg(long, allow_hyphen_values = true, default_value = "-")]
        num: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-")]
        den: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare closed-form valuations with explicit factorization on a random corpus.
    Oracle {
        #[arg(long, default_value_t = 30)]
        max_b: u64,
        #[arg(long, default_value_t = 40)]
        max_n: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -20)]
        min_n: i64,
        #[arg(long, default_value_t = 200)]
        specs: usize,
        #[arg(long, default_value_t = SweepConfig::default().seed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Replay the worked examples and check their outcomes.
    Examples {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Delta,
    Xi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Q,
    Laurent,
    Negative,
    Bidirectional,
    Classical,
    Factorial,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Q => Mode::Q,
            ModeArg::Laurent => Mode::Laurent,
            ModeArg::Negative => Mode::Negative,
            ModeArg::Bidirectional => Mode::Bidirectional,
            ModeArg::Classical => Mode::Classical,
            ModeArg::Factorial => Mode::Factorial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DworkOutput {
    pub b: u64,
    pub alpha: Rational,
    pub witness: String,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValOutput {
    pub b: Option<u64>,
    pub n: i64,
    pub valuation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> std::io::Result<()> {
    let s = serde_json::to_string(v).map_err(std::io::Error::other)?;
    writeln!(out, "{s}")
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Dwork { b, alpha, json } => cmd_dwork(b, &alpha, json, out),
        Command::Val {
            b,
            pair,
            num,
            den,
            n,
            json,
        } => cmd_val(b, pair, num, den, n, json, out),
        Command::Steps {
            b,
            num,
            den,
            kind,
            json,
        } => cmd_steps(b, &num, &den, kind, json, out),
        Command::Decide {
            mode,
            num,
            den,
            json,
        } => cmd_decide(mode.into(), &num, &den, json, out),
        Command::Oracle {
            max_b,
            max_n,
            min_n,
            specs,
            seed,
            json,
        } => {
            let cfg = SweepConfig {
                seed,
                specs,
                max_b,
                min_n,
                max_n,
                ..SweepConfig::default()
            };
            cmd_oracle(&cfg, json, out)
        }
        Command::Examples { json } => cmd_examples(json, out),
    }
}

fn cmd_dwork(b: u64, alpha: &str, json: bool, out: &mut dyn Write) -> Outcome {
    let alpha = parse_rational(alpha)?;
    let value = dwork_map(b, &alpha)?;
    let witness = dwork_witness(b, &alpha)?;
    if json {
        emit_json(
            out,
            &DworkOutput {
                b,
                alpha,
                witness: witness.to_string(),
                value,
            },
        )?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_val(
    b: Option<u64>,
    pair: Option<String>,
    num: Option<String>,
    den: Option<String>,
    n: i64,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let valuation = match pair {
        Some(p) => {
            let p = parse_pair(&p)?;
            match b {
                Some(b) => poch_phi_valuation(b, p, n)?,
                None => poch_q_valuation(p, n)?,
            }
        }
        None => {
            if num.is_none() && den.is_none() {
                return Err(Failure::Usage("give --pair or --num/--den".into()));
            }
            let h = parse_spec(num.as_deref().unwrap_or("-"), den.as_deref().unwrap_or("-"))?;
            match b {
                Some(b) => hyper_phi_valuation(b, &h, n)?,
                None => hyper_q_valuation(&h, n)?,
            }
        }
    };
    if json {
        emit_json(out, &ValOutput { b, n, valuation })?;
    } else {
        writeln!(out, "{valuation}")?;
    }
    Ok(EXIT_OK)
}

fn print_table(t: &JumpTable, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{:>12}  {:>9}  {:>5}",
        "abscissa", "amplitude", "value"
    )?;
    for (j, v) in t.jumps.iter().zip(t.prefix_sums()) {
        writeln!(
            out,
            "{:>12}  {:>+9}  {:>5}",
            j.abscissa.to_string(),
            j.amplitude,
            v
        )?;
    }
    if let Some(s) = t.period_slope {
        writeln!(out, "period slope {s}")?;
    }
    Ok(())
}

fn cmd_steps(b: u64, num: &str, den: &str, kind: Kind, json: bool, out: &mut dyn Write) -> Outcome {
    let h = parse_spec(num, den)?;
    if b == 0 {
        return Err(Failure::Usage("--b must be positive".into()));
    }
    let t = match kind {
        Kind::Delta => delta_jump_table(b, &h),
        Kind::Xi => xi_jump_table(b, &h)?,
    };
    if json {
        emit_json(out, &t)?;
    } else {
        print_table(&t, out)?;
    }
    Ok(EXIT_OK)
}

fn cmd_decide(mode: Mode, num: &str, den: &str, json: bool, out: &mut dyn Write) -> Outcome {
    let v = if mode == Mode::Factorial {
        decide_factorial_ratio(&parse_int_list(num)?, &parse_int_list(den)?)?
    } else {
        decide(mode, &parse_spec(num, den)?)?
    };
    if json {
        emit_json(out, &v)?;
    } else {
        print_verdict(&v, out)?;
    }
    Ok(if v.decision { EXIT_OK } else { EXIT_FALSE })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Q => "q-integral",
        Mode::Laurent => "Laurent-integral",
        Mode::Negative => "q-integral at negative indices",
        Mode::Bidirectional => "Laurent polynomial at every index",
        Mode::Classical => "N-integral",
        Mode::Factorial => "q-integral factorial ratio",
    }
}

fn print_verdict(v: &Verdict, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}: {}", mode_name(v.mode), v.decision)?;
    for w in &v.witnesses {
        match w.b {
            Some(b) => writeln!(out, "  witness b={b} x={} value={}", w.abscissa, w.value)?,
            None => writeln!(out, "  witness x={} value={}", w.abscissa, w.value)?,
        }
    }
    if let Some(s) = v.slope {
        writeln!(out, "  slope {s}")?;
    }
    for (b, s) in &v.period_slopes {
        if *s != 0 {
            writeln!(out, "  Δ_{b}(1) = {s}")?;
        }
    }
    if let Some(r) = &v.route {
        writeln!(out, "  route: {r}")?;
    }
    for n in &v.notes {
        writeln!(out, "  note: {n}")?;
    }
    Ok(())
}

fn cmd_oracle(cfg: &SweepConfig, json: bool, out: &mut dyn Write) -> Outcome {
    if cfg.max_b == 0 || cfg.min_n > cfg.max_n {
        return Err(Failure::Usage("empty sweep range".into()));
    }
    let report: SweepReport = run_sweep(cfg);
    if json {
        emit_json(out, &report)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_examples(json: bool, out: &mut dyn Write) -> Outcome {
    let results = golden::run_all();
    if json {
        emit_json(out, &results)?;
    } else {
        for r in &results {
            let tag = if r.passed { "ok  " } else { "FAIL" };
            writeln!(out, "{tag} {}: {}", r.name, r.detail)?;
        }
    }
    Ok(if results.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FALSE
    })
}
