//! Command-line surface. Every subcommand prints one JSON document
//! (`simplify` prints the canonical text first) and maps errors to exit codes.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::analysis::{classify_convexity, classify_monotonicity};
use crate::calculus::{antiderivative, definite_integral, derivative, DefiniteIntegralBounds};
use crate::dsl::report::{polynomial_json, rational_json, Classification};
use crate::dsl::{load_sequence, parse_operator, render_report, Reportable};
use crate::error::{Error, Result};
use crate::lagrange::{
    dm_via_determinant, effective_degree, lagrange_mth_derivative, lagrange_poly, Polynomial,
};
use crate::rational::Rational;
use crate::seq::FiniteSeq;
use crate::verifier::{run_all, run_check, CheckName, CheckSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "seqcalc",
    version,
    about = "Exact discrete calculus of finite sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct SeqArg {
    /// inline:1,2,3 | csv:<path> | json:<path> | bfile:<path>
    #[arg(long, allow_hyphen_values = true)]
    pub seq: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply an operator expression to a sequence.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Print the canonical form of an operator expression.
    Simplify {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// m-th discrete derivative.
    Diff {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Antiderivative with first term `constant`.
    Integrate {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, allow_hyphen_values = true)]
        constant: Rational,
    },
    /// Sum of S(from..=to).
    Defint {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Monotonicity and convexity.
    Classify {
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Interpolating polynomial through (n0, S(n0)) .. (n0+m, S(n0+m)).
    Lagrange {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        n0: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true, group = "mode")]
        eval: Option<Rational>,
        #[arg(long, group = "mode")]
        coeffs: bool,
        /// m-th derivative by Cramer's rule.
        #[arg(long, group = "mode")]
        det: bool,
    },
    /// Run identity checks.
    Verify {
        /// A catalog name or `all`.
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to the smallest length the check accepts.
        #[arg(long)]
        min_len: Option<usize>,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

struct LagrangeSummary {
    n0: usize,
    m: usize,
    poly: Polynomial,
    effective_degree: Option<usize>,
    dm: Rational,
}

impl Reportable for LagrangeSummary {
    fn kind(&self) -> &'static str {
        "lagrange"
    }
    fn fields(&self) -> Map<String, Value> {
        let mut map = Map::new();
        map.insert("n0".into(), json!(self.n0));
        map.insert("m".into(), json!(self.m));
        map.insert("polynomial".into(), json!(self.poly.to_string()));
        map.insert("coefficients".into(), polynomial_json(&self.poly));
        map.insert(
            "effective_degree".into(),
            json!(self.effective_degree.map_or(-1, |d| d as i64)),
        );
        map.insert("mth_derivative".into(), rational_json(&self.dm));
        map
    }
}

fn seq(arg: &SeqArg) -> Result<FiniteSeq> {
    Ok(load_sequence(&arg.seq)?.values)
}

/// Execute a parsed command, returning stdout text and whether it succeeded.
pub fn execute(command: &Command) -> Result<(String, bool)> {
    let doc = match command {
        Command::Apply { op, seq: s } => {
            let poly = parse_operator(op)?.canonicalize()?;
            render_report(&poly.apply(&seq(s)?))
        }
        Command::Simplify { op } => {
            let poly = parse_operator(op)?.canonicalize()?;
            format!("{poly}\n{}", render_report(&poly))
        }
        Command::Diff { seq: s, order } => render_report(&derivative(&seq(s)?, *order)),
        Command::Integrate { seq: s, constant } => {
            render_report(&antiderivative(&seq(s)?, constant))
        }
        Command::Defint { seq: s, from, to } => render_report(&definite_integral(
            &seq(s)?,
            DefiniteIntegralBounds::new(*from, *to),
        )?),
        Command::Classify { seq: s } => {
            let s = seq(s)?;
            let monotonicity = classify_monotonicity(&s)?;
            let convexity = if s.len() >= 3 {
                Some(classify_convexity(&s)?)
            } else {
                None
            };
            render_report(&Classification {
                monotonicity,
                convexity,
            })
        }
        Command::Lagrange {
            seq: s,
            n0,
            m,
            eval,
            coeffs,
            det,
        } => {
            let s = seq(s)?;
            if *det {
                render_report(&dm_via_determinant(&s, *n0, *m)?)
            } else if let Some(x) = eval {
                render_report(&lagrange_poly(&s, *n0, *m)?.evaluate(x))
            } else if *coeffs {
                render_report(&lagrange_poly(&s, *n0, *m)?)
            } else {
                render_report(&LagrangeSummary {
                    n0: *n0,
                    m: *m,
                    poly: lagrange_poly(&s, *n0, *m)?,
                    effective_degree: effective_degree(&s, *n0, *m)?,
                    dm: lagrange_mth_derivative(&s, *n0, *m)?,
                })
            }
        }
        Command::Verify {
            check,
            trials,
            seed,
            min_len,
            max_len,
        } => {
            if check == "all" {
                let min_len = min_len.unwrap_or(2);
                if *trials == 0 || min_len > *max_len || min_len < 2 {
                    return Err(Error::Usage(format!(
                        "need trials > 0 and 2 <= min-len <= max-len, got {trials}, {min_len}..={max_len}"
                    )));
                }
                let report = run_all(*trials, *seed, (min_len, *max_len))?;
                return Ok((render_report(&report), report.passed()));
            }
            let name: CheckName = check.parse()?;
            let range = (min_len.unwrap_or(name.min_length()), *max_len);
            let report = run_check(&CheckSpec::new(name, *trials, *seed, range))?;
            return Ok((render_report(&report), report.passed));
        }
    };
    Ok((doc, true))
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, passed)) => {
            let _ = writeln!(out, "{text}");
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
