//! Command-line front end. `run` is the whole program minus process exit so
//! it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::conv::{self, ConvolutionSpec};
use crate::doc::{self, NamedFunction};
use crate::error::{AlgebraError, Result};
use crate::interval::{self, Interval};
use crate::pwl::{merge_sorted, PiecewiseFn};
use crate::rational::{self, Rational};
use crate::report::PropertyReport;
use crate::tnorm::ScalarTNorm;
use crate::verify::engine::Verdict;
use crate::verify::generator::GeneratorConfig;
use crate::verify::suites;

#[derive(Parser, Debug)]
#[command(name = "t2fuzzy", version, about = "Exact algebra of type-2 fuzzy truth values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a function document at a point.
    Eval { function: PathBuf, x: String },
    /// Apply a named operation to function documents or "[a, b]" intervals.
    Op {
        /// meet, join, neg, barmeet, star, conv, conv-at-one, order, left-env,
        /// right-env, weak-left-env, weak-right-env, balance, profile,
        /// circled-star, subset, leq, tnorm
        name: String,
        first: String,
        second: Option<String>,
        #[arg(long, default_value = "min")]
        combiner: String,
        #[arg(long, default_value = "min")]
        carrier: String,
        #[arg(long, default_value_t = 20)]
        resolution: u32,
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Run a property suite.
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Emit JSON lines instead of text.
        #[arg(long)]
        json: bool,
        /// Write each witness to DIR/<suite>.<law>.json instead of inline.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[arg(long)]
        max_breakpoints: Option<usize>,
        #[arg(long)]
        denominator_bound: Option<u32>,
        #[arg(long)]
        unit_mass: Option<f64>,
        #[arg(long)]
        endpoint_jump_mass: Option<f64>,
    },
    /// List the registered suites.
    Suites,
    /// Reproduce one of the two counterexamples.
    Counterexample { which: String },
    /// Sample a function as CSV: x, left limit at breakpoints, value.
    Sample {
        function: PathBuf,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Decimal digits after the point; rendering only.
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Re-evaluate a persisted witness.
    Replay { witness: PathBuf },
}

enum Failure {
    Usage(String),
    SuiteFailed,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Exit code 0 on success, 1 when a suite fails, 2 on usage or input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::SuiteFailed) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Eval { function, x } => {
            let f = load(&function)?.function;
            let v = f.eval(&rational::parse(&x)?)?;
            writeln!(out, "{}", rational::fmt(&v)).map_err(io_err)
        }
        Command::Op { name, first, second, combiner, carrier, resolution, precision } => {
            let text = op(&name, &first, second.as_deref(), &combiner, &carrier, resolution, precision)?;
            out.write_all(text.as_bytes()).map_err(io_err)
        }
        Command::Check {
            suite,
            seed,
            trials,
            json,
            witness_dir,
            max_breakpoints,
            denominator_bound,
            unit_mass,
            endpoint_jump_mass,
        } => {
            let mut cfg = GeneratorConfig::with_seed(seed);
            if let Some(v) = max_breakpoints {
                cfg.max_breakpoints = v;
            }
            if let Some(v) = denominator_bound {
                cfg.denominator_bound = v;
            }
            if let Some(v) = unit_mass {
                cfg.unit_mass = v;
            }
            if let Some(v) = endpoint_jump_mass {
                cfg.endpoint_jump_mass = v;
            }
            let report = suites::run_suite(&suite, &cfg, trials)?;
            let rendered = if json {
                report.render_jsonl()
            } else if let Some(dir) = &witness_dir {
                let paths = persist_witnesses(&report, dir)?;
                report.render_text(|law| paths.iter().find(|(id, _)| *id == law.id).map(|(_, p)| p.clone()))
            } else {
                report.render_text(|_| None)
            };
            out.write_all(rendered.as_bytes()).map_err(io_err)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::SuiteFailed)
            }
        }
        Command::Suites => {
            for name in suites::SUITES {
                writeln!(out, "{name}").map_err(io_err)?;
            }
            Ok(())
        }
        Command::Counterexample { which } => {
            let text = match which.as_str() {
                "q1" => conv::counterexample_q1().to_string(),
                "q2" => conv::counterexample_q2().to_string(),
                other => return Err(Failure::Usage(format!("unknown counterexample `{other}`; expected q1 or q2"))),
            };
            writeln!(out, "{text}").map_err(io_err)
        }
        Command::Sample { function, points, precision } => {
            let f = load(&function)?.function;
            out.write_all(sample_csv(&f, points, precision)?.as_bytes()).map_err(io_err)
        }
        Command::Replay { witness } => {
            let text = fs::read_to_string(&witness).map_err(|e| Failure::Usage(format!("{}: {e}", witness.display())))?;
            let (suite, law, verdict) = suites::replay(&text)?;
            let line = match verdict {
                Verdict::Holds => format!("{suite} {law} held"),
                Verdict::Vacuous => format!("{suite} {law} vacuous"),
                Verdict::Mismatch { expected, actual } => {
                    format!("{suite} {law} violated\n  expected: {expected}\n  actual: {actual}")
                }
            };
            writeln!(out, "{line}").map_err(io_err)
        }
    }
}

fn load(path: &Path) -> Result<NamedFunction, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    doc::parse_document(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

enum Operand {
    Function(NamedFunction),
    Interval(Interval),
}

fn operand(text: &str) -> Result<Operand, Failure> {
    if text.trim_start().starts_with('[') {
        Ok(Operand::Interval(text.parse()?))
    } else {
        Ok(Operand::Function(load(Path::new(text))?))
    }
}

fn op(
    name: &str,
    first: &str,
    second: Option<&str>,
    combiner: &str,
    carrier: &str,
    resolution: u32,
    precision: usize,
) -> Result<String, Failure> {
    let a = operand(first)?;
    let b = second.map(operand).transpose()?;
    let need_second = || Failure::Usage(format!("operation `{name}` takes two operands"));
    match (a, b) {
        (Operand::Interval(x), b) => {
            let y = match b {
                Some(Operand::Interval(y)) => y,
                Some(Operand::Function(_)) => return Err(Failure::Usage("cannot mix intervals and functions".into())),
                None => return Err(need_second()),
            };
            let result = match name {
                "meet" => x.meet(&y).to_string(),
                "join" => x.join(&y).to_string(),
                "circled-star" => x.circled_star(&y).to_string(),
                "tnorm" => interval::convolution_interval_tnorm(ScalarTNorm::lookup(combiner)?, &x, &y)?.to_string(),
                "subset" => x.subset(&y).to_string(),
                "leq" => x.leq(&y).to_string(),
                _ => return Err(unknown_op(name)),
            };
            Ok(format!("{result}\n"))
        }
        (Operand::Function(f), None) => {
            let (n, f) = (f.name, f.function);
            let (label, g) = match name {
                "neg" => ("neg", conv::negation(&f)),
                "left-env" => ("left-env", f.left_envelope()),
                "right-env" => ("right-env", f.right_envelope()),
                "weak-left-env" => ("weak-left-env", f.weak_left_envelope()),
                "weak-right-env" => ("weak-right-env", f.weak_right_envelope()),
                "profile" => ("profile", f.convex_profile()?),
                "balance" => {
                    let d = f.balance_data()?;
                    return Ok(format!(
                        "l1={} r1={} bf={} cf={}\n",
                        rational::fmt(&d.l1),
                        rational::fmt(&d.r1),
                        rational::fmt(&d.bf),
                        rational::fmt(&d.cf)
                    ));
                }
                "meet" | "join" | "barmeet" | "star" | "conv" | "conv-at-one" | "order" => return Err(need_second()),
                _ => return Err(unknown_op(name)),
            };
            Ok(doc::serialize(&format!("{label}({n})"), &g))
        }
        (Operand::Function(f), Some(Operand::Function(g))) => {
            let label = format!("{name}({}, {})", f.name, g.name);
            let (f, g) = (f.function, g.function);
            let h = match name {
                "meet" => conv::meet_conv(&f, &g),
                "join" => conv::join_conv(&f, &g),
                "barmeet" => conv::bar_meet(&f, &g),
                "star" => conv::star(&f, &g)?,
                "order" => {
                    return Ok(format!("meet-order {}\njoin-order {}\n", conv::order_meet(&f, &g), conv::order_join(&f, &g)))
                }
                "conv" | "conv-at-one" => {
                    let spec = ConvolutionSpec::new(ScalarTNorm::lookup(combiner)?, ScalarTNorm::lookup(carrier)?)?;
                    if name == "conv-at-one" {
                        return Ok(format!("{}\n", rational::fmt(&conv::convolution_at_one(&spec, &f, &g)?)));
                    }
                    let mut csv = String::from("x,value\n");
                    for (x, v) in conv::general_convolution(&spec, &f, &g, resolution)? {
                        csv.push_str(&format!("{},{}\n", rational::to_decimal(&x, precision), rational::to_decimal(&v, precision)));
                    }
                    return Ok(csv);
                }
                _ => return Err(unknown_op(name)),
            };
            Ok(doc::serialize(&label, &h))
        }
        (Operand::Function(_), Some(Operand::Interval(_))) => {
            Err(Failure::Usage("cannot mix intervals and functions".into()))
        }
    }
}

fn unknown_op(name: &str) -> Failure {
    Failure::Usage(AlgebraError::Unknown { kind: "operation", name: name.to_string() }.to_string())
}

/// `points` evenly spaced samples merged with every breakpoint. The left
/// column carries the left limit at breakpoints other than 0.
pub fn sample_csv(f: &PiecewiseFn, points: usize, precision: usize) -> Result<String> {
    if points < 2 {
        return Err(AlgebraError::Precondition("at least 2 sample points are required".into()));
    }
    let d = (points - 1) as i64;
    let even: Vec<Rational> = (0..=d).map(|i| rational::q(i, d)).collect();
    let grid = merge_sorted(even.iter(), f.breakpoints());
    let is_knot = |x: &Rational| f.knots().binary_search_by(|k| k.x.cmp(x)).is_ok();
    let mut csv = String::from("x,left,value\n");
    for x in &grid {
        let left = if is_knot(x) && *x > rational::zero() {
            rational::to_decimal(&f.left_limit(x)?, precision)
        } else {
            String::new()
        };
        csv.push_str(&format!(
            "{},{},{}\n",
            rational::to_decimal(x, precision),
            left,
            rational::to_decimal(&f.eval(x)?, precision)
        ));
    }
    Ok(csv)
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '-' | '_' => c,
            '\'' => 'p',
            _ => '_',
        })
        .collect()
}

fn persist_witnesses(report: &PropertyReport, dir: &Path) -> Result<Vec<(String, String)>, Failure> {
    fs::create_dir_all(dir).map_err(io_err)?;
    let mut paths = Vec::new();
    for law in &report.laws {
        if let Some(w) = &law.witness {
            let path = dir.join(format!("{}.{}.json", sanitize(&report.suite), sanitize(&law.id)));
            let body = serde_json::to_string_pretty(&crate::report::witness_json(report, law, w)).expect("plain JSON");
            fs::write(&path, body + "\n").map_err(io_err)?;
            paths.push((law.id.clone(), path.display().to_string()));
        }
    }
    Ok(paths)
}
