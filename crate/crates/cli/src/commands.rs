//! Command definitions and their text and JSON output.

use clap::{Parser, Subcommand};
use jac_core::lattice::{count_ideals, krull_dim, spec_enum, spec_hasse};
use jac_core::rational::to_wire;
use jac_core::tensorn::factor_minimal_unit;
use jac_core::units1::{factor_unit, invert_unit};
use jac_core::{Error, PolyN, PrimeIdeal};
use serde_json::{json, Value};

use crate::elaborate::{elaborate, polynomial, to_poly1, Operator};
use crate::error::CliError;
use crate::ideal_expr::{parse_ideal, parse_query, Query};
use crate::print;
use crate::syntax::parse;

pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "jac", version, about = "Exact arithmetic with integro-differential operators")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Arity {
    /// Number of variables.
    #[arg(short = 'n', default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=64))]
    pub n: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply an operator to a polynomial.
    Apply {
        #[command(flatten)]
        arity: Arity,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Canonical form of an operator.
    Canon {
        #[command(flatten)]
        arity: Arity,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Factor a unit and print its inverse.
    Invert {
        #[command(flatten)]
        arity: Arity,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Solve u y = f for a unit u.
    Solve {
        #[command(flatten)]
        arity: Arity,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// The involution theta.
    Theta {
        #[command(flatten)]
        arity: Arity,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Prime spectrum of the algebra in n variables.
    Spec {
        #[command(flatten)]
        arity: Arity,
        /// Hasse diagram in Graphviz dot format.
        #[arg(long)]
        dot: bool,
    },
    /// Two-sided ideals.
    Ideal {
        #[command(subcommand)]
        command: IdealCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealCommand {
    /// Number of ideals.
    Count {
        #[command(flatten)]
        arity: Arity,
    },
    /// Minimal primes and prime factorization.
    Factor {
        #[command(flatten)]
        arity: Arity,
        ideal: String,
    },
    /// Evaluate an ideal expression or comparison.
    Op {
        #[command(flatten)]
        arity: Arity,
        query: String,
    },
}

/// Reads `JAC_MAX_N`, falling back to the default when unset.
pub fn max_n_from_env() -> Result<usize, CliError> {
    match std::env::var("JAC_MAX_N") {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("JAC_MAX_N must be a number, got '{s}'"))),
    }
}

fn bounded(n: usize, max_n: usize) -> Result<usize, CliError> {
    if n > max_n {
        return Err(CliError::Domain(Error::Unsupported(format!(
            "n = {n} exceeds JAC_MAX_N = {max_n}"
        ))));
    }
    Ok(n)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn lines(ls: &[String]) -> String {
    let mut s = ls.join("\n");
    s.push('\n');
    s
}

fn pretty_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn operator(src: &str, n: usize) -> Result<Operator, CliError> {
    elaborate(&parse(src, n)?, n)
}

fn operator_json(op: &Operator) -> Value {
    match op {
        Operator::One(a) => to_json(a),
        Operator::Many(t) => to_json(&print::canonical_tensor(t)),
    }
}

fn indices(ps: &[PrimeIdeal]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.indices())).collect())
}

/// A factored unit with everything the text and JSON forms need.
struct Inverted {
    factorization: Value,
    lambda: String,
    h: String,
    f: String,
    det: jac_core::Rational,
    inverse: Operator,
}

fn invert_op(op: &Operator, src: &str) -> Result<Inverted, CliError> {
    let fail = |e: Error| CliError::NotInvertible(format!("{src}: {e}"));
    match op {
        Operator::One(a) => {
            let fac = factor_unit(a).map_err(fail)?;
            let inverse = Operator::One(invert_unit(a).map_err(fail)?);
            Ok(Inverted {
                lambda: fac.lambda.to_string(),
                h: print::hunit(&fac.h, 1, 1),
                f: print::matrix(&fac.f),
                det: fac.f.det_one_plus(),
                factorization: to_json(&fac),
                inverse,
            })
        }
        Operator::Many(t) => {
            let u = factor_minimal_unit(t).map_err(fail)?;
            let inverse = Operator::Many(u.invert().map_err(fail)?);
            Ok(Inverted {
                lambda: u.lambda.to_string(),
                h: print::minimal_h(&u),
                f: print::matrix(&u.f),
                det: u.f.det_one_plus(),
                factorization: to_json(&u),
                inverse,
            })
        }
    }
}

fn apply(op: &Operator, p: &PolyN) -> Result<PolyN, CliError> {
    Ok(match op {
        Operator::One(a) => PolyN::from_poly1(&a.apply(&to_poly1(p))),
        Operator::Many(t) => t.apply(p)?,
    })
}

/// Runs one command and returns its standard output.
pub fn run(cli: &Cli, max_n: usize) -> Result<String, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Apply { arity, expr, poly } => {
            let n = arity.n as usize;
            let op = operator(expr, n)?;
            let p = polynomial(&parse(poly, n)?, n)?;
            let out = apply(&op, &p)?;
            Ok(if json {
                pretty_json(&to_json(&out))
            } else {
                lines(&[out.to_string()])
            })
        }
        Command::Canon { arity, expr } => {
            let n = arity.n as usize;
            let op = operator(expr, n)?;
            let text = print::operator(&op);
            Ok(if json {
                pretty_json(&json!({ "canonical": operator_json(&op), "pretty": text }))
            } else {
                lines(&[text])
            })
        }
        Command::Theta { arity, expr } => {
            let n = arity.n as usize;
            let op = operator(expr, n)?.theta();
            let text = print::operator(&op);
            Ok(if json {
                pretty_json(&json!({ "canonical": operator_json(&op), "pretty": text }))
            } else {
                lines(&[text])
            })
        }
        Command::Invert { arity, expr } => {
            let n = arity.n as usize;
            let inv = invert_op(&operator(expr, n)?, expr)?;
            let inverse = print::operator(&inv.inverse);
            Ok(if json {
                pretty_json(&json!({
                    "factorization": inv.factorization,
                    "det": to_wire(&inv.det),
                    "inverse": operator_json(&inv.inverse),
                    "pretty": inverse,
                }))
            } else {
                lines(&[
                    format!("lambda: {}", inv.lambda),
                    format!("h: {}", inv.h),
                    format!("f: {}", inv.f),
                    format!("det: {}", inv.det),
                    format!("inverse: {inverse}"),
                ])
            })
        }
        Command::Solve { arity, expr, poly } => {
            let n = arity.n as usize;
            let inv = invert_op(&operator(expr, n)?, expr)?;
            let p = polynomial(&parse(poly, n)?, n)?;
            let y = apply(&inv.inverse, &p)?;
            Ok(if json {
                pretty_json(&json!({
                    "factorization": inv.factorization,
                    "solution": to_json(&y),
                }))
            } else {
                lines(&[y.to_string()])
            })
        }
        Command::Spec { arity, dot } => {
            let n = bounded(arity.n as usize, max_n)?;
            let primes = spec_enum(n);
            if *dot {
                let mut ls = vec!["digraph spec {".to_string()];
                for (p, h) in &primes {
                    ls.push(format!("  \"{p}\" [label=\"{p}\\nheight {h}\"];"));
                }
                for (a, b) in spec_hasse(n) {
                    ls.push(format!("  \"{a}\" -> \"{b}\";"));
                }
                ls.push("}".into());
                return Ok(lines(&ls));
            }
            let dim = krull_dim(n);
            Ok(if json {
                let ps: Vec<Value> = primes
                    .iter()
                    .map(|(p, h)| json!({ "indices": p.indices(), "height": h }))
                    .collect();
                pretty_json(&json!({ "n": n, "primes": ps, "krull_dim": dim }))
            } else {
                let mut ls: Vec<String> =
                    primes.iter().map(|(p, h)| format!("{p} (height {h})")).collect();
                ls.push(format!("krull dimension: {dim}"));
                lines(&ls)
            })
        }
        Command::Ideal { command } => ideal(command, json, max_n),
    }
}

fn ideal(cmd: &IdealCommand, json: bool, max_n: usize) -> Result<String, CliError> {
    match cmd {
        IdealCommand::Count { arity } => {
            let n = bounded(arity.n as usize, max_n)?;
            let count = count_ideals(n)?;
            Ok(if json {
                pretty_json(&json!({ "n": n, "count": count }))
            } else {
                lines(&[count.to_string()])
            })
        }
        IdealCommand::Factor { arity, ideal } => {
            let n = bounded(arity.n as usize, max_n)?;
            let a = parse_ideal(ideal, n)?;
            let mins = a.min_primes()?;
            let fac = a.factor_primes()?;
            let class = a.classify();
            Ok(if json {
                pretty_json(&json!({
                    "ideal": to_json(&a),
                    "min_primes": indices(&mins),
                    "factorization": indices(&fac),
                    "class": class.to_string(),
                }))
            } else {
                lines(&[
                    format!("ideal: {a}"),
                    format!("min primes: {}", print::prime_list(&mins)),
                    format!("factorization: {}", print::prime_product(&fac)),
                    format!("class: {class}"),
                ])
            })
        }
        IdealCommand::Op { arity, query } => {
            let n = bounded(arity.n as usize, max_n)?;
            let (text, value) = match parse_query(query, n)? {
                Query::Ideal(a) => (a.to_string(), to_json(&a)),
                Query::Contained(a, b) => {
                    let r = b.contains(&a)?;
                    (r.to_string(), json!(r))
                }
                Query::Equal(a, b) => {
                    let r = a == b;
                    (r.to_string(), json!(r))
                }
            };
            Ok(if json {
                pretty_json(&json!({ "result": value }))
            } else {
                lines(&[text])
            })
        }
    }
}
