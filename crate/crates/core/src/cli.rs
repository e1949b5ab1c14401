//! The `odot` command line.
//!
//! Map and matrix arguments are inline text, or `@path` to read a file.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{
    block_norm, bombieri_norm, empirical_lambda, geometric_series_blocks, radius_estimate,
    rho_norm, series_partial_sums, LambdaShape, NormParams,
};
use crate::block_matrix::BlockMatrix;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::interchange::{
    block_matrix_from_json, block_matrix_text, block_matrix_to_json, parse_json, to_pretty,
};
use crate::polymap::{HomogPoly, PolyMap};
use crate::scalar::{Rational, Scalar};
use crate::verify::{run_suite, Suite};

pub const SEED_VAR: &str = "ODOT_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "odot",
    version,
    about = "Multiindex matrix calculus for polynomial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Domain {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Matrix,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    OdotLaws,
    NormBounds,
    CompositionOracle,
    ExpIdentities,
    All,
}

#[derive(Debug, Args)]
struct MapArg {
    /// Polynomial map: `;`-separated components in x1, x2, ...
    #[arg(long)]
    poly: String,
    /// Number of input variables (default: `# n_in=K` header, else the largest index used)
    #[arg(long)]
    arity: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compose two maps: outer after inner
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer_arity: Option<usize>,
        #[arg(long)]
        inner_arity: Option<usize>,
        #[arg(long, value_enum, default_value_t = Via::Matrix)]
        via: Via,
        /// Also compose by substitution and fail unless both agree
        #[arg(long)]
        check: bool,
        /// Read both operands as block-matrix JSON
        #[arg(long)]
        from_matrix: bool,
        #[arg(long, value_enum, default_value_t = Domain::Exact)]
        domain: Domain,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the matrix of a map
    Matrix {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, value_enum, default_value_t = Domain::Exact)]
        domain: Domain,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Blocks of Exp(M) up to column degree qmax
    Exp {
        #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
        poly: Option<String>,
        #[arg(long)]
        arity: Option<usize>,
        /// Block-matrix JSON instead of a map
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = Domain::Exact)]
        domain: Domain,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate a map at a point
    Eval {
        #[command(flatten)]
        map: MapArg,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Evaluate as Exp(x) M_phi instead of by substitution
        #[arg(long)]
        via_matrix: bool,
        #[arg(long, value_enum, default_value_t = Domain::Exact)]
        domain: Domain,
    },
    /// rho-norm of a homogeneous block, a map matrix, or a Bombieri norm
    Norm {
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        #[arg(long, required_unless_present_any = ["matrix", "bombieri"])]
        poly: Option<String>,
        #[arg(long)]
        arity: Option<usize>,
        /// Norm of the single block M_P of a homogeneous scalar polynomial
        #[arg(long, requires = "poly")]
        homogeneous: bool,
        #[arg(long, conflicts_with_all = ["poly", "bombieri"])]
        matrix: Option<String>,
        /// Coefficients a0,a1,... of a univariate polynomial
        #[arg(long, conflicts_with = "poly", allow_hyphen_values = true)]
        bombieri: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sampled estimate of the lower constant in lambda ||A|| ||B|| <= ||A odot B||
    Lambda {
        #[arg(long)]
        p: u32,
        #[arg(long = "p-prime", default_value_t = 0)]
        p_prime: u32,
        #[arg(long)]
        q: u32,
        #[arg(long = "q-prime", default_value_t = 0)]
        q_prime: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "n-prime", default_value_t = 0)]
        n_prime: usize,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run randomized identity and bound suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// m-fold self-composition of a map
    Iterate {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        times: u32,
        #[arg(long, value_enum, default_value_t = Domain::Exact)]
        domain: Domain,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Convergence radius proxy from a norm sequence
    Radius {
        /// Comma-separated ||A_0||, ||A_1||, ...
        #[arg(
            long,
            required_unless_present = "geometric",
            conflicts_with = "geometric"
        )]
        norms: Option<String>,
        /// Use A_m = [m! c^m]
        #[arg(long)]
        geometric: Option<f64>,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Also print partial sums of the geometric series at this point
        #[arg(long, requires = "geometric", allow_hyphen_values = true)]
        point: Option<f64>,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn load_map<S: Scalar>(arg: &str, arity: Option<usize>) -> Result<PolyMap<S>> {
    PolyMap::parse_file(&read_arg(arg)?, arity)
}

fn load_matrix<S: Scalar>(arg: &str) -> Result<BlockMatrix<S>> {
    block_matrix_from_json(&parse_json(&read_arg(arg)?)?)
}

fn seed_or_env(seed: Option<u64>) -> Result<u64> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidParameter(format!("{SEED_VAR}={v:?} is not an unsigned integer"))
        }),
        Err(_) => Ok(0),
    }
}

fn parse_list<S: Scalar>(text: &str) -> Result<Vec<S>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let (neg, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, t),
            };
            let v = S::parse_literal(body)
                .ok_or_else(|| Error::InvalidParameter(format!("bad number {t:?}")))?;
            Ok(if neg { v.neg_ref() } else { v })
        })
        .collect()
}

fn write_map<S: Scalar>(out: &mut impl Write, map: &PolyMap<S>, format: Format) -> Result<()> {
    match format {
        Format::Text => emit(out, &map.to_string()),
        Format::Json => emit(out, &to_pretty(&block_matrix_to_json(&map.to_matrix()))),
    }
}

fn write_matrix<S: Scalar>(out: &mut impl Write, m: &BlockMatrix<S>, format: Format) -> Result<()> {
    match format {
        Format::Text => emit(out, block_matrix_text(m).trim_end()),
        Format::Json => emit(out, &to_pretty(&block_matrix_to_json(m))),
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::InvalidParameter(format!("write failed: {e}")))
}

macro_rules! by_domain {
    ($domain:expr, $f:ident ( $($arg:expr),* )) => {
        match $domain {
            Domain::Exact => $f::<Rational>($($arg),*),
            Domain::Float => $f::<f64>($($arg),*),
        }
    };
}

#[allow(clippy::too_many_arguments)]
fn compose<S: Scalar>(
    out: &mut impl Write,
    err: &mut impl Write,
    outer: &str,
    inner: &str,
    arities: (Option<usize>, Option<usize>),
    via: Via,
    check: bool,
    from_matrix: bool,
    format: Format,
) -> Result<i32> {
    let (phi, psi) = if from_matrix {
        (
            PolyMap::<S>::from_matrix(&load_matrix(outer)?)?,
            PolyMap::<S>::from_matrix(&load_matrix(inner)?)?,
        )
    } else {
        let psi = load_map::<S>(inner, arities.1)?;
        let phi = load_map::<S>(outer, arities.0.or(Some(psi.n_out())))?;
        (phi, psi)
    };
    let result = match via {
        Via::Matrix => phi.compose_matrix(&psi)?,
        Via::Direct => phi.compose_direct(&psi)?,
    };
    if check {
        let other = match via {
            Via::Matrix => phi.compose_direct(&psi)?,
            Via::Direct => phi.compose_matrix(&psi)?,
        };
        if other != result {
            let _ = writeln!(
                err,
                "check failed: matrix composition and substitution differ"
            );
            let _ = writeln!(err, "  matrix:       {}", phi.compose_matrix(&psi)?);
            let _ = writeln!(err, "  substitution: {}", phi.compose_direct(&psi)?);
            return Ok(1);
        }
        let _ = writeln!(err, "check: matrix composition agrees with substitution");
    }
    write_map(out, &result, format)?;
    Ok(0)
}

fn matrix<S: Scalar>(out: &mut impl Write, map: &MapArg, format: Format) -> Result<i32> {
    let phi = load_map::<S>(&map.poly, map.arity)?;
    write_matrix(out, &phi.to_matrix(), format)?;
    Ok(0)
}

fn exp<S: Scalar>(
    out: &mut impl Write,
    poly: Option<&str>,
    arity: Option<usize>,
    matrix: Option<&str>,
    qmax: u32,
    format: Format,
) -> Result<i32> {
    let m: BlockMatrix<S> = match (poly, matrix) {
        (Some(p), _) => load_map::<S>(p, arity)?.to_matrix(),
        (None, Some(m)) => load_matrix(m)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    write_matrix(out, &m.exp(qmax)?, format)?;
    Ok(0)
}

fn eval<S: Scalar>(out: &mut impl Write, map: &MapArg, at: &str, via_matrix: bool) -> Result<i32> {
    let x = parse_list::<S>(at)?;
    let phi = load_map::<S>(&map.poly, map.arity.or(Some(x.len())))?;
    let y = if via_matrix {
        phi.eval_via_matrix(&x)?
    } else {
        phi.eval(&x)?
    };
    let text: Vec<String> = y.iter().map(ToString::to_string).collect();
    emit(out, &text.join(", "))?;
    Ok(0)
}

fn iterate<S: Scalar>(
    out: &mut impl Write,
    map: &MapArg,
    times: u32,
    format: Format,
) -> Result<i32> {
    let phi = load_map::<S>(&map.poly, map.arity)?;
    write_map(out, &phi.iterate(times)?, format)?;
    Ok(0)
}

fn print_value(
    out: &mut impl Write,
    name: &str,
    value: f64,
    format: Format,
    extra: serde_json::Value,
) -> Result<()> {
    match format {
        Format::Text => emit(out, &value.to_string()),
        Format::Json => {
            let mut obj = extra;
            obj[name] = json!(value);
            emit(out, &to_pretty(&obj))
        }
    }
}

fn execute(command: Command, out: &mut impl Write, err: &mut impl Write) -> Result<i32> {
    match command {
        Command::Compose {
            outer,
            inner,
            outer_arity,
            inner_arity,
            via,
            check,
            from_matrix,
            domain,
            format,
        } => by_domain!(
            domain,
            compose(
                out,
                err,
                &outer,
                &inner,
                (outer_arity, inner_arity),
                via,
                check,
                from_matrix,
                format
            )
        ),
        Command::Matrix {
            map,
            domain,
            format,
        } => by_domain!(domain, matrix(out, &map, format)),
        Command::Exp {
            poly,
            arity,
            matrix,
            qmax,
            domain,
            format,
        } => by_domain!(
            domain,
            exp(out, poly.as_deref(), arity, matrix.as_deref(), qmax, format)
        ),
        Command::Eval {
            map,
            at,
            via_matrix,
            domain,
        } => by_domain!(domain, eval(out, &map, &at, via_matrix)),
        Command::Iterate {
            map,
            times,
            domain,
            format,
        } => by_domain!(domain, iterate(out, &map, times, format)),
        Command::Norm {
            rho,
            poly,
            arity,
            homogeneous,
            matrix,
            bombieri,
            format,
        } => {
            let params = NormParams::new(rho)?;
            let value = if let Some(coeffs) = bombieri {
                if rho != 2.0 {
                    return Err(Error::InvalidParameter(
                        "the Bombieri norm is the rho = 2 norm".into(),
                    ));
                }
                bombieri_norm(&parse_list::<f64>(&coeffs)?)
            } else if let Some(m) = matrix {
                block_norm(&load_matrix::<f64>(&m)?, &params)
            } else {
                let phi = load_map::<f64>(poly.as_deref().expect("clap requires --poly"), arity)?;
                if homogeneous {
                    rho_norm(&HomogPoly::new(phi, None)?.matrix_block(), &params)
                } else {
                    block_norm(&phi.to_matrix(), &params)
                }
            };
            print_value(out, "norm", value, format, json!({ "rho": rho }))?;
            Ok(0)
        }
        Command::Lambda {
            p,
            p_prime,
            q,
            q_prime,
            n,
            n_prime,
            rho,
            samples,
            seed,
            format,
        } => {
            let seed = seed_or_env(seed)?;
            let shape = LambdaShape {
                n,
                n_col: n_prime,
                p,
                p_col: p_prime,
                q,
                q_col: q_prime,
            };
            let value = empirical_lambda(shape, &NormParams::new(rho)?, samples, seed)?;
            print_value(
                out,
                "lambda",
                value,
                format,
                json!({ "n": n, "n'": n_prime, "p": p, "p'": p_prime, "q": q, "q'": q_prime,
                        "rho": rho, "samples": samples, "seed": seed }),
            )?;
            Ok(0)
        }
        Command::Verify {
            suite,
            seed,
            cases,
            format,
        } => {
            let seed = seed_or_env(seed)?;
            let suites: Vec<Suite> = match suite {
                SuiteArg::OdotLaws => vec![Suite::OdotLaws],
                SuiteArg::NormBounds => vec![Suite::NormBounds],
                SuiteArg::CompositionOracle => vec![Suite::CompositionOracle],
                SuiteArg::ExpIdentities => vec![Suite::ExpIdentities],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let outcomes: Vec<_> = suites
                .into_iter()
                .flat_map(|s| run_suite(s, seed, cases, Exec::default()))
                .collect();
            match format {
                Format::Text => {
                    for o in &outcomes {
                        emit(out, &o.to_string())?;
                    }
                }
                Format::Json => emit(
                    out,
                    &to_pretty(&json!({ "seed": seed, "cases": cases, "laws": outcomes })),
                )?,
            }
            Ok(if outcomes.iter().all(|o| o.ok()) {
                0
            } else {
                1
            })
        }
        Command::Radius {
            norms,
            geometric,
            terms,
            point,
            rho,
            format,
        } => {
            let params = NormParams::new(rho)?;
            let (seq, sums) = match (norms, geometric) {
                (Some(list), _) => (parse_list::<f64>(&list)?, None),
                (None, Some(c)) => {
                    let blocks = geometric_series_blocks(c, terms);
                    let seq: Vec<f64> = blocks.iter().map(|b| rho_norm(b, &params)).collect();
                    let sums = match point {
                        Some(x) if terms > 0 => {
                            Some(series_partial_sums(&[x], &blocks, terms - 1)?)
                        }
                        _ => None,
                    };
                    (seq, sums)
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            let r = radius_estimate(&seq)?;
            let sums: Option<Vec<f64>> = sums.map(|s| s.into_iter().map(|v| v[0]).collect());
            match format {
                Format::Text => {
                    emit(out, &format!("radius {r}"))?;
                    if let Some(sums) = &sums {
                        for (m, s) in sums.iter().enumerate() {
                            emit(out, &format!("S_{m} {s}"))?;
                        }
                    }
                }
                Format::Json => emit(
                    out,
                    &to_pretty(&json!({ "radius": r, "partial_sums": sums })),
                )?,
            }
            Ok(0)
        }
    }
}
