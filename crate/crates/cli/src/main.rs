//! `cyclo`: linear complexity of generalized cyclotomic sequences from the
//! command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 precondition failure for the requested method.

#![allow(clippy::manual_is_multiple_of)]

mod methods;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use rayon::prelude::*;

use cyclo_core::closed_form::{case_formula, classify, deficit, lc_closed_form, order8_pairs};
use cyclo_core::field::FieldSpec;
use cyclo_core::smatrix::{build_smatrix, build_smatrix_split, smatrix_field_degree, SMatrix};
use cyclo_core::{generate, minimal_polynomial, CyclotomyContext, Error};

use methods::{random_common_root, Evaluator, Method, Outcome};
use output::{render, Format, Row};

#[derive(Parser)]
#[command(
    name = "cyclo",
    version,
    about = "Linear complexity of generalized cyclotomic sequences of length pq"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linear complexity of one sequence
    Lc {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Common primitive root; defaults to the smallest one
        #[arg(long)]
        g: Option<u64>,
        #[arg(long, default_value = "gcd")]
        method: Method,
        #[arg(long)]
        verbose: bool,
    },
    /// Cross-check methods over every order-8 pair up to a bound
    Verify {
        #[arg(long)]
        max: u64,
        /// Comma-separated subset of gcd, bm, smatrix, split, closed
        #[arg(long, value_delimiter = ',', default_value = "closed,gcd")]
        methods: Vec<Method>,
        /// Pick a random common primitive root per pair, reproducibly
        #[arg(long)]
        seed: Option<u64>,
        /// Skip the smatrix method when mult_order(2, pq) exceeds this
        #[arg(long, default_value_t = 128)]
        smatrix_max_degree: u32,
    },
    /// Closed-form L(p,q) and L(q,p) for every order-8 pair p < q <= max
    Table {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Residue classes, case and deficit coefficients of an order-8 pair
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Dump one period of the sequence
    Sequence {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: Option<u64>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: SeqFormat,
    },
    /// Minimal polynomial in hexadecimal, lowest coefficients first
    Minpoly {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: Option<u64>,
    },
    /// Print the order-8 matrix of period sums with hexadecimal entries
    Smatrix {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: Option<u64>,
        /// Evaluate each side in its own field, projected into GF(16)
        #[arg(long)]
        split: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFormat {
    Ascii,
    Binary,
}

struct Exit {
    code: u8,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WrongOrder { .. }
            | Error::DegreeOutOfRange(_)
            | Error::OrderUnavailable { .. }
            | Error::NoSubfield { .. }
            | Error::NotInSubfield(_) => 3,
            _ => 2,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Exit> {
    let mut out = io::stdout().lock();
    match command {
        Command::Lc {
            p,
            q,
            g,
            method,
            verbose,
        } => {
            let ctx = CyclotomyContext::new(p, q, g)?;
            let l = match Evaluator::new(&ctx, u32::MAX).run(method)? {
                Outcome::Value(l) => l,
                Outcome::Skipped(why) => {
                    return Err(Exit {
                        code: 3,
                        message: why,
                    })
                }
            };
            writeln!(out, "{l}")?;
            if verbose {
                writeln!(out, "d = {}, g = {}", ctx.d(), ctx.g())?;
                if let Ok(c) = classify(p, q) {
                    writeln!(out, "classification: {c} ({})", case_formula(c.case_id))?;
                    writeln!(out, "deficit: {}", deficit(&c))?;
                }
                if matches!(method, Method::Gcd | Method::Bm) {
                    let m = minimal_polynomial(&generate(&ctx));
                    writeln!(
                        out,
                        "minimal polynomial degree: {}",
                        m.degree().unwrap_or(0)
                    )?;
                }
            }
            Ok(0)
        }
        Command::Verify {
            max,
            methods,
            seed,
            smatrix_max_degree,
        } => verify(&mut out, max, &methods, seed, smatrix_max_degree),
        Command::Table { max, format } => {
            let rows: Vec<Row> = order8_pairs(max)
                .into_iter()
                .map(|(p, q)| {
                    Ok(Row {
                        p,
                        q,
                        l_pq: lc_closed_form(p, q)?,
                        l_qp: lc_closed_form(q, p)?,
                    })
                })
                .collect::<Result<_, Error>>()?;
            out.write_all(render(&rows, format).as_bytes())?;
            Ok(0)
        }
        Command::Classify { p, q } => {
            let c = classify(p, q)?;
            writeln!(out, "Res(2,p) = {}", c.res_2p)?;
            writeln!(out, "Res(2,q) = {}", c.res_2q)?;
            writeln!(out, "Res(p,q) = {}", c.res_pq)?;
            writeln!(out, "case {}: L = {}", c.case_id, case_formula(c.case_id))?;
            writeln!(out, "deficit: {}", deficit(&c))?;
            writeln!(out, "L(p,q) = {}", lc_closed_form(p, q)?)?;
            Ok(0)
        }
        Command::Sequence { p, q, g, format } => {
            let seq = generate(&CyclotomyContext::new(p, q, g)?);
            match format {
                SeqFormat::Ascii => writeln!(out, "{}", seq.to_ascii())?,
                SeqFormat::Binary => out.write_all(&seq.to_packed_bytes())?,
            }
            Ok(0)
        }
        Command::Minpoly { p, q, g } => {
            let m = minimal_polynomial(&generate(&CyclotomyContext::new(p, q, g)?));
            writeln!(out, "degree {}", m.degree().unwrap_or(0))?;
            writeln!(out, "{}", m.to_hex())?;
            Ok(0)
        }
        Command::Smatrix { p, q, g, split } => {
            let ctx = CyclotomyContext::new(p, q, g)?;
            if split {
                print_smatrix(&mut out, &build_smatrix_split(&ctx)?)?;
            } else {
                let field = FieldSpec::new(smatrix_field_degree(p, q)?)?;
                let alpha = field.primitive_nth_root(p * q)?;
                writeln!(out, "GF(2^{}) modulus {}", field.degree(), field.modulus())?;
                print_smatrix(&mut out, &build_smatrix(&ctx, alpha)?)?;
            }
            Ok(0)
        }
    }
}

fn print_smatrix(out: &mut impl Write, sm: &SMatrix<'_>) -> io::Result<()> {
    write!(out, "{sm}")?;
    writeln!(
        out,
        "zeros: block {}/64, column {}/8, row {}/8, corner {}",
        sm.block_zeros(),
        sm.column_zeros(),
        sm.row_zeros(),
        u8::from(sm.corner_is_zero())
    )?;
    writeln!(out, "L = {}", sm.linear_complexity())
}

struct PairReport {
    p: u64,
    q: u64,
    values: [Option<u64>; 2],
    failures: Vec<String>,
    skips: Vec<String>,
}

fn check_order(
    p: u64,
    q: u64,
    methods: &[Method],
    seed: Option<u64>,
    max_degree: u32,
) -> (Option<u64>, Vec<String>, Vec<String>) {
    let mut failures = Vec::new();
    let mut skips = Vec::new();
    let g = seed.map(|s| random_common_root(p, q, s));
    let ctx = match CyclotomyContext::new(p, q, g) {
        Ok(ctx) => ctx,
        Err(e) => return (None, vec![format!("({p},{q}): {e}")], skips),
    };
    let expected = match lc_closed_form(p, q) {
        Ok(l) => l,
        Err(e) => return (None, vec![format!("({p},{q}) closed: {e}")], skips),
    };
    let mut eval = Evaluator::new(&ctx, max_degree);
    for &m in methods {
        match eval.run(m) {
            Ok(Outcome::Value(l)) if l == expected => {}
            Ok(Outcome::Value(l)) => {
                failures.push(format!("({p},{q}) g={} {m}: {l} != {expected}", ctx.g()))
            }
            Ok(Outcome::Skipped(why)) => skips.push(format!("({p},{q}) {m}: {why}")),
            Err(e) => failures.push(format!("({p},{q}) {m}: {e}")),
        }
    }
    debug!("({p},{q}) g={} L={expected}", ctx.g());
    (Some(expected), failures, skips)
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("CYCLO_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            builder = builder.num_threads(n);
        }
    }
    builder.build().expect("thread pool")
}

fn verify(
    out: &mut impl Write,
    max: u64,
    methods: &[Method],
    seed: Option<u64>,
    max_degree: u32,
) -> Result<u8, Exit> {
    let pairs = order8_pairs(max);
    if pairs.is_empty() {
        writeln!(out, "no pairs")?;
        return Ok(0);
    }
    info!("verifying {} pairs with {:?}", pairs.len(), methods);
    let reports: Vec<PairReport> = thread_pool().install(|| {
        pairs
            .par_iter()
            .map(|&(p, q)| {
                let (a, mut failures, mut skips) = check_order(p, q, methods, seed, max_degree);
                let (b, f2, s2) = check_order(q, p, methods, seed, max_degree);
                failures.extend(f2);
                skips.extend(s2);
                PairReport {
                    p,
                    q,
                    values: [a, b],
                    failures,
                    skips,
                }
            })
            .collect()
    });

    let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
    let mut failed = 0;
    let mut skipped = 0;
    for r in &reports {
        let show = |v: Option<u64>| v.map_or("?".to_string(), |l| l.to_string());
        let status = if r.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        writeln!(
            out,
            "{status} ({}, {}) L={}/{} methods={}",
            r.p,
            r.q,
            show(r.values[0]),
            show(r.values[1]),
            names.join(",")
        )?;
        for f in &r.failures {
            writeln!(out, "  mismatch {f}")?;
        }
        for s in &r.skips {
            writeln!(out, "  SKIP {s}")?;
        }
        failed += usize::from(!r.failures.is_empty());
        skipped += r.skips.len();
    }
    writeln!(
        out,
        "summary: {} pairs, {} passed, {} failed, {} skipped evaluations",
        reports.len(),
        reports.len() - failed,
        failed,
        skipped
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}
