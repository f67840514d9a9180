//! `koecher` command-line front end.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use koecher::identities::{self, Params};
use koecher::kernel::rational::{parse_rational, rat_int};
use koecher::kernel::DEFAULT_MAX_TERMS;
use koecher::markov_apery::{conjecture_audit, pc_polynomial, PC_MAX};
use koecher::sequences::zeta_z;
use koecher::transform::expand_coefficients;
use koecher::{Error, IdentityReport, PrecisionContext, ReportStatus, ZSequence};

use output::{Format, Sink};

/// Exit statuses.
mod code {
    pub const PASS: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const FAIL: u8 = 2;
    pub const ACCURACY: u8 = 3;
    pub const CONSISTENCY: u8 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "koecher", version, about = "Verify accelerated zeta-series identities at arbitrary precision")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Target decimal digits.
    #[arg(long, global = true, env = "KOECHER_DIGITS", default_value_t = 30)]
    digits: u32,

    /// Cap on the terms of any single summation.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: u64,

    /// Emit JSON (newline-delimited for several records).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    csv: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an identity check (or all standard checks with --all).
    Verify {
        /// Registered identity id, e.g. eq1.1 or thm51.
        #[arg(required_unless_present = "all")]
        id: Option<String>,
        /// Parameters as name=value.
        params: Vec<String>,
        /// Run every registered identity at its standard parameters.
        #[arg(long, conflicts_with = "id")]
        all: bool,
    },
    /// Expand the accelerated right-hand side in powers of x.
    Expand {
        /// Sequence: power:c=..,d=..,beta=.. | linear:c=.. | sqshift:c=.. | halfsq
        sequence: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Print a polynomial table.
    Table {
        #[arg(value_enum)]
        table: TableKind,
        /// Largest c.
        #[arg(long, default_value_t = 5)]
        cmax: u32,
    },
    /// Compare accelerated and direct summation.
    Bench {
        id: String,
    },
    /// List registered identities.
    List,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableKind {
    /// P_c(k) numerator polynomials with the structural audit.
    Pc,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { code::USAGE } else { code::PASS });
        }
    };
    ExitCode::from(run(cli))
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Accuracy { .. } | Error::Conditioning(_) => code::ACCURACY,
        Error::Consistency(_) => code::CONSISTENCY,
        Error::Domain(_) | Error::Unsupported(_) | Error::Parse(_) | Error::IndexOutOfRange { .. } => {
            code::USAGE
        }
    }
}

fn report_error(e: &Error) -> u8 {
    eprintln!("error: {e}");
    if let Some(best) = e.best_estimate() {
        eprintln!("best estimate: {} (err {})", best.to_sci_string(20), best.err().to_sci_string(3));
    }
    error_code(e)
}

fn run(cli: Cli) -> u8 {
    let g = &cli.global;
    if g.digits == 0 || g.max_terms == 0 {
        eprintln!("error: --digits and --max-terms must be positive");
        return code::USAGE;
    }
    let ctx = PrecisionContext::new(g.digits).with_max_terms(g.max_terms);
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let mut sink = match Sink::open(g.out.as_deref(), format) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot open output: {e}");
            return code::USAGE;
        }
    };
    let status = match &cli.command {
        Command::Verify { id, params, all } => {
            if *all {
                verify_all(&ctx, &mut sink)
            } else {
                verify_one(id.as_deref().expect("clap enforces id"), params, &ctx, &mut sink)
            }
        }
        Command::Expand { sequence, alpha, order } => expand(sequence, alpha, *order, &ctx, &mut sink),
        Command::Table { table: TableKind::Pc, cmax } => table_pc(*cmax, &mut sink),
        Command::Bench { id } => match identities::bench(id, &ctx) {
            Ok(rec) => sink.bench(&rec).map(|_| code::PASS).unwrap_or_else(io_failure),
            Err(e) => report_error(&e),
        },
        Command::List => sink.list(identities::registry()).map(|_| code::PASS).unwrap_or_else(io_failure),
    };
    if let Err(e) = sink.finish() {
        return io_failure(e);
    }
    status
}

fn io_failure(e: std::io::Error) -> u8 {
    eprintln!("error: write failed: {e}");
    code::USAGE
}

fn status_code(r: &IdentityReport) -> u8 {
    match r.status {
        ReportStatus::Pass => code::PASS,
        ReportStatus::Fail => code::FAIL,
        ReportStatus::Accuracy => code::ACCURACY,
    }
}

fn verify_one(id: &str, raw: &[String], ctx: &PrecisionContext, sink: &mut Sink) -> u8 {
    let Some(entry) = identities::lookup(id) else {
        eprintln!("error: unknown identity {id:?}; see `koecher list`");
        return code::USAGE;
    };
    let params = match Params::parse(entry, raw) {
        Ok(p) => p,
        Err(e) => return report_error(&e),
    };
    match identities::verify(id, &params, ctx) {
        Ok(r) => {
            if let Err(e) = sink.report(&r) {
                return io_failure(e);
            }
            status_code(&r)
        }
        Err(e) => report_error(&e),
    }
}

/// Runs every standard case; the exit status is the most severe outcome.
fn verify_all(ctx: &PrecisionContext, sink: &mut Sink) -> u8 {
    let mut worst = code::PASS;
    for (entry, params) in identities::standard_runs() {
        let c = match identities::verify(entry.id, &params, ctx) {
            Ok(r) => {
                if let Err(e) = sink.report(&r) {
                    return io_failure(e);
                }
                status_code(&r)
            }
            Err(e) => {
                eprintln!("{} [{params}]:", entry.id);
                report_error(&e)
            }
        };
        worst = worst.max(c);
    }
    worst
}

fn expand(sequence: &str, alpha: &str, order: usize, ctx: &PrecisionContext, sink: &mut Sink) -> u8 {
    let seq: ZSequence = match sequence.parse() {
        Ok(s) => s,
        Err(e) => return report_error(&e),
    };
    let alpha = match parse_rational(alpha) {
        Ok(a) => a,
        Err(e) => return report_error(&e),
    };
    let coeffs = match expand_coefficients(&seq, &alpha, order, ctx) {
        Ok(c) => c,
        Err(e) => return report_error(&e),
    };
    let mut rows = Vec::with_capacity(coeffs.len());
    for (m, c) in coeffs.iter().enumerate() {
        let s = &alpha + rat_int(m as i64 + 1);
        let reference = match zeta_z(&seq, &s, ctx) {
            Ok(r) => r,
            Err(e) => return report_error(&e),
        };
        rows.push(output::ExpandRow::new(m, s.to_string(), c, &reference, ctx));
    }
    let worst = rows.iter().map(|r| if r.pass { code::PASS } else { code::FAIL }).max();
    if let Err(e) = sink.expand(&rows) {
        return io_failure(e);
    }
    worst.unwrap_or(code::PASS)
}

fn table_pc(cmax: u32, sink: &mut Sink) -> u8 {
    if cmax > PC_MAX {
        eprintln!("error: --cmax must be at most {PC_MAX}");
        return code::USAGE;
    }
    let mut rows = Vec::new();
    for c in 0..=cmax {
        match pc_polynomial(c) {
            Ok(p) => {
                let audit = conjecture_audit(&p);
                rows.push(output::PcRow::new(&p, &audit));
            }
            Err(e) => return report_error(&e),
        }
    }
    match sink.pc_table(&rows) {
        Ok(()) => code::PASS,
        Err(e) => io_failure(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use koecher::BigReal;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let best = BigReal::from_i64(1, 64);
        assert_eq!(error_code(&Error::accuracy("x", best)), code::ACCURACY);
        assert_eq!(error_code(&Error::Conditioning("x".into())), code::ACCURACY);
        assert_eq!(error_code(&Error::Consistency("x".into())), code::CONSISTENCY);
        assert_eq!(error_code(&Error::Domain("x".into())), code::USAGE);
        assert_eq!(error_code(&Error::Unsupported("x".into())), code::USAGE);
    }

    #[test]
    fn report_status_maps_to_exit_codes() {
        let e = identities::lookup("eq1.1").unwrap();
        let mut r = identities::verify("eq1.1", &Params::parse(e, Vec::<String>::new()).unwrap(), &PrecisionContext::new(10)).unwrap();
        assert_eq!(status_code(&r), code::PASS);
        r.status = ReportStatus::Fail;
        assert_eq!(status_code(&r), code::FAIL);
        r.status = ReportStatus::Accuracy;
        assert_eq!(status_code(&r), code::ACCURACY);
    }
}
