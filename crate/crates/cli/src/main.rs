//! `artin1`: certify Picard-number-21 models prime by prime.

mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use artin1_core::certify::{
    certify_model, check_prime, cm_crosscheck, search_family, sweep_with, verify_kummer_ranks,
    Certificate, PRIME_CAP,
};
use artin1_core::counting::{naive_fiber_count, selftest_rational_surface};
use artin1_core::curve::{
    find_supersingular, find_supersingular_generic, weierstrass_count, Curve,
};
use artin1_core::field::Field;
use artin1_core::pencil::{candidate_models, Pencil};
use artin1_core::Error;
use clap::{Parser, Subcommand};

use cache::Cache;
use output::{Check, Format};

#[derive(Parser, Debug)]
#[command(
    name = "artin1",
    version,
    about = "Point-count certificates for Picard number 21 supersingular K3 models over F_p"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for counting (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    /// Certificate cache directory.
    #[arg(long, global = true, env = "ARTIN1_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search the candidate models at one prime for Picard number 21.
    Certify {
        #[arg(long)]
        prime: u64,
        /// Certify and print every candidate instead of stopping at the first hit.
        #[arg(long)]
        all_candidates: bool,
        /// Start from a supersingular curve with j outside {0, 1728}.
        #[arg(long)]
        generic_j: bool,
    },
    /// Run `certify` for every prime in a range.
    Sweep {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
    },
    /// Check point counts of Km(E x E) against its rank ledger.
    Kummer {
        #[arg(long)]
        prime: u64,
    },
    /// Trace zero of the CM curve versus inertness of p, for d = -3 or -4.
    Inert {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        max: u64,
    },
    /// Field, curve, fiber-table and Kummer checks.
    Selftest,
}

/// Exit codes: 0 success, 1 falsified or failed check, 2 usage, 3 unsupported characteristic.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedCharacteristic(_) => 3,
        Error::NonPrime(_) | Error::PrimeOutOfRange { .. } | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("artin1: cannot start thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("artin1: {e}");
            if let Error::Falsified { log, .. } = &e {
                for c in log.iter() {
                    eprintln!(
                        "  B_sign={:?} c={:?} d={:?} N1={} N2={} {}",
                        c.b_sign, c.c, c.twist_d, c.n1, c.n2, c.verdict
                    );
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Certifier {
    cache: Option<Cache>,
}

impl Certifier {
    fn certify(&self, pencil: &Pencil) -> artin1_core::Result<Certificate> {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(pencil)) {
            return Ok(hit);
        }
        let cert = certify_model(pencil)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.put(pencil, &cert) {
                eprintln!("artin1: warning: cache write failed: {e}");
            }
        }
        Ok(cert)
    }
}

fn run(cli: &Cli) -> artin1_core::Result<u8> {
    let certifier = Certifier {
        cache: match &cli.cache {
            Some(dir) => Some(Cache::open(dir).map_err(|e| {
                Error::InvalidArgument(format!("cache directory {}: {e}", dir.display()))
            })?),
            None => None,
        },
    };
    let mut certify = |pencil: &Pencil| certifier.certify(pencil);
    match &cli.command {
        Command::Certify {
            prime,
            all_candidates,
            generic_j,
        } => {
            check_prime(*prime)?;
            let curve = if *generic_j {
                find_supersingular_generic(*prime)?.ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "no supersingular j outside {{0, 1728}} over F_{prime}"
                    ))
                })?
            } else {
                find_supersingular(*prime)?
            };
            if *all_candidates {
                let certs = candidate_models(&curve)?
                    .iter()
                    .map(&mut certify)
                    .collect::<artin1_core::Result<Vec<_>>>()?;
                print!("{}", output::certificates(&certs, cli.format));
                let hit = certs
                    .iter()
                    .any(|c| c.verdict == artin1_core::certify::Verdict::Certified21);
                Ok(if hit { 0 } else { 1 })
            } else {
                let run = search_family(&curve, &mut certify)?;
                print!("{}", output::certificate(&run.certificate, cli.format));
                Ok(0)
            }
        }
        Command::Sweep { min, max } => {
            if *max > PRIME_CAP {
                return Err(Error::PrimeOutOfRange {
                    p: *max,
                    max: PRIME_CAP,
                });
            }
            let report = sweep_with(*min, *max, &mut certify)?;
            if !report.unsupported.is_empty() {
                eprintln!(
                    "artin1: skipped unsupported characteristic(s) {:?}",
                    report.unsupported
                );
            }
            print!("{}", output::sweep(&report, cli.format));
            Ok(if report.all_certified() { 0 } else { 1 })
        }
        Command::Kummer { prime } => {
            let report = verify_kummer_ranks(*prime)?;
            print!("{}", output::kummer(&report, cli.format));
            Ok(0)
        }
        Command::Inert { disc, max } => {
            if *max > PRIME_CAP {
                return Err(Error::PrimeOutOfRange {
                    p: *max,
                    max: PRIME_CAP,
                });
            }
            let table = cm_crosscheck(*disc, *max)?;
            print!("{}", output::crosscheck(&table, cli.format));
            Ok(0)
        }
        Command::Selftest => {
            let checks = selftest();
            print!("{}", output::checks(&checks, cli.format));
            Ok(if checks.iter().all(|c| c.passed) {
                0
            } else {
                1
            })
        }
    }
}

fn check(name: &str, result: artin1_core::Result<String>) -> Check {
    match result {
        Ok(detail) => Check {
            name: name.into(),
            passed: true,
            detail,
        },
        Err(e) => Check {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn selftest() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        "field",
        (|| {
            for (p, k) in [(5, 2), (7, 2), (13, 1)] {
                let f = Field::new(p, k)?;
                let els: Vec<_> = f.elements().collect();
                for &x in &els {
                    for &y in &els {
                        if f.chi(f.mul(x, y)) != f.chi(x) * f.chi(y) {
                            return Err(Error::InternalError(format!(
                                "chi not multiplicative over F_{}",
                                f.order()
                            )));
                        }
                    }
                    if !x.is_zero() && f.mul(x, f.inv(x)?) != f.one() {
                        return Err(Error::InternalError(format!(
                            "bad inverse over F_{}",
                            f.order()
                        )));
                    }
                }
            }
            Ok("character multiplicative, inverses over F_25, F_49, F_13".into())
        })(),
    ));
    out.push(check(
        "curve counts",
        (|| {
            let mut n = 0;
            for (p, k) in [(5, 1), (7, 1), (11, 1), (5, 2)] {
                let f = Field::new(p, k)?;
                for a in f.elements() {
                    for b in f.elements() {
                        if weierstrass_count(&f, a, b) != naive_fiber_count(&f, a, b) {
                            return Err(Error::InternalError(format!(
                                "count mismatch over F_{} at ({a}, {b})",
                                f.order()
                            )));
                        }
                        n += 1;
                    }
                }
            }
            let e = Curve::from_ints(&Field::prime(11)?, 0, 1)?;
            if e.trace() != 0 {
                return Err(Error::InternalError(
                    "y^2 = x^3 + 1 not supersingular over F_11".into(),
                ));
            }
            Ok(format!("{n} curves agree with enumeration"))
        })(),
    ));
    out.push(check(
        "rational surface",
        (|| {
            let mut seen = Vec::new();
            for (p, k) in [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2), (11, 2)] {
                selftest_rational_surface(p, k)?;
                seen.push(p.pow(k).to_string());
            }
            Ok(format!("q^2 + 10q + 1 for q in {{{}}}", seen.join(", ")))
        })(),
    ));
    out.push(check(
        "kummer p=7",
        (|| {
            let r = verify_kummer_ranks(7)?;
            if (r.n1, r.n2) != (176, 3480) {
                return Err(Error::InternalError(format!("got ({}, {})", r.n1, r.n2)));
            }
            Ok("(176, 3480), Mordell-Weil ranks 2 and 4".into())
        })(),
    ));
    out.push(check(
        "inert cross-check",
        (|| {
            let n: usize = [-3, -4]
                .into_iter()
                .map(|d| cm_crosscheck(d, 100).map(|t| t.rows.len()))
                .sum::<artin1_core::Result<usize>>()?;
            Ok(format!("{n} primes agree"))
        })(),
    ));
    out
}
