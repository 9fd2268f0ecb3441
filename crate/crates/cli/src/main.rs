mod args;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ellweyl::boards::{file_poly, rook_poly, FerrersBoard};
use ellweyl::ncword::{normal_order, parse_word};
use ellweyl::skewpoly::{fib_aq, fib_aq_closed, fib_elliptic};
use ellweyl::special_fn::{big_weight, binom, small_weight, theta, WeightFamily};
use ellweyl::verify::{list_identities, lookup, run_check, CheckOptions, CheckReport};
use ellweyl::{Error, Result};
use serde::Serialize;

use args::{BoardArgs, Cli, Command, FibArgs};

/// Largest board the CLI enumerates, in both directions.
const MAX_BOARD: u32 = 8;

enum Outcome {
    Done,
    /// A verification ran and did not pass.
    Failed,
}

/// Writes one line to stdout; a closed pipe is not an error worth a panic.
fn out(line: &str) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        out(&serde_json::to_string(value).expect("outputs serialise"));
    } else {
        out(&text());
    }
}

fn board(args: &BoardArgs) -> Result<FerrersBoard> {
    let board: FerrersBoard = args.board.parse()?;
    let tallest = board.heights().iter().copied().max().unwrap_or(0);
    if board.columns() as u32 > MAX_BOARD || tallest > MAX_BOARD {
        return Err(Error::Domain(format!("board {board} exceeds the {MAX_BOARD}x{MAX_BOARD} limit")));
    }
    Ok(board)
}

fn report_line(r: &CheckReport) -> String {
    format!(
        "{} {:<28} trials={} failures={} max_rel_err={:.2e} seed={} {}ms",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.trials,
        r.failures,
        r.max_rel_err,
        r.seed,
        r.elapsed_ms
    )
}

fn fib(json: bool, args: &FibArgs) -> Result<()> {
    let v = if args.elliptic {
        fib_elliptic(args.n, &args.params.elliptic("elliptic")?)?
    } else {
        let need = |v: Option<_>, flag| v.ok_or_else(|| Error::Domain(format!("--aq needs --{flag}")));
        let (a, q) = (need(args.params.a, "a")?, need(args.params.q, "q")?);
        if args.closed {
            fib_aq_closed(args.n, a, q)?
        } else {
            fib_aq(args.n, a, q)?
        }
    };
    emit(json, &v, || output::complex(v));
    Ok(())
}

fn verify(json: bool, id: Option<&str>, seed: u64, order: Option<u32>) -> Result<Outcome> {
    let ids: Vec<&str> = match id {
        Some(id) => vec![lookup(id)?.id],
        None => list_identities().iter().map(|c| c.id).collect(),
    };
    let opts = CheckOptions { degree: order, ..Default::default() };
    let reports = ids.iter().map(|id| run_check(id, seed, &opts)).collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    match (json, id.is_some()) {
        (true, true) => emit(true, &reports[0], String::new),
        (true, false) => emit(true, &reports, String::new),
        (false, _) => {
            for r in &reports {
                out(&report_line(r));
            }
            if id.is_none() {
                out(&format!("{}/{} checks passed", reports.iter().filter(|r| r.pass).count(), reports.len()));
            }
        }
    }
    Ok(if pass { Outcome::Done } else { Outcome::Failed })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Theta { x, p } => {
            let v = theta(*x, *p)?;
            emit(json, &v, || output::complex(v));
        }
        Command::Weight { family, s, t, big } => {
            let f = family.params.family(family.family)?;
            let v = if *big { big_weight(&f, *s, *t)? } else { small_weight(&f, *s, *t)? };
            emit(json, &v, || output::value(&v));
        }
        Command::Binom { family, n, k } => {
            let f = family.params.family(family.family)?;
            let v = binom(&f, *n, *k)?;
            emit(json, &v, || output::value(&v));
        }
        Command::NormalOrder { system, word, family } => {
            let word = parse_word(word)?;
            let f = family.family()?;
            let nf = normal_order(&word, (*system).into());
            if matches!(f, WeightFamily::Generic) {
                emit(json, &nf, || nf.to_string());
            } else {
                let terms = nf.evaluate(&f)?;
                emit(json, &output::evaluated_json(&terms), || output::evaluated(&terms));
            }
        }
        Command::Rook(args) | Command::File(args) => {
            let b = board(args)?;
            let f = args.family.family()?;
            let v = match &cli.command {
                Command::Rook(_) => rook_poly(&b, args.k, &f)?,
                _ => file_poly(&b, args.k, &f)?,
            };
            emit(json, &v, || output::value(&v));
        }
        Command::Fib(args) => fib(json, args)?,
        Command::Verify { id, seed, order } => return verify(json, id.as_deref(), *seed, *order),
    }
    Ok(Outcome::Done)
}

/// 0 on success, 1 when a verification fails (including an exhausted
/// resample cap), 2 for usage and domain errors.
fn exit_code(result: &Result<Outcome>) -> u8 {
    match result {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Failed) | Err(Error::ResampleCap { .. }) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = run(&cli);
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(Outcome::Done)), 0);
        assert_eq!(exit_code(&Ok(Outcome::Failed)), 1);
        assert_eq!(exit_code(&Err(Error::ResampleCap { id: "x".into(), admissible: 1, total: 2 })), 1);
        assert_eq!(exit_code(&Err(Error::Domain("bad".into()))), 2);
        assert_eq!(exit_code(&Err(Error::UnknownId("x".into()))), 2);
    }

    #[test]
    fn board_limit() {
        let args = |b: &str| BoardArgs { board: b.into(), k: 0, family: args::OptionalFamily { family: None, params: args::Params { a: None, b: None, q: None, p: None } } };
        assert!(board(&args("8,8,8,8,8,8,8,8")).is_ok());
        assert!(board(&args("1,1,1,1,1,1,1,1,1")).is_err());
    }

    #[test]
    fn complex_flags() {
        assert_eq!(args::parse_complex("1.5,-2").unwrap(), ellweyl::Complex64::new(1.5, -2.0));
        assert_eq!(args::parse_complex(" 3 ").unwrap(), ellweyl::Complex64::new(3.0, 0.0));
        assert!(args::parse_complex("1,2,3").is_err());
        assert!(args::parse_complex("nan,0").is_err());
    }
}
