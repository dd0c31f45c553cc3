//! `nilreg`: normal forms, arithmetic and verification reports from the
//! command line.
//!
//! Exit status is 0 when a check passes or a search is exhausted, 1 when a
//! check finds a counterexample, and 2 on usage errors.

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilreg_core::confluence::{check_confluence, ConfluenceConfig};
use nilreg_core::matrix::{
    check_determinant_obstruction, membership_t, n2_variant_check, phi, verify_phi_faithful, Matrix2,
};
use nilreg_core::structure::{
    check_primeness_bounded, check_regularity_identities, check_separativity_identities, check_tau_forms,
    check_tau_unique_families, check_types_lemma, search_unit_regular_witness, SearchConfig, TauHarness,
};
use nilreg_core::{AlgebraElement, Execution, Field, Gf2, Gf3, Rational, RewriteSystem, VerificationReport};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Gf2,
    Gf3,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresentationArg {
    /// `x, q` with `x^n = 0`, `xqx = x`, `qxq = q`
    S,
    /// `a, b` with `a^(n-1) = 0`
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    TypesLemma,
    TauForms,
    TauUnique,
    UnitRegularSearch,
    Regularity,
    Separativity,
    Primeness,
    Confluence,
    PhiFaithful,
    Determinant,
    N2Variant,
}

#[derive(Debug, Parser)]
#[command(name = "nilreg", version, about = "Normal forms and bounded verification for F[x]/(x^n) with a generalised inverse q adjoined")]
struct Cli {
    /// Nilpotency index of x.
    #[arg(long, global = true, default_value_t = 3)]
    n: u32,
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Rational)]
    field: FieldArg,
    #[arg(long, global = true, value_enum, default_value_t = PresentationArg::S)]
    presentation: PresentationArg,
    /// Word length bound for basis-wide checks.
    #[arg(long, global = true, default_value_t = 6)]
    max_len: usize,
    /// Length bound for the shape words of searches and exhaustive families.
    #[arg(long, global = true, default_value_t = 3)]
    max_word_len: usize,
    /// Random trials for randomized checks (defaults depend on the check).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Rational searches use coefficients in -bound..=bound.
    #[arg(long, global = true, default_value_t = 1)]
    coefficient_bound: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an element.
    Reduce { expr: String },
    /// Product of two elements.
    Mul { left: String, right: String },
    /// Basis words up to a length.
    Basis { max_len: usize },
    /// Matrix image of an element of S.
    Phi { expr: String },
    /// Membership of `[[e11, e12], [e21, e22]]` in T.
    Member { matrix: String },
    /// Run a verification or search and print its report.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
}

struct UsageError(String);

impl<E: Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<ExitCode, UsageError>;

impl Cli {
    fn system(&self) -> Result<RewriteSystem, UsageError> {
        Ok(match self.presentation {
            PresentationArg::S => RewriteSystem::s(self.n)?,
            PresentationArg::R => RewriteSystem::r_for(self.n)?,
        })
    }

    fn s_system(&self) -> Result<RewriteSystem, UsageError> {
        Ok(RewriteSystem::s(self.n)?)
    }

    fn exec(&self) -> Execution {
        match self.workers {
            Some(1) => Execution::Sequential,
            _ => Execution::default(),
        }
    }

    fn emit(&self, text: impl Display, value: serde_json::Value) {
        if self.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }
}

macro_rules! with_field {
    ($field:expr, $f:ident => $body:expr) => {
        match $field {
            FieldArg::Gf2 => {
                type $f = Gf2;
                $body
            }
            FieldArg::Gf3 => {
                type $f = Gf3;
                $body
            }
            FieldArg::Rational => {
                type $f = Rational;
                $body
            }
        }
    };
}

fn reduce<F: Field>(cli: &Cli, expr: &str) -> Outcome {
    let e = AlgebraElement::<F>::parse(expr, cli.system()?)?;
    cli.emit(&e, json!({ "input": expr, "normal_form": e.to_string(), "terms": e.to_json() }));
    Ok(ExitCode::SUCCESS)
}

fn mul<F: Field>(cli: &Cli, left: &str, right: &str) -> Outcome {
    let sys = cli.system()?;
    let p = &AlgebraElement::<F>::parse(left, sys)? * &AlgebraElement::<F>::parse(right, sys)?;
    cli.emit(&p, json!({ "product": p.to_string(), "terms": p.to_json() }));
    Ok(ExitCode::SUCCESS)
}

fn basis(cli: &Cli, max_len: usize) -> Outcome {
    let words = cli.system()?.enumerate_basis(max_len);
    if cli.json {
        let list: Vec<String> = words.iter().map(ToString::to_string).collect();
        println!("{}", json!({ "max_len": max_len, "count": words.len(), "words": list }));
    } else {
        for w in &words {
            println!("{w}");
        }
        println!("count: {}", words.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn phi_cmd<F: Field>(cli: &Cli, expr: &str) -> Outcome {
    let m = phi(&AlgebraElement::<F>::parse(expr, cli.s_system()?)?)?;
    cli.emit(&m, json!({ "input": expr, "image": m.to_json() }));
    Ok(ExitCode::SUCCESS)
}

fn member<F: Field>(cli: &Cli, src: &str) -> Outcome {
    let m = Matrix2::<F>::parse(src, RewriteSystem::r_for(cli.n)?)?;
    let t = membership_t(&m);
    let show = |e: &Option<AlgebraElement<F>>| e.as_ref().map(ToString::to_string);
    let value = json!({
        "matrix": m.to_string(),
        "in_T": t.in_t,
        "s12": show(&t.s12),
        "c22": t.c22.as_ref().map(ToString::to_string),
        "s22": show(&t.s22),
    });
    let text = if t.in_t {
        format!(
            "in T: e12 = ({})(1 - ba), e22 = {} + ({})(1 - ba)",
            t.s12.as_ref().expect("certificate"),
            t.c22.as_ref().expect("certificate"),
            t.s22.as_ref().expect("certificate")
        )
    } else {
        "not in T".to_string()
    };
    cli.emit(text, value);
    Ok(ExitCode::SUCCESS)
}

fn run_check(cli: &Cli, check: Check) -> Result<VerificationReport, UsageError> {
    let exec = cli.exec();
    let harness = || TauHarness {
        exhaustive_max_len: cli.max_word_len,
        random_trials: cli.trials.unwrap_or(10_000),
        random_max_len: cli.max_len,
        seed: cli.seed,
    };
    Ok(match check {
        Check::TypesLemma => check_types_lemma(cli.s_system()?, cli.max_len, exec)?,
        Check::TauForms => check_tau_forms(cli.s_system()?, &harness(), exec)?.0,
        Check::TauUnique => check_tau_unique_families(cli.s_system()?, &harness(), exec)?.0,
        Check::UnitRegularSearch => {
            let cfg = SearchConfig { max_word_len: cli.max_word_len, coefficient_bound: cli.coefficient_bound, ..SearchConfig::default() };
            with_field!(cli.field, F => search_unit_regular_witness::<F>(cli.s_system()?, &cfg, exec)?)
        }
        Check::Regularity => check_regularity_identities(cli.s_system()?)?,
        Check::Separativity => check_separativity_identities(cli.s_system()?)?,
        Check::Primeness => check_primeness_bounded(cli.s_system()?, cli.max_len, cli.trials.unwrap_or(1000), cli.seed, exec)?,
        Check::Confluence => {
            let cfg = ConfluenceConfig { max_len: cli.max_len, strategies: cli.trials.unwrap_or(8), seed: cli.seed };
            check_confluence(cli.system()?, &cfg, exec)
        }
        Check::PhiFaithful => with_field!(cli.field, F => verify_phi_faithful::<F>(cli.s_system()?, cli.max_len, exec)?),
        Check::Determinant => with_field!(cli.field, F => check_determinant_obstruction::<F>(cli.trials.unwrap_or(1000), cli.seed)?),
        Check::N2Variant => {
            if cli.n != 2 {
                return Err(UsageError(format!("n2-variant is the n = 2 case, got --n {}", cli.n)));
            }
            with_field!(cli.field, F => n2_variant_check::<F>(cli.max_len)?)
        }
    })
}

fn verify(cli: &Cli, check: Check) -> Outcome {
    let report = run_check(cli, check)?;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(if report.is_success() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Reduce { expr } => with_field!(cli.field, F => reduce::<F>(cli, expr)),
        Command::Mul { left, right } => with_field!(cli.field, F => mul::<F>(cli, left, right)),
        Command::Basis { max_len } => basis(cli, *max_len),
        Command::Phi { expr } => with_field!(cli.field, F => phi_cmd::<F>(cli, expr)),
        Command::Member { matrix } => with_field!(cli.field, F => member::<F>(cli, matrix)),
        Command::Verify { check } => verify(cli, *check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.workers.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
