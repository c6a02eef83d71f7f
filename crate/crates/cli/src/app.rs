//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use offergame::complete::complete_from_seed;
use offergame::fixtures::{pd_game, prisoners_dilemma};
use offergame::scalar::int;
use offergame::{
    analyze, apply_offer_set, check_equivalence, invert_offer_set, make_profile_dominant,
    nonnegative_decomposition, parse_scalar, synthesize_offers, Error, Game, Offer, OfferSet,
    Profile, Scalar,
};
use thiserror::Error as ThisError;

use crate::document::{
    parse_game, parse_offers, parse_seed, serialize_game, serialize_offers, ParseError,
};
use crate::render::{render_game, render_offers, render_report, report_json};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when the operation is well posed but fails, e.g. an
/// unreachable target.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status for unreadable or malformed input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "offergame",
    version,
    about = "Transform normal-form games with preplay offers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply an offer set to a game and write the transformed game.
    Apply {
        game: PathBuf,
        offers: PathBuf,
        /// Reject negative offer amounts.
        #[arg(long)]
        strict: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether TARGET is reachable from GAME by offers.
    Check { game: PathBuf, target: PathBuf },
    /// Find offers turning GAME into TARGET.
    Synth {
        game: PathBuf,
        target: PathBuf,
        /// Express the result with nonnegative amounts only.
        #[arg(long)]
        nonnegative: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Complete a seed given on the star through a base profile.
    Complete {
        game: PathBuf,
        seed: PathBuf,
        /// Base profile as comma-separated strategy names; defaults to each
        /// player's first strategy.
        #[arg(long)]
        base: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the inverse of an offer set.
    Invert {
        game: PathBuf,
        offers: PathBuf,
        /// Reject negative offer amounts.
        #[arg(long)]
        strict: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find nonnegative offers making a profile strictly dominant.
    Dominate {
        game: PathBuf,
        /// Comma-separated strategy names in player order, e.g. `C,C`.
        #[arg(long)]
        profile: String,
        /// Minimum strict advantage of each designated strategy.
        #[arg(long, default_value = "1")]
        margin: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report pure Nash equilibria, dominance, constant sum and Pareto optimality.
    Analyze {
        game: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Replay a built-in walkthrough.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoName {
    /// Prisoners' Dilemma turned cooperative by two offers.
    Pd,
}

/// A failed run, already classified by exit status.
#[derive(Debug, ThisError)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotEquivalent(verdict) => Failure::Domain(verdict.to_string()),
            Error::SeedSumViolation { .. }
            | Error::IncompleteSeed(_)
            | Error::OffStarSeed(_)
            | Error::TooFewPlayers(_)
            | Error::Unsupported(_) => Failure::Domain(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Result text and exit status of one invocation.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn located(path: &Path) -> impl Fn(ParseError) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn load_game(path: &Path) -> Result<Game, Failure> {
    parse_game(&read(path)?).map_err(located(path))
}

fn load_offers(path: &Path, game: &Game, strict: bool) -> Result<OfferSet, Failure> {
    parse_offers(&read(path)?, game, strict).map_err(located(path))
}

fn parse_profile(game: &Game, text: &str) -> Result<Profile, Failure> {
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    game.profile_by_names(&names)
        .map_err(|e| Failure::Input(format!("profile {text:?}: {e}")))
}

/// Writes `text` to `output` when given, else returns it for stdout.
fn emit(text: String, output: Option<&Path>) -> Result<Outcome, Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Apply {
            game,
            offers,
            strict,
            output,
        } => {
            let source = load_game(&game)?;
            let offers = load_offers(&offers, &source, strict)?;
            let target = apply_offer_set(&source, &offers)?;
            emit(serialize_game(&target), output.as_deref())
        }
        Command::Check { game, target } => {
            let source = load_game(&game)?;
            let target = load_game(&target)?;
            let verdict = check_equivalence(&source, &target)?;
            Ok(Outcome {
                stdout: format!("{verdict}\n"),
                code: if verdict.is_equivalent() {
                    EXIT_OK
                } else {
                    EXIT_DOMAIN
                },
            })
        }
        Command::Synth {
            game,
            target,
            nonnegative,
            output,
        } => {
            let source = load_game(&game)?;
            let target = load_game(&target)?;
            let mut offers = synthesize_offers(&source, &target)?.offers;
            if nonnegative {
                offers = nonnegative_decomposition(&offers, source.shape())?;
            }
            emit(serialize_offers(&offers, &source), output.as_deref())
        }
        Command::Complete {
            game,
            seed,
            base,
            output,
        } => {
            let source = load_game(&game)?;
            let base = match base {
                Some(text) => parse_profile(&source, &text)?,
                None => Profile::new(vec![0; source.player_count()]),
            };
            let seed = parse_seed(&read(&seed)?, &source, base).map_err(located(&seed))?;
            let completed = complete_from_seed(&source, &seed)?;
            emit(serialize_game(&completed), output.as_deref())
        }
        Command::Invert {
            game,
            offers,
            strict,
            output,
        } => {
            let source = load_game(&game)?;
            let offers = load_offers(&offers, &source, strict)?;
            let inverse = invert_offer_set(&offers, source.shape())?;
            emit(serialize_offers(&inverse, &source), output.as_deref())
        }
        Command::Dominate {
            game,
            profile,
            margin,
            output,
        } => {
            let source = load_game(&game)?;
            let profile = parse_profile(&source, &profile)?;
            let margin: Scalar = parse_scalar(&margin)
                .map_err(|e| Failure::Input(format!("margin {margin:?}: {e}")))?;
            let offers = make_profile_dominant(&source, &profile, &margin)?;
            emit(serialize_offers(&offers, &source), output.as_deref())
        }
        Command::Analyze { game, json } => {
            let source = load_game(&game)?;
            let report = analyze(&source);
            let text = if json {
                let value = report_json(&source, &report);
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&value).expect("report serializes")
                )
            } else {
                render_report(&source, &report)
            };
            Ok(Outcome::ok(text))
        }
        Command::Demo { name: DemoName::Pd } => Ok(Outcome::ok(pd_demo()?)),
    }
}

/// The Prisoners' Dilemma walkthrough: two offers on cooperation move the
/// unique equilibrium from (D,D) through (D,C) to (C,C).
pub fn pd_demo() -> Result<String, Failure> {
    let m0 = prisoners_dilemma();
    let first = Offer::named(&m0, "I", "II", "C", int(2))?;
    let second = Offer::named(&m0, "II", "I", "C", int(2))?;
    let m1 = apply_offer_set(&m0, &OfferSet::new(vec![first.clone()]))?;
    let m2 = apply_offer_set(&m1, &OfferSet::new(vec![second.clone()]))?;
    debug_assert_eq!(m1, pd_game(&[&[(2, 6), (0, 5)], &[(3, 2), (1, 1)]]));
    let mut out = String::new();
    let steps = [
        ("M0: Prisoners' Dilemma", None, &m0),
        ("M1", Some(&first), &m1),
        ("M2", Some(&second), &m2),
    ];
    for (i, (title, offer, game)) in steps.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match offer {
            Some(offer) => out.push_str(&format!("{title} after offer {}\n", offer.describe(&m0))),
            None => out.push_str(&format!("{title}\n")),
        }
        out.push_str(&render_game(game));
        let nash: Vec<String> = analyze::pure_nash(game)
            .iter()
            .map(|p| game.profile_label(p))
            .collect();
        out.push_str(&format!("pure Nash equilibria: {}\n", nash.join(" ")));
    }
    out.push_str("\ncombined offers:\n");
    out.push_str(&render_offers(
        &OfferSet::new(vec![first, second]).canonicalize(),
        &m0,
    ));
    Ok(out)
}

/// Runs one invocation, writing results to `stdout` and diagnostics to
/// `stderr`, and returns the exit status.
pub fn run<'a, I, T>(args: I, stdout: &'a mut dyn Write, stderr: &'a mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(failure) => {
            let _ = writeln!(stderr, "error: {failure}");
            failure.exit_code()
        }
    }
}
