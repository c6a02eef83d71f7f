use thiserror::Error;

use crate::characterize::EquivalenceVerdict;
use crate::game::Profile;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by game construction and the transformation operations.
///
/// Profiles and strategy indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate {scope} name {name:?}")]
    DuplicateName { scope: String, name: String },
    #[error("no payoff given for outcome {0}")]
    MissingOutcome(Profile),
    #[error("outcome {0} listed more than once")]
    DuplicateOutcome(Profile),
    #[error("expected {expected} values, found {found}{}", .at.as_ref().map(|p| format!(" at {p}")).unwrap_or_default())]
    ArityMismatch {
        expected: usize,
        found: usize,
        at: Option<Profile>,
    },
    #[error("a game needs at least one player and one strategy per player")]
    EmptyShape,
    #[error("transformations need at least 2 players, game has {0}")]
    TooFewPlayers(usize),
    #[error("index {index} out of range 1..={bound} for player {player}")]
    IndexOutOfRange {
        player: usize,
        index: usize,
        bound: usize,
    },
    #[error("unknown player {0:?}")]
    UnknownPlayer(String),
    #[error("player {player:?} has no strategy {strategy:?}")]
    UnknownStrategy { player: String, strategy: String },
    #[error("player {0:?} cannot make an offer to themself")]
    SelfOffer(String),
    #[error("games have different shapes: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("games disagree on names: {0}")]
    NameMismatch(String),
    #[error("target is not reachable: {0}")]
    NotEquivalent(Box<EquivalenceVerdict>),
    #[error("seed has no value for star outcome {0}")]
    IncompleteSeed(Profile),
    #[error("seed outcome {0} is not on the star through the base profile")]
    OffStarSeed(Profile),
    #[error("seed changes the payoff sum at {profile}: source {source_sum}, seed {seed_sum}")]
    SeedSumViolation {
        profile: Profile,
        source_sum: String,
        seed_sum: String,
    },
    #[error("margin must be positive, got {0}")]
    NonpositiveMargin(String),
    #[error("{0}")]
    Unsupported(&'static str),
}
