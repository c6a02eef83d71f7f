//! Offer-induced transformations of N-person normal-form games.
//!
//! A preplay offer is a binding promise by one player to pay another a fixed
//! amount if the recipient plays a given pure strategy. Each offer transforms
//! the payoff tensor by moving utility between two players; sets of offers
//! compose into a commutative group acting on games of a fixed shape.
//!
//! The crate provides:
//!
//! * [`offers`]: applying offers and offer sets, canonical forms, inverses;
//! * [`characterize`]: deciding whether a target game is reachable;
//! * [`synth`]: building offer sets that realize a reachable target, that
//!   use only nonnegative payments, or that make a profile dominant;
//! * [`complete`]: the unique reachable extension of payoffs given on a
//!   coordinate star;
//! * [`analyze`]: pure Nash equilibria, dominance and Pareto optimality.
//!
//! All arithmetic is exact over [`Scalar`] rationals.

pub mod analyze;
pub mod characterize;
pub mod complete;
mod error;
pub mod fixtures;
pub mod game;
pub mod linsolve;
pub mod offers;
pub mod scalar;
pub mod synth;

pub use analyze::{analyze, AnalysisReport, DominanceKind, DominancePair};
pub use characterize::{
    check_equivalence, diff_tensor, Condition, DiffTensor, EquivalenceVerdict, Violation,
};
pub use complete::{complete_from_seed, Seed};
pub use error::{Error, Result};
pub use game::{Game, GameShape, Profile};
pub use offers::{apply_offer, apply_offer_set, invert_offer, invert_offer_set, Offer, OfferSet};
pub use scalar::{parse_scalar, Scalar};
pub use synth::{
    make_profile_dominant, nonnegative_decomposition, synthesize_offers, SynthesisResult,
};
