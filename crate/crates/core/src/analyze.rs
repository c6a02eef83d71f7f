//! Exhaustive pure-strategy analysis: Nash equilibria, dominance, constant
//! sums and Pareto optimality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{sum, Game, Profile};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DominanceKind {
    /// Better against every opposing choice.
    Strict,
    /// At least as good everywhere and better somewhere, but not strictly.
    Weak,
}

impl fmt::Display for DominanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DominanceKind::Strict => "strict",
            DominanceKind::Weak => "weak",
        })
    }
}

/// `dominant` dominates `dominated` for one player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominancePair {
    pub dominant: usize,
    pub dominated: usize,
    pub kind: DominanceKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub pure_nash: Vec<Profile>,
    /// Indexed by player.
    pub dominance: Vec<Vec<DominancePair>>,
    pub constant_sum: Option<Scalar>,
    pub pareto_optimal: Vec<Profile>,
    pub strictly_dominant_profile: Option<Profile>,
}

pub fn analyze(game: &Game) -> AnalysisReport {
    AnalysisReport {
        pure_nash: pure_nash(game),
        dominance: (0..game.player_count())
            .map(|p| dominance_pairs(game, p))
            .collect(),
        constant_sum: constant_sum(game),
        pareto_optimal: pareto_optimal(game),
        strictly_dominant_profile: strictly_dominant_profile(game),
    }
}

/// Profiles where no player gains by deviating alone.
pub fn pure_nash(game: &Game) -> Vec<Profile> {
    let shape = game.shape();
    shape
        .profiles()
        .filter(|profile| {
            (0..shape.player_count()).all(|player| {
                let current = game.payoff(profile, player);
                shape
                    .deviations(profile, player)
                    .all(|alt| game.payoff(&alt, player) <= current)
            })
        })
        .collect()
}

/// Compares `s` against `t` for `player` at every opposing choice: returns
/// (never worse, always better, better somewhere).
fn compare(game: &Game, player: usize, s: usize, t: usize) -> (bool, bool, bool) {
    let mut never_worse = true;
    let mut always_better = true;
    let mut somewhere_better = false;
    for at in game.shape().profiles().filter(|p| p.get(player) == s) {
        let other = at.with(player, t);
        match game.payoff(&at, player).cmp(game.payoff(&other, player)) {
            Ordering::Greater => somewhere_better = true,
            Ordering::Equal => always_better = false,
            Ordering::Less => {
                never_worse = false;
                always_better = false;
            }
        }
    }
    (never_worse, always_better, somewhere_better)
}

pub fn strictly_dominates(game: &Game, player: usize, s: usize, t: usize) -> bool {
    s != t && compare(game, player, s, t).1
}

pub fn weakly_dominates(game: &Game, player: usize, s: usize, t: usize) -> bool {
    let (never_worse, _, somewhere_better) = compare(game, player, s, t);
    s != t && never_worse && somewhere_better
}

/// Labeled dominance relation among one player's strategies.
pub fn dominance(game: &Game, player: usize) -> Result<Vec<DominancePair>> {
    if player >= game.player_count() {
        return Err(Error::UnknownPlayer(format!("#{}", player + 1)));
    }
    Ok(dominance_pairs(game, player))
}

fn dominance_pairs(game: &Game, player: usize) -> Vec<DominancePair> {
    let m = game.shape().strategy_count(player);
    let mut pairs = Vec::new();
    for s in 0..m {
        for t in (0..m).filter(|&t| t != s) {
            let (never_worse, always_better, somewhere_better) = compare(game, player, s, t);
            let kind = if always_better {
                DominanceKind::Strict
            } else if never_worse && somewhere_better {
                DominanceKind::Weak
            } else {
                continue;
            };
            pairs.push(DominancePair {
                dominant: s,
                dominated: t,
                kind,
            });
        }
    }
    pairs
}

/// The common payoff sum, if every outcome has the same one.
pub fn constant_sum(game: &Game) -> Option<Scalar> {
    let mut sums = game.cells().map(sum);
    let first = sums.next()?;
    sums.all(|s| s == first).then_some(first)
}

/// Outcomes whose payoff vector no other outcome strongly Pareto dominates
/// (at least as good for all, better for one).
pub fn pareto_optimal(game: &Game) -> Vec<Profile> {
    let shape = game.shape();
    let cells: Vec<&[Scalar]> = game.cells().collect();
    let dominated = |v: &[Scalar]| {
        cells
            .iter()
            .any(|w| w.iter().zip(v).all(|(a, b)| a >= b) && w.iter().zip(v).any(|(a, b)| a > b))
    };
    shape
        .profiles()
        .enumerate()
        .filter(|(idx, _)| !dominated(cells[*idx]))
        .map(|(_, p)| p)
        .collect()
}

/// The profile in which every player's strategy strictly dominates all of
/// their alternatives, if there is one.
pub fn strictly_dominant_profile(game: &Game) -> Option<Profile> {
    let shape = game.shape();
    let mut picks = Vec::with_capacity(shape.player_count());
    for player in 0..shape.player_count() {
        let m = shape.strategy_count(player);
        let best = (0..m).find(|&s| {
            (0..m)
                .filter(|&t| t != s)
                .all(|t| strictly_dominates(game, player, s, t))
        })?;
        picks.push(best);
    }
    Some(Profile::new(picks))
}
