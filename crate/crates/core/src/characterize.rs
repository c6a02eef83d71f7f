//! Deciding whether one game can be turned into another by offers.
//!
//! With `c^j` the per-player difference between target and source, the
//! target is reachable iff
//!
//! * **C1**: every outcome keeps its payoff sum, and
//! * **C2**: for every player `j` and axis `k`, the unit-step difference
//!   `c^j(.., i_k + 1, ..) - c^j(.., i_k, ..)` depends on `i_k` alone.
//!
//! For two players C2 is the rectangle identity
//! `c_ij + c_(i+1)(j+1) = c_i(j+1) + c_(i+1)j`.

use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::game::{sum, Game, GameShape, Profile};
use crate::scalar::Scalar;

/// Target-minus-source payoffs, per player per outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffTensor {
    shape: GameShape,
    values: Vec<Scalar>,
}

impl DiffTensor {
    pub(crate) fn from_values(shape: GameShape, values: Vec<Scalar>) -> DiffTensor {
        debug_assert_eq!(values.len(), shape.outcome_count() * shape.player_count());
        DiffTensor { shape, values }
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn get(&self, profile: &Profile, player: usize) -> &Scalar {
        &self.at(profile)[player]
    }

    /// Difference vector at an outcome.
    pub fn at(&self, profile: &Profile) -> &[Scalar] {
        let n = self.shape.player_count();
        let idx = self.shape.linear_index(profile);
        &self.values[idx * n..(idx + 1) * n]
    }

    /// One player's differences in row-major order.
    pub fn player_values(&self, player: usize) -> Vec<Scalar> {
        self.values
            .chunks(self.shape.player_count())
            .map(|c| c[player].clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Step difference of player `j` along `axis` starting at `from`.
    fn step(&self, player: usize, axis: usize, from: &Profile) -> Scalar {
        let to = from.with(axis, from.get(axis) + 1);
        self.get(&to, player) - self.get(from, player)
    }
}

/// Exact entrywise difference `target - source`.
pub fn diff_tensor(source: &Game, target: &Game) -> Result<DiffTensor> {
    source.check_compatible(target)?;
    let values = target
        .cells()
        .zip(source.cells())
        .flat_map(|(t, s)| t.iter().zip(s).map(|(a, b)| a - b))
        .collect();
    Ok(DiffTensor {
        shape: source.shape().clone(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    C1,
    C2,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
        })
    }
}

/// A concrete failing equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The payoff sum at `profile` changed.
    Sum { profile: Profile },
    /// For `player`, the step along `axis` starting at `at` differs from the
    /// reference step starting at `reference`, which shares `at`'s coordinate
    /// on `axis` and is 1 everywhere else.
    Step {
        player: usize,
        axis: usize,
        at: Profile,
        reference: Profile,
    },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::Sum { .. } => Condition::C1,
            Violation::Step { .. } => Condition::C2,
        }
    }

    pub fn player(&self) -> Option<usize> {
        match self {
            Violation::Sum { .. } => None,
            Violation::Step { player, .. } => Some(*player),
        }
    }

    /// Re-evaluates the equality against a difference tensor; true when it
    /// really fails there.
    pub fn fails_in(&self, diff: &DiffTensor) -> bool {
        match self {
            Violation::Sum { profile } => !sum(diff.at(profile)).is_zero(),
            Violation::Step {
                player,
                axis,
                at,
                reference,
            } => diff.step(*player, *axis, at) != diff.step(*player, *axis, reference),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Sum { profile } => write!(f, "C1 at {profile}"),
            Violation::Step {
                player,
                axis,
                at,
                reference,
            } => {
                let next = |p: &Profile| p.with(*axis, p.get(*axis) + 1);
                write!(
                    f,
                    "C2 at {}->{} vs {}->{} (player {}, axis {})",
                    at,
                    next(at),
                    reference,
                    next(reference),
                    player + 1,
                    axis + 1
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub violation: Option<Violation>,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("EQUIVALENT"),
            Some(v) => write!(f, "NOT-EQUIVALENT: {v}"),
        }
    }
}

/// Decides whether `target` is reachable from `source` by some offer set.
///
/// C1 is checked first; when it fails the first failing outcome in
/// row-major order is reported.
pub fn check_equivalence(source: &Game, target: &Game) -> Result<EquivalenceVerdict> {
    source.shape().require_transformable()?;
    let diff = diff_tensor(source, target)?;
    Ok(EquivalenceVerdict {
        violation: find_violation(&diff),
    })
}

/// First violation of C1, else of C2, in the difference tensor.
pub fn find_violation(diff: &DiffTensor) -> Option<Violation> {
    let shape = diff.shape();
    if let Some(profile) = shape.profiles().find(|p| !sum(diff.at(p)).is_zero()) {
        return Some(Violation::Sum { profile });
    }
    let n = shape.player_count();
    for player in 0..n {
        for axis in 0..n {
            let m = shape.strategy_count(axis);
            if m < 2 {
                continue;
            }
            let mut reference = Profile::new(vec![0; n]);
            for at in shape.profiles().filter(|p| p.get(axis) + 1 < m) {
                reference.0[axis] = at.get(axis);
                if diff.step(player, axis, &at) != diff.step(player, axis, &reference) {
                    return Some(Violation::Step {
                        player,
                        axis,
                        at,
                        reference: reference.clone(),
                    });
                }
            }
        }
    }
    None
}
