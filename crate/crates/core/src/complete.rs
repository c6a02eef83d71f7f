//! Completing a partially specified target game.
//!
//! Fix a base profile and give target payoffs on its coordinate star: every
//! outcome where at most one player deviates from the base. If those values
//! keep the source's outcome sums, there is exactly one reachable game that
//! agrees with them. Its difference tensor is filled in from the star by
//! the rectangle recurrence on any two axes `k`, `p`:
//!
//! ```text
//! c(.., i_k+1, .., i_p+1, ..) = c(.., i_k, .., i_p+1, ..)
//!                             + c(.., i_k+1, .., i_p, ..)
//!                             - c(.., i_k, .., i_p, ..)
//! ```

use std::collections::BTreeMap;

use crate::characterize::DiffTensor;
use crate::error::{Error, Result};
use crate::game::{sum, Game, GameShape, Profile};
use crate::scalar::Scalar;

/// Target payoff vectors on the coordinate star through `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    base: Profile,
    assignments: BTreeMap<Profile, Vec<Scalar>>,
}

impl Seed {
    pub fn new(base: Profile, assignments: Vec<(Profile, Vec<Scalar>)>) -> Seed {
        Seed {
            base,
            assignments: assignments.into_iter().collect(),
        }
    }

    /// Reads the star values through `base` off an existing game.
    pub fn from_game(game: &Game, base: Profile) -> Result<Seed> {
        game.shape().check_profile(&base)?;
        let assignments = star_profiles(game.shape(), &base)
            .into_iter()
            .map(|p| {
                let v = game.payoffs(&p).to_vec();
                (p, v)
            })
            .collect();
        Ok(Seed { base, assignments })
    }

    /// Two-player seed from one player's target values on the star; the
    /// other player's values follow from the source's outcome sums.
    pub fn from_player_values(
        source: &Game,
        base: Profile,
        player: usize,
        values: Vec<(Profile, Scalar)>,
    ) -> Result<Seed> {
        if source.player_count() != 2 {
            return Err(Error::Unsupported(
                "single-player seeds determine the rest only in two-player games",
            ));
        }
        if player >= 2 {
            return Err(Error::UnknownPlayer(format!("#{}", player + 1)));
        }
        let mut assignments = BTreeMap::new();
        for (profile, value) in values {
            let total = source.payoff_sum(&profile)?;
            let other = total - &value;
            let cell = if player == 0 {
                vec![value, other]
            } else {
                vec![other, value]
            };
            assignments.insert(profile, cell);
        }
        Ok(Seed { base, assignments })
    }

    pub fn base(&self) -> &Profile {
        &self.base
    }

    pub fn assignments(&self) -> &BTreeMap<Profile, Vec<Scalar>> {
        &self.assignments
    }
}

/// The base profile followed by each single-player deviation from it, axis
/// by axis. Contains `1 + sum(m_k - 1)` profiles.
pub fn star_profiles(shape: &GameShape, base: &Profile) -> Vec<Profile> {
    let mut out = vec![base.clone()];
    for axis in 0..shape.player_count() {
        out.extend(
            (0..shape.strategy_count(axis))
                .filter(|&s| s != base.get(axis))
                .map(|s| base.with(axis, s)),
        );
    }
    out
}

fn on_star(base: &Profile, profile: &Profile) -> bool {
    profile.differing_axes(base).nth(1).is_none()
}

/// The unique game reachable from `source` that agrees with `seed`.
pub fn complete_from_seed(source: &Game, seed: &Seed) -> Result<Game> {
    let diff = complete_differences(source, seed)?;
    let n = source.player_count();
    let shape = source.shape();
    let mut payoffs = Vec::with_capacity(shape.outcome_count() * n);
    for (idx, profile) in shape.profiles().enumerate() {
        payoffs.extend(
            source
                .cell(idx)
                .iter()
                .zip(diff.at(&profile))
                .map(|(a, c)| a + c),
        );
    }
    let out = source.with_cells(payoffs);
    debug_assert!(crate::characterize::check_equivalence(source, &out)
        .map(|v| v.is_equivalent())
        .unwrap_or(false));
    Ok(out)
}

/// Validates `seed` against `source` and returns the full difference tensor
/// of the completion.
pub fn complete_differences(source: &Game, seed: &Seed) -> Result<DiffTensor> {
    let shape = source.shape();
    shape.require_transformable()?;
    shape.check_profile(&seed.base)?;
    let n = shape.player_count();

    for (profile, values) in &seed.assignments {
        shape.check_profile(profile)?;
        if !on_star(&seed.base, profile) {
            return Err(Error::OffStarSeed(profile.clone()));
        }
        if values.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: values.len(),
                at: Some(profile.clone()),
            });
        }
        let source_sum = sum(source.payoffs(profile));
        let seed_sum = sum(values);
        if source_sum != seed_sum {
            return Err(Error::SeedSumViolation {
                profile: profile.clone(),
                source_sum: source_sum.to_string(),
                seed_sum: seed_sum.to_string(),
            });
        }
    }

    let mut filled: Vec<Option<Vec<Scalar>>> = vec![None; shape.outcome_count()];
    for profile in star_profiles(shape, &seed.base) {
        let values = seed
            .assignments
            .get(&profile)
            .ok_or_else(|| Error::IncompleteSeed(profile.clone()))?;
        let diff = values
            .iter()
            .zip(source.payoffs(&profile))
            .map(|(t, s)| t - s)
            .collect();
        filled[shape.linear_index(&profile)] = Some(diff);
    }

    for profile in sweep_order(shape, &seed.base) {
        let idx = shape.linear_index(&profile);
        if filled[idx].is_some() {
            continue;
        }
        let mut axes = profile.differing_axes(&seed.base);
        let (k, p) = match (axes.next(), axes.next()) {
            (Some(k), Some(p)) => (k, p),
            _ => unreachable!("star profiles are already filled"),
        };
        let toward = |q: &Profile, axis: usize| {
            let b = seed.base.get(axis);
            let i = q.get(axis);
            q.with(axis, if i > b { i - 1 } else { i + 1 })
        };
        let along_k = toward(&profile, k);
        let along_p = toward(&profile, p);
        let corner = toward(&along_k, p);
        let get = |q: &Profile| {
            filled[shape.linear_index(q)]
                .as_ref()
                .expect("sweep order fills neighbours first")
        };
        let value = (0..n)
            .map(|j| &get(&along_k)[j] + &get(&along_p)[j] - &get(&corner)[j])
            .collect();
        filled[idx] = Some(value);
    }

    let values = filled
        .into_iter()
        .flat_map(|c| c.expect("every outcome filled"))
        .collect();
    Ok(DiffTensor::from_values(shape.clone(), values))
}

/// Row-major sweep over distances from the base: profile `x` is visited
/// after every profile that is no farther from the base on any axis.
fn sweep_order(shape: &GameShape, base: &Profile) -> Vec<Profile> {
    let mut order: Vec<Profile> = shape.profiles().collect();
    order.sort_by_cached_key(|p| {
        p.indices()
            .iter()
            .zip(base.indices())
            .map(|(&i, &b)| i.abs_diff(b))
            .collect::<Vec<_>>()
    });
    order
}
