//! Dense payoff tensors for N-person normal-form games.
//!
//! Outcomes are stored in row-major profile order: player 1's strategy is the
//! outermost coordinate, player N's the innermost. Strategy indices are
//! 0-based in code and rendered 1-based in messages.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Player count and per-player strategy counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameShape {
    strategy_counts: Vec<usize>,
}

impl GameShape {
    pub fn new(strategy_counts: Vec<usize>) -> Result<Self> {
        if strategy_counts.is_empty() || strategy_counts.contains(&0) {
            return Err(Error::EmptyShape);
        }
        Ok(GameShape { strategy_counts })
    }

    pub fn player_count(&self) -> usize {
        self.strategy_counts.len()
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.strategy_counts[player]
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    /// Number of outcomes, `m_1 * ... * m_N`.
    pub fn outcome_count(&self) -> usize {
        self.strategy_counts.iter().product()
    }

    /// Fails unless the shape admits transformations (two or more players).
    pub fn require_transformable(&self) -> Result<()> {
        if self.player_count() < 2 {
            return Err(Error::TooFewPlayers(self.player_count()));
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.len() != self.player_count() {
            return Err(Error::ArityMismatch {
                expected: self.player_count(),
                found: profile.len(),
                at: None,
            });
        }
        for (player, (&index, &bound)) in profile.0.iter().zip(&self.strategy_counts).enumerate() {
            if index >= bound {
                return Err(Error::IndexOutOfRange {
                    player: player + 1,
                    index: index + 1,
                    bound,
                });
            }
        }
        Ok(())
    }

    /// Row-major position of `profile`. The profile must be valid.
    pub fn linear_index(&self, profile: &Profile) -> usize {
        profile
            .0
            .iter()
            .zip(&self.strategy_counts)
            .fold(0, |acc, (&i, &m)| acc * m + i)
    }

    pub fn profile_at(&self, mut index: usize) -> Profile {
        let mut coords = vec![0; self.player_count()];
        for (slot, &m) in coords.iter_mut().zip(&self.strategy_counts).rev() {
            *slot = index % m;
            index /= m;
        }
        Profile(coords)
    }

    /// All profiles in row-major order.
    pub fn profiles(&self) -> Profiles<'_> {
        Profiles {
            shape: self,
            next: Some(Profile(vec![0; self.player_count()])),
        }
    }

    /// Profiles that agree with `fixed` everywhere except at `player`.
    pub fn deviations<'a>(
        &'a self,
        fixed: &'a Profile,
        player: usize,
    ) -> impl Iterator<Item = Profile> + 'a {
        (0..self.strategy_count(player)).map(move |s| fixed.with(player, s))
    }
}

/// Iterator over all profiles of a shape in row-major order.
pub struct Profiles<'a> {
    shape: &'a GameShape,
    next: Option<Profile>,
}

impl Iterator for Profiles<'_> {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for axis in (0..succ.len()).rev() {
            succ.0[axis] += 1;
            if succ.0[axis] < self.shape.strategy_counts[axis] {
                self.next = Some(succ);
                break;
            }
            succ.0[axis] = 0;
        }
        Some(current)
    }
}

/// One strategy index per player (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    pub fn new(indices: Vec<usize>) -> Self {
        Profile(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Copy of this profile with `player` switched to `strategy`.
    pub fn with(&self, player: usize, strategy: usize) -> Profile {
        let mut out = self.clone();
        out.0[player] = strategy;
        out
    }

    /// Axes on which the two profiles differ.
    pub fn differing_axes<'a>(&'a self, other: &'a Profile) -> impl Iterator<Item = usize> + 'a {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(k, _)| k)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str(")")
    }
}

/// A validated N-person normal-form game with exact payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
    shape: GameShape,
    // outcome_count * player_count values; outcome-major
    payoffs: Vec<Scalar>,
}

impl Game {
    /// Builds a game from explicit `(profile, payoff vector)` entries, which
    /// must cover every outcome exactly once.
    pub fn new<I>(players: Vec<String>, strategies: Vec<Vec<String>>, entries: I) -> Result<Game>
    where
        I: IntoIterator<Item = (Profile, Vec<Scalar>)>,
    {
        let shape = validate_names(&players, &strategies)?;
        let n = shape.player_count();
        let mut cells: Vec<Option<Vec<Scalar>>> = vec![None; shape.outcome_count()];
        for (profile, values) in entries {
            shape.check_profile(&profile)?;
            if values.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: values.len(),
                    at: Some(profile),
                });
            }
            let slot = &mut cells[shape.linear_index(&profile)];
            if slot.is_some() {
                return Err(Error::DuplicateOutcome(profile));
            }
            *slot = Some(values);
        }
        let mut payoffs = Vec::with_capacity(cells.len() * n);
        for (idx, cell) in cells.into_iter().enumerate() {
            match cell {
                Some(values) => payoffs.extend(values),
                None => return Err(Error::MissingOutcome(shape.profile_at(idx))),
            }
        }
        Ok(Game {
            players,
            strategies,
            shape,
            payoffs,
        })
    }

    /// Builds a game from payoff vectors listed in row-major profile order.
    pub fn from_cells(
        players: Vec<String>,
        strategies: Vec<Vec<String>>,
        cells: Vec<Vec<Scalar>>,
    ) -> Result<Game> {
        let shape = validate_names(&players, &strategies)?;
        if cells.len() != shape.outcome_count() {
            return Err(Error::ArityMismatch {
                expected: shape.outcome_count(),
                found: cells.len(),
                at: None,
            });
        }
        let entries: Vec<_> = shape.profiles().zip(cells).collect();
        Game::new(players, strategies, entries)
    }

    /// Game with generated names: players `P1..PN`, strategies `s1..sm`.
    pub fn with_default_names(shape: &GameShape, cells: Vec<Vec<Scalar>>) -> Result<Game> {
        let players = (1..=shape.player_count())
            .map(|k| format!("P{k}"))
            .collect();
        let strategies = shape
            .strategy_counts()
            .iter()
            .map(|&m| (1..=m).map(|s| format!("s{s}")).collect())
            .collect();
        Game::from_cells(players, strategies, cells)
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn player_count(&self) -> usize {
        self.shape.player_count()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn strategies(&self, player: usize) -> &[String] {
        &self.strategies[player]
    }

    pub fn all_strategies(&self) -> &[Vec<String>] {
        &self.strategies
    }

    pub fn player_index(&self, name: &str) -> Result<usize> {
        self.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPlayer(name.to_string()))
    }

    pub fn strategy_index(&self, player: usize, name: &str) -> Result<usize> {
        self.strategies[player]
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownStrategy {
                player: self.players[player].clone(),
                strategy: name.to_string(),
            })
    }

    /// Resolves strategy names given in player order.
    pub fn profile_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Profile> {
        if names.len() != self.player_count() {
            return Err(Error::ArityMismatch {
                expected: self.player_count(),
                found: names.len(),
                at: None,
            });
        }
        names
            .iter()
            .enumerate()
            .map(|(k, s)| self.strategy_index(k, s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }

    /// Strategy names of a profile, e.g. `(C,D)`.
    pub fn profile_label(&self, profile: &Profile) -> String {
        let names: Vec<&str> = profile
            .0
            .iter()
            .enumerate()
            .map(|(k, &s)| self.strategies[k][s].as_str())
            .collect();
        format!("({})", names.join(","))
    }

    /// Payoff vector at a profile. Panics on an invalid profile.
    pub fn payoffs(&self, profile: &Profile) -> &[Scalar] {
        self.cell(self.shape.linear_index(profile))
    }

    pub fn payoff(&self, profile: &Profile, player: usize) -> &Scalar {
        &self.payoffs(profile)[player]
    }

    /// Payoff vector of the outcome at row-major position `index`.
    pub fn cell(&self, index: usize) -> &[Scalar] {
        let n = self.player_count();
        &self.payoffs[index * n..(index + 1) * n]
    }

    pub fn cells(&self) -> impl Iterator<Item = &[Scalar]> {
        self.payoffs.chunks(self.player_count())
    }

    /// Checked lookup.
    pub fn try_payoffs(&self, profile: &Profile) -> Result<&[Scalar]> {
        self.shape.check_profile(profile)?;
        Ok(self.payoffs(profile))
    }

    /// Exact sum of all players' payoffs at an outcome.
    pub fn payoff_sum(&self, profile: &Profile) -> Result<Scalar> {
        Ok(sum(self.try_payoffs(profile)?))
    }

    pub(crate) fn payoff_mut(&mut self, index: usize, player: usize) -> &mut Scalar {
        let n = self.player_count();
        &mut self.payoffs[index * n + player]
    }

    /// Same names and shape, new payoffs in row-major order.
    pub(crate) fn with_cells(&self, payoffs: Vec<Scalar>) -> Game {
        debug_assert_eq!(payoffs.len(), self.payoffs.len());
        Game {
            players: self.players.clone(),
            strategies: self.strategies.clone(),
            shape: self.shape.clone(),
            payoffs,
        }
    }

    /// Fails unless `other` has the same shape and the same player and
    /// strategy names.
    pub fn check_compatible(&self, other: &Game) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.strategy_counts.clone(),
                right: other.shape.strategy_counts.clone(),
            });
        }
        if self.players != other.players {
            return Err(Error::NameMismatch(format!(
                "players {:?} vs {:?}",
                self.players, other.players
            )));
        }
        for (k, (a, b)) in self.strategies.iter().zip(&other.strategies).enumerate() {
            if a != b {
                return Err(Error::NameMismatch(format!(
                    "strategies of {} {:?} vs {:?}",
                    self.players[k], a, b
                )));
            }
        }
        Ok(())
    }
}

/// Exact sum of a payoff vector.
pub fn sum(values: &[Scalar]) -> Scalar {
    values.iter().fold(Scalar::zero(), |acc, v| acc + v)
}

fn validate_names(players: &[String], strategies: &[Vec<String>]) -> Result<GameShape> {
    if players.len() != strategies.len() {
        return Err(Error::ArityMismatch {
            expected: players.len(),
            found: strategies.len(),
            at: None,
        });
    }
    check_unique("player", players.iter())?;
    for (k, names) in strategies.iter().enumerate() {
        check_unique(&format!("strategy of {}", players[k]), names.iter())?;
    }
    GameShape::new(strategies.iter().map(Vec::len).collect())
}

fn check_unique<'a>(scope: &str, names: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name) {
            return Err(Error::DuplicateName {
                scope: scope.to_string(),
                name: name.clone(),
            });
        }
    }
    Ok(())
}
