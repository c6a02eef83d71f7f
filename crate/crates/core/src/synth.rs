//! Constructing offer sets.
//!
//! [`synthesize_offers`] finds offers that turn a source game into a
//! reachable target. The unknowns are net offers `e(payer, payee, a)`, one
//! per ordered pair of distinct players and strategy `a` of the payee, and
//! each player's payoff change at every outcome gives one equation:
//!
//! ```text
//! c^j(x) = sum_{k != j} e(k, j, x_j) - sum_{k != j} e(j, k, x_k)
//! ```
//!
//! The system is underdetermined; it is solved exactly and every free
//! unknown is pinned to zero. Unknowns are ordered by payee, then payer,
//! then strategy, so for two players the column order is
//! `B->A on A_1..A_n, A->B on B_1..B_m` and the single free parameter is the
//! offer `A->B on B_m`.

use num_traits::{Signed, Zero};

use crate::characterize::{check_equivalence, diff_tensor};
use crate::error::{Error, Result};
use crate::game::{Game, GameShape, Profile};
use crate::linsolve::LinearSystem;
use crate::offers::{apply_offer_set, invert_offer, Offer, OfferSet};
use crate::scalar::{max_of, Scalar};

/// One unknown of the synthesis system: a net offer slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OfferVariable {
    pub payer: usize,
    pub payee: usize,
    pub strategy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    /// Canonical offers; amounts may be negative.
    pub offers: OfferSet,
    /// Free parameters of the system, all fixed to zero.
    pub pinned: Vec<OfferVariable>,
}

/// Offer slots of a shape in column order (payee, payer, strategy).
pub fn offer_variables(shape: &GameShape) -> Vec<OfferVariable> {
    let n = shape.player_count();
    let mut vars = Vec::new();
    for payee in 0..n {
        for payer in (0..n).filter(|&p| p != payee) {
            for strategy in 0..shape.strategy_count(payee) {
                vars.push(OfferVariable {
                    payer,
                    payee,
                    strategy,
                });
            }
        }
    }
    vars
}

struct VariableIndex {
    n: usize,
    // offset of the block for each payee
    payee_offset: Vec<usize>,
    counts: Vec<usize>,
}

impl VariableIndex {
    fn new(shape: &GameShape) -> VariableIndex {
        let n = shape.player_count();
        let counts = shape.strategy_counts().to_vec();
        let mut payee_offset = Vec::with_capacity(n);
        let mut acc = 0;
        for &m in &counts {
            payee_offset.push(acc);
            acc += (n - 1) * m;
        }
        VariableIndex {
            n,
            payee_offset,
            counts,
        }
    }

    fn of(&self, payer: usize, payee: usize, strategy: usize) -> usize {
        debug_assert!(payer != payee && payer < self.n);
        let payer_slot = if payer < payee { payer } else { payer - 1 };
        self.payee_offset[payee] + payer_slot * self.counts[payee] + strategy
    }
}

/// Coefficients of player `j`'s payoff change at `profile`.
fn equation_terms(index: &VariableIndex, player: usize, profile: &Profile) -> Vec<(usize, Scalar)> {
    let one = Scalar::from_integer(1.into());
    let mut terms = Vec::with_capacity(2 * (index.n - 1));
    for other in (0..index.n).filter(|&k| k != player) {
        terms.push((index.of(other, player, profile.get(player)), one.clone()));
        terms.push((index.of(player, other, profile.get(other)), -one.clone()));
    }
    terms
}

/// Offers realizing `target` from `source`.
///
/// Fails with [`Error::NotEquivalent`] when the target is unreachable.
pub fn synthesize_offers(source: &Game, target: &Game) -> Result<SynthesisResult> {
    let verdict = check_equivalence(source, target)?;
    if !verdict.is_equivalent() {
        return Err(Error::NotEquivalent(Box::new(verdict)));
    }
    let shape = source.shape();
    let diff = diff_tensor(source, target)?;
    let vars = offer_variables(shape);
    let index = VariableIndex::new(shape);

    // Reachable differences are additively separable along the axes, and so
    // is every equation row, so the equations on the coordinate star through
    // (1,..,1) span the same row space as the full system.
    let base = Profile::new(vec![0; shape.player_count()]);
    let mut star = vec![base.clone()];
    for axis in 0..shape.player_count() {
        star.extend((1..shape.strategy_count(axis)).map(|s| base.with(axis, s)));
    }
    let mut system = LinearSystem::new(vars.len());
    for player in 0..shape.player_count() {
        for profile in &star {
            system.push(
                equation_terms(&index, player, profile),
                diff.get(profile, player).clone(),
            );
        }
    }
    let solution = system
        .solve()
        .map_err(|_| Error::NotEquivalent(Box::new(verdict.clone())))?;

    let offers = vars
        .iter()
        .zip(solution.values)
        .map(|(v, amount)| Offer::new(v.payer, v.payee, v.strategy, amount))
        .collect::<OfferSet>()
        .canonicalize();
    let pinned = solution.free.iter().map(|&i| vars[i]).collect();

    debug_assert_eq!(&apply_offer_set(source, &offers)?, target);
    Ok(SynthesisResult { offers, pinned })
}

/// Rewrites every negative offer as nonnegative ones with the same effect.
///
/// An offer of `-d` from A to B on `B_j` equals the cancellation of a `+d`
/// offer: A pays `d` on each other strategy of B, and B pays `d` back on
/// every strategy of A.
pub fn nonnegative_decomposition(offers: &OfferSet, shape: &GameShape) -> Result<OfferSet> {
    shape.require_transformable()?;
    offers.validate(shape)?;
    let mut out = Vec::new();
    for offer in offers.canonicalize() {
        if offer.amount.is_negative() {
            let positive = Offer::new(offer.payer, offer.payee, offer.strategy, -offer.amount);
            out.extend(invert_offer(&positive, shape)?);
        } else {
            out.push(offer);
        }
    }
    Ok(OfferSet::new(out).canonicalize())
}

/// Nonnegative offers after which every player's strategy in `profile`
/// strictly dominates each of their alternatives by at least `margin`.
///
/// Player `k` is paid by player `k + 1` (cyclically), contingent on playing
/// `profile[k]`, the amount `max(0, worst gap + margin)` where the worst gap
/// is the largest advantage any alternative has over the designated strategy
/// against any opposing choice. A player's own offers never change their own
/// ranking of strategies, so these incoming payments alone fix incentives.
pub fn make_profile_dominant(game: &Game, profile: &Profile, margin: &Scalar) -> Result<OfferSet> {
    let shape = game.shape();
    shape.require_transformable()?;
    shape.check_profile(profile)?;
    if !margin.is_positive() {
        return Err(Error::NonpositiveMargin(margin.to_string()));
    }
    let n = shape.player_count();
    let mut offers = OfferSet::empty();
    for player in 0..n {
        let designated = profile.get(player);
        let mut worst: Option<Scalar> = None;
        for at in shape.profiles().filter(|p| p.get(player) == designated) {
            let own = game.payoff(&at, player);
            for alt in (0..shape.strategy_count(player)).filter(|&s| s != designated) {
                let gap = game.payoff(&at.with(player, alt), player) - own;
                worst = Some(match worst {
                    Some(w) => max_of(w, &gap),
                    None => gap,
                });
            }
        }
        let Some(worst) = worst else { continue };
        let amount = max_of(worst + margin, &Scalar::zero());
        if !amount.is_zero() {
            offers.push(Offer::new((player + 1) % n, player, designated, amount));
        }
    }
    Ok(offers.canonicalize())
}
