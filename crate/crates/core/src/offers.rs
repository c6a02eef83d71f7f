//! Preplay offers and the payoff transformations they induce.
//!
//! An offer moves `amount` from the payer to the payee in every outcome where
//! the payee plays the named strategy. Offer sets act on games of a fixed
//! shape and form a commutative group under composition: the empty set is
//! the identity and every set has an inverse built from offers alone.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{Game, GameShape};
use crate::scalar::Scalar;

/// A binding promise: `payer` pays `amount` to `payee` if the payee plays
/// `strategy`. Players and strategies are 0-based indices into the game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offer {
    pub payer: usize,
    pub payee: usize,
    pub strategy: usize,
    pub amount: Scalar,
}

impl Offer {
    pub fn new(payer: usize, payee: usize, strategy: usize, amount: Scalar) -> Offer {
        Offer {
            payer,
            payee,
            strategy,
            amount,
        }
    }

    /// Resolves player and strategy names against `game`.
    pub fn named(
        game: &Game,
        payer: &str,
        payee: &str,
        strategy: &str,
        amount: Scalar,
    ) -> Result<Offer> {
        let payer_idx = game.player_index(payer)?;
        let payee_idx = game.player_index(payee)?;
        if payer_idx == payee_idx {
            return Err(Error::SelfOffer(payer.to_string()));
        }
        let strategy = game.strategy_index(payee_idx, strategy)?;
        Ok(Offer::new(payer_idx, payee_idx, strategy, amount))
    }

    pub fn validate(&self, shape: &GameShape) -> Result<()> {
        let n = shape.player_count();
        for p in [self.payer, self.payee] {
            if p >= n {
                return Err(Error::UnknownPlayer(format!("#{}", p + 1)));
            }
        }
        if self.payer == self.payee {
            return Err(Error::SelfOffer(format!("#{}", self.payer + 1)));
        }
        if self.strategy >= shape.strategy_count(self.payee) {
            return Err(Error::UnknownStrategy {
                player: format!("#{}", self.payee + 1),
                strategy: format!("#{}", self.strategy + 1),
            });
        }
        Ok(())
    }

    fn key(&self) -> (usize, usize, usize) {
        (self.payer, self.payee, self.strategy)
    }

    /// Renders with the game's names, e.g. `I -2/C-> II`.
    pub fn describe(&self, game: &Game) -> String {
        format!(
            "{} -{}/{}-> {}",
            game.players()[self.payer],
            self.amount,
            game.strategies(self.payee)[self.strategy],
            game.players()[self.payee]
        )
    }
}

impl fmt::Display for Offer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P{} -{}/s{}-> P{}",
            self.payer + 1,
            self.amount,
            self.strategy + 1,
            self.payee + 1
        )
    }
}

/// A multiset of offers.
///
/// Equality is syntactic, so compare canonical forms when asking whether
/// two sets induce the same transformation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OfferSet {
    offers: Vec<Offer>,
}

impl OfferSet {
    pub fn new(offers: Vec<Offer>) -> OfferSet {
        OfferSet { offers }
    }

    /// The identity transformation.
    pub fn empty() -> OfferSet {
        OfferSet::default()
    }

    pub fn offers(&self) -> &[Offer] {
        &self.offers
    }

    pub fn into_offers(self) -> Vec<Offer> {
        self.offers
    }

    pub fn len(&self) -> usize {
        self.offers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offers.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Offer> {
        self.offers.iter()
    }

    pub fn push(&mut self, offer: Offer) {
        self.offers.push(offer);
    }

    pub fn validate(&self, shape: &GameShape) -> Result<()> {
        self.offers.iter().try_for_each(|o| o.validate(shape))
    }

    /// One net offer per (payer, payee, strategy), zero amounts dropped,
    /// sorted by payer, payee, then strategy.
    pub fn canonicalize(&self) -> OfferSet {
        let mut net: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for offer in &self.offers {
            *net.entry(offer.key()).or_insert_with(Scalar::zero) += &offer.amount;
        }
        net.into_iter()
            .filter(|(_, amount)| !amount.is_zero())
            .map(|((payer, payee, strategy), amount)| Offer::new(payer, payee, strategy, amount))
            .collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.offers.windows(2).all(|w| w[0].key() < w[1].key())
            && self.offers.iter().all(|o| !o.amount.is_zero())
    }

    /// Composition: the canonical form of the union.
    pub fn compose(&self, other: &OfferSet) -> OfferSet {
        self.offers
            .iter()
            .chain(other.offers.iter())
            .cloned()
            .collect::<OfferSet>()
            .canonicalize()
    }

    /// Every amount is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.offers
            .iter()
            .all(|o| !crate::scalar::is_negative(&o.amount))
    }
}

impl FromIterator<Offer> for OfferSet {
    fn from_iter<I: IntoIterator<Item = Offer>>(iter: I) -> Self {
        OfferSet::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a OfferSet {
    type Item = &'a Offer;
    type IntoIter = std::slice::Iter<'a, Offer>;

    fn into_iter(self) -> Self::IntoIter {
        self.offers.iter()
    }
}

impl IntoIterator for OfferSet {
    type Item = Offer;
    type IntoIter = std::vec::IntoIter<Offer>;

    fn into_iter(self) -> Self::IntoIter {
        self.offers.into_iter()
    }
}

/// Applies a single offer: in every outcome where the payee plays the
/// offer's strategy, `amount` moves from payer to payee.
pub fn apply_offer(game: &Game, offer: &Offer) -> Result<Game> {
    game.shape().require_transformable()?;
    offer.validate(game.shape())?;
    let mut out = game.clone();
    transfer(&mut out, offer);
    Ok(out)
}

/// Applies every offer of the set. The result does not depend on order.
pub fn apply_offer_set(game: &Game, offers: &OfferSet) -> Result<Game> {
    game.shape().require_transformable()?;
    offers.validate(game.shape())?;
    let mut out = game.clone();
    for offer in offers.canonicalize().iter() {
        transfer(&mut out, offer);
    }
    Ok(out)
}

fn transfer(game: &mut Game, offer: &Offer) {
    let shape = game.shape().clone();
    for (idx, profile) in shape.profiles().enumerate() {
        if profile.get(offer.payee) == offer.strategy {
            *game.payoff_mut(idx, offer.payer) -= &offer.amount;
            *game.payoff_mut(idx, offer.payee) += &offer.amount;
        }
    }
}

/// Offers that cancel `offer` using only the offer's own sign: the payer
/// pays the same amount on every other strategy of the payee, and the payee
/// refunds it on every strategy of the payer.
pub fn invert_offer(offer: &Offer, shape: &GameShape) -> Result<OfferSet> {
    shape.require_transformable()?;
    offer.validate(shape)?;
    let rewards = (0..shape.strategy_count(offer.payee))
        .filter(|&s| s != offer.strategy)
        .map(|s| Offer::new(offer.payer, offer.payee, s, offer.amount.clone()));
    let refunds = (0..shape.strategy_count(offer.payer))
        .map(|s| Offer::new(offer.payee, offer.payer, s, offer.amount.clone()));
    Ok(rewards.chain(refunds).collect::<OfferSet>().canonicalize())
}

/// Canonical union of the member inverses.
pub fn invert_offer_set(offers: &OfferSet, shape: &GameShape) -> Result<OfferSet> {
    let mut out = Vec::new();
    for offer in offers.canonicalize().iter() {
        out.extend(invert_offer(offer, shape)?);
    }
    Ok(OfferSet::new(out).canonicalize())
}
