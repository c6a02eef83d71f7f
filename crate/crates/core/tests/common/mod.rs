#![allow(dead_code)]

use offergame::scalar::{int, ratio};
use offergame::{Game, GameShape, Offer, OfferSet, Profile, Scalar};
use proptest::prelude::*;

pub fn arb_shape(max_players: usize, max_strategies: usize) -> impl Strategy<Value = GameShape> {
    prop::collection::vec(1..=max_strategies, 2..=max_players)
        .prop_map(|counts| GameShape::new(counts).unwrap())
}

/// Shapes where every player has at least two strategies.
pub fn arb_full_shape(
    max_players: usize,
    max_strategies: usize,
) -> impl Strategy<Value = GameShape> {
    prop::collection::vec(2..=max_strategies, 2..=max_players)
        .prop_map(|counts| GameShape::new(counts).unwrap())
}

pub fn arb_game_of(shape: GameShape) -> impl Strategy<Value = Game> {
    let n = shape.player_count();
    prop::collection::vec(prop::collection::vec(-9i64..=9, n), shape.outcome_count()).prop_map(
        move |cells| {
            let cells = cells
                .into_iter()
                .map(|c| c.into_iter().map(int).collect())
                .collect();
            Game::with_default_names(&shape, cells).unwrap()
        },
    )
}

pub fn arb_amount() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => (-6i64..=6).prop_map(int),
        1 => ((-12i64..=12), (1i64..=4)).prop_map(|(n, d)| ratio(n, d)),
    ]
}

pub fn arb_offer(shape: &GameShape) -> impl Strategy<Value = Offer> {
    let n = shape.player_count();
    let counts = shape.strategy_counts().to_vec();
    (0..n, 1..n)
        .prop_flat_map(move |(payer, shift)| {
            let payee = (payer + shift) % n;
            (Just(payer), Just(payee), 0..counts[payee], arb_amount())
        })
        .prop_map(|(payer, payee, s, amount)| Offer::new(payer, payee, s, amount))
}

pub fn arb_offer_set(shape: &GameShape, max: usize) -> impl Strategy<Value = OfferSet> {
    prop::collection::vec(arb_offer(shape), 0..=max).prop_map(OfferSet::new)
}

/// A shape together with a game and an offer set on it.
pub fn arb_game_and_offers(
    max_players: usize,
    max_strategies: usize,
) -> impl Strategy<Value = (Game, OfferSet)> {
    arb_shape(max_players, max_strategies)
        .prop_flat_map(|shape| (arb_game_of(shape.clone()), arb_offer_set(&shape, 8)))
}

pub fn p(indices: &[usize]) -> Profile {
    Profile::new(indices.to_vec())
}
