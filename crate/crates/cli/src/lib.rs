//! File-based front end for `offergame`: JSON game and offer documents,
//! text rendering, and the `offergame` command.

pub mod app;
pub mod document;
pub mod render;

pub use app::{run, EXIT_DOMAIN, EXIT_INPUT, EXIT_OK};
pub use document::{
    parse_game, parse_offers, parse_seed, serialize_game, serialize_offers, ParseError,
};
