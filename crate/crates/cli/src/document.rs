//! JSON game, seed and offer documents.
//!
//! A game document lists players, per-player strategy names, and payoffs as
//! nested arrays, one nesting level per player (player 1 outermost); the
//! innermost array holds one value per player. Values are integers, decimal
//! strings (`"0.5"`) or fractions (`"3/4"`); JSON numbers are accepted on
//! input and values are always written back as strings in lowest terms.
//!
//! ```json
//! {
//!   "version": 1,
//!   "players": ["I", "II"],
//!   "strategies": [
//!     ["C", "D"],
//!     ["C", "D"]
//!   ],
//!   "payoffs": [
//!     [["4", "4"], ["0", "5"]],
//!     [["5", "0"], ["1", "1"]]
//!   ]
//! }
//! ```
//!
//! Seed documents use the same layout with `null` for unspecified outcomes.

use std::fmt::{self, Write as _};

use offergame::complete::Seed;
use offergame::scalar::is_negative;
use offergame::{parse_scalar, Game, Offer, OfferSet, Profile, Scalar};
use serde_json::{Map, Value};

pub const VERSION: u64 = 1;

/// A malformed document, located by line/column or by element path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(path: &str, message: impl Into<String>) -> ParseError {
        ParseError {
            location: path.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

fn parse_json(bytes: &[u8]) -> Parsed<Map<String, Value>> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| {
        let location = format!("line {} column {}", e.line(), e.column());
        let text = e.to_string();
        let message = text
            .strip_suffix(&format!(" at {location}"))
            .unwrap_or(&text)
            .to_string();
        ParseError { location, message }
    })?;
    match value {
        Value::Object(map) => {
            check_version(&map)?;
            Ok(map)
        }
        _ => Err(ParseError::at("$", "expected a JSON object")),
    }
}

fn check_version(map: &Map<String, Value>) -> Parsed<()> {
    match map.get("version") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(VERSION) => Ok(()),
        Some(v) => Err(ParseError::at(
            "$.version",
            format!("unsupported version {v}, expected {VERSION}"),
        )),
    }
}

fn field<'a>(map: &'a Map<String, Value>, name: &str) -> Parsed<&'a Value> {
    map.get(name)
        .ok_or_else(|| ParseError::at("$", format!("missing field {name:?}")))
}

fn string_list(value: &Value, path: &str) -> Parsed<Vec<String>> {
    let items = value
        .as_array()
        .ok_or_else(|| ParseError::at(path, "expected an array of strings"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| ParseError::at(&format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn scalar(value: &Value, path: &str) -> Parsed<Scalar> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => {
            return Err(ParseError::at(
                path,
                "expected a number or a numeric string",
            ))
        }
    };
    parse_scalar(&text).map_err(|e| ParseError::at(path, e.to_string()))
}

struct Header {
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
}

fn header(map: &Map<String, Value>) -> Parsed<Header> {
    let players = string_list(field(map, "players")?, "$.players")?;
    let strategies_value = field(map, "strategies")?;
    let lists = strategies_value
        .as_array()
        .ok_or_else(|| ParseError::at("$.strategies", "expected an array"))?;
    let strategies = lists
        .iter()
        .enumerate()
        .map(|(k, v)| string_list(v, &format!("$.strategies[{k}]")))
        .collect::<Parsed<Vec<_>>>()?;
    if players.is_empty() {
        return Err(ParseError::at(
            "$.players",
            "at least one player is required",
        ));
    }
    if strategies.len() != players.len() {
        return Err(ParseError::at(
            "$.strategies",
            format!(
                "{} strategy lists for {} players",
                strategies.len(),
                players.len()
            ),
        ));
    }
    if let Some(k) = strategies.iter().position(Vec::is_empty) {
        return Err(ParseError::at(
            &format!("$.strategies[{k}]"),
            "no strategies",
        ));
    }
    Ok(Header {
        players,
        strategies,
    })
}

/// Walks the nested payoff arrays, calling `visit` on every innermost cell
/// in row-major order.
fn walk_cells<'a>(
    value: &'a Value,
    counts: &[usize],
    path: String,
    visit: &mut dyn FnMut(&'a Value, &str) -> Parsed<()>,
) -> Parsed<()> {
    let Some((&m, rest)) = counts.split_first() else {
        return visit(value, &path);
    };
    let items = value
        .as_array()
        .ok_or_else(|| ParseError::at(&path, format!("expected an array of {m} entries")))?;
    if items.len() != m {
        return Err(ParseError::at(
            &path,
            format!("expected {m} entries, found {}", items.len()),
        ));
    }
    for (i, item) in items.iter().enumerate() {
        walk_cells(item, rest, format!("{path}[{i}]"), visit)?;
    }
    Ok(())
}

fn payoff_cell(value: &Value, path: &str, n: usize) -> Parsed<Vec<Scalar>> {
    let items = value
        .as_array()
        .ok_or_else(|| ParseError::at(path, format!("expected {n} payoff values")))?;
    if items.len() != n {
        return Err(ParseError::at(
            path,
            format!("expected {n} payoff values, found {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, v)| scalar(v, &format!("{path}[{k}]")))
        .collect()
}

fn domain_error(e: offergame::Error) -> ParseError {
    ParseError::at("$", e.to_string())
}

/// Parses a game document.
pub fn parse_game(bytes: &[u8]) -> Parsed<Game> {
    let map = parse_json(bytes)?;
    let Header {
        players,
        strategies,
    } = header(&map)?;
    let counts: Vec<usize> = strategies.iter().map(Vec::len).collect();
    let n = players.len();
    let mut cells = Vec::new();
    walk_cells(
        field(&map, "payoffs")?,
        &counts,
        "$.payoffs".into(),
        &mut |v, path| {
            cells.push(payoff_cell(v, path, n)?);
            Ok(())
        },
    )?;
    Game::from_cells(players, strategies, cells).map_err(domain_error)
}

/// Parses a seed document for `game`: same names as the game, payoffs given
/// on the star through `base` and `null` elsewhere.
pub fn parse_seed(bytes: &[u8], game: &Game, base: Profile) -> Parsed<Seed> {
    let map = parse_json(bytes)?;
    let Header {
        players,
        strategies,
    } = header(&map)?;
    if players != game.players() || strategies != game.all_strategies() {
        return Err(ParseError::at(
            "$",
            "players and strategies must match the source game",
        ));
    }
    let shape = game.shape();
    let n = game.player_count();
    let mut assignments = Vec::new();
    let mut idx = 0;
    walk_cells(
        field(&map, "payoffs")?,
        shape.strategy_counts(),
        "$.payoffs".into(),
        &mut |v, path| {
            let profile = shape.profile_at(idx);
            idx += 1;
            if !v.is_null() {
                assignments.push((profile, payoff_cell(v, path, n)?));
            }
            Ok(())
        },
    )?;
    Ok(Seed::new(base, assignments))
}

/// Parses an offer document against `game`. With `strict`, negative amounts
/// are rejected.
pub fn parse_offers(bytes: &[u8], game: &Game, strict: bool) -> Parsed<OfferSet> {
    let map = parse_json(bytes)?;
    let items = field(&map, "offers")?
        .as_array()
        .ok_or_else(|| ParseError::at("$.offers", "expected an array"))?;
    let mut offers = OfferSet::empty();
    for (i, item) in items.iter().enumerate() {
        let path = format!("$.offers[{i}]");
        let obj = item
            .as_object()
            .ok_or_else(|| ParseError::at(&path, "expected an object"))?;
        let text = |name: &str| -> Parsed<&str> {
            obj.get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| ParseError::at(&path, format!("missing string field {name:?}")))
        };
        let amount_value = obj
            .get("amount")
            .ok_or_else(|| ParseError::at(&path, "missing field \"amount\""))?;
        let amount = scalar(amount_value, &format!("{path}.amount"))?;
        if strict && is_negative(&amount) {
            return Err(ParseError::at(
                &format!("{path}.amount"),
                format!("negative amount {amount} not allowed in strict mode"),
            ));
        }
        let offer = Offer::named(
            game,
            text("payer")?,
            text("payee")?,
            text("strategy")?,
            amount,
        )
        .map_err(|e| ParseError::at(&path, e.to_string()))?;
        offers.push(offer);
    }
    Ok(offers)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn string_array<S: AsRef<str>>(items: &[S]) -> String {
    let parts: Vec<String> = items.iter().map(|s| quote(s.as_ref())).collect();
    format!("[{}]", parts.join(", "))
}

/// Writes a game document. The output is a fixpoint of parse-then-write.
pub fn serialize_game(game: &Game) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": {VERSION},");
    let _ = writeln!(out, "  \"players\": {},", string_array(game.players()));
    out.push_str("  \"strategies\": [\n");
    let lists: Vec<String> = game
        .all_strategies()
        .iter()
        .map(|s| format!("    {}", string_array(s)))
        .collect();
    out.push_str(&lists.join(",\n"));
    out.push_str("\n  ],\n");
    out.push_str("  \"payoffs\": ");
    let cells: Vec<String> = game
        .cells()
        .map(|c| string_array(&c.iter().map(ToString::to_string).collect::<Vec<_>>()))
        .collect();
    write_nested(&mut out, &cells, game.shape().strategy_counts(), 1);
    out.push_str("\n}\n");
    out
}

fn write_nested(out: &mut String, cells: &[String], counts: &[usize], depth: usize) {
    let (&m, rest) = counts.split_first().expect("at least one axis");
    if rest.is_empty() {
        out.push('[');
        out.push_str(&cells.join(", "));
        out.push(']');
        return;
    }
    let stride = cells.len() / m;
    let pad = "  ".repeat(depth + 1);
    out.push_str("[\n");
    for (i, chunk) in cells.chunks(stride).enumerate() {
        out.push_str(&pad);
        write_nested(out, chunk, rest, depth + 1);
        if i + 1 < m {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str(&"  ".repeat(depth));
    out.push(']');
}

/// Writes an offer document using `game`'s names.
pub fn serialize_offers(offers: &OfferSet, game: &Game) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": {VERSION},");
    if offers.is_empty() {
        out.push_str("  \"offers\": []\n}\n");
        return out;
    }
    out.push_str("  \"offers\": [\n");
    let lines: Vec<String> = offers
        .iter()
        .map(|o| {
            format!(
                "    {{\"payer\": {}, \"payee\": {}, \"strategy\": {}, \"amount\": {}}}",
                quote(&game.players()[o.payer]),
                quote(&game.players()[o.payee]),
                quote(&game.strategies(o.payee)[o.strategy]),
                quote(&o.amount.to_string())
            )
        })
        .collect();
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}
