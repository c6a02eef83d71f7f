//! Plain-text rendering of games, offers and analysis reports.

use std::fmt::Write as _;

use offergame::{AnalysisReport, Game, OfferSet, Profile};
use serde_json::{json, Value};

/// Renders a game as one table per slice. Rows are player 1's strategies,
/// columns player 2's; with more players there is one table per combination
/// of the remaining players' strategies.
pub fn render_game(game: &Game) -> String {
    let shape = game.shape();
    let counts = shape.strategy_counts();
    if counts.len() == 1 {
        let mut out = String::new();
        for (s, name) in game.strategies(0).iter().enumerate() {
            let _ = writeln!(out, "{name}: {}", cell_text(game, &Profile::new(vec![s])));
        }
        return out;
    }
    let outer: Vec<usize> = counts[2..].to_vec();
    let slices = outer.iter().product::<usize>();
    let mut out = String::new();
    for slice in 0..slices {
        let mut rest = Vec::with_capacity(outer.len());
        let mut idx = slice;
        for &m in outer.iter().rev() {
            rest.push(idx % m);
            idx /= m;
        }
        rest.reverse();
        if !rest.is_empty() {
            let label: Vec<String> = rest
                .iter()
                .enumerate()
                .map(|(k, &s)| format!("{} = {}", game.players()[k + 2], game.strategies(k + 2)[s]))
                .collect();
            if slice > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", label.join(", "));
        }
        out.push_str(&render_table(game, &rest));
    }
    out
}

fn cell_text(game: &Game, profile: &Profile) -> String {
    let parts: Vec<String> = game
        .payoffs(profile)
        .iter()
        .map(ToString::to_string)
        .collect();
    parts.join(",")
}

fn render_table(game: &Game, rest: &[usize]) -> String {
    let players = game.players();
    let corner = format!("{} \\ {}", players[0], players[1]);
    let mut header = vec![corner];
    header.extend(game.strategies(1).iter().cloned());
    let mut rows = vec![header];
    for (i, row_name) in game.strategies(0).iter().enumerate() {
        let mut row = vec![row_name.clone()];
        for j in 0..game.strategies(1).len() {
            let mut idx = vec![i, j];
            idx.extend_from_slice(rest);
            row.push(cell_text(game, &Profile::new(idx)));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(text, &w)| format!("{text:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
        if r == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            let _ = writeln!(out, "{}", rule.join("-+-"));
        }
    }
    out
}

pub fn render_offers(offers: &OfferSet, game: &Game) -> String {
    if offers.is_empty() {
        return "(no offers)\n".to_string();
    }
    offers
        .iter()
        .map(|o| format!("{}\n", o.describe(game)))
        .collect()
}

fn profile_list(game: &Game, profiles: &[Profile]) -> String {
    if profiles.is_empty() {
        return "none".to_string();
    }
    let labels: Vec<String> = profiles.iter().map(|p| game.profile_label(p)).collect();
    labels.join(" ")
}

pub fn render_report(game: &Game, report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "pure Nash equilibria: {}",
        profile_list(game, &report.pure_nash)
    );
    out.push_str("dominance:\n");
    for (player, pairs) in report.dominance.iter().enumerate() {
        let name = &game.players()[player];
        if pairs.is_empty() {
            let _ = writeln!(out, "  {name}: none");
        }
        for pair in pairs {
            let names = game.strategies(player);
            let _ = writeln!(
                out,
                "  {name}: {} {}ly dominates {}",
                names[pair.dominant], pair.kind, names[pair.dominated]
            );
        }
    }
    match &report.constant_sum {
        Some(total) => {
            let _ = writeln!(out, "constant sum: {total}");
        }
        None => out.push_str("constant sum: no\n"),
    }
    let _ = writeln!(
        out,
        "Pareto optimal: {}",
        profile_list(game, &report.pareto_optimal)
    );
    let dominant = report
        .strictly_dominant_profile
        .as_ref()
        .map_or_else(|| "none".to_string(), |p| game.profile_label(p));
    let _ = writeln!(out, "strictly dominant profile: {dominant}");
    out
}

fn profile_names(game: &Game, profile: &Profile) -> Value {
    profile
        .indices()
        .iter()
        .enumerate()
        .map(|(k, &s)| Value::from(game.strategies(k)[s].clone()))
        .collect()
}

pub fn report_json(game: &Game, report: &AnalysisReport) -> Value {
    let profiles =
        |ps: &[Profile]| -> Value { ps.iter().map(|p| profile_names(game, p)).collect() };
    let dominance: Vec<Value> = report
        .dominance
        .iter()
        .enumerate()
        .map(|(player, pairs)| {
            let names = game.strategies(player);
            let pairs: Vec<Value> = pairs
                .iter()
                .map(|pair| {
                    json!({
                        "dominant": names[pair.dominant],
                        "dominated": names[pair.dominated],
                        "kind": pair.kind.to_string(),
                    })
                })
                .collect();
            json!({ "player": game.players()[player], "pairs": pairs })
        })
        .collect();
    json!({
        "pure_nash": profiles(&report.pure_nash),
        "dominance": dominance,
        "constant_sum": report.constant_sum.as_ref().map(ToString::to_string),
        "pareto_optimal": profiles(&report.pareto_optimal),
        "strictly_dominant_profile": report
            .strictly_dominant_profile
            .as_ref()
            .map(|p| profile_names(game, p)),
    })
}
