//! Small reference games used by the demo, the benches and the tests.

use crate::complete::Seed;
use crate::game::{Game, GameShape, Profile};
use crate::scalar::{int, Scalar};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn cell(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| int(v)).collect()
}

/// Two-player game with players `A`, `B` and strategies `A1..An`, `B1..Bm`.
pub fn bimatrix(rows: &[&[(i64, i64)]]) -> Game {
    let n = rows.len();
    let m = rows[0].len();
    named_bimatrix(
        ["A", "B"],
        [
            &(1..=n).map(|i| format!("A{i}")).collect::<Vec<_>>(),
            &(1..=m).map(|j| format!("B{j}")).collect::<Vec<_>>(),
        ],
        rows,
    )
}

pub fn named_bimatrix<S: AsRef<str>>(
    players: [&str; 2],
    strategies: [&[S]; 2],
    rows: &[&[(i64, i64)]],
) -> Game {
    let strategies = strategies
        .iter()
        .map(|list| list.iter().map(|s| s.as_ref().to_string()).collect())
        .collect();
    let cells = rows
        .iter()
        .flat_map(|row| row.iter().map(|&(a, b)| cell(&[a, b])))
        .collect();
    Game::from_cells(names(&players), strategies, cells).expect("well-formed bimatrix")
}

/// A bimatrix with the Prisoners' Dilemma names: players `I`, `II`, each
/// choosing `C` or `D`.
pub fn pd_game(rows: &[&[(i64, i64)]]) -> Game {
    named_bimatrix(["I", "II"], [&["C", "D"], &["C", "D"]], rows)
}

/// The standard Prisoners' Dilemma.
pub fn prisoners_dilemma() -> Game {
    pd_game(&[&[(4, 4), (0, 5)], &[(5, 0), (1, 1)]])
}

/// `[[(1,-1),(-1,1)],[(-1,1),(1,-1)]]`.
pub fn matching_pennies() -> Game {
    bimatrix(&[&[(1, -1), (-1, 1)], &[(-1, 1), (1, -1)]])
}

/// Three-player game with players `A1`, `A2`, `A3` and strategies `A{k}{s}`,
/// cells given in row-major order.
pub fn three_player(counts: [usize; 3], cells: &[[i64; 3]]) -> Game {
    let players = names(&["A1", "A2", "A3"]);
    let strategies = counts
        .iter()
        .enumerate()
        .map(|(k, &m)| (1..=m).map(|s| format!("A{}{}", k + 1, s)).collect())
        .collect();
    let cells = cells.iter().map(|c| cell(c)).collect();
    Game::from_cells(players, strategies, cells).expect("well-formed three-player game")
}

/// Builds a star seed from 1-based `(profile, payoffs)` pairs.
pub fn seed(base: &[usize], cells: &[(&[usize], &[i64])]) -> Seed {
    let zero_based = |p: &[usize]| Profile::new(p.iter().map(|i| i - 1).collect());
    Seed::new(
        zero_based(base),
        cells
            .iter()
            .map(|(p, v)| (zero_based(p), cell(v)))
            .collect(),
    )
}

/// 4x3 source game for the row-and-column completion example.
pub fn completion_source() -> Game {
    bimatrix(&[
        &[(4, 4), (6, 2), (0, 6)],
        &[(2, 6), (1, 1), (2, 2)],
        &[(5, 0), (0, 1), (1, 5)],
        &[(0, 0), (2, 3), (3, 0)],
    ])
}

/// Row 1 and column 1 of the completion target, based at (1,1).
pub fn completion_seed() -> Seed {
    seed(
        &[1, 1],
        &[
            (&[1, 1], &[1, 7]),
            (&[1, 2], &[4, 4]),
            (&[1, 3], &[2, 4]),
            (&[2, 1], &[7, 1]),
            (&[3, 1], &[3, 2]),
            (&[4, 1], &[0, 0]),
        ],
    )
}

/// 3x3x2 source game for the coordinate-star completion example.
pub fn three_player_source() -> Game {
    three_player(
        [3, 3, 2],
        &[
            // A1 = 1
            [1, 2, 0],
            [1, 1, 8],
            [2, 3, 1],
            [2, 2, 7],
            [3, 1, 2],
            [3, 3, 6],
            // A1 = 2
            [2, 3, 3],
            [1, 2, 5],
            [3, 4, 4],
            [2, 3, 4],
            [4, 2, 5],
            [3, 4, 3],
            // A1 = 3
            [6, 5, 6],
            [2, 1, 2],
            [7, 6, 7],
            [3, 2, 1],
            [5, 7, 8],
            [1, 3, 0],
        ],
    )
}

/// Star seed around outcome (2,2,1) of [`three_player_source`].
pub fn three_player_seed() -> Seed {
    seed(
        &[2, 2, 1],
        &[
            (&[1, 2, 1], &[1, 2, 3]),
            (&[2, 1, 1], &[4, 4, 0]),
            (&[2, 2, 1], &[5, 1, 5]),
            (&[2, 3, 1], &[3, 4, 4]),
            (&[3, 2, 1], &[8, 4, 8]),
            (&[2, 2, 2], &[3, 3, 3]),
        ],
    )
}

/// Shape helper for tests and benches.
pub fn shape(counts: &[usize]) -> GameShape {
    GameShape::new(counts.to_vec()).expect("nonempty shape")
}
