//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use num_traits::Zero;
use offergame::analyze::{dominance, pure_nash, strictly_dominates};
use offergame::complete::{complete_differences, star_profiles};
use offergame::fixtures::{
    bimatrix, completion_seed, completion_source, pd_game, prisoners_dilemma, three_player,
    three_player_seed, three_player_source,
};
use offergame::game::sum;
use offergame::scalar::{int, ratio};
use offergame::{
    apply_offer, apply_offer_set, check_equivalence, complete_from_seed, invert_offer_set,
    make_profile_dominant, synthesize_offers, Condition, Game, GameShape, Offer, OfferSet, Profile,
    Scalar, Seed,
};
use offergame_cli::{parse_game, serialize_game};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 200;
const PERTURBATIONS: usize = 200;
const SEED: u64 = 0x0ff3_76a3;

type Check = Result<(), String>;
type Criterion = (&'static str, fn(&[Case]) -> Check);

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Check {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

struct Case {
    game: Game,
    offers: OfferSet,
}

fn random_shape(rng: &mut ChaCha8Rng) -> GameShape {
    let players = rng.gen_range(2..=3);
    GameShape::new((0..players).map(|_| rng.gen_range(2..=4)).collect()).unwrap()
}

fn random_game(rng: &mut ChaCha8Rng, shape: &GameShape) -> Game {
    let n = shape.player_count();
    let cells = (0..shape.outcome_count())
        .map(|_| (0..n).map(|_| int(rng.gen_range(-9..=9))).collect())
        .collect();
    Game::with_default_names(shape, cells).unwrap()
}

fn random_amount(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

fn random_offer(rng: &mut ChaCha8Rng, shape: &GameShape, payer: Option<usize>) -> Offer {
    let n = shape.player_count();
    let payer = payer.unwrap_or_else(|| rng.gen_range(0..n));
    let payee = (payer + rng.gen_range(1..n)) % n;
    let strategy = rng.gen_range(0..shape.strategy_count(payee));
    Offer::new(payer, payee, strategy, random_amount(rng))
}

fn random_offers(rng: &mut ChaCha8Rng, shape: &GameShape, payer: Option<usize>) -> OfferSet {
    let count = rng.gen_range(0..=6);
    (0..count)
        .map(|_| random_offer(rng, shape, payer))
        .collect()
}

fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let shape = random_shape(&mut rng);
            let game = random_game(&mut rng, &shape);
            let offers = random_offers(&mut rng, &shape, None);
            Case { game, offers }
        })
        .collect()
}

fn p(indices: &[usize]) -> Profile {
    Profile::new(indices.to_vec())
}

fn criterion_1_pd_chain(_: &[Case]) -> Check {
    let m0 = prisoners_dilemma();
    let m1 = apply_offer(&m0, &Offer::named(&m0, "I", "II", "C", int(2)).unwrap()).unwrap();
    let m2 = apply_offer(&m1, &Offer::named(&m0, "II", "I", "C", int(2)).unwrap()).unwrap();
    ensure(
        m1 == pd_game(&[&[(2, 6), (0, 5)], &[(3, 2), (1, 1)]]),
        || "M1 differs".into(),
    )?;
    ensure(
        m2 == pd_game(&[&[(4, 4), (2, 3)], &[(3, 2), (1, 1)]]),
        || "M2 differs".into(),
    )?;
    for (game, expected) in [(&m0, p(&[1, 1])), (&m1, p(&[1, 0])), (&m2, p(&[0, 0]))] {
        let nash = pure_nash(game);
        ensure(nash == vec![expected.clone()], || {
            format!("Nash set {nash:?}, expected {expected}")
        })?;
    }
    Ok(())
}

fn criterion_2_reachability_examples(_: &[Case]) -> Check {
    let m = bimatrix(&[&[(4, 4), (0, 5)], &[(3, 0), (1, 1)]]);
    let yes = bimatrix(&[&[(2, 6), (2, 3)], &[(0, 3), (2, 0)]]);
    let no1 = bimatrix(&[&[(2, 6), (2, 3)], &[(0, 3), (1, 1)]]);
    let no2 = bimatrix(&[&[(2, 6), (3, 2)], &[(0, 3), (2, 0)]]);
    ensure(check_equivalence(&m, &yes).unwrap().is_equivalent(), || {
        "first target rejected".into()
    })?;
    for (label, target) in [("second", no1), ("third", no2)] {
        let verdict = check_equivalence(&m, &target).unwrap();
        let condition = verdict.violation.as_ref().map(|v| v.condition());
        ensure(condition == Some(Condition::C2), || {
            format!("{label} target: {verdict}")
        })?;
    }
    Ok(())
}

fn cells2(rows: &[&[(i64, i64)]]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .flat_map(|r| r.iter().map(|&(a, b)| vec![int(a), int(b)]))
        .collect()
}

fn criterion_3_completion_example(_: &[Case]) -> Check {
    let source = completion_source();
    let seed = completion_seed();
    let diff = complete_differences(&source, &seed).map_err(|e| e.to_string())?;
    let expected_c: Vec<Scalar> = [-3, -2, 2, 5, 6, 10, -2, -1, 3, 0, 1, 5].map(int).to_vec();
    ensure(diff.player_values(0) == expected_c, || {
        format!("C = {:?}", diff.player_values(0))
    })?;
    let completed = complete_from_seed(&source, &seed).map_err(|e| e.to_string())?;
    let expected = cells2(&[
        &[(1, 7), (4, 4), (2, 4)],
        &[(7, 1), (7, -5), (12, -8)],
        &[(3, 2), (-1, 2), (4, 2)],
        &[(0, 0), (3, 2), (8, -5)],
    ]);
    let actual: Vec<Vec<Scalar>> = completed.cells().map(<[_]>::to_vec).collect();
    ensure(actual == expected, || "completed matrix differs".into())
}

/// Values of a 3x3x2 tensor given as two slices indexed `[a1][a2]`.
fn slices(first: [[[i64; 3]; 3]; 3], second: [[[i64; 3]; 3]; 3]) -> Vec<[i64; 3]> {
    let mut cells = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            cells.push(first[i][j]);
            cells.push(second[i][j]);
        }
    }
    cells
}

fn criterion_4_three_player_example(_: &[Case]) -> Check {
    let source = three_player_source();
    let seed = three_player_seed();
    let expected_c = slices(
        [
            [[-1, 3, -2], [-1, -1, 2], [-4, 4, 0]],
            [[2, 1, -3], [2, -3, 1], [-1, 2, -1]],
            [[1, 2, -3], [1, -2, 1], [-2, 3, -1]],
        ],
        [
            [[-2, 6, -4], [-2, 2, 0], [-5, 7, -2]],
            [[1, 4, -5], [1, 0, -1], [-2, 5, -3]],
            [[0, 5, -5], [0, 1, -1], [-3, 6, -3]],
        ],
    );
    let diff = complete_differences(&source, &seed).map_err(|e| e.to_string())?;
    for (idx, profile) in source.shape().profiles().enumerate() {
        let want: Vec<Scalar> = expected_c[idx].map(int).to_vec();
        ensure(diff.at(&profile) == want.as_slice(), || {
            format!("C differs at {profile}")
        })?;
    }
    let expected_m = three_player(
        [3, 3, 2],
        &slices(
            [
                [[0, 5, -2], [1, 2, 3], [-1, 5, 2]],
                [[4, 4, 0], [5, 1, 5], [3, 4, 4]],
                [[7, 7, 3], [8, 4, 8], [3, 10, 7]],
            ],
            [
                [[-1, 7, 4], [0, 4, 7], [-2, 10, 4]],
                [[2, 6, 0], [3, 3, 3], [1, 9, 0]],
                [[2, 6, -3], [3, 3, 0], [-2, 9, -3]],
            ],
        ),
    );
    let completed = complete_from_seed(&source, &seed).map_err(|e| e.to_string())?;
    ensure(completed == expected_m, || "completed slices differ".into())
}

fn criterion_5_group_laws(corpus: &[Case]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    for (k, case) in corpus.iter().enumerate() {
        let applied = apply_offer_set(&case.game, &case.offers).unwrap();
        let mut shuffled = case.offers.offers().to_vec();
        shuffled.shuffle(&mut rng);
        let stepwise = shuffled
            .iter()
            .try_fold(case.game.clone(), |g, o| apply_offer(&g, o))
            .unwrap();
        ensure(stepwise == applied, || {
            format!("game {k}: order dependence")
        })?;
        let unchanged = apply_offer_set(&case.game, &OfferSet::empty()).unwrap();
        ensure(unchanged == case.game, || {
            format!("game {k}: empty set changed the game")
        })?;
        let inverse = invert_offer_set(&case.offers, case.game.shape()).unwrap();
        let back = apply_offer_set(&applied, &inverse).unwrap();
        ensure(back == case.game, || {
            format!("game {k}: inverse did not restore")
        })?;
        let other = random_offers(&mut rng, case.game.shape(), None);
        let composed = apply_offer_set(&case.game, &case.offers.compose(&other)).unwrap();
        let sequential = apply_offer_set(&applied, &other).unwrap();
        ensure(composed == sequential, || {
            format!("game {k}: composition mismatch")
        })?;
    }
    Ok(())
}

fn full_shape_game(rng: &mut ChaCha8Rng) -> Game {
    let shape = random_shape(rng);
    random_game(rng, &shape)
}

fn criterion_6_characterization(corpus: &[Case]) -> Check {
    for (k, case) in corpus.iter().enumerate() {
        let target = apply_offer_set(&case.game, &case.offers).unwrap();
        let verdict = check_equivalence(&case.game, &target).unwrap();
        ensure(verdict.is_equivalent(), || {
            format!("game {k}: reachable target rejected: {verdict}")
        })?;
        let synthesized =
            synthesize_offers(&case.game, &target).map_err(|e| format!("game {k}: {e}"))?;
        let rebuilt = apply_offer_set(&case.game, &synthesized.offers).unwrap();
        ensure(rebuilt == target, || {
            format!("game {k}: synthesis does not round-trip")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for k in 0..PERTURBATIONS {
        let game = full_shape_game(&mut rng);
        let shape = game.shape().clone();
        let n = shape.player_count();
        let outcome = rng.gen_range(0..shape.outcome_count());
        let from = rng.gen_range(0..n);
        let to = (from + rng.gen_range(1..n)) % n;
        let delta = loop {
            let d = random_amount(&mut rng);
            if !d.is_zero() {
                break d;
            }
        };
        let cells: Vec<Vec<Scalar>> = game
            .cells()
            .enumerate()
            .map(|(idx, c)| {
                let mut c = c.to_vec();
                if idx == outcome {
                    c[from] -= &delta;
                    c[to] += &delta;
                }
                c
            })
            .collect();
        let target = Game::with_default_names(&shape, cells).unwrap();
        let verdict = check_equivalence(&game, &target).unwrap();
        ensure(!verdict.is_equivalent(), || {
            format!("perturbation {k}: accepted")
        })?;
    }
    Ok(())
}

type DominanceSet = BTreeSet<(usize, usize, String)>;

fn dominance_set(game: &Game, player: usize) -> DominanceSet {
    dominance(game, player)
        .unwrap()
        .into_iter()
        .map(|d| (d.dominant, d.dominated, d.kind.to_string()))
        .collect()
}

fn constant_sum_variant(game: &Game, total: i64) -> Game {
    let n = game.player_count();
    let cells = game
        .cells()
        .map(|c| {
            let mut c = c.to_vec();
            c[n - 1] = int(total) - sum(&c[..n - 1]);
            c
        })
        .collect();
    Game::with_default_names(game.shape(), cells).unwrap()
}

fn criterion_7_invariance(corpus: &[Case]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for (k, case) in corpus.iter().enumerate() {
        let applied = apply_offer_set(&case.game, &case.offers).unwrap();
        for (before, after) in case.game.cells().zip(applied.cells()) {
            ensure(sum(before) == sum(after), || {
                format!("game {k}: outcome sum changed")
            })?;
        }
        let constant = constant_sum_variant(&case.game, rng.gen_range(-5..=5));
        let moved = apply_offer_set(&constant, &case.offers).unwrap();
        ensure(
            offergame::analyze::constant_sum(&moved) == offergame::analyze::constant_sum(&constant),
            || format!("game {k}: constant sum not preserved"),
        )?;
        let shape = case.game.shape();
        let payer = rng.gen_range(0..shape.player_count());
        let single = random_offers(&mut rng, shape, Some(payer));
        let after = apply_offer_set(&case.game, &single).unwrap();
        ensure(
            dominance_set(&case.game, payer) == dominance_set(&after, payer),
            || format!("game {k}: payer {payer} dominance changed"),
        )?;
    }
    Ok(())
}

fn criterion_8_dominance_construction(corpus: &[Case]) -> Check {
    let m0 = prisoners_dilemma();
    let offers = make_profile_dominant(&m0, &p(&[0, 0]), &int(1)).unwrap();
    let expected = OfferSet::new(vec![
        Offer::named(&m0, "I", "II", "C", int(2)).unwrap(),
        Offer::named(&m0, "II", "I", "C", int(2)).unwrap(),
    ])
    .canonicalize();
    ensure(offers == expected, || format!("PD offers {offers:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for (k, case) in corpus.iter().enumerate() {
        let shape = case.game.shape();
        let target = Profile::new(
            (0..shape.player_count())
                .map(|j| rng.gen_range(0..shape.strategy_count(j)))
                .collect(),
        );
        let offers = make_profile_dominant(&case.game, &target, &int(1)).unwrap();
        ensure(offers.is_nonnegative(), || {
            format!("game {k}: negative offer")
        })?;
        let after = apply_offer_set(&case.game, &offers).unwrap();
        ensure(pure_nash(&after) == vec![target.clone()], || {
            format!("game {k}: Nash set is not exactly {target}")
        })?;
        for player in 0..shape.player_count() {
            let s = target.get(player);
            for t in (0..shape.strategy_count(player)).filter(|&t| t != s) {
                ensure(strictly_dominates(&after, player, s, t), || {
                    format!("game {k}: player {player} strategy {s} does not dominate {t}")
                })?;
            }
        }
    }
    Ok(())
}

/// Completion by diagonal fronts: profiles at distance `d` from the base
/// (number of differing coordinates) are filled from distance `d - 1` and
/// `d - 2` through the two last differing axes.
fn complete_by_fronts(
    shape: &GameShape,
    seed_diff: impl Fn(&Profile) -> Vec<Scalar>,
    base: &Profile,
) -> Vec<Vec<Scalar>> {
    let n = shape.player_count();
    let mut values: Vec<Option<Vec<Scalar>>> = vec![None; shape.outcome_count()];
    for profile in star_profiles(shape, base) {
        values[shape.linear_index(&profile)] = Some(seed_diff(&profile));
    }
    for distance in 2..=n {
        for x in shape.profiles() {
            let axes: Vec<usize> = x.differing_axes(base).collect();
            if axes.len() != distance {
                continue;
            }
            let (k, q) = (axes[distance - 2], axes[distance - 1]);
            let xk = x.with(k, base.get(k));
            let xq = x.with(q, base.get(q));
            let xkq = xk.with(q, base.get(q));
            let get = |p: &Profile| {
                values[shape.linear_index(p)]
                    .clone()
                    .expect("earlier front")
            };
            let (a, b, c) = (get(&xk), get(&xq), get(&xkq));
            let v = (0..n).map(|j| &a[j] + &b[j] - &c[j]).collect();
            values[shape.linear_index(&x)] = Some(v);
        }
    }
    values.into_iter().map(Option::unwrap).collect()
}

fn criterion_9_completion_uniqueness(corpus: &[Case]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for (k, case) in corpus.iter().enumerate() {
        let source = &case.game;
        let shape = source.shape();
        let reachable = apply_offer_set(source, &case.offers).unwrap();
        let random_profile = |rng: &mut ChaCha8Rng| {
            Profile::new(
                (0..shape.player_count())
                    .map(|j| rng.gen_range(0..shape.strategy_count(j)))
                    .collect(),
            )
        };
        let base = random_profile(&mut rng);
        let seed = Seed::from_game(&reachable, base.clone()).unwrap();
        let diff = complete_differences(source, &seed).map_err(|e| format!("game {k}: {e}"))?;
        let fronts = complete_by_fronts(
            shape,
            |p| {
                source
                    .payoffs(p)
                    .iter()
                    .zip(reachable.payoffs(p))
                    .map(|(s, t)| t - s)
                    .collect()
            },
            &base,
        );
        for (idx, profile) in shape.profiles().enumerate() {
            ensure(diff.at(&profile) == fronts[idx].as_slice(), || {
                format!("game {k}: propagation orders disagree at {profile}")
            })?;
        }
        let completed = complete_from_seed(source, &seed).unwrap();
        ensure(completed == reachable, || {
            format!("game {k}: completion is not the reachable game")
        })?;
        let other_base = random_profile(&mut rng);
        let reseeded = Seed::from_game(&completed, other_base).unwrap();
        let again = complete_from_seed(source, &reseeded).unwrap();
        ensure(again == completed, || {
            format!("game {k}: base change altered the completion")
        })?;
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_offergame"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

fn criterion_10_cli(corpus: &[Case]) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, text: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    };
    let m0 = prisoners_dilemma();
    let m2 = pd_game(&[&[(4, 4), (2, 3)], &[(3, 2), (1, 1)]]);
    let m0_path = write("m0.json", &serialize_game(&m0));
    let m2_path = write("m2.json", &serialize_game(&m2));
    let source = bimatrix(&[&[(4, 4), (0, 5)], &[(3, 0), (1, 1)]]);
    let bad = bimatrix(&[&[(2, 6), (3, 2)], &[(0, 3), (2, 0)]]);
    let source_path = write("m.json", &serialize_game(&source));
    let bad_path = write("bad.json", &serialize_game(&bad));
    let broken = write("broken.json", "{\"players\": [\"I\", \"II\"],");

    let expectations: [(&[&str], i32); 6] = [
        (&["check", &m0_path, &m2_path], 0),
        (&["check", &source_path, &bad_path], 1),
        (&["synth", &source_path, &bad_path], 1),
        (&["analyze", &broken], 2),
        (&["frobnicate"], 2),
        (&["demo", "pd"], 0),
    ];
    for (args, code) in expectations {
        let (actual, _) = run_cli(args);
        ensure(actual == Some(code), || {
            format!("{args:?} exited {actual:?}, expected {code}")
        })?;
    }
    let (_, text) = run_cli(&["check", &source_path, &bad_path]);
    ensure(text.starts_with("NOT-EQUIVALENT: C2 at "), || {
        format!("check printed {text:?}")
    })?;

    let (_, demo) = run_cli(&["demo", "pd"]);
    let tables = [
        "C      | 4,4 | 0,5\nD      | 5,0 | 1,1\n",
        "C      | 2,6 | 0,5\nD      | 3,2 | 1,1\n",
        "C      | 4,4 | 2,3\nD      | 3,2 | 1,1\n",
    ];
    for table in tables {
        ensure(demo.contains(table), || {
            format!("demo is missing matrix {table:?}")
        })?;
    }
    for nash in ["(D,D)", "(D,C)", "(C,C)"] {
        let line = format!("pure Nash equilibria: {nash}\n");
        ensure(demo.contains(&line), || format!("demo is missing {line:?}"))?;
    }

    for (k, case) in corpus.iter().enumerate() {
        let text = serialize_game(&case.game);
        let parsed = parse_game(text.as_bytes()).map_err(|e| format!("game {k}: {e}"))?;
        ensure(parsed == case.game, || {
            format!("game {k}: parse(serialize) differs")
        })?;
        ensure(serialize_game(&parsed) == text, || {
            format!("game {k}: not a fixpoint")
        })?;
    }
    Ok(())
}

fn main() {
    let corpus = corpus();
    let criteria: [Criterion; 10] = [
        ("PD chain", criterion_1_pd_chain),
        ("reachability examples", criterion_2_reachability_examples),
        ("4x3 completion example", criterion_3_completion_example),
        (
            "3-person completion example",
            criterion_4_three_player_example,
        ),
        ("group laws", criterion_5_group_laws),
        ("characterization oracle", criterion_6_characterization),
        ("invariance observations", criterion_7_invariance),
        (
            "profile dominance construction",
            criterion_8_dominance_construction,
        ),
        ("completion uniqueness", criterion_9_completion_uniqueness),
        ("CLI conformance", criterion_10_cli),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (number, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&corpus)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS", number + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({reason})", number + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
