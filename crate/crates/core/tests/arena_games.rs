//! Cross-validation of the fixpoint characterizations against the
//! brute-force oracle on explicit finite arenas.

use higman_core::arena::{
    bscc_almost_sure, compute_hi, compute_w, compute_w1, compute_w_with_trace, compute_wprime,
    extract_strategy, oracle_win, oracle_win_mode_aware_bob, random_arena, reweight,
    strategy_wins_against_all_bob, ArenaBuilder, GoalFamily, MarkovChain, OracleOptions, Player,
    RandomArenaConfig, StateSet, StrategyKind,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn set(items: &[usize]) -> StateSet {
    items.iter().copied().collect()
}

/// Deterministic 3-cycle visiting both goals: everything wins.
#[test]
fn deterministic_cycle_all_winning() {
    let mut b = ArenaBuilder::new();
    let s0 = b.add_state("s0", Player::Alice).unwrap();
    let s1 = b.add_state("s1", Player::Alice).unwrap();
    let s2 = b.add_state("s2", Player::Alice).unwrap();
    b.add_move(s0, "m", vec![(s1, ratio(1, 1))]).unwrap();
    b.add_move(s1, "m", vec![(s2, ratio(1, 1))]).unwrap();
    b.add_move(s2, "m", vec![(s0, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let goals = GoalFamily::new(vec![set(&[s1]), set(&[s2])]).unwrap();
    let all = arena.full_set();
    assert_eq!(compute_w(&arena, &goals), all);
    assert_eq!(compute_wprime(&arena, &goals), all);
    assert_eq!(oracle_win(&arena, &goals, &OracleOptions::default()).unwrap(), all);
}

/// All states in every goal set: the objective holds vacuously.
#[test]
fn all_goal_arena() {
    let mut b = ArenaBuilder::new();
    let s0 = b.add_state("s0", Player::Bob).unwrap();
    let s1 = b.add_state("s1", Player::Alice).unwrap();
    b.add_move(s0, "m", vec![(s0, ratio(1, 2)), (s1, ratio(1, 2))]).unwrap();
    b.add_move(s1, "m", vec![(s0, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let all = arena.full_set();
    let goals = GoalFamily::new(vec![all.clone(), all.clone()]).unwrap();
    assert_eq!(compute_w(&arena, &goals), all);
}

/// Bob can route the play into a goal-free sink: the trap and every state
/// from which Bob can force it are losing.
#[test]
fn bob_trap_excluded() {
    let mut b = ArenaBuilder::new();
    let start = b.add_state("start", Player::Bob).unwrap();
    let goal = b.add_state("goal", Player::Alice).unwrap();
    let trap = b.add_state("trap", Player::Alice).unwrap();
    b.add_move(start, "to_goal", vec![(goal, ratio(1, 1))]).unwrap();
    b.add_move(start, "to_trap", vec![(trap, ratio(1, 1))]).unwrap();
    b.add_move(goal, "back", vec![(start, ratio(1, 1))]).unwrap();
    b.add_move(trap, "stay", vec![(trap, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let goals = GoalFamily::new(vec![set(&[goal])]).unwrap();
    let w = compute_w(&arena, &goals);
    assert!(w.is_empty(), "Bob forces the trap from everywhere: {w:?}");
    assert_eq!(oracle_win(&arena, &goals, &OracleOptions::default()).unwrap(), w);
}

#[test]
fn hi_contractive_and_chain_example() {
    // Single-player chain c0 -> c1 -> c2 (c2 loops), R = {c2}: the whole
    // chain can reach R while staying anywhere, so H = all states.
    let mut b = ArenaBuilder::new();
    let c0 = b.add_state("c0", Player::Alice).unwrap();
    let c1 = b.add_state("c1", Player::Alice).unwrap();
    let c2 = b.add_state("c2", Player::Alice).unwrap();
    b.add_move(c0, "m", vec![(c1, ratio(1, 1))]).unwrap();
    b.add_move(c1, "m", vec![(c2, ratio(1, 1))]).unwrap();
    b.add_move(c2, "m", vec![(c2, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let all = arena.full_set();
    let r = set(&[c2]);
    assert_eq!(compute_hi(&arena, &all, &r), all);
    // Contractive: H_i(X) ⊆ X, and H_i(∅) = ∅.
    assert!(compute_hi(&arena, &StateSet::new(), &r).is_empty());
    let x = set(&[c1, c2]);
    assert!(compute_hi(&arena, &x, &r).is_subset_of(&x));
}

#[test]
fn hi_excludes_bob_escape() {
    // Bob state with one move into a non-goal sink: it cannot be in
    // H(all) because "positive probability of reaching R" fails under the
    // escape move... however H quantifies universally over Bob moves.
    let mut b = ArenaBuilder::new();
    let bob = b.add_state("bob", Player::Bob).unwrap();
    let goal = b.add_state("goal", Player::Alice).unwrap();
    let sink = b.add_state("sink", Player::Alice).unwrap();
    b.add_move(bob, "good", vec![(goal, ratio(1, 1))]).unwrap();
    b.add_move(bob, "escape", vec![(sink, ratio(1, 1))]).unwrap();
    b.add_move(goal, "stay", vec![(goal, ratio(1, 1))]).unwrap();
    b.add_move(sink, "stay", vec![(sink, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let all = arena.full_set();
    let r = set(&[goal]);
    let h = compute_hi(&arena, &all, &r);
    assert!(!h.contains(bob), "Bob's escape move spoils the positive-probability step");
    assert!(h.contains(goal));
    assert!(!h.contains(sink));
}

/// A 6-state two-goal arena with a mix of owners and randomness; frozen
/// oracle comparison.
#[test]
fn six_state_two_goal_corpus_arena() {
    let mut b = ArenaBuilder::new();
    let a0 = b.add_state("a0", Player::Alice).unwrap();
    let b1 = b.add_state("b1", Player::Bob).unwrap();
    let a2 = b.add_state("a2", Player::Alice).unwrap();
    let b3 = b.add_state("b3", Player::Bob).unwrap();
    let a4 = b.add_state("a4", Player::Alice).unwrap();
    let trap = b.add_state("trap", Player::Alice).unwrap();
    b.add_move(a0, "m0", vec![(b1, ratio(1, 2)), (a2, ratio(1, 2))]).unwrap();
    b.add_move(a0, "m1", vec![(a4, ratio(1, 1))]).unwrap();
    b.add_move(b1, "m0", vec![(a0, ratio(1, 1))]).unwrap();
    b.add_move(b1, "m1", vec![(a2, ratio(1, 3)), (a4, ratio(2, 3))]).unwrap();
    b.add_move(a2, "m0", vec![(a0, ratio(1, 4)), (b3, ratio(3, 4))]).unwrap();
    b.add_move(b3, "m0", vec![(a2, ratio(1, 1))]).unwrap();
    b.add_move(b3, "m1", vec![(trap, ratio(1, 1))]).unwrap();
    b.add_move(a4, "m0", vec![(a0, ratio(1, 1))]).unwrap();
    b.add_move(trap, "m0", vec![(trap, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let goals = GoalFamily::new(vec![set(&[a0]), set(&[a4])]).unwrap();
    let w = compute_w(&arena, &goals);
    let wprime = compute_wprime(&arena, &goals);
    let oracle = oracle_win(&arena, &goals, &OracleOptions::default()).unwrap();
    assert_eq!(w, wprime);
    assert_eq!(w, oracle);
    // b3 traps, and from b1 Bob's m1 reaches a2 (which funnels into b3)
    // with positive probability, so b1 is losing. Alice wins exactly on
    // the deterministic a0 -> a4 -> a0 cycle. Frozen oracle value:
    assert_eq!(w, set(&[a0, a4]));
}

#[test]
fn theorem_equalities_on_random_corpus() {
    let mut rng = StdRng::seed_from_u64(42);
    let opts = OracleOptions::default();
    let mut checked = 0;
    while checked < 60 {
        let r = 1 + (checked % 2);
        let (arena, goals) = random_arena(
            &mut rng,
            &RandomArenaConfig { max_states: 6, max_moves: 3, goals: r },
        );
        let w = compute_w(&arena, &goals);
        let wprime = compute_wprime(&arena, &goals);
        assert_eq!(w, wprime, "W != W' on arena #{checked}");
        if r == 1 {
            assert_eq!(w, compute_w1(&arena, goals.get(0)), "W != W1 on arena #{checked}");
        }
        match oracle_win(&arena, &goals, &opts) {
            Ok(oracle) => {
                assert_eq!(w, oracle, "oracle mismatch on arena #{checked}");
                checked += 1;
            }
            Err(_) => continue, // too many profiles; resample
        }
    }
}

#[test]
fn mode_aware_bob_stress_on_small_corpus() {
    // Giving Bob mode-dependent strategies must not change the oracle's
    // answer: a memoryless spoiler suffices.
    let mut rng = StdRng::seed_from_u64(1729);
    let opts = OracleOptions { max_profiles: 2_000_000 };
    let mut checked = 0;
    while checked < 15 {
        let (arena, goals) = random_arena(
            &mut rng,
            &RandomArenaConfig { max_states: 4, max_moves: 2, goals: 2 },
        );
        let plain = oracle_win(&arena, &goals, &opts).unwrap();
        let aware = oracle_win_mode_aware_bob(&arena, &goals, &opts).unwrap();
        assert_eq!(plain, aware, "mode-aware Bob changed the outcome");
        assert_eq!(plain, compute_w(&arena, &goals));
        checked += 1;
    }
}

#[test]
fn winning_set_is_probability_independent() {
    // Re-weighting all distributions (same supports) leaves W unchanged.
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..20 {
        let (arena, goals) = random_arena(
            &mut rng,
            &RandomArenaConfig { max_states: 6, max_moves: 3, goals: 2 },
        );
        let w = compute_w(&arena, &goals);
        let rewt = reweight(&arena, &mut rng);
        assert_eq!(w, compute_w(&rewt, &goals));
    }
}

#[test]
fn trace_shape() {
    let mut rng = StdRng::seed_from_u64(5);
    let (arena, goals) =
        random_arena(&mut rng, &RandomArenaConfig { max_states: 5, max_moves: 2, goals: 2 });
    let (_, trace) = compute_w_with_trace(&arena, &goals);
    // ν chains decrease, μ chains increase.
    let lat = higman_core::arena::ArenaLattice::with_goals(&arena, &goals);
    trace.check_monotone(&lat).unwrap();
    assert!(!trace.fixpoints.is_empty());
}

#[test]
fn strategy_extraction_unique_move() {
    // r = 1, single Alice state with exactly one winning move.
    let mut b = ArenaBuilder::new();
    let s = b.add_state("s", Player::Alice).unwrap();
    let g = b.add_state("g", Player::Alice).unwrap();
    let d = b.add_state("d", Player::Alice).unwrap();
    b.add_move(s, "win", vec![(g, ratio(1, 1))]).unwrap();
    b.add_move(s, "lose", vec![(d, ratio(1, 1))]).unwrap();
    b.add_move(g, "back", vec![(s, ratio(1, 1))]).unwrap();
    b.add_move(d, "stay", vec![(d, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let goals = GoalFamily::new(vec![set(&[g])]).unwrap();
    let w = compute_w(&arena, &goals);
    assert_eq!(w, set(&[s, g]));
    let table = extract_strategy(&arena, &goals, &w).unwrap();
    assert_eq!(table.kind(), StrategyKind::Memoryless);
    let mv = table.choose(0, s).unwrap();
    assert_eq!(arena.moves(s)[mv].id, "win");
}

#[test]
fn strategy_extraction_rejects_wrong_w() {
    let mut b = ArenaBuilder::new();
    let s = b.add_state("s", Player::Alice).unwrap();
    b.add_move(s, "m", vec![(s, ratio(1, 1))]).unwrap();
    let arena = b.build().unwrap();
    let goals = GoalFamily::new(vec![set(&[s])]).unwrap();
    let bogus = StateSet::new();
    assert!(extract_strategy(&arena, &goals, &bogus).is_err());
}

#[test]
fn strategy_postconditions_on_random_arenas() {
    // Every chosen move satisfies its defining condition, re-checked by
    // direct enumeration.
    let mut rng = StdRng::seed_from_u64(123);
    for _ in 0..20 {
        let (arena, goals) = random_arena(
            &mut rng,
            &RandomArenaConfig { max_states: 6, max_moves: 3, goals: 2 },
        );
        let w = compute_w(&arena, &goals);
        if w.is_empty() {
            continue;
        }
        let table = extract_strategy(&arena, &goals, &w).unwrap();
        assert_eq!(table.modes(), goals.r());
        let h: Vec<StateSet> =
            (0..goals.r()).map(|i| compute_hi(&arena, &w, goals.get(i))).collect();
        let h_all = h.iter().fold(w.clone(), |acc, hi| acc.intersect(hi));
        for (mode, state, mv) in table.entries() {
            let post = arena.post(state, mv);
            if h[mode].contains(state) {
                assert!(post.is_subset_of(&w));
                let target = goals.get(mode).union(&h[mode]);
                assert!(!post.intersect(&target).is_empty());
            } else {
                assert!(post.is_subset_of(&h_all));
            }
        }
        // No entries outside W.
        for (_, state, _) in table.entries() {
            assert!(w.contains(state));
        }
    }
}

#[test]
fn strategy_exact_soundness_small_corpus() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 10 {
        let (arena, goals) = random_arena(
            &mut rng,
            &RandomArenaConfig { max_states: 5, max_moves: 2, goals: 2 },
        );
        let w = compute_w(&arena, &goals);
        if w.is_empty() {
            continue;
        }
        let table = extract_strategy(&arena, &goals, &w).unwrap();
        assert!(
            strategy_wins_against_all_bob(&arena, &goals, &table, &w),
            "extracted strategy loses against some Bob strategy"
        );
        checked += 1;
    }
}

#[test]
fn markov_chain_bscc_analysis() {
    // 5-state chain, two BSCCs: {3} (goal) and {4} (non-goal, unreachable
    // from 0). 0 -> 1 -> 3, 0 -> 2 -> 3, 4 isolated.
    let rows = vec![
        vec![(1, ratio(1, 2)), (2, ratio(1, 2))],
        vec![(3, ratio(1, 1))],
        vec![(3, ratio(1, 1))],
        vec![(3, ratio(1, 1))],
        vec![(4, ratio(1, 1))],
    ];
    let mc = MarkovChain::new(rows).unwrap();
    let goal = set(&[3]);
    assert!(bscc_almost_sure(&mc, 0, &goal));
    assert!(!bscc_almost_sure(&mc, 4, &goal));
    // goal = all states: trivially true.
    let all: StateSet = (0..5).collect();
    assert!(bscc_almost_sure(&mc, 0, &all));
    assert!(bscc_almost_sure(&mc, 4, &all));
    // absorbing non-goal reachable: false.
    let rows = vec![vec![(1, ratio(1, 2)), (0, ratio(1, 2))], vec![(1, ratio(1, 1))]];
    let mc = MarkovChain::new(rows).unwrap();
    assert!(!bscc_almost_sure(&mc, 0, &set(&[0])));
}

#[test]
fn markov_chain_validation() {
    let rows = vec![vec![(0, ratio(5, 6))]];
    assert!(MarkovChain::new(rows).is_err());
    let rows = vec![vec![(7, ratio(1, 1))]];
    assert!(MarkovChain::new(rows).is_err());
}

#[test]
fn oracle_budget() {
    // An arena big enough to exceed a tiny budget reports the overflow.
    let mut rng = StdRng::seed_from_u64(8);
    let (arena, goals) =
        random_arena(&mut rng, &RandomArenaConfig { max_states: 8, max_moves: 3, goals: 2 });
    let opts = OracleOptions { max_profiles: 1 };
    assert!(oracle_win(&arena, &goals, &opts).is_err());
}
