//! Seeded random arenas for the validation corpus, plus distribution
//! re-weighting for the value-independence test.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::{ArenaBuilder, ArenaError, FiniteArena, GoalFamily, Player, StateSet};

#[derive(Debug, Clone)]
pub struct RandomArenaConfig {
    pub max_states: usize,
    pub max_moves: usize,
    /// Number of goal sets (`r`).
    pub goals: usize,
}

impl Default for RandomArenaConfig {
    fn default() -> Self {
        RandomArenaConfig { max_states: 8, max_moves: 3, goals: 2 }
    }
}

/// Random deadlock-free arena: 2..=max_states states with fair-coin owners,
/// 1..=max_moves moves per state, supports of up to 3 distinct successors
/// with integer-weight rational probabilities.
pub fn random_arena(rng: &mut impl Rng, cfg: &RandomArenaConfig) -> (FiniteArena, GoalFamily) {
    let n = rng.gen_range(2..=cfg.max_states.max(2));
    let mut b = ArenaBuilder::new();
    for s in 0..n {
        let owner = if rng.gen_bool(0.5) { Player::Alice } else { Player::Bob };
        b.add_state(&format!("s{s}"), owner).unwrap();
    }
    for s in 0..n {
        let num_moves = rng.gen_range(1..=cfg.max_moves.max(1));
        for m in 0..num_moves {
            let support_size = rng.gen_range(1..=3usize.min(n));
            let mut targets: Vec<usize> = (0..n).collect();
            for i in 0..support_size {
                let j = rng.gen_range(i..n);
                targets.swap(i, j);
            }
            let dist = weighted_dist(rng, &targets[..support_size]);
            b.add_move(s, &format!("m{m}"), dist).unwrap();
        }
    }
    let arena = b.build().unwrap();
    let goals = random_goals(rng, n, cfg.goals).unwrap();
    (arena, goals)
}

fn weighted_dist(rng: &mut impl Rng, targets: &[usize]) -> Vec<(usize, BigRational)> {
    let weights: Vec<u32> = targets.iter().map(|_| rng.gen_range(1..=4)).collect();
    let total: u32 = weights.iter().sum();
    targets
        .iter()
        .zip(&weights)
        .map(|(&t, &w)| (t, BigRational::new(BigInt::from(w), BigInt::from(total))))
        .collect()
}

fn random_goals(rng: &mut impl Rng, n: usize, r: usize) -> Result<GoalFamily, ArenaError> {
    let sets = (0..r)
        .map(|_| {
            let mut g: StateSet = (0..n).filter(|_| rng.gen_bool(1.0 / 3.0)).collect();
            if g.is_empty() {
                g.insert(rng.gen_range(0..n));
            }
            g
        })
        .collect();
    GoalFamily::new(sets)
}

/// Same owners, moves, and supports, fresh random probabilities. Winning
/// sets must not change under this transformation.
pub fn reweight(arena: &FiniteArena, rng: &mut impl Rng) -> FiniteArena {
    let mut b = ArenaBuilder::new();
    for s in 0..arena.num_states() {
        b.add_state(arena.state_name(s), arena.owner(s)).unwrap();
    }
    for s in 0..arena.num_states() {
        for mv in arena.moves(s) {
            let targets: Vec<usize> = mv.support().collect();
            b.add_move(s, &mv.id, weighted_dist(rng, &targets)).unwrap();
        }
    }
    b.build().unwrap()
}
