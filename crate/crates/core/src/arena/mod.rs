//! Explicit finite turn-based stochastic arenas.
//!
//! States are owned by Alice or Bob, every state has at least one enabled
//! move, and each move carries an exact rational distribution over successor
//! states. The one-step operators treat a set pair `(X, Y)` as "stay surely
//! in X, hit Y with positive probability".

mod oracle;
mod random;
mod solve;
mod text;

pub use oracle::{
    bscc_almost_sure, oracle_win, oracle_win_mode_aware_bob, MarkovChain, OracleError,
    OracleOptions,
};
pub use random::{random_arena, reweight, RandomArenaConfig};
pub use solve::{
    compute_hi, compute_w, compute_w1, compute_w_with_trace, compute_wprime, extract_strategy,
    strategy_wins_against_all_bob, ArenaLattice, StrategyKind, StrategyTable,
};
pub use text::{parse_arena, print_arena};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Alice,
    Bob,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Alice => write!(f, "A"),
            Player::Bob => write!(f, "B"),
        }
    }
}

/// A set of arena states.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct StateSet(BTreeSet<usize>);

impl StateSet {
    pub fn new() -> Self {
        StateSet(BTreeSet::new())
    }

    pub fn singleton(s: usize) -> Self {
        StateSet(BTreeSet::from([s]))
    }

    pub fn insert(&mut self, s: usize) {
        self.0.insert(s);
    }

    pub fn contains(&self, s: usize) -> bool {
        self.0.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersect(&self, other: &StateSet) -> StateSet {
        StateSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        StateSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset_of(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        StateSet(iter.into_iter().collect())
    }
}

/// One enabled move: an identifier (unique per state) and an exact
/// probability distribution over successors.
#[derive(Debug, Clone)]
pub struct ArenaMove {
    pub id: String,
    /// Sorted by successor state; probabilities are positive and sum to 1.
    pub dist: Vec<(usize, BigRational)>,
}

impl ArenaMove {
    /// Successor states with positive probability.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.dist.iter().map(|(s, _)| *s)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArenaError {
    #[error("duplicate state '{0}'")]
    DuplicateState(String),
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("state '{state}' move '{mv}': {reason}")]
    BadDistribution { state: String, mv: String, reason: String },
    #[error("duplicate move id '{mv}' in state '{state}'")]
    DuplicateMove { state: String, mv: String },
    #[error("state '{0}' has no enabled move (arena must be deadlock-free)")]
    Deadlock(String),
    #[error("a goal family needs at least one goal set")]
    EmptyGoalFamily,
    #[error("goal set {index} contains state {state} outside the arena")]
    GoalOutOfRange { index: usize, state: usize },
    #[error("arena has no states")]
    NoStates,
    #[error("supplied set is not the computed winning set")]
    NotTheWinningSet,
    #[error("no qualifying move for state '{state}' in mode {mode}")]
    NoQualifyingMove { state: String, mode: usize },
    #[error("markov chain row {row}: {reason}")]
    BadChainRow { row: usize, reason: String },
}

/// A finite turn-based stochastic arena.
#[derive(Debug, Clone)]
pub struct FiniteArena {
    names: Vec<String>,
    owners: Vec<Player>,
    /// Per state, sorted by move id.
    moves: Vec<Vec<ArenaMove>>,
}

/// Incremental construction with validation at `build`.
#[derive(Debug, Default)]
pub struct ArenaBuilder {
    names: Vec<String>,
    owners: Vec<Player>,
    ids: HashMap<String, usize>,
    moves: Vec<Vec<ArenaMove>>,
}

impl ArenaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, name: &str, owner: Player) -> Result<usize, ArenaError> {
        if self.ids.contains_key(name) {
            return Err(ArenaError::DuplicateState(name.to_string()));
        }
        let id = self.names.len();
        self.ids.insert(name.to_string(), id);
        self.names.push(name.to_string());
        self.owners.push(owner);
        self.moves.push(Vec::new());
        Ok(id)
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.ids.get(name).copied()
    }

    pub fn add_move(
        &mut self,
        state: usize,
        id: &str,
        dist: Vec<(usize, BigRational)>,
    ) -> Result<(), ArenaError> {
        let state_name = self.names[state].clone();
        if self.moves[state].iter().any(|m| m.id == id) {
            return Err(ArenaError::DuplicateMove { state: state_name, mv: id.to_string() });
        }
        let bad = |reason: &str| ArenaError::BadDistribution {
            state: state_name.clone(),
            mv: id.to_string(),
            reason: reason.to_string(),
        };
        if dist.is_empty() {
            return Err(bad("empty distribution"));
        }
        let mut merged: BTreeMap<usize, BigRational> = BTreeMap::new();
        let mut total = BigRational::zero();
        for (target, p) in dist {
            if target >= self.names.len() {
                return Err(bad(&format!("successor {target} out of range")));
            }
            if p <= BigRational::zero() {
                return Err(bad("probabilities must be positive"));
            }
            if merged.contains_key(&target) {
                return Err(bad(&format!("duplicate successor '{}'", self.names[target])));
            }
            total += &p;
            merged.insert(target, p);
        }
        if total != BigRational::one() {
            return Err(bad(&format!("probabilities sum to {total}, expected 1")));
        }
        self.moves[state].push(ArenaMove { id: id.to_string(), dist: merged.into_iter().collect() });
        Ok(())
    }

    pub fn build(self) -> Result<FiniteArena, ArenaError> {
        if self.names.is_empty() {
            return Err(ArenaError::NoStates);
        }
        for (s, ms) in self.moves.iter().enumerate() {
            if ms.is_empty() {
                return Err(ArenaError::Deadlock(self.names[s].clone()));
            }
        }
        let mut moves = self.moves;
        for ms in moves.iter_mut() {
            ms.sort_by(|a, b| a.id.cmp(&b.id));
        }
        Ok(FiniteArena { names: self.names, owners: self.owners, moves })
    }
}

/// An ordered family of goal sets `R_1, ..., R_r`, `r >= 1`.
#[derive(Debug, Clone)]
pub struct GoalFamily(Vec<StateSet>);

impl GoalFamily {
    pub fn new(goals: Vec<StateSet>) -> Result<Self, ArenaError> {
        if goals.is_empty() {
            return Err(ArenaError::EmptyGoalFamily);
        }
        Ok(GoalFamily(goals))
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> &StateSet {
        &self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateSet> {
        self.0.iter()
    }

    pub fn validate(&self, arena: &FiniteArena) -> Result<(), ArenaError> {
        for (i, g) in self.0.iter().enumerate() {
            if let Some(s) = g.iter().find(|&s| s >= arena.num_states()) {
                return Err(ArenaError::GoalOutOfRange { index: i + 1, state: s });
            }
        }
        Ok(())
    }
}

/// Outcome of the structural precondition checks.
#[derive(Debug, Clone)]
pub struct PreconditionReport {
    pub deadlock_free: bool,
    pub distributions_valid: bool,
    /// Structural on finite arenas: every state has finitely many moves.
    pub finite_choice: bool,
    /// Trivial on finite arenas: the whole state space is a finite attractor.
    pub finite_attractor: bool,
    pub notes: Vec<String>,
}

impl PreconditionReport {
    pub fn ok(&self) -> bool {
        self.deadlock_free && self.distributions_valid
    }
}

impl fmt::Display for PreconditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "deadlock-free:      {}", self.deadlock_free)?;
        writeln!(f, "distributions:      {}", if self.distributions_valid { "valid" } else { "INVALID" })?;
        writeln!(f, "finite-choice:      {} (structural)", self.finite_choice)?;
        writeln!(f, "finite-attractor:   {} (finite state space)", self.finite_attractor)?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

impl FiniteArena {
    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn owner(&self, s: usize) -> Player {
        self.owners[s]
    }

    pub fn moves(&self, s: usize) -> &[ArenaMove] {
        &self.moves[s]
    }

    pub fn full_set(&self) -> StateSet {
        (0..self.num_states()).collect()
    }

    pub fn states_owned_by(&self, p: Player) -> StateSet {
        (0..self.num_states()).filter(|&s| self.owners[s] == p).collect()
    }

    pub fn complement(&self, set: &StateSet) -> StateSet {
        self.full_set().difference(set)
    }

    /// Support of the distribution of move `m` (an index into
    /// [`FiniteArena::moves`]) in state `c`.
    pub fn post(&self, c: usize, m: usize) -> StateSet {
        self.moves[c][m].support().collect()
    }

    /// States with some enabled move whose successors stay surely in `x`
    /// and hit `y` with positive probability.
    pub fn pre_exists(&self, x: &StateSet, y: &StateSet) -> StateSet {
        (0..self.num_states())
            .filter(|&c| self.moves[c].iter().any(|m| move_ok(m, x, y)))
            .collect()
    }

    /// States where every enabled move stays surely in `x` and hits `y`
    /// with positive probability.
    pub fn pre_forall(&self, x: &StateSet, y: &StateSet) -> StateSet {
        (0..self.num_states())
            .filter(|&c| self.moves[c].iter().all(|m| move_ok(m, x, y)))
            .collect()
    }

    /// One-step control: Alice states use the existential form, Bob states
    /// the universal one.
    pub fn pre_xa(&self, x: &StateSet, y: &StateSet) -> StateSet {
        (0..self.num_states())
            .filter(|&c| {
                let quantified = match self.owners[c] {
                    Player::Alice => self.moves[c].iter().any(|m| move_ok(m, x, y)),
                    Player::Bob => self.moves[c].iter().all(|m| move_ok(m, x, y)),
                };
                quantified
            })
            .collect()
    }

    /// The union-of-moves reformulation of `pre_exists`, quantifying over
    /// the global move vocabulary. Used to cross-check the definition.
    pub fn pre_exists_union_form(&self, x: &StateSet, y: &StateSet) -> StateSet {
        let mut out = StateSet::new();
        for s in 0..self.num_states() {
            for m in 0..self.moves[s].len() {
                // wpre[m](x) ∩ pre[m](y) restricted to states where the
                // move is enabled; a per-state move is enabled only in s.
                if move_ok(&self.moves[s][m], x, y) {
                    out.insert(s);
                }
            }
        }
        out
    }

    /// The intersection-of-moves reformulation of `pre_forall`:
    /// `⋂_m ( wpre[m](∅) ∪ [wpre[m](X) ∩ pre[m](Y)] )` over the global
    /// move vocabulary, where `c ∈ wpre[m](∅)` iff `m` is not enabled in `c`.
    pub fn pre_forall_inter_form(&self, x: &StateSet, y: &StateSet) -> StateSet {
        let mut out = self.full_set();
        for s in 0..self.num_states() {
            for m in 0..self.moves[s].len() {
                let mut pass: StateSet =
                    (0..self.num_states()).filter(|&c| c != s).collect();
                if move_ok(&self.moves[s][m], x, y) {
                    pass.insert(s);
                }
                out = out.intersect(&pass);
            }
        }
        out
    }

    /// For Alice states in `pre_xa(X, Y)`, a witness move whose support
    /// stays in `x` and meets `y`.
    pub fn witness_move(&self, c: usize, x: &StateSet, y: &StateSet) -> Option<usize> {
        self.moves[c].iter().position(|m| move_ok(m, x, y))
    }

    /// Verify the structural preconditions. Construction already enforces
    /// them; this re-checks and reports, serving as the input gate.
    pub fn check_preconditions(&self) -> PreconditionReport {
        let deadlock_free = self.moves.iter().all(|ms| !ms.is_empty());
        let distributions_valid = self.moves.iter().all(|ms| {
            ms.iter().all(|m| {
                !m.dist.is_empty()
                    && m.dist.iter().all(|(_, p)| *p > BigRational::zero())
                    && m.dist.iter().map(|(_, p)| p).sum::<BigRational>() == BigRational::one()
            })
        });
        PreconditionReport {
            deadlock_free,
            distributions_valid,
            finite_choice: true,
            finite_attractor: true,
            notes: vec![
                "finite-choice holds structurally: move lists are finite".to_string(),
                format!(
                    "finite-attractor holds trivially: all {} states form a finite attractor",
                    self.num_states()
                ),
            ],
        }
    }
}

fn move_ok(m: &ArenaMove, x: &StateSet, y: &StateSet) -> bool {
    m.support().all(|d| x.contains(d)) && m.support().any(|d| y.contains(d))
}

/// Exact rational from `p/q` or integer text.
pub fn parse_ratio(text: &str) -> Result<BigRational, String> {
    let parse_int = |s: &str| -> Result<BigInt, String> {
        s.parse::<BigInt>().map_err(|_| format!("bad integer '{s}'"))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p.trim())?;
            let den = parse_int(q.trim())?;
            if den.is_zero() {
                return Err("zero denominator".to_string());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(text.trim())?)),
    }
}

/// Render a rational as `p/q` (or `p` when integral).
pub fn show_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn set(items: &[usize]) -> StateSet {
        items.iter().copied().collect()
    }

    /// Three states: c (Alice) with moves m1 -> good, m2 -> bad; good and
    /// bad are sinks.
    fn three_state() -> FiniteArena {
        let mut b = ArenaBuilder::new();
        let c = b.add_state("c", Player::Alice).unwrap();
        let good = b.add_state("good", Player::Alice).unwrap();
        let bad = b.add_state("bad", Player::Alice).unwrap();
        b.add_move(c, "m1", vec![(good, ratio(1, 1))]).unwrap();
        b.add_move(c, "m2", vec![(bad, ratio(1, 1))]).unwrap();
        b.add_move(good, "stay", vec![(good, ratio(1, 1))]).unwrap();
        b.add_move(bad, "stay", vec![(bad, ratio(1, 1))]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn post_support() {
        let mut b = ArenaBuilder::new();
        let c = b.add_state("c", Player::Alice).unwrap();
        let d = b.add_state("d", Player::Alice).unwrap();
        let e = b.add_state("e", Player::Bob).unwrap();
        b.add_move(c, "dirac", vec![(d, ratio(1, 1))]).unwrap();
        b.add_move(c, "half", vec![(d, ratio(1, 2)), (e, ratio(1, 2))]).unwrap();
        b.add_move(c, "selfloop", vec![(c, ratio(1, 3)), (d, ratio(2, 3))]).unwrap();
        b.add_move(d, "stay", vec![(d, ratio(1, 1))]).unwrap();
        b.add_move(e, "stay", vec![(e, ratio(1, 1))]).unwrap();
        let arena = b.build().unwrap();
        let idx = |id: &str| arena.moves(c).iter().position(|m| m.id == id).unwrap();
        assert_eq!(arena.post(c, idx("dirac")), set(&[d]));
        assert_eq!(arena.post(c, idx("half")), set(&[d, e]));
        assert_eq!(arena.post(c, idx("selfloop")), set(&[c, d]));
    }

    #[test]
    fn distribution_validation() {
        let mut b = ArenaBuilder::new();
        let s = b.add_state("s", Player::Alice).unwrap();
        let err = b.add_move(s, "m", vec![(s, ratio(5, 6))]).unwrap_err();
        assert!(matches!(err, ArenaError::BadDistribution { .. }));
        assert!(err.to_string().contains("5/6"));
        let err = b.add_move(s, "m", vec![(s, ratio(-1, 2)), (s, ratio(3, 2))]).unwrap_err();
        assert!(matches!(err, ArenaError::BadDistribution { .. }));
    }

    #[test]
    fn deadlock_rejected() {
        let mut b = ArenaBuilder::new();
        b.add_state("s", Player::Alice).unwrap();
        assert_eq!(b.build().unwrap_err(), ArenaError::Deadlock("s".into()));
    }

    #[test]
    fn pre_exists_basics() {
        let arena = three_state();
        let all = arena.full_set();
        assert_eq!(arena.pre_exists(&all, &all), all);
        assert!(arena.pre_exists(&all, &StateSet::new()).is_empty());
        // X = Y = {good}: c has the m1 witness.
        let good = set(&[1]);
        let r = arena.pre_exists(&good, &good);
        assert!(r.contains(0));
        assert!(r.contains(1));
        assert!(!r.contains(2));
    }

    #[test]
    fn pre_forall_basics() {
        let arena = three_state();
        let all = arena.full_set();
        assert_eq!(arena.pre_forall(&all, &all), all);
        // X = Y = {good}: m2 leaves X, so c fails the universal check.
        let good = set(&[1]);
        let r = arena.pre_forall(&good, &good);
        assert!(!r.contains(0));
        assert!(r.contains(1));
    }

    #[test]
    fn pre_xa_owner_dispatch() {
        // All-Alice arena: pre_xa = pre_exists; all-Bob: pre_forall.
        let arena = three_state();
        let good = set(&[1]);
        assert_eq!(arena.pre_xa(&good, &good), arena.pre_exists(&good, &good));

        let mut b = ArenaBuilder::new();
        let c = b.add_state("c", Player::Bob).unwrap();
        let g = b.add_state("good", Player::Bob).unwrap();
        let bad = b.add_state("bad", Player::Bob).unwrap();
        b.add_move(c, "m1", vec![(g, ratio(1, 1))]).unwrap();
        b.add_move(c, "m2", vec![(bad, ratio(1, 1))]).unwrap();
        b.add_move(g, "stay", vec![(g, ratio(1, 1))]).unwrap();
        b.add_move(bad, "stay", vec![(bad, ratio(1, 1))]).unwrap();
        let bob_arena = b.build().unwrap();
        let good = set(&[1]);
        assert_eq!(bob_arena.pre_xa(&good, &good), bob_arena.pre_forall(&good, &good));
    }

    #[test]
    fn mixed_arena_hand_enumeration() {
        // 4 states: a (Alice) -> {t, u}; b (Bob) with two moves, one into t,
        // one into u; t, u sinks. X = {t, u}, Y = {t}.
        let mut bld = ArenaBuilder::new();
        let a = bld.add_state("a", Player::Alice).unwrap();
        let b = bld.add_state("b", Player::Bob).unwrap();
        let t = bld.add_state("t", Player::Alice).unwrap();
        let u = bld.add_state("u", Player::Alice).unwrap();
        bld.add_move(a, "m", vec![(t, ratio(1, 2)), (u, ratio(1, 2))]).unwrap();
        bld.add_move(b, "mt", vec![(t, ratio(1, 1))]).unwrap();
        bld.add_move(b, "mu", vec![(u, ratio(1, 1))]).unwrap();
        bld.add_move(t, "stay", vec![(t, ratio(1, 1))]).unwrap();
        bld.add_move(u, "stay", vec![(u, ratio(1, 1))]).unwrap();
        let arena = bld.build().unwrap();
        let x = set(&[t, u]);
        let y = set(&[t]);
        // a: its single move stays in X and hits t. t: stays in X∩Y. u: stays
        // in X but never hits Y. b: move mu misses Y, so the universal check
        // fails.
        assert_eq!(arena.pre_xa(&x, &y), set(&[a, t]));
    }

    #[test]
    fn dual_formulations_agree_on_random_inputs() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let (arena, _) = random_arena(
                &mut rng,
                &RandomArenaConfig { max_states: 6, max_moves: 3, goals: 1 },
            );
            let n = arena.num_states();
            let rand_set = |rng: &mut StdRng| -> StateSet {
                (0..n).filter(|_| rng.gen_bool(0.5)).collect()
            };
            let x = rand_set(&mut rng);
            let y = rand_set(&mut rng);
            assert_eq!(arena.pre_exists(&x, &y), arena.pre_exists_union_form(&x, &y));
            assert_eq!(arena.pre_forall(&x, &y), arena.pre_forall_inter_form(&x, &y));
        }
    }

    #[test]
    fn monotonicity_of_pre_operators() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let (arena, _) = random_arena(
                &mut rng,
                &RandomArenaConfig { max_states: 6, max_moves: 3, goals: 1 },
            );
            let n = arena.num_states();
            let small: StateSet = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let mut x2 = small.clone();
            for s in 0..n {
                if rng.gen_bool(0.3) {
                    x2.insert(s);
                }
            }
            let y1: StateSet = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let mut y2 = y1.clone();
            for s in 0..n {
                if rng.gen_bool(0.3) {
                    y2.insert(s);
                }
            }
            assert!(arena.pre_exists(&small, &y1).is_subset_of(&arena.pre_exists(&x2, &y2)));
            assert!(arena.pre_forall(&small, &y1).is_subset_of(&arena.pre_forall(&x2, &y2)));
            assert!(arena.pre_xa(&small, &y1).is_subset_of(&arena.pre_xa(&x2, &y2)));
        }
    }

    #[test]
    fn fact_one_witnesses() {
        // For Alice states in pre_xa(X, Y) the chosen move is a one-step
        // witness; for Bob states outside, some move violates the pair.
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..30 {
            let (arena, _) = random_arena(
                &mut rng,
                &RandomArenaConfig { max_states: 6, max_moves: 3, goals: 1 },
            );
            let n = arena.num_states();
            let x: StateSet = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let y: StateSet = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let inside = arena.pre_xa(&x, &y);
            for c in 0..n {
                match (arena.owner(c), inside.contains(c)) {
                    (Player::Alice, true) => {
                        let m = arena.witness_move(c, &x, &y).expect("witness must exist");
                        let post = arena.post(c, m);
                        assert!(post.is_subset_of(&x));
                        assert!(!post.intersect(&y).is_empty());
                    }
                    (Player::Bob, false) => {
                        let violating = arena.moves(c).iter().any(|m| !move_ok(m, &x, &y));
                        assert!(violating, "some Bob move must violate the pair");
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn goal_family_rejects_r_zero() {
        assert_eq!(GoalFamily::new(vec![]).unwrap_err(), ArenaError::EmptyGoalFamily);
    }

    #[test]
    fn precondition_report() {
        let arena = three_state();
        let report = arena.check_preconditions();
        assert!(report.ok());
        assert!(report.finite_choice);
        assert!(report.finite_attractor);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_ratio("3").unwrap(), ratio(3, 1));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
        assert_eq!(show_ratio(&ratio(2, 4)), "1/2");
        assert_eq!(show_ratio(&ratio(3, 1)), "3");
    }
}
