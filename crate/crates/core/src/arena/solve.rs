//! Winning sets and strategies on finite arenas, computed through the
//! fixpoint engine.
//!
//! The three equivalent characterizations of the almost-sure generalized
//! Büchi winning set are built as terms over an arena-backed lattice:
//!
//! ```text
//! H_i(X) = mu Z. X ∩ pre_xa(X, R_i ∪ Z)
//! W      = nu X. ⋂_i H_i(X)
//! W'     = nu X. pre_xa(⋂_i H_i(X), Conf)
//! W_1    = nu X. mu Z. pre_xa(X, R_1 ∪ Z)        (r = 1)
//! ```

use std::collections::{BTreeMap, HashMap};

use crate::fixpoint::{
    eval, ApproximantTrace, EvalOptions, Lattice, MuTerm, OperatorInfo,
};

use super::oracle::{almost_sure_buchi, product_chain, Assignments};
use super::{ArenaError, FiniteArena, GoalFamily, Player, StateSet};

/// State-set lattice over one arena, with `pre_xa`/`pre_exists`/`pre_forall`
/// as registered operators and caller-supplied constants.
pub struct ArenaLattice<'a> {
    arena: &'a FiniteArena,
    consts: HashMap<String, StateSet>,
}

impl<'a> ArenaLattice<'a> {
    pub fn new(arena: &'a FiniteArena) -> Self {
        let mut consts = HashMap::new();
        consts.insert("Conf".to_string(), arena.full_set());
        ArenaLattice { arena, consts }
    }

    pub fn with_goals(arena: &'a FiniteArena, goals: &GoalFamily) -> Self {
        let mut lat = ArenaLattice::new(arena);
        for (i, g) in goals.iter().enumerate() {
            lat.consts.insert(format!("R{}", i + 1), g.clone());
        }
        lat
    }

    pub fn set_const(&mut self, name: impl Into<String>, value: StateSet) {
        self.consts.insert(name.into(), value);
    }
}

impl Lattice for ArenaLattice<'_> {
    type Elem = StateSet;

    fn bottom(&self) -> StateSet {
        StateSet::new()
    }

    fn top(&self) -> StateSet {
        self.arena.full_set()
    }

    fn join(&self, a: &StateSet, b: &StateSet) -> StateSet {
        a.union(b)
    }

    fn meet(&self, a: &StateSet, b: &StateSet) -> StateSet {
        a.intersect(b)
    }

    fn equal(&self, a: &StateSet, b: &StateSet) -> bool {
        a == b
    }

    fn constant(&self, name: &str) -> Option<StateSet> {
        self.consts.get(name).cloned()
    }

    fn operator_info(&self, name: &str) -> Option<OperatorInfo> {
        matches!(name, "pre_xa" | "pre_exists" | "pre_forall").then(|| OperatorInfo::plain(2))
    }

    fn apply(&self, name: &str, args: &[StateSet]) -> StateSet {
        match name {
            "pre_xa" => self.arena.pre_xa(&args[0], &args[1]),
            "pre_exists" => self.arena.pre_exists(&args[0], &args[1]),
            "pre_forall" => self.arena.pre_forall(&args[0], &args[1]),
            other => panic!("unknown operator {other}"),
        }
    }

    fn element_size(&self, e: &StateSet) -> usize {
        e.len()
    }
}

/// `H_i(X)` with `X` free, to be closed by an enclosing binder.
fn h_term(i: usize) -> MuTerm {
    MuTerm::mu(
        "Z",
        MuTerm::meet(vec![
            MuTerm::var("X"),
            MuTerm::op(
                "pre_xa",
                vec![
                    MuTerm::var("X"),
                    MuTerm::join(vec![MuTerm::cnst(format!("R{i}")), MuTerm::var("Z")]),
                ],
            ),
        ]),
    )
}

fn h_all_term(r: usize) -> MuTerm {
    MuTerm::meet((1..=r).map(h_term).collect())
}

fn w_term(r: usize) -> MuTerm {
    MuTerm::nu("X", h_all_term(r))
}

fn wprime_term(r: usize) -> MuTerm {
    MuTerm::nu("X", MuTerm::op("pre_xa", vec![h_all_term(r), MuTerm::cnst("Conf")]))
}

fn w1_term() -> MuTerm {
    MuTerm::nu(
        "X",
        MuTerm::mu(
            "Z",
            MuTerm::op(
                "pre_xa",
                vec![
                    MuTerm::var("X"),
                    MuTerm::join(vec![MuTerm::cnst("R1"), MuTerm::var("Z")]),
                ],
            ),
        ),
    )
}

fn run(term: &MuTerm, lat: &ArenaLattice) -> (StateSet, ApproximantTrace<StateSet>) {
    eval(term, lat, &EvalOptions::default()).expect("arena fixpoint evaluation cannot fail")
}

/// `H_i(x)`: from where Alice can keep the play surely in `x` while
/// retaining a positive probability of hitting `ri`. Contractive:
/// the result is a subset of `x`.
pub fn compute_hi(arena: &FiniteArena, x: &StateSet, ri: &StateSet) -> StateSet {
    let mut lat = ArenaLattice::new(arena);
    lat.set_const("Xc", x.clone());
    lat.set_const("R", ri.clone());
    let term = MuTerm::mu(
        "Z",
        MuTerm::meet(vec![
            MuTerm::cnst("Xc"),
            MuTerm::op(
                "pre_xa",
                vec![
                    MuTerm::cnst("Xc"),
                    MuTerm::join(vec![MuTerm::cnst("R"), MuTerm::var("Z")]),
                ],
            ),
        ]),
    );
    run(&term, &lat).0
}

/// The almost-sure generalized Büchi winning set `W = nu X. ⋂_i H_i(X)`.
pub fn compute_w(arena: &FiniteArena, goals: &GoalFamily) -> StateSet {
    compute_w_with_trace(arena, goals).0
}

pub fn compute_w_with_trace(
    arena: &FiniteArena,
    goals: &GoalFamily,
) -> (StateSet, ApproximantTrace<StateSet>) {
    let lat = ArenaLattice::with_goals(arena, goals);
    run(&w_term(goals.r()), &lat)
}

/// The alternative characterization `W' = nu X. pre_xa(⋂_i H_i(X), Conf)`;
/// equal to `W` on every finite arena (checked by the test suite, not
/// assumed here).
pub fn compute_wprime(arena: &FiniteArena, goals: &GoalFamily) -> StateSet {
    let lat = ArenaLattice::with_goals(arena, goals);
    run(&wprime_term(goals.r()), &lat).0
}

/// The single-goal form `W_1 = nu X. mu Z. pre_xa(X, R_1 ∪ Z)`; equal to
/// `compute_w` with `r = 1` by the contractive ν–μ identity.
pub fn compute_w1(arena: &FiniteArena, r1: &StateSet) -> StateSet {
    let mut lat = ArenaLattice::new(arena);
    lat.set_const("R1", r1.clone());
    run(&w1_term(), &lat).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Memoryless,
    ModeSwitching,
}

/// A finite-memory move selector with one mode per goal set.
///
/// Mode advance rule: after playing a move from state `c` in mode `i`, the
/// mode becomes `i+1 (mod r)` if `c ∈ R_i`, so at least one move is played
/// in each mode. With `r = 1` the table is memoryless.
#[derive(Debug, Clone)]
pub struct StrategyTable {
    modes: usize,
    /// `(mode, state)` to an index into `arena.moves(state)`.
    choice: BTreeMap<(usize, usize), usize>,
}

impl StrategyTable {
    pub fn kind(&self) -> StrategyKind {
        if self.modes == 1 {
            StrategyKind::Memoryless
        } else {
            StrategyKind::ModeSwitching
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn choose(&self, mode: usize, state: usize) -> Option<usize> {
        self.choice.get(&(mode, state)).copied()
    }

    /// Mode after playing a move from `state` while in `mode`.
    pub fn advance_mode(&self, mode: usize, state: usize, goals: &GoalFamily) -> usize {
        if goals.get(mode).contains(state) {
            (mode + 1) % self.modes
        } else {
            mode
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.choice.iter().map(|(&(m, s), &mv)| (m, s, mv))
    }
}

/// Extract the finite-memory winning strategy from `w`, which the caller
/// obtained from [`compute_w`] (re-checked here). For each mode `i` and
/// Alice state in `H_i(W)` the move keeps the play surely in `W` with a
/// positive-probability step toward `R_i ∪ H_i(W)`; elsewhere in `W` it
/// re-enters `⋂_i H_i(W)`. Ties are broken toward the smallest move id.
pub fn extract_strategy(
    arena: &FiniteArena,
    goals: &GoalFamily,
    w: &StateSet,
) -> Result<StrategyTable, ArenaError> {
    if *w != compute_w(arena, goals) {
        return Err(ArenaError::NotTheWinningSet);
    }
    let r = goals.r();
    let h: Vec<StateSet> = (0..r).map(|i| compute_hi(arena, w, goals.get(i))).collect();
    let h_all = h.iter().fold(w.clone(), |acc, hi| acc.intersect(hi));
    let mut choice = BTreeMap::new();
    for mode in 0..r {
        for c in w.iter() {
            if arena.owner(c) != Player::Alice {
                continue;
            }
            let target = goals.get(mode).union(&h[mode]);
            let mv = if h[mode].contains(c) {
                arena.witness_move(c, w, &target)
            } else {
                // Post[m](c) ⊆ ⋂_i H_i(W); any successor set meets Conf.
                arena.witness_move(c, &h_all, &arena.full_set())
            };
            match mv {
                Some(m) => {
                    choice.insert((mode, c), m);
                }
                None => {
                    return Err(ArenaError::NoQualifyingMove {
                        state: arena.state_name(c).to_string(),
                        mode: mode + 1,
                    })
                }
            }
        }
    }
    Ok(StrategyTable { modes: r, choice })
}

/// Exact soundness check: the extracted strategy wins almost surely from
/// every state of `w` against every memoryless Bob strategy, decided by
/// BSCC analysis of each induced mode-product chain.
pub fn strategy_wins_against_all_bob(
    arena: &FiniteArena,
    goals: &GoalFamily,
    table: &StrategyTable,
    w: &StateSet,
) -> bool {
    let r = goals.r();
    let bob_slots: Vec<usize> =
        (0..arena.num_states()).filter(|&s| arena.owner(s) == Player::Bob).collect();
    let bob_counts: Vec<usize> = bob_slots.iter().map(|&s| arena.moves(s).len()).collect();
    let mut slot_of = vec![usize::MAX; arena.num_states()];
    for (i, &s) in bob_slots.iter().enumerate() {
        slot_of[s] = i;
    }
    for tau in Assignments::new(bob_counts) {
        let (adj, goal) = product_chain(
            arena,
            goals,
            |c, m| table.choose(m, c).expect("strategy defined on W"),
            |c, _| tau[slot_of[c]],
            Some(w),
        );
        let win = almost_sure_buchi(&adj, &goal);
        for c in w.iter() {
            if !win[c * r] {
                return false;
            }
        }
    }
    true
}
