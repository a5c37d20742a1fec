//! An independent brute-force oracle for the almost-sure generalized Büchi
//! winning set on small arenas.
//!
//! The generalized objective is reduced to a simple Büchi objective on the
//! mode-product arena (states × goal indexes, the index advancing when the
//! play leaves a state of the current goal set). The oracle enumerates pure
//! memoryless Alice strategies on the product and pure memoryless Bob
//! strategies on the original arena, analyses the finite Markov chain of
//! every profile by BSCC reachability, and keeps the states from which some
//! Alice strategy wins against all Bob strategies.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{ArenaError, FiniteArena, GoalFamily, Player, StateSet};

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Upper bound on strategy profiles (chain analyses) per arena.
    pub max_profiles: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_profiles: 200_000 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration budget exceeded: {needed} profiles, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// Iterator over all assignments `slot -> choice` with `counts[slot]`
/// choices per slot. Yields exactly one empty assignment when there are no
/// slots.
pub(crate) struct Assignments {
    counts: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl Assignments {
    pub(crate) fn new(counts: Vec<usize>) -> Self {
        let cur = if counts.iter().all(|&c| c > 0) {
            Some(vec![0; counts.len()])
        } else {
            None
        };
        Assignments { counts, cur }
    }
}

impl Iterator for Assignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.as_mut()?;
        let out = cur.clone();
        // Odometer increment.
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.counts[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Build the Markov chain induced on the mode product by a strategy
/// profile. Product state `c*r + m` couples arena state `c` with the index
/// `m` of the goal currently owed; leaving a state of `R_m` advances the
/// index. The Büchi goal is "about to wrap": `m = r-1` and `c ∈ R_{r-1}`.
///
/// With `restrict` set, states outside the set become self-loops; the
/// strategies are then only consulted inside it.
pub(crate) fn product_chain(
    arena: &FiniteArena,
    goals: &GoalFamily,
    alice: impl Fn(usize, usize) -> usize,
    bob: impl Fn(usize, usize) -> usize,
    restrict: Option<&StateSet>,
) -> (Vec<Vec<usize>>, Vec<bool>) {
    let n = arena.num_states();
    let r = goals.r();
    let mut adj = Vec::with_capacity(n * r);
    let mut goal = Vec::with_capacity(n * r);
    for c in 0..n {
        for m in 0..r {
            let pid = c * r + m;
            if let Some(set) = restrict {
                if !set.contains(c) {
                    adj.push(vec![pid]);
                    goal.push(false);
                    continue;
                }
            }
            let mv = match arena.owner(c) {
                Player::Alice => alice(c, m),
                Player::Bob => bob(c, m),
            };
            let m2 = if goals.get(m).contains(c) { (m + 1) % r } else { m };
            adj.push(arena.moves(c)[mv].support().map(|d| d * r + m2).collect());
            goal.push(m == r - 1 && goals.get(r - 1).contains(c));
        }
    }
    (adj, goal)
}

/// Strongly connected components; returns `(component id per node, count)`.
fn sccs(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut scc_id = vec![usize::MAX; n];
    let mut next_index = 0usize;
    let mut count = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for s0 in 0..n {
        if index[s0] != usize::MAX {
            continue;
        }
        index[s0] = next_index;
        low[s0] = next_index;
        next_index += 1;
        stack.push(s0);
        on_stack[s0] = true;
        call.push((s0, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        scc_id[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (scc_id, count)
}

/// For every start state of a finite chain: does the play visit `goal`
/// infinitely often almost surely? Graph-only criterion: every bottom SCC
/// reachable from the start intersects the goal.
pub(crate) fn almost_sure_buchi(adj: &[Vec<usize>], goal: &[bool]) -> Vec<bool> {
    let n = adj.len();
    let (scc_id, count) = sccs(adj);
    let mut bottom = vec![true; count];
    let mut has_goal = vec![false; count];
    for v in 0..n {
        for &w in &adj[v] {
            if scc_id[w] != scc_id[v] {
                bottom[scc_id[v]] = false;
            }
        }
        if goal[v] {
            has_goal[scc_id[v]] = true;
        }
    }
    // Backward reachability from states in bad bottom components.
    let mut radj = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &adj[v] {
            radj[w].push(v);
        }
    }
    let mut reaches_bad = vec![false; n];
    let mut queue: Vec<usize> =
        (0..n).filter(|&v| bottom[scc_id[v]] && !has_goal[scc_id[v]]).collect();
    for &v in &queue {
        reaches_bad[v] = true;
    }
    while let Some(v) = queue.pop() {
        for &u in &radj[v] {
            if !reaches_bad[u] {
                reaches_bad[u] = true;
                queue.push(u);
            }
        }
    }
    reaches_bad.iter().map(|&b| !b).collect()
}

/// A finite Markov chain with exact rational rows.
#[derive(Debug, Clone)]
pub struct MarkovChain {
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl MarkovChain {
    pub fn new(rows: Vec<Vec<(usize, BigRational)>>) -> Result<Self, ArenaError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            let bad = |reason: String| ArenaError::BadChainRow { row: i, reason };
            if row.is_empty() {
                return Err(bad("empty row".into()));
            }
            let mut sum = BigRational::zero();
            for (t, p) in row {
                if *t >= n {
                    return Err(bad(format!("target {t} out of range")));
                }
                if *p <= BigRational::zero() {
                    return Err(bad("probabilities must be positive".into()));
                }
                sum += p;
            }
            if sum != BigRational::one() {
                return Err(bad(format!("row sums to {sum}, expected 1")));
            }
        }
        Ok(MarkovChain { rows })
    }

    pub fn num_states(&self) -> usize {
        self.rows.len()
    }

    pub fn support(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|row| row.iter().map(|(t, _)| *t).collect()).collect()
    }
}

/// True iff from `start` the chain visits `goal` infinitely often with
/// probability one: every reachable bottom SCC intersects `goal`.
pub fn bscc_almost_sure(mc: &MarkovChain, start: usize, goal: &StateSet) -> bool {
    let adj = mc.support();
    let goal_mask: Vec<bool> = (0..mc.num_states()).map(|s| goal.contains(s)).collect();
    almost_sure_buchi(&adj, &goal_mask)[start]
}

fn oracle_impl(
    arena: &FiniteArena,
    goals: &GoalFamily,
    opts: &OracleOptions,
    mode_aware_bob: bool,
) -> Result<StateSet, OracleError> {
    let n = arena.num_states();
    let r = goals.r();

    // Alice chooses per (state, mode); Bob per state, or per (state, mode)
    // in the stress variant.
    let alice_slots: Vec<(usize, usize)> = (0..n)
        .filter(|&s| arena.owner(s) == Player::Alice)
        .flat_map(|s| (0..r).map(move |m| (s, m)))
        .collect();
    let bob_states: Vec<usize> = (0..n).filter(|&s| arena.owner(s) == Player::Bob).collect();
    let bob_slots: Vec<(usize, usize)> = if mode_aware_bob {
        bob_states.iter().flat_map(|&s| (0..r).map(move |m| (s, m))).collect()
    } else {
        bob_states.iter().map(|&s| (s, 0)).collect()
    };

    let alice_counts: Vec<usize> = alice_slots.iter().map(|&(s, _)| arena.moves(s).len()).collect();
    let bob_counts: Vec<usize> = bob_slots.iter().map(|&(s, _)| arena.moves(s).len()).collect();

    let needed: u128 = alice_counts
        .iter()
        .chain(bob_counts.iter())
        .map(|&c| c as u128)
        .product();
    if needed > opts.max_profiles {
        return Err(OracleError::BudgetExceeded { needed, budget: opts.max_profiles });
    }

    let mut alice_slot = vec![usize::MAX; n * r];
    for (i, &(s, m)) in alice_slots.iter().enumerate() {
        alice_slot[s * r + m] = i;
    }
    let mut bob_slot = vec![usize::MAX; n * r];
    for (i, &(s, m)) in bob_slots.iter().enumerate() {
        bob_slot[s * r + m] = i;
    }

    let mut winning = vec![false; n * r];
    for sigma in Assignments::new(alice_counts) {
        let mut win_sigma = vec![true; n * r];
        for tau in Assignments::new(bob_counts.clone()) {
            let (adj, goal) = product_chain(
                arena,
                goals,
                |c, m| sigma[alice_slot[c * r + m]],
                |c, m| {
                    let m = if mode_aware_bob { m } else { 0 };
                    tau[bob_slot[c * r + m]]
                },
                None,
            );
            let almost_sure = almost_sure_buchi(&adj, &goal);
            for (w, a) in win_sigma.iter_mut().zip(&almost_sure) {
                *w = *w && *a;
            }
            // This strategy can no longer add anything at mode 0: move on.
            if (0..n).all(|c| !win_sigma[c * r] || winning[c * r]) {
                break;
            }
        }
        for (acc, w) in winning.iter_mut().zip(&win_sigma) {
            *acc = *acc || *w;
        }
    }
    Ok((0..n).filter(|&c| winning[c * r]).collect())
}

/// Brute-force winning set: states from which some enumerated Alice
/// strategy is almost-surely winning against every enumerated Bob strategy,
/// projected at the first mode. Bob strategies are memoryless on the
/// original arena; a Rabin-type spoiling objective needs no mode memory
/// (stress-tested separately by [`oracle_win_mode_aware_bob`]).
pub fn oracle_win(
    arena: &FiniteArena,
    goals: &GoalFamily,
    opts: &OracleOptions,
) -> Result<StateSet, OracleError> {
    oracle_impl(arena, goals, opts, false)
}

/// Stress variant of [`oracle_win`] where Bob's strategies may also depend
/// on the current mode. Exponentially more profiles; intended for small
/// arenas only.
pub fn oracle_win_mode_aware_bob(
    arena: &FiniteArena,
    goals: &GoalFamily,
    opts: &OracleOptions,
) -> Result<StateSet, OracleError> {
    oracle_impl(arena, goals, opts, true)
}
