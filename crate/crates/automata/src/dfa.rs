//! Deterministic finite automata over a small indexed alphabet.
//!
//! Letters are `usize` indices `0..alphabet`; callers keep the mapping from
//! letter index to display character. Every `Dfa` is *complete*: the
//! transition function is total, so complementation is a flip of the
//! accepting vector.
//!
//! [`Dfa::canonicalize`] produces the unique minimal automaton with states
//! numbered in BFS order from the initial state (letters in ascending
//! order). Two canonical automata recognize the same language if and only if
//! they are structurally equal, which is what the derived `PartialEq`/`Ord`
//! implementations compare.

use std::collections::BTreeMap;
use std::collections::VecDeque;

/// A complete deterministic finite automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dfa {
    alphabet: usize,
    initial: usize,
    accepting: Vec<bool>,
    /// `trans[state][letter]` is the successor state.
    trans: Vec<Vec<usize>>,
}

impl Dfa {
    /// Build from raw parts. Panics if a row has the wrong arity or a
    /// transition target is out of range.
    pub fn from_parts(
        alphabet: usize,
        initial: usize,
        accepting: Vec<bool>,
        trans: Vec<Vec<usize>>,
    ) -> Self {
        let n = accepting.len();
        assert!(n > 0, "automaton needs at least one state");
        assert!(initial < n, "initial state out of range");
        assert_eq!(trans.len(), n, "transition table arity mismatch");
        for row in &trans {
            assert_eq!(row.len(), alphabet, "transition row arity mismatch");
            for &t in row {
                assert!(t < n, "transition target out of range");
            }
        }
        Dfa { alphabet, initial, accepting, trans }
    }

    /// The automaton accepting no word.
    pub fn empty(alphabet: usize) -> Self {
        Dfa {
            alphabet,
            initial: 0,
            accepting: vec![false],
            trans: vec![vec![0; alphabet]],
        }
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: usize) -> Self {
        Dfa {
            alphabet,
            initial: 0,
            accepting: vec![true],
            trans: vec![vec![0; alphabet]],
        }
    }

    /// The automaton accepting only the empty word.
    pub fn epsilon(alphabet: usize) -> Self {
        Dfa::word(alphabet, &[])
    }

    /// The automaton accepting exactly `word`.
    pub fn word(alphabet: usize, word: &[usize]) -> Self {
        let n = word.len() + 2; // chain plus dead state
        let dead = n - 1;
        let mut trans = vec![vec![dead; alphabet]; n];
        for (i, &a) in word.iter().enumerate() {
            assert!(a < alphabet, "letter out of range");
            trans[i][a] = i + 1;
        }
        let mut accepting = vec![false; n];
        accepting[word.len()] = true;
        Dfa { alphabet, initial: 0, accepting, trans }.canonicalize()
    }

    /// The automaton accepting the single-letter word `a`.
    pub fn letter(alphabet: usize, a: usize) -> Self {
        Dfa::word(alphabet, &[a])
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.trans[state][letter]
    }

    /// Run the automaton on `word` and report acceptance.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut s = self.initial;
        for &a in word {
            s = self.trans[s][a];
        }
        self.accepting[s]
    }

    /// Language complement (relative to all words over the alphabet).
    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for b in out.accepting.iter_mut() {
            *b = !*b;
        }
        out.canonicalize()
    }

    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, other.initial);
        ids.insert(start, 0);
        order.push(start);
        queue.push_back(start);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet);
            for a in 0..self.alphabet {
                let succ = (self.trans[p][a], other.trans[q][a]);
                let id = *ids.entry(succ).or_insert_with(|| {
                    order.push(succ);
                    queue.push_back(succ);
                    order.len() - 1
                });
                row.push(id);
            }
            trans.push(row);
        }
        let accepting = order
            .iter()
            .map(|&(p, q)| accept(self.accepting[p], other.accepting[q]))
            .collect();
        Dfa { alphabet: self.alphabet, initial: 0, accepting, trans }.canonicalize()
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x || y)
    }

    /// Words of `self` not in `other`.
    pub fn difference(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x && !y)
    }

    pub fn is_empty(&self) -> bool {
        !self.reachable().iter().enumerate().any(|(s, &r)| r && self.accepting[s])
    }

    pub fn is_universal(&self) -> bool {
        self.complement().is_empty()
    }

    /// Language inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Dfa) -> bool {
        self.difference(other).is_empty()
    }

    /// Language equality (decided structurally once both sides are canonical).
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Right quotient by a single letter: `{ w | w·a ∈ L }`.
    ///
    /// A state becomes accepting exactly when its `a`-successor accepts.
    pub fn quotient_right(&self, a: usize) -> Dfa {
        assert!(a < self.alphabet);
        let accepting = (0..self.num_states())
            .map(|s| self.accepting[self.trans[s][a]])
            .collect();
        Dfa {
            alphabet: self.alphabet,
            initial: self.initial,
            accepting,
            trans: self.trans.clone(),
        }
        .canonicalize()
    }

    /// Left concatenation with a single letter: `{ a·w | w ∈ L }`.
    pub fn prepend(&self, a: usize) -> Dfa {
        assert!(a < self.alphabet);
        let n = self.num_states();
        // Append a fresh initial state and a dead state.
        let fresh = n;
        let dead = n + 1;
        let mut trans = self.trans.clone();
        let mut accepting = self.accepting.clone();
        let mut fresh_row = vec![dead; self.alphabet];
        fresh_row[a] = self.initial;
        trans.push(fresh_row);
        accepting.push(false);
        trans.push(vec![dead; self.alphabet]);
        accepting.push(false);
        Dfa { alphabet: self.alphabet, initial: fresh, accepting, trans }.canonicalize()
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            for a in 0..self.alphabet {
                let t = self.trans[s][a];
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Minimize (Moore partition refinement on the reachable part) and
    /// renumber states in BFS order from the initial state. The result is
    /// the canonical automaton for the language.
    pub fn canonicalize(&self) -> Dfa {
        // Restrict to reachable states.
        let reach = self.reachable();
        let mut compact = vec![usize::MAX; self.num_states()];
        let mut old_of: Vec<usize> = Vec::new();
        for (s, &r) in reach.iter().enumerate() {
            if r {
                compact[s] = old_of.len();
                old_of.push(s);
            }
        }
        let n = old_of.len();
        let acc: Vec<bool> = old_of.iter().map(|&s| self.accepting[s]).collect();
        let tr: Vec<Vec<usize>> = old_of
            .iter()
            .map(|&s| (0..self.alphabet).map(|a| compact[self.trans[s][a]]).collect())
            .collect();

        // Moore refinement: block ids start from the accepting split.
        let mut block: Vec<usize> = acc.iter().map(|&b| usize::from(b)).collect();
        let mut num_blocks = 2;
        loop {
            let mut sig_ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next: Vec<usize> = Vec::with_capacity(n);
            for s in 0..n {
                let sig = (block[s], (0..self.alphabet).map(|a| block[tr[s][a]]).collect());
                let id = sig_ids.len();
                let id = *sig_ids.entry(sig).or_insert(id);
                next.push(id);
            }
            let new_blocks = sig_ids.len();
            if new_blocks == num_blocks {
                block = next;
                break;
            }
            num_blocks = new_blocks;
            block = next;
        }

        // One representative per block.
        let mut rep: Vec<Option<usize>> = vec![None; num_blocks];
        for s in 0..n {
            rep[block[s]].get_or_insert(s);
        }
        let min_initial = block[compact[self.initial]];
        let min_trans: Vec<Vec<usize>> = (0..num_blocks)
            .map(|b| {
                let s = rep[b].unwrap();
                (0..self.alphabet).map(|a| block[tr[s][a]]).collect()
            })
            .collect();
        let min_acc: Vec<bool> = (0..num_blocks).map(|b| acc[rep[b].unwrap()]).collect();

        // BFS renumbering for the canonical form. Every block is reachable
        // from the initial block because we started from reachable states.
        let m = num_blocks;
        let mut number = vec![usize::MAX; m];
        let mut order = Vec::with_capacity(m);
        let mut queue = VecDeque::new();
        number[min_initial] = 0;
        order.push(min_initial);
        queue.push_back(min_initial);
        while let Some(s) = queue.pop_front() {
            for a in 0..self.alphabet {
                let t = min_trans[s][a];
                if number[t] == usize::MAX {
                    number[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let trans = order
            .iter()
            .map(|&s| (0..self.alphabet).map(|a| number[min_trans[s][a]]).collect())
            .collect();
        let accepting = order.iter().map(|&s| min_acc[s]).collect();
        Dfa { alphabet: self.alphabet, initial: 0, accepting, trans }
    }

    /// All accepted words of length at most `max_len`, in length-then-lex
    /// order. Test and debugging helper; exponential in `max_len`.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), self.initial)];
        if self.accepting[self.initial] {
            out.push(Vec::new());
        }
        for _ in 0..max_len {
            let mut next_layer = Vec::with_capacity(layer.len() * self.alphabet);
            for (w, s) in layer {
                for a in 0..self.alphabet {
                    let t = self.trans[s][a];
                    let mut w2 = w.clone();
                    w2.push(a);
                    if self.accepting[t] {
                        out.push(w2.clone());
                    }
                    next_layer.push((w2, t));
                }
            }
            layer = next_layer;
        }
        out
    }

    /// True when the language is finite (no accepting state is reachable
    /// from a cycle that is itself reachable).
    pub fn is_finite(&self) -> bool {
        // A DFA accepts an infinite language iff some state on a cycle can
        // reach an accepting state. Look for a cycle among "live" states
        // (states from which an accepting state is reachable).
        let n = self.num_states();
        let reach = self.reachable();
        let mut live = self.accepting.clone();
        loop {
            let mut changed = false;
            for s in 0..n {
                if !live[s] && (0..self.alphabet).any(|a| live[self.trans[s][a]]) {
                    live[s] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // DFS cycle detection restricted to reachable live states.
        let mut color = vec![0u8; n]; // 0 white, 1 grey, 2 black
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for s0 in 0..n {
            if !reach[s0] || !live[s0] || color[s0] != 0 {
                continue;
            }
            color[s0] = 1;
            stack.push((s0, 0));
            while let Some(&mut (s, ref mut a)) = stack.last_mut() {
                if *a == self.alphabet {
                    color[s] = 2;
                    stack.pop();
                    continue;
                }
                let t = self.trans[s][*a];
                *a += 1;
                if !live[t] {
                    continue;
                }
                match color[t] {
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_of(dfa: &Dfa, len: usize) -> Vec<Vec<usize>> {
        dfa.words_up_to(len)
    }

    #[test]
    fn constructors() {
        let e = Dfa::empty(2);
        assert!(e.is_empty());
        assert!(!e.accepts(&[]));
        let u = Dfa::universal(2);
        assert!(u.is_universal());
        assert!(u.accepts(&[0, 1, 0]));
        let eps = Dfa::epsilon(2);
        assert!(eps.accepts(&[]));
        assert!(!eps.accepts(&[0]));
        let w = Dfa::word(2, &[0, 1]);
        assert!(w.accepts(&[0, 1]));
        assert!(!w.accepts(&[0]));
        assert!(!w.accepts(&[0, 1, 1]));
    }

    #[test]
    fn boolean_ops_match_set_semantics() {
        let ab = Dfa::word(2, &[0, 1]);
        let a = Dfa::word(2, &[0]);
        let both = ab.union(&a);
        assert_eq!(set_of(&both, 3), vec![vec![0], vec![0, 1]]);
        let inter = ab.intersect(&a);
        assert!(inter.is_empty());
        let diff = both.difference(&a);
        assert!(diff.equivalent(&ab));
        assert!(ab.complement().complement().equivalent(&ab));
    }

    #[test]
    fn canonical_equality_is_language_equality() {
        // Two structurally different automata for the same language a·b.
        let one = Dfa::word(2, &[0, 1]);
        let padded = Dfa::from_parts(
            2,
            0,
            vec![false, false, true, false, false],
            vec![
                vec![1, 3],
                vec![3, 2],
                vec![3, 3],
                vec![3, 3],
                vec![4, 4], // unreachable
            ],
        );
        assert_eq!(one, padded.canonicalize());
    }

    #[test]
    fn quotient_and_prepend() {
        // (ab)* : every nonempty accepted word ends in b, so the right
        // quotient by a is empty.
        let ab_star = Dfa::from_parts(2, 0, vec![true, false, false], vec![
            vec![1, 2],
            vec![2, 0],
            vec![2, 2],
        ]);
        assert!(ab_star.quotient_right(0).is_empty());

        // Σ*a quotient by a is Σ*.
        let sigma_star_a = Dfa::from_parts(2, 0, vec![false, true], vec![vec![1, 0], vec![1, 0]]);
        assert!(sigma_star_a.quotient_right(0).is_universal());

        // prepend(a, b*) = a·b*
        let b_star = Dfa::from_parts(2, 0, vec![true, false], vec![vec![1, 0], vec![1, 1]]);
        let ab_star2 = b_star.prepend(0);
        assert!(ab_star2.accepts(&[0]));
        assert!(ab_star2.accepts(&[0, 1, 1]));
        assert!(!ab_star2.accepts(&[]));
        assert!(!ab_star2.accepts(&[1]));
    }

    #[test]
    fn finiteness() {
        assert!(Dfa::word(2, &[0, 1]).is_finite());
        assert!(Dfa::empty(2).is_finite());
        assert!(!Dfa::universal(2).is_finite());
        let b_star = Dfa::from_parts(2, 0, vec![true, false], vec![vec![1, 0], vec![1, 1]]);
        assert!(!b_star.is_finite());
    }
}
