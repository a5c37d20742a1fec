//! Nondeterministic automata with ε-moves, plus the language
//! transformations that are natural to express nondeterministically:
//! supersequence closure, subword closure, and the preimage of the
//! letter-doubling transduction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::dfa::Dfa;

/// An NFA with ε-transitions. Used as an intermediate representation; the
/// public entry points all determinize back to [`Dfa`].
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: usize,
    initial: BTreeSet<usize>,
    accepting: Vec<bool>,
    /// `trans[state][letter]` is the successor set.
    trans: Vec<Vec<BTreeSet<usize>>>,
    eps: Vec<BTreeSet<usize>>,
}

impl Nfa {
    pub fn new(alphabet: usize) -> Self {
        Nfa {
            alphabet,
            initial: BTreeSet::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.trans.push(vec![BTreeSet::new(); self.alphabet]);
        self.eps.push(BTreeSet::new());
        self.accepting.len() - 1
    }

    pub fn set_initial(&mut self, state: usize) {
        self.initial.insert(state);
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) {
        self.trans[from][letter].insert(to);
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].insert(to);
    }

    /// Copy of a DFA as an NFA.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let mut nfa = Nfa::new(dfa.alphabet_size());
        for s in 0..dfa.num_states() {
            nfa.add_state(dfa.is_accepting(s));
        }
        for s in 0..dfa.num_states() {
            for a in 0..dfa.alphabet_size() {
                nfa.add_transition(s, a, dfa.next(s, a));
            }
        }
        nfa.set_initial(dfa.initial());
        nfa
    }

    fn eps_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &t in &self.eps[s] {
                if out.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        out
    }

    /// Subset construction with ε-closure; the result is canonical.
    pub fn determinize(&self) -> Dfa {
        let start = self.eps_closure(&self.initial);
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut order: Vec<BTreeSet<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert(start.clone(), 0);
        order.push(start.clone());
        queue.push_back(start);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        while let Some(cur) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet);
            for a in 0..self.alphabet {
                let mut succ = BTreeSet::new();
                for &s in &cur {
                    succ.extend(self.trans[s][a].iter().copied());
                }
                let succ = self.eps_closure(&succ);
                let id = if let Some(&id) = ids.get(&succ) {
                    id
                } else {
                    let id = order.len();
                    ids.insert(succ.clone(), id);
                    order.push(succ.clone());
                    queue.push_back(succ);
                    id
                };
                row.push(id);
            }
            trans.push(row);
        }
        let accepting = order
            .iter()
            .map(|set| set.iter().any(|&s| self.accepting[s]))
            .collect();
        Dfa::from_parts(self.alphabet, 0, accepting, trans).canonicalize()
    }
}

/// Supersequence closure: words that contain some word of `dfa` as a
/// scattered subsequence. On each letter the automaton may either advance
/// or ignore the letter in place.
pub fn up_closure(dfa: &Dfa) -> Dfa {
    let mut nfa = Nfa::from_dfa(dfa);
    for s in 0..dfa.num_states() {
        for a in 0..dfa.alphabet_size() {
            nfa.add_transition(s, a, s);
        }
    }
    nfa.determinize()
}

/// Subword closure: scattered subsequences of words of `dfa`. An ε-bypass
/// along every transition lets the automaton drop letters of a witness word.
pub fn down_closure(dfa: &Dfa) -> Dfa {
    let mut nfa = Nfa::from_dfa(dfa);
    for s in 0..dfa.num_states() {
        for a in 0..dfa.alphabet_size() {
            let t = dfa.next(s, a);
            nfa.add_eps(s, t);
        }
    }
    nfa.determinize()
}

/// Preimage of the letter-doubling transduction: words `u` such that
/// replacing each letter `a` of `u` by `a` or `aa` can produce a word of
/// `dfa`. Reading one letter of `u` advances the automaton by one or two
/// copies of that letter.
pub fn dup_preimage(dfa: &Dfa) -> Dfa {
    let mut nfa = Nfa::from_dfa(dfa);
    for s in 0..dfa.num_states() {
        for a in 0..dfa.alphabet_size() {
            let one = dfa.next(s, a);
            let two = dfa.next(one, a);
            nfa.add_transition(s, a, two);
        }
    }
    nfa.determinize()
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0 = a, 1 = b throughout.

    #[test]
    fn up_closure_of_ab() {
        let l = Dfa::word(2, &[0, 1]);
        let up = up_closure(&l);
        assert!(up.accepts(&[0, 1]));
        assert!(up.accepts(&[0, 0, 1, 1])); // aabb
        assert!(up.accepts(&[1, 0, 1])); // bab contains ab
        assert!(!up.accepts(&[1, 0])); // ba does not contain ab
        assert!(!up.accepts(&[0]));
    }

    #[test]
    fn down_closure_of_ab() {
        let l = Dfa::word(2, &[0, 1]);
        let down = down_closure(&l);
        let words = down.words_up_to(3);
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn closures_are_idempotent_and_extensive() {
        for w in [&[][..], &[0][..], &[0, 1][..], &[1, 1, 0][..]] {
            let l = Dfa::word(2, w).union(&Dfa::word(2, &[1]));
            let up = up_closure(&l);
            assert!(l.is_subset_of(&up));
            assert_eq!(up_closure(&up), up);
            let down = down_closure(&l);
            assert!(l.is_subset_of(&down));
            assert_eq!(down_closure(&down), down);
        }
    }

    #[test]
    fn dup_preimage_examples() {
        // aab: preimage is {ab, aab}.
        let l = Dfa::word(2, &[0, 0, 1]);
        let pre = dup_preimage(&l);
        assert_eq!(pre.words_up_to(4), vec![vec![0, 1], vec![0, 0, 1]]);
        // The universal language is a fixpoint.
        let u = Dfa::universal(2);
        assert!(dup_preimage(&u).is_universal());
    }

    #[test]
    fn determinize_empty_initial() {
        let mut nfa = Nfa::new(2);
        nfa.add_state(true);
        // no initial state: language is empty
        let dfa = nfa.determinize();
        assert!(dfa.is_empty());
    }
}
