//! Shared brute-force helpers for extensional checks.

#![allow(dead_code)]

pub fn all_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..alphabet {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Scattered-subsequence test: is `u` a subword of `v`?
pub fn is_subword(u: &[usize], v: &[usize]) -> bool {
    let mut it = v.iter();
    u.iter().all(|a| it.any(|b| b == a))
}

/// All words obtainable from `w` by replacing each letter `a` with `a` or
/// `aa`.
pub fn dup_expansions(w: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &a in w {
        out = out
            .into_iter()
            .flat_map(|e| {
                let mut one = e.clone();
                one.push(a);
                let mut two = e;
                two.push(a);
                two.push(a);
                [one, two]
            })
            .collect();
    }
    out
}

/// One perturbation step on a single word: each letter is dropped, kept, or
/// (when enabled) doubled. This is the support of the local-fault model.
pub fn perturbation_outcomes(w: &[usize], duplication: bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &a in w {
        out = out
            .into_iter()
            .flat_map(|e| {
                let mut opts = Vec::with_capacity(3);
                opts.push(e.clone()); // lost
                let mut kept = e.clone();
                kept.push(a);
                opts.push(kept);
                if duplication {
                    let mut doubled = e;
                    doubled.push(a);
                    doubled.push(a);
                    opts.push(doubled);
                }
                opts
            })
            .collect();
    }
    out.sort();
    out.dedup();
    out
}

/// Cartesian product of per-channel outcome lists.
pub fn tuple_product(per_channel: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for opts in per_channel {
        out = out
            .into_iter()
            .flat_map(|tuple| {
                opts.iter().map(move |o| {
                    let mut t = tuple.clone();
                    t.push(o.clone());
                    t
                })
            })
            .collect();
    }
    out
}
