//! Line-oriented DFA dump format:
//!
//! ```text
//! states 3
//! initial 0
//! accepting 0 2
//! trans 0 a 1
//! trans 0 b 2
//! ...
//! ```
//!
//! Every `(state, letter)` pair must have exactly one `trans` line; the
//! parser rejects partial tables so the result is a complete DFA.

use thiserror::Error;

use crate::dfa::Dfa;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DumpError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing '{0}' declaration")]
    Missing(&'static str),
    #[error("state {src} has no transition on '{letter}'")]
    Incomplete { src: usize, letter: char },
}

pub fn print_dfa(dfa: &Dfa, alphabet: &[char]) -> String {
    assert_eq!(alphabet.len(), dfa.alphabet_size());
    let mut out = String::new();
    out.push_str(&format!("states {}\n", dfa.num_states()));
    out.push_str(&format!("initial {}\n", dfa.initial()));
    let acc: Vec<String> = (0..dfa.num_states())
        .filter(|&s| dfa.is_accepting(s))
        .map(|s| s.to_string())
        .collect();
    out.push_str(&format!("accepting {}\n", acc.join(" ")));
    for s in 0..dfa.num_states() {
        for (a, &ch) in alphabet.iter().enumerate() {
            out.push_str(&format!("trans {} {} {}\n", s, ch, dfa.next(s, a)));
        }
    }
    out
}

/// Parse the dump format. `lines` may contain `#` comments and blank lines.
pub fn parse_dfa(text: &str, alphabet: &[char]) -> Result<Dfa, DumpError> {
    let mut num_states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Option<Vec<usize>> = None;
    let mut trans: Vec<(usize, usize, usize, usize)> = Vec::new(); // (line, src, letter, dst)

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| DumpError::Line(lineno, msg);
        match toks[0] {
            "states" => {
                if toks.len() != 2 {
                    return Err(err("expected: states <n>".into()));
                }
                let n: usize =
                    toks[1].parse().map_err(|_| err(format!("bad count '{}'", toks[1])))?;
                if n == 0 {
                    return Err(err("state count must be positive".into()));
                }
                num_states = Some(n);
            }
            "initial" => {
                if toks.len() != 2 {
                    return Err(err("expected: initial <state>".into()));
                }
                initial =
                    Some(toks[1].parse().map_err(|_| err(format!("bad state '{}'", toks[1])))?);
            }
            "accepting" => {
                let mut acc = Vec::new();
                for t in &toks[1..] {
                    acc.push(t.parse().map_err(|_| err(format!("bad state '{t}'")))?);
                }
                accepting = Some(acc);
            }
            "trans" => {
                if toks.len() != 4 {
                    return Err(err("expected: trans <src> <letter> <dst>".into()));
                }
                let src: usize =
                    toks[1].parse().map_err(|_| err(format!("bad state '{}'", toks[1])))?;
                let letter_str = toks[2];
                let mut chars = letter_str.chars();
                let (ch, rest) = (chars.next(), chars.next());
                if rest.is_some() || ch.is_none() {
                    return Err(err(format!("letter '{letter_str}' must be one character")));
                }
                let ch = ch.unwrap();
                let letter = alphabet
                    .iter()
                    .position(|&x| x == ch)
                    .ok_or_else(|| err(format!("letter '{ch}' not in alphabet")))?;
                let dst: usize =
                    toks[3].parse().map_err(|_| err(format!("bad state '{}'", toks[3])))?;
                trans.push((lineno, src, letter, dst));
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }

    let n = num_states.ok_or(DumpError::Missing("states"))?;
    let initial = initial.ok_or(DumpError::Missing("initial"))?;
    let accepting_list = accepting.ok_or(DumpError::Missing("accepting"))?;
    if initial >= n {
        return Err(DumpError::Line(0, format!("initial state {initial} out of range")));
    }
    let mut acc = vec![false; n];
    for s in accepting_list {
        if s >= n {
            return Err(DumpError::Line(0, format!("accepting state {s} out of range")));
        }
        acc[s] = true;
    }
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; n];
    for (lineno, src, letter, dst) in trans {
        if src >= n || dst >= n {
            return Err(DumpError::Line(lineno, "transition state out of range".into()));
        }
        if table[src][letter].replace(dst).is_some() {
            return Err(DumpError::Line(lineno, "duplicate transition".into()));
        }
    }
    let mut full = Vec::with_capacity(n);
    for (src, row) in table.into_iter().enumerate() {
        let mut out_row = Vec::with_capacity(alphabet.len());
        for (a, entry) in row.into_iter().enumerate() {
            match entry {
                Some(dst) => out_row.push(dst),
                None => return Err(DumpError::Incomplete { src, letter: alphabet[a] }),
            }
        }
        full.push(out_row);
    }
    Ok(Dfa::from_parts(alphabet.len(), initial, acc, full))
}
