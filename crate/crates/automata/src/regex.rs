//! A small POSIX-like regular expression grammar for describing channel
//! languages:
//!
//! ```text
//! alt    := concat ('|' concat)*
//! concat := piece*
//! piece  := atom '*'*
//! atom   := <letter> | '.' | '(' alt ')'
//! ```
//!
//! `.` matches any single letter of the alphabet, `()` denotes the empty
//! word, and the empty expression also denotes the empty word. Letters must
//! be single characters drawn from the caller-supplied alphabet.

use thiserror::Error;

use crate::dfa::Dfa;
use crate::nfa::Nfa;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegexError {
    #[error("unexpected character '{0}' at position {1}")]
    Unexpected(char, usize),
    #[error("letter '{0}' at position {1} is not in the alphabet")]
    UnknownLetter(char, usize),
    #[error("unbalanced parenthesis at position {0}")]
    Unbalanced(usize),
    #[error("dangling '*' at position {0}")]
    DanglingStar(usize),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a [char],
    nfa: Nfa,
}

/// A fragment with one entry and one exit state.
#[derive(Clone, Copy)]
struct Frag {
    start: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &str, alphabet: &'a [char]) -> Self {
        Parser {
            chars: input.chars().collect(),
            pos: 0,
            alphabet,
            nfa: Nfa::new(alphabet.len()),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn frag_eps(&mut self) -> Frag {
        let s = self.nfa.add_state(false);
        Frag { start: s, end: s }
    }

    fn frag_letter(&mut self, a: usize) -> Frag {
        let s = self.nfa.add_state(false);
        let e = self.nfa.add_state(false);
        self.nfa.add_transition(s, a, e);
        Frag { start: s, end: e }
    }

    fn frag_any(&mut self) -> Frag {
        let s = self.nfa.add_state(false);
        let e = self.nfa.add_state(false);
        for a in 0..self.alphabet.len() {
            self.nfa.add_transition(s, a, e);
        }
        Frag { start: s, end: e }
    }

    fn alt(&mut self) -> Result<Frag, RegexError> {
        let mut frags = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            frags.push(self.concat()?);
        }
        if frags.len() == 1 {
            return Ok(frags[0]);
        }
        let start = self.nfa.add_state(false);
        let end = self.nfa.add_state(false);
        for f in frags {
            self.nfa.add_eps(start, f.start);
            self.nfa.add_eps(f.end, end);
        }
        Ok(Frag { start, end })
    }

    fn concat(&mut self) -> Result<Frag, RegexError> {
        let mut cur: Option<Frag> = None;
        loop {
            match self.peek() {
                None | Some('|') | Some(')') => break,
                Some('*') => return Err(RegexError::DanglingStar(self.pos)),
                _ => {}
            }
            let next = self.piece()?;
            cur = Some(match cur {
                None => next,
                Some(prev) => {
                    self.nfa.add_eps(prev.end, next.start);
                    Frag { start: prev.start, end: next.end }
                }
            });
        }
        Ok(match cur {
            Some(f) => f,
            None => self.frag_eps(),
        })
    }

    fn piece(&mut self) -> Result<Frag, RegexError> {
        let mut frag = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let start = self.nfa.add_state(false);
            let end = self.nfa.add_state(false);
            self.nfa.add_eps(start, frag.start);
            self.nfa.add_eps(frag.end, start);
            self.nfa.add_eps(start, end);
            frag = Frag { start, end };
        }
        Ok(frag)
    }

    fn atom(&mut self) -> Result<Frag, RegexError> {
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(RegexError::Unbalanced(open));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('.') => {
                self.pos += 1;
                Ok(self.frag_any())
            }
            Some(c) if c == '|' || c == ')' || c == '*' => {
                Err(RegexError::Unexpected(c, self.pos))
            }
            Some(c) => {
                let idx = self
                    .alphabet
                    .iter()
                    .position(|&x| x == c)
                    .ok_or(RegexError::UnknownLetter(c, self.pos))?;
                self.pos += 1;
                Ok(self.frag_letter(idx))
            }
            None => Ok(self.frag_eps()),
        }
    }
}

/// Parse a regular expression over `alphabet` into a canonical DFA.
pub fn parse_regex(input: &str, alphabet: &[char]) -> Result<Dfa, RegexError> {
    let mut p = Parser::new(input.trim(), alphabet);
    let frag = p.alt()?;
    if let Some(c) = p.peek() {
        return Err(if c == ')' {
            RegexError::Unbalanced(p.pos)
        } else {
            RegexError::Unexpected(c, p.pos)
        });
    }
    let mut nfa = p.nfa;
    nfa.set_initial(frag.start);
    nfa.set_accepting(frag.end, true);
    Ok(nfa.determinize())
}

/// Best-effort rendering of a DFA back into the regex grammar. Only simple
/// shapes are recognized; `None` means "no simple rendering".
pub fn render_simple(dfa: &Dfa, alphabet: &[char]) -> Option<String> {
    if dfa.is_empty() {
        return None; // the grammar has no notation for the empty language
    }
    if dfa.is_universal() {
        return Some(".*".to_string());
    }
    if dfa.is_finite() {
        // Finite language: union of its words. Bound the enumeration by the
        // state count, which exceeds the longest accepted word.
        let words = dfa.words_up_to(dfa.num_states());
        if words.len() <= 8 {
            let rendered: Vec<String> = words
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "()".to_string()
                    } else {
                        w.iter().map(|&a| alphabet[a]).collect()
                    }
                })
                .collect();
            return Some(rendered.join("|"));
        }
    }
    // Single-letter star: a* accepts exactly the all-a words.
    for a in 0..alphabet.len() {
        let mut trans = vec![vec![0usize; alphabet.len()]; 2];
        for b in 0..alphabet.len() {
            trans[0][b] = if b == a { 0 } else { 1 };
            trans[1][b] = 1;
        }
        let star = Dfa::from_parts(alphabet.len(), 0, vec![true, false], trans).canonicalize();
        if *dfa == star {
            return Some(format!("{}*", alphabet[a]));
        }
    }
    None
}
