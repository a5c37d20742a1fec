//! Region file format. Two block syntaxes, freely mixed:
//!
//! ```text
//! # one regex per channel, comma-separated
//! q: a*b, .*
//! # bare location = all channel contents
//! p
//! # explicit DFA form
//! block q
//! channel c1
//! states 2
//! initial 0
//! accepting 1
//! trans 0 a 1
//! trans 0 b 0
//! trans 1 a 1
//! trans 1 b 1
//! channel c2
//! ...
//! end
//! ```
//!
//! The printer emits the regex form when every channel language has a
//! simple rendering, and the DFA form (with best-effort `# regex:` hints)
//! otherwise.

use std::sync::Arc;

use higman_automata::{parse_dfa, parse_regex, print_dfa, render_simple};
use thiserror::Error;

use super::{Block, ChannelLanguage, Region, Signature};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionTextError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("{0}")]
    Global(String),
}

fn err(line: usize, msg: impl Into<String>) -> RegionTextError {
    RegionTextError::Line(line, msg.into())
}

pub fn parse_region(text: &str, sig: &Arc<Signature>) -> Result<Region, RegionTextError> {
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut blocks = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (lineno, line) = &lines[i];
        if let Some(rest) = line.strip_prefix("block") {
            let loc_name = rest.trim();
            let location = sig
                .location_id(loc_name)
                .ok_or_else(|| err(*lineno, format!("unknown location '{loc_name}'")))?;
            i += 1;
            // Collect channel sections until `end`.
            let mut langs: Vec<Option<ChannelLanguage>> = vec![None; sig.num_channels()];
            while i < lines.len() && lines[i].1 != "end" {
                let (chl, chline) = &lines[i];
                let ch_name = chline
                    .strip_prefix("channel")
                    .ok_or_else(|| err(*chl, "expected 'channel <name>' or 'end'"))?
                    .trim();
                let ch = sig
                    .channel_id(ch_name)
                    .ok_or_else(|| err(*chl, format!("unknown channel '{ch_name}'")))?;
                if langs[ch].is_some() {
                    return Err(err(*chl, format!("channel '{ch_name}' given twice")));
                }
                i += 1;
                let mut dump = String::new();
                while i < lines.len()
                    && !lines[i].1.starts_with("channel")
                    && lines[i].1 != "end"
                {
                    dump.push_str(&lines[i].1);
                    dump.push('\n');
                    i += 1;
                }
                let dfa = parse_dfa(&dump, &sig.alphabet)
                    .map_err(|e| err(*chl, format!("bad automaton for '{ch_name}': {e}")))?;
                langs[ch] = Some(ChannelLanguage::from_dfa(dfa));
            }
            if i == lines.len() {
                return Err(err(*lineno, "unterminated block (missing 'end')"));
            }
            i += 1; // consume `end`
            let langs: Vec<ChannelLanguage> = langs
                .into_iter()
                .enumerate()
                .map(|(ch, l)| {
                    l.ok_or_else(|| {
                        err(*lineno, format!("block misses channel '{}'", sig.channels[ch]))
                    })
                })
                .collect::<Result<_, _>>()?;
            blocks.push(Block { location, langs });
        } else {
            // `<location>: regex, regex` or a bare `<location>`.
            let (loc_name, rest) = match line.split_once(':') {
                Some((l, r)) => (l.trim(), Some(r)),
                None => (line.as_str(), None),
            };
            let location = sig
                .location_id(loc_name)
                .ok_or_else(|| err(*lineno, format!("unknown location '{loc_name}'")))?;
            let langs: Vec<ChannelLanguage> = match rest {
                None => {
                    vec![ChannelLanguage::universal(sig.alphabet_size()); sig.num_channels()]
                }
                Some(r) => {
                    let parts: Vec<&str> = r.split(',').collect();
                    if parts.len() != sig.num_channels() {
                        return Err(err(
                            *lineno,
                            format!(
                                "expected {} comma-separated channel languages, got {}",
                                sig.num_channels(),
                                parts.len()
                            ),
                        ));
                    }
                    parts
                        .iter()
                        .map(|p| {
                            parse_regex(p.trim(), &sig.alphabet)
                                .map(ChannelLanguage::from_dfa)
                                .map_err(|e| err(*lineno, e.to_string()))
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            blocks.push(Block { location, langs });
            i += 1;
        }
    }
    Ok(Region::from_blocks(sig.clone(), blocks))
}

pub fn print_region(region: &Region) -> String {
    let sig = region.signature();
    let mut out = String::new();
    if region.is_empty() {
        out.push_str("# empty region\n");
        return out;
    }
    for block in region.blocks() {
        let renders: Vec<Option<String>> = block
            .langs
            .iter()
            .map(|l| render_simple(l.dfa(), &sig.alphabet))
            .collect();
        if renders.iter().all(|r| r.is_some()) {
            let parts: Vec<String> = renders.into_iter().map(|r| r.unwrap()).collect();
            out.push_str(&format!(
                "{}: {}\n",
                sig.locations[block.location],
                parts.join(", ")
            ));
        } else {
            out.push_str(&format!("block {}\n", sig.locations[block.location]));
            for (ch, l) in block.langs.iter().enumerate() {
                out.push_str(&format!("channel {}\n", sig.channels[ch]));
                if let Some(re) = render_simple(l.dfa(), &sig.alphabet) {
                    out.push_str(&format!("# regex: {re} (best-effort rendering)\n"));
                }
                out.push_str(&print_dfa(l.dfa(), &sig.alphabet));
            }
            out.push_str("end\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig2() -> Arc<Signature> {
        Arc::new(Signature::new(
            vec!["q0".into(), "q1".into()],
            vec!["c1".into(), "c2".into()],
            vec!['a', 'b'],
        ))
    }

    #[test]
    fn parse_regex_lines() {
        let sig = sig2();
        let r = parse_region("q0: a*b, .*\nq1\n", &sig).unwrap();
        assert!(r.contains(0, &[vec![1], vec![0, 1]]));
        assert!(!r.contains(0, &[vec![0], vec![]]));
        assert!(r.contains(1, &[vec![], vec![]]));
    }

    #[test]
    fn round_trip_via_print() {
        let sig = sig2();
        for text in [
            "q0: a*b, .*\n",
            "q0: (ab)*, b*\nq1: a|b, ()\n",
            "q1\n",
        ] {
            let r = parse_region(text, &sig).unwrap();
            let printed = print_region(&r);
            let back = parse_region(&printed, &sig).unwrap();
            assert!(r.equals(&back), "round trip failed for {text:?}:\n{printed}");
        }
    }

    #[test]
    fn empty_region_round_trip() {
        let sig = sig2();
        let r = Region::empty(sig.clone());
        let printed = print_region(&r);
        let back = parse_region(&printed, &sig).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn errors() {
        let sig = sig2();
        assert!(matches!(
            parse_region("nowhere: a, b\n", &sig),
            Err(RegionTextError::Line(1, _))
        ));
        assert!(matches!(
            parse_region("q0: a\n", &sig), // arity mismatch
            Err(RegionTextError::Line(1, _))
        ));
        assert!(matches!(
            parse_region("block q0\nchannel c1\nstates 1\ninitial 0\naccepting 0\ntrans 0 a 0\ntrans 0 b 0\n", &sig),
            Err(RegionTextError::Line(1, _)) // missing end
        ));
    }
}
