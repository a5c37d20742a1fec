//! Regions: symbolic sets of channel-system configurations.
//!
//! A region is a finite union of blocks `{location} × L_1 × ... × L_d`,
//! one regular language per channel, kept in a normalized form: empty
//! blocks dropped, duplicate and absorbed blocks removed, blocks differing
//! in a single channel merged. Equality is decided by symmetric-difference
//! emptiness on top of canonical per-channel automata.
//!
//! Closures and the duplication preimage act channel-wise on blocks;
//! interiors go through complementation, which is computed per location by
//! intersecting disjoint block negations.

mod text;

pub use text::{parse_region, print_region, RegionTextError};

use std::sync::Arc;

use higman_automata::{down_closure, dup_preimage, up_closure, Dfa};

/// Locations, channels, and message alphabet shared by a channel system
/// and every region over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub locations: Vec<String>,
    pub channels: Vec<String>,
    pub alphabet: Vec<char>,
}

impl Signature {
    pub fn new(locations: Vec<String>, channels: Vec<String>, alphabet: Vec<char>) -> Self {
        Signature { locations, channels, alphabet }
    }

    pub fn location_id(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|l| l == name)
    }

    pub fn channel_id(&self, name: &str) -> Option<usize> {
        self.channels.iter().position(|c| c == name)
    }

    pub fn letter_id(&self, letter: char) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == letter)
    }

    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    /// Letter indexes of a textual channel word.
    pub fn word_letters(&self, word: &str) -> Result<Vec<usize>, String> {
        word.chars()
            .map(|c| self.letter_id(c).ok_or_else(|| format!("letter '{c}' not in alphabet")))
            .collect()
    }

    pub fn letters_word(&self, letters: &[usize]) -> String {
        letters.iter().map(|&i| self.alphabet[i]).collect()
    }
}

/// One channel's regular language, kept as a canonical (minimized,
/// BFS-numbered) DFA so that structural equality is language equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChannelLanguage(Dfa);

impl ChannelLanguage {
    pub fn from_dfa(dfa: Dfa) -> Self {
        ChannelLanguage(dfa.canonicalize())
    }

    pub fn universal(alphabet: usize) -> Self {
        ChannelLanguage(Dfa::universal(alphabet))
    }

    pub fn empty(alphabet: usize) -> Self {
        ChannelLanguage(Dfa::empty(alphabet))
    }

    pub fn epsilon(alphabet: usize) -> Self {
        ChannelLanguage(Dfa::epsilon(alphabet))
    }

    pub fn word(alphabet: usize, letters: &[usize]) -> Self {
        ChannelLanguage(Dfa::word(alphabet, letters))
    }

    pub fn dfa(&self) -> &Dfa {
        &self.0
    }

    pub fn contains(&self, letters: &[usize]) -> bool {
        self.0.accepts(letters)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_universal(&self) -> bool {
        self.0.is_universal()
    }

    pub fn union(&self, other: &Self) -> Self {
        ChannelLanguage(self.0.union(&other.0))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        ChannelLanguage(self.0.intersect(&other.0))
    }

    pub fn complement(&self) -> Self {
        ChannelLanguage(self.0.complement())
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0.is_subset_of(&other.0)
    }

    pub fn up_closure(&self) -> Self {
        ChannelLanguage(up_closure(&self.0))
    }

    pub fn down_closure(&self) -> Self {
        ChannelLanguage(down_closure(&self.0))
    }

    pub fn dup_preimage(&self) -> Self {
        ChannelLanguage(dup_preimage(&self.0))
    }

    /// `{ w | w·a ∈ L }`
    pub fn quotient_right_letter(&self, a: usize) -> Self {
        ChannelLanguage(self.0.quotient_right(a))
    }

    /// `{ a·w | w ∈ L }`
    pub fn prepend_letter(&self, a: usize) -> Self {
        ChannelLanguage(self.0.prepend(a))
    }
}

/// `{location} × L_1 × ... × L_d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    pub location: usize,
    pub langs: Vec<ChannelLanguage>,
}

impl Block {
    fn is_empty(&self) -> bool {
        self.langs.iter().any(|l| l.is_empty())
    }

    fn is_subset_of(&self, other: &Block) -> bool {
        self.location == other.location
            && self.langs.iter().zip(&other.langs).all(|(a, b)| a.is_subset_of(b))
    }
}

/// A finite union of location-tagged product blocks.
#[derive(Debug, Clone)]
pub struct Region {
    sig: Arc<Signature>,
    blocks: Vec<Block>,
}

impl Region {
    pub fn empty(sig: Arc<Signature>) -> Self {
        Region { sig, blocks: Vec::new() }
    }

    /// The full configuration space `Conf = Q × (Σ*)^d`.
    pub fn universal(sig: Arc<Signature>) -> Self {
        let blocks = (0..sig.locations.len())
            .map(|loc| Block {
                location: loc,
                langs: vec![
                    ChannelLanguage::universal(sig.alphabet_size());
                    sig.num_channels()
                ],
            })
            .collect();
        Region { sig, blocks }
    }

    /// `{loc} × Σ* × ... × Σ*` for each given location.
    pub fn from_locations(sig: Arc<Signature>, locs: &[usize]) -> Self {
        let blocks = locs
            .iter()
            .map(|&loc| Block {
                location: loc,
                langs: vec![
                    ChannelLanguage::universal(sig.alphabet_size());
                    sig.num_channels()
                ],
            })
            .collect();
        Region::from_blocks(sig, blocks)
    }

    /// A single configuration as a region.
    pub fn point(sig: Arc<Signature>, loc: usize, words: &[Vec<usize>]) -> Self {
        assert_eq!(words.len(), sig.num_channels(), "channel arity mismatch");
        let langs = words
            .iter()
            .map(|w| ChannelLanguage::word(sig.alphabet_size(), w))
            .collect();
        Region::from_blocks(sig, vec![Block { location: loc, langs }])
    }

    pub fn from_blocks(sig: Arc<Signature>, blocks: Vec<Block>) -> Self {
        let mut region = Region { sig, blocks };
        region.normalize();
        region
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total canonical-automaton states over all blocks; the trace metric.
    pub fn size_metric(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.langs.iter().map(|l| l.dfa().num_states()).sum::<usize>())
            .sum()
    }

    fn assert_same_sig(&self, other: &Region) {
        assert_eq!(self.sig, other.sig, "regions over different signatures");
    }

    /// Drop empty blocks, deduplicate, remove absorbed blocks, and merge
    /// blocks that differ in exactly one channel.
    fn normalize(&mut self) {
        self.blocks.retain(|b| !b.is_empty());
        self.blocks.sort();
        self.blocks.dedup();
        loop {
            // Absorption: drop blocks contained channel-wise in another.
            let n = self.blocks.len();
            let mut keep = vec![true; n];
            for i in 0..n {
                if !keep[i] {
                    continue;
                }
                for j in 0..n {
                    if i == j || !keep[j] {
                        continue;
                    }
                    if self.blocks[i].is_subset_of(&self.blocks[j]) {
                        keep[i] = false;
                        break;
                    }
                }
            }
            let mut idx = 0;
            self.blocks.retain(|_| {
                let k = keep[idx];
                idx += 1;
                k
            });

            // Merge one pair differing in a single channel, if any.
            let mut merged = None;
            'outer: for i in 0..self.blocks.len() {
                for j in (i + 1)..self.blocks.len() {
                    let (a, b) = (&self.blocks[i], &self.blocks[j]);
                    if a.location != b.location {
                        continue;
                    }
                    let diffs: Vec<usize> = (0..a.langs.len())
                        .filter(|&ch| a.langs[ch] != b.langs[ch])
                        .collect();
                    if diffs.len() == 1 {
                        let ch = diffs[0];
                        let mut langs = a.langs.clone();
                        langs[ch] = a.langs[ch].union(&b.langs[ch]);
                        merged = Some((i, j, Block { location: a.location, langs }));
                        break 'outer;
                    }
                }
            }
            match merged {
                Some((i, j, block)) => {
                    self.blocks.remove(j);
                    self.blocks.remove(i);
                    self.blocks.push(block);
                    self.blocks.sort();
                    self.blocks.dedup();
                }
                None => break,
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, location: usize, words: &[Vec<usize>]) -> bool {
        self.blocks.iter().any(|b| {
            b.location == location
                && b.langs.iter().zip(words).all(|(l, w)| l.contains(w))
        })
    }

    pub fn union(&self, other: &Region) -> Region {
        self.assert_same_sig(other);
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Region::from_blocks(self.sig.clone(), blocks)
    }

    pub fn intersect(&self, other: &Region) -> Region {
        self.assert_same_sig(other);
        let mut blocks = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                if a.location != b.location {
                    continue;
                }
                let langs: Vec<ChannelLanguage> = a
                    .langs
                    .iter()
                    .zip(&b.langs)
                    .map(|(x, y)| x.intersect(y))
                    .collect();
                blocks.push(Block { location: a.location, langs });
            }
        }
        Region::from_blocks(self.sig.clone(), blocks)
    }

    /// Complement relative to `Conf = Q × (Σ*)^d`, built per location by
    /// intersecting the disjoint negations of each block.
    pub fn complement(&self) -> Region {
        let d = self.sig.num_channels();
        let universal = ChannelLanguage::universal(self.sig.alphabet_size());
        let mut out: Vec<Block> = Vec::new();
        for loc in 0..self.sig.locations.len() {
            let mut comp = vec![Block { location: loc, langs: vec![universal.clone(); d] }];
            for b in self.blocks.iter().filter(|b| b.location == loc) {
                // ¬(L_1 × ... × L_d) as a disjoint union over channels:
                // channel k carries ¬L_k, earlier channels carry L_i.
                let mut negated: Vec<Block> = Vec::with_capacity(d);
                for ch in 0..d {
                    let langs: Vec<ChannelLanguage> = (0..d)
                        .map(|j| {
                            if j < ch {
                                b.langs[j].clone()
                            } else if j == ch {
                                b.langs[j].complement()
                            } else {
                                universal.clone()
                            }
                        })
                        .collect();
                    negated.push(Block { location: loc, langs });
                }
                let mut next = Vec::new();
                for c in &comp {
                    for nb in &negated {
                        let langs: Vec<ChannelLanguage> = c
                            .langs
                            .iter()
                            .zip(&nb.langs)
                            .map(|(x, y)| x.intersect(y))
                            .collect();
                        let candidate = Block { location: loc, langs };
                        if !candidate.is_empty() {
                            next.push(candidate);
                        }
                    }
                }
                comp = next;
                if comp.is_empty() {
                    break;
                }
            }
            out.extend(comp);
        }
        Region::from_blocks(self.sig.clone(), out)
    }

    pub fn difference(&self, other: &Region) -> Region {
        self.intersect(&other.complement())
    }

    pub fn equals(&self, other: &Region) -> bool {
        self.assert_same_sig(other);
        if self.blocks == other.blocks {
            return true;
        }
        self.difference(other).is_empty() && other.difference(self).is_empty()
    }

    pub fn is_subset_of(&self, other: &Region) -> bool {
        self.difference(other).is_empty()
    }

    fn map_channels(&self, f: impl Fn(&ChannelLanguage) -> ChannelLanguage) -> Region {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block { location: b.location, langs: b.langs.iter().map(&f).collect() })
            .collect();
        Region::from_blocks(self.sig.clone(), blocks)
    }

    /// `C↑`: configurations dominating some member (message insertions).
    pub fn up_closure(&self) -> Region {
        self.map_channels(ChannelLanguage::up_closure)
    }

    /// `C↓`: configurations dominated by some member (message losses).
    pub fn down_closure(&self) -> Region {
        self.map_channels(ChannelLanguage::down_closure)
    }

    /// `K↓`: the largest downward-closed subset, via `¬ C↑ ¬`.
    pub fn down_interior(&self) -> Region {
        self.complement().up_closure().complement()
    }

    /// `K↑`: the largest upward-closed subset, via `¬ C↓ ¬`.
    pub fn up_interior(&self) -> Region {
        self.complement().down_closure().complement()
    }

    /// Preimage of the per-message duplication transduction.
    pub fn dup_preimage(&self) -> Region {
        self.map_channels(ChannelLanguage::dup_preimage)
    }

    /// The dual preimage `¬ T⁻¹ ¬`, used by the weak pre-image.
    pub fn dup_preimage_dual(&self) -> Region {
        self.complement().dup_preimage().complement()
    }

    /// Blocks of this region at one location.
    pub fn restrict_to_location(&self, loc: usize) -> Region {
        let blocks = self.blocks.iter().filter(|b| b.location == loc).cloned().collect();
        Region { sig: self.sig.clone(), blocks }
    }
}
