//! Channel systems with regular guards: finite control locations, FIFO
//! channels over a finite message alphabet, and guarded send/receive/
//! internal rules. Sends append at the tail, receives take the head, and
//! guards constrain the channel contents *before* the operation fires.

mod text;

pub use text::{parse_config, parse_system, print_system, ParsedSystem, SystemTextError};

use std::sync::Arc;

use crate::region::{Block, ChannelLanguage, Region, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleOp {
    /// Append a letter at the tail of a channel.
    Send(usize, usize),
    /// Remove a letter from the head of a channel.
    Recv(usize, usize),
    /// Location change only.
    Internal,
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub source: usize,
    /// One language per channel; the rule fires only from configurations
    /// whose contents satisfy every component.
    pub guard: Vec<ChannelLanguage>,
    pub op: RuleOp,
    pub target: usize,
}

/// A configuration: a control location and one word per channel.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub location: usize,
    pub contents: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct ChannelSystem {
    sig: Arc<Signature>,
    rules: Vec<Rule>,
}

impl ChannelSystem {
    /// Build a system; panics if a rule refers outside the signature.
    pub fn new(sig: Arc<Signature>, rules: Vec<Rule>) -> Self {
        for rule in &rules {
            assert!(rule.source < sig.locations.len() && rule.target < sig.locations.len());
            assert_eq!(rule.guard.len(), sig.num_channels());
            match rule.op {
                RuleOp::Send(ch, a) | RuleOp::Recv(ch, a) => {
                    assert!(ch < sig.num_channels() && a < sig.alphabet_size());
                }
                RuleOp::Internal => {}
            }
        }
        ChannelSystem { sig, rules }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn trivial_guard(&self) -> Vec<ChannelLanguage> {
        vec![ChannelLanguage::universal(self.sig.alphabet_size()); self.sig.num_channels()]
    }

    pub fn respects_guard(&self, c: &Config, guard: &[ChannelLanguage]) -> bool {
        c.contents.iter().zip(guard).all(|(w, l)| l.contains(w))
    }

    /// Fire one rule; `None` when the rule is not enabled in `c`.
    pub fn step(&self, c: &Config, rule: usize) -> Option<Config> {
        let rule = &self.rules[rule];
        if c.location != rule.source || !self.respects_guard(c, &rule.guard) {
            return None;
        }
        let mut contents = c.contents.clone();
        match rule.op {
            RuleOp::Internal => {}
            RuleOp::Send(ch, a) => contents[ch].push(a),
            RuleOp::Recv(ch, a) => {
                if contents[ch].first() != Some(&a) {
                    return None;
                }
                contents[ch].remove(0);
            }
        }
        Some(Config { location: rule.target, contents })
    }

    pub fn enabled_rules(&self, c: &Config) -> Vec<usize> {
        (0..self.rules.len()).filter(|&i| self.step(c, i).is_some()).collect()
    }

    /// `Pre_S[δ](R)`: configurations with a δ-step into `R` (no message
    /// perturbation). For each block of `R` at the rule's target, the
    /// operated channel is rewritten backwards (send: right quotient,
    /// receive: prepend) and the result is filtered by the guard.
    pub fn pre_rule(&self, rule: usize, region: &Region) -> Region {
        assert_eq!(region.signature(), &self.sig, "region over a different system");
        let rule = &self.rules[rule];
        let mut blocks = Vec::new();
        for block in region.blocks() {
            if block.location != rule.target {
                continue;
            }
            let langs: Vec<ChannelLanguage> = block
                .langs
                .iter()
                .enumerate()
                .map(|(j, lang)| {
                    let transformed = match rule.op {
                        RuleOp::Send(ch, a) if j == ch => lang.quotient_right_letter(a),
                        RuleOp::Recv(ch, a) if j == ch => lang.prepend_letter(a),
                        _ => lang.clone(),
                    };
                    transformed.intersect(&rule.guard[j])
                })
                .collect();
            blocks.push(Block { location: rule.source, langs });
        }
        Region::from_blocks(self.sig.clone(), blocks)
    }

    /// Weak pre-image `¬ Pre_S[δ] ¬`. `wpre_rule(δ, ∅)` is exactly the
    /// region where δ is not enabled.
    pub fn wpre_rule(&self, rule: usize, region: &Region) -> Region {
        self.pre_rule(rule, &region.complement()).complement()
    }

    /// Configurations in which the rule can fire.
    pub fn enabled_region(&self, rule: usize) -> Region {
        self.pre_rule(rule, &Region::universal(self.sig.clone()))
    }

    /// Game-level one-move pre-image: a δ-step followed by the environment
    /// perturbation, i.e. `Pre_S[δ](T⁻¹(C↑ X))` with the duplication
    /// preimage dropped when duplication is off.
    pub fn combined_pre(&self, rule: usize, x: &Region, duplication: bool) -> Region {
        let up = x.up_closure();
        let perturbed = if duplication { up.dup_preimage() } else { up };
        self.pre_rule(rule, &perturbed)
    }

    /// Dual of [`ChannelSystem::combined_pre`], used for the "stay surely"
    /// half of the game operators.
    pub fn combined_wpre(&self, rule: usize, x: &Region, duplication: bool) -> Region {
        let down = x.complement();
        let up = down.up_closure();
        let perturbed = if duplication { up.dup_preimage() } else { up };
        self.pre_rule(rule, &perturbed).complement()
    }

    /// Add a sink location reachable exactly from deadlocked
    /// configurations, making the system eternal. The sink carries a
    /// trivially-guarded internal self-loop; each original location gets
    /// internal rules to the sink guarded by the complement of the union
    /// of its rules' enabledness regions.
    pub fn complete_deadlocks(&self) -> ChannelSystem {
        let mut sink_name = "sink".to_string();
        while self.sig.location_id(&sink_name).is_some() {
            sink_name.push('_');
        }
        let mut locations = self.sig.locations.clone();
        locations.push(sink_name);
        let sink = locations.len() - 1;
        let new_sig = Arc::new(Signature::new(
            locations,
            self.sig.channels.clone(),
            self.sig.alphabet.clone(),
        ));

        let mut rules = self.rules.clone();
        let trivial =
            vec![ChannelLanguage::universal(new_sig.alphabet_size()); new_sig.num_channels()];
        rules.push(Rule { source: sink, guard: trivial, op: RuleOp::Internal, target: sink });
        let extended = ChannelSystem::new(new_sig.clone(), rules);

        let mut completion = Vec::new();
        for q in 0..self.sig.locations.len() {
            let mut enabled = Region::empty(new_sig.clone());
            for (i, rule) in extended.rules.iter().enumerate() {
                if rule.source == q {
                    enabled = enabled.union(&extended.enabled_region(i));
                }
            }
            let gap = enabled.complement().restrict_to_location(q);
            for block in gap.blocks() {
                completion.push(Rule {
                    source: q,
                    guard: block.langs.clone(),
                    op: RuleOp::Internal,
                    target: sink,
                });
            }
        }
        let mut rules = extended.rules;
        rules.extend(completion);
        ChannelSystem::new(new_sig, rules)
    }

    /// Search bounded configurations (channel words up to `max_len`) for a
    /// deadlock; `None` means the sample is deadlock-free.
    pub fn find_deadlock_sampled(&self, max_len: usize) -> Option<Config> {
        let words = bounded_words(self.sig.alphabet_size(), max_len);
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for _ in 0..self.sig.num_channels() {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    words.iter().map(move |w| {
                        let mut t2 = t.clone();
                        t2.push(w.clone());
                        t2
                    })
                })
                .collect();
        }
        for loc in 0..self.sig.locations.len() {
            for t in &tuples {
                let c = Config { location: loc, contents: t.clone() };
                if self.enabled_rules(&c).is_empty() {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Human-readable rule label for diagnostics and strategy output.
    pub fn rule_label(&self, idx: usize) -> String {
        let rule = &self.rules[idx];
        let op = match rule.op {
            RuleOp::Internal => "nop".to_string(),
            RuleOp::Send(ch, a) => {
                format!("{}!{}", self.sig.channels[ch], self.sig.alphabet[a])
            }
            RuleOp::Recv(ch, a) => {
                format!("{}?{}", self.sig.channels[ch], self.sig.alphabet[a])
            }
        };
        format!(
            "{}: {} -> {} [{}]",
            idx, self.sig.locations[rule.source], self.sig.locations[rule.target], op
        )
    }
}

fn bounded_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
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
