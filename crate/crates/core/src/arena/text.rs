//! Arena text format, one declaration per line:
//!
//! ```text
//! state s0 owner=A
//! move s0 m0 -> s1:1/2 s0:1/2
//! goal 1 = s0 s1
//! ```
//!
//! `#` starts a comment; goals are numbered 1..r without gaps.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{parse_ratio, show_ratio, ArenaBuilder, FiniteArena, GoalFamily, Player, StateSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArenaTextError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("{0}")]
    Global(String),
}

fn err(line: usize, msg: impl Into<String>) -> ArenaTextError {
    ArenaTextError::Line(line, msg.into())
}

pub fn parse_arena(text: &str) -> Result<(FiniteArena, GoalFamily), ArenaTextError> {
    let mut builder = ArenaBuilder::new();
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                None
            } else {
                Some((i + 1, content.split_whitespace().collect()))
            }
        })
        .collect();

    // States first so moves and goals can refer to them in any order.
    for (lineno, toks) in &lines {
        if toks[0] != "state" {
            continue;
        }
        if toks.len() != 3 {
            return Err(err(*lineno, "expected: state <id> owner=<A|B>"));
        }
        let owner = match toks[2] {
            "owner=A" => Player::Alice,
            "owner=B" => Player::Bob,
            other => return Err(err(*lineno, format!("bad owner clause '{other}'"))),
        };
        builder.add_state(toks[1], owner).map_err(|e| err(*lineno, e.to_string()))?;
    }

    let mut goal_sets: BTreeMap<usize, StateSet> = BTreeMap::new();
    for (lineno, toks) in &lines {
        match toks[0] {
            "state" => {}
            "move" => {
                // move <state> <move-id> -> <state>:<p/q> ...
                if toks.len() < 5 || toks[3] != "->" {
                    return Err(err(
                        *lineno,
                        "expected: move <state> <move-id> -> <state>:<p/q> ...",
                    ));
                }
                let state = builder
                    .state_id(toks[1])
                    .ok_or_else(|| err(*lineno, format!("unknown state '{}'", toks[1])))?;
                let mut dist = Vec::new();
                for entry in &toks[4..] {
                    let (target, prob) = entry.split_once(':').ok_or_else(|| {
                        err(*lineno, format!("bad successor entry '{entry}', expected state:p/q"))
                    })?;
                    let target = builder
                        .state_id(target)
                        .ok_or_else(|| err(*lineno, format!("unknown state '{target}'")))?;
                    let prob = parse_ratio(prob).map_err(|e| err(*lineno, e))?;
                    dist.push((target, prob));
                }
                builder
                    .add_move(state, toks[2], dist)
                    .map_err(|e| err(*lineno, e.to_string()))?;
            }
            "goal" => {
                // goal <i> = <state> ...
                if toks.len() < 3 || toks[2] != "=" {
                    return Err(err(*lineno, "expected: goal <i> = <state> ..."));
                }
                let idx: usize = toks[1]
                    .parse()
                    .map_err(|_| err(*lineno, format!("bad goal index '{}'", toks[1])))?;
                if idx == 0 {
                    return Err(err(*lineno, "goal indexes start at 1"));
                }
                let mut set = StateSet::new();
                for name in &toks[3..] {
                    let s = builder
                        .state_id(name)
                        .ok_or_else(|| err(*lineno, format!("unknown state '{name}'")))?;
                    set.insert(s);
                }
                if goal_sets.insert(idx, set).is_some() {
                    return Err(err(*lineno, format!("goal {idx} declared twice")));
                }
            }
            other => return Err(err(*lineno, format!("unknown directive '{other}'"))),
        }
    }

    let arena = builder.build().map_err(|e| ArenaTextError::Global(e.to_string()))?;
    if goal_sets.is_empty() {
        return Err(ArenaTextError::Global("arena file declares no goals".into()));
    }
    let r = goal_sets.len();
    for i in 1..=r {
        if !goal_sets.contains_key(&i) {
            return Err(ArenaTextError::Global(format!(
                "goal indexes must be 1..{r} without gaps (missing {i})"
            )));
        }
    }
    let goals = GoalFamily::new(goal_sets.into_values().collect())
        .map_err(|e| ArenaTextError::Global(e.to_string()))?;
    Ok((arena, goals))
}

pub fn print_arena(arena: &FiniteArena, goals: &GoalFamily) -> String {
    let mut out = String::new();
    for s in 0..arena.num_states() {
        out.push_str(&format!("state {} owner={}\n", arena.state_name(s), arena.owner(s)));
    }
    for s in 0..arena.num_states() {
        for mv in arena.moves(s) {
            let entries: Vec<String> = mv
                .dist
                .iter()
                .map(|(t, p)| format!("{}:{}", arena.state_name(*t), show_ratio(p)))
                .collect();
            out.push_str(&format!(
                "move {} {} -> {}\n",
                arena.state_name(s),
                mv.id,
                entries.join(" ")
            ));
        }
    }
    for (i, g) in goals.iter().enumerate() {
        let names: Vec<&str> = g.iter().map(|s| arena.state_name(s)).collect();
        out.push_str(&format!("goal {} = {}\n", i + 1, names.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{random_arena, RandomArenaConfig};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    const SAMPLE: &str = "\
# a small two-goal arena
state s0 owner=A
state s1 owner=B
move s0 go -> s1:1/2 s0:1/2
move s1 back -> s0:1
goal 1 = s0
goal 2 = s1
";

    #[test]
    fn parse_sample() {
        let (arena, goals) = parse_arena(SAMPLE).unwrap();
        assert_eq!(arena.num_states(), 2);
        assert_eq!(arena.owner(1), Player::Bob);
        assert_eq!(goals.r(), 2);
        assert!(goals.get(0).contains(0));
    }

    #[test]
    fn round_trip_random() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..10 {
            let (arena, goals) =
                random_arena(&mut rng, &RandomArenaConfig { max_states: 6, max_moves: 3, goals: 2 });
            let text = print_arena(&arena, &goals);
            let (arena2, goals2) = parse_arena(&text).unwrap();
            assert_eq!(print_arena(&arena2, &goals2), text);
        }
    }

    #[test]
    fn bad_probability_sum_names_state_and_move() {
        let text = "state s0 owner=A\nmove s0 m0 -> s0:5/6\ngoal 1 = s0\n";
        let e = parse_arena(text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("s0") && msg.contains("m0") && msg.contains("5/6"), "{msg}");
    }

    #[test]
    fn unknown_state_in_move() {
        let text = "state s0 owner=A\nmove s0 m0 -> ghost:1\ngoal 1 = s0\n";
        assert!(matches!(parse_arena(text), Err(ArenaTextError::Line(2, _))));
    }

    #[test]
    fn missing_goals_rejected() {
        let text = "state s0 owner=A\nmove s0 m0 -> s0:1\n";
        assert!(matches!(parse_arena(text), Err(ArenaTextError::Global(_))));
    }

    #[test]
    fn gap_in_goal_indexes_rejected() {
        let text = "state s0 owner=A\nmove s0 m0 -> s0:1\ngoal 1 = s0\ngoal 3 = s0\n";
        let e = parse_arena(text).unwrap_err();
        assert!(e.to_string().contains("missing 2"));
    }
}
