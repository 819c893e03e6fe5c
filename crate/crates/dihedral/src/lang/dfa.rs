//! Deterministic automata: minimization, complement, product equivalence
//! with shortest witnesses, and exact word counting.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::presentation::{Presentation, Word};

/// A total DFA over the letters `1..=n_letters`. A dead state, when needed,
/// is an ordinary state; after [`Dfa::minimize`] all states are reachable and
/// pairwise inequivalent, numbered in breadth-first order from the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub n_letters: usize,
    pub start: u32,
    pub accepting: Vec<bool>,
    /// `delta[state][letter-1]`.
    pub delta: Vec<Vec<u32>>,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn accepts_letters(&self, word: &[u8]) -> bool {
        let mut s = self.start;
        for &l in word {
            s = self.delta[s as usize][l as usize - 1];
        }
        self.accepting[s as usize]
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.accepts_letters(word.letters())
    }

    /// Flips accepting states. Sound because the transition map is total.
    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out
    }

    /// Hopcroft-style partition refinement (Moore's variant), then a
    /// canonical breadth-first renumbering so that equal languages over equal
    /// alphabets yield structurally equal minimal automata.
    pub fn minimize(&self) -> Dfa {
        // reachable restriction
        let mut reach_map = vec![u32::MAX; self.state_count()];
        let mut order: Vec<u32> = Vec::new();
        reach_map[self.start as usize] = 0;
        order.push(self.start);
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for l in 0..self.n_letters {
                let t = self.delta[s as usize][l];
                if reach_map[t as usize] == u32::MAX {
                    reach_map[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let m = order.len();
        let delta: Vec<Vec<u32>> = order
            .iter()
            .map(|&s| {
                (0..self.n_letters)
                    .map(|l| reach_map[self.delta[s as usize][l] as usize])
                    .collect()
            })
            .collect();
        let accepting: Vec<bool> = order.iter().map(|&s| self.accepting[s as usize]).collect();

        // partition refinement
        let mut class: Vec<u32> = accepting.iter().map(|&a| a as u32).collect();
        let mut count = 2;
        loop {
            let mut ids: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
            let mut next: Vec<u32> = Vec::with_capacity(m);
            for s in 0..m {
                let sig = (
                    class[s],
                    (0..self.n_letters)
                        .map(|l| class[delta[s][l] as usize])
                        .collect::<Vec<u32>>(),
                );
                let fresh = ids.len() as u32;
                let id = *ids.entry(sig).or_insert(fresh);
                next.push(id);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // quotient transitions on class representatives
        let mut rep = vec![usize::MAX; count];
        for (s, &c) in class.iter().enumerate() {
            if rep[c as usize] == usize::MAX {
                rep[c as usize] = s;
            }
        }
        // canonical BFS renumbering of classes
        let mut renum = vec![u32::MAX; count];
        let mut bfs: Vec<u32> = vec![class[0]];
        renum[class[0] as usize] = 0;
        let mut head = 0;
        while head < bfs.len() {
            let c = bfs[head] as usize;
            head += 1;
            for l in 0..self.n_letters {
                let t = class[delta[rep[c]][l] as usize];
                if renum[t as usize] == u32::MAX {
                    renum[t as usize] = bfs.len() as u32;
                    bfs.push(t);
                }
            }
        }
        let final_count = bfs.len();
        let mut out = Dfa {
            n_letters: self.n_letters,
            start: 0,
            accepting: vec![false; final_count],
            delta: vec![vec![0; self.n_letters]; final_count],
        };
        for (new_id, &c) in bfs.iter().enumerate() {
            let s = rep[c as usize];
            out.accepting[new_id] = accepting[s];
            for l in 0..self.n_letters {
                out.delta[new_id][l] = renum[class[delta[s][l] as usize] as usize];
            }
        }
        out
    }

    /// Language equality via product reachability. On inequivalence returns a
    /// shortest distinguishing word (ties broken lexicographically).
    pub fn equivalent(&self, other: &Dfa) -> (bool, Option<Word>) {
        assert_eq!(self.n_letters, other.n_letters, "alphabets must agree");
        let start = (self.start, other.start);
        if self.accepting[start.0 as usize] != other.accepting[start.1 as usize] {
            return (false, Some(Word::empty()));
        }
        let mut parent: HashMap<(u32, u32), ((u32, u32), u8)> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        parent.insert(start, (start, 0));
        queue.push_back(start);
        while let Some((a, b)) = queue.pop_front() {
            for l in 0..self.n_letters {
                let na = self.delta[a as usize][l];
                let nb = other.delta[b as usize][l];
                let pair = (na, nb);
                if parent.contains_key(&pair) {
                    continue;
                }
                parent.insert(pair, ((a, b), l as u8 + 1));
                if self.accepting[na as usize] != other.accepting[nb as usize] {
                    let mut letters = Vec::new();
                    let mut cur = pair;
                    while cur != start {
                        let (prev, letter) = parent[&cur];
                        letters.push(letter);
                        cur = prev;
                    }
                    letters.reverse();
                    return (false, Some(Word::from(letters)));
                }
                queue.push_back(pair);
            }
        }
        (true, None)
    }

    /// Exact number of accepted words of each length `0..=max_len`.
    pub fn count_words_upto(&self, max_len: usize) -> Vec<BigUint> {
        let m = self.state_count();
        let mut v: Vec<BigUint> = vec![BigUint::zero(); m];
        v[self.start as usize] = BigUint::from(1u8);
        let mut out = Vec::with_capacity(max_len + 1);
        for _ in 0..=max_len {
            let total = v
                .iter()
                .zip(self.accepting.iter())
                .filter(|(_, &a)| a)
                .map(|(c, _)| c)
                .sum::<BigUint>();
            out.push(total);
            let mut next = vec![BigUint::zero(); m];
            for (s, count) in v.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                for l in 0..self.n_letters {
                    let t = self.delta[s][l] as usize;
                    next[t] += count;
                }
            }
            v = next;
        }
        out
    }

    /// Exact number of accepted words of exactly the given length.
    pub fn count_words(&self, len: usize) -> BigUint {
        self.count_words_upto(len).pop().unwrap()
    }
}

#[derive(Serialize)]
struct DfaDoc<'a> {
    n: usize,
    k: usize,
    which: &'a str,
    states: usize,
    start: u32,
    accepting: Vec<u32>,
    transitions: Vec<(u32, u8, u32)>,
}

/// Deterministic JSON document for a DFA: `accepting` sorted, `transitions`
/// sorted by (state, letter).
pub fn dfa_to_json(p: &Presentation, which: &str, d: &Dfa) -> String {
    let accepting: Vec<u32> = (0..d.state_count() as u32)
        .filter(|&s| d.accepting[s as usize])
        .collect();
    let mut transitions = Vec::new();
    for s in 0..d.state_count() as u32 {
        for l in 0..d.n_letters {
            transitions.push((s, l as u8 + 1, d.delta[s as usize][l]));
        }
    }
    let doc = DfaDoc {
        n: p.n(),
        k: p.k(),
        which,
        states: d.state_count(),
        start: d.start,
        accepting,
        transitions,
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

/// Graphviz dot export: accepting states double-circled, edges labeled by
/// letter, an unlabeled point marking the start state.
pub fn dfa_to_dot(d: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  __start [shape=point, label=\"\"];\n");
    out.push_str(&format!("  __start -> {};\n", d.start));
    for s in 0..d.state_count() {
        if d.accepting[s] {
            out.push_str(&format!("  {} [shape=doublecircle];\n", s));
        }
    }
    for s in 0..d.state_count() {
        for l in 0..d.n_letters {
            out.push_str(&format!(
                "  {} -> {} [label=\"{}\"];\n",
                s,
                d.delta[s][l],
                l + 1
            ));
        }
    }
    out.push_str("}\n");
    out
}
