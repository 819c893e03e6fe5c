//! Nondeterministic automata with ε-moves, plus the regular-expression
//! combinators (union, concatenation, star) and subset construction used to
//! build the normal-word languages.

use std::collections::HashMap;

use super::dfa::Dfa;
use crate::Error;

/// Hard cap on the number of DFA states a determinization may produce.
pub const STATE_LIMIT: usize = 1_000_000;

/// An NFA over the letters `1..=n_letters` with ε-moves.
#[derive(Debug, Clone)]
pub struct Nfa {
    pub n_letters: usize,
    pub start: usize,
    accepting: Vec<bool>,
    eps: Vec<Vec<u32>>,
    /// `delta[state][letter-1]` → successor list.
    delta: Vec<Vec<Vec<u32>>>,
}

impl Nfa {
    pub fn new(n_letters: usize) -> Self {
        Nfa {
            n_letters,
            start: 0,
            accepting: Vec::new(),
            eps: Vec::new(),
            delta: Vec::new(),
        }
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_state(&mut self) -> usize {
        self.accepting.push(false);
        self.eps.push(Vec::new());
        self.delta.push(vec![Vec::new(); self.n_letters]);
        self.accepting.len() - 1
    }

    pub fn set_start(&mut self, s: usize) {
        self.start = s;
    }

    pub fn set_accepting(&mut self, s: usize) {
        self.accepting[s] = true;
    }

    pub fn add_edge(&mut self, from: usize, letter: u8, to: usize) {
        self.delta[from][letter as usize - 1].push(to as u32);
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to as u32);
    }

    /// Adds a chain reading `word` from `from` to `to` (fresh inner states).
    pub fn add_path(&mut self, from: usize, to: usize, word: &[u8]) {
        if word.is_empty() {
            self.add_eps(from, to);
            return;
        }
        let mut cur = from;
        for (idx, &l) in word.iter().enumerate() {
            let next = if idx + 1 == word.len() {
                to
            } else {
                self.add_state()
            };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    /// Accepts exactly `word`.
    pub fn word(n_letters: usize, word: &[u8]) -> Nfa {
        let mut f = Nfa::new(n_letters);
        let s = f.add_state();
        let t = f.add_state();
        f.set_start(s);
        f.set_accepting(t);
        f.add_path(s, t, word);
        f
    }

    /// Accepts every word, including the empty one.
    pub fn sigma_star(n_letters: usize) -> Nfa {
        let mut f = Nfa::new(n_letters);
        let s = f.add_state();
        f.set_start(s);
        f.set_accepting(s);
        for l in 1..=n_letters as u8 {
            f.add_edge(s, l, s);
        }
        f
    }

    /// Copies `other`'s states into `self`, returning the index offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        debug_assert_eq!(self.n_letters, other.n_letters);
        let offset = self.state_count();
        for s in 0..other.state_count() {
            let new = self.add_state();
            self.accepting[new] = other.accepting[s];
        }
        for s in 0..other.state_count() {
            for &t in &other.eps[s] {
                self.add_eps(offset + s, offset + t as usize);
            }
            for l in 0..self.n_letters {
                for &t in &other.delta[s][l] {
                    self.delta[offset + s][l].push((offset + t as usize) as u32);
                }
            }
        }
        offset
    }

    pub fn union(n_letters: usize, parts: Vec<Nfa>) -> Nfa {
        let mut f = Nfa::new(n_letters);
        let s = f.add_state();
        f.set_start(s);
        for part in &parts {
            let off = f.absorb(part);
            f.add_eps(s, off + part.start);
        }
        f
    }

    pub fn concat(a: &Nfa, b: &Nfa) -> Nfa {
        let mut f = Nfa::new(a.n_letters);
        let oa = f.absorb(a);
        let ob = f.absorb(b);
        f.set_start(oa + a.start);
        for s in 0..a.state_count() {
            if a.accepting[s] {
                f.accepting[oa + s] = false;
                f.add_eps(oa + s, ob + b.start);
            }
        }
        f
    }

    /// Kleene star: zero or more repetitions.
    pub fn star(a: &Nfa) -> Nfa {
        let mut f = Nfa::new(a.n_letters);
        let s = f.add_state();
        f.set_start(s);
        f.set_accepting(s);
        let off = f.absorb(a);
        f.add_eps(s, off + a.start);
        for q in 0..a.state_count() {
            if a.accepting[q] {
                f.accepting[off + q] = false;
                f.add_eps(off + q, s);
            }
        }
        f
    }

    /// One or more repetitions.
    pub fn plus(a: &Nfa) -> Nfa {
        Nfa::concat(a, &Nfa::star(a))
    }

    /// `Σ* L Σ*`: all words containing a member of `L` as a factor.
    pub fn factor_closure(a: &Nfa) -> Nfa {
        let sig = Nfa::sigma_star(a.n_letters);
        Nfa::concat(&sig, &Nfa::concat(a, &sig))
    }

    pub fn from_dfa(d: &Dfa) -> Nfa {
        let mut f = Nfa::new(d.n_letters);
        for s in 0..d.state_count() {
            let q = f.add_state();
            f.accepting[q] = d.accepting[s];
        }
        f.set_start(d.start as usize);
        for s in 0..d.state_count() {
            for l in 0..d.n_letters {
                f.add_edge(s, l as u8 + 1, d.delta[s][l] as usize);
            }
        }
        f
    }

    fn close(&self, set: &mut [u64]) {
        let mut stack: Vec<u32> = Vec::new();
        for (blk, &bits) in set.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                let bit = b.trailing_zeros();
                stack.push(blk as u32 * 64 + bit);
                b &= b - 1;
            }
        }
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s as usize] {
                let (blk, bit) = (t as usize / 64, t % 64);
                if set[blk] >> bit & 1 == 0 {
                    set[blk] |= 1 << bit;
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction. The empty subset serves as the explicit dead
    /// state, so the result is total. Fails with [`Error::StateLimit`] past
    /// `limit` states.
    pub fn determinize(&self, limit: usize) -> Result<Dfa, Error> {
        let blocks = self.state_count().div_ceil(64);
        let mut acc_mask = vec![0u64; blocks];
        for (s, &a) in self.accepting.iter().enumerate() {
            if a {
                acc_mask[s / 64] |= 1 << (s % 64);
            }
        }
        let mut start = vec![0u64; blocks];
        start[self.start / 64] |= 1 << (self.start % 64);
        self.close(&mut start);

        let mut ids: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut subsets: Vec<Vec<u64>> = Vec::new();
        let mut dfa = Dfa {
            n_letters: self.n_letters,
            start: 0,
            accepting: Vec::new(),
            delta: Vec::new(),
        };
        let push = |set: Vec<u64>,
                    ids: &mut HashMap<Vec<u64>, u32>,
                    subsets: &mut Vec<Vec<u64>>,
                    dfa: &mut Dfa|
         -> Result<u32, Error> {
            if let Some(&id) = ids.get(&set) {
                return Ok(id);
            }
            if subsets.len() >= limit {
                return Err(Error::StateLimit(limit));
            }
            let id = subsets.len() as u32;
            let accepting = set.iter().zip(acc_mask.iter()).any(|(&s, &m)| s & m != 0);
            ids.insert(set.clone(), id);
            subsets.push(set);
            dfa.accepting.push(accepting);
            dfa.delta.push(vec![0; self.n_letters]);
            Ok(id)
        };
        push(start, &mut ids, &mut subsets, &mut dfa)?;
        let mut next_id = 0usize;
        while next_id < subsets.len() {
            let cur = subsets[next_id].clone();
            for l in 0..self.n_letters {
                let mut moved = vec![0u64; blocks];
                for (blk, &bits) in cur.iter().enumerate() {
                    let mut b = bits;
                    while b != 0 {
                        let s = blk * 64 + b.trailing_zeros() as usize;
                        b &= b - 1;
                        for &t in &self.delta[s][l] {
                            moved[t as usize / 64] |= 1 << (t % 64);
                        }
                    }
                }
                self.close(&mut moved);
                let id = push(moved, &mut ids, &mut subsets, &mut dfa)?;
                dfa.delta[next_id][l] = id;
            }
            next_id += 1;
        }
        Ok(dfa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepts(d: &Dfa, word: &[u8]) -> bool {
        d.accepts_letters(word)
    }

    #[test]
    fn word_union_concat_star() {
        let a = Nfa::word(2, &[1]);
        let b = Nfa::word(2, &[2, 2]);
        let u = Nfa::union(2, vec![a.clone(), b.clone()]);
        let d = u.determinize(STATE_LIMIT).unwrap();
        assert!(accepts(&d, &[1]));
        assert!(accepts(&d, &[2, 2]));
        assert!(!accepts(&d, &[2]));
        let c = Nfa::concat(&a, &b).determinize(STATE_LIMIT).unwrap();
        assert!(accepts(&c, &[1, 2, 2]));
        assert!(!accepts(&c, &[1]));
        let s = Nfa::star(&a).determinize(STATE_LIMIT).unwrap();
        assert!(accepts(&s, &[]));
        assert!(accepts(&s, &[1, 1, 1]));
        assert!(!accepts(&s, &[2]));
        let p = Nfa::plus(&a).determinize(STATE_LIMIT).unwrap();
        assert!(!accepts(&p, &[]));
        assert!(accepts(&p, &[1, 1]));
    }

    #[test]
    fn factor_closure_finds_inner_occurrences() {
        let f = Nfa::factor_closure(&Nfa::word(3, &[1, 2]))
            .determinize(STATE_LIMIT)
            .unwrap();
        assert!(accepts(&f, &[3, 1, 2, 3]));
        assert!(accepts(&f, &[1, 2]));
        assert!(!accepts(&f, &[2, 1, 3]));
    }

    #[test]
    fn state_limit_is_enforced() {
        let f = Nfa::factor_closure(&Nfa::word(2, &[1, 2, 1, 2]));
        assert!(matches!(f.determinize(2), Err(Error::StateLimit(2))));
    }
}
