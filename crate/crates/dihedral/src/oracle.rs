//! Exact ground truth for the word problem, independent of the rewriting
//! system.
//!
//! The only moves used here are the defining relations themselves: replace a
//! factor equal to one of the `2n` relation words by any other relation word,
//! in either direction. Congruence classes are computed by breadth-first
//! closure under these moves, so anything validated against this module is
//! checked against the presentation alone, never against the transformation
//! families it is meant to certify.
//!
//! All relations have equal-length sides, so the congruence is length-graded
//! and every class is finite.

use std::collections::{HashSet, VecDeque};

use crate::presentation::{Presentation, Word};
use crate::Error;

/// Default cap on the number of members explored per congruence class.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

/// Budget for exhaustive enumeration: `n^len` words at most.
pub const ENUMERATION_BUDGET: u64 = 100_000_000;

/// A congruence class, possibly truncated at a cap.
#[derive(Debug, Clone)]
pub struct CongruenceClass {
    /// Length-lex least member found (for a non-truncated class this is the
    /// unique normal form).
    pub representative: Word,
    /// All members found, each of the same length as the input.
    pub members: Vec<Word>,
    /// True when the cap stopped the closure before it was complete.
    pub truncated: bool,
}

/// Lookup for "which relation word starts with letter `x`": exactly one
/// rotation and one skip word do.
struct RelationTable {
    n: usize,
    rot: Vec<Vec<u8>>,
    skip: Vec<Vec<u8>>,
    all: Vec<Vec<u8>>,
}

impl RelationTable {
    fn new(p: &Presentation) -> Self {
        let n = p.n();
        let rot = (1..=n as u8)
            .map(|i| p.rotation_word(p.residue(i as i64)).letters().to_vec())
            .collect();
        let skip = (1..=n as u8)
            .map(|i| p.skip_word(p.residue(i as i64)).letters().to_vec())
            .collect();
        let all = p
            .relation_words()
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect();
        RelationTable { n, rot, skip, all }
    }

    /// The relation word matching `word[pos..pos+n]`, if any.
    fn match_at<'a>(&'a self, word: &[u8], pos: usize) -> Option<&'a [u8]> {
        let first = word[pos] as usize;
        let slice = &word[pos..pos + self.n];
        let r = &self.rot[first - 1];
        if slice == &r[..] {
            return Some(r);
        }
        let s = &self.skip[first - 1];
        if slice == &s[..] {
            return Some(s);
        }
        None
    }
}

fn closure(
    p: &Presentation,
    w: &Word,
    cap: usize,
    target: Option<&Word>,
) -> (bool, HashSet<Vec<u8>>, bool) {
    let table = RelationTable::new(p);
    let n = p.n();
    let start = w.letters().to_vec();
    if let Some(t) = target {
        if t.letters() == &start[..] {
            let mut set = HashSet::new();
            set.insert(start);
            return (true, set, false);
        }
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut truncated = false;
    'bfs: while let Some(cur) = queue.pop_front() {
        if cur.len() >= n {
            for pos in 0..=cur.len() - n {
                if let Some(matched) = table.match_at(&cur, pos) {
                    for r in &table.all {
                        if r[..] == matched[..] {
                            continue;
                        }
                        let mut next = cur.clone();
                        next[pos..pos + n].copy_from_slice(r);
                        if let Some(t) = target {
                            if t.letters() == &next[..] {
                                seen.insert(next);
                                return (true, seen, truncated);
                            }
                        }
                        if !seen.contains(&next) {
                            if seen.len() >= cap {
                                truncated = true;
                                break 'bfs;
                            }
                            seen.insert(next.clone());
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    (false, seen, truncated)
}

/// The congruence class of `w` under the defining relations, exact when its
/// size stays within `cap`. Members are sorted length-lex.
pub fn congruence_class(p: &Presentation, w: &Word, cap: usize) -> CongruenceClass {
    let (_, set, truncated) = closure(p, w, cap, None);
    let mut members: Vec<Word> = set.into_iter().map(Word::from).collect();
    members.sort();
    CongruenceClass {
        representative: members[0].clone(),
        members,
        truncated,
    }
}

/// Decides `w1 = w2` in the monoid by BFS membership.
///
/// Words of different lengths are unequal immediately (the congruence is
/// length-graded). Returns [`Error::Inconclusive`] if the class of `w1` was
/// truncated at `cap` before `w2` was found.
pub fn oracle_equal(p: &Presentation, w1: &Word, w2: &Word, cap: usize) -> Result<bool, Error> {
    if w1.len() != w2.len() {
        return Ok(false);
    }
    let (found, _, truncated) = closure(p, w1, cap, Some(w2));
    if found {
        Ok(true)
    } else if truncated {
        Err(Error::Inconclusive { cap })
    } else {
        Ok(false)
    }
}

/// Union-find partition of all `n^len` words of one length into congruence
/// classes. One pass suffices: every word is unioned with the result of
/// replacing each matched relation factor by the canonical word `z`.
pub struct ClassPartition {
    n: usize,
    len: usize,
    pow: Vec<u64>,
    parent: Vec<u32>,
}

impl ClassPartition {
    /// Mixed-radix rank of a word of the partition's length.
    pub fn rank(&self, letters: &[u8]) -> usize {
        debug_assert_eq!(letters.len(), self.len);
        let mut idx = 0u64;
        for (t, &l) in letters.iter().enumerate() {
            idx += (l as u64 - 1) * self.pow[t];
        }
        idx as usize
    }

    pub fn root(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            let up = self.parent[self.parent[i] as usize];
            self.parent[i] = up;
            i = up as usize;
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.root(a);
        let rb = self.root(b);
        if ra != rb {
            self.parent[ra] = rb as u32;
        }
    }

    /// Number of classes.
    pub fn class_count(&mut self) -> u64 {
        let total = self.parent.len();
        let mut count = 0u64;
        for i in 0..total {
            if self.root(i) == i {
                count += 1;
            }
        }
        count
    }

    pub fn word_count(&self) -> usize {
        self.parent.len()
    }

    pub fn n_letters(&self) -> usize {
        self.n
    }

    pub fn word_len(&self) -> usize {
        self.len
    }
}

/// Builds the full partition of words of length `len`.
pub fn class_partition(p: &Presentation, len: usize) -> Result<ClassPartition, Error> {
    let n = p.n();
    let mut total = 1u64;
    for _ in 0..len {
        total = total.saturating_mul(n as u64);
        if total > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                n,
                len,
                limit: ENUMERATION_BUDGET,
            });
        }
    }
    let mut pow = vec![1u64; len.max(1)];
    for t in 1..len {
        pow[t] = pow[t - 1] * n as u64;
    }
    let mut part = ClassPartition {
        n,
        len,
        pow,
        parent: (0..total as u32).collect(),
    };
    if len < n {
        return Ok(part); // no relation fits; all classes are singletons
    }
    let table = RelationTable::new(p);
    let id = p.identity_word().letters().to_vec();
    let mut word = vec![1u8; len];
    for idx in 0..total as usize {
        for pos in 0..=len - n {
            if let Some(matched) = table.match_at(&word, pos) {
                if matched == &id[..] {
                    continue;
                }
                let mut delta = 0i64;
                for t in 0..n {
                    delta += (id[t] as i64 - word[pos + t] as i64) * part.pow[pos + t] as i64;
                }
                let other = (idx as i64 + delta) as usize;
                part.union(idx, other);
            }
        }
        // odometer increment
        for slot in word.iter_mut() {
            if (*slot as usize) < n {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
    Ok(part)
}

/// The number of monoid elements of the given length: classes of the
/// partition of all `n^length` words.
pub fn count_classes(p: &Presentation, length: usize) -> Result<u64, Error> {
    Ok(class_partition(p, length)?.class_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u8]) -> Word {
        Word::from(letters)
    }

    #[test]
    fn class_of_z_is_the_relation_words() {
        let p = Presentation::new(4, 3).unwrap();
        let class = congruence_class(&p, &p.identity_word(), DEFAULT_CLASS_CAP);
        assert!(!class.truncated);
        assert_eq!(class.members, p.relation_words());
        assert_eq!(class.representative, w(&[1, 2, 3, 4]));
    }

    #[test]
    fn short_words_are_singletons() {
        let p = Presentation::new(4, 3).unwrap();
        let class = congruence_class(&p, &w(&[1]), DEFAULT_CLASS_CAP);
        assert_eq!(class.members, vec![w(&[1])]);
        assert!(!class.truncated);
    }

    #[test]
    fn z_commutes_with_a1_in_the_closure() {
        let p = Presentation::new(4, 3).unwrap();
        let class = congruence_class(&p, &w(&[1, 2, 3, 4, 1]), DEFAULT_CLASS_CAP);
        assert!(class.members.contains(&w(&[1, 1, 2, 3, 4])));
    }

    #[test]
    fn oracle_equal_examples() {
        let p = Presentation::new(4, 3).unwrap();
        let cap = DEFAULT_CLASS_CAP;
        assert!(oracle_equal(&p, &w(&[1, 2, 3, 4]), &w(&[4, 3, 2, 1]), cap).unwrap());
        assert!(!oracle_equal(&p, &w(&[1]), &w(&[2]), cap).unwrap());
        assert!(oracle_equal(&p, &w(&[1, 2, 3, 4, 1]), &w(&[1, 1, 2, 3, 4]), cap).unwrap());
        // different lengths: graded, so unequal without search
        assert!(!oracle_equal(&p, &w(&[1]), &w(&[1, 1]), cap).unwrap());
    }

    #[test]
    fn all_members_share_the_input_length() {
        let p = Presentation::new(5, 4).unwrap();
        let class = congruence_class(&p, &w(&[1, 2, 3, 4, 5, 2]), DEFAULT_CLASS_CAP);
        for m in &class.members {
            assert_eq!(m.len(), 6);
        }
    }

    #[test]
    fn count_classes_examples() {
        let p = Presentation::new(4, 3).unwrap();
        assert_eq!(count_classes(&p, 1).unwrap(), 4);
        assert_eq!(count_classes(&p, 3).unwrap(), 64);
        // 256 words, the 8 relation words collapse to one element
        assert_eq!(count_classes(&p, 4).unwrap(), 249);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Presentation::new(8, 3).unwrap();
        let err = count_classes(&p, 12).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn truncation_is_flagged_and_inconclusive() {
        let p = Presentation::new(4, 3).unwrap();
        let class = congruence_class(&p, &p.identity_word(), 3);
        assert!(class.truncated);
        let far = w(&[2, 2, 2, 2]); // not congruent to z, forces full exploration
                                    // cap smaller than the true class: inconclusive, not "false"
        let err = oracle_equal(&p, &p.identity_word(), &far, 3).unwrap_err();
        assert_eq!(err, Error::Inconclusive { cap: 3 });
    }

    #[test]
    fn equivalence_relation_spot_check() {
        let p = Presentation::new(4, 3).unwrap();
        let cap = DEFAULT_CLASS_CAP;
        let a = w(&[1, 2, 3, 4, 2]);
        let b = w(&[2, 3, 4, 1, 2]);
        let c = w(&[2, 1, 2, 3, 4]);
        assert!(oracle_equal(&p, &a, &b, cap).unwrap());
        assert!(oracle_equal(&p, &b, &c, cap).unwrap());
        assert!(oracle_equal(&p, &a, &c, cap).unwrap());
        assert!(oracle_equal(&p, &b, &a, cap).unwrap());
    }
}
