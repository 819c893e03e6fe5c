//! The presentation `(n, k)`: index arithmetic, relation words, blocks and
//! the permutation group they realize.
//!
//! All subscript arithmetic is done modulo `n` inside the index set
//! `{1, 2, …, n}`: residue `0` is represented as `n`, never as `0`. Every
//! other module leans on [`Presentation::residue`] for this, so the
//! convention lives in exactly one place.

use std::cmp::Ordering;
use std::fmt;

use crate::Error;

/// A generator index normalized into `[1..=n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue(pub(crate) u8);

impl Residue {
    /// The underlying index in `[1..=n]`.
    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A word over the generators: a finite sequence of indices in `[1..=n]`.
///
/// The empty word is the monoid identity. `Ord` is the length-lexicographic
/// order generated by `a_1 ≪ a_2 ≪ ⋯ ≪ a_n`: shorter words come first,
/// equal lengths compare letterwise.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    /// The empty word (monoid identity).
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Space-separated generator indices; the empty word prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &l in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
            first = false;
        }
        Ok(())
    }
}

/// A validated presentation `(n, k)` with `n > 3`, `1 < k < n`,
/// `k^2 ≡ 1 (mod n)`.
///
/// Immutable after construction; every derived object (relation words,
/// blocks, the group) is a pure function of `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Presentation {
    n: u8,
    k: u8,
}

impl Presentation {
    /// Validates `(n, k)` and builds the presentation.
    pub fn new(n: i64, k: i64) -> Result<Self, Error> {
        if n <= 3 || n > 255 {
            return Err(Error::InvalidN(n));
        }
        if k <= 1 || k >= n || (k * k) % n != 1 {
            return Err(Error::InvalidK { n, k });
        }
        Ok(Presentation {
            n: n as u8,
            k: k as u8,
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Renormalizes an arbitrary integer into the index set `[1..=n]`.
    pub fn residue(&self, x: i64) -> Residue {
        let n = self.n as i64;
        Residue(((x - 1).rem_euclid(n) + 1) as u8)
    }

    /// `a + b` in the index set; `b` may be negative.
    pub fn residue_add(&self, a: Residue, b: i64) -> Residue {
        self.residue(a.0 as i64 + b)
    }

    /// Checks that every letter of `w` is a valid generator index.
    pub fn check_word(&self, w: &Word) -> Result<(), Error> {
        for &l in w.letters() {
            if l < 1 || l > self.n {
                return Err(Error::InvalidLetter {
                    letter: l as i64,
                    n: self.n(),
                });
            }
        }
        Ok(())
    }

    /// The word `a_i a_{i+1} ⋯ a_{i-1}` (length `n`).
    pub fn rotation_word(&self, i: Residue) -> Word {
        let start = i.0 as i64;
        Word(
            (0..self.n as i64)
                .map(|t| self.residue(start + t).0)
                .collect(),
        )
    }

    /// The word `a_i a_{i+k} a_{i+2k} ⋯ a_{i-k}` (length `n`).
    pub fn skip_word(&self, i: Residue) -> Word {
        let start = i.0 as i64;
        let k = self.k as i64;
        Word(
            (0..self.n as i64)
                .map(|t| self.residue(start + t * k).0)
                .collect(),
        )
    }

    /// `z = a_1 a_2 ⋯ a_n`, the central element.
    pub fn identity_word(&self) -> Word {
        self.rotation_word(Residue(1))
    }

    /// All `2n` words declared equal to `z`: the `n` rotations and the `n`
    /// skip-`k` words, deduplicated and sorted length-lex.
    pub fn relation_words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = (1..=self.n)
            .map(|i| self.rotation_word(Residue(i)))
            .chain((1..=self.n).map(|i| self.skip_word(Residue(i))))
            .collect();
        words.sort();
        words.dedup();
        words
    }

    /// The block `b_p = a_{p+1} a_{p+2} ⋯ a_{p-2}` (length `n - 2`).
    pub fn block_b(&self, p: Residue) -> Word {
        let start = p.0 as i64;
        Word(
            (1..=self.n as i64 - 2)
                .map(|t| self.residue(start + t).0)
                .collect(),
        )
    }

    /// The block `c_p = a_{p+k} a_{p+2k} ⋯ a_{p-2k}` (length `n - 2`).
    pub fn block_c(&self, p: Residue) -> Word {
        let start = p.0 as i64;
        let k = self.k as i64;
        Word(
            (1..=self.n as i64 - 2)
                .map(|t| self.residue(start + t * k).0)
                .collect(),
        )
    }

    /// The chain `b_i b_{i-(k+1)} ⋯ b_{i-q(k+1)}` (`q + 1` blocks).
    pub fn chain_b(&self, i: Residue, q: usize) -> Word {
        let mut w = Word::empty();
        for t in 0..=q as i64 {
            w.extend(&self.block_b(self.residue_add(i, -t * (self.k as i64 + 1))));
        }
        w
    }

    /// The chain `c_i c_{i-(k+1)} ⋯ c_{i-q(k+1)}` (`q + 1` blocks).
    pub fn chain_c(&self, i: Residue, q: usize) -> Word {
        let mut w = Word::empty();
        for t in 0..=q as i64 {
            w.extend(&self.block_c(self.residue_add(i, -t * (self.k as i64 + 1))));
        }
        w
    }

    /// The period of the block subscripts `i, i-(k+1), i-2(k+1), …` mod `n`.
    pub fn chain_period(&self) -> usize {
        let n = self.n();
        n / gcd(n, self.k() + 1)
    }

    /// The group `H` of position permutations behind the relations: all `σ`
    /// such that `a_{σ(1)} a_{σ(2)} ⋯ a_{σ(n)}` is a relation word.
    ///
    /// The permutations are read off the relation words and then *verified*
    /// to form a group of order `2n` containing the cycle `λ = (1,2,…,n)` as
    /// a normal subgroup of index 2, with every other element squaring into
    /// `⟨λ⟩` and conjugating `λ` to `λ^k`. Any violation is an implementation
    /// bug and is reported as [`Error::StructureViolation`].
    pub fn group_h(&self) -> Result<Vec<Vec<u8>>, Error> {
        let n = self.n();
        let mut perms: Vec<Vec<u8>> = self
            .relation_words()
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect();
        perms.sort();
        if perms.len() != 2 * n {
            return Err(Error::StructureViolation(format!(
                "expected 2n = {} relation words, found {}",
                2 * n,
                perms.len()
            )));
        }
        for p in &perms {
            let mut seen = vec![false; n + 1];
            for &x in p {
                if x < 1 || x as usize > n || seen[x as usize] {
                    return Err(Error::StructureViolation(format!(
                        "relation word {:?} is not a permutation arrangement",
                        p
                    )));
                }
                seen[x as usize] = true;
            }
        }
        // σ∘τ means "apply τ, then σ"; entries are 1-based.
        let compose =
            |a: &[u8], b: &[u8]| -> Vec<u8> { b.iter().map(|&j| a[j as usize - 1]).collect() };
        let contains = |set: &[Vec<u8>], p: &[u8]| set.iter().any(|q| q == p);
        for a in &perms {
            for b in &perms {
                if !contains(&perms, &compose(a, b)) {
                    return Err(Error::StructureViolation(
                        "relation permutations are not closed under composition".into(),
                    ));
                }
            }
        }
        let lambda: Vec<u8> = self.rotation_word(Residue(2)).letters().to_vec();
        let rotations: Vec<Vec<u8>> = (1..=self.n)
            .map(|i| self.rotation_word(Residue(i)).letters().to_vec())
            .collect();
        let lambda_k = {
            let mut p = rotations[0].clone(); // identity
            for _ in 0..self.k {
                p = compose(&lambda, &p);
            }
            p
        };
        for sigma in &perms {
            if contains(&rotations, sigma) {
                continue;
            }
            let sq = compose(sigma, sigma);
            if !contains(&rotations, &sq) {
                return Err(Error::StructureViolation(
                    "a reflection-type element does not square into ⟨λ⟩".into(),
                ));
            }
            // μλ = λ^k μ
            let left = compose(sigma, &lambda);
            let right = compose(&lambda_k, sigma);
            if left != right {
                return Err(Error::StructureViolation(
                    "μλ = λ^k μ fails for a reflection-type element".into(),
                ));
            }
        }
        Ok(perms)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u8]) -> Word {
        Word::from(letters)
    }

    #[test]
    fn new_validates_n_and_k() {
        assert!(Presentation::new(4, 3).is_ok());
        assert_eq!(Presentation::new(3, 2).unwrap_err(), Error::InvalidN(3));
        assert_eq!(
            Presentation::new(4, 2).unwrap_err(),
            Error::InvalidK { n: 4, k: 2 }
        );
        // k = 1 is excluded even though 1^2 ≡ 1.
        assert_eq!(
            Presentation::new(5, 1).unwrap_err(),
            Error::InvalidK { n: 5, k: 1 }
        );
        assert_eq!(
            Presentation::new(6, 6).unwrap_err(),
            Error::InvalidK { n: 6, k: 6 }
        );
        for (n, k) in [(4, 3), (5, 4), (6, 5), (8, 3), (8, 5), (8, 7)] {
            assert!(Presentation::new(n, k).is_ok(), "({n},{k}) must validate");
        }
    }

    #[test]
    fn residue_arithmetic_stays_in_one_to_n() {
        let p = Presentation::new(4, 3).unwrap();
        assert_eq!(p.residue_add(Residue(3), 3).get(), 2);
        assert_eq!(p.residue_add(Residue(1), -1).get(), 4);
        assert_eq!(p.residue_add(Residue(2), 0).get(), 2);
        assert_eq!(p.residue(0).get(), 4);
        assert_eq!(p.residue(-3).get(), 1);
    }

    #[test]
    fn relation_words_of_4_3() {
        let p = Presentation::new(4, 3).unwrap();
        let rel = p.relation_words();
        let expected: Vec<Word> = [
            [1, 2, 3, 4],
            [1, 4, 3, 2],
            [2, 1, 4, 3],
            [2, 3, 4, 1],
            [3, 2, 1, 4],
            [3, 4, 1, 2],
            [4, 1, 2, 3],
            [4, 3, 2, 1],
        ]
        .iter()
        .map(|a| w(a))
        .collect();
        assert_eq!(rel, expected);
    }

    #[test]
    fn relation_words_count_is_2n() {
        for (n, k) in [(4, 3), (5, 4), (6, 5), (8, 3), (8, 5), (8, 7)] {
            let p = Presentation::new(n, k).unwrap();
            let rel = p.relation_words();
            assert_eq!(rel.len(), 2 * p.n(), "({n},{k})");
            for r in &rel {
                assert_eq!(r.len(), p.n());
            }
        }
    }

    #[test]
    fn relation_words_of_5_4_are_rotations_and_reversals() {
        let p = Presentation::new(5, 4).unwrap();
        let rel = p.relation_words();
        assert_eq!(rel.len(), 10);
        assert!(rel.contains(&w(&[5, 4, 3, 2, 1])));
        assert!(rel.contains(&w(&[2, 1, 5, 4, 3])));
    }

    #[test]
    fn blocks_match_their_definitions() {
        let p = Presentation::new(4, 3).unwrap();
        assert_eq!(p.block_b(Residue(2)), w(&[3, 4]));
        assert_eq!(p.block_c(Residue(1)), w(&[4, 3]));
        for (n, k) in [(5, 4), (8, 3), (8, 5)] {
            let p = Presentation::new(n, k).unwrap();
            for i in 1..=p.n() as u8 {
                assert_eq!(p.block_b(Residue(i)).len(), p.n() - 2);
                assert_eq!(p.block_c(Residue(i)).len(), p.n() - 2);
            }
        }
    }

    #[test]
    fn rotation_decomposes_as_letter_block_letter() {
        // [p] · b_p · [p-1] is the full rotation starting at p.
        for (n, k) in [(4, 3), (8, 3), (8, 5)] {
            let p = Presentation::new(n, k).unwrap();
            for i in 1..=p.n() as u8 {
                let r = Residue(i);
                let mut word = Word::from(vec![i]);
                word.extend(&p.block_b(r));
                word.push(p.residue_add(r, -1).get());
                assert_eq!(word, p.rotation_word(r));
            }
        }
    }

    #[test]
    fn group_h_has_order_2n_and_verifies() {
        for (n, k) in [(4, 3), (5, 4), (6, 5), (8, 3), (8, 5), (8, 7)] {
            let p = Presentation::new(n, k).unwrap();
            let h = p.group_h().unwrap();
            assert_eq!(h.len(), 2 * p.n(), "({n},{k})");
        }
    }

    #[test]
    fn relation_words_are_closed_under_h_action() {
        let p = Presentation::new(8, 5).unwrap();
        let h = p.group_h().unwrap();
        let rel = p.relation_words();
        for sigma in &h {
            // Applying σ to the identity word positionally is the word
            // a_{σ(1)} ⋯ a_{σ(n)} itself.
            let word = Word::from(sigma.clone());
            assert!(rel.contains(&word));
        }
    }

    #[test]
    fn length_lex_order() {
        assert!(w(&[1]) < w(&[2]));
        assert!(w(&[4]) < w(&[1, 1]));
        assert_eq!(w(&[2, 3]).cmp(&w(&[2, 3])), Ordering::Equal);
    }

    #[test]
    fn chain_period_divides_n() {
        for (n, k) in [(4, 3), (5, 4), (6, 5), (8, 3), (8, 5), (8, 7)] {
            let p = Presentation::new(n, k).unwrap();
            assert_eq!(p.n() % p.chain_period(), 0);
        }
        assert_eq!(Presentation::new(8, 3).unwrap().chain_period(), 2);
        assert_eq!(Presentation::new(8, 5).unwrap().chain_period(), 4);
        assert_eq!(Presentation::new(4, 3).unwrap().chain_period(), 1);
    }
}
