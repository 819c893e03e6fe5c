//! The seven transformation families, redex detection, and deterministic
//! reduction to the unique normal form.
//!
//! Every rule replaces a factor by an equal-length word that is strictly
//! smaller in the length-lexicographic order, so reduction always terminates
//! and (the system being confluent) lands on the unique irreducible word of
//! the congruence class.
//!
//! Rule shapes, with `z = a_1⋯a_n`, `b_p`/`c_p` the length-`(n-2)` blocks and
//! `v` an arbitrary gap word:
//!
//! * `T`: `a_i a_{i+1} ⋯ a_{i-1} → z` for `2 ≤ i ≤ n`
//! * `R`: `a_j a_1^m a_2⋯a_n → z a_j a_1^{m-1}` for `2 ≤ j ≤ n`, `m ≥ 1`
//! * `H`: `a_i a_{i+k} ⋯ a_{i-k} → z` for `1 ≤ i ≤ n`
//! * `D`: `z v b_i⋯b_{i-q(k+1)} a_{i-1-q(k+1)} → z v a_{i+k} c_{i+k}⋯c_{i+k-q(k+1)}`
//!   for `n-k+1 ≤ i ≤ n-1`
//! * `E`: `z v c_i⋯c_{i-q(k+1)} a_{i-k-q(k+1)} → z v a_{i+1} b_{i+1}⋯b_{i+1-q(k+1)}`
//!   for `0 ≤ i ≤ n-k` (`i = 0` stored as residue `n`)
//! * `S`: `z v a_i b_i⋯b_{i-q(k+1)} a_{i-1-q(k+1)} → a_1^2 (a_2⋯a_n)^2 v c_{i+k-(k+1)}⋯c_{i+k-q(k+1)}`
//! * `U`: `z v a_i c_i⋯c_{i-q(k+1)} a_{i-k-q(k+1)} → a_1^2 (a_2⋯a_n)^2 v b_{i+1-(k+1)}⋯b_{i+1-q(k+1)}`
//!
//! The index ranges on `D` and `E` are exactly the ones that keep the step
//! descending; reduction re-checks descent at runtime and aborts with
//! [`Error::NonDecreasingStep`] if an applied rule ever fails to shrink.

use std::cmp::Ordering;

use crate::presentation::{Presentation, Residue, Word};
use crate::util::SplitMix64;
use crate::Error;

/// The seven transformation families, in strategy priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    T,
    R,
    H,
    D,
    E,
    S,
    U,
}

/// One applicable transformation inside a host word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub kind: RuleKind,
    /// Rule index `i` (the `j` of an `R` rule).
    pub i: Residue,
    /// Power of `a_1` (`R` only, `≥ 1`; 0 otherwise).
    pub m: usize,
    /// Block-chain depth (`D`/`E`/`S`/`U` only; 0 otherwise).
    pub q: usize,
    /// Length of the gap `v` (`D`/`E`/`S`/`U` only; 0 otherwise).
    pub v_len: usize,
    /// Start of the matched factor in the host word (0-based).
    pub match_start: usize,
    /// Length of the matched factor.
    pub match_len: usize,
}

impl RuleInstance {
    /// Deterministic strategy key: kind priority, then position, then the
    /// smallest parameterization.
    fn key(&self) -> (RuleKind, usize, usize, usize, u8) {
        (
            self.kind,
            self.match_start,
            self.q,
            self.v_len,
            self.i.get(),
        )
    }
}

/// The tail pattern `b_i b_{i-(k+1)} ⋯ b_{i-q(k+1)} a_{i-1-q(k+1)}`.
pub fn zeta_tail(p: &Presentation, i: Residue, q: usize) -> Word {
    let mut w = p.chain_b(i, q);
    w.push(p.residue_add(i, -1 - (q as i64) * (p.k() as i64 + 1)).get());
    w
}

/// The tail pattern `c_i c_{i-(k+1)} ⋯ c_{i-q(k+1)} a_{i-k-q(k+1)}`.
pub fn eta_tail(p: &Presentation, i: Residue, q: usize) -> Word {
    let mut w = p.chain_c(i, q);
    w.push(
        p.residue_add(i, -(p.k() as i64) - (q as i64) * (p.k() as i64 + 1))
            .get(),
    );
    w
}

/// The tail pattern `a_i b_i ⋯ b_{i-q(k+1)} a_{i-1-q(k+1)}`.
pub fn theta_tail(p: &Presentation, i: Residue, q: usize) -> Word {
    let mut w = Word::from(vec![i.get()]);
    w.extend(&zeta_tail(p, i, q));
    w
}

/// The tail pattern `a_i c_i ⋯ c_{i-q(k+1)} a_{i-k-q(k+1)}`.
pub fn iota_tail(p: &Presentation, i: Residue, q: usize) -> Word {
    let mut w = Word::from(vec![i.get()]);
    w.extend(&eta_tail(p, i, q));
    w
}

/// `D` applies for `n-k+1 ≤ i ≤ n-1`.
pub fn in_d_range(p: &Presentation, i: Residue) -> bool {
    let v = i.get() as usize;
    v > p.n() - p.k() && v < p.n()
}

/// `E` applies for `0 ≤ i ≤ n-k`, with `i = 0` stored as residue `n`.
pub fn in_e_range(p: &Presentation, i: Residue) -> bool {
    let v = i.get() as usize;
    v == p.n() || v <= p.n() - p.k()
}

/// True when `letters[pos..pos+n]` is the arithmetic run starting at
/// `letters[pos]` with the given step.
fn arith_run(p: &Presentation, letters: &[u8], pos: usize, step: i64) -> bool {
    let n = p.n();
    let start = letters[pos] as i64;
    (1..n as i64).all(|t| letters[pos + t as usize] == p.residue(start + t * step).get())
}

/// Greedy block-chain scan at `start` for the chain rooted at index `i`.
///
/// `step` is 1 for `b`-blocks and `k` for `c`-blocks; `trail_off` is 1 for
/// the `a_{i-1-q(k+1)}` ending and `k` for the `a_{i-k-q(k+1)}` ending.
/// Returns every `(q, length)` whose `q+1` blocks plus trailing letter match.
fn scan_chain(
    p: &Presentation,
    letters: &[u8],
    start: usize,
    i: Residue,
    step: i64,
    trail_off: i64,
) -> Vec<(usize, usize)> {
    let n = p.n();
    let kp1 = p.k() as i64 + 1;
    let mut out = Vec::new();
    let mut pos = start;
    let mut t: i64 = 0;
    loop {
        let idx = p.residue_add(i, -t * kp1);
        for s in 1..=(n as i64 - 2) {
            if pos >= letters.len() || letters[pos] != p.residue_add(idx, s * step).get() {
                return out;
            }
            pos += 1;
        }
        // q = t blocks are complete; does the trailing letter follow?
        let trail = p.residue_add(i, -trail_off - t * kp1).get();
        if pos < letters.len() && letters[pos] == trail {
            out.push((t as usize, pos + 1 - start));
        }
        t += 1;
    }
}

/// All rule instances applicable anywhere in `w`, sorted by the deterministic
/// strategy key. `D`/`E`/`S`/`U` instances are canonical: the gap `v` runs
/// from the closest occurrence of `a_1⋯a_n` ending at or before the tail.
pub fn find_redexes(p: &Presentation, w: &Word) -> Vec<RuleInstance> {
    let letters = w.letters();
    let n = p.n();
    let k = p.k() as i64;
    let len = letters.len();
    let mut out = Vec::new();

    let mut id_ends: Vec<usize> = Vec::new();
    if len >= n {
        for pos in 0..=len - n {
            let first = letters[pos];
            if first != 1 && arith_run(p, letters, pos, 1) {
                out.push(RuleInstance {
                    kind: RuleKind::T,
                    i: p.residue(first as i64),
                    m: 0,
                    q: 0,
                    v_len: 0,
                    match_start: pos,
                    match_len: n,
                });
            }
            if first == 1 && arith_run(p, letters, pos, 1) {
                id_ends.push(pos + n);
            }
            if arith_run(p, letters, pos, k) {
                out.push(RuleInstance {
                    kind: RuleKind::H,
                    i: p.residue(first as i64),
                    m: 0,
                    q: 0,
                    v_len: 0,
                    match_start: pos,
                    match_len: n,
                });
            }
        }
    }

    for pos in 0..len {
        let j = letters[pos];
        if j < 2 {
            continue;
        }
        let mut m = 0;
        while pos + 1 + m < len && letters[pos + 1 + m] == 1 {
            m += 1;
        }
        if m >= 1 && pos + m + n <= len {
            let suffix_ok = (0..n - 1).all(|t| letters[pos + 1 + m + t] == (t + 2) as u8);
            if suffix_ok {
                out.push(RuleInstance {
                    kind: RuleKind::R,
                    i: p.residue(j as i64),
                    m,
                    q: 0,
                    v_len: 0,
                    match_start: pos,
                    match_len: n + m,
                });
            }
        }
    }

    let closest_id_end = |ts: usize| id_ends.iter().copied().filter(|&e| e <= ts).max();

    for ts in 0..len {
        let x = letters[ts] as i64;
        let Some(id_end) = closest_id_end(ts) else {
            continue;
        };
        let v_len = ts - id_end;
        let match_start = id_end - n;

        let i = p.residue(x - 1);
        if in_d_range(p, i) {
            for (q, tail_len) in scan_chain(p, letters, ts, i, 1, 1) {
                out.push(RuleInstance {
                    kind: RuleKind::D,
                    i,
                    m: 0,
                    q,
                    v_len,
                    match_start,
                    match_len: n + v_len + tail_len,
                });
            }
        }
        let i = p.residue(x - k);
        if in_e_range(p, i) {
            for (q, tail_len) in scan_chain(p, letters, ts, i, k, k) {
                out.push(RuleInstance {
                    kind: RuleKind::E,
                    i,
                    m: 0,
                    q,
                    v_len,
                    match_start,
                    match_len: n + v_len + tail_len,
                });
            }
        }
        let i = p.residue(x);
        for (q, tail_len) in scan_chain(p, letters, ts + 1, i, 1, 1) {
            out.push(RuleInstance {
                kind: RuleKind::S,
                i,
                m: 0,
                q,
                v_len,
                match_start,
                match_len: n + v_len + 1 + tail_len,
            });
        }
        for (q, tail_len) in scan_chain(p, letters, ts + 1, i, k, k) {
            out.push(RuleInstance {
                kind: RuleKind::U,
                i,
                m: 0,
                q,
                v_len,
                match_start,
                match_len: n + v_len + 1 + tail_len,
            });
        }
    }

    out.sort_by_key(|r| r.key());
    out
}

fn ones(m: usize) -> Word {
    Word::from(vec![1u8; m])
}

/// `a_2 a_3 ⋯ a_n`.
pub fn z_tail(p: &Presentation) -> Word {
    Word::from((2..=p.n() as u8).collect::<Vec<_>>())
}

fn build_lhs(p: &Presentation, r: &RuleInstance, v: &[u8]) -> Word {
    let id = p.identity_word();
    match r.kind {
        RuleKind::T => p.rotation_word(r.i),
        RuleKind::H => p.skip_word(r.i),
        RuleKind::R => {
            let mut w = Word::from(vec![r.i.get()]);
            w.extend(&ones(r.m));
            w.extend(&z_tail(p));
            w
        }
        RuleKind::D => {
            let mut w = id;
            w.extend(&Word::from(v));
            w.extend(&zeta_tail(p, r.i, r.q));
            w
        }
        RuleKind::E => {
            let mut w = id;
            w.extend(&Word::from(v));
            w.extend(&eta_tail(p, r.i, r.q));
            w
        }
        RuleKind::S => {
            let mut w = id;
            w.extend(&Word::from(v));
            w.extend(&theta_tail(p, r.i, r.q));
            w
        }
        RuleKind::U => {
            let mut w = id;
            w.extend(&Word::from(v));
            w.extend(&iota_tail(p, r.i, r.q));
            w
        }
    }
}

fn build_rhs(p: &Presentation, r: &RuleInstance, v: &[u8]) -> Word {
    let id = p.identity_word();
    let kp1 = p.k() as i64 + 1;
    match r.kind {
        RuleKind::T | RuleKind::H => id,
        RuleKind::R => {
            let mut w = id;
            w.push(r.i.get());
            w.extend(&ones(r.m - 1));
            w
        }
        RuleKind::D => {
            let first = p.residue_add(r.i, p.k() as i64);
            let mut w = id;
            w.extend(&Word::from(v));
            w.push(first.get());
            w.extend(&p.chain_c(first, r.q));
            w
        }
        RuleKind::E => {
            let first = p.residue_add(r.i, 1);
            let mut w = id;
            w.extend(&Word::from(v));
            w.push(first.get());
            w.extend(&p.chain_b(first, r.q));
            w
        }
        RuleKind::S => {
            let mut w = Word::from(vec![1u8, 1]);
            w.extend(&z_tail(p));
            w.extend(&z_tail(p));
            w.extend(&Word::from(v));
            for t in 1..=r.q as i64 {
                w.extend(&p.block_c(p.residue_add(r.i, p.k() as i64 - t * kp1)));
            }
            w
        }
        RuleKind::U => {
            let mut w = Word::from(vec![1u8, 1]);
            w.extend(&z_tail(p));
            w.extend(&z_tail(p));
            w.extend(&Word::from(v));
            for t in 1..=r.q as i64 {
                w.extend(&p.block_b(p.residue_add(r.i, 1 - t * kp1)));
            }
            w
        }
    }
}

/// Applies one rule instance. The matched factor is re-verified against the
/// instantiated left-hand side before anything is replaced.
pub fn apply_rule(p: &Presentation, w: &Word, r: &RuleInstance) -> Result<Word, Error> {
    let letters = w.letters();
    let n = p.n();
    let end = r.match_start + r.match_len;
    if end > letters.len() {
        return Err(Error::RuleMismatch { at: r.match_start });
    }
    let v: &[u8] = match r.kind {
        RuleKind::D | RuleKind::E | RuleKind::S | RuleKind::U => {
            &letters[r.match_start + n..r.match_start + n + r.v_len]
        }
        _ => &[],
    };
    let lhs = build_lhs(p, r, v);
    if lhs.letters() != &letters[r.match_start..end] {
        return Err(Error::RuleMismatch { at: r.match_start });
    }
    let rhs = build_rhs(p, r, v);
    debug_assert_eq!(rhs.len(), lhs.len(), "all rule families preserve length");
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[..r.match_start]);
    out.extend_from_slice(rhs.letters());
    out.extend_from_slice(&letters[end..]);
    Ok(Word::from(out))
}

/// One reduction step of a trace.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub rule: RuleInstance,
    pub result: Word,
}

fn check_descent(cur: &Word, next: &Word, rule: &RuleInstance) -> Result<(), Error> {
    if next.len() != cur.len() || *next >= *cur {
        return Err(Error::NonDecreasingStep {
            rule: format!("{:?} i={} q={}", rule.kind, rule.i, rule.q),
        });
    }
    Ok(())
}

/// Reduces `w` with the deterministic strategy, returning the normal form
/// and the full step trace. Every step is checked to preserve length and to
/// strictly decrease the length-lex order.
pub fn reduce_with_trace(p: &Presentation, w: &Word) -> Result<(Word, Vec<ReductionStep>), Error> {
    p.check_word(w)?;
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let redexes = find_redexes(p, &cur);
        let Some(rule) = redexes.into_iter().next() else {
            return Ok((cur, steps));
        };
        let next = apply_rule(p, &cur, &rule)?;
        check_descent(&cur, &next, &rule)?;
        steps.push(ReductionStep {
            rule,
            result: next.clone(),
        });
        cur = next;
    }
}

/// The unique irreducible word congruent to `w`.
pub fn normal_form(p: &Presentation, w: &Word) -> Result<Word, Error> {
    reduce_with_trace(p, w).map(|(nf, _)| nf)
}

/// Reduction picking a uniformly random redex at every step. Confluence makes
/// the result independent of the choices; the seed only fixes the path.
pub fn normal_form_randomized(p: &Presentation, w: &Word, seed: u64) -> Result<Word, Error> {
    p.check_word(w)?;
    let mut rng = SplitMix64::new(seed);
    let mut cur = w.clone();
    loop {
        let redexes = find_redexes(p, &cur);
        if redexes.is_empty() {
            return Ok(cur);
        }
        let rule = &redexes[rng.below(redexes.len())];
        let next = apply_rule(p, &cur, rule)?;
        check_descent(&cur, &next, rule)?;
        cur = next;
    }
}

/// True iff no transformation applies anywhere in `w`.
pub fn is_irreducible(p: &Presentation, w: &Word) -> bool {
    find_redexes(p, w).is_empty()
}

/// The `a_1^i (a_2⋯a_n)^j b` shape of a normal word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormDecomposition {
    pub i: usize,
    pub j: usize,
    pub b: Word,
}

impl NormalFormDecomposition {
    /// Rebuilds the word `a_1^i (a_2⋯a_n)^j b` exactly.
    pub fn reassemble(&self, p: &Presentation) -> Word {
        let mut w = ones(self.i);
        for _ in 0..self.j {
            w.extend(&z_tail(p));
        }
        w.extend(&self.b);
        w
    }
}

/// Greedy prefix decomposition of an irreducible word: the maximal `i` with
/// `a_1^i` a prefix, then the maximal `j` with `(a_2⋯a_n)^j` following, then
/// the tail `b`.
pub fn decompose(p: &Presentation, w: &Word) -> Result<NormalFormDecomposition, Error> {
    if !is_irreducible(p, w) {
        return Err(Error::NotNormalForm);
    }
    let letters = w.letters();
    let mut pos = 0;
    while pos < letters.len() && letters[pos] == 1 {
        pos += 1;
    }
    let i = pos;
    let zt = z_tail(p);
    let mut j = 0;
    while pos + zt.len() <= letters.len() && &letters[pos..pos + zt.len()] == zt.letters() {
        j += 1;
        pos += zt.len();
    }
    let d = NormalFormDecomposition {
        i,
        j,
        b: Word::from(&letters[pos..]),
    };
    debug_assert_eq!(d.reassemble(p), *w);
    Ok(d)
}

/// Length-lexicographic comparison (same order as `Word`'s `Ord`).
pub fn compare_length_lex(w1: &Word, w2: &Word) -> Ordering {
    w1.cmp(w2)
}
