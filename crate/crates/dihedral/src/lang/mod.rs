//! Regular-language toolkit for the normal-word language.
//!
//! Two independent constructions of the same language are provided:
//!
//! * [`irreducible_dfa`] — operational: the complement of `Σ* F Σ*`, where
//!   `F` collects the left-hand sides of all seven rule families (with the
//!   block chains encoded as cycles of minimal period);
//! * [`theorem_language_dfa`] — a verbatim transcription of the closed-form
//!   union `a_1^*(FM∖(I ∪ a_2⋯a_n FM)) ∪ (a_2⋯a_n)^*(FM∖(I ∪ a_1 FM)) ∪
//!   a_1a_1^*(a_2⋯a_n)(a_2⋯a_n)^*(FM∖(I ∪ a_1FM ∪ a_2⋯a_nFM ∪ I_ζ ∪ I_η ∪
//!   I_θ ∪ I_ι))`, with the factor-ideal sets kept in their
//!   closed form (full period-`n` block cycles, `q < n`).
//!
//! [`Dfa::equivalent`] adjudicates between them and produces a shortest
//! witness word when they differ; the transcription is deliberately not
//! patched to match the operational automaton.

pub mod dfa;
mod growth;
pub mod nfa;

pub use dfa::{dfa_to_dot, dfa_to_json, Dfa};
pub use growth::{growth_series, GrowthSeries};
pub use nfa::{Nfa, STATE_LIMIT};

use crate::presentation::{Presentation, Residue, Word};
use crate::rewrite;
use crate::Error;

enum ChainKind {
    B,
    C,
}

impl ChainKind {
    fn block(&self, p: &Presentation, idx: Residue) -> Word {
        match self {
            ChainKind::B => p.block_b(idx),
            ChainKind::C => p.block_c(idx),
        }
    }

    /// Trailing letter after `q + 1` blocks of the chain rooted at `i`.
    fn trail(&self, p: &Presentation, i: Residue, q: usize) -> u8 {
        let kp1 = p.k() as i64 + 1;
        match self {
            ChainKind::B => p.residue_add(i, -1 - q as i64 * kp1).get(),
            ChainKind::C => p.residue_add(i, -(p.k() as i64) - q as i64 * kp1).get(),
        }
    }
}

fn d_range(p: &Presentation) -> Vec<Residue> {
    (p.n() - p.k() + 1..=p.n() - 1)
        .map(|i| p.residue(i as i64))
        .collect()
}

fn e_range(p: &Presentation) -> Vec<Residue> {
    // 0 ≤ i ≤ n-k, with i = 0 stored as residue n
    std::iter::once(p.residue(0))
        .chain((1..=p.n() - p.k()).map(|i| p.residue(i as i64)))
        .collect()
}

/// Appends to `f` a cyclic block-chain acceptor rooted at `root`: it matches
/// `(q+1)` chain blocks followed by the valid trailing letter, for every
/// `q ≥ 0`, using `n / gcd(n, k+1)` boundary states instead of the full
/// period-`n` unrolling.
fn add_cyclic_tail(
    f: &mut Nfa,
    root: usize,
    acc: usize,
    p: &Presentation,
    i: Residue,
    kind: &ChainKind,
) {
    let kp1 = p.k() as i64 + 1;
    let period = p.chain_period();
    let entry = f.add_state();
    f.add_eps(root, entry);
    let bounds: Vec<usize> = (0..period).map(|_| f.add_state()).collect();
    f.add_path(entry, bounds[0], kind.block(p, i).letters());
    for j in 1..=period {
        let to = bounds[j % period];
        let idx = p.residue_add(i, -(j as i64) * kp1);
        f.add_path(bounds[j - 1], to, kind.block(p, idx).letters());
        f.add_edge(bounds[j - 1], kind.trail(p, i, j - 1), acc);
    }
}

/// The minimal DFA of irreducible words: complement of `Σ* F Σ*` with `F`
/// the union of all rule left-hand sides.
pub fn irreducible_dfa(p: &Presentation) -> Result<Dfa, Error> {
    let n = p.n();
    let mut f = Nfa::new(n);
    let s0 = f.add_state();
    let acc = f.add_state();
    f.set_start(s0);
    f.set_accepting(acc);
    for l in 1..=n as u8 {
        f.add_edge(s0, l, s0);
        f.add_edge(acc, l, acc);
    }
    // T: rotations starting anywhere but 1; H: skip words for every i
    for i in 2..=n {
        let w = p.rotation_word(p.residue(i as i64));
        f.add_path(s0, acc, w.letters());
    }
    for i in 1..=n {
        let w = p.skip_word(p.residue(i as i64));
        f.add_path(s0, acc, w.letters());
    }
    // R: a_j a_1 a_1^* a_2⋯a_n
    let r1 = f.add_state();
    for j in 2..=n as u8 {
        f.add_edge(s0, j, r1);
    }
    let r2 = f.add_state();
    f.add_edge(r1, 1, r2);
    f.add_edge(r2, 1, r2);
    f.add_path(r2, acc, rewrite::z_tail(p).letters());
    // D/E/S/U: a_1⋯a_n, any gap, then a block-chain tail
    let zs = f.add_state();
    f.add_path(s0, zs, p.identity_word().letters());
    for l in 1..=n as u8 {
        f.add_edge(zs, l, zs);
    }
    for i in d_range(p) {
        add_cyclic_tail(&mut f, zs, acc, p, i, &ChainKind::B);
    }
    for i in e_range(p) {
        add_cyclic_tail(&mut f, zs, acc, p, i, &ChainKind::C);
    }
    for i in 1..=n as u8 {
        let s_entry = f.add_state();
        f.add_edge(zs, i, s_entry);
        add_cyclic_tail(&mut f, s_entry, acc, p, p.residue(i as i64), &ChainKind::B);
        let u_entry = f.add_state();
        f.add_edge(zs, i, u_entry);
        add_cyclic_tail(&mut f, u_entry, acc, p, p.residue(i as i64), &ChainKind::C);
    }
    Ok(f.determinize(STATE_LIMIT)?.complement().minimize())
}

/// `FM ∖ L` as an NFA, by determinizing and complementing.
fn complement_nfa(x: &Nfa) -> Result<Nfa, Error> {
    Ok(Nfa::from_dfa(
        &x.determinize(STATE_LIMIT)?.complement().minimize(),
    ))
}

/// One closed-form factor-ideal family: `(full n-block cycle)^*` followed by
/// the chains of depth `q = 0..n-1` with their trailing letters, optionally
/// prefixed by the letter `a_i`.
fn closed_form_tail_family(
    p: &Presentation,
    i: Residue,
    kind: &ChainKind,
    with_prefix: bool,
) -> Nfa {
    let n = p.n();
    let kp1 = p.k() as i64 + 1;
    let mut cycle = Word::empty();
    for t in 0..n as i64 {
        cycle.extend(&kind.block(p, p.residue_add(i, -t * kp1)));
    }
    let mut tails = Vec::new();
    for q in 0..n {
        let mut t = match kind {
            ChainKind::B => p.chain_b(i, q),
            ChainKind::C => p.chain_c(i, q),
        };
        t.push(kind.trail(p, i, q));
        tails.push(Nfa::word(n, t.letters()));
    }
    let core = Nfa::concat(
        &Nfa::star(&Nfa::word(n, cycle.letters())),
        &Nfa::union(n, tails),
    );
    if with_prefix {
        Nfa::concat(&Nfa::word(n, &[i.get()]), &core)
    } else {
        core
    }
}

/// The minimal DFA of the closed-form language, transcribed verbatim
/// (including `σ` ranging over all of `H` in the ideal `I`).
pub fn theorem_language_dfa(p: &Presentation) -> Result<Dfa, Error> {
    let n = p.n();
    let word = |w: &Word| Nfa::word(n, w.letters());
    let a1 = Word::from(vec![1u8]);
    let a2n = rewrite::z_tail(p);

    let rel_union = Nfa::union(n, p.relation_words().iter().map(word).collect());
    let i_ideal = Nfa::factor_closure(&rel_union);
    let a1_fm = Nfa::concat(&word(&a1), &Nfa::sigma_star(n));
    let a2n_fm = Nfa::concat(&word(&a2n), &Nfa::sigma_star(n));

    let comp1 = Nfa::concat(
        &Nfa::star(&word(&a1)),
        &complement_nfa(&Nfa::union(n, vec![i_ideal.clone(), a2n_fm.clone()]))?,
    );
    let comp2 = Nfa::concat(
        &Nfa::star(&word(&a2n)),
        &complement_nfa(&Nfa::union(n, vec![i_ideal.clone(), a1_fm.clone()]))?,
    );

    let mut families = Vec::new();
    for i in d_range(p) {
        families.push(closed_form_tail_family(p, i, &ChainKind::B, false));
    }
    for i in e_range(p) {
        families.push(closed_form_tail_family(p, i, &ChainKind::C, false));
    }
    for i in 1..=n as u8 {
        families.push(closed_form_tail_family(
            p,
            p.residue(i as i64),
            &ChainKind::B,
            true,
        ));
        families.push(closed_form_tail_family(
            p,
            p.residue(i as i64),
            &ChainKind::C,
            true,
        ));
    }
    let pattern_ideal = Nfa::factor_closure(&Nfa::union(n, families));

    let comp3_tail = complement_nfa(&Nfa::union(n, vec![i_ideal, a1_fm, a2n_fm, pattern_ideal]))?;
    let comp3 = Nfa::concat(
        &Nfa::plus(&word(&a1)),
        &Nfa::concat(&Nfa::plus(&word(&a2n)), &comp3_tail),
    );

    let all = Nfa::union(n, vec![comp1, comp2, comp3]);
    Ok(all.determinize(STATE_LIMIT)?.minimize())
}

/// Language equality with a shortest distinguishing witness on failure.
pub fn dfa_equivalent(a: &Dfa, b: &Dfa) -> (bool, Option<Word>) {
    a.equivalent(b)
}

/// Number of words of exactly `length` accepted by `a`.
pub fn count_words(a: &Dfa, length: usize) -> num_bigint::BigUint {
    a.count_words(length)
}
