//! Property suites that replay the structural facts behind the rewriting
//! system at desk scale, cross-validating `rewrite`, `oracle` and `lang`
//! against each other.
//!
//! Each suite returns a [`SuiteReport`]; an empty failure list means the
//! suite passed. Sampling suites are driven by a seeded deterministic RNG,
//! so reports are reproducible bit for bit given the same bounds.
//!
//! Exhaustive suites honor the requested `max_len` as long as the word
//! enumeration stays within fixed budgets (at most [`EXHAUSTIVE_WORDS`]
//! words per length for rewriting sweeps, and the oracle's enumeration
//! budget for union-find partitions); beyond that the length is clamped, and
//! the clamped value is what the report's `bounds` show.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::lang;
use crate::oracle;
use crate::presentation::{Presentation, Word};
use crate::rewrite::{self, RuleKind};
use crate::util::SplitMix64;
use crate::Error;

/// Per-length word cap for exhaustive rewriting sweeps.
pub const EXHAUSTIVE_WORDS: u64 = 2_000_000;

/// The eight suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Centrality,
    LemmaZ2,
    Soundness,
    UniqueNf,
    Confluence,
    Cancellativity,
    DfaEquivalence,
    GrowthVsOracle,
}

impl Suite {
    pub fn all() -> [Suite; 8] {
        [
            Suite::Centrality,
            Suite::LemmaZ2,
            Suite::Soundness,
            Suite::UniqueNf,
            Suite::Confluence,
            Suite::Cancellativity,
            Suite::DfaEquivalence,
            Suite::GrowthVsOracle,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Centrality => "centrality",
            Suite::LemmaZ2 => "lemma-z2",
            Suite::Soundness => "soundness",
            Suite::UniqueNf => "unique-nf",
            Suite::Confluence => "confluence",
            Suite::Cancellativity => "cancellativity",
            Suite::DfaEquivalence => "dfa-equivalence",
            Suite::GrowthVsOracle => "growth-vs-oracle",
        }
    }

    pub fn from_name(name: &str) -> Result<Suite, Error> {
        Suite::all()
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }
}

/// Caller-supplied bounds; `None` fields fall back to per-suite defaults
/// (`max_len`: `n+2` for exhaustive suites, `3n` for sampling suites).
#[derive(Debug, Clone, Default)]
pub struct SuiteBounds {
    pub max_len: Option<usize>,
    pub max_q: Option<usize>,
    pub max_v: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub cap: Option<usize>,
}

/// The bounds a suite actually ran with.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedBounds {
    pub max_len: usize,
    pub max_q: usize,
    pub max_v: usize,
    pub samples: usize,
    pub seed: u64,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    #[serde(rename = "suite_name")]
    pub suite: String,
    pub n: usize,
    pub k: usize,
    pub bounds: ResolvedBounds,
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.failures.sort_by(|a, b| a.input.cmp(&b.input));
        serde_json::to_string_pretty(&sorted).expect("serialization cannot fail")
    }

    /// One status line, then up to twenty failure detail lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {} n={} k={} checked={} failures={} elapsed_ms={}",
            self.suite,
            self.n,
            self.k,
            self.checked,
            self.failures.len(),
            self.elapsed_ms
        );
        let mut failures = self.failures.clone();
        failures.sort_by(|a, b| a.input.cmp(&b.input));
        for f in failures.iter().take(20) {
            let _ = writeln!(
                out,
                "  input={} expected={} actual={}",
                f.input, f.expected, f.actual
            );
        }
        if failures.len() > 20 {
            let _ = writeln!(out, "  … and {} more", failures.len() - 20);
        }
        out
    }
}

struct Ctx<'a> {
    p: &'a Presentation,
    bounds: ResolvedBounds,
    checked: u64,
    failures: Vec<Failure>,
}

impl Ctx<'_> {
    fn fail(&mut self, input: String, expected: String, actual: String) {
        self.failures.push(Failure {
            input,
            expected,
            actual,
        });
    }

    fn nf(&mut self, w: &Word) -> Word {
        match rewrite::normal_form(self.p, w) {
            Ok(nf) => nf,
            Err(e) => {
                self.fail(w.to_string(), "a normal form".into(), e.to_string());
                w.clone()
            }
        }
    }

    /// Asserts `normal_form(lhs) == normal_form(rhs)`.
    fn check_nf_equal(&mut self, label: &str, lhs: &Word, rhs: &Word) {
        self.checked += 1;
        let a = self.nf(lhs);
        let b = self.nf(rhs);
        if a != b {
            self.fail(
                format!("{label}: {lhs} vs {rhs}"),
                "common normal form".to_string(),
                format!("{a} ≠ {b}"),
            );
        }
    }
}

fn resolve(p: &Presentation, suite: Suite, bounds: &SuiteBounds) -> ResolvedBounds {
    let default_len = match suite {
        Suite::Soundness | Suite::Cancellativity => 3 * p.n(),
        _ => p.n() + 2,
    };
    ResolvedBounds {
        max_len: bounds.max_len.unwrap_or(default_len),
        max_q: bounds.max_q.unwrap_or(2),
        max_v: bounds.max_v.unwrap_or(2),
        samples: bounds.samples.unwrap_or(1000),
        seed: bounds.seed.unwrap_or(0),
        cap: bounds.cap.unwrap_or(oracle::DEFAULT_CLASS_CAP),
    }
}

/// Largest `len ≤ requested` with `n^len ≤ budget`.
fn clamp_len(n: usize, requested: usize, budget: u64) -> usize {
    let mut len = 0;
    let mut words = 1u64;
    while len < requested {
        words = match words.checked_mul(n as u64) {
            Some(w) if w <= budget => w,
            _ => break,
        };
        len += 1;
    }
    len
}

fn words_of_length(n: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (n as u64).pow(len as u32);
    let mut word = vec![1u8; len];
    let mut emitted = 0u64;
    std::iter::from_fn(move || {
        if emitted >= total {
            return None;
        }
        let out = word.clone();
        emitted += 1;
        for slot in word.iter_mut() {
            if (*slot as usize) < n {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
        Some(out)
    })
}

/// Runs one suite and collects its report.
pub fn run_suite(
    p: &Presentation,
    suite: Suite,
    bounds: &SuiteBounds,
) -> Result<SuiteReport, Error> {
    let start = Instant::now();
    let mut ctx = Ctx {
        p,
        bounds: resolve(p, suite, bounds),
        checked: 0,
        failures: Vec::new(),
    };
    match suite {
        Suite::Centrality => centrality(&mut ctx),
        Suite::LemmaZ2 => lemma_z2(&mut ctx),
        Suite::Soundness => soundness(&mut ctx),
        Suite::UniqueNf => unique_nf(&mut ctx)?,
        Suite::Confluence => confluence(&mut ctx),
        Suite::Cancellativity => cancellativity(&mut ctx),
        Suite::DfaEquivalence => dfa_equivalence(&mut ctx)?,
        Suite::GrowthVsOracle => growth_vs_oracle(&mut ctx)?,
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        n: p.n(),
        k: p.k(),
        bounds: ctx.bounds,
        checked: ctx.checked,
        failures: ctx.failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// `z a_i = a_i z` for every generator.
fn centrality(ctx: &mut Ctx) {
    let p = ctx.p;
    let z = p.identity_word();
    for i in 1..=p.n() as u8 {
        let ai = Word::from(vec![i]);
        ctx.check_nf_equal("centrality", &z.concat(&ai), &ai.concat(&z));
    }
}

/// Both block-chain identities behind the `D`/`E` rules, under `z`.
fn lemma_z2(ctx: &mut Ctx) {
    let p = ctx.p;
    let z = p.identity_word();
    let k = p.k() as i64;
    for i in 1..=p.n() as u8 {
        let r = p.residue(i as i64);
        for q in 0..=ctx.bounds.max_q {
            // z b_i ⋯ b_{i-q(k+1)} a_{i-1-q(k+1)} = z a_{i+k} c_{i+k} ⋯ c_{i+k-q(k+1)}
            let lhs = z.concat(&rewrite::zeta_tail(p, r, q));
            let first = p.residue_add(r, k);
            let mut rhs = z.concat(&Word::from(vec![first.get()]));
            rhs.extend(&p.chain_c(first, q));
            ctx.check_nf_equal(&format!("z2-b i={i} q={q}"), &lhs, &rhs);
            // z c_i ⋯ c_{i-q(k+1)} a_{i-k-q(k+1)} = z a_{i+1} b_{i+1} ⋯ b_{i+1-q(k+1)}
            let lhs = z.concat(&rewrite::eta_tail(p, r, q));
            let first = p.residue_add(r, 1);
            let mut rhs = z.concat(&Word::from(vec![first.get()]));
            rhs.extend(&p.chain_b(first, q));
            ctx.check_nf_equal(&format!("z2-c i={i} q={q}"), &lhs, &rhs);
        }
    }
}

/// Sampler biased toward relation words, `z` and block-chain tails, so that
/// long-range redexes actually appear in the sampled words.
fn sample_word(p: &Presentation, rng: &mut SplitMix64, max_len: usize, max_q: usize) -> Word {
    let n = p.n();
    let target = 1 + rng.below(max_len);
    let mut letters: Vec<u8> = Vec::with_capacity(target + 2 * n);
    while letters.len() < target {
        match rng.below(6) {
            0..=2 => letters.push(1 + rng.below(n) as u8),
            3 => {
                let rel = p.relation_words();
                letters.extend_from_slice(rel[rng.below(rel.len())].letters());
            }
            4 => letters.extend_from_slice(p.identity_word().letters()),
            _ => {
                let i = p.residue(1 + rng.below(n) as i64);
                let q = rng.below(max_q + 1);
                let tail = match rng.below(4) {
                    0 => rewrite::zeta_tail(p, i, q),
                    1 => rewrite::eta_tail(p, i, q),
                    2 => rewrite::theta_tail(p, i, q),
                    _ => rewrite::iota_tail(p, i, q),
                };
                letters.extend_from_slice(tail.letters());
            }
        }
    }
    letters.truncate(target);
    Word::from(letters)
}

/// Every redex of every sampled word rewrites to an oracle-equal word.
fn soundness(ctx: &mut Ctx) {
    let p = ctx.p;
    let mut rng = SplitMix64::new(ctx.bounds.seed);
    for _ in 0..ctx.bounds.samples {
        let word = sample_word(p, &mut rng, ctx.bounds.max_len, ctx.bounds.max_q);
        for redex in rewrite::find_redexes(p, &word) {
            ctx.checked += 1;
            let next = match rewrite::apply_rule(p, &word, &redex) {
                Ok(next) => next,
                Err(e) => {
                    ctx.fail(word.to_string(), "rule to apply".into(), e.to_string());
                    continue;
                }
            };
            match oracle::oracle_equal(p, &word, &next, ctx.bounds.cap) {
                Ok(true) => {}
                Ok(false) => ctx.fail(
                    format!("{:?} on {word}", redex.kind),
                    "oracle-equal rewrite".into(),
                    format!("{next} is not congruent"),
                ),
                Err(e) => ctx.fail(
                    format!("{:?} on {word}", redex.kind),
                    "oracle-equal rewrite".into(),
                    e.to_string(),
                ),
            }
        }
    }
}

/// Exhaustively: every congruence class of words up to the (budget-clamped)
/// length holds exactly one irreducible word, and reduction lands in class.
fn unique_nf(ctx: &mut Ctx) -> Result<(), Error> {
    let p = ctx.p;
    let n = p.n();
    let budget = EXHAUSTIVE_WORDS.min(oracle::ENUMERATION_BUDGET);
    ctx.bounds.max_len = clamp_len(n, ctx.bounds.max_len, budget);
    for len in 0..=ctx.bounds.max_len {
        let mut part = oracle::class_partition(p, len)?;
        let mut irreducible_count: std::collections::HashMap<usize, u32> =
            std::collections::HashMap::new();
        for letters in words_of_length(n, len) {
            let word = Word::from(letters);
            if rewrite::is_irreducible(p, &word) {
                let root = part.root(part.rank(word.letters()));
                *irreducible_count.entry(root).or_insert(0) += 1;
            }
        }
        let classes = part.class_count();
        if irreducible_count.len() as u64 != classes {
            ctx.fail(
                format!("length {len}"),
                format!("{classes} classes with an irreducible word"),
                format!("{}", irreducible_count.len()),
            );
        }
        for (root, count) in &irreducible_count {
            if *count != 1 {
                ctx.fail(
                    format!("length {len} class root {root}"),
                    "exactly one irreducible word".into(),
                    format!("{count}"),
                );
            }
        }
        for letters in words_of_length(n, len) {
            ctx.checked += 1;
            let word = Word::from(letters);
            let nf = match rewrite::normal_form(p, &word) {
                Ok(nf) => nf,
                Err(e) => {
                    ctx.fail(word.to_string(), "a normal form".into(), e.to_string());
                    continue;
                }
            };
            if part.root(part.rank(word.letters())) != part.root(part.rank(nf.letters())) {
                ctx.fail(
                    word.to_string(),
                    "normal form in the same class".into(),
                    nf.to_string(),
                );
            }
        }
    }
    Ok(())
}

/// The pairs of rule families whose left-hand sides can overlap, as an
/// inventory of ordered `(outer, inner)` kinds to synthesize and join.
const OVERLAP_INVENTORY: [(RuleKind, RuleKind); 45] = [
    // suffix-prefix overlaps
    (RuleKind::T, RuleKind::H),
    (RuleKind::H, RuleKind::T),
    (RuleKind::R, RuleKind::H),
    (RuleKind::H, RuleKind::R),
    (RuleKind::H, RuleKind::H),
    (RuleKind::D, RuleKind::T),
    (RuleKind::E, RuleKind::H),
    (RuleKind::D, RuleKind::R),
    (RuleKind::E, RuleKind::R),
    (RuleKind::S, RuleKind::R),
    (RuleKind::U, RuleKind::R),
    (RuleKind::D, RuleKind::H),
    (RuleKind::E, RuleKind::T),
    (RuleKind::S, RuleKind::T),
    (RuleKind::U, RuleKind::H),
    (RuleKind::S, RuleKind::H),
    (RuleKind::U, RuleKind::T),
    // overlaps landing just after the gap `v`
    (RuleKind::T, RuleKind::D),
    (RuleKind::H, RuleKind::E),
    (RuleKind::T, RuleKind::E),
    (RuleKind::H, RuleKind::D),
    (RuleKind::T, RuleKind::S),
    (RuleKind::H, RuleKind::U),
    (RuleKind::T, RuleKind::U),
    (RuleKind::H, RuleKind::S),
    (RuleKind::R, RuleKind::D),
    (RuleKind::R, RuleKind::E),
    (RuleKind::R, RuleKind::S),
    (RuleKind::R, RuleKind::U),
    (RuleKind::D, RuleKind::D),
    (RuleKind::E, RuleKind::E),
    (RuleKind::D, RuleKind::E),
    (RuleKind::E, RuleKind::D),
    (RuleKind::D, RuleKind::S),
    (RuleKind::E, RuleKind::U),
    (RuleKind::D, RuleKind::U),
    (RuleKind::E, RuleKind::S),
    (RuleKind::S, RuleKind::D),
    (RuleKind::U, RuleKind::E),
    (RuleKind::S, RuleKind::E),
    (RuleKind::U, RuleKind::D),
    (RuleKind::S, RuleKind::S),
    (RuleKind::U, RuleKind::U),
    (RuleKind::S, RuleKind::U),
    (RuleKind::U, RuleKind::S),
];

/// The ordered family pairs whose overlap ambiguities the confluence suite
/// synthesizes.
pub fn overlap_inventory() -> &'static [(RuleKind, RuleKind)] {
    &OVERLAP_INVENTORY
}

fn needs_z(kind: RuleKind) -> bool {
    matches!(kind, RuleKind::D | RuleKind::E | RuleKind::S | RuleKind::U)
}

/// Matchable cores per family: the full left-hand side for `T`/`R`/`H`, the
/// block-chain tail (with its `a_i` prefix for `S`/`U`) otherwise.
fn family_cores(p: &Presentation, kind: RuleKind, max_q: usize) -> Vec<Word> {
    let n = p.n();
    let mut out = Vec::new();
    match kind {
        RuleKind::T => {
            for i in 2..=n as u8 {
                out.push(p.rotation_word(p.residue(i as i64)));
            }
        }
        RuleKind::H => {
            for i in 1..=n as u8 {
                out.push(p.skip_word(p.residue(i as i64)));
            }
        }
        RuleKind::R => {
            for j in 2..=n as u8 {
                for m in 1..=max_q.max(1) {
                    let mut w = Word::from(vec![j]);
                    w.extend(&Word::from(vec![1u8; m]));
                    w.extend(&rewrite::z_tail(p));
                    out.push(w);
                }
            }
        }
        RuleKind::D | RuleKind::E | RuleKind::S | RuleKind::U => {
            for i in 1..=n as u8 {
                let r = p.residue(i as i64);
                let valid = match kind {
                    RuleKind::D => rewrite::in_d_range(p, r),
                    RuleKind::E => rewrite::in_e_range(p, r),
                    _ => true,
                };
                if !valid {
                    continue;
                }
                for q in 0..=max_q {
                    out.push(match kind {
                        RuleKind::D => rewrite::zeta_tail(p, r, q),
                        RuleKind::E => rewrite::eta_tail(p, r, q),
                        RuleKind::S => rewrite::theta_tail(p, r, q),
                        RuleKind::U => rewrite::iota_tail(p, r, q),
                        _ => unreachable!(),
                    });
                }
            }
        }
    }
    out
}

fn gap_words(p: &Presentation, max_v: usize) -> Vec<Word> {
    let n = p.n() as i64;
    let mut out = vec![Word::empty()];
    for len in 1..=max_v {
        // two deterministic fillers per length: descending letters and all-ones
        let descending: Vec<u8> = (0..len).map(|t| p.residue(n - t as i64).get()).collect();
        out.push(Word::from(descending));
        out.push(Word::from(vec![1u8; len]));
    }
    out
}

/// All one-step reducts of `w` share one normal form; counts as one check.
fn check_joinable(ctx: &mut Ctx, w: &Word, redexes: &[rewrite::RuleInstance]) {
    ctx.checked += 1;
    let mut target: Option<Word> = None;
    for r in redexes {
        let next = match rewrite::apply_rule(ctx.p, w, r) {
            Ok(next) => next,
            Err(e) => {
                ctx.fail(w.to_string(), "applicable redex".into(), e.to_string());
                return;
            }
        };
        let nf = match rewrite::normal_form(ctx.p, &next) {
            Ok(nf) => nf,
            Err(e) => {
                ctx.fail(w.to_string(), "a normal form".into(), e.to_string());
                return;
            }
        };
        match &target {
            None => target = Some(nf),
            Some(t) => {
                if *t != nf {
                    ctx.fail(
                        w.to_string(),
                        format!("all reducts join at {t}"),
                        format!("{:?} reduces to {nf}", r.kind),
                    );
                    return;
                }
            }
        }
    }
}

/// Proper suffix-prefix joins of the two families' matchable cores. For a
/// pair involving no identity-word prefix these are complete candidate
/// words; otherwise they still need `z · v` in front.
pub fn overlap_join_candidates(
    p: &Presentation,
    f1: RuleKind,
    f2: RuleKind,
    max_q: usize,
) -> Vec<Word> {
    let cores1 = family_cores(p, f1, max_q);
    let cores2 = family_cores(p, f2, max_q);
    let mut out = Vec::new();
    for c1 in &cores1 {
        for c2 in &cores2 {
            for off in 1..c1.len().min(c2.len()) {
                if c1.letters()[c1.len() - off..] == c2.letters()[..off] {
                    let mut joined = Word::from(c1.letters());
                    joined.extend(&Word::from(&c2.letters()[off..]));
                    out.push(joined);
                }
            }
        }
    }
    out
}

/// Exhaustive local confluence on short words, plus synthesized overlap
/// words for the family pairs of the inventory. A pair with no geometric
/// join at the given bounds has no ambiguity to resolve (for `k = n-1` this
/// happens to the ζ/η cross pairs, whose index ranges collapse to disjoint
/// classes); a pair that has joins but never yields both detected redexes is
/// a failure.
fn confluence(ctx: &mut Ctx) {
    let p = ctx.p;
    let n = p.n();
    ctx.bounds.max_len = clamp_len(n, ctx.bounds.max_len, EXHAUSTIVE_WORDS);
    for len in 0..=ctx.bounds.max_len {
        for letters in words_of_length(n, len) {
            let word = Word::from(letters);
            let redexes = rewrite::find_redexes(p, &word);
            if redexes.len() >= 2 {
                check_joinable(ctx, &word, &redexes);
            }
        }
    }
    // synthesized overlaps
    let z = p.identity_word();
    let gaps = gap_words(p, ctx.bounds.max_v);
    for &(f1, f2) in OVERLAP_INVENTORY.iter() {
        let candidates = overlap_join_candidates(p, f1, f2, ctx.bounds.max_q);
        let mut covered = false;
        for joined in &candidates {
            let hosts: Vec<Word> = if needs_z(f1) || needs_z(f2) {
                gaps.iter()
                    .map(|v| {
                        let mut w = z.concat(v);
                        w.extend(joined);
                        w
                    })
                    .collect()
            } else {
                vec![joined.clone()]
            };
            for host in hosts {
                let redexes = rewrite::find_redexes(p, &host);
                let has1 = redexes.iter().any(|r| r.kind == f1);
                let has2 = redexes.iter().any(|r| r.kind == f2);
                let enough = if f1 == f2 {
                    redexes.iter().filter(|r| r.kind == f1).count() >= 2
                } else {
                    has1 && has2
                };
                if enough && redexes.len() >= 2 {
                    covered = true;
                    check_joinable(ctx, &host, &redexes);
                }
            }
        }
        if !candidates.is_empty() && !covered {
            ctx.fail(
                format!("overlap pair ({:?},{:?})", f1, f2),
                format!("coverage of {} candidate joins", candidates.len()),
                "no host word carried both redexes".into(),
            );
        }
    }
}

/// `zS` is cancellative: multiplying two words by a common `z u` (on either
/// side) merges their `z`-classes exactly when the classes already agree.
fn cancellativity(ctx: &mut Ctx) {
    let p = ctx.p;
    let n = p.n();
    let z = p.identity_word();
    let mut rng = SplitMix64::new(ctx.bounds.seed);
    let relations = p.relation_words();
    for round in 0..ctx.bounds.samples {
        let len = 1 + rng.below((2 * n).min(ctx.bounds.max_len.max(1)));
        let w1 = Word::from(
            (0..len)
                .map(|_| 1 + rng.below(n) as u8)
                .collect::<Vec<u8>>(),
        );
        // every fourth round, force a congruent pair via one relation move
        let w2 = if round % 4 == 0 {
            let mut letters = w1.letters().to_vec();
            let mut replaced = false;
            if letters.len() >= n {
                for pos in 0..=letters.len() - n {
                    if let Some(hit) = relations
                        .iter()
                        .position(|r| r.letters() == &letters[pos..pos + n])
                    {
                        let other = (hit + 1 + rng.below(relations.len() - 1)) % relations.len();
                        letters[pos..pos + n].copy_from_slice(relations[other].letters());
                        replaced = true;
                        break;
                    }
                }
            }
            if replaced {
                Word::from(letters)
            } else {
                w1.clone()
            }
        } else {
            Word::from(
                (0..len)
                    .map(|_| 1 + rng.below(n) as u8)
                    .collect::<Vec<u8>>(),
            )
        };
        let u = Word::from(
            (0..rng.below(n + 1))
                .map(|_| 1 + rng.below(n) as u8)
                .collect::<Vec<u8>>(),
        );
        let base_equal = ctx.nf(&z.concat(&w1)) == ctx.nf(&z.concat(&w2));
        // left: z u w1 = z u w2 ⇔ z w1 = z w2
        let left_equal = ctx.nf(&z.concat(&u).concat(&w1)) == ctx.nf(&z.concat(&u).concat(&w2));
        ctx.checked += 1;
        if left_equal != base_equal {
            ctx.fail(
                format!("left u={u} w1={w1} w2={w2}"),
                format!("equal={base_equal}"),
                format!("equal={left_equal}"),
            );
        }
        // right: z w1 u = z w2 u ⇔ z w1 = z w2
        let right_equal = ctx.nf(&z.concat(&w1).concat(&u)) == ctx.nf(&z.concat(&w2).concat(&u));
        ctx.checked += 1;
        if right_equal != base_equal {
            ctx.fail(
                format!("right u={u} w1={w1} w2={w2}"),
                format!("equal={base_equal}"),
                format!("equal={right_equal}"),
            );
        }
    }
}

/// The two DFA constructions accept the same language; a mismatch is
/// reported verbatim with the shortest distinguishing word.
fn dfa_equivalence(ctx: &mut Ctx) -> Result<(), Error> {
    let p = ctx.p;
    let irr = lang::irreducible_dfa(p)?;
    let thm = lang::theorem_language_dfa(p)?;
    ctx.checked += 1;
    let (equal, witness) = lang::dfa_equivalent(&irr, &thm);
    if !equal {
        let w = witness.expect("inequivalence always carries a witness");
        ctx.fail(
            "irreducible vs theorem".into(),
            "language equivalence".into(),
            format!("shortest witness: {w}"),
        );
    }
    Ok(())
}

/// `count_words(irreducible_dfa, ℓ) = count_classes(ℓ)` for every `ℓ` within
/// the oracle's enumeration budget.
fn growth_vs_oracle(ctx: &mut Ctx) -> Result<(), Error> {
    let p = ctx.p;
    ctx.bounds.max_len = clamp_len(p.n(), ctx.bounds.max_len, oracle::ENUMERATION_BUDGET);
    let dfa = lang::irreducible_dfa(p)?;
    let counts = dfa.count_words_upto(ctx.bounds.max_len);
    for (len, by_dfa) in counts.iter().enumerate() {
        ctx.checked += 1;
        let by_oracle = oracle::count_classes(p, len)?;
        if *by_dfa != num_bigint::BigUint::from(by_oracle) {
            ctx.fail(
                format!("length {len}"),
                format!("{by_oracle}"),
                format!("{by_dfa}"),
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p43() -> Presentation {
        Presentation::new(4, 3).unwrap()
    }

    fn run(p: &Presentation, suite: Suite, bounds: SuiteBounds) -> SuiteReport {
        run_suite(p, suite, &bounds).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::all() {
            assert_eq!(Suite::from_name(s.name()).unwrap(), s);
        }
        assert!(matches!(
            Suite::from_name("nope"),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn centrality_checks_n_words() {
        let r = run(&p43(), Suite::Centrality, SuiteBounds::default());
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn lemma_z2_at_q0_checks_both_identities() {
        let r = run(
            &p43(),
            Suite::LemmaZ2,
            SuiteBounds {
                max_q: Some(0),
                ..Default::default()
            },
        );
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checked, 8);
    }

    #[test]
    fn lemma_z2_specific_instance() {
        // z b_1 a_4 = z a_4 c_4 for (4,3): both normalize to z·[2,3,4]
        let p = p43();
        let z = p.identity_word();
        let lhs = z.concat(&Word::from(&[2u8, 3, 4][..]));
        let rhs = z.concat(&Word::from(&[4u8, 3, 2][..]));
        assert_eq!(
            rewrite::normal_form(&p, &lhs).unwrap(),
            rewrite::normal_form(&p, &rhs).unwrap()
        );
    }

    #[test]
    fn unique_nf_counts_the_whole_cube() {
        let r = run(
            &p43(),
            Suite::UniqueNf,
            SuiteBounds {
                max_len: Some(6),
                ..Default::default()
            },
        );
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checked, 5461); // 1 + 4 + … + 4^6
    }

    #[test]
    fn soundness_samples_pass() {
        let r = run(
            &p43(),
            Suite::Soundness,
            SuiteBounds {
                samples: Some(120),
                ..Default::default()
            },
        );
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.checked > 100, "sampler found only {} redexes", r.checked);
    }

    #[test]
    fn confluence_covers_the_inventory() {
        let r = run(
            &p43(),
            Suite::Confluence,
            SuiteBounds {
                max_len: Some(6),
                max_q: Some(1),
                max_v: Some(1),
                ..Default::default()
            },
        );
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn cancellativity_samples_pass() {
        let r = run(
            &p43(),
            Suite::Cancellativity,
            SuiteBounds {
                samples: Some(150),
                ..Default::default()
            },
        );
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checked, 300);
    }

    #[test]
    fn dfa_equivalence_reports_the_skip_witness() {
        let r = run(&p43(), Suite::DfaEquivalence, SuiteBounds::default());
        assert!(!r.passed());
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].actual.contains("1 4 3 2"));
    }

    #[test]
    fn growth_vs_oracle_passes() {
        let r = run(&p43(), Suite::GrowthVsOracle, SuiteBounds::default());
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checked, 7); // lengths 0..=6
    }

    #[test]
    fn suites_are_deterministic_for_a_fixed_seed() {
        let p = Presentation::new(5, 4).unwrap();
        let bounds = SuiteBounds {
            samples: Some(60),
            seed: Some(42),
            ..Default::default()
        };
        for suite in [Suite::Soundness, Suite::Cancellativity] {
            let a = run_suite(&p, suite, &bounds).unwrap();
            let b = run_suite(&p, suite, &bounds).unwrap();
            assert_eq!(a.checked, b.checked);
            assert_eq!(a.failures.len(), b.failures.len());
        }
    }

    #[test]
    fn reports_serialize_deterministically() {
        let r1 = run(&p43(), Suite::Centrality, SuiteBounds::default());
        let j = r1.to_json();
        assert!(j.contains("\"suite_name\": \"centrality\""));
        assert!(j.contains("\"checked\": 4"));
        let t = r1.to_text();
        assert!(t.starts_with("PASS centrality n=4 k=3 checked=4"));
    }
}
