//! Acceptance suite: nine criteria, one test and one printed PASS/FAIL line
//! each. Run with `cargo test -p dihedral-cli --test acceptance -- --nocapture`
//! to see every line; a failing criterion panics with the same message.
//!
//! Criterion 6 documents a known, genuine discrepancy: the verbatim
//! closed-form description of the normal-word language admits the reducible
//! word `a_1 a_{1+k} ⋯ a_{1-k}` (the skip word split across its `a_1^*`
//! prefix), so the equivalence check fails with exactly that witness on
//! every presentation of the matrix. The criterion is asserted as stated and
//! the witness is emitted rather than patched around.

use std::process::Command;
use std::time::{Duration, Instant};

use dihedral::lang;
use dihedral::oracle;
use dihedral::presentation::{Presentation, Word};
use dihedral::rewrite::{self, RuleKind};
use dihedral::verify::{overlap_join_candidates, run_suite, Suite, SuiteBounds};
use num_bigint::BigUint;

const MATRIX: [(i64, i64); 6] = [(4, 3), (5, 4), (6, 5), (8, 3), (8, 5), (8, 7)];

fn conclude(criterion: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status} — {detail}");
    assert!(ok, "criterion {criterion}: FAIL — {detail}");
}

/// Deterministic word sampler: half uniform, half built from relation words,
/// identity words and block-chain tails, so long-range redexes occur.
struct Sampler {
    state: u64,
}

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }

    fn word(&mut self, p: &Presentation, max_len: usize, structured: bool) -> Word {
        let n = p.n();
        let target = 1 + self.below(max_len);
        let mut letters = Vec::new();
        while letters.len() < target {
            if !structured || self.below(2) == 0 {
                letters.push(1 + self.below(n) as u8);
            } else {
                match self.below(3) {
                    0 => letters.extend_from_slice(p.identity_word().letters()),
                    1 => {
                        let rel = p.relation_words();
                        letters.extend_from_slice(rel[self.below(rel.len())].letters());
                    }
                    _ => {
                        let i = p.residue(1 + self.below(n) as i64);
                        let q = self.below(3);
                        let tail = match self.below(4) {
                            0 => rewrite::zeta_tail(p, i, q),
                            1 => rewrite::eta_tail(p, i, q),
                            2 => rewrite::theta_tail(p, i, q),
                            _ => rewrite::iota_tail(p, i, q),
                        };
                        letters.extend_from_slice(tail.letters());
                    }
                }
            }
        }
        letters.truncate(target);
        Word::from(letters)
    }
}

#[test]
fn criterion_1_parameter_matrix() {
    let start = Instant::now();
    for (n, k) in MATRIX {
        let p = Presentation::new(n, k).unwrap_or_else(|e| panic!("({n},{k}): {e}"));
        let relations = p.relation_words();
        assert_eq!(relations.len(), 2 * p.n(), "({n},{k}): relation count");
        // group_h verifies closure, |H| = 2n, ⟨λ⟩ normal of index 2, μ² ∈ ⟨λ⟩
        let h = p.group_h().unwrap_or_else(|e| panic!("({n},{k}): {e}"));
        assert_eq!(h.len(), 2 * p.n(), "({n},{k}): group order");
    }
    let elapsed = start.elapsed();
    conclude(
        1,
        elapsed < Duration::from_secs(1),
        &format!(
            "six presentations validate, 2n relation words, group of order 2n with the cycle normal of index 2 ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_2_unique_normal_form() {
    let start = Instant::now();
    let mut checked = 0;
    for (n, k) in [(4i64, 3i64), (5, 4)] {
        let p = Presentation::new(n, k).unwrap();
        let report = run_suite(
            &p,
            Suite::UniqueNf,
            &SuiteBounds {
                max_len: Some(p.n() + 2),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            report.bounds.max_len,
            p.n() + 2,
            "length must not be clamped"
        );
        assert!(report.passed(), "({n},{k}):\n{}", report.to_text());
        checked += report.checked;
    }
    let elapsed = start.elapsed();
    conclude(
        2,
        elapsed < Duration::from_secs(600),
        &format!(
            "every congruence class up to length n+2 holds exactly one irreducible word; reduction lands in class ({checked} words, {elapsed:?})"
        ),
    );
}

#[test]
fn criterion_3_descent_idempotence_strategy_independence() {
    let start = Instant::now();
    let mut steps_seen = 0u64;
    for (n, k) in MATRIX {
        let p = Presentation::new(n, k).unwrap();
        let mut rng = Sampler::new(0);
        for round in 0..1000u64 {
            let word = rng.word(&p, 3 * p.n(), round % 2 == 0);
            let (nf, steps) = rewrite::reduce_with_trace(&p, &word).unwrap();
            let mut cur = word.clone();
            for step in &steps {
                assert_eq!(step.result.len(), cur.len(), "({n},{k}): length changed");
                assert!(step.result < cur, "({n},{k}): step did not descend");
                cur = step.result.clone();
            }
            steps_seen += steps.len() as u64;
            assert_eq!(
                rewrite::normal_form(&p, &nf).unwrap(),
                nf,
                "({n},{k}): idempotence on {word}"
            );
            let randomized = rewrite::normal_form_randomized(&p, &word, round).unwrap();
            assert_eq!(randomized, nf, "({n},{k}): strategies disagree on {word}");
        }
    }
    let elapsed = start.elapsed();
    conclude(
        3,
        elapsed < Duration::from_secs(60),
        &format!(
            "6000 seeded words: every step length-preserving and strictly descending, reduction idempotent and strategy-independent ({steps_seen} steps, {elapsed:?})"
        ),
    );
}

#[test]
fn criterion_4_block_identities_and_centrality() {
    let start = Instant::now();
    let mut checked = 0;
    for (n, k) in MATRIX {
        let p = Presentation::new(n, k).unwrap();
        for (suite, bounds) in [
            (
                Suite::LemmaZ2,
                SuiteBounds {
                    max_q: Some(3),
                    ..Default::default()
                },
            ),
            (Suite::Centrality, SuiteBounds::default()),
        ] {
            let report = run_suite(&p, suite, &bounds).unwrap();
            assert!(report.passed(), "({n},{k}):\n{}", report.to_text());
            checked += report.checked;
        }
    }
    let elapsed = start.elapsed();
    conclude(
        4,
        elapsed < Duration::from_secs(60),
        &format!(
            "both block-chain identities (q ≤ 3) and centrality of a_1⋯a_n hold on the whole matrix ({checked} identities, {elapsed:?})"
        ),
    );
}

#[test]
fn criterion_5_confluence() {
    let start = Instant::now();
    let p = Presentation::new(4, 3).unwrap();
    let report = run_suite(
        &p,
        Suite::Confluence,
        &SuiteBounds {
            max_len: Some(p.n() + 4),
            max_q: Some(2),
            max_v: Some(2),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(
        report.bounds.max_len,
        p.n() + 4,
        "length must not be clamped"
    );
    assert!(report.passed(), "{}", report.to_text());
    // Every family pair of the overlap inventory that admits a join at these
    // bounds was exercised (the suite fails otherwise). At (4,3) the ζ/η
    // cross pairs admit none: k+1 ≡ 0 (mod n) forces both chains onto the
    // same index class, which the disjoint D/E ranges rule out.
    let mut vacuous = Vec::new();
    for &(f1, f2) in dihedral::verify::overlap_inventory() {
        if overlap_join_candidates(&p, f1, f2, 2).is_empty() {
            vacuous.push((f1, f2));
        }
    }
    let genuinely_vacuous = vacuous == vec![(RuleKind::D, RuleKind::E), (RuleKind::E, RuleKind::D)];
    let elapsed = start.elapsed();
    conclude(
        5,
        genuinely_vacuous && elapsed < Duration::from_secs(600),
        &format!(
            "all multi-redex words of length ≤ 8 join; every realizable overlap pair covered (vacuous at (4,3): {vacuous:?}; {} checks, {elapsed:?})",
            report.checked
        ),
    );
}

#[test]
fn criterion_6_automaton_equivalence() {
    let start = Instant::now();
    let mut witnesses = Vec::new();
    for (n, k) in MATRIX {
        let p = Presentation::new(n, k).unwrap();
        let irr = lang::irreducible_dfa(&p).unwrap();
        let thm = lang::theorem_language_dfa(&p).unwrap();
        let (equal, witness) = lang::dfa_equivalent(&irr, &thm);
        if !equal {
            let w = witness.expect("inequivalence carries a witness");
            println!("criterion 6: ({n},{k}) shortest witness: {w}");
            witnesses.push(format!("({n},{k}): {w}"));
        }
    }
    let elapsed = start.elapsed();
    conclude(
        6,
        witnesses.is_empty() && elapsed < Duration::from_secs(120),
        &if witnesses.is_empty() {
            format!("closed-form and operational automata agree on the whole matrix ({elapsed:?})")
        } else {
            format!(
                "closed-form language differs from the irreducible words; shortest witnesses: {} ({elapsed:?})",
                witnesses.join(", ")
            )
        },
    );
}

#[test]
fn criterion_7_growth_series() {
    let start = Instant::now();
    for (n, k) in MATRIX {
        let p = Presentation::new(n, k).unwrap();
        let nn = p.n();
        let dfa = lang::irreducible_dfa(&p).unwrap();
        let counts = dfa.count_words_upto(nn + 2);
        for (len, count) in counts.iter().enumerate().take(nn) {
            assert_eq!(
                *count,
                BigUint::from(nn as u64).pow(len as u32),
                "({n},{k}): free count below the relation length"
            );
        }
        let expected_at_n = BigUint::from(nn as u64).pow(nn as u32) - BigUint::from(2 * nn - 1);
        assert_eq!(counts[nn], expected_at_n, "({n},{k}): count at length n");
        assert_eq!(
            BigUint::from(oracle::count_classes(&p, nn).unwrap()),
            expected_at_n,
            "({n},{k}): oracle cross-check at length n"
        );
        let g = lang::growth_series(&dfa, nn + 2);
        assert_eq!(g.coefficients, counts, "({n},{k}): series coefficients");
        let expansion = g.expansion(nn + 2);
        for (len, count) in counts.iter().enumerate() {
            assert_eq!(
                expansion[len],
                num_bigint::BigInt::from(count.clone()),
                "({n},{k}): generating function expansion at {len}"
            );
        }
    }
    for (n, k) in [(4i64, 3i64), (5, 4)] {
        let p = Presentation::new(n, k).unwrap();
        let dfa = lang::irreducible_dfa(&p).unwrap();
        let counts = dfa.count_words_upto(p.n() + 2);
        for (len, count) in counts.iter().enumerate() {
            assert_eq!(
                *count,
                BigUint::from(oracle::count_classes(&p, len).unwrap()),
                "({n},{k}): oracle cross-check at length {len}"
            );
        }
    }
    let elapsed = start.elapsed();
    conclude(
        7,
        elapsed < Duration::from_secs(300),
        &format!(
            "counts are n^ℓ below n and n^n−2n+1 at n (oracle-verified), match the oracle through n+2 on (4,3) and (5,4), and the generating functions expand exactly ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_8_cancellativity() {
    let start = Instant::now();
    let mut checked = 0;
    for (n, k) in MATRIX {
        let p = Presentation::new(n, k).unwrap();
        let report = run_suite(
            &p,
            Suite::Cancellativity,
            &SuiteBounds {
                samples: Some(1000),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(report.passed(), "({n},{k}):\n{}", report.to_text());
        checked += report.checked;
    }
    let elapsed = start.elapsed();
    conclude(
        8,
        elapsed < Duration::from_secs(60),
        &format!(
            "1000 seeded triples per presentation: common left/right factors in zS never merge distinct classes ({checked} checks, {elapsed:?})"
        ),
    );
}

#[test]
fn criterion_9_cli_contract() {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_dihedral"))
            .args(args)
            .output()
            .expect("binary must run")
    };
    let nf = run(&["--n", "4", "--k", "3", "nf", "2 3 4 1"]);
    let nf_ok = nf.status.code() == Some(0) && nf.stdout == b"1 2 3 4\ni=1 j=1 b=\n";
    let eq = run(&["--n", "4", "--k", "3", "eq", "1 2 3 4", "4 3 2 1"]);
    let eq_ok = eq.status.code() == Some(0) && eq.stdout == b"equal\n";
    let bad = run(&["--n", "4", "--k", "2", "nf", "1"]);
    let bad_ok = bad.status.code() == Some(2)
        && String::from_utf8_lossy(&bad.stderr).contains("k^2 ≡ 1 mod n");
    conclude(
        9,
        nf_ok && eq_ok && bad_ok,
        &format!("documented invocations are byte-identical with the right exit codes (nf={nf_ok} eq={eq_ok} invalid={bad_ok})"),
    );
}
