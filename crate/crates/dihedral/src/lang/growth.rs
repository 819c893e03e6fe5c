//! Exact rational growth series of a DFA language.
//!
//! Counts come from iterating the transition count vector with big integers.
//! The minimal linear recurrence behind the counts is recovered with
//! Berlekamp–Massey over several 62-bit prime fields, lifted to the integers
//! by CRT (the recurrence of a Krylov sequence of an integer matrix divides a
//! monic integer polynomial, so its coefficients are integers), and then
//! validated **exactly** against every computed term before anything is
//! returned. No floating point, no unverified modular shortcut.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::dfa::Dfa;

/// Exact coefficient sequence plus a rational generating function.
#[derive(Debug, Clone)]
pub struct GrowthSeries {
    /// `coefficients[len]` = number of accepted words of that length.
    pub coefficients: Vec<BigUint>,
    /// Integer numerator polynomial, constant term first.
    pub numerator: Vec<BigInt>,
    /// Integer denominator polynomial, constant term first and nonzero,
    /// leading coefficient positive.
    pub denominator: Vec<BigInt>,
}

impl GrowthSeries {
    /// Power-series expansion of `numerator / denominator` up to index
    /// `upto` inclusive. The division is exact because the denominator's
    /// constant term is ±1 by construction.
    pub fn expansion(&self, upto: usize) -> Vec<BigInt> {
        let den0 = &self.denominator[0];
        assert!(!den0.is_zero());
        let mut out: Vec<BigInt> = Vec::with_capacity(upto + 1);
        for i in 0..=upto {
            let mut acc = if i < self.numerator.len() {
                self.numerator[i].clone()
            } else {
                BigInt::zero()
            };
            for j in 1..self.denominator.len().min(i + 1) {
                acc -= &self.denominator[j] * &out[i - j];
            }
            let (q, r) = num_integer_div_rem(&acc, den0);
            assert!(r.is_zero(), "expansion division must be exact");
            out.push(q);
        }
        out
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

struct Primes {
    next: u64,
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.next -= 2;
            if is_prime(self.next) {
                return Some(self.next);
            }
        }
    }
}

fn primes() -> Primes {
    Primes {
        next: (1u64 << 62) + 1,
    }
}

/// Berlekamp–Massey over GF(p): the shortest LFSR `(L, d)` with
/// `s_i = Σ_{t=1..L} d_t s_{i-t}` for all `i ≥ L`.
fn berlekamp_massey(s: &[u64], p: u64) -> (usize, Vec<u64>) {
    let mut c = vec![1u64]; // connection polynomial, c[0] = 1
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_d = 1u64;
    for i in 0..s.len() {
        let mut d = 0u64;
        for j in 0..=l.min(i) {
            d = (d + mul_mod(c[j], s[i - j], p)) % p;
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = mul_mod(d, inv_mod(last_d, p), p);
        if 2 * l <= i {
            let t = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for j in 0..b.len() {
                c[j + m] = (c[j + m] + p - mul_mod(coef, b[j], p)) % p;
            }
            l = i + 1 - l;
            b = t;
            last_d = d;
            m = 1;
        } else {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for j in 0..b.len() {
                c[j + m] = (c[j + m] + p - mul_mod(coef, b[j], p)) % p;
            }
            m += 1;
        }
    }
    let d = (1..=l)
        .map(|t| (p - c.get(t).copied().unwrap_or(0) % p) % p)
        .collect();
    (l, d)
}

fn recurrence_holds(seq: &[BigInt], d: &[BigInt]) -> bool {
    let m = d.len();
    for i in m..seq.len() {
        let mut acc = BigInt::zero();
        for (t, dt) in d.iter().enumerate() {
            acc += dt * &seq[i - 1 - t];
        }
        if acc != seq[i] {
            return false;
        }
    }
    true
}

/// Integer coefficients `d_1..d_m` of the minimal recurrence of `seq`,
/// exact-validated over every term.
fn find_recurrence(seq: &[BigUint], order_bound: usize) -> Vec<BigInt> {
    let seq_int: Vec<BigInt> = seq.iter().map(|c| BigInt::from(c.clone())).collect();
    if seq_int.iter().all(|c| c.is_zero()) {
        return Vec::new();
    }
    let mut order = 0usize;
    let mut modulus = BigUint::one();
    let mut residues: Vec<BigUint> = Vec::new();
    let mut last_lift: Option<Vec<BigInt>> = None;
    for p in primes().take(128) {
        let sm: Vec<u64> = seq.iter().map(|c| (c % p).to_u64().unwrap()).collect();
        let (l, d) = berlekamp_massey(&sm, p);
        if l > order {
            // previous primes were unlucky for this order; restart the CRT
            order = l;
            modulus = BigUint::one();
            residues = Vec::new();
            last_lift = None;
        }
        if l < order {
            continue;
        }
        if modulus.is_one() {
            modulus = BigUint::from(p);
            residues = d.iter().map(|&x| BigUint::from(x)).collect();
        } else {
            // CRT merge: x ≡ residues (mod modulus), x ≡ d (mod p)
            let m_mod_p = (&modulus % p).to_u64().unwrap();
            let m_inv = inv_mod(m_mod_p, p);
            for (r, &dp) in residues.iter_mut().zip(d.iter()) {
                let r_mod_p = (&*r % p).to_u64().unwrap();
                let diff = (dp + p - r_mod_p) % p;
                let t = mul_mod(diff, m_inv, p);
                *r += &modulus * BigUint::from(t);
            }
            modulus *= BigUint::from(p);
        }
        let half = &modulus / 2u8;
        let lift: Vec<BigInt> = residues
            .iter()
            .map(|r| {
                if *r > half {
                    BigInt::from(r.clone()) - BigInt::from(modulus.clone())
                } else {
                    BigInt::from(r.clone())
                }
            })
            .collect();
        let stable = last_lift.as_ref() == Some(&lift);
        last_lift = Some(lift.clone());
        if (stable || modulus > BigUint::from(u64::MAX)) && recurrence_holds(&seq_int, &lift) {
            assert!(
                lift.len() <= order_bound,
                "recurrence order {} exceeds the state count {}",
                lift.len(),
                order_bound
            );
            return lift;
        }
    }
    panic!("integer recurrence reconstruction did not converge");
}

fn trim_zeros(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact coefficients for lengths `0..=max_length` and the rational
/// generating function whose expansion reproduces them.
///
/// The linear recurrence behind the series has order at most the state count
/// of `dfa`; internally the sequence is computed out to twice that bound so
/// the recurrence is pinned down uniquely before being validated.
pub fn growth_series(dfa: &Dfa, max_length: usize) -> GrowthSeries {
    let bound = dfa.state_count();
    let horizon = max_length.max(2 * bound + 4);
    let all = dfa.count_words_upto(horizon);
    let d = find_recurrence(&all, bound);
    let m = d.len();
    // denominator 1 - d_1 x - … - d_m x^m
    let mut den: Vec<BigInt> = Vec::with_capacity(m + 1);
    den.push(BigInt::one());
    for dt in &d {
        den.push(-dt.clone());
    }
    // numerator = denominator · series, exact and supported below m
    let seq_int: Vec<BigInt> = all.iter().map(|c| BigInt::from(c.clone())).collect();
    let mut num: Vec<BigInt> = Vec::new();
    for i in 0..m.max(1) {
        let mut acc = BigInt::zero();
        for j in 0..den.len().min(i + 1) {
            acc += &den[j] * &seq_int[i - j];
        }
        num.push(acc);
    }
    let mut num = trim_zeros(num);
    let mut den = trim_zeros(den);
    if den.last().map(|c| c < &BigInt::zero()).unwrap_or(false) {
        for c in &mut num {
            *c = -c.clone();
        }
        for c in &mut den {
            *c = -c.clone();
        }
    }
    let series = GrowthSeries {
        coefficients: all[..=max_length].to_vec(),
        numerator: num,
        denominator: den,
    };
    debug_assert_eq!(
        series.expansion(horizon),
        seq_int,
        "generating function must reproduce every computed coefficient"
    );
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::nfa::{Nfa, STATE_LIMIT};

    #[test]
    fn sigma_star_has_geometric_series() {
        let d = Nfa::sigma_star(3)
            .determinize(STATE_LIMIT)
            .unwrap()
            .minimize();
        let g = growth_series(&d, 6);
        let expected: Vec<BigUint> = (0..=6u32).map(|l| BigUint::from(3u8).pow(l)).collect();
        assert_eq!(g.coefficients, expected);
        // 1/(1-3x), possibly scaled by -1 to keep the leading coefficient positive
        assert_eq!(
            g.expansion(6),
            expected
                .iter()
                .map(|c| BigInt::from(c.clone()))
                .collect::<Vec<_>>()
        );
        assert_eq!(g.denominator.len(), 2);
        assert!(!g.denominator[0].is_zero());
        assert!(g.denominator.last().unwrap() > &BigInt::zero());
    }

    #[test]
    fn finite_language_has_polynomial_series() {
        let d = Nfa::word(2, &[1, 2])
            .determinize(STATE_LIMIT)
            .unwrap()
            .minimize();
        let g = growth_series(&d, 5);
        let mut expected = vec![BigUint::zero(); 6];
        expected[2] = BigUint::one();
        assert_eq!(g.coefficients, expected);
        let exp = g.expansion(5);
        assert_eq!(exp[2], BigInt::one());
        assert!(exp.iter().enumerate().all(|(i, c)| i == 2 || c.is_zero()));
    }

    #[test]
    fn empty_language_is_the_zero_series() {
        let mut f = Nfa::new(2);
        let s = f.add_state();
        f.set_start(s);
        let d = f.determinize(STATE_LIMIT).unwrap().minimize();
        let g = growth_series(&d, 3);
        assert!(g.coefficients.iter().all(|c| c.is_zero()));
        assert!(g.expansion(3).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn berlekamp_massey_recovers_fibonacci() {
        let p = (1u64 << 61) - 1;
        let mut s = vec![0u64, 1];
        for i in 2..40 {
            s.push((s[i - 1] + s[i - 2]) % p);
        }
        let (l, d) = berlekamp_massey(&s, p);
        assert_eq!(l, 2);
        assert_eq!(d, vec![1, 1]);
    }
}
