//! Prime phases as the nonvanishing support of cumulative products of
//! wave co-numbers.
//!
//! The sieve only reads which phases vanish, so co-number products are
//! tracked as bit masks over `[2, hi]`. [`circ_product`] keeps the exact
//! value-level product on pure wave numbers.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplicative::{expi_cycles, MultWave};
use crate::rational::{reduce, Rational};

/// `w(m1/n1, g1) ⊙ w(m2/n2, g2) = w(1/(n1 n2), (g1+g2)/A)` with
/// `A = m1 n2 + m2 n1`, the `A`th root of the ⊗-product.
pub fn circ_product(a: &MultWave, b: &MultWave) -> Result<MultWave> {
    let (m1, n1) = (a.f().numer(), a.f().denom());
    let (m2, n2) = (b.f().numer(), b.f().denom());
    let big_a = m1 * n2 + m2 * n1;
    if big_a.is_zero() {
        return Err(Error::DegenerateProduct);
    }
    let f = reduce(1, n1 * n2)?;
    let g = (a.g() + b.g()).checked_div(&Rational::from_integer(big_a))?;
    Ok(MultWave::new(f, g))
}

/// Nonvanishing phases over `[2, hi]` of a co-number product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportMask {
    hi: u64,
    bits: Vec<bool>,
    moduli: Vec<u64>,
}

impl SupportMask {
    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `true` when phase `xi` is nonzero; `None` outside `[2, hi]`.
    pub fn bit(&self, xi: u64) -> Option<bool> {
        (2..=self.hi).contains(&xi).then(|| self.bits[(xi - 2) as usize])
    }

    /// Nonzero phases in `[lo, hi_excl)`, clipped to the mask window.
    pub fn nonzero_in(&self, lo: u64, hi_excl: u64) -> Vec<u64> {
        let lo = lo.max(2);
        let hi_excl = hi_excl.min(self.hi + 1);
        (lo..hi_excl).filter(|&xi| self.bits[(xi - 2) as usize]).collect()
    }

    pub fn zeros(&self) -> Vec<u64> {
        (2..=self.hi).filter(|&xi| !self.bits[(xi - 2) as usize]).collect()
    }
}

/// Zero pattern of the cumulative product of `∗w(1/m, 0)` over `moduli`:
/// phase `ξ` vanishes iff some modulus divides it.
pub fn cum_co_mask(moduli: &[u64], hi: u64) -> Result<SupportMask> {
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::Argument(format!("co-number modulus must be >= 2, got {m}")));
    }
    if hi < 2 {
        return Err(Error::Argument(format!("mask window [2, {hi}] is empty")));
    }
    let mut bits = vec![true; (hi - 1) as usize];
    for &m in moduli {
        let mut xi = m;
        while xi <= hi {
            bits[(xi - 2) as usize] = false;
            xi += m;
        }
    }
    let mut sorted = moduli.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(SupportMask { hi, bits, moduli: sorted })
}

/// Element-wise product over `ξ = 2..=hi` of the sampled co-numbers
/// `∗w(1/m, 0)` (the sample with its `ξ ≡ 0 mod m` phase zeroed).
pub fn cum_co_product_values(moduli: &[u64], hi: u64) -> Result<Vec<Complex64>> {
    if hi < 2 {
        return Err(Error::Argument(format!("window [2, {hi}] is empty")));
    }
    let mut out = vec![Complex64::new(1.0, 0.0); (hi - 1) as usize];
    for &m in moduli {
        if m < 2 {
            return Err(Error::Argument(format!("co-number modulus must be >= 2, got {m}")));
        }
        for (i, v) in out.iter_mut().enumerate() {
            let xi = i as u64 + 2;
            if xi.is_multiple_of(m) {
                *v = Complex64::new(0.0, 0.0);
            } else {
                *v *= expi_cycles(&reduce(xi % m, m)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveState {
    pub known_primes: Vec<u64>,
    /// Largest phase fully classified.
    pub frontier: u64,
}

impl Default for SieveState {
    fn default() -> Self {
        SieveState { known_primes: vec![2, 3], frontier: 3 }
    }
}

impl SieveState {
    /// Checks `known_primes` against a classical sieve up to `frontier`.
    pub fn validate(&self) -> Result<()> {
        let oracle = eratosthenes(self.frontier)?;
        if oracle != self.known_primes {
            let first_bad = oracle
                .iter()
                .zip(&self.known_primes)
                .position(|(a, b)| a != b)
                .unwrap_or(oracle.len().min(self.known_primes.len()));
            return Err(Error::SieveInvariant(format!(
                "known primes disagree with the oracle at index {first_bad} (frontier {})",
                self.frontier
            )));
        }
        Ok(())
    }
}

/// One sieve step, as reported in traces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub p_next: u64,
    pub range_lo: u64,
    pub range_hi: u64,
    pub found: usize,
    pub cum_count: usize,
}

/// With `known = p_1..p_{N+1}`: masks by `p_1..p_N` and reads the nonzero
/// phases of `[p_{N+1}, p_{N+1}²)`. Returns the new state and those phases.
pub fn sieve_step(state: &SieveState) -> Result<(SieveState, Vec<u64>)> {
    sieve_step_capped(state, u64::MAX)
}

/// [`sieve_step`] with the read range also bounded by `ξ ≤ cap`.
pub fn sieve_step_capped(state: &SieveState, cap: u64) -> Result<(SieveState, Vec<u64>)> {
    let known = &state.known_primes;
    if known.len() < 2 || known[0] != 2 {
        return Err(Error::SieveInvariant("state must start with at least [2, 3]".into()));
    }
    let p = *known.last().expect("nonempty");
    let square = p.checked_mul(p).ok_or_else(|| Error::Range(format!("{p}^2 overflows u64")))?;
    let range_hi = square.min(cap.saturating_add(1)).max(p + 1);
    let mask = cum_co_mask(&known[..known.len() - 1], range_hi - 1)?;
    let found = mask.nonzero_in(p, range_hi);
    let mut next = known.clone();
    next.extend(found.iter().copied().filter(|&x| x > p));
    let frontier = (range_hi - 1).max(state.frontier);
    Ok((SieveState { known_primes: next, frontier }, found))
}

/// All primes `≤ limit`, found by repeated sieve steps.
pub fn discover_primes(limit: u64) -> Result<Vec<u64>> {
    Ok(discover_primes_traced(limit)?.0)
}

pub fn discover_primes_traced(limit: u64) -> Result<(Vec<u64>, Vec<StepRecord>)> {
    if limit < 3 {
        return Err(Error::Argument(format!("limit must be >= 3, got {limit}")));
    }
    let mut state = SieveState::default();
    let mut trace = Vec::new();
    while state.frontier < limit {
        let n = state.known_primes.len() - 1;
        let p_next = *state.known_primes.last().expect("nonempty");
        let (next, found) = sieve_step_capped(&state, limit)?;
        trace.push(StepRecord {
            step: trace.len() + 1,
            n,
            p_next,
            range_lo: p_next,
            range_hi: next.frontier + 1,
            found: found.len(),
            cum_count: next.known_primes.len(),
        });
        state = next;
    }
    let primes = state.known_primes.into_iter().filter(|&p| p <= limit).collect();
    Ok((primes, trace))
}

/// Largest prime strictly below `n`, or `None` when `n ≤ 2`.
pub fn prev_prime(n: &BigUint) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    if *n <= two {
        return None;
    }
    let mut c = n - 1u32;
    while c >= two {
        if is_probable_prime(&c) {
            return Some(c);
        }
        c -= 1u32;
    }
    None
}

/// Largest correctly identifiable prime per iteration: 7, then the largest
/// prime below the square of the previous value.
///
/// Primality is Miller-Rabin with the first 13 prime bases, deterministic
/// below 3.3·10^24; larger candidates (from the sixth value on) use extra
/// bases and are strong probable primes.
pub fn frontier_sequence(iterations: usize) -> Result<Vec<BigUint>> {
    if iterations == 0 {
        return Err(Error::Argument("iterations must be >= 1".into()));
    }
    let mut out = vec![BigUint::from(7u32)];
    while out.len() < iterations {
        let last = out.last().expect("nonempty");
        out.push(prev_prime(&(last * last)).expect("p^2 > 2"));
    }
    Ok(out)
}

const MR_BASES: [u32; 24] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

pub fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;
    'bases: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn next_prime_u64(p: u64) -> u64 {
    let mut c = p + 1;
    while !is_probable_prime(&BigUint::from(c)) {
        c += 1;
    }
    c
}

/// For `primes = p_1..p_N` and `p_N < ξ < p_{N+1}²`: `true` iff the re-number
/// indicators `∘w(1/p_j)` sum to something nonzero at `ξ`.
pub fn renumber_is_composite(xi: u64, primes: &[u64]) -> Result<bool> {
    let last = *primes.last().ok_or_else(|| Error::Argument("prime list is empty".into()))?;
    let expected = eratosthenes(last)?;
    if expected != primes {
        return Err(Error::Argument("list must be the first N primes in order".into()));
    }
    let next = next_prime_u64(last);
    let bound = next.checked_mul(next).ok_or_else(|| Error::Range(format!("{next}^2 overflows u64")))?;
    if !(last < xi && xi < bound) {
        return Err(Error::Range(format!("xi={xi} outside the valid range ({last}, {bound})")));
    }
    let hits: u64 = primes.iter().map(|&p| u64::from(xi.is_multiple_of(p))).sum();
    Ok(hits > 0)
}

/// `7^{2(N−1)} / (2(N−1) ln 7)`.
pub fn count_estimate(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Argument(format!("N must be >= 2, got {n}")));
    }
    let e = 2.0 * (n - 1) as f64;
    Ok(7f64.powf(e) / (e * 7f64.ln()))
}

/// Classical sieve of Eratosthenes.
pub fn eratosthenes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::Argument(format!("limit must be >= 2, got {limit}")));
    }
    let n = limit.to_usize().ok_or_else(|| Error::Range(format!("limit {limit} too large")))?;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(out)
}
