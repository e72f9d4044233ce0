//! Monte-Carlo estimation of node reliability: the statistical oracle, and
//! the only place floating point appears in the crate.
//!
//! Randomness comes from ChaCha8 streams. Trials are partitioned into fixed
//! chunks of 2^16; chunk c draws from a stream seeded with `seed + c`, and
//! chunk counts merge by summation, so the estimate is bit-reproducible for
//! a given (graph, p, trials, seed) regardless of evaluation order.
//!
//! Each vertex is kept with probability p by comparing lazily drawn random
//! bits against the binary expansion of p, so the per-vertex Bernoulli draw
//! is exact for any rational p (about two random bits are consumed per draw
//! on average).

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{connected_mask, Graph};
use num::{BigRational, BigUint, One, Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHUNK: u64 = 1 << 16;

/// Result of a Monte-Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    /// Fraction of trials whose operational set induced a connected,
    /// nonempty subgraph.
    pub estimate: f64,
    /// Binomial standard error sqrt(f (1-f) / trials).
    pub stderr: f64,
    pub successes: u64,
    pub trials: u64,
}

struct BitSource {
    rng: ChaCha8Rng,
    buf: u64,
    left: u32,
}

impl BitSource {
    fn new(seed: u64) -> Self {
        BitSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            buf: 0,
            left: 0,
        }
    }

    fn next_bit(&mut self) -> u32 {
        if self.left == 0 {
            self.buf = self.rng.next_u64();
            self.left = 64;
        }
        self.left -= 1;
        let b = (self.buf >> self.left) & 1;
        b as u32
    }
}

/// Exact Bernoulli(p) for rational p, by comparing an infinite random
/// binary fraction against the expansion of p, one digit at a time.
enum Bernoulli {
    AlwaysFalse,
    AlwaysTrue,
    /// p = num/den with 0 < num < den, den fits in u64.
    Small { num: u64, den: u64 },
    Big { num: BigUint, den: BigUint },
}

impl Bernoulli {
    fn new(p: &BigRational) -> Self {
        if p.is_zero() {
            return Bernoulli::AlwaysFalse;
        }
        if p.is_one() {
            return Bernoulli::AlwaysTrue;
        }
        let num = p.numer().magnitude().clone();
        let den = p.denom().magnitude().clone();
        match (u64::try_from(&num), u64::try_from(&den)) {
            (Ok(n), Ok(d)) => Bernoulli::Small { num: n, den: d },
            _ => Bernoulli::Big { num, den },
        }
    }

    fn sample(&self, bits: &mut BitSource) -> bool {
        match self {
            Bernoulli::AlwaysFalse => false,
            Bernoulli::AlwaysTrue => true,
            Bernoulli::Small { num, den } => {
                let mut r = *num as u128;
                let d = *den as u128;
                loop {
                    // next binary digit of num/den
                    r <<= 1;
                    let digit = u32::from(r >= d);
                    if digit == 1 {
                        r -= d;
                    }
                    let u = bits.next_bit();
                    if u != digit {
                        return u < digit;
                    }
                    if r == 0 {
                        // p's expansion terminates; a random tail cannot be
                        // strictly below an all-zero tail
                        return false;
                    }
                }
            }
            Bernoulli::Big { num, den } => {
                let mut r = num.clone();
                loop {
                    r <<= 1;
                    let digit = u32::from(&r >= den);
                    if digit == 1 {
                        r -= den;
                    }
                    let u = bits.next_bit();
                    if u != digit {
                        return u < digit;
                    }
                    if r.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
}

/// Estimates the node reliability of `g` at probability `p` over `trials`
/// independent samples. Deterministic for a given (g, p, trials, seed).
pub fn mc_estimate(g: &Graph, p: &BigRational, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    if p.is_negative() || p > &BigRational::one() {
        return Err(Error::Domain(format!("p = {p} is outside [0, 1]")));
    }
    let bern = Bernoulli::new(p);
    let n = g.order();
    let masks = g.adjacency_masks();

    let mut successes = 0u64;
    let mut done = 0u64;
    let mut chunk_index = 0u64;
    while done < trials {
        let this_chunk = (trials - done).min(CHUNK);
        let mut bits = BitSource::new(seed.wrapping_add(chunk_index));
        match &masks {
            Some(masks) => {
                for _ in 0..this_chunk {
                    let mut s = 0u64;
                    for v in 0..n {
                        if bern.sample(&mut bits) {
                            s |= 1 << v;
                        }
                    }
                    if connected_mask(masks, s) {
                        successes += 1;
                    }
                }
            }
            None => {
                for _ in 0..this_chunk {
                    let mut s = VertexSet::new(n);
                    for v in 0..n {
                        if bern.sample(&mut bits) {
                            s.insert(v);
                        }
                    }
                    if g.induced_connected(&s) {
                        successes += 1;
                    }
                }
            }
        }
        done += this_chunk;
        chunk_index += 1;
    }

    let f = successes as f64 / trials as f64;
    let stderr = (f * (1.0 - f) / trials as f64).sqrt();
    Ok(McEstimate {
        estimate: f,
        stderr,
        successes,
        trials,
    })
}
