//! Certified real-root counting and isolation via Sturm chains.
//!
//! Chains are computed over the square-free part of the input, entirely in
//! integer arithmetic: each element is a positive scalar multiple of the
//! textbook Sturm remainder, obtained from sign-controlled pseudo-remainders
//! divided by their content. Positive scalars never change a sign variation
//! count, so the usual theorem applies unchanged.
//!
//! Isolation works on the open interval (0, 1). Roots exactly at 0 or 1 are
//! deflated away first and never reported. Every interval this module returns
//! has dyadic endpoints strictly inside (0, 1) at which the square-free part
//! is nonzero, and contains exactly one distinct root.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Rational interval (lo, hi) in [0, 1] certified to contain exactly one
/// distinct real root of the polynomial it was computed for.
#[derive(Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    lo: BigRational,
    hi: BigRational,
}

impl std::fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl IsolatingInterval {
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Open-interval membership.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

/// Default refinement width, 10^-6.
pub fn default_precision() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000))
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers. Representation: ascending Vec<BigInt> with no
// trailing zeros; the zero polynomial is the empty vector.
// ---------------------------------------------------------------------------

type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &[BigInt]) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

fn derivative(p: &[BigInt]) -> IntPoly {
    let mut d: IntPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut d);
    d
}

fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(mut p: IntPoly) -> IntPoly {
    trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let g = content(&p);
    if !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

fn negate(p: &mut IntPoly) {
    for c in p.iter_mut() {
        *c = -&*c;
    }
}

fn positive_leading(mut p: IntPoly) -> IntPoly {
    if p.last().is_some_and(|c| c.is_negative()) {
        negate(&mut p);
    }
    p
}

/// Sign of p(a/b) for a reduced rational with b > 0.
fn sign_at(p: &[BigInt], x: &BigRational) -> i32 {
    if p.is_empty() {
        return 0;
    }
    let (a, b) = (x.numer(), x.denom());
    let d = deg(p);
    let mut s = p[d].clone();
    let mut bpow = BigInt::one();
    for i in (0..d).rev() {
        bpow *= b;
        s = s * a + &p[i] * &bpow;
    }
    match s.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Pseudo-remainder: returns (lc(v)^delta * u mod v, delta) with
/// delta = deg u - deg v + 1. Pure integer long division.
fn pseudo_rem(u: &[BigInt], v: &[BigInt]) -> (IntPoly, u32) {
    let dv = deg(v);
    let du = deg(u);
    debug_assert!(du >= dv);
    let lc = v[dv].clone();
    let delta = (du - dv + 1) as u32;
    let mut r = u.to_vec();
    let mut steps = 0u32;
    while !r.is_empty() && deg(&r) >= dv {
        let k = deg(&r) - dv;
        let lead = r[deg(&r)].clone();
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (i, vc) in v.iter().enumerate() {
            r[k + i] -= &lead * vc;
        }
        trim(&mut r);
        steps += 1;
    }
    if steps < delta {
        let mult = lc.pow(delta - steps);
        for c in r.iter_mut() {
            *c *= &mult;
        }
    }
    (r, delta)
}

/// Exact polynomial division; the divisor must divide the dividend over Z.
fn exact_div(num: &[BigInt], div: &[BigInt]) -> IntPoly {
    let dd = deg(div);
    let lc = &div[dd];
    let mut r = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - div.len() + 1];
    while !r.is_empty() && deg(&r) >= dd {
        let k = deg(&r) - dd;
        let (qc, rem) = r[deg(&r)].div_rem(lc);
        debug_assert!(rem.is_zero(), "non-exact polynomial division");
        for (i, dc) in div.iter().enumerate() {
            r[k + i] -= &qc * dc;
        }
        trim(&mut r);
        q[k] = qc;
    }
    debug_assert!(r.is_empty(), "non-exact polynomial division");
    trim(&mut q);
    q
}

/// Primitive gcd with positive leading coefficient, by primitive
/// pseudo-remainder sequence.
fn int_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.is_empty() {
        return positive_leading(b);
    }
    if b.is_empty() {
        return positive_leading(a);
    }
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if deg(&b) == 0 {
            return vec![BigInt::one()];
        }
        let (r, _) = pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    positive_leading(a)
}

/// Square-free part of a nonzero integer polynomial, primitive with positive
/// leading coefficient. Same distinct roots, all simple.
fn squarefree_int(f: &[BigInt]) -> IntPoly {
    debug_assert!(!f.is_empty());
    if deg(f) == 0 {
        return vec![BigInt::one()];
    }
    let d = derivative(f);
    let g = int_gcd(f, &d);
    let pf = primitive(f.to_vec());
    if deg(&g) == 0 {
        return positive_leading(pf);
    }
    positive_leading(exact_div(&pf, &g))
}

// ---------------------------------------------------------------------------
// Sturm chain
// ---------------------------------------------------------------------------

struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain of a square-free nonzero polynomial.
    fn new(g: IntPoly) -> Self {
        debug_assert!(!g.is_empty());
        let mut chain = vec![g];
        if deg(&chain[0]) >= 1 {
            chain.push(primitive(derivative(&chain[0])));
            loop {
                let n = chain.len();
                if chain[n - 1].is_empty() || deg(&chain[n - 1]) == 0 {
                    break;
                }
                let (mut r, delta) = pseudo_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                // force the implied multiplier |lc|^delta, then negate for
                // the Sturm recurrence
                if chain[n - 1].last().unwrap().is_negative() && delta % 2 == 1 {
                    negate(&mut r);
                }
                negate(&mut r);
                chain.push(primitive(r));
            }
        }
        SturmChain { chain }
    }

    fn subject(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the half-open interval (lo, hi].
    fn count(&self, v_lo: usize, v_hi: usize) -> usize {
        debug_assert!(v_lo >= v_hi);
        v_lo - v_hi
    }
}

/// Square-free part with the same distinct roots, integer coefficients.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(Polynomial::from_bigint_coeffs(squarefree_int(
        &p.cleared_coeffs(),
    )))
}

/// Number of distinct real roots of `p` in the half-open interval (lo, hi],
/// from the square-free part's Sturm chain sign variations.
pub fn sturm_count(p: &Polynomial, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::Domain(format!(
            "sturm_count requires lo < hi, got lo = {lo}, hi = {hi}"
        )));
    }
    let g = squarefree_int(&p.cleared_coeffs());
    if deg(&g) == 0 {
        return Ok(0);
    }
    let chain = SturmChain::new(g);
    Ok(chain.count(chain.variations_at(lo), chain.variations_at(hi)))
}

fn half(x: &BigRational) -> BigRational {
    x / BigRational::from_integer(BigInt::from(2))
}

/// Disjoint isolating intervals for the distinct roots of `p` in the open
/// interval (0, 1), sorted ascending and refined to width <= `precision`.
/// Roots exactly at 0 or 1 are excluded. Endpoints are dyadic rationals
/// strictly inside (0, 1) at which the square-free part is nonzero.
pub fn isolate_roots(p: &Polynomial, precision: &BigRational) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !precision.is_positive() {
        return Err(Error::Domain(format!(
            "precision must be positive, got {precision}"
        )));
    }
    let mut g = squarefree_int(&p.cleared_coeffs());
    // deflate roots at the boundary: the interval of interest is open
    while !g.is_empty() && g[0].is_zero() {
        g.remove(0);
    }
    let vanishes_at_one = |q: &[BigInt]| q.iter().sum::<BigInt>().is_zero();
    while !g.is_empty() && deg(&g) >= 1 && vanishes_at_one(&g) {
        g = exact_div(&g, &[-BigInt::one(), BigInt::one()]);
    }
    if g.is_empty() || deg(&g) == 0 {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(g);

    let zero = BigRational::zero();
    let one = BigRational::one();
    let v0 = chain.variations_at(&zero);
    let v1 = chain.variations_at(&one);
    let mut out = Vec::new();
    let mut stack = vec![(zero, v0, one, v1)];
    while let Some((lo, v_lo, hi, v_hi)) = stack.pop() {
        let c = chain.count(v_lo, v_hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(refine(&chain, lo, hi, precision));
            continue;
        }
        let m = half(&(&lo + &hi));
        if sign_at(chain.subject(), &m) == 0 {
            // the midpoint is a root; bracket it tightly, then recurse on
            // both flanks
            let mut delta = half(&half(&(&hi - &lo)));
            loop {
                let a = &m - &delta;
                let b = &m + &delta;
                if sign_at(chain.subject(), &a) != 0 && sign_at(chain.subject(), &b) != 0 {
                    let va = chain.variations_at(&a);
                    let vb = chain.variations_at(&b);
                    if chain.count(va, vb) == 1 && delta.clone() * BigInt::from(2) <= *precision {
                        out.push(IsolatingInterval {
                            lo: a.clone(),
                            hi: b.clone(),
                        });
                        stack.push((lo, v_lo, a, va));
                        stack.push((b, vb, hi, v_hi));
                        break;
                    }
                }
                delta = half(&delta);
            }
        } else {
            let vm = chain.variations_at(&m);
            stack.push((m.clone(), vm, hi, v_hi));
            stack.push((lo, v_lo, m, vm));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Bisects an interval known to hold exactly one simple root strictly inside,
/// with nonzero endpoint signs, until it is within precision and strictly
/// interior to (0, 1).
fn refine(
    chain: &SturmChain,
    mut lo: BigRational,
    mut hi: BigRational,
    precision: &BigRational,
) -> IsolatingInterval {
    let g = chain.subject();
    let mut s_lo = sign_at(g, &lo);
    debug_assert!(s_lo != 0 && sign_at(g, &hi) != 0);
    debug_assert_eq!(s_lo, -sign_at(g, &hi));
    let zero = BigRational::zero();
    let one = BigRational::one();
    loop {
        if &hi - &lo <= *precision && lo > zero && hi < one {
            return IsolatingInterval { lo, hi };
        }
        let m = half(&(&lo + &hi));
        let sm = sign_at(g, &m);
        if sm == 0 {
            // the root is exactly m; emit a dyadic bracket around it
            let mut delta = half(&(&m - &lo).min(&hi - &m));
            while delta.clone() * BigInt::from(2) > *precision {
                delta = half(&delta);
            }
            debug_assert!(sign_at(g, &(&m - &delta)) != 0);
            debug_assert!(sign_at(g, &(&m + &delta)) != 0);
            return IsolatingInterval {
                lo: &m - &delta,
                hi: &m + &delta,
            };
        }
        if sm == s_lo {
            lo = m;
            s_lo = sm;
        } else {
            hi = m;
        }
    }
}
