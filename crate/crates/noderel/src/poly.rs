//! Dense exact univariate polynomial arithmetic over the rationals, stored
//! integer-first: a vector of arbitrary-precision integer coefficients plus
//! one positive common denominator. Reliability polynomials always carry
//! denominator 1; the denominator only exists so that scalar ops stay exact.
//!
//! No floating point appears anywhere in this module.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Exact univariate polynomial `(c_0 + c_1 x + ... + c_d x^d) / den`.
///
/// Normalized form: no trailing zero coefficients, `den > 0`, and
/// `gcd(content, den) = 1`. The zero polynomial has an empty coefficient
/// vector (degree is `None`).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            coeffs: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The identity polynomial `x`.
    pub fn var() -> Self {
        Self::from_bigint_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_bigint_coeffs(vec![c])
    }

    pub fn from_bigint_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial {
            coeffs,
            den: BigInt::one(),
        };
        p.normalize();
        p
    }

    /// Ascending coefficients given as machine integers.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_bigint_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_raw(coeffs: Vec<BigInt>, den: BigInt) -> Self {
        let mut p = Polynomial { coeffs, den };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.den = BigInt::one();
            return;
        }
        assert!(!self.den.is_zero(), "zero denominator");
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.coeffs {
                *c = -&*c;
            }
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in &self.coeffs {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                self.den /= &g;
                for c in &mut self.coeffs {
                    *c /= &g;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending integer coefficients (numerators over [`Self::denominator`]).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// True when all coefficients are integers.
    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        match self.coeffs.get(k) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Integer coefficient vector with the denominator cleared. Same roots,
    /// same signs up to the positive factor `den`.
    pub(crate) fn cleared_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.clone()
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let g = self.den.gcd(&other.den);
        let ma = &other.den / &g;
        let mb = &self.den / &g;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).map(|c| c * &ma).unwrap_or_default();
            let b = other.coeffs.get(i).map(|c| c * &mb).unwrap_or_default();
            coeffs.push(a + b);
        }
        Self::from_raw(coeffs, &self.den * &ma)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_raw(coeffs, &self.den * &other.den)
    }

    /// Exact scalar multiple `c * self`.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::from_raw(
            self.coeffs.iter().map(|a| a * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::from_raw(coeffs, self.den.clone())
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (s, bpow) = self.homogeneous_eval(x.numer(), x.denom());
        BigRational::new(s, &self.den * bpow)
    }

    /// Sign of the value at a rational point: -1, 0, or +1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (s, _) = self.homogeneous_eval(x.numer(), x.denom());
        match s.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Returns (sum_i c_i a^i b^(d-i), b^d) for x = a/b with b > 0.
    fn homogeneous_eval(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let d = self.coeffs.len() - 1;
        let mut s = self.coeffs[d].clone();
        let mut bpow = BigInt::one();
        for i in (0..d).rev() {
            bpow *= b;
            s = s * a + &self.coeffs[i] * &bpow;
        }
        (s, bpow)
    }

    /// Polynomial composition `self(inner(x))`, exact.
    pub fn compose(&self, inner: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let d = self.coeffs.len() - 1;
        // Horner over integer polynomials; inner's denominator is tracked
        // as a running power so every intermediate stays integral.
        let inner_num = Polynomial::from_raw(inner.coeffs.clone(), BigInt::one());
        let mut acc = Polynomial::constant(self.coeffs[d].clone());
        let mut epow = BigInt::one();
        for i in (0..d).rev() {
            epow *= &inner.den;
            acc = acc
                .mul(&inner_num)
                .add(&Polynomial::constant(&self.coeffs[i] * &epow));
        }
        Self::from_raw(acc.coeffs, &self.den * &epow * &acc.den)
    }

    /// The inner substitution map `1 - (1-p)^l`, expanded. Requires l >= 1.
    pub fn power_one_minus_q(l: u32) -> Self {
        assert!(l >= 1, "clique size must be at least 1");
        let row = binomial_row(l as usize);
        let mut coeffs = vec![BigInt::zero(); l as usize + 1];
        for (j, b) in row.iter().enumerate().skip(1) {
            // 1 - (1-p)^l = -sum_{j>=1} C(l,j)(-p)^j
            coeffs[j] = if j % 2 == 1 { b.clone() } else { -b };
        }
        Self::from_bigint_coeffs(coeffs)
    }

    /// `(1-p)^k`, expanded.
    pub fn one_minus_p_pow(k: usize) -> Self {
        let row = binomial_row(k);
        let coeffs = row
            .into_iter()
            .enumerate()
            .map(|(j, b)| if j % 2 == 0 { b } else { -b })
            .collect();
        Self::from_bigint_coeffs(coeffs)
    }

    /// Coefficients rendered as decimal strings, ascending. Only valid for
    /// integer polynomials (the reliability invariant guarantees this).
    pub fn coefficient_strings(&self) -> Vec<String> {
        assert!(self.is_integer(), "polynomial has a nontrivial denominator");
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Human-readable form in descending powers, e.g. `3p^5-12p^4+21p^3-16p^2+5p`.
    pub fn to_pretty_string(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            let unit = mag.is_one();
            match k {
                0 => out.push_str(&mag.to_string()),
                1 => {
                    if !unit {
                        out.push_str(&mag.to_string());
                    }
                    out.push_str(var);
                }
                _ => {
                    if !unit {
                        out.push_str(&mag.to_string());
                    }
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        if !self.den.is_one() {
            format!("({})/{}", out, self.den)
        } else {
            out
        }
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_pretty_string("p"))
    }
}

/// Row n of Pascal's triangle: C(n, 0)..C(n, n).
pub(crate) fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(BigInt::one());
    for j in 0..n {
        let next = (&row[j] * BigInt::from(n - j)) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn additive_identity() {
        let p = Polynomial::from_coeffs(&[1, -2, 3]);
        assert_eq!(p.add(&Polynomial::zero()), p);
    }

    #[test]
    fn mul_one_minus_p_squared() {
        let one_minus_p = Polynomial::from_coeffs(&[1, -1]);
        assert_eq!(
            one_minus_p.mul(&one_minus_p),
            Polynomial::from_coeffs(&[1, -2, 1])
        );
    }

    #[test]
    fn scale_by_zero_and_rational() {
        let p2 = Polynomial::from_coeffs(&[0, 0, 1]);
        assert!(p2.scale(&BigRational::zero()).is_zero());
        let half = p2.scale(&rat(1, 2));
        assert_eq!(half.coeffs(), &[BigInt::zero(), BigInt::zero(), BigInt::one()]);
        assert_eq!(half.denominator(), &BigInt::from(2));
        assert_eq!(half.scale(&rat(2, 1)), p2);
    }

    #[test]
    fn compose_examples() {
        // x^2 composed with 2p - p^2 gives 4p^2 - 4p^3 + p^4
        let outer = Polynomial::from_coeffs(&[0, 0, 1]);
        let inner = Polynomial::power_one_minus_q(2);
        assert_eq!(inner, Polynomial::from_coeffs(&[0, 2, -1]));
        assert_eq!(
            outer.compose(&inner),
            Polynomial::from_coeffs(&[0, 0, 4, -4, 1])
        );

        let anything = Polynomial::from_coeffs(&[3, 0, -7, 2]);
        assert_eq!(Polynomial::var().compose(&anything), anything);
    }

    #[test]
    fn derivative_and_eval() {
        let rel_p5 = Polynomial::from_coeffs(&[0, 5, -16, 21, -12, 3]);
        assert_eq!(
            rel_p5.derivative(),
            Polynomial::from_coeffs(&[5, -32, 63, -48, 15])
        );
        assert_eq!(rel_p5.evaluate(&rat(1, 1)), rat(1, 1));
        assert_eq!(rel_p5.evaluate(&rat(1, 2)), rat(15, 32));
        assert_eq!(rel_p5.sign_at(&rat(1, 2)), 1);
        assert_eq!(rel_p5.sign_at(&rat(0, 1)), 0);
    }

    #[test]
    fn power_one_minus_q_small() {
        assert_eq!(Polynomial::power_one_minus_q(1), Polynomial::var());
        assert_eq!(
            Polynomial::power_one_minus_q(2),
            Polynomial::from_coeffs(&[0, 2, -1])
        );
        assert_eq!(
            Polynomial::power_one_minus_q(3),
            Polynomial::from_coeffs(&[0, 3, -3, 1])
        );
    }

    #[test]
    fn power_one_minus_q_endpoints() {
        for l in 1..=40 {
            let f = Polynomial::power_one_minus_q(l);
            assert!(f.evaluate(&rat(0, 1)).is_zero());
            assert_eq!(f.evaluate(&rat(1, 1)), rat(1, 1));
        }
    }

    #[test]
    fn pretty_printing() {
        let rel_p5 = Polynomial::from_coeffs(&[0, 5, -16, 21, -12, 3]);
        assert_eq!(rel_p5.to_pretty_string("p"), "3p^5-12p^4+21p^3-16p^2+5p");
        assert_eq!(Polynomial::zero().to_pretty_string("p"), "0");
        assert_eq!(Polynomial::from_coeffs(&[0, 1]).to_pretty_string("p"), "p");
        assert_eq!(
            Polynomial::from_coeffs(&[-1, 0, 1]).to_pretty_string("p"),
            "p^2-1"
        );
    }

    #[test]
    fn one_minus_p_pow_matches_mul() {
        let base = Polynomial::from_coeffs(&[1, -1]);
        let mut acc = Polynomial::one();
        for k in 0..10 {
            assert_eq!(Polynomial::one_minus_p_pow(k), acc);
            acc = acc.mul(&base);
        }
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(-20i64..=20, 0..=6).prop_map(|v| Polynomial::from_coeffs(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn leibniz_rule(a in small_poly(), b in small_poly()) {
            let lhs = a.mul(&b).derivative();
            let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_with_identity(a in small_poly()) {
            prop_assert_eq!(a.compose(&Polynomial::var()), a.clone());
        }

        #[test]
        fn compose_degree_law(a in small_poly(), b in small_poly()) {
            prop_assume!(a.degree().is_some_and(|d| d >= 1));
            prop_assume!(b.degree().is_some_and(|d| d >= 1));
            let c = a.compose(&b);
            prop_assert_eq!(c.degree(), Some(a.degree().unwrap() * b.degree().unwrap()));
        }

        #[test]
        fn evaluation_is_ring_hom(a in small_poly(), b in small_poly(), n in -9i64..=9, d in 1i64..=9) {
            let x = rat(n, d);
            prop_assert_eq!(a.mul(&b).evaluate(&x), a.evaluate(&x) * b.evaluate(&x));
            prop_assert_eq!(a.add(&b).evaluate(&x), a.evaluate(&x) + b.evaluate(&x));
        }

        #[test]
        fn compose_of_rel_rules_agrees_with_eval(a in small_poly(), l in 1u32..=4, n in -5i64..=5, d in 1i64..=7) {
            // f(1-(1-p)^l) evaluated pointwise
            let inner = Polynomial::power_one_minus_q(l);
            let x = rat(n, d);
            let lhs = a.compose(&inner).evaluate(&x);
            let rhs = a.evaluate(&inner.evaluate(&x));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
