//! Node-reliability polynomials, computed two independent ways: brute-force
//! subset enumeration over an explicit graph (the oracle), and the algebraic
//! composition rules over a graph expression (the main path). The rules are
//!
//!   clique substitution   R(p) -> R(1 - (1-p)^l)
//!   isolated vertex       R(p) -> p(1-p)^(n-1) + (1-p) R(p), n the new order
//!   universal vertex      R(p) -> p + (1-p) R(p)
//!
//! where R(p) is the probability that the operational nodes induce a
//! connected, nonempty subgraph when each node is up independently with
//! probability p.

use crate::error::{Error, Result};
use crate::expr::GraphExpr;
use crate::graph::{connected_mask, Graph};
use crate::poly::Polynomial;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::json;

/// Default cap on the order of graphs accepted for 2^n subset enumeration.
pub const DEFAULT_ENUM_CAP: usize = 24;

/// Points sampled by the cheap bounds check run at every construction.
const QUICK_SAMPLES: usize = 16;

/// Number of connected induced subgraphs of each size: `count_of_size(i)`
/// is the number of i-vertex subsets inducing a connected subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphCountVector {
    counts: Vec<u64>,
}

impl SubgraphCountVector {
    /// Counts N_1..N_n, ascending by subset size.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn order(&self) -> usize {
        self.counts.len()
    }

    /// N_i for 1 <= i <= n.
    pub fn count_of_size(&self, i: usize) -> u64 {
        self.counts[i - 1]
    }

    /// A graph is connected exactly when its full vertex set counts.
    pub fn connected(&self) -> bool {
        self.counts[self.counts.len() - 1] == 1
    }
}

/// An exact node-reliability polynomial together with the order of the
/// underlying graph and its connectivity (the value at p = 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityPolynomial {
    poly: Polynomial,
    order: u64,
    connected: bool,
}

impl ReliabilityPolynomial {
    /// Wraps a polynomial after checking the invariants every reliability
    /// polynomial must satisfy: R(0) = 0, R(1) matches connectivity, integer
    /// coefficients, degree <= order, and 0 <= R <= 1 at sampled points.
    pub fn new(poly: Polynomial, order: u64, connected: bool) -> Result<Self> {
        let r = ReliabilityPolynomial {
            poly,
            order,
            connected,
        };
        r.check_invariants(QUICK_SAMPLES)?;
        Ok(r)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn connected(&self) -> bool {
        self.connected
    }

    pub fn evaluate(&self, p: &BigRational) -> BigRational {
        self.poly.evaluate(p)
    }

    /// Re-checks all invariants, sampling `samples` interior rational points
    /// for the 0 <= R <= 1 bound.
    pub fn check_invariants(&self, samples: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        if !self.poly.is_integer() {
            return fail("reliability coefficients must be integers".into());
        }
        if !self.poly.coefficient(0).is_zero() {
            return fail("reliability at p = 0 must be 0".into());
        }
        let at_one = self.poly.evaluate(&BigRational::one());
        let expected = if self.connected {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        if at_one != expected {
            return fail(format!(
                "reliability at p = 1 is {at_one}, expected {expected}"
            ));
        }
        if let Some(d) = self.poly.degree() {
            if d as u64 > self.order {
                return fail(format!(
                    "degree {d} exceeds graph order {}",
                    self.order
                ));
            }
        }
        let den = BigInt::from(samples as u64 + 1);
        for i in 1..=samples {
            let p = BigRational::new(BigInt::from(i as u64), den.clone());
            let v = self.poly.evaluate(&p);
            if v.is_negative() || v > BigRational::one() {
                return fail(format!("reliability at p = {p} is {v}, outside [0, 1]"));
            }
        }
        Ok(())
    }

    /// JSON form with exact decimal-string coefficients, ascending.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "order": self.order,
            "connected": self.connected,
            "coeffs": self.poly.coefficient_strings(),
        })
    }
}

fn check_enum_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::SizeLimit {
            what: "graph for subset enumeration",
            size: g.order() as u128,
            cap: cap as u128,
        });
    }
    if g.order() > 63 {
        return Err(Error::SizeLimit {
            what: "graph for subset enumeration",
            size: g.order() as u128,
            cap: 63,
        });
    }
    Ok(())
}

/// Connected-induced-subgraph counts by exhaustive subset enumeration,
/// with the default order cap.
pub fn subgraph_counts(g: &Graph) -> Result<SubgraphCountVector> {
    subgraph_counts_with_cap(g, DEFAULT_ENUM_CAP)
}

pub fn subgraph_counts_with_cap(g: &Graph, cap: usize) -> Result<SubgraphCountVector> {
    check_enum_cap(g, cap)?;
    let n = g.order();
    let masks = g.adjacency_masks().expect("order <= 63");
    let mut counts = vec![0u64; n];
    for s in 1u64..(1u64 << n) {
        if connected_mask(&masks, s) {
            counts[s.count_ones() as usize - 1] += 1;
        }
    }
    debug_assert_eq!(counts[0], n as u64);
    Ok(SubgraphCountVector { counts })
}

/// Assembles sum_i N_i p^i (1-p)^(n-i) from a count vector.
pub fn rel_from_counts(counts: &SubgraphCountVector) -> Result<ReliabilityPolynomial> {
    let n = counts.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for i in 1..=n {
        let ni = counts.count_of_size(i);
        if ni == 0 {
            continue;
        }
        let ni = BigInt::from(ni);
        let row = crate::poly::binomial_row(n - i);
        for (j, b) in row.iter().enumerate() {
            let term = &ni * b;
            if j % 2 == 0 {
                coeffs[i + j] += term;
            } else {
                coeffs[i + j] -= term;
            }
        }
    }
    ReliabilityPolynomial::new(
        Polynomial::from_bigint_coeffs(coeffs),
        n as u64,
        counts.connected(),
    )
}

/// Exact node reliability of an explicit graph by enumerating all 2^n
/// vertex subsets. The oracle path.
pub fn rel_enumerate(g: &Graph) -> Result<ReliabilityPolynomial> {
    rel_enumerate_with_cap(g, DEFAULT_ENUM_CAP)
}

pub fn rel_enumerate_with_cap(g: &Graph, cap: usize) -> Result<ReliabilityPolynomial> {
    rel_from_counts(&subgraph_counts_with_cap(g, cap)?)
}

/// Clique substitution on the polynomial side: compose with 1 - (1-p)^l.
pub(crate) fn apply_subclique(r: &ReliabilityPolynomial, l: u32) -> Result<ReliabilityPolynomial> {
    let inner = Polynomial::power_one_minus_q(l);
    ReliabilityPolynomial::new(
        r.poly.compose(&inner),
        r.order * l as u64,
        r.connected,
    )
}

/// Isolated-vertex rule. The exponent uses the order of the result, one
/// more than the child's.
pub(crate) fn apply_add_isolated(r: &ReliabilityPolynomial) -> Result<ReliabilityPolynomial> {
    let n = r.order + 1;
    let one_minus_p = Polynomial::from_coeffs(&[1, -1]);
    let lonely = Polynomial::var().mul(&Polynomial::one_minus_p_pow(n as usize - 1));
    let poly = lonely.add(&one_minus_p.mul(&r.poly));
    ReliabilityPolynomial::new(poly, n, false)
}

/// Universal-vertex rule.
pub(crate) fn apply_add_universal(r: &ReliabilityPolynomial) -> Result<ReliabilityPolynomial> {
    let one_minus_p = Polynomial::from_coeffs(&[1, -1]);
    let poly = Polynomial::var().add(&one_minus_p.mul(&r.poly));
    ReliabilityPolynomial::new(poly, r.order + 1, true)
}

/// Exact node reliability of a graph expression, evaluated bottom-up with
/// the composition rules. Only leaf graphs are enumerated; there is no cap
/// on expression depth or clique sizes.
pub fn rel_algebra(e: &GraphExpr) -> Result<ReliabilityPolynomial> {
    rel_algebra_with_cap(e, DEFAULT_ENUM_CAP)
}

pub fn rel_algebra_with_cap(e: &GraphExpr, cap: usize) -> Result<ReliabilityPolynomial> {
    match e {
        GraphExpr::Base(base) => rel_enumerate_with_cap(&base.to_graph()?, cap),
        GraphExpr::SubClique { child, l } => {
            apply_subclique(&rel_algebra_with_cap(child, cap)?, *l)
        }
        GraphExpr::AddIsolated(child) => apply_add_isolated(&rel_algebra_with_cap(child, cap)?),
        GraphExpr::AddUniversal(child) => apply_add_universal(&rel_algebra_with_cap(child, cap)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn two_k1() -> Graph {
        Graph::from_edge_list(2, &[]).unwrap()
    }

    #[test]
    fn counts_of_path_five() {
        let c = subgraph_counts(&Graph::path(5).unwrap()).unwrap();
        assert_eq!(c.counts(), &[5, 4, 3, 2, 1]);
        assert!(c.connected());
    }

    #[test]
    fn counts_of_triangle_and_cocliques() {
        let c = subgraph_counts(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(c.counts(), &[3, 3, 1]);
        let c = subgraph_counts(&two_k1()).unwrap();
        assert_eq!(c.counts(), &[2, 0]);
        assert!(!c.connected());
    }

    #[test]
    fn path_five_matches_known_polynomial() {
        let r = rel_enumerate(&Graph::path(5).unwrap()).unwrap();
        assert_eq!(r.poly(), &Polynomial::from_coeffs(&[0, 5, -16, 21, -12, 3]));
        assert_eq!(r.order(), 5);
        assert!(r.connected());
    }

    #[test]
    fn small_enumerations() {
        let r = rel_enumerate(&Graph::path(1).unwrap()).unwrap();
        assert_eq!(r.poly(), &Polynomial::from_coeffs(&[0, 1]));

        let r = rel_enumerate(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(r.poly(), &Polynomial::from_coeffs(&[0, 3, -4, 2]));

        let r = rel_enumerate(&two_k1()).unwrap();
        assert_eq!(r.poly(), &Polynomial::from_coeffs(&[0, 2, -2]));
        assert!(!r.connected());
    }

    #[test]
    fn enumeration_cap_enforced() {
        let g = Graph::path(7).unwrap();
        assert!(matches!(
            rel_enumerate_with_cap(&g, 6),
            Err(Error::SizeLimit { size: 7, cap: 6, .. })
        ));
    }

    #[test]
    fn clique_of_single_vertex_rule() {
        // K_1[K_l] = K_l, so the rule gives 1 - (1-p)^l
        for l in 1..=6u32 {
            let e = GraphExpr::path(1).unwrap().sub_clique(l).unwrap();
            let r = rel_algebra(&e).unwrap();
            assert_eq!(r.poly(), &Polynomial::power_one_minus_q(l));
            assert_eq!(r.order(), l as u64);
            let direct = rel_enumerate(&Graph::complete(l as usize).unwrap()).unwrap();
            assert_eq!(r.poly(), direct.poly());
        }
    }

    #[test]
    fn universal_rule_matches_path_three() {
        // joining a universal vertex to 2K_1 yields P_3
        let e = GraphExpr::from_graph(two_k1()).add_universal();
        let r = rel_algebra(&e).unwrap();
        assert_eq!(r.poly(), &Polynomial::from_coeffs(&[0, 3, -4, 2]));
        assert!(r.connected());
    }

    #[test]
    fn isolated_rule_matches_two_k1() {
        let e = GraphExpr::path(1).unwrap().add_isolated();
        let r = rel_algebra(&e).unwrap();
        assert_eq!(r.poly(), &Polynomial::from_coeffs(&[0, 2, -2]));
        assert!(!r.connected());
        assert!(r.evaluate(&rat(1, 1)).is_zero());
    }

    #[test]
    fn clique_substitution_matches_enumeration_small() {
        // every graph on <= 4 vertices, l in {2, 3}
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edge_list(n, &edges).unwrap();
                let rg = rel_enumerate(&g).unwrap();
                for l in 2..=3usize {
                    let lhs = rel_enumerate(&g.lex_product_clique(l)).unwrap();
                    let rhs = rg
                        .poly()
                        .compose(&Polynomial::power_one_minus_q(l as u32));
                    assert_eq!(lhs.poly(), &rhs, "n={n} mask={mask} l={l}");
                }
            }
        }
    }

    #[test]
    fn algebra_json_shape() {
        let r = rel_enumerate(&Graph::path(5).unwrap()).unwrap();
        let v = r.to_json();
        assert_eq!(v["order"], 5);
        assert_eq!(v["connected"], true);
        assert_eq!(v["coeffs"][1], "5");
        assert_eq!(v["coeffs"][2], "-16");
    }

    #[test]
    fn invariants_reject_bad_values() {
        // R(1) must match the connectivity flag
        let p = Polynomial::from_coeffs(&[0, 1]);
        assert!(ReliabilityPolynomial::new(p.clone(), 1, false).is_err());
        assert!(ReliabilityPolynomial::new(p, 1, true).is_ok());
        // nonzero constant term
        let p = Polynomial::from_coeffs(&[1]);
        assert!(ReliabilityPolynomial::new(p, 1, true).is_err());
        // degree above order
        let p = Polynomial::from_coeffs(&[0, 0, 3, -2]);
        assert!(ReliabilityPolynomial::new(p, 2, true).is_err());
    }
}
