//! Exact combinatorics of metric ribbon graphs and their moduli cell complexes.
//!
//! The crate provides, in layers:
//!
//! - [`perm`], [`ribbon`]: ribbon graphs as permutation pairs (sigma0, sigma1)
//!   on a half-edge set, with validation, boundary cycles, canonical forms,
//!   isomorphism and automorphism machinery, edge collapses, and metrics;
//! - [`enumeration`]: exhaustive generation of all labeled isomorphism classes
//!   of a topological type (g, n) together with the collapse poset;
//! - [`polytope`]: exact rational polytopes in the slice sum(x) = 1: standard
//!   simplices, permutohedra, nestohedra obtained by truncating simplex faces,
//!   vertex enumeration and face lattices;
//! - [`moduli`]: rational cells and compact (truncated) rational cells per
//!   graph class, and assembly of the open and compactified moduli complexes;
//! - [`real`]: orientation-reversing involutions of ribbon graphs, their
//!   fixed metric loci, bordered-type arithmetic, and symmetric subcomplexes;
//! - [`cw`]: the quotient engine computing Euler characteristics, connectivity,
//!   surface checks and boundary circles of glued cell complexes;
//! - [`json`]: JSON interchange and DOT export.
//!
//! All arithmetic is exact. Metrics and polytopes use arbitrary-precision
//! rationals, so incidence and fixed-locus questions are equality questions
//! with no tolerances.

pub mod cw;
pub mod enumeration;
pub mod json;
pub mod moduli;
pub mod perm;
pub mod polytope;
pub mod real;
pub mod ribbon;
mod surface;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational scalar used throughout.
pub type Rat = num_rational::BigRational;

/// Rational from an integer pair; panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical rendering "p/q": lowest terms, positive denominator, denominator
/// always present (integers render as "p/1").
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "p/q" or a bare integer "p". Returns `None` for malformed input or
/// a zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(Rat::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_string_round_trip() {
        assert_eq!(rat_str(&rat(2, 8)), "1/4");
        assert_eq!(rat_str(&rat(-2, 8)), "-1/4");
        assert_eq!(rat_str(&rat(2, -8)), "-1/4");
        assert_eq!(rat_str(&rat(5, 1)), "5/1");
        assert_eq!(rat_str(&rat(0, 3)), "0/1");
        assert_eq!(parse_rat("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x/2"), None);
    }
}
