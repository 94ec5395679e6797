//! Continued-fraction expansions of rationals in (0, 1].
//!
//! The canonical expansion `<0; d1, ..., dl>` produced by the Euclidean
//! algorithm has its last quotient >= 2 whenever `l >= 2`; the fraction 1/1
//! is represented as `<0;1>`. This removes the two-representation ambiguity
//! (`<..., d>` vs `<..., d-1, 1>`).

use std::fmt;

use crate::error::{invalid, Result};
use crate::rational::{gcd, Rational};

/// Partial quotients `<d0; d1, ..., dl>` with `d0 = 0` and `di >= 1` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    quotients: Vec<i64>,
}

/// Canonical continued-fraction expansion of `a/q`.
///
/// Requires `1 <= a <= q` and `gcd(a, q) = 1`.
pub fn cf_expand(a: i64, q: i64) -> Result<ContinuedFraction> {
    if a < 1 || a > q {
        return Err(invalid(format!("cf_expand: need 1 <= a <= q, got a={a}, q={q}")));
    }
    if gcd(a, q) != 1 {
        return Err(invalid(format!("cf_expand: gcd({a}, {q}) != 1")));
    }
    let mut quotients = vec![0i64];
    // Euclid on (q, a): q = d1*a + r1, a = d2*r1 + r2, ...
    let (mut num, mut den) = (q, a);
    while den != 0 {
        quotients.push(num / den);
        (num, den) = (den, num % den);
    }
    Ok(ContinuedFraction { quotients })
}

/// `N(a, q)`: the sum of the partial quotients `d1 + ... + dl`.
pub fn cf_partial_quotient_sum(cf: &ContinuedFraction) -> i64 {
    cf.quotients[1..].iter().sum()
}

impl ContinuedFraction {
    /// All quotients including the leading zero.
    pub fn quotients(&self) -> &[i64] {
        &self.quotients
    }

    /// Number of partial quotients `l`.
    pub fn len(&self) -> usize {
        self.quotients.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reconstruct the fraction as `(a, q)`.
    pub fn evaluate(&self) -> (i64, i64) {
        // continuant recurrences: p_i/q_i with p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1
        let (mut p0, mut p1) = (1i64, 0i64);
        let (mut q0, mut q1) = (0i64, 1i64);
        for &d in &self.quotients[1..] {
            (p0, p1) = (p1, d * p1 + p0);
            (q0, q1) = (q1, d * q1 + q0);
        }
        (p1, q1)
    }

    /// Reconstruct as an exact rational.
    pub fn to_rational(&self) -> Rational {
        let (a, q) = self.evaluate();
        Rational::new(a, q)
    }

    /// The penultimate continuant denominator `q_{l-1}`.
    ///
    /// For the expansion of `a/q` it lies in `[1, q]` and satisfies
    /// `a * q_{l-1} == (-1)^(l-1) (mod q)`: inverse of `a` for odd `l`,
    /// negated inverse for even `l`.
    pub fn penultimate_continuant(&self) -> i64 {
        let (mut q0, mut q1) = (0i64, 1i64);
        for &d in &self.quotients[1..] {
            (q0, q1) = (q1, d * q1 + q0);
        }
        q0
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0;")?;
        for (i, d) in self.quotients[1..].iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quotients(a: i64, q: i64) -> Vec<i64> {
        cf_expand(a, q).unwrap().quotients().to_vec()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(quotients(1, 2), vec![0, 2]);
        assert_eq!(quotients(3, 7), vec![0, 2, 3]);
        assert_eq!(quotients(5, 7), vec![0, 1, 2, 2]);
        assert_eq!(quotients(1, 1), vec![0, 1]);
    }

    #[test]
    fn partial_quotient_sums() {
        assert_eq!(cf_partial_quotient_sum(&cf_expand(3, 7).unwrap()), 5);
        assert_eq!(cf_partial_quotient_sum(&cf_expand(1, 2).unwrap()), 2);
        assert_eq!(cf_partial_quotient_sum(&cf_expand(5, 7).unwrap()), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cf_expand(0, 5).is_err());
        assert!(cf_expand(6, 5).is_err());
        assert!(cf_expand(2, 4).is_err());
    }

    #[test]
    fn round_trip_and_canonical_form() {
        for q in 1..=500i64 {
            for a in 1..=q {
                if gcd(a, q) != 1 {
                    continue;
                }
                let cf = cf_expand(a, q).unwrap();
                assert_eq!(cf.evaluate(), (a, q), "round trip {a}/{q}");
                let quots = cf.quotients();
                assert_eq!(quots[0], 0);
                assert!(quots[1..].iter().all(|&d| d >= 1));
                if cf.len() >= 2 {
                    assert!(*quots.last().unwrap() >= 2, "canonical form {a}/{q}");
                }
            }
        }
    }

    #[test]
    fn penultimate_continuant_congruence() {
        for q in 2..=200i64 {
            for a in 1..q {
                if gcd(a, q) != 1 {
                    continue;
                }
                let cf = cf_expand(a, q).unwrap();
                let d = cf.penultimate_continuant();
                assert!((1..=q).contains(&d));
                let sign = if cf.len() % 2 == 1 { 1 } else { q - 1 };
                assert_eq!((a * d).rem_euclid(q), sign, "a={a} q={q}");
            }
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(cf_expand(3, 7).unwrap().to_string(), "[0;2,3]");
        assert_eq!(cf_expand(1, 1).unwrap().to_string(), "[0;1]");
    }
}
