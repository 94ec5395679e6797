//! Exact arbitrary-precision rational arithmetic.
//!
//! [`Rational`] is the value type for every Dedekind sum, moment and
//! analytic constant in this crate. It is a thin wrapper over
//! `num_rational::BigRational` that pins the serialization format:
//! `"num/den"` in lowest terms with the sign on the numerator, and plain
//! `"n"` (never `"n/1"`) for integers.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    x as i64
}

/// Inverse of `a` modulo `n`, normalized to `[1, n-1]`.
///
/// Fails when `gcd(a, n) != 1`, which signals a violated coprimality
/// hypothesis at the call site.
pub fn mod_inverse(a: i64, n: i64) -> Result<i64> {
    if n <= 1 {
        return Err(invalid(format!("mod_inverse: modulus {n} must exceed 1")));
    }
    // extended Euclid on (a mod n, n)
    let a0 = (a as i128).rem_euclid(n as i128);
    let (mut r0, mut r1) = (a0, n as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(invalid(format!(
            "mod_inverse: gcd({a}, {n}) = {r0}, arguments are not coprime"
        )));
    }
    Ok(s0.rem_euclid(n as i128) as i64)
}

/// An exact rational in canonical form: `gcd(|num|, den) = 1`, `den >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(invalid("division by zero rational"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(Pow::pow(&self.0, exp as i32))
    }

    /// Lossy conversion, used only for display-grade output.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact decimal expansion with `sig` significant digits, rounded half
    /// away from zero. Deterministic; used for pinned ratio values.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let num = self.numer().abs();
        let den = self.denom().clone();

        // v >= 10^e ?
        fn ge_pow10(num: &BigInt, den: &BigInt, e: i64) -> bool {
            if e >= 0 {
                *num >= den * BigInt::from(10u32).pow(e as u32)
            } else {
                num * BigInt::from(10u32).pow((-e) as u32) >= *den
            }
        }

        // e = floor(log10 v): unique e with 10^e <= v < 10^(e+1)
        let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
        if ge_pow10(&num, &den, e + 1) {
            e += 1;
        } else if !ge_pow10(&num, &den, e) {
            e -= 1;
        }
        debug_assert!(ge_pow10(&num, &den, e) && !ge_pow10(&num, &den, e + 1));

        // mantissa = round(v * 10^(sig-1-e)), an integer with sig digits
        let x = sig as i64 - 1 - e;
        let (scaled_num, scaled_den) = if x >= 0 {
            (&num * BigInt::from(10u32).pow(x as u32), den.clone())
        } else {
            (num.clone(), &den * BigInt::from(10u32).pow((-x) as u32))
        };
        let (mut q, r) = scaled_num.div_rem(&scaled_den);
        if r * 2 >= scaled_den {
            q += 1;
        }
        let mut digits = q.to_string();
        if digits.len() > sig {
            // rounding carried into a new leading digit (999... -> 1000...)
            e += 1;
            digits.truncate(sig);
        }
        debug_assert_eq!(digits.len(), sig);
        while digits.len() > 1 && digits.ends_with('0') {
            digits.pop();
        }

        let mut s = String::new();
        if neg {
            s.push('-');
        }
        if (-4..=20).contains(&e) {
            if e >= 0 {
                let ip = e as usize + 1;
                if digits.len() <= ip {
                    s.push_str(&digits);
                    s.push_str(&"0".repeat(ip - digits.len()));
                } else {
                    s.push_str(&digits[..ip]);
                    s.push('.');
                    s.push_str(&digits[ip..]);
                }
            } else {
                s.push_str("0.");
                s.push_str(&"0".repeat((-e - 1) as usize));
                s.push_str(&digits);
            }
        } else {
            s.push_str(&digits[..1]);
            if digits.len() > 1 {
                s.push('.');
                s.push_str(&digits[1..]);
            }
            s.push('e');
            s.push_str(&e.to_string());
        }
        s
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| invalid(format!("malformed rational component {t:?}")))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(invalid("rational with zero denominator"));
                }
                Ok(Rational::new(parse_int(n)?, den))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(3, 7), 1);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-12, 18), 6);
    }

    #[test]
    fn mod_inverse_examples() {
        // exhaustive-search oracle for the frozen value
        let search = |a: i64, n: i64| (1..n).find(|x| (a * x).rem_euclid(n) == 1);
        assert_eq!(search(3, 7), Some(5));
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        for n in [2i64, 5, 7, 12, 101] {
            assert_eq!(mod_inverse(1, n).unwrap(), 1);
        }
        assert!(mod_inverse(2, 4).is_err());
        // a negative representative of the same residue class
        assert_eq!(mod_inverse(-4, 7).unwrap(), 5);
    }

    #[test]
    fn mod_inverse_matches_search() {
        for n in 2..60i64 {
            for a in 1..n {
                if gcd(a, n) == 1 {
                    let x = mod_inverse(a, n).unwrap();
                    assert!((1..n).contains(&x));
                    assert_eq!((a * x).rem_euclid(n), 1);
                } else {
                    assert!(mod_inverse(a, n).is_err());
                }
            }
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(Rational::new(-1, 14).to_string(), "-1/14");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        assert_eq!(Rational::new(0, 5).to_string(), "0");
        assert_eq!(Rational::new(1, -3).to_string(), "-1/3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["-1/14", "2", "0", "7/3", "-5"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("3/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_expansion() {
        assert_eq!(Rational::new(1, 4).to_decimal(6), "0.25");
        assert_eq!(Rational::new(-1, 3).to_decimal(5), "-0.33333");
        assert_eq!(Rational::new(2, 3).to_decimal(4), "0.6667");
        assert_eq!(Rational::new(1000, 1).to_decimal(3), "1000");
        assert_eq!(Rational::new(9999, 10).to_decimal(3), "1000");
        assert_eq!(Rational::new(1, 10_000_000).to_decimal(3), "1e-7");
        assert_eq!(Rational::new(1, 1).to_decimal(8), "1");
        assert_eq!(Rational::new(288, 3125).to_decimal(6), "0.09216");
    }

    #[test]
    fn exact_field_ops() {
        let r = Rational::new(22, 7);
        let s = Rational::new(-5, 3);
        assert_eq!((r.clone() + s.clone()) - s.clone(), r);
        assert_eq!((r.clone() * s.clone()) / s.clone(), r);
        assert_eq!(&(&r + &s) - &s, r);
    }
}
