//! High-precision real arithmetic support.
//!
//! Two layers serve different needs. [`DDouble`] is an unevaluated sum of
//! two doubles (~106 significant bits) for the large polynomial-style
//! truncated sums where per-term speed matters. `BigFloat` (astro-float)
//! at [`PREC`] bits handles everything transcendental: pi, logarithms and
//! trigonometric values for the L-function work.

use std::ops::{Add, Div, Mul, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::Rational;

/// Working mantissa precision in bits for `BigFloat` computations.
pub const PREC: usize = 192;

/// Fixed rounding mode.
pub const RM: RoundingMode = RoundingMode::ToEven;

// ---------------------------------------------------------------------------
// double-double
// ---------------------------------------------------------------------------

/// Unevaluated sum `hi + lo` of two doubles, |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    // Dekker split at 2^27 + 1
    let c = 134_217_729.0 * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl DDouble {
    pub const ZERO: DDouble = DDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DDouble = DDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DDouble { hi: x, lo: 0.0 }
    }

    pub fn from_i128(v: i128) -> Self {
        let hi = v as f64;
        let rem = v - hi as i128;
        let (s, e) = two_sum(hi, rem as f64);
        DDouble { hi: s, lo: e }
    }

    fn mul_f64(self, b: f64) -> DDouble {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        DDouble { hi, lo }
    }

    pub fn recip(self) -> DDouble {
        DDouble::ONE / self
    }

    pub fn abs(self) -> DDouble {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            DDouble { hi: -self.hi, lo: -self.lo }
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DDouble {
    type Output = DDouble;
    fn add(self, other: DDouble) -> DDouble {
        let (s1, mut s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        s2 += t1;
        let (s1, mut s2) = quick_two_sum(s1, s2);
        s2 += t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        DDouble { hi, lo }
    }
}

impl Sub for DDouble {
    type Output = DDouble;
    fn sub(self, other: DDouble) -> DDouble {
        self + DDouble { hi: -other.hi, lo: -other.lo }
    }
}

impl Mul for DDouble {
    type Output = DDouble;
    fn mul(self, other: DDouble) -> DDouble {
        let (p1, mut p2) = two_prod(self.hi, other.hi);
        p2 += self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        DDouble { hi, lo }
    }
}

impl Div for DDouble {
    type Output = DDouble;
    fn div(self, other: DDouble) -> DDouble {
        let q1 = self.hi / other.hi;
        let r = self - other.mul_f64(q1);
        let q2 = r.hi / other.hi;
        let r = r - other.mul_f64(q2);
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        DDouble { hi: s, lo: e } + DDouble::from_f64(q3)
    }
}

/// `Rational` to `DDouble`, correct to ~106 bits for desk-scale operands.
pub fn rational_to_dd(r: &Rational) -> DDouble {
    use num_traits::ToPrimitive;
    match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) => DDouble::from_i128(n) / DDouble::from_i128(d),
        _ => {
            // big operands: go through the 192-bit route
            let x = rational_to_bigfloat(r, PREC);
            DDouble::from_f64(bigfloat_to_f64(&x))
        }
    }
}

// ---------------------------------------------------------------------------
// BigFloat helpers
// ---------------------------------------------------------------------------

/// Exact conversion (up to precision `p`) of a big integer.
pub fn bigint_to_bigfloat(x: &BigInt, p: usize) -> BigFloat {
    let (sign, mag) = x.clone().into_parts();
    if mag.is_zero() {
        return BigFloat::from_i64(0, p);
    }
    let bits = mag.bits();
    // left-align so the top bit of the top word is set; value = frac * 2^bits
    let shift = (64 - (bits % 64)) % 64;
    let shifted = mag << shift;
    let words = shifted.to_u64_digits();
    let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
    let mut v = BigFloat::from_words(&words, s, bits as i64 as astro_float::Exponent);
    if v.mantissa_max_bit_len().unwrap_or(0) > p {
        v.set_precision(p, RM).expect("set_precision");
    }
    v
}

/// `num/den` at precision `p`.
pub fn rational_to_bigfloat(r: &Rational, p: usize) -> BigFloat {
    let num = bigint_to_bigfloat(r.numer(), p + 64);
    let den = bigint_to_bigfloat(r.denom(), p + 64);
    num.div(&den, p, RM)
}

/// Display-grade conversion.
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    let (words, _n, sign, exp, _) = match x.as_raw_parts() {
        Some(parts) => parts,
        None => return f64::NAN,
    };
    // words are little-endian; the top word carries the leading bits of the
    // fraction in [0.5, 1), so value = sum_i w_i 2^(-64(top-i+1)) * 2^exp
    let top = words.len() - 1;
    let mut v = 0.0f64;
    for (i, &w) in words.iter().enumerate().rev().take(2) {
        let scale = exp - 64 * (top - i + 1) as i32;
        v += libm_ldexp(w as f64, scale);
    }
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn libm_ldexp(x: f64, e: i32) -> f64 {
    x * f64::powi(2.0, e)
}

/// pi at precision `p`.
pub fn pi(p: usize, cc: &mut Consts) -> BigFloat {
    cc.pi(p, RM)
}

/// |x - y| <= tol, evaluated in f64 after exact subtraction.
pub fn within(x: &BigFloat, y: &BigFloat, tol: f64, p: usize) -> bool {
    bigfloat_to_f64(&x.sub(y, p, RM).abs()) <= tol
}

// ---------------------------------------------------------------------------
// complex values over BigFloat
// ---------------------------------------------------------------------------

/// Complex number with `BigFloat` components.
#[derive(Debug, Clone)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cx {
    pub fn zero(p: usize) -> Self {
        Cx { re: BigFloat::from_i64(0, p), im: BigFloat::from_i64(0, p) }
    }

    pub fn add(&self, other: &Cx, p: usize) -> Cx {
        Cx { re: self.re.add(&other.re, p, RM), im: self.im.add(&other.im, p, RM) }
    }

    pub fn sub(&self, other: &Cx, p: usize) -> Cx {
        Cx { re: self.re.sub(&other.re, p, RM), im: self.im.sub(&other.im, p, RM) }
    }

    pub fn mul(&self, other: &Cx, p: usize) -> Cx {
        let re = self.re.mul(&other.re, p, RM).sub(&self.im.mul(&other.im, p, RM), p, RM);
        let im = self.re.mul(&other.im, p, RM).add(&self.im.mul(&other.re, p, RM), p, RM);
        Cx { re, im }
    }

    pub fn scale(&self, t: &BigFloat, p: usize) -> Cx {
        Cx { re: self.re.mul(t, p, RM), im: self.im.mul(t, p, RM) }
    }

    pub fn div_real(&self, t: &BigFloat, p: usize) -> Cx {
        Cx { re: self.re.div(t, p, RM), im: self.im.div(t, p, RM) }
    }

    pub fn conj(&self) -> Cx {
        let mut im = self.im.clone();
        im.inv_sign();
        Cx { re: self.re.clone(), im }
    }

    /// |z|^2 as a real.
    pub fn abs2(&self, p: usize) -> BigFloat {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// |z| in f64 grade.
    pub fn abs_f64(&self, p: usize) -> f64 {
        bigfloat_to_f64(&self.abs2(p)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_identities() {
        let a = DDouble::from_i128(1) / DDouble::from_i128(3);
        let three = DDouble::from_i128(3);
        let back = a * three;
        assert!((back.to_f64() - 1.0).abs() < 1e-30);
        // hi+lo really carries > 53 bits: 1/3 * 3 - 1 in plain f64 is ~1e-17
        let x = DDouble::from_i128(10i128.pow(20)) + DDouble::ONE;
        let y = x - DDouble::from_i128(10i128.pow(20));
        assert_eq!(y.to_f64(), 1.0);
    }

    #[test]
    fn dd_from_large_integer() {
        let v = 123_456_789_012_345_678_901_234_567i128;
        let dd = DDouble::from_i128(v);
        let approx = dd.hi as i128 + dd.lo as i128;
        assert_eq!(approx, v);
    }

    #[test]
    fn bigint_conversion_round_trip() {
        for v in [0i64, 1, -1, 7, -12345, i64::MAX] {
            let bf = bigint_to_bigfloat(&BigInt::from(v), 128);
            assert_eq!(bigfloat_to_f64(&bf), v as f64, "v={v}");
        }
        let huge = BigInt::from(10u32).pow(40);
        let bf = bigint_to_bigfloat(&huge, 256);
        assert!((bigfloat_to_f64(&bf) - 1e40).abs() / 1e40 < 1e-12);
    }

    #[test]
    fn rational_conversion() {
        let r = Rational::new(-1, 14);
        let x = rational_to_bigfloat(&r, 128);
        assert!((bigfloat_to_f64(&x) + 1.0 / 14.0).abs() < 1e-16);
        let dd = rational_to_dd(&r);
        assert!((dd.to_f64() + 1.0 / 14.0).abs() < 1e-16);
    }

    #[test]
    fn pi_value() {
        let mut cc = Consts::new().unwrap();
        let p = pi(PREC, &mut cc);
        assert!((bigfloat_to_f64(&p) - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn complex_ops() {
        let p = 128;
        let i = Cx { re: BigFloat::from_i64(0, p), im: BigFloat::from_i64(1, p) };
        let sq = i.mul(&i, p);
        assert_eq!(bigfloat_to_f64(&sq.re), -1.0);
        assert_eq!(bigfloat_to_f64(&sq.im), 0.0);
        assert_eq!(bigfloat_to_f64(&i.abs2(p)), 1.0);
    }
}
