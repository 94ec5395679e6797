//! Exact rational evaluation of the analytic constants: zeta at even
//! integers via Bernoulli numbers, the moment constant `2 zeta(2m)^2 / zeta(4m)`,
//! the coprime Euler factor `F(q)`, and the divisor-square partial sums
//! converging to `zeta(2)^4 / zeta(4)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::factor::{divisor_count_sieve, factorize, lcm_up_to};
use crate::rational::Rational;

/// A value `coeff * pi^power` with exact rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPower {
    pub coeff: Rational,
    pub power: u32,
}

impl PiPower {
    pub fn new(coeff: Rational, power: u32) -> Self {
        PiPower { coeff, power }
    }

    pub fn mul(&self, other: &PiPower) -> PiPower {
        PiPower {
            coeff: &self.coeff * &other.coeff,
            power: self.power + other.power,
        }
    }

    /// Division; fails on zero coefficient or on a power underflow (the
    /// result must stay a nonnegative power of pi).
    pub fn div(&self, other: &PiPower) -> Result<PiPower> {
        if other.coeff.is_zero() {
            return Err(invalid("PiPower division by zero coefficient"));
        }
        if self.power < other.power {
            return Err(invalid("PiPower division yields a negative pi power"));
        }
        Ok(PiPower {
            coeff: &self.coeff / &other.coeff,
            power: self.power - other.power,
        })
    }

    pub fn pow(&self, e: u32) -> PiPower {
        PiPower {
            coeff: self.coeff.pow(e),
            power: self.power * e,
        }
    }
}

/// Bernoulli number `B_n` (convention `B_1 = -1/2`), by the recurrence
/// `B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j`.
pub fn bernoulli(n: u32) -> Rational {
    bernoulli_row(n).pop().unwrap()
}

/// `B_0, ..., B_n`.
fn bernoulli_row(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n as usize {
        // binomials C(m+1, j) built incrementally
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += &(Rational::from_integer(binom.clone()) * bj.clone());
            binom = &binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(m as i64 + 1));
    }
    b
}

/// `zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^(2n) / (2 (2n)!)` as a `PiPower`
/// of power `2n`.
pub fn zeta_even(n: u32) -> PiPower {
    assert!(n >= 1, "zeta_even requires n >= 1");
    let b2n = bernoulli(2 * n);
    let mut fact = BigInt::one();
    for i in 2..=(2 * n) {
        fact *= BigInt::from(i);
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let two_pow = BigInt::from(2u32).pow(2 * n);
    let coeff = Rational::from_integer(sign) * b2n * Rational::new(two_pow, 2 * fact);
    PiPower::new(coeff, 2 * n)
}

/// The moment constant `2 zeta(2m)^2 / zeta(4m)`, a pure rational (the
/// pi powers cancel structurally: 4m in numerator and denominator).
pub fn moment_constant(m: u32) -> Rational {
    assert!(m >= 1, "moment_constant requires m >= 1");
    let num = zeta_even(m).pow(2);
    let den = zeta_even(2 * m);
    let ratio = num.div(&den).expect("zeta coefficients are nonzero");
    debug_assert_eq!(ratio.power, 0);
    Rational::from_integer(2) * ratio.coeff
}

/// `F(q) = prod_{p | q} (1 - p^(-2m))`, exactly.
pub fn coprime_zeta_factor(q: i64, m: u32) -> Result<Rational> {
    if q < 1 || m < 1 {
        return Err(invalid(format!("coprime_zeta_factor: need q >= 1, m >= 1, got q={q} m={m}")));
    }
    let mut f = Rational::one();
    for (p, _) in factorize(q) {
        let p2m = Rational::from_integer(p).pow(2 * m);
        f = f * (Rational::one() - p2m.recip()?);
    }
    Ok(f)
}

/// Exact partial sum `sum_{q <= qmax} F(q) / q^(2m)`.
///
/// Converges to `zeta(2m) / zeta(4m)` with tail `O(qmax^(1-2m))`.
/// Accumulated over the fixed denominator `lcm(1..qmax)^(4m)` and reduced
/// once at the end; per-term reduction on the huge denominators would
/// dominate the runtime.
pub fn euler_product_partial(qmax: i64, m: u32) -> Result<Rational> {
    if qmax < 1 || m < 1 {
        return Err(invalid("euler_product_partial: need qmax >= 1, m >= 1"));
    }
    let lcm = lcm_up_to(qmax);
    let common: BigInt = lcm.pow(4 * m);
    let mut acc = BigInt::zero();
    for q in 1..=qmax {
        // F(q)/q^2m = prod (p^2m - 1) / (rad(q)^2m * q^2m)
        let mut num = BigInt::one();
        let mut den = BigInt::from(q).pow(2 * m);
        for (p, _) in factorize(q) {
            let p2m = BigInt::from(p).pow(2 * m);
            num *= &p2m - 1;
            den *= p2m;
        }
        acc += num * (&common / den);
    }
    Ok(Rational::new(acc, common))
}

/// Exact partial sum `sum_{n <= nmax} d(n)^2 / n^2`.
///
/// Monotone increasing in `nmax`, bounded by `zeta(2)^4 / zeta(4)`.
pub fn divisor_sum_partial(nmax: i64) -> Result<Rational> {
    if nmax < 1 {
        return Err(invalid("divisor_sum_partial: need nmax >= 1"));
    }
    let d = divisor_count_sieve(nmax as usize);
    let common: BigInt = lcm_up_to(nmax).pow(2);
    let mut acc = BigInt::zero();
    for n in 1..=nmax {
        let dn = BigInt::from(d[n as usize] * d[n as usize]);
        acc += dn * (&common / BigInt::from(n).pow(2));
    }
    Ok(Rational::new(acc, common))
}
