//! Dedekind sums by two independent algorithms, plus exact verification of
//! the classical identities: two-term reciprocity, Rademacher's three-term
//! relation, and the Hall-Huxley extension.
//!
//! `dedekind_naive` evaluates the defining sawtooth sum in O(k) and serves
//! as the universal oracle (it accepts non-coprime arguments). Every other
//! evaluation goes through `dedekind_fast`, the O(log k) continued-fraction
//! formula.

use rayon::prelude::*;

use crate::cf::cf_expand;
use crate::error::{invalid, Result};
use crate::rational::{gcd, mod_inverse, Rational};

/// Sawtooth `((x))`: `x - floor(x) - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - &Rational::from_integer(x.floor()) - Rational::new(1, 2)
}

/// Defining sum `s(h, k) = sum_{a=1}^{k} ((a/k)) ((ah/k))`, O(k).
///
/// `h` may be arbitrary (it is reduced mod k) and need not be coprime to
/// `k`; the defining sum is evaluated either way.
pub fn dedekind_naive(h: i64, k: i64) -> Result<Rational> {
    if k <= 0 {
        return Err(invalid(format!("dedekind_naive: modulus k={k} must be positive")));
    }
    let k = k as i128;
    let hm = (h as i128).rem_euclid(k);
    // ((a/k)) = (2a - k)/(2k) for 0 < a < k, so each nonzero term is
    // (2a - k)(2r - k)/(4k^2) with r = a h mod k. Terms with a = k or r = 0
    // vanish. |partial sums| <= k^3 fits i128 for any i64 modulus.
    let mut num = 0i128;
    for a in 1..k {
        let r = (a * hm) % k;
        if r != 0 {
            num += (2 * a - k) * (2 * r - k);
        }
    }
    Ok(Rational::new(num, 4 * k * k))
}

/// `s(h, k)` via the continued-fraction evaluation, O(log k).
///
/// Reduces `h` mod `k`, divides out `g = gcd(h, k)` (using
/// `s(h, k) = s(gh, gk)`), then evaluates the alternating partial-quotient
/// formula on the canonical expansion of `a/q`, branching on the parity of
/// the expansion length. `d` is the penultimate continuant of the
/// expansion, the representative in `[1, q]` of `a^{-1}` (odd length) or
/// `-a^{-1}` (even length) mod `q`. Equals `dedekind_naive` exactly.
pub fn dedekind_fast(h: i64, k: i64) -> Result<Rational> {
    if k <= 0 {
        return Err(invalid(format!("dedekind_fast: modulus k={k} must be positive")));
    }
    let hm = h.rem_euclid(k);
    if hm == 0 {
        return Ok(Rational::zero());
    }
    let g = gcd(hm, k);
    let (a, q) = (hm / g, k / g);
    if q == 1 {
        return Ok(Rational::zero());
    }
    let cf = cf_expand(a, q)?;
    let mut alt = 0i128;
    let mut sign = 1i128;
    for &d in &cf.quotients()[1..] {
        alt += sign * d as i128;
        sign = -sign;
    }
    let d = cf.penultimate_continuant() as i128;
    let (a, q) = (a as i128, q as i128);
    // odd l:  s = ((a + d)/q + alt)/12 - 1/4
    // even l: s = ((a - d)/q + alt)/12
    let num = if cf.len() % 2 == 1 {
        a + d + q * alt - 3 * q
    } else {
        a - d + q * alt
    };
    Ok(Rational::new(num, 12 * q))
}

/// `s(h, k)` extended to negative modulus by `s(h, -k) = -s(h, k) - 1/2`.
pub fn dedekind_signed(h: i64, k: i64) -> Result<Rational> {
    if k == 0 {
        return Err(invalid("dedekind_signed: modulus must be nonzero"));
    }
    if k > 0 {
        dedekind_fast(h, k)
    } else {
        Ok(-dedekind_fast(h, -k)? - Rational::new(1, 2))
    }
}

/// `s(h,k) + s(k,h) - (h^2 + k^2 + 1)/(12hk) + 1/4`; exactly zero on
/// coprime positive pairs.
pub fn reciprocity_residual(h: i64, k: i64) -> Result<Rational> {
    if h <= 0 || k <= 0 {
        return Err(invalid("reciprocity_residual: arguments must be positive"));
    }
    if gcd(h, k) != 1 {
        return Err(invalid(format!("reciprocity_residual: gcd({h}, {k}) != 1")));
    }
    let (hi, ki) = (h as i128, k as i128);
    let main = Rational::new(hi * hi + ki * ki + 1, 12 * hi * ki);
    Ok(dedekind_fast(h, k)? + dedekind_fast(k, h)? - main + Rational::new(1, 4))
}

/// Dedekind-sum term `s(u * v^{-1} mod w, w)`, with `s(_, 1) = 0`.
fn inverse_term(u: i64, v: i64, w: i64) -> Result<Rational> {
    if w == 1 {
        return Ok(Rational::zero());
    }
    let vinv = mod_inverse(v.rem_euclid(w), w)?;
    let arg = ((u.rem_euclid(w) as i128 * vinv as i128) % w as i128) as i64;
    dedekind_fast(arg, w)
}

/// Rademacher's three-term relation:
/// `s(x ybar, z) + s(y zbar, x) + s(z xbar, y) - (x^2+y^2+z^2)/(12xyz) + 1/4`
/// for pairwise coprime positive `x, y, z`; exactly zero.
///
/// The bar denotes the inverse modulo the product of the other two
/// variables; inside `s(_, w)` only its residue mod `w` matters, so each
/// term is computed with the inverse taken mod `w` directly.
pub fn rademacher_residual(x: i64, y: i64, z: i64) -> Result<Rational> {
    if x <= 0 || y <= 0 || z <= 0 {
        return Err(invalid("rademacher_residual: arguments must be positive"));
    }
    if gcd(x, y) != 1 || gcd(y, z) != 1 || gcd(x, z) != 1 {
        return Err(invalid(format!(
            "rademacher_residual: ({x}, {y}, {z}) is not pairwise coprime"
        )));
    }
    let (xi, yi, zi) = (x as i128, y as i128, z as i128);
    let main = Rational::new(xi * xi + yi * yi + zi * zi, 12 * xi * yi * zi);
    let sum = inverse_term(x, y, z)? + inverse_term(y, z, x)? + inverse_term(z, x, y)?;
    Ok(sum - main + Rational::new(1, 4))
}

/// Hall-Huxley identity for a unimodular matrix `[[a, b], [c, d]]` applied
/// to coprime `(h, k)`: with `x = ah + bk`, `y = ch + dk`,
/// `s(a,c) + s(h,k) - s(x,y) - (c^2 + k^2 + y^2)/(12cky) + 1/4` is exactly
/// zero.
pub fn hall_huxley_residual(a: i64, b: i64, c: i64, d: i64, h: i64, k: i64) -> Result<Rational> {
    if a <= 0 || b <= 0 || c <= 0 || d <= 0 || h <= 0 || k <= 0 {
        return Err(invalid("hall_huxley_residual: all six arguments must be positive"));
    }
    if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
        return Err(invalid(format!("hall_huxley_residual: ad - bc = {} != 1",
            a as i128 * d as i128 - b as i128 * c as i128)));
    }
    if gcd(h, k) != 1 {
        return Err(invalid(format!("hall_huxley_residual: gcd({h}, {k}) != 1")));
    }
    let x = a
        .checked_mul(h)
        .and_then(|v| v.checked_add(b.checked_mul(k)?))
        .ok_or_else(|| invalid("hall_huxley_residual: x = ah + bk overflows"))?;
    let y = c
        .checked_mul(h)
        .and_then(|v| v.checked_add(d.checked_mul(k)?))
        .ok_or_else(|| invalid("hall_huxley_residual: y = ch + dk overflows"))?;
    let (ci, ki, yi) = (c as i128, k as i128, y as i128);
    let main = Rational::new(ci * ci + ki * ki + yi * yi, 12 * ci * ki * yi);
    Ok(dedekind_fast(a, c)? + dedekind_fast(h, k)? - dedekind_fast(x, y)? - main
        + Rational::new(1, 4))
}

/// All values `(h, s(h, k))` for `1 <= h <= k-1` with `gcd(h, k) = 1`,
/// in increasing `h`. Data parallel over `h`; ordering is deterministic.
pub fn dedekind_table(k: i64) -> Result<Vec<(i64, Rational)>> {
    if k < 2 {
        return Err(invalid(format!("dedekind_table: need k >= 2, got {k}")));
    }
    (1..k)
        .into_par_iter()
        .filter(|&h| gcd(h, k) == 1)
        .map(|h| Ok((h, dedekind_fast(h, k)?)))
        .collect()
}
