//! Dirichlet approximation, the Farey interval dissection, and the
//! approximation of `s(h, k)` by the main term `k/(12 q eps)`.

use rayon::prelude::*;

use crate::cf::cf_expand;
use crate::dedekind::dedekind_fast;
use crate::error::{invalid, Result};
use crate::rational::{gcd, Rational};

/// Approximation datum for `h/k ~ a/q`: `eps = h q - a k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproxTriple {
    pub a: i64,
    pub q: i64,
    pub eps: i64,
}

impl ApproxTriple {
    /// Record the approximant `(a, q)` of `h/k` together with its signed
    /// discrepancy.
    pub fn new(h: i64, k: i64, a: i64, q: i64) -> Result<Self> {
        if q < 1 || a < 0 {
            return Err(invalid(format!("ApproxTriple: need q >= 1 and a >= 0, got a={a} q={q}")));
        }
        if gcd(a, q) != 1 {
            return Err(invalid(format!("ApproxTriple: gcd({a}, {q}) != 1")));
        }
        Ok(ApproxTriple { a, q, eps: approx_eps(h, k, a, q) })
    }
}

/// `eps = h q - a k`.
pub fn approx_eps(h: i64, k: i64, a: i64, q: i64) -> i64 {
    h * q - a * k
}

/// Dirichlet approximation: the reduced `a/q` with `1 <= q <= cap`,
/// `0 <= a <= q` and `|alpha - a/q| < 1/(q * cap)`, choosing the smallest
/// valid `q` (ties by smaller error, then smaller `a`).
///
/// Existence is guaranteed for every `alpha` in `[0, 1]` and `cap > 1`.
pub fn dirichlet_approx(alpha: &Rational, cap: &Rational) -> Result<(i64, i64)> {
    validate_approx_args(alpha, cap)?;
    let q_limit = floor_i64(cap);
    if q_limit <= 1024 {
        Ok(approx_by_scan(alpha, cap).expect("Dirichlet approximation must exist"))
    } else {
        Ok(approx_by_convergents(alpha, cap).expect("Dirichlet approximation must exist"))
    }
}

fn validate_approx_args(alpha: &Rational, cap: &Rational) -> Result<()> {
    if alpha.is_negative() || *alpha > Rational::one() {
        return Err(invalid(format!("dirichlet_approx: alpha={alpha} outside [0, 1]")));
    }
    if *cap <= Rational::one() {
        return Err(invalid(format!("dirichlet_approx: cap={cap} must exceed 1")));
    }
    Ok(())
}

fn floor_i64(x: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    x.floor().to_i64().expect("bound exceeds i64 range")
}

/// `|alpha - a/q| < 1/(q cap)` checked exactly: with `alpha = p/r` and
/// `cap = cp/cr`, the condition is `|p q - a r| * cp < r * cr`.
fn witness_ok(alpha: &Rational, cap: &Rational, a: i64, q: i64) -> bool {
    use num_traits::ToPrimitive;
    let p = alpha.numer().to_i128().expect("alpha numerator range");
    let r = alpha.denom().to_i128().expect("alpha denominator range");
    let cp = cap.numer().to_i128().expect("cap numerator range");
    let cr = cap.denom().to_i128().expect("cap denominator range");
    let (a, q) = (a as i128, q as i128);
    (p * q - a * r).abs() * cp < r * cr
}

/// Exact error `|alpha - a/q|`.
fn witness_err(alpha: &Rational, a: i64, q: i64) -> Rational {
    (alpha - &Rational::new(a, q)).abs()
}

/// Ascending scan over q; per q only `floor(alpha q)` and its successor can
/// qualify, because the admissible window has width `2/cap < 2`.
pub(crate) fn approx_by_scan(alpha: &Rational, cap: &Rational) -> Option<(i64, i64)> {
    let q_limit = floor_i64(cap).max(1);
    for q in 1..=q_limit {
        let base = floor_i64(&(alpha * &Rational::from_integer(q)));
        let mut best: Option<(Rational, i64)> = None;
        for a in [base, base + 1] {
            if !(0..=q).contains(&a) || gcd(a, q) != 1 {
                continue;
            }
            if witness_ok(alpha, cap, a, q) {
                let err = witness_err(alpha, a, q);
                let better = match &best {
                    None => true,
                    Some((e, prev_a)) => err < *e || (err == *e && a < *prev_a),
                };
                if better {
                    best = Some((err, a));
                }
            }
        }
        if let Some((_, a)) = best {
            return Some((a, q));
        }
    }
    None
}

/// Convergent/semiconvergent ladder of `alpha`, ascending in denominator.
/// Any smallest-denominator witness is a best approximation of the first
/// kind, hence appears on this ladder.
pub(crate) fn approx_by_convergents(alpha: &Rational, cap: &Rational) -> Option<(i64, i64)> {
    use num_traits::ToPrimitive;
    let q_limit = floor_i64(cap);
    let p = alpha.numer().to_i64().expect("alpha numerator range");
    let r = alpha.denom().to_i64().expect("alpha denominator range");

    // candidates at q = 1 first: 0/1 and 1/1 share the denominator
    let mut q1_best: Option<(Rational, i64)> = None;
    for a in [0i64, 1] {
        if witness_ok(alpha, cap, a, 1) {
            let err = witness_err(alpha, a, 1);
            let better = match &q1_best {
                None => true,
                Some((e, prev_a)) => err < *e || (err == *e && a < *prev_a),
            };
            if better {
                q1_best = Some((err, a));
            }
        }
    }
    if let Some((_, a)) = q1_best {
        return Some((a, 1));
    }
    if p == 0 || p == r {
        return None; // endpoints are exactly representable at q = 1
    }

    let cf = cf_expand(p, r).ok()?;
    // walk the semiconvergent fans (p_{i-1} + t p_i)/(q_{i-1} + t q_i)
    let (mut p_prev, mut q_prev) = (1i64, 0i64);
    let (mut p_cur, mut q_cur) = (0i64, 1i64);
    for &d in &cf.quotients()[1..] {
        for t in 1..=d {
            let (a, q) = (p_prev + t * p_cur, q_prev + t * q_cur);
            if q > q_limit {
                return None;
            }
            if q > 1 && witness_ok(alpha, cap, a, q) {
                return Some((a, q));
            }
        }
        (p_prev, p_cur) = (p_cur, p_prev + d * p_cur);
        (q_prev, q_cur) = (q_cur, q_prev + d * q_cur);
    }
    None
}

/// Main term `k/(12 q eps)`, interpreted as 0 when `eps = 0`.
pub fn lemma_main_term(k: i64, q: i64, eps: i64) -> Rational {
    if eps == 0 {
        return Rational::zero();
    }
    Rational::new(k, 12i128 * q as i128 * eps as i128)
}

/// Exact approximation error `s(h, k) - k/(12 q eps)` with `eps = hq - ak`.
///
/// Requires coprime `(h, k)` and `(a, q)`, positive moduli, and the side
/// condition `|eps| <= k/q`.
pub fn approx_error(h: i64, k: i64, a: i64, q: i64) -> Result<Rational> {
    if k <= 0 || q <= 0 {
        return Err(invalid("approx_error: moduli must be positive"));
    }
    if gcd(h, k) != 1 || gcd(a, q) != 1 {
        return Err(invalid("approx_error: arguments must be coprime pairs"));
    }
    let eps = approx_eps(h, k, a, q);
    if eps.unsigned_abs() as i128 * q as i128 > k as i128 {
        return Err(invalid(format!(
            "approx_error: |eps| = {} exceeds k/q = {k}/{q}",
            eps.unsigned_abs()
        )));
    }
    Ok(dedekind_fast(h, k)? - lemma_main_term(k, q, eps))
}

/// Check `|s(h,k) - k/(12 q eps)| <= c * (|s(a,q)| + |eps| + 1)`.
pub fn lemma8_bound_check(h: i64, k: i64, a: i64, q: i64, c: &Rational) -> Result<bool> {
    let err = approx_error(h, k, a, q)?.abs();
    let eps = approx_eps(h, k, a, q);
    let budget = dedekind_fast(a.rem_euclid(q), q)?.abs()
        + Rational::from_integer(eps.abs())
        + Rational::one();
    Ok(err <= c * &budget)
}

/// One interval `(a/q - 1/(q Q1), a/q + 1/(q Q1))` of the dissection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyInterval {
    pub a: i64,
    pub q: i64,
    pub lo: Rational,
    pub hi: Rational,
}

/// The family of open intervals around all reduced `a/q` with `q <= q1`,
/// `0 <= a <= q` (both endpoints `0/1` and `1/1` included).
#[derive(Debug, Clone)]
pub struct Dissection {
    q1: i64,
    intervals: Vec<FareyInterval>,
}

/// Build the dissection for parameter `q1 >= 2`.
///
/// The fractions `0/1` and `1/1` are included so the family covers the
/// closed interval `[0, 1]`; around `0/1` the main term `k/(12 q eps)`
/// with `(a, q) = (0, 1)` reproduces the spike `s(1, k) ~ k/12`.
pub fn build_dissection(q1: i64) -> Result<Dissection> {
    if q1 < 2 {
        return Err(invalid(format!("build_dissection: need q1 >= 2, got {q1}")));
    }
    let mut intervals = Vec::new();
    for q in 1..=q1 {
        let upper = if q == 1 { 1 } else { q - 1 };
        let lower = if q == 1 { 0 } else { 1 };
        for a in lower..=upper {
            if gcd(a, q) != 1 {
                continue;
            }
            let center = Rational::new(a, q);
            let radius = Rational::new(1, q as i128 * q1 as i128);
            intervals.push(FareyInterval {
                a,
                q,
                lo: &center - &radius,
                hi: &center + &radius,
            });
        }
    }
    Ok(Dissection { q1, intervals })
}

impl Dissection {
    pub fn q1(&self) -> i64 {
        self.q1
    }

    pub fn intervals(&self) -> &[FareyInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Every `(a, q)` of the family whose open interval contains `h/k`,
    /// in increasing `(q, a)` order.
    ///
    /// `h/k` lies in `I_{a,q}` iff `|h q - a k| * q1 < k`; for each `q` at
    /// most the two integers around `h q / k` can qualify.
    pub fn cover(&self, h: i64, k: i64) -> Result<Vec<(i64, i64)>> {
        if k <= 0 || h < 0 || h > k {
            return Err(invalid(format!("cover: need 0 <= h <= k, k > 0, got h={h} k={k}")));
        }
        if gcd(h, k) != 1 {
            return Err(invalid(format!("cover: gcd({h}, {k}) != 1")));
        }
        let mut out = Vec::new();
        let (hi128, ki128, q1) = (h as i128, k as i128, self.q1 as i128);
        for q in 1..=self.q1 {
            let qq = q as i128;
            let base = (hi128 * qq).div_euclid(ki128) as i64;
            for a in [base, base + 1] {
                if !(0..=q).contains(&a) || gcd(a, q) != 1 {
                    continue;
                }
                if (hi128 * qq - a as i128 * ki128).abs() * q1 < ki128 {
                    out.push((a, q));
                }
            }
        }
        Ok(out)
    }

    /// Smallest-q interval containing `h/k` (the dissection assignment used
    /// by the approximation sweeps).
    pub fn assign(&self, h: i64, k: i64) -> Result<(i64, i64)> {
        let cover = self.cover(h, k)?;
        cover.first().copied().ok_or_else(|| {
            invalid(format!("dissection q1={} does not cover {h}/{k}", self.q1))
        })
    }

    /// Exact pairwise disjointness of the sub-family with `q <= q_cap`,
    /// checked on sorted endpoints (open intervals may touch).
    pub fn subfamily_disjoint(&self, q_cap: i64) -> bool {
        let mut sub: Vec<&FareyInterval> =
            self.intervals.iter().filter(|iv| iv.q <= q_cap).collect();
        sub.sort_by(|x, y| x.lo.cmp(&y.lo));
        sub.windows(2).all(|w| w[0].hi <= w[1].lo)
    }
}

/// Coverage report for all reduced fractions with denominator `k`:
/// (min multiplicity, max multiplicity). Parallel over `h`.
pub fn coverage_stats(d: &Dissection, k: i64) -> Result<(usize, usize)> {
    let hs: Vec<i64> = (0..=k).filter(|&h| gcd(h, k) == 1).collect();
    let counts: Vec<usize> = hs
        .par_iter()
        .map(|&h| d.cover(h, k).map(|c| c.len()))
        .collect::<Result<_>>()?;
    let min = counts.iter().copied().min().unwrap_or(0);
    let max = counts.iter().copied().max().unwrap_or(0);
    Ok((min, max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::totient;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn approx_eps_examples() {
        assert_eq!(approx_eps(1, 7, 0, 1), 1);
        assert_eq!(approx_eps(3, 7, 1, 2), -1);
        assert_eq!(approx_eps(3, 7, 3, 7), 0);
        let t = ApproxTriple::new(3, 7, 1, 2).unwrap();
        assert_eq!((t.a, t.q, t.eps), (1, 2, -1));
        assert!(ApproxTriple::new(3, 7, 2, 4).is_err());
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_approx(&rat(1, 2), &rat(3, 1)).unwrap(), (1, 2));
        assert_eq!(dirichlet_approx(&rat(5, 7), &rat(2, 1)).unwrap(), (1, 1));
        for (h, k) in [(3i64, 7i64), (1, 9), (8, 13)] {
            for cap in [k, k + 1, 3 * k] {
                assert_eq!(
                    dirichlet_approx(&rat(h, k), &rat(cap, 1)).unwrap(),
                    (h, k),
                    "h={h} k={k} cap={cap}"
                );
            }
        }
        assert_eq!(dirichlet_approx(&Rational::zero(), &rat(5, 1)).unwrap(), (0, 1));
        assert_eq!(dirichlet_approx(&Rational::one(), &rat(5, 1)).unwrap(), (1, 1));
        assert!(dirichlet_approx(&rat(1, 2), &Rational::one()).is_err());
        assert!(dirichlet_approx(&rat(3, 2), &rat(5, 1)).is_err());
    }

    #[test]
    fn dirichlet_posted_inequality() {
        for r in 1..=60i64 {
            for p in 0..=r {
                if gcd(p, r) != 1 {
                    continue;
                }
                let alpha = rat(p, r);
                for cap_num in [2i64, 3, 7, 10, 25] {
                    let cap = rat(cap_num, 1);
                    let (a, q) = dirichlet_approx(&alpha, &cap).unwrap();
                    assert!(q >= 1 && q <= cap_num && (0..=q).contains(&a));
                    assert_eq!(gcd(a, q), 1);
                    assert!(witness_ok(&alpha, &cap, a, q), "{p}/{r} cap={cap_num}");
                }
            }
        }
    }

    #[test]
    fn scan_and_convergent_routes_agree() {
        // includes non-integer caps
        let caps: Vec<Rational> = (2..=50)
            .map(|n| rat(n, 1))
            .chain([rat(3, 2), rat(7, 2), rat(99, 2)])
            .collect();
        for r in 1..=200i64 {
            for p in 0..=r {
                if gcd(p, r) != 1 {
                    continue;
                }
                let alpha = rat(p, r);
                for cap in &caps {
                    let s = approx_by_scan(&alpha, cap);
                    let c = approx_by_convergents(&alpha, cap);
                    assert_eq!(s, c, "alpha={p}/{r} cap={cap}");
                    assert!(s.is_some());
                }
            }
        }
    }

    #[test]
    fn main_term_examples() {
        assert_eq!(lemma_main_term(11, 4, 0), Rational::zero());
        assert_eq!(lemma_main_term(7, 2, -1), rat(-7, 24));
        for k in [5i64, 12, 100] {
            assert_eq!(lemma_main_term(k, 1, 1), rat(k, 12));
        }
    }

    #[test]
    fn approx_error_examples() {
        // eps = 0: error is s(a, q) itself
        for (a, q) in [(1i64, 3i64), (3, 7), (2, 9)] {
            assert_eq!(
                approx_error(a, q, a, q).unwrap(),
                dedekind_fast(a, q).unwrap()
            );
        }
        assert_eq!(approx_error(3, 7, 1, 2).unwrap(), rat(37, 168));
        for k in [10i64, 37, 101] {
            assert_eq!(
                approx_error(1, k, 0, 1).unwrap(),
                rat(-(3 * k - 2), 12 * k)
            );
        }
        // |eps| > k/q violates the side condition
        assert!(approx_error(1, 2, 1, 5).is_err());
    }

    #[test]
    fn lemma8_bound_examples() {
        assert!(lemma8_bound_check(3, 7, 3, 7, &Rational::one()).unwrap());
        assert!(lemma8_bound_check(3, 7, 1, 2, &Rational::one()).unwrap());
    }

    #[test]
    fn dissection_small() {
        let d = build_dissection(2).unwrap();
        let fracs: Vec<(i64, i64)> = d.intervals().iter().map(|iv| (iv.a, iv.q)).collect();
        assert_eq!(fracs, vec![(0, 1), (1, 1), (1, 2)]);
        let d3 = build_dissection(3).unwrap();
        let fracs3: Vec<(i64, i64)> = d3.intervals().iter().map(|iv| (iv.a, iv.q)).collect();
        assert_eq!(fracs3, vec![(0, 1), (1, 1), (1, 2), (1, 3), (2, 3)]);
        assert!(build_dissection(1).is_err());
    }

    #[test]
    fn dissection_count_is_farey_count() {
        for q1 in 2..=60i64 {
            let d = build_dissection(q1).unwrap();
            let expected: i64 = 1 + (1..=q1).map(totient).sum::<i64>();
            assert_eq!(d.len() as i64, expected, "q1={q1}");
        }
    }

    #[test]
    fn cover_examples() {
        let d = build_dissection(5).unwrap();
        // center of its own interval
        for iv in d.intervals() {
            let c = d.cover(iv.a, iv.q).unwrap();
            assert!(c.contains(&(iv.a, iv.q)));
        }
        // 1/k for k >> q1 is reached only by the interval at 0/1
        for k in [11i64, 101, 997] {
            assert_eq!(d.cover(1, k).unwrap(), vec![(0, 1)]);
        }
    }

    #[test]
    fn endpoints_interval_bounds() {
        let d = build_dissection(4).unwrap();
        let first = &d.intervals()[0];
        assert_eq!((first.a, first.q), (0, 1));
        assert_eq!(first.lo, rat(-1, 4));
        assert_eq!(first.hi, rat(1, 4));
    }
}
