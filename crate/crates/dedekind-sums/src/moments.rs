//! Exact 2m-th moments of Dedekind sums, their main terms for prime and
//! composite modulus, the multiplicative coefficient `f_m` with its
//! truncated triple-sum oracle, the distribution histogram of
//! `s(h,k)/log k`, and the partial-quotient growth ladder.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cf::{cf_expand, cf_partial_quotient_sum};
use crate::constants::moment_constant;
use crate::dedekind::dedekind_fast;
use crate::error::{contract, invalid, Result};
use crate::factor::{factorize, is_prime};
use crate::rational::{gcd, Rational};
use crate::real::DDouble;

/// Exact moment `sum_{1 <= h <= k, gcd(h,k) = 1} s(h,k)^(2m)`.
///
/// For prime `k` this coincides with the sum over all `h = 1..k-1`.
/// Data parallel over `h`; rational addition commutes, so the result is
/// identical for every worker count.
pub fn moment(k: i64, m: u32) -> Result<Rational> {
    if k < 2 || m < 1 {
        return Err(invalid(format!("moment: need k >= 2 and m >= 1, got k={k} m={m}")));
    }
    (1..k)
        .into_par_iter()
        .filter(|&h| gcd(h, k) == 1)
        .map(|h| Ok(dedekind_fast(h, k)?.pow(2 * m)))
        .try_reduce(Rational::zero, |a, b| Ok(a + b))
}

/// Prime-modulus main term `2 zeta(2m)^2/zeta(4m) * (k/12)^(2m)`.
pub fn main_term_prime(k: i64, m: u32) -> Rational {
    moment_constant(m) * Rational::new(k, 12).pow(2 * m)
}

/// Local factor of the multiplicative function `g_m` at `p^e`, where
/// `sum g_m(k)/k^s = zeta(s) zeta(s+4m-1) / zeta(s+2m)^2`.
///
/// Reading off Euler factors: zeta(s) contributes 1 at `p^i`,
/// zeta(s+4m-1) contributes `p^(j(1-4m))` at `p^j`, and `1/zeta(s+2m)^2`
/// contributes `(mu * mu)(p^l) p^(-2ml)` at `p^l` with
/// `(mu * mu)(1, p, p^2, ...) = 1, -2, 1, 0, ...`. Convolving over
/// `i + j + l = e`:
///
/// `g_m(p^e) = sum_{j + l <= e, l <= 2} c_l * p^(j(1-4m) - 2ml)`,
/// `c = (1, -2, 1)`.
fn local_factor(p: i64, e: u32, m: u32) -> Rational {
    let mut acc = Rational::zero();
    let coeff = [1i64, -2, 1];
    for l in 0..=2u32.min(e) {
        for j in 0..=(e - l) {
            let exp = j * (4 * m - 1) + 2 * m * l;
            acc += &Rational::new(coeff[l as usize], BigInt::from(p).pow(exp));
        }
    }
    acc
}

/// `f_m(k)`: the composite-modulus moment coefficient,
/// `moment_constant(m) * prod_{p^e || k} g_m(p^e)`, exactly.
pub fn fm(k: i64, m: u32) -> Result<Rational> {
    if k < 1 || m < 1 {
        return Err(invalid(format!("fm: need k >= 1 and m >= 1, got k={k} m={m}")));
    }
    let mut value = moment_constant(m);
    for (p, e) in factorize(k) {
        value = value * local_factor(p, e, m);
    }
    Ok(value)
}

/// Result of the truncated triple-sum evaluation of `f_m(k)`.
#[derive(Debug, Clone, Copy)]
pub struct FmOracle {
    /// Truncated sum in ~106-bit double-double arithmetic.
    pub value: DDouble,
    /// Rigorous bound on the discarded tail; the comparison tolerance.
    pub tail_bound: f64,
    pub qmax: i64,
    pub hmax: i64,
    /// Number of excluded aligned terms (`q = k`, `h = a`); `phi(k)` when
    /// `qmax >= k`, else 0.
    pub excluded: u64,
}

/// Direct numerical evaluation of the triple sum
/// `f_m(k) = sum_q q^(-2m) sum_{(a,q)=1} sum_{(h,k)=1} (hq - ak)^(-2m)`
/// truncated to `q <= qmax`, `|h| <= hmax`.
///
/// Independent of the multiplicative route in [`fm`]; used to validate the
/// local coefficients. A vanishing denominator `hq = ak` forces the reduced
/// fractions `h/k` and `a/q` to coincide, which happens exactly at `q = k`,
/// `h = a`; those aligned terms are excluded and counted. Any other zero
/// denominator is a bookkeeping bug and errors out.
///
/// Tail bound (all discarded terms are positive):
/// - `q > qmax`: the inner double sum is at most `2 zeta(2m)`, so the tail
///   is below `2 zeta(2m) (qmax^(-2m) + qmax^(1-2m)/(2m-1))`.
/// - `|h| > hmax`, `q <= qmax`: from `|hq - ak| >= q(|h| - k)` and
///   `phi(q) <= q`, the tail is below
///   `2 zeta(4m-1) ((hmax-k)^(-2m) + (hmax-k)^(1-2m)/(2m-1))`.
pub fn fm_oracle(k: i64, m: u32, qmax: i64, hmax: i64) -> Result<FmOracle> {
    if k < 1 || m < 1 {
        return Err(invalid("fm_oracle: need k >= 1 and m >= 1"));
    }
    if qmax < 2 || hmax < 2 * k {
        return Err(invalid(format!(
            "fm_oracle: need qmax >= 2 and hmax >= 2k for the documented tail bound, got qmax={qmax} hmax={hmax}"
        )));
    }
    // per-q partial sums computed in parallel, folded in q order so the
    // float accumulation order is independent of the worker count
    let partials: Vec<Result<(DDouble, u64)>> = (1..=qmax)
        .into_par_iter()
        .map(|q| {
            let mut acc = DDouble::ZERO;
            let mut excluded = 0u64;
            for a in 1..=q {
                if gcd(a, q) != 1 {
                    continue;
                }
                for h in -hmax..=hmax {
                    if gcd(h, k) != 1 {
                        continue;
                    }
                    let eps = h as i128 * q as i128 - a as i128 * k as i128;
                    if eps == 0 {
                        if q == k && h == a {
                            excluded += 1;
                            continue;
                        }
                        return Err(contract(format!(
                            "fm_oracle: unexpected vanishing denominator at q={q} a={a} h={h} k={k}"
                        )));
                    }
                    let e2m = match m {
                        1 => eps * eps,
                        _ => (eps * eps).pow(m),
                    };
                    acc = acc + DDouble::from_i128(e2m).recip();
                }
            }
            let q2m = DDouble::from_i128((q as i128).pow(2 * m));
            Ok((acc / q2m, excluded))
        })
        .collect();

    let mut value = DDouble::ZERO;
    let mut excluded = 0u64;
    for p in partials {
        let (v, e) = p?;
        value = value + v;
        excluded += e;
    }

    let zeta_2m = if m == 1 { 1.644_934_1 } else { 1.082_323_3 };
    let zeta_4m1 = if m == 1 { 1.202_056_91 } else { 1.008_349_28 };
    let s = 2.0 * m as f64;
    let qt = qmax as f64;
    let ht = (hmax - k) as f64;
    let tail_bound = 2.0 * zeta_2m * (qt.powf(-s) + qt.powf(1.0 - s) / (s - 1.0))
        + 2.0 * zeta_4m1 * (ht.powf(-s) + ht.powf(1.0 - s) / (s - 1.0));

    Ok(FmOracle { value, tail_bound, qmax, hmax, excluded })
}

/// Verification record for one modulus: exact moment, exact main term,
/// and their ratio.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub k: i64,
    pub m: u32,
    pub moment: Rational,
    pub main_term: Rational,
    /// `moment / main_term` as an exact decimal expansion (24 significant
    /// digits); everything upstream of this division is exact.
    pub ratio: String,
}

impl MomentReport {
    /// `|moment/main_term - 1|`, exact.
    pub fn deviation(&self) -> Rational {
        (&(&self.moment - &self.main_term) / &self.main_term).abs()
    }
}

/// Compute the moment report for `k >= 2`: the main term uses the prime
/// constant for prime `k` and `f_m(k) (k/12)^(2m)` otherwise.
pub fn moment_report(k: i64, m: u32) -> Result<MomentReport> {
    let moment = moment(k, m)?;
    let main_term = if is_prime(k) {
        main_term_prime(k, m)
    } else {
        fm(k, m)? * Rational::new(k, 12).pow(2 * m)
    };
    let ratio = (&moment / &main_term).to_decimal(24);
    Ok(MomentReport { k, m, moment, main_term, ratio })
}

/// Histogram of `s(h,k)/log k` over all reduced fractions with
/// `2 <= k <= kmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VardiHistogram {
    pub bins: i64,
    pub bound: Rational,
    /// `cells[0]` counts `(-inf, -bound]`, `cells[bins + 1]` counts
    /// `[bound, inf)`, the rest are the equal-width interior bins.
    pub cells: Vec<u64>,
}

impl VardiHistogram {
    /// Exact rational bounds of cell `i`; `None` marks an infinite side.
    pub fn cell_bounds(&self, i: usize) -> (Option<Rational>, Option<Rational>) {
        let width = Rational::from_integer(2) * self.bound.clone() / Rational::from_integer(self.bins);
        let half = (self.bins - 1) / 2;
        if i == 0 {
            return (None, Some(-self.bound.clone()));
        }
        if i == self.cells.len() - 1 {
            return (Some(self.bound.clone()), None);
        }
        let j = i as i64 - 1 - half; // signed bin index, 0 = centered at 0
        let lo = &Rational::new(2 * j - 1, 2) * &width;
        let hi = &Rational::new(2 * j + 1, 2) * &width;
        (Some(lo), Some(hi))
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    /// Fraction of samples in cells whose |center| exceeds cell `i`'s,
    /// i.e. the two-sided tail count outward of cell distance `t`.
    pub fn tail_count(&self, distance: i64) -> u64 {
        let half = (self.bins - 1) / 2;
        let mut n = 0;
        for (i, &c) in self.cells.iter().enumerate() {
            let d = if i == 0 || i == self.cells.len() - 1 {
                half + 1
            } else {
                (i as i64 - 1 - half).abs()
            };
            if d >= distance {
                n += c;
            }
        }
        n
    }
}

/// Build the histogram. `bins` must be odd (one bin is centered at zero)
/// and `bound > 0`. Samples land in bin `round(x / width)` computed from
/// their exact values, so the antisymmetry `s(k-h, k) = -s(h, k)` makes the
/// histogram mirror-exact.
pub fn vardi_histogram(kmax: i64, bins: i64, bound: &Rational) -> Result<VardiHistogram> {
    if kmax < 2 {
        return Err(invalid("vardi_histogram: need kmax >= 2"));
    }
    if bins < 3 || bins % 2 == 0 {
        return Err(invalid(format!("vardi_histogram: bins must be odd and >= 3, got {bins}")));
    }
    if bound.is_zero() || bound.is_negative() {
        return Err(invalid("vardi_histogram: bound must be positive"));
    }
    let half = (bins - 1) / 2;
    let width = (Rational::from_integer(2) * bound.clone() / Rational::from_integer(bins)).to_f64();
    let ncells = bins as usize + 2;

    let cells = (2..=kmax)
        .into_par_iter()
        .map(|k| {
            let mut local = vec![0u64; ncells];
            let logk = (k as f64).ln();
            for h in 1..k {
                if gcd(h, k) != 1 {
                    continue;
                }
                let x = dedekind_fast(h, k).expect("k >= 2").to_f64() / logk;
                let j = (x.abs() / width + 0.5).floor() as i64;
                let idx = if j > half {
                    if x < 0.0 { 0 } else { ncells - 1 }
                } else {
                    (half + 1 + if x < 0.0 { -j } else { j }) as usize
                };
                local[idx] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; ncells],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    Ok(VardiHistogram { bins, bound: bound.clone(), cells })
}

/// One rung of the growth ladder: both sums over reduced `a/q` against the
/// comparator `q log^2 q`.
#[derive(Debug, Clone)]
pub struct GrowthRow {
    pub q: i64,
    /// `sum N(a, q)`: total of all partial quotients.
    pub partial_quotient_sum: i64,
    /// `sum |s(a, q)|`, exact.
    pub abs_dedekind_sum: Rational,
    /// `q log^2 q`.
    pub comparator: f64,
}

impl GrowthRow {
    pub fn quotient_ratio(&self) -> f64 {
        self.partial_quotient_sum as f64 / self.comparator
    }

    pub fn dedekind_ratio(&self) -> f64 {
        self.abs_dedekind_sum.to_f64() / self.comparator
    }
}

/// Sums over the geometric ladder `q = 4, 8, 16, ..., <= qmax`. Both
/// ratios against `q log^2 q` stay bounded along the ladder.
pub fn growth_check(qmax: i64) -> Result<Vec<GrowthRow>> {
    if qmax < 4 {
        return Err(invalid("growth_check: need qmax >= 4"));
    }
    let mut rungs = Vec::new();
    let mut q = 4i64;
    while q <= qmax {
        rungs.push(q);
        q *= 2;
    }
    rungs
        .into_iter()
        .map(|q| {
            let (nsum, ssum) = (1..=q)
                .into_par_iter()
                .filter(|&a| gcd(a, q) == 1)
                .map(|a| {
                    let n = cf_partial_quotient_sum(&cf_expand(a, q).expect("reduced"));
                    let s = dedekind_fast(a, q).expect("q >= 1").abs();
                    (n, s)
                })
                .reduce(
                    || (0i64, Rational::zero()),
                    |(n1, s1), (n2, s2)| (n1 + n2, s1 + s2),
                );
            let lq = (q as f64).ln();
            Ok(GrowthRow {
                q,
                partial_quotient_sum: nsum,
                abs_dedekind_sum: ssum,
                comparator: q as f64 * lq * lq,
            })
        })
        .collect()
}
