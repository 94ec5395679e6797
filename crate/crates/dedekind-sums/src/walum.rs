//! Dirichlet characters modulo a prime, `L(1, chi)` by two independent
//! numerical routes, and the Walum identity linking the fourth moment of
//! `L(1, chi)` over odd characters to the second moment of Dedekind sums:
//!
//! `sum_{chi odd} |L(1, chi)|^4 = pi^4 (k-1)/k^2 * sum_h s(h, k)^2`.
//!
//! The right-hand side is kept exact (a rational multiple of pi^4), so the
//! check isolates all floating error on the L-function side.

use astro_float::{BigFloat, Consts};
use rayon::prelude::*;

use crate::constants::{bernoulli, zeta_even};
use crate::error::{contract, invalid, Result};
use crate::factor::{factorize, is_prime};
use crate::moments::moment;
use crate::rational::Rational;
use crate::real::{bigfloat_to_f64, rational_to_bigfloat, Cx, PREC, RM};

/// Periods of the L-series summed literally before tail correction.
const SERIES_PERIODS: i64 = 2;
/// The digamma asymptotic expansion is applied at argument >= this.
const ASYM_START: i64 = 32;
/// Number of Bernoulli terms in the digamma asymptotic series.
const ASYM_TERMS: u32 = 20;
/// Required relative agreement between the two L(1, chi) routes.
const TWO_METHOD_RTOL: f64 = 1e-10;

/// Character table modulo a prime `k`, with the precomputed weight vectors
/// used by both `L(1, chi)` evaluation routes.
///
/// Characters are indexed by `j` in `0..k-1`:
/// `chi_j(a) = e^(2 pi i j ind(a) / (k-1))` with `ind` the discrete
/// logarithm base the stored primitive root. `chi_j` is odd exactly when
/// `j` is odd, so there are `(k-1)/2` odd characters.
pub struct CharacterTable {
    k: i64,
    generator: i64,
    order: i64,
    /// discrete logarithm: `ind[a]` for `1 <= a <= k-1` (slot 0 unused)
    ind: Vec<i64>,
    /// `e^(2 pi i t / (k-1))` for `t = 0..k-2`
    roots: Vec<Cx>,
    /// series + asymptotic-digamma weights (route i)
    weight_series: Vec<BigFloat>,
    /// Gauss finite-form digamma weights (route ii)
    weight_gauss: Vec<BigFloat>,
}

/// Build the table for prime `k >= 3`.
pub fn build_characters(k: i64) -> Result<CharacterTable> {
    if k < 3 || !is_prime(k) {
        return Err(invalid(format!(
            "build_characters: modulus {k} must be an odd prime (primitive root required)"
        )));
    }
    let order = k - 1;
    let generator = primitive_root(k)?;
    let mut ind = vec![0i64; k as usize];
    let mut pow = 1i64;
    for t in 0..order {
        ind[pow as usize] = t;
        pow = mulmod(pow, generator, k);
    }

    let p = PREC;
    let mut cc = Consts::new().map_err(|e| contract(format!("astro consts: {e:?}")))?;
    let pi = cc.pi(p, RM);
    let two_pi = pi.mul(&BigFloat::from_i64(2, p), p, RM);
    let kf = BigFloat::from_i64(k, p);

    let roots: Vec<Cx> = (0..order)
        .map(|t| {
            let angle = two_pi
                .mul(&BigFloat::from_i64(t, p), p, RM)
                .div(&BigFloat::from_i64(order, p), p, RM);
            Cx { re: angle.cos(p, RM, &mut cc), im: angle.sin(p, RM, &mut cc) }
        })
        .collect();

    // shared trig tables over denominator k
    let half = k / 2; // ceil(k/2) - 1 for odd k
    let cos2pi: Vec<BigFloat> = (0..k)
        .map(|j| {
            two_pi
                .mul(&BigFloat::from_i64(j, p), p, RM)
                .div(&kf, p, RM)
                .cos(p, RM, &mut cc)
        })
        .collect();
    let ln_sin: Vec<BigFloat> = (0..=half)
        .map(|n| {
            if n == 0 {
                return BigFloat::from_i64(0, p); // unused slot
            }
            pi.mul(&BigFloat::from_i64(n, p), p, RM)
                .div(&kf, p, RM)
                .sin(p, RM, &mut cc)
                .ln(p, RM, &mut cc)
        })
        .collect();
    let half_pi = pi.div(&BigFloat::from_i64(2, p), p, RM);

    // route (ii): Gauss's finite form for psi(r/k), constant part dropped
    // (it cancels against sum chi(r) = 0):
    //   -(pi/2) cot(pi r / k) + 2 sum_{n=1}^{(k-1)/2} cos(2 pi n r / k) ln sin(pi n / k)
    // weight_gauss[r] = -psi_gauss(r/k) / k
    let weight_gauss: Vec<BigFloat> = (0..k)
        .map(|r| {
            if r == 0 {
                return BigFloat::from_i64(0, p);
            }
            let angle = pi.mul(&BigFloat::from_i64(r, p), p, RM).div(&kf, p, RM);
            let mut cc2 = Consts::new().expect("astro consts");
            let cot = angle.cos(p, RM, &mut cc2).div(&angle.sin(p, RM, &mut cc2), p, RM);
            let mut acc = half_pi.mul(&cot, p, RM).neg();
            for n in 1..=half {
                let c = &cos2pi[((n as i128 * r as i128) % k as i128) as usize];
                acc = acc.add(&BigFloat::from_i64(2, p).mul(c, p, RM).mul(&ln_sin[n as usize], p, RM), p, RM);
            }
            acc.div(&kf, p, RM).neg()
        })
        .collect();

    // route (i): truncated series over SERIES_PERIODS complete periods plus
    // the digamma tail,
    //   L = sum_r chi(r) [ sum_{m < M} 1/(mk + r) - psi(M + r/k)/k ],
    // with psi evaluated by the Bernoulli asymptotic series at argument
    // >= ASYM_START and stepped down by psi(z) = psi(z+1) - 1/z.
    let bern: Vec<BigFloat> = (1..=ASYM_TERMS)
        .map(|j| rational_to_bigfloat(&bernoulli(2 * j), p))
        .collect();
    let weight_series: Vec<BigFloat> = (0..k)
        .map(|r| {
            if r == 0 {
                return BigFloat::from_i64(0, p);
            }
            let mut cc2 = Consts::new().expect("astro consts");
            let mut acc = BigFloat::from_i64(0, p);
            for mblock in 0..SERIES_PERIODS {
                let n = BigFloat::from_i64(mblock * k + r, p);
                acc = acc.add(&n.reciprocal(p, RM), p, RM);
            }
            // psi(ASYM_START + r/k)
            let y = BigFloat::from_i64(ASYM_START, p).add(
                &BigFloat::from_i64(r, p).div(&kf, p, RM),
                p,
                RM,
            );
            let mut psi = y.ln(p, RM, &mut cc2).sub(
                &BigFloat::from_i64(2, p).mul(&y, p, RM).reciprocal(p, RM),
                p,
                RM,
            );
            let y2 = y.mul(&y, p, RM);
            let mut ypow = y2.clone();
            for (jm1, b2j) in bern.iter().enumerate() {
                let j = jm1 as i64 + 1;
                let term = b2j.div(&BigFloat::from_i64(2 * j, p).mul(&ypow, p, RM), p, RM);
                psi = psi.sub(&term, p, RM);
                ypow = ypow.mul(&y2, p, RM);
            }
            // step down to psi(SERIES_PERIODS + r/k)
            let mut z = y;
            for _ in SERIES_PERIODS..ASYM_START {
                z = z.sub(&BigFloat::from_i64(1, p), p, RM);
                psi = psi.sub(&z.reciprocal(p, RM), p, RM);
            }
            acc.sub(&psi.div(&kf, p, RM), p, RM)
        })
        .collect();

    Ok(CharacterTable {
        k,
        generator,
        order,
        ind,
        roots,
        weight_series,
        weight_gauss,
    })
}

fn mulmod(a: i64, b: i64, k: i64) -> i64 {
    ((a as i128 * b as i128) % k as i128) as i64
}

fn powmod(mut base: i64, mut e: i64, k: i64) -> i64 {
    let mut acc = 1i64;
    base %= k;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, k);
        }
        base = mulmod(base, base, k);
        e >>= 1;
    }
    acc
}

fn primitive_root(k: i64) -> Result<i64> {
    let phi = k - 1;
    let prime_factors: Vec<i64> = factorize(phi).into_iter().map(|(p, _)| p).collect();
    (2..k)
        .find(|&g| prime_factors.iter().all(|&p| powmod(g, phi / p, k) != 1))
        .ok_or_else(|| contract(format!("no primitive root mod {k}")))
}

impl CharacterTable {
    pub fn modulus(&self) -> i64 {
        self.k
    }

    pub fn generator(&self) -> i64 {
        self.generator
    }

    /// `chi_j(a)`; zero for `a` divisible by `k`.
    pub fn chi(&self, j: i64, a: i64) -> Cx {
        let a = a.rem_euclid(self.k);
        if a == 0 {
            return Cx::zero(PREC);
        }
        let t = ((j % self.order) * self.ind[a as usize]) % self.order;
        self.roots[t as usize].clone()
    }

    /// `chi_j(-1) = -1` exactly when `j` is odd.
    pub fn is_odd(&self, j: i64) -> bool {
        j.rem_euclid(2) == 1
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = i64> + '_ {
        (1..self.order).filter(|j| j % 2 == 1)
    }

    /// Indices of all nontrivial characters.
    pub fn nontrivial_indices(&self) -> std::ops::Range<i64> {
        1..self.order
    }

    /// `L(1, chi_j)` for nontrivial `chi_j`, evaluated by the two
    /// independent routes; fails if they disagree beyond 1e-10 relative.
    pub fn l_one(&self, j: i64) -> Result<Cx> {
        if j.rem_euclid(self.order) == 0 {
            return Err(invalid("l_one: the trivial character has no finite L(1) value"));
        }
        let series = self.character_sum(j, &self.weight_series);
        let gauss = self.character_sum(j, &self.weight_gauss);
        let p = PREC;
        let gap = series.sub(&gauss, p).abs_f64(p);
        let scale = gauss.abs_f64(p);
        let rel = if scale > 0.0 { gap / scale } else { gap };
        if rel.is_nan() || rel > TWO_METHOD_RTOL {
            return Err(contract(format!(
                "l_one: series and closed-form routes disagree by {rel:.3e} (mod {}, character {j})",
                self.k
            )));
        }
        Ok(gauss)
    }

    fn character_sum(&self, j: i64, weights: &[BigFloat]) -> Cx {
        let p = PREC;
        let mut acc = Cx::zero(p);
        for r in 1..self.k {
            let t = ((j % self.order) * self.ind[r as usize]) % self.order;
            acc = acc.add(&self.roots[t as usize].scale(&weights[r as usize], p), p);
        }
        acc
    }

    /// `sum_{chi odd} |L(1, chi)|^4`, accumulated in character-index order
    /// regardless of the worker count.
    fn odd_l4_sum(&self) -> Result<BigFloat> {
        let p = PREC;
        let mut fourth: Vec<(i64, BigFloat)> = self
            .odd_indices()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|j| {
                let l = self.l_one(j)?;
                let a2 = l.abs2(p);
                Ok((j, a2.mul(&a2, p, RM)))
            })
            .collect::<Result<_>>()?;
        fourth.sort_by_key(|(j, _)| *j);
        let mut acc = BigFloat::from_i64(0, p);
        for (_, v) in fourth {
            acc = acc.add(&v, p, RM);
        }
        Ok(acc)
    }
}

/// Outcome of the Walum identity check at a prime `k`.
#[derive(Debug, Clone)]
pub struct WalumReport {
    pub k: i64,
    /// Exact `(k-1)/k^2 * sum_h s(h,k)^2`; the identity states the odd
    /// fourth L-moment equals this times pi^4.
    pub rhs_over_pi4: Rational,
    pub lhs_over_pi4: f64,
    pub rel_diff: f64,
}

/// Verify the Walum identity at prime `k >= 3`.
pub fn walum_check(k: i64) -> Result<WalumReport> {
    let table = build_characters(k)?;
    let p = PREC;
    let lhs = table.odd_l4_sum()?;
    let mut cc = Consts::new().map_err(|e| contract(format!("astro consts: {e:?}")))?;
    let pi4 = cc.pi(p, RM).powi(4, p, RM);
    let lhs_over_pi4 = lhs.div(&pi4, p, RM);

    let rhs = Rational::new(k - 1, k as i128 * k as i128) * moment(k, 1)?;
    let rhs_f = rational_to_bigfloat(&rhs, p);
    let rel = lhs_over_pi4.sub(&rhs_f, p, RM).abs().div(&rhs_f, p, RM);

    Ok(WalumReport {
        k,
        rhs_over_pi4: rhs,
        lhs_over_pi4: bigfloat_to_f64(&lhs_over_pi4),
        rel_diff: bigfloat_to_f64(&rel),
    })
}

/// `[sum_{chi odd} |L(1,chi)|^4] / [(k/2) * zeta(2)^4/zeta(4) * pi^4]`,
/// the ratio that tends to 1 as the prime `k` grows. The target constant
/// is derived from the Bernoulli pipeline: `zeta(2)^4/zeta(4) = (5/72) pi^4`.
pub fn heath_brown_ratio(k: i64) -> Result<f64> {
    let report = walum_check(k)?;
    let target = zeta_even(1).pow(4).div(&zeta_even(2))?;
    debug_assert_eq!(target.power, 4);
    let denom = Rational::new(k, 2) * target.coeff;
    Ok(report.lhs_over_pi4 / denom.to_f64())
}
