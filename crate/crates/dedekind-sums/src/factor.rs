//! Trial-division factorization and small prime utilities.
//!
//! Everything here targets desk scale (arguments up to ~10^12); no
//! probabilistic primality machinery.

use num_bigint::BigInt;
use num_traits::One;

/// Prime factorization by trial division, smallest prime first.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primality by trial division.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3i64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Euler totient.
pub fn totient(n: i64) -> i64 {
    assert!(n >= 1);
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi -= phi / p;
    }
    phi
}

/// Sieve of all primes up to `n` inclusive.
pub fn primes_up_to(n: i64) -> Vec<i64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            out.push(p as i64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    out
}

/// Divisor-count sieve: result[n] = d(n) for 1 <= n <= nmax (result[0] unused).
pub fn divisor_count_sieve(nmax: usize) -> Vec<u32> {
    let mut d = vec![0u32; nmax + 1];
    for i in 1..=nmax {
        let mut j = i;
        while j <= nmax {
            d[j] += 1;
            j += i;
        }
    }
    d
}

/// lcm(1..=n) as a big integer: the product of p^floor(log_p n) over primes p <= n.
pub fn lcm_up_to(n: i64) -> BigInt {
    let mut l = BigInt::one();
    for p in primes_up_to(n) {
        let mut pk = p;
        while pk <= n / p {
            pk *= p;
        }
        l *= BigInt::from(pk);
    }
    l
}

/// Floor of the k-th root of n.
pub fn int_root(n: u128, k: u32) -> u128 {
    assert!(k >= 1);
    if n <= 1 || k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u128;
    // float seed can be off by one in either direction
    while r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        for n in 1..500i64 {
            let product: i64 = factorize(n).iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(product, n);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(100003));
        assert!(!is_prime(100001));
        assert!(!is_prime(1));
    }

    #[test]
    fn totient_matches_definition() {
        for n in 1..200i64 {
            let direct = (1..=n).filter(|a| num_integer::gcd(*a, n) == 1).count() as i64;
            assert_eq!(totient(n), direct, "phi({n})");
        }
    }

    #[test]
    fn int_root_exact_boundaries() {
        assert_eq!(int_root(0, 5), 0);
        assert_eq!(int_root(1, 5), 1);
        assert_eq!(int_root(31, 5), 1);
        assert_eq!(int_root(32, 5), 2);
        assert_eq!(int_root(5003u128.pow(3), 5), 165);
        for n in 0..1000u128 {
            let r = int_root(n, 2);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }

    #[test]
    fn lcm_small() {
        assert_eq!(lcm_up_to(1), BigInt::from(1));
        assert_eq!(lcm_up_to(10), BigInt::from(2520));
    }
}
