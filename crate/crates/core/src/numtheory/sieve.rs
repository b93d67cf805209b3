use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Roots;

pub const DEFAULT_SIEVE_LIMIT: usize = 1_000_000;
/// Tables are never extended past this bound; larger arguments use the
/// table-free algorithms below.
pub const MAX_SIEVE_LIMIT: usize = 1 << 23;

/// Smallest-prime-factor, totient, totient-prefix and prime-count tables
/// over `0..=limit`.
///
/// `spf[1] == 1`, `phi[1] == 1`, index 0 is padding.
#[derive(Debug)]
pub struct SieveCache {
    limit: usize,
    spf: Vec<u32>,
    phi: Vec<u32>,
    phi_sum: Vec<u64>,
    pi: Vec<u32>,
}

impl SieveCache {
    /// Linear sieve up to `limit` (inclusive).
    pub fn new(limit: usize) -> Self {
        let limit = limit.max(2);
        let mut spf = vec![0u32; limit + 1];
        let mut phi = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        spf[1] = 1;
        phi[1] = 1;
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                phi[i] = (i - 1) as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let ip = i * p as usize;
                if p > si || ip > limit {
                    break;
                }
                spf[ip] = p;
                phi[ip] = if p == si { phi[i] * p } else { phi[i] * (p - 1) };
            }
        }
        let mut phi_sum = vec![0u64; limit + 1];
        let mut pi = vec![0u32; limit + 1];
        for i in 1..=limit {
            phi_sum[i] = phi_sum[i - 1] + phi[i] as u64;
            pi[i] = pi[i - 1] + u32::from(i >= 2 && spf[i] as usize == i);
        }
        SieveCache { limit, spf, phi, phi_sum, pi }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn covers(&self, n: u64) -> bool {
        n <= self.limit as u64
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    pub fn phi_sum(&self, n: u64) -> u64 {
        self.phi_sum[n as usize]
    }

    pub fn pi(&self, n: u64) -> u64 {
        self.pi[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }
}

fn global() -> &'static RwLock<Arc<SieveCache>> {
    static TABLES: OnceLock<RwLock<Arc<SieveCache>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(Arc::new(SieveCache::new(DEFAULT_SIEVE_LIMIT))))
}

/// Shared tables covering `n` when `n <= MAX_SIEVE_LIMIT`, otherwise the
/// largest tables available. Extension doubles the limit and swaps in a
/// complete new table, so readers holding the old `Arc` are unaffected.
pub fn sieve_tables(n: u64) -> Arc<SieveCache> {
    let want = n.min(MAX_SIEVE_LIMIT as u64) as usize;
    {
        let current = global().read().unwrap_or_else(|e| e.into_inner());
        if current.limit >= want {
            return Arc::clone(&current);
        }
    }
    let mut slot = global().write().unwrap_or_else(|e| e.into_inner());
    if slot.limit < want {
        let mut limit = slot.limit;
        while limit < want {
            limit = (limit * 2).min(MAX_SIEVE_LIMIT);
        }
        *slot = Arc::new(SieveCache::new(limit));
    }
    Arc::clone(&slot)
}

/// Deterministic trial division; independent of the sieve tables.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

pub fn is_prime(n: u64) -> bool {
    if n <= MAX_SIEVE_LIMIT as u64 {
        sieve_tables(n).is_prime(n)
    } else {
        is_prime_trial(n)
    }
}

/// Euler's totient. `euler_phi(0)` is defined as 0.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    if n <= MAX_SIEVE_LIMIT as u64 {
        return sieve_tables(n).phi(n);
    }
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Totient summatory function `Φ(n) = φ(1) + … + φ(n)`; `Φ(0) = 0`.
pub fn totient_summatory(n: u64) -> u128 {
    if n <= MAX_SIEVE_LIMIT as u64 {
        return sieve_tables(n).phi_sum(n) as u128;
    }
    // Φ(n) = n(n+1)/2 − Σ_{d≥2} Φ(⌊n/d⌋), grouped by equal quotients.
    let small_limit = (n.cbrt().pow(2)).clamp(DEFAULT_SIEVE_LIMIT as u64, MAX_SIEVE_LIMIT as u64);
    let tables = sieve_tables(small_limit);
    let mut memo: HashMap<u64, u128> = HashMap::new();
    phi_sum_large(n, &tables, &mut memo)
}

fn phi_sum_large(n: u64, tables: &SieveCache, memo: &mut HashMap<u64, u128>) -> u128 {
    if tables.covers(n) {
        return tables.phi_sum(n) as u128;
    }
    if let Some(&v) = memo.get(&n) {
        return v;
    }
    let nn = n as u128;
    let mut total = nn * (nn + 1) / 2;
    let mut d = 2u64;
    while d <= n {
        let q = n / d;
        let d_end = n / q;
        total -= (d_end - d + 1) as u128 * phi_sum_large(q, tables, memo);
        d = d_end + 1;
    }
    memo.insert(n, total);
    total
}

/// Number of primes `<= n`.
pub fn prime_pi(n: u64) -> u64 {
    if n <= MAX_SIEVE_LIMIT as u64 {
        return sieve_tables(n).pi(n);
    }
    lucy_prime_count(n)
}

/// Lucy's prime-counting recursion over the distinct values of `⌊n/i⌋`.
fn lucy_prime_count(n: u64) -> u64 {
    let r = n.sqrt();
    // small[v] = S(v) for v <= r, large[i] = S(n / i) for i <= r.
    let mut small: Vec<u64> = (0..=r).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=r).map(|i| n.checked_div(i).map_or(0, |q| q - 1)).collect();
    for p in 2..=r {
        if small[p as usize] == small[p as usize - 1] {
            continue;
        }
        let below = small[p as usize - 1];
        let p2 = p * p;
        let i_max = r.min(n / p2);
        for i in 1..=i_max {
            let d = i * p;
            let s = if d <= r { large[d as usize] } else { small[(n / d) as usize] };
            large[i as usize] -= s - below;
        }
        if p2 <= r {
            for v in (p2..=r).rev() {
                small[v as usize] -= small[(v / p) as usize] - below;
            }
        }
    }
    large[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| crate::numtheory::gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(7), 6);
        let chi: Vec<u64> = (1..=8).map(euler_phi).collect();
        assert_eq!(chi, vec![1, 1, 2, 2, 4, 2, 6, 4]);
        for n in 1..300 {
            assert_eq!(euler_phi(n), brute_phi(n), "phi({n})");
        }
    }

    #[test]
    fn totient_sum_examples() {
        assert_eq!(totient_summatory(1), 1);
        assert_eq!(totient_summatory(5), 10);
        assert_eq!(totient_summatory(9), 28);
        let sigma: Vec<u128> = (1..=9).map(totient_summatory).collect();
        assert_eq!(sigma, vec![1, 2, 4, 6, 10, 12, 18, 22, 28]);
    }

    #[test]
    fn prime_pi_examples() {
        assert_eq!(prime_pi(1), 0);
        assert_eq!(prime_pi(10), 4);
        assert_eq!(prime_pi(113), 30);
        let brute = (1..=113).filter(|&k| is_prime_trial(k)).count() as u64;
        assert_eq!(brute, 30);
    }

    #[test]
    fn sigma_consistency_to_1e5() {
        for n in 2..=100_000u64 {
            assert_eq!(totient_summatory(n) - totient_summatory(n - 1), euler_phi(n) as u128);
        }
    }

    #[test]
    fn tables_are_mutually_consistent() {
        let t = SieveCache::new(5000);
        for n in 2..=5000u64 {
            // phi multiplicative from the factorisation
            let mut m = n;
            let mut phi = 1u64;
            while m > 1 {
                let p = t.smallest_prime_factor(m);
                let mut pk = 1;
                while m % p == 0 {
                    m /= p;
                    pk *= p;
                }
                phi *= pk - pk / p;
            }
            assert_eq!(t.phi(n), phi);
            let jump = t.pi(n) - t.pi(n - 1);
            assert_eq!(jump == 1, is_prime_trial(n));
            assert!(jump <= 1);
        }
    }

    #[test]
    fn large_argument_paths_match_tables() {
        let t = SieveCache::new(200_000);
        let mut memo = HashMap::new();
        let small = SieveCache::new(1000);
        for n in [1001u64, 5000, 77_777, 199_999] {
            assert_eq!(phi_sum_large(n, &small, &mut memo), t.phi_sum(n) as u128, "Φ({n})");
            assert_eq!(lucy_prime_count(n), t.pi(n), "π({n})");
        }
        // Beyond the tables: π(10^10) and Φ(10^9) are classical values.
        assert_eq!(prime_pi(10_000_000_000), 455_052_511);
        assert_eq!(totient_summatory(1_000_000_000), 303_963_551_173_008_414);
        assert_eq!(euler_phi(MAX_SIEVE_LIMIT as u64 + 1), brute_phi_fast(MAX_SIEVE_LIMIT as u64 + 1));
    }

    fn brute_phi_fast(n: u64) -> u64 {
        let mut result = 0;
        for k in 1..=n {
            if crate::numtheory::gcd(k, n) == 1 {
                result += 1;
            }
        }
        result
    }
}
