//! Exact number-theoretic kernels: gcd, Euler's totient and its summatory
//! function, prime counting, monotone floor-inverse search and rational
//! enclosures of the natural logarithm.

mod fnspec;
mod logbound;
mod sieve;

pub use fnspec::{floor_inverse, FnSpec};
pub use logbound::{ln_enclosure, ln_enclosure_big, LnInterval, LnTable, LN_PRECISION_BITS};
pub use sieve::{
    euler_phi, is_prime, is_prime_trial, prime_pi, sieve_tables, totient_summatory, SieveCache, DEFAULT_SIEVE_LIMIT,
    MAX_SIEVE_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    /// A function declared strictly increasing produced `f(later) <= f(earlier)`.
    #[error("function {name} is not strictly increasing: f({earlier}) >= f({later})")]
    NotIncreasing { name: String, earlier: u64, later: u64 },
    #[error("function {name} must satisfy f(1) >= 1")]
    BadStart { name: String },
}

/// Euclidean gcd. `gcd(0, b) == b`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `co(a, b)`: both positive and without a common divisor other than 1.
pub fn coprime(a: u64, b: u64) -> bool {
    a >= 1 && b >= 1 && gcd(a, b) == 1
}

/// Distinct prime factors of `m`, ascending.
pub fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if m <= MAX_SIEVE_LIMIT as u64 {
        let t = sieve_tables(m);
        while m > 1 {
            let p = t.smallest_prime_factor(m);
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        return out;
    }
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// `#{j ∈ [a, b] : gcd(|j|, m) = 1}` by inclusion–exclusion over the
/// squarefree divisors of `m`.
pub fn coprime_count(m: u64, a: i128, b: i128) -> u64 {
    if b < a || m == 0 {
        return 0;
    }
    if m == 1 {
        return (b - a + 1) as u64;
    }
    let primes = distinct_prime_factors(m);
    let mut total: i128 = 0;
    for mask in 0u32..(1 << primes.len()) {
        let mut d: i128 = 1;
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= p as i128;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        total += sign * (b.div_euclid(d) - (a - 1).div_euclid(d));
    }
    total as u64
}
