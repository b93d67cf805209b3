use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sieve::SieveCache;

/// Fractional bits carried by [`ln_enclosure`].
pub const LN_PRECISION_BITS: u32 = 128;
/// Fractional bits of the compact [`LnTable`] entries (values fit in `u128`
/// for every argument below `2^64`).
const TABLE_BITS: u32 = 120;

/// Dyadic enclosure `lo / 2^bits ≤ ln x ≤ hi / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LnInterval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl LnInterval {
    fn exact_zero(bits: u32) -> Self {
        LnInterval { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Scaled endpoints `(lo, hi)`; the true value is within `[lo, hi] / 2^bits`.
    pub fn scaled(&self) -> (&BigInt, &BigInt) {
        (&self.lo, &self.hi)
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.bits)
    }

    /// Enclosure of `ln(xy)` from enclosures of `ln x` and `ln y`.
    pub fn add(&self, other: &LnInterval) -> LnInterval {
        assert_eq!(self.bits, other.bits, "mixed precisions");
        LnInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    fn scale(&self, k: u64) -> LnInterval {
        LnInterval { lo: &self.lo * k, hi: &self.hi * k, bits: self.bits }
    }

    /// Whether `ln x > q` is established by the enclosure.
    pub fn certainly_gt(&self, q: &BigRational) -> bool {
        // lo / 2^bits > q  <=>  lo * den > numer * 2^bits
        &self.lo * q.denom() > q.numer() << self.bits
    }

    /// Whether `ln x < q` is established by the enclosure.
    pub fn certainly_lt(&self, q: &BigRational) -> bool {
        &self.hi * q.denom() < q.numer() << self.bits
    }
}

fn div_floor(a: &BigUint, b: &BigUint) -> BigUint {
    a / b
}

fn div_ceil(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Enclosure of `2·atanh(a/b) · 2^bits` for `0 ≤ a/b ≤ 1/3`.
fn two_atanh(a: &BigUint, b: &BigUint, bits: u32) -> (BigUint, BigUint) {
    if a.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    debug_assert!(a * 3u32 <= *b);
    let scale = BigUint::one() << bits;
    let a2 = a * a;
    let b2 = b * b;
    let mut t_lo = div_floor(&(a * &scale), b);
    let mut t_hi = div_ceil(&(a * &scale), b);
    let mut sum_lo = BigUint::zero();
    let mut sum_hi = BigUint::zero();
    let mut odd = 1u32;
    let one = BigUint::one();
    loop {
        sum_lo += div_floor(&t_lo, &BigUint::from(odd));
        sum_hi += div_ceil(&t_hi, &BigUint::from(odd));
        t_lo = div_floor(&(&t_lo * &a2), &b2);
        t_hi = div_ceil(&(&t_hi * &a2), &b2);
        odd += 2;
        if t_hi <= one {
            break;
        }
    }
    // Remaining terms sum to at most z^(2K+1) / (1 - z^2) <= (9/8) t_hi.
    sum_hi += div_ceil(&(&t_hi * 9u32), &BigUint::from(8u32)) + 1u32;
    (sum_lo * 2u32, sum_hi * 2u32)
}

fn ln2(bits: u32) -> LnInterval {
    static LN2_MAIN: OnceLock<LnInterval> = OnceLock::new();
    static LN2_TABLE: OnceLock<LnInterval> = OnceLock::new();
    let compute = |bits| {
        let (lo, hi) = two_atanh(&BigUint::one(), &BigUint::from(3u32), bits);
        LnInterval { lo: BigInt::from(lo), hi: BigInt::from(hi), bits }
    };
    match bits {
        LN_PRECISION_BITS => LN2_MAIN.get_or_init(|| compute(bits)).clone(),
        TABLE_BITS => LN2_TABLE.get_or_init(|| compute(bits)).clone(),
        _ => compute(bits),
    }
}

fn ln_with_bits(n: &BigUint, bits: u32) -> LnInterval {
    assert!(!n.is_zero(), "ln(0) is undefined");
    if n.is_one() {
        return LnInterval::exact_zero(bits);
    }
    // n = 2^k · y with y in [1, 2); ln y = 2 atanh((n - 2^k) / (n + 2^k)).
    let k = n.bits() - 1;
    let pow = BigUint::one() << k;
    let (s_lo, s_hi) = two_atanh(&(n - &pow), &(n + &pow), bits);
    let two = ln2(bits).scale(k);
    LnInterval {
        lo: two.lo + BigInt::from_biguint(Sign::Plus, s_lo),
        hi: two.hi + BigInt::from_biguint(Sign::Plus, s_hi),
        bits,
    }
}

/// Rational enclosure of `ln n` for `n ≥ 1`, with [`LN_PRECISION_BITS`]
/// fractional bits.
pub fn ln_enclosure(n: u64) -> LnInterval {
    ln_with_bits(&BigUint::from(n), LN_PRECISION_BITS)
}

pub fn ln_enclosure_big(n: &BigUint) -> LnInterval {
    ln_with_bits(n, LN_PRECISION_BITS)
}

/// Enclosures of `ln n` for every `n ≤ limit`, built from the prime
/// enclosures by additivity over the smallest-prime-factor table.
pub struct LnTable {
    lo: Vec<u128>,
    hi: Vec<u128>,
}

impl LnTable {
    pub fn new(limit: u64) -> Self {
        let sieve = SieveCache::new(limit as usize);
        let len = limit as usize + 1;
        let mut lo = vec![0u128; len];
        let mut hi = vec![0u128; len];
        let to_u128 = |x: &BigInt| -> u128 { u128::try_from(x).expect("ln table entry exceeds 128 bits") };
        for n in 2..len {
            let p = sieve.smallest_prime_factor(n as u64) as usize;
            if p == n {
                let e = ln_with_bits(&BigUint::from(n), TABLE_BITS);
                lo[n] = to_u128(&e.lo);
                hi[n] = to_u128(&e.hi);
            } else {
                lo[n] = lo[p] + lo[n / p];
                hi[n] = hi[p] + hi[n / p];
            }
        }
        LnTable { lo, hi }
    }

    pub fn limit(&self) -> u64 {
        self.lo.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> LnInterval {
        let i = n as usize;
        LnInterval { lo: BigInt::from(self.lo[i]), hi: BigInt::from(self.hi[i]), bits: TABLE_BITS }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn encloses_known_values() {
        // ln 2 = 0.693147180559945309417232121458...
        let e = ln_enclosure(2);
        let ln2 = BigRational::new(693147180559945309417232121458u128.into(), 10u128.pow(30).into());
        let eps = BigRational::new(1.into(), 10u128.pow(29).into());
        assert!(e.lower() <= &ln2 + &eps && e.upper() >= &ln2 - &eps);
        assert!(e.width() < BigRational::new(1.into(), BigInt::one() << 100u32));
        assert_eq!(ln_enclosure(1).lower(), BigRational::zero());
        for n in [3u64, 10, 113, 1_000_000, u64::MAX] {
            let e = ln_enclosure(n);
            let f = (n as f64).ln();
            assert!((e.lower().to_f64().unwrap() - f).abs() < 1e-9);
            assert!(e.lower() < e.upper());
        }
    }

    #[test]
    fn table_matches_direct_enclosures() {
        let table = LnTable::new(5000);
        for n in [2u64, 12, 97, 360, 4096, 4999] {
            let t = table.get(n);
            let d = ln_enclosure(n);
            // Both must contain ln n, hence intersect.
            assert!(t.lower() <= d.upper() && d.lower() <= t.upper(), "n = {n}");
            assert!(t.width() < BigRational::new(1.into(), BigInt::one() << 100u32));
        }
    }

    #[test]
    fn strict_comparisons() {
        let e = ln_enclosure(17);
        // ln 17 ≈ 2.833
        assert!(e.certainly_gt(&BigRational::new(283.into(), 100.into())));
        assert!(e.certainly_lt(&BigRational::new(284.into(), 100.into())));
        assert!(!e.certainly_gt(&BigRational::new(3.into(), 1.into())));
    }
}
