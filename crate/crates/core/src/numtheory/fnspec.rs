use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::NumError;

/// A strictly increasing function `ℕ → ℕ`, evaluated exactly.
#[derive(Clone)]
pub enum FnSpec {
    /// `c0 + c1·m + c2·m² + …` with natural coefficients.
    Poly(Vec<u64>),
    /// `base^m`.
    Exp(u64),
    /// Arbitrary generator; monotonicity is only checked on probed points.
    Custom { name: String, f: Arc<dyn Fn(u64) -> BigUint + Send + Sync> },
}

impl FnSpec {
    pub fn identity() -> Self {
        FnSpec::Poly(vec![0, 1])
    }

    /// `k·m`
    pub fn multiple(k: u64) -> Self {
        FnSpec::Poly(vec![0, k])
    }

    /// `m^k`
    pub fn power(k: u32) -> Self {
        let mut c = vec![0; k as usize + 1];
        c[k as usize] = 1;
        FnSpec::Poly(c)
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(u64) -> BigUint + Send + Sync + 'static) -> Self {
        FnSpec::Custom { name: name.into(), f: Arc::new(f) }
    }

    /// Coefficients with trailing zeros removed; `None` for non-polynomials.
    pub fn poly_coefficients(&self) -> Option<Vec<u64>> {
        match self {
            FnSpec::Poly(c) => {
                let mut c = c.clone();
                while c.last() == Some(&0) {
                    c.pop();
                }
                Some(c)
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly_coefficients().map(|c| c.len().saturating_sub(1))
    }

    /// `Some(k)` when the function is exactly `k·m`.
    pub fn as_multiple(&self) -> Option<u64> {
        match self.poly_coefficients()?.as_slice() {
            [0, k] => Some(*k),
            _ => None,
        }
    }

    /// `Some(k)` when the function is exactly `m^k`.
    pub fn as_power(&self) -> Option<u32> {
        let c = self.poly_coefficients()?;
        let (last, rest) = c.split_last()?;
        (*last == 1 && rest.iter().all(|&x| x == 0)).then_some(rest.len() as u32)
    }

    pub fn eval(&self, m: u64) -> BigUint {
        match self {
            FnSpec::Poly(c) => {
                let x = BigUint::from(m);
                c.iter().rev().fold(BigUint::zero(), |acc, &ci| acc * &x + BigUint::from(ci))
            }
            FnSpec::Exp(b) => BigUint::from(*b).pow(m as u32),
            FnSpec::Custom { f, .. } => f(m),
        }
    }

    /// Canonical textual form, also used as an ordering key.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Debug for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnSpec({self})")
    }
}

impl fmt::Display for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnSpec::Poly(_) => {
                let c = self.poly_coefficients().unwrap_or_default();
                let mut terms = Vec::new();
                for (i, &ci) in c.iter().enumerate().rev() {
                    if ci == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "m".to_string(),
                        _ => format!("m^{i}"),
                    };
                    terms.push(match (ci, i) {
                        (_, 0) => ci.to_string(),
                        (1, _) => mono,
                        _ => format!("{ci}*{mono}"),
                    });
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
            FnSpec::Exp(b) => write!(f, "{b}^m"),
            FnSpec::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

impl PartialEq for FnSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FnSpec::Custom { f: a, .. }, FnSpec::Custom { f: b, .. }) => Arc::ptr_eq(a, b),
            (FnSpec::Custom { .. }, _) | (_, FnSpec::Custom { .. }) => false,
            _ => self.key() == other.key(),
        }
    }
}

/// `max{m ≥ 1 : f(m) ≤ n}`, or 0 when `f(1) > n`.
///
/// Exponential probing followed by bisection; every probed pair is checked
/// for strict monotonicity.
pub fn floor_inverse(f: &FnSpec, n: &BigUint) -> Result<u64, NumError> {
    let name = || f.to_string();
    let f1 = f.eval(1);
    if f1.is_zero() {
        return Err(NumError::BadStart { name: name() });
    }
    if &f1 > n {
        return Ok(0);
    }
    let mut lo = 1u64;
    let mut f_lo = f1;
    let mut hi = 2u64;
    let mut f_hi = f.eval(hi);
    loop {
        if f_hi <= f_lo {
            return Err(NumError::NotIncreasing { name: name(), earlier: lo, later: hi });
        }
        if &f_hi > n {
            break;
        }
        lo = hi;
        f_lo = f_hi;
        hi = hi.checked_mul(2).expect("floor_inverse overflowed u64");
        f_hi = f.eval(hi);
    }
    // f(lo) <= n < f(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let f_mid = f.eval(mid);
        if f_mid <= f_lo || f_mid >= f_hi {
            let (earlier, later) = if f_mid <= f_lo { (lo, mid) } else { (mid, hi) };
            return Err(NumError::NotIncreasing { name: name(), earlier, later });
        }
        if &f_mid <= n {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(lo)
}

impl FnSpec {
    /// `floor_inverse` at a machine-sized argument.
    pub fn floor_inverse_at(&self, n: u64) -> Result<u64, NumError> {
        floor_inverse(self, &BigUint::from(n))
    }

    /// Whether `n` is a value `f(m)` for some `m ≥ 1`.
    pub fn hits(&self, n: u64) -> Result<bool, NumError> {
        let m = self.floor_inverse_at(n)?;
        Ok(m >= 1 && self.eval(m) == BigUint::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(f: &FnSpec, n: u64) -> u64 {
        (1..=n).filter(|&m| f.eval(m) <= BigUint::from(n)).max().unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(FnSpec::power(2).floor_inverse_at(10).unwrap(), 3);
        assert_eq!(FnSpec::identity().floor_inverse_at(7).unwrap(), 7);
        assert_eq!(FnSpec::multiple(3).floor_inverse_at(8).unwrap(), 2);
        assert_eq!(FnSpec::multiple(3).floor_inverse_at(2).unwrap(), 0);
    }

    #[test]
    fn agrees_with_brute_force_to_1000() {
        let fs = [
            FnSpec::power(2),
            FnSpec::power(3),
            FnSpec::Exp(2),
            FnSpec::multiple(1),
            FnSpec::multiple(5),
            FnSpec::Poly(vec![0, 1, 1]),
        ];
        for f in &fs {
            for n in 1..=1000 {
                assert_eq!(f.floor_inverse_at(n).unwrap(), brute(f, n), "{f} at {n}");
            }
        }
    }

    #[test]
    fn detects_violations() {
        let constant = FnSpec::Poly(vec![5]);
        assert!(matches!(constant.floor_inverse_at(100), Err(NumError::NotIncreasing { .. })));
        let zero_start = FnSpec::Poly(vec![0, 0]);
        assert!(matches!(zero_start.floor_inverse_at(3), Err(NumError::BadStart { .. })));
        // Dips at m = 3; the bisection probes it.
        let dip = FnSpec::custom("dip", |m| BigUint::from(if m == 3 { 1u64 } else { 10 * m }));
        assert!(dip.floor_inverse_at(35).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(FnSpec::Poly(vec![0, 1, 1]).to_string(), "m^2+m");
        assert_eq!(FnSpec::multiple(3).to_string(), "3*m");
        assert_eq!(FnSpec::power(3).to_string(), "m^3");
        assert_eq!(FnSpec::Exp(2).to_string(), "2^m");
        assert_eq!(FnSpec::multiple(3).as_multiple(), Some(3));
        assert_eq!(FnSpec::power(2).as_power(), Some(2));
    }
}
