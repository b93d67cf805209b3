use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::envelope::{BoundTerm, Degree, GrowthEnvelope};
use crate::numtheory::{coprime_count, euler_phi, prime_pi, totient_summatory, FnSpec, NumError};

/// Expression grammar for exact formulas in the index `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    Const(BigInt),
    /// `n`
    Index,
    /// `⌊n/k⌋`
    FloorDiv(u64),
    /// `⌊√n⌋`
    Isqrt,
    /// `max{m ≥ 1 : f(m) ≤ n}` (0 if none)
    FloorInverse(FnSpec),
    /// `φ(n)`
    Totient,
    /// `Φ(n) = φ(1) + … + φ(n)`
    TotientSum,
    /// `π(n)`, plus one when 1 is counted among the primes.
    PrimePi {
        include_one: bool,
    },
    /// `#{x ∈ (lo, hi] : x rational with denominator ≤ n}`
    FareyCount {
        lo: Ratio<i64>,
        hi: Ratio<i64>,
    },
    Add(Box<ClosedForm>, Box<ClosedForm>),
    Sub(Box<ClosedForm>, Box<ClosedForm>),
    Mul(Box<ClosedForm>, Box<ClosedForm>),
    Min(Box<ClosedForm>, Box<ClosedForm>),
    Max(Box<ClosedForm>, Box<ClosedForm>),
}

/// A closed form claimed to agree with a generator for every `n ≥ valid_from`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormCert {
    pub expr: ClosedForm,
    pub valid_from: u64,
}

// tree builders, not operator overloads
#[allow(clippy::should_implement_trait)]
impl ClosedForm {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        ClosedForm::Const(c.into())
    }

    pub fn add(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Mul(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, n: u64) -> Result<BigInt, NumError> {
        Ok(match self {
            ClosedForm::Const(c) => c.clone(),
            ClosedForm::Index => n.into(),
            ClosedForm::FloorDiv(k) => (n / k).into(),
            ClosedForm::Isqrt => n.sqrt().into(),
            ClosedForm::FloorInverse(f) => f.floor_inverse_at(n)?.into(),
            ClosedForm::Totient => euler_phi(n).into(),
            ClosedForm::TotientSum => totient_summatory(n).into(),
            ClosedForm::PrimePi { include_one } => (prime_pi(n) + u64::from(*include_one && n >= 1)).into(),
            ClosedForm::FareyCount { lo, hi } => farey_count(*lo, *hi, n).into(),
            ClosedForm::Add(a, b) => a.eval(n)? + b.eval(n)?,
            ClosedForm::Sub(a, b) => a.eval(n)? - b.eval(n)?,
            ClosedForm::Mul(a, b) => a.eval(n)? * b.eval(n)?,
            ClosedForm::Min(a, b) => a.eval(n)?.min(b.eval(n)?),
            ClosedForm::Max(a, b) => a.eval(n)?.max(b.eval(n)?),
        })
    }

    /// Values at `from ..= to`; Farey counts are accumulated rather than
    /// recomputed per index.
    pub fn eval_range(&self, from: u64, to: u64) -> Result<Vec<BigInt>, NumError> {
        let zip = |a: &ClosedForm, b: &ClosedForm, f: fn(BigInt, BigInt) -> BigInt| -> Result<Vec<BigInt>, NumError> {
            let (x, y) = (a.eval_range(from, to)?, b.eval_range(from, to)?);
            Ok(x.into_iter().zip(y).map(|(p, q)| f(p, q)).collect())
        };
        match self {
            ClosedForm::FareyCount { lo, hi } => {
                let mut acc = farey_count(*lo, *hi, from.saturating_sub(1));
                Ok((from..=to)
                    .map(|m| {
                        acc += farey_count_at_denominator(*lo, *hi, m);
                        BigInt::from(acc)
                    })
                    .collect())
            }
            ClosedForm::Add(a, b) => zip(a, b, |p, q| p + q),
            ClosedForm::Sub(a, b) => zip(a, b, |p, q| p - q),
            ClosedForm::Mul(a, b) => zip(a, b, |p, q| p * q),
            ClosedForm::Min(a, b) => zip(a, b, |p, q| p.min(q)),
            ClosedForm::Max(a, b) => zip(a, b, |p, q| p.max(q)),
            _ => (from..=to).map(|n| self.eval(n)).collect(),
        }
    }

    /// Envelope implied by the formula, when its shape is known.
    pub fn envelope(&self) -> Option<GrowthEnvelope> {
        let one = || BoundTerm::simple(1, 1, 1, 0);
        match self {
            ClosedForm::Const(c) if c.is_positive() => {
                Some(GrowthEnvelope::constant(&BigRational::from_integer(c.clone())))
            }
            ClosedForm::Const(_) => None,
            ClosedForm::Index => Some(GrowthEnvelope::new(Some(one()), one(), 1)),
            ClosedForm::FloorDiv(k) => {
                let k = *k as i64;
                Some(GrowthEnvelope::new(
                    Some(BoundTerm::simple(1, 2 * k, 1, 0)),
                    BoundTerm::simple(1, k, 1, 0),
                    2 * k as u64,
                ))
            }
            ClosedForm::Isqrt => Some(GrowthEnvelope::new(
                Some(BoundTerm::new(rat(1, 2), Degree::new(1, 2), 0)),
                BoundTerm::new(rat(1, 1), Degree::new(1, 2), 0),
                1,
            )),
            ClosedForm::FloorInverse(f) => floor_inverse_envelope(f),
            ClosedForm::Totient => {
                Some(GrowthEnvelope::new(Some(BoundTerm::new(rat(1, 2), Degree::new(1, 2), 0)), one(), 1))
            }
            ClosedForm::TotientSum => Some(phi_envelope(&rat(1, 1), 1)),
            ClosedForm::PrimePi { include_one: false } => {
                Some(GrowthEnvelope::new(Some(BoundTerm::simple(1, 1, 1, -1)), BoundTerm::simple(5, 4, 1, -1), 114))
            }
            ClosedForm::PrimePi { include_one: true } => {
                Some(GrowthEnvelope::new(Some(BoundTerm::simple(1, 1, 1, -1)), BoundTerm::simple(3, 2, 1, -1), 17))
            }
            ClosedForm::FareyCount { .. } => {
                let (nf, from) = self.normal_form()?;
                let c = nf.as_multiple_of(&Monomial::atom(Atom::TotientSum))?;
                c.is_positive().then(|| phi_envelope(&c, from))
            }
            ClosedForm::Add(a, b) => a.envelope()?.add(&b.envelope()?),
            ClosedForm::Mul(a, b) => Some(a.envelope()?.mul(&b.envelope()?)),
            ClosedForm::Sub(a, b) => Some(a.envelope()?.sub(&b.envelope()?)),
            ClosedForm::Min(a, b) => a.envelope()?.meet(&b.envelope()?),
            ClosedForm::Max(a, b) => a.envelope()?.join(&b.envelope()?),
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `3c/10 · n² ≤ c·Φ(n) ≤ c/2 · n²`, the upper half failing only at n = 1
fn phi_envelope(c: &BigRational, from: u64) -> GrowthEnvelope {
    GrowthEnvelope::new(
        Some(BoundTerm::new(c * rat(3, 10), Degree::from_integer(2), 0)),
        BoundTerm::new(c * rat(1, 2), Degree::from_integer(2), 0),
        from.max(2),
    )
}

fn floor_inverse_envelope(f: &FnSpec) -> Option<GrowthEnvelope> {
    match f {
        FnSpec::Poly(_) => {
            let c = f.poly_coefficients()?;
            let d = c.len().checked_sub(1).filter(|&d| d >= 1)? as i64;
            let total: u64 = c.iter().sum();
            let lead = *c.last()?;
            if lead == 0 {
                return None;
            }
            // f(m) ≥ m^d gives the upper bound; f(m) ≤ total·m^d the lower one
            // once (n/total)^(1/d) ≥ 2.
            let from = total.checked_mul(1u64.checked_shl(d as u32)?)?;
            Some(GrowthEnvelope::new(
                Some(BoundTerm::new(rat(1, 2 * total as i64), Degree::new(1, d), 0)),
                BoundTerm::new(rat(1, 1), Degree::new(1, d), 0),
                from,
            ))
        }
        FnSpec::Exp(b) if *b >= 2 => Some(GrowthEnvelope::new(
            Some(BoundTerm::new(rat(1, 2 * *b as i64), Degree::zero(), 1)),
            BoundTerm::new(rat(2, 1), Degree::zero(), 1),
            b.checked_mul(*b)?,
        )),
        _ => None,
    }
}

/// Counts `x ∈ (lo, hi]` in lowest terms with denominator exactly `m`.
fn farey_count_at_denominator(lo: Ratio<i64>, hi: Ratio<i64>, m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mi = m as i128;
    // numerators j with lo < j/m ≤ hi  <=>  floor(lo·m) < j ≤ floor(hi·m)
    let a = Integer::div_floor(&(*lo.numer() as i128 * mi), &(*lo.denom() as i128));
    let b = Integer::div_floor(&(*hi.numer() as i128 * mi), &(*hi.denom() as i128));
    coprime_count(m, a + 1, b)
}

/// `#{x ∈ (lo, hi] : denom(x) ≤ n}`
pub fn farey_count(lo: Ratio<i64>, hi: Ratio<i64>, n: u64) -> u64 {
    (1..=n).map(|m| farey_count_at_denominator(lo, hi, m)).sum()
}

// ---------------------------------------------------------------------------
// Normal forms

/// Irreducible building blocks of normal forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    Index,
    FloorDiv(u64),
    Isqrt,
    /// keyed by the function's canonical text
    FloorInverse(String),
    Totient,
    TotientSum,
    PrimePi(bool),
    /// `#(0, r]` with denominators ≤ n, for `0 < r < 1/2`
    FareyTail(Ratio<i64>),
}

impl Atom {
    /// Non-decreasing in `n` and unbounded.
    fn monotone_unbounded(&self) -> bool {
        !matches!(self, Atom::Totient)
    }
}

/// Product of atoms with multiplicities, kept sorted; empty for the constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    fn index_power(&self) -> Option<u32> {
        match self.0.as_slice() {
            [] => Some(0),
            [(Atom::Index, k)] => Some(*k),
            _ => None,
        }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Atom, u32> = BTreeMap::new();
        for (a, k) in self.0.iter().chain(&other.0) {
            *map.entry(a.clone()).or_default() += k;
        }
        Monomial(map.into_iter().collect())
    }
}

/// Finite rational linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LinearForm {
    pub fn constant(c: BigRational) -> Self {
        let mut f = LinearForm::default();
        f.push(Monomial::default(), c);
        f
    }

    pub fn atom(a: Atom) -> Self {
        let mut f = LinearForm::default();
        f.push(Monomial::atom(a), BigRational::one());
        f
    }

    fn push(&mut self, m: Monomial, c: BigRational) {
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = LinearForm::default();
        for (m, c) in &self.terms {
            out.push(m.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LinearForm::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.push(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms_iter(&self) -> impl Iterator<Item = (&[(Atom, u32)], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// `Some(c)` when the form is the constant `c`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    /// `Some(c)` when the form is exactly `c · m`.
    pub fn as_multiple_of(&self, m: &Monomial) -> Option<BigRational> {
        (self.terms.len() == 1).then(|| self.terms.get(m).cloned()).flatten()
    }

    /// Coefficients `[c0, c1, …]` when the form is a polynomial in `n`.
    pub fn as_polynomial(&self) -> Option<Vec<BigRational>> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (m, c) in &self.terms {
            let k = m.index_power()? as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(coeffs)
    }

    fn eval_monomial(m: &Monomial, n: u64) -> BigInt {
        let mut acc = BigInt::one();
        for (a, k) in &m.0 {
            let v: BigInt = match a {
                Atom::Index => n.into(),
                Atom::FloorDiv(d) => (n / d).into(),
                Atom::Isqrt => n.sqrt().into(),
                Atom::FloorInverse(_) => unreachable!("floor inverses are not evaluated symbolically"),
                Atom::Totient => euler_phi(n).into(),
                Atom::TotientSum => totient_summatory(n).into(),
                Atom::PrimePi(one) => (prime_pi(n) + u64::from(*one)).into(),
                Atom::FareyTail(r) => farey_count(Ratio::from_integer(0), *r, n).into(),
            };
            acc *= v.pow(*k);
        }
        acc
    }

    /// Decides the eventual sign: `Some((s, t))` means `sign(value(n)) = s`
    /// for every `n ≥ t` (with `t ≥ from`).
    pub fn eventual_sign(&self, from: u64) -> Option<(std::cmp::Ordering, u64)> {
        use std::cmp::Ordering::*;
        let from = from.max(1);
        if let Some(c) = self.as_constant() {
            return Some((c.cmp(&BigRational::zero()), from));
        }
        if let Some(p) = self.as_polynomial() {
            let lead = p.last().unwrap().clone();
            let bound = p[..p.len() - 1].iter().map(|c| (c / &lead).abs()).fold(BigRational::zero(), |a, b| a.max(b));
            // Cauchy: every real root has |x| < 1 + max|c_i / c_d|
            let t = (BigRational::one() + bound).floor().to_integer() + 1u32;
            let t = t.to_u64()?.max(from);
            return Some((lead.cmp(&BigRational::zero()), t));
        }
        // c·M + k with M a product of non-decreasing unbounded atoms
        let mut non_const = self.terms.iter().filter(|(m, _)| !m.0.is_empty());
        let (m, c) = non_const.next()?;
        if non_const.next().is_some() || !m.0.iter().all(|(a, _)| a.monotone_unbounded()) {
            return None;
        }
        if m.0.iter().any(|(a, _)| matches!(a, Atom::FloorInverse(_))) {
            return None;
        }
        let k = self.terms.get(&Monomial::default()).cloned().unwrap_or_else(BigRational::zero);
        let positive = c.is_positive();
        // strict sign once c·M(n) + k has it; M non-decreasing keeps it
        let holds = |n: u64| {
            let v = BigRational::from_integer(Self::eval_monomial(m, n)) * c + &k;
            if positive {
                v.is_positive()
            } else {
                v.is_negative()
            }
        };
        let mut hi = from;
        while !holds(hi) {
            hi = hi.checked_mul(2)?;
        }
        let mut lo = from;
        if lo < hi {
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if holds(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if holds(lo) {
                hi = lo;
            }
        }
        Some((if positive { Greater } else { Less }, hi))
    }
}

impl ClosedForm {
    /// Normal form and the index from which it agrees with the formula.
    pub fn normal_form(&self) -> Option<(LinearForm, u64)> {
        let one = |a| Some((LinearForm::atom(a), 1));
        match self {
            ClosedForm::Const(c) => Some((LinearForm::constant(BigRational::from_integer(c.clone())), 1)),
            ClosedForm::Index | ClosedForm::FloorDiv(1) => one(Atom::Index),
            ClosedForm::FloorDiv(k) => one(Atom::FloorDiv(*k)),
            ClosedForm::Isqrt => one(Atom::Isqrt),
            ClosedForm::FloorInverse(f) => {
                if let Some(k) = f.as_multiple() {
                    ClosedForm::FloorDiv(k).normal_form()
                } else if f.as_power() == Some(2) {
                    one(Atom::Isqrt)
                } else if matches!(f, FnSpec::Custom { .. }) {
                    None
                } else {
                    one(Atom::FloorInverse(f.key()))
                }
            }
            ClosedForm::Totient => one(Atom::Totient),
            ClosedForm::TotientSum => one(Atom::TotientSum),
            ClosedForm::PrimePi { include_one } => one(Atom::PrimePi(*include_one)),
            ClosedForm::FareyCount { lo, hi } => {
                let (h_hi, f_hi) = farey_h(*hi);
                let (h_lo, f_lo) = farey_h(*lo);
                Some((h_hi.sub(&h_lo), f_hi.max(f_lo)))
            }
            ClosedForm::Add(a, b) | ClosedForm::Sub(a, b) | ClosedForm::Mul(a, b) => {
                let (x, fx) = a.normal_form()?;
                let (y, fy) = b.normal_form()?;
                let z = match self {
                    ClosedForm::Add(..) => x.add(&y),
                    ClosedForm::Sub(..) => x.sub(&y),
                    _ => x.mul(&y),
                };
                Some((z, fx.max(fy)))
            }
            ClosedForm::Min(..) | ClosedForm::Max(..) => None,
        }
    }
}

/// `H(x) = #(0, x]` for `x ≥ 0` and `−#(x, 0]` for `x < 0`, counting
/// rationals with denominator ≤ n, expressed through `Φ` and Farey tails on
/// `(0, 1/2)`.
fn farey_h(x: Ratio<i64>) -> (LinearForm, u64) {
    if x.is_negative() {
        // reflection x ↦ −x
        let (f, from) = farey_h(-x);
        return (f.scale(&-BigRational::one()), from.max(*x.denom() as u64));
    }
    let q = x.floor();
    let r = x - q;
    let phi = LinearForm::atom(Atom::TotientSum);
    let whole = phi.scale(&BigRational::from_integer((*q.numer()).into()));
    let half = Ratio::new(1, 2);
    let (tail, from) = if r.is_zero() {
        (LinearForm::default(), 1)
    } else if r == half {
        (phi.scale(&rat(1, 2)), 2)
    } else if r < half {
        (LinearForm::atom(Atom::FareyTail(r)), 1)
    } else {
        // #(0, r] = Φ − #(0, 1 − r] via y ↦ 1 − y
        let comp = LinearForm::atom(Atom::FareyTail(Ratio::from_integer(1) - r));
        (phi.sub(&comp), *r.denom() as u64)
    };
    (whole.add(&tail), from)
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Const(c) => write!(f, "{c}"),
            ClosedForm::Index => write!(f, "n"),
            ClosedForm::FloorDiv(k) => write!(f, "floor(n/{k})"),
            ClosedForm::Isqrt => write!(f, "isqrt(n)"),
            ClosedForm::FloorInverse(g) => write!(f, "finv[{g}](n)"),
            ClosedForm::Totient => write!(f, "phi(n)"),
            ClosedForm::TotientSum => write!(f, "Phi(n)"),
            ClosedForm::PrimePi { include_one: false } => write!(f, "pi(n)"),
            ClosedForm::PrimePi { include_one: true } => write!(f, "(pi(n)+1)"),
            ClosedForm::FareyCount { lo, hi } => write!(f, "farey({lo},{hi}](n)"),
            ClosedForm::Add(a, b) => write!(f, "({a} + {b})"),
            ClosedForm::Sub(a, b) => write!(f, "({a} - {b})"),
            ClosedForm::Mul(a, b) => write!(f, "{a}*{b}"),
            ClosedForm::Min(a, b) => write!(f, "min({a}, {b})"),
            ClosedForm::Max(a, b) => write!(f, "max({a}, {b})"),
        }
    }
}
