use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::numtheory::{coprime, euler_phi, gcd, totient_summatory};

/// A member of some canonically arranged set.
///
/// Integers of ℕ, ℕ₀ and ℤ share one representation, as do the rationals of
/// 𝕀, ℚ⁺, ℚ and the coprime-pair encoding, so sets over nested universes can
/// be combined without conversion. Positive rationals are stored in
/// mixed-fraction form `p + k/m` with `0 < k/m ≤ 1`; zero is `(0, 0, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Int(i64),
    Rat { sign: i8, p: u64, k: u64, m: u64 },
    Tuple(Vec<Element>),
    Symbol(String),
}

impl Element {
    pub fn nat(n: u64) -> Self {
        Element::Int(n as i64)
    }

    /// `k/m` with `co(k, m)` and `k ≤ m`.
    pub fn pair(k: u64, m: u64) -> Self {
        Element::Rat { sign: 1, p: 0, k, m }
    }

    /// `p + k/m` with `co(k, m)` and `k ≤ m`.
    pub fn mixed(p: u64, k: u64, m: u64) -> Self {
        Element::Rat { sign: 1, p, k, m }
    }

    pub fn tuple(a: Element, b: Element) -> Self {
        Element::Tuple(vec![a, b])
    }

    /// Mixed-fraction encoding of an arbitrary rational.
    pub fn rational(x: Ratio<i64>) -> Self {
        if x.is_zero() {
            return Element::Rat { sign: 0, p: 0, k: 0, m: 1 };
        }
        let sign = if x.is_negative() { -1 } else { 1 };
        let a = x.abs();
        let (j, m) = (*a.numer() as u64, *a.denom() as u64);
        // integral part chosen so that the fraction lies in (0, 1]
        let (p, k) = if m == 1 { (j - 1, 1) } else { (j / m, j % m) };
        Element::Rat { sign, p, k, m }
    }

    /// Value of a rational element.
    pub fn as_ratio(&self) -> Option<Ratio<i64>> {
        match *self {
            Element::Rat { sign, p, k, m } => {
                let v = Ratio::new(p as i64 * m as i64 + k as i64, m as i64);
                Some(v * sign as i64)
            }
            _ => None,
        }
    }

    fn well_formed_rat(&self) -> bool {
        match *self {
            Element::Rat { sign: 0, p, k, m } => p == 0 && k == 0 && m == 1,
            Element::Rat { sign, k, m, .. } => sign.abs() == 1 && k <= m && coprime(k, m),
            _ => false,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(z) => write!(f, "{z}"),
            Element::Rat { .. } => write!(f, "{}", self.as_ratio().unwrap()),
            Element::Tuple(items) => {
                write!(f, "(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Element::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Canonical universes; subsets inherit the arrangement of their universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Universe {
    Nat,
    Nat0,
    Int,
    /// 𝕀 = (0, 1] as coprime pairs `k ≤ m`, index `m`
    UnitInterval,
    /// ℚ⁺ = ℕ₀ × 𝕀, index `max(idx(p), m)`
    PosRational,
    /// ℚ⁺ mirrored, plus 0 in component 1
    Rational,
    /// positive rationals as coprime pairs `(k, m)`, index `max(k, m)`
    CoprimePairs,
    Product(Box<Universe>, Box<Universe>),
    /// ad-hoc finite sets, all in component 1
    AdHoc,
}

/// Index of a natural number in ℕ₀, where 0 shares component 1.
fn idx0(p: u64) -> u64 {
    p.max(1)
}

impl Universe {
    pub fn product(a: Universe, b: Universe) -> Self {
        Universe::Product(Box::new(a), Box::new(b))
    }

    pub fn name(&self) -> String {
        match self {
            Universe::Nat => "N".into(),
            Universe::Nat0 => "N0".into(),
            Universe::Int => "Z".into(),
            Universe::UnitInterval => "I".into(),
            Universe::PosRational => "Q+".into(),
            Universe::Rational => "Q".into(),
            Universe::CoprimePairs => "Q+[coprime pairs]".into(),
            Universe::Product(a, b) => format!("({} x {})", a.name(), b.name()),
            Universe::AdHoc => "ad-hoc".into(),
        }
    }

    /// Whether every element of `self` belongs to `other` with the same index.
    pub fn embeds_in(&self, other: &Universe) -> bool {
        use Universe::*;
        match (self, other) {
            (a, b) if a == b => true,
            (Nat, Nat0 | Int) | (Nat0, Int) => true,
            (UnitInterval, PosRational | Rational | CoprimePairs) | (PosRational, Rational) => true,
            (Product(a1, b1), Product(a2, b2)) => a1.embeds_in(a2) && b1.embeds_in(b2),
            _ => false,
        }
    }

    /// Smallest universe into which both embed.
    pub fn join(&self, other: &Universe) -> Option<Universe> {
        use Universe::*;
        if self.embeds_in(other) {
            return Some(other.clone());
        }
        if other.embeds_in(self) {
            return Some(self.clone());
        }
        match (self, other) {
            (Product(a1, b1), Product(a2, b2)) => Some(Universe::product(a1.join(a2)?, b1.join(b2)?)),
            _ => None,
        }
    }

    /// Component index of `e`, or `None` if `e` is not an element.
    pub fn index_of(&self, e: &Element) -> Option<u64> {
        use Universe::*;
        match (self, e) {
            (AdHoc, _) => Some(1),
            (Nat, Element::Int(z)) if *z >= 1 => Some(*z as u64),
            (Nat0, Element::Int(z)) if *z >= 0 => Some(idx0(*z as u64)),
            (Int, Element::Int(z)) => Some(z.unsigned_abs().max(1)),
            (Product(a, b), Element::Tuple(items)) if items.len() == 2 => {
                Some(a.index_of(&items[0])?.max(b.index_of(&items[1])?))
            }
            (_, Element::Rat { sign, p, k, m }) if e.well_formed_rat() => match self {
                UnitInterval => (*sign == 1 && *p == 0).then_some(*m),
                PosRational => (*sign == 1).then(|| idx0(*p).max(*m)),
                Rational => Some(if *sign == 0 { 1 } else { idx0(*p).max(*m) }),
                CoprimePairs => {
                    if *sign != 1 {
                        return None;
                    }
                    // numerator of the reduced fraction p + k/m
                    let num = p.checked_mul(*m)?.checked_add(*k)?;
                    Some(num.max(*m))
                }
                _ => None,
            },
            _ => None,
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index_of(e).is_some()
    }

    /// `χ_n` of the whole universe (zero for ad-hoc).
    pub fn chi(&self, n: u64) -> BigUint {
        use Universe::*;
        let one = n == 1;
        match self {
            Nat => BigUint::from(1u32),
            Nat0 => BigUint::from(if one { 2u32 } else { 1 }),
            Int => BigUint::from(if one { 3u32 } else { 2 }),
            UnitInterval => BigUint::from(euler_phi(n)),
            PosRational => {
                // m = n with p ≤ n, or p = n with m < n
                BigUint::from(n + 1) * euler_phi(n) + totient_summatory(n - 1)
            }
            Rational => PosRational.chi(n) * 2u32 + u64::from(one),
            CoprimePairs => BigUint::from(if one { 1 } else { 2 * euler_phi(n) }),
            Product(a, b) => {
                // χ_n(A×B) = χ_n(A)σ_n(B) + σ_{n−1}(A)χ_n(B)
                a.chi(n) * b.sigma(n) + a.sigma(n - 1) * b.chi(n)
            }
            AdHoc => BigUint::zero(),
        }
    }

    /// `σ_n` of the whole universe, from the same closed forms.
    pub fn sigma(&self, n: u64) -> BigUint {
        use Universe::*;
        if n == 0 {
            return BigUint::zero();
        }
        match self {
            Nat => n.into(),
            Nat0 => (n + 1).into(),
            Int => (2 * n + 1).into(),
            UnitInterval => totient_summatory(n).into(),
            PosRational => BigUint::from(n + 1) * totient_summatory(n),
            Rational => PosRational.sigma(n) * 2u32 + 1u32,
            CoprimePairs => BigUint::from(2 * totient_summatory(n) - 1),
            Product(a, b) => a.sigma(n) * b.sigma(n),
            AdHoc => BigUint::zero(),
        }
    }

    /// Elements of component `n`, sorted.
    pub fn component(&self, n: u64) -> Vec<Element> {
        use Universe::*;
        let coprime_to = |m: u64| (1..=m).filter(move |&k| gcd(k, m) == 1);
        let mut out: Vec<Element> = match self {
            Nat => vec![Element::nat(n)],
            Nat0 if n == 1 => vec![Element::nat(0), Element::nat(1)],
            Nat0 => vec![Element::nat(n)],
            Int if n == 1 => vec![Element::Int(-1), Element::Int(0), Element::Int(1)],
            Int => vec![Element::Int(-(n as i64)), Element::Int(n as i64)],
            UnitInterval => coprime_to(n).map(|k| Element::pair(k, n)).collect(),
            PosRational => {
                let mut v: Vec<Element> =
                    (0..=n).flat_map(|p| coprime_to(n).map(move |k| Element::mixed(p, k, n))).collect();
                if n > 1 {
                    for m in 1..n {
                        v.extend(coprime_to(m).map(|k| Element::mixed(n, k, m)));
                    }
                }
                v
            }
            Rational => {
                let pos = PosRational.component(n);
                let mut v: Vec<Element> = pos
                    .iter()
                    .map(|e| match e {
                        Element::Rat { p, k, m, .. } => Element::Rat { sign: -1, p: *p, k: *k, m: *m },
                        _ => unreachable!(),
                    })
                    .collect();
                if n == 1 {
                    v.push(Element::rational(Ratio::from_integer(0)));
                }
                v.extend(pos);
                v
            }
            CoprimePairs => {
                let mut v: Vec<Element> =
                    coprime_to(n).map(|k| Element::rational(Ratio::new(k as i64, n as i64))).collect();
                v.extend((1..n).filter(|&m| gcd(n, m) == 1).map(|m| Element::rational(Ratio::new(n as i64, m as i64))));
                v
            }
            Product(a, b) => product_component(|i| a.component(i), |j| b.component(j), n),
            AdHoc => Vec::new(),
        };
        out.sort();
        out
    }

    /// JSON encoding of an element of this universe.
    pub fn encode(&self, e: &Element) -> Value {
        use Universe::*;
        match (self, e) {
            (_, Element::Int(z)) => json!(z),
            (UnitInterval, Element::Rat { k, m, .. }) => json!([k, m]),
            (PosRational, Element::Rat { p, k, m, .. }) => json!([p, k, m]),
            (CoprimePairs, Element::Rat { .. }) => {
                let r = e.as_ratio().unwrap();
                json!([r.numer(), r.denom()])
            }
            (_, Element::Rat { sign, p, k, m }) => json!([sign, p, k, m]),
            (Product(a, b), Element::Tuple(items)) if items.len() == 2 => {
                json!([a.encode(&items[0]), b.encode(&items[1])])
            }
            (_, Element::Tuple(items)) => Value::Array(items.iter().map(|x| AdHoc.encode(x)).collect()),
            (_, Element::Symbol(s)) => json!(s),
        }
    }
}

/// `(A×B)_n = ⋃ {A_i × B_j : max(i, j) = n}`.
pub(crate) fn product_component(
    a: impl Fn(u64) -> Vec<Element>,
    b: impl Fn(u64) -> Vec<Element>,
    n: u64,
) -> Vec<Element> {
    let mut out = Vec::new();
    let an = a(n);
    let bn = b(n);
    for j in 1..=n {
        let bj = if j == n { bn.clone() } else { b(j) };
        for x in &an {
            for y in &bj {
                out.push(Element::tuple(x.clone(), y.clone()));
            }
        }
    }
    for i in 1..n {
        for x in a(i) {
            for y in &bn {
                out.push(Element::tuple(x.clone(), y.clone()));
            }
        }
    }
    out.sort();
    out
}
