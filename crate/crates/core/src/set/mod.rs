//! Countable sets under canonical arrangements, their components and their
//! characteristic and size sequences.

mod element;
mod interval;
mod mask;

pub use element::{Element, Universe};
pub use mask::PeriodicMask;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::numtheory::{is_prime_trial, FnSpec, NumError};
use crate::seq::{self, Certificates, ClosedForm, ClosedFormCert, EventuallyPeriodic, Seq, SeqError};
use interval::IntervalShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("universes {left} and {right} are not arrangement-compatible")]
    IncompatibleUniverse { left: String, right: String },
    #[error("element {0} listed twice")]
    DuplicateElement(String),
    #[error("interval ({lo}, {hi}] is empty")]
    EmptyInterval { lo: String, hi: String },
    #[error("{element} is not an element of {universe}")]
    NotInUniverse { element: String, universe: String },
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Num(#[from] NumError),
}

type PredFn = Arc<dyn Fn(&Element) -> bool + Send + Sync>;

/// Decidable membership test for a subset.
#[derive(Clone)]
pub enum Predicate {
    /// eventually periodic subset of ℕ
    Mask(PeriodicMask),
    Custom {
        name: String,
        f: PredFn,
    },
}

impl Predicate {
    pub fn custom(name: impl Into<String>, f: impl Fn(&Element) -> bool + Send + Sync + 'static) -> Self {
        Predicate::Custom { name: name.into(), f: Arc::new(f) }
    }

    fn test(&self, e: &Element) -> bool {
        match self {
            Predicate::Mask(m) => matches!(e, Element::Int(z) if *z >= 1 && m.contains(*z as u64)),
            Predicate::Custom { f, .. } => f(e),
        }
    }
}

#[derive(Clone)]
enum Kind {
    Base,
    Subset { parent: CountableSet, pred: Predicate },
    Image(FnSpec),
    Primes { include_one: bool },
    Union(CountableSet, CountableSet),
    Inter(CountableSet, CountableSet),
    Diff(CountableSet, CountableSet),
    Product(CountableSet, CountableSet),
    Finite(BTreeSet<Element>),
    Interval(IntervalShape),
}

struct Desc {
    kind: Kind,
    universe: Universe,
    label: String,
    trusted: Option<Certificates>,
}

struct Node {
    desc: Arc<Desc>,
    size: OnceLock<Seq>,
    chars: OnceLock<Seq>,
}

/// An immutable countable set together with its canonical arrangement.
#[derive(Clone)]
pub struct CountableSet(Arc<Node>);

impl fmt::Debug for CountableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountableSet({} in {})", self.label(), self.universe().name())
    }
}

impl fmt::Display for CountableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn mask_label(m: &PeriodicMask) -> String {
    let bits = |n: u64| if m.contains(n) { '1' } else { '0' };
    let pre: String = (1..=m.preperiod()).map(bits).collect();
    let per: String = (m.preperiod() + 1..=m.preperiod() + m.period()).map(bits).collect();
    format!("mask[{pre}|{per}]")
}

impl CountableSet {
    fn make(kind: Kind, universe: Universe, label: impl Into<String>) -> Self {
        Self::make_trusted(kind, universe, label, None)
    }

    fn make_trusted(kind: Kind, universe: Universe, label: impl Into<String>, trusted: Option<Certificates>) -> Self {
        let desc = Desc { kind, universe, label: label.into(), trusted };
        CountableSet(Arc::new(Node { desc: Arc::new(desc), size: OnceLock::new(), chars: OnceLock::new() }))
    }

    /// The whole universe `u` under its canonical arrangement.
    pub fn base(u: Universe) -> Self {
        let label = u.name();
        Self::make(Kind::Base, u, label)
    }

    pub fn naturals() -> Self {
        Self::base(Universe::Nat)
    }

    pub fn nonneg_integers() -> Self {
        Self::base(Universe::Nat0)
    }

    pub fn integers() -> Self {
        Self::base(Universe::Int)
    }

    /// `ℕ⁻ = {−n : n ∈ ℕ}` inside ℤ, one element per component.
    pub fn negative_integers() -> Self {
        let pred = Predicate::custom("negative", |e| matches!(e, Element::Int(z) if *z < 0));
        let certs = Certificates::from_closed_form(ClosedForm::Index, 1);
        Self::make_trusted(Kind::Subset { parent: Self::integers(), pred }, Universe::Int, "N-", Some(certs))
    }

    pub fn unit_interval() -> Self {
        Self::base(Universe::UnitInterval)
    }

    pub fn positive_rationals() -> Self {
        Self::base(Universe::PosRational)
    }

    pub fn rationals() -> Self {
        Self::base(Universe::Rational)
    }

    /// Positive rationals arranged by `max(k, m)` over coprime pairs `(k, m)`.
    /// This arrangement is not the canonical one for ℚ⁺.
    pub fn noncanonical_positive_rationals() -> Self {
        Self::base(Universe::CoprimePairs)
    }

    /// `B ⊆ parent` with `B_n = parent_n ∩ B`.
    pub fn subset(parent: &CountableSet, pred: Predicate) -> Self {
        let label = match &pred {
            Predicate::Mask(m) => format!("{{x in {} : {}}}", parent.label(), mask_label(m)),
            Predicate::Custom { name, .. } => format!("{{x in {} : {name}}}", parent.label()),
        };
        Self::make(Kind::Subset { parent: parent.clone(), pred }, parent.universe().clone(), label)
    }

    pub fn masked(mask: PeriodicMask, label: impl Into<String>) -> Self {
        let s = Self::subset(&Self::naturals(), Predicate::Mask(mask));
        s.with_label(label)
    }

    pub fn evens() -> Self {
        Self::masked(PeriodicMask::residue(2, 2), "E")
    }

    pub fn odds() -> Self {
        Self::masked(PeriodicMask::residue(1, 2), "O")
    }

    /// `{f(m) : m ∈ ℕ}` for strictly increasing `f`.
    pub fn image_set(f: FnSpec) -> Self {
        let label = format!("image({f})");
        Self::make(Kind::Image(f), Universe::Nat, label)
    }

    /// `𝕄_k = {k, 2k, 3k, …}`
    pub fn multiples(k: u64) -> Self {
        assert!(k >= 1, "multiples of zero");
        Self::image_set(FnSpec::multiple(k)).with_label(format!("M{k}"))
    }

    pub fn squares() -> Self {
        Self::image_set(FnSpec::power(2)).with_label("S")
    }

    pub fn primes(include_one: bool) -> Self {
        Self::make(Kind::Primes { include_one }, Universe::Nat, if include_one { "P1" } else { "P" })
    }

    /// A finite set arranged by the subset rule of `universe`.
    pub fn finite_in(universe: Universe, elements: impl IntoIterator<Item = Element>) -> Result<Self, SetError> {
        let mut set = BTreeSet::new();
        for e in elements {
            if universe != Universe::AdHoc && !universe.contains(&e) {
                return Err(SetError::NotInUniverse { element: e.to_string(), universe: universe.name() });
            }
            if let Some(dup) = set.replace(e) {
                return Err(SetError::DuplicateElement(dup.to_string()));
            }
        }
        let label = format!("{{{}}}", set.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
        Ok(Self::make(Kind::Finite(set), universe, label))
    }

    /// An ad-hoc finite set with every element in component 1.
    pub fn finite_set(elements: impl IntoIterator<Item = Element>) -> Result<Self, SetError> {
        Self::finite_in(Universe::AdHoc, elements)
    }

    pub fn finite_nat(elements: &[u64]) -> Result<Self, SetError> {
        Self::finite_in(Universe::Nat, elements.iter().map(|&n| Element::nat(n)))
    }

    pub fn empty() -> Self {
        Self::finite_set([]).expect("no duplicates")
    }

    /// Rationals in `(lo, hi]` under the canonical arrangement of 𝕀, ℚ⁺ or ℚ,
    /// whichever is the smallest containing the interval.
    pub fn rational_interval(lo: Ratio<i64>, hi: Ratio<i64>) -> Result<Self, SetError> {
        let shape = IntervalShape::new(lo, hi, false)?;
        let u = shape.universe();
        Ok(Self::make(Kind::Interval(shape), u, format!("({lo},{hi}]")))
    }

    /// Rationals in `(lo, hi]` with `lo ≥ 0` under the coprime-pair arrangement.
    pub fn noncanonical_interval(lo: Ratio<i64>, hi: Ratio<i64>) -> Result<Self, SetError> {
        let shape = IntervalShape::new(lo, hi, true)?;
        Ok(Self::make(Kind::Interval(shape), Universe::CoprimePairs, format!("({lo},{hi}]*")))
    }

    fn compatible(a: &CountableSet, b: &CountableSet) -> Result<Universe, SetError> {
        if a.is_empty_finite() {
            return Ok(b.universe().clone());
        }
        if b.is_empty_finite() {
            return Ok(a.universe().clone());
        }
        a.universe()
            .join(b.universe())
            .ok_or_else(|| SetError::IncompatibleUniverse { left: a.universe().name(), right: b.universe().name() })
    }

    pub fn union(a: &CountableSet, b: &CountableSet) -> Result<Self, SetError> {
        let u = Self::compatible(a, b)?;
        Ok(Self::make(Kind::Union(a.clone(), b.clone()), u, format!("({} | {})", a.label(), b.label())))
    }

    pub fn inter(a: &CountableSet, b: &CountableSet) -> Result<Self, SetError> {
        let u = Self::compatible(a, b)?;
        Ok(Self::make(Kind::Inter(a.clone(), b.clone()), u, format!("({} & {})", a.label(), b.label())))
    }

    pub fn diff(a: &CountableSet, b: &CountableSet) -> Result<Self, SetError> {
        Self::compatible(a, b)?;
        let u = a.universe().clone();
        Ok(Self::make(Kind::Diff(a.clone(), b.clone()), u, format!("({} \\ {})", a.label(), b.label())))
    }

    pub fn cartesian(a: &CountableSet, b: &CountableSet) -> Self {
        let u = Universe::product(a.universe().clone(), b.universe().clone());
        Self::make(Kind::Product(a.clone(), b.clone()), u, format!("({} x {})", a.label(), b.label()))
    }

    /// Same set, different display name.
    pub fn with_label(&self, label: impl Into<String>) -> Self {
        let d = &self.0.desc;
        Self::make_trusted(d.kind.clone(), d.universe.clone(), label, d.trusted.clone())
    }

    pub fn label(&self) -> &str {
        &self.0.desc.label
    }

    pub fn universe(&self) -> &Universe {
        &self.0.desc.universe
    }

    pub fn same_as(&self, other: &CountableSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn is_empty_finite(&self) -> bool {
        matches!(&self.0.desc.kind, Kind::Finite(s) if s.is_empty())
    }

    pub fn contains(&self, e: &Element) -> Result<bool, SetError> {
        Ok(self.0.desc.contains(e)?)
    }

    /// Component index of `e` when `e` belongs to the set.
    pub fn index_of(&self, e: &Element) -> Result<Option<u64>, SetError> {
        if !self.contains(e)? {
            return Ok(None);
        }
        Ok(self.universe().index_of(e))
    }

    /// `A_n`, sorted by the element order.
    pub fn component(&self, n: u64) -> Result<Vec<Element>, SetError> {
        Ok(self.0.desc.component(n)?)
    }

    /// `χ_n = |A_n|`
    pub fn chi(&self, n: u64) -> Result<BigUint, SetError> {
        Ok(self.0.desc.chi(n)?)
    }

    /// `σ(A)`, memoised per set and carrying whatever certificates the
    /// construction supports.
    pub fn size_seq(&self) -> Seq {
        self.0
            .size
            .get_or_init(|| {
                let d = self.0.desc.clone();
                let s = Seq::from_increments(format!("sigma({})", self.label()), move |n| d.chi(n));
                s.with_certificates(self.size_certificates())
            })
            .clone()
    }

    /// `χ(A)`
    pub fn char_seq(&self) -> Seq {
        self.0
            .chars
            .get_or_init(|| {
                let d = self.0.desc.clone();
                let s = Seq::try_from_fn(format!("chi({})", self.label()), move |n| d.chi(n));
                s.with_certificates(self.char_certificates())
            })
            .clone()
    }

    /// `{"n": n, "elements": [...]}`
    pub fn component_json(&self, n: u64) -> Result<Value, SetError> {
        let u = self.universe();
        let elems: Vec<Value> = self.component(n)?.iter().map(|e| u.encode(e)).collect();
        Ok(json!({"n": n, "elements": elems}))
    }

    /// Elements of a finite construction, when the set is structurally finite.
    pub fn finite_elements(&self) -> Option<Vec<Element>> {
        match &self.0.desc.kind {
            Kind::Finite(s) => Some(s.iter().cloned().collect()),
            _ => None,
        }
    }

    /// The set as a periodic mask on ℕ, when its construction allows one.
    pub fn as_mask(&self) -> Option<PeriodicMask> {
        let d = &self.0.desc;
        if d.universe != Universe::Nat {
            return None;
        }
        match &d.kind {
            Kind::Base => Some(PeriodicMask::all()),
            Kind::Subset { parent, pred: Predicate::Mask(m) } => parent.as_mask().map(|p| p.inter(m)),
            Kind::Image(f) => f.as_multiple().map(|k| PeriodicMask::residue(k, k)),
            Kind::Finite(s) => Some(PeriodicMask::finite(s.iter().filter_map(|e| match e {
                Element::Int(z) => Some(*z as u64),
                _ => None,
            }))),
            Kind::Union(a, b) => Some(a.as_mask()?.union(&b.as_mask()?)),
            Kind::Inter(a, b) => Some(a.as_mask()?.inter(&b.as_mask()?)),
            Kind::Diff(a, b) => Some(a.as_mask()?.diff(&b.as_mask()?)),
            _ => None,
        }
    }

    /// Structural (sound, incomplete) test for `self ⊆ other`.
    pub fn known_subset_of(&self, other: &CountableSet) -> bool {
        if self.same_as(other) || self.is_empty_finite() {
            return true;
        }
        if let Kind::Base = other.0.desc.kind {
            if self.universe().embeds_in(other.universe()) {
                return true;
            }
        }
        if let (Some(a), Some(b)) = (self.as_mask(), other.as_mask()) {
            return a.diff(&b) == PeriodicMask::finite([]);
        }
        match &self.0.desc.kind {
            Kind::Subset { parent, .. } if parent.known_subset_of(other) => return true,
            Kind::Inter(a, b) if a.known_subset_of(other) || b.known_subset_of(other) => return true,
            Kind::Diff(a, _) if a.known_subset_of(other) => return true,
            Kind::Union(a, b) if a.known_subset_of(other) && b.known_subset_of(other) => return true,
            Kind::Finite(s) if s.iter().all(|e| other.contains(e).unwrap_or(false)) => {
                return true;
            }
            _ => {}
        }
        match &other.0.desc.kind {
            Kind::Union(a, b) => self.known_subset_of(a) || self.known_subset_of(b),
            _ => false,
        }
    }

    fn size_certificates(&self) -> Certificates {
        let d = &self.0.desc;
        if let Some(t) = &d.trusted {
            return t.clone();
        }
        if let Some(m) = self.as_mask() {
            return Certificates::from_periodic(m.size_certificate());
        }
        match &d.kind {
            Kind::Base => Certificates::from_closed_form(base_form(&d.universe), 1),
            Kind::Subset { .. } => Certificates::none(),
            Kind::Image(f) => Certificates::from_closed_form(ClosedForm::FloorInverse(f.clone()), 1),
            Kind::Primes { include_one } => {
                Certificates::from_closed_form(ClosedForm::PrimePi { include_one: *include_one }, 1)
            }
            Kind::Finite(s) => finite_certificates(&d.universe, s.iter()),
            Kind::Interval(shape) => {
                let c = shape.size_form();
                Certificates { closed_form: Some(c), ..Certificates::none() }.completed()
            }
            Kind::Product(a, b) => seq::mul(&a.size_seq(), &b.size_seq()).certificates().clone(),
            Kind::Union(a, b) => {
                if b.known_subset_of(a) {
                    return a.size_seq().certificates().clone();
                }
                if a.known_subset_of(b) {
                    return b.size_seq().certificates().clone();
                }
                let Ok(i) = Self::inter(a, b) else { return Certificates::none() };
                let si = i.size_seq();
                if si.certificates().is_empty() {
                    return Certificates::none();
                }
                let sum = seq::add(&a.size_seq(), &b.size_seq());
                difference_certificates(&sum, &si)
            }
            Kind::Inter(a, b) => {
                if a.known_subset_of(b) {
                    return a.size_seq().certificates().clone();
                }
                if b.known_subset_of(a) {
                    return b.size_seq().certificates().clone();
                }
                let (fin, other) = match (a.finite_elements(), b.finite_elements()) {
                    (Some(f), _) => (f, b),
                    (_, Some(f)) => (f, a),
                    _ => return Certificates::none(),
                };
                match filter_elements(fin, other, true) {
                    Some(kept) => finite_certificates(&d.universe, kept.iter()),
                    None => Certificates::none(),
                }
            }
            Kind::Diff(a, b) => {
                if let Some(f) = a.finite_elements() {
                    return match filter_elements(f, b, false) {
                        Some(kept) => finite_certificates(&d.universe, kept.iter()),
                        None => Certificates::none(),
                    };
                }
                let sub = if b.known_subset_of(a) {
                    b.size_seq()
                } else {
                    match Self::inter(a, b) {
                        Ok(i) => i.size_seq(),
                        Err(_) => return Certificates::none(),
                    }
                };
                if sub.certificates().is_empty() {
                    return Certificates::none();
                }
                difference_certificates(&a.size_seq(), &sub)
            }
        }
    }

    fn char_certificates(&self) -> Certificates {
        let d = &self.0.desc;
        if let Some(m) = self.as_mask() {
            return Certificates::from_periodic(m.indicator_certificate());
        }
        match (&d.kind, &d.universe) {
            (Kind::Base, Universe::Nat0) => Certificates::from_closed_form(ClosedForm::constant(1), 2),
            (Kind::Base, Universe::Int) => Certificates::from_closed_form(ClosedForm::constant(2), 2),
            (Kind::Base, Universe::UnitInterval) => Certificates::from_closed_form(ClosedForm::Totient, 1),
            (Kind::Base, Universe::CoprimePairs) => {
                Certificates::from_closed_form(ClosedForm::mul(ClosedForm::constant(2), ClosedForm::Totient), 2)
            }
            (Kind::Finite(_), _) => Certificates::from_closed_form(ClosedForm::constant(0), self.finite_top() + 1),
            _ => Certificates::none(),
        }
    }

    fn finite_top(&self) -> u64 {
        match &self.0.desc.kind {
            Kind::Finite(s) => s.iter().filter_map(|e| self.universe().index_of(e)).max().unwrap_or(0),
            _ => 0,
        }
    }
}

fn filter_elements(elems: Vec<Element>, other: &CountableSet, keep_members: bool) -> Option<Vec<Element>> {
    let mut out = Vec::new();
    for e in elems {
        if other.contains(&e).ok()? == keep_members {
            out.push(e);
        }
    }
    Some(out)
}

/// Certificates of `a − b` for `b ≤ a`, derived without evaluating terms.
fn difference_certificates(a: &Seq, b: &Seq) -> Certificates {
    match seq::sub_checked(a, b, 0) {
        Ok(s) => s.certificates().clone(),
        Err(_) => Certificates::none(),
    }
}

/// Eventually constant size of a finite set.
fn finite_certificates<'a>(u: &Universe, elems: impl Iterator<Item = &'a Element>) -> Certificates {
    let mut count = 0u64;
    let mut top = 0u64;
    for e in elems {
        count += 1;
        top = top.max(u.index_of(e).unwrap_or(1));
    }
    let p = EventuallyPeriodic::new(top, BigInt::from(count), vec![BigInt::zero()]);
    let closed = ClosedFormCert { expr: ClosedForm::constant(count), valid_from: top.max(1) };
    Certificates { periodic: Some(p), closed_form: Some(closed), envelope: None }.completed()
}

/// `σ` of a whole universe as a closed form.
fn base_form(u: &Universe) -> ClosedForm {
    use ClosedForm as C;
    let c = |k: i64| C::constant(k);
    match u {
        Universe::Nat => C::Index,
        Universe::Nat0 => C::add(C::Index, c(1)),
        Universe::Int => C::add(C::mul(c(2), C::Index), c(1)),
        Universe::UnitInterval => C::TotientSum,
        Universe::PosRational => C::mul(C::add(C::Index, c(1)), C::TotientSum),
        Universe::Rational => C::add(C::mul(c(2), base_form(&Universe::PosRational)), c(1)),
        Universe::CoprimePairs => C::sub(C::mul(c(2), C::TotientSum), c(1)),
        Universe::Product(a, b) => C::mul(base_form(a), base_form(b)),
        Universe::AdHoc => c(0),
    }
}

fn merge_sorted(a: Vec<Element>, b: Vec<Element>) -> Vec<Element> {
    let mut out: Vec<Element> = a.into_iter().chain(b).collect();
    out.sort();
    out.dedup();
    out
}

impl Desc {
    fn contains(&self, e: &Element) -> Result<bool, SeqError> {
        Ok(match &self.kind {
            Kind::Base => self.universe.contains(e),
            Kind::Subset { parent, pred } => parent.0.desc.contains(e)? && pred.test(e),
            Kind::Image(f) => match (e, f.as_multiple()) {
                (Element::Int(z), Some(k)) if *z >= 1 => (*z as u64).is_multiple_of(k),
                (Element::Int(z), None) if *z >= 1 => f.hits(*z as u64)?,
                _ => false,
            },
            Kind::Primes { include_one } => match e {
                Element::Int(z) if *z >= 1 => is_prime_trial(*z as u64) || (*include_one && *z == 1),
                _ => false,
            },
            Kind::Union(a, b) => a.0.desc.contains(e)? || b.0.desc.contains(e)?,
            Kind::Inter(a, b) => a.0.desc.contains(e)? && b.0.desc.contains(e)?,
            Kind::Diff(a, b) => a.0.desc.contains(e)? && !b.0.desc.contains(e)?,
            Kind::Product(a, b) => match e {
                Element::Tuple(items) if items.len() == 2 => {
                    a.0.desc.contains(&items[0])? && b.0.desc.contains(&items[1])?
                }
                _ => false,
            },
            Kind::Finite(s) => s.contains(e),
            Kind::Interval(shape) => self.universe.contains(e) && shape.contains(e),
        })
    }

    fn component(&self, n: u64) -> Result<Vec<Element>, SeqError> {
        if n == 0 {
            return Ok(Vec::new());
        }
        Ok(match &self.kind {
            Kind::Base => self.universe.component(n),
            Kind::Subset { parent, pred } => parent.0.desc.component(n)?.into_iter().filter(|e| pred.test(e)).collect(),
            Kind::Image(_) | Kind::Primes { .. } => {
                let e = Element::nat(n);
                if self.contains(&e)? {
                    vec![e]
                } else {
                    Vec::new()
                }
            }
            Kind::Union(a, b) => merge_sorted(a.0.desc.component(n)?, b.0.desc.component(n)?),
            Kind::Inter(a, b) => {
                let mut out = Vec::new();
                for e in a.0.desc.component(n)? {
                    if b.0.desc.contains(&e)? {
                        out.push(e);
                    }
                }
                out
            }
            Kind::Diff(a, b) => {
                let mut out = Vec::new();
                for e in a.0.desc.component(n)? {
                    if !b.0.desc.contains(&e)? {
                        out.push(e);
                    }
                }
                out
            }
            Kind::Product(a, b) => {
                let (da, db) = (a.0.desc.clone(), b.0.desc.clone());
                let mut err = None;
                let mut grab = |d: &Desc, i: u64| {
                    d.component(i).unwrap_or_else(|e| {
                        err = Some(e);
                        Vec::new()
                    })
                };
                let ca: BTreeMap<u64, Vec<Element>> = (1..=n).map(|i| (i, grab(&da, i))).collect();
                let cb: BTreeMap<u64, Vec<Element>> = (1..=n).map(|j| (j, grab(&db, j))).collect();
                if let Some(e) = err {
                    return Err(e);
                }
                element::product_component(|i| ca[&i].clone(), |j| cb[&j].clone(), n)
            }
            Kind::Finite(s) => s.iter().filter(|e| self.index(e) == Some(n)).cloned().collect(),
            Kind::Interval(shape) => shape.component(n),
        })
    }

    fn index(&self, e: &Element) -> Option<u64> {
        self.universe.index_of(e)
    }

    fn chi(&self, n: u64) -> Result<BigUint, SeqError> {
        if n == 0 {
            return Ok(BigUint::zero());
        }
        let count = |v: Vec<Element>| BigUint::from(v.len());
        Ok(match &self.kind {
            Kind::Base => self.universe.chi(n),
            Kind::Image(_) | Kind::Primes { .. } => BigUint::from(u8::from(self.contains(&Element::nat(n))?)),
            Kind::Product(a, b) => {
                // pairs with max(i, j) = n
                let (sa, sb) = (a.size_seq(), b.size_seq());
                a.0.desc.chi(n)? * sb.value(n)? + sa.value(n - 1)? * b.0.desc.chi(n)?
            }
            Kind::Interval(shape) => BigUint::from(shape.count(n)),
            Kind::Diff(a, b) if b.known_subset_of(a) => {
                let (x, y) = (a.0.desc.chi(n)?, b.0.desc.chi(n)?);
                x - y
            }
            Kind::Inter(a, b) if a.known_subset_of(b) => a.0.desc.chi(n)?,
            Kind::Inter(a, b) if b.known_subset_of(a) => b.0.desc.chi(n)?,
            Kind::Union(a, b) if b.known_subset_of(a) => a.0.desc.chi(n)?,
            Kind::Union(a, b) if a.known_subset_of(b) => b.0.desc.chi(n)?,
            _ => count(self.component(n)?),
        })
    }
}

/// Size of a finite set as a plain number, if the set is certified finite.
pub fn eventual_size(s: &CountableSet) -> Option<BigUint> {
    let p = s.size_seq().certificates().periodic.clone()?;
    p.eventual_constant()?.to_biguint()
}

/// Convenience: the rational `n/d`.
pub fn q(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

#[cfg(test)]
mod tests;
