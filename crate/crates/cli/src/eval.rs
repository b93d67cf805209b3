//! Elaboration of parsed expressions into sets and sequences.

use num_traits::{One, Signed, Zero};
use sizecalc_core::numtheory::FnSpec;
use sizecalc_core::seq::{self, Seq, SeqError};
use sizecalc_core::set::{CountableSet, Element, SetError, Universe};

use crate::syntax::{FExpr, Lit, Named, Rat, SetExpr, SizeExpr};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("universe mismatch: {0}")]
    UniverseMismatch(SetError),
    #[error(transparent)]
    Set(SetError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("{0}")]
    Invalid(String),
}

impl From<SetError> for EvalError {
    fn from(e: SetError) -> Self {
        match e {
            SetError::IncompatibleUniverse { .. } => EvalError::UniverseMismatch(e),
            SetError::Seq(s) => EvalError::Seq(s),
            e => EvalError::Set(e),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    /// `P` includes 1
    pub one_is_prime: bool,
    /// `Q+` and `interval` use the coprime-pair arrangement
    pub noncanonical_q: bool,
    /// scan length for checked subtraction
    pub horizon: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context { one_is_prime: false, noncanonical_q: false, horizon: seq::DEFAULT_HORIZON }
    }
}

/// Shape of a literal list, used to pick the smallest universe.
fn lit_universe(lits: &[&Lit], noncanonical: bool) -> Result<Universe, EvalError> {
    let nums: Vec<Rat> = lits
        .iter()
        .filter_map(|l| match l {
            Lit::Num(r) => Some(*r),
            Lit::Pair(..) => None,
        })
        .collect();
    if nums.len() == lits.len() {
        let zero = Rat::zero();
        return Ok(if nums.iter().all(|r| r.is_integer()) {
            match nums.iter().min() {
                Some(m) if *m < zero => Universe::Int,
                Some(m) if m.is_zero() => Universe::Nat0,
                _ => Universe::Nat,
            }
        } else if nums.iter().all(|r| r.is_positive() && *r <= Rat::one()) {
            Universe::UnitInterval
        } else if nums.iter().all(|r| r.is_positive()) {
            if noncanonical {
                Universe::CoprimePairs
            } else {
                Universe::PosRational
            }
        } else {
            Universe::Rational
        });
    }
    if !nums.is_empty() {
        return Err(EvalError::Invalid("finite sets cannot mix pairs and numbers".into()));
    }
    let (firsts, seconds): (Vec<&Lit>, Vec<&Lit>) = lits
        .iter()
        .map(|l| match l {
            Lit::Pair(a, b) => (&**a, &**b),
            Lit::Num(_) => unreachable!(),
        })
        .unzip();
    Ok(Universe::product(lit_universe(&firsts, noncanonical)?, lit_universe(&seconds, noncanonical)?))
}

fn lit_element(l: &Lit, u: &Universe) -> Element {
    match (l, u) {
        (Lit::Pair(a, b), Universe::Product(ua, ub)) => Element::Tuple(vec![lit_element(a, ua), lit_element(b, ub)]),
        (Lit::Num(r), Universe::Nat | Universe::Nat0 | Universe::Int) => Element::Int(r.to_integer()),
        (Lit::Num(r), _) => Element::rational(*r),
        (Lit::Pair(..), _) => unreachable!("pairs always get a product universe"),
    }
}

impl Context {
    pub fn set(&self, e: &SetExpr) -> Result<CountableSet, EvalError> {
        let s = match e {
            SetExpr::Named(n) => match n {
                Named::N => CountableSet::naturals(),
                Named::N0 => CountableSet::nonneg_integers(),
                Named::Z => CountableSet::integers(),
                Named::Q => CountableSet::rationals(),
                Named::QPlus if self.noncanonical_q => CountableSet::noncanonical_positive_rationals(),
                Named::QPlus => CountableSet::positive_rationals(),
                Named::I => CountableSet::unit_interval(),
                Named::E => CountableSet::evens(),
                Named::O => CountableSet::odds(),
                Named::P => CountableSet::primes(self.one_is_prime),
                Named::S => CountableSet::squares(),
            },
            SetExpr::Multiples(k) => CountableSet::multiples(*k),
            SetExpr::Finite(items) if items.is_empty() => CountableSet::empty(),
            SetExpr::Finite(items) => {
                let refs: Vec<&Lit> = items.iter().collect();
                let u = lit_universe(&refs, self.noncanonical_q)?;
                let elems: Vec<Element> = items.iter().map(|l| lit_element(l, &u)).collect();
                CountableSet::finite_in(u, elems)?
            }
            SetExpr::Image(f) => CountableSet::image_set(match f {
                FExpr::Poly(c) => FnSpec::Poly(c.clone()),
                FExpr::Exp(b) => FnSpec::Exp(*b),
            }),
            SetExpr::Interval(lo, hi) if self.noncanonical_q => CountableSet::noncanonical_interval(*lo, *hi)?,
            SetExpr::Interval(lo, hi) => CountableSet::rational_interval(*lo, *hi)?,
            SetExpr::Union(a, b) => CountableSet::union(&self.set(a)?, &self.set(b)?)?,
            SetExpr::Inter(a, b) => CountableSet::inter(&self.set(a)?, &self.set(b)?)?,
            SetExpr::Diff(a, b) => CountableSet::diff(&self.set(a)?, &self.set(b)?)?,
            SetExpr::Product(a, b) => CountableSet::cartesian(&self.set(a)?, &self.set(b)?),
        };
        Ok(s.with_label(e.to_string()))
    }

    pub fn size(&self, e: &SizeExpr) -> Result<Seq, EvalError> {
        let s = match e {
            SizeExpr::Int(k) => Seq::constant(*k),
            SizeExpr::Alpha => Seq::alpha(),
            SizeExpr::Phi => CountableSet::unit_interval().size_seq(),
            SizeExpr::Sigma(a) => self.set(a)?.size_seq(),
            SizeExpr::Chi(a) => self.set(a)?.char_seq(),
            SizeExpr::Meet(a, b) => seq::meet(&self.size(a)?, &self.size(b)?),
            SizeExpr::Join(a, b) => seq::join(&self.size(a)?, &self.size(b)?),
            SizeExpr::Add(a, b) => seq::add(&self.size(a)?, &self.size(b)?),
            SizeExpr::Sub(a, b) => seq::sub_checked(&self.size(a)?, &self.size(b)?, self.horizon)?,
            SizeExpr::Mul(a, b) => match (&**a, &**b) {
                (SizeExpr::Int(k), x) | (x, SizeExpr::Int(k)) => seq::scalar_mul(*k, &self.size(x)?),
                _ => seq::mul(&self.size(a)?, &self.size(b)?),
            },
        };
        Ok(s.relabel(e.to_string()))
    }
}
