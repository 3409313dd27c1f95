//! Laurent polynomials in two formal variables `q` and `t`.
//!
//! Every scalar in the crate lives here: coefficients of symmetric functions,
//! ascent generating functions, the bounce weights `t^k`. The coefficient
//! field is generic (see [`Coefficient`]); the crate root fixes it to
//! arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("no exact Laurent quotient exists")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot shift q in a polynomial with negative q-exponents")]
    NegativeExponentShift,
}

/// Exact field used for the coefficients of a [`LaurentQT`].
///
/// Implemented for [`BigRational`] (the default everywhere) and for
/// [`Rational64`], which is faster but panics on overflow.
pub trait Coefficient:
    Clone + fmt::Debug + PartialEq + num_traits::Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_big_rational(r: &BigRational) -> Self;
    fn to_big_rational(&self) -> BigRational;

    fn from_int(n: i64) -> Self {
        Self::from_big_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn is_nonneg(&self) -> bool {
        !self.to_big_rational().is_negative()
    }
}

impl Coefficient for BigRational {
    fn from_big_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
}

impl Coefficient for Rational64 {
    fn from_big_rational(r: &BigRational) -> Self {
        let num = r.numer().to_i64().expect("numerator overflows i64");
        let den = r.denom().to_i64().expect("denominator overflows i64");
        Rational64::new(num, den)
    }
    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
}

/// Exponent pair `(q-exponent, t-exponent)`.
pub type Exponent = (i32, i32);

/// A finite sum `Σ c · q^a t^b` with `a, b ∈ ℤ`.
///
/// Terms are kept in a `BTreeMap` keyed lexicographically on `(a, b)` and no
/// stored coefficient is ever zero, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentQT<C> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coefficient> Default for LaurentQT<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentQT<C> {
    pub fn zero() -> Self {
        LaurentQT { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn monomial(c: C, q_exp: i32, t_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((q_exp, t_exp), c);
        }
        LaurentQT { terms }
    }

    /// `q^k`
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(C::one(), k, 0)
    }

    /// `t^k`
    pub fn t_pow(k: i32) -> Self {
        Self::monomial(C::one(), 0, k)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    /// `Σ_k counts[k] q^k`, the usual way enumeration results come back.
    pub fn from_q_counts(counts: &[u64]) -> Self {
        let mut out = Self::zero();
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                let c = i64::try_from(c).expect("count overflows i64");
                out.terms.insert((k as i32, 0), C::from_int(c));
            }
        }
        out
    }

    /// Builds a value from arbitrary `(exponent, coefficient)` pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of `(q-exp, t-exp)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, q_exp: i32, t_exp: i32) -> C {
        self.terms.get(&(q_exp, t_exp)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQT {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, q_exp: i32, t_exp: i32) -> Self {
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + q_exp, b + t_exp), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lexicographically largest exponent.
    pub fn leading(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    /// `(min, max)` of the q-exponents, `None` for zero.
    pub fn q_range(&self) -> Option<(i32, i32)> {
        let min = self.terms.keys().map(|e| e.0).min()?;
        let max = self.terms.keys().map(|e| e.0).max()?;
        Some((min, max))
    }

    pub fn t_range(&self) -> Option<(i32, i32)> {
        let min = self.terms.keys().map(|e| e.1).min()?;
        let max = self.terms.keys().map(|e| e.1).max()?;
        Some((min, max))
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    /// True iff every coefficient is `≥ 0`. The zero polynomial counts as
    /// non-negative.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| c.is_nonneg())
    }

    /// Exact quotient `a / b` in the Laurent ring.
    ///
    /// Runs lexicographic long division. A quotient, when it exists, has its
    /// q- and t-exponents inside the box cut out by the extreme exponents of
    /// `a` and `b`, so any quotient term outside that box proves that no
    /// exact quotient exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, CoeffError> {
        if divisor.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (aq_lo, aq_hi) = self.q_range().unwrap();
        let (at_lo, at_hi) = self.t_range().unwrap();
        let (bq_lo, bq_hi) = divisor.q_range().unwrap();
        let (bt_lo, bt_hi) = divisor.t_range().unwrap();
        let q_box = (aq_lo - bq_lo, aq_hi - bq_hi);
        let t_box = (at_lo - bt_lo, at_hi - bt_hi);
        if q_box.0 > q_box.1 || t_box.0 > t_box.1 {
            return Err(CoeffError::NotDivisible);
        }
        let (&(lq, lt), lc) = divisor.leading().unwrap();
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&(rq, rt), rc)) = rem.leading() {
            let (eq, et) = (rq - lq, rt - lt);
            if eq < q_box.0 || eq > q_box.1 || et < t_box.0 || et > t_box.1 {
                return Err(CoeffError::NotDivisible);
            }
            let c = rc.clone() / lc.clone();
            let step = divisor.mul_monomial(eq, et).scale(&c);
            rem -= &step;
            quot.add_term((eq, et), c);
        }
        Ok(quot)
    }

    /// Substitutes `q ↦ q + c`, expanding binomially; `t` is untouched.
    pub fn shift_q(&self, c: i64) -> Result<Self, CoeffError> {
        if c == 0 {
            return Ok(self.clone());
        }
        if self.terms.keys().any(|e| e.0 < 0) {
            return Err(CoeffError::NegativeExponentShift);
        }
        let c_big = BigInt::from(c);
        let mut out = Self::zero();
        for (&(k, j), v) in &self.terms {
            let k = k as u32;
            let mut binom = BigInt::one();
            // term for q^i: C(k, i) c^(k-i)
            for i in (0..=k).rev() {
                let weight = &binom * num_traits::pow(c_big.clone(), (k - i) as usize);
                let w = C::from_big_rational(&BigRational::from_integer(weight));
                out.add_term((i as i32, j), v.clone() * w);
                if i > 0 {
                    // C(k, i-1) = C(k, i) * i / (k - i + 1)
                    binom = (binom * BigInt::from(i)).div_floor(&BigInt::from(k - i + 1));
                }
            }
        }
        Ok(out)
    }

    /// Substitutes `q ↦ q⁻¹`.
    pub fn subst_q_reciprocal(&self) -> Self {
        LaurentQT {
            terms: self.terms.iter().map(|(&(a, b), v)| ((-a, b), v.clone())).collect(),
        }
    }

    /// Exchanges the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        LaurentQT {
            terms: self.terms.iter().map(|(&(a, b), v)| ((b, a), v.clone())).collect(),
        }
    }

    /// Evaluates `q` at an integer, leaving a Laurent polynomial in `t`.
    /// Negative powers of `q` are only allowed for non-zero values.
    pub fn specialize_q(&self, value: i64) -> Result<Self, CoeffError> {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            let w = if a >= 0 {
                BigRational::from_integer(num_traits::pow(BigInt::from(value), a as usize))
            } else if value == 0 {
                return Err(CoeffError::DivisionByZero);
            } else {
                BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(value), (-a) as usize))
            };
            out.add_term((0, b), v.clone() * C::from_big_rational(&w));
        }
        Ok(out)
    }

    /// Coefficient list of a polynomial in `q` alone, lowest degree first.
    /// Returns `None` when `t` occurs or a q-exponent is negative.
    pub fn q_coefficients(&self) -> Option<Vec<C>> {
        if self.terms.keys().any(|&(a, b)| a < 0 || b != 0) {
            return None;
        }
        let deg = self.terms.keys().map(|e| e.0).max().unwrap_or(-1);
        Some((0..=deg).map(|k| self.coeff(k, 0)).collect())
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentQT<D> {
        LaurentQT::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl<C: Coefficient> Zero for LaurentQT<C> {
    fn zero() -> Self {
        LaurentQT::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for LaurentQT<C> {
    fn one() -> Self {
        LaurentQT::one()
    }
}

impl<'a, C: Coefficient> AddAssign<&'a LaurentQT<C>> for LaurentQT<C> {
    fn add_assign(&mut self, rhs: &'a LaurentQT<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a, C: Coefficient> SubAssign<&'a LaurentQT<C>> for LaurentQT<C> {
    fn sub_assign(&mut self, rhs: &'a LaurentQT<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'b, C: Coefficient> Mul<&'b LaurentQT<C>> for &LaurentQT<C> {
    type Output = LaurentQT<C>;
    fn mul(self, rhs: &'b LaurentQT<C>) -> LaurentQT<C> {
        let mut out = LaurentQT::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<'a, C: Coefficient> MulAssign<&'a LaurentQT<C>> for LaurentQT<C> {
    fn mul_assign(&mut self, rhs: &'a LaurentQT<C>) {
        *self = &*self * rhs;
    }
}

impl<'b, C: Coefficient> Add<&'b LaurentQT<C>> for &LaurentQT<C> {
    type Output = LaurentQT<C>;
    fn add(self, rhs: &'b LaurentQT<C>) -> LaurentQT<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'b, C: Coefficient> Sub<&'b LaurentQT<C>> for &LaurentQT<C> {
    type Output = LaurentQT<C>;
    fn sub(self, rhs: &'b LaurentQT<C>) -> LaurentQT<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Neg for &LaurentQT<C> {
    type Output = LaurentQT<C>;
    fn neg(self) -> LaurentQT<C> {
        LaurentQT {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr<LaurentQT<C>> for LaurentQT<C> {
            type Output = LaurentQT<C>;
            fn $method(self, rhs: LaurentQT<C>) -> LaurentQT<C> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, C: Coefficient> $tr<&'a LaurentQT<C>> for LaurentQT<C> {
            type Output = LaurentQT<C>;
            fn $method(self, rhs: &'a LaurentQT<C>) -> LaurentQT<C> {
                (&self).$method(rhs)
            }
        }
        impl<'a, C: Coefficient> $tr<LaurentQT<C>> for &'a LaurentQT<C> {
            type Output = LaurentQT<C>;
            fn $method(self, rhs: LaurentQT<C>) -> LaurentQT<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Coefficient> AddAssign<LaurentQT<C>> for LaurentQT<C> {
    fn add_assign(&mut self, rhs: LaurentQT<C>) {
        *self += &rhs;
    }
}

impl<C: Coefficient> SubAssign<LaurentQT<C>> for LaurentQT<C> {
    fn sub_assign(&mut self, rhs: LaurentQT<C>) {
        *self -= &rhs;
    }
}

impl<C: Coefficient> Neg for LaurentQT<C> {
    type Output = LaurentQT<C>;
    fn neg(self) -> LaurentQT<C> {
        -&self
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, var: &str, e: i32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    match e {
        1 => write!(f, "{var}"),
        e if e < 0 => write!(f, "{var}^({e})"),
        e => write!(f, "{var}^{e}"),
    }
}

/// Expanded form, highest exponent first, `q` before `t`:
/// `q^2*t - 2*q + 1/2`.
impl<C: Coefficient> fmt::Display for LaurentQT<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let r = c.to_big_rational();
            let neg = r.is_negative();
            let abs = r.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut first = true;
            if !abs.is_one() || (a == 0 && b == 0) {
                write!(f, "{abs}")?;
                first = false;
            }
            fmt_monomial(f, "q", a, &mut first)?;
            fmt_monomial(f, "t", b, &mut first)?;
        }
        Ok(())
    }
}

/// One serialized term: `{"q": 1, "t": 0, "num": "3", "den": "2"}`.
#[derive(Serialize, Deserialize)]
struct TermRepr {
    q: i32,
    t: i32,
    num: String,
    den: String,
}

impl<C: Coefficient> Serialize for LaurentQT<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(q, t), c)| {
                let r = c.to_big_rational();
                TermRepr {
                    q,
                    t,
                    num: r.numer().to_string(),
                    den: r.denom().to_string(),
                }
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for LaurentQT<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = LaurentQT::zero();
        for t in terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            out.add_term((t.q, t.t), C::from_big_rational(&BigRational::new(num, den)));
        }
        Ok(out)
    }
}
