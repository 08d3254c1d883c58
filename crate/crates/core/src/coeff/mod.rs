//! Exact coefficient fields: the rationals and the rational function field
//! in one indeterminate `q`.
//!
//! Every value carries its field tag. Arithmetic across tags is refused by the
//! `checked_*` methods; the operator impls panic instead, and are meant for
//! code that has already validated a single tag (a presentation, a Groebner
//! computation).

mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::parse_coefficient;
pub use poly::Poly;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("coefficient field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
}

/// Which coefficient field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    /// The rationals.
    #[serde(rename = "Q")]
    Rational,
    /// Rational functions in `q` over the rationals.
    #[serde(rename = "Q(q)")]
    RationalFunction,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::RationalFunction => "Q(q)",
        }
    }

    pub fn parse(s: &str) -> Option<Field> {
        match s.trim() {
            "Q" => Some(Field::Rational),
            "Q(q)" => Some(Field::RationalFunction),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Element of the rational function field: `numerator / denominator` with
/// coprime parts and a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { numerator: Poly::zero(), denominator: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { numerator: Poly::one(), denominator: Poly::one() }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::monomial(Rational::one(), 1))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { numerator: p, denominator: Poly::one() }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    /// Builds `num / den` in canonical form; `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").recip();
        Some(RationalFunction { numerator: num.scale(&lead), denominator: den.scale(&lead) })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        if self.denominator == o.denominator {
            return Self::new(self.numerator.add(&o.numerator), self.denominator.clone()).unwrap();
        }
        let num = self.numerator.mul(&o.denominator).add(&o.numerator.mul(&self.denominator));
        Self::new(num, self.denominator.mul(&o.denominator)).unwrap()
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.numerator.mul(&o.numerator), self.denominator.mul(&o.denominator)).unwrap()
    }

    fn neg(&self) -> Self {
        RationalFunction { numerator: self.numerator.neg(), denominator: self.denominator.clone() }
    }

    fn inv(&self) -> Option<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.is_monomial() && !self.numerator.to_string().contains(' ') {
            write!(f, "{}", self.numerator)?;
        } else {
            write!(f, "({})", self.numerator)?;
        }
        let den = self.denominator.to_string();
        if self.denominator.is_monomial() && !den.contains(['*', '/']) {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

/// A coefficient tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldValue {
    Rational(Rational),
    Function(RationalFunction),
}

impl FieldValue {
    pub fn zero(field: Field) -> Self {
        match field {
            Field::Rational => FieldValue::Rational(Rational::zero()),
            Field::RationalFunction => FieldValue::Function(RationalFunction::zero()),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn from_rational(field: Field, r: Rational) -> Self {
        match field {
            Field::Rational => FieldValue::Rational(r),
            Field::RationalFunction => FieldValue::Function(RationalFunction::from_rational(r)),
        }
    }

    /// `q - q^{-1}`, the Hecke skein parameter.
    pub fn q_minus_q_inverse() -> Self {
        let q = RationalFunction::q();
        FieldValue::Function(q.add(&q.inv().expect("q is nonzero").neg()))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldValue::Rational(_) => Field::Rational,
            FieldValue::Function(_) => Field::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_zero(),
            FieldValue::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_one(),
            FieldValue::Function(f) => f.numerator.is_one() && f.denominator.is_one(),
        }
    }

    fn mismatch(&self, other: &Self) -> CoeffError {
        CoeffError::FieldMismatch(self.field(), other.field())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CoeffError> {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => Ok(FieldValue::Rational(a + b)),
            (FieldValue::Function(a), FieldValue::Function(b)) => Ok(FieldValue::Function(a.add(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => Ok(FieldValue::Rational(a * b)),
            (FieldValue::Function(a), FieldValue::Function(b)) => Ok(FieldValue::Function(a.mul(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CoeffError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldValue::Rational(r) => FieldValue::Rational(-r),
            FieldValue::Function(f) => FieldValue::Function(f.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        match self {
            FieldValue::Rational(r) if r.is_zero() => Err(CoeffError::DivisionByZero),
            FieldValue::Rational(r) => Ok(FieldValue::Rational(r.recip())),
            FieldValue::Function(f) => f.inv().map(FieldValue::Function).ok_or(CoeffError::DivisionByZero),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self, CoeffError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldValue::one(self.field());
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Total order on canonical forms of one field. Used only for
    /// deterministic sorting, not as a field ordering.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => a.cmp(b),
            (FieldValue::Function(a), FieldValue::Function(b)) => {
                a.denominator.cmp_canonical(&b.denominator).then_with(|| a.numerator.cmp_canonical(&b.numerator))
            }
            (FieldValue::Rational(_), FieldValue::Function(_)) => Ordering::Less,
            (FieldValue::Function(_), FieldValue::Rational(_)) => Ordering::Greater,
        }
    }

    /// True when the printed form needs no parentheses as a factor.
    pub fn is_atomic(&self) -> bool {
        let s = self.to_string();
        !s[1..].contains(['+', '-', '/', '*']) && !s.is_empty()
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(r) => poly::fmt_rational(r, f),
            FieldValue::Function(g) => write!(f, "{g}"),
        }
    }
}

impl Serialize for FieldValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &FieldValue {
    type Output = FieldValue;
    fn add(self, rhs: Self) -> FieldValue {
        self.checked_add(rhs).expect("coefficient field mismatch")
    }
}

impl Sub for &FieldValue {
    type Output = FieldValue;
    fn sub(self, rhs: Self) -> FieldValue {
        self.checked_sub(rhs).expect("coefficient field mismatch")
    }
}

impl Mul for &FieldValue {
    type Output = FieldValue;
    fn mul(self, rhs: Self) -> FieldValue {
        self.checked_mul(rhs).expect("coefficient field mismatch")
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        FieldValue::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> FieldValue {
        FieldValue::Rational(Rational::new(n.into(), d.into()))
    }

    fn qf(text: &str) -> FieldValue {
        parse_coefficient(text, Field::RationalFunction).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(rat(1, 2).checked_add(&rat(1, 3)).unwrap(), rat(5, 6));
        assert_eq!(rat(2, 3).checked_mul(&rat(3, 2)).unwrap(), rat(1, 1));
    }

    #[test]
    fn q_plus_minus_q_is_zero() {
        let q = qf("q");
        assert!(q.checked_add(&q.neg()).unwrap().is_zero());
        assert_eq!(q.checked_add(&q.neg()).unwrap(), FieldValue::zero(Field::RationalFunction));
    }

    #[test]
    fn q_minus_inverse_canonical_form() {
        let z = FieldValue::q_minus_q_inverse();
        let FieldValue::Function(f) = &z else { panic!() };
        assert_eq!(f.numerator().to_string(), "q^2 - 1");
        assert_eq!(f.denominator().to_string(), "q");
        assert_eq!(z, qf("(q^2-1)/q"));
        assert_eq!(z.to_string(), "(q^2 - 1)/q");
    }

    #[test]
    fn inverse_of_q() {
        let inv = qf("q").inv().unwrap();
        let FieldValue::Function(f) = &inv else { panic!() };
        assert!(f.numerator().is_one());
        assert_eq!(f.denominator().to_string(), "q");
    }

    #[test]
    fn gcd_cancellation_in_product() {
        let prod = qf("(q^2-1)/q").checked_mul(&qf("q/(q-1)")).unwrap();
        assert_eq!(prod, qf("q+1"));
    }

    #[test]
    fn errors() {
        assert_eq!(rat(0, 1).inv(), Err(CoeffError::DivisionByZero));
        assert!(qf("0").inv().is_err());
        assert_eq!(
            rat(1, 1).checked_add(&qf("1")),
            Err(CoeffError::FieldMismatch(Field::Rational, Field::RationalFunction))
        );
    }

    #[test]
    fn display_round_trips() {
        for text in ["3/2", "-7", "0"] {
            let v = parse_coefficient(text, Field::Rational).unwrap();
            assert_eq!(parse_coefficient(&v.to_string(), Field::Rational).unwrap(), v);
        }
        for text in ["q^2 - 1", "(q^2-1)/q", "1/(2q+3)", "-3/(q^2)", "(1/2 q - 4)/(q^3 - 1/3)"] {
            let v = qf(text);
            assert_eq!(qf(&v.to_string()), v, "{text} -> {v}");
        }
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(arb_rat(), 0..4).prop_map(Poly::from_coeffs)
    }

    fn arb_function() -> impl Strategy<Value = FieldValue> {
        (arb_poly(), arb_poly())
            .prop_filter_map("nonzero denominator", |(n, d)| RationalFunction::new(n, d).map(FieldValue::Function))
    }

    proptest! {
        #[test]
        fn function_field_axioms(a in arb_function(), b in arb_function(), c in arb_function()) {
            prop_assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
            prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
            prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
            prop_assert_eq!(&(&a * &b), &(&b * &a));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn rational_field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let (a, b, c) = (FieldValue::Rational(a), FieldValue::Rational(b), FieldValue::Rational(c));
            prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
            if !b.is_zero() {
                prop_assert_eq!(&(&(&a * &b) * &b.inv().unwrap()), &a);
            }
        }

        #[test]
        fn canonical_form_is_unique(n in arb_poly(), d in arb_poly(), k in arb_poly()) {
            // n/d and (n*k)/(d*k) must agree structurally
            prop_assume!(!d.is_zero() && !k.is_zero());
            let a = RationalFunction::new(n.clone(), d.clone()).unwrap();
            let b = RationalFunction::new(n.mul(&k), d.mul(&k)).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.denominator().leading().unwrap().is_one());
            prop_assert!(a.numerator().gcd(a.denominator()).is_one() || a.is_zero());
        }
    }
}
