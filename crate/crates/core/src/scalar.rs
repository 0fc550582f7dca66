//! Exact scalars over the rationals or a prime field.
//!
//! Rationals keep an `i64` fast path and promote to arbitrary precision only
//! when an intermediate result no longer fits, so the common case of small
//! structure constants never allocates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::Input(format!("{p} is not prime")))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(Rational::from_i64(n)),
            FieldSpec::Prime(p) => Scalar::Mod(Residue::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// `(-1)^exp`.
    pub fn sign(self, exp: i64) -> Scalar {
        self.from_i64(if exp.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Whether `n` is invertible in this field.
    pub fn inverts(self, n: u64) -> bool {
        match self {
            FieldSpec::Rationals => n != 0,
            FieldSpec::Prime(p) => n % p != 0,
        }
    }

    /// Parses a scalar in this field's text form ("num/den", "num").
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let rational: Rational = text.parse()?;
        self.from_rational(&rational)
    }

    /// Reinterprets a rational in this field; fails when the denominator
    /// vanishes modulo p.
    pub fn from_rational(self, r: &Rational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(r.clone())),
            FieldSpec::Prime(p) => {
                let (num, den) = r.to_big();
                let big_p = BigInt::from(p);
                let n = num.mod_floor(&big_p).to_u64().unwrap_or(0);
                let d = den.mod_floor(&big_p).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::Input(format!(
                        "denominator of {r} vanishes modulo {p}"
                    )));
                }
                let res = Residue::new(n, p);
                Ok(Scalar::Mod(res.mul(Residue::new(d, p).inverse()?)?))
            }
        }
    }

    /// Converts a scalar of any field into this one; only used when a file
    /// written over ℚ is read with an explicit prime-field override.
    pub fn coerce(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (_, Scalar::Rat(r)) => self.from_rational(r),
            (FieldSpec::Prime(p), Scalar::Mod(m)) if m.modulus == p => Ok(s.clone()),
            _ => Err(Error::Usage(format!(
                "cannot coerce {s} into field {self}"
            ))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Input(format!("bad prime in field spec {s:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Input(format!(
            "unknown field {s:?}; expected \"Q\" or \"Fp:<p>\""
        )))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Arithmetic failures that are not programming errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: {0} and {1}")]
    MixedFields(String, String),
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, positive denominator.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(BigRational),
}

/// Reduced fraction with an `i64` fast path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

impl Rational {
    pub fn from_i64(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(ArithError::DivisionByZero.into());
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational keeps lowest terms with a positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn to_big(&self) -> (BigInt, BigInt) {
        let r = self.big();
        (r.numer().clone(), r.denom().clone())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g = b.gcd(&d);
                Self::from_i128(a * (d / g) + c * (b / g), b * (d / g))
            }
            _ => Self::from_big(self.big() + other.big()),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) if *n != i64::MIN => Rational(Repr::Small(-n, *d)),
            _ => Self::from_big(-self.big()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.big() * other.big()),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(ArithError::DivisionByZero.into()),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(r) => Ok(Self::from_big(r.recip())),
        }
    }

    /// Size measure used as a pivoting heuristic.
    pub fn height(&self) -> u64 {
        match &self.0 {
            Repr::Small(n, d) => n.unsigned_abs().max(d.unsigned_abs()),
            Repr::Big(_) => u64::MAX,
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Input(format!("malformed scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(ArithError::DivisionByZero.into());
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }
}

// ---------------------------------------------------------------------------
// Prime field residues

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, other: Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(ArithError::MixedFields(
                format!("Fp:{}", self.modulus),
                format!("Fp:{}", other.modulus),
            )
            .into());
        }
        Ok(())
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        let s = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Ok(Residue::new(s as u64, self.modulus))
    }

    pub fn neg(self) -> Self {
        Residue::new((self.modulus - self.value) % self.modulus, self.modulus)
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        let s = (self.value as u128 * other.value as u128) % self.modulus as u128;
        Ok(Residue::new(s as u64, self.modulus))
    }

    pub fn inverse(self) -> Result<Self> {
        if self.value == 0 {
            return Err(ArithError::DivisionByZero.into());
        }
        // Fermat: a^(p-2).
        let mut base = self;
        let mut exp = self.modulus - 2;
        let mut acc = Residue::new(1, self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base)?;
            }
            base = base.mul(base)?;
            exp >>= 1;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Scalars

/// An exact field element. Operator impls panic on mixed fields; the
/// `try_*` methods report it as an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Mod(Residue),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod(m) => FieldSpec::Prime(m.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.as_i64() == Some(1),
            Scalar::Mod(m) => m.value == 1,
        }
    }

    fn mixed(&self, other: &Scalar) -> Error {
        ArithError::MixedFields(self.field().to_string(), other.field().to_string()).into()
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a.add(b))),
            (Scalar::Mod(a), Scalar::Mod(b)) => Ok(Scalar::Mod(a.add(*b)?)),
            _ => Err(self.mixed(other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a.mul(b))),
            (Scalar::Mod(a), Scalar::Mod(b)) => Ok(Scalar::Mod(a.mul(*b)?)),
            _ => Err(self.mixed(other)),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.inverse()?)),
            Scalar::Mod(m) => Ok(Scalar::Mod(m.inverse()?)),
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.neg()),
            Scalar::Mod(m) => Scalar::Mod(m.neg()),
        }
    }

    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rat(r) => r.height(),
            Scalar::Mod(m) => m.value,
        }
    }

    /// `(-1)^k` in the field of `self`.
    pub fn sign_like(&self, odd: bool) -> Scalar {
        let one = self.field().one();
        if odd {
            one.neg_ref()
        } else {
            one
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod(m) => write!(f, "{}", m.value),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar arithmetic across different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// JSON form of a scalar: integers may be bare numbers, anything else is a
/// string in the text form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn parse(&self, field: FieldSpec) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
            ScalarText::Text(s) => field.parse_scalar(s),
        }
    }

    pub fn from_scalar(s: &Scalar) -> Self {
        match s {
            Scalar::Rat(r) => match r.as_i64() {
                Some(n) => ScalarText::Int(n),
                None => ScalarText::Text(r.to_string()),
            },
            Scalar::Mod(m) => ScalarText::Int(m.value as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rat(Rational::new(n, d).unwrap())
    }

    #[test]
    fn fraction_sum() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn prime_field_product() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.from_i64(3) * f.from_i64(5), f.from_i64(1));
    }

    #[test]
    fn inverse_of_nonzero() {
        let f = FieldSpec::prime(7).unwrap();
        for a in 1..7 {
            let a = f.from_i64(a);
            assert!((&a * &a.inverse().unwrap()).is_one());
        }
        let a = q(-3, 8);
        assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(q(1, 2).try_div(&q(0, 1)).is_err());
        let f = FieldSpec::prime(5).unwrap();
        assert!(f.one().try_div(&f.zero()).is_err());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn mixed_fields_are_a_usage_error() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(q(1, 2).try_add(&f.one()).is_err());
        let g = FieldSpec::prime(7).unwrap();
        assert!(f.one().try_mul(&g.one()).is_err());
    }

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let big = q(i64::MAX, 1);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Rat(Rational(Repr::Small(..)))));
    }

    #[test]
    fn field_spec_text() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("Fp:8".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rationals_reduce_mod_p() {
        let f = FieldSpec::prime(7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse_scalar("1/7").is_err());
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn residue() -> impl Strategy<Value = Scalar> {
        (0i64..11).prop_map(|n| FieldSpec::Prime(11).from_i64(n))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, q(0, 1));
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in residue(), b in residue(), c in residue()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn text_round_trip(a in small(), big in any::<i64>()) {
            let f = FieldSpec::Rationals;
            prop_assert_eq!(f.parse_scalar(&a.to_string()).unwrap(), a);
            let b = &q(big, 1) * &q(big, 3);
            prop_assert_eq!(f.parse_scalar(&b.to_string()).unwrap(), b);
        }
    }
}
