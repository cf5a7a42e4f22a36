//! Exact scalars: arbitrary-precision rationals and the two quadratic
//! extensions ℚ(√2) and ℚ(ω) used by the twisted constructions.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.numer().clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Rational::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `n!` as a rational.
    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= i;
        }
        Rational::from_bigint(acc)
    }

    /// Binomial coefficient `C(n, k)`.
    pub fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Rational::zero();
        }
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        Rational::from_bigint(acc)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid rational '{s}'"),
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Rational::from_bigs(n, d))
            }
            None => Ok(Rational::from_bigint(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl serde::Serialize for ExtScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Greatest common divisor of a slice of integers (0 for the empty/all-zero slice).
pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Which field an [`ExtScalar`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    /// ℚ(√2), basis {1, √2}.
    Sqrt2,
    /// ℚ(ω) with ω² + ω + 1 = 0, basis {1, ω}.
    Omega,
}

/// Element `a + b·θ` of ℚ, ℚ(√2) or ℚ(ω), θ the tagged generator.
///
/// For the `Rational` tag `b` is always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtScalar {
    tag: FieldTag,
    a: Rational,
    b: Rational,
}

impl ExtScalar {
    pub fn new(tag: FieldTag, a: Rational, b: Rational) -> Result<Self> {
        if tag == FieldTag::Rational && !b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(ExtScalar { tag, a, b })
    }

    pub fn from_rational(tag: FieldTag, a: Rational) -> Self {
        ExtScalar {
            tag,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(tag: FieldTag, n: i64) -> Self {
        Self::from_rational(tag, Rational::integer(n))
    }

    pub fn zero(tag: FieldTag) -> Self {
        Self::from_int(tag, 0)
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::from_int(tag, 1)
    }

    /// The generator θ (√2 or ω).
    pub fn generator(tag: FieldTag) -> Result<Self> {
        match tag {
            FieldTag::Rational => Err(Error::Unsupported("ℚ has no extension generator".into())),
            _ => Ok(ExtScalar {
                tag,
                a: Rational::zero(),
                b: Rational::one(),
            }),
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True iff the value is an ordinary integer.
    pub fn is_rational_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    /// Re-tag a rational value into another field.
    pub fn retag(&self, tag: FieldTag) -> Result<Self> {
        if self.tag == tag {
            return Ok(self.clone());
        }
        if !self.b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_rational(tag, self.a.clone()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ExtScalar {
            tag: self.tag,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ExtScalar {
            tag: self.tag,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, b, c, d) = (&self.a, &self.b, &other.a, &other.b);
        let (re, im) = match self.tag {
            FieldTag::Rational => (a * c, Rational::zero()),
            // (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
            FieldTag::Sqrt2 => (a * c + Rational::integer(2) * (b * d), a * d + b * c),
            // (a + bω)(c + dω) = ac + (ad + bc)ω + bd ω², ω² = −1 − ω
            FieldTag::Omega => {
                let bd = b * d;
                (a * c - &bd, a * d + b * c - bd)
            }
        };
        Ok(ExtScalar {
            tag: self.tag,
            a: re,
            b: im,
        })
    }

    /// Field norm `x·conj(x)`, a rational.
    pub fn norm(&self) -> Rational {
        let (a, b) = (&self.a, &self.b);
        match self.tag {
            FieldTag::Rational => a * a,
            FieldTag::Sqrt2 => a * a - Rational::integer(2) * (b * b),
            FieldTag::Omega => a * a - a * b + b * b,
        }
    }

    pub fn conj(&self) -> Self {
        let (a, b) = (&self.a, &self.b);
        let (re, im) = match self.tag {
            FieldTag::Rational => (a.clone(), Rational::zero()),
            FieldTag::Sqrt2 => (a.clone(), -b),
            // conj(a + bω) = a + bω² = (a − b) − bω
            FieldTag::Omega => (a - b, -b),
        };
        ExtScalar {
            tag: self.tag,
            a: re,
            b: im,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.recip()?;
        let c = self.conj();
        Ok(ExtScalar {
            tag: self.tag,
            a: &c.a * &ninv,
            b: &c.b * &ninv,
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ExtScalar {
            tag: self.tag,
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = ExtScalar::one(self.tag);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

/// `ext_mul`: exact product of two scalars of the same field.
pub fn ext_mul(a: &ExtScalar, b: &ExtScalar) -> Result<ExtScalar> {
    a.try_mul(b)
}

/// A primitive `k`-th root of unity: −1 for k = 2, ω for k = 3.
pub fn primitive_root_of_unity(k: u32) -> Result<ExtScalar> {
    match k {
        2 => Ok(ExtScalar::from_int(FieldTag::Rational, -1)),
        3 => ExtScalar::generator(FieldTag::Omega),
        _ => Err(Error::Unsupported(format!(
            "primitive root of unity of order {k}; only k ∈ {{2,3}} are supported"
        ))),
    }
}

impl Add<&ExtScalar> for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        self.try_add(rhs).expect("field tag mismatch")
    }
}

impl Sub<&ExtScalar> for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: &ExtScalar) -> ExtScalar {
        self.try_sub(rhs).expect("field tag mismatch")
    }
}

impl Mul<&ExtScalar> for &ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: &ExtScalar) -> ExtScalar {
        self.try_mul(rhs).expect("field tag mismatch")
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar {
            tag: self.tag,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            FieldTag::Rational => write!(f, "{}", self.a),
            FieldTag::Sqrt2 => write!(f, "{}+{}*sqrt2", self.a, self.b),
            FieldTag::Omega => write!(f, "{}+{}*w", self.a, self.b),
        }
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for (suffix, tag) in [("*sqrt2", FieldTag::Sqrt2), ("*w", FieldTag::Omega)] {
            if let Some(body) = s.strip_suffix(suffix) {
                // body = "a+b"; the separating '+' is the last one not part of an exponent sign
                let split = body
                    .char_indices()
                    .filter(|&(i, c)| c == '+' && i > 0)
                    .map(|(i, _)| i)
                    .last()
                    .ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: format!("invalid scalar '{s}'"),
                    })?;
                let a: Rational = body[..split].parse()?;
                let b: Rational = body[split + 1..].parse()?;
                return ExtScalar::new(tag, a, b);
            }
        }
        Ok(ExtScalar::from_rational(FieldTag::Rational, s.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ext(tag: FieldTag, a: i64, b: i64) -> ExtScalar {
        ExtScalar::new(tag, q(a, 1), q(b, 1)).unwrap()
    }

    #[test]
    fn difference_of_squares_in_sqrt2() {
        let x = ext(FieldTag::Sqrt2, 1, 1);
        let y = ext(FieldTag::Sqrt2, 1, -1);
        assert_eq!(ext_mul(&x, &y).unwrap(), ext(FieldTag::Sqrt2, -1, 0));
    }

    #[test]
    fn omega_squared() {
        let w = ExtScalar::generator(FieldTag::Omega).unwrap();
        assert_eq!(ext_mul(&w, &w).unwrap(), ext(FieldTag::Omega, -1, -1));
    }

    #[test]
    fn rational_product() {
        let a = ExtScalar::from_rational(FieldTag::Rational, q(3, 2));
        let b = ExtScalar::from_rational(FieldTag::Rational, q(4, 3));
        assert_eq!(ext_mul(&a, &b).unwrap(), ext(FieldTag::Rational, 2, 0));
    }

    #[test]
    fn mixing_tags_is_an_error() {
        let a = ext(FieldTag::Sqrt2, 1, 1);
        let b = ext(FieldTag::Omega, 1, 1);
        assert!(matches!(ext_mul(&a, &b), Err(Error::FieldMismatch)));
        assert!(ExtScalar::new(FieldTag::Rational, q(1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn roots_of_unity() {
        for k in [2u32, 3] {
            let xi = primitive_root_of_unity(k).unwrap();
            let one = ExtScalar::one(xi.tag());
            assert_eq!(xi.pow(k), one);
            assert_ne!(xi, one);
            let mut sum = ExtScalar::zero(xi.tag());
            for j in 0..k {
                sum = &sum + &xi.pow(j);
            }
            assert!(sum.is_zero());
        }
        assert!(matches!(primitive_root_of_unity(1), Err(Error::Unsupported(_))));
        assert!(primitive_root_of_unity(4).is_err());
    }

    #[test]
    fn integrality_predicate() {
        assert!(ext(FieldTag::Omega, -3, 0).is_rational_integer());
        assert!(!ext(FieldTag::Omega, 1, 1).is_rational_integer());
        assert!(!ExtScalar::from_rational(FieldTag::Sqrt2, q(1, 2)).is_rational_integer());
    }

    #[test]
    fn lowest_terms() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn string_round_trip() {
        for s in ["3/4", "-2", "1/2+-3/5*sqrt2", "0+1*w", "-7+2/3*w"] {
            let x: ExtScalar = s.parse().unwrap();
            let back: ExtScalar = x.to_string().parse().unwrap();
            assert_eq!(x, back);
        }
        let x: ExtScalar = "1/2+-3/5*sqrt2".parse().unwrap();
        assert_eq!(x.tag(), FieldTag::Sqrt2);
        assert_eq!(x.coords().1, &q(-3, 5));
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(Rational::binomial(5, 2), q(10, 1));
        assert_eq!(Rational::factorial(5), q(120, 1));
        assert_eq!(Rational::binomial(2, 3), q(0, 1));
    }
}
