use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{is_squarefree, squarefree_decompose, FieldError, Rational};

/// An element `a + b*sqrt(d)` of `Q` (when `d = 1`) or of the real quadratic
/// field `Q[sqrt(d)]`.
///
/// Internally the value is kept over a common denominator as
/// `(rat + irr*sqrt(d)) / den` with `den > 0` and `gcd(rat, irr, den) = 1`,
/// so structural equality is value equality. A value whose irrational part
/// vanishes always carries the tag `d = 1`; a rational value therefore
/// interoperates with every field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    rat: BigInt,
    irr: BigInt,
    den: BigInt,
    d: u32,
}

/// Field tag of the result of combining values tagged `d1` and `d2`.
#[inline]
pub(crate) fn join_tags(d1: u32, d2: u32) -> Result<u32, FieldError> {
    if d1 == d2 || d2 == 1 {
        Ok(d1)
    } else if d1 == 1 {
        Ok(d2)
    } else {
        Err(FieldError::FieldMismatch {
            left: d1,
            right: d2,
        })
    }
}

impl QuadScalar {
    fn normalized(mut rat: BigInt, mut irr: BigInt, mut den: BigInt, mut d: u32) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            rat = -rat;
            irr = -irr;
            den = -den;
        }
        if irr.is_zero() {
            d = 1;
            if rat.is_zero() {
                return Self::zero();
            }
        }
        if !den.is_one() {
            let g = rat.gcd(&irr).gcd(&den);
            if !g.is_one() {
                rat /= &g;
                irr /= &g;
                den /= &g;
            }
        }
        QuadScalar { rat, irr, den, d }
    }

    pub fn zero() -> Self {
        QuadScalar {
            rat: BigInt::zero(),
            irr: BigInt::zero(),
            den: BigInt::one(),
            d: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QuadScalar {
            rat: n,
            irr: BigInt::zero(),
            den: BigInt::one(),
            d: 1,
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Self::normalized(q.numer().clone(), BigInt::zero(), q.denom().clone(), 1)
    }

    /// Builds `a + b*sqrt(d)`. `d` must be squarefree; with `d = 1` the two
    /// parts are simply added.
    pub fn new(a: &Rational, b: &Rational, d: u64) -> Result<Self, FieldError> {
        if !is_squarefree(d) || d > u64::from(u32::MAX) {
            return Err(FieldError::InvalidTag(d));
        }
        if d == 1 {
            return Ok(Self::from_rational(&(a + b)));
        }
        let den = a.denom().lcm(b.denom());
        let rat = a.numer() * (&den / a.denom());
        let irr = b.numer() * (&den / b.denom());
        Ok(Self::normalized(rat, irr, den, d as u32))
    }

    /// `sqrt(n)` reduced to `k*sqrt(m)` with `m` squarefree.
    pub fn sqrt_of(n: u64) -> Result<Self, FieldError> {
        if n == 0 {
            return Ok(Self::zero());
        }
        let (k, m) = squarefree_decompose(n);
        if m > u64::from(u32::MAX) {
            return Err(FieldError::InvalidTag(m));
        }
        if m == 1 {
            return Ok(Self::from_bigint(BigInt::from(k)));
        }
        Ok(QuadScalar {
            rat: BigInt::zero(),
            irr: BigInt::from(k),
            den: BigInt::one(),
            d: m as u32,
        })
    }

    /// Rational part `a`.
    pub fn a(&self) -> Rational {
        Rational::new(self.rat.clone(), self.den.clone())
    }

    /// Coefficient `b` of `sqrt(d)`.
    pub fn b(&self) -> Rational {
        Rational::new(self.irr.clone(), self.den.clone())
    }

    /// Field tag; `1` for rational values.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.irr.is_zero() && self.den.is_one() && self.rat.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.irr.is_zero() && self.den.is_one()
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.rat.clone())
    }

    /// Exact sign: `-1`, `0` or `+1`.
    pub fn sign(&self) -> i8 {
        let sr = signum(&self.rat);
        let si = signum(&self.irr);
        if si == 0 {
            return sr;
        }
        if sr == 0 || sr == si {
            return si;
        }
        // Opposite signs: compare rat^2 with d*irr^2 (never equal for d squarefree > 1).
        let lhs = &self.rat * &self.rat;
        let rhs = &self.irr * &self.irr * BigInt::from(self.d);
        if lhs > rhs {
            sr
        } else {
            si
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadScalar {
            rat: self.rat.clone(),
            irr: -&self.irr,
            den: self.den.clone(),
            d: self.d,
        }
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> Rational {
        let n = &self.rat * &self.rat - &self.irr * &self.irr * BigInt::from(self.d);
        Rational::new(n, &self.den * &self.den)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a().to_f64().unwrap_or(f64::NAN);
        if self.irr.is_zero() {
            return a;
        }
        a + self.b().to_f64().unwrap_or(f64::NAN) * f64::from(self.d).sqrt()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        let d = join_tags(self.d, other.d)?;
        Ok(self.add_unchecked(other, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        let d = join_tags(self.d, other.d)?;
        Ok(self.add_unchecked(&other.neg_ref(), d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let d = join_tags(self.d, other.d)?;
        Ok(self.mul_unchecked(other, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        let d = join_tags(self.d, other.d)?;
        Ok(self.mul_unchecked(&other.inv()?, d))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.irr.is_zero() {
            return Ok(Self::normalized(
                self.den.clone(),
                BigInt::zero(),
                self.rat.clone(),
                1,
            ));
        }
        // 1 / ((r + i*sqrt(d))/D) = D*(r - i*sqrt(d)) / (r^2 - d*i^2)
        let n = &self.rat * &self.rat - &self.irr * &self.irr * BigInt::from(self.d);
        Ok(Self::normalized(
            &self.den * &self.rat,
            -(&self.den * &self.irr),
            n,
            self.d,
        ))
    }

    /// `self - f*p`, the elimination update. Tags are assumed compatible.
    pub(crate) fn sub_mul(&self, f: &Self, p: &Self) -> Self {
        let d = self.d.max(f.d).max(p.d);
        let prod = f.mul_unchecked(p, d);
        self.add_unchecked(&prod.neg_ref(), d)
    }

    fn neg_ref(&self) -> Self {
        QuadScalar {
            rat: -&self.rat,
            irr: -&self.irr,
            den: self.den.clone(),
            d: self.d,
        }
    }

    fn add_unchecked(&self, other: &Self, d: u32) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::normalized(
                &self.rat + &other.rat,
                &self.irr + &other.irr,
                self.den.clone(),
                d,
            );
        }
        let rat = &self.rat * &other.den + &other.rat * &self.den;
        let irr = if self.irr.is_zero() && other.irr.is_zero() {
            BigInt::zero()
        } else {
            &self.irr * &other.den + &other.irr * &self.den
        };
        Self::normalized(rat, irr, &self.den * &other.den, d)
    }

    fn mul_unchecked(&self, other: &Self, d: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (rat, irr) = match (self.irr.is_zero(), other.irr.is_zero()) {
            (true, true) => (&self.rat * &other.rat, BigInt::zero()),
            (true, false) => (&self.rat * &other.rat, &self.rat * &other.irr),
            (false, true) => (&self.rat * &other.rat, &self.irr * &other.rat),
            (false, false) => (
                &self.rat * &other.rat + &self.irr * &other.irr * BigInt::from(d),
                &self.rat * &other.irr + &self.irr * &other.rat,
            ),
        };
        Self::normalized(rat, irr, &self.den * &other.den, d)
    }
}

fn signum(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

impl Default for QuadScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for QuadScalar {
    fn from(n: i32) -> Self {
        Self::from_int(i64::from(n))
    }
}

impl From<BigInt> for QuadScalar {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl From<Rational> for QuadScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(&q)
    }
}

impl PartialOrd for QuadScalar {
    /// `None` when the two values live in different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.sign().cmp(&0))
    }
}

// Operator impls panic on field mismatch or division by zero; the `try_*`
// methods are the fallible forms.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            rat: -self.rat,
            irr: -self.irr,
            den: self.den,
            d: self.d,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        self.neg_ref()
    }
}

impl fmt::Display for QuadScalar {
    /// Canonical rendering: `p/q`, `a + b*sqrt(d)`, `a - b*sqrt(d)`, with a
    /// unit coefficient written as bare `sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.a();
        if self.irr.is_zero() {
            return write!(f, "{a}");
        }
        let b = self.b();
        let mag = b.abs();
        let radical = if mag.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{mag}*sqrt({})", self.d)
        };
        match (a.is_zero(), b.is_negative()) {
            (true, false) => write!(f, "{radical}"),
            (true, true) => write!(f, "-{radical}"),
            (false, false) => write!(f, "{a} + {radical}"),
            (false, true) => write!(f, "{a} - {radical}"),
        }
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadScalar({self})")
    }
}

impl FromStr for QuadScalar {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse_scalar(s)
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
