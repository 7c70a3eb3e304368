//! Exact scalar arithmetic: arbitrary-precision rationals and quadratic
//! extensions `Q(sqrt(m))`, plus a configurable-precision complex ball type
//! used by the numeric symmetry oracle.
//!
//! Every symbolic computation in this crate runs over [`Scalar`]: either a
//! plain rational or an element `a + b*sqrt(m)` of a single quadratic
//! extension. Only one radicand is live in a computation context; mixing
//! radicands is a caller bug and panics in operator position (the checked
//! entry points return errors instead).

mod complex;
mod dyadic;

pub use complex::ComplexApprox;
pub use dyadic::{Dyadic, ErrBound};

use crate::error::NumError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational; numerator and positive denominator are kept
/// coprime by the underlying representation.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `a + b*sqrt(m)` with `b != 0` and `m` a squarefree integer other than 0, 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub m: i64,
}

impl QuadExt {
    pub fn conj(&self) -> QuadExt {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            m: self.m,
        }
    }

    /// Field norm `a^2 - m b^2`; zero only for the zero element since `m` is
    /// not a perfect square.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat_int(self.m) * &self.b * &self.b
    }
}

/// Checks that a radicand is admissible: squarefree and not 0 or 1.
pub fn check_radicand(m: i64) -> Result<(), NumError> {
    if m == 0 || m == 1 {
        return Err(NumError::BadRadicand(m));
    }
    let mut n = m.unsigned_abs();
    let mut p: u64 = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return Err(NumError::BadRadicand(m));
        }
        while n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    Ok(())
}

/// Exact coefficient domain: a rational or an element of one quadratic
/// extension. A quadratic element with vanishing irrational part collapses
/// to the rational variant on construction, so equality is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rat),
    Quad(QuadExt),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Rat::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(rat_int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::Rat(rat(p, q))
    }

    pub fn from_rat(r: Rat) -> Scalar {
        Scalar::Rat(r)
    }

    /// Builds `a + b*sqrt(m)`, collapsing to a rational when `b = 0`.
    pub fn quad(a: Rat, b: Rat, m: i64) -> Scalar {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            Scalar::Quad(QuadExt { a, b, m })
        }
    }

    pub fn sqrt_of(m: i64) -> Scalar {
        Scalar::quad(Rat::zero(), Rat::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// Radicand of the quadratic part, if any.
    pub fn radicand(&self) -> Option<i64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q.m),
        }
    }

    /// Rational and sqrt(m) components. For a rational this is `(r, 0)`.
    pub fn components(&self) -> (Rat, Rat) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rat::zero()),
            Scalar::Quad(q) => (q.a.clone(), q.b.clone()),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.clone()),
            Scalar::Quad(q) => Scalar::Quad(q.conj()),
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        self.combine(rhs, |x, y| x + y)
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        self.combine(rhs, |x, y| x - y)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x * y)),
            (Scalar::Rat(x), Scalar::Quad(y)) => Ok(Scalar::quad(x * &y.a, x * &y.b, y.m)),
            (Scalar::Quad(x), Scalar::Rat(y)) => Ok(Scalar::quad(&x.a * y, &x.b * y, x.m)),
            (Scalar::Quad(x), Scalar::Quad(y)) => {
                if x.m != y.m {
                    return Err(NumError::RadicandMismatch(x.m, y.m));
                }
                let m = rat_int(x.m);
                Ok(Scalar::quad(
                    &x.a * &y.a + &m * &x.b * &y.b,
                    &x.a * &y.b + &x.b * &y.a,
                    x.m,
                ))
            }
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        let inv = rhs.try_inv()?;
        self.try_mul(&inv)
    }

    pub fn try_inv(&self) -> Result<Scalar, NumError> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(NumError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Quad(q) => {
                let n = q.norm();
                if n.is_zero() {
                    return Err(NumError::DivisionByZero);
                }
                Ok(Scalar::quad(&q.a / &n, -&q.b / &n, q.m))
            }
        }
    }

    fn combine(&self, rhs: &Scalar, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Scalar, NumError> {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(f(x, y))),
            (Scalar::Rat(x), Scalar::Quad(y)) => {
                Ok(Scalar::quad(f(x, &y.a), f(&Rat::zero(), &y.b), y.m))
            }
            (Scalar::Quad(x), Scalar::Rat(y)) => {
                Ok(Scalar::quad(f(&x.a, y), f(&x.b, &Rat::zero()), x.m))
            }
            (Scalar::Quad(x), Scalar::Quad(y)) => {
                if x.m != y.m {
                    return Err(NumError::RadicandMismatch(x.m, y.m));
                }
                Ok(Scalar::quad(f(&x.a, &y.a), f(&x.b, &y.b), x.m))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total ordering usable for canonical sorting; not a numeric order.
    pub fn sort_key(&self) -> (i64, Rat, Rat) {
        match self {
            Scalar::Rat(r) => (0, r.clone(), Rat::zero()),
            Scalar::Quad(q) => (q.m, q.a.clone(), q.b.clone()),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);
scalar_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Quad(q) => Scalar::Quad(QuadExt {
                a: -q.a.clone(),
                b: -q.b.clone(),
                m: q.m,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, NumError> {
    let s = s.trim();
    let parse_int = |t: &str| BigInt::from_str(t).map_err(|_| NumError::Parse(t.to_string()));
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p.trim())?;
            let den = parse_int(q.trim())?;
            if den.is_zero() {
                return Err(NumError::DivisionByZero);
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Quad(q) => {
                if q.a.is_zero() {
                    write!(f, "{}*sqrt({})", fmt_rat(&q.b), q.m)
                } else if q.b.is_negative() {
                    write!(f, "{} - {}*sqrt({})", fmt_rat(&q.a), fmt_rat(&-&q.b), q.m)
                } else {
                    write!(f, "{} + {}*sqrt({})", fmt_rat(&q.a), fmt_rat(&q.b), q.m)
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Str(String),
    Quad { a: String, b: String, m: i64 },
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Rat(r) => ScalarRepr::Str(fmt_rat(r)),
            Scalar::Quad(q) => ScalarRepr::Quad {
                a: fmt_rat(&q.a),
                b: fmt_rat(&q.b),
                m: q.m,
            },
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(de)?;
        match repr {
            ScalarRepr::Str(s) => parse_rat(&s)
                .map(Scalar::Rat)
                .map_err(serde::de::Error::custom),
            ScalarRepr::Quad { a, b, m } => {
                check_radicand(m).map_err(serde::de::Error::custom)?;
                let a = parse_rat(&a).map_err(serde::de::Error::custom)?;
                let b = parse_rat(&b).map_err(serde::de::Error::custom)?;
                Ok(Scalar::quad(a, b, m))
            }
        }
    }
}

/// Parses a scalar from CLI syntax: `p/q`, or `a+b*sqrt(m)` style inputs are
/// written as `a,b` with the ambient radicand supplied separately.
pub fn parse_scalar(s: &str, radicand: Option<i64>) -> Result<Scalar, NumError> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once(";") {
        let m = radicand.ok_or_else(|| NumError::Parse(s.to_string()))?;
        check_radicand(m)?;
        return Ok(Scalar::quad(parse_rat(a)?, parse_rat(b)?, m));
    }
    Ok(Scalar::Rat(parse_rat(s)?))
}

/// The four field operations over one quadratic extension, with explicit
/// error reporting for radicand mismatch and division by zero.
pub fn quad_arith(x: &Scalar, y: &Scalar, op: char) -> Result<Scalar, NumError> {
    match op {
        '+' => x.try_add(y),
        '-' => x.try_sub(y),
        '*' => x.try_mul(y),
        '/' => x.try_div(y),
        _ => Err(NumError::Parse(format!("unknown operation {op:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_form_collapses() {
        // (1 + sqrt(-3)) * (1 - sqrt(-3)) = 4
        let x = Scalar::quad(rat_int(1), rat_int(1), -3);
        let y = x.conj();
        assert_eq!(&x * &y, Scalar::int(4));
    }

    #[test]
    fn radicand_squares() {
        let r = Scalar::sqrt_of(-3);
        assert_eq!(&r * &r, Scalar::int(-3));
    }

    #[test]
    fn self_division_is_one() {
        let x = Scalar::quad(rat_int(1), rat_int(2), -3);
        assert_eq!(x.try_div(&x).unwrap(), Scalar::one());
    }

    #[test]
    fn mismatch_is_reported() {
        let x = Scalar::sqrt_of(2);
        let y = Scalar::sqrt_of(3);
        assert_eq!(x.try_mul(&y), Err(NumError::RadicandMismatch(2, 3)));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let x = Scalar::sqrt_of(2);
        assert_eq!(x.try_div(&Scalar::zero()), Err(NumError::DivisionByZero));
    }

    #[test]
    fn radicand_validation() {
        assert!(check_radicand(-3).is_ok());
        assert!(check_radicand(2).is_ok());
        assert!(check_radicand(4).is_err());
        assert!(check_radicand(12).is_err());
        assert!(check_radicand(0).is_err());
        assert!(check_radicand(1).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7/4", "0", "12345678901234567890/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn scalar_serde_round_trip() {
        let x = Scalar::quad(rat(1, 2), rat(-3, 5), -3);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), x);
        let y = Scalar::ratio(-22, 7);
        let json = serde_json::to_string(&y).unwrap();
        assert_eq!(json, "\"-22/7\"");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), y);
    }
}
