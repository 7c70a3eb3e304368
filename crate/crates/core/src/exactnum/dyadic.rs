//! Dyadic floating-point numbers `mant * 2^exp` on top of `BigInt`, with the
//! rounding step under explicit control, and a round-up error-bound type.
//!
//! Rounding drops low mantissa bits, so one operation contributes at most
//! one unit in the last place; the error accounting in
//! [`super::ComplexApprox`] adds that ulp explicitly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic {
            mant: BigInt::from(n),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    /// `floor(log2 |x|)`, undefined for zero.
    pub fn mag_exp(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.bits() as i64 - 1
    }

    /// Drops low mantissa bits so at most `prec` remain. The discarded
    /// part is below one ulp of the result.
    pub fn round_to(&self, prec: u32) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        Dyadic {
            mant: &self.mant >> drop as u64,
            exp: self.exp + drop,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, rhs: &Dyadic, prec: u32) -> Dyadic {
        if self.is_zero() {
            return rhs.round_to(prec);
        }
        if rhs.is_zero() {
            return self.round_to(prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic { mant: a + b, exp: e }.round_to(prec)
    }

    pub fn sub(&self, rhs: &Dyadic, prec: u32) -> Dyadic {
        self.add(&rhs.neg(), prec)
    }

    pub fn mul(&self, rhs: &Dyadic, prec: u32) -> Dyadic {
        Dyadic {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
        .round_to(prec)
    }

    /// Truncated quotient with roughly `prec + 2` significant bits.
    /// Returns zero division as `None`.
    pub fn div(&self, rhs: &Dyadic, prec: u32) -> Option<Dyadic> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Dyadic::zero());
        }
        let shift = prec as i64 + 2 + rhs.bits() as i64 - self.bits() as i64;
        let shift = shift.max(0) as u64;
        let num = &self.mant << shift;
        Some(Dyadic {
            mant: num / &rhs.mant,
            exp: self.exp - shift as i64 - rhs.exp,
        })
    }

    /// Floor square root of a nonnegative value, `prec + 2` bits.
    pub fn sqrt(&self, prec: u32) -> Dyadic {
        assert!(!self.mant.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let target = 2 * (prec as i64 + 2);
        let mut shift = target - self.bits() as i64;
        if shift < 0 {
            shift = 0;
        }
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        Dyadic {
            mant: m.sqrt(),
            exp: (self.exp - shift) / 2,
        }
    }

    /// Exact sign of `self - rhs`.
    pub fn cmp_value(&self, rhs: &Dyadic) -> std::cmp::Ordering {
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn from_rat(r: &BigRational, prec: u32) -> Dyadic {
        let num = Dyadic {
            mant: r.numer().clone(),
            exp: 0,
        };
        let den = Dyadic {
            mant: r.denom().clone(),
            exp: 0,
        };
        num.div(&den, prec).expect("denominator is nonzero")
    }

    pub fn from_f64(x: f64) -> Dyadic {
        if x == 0.0 {
            return Dyadic::zero();
        }
        assert!(x.is_finite());
        let (m, e) = frexp(x);
        // m in [0.5, 1): scale to 53-bit integer mantissa
        let mant = (m * (1u64 << 53) as f64) as i64;
        Dyadic {
            mant: BigInt::from(mant),
            exp: e - 53,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (top, exp) = if bits > 53 {
            let drop = bits - 53;
            (&self.mant >> drop, self.exp + drop as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let t: f64 = i64::try_from(&top).map(|v| v as f64).unwrap_or(0.0);
        ldexp(t, exp)
    }
}

fn frexp(x: f64) -> (f64, i64) {
    let e = x.abs().log2().floor() as i64 + 1;
    (x / ldexp(1.0, e), e)
}

pub fn ldexp(x: f64, e: i64) -> f64 {
    let mut r = x;
    let mut e = e;
    while e > 900 {
        r *= 2f64.powi(900);
        e -= 900;
    }
    while e < -900 {
        r *= 2f64.powi(-900);
        e += 900;
    }
    r * 2f64.powi(e as i32)
}

/// Nonnegative upper bound `mant * 2^exp` with all arithmetic rounding up.
/// Mantissas are kept below 2^24 so products fit comfortably in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrBound {
    pub mant: u64,
    pub exp: i64,
}

const ERR_MANT_BITS: u32 = 24;

impl ErrBound {
    pub fn zero() -> ErrBound {
        ErrBound { mant: 0, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    /// 2^e
    pub fn pow2(e: i64) -> ErrBound {
        ErrBound { mant: 1, exp: e }
    }

    fn normalize(mant: u64, exp: i64) -> ErrBound {
        if mant == 0 {
            return ErrBound::zero();
        }
        let bits = 64 - mant.leading_zeros();
        if bits <= ERR_MANT_BITS {
            return ErrBound { mant, exp };
        }
        let drop = bits - ERR_MANT_BITS;
        let mut m = mant >> drop;
        if mant & ((1u64 << drop) - 1) != 0 {
            m += 1; // round up
        }
        ErrBound {
            mant: m,
            exp: exp + drop as i64,
        }
    }

    pub fn add(self, rhs: ErrBound) -> ErrBound {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let e = self.exp.max(rhs.exp) - ERR_MANT_BITS as i64;
        let lift = |b: ErrBound| -> u64 {
            let s = b.exp - e;
            if s >= 0 {
                b.mant << s.min(38) as u32
            } else {
                let d = (-s) as u32;
                if d >= 64 {
                    1
                } else {
                    (b.mant >> d) + 1
                }
            }
        };
        ErrBound::normalize(lift(self) + lift(rhs), e)
    }

    pub fn mul(self, rhs: ErrBound) -> ErrBound {
        if self.is_zero() || rhs.is_zero() {
            return ErrBound::zero();
        }
        ErrBound::normalize(self.mant * rhs.mant, self.exp + rhs.exp)
    }

    pub fn scale_pow2(self, e: i64) -> ErrBound {
        ErrBound {
            mant: self.mant,
            exp: self.exp + e,
        }
    }

    pub fn max(self, rhs: ErrBound) -> ErrBound {
        if self.ge(rhs) {
            self
        } else {
            rhs
        }
    }

    pub fn ge(self, rhs: ErrBound) -> bool {
        !lt(self, rhs)
    }

    /// Upper bound on the magnitude of a dyadic value.
    pub fn mag_upper(d: &Dyadic) -> ErrBound {
        if d.is_zero() {
            return ErrBound::zero();
        }
        ErrBound::pow2(d.mag_exp() + 1)
    }

    pub fn to_dyadic(self) -> Dyadic {
        Dyadic {
            mant: BigInt::from(self.mant),
            exp: self.exp,
        }
    }

    pub fn log2_upper(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.mant as f64).log2() + self.exp as f64
    }
}

fn lt(a: ErrBound, b: ErrBound) -> bool {
    if a.is_zero() {
        return !b.is_zero();
    }
    if b.is_zero() {
        return false;
    }
    let ma = a.exp + (64 - a.mant.leading_zeros()) as i64;
    let mb = b.exp + (64 - b.mant.leading_zeros()) as i64;
    if ma != mb {
        return ma < mb;
    }
    // same magnitude window: compare aligned mantissas exactly
    let e = a.exp.min(b.exp);
    (a.mant << (a.exp - e) as u32) < (b.mant << (b.exp - e) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn rounding_keeps_prec_bits() {
        let x = Dyadic::from_rat(&rat(1, 3), 128);
        assert!(x.bits() <= 131);
        let y = x.round_to(64);
        assert!(y.bits() <= 64);
        // truncation error below one ulp
        let diff = x.sub(&y, 256).abs();
        assert!(diff.is_zero() || diff.mag_exp() <= y.exp);
    }

    #[test]
    fn sqrt_squares_back() {
        let two = Dyadic::from_int(2);
        let r = two.sqrt(128);
        let sq = r.mul(&r, 300);
        let diff = sq.sub(&two, 300).abs();
        assert!(diff.is_zero() || diff.mag_exp() < -120);
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.0, 1.5, -3.25, 1e-200, 123456.789] {
            let d = Dyadic::from_f64(x);
            assert!((d.to_f64() - x).abs() <= x.abs() * 1e-12);
        }
    }

    #[test]
    fn err_bound_rounds_up() {
        let a = ErrBound::pow2(-100);
        let b = ErrBound::pow2(-100);
        let s = a.add(b);
        assert!(s.ge(ErrBound::pow2(-99)));
        let p = a.mul(b);
        assert_eq!(p, ErrBound::pow2(-200));
    }
}
