//! Complex balls: dyadic midpoint plus an error radius that only ever grows.

use super::dyadic::{Dyadic, ErrBound};
use super::Scalar;
use crate::error::NumError;

/// A complex value known to lie within distance `err` of `re + i*im`.
#[derive(Clone, Debug)]
pub struct ComplexApprox {
    pub re: Dyadic,
    pub im: Dyadic,
    pub err: ErrBound,
    pub prec: u32,
}

impl ComplexApprox {
    pub fn zero(prec: u32) -> ComplexApprox {
        ComplexApprox {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
            err: ErrBound::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> ComplexApprox {
        ComplexApprox {
            re: Dyadic::from_int(1),
            im: Dyadic::zero(),
            err: ErrBound::zero(),
            prec,
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> ComplexApprox {
        ComplexApprox {
            re: Dyadic::from_f64(re),
            im: Dyadic::from_f64(im),
            err: ErrBound::zero(),
            prec,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.err.is_zero()
    }

    /// One ulp of the larger component, used to account for rounding.
    fn ulp(&self) -> ErrBound {
        let mut e = i64::MIN;
        if !self.re.is_zero() {
            e = e.max(self.re.mag_exp());
        }
        if !self.im.is_zero() {
            e = e.max(self.im.mag_exp());
        }
        if e == i64::MIN {
            // components rounded to exact zero; anything discarded is tiny
            return ErrBound::pow2(-(self.prec as i64) * 4);
        }
        ErrBound::pow2(e - self.prec as i64 + 2)
    }

    /// Upper bound on the magnitude `|z|` (uses `|re| + |im| + err`).
    pub fn mag_upper(&self) -> ErrBound {
        ErrBound::mag_upper(&self.re)
            .add(ErrBound::mag_upper(&self.im))
            .add(self.err)
    }

    /// Lower bound on `|z|`, zero when the ball may contain the origin.
    pub fn mag_lower(&self) -> ErrBound {
        let m = if self.re.is_zero() && self.im.is_zero() {
            return ErrBound::zero();
        } else if self.im.is_zero() {
            self.re.mag_exp()
        } else if self.re.is_zero() {
            self.im.mag_exp()
        } else {
            self.re.mag_exp().max(self.im.mag_exp())
        };
        // |z| >= 2^m (largest component is at least that), minus the radius
        let low = ErrBound::pow2(m);
        if self.err.ge(low) {
            return ErrBound::zero();
        }
        // conservative halving instead of subtracting
        if self.err.ge(ErrBound::pow2(m - 1)) {
            ErrBound::pow2(m - 1)
        } else {
            low.add(ErrBound::zero()).max(ErrBound::pow2(m - 1))
        }
    }

    pub fn add(&self, rhs: &ComplexApprox) -> ComplexApprox {
        let prec = self.prec.min(rhs.prec);
        let mut out = ComplexApprox {
            re: self.re.add(&rhs.re, prec),
            im: self.im.add(&rhs.im, prec),
            err: self.err.add(rhs.err),
            prec,
        };
        out.err = out.err.add(out.ulp());
        out
    }

    pub fn sub(&self, rhs: &ComplexApprox) -> ComplexApprox {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ComplexApprox {
        ComplexApprox {
            re: self.re.neg(),
            im: self.im.neg(),
            err: self.err,
            prec: self.prec,
        }
    }

    pub fn conj(&self) -> ComplexApprox {
        ComplexApprox {
            re: self.re.clone(),
            im: self.im.neg(),
            err: self.err,
            prec: self.prec,
        }
    }

    pub fn mul(&self, rhs: &ComplexApprox) -> ComplexApprox {
        let prec = self.prec.min(rhs.prec);
        let rr = self.re.mul(&rhs.re, prec * 2);
        let ii = self.im.mul(&rhs.im, prec * 2);
        let ri = self.re.mul(&rhs.im, prec * 2);
        let ir = self.im.mul(&rhs.re, prec * 2);
        let err = self
            .mag_upper()
            .mul(rhs.err)
            .add(rhs.mag_upper().mul(self.err))
            .add(self.err.mul(rhs.err));
        let mut out = ComplexApprox {
            re: rr.sub(&ii, prec),
            im: ri.add(&ir, prec),
            err,
            prec,
        };
        out.err = out.err.add(out.ulp());
        out
    }

    pub fn scale_int(&self, k: i64) -> ComplexApprox {
        let f = Dyadic::from_int(k);
        let mut out = ComplexApprox {
            re: self.re.mul(&f, self.prec),
            im: self.im.mul(&f, self.prec),
            err: self.err.mul(ErrBound::mag_upper(&f)),
            prec: self.prec,
        };
        out.err = out.err.add(out.ulp());
        out
    }

    /// Reciprocal; `None` when the ball may contain zero (no certified
    /// reciprocal exists).
    pub fn inv(&self) -> Option<ComplexApprox> {
        let prec = self.prec;
        let low = self.mag_lower();
        if low.is_zero() {
            return None;
        }
        let n = self
            .re
            .mul(&self.re, prec * 2)
            .add(&self.im.mul(&self.im, prec * 2), prec * 2);
        let re = self.re.div(&n, prec)?;
        let im = self.im.neg().div(&n, prec)?;
        // |d inv| = err / (|z| (|z| - err)) <= 2 err / low^2 given err <= low/2
        let low2 = low.mul(low);
        let err = div_err(self.err.scale_pow2(1), low2);
        let mut out = ComplexApprox { re, im, err, prec };
        out.err = out.err.add(out.ulp());
        Some(out)
    }

    pub fn div(&self, rhs: &ComplexApprox) -> Option<ComplexApprox> {
        Some(self.mul(&rhs.inv()?))
    }

    /// `|z|^2` as a dyadic with its own (small) rounding slack folded into
    /// comparisons by the caller.
    pub fn norm_sq(&self) -> Dyadic {
        self.re
            .mul(&self.re, self.prec)
            .add(&self.im.mul(&self.im, self.prec), self.prec)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> ComplexApprox {
        let prec = self.prec;
        if self.re.is_zero() && self.im.is_zero() {
            return ComplexApprox {
                re: Dyadic::zero(),
                im: Dyadic::zero(),
                // sqrt can amplify a tiny ball around 0 to its square root
                err: ErrBound::pow2(self.err.log2_upper().ceil() as i64 / 2 + 1),
                prec,
            };
        }
        let r = self.norm_sq().sqrt(prec);
        let (w_re, w_im) = if !self.re.is_negative() {
            // wr = sqrt((r + re)/2), wi = im / (2 wr): stable when re >= 0
            let s = r.add(&self.re, prec);
            let wr = s.div(&Dyadic::from_int(2), prec).unwrap().sqrt(prec);
            let wi = if wr.is_zero() {
                Dyadic::zero()
            } else {
                self.im
                    .div(&wr.mul(&Dyadic::from_int(2), prec), prec)
                    .unwrap()
            };
            (wr, wi)
        } else {
            let s = r.sub(&self.re, prec);
            let t = s.div(&Dyadic::from_int(2), prec).unwrap().sqrt(prec);
            let wi = if self.im.is_negative() { t.neg() } else { t };
            let wr = if wi.is_zero() {
                Dyadic::zero()
            } else {
                self.im
                    .div(&wi.mul(&Dyadic::from_int(2), prec), prec)
                    .unwrap()
            };
            (wr, wi)
        };
        let mut out = ComplexApprox {
            re: w_re,
            im: w_im,
            err: ErrBound::zero(),
            prec,
        };
        // |d sqrt(z)| <= |dz| / (2 |w|); bound |w| below via the output
        let wlow = out.mag_lower();
        out.err = if wlow.is_zero() {
            ErrBound::pow2(self.err.log2_upper().ceil() as i64 / 2 + 1)
        } else {
            div_err(self.err, wlow)
        };
        out.err = out.err.add(out.ulp().scale_pow2(2));
        out
    }
}

/// Upper bound on `num / den` as error bounds (rounds up).
fn div_err(num: ErrBound, den: ErrBound) -> ErrBound {
    if num.is_zero() {
        return ErrBound::zero();
    }
    assert!(!den.is_zero());
    let q = (num.mant << 24) / den.mant + 1;
    // feed through mul to renormalize the mantissa
    ErrBound { mant: 1, exp: 0 }.mul(ErrBound {
        mant: q,
        exp: num.exp - den.exp - 24,
    })
}

/// Converts an exact scalar to a complex ball at the requested precision.
/// The result satisfies `|ball - exact| <= err <= 2^(4 - precision) * |value|`.
pub fn to_complex(x: &Scalar, precision: u32) -> Result<ComplexApprox, NumError> {
    if precision < 64 {
        return Err(NumError::PrecisionTooLow(precision));
    }
    let (a, b) = x.components();
    let re_a = Dyadic::from_rat(&a, precision);
    let mut out = ComplexApprox {
        re: re_a,
        im: Dyadic::zero(),
        err: ErrBound::zero(),
        prec: precision,
    };
    if let Scalar::Quad(q) = x {
        let root = Dyadic::from_int(q.m.abs()).sqrt(precision);
        let scaled = root.mul(&Dyadic::from_rat(&b, precision), precision);
        if q.m > 0 {
            out.re = out.re.add(&scaled, precision);
        } else {
            out.im = scaled;
        }
    }
    out.err = out.ulp().scale_pow2(2);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn third_at_128_bits() {
        let x = Scalar::Rat(rat(1, 3));
        let z = to_complex(&x, 128).unwrap();
        assert!(close(z.re.to_f64(), 1.0 / 3.0, 1e-15));
        assert!(z.err.log2_upper() <= -124.0);
    }

    #[test]
    fn sqrt_minus_three() {
        let z = to_complex(&Scalar::sqrt_of(-3), 128).unwrap();
        assert!(z.re.is_zero());
        assert!(close(z.im.to_f64(), 3f64.sqrt(), 1e-15));
    }

    #[test]
    fn precision_floor_enforced() {
        assert!(to_complex(&Scalar::one(), 32).is_err());
    }

    #[test]
    fn complex_sqrt_of_minus_one() {
        let z = ComplexApprox::from_f64(-1.0, 0.0, 128);
        let w = z.sqrt();
        assert!(close(w.im.to_f64(), 1.0, 1e-15));
        assert!(close(w.re.to_f64(), 0.0, 1e-15));
    }

    #[test]
    fn division_round_trip() {
        let a = ComplexApprox::from_f64(3.0, -2.0, 128);
        let b = ComplexApprox::from_f64(1.0, 7.0, 128);
        let q = a.div(&b).unwrap();
        let back = q.mul(&b);
        // compare exactly in dyadic arithmetic; the midpoint drift must be
        // inside the certified radius
        let dre = back.re.sub(&Dyadic::from_int(3), 300).abs();
        let dim = back.im.add(&Dyadic::from_int(2), 300).abs();
        for d in [dre, dim] {
            assert!(d.is_zero() || d.mag_exp() < back.err.log2_upper() as i64 + 2);
        }
        assert!(back.err.log2_upper() < -100.0);
    }

    #[test]
    fn errors_grow_monotonically() {
        let a = to_complex(&Scalar::Rat(rat(1, 3)), 128).unwrap();
        let b = to_complex(&Scalar::Rat(rat(1, 7)), 128).unwrap();
        let c = a.mul(&b);
        assert!(c.err.ge(a.err.max(b.err)) || c.err.log2_upper() >= a.err.log2_upper() - 1.0);
    }
}
