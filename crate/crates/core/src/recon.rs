//! Exact reconstruction helpers: continued-fraction recovery of rationals
//! from high-precision dyadic values, and Lagrange interpolation over the
//! scalar field. Reconstruction results are always candidates; callers
//! verify them exactly before use.

use crate::exactnum::{Dyadic, Rat, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Recovers a rational `p/q` with `q < 2^max_den_bits` from a dyadic
/// approximation, accepting only if `|x - p/q| <= 2^tol_exp`.
pub fn rational_reconstruct(x: &Dyadic, max_den_bits: u32, tol_exp: i64) -> Option<Rat> {
    // x is exactly mant * 2^exp: run continued fractions on it
    let exact = if x.exp >= 0 {
        Rat::from_integer(&x.mant * (BigInt::one() << x.exp as u64))
    } else {
        Rat::new(x.mant.clone(), BigInt::one() << (-x.exp) as u64)
    };
    let mut a = exact.clone();
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (a.floor().to_integer(), BigInt::one());
    for _ in 0..10_000 {
        if q1.bits() > max_den_bits as u64 {
            break;
        }
        let cand = Rat::new(p1.clone(), q1.clone());
        let diff = (&exact - &cand).abs();
        if diff.is_zero() || log2_upper(&diff) <= tol_exp {
            return Some(cand);
        }
        let frac = &a - a.floor();
        if frac.is_zero() {
            break;
        }
        a = frac.recip();
        let digit = a.floor().to_integer();
        let p2 = &digit * &p1 + &p0;
        let q2 = &digit * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

/// Upper bound on log2 of a positive rational.
fn log2_upper(r: &Rat) -> i64 {
    debug_assert!(r.is_positive());
    r.numer().bits() as i64 - r.denom().bits() as i64 + 1
}

/// Exact interpolating polynomial through distinct nodes, ascending
/// coefficients.
pub fn lagrange_interpolate(points: &[(Scalar, Scalar)]) -> Vec<Scalar> {
    let n = points.len();
    let mut acc = vec![Scalar::zero(); n.max(1)];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
        let mut basis = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Scalar::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * xj);
            }
            basis = next;
            denom = &denom * &(xi - xj);
        }
        let scale = yi.try_div(&denom).expect("interpolation nodes distinct");
        for (k, c) in basis.iter().enumerate() {
            acc[k] = &acc[k] + &(c * &scale);
        }
    }
    while acc.len() > 1 && acc.last().map(|c| c.is_zero()).unwrap_or(false) {
        acc.pop();
    }
    acc
}

pub fn poly_eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn reconstructs_small_rationals() {
        for (p, q) in [(1i64, 3i64), (-22, 7), (355, 113), (7, 1)] {
            let r = rat(p, q);
            let d = Dyadic::from_rat(&r, 200);
            let rec = rational_reconstruct(&d, 64, -150).unwrap();
            assert_eq!(rec, r);
        }
    }

    #[test]
    fn rejects_irrational_targets() {
        let d = Dyadic::from_int(2).sqrt(256);
        assert!(rational_reconstruct(&d, 16, -200).is_none());
    }

    #[test]
    fn interpolation_round_trip() {
        // f(x) = 3x^3 - x + 1/2
        let f = |x: &Scalar| {
            &(&(&Scalar::int(3) * &x.pow(3)) - x) + &Scalar::Rat(rat(1, 2))
        };
        let pts: Vec<(Scalar, Scalar)> = (0..6)
            .map(|i| {
                let x = Scalar::int(i - 2);
                let y = f(&x);
                (x, y)
            })
            .collect();
        let coeffs = lagrange_interpolate(&pts);
        assert_eq!(coeffs.len(), 4);
        let probe = Scalar::Rat(rat(5, 3));
        assert_eq!(poly_eval(&coeffs, &probe), f(&probe));
    }
}
