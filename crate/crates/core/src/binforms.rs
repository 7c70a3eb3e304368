//! Dense binary forms in `X, Z`: construction, the `GL2` substitution
//! action, iterated partial derivatives, and the r-transvection.
//!
//! Coefficients are stored in the raw basis: entry `i` is the coefficient of
//! `X^i Z^(d-i)`. The zero form keeps its formal degree so that degree
//! bookkeeping (roots at infinity, transvection index guards) stays exact.

use crate::error::FormError;
use crate::exactnum::{Rat, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Homogeneous polynomial of fixed formal degree in two variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    /// Builds a form of degree `coeffs.len() - 1` with entry `i` the
    /// coefficient of `X^i Z^(d-i)`.
    pub fn new(coeffs: Vec<Scalar>) -> BinaryForm {
        assert!(!coeffs.is_empty());
        BinaryForm {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn zero(degree: usize) -> BinaryForm {
        BinaryForm {
            degree,
            coeffs: vec![Scalar::zero(); degree + 1],
        }
    }

    pub fn constant(c: Scalar) -> BinaryForm {
        BinaryForm {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(coeffs.iter().map(|&c| Scalar::int(c)).collect())
    }

    /// `Z^d * p(X/Z)` for an affine polynomial given by ascending
    /// coefficients. A root at infinity appears as a factor of `Z` when
    /// `deg p < d`.
    pub fn homogenize(affine: &[Scalar], target_degree: usize) -> Result<BinaryForm, FormError> {
        let deg_p = affine_degree(affine);
        if deg_p > target_degree {
            return Err(FormError::DegreeOverflow {
                actual: deg_p,
                target: target_degree,
            });
        }
        let mut coeffs = vec![Scalar::zero(); target_degree + 1];
        for (i, c) in affine.iter().enumerate() {
            if i <= target_degree {
                coeffs[i] = c.clone();
            }
        }
        Ok(BinaryForm::new(coeffs))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree of the affine part `f(X, 1)`; `None` for the zero form.
    pub fn affine_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Multiplicity of the root at infinity `(1 : 0)`.
    pub fn infinity_multiplicity(&self) -> usize {
        match self.affine_degree() {
            Some(d) => self.degree - d,
            None => 0,
        }
    }

    pub fn radicand(&self) -> Option<i64> {
        self.coeffs.iter().find_map(|c| c.radicand())
    }

    pub fn scale(&self, s: &Scalar) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in form addition");
        BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &BinaryForm) -> BinaryForm {
        let degree = self.degree + rhs.degree;
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BinaryForm { degree, coeffs }
    }

    /// Iterated partial derivative; the zero form (of the right formal
    /// degree) once the order exceeds the degree.
    pub fn diff(&self, dx: usize, dz: usize) -> BinaryForm {
        let total = dx + dz;
        if total > self.degree {
            return BinaryForm::zero(0);
        }
        let degree = self.degree - total;
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            // term c * X^i Z^(d-i)
            if c.is_zero() || i < dx || self.degree - i < dz {
                continue;
            }
            let fx = falling(i, dx);
            let fz = falling(self.degree - i, dz);
            let factor = Scalar::Rat(Rat::from_integer(fx * fz));
            coeffs[i - dx] = &coeffs[i - dx] + &(c * &factor);
        }
        BinaryForm { degree, coeffs }
    }

    /// Substitution action `f(aX + bZ, cX + dZ)`.
    pub fn act(&self, m: &MoebiusMap) -> Result<BinaryForm, FormError> {
        if m.det().is_zero() {
            return Err(FormError::SingularMatrix);
        }
        let top = BinaryForm::new(vec![m.b.clone(), m.a.clone()]); // aX + bZ
        let bot = BinaryForm::new(vec![m.d.clone(), m.c.clone()]); // cX + dZ
        // powers of each linear factor up to the degree
        let mut top_pow = Vec::with_capacity(self.degree + 1);
        let mut bot_pow = Vec::with_capacity(self.degree + 1);
        top_pow.push(BinaryForm::constant(Scalar::one()));
        bot_pow.push(BinaryForm::constant(Scalar::one()));
        for i in 1..=self.degree {
            top_pow.push(top_pow[i - 1].mul(&top));
            bot_pow.push(bot_pow[i - 1].mul(&bot));
        }
        let mut out = BinaryForm::zero(self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = top_pow[i].mul(&bot_pow[self.degree - i]).scale(c);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// The r-transvection: a bilinear covariant of order
    /// `deg f + deg g - 2r`, with the combinatorial constant applied as a
    /// single global prefactor `(m-r)! (n-r)! / (m! n!)`.
    pub fn transvect(&self, rhs: &BinaryForm, r: usize) -> Result<BinaryForm, FormError> {
        let n = self.degree;
        let m = rhs.degree;
        if r > n {
            return Err(FormError::TransvectionIndex { r, deg: n });
        }
        if r > m {
            return Err(FormError::TransvectionIndex { r, deg: m });
        }
        let degree = n + m - 2 * r;
        let mut sum = BinaryForm::zero(degree);
        for k in 0..=r {
            let left = self.diff(r - k, k);
            let right = rhs.diff(k, r - k);
            let mut term = left.mul(&right);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = binomial(r, k) * BigInt::from(sign);
            term = term.scale(&Scalar::Rat(Rat::from_integer(c)));
            sum = sum.add(&term);
        }
        let pref = Rat::new(
            factorial(m - r) * factorial(n - r),
            factorial(m) * factorial(n),
        );
        Ok(sum.scale(&Scalar::Rat(pref)))
    }

    /// Derivative-convention transvection: indices past a degree read as the
    /// zero form, so the result is zero instead of an error.
    pub fn transvect_or_zero(&self, rhs: &BinaryForm, r: usize) -> BinaryForm {
        match self.transvect(rhs, r) {
            Ok(f) => f,
            Err(_) => {
                let n = self.degree + rhs.degree;
                BinaryForm::zero(if 2 * r > n { 0 } else { n - 2 * r })
            }
        }
    }

    /// The value as a constant, for order-zero covariants.
    pub fn as_constant(&self) -> Option<&Scalar> {
        if self.degree == 0 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Evaluation at an exact projective point given affinely.
    pub fn eval_affine(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// gcd of the affine parts, monic; used by squarefreeness checks.
    pub fn affine_gcd(&self, rhs: &BinaryForm) -> Vec<Scalar> {
        let a = trim(self.coeffs.clone());
        let b = trim(rhs.coeffs.clone());
        poly_gcd(a, b)
    }

    /// A binary form is squarefree when its affine part has no repeated
    /// root and infinity occurs with multiplicity at most one.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() || self.infinity_multiplicity() > 1 {
            return false;
        }
        let f = trim(self.coeffs.clone());
        if f.len() <= 1 {
            return true; // nonzero constant: no affine roots at all
        }
        let fp = poly_derivative(&f);
        poly_gcd(f, fp).len() == 1
    }
}

fn affine_degree(coeffs: &[Scalar]) -> usize {
    coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    if v.is_empty() {
        v.push(Scalar::zero());
    }
    v
}

fn poly_derivative(f: &[Scalar]) -> Vec<Scalar> {
    if f.len() <= 1 {
        return vec![Scalar::zero()];
    }
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &Scalar::int(i as i64))
        .collect()
}

/// Monic gcd of dense univariate polynomials over the scalar field.
pub fn poly_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Vec<Scalar> {
    a = trim(a);
    b = trim(b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = trim(r);
    }
    // normalize monic
    let lead = a.last().unwrap().clone();
    if !lead.is_zero() && !lead.is_one() {
        let inv = lead.try_inv().expect("nonzero leading coefficient");
        a = a.iter().map(|c| c * &inv).collect();
    }
    a
}

fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].try_inv().expect("nonzero divisor");
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let q = &r[dr] * &lead_inv;
        if !q.is_zero() {
            for i in 0..=db {
                let idx = dr - db + i;
                r[idx] = &r[idx] - &(&q * &b[i]);
            }
        }
        r.pop();
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        if r.is_empty() {
            r.push(Scalar::zero());
        }
    }
    r
}

/// Exact division of univariate polynomials; `None` if not divisible.
pub fn poly_div_exact(a: &[Scalar], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if b.len() == 1 && b[0].is_zero() {
        return None;
    }
    if a.len() < b.len() {
        return if a.len() == 1 && a[0].is_zero() {
            Some(vec![Scalar::zero()])
        } else {
            None
        };
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![Scalar::zero(); a.len() - db];
    let lead_inv = b[db].try_inv().ok()?;
    for k in (0..q.len()).rev() {
        let dr = k + db;
        let c = &r[dr] * &lead_inv;
        q[k] = c.clone();
        if !c.is_zero() {
            for i in 0..=db {
                r[k + i] = &r[k + i] - &(&c * &b[i]);
            }
        }
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn falling(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let zpow = self.degree - i;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*X^{i}")?;
            }
            if zpow > 0 {
                write!(f, "*Z^{zpow}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An invertible 2x2 matrix `(a b; c d)` acting on forms by substitution and
/// on the projective line by `x -> (a x + b) / (c x + d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl MoebiusMap {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> MoebiusMap {
        MoebiusMap { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> MoebiusMap {
        MoebiusMap::new(Scalar::int(a), Scalar::int(b), Scalar::int(c), Scalar::int(d))
    }

    pub fn identity() -> MoebiusMap {
        MoebiusMap::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }

    /// Projective inverse (adjugate): no division, same Moebius action.
    pub fn inverse_proj(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Scales so the first nonzero entry in row-major order is 1.
    pub fn normalize_proj(&self) -> MoebiusMap {
        for e in [&self.a, &self.b, &self.c, &self.d] {
            if !e.is_zero() {
                let inv = e.try_inv().expect("nonzero entry");
                return MoebiusMap {
                    a: &self.a * &inv,
                    b: &self.b * &inv,
                    c: &self.c * &inv,
                    d: &self.d * &inv,
                };
            }
        }
        self.clone()
    }

    /// Fixed-point form `c X^2 + (d - a) X Z - b Z^2`, whose projective
    /// roots (including infinity when `c = 0`) are the fixed points.
    pub fn fixed_point_form(&self) -> BinaryForm {
        BinaryForm::new(vec![-&self.b, &self.d - &self.a, self.c.clone()])
    }

    /// Image of an exact projective point `(u : v)`.
    pub fn apply_proj(&self, u: &Scalar, v: &Scalar) -> (Scalar, Scalar) {
        (
            &(&self.a * u) + &(&self.b * v),
            &(&self.c * u) + &(&self.d * v),
        )
    }
}

pub fn act(m: &MoebiusMap, f: &BinaryForm) -> Result<BinaryForm, FormError> {
    f.act(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn x6_plus_z6() -> BinaryForm {
        BinaryForm::from_ints(&[1, 0, 0, 0, 0, 0, 1])
    }

    #[test]
    fn identity_action_fixes_forms() {
        let f = BinaryForm::from_ints(&[3, -1, 4, 1]);
        assert_eq!(f.act(&MoebiusMap::identity()).unwrap(), f);
    }

    #[test]
    fn swap_reverses_coefficients() {
        let f = BinaryForm::from_ints(&[3, -1, 4, 1]);
        let swap = MoebiusMap::from_ints(0, 1, 1, 0);
        let g = f.act(&swap).unwrap();
        assert_eq!(g, BinaryForm::from_ints(&[1, 4, -1, 3]));
    }

    #[test]
    fn diagonal_action_scales() {
        let m = MoebiusMap::from_ints(2, 0, 0, 1);
        let g = x6_plus_z6().act(&m).unwrap();
        assert_eq!(g, BinaryForm::from_ints(&[1, 0, 0, 0, 0, 0, 64]));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = MoebiusMap::from_ints(1, 2, 2, 4);
        assert_eq!(
            x6_plus_z6().act(&m).unwrap_err(),
            FormError::SingularMatrix
        );
    }

    #[test]
    fn transvection_r0_is_product() {
        let f = BinaryForm::from_ints(&[2, 0, -3, 1]);
        let g = BinaryForm::from_ints(&[1, 5]);
        assert_eq!(f.transvect(&g, 0).unwrap(), f.mul(&g));
    }

    #[test]
    fn odd_self_transvection_vanishes() {
        let f = BinaryForm::from_ints(&[2, 7, -3, 1, 4]);
        assert!(f.transvect(&f, 1).unwrap().is_zero());
        assert!(f.transvect(&f, 3).unwrap().is_zero());
    }

    #[test]
    fn quadratic_self_transvection() {
        // frozen from the expanded differential sum: ((X^2+Z^2, X^2+Z^2))^2 = 2
        let f = BinaryForm::from_ints(&[1, 0, 1]);
        let t = f.transvect(&f, 2).unwrap();
        assert_eq!(t.as_constant().unwrap(), &Scalar::int(2));
    }

    #[test]
    fn sextic_self_transvection() {
        let f = x6_plus_z6();
        let t = f.transvect(&f, 6).unwrap();
        assert_eq!(t.as_constant().unwrap(), &Scalar::int(2));
    }

    #[test]
    fn transvection_index_guard() {
        let f = BinaryForm::from_ints(&[1, 0, 1]);
        let g = BinaryForm::from_ints(&[1, 1]);
        assert!(matches!(
            f.transvect(&g, 2),
            Err(FormError::TransvectionIndex { r: 2, deg: 1 })
        ));
        assert!(f.transvect_or_zero(&g, 2).is_zero());
    }

    #[test]
    fn derivative_basics() {
        let f = BinaryForm::from_ints(&[0, 0, 1]); // X^2
        let d = f.diff(1, 0);
        assert_eq!(d, BinaryForm::from_ints(&[0, 2]));
        let xz = BinaryForm::from_ints(&[0, 1, 0]); // X Z
        assert_eq!(
            xz.diff(1, 1).as_constant().unwrap(),
            &Scalar::int(1)
        );
        assert!(f.diff(2, 1).is_zero());
    }

    #[test]
    fn homogenize_examples() {
        // X^5 - X into degree 6
        let p: Vec<Scalar> = [0, -1, 0, 0, 0, 1].iter().map(|&c| Scalar::int(c)).collect();
        let f = BinaryForm::homogenize(&p, 6).unwrap();
        assert_eq!(f, BinaryForm::from_ints(&[0, -1, 0, 0, 0, 1, 0]));
        assert_eq!(f.infinity_multiplicity(), 1);
        let one = [Scalar::one()];
        assert_eq!(
            BinaryForm::homogenize(&one, 2).unwrap(),
            BinaryForm::from_ints(&[1, 0, 0])
        );
        let too_big: Vec<Scalar> = (0..8).map(|_| Scalar::one()).collect();
        assert!(BinaryForm::homogenize(&too_big, 6).is_err());
    }

    #[test]
    fn squarefree_detection() {
        let sq = BinaryForm::from_ints(&[1, 2, 1]); // (X + Z)^2
        assert!(!sq.is_squarefree());
        let ok = BinaryForm::from_ints(&[1, 0, 1]);
        assert!(ok.is_squarefree());
        // double root at infinity
        let inf2 = BinaryForm::from_ints(&[1, 1, 0, 0]);
        assert!(!inf2.is_squarefree());
    }

    #[test]
    fn poly_division_exact() {
        // (z + 1)(z^2 - 6z + 1) = z^3 - 5z^2 - 5z + 1
        let prod: Vec<Scalar> = [1, -5, -5, 1].iter().map(|&c| Scalar::int(c)).collect();
        let lin: Vec<Scalar> = [1, 1].iter().map(|&c| Scalar::int(c)).collect();
        let qout = poly_div_exact(&prod, &lin).unwrap();
        assert_eq!(
            qout,
            [1, -6, 1].iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>()
        );
        let bad: Vec<Scalar> = [1, 2].iter().map(|&c| Scalar::int(c)).collect();
        assert!(poly_div_exact(&prod, &bad).is_none());
    }

    #[test]
    fn composition_is_contravariant() {
        let f = BinaryForm::from_ints(&[1, 2, 0, -1, 3]);
        let m = MoebiusMap::from_ints(2, 1, 1, 1);
        let n = MoebiusMap::from_ints(1, -1, 0, 3);
        let mn = m.compose(&n);
        let lhs = f.act(&mn).unwrap();
        let rhs = f.act(&m).unwrap().act(&n).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fixed_point_form_roots() {
        // x -> 1/x fixes +-1
        let inv = MoebiusMap::from_ints(0, 1, 1, 0);
        let q = inv.fixed_point_form();
        assert!(q.eval_affine(&Scalar::int(1)).is_zero());
        assert!(q.eval_affine(&Scalar::int(-1)).is_zero());
    }

    #[test]
    fn scalar_rational_mix() {
        let f = BinaryForm::new(vec![
            Scalar::Rat(rat(1, 2)),
            Scalar::quad(rat(0, 1), rat(2, 1), -3),
        ]);
        let g = f.scale(&Scalar::int(2));
        assert_eq!(g.coeff(0), &Scalar::one());
    }
}
