//! Curve families: the hyperelliptic curve type, generators for every
//! parametrized family in the registry, and the Hurwitz/Wiman bounds.

pub mod registry;

pub use registry::{
    registry, row_by_id, table1_lookup, EvaluatedRow, FamilyRecipe, ReducedFamily, Table1Row,
};

use crate::binforms::BinaryForm;
use crate::error::CurveError;
use crate::exactnum::{rat_int, Rat, Scalar};
use serde::{Deserialize, Serialize};

/// Genus `g >= 2` curve `Y^2 = F(X)` with `F` a squarefree binary form of
/// degree `2g + 2` (a root at infinity stands in when the affine degree is
/// `2g + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticCurve {
    genus: usize,
    form: BinaryForm,
}

impl HyperellipticCurve {
    pub fn from_form(form: BinaryForm, genus: usize) -> Result<Self, CurveError> {
        if form.degree() != 2 * genus + 2 {
            return Err(CurveError::GenusMismatch {
                declared: genus,
                inferred: inferred_genus(&form).unwrap_or(0),
            });
        }
        if genus < 2 {
            return Err(CurveError::DegreeTooSmall(form.degree()));
        }
        if !form.is_squarefree() {
            return Err(CurveError::NotSquarefree);
        }
        Ok(HyperellipticCurve { genus, form })
    }

    /// Builds a curve from ascending affine coefficients of `F(X)`.
    pub fn from_affine(coeffs: &[Scalar]) -> Result<Self, CurveError> {
        let deg = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(CurveError::DegreeTooSmall(0))?;
        if deg < 5 {
            return Err(CurveError::DegreeTooSmall(deg));
        }
        let genus = (deg - 1) / 2; // 2g+1 or 2g+2 both land on g
        let form = BinaryForm::homogenize(coeffs, 2 * genus + 2)
            .map_err(|_| CurveError::DegreeTooSmall(deg))?;
        HyperellipticCurve::from_form(form, genus)
    }

    pub fn from_affine_ints(coeffs: &[i64]) -> Result<Self, CurveError> {
        let v: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::int(c)).collect();
        HyperellipticCurve::from_affine(&v)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn branch_degree(&self) -> usize {
        2 * self.genus + 2
    }
}

fn inferred_genus(form: &BinaryForm) -> Option<usize> {
    let d = form.affine_degree()?;
    if d < 5 {
        None
    } else {
        Some((d - 1) / 2)
    }
}

/// `|Aut| <= 84(g-1)` and element orders `<= 2(2g+1)`.
pub fn bounds_check(genus: usize, claimed_order: usize, max_element_order: usize) -> bool {
    claimed_order <= 84 * (genus - 1) && max_element_order <= 2 * (2 * genus + 1)
}

/// Which reading of the two suspicious icosahedral orbit polynomials to use.
/// `Corrected` is the adopted default: it is the reading fixed by the
/// icosahedral action (the adjudication test in the acceptance suite runs
/// both and confirms only the corrected one passes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum A5Reading {
    Verbatim,
    #[default]
    Corrected,
}

/// Distinguished orbit polynomials, by role in the relevant rotation group.
pub fn named_form(name: &str, reading: A5Reading) -> Option<Vec<Scalar>> {
    let ints = |v: &[(usize, i64)], deg: usize| -> Vec<Scalar> {
        let mut c = vec![Scalar::zero(); deg + 1];
        for &(i, val) in v {
            c[i] = Scalar::int(val);
        }
        c
    };
    Some(match name {
        // octahedron vertices {0, oo, +-1, +-i}: X^5 - X
        "oct_vertex" => ints(&[(1, -1), (5, 1)], 5),
        // octahedron face centers: X^8 + 14 X^4 + 1
        "oct_face" => ints(&[(0, 1), (4, 14), (8, 1)], 8),
        // octahedron edge midpoints: X^12 - 33 X^8 - 33 X^4 + 1
        "oct_edge" => ints(&[(0, 1), (4, -33), (8, -33), (12, 1)], 12),
        // tetrahedron vertices: X^4 + 2 sqrt(-3) X^2 + 1
        "tet_vertex" => {
            let mut c = ints(&[(0, 1), (4, 1)], 4);
            c[2] = Scalar::quad(Rat::from_integer(0.into()), rat_int(2), -3);
            c
        }
        // icosahedron vertices {0, oo} + roots: X * T(X)
        "ico_vertex" => match reading {
            A5Reading::Verbatim => ints(&[(1, -1), (2, 10), (11, 1)], 11),
            A5Reading::Corrected => ints(&[(1, -1), (6, 11), (11, 1)], 11),
        },
        // icosahedron face centers
        "ico_face" => ints(&[(0, 1), (5, 228), (10, 494), (15, -228), (20, 1)], 20),
        // icosahedron edge midpoints
        "ico_edge" => match reading {
            A5Reading::Verbatim => ints(
                &[(0, 1), (5, -522), (15, -10005), (20, -10005), (25, 522), (30, 1)],
                30,
            ),
            A5Reading::Corrected => ints(
                &[(0, 1), (5, -522), (10, -10005), (20, -10005), (25, 522), (30, 1)],
                30,
            ),
        },
        _ => return None,
    })
}

/// One tetrahedral-block factor `G_i`.
pub fn a4_factor(lambda: &Scalar) -> Result<Vec<Scalar>, CurveError> {
    let l2 = lambda * lambda;
    if (&l2 + &Scalar::int(108)).is_zero() {
        return Err(CurveError::BadParameter(
            "tetrahedral factor needs lambda^2 + 108 != 0".into(),
        ));
    }
    let neg = -lambda;
    Ok(vec![
        Scalar::one(),
        Scalar::zero(),
        neg.clone(),
        Scalar::zero(),
        Scalar::int(-33),
        Scalar::zero(),
        &Scalar::int(2) * lambda,
        Scalar::zero(),
        Scalar::int(-33),
        Scalar::zero(),
        neg,
        Scalar::zero(),
        Scalar::one(),
    ])
}

/// One octahedral-block factor `G_i`.
pub fn s4_factor(lambda: &Scalar) -> Vec<Scalar> {
    let a = lambda.clone();
    let b = &Scalar::int(759) - &(&Scalar::int(4) * lambda);
    let c = &Scalar::int(2) * &(&(&Scalar::int(3) * lambda) + &Scalar::int(1288));
    let mut v = vec![Scalar::zero(); 25];
    v[0] = Scalar::one();
    v[4] = a.clone();
    v[8] = b.clone();
    v[12] = c;
    v[16] = b;
    v[20] = a;
    v[24] = Scalar::one();
    v
}

/// One icosahedral-block factor `G_i` (degree 60, leading coefficient
/// `lambda - 1`).
pub fn a5_factor(lambda: &Scalar) -> Result<Vec<Scalar>, CurveError> {
    let l = lambda;
    let lin = |a: i64, b: i64| -> Scalar { &(&Scalar::int(a) * l) + &Scalar::int(b) };
    let lead = lin(1, -1);
    if lead.is_zero() {
        return Err(CurveError::BadParameter(
            "icosahedral factor degenerates at lambda = 1".into(),
        ));
    }
    let mut v = vec![Scalar::zero(); 61];
    v[60] = lead.clone();
    v[55] = -&(&Scalar::int(36) * &lin(19, 29));
    v[50] = &Scalar::int(6) * &lin(26239, -42079);
    v[45] = -&(&Scalar::int(540) * &lin(23199, -19343));
    v[40] = &Scalar::int(105) * &lin(737719, -953143);
    v[35] = -&(&Scalar::int(72) * &lin(1815127, -145087));
    v[30] = -&(&Scalar::int(4) * &lin(8302981, 49913771));
    v[25] = &Scalar::int(72) * &lin(1815127, -145087);
    v[20] = &Scalar::int(105) * &lin(737719, -953143);
    v[15] = &Scalar::int(540) * &lin(23199, -19343);
    v[10] = &Scalar::int(6) * &lin(26239, -42079);
    v[5] = &Scalar::int(36) * &lin(19, 29);
    v[0] = lead;
    Ok(v)
}

/// Parameters for one registry row: the genus, the rotation order `n` for
/// cyclic/dihedral rows, and one lambda per dimension of the locus.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub row_id: u32,
    pub genus: usize,
    pub n: usize,
    pub lambdas: Vec<Scalar>,
    pub reading: A5Reading,
}

impl FamilySpec {
    pub fn new(row_id: u32, genus: usize, n: usize, lambdas: Vec<Scalar>) -> FamilySpec {
        FamilySpec {
            row_id,
            genus,
            n,
            lambdas,
            reading: A5Reading::default(),
        }
    }
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Expands the designated family member and validates it. Fails loudly when
/// the parameter choice makes the branch divisor collide.
pub fn generate(spec: &FamilySpec) -> Result<HyperellipticCurve, CurveError> {
    let row = row_by_id(spec.row_id)
        .ok_or_else(|| CurveError::Inadmissible(format!("no registry row {}", spec.row_id)))?;
    let g = spec.genus;
    let n = if row.uses_n() { spec.n } else { 0 };
    let delta = row.admissible(g, n).ok_or_else(|| {
        CurveError::Inadmissible(format!(
            "row {} ({}) is not admissible at genus {g}, n = {n}",
            row.id,
            row.label(n)
        ))
    })?;
    if spec.lambdas.len() != delta {
        return Err(CurveError::BadParameter(format!(
            "row {} at genus {g} needs {delta} parameters, got {}",
            row.id,
            spec.lambdas.len()
        )));
    }

    let affine = match &row.family {
        FamilyRecipe::Cyclic { nt, x_factor } => {
            let nt_val = match nt.as_str() {
                "2g+2" => 2 * g + 2,
                "2g+1" => 2 * g + 1,
                "2g" => 2 * g,
                other => {
                    return Err(CurveError::Inadmissible(format!(
                        "unknown cyclic template {other}"
                    )))
                }
            };
            debug_assert_eq!(nt_val % n, 0);
            let t = nt_val / n;
            debug_assert_eq!(t, delta + 1);
            let mut inner = vec![Scalar::zero(); nt_val + 1];
            inner[nt_val] = Scalar::one();
            inner[0] = Scalar::one();
            for (i, a) in spec.lambdas.iter().enumerate() {
                inner[n * (t - 1 - i)] = a.clone();
            }
            if *x_factor {
                let mut v = vec![Scalar::zero()];
                v.extend(inner);
                v
            } else {
                inner
            }
        }
        FamilyRecipe::Dihedral { cofactors } => {
            if n % 2 != 0 {
                return Err(CurveError::Inadmissible(format!(
                    "dihedral family rows take even n, got {n}"
                )));
            }
            let mut f = vec![Scalar::one()];
            for name in cofactors {
                let co = match name.as_str() {
                    "x" => vec![Scalar::zero(), Scalar::one()],
                    "n_minus" => {
                        let mut v = vec![Scalar::zero(); n + 1];
                        v[0] = Scalar::int(-1);
                        v[n] = Scalar::one();
                        v
                    }
                    "2n_minus" => {
                        let mut v = vec![Scalar::zero(); 2 * n + 1];
                        v[0] = Scalar::int(-1);
                        v[2 * n] = Scalar::one();
                        v
                    }
                    other => {
                        return Err(CurveError::Inadmissible(format!(
                            "unknown dihedral cofactor {other}"
                        )))
                    }
                };
                f = poly_mul(&f, &co);
            }
            for lam in &spec.lambdas {
                let mut factor = vec![Scalar::zero(); 2 * n + 1];
                factor[0] = Scalar::one();
                factor[n] = lam.clone();
                factor[2 * n] = Scalar::one();
                f = poly_mul(&f, &factor);
            }
            f
        }
        FamilyRecipe::Fixed { block, cofactors } => {
            let mut f = vec![Scalar::one()];
            for name in cofactors {
                let co = named_form(name, spec.reading).ok_or_else(|| {
                    CurveError::Inadmissible(format!("unknown cofactor {name}"))
                })?;
                f = poly_mul(&f, &co);
            }
            for lam in &spec.lambdas {
                let factor = match block.as_str() {
                    "A4" => a4_factor(lam)?,
                    "S4" => Ok::<_, CurveError>(s4_factor(lam))?,
                    "A5" => a5_factor(lam)?,
                    other => {
                        return Err(CurveError::Inadmissible(format!("unknown block {other}")))
                    }
                };
                f = poly_mul(&f, &factor);
            }
            f
        }
    };

    let curve = HyperellipticCurve::from_affine(&affine)?;
    if curve.genus() != g {
        return Err(CurveError::GenusMismatch {
            declared: g,
            inferred: curve.genus(),
        });
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn genus_inference() {
        // X^5 - X: affine degree 5 -> genus 2, infinity branch point
        let c = HyperellipticCurve::from_affine_ints(&[0, -1, 0, 0, 0, 1]).unwrap();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.form().infinity_multiplicity(), 1);
        // degree 6 -> genus 2, no infinity
        let c = HyperellipticCurve::from_affine_ints(&[1, 0, -5, 0, -5, 0, 1]).unwrap();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.form().infinity_multiplicity(), 0);
    }

    #[test]
    fn non_squarefree_rejected() {
        let err = HyperellipticCurve::from_affine_ints(&[0, 0, 1, 0, 0, 0, 1]).unwrap_err();
        assert_eq!(err, CurveError::NotSquarefree);
        let err = HyperellipticCurve::from_affine_ints(&[1, 1]).unwrap_err();
        assert!(matches!(err, CurveError::DegreeTooSmall(_)));
    }

    #[test]
    fn tetrahedral_lambda_zero_is_octahedral_edge_form() {
        let f = a4_factor(&Scalar::zero()).unwrap();
        let r = named_form("oct_edge", A5Reading::Corrected).unwrap();
        assert_eq!(f, r);
    }

    #[test]
    fn tetrahedral_degenerate_lambda() {
        // lambda = 6 sqrt(-3) has lambda^2 + 108 = 0
        let bad = Scalar::quad(rat(0, 1), rat_int(6), -3);
        assert!(a4_factor(&bad).is_err());
    }

    #[test]
    fn dihedral_expansion_symmetric_functions() {
        // a_1 = s_1 and a_2 = t + s_2 in the expanded product
        let lambdas: Vec<Scalar> = vec![rat(3, 2), rat(-1, 3), rat(7, 5), rat(2, 7)]
            .into_iter()
            .map(Scalar::Rat)
            .collect();
        for t in 1..=4 {
            let lams = &lambdas[..t];
            let n = 2;
            let mut f = vec![Scalar::one()];
            for lam in lams {
                let mut factor = vec![Scalar::zero(); 2 * n + 1];
                factor[0] = Scalar::one();
                factor[n] = lam.clone();
                factor[2 * n] = Scalar::one();
                f = poly_mul(&f, &factor);
            }
            let deg = 2 * n * t;
            let s1 = lams.iter().fold(Scalar::zero(), |acc, l| &acc + l);
            assert_eq!(f[deg - n], s1, "a_1 = s_1 at t = {t}");
            if t >= 2 {
                let mut s2 = Scalar::zero();
                for i in 0..t {
                    for j in (i + 1)..t {
                        s2 = &s2 + &(&lams[i] * &lams[j]);
                    }
                }
                let expect = &Scalar::int(t as i64) + &s2;
                assert_eq!(f[deg - 2 * n], expect, "a_2 = t + s_2 at t = {t}");
            }
        }
    }

    #[test]
    fn wiman_family_curve() {
        // row 2 with n = 2g+1 and delta = 0: Y^2 = X^{2g+1} + 1
        let spec = FamilySpec::new(2, 2, 5, vec![]);
        let c = generate(&spec).unwrap();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.form().infinity_multiplicity(), 1);
    }

    #[test]
    fn degree_audit_over_rows_and_genera() {
        // every admissible row at g in 2..=8 produces degree 2g+2 with a few
        // random parameters
        let mut checked = 0;
        for g in 2..=8usize {
            for row in &registry().rows {
                let ns: Vec<usize> = if row.uses_n() {
                    (2..=2 * g + 2).collect()
                } else {
                    vec![0]
                };
                for n in ns {
                    if row.uses_n() && matches!(row.family, FamilyRecipe::Dihedral { .. }) && n % 2 == 1 {
                        continue;
                    }
                    let Some(delta) = row.admissible(g, n) else {
                        continue;
                    };
                    let lambdas: Vec<Scalar> = (0..delta)
                        .map(|i| Scalar::Rat(rat(7 * i as i64 + 3, 2)))
                        .collect();
                    let spec = FamilySpec::new(row.id, g, n, lambdas);
                    let c = generate(&spec).unwrap_or_else(|e| {
                        panic!("row {} g={g} n={n}: {e}", row.id);
                    });
                    assert_eq!(c.form().degree(), 2 * g + 2);
                    assert!(c.form().is_squarefree());
                    checked += 1;
                }
            }
        }
        assert!(checked > 30, "checked {checked} family members");
    }

    #[test]
    fn coincident_dihedral_parameters_fail_loudly() {
        // lambda = 2 gives (X^n + 1)^2
        let spec = FamilySpec::new(4, 3, 2, vec![Scalar::int(2), Scalar::int(5)]);
        assert_eq!(generate(&spec).unwrap_err(), CurveError::NotSquarefree);
    }

    #[test]
    fn bounds() {
        assert!(bounds_check(2, 48, 8));
        assert!(bounds_check(2, 10, 10));
        assert!(!bounds_check(2, 100, 2));
        assert!(!bounds_check(2, 4, 11));
    }
}
