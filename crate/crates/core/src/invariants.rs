//! Classical covariants and invariants of even-degree binary forms, the
//! absolute invariants, the moduli point used by the invariant-based
//! classification, and the vanishing predicates for tetrahedral, octahedral
//! and icosahedral reduced groups.
//!
//! Every entry is either an exact scalar or explicitly undefined with the
//! violated index constraint; undefined is never conflated with zero since
//! the classification branches on exact vanishing.

use crate::binforms::BinaryForm;
use crate::error::FormError;
use crate::exactnum::Scalar;
use crate::families::HyperellipticCurve;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// An invariant value or the reason it does not exist at this degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Value(Scalar),
    Undefined(String),
}

impl Entry {
    pub fn value(&self) -> Option<&Scalar> {
        match self {
            Entry::Value(v) => Some(v),
            Entry::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Entry::Value(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Entry::Value(v) if v.is_zero())
    }

    fn map2(&self, other: &Entry, f: impl FnOnce(&Scalar, &Scalar) -> Entry) -> Entry {
        match (self, other) {
            (Entry::Value(a), Entry::Value(b)) => f(a, b),
            (Entry::Undefined(r), _) | (_, Entry::Undefined(r)) => Entry::Undefined(r.clone()),
        }
    }

    /// Exact ratio, undefined on a vanishing denominator.
    pub fn ratio(&self, den: &Entry, name: &str) -> Entry {
        self.map2(den, |a, b| {
            if b.is_zero() {
                Entry::Undefined(format!("denominator of {name} vanishes"))
            } else {
                Entry::Value(a / b)
            }
        })
    }

    pub fn pow(&self, e: u64) -> Entry {
        match self {
            Entry::Value(v) => Entry::Value(v.pow(e)),
            Entry::Undefined(r) => Entry::Undefined(r.clone()),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Value(v) => write!(f, "{v}"),
            Entry::Undefined(r) => write!(f, "undefined ({r})"),
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Entry::Value(v) => v.serialize(ser),
            Entry::Undefined(_) => ser.serialize_none(),
        }
    }
}

/// The classical invariants of a form of degree `d = 2g + 2`, with the
/// intermediate covariants retained for audit and reuse.
#[derive(Clone, Debug)]
pub struct InvariantVector {
    pub degree: usize,
    pub i2: Entry,
    pub i3: Entry,
    pub i4: Entry,
    pub i4p: Entry,
    pub i6: Entry,
    pub i6p: Entry,
    pub i6pp: Entry,
    pub i12: Entry,
    /// (F,F)^(d-2), (F,F)^(d-4), (F,F)^(d-6), (F,F)^(d/2) and the order-8
    /// covariant entering I12, in that order, where defined.
    pub covariants: BTreeMap<&'static str, BinaryForm>,
}

impl InvariantVector {
    pub fn entries(&self) -> Vec<(&'static str, &Entry)> {
        vec![
            ("I2", &self.i2),
            ("I3", &self.i3),
            ("I4", &self.i4),
            ("I4p", &self.i4p),
            ("I6", &self.i6),
            ("I6p", &self.i6p),
            ("I6pp", &self.i6pp),
            ("I12", &self.i12),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| e)
    }

    /// Flat JSON: values or null plus a reason map for undefined entries.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (name, e) in self.entries() {
            match e {
                Entry::Value(v) => {
                    obj.insert(name.to_string(), serde_json::to_value(v).unwrap());
                }
                Entry::Undefined(r) => {
                    obj.insert(name.to_string(), serde_json::Value::Null);
                    obj.insert(format!("{name}_reason"), serde_json::Value::String(r.clone()));
                }
            }
        }
        serde_json::Value::Object(obj)
    }
}

fn transvect_entry(f: &BinaryForm, g: &BinaryForm, r: i64, what: &str) -> Result<BinaryForm, String> {
    if r < 0 {
        return Err(format!("{what}: transvection index {r} is negative"));
    }
    f.transvect(g, r as usize).map_err(|e| match e {
        FormError::TransvectionIndex { r, deg } => {
            format!("{what}: transvection index {r} exceeds operand degree {deg}")
        }
        other => format!("{what}: {other}"),
    })
}

fn scalar_of(form: &BinaryForm) -> Entry {
    match form.as_constant() {
        Some(c) => Entry::Value(c.clone()),
        None => Entry::Undefined("covariant has positive order".into()),
    }
}

/// Computes the full invariant chain for an even degree `d >= 6` form.
pub fn classical_invariants(f: &BinaryForm) -> Result<InvariantVector, FormError> {
    let d = f.degree();
    if d % 2 != 0 || d < 6 {
        return Err(FormError::BadDegree(d));
    }
    let mut covariants = BTreeMap::new();

    let i2 = match transvect_entry(f, f, d as i64, "I2") {
        Ok(c) => scalar_of(&c),
        Err(r) => Entry::Undefined(r),
    };

    // J_{4j} = (F,F)^(d-2j) has order 4j
    let j4 = transvect_entry(f, f, d as i64 - 2, "J4");
    let j8 = transvect_entry(f, f, d as i64 - 4, "J8");
    let j12 = transvect_entry(f, f, d as i64 - 6, "J12");
    let jd = transvect_entry(f, f, d as i64 / 2, "Jd");

    if let Ok(c) = &j4 {
        covariants.insert("J4", c.clone());
    }
    if let Ok(c) = &j8 {
        covariants.insert("J8", c.clone());
    }
    if let Ok(c) = &j12 {
        covariants.insert("J12", c.clone());
    }
    if let Ok(c) = &jd {
        covariants.insert("Jd", c.clone());
    }

    let i3 = match &jd {
        Ok(jd) => match transvect_entry(f, jd, d as i64, "I3") {
            Ok(c) => scalar_of(&c),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };

    let i4 = match &j4 {
        Ok(j4) => match transvect_entry(j4, j4, 4, "I4") {
            Ok(c) => scalar_of(&c),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };

    let i4p = match &j8 {
        Ok(j8) => match transvect_entry(j8, j8, 8, "I4p") {
            Ok(c) => scalar_of(&c),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };

    // shared intermediates (F, J4)^4 and (F, J8)^8, orders d-4 and d-8
    let fj4 = match &j4 {
        Ok(j4) => transvect_entry(f, j4, 4, "(F,J4)^4"),
        Err(r) => Err(r.clone()),
    };
    let fj8 = match &j8 {
        Ok(j8) => transvect_entry(f, j8, 8, "(F,J8)^8"),
        Err(r) => Err(r.clone()),
    };
    let fj12 = match &j12 {
        Ok(j12) => transvect_entry(f, j12, 12, "(F,J12)^12"),
        Err(r) => Err(r.clone()),
    };
    if let Ok(c) = &fj4 {
        covariants.insert("FJ4", c.clone());
    }
    if let Ok(c) = &fj8 {
        covariants.insert("FJ8", c.clone());
    }
    if let Ok(c) = &fj12 {
        covariants.insert("FJ12", c.clone());
    }

    let i6 = match &fj4 {
        Ok(c) => match transvect_entry(c, c, d as i64 - 4, "I6") {
            Ok(v) => scalar_of(&v),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };
    let i6p = match &fj8 {
        Ok(c) => match transvect_entry(c, c, d as i64 - 8, "I6p") {
            Ok(v) => scalar_of(&v),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };
    let i6pp = match &fj12 {
        Ok(c) => match transvect_entry(c, c, d as i64 - 12, "I6pp") {
            Ok(v) => scalar_of(&v),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };

    let m_cov = match (&fj4, &fj8) {
        (Ok(a), Ok(b)) => transvect_entry(a, b, d as i64 - 10, "M"),
        (Err(r), _) | (_, Err(r)) => Err(r.clone()),
    };
    if let Ok(c) = &m_cov {
        covariants.insert("M", c.clone());
    }
    let i12 = match &m_cov {
        Ok(m) => match transvect_entry(m, m, 8, "I12") {
            Ok(v) => scalar_of(&v),
            Err(r) => Entry::Undefined(r),
        },
        Err(r) => Entry::Undefined(r.clone()),
    };

    Ok(InvariantVector {
        degree: d,
        i2,
        i3,
        i4,
        i4p,
        i6,
        i6p,
        i6pp,
        i12,
        covariants,
    })
}

/// The absolute (weight-zero) invariants: exact ratios, undefined on a
/// vanishing denominator.
#[derive(Clone, Debug)]
pub struct AbsoluteInvariants {
    pub i1: Entry,
    pub i2: Entry,
    pub i3: Entry,
    pub j1: Entry,
    pub j2: Entry,
    pub s1: Entry,
    pub s2: Entry,
    pub v1: Entry,
    pub v2: Entry,
    pub v3: Entry,
    pub v4: Entry,
    pub v5: Entry,
}

impl AbsoluteInvariants {
    pub fn entries(&self) -> Vec<(&'static str, &Entry)> {
        vec![
            ("i1", &self.i1),
            ("i2", &self.i2),
            ("i3", &self.i3),
            ("j1", &self.j1),
            ("j2", &self.j2),
            ("s1", &self.s1),
            ("s2", &self.s2),
            ("v1", &self.v1),
            ("v2", &self.v2),
            ("v3", &self.v3),
            ("v4", &self.v4),
            ("v5", &self.v5),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (name, e) in self.entries() {
            match e {
                Entry::Value(v) => {
                    obj.insert(name.to_string(), serde_json::to_value(v).unwrap());
                }
                Entry::Undefined(r) => {
                    obj.insert(name.to_string(), serde_json::Value::Null);
                    obj.insert(format!("{name}_reason"), serde_json::Value::String(r.clone()));
                }
            }
        }
        serde_json::Value::Object(obj)
    }
}

pub fn absolute_invariants(iv: &InvariantVector) -> AbsoluteInvariants {
    let sq = |e: &Entry| e.pow(2);
    let cube = |e: &Entry| e.pow(3);
    AbsoluteInvariants {
        i1: iv.i4p.ratio(&sq(&iv.i2), "i1"),
        i2: sq(&iv.i3).ratio(&cube(&iv.i2), "i2"),
        i3: iv.i6pp.ratio(&cube(&iv.i2), "i3"),
        j1: iv.i6p.ratio(&sq(&iv.i3), "j1"),
        j2: iv.i6.ratio(&sq(&iv.i3), "j2"),
        s1: sq(&iv.i6).ratio(&iv.i12, "s1"),
        s2: sq(&iv.i6p).ratio(&iv.i12, "s2"),
        v1: iv.i6.ratio(&iv.i6pp, "v1"),
        v2: cube(&iv.i4p).ratio(&iv.i3.pow(4), "v2"),
        v3: iv.i6.ratio(&iv.i6p, "v3"),
        v4: sq(&iv.i6pp).ratio(&iv.i3.pow(4), "v4"),
        v5: iv.i6pp.ratio(&iv.i6p, "v5"),
    }
}

/// The piecewise moduli point: which pair (or single ratio) of absolute
/// invariants pins down the curve at this genus, branching on exact
/// vanishing of `I2`, `I3`, `I12`.
#[derive(Clone, Debug, Serialize)]
pub struct ModuliPoint {
    pub components: Vec<Scalar>,
    pub branch_taken: String,
}

pub fn moduli_point(c: &HyperellipticCurve) -> Result<ModuliPoint, String> {
    let g = c.genus();
    let iv = classical_invariants(c.form()).map_err(|e| e.to_string())?;
    moduli_point_of(&iv, g)
}

pub fn moduli_point_of(iv: &InvariantVector, g: usize) -> Result<ModuliPoint, String> {
    let abs = absolute_invariants(iv);
    let take = |entries: &[(&Entry, &str)], branch: &str| -> Result<ModuliPoint, String> {
        let mut components = Vec::new();
        for (e, name) in entries {
            match e {
                Entry::Value(v) => components.push(v.clone()),
                Entry::Undefined(r) => {
                    return Err(format!("moduli point undefined at branch {branch}: {name} {r}"))
                }
            }
        }
        Ok(ModuliPoint {
            components,
            branch_taken: branch.to_string(),
        })
    };
    match g {
        4 => take(&[(&abs.v1, "v1")], "v1 (g = 4)"),
        5 | 9 => {
            if !iv.i2.is_zero() && iv.i2.is_defined() {
                take(&[(&abs.i1, "i1"), (&abs.i2, "i2")], "(i1, i2), I2 != 0")
            } else {
                take(&[(&abs.v2, "v2")], "v2, I2 = 0")
            }
        }
        7 => {
            if !iv.i3.is_zero() && iv.i3.is_defined() {
                take(&[(&abs.j1, "j1"), (&abs.j2, "j2")], "(j1, j2), I3 != 0")
            } else {
                take(&[(&abs.v3, "v3")], "v3, I3 = 0")
            }
        }
        8 | 12 => {
            if !iv.i2.is_zero() && iv.i2.is_defined() {
                take(&[(&abs.i1, "i1"), (&abs.i3, "i3")], "(i1, i3), I2 != 0")
            } else {
                take(&[(&abs.v4, "v4")], "v4, I2 = 0")
            }
        }
        10 => {
            if !iv.i12.is_zero() && iv.i12.is_defined() {
                take(&[(&abs.s2, "s2"), (&abs.s1, "s1")], "(s2, s1), I12 != 0")
            } else {
                take(&[(&abs.v5, "v5")], "v5, I12 = 0")
            }
        }
        _ => Err(format!("genus {g} not covered by the moduli point")),
    }
}

/// Targets of the necessary-vanishing lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingTarget {
    A4,
    S4,
    A5,
}

/// Names of the invariants that must vanish for the target reduced group at
/// this genus. `A4` has genus-refined sets; `S4` requires `I4` alone; `A5`
/// requires five vanishings.
pub fn required_vanishings(target: VanishingTarget, g: usize) -> Vec<&'static str> {
    match target {
        VanishingTarget::A4 => match g {
            4 => vec!["I2", "I4", "I4p", "I6p"],
            5 | 9 | 12 => vec!["I4", "I6"],
            7 | 10 => vec!["I2", "I4", "I4p", "I6pp"],
            _ => vec!["I4"],
        },
        VanishingTarget::S4 => vec!["I4"],
        VanishingTarget::A5 => vec!["I4", "I4p", "I6", "I6p", "I12"],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub target: String,
    pub genus: usize,
    pub checks: Vec<(String, bool)>,
    pub all_hold: bool,
}

pub fn lemma_vanishing_check(c: &HyperellipticCurve, target: VanishingTarget) -> VanishingReport {
    let iv = classical_invariants(c.form()).expect("curve degree is even and >= 6");
    let mut checks = Vec::new();
    let mut all = true;
    for name in required_vanishings(target, c.genus()) {
        let e = iv.get(name).expect("known invariant name");
        let holds = e.is_zero();
        all &= holds;
        checks.push((name.to_string(), holds));
    }
    VanishingReport {
        target: format!("{target:?}"),
        genus: c.genus(),
        checks,
        all_hold: all,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binforms::MoebiusMap;

    fn x6_plus_z6() -> BinaryForm {
        BinaryForm::from_ints(&[1, 0, 0, 0, 0, 0, 1])
    }

    #[test]
    fn i2_of_the_sextic_is_two() {
        let iv = classical_invariants(&x6_plus_z6()).unwrap();
        assert_eq!(iv.i2, Entry::Value(Scalar::int(2)));
    }

    #[test]
    fn weight_law_for_i2() {
        // I2(act(M, F)) = det(M)^(2 * d/2) * I2(F) = 2^6 * 2 = 128
        let m = MoebiusMap::from_ints(2, 0, 0, 1);
        let g = x6_plus_z6().act(&m).unwrap();
        let iv = classical_invariants(&g).unwrap();
        assert_eq!(iv.i2, Entry::Value(Scalar::int(128)));
    }

    #[test]
    fn i3_identically_zero_for_even_genus() {
        // d/2 odd: the defining transvectant is antisymmetric
        let f = BinaryForm::from_ints(&[3, 1, -2, 0, 5, 1, 2]);
        let iv = classical_invariants(&f).unwrap();
        assert_eq!(iv.i3, Entry::Value(Scalar::zero()));
    }

    #[test]
    fn undefined_entries_at_low_degree() {
        let iv = classical_invariants(&x6_plus_z6()).unwrap();
        assert!(!iv.i6p.is_defined());
        assert!(!iv.i6pp.is_defined());
        assert!(!iv.i12.is_defined());
        assert!(iv.i4.is_defined());
        assert!(iv.i4p.is_defined());
        assert!(iv.i6.is_defined());
    }

    #[test]
    fn odd_degree_rejected() {
        let f = BinaryForm::from_ints(&[1, 0, 0, 0, 0, 1]);
        assert!(classical_invariants(&f).is_err());
    }

    #[test]
    fn absolute_undefined_on_vanishing_denominator() {
        // I2(X^5 Z - X Z^5) : compute and check i-family definedness logic
        let f = BinaryForm::from_ints(&[0, -1, 0, 0, 0, 1, 0]);
        let iv = classical_invariants(&f).unwrap();
        let abs = absolute_invariants(&iv);
        if iv.i2.is_zero() {
            assert!(!abs.i1.is_defined());
            assert!(!abs.i2.is_defined());
        }
    }

    #[test]
    fn sextic_absolute_identity() {
        let iv = classical_invariants(&x6_plus_z6()).unwrap();
        let abs = absolute_invariants(&iv);
        let i3 = iv.i3.value().unwrap();
        let i2v = iv.i2.value().unwrap();
        let expect = &(i3 * i3) / &(&(i2v * i2v) * i2v);
        assert_eq!(abs.i2, Entry::Value(expect));
    }

    #[test]
    fn moduli_point_genus_six_not_covered() {
        let err = moduli_point_of(
            &classical_invariants(&BinaryForm::from_ints(&[
                1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 1,
            ]))
            .unwrap(),
            6,
        )
        .unwrap_err();
        assert!(err.contains("not covered"));
    }

    #[test]
    fn moduli_point_genus_four_defers() {
        // I6pp needs transvection index 12 on a degree-10 form
        let f = BinaryForm::from_ints(&[1, 2, 0, 0, 1, 0, 0, 0, 0, 1, 3]);
        let iv = classical_invariants(&f).unwrap();
        assert!(!iv.i6pp.is_defined());
        assert!(moduli_point_of(&iv, 4).is_err());
    }
}
