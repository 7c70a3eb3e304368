//! The embedded registry of admissible automorphism groups: per row a group
//! label, the reduced group, the locus dimension as a formula in `(g, n)`,
//! side constraints, ramification signature, involution count, the
//! fixed-orbit fingerprint used for identification, and the recipe for
//! generating members of the family.

use crate::exactnum::{rat_int, Rat};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReducedFamily {
    /// Cyclic rows; the row is parametrized by the rotation order `n`.
    Z,
    /// Dihedral rows parametrized by `n` (group order `2n`).
    D,
    A4,
    S4,
    A5,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DimFormula {
    pub g_num: i64,
    pub c_num: i64,
    pub n_num: i64,
    pub den: i64,
    pub den_times_n: bool,
}

impl DimFormula {
    /// Exact value of the dimension formula at `(g, n)`.
    pub fn eval(&self, g: usize, n: usize) -> Rat {
        let num = rat_int(self.g_num) * rat_int(g as i64)
            + rat_int(self.c_num)
            + rat_int(self.n_num) * rat_int(n as i64);
        let den = if self.den_times_n {
            rat_int(self.den) * rat_int(n as i64)
        } else {
            rat_int(self.den)
        };
        num / den
    }

    /// The dimension as a nonnegative integer, when it is one.
    pub fn delta(&self, g: usize, n: usize) -> Option<usize> {
        let v = self.eval(g, n);
        if v.is_integer() && !v.is_negative() {
            v.to_integer().try_into().ok()
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub enum Constraint {
    #[serde(rename = "n_lt_g_plus_1")]
    NLtGPlus1,
    #[serde(rename = "n_lt_g")]
    NLtG,
    #[serde(rename = "n_ge_2")]
    NGe2,
    #[serde(rename = "delta_nonzero")]
    DeltaNonzero,
    #[serde(rename = "g_ne_2")]
    GNe2,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct InvFormula {
    pub n_coeff: i64,
    pub c: i64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyRecipe {
    /// `Y^2 = X^{nt} + a_1 X^{n(t-1)} + ... + a_{t-1} X^n + 1`, optionally
    /// times `X`, with `nt` one of `2g+2`, `2g+1`, `2g`.
    Cyclic { nt: String, x_factor: bool },
    /// `Y^2 = (cofactors) * prod_i (X^{2n} + lambda_i X^n + 1)`.
    Dihedral { cofactors: Vec<String> },
    /// `Y^2 = (cofactors) * prod_i G_i(lambda_i)` for the tetrahedral,
    /// octahedral and icosahedral blocks.
    Fixed { block: String, cofactors: Vec<String> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Table1Row {
    pub id: u32,
    pub group: String,
    pub reduced: ReducedFamily,
    pub delta: DimFormula,
    pub constraints: Vec<Constraint>,
    pub signature: String,
    pub phi: String,
    pub involutions: Option<InvFormula>,
    pub fingerprint: Vec<u8>,
    pub family: FamilyRecipe,
}

impl Table1Row {
    pub fn uses_n(&self) -> bool {
        matches!(self.reduced, ReducedFamily::Z | ReducedFamily::D)
    }

    pub fn constraints_hold(&self, g: usize, n: usize) -> bool {
        self.constraints.iter().all(|c| match c {
            Constraint::NLtGPlus1 => n < g + 1,
            Constraint::NLtG => n < g,
            Constraint::NGe2 => n >= 2,
            Constraint::GNe2 => g != 2,
            Constraint::DeltaNonzero => self.delta.delta(g, n) != Some(0),
        })
    }

    /// `Some(delta)` when the row is admissible at `(g, n)`.
    pub fn admissible(&self, g: usize, n: usize) -> Option<usize> {
        if !self.constraints_hold(g, n) {
            return None;
        }
        self.delta.delta(g, n)
    }

    /// Group label with `n` substituted, e.g. `Z2xD4` or `Z10`.
    pub fn label(&self, n: usize) -> String {
        self.group
            .replace("{2n}", &(2 * n).to_string())
            .replace("{n}", &n.to_string())
    }

    /// Canonical abstract group name. Rows whose labels denote isomorphic
    /// groups for small `n` are folded together so route comparison is
    /// well defined: `Z2 x Z_n` and `Z2 x D_n` with odd `n` are cyclic
    /// resp. dihedral of twice the order, `V_2` is the dihedral group of
    /// order 8 and `H_2`, `U_2` are both `Z4 x Z2`.
    pub fn canonical_name(&self, n: usize) -> String {
        match (self.group.as_str(), n) {
            ("Z2xZ{n}", n) if n % 2 == 1 => format!("Z{}", 2 * n),
            ("Z2xD{n}", n) if n % 2 == 1 => format!("D{}", 2 * n),
            ("V{n}", 2) => "D4".to_string(),
            ("H{n}", 2) | ("U{n}", 2) => "Z4xZ2".to_string(),
            _ => self.label(n),
        }
    }

    /// Full group order `2 * |reduced|`.
    pub fn group_order(&self, n: usize) -> usize {
        2 * match self.reduced {
            ReducedFamily::Z => n,
            ReducedFamily::D => 2 * n,
            ReducedFamily::A4 => 12,
            ReducedFamily::S4 => 24,
            ReducedFamily::A5 => 60,
        }
    }

    pub fn involution_count(&self, n: usize) -> Option<i64> {
        self.involutions
            .as_ref()
            .map(|f| f.n_coeff * n as i64 + f.c)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub notes: Vec<String>,
    pub rows: Vec<Table1Row>,
}

static REGISTRY: OnceLock<Registry> = OnceLock::new();

pub fn registry() -> &'static Registry {
    REGISTRY.get_or_init(|| {
        serde_json::from_str(include_str!("../../data/registry.json"))
            .expect("embedded registry parses")
    })
}

pub fn row_by_id(id: u32) -> Option<&'static Table1Row> {
    registry().rows.iter().find(|r| r.id == id)
}

/// A registry row evaluated at a concrete `(g, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluatedRow {
    pub id: u32,
    pub group: String,
    pub canonical: String,
    pub reduced: ReducedFamily,
    pub n: usize,
    pub delta: usize,
    pub order: usize,
    pub involutions: Option<i64>,
    pub signature: String,
    pub phi: String,
}

pub fn evaluate(row: &Table1Row, n: usize, delta: usize) -> EvaluatedRow {
    EvaluatedRow {
        id: row.id,
        group: row.label(n),
        canonical: row.canonical_name(n),
        reduced: row.reduced,
        n,
        delta,
        order: row.group_order(n),
        involutions: row.involution_count(n),
        signature: row.signature.clone(),
        phi: row.phi.clone(),
    }
}

/// All rows admissible at genus `g`, optionally restricted to one group
/// label (with `n` substituted) or a reduced family name.
pub fn table1_lookup(g: usize, filter: Option<&str>) -> Vec<EvaluatedRow> {
    let mut out = Vec::new();
    for row in &registry().rows {
        let ns: Vec<usize> = if row.uses_n() {
            (2..=2 * g + 2).collect()
        } else {
            vec![0]
        };
        for n in ns {
            if let Some(delta) = row.admissible(g, n) {
                let ev = evaluate(row, n, delta);
                let keep = match filter {
                    None => true,
                    Some(f) => {
                        ev.group.eq_ignore_ascii_case(f)
                            || ev.canonical.eq_ignore_ascii_case(f)
                            || format!("{:?}", ev.reduced).eq_ignore_ascii_case(f)
                    }
                };
                if keep {
                    out.push(ev);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_loads_31_rows() {
        assert_eq!(registry().rows.len(), 31);
        assert_eq!(registry().version, 1);
    }

    #[test]
    fn gl23_at_genus_two() {
        // delta = (g-2)/12 = 0 and 13 involutions
        let rows = table1_lookup(2, Some("GL2(3)"));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].delta, 0);
        assert_eq!(rows[0].involutions, Some(13));
        assert_eq!(rows[0].order, 48);
    }

    #[test]
    fn no_a5_rows_at_genus_two() {
        let rows: Vec<_> = table1_lookup(2, None)
            .into_iter()
            .filter(|r| r.reduced == ReducedFamily::A5)
            .collect();
        assert!(rows.is_empty());
    }

    #[test]
    fn w3_at_genus_eight() {
        let rows = table1_lookup(8, Some("W3"));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].delta, 0);
        assert_eq!(rows[0].involutions, Some(1));
    }

    #[test]
    fn wiman_row_at_each_genus() {
        // row 2 with n = 2g+1 has delta = 0: the maximal cyclic curve
        for g in 2..=6 {
            let row = row_by_id(2).unwrap();
            assert_eq!(row.admissible(g, 2 * g + 1), Some(0));
            assert_eq!(row.canonical_name(2 * g + 1), format!("Z{}", 4 * g + 2));
        }
    }

    #[test]
    fn excluded_degenerate_rows() {
        // (g-3)/6 at g = 3 would be the octahedral face curve: excluded
        assert_eq!(row_by_id(12).unwrap().admissible(3, 0), None);
        // H_1 and G_1 are excluded via n >= 2
        assert_eq!(row_by_id(7).unwrap().admissible(4, 1), None);
        assert_eq!(row_by_id(9).unwrap().admissible(4, 1), None);
        // U_n does not occur at genus 2
        assert_eq!(row_by_id(8).unwrap().admissible(2, 4), None);
    }

    #[test]
    fn canonical_merges() {
        assert_eq!(row_by_id(5).unwrap().canonical_name(2), "D4");
        assert_eq!(row_by_id(6).unwrap().canonical_name(2), "D4");
        assert_eq!(row_by_id(7).unwrap().canonical_name(2), "Z4xZ2");
        assert_eq!(row_by_id(8).unwrap().canonical_name(2), "Z4xZ2");
        assert_eq!(row_by_id(4).unwrap().canonical_name(3), "D6");
        assert_eq!(row_by_id(1).unwrap().canonical_name(5), "Z10");
    }
}
