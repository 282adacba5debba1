//! The non-simply-laced Dynkin and Euclidean rows and their `Gamma'`.

use serde::Serialize;

use super::prime_triple::construct_prime_triple;
use crate::cartan::{
    find_minimal_symmetrizer, recognize_simply_laced, samples, valued_graph, CartanMatrix,
    CartanTriple, Orientation,
};
use crate::error::{Error, Result};

/// One instance of a row: the graph at a specific `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableInstance {
    pub n: Option<usize>,
    pub symmetrizer: Vec<u64>,
    /// The triple is reproduced exactly at the torsion prime.
    pub torsion_fixed: bool,
    pub expected: String,
    pub recognized: Option<String>,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub name: String,
    pub torsion_prime: u64,
    pub coprime_prime: u64,
    pub instances: Vec<TableInstance>,
}

impl TableRow {
    pub fn matched(&self) -> bool {
        self.instances.iter().all(|i| i.torsion_fixed && i.matched)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn all_matched(&self) -> bool {
        self.rows.iter().all(TableRow::matched)
    }
}

type Family = fn(usize) -> CartanMatrix;
type Expected = fn(usize) -> String;

struct RowSpec {
    table: u8,
    name: &'static str,
    torsion: u64,
    coprime: u64,
    instances: Vec<(Option<usize>, CartanMatrix, String)>,
}

fn family(table: u8, name: &'static str, ns: [usize; 2], f: Family, expected: Expected) -> RowSpec {
    RowSpec {
        table,
        name,
        torsion: 2,
        coprime: 3,
        instances: ns.iter().map(|&n| (Some(n), f(n), expected(n))).collect(),
    }
}

fn single(table: u8, name: &'static str, torsion: u64, c: CartanMatrix, expected: &str) -> RowSpec {
    let coprime = if torsion == 2 { 3 } else { 2 };
    RowSpec {
        table,
        name,
        torsion,
        coprime,
        instances: vec![(None, c, expected.to_string())],
    }
}

fn rows() -> Vec<RowSpec> {
    vec![
        family(1, "B_n", [3, 4], samples::b_n, |n| format!("D{}", n + 1)),
        family(1, "C_n", [2, 3], samples::c_n, |n| {
            format!("A{}", 2 * n - 1)
        }),
        single(1, "F4", 2, samples::f4(), "E6"),
        single(1, "G2", 3, samples::g2_matrix(), "D4"),
        family(2, "~B_n", [2, 3], samples::b_tilde, |n| {
            format!("~D{}", n + 2)
        }),
        family(2, "~C_n", [2, 3], samples::c_tilde, |n| {
            format!("~A{}", 2 * n - 1)
        }),
        single(2, "~A11", 2, samples::a11_tilde_matrix(), "~D4"),
        family(2, "~BC_n", [2, 3], samples::bc_tilde, |n| {
            format!("~D{}", 2 * n + 2)
        }),
        family(2, "~BD_n", [3, 4], samples::bd_tilde, |n| {
            format!("~D{}", n + 1)
        }),
        family(2, "~CD_n", [3, 4], samples::cd_tilde, |n| {
            format!("~D{}", 2 * n)
        }),
        single(2, "~F41", 2, samples::f41_tilde(), "~E7"),
        single(2, "~F42", 2, samples::f42_tilde(), "~E6"),
        single(2, "~G21", 3, samples::g21_tilde(), "~E6"),
        single(2, "~G22", 3, samples::g22_tilde(), "~D4"),
    ]
}

fn instance(
    c: CartanMatrix,
    n: Option<usize>,
    expected: String,
    spec: &RowSpec,
) -> Result<TableInstance> {
    let d = find_minimal_symmetrizer(&c)?;
    let omega = Orientation::default_for(&c);
    let t = CartanTriple::new(c, d, omega)?;
    let torsion = construct_prime_triple(&t, spec.torsion)?;
    let torsion_fixed = torsion.triple == t;
    let coprime = construct_prime_triple(&t, spec.coprime)?;
    let recognized = recognize_simply_laced(&valued_graph(&coprime.triple.c))
        .ok()
        .and_then(|class| class.name);
    Ok(TableInstance {
        n,
        symmetrizer: t.d.diag().to_vec(),
        torsion_fixed,
        matched: recognized.as_deref() == Some(expected.as_str()),
        expected,
        recognized,
    })
}

/// Builds every row without judging it.
pub fn table_report() -> Result<TableReport> {
    let mut out = Vec::new();
    for spec in rows() {
        let instances = spec
            .instances
            .iter()
            .map(|(n, c, e)| instance(c.clone(), *n, e.clone(), &spec))
            .collect::<Result<Vec<_>>>()?;
        out.push(TableRow {
            table: spec.table,
            name: spec.name.to_string(),
            torsion_prime: spec.torsion,
            coprime_prime: spec.coprime,
            instances,
        });
    }
    Ok(TableReport { rows: out })
}

/// Like [`table_report`], but the first mismatching row is an error.
pub fn regenerate_tables() -> Result<TableReport> {
    let report = table_report()?;
    if let Some(row) = report.rows.iter().find(|r| !r.matched()) {
        let detail = row
            .instances
            .iter()
            .filter(|i| !(i.torsion_fixed && i.matched))
            .map(|i| {
                format!(
                    "n={:?}: torsion fixed {}, expected {}, got {}",
                    i.n,
                    i.torsion_fixed,
                    i.expected,
                    i.recognized.as_deref().unwrap_or("unrecognized")
                )
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::TableMismatch {
            row: row.name.clone(),
            detail,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_match() {
        let report = regenerate_tables().unwrap();
        assert_eq!(report.rows.len(), 14);
        assert_eq!(report.rows.iter().filter(|r| r.table == 1).count(), 4);
    }
}
