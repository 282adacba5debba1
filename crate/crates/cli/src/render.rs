//! Text renderings and JSON documents for core results.

use std::fmt::Write;

use eicat_core::algebra::AlgebraDump;
use eicat_core::cartan::{ComponentClass, ValidationReport};
use eicat_core::ei_category::CategoryDump;
use eicat_core::ffield::FieldParams;
use eicat_core::transform::{MainIsomorphism, PrimeTriple, TableReport};
use serde_json::{json, Value};

use crate::input::{GraphDoc, TripleDoc};

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn validation(report: &ValidationReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let _ = write!(s, "{:<12} {}", c.name, mark(c.passed));
        if !c.detail.is_empty() {
            let _ = write!(s, "  {}", c.detail);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "valid: {}", report.valid());
    s
}

pub fn field(f: &FieldParams) -> String {
    format!("F_{}^{} (order {}, seed {:#x})", f.p, f.m, f.order, f.seed)
}

pub fn prime_triple_doc(pt: &PrimeTriple) -> Value {
    json!({
        "p": pt.p,
        "r": pt.factored.r,
        "d": pt.factored.d,
        "M": pt.index.iter().map(|&(i, l)| (i + 1, l)).collect::<Vec<_>>(),
        "triple": TripleDoc::from_triple(&pt.triple),
    })
}

pub fn prime_triple(pt: &PrimeTriple) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p = {}", pt.p);
    let _ = writeln!(s, "r = {:?}", pt.factored.r);
    let _ = writeln!(s, "d = {:?}", pt.factored.d);
    let labels: Vec<String> = (0..pt.index.len()).map(|k| pt.label(k)).collect();
    let _ = writeln!(s, "M = {}", labels.join(" "));
    let _ = writeln!(s, "C' = {}", pt.triple.c);
    let _ = writeln!(s, "D' = {}", pt.triple.d);
    let _ = writeln!(s, "Omega' = {}", pt.triple.omega);
    s
}

pub fn verification(m: &MainIsomorphism) -> String {
    let r = &m.report;
    let mut s = String::new();
    if r.requested_prime == 0 {
        let _ = writeln!(
            s,
            "p = 0 (field arithmetic at auxiliary prime {})",
            r.field_prime
        );
    } else {
        let _ = writeln!(s, "p = {}", r.requested_prime);
    }
    let _ = writeln!(s, "field: {}", field(&r.field));
    let _ = writeln!(
        s,
        "C' = {}  D' = {}",
        m.prime_triple.triple.c, m.prime_triple.triple.d
    );
    let _ = writeln!(s, "dim kC = {}, dim H' = {}", r.source_dim, r.target_dim);
    let _ = writeln!(s, "bimodule maps   {}", mark(r.decompositions_verified));
    let _ = writeln!(s, "unit preserved  {}", mark(r.homomorphism.unit_preserved));
    match r.homomorphism.failure {
        None => {
            let _ = writeln!(s, "multiplicative  pass");
        }
        Some((u, v)) => {
            let _ = writeln!(s, "multiplicative  FAIL at basis pair ({u}, {v})");
        }
    }
    let _ = writeln!(s, "bijective       {}", mark(r.bijective));
    let _ = writeln!(s, "result: {}", mark(r.passed));
    s
}

pub fn classification(parts: &[ComponentClass]) -> String {
    let mut s = String::new();
    for p in parts {
        let vs: Vec<String> = p.vertices.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(s, "{{{}}}: {}", vs.join(","), p.class);
    }
    s
}

pub fn graph(doc: &GraphDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", doc.n);
    if let Some(labels) = &doc.labels {
        for (k, (i, l)) in labels.iter().enumerate() {
            let _ = writeln!(s, "  {} = ({i},{l})", k + 1);
        }
    }
    let edges: Vec<String> = doc
        .edges
        .iter()
        .map(|[u, v, m]| {
            if *m == 1 {
                format!("{u}-{v}")
            } else {
                format!("{u}-{v}x{m}")
            }
        })
        .collect();
    let _ = writeln!(s, "edges: {}", edges.join(" "));
    let sigma: Vec<String> = doc.sigma.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(s, "sigma: {}", sigma.join(" "));
    s
}

pub fn category(d: &CategoryDump) -> String {
    let mut s = String::from("morphisms:\n");
    for m in &d.morphisms {
        let _ = writeln!(
            s,
            "  [{}] {} -> {}  {}",
            m.index, m.source, m.target, m.normal_form
        );
    }
    let _ = writeln!(s, "composition entries: {}", d.composition.len());
    s
}

pub fn algebra(d: &AlgebraDump) -> String {
    let mut s = format!("basis ({}):\n", d.dim);
    for (k, b) in d.basis.iter().enumerate() {
        let _ = writeln!(s, "  [{k}] {b}");
    }
    let _ = writeln!(s, "products:");
    for p in &d.products {
        let _ = writeln!(
            s,
            "  [{}]*[{}] = {}*[{}]",
            p.left, p.right, p.coefficient, p.result
        );
    }
    s
}

pub fn tables(report: &TableReport) -> String {
    let mut s = String::new();
    for table in [1u8, 2] {
        let _ = writeln!(
            s,
            "{}",
            if table == 1 {
                "finite type"
            } else {
                "affine type"
            }
        );
        let _ = writeln!(
            s,
            "  {:<7} {:<3} {:<16} {:<4} {:<7} {:<4} {:<10} {:<10} status",
            "row", "n", "D", "p", "fixed", "p'", "expected", "found"
        );
        for row in report.rows.iter().filter(|r| r.table == table) {
            for inst in &row.instances {
                let n = inst.n.map_or("-".to_string(), |n| n.to_string());
                let d = format!("{:?}", inst.symmetrizer);
                let _ = writeln!(
                    s,
                    "  {:<7} {:<3} {:<16} {:<4} {:<7} {:<4} {:<10} {:<10} {}",
                    row.name,
                    n,
                    d,
                    row.torsion_prime,
                    if inst.torsion_fixed { "yes" } else { "no" },
                    row.coprime_prime,
                    inst.expected,
                    inst.recognized.as_deref().unwrap_or("?"),
                    if inst.torsion_fixed && inst.matched {
                        "ok"
                    } else {
                        "MISMATCH"
                    },
                );
            }
        }
    }
    let rows = report.rows.len();
    let ok = report.rows.iter().filter(|r| r.matched()).count();
    let _ = writeln!(s, "{ok}/{rows} rows match");
    s
}
