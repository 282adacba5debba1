//! On-disk documents. Vertex indices are 1-based throughout.

use std::path::Path;

use anyhow::{bail, Context};
use eicat_core::cartan::{
    find_minimal_symmetrizer, validate_cartan, validate_orientation, CartanMatrix, CartanTriple,
    Check, Orientation, Symmetrizer, ValidationReport, ValuedGraph,
};
use eicat_core::transform::GraphWithAutomorphism;
use eicat_core::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TripleDoc {
    pub n: usize,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
    #[serde(rename = "Omega", default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<[usize; 2]>>,
}

impl TripleDoc {
    pub fn from_triple(t: &CartanTriple) -> Self {
        TripleDoc {
            n: t.rank(),
            c: t.c.entries().to_vec(),
            d: Some(t.d.diag().to_vec()),
            omega: Some(t.omega.pairs().map(|(i, j)| [i + 1, j + 1]).collect()),
        }
    }

    /// Every check on the raw document, failing ones included.
    pub fn validate(&self) -> anyhow::Result<ValidationReport> {
        if self.c.len() != self.n {
            bail!(Error::Input(format!(
                "n = {} but C has {} rows",
                self.n,
                self.c.len()
            )));
        }
        let mut report = validate_cartan(&self.c)?;
        if !report.valid() {
            return Ok(report);
        }
        let c = CartanMatrix::new(self.c.clone())?;
        if let Some(d) = &self.d {
            let ok =
                d.len() == self.n && Symmetrizer::new(d.clone()).is_ok_and(|s| s.symmetrizes(&c));
            report.checks.push(Check {
                name: "D".into(),
                passed: ok,
                detail: if ok {
                    String::new()
                } else {
                    format!("{d:?} does not symmetrize C")
                },
            });
        }
        if let Some(pairs) = &self.omega {
            match self.orientation(pairs) {
                Ok(o) => report.checks.extend(validate_orientation(&c, &o).checks),
                Err(e) => report.checks.push(Check {
                    name: "Omega".into(),
                    passed: false,
                    detail: e.to_string(),
                }),
            }
        }
        Ok(report)
    }

    fn orientation(&self, pairs: &[[usize; 2]]) -> anyhow::Result<Orientation> {
        if pairs.iter().flatten().any(|&v| v == 0 || v > self.n) {
            bail!(Error::Input(format!(
                "Omega indices must lie in 1..={}",
                self.n
            )));
        }
        Ok(Orientation::new(pairs.iter().map(|&[i, j]| (i - 1, j - 1))))
    }

    pub fn to_triple(&self) -> anyhow::Result<CartanTriple> {
        let report = self.validate()?;
        if !report.valid() {
            bail!(Error::Input(format!("invalid triple: {report}")));
        }
        let c = CartanMatrix::new(self.c.clone())?;
        let d = match &self.d {
            Some(d) => Symmetrizer::new(d.clone())?,
            None => find_minimal_symmetrizer(&c)?,
        };
        let omega = match &self.omega {
            Some(pairs) => self.orientation(pairs)?,
            None => Orientation::default_for(&c),
        };
        Ok(CartanTriple::new(c, d, omega)?)
    }
}

/// A graph with an automorphism: edges `[u, v, multiplicity]`.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[u64; 3]>,
    pub sigma: Vec<usize>,
    /// `(i, l)` for each vertex, present on graphs built from a Cartan matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<(usize, u64)>>,
}

impl GraphDoc {
    pub fn from_graph(g: &GraphWithAutomorphism, labels: Option<Vec<(usize, u64)>>) -> Self {
        GraphDoc {
            n: g.graph.vertex_count(),
            edges: g
                .graph
                .edges()
                .map(|((u, v), (m, _))| [u as u64 + 1, v as u64 + 1, m])
                .collect(),
            sigma: g.sigma.iter().map(|&v| v + 1).collect(),
            labels: labels.map(|ls| ls.into_iter().map(|(i, l)| (i + 1, l)).collect()),
        }
    }

    pub fn to_graph(&self) -> anyhow::Result<GraphWithAutomorphism> {
        let n = self.n;
        let in_range = |v: u64| v >= 1 && v as usize <= n;
        let mut graph = ValuedGraph::new(n);
        for &[u, v, m] in &self.edges {
            if !in_range(u) || !in_range(v) || u == v || m == 0 {
                bail!(Error::Input(format!("bad edge [{u}, {v}, {m}]")));
            }
            graph.set_edge(u as usize - 1, v as usize - 1, m, m);
        }
        if self.sigma.len() != n || self.sigma.iter().any(|&v| !in_range(v as u64)) {
            bail!(Error::Input(format!(
                "sigma must list {n} vertices in 1..={n}"
            )));
        }
        let g = GraphWithAutomorphism::new(graph, self.sigma.iter().map(|&v| v - 1).collect());
        if !g.is_permutation() {
            bail!(Error::Input("sigma is not a permutation".into()));
        }
        Ok(g)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
