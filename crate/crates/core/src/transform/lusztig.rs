//! Graphs with admissible automorphisms and their relation to `(C, D)`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::main_iso::build_main_isomorphism;
use super::prime_triple::construct_prime_triple;
use crate::arith::gcd;
use crate::cartan::{
    build_quiver, Arrow, ArrowKind, CartanMatrix, CartanTriple, Quiver, Symmetrizer, ValuedGraph,
};
use crate::error::{Error, Result};

/// A simply-laced graph (valuation `(m, m)` for `m` parallel edges) with a
/// vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphWithAutomorphism {
    pub graph: ValuedGraph,
    pub sigma: Vec<usize>,
}

impl GraphWithAutomorphism {
    pub fn new(graph: ValuedGraph, sigma: Vec<usize>) -> Self {
        GraphWithAutomorphism { graph, sigma }
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        self.sigma.len() == n
            && self
                .sigma
                .iter()
                .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_automorphism(&self) -> bool {
        let g = &self.graph;
        let n = g.vertex_count();
        self.is_permutation()
            && (0..n).all(|u| {
                (0..n).all(|v| {
                    u == v || g.valuation(u, v) == g.valuation(self.sigma[u], self.sigma[v])
                })
            })
    }

    /// Orbits ordered by their smallest vertex, each listed in increasing order.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut w = v;
            while !seen[w] {
                seen[w] = true;
                orbit.push(w);
                w = self.sigma[w];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Automorphism with no edge inside an orbit.
    pub fn is_admissible(&self) -> bool {
        self.is_automorphism()
            && self.orbits().iter().all(|o| {
                o.iter()
                    .all(|&u| o.iter().all(|&v| self.graph.valuation(u, v).is_none()))
            })
    }
}

/// Vertex `(i, l)` with `0 <= l < c_i`, in lexicographic order.
pub fn lusztig_labels(d: &Symmetrizer) -> Vec<(usize, u64)> {
    d.diag()
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| (0..c).map(move |l| (i, l)))
        .collect()
}

pub fn lusztig_forward(c: &CartanMatrix, d: &Symmetrizer) -> Result<GraphWithAutomorphism> {
    if !d.symmetrizes(c) {
        return Err(Error::input(format!("{d} does not symmetrize {c}")));
    }
    let labels = lusztig_labels(d);
    let pos: BTreeMap<(usize, u64), usize> =
        labels.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut graph = ValuedGraph::new(labels.len());
    for (u, &(i, li)) in labels.iter().enumerate() {
        for (v, &(j, lj)) in labels.iter().enumerate().skip(u + 1) {
            if i == j || c.get(i, j) == 0 {
                continue;
            }
            let g = gcd(d.get(i), d.get(j));
            if li % g == lj % g {
                let m = c.edge_multiplicity(i, j);
                graph.set_edge(u, v, m, m);
            }
        }
    }
    let sigma = labels
        .iter()
        .map(|&(i, l)| pos[&(i, (l + 1) % d.get(i))])
        .collect();
    Ok(GraphWithAutomorphism { graph, sigma })
}

pub fn lusztig_inverse(g: &GraphWithAutomorphism) -> Result<(CartanMatrix, Symmetrizer)> {
    if !g.is_automorphism() {
        return Err(Error::input("sigma is not a graph automorphism"));
    }
    if !g.is_admissible() {
        return Err(Error::input(
            "sigma is not admissible: an edge joins two vertices of one orbit",
        ));
    }
    let orbits = g.orbits();
    let k = orbits.len();
    let mut e = vec![vec![0i64; k]; k];
    for a in 0..k {
        e[a][a] = 2;
        for b in 0..k {
            if a == b {
                continue;
            }
            let total: u64 = orbits[a]
                .iter()
                .flat_map(|&u| orbits[b].iter().map(move |&v| (u, v)))
                .map(|(u, v)| g.graph.multiplicity(u, v))
                .sum();
            e[a][b] = -((total / orbits[a].len() as u64) as i64);
        }
    }
    let c = CartanMatrix::new(e)?;
    let d = Symmetrizer::new(orbits.iter().map(|o| o.len() as u64).collect())?;
    Ok((c, d))
}

/// `Delta`: the graph of [`lusztig_forward`] oriented by `Omega`, as a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverWithAutomorphism {
    pub quiver: Quiver,
    pub sigma: Vec<usize>,
    pub labels: Vec<(usize, u64)>,
}

pub fn orientation_correspondence(t: &CartanTriple) -> Result<QuiverWithAutomorphism> {
    let forward = lusztig_forward(&t.c, &t.d)?;
    let labels = lusztig_labels(&t.d);
    let mut arrows = Vec::new();
    for (u, &(i, _)) in labels.iter().enumerate() {
        for (v, &(j, _)) in labels.iter().enumerate() {
            // Arrow v -> u whenever (i, j) is in Omega.
            if t.omega.contains(i, j) {
                for g in 1..=forward.graph.multiplicity(u, v) as usize {
                    arrows.push(Arrow {
                        source: v,
                        target: u,
                        kind: ArrowKind::Alpha { g },
                    });
                }
            }
        }
    }
    let quiver = Quiver {
        vertex_count: labels.len(),
        arrows,
    };
    let sigma = forward.sigma;
    let mut moved: Vec<Arrow> = quiver
        .arrows
        .iter()
        .map(|a| Arrow {
            source: sigma[a.source],
            target: sigma[a.target],
            kind: a.kind,
        })
        .collect();
    let mut original = quiver.arrows.clone();
    let key = |a: &Arrow| (a.target, a.source, format!("{:?}", a.kind));
    moved.sort_by_key(key);
    original.sort_by_key(key);
    if moved != original {
        return Err(Error::TheoremViolation(
            "sigma does not preserve the arrows of Delta".into(),
        ));
    }
    if !quiver.is_acyclic() {
        return Err(Error::TheoremViolation(
            "Delta has an oriented cycle".into(),
        ));
    }
    Ok(QuiverWithAutomorphism {
        quiver,
        sigma,
        labels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub identity_symmetrizer: bool,
    pub symmetric: bool,
    pub quivers_equal: bool,
    pub isomorphism_verified: bool,
    pub passed: bool,
}

/// For `p = 0` or `p` prime to every `c_i`: `Q°(C', Omega')` is literally
/// `Delta`, and `kC` is isomorphic to its path algebra.
pub fn compatibility_check(t: &CartanTriple, p: u64, seed: u64) -> Result<CompatibilityReport> {
    if p != 0 && t.d.diag().iter().any(|&c| c % p == 0) {
        return Err(Error::input(format!("p = {p} divides an entry of {}", t.d)));
    }
    let pt = construct_prime_triple(t, p)?;
    let delta = orientation_correspondence(t)?;
    let identity_symmetrizer = pt.triple.d == Symmetrizer::identity(pt.triple.rank());
    let symmetric = pt.triple.c.is_symmetric();
    let sorted = |q: &Quiver| {
        let mut a: Vec<(usize, usize, String)> = q
            .arrows
            .iter()
            .map(|a| (a.target, a.source, format!("{:?}", a.kind)))
            .collect();
        a.sort_unstable();
        (q.vertex_count, a)
    };
    let reduced = build_quiver(&pt.triple).without_loops();
    let quivers_equal = pt.index == delta.labels && sorted(&reduced) == sorted(&delta.quiver);
    let isomorphism_verified = build_main_isomorphism(t, p, seed)?.report.passed;
    Ok(CompatibilityReport {
        identity_symmetrizer,
        symmetric,
        quivers_equal,
        isomorphism_verified,
        passed: identity_symmetrizer && symmetric && quivers_equal && isomorphism_verified,
    })
}
