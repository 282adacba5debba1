use serde::Serialize;

use super::CartanTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArrowKind {
    /// `alpha_ij^(g)`, with `g` counted from 1.
    Alpha { g: usize },
    /// The loop `epsilon_i`.
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub kind: ArrowKind,
}

impl Arrow {
    pub fn label(&self) -> String {
        match self.kind {
            ArrowKind::Alpha { g } => format!("a{}{}^{}", self.target + 1, self.source + 1, g),
            ArrowKind::Loop => format!("e{}", self.source + 1),
        }
    }
}

/// A finite quiver on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// `Q°`: the same quiver with all loops deleted.
    pub fn without_loops(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .copied()
                .filter(|a| a.kind != ArrowKind::Loop)
                .collect(),
        }
    }

    pub fn arrows_between(&self, source: usize, target: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == source && a.target == target && a.kind != ArrowKind::Loop)
            .count()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` if there is an oriented cycle (loops count).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// All paths of length >= 1 as arrow-index sequences in written order
    /// (`[alpha_n, ..., alpha_1]`, composing right to left). Requires acyclicity.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        // Extend paths on the left: a path ending at t can be followed by arrows out of t.
        let mut frontier: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let t = self.arrows[p[0]].target;
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut q = Vec::with_capacity(p.len() + 1);
                        q.push(ai);
                        q.extend_from_slice(p);
                        next.push(q);
                    }
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// `Q(C, Omega)`: arrows `alpha_ij^(g): j -> i` for `(i, j)` in `Omega` and
/// `1 <= g <= gcd(c_ij, c_ji)`, then one loop per vertex.
pub fn build_quiver(t: &CartanTriple) -> Quiver {
    let n = t.rank();
    let mut arrows = Vec::new();
    for (i, j) in t.omega.pairs() {
        for g in 1..=t.c.edge_multiplicity(i, j) as usize {
            arrows.push(Arrow {
                source: j,
                target: i,
                kind: ArrowKind::Alpha { g },
            });
        }
    }
    for i in 0..n {
        arrows.push(Arrow {
            source: i,
            target: i,
            kind: ArrowKind::Loop,
        });
    }
    Quiver {
        vertex_count: n,
        arrows,
    }
}
