use std::collections::BTreeMap;

use serde::Serialize;

use super::CartanMatrix;

/// The valued graph of a Cartan matrix. The valuation is attached to ordered
/// pairs: `weight(i, j) = |c_ij|`, so the edge `{i, j}` carries
/// `(weight(i, j), weight(j, i))` read from `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuedGraph {
    vertex_count: usize,
    /// Keyed by `(i, j)` with `i < j`; value is `(|c_ij|, |c_ji|)`.
    edges: BTreeMap<(usize, usize), (u64, u64)>,
}

impl ValuedGraph {
    pub fn new(vertex_count: usize) -> Self {
        ValuedGraph {
            vertex_count,
            edges: BTreeMap::new(),
        }
    }

    /// Adds (or overwrites) the edge with valuation `(v_ij, v_ji)` on `(i, j)`.
    pub fn set_edge(&mut self, i: usize, j: usize, v_ij: u64, v_ji: u64) {
        assert!(i != j, "valued graphs have no loops");
        if v_ij == 0 && v_ji == 0 {
            self.edges.remove(&(i.min(j), i.max(j)));
        } else if i < j {
            self.edges.insert((i, j), (v_ij, v_ji));
        } else {
            self.edges.insert((j, i), (v_ji, v_ij));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Valuation on the ordered pair `(i, j)`, or `None` when not adjacent.
    pub fn valuation(&self, i: usize, j: usize) -> Option<(u64, u64)> {
        if i < j {
            self.edges.get(&(i, j)).copied()
        } else {
            self.edges.get(&(j, i)).map(|&(a, b)| (b, a))
        }
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.valuation(i, j).map_or(0, |v| v.0)
    }

    /// Parallel-edge count: `gcd` of the two valuation entries. For symmetric
    /// graphs this is the number of edges between the two vertices.
    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.valuation(i, j)
            .map_or(0, |(a, b)| crate::arith::gcd(a, b))
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), (u64, u64))> + '_ {
        self.edges.iter().map(|(&k, &v)| (k, v))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&w| w != v && self.valuation(v, w).is_some())
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges.values().all(|(a, b)| a == b)
    }

    /// Connected components via union-find, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in self.edges.keys() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Induced subgraph on `vertices` (relabelled `0..len` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> ValuedGraph {
        let mut g = ValuedGraph::new(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                if let Some((x, y)) = self.valuation(i, j) {
                    g.set_edge(a, b, x, y);
                }
            }
        }
        g
    }

    /// Back to a Cartan matrix: `c_ii = 2`, `c_ij = -weight(i, j)`.
    pub fn to_cartan(&self) -> CartanMatrix {
        let n = self.vertex_count;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else {
                            -(self.weight(i, j) as i64)
                        }
                    })
                    .collect()
            })
            .collect();
        CartanMatrix::from_entries_unchecked(entries)
    }
}

/// `Gamma` of a Cartan matrix: an edge `{i, j}` exactly when `c_ij < 0`.
pub fn valued_graph(c: &CartanMatrix) -> ValuedGraph {
    let n = c.rank();
    let mut g = ValuedGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if c.get(i, j) < 0 {
                g.set_edge(i, j, c.get(i, j).unsigned_abs(), c.get(j, i).unsigned_abs());
            }
        }
    }
    g
}

/// Extra structure an isomorphism must respect: `pi(sigma_a(v)) = sigma_b(pi(v))`.
#[derive(Clone, Copy, Debug)]
pub struct IsoConstraint<'a> {
    pub sigma_a: &'a [usize],
    pub sigma_b: &'a [usize],
}

/// Valuation-preserving isomorphism `a -> b` (as a vertex map), found by colour
/// refinement followed by backtracking.
pub fn find_isomorphism(
    a: &ValuedGraph,
    b: &ValuedGraph,
    constraint: Option<IsoConstraint<'_>>,
) -> Option<Vec<usize>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ca, cb) = refine_colors(a, b, constraint);
    let mut sorted_a = ca.clone();
    let mut sorted_b = cb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    // Visit vertices with the rarest colour first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (ca.iter().filter(|&&c| c == ca[v]).count(), v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(a, b, &ca, &cb, constraint, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn refine_colors(
    a: &ValuedGraph,
    b: &ValuedGraph,
    constraint: Option<IsoConstraint<'_>>,
) -> (Vec<usize>, Vec<usize>) {
    let n = a.vertex_count();
    let orbit_len = |sigma: &[usize], v: usize| {
        let mut k = 1;
        let mut w = sigma[v];
        while w != v {
            w = sigma[w];
            k += 1;
        }
        k
    };
    let init = |g: &ValuedGraph, sigma: Option<&[usize]>| -> Vec<Vec<u64>> {
        (0..n)
            .map(|v| {
                let mut sig: Vec<u64> = g
                    .neighbors(v)
                    .iter()
                    .flat_map(|&w| {
                        let (x, y) = g.valuation(v, w).unwrap_or((0, 0));
                        [x * 1000 + y]
                    })
                    .collect();
                sig.sort_unstable();
                if let Some(s) = sigma {
                    sig.insert(0, orbit_len(s, v) as u64);
                }
                sig
            })
            .collect()
    };
    let mut sa = init(a, constraint.map(|c| c.sigma_a));
    let mut sb = init(b, constraint.map(|c| c.sigma_b));
    let mut prev_classes = 0;
    loop {
        // Shared palette so colours are comparable across the two graphs.
        let mut palette: Vec<Vec<u64>> = sa.iter().chain(sb.iter()).cloned().collect();
        palette.sort();
        palette.dedup();
        let index = |s: &Vec<u64>| palette.binary_search(s).expect("in palette");
        let ca: Vec<usize> = sa.iter().map(index).collect();
        let cb: Vec<usize> = sb.iter().map(index).collect();
        if palette.len() == prev_classes {
            return (ca, cb);
        }
        prev_classes = palette.len();
        let step = |g: &ValuedGraph, col: &[usize]| -> Vec<Vec<u64>> {
            (0..n)
                .map(|v| {
                    let mut nb: Vec<u64> = g
                        .neighbors(v)
                        .iter()
                        .map(|&w| {
                            let (x, y) = g.valuation(v, w).unwrap_or((0, 0));
                            ((col[w] as u64) << 32) | (x * 1000 + y)
                        })
                        .collect();
                    nb.sort_unstable();
                    let mut s = vec![col[v] as u64];
                    s.extend(nb);
                    s
                })
                .collect()
        };
        sa = step(a, &ca);
        sb = step(b, &cb);
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &ValuedGraph,
    b: &ValuedGraph,
    ca: &[usize],
    cb: &[usize],
    constraint: Option<IsoConstraint<'_>>,
    order: &[usize],
    pos: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = order.len();
    let mut pos = pos;
    while pos < n && map[order[pos]] != usize::MAX {
        pos += 1;
    }
    if pos == n {
        return true;
    }
    let v = order[pos];
    for w in 0..n {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let mut assigned = Vec::new();
        if try_assign(a, b, ca, cb, constraint, v, w, map, used, &mut assigned)
            && backtrack(a, b, ca, cb, constraint, order, pos + 1, map, used)
        {
            return true;
        }
        for x in assigned {
            used[map[x]] = false;
            map[x] = usize::MAX;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn try_assign(
    a: &ValuedGraph,
    b: &ValuedGraph,
    ca: &[usize],
    cb: &[usize],
    constraint: Option<IsoConstraint<'_>>,
    v: usize,
    w: usize,
    map: &mut [usize],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    let mut queue = vec![(v, w)];
    while let Some((x, y)) = queue.pop() {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if used[y] || ca[x] != cb[y] {
            return false;
        }
        for z in 0..map.len() {
            if map[z] != usize::MAX && a.valuation(x, z) != b.valuation(y, map[z]) {
                return false;
            }
        }
        map[x] = y;
        used[y] = true;
        assigned.push(x);
        if let Some(c) = constraint {
            queue.push((c.sigma_a[x], c.sigma_b[y]));
        }
    }
    true
}
