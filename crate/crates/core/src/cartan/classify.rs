use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{CartanMatrix, Symmetrizer, ValuedGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeTag {
    Dynkin,
    Euclidean,
    Indefinite,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::Dynkin => "Dynkin",
            TypeTag::Euclidean => "Euclidean",
            TypeTag::Indefinite => "indefinite",
        })
    }
}

/// Type of a connected valued graph. `name` is filled in for recognized
/// simply-laced graphs, e.g. `D4` or `~E6` (tilde for the extended diagrams).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TypeClass {
    pub tag: TypeTag,
    pub name: Option<String>,
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{} ({n})", self.tag),
            None => write!(f, "{}", self.tag),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub vertices: Vec<usize>,
    pub class: TypeClass,
}

/// `q_C(x) = sum_i c_i x_i^2 + sum_{i<j} c_i c_ij x_i x_j`.
pub fn quadratic_form(c: &CartanMatrix, d: &Symmetrizer, x: &[i64]) -> Result<i128> {
    let n = c.rank();
    if x.len() != n || d.len() != n {
        return Err(Error::input(format!(
            "vector of length {} for rank {n}",
            x.len()
        )));
    }
    let mut q: i128 = 0;
    for i in 0..n {
        q += d.get(i) as i128 * (x[i] as i128) * (x[i] as i128);
        for j in i + 1..n {
            q += d.get(i) as i128 * c.get(i, j) as i128 * x[i] as i128 * x[j] as i128;
        }
    }
    Ok(q)
}

/// The symmetric bilinear form with `(e_i, e_i) = 2 c_i`, `(e_i, e_j) = c_i c_ij`.
pub fn bilinear_form(c: &CartanMatrix, d: &Symmetrizer, x: &[i64], y: &[i64]) -> Result<i128> {
    let n = c.rank();
    if x.len() != n || y.len() != n {
        return Err(Error::input("vector length does not match rank"));
    }
    let mut s: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            s += d.get(i) as i128 * c.get(i, j) as i128 * x[i] as i128 * y[j] as i128;
        }
    }
    Ok(s)
}

/// Definiteness of the symmetric integer matrix by exact `LDL^T`.
///
/// A zero pivot requires the rest of its row to vanish (otherwise the form is
/// indefinite); a negative pivot means indefinite.
fn definiteness(m: Vec<Vec<BigInt>>) -> TypeTag {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut singular = false;
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return TypeTag::Indefinite;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return TypeTag::Indefinite;
            }
            singular = true;
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k + 1..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    if singular {
        TypeTag::Euclidean
    } else {
        TypeTag::Dynkin
    }
}

/// Dynkin / Euclidean / indefinite per connected component of `(C, D)`.
pub fn classify(c: &CartanMatrix, d: &Symmetrizer) -> Vec<ComponentClass> {
    let g = super::valued_graph(c);
    g.connected_components()
        .into_iter()
        .map(|comp| {
            let m = comp
                .iter()
                .map(|&i| {
                    comp.iter()
                        .map(|&j| BigInt::from(d.get(i)) * BigInt::from(c.get(i, j)))
                        .collect()
                })
                .collect();
            let tag = definiteness(m);
            let sub = g.induced(&comp);
            let name = if sub.is_symmetric() {
                recognize_simply_laced(&sub).ok().and_then(|t| t.name)
            } else {
                None
            };
            ComponentClass {
                vertices: comp,
                class: TypeClass { tag, name },
            }
        })
        .collect()
}

/// Names connected simply-laced graphs (`A_n`, `D_n`, `E_6..8` and their
/// extended versions). Anything else is reported as indefinite without a name.
pub fn recognize_simply_laced(g: &ValuedGraph) -> Result<TypeClass> {
    if !g.is_symmetric() {
        return Err(Error::input(
            "graph is not simply laced (asymmetric valuation)",
        ));
    }
    if !g.is_connected() {
        return Err(Error::input("graph is not connected"));
    }
    let n = g.vertex_count();
    let dynkin = |name: String| TypeClass {
        tag: TypeTag::Dynkin,
        name: Some(name),
    };
    let euclid = |name: String| TypeClass {
        tag: TypeTag::Euclidean,
        name: Some(name),
    };
    let other = TypeClass {
        tag: TypeTag::Indefinite,
        name: None,
    };

    if n == 1 {
        return Ok(dynkin("A1".into()));
    }
    let max_mult = g.edges().map(|(_, (a, _))| a).max().unwrap_or(0);
    if max_mult >= 2 {
        return Ok(if n == 2 && max_mult == 2 {
            euclid("~A1".into())
        } else {
            other
        });
    }
    let m = g.edge_count();
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    if m == n {
        return Ok(if deg.iter().all(|&d| d == 2) {
            euclid(format!("~A{}", n - 1))
        } else {
            other
        });
    }
    if m > n {
        return Ok(other);
    }
    // Tree from here on.
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    if branch.is_empty() {
        return Ok(dynkin(format!("A{n}")));
    }
    let arm = |from: usize, first: usize| -> usize {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        loop {
            let next: Vec<usize> = g
                .neighbors(cur)
                .into_iter()
                .filter(|&w| w != prev)
                .collect();
            if next.len() != 1 {
                return if next.is_empty() { len } else { usize::MAX };
            }
            prev = cur;
            cur = next[0];
            len += 1;
        }
    };
    match branch.as_slice() {
        [v] if deg[*v] == 4 => Ok(if n == 5 { euclid("~D4".into()) } else { other }),
        [v] if deg[*v] == 3 => {
            let mut arms: Vec<usize> = g.neighbors(*v).into_iter().map(|w| arm(*v, w)).collect();
            arms.sort_unstable();
            Ok(match arms.as_slice() {
                [1, 1, k] => dynkin(format!("D{}", k + 3)),
                [1, 2, 2] => dynkin("E6".into()),
                [1, 2, 3] => dynkin("E7".into()),
                [1, 2, 4] => dynkin("E8".into()),
                [2, 2, 2] => euclid("~E6".into()),
                [1, 3, 3] => euclid("~E7".into()),
                [1, 2, 5] => euclid("~E8".into()),
                _ => other,
            })
        }
        [u, v] if deg[*u] == 3 && deg[*v] == 3 => {
            let leaves_at = |b: usize| g.neighbors(b).into_iter().filter(|&w| deg[w] == 1).count();
            Ok(if leaves_at(*u) == 2 && leaves_at(*v) == 2 {
                euclid(format!("~D{}", n - 1))
            } else {
                other
            })
        }
        _ => Ok(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::find_minimal_symmetrizer;

    fn cm(e: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::new(e).unwrap()
    }

    #[test]
    fn quadratic_form_examples() {
        let c = cm(vec![vec![2, -1], vec![-3, 2]]);
        let d = Symmetrizer::new(vec![3, 1]).unwrap();
        assert_eq!(quadratic_form(&c, &d, &[1, 0]).unwrap(), 3);
        assert_eq!(quadratic_form(&c, &d, &[1, 1]).unwrap(), 1);
        assert_eq!(quadratic_form(&c, &d, &[0, 0]).unwrap(), 0);
        assert!(quadratic_form(&c, &d, &[1]).is_err());
    }

    #[test]
    fn basis_pairings() {
        let c = cm(vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]]);
        let d = find_minimal_symmetrizer(&c).unwrap();
        for i in 0..3 {
            let mut ei = vec![0; 3];
            ei[i] = 1;
            assert_eq!(quadratic_form(&c, &d, &ei).unwrap(), d.get(i) as i128);
            for j in 0..3 {
                let mut ej = vec![0; 3];
                ej[j] = 1;
                let expected = if i == j {
                    2 * d.get(i) as i128
                } else {
                    d.get(i) as i128 * c.get(i, j) as i128
                };
                assert_eq!(bilinear_form(&c, &d, &ei, &ej).unwrap(), expected);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let tag = |e: Vec<Vec<i64>>, d: Vec<u64>| {
            classify(&cm(e), &Symmetrizer::new(d).unwrap())[0].class.tag
        };
        assert_eq!(
            tag(vec![vec![2, -1], vec![-3, 2]], vec![3, 1]),
            TypeTag::Dynkin
        );
        assert_eq!(
            tag(vec![vec![2, -1], vec![-4, 2]], vec![4, 1]),
            TypeTag::Euclidean
        );
        assert_eq!(
            tag(vec![vec![2, -1], vec![-5, 2]], vec![5, 1]),
            TypeTag::Indefinite
        );
        assert_eq!(
            tag(vec![vec![2, -2], vec![-2, 2]], vec![1, 1]),
            TypeTag::Euclidean
        );
    }

    #[test]
    fn zero_pivot_with_nonzero_row_is_indefinite() {
        // [[0,1],[1,0]] is indefinite although the first pivot is zero.
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(definiteness(m), TypeTag::Indefinite);
    }

    fn sym(n: usize, edges: &[(usize, usize)]) -> ValuedGraph {
        let mut g = ValuedGraph::new(n);
        for &(i, j) in edges {
            g.set_edge(i, j, 1, 1);
        }
        g
    }

    #[test]
    fn names() {
        let name = |g: &ValuedGraph| recognize_simply_laced(g).unwrap().name;
        assert_eq!(
            name(&sym(4, &[(0, 1), (0, 2), (0, 3)])).as_deref(),
            Some("D4")
        );
        assert_eq!(name(&sym(3, &[(0, 1), (1, 2)])).as_deref(), Some("A3"));
        assert_eq!(name(&sym(1, &[])).as_deref(), Some("A1"));
        assert_eq!(
            name(&sym(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])).as_deref(),
            Some("~D4")
        );
        assert_eq!(
            name(&sym(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])).as_deref(),
            Some("~D5")
        );
        assert_eq!(
            name(&sym(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).as_deref(),
            Some("~A3")
        );
        assert_eq!(
            name(&sym(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])).as_deref(),
            Some("E6")
        );
        assert_eq!(
            name(&sym(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)])).as_deref(),
            Some("~E6")
        );
        let mut double = ValuedGraph::new(2);
        double.set_edge(0, 1, 2, 2);
        assert_eq!(name(&double).as_deref(), Some("~A1"));
        let mut valued = ValuedGraph::new(2);
        valued.set_edge(0, 1, 1, 2);
        assert!(recognize_simply_laced(&valued).is_err());
        // Star with five leaves: indefinite, unnamed.
        let big =
            recognize_simply_laced(&sym(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)])).unwrap();
        assert_eq!(big.tag, TypeTag::Indefinite);
        assert_eq!(big.name, None);
    }
}
