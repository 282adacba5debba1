//! Named Cartan triples used throughout tests, benches, and the table
//! regeneration, plus a seeded generator of random valid triples.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{CartanMatrix, CartanTriple, Orientation, Symmetrizer};

/// Builds a Cartan matrix from 0-based valued edges `(i, j, |c_ij|, |c_ji|)`.
pub fn from_valued_edges(n: usize, edges: &[(usize, usize, i64, i64)]) -> CartanMatrix {
    let mut e = vec![vec![0i64; n]; n];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j, a, b) in edges {
        e[i][j] = -a;
        e[j][i] = -b;
    }
    CartanMatrix::new(e).expect("sample matrices are valid")
}

fn triple(c: CartanMatrix) -> CartanTriple {
    let d = super::find_minimal_symmetrizer(&c).expect("sample matrices are symmetrizable");
    let omega = Orientation::default_for(&c);
    CartanTriple::new(c, d, omega).expect("default orientation is valid")
}

fn chain(n: usize) -> Vec<(usize, usize, i64, i64)> {
    (1..n).map(|i| (i - 1, i, 1, 1)).collect()
}

/// Chain of `n` vertices whose edge `(k, k+1)` carries `value` instead of `(1,1)`.
fn valued_chain(n: usize, special: &[(usize, i64, i64)]) -> CartanMatrix {
    let mut edges = chain(n);
    for &(k, a, b) in special {
        edges[k] = (k, k + 1, a, b);
    }
    from_valued_edges(n, &edges)
}

pub fn a1() -> CartanTriple {
    triple(from_valued_edges(1, &[]))
}

pub fn a1_a1() -> CartanTriple {
    triple(from_valued_edges(2, &[]))
}

pub fn a2() -> CartanTriple {
    triple(from_valued_edges(2, &[(0, 1, 1, 1)]))
}

/// `c_12 = -1`, `c_21 = -2`, `D = diag(2, 1)`.
pub fn b2() -> CartanTriple {
    triple(from_valued_edges(2, &[(0, 1, 1, 2)]))
}

/// `c_12 = -2`, `c_21 = -1`, `D = diag(1, 2)`.
pub fn c2() -> CartanTriple {
    triple(from_valued_edges(2, &[(0, 1, 2, 1)]))
}

/// `c_12 = -1`, `c_21 = -3`, `D = diag(3, 1)`, `Omega = {(1,2)}`.
pub fn g2() -> CartanTriple {
    triple(from_valued_edges(2, &[(0, 1, 1, 3)]))
}

pub fn b3() -> CartanTriple {
    triple(b_n(3))
}

/// Euclidean rank-2 graph with valuation `(1, 4)`, `D = diag(4, 1)`.
pub fn a11_tilde() -> CartanTriple {
    triple(from_valued_edges(2, &[(0, 1, 1, 4)]))
}

pub fn b_n(n: usize) -> CartanMatrix {
    valued_chain(n, &[(0, 1, 2)])
}

pub fn c_n(n: usize) -> CartanMatrix {
    valued_chain(n, &[(0, 2, 1)])
}

pub fn f4() -> CartanMatrix {
    valued_chain(4, &[(1, 1, 2)])
}

pub fn g2_matrix() -> CartanMatrix {
    from_valued_edges(2, &[(0, 1, 1, 3)])
}

/// `~B_n` on `n + 1` vertices.
pub fn b_tilde(n: usize) -> CartanMatrix {
    valued_chain(n + 1, &[(0, 1, 2), (n - 1, 2, 1)])
}

/// `~C_n` on `n + 1` vertices.
pub fn c_tilde(n: usize) -> CartanMatrix {
    valued_chain(n + 1, &[(0, 2, 1), (n - 1, 1, 2)])
}

pub fn a11_tilde_matrix() -> CartanMatrix {
    from_valued_edges(2, &[(0, 1, 1, 4)])
}

/// `~BC_n` on `n + 1` vertices.
pub fn bc_tilde(n: usize) -> CartanMatrix {
    valued_chain(n + 1, &[(0, 1, 2), (n - 1, 1, 2)])
}

fn forked(n: usize, first: (i64, i64)) -> CartanMatrix {
    // Chain 1 - 2 - ... - (n-1), with n and n+1 both attached to n-1.
    let mut edges = chain(n - 1);
    edges[0] = (0, 1, first.0, first.1);
    edges.push((n - 2, n - 1, 1, 1));
    edges.push((n - 2, n, 1, 1));
    from_valued_edges(n + 1, &edges)
}

/// `~BD_n` on `n + 1` vertices (`n >= 3`).
pub fn bd_tilde(n: usize) -> CartanMatrix {
    forked(n, (1, 2))
}

/// `~CD_n` on `n + 1` vertices (`n >= 3`).
pub fn cd_tilde(n: usize) -> CartanMatrix {
    forked(n, (2, 1))
}

pub fn f41_tilde() -> CartanMatrix {
    valued_chain(5, &[(2, 1, 2)])
}

pub fn f42_tilde() -> CartanMatrix {
    valued_chain(5, &[(2, 2, 1)])
}

pub fn g21_tilde() -> CartanMatrix {
    valued_chain(3, &[(1, 1, 3)])
}

pub fn g22_tilde() -> CartanMatrix {
    valued_chain(3, &[(1, 3, 1)])
}

/// The named fixtures: every rank-2 Dynkin type, `B3`, `G2`, `C2`, `~A11`.
pub fn named_fixtures() -> Vec<(&'static str, CartanTriple)> {
    vec![
        ("A1xA1", a1_a1()),
        ("A2", a2()),
        ("B2", b2()),
        ("C2", c2()),
        ("G2", g2()),
        ("B3", b3()),
        ("~A11", a11_tilde()),
    ]
}

/// A random valid triple of rank `1..=max_rank` with symmetrizer entries in
/// `1..=max_c`. Edge multiplicities are 1 or 2; the orientation follows a
/// random total order, so it is acyclic.
pub fn random_triple<R: Rng>(rng: &mut R, max_rank: usize, max_c: u64) -> CartanTriple {
    let n = rng.gen_range(1..=max_rank);
    let d: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_c)).collect();
    let mut e = vec![vec![0i64; n]; n];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = 2;
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.7) {
                let k: i64 = if rng.gen_bool(0.25) { 2 } else { 1 };
                let g = crate::arith::gcd(d[i], d[j]) as i64;
                e[i][j] = -k * d[j] as i64 / g;
                e[j][i] = -k * d[i] as i64 / g;
            }
        }
    }
    let c = CartanMatrix::new(e).expect("constructed to be symmetrizable");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let omega = Orientation::new(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && c.get(i, j) < 0 && pos[i] < pos[j]),
    );
    let d = Symmetrizer::new(d).expect("positive");
    CartanTriple::new(c, d, omega).expect("random triple is valid")
}
