use eicat_core::cartan::{
    build_quiver, find_isomorphism, samples, valued_graph, CartanMatrix, CartanTriple,
    IsoConstraint, Orientation, Symmetrizer, ValuedGraph,
};
use eicat_core::ffield::{make_field, DEFAULT_SEED};
use eicat_core::transform::*;
use eicat_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn fixtures() -> Vec<(String, CartanTriple)> {
    samples::named_fixtures()
        .into_iter()
        .map(|(n, t)| (n.to_string(), t))
        .collect()
}

/// Random triples of rank 2 or 3.
fn random_triples(seed: u64, count: usize) -> Vec<CartanTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let t = samples::random_triple(&mut rng, 3, 6);
        if t.rank() >= 2 {
            out.push(t);
        }
    }
    out
}

/// Number of normal forms: per path `i_n <- ... <- i_0`, the head ranges over
/// `c_{i_n}` values and each later slot over `c_s / gcd(c_t, c_s)`.
fn path_dimension(t: &CartanTriple) -> u64 {
    let c = t.d.diag();
    let q = build_quiver(t).without_loops();
    let mut total: u64 = c.iter().sum();
    for path in q.paths() {
        let head = c[q.arrows[path[0]].target];
        let slots: u64 = path
            .iter()
            .map(|&a| {
                let (s, tt) = (q.arrows[a].source, q.arrows[a].target);
                c[s] / gcd(c[s], c[tt])
            })
            .product();
        total += head * slots;
    }
    total
}

/// `dim (A (x) B) / (x^{a/g} (x) 1 - 1 (x) y^{b/g})` over `F_p` by elimination.
fn balanced_tensor_dimension(a: usize, b: usize, p: u64) -> usize {
    let g = gcd(a as u64, b as u64) as usize;
    let idx = |x: usize, y: usize| (x % a) * b + (y % b);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for x in 0..a {
        for y in 0..b {
            let mut r = vec![0u64; a * b];
            r[idx(x + a / g, y)] = 1;
            r[idx(x, y + b / g)] = (r[idx(x, y + b / g)] + p - 1) % p;
            rows.push(r);
        }
    }
    let n = a * b;
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&v| v * rows[rank][col] % p == 1).unwrap();
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for k in 0..n {
                    rows[r][k] = (rows[r][k] + (p - f) * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    n - rank
}

#[test]
fn decomposition_dimensions_against_quotient() {
    for p in [2u64, 3] {
        for a in 1..=8usize {
            for b in 1..=8usize {
                let (_, na) = split(a as u64, p);
                let (_, nb) = split(b as u64, p);
                let f = make_field(p, na * nb / gcd(na, nb), DEFAULT_SEED).unwrap();
                let d = bimodule_decomposition(&f, a, b).unwrap();
                let expected = balanced_tensor_dimension(a, b, p);
                assert_eq!(expected, a * b / gcd(a as u64, b as u64) as usize);
                assert_eq!(d.source_basis.len(), expected, "a={a} b={b} p={p}");
                assert_eq!(d.target_basis.len(), expected, "a={a} b={b} p={p}");
                assert!(d.checks.all(), "a={a} b={b} p={p}: {:?}", d.checks);
            }
        }
    }
}

fn split(mut n: u64, p: u64) -> (u32, u64) {
    let mut r = 0;
    while n.is_multiple_of(p) {
        n /= p;
        r += 1;
    }
    (r, n)
}

#[test]
fn decomposition_named_cases() {
    let f = make_field(2, 3, DEFAULT_SEED).unwrap();
    let d = bimodule_decomposition(&f, 3, 1).unwrap();
    assert_eq!(d.sigma.sigma, vec![(0, 0), (1, 0), (2, 0)]);
    let d = bimodule_decomposition(&f, 4, 2).unwrap();
    assert_eq!(d.sigma.sigma, vec![(0, 0)]);
    assert_eq!(d.target_basis.len(), 4);
    let f = make_field(3, 5, DEFAULT_SEED).unwrap();
    let d = bimodule_decomposition(&f, 5, 5).unwrap();
    assert_eq!(d.sigma.sigma, (0..5).map(|i| (i, i)).collect::<Vec<_>>());
}

#[test]
fn prime_triple_invariants() {
    let mut all = fixtures();
    for (k, t) in random_triples(17, 20).into_iter().enumerate() {
        all.push((format!("random{k}"), t));
    }
    for (name, t) in &all {
        for p in [0u64, 2, 3, 5] {
            let pt = construct_prime_triple(t, p).unwrap();
            let c = &pt.triple.c;
            let dp = pt.triple.d.diag();
            let m = pt.index.len();
            assert_eq!(m as u64, pt.factored.d.iter().sum::<u64>());
            for u in 0..m {
                for v in 0..m {
                    let (i, li) = pt.index[u];
                    let (j, lj) = pt.index[v];
                    if u != v && i == j {
                        assert_eq!(c.get(u, v), 0, "{name}");
                    }
                    assert_eq!(
                        dp[u] as i64 * c.get(u, v),
                        dp[v] as i64 * c.get(v, u),
                        "{name}"
                    );
                    if i != j && t.c.get(i, j) != 0 {
                        let g = gcd(pt.factored.d[i], pt.factored.d[j]);
                        let pi = if p == 0 { 1 } else { p.pow(pt.factored.r[i]) };
                        let pj = if p == 0 { 1 } else { p.pow(pt.factored.r[j]) };
                        let congruent = (li * pi) % g == (lj * pj) % g;
                        assert_eq!(c.get(u, v) != 0, congruent, "{name} p={p}");
                    }
                }
            }
            assert!(gcd_preserved(t, &pt), "{name} p={p}");
            assert!(sigma_cardinalities(t, &pt), "{name} p={p}");
            if p == 0 || t.d.diag().iter().all(|&ci| ci % p != 0) {
                assert_eq!(pt.triple.d, Symmetrizer::identity(m));
                assert!(c.is_symmetric());
            }
        }
    }
}

#[test]
fn named_constructions() {
    let pt = construct_prime_triple(&samples::b2(), 2).unwrap();
    assert_eq!(pt.triple, samples::b2());
    let pt = construct_prime_triple(&samples::g2(), 2).unwrap();
    assert_eq!(pt.triple.rank(), 4);
    let one = CartanTriple::with_defaults(vec![vec![2]]).unwrap();
    for p in [0, 2, 3] {
        assert_eq!(construct_prime_triple(&one, p).unwrap().triple.c, one.c);
    }
    assert!(matches!(
        construct_prime_triple(&one, 6),
        Err(Error::Input(_))
    ));
}

/// `q_C(x) = (1/2) x^T (DC) x`, evaluated from the matrix entries.
fn q_oracle(c: &CartanMatrix, d: &Symmetrizer, x: &[i64]) -> i128 {
    let n = c.rank();
    let mut s: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            s += d.get(i) as i128 * c.get(i, j) as i128 * x[i] as i128 * x[j] as i128;
        }
    }
    assert_eq!(s % 2, 0);
    s / 2
}

#[test]
fn quadratic_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, t) in fixtures() {
        for p in [0u64, 2, 3, 5] {
            let pt = construct_prime_triple(&t, p).unwrap();
            for _ in 0..200 {
                let x: Vec<i64> = (0..t.rank()).map(|_| rng.gen_range(-5..=5)).collect();
                let y = theta_embedding(&pt, &x).unwrap();
                let lhs = q_oracle(&t.c, &t.d, &x);
                assert_eq!(
                    lhs,
                    q_oracle(&pt.triple.c, &pt.triple.d, &y),
                    "{name} p={p}"
                );
                assert!(quadratic_compatible(&t, &pt, &x).unwrap());
            }
        }
    }
}

#[test]
fn main_isomorphism_on_fixtures() {
    for (name, t) in fixtures() {
        for p in [2u64, 3, 5] {
            let expected = path_dimension(&t) as usize;
            let m = build_main_isomorphism(&t, p, DEFAULT_SEED).unwrap();
            assert_eq!(m.report.source_dim, expected, "{name} p={p}");
            assert_eq!(
                m.report.target_dim,
                path_dimension(&m.prime_triple.triple) as usize
            );
            assert!(m.report.passed, "{name} p={p}: {:?}", m.report);
        }
    }
    assert_eq!(path_dimension(&samples::g2()), 7);
    assert_eq!(path_dimension(&samples::c2()), 5);
}

#[test]
fn main_isomorphism_on_random_triples() {
    for (k, t) in random_triples(29, 10).iter().enumerate() {
        for p in [2u64, 3, 5] {
            let m = build_main_isomorphism(t, p, DEFAULT_SEED).unwrap();
            assert_eq!(m.report.source_dim as u64, path_dimension(t));
            assert!(m.report.passed, "random{k} p={p}: {t} {:?}", m.report);
        }
    }
}

#[test]
fn main_isomorphism_other_seed_and_char_zero() {
    let m = build_main_isomorphism(&samples::g2(), 2, 12345).unwrap();
    assert!(m.report.passed);
    let m = build_main_isomorphism(&samples::b3(), 0, DEFAULT_SEED).unwrap();
    assert_eq!(m.report.field_prime, 3);
    assert!(m.report.passed);
}

fn table_triples() -> Vec<CartanTriple> {
    let mats = vec![
        samples::b_n(3),
        samples::b_n(4),
        samples::c_n(2),
        samples::c_n(3),
        samples::f4(),
        samples::g2_matrix(),
        samples::b_tilde(2),
        samples::c_tilde(3),
        samples::a11_tilde_matrix(),
        samples::bc_tilde(2),
        samples::bd_tilde(3),
        samples::cd_tilde(4),
        samples::f41_tilde(),
        samples::f42_tilde(),
        samples::g21_tilde(),
        samples::g22_tilde(),
    ];
    mats.into_iter()
        .map(|c| CartanTriple::with_defaults(c.entries().to_vec()).unwrap())
        .collect()
}

#[test]
fn lusztig_round_trips() {
    let mut all: Vec<CartanTriple> = fixtures().into_iter().map(|(_, t)| t).collect();
    all.extend(table_triples());
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for t in &all {
        let g = lusztig_forward(&t.c, &t.d).unwrap();
        assert!(g.is_admissible());
        assert_eq!(lusztig_inverse(&g).unwrap(), (t.c.clone(), t.d.clone()));

        // Relabel the vertices, go back and forth, and compare with sigma.
        let n = g.graph.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut relabeled = ValuedGraph::new(n);
        for ((u, v), (a, b)) in g.graph.edges() {
            relabeled.set_edge(perm[u], perm[v], a, b);
        }
        let mut sigma = vec![0; n];
        for v in 0..n {
            sigma[perm[v]] = perm[g.sigma[v]];
        }
        let h = GraphWithAutomorphism::new(relabeled, sigma);
        let (c, d) = lusztig_inverse(&h).unwrap();
        let back = lusztig_forward(&c, &d).unwrap();
        let constraint = IsoConstraint {
            sigma_a: &h.sigma,
            sigma_b: &back.sigma,
        };
        assert!(
            find_isomorphism(&h.graph, &back.graph, Some(constraint)).is_some(),
            "{t}"
        );
    }
}

#[test]
fn lusztig_inverse_forgets_the_graph() {
    // K_{3,3} and a tripled perfect matching, each with sigma rotating both
    // sides, have the same orbit data.
    let rotate = vec![1, 2, 0, 4, 5, 3];
    let mut k33 = ValuedGraph::new(6);
    for u in 0..3 {
        for v in 3..6 {
            k33.set_edge(u, v, 1, 1);
        }
    }
    let mut matching = ValuedGraph::new(6);
    for u in 0..3 {
        matching.set_edge(u, u + 3, 3, 3);
    }
    let a = GraphWithAutomorphism::new(k33, rotate.clone());
    let b = GraphWithAutomorphism::new(matching.clone(), rotate);
    let cd = lusztig_inverse(&a).unwrap();
    assert_eq!(cd, lusztig_inverse(&b).unwrap());
    let back = lusztig_forward(&cd.0, &cd.1).unwrap();
    assert!(find_isomorphism(&back.graph, &matching, None).is_some());
    assert!(find_isomorphism(&back.graph, &a.graph, None).is_none());
}

#[test]
fn inadmissible_automorphisms_are_rejected() {
    let mut path = ValuedGraph::new(3);
    path.set_edge(0, 1, 1, 1);
    path.set_edge(1, 2, 1, 1);
    // Swapping the ends is admissible, swapping along an edge is not an automorphism.
    assert!(lusztig_inverse(&GraphWithAutomorphism::new(path.clone(), vec![2, 1, 0])).is_ok());
    let err = lusztig_inverse(&GraphWithAutomorphism::new(path, vec![1, 0, 2]));
    assert!(matches!(err, Err(Error::Input(_))));
    let mut triangle = ValuedGraph::new(3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        triangle.set_edge(u, v, 1, 1);
    }
    let g = GraphWithAutomorphism::new(triangle, vec![1, 2, 0]);
    assert!(g.is_automorphism() && !g.is_admissible());
    assert!(matches!(lusztig_inverse(&g), Err(Error::Input(_))));
}

#[test]
fn orientation_and_compatibility() {
    let g2 = orientation_correspondence(&samples::g2()).unwrap();
    assert_eq!(g2.quiver.arrows.len(), 3);
    assert!(
        g2.quiver.arrows.iter().all(|a| a.source == 3)
            || g2.quiver.arrows.iter().all(|a| a.target == 3)
    );
    let c2 = orientation_correspondence(&samples::c2()).unwrap();
    assert_eq!(c2.quiver.vertex_count, 3);
    assert_eq!(c2.sigma.iter().filter(|&&v| v != c2.sigma[v]).count(), 2);
    let a2 = orientation_correspondence(&samples::a2()).unwrap();
    assert_eq!(a2.sigma, vec![0, 1]);

    for (name, t) in fixtures() {
        for p in [0u64, 2, 3, 5] {
            if p != 0 && t.d.diag().iter().any(|&c| c % p == 0) {
                assert!(compatibility_check(&t, p, DEFAULT_SEED).is_err());
                continue;
            }
            let r = compatibility_check(&t, p, DEFAULT_SEED).unwrap();
            assert!(r.passed, "{name} p={p}: {r:?}");
        }
    }
}

#[test]
fn structural_lemmas() {
    let mut connected: Vec<CartanTriple> = table_triples();
    connected.extend(
        fixtures()
            .into_iter()
            .map(|(_, t)| t)
            .filter(|t| valued_graph(&t.c).is_connected()),
    );
    connected.extend(
        random_triples(37, 40)
            .into_iter()
            .filter(|t| valued_graph(&t.c).is_connected())
            .map(|t| CartanTriple::with_defaults(t.c.entries().to_vec()).unwrap()),
    );
    for t in &connected {
        for p in [0u64, 2, 3, 5] {
            let pt = construct_prime_triple(t, p).unwrap();
            assert!(valued_graph(&pt.triple.c).is_connected(), "{t} p={p}");
            let r = classify_prime_triple_consistency(t, p).unwrap();
            assert!(r.passed, "{t} p={p}: {r:?}");
        }
    }
    for (name, t) in fixtures() {
        for p in [2u64, 3] {
            for factor in [2u64, 3, 4, 6] {
                let r = multiple_symmetrizer_graph(&t, p, factor).unwrap();
                assert!(r.passed, "{name} p={p} c={factor}: {r:?}");
                assert_eq!(r.copies, split(factor, p).1);
            }
        }
    }
    let g2 = multiple_symmetrizer_graph(&samples::g2(), 2, 3).unwrap();
    assert_eq!(g2.component_count, 3);
}

#[test]
fn tables() {
    let report = regenerate_tables().unwrap();
    assert_eq!(report.rows.len(), 14);
    let find = |name: &str| report.rows.iter().find(|r| r.name == name).unwrap().clone();
    let c = find("C_n");
    assert_eq!(c.instances[0].recognized.as_deref(), Some("A3"));
    assert_eq!(c.coprime_prime, 3);
    let g = find("G2");
    assert_eq!((g.torsion_prime, g.instances[0].torsion_fixed), (3, true));
    let g22 = find("~G22");
    assert_eq!(g22.instances[0].symmetrizer, vec![1, 1, 3]);
    assert_eq!(g22.instances[0].recognized.as_deref(), Some("~D4"));
}

#[test]
fn orientation_independent_of_omega_choice() {
    // Reversing every arrow of G2 still gives a verified isomorphism.
    let t = samples::g2();
    let reversed = Orientation::new(t.omega.pairs().map(|(i, j)| (j, i)));
    let t = CartanTriple::new(t.c.clone(), t.d.clone(), reversed).unwrap();
    assert!(
        build_main_isomorphism(&t, 2, DEFAULT_SEED)
            .unwrap()
            .report
            .passed
    );
}
