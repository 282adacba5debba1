//! End-to-end acceptance run: one line per criterion, non-zero exit on failure.

use std::sync::Arc;
use std::time::Instant;

use eicat_core::algebra::{is_algebra_homomorphism, is_bijective};
use eicat_core::cartan::{
    build_quiver, find_isomorphism, find_minimal_symmetrizer, samples, valued_graph, CartanMatrix,
    CartanTriple, IsoConstraint, Orientation, ValuedGraph,
};
use eicat_core::ei_category::{
    build_ei_quiver, category_algebra, enumerate_category, recognize_cartan_type, tensor_form,
    FiniteCategory,
};
use eicat_core::ffield::{make_field, DEFAULT_SEED};
use eicat_core::gls::tensor_form_h;
use eicat_core::transform::*;
use eicat_core::{EiCondition, Error};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

/// Name, time limit in seconds, and the check.
type Criterion = (&'static str, f64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

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

// Reference simply-laced graphs, built by hand.

fn path_graph(n: usize) -> ValuedGraph {
    let mut g = ValuedGraph::new(n);
    for i in 1..n {
        g.set_edge(i - 1, i, 1, 1);
    }
    g
}

/// A star with three arms of the given edge lengths.
fn star(arms: [usize; 3]) -> ValuedGraph {
    let n = 1 + arms.iter().sum::<usize>();
    let mut g = ValuedGraph::new(n);
    let mut next = 1;
    for len in arms {
        let mut prev = 0;
        for _ in 0..len {
            g.set_edge(prev, next, 1, 1);
            prev = next;
            next += 1;
        }
    }
    g
}

fn reference(name: &str) -> ValuedGraph {
    let (tilde, rest) = match name.strip_prefix('~') {
        Some(r) => (true, r),
        None => (false, name),
    };
    let n: usize = rest[1..].parse().unwrap();
    match (tilde, &rest[..1]) {
        (false, "A") => path_graph(n),
        (false, "D") => star([1, 1, n - 3]),
        (false, "E") => star([1, 2, n - 4]),
        (true, "A") => {
            let mut g = path_graph(n + 1);
            g.set_edge(n, 0, 1, 1);
            g
        }
        (true, "D") => {
            // Path of n - 3 vertices with two extra leaves at each end.
            let mut g = ValuedGraph::new(n + 1);
            for i in 1..n - 3 {
                g.set_edge(i - 1, i, 1, 1);
            }
            g.set_edge(0, n - 3, 1, 1);
            g.set_edge(0, n - 2, 1, 1);
            g.set_edge(n - 4, n - 1, 1, 1);
            g.set_edge(n - 4, n, 1, 1);
            g
        }
        (true, "E") if n == 6 => star([2, 2, 2]),
        (true, "E") if n == 7 => star([1, 3, 3]),
        _ => panic!("no reference graph for {name}"),
    }
}

fn table_instances(table: u8) -> Vec<(String, CartanMatrix, u64, u64, String)> {
    let b = |n| {
        (
            format!("B{n}"),
            samples::b_n(n),
            2,
            3,
            format!("D{}", n + 1),
        )
    };
    let c = |n| {
        (
            format!("C{n}"),
            samples::c_n(n),
            2,
            3,
            format!("A{}", 2 * n - 1),
        )
    };
    if table == 1 {
        vec![
            b(3),
            b(4),
            c(2),
            c(3),
            ("F4".into(), samples::f4(), 2, 3, "E6".into()),
            ("G2".into(), samples::g2_matrix(), 3, 2, "D4".into()),
        ]
    } else {
        let mut v = Vec::new();
        for n in [2, 3] {
            v.push((
                format!("~B{n}"),
                samples::b_tilde(n),
                2,
                3,
                format!("~D{}", n + 2),
            ));
            v.push((
                format!("~C{n}"),
                samples::c_tilde(n),
                2,
                3,
                format!("~A{}", 2 * n - 1),
            ));
            v.push((
                format!("~BC{n}"),
                samples::bc_tilde(n),
                2,
                3,
                format!("~D{}", 2 * n + 2),
            ));
        }
        for n in [3, 4] {
            v.push((
                format!("~BD{n}"),
                samples::bd_tilde(n),
                2,
                3,
                format!("~D{}", n + 1),
            ));
            v.push((
                format!("~CD{n}"),
                samples::cd_tilde(n),
                2,
                3,
                format!("~D{}", 2 * n),
            ));
        }
        v.push((
            "~A11".into(),
            samples::a11_tilde_matrix(),
            2,
            3,
            "~D4".into(),
        ));
        v.push(("~F41".into(), samples::f41_tilde(), 2, 3, "~E7".into()));
        v.push(("~F42".into(), samples::f42_tilde(), 2, 3, "~E6".into()));
        v.push(("~G21".into(), samples::g21_tilde(), 3, 2, "~E6".into()));
        v.push(("~G22".into(), samples::g22_tilde(), 3, 2, "~D4".into()));
        v
    }
}

fn table_criterion(table: u8) -> Outcome {
    for (name, c, torsion, coprime, expected) in table_instances(table) {
        let t = CartanTriple::new(
            c.clone(),
            find_minimal_symmetrizer(&c).unwrap(),
            Orientation::default_for(&c),
        )
        .unwrap();
        let at_torsion = construct_prime_triple(&t, torsion).map_err(|e| e.to_string())?;
        ensure(at_torsion.triple == t, || {
            format!("{name}: not reproduced at p={torsion}")
        })?;
        let at_coprime = construct_prime_triple(&t, coprime).map_err(|e| e.to_string())?;
        let g = valued_graph(&at_coprime.triple.c);
        ensure(
            find_isomorphism(&g, &reference(&expected), None).is_some(),
            || format!("{name}: p={coprime} graph is not {expected}"),
        )?;
    }
    let report = regenerate_tables().map_err(|e| e.to_string())?;
    ensure(
        report
            .rows
            .iter()
            .filter(|r| r.table == table)
            .all(|r| r.matched()),
        || format!("table {table} report mismatch"),
    )
}

/// Normal forms per path: `c_head * prod c_s / gcd(c_t, c_s)`.
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

fn random_triples() -> Vec<CartanTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    (0..10)
        .map(|_| samples::random_triple(&mut rng, 3, 6))
        .collect()
}

fn main_theorem() -> Outcome {
    ensure(path_dimension(&samples::g2()) == 7, || {
        "G2 dimension is not 7".into()
    })?;
    ensure(path_dimension(&samples::c2()) == 5, || {
        "C2 dimension is not 5".into()
    })?;
    let mut all = fixtures();
    all.extend(
        random_triples()
            .into_iter()
            .enumerate()
            .map(|(k, t)| (format!("random{k}"), t)),
    );
    for (name, t) in &all {
        let expected = path_dimension(t) as usize;
        for p in [2, 3, 5] {
            let m =
                build_main_isomorphism(t, p, DEFAULT_SEED).map_err(|e| format!("{name}: {e}"))?;
            let r = &m.report;
            ensure(r.source_dim == expected && r.target_dim == expected, || {
                format!(
                    "{name} p={p}: dims {} / {} / oracle {expected}",
                    r.source_dim, r.target_dim
                )
            })?;
            ensure(r.passed, || format!("{name} p={p}: {r:?}"))?;
        }
    }
    Ok(())
}

fn decomposition() -> Outcome {
    for p in [2u64, 3] {
        for a in 1..=8usize {
            for b in 1..=8usize {
                let odd = |mut n: u64| {
                    while n.is_multiple_of(p) {
                        n /= p;
                    }
                    n
                };
                let (na, nb) = (odd(a as u64), odd(b as u64));
                let f = make_field(p, na * nb / gcd(na, nb), DEFAULT_SEED).unwrap();
                let d = bimodule_decomposition(&f, a, b).map_err(|e| e.to_string())?;
                let c = &d.checks;
                let dim = a * b / gcd(a as u64, b as u64) as usize;
                let (r, s) = (d.r, d.s);
                let summand = p.pow(r) * p.pow(s) / p.pow(r.min(s));
                ensure(
                    c.bijective && c.left_linear && c.right_linear && c.balanced && c.all(),
                    || format!("a={a} b={b} p={p}: {c:?}"),
                )?;
                ensure(
                    d.source_basis.len() == dim
                        && d.sigma.sigma.len() as u64 * summand == dim as u64,
                    || format!("a={a} b={b} p={p}: dimension count"),
                )?;
            }
        }
    }
    Ok(())
}

fn tensor_forms() -> Outcome {
    let field = Arc::new(make_field(3, 4, DEFAULT_SEED).unwrap());
    for (name, t) in fixtures() {
        let tf = tensor_form(&build_ei_quiver(&t), field.clone()).map_err(|e| e.to_string())?;
        ensure(
            is_algebra_homomorphism(&tf.map).passed() && is_bijective(&tf.map),
            || format!("{name}: category tensor form"),
        )?;
        let th = tensor_form_h(&t, field.clone()).map_err(|e| e.to_string())?;
        ensure(
            is_algebra_homomorphism(&th.map).passed() && is_bijective(&th.map),
            || format!("{name}: H tensor form"),
        )?;
    }
    Ok(())
}

fn q_oracle(c: &CartanMatrix, d: &[u64], x: &[i64]) -> i128 {
    let mut s: i128 = 0;
    for i in 0..x.len() {
        for j in 0..x.len() {
            s += d[i] as i128 * c.get(i, j) as i128 * x[i] as i128 * x[j] as i128;
        }
    }
    s / 2
}

fn quadratic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, t) in fixtures() {
        for p in [0, 2, 3, 5] {
            let pt = construct_prime_triple(&t, p).map_err(|e| e.to_string())?;
            for _ in 0..200 {
                let x: Vec<i64> = (0..t.rank()).map(|_| rng.gen_range(-5..=5)).collect();
                let y = theta_embedding(&pt, &x).map_err(|e| e.to_string())?;
                let (lhs, rhs) = (
                    q_oracle(&t.c, t.d.diag(), &x),
                    q_oracle(&pt.triple.c, pt.triple.d.diag(), &y),
                );
                ensure(lhs == rhs, || {
                    format!("{name} p={p} x={x:?}: {lhs} != {rhs}")
                })?;
            }
        }
    }
    Ok(())
}

fn lusztig() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, t) in fixtures() {
        let g = lusztig_forward(&t.c, &t.d).map_err(|e| e.to_string())?;
        let back = lusztig_inverse(&g).map_err(|e| e.to_string())?;
        ensure(back == (t.c.clone(), t.d.clone()), || {
            format!("{name}: inverse o forward")
        })?;

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
        let (c, d) = lusztig_inverse(&h).map_err(|e| e.to_string())?;
        let again = lusztig_forward(&c, &d).map_err(|e| e.to_string())?;
        let constraint = IsoConstraint {
            sigma_a: &h.sigma,
            sigma_b: &again.sigma,
        };
        ensure(
            find_isomorphism(&h.graph, &again.graph, Some(constraint)).is_some(),
            || format!("{name}: forward o inverse"),
        )?;

        for p in [0, 2, 3, 5] {
            if p != 0 && t.d.diag().iter().any(|&c| c % p == 0) {
                continue;
            }
            let r = compatibility_check(&t, p, DEFAULT_SEED).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("{name} p={p}: {r:?}"))?;
        }
    }
    Ok(())
}

fn structural() -> Outcome {
    let mut connected: Vec<(String, CartanTriple)> = fixtures()
        .into_iter()
        .filter(|(_, t)| valued_graph(&t.c).is_connected())
        .collect();
    for table in [1, 2] {
        for (name, c, ..) in table_instances(table) {
            connected.push((
                name,
                CartanTriple::with_defaults(c.entries().to_vec()).unwrap(),
            ));
        }
    }
    for (name, t) in &connected {
        for p in [0, 2, 3, 5] {
            let pt = construct_prime_triple(t, p).map_err(|e| e.to_string())?;
            ensure(valued_graph(&pt.triple.c).is_connected(), || {
                format!("{name} p={p}: disconnected")
            })?;
            let r = classify_prime_triple_consistency(t, p).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("{name} p={p}: {r:?}"))?;
        }
    }
    for (name, t) in fixtures() {
        for p in [2, 3] {
            for factor in [2, 3, 4, 6] {
                let r = multiple_symmetrizer_graph(&t, p, factor).map_err(|e| e.to_string())?;
                ensure(r.passed, || format!("{name} p={p} c={factor}: {r:?}"))?;
            }
        }
    }
    Ok(())
}

fn negative_controls() -> Outcome {
    let field = Arc::new(make_field(2, 3, DEFAULT_SEED).unwrap());
    let cat = enumerate_category(&build_ei_quiver(&samples::g2()));
    let alg = category_algebra(&cat, field);
    ensure(alg.check_associativity(), || {
        "uncorrupted table fails".into()
    })?;
    // eta^1 * eta^1 = eta^2 in Z/3; redirect it to eta^0.
    let corrupted = (0..alg.dim())
        .flat_map(|i| (0..alg.dim()).map(move |j| (i, j)))
        .filter_map(|(i, j)| alg.basis_product(i, j).map(|p| (i, j, p)))
        .find(|&(i, j, (k, _))| i == j && k != i)
        .map(|(i, j, (_, s))| alg.with_entry(i, j, Some((i, s))))
        .ok_or("no product to corrupt")?;
    ensure(!corrupted.check_associativity(), || {
        "corrupted table passes associativity".into()
    })?;

    let mut triangle = ValuedGraph::new(3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        triangle.set_edge(u, v, 1, 1);
    }
    let bad = GraphWithAutomorphism::new(triangle, vec![1, 2, 0]);
    ensure(
        matches!(lusztig_inverse(&bad), Err(Error::Input(_))),
        || "inadmissible sigma accepted".into(),
    )?;

    // Z/2 on one object acting trivially on an arrow from a second object.
    let m = 4;
    let mut composition = vec![None; m * m];
    for (g, f, h) in [
        (0, 0, 0),
        (0, 1, 1),
        (1, 0, 1),
        (1, 1, 0),
        (2, 2, 2),
        (3, 2, 3),
        (0, 3, 3),
        (1, 3, 3),
    ] {
        composition[g * m + f] = Some(h);
    }
    let cat = FiniteCategory {
        object_count: 2,
        source: vec![0, 0, 1, 1],
        target: vec![0, 0, 1, 0],
        composition,
        identities: vec![0, 2],
        generators: Some(vec![1, 2]),
        names: vec!["id1".into(), "eta1".into(), "id2".into(), "alpha".into()],
    };
    match recognize_cartan_type(&cat, false) {
        Err(Error::NotCartanType {
            condition: EiCondition::EC2,
            ..
        }) => Ok(()),
        other => Err(format!("EC2 violation not reported: {other:?}")),
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("finite-type table reproduction", 1.0, || table_criterion(1)),
        ("affine-type table reproduction", 5.0, || table_criterion(2)),
        (
            "main isomorphism, fixtures and random triples at p = 2, 3, 5",
            60.0,
            main_theorem,
        ),
        (
            "bimodule decomposition, a, b <= 8, p = 2, 3",
            10.0,
            decomposition,
        ),
        ("tensor forms of kC and H", f64::INFINITY, tensor_forms),
        ("quadratic form compatibility", f64::INFINITY, quadratic),
        (
            "Lusztig round trips and compatibility",
            f64::INFINITY,
            lusztig,
        ),
        ("structural lemmas", f64::INFINITY, structural),
        ("negative controls", f64::INFINITY, negative_controls),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let within = secs < limit;
        let limit_text = if limit.is_finite() {
            format!(" (limit {limit} s)")
        } else {
            String::new()
        };
        match (&result, within) {
            (Ok(()), true) => println!(
                "criterion {}: PASS  {name}  [{secs:.3} s{limit_text}]",
                k + 1
            ),
            (Ok(()), false) => {
                failures += 1;
                println!(
                    "criterion {}: FAIL  {name}  [{secs:.3} s exceeds{limit_text}]",
                    k + 1
                );
            }
            (Err(msg), _) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}  [{secs:.3} s] {msg}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
