//! Structural comparisons between `Gamma` and `Gamma'`.

use serde::Serialize;

use super::prime_triple::{construct_prime_triple, PrimeTriple};
use crate::arith;
use crate::cartan::{
    classify, find_isomorphism, quadratic_form, valued_graph, CartanTriple, TypeTag, ValuedGraph,
};
use crate::error::{Error, Result};

/// `gcd(c'_{(i,l),(j,l')}, c'_{(j,l'),(i,l)}) = gcd(c_ij, c_ji)` on every `Omega'` pair.
pub fn gcd_preserved(t: &CartanTriple, pt: &PrimeTriple) -> bool {
    pt.triple.omega.pairs().all(|(u, v)| {
        let (i, j) = (pt.index[u].0, pt.index[v].0);
        pt.triple.c.edge_multiplicity(u, v) == t.c.edge_multiplicity(i, j)
    })
}

/// `|Sigma_ij| = d_i d_j / gcd(d_i, d_j)` on every `Omega` pair.
pub fn sigma_cardinalities(t: &CartanTriple, pt: &PrimeTriple) -> bool {
    let d = &pt.factored.d;
    t.omega
        .pairs()
        .all(|(i, j)| pt.factored.sigma(i, j).len() as u64 == d[i] * d[j] / arith::gcd(d[i], d[j]))
}

/// `q_C(x) = q_{C'}(theta(x))`.
pub fn quadratic_compatible(t: &CartanTriple, pt: &PrimeTriple, x: &[i64]) -> Result<bool> {
    let lhs = quadratic_form(&t.c, &t.d, x)?;
    let y = super::prime_triple::theta_embedding(pt, x)?;
    let rhs = quadratic_form(&pt.triple.c, &pt.triple.d, &y)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeConsistency {
    pub source: TypeTag,
    pub components: Vec<TypeTag>,
    pub components_isomorphic: bool,
    pub passed: bool,
}

/// Type of a connected `C` against the types of the components of `C'`.
pub fn classify_prime_triple_consistency(t: &CartanTriple, p: u64) -> Result<TypeConsistency> {
    if !valued_graph(&t.c).is_connected() {
        return Err(Error::input("the Cartan matrix is not connected"));
    }
    let source = classify(&t.c, &t.d)[0].class.tag;
    let pt = construct_prime_triple(t, p)?;
    let parts = classify(&pt.triple.c, &pt.triple.d);
    let components: Vec<TypeTag> = parts.iter().map(|c| c.class.tag).collect();
    let g = valued_graph(&pt.triple.c);
    let first = g.induced(&parts[0].vertices);
    let components_isomorphic = parts
        .iter()
        .all(|c| find_isomorphism(&first, &g.induced(&c.vertices), None).is_some());
    let passed = components_isomorphic && components.iter().all(|&tag| tag == source);
    Ok(TypeConsistency {
        source,
        components,
        components_isomorphic,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipleSymmetrizerReport {
    pub factor: u64,
    pub copies: u64,
    pub component_count: usize,
    /// Whether each class `m_i p^{r_i} = a mod d` maps isomorphically onto `Gamma'`.
    pub relabelings_valid: Vec<bool>,
    pub passed: bool,
}

/// `Gamma''` of `(C, cD, Omega)` against `d` copies of `Gamma'`, `c = p^r d`.
pub fn multiple_symmetrizer_graph(
    t: &CartanTriple,
    p: u64,
    factor: u64,
) -> Result<MultipleSymmetrizerReport> {
    if factor == 0 {
        return Err(Error::input("the multiple must be positive"));
    }
    let base = construct_prime_triple(t, p)?;
    let scaled = CartanTriple::new(t.c.clone(), t.d.scaled(factor), t.omega.clone())?;
    let big = construct_prime_triple(&scaled, p)?;
    let (_, d) = arith::split_prime_power(factor, p);
    let g1 = valued_graph(&base.triple.c);
    let g2 = valued_graph(&big.triple.c);

    let mut relabelings_valid = Vec::new();
    let mut covered = vec![false; big.index.len()];
    for a in 0..d {
        // Vertices (i, m) of Gamma''_a and their images (i, l).
        let mut members = Vec::new();
        let mut image = Vec::new();
        for (k, &(i, m)) in big.index.iter().enumerate() {
            let pr = base.factored.p_power(i);
            if (m as u128 * pr as u128 % d as u128) as u64 != a {
                continue;
            }
            let quotient = ((m as u128 * pr as u128 - a as u128) / d as u128) as u64;
            let di = base.factored.d[i];
            let inv = arith::mod_inverse(pr % di, di).unwrap_or(0);
            let l = (quotient % di) * inv % di.max(1);
            members.push(k);
            image.push(base.position(i, l));
        }
        for &k in &members {
            covered[k] = true;
        }
        relabelings_valid.push(is_isomorphism(&g2, &members, &g1, &image));
    }
    let component_count = g2.connected_components().len();
    let base_components = g1.connected_components().len();
    let passed = covered.iter().all(|&c| c)
        && relabelings_valid.iter().all(|&v| v)
        && component_count as u64 == d * base_components as u64;
    Ok(MultipleSymmetrizerReport {
        factor,
        copies: d,
        component_count,
        relabelings_valid,
        passed,
    })
}

/// `members[k] -> image[k]` is a bijection onto `target` preserving valuations,
/// and no edge leaves `members` in `source`.
fn is_isomorphism(
    source: &ValuedGraph,
    members: &[usize],
    target: &ValuedGraph,
    image: &[usize],
) -> bool {
    let mut seen = image.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != target.vertex_count() || members.len() != seen.len() {
        return false;
    }
    let inside: std::collections::BTreeSet<usize> = members.iter().copied().collect();
    for (x, &u) in members.iter().enumerate() {
        if source.neighbors(u).iter().any(|v| !inside.contains(v)) {
            return false;
        }
        for (y, &v) in members.iter().enumerate() {
            if x != y && source.valuation(u, v) != target.valuation(image[x], image[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::samples;

    #[test]
    fn g2_multiples() {
        let r = multiple_symmetrizer_graph(&samples::g2(), 2, 1).unwrap();
        assert!(r.passed && r.copies == 1);
        let r = multiple_symmetrizer_graph(&samples::g2(), 2, 2).unwrap();
        assert!(r.passed && r.copies == 1 && r.component_count == 1);
        let r = multiple_symmetrizer_graph(&samples::g2(), 2, 3).unwrap();
        assert!(r.passed && r.copies == 3 && r.component_count == 3);
    }

    #[test]
    fn consistency_examples() {
        let r = classify_prime_triple_consistency(&samples::g2(), 2).unwrap();
        assert!(r.passed && r.source == TypeTag::Dynkin);
        let r = classify_prime_triple_consistency(&samples::a11_tilde(), 3).unwrap();
        assert!(r.passed && r.source == TypeTag::Euclidean);
        let t = CartanTriple::with_defaults(vec![vec![2, -1], vec![-5, 2]]).unwrap();
        let r = classify_prime_triple_consistency(&t, 2).unwrap();
        assert!(r.passed && r.source == TypeTag::Indefinite);
    }
}
