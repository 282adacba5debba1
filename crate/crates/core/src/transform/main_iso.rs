//! The isomorphism `kC(C, D, Omega) -> H(C', D', Omega')`, assembled from the
//! local maps on vertex groups and on bisets, then checked exhaustively.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::decomposition::{bimodule_decomposition, BimoduleDecomposition};
use super::prime_triple::{construct_prime_triple, PrimeTriple};
use crate::algebra::{is_algebra_homomorphism, is_bijective, HomCheck, LinearMap};
use crate::arith::{self, lcm};
use crate::cartan::{ArrowKind, CartanTriple};
use crate::ei_category::{build_ei_quiver, category_algebra, enumerate_category, FreeEICategory};
use crate::error::{Error, Result};
use crate::ffield::{
    make_field, truncated_decomposition, FieldParams, FieldSpec, Fq, TruncatedDecomposition,
};
use crate::gls::{build_h, GLSAlgebra};
use crate::words::Word;

#[derive(Clone, Debug, Serialize)]
pub struct MainIsoReport {
    pub requested_prime: u64,
    /// Characteristic actually used for field arithmetic.
    pub field_prime: u64,
    pub field: FieldParams,
    pub source_dim: usize,
    pub target_dim: usize,
    pub decompositions_verified: bool,
    pub homomorphism: HomCheck,
    pub bijective: bool,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct MainIsomorphism {
    pub prime_triple: PrimeTriple,
    pub category: FreeEICategory,
    pub h: GLSAlgebra,
    pub phi: LinearMap,
    pub report: MainIsoReport,
}

/// Smallest prime dividing none of the `c_i`.
pub fn auxiliary_prime(t: &CartanTriple) -> u64 {
    (2..)
        .filter(|&q| arith::is_prime(q))
        .find(|&q| t.d.diag().iter().all(|&c| c % q != 0))
        .expect("infinitely many primes")
}

/// The prime triple used for field arithmetic (at the auxiliary prime when
/// `p = 0`) and the field containing the needed roots of unity.
pub fn theorem_field(t: &CartanTriple, p: u64, seed: u64) -> Result<(PrimeTriple, Arc<FieldSpec>)> {
    let combinatorial = construct_prime_triple(t, p)?;
    let pt = if p == 0 {
        let q = auxiliary_prime(t);
        let at_q = construct_prime_triple(t, q)?;
        if at_q.triple != combinatorial.triple {
            return Err(Error::TheoremViolation(format!(
                "triple at auxiliary prime {q} differs from the characteristic 0 triple"
            )));
        }
        at_q
    } else {
        combinatorial
    };
    let n_roots = pt.factored.d.iter().fold(1, |acc, &d| lcm(acc, d));
    let field = Arc::new(make_field(pt.p, n_roots, seed)?);
    Ok((pt, field))
}

pub fn build_main_isomorphism(t: &CartanTriple, p: u64, seed: u64) -> Result<MainIsomorphism> {
    let combinatorial = construct_prime_triple(t, p)?;
    let (pt, field) = theorem_field(t, p, seed)?;
    let field_prime = pt.p;

    let category = enumerate_category(&build_ei_quiver(t));
    let h = build_h(&pt.triple, field.clone());
    if category.morphism_count() != h.dim() {
        return Err(Error::TheoremViolation(format!(
            "dim kC = {} but dim H' = {}",
            category.morphism_count(),
            h.dim()
        )));
    }
    let builder = Builder::new(t, &pt, &field, &h)?;
    let kc = Arc::new(category_algebra(&category, field.clone()));
    let images: Vec<Vec<Fq>> = category
        .morphisms
        .iter()
        .map(|w| builder.image(w))
        .collect();
    let phi = LinearMap::from_images(kc, h.algebra.clone(), &images);
    let homomorphism = is_algebra_homomorphism(&phi);
    let bijective = is_bijective(&phi);
    let decompositions_verified = builder.decompositions.values().all(|d| d.checks.all());
    let report = MainIsoReport {
        requested_prime: p,
        field_prime,
        field: field.params(),
        source_dim: category.morphism_count(),
        target_dim: h.dim(),
        decompositions_verified,
        passed: decompositions_verified && homomorphism.passed() && bijective,
        homomorphism,
        bijective,
    };
    Ok(MainIsomorphism {
        prime_triple: combinatorial,
        category,
        h,
        phi,
        report,
    })
}

struct Builder<'a> {
    t: &'a CartanTriple,
    pt: &'a PrimeTriple,
    field: &'a FieldSpec,
    h: &'a GLSAlgebra,
    vertex: Vec<TruncatedDecomposition>,
    decompositions: HashMap<(usize, usize), BimoduleDecomposition>,
    /// Arrow of `Q°(C')` by `(target, source, g)`.
    target_arrows: HashMap<(usize, usize, usize), usize>,
    /// `(target, source, g)` of each arrow of `Q°(C)`.
    source_arrows: Vec<(usize, usize)>,
    source_g: Vec<usize>,
}

impl<'a> Builder<'a> {
    fn new(
        t: &'a CartanTriple,
        pt: &'a PrimeTriple,
        field: &'a FieldSpec,
        h: &'a GLSAlgebra,
    ) -> Result<Self> {
        let c = t.d.diag();
        let vertex = c
            .iter()
            .map(|&ci| truncated_decomposition(field, ci as usize))
            .collect::<Result<Vec<_>>>()?;
        let source_quiver = build_ei_quiver(t).quiver;
        let mut decompositions = HashMap::new();
        for a in &source_quiver.arrows {
            let key = (c[a.target] as usize, c[a.source] as usize);
            if let std::collections::hash_map::Entry::Vacant(e) = decompositions.entry(key) {
                e.insert(bimodule_decomposition(field, key.0, key.1)?);
            }
        }
        let g_of = |kind: ArrowKind| match kind {
            ArrowKind::Alpha { g } => g,
            ArrowKind::Loop => 0,
        };
        let target_arrows = h
            .quiver
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| ((a.target, a.source, g_of(a.kind)), k))
            .collect();
        let source_arrows = source_quiver
            .arrows
            .iter()
            .map(|a| (a.target, a.source))
            .collect();
        let source_g = source_quiver.arrows.iter().map(|a| g_of(a.kind)).collect();
        Ok(Builder {
            t,
            pt,
            field,
            h,
            vertex,
            decompositions,
            target_arrows,
            source_arrows,
            source_g,
        })
    }

    /// `Theta_i(eta_i^k)`.
    fn vertex_image(&self, i: usize, k: u64) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; self.h.dim()];
        let td = &self.vertex[i];
        for l in 0..self.pt.factored.d[i] {
            let comp = td.component_of_power(k as usize, l as usize);
            let v = self.pt.position(i, l);
            for (tpow, &coef) in comp.iter().enumerate() {
                if !coef.is_zero() {
                    let idx = self
                        .h
                        .index_of(&Word::vertex_power(v, tpow as u64))
                        .expect("in range");
                    out[idx] = self.field.add(out[idx], coef);
                }
            }
        }
        out
    }

    /// Image of `eta_i^u alpha eta_j^v` through the biset map.
    fn arrow_image(&self, arrow: usize, u: u64, v: u64) -> Vec<Fq> {
        let (i, j) = self.source_arrows[arrow];
        let c = self.t.d.diag();
        let dec = &self.decompositions[&(c[i] as usize, c[j] as usize)];
        let column = dec.matrix.column(dec.source_index(u as usize, v as usize));
        let g = self.source_g[arrow];
        let mut out = vec![Fq::ZERO; self.h.dim()];
        for (idx, &coef) in column.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (k, eu, ev) = dec.target_basis[idx];
            let (li, lj) = dec.sigma.sigma[k];
            let (ti, sj) = (
                self.pt.position(i, li as u64),
                self.pt.position(j, lj as u64),
            );
            let target_arrow = self.target_arrows[&(ti, sj, g)];
            let w = Word {
                target: ti,
                source: sj,
                arrows: vec![target_arrow],
                exps: vec![eu as u64, ev as u64],
            };
            let pos = self
                .h
                .index_of(&w)
                .expect("decomposition basis is in normal form");
            out[pos] = self.field.add(out[pos], coef);
        }
        out
    }

    /// `phi` on a normal-form morphism, through its factorisation
    /// `(eta^{e0} a_1 eta^{e1}) (a_2 eta^{e2}) ... (a_n eta^{en})`.
    fn image(&self, w: &Word) -> Vec<Fq> {
        if w.arrows.is_empty() {
            return self.vertex_image(w.target, w.exps[0]);
        }
        let mut acc = self.arrow_image(w.arrows[0], w.exps[0], w.exps[1]);
        for k in 1..w.arrows.len() {
            let next = self.arrow_image(w.arrows[k], 0, w.exps[k + 1]);
            acc = self.h.algebra.mul(&acc, &next);
        }
        acc
    }
}
