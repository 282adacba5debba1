//! Recovering `(C, D, Omega)` from an abstract finite category.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::gcd;
use crate::cartan::{CartanMatrix, CartanTriple, Orientation, Symmetrizer};
use crate::error::{EiCondition, Error, Result};

/// A finite category by its composition table; `composition[g * m + f]` is
/// `g o f` when `source(g) = target(f)`.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub object_count: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub composition: Vec<Option<usize>>,
    pub identities: Vec<usize>,
    /// A generator of each automorphism group, when known.
    pub generators: Option<Vec<usize>>,
    pub names: Vec<String>,
}

impl FiniteCategory {
    pub fn morphism_count(&self) -> usize {
        self.source.len()
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition[g * self.morphism_count() + f]
    }

    fn endomorphisms(&self, x: usize) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&u| self.source[u] == x && self.target[u] == x)
            .collect()
    }

    /// `[id, eta, eta^2, ...]` until it returns to the identity.
    fn powers(&self, eta: usize, x: usize) -> Vec<usize> {
        let id = self.identities[x];
        let mut out = vec![id];
        let mut cur = eta;
        while cur != id && out.len() <= self.morphism_count() {
            out.push(cur);
            cur = self.compose(eta, cur).expect("endomorphisms compose");
        }
        out
    }
}

/// Non-endomorphisms that are not composites of two non-endomorphisms.
pub fn unfactorizable_morphisms(cat: &FiniteCategory) -> Vec<usize> {
    let m = cat.morphism_count();
    let non_endo: Vec<usize> = (0..m).filter(|&u| cat.source[u] != cat.target[u]).collect();
    let mut composite = vec![false; m];
    for &g in &non_endo {
        for &f in &non_endo {
            if let Some(h) = cat.compose(g, f) {
                composite[h] = true;
            }
        }
    }
    non_endo.into_iter().filter(|&u| !composite[u]).collect()
}

fn not_cartan(condition: EiCondition, detail: String) -> Error {
    Error::NotCartanType { condition, detail }
}

/// Checks (EC1)-(EC3) and reads off the triple. With `search_generators`
/// a missing generator is found among the automorphisms.
pub fn recognize_cartan_type(
    cat: &FiniteCategory,
    search_generators: bool,
) -> Result<CartanTriple> {
    let n = cat.object_count;
    let mut powers = Vec::with_capacity(n);
    for x in 0..n {
        let ends = cat.endomorphisms(x);
        let id = cat.identities[x];
        for &u in &ends {
            let invertible = ends
                .iter()
                .any(|&v| cat.compose(u, v) == Some(id) && cat.compose(v, u) == Some(id));
            if !invertible {
                return Err(not_cartan(
                    EiCondition::EC1,
                    format!(
                        "endomorphism {} of object {} is not invertible",
                        cat.names[u],
                        x + 1
                    ),
                ));
            }
        }
        let generated = |eta: usize| {
            let p = cat.powers(eta, x);
            (p.len() == ends.len()).then_some(p)
        };
        let found = match &cat.generators {
            Some(gens) => generated(gens[x]),
            None if search_generators => ends.iter().find_map(|&eta| generated(eta)),
            None => return Err(Error::input("automorphism generators were not supplied")),
        };
        match found {
            Some(p) => powers.push(p),
            None => {
                return Err(not_cartan(
                    EiCondition::EC1,
                    format!(
                        "automorphism group of object {} is not cyclic on the generator",
                        x + 1
                    ),
                ))
            }
        }
    }
    let orders: Vec<u64> = powers.iter().map(|p| p.len() as u64).collect();

    let mut hom0: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for u in unfactorizable_morphisms(cat) {
        hom0.entry((cat.target[u], cat.source[u]))
            .or_default()
            .push(u);
    }

    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        entries[i][i] = 2;
    }
    let mut omega = Vec::new();
    for (&(i, j), alphas) in &hom0 {
        if hom0.contains_key(&(j, i)) {
            return Err(not_cartan(
                EiCondition::Orientation,
                format!(
                    "unfactorizable morphisms between {} and {} in both directions",
                    i + 1,
                    j + 1
                ),
            ));
        }
        let (ci, cj) = (orders[i], orders[j]);
        let g = gcd(ci, cj);
        let members: BTreeSet<usize> = alphas.iter().copied().collect();
        for &alpha in alphas {
            let left: BTreeSet<usize> = powers[i]
                .iter()
                .map(|&e| cat.compose(e, alpha).unwrap())
                .collect();
            let right: BTreeSet<usize> = powers[j]
                .iter()
                .map(|&e| cat.compose(alpha, e).unwrap())
                .collect();
            if left.len() as u64 != ci || right.len() as u64 != cj {
                return Err(not_cartan(
                    EiCondition::EC2,
                    format!("action on {} is not free", cat.names[alpha]),
                ));
            }
            let lhs = cat.compose(powers[i][(ci / g) as usize % ci as usize], alpha);
            let rhs = cat.compose(alpha, powers[j][(cj / g) as usize % cj as usize]);
            if lhs != rhs {
                return Err(not_cartan(
                    EiCondition::EC3,
                    format!("generator powers do not commute past {}", cat.names[alpha]),
                ));
            }
        }
        // Orbits of X(i) x X(j); each must have c_i c_j / g elements.
        let mut seen = BTreeSet::new();
        let mut orbits = 0i64;
        for &alpha in alphas {
            if seen.contains(&alpha) {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for &l in &powers[i] {
                let la = cat.compose(l, alpha).unwrap();
                for &r in &powers[j] {
                    orbit.insert(cat.compose(la, r).unwrap());
                }
            }
            if orbit.len() as u64 != ci * cj / g || !orbit.is_subset(&members) {
                return Err(not_cartan(
                    EiCondition::EC2,
                    format!("orbit of {} has the wrong size", cat.names[alpha]),
                ));
            }
            seen.extend(orbit);
            orbits += 1;
        }
        entries[i][j] = -((cj / g) as i64) * orbits;
        entries[j][i] = -((ci / g) as i64) * orbits;
        omega.push((i, j));
    }
    CartanTriple::new(
        CartanMatrix::new(entries)?,
        Symmetrizer::new(orders)?,
        Orientation::new(omega),
    )
}
