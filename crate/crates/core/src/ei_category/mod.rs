//! The free EI category `C(C, D, Omega)` attached to a Cartan triple.

mod recognize;

pub use recognize::{recognize_cartan_type, unfactorizable_morphisms, FiniteCategory};

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    build_tensor_algebra, BasisLabel, BimoduleGenerator, GradedTensorData, LabelKind, LinearMap,
    LocalAlgebra, StructureConstantAlgebra,
};
use crate::arith::gcd;
use crate::cartan::{build_quiver, CartanTriple, Quiver};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, Fq};
use crate::words::{HeadRule, Word, WordDisplay, WordRules};

/// `X(i) x_{G} X(j)` for `G` cyclic of order `gcd(c_i, c_j)`, elements stored
/// as canonical pairs `(a, b)` with `b < c_j / gcd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biset {
    pub left_order: u64,
    pub right_order: u64,
    pub elements: Vec<(u64, u64)>,
}

impl Biset {
    pub fn new(ci: u64, cj: u64) -> Self {
        let g = gcd(ci, cj);
        let mut elements = Vec::new();
        for a in 0..ci {
            for b in 0..cj / g {
                elements.push((a, b));
            }
        }
        Biset {
            left_order: ci,
            right_order: cj,
            elements,
        }
    }

    fn common(&self) -> u64 {
        gcd(self.left_order, self.right_order)
    }

    /// Class of the raw pair `(eta_i^a, eta_j^b)`.
    pub fn class_of(&self, a: u64, b: u64) -> (u64, u64) {
        let g = self.common();
        let (li, rj) = (self.left_order / g, self.right_order / g);
        ((a + (b / rj) * li) % self.left_order, b % rj)
    }

    pub fn act_left(&self, k: u64, e: (u64, u64)) -> (u64, u64) {
        self.class_of(e.0 + k, e.1)
    }

    pub fn act_right(&self, e: (u64, u64), k: u64) -> (u64, u64) {
        self.class_of(e.0, e.1 + k)
    }

    /// Both one-sided actions are free, checked by orbit sizes.
    pub fn actions_are_free(&self) -> bool {
        self.elements.iter().all(|&e| {
            let left: std::collections::BTreeSet<_> =
                (0..self.left_order).map(|k| self.act_left(k, e)).collect();
            let right: std::collections::BTreeSet<_> = (0..self.right_order)
                .map(|k| self.act_right(e, k))
                .collect();
            left.len() as u64 == self.left_order && right.len() as u64 == self.right_order
        })
    }
}

/// The finite EI quiver of a Cartan triple: `Q°`, cyclic groups and bisets.
#[derive(Clone, Debug)]
pub struct EIQuiver {
    pub triple: CartanTriple,
    pub quiver: Quiver,
    pub rules: WordRules,
    pub arrow_names: Vec<String>,
    pub bisets: Vec<Biset>,
}

impl EIQuiver {
    pub fn group_order(&self, i: usize) -> u64 {
        self.rules.orders[i]
    }

    pub fn render(&self, w: &Word, symbol: &str) -> String {
        WordDisplay {
            word: w,
            rules: &self.rules,
            symbol,
            arrow_names: &self.arrow_names,
        }
        .to_string()
    }
}

pub fn build_ei_quiver(t: &CartanTriple) -> EIQuiver {
    let quiver = build_quiver(t).without_loops();
    let orders = t.d.diag().to_vec();
    let arrows: Vec<(usize, usize)> = quiver.arrows.iter().map(|a| (a.target, a.source)).collect();
    let bisets = arrows
        .iter()
        .map(|&(i, j)| Biset::new(orders[i], orders[j]))
        .collect();
    let arrow_names = quiver.arrows.iter().map(|a| a.label()).collect();
    EIQuiver {
        triple: t.clone(),
        quiver,
        rules: WordRules::new(orders, arrows),
        arrow_names,
        bisets,
    }
}

/// All morphisms in normal form with the full composition table.
#[derive(Clone, Debug)]
pub struct FreeEICategory {
    pub quiver: EIQuiver,
    pub morphisms: Vec<Word>,
    index: HashMap<Word, usize>,
    composition: Vec<Option<usize>>,
}

pub fn enumerate_category(q: &EIQuiver) -> FreeEICategory {
    let morphisms = q.rules.enumerate(&q.quiver.paths());
    let index: HashMap<Word, usize> = morphisms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let m = morphisms.len();
    let composition = (0..m * m)
        .into_par_iter()
        .map(|k| {
            let (g, f) = (&morphisms[k / m], &morphisms[k % m]);
            q.rules.multiply(g, f, HeadRule::Cyclic).map(|w| index[&w])
        })
        .collect();
    FreeEICategory {
        quiver: q.clone(),
        morphisms,
        index,
        composition,
    }
}

impl FreeEICategory {
    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_count(&self) -> usize {
        self.quiver.rules.orders.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.index[&Word::vertex_power(x, 0)]
    }

    /// `g o f` by index, `None` when not composable.
    pub fn compose_index(&self, g: usize, f: usize) -> Option<usize> {
        self.composition[g * self.morphisms.len() + f]
    }

    pub fn compose(&self, g: &Word, f: &Word) -> Result<Word> {
        if g.source != f.target {
            return Err(Error::input("morphisms are not composable"));
        }
        Ok(self
            .quiver
            .rules
            .multiply(g, f, HeadRule::Cyclic)
            .expect("cyclic heads never vanish"))
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&i| self.morphisms[i].source == x && self.morphisms[i].target == y)
            .collect()
    }

    /// Exhaustive associativity over composable triples.
    pub fn check_associativity(&self) -> bool {
        let m = self.morphisms.len();
        (0..m).into_par_iter().all(|h| {
            (0..m).all(|g| match self.compose_index(h, g) {
                None => true,
                Some(hg) => (0..m).all(|f| match self.compose_index(g, f) {
                    None => true,
                    Some(gf) => self.compose_index(hg, f) == self.compose_index(h, gf),
                }),
            })
        })
    }

    /// Every endomorphism has a two-sided inverse.
    pub fn check_ei(&self) -> bool {
        (0..self.object_count()).all(|x| {
            let id = self.identity(x);
            let ends = self.hom(x, x);
            ends.iter().all(|&u| {
                ends.iter().any(|&v| {
                    self.compose_index(u, v) == Some(id) && self.compose_index(v, u) == Some(id)
                })
            })
        })
    }

    pub fn render(&self, i: usize) -> String {
        self.quiver.render(&self.morphisms[i], "eta")
    }

    pub fn as_finite_category(&self) -> FiniteCategory {
        let n = self.object_count();
        FiniteCategory {
            object_count: n,
            source: self.morphisms.iter().map(|w| w.source).collect(),
            target: self.morphisms.iter().map(|w| w.target).collect(),
            composition: self.composition.clone(),
            identities: (0..n).map(|x| self.identity(x)).collect(),
            generators: Some(
                (0..n)
                    .map(|x| {
                        let c = self.quiver.group_order(x);
                        self.index[&Word::vertex_power(x, 1 % c)]
                    })
                    .collect(),
            ),
            names: (0..self.morphisms.len()).map(|i| self.render(i)).collect(),
        }
    }

    pub fn dump(&self) -> CategoryDump {
        let m = self.morphisms.len();
        let mut composition = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose_index(g, f) {
                    composition.push([g, f, h]);
                }
            }
        }
        CategoryDump {
            objects: (0..self.object_count())
                .map(|x| ObjectDump {
                    object: x + 1,
                    group_order: self.quiver.group_order(x),
                })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .enumerate()
                .map(|(i, w)| MorphismDump {
                    index: i,
                    source: w.source + 1,
                    target: w.target + 1,
                    normal_form: self.render(i),
                })
                .collect(),
            composition,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectDump {
    pub object: usize,
    pub group_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismDump {
    pub index: usize,
    pub source: usize,
    pub target: usize,
    pub normal_form: String,
}

/// Objects, morphisms and the composition table; `[g, f, g o f]` by index.
#[derive(Clone, Debug, Serialize)]
pub struct CategoryDump {
    pub objects: Vec<ObjectDump>,
    pub morphisms: Vec<MorphismDump>,
    pub composition: Vec<[usize; 3]>,
}

/// `kC`: basis the morphisms, product composition or zero.
pub fn category_algebra(cat: &FreeEICategory, field: Arc<FieldSpec>) -> StructureConstantAlgebra {
    let labels = (0..cat.morphism_count())
        .map(|i| BasisLabel::word(LabelKind::Morphism, cat.morphisms[i].clone(), cat.render(i)))
        .collect();
    let mut unit = vec![Fq::ZERO; cat.morphism_count()];
    for x in 0..cat.object_count() {
        unit[cat.identity(x)] = Fq::ONE;
    }
    StructureConstantAlgebra::from_rule(field, labels, unit, |g, f| {
        cat.compose_index(g, f).map(|h| (h, Fq::ONE))
    })
    .expect("composition table is well formed")
}

/// Degree-0 and degree-1 data of `kC` as a tensor algebra: group algebras
/// `kX(i)` and one bimodule generator per arrow.
pub fn tensor_data(
    q: &EIQuiver,
    field: Arc<FieldSpec>,
    lambda: Fq,
    symbol: &str,
) -> GradedTensorData {
    let base = q
        .rules
        .orders
        .iter()
        .map(|&c| LocalAlgebra {
            dim: c as usize,
            lambda,
        })
        .collect();
    let generators = q
        .rules
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(t, s))| BimoduleGenerator {
            target: t,
            source: s,
            left_step: q.rules.carry(a) as usize,
            right_step: q.rules.slot_bound(a) as usize,
            name: q.arrow_names[a].clone(),
        })
        .collect();
    GradedTensorData {
        field,
        base,
        generators,
        vertex_symbol: symbol.into(),
    }
}

/// Sends a tensor basis element to the product of the images of its factors.
/// `ends[a]` is `(target, source)` of generator `a`.
pub fn map_from_generators(
    tensor: Arc<StructureConstantAlgebra>,
    target: Arc<StructureConstantAlgebra>,
    ends: &[(usize, usize)],
    vertex_power: impl Fn(usize, u64) -> Vec<Fq> + Sync,
    arrow: impl Fn(usize) -> Vec<Fq> + Sync,
) -> LinearMap {
    let images: Vec<Vec<Fq>> = tensor
        .labels()
        .par_iter()
        .map(|label| {
            let w = label.word.as_ref().expect("tensor labels carry words");
            let mut acc = vertex_power(w.target, w.exps[0]);
            for (k, &a) in w.arrows.iter().enumerate() {
                acc = target.mul(&acc, &arrow(a));
                acc = target.mul(&acc, &vertex_power(ends[a].1, w.exps[k + 1]));
            }
            acc
        })
        .collect();
    LinearMap::from_images(tensor, target, &images)
}

pub struct TensorForm {
    pub data: GradedTensorData,
    pub tensor_algebra: Arc<StructureConstantAlgebra>,
    pub map: LinearMap,
}

/// `T_A(V) -> kC`, identity on generators.
pub fn tensor_form(q: &EIQuiver, field: Arc<FieldSpec>) -> Result<TensorForm> {
    let cat = enumerate_category(q);
    let kc = Arc::new(category_algebra(&cat, field.clone()));
    let data = tensor_data(q, field, Fq::ONE, "t");
    let tensor = Arc::new(build_tensor_algebra(&data)?);
    let basis = |w: Word| kc.basis_vector(cat.index_of(&w).expect("normal form"));
    let arrows = q.rules.arrows.clone();
    let map = map_from_generators(
        tensor.clone(),
        kc.clone(),
        &arrows,
        |v, a| basis(Word::vertex_power(v, a)),
        |a| {
            let (t, s) = arrows[a];
            basis(Word {
                target: t,
                source: s,
                arrows: vec![a],
                exps: vec![0, 0],
            })
        },
    );
    Ok(TensorForm {
        data,
        tensor_algebra: tensor,
        map,
    })
}
