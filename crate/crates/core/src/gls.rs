//! `H(C, D, Omega)`: the path algebra of `Q(C, Omega)` modulo
//! `eps_i^{c_i} = 0` and `eps_i^{c_i/g} alpha = alpha eps_j^{c_j/g}`, in normal form.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{build_tensor_algebra, BasisLabel, LabelKind, StructureConstantAlgebra};
use crate::cartan::CartanTriple;
use crate::ei_category::{build_ei_quiver, map_from_generators, tensor_data, EIQuiver, TensorForm};
use crate::error::Result;
use crate::ffield::{FieldSpec, Fq};
use crate::words::{HeadRule, Word};

#[derive(Clone, Debug)]
pub struct GLSAlgebra {
    pub triple: CartanTriple,
    pub quiver: EIQuiver,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
    pub algebra: Arc<StructureConstantAlgebra>,
}

pub fn build_h(t: &CartanTriple, field: Arc<FieldSpec>) -> GLSAlgebra {
    let quiver = build_ei_quiver(t);
    let words = quiver.rules.enumerate(&quiver.quiver.paths());
    let index: HashMap<Word, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let labels = words
        .iter()
        .map(|w| BasisLabel::word(LabelKind::Monomial, w.clone(), quiver.render(w, "eps")))
        .collect();
    let mut unit = vec![Fq::ZERO; words.len()];
    for v in 0..t.rank() {
        unit[index[&Word::vertex_power(v, 0)]] = Fq::ONE;
    }
    let algebra = StructureConstantAlgebra::from_rule(field, labels, unit, |i, j| {
        let w = quiver
            .rules
            .multiply(&words[i], &words[j], HeadRule::Nilpotent)?;
        Some((index[&w], Fq::ONE))
    })
    .expect("normal-form table is well formed");
    GLSAlgebra {
        triple: t.clone(),
        quiver,
        words,
        index,
        algebra: Arc::new(algebra),
    }
}

impl GLSAlgebra {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// The element with the given normal form, or zero if it is not one.
    pub fn element(&self, w: &Word) -> Vec<Fq> {
        match self.index_of(w) {
            Some(i) => self.algebra.basis_vector(i),
            None => vec![Fq::ZERO; self.dim()],
        }
    }

    pub fn idempotent(&self, i: usize) -> Vec<Fq> {
        self.element(&Word::vertex_power(i, 0))
    }

    /// `eps_i^k`, zero once `k >= c_i`.
    pub fn epsilon_power(&self, i: usize, k: u64) -> Vec<Fq> {
        self.element(&Word::vertex_power(i, k))
    }

    /// The arrow `a` of `Q°` as an element.
    pub fn arrow(&self, a: usize) -> Vec<Fq> {
        let (t, s) = self.quiver.rules.arrows[a];
        self.element(&Word {
            target: t,
            source: s,
            arrows: vec![a],
            exps: vec![0, 0],
        })
    }

    /// Basis indices of `e_i H e_j`, keyed by `(i, j)`; empty corners omitted.
    pub fn corner_bases(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, w) in self.words.iter().enumerate() {
            out.entry((w.target, w.source)).or_default().push(k);
        }
        out
    }
}

/// `T_B(W) -> H`, identity on generators, with `B = prod k[eps_i]/(eps_i^{c_i})`.
pub fn tensor_form_h(t: &CartanTriple, field: Arc<FieldSpec>) -> Result<TensorForm> {
    let h = build_h(t, field.clone());
    let data = tensor_data(&h.quiver, field, Fq::ZERO, "e");
    let tensor = Arc::new(build_tensor_algebra(&data)?);
    let ends = h.quiver.rules.arrows.clone();
    let map = map_from_generators(
        tensor.clone(),
        h.algebra.clone(),
        &ends,
        |v, k| h.epsilon_power(v, k),
        |a| h.arrow(a),
    );
    Ok(TensorForm {
        data,
        tensor_algebra: tensor,
        map,
    })
}
