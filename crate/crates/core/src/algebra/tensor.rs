//! Tensor algebras `T_A(V)` over a product of cyclic local algebras
//! `k[t]/(t^c - lambda)`, with bimodule generators `t^{l} beta = beta s^{r}`.

use std::sync::Arc;

use super::{BasisLabel, LabelKind, StructureConstantAlgebra};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, Fq};
use crate::words::Word;

/// `k[t]/(t^dim - lambda)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    pub dim: usize,
    pub lambda: Fq,
}

/// A bimodule generator `beta` from `source` to `target`, subject to
/// `t_target^{left_step} beta = beta t_source^{right_step}`. Its bimodule has
/// basis `t^a beta s^b` with `b < right_step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleGenerator {
    pub target: usize,
    pub source: usize,
    pub left_step: usize,
    pub right_step: usize,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct GradedTensorData {
    pub field: Arc<FieldSpec>,
    pub base: Vec<LocalAlgebra>,
    pub generators: Vec<BimoduleGenerator>,
    pub vertex_symbol: String,
}

impl GradedTensorData {
    fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.target >= self.base.len() || g.source >= self.base.len() {
                return Err(Error::input(format!(
                    "generator {} has an unknown endpoint",
                    g.name
                )));
            }
            let (dt, ds) = (self.base[g.target].dim, self.base[g.source].dim);
            let balanced = g.left_step > 0
                && g.right_step > 0
                && dt % g.left_step == 0
                && ds % g.right_step == 0
                && dt / g.left_step == ds / g.right_step;
            if !balanced {
                return Err(Error::input(format!(
                    "generator {} is not balanced over a common subalgebra",
                    g.name
                )));
            }
        }
        Ok(())
    }

    /// Generator paths in written order, or an error if the support has a cycle.
    fn paths(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.base.len();
        let mut indeg = vec![0usize; n];
        for g in &self.generators {
            indeg[g.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for g in self.generators.iter().filter(|g| g.source == v) {
                indeg[g.target] -= 1;
                if indeg[g.target] == 0 {
                    ready.push(g.target);
                }
            }
        }
        if seen < n {
            return Err(Error::NotFiniteDimensional(
                "the bimodule support contains an oriented cycle".into(),
            ));
        }
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.generators.len()).map(|g| vec![g]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let t = self.generators[p[0]].target;
                for (gi, g) in self.generators.iter().enumerate() {
                    if g.source == t {
                        let mut q = vec![gi];
                        q.extend_from_slice(p);
                        next.push(q);
                    }
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn render(&self, w: &Word) -> String {
        let s = &self.vertex_symbol;
        let mut out = format!("{s}{}^{}", w.target + 1, w.exps[0]);
        for (k, &g) in w.arrows.iter().enumerate() {
            let gen = &self.generators[g];
            out.push_str(&format!(" (x) {}", gen.name));
            if w.exps[k + 1] > 0 {
                out.push_str(&format!(" {s}{}^{}", gen.source + 1, w.exps[k + 1]));
            }
        }
        out
    }

    /// Normal form of the product of two basis tensors with its coefficient.
    fn multiply(&self, g: &Word, f: &Word) -> Option<(Word, Fq)> {
        if g.source != f.target {
            return None;
        }
        let field = &*self.field;
        let mut arrows = g.arrows.clone();
        arrows.extend_from_slice(&f.arrows);
        let mut exps = g.exps.clone();
        let join = exps.len() - 1;
        exps[join] += f.exps[0];
        exps.extend_from_slice(&f.exps[1..]);
        // Move each slot's overflow leftward through its generator.
        for k in (1..=join).rev() {
            let gen = &self.generators[arrows[k - 1]];
            let r = gen.right_step as u64;
            if exps[k] >= r {
                exps[k - 1] += (exps[k] / r) * gen.left_step as u64;
                exps[k] %= r;
            }
        }
        let local = self.base[g.target];
        let wraps = exps[0] / local.dim as u64;
        exps[0] %= local.dim as u64;
        let coeff = field.pow(local.lambda, wraps);
        if coeff.is_zero() {
            return None;
        }
        Some((
            Word {
                target: g.target,
                source: f.source,
                arrows,
                exps,
            },
            coeff,
        ))
    }
}

/// Basis: `t^a`, then `t^a beta_n s^{b_n} ... beta_1 s^{b_1}` per generator path.
pub fn build_tensor_algebra(data: &GradedTensorData) -> Result<StructureConstantAlgebra> {
    data.validate()?;
    let paths = data.paths()?;
    let mut words = Vec::new();
    for (v, local) in data.base.iter().enumerate() {
        words.extend((0..local.dim as u64).map(|a| Word::vertex_power(v, a)));
    }
    for path in &paths {
        let target = data.generators[path[0]].target;
        let source = data.generators[*path.last().unwrap()].source;
        let mut bounds = vec![data.base[target].dim as u64];
        bounds.extend(path.iter().map(|&g| data.generators[g].right_step as u64));
        let total: u64 = bounds.iter().product();
        for mut code in 0..total {
            let mut exps = vec![0u64; bounds.len()];
            for k in (0..bounds.len()).rev() {
                exps[k] = code % bounds[k];
                code /= bounds[k];
            }
            words.push(Word {
                target,
                source,
                arrows: path.clone(),
                exps,
            });
        }
    }
    let index: std::collections::HashMap<Word, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let labels: Vec<BasisLabel> = words
        .iter()
        .map(|w| BasisLabel::word(LabelKind::Tensor, w.clone(), data.render(w)))
        .collect();
    let mut unit = vec![Fq::ZERO; words.len()];
    for v in 0..data.base.len() {
        unit[index[&Word::vertex_power(v, 0)]] = Fq::ONE;
    }
    StructureConstantAlgebra::from_rule(data.field.clone(), labels, unit, |i, j| {
        let (w, c) = data.multiply(&words[i], &words[j])?;
        Some((index[&w], c))
    })
}
