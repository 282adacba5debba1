//! Finite-dimensional algebras given by monomial structure constants.

mod map;
mod tensor;

pub use map::{is_algebra_homomorphism, is_bijective, HomCheck, LinearMap};
pub use tensor::{build_tensor_algebra, BimoduleGenerator, GradedTensorData, LocalAlgebra};

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{FieldParams, FieldSpec, Fq};
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LabelKind {
    Morphism,
    Monomial,
    Tensor,
    Element,
}

/// A basis label remembering where the basis element came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisLabel {
    pub kind: LabelKind,
    pub word: Option<Word>,
    pub text: String,
}

impl BasisLabel {
    pub fn element(text: impl Into<String>) -> Self {
        BasisLabel {
            kind: LabelKind::Element,
            word: None,
            text: text.into(),
        }
    }

    pub fn word(kind: LabelKind, word: Word, text: String) -> Self {
        BasisLabel {
            kind,
            word: Some(word),
            text,
        }
    }
}

/// `u * v` for basis elements: zero or a scalar multiple of one basis element.
pub type Product = Option<(usize, Fq)>;

/// An associative algebra with a basis whose pairwise products are monomial.
#[derive(Clone, Debug)]
pub struct StructureConstantAlgebra {
    field: Arc<FieldSpec>,
    labels: Vec<BasisLabel>,
    table: Vec<Product>,
    unit: Vec<Fq>,
}

impl StructureConstantAlgebra {
    pub fn new(
        field: Arc<FieldSpec>,
        labels: Vec<BasisLabel>,
        table: Vec<Product>,
        unit: Vec<Fq>,
    ) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n || unit.len() != n {
            return Err(Error::input("structure constant table has the wrong size"));
        }
        if table.iter().flatten().any(|&(k, _)| k >= n) {
            return Err(Error::input("structure constant points outside the basis"));
        }
        Ok(StructureConstantAlgebra {
            field,
            labels,
            table,
            unit,
        })
    }

    /// Builds the table from a product rule on basis indices.
    pub fn from_rule<F>(
        field: Arc<FieldSpec>,
        labels: Vec<BasisLabel>,
        unit: Vec<Fq>,
        rule: F,
    ) -> Result<Self>
    where
        F: Fn(usize, usize) -> Product + Sync,
    {
        let n = labels.len();
        let table: Vec<Product> = (0..n * n)
            .into_par_iter()
            .map(|k| rule(k / n, k % n))
            .collect();
        Self::new(field, labels, table, unit)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &BasisLabel {
        &self.labels[i]
    }

    pub fn label_index(&self) -> HashMap<&BasisLabel, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect()
    }

    pub fn unit(&self) -> &[Fq] {
        &self.unit
    }

    pub fn table(&self) -> &[Product] {
        &self.table
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Product {
        self.table[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Fq> {
        let mut v = vec![Fq::ZERO; self.dim()];
        v[i] = Fq::ONE;
        v
    }

    /// Replaces one structure constant; meant for negative controls.
    pub fn with_entry(&self, i: usize, j: usize, value: Product) -> Self {
        let mut out = self.clone();
        let n = self.dim();
        out.table[i * n + j] = value;
        out
    }

    pub fn mul(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let f = &*self.field;
        let mut out = vec![Fq::ZERO; self.dim()];
        let ys: Vec<(usize, Fq)> = y
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (j, c))
            .collect();
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &ys {
                if let Some((k, s)) = self.basis_product(i, j) {
                    out[k] = f.add(out[k], f.mul(s, f.mul(a, b)));
                }
            }
        }
        out
    }

    /// Sparse product, used by the exhaustive homomorphism check.
    pub fn mul_sparse(&self, x: &[(usize, Fq)], y: &[(usize, Fq)]) -> Vec<Fq> {
        let f = &*self.field;
        let mut out = vec![Fq::ZERO; self.dim()];
        for &(i, a) in x {
            for &(j, b) in y {
                if let Some((k, s)) = self.basis_product(i, j) {
                    out[k] = f.add(out[k], f.mul(s, f.mul(a, b)));
                }
            }
        }
        out
    }

    fn times_basis(&self, i: usize, p: Product) -> Product {
        let (j, s) = p?;
        let (k, t) = self.basis_product(i, j)?;
        Some((k, self.field.mul(s, t)))
    }

    fn basis_times(&self, p: Product, j: usize) -> Product {
        let (i, s) = p?;
        let (k, t) = self.basis_product(i, j)?;
        Some((k, self.field.mul(s, t)))
    }

    /// First basis triple `(u, v, w)` with `(uv)w != u(vw)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        (0..n).into_par_iter().find_map_first(|u| {
            for v in 0..n {
                let uv = self.basis_product(u, v);
                for w in 0..n {
                    let left = self.basis_times(uv, w);
                    let right = self.times_basis(u, self.basis_product(v, w));
                    if normalize(left) != normalize(right) {
                        return Some((u, v, w));
                    }
                }
            }
            None
        })
    }

    pub fn check_associativity(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Two-sided identity on every basis element.
    pub fn check_unit(&self) -> bool {
        (0..self.dim()).into_par_iter().all(|i| {
            let b = self.basis_vector(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    /// `eAe` for an idempotent `e` whose corner is spanned by basis elements.
    pub fn idempotent_corner(&self, e: &[Fq]) -> Result<StructureConstantAlgebra> {
        if e.len() != self.dim() || self.mul(e, e) != e {
            return Err(Error::input("element is not idempotent"));
        }
        let mut kept = Vec::new();
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            let ebe = self.mul(&self.mul(e, &b), e);
            if ebe == b {
                kept.push(i);
            } else if ebe.iter().any(|c| !c.is_zero()) {
                return Err(Error::input(format!(
                    "corner is not spanned by basis elements (at {})",
                    self.labels[i].text
                )));
            }
        }
        let position: HashMap<usize, usize> =
            kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut unit = vec![Fq::ZERO; kept.len()];
        for (i, &c) in e.iter().enumerate() {
            if !c.is_zero() {
                unit[position[&i]] = c;
            }
        }
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let mut table = Vec::with_capacity(kept.len() * kept.len());
        for &i in &kept {
            for &j in &kept {
                table.push(self.basis_product(i, j).map(|(k, s)| (position[&k], s)));
            }
        }
        StructureConstantAlgebra::new(self.field.clone(), labels, table, unit)
    }

    pub fn dump(&self) -> AlgebraDump {
        let n = self.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some((k, s)) = self.basis_product(i, j) {
                    products.push(ProductEntry {
                        left: i,
                        right: j,
                        result: k,
                        coefficient: s.encoding(),
                    });
                }
            }
        }
        AlgebraDump {
            field: self.field.params(),
            dim: n,
            basis: self.labels.iter().map(|l| l.text.clone()).collect(),
            unit: sparse(&self.unit)
                .into_iter()
                .map(|(i, c)| (i, c.encoding()))
                .collect(),
            products,
        }
    }
}

fn normalize(p: Product) -> Product {
    p.filter(|(_, s)| !s.is_zero())
}

pub(crate) fn sparse(v: &[Fq]) -> Vec<(usize, Fq)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i, c))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub coefficient: u32,
}

/// Serializable form of an algebra; coefficients use the field element encoding.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDump {
    pub field: FieldParams,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<(usize, u32)>,
    pub products: Vec<ProductEntry>,
}

/// The group algebra of `Z/n`, basis `g^0 .. g^{n-1}`.
pub fn cyclic_group_algebra(field: Arc<FieldSpec>, n: usize) -> StructureConstantAlgebra {
    let labels = (0..n)
        .map(|k| BasisLabel::element(format!("g^{k}")))
        .collect();
    let mut unit = vec![Fq::ZERO; n];
    unit[0] = Fq::ONE;
    StructureConstantAlgebra::from_rule(field, labels, unit, |i, j| Some(((i + j) % n, Fq::ONE)))
        .expect("well-formed table")
}

/// `k[t]/(t^n)`, basis `t^0 .. t^{n-1}`.
pub fn truncated_polynomial_algebra(field: Arc<FieldSpec>, n: usize) -> StructureConstantAlgebra {
    let labels = (0..n)
        .map(|k| BasisLabel::element(format!("t^{k}")))
        .collect();
    let mut unit = vec![Fq::ZERO; n];
    unit[0] = Fq::ONE;
    StructureConstantAlgebra::from_rule(field, labels, unit, |i, j| {
        (i + j < n).then_some((i + j, Fq::ONE))
    })
    .expect("well-formed table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, DEFAULT_SEED};

    fn field() -> Arc<FieldSpec> {
        Arc::new(make_field(2, 3, DEFAULT_SEED).unwrap())
    }

    #[test]
    fn group_algebra_checks() {
        let a = cyclic_group_algebra(field(), 3);
        assert!(a.check_associativity());
        assert!(a.check_unit());
    }

    #[test]
    fn corrupted_entry_breaks_associativity() {
        let a = cyclic_group_algebra(field(), 3);
        let bad = a.with_entry(1, 1, Some((0, Fq::ONE)));
        assert!(!bad.check_associativity());
    }

    #[test]
    fn corners() {
        let a = truncated_polynomial_algebra(field(), 4);
        let whole = a.idempotent_corner(a.unit()).unwrap();
        assert_eq!(whole.dim(), 4);
        let t = a.basis_vector(1);
        assert!(a.idempotent_corner(&t).is_err());
    }
}
