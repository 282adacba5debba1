use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{sparse, StructureConstantAlgebra};
use crate::ffield::{Fq, Matrix};

/// A linear map given by the images of the source basis.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub source: Arc<StructureConstantAlgebra>,
    pub target: Arc<StructureConstantAlgebra>,
    columns: Vec<Vec<(usize, Fq)>>,
}

impl LinearMap {
    /// `images[i]` is the dense image of source basis element `i`.
    pub fn from_images(
        source: Arc<StructureConstantAlgebra>,
        target: Arc<StructureConstantAlgebra>,
        images: &[Vec<Fq>],
    ) -> Self {
        assert_eq!(images.len(), source.dim());
        let columns = images
            .iter()
            .map(|v| {
                assert_eq!(v.len(), target.dim());
                sparse(v)
            })
            .collect();
        LinearMap {
            source,
            target,
            columns,
        }
    }

    pub fn identity(alg: Arc<StructureConstantAlgebra>) -> Self {
        let images: Vec<Vec<Fq>> = (0..alg.dim()).map(|i| alg.basis_vector(i)).collect();
        Self::from_images(alg.clone(), alg, &images)
    }

    pub fn image_of_basis(&self, i: usize) -> &[(usize, Fq)] {
        &self.columns[i]
    }

    pub fn apply(&self, v: &[Fq]) -> Vec<Fq> {
        let f = self.target.field();
        let mut out = vec![Fq::ZERO; self.target.dim()];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(k, s) in &self.columns[i] {
                out[k] = f.add(out[k], f.mul(c, s));
            }
        }
        out
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.target.dim(), self.source.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i, j, v);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub unit_preserved: bool,
    /// First basis pair `(u, v)` with `f(uv) != f(u) f(v)`.
    pub failure: Option<(usize, usize)>,
}

impl HomCheck {
    pub fn passed(&self) -> bool {
        self.unit_preserved && self.failure.is_none()
    }
}

/// Exhaustive check of `f(1) = 1` and `f(uv) = f(u) f(v)` on all basis pairs.
pub fn is_algebra_homomorphism(map: &LinearMap) -> HomCheck {
    let src = &map.source;
    let tgt = &map.target;
    let unit_preserved = map.apply(src.unit()) == tgt.unit();
    let n = src.dim();
    let failure = (0..n).into_par_iter().find_map_first(|u| {
        for v in 0..n {
            let lhs = match src.basis_product(u, v) {
                None => vec![Fq::ZERO; tgt.dim()],
                Some((k, s)) => {
                    let f = tgt.field();
                    let mut out = vec![Fq::ZERO; tgt.dim()];
                    for &(i, c) in map.image_of_basis(k) {
                        out[i] = f.mul(s, c);
                    }
                    out
                }
            };
            let rhs = tgt.mul_sparse(map.image_of_basis(u), map.image_of_basis(v));
            if lhs != rhs {
                return Some((u, v));
            }
        }
        None
    });
    HomCheck {
        unit_preserved,
        failure,
    }
}

/// Exact rank equals both dimensions.
pub fn is_bijective(map: &LinearMap) -> bool {
    let (m, n) = (map.target.dim(), map.source.dim());
    m == n && map.matrix().rank(map.target.field()) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_algebra, truncated_polynomial_algebra};
    use crate::ffield::{make_field, DEFAULT_SEED};
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_and_zero() {
        let f = Arc::new(make_field(3, 1, DEFAULT_SEED).unwrap());
        let a = Arc::new(cyclic_group_algebra(f, 3));
        let id = LinearMap::identity(a.clone());
        assert!(is_algebra_homomorphism(&id).passed());
        assert!(is_bijective(&id));
        let zero = LinearMap::from_images(a.clone(), a.clone(), &vec![vec![Fq::ZERO; 3]; 3]);
        assert!(!is_bijective(&zero));
        assert!(!is_algebra_homomorphism(&zero).passed());
    }

    #[test]
    fn group_algebra_in_char_three_is_truncated() {
        // F_3[Z/3] = F_3[t]/(t^3) via t = g - 1.
        let f = Arc::new(make_field(3, 1, DEFAULT_SEED).unwrap());
        let trunc = Arc::new(truncated_polynomial_algebra(f.clone(), 3));
        let group = Arc::new(cyclic_group_algebra(f.clone(), 3));
        let t = {
            let mut v = group.basis_vector(1);
            v[0] = f.from_int(-1);
            v
        };
        let t2 = group.mul(&t, &t);
        let map = LinearMap::from_images(trunc, group, &[vec![Fq::ONE, Fq::ZERO, Fq::ZERO], t, t2]);
        assert!(is_algebra_homomorphism(&map).passed());
        assert!(is_bijective(&map));
    }

    #[test]
    fn random_matrix_is_not_a_homomorphism() {
        let f = Arc::new(make_field(5, 1, DEFAULT_SEED).unwrap());
        let a = Arc::new(truncated_polynomial_algebra(f.clone(), 4));
        let b = Arc::new(cyclic_group_algebra(f.clone(), 4));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let images: Vec<Vec<Fq>> = (0..4)
            .map(|_| (0..4).map(|_| f.from_int(rng.gen_range(0..5))).collect())
            .collect();
        let map = LinearMap::from_images(a, b, &images);
        assert!(is_algebra_homomorphism(&map).failure.is_some());
    }
}
