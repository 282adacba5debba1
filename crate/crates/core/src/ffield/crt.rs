//! `k[x]/(x^a - 1)` and its splitting into local factors
//! `k[x]/(x - zeta^i)^{p^r}`, plus the rebasing onto `k[e]/(e^{p^r})`.

use super::{FieldSpec, Fq, Matrix};
use crate::arith;
use crate::error::{Error, Result};

/// `k[x]/(x^a - 1)` with `a = p^r a'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    pub a: usize,
    pub r: u32,
    pub p_power: usize,
    pub a_prime: usize,
}

impl QuotientRing {
    pub fn new(a: usize, p: u32) -> Self {
        assert!(a > 0);
        let (r, a_prime) = arith::split_prime_power(a as u64, p as u64);
        QuotientRing {
            a,
            r,
            p_power: a / a_prime as usize,
            a_prime: a_prime as usize,
        }
    }

    pub fn monomial(&self, k: usize) -> Vec<Fq> {
        let mut v = vec![Fq::ZERO; self.a];
        v[k % self.a] = Fq::ONE;
        v
    }

    pub fn mul(&self, f: &FieldSpec, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; self.a];
        for (i, &u) in x.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                if !v.is_zero() {
                    let k = (i + j) % self.a;
                    out[k] = f.add(out[k], f.mul(u, v));
                }
            }
        }
        out
    }
}

/// The factor `k[x]/(x - center)^exponent`, elements in the basis `(x - center)^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub index: usize,
    pub center: Fq,
    pub exponent: usize,
}

impl LocalFactor {
    pub fn mul(&self, f: &FieldSpec, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        truncated_mul(f, x, y, self.exponent)
    }

    /// Coordinates of `x^k` in the shifted basis.
    pub fn power_of_x(&self, f: &FieldSpec, k: usize) -> Vec<Fq> {
        let mut v = vec![Fq::ZERO; self.exponent];
        v[0] = Fq::ONE;
        for _ in 0..k {
            v = self.times_x(f, &v);
        }
        v
    }

    /// Multiplication by `x = u + center` where `u` is the shifted variable.
    pub fn times_x(&self, f: &FieldSpec, v: &[Fq]) -> Vec<Fq> {
        let mut out: Vec<Fq> = v.iter().map(|&c| f.mul(c, self.center)).collect();
        for s in 1..self.exponent {
            out[s] = f.add(out[s], v[s - 1]);
        }
        out
    }
}

/// Product in `k[t]/(t^e)`.
pub fn truncated_mul(f: &FieldSpec, x: &[Fq], y: &[Fq], e: usize) -> Vec<Fq> {
    let mut out = vec![Fq::ZERO; e];
    for (i, &u) in x.iter().enumerate().take(e) {
        if u.is_zero() {
            continue;
        }
        for (j, &v) in y.iter().enumerate().take(e - i) {
            if !v.is_zero() {
                out[i + j] = f.add(out[i + j], f.mul(u, v));
            }
        }
    }
    out
}

/// `pi_A` and its inverse; local factor `i` occupies coordinates
/// `i * p^r .. (i + 1) * p^r`.
#[derive(Clone, Debug)]
pub struct CrtDecomposition {
    pub ring: QuotientRing,
    pub factors: Vec<LocalFactor>,
    pub forward: Matrix,
    pub inverse: Matrix,
}

pub fn crt_decompose(f: &FieldSpec, a: usize) -> Result<CrtDecomposition> {
    let ring = QuotientRing::new(a, f.characteristic());
    let zeta = f.root_of_unity(ring.a_prime as u64)?;
    let e = ring.p_power;
    let factors: Vec<LocalFactor> = (0..ring.a_prime)
        .map(|i| LocalFactor {
            index: i,
            center: f.pow(zeta, i as u64),
            exponent: e,
        })
        .collect();

    let mut forward = Matrix::zeros(a, a);
    let mut locals: Vec<Vec<Fq>> = factors.iter().map(|lf| lf.power_of_x(f, 0)).collect();
    for k in 0..a {
        for (i, lf) in factors.iter().enumerate() {
            for s in 0..e {
                forward.set(i * e + s, k, locals[i][s]);
            }
            locals[i] = lf.times_x(f, &locals[i]);
        }
    }
    let inverse = forward
        .inverse(f)
        .ok_or_else(|| Error::TheoremViolation(format!("CRT matrix for a = {a} is singular")))?;
    Ok(CrtDecomposition {
        ring,
        factors,
        forward,
        inverse,
    })
}

/// `theta` sends `e^t` to `(x^{a'} - 1)^t`; both directions as matrices in
/// the shifted basis of the local factor.
#[derive(Clone, Debug)]
pub struct Rebase {
    pub theta: Matrix,
    pub theta_inv: Matrix,
}

pub fn nilpotent_rebase(f: &FieldSpec, lf: &LocalFactor, a_prime: usize) -> Rebase {
    let e = lf.exponent;
    let mut u = lf.power_of_x(f, a_prime);
    u[0] = f.sub(u[0], Fq::ONE);
    let mut columns = Vec::with_capacity(e);
    let mut cur = vec![Fq::ZERO; e];
    cur[0] = Fq::ONE;
    for _ in 0..e {
        columns.push(cur.clone());
        cur = truncated_mul(f, &cur, &u, e);
    }
    let theta = Matrix::from_columns(e, &columns);
    let theta_inv = theta
        .inverse(f)
        .expect("x^a' - 1 has valuation one at every a'-th root of unity");
    Rebase { theta, theta_inv }
}

/// `(prod theta_i)^{-1} o pi_A`: `k[x]/(x^a - 1)` onto `prod_i k[e_i]/(e_i^{p^r})`.
#[derive(Clone, Debug)]
pub struct TruncatedDecomposition {
    pub crt: CrtDecomposition,
    pub rebases: Vec<Rebase>,
    pub to_local: Matrix,
    pub from_local: Matrix,
}

impl TruncatedDecomposition {
    pub fn factor_count(&self) -> usize {
        self.crt.factors.len()
    }

    pub fn local_dim(&self) -> usize {
        self.crt.ring.p_power
    }

    /// Component `i` of the image of `x^k`, in the basis `e_i^t`.
    pub fn component_of_power(&self, k: usize, i: usize) -> Vec<Fq> {
        let e = self.local_dim();
        let col = k % self.crt.ring.a;
        (0..e).map(|t| self.to_local.get(i * e + t, col)).collect()
    }
}

pub fn truncated_decomposition(f: &FieldSpec, a: usize) -> Result<TruncatedDecomposition> {
    let crt = crt_decompose(f, a)?;
    let e = crt.ring.p_power;
    let rebases: Vec<Rebase> = crt
        .factors
        .iter()
        .map(|lf| nilpotent_rebase(f, lf, crt.ring.a_prime))
        .collect();
    let mut block_inv = Matrix::zeros(a, a);
    let mut block = Matrix::zeros(a, a);
    for (i, rb) in rebases.iter().enumerate() {
        for s in 0..e {
            for t in 0..e {
                block_inv.set(i * e + s, i * e + t, rb.theta_inv.get(s, t));
                block.set(i * e + s, i * e + t, rb.theta.get(s, t));
            }
        }
    }
    let to_local = block_inv.mul(&crt.forward, f);
    let from_local = crt.inverse.mul(&block, f);
    Ok(TruncatedDecomposition {
        crt,
        rebases,
        to_local,
        from_local,
    })
}
