//! Finite fields `F_{p^m}` with one fixed multiplicative generator, from which
//! every root of unity is taken.

mod crt;
mod linalg;
mod poly;

pub use crt::{
    crt_decompose, nilpotent_rebase, truncated_decomposition, truncated_mul, CrtDecomposition,
    LocalFactor, QuotientRing, Rebase, TruncatedDecomposition,
};
pub use linalg::Matrix;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Default seed for the randomized modulus and generator search.
pub const DEFAULT_SEED: u64 = 0x5EED_CA27;

/// Largest field order we are willing to tabulate.
const MAX_ORDER: u64 = 1 << 24;

/// An element of `F_{p^m}`, encoded as the integer whose base-`p` digits are
/// the coefficients of its polynomial residue (constant term first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn encoding(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `F_{p^m}` where `m` is the multiplicative order of `p` modulo the requested `N`.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    required_roots: u64,
    seed: u64,
    modulus: Vec<u32>,
    generator: Fq,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub order: u32,
    pub required_roots: u64,
    pub seed: u64,
    /// Coefficients of the monic modulus, constant term first.
    pub modulus: Vec<u32>,
    pub generator: u32,
}

/// Builds a field of characteristic `p` containing all `N`-th roots of unity.
pub fn make_field(p: u64, n: u64, seed: u64) -> Result<FieldSpec> {
    if !arith::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if n == 0 || arith::gcd(p, n) != 1 {
        return Err(Error::input(format!(
            "N = {n} must be positive and coprime to p = {p}"
        )));
    }
    let m = arith::multiplicative_order(p, n);
    let q = (p as u128).pow(m);
    if q > MAX_ORDER as u128 {
        return Err(Error::input(format!("field of order {p}^{m} is too large")));
    }
    let (p32, q32) = (p as u32, q as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ n);

    let modulus = loop {
        let mut f: Vec<u32> = (0..m).map(|_| rng.gen_range(0..p32)).collect();
        f.push(1);
        if poly::is_irreducible(&f, p32) {
            break f;
        }
    };

    let group_order = (q - 1) as u64;
    let factors = arith::prime_factors(group_order);
    let generator = loop {
        let cand = if q32 == 2 { 1 } else { rng.gen_range(1..q32) };
        let g = poly::decode(cand, p32, m);
        let is_generator = factors.iter().all(|&l| {
            let h = poly::powmod(&g, group_order / l, &modulus, p32);
            !poly::is_one(&h)
        });
        if is_generator {
            break cand;
        }
    };

    let mut exp = Vec::with_capacity(group_order as usize);
    let mut log = vec![u32::MAX; q32 as usize];
    let g = poly::decode(generator, p32, m);
    let mut cur = vec![1u32];
    for k in 0..group_order {
        let enc = poly::encode(&cur, p32);
        exp.push(enc);
        log[enc as usize] = k as u32;
        cur = poly::mulmod(&cur, &g, &modulus, p32);
    }
    debug_assert!(poly::is_one(&cur));

    Ok(FieldSpec {
        p: p32,
        m,
        q: q32,
        required_roots: n,
        seed,
        modulus,
        generator: Fq(generator),
        exp,
        log,
    })
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn params(&self) -> FieldParams {
        FieldParams {
            p: self.p,
            m: self.m,
            order: self.q,
            required_roots: self.required_roots,
            seed: self.seed,
            modulus: self.modulus.clone(),
            generator: self.generator.0,
        }
    }

    /// Image of an integer under `Z -> F_p -> F_{p^m}`.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Fq {
        assert!(coeffs.len() <= self.m as usize);
        Fq(poly::encode(coeffs, self.p))
    }

    pub fn coefficients(&self, x: Fq) -> Vec<u32> {
        poly::decode(x.0, self.p, self.m)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if self.m == 1 {
            return Fq((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        while x != 0 || y != 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        while x != 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let s =
            (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q as u64 - 1);
        Fq(self.exp[s as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize] as u64;
        let n = self.q as u64 - 1;
        Some(Fq(self.exp[((n - l) % n) as usize]))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let n = self.q as u64 - 1;
        let s = (self.log[a.0 as usize] as u128 * e as u128 % n as u128) as usize;
        Fq(self.exp[s])
    }

    /// `generator^((q-1)/n)`, a primitive `n`-th root of unity.
    pub fn root_of_unity(&self, n: u64) -> Result<Fq> {
        let group = self.q as u64 - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::input(format!("{n} does not divide {group}")));
        }
        Ok(Fq(self.exp[((group / n) % group) as usize]))
    }

    /// Every element, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_degrees() {
        assert_eq!(make_field(2, 3, DEFAULT_SEED).unwrap().degree(), 2);
        assert_eq!(make_field(2, 1, DEFAULT_SEED).unwrap().degree(), 1);
        assert_eq!(make_field(5, 12, DEFAULT_SEED).unwrap().degree(), 2);
        assert!(make_field(4, 3, DEFAULT_SEED).is_err());
        assert!(make_field(3, 6, DEFAULT_SEED).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for (p, n) in [(2, 3), (3, 8), (5, 12), (2, 15), (7, 1)] {
            let f = make_field(p, n, DEFAULT_SEED).unwrap();
            let q = f.order() as u64;
            assert_eq!(q, p.pow(f.degree()));
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
            }
            // Distributivity on a sample.
            let sample: Vec<Fq> = f.elements().step_by(((q / 7) as usize).max(1)).collect();
            for &a in &sample {
                for &b in &sample {
                    for &c in &sample {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_unity_are_primitive() {
        let f = make_field(2, 15, DEFAULT_SEED).unwrap();
        for n in [1u64, 3, 5, 15] {
            let z = f.root_of_unity(n).unwrap();
            assert_eq!(f.pow(z, n), Fq::ONE);
            for k in 1..n {
                assert_ne!(f.pow(z, k), Fq::ONE);
            }
        }
        assert_eq!(f.root_of_unity(1).unwrap(), Fq::ONE);
        assert!(f.root_of_unity(7).is_err());
    }

    #[test]
    fn cube_root_minimal_polynomial_over_f2() {
        let f = make_field(2, 3, DEFAULT_SEED).unwrap();
        let z = f.root_of_unity(3).unwrap();
        let v = f.add(f.add(f.mul(z, z), z), Fq::ONE);
        assert!(v.is_zero());
    }

    #[test]
    fn roots_from_one_generator_are_compatible() {
        // zeta_{a'}^{a'/g} = zeta_{b'}^{b'/g} for every pair of divisors.
        let f = make_field(5, 12, DEFAULT_SEED).unwrap();
        for a in [1u64, 2, 3, 4, 6, 12] {
            for b in [1u64, 2, 3, 4, 6, 12] {
                let g = crate::arith::gcd(a, b);
                let za = f.pow(f.root_of_unity(a).unwrap(), a / g);
                let zb = f.pow(f.root_of_unity(b).unwrap(), b / g);
                assert_eq!(za, zb);
            }
        }
    }

    #[test]
    fn seeded_search_is_reproducible() {
        let a = make_field(3, 20, 11).unwrap();
        let b = make_field(3, 20, 11).unwrap();
        assert_eq!(a.params(), b.params());
    }
}
