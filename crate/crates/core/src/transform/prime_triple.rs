//! `(C, D, Omega) -> (C', D', Omega')` for a characteristic `p` (or `p = 0`).

use serde::Serialize;

use crate::arith::{self, gcd};
use crate::cartan::{CartanMatrix, CartanTriple, Orientation, Symmetrizer};
use crate::error::{Error, Result};

/// `c_i = p^{r_i} d_i` with `gcd(p, d_i) = 1`; for `p = 0`, `r_i = 0` and `d_i = c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactoredSymmetrizer {
    pub p: u64,
    pub r: Vec<u32>,
    pub d: Vec<u64>,
}

impl PrimeFactoredSymmetrizer {
    pub fn new(sym: &Symmetrizer, p: u64) -> Self {
        let (r, d) = sym
            .diag()
            .iter()
            .map(|&c| arith::split_prime_power(c, p))
            .unzip();
        PrimeFactoredSymmetrizer { p, r, d }
    }

    pub fn p_power(&self, i: usize) -> u64 {
        arith::pow_u64(self.p, self.r[i])
    }

    /// `Sigma_ij`: pairs `(l_i, l_j)` with `l_i p^{r_i} = l_j p^{r_j} mod gcd(d_i, d_j)`.
    pub fn sigma(&self, i: usize, j: usize) -> Vec<(u64, u64)> {
        let g = gcd(self.d[i], self.d[j]);
        let (pi, pj) = (self.p_power(i) % g, self.p_power(j) % g);
        let mut out = Vec::new();
        for li in 0..self.d[i] {
            for lj in 0..self.d[j] {
                if (li % g) * pi % g == (lj % g) * pj % g {
                    out.push((li, lj));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeTriple {
    pub p: u64,
    pub factored: PrimeFactoredSymmetrizer,
    /// `M` in lexicographic order of `(i, l_i)`.
    pub index: Vec<(usize, u64)>,
    pub triple: CartanTriple,
}

impl PrimeTriple {
    pub fn position(&self, i: usize, l: u64) -> usize {
        let offset: u64 = self.factored.d[..i].iter().sum();
        (offset + l) as usize
    }

    pub fn label(&self, k: usize) -> String {
        let (i, l) = self.index[k];
        format!("({},{})", i + 1, l)
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if p == 0 || arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::input(format!("{p} is neither prime nor zero")))
    }
}

pub fn construct_prime_triple(t: &CartanTriple, p: u64) -> Result<PrimeTriple> {
    check_prime(p)?;
    let f = PrimeFactoredSymmetrizer::new(&t.d, p);
    let n = t.rank();
    let index: Vec<(usize, u64)> = (0..n)
        .flat_map(|i| (0..f.d[i]).map(move |l| (i, l)))
        .collect();
    let pos = |i: usize, l: u64| -> usize { (f.d[..i].iter().sum::<u64>() + l) as usize };
    let m = index.len();
    let mut entries = vec![vec![0i64; m]; m];
    for (k, row) in entries.iter_mut().enumerate() {
        row[k] = 2;
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || t.c.get(i, j) == 0 {
                continue;
            }
            let h = t.c.edge_multiplicity(i, j) as i64;
            let shift = f.r[j] - f.r[i].min(f.r[j]);
            let value = -h * arith::pow_u64(p, shift) as i64;
            for (li, lj) in f.sigma(i, j) {
                entries[pos(i, li)][pos(j, lj)] = value;
            }
        }
    }
    let d_prime: Vec<u64> = index.iter().map(|&(i, _)| f.p_power(i)).collect();
    let mut omega = Vec::new();
    for (i, j) in t.omega.pairs() {
        for (li, lj) in f.sigma(i, j) {
            omega.push((pos(i, li), pos(j, lj)));
        }
    }
    let triple = CartanTriple::new(
        CartanMatrix::new(entries)?,
        Symmetrizer::new(d_prime)?,
        Orientation::new(omega),
    )
    .map_err(|e| Error::TheoremViolation(format!("constructed triple is invalid: {e}")))?;
    Ok(PrimeTriple {
        p,
        factored: f,
        index,
        triple,
    })
}

/// `theta(e_i) = sum_l e_{(i, l)}`.
pub fn theta_embedding(pt: &PrimeTriple, x: &[i64]) -> Result<Vec<i64>> {
    if x.len() != pt.factored.d.len() {
        return Err(Error::input("vector length does not match the rank"));
    }
    Ok(pt.index.iter().map(|&(i, _)| x[i]).collect())
}
