//! `A (x)_C B -> (+)_{(i,j) in Sigma} A'_i (x)_{C'} B'_j` for
//! `A = k[x]/(x^a - 1)`, `B = k[y]/(y^b - 1)`, `C = k[z]/(z^{gcd(a,b)} - 1)`.

use serde::Serialize;

use crate::arith::{gcd, pow_u64};
use crate::error::Result;
use crate::ffield::{
    crt_decompose, truncated_decomposition, truncated_mul, CrtDecomposition, FieldSpec, Fq,
    LocalFactor, Matrix, TruncatedDecomposition,
};

/// `Sigma(l)`, `Sigma'(l)` and `Sigma` for a pair `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaSets {
    pub odd_gcd: usize,
    pub sigma_l: Vec<Vec<usize>>,
    pub sigma_prime_l: Vec<Vec<usize>>,
    pub sigma: Vec<(usize, usize)>,
}

pub fn sigma_sets(a: usize, b: usize, p: u64) -> SigmaSets {
    let (r, a_odd) = crate::arith::split_prime_power(a as u64, p);
    let (s, b_odd) = crate::arith::split_prime_power(b as u64, p);
    let g = gcd(a_odd, b_odd);
    let pm = pow_u64(p, r.min(s)) % g;
    let pr = pow_u64(p, r) % g;
    let ps = pow_u64(p, s) % g;
    let classes = |odd: u64, pw: u64| -> Vec<Vec<usize>> {
        (0..g)
            .map(|l| {
                (0..odd)
                    .filter(|m| m % g * pw % g == l * pm % g)
                    .map(|m| m as usize)
                    .collect()
            })
            .collect()
    };
    let sigma_l = classes(a_odd, pr);
    let sigma_prime_l = classes(b_odd, ps);
    let mut sigma: Vec<(usize, usize)> = Vec::new();
    for l in 0..g as usize {
        for &i in &sigma_l[l] {
            for &j in &sigma_prime_l[l] {
                sigma.push((i, j));
            }
        }
    }
    sigma.sort_unstable();
    SigmaSets {
        odd_gcd: g as usize,
        sigma_l,
        sigma_prime_l,
        sigma,
    }
}

impl SigmaSets {
    /// The `Sigma(l)` and `Sigma'(l)` partition `0..a'` and `0..b'`, and
    /// `Sigma` agrees with the congruence `i p^r = j p^s mod gcd(a', b')`.
    pub fn is_consistent(&self, a: usize, b: usize, p: u64) -> bool {
        let (r, a_odd) = crate::arith::split_prime_power(a as u64, p);
        let (s, b_odd) = crate::arith::split_prime_power(b as u64, p);
        let partition = |sets: &[Vec<usize>], n: u64| {
            let mut all: Vec<usize> = sets.iter().flatten().copied().collect();
            all.sort_unstable();
            all == (0..n as usize).collect::<Vec<_>>()
        };
        let g = self.odd_gcd as u64;
        let (pr, ps) = (pow_u64(p, r) % g, pow_u64(p, s) % g);
        let mut direct = Vec::new();
        for i in 0..a_odd {
            for j in 0..b_odd {
                if i % g * pr % g == j % g * ps % g {
                    direct.push((i as usize, j as usize));
                }
            }
        }
        partition(&self.sigma_l, a_odd)
            && partition(&self.sigma_prime_l, b_odd)
            && direct == self.sigma
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionChecks {
    pub sigma_consistent: bool,
    pub dimension_formula: bool,
    pub balanced: bool,
    pub bijective: bool,
    pub left_linear: bool,
    pub right_linear: bool,
    pub nilpotency_lemma: bool,
    pub first_diagram: bool,
    pub second_diagram: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.sigma_consistent
            && self.dimension_formula
            && self.balanced
            && self.bijective
            && self.left_linear
            && self.right_linear
            && self.nilpotency_lemma
            && self.first_diagram
            && self.second_diagram
    }
}

/// The isomorphism as a matrix from the basis `x^alpha (x) y^beta`
/// (`beta < b / gcd(a, b)`) to the basis `eps_i^u (x) eta_j^v` of each summand
/// (`v < p^{s - min(r, s)}`).
#[derive(Clone, Debug)]
pub struct BimoduleDecomposition {
    pub a: usize,
    pub b: usize,
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub sigma: SigmaSets,
    pub source_basis: Vec<(usize, usize)>,
    pub target_basis: Vec<(usize, usize, usize)>,
    pub matrix: Matrix,
    pub a_side: TruncatedDecomposition,
    pub b_side: TruncatedDecomposition,
    pub checks: DecompositionChecks,
}

impl BimoduleDecomposition {
    fn g(&self) -> usize {
        gcd(self.a as u64, self.b as u64) as usize
    }

    fn local_a(&self) -> usize {
        self.a_side.local_dim()
    }

    fn local_b(&self) -> usize {
        self.b_side.local_dim()
    }

    /// `p^{s - min(r, s)}`: the `eta` bound in each summand.
    fn right_bound(&self) -> usize {
        pow_u64(self.p, self.s - self.r.min(self.s)) as usize
    }

    /// `p^{r - min(r, s)}`: what one overflow of `eta` adds to `eps`.
    fn left_carry(&self) -> usize {
        pow_u64(self.p, self.r - self.r.min(self.s)) as usize
    }

    pub fn target_index(&self, k: usize, u: usize, v: usize) -> usize {
        (k * self.local_a() + u) * self.right_bound() + v
    }

    pub fn source_index(&self, alpha: usize, beta: usize) -> usize {
        alpha * (self.b / self.g()) + beta
    }

    /// Adds `c eps^u (x) eta^v` to `out` after moving `eta` overflow across `C'`.
    fn add_term(&self, f: &FieldSpec, out: &mut [Fq], k: usize, u: usize, v: usize, c: Fq) {
        let bound = self.right_bound();
        let u = u + (v / bound) * self.left_carry();
        if u < self.local_a() {
            let idx = self.target_index(k, u, v % bound);
            out[idx] = f.add(out[idx], c);
        }
    }

    /// Image of `x^alpha (x) y^beta` for arbitrary exponents.
    pub fn image(&self, f: &FieldSpec, alpha: usize, beta: usize) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; self.target_basis.len()];
        for (k, &(i, j)) in self.sigma.sigma.iter().enumerate() {
            let xs = self.a_side.component_of_power(alpha, i);
            let ys = self.b_side.component_of_power(beta, j);
            for (u, &cu) in xs.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                for (v, &cv) in ys.iter().enumerate() {
                    if !cv.is_zero() {
                        self.add_term(f, &mut out, k, u, v, f.mul(cu, cv));
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `x`, transported to the target.
    pub fn act_left(&self, f: &FieldSpec, w: &[Fq]) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; w.len()];
        for (idx, &c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (k, u, v) = self.target_basis[idx];
            let xi = self.a_side.component_of_power(1, self.sigma.sigma[k].0);
            let mut mono = vec![Fq::ZERO; self.local_a()];
            mono[u] = Fq::ONE;
            for (t, &ct) in truncated_mul(f, &xi, &mono, self.local_a())
                .iter()
                .enumerate()
            {
                if !ct.is_zero() {
                    self.add_term(f, &mut out, k, t, v, f.mul(c, ct));
                }
            }
        }
        out
    }

    /// Right multiplication by `y`, transported to the target.
    pub fn act_right(&self, f: &FieldSpec, w: &[Fq]) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; w.len()];
        for (idx, &c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (k, u, v) = self.target_basis[idx];
            let yj = self.b_side.component_of_power(1, self.sigma.sigma[k].1);
            let mut mono = vec![Fq::ZERO; self.local_b()];
            mono[v] = Fq::ONE;
            for (t, &ct) in truncated_mul(f, &yj, &mono, self.local_b())
                .iter()
                .enumerate()
            {
                if !ct.is_zero() {
                    self.add_term(f, &mut out, k, u, t, f.mul(c, ct));
                }
            }
        }
        out
    }

    fn source_times_x(&self, alpha: usize, beta: usize) -> (usize, usize) {
        ((alpha + 1) % self.a, beta)
    }

    fn source_times_y(&self, alpha: usize, beta: usize) -> (usize, usize) {
        let bound = self.b / self.g();
        if beta + 1 < bound {
            (alpha, beta + 1)
        } else {
            ((alpha + self.a / self.g()) % self.a, 0)
        }
    }
}

pub fn bimodule_decomposition(f: &FieldSpec, a: usize, b: usize) -> Result<BimoduleDecomposition> {
    let p = f.characteristic() as u64;
    let a_side = truncated_decomposition(f, a)?;
    let b_side = truncated_decomposition(f, b)?;
    let (r, s) = (a_side.crt.ring.r, b_side.crt.ring.r);
    let sigma = sigma_sets(a, b, p);
    let g = gcd(a as u64, b as u64) as usize;
    let source_basis: Vec<(usize, usize)> = (0..a)
        .flat_map(|x| (0..b / g).map(move |y| (x, y)))
        .collect();
    let right_bound = pow_u64(p, s - r.min(s)) as usize;
    let local_a = a_side.local_dim();
    let target_basis: Vec<(usize, usize, usize)> = (0..sigma.sigma.len())
        .flat_map(|k| (0..local_a).flat_map(move |u| (0..right_bound).map(move |v| (k, u, v))))
        .collect();
    let mut dec = BimoduleDecomposition {
        a,
        b,
        p,
        r,
        s,
        sigma,
        source_basis,
        target_basis,
        matrix: Matrix::zeros(0, 0),
        a_side,
        b_side,
        checks: DecompositionChecks::default(),
    };
    let columns: Vec<Vec<Fq>> = dec
        .source_basis
        .iter()
        .map(|&(x, y)| dec.image(f, x, y))
        .collect();
    dec.matrix = Matrix::from_columns(dec.target_basis.len(), &columns);

    let mut checks = DecompositionChecks {
        sigma_consistent: dec.sigma.is_consistent(a, b, p),
        ..Default::default()
    };
    let summand = pow_u64(p, r) * pow_u64(p, s) / pow_u64(p, r.min(s));
    checks.dimension_formula = (a * b / g) as u64 == dec.sigma.sigma.len() as u64 * summand
        && dec.target_basis.len() == dec.source_basis.len();
    checks.balanced =
        (0..a).all(|x| (0..b).all(|y| dec.image(f, x + a / g, y) == dec.image(f, x, y + b / g)));
    checks.bijective =
        dec.matrix.rows() == dec.matrix.cols() && dec.matrix.rank(f) == dec.matrix.cols();
    checks.left_linear = dec.source_basis.iter().enumerate().all(|(k, &(x, y))| {
        let (x2, y2) = dec.source_times_x(x, y);
        dec.matrix.column(dec.source_index(x2, y2)) == dec.act_left(f, &columns[k])
    });
    checks.right_linear = dec.source_basis.iter().enumerate().all(|(k, &(x, y))| {
        let (x2, y2) = dec.source_times_y(x, y);
        dec.matrix.column(dec.source_index(x2, y2)) == dec.act_right(f, &columns[k])
    });
    let c_side = crt_decompose(f, g)?;
    checks.nilpotency_lemma = nilpotency_lemma(f, &dec, &c_side);
    checks.first_diagram = first_diagram(f, &dec, &c_side);
    checks.second_diagram = second_diagram(f, &dec, &c_side);
    dec.checks = checks;
    Ok(dec)
}

/// `sum_s c_s (X - center)^s` evaluated inside a local factor of `A`.
fn evaluate_shifted(
    f: &FieldSpec,
    coeffs: &[Fq],
    center: Fq,
    target: &LocalFactor,
    x_power: usize,
) -> Vec<Fq> {
    let e = target.exponent;
    let mut base = target.power_of_x(f, x_power);
    base[0] = f.sub(base[0], center);
    let mut out = vec![Fq::ZERO; e];
    let mut cur = vec![Fq::ZERO; e];
    cur[0] = Fq::ONE;
    for &c in coeffs {
        for t in 0..e {
            out[t] = f.add(out[t], f.mul(c, cur[t]));
        }
        cur = truncated_mul(f, &cur, &base, e);
    }
    out
}

/// `(x^{a/g} - zeta^l)^{p^{min(r, s)}} = 0` in every `A_m`, `m in Sigma(l)`,
/// and the same on the `B` side.
fn nilpotency_lemma(f: &FieldSpec, dec: &BimoduleDecomposition, c: &CrtDecomposition) -> bool {
    let g = dec.g();
    let pm = pow_u64(dec.p, dec.r.min(dec.s)) as usize;
    let side = |t: &TruncatedDecomposition, sets: &[Vec<usize>], step: usize| {
        sets.iter().enumerate().all(|(l, ms)| {
            let zeta_l = c.factors[l].center;
            ms.iter().all(|&m| {
                let lf = &t.crt.factors[m];
                let mut coeffs = vec![Fq::ZERO; pm + 1];
                coeffs[pm] = Fq::ONE;
                evaluate_shifted(f, &coeffs, zeta_l, lf, step)
                    .iter()
                    .all(|v| v.is_zero())
            })
        })
    };
    side(&dec.a_side, &dec.sigma.sigma_l, dec.a / g)
        && side(&dec.b_side, &dec.sigma.sigma_prime_l, dec.b / g)
}

/// `pi_A o iota_1 = (phi_l) o pi_C` and `pi_B o iota_2 = (psi_l) o pi_C` on `z^k`.
fn first_diagram(f: &FieldSpec, dec: &BimoduleDecomposition, c: &CrtDecomposition) -> bool {
    let g = dec.g();
    let ec = c.ring.p_power;
    let side = |t: &TruncatedDecomposition, sets: &[Vec<usize>], step: usize| {
        let e = t.crt.ring.p_power;
        (0..g).all(|k| {
            let zc = c.forward.column(k);
            let direct = t.crt.forward.column((k * step) % t.crt.ring.a);
            sets.iter().enumerate().all(|(l, ms)| {
                let coeffs = &zc[l * ec..(l + 1) * ec];
                ms.iter().all(|&m| {
                    let via =
                        evaluate_shifted(f, coeffs, c.factors[l].center, &t.crt.factors[m], step);
                    via == direct[m * e..(m + 1) * e]
                })
            })
        })
    };
    side(&dec.a_side, &dec.sigma.sigma_l, dec.a / g)
        && side(&dec.b_side, &dec.sigma.sigma_prime_l, dec.b / g)
}

/// `theta_i o phi'_i = p_i o phi_l o gamma_l` and the `B` analogue on `omega^t`.
fn second_diagram(f: &FieldSpec, dec: &BimoduleDecomposition, c: &CrtDecomposition) -> bool {
    let g = dec.g();
    let ec = c.ring.p_power;
    let odd = c.ring.a_prime;
    let side = |t: &TruncatedDecomposition, sets: &[Vec<usize>], step: usize, shift: usize| {
        sets.iter().enumerate().all(|(l, ms)| {
            let lf_c = &c.factors[l];
            // gamma_l(omega) = z^{gcd(a', b')} - 1 in C_l.
            let mut gamma = lf_c.power_of_x(f, odd);
            gamma[0] = f.sub(gamma[0], Fq::ONE);
            let mut omega_t = vec![Fq::ZERO; ec];
            omega_t[0] = Fq::ONE;
            (0..ec).all(|tpow| {
                let ok = ms.iter().all(|&m| {
                    let lf = &t.crt.factors[m];
                    let rhs = evaluate_shifted(f, &omega_t, lf_c.center, lf, step);
                    let lhs = t.rebases[m].theta.column(tpow * shift);
                    lhs == rhs
                });
                omega_t = truncated_mul(f, &omega_t, &gamma, ec);
                ok
            })
        })
    };
    let shift_a = pow_u64(dec.p, dec.r - dec.r.min(dec.s)) as usize;
    let shift_b = pow_u64(dec.p, dec.s - dec.r.min(dec.s)) as usize;
    side(&dec.a_side, &dec.sigma.sigma_l, dec.a / g, shift_a)
        && side(&dec.b_side, &dec.sigma.sigma_prime_l, dec.b / g, shift_b)
}
