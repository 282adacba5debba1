//! Cartan matrices, symmetrizers, orientations and Cartan triples.
//!
//! Indices are 0-based internally. Every user-facing rendering (reports,
//! files, CLI) is 1-based.

mod classify;
mod graph;
mod quiver;
pub mod samples;

pub use classify::{
    bilinear_form, classify, quadratic_form, recognize_simply_laced, ComponentClass, TypeClass,
    TypeTag,
};
pub use graph::{find_isomorphism, valued_graph, IsoConstraint, ValuedGraph};
pub use quiver::{build_quiver, Arrow, ArrowKind, Quiver};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A symmetrizable generalized Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates (C1)-(C3) and wraps the matrix.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let report = validate_cartan(&entries)?;
        if !report.valid() {
            return Err(Error::input(format!("not a Cartan matrix: {report}")));
        }
        Ok(CartanMatrix { entries })
    }

    /// Wraps a matrix that is known to satisfy (C1) and (C2). Symmetrizability
    /// is still checked by callers that need it.
    pub(crate) fn from_entries_unchecked(entries: Vec<Vec<i64>>) -> Self {
        CartanMatrix { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// `gcd(|c_ij|, |c_ji|)`; zero when `i` and `j` are not adjacent.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> u64 {
        if i == j || self.entries[i][j] == 0 {
            return 0;
        }
        crate::arith::gcd(
            self.entries[i][j].unsigned_abs(),
            self.entries[j][i].unsigned_abs(),
        )
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> CartanMatrix {
        let n = self.rank();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[perm[i]][perm[j]]).collect())
            .collect();
        CartanMatrix { entries }
    }

    /// Principal submatrix on the given (ordered) index list.
    pub fn restrict(&self, idx: &[usize]) -> CartanMatrix {
        let entries = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        CartanMatrix { entries }
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Diagonal symmetrizer `diag(c_1, ..., c_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Symmetrizer(Vec<u64>);

impl Symmetrizer {
    pub fn new(diag: Vec<u64>) -> Result<Self> {
        if diag.contains(&0) {
            return Err(Error::input("symmetrizer entries must be positive"));
        }
        Ok(Symmetrizer(diag))
    }

    pub fn identity(n: usize) -> Self {
        Symmetrizer(vec![1; n])
    }

    pub fn diag(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `DC` is symmetric: `c_i c_ij = c_j c_ji` for all `i, j`.
    pub fn symmetrizes(&self, c: &CartanMatrix) -> bool {
        let n = c.rank();
        self.0.len() == n
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    self.0[i] as i128 * c.get(i, j) as i128
                        == self.0[j] as i128 * c.get(j, i) as i128
                })
            })
    }

    pub fn scaled(&self, factor: u64) -> Symmetrizer {
        Symmetrizer(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> Symmetrizer {
        Symmetrizer(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl fmt::Display for Symmetrizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "diag({})", parts.join(","))
    }
}

/// Orientation: a set of ordered pairs `(i, j)`, each standing for arrows `j -> i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation(BTreeSet<(usize, usize)>);

impl Orientation {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Orientation(pairs.into_iter().collect())
    }

    /// The deterministic default: `(i, j)` with `i < j` for every edge.
    pub fn default_for(c: &CartanMatrix) -> Self {
        let n = c.rank();
        let mut pairs = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if c.get(i, j) < 0 {
                    pairs.insert((i, j));
                }
            }
        }
        Orientation(pairs)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.0.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn permuted(&self, perm: &[usize]) -> Orientation {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        Orientation(self.0.iter().map(|&(i, j)| (inv[i], inv[j])).collect())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A Cartan triple `(C, D, Omega)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanTriple {
    pub c: CartanMatrix,
    pub d: Symmetrizer,
    pub omega: Orientation,
}

impl CartanTriple {
    pub fn new(c: CartanMatrix, d: Symmetrizer, omega: Orientation) -> Result<Self> {
        if !d.symmetrizes(&c) {
            return Err(Error::input(format!("{d} does not symmetrize {c}")));
        }
        let report = validate_orientation(&c, &omega);
        if !report.valid() {
            return Err(Error::input(format!("invalid orientation: {report}")));
        }
        Ok(CartanTriple { c, d, omega })
    }

    /// Builds a triple with the minimal symmetrizer and the default orientation.
    pub fn with_defaults(entries: Vec<Vec<i64>>) -> Result<Self> {
        let c = CartanMatrix::new(entries)?;
        let d = find_minimal_symmetrizer(&c)?;
        let omega = Orientation::default_for(&c);
        CartanTriple::new(c, d, omega)
    }

    pub fn rank(&self) -> usize {
        self.c.rank()
    }

    /// Relabels indices: new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CartanTriple {
        CartanTriple {
            c: self.c.permuted(perm),
            d: self.d.permuted(perm),
            omega: self.omega.permuted(perm),
        }
    }
}

impl fmt::Display for CartanTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C={} D={} Omega={}", self.c, self.d, self.omega)
    }
}

/// Outcome of one named condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed { "ok" } else { "FAIL" };
                if c.detail.is_empty() {
                    format!("{} {status}", c.name)
                } else {
                    format!("{} {status} ({})", c.name, c.detail)
                }
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks (C1)-(C3). Symmetrizer existence is decided by constructing the
/// minimal one on each component.
pub fn validate_cartan(entries: &[Vec<i64>]) -> Result<ValidationReport> {
    let n = entries.len();
    if n == 0 {
        return Err(Error::input("empty matrix"));
    }
    if entries.iter().any(|row| row.len() != n) {
        return Err(Error::input("matrix is not square"));
    }
    let mut report = ValidationReport::default();

    let bad_diag: Vec<usize> = (0..n).filter(|&i| entries[i][i] != 2).collect();
    report.push(
        "C1",
        bad_diag.is_empty(),
        bad_diag
            .first()
            .map(|&i| format!("c_{0}{0} = {1}", i + 1, entries[i][i]))
            .unwrap_or_default(),
    );

    let mut c2_detail = String::new();
    'outer: for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if entries[i][j] > 0 {
                c2_detail = format!("c_{}{} = {} > 0", i + 1, j + 1, entries[i][j]);
                break 'outer;
            }
            if (entries[i][j] < 0) != (entries[j][i] < 0) {
                c2_detail = format!(
                    "c_{}{} = {} but c_{}{} = {}",
                    i + 1,
                    j + 1,
                    entries[i][j],
                    j + 1,
                    i + 1,
                    entries[j][i]
                );
                break 'outer;
            }
        }
    }
    let c2_ok = c2_detail.is_empty();
    report.push("C2", c2_ok, c2_detail);

    if c2_ok {
        let c = CartanMatrix::from_entries_unchecked(entries.to_vec());
        match find_minimal_symmetrizer(&c) {
            Ok(d) => report.push("C3", true, format!("minimal symmetrizer {d}")),
            Err(e) => report.push("C3", false, e.to_string()),
        }
    } else {
        report.push("C3", false, "not checked: (C2) fails".to_string());
    }
    Ok(report)
}

/// The minimal symmetrizer: `DC` symmetric and the entries on every connected
/// component have gcd 1.
///
/// Ratios `c_j / c_i = c_ij / c_ji` are propagated along a spanning tree of each
/// component as exact rationals; every non-tree edge is cross-checked.
pub fn find_minimal_symmetrizer(c: &CartanMatrix) -> Result<Symmetrizer> {
    let n = c.rank();
    let mut value: Vec<Option<BigRational>> = vec![None; n];
    let mut result = vec![0u64; n];
    for root in 0..n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(BigRational::one());
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let vi = value[i].clone().expect("visited vertex has a value");
            for j in 0..n {
                if i == j || c.get(i, j) == 0 {
                    continue;
                }
                // c_i * c_ij = c_j * c_ji
                let vj = vi.clone()
                    * BigRational::new(BigInt::from(c.get(i, j)), BigInt::from(c.get(j, i)));
                match &value[j] {
                    None => {
                        value[j] = Some(vj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if *existing != vj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratio constraints around edge ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let denom_lcm = component.iter().fold(BigInt::one(), |acc, &i| {
            acc.lcm(value[i].as_ref().expect("component vertex").denom())
        });
        let ints: Vec<BigInt> = component
            .iter()
            .map(|&i| {
                let v = value[i].as_ref().expect("component vertex");
                v.numer() * (&denom_lcm / v.denom())
            })
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in component.iter().zip(ints) {
            let v = v / &g;
            if !v.is_positive() {
                return Err(Error::NotSymmetrizable("non-positive ratio".to_string()));
            }
            result[i] = v.to_u64().ok_or_else(|| {
                Error::NotSymmetrizable(format!("symmetrizer entry {v} exceeds 64 bits"))
            })?;
        }
    }
    Ok(Symmetrizer(result))
}

/// Checks the covering condition and acyclicity of `omega`.
pub fn validate_orientation(c: &CartanMatrix, omega: &Orientation) -> ValidationReport {
    let n = c.rank();
    let mut report = ValidationReport::default();

    let mut range_detail = String::new();
    for (i, j) in omega.pairs() {
        if i >= n || j >= n {
            range_detail = format!("pair ({},{}) out of range", i + 1, j + 1);
            break;
        }
    }
    if !range_detail.is_empty() {
        report.push("range", false, range_detail);
        return report;
    }

    let mut cover_detail = String::new();
    'outer: for i in 0..n {
        for j in 0..n {
            let either = omega.contains(i, j) || omega.contains(j, i);
            let both = omega.contains(i, j) && omega.contains(j, i);
            let edge = i != j && c.get(i, j) < 0;
            if either != edge || (i != j && both) || (i == j && either) {
                cover_detail = format!("pair ({},{})", i + 1, j + 1);
                break 'outer;
            }
        }
    }
    report.push("covering", cover_detail.is_empty(), cover_detail);

    // DFS over the digraph i -> j for (i, j) in omega.
    let mut state = vec![0u8; n];
    fn dfs(v: usize, n: usize, omega: &Orientation, state: &mut [u8]) -> bool {
        state[v] = 1;
        for w in 0..n {
            if omega.contains(v, w) {
                if state[w] == 1 {
                    return false;
                }
                if state[w] == 0 && !dfs(w, n, omega, state) {
                    return false;
                }
            }
        }
        state[v] = 2;
        true
    }
    let acyclic = (0..n).all(|v| state[v] != 0 || dfs(v, n, omega, &mut state));
    report.push(
        "acyclic",
        acyclic,
        if acyclic {
            String::new()
        } else {
            "directed cycle".to_string()
        },
    );
    report
}
