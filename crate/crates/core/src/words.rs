//! Normal forms shared by the category algebra and `H`: a head exponent at the
//! path target, then one bounded slot after every arrow.
//!
//! A word `eta_t^{a} alpha_n eta^{b_n} ... alpha_1 eta^{b_1}` is stored with
//! `arrows = [alpha_n, ..., alpha_1]` and `exps = [a, b_n, ..., b_1]`.

use std::fmt;

use serde::Serialize;

use crate::arith::gcd;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    pub target: usize,
    pub source: usize,
    pub arrows: Vec<usize>,
    pub exps: Vec<u64>,
}

impl Word {
    pub fn vertex_power(v: usize, a: u64) -> Word {
        Word {
            target: v,
            source: v,
            arrows: Vec::new(),
            exps: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn head(&self) -> u64 {
        self.exps[0]
    }
}

/// What happens when the head exponent reaches the order at the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeadRule {
    /// `eta^{c} = 1`: reduce modulo `c`.
    Cyclic,
    /// `epsilon^{c} = 0`: the word vanishes.
    Nilpotent,
}

/// Vertex orders `c_i` and arrows `(target, source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordRules {
    pub orders: Vec<u64>,
    pub arrows: Vec<(usize, usize)>,
}

impl WordRules {
    pub fn new(orders: Vec<u64>, arrows: Vec<(usize, usize)>) -> Self {
        WordRules { orders, arrows }
    }

    fn arrow_gcd(&self, a: usize) -> u64 {
        let (t, s) = self.arrows[a];
        gcd(self.orders[t], self.orders[s])
    }

    /// Bound of the slot to the right of arrow `a`.
    pub fn slot_bound(&self, a: usize) -> u64 {
        self.orders[self.arrows[a].1] / self.arrow_gcd(a)
    }

    /// What one overflow of that slot adds to the exponent on the left of `a`.
    pub fn carry(&self, a: usize) -> u64 {
        self.orders[self.arrows[a].0] / self.arrow_gcd(a)
    }

    /// All words: vertex powers first, then every path in the given order.
    pub fn enumerate(&self, paths: &[Vec<usize>]) -> Vec<Word> {
        let mut out = Vec::new();
        for (v, &c) in self.orders.iter().enumerate() {
            out.extend((0..c).map(|a| Word::vertex_power(v, a)));
        }
        for path in paths {
            let target = self.arrows[path[0]].0;
            let source = self.arrows[*path.last().unwrap()].1;
            let mut bounds = vec![self.orders[target]];
            bounds.extend(path.iter().map(|&a| self.slot_bound(a)));
            let mut exps = vec![0u64; bounds.len()];
            loop {
                out.push(Word {
                    target,
                    source,
                    arrows: path.clone(),
                    exps: exps.clone(),
                });
                // Odometer with the rightmost slot fastest.
                let mut k = bounds.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    exps[k] += 1;
                    if exps[k] < bounds[k] {
                        break;
                    }
                    exps[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
        }
        out
    }

    /// Number of words on one path: `c_target * prod slot bounds`.
    pub fn count_on_path(&self, path: &[usize]) -> u64 {
        let target = self.arrows[path[0]].0;
        path.iter()
            .fold(self.orders[target], |acc, &a| acc * self.slot_bound(a))
    }

    /// `g * f`, or `None` if they do not compose or the product vanishes.
    pub fn multiply(&self, g: &Word, f: &Word, rule: HeadRule) -> Option<Word> {
        if g.source != f.target {
            return None;
        }
        let mut arrows = g.arrows.clone();
        arrows.extend_from_slice(&f.arrows);
        let mut exps = g.exps.clone();
        let join = exps.len() - 1;
        exps[join] += f.exps[0];
        exps.extend_from_slice(&f.exps[1..]);
        for k in (1..=join).rev() {
            let a = arrows[k - 1];
            let bound = self.slot_bound(a);
            if exps[k] >= bound {
                let q = exps[k] / bound;
                exps[k] %= bound;
                exps[k - 1] += q * self.carry(a);
            }
        }
        let c = self.orders[g.target];
        match rule {
            HeadRule::Cyclic => exps[0] %= c,
            HeadRule::Nilpotent if exps[0] >= c => return None,
            HeadRule::Nilpotent => {}
        }
        Some(Word {
            target: g.target,
            source: f.source,
            arrows,
            exps,
        })
    }
}

/// Renders a word with a vertex-power symbol and arrow names, e.g. `e1^2 a12^1 e2^1`.
pub struct WordDisplay<'a> {
    pub word: &'a Word,
    pub rules: &'a WordRules,
    pub symbol: &'a str,
    pub arrow_names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word;
        write!(f, "{}{}^{}", self.symbol, w.target + 1, w.exps[0])?;
        for (k, &a) in w.arrows.iter().enumerate() {
            write!(f, " {}", self.arrow_names[a])?;
            if w.exps[k + 1] > 0 {
                let v = self.rules.arrows[a].1;
                write!(f, " {}{}^{}", self.symbol, v + 1, w.exps[k + 1])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2_rules() -> WordRules {
        WordRules::new(vec![3, 1], vec![(0, 1)])
    }

    #[test]
    fn enumeration_counts() {
        let r = g2_rules();
        let words = r.enumerate(&[vec![0]]);
        assert_eq!(words.len(), 7);
        assert_eq!(r.count_on_path(&[0]), 3);
        let c2 = WordRules::new(vec![1, 2], vec![(0, 1)]);
        assert_eq!(c2.enumerate(&[vec![0]]).len(), 5);
    }

    #[test]
    fn carry_and_head_rules() {
        let r = g2_rules();
        let eta = Word::vertex_power(0, 1);
        let arrow = Word {
            target: 0,
            source: 1,
            arrows: vec![0],
            exps: vec![2, 0],
        };
        let cyc = r.multiply(&eta, &arrow, HeadRule::Cyclic).unwrap();
        assert_eq!(cyc.exps, vec![0, 0]);
        assert!(r.multiply(&eta, &arrow, HeadRule::Nilpotent).is_none());
        assert!(r.multiply(&arrow, &eta, HeadRule::Cyclic).is_none());

        // c1 = 2, c2 = 4, arrow 2 -> 1: slot bound 2, carry 1.
        let r = WordRules::new(vec![2, 4], vec![(0, 1)]);
        let a = Word {
            target: 0,
            source: 1,
            arrows: vec![0],
            exps: vec![0, 1],
        };
        let e2 = Word::vertex_power(1, 3);
        let prod = r.multiply(&a, &e2, HeadRule::Cyclic).unwrap();
        assert_eq!(prod.exps, vec![0, 0]);
        assert!(r.multiply(&a, &e2, HeadRule::Nilpotent).is_none());
    }
}
