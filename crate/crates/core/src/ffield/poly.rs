//! Dense polynomials over `F_p`, constant term first, used only to find the
//! field modulus and generator.

pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

pub fn is_one(a: &[u32]) -> bool {
    a.first() == Some(&1) && a.iter().skip(1).all(|&c| c == 0)
}

fn is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let df = degree(f).expect("nonzero modulus");
    let lead_inv = inv_mod(f[df], p) as u64;
    let mut r = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let coef = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - df;
        for (k, &fk) in f.iter().enumerate().take(df + 1) {
            let sub = coef * fk as u64 % p as u64;
            r[shift + k] = ((r[shift + k] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    trim(r)
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

pub fn powmod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, f, p);
        }
        base = mulmod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero(&y) {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: `gcd(f, x^{p^k} - x) = 1` for `1 <= k <= deg f / 2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = vec![0u32, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=n / 2 {
        h = powmod(&h, p as u64, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(f, &trim(diff), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

pub fn decode(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}
