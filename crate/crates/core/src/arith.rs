//! Small integer helpers shared across modules.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `n = p^r * d` with `gcd(p, d) = 1`. For `p = 0` returns `(0, n)`.
pub fn split_prime_power(n: u64, p: u64) -> (u32, u64) {
    if p == 0 {
        return (0, n);
    }
    let mut r = 0;
    let mut d = n;
    while d.is_multiple_of(p) {
        d /= p;
        r += 1;
    }
    (r, d)
}

/// Multiplicative order of `p` modulo `n` (`n >= 1`, `gcd(p, n) = 1`).
pub fn multiplicative_order(p: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut acc = p % n;
    let mut k = 1;
    while acc != 1 {
        acc = acc * (p % n) % n;
        k += 1;
    }
    k
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % n) as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_splits() {
        assert_eq!(multiplicative_order(2, 3), 2);
        assert_eq!(multiplicative_order(5, 12), 2);
        assert_eq!(multiplicative_order(2, 1), 1);
        assert_eq!(split_prime_power(12, 2), (2, 3));
        assert_eq!(split_prime_power(12, 0), (0, 12));
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(2, 4), None);
    }
}
