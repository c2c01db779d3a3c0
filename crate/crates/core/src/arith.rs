//! Integer number theory on `u64`: primality, prime powers, factorization.

/// Modular multiplication through `u128`.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(u: u64) -> bool {
    if u < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if u.is_multiple_of(p) {
            return u == p;
        }
    }
    let mut d = u - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, u);
        if x == 1 || x == u - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, u);
            if x == u - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest integer `x` with `x^k <= u`.
pub fn integer_root(u: u64, k: u32) -> u64 {
    if k == 1 || u < 2 {
        return u;
    }
    let mut x = (u as f64).powf(1.0 / k as f64).round() as u64;
    // float guess is within one of the answer; settle it exactly
    while x > 0 && checked_pow(x, k).is_none_or(|v| v > u) {
        x -= 1;
    }
    while checked_pow(x + 1, k).is_some_and(|v| v <= u) {
        x += 1;
    }
    x
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Returns `(r, d)` with `u = r^d` and `r` prime, if `u` is a prime power.
pub fn prime_power(u: u64) -> Option<(u64, u32)> {
    if u < 2 {
        return None;
    }
    let max_d = 64 - u.leading_zeros();
    for d in (1..=max_d).rev() {
        let r = integer_root(u, d);
        if r >= 2 && checked_pow(r, d) == Some(u) && is_prime(r) {
            return Some((r, d));
        }
    }
    None
}

pub fn is_prime_power(u: u64) -> bool {
    prime_power(u).is_some()
}

/// Distinct prime factors in increasing order (trial division).
pub fn prime_factors(mut u: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= u {
        if u.is_multiple_of(p) {
            out.push(p);
            while u.is_multiple_of(p) {
                u /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if u > 1 {
        out.push(u);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
