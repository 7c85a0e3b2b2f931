//! Prime-field helpers on raw `u64` residues and dense polynomials over F_p.
//!
//! Polynomials are little-endian coefficient vectors with no trailing zeros
//! (the zero polynomial is the empty vector).

use num::BigUint;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(p)
    }
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Inverse modulo an arbitrary modulus, if it exists.
pub fn inv_mod_n(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return if n == 1 { Some(0) } else { None };
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(q, _)| q).collect()
}

/// Multiplicative order of `a` modulo `n`, if `a` is a unit.
pub fn mult_order(a: i64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let a = a.rem_euclid(n as i64) as u64;
    if gcd(a, n) != 1 {
        return None;
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, n);
        k += 1;
    }
    Some(k)
}

/// Kronecker symbol (d / n) for n > 0.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;
    while n.is_multiple_of(2) {
        n /= 2;
        match d.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            3 | 5 => result = -result,
            _ => {}
        }
    }
    // Jacobi symbol (d / n) for odd n.
    let mut a = d.rem_euclid(n as i64) as u64;
    let mut m = n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

pub fn big_pow(p: u64, k: usize) -> BigUint {
    BigUint::from(p).pow(k as u32)
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p.

pub fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    poly_trim(&mut r);
    r
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let small = p < (1u64 << 32);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if small {
                acc[i + j] += x as u128 * y as u128;
            } else {
                acc[i + j] = (acc[i + j] + (x as u128 * y as u128) % p as u128) % p as u128;
            }
        }
    }
    let mut r: Vec<u64> = acc.into_iter().map(|v| (v % p as u128) as u64).collect();
    poly_trim(&mut r);
    r
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
pub fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = sub_mod(r[idx], mul_mod(c, mi, p), p);
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
    }
    a
}

pub fn poly_powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let base = poly_rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = poly_rem(&poly_mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = poly_rem(&poly_mul(&result, &base, p), m, p);
        }
    }
    result
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let pe = BigUint::from(p);
    let mut h = x.clone();
    for _ in 0..k / 2 {
        h = poly_powmod(&h, &pe, f, p);
        let g = poly_gcd(f, &poly_sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_factoring() {
        assert!(is_prime(3851));
        assert!(!is_prime(4));
        assert!(is_prime(18446744073709551557));
        assert_eq!(factor(48), vec![(2, 4), (3, 1)]);
        assert_eq!(factor(1), vec![]);
    }

    #[test]
    fn kronecker_minus_four() {
        let chi: Vec<i32> = (1..8).map(|n| kronecker(-4, n)).collect();
        assert_eq!(chi, vec![1, 0, -1, 0, 1, 0, -1]);
        assert_eq!(kronecker(5, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(1, 2), 1);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 0, 1], 11));
        assert!(!is_irreducible(&[10, 0, 1], 11));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2));
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(-11, 3), Some(1));
        assert_eq!(mult_order(-2, 5), Some(4));
        assert_eq!(mult_order(2, 4), None);
        assert_eq!(inv_mod_n(3, 8), Some(3));
        assert_eq!(inv_mod_n(2, 8), None);
    }
}
