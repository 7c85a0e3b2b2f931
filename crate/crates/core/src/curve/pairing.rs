//! Weil pairing via Miller's algorithm, and discrete logs in mu_N.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::fp::factor;
use crate::arith::FieldElem;
use crate::error::{Error, Result};

use super::weierstrass::{Curve, Point};

const PAIRING_SEED: u64 = 0x5eed_0003;

/// Evaluation at `r` of the line through t1, t2 divided by the vertical
/// line through t1 + t2, returned as (numerator, denominator).
fn line_ratio(e: &Curve, t1: &Point, t2: &Point, r: &Point) -> (FieldElem, FieldElem, Point) {
    let (xr, yr) = match r {
        Point::Affine(x, y) => (x, y),
        Point::Infinity => unreachable!("evaluation point is affine"),
    };
    let one = FieldElem::one(xr.field());
    if t1.is_infinity() || t2.is_infinity() {
        // happens when P has order a proper divisor of N; the ratio is constant
        return (one.clone(), one, e.add(t1, t2));
    }
    let (x1, y1) = match t1 {
        Point::Affine(x, y) => (x, y),
        Point::Infinity => unreachable!(),
    };
    let t3 = e.add(t1, t2);
    let x2 = t2.x().expect("affine");
    if t3.is_infinity() {
        return (xr - x1, one, t3);
    }
    let lambda = if x1 == x2 {
        let a = e.coeffs();
        let (a1, a2, a3, a4) = (&a[0], &a[1], &a[2], &a[3]);
        let num = &(&(&(x1 * x1).scale(3) + &(a2 * x1).scale(2)) + a4) - &(a1 * y1);
        let den = &(&y1.scale(2) + &(a1 * x1)) + a3;
        &num * &den.inv().expect("not 2-torsion")
    } else {
        let y2 = t2.y().expect("affine");
        &(y2 - y1) * &(x2 - x1).inv().expect("distinct")
    };
    let l = &(yr - y1) - &(&lambda * &(xr - x1));
    let v = xr - t3.x().expect("affine");
    (l, v, t3)
}

/// f_{N,P}(R) for the Miller function with divisor N(P) - N(O), or None
/// when R meets a zero or pole of some intermediate line.
pub fn miller(e: &Curve, p: &Point, n: u64, r: &Point) -> Option<FieldElem> {
    let f = r.field()?.clone();
    let mut num = FieldElem::one(&f);
    let mut den = FieldElem::one(&f);
    let mut t = p.clone();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        let (l, v, t2) = line_ratio(e, &t, &t, r);
        num = &(&num * &num) * &l;
        den = &(&den * &den) * &v;
        t = t2;
        if (n >> i) & 1 == 1 {
            let (l, v, t2) = line_ratio(e, &t, p, r);
            num = &num * &l;
            den = &den * &v;
            t = t2;
        }
        if num.is_zero() || den.is_zero() {
            return None;
        }
    }
    Some(&num * &den.inv().ok()?)
}

/// e_N(P, Q) for N-torsion points P, Q over the field of `e`.
pub fn weil_pairing(e: &Curve, p: &Point, q: &Point, n: u64) -> Result<FieldElem> {
    let nn = num::BigUint::from(n);
    if !e.mul(&nn, p).is_infinity() || !e.mul(&nn, q).is_infinity() {
        return Err(Error::NotTorsion(n));
    }
    let f = e.field();
    if p.is_infinity() || q.is_infinity() || p == q || n == 1 {
        return Ok(FieldElem::one(f));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PAIRING_SEED);
    for _ in 0..1000 {
        let s = e.random_point(f, &mut rng);
        let qs = e.add(q, &s);
        let ps = e.sub(p, &s);
        let ms = e.neg(&s);
        if qs.is_infinity() || ps.is_infinity() {
            continue;
        }
        let vals = (
            miller(e, p, n, &qs),
            miller(e, p, n, &s),
            miller(e, q, n, &ps),
            miller(e, q, n, &ms),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = vals {
            if a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero() {
                continue;
            }
            let num = &a * &d;
            let den = &b * &c;
            return Ok(&num * &den.inv()?);
        }
    }
    Err(Error::Internal(
        "no admissible auxiliary point for the pairing".into(),
    ))
}

/// x with zeta^x = h, for zeta of exact order n (Pohlig-Hellman).
pub fn dlog_mu(zeta: &FieldElem, h: &FieldElem, n: u64) -> Option<u64> {
    if n == 1 {
        return h.is_one().then_some(0);
    }
    let mut x = 0u64;
    let mut modulus = 1u64;
    for (q, k) in factor(n) {
        let qk = q.pow(k);
        let g = zeta.pow_u64(n / qk);
        let hh = h.pow_u64(n / qk);
        // digit-by-digit in the cyclic group of order q^k
        let gq = g.pow_u64(qk / q);
        let mut xi = 0u64;
        let mut qpow = 1u64;
        for _ in 0..k {
            let ginv = g.pow_u64(qk - xi % qk);
            let t = (&hh * &ginv).pow_u64(qk / (qpow * q));
            let d = (0..q).find(|&d| gq.pow_u64(d) == t)?;
            xi += d * qpow;
            qpow *= q;
        }
        if g.pow_u64(xi) != hh {
            return None;
        }
        // combine x mod modulus with xi mod qk
        let inv = crate::arith::fp::inv_mod_n(modulus % qk, qk).expect("coprime");
        let t = ((xi + qk - x % qk) % qk) * inv % qk;
        x += modulus * t;
        modulus *= qk;
    }
    Some(x % n)
}
