//! N-torsion bases over the field generated by E[N], and the action of
//! automorphisms and Frobenius on them.

use num::{BigInt, BigUint, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::fp::{gcd, mult_order, prime_divisors};
use crate::arith::{Field, FieldDesc, FieldElem};
use crate::error::{Error, Result};
use crate::modgroup::ModMatrix;

use super::iso::{automorphisms, Iso};
use super::models::frobenius_sign;
use super::pairing::{dlog_mu, weil_pairing};
use super::weierstrass::{Curve, Point};

pub const BASIS_SEED: u64 = 0x5eed_0004;

/// An ordered basis (P, Q) of E[N] with zeta = e_N(P, Q).
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub n: u32,
    pub p: Point,
    pub q: Point,
    pub zeta: FieldElem,
    /// E[N] is defined over F_{p^{2m}}.
    pub m: usize,
    /// The curve base-changed to F_{p^{2m}}; all basis arithmetic happens here.
    pub curve: Curve,
}

/// Smallest m with E[N] inside E(F_{p^{2m}}), for a supersingular E whose
/// Frobenius over F_{p^2} is [eps p].
pub fn torsion_field_degree(e: &Curve, n: u32) -> Result<usize> {
    let p = e.characteristic();
    if gcd(p, u64::from(n)) != 1 {
        return Err(Error::BadDegree(u64::from(n)));
    }
    let eps = frobenius_sign(e).ok_or(Error::NotSupersingular)?;
    Ok(degree_for(p, eps, n))
}

pub(crate) fn degree_for(p: u64, eps: i64, n: u32) -> usize {
    if n <= 2 {
        return 1;
    }
    let a = (eps * (p % u64::from(n)) as i64).rem_euclid(i64::from(n));
    mult_order(a, u64::from(n)).expect("unit") as usize
}

/// |(eps p)^m - 1|, the exponent of E(F_{p^{2m}}) = (Z/c)^2.
pub(crate) fn group_exponent(p: u64, eps: i64, m: usize) -> BigUint {
    let v: BigInt = (BigInt::from(p) * BigInt::from(eps)).pow(m as u32) - 1;
    v.abs().to_biguint().expect("nonnegative")
}

/// Field F_{p^{2m}}.
pub fn torsion_field(p: u64, m: usize) -> Result<Field> {
    FieldDesc::new(p, 2 * m, None)
}

pub fn is_primitive_root(z: &FieldElem, n: u32) -> bool {
    let n = u64::from(n);
    z.pow_u64(n).is_one()
        && prime_divisors(n)
            .iter()
            .all(|&r| !z.pow_u64(n / r).is_one())
}

impl TorsionBasis {
    /// Deterministic basis from seeded random points and cofactor multiplication.
    pub fn new(e: &Curve, n: u32, seed: u64) -> Result<TorsionBasis> {
        let p = e.characteristic();
        if gcd(p, u64::from(n)) != 1 || n == 0 {
            return Err(Error::BadDegree(u64::from(n)));
        }
        let eps = frobenius_sign(e).ok_or(Error::NotSupersingular)?;
        let m = degree_for(p, eps, n);
        let f = torsion_field(p, m)?;
        let ef = e.over(&f)?;
        if n == 1 {
            return Ok(TorsionBasis {
                n,
                p: Point::Infinity,
                q: Point::Infinity,
                zeta: FieldElem::one(&f),
                m,
                curve: ef,
            });
        }
        let c = group_exponent(p, eps, m);
        let cof = &c / n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let pp = ef.mul(&cof, &ef.random_point(&f, &mut rng));
            let qq = ef.mul(&cof, &ef.random_point(&f, &mut rng));
            let zeta = weil_pairing(&ef, &pp, &qq, u64::from(n))?;
            if is_primitive_root(&zeta, n) {
                return Ok(TorsionBasis {
                    n,
                    p: pp,
                    q: qq,
                    zeta,
                    m,
                    curve: ef,
                });
            }
        }
        Err(Error::Internal(
            "torsion basis search did not terminate".into(),
        ))
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    /// Same basis with Q rescaled so that e_N(P, Q) = target.
    pub fn normalized(&self, target: &FieldElem) -> Result<TorsionBasis> {
        let n = u64::from(self.n);
        let k = dlog_mu(&self.zeta, target, n)
            .filter(|&k| gcd(k, n) == 1)
            .ok_or(Error::Internal(
                "target is not a primitive root of unity".into(),
            ))?;
        let q = self.curve.mul(&BigUint::from(k), &self.q);
        Ok(TorsionBasis {
            q,
            zeta: target.clone(),
            ..self.clone()
        })
    }

    /// Coordinates (x, y) with R = xP + yQ.
    pub fn dlp2d(&self, r: &Point) -> Result<(u32, u32)> {
        let n = u64::from(self.n);
        if n == 1 {
            return Ok((0, 0));
        }
        let e = &self.curve;
        let ex = weil_pairing(e, r, &self.q, n)?;
        let ey = weil_pairing(e, &self.p, r, n)?;
        let x = dlog_mu(&self.zeta, &ex, n).ok_or(Error::Internal("dlog failed".into()))?;
        let y = dlog_mu(&self.zeta, &ey, n).ok_or(Error::Internal("dlog failed".into()))?;
        Ok((x as u32, y as u32))
    }

    /// The matrix M with (f(P), f(Q)) = (P', Q') M for an image basis
    /// (P', Q') = self: columns are coordinates of the images.
    pub fn matrix_of(&self, fp: &Point, fq: &Point) -> Result<ModMatrix> {
        let (a, c) = self.dlp2d(fp)?;
        let (b, d) = self.dlp2d(fq)?;
        Ok(ModMatrix::raw(
            self.n,
            i64::from(a),
            i64::from(b),
            i64::from(c),
            i64::from(d),
        ))
    }

    /// The basis B gamma = (aP + cQ, bP + dQ).
    pub fn act(&self, g: &ModMatrix) -> TorsionBasis {
        let e = &self.curve;
        let [a, b, c, d] = g.entries().map(i64::from);
        let p = e.add(&e.mul_i64(a, &self.p), &e.mul_i64(c, &self.q));
        let q = e.add(&e.mul_i64(b, &self.p), &e.mul_i64(d, &self.q));
        let zeta = self.zeta.pow_u64(u64::from(g.det()));
        TorsionBasis {
            p,
            q,
            zeta,
            ..self.clone()
        }
    }
}

/// Matrices A_alpha with alpha(B) = B A_alpha, one per automorphism of the
/// base curve `e` (the curve the basis was built from).
pub fn automorphism_matrices(e: &Curve, b: &TorsionBasis) -> Result<Vec<ModMatrix>> {
    automorphisms(e)
        .iter()
        .map(|a: &Iso| b.matrix_of(&a.apply_point(&b.p), &a.apply_point(&b.q)))
        .collect()
}

/// Matrix of the q-power Frobenius on the basis, q = p^k.
pub fn frobenius_matrix(b: &TorsionBasis, k: usize) -> Result<ModMatrix> {
    b.matrix_of(&b.p.frobenius(k), &b.q.frobenius(k))
}
