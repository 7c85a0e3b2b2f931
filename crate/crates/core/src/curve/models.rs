//! Standard models, point counting and supersingularity.

use num::{BigInt, BigUint, One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, FieldDesc, FieldElem};
use crate::error::{Error, Result};

use super::weierstrass::Curve;

/// Seed shared by every sampling test on curves.
pub const SAMPLE_SEED: u64 = 0x5eed_0002;
const SAMPLES: usize = 20;

/// A fixed curve with the given j-invariant.
pub fn curve_from_j(field: &Field, j: &FieldElem) -> Curve {
    let p = field.characteristic();
    let z = FieldElem::zero(field);
    let one = FieldElem::one(field);
    let mk = |a: [FieldElem; 5]| Curve::new(field, a).expect("standard model is nonsingular");
    match p {
        2 => {
            if j.is_zero() {
                mk([z.clone(), z.clone(), one, z.clone(), z])
            } else {
                mk([
                    one.clone(),
                    z.clone(),
                    z.clone(),
                    z,
                    j.inv().expect("nonzero"),
                ])
            }
        }
        3 => {
            if j.is_zero() {
                mk([z.clone(), z.clone(), z.clone(), -&one, z])
            } else {
                mk([z.clone(), one, z.clone(), z, -&j.inv().expect("nonzero")])
            }
        }
        _ => {
            let k1728 = FieldElem::from_u64(field, 1728);
            if j.is_zero() {
                Curve::short(&z, &one).expect("nonsingular")
            } else if *j == k1728 {
                Curve::short(&one, &z).expect("nonsingular")
            } else {
                let d = &k1728 - j;
                let a = &(j * &d).scale(3);
                let b = &(&(j * &d) * &d).scale(2);
                Curve::short(a, b).expect("nonsingular")
            }
        }
    }
}

/// The field F_{p^2} in its default representation.
pub fn fp2(p: u64) -> Result<Field> {
    FieldDesc::new(p, 2, None)
}

/// Sign eps with Frobenius over F_{p^2} acting as [eps p], if the curve
/// (over F_p or F_{p^2}) has scalar Frobenius. Monte Carlo on seeded points.
pub fn frobenius_sign(e: &Curve) -> Option<i64> {
    let p = e.characteristic();
    let big = fp2(p).ok()?;
    let e2 = e.over(&big).ok()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let pts: Vec<_> = (0..SAMPLES)
        .map(|_| e2.random_point(&big, &mut rng))
        .collect();
    for (eps, n) in [(-1i64, p + 1), (1, p - 1)] {
        let n = BigUint::from(n);
        if pts.iter().all(|q| e2.mul(&n, q).is_infinity()) {
            return Some(eps);
        }
    }
    None
}

/// The model over F_{p^2} of a supersingular j whose Frobenius is [-p],
/// so that #E(F_{p^2}) = (p+1)^2 and every isogeny and isomorphism between
/// such models is defined over F_{p^2}.
pub fn supersingular_model(j: &FieldElem) -> Result<Curve> {
    let f = j.field().clone();
    let p = f.characteristic();
    if f.degree() != 2 {
        return Err(Error::Unsupported(
            "supersingular models live over F_{p^2}".into(),
        ));
    }
    let one = FieldElem::one(&f);
    let z = FieldElem::zero(&f);
    if p == 2 {
        if !j.is_zero() {
            return Err(Error::NotSupersingular);
        }
        return Curve::new(&f, [z.clone(), z.clone(), one, z.clone(), z]);
    }
    if p == 3 {
        if !j.is_zero() {
            return Err(Error::NotSupersingular);
        }
        return Curve::new(&f, [z.clone(), z.clone(), z.clone(), -&one, z]);
    }
    let base = curve_from_j(&f, j);
    let (a, b) = (base.coeffs()[3].clone(), base.coeffs()[4].clone());
    let g = primitive_element(&f);
    // twists: quadratic for generic j, quartic at 1728, sextic at 0
    let order = if a.is_zero() {
        6
    } else if b.is_zero() {
        4
    } else {
        2
    };
    let mut gk = one.clone();
    for _ in 0..order {
        let cand = match order {
            6 => Curve::short(&a, &(&b * &gk)),
            4 => Curve::short(&(&a * &gk), &b),
            _ => Curve::short(&(&(&a * &gk) * &gk), &(&(&(&b * &gk) * &gk) * &gk)),
        }?;
        if frobenius_sign(&cand) == Some(-1) {
            return Ok(cand);
        }
        gk = &gk * &g;
    }
    Err(Error::NotSupersingular)
}

/// Least generator of F^*.
pub fn primitive_element(f: &Field) -> FieldElem {
    let q1 = f.size() - 1u32;
    let q1u: u128 = q1.try_into().expect("small field");
    let primes = crate::arith::fp::prime_divisors(q1u as u64);
    (2..)
        .map(|i| FieldElem::from_index(f, i))
        .find(|g| {
            primes
                .iter()
                .all(|&r| !g.pow(&BigUint::from(q1u as u64 / r)).is_one())
        })
        .expect("primitive element exists")
}

const EXHAUSTIVE_LIMIT_BITS: u64 = 20;

/// #E(F) for an extension F of the curve's field.
pub fn curve_order(e: &Curve, f: &Field) -> Result<BigUint> {
    let ef = e.over(f)?;
    if f.size() <= &(BigUint::one() << EXHAUSTIVE_LIMIT_BITS) {
        let size: u128 = f.size().try_into().expect("bounded");
        let a = ef.coeffs_over(f);
        let mut n = 1u64;
        for i in 0..size {
            n += ef.count_at(&a, &FieldElem::from_index(f, i));
        }
        return Ok(BigUint::from(n));
    }
    let p = f.characteristic();
    if !f.degree().is_multiple_of(2) {
        return Err(Error::FieldTooLarge(f.degree()));
    }
    let m = (f.degree() / 2) as u32;
    let pm = BigInt::from(p).pow(m);
    let sgn = if m.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let cands = [(&pm - &sgn).pow(2u32), (&pm + &sgn).pow(2u32)];
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let pts: Vec<_> = (0..SAMPLES).map(|_| ef.random_point(f, &mut rng)).collect();
    let ok: Vec<BigUint> = cands
        .iter()
        .map(|c| c.abs().to_biguint().expect("nonnegative"))
        .filter(|c| pts.iter().all(|q| ef.mul(c, q).is_infinity()))
        .collect();
    match ok.as_slice() {
        [n] => Ok(n.clone()),
        _ => Err(Error::FieldTooLarge(f.degree())),
    }
}

/// Supersingularity test for curves over F_p or F_{p^2}.
pub fn is_supersingular(e: &Curve) -> bool {
    let f = e.field();
    let p = f.characteristic();
    if f.degree() > 2 {
        return false;
    }
    if f.size() <= &(BigUint::one() << EXHAUSTIVE_LIMIT_BITS) {
        let q = f.size().clone();
        let n = curve_order(e, f).expect("small field");
        let t = BigInt::from(q) + 1 - BigInt::from(n);
        return (t % BigInt::from(p)) == BigInt::from(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let pts: Vec<_> = (0..SAMPLES).map(|_| e.random_point(f, &mut rng)).collect();
    let q = BigInt::from(f.size().clone());
    let pb = BigInt::from(p);
    let traces: Vec<BigInt> = if f.degree() == 1 {
        vec![BigInt::from(0)]
    } else {
        [0i64, 1, -1, 2, -2].iter().map(|k| &pb * k).collect()
    };
    traces.iter().any(|t| {
        let n = (&q + BigInt::one() - t).to_biguint().expect("positive");
        pts.iter().all(|pt| e.mul(&n, pt).is_infinity())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::iso::automorphisms;

    #[test]
    fn j_roundtrip() {
        for p in [2u64, 3, 5, 11, 13] {
            for k in [1usize, 2] {
                let f = FieldDesc::new(p, k, None).unwrap();
                let size: u128 = f.size().try_into().unwrap();
                for i in 0..size {
                    let j = FieldElem::from_index(&f, i);
                    assert_eq!(curve_from_j(&f, &j).j_invariant(), j, "p={p} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn point_counts_by_exhaustion() {
        let f11 = FieldDesc::prime(11).unwrap();
        let e = Curve::from_u64(&f11, [0, 0, 0, 1, 0]).unwrap();
        assert_eq!(curve_order(&e, &f11).unwrap(), BigUint::from(12u32));
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let e0 = curve_from_j(&f4, &FieldElem::zero(&f4));
        assert_eq!(curve_order(&e0, &f4).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn supersingularity() {
        let f2 = FieldDesc::prime(2).unwrap();
        assert!(is_supersingular(&curve_from_j(&f2, &FieldElem::zero(&f2))));
        let f11 = FieldDesc::prime(11).unwrap();
        assert!(is_supersingular(&curve_from_j(
            &f11,
            &FieldElem::zero(&f11)
        )));
        assert!(is_supersingular(&curve_from_j(
            &f11,
            &FieldElem::from_u64(&f11, 1728)
        )));
        let f13 = FieldDesc::prime(13).unwrap();
        let mut found_ordinary = false;
        for j in 0..13 {
            let e = curve_from_j(&f13, &FieldElem::from_u64(&f13, j));
            let n = curve_order(&e, &f13).unwrap();
            if n != BigUint::from(14u32) {
                assert!(!is_supersingular(&e));
                found_ordinary = true;
            }
        }
        assert!(found_ordinary);
    }

    #[test]
    fn canonical_models_have_frobenius_minus_p() {
        let f = fp2(101).unwrap();
        let m = supersingular_model(&FieldElem::zero(&f)).unwrap();
        assert_eq!(curve_order(&m, &f).unwrap(), BigUint::from(102u32 * 102));
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = fp2(p).unwrap();
            let size: u128 = f.size().try_into().unwrap();
            for i in 0..size {
                let j = FieldElem::from_index(&f, i);
                let e = curve_from_j(&f, &j);
                if !is_supersingular(&e) {
                    continue;
                }
                let m = supersingular_model(&j).unwrap();
                assert_eq!(m.j_invariant(), j);
                assert_eq!(
                    curve_order(&m, &f).unwrap(),
                    BigUint::from((p + 1) * (p + 1))
                );
            }
        }
    }

    #[test]
    fn automorphism_group_orders() {
        let f4 = fp2(2).unwrap();
        let e = supersingular_model(&FieldElem::zero(&f4)).unwrap();
        assert_eq!(automorphisms(&e).len(), 24);
        let f9 = fp2(3).unwrap();
        let e = supersingular_model(&FieldElem::zero(&f9)).unwrap();
        assert_eq!(automorphisms(&e).len(), 12);
        let f121 = fp2(11).unwrap();
        let e = supersingular_model(&FieldElem::zero(&f121)).unwrap();
        assert_eq!(automorphisms(&e).len(), 6);
        let e = supersingular_model(&FieldElem::from_u64(&f121, 1728)).unwrap();
        assert_eq!(automorphisms(&e).len(), 4);
        // the F_11 model of j = 0 gains its automorphisms over F_121
        let f11 = FieldDesc::prime(11).unwrap();
        let e = curve_from_j(&f11, &FieldElem::zero(&f11));
        assert_eq!(automorphisms(&e).len(), 2);
        assert_eq!(automorphisms(&e.over(&f121).unwrap()).len(), 6);
    }
}
