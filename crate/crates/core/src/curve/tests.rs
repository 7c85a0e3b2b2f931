use std::collections::HashSet;

use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::{FieldDesc, FieldElem, Poly};
use crate::modgroup::{gl2_elements, ModMatrix};

fn ss(p: u64, j: u64) -> Curve {
    let f = fp2(p).unwrap();
    supersingular_model(&FieldElem::from_u64(&f, j)).unwrap()
}

#[test]
fn group_law_basics() {
    let f11 = FieldDesc::prime(11).unwrap();
    let e = Curve::from_u64(&f11, [0, 0, 0, 1, 0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let p = e.random_point(&f11, &mut rng);
        assert_eq!(e.add(&p, &Point::Infinity), p);
        assert!(e.mul(&BigUint::from(12u32), &p).is_infinity());
    }
    for (p, k) in [(11u64, 2usize), (2, 4), (3, 2)] {
        let f = FieldDesc::new(p, k, None).unwrap();
        let e = curve_from_j(&f, &FieldElem::from_index(&f, 5));
        for _ in 0..100 {
            let a = e.random_point(&f, &mut rng);
            let b = e.random_point(&f, &mut rng);
            let c = e.random_point(&f, &mut rng);
            assert_eq!(e.add(&e.add(&a, &b), &c), e.add(&a, &e.add(&b, &c)));
            assert!(e.is_on_curve(&e.add(&a, &b)));
            assert!(e.add(&a, &e.neg(&a)).is_infinity());
        }
    }
}

#[test]
fn off_curve_points_rejected() {
    let f11 = FieldDesc::prime(11).unwrap();
    let e = Curve::from_u64(&f11, [0, 0, 0, 1, 0]).unwrap();
    let r = e.point(FieldElem::from_u64(&f11, 1), FieldElem::from_u64(&f11, 1));
    assert_eq!(r, Err(crate::Error::NotOnCurve));
}

#[test]
fn torsion_degrees() {
    assert_eq!(torsion_field_degree(&ss(11, 0), 3).unwrap(), 1);
    assert_eq!(torsion_field_degree(&ss(11, 0), 2).unwrap(), 1);
    // -2 has order 4 mod 5, so E[5] needs F_{2^8}
    assert_eq!(torsion_field_degree(&ss(2, 0), 5).unwrap(), 4);
    assert!(torsion_field_degree(&ss(11, 0), 11).is_err());
}

#[test]
fn basis_is_primitive_and_stable() {
    for (p, j, n) in [
        (11u64, 0u64, 3u32),
        (11, 1728, 2),
        (11, 0, 5),
        (2, 0, 5),
        (3, 0, 4),
        (13, 5, 6),
    ] {
        let e = ss(p, j);
        let b = TorsionBasis::new(&e, n, 7).unwrap();
        let nn = BigUint::from(n);
        assert!(b.curve.mul(&nn, &b.p).is_infinity());
        assert!(b.curve.mul(&nn, &b.q).is_infinity());
        assert!(is_primitive_root(&b.zeta, n));
        assert_eq!(
            weil_pairing(&b.curve, &b.p, &b.q, u64::from(n)).unwrap(),
            b.zeta
        );
        let again = TorsionBasis::new(&e, n, 7).unwrap();
        assert_eq!(again.p, b.p);
    }
}

#[test]
fn two_torsion_from_cubic() {
    let f11 = FieldDesc::prime(11).unwrap();
    let e = Curve::from_u64(&f11, [0, 0, 0, 1, 0]).unwrap();
    let b = TorsionBasis::new(&e, 2, 1).unwrap();
    let f = b.field().clone();
    let cubic = Poly::new(vec![
        FieldElem::zero(&f),
        FieldElem::one(&f),
        FieldElem::zero(&f),
        FieldElem::one(&f),
    ]);
    let pq = b.curve.add(&b.p, &b.q);
    let mut xs: Vec<FieldElem> = [&b.p, &b.q, &pq]
        .iter()
        .map(|t| t.x().unwrap().clone())
        .collect();
    xs.sort();
    assert_eq!(xs, cubic.roots());
    assert_eq!(b.zeta, -FieldElem::one(&f));
}

#[test]
fn pairing_properties() {
    let e = ss(11, 1728);
    let b = TorsionBasis::new(&e, 5, 3).unwrap();
    let ec = &b.curve;
    assert!(weil_pairing(ec, &b.p, &b.p, 5).unwrap().is_one());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let all: Vec<ModMatrix> = gl2_elements(5);
    for _ in 0..50 {
        let g = all[rng.gen_range(0..all.len())];
        let bg = b.act(&g);
        let z = weil_pairing(ec, &bg.p, &bg.q, 5).unwrap();
        assert_eq!(z, b.zeta.pow_u64(u64::from(g.det())));
    }
    // bilinearity in the first argument
    for _ in 0..10 {
        let (x1, y1, x2, y2) = (
            rng.gen_range(0..5),
            rng.gen_range(0..5),
            rng.gen_range(0..5),
            rng.gen_range(0..5),
        );
        let p1 = ec.add(&ec.mul_i64(x1, &b.p), &ec.mul_i64(y1, &b.q));
        let p2 = ec.add(&ec.mul_i64(x2, &b.p), &ec.mul_i64(y2, &b.q));
        let lhs = weil_pairing(ec, &ec.add(&p1, &p2), &b.q, 5).unwrap();
        let rhs =
            &weil_pairing(ec, &p1, &b.q, 5).unwrap() * &weil_pairing(ec, &p2, &b.q, 5).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(weil_pairing(ec, &ec.random_point(b.field(), &mut rng), &b.q, 5).is_err());
}

#[test]
fn dlp_coordinates() {
    let b = TorsionBasis::new(&ss(11, 0), 5, 2).unwrap();
    let ec = &b.curve;
    assert_eq!(b.dlp2d(&b.p).unwrap(), (1, 0));
    assert_eq!(b.dlp2d(&Point::Infinity).unwrap(), (0, 0));
    let r = ec.add(&ec.mul_i64(2, &b.p), &ec.mul_i64(3, &b.q));
    assert_eq!(b.dlp2d(&r).unwrap(), (2, 3));
}

#[test]
fn kernels_count_and_order() {
    for (p, j, ell) in [
        (11u64, 0u64, 3u64),
        (11, 1728, 2),
        (11, 1728, 5),
        (2, 0, 3),
        (3, 0, 5),
        (17, 8, 7),
    ] {
        let e = ss(p, j);
        let ks = ell_kernels(&e, ell).unwrap();
        assert_eq!(ks.len() as u64, ell + 1);
        let mut polys = HashSet::new();
        for k in &ks {
            let el = e.over(k.generator.field().unwrap()).unwrap();
            assert!(!k.generator.is_infinity());
            assert!(el.mul(&BigUint::from(ell), &k.generator).is_infinity());
            polys.insert(format!("{:?}", k.poly));
        }
        assert_eq!(polys.len() as u64, ell + 1);
    }
    assert!(ell_kernels(&ss(11, 0), 11).is_err());
}

#[test]
fn two_kernels_are_cubic_roots() {
    let e = ss(11, 1728);
    let ks = ell_kernels(&e, 2).unwrap();
    let f = e.field().clone();
    // 2-division polynomial of y^2 = x^3 + a x + b is x^3 + a x + b
    let c = e.coeffs();
    let cubic = Poly::new(vec![
        c[4].clone(),
        c[3].clone(),
        FieldElem::zero(&f),
        FieldElem::one(&f),
    ]);
    let roots = cubic.roots();
    let xs: Vec<FieldElem> = ks.iter().map(|k| -&k.poly.coeff(0)).collect();
    assert_eq!(roots.len(), 3);
    for x in xs {
        assert!(roots.contains(&x));
    }
}

#[test]
fn velu_on_f11() {
    let f11 = FieldDesc::prime(11).unwrap();
    let e = Curve::from_u64(&f11, [0, 0, 0, 1, 0]).unwrap();
    let k = e
        .point(FieldElem::zero(&f11), FieldElem::zero(&f11))
        .unwrap();
    let phi = velu(&e, &k, 2).unwrap();
    assert_eq!(phi.codomain.j_invariant(), FieldElem::from_u64(&f11, 1728));
    assert_eq!(phi.kernel_poly, Poly::x(&f11));
    let mut pts = vec![Point::Infinity];
    for x in 0..11 {
        pts.extend(e.lift_x(&FieldElem::from_u64(&f11, x)));
    }
    assert_eq!(pts.len(), 12);
    assert!(phi.eval(&k).is_infinity());
    for a in &pts {
        assert!(phi.codomain.is_on_curve(&phi.eval(a)));
        for b in &pts {
            assert_eq!(
                phi.eval(&e.add(a, b)),
                phi.codomain.add(&phi.eval(a), &phi.eval(b))
            );
        }
    }
}

#[test]
fn velu_homomorphism_and_dual() {
    for (p, j, ell) in [
        (11u64, 0u64, 3u64),
        (2, 0, 3),
        (3, 0, 2),
        (13, 5, 5),
        (17, 0, 7),
        (19, 7, 2),
    ] {
        let e = ss(p, j);
        let ks = ell_kernels(&e, ell).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p * ell);
        let basis = TorsionBasis::new(&e, ell as u32, 99).unwrap();
        for k in ks.iter().take(2) {
            let phi = velu(&e, &k.generator, ell).unwrap();
            assert_eq!(phi.domain, e);
            assert!(is_supersingular(&phi.codomain) || p > 1000);
            let f = basis.field().clone();
            let el = e.over(&f).unwrap();
            let cl = phi.codomain.over(&f).unwrap();
            assert!(phi.eval(&k.generator).is_infinity());
            for _ in 0..20 {
                let a = el.random_point(&f, &mut rng);
                let b = el.random_point(&f, &mut rng);
                assert!(cl.is_on_curve(&phi.eval(&a)));
                assert_eq!(
                    phi.eval(&el.add(&a, &b)),
                    cl.add(&phi.eval(&a), &phi.eval(&b))
                );
            }
            // dual: kernel is the image of a complementary l-torsion point
            let other = [&basis.p, &basis.q]
                .into_iter()
                .map(|t| phi.eval(t))
                .find(|t| !t.is_infinity())
                .unwrap();
            let psi = velu(&phi.codomain, &other, ell).unwrap();
            let back = isomorphisms(&psi.codomain, &e).unwrap();
            let samples: Vec<Point> = (0..10).map(|_| el.random_point(&f, &mut rng)).collect();
            let ok = back.iter().any(|iso| {
                samples.iter().all(|s| {
                    iso.apply_point(&psi.eval(&phi.eval(s))) == el.mul(&BigUint::from(ell), s)
                })
            });
            assert!(ok, "dual composition failed for p={p} l={ell}");
        }
    }
}

#[test]
fn automorphism_actions() {
    let e = ss(2, 0);
    let b = TorsionBasis::new(&e, 3, 1).unwrap();
    let mats = automorphism_matrices(&e, &b).unwrap();
    let set: HashSet<ModMatrix> = mats.iter().copied().collect();
    assert_eq!(set.len(), 24);
    for x in &mats {
        for y in &mats {
            assert!(set.contains(&x.mul(y)));
        }
    }
    let e = ss(11, 0);
    let b = TorsionBasis::new(&e, 2, 1).unwrap();
    let set: HashSet<ModMatrix> = automorphism_matrices(&e, &b).unwrap().into_iter().collect();
    assert_eq!(set.len(), 3);
    let e = ss(13, 5);
    let b = TorsionBasis::new(&e, 4, 1).unwrap();
    let set: HashSet<ModMatrix> = automorphism_matrices(&e, &b).unwrap().into_iter().collect();
    let expect: HashSet<ModMatrix> = [ModMatrix::identity(4), ModMatrix::scalar(4, -1)]
        .into_iter()
        .collect();
    assert_eq!(set, expect);
}

#[test]
fn frobenius_is_scalar() {
    for (p, j, n) in [
        (11u64, 0u64, 3u32),
        (11, 1728, 5),
        (5, 0, 24),
        (2, 0, 5),
        (13, 5, 7),
    ] {
        let b = TorsionBasis::new(&ss(p, j), n, 5).unwrap();
        let m = frobenius_matrix(&b, 2).unwrap();
        assert_eq!(m, ModMatrix::scalar(n, -(p as i64)));
        assert_eq!(u64::from(m.det()), p * p % u64::from(n));
        if n == 24 {
            assert_eq!(m.det(), 1);
        }
        let m1 = frobenius_matrix(&b, 1).unwrap();
        assert_eq!(u64::from(m1.det()), p % u64::from(n));
    }
}
