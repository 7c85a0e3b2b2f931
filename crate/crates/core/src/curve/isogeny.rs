//! Separable isogenies of prime degree from Vélu's formulas on general
//! Weierstrass models.

use num::BigUint;

use crate::arith::{Embedding, Field, FieldElem, Poly};
use crate::error::{Error, Result};

use super::iso::Iso;
use super::torsion::{TorsionBasis, BASIS_SEED};
use super::weierstrass::{Curve, Point};

/// A cyclic subgroup of order l: a generator over the l-torsion field and
/// its kernel polynomial over the curve's field.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub generator: Point,
    pub poly: Poly,
}

/// The l + 1 cyclic subgroups of order l, ordered by kernel polynomial
/// coefficients (constant term first).
pub fn ell_kernels(e: &Curve, ell: u64) -> Result<Vec<Kernel>> {
    if ell < 2 || ell.is_multiple_of(e.characteristic()) || !crate::arith::fp::is_prime(ell) {
        return Err(Error::BadDegree(ell));
    }
    let basis = TorsionBasis::new(e, ell as u32, BASIS_SEED ^ ell)?;
    let el = &basis.curve;
    let mut gens = vec![basis.q.clone()];
    let mut cur = basis.p.clone();
    for _ in 0..ell {
        gens.push(cur.clone());
        cur = el.add(&cur, &basis.q);
    }
    let mut out = gens
        .into_iter()
        .map(|g| {
            let poly = kernel_polynomial(e, el, &g, ell)?;
            Ok(Kernel { generator: g, poly })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.poly.coeffs().cmp(b.poly.coeffs()));
    Ok(out)
}

/// Representatives of (<K> \ {O}) / {+-1}.
fn half_kernel(el: &Curve, k: &Point, ell: u64) -> Vec<Point> {
    let n = if ell == 2 { 1 } else { (ell - 1) / 2 };
    let mut pts = Vec::with_capacity(n as usize);
    let mut cur = k.clone();
    for _ in 0..n {
        pts.push(cur.clone());
        cur = el.add(&cur, k);
    }
    pts
}

fn kernel_polynomial(e: &Curve, el: &Curve, k: &Point, ell: u64) -> Result<Poly> {
    let f = el.field();
    let psi = half_kernel(el, k, ell)
        .iter()
        .fold(Poly::constant(FieldElem::one(f)), |acc, q| {
            acc.mul(&Poly::linear(q.x().expect("affine")))
        });
    let emb = Embedding::new(e.field(), f)?;
    emb.descend_poly(&psi).ok_or(Error::BadKernel(ell))
}

#[derive(Clone, Debug)]
pub struct Isogeny {
    pub domain: Curve,
    pub codomain: Curve,
    pub degree: u64,
    pub kernel_poly: Poly,
    xnum: Poly,
    yf: Poly,
    yg: Poly,
    post: Option<Iso>,
}

/// Vélu isogeny with kernel <K>, K of order l over an extension.
pub fn velu(e: &Curve, k: &Point, ell: u64) -> Result<Isogeny> {
    let f: Field = k.field().ok_or(Error::BadKernel(ell))?.clone();
    let el = e.over(&f)?;
    if !el.is_on_curve(k) || !el.mul(&BigUint::from(ell), k).is_infinity() {
        return Err(Error::BadKernel(ell));
    }
    let [a1, a2, a3, a4, a6] = el.coeffs().clone();
    let [b2, _, _, _] = el.b_invariants();
    let x = Poly::x(&f);
    let one = Poly::constant(FieldElem::one(&f));
    let half = half_kernel(&el, k, ell);
    let psi = half.iter().fold(one.clone(), |acc, q| {
        acc.mul(&Poly::linear(q.x().expect("affine")))
    });
    let mut v = FieldElem::zero(&f);
    let mut w = FieldElem::zero(&f);
    let mut xnum = x.mul(&psi).mul(&psi);
    let mut yf = psi.mul(&psi).mul(&psi);
    let mut yg = Poly::zero(&f);
    for q in &half {
        let (xq, yq) = (q.x().expect("affine"), q.y().expect("affine"));
        let gx = &(&(&(xq * xq).scale(3) + &(&a2 * xq).scale(2)) + &a4) - &(&a1 * yq);
        let gy = &(&(-&yq.scale(2)) - &(&a1 * xq)) - &a3;
        let two_torsion = el.double(q).is_infinity();
        let vq = if two_torsion {
            gx.clone()
        } else {
            &gx.scale(2) - &(&a1 * &gy)
        };
        let uq = &gy * &gy;
        v = &v + &vq;
        w = &(&w + &uq) + &(xq * &vq);
        let psi_q = psi.divrem(&Poly::linear(xq)).0;
        let psi_q2 = psi_q.mul(&psi_q);
        let psi_q3 = psi_q2.mul(&psi_q);
        let pp = psi.mul(&psi_q2);
        // X = x + sum v/(x - xq) + u/(x - xq)^2, over the denominator psi^2
        xnum = xnum
            .add(&psi.mul(&psi_q).scale(&vq))
            .add(&psi_q2.scale(&uq));
        // Y = y - sum [u (2y + a1 x + a3)/(x-xq)^3
        //            + (v (a1 (x-xq) + y - yq) + a1 u - gx gy)/(x-xq)^2], over psi^3
        yf = yf.sub(&psi_q3.scale(&uq.scale(2))).sub(&pp.scale(&vq));
        let lin = Poly::new(vec![&a3 * &uq, &a1 * &uq]); // u (a1 x + a3)
        let xmq = x.sub(&Poly::constant(xq.clone()));
        let c = &(&a1 * &uq) - &(&gx * &gy);
        let inner = xmq
            .scale(&(&vq * &a1))
            .add(&Poly::constant(&c - &(&vq * yq)));
        yg = yg.sub(&lin.mul(&psi_q3)).sub(&inner.mul(&pp));
    }
    let cod_l = Curve::new(
        &f,
        [
            a1.clone(),
            a2.clone(),
            a3.clone(),
            &a4 - &v.scale(5),
            &(&a6 - &(&b2 * &v)) - &w.scale(7),
        ],
    )?;
    let emb = Embedding::new(e.field(), &f)?;
    let down = (|| {
        let c = cod_l.coeffs();
        let cc: Option<Vec<FieldElem>> = c.iter().map(|a| emb.descend(a)).collect();
        let cc = cc?;
        Some((
            Curve::new(
                e.field(),
                [
                    cc[0].clone(),
                    cc[1].clone(),
                    cc[2].clone(),
                    cc[3].clone(),
                    cc[4].clone(),
                ],
            )
            .ok()?,
            emb.descend_poly(&psi)?,
            emb.descend_poly(&xnum)?,
            emb.descend_poly(&yf)?,
            emb.descend_poly(&yg)?,
        ))
    })();
    let (domain, (codomain, kernel_poly, xnum, yf, yg)) = match down {
        Some(t) => (e.clone(), t),
        None => (el.clone(), (cod_l, psi, xnum, yf, yg)),
    };
    Ok(Isogeny {
        domain,
        codomain,
        degree: ell,
        kernel_poly,
        xnum,
        yf,
        yg,
        post: None,
    })
}

fn eval_in(poly: &Poly, emb: &Embedding, x: &FieldElem) -> FieldElem {
    let mut acc = FieldElem::zero(x.field());
    for c in poly.coeffs().iter().rev() {
        acc = &(&acc * x) + &emb.apply(c);
    }
    acc
}

impl Isogeny {
    /// Image of a point of the domain (coordinates in any extension).
    pub fn eval(&self, pt: &Point) -> Point {
        let (x0, y0) = match pt {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        let emb = Embedding::new(self.domain.field(), x0.field()).expect("point over an extension");
        let d = eval_in(&self.kernel_poly, &emb, x0);
        if d.is_zero() {
            return Point::Infinity;
        }
        let di = d.inv().expect("nonzero");
        let di2 = &di * &di;
        let xx = &eval_in(&self.xnum, &emb, x0) * &di2;
        let yy =
            &(&(y0 * &eval_in(&self.yf, &emb, x0)) + &eval_in(&self.yg, &emb, x0)) * &(&di2 * &di);
        let img = Point::Affine(xx, yy);
        match &self.post {
            None => img,
            Some(iso) => iso.apply_point(&img),
        }
    }

    /// This isogeny followed by an isomorphism out of its codomain.
    pub fn then_iso(&self, iso: &Iso) -> Isogeny {
        let post = match &self.post {
            None => iso.clone(),
            Some(p) => p.then(iso),
        };
        Isogeny {
            codomain: iso.apply_curve(&self.codomain),
            post: Some(post),
            ..self.clone()
        }
    }
}

/// Free-function form of [`Isogeny::eval`].
pub fn isogeny_eval(phi: &Isogeny, p: &Point) -> Point {
    phi.eval(p)
}
