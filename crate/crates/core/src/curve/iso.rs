//! Isomorphisms between Weierstrass models.

use crate::arith::{Embedding, FieldElem, Poly};
use crate::error::Result;

use super::weierstrass::{Curve, Point};

/// The change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t,
/// mapping a curve E to the model E' in the primed coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iso {
    pub u: FieldElem,
    pub r: FieldElem,
    pub s: FieldElem,
    pub t: FieldElem,
}

impl Iso {
    pub fn identity(f: &crate::arith::Field) -> Iso {
        Iso {
            u: FieldElem::one(f),
            r: FieldElem::zero(f),
            s: FieldElem::zero(f),
            t: FieldElem::zero(f),
        }
    }

    /// Codomain model.
    pub fn apply_curve(&self, e: &Curve) -> Curve {
        let [a1, a2, a3, a4, a6] = e.coeffs();
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let ui = u.inv().expect("u is a unit");
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let ui4 = &ui2 * &ui2;
        let ui6 = &ui3 * &ui3;
        let n1 = a1 + &s.scale(2);
        let n2 = &(&(a2 - &(s * a1)) + &r.scale(3)) - &(s * s);
        let n3 = &(a3 + &(r * a1)) + &t.scale(2);
        let n4 = &(&(&(&(a4 - &(s * a3)) + &(r * a2).scale(2)) - &(&(t + &(r * s)) * a1))
            + &(r * r).scale(3))
            - &(s * t).scale(2);
        let r2 = r * r;
        let n6 = &(&(&(&(&(a6 + &(r * a4)) + &(&r2 * a2)) + &(&r2 * r)) - &(t * a3)) - &(t * t))
            - &(&(r * t) * a1);
        Curve::new(
            e.field(),
            [&n1 * &ui, &n2 * &ui2, &n3 * &ui3, &n4 * &ui4, &n6 * &ui6],
        )
        .expect("isomorphic model is nonsingular")
    }

    /// Image of a point of E (coordinates in any extension).
    pub fn apply_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let f = x.field();
                let (u, r, s, t) = self.embedded(f);
                let ui = u.inv().expect("unit");
                let ui2 = &ui * &ui;
                let xr = x - &r;
                let xp = &xr * &ui2;
                let yp = &(&(y - &(&s * &xr)) - &t) * &(&ui2 * &ui);
                Point::Affine(xp, yp)
            }
        }
    }

    fn embedded(&self, f: &crate::arith::Field) -> (FieldElem, FieldElem, FieldElem, FieldElem) {
        if self.u.field() == f {
            (
                self.u.clone(),
                self.r.clone(),
                self.s.clone(),
                self.t.clone(),
            )
        } else {
            let e = Embedding::new(self.u.field(), f).expect("extension of the iso field");
            (
                e.apply(&self.u),
                e.apply(&self.r),
                e.apply(&self.s),
                e.apply(&self.t),
            )
        }
    }

    /// self followed by `o`.
    pub fn then(&self, o: &Iso) -> Iso {
        let u1 = &self.u;
        let u1sq = u1 * u1;
        Iso {
            u: u1 * &o.u,
            r: &self.r + &(&u1sq * &o.r),
            s: &self.s + &(u1 * &o.s),
            t: &(&self.t + &(&(&u1sq * &self.s) * &o.r)) + &(&(&u1sq * u1) * &o.t),
        }
    }

    pub fn inverse(&self) -> Iso {
        let ui = self.u.inv().expect("unit");
        let ui2 = &ui * &ui;
        Iso {
            r: -&(&self.r * &ui2),
            s: -&(&self.s * &ui),
            t: &(&(&self.r * &self.s) - &self.t) * &(&ui2 * &ui),
            u: ui,
        }
    }
}

/// Isomorphism from a model with p > 3 to short form y^2 = x^3 + A x + B.
fn to_short(e: &Curve) -> Iso {
    let f = e.field();
    let [a1, _, a3, _, _] = e.coeffs();
    let half = FieldElem::from_u64(f, 2).inv().expect("p odd");
    let first = Iso {
        u: FieldElem::one(f),
        r: FieldElem::zero(f),
        s: -&(a1 * &half),
        t: -&(a3 * &half),
    };
    let mid = first.apply_curve(e);
    let third = FieldElem::from_u64(f, 3).inv().expect("p > 3");
    let second = Iso {
        u: FieldElem::one(f),
        r: -&(&mid.coeffs()[1] * &third),
        s: FieldElem::zero(f),
        t: FieldElem::zero(f),
    };
    first.then(&second)
}

/// All isomorphisms E1 -> E2 defined over the common base field, sorted.
pub fn isomorphisms(e1: &Curve, e2: &Curve) -> Result<Vec<Iso>> {
    if e1.field() != e2.field() {
        return Err(crate::error::Error::FieldMismatch);
    }
    if e1.j_invariant() != e2.j_invariant() {
        return Ok(Vec::new());
    }
    let f = e1.field();
    let p = f.characteristic();
    let mut out = Vec::new();
    if p > 3 {
        let i1 = to_short(e1);
        let i2 = to_short(e2);
        let s1 = i1.apply_curve(e1);
        let s2 = i2.apply_curve(e2);
        let (a, b) = (&s1.coeffs()[3], &s1.coeffs()[4]);
        let (a2, b2) = (&s2.coeffs()[3], &s2.coeffs()[4]);
        // a2 = a / u^4, b2 = b / u^6
        let us: Vec<FieldElem> = if a.is_zero() {
            let c = b * &b2.inv()?;
            roots_of_binomial(6, &c)
        } else if b.is_zero() {
            let c = a * &a2.inv()?;
            roots_of_binomial(4, &c)
        } else {
            let u2 = &(b * a2) * &(b2 * a).inv()?;
            let c4 = a * &a2.inv()?;
            roots_of_binomial(2, &u2)
                .into_iter()
                .filter(|u| u.pow_u64(4) == c4)
                .collect()
        };
        let back = i2.inverse();
        for u in us {
            let mid = Iso {
                u,
                r: FieldElem::zero(f),
                s: FieldElem::zero(f),
                t: FieldElem::zero(f),
            };
            out.push(i1.then(&mid).then(&back));
        }
    } else {
        let size: u128 = f.size().try_into().map_err(|_| {
            crate::error::Error::Unsupported("isomorphism search over a large field".into())
        })?;
        let elems: Vec<FieldElem> = (0..size).map(|i| FieldElem::from_index(f, i)).collect();
        for u in elems.iter().filter(|u| !u.is_zero()) {
            for r in &elems {
                for s in &elems {
                    for t in &elems {
                        let iso = Iso {
                            u: u.clone(),
                            r: r.clone(),
                            s: s.clone(),
                            t: t.clone(),
                        };
                        if maps_to(&iso, e1, e2) {
                            out.push(iso);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn maps_to(iso: &Iso, e1: &Curve, e2: &Curve) -> bool {
    let [a1, a2, a3, _, _] = e1.coeffs();
    let [b1, b2, b3, _, _] = e2.coeffs();
    let (u, r, s, t) = (&iso.u, &iso.r, &iso.s, &iso.t);
    let u2 = u * u;
    let u3 = &u2 * u;
    // cheap rejections on a1, a2, a3 before the full transform
    if u * b1 != a1 + &s.scale(2)
        || &u2 * b2 != &(&(a2 - &(s * a1)) + &r.scale(3)) - &(s * s)
        || &u3 * b3 != &(a3 + &(r * a1)) + &t.scale(2)
    {
        return false;
    }
    &iso.apply_curve(e1) == e2
}

fn roots_of_binomial(n: usize, c: &FieldElem) -> Vec<FieldElem> {
    let f = c.field();
    let mut coeffs = vec![FieldElem::zero(f); n + 1];
    coeffs[0] = -c;
    coeffs[n] = FieldElem::one(f);
    Poly::new(coeffs).roots()
}

/// Automorphisms of E over its base field, sorted.
pub fn automorphisms(e: &Curve) -> Vec<Iso> {
    isomorphisms(e, e).expect("same field")
}
