use std::borrow::Cow;
use std::fmt;

use num::BigUint;
use rand::Rng;

use crate::arith::{Embedding, Field, FieldElem, Poly};
use crate::error::{Error, Result};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    field: Field,
    a: [FieldElem; 5],
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "Curve[{a1}, {a2}, {a3}, {a4}, {a6}]")
    }
}

/// A point in affine coordinates over some extension of the curve's field,
/// or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(FieldElem, FieldElem),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElem> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&FieldElem> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(y),
        }
    }

    /// Field of the coordinates (None for the point at infinity).
    pub fn field(&self) -> Option<&Field> {
        self.x().map(FieldElem::field)
    }

    pub fn map_coords(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f(x), f(y)),
        }
    }

    pub fn frobenius(&self, m: usize) -> Point {
        self.map_coords(|c| c.frobenius_pow(m))
    }
}

impl Curve {
    pub fn new(field: &Field, a: [FieldElem; 5]) -> Result<Curve> {
        if a.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let e = Curve {
            field: field.clone(),
            a,
        };
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(e)
    }

    pub fn from_u64(field: &Field, a: [u64; 5]) -> Result<Curve> {
        Self::new(field, a.map(|c| FieldElem::from_u64(field, c)))
    }

    /// y^2 = x^3 + a x + b.
    pub fn short(a: &FieldElem, b: &FieldElem) -> Result<Curve> {
        let f = a.field().clone();
        let z = FieldElem::zero(&f);
        Self::new(&f, [z.clone(), z.clone(), z, a.clone(), b.clone()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    /// [a1, a2, a3, a4, a6].
    pub fn coeffs(&self) -> &[FieldElem; 5] {
        &self.a
    }

    pub fn b_invariants(&self) -> [FieldElem; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = &(a1 * a1) + &a2.scale(4);
        let b4 = &a4.scale(2) + &(a1 * a3);
        let b6 = &(a3 * a3) + &a6.scale(4);
        let b8 = &(&(&(&(a1 * a1) * a6) + &(a2 * a6).scale(4)) - &(&(a1 * a3) * a4))
            + &(&(&(a2 * a3) * a3) - &(a4 * a4));
        [b2, b4, b6, b8]
    }

    pub fn c_invariants(&self) -> [FieldElem; 2] {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = &(&b2 * &b2) - &b4.scale(24);
        let c6 = &(&(&b2 * &b4).scale(36) - &(&(&b2 * &b2) * &b2)) - &b6.scale(216);
        [c4, c6]
    }

    pub fn discriminant(&self) -> FieldElem {
        let [b2, b4, b6, b8] = self.b_invariants();
        let t1 = -&(&(&(&b2 * &b2) * &b8) + &(&(&b4 * &b4) * &b4).scale(8));
        let t2 = &(&b6 * &b6).scale(27) - &(&(&b2 * &b4) * &b6).scale(9);
        &t1 - &t2
    }

    pub fn j_invariant(&self) -> FieldElem {
        let [c4, _] = self.c_invariants();
        let d = self.discriminant();
        &(&(&c4 * &c4) * &c4) * &d.inv().expect("nonsingular")
    }

    /// Base change along an embedding of the coefficient field.
    pub fn base_change(&self, emb: &Embedding) -> Curve {
        Curve {
            field: emb.target().clone(),
            a: self.a.clone().map(|c| emb.apply(&c)),
        }
    }

    /// Base change to a field containing this curve's field.
    pub fn over(&self, big: &Field) -> Result<Curve> {
        if big == &self.field {
            return Ok(self.clone());
        }
        Ok(self.base_change(&Embedding::new(&self.field, big)?))
    }

    /// Coefficients embedded into the field of `x` (identity if equal).
    fn coeffs_in(&self, f: &Field) -> Cow<'_, [FieldElem; 5]> {
        if f == &self.field {
            Cow::Borrowed(&self.a)
        } else {
            let emb = Embedding::new(&self.field, f).expect("point field contains curve field");
            Cow::Owned(self.a.clone().map(|c| emb.apply(&c)))
        }
    }

    fn rhs(a: &[FieldElem; 5], x: &FieldElem) -> FieldElem {
        let [_, a2, _, a4, a6] = a;
        &(&(&(&(x + a2) * x) + a4) * x) + a6
    }

    pub fn is_on_curve(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                if x.field() != y.field() {
                    return false;
                }
                let a = self.coeffs_in(x.field());
                let lhs = &(y * y) + &(y * &(&(&a[0] * x) + &a[2]));
                lhs == Self::rhs(&a, x)
            }
        }
    }

    /// Validated affine point.
    pub fn point(&self, x: FieldElem, y: FieldElem) -> Result<Point> {
        let p = Point::Affine(x, y);
        if self.is_on_curve(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let a = self.coeffs_in(x.field());
                Point::Affine(x.clone(), &(&-y - &(&a[0] * x)) - &a[2])
            }
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let a = self.coeffs_in(x1.field());
        let [a1, a2, a3, a4, a6] = &*a;
        let (lambda, nu) = if x1 == x2 {
            // doubling, or P + (-P)
            let den = &(&(y1 + y2) + &(a1 * x2)) + a3;
            if den.is_zero() {
                return Point::Infinity;
            }
            let di = den.inv().expect("nonzero");
            let x1sq = x1 * x1;
            let num = &(&(&x1sq.scale(3) + &(a2 * x1).scale(2)) + a4) - &(a1 * y1);
            let nnum = &(&(&(a4 * x1) - &(&x1sq * x1)) + &a6.scale(2)) - &(a3 * y1);
            (&num * &di, &nnum * &di)
        } else {
            let dx = (x2 - x1).inv().expect("distinct x");
            let l = &(y2 - y1) * &dx;
            let nu = &(&(y1 * x2) - &(y2 * x1)) * &dx;
            (l, nu)
        };
        let x3 = &(&(&(&(&lambda * &lambda) + &(a1 * &lambda)) - a2) - x1) - x2;
        let y3 = &(&(&-(&lambda + a1) * &x3) - &nu) - a3;
        Point::Affine(x3, y3)
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    pub fn mul(&self, k: &BigUint, p: &Point) -> Point {
        let mut r = Point::Infinity;
        for i in (0..k.bits()).rev() {
            r = self.double(&r);
            if k.bit(i) {
                r = self.add(&r, p);
            }
        }
        r
    }

    /// Scalar multiplication by a signed integer.
    pub fn mul_i64(&self, k: i64, p: &Point) -> Point {
        let r = self.mul(&BigUint::from(k.unsigned_abs()), p);
        if k < 0 {
            self.neg(&r)
        } else {
            r
        }
    }

    /// Points with the given x-coordinate (zero, one or two), sorted.
    pub fn lift_x(&self, x: &FieldElem) -> Vec<Point> {
        let a = self.coeffs_in(x.field());
        let f = x.field();
        let h = &(&a[0] * x) + &a[2];
        let r = Self::rhs(&a, x);
        // y^2 + h y - r = 0
        let poly = Poly::new(vec![-&r, h, FieldElem::one(f)]);
        poly.roots()
            .into_iter()
            .map(|y| Point::Affine(x.clone(), y))
            .collect()
    }

    /// Random affine point over `f` (an extension of the curve's field).
    pub fn random_point<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R) -> Point {
        loop {
            let x = FieldElem::random(f, rng);
            let pts = self.lift_x(&x);
            if !pts.is_empty() {
                let i = rng.gen_range(0..pts.len());
                return pts[i].clone();
            }
        }
    }

    /// Number of affine points with the given x-coordinate, without root finding.
    pub(crate) fn count_at(&self, a: &[FieldElem; 5], x: &FieldElem) -> u64 {
        let h = &(&a[0] * x) + &a[2];
        let r = Self::rhs(a, x);
        if self.characteristic() == 2 {
            if h.is_zero() {
                1
            } else {
                let c = &r * &(&h * &h).inv().expect("nonzero");
                if c.trace() == 0 {
                    2
                } else {
                    0
                }
            }
        } else {
            let disc = &(&h * &h) + &r.scale(4);
            if disc.is_zero() {
                1
            } else if disc.is_square() {
                2
            } else {
                0
            }
        }
    }

    pub(crate) fn coeffs_over(&self, f: &Field) -> [FieldElem; 5] {
        self.coeffs_in(f).into_owned()
    }
}
