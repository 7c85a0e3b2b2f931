//! Univariate polynomials over F_{p^k} and root finding.

use std::fmt;

use num::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldElem};

/// Dense polynomial, little-endian, no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    c: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl Poly {
    /// Builds a polynomial from coefficients; the vector must be nonempty so
    /// the field is known (use [`Poly::zero`] otherwise).
    pub fn new(c: Vec<FieldElem>) -> Poly {
        let field = c[0].field().clone();
        let mut p = Poly { field, c };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn constant(a: FieldElem) -> Poly {
        Poly::new(vec![a])
    }

    /// The monic linear polynomial x - a.
    pub fn linear(a: &FieldElem) -> Poly {
        Poly::new(vec![-a, FieldElem::one(a.field())])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(vec![FieldElem::zero(field), FieldElem::one(field)])
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.c
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.c.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        let mut r = Poly {
            field: self.field.clone(),
            c,
        };
        r.trim();
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        let mut r = Poly {
            field: self.field.clone(),
            c,
        };
        r.trim();
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut c = vec![FieldElem::zero(&self.field); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        let mut r = Poly {
            field: self.field.clone(),
            c,
        };
        r.trim();
        r
    }

    pub fn scale(&self, s: &FieldElem) -> Poly {
        let mut r = Poly {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * s).collect(),
        };
        r.trim();
        r
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let li = d.c[dd].inv().expect("nonzero lead");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(&self.field), self.clone());
        }
        let mut q = vec![FieldElem::zero(&self.field); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = &r[top] * &li;
            if !c.is_zero() {
                for (i, di) in d.c.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = &r[idx] - &(&c * di);
                }
            }
            q[top - dd] = c;
            r.pop();
        }
        let mut qp = Poly {
            field: self.field.clone(),
            c: q,
        };
        qp.trim();
        let mut rp = Poly {
            field: self.field.clone(),
            c: r,
        };
        rp.trim();
        (qp, rp)
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let c = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| a.scale(i as u64 + 1))
            .collect();
        let mut r = Poly {
            field: self.field.clone(),
            c,
        };
        r.trim();
        r
    }

    /// Horner evaluation at an element of the same field.
    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(&self.field);
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// self^e mod m.
    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let base = self.rem(m);
        let mut result = Poly::constant(FieldElem::one(&self.field)).rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Product of (x - r) over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElem]) -> Poly {
        let mut f = Poly::constant(FieldElem::one(field));
        for r in roots {
            f = f.mul(&Poly::linear(r));
        }
        f
    }

    /// Distinct roots in the coefficient field, sorted ascending.
    pub fn roots(&self) -> Vec<FieldElem> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let q = self.field.size().clone();
        let xq = x.powmod(&q, &f);
        let g = f.gcd(&xq.sub(&x));
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        split_linear(&g, &mut rng, &mut out);
        out.sort();
        out
    }
}

/// Splits a squarefree product of distinct linear factors (equal-degree
/// factorisation with degree 1).
fn split_linear(g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElem>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let g = g.monic();
            out.push(-&g.c[0]);
            return;
        }
        _ => {}
    }
    let field = g.field.clone();
    let p = field.characteristic();
    let k = field.degree();
    loop {
        let a = FieldElem::random(&field, rng);
        let h = if p == 2 {
            // trace map sum_{i<k} (a x)^(2^i) mod g
            let mut t = Poly::new(vec![FieldElem::zero(&field), a]).rem(g);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (field.size() - 1u32) >> 1;
            let base = Poly::new(vec![a, FieldElem::one(&field)]);
            base.powmod(&e, g)
                .sub(&Poly::constant(FieldElem::one(&field)))
        };
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) != g.degree() {
            let (other, _) = g.divrem(&d);
            split_linear(&d, rng, out);
            split_linear(&other, rng, out);
            return;
        }
    }
}
