use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::fp::{gcd, inv_mod_n};
use crate::error::{Error, Result};

/// A 2x2 matrix over Z/NZ acting on the right of row vectors of points:
/// (P, Q) [[a, b], [c, d]] = (aP + cQ, bP + dQ).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModMatrix {
    n: u32,
    e: [u32; 4],
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]] mod {}",
            self.e[0], self.e[1], self.e[2], self.e[3], self.n
        )
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

impl ModMatrix {
    /// Invertible matrix mod n from integer entries.
    pub fn new(n: u32, a: i64, b: i64, c: i64, d: i64) -> Result<ModMatrix> {
        let m = Self::raw(n, a, b, c, d);
        if n == 0 || !m.is_invertible() {
            return Err(Error::NotInvertible(n));
        }
        Ok(m)
    }

    /// Matrix mod n without the invertibility check (used for kernels of
    /// reduction and similar intermediate values).
    pub fn raw(n: u32, a: i64, b: i64, c: i64, d: i64) -> ModMatrix {
        let r = |v: i64| v.rem_euclid(i64::from(n.max(1))) as u32;
        ModMatrix {
            n,
            e: [r(a), r(b), r(c), r(d)],
        }
    }

    pub fn identity(n: u32) -> ModMatrix {
        Self::raw(n, 1, 0, 0, 1)
    }

    pub fn scalar(n: u32, s: i64) -> ModMatrix {
        Self::raw(n, s, 0, 0, s)
    }

    pub fn diag(n: u32, a: i64, d: i64) -> ModMatrix {
        Self::raw(n, a, 0, 0, d)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> [u32; 4] {
        self.e
    }

    pub fn a(&self) -> u32 {
        self.e[0]
    }
    pub fn b(&self) -> u32 {
        self.e[1]
    }
    pub fn c(&self) -> u32 {
        self.e[2]
    }
    pub fn d(&self) -> u32 {
        self.e[3]
    }

    pub fn det(&self) -> u32 {
        let n = u64::from(self.n);
        let [a, b, c, d] = self.e.map(u64::from);
        ((a * d % n + n - b * c % n) % n) as u32
    }

    pub fn is_invertible(&self) -> bool {
        gcd(u64::from(self.det()), u64::from(self.n)) == 1
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        assert_eq!(self.n, o.n, "{}", Error::ModulusMismatch(self.n, o.n));
        let n = u64::from(self.n);
        let [a, b, c, d] = self.e.map(u64::from);
        let [e, f, g, h] = o.e.map(u64::from);
        ModMatrix {
            n: self.n,
            e: [
                ((a * e + b * g) % n) as u32,
                ((a * f + b * h) % n) as u32,
                ((c * e + d * g) % n) as u32,
                ((c * f + d * h) % n) as u32,
            ],
        }
    }

    pub fn inv(&self) -> ModMatrix {
        let n = u64::from(self.n);
        let di = inv_mod_n(u64::from(self.det()), n).expect("invertible matrix");
        let [a, b, c, d] = self.e.map(u64::from);
        let m = |x: u64| (x % n * di % n) as u32;
        ModMatrix {
            n: self.n,
            e: [m(d), m(n - b), m(n - c), m(a)],
        }
    }

    pub fn pow(&self, mut k: u64) -> ModMatrix {
        let mut r = Self::identity(self.n);
        let mut b = *self;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        r
    }

    pub fn transpose(&self) -> ModMatrix {
        let [a, b, c, d] = self.e;
        ModMatrix {
            n: self.n,
            e: [a, c, b, d],
        }
    }

    /// Reduction to a divisor m of the modulus.
    pub fn reduce(&self, m: u32) -> ModMatrix {
        assert!(
            m > 0 && self.n.is_multiple_of(m),
            "{}",
            Error::ModulusMismatch(self.n, m)
        );
        ModMatrix {
            n: m,
            e: self.e.map(|x| x % m),
        }
    }

    /// Integer code ((a N + b) N + c) N + d; ordering by code is the
    /// lexicographic ordering of entry tuples.
    pub fn code(&self) -> u32 {
        let n = self.n;
        ((self.e[0] * n + self.e[1]) * n + self.e[2]) * n + self.e[3]
    }

    pub fn from_code(n: u32, code: u32) -> ModMatrix {
        let d = code % n;
        let c = (code / n) % n;
        let b = (code / n / n) % n;
        let a = code / n / n / n;
        ModMatrix { n, e: [a, b, c, d] }
    }

    pub fn order(&self) -> u64 {
        let id = Self::identity(self.n);
        let mut m = *self;
        let mut k = 1;
        while m != id {
            m = m.mul(self);
            k += 1;
        }
        k
    }
}

/// |GL2(Z/NZ)| = N^4 prod_{q | N} (1 - 1/q)(1 - 1/q^2).
pub fn gl2_order(n: u32) -> u64 {
    let mut r = u64::from(n).pow(4);
    for q in crate::arith::fp::prime_divisors(u64::from(n)) {
        r = r / q * (q - 1);
        r = r / (q * q) * (q * q - 1);
    }
    r
}

/// All of GL2(Z/NZ) in increasing code order.
pub fn gl2_elements(n: u32) -> Vec<ModMatrix> {
    let n4 = n.pow(4);
    (0..n4)
        .map(|c| ModMatrix::from_code(n, c))
        .filter(ModMatrix::is_invertible)
        .collect()
}
