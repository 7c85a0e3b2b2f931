//! Finite fields F_{p^k} = F_p[t]/(f) with f monic irreducible of degree k.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, Mutex};

use num::{BigUint, Zero};
use rand::Rng;

use super::fp::{self, add_mod, mul_mod, neg_mod, sub_mod};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct FieldDesc {
    p: u64,
    k: usize,
    /// Monic modulus, little-endian, length k + 1.
    modulus: Vec<u64>,
    size: BigUint,
}

pub type Field = Arc<FieldDesc>;

/// Default-modulus fields are shared so equal fields usually compare by pointer.
static DEFAULT_FIELDS: LazyLock<Mutex<HashMap<(u64, usize), Field>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

impl FieldDesc {
    /// Creates F_{p^k}. Without an explicit modulus the least monic
    /// irreducible polynomial is used, ordering candidates by the integer
    /// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Field> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.iter().map(|c| c % p).collect();
                fp::poly_trim(&mut m);
                if m.len() != k + 1 {
                    return Err(Error::InvalidModulus(format!("expected degree {k}")));
                }
                let li = fp::inv_mod(m[k], p);
                for c in m.iter_mut() {
                    *c = mul_mod(*c, li, p);
                }
                if !fp::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => {
                let mut cache = DEFAULT_FIELDS.lock().expect("field cache poisoned");
                let f = cache.entry((p, k)).or_insert_with(|| {
                    Arc::new(FieldDesc {
                        p,
                        k,
                        modulus: Self::least_irreducible(p, k),
                        size: fp::big_pow(p, k),
                    })
                });
                return Ok(f.clone());
            }
        };
        Ok(Arc::new(FieldDesc {
            p,
            k,
            modulus,
            size: fp::big_pow(p, k),
        }))
    }

    /// Prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
        if k == 1 {
            return vec![0, 1];
        }
        let mut low = vec![0u64; k];
        loop {
            let mut f = low.clone();
            f.push(1);
            if fp::is_irreducible(&f, p) {
                return f;
            }
            // increment the counter, c_0 fastest
            for c in low.iter_mut() {
                *c += 1;
                if *c == p {
                    *c = 0;
                } else {
                    break;
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements p^k.
    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn size_bits(&self) -> u64 {
        self.size.bits()
    }
}

#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    c: Vec<u64>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Lexicographic on the coefficient vector, constant term first.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FieldElem {
    pub fn zero(field: &Field) -> Self {
        FieldElem {
            field: field.clone(),
            c: vec![0; field.k],
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_u64(field, 1)
    }

    pub fn from_u64(field: &Field, v: u64) -> Self {
        let mut e = Self::zero(field);
        e.c[0] = v % field.p;
        e
    }

    pub fn from_i64(field: &Field, v: i64) -> Self {
        let mut e = Self::zero(field);
        e.c[0] = v.rem_euclid(field.p as i64) as u64;
        e
    }

    /// Element with the given coefficients (constant first); extra
    /// coefficients beyond the degree are reduced by the modulus.
    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Self {
        let p = field.p;
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
        if c.len() < field.k {
            c.resize(field.k, 0);
        }
        FieldElem {
            field: field.clone(),
            c: reduce(field, c),
        }
    }

    /// The class of t, a root of the modulus.
    pub fn generator(field: &Field) -> Self {
        Self::from_coeffs(field, &[0, 1])
    }

    /// Element indexed by `n` in base p (coefficient of t^i is digit i).
    pub fn from_index(field: &Field, mut n: u128) -> Self {
        let mut e = Self::zero(field);
        for i in 0..field.k {
            e.c[i] = (n % field.p as u128) as u64;
            n /= field.p as u128;
        }
        e
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Self {
        let c = (0..field.k).map(|_| rng.gen_range(0..field.p)).collect();
        FieldElem {
            field: field.clone(),
            c,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Returns the value when the element lies in the prime field.
    pub fn as_prime_field(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn same_field(&self, other: &FieldElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &FieldElem) {
        assert!(self.same_field(other), "{}", Error::FieldMismatch);
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * other)
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    pub fn scale(&self, s: u64) -> FieldElem {
        let p = self.field.p;
        let s = s % p;
        FieldElem {
            field: self.field.clone(),
            c: self.c.iter().map(|&x| mul_mod(x, s, p)).collect(),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        if self.field.k == 1 {
            return Ok(FieldElem {
                field: self.field.clone(),
                c: vec![fp::inv_mod(self.c[0], p)],
            });
        }
        // extended Euclid on (modulus, a)
        let mut a = self.c.clone();
        fp::poly_trim(&mut a);
        let mut r0 = self.field.modulus.clone();
        let mut r1 = a;
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s2 = fp::poly_sub(&s0, &fp::poly_mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant
        let ci = fp::inv_mod(r0[0], p);
        let mut c: Vec<u64> = s0.iter().map(|&x| mul_mod(x, ci, p)).collect();
        c.resize(self.field.k, 0);
        Ok(FieldElem {
            field: self.field.clone(),
            c,
        })
    }

    pub fn pow(&self, e: &BigUint) -> FieldElem {
        let mut result = FieldElem::one(&self.field);
        for i in (0..e.bits()).rev() {
            result = result.square();
            if e.bit(i) {
                result = &result * self;
            }
        }
        result
    }

    pub fn pow_u64(&self, e: u64) -> FieldElem {
        self.pow(&BigUint::from(e))
    }

    /// a^(p^m).
    pub fn frobenius_pow(&self, m: usize) -> FieldElem {
        let m = m % self.field.k;
        let mut r = self.clone();
        let p = BigUint::from(self.field.p);
        for _ in 0..m {
            r = r.pow(&p);
        }
        r
    }

    pub fn is_square(&self) -> bool {
        if self.is_zero() || self.field.p == 2 {
            return true;
        }
        let e = (&self.field.size - 1u32) >> 1;
        self.pow(&e).is_one()
    }

    /// A square root, choosing the lexicographically least of the two.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_square() {
            return None;
        }
        if self.field.p == 2 {
            // squaring is a bijection: sqrt(a) = a^(q/2)
            let e = &self.field.size >> 1;
            return Some(self.pow(&e));
        }
        let f = super::Poly::new(vec![
            -self,
            FieldElem::zero(&self.field),
            FieldElem::one(&self.field),
        ]);
        f.roots().into_iter().next()
    }

    /// Multiplicative order (brute force over divisors of q - 1, which must fit in u64).
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let q1: u64 = (&self.field.size - 1u32).try_into().ok()?;
        let mut n = q1;
        for (r, _) in fp::factor(q1) {
            while n.is_multiple_of(r) && self.pow_u64(n / r).is_one() {
                n /= r;
            }
        }
        Some(n)
    }

    /// Absolute trace to F_p.
    pub fn trace(&self) -> u64 {
        let mut acc = self.clone();
        let mut x = self.clone();
        for _ in 1..self.field.k {
            x = x.frobenius_pow(1);
            acc = &acc + &x;
        }
        acc.c[0]
    }
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp::poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    let li = fp::inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul_mod(r[top], li, p);
        q[top - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = sub_mod(r[idx], mul_mod(c, bi, p), p);
        }
        r.pop();
        fp::poly_trim(&mut r);
    }
    fp::poly_trim(&mut q);
    (q, r)
}

/// Reduces a coefficient vector of any length modulo the field modulus.
fn reduce(field: &FieldDesc, mut c: Vec<u64>) -> Vec<u64> {
    let k = field.k;
    let p = field.p;
    if k == 1 {
        // modulus is t: only the constant term survives
        c.truncate(1);
        return c;
    }
    let m = &field.modulus;
    while c.len() > k {
        let top = c.len() - 1;
        let lead = c[top];
        if lead != 0 {
            for i in 0..k {
                let idx = top - k + i;
                c[idx] = sub_mod(c[idx], mul_mod(lead, m[i], p), p);
            }
        }
        c.pop();
    }
    c
}

fn mul_raw(field: &FieldDesc, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = field.p;
    let k = field.k;
    if k == 1 {
        return vec![mul_mod(a[0], b[0], p)];
    }
    let mut acc = vec![0u128; 2 * k - 1];
    if p < (1u64 << 32) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u128;
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x * y as u128;
            }
        }
    } else {
        let pp = p as u128;
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + (x as u128 * y as u128) % pp) % pp;
            }
        }
    }
    let c: Vec<u64> = acc.into_iter().map(|v| (v % p as u128) as u64).collect();
    reduce(field, c)
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.field.p;
        FieldElem {
            field: self.field.clone(),
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.field.p;
        FieldElem {
            field: self.field.clone(),
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.check(rhs);
        FieldElem {
            field: self.field.clone(),
            c: mul_raw(&self.field, &self.c, &rhs.c),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.field.p;
        FieldElem {
            field: self.field.clone(),
            c: self.c.iter().map(|&a| neg_mod(a, p)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &'a FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Least element of exact multiplicative order `n` (in the `from_index` order).
pub fn primitive_root_of_unity(field: &Field, n: u64) -> Result<FieldElem> {
    let q1 = field.size() - 1u32;
    if n == 0 || !(&q1 % n).is_zero() {
        return Err(Error::NoRootOfUnity {
            p: field.p,
            k: field.k,
            n,
        });
    }
    if n == 1 {
        return Ok(FieldElem::one(field));
    }
    let cof = &q1 / n;
    let primes = fp::prime_divisors(n);
    let mut idx: u128 = 1;
    loop {
        let cand = FieldElem::from_index(field, idx);
        idx += 1;
        if cand.is_zero() {
            continue;
        }
        let z = cand.pow(&cof);
        if !z.pow_u64(n).is_one() {
            continue;
        }
        if primes.iter().all(|r| !z.pow_u64(n / r).is_one()) {
            // z has order n; but the least such element may differ, so
            // scan in index order for the first element of order n.
            return Ok(least_of_order(field, n, &z));
        }
    }
}

fn least_of_order(field: &Field, n: u64, z: &FieldElem) -> FieldElem {
    // all elements of order n are z^j with gcd(j, n) = 1
    let mut best: Option<FieldElem> = None;
    let mut w = FieldElem::one(field);
    for j in 1..=n {
        w = &w * z;
        if fp::gcd(j, n) == 1
            && best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w.clone());
            }
    }
    best.expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f121_i_squared() {
        let f = FieldDesc::new(11, 2, Some(&[1, 0, 1])).unwrap();
        let i = FieldElem::generator(&f);
        assert_eq!(&i * &i, FieldElem::from_i64(&f, -1));
        assert_eq!(FieldElem::from_i64(&f, -1).sqrt(), Some(i));
    }

    #[test]
    fn default_modulus_is_deterministic() {
        let a = FieldDesc::new(11, 2, None).unwrap();
        let b = FieldDesc::new(11, 2, None).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.modulus(), &[1, 0, 1]);
        let f16 = FieldDesc::new(2, 4, None).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn reducible_and_composite_rejected() {
        assert_eq!(
            FieldDesc::new(11, 2, Some(&[10, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(11)
        );
        assert_eq!(FieldDesc::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn inverse_and_fermat() {
        let f = FieldDesc::new(7, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q1 = f.size() - 1u32;
        for _ in 0..50 {
            let a = FieldElem::random(&f, &mut rng);
            if a.is_zero() {
                assert_eq!(a.inv().unwrap_err(), Error::DivisionByZero);
                continue;
            }
            assert!((&a * &a.inv().unwrap()).is_one());
            assert!(a.pow(&q1).is_one());
            assert_eq!(a.frobenius_pow(3), a);
        }
    }

    #[test]
    fn sqrt_of_square() {
        for (p, k) in [(11, 2), (2, 4), (13, 3), (3, 2)] {
            let f = FieldDesc::new(p, k, None).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..30 {
                let a = FieldElem::random(&f, &mut rng);
                let r = a.square().sqrt().unwrap();
                assert!(r == a || r == -&a);
                assert!(r <= -&r || p == 2);
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let f16 = FieldDesc::new(2, 4, None).unwrap();
        let z = primitive_root_of_unity(&f16, 5).unwrap();
        assert!(z.pow_u64(5).is_one());
        assert!(!z.is_one());
        assert_eq!(z.multiplicative_order(), Some(5));
        let f121 = FieldDesc::new(11, 2, None).unwrap();
        let i = primitive_root_of_unity(&f121, 4).unwrap();
        assert_eq!(i.multiplicative_order(), Some(4));
        assert!(i == FieldElem::generator(&f121) || i == -FieldElem::generator(&f121));
        let f11 = FieldDesc::prime(11).unwrap();
        assert!(primitive_root_of_unity(&f11, 7).is_err());
    }

    #[test]
    #[should_panic]
    fn mismatched_fields_panic() {
        let a = FieldElem::one(&FieldDesc::prime(5).unwrap());
        let b = FieldElem::one(&FieldDesc::prime(7).unwrap());
        let _ = &a + &b;
    }

    #[test]
    fn try_ops_report_mismatch() {
        let a = FieldElem::one(&FieldDesc::prime(5).unwrap());
        let b = FieldElem::one(&FieldDesc::prime(7).unwrap());
        assert_eq!(a.try_mul(&b).unwrap_err(), Error::FieldMismatch);
    }
}
