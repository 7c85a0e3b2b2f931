//! Embeddings F_{p^k} -> F_{p^K} for k | K, and descent back to the subfield.

use super::field::{Field, FieldElem};
use super::fp::{inv_mod, mul_mod, sub_mod};
use super::poly::Poly;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

static CACHE: LazyLock<Mutex<HashMap<(Field, Field), Embedding>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// A field embedding determined by the image of the generator of the
/// small field: the least root of its modulus in the big field.
#[derive(Clone, Debug)]
pub struct Embedding {
    from: Field,
    to: Field,
    /// Powers g^0 .. g^{k-1} of the generator image.
    powers: Vec<FieldElem>,
    /// Rows of the big-field coordinate system used for descent, and the
    /// inverse of the k x k matrix they select.
    pivot_rows: Vec<usize>,
    inverse: Vec<Vec<u64>>,
}

impl Embedding {
    /// The canonical embedding; results are memoised per field pair.
    pub fn new(from: &Field, to: &Field) -> Result<Embedding> {
        let key = (from.clone(), to.clone());
        if let Some(e) = CACHE.lock().expect("embedding cache poisoned").get(&key) {
            return Ok(e.clone());
        }
        let e = Self::compute(from, to)?;
        CACHE
            .lock()
            .expect("embedding cache poisoned")
            .insert(key, e.clone());
        Ok(e)
    }

    fn compute(from: &Field, to: &Field) -> Result<Embedding> {
        let (k, big_k) = (from.degree(), to.degree());
        if from.characteristic() != to.characteristic() || big_k % k != 0 {
            return Err(Error::EmbeddingDegree { from: k, to: big_k });
        }
        let gen = if k == 1 {
            FieldElem::zero(to)
        } else {
            let m = Poly::new(
                from.modulus()
                    .iter()
                    .map(|&c| FieldElem::from_u64(to, c))
                    .collect(),
            );
            m.roots()
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("modulus has no root in extension".into()))?
        };
        Ok(Self::with_generator_image(from, to, gen))
    }

    /// The identity embedding of a field into itself.
    pub fn identity(field: &Field) -> Embedding {
        Self::with_generator_image(field, field, FieldElem::generator(field))
    }

    fn with_generator_image(from: &Field, to: &Field, gen: FieldElem) -> Embedding {
        let k = from.degree();
        let p = from.characteristic();
        let mut powers = Vec::with_capacity(k);
        let mut g = FieldElem::one(to);
        for _ in 0..k {
            powers.push(g.clone());
            g = &g * &gen;
        }
        // Gaussian elimination on the K x k matrix whose columns are the powers.
        let big_k = to.degree();
        let mut rows: Vec<Vec<u64>> = (0..big_k)
            .map(|r| powers.iter().map(|v| v.coeffs()[r]).collect())
            .collect();
        let mut pivot_rows = Vec::new();
        let mut used = vec![false; big_k];
        // track combination of original rows: we need inverse of selected rows
        let mut col = 0;
        while col < k {
            let r = (0..big_k)
                .find(|&r| !used[r] && rows[r][col] != 0)
                .expect("powers independent");
            used[r] = true;
            pivot_rows.push(r);
            let inv = inv_mod(rows[r][col], p);
            for rr in 0..big_k {
                if rr != r && rows[rr][col] != 0 {
                    let f = mul_mod(rows[rr][col], inv, p);
                    for c in 0..k {
                        let v = mul_mod(f, rows[r][c], p);
                        rows[rr][c] = sub_mod(rows[rr][c], v, p);
                    }
                }
            }
            col += 1;
        }
        let orig: Vec<Vec<u64>> = pivot_rows
            .iter()
            .map(|&r| powers.iter().map(|v| v.coeffs()[r]).collect())
            .collect();
        let inverse = invert_square(&orig, p);
        Embedding {
            from: from.clone(),
            to: to.clone(),
            powers,
            pivot_rows,
            inverse,
        }
    }

    pub fn source(&self) -> &Field {
        &self.from
    }

    pub fn target(&self) -> &Field {
        &self.to
    }

    pub fn apply(&self, a: &FieldElem) -> FieldElem {
        assert!(**a.field() == *self.from, "{}", Error::FieldMismatch);
        let mut acc = FieldElem::zero(&self.to);
        for (c, g) in a.coeffs().iter().zip(&self.powers) {
            if *c != 0 {
                acc = &acc + &g.scale(*c);
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        if f.is_zero() {
            return Poly::zero(&self.to);
        }
        Poly::new(f.coeffs().iter().map(|c| self.apply(c)).collect())
    }

    /// Preimage of `a` if it lies in the image of the embedding.
    pub fn descend(&self, a: &FieldElem) -> Option<FieldElem> {
        let p = self.from.characteristic();
        let rhs: Vec<u64> = self.pivot_rows.iter().map(|&r| a.coeffs()[r]).collect();
        let b: Vec<u64> = self
            .inverse
            .iter()
            .map(|row| {
                row.iter().zip(&rhs).fold(0u64, |acc, (&x, &y)| {
                    super::fp::add_mod(acc, mul_mod(x, y, p), p)
                })
            })
            .collect();
        let cand = FieldElem::from_coeffs(&self.from, &b);
        if &self.apply(&cand) == a {
            Some(cand)
        } else {
            None
        }
    }

    pub fn descend_poly(&self, f: &Poly) -> Option<Poly> {
        if f.is_zero() {
            return Some(Poly::zero(&self.from));
        }
        let c: Option<Vec<FieldElem>> = f.coeffs().iter().map(|c| self.descend(c)).collect();
        c.map(Poly::new)
    }
}

fn invert_square(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).expect("invertible");
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p);
        for c in 0..2 * n {
            a[col][c] = mul_mod(a[col][c], inv, p);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = mul_mod(f, a[col][c], p);
                    a[r][c] = sub_mod(a[r][c], v, p);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDesc;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embed_is_ring_homomorphism() {
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let f16 = FieldDesc::new(2, 4, None).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        assert!(e.apply(&FieldElem::zero(&f4)).is_zero());
        assert!(e.apply(&FieldElem::one(&f4)).is_one());
        let g = FieldElem::generator(&f4);
        assert_eq!(e.apply(&g).multiplicative_order(), Some(3));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f9 = FieldDesc::new(3, 2, None).unwrap();
        let f729 = FieldDesc::new(3, 6, None).unwrap();
        let e2 = Embedding::new(&f9, &f729).unwrap();
        for _ in 0..100 {
            let a = FieldElem::random(&f9, &mut rng);
            let b = FieldElem::random(&f9, &mut rng);
            assert_eq!(e2.apply(&(&a * &b)), &e2.apply(&a) * &e2.apply(&b));
            assert_eq!(e2.apply(&(&a + &b)), &e2.apply(&a) + &e2.apply(&b));
            assert_eq!(e2.descend(&e2.apply(&a)), Some(a));
        }
    }

    #[test]
    fn descend_rejects_non_subfield_elements() {
        let f9 = FieldDesc::new(3, 2, None).unwrap();
        let f81 = FieldDesc::new(3, 4, None).unwrap();
        let e = Embedding::new(&f9, &f81).unwrap();
        let t = FieldElem::generator(&f81);
        assert!(e.descend(&t).is_none());
    }

    #[test]
    fn degree_must_divide() {
        let f8 = FieldDesc::new(2, 3, None).unwrap();
        let f16 = FieldDesc::new(2, 4, None).unwrap();
        assert!(matches!(
            Embedding::new(&f8, &f16),
            Err(Error::EmbeddingDegree { .. })
        ));
    }
}
