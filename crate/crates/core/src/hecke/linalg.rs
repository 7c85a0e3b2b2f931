//! Exact linear algebra over Q on integer matrices, fraction free.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Divides out the content and makes the first nonzero entry positive.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let neg = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in &mut v {
        *x /= &g;
        if neg {
            *x = -&*x;
        }
    }
    v
}

/// Reduced echelon form up to row scaling: returns the pivot columns, and
/// rows whose pivot entries are the only nonzeros in their columns.
fn echelon(m: &[Vec<BigInt>], ncols: usize) -> (IntMatrix, Vec<usize>) {
    let mut rows: IntMatrix = m
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len())
            .filter(|&k| !rows[k][c].is_zero())
            .min_by_key(|&k| rows[k][c].abs())
        else {
            continue;
        };
        rows.swap(r, k);
        let piv = rows[r][c].clone();
        for k in 0..rows.len() {
            if k == r || rows[k][c].is_zero() {
                continue;
            }
            let g = piv.gcd(&rows[k][c]);
            let (a, b) = (&piv / &g, &rows[k][c] / &g);
            let (head, tail) = if k < r {
                let (h, t) = rows.split_at_mut(r);
                (&mut h[k], &t[0])
            } else {
                let (h, t) = rows.split_at_mut(k);
                (&mut t[0], &h[r])
            };
            for (x, y) in head.iter_mut().zip(tail.iter()) {
                *x = &*x * &a - y * &b;
            }
            *head = primitive(std::mem::take(head));
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(m: &[Vec<BigInt>], ncols: usize) -> usize {
    echelon(m, ncols).1.len()
}

/// Primitive integer basis of {x : m x = 0}, one vector per non-pivot column
/// of the reduced echelon form. Computed modulo word-sized primes and lifted
/// by rational reconstruction; every lifted vector is checked exactly, with
/// fraction-free elimination as the fallback.
pub fn right_kernel(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    right_kernel_modular(m, ncols).unwrap_or_else(|| right_kernel_exact(m, ncols))
}

/// Fraction-free elimination over Z.
pub fn right_kernel_exact(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (rows, pivots) = echelon(m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let l = rows
        .iter()
        .zip(&pivots)
        .fold(BigInt::one(), |acc, (row, &c)| acc.lcm(&row[c]));
    (0..ncols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = l.clone();
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = -(&row[f] * &l) / &row[c];
            }
            primitive(v)
        })
        .collect()
}

pub fn transpose(m: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    (0..ncols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Columns of the basis matrix given as a list of vectors, as rows of a matrix
/// whose product with a coefficient vector is the combination.
pub fn columns(basis: &[Vec<BigInt>], n: usize) -> IntMatrix {
    (0..n)
        .map(|i| basis.iter().map(|v| v[i].clone()).collect())
        .collect()
}

/// Rank of a list of vectors in Q^n.
pub fn span_rank(vectors: &[Vec<BigInt>], n: usize) -> usize {
    rank(vectors, n)
}

/// Whether every vector of `inner` lies in the span of `outer`.
pub fn contained(inner: &[Vec<BigInt>], outer: &[Vec<BigInt>], n: usize) -> bool {
    let r = span_rank(outer, n);
    inner.iter().all(|v| {
        let mut all = outer.to_vec();
        all.push(v.clone());
        span_rank(&all, n) == r
    })
}

const Q0: u64 = (1 << 61) - 1;
const MAX_PRIMES: usize = 24;

fn mulm(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a, q - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, q);
        }
        b = mulm(b, b, q);
        e >>= 1;
    }
    r
}

/// Reduced row echelon form modulo the prime q: nonzero rows with leading 1,
/// and the pivot columns.
fn rref_mod(mut rows: Vec<Vec<u64>>, ncols: usize, q: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let pi = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = mulm(*x, pi, q);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if k != r && f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = (*x + q - mulm(f, *y, q)) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn reduce_big(m: &[Vec<BigInt>], q: u64) -> Vec<Vec<u64>> {
    let qb = BigInt::from(q);
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.mod_floor(&qb).to_u64().expect("reduced below q"))
                .collect()
        })
        .collect()
}

/// Rank of an integer matrix modulo the prime 2^61 - 1.
pub fn rank_mod_p(m: &[Vec<i64>], ncols: usize) -> usize {
    let rows = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(Q0 as i64) as u64).collect()).collect();
    rref_mod(rows, ncols, Q0).1.len()
}

/// Primes below 2^61 - 1, descending.
fn word_primes() -> impl Iterator<Item = u64> {
    (0..).map(|k| Q0 - 2 * k).filter(|&q| crate::arith::fp::is_prime(q))
}

/// n/d with |n|, d <= sqrt(M/2) and n = d r mod M, if any.
fn rational_reconstruction(r: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), r.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &qt * &r1);
        (t0, t1) = (t1.clone(), &t0 - &qt * &t1);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    (n.gcd(&d).is_one()).then_some((n, d))
}

/// Kernel vectors normalized with a 1 at their free column, modulo q.
fn kernel_mod(m: &[Vec<BigInt>], ncols: usize, q: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let (rows, pivots) = rref_mod(reduce_big(m, q), ncols, q);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let vecs = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = (q - row[f]) % q;
            }
            v
        })
        .collect();
    (free, vecs)
}

fn right_kernel_modular(m: &[Vec<BigInt>], ncols: usize) -> Option<Vec<Vec<BigInt>>> {
    if m.is_empty() {
        return Some(
            (0..ncols)
                .map(|i| (0..ncols).map(|j| BigInt::from(u8::from(i == j))).collect())
                .collect(),
        );
    }
    let mut modulus = BigInt::one();
    let mut free: Option<Vec<usize>> = None;
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    for q in word_primes().take(MAX_PRIMES) {
        let (f, vecs) = kernel_mod(m, ncols, q);
        match &free {
            // a prime where the rank drops is unlucky; skip it
            Some(f0) if f.len() > f0.len() => continue,
            Some(f0) if f == *f0 => {}
            // the earlier primes were unlucky: start again
            _ => {
                free = Some(f);
                modulus = BigInt::one();
                acc = vecs.iter().map(|v| vec![BigInt::zero(); v.len()]).collect();
            }
        }
        let qb = BigInt::from(q);
        let inv = inv_mod((&modulus % &qb).to_u64().expect("small"), q);
        for (a, v) in acc.iter_mut().zip(&vecs) {
            for (x, &r) in a.iter_mut().zip(v) {
                // x' = x + modulus * ((r - x) / modulus mod q)
                let xm = x.mod_floor(&qb).to_u64().expect("small");
                let t = mulm((r + q - xm) % q, inv, q);
                *x += &modulus * t;
            }
        }
        modulus *= &qb;
        if let Some(basis) = lift(m, &acc, &modulus) {
            return Some(basis);
        }
    }
    None
}

/// Rational reconstruction of each vector, cleared to primitive integers,
/// kept only if all of them are exact kernel vectors.
fn lift(m: &[Vec<BigInt>], acc: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(acc.len());
    for v in acc {
        let fracs: Vec<(BigInt, BigInt)> =
            v.iter().map(|x| rational_reconstruction(x, modulus)).collect::<Option<_>>()?;
        let l = fracs.iter().fold(BigInt::one(), |l, (_, d)| l.lcm(d));
        let w = primitive(fracs.iter().map(|(n, d)| n * (&l / d)).collect());
        if !mat_vec(m, &w).iter().all(Zero::is_zero) {
            return None;
        }
        out.push(w);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernels() {
        let m = to_big(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = right_kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
        }
        let m = to_big(&[vec![2, 1], vec![1, 1]]);
        assert!(right_kernel(&m, 2).is_empty());
        let m = to_big(&[vec![-2, 3], vec![2, -3]]);
        assert_eq!(right_kernel(&m, 2), vec![big(&[3, 2])]);
        assert_eq!(right_kernel(&[], 2).len(), 2);
    }

    #[test]
    fn modular_kernel_matches_exact() {
        // entries large enough to need several primes
        let big_entry = BigInt::from(3u32).pow(90);
        let m = vec![
            vec![big_entry.clone(), BigInt::from(1), BigInt::from(0), BigInt::from(-7)],
            vec![BigInt::from(2), -&big_entry, BigInt::from(5), BigInt::from(0)],
        ];
        let k = right_kernel(&m, 4);
        assert_eq!(k, right_kernel_exact(&m, 4));
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
        }
        let r = rational_reconstruction(&BigInt::from(4), &BigInt::from(7 * 11 * 13));
        // 4 = n/d mod 1001 with small n, d
        let (n, d) = r.unwrap();
        assert_eq!((&d * BigInt::from(4) - &n).mod_floor(&BigInt::from(1001)), BigInt::zero());
    }

    #[test]
    fn ranks_agree() {
        let m = vec![
            vec![3, 6, 9, 1],
            vec![1, 2, 3, 0],
            vec![0, 0, 0, 1],
            vec![5, 7, 1, 1],
        ];
        assert_eq!(rank(&to_big(&m), 4), 3);
        assert_eq!(rank_mod_p(&m, 4), 3);
        assert!(contained(&[big(&[4, 8, 12, 1])], &to_big(&m), 4));
        assert!(!contained(&[big(&[0, 1, 0, 0])], &to_big(&m[..2]), 4));
    }
}
