//! Supersingular j-invariants by isogeny closure.

use std::collections::BTreeMap;

use num::rational::Ratio;

use crate::arith::fp::is_prime;
use crate::arith::FieldElem;
use crate::curve::{
    automorphisms, curve_from_j, ell_kernels, fp2, is_supersingular, supersingular_model, velu,
    Curve,
};
use crate::error::{Error, Result};

/// A supersingular j-invariant with its canonical model over F_{p^2}.
#[derive(Clone, Debug)]
pub struct SupersingularJ {
    pub j: FieldElem,
    pub curve: Curve,
    /// |Aut(E)| over the algebraic closure.
    pub aut_order: usize,
}

/// Eichler mass (p - 1)/12.
pub fn eichler_mass(p: u64) -> Ratio<i64> {
    Ratio::new(p as i64 - 1, 12)
}

fn seed_j(p: u64) -> Result<FieldElem> {
    let f = fp2(p)?;
    if p <= 3 || p % 3 == 2 {
        return Ok(FieldElem::zero(&f));
    }
    if p % 4 == 3 {
        return Ok(FieldElem::from_u64(&f, 1728));
    }
    let fp = crate::arith::FieldDesc::new(p, 1, None)?;
    (0..p)
        .map(|j| FieldElem::from_u64(&fp, j))
        .find(|j| is_supersingular(&curve_from_j(&fp, j)))
        .map(|j| FieldElem::from_u64(&f, j.coeffs()[0]))
        .ok_or(Error::NotSupersingular)
}

/// Neighbours of j in the small-degree isogeny graph.
fn neighbours(e: &Curve, ell: u64) -> Result<Vec<FieldElem>> {
    ell_kernels(e, ell)?
        .iter()
        .map(|k| Ok(velu(e, &k.generator, ell)?.codomain.j_invariant()))
        .collect()
}

/// All supersingular j-invariants in F_{p^2}, sorted, each with its
/// canonical model. The result is certified by the mass formula.
pub fn ss_j_enumerate(p: u64) -> Result<Vec<SupersingularJ>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ell = if p == 2 { 3 } else { 2 };
    let start = seed_j(p)?;
    let mut seen: BTreeMap<FieldElem, Curve> = BTreeMap::new();
    let mut queue = vec![start];
    while let Some(j) = queue.pop() {
        if seen.contains_key(&j) {
            continue;
        }
        let e = supersingular_model(&j)?;
        for k in neighbours(&e, ell)? {
            if !seen.contains_key(&k) {
                queue.push(k);
            }
        }
        seen.insert(j, e);
    }
    let out: Vec<SupersingularJ> = seen
        .into_iter()
        .map(|(j, curve)| {
            let aut_order = automorphisms(&curve).len();
            SupersingularJ {
                j,
                curve,
                aut_order,
            }
        })
        .collect();
    let mass: Ratio<i64> = out.iter().map(|s| Ratio::new(2, s.aut_order as i64)).sum();
    if mass != eichler_mass(p) {
        return Err(Error::MassMismatch {
            found: mass.to_string(),
            expected: eichler_mass(p).to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let s = ss_j_enumerate(11).unwrap();
        let js: Vec<u64> = s.iter().map(|x| x.j.coeffs()[0]).collect();
        assert_eq!(js, vec![0, 1]);
        assert_eq!(
            s.iter().map(|x| x.aut_order).collect::<Vec<_>>(),
            vec![6, 4]
        );
        let s = ss_j_enumerate(2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].aut_order, 24);
        assert_eq!(ss_j_enumerate(3).unwrap()[0].aut_order, 12);
        assert_eq!(ss_j_enumerate(37).unwrap().len(), 3);
        assert!(ss_j_enumerate(15).is_err());
    }

    #[test]
    fn counts_match_the_class_number_formula() {
        // p = 12k + r: floor(p/12) + {0, 1, 1, 2} for r = 1, 5, 7, 11
        for p in [
            5u64, 7, 13, 17, 19, 23, 29, 31, 37, 41, 43, 61, 73, 97, 101, 103,
        ] {
            let extra = match p % 12 {
                1 => 0,
                5 | 7 => 1,
                _ => 2,
            };
            let s = ss_j_enumerate(p).unwrap();
            assert_eq!(s.len() as u64, p / 12 + extra, "p={p}");
            for x in &s {
                assert_eq!(x.curve.j_invariant(), x.j);
            }
        }
    }
}
