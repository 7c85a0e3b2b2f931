//! The level-48 group of the Weber function f, as the stabilizer of f in
//! the action of GL2(Z/48) on the modular functions of level 48 (SL2 by
//! composition, diag(1, d) by zeta_48 -> zeta_48^d on q-expansion
//! coefficients).

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::matrix::ModMatrix;
use super::subgroup::OpenSubgroup;

const N: u32 = 48;

/// zeta_48^k f_i, i = 0, 1, 2 for f, f1, f2.
type Conj = (u8, u32);

fn kronecker_two(d: u32) -> bool {
    matches!(d % 8, 1 | 7)
}

/// The image of zeta^k f_i under a generator.
fn act(x: Conj, s: &Gen) -> Conj {
    let (i, k) = x;
    match *s {
        // f(t + 1) = zeta^-1 f1, f1(t + 1) = zeta^-1 f, f2(t + 1) = zeta^2 f2
        Gen::T => match i {
            0 => (1, (k + N - 1) % N),
            1 => (0, (k + N - 1) % N),
            _ => (2, (k + 2) % N),
        },
        // f(-1/t) = f, f1(-1/t) = f2, f2(-1/t) = f1
        Gen::S => match i {
            0 => (0, k),
            1 => (2, k),
            _ => (1, k),
        },
        // f and f1 have rational q^(1/48)-coefficients, f2 carries sqrt 2
        Gen::D(d) => {
            let k = k * d % N;
            match i {
                2 if !kronecker_two(d) => (2, (k + N / 2) % N),
                _ => (i, k),
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Gen {
    T,
    S,
    D(u32),
}

impl Gen {
    fn matrix(&self) -> ModMatrix {
        match *self {
            Gen::T => ModMatrix::raw(N, 1, 1, 0, 1),
            Gen::S => ModMatrix::raw(N, 0, -1, 1, 0),
            Gen::D(d) => ModMatrix::diag(N, 1, i64::from(d)),
        }
    }
}

/// Orbit of f with a transversal, and the Schreier generators of the
/// stabilizer.
fn orbit_and_stabilizer() -> (Vec<Conj>, Vec<ModMatrix>) {
    let mut gens = vec![Gen::T, Gen::S];
    gens.extend((1..N).filter(|d| num::Integer::gcd(d, &N) == 1).map(Gen::D));
    let start: Conj = (0, 0);
    let mut transversal: HashMap<Conj, ModMatrix> =
        HashMap::from([(start, ModMatrix::identity(N))]);
    let mut order = vec![start];
    let mut k = 0;
    while k < order.len() {
        let x = order[k];
        let tx = transversal[&x];
        for s in &gens {
            let y = act(x, s);
            transversal.entry(y).or_insert_with(|| {
                order.push(y);
                tx.mul(&s.matrix())
            });
        }
        k += 1;
    }
    let mut schreier: Vec<ModMatrix> = Vec::new();
    for x in &order {
        for s in &gens {
            let g = transversal[x]
                .mul(&s.matrix())
                .mul(&transversal[&act(*x, s)].inv());
            if g != ModMatrix::identity(N) && !schreier.contains(&g) {
                schreier.push(g);
            }
        }
    }
    (order, schreier)
}

/// Stabilizer of the Weber function f in GL2(Z/48); index 72, the degree of
/// f over Q(j).
pub fn weber() -> Result<OpenSubgroup> {
    let (orbit, gens) = orbit_and_stabilizer();
    let g = OpenSubgroup::generated(N, &gens)?;
    if g.index() != orbit.len() as u64 {
        return Err(Error::Internal(format!(
            "stabilizer index {} differs from orbit size {}",
            g.index(),
            orbit.len()
        )));
    }
    Ok(g.with_label("Weber:48"))
}
