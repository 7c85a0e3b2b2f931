use num::rational::Ratio;
use num::BigInt;

use crate::modgroup::{cns_twist2, standard, OpenSubgroup};
use crate::ssgraph::{build_graph, cover_map, vertex_set};

use super::*;

fn full() -> OpenSubgroup {
    standard("full", 1, None).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn level_one(p: u64, ells: &[u64]) -> (SupersingularModule, Vec<HeckeMatrix>) {
    let m = module_from(&vertex_set(&full(), p).unwrap()).unwrap();
    let ts = ells
        .iter()
        .map(|&l| hecke_matrix(&build_graph(&full(), p, l).unwrap()))
        .collect();
    (m, ts)
}

/// Roots of x^2 - tr x + det when they are integers.
fn integer_roots(m: &[Vec<i64>]) -> Vec<i64> {
    let (tr, det) = (m[0][0] + m[1][1], m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    (-100..=100).filter(|x| x * x - tr * x + det == 0).collect()
}

#[test]
fn weights_and_eisenstein_p11() {
    let (m, ts) = level_one(11, &[3, 5, 7]);
    // order (j = 0, j = 1728)
    assert_eq!(m.weights, vec![Ratio::from(3), Ratio::from(2)]);
    assert_eq!(m.eisenstein(), vec![Ratio::new(1, 3), Ratio::new(1, 2)]);
    assert_eq!(m.eisenstein_integral(), ints(&[2, 3]));
    let x = vec![Ratio::from(1), Ratio::from(-1)];
    assert_eq!(
        m.inner_product(&m.eisenstein(), &x).unwrap(),
        Ratio::from(0)
    );
    let e0 = vec![Ratio::from(1), Ratio::from(0)];
    assert_eq!(m.inner_product(&e0, &e0).unwrap(), Ratio::from(3));
    assert!(m.inner_product(&e0, &[Ratio::from(1)]).is_err());
    let r = verify_suite(&m, &ts).unwrap();
    assert!(r.all(), "{r:?}");
    assert!(ts.iter().all(|t| within_ramanujan(t, 1e-6).unwrap()));
}

#[test]
fn rational_kernels_p11() {
    let (_, ts) = level_one(11, &[3]);
    let t3 = &ts[0].mat;
    assert_eq!(integer_roots(t3), vec![-1, 4]);
    assert_eq!(rational_kernel(t3, 4), vec![ints(&[2, 3])]);
    let k = rational_kernel(t3, -1);
    assert_eq!(k.len(), 1);
    assert_eq!(k[0].iter().sum::<BigInt>(), BigInt::from(0));
    assert!(rational_kernel(t3, 0).is_empty());
    assert_eq!(cuspidal_eigenvalues(&ts[0]).unwrap().len(), 1);
    assert!((cuspidal_eigenvalues(&ts[0]).unwrap()[0].0 + 1.0).abs() < 1e-9);
}

#[test]
fn sieve_p11_matches_char_poly() {
    let (m, ts) = level_one(11, &[3, 5, 7, 13]);
    let cands = sieve(&m, &ts[..3], 1).unwrap();
    assert_eq!(cands.len(), 1);
    assert_eq!(cands[0].traces, vec![(3, -1), (5, 1), (7, -2)]);
    // the cuspidal root of each 2x2 characteristic polynomial
    let oracle: Vec<i64> = ts
        .iter()
        .map(|t| {
            *integer_roots(&t.mat)
                .iter()
                .find(|&&r| r != t.ell as i64 + 1)
                .unwrap()
        })
        .collect();
    assert_eq!(oracle, vec![-1, 1, -2, 4]);
    let all = sieve(&m, &ts, 1).unwrap();
    assert_eq!(all[0].traces.last(), Some(&(13, 4)));
    assert!(is_sound(&all[0], &ts));
    // unordered input is sorted
    let rev: Vec<HeckeMatrix> = ts.iter().rev().cloned().collect();
    assert_eq!(sieve(&m, &rev, 1).unwrap(), all);
}

#[test]
fn sieve_trivial_degree_zero() {
    let (m, ts) = level_one(2, &[3]);
    assert_eq!(m.rank(), 1);
    assert_eq!(m.weights, vec![Ratio::from(12)]);
    assert!(m.degree_zero_basis().is_empty());
    assert!(sieve(&m, &ts, 1).unwrap().is_empty());
}

#[test]
fn hasse_bounds() {
    for ell in 2..2000u64 {
        let c = hasse_bound(ell);
        assert!(c * c <= 4 * ell as i64 && (c + 1) * (c + 1) > 4 * ell as i64);
    }
}

#[test]
fn trace_table_layout() {
    let c = EigensystemCandidate {
        traces: vec![(5, 3), (7, 0), (11, -4)],
        kernel_dim: 1,
        kernel_basis: vec![],
        new_flags: vec![],
    };
    let t = TraceTable::new(&[c.clone(), c]);
    assert_eq!(
        t.to_text(),
        "Modular form traces of Frobenius:\n[   5   7  11]\n[   3   0  -4]\n[   3   0  -4]\n"
    );
    assert_eq!(t.to_csv(), "a5,a7,a11\n3,0,-4\n3,0,-4\n");
    assert_eq!(TraceTable::new(&[]).rows.len(), 0);
}

#[test]
fn fibre_swap_p11() {
    let a = hecke_matrix(&build_graph(&cns_twist2(1).unwrap(), 11, 3).unwrap());
    let b = hecke_matrix(&build_graph(&cns_twist2(-1).unwrap(), 11, 3).unwrap());
    // the two vertices over j = 0 are 0 and 1
    let u = HeckeMatrix {
        ell: 0,
        mat: vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
        diamond: vec![0, 1, 2],
    };
    assert_eq!(u.product(&a), b.mat);
    assert_eq!(a.product(&u), b.mat);
}

#[test]
fn decompose_p11_cartan() {
    let g = cns_twist2(-1).unwrap();
    let cover = cover_map(&g, &full(), 11).unwrap();
    let m = module_from(&cover.upper).unwrap();
    assert_eq!(m.degree_zero_basis().len(), 2);
    let new = new_subspace(&m, std::slice::from_ref(&cover)).unwrap();
    let old = old_subspace(&m, std::slice::from_ref(&cover)).unwrap();
    assert_eq!((old.len(), new.len()), (1, 1));
    assert!(orthogonal(&m, &new, &old).unwrap());
    let t3 = hecke_matrix(&build_graph(&g, 11, 3).unwrap());
    assert!(is_stable(&t3, &new) && is_stable(&t3, &old));
    assert!(new_subspace(&m, &[]).unwrap().len() == 2 && old_subspace(&m, &[]).unwrap().is_empty());
    // pi_* T = T pi_* on coefficient columns
    let lower = hecke_matrix(&build_graph(&full(), 11, 3).unwrap());
    let push = linalg::to_big(&pushforward(&cover));
    for v in m.degree_zero_basis() {
        assert_eq!(
            linalg::mat_vec(&push, &t3.apply_int(&v)),
            lower.apply_int(&linalg::mat_vec(&push, &v))
        );
    }
    // T3 has eigenvalues 4, -1, -1: the old and new forms share a3 = -1
    assert!(sieve(&m, std::slice::from_ref(&t3), 1).unwrap().is_empty());
    let mut cands = sieve(&m, std::slice::from_ref(&t3), 2).unwrap();
    flag_new(&mut cands, std::slice::from_ref(&cover));
    assert_eq!(cands.len(), 1);
    assert_eq!(
        (cands[0].kernel_dim, cands[0].new_flags.clone()),
        (2, vec![false])
    );
    let mut cands = sieve_within(&new, &[t3], 1).unwrap();
    flag_new(&mut cands, std::slice::from_ref(&cover));
    assert_eq!(cands[0].traces, vec![(3, -1)]);
    assert_eq!(cands[0].new_flags, vec![true]);
}

#[test]
fn pullback_level_five_p2() {
    let g = standard("G", 5, None).unwrap();
    let cover = cover_map(&g, &full(), 2).unwrap();
    let pb = pullback(&cover).unwrap();
    assert_eq!(pb, vec![vec![12]; 5]);
    let push = pushforward(&cover);
    let total: i64 = (0..5).map(|h| push[0][h] * pb[h][0]).sum();
    assert_eq!(total, 60);
    for (x, y) in [(3, [1, 0, -2, 5, 7]), (-1, [0, 0, 0, 0, 1])] {
        assert!(adjoint_on(&cover, &ints(&[x]), &ints(&y)).unwrap());
    }
}
