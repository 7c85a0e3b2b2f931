use num::rational::Ratio;
use num::BigInt;
use proptest::prelude::*;

use sslevel::arith::fp::is_prime;
use sslevel::hecke::{adjoint_on, hecke_matrix, is_sound, module_from, sieve, verify_suite, within_ramanujan};
use sslevel::modgroup::{cns_twist2, standard, OpenSubgroup};
use sslevel::ssgraph::{cover_map, eichler_mass, vertex_set};

fn groups() -> Vec<(OpenSubgroup, OpenSubgroup)> {
    let s = |name: &str, n: u32| standard(name, n, None).unwrap();
    let full = s("full", 1);
    vec![
        (full.clone(), full.clone()),
        (s("B0", 2), full.clone()),
        (s("B0", 3), full.clone()),
        (s("Cns", 3), s("Cns+", 3)),
        (s("B1", 4), s("B0", 4)),
        (s("G", 5), s("Cs", 5)),
        (cns_twist2(-1).unwrap(), full.clone()),
        (cns_twist2(5).unwrap(), full),
    ]
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn hecke_identities(gi in 0usize..8, pi in 0usize..20, seed in any::<u64>()) {
        let (g, h) = groups()[gi].clone();
        let n = u64::from(g.modulus());
        let ps: Vec<u64> = primes_upto(80).into_iter().filter(|p| n % p != 0).collect();
        let p = ps[pi % ps.len()];
        let ells: Vec<u64> = primes_upto(20).into_iter().filter(|&l| l != p && n % l != 0).take(3).collect();
        let vs = vertex_set(&g, p).unwrap();
        let m = module_from(&vs).unwrap();
        let graphs: Vec<_> = ells.iter().map(|&l| vs.graph(l).unwrap()).collect();
        let ts: Vec<_> = graphs.iter().map(hecke_matrix).collect();
        let r = verify_suite(&m, &ts).unwrap();
        prop_assert!(r.all(), "{:?}", r);
        for gr in &graphs {
            prop_assert!(gr.check().is_ok());
            if gr.diamond_is_trivial() {
                prop_assert!(gr.is_weighted_symmetric());
            }
        }
        for t in &ts {
            prop_assert!(within_ramanujan(t, 1e-6).unwrap());
        }
        let inv: Ratio<i64> = m.weights.iter().map(|w| w.recip()).sum();
        prop_assert_eq!(inv, eichler_mass(p) * Ratio::from(g.index() as i64));
        let cover = cover_map(&g, &h, p).unwrap();
        prop_assert!(cover.graphs(ells[0]).unwrap().intertwines());
        // multiplicities add up to the degree over each lower vertex
        let mut per = vec![Ratio::from(0); cover.lower.len()];
        for (k, e) in cover.multiplicities().iter().enumerate() {
            per[cover.map[k]] += e;
        }
        prop_assert!(per.iter().all(|x| *x == Ratio::from(cover.degree() as i64)));
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            BigInt::from((s >> 33) as i64 % 11 - 5)
        };
        let x: Vec<BigInt> = (0..cover.lower.len()).map(|_| next()).collect();
        let y: Vec<BigInt> = (0..cover.upper.len()).map(|_| next()).collect();
        prop_assert!(adjoint_on(&cover, &x, &y).unwrap());
        for c in sieve(&m, &ts, 2).unwrap() {
            prop_assert!(is_sound(&c, &ts));
            prop_assert!(c.kernel_basis.iter().all(|v| v.iter().sum::<BigInt>() == BigInt::from(0)));
        }
    }
}
