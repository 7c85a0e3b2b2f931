use proptest::prelude::*;
use sslevel::modgroup::{
    gl2_elements, gl2_order, is_geometrically_independent, is_independent, DoubleCosetSpace,
    ModMatrix, OpenSubgroup,
};

fn invertible(n: u32, seed: u32) -> ModMatrix {
    let els = gl2_elements(n);
    els[seed as usize % els.len()]
}

fn random_subgroup(n: u32, seeds: &[u32]) -> OpenSubgroup {
    let gens: Vec<ModMatrix> = seeds.iter().map(|&s| invertible(n, s)).collect();
    OpenSubgroup::generated(n, &gens).unwrap()
}

fn det_index(g: &OpenSubgroup, h: &OpenSubgroup) -> u64 {
    (g.det_image().len() / h.det_image().len()) as u64
}

/// All subgroups of GL2(Z/n) generated by at most two elements.
fn two_generated_subgroups(n: u32) -> Vec<OpenSubgroup> {
    let els = gl2_elements(n);
    let mut out: Vec<OpenSubgroup> = Vec::new();
    for (i, x) in els.iter().enumerate() {
        for y in &els[i..] {
            let g = OpenSubgroup::generated(n, &[*x, *y]).unwrap();
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

#[test]
fn three_conditions_any_two_imply_third() {
    for n in [2u32, 3] {
        let subs = two_generated_subgroups(n);
        assert!(subs.len() > 5);
        for h1 in &subs {
            for h2 in &subs {
                let g = h1.join(h2).unwrap();
                let h = h1.intersect(h2).unwrap();
                let c1 = is_independent(h1, h2).unwrap();
                let c2 = is_geometrically_independent(h1, h2).unwrap();
                let c3 = det_index(&g, &h) == det_index(&g, h1) * det_index(&g, h2);
                let holding = [c1, c2, c3].iter().filter(|&&c| c).count();
                assert_ne!(holding, 2, "n={n} {h1:?} {h2:?}");
            }
        }
    }
}

#[test]
fn product_subgroups_split_over_crt() {
    let twos = two_generated_subgroups(2);
    let threes = two_generated_subgroups(3);
    for a in &twos {
        for b in threes.iter().step_by(3) {
            let g = a.lift(6).unwrap().intersect(&b.lift(6).unwrap()).unwrap();
            assert!(g.is_product());
            let parts = g.crt_split();
            assert_eq!(parts.len(), 2);
            assert_eq!(&parts[0], a);
            assert_eq!(&parts[1], b);
            assert_eq!(g.index(), a.index() * b.index());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subgroup_invariants(n in 2u32..=8, seeds in prop::collection::vec(any::<u32>(), 0..3)) {
        let g = random_subgroup(n, &seeds);
        prop_assert_eq!(g.index() * g.order(), gl2_order(n));
        prop_assert!(g.contains(&ModMatrix::identity(n)).unwrap());
        for x in g.elements().iter().take(20) {
            prop_assert!(g.contains(&x.inv()).unwrap());
            for y in g.elements().iter().rev().take(20) {
                prop_assert!(g.contains(&x.mul(y)).unwrap());
            }
        }
        prop_assert_eq!(n % g.level(), 0);
        prop_assert_eq!(g.at_level().lift(n).unwrap(), g.clone());
    }

    #[test]
    fn independence_conditions_agree(n in 2u32..=8, s1 in prop::collection::vec(any::<u32>(), 1..3),
                                      s2 in prop::collection::vec(any::<u32>(), 1..3)) {
        let h1 = random_subgroup(n, &s1);
        let h2 = random_subgroup(n, &s2);
        let g = h1.join(&h2).unwrap();
        let h = h1.intersect(&h2).unwrap();
        let gh1 = g.order() / h1.order();
        let gh2 = g.order() / h2.order();
        let a = g.order() / h.order() == gh1 * gh2;
        let b = gh1 == h2.order() / h.order();
        let c = gh2 == h1.order() / h.order();
        prop_assert_eq!(a, b);
        prop_assert_eq!(b, c);
        prop_assert_eq!(a, is_independent(&h1, &h2).unwrap());
    }

    #[test]
    fn double_cosets_partition(n in 2u32..=6, sa in prop::collection::vec(any::<u32>(), 0..2),
                               sg in prop::collection::vec(any::<u32>(), 0..3), probe in any::<u32>()) {
        let a = random_subgroup(n, &sa);
        let g = random_subgroup(n, &sg);
        let space = DoubleCosetSpace::from_groups(a.elements(), &g).unwrap();
        prop_assert!(space.covers_group());
        let m = invertible(n, probe);
        let r = space.canonicalize(&m);
        prop_assert_eq!(space.canonicalize(&r), r);
        prop_assert!(r.code() <= m.code());
        for x in a.elements() {
            for h in g.elements() {
                prop_assert_eq!(space.canonicalize(&x.mul(&m).mul(h)), r);
            }
        }
        let i = space.index_of(&r);
        prop_assert_eq!(space.reps()[i], r);
        prop_assert!(space.stabilizer(i) >= 1);
    }
}
