use num::BigUint;
use proptest::prelude::*;

use sslevel::arith::{FieldDesc, FieldElem};

fn field_params() -> impl Strategy<Value = (u64, usize)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(11), Just(13), Just(101), Just(3851)]
        .prop_flat_map(|p| (Just(p), 1usize..=4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((p, k) in field_params(), seed in any::<u128>()) {
        let f = FieldDesc::new(p, k, None).unwrap();
        let size = f.size().clone();
        let n = seed % u128::try_from(size.clone()).unwrap_or(u128::MAX);
        let a = FieldElem::from_index(&f, n);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.pow(&(size.clone() - BigUint::from(1u32))).is_one());
        }
        prop_assert_eq!(a.frobenius_pow(k), a.clone());
        let s = a.square();
        let r = s.sqrt().unwrap();
        prop_assert!(r == a || r == -&a);
        if p > 2 && !a.is_zero() {
            // sqrt of a non-residue does not exist
            let g = FieldElem::generator(&f);
            let t = &g * &s;
            prop_assert_eq!(t.sqrt().is_some(), t.is_square());
        }
    }

    #[test]
    fn moduli_are_deterministic((p, k) in field_params()) {
        let a = FieldDesc::new(p, k, None).unwrap();
        let b = FieldDesc::new(p, k, None).unwrap();
        prop_assert_eq!(a.modulus(), b.modulus());
    }
}
