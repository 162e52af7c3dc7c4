mod common;

use common::inverse;
use proptest::prelude::*;
use spectral_core::barcode::*;
use spectral_core::field::ScalarField;
use spectral_core::fixtures::Fixtures;
use spectral_core::fp::is_flat;
use spectral_core::linalg::Matrix;

/// Conjugates every structure map by random invertible changes of basis.
fn change_basis(fx: &mut Fixtures, field: &ScalarField, m: &ChainModule) -> ChainModule {
    let p: Vec<Matrix> = m.dims().iter().map(|&d| fx.invertible(field, d)).collect();
    let maps = m
        .maps()
        .iter()
        .enumerate()
        .map(|(t, a)| {
            let a = a.reduced(field).unwrap();
            p[t + 1].mul(field, &a).unwrap().mul(field, &inverse(field, &p[t])).unwrap()
        })
        .collect();
    ChainModule::new(m.dims().to_vec(), maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn realize_then_decompose(seed in any::<u64>(), len in 1usize..=12) {
        let mut fx = Fixtures::new(seed);
        let b = fx.barcode(20, len);
        let m = realize(&b, len).unwrap();
        prop_assert_eq!(m.dims().to_vec(), b.dims(len));
        prop_assert_eq!(decompose(&ScalarField::ExactRationals, &m).unwrap(), b);
    }

    #[test]
    fn invariant_under_basis_change(seed in any::<u64>(), len in 1usize..=6, p in prop::sample::select(vec![0u64, 2, 5])) {
        let field = if p == 0 { ScalarField::ExactRationals } else { ScalarField::prime(p).unwrap() };
        let mut fx = Fixtures::new(seed);
        let m = fx.chain_module(4, len);
        let b = decompose(&field, &m).unwrap();
        let m2 = change_basis(&mut fx, &field, &m);
        prop_assert_eq!(decompose(&field, &m2).unwrap(), b.clone());
        prop_assert_eq!(is_flat(&field, &m2).unwrap(), is_flat(&field, &m).unwrap());
        prop_assert_eq!(b.dims(len), m.dims().to_vec());
    }

    #[test]
    fn rank_table_is_monotone(seed in any::<u64>(), len in 1usize..=6) {
        let field = ScalarField::ExactRationals;
        let mut fx = Fixtures::new(seed);
        let m = fx.chain_module(4, len);
        let r = RankTable::compute(&field, &m).unwrap();
        for i in 0..len {
            for j in i..len {
                prop_assert_eq!(r.get(i as isize, j), rank_invariant(&field, &m, i, j).unwrap());
                prop_assert!(r.get(i as isize, j) >= r.get(i as isize, j + 1));
                prop_assert!(r.get(i as isize, j) >= r.get(i as isize - 1, j));
            }
        }
    }

    #[test]
    fn flat_iff_maps_have_no_kernel(seed in any::<u64>(), len in 1usize..=6) {
        let field = ScalarField::ExactRationals;
        let mut fx = Fixtures::new(seed);
        let m = fx.chain_module(3, len);
        let expected = m.maps().iter().all(|a| a.nullspace(&field).is_empty());
        prop_assert_eq!(is_flat(&field, &m).unwrap(), expected);
        // flat modules have only bars that run to the end
        if expected {
            prop_assert!(decompose(&field, &m).unwrap().bars().all(|(_, e, _)| e == len));
        }
    }
}
