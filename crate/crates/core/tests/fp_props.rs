mod common;

use common::*;
use proptest::prelude::*;
use spectral_core::barcode::decompose;
use spectral_core::coord::{Coord, ExtCoord};
use spectral_core::field::ScalarField;
use spectral_core::fixtures::Fixtures;
use spectral_core::fp::*;
use spectral_core::order::{DPoint, IndexModel};

fn all_intervals(lo: i64, hi: i64) -> Vec<FpInterval> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in a + 1..=hi {
            out.push(FpInterval::new(a, b).unwrap());
        }
        out.push(FpInterval::projective(a));
    }
    out
}

#[test]
fn hom_dim_matches_commuting_squares() {
    let ivs = all_intervals(0, 6);
    for x in &ivs {
        for y in &ivs {
            assert_eq!(hom_dim(x, y), oracle_hom_fp(x, y), "Hom({x}, {y})");
        }
    }
}

#[test]
fn hom_to_injective_matches_commuting_squares() {
    let m = IndexModel::dense();
    let mut points = vec![DPoint::top()];
    for x in -2..=4 {
        points.push(DPoint::strict(x));
        points.push(DPoint::principal(x));
        points.push(DPoint::principal(Coord::frac(2 * x + 1, 2)));
    }
    for x in all_intervals(-1, 3) {
        for p in &points {
            assert_eq!(hom_to_injective(&x, p), oracle_hom_injective(&m, &x, p), "{x} -> {p}");
        }
    }
}

#[test]
fn window_encoding_matches_hom_to_injective() {
    use spectral_core::spectrum::{Spectrum, Window};
    let sp = Spectrum::new(IndexModel::dense()).unwrap();
    let probes = probe_points(sp.model(), (-3..=3).map(c).collect());
    for x in all_intervals(-2, 2) {
        let w = sp.window(&Window::new(x.start().clone(), x.end().clone()).unwrap()).unwrap();
        for p in &probes {
            assert_eq!(sp.member(&w, p).unwrap(), hom_to_injective(&x, p) == 1);
        }
    }
}

#[test]
fn surd_ideals_follow_the_same_criterion() {
    let m = IndexModel::dense_surd();
    let r2 = Coord::sqrt(2).unwrap();
    let p = DPoint::strict(r2.clone());
    for x in all_intervals(-1, 3) {
        assert_eq!(hom_to_injective(&x, &p), oracle_hom_injective(&m, &x, &p), "{x}");
    }
}

fn morphism(fx: &mut Fixtures, field: ScalarField) -> FpMorphism {
    let s = fx.fp_module(4, 0, 8, 0.25);
    let t = fx.fp_module(4, 0, 8, 0.25);
    fx.fp_morphism(field, s, t, 0.7)
}

fn grid_dims_ok(f: &FpMorphism, k: &FpModule, c: &FpModule) -> Result<(), TestCaseError> {
    let field = f.field();
    let grid = SampleGrid::for_modules(&[f.source(), f.target(), k, c]);
    for t in grid.coords() {
        let pw = f.pointwise(t);
        let rank = pw.matrix.rank(&field);
        prop_assert_eq!(k.dim_at(t), pw.source.len() - rank, "kernel dim at {}", t);
        prop_assert_eq!(rank + c.dim_at(t), pw.target.len(), "cokernel dim at {}", t);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn kernel_and_cokernel_are_exact(seed in any::<u64>(), use_fp in any::<bool>()) {
        let field = if use_fp { ScalarField::prime(3).unwrap() } else { ScalarField::ExactRationals };
        let mut fx = Fixtures::new(seed);
        let f = morphism(&mut fx, field);
        let (k, iota) = kernel(&f).unwrap();
        let (c, pi) = cokernel(&f).unwrap();
        prop_assert!(k.is_canonical() && c.is_canonical());
        prop_assert!(compose(&f, &iota).unwrap().is_zero());
        prop_assert!(compose(&pi, &f).unwrap().is_zero());
        grid_dims_ok(&f, &k, &c)?;

        // every pointwise kernel vector lies in the image of iota
        let grid = SampleGrid::for_morphism(&f);
        for t in grid.coords() {
            let pw = f.pointwise(t);
            let ip = iota.pointwise(t);
            prop_assert_eq!(&ip.target, &pw.source);
            prop_assert_eq!(ip.matrix.rank(&field), ip.source.len(), "iota injective at {}", t);
            for v in pw.matrix.nullspace(&field) {
                let mut span = spectral_core::linalg::SpanBasis::new(field, v.len());
                for col in 0..ip.matrix.cols() {
                    span.insert(&ip.matrix.column(col));
                }
                prop_assert!(span.contains(&v));
            }
            // pi is surjective pointwise
            let pp = pi.pointwise(t);
            prop_assert_eq!(pp.matrix.rank(&field), pp.target.len());
        }
    }

    #[test]
    fn first_isomorphism(seed in any::<u64>()) {
        let field = ScalarField::ExactRationals;
        let mut fx = Fixtures::new(seed);
        let f = morphism(&mut fx, field);
        let (_, pi) = cokernel(&f).unwrap();
        let (im, _) = kernel(&pi).unwrap();
        for t in SampleGrid::for_modules(&[f.source(), f.target()]).coords() {
            prop_assert_eq!(im.dim_at(t), f.pointwise(t).matrix.rank(&field));
        }
    }

    #[test]
    fn refined_grids_agree(seed in any::<u64>(), extra in proptest::collection::vec((-4i64..40, 1i64..5), 0..6)) {
        let field = ScalarField::ExactRationals;
        let mut fx = Fixtures::new(seed);
        let f = morphism(&mut fx, field);
        let extra: Vec<Coord> = extra.into_iter().map(|(n, d)| Coord::frac(n, d)).collect();
        let grid = SampleGrid::for_morphism(&f);
        let fine = grid.refined(&extra);
        prop_assert_eq!(kernel_on_grid(&f, &grid).unwrap(), kernel_on_grid(&f, &fine).unwrap());
        prop_assert_eq!(cokernel_on_grid(&f, &grid).unwrap(), cokernel_on_grid(&f, &fine).unwrap());
        let lifted = fine.lift(&decompose(&field, &sample_kernel(&f, &fine).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lifted, kernel(&f).unwrap().0);
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let field = ScalarField::ExactRationals;
        let mut fx = Fixtures::new(seed);
        let a = fx.fp_module(3, 0, 8, 0.3);
        let b = fx.fp_module(3, 0, 8, 0.3);
        let c2 = fx.fp_module(3, 0, 8, 0.3);
        let d = fx.fp_module(3, 0, 8, 0.3);
        let h = fx.fp_morphism(field, a, b.clone(), 0.8);
        let g = fx.fp_morphism(field, b, c2.clone(), 0.8);
        let f = fx.fp_morphism(field, c2, d, 0.8);
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        // composition agrees with pointwise matrix products
        for t in SampleGrid::for_modules(&[h.source(), f.target()]).coords() {
            let prod = f.pointwise(t).matrix
                .mul(&field, &g.pointwise(t).matrix).unwrap()
                .mul(&field, &h.pointwise(t).matrix).unwrap();
            prop_assert_eq!(&prod, &left.pointwise(t).matrix);
        }
    }

    #[test]
    fn canonicalization_preserves_kernel_type(seed in any::<u64>()) {
        let mut fx = Fixtures::new(seed);
        let f = morphism(&mut fx, ScalarField::ExactRationals);
        prop_assert_eq!(kernel(&f).unwrap().0, kernel(&f.canonicalize()).unwrap().0);
        prop_assert_eq!(cokernel(&f).unwrap().0, cokernel(&f.canonicalize()).unwrap().0);
    }

    #[test]
    fn generator_reduction(seed in any::<u64>()) {
        let field = ScalarField::ExactRationals;
        let mut fx = Fixtures::new(seed);
        let amb = fx.projective_module(4, 0, 5);
        let n = fx.int(0, 6) as usize;
        let gens = fx.generators(&field, &amb, n, 0, 6);
        let kept = reduce_generators(&field, &amb, &gens).unwrap();
        prop_assert_eq!(&kept, &oracle_greedy_generators(&field, &amb, &gens));
        let all: Vec<&Generator> = gens.iter().collect();
        let sub: Vec<&Generator> = kept.iter().map(|&i| &gens[i]).collect();
        let mut pts: Vec<Coord> = gens.iter().map(|g| g.position.clone()).collect();
        pts.extend(amb.summands().iter().map(|s| s.start().clone()));
        for t in sample_line(pts) {
            prop_assert_eq!(
                generated_dim_at(&field, &amb, &all, &t).unwrap(),
                generated_dim_at(&field, &amb, &sub, &t).unwrap()
            );
            let alive: Vec<usize> = kept.iter().copied().filter(|&i| gens[i].position <= t).collect();
            prop_assert_eq!(generator_rank(&field, &amb, &gens, &alive), alive.len());
        }
    }
}

#[test]
fn prime_field_kernels_can_differ_from_rational_ones() {
    // the scalar 3 vanishes in F_3
    let src = FpModule::new(vec![FpInterval::projective(0)]);
    let tgt = FpModule::new(vec![FpInterval::new(0, 4).unwrap()]);
    let entries = [(0, 0, q(3, 1))];
    let over_q = FpMorphism::new(ScalarField::ExactRationals, src.clone(), tgt.clone(), entries.clone()).unwrap();
    let over_f3 = FpMorphism::new(ScalarField::prime(3).unwrap(), src.clone(), tgt.clone(), entries).unwrap();
    assert_eq!(kernel(&over_q).unwrap().0, FpModule::new(vec![FpInterval::projective(4)]));
    assert_eq!(kernel(&over_f3).unwrap().0, src);
    assert!(cokernel(&over_q).unwrap().0.is_empty());
    assert_eq!(cokernel(&over_f3).unwrap().0, tgt);
}

#[test]
fn kernel_on_infinite_bars() {
    let f = FpMorphism::new(
        ScalarField::ExactRationals,
        FpModule::new(vec![FpInterval::projective(0)]),
        FpModule::new(vec![FpInterval::new(0, 2).unwrap()]),
        [(0, 0, q(1, 1))],
    )
    .unwrap();
    let (k, _) = kernel(&f).unwrap();
    assert_eq!(k, FpModule::new(vec![FpInterval::projective(2)]));
    assert_eq!(k.summands()[0].end(), &ExtCoord::PlusInfinity);
}
