mod common;

use std::collections::BTreeSet;

use cohomolib::cohomology::{
    are_cohomologous, h1_enumerate, springer_obstruction, twist_bijection, AbelianKernel, Cocycle1, Cocycle2, GammaAction,
    H2Context,
};
use cohomolib::{Error, Subgroup};
use common::*;
use proptest::prelude::*;

#[test]
fn h1_of_trivial_actions_counts_conjugacy_classes_of_homs() {
    let c2 = group("C2");
    // Involutions of S3 up to conjugacy, plus the trivial hom.
    assert_eq!(h1_enumerate(&GammaAction::trivial(c2.clone(), group("S3"))).unwrap().len(), 2);
    assert_eq!(h1_enumerate(&GammaAction::trivial(c2.clone(), group("Q8"))).unwrap().len(), 2);
    assert_eq!(h1_enumerate(&GammaAction::trivial(c2, group("D8"))).unwrap().len(), 4);
    assert_eq!(h1_enumerate(&GammaAction::trivial(group("C3"), group("Heis27"))).unwrap().len(), 11);
}

#[test]
fn invalid_cocycles_are_rejected() {
    let ctx = GammaAction::trivial(group("C2"), group("C3"));
    assert!(matches!(Cocycle1::new(&ctx, vec![0, 1]), Err(Error::CocycleInvalid { .. })));
    assert!(Cocycle1::new(&ctx, vec![0, 0]).is_ok());
    let bad = GammaAction::new(group("C2"), group("C3"), vec![vec![0, 1, 2], vec![0, 0, 1]]);
    assert!(bad.is_err());
}

#[test]
fn inversion_on_z3_gives_tate_counts() {
    for m in [2, 4, 6, 8] {
        let ctx = cyclic_action(m, group("C3"), &[0, 2, 1]);
        let h1 = h1_enumerate(&ctx).unwrap();
        let h2 = H2Context::new(&ctx).unwrap().count().unwrap();
        assert_eq!((h1.len(), h2), tate_counts(&ctx));
        assert_eq!(h1.len(), 1);
    }
}

#[test]
fn h2_of_klein_four_on_z2() {
    let ctx = GammaAction::trivial(group("C2xC2"), group("C2"));
    let h2 = H2Context::new(&ctx).unwrap();
    assert_eq!(h2.count().unwrap(), 8);
    let b2 = oracle_b2(&ctx);
    assert_eq!(oracle_z2_count(&ctx) / b2.len(), 8);
    for x in h2.enumerate().unwrap() {
        assert!(is_cocycle2(&ctx, x.values()));
        assert_eq!(h2.canonical(&x).unwrap(), x);
    }
    let cb = Cocycle2::new(&ctx, coboundary2(&ctx, &[0, 1, 1, 0])).unwrap();
    assert!(h2.is_coboundary(&cb).unwrap());
}

#[test]
fn z4_over_z2_obstruction() {
    // The identity C2 -> Z/2 does not lift to Z/4.
    let ctx = GammaAction::trivial(group("C2"), group("C4"));
    let a = Subgroup::new(ctx.target(), &[0, 2]).unwrap();
    let k = AbelianKernel::new(&ctx, &a).unwrap();
    let gamma = Cocycle1::new(k.h_ctx(), vec![0, 1]).unwrap();
    let ob = springer_obstruction(&k, &gamma).unwrap();
    assert!(!ob.is_zero().unwrap());
    assert!(k.lift(&gamma).unwrap().is_none());
    let triv = Cocycle1::trivial(k.h_ctx());
    assert!(k.lift(&triv).unwrap().is_some());
}

#[test]
fn kernel_must_be_abelian_and_normal() {
    let ctx = GammaAction::trivial(group("C2"), group("S3"));
    let whole = Subgroup::whole(ctx.target());
    assert!(matches!(AbelianKernel::new(&ctx, &whole), Err(Error::NotAbelianKernel)));
}

#[test]
fn twisting_by_a_cocycle_moves_it_to_the_base_point() {
    let ctx = GammaAction::trivial(group("C2xC2"), group("S3"));
    let classes = h1_enumerate(&ctx).unwrap();
    for c in &classes {
        let tb = twist_bijection(c.rep()).unwrap();
        let tw = h1_enumerate(tb.twisted()).unwrap();
        let image: BTreeSet<_> = tw.iter().map(|x| tb.forward(x).unwrap()).collect();
        assert_eq!(image.len(), classes.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclic_h1_matches_full_scan(m in 1usize..=8, a in prop::sample::select(vec!["C2", "C3", "C4", "C5", "C2xC2", "C6", "C8", "C9"]), pick in 0usize..8) {
        let a = group(a);
        let auts = automorphisms_of_order_dividing(&a, m);
        let p = &auts[pick % auts.len()];
        let ctx = cyclic_action(m, a, p);
        let lib: BTreeSet<Vec<usize>> = h1_enumerate(&ctx).unwrap().iter().map(|c| c.rep().values().to_vec()).collect();
        prop_assert_eq!(&lib, &oracle_h1(&ctx));
        let h2 = H2Context::new(&ctx).unwrap().count().unwrap();
        prop_assert_eq!(lib.len(), h2);
    }

    #[test]
    fn translates_are_cohomologous(x in 0usize..27, pick in 0usize..100) {
        let ctx = GammaAction::trivial(group("C3"), group("Heis27"));
        let all = oracle_cocycles(&ctx);
        let a = Cocycle1::new(&ctx, all[pick % all.len()].clone()).unwrap();
        let b = a.translate(x);
        prop_assert!(are_cohomologous(&a, &b).unwrap().is_some());
        prop_assert_eq!(a.class(), b.class());
    }
}
