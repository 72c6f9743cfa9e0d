use std::sync::Arc;

use cohomolib::cohomology::{Cocycle1, GammaAction};
use cohomolib::global::{
    datum_validate, devissage_solve, localize, sha, simple_module_solve, unramified_places, weak_approx_check,
    DevissageOptions, GlobalDatum, LocalTargets, PlaceKind, PlaceSpec, CHECK_ROOTS,
};
use cohomolib::group::FiniteGroup;
use cohomolib::{Error, Subgroup};

fn c6_datum() -> GlobalDatum {
    let gamma = Arc::new(FiniteGroup::cyclic(6));
    let chi: Vec<u64> = (0..6).map(|x| if x % 2 == 1 { 2 } else { 1 }).collect();
    let mut places = unramified_places(&gamma, 3, &chi).unwrap();
    places.push(PlaceSpec::new(&gamma, "r", PlaceKind::Finite, &[0, 2, 4], &[0, 2, 4], 0, Some(2), 1).unwrap());
    let n_l = Subgroup::new(&gamma, &[0, 2, 4]).unwrap();
    GlobalDatum::new(gamma.clone(), 3, chi, Subgroup::whole(&gamma), n_l, places).unwrap()
}

#[test]
fn datum_construction_errors() {
    let gamma = Arc::new(FiniteGroup::cyclic(6));
    let whole = Subgroup::whole(&gamma);
    let bad_chi = vec![1, 2, 2, 1, 1, 1];
    assert!(matches!(
        GlobalDatum::new(gamma.clone(), 3, bad_chi, whole.clone(), whole.clone(), vec![]),
        Err(Error::ChiNotHom { .. })
    ));
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let not_normal = s3.all_subgroups().into_iter().find(|s| s.order() == 2).unwrap();
    assert!(matches!(
        GlobalDatum::new(s3.clone(), 3, vec![1; 6], not_normal, Subgroup::trivial(&s3), vec![]),
        Err(Error::NotNormal { .. })
    ));
    assert!(PlaceSpec::new(&gamma, "bad", PlaceKind::Finite, &[0, 2, 4], &[0, 3], 0, None, 1).is_err());
    assert!(PlaceSpec::new(&gamma, "inf", PlaceKind::Archimedean, &[0, 2, 4], &[0, 2, 4], 0, Some(2), 1).is_err());
}

#[test]
fn validation_and_localization() {
    let d = c6_datum();
    let ctx = GammaAction::trivial(d.gamma.clone(), Arc::new(FiniteGroup::cyclic(3)));
    let r = datum_validate(&d, &ctx);
    assert!(r.all_pass(), "{r:?}");
    assert!(r.chebotarev_complete);
    assert!(r.p_places.contains(&"r".to_string()));
    let hom = Cocycle1::new(&ctx, (0..6).map(|x| x % 3).collect()).unwrap();
    let at_r = localize(&d, &hom.class(), "r").unwrap();
    assert!(at_r.flags.ramified && at_r.flags.totally_ramified && at_r.flags.cyclic);
    assert!(matches!(localize(&d, &hom.class(), "missing"), Err(Error::PlaceUnknown { .. })));

    // χ trivial mod 3 on Γ: the roots-of-unity check fails.
    let gamma = d.gamma.clone();
    let places = unramified_places(&gamma, 3, &[1; 6]).unwrap();
    let d1 = GlobalDatum::new(gamma.clone(), 3, vec![1; 6], Subgroup::whole(&gamma), Subgroup::whole(&gamma), places).unwrap();
    assert!(!datum_validate(&d1, &ctx).passes(&[CHECK_ROOTS]));
}

#[test]
fn sha_and_weak_approximation_on_c6() {
    let d = c6_datum();
    let ctx = GammaAction::trivial(d.gamma.clone(), Arc::new(FiniteGroup::cyclic(3)));
    assert_eq!(sha(&d, &ctx, 1).unwrap().len(), 1);
    assert_eq!(sha(&d, &ctx, 2).unwrap().len(), 1);
    assert!(matches!(sha(&d, &ctx, 3), Err(Error::Input { .. })));
    assert!(weak_approx_check(&d, &ctx, &["r".into()]).unwrap().surjective());
}

#[test]
fn solvers_agree_with_targets() {
    let d = c6_datum();
    let ctx = GammaAction::trivial(d.gamma.clone(), Arc::new(FiniteGroup::cyclic(3)));
    for beta in [vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]] {
        let t = LocalTargets::new(&d, &ctx, &[("r".into(), beta.clone())]).unwrap();
        let a = simple_module_solve(&d, &ctx, &t).unwrap();
        let b = devissage_solve(&d, &ctx, &t, DevissageOptions::default()).unwrap();
        let (sa, sb) = (a.solution().unwrap(), b.solution().unwrap());
        assert_eq!(sa.class, sb.class);
        let at_r = localize(&d, &sa.class, "r").unwrap();
        assert_eq!(at_r.class.rep().values(), beta.as_slice());
    }
    assert!(LocalTargets::new(&d, &ctx, &[("r".into(), vec![0, 1, 1])]).is_err());
}
