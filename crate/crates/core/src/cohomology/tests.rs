use std::sync::Arc;

use super::*;
use crate::group::{FiniteGroup, Subgroup};

fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
    Arc::new(g)
}

/// Γ = C_m acting on Z/k by multiplication by `u` through the generator 1.
fn cyclic_on_cyclic(m: usize, k: usize, u: usize) -> GammaAction {
    let perms = (0..m).map(|s| (0..k).map(|x| x * u.pow(s as u32) % k).collect()).collect();
    GammaAction::new(arc(FiniteGroup::cyclic(m)), arc(FiniteGroup::cyclic(k)), perms).unwrap()
}

#[test]
fn h1_small_examples() {
    assert_eq!(h1_enumerate(&cyclic_on_cyclic(2, 3, 1)).unwrap().len(), 1);
    assert_eq!(cocycles(&cyclic_on_cyclic(2, 3, 2)).unwrap().len(), 3);
    assert_eq!(h1_enumerate(&cyclic_on_cyclic(2, 3, 2)).unwrap().len(), 1);
    assert_eq!(h1_enumerate(&cyclic_on_cyclic(3, 3, 1)).unwrap().len(), 3);
}

#[test]
fn all_inversion_cocycles_cohomologous() {
    let ctx = cyclic_on_cyclic(2, 3, 2);
    let z = cocycles(&ctx).unwrap();
    for a in &z {
        for b in &z {
            let g = are_cohomologous(a, b).unwrap().expect("cohomologous");
            assert_eq!(a.translate(g).values(), b.values());
        }
    }
}

#[test]
fn h2_small_examples() {
    assert_eq!(h2_abelian_enumerate(&cyclic_on_cyclic(2, 2, 1)).unwrap().len(), 2);
    assert_eq!(h2_abelian_enumerate(&cyclic_on_cyclic(2, 3, 2)).unwrap().len(), 1);
    assert_eq!(h2_abelian_enumerate(&cyclic_on_cyclic(1, 5, 1)).unwrap().len(), 1);
    // Cyclic Γ: H^2 = A^Γ / N A.
    assert_eq!(h2_abelian_enumerate(&cyclic_on_cyclic(4, 5, 2)).unwrap().len(), 1);
    assert_eq!(h2_abelian_enumerate(&cyclic_on_cyclic(3, 9, 1)).unwrap().len(), 3);
    assert_eq!(h2_abelian_enumerate(&cyclic_on_cyclic(2, 4, 3)).unwrap().len(), 2);
}

#[test]
fn h2_klein_on_z2() {
    let ctx = GammaAction::trivial(arc(FiniteGroup::by_name("C2xC2").unwrap()), arc(FiniteGroup::cyclic(2)));
    // H^2(C2 x C2, Z/2) has order 8.
    let classes = h2_abelian_enumerate(&ctx).unwrap();
    assert_eq!(classes.len(), 8);
    let h2 = H2Context::new(&ctx).unwrap();
    for c in &classes {
        Cocycle2::new(&ctx, c.values().to_vec()).unwrap();
        assert_eq!(h2.canonical(c).unwrap(), *c);
    }
}

#[test]
fn coboundary_witness_round_trip() {
    let ctx = cyclic_on_cyclic(4, 5, 2);
    let h2 = H2Context::new(&ctx).unwrap();
    let h = vec![0, 3, 1, 4];
    let d = coboundary(&ctx, &h);
    let w = h2.coboundary_witness(&d).unwrap().unwrap();
    assert_eq!(coboundary(&ctx, &w), d);
}

#[test]
fn twist_s3_by_transposition() {
    let s3 = arc(FiniteGroup::symmetric(3));
    let ctx = GammaAction::trivial(arc(FiniteGroup::cyclic(2)), s3.clone());
    let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
    let c = Cocycle1::new(&ctx, vec![0, t]).unwrap();
    let tw = twist_action(&c).unwrap();
    for x in s3.elements() {
        assert_eq!(tw.act(1, x), s3.conj(t, x));
    }
    let bij = twist_bijection(&c).unwrap();
    let base = h1_enumerate(&ctx).unwrap();
    let twisted = h1_enumerate(bij.twisted()).unwrap();
    assert_eq!(base.len(), twisted.len());
    assert_eq!(bij.forward(&CohClass1::trivial(bij.twisted())).unwrap(), c.class());
    for cl in &twisted {
        assert_eq!(bij.backward(&bij.forward(cl).unwrap()).unwrap(), *cl);
    }
}

#[test]
fn obstruction_z4_over_z2() {
    let gamma = arc(FiniteGroup::cyclic(2));
    let ctx = GammaAction::trivial(gamma, arc(FiniteGroup::cyclic(4)));
    let a = Subgroup::new(ctx.target(), &[0, 2]).unwrap();
    let k = AbelianKernel::new(&ctx, &a).unwrap();
    let gamma_c = Cocycle1::new(k.h_ctx(), vec![0, 1]).unwrap();
    let ob = springer_obstruction(&k, &gamma_c).unwrap();
    assert!(!ob.is_zero().unwrap());
    assert!(k.lift(&gamma_c).unwrap().is_none());
    let triv = Cocycle1::trivial(k.h_ctx());
    assert!(springer_obstruction(&k, &triv).unwrap().is_zero().unwrap());
}

#[test]
fn heisenberg_delta_matches_lifting() {
    let g = arc(FiniteGroup::heisenberg(3));
    let ctx = GammaAction::trivial(arc(FiniteGroup::cyclic(3)), g.clone());
    let k = AbelianKernel::new(&ctx, &g.center()).unwrap();
    let lifted: std::collections::BTreeSet<Vec<usize>> =
        cocycles(&ctx).unwrap().iter().map(|c| k.push_forward(c).unwrap().values().to_vec()).collect();
    let all = cocycles(k.h_ctx()).unwrap();
    assert_eq!(all.len(), 9);
    for psi in &all {
        let ob = delta_central(&k, psi).unwrap();
        assert_eq!(ob.is_zero().unwrap(), lifted.contains(psi.values()));
    }
}

#[test]
fn dual_carries_product_character() {
    let gamma = arc(FiniteGroup::by_name("C2xC2").unwrap());
    let a = arc(FiniteGroup::cyclic(3));
    // First factor (elements 2, 3) inverts; chi nontrivial on the second (1, 3).
    let perms = (0..4).map(|s| (0..3).map(|x| if s >= 2 { (3 - x) % 3 } else { x }).collect()).collect();
    let base = GammaAction::new(gamma, a, perms).unwrap();
    let chi = vec![1, 2, 1, 2];
    let spec = DualModuleSpec::new(&base, 3, chi).unwrap();
    let d = dual_module(&spec).unwrap();
    for s in 0..4 {
        let sign_inv = s >= 2;
        let sign_chi = s % 2 == 1;
        let f = 1;
        let image = d.ctx.act(s, f);
        assert_eq!(image != f, sign_inv != sign_chi, "element {s}");
    }
    assert!(DualModuleSpec::new(&base, 3, vec![1, 2, 2, 1]).is_ok());
    assert!(DualModuleSpec::new(&base, 3, vec![1, 2, 2, 2]).is_err());
}
