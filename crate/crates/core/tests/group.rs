mod common;

use cohomolib::group::{automorphisms, FiniteGroup};
use cohomolib::{Error, GroupHom, Subgroup};
use common::{group, subgroups};
use proptest::prelude::*;

#[test]
fn named_groups() {
    for (name, order, exponent, abelian) in [
        ("C12", 12, 12, true),
        ("C2xC2xC3", 12, 6, true),
        ("S3", 6, 6, false),
        ("S4", 24, 12, false),
        ("D8", 8, 4, false),
        ("Q8", 8, 4, false),
        ("Heis27", 27, 3, false),
    ] {
        let g = FiniteGroup::by_name(name).unwrap();
        assert_eq!((g.order(), g.exponent(), g.is_abelian()), (order, exponent, abelian), "{name}");
    }
    assert!(matches!(FiniteGroup::by_name("X5"), Err(Error::Input { .. })));
}

#[test]
fn direct_product_indexing() {
    let g = FiniteGroup::by_name("C2xC3").unwrap();
    // (a, b) sits at 3a + b.
    assert_eq!(g.mul(4, 5), 3 * ((1 + 1) % 2) + (1 + 2) % 3);
    assert_eq!(g.element_order(4), 6);
}

#[test]
fn heisenberg_structure() {
    let g = FiniteGroup::heisenberg(3);
    assert_eq!(g.center().order(), 3);
    let lens: Vec<usize> = g.derived_series().iter().map(|s| s.order()).collect();
    assert_eq!(lens, vec![27, 3, 1]);
    assert_eq!(group("C2xC9").ell_torsion(3).unwrap().order(), 9);
    assert_eq!(group("C4xC3").ell_torsion(2).unwrap().order(), 4);
    assert!(matches!(g.ell_torsion(3), Err(Error::NotAbelian { .. })));
}

#[test]
fn automorphism_counts() {
    for (name, aut, out) in [("C2xC2", 6, 6), ("S3", 6, 1), ("Q8", 24, 6), ("D8", 8, 2), ("C9", 6, 6), ("Heis27", 432, 48)] {
        let a = automorphisms(&group(name)).unwrap();
        assert_eq!((a.aut.order(), a.out.order()), (aut, out), "{name}");
    }
}

#[test]
fn subgroup_lattice_matches_closure_oracle() {
    for name in ["S3", "D8", "Q8", "C2xC2xC2", "A4", "C3xC3", "Heis27"] {
        let g = group(name);
        let all: Vec<usize> = g.elements().collect();
        let lib: Vec<Vec<usize>> = g.all_subgroups().iter().map(|s| s.elements().to_vec()).collect();
        let mut lib_sorted = lib.clone();
        lib_sorted.sort();
        assert_eq!(lib_sorted, subgroups(&g, &all), "{name}");
    }
}

#[test]
fn quotients_and_homs() {
    let g = group("S4");
    let v4 = g.derived_series()[2].clone();
    assert_eq!(v4.order(), 4);
    let (q, p) = g.quotient_group(&v4).unwrap();
    assert_eq!(q.order(), 6);
    assert!(!q.is_abelian());
    assert_eq!(p.kernel(), v4);
    let s3 = group("S3");
    assert!(GroupHom::new(&s3, &FiniteGroup::cyclic(3), vec![0; 6]).is_ok());
    assert!(matches!(GroupHom::new(&s3, &FiniteGroup::cyclic(3), vec![0, 1, 2, 0, 1, 2]), Err(Error::NotHom { .. })));
    let order_two = s3.all_subgroups().into_iter().find(|s| s.order() == 2).unwrap();
    assert!(!order_two.is_normal_in(&s3));
    assert!(matches!(s3.quotient_group(&order_two), Err(Error::NotNormal { .. })));
    assert!(matches!(Subgroup::new(&FiniteGroup::cyclic(4), &[0, 1]), Err(Error::NotSubgroup { .. })));
}

#[test]
fn table_validation() {
    assert!(matches!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]), Err(Error::NotSquare { .. })));
    assert!(matches!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]), Err(Error::NoInverse { .. } | Error::NotAssociative { .. })));
    assert!(matches!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]), Err(Error::NotClosed { .. })));
}

proptest! {
    #[test]
    fn cyclic_arithmetic(n in 1usize..40, a in 0usize..40, k in 0u64..100) {
        let g = FiniteGroup::cyclic(n);
        let a = a % n;
        prop_assert_eq!(g.pow(a, k), (a as u64 * k % n as u64) as usize);
        let gcd = (1..=n).rev().find(|d| n % d == 0 && a % d == 0).unwrap();
        prop_assert_eq!(g.element_order(a), n / gcd);
    }

    #[test]
    fn products_are_associative(i in 0usize..24, j in 0usize..24, k in 0usize..24) {
        let g = FiniteGroup::by_name("C2xS3xC2").unwrap();
        prop_assert_eq!(g.order(), 24);
        prop_assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)));
        prop_assert_eq!(g.mul(i, g.inv(i)), 0);
    }
}
