mod common;

use common::{boolean, c, example_43, mo2, o6};
use ealab_core::construct::oml_to_ea;
use ealab_core::lp::rational;
use ealab_core::states::{find_state, verify_state, StateMode, StateResult};
use ealab_core::{validate_axioms, EffectAlgebra, ElementSet, Error, LatticeEffectAlgebra};

fn lea(t: ealab_core::EffectAlgebraTable) -> LatticeEffectAlgebra {
    LatticeEffectAlgebra::new(t).unwrap()
}

#[test]
fn orthomodular_lattices_give_sharp_algebras() {
    for (p, orth) in [boolean(1), boolean(2), boolean(3), mo2()] {
        let t = oml_to_ea(&p, &orth).unwrap();
        assert!(validate_axioms(&t).passed());
        let e = lea(t);
        assert_eq!(e.sharp_elements().unwrap().len(), e.size());
        for x in e.elements() {
            assert_eq!(e.complement(x), orth[x]);
            for y in e.elements() {
                assert_eq!(e.leq(x, y), p.leq(x, y));
            }
        }
    }
}

#[test]
fn mo2_has_two_blocks_and_trivial_center() {
    let (p, orth) = mo2();
    let e = lea(oml_to_ea(&p, &orth).unwrap());
    let r = e.structure_report().unwrap();
    assert_eq!(r.blocks.len(), 2);
    assert_eq!(r.center.to_vec(), vec![0, 5]);
    assert!(r.is_irreducible);
}

#[test]
fn hexagon_is_not_orthomodular() {
    let (p, orth) = o6();
    assert_eq!(oml_to_ea(&p, &orth), Err(Error::NotOrthomodular(1, 2)));
}

#[test]
fn example_43_structure() {
    let e = lea(example_43());
    assert_eq!(e.size(), 12);
    let r = e.structure_report().unwrap();
    assert_eq!(r.blocks.len(), 2);
    assert!(r.blocks.iter().all(|b| b.len() == 9));
    // B(E) = C3 × {0, 1}
    assert_eq!(r.compat_center.to_vec(), vec![0, 2, 4, 6, 8, 10]);
    assert_eq!(r.sharp.to_vec(), vec![0, 2, 8, 10]);
    assert_eq!(r.center.to_vec(), vec![0, 2, 8, 10]);
    assert_eq!(r.central_atoms, vec![2, 8]);
    assert!(!r.compat_center.is_subset(&r.sharp));
    let comp: Vec<usize> = e.elements().map(|x| e.complement(x)).collect();
    assert!(!e
        .lattice()
        .is_boolean_subalgebra(e.poset(), &comp, &r.compat_center)
        .unwrap());
    assert!(e.lattice().is_boolean_subalgebra(e.poset(), &comp, &r.center).unwrap());
    let d = e.decompose().unwrap();
    assert_eq!(d.factor_sizes(), vec![4, 3]);
    assert!(e.central_atom_conditions(&r.center).unwrap().agree());
}

#[test]
fn example_43_has_a_subadditive_state() {
    let e = EffectAlgebra::new(example_43()).unwrap();
    let q = find_state(&e, StateMode::Subadditive).unwrap();
    let s = q.state().expect("subadditive state");
    let check = verify_state(&e, s, StateMode::Subadditive);
    assert!(check.ok());
    assert_eq!(check.subadditive_forms, Some((true, true)));
}

#[test]
fn chains_are_mv_with_a_unique_state() {
    for k in 2..=10 {
        let e = lea(c(k));
        let r = e.structure_report().unwrap();
        assert_eq!(r.sharp.to_vec(), vec![0, k - 1]);
        assert_eq!(r.center.to_vec(), vec![0, k - 1]);
        assert_eq!(r.compat_center, ElementSet::full(k));
        assert_eq!(r.blocks, vec![ElementSet::full(k)]);
        let q = find_state(&e, StateMode::Any).unwrap();
        let s = q.state().unwrap();
        for x in 0..k {
            assert_eq!(*s.get(x), rational(x as i64, k as i64 - 1));
        }
    }
}

#[test]
fn faithful_state_value_on_chain() {
    let e = EffectAlgebra::new(c(5)).unwrap();
    match find_state(&e, StateMode::Faithful).unwrap().result {
        StateResult::Found { t_star, .. } => assert_eq!(t_star, Some(rational(1, 4))),
        other => panic!("{other:?}"),
    }
}
