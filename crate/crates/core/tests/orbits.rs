mod common;

use std::collections::BTreeSet;

use common::*;
use fakedp_core::collections::{
    dihedral_act, enumerate_twists, is_exceptional, lift_numerical, weyl_orbit, DihedralOp,
    DEFAULT_ORBIT_CAP,
};

#[test]
fn kulikov_orbit_counts() {
    let s = kulikov();
    let orbit = weyl_orbit(s.y().lattice(), &kulikov_lambda(), DEFAULT_ORBIT_CAP).unwrap();
    assert!(orbit.contains(&kulikov_lambda()));
    let counts: BTreeSet<usize> = orbit
        .iter()
        .map(|lam| enumerate_twists(&s, &lift_numerical(lam)).unwrap().len())
        .collect();
    assert_eq!(counts, BTreeSet::from([9, 14, 18, 24]));
}

#[test]
fn dihedral_action_preserves_exceptionality() {
    let s = kulikov();
    let l = lift_numerical(&kulikov_lambda());
    for taus in enumerate_twists(&s, &l).unwrap() {
        let e = fakedp_core::collections::twisted_collection(&s, &l, &taus).unwrap();
        for op in [DihedralOp::Rotate, DihedralOp::Invert] {
            let f = dihedral_act(&s, &e, op).unwrap();
            assert!(is_exceptional(&s, &f).unwrap());
        }
    }
}
