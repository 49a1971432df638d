//! Order-2 and order-3 diagram automorphisms of the simply-laced algebras:
//! the condition checker must pass and report the fixed/enlarged relation.

use lietorus::autos::{check_a_conditions, diagram_automorphism, AutTuple, DeltaRelation};
use lietorus::exactfield::FieldContext;
use lietorus::liealg::chevalley_basis;
use lietorus::rootsys::{Family, RootSystemType};

fn ty(f: Family, r: usize) -> RootSystemType {
    RootSystemType::new(f, r).unwrap()
}

fn run_case(
    fam: Family,
    rank: usize,
    perm: &[usize],
    conductor: u64,
    expect_fixed: RootSystemType,
    expect_delta: RootSystemType,
    expect_relation: DeltaRelation,
) {
    let ctx = FieldContext::new(conductor);
    let (alg, ep) = chevalley_basis(&ctx, ty(fam, rank)).unwrap();
    let sigma = diagram_automorphism(&alg, &ep, perm).unwrap();
    let tuple = AutTuple::new(vec![sigma]).unwrap();
    let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan)).unwrap();
    assert!(report.passes, "{fam:?}{rank}: {:?}", report.failures);
    assert_eq!(report.delta_g_type, Some(expect_fixed), "{fam:?}{rank} fixed type");
    assert_eq!(report.delta_type, Some(expect_delta), "{fam:?}{rank} delta type");
    assert_eq!(report.relation, Some(expect_relation), "{fam:?}{rank} relation");
}

#[test]
fn a3_involution() {
    run_case(
        Family::A,
        3,
        &[2, 1, 0],
        2,
        ty(Family::B, 2),
        ty(Family::B, 2),
        DeltaRelation::Equal,
    );
}

#[test]
fn a4_involution_enlarged() {
    run_case(
        Family::A,
        4,
        &[3, 2, 1, 0],
        2,
        ty(Family::B, 2),
        ty(Family::BC, 2),
        DeltaRelation::Enlarged,
    );
}

#[test]
fn d4_involution() {
    run_case(
        Family::D,
        4,
        &[0, 1, 3, 2],
        2,
        ty(Family::B, 3),
        ty(Family::B, 3),
        DeltaRelation::Equal,
    );
}

#[test]
fn e6_involution() {
    run_case(
        Family::E,
        6,
        &[5, 1, 4, 3, 2, 0],
        2,
        ty(Family::F, 4),
        ty(Family::F, 4),
        DeltaRelation::Equal,
    );
}
