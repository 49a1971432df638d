//! End-to-end exercise of the rank-one torus built from the orthogonal
//! algebra of a 7-dimensional form with three commuting involutions.

use lietorus::autos::{check_a_conditions, conjugation_automorphism, AutTuple};
use lietorus::exactfield::FieldContext;
use lietorus::liealg::{orthogonal_algebra, SummandId};
use lietorus::linalg::KMat;
use lietorus::rootsys::{Family, RootSystemType};
use lietorus::torus::{
    build_multiloop, central_grading_group, make_isotope, root_grading_pair, sl2_pair,
    support_semilattices, verify_lie_torus_axioms, weyl_automorphism_window, RootLatticeHom,
};

fn gram(ctx: &std::sync::Arc<FieldContext>) -> KMat {
    // diag(J3, Id4)
    let mut g = KMat::zero(ctx, 7, 7);
    g.set(0, 2, ctx.one());
    g.set(1, 1, ctx.one());
    g.set(2, 0, ctx.one());
    for i in 3..7 {
        g.set(i, i, ctx.one());
    }
    g
}

fn diag(ctx: &std::sync::Arc<FieldContext>, entries: [i64; 7]) -> KMat {
    let mut m = KMat::zero(ctx, 7, 7);
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, ctx.from_int(e));
    }
    m
}

#[test]
fn b3_worked_example() {
    let ctx = FieldContext::new(2);
    let g = gram(&ctx);
    let alg = orthogonal_algebra(&ctx, &g).unwrap();
    assert_eq!(alg.dim(), 21);

    let d1 = diag(&ctx, [1, 1, 1, -1, 1, 1, -1]);
    let d2 = diag(&ctx, [1, 1, 1, 1, -1, 1, -1]);
    let d3 = diag(&ctx, [1, 1, 1, 1, 1, -1, -1]);
    let s1 = conjugation_automorphism(&alg, &d1).unwrap();
    let s2 = conjugation_automorphism(&alg, &d2).unwrap();
    let s3 = conjugation_automorphism(&alg, &d3).unwrap();
    assert_eq!(s1.order, 2);
    // the product conjugation is an order-2 automorphism distinct from
    // both factors
    {
        let s12 = conjugation_automorphism(&alg, &d1.matmul(&d2)).unwrap();
        assert_eq!(s12.order, 2);
        assert_ne!(s12.mat, s1.mat);
        assert_ne!(s12.mat, s2.mat);
        assert_eq!(s12.mat, s1.mat.matmul(&s2.mat));
    }
    let tuple = AutTuple::new(vec![s1, s2, s3]).unwrap();
    assert_eq!(tuple.group_order, 8);
    assert_eq!(tuple.invariant_factors, vec![2, 2, 2]);

    let report = check_a_conditions(&alg, &tuple, None, None).unwrap();
    assert!(report.passes, "failures: {:?}", report.failures);
    assert_eq!(report.fixed.alg.dim(), 3);
    assert_eq!(report.delta_g_type, Some(RootSystemType::new(Family::A, 1).unwrap()));
    assert_eq!(report.delta_type, Some(RootSystemType::new(Family::A, 1).unwrap()));

    // Cartan is spanned by e11 - e33 in the matrix realization
    let real = alg.matrix_real.as_ref().unwrap();
    let mut m = KMat::zero(&ctx, 7, 7);
    m.set(0, 0, ctx.one());
    m.set(2, 2, ctx.from_int(-1));
    let coords = real.coordinates(&m).unwrap();
    assert_eq!(report.h_ambient.dim(), 1);
    assert!(report.h_ambient.contains(&coords));

    // component dimensions: 3 fixed; four 3-dim adjoint; three 2-dim trivial
    let mut dims: Vec<usize> = report.components.iter().map(|(_, d, _)| *d).collect();
    dims.sort();
    assert_eq!(dims, vec![2, 2, 2, 3, 3, 3, 3, 3]);
    let mut adjoint = 0;
    let mut trivial2 = 0;
    for (_, d, rep) in &report.components {
        if let Some(rep) = rep {
            if rep.summands.len() == 1 && rep.summands[0].identity == SummandId::Adjoint {
                adjoint += 1;
            }
            if *d == 2 && rep.summands.iter().all(|s| s.identity == SummandId::Trivial) {
                trivial2 += 1;
            }
        }
    }
    assert_eq!(adjoint, 4);
    assert_eq!(trivial2, 3);

    // torus construction and axioms
    let torus = build_multiloop(&alg, tuple, None, None).unwrap();
    assert!(torus.is_torus);
    let ax = verify_lie_torus_axioms(&torus).unwrap();
    assert!(ax.pass, "{:?}", ax.checks().iter().map(|c| (&c.name, c.pass, &c.witness)).collect::<Vec<_>>());

    // the twisted torus is not untwisted: its Cartan has rank 1 inside a
    // rank-3 algebra
    assert!(!lietorus::classify::untwisted_test(&torus));

    // semilattices: short root supports 5 residues, zero weight all 8
    let sem = support_semilattices(&torus).unwrap();
    assert!(sem.pass, "{:?}", sem.checks.iter().map(|c| (&c.name, c.pass, &c.witness)).collect::<Vec<_>>());
    let ident = torus.report.datum_s.system().unwrap();
    let eps_idx = ident.coords.iter().position(|c| *c == vec![1]).unwrap();
    assert_eq!(sem.residues[&eps_idx].len(), 5);
    let zero_idx = torus.report.datum_s.zero_index;
    assert_eq!(sem.residues[&zero_idx].len(), 8);

    // central grading group: index 8
    let cg = central_grading_group(&torus).unwrap();
    assert!(cg.pass);
    assert_eq!(cg.index, 8);

    // root grading pair
    let pair = root_grading_pair(&torus).unwrap();
    assert!(pair.pass);
    assert_eq!(pair.g.dim(), 3);

    // sl2 normalization at the (eps1, 0) cell exists
    let zero_res = torus.zero_residue();
    sl2_pair(&torus, eps_idx, &zero_res).unwrap();

    // Weyl automorphism degree law on a small window
    let rep = weyl_automorphism_window(&torus, eps_idx, &[1, 0, 0], 1).unwrap();
    assert!(rep.pass);

    // admissible shift (1,1,1): the twisted fixed algebra contains e71 - e37
    let shift = RootLatticeHom { images: vec![vec![1, 1, 1]] };
    let iso = make_isotope(&torus, &shift).unwrap();
    assert!(iso.pass, "{:?}", iso.checks.iter().map(|c| (&c.name, c.pass, &c.witness)).collect::<Vec<_>>());
    let mut w = KMat::zero(&ctx, 7, 7);
    w.set(6, 0, ctx.one());
    w.set(2, 6, ctx.from_int(-1));
    let wc = real.coordinates(&w).expect("e71 - e37 lies in the algebra");
    let fs = lietorus::autos::fixed_space(&alg, &iso.twisted_tuple);
    assert!(fs.contains(&wc));
    assert!(torus.report.datum_s.weights[eps_idx].space.contains(&wc));
    // the twist is conjugation by diag(-1,1,-1,Id4) on each entry
    let d = diag(&ctx, [-1, 1, -1, 1, 1, 1, 1]);
    let cd = conjugation_automorphism(&alg, &d).unwrap();
    for tw in &iso.twists {
        assert_eq!(tw.mat, cd.mat);
    }

    // inadmissible shift (1,1,0)
    let bad = RootLatticeHom { images: vec![vec![1, 1, 0]] };
    match make_isotope(&torus, &bad) {
        Err(lietorus::LtError::NotAdmissible { base_index: 0 }) => {}
        other => panic!("expected inadmissibility, got {:?}", other.map(|r| r.pass)),
    }

    // bracket grading on character components and on cells
    {
        for (r1, c1) in &torus.grading.components {
            for (r2, c2) in &torus.grading.components {
                let sum: Vec<i64> = r1
                    .iter()
                    .zip(r2)
                    .zip(&torus.orders)
                    .map(|((&a, &b), &m)| (a + b).rem_euclid(m as i64))
                    .collect();
                let target = torus.grading.component(&sum).unwrap();
                for i in 0..c1.dim() {
                    for j in 0..c2.dim() {
                        let br = alg.bracket(c1.basis_row(i), c2.basis_row(j));
                        if br.iter().any(|c| !c.is_zero()) {
                            assert!(target.contains(&br), "character grading violated");
                        }
                    }
                }
            }
        }
    }

    // a non-homogeneous element is rejected by the window bracket
    {
        let ident = torus.report.datum_s.system().unwrap();
        let eps = ident.coords.iter().position(|c| *c == vec![1]).unwrap();
        let bad = lietorus::torus::WindowElement {
            vector: torus.cell(eps, &[1, 0, 0]).unwrap().basis_row(0).to_vec(),
            degree: vec![0, 0, 0],
        };
        let ok = lietorus::torus::WindowElement {
            vector: torus.cell(eps, &[1, 0, 0]).unwrap().basis_row(0).to_vec(),
            degree: vec![1, 0, 0],
        };
        assert!(matches!(
            lietorus::torus::window_bracket(&torus, &bad, &ok),
            Err(lietorus::LtError::HomogeneityViolation)
        ));
    }

    // killing form pairing: cells pair to zero unless both the weight and
    // the residue cancel
    {
        let kappa = lietorus::liealg::killing_form(&alg);
        let datum = &torus.report.datum_s;
        let pair_val = |x: &[lietorus::exactfield::CyclotomicNumber],
                        y: &[lietorus::exactfield::CyclotomicNumber]| {
            let mut acc = ctx.zero();
            for (i, a) in x.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in y.iter().enumerate() {
                    if !b.is_zero() {
                        acc = &acc + &(&(a * b) * kappa.at(i, j));
                    }
                }
            }
            acc
        };
        for ((w1, r1), c1) in &torus.cells {
            for ((w2, r2), c2) in &torus.cells {
                let wsum: Vec<_> = datum.weights[*w1]
                    .values
                    .iter()
                    .zip(&datum.weights[*w2].values)
                    .map(|(a, b)| a + b)
                    .collect();
                let rsum: Vec<i64> = r1
                    .iter()
                    .zip(r2)
                    .zip(&torus.orders)
                    .map(|((&a, &b), &m)| (a + b).rem_euclid(m as i64))
                    .collect();
                let cancels =
                    wsum.iter().all(|c| c.is_zero()) && rsum.iter().all(|&x| x == 0);
                if !cancels {
                    for i in 0..c1.dim() {
                        for j in 0..c2.dim() {
                            assert!(
                                pair_val(c1.basis_row(i), c2.basis_row(j)).is_zero(),
                                "cells pair nontrivially without cancelling"
                            );
                        }
                    }
                }
            }
        }
        // nondegeneracy on the whole algebra
        assert_eq!(kappa.rank(), 21);
    }

    // group order is invariant under the unimodular power action, and the
    // fingerprint of the rebuilt torus is unchanged
    {
        let p = lietorus::intmat::IMat::from_rows(vec![
            vec![1, 1, 0],
            vec![0, 1, 0],
            vec![1, 1, 1],
        ]);
        assert!(p.is_unimodular());
        let powered = lietorus::autos::tuple_power_action(&alg, &torus.tuple, &p).unwrap();
        assert_eq!(powered.group_order, 8);
        let t2 = build_multiloop(&alg, powered, None, None).unwrap();
        assert!(t2.is_torus);
        let fp1 = lietorus::classify::biiso_fingerprint(&torus).unwrap();
        let fp2 = lietorus::classify::biiso_fingerprint(&t2).unwrap();
        assert_eq!(fp1, fp2);
    }

    // isotope involution: undoing the shift returns the original tuple,
    // certified as a bi-isomorphism with trivial data
    {
        let back = make_isotope(&iso.new_torus, &shift.negate()).unwrap();
        assert!(back.pass);
        let cert = lietorus::classify::certificate_check(
            &back.new_torus,
            &torus,
            &lietorus::intmat::IMat::identity(3),
            &lietorus::linalg::KMat::identity(&ctx, alg.dim()),
            lietorus::classify::CertificateMode::BiIsomorphism,
        )
        .unwrap();
        assert!(cert);
    }

    // two degree-(1,0,0) homogeneous elements bracket into degree (2,0,0),
    // which lies over the trivial residue
    {
        let ident = torus.report.datum_s.system().unwrap();
        let eps = ident.coords.iter().position(|c| *c == vec![1]).unwrap();
        let neg = ident.coords.iter().position(|c| *c == vec![-1]).unwrap();
        let e = lietorus::torus::WindowElement {
            vector: torus.cell(eps, &[1, 0, 0]).unwrap().basis_row(0).to_vec(),
            degree: vec![1, 0, 0],
        };
        let f = lietorus::torus::WindowElement {
            vector: torus.cell(neg, &[1, 0, 0]).unwrap().basis_row(0).to_vec(),
            degree: vec![1, 0, 0],
        };
        let out = lietorus::torus::window_bracket(&torus, &e, &f).unwrap();
        assert_eq!(out.degree, vec![2, 0, 0]);
        assert!(out.vector.iter().any(|c| !c.is_zero()));
        assert_eq!(torus.reduce(&out.degree), vec![0, 0, 0]);
        let zero_comp = torus.grading.component(&[0, 0, 0]).unwrap();
        assert!(zero_comp.contains(&out.vector));
    }

    // the bad twist's fixed algebra is one dimensional, hence not simple
    let tau12 = {
        let m = cd.mat.clone();
        lietorus::autos::Automorphism::new(&alg, m).unwrap()
    };
    let bad_entries = vec![
        lietorus::autos::Automorphism::new(&alg, tau12.mat.matmul(&torus.tuple.entries[0].mat)).unwrap(),
        lietorus::autos::Automorphism::new(&alg, tau12.mat.matmul(&torus.tuple.entries[1].mat)).unwrap(),
        torus.tuple.entries[2].clone(),
    ];
    let bad_tuple = AutTuple::new(bad_entries).unwrap();
    let bad_fixed = lietorus::autos::fixed_space(&alg, &bad_tuple);
    assert_eq!(bad_fixed.dim(), 1);
    assert!(bad_fixed.contains(&coords));
    let bad_report = check_a_conditions(&alg, &bad_tuple, None, None);
    // the fixed algebra is abelian of dimension 1: no Cartan machinery can
    // certify it simple; the checker must fail it one way or another
    match bad_report {
        Ok(r) => assert!(!r.passes),
        Err(_) => {}
    }
}
