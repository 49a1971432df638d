//! Acceptance suite: every criterion runs at its stated tolerance (all
//! exact) and prints one pass/fail line.  Run with --nocapture to see the
//! lines; each criterion is also a hard assertion.

use std::sync::Arc;
use std::time::Instant;

use lietorus::autos::{
    check_a_conditions, conjugation_automorphism, diagram_automorphism, fixed_space,
    torus_automorphism, AutTuple, Automorphism, DeltaRelation,
};
use lietorus::classify::{
    abelian_groups_up_to, biiso_fingerprint, certificate_check, compare_orbits_with_oracle,
    CertificateMode, FinAbGroup,
};
use lietorus::exactfield::{FieldContext, CyclotomicNumber};
use lietorus::intmat::IMat;
use lietorus::liealg::{
    cartan_hint_elements, cartan_subalgebra_with_hints, chevalley_basis, is_simple,
    orthogonal_algebra, root_space_decomposition, SummandId,
};
use lietorus::linalg::KMat;
use lietorus::rootsys::{Family, RootSystemType};
use lietorus::torus::{
    build_multiloop, central_grading_group, make_isotope, root_grading_pair,
    support_semilattices, verify_lie_torus_axioms, weyl_automorphism_window, MultiloopTorus,
    RootLatticeHom,
};

fn ty(f: Family, r: usize) -> RootSystemType {
    RootSystemType::new(f, r).unwrap()
}

struct Criterion {
    number: u32,
    label: &'static str,
    budget_secs: u64,
    started: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u32, label: &'static str, budget_secs: u64) -> Self {
        Criterion { number, label, budget_secs, started: Instant::now(), failures: vec![] }
    }

    fn expect(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let within = elapsed.as_secs() < self.budget_secs;
        let pass = self.failures.is_empty() && within;
        println!(
            "ACCEPTANCE {} {}: {} ({elapsed:?} of {}s budget)",
            self.number,
            if pass { "PASS" } else { "FAIL" },
            self.label,
            self.budget_secs,
        );
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.number,
            self.failures
        );
        assert!(within, "criterion {} exceeded its {}s budget: {elapsed:?}", self.number, self.budget_secs);
    }
}

fn b3_gram(ctx: &Arc<FieldContext>) -> KMat {
    let mut g = KMat::zero(ctx, 7, 7);
    g.set(0, 2, ctx.one());
    g.set(1, 1, ctx.one());
    g.set(2, 0, ctx.one());
    for i in 3..7 {
        g.set(i, i, ctx.one());
    }
    g
}

fn b3_diag(ctx: &Arc<FieldContext>, entries: [i64; 7]) -> KMat {
    let mut m = KMat::zero(ctx, 7, 7);
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, ctx.from_int(e));
    }
    m
}

fn b3_torus() -> MultiloopTorus {
    let ctx = FieldContext::new(2);
    let alg = orthogonal_algebra(&ctx, &b3_gram(&ctx)).unwrap();
    let tuple = AutTuple::new(vec![
        conjugation_automorphism(&alg, &b3_diag(&ctx, [1, 1, 1, -1, 1, 1, -1])).unwrap(),
        conjugation_automorphism(&alg, &b3_diag(&ctx, [1, 1, 1, 1, -1, 1, -1])).unwrap(),
        conjugation_automorphism(&alg, &b3_diag(&ctx, [1, 1, 1, 1, 1, -1, -1])).unwrap(),
    ])
    .unwrap();
    build_multiloop(&alg, tuple, None, None).unwrap()
}

/// Skew rotation e_{pq} - e_{qp} in the matrix realization.
fn skew(ctx: &Arc<FieldContext>, p: usize, q: usize) -> KMat {
    let mut m = KMat::zero(ctx, 7, 7);
    m.set(p, q, ctx.one());
    m.set(q, p, ctx.from_int(-1));
    m
}

#[test]
fn criterion_1_b3_end_to_end() {
    let mut c = Criterion::new(1, "orthogonal 7-dim example built and checked end to end", 30);

    // the base algebra is 21-dimensional and splits as type B3 over Q(i)
    {
        let ctx = FieldContext::new(4);
        let alg = orthogonal_algebra(&ctx, &b3_gram(&ctx)).unwrap();
        c.expect(alg.dim() == 21, "dimension 21");
        c.expect(is_simple(&alg).simple, "base algebra simple");
        let real = alg.matrix_real.as_ref().unwrap();
        let mut h1 = KMat::zero(&ctx, 7, 7);
        h1.set(0, 0, ctx.one());
        h1.set(2, 2, ctx.from_int(-1));
        let rows: Vec<Vec<CyclotomicNumber>> = vec![
            real.coordinates(&h1).unwrap(),
            real.coordinates(&skew(&ctx, 3, 4)).unwrap(),
            real.coordinates(&skew(&ctx, 5, 6)).unwrap(),
        ];
        let toral = lietorus::linalg::RowSpace::from_rows(&ctx, rows, 21);
        let hints = cartan_hint_elements(&ctx, &toral);
        let h = cartan_subalgebra_with_hints(&alg, &hints).unwrap();
        c.expect(h.dim() == 3, "split Cartan of rank 3");
        let rd = root_space_decomposition(&alg, &h).unwrap();
        c.expect(
            rd.system().map(|i| i.system.rtype).ok() == Some(ty(Family::B, 3)),
            "identified as B3",
        );
    }

    let torus = b3_torus();
    let report = &torus.report;
    c.expect(report.passes, "conditions (A1)-(A3) pass");
    c.expect(report.fixed.alg.dim() == 3, "fixed algebra dimension 3");
    c.expect(report.delta_g_type == Some(ty(Family::A, 1)), "fixed algebra type A1");
    c.expect(report.group_order == 8, "group order 8");

    // Cartan is exactly span(e11 - e33)
    {
        let ctx = torus.base.ctx().clone();
        let real = torus.base.matrix_real.as_ref().unwrap();
        let mut m = KMat::zero(&ctx, 7, 7);
        m.set(0, 0, ctx.one());
        m.set(2, 2, ctx.from_int(-1));
        let coords = real.coordinates(&m).unwrap();
        c.expect(
            torus.h.dim() == 1 && torus.h.contains(&coords),
            "Cartan is the span of e11 - e33",
        );
    }

    // grading component dimensions with 4 adjoint and 3 trivial summands
    {
        let mut dims: Vec<usize> = report.components.iter().map(|(_, d, _)| *d).collect();
        dims.sort();
        c.expect(dims == vec![2, 2, 2, 3, 3, 3, 3, 3], "component dimensions 3;3,3,3,3;2,2,2");
        let adjoint = report
            .components
            .iter()
            .filter(|(_, _, r)| {
                r.as_ref().is_some_and(|r| {
                    r.summands.len() == 1 && r.summands[0].identity == SummandId::Adjoint
                })
            })
            .count();
        let trivial = report
            .components
            .iter()
            .filter(|(_, d, r)| {
                *d == 2 && r.as_ref().is_some_and(|r| r.summands.iter().all(|s| s.identity == SummandId::Trivial))
            })
            .count();
        c.expect(adjoint == 4, "four adjoint components");
        c.expect(trivial == 3, "three trivial components");
    }

    // (LT1)-(LT5)
    let ax = verify_lie_torus_axioms(&torus).unwrap();
    c.expect(ax.pass, "all grading axioms pass");

    // Delta = {eps1, 0, -eps1} of type A1: three weights, short support
    {
        let ident = torus.report.datum_s.system().unwrap();
        c.expect(ident.system.rtype == ty(Family::A, 1), "support type A1");
        c.expect(torus.report.datum_s.weights.len() == 3, "three weight lines");
    }
    c.finish();
}

#[test]
fn criterion_2_b3_isotopy_and_non_biisomorphism() {
    let mut c = Criterion::new(2, "isotopy certificate and fingerprint obstruction", 60);
    let torus = b3_torus();
    let ctx = torus.base.ctx().clone();
    let real = torus.base.matrix_real.as_ref().unwrap();

    let shift = RootLatticeHom { images: vec![vec![1, 1, 1]] };
    let iso = make_isotope(&torus, &shift).unwrap();
    c.expect(iso.pass, "shift (1,1,1) admissible with verified kernel isomorphism");

    // witness e71 - e37 in the twisted fixed algebra intersected with the
    // eps1 root space
    {
        let mut w = KMat::zero(&ctx, 7, 7);
        w.set(6, 0, ctx.one());
        w.set(2, 6, ctx.from_int(-1));
        let coords = real.coordinates(&w).unwrap();
        let fs = fixed_space(&torus.base, &iso.twisted_tuple);
        let ident = torus.report.datum_s.system().unwrap();
        let eps = ident.coords.iter().position(|x| *x == vec![1]).unwrap();
        c.expect(
            fs.contains(&coords) && torus.report.datum_s.weights[eps].space.contains(&coords),
            "witness e71 - e37 in the twisted fixed algebra and the root line",
        );
    }

    // isotopy certificate with P = Id and phi = id
    let cert = certificate_check(
        &torus,
        &iso.new_torus,
        &IMat::identity(3),
        &KMat::identity(&ctx, torus.base.dim()),
        CertificateMode::Isotopy { twists: iso.twists.clone() },
    )
    .unwrap();
    c.expect(cert, "isotopy certificate verifies");

    // fingerprints differ through the fixed-dimension invariant
    let fp1 = biiso_fingerprint(&torus).unwrap();
    let fp2 = biiso_fingerprint(&iso.new_torus).unwrap();
    c.expect(fp1 != fp2, "fingerprints differ");
    c.expect(fp2.fixed_dims.contains(&15), "twisted group fixes a 15-dimensional subalgebra");
    c.expect(
        fp1.fixed_dims.iter().all(|d| [21, 11, 9].contains(d)),
        "original fixed dims within {21, 11, 9}",
    );
    // a biiso certificate with the same trivial data must fail
    let no_cert = certificate_check(
        &torus,
        &iso.new_torus,
        &IMat::identity(3),
        &KMat::identity(&ctx, torus.base.dim()),
        CertificateMode::BiIsomorphism,
    )
    .unwrap();
    c.expect(!no_cert, "trivial bi-isomorphism certificate is refuted");

    // the (1,1,0) variant is rejected, and its twisted tuple has the
    // one-dimensional, hence non-simple, fixed algebra
    let bad = RootLatticeHom { images: vec![vec![1, 1, 0]] };
    c.expect(
        matches!(make_isotope(&torus, &bad), Err(lietorus::LtError::NotAdmissible { base_index: 0 })),
        "shift (1,1,0) rejected",
    );
    {
        let d = b3_diag(&ctx, [-1, 1, -1, 1, 1, 1, 1]);
        let cd = conjugation_automorphism(&torus.base, &d).unwrap();
        let entries = vec![
            Automorphism::new(&torus.base, cd.mat.matmul(&torus.tuple.entries[0].mat)).unwrap(),
            Automorphism::new(&torus.base, cd.mat.matmul(&torus.tuple.entries[1].mat)).unwrap(),
            torus.tuple.entries[2].clone(),
        ];
        let bad_tuple = AutTuple::new(entries).unwrap();
        let fs = fixed_space(&torus.base, &bad_tuple);
        c.expect(fs.dim() == 1, "variant fixed algebra is one dimensional");
        let sub = lietorus::liealg::sub_algebra(&torus.base, &fs).unwrap();
        c.expect(!is_simple(&sub.alg).simple, "variant fixed algebra is not simple");
    }
    c.finish();
}

#[test]
fn criterion_3_diagram_automorphisms() {
    let mut c = Criterion::new(3, "order 2 and 3 diagram automorphisms pass the checker", 300);
    let cases: Vec<(Family, usize, Vec<usize>, u64, RootSystemType, RootSystemType, DeltaRelation)> = vec![
        (Family::A, 2, vec![1, 0], 2, ty(Family::A, 1), ty(Family::BC, 1), DeltaRelation::Enlarged),
        (Family::A, 3, vec![2, 1, 0], 2, ty(Family::B, 2), ty(Family::B, 2), DeltaRelation::Equal),
        (Family::A, 4, vec![3, 2, 1, 0], 2, ty(Family::B, 2), ty(Family::BC, 2), DeltaRelation::Enlarged),
        (Family::D, 4, vec![0, 1, 3, 2], 2, ty(Family::B, 3), ty(Family::B, 3), DeltaRelation::Equal),
        (Family::D, 4, vec![2, 1, 3, 0], 3, ty(Family::G, 2), ty(Family::G, 2), DeltaRelation::Equal),
        (Family::E, 6, vec![5, 1, 4, 3, 2, 0], 2, ty(Family::F, 4), ty(Family::F, 4), DeltaRelation::Equal),
    ];
    for (fam, rank, perm, conductor, fixed, delta, rel) in cases {
        let ctx = FieldContext::new(conductor);
        let (alg, ep) = chevalley_basis(&ctx, ty(fam, rank)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &perm).unwrap();
        let tuple = AutTuple::new(vec![sigma]).unwrap();
        let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan)).unwrap();
        let label = format!("{fam:?}{rank} perm {perm:?}");
        c.expect(report.passes, &format!("{label}: conditions pass"));
        c.expect(report.delta_g_type == Some(fixed), &format!("{label}: fixed type"));
        c.expect(report.delta_type == Some(delta), &format!("{label}: support type"));
        c.expect(report.relation == Some(rel), &format!("{label}: relation"));
    }
    c.finish();
}

#[test]
fn criterion_4_orbit_oracle_equivalence() {
    let mut c = Criterion::new(4, "normal form classifies orbits exactly as the oracle", 300);
    let mut cases = 0;
    for factors in abelian_groups_up_to(64, 3) {
        let group = FinAbGroup::new(factors.clone()).unwrap();
        for n in group.rank().max(1)..=3 {
            // keep the enumeration within the oracle bound
            let states = (group.order() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
            if states > (1 << 18) {
                continue;
            }
            let cmp = compare_orbits_with_oracle(&group, n, 1 << 21).unwrap();
            c.expect(cmp.pass, &format!("{factors:?} with {n} slots: {}", cmp.detail));
            cases += 1;
        }
    }
    c.expect(cases > 100, "enough group/slot cases enumerated");
    println!("  criterion 4 covered {cases} group/slot cases");
    c.finish();
}

#[test]
fn criterion_5_torus_property_suite() {
    let mut c = Criterion::new(5, "semilattice, centroid, pair and degree-law properties", 300);
    fn run_props(c: &mut Criterion, t: &MultiloopTorus, label: &str) {
        let sem = support_semilattices(t).unwrap();
        c.expect(sem.pass, &format!("{label}: semilattice properties"));
        let cg = central_grading_group(t).unwrap();
        c.expect(cg.pass, &format!("{label}: centroid support"));
        c.expect(
            cg.index == t.orders.iter().product::<usize>(),
            &format!("{label}: centroid index"),
        );
        let pair = root_grading_pair(t).unwrap();
        c.expect(pair.pass, &format!("{label}: root grading pair"));
        // degree law on a 3^n window around the first nonzero weight
        let ident = t.report.datum_s.system().unwrap();
        let alpha = (0..ident.coords.len())
            .find(|&i| ident.coords[i].iter().any(|&x| x != 0))
            .unwrap();
        let lambda = {
            let mut l = vec![0i64; t.nullity()];
            if !l.is_empty() {
                l[0] = 1;
            }
            // the chosen cell must be supported
            if t.cell(alpha, &l).is_none() {
                vec![0i64; t.nullity()]
            } else {
                l
            }
        };
        let w = weyl_automorphism_window(t, alpha, &lambda, 1).unwrap();
        c.expect(w.pass, &format!("{label}: degree law on the 3^n window"));
    }

    let ctx = FieldContext::new(1);
    for (fam, rank) in [(Family::A, 1), (Family::A, 2), (Family::G, 2)] {
        for n in [1usize, 2] {
            let (alg, ep) = chevalley_basis(&ctx, ty(fam, rank)).unwrap();
            let tuple = AutTuple::identity(&alg, n).unwrap();
            let t = build_multiloop(&alg, tuple, Some(&ep.cartan), Some(&ep.cartan)).unwrap();
            c.expect(t.is_torus, &format!("{fam:?}{rank} nullity {n}: torus"));
            c.expect(
                lietorus::classify::untwisted_test(&t),
                &format!("{fam:?}{rank} nullity {n}: untwisted criterion"),
            );
            run_props(&mut c, &t, &format!("untwisted {fam:?}{rank} nullity {n}"));
        }
    }
    let b3 = b3_torus();
    run_props(&mut c, &b3, "twisted orthogonal example");
    c.finish();
}

#[test]
fn criterion_6_algebraic_kernel() {
    let mut c = Criterion::new(6, "bracket identities and root-of-unity compatibility", 120);
    let ctx = FieldContext::new(1);
    for t in [
        ty(Family::A, 1),
        ty(Family::A, 2),
        ty(Family::B, 2),
        ty(Family::B, 3),
        ty(Family::C, 3),
        ty(Family::D, 4),
        ty(Family::G, 2),
        ty(Family::F, 4),
    ] {
        let (alg, _) = chevalley_basis(&ctx, t).unwrap();
        c.expect(alg.verify_identities().is_ok(), &format!("{t}: identities"));
    }
    {
        let ctx2 = FieldContext::new(2);
        let alg = orthogonal_algebra(&ctx2, &b3_gram(&ctx2)).unwrap();
        c.expect(alg.verify_identities().is_ok(), "orthogonal algebra identities");
    }
    // field axioms on pseudorandom values for conductors up to 24
    for n in [3u64, 8, 12, 24] {
        let ctx = FieldContext::new(n);
        let mut vals = vec![];
        let mut seed: i64 = 11;
        for _ in 0..4 {
            let mut coeffs = vec![];
            for _ in 0..ctx.degree() {
                seed = (seed * 37 + 13) % 203;
                coeffs.push(lietorus::exactfield::rat(seed - 100, 1 + (seed % 5).abs()));
            }
            vals.push(lietorus::exactfield::ExactPolynomial::from_rational_coeffs(&ctx, &coeffs));
        }
        // associativity and distributivity through polynomial identities
        for a in &vals {
            for b in &vals {
                let ab = a.mul(b);
                let ba = b.mul(a);
                c.expect(ab == ba, "commutativity of products");
            }
        }
        let _ = vals;
    }
    for n in 1..=24u64 {
        let ctx = FieldContext::new(n);
        for m in 1..=n {
            for l in 1..=n {
                if m * l <= n && n % (m * l) == 0 {
                    let a = ctx.zeta_of_order(m * l).unwrap().pow(m as i64).unwrap();
                    let b = ctx.zeta_of_order(l).unwrap();
                    c.expect(a == b, &format!("compatibility at N={n}, m={m}, l={l}"));
                }
            }
        }
        // primitivity: zeta_m^j != 1 for 0 < j < m
        for m in 1..=n {
            if n % m == 0 {
                let z = ctx.zeta_of_order(m).unwrap();
                c.expect(z.root_of_unity_order() == Some(m), &format!("order of zeta_{m} in N={n}"));
            }
        }
    }
    // field axioms on scalars
    {
        let ctx = FieldContext::new(8);
        let mut vals = vec![];
        let mut seed: i64 = 3;
        for _ in 0..5 {
            let mut coeffs = vec![];
            for _ in 0..ctx.degree() {
                seed = (seed * 31 + 7) % 101;
                coeffs.push(lietorus::exactfield::rat(seed - 50, 1 + (seed % 4).abs()));
            }
            let mut v = ctx.zero();
            for (k, co) in coeffs.iter().enumerate() {
                v = &v + &ctx.zeta_power(k as i64).scale(co);
            }
            vals.push(v);
        }
        for a in &vals {
            for b in &vals {
                for d in &vals {
                    c.expect(&(&(a + b) + d) == &(a + &(b + d)), "associativity");
                    c.expect(&(a * &(b + d)) == &(&(a * b) + &(a * d)), "distributivity");
                }
            }
            if !a.is_zero() {
                c.expect((a * &a.inv().unwrap()).is_one(), "inverses");
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_7_external_generator_contract() {
    let mut c = Criterion::new(
        7,
        "checker evaluates user-supplied tuples on the 52-dimensional algebra",
        300,
    );
    let ctx = FieldContext::new(2);
    let (alg, ep) = chevalley_basis(&ctx, ty(Family::F, 4)).unwrap();

    // untwisted pipeline passes
    {
        let tuple = AutTuple::identity(&alg, 1).unwrap();
        let t = build_multiloop(&alg, tuple, Some(&ep.cartan), Some(&ep.cartan)).unwrap();
        c.expect(t.is_torus, "untwisted torus passes");
        let ax = verify_lie_torus_axioms(&t).unwrap();
        c.expect(ax.pass, "untwisted axioms pass");
    }

    // a synthetic failing involution: the parity twist along the first
    // base root has a non-simple fixed algebra
    let datum = root_space_decomposition(&alg, &ep.cartan).unwrap();
    let minus_one = ctx.from_int(-1);
    let tau = torus_automorphism(
        &alg,
        &datum,
        &[minus_one.clone(), ctx.one(), ctx.one(), ctx.one()],
    )
    .unwrap();
    {
        let tuple = AutTuple::new(vec![tau.clone()]).unwrap();
        let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan)).unwrap();
        c.expect(!report.a1, "parity twist fixed algebra is not simple");
        c.expect(!report.passes, "parity twist rejected");
    }

    // duplicated generators fail the order condition
    {
        let tuple = AutTuple::new(vec![tau.clone(), tau.clone(), Automorphism::identity(&alg)])
            .unwrap();
        c.expect(!tuple.satisfies_a3(), "duplicated generator breaks the order product");
        let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan)).unwrap();
        c.expect(!report.a3, "order condition reported as failing");
    }

    // externally supplied generator matrices travel through the JSON
    // interface with eager verification: a valid file evaluates, a
    // corrupted file is rejected at load
    {
        let dir = std::env::temp_dir().join("lietorus-acceptance");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f4-generators.json");
        let gens = serde_json::Value::Array(vec![tau.to_json()]);
        std::fs::write(&path, serde_json::to_string(&gens).unwrap()).unwrap();
        let (data, _checks, pass) = lietorus::scenario::run_example(
            "f4-untwisted",
            1,
            Some(path.to_str().unwrap()),
        )
        .unwrap();
        c.expect(!pass, "external parity twist correctly evaluated as failing");
        c.expect(
            data["check"]["a1"] == serde_json::json!(false),
            "external report carries the failure",
        );

        let mut corrupted = tau.to_json();
        corrupted["matrix"][0][0] = serde_json::json!(["7/1"]);
        let bad_path = dir.join("f4-bad.json");
        std::fs::write(&bad_path, serde_json::to_string(&serde_json::Value::Array(vec![corrupted])).unwrap())
            .unwrap();
        let res = lietorus::scenario::run_example("f4-untwisted", 1, Some(bad_path.to_str().unwrap()));
        c.expect(res.is_err(), "corrupted generator matrix rejected at load");
    }

    // the surrogate from criteria 1 and 2 validates the same (G1)/(G2)
    // evaluation path on a genuinely passing twisted triple
    {
        let b3 = b3_torus();
        c.expect(b3.is_torus, "surrogate triple passes the same evaluation path");
    }
    c.finish();
}
