//! Scenario runner behind the command line: parses JSON scenario specs,
//! dispatches to the library, and renders deterministic JSON reports
//! (sorted keys, stable orderings, no floating point anywhere).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::autos::{
    check_a_conditions, conjugation_automorphism, diagram_automorphism, grading_by_tuple,
    torus_automorphism, AutTuple, Automorphism, DeltaRelation,
};
use crate::classify::{
    abelian_groups_up_to, biiso_fingerprint, certificate_check, compare_orbits_with_oracle,
    normalize_mod_ideal, orbit_representatives, solve_congruence_system, CertificateMode,
    FinAbGroup, Modulus,
};
use crate::error::{LtError, Result};
use crate::exactfield::{parse_rat, FieldContext};
use crate::intmat::IMat;
use crate::liealg::{
    chevalley_basis, is_simple, orthogonal_algebra, root_space_decomposition, Epinglage,
    LieAlgebra,
};
use crate::linalg::KMat;
use crate::rootsys::RootSystemType;
use crate::torus::{
    build_multiloop, central_grading_group, make_isotope, root_grading_pair,
    support_semilattices, verify_lie_torus_axioms, weyl_automorphism_window, Check,
    MultiloopTorus, RootLatticeHom,
};

/// Where the base algebra comes from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSource {
    /// A named split simple type, e.g. "F4".
    Named { name: String },
    /// Orthogonal algebra of an exact symmetric gram matrix.
    Orthogonal { gram: Vec<Vec<String>> },
    /// Structure constants from a JSON file.
    File { path: String },
    /// Structure constants inline.
    Inline { algebra: Value },
}

/// Where each automorphism comes from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutoSource {
    Identity,
    /// Base permutation, 0-indexed, in the standard base order.
    Diagram { perm: Vec<usize> },
    /// Scalar action on root spaces: base root i gets zeta_order^powers[i].
    TorusScalars { order: u64, powers: Vec<i64> },
    /// Conjugation by an exact matrix preserving the defining form.
    Conjugation { matrix: Vec<Vec<String>> },
    /// Full matrix automorphism from a JSON file (externally supplied
    /// generators enter here) or inline.
    MatrixFile { path: String },
    MatrixInline { automorphism: Value },
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct ScenarioSpec {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSource>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<AutoSource>,
    /// Extra factor multiplied into the working conductor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductor_factor: Option<u64>,
    /// Shift images per base root for isotopes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<i64>>>,
    /// Invariant factors for orbit commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slots: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    /// Second tuple for certificates.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms2: Vec<AutoSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_matrix: Option<Vec<Vec<i64>>>,
    /// "identity" or a matrix of exact scalars.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<AutoSource>,
    /// Path to externally supplied generator matrices (JSON array).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<String>,
}

pub struct Report {
    pub value: Value,
    pub pass: bool,
}

impl Report {
    pub fn to_canonical_json(&self) -> String {
        // serde_json maps are BTree-backed: keys come out sorted
        serde_json::to_string_pretty(&self.value).expect("report serializes")
    }
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "pass": c.pass,
                    "witness": c.witness,
                })
            })
            .collect(),
    )
}

fn parse_exact_matrix(ctx: &Arc<FieldContext>, rows: &[Vec<String>]) -> Result<KMat> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    let mut m = KMat::zero(ctx, r, c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(LtError::SchemaError("ragged matrix".into()));
        }
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, ctx.from_rat(parse_rat(s)?));
        }
    }
    Ok(m)
}

fn imat_from(rows: &[Vec<i64>]) -> Result<IMat> {
    let c = rows.first().map_or(0, |x| x.len());
    if rows.iter().any(|r| r.len() != c) {
        return Err(LtError::SchemaError("ragged integer matrix".into()));
    }
    Ok(IMat::from_rows(rows.to_vec()))
}

fn read_json_file(path: &str) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| LtError::IoError(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| LtError::SchemaError(format!("{path}: {e}")))
}

/// Multiplicative order of an exact matrix, bounded.
fn probe_matrix_order(rows: &[Vec<String>]) -> Result<u64> {
    let ctx = FieldContext::new(1);
    let m = parse_exact_matrix(&ctx, rows)?;
    if m.rows != m.cols {
        return Err(LtError::SchemaError("conjugating matrix must be square".into()));
    }
    let mut acc = m.clone();
    for k in 1..=60u64 {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.matmul(&m);
    }
    Err(LtError::OrderBoundExceeded(60))
}

/// The working conductor: lcm of all requested automorphism orders times
/// the user factor.
fn conductor_for(spec: &ScenarioSpec) -> Result<u64> {
    let mut n: u64 = 1;
    let mut bump = |m: u64| {
        n = num_integer::lcm(n, m.max(1));
    };
    for sources in [&spec.automorphisms, &spec.automorphisms2, &spec.twists] {
        for a in sources {
            match a {
                AutoSource::Identity => {}
                AutoSource::Diagram { perm } => {
                    let mut p: Vec<usize> = (0..perm.len()).collect();
                    let mut ord = 1u64;
                    loop {
                        p = p.iter().map(|&i| *perm.get(i).unwrap_or(&i)).collect();
                        if p.iter().enumerate().all(|(i, &x)| i == x) {
                            break;
                        }
                        ord += 1;
                        if ord > 6 {
                            return Err(LtError::SchemaError("permutation order overflow".into()));
                        }
                    }
                    bump(ord);
                }
                AutoSource::TorusScalars { order, .. } => bump(*order),
                AutoSource::Conjugation { matrix } => bump(probe_matrix_order(matrix)?),
                AutoSource::MatrixFile { path } => {
                    let v = read_json_file(path)?;
                    bump(v["conductor"].as_u64().unwrap_or(1));
                }
                AutoSource::MatrixInline { automorphism } => {
                    bump(automorphism["conductor"].as_u64().unwrap_or(1));
                }
            }
        }
    }
    Ok(n * spec.conductor_factor.unwrap_or(1))
}

struct BuiltAlgebra {
    alg: LieAlgebra,
    ep: Option<Epinglage>,
}

fn build_algebra(ctx: &Arc<FieldContext>, src: &AlgebraSource) -> Result<BuiltAlgebra> {
    match src {
        AlgebraSource::Named { name } => {
            let t = RootSystemType::parse(name)?;
            let (alg, ep) = chevalley_basis(ctx, t)?;
            Ok(BuiltAlgebra { alg, ep: Some(ep) })
        }
        AlgebraSource::Orthogonal { gram } => {
            let g = parse_exact_matrix(ctx, gram)?;
            Ok(BuiltAlgebra { alg: orthogonal_algebra(ctx, &g)?, ep: None })
        }
        AlgebraSource::File { path } => {
            let v = read_json_file(path)?;
            Ok(BuiltAlgebra { alg: LieAlgebra::from_json(&v)?, ep: None })
        }
        AlgebraSource::Inline { algebra } => {
            Ok(BuiltAlgebra { alg: LieAlgebra::from_json(algebra)?, ep: None })
        }
    }
}

fn build_autos(
    built: &BuiltAlgebra,
    sources: &[AutoSource],
) -> Result<Vec<Automorphism>> {
    let alg = &built.alg;
    let mut out = vec![];
    // the root datum for torus scalars is computed on demand
    let mut datum = None;
    for s in sources {
        let a = match s {
            AutoSource::Identity => Automorphism::identity(alg),
            AutoSource::Diagram { perm } => {
                let ep = built
                    .ep
                    .as_ref()
                    .ok_or_else(|| LtError::SchemaError("diagram automorphism needs a named algebra".into()))?;
                diagram_automorphism(alg, ep, perm)?
            }
            AutoSource::TorusScalars { order, powers } => {
                if datum.is_none() {
                    let ep = built.ep.as_ref().ok_or_else(|| {
                        LtError::SchemaError("torus scalars need a named algebra".into())
                    })?;
                    datum = Some(root_space_decomposition(alg, &ep.cartan)?);
                }
                let d = datum.as_ref().unwrap();
                let zeta = alg.ctx().zeta_of_order(*order)?;
                let scalars: Vec<_> = powers
                    .iter()
                    .map(|&k| zeta.pow(k))
                    .collect::<Result<_>>()?;
                torus_automorphism(alg, d, &scalars)?
            }
            AutoSource::Conjugation { matrix } => {
                let g = parse_exact_matrix(alg.ctx(), matrix)?;
                conjugation_automorphism(alg, &g)?
            }
            AutoSource::MatrixFile { path } => {
                let v = read_json_file(path)?;
                Automorphism::from_json(alg, &v)?
            }
            AutoSource::MatrixInline { automorphism } => Automorphism::from_json(alg, automorphism)?,
        };
        out.push(a);
    }
    Ok(out)
}

fn torus_from_spec(spec: &ScenarioSpec) -> Result<(BuiltAlgebra, MultiloopTorus)> {
    let conductor = conductor_for(spec)?;
    let ctx = FieldContext::new(conductor);
    let src = spec
        .algebra
        .as_ref()
        .ok_or_else(|| LtError::SchemaError("an algebra source is required".into()))?;
    let built = build_algebra(&ctx, src)?;
    let autos = build_autos(&built, &spec.automorphisms)?;
    if autos.is_empty() {
        return Err(LtError::SchemaError("at least one automorphism is required".into()));
    }
    let tuple = AutTuple::new(autos)?;
    let hint = built.ep.as_ref().map(|e| e.cartan.clone());
    let torus = build_multiloop(&built.alg, tuple, None, hint.as_ref())?;
    Ok((built, torus))
}

fn window_radius(spec: &ScenarioSpec) -> i64 {
    spec.window
        .or_else(|| std::env::var("LIETORUS_WINDOW").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(2)
}

/// Torus report body per the external interface: type, nullity, orders,
/// root support, semilattice residues, central index, axiom checks.
fn torus_report_body(t: &MultiloopTorus) -> Result<(Value, Vec<Check>, bool)> {
    let mut checks: Vec<Check> = vec![];
    let ax = verify_lie_torus_axioms(t)?;
    checks.extend(ax.checks().into_iter().cloned());
    let mut body = Map::new();
    body.insert("nullity".into(), json!(t.nullity()));
    body.insert("orders".into(), json!(t.orders));
    body.insert(
        "type".into(),
        json!(t.report.delta_type.map(|x| x.to_string())),
    );
    body.insert(
        "fixed_type".into(),
        json!(t.report.delta_g_type.map(|x| x.to_string())),
    );
    body.insert("is_torus".into(), json!(t.is_torus));
    body.insert(
        "component_dims".into(),
        json!(t
            .grading
            .components
            .iter()
            .map(|(r, s)| json!({ "residue": r, "dim": s.dim() }))
            .collect::<Vec<_>>()),
    );
    if let Some(id) = &t.report.datum_s.identified {
        let mut supp = vec![];
        for (w, coords) in id.coords.iter().enumerate() {
            supp.push(json!({
                "root": coords,
                "dim": t.report.datum_s.weights[w].space.dim(),
                "residues": t.residues_of(w),
            }));
        }
        body.insert("support".into(), Value::Array(supp));
    }
    let mut pass = ax.pass;
    if t.is_torus {
        let sem = support_semilattices(t)?;
        checks.extend(sem.checks.iter().cloned());
        pass &= sem.pass;
        let pair = root_grading_pair(t)?;
        checks.extend(pair.checks.iter().cloned());
        pass &= pair.pass;
        body.insert("pair_g_dim".into(), json!(pair.g.dim()));
        body.insert("pair_h_dim".into(), json!(pair.h.dim()));
        let cg = central_grading_group(t)?;
        checks.extend(cg.checks.iter().cloned());
        pass &= cg.pass;
        body.insert("central_index".into(), json!(cg.index));
        body.insert(
            "central_rows".into(),
            json!((0..cg.gamma_rows.rows)
                .map(|i| (0..cg.gamma_rows.cols).map(|j| cg.gamma_rows.at(i, j)).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        );
    } else {
        pass = false;
        for f in &t.report.failures {
            checks.push(Check::fail("torus conditions", f.clone()));
        }
    }
    Ok((Value::Object(body), checks, pass))
}

fn a_report_json(report: &crate::autos::AReport) -> Value {
    json!({
        "a1": report.a1,
        "a2": report.a2,
        "a3": report.a3,
        "passes": report.passes,
        "fixed_dim": report.fixed.alg.dim(),
        "delta": report.delta_type.map(|x| x.to_string()),
        "delta_g": report.delta_g_type.map(|x| x.to_string()),
        "relation": report.relation.map(|r| match r {
            DeltaRelation::Equal => "equal",
            DeltaRelation::Enlarged => "enlarged",
        }),
        "group_order": report.group_order,
        "order_product": report.order_product,
        "invariant_factors": report.invariant_factors,
        "components": report
            .components
            .iter()
            .map(|(res, dim, rep)| {
                json!({
                    "residue": res,
                    "dim": dim,
                    "summands": rep.as_ref().map(|r| r
                        .summands
                        .iter()
                        .map(|s| json!({"dim": s.dim, "identity": s.identity.to_string()}))
                        .collect::<Vec<_>>()),
                })
            })
            .collect::<Vec<_>>(),
        "failures": report.failures,
    })
}

/// Run one scenario to a deterministic report.
pub fn run(spec: &ScenarioSpec) -> Result<Report> {
    let mut root = Map::new();
    root.insert("command".into(), json!(spec.command));
    root.insert(
        "echo".into(),
        serde_json::to_value(spec).map_err(|e| LtError::SchemaError(e.to_string()))?,
    );
    let mut checks: Vec<Check> = vec![];
    let mut pass = true;
    #[allow(unused_assignments)]
    let mut data = Value::Null;

    match spec.command.as_str() {
        "build" => {
            let conductor = conductor_for(spec)?;
            let ctx = FieldContext::new(conductor);
            let src = spec
                .algebra
                .as_ref()
                .ok_or_else(|| LtError::SchemaError("an algebra source is required".into()))?;
            let built = build_algebra(&ctx, src)?;
            let cert = is_simple(&built.alg);
            checks.push(Check::ok("antisymmetry and Jacobi verified"));
            checks.push(if cert.simple {
                Check::ok("simple")
            } else {
                Check::fail("simple", "a proper nonzero ideal exists".into())
            });
            pass = cert.simple;
            data = json!({
                "conductor": conductor,
                "dim": built.alg.dim(),
                "algebra": built.alg.to_json(),
            });
        }
        "grade" => {
            let conductor = conductor_for(spec)?;
            let ctx = FieldContext::new(conductor);
            let src = spec
                .algebra
                .as_ref()
                .ok_or_else(|| LtError::SchemaError("an algebra source is required".into()))?;
            let built = build_algebra(&ctx, src)?;
            let tuple = AutTuple::new(build_autos(&built, &spec.automorphisms)?)?;
            let grading = grading_by_tuple(&built.alg, &tuple)?;
            data = json!({
                "conductor": conductor,
                "moduli": grading.moduli,
                "components": grading
                    .components
                    .iter()
                    .map(|(r, s)| json!({"residue": r, "dim": s.dim()}))
                    .collect::<Vec<_>>(),
            });
            checks.push(Check::ok("grading components fill the algebra"));
        }
        "check" => {
            let conductor = conductor_for(spec)?;
            let ctx = FieldContext::new(conductor);
            let src = spec
                .algebra
                .as_ref()
                .ok_or_else(|| LtError::SchemaError("an algebra source is required".into()))?;
            let built = build_algebra(&ctx, src)?;
            let tuple = AutTuple::new(build_autos(&built, &spec.automorphisms)?)?;
            let hint = built.ep.as_ref().map(|e| e.cartan.clone());
            let report = check_a_conditions(&built.alg, &tuple, None, hint.as_ref())?;
            for (name, ok) in [("(A1)", report.a1), ("(A2)", report.a2), ("(A3)", report.a3)] {
                checks.push(if ok {
                    Check::ok(name)
                } else {
                    Check::fail(name, report.failures.join("; "))
                });
            }
            pass = report.passes;
            let mut body = Map::new();
            body.insert("conditions".into(), a_report_json(&report));
            if report.passes {
                // a passing triple is a torus; include the axiom suite
                let torus = build_multiloop(&built.alg, tuple, None, hint.as_ref())?;
                let ax = verify_lie_torus_axioms(&torus)?;
                checks.extend(ax.checks().into_iter().cloned());
                pass &= ax.pass;
            }
            data = Value::Object(body);
        }
        "torus" => {
            let (_, torus) = torus_from_spec(spec)?;
            let (body, cks, p) = torus_report_body(&torus)?;
            checks.extend(cks);
            pass = p;
            data = body;
        }
        "isotope" => {
            let (_, torus) = torus_from_spec(spec)?;
            let images = spec
                .shift
                .clone()
                .ok_or_else(|| LtError::SchemaError("isotope needs shift images".into()))?;
            let shift = RootLatticeHom { images };
            let iso = make_isotope(&torus, &shift)?;
            checks.extend(iso.checks.iter().cloned());
            pass = iso.pass;
            let fp1 = biiso_fingerprint(&torus)?;
            let fp2 = biiso_fingerprint(&iso.new_torus)?;
            data = json!({
                "original_fingerprint": fp1.to_json(),
                "isotope_fingerprint": fp2.to_json(),
                "fingerprints_equal": fp1 == fp2,
            });
        }
        "normalize" => {
            let m = Modulus::new(
                spec.modulus
                    .clone()
                    .ok_or_else(|| LtError::SchemaError("normalize needs a modulus".into()))?,
            )?;
            let a = imat_from(
                spec.matrix
                    .as_ref()
                    .ok_or_else(|| LtError::SchemaError("normalize needs a matrix".into()))?,
            )?;
            let b = match &spec.witness {
                Some(w) => imat_from(w)?,
                None => {
                    // solve A * B congruent to the identity column by column
                    let n = m.n();
                    let mut b = IMat::zero(n, n);
                    for j in 0..n {
                        let mut e = vec![0i64; n];
                        e[j] = 1;
                        let col = solve_congruence_system(&a, &m.m, &e)
                            .ok_or(LtError::NotAWitness)?;
                        for i in 0..n {
                            b.set(i, j, col[i]);
                        }
                    }
                    b
                }
            };
            let nf = normalize_mod_ideal(&a, &m, &b)?;
            checks.push(Check::ok("normal form verified against the congruence"));
            data = json!({
                "p": nf.p,
                "transform": (0..nf.p_matrix.rows)
                    .map(|i| (0..nf.p_matrix.cols).map(|j| nf.p_matrix.at(i, j)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
        }
        "orbits" => {
            let factors = spec
                .group
                .clone()
                .ok_or_else(|| LtError::SchemaError("orbits needs group factors".into()))?;
            let n = spec.slots.unwrap_or(factors.len());
            let reps = orbit_representatives(&factors, n)?;
            let group = FinAbGroup::new(factors.clone())?;
            let mut oracle = Value::Null;
            if group.order().pow(n as u32) <= (1 << 18) {
                let cmp = compare_orbits_with_oracle(&group, n, 1 << 21)?;
                checks.push(if cmp.pass {
                    Check::ok("oracle agrees with the normal form partition")
                } else {
                    Check::fail("oracle agrees with the normal form partition", cmp.detail.clone())
                });
                pass = cmp.pass;
                oracle = json!({
                    "orbit_count": cmp.rep_count,
                    "generating_tuples": cmp.generating_count,
                });
            }
            data = json!({
                "p_values": reps,
                "oracle": oracle,
            });
        }
        "fingerprint" => {
            let (_, torus) = torus_from_spec(spec)?;
            let fp = biiso_fingerprint(&torus)?;
            checks.push(Check::ok("fingerprint computed"));
            data = fp.to_json();
        }
        "certify" => {
            let (built, torus) = torus_from_spec(spec)?;
            let autos2 = build_autos(&built, &spec.automorphisms2)?;
            if autos2.is_empty() {
                return Err(LtError::SchemaError("certify needs a second tuple".into()));
            }
            let tuple2 = AutTuple::new(autos2)?;
            let hint = built.ep.as_ref().map(|e| e.cartan.clone());
            let torus2 = build_multiloop(&built.alg, tuple2, None, hint.as_ref())?;
            let p = match &spec.p_matrix {
                Some(rows) => imat_from(rows)?,
                None => IMat::identity(torus.nullity()),
            };
            let phi = match &spec.phi {
                None => KMat::identity(built.alg.ctx(), built.alg.dim()),
                Some(rows) => parse_exact_matrix(built.alg.ctx(), rows)?,
            };
            let mode = match spec.mode.as_deref() {
                None | Some("biiso") => CertificateMode::BiIsomorphism,
                Some("isotopy") => {
                    let twists = build_autos(&built, &spec.twists)?;
                    CertificateMode::Isotopy { twists }
                }
                Some(other) => {
                    return Err(LtError::SchemaError(format!("unknown mode {other:?}")))
                }
            };
            let ok = certificate_check(&torus, &torus2, &p, &phi, mode)?;
            checks.push(if ok {
                Check::ok("certificate verifies")
            } else {
                Check::fail("certificate verifies", "matrix identity fails".into())
            });
            pass = ok;
            data = json!({ "verified": ok });
        }
        "example" => {
            let name = spec
                .example
                .clone()
                .ok_or_else(|| LtError::SchemaError("example needs a name".into()))?;
            let (d, cks, p) = run_example(&name, window_radius(spec), spec.generators.as_deref())?;
            checks.extend(cks);
            pass = p;
            data = d;
        }
        other => {
            return Err(LtError::SchemaError(format!("unknown command {other:?}")));
        }
    }

    root.insert("checks".into(), checks_json(&checks));
    root.insert("data".into(), data);
    root.insert("pass".into(), json!(pass));
    Ok(Report { value: Value::Object(root), pass })
}

/// The canned worked examples.
pub fn run_example(
    name: &str,
    radius: i64,
    generators: Option<&str>,
) -> Result<(Value, Vec<Check>, bool)> {
    match name {
        "b3" => example_b3(radius),
        "untwisted" => example_untwisted(),
        "diagram-a2" => example_diagram(Family::A, 2, vec![1, 0]),
        "diagram-a3" => example_diagram(Family::A, 3, vec![2, 1, 0]),
        "diagram-a4" => example_diagram(Family::A, 4, vec![3, 2, 1, 0]),
        "diagram-d4" => example_diagram(Family::D, 4, vec![0, 1, 3, 2]),
        "diagram-d4-triality" => example_diagram(Family::D, 4, vec![2, 1, 3, 0]),
        "diagram-e6" => example_diagram(Family::E, 6, vec![5, 1, 4, 3, 2, 0]),
        "f4-untwisted" => example_f4(generators),
        other => Err(LtError::SchemaError(format!("unknown example {other:?}"))),
    }
}

use crate::rootsys::Family;

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

fn example_b3(radius: i64) -> Result<(Value, Vec<Check>, bool)> {
    let ctx = FieldContext::new(2);
    let alg = orthogonal_algebra(&ctx, &b3_gram(&ctx))?;
    let mut checks = vec![];
    checks.push(if alg.dim() == 21 {
        Check::ok("base algebra has dimension 21")
    } else {
        Check::fail("base algebra has dimension 21", format!("dim {}", alg.dim()))
    });
    let d1 = b3_diag(&ctx, [1, 1, 1, -1, 1, 1, -1]);
    let d2 = b3_diag(&ctx, [1, 1, 1, 1, -1, 1, -1]);
    let d3 = b3_diag(&ctx, [1, 1, 1, 1, 1, -1, -1]);
    let tuple = AutTuple::new(vec![
        conjugation_automorphism(&alg, &d1)?,
        conjugation_automorphism(&alg, &d2)?,
        conjugation_automorphism(&alg, &d3)?,
    ])?;
    checks.push(if tuple.group_order == 8 {
        Check::ok("generated group has order 8")
    } else {
        Check::fail("generated group has order 8", format!("order {}", tuple.group_order))
    });
    let torus = build_multiloop(&alg, tuple, None, None)?;
    let (body, tchecks, tpass) = torus_report_body(&torus)?;
    checks.extend(tchecks);
    let mut pass = tpass && torus.is_torus;

    // degree window law at (eps1, e_1)
    let ident = torus.report.datum_s.system()?;
    let eps_idx = ident
        .coords
        .iter()
        .position(|c| *c == vec![1])
        .ok_or_else(|| LtError::InternalCheck("short root missing".into()))?;
    let wrep = weyl_automorphism_window(&torus, eps_idx, &[1, 0, 0], radius.min(1))?;
    checks.extend(wrep.checks.iter().cloned());
    pass &= wrep.pass;

    // isotope along (1,1,1) and the non-bi-isomorphism fingerprints
    let shift = RootLatticeHom { images: vec![vec![1, 1, 1]] };
    let iso = make_isotope(&torus, &shift)?;
    checks.extend(iso.checks.iter().cloned());
    pass &= iso.pass;
    let fp1 = biiso_fingerprint(&torus)?;
    let fp2 = biiso_fingerprint(&iso.new_torus)?;
    checks.push(if fp1 != fp2 {
        Check::ok("fingerprints distinguish the isotope")
    } else {
        Check::fail("fingerprints distinguish the isotope", "equal fingerprints".into())
    });
    pass &= fp1 != fp2;
    checks.push(if fp2.fixed_dims.contains(&15) {
        Check::ok("twisted group contains a fixed space of dimension 15")
    } else {
        Check::fail(
            "twisted group contains a fixed space of dimension 15",
            format!("{:?}", fp2.fixed_dims),
        )
    });
    pass &= fp2.fixed_dims.contains(&15);

    // isotopy certificate with trivial P and identity phi
    let twists = iso.twists.clone();
    let cert = certificate_check(
        &torus,
        &iso.new_torus,
        &IMat::identity(3),
        &KMat::identity(&ctx, alg.dim()),
        CertificateMode::Isotopy { twists },
    )?;
    checks.push(if cert {
        Check::ok("isotopy certificate verifies")
    } else {
        Check::fail("isotopy certificate verifies", String::new())
    });
    pass &= cert;

    // the variant with a trivial third twist is rejected
    let bad = RootLatticeHom { images: vec![vec![1, 1, 0]] };
    let rejected = matches!(make_isotope(&torus, &bad), Err(LtError::NotAdmissible { .. }));
    checks.push(if rejected {
        Check::ok("shift (1,1,0) is rejected as inadmissible")
    } else {
        Check::fail("shift (1,1,0) is rejected as inadmissible", String::new())
    });
    pass &= rejected;

    let mut data = Map::new();
    data.insert("torus".into(), body);
    data.insert(
        "fingerprints".into(),
        json!({"original": fp1.to_json(), "isotope": fp2.to_json()}),
    );
    Ok((Value::Object(data), checks, pass))
}

fn example_untwisted() -> Result<(Value, Vec<Check>, bool)> {
    let ctx = FieldContext::new(1);
    let mut checks = vec![];
    let mut pass = true;
    let mut reports = vec![];
    for (fam, rank, n) in [
        (Family::A, 1, 1),
        (Family::A, 1, 2),
        (Family::A, 2, 1),
        (Family::A, 2, 2),
        (Family::G, 2, 1),
        (Family::G, 2, 2),
    ] {
        let t = RootSystemType::new(fam, rank)?;
        let (alg, ep) = chevalley_basis(&ctx, t)?;
        let tuple = AutTuple::identity(&alg, n)?;
        let torus = build_multiloop(&alg, tuple, Some(&ep.cartan), Some(&ep.cartan))?;
        let (body, cks, p) = torus_report_body(&torus)?;
        let label = format!("{t} nullity {n}");
        for c in cks {
            checks.push(Check {
                name: format!("{label}: {}", c.name),
                pass: c.pass,
                witness: c.witness,
            });
        }
        pass &= p;
        let untw = crate::classify::untwisted_test(&torus);
        checks.push(if untw {
            Check::ok(&format!("{label}: untwisted criterion"))
        } else {
            Check::fail(&format!("{label}: untwisted criterion"), String::new())
        });
        pass &= untw;
        reports.push(json!({"case": label, "report": body}));
    }
    Ok((Value::Array(reports), checks, pass))
}

fn example_diagram(fam: Family, rank: usize, perm: Vec<usize>) -> Result<(Value, Vec<Check>, bool)> {
    let mut p: Vec<usize> = (0..perm.len()).collect();
    let mut ord = 1u64;
    loop {
        p = p.iter().map(|&i| perm[i]).collect();
        if p.iter().enumerate().all(|(i, &x)| i == x) {
            break;
        }
        ord += 1;
    }
    let ctx = FieldContext::new(ord.max(2));
    let t = RootSystemType::new(fam, rank)?;
    let (alg, ep) = chevalley_basis(&ctx, t)?;
    let sigma = diagram_automorphism(&alg, &ep, &perm)?;
    let tuple = AutTuple::new(vec![sigma])?;
    let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan))?;
    let mut checks = vec![];
    for (name, ok) in [("(A1)", report.a1), ("(A2)", report.a2), ("(A3)", report.a3)] {
        checks.push(if ok {
            Check::ok(name)
        } else {
            Check::fail(name, report.failures.join("; "))
        });
    }
    checks.push(if report.relation.is_some() {
        Check::ok("support equals the fixed system or its enlargement")
    } else {
        Check::fail(
            "support equals the fixed system or its enlargement",
            report.failures.join("; "),
        )
    });
    let pass = report.passes;
    Ok((a_report_json(&report), checks, pass))
}

fn example_f4(generators: Option<&str>) -> Result<(Value, Vec<Check>, bool)> {
    let mut checks = vec![];
    let mut pass = true;
    let mut data = Map::new();
    match generators {
        None => {
            // the untwisted torus of the 52-dimensional algebra
            let ctx = FieldContext::new(1);
            let (alg, ep) = chevalley_basis(&ctx, RootSystemType::parse("F4")?)?;
            let tuple = AutTuple::identity(&alg, 1)?;
            let torus = build_multiloop(&alg, tuple, Some(&ep.cartan), Some(&ep.cartan))?;
            let (body, cks, p) = torus_report_body(&torus)?;
            checks.extend(cks);
            pass &= p;
            data.insert("torus".into(), body);
        }
        Some(path) => {
            // externally supplied commuting generators: load, verify, check
            let v = read_json_file(path)?;
            let arr = v
                .as_array()
                .ok_or_else(|| LtError::SchemaError("generators file must be an array".into()))?;
            let conductor = arr
                .iter()
                .map(|g| g["conductor"].as_u64().unwrap_or(1))
                .fold(1u64, num_integer::lcm);
            let ctx = FieldContext::new(conductor.max(2));
            let (alg, ep) = chevalley_basis(&ctx, RootSystemType::parse("F4")?)?;
            let autos: Vec<Automorphism> =
                arr.iter().map(|g| Automorphism::from_json(&alg, g)).collect::<Result<_>>()?;
            let tuple = AutTuple::new(autos)?;
            let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan))?;
            for (name, ok) in [("(A1)", report.a1), ("(A2)", report.a2), ("(A3)", report.a3)] {
                checks.push(if ok {
                    Check::ok(name)
                } else {
                    Check::fail(name, report.failures.join("; "))
                });
            }
            pass = report.passes;
            data.insert("check".into(), a_report_json(&report));
        }
    }
    Ok((Value::Object(data), checks, pass))
}

/// Enumerate small orbit comparisons; used by the acceptance suite and the
/// orbits command.
pub fn orbit_sweep(max_order: i64, max_slots: usize, limit: usize) -> Result<Vec<(Vec<i64>, usize, bool, String)>> {
    let mut out = vec![];
    for factors in abelian_groups_up_to(max_order, max_slots) {
        let group = FinAbGroup::new(factors.clone())?;
        for n in group.rank().max(1)..=max_slots {
            let states = group.order().checked_pow(n as u32).unwrap_or(usize::MAX);
            if states > limit {
                continue;
            }
            let cmp = compare_orbits_with_oracle(&group, n, limit)?;
            out.push((factors.clone(), n, cmp.pass, cmp.detail));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_command() {
        let spec = ScenarioSpec {
            command: "normalize".into(),
            modulus: Some(vec![5, 5]),
            matrix: Some(vec![vec![1, 0], vec![0, 2]]),
            ..Default::default()
        };
        let rep = run(&spec).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.value["data"]["p"], json!(2));
    }

    #[test]
    fn check_command_identity_tuple() {
        let spec = ScenarioSpec {
            command: "check".into(),
            algebra: Some(AlgebraSource::Named { name: "A1".into() }),
            automorphisms: vec![AutoSource::Identity],
            ..Default::default()
        };
        let rep = run(&spec).unwrap();
        assert!(rep.pass, "{}", rep.to_canonical_json());
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = ScenarioSpec {
            command: "example".into(),
            example: Some("diagram-a2".into()),
            ..Default::default()
        };
        let a = run(&spec).unwrap().to_canonical_json();
        let b = run(&spec).unwrap().to_canonical_json();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_command_is_schema_error() {
        let spec = ScenarioSpec { command: "nope".into(), ..Default::default() };
        assert!(matches!(run(&spec), Err(LtError::SchemaError(_))));
    }
}
