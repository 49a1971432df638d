//! The multiloop Lie torus: a base algebra with commuting finite-order
//! automorphisms and a Cartan subalgebra of the fixed algebra determine a
//! doubly graded algebra whose infinite part is never materialized — all
//! cells (alpha, lambda) are determined by the finite kernel of weight
//! spaces intersected with character components, via
//! cell(alpha, lambda) = s_alpha^{lambda mod m} tensor z^lambda.
//! Every axiom and support property is checked at that kernel level.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::autos::{
    check_a_conditions, fixed_space, grading_by_tuple, torus_automorphism, AReport, AutTuple,
    Automorphism, CharacterGrading,
};
use crate::error::{LtError, Result};
use crate::exactfield::CyclotomicNumber;
use crate::intmat::IMat;
use crate::liealg::{ideal_closure, KVec, LieAlgebra, Subspace};

/// One named verification with a witness string on failure.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn ok(name: &str) -> Self {
        Check { name: name.into(), pass: true, witness: String::new() }
    }
    pub fn fail(name: &str, witness: String) -> Self {
        Check { name: name.into(), pass: false, witness }
    }
}

/// The finite kernel of a multiloop Lie torus plus the data defining the
/// reduction of external degrees.
pub struct MultiloopTorus {
    pub base: LieAlgebra,
    pub tuple: AutTuple,
    pub orders: Vec<usize>,
    pub h: Subspace,
    pub report: AReport,
    pub grading: CharacterGrading,
    /// cells[(weight index, residue)] = nonzero double-grading component.
    pub cells: HashMap<(usize, Vec<i64>), Subspace>,
    pub is_torus: bool,
}

impl MultiloopTorus {
    pub fn nullity(&self) -> usize {
        self.orders.len()
    }

    pub fn reduce(&self, lambda: &[i64]) -> Vec<i64> {
        lambda
            .iter()
            .zip(&self.orders)
            .map(|(&l, &m)| l.rem_euclid(m as i64))
            .collect()
    }

    pub fn cell(&self, weight: usize, lambda: &[i64]) -> Option<&Subspace> {
        self.cells.get(&(weight, self.reduce(lambda)))
    }

    pub fn cell_residue(&self, weight: usize, residue: &[i64]) -> Option<&Subspace> {
        self.cells.get(&(weight, residue.to_vec()))
    }

    /// Residue support of a weight line: the finite shadow of its
    /// external-degree semilattice.
    pub fn residues_of(&self, weight: usize) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .cells
            .keys()
            .filter(|(w, _)| *w == weight)
            .map(|(_, r)| r.clone())
            .collect();
        out.sort();
        out
    }

    /// All residues of the reduction box, mixed-radix order.
    pub fn all_residues(&self) -> Vec<Vec<i64>> {
        let n = self.orders.len();
        let total: usize = self.orders.iter().product();
        (0..total)
            .map(|mut idx| {
                let mut r = vec![0i64; n];
                for i in 0..n {
                    r[i] = (idx % self.orders[i]) as i64;
                    idx /= self.orders[i];
                }
                r
            })
            .collect()
    }

    pub fn zero_residue(&self) -> Vec<i64> {
        vec![0; self.orders.len()]
    }

    /// Weight indices with nonzero weight vector.
    pub fn nonzero_weight_indices(&self) -> Vec<usize> {
        self.report
            .datum_s
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.values.iter().any(|c| !c.is_zero()))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Build the torus kernel; a failing condition report flags the object as
/// a non-torus rather than rejecting it.
pub fn build_multiloop(
    alg: &LieAlgebra,
    tuple: AutTuple,
    h_opt: Option<&Subspace>,
    hint: Option<&Subspace>,
) -> Result<MultiloopTorus> {
    let report = check_a_conditions(alg, &tuple, h_opt, hint)?;
    let grading = grading_by_tuple(alg, &tuple)?;
    let mut cells = HashMap::new();
    for (widx, w) in report.datum_s.weights.iter().enumerate() {
        let refined = crate::autos::refine_by_tuple(alg, &tuple, &w.space)?;
        let mut covered = 0;
        for (res, space) in refined {
            covered += space.dim();
            cells.insert((widx, res), space);
        }
        if covered != w.space.dim() {
            return Err(LtError::InternalCheck("double grading does not fill".into()));
        }
    }
    // column sums: character component dims
    for (res, comp) in &grading.components {
        let total: usize = cells
            .iter()
            .filter(|((_, r), _)| r == res)
            .map(|(_, s)| s.dim())
            .sum();
        if total != comp.dim() {
            return Err(LtError::InternalCheck("double grading column sums wrong".into()));
        }
    }
    let is_torus = report.passes;
    Ok(MultiloopTorus {
        base: alg.clone(),
        tuple,
        orders: grading.moduli.clone(),
        h: report.h_ambient.clone(),
        report,
        grading,
        cells,
        is_torus,
    })
}

/// A homogeneous element of the infinite algebra: base vector and degree.
#[derive(Clone, Debug)]
pub struct WindowElement {
    pub vector: KVec,
    pub degree: Vec<i64>,
}

/// Bracket of homogeneous elements, enforcing the grading.
pub fn window_bracket(
    t: &MultiloopTorus,
    x: &WindowElement,
    y: &WindowElement,
) -> Result<WindowElement> {
    let check = |e: &WindowElement| -> Result<()> {
        let res = t.reduce(&e.degree);
        if e.vector.iter().all(|c| c.is_zero()) {
            return Ok(());
        }
        match t.grading.component(&res) {
            Some(c) if c.contains(&e.vector) => Ok(()),
            _ => Err(LtError::HomogeneityViolation),
        }
    };
    check(x)?;
    check(y)?;
    let vector = t.base.bracket(&x.vector, &y.vector);
    let degree: Vec<i64> = x.degree.iter().zip(&y.degree).map(|(a, b)| a + b).collect();
    let out = WindowElement { vector, degree };
    check(&out)?;
    Ok(out)
}

/// Report for the five grading axioms.
pub struct AxiomReport {
    pub lt1: Check,
    pub lt2i: Check,
    pub lt2ii: Check,
    pub lt3: Check,
    pub lt4: Check,
    pub lt5: Check,
    pub pass: bool,
}

impl AxiomReport {
    pub fn checks(&self) -> Vec<&Check> {
        vec![&self.lt1, &self.lt2i, &self.lt2ii, &self.lt3, &self.lt4, &self.lt5]
    }
}

/// The canonical pair (e, f) for a nonzero cell, normalized so that the
/// coroot acts with the integral pairing values on every weight line.
pub fn sl2_pair(
    t: &MultiloopTorus,
    widx: usize,
    residue: &[i64],
) -> Result<(KVec, KVec, KVec)> {
    let ctx = t.base.ctx().clone();
    let cell = t
        .cell_residue(widx, residue)
        .ok_or_else(|| LtError::InternalCheck("empty cell has no sl2 pair".into()))?;
    if cell.dim() != 1 {
        return Err(LtError::InternalCheck("cell is not one dimensional".into()));
    }
    let e = cell.basis_row(0).to_vec();
    let datum = &t.report.datum_s;
    let neg_vals: KVec = datum.weights[widx].values.iter().map(|c| -c).collect();
    let nidx = datum
        .weight_index(&neg_vals)
        .ok_or_else(|| LtError::InternalCheck("opposite weight missing".into()))?;
    let neg_res: Vec<i64> = residue
        .iter()
        .zip(&t.orders)
        .map(|(&r, &m)| (-r).rem_euclid(m as i64))
        .collect();
    let opp = t
        .cell_residue(nidx, &neg_res)
        .ok_or_else(|| LtError::InternalCheck("opposite cell missing".into()))?;
    if opp.dim() != 1 {
        return Err(LtError::InternalCheck("opposite cell is not one dimensional".into()));
    }
    let f0 = opp.basis_row(0).to_vec();
    let tvec = t.base.bracket(&e, &f0);
    if tvec.iter().all(|c| c.is_zero()) || !t.h.contains(&tvec) {
        return Err(LtError::InternalCheck("coroot candidate not in the Cartan".into()));
    }
    // alpha(tvec): weight functional applied to the coroot candidate
    let coords = t
        .h
        .coordinates(&tvec)
        .ok_or_else(|| LtError::InternalCheck("coroot not in Cartan".into()))?;
    let mut alpha_t = ctx.zero();
    for (c, v) in coords.iter().zip(&datum.weights[widx].values) {
        alpha_t = &alpha_t + &(c * v);
    }
    if alpha_t.is_zero() {
        return Err(LtError::InternalCheck("weight vanishes on its coroot".into()));
    }
    let scale = ctx.from_int(2).checked_div(&alpha_t)?;
    let f: KVec = f0.iter().map(|c| c * &scale).collect();
    let hvec: KVec = tvec.iter().map(|c| c * &scale).collect();
    Ok((e, f, hvec))
}

/// Evaluate a weight functional on an element of the Cartan.
fn weight_at(t: &MultiloopTorus, widx: usize, h_elem: &[CyclotomicNumber]) -> Result<CyclotomicNumber> {
    let ctx = t.base.ctx().clone();
    let coords = t
        .h
        .coordinates(h_elem)
        .ok_or_else(|| LtError::InternalCheck("element not in Cartan".into()))?;
    let mut acc = ctx.zero();
    for (c, v) in coords.iter().zip(&t.report.datum_s.weights[widx].values) {
        acc = &acc + &(c * v);
    }
    Ok(acc)
}

/// Check the five axioms at the kernel level.
pub fn verify_lie_torus_axioms(t: &MultiloopTorus) -> Result<AxiomReport> {
    let datum = &t.report.datum_s;
    let zero_res = t.zero_residue();

    // LT1: the weight support is an irreducible root system
    let lt1 = match &datum.identified {
        Some(_) => Check::ok("LT1"),
        None => Check::fail(
            "LT1",
            datum.ident_error.clone().unwrap_or_else(|| "no identification".into()),
        ),
    };
    let ident = match &datum.identified {
        Some(i) => i,
        None => {
            // without a root system nothing else is meaningful
            let fail = |n: &str| Check::fail(n, "no root system".into());
            return Ok(AxiomReport {
                lt1,
                lt2i: fail("LT2(i)"),
                lt2ii: fail("LT2(ii)"),
                lt3: fail("LT3"),
                lt4: fail("LT4"),
                lt5: fail("LT5"),
                pass: false,
            });
        }
    };

    // LT2(i): indivisible nonzero roots support the zero residue
    let mut lt2i = Check::ok("LT2(i)");
    for (widx, coords) in ident.coords.iter().enumerate() {
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let half: Option<Vec<i64>> = if coords.iter().all(|&c| c % 2 == 0) {
            Some(coords.iter().map(|&c| c / 2).collect())
        } else {
            None
        };
        let indivisible = match half {
            Some(h) => !ident.system.contains(&h),
            None => true,
        };
        if indivisible && t.cell_residue(widx, &zero_res).is_none() {
            lt2i = Check::fail("LT2(i)", format!("cell ({coords:?}, 0) is zero"));
            break;
        }
    }

    // LT2(ii): one-dimensional cells with normalized sl2 pairs acting by
    // the integral pairing on every weight line
    let mut lt2ii = Check::ok("LT2(ii)");
    'outer: for ((widx, res), cell) in &t.cells {
        let coords = &ident.coords[*widx];
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        if cell.dim() != 1 {
            lt2ii = Check::fail("LT2(ii)", format!("cell ({coords:?}, {res:?}) has dim {}", cell.dim()));
            break;
        }
        let (_, _, hvec) = match sl2_pair(t, *widx, res) {
            Ok(x) => x,
            Err(e) => {
                lt2ii = Check::fail("LT2(ii)", format!("cell ({coords:?}, {res:?}): {e}"));
                break;
            }
        };
        // [[e,f], x_beta] = <beta, alpha^vee> x_beta for every weight line
        for (bidx, bcoords) in ident.coords.iter().enumerate() {
            let expect = if bcoords.iter().all(|&c| c == 0) {
                0
            } else {
                ident.system.pairing(bcoords, coords)
            };
            let actual = weight_at(t, bidx, &hvec)?;
            if actual != t.base.ctx().from_int(expect) {
                lt2ii = Check::fail(
                    "LT2(ii)",
                    format!("pairing of {bcoords:?} with {coords:?} is {actual}, expected {expect}"),
                );
                break 'outer;
            }
        }
    }

    // LT3 via graded simplicity of the kernel: the ideal generated by any
    // nonzero homogeneous element is everything
    let mut lt3 = Check::ok("LT3");
    'lt3: for ((widx, res), cell) in &t.cells {
        for r in 0..cell.dim() {
            let cl = ideal_closure(&t.base, cell.basis_row(r));
            if cl.dim() != t.base.dim() {
                lt3 = Check::fail(
                    "LT3",
                    format!("cell ({widx}, {res:?}) generates a proper graded ideal"),
                );
                break 'lt3;
            }
        }
    }

    // LT4: support residues generate the full reduction box, and the
    // generated group has the full order
    let lt4 = {
        let mut gen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        let zero = t.zero_residue();
        gen.insert(zero.clone());
        queue.push_back(zero);
        let support: Vec<Vec<i64>> = t.grading.support();
        while let Some(cur) = queue.pop_front() {
            for s in &support {
                let nxt: Vec<i64> = cur
                    .iter()
                    .zip(s)
                    .zip(&t.orders)
                    .map(|((&a, &b), &m)| (a + b).rem_euclid(m as i64))
                    .collect();
                if gen.insert(nxt.clone()) {
                    queue.push_back(nxt);
                }
            }
        }
        let full: usize = t.orders.iter().product();
        if gen.len() == full && t.tuple.satisfies_a3() {
            Check::ok("LT4")
        } else if gen.len() != full {
            Check::fail("LT4", format!("support generates {} of {} residues", gen.len(), full))
        } else {
            Check::fail(
                "LT4",
                format!(
                    "group order {} below the order product {}",
                    t.tuple.group_order,
                    t.report.order_product
                ),
            )
        }
    };

    // LT5: every root of the identified system carries support
    let mut lt5 = Check::ok("LT5");
    for (widx, w) in datum.weights.iter().enumerate() {
        if w.space.dim() == 0 || t.residues_of(widx).is_empty() {
            lt5 = Check::fail("LT5", format!("weight {widx} has empty support"));
            break;
        }
    }

    let pass = lt1.pass && lt2i.pass && lt2ii.pass && lt3.pass && lt4.pass && lt5.pass;
    Ok(AxiomReport { lt1, lt2i, lt2ii, lt3, lt4, lt5, pass })
}

/// Residue-level support sets per root, with the closure properties.
pub struct SemilatticeReport {
    /// weight index -> residue set
    pub residues: BTreeMap<usize, Vec<Vec<i64>>>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn support_semilattices(t: &MultiloopTorus) -> Result<SemilatticeReport> {
    let datum = &t.report.datum_s;
    let ident = datum.system()?;
    let mods = &t.orders;
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> {
        a.iter().zip(b).zip(mods).map(|((&x, &y), &m)| (x + y).rem_euclid(m as i64)).collect()
    };
    let neg = |a: &[i64]| -> Vec<i64> {
        a.iter().zip(mods).map(|(&x, &m)| (-x).rem_euclid(m as i64)).collect()
    };

    let mut residues: BTreeMap<usize, Vec<Vec<i64>>> = BTreeMap::new();
    for widx in 0..datum.weights.len() {
        residues.insert(widx, t.residues_of(widx));
    }
    let set_of = |w: usize| -> BTreeSet<Vec<i64>> { residues[&w].iter().cloned().collect() };

    let nonzero: Vec<usize> = t.nonzero_weight_indices();
    let mut checks: Vec<Check> = vec![];

    // (i) zero residue on indivisible nonzero roots
    {
        let mut c = Check::ok("semilattice(i)");
        for &w in &nonzero {
            let coords = &ident.coords[w];
            let half: Option<Vec<i64>> = if coords.iter().all(|&x| x % 2 == 0) {
                Some(coords.iter().map(|&x| x / 2).collect())
            } else {
                None
            };
            let indivisible = half.map_or(true, |h| !ident.system.contains(&h));
            if indivisible && !set_of(w).contains(&t.zero_residue()) {
                c = Check::fail("semilattice(i)", format!("0 missing from root {coords:?}"));
                break;
            }
        }
        checks.push(c);
    }
    // (ii) R + 2R in R and -R = R on nonzero roots
    {
        let mut c = Check::ok("semilattice(ii)");
        'l2: for &w in &nonzero {
            let s = set_of(w);
            for a in &s {
                if !s.contains(&neg(a)) {
                    c = Check::fail("semilattice(ii)", format!("-R failed at weight {w}"));
                    break 'l2;
                }
                for b in &s {
                    let two_b = add(b, b);
                    if !s.contains(&add(a, &two_b)) {
                        c = Check::fail("semilattice(ii)", format!("R+2R failed at weight {w}"));
                        break 'l2;
                    }
                }
            }
        }
        checks.push(c);
    }
    // (iii) equal length implies equal residue sets
    {
        let mut c = Check::ok("semilattice(iii)");
        'l3: for &w1 in &nonzero {
            for &w2 in &nonzero {
                let l1 = ident.system.len_sq(&ident.coords[w1]);
                let l2 = ident.system.len_sq(&ident.coords[w2]);
                if l1 == l2 && set_of(w1) != set_of(w2) {
                    c = Check::fail(
                        "semilattice(iii)",
                        format!("weights {w1} and {w2} have equal length, different support"),
                    );
                    break 'l3;
                }
            }
        }
        checks.push(c);
    }
    // (iv) R_alpha inside R_beta for beta short
    {
        let mut c = Check::ok("semilattice(iv)");
        'l4: for &w in &nonzero {
            for &b in &nonzero {
                if ident.system.is_short(&ident.coords[b])
                    && !set_of(w).is_subset(&set_of(b))
                {
                    c = Check::fail("semilattice(iv)", format!("R_{w} not inside short R_{b}"));
                    break 'l4;
                }
            }
        }
        checks.push(c);
    }
    // (v) for beta short: R_0 = R_beta + R_beta, <R_beta> = box,
    //     R_beta + 2*box in R_beta, 2*box in R_beta
    {
        let mut c = Check::ok("semilattice(v)");
        let zero_w = datum.zero_index;
        let two_box: Vec<Vec<i64>> = t
            .all_residues()
            .iter()
            .map(|r| add(r, r))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        'l5: for &b in &nonzero {
            if !ident.system.is_short(&ident.coords[b]) {
                continue;
            }
            let sb = set_of(b);
            let sums: BTreeSet<Vec<i64>> =
                sb.iter().flat_map(|x| sb.iter().map(move |y| add(x, y))).collect();
            if sums != set_of(zero_w) {
                c = Check::fail("semilattice(v)", format!("R_0 != R_b + R_b for weight {b}"));
                break 'l5;
            }
            // subgroup generated by sb
            let mut gen: BTreeSet<Vec<i64>> = BTreeSet::new();
            let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
            gen.insert(t.zero_residue());
            queue.push_back(t.zero_residue());
            while let Some(cur) = queue.pop_front() {
                for s in &sb {
                    let nxt = add(&cur, s);
                    if gen.insert(nxt.clone()) {
                        queue.push_back(nxt);
                    }
                }
            }
            if gen.len() != t.orders.iter().product::<usize>() {
                c = Check::fail("semilattice(v)", format!("<R_b> proper for weight {b}"));
                break 'l5;
            }
            for x in &sb {
                for tb in &two_box {
                    if !sb.contains(&add(x, tb)) {
                        c = Check::fail("semilattice(v)", format!("R_b + 2L escapes for {b}"));
                        break 'l5;
                    }
                }
            }
            for tb in &two_box {
                if !sb.contains(tb) {
                    c = Check::fail("semilattice(v)", format!("2L not inside R_b for {b}"));
                    break 'l5;
                }
            }
        }
        checks.push(c);
    }
    // (vi) 2L inside the overall support
    {
        let mut c = Check::ok("semilattice(vi)");
        let supp: BTreeSet<Vec<i64>> = t.grading.support().into_iter().collect();
        for r in t.all_residues() {
            if !supp.contains(&add(&r, &r)) {
                c = Check::fail("semilattice(vi)", format!("2*{r:?} outside the support"));
                break;
            }
        }
        checks.push(c);
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(SemilatticeReport { residues, checks, pass })
}

/// The degree-zero pair: the fixed algebra and its Cartan cell.
pub struct RootGradingPair {
    pub g: Subspace,
    pub h: Subspace,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn root_grading_pair(t: &MultiloopTorus) -> Result<RootGradingPair> {
    let zero_res = t.zero_residue();
    let g = t
        .grading
        .component(&zero_res)
        .ok_or_else(|| LtError::InternalCheck("no zero component".into()))?
        .clone();
    let zero_w = t.report.datum_s.zero_index;
    let h0 = t
        .cell_residue(zero_w, &zero_res)
        .ok_or_else(|| LtError::InternalCheck("no (0,0) cell".into()))?
        .clone();
    let mut checks = vec![];
    checks.push(if t.report.a1 {
        Check::ok("pair: g simple")
    } else {
        Check::fail("pair: g simple", "fixed algebra not simple".into())
    });
    let h_match = h0.dim() == t.h.dim() && t.h.contains_space(&h0);
    checks.push(if h_match {
        Check::ok("pair: h = zero cell")
    } else {
        Check::fail("pair: h = zero cell", format!("dims {} vs {}", h0.dim(), t.h.dim()))
    });
    // the root grading is recovered from h: each weight space is exactly
    // the joint eigenspace it was computed as; verify dims fill
    let total: usize = t.report.datum_s.weights.iter().map(|w| w.space.dim()).sum();
    checks.push(if total == t.base.dim() {
        Check::ok("pair: root grading fills")
    } else {
        Check::fail("pair: root grading fills", format!("{total} of {}", t.base.dim()))
    });
    let pass = checks.iter().all(|c| c.pass);
    Ok(RootGradingPair { g, h: h0, checks, pass })
}

/// Central grading group at the kernel level: residues whose degree shift
/// is a well-defined endomorphism of the kernel.
pub struct CentroidReport {
    pub gamma_rows: IMat,
    pub index: usize,
    pub passing_residues: Vec<Vec<i64>>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn central_grading_group(t: &MultiloopTorus) -> Result<CentroidReport> {
    let mut passing = vec![];
    for r in t.all_residues() {
        let mut ok = true;
        for (mu, comp) in &t.grading.components {
            let shifted: Vec<i64> = mu
                .iter()
                .zip(&r)
                .zip(&t.orders)
                .map(|((&a, &b), &m)| (a + b).rem_euclid(m as i64))
                .collect();
            match t.grading.component(&shifted) {
                Some(target) if target.contains_space(comp) => {}
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            passing.push(r);
        }
    }
    let n = t.orders.len();
    let expected = vec![t.zero_residue()];
    let mut checks = vec![];
    checks.push(if passing == expected {
        Check::ok("centroid: only the zero residue shifts")
    } else {
        Check::fail("centroid: only the zero residue shifts", format!("{passing:?}"))
    });
    let gamma_rows = IMat::from_rows(
        (0..n)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = t.orders[i] as i64;
                r
            })
            .collect(),
    );
    let index: usize = t.orders.iter().product::<usize>() / passing.len().max(1);
    checks.push(if index == t.orders.iter().product::<usize>() {
        Check::ok("centroid: index is the order product")
    } else {
        Check::fail("centroid: index is the order product", format!("index {index}"))
    });
    let pass = checks.iter().all(|c| c.pass);
    Ok(CentroidReport { gamma_rows, index, passing_residues: passing, checks, pass })
}

/// Lattice homomorphism from the root lattice given on the identified base.
#[derive(Clone, Debug)]
pub struct RootLatticeHom {
    /// images[i] = image of base root i in Z^n.
    pub images: Vec<Vec<i64>>,
}

impl RootLatticeHom {
    pub fn zero(rank: usize, n: usize) -> Self {
        RootLatticeHom { images: vec![vec![0; n]; rank] }
    }

    pub fn apply(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.images.first().map_or(0, |v| v.len());
        let mut out = vec![0i64; n];
        for (c, img) in coords.iter().zip(&self.images) {
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        out
    }

    pub fn negate(&self) -> Self {
        RootLatticeHom {
            images: self.images.iter().map(|v| v.iter().map(|&x| -x).collect()).collect(),
        }
    }
}

pub struct IsotopeResult {
    pub shift: RootLatticeHom,
    pub twists: Vec<Automorphism>,
    pub twisted_tuple: AutTuple,
    pub new_torus: MultiloopTorus,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Build the isotope of a torus along a base shift: admissibility, the
/// scalar twists, the twisted tuple, and kernel-level verification that
/// the degree-shift map is a doubly graded isomorphism.
pub fn make_isotope(t: &MultiloopTorus, shift: &RootLatticeHom) -> Result<IsotopeResult> {
    let ctx = t.base.ctx().clone();
    let datum = &t.report.datum_s;
    let ident = datum.system()?;
    let rank = ident.system.rank;
    let n = t.nullity();
    if shift.images.len() != rank || shift.images.iter().any(|v| v.len() != n) {
        return Err(LtError::SchemaError("shift has the wrong shape".into()));
    }
    // admissibility on the base
    for (i, img) in shift.images.iter().enumerate() {
        let mut unit = vec![0i64; rank];
        unit[i] = 1;
        let widx = ident
            .coords
            .iter()
            .position(|c| *c == unit)
            .ok_or_else(|| LtError::InternalCheck("base weight missing".into()))?;
        let res = t.reduce(img);
        if t.cell_residue(widx, &res).is_none() {
            return Err(LtError::NotAdmissible { base_index: i });
        }
    }
    // twists tau_i with scalars zeta_{m_i}^{-s_i(alpha_j)} on base roots
    let mut twists = vec![];
    for i in 0..n {
        let zeta = ctx.zeta_of_order(t.orders[i] as u64)?;
        let mut scalars = vec![];
        for img in &shift.images {
            scalars.push(zeta.pow(-img[i])?);
        }
        twists.push(torus_automorphism(&t.base, datum, &scalars)?);
    }
    let mut twisted_entries = vec![];
    let mut checks: Vec<Check> = vec![];
    for i in 0..n {
        let m = twists[i].mat.matmul(&t.tuple.entries[i].mat);
        let m2 = t.tuple.entries[i].mat.matmul(&twists[i].mat);
        if m != m2 {
            return Err(LtError::InternalCheck("twist does not commute with the tuple".into()));
        }
        let auto = Automorphism::new(&t.base, m)?;
        if t.orders[i] % auto.order != 0 {
            return Err(LtError::InternalCheck("twisted entry order escapes".into()));
        }
        twisted_entries.push(auto);
    }
    // entries of trivial order shrink the reduction box; rebuild with the
    // declared orders by keeping the original ones
    let twisted_tuple = AutTuple::new(twisted_entries)?;
    checks.push(if twisted_tuple.orders == t.orders {
        Check::ok("isotope: twisted orders match")
    } else {
        Check::fail(
            "isotope: twisted orders match",
            format!("{:?} vs {:?}", twisted_tuple.orders, t.orders),
        )
    });

    let new_torus = build_multiloop(&t.base, twisted_tuple.clone(), Some(&t.h), None)?;
    checks.push(if new_torus.is_torus {
        Check::ok("isotope: twisted tuple passes the conditions")
    } else {
        Check::fail(
            "isotope: twisted tuple passes the conditions",
            new_torus.report.failures.join("; "),
        )
    });

    // feasibility witness: the twisted fixed algebra meets every base line
    {
        let fs = fixed_space(&t.base, &twisted_tuple);
        let mut ok = true;
        for i in 0..rank {
            let mut unit = vec![0i64; rank];
            unit[i] = 1;
            let widx = ident.coords.iter().position(|c| *c == unit).unwrap();
            let inter = fs.intersect(&datum.weights[widx].space);
            if inter.dim() == 0 {
                ok = false;
            }
        }
        checks.push(if ok {
            Check::ok("isotope: twisted fixed algebra meets base root lines")
        } else {
            Check::fail("isotope: twisted fixed algebra meets base root lines", String::new())
        });
    }

    // kernel-level graded isomorphism: shifted cells of the original equal
    // the cells of the twisted torus, weight by weight and residue by residue
    {
        let mut ok = true;
        let mut witness = String::new();
        for widx in 0..datum.weights.len() {
            let s_alpha = shift.apply(&ident.coords[widx]);
            for res in t.all_residues() {
                let shifted: Vec<i64> = res
                    .iter()
                    .zip(&s_alpha)
                    .zip(&t.orders)
                    .map(|((&r, &s), &m)| (r + s).rem_euclid(m as i64))
                    .collect();
                let lhs = t.cell_residue(widx, &shifted);
                let rhs = new_torus.cell_residue(widx, &res);
                let same = match (lhs, rhs) {
                    (None, None) => true,
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                };
                if !same {
                    ok = false;
                    witness = format!("cell mismatch at weight {widx}, residue {res:?}");
                    break;
                }
            }
        }
        checks.push(if ok {
            Check::ok("isotope: degree shift is a graded isomorphism on the kernel")
        } else {
            Check::fail("isotope: degree shift is a graded isomorphism on the kernel", witness)
        });
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(IsotopeResult { shift: shift.clone(), twists, twisted_tuple, new_torus, checks, pass })
}

/// Windowed element map for the triple-exponential automorphism attached
/// to a supported pair, with the degree law checked on a finite window.
pub struct WeylWindowReport {
    pub cells_checked: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

type Windowed = HashMap<Vec<i64>, KVec>;

fn windowed_ad(
    t: &MultiloopTorus,
    vector: &KVec,
    degree: &[i64],
    x: &Windowed,
) -> Windowed {
    let mut out: Windowed = HashMap::new();
    for (mu, v) in x {
        let img = t.base.bracket(vector, v);
        if img.iter().all(|c| c.is_zero()) {
            continue;
        }
        let nd: Vec<i64> = mu.iter().zip(degree).map(|(a, b)| a + b).collect();
        let entry = out.entry(nd).or_insert_with(|| t.base.zero_vec());
        for (a, b) in entry.iter_mut().zip(&img) {
            *a = &*a + b;
        }
    }
    out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    out
}

fn windowed_exp_ad(
    t: &MultiloopTorus,
    vector: &KVec,
    degree: &[i64],
    x: &Windowed,
) -> Result<Windowed> {
    let ctx = t.base.ctx().clone();
    let mut acc = x.clone();
    let mut term = x.clone();
    let mut fact: i64 = 1;
    for k in 1..=24 {
        term = windowed_ad(t, vector, degree, &term);
        if term.is_empty() {
            return Ok(acc);
        }
        fact *= k;
        let inv = ctx.from_int(fact).inv()?;
        for (mu, v) in &term {
            let entry = acc.entry(mu.clone()).or_insert_with(|| t.base.zero_vec());
            for (a, b) in entry.iter_mut().zip(v) {
                *a = &*a + &(b * &inv);
            }
        }
        acc.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }
    Err(LtError::InternalCheck("ad-nilpotency bound exceeded".into()))
}

/// Apply the triple exponential for the sl2 pair at (alpha, lambda) to all
/// cells with degrees in the cube [-radius, radius]^n and check the degree
/// mapping law cell (beta, mu) -> (w_alpha(beta), mu - <beta, alpha^vee> lambda).
pub fn weyl_automorphism_window(
    t: &MultiloopTorus,
    alpha_widx: usize,
    lambda: &[i64],
    radius: i64,
) -> Result<WeylWindowReport> {
    let datum = &t.report.datum_s;
    let ident = datum.system()?;
    let acoords = ident.coords[alpha_widx].clone();
    if acoords.iter().all(|&c| c == 0) {
        return Err(LtError::RootNotInSystem);
    }
    let res = t.reduce(lambda);
    if t.cell_residue(alpha_widx, &res).is_none() {
        return Err(LtError::RootNotInSystem);
    }
    let (e, f, _) = sl2_pair(t, alpha_widx, &res)?;
    let neg_lambda: Vec<i64> = lambda.iter().map(|&x| -x).collect();
    let neg_f: KVec = f.iter().map(|c| -c).collect();

    let n = t.nullity();
    let mut degrees: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = vec![];
        for d in &degrees {
            for v in -radius..=radius {
                let mut d2 = d.clone();
                d2.push(v);
                next.push(d2);
            }
        }
        degrees = next;
    }

    let mut checks = vec![];
    let mut cells_checked = 0usize;
    let mut pass = true;
    'outer: for bidx in 0..datum.weights.len() {
        let bcoords = &ident.coords[bidx];
        let pair = if bcoords.iter().all(|&c| c == 0) {
            0
        } else {
            ident.system.pairing(bcoords, &acoords)
        };
        let target_coords = {
            let k = pair;
            bcoords.iter().zip(&acoords).map(|(&b, &a)| b - k * a).collect::<Vec<i64>>()
        };
        let target_widx = ident
            .coords
            .iter()
            .position(|c| *c == target_coords)
            .ok_or_else(|| LtError::InternalCheck("reflected weight missing".into()))?;
        for mu in &degrees {
            let mu_res = t.reduce(mu);
            let Some(cell) = t.cell_residue(bidx, &mu_res) else {
                continue;
            };
            for r in 0..cell.dim() {
                let mut x: Windowed = HashMap::new();
                x.insert(mu.clone(), cell.basis_row(r).to_vec());
                let y1 = windowed_exp_ad(t, &e, lambda, &x)?;
                let y2 = windowed_exp_ad(t, &neg_f, &neg_lambda, &y1)?;
                let y3 = windowed_exp_ad(t, &e, lambda, &y2)?;
                // must be concentrated at mu - pair*lambda inside the target cell
                let expect: Vec<i64> =
                    mu.iter().zip(lambda).map(|(&m, &l)| m - pair * l).collect();
                cells_checked += 1;
                if y3.len() != 1 {
                    pass = false;
                    checks.push(Check::fail(
                        "weyl window",
                        format!("image of ({bidx},{mu:?}) not concentrated"),
                    ));
                    break 'outer;
                }
                let (deg, vec) = y3.into_iter().next().unwrap();
                let tcell = t.cell_residue(target_widx, &t.reduce(&deg));
                if deg != expect || tcell.is_none() || !tcell.unwrap().contains(&vec) {
                    pass = false;
                    checks.push(Check::fail(
                        "weyl window",
                        format!("degree law fails at ({bidx},{mu:?}): image degree {deg:?}, expected {expect:?}"),
                    ));
                    break 'outer;
                }
            }
        }
    }
    if pass {
        checks.push(Check::ok("weyl window"));
    }
    Ok(WeylWindowReport { cells_checked, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldContext;
    use crate::liealg::chevalley_basis;
    use crate::rootsys::{Family, RootSystemType};

    fn ty(f: Family, r: usize) -> RootSystemType {
        RootSystemType::new(f, r).unwrap()
    }

    fn untwisted(
        fam: Family,
        rank: usize,
        n: usize,
    ) -> MultiloopTorus {
        let ctx = FieldContext::new(1);
        let (alg, ep) = chevalley_basis(&ctx, ty(fam, rank)).unwrap();
        let tuple = AutTuple::identity(&alg, n).unwrap();
        build_multiloop(&alg, tuple, Some(&ep.cartan), Some(&ep.cartan)).unwrap()
    }

    #[test]
    fn untwisted_a1_all_axioms() {
        let t = untwisted(Family::A, 1, 2);
        assert!(t.is_torus);
        let ax = verify_lie_torus_axioms(&t).unwrap();
        assert!(ax.pass, "{:?}", ax.checks().iter().map(|c| (&c.name, c.pass)).collect::<Vec<_>>());
        let sem = support_semilattices(&t).unwrap();
        assert!(sem.pass);
        // untwisted: every supported weight has the single residue 0
        for (_, r) in &sem.residues {
            assert!(r.len() <= 1);
        }
        let cg = central_grading_group(&t).unwrap();
        assert!(cg.pass);
        assert_eq!(cg.index, 1);
        let pair = root_grading_pair(&t).unwrap();
        assert!(pair.pass);
        assert_eq!(pair.g.dim(), 3);
    }

    #[test]
    fn untwisted_bracket_window() {
        let t = untwisted(Family::A, 1, 1);
        // locate e and f rows
        let datum = &t.report.datum_s;
        let ident = datum.system().unwrap();
        let eidx = ident.coords.iter().position(|c| *c == vec![1]).unwrap();
        let fidx = ident.coords.iter().position(|c| *c == vec![-1]).unwrap();
        let e = WindowElement {
            vector: datum.weights[eidx].space.basis_row(0).to_vec(),
            degree: vec![3],
        };
        let f = WindowElement {
            vector: datum.weights[fidx].space.basis_row(0).to_vec(),
            degree: vec![-2],
        };
        let h = window_bracket(&t, &e, &f).unwrap();
        assert_eq!(h.degree, vec![1]);
        assert!(t.h.contains(&h.vector));
        // zero element stays zero
        let z = WindowElement { vector: t.base.zero_vec(), degree: vec![7] };
        let r = window_bracket(&t, &e, &z).unwrap();
        assert!(r.vector.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn untwisted_weyl_window() {
        let t = untwisted(Family::A, 1, 1);
        let ident = t.report.datum_s.system().unwrap();
        let alpha = ident.coords.iter().position(|c| *c == vec![1]).unwrap();
        // lambda = 0 swaps the root lines degree-preservingly
        let rep = weyl_automorphism_window(&t, alpha, &[0], 2).unwrap();
        assert!(rep.pass);
        // lambda = 1: checked by the degree law directly
        let rep = weyl_automorphism_window(&t, alpha, &[1], 2).unwrap();
        assert!(rep.pass);
        assert!(rep.cells_checked > 0);
    }

    #[test]
    fn zero_shift_isotope_is_identity() {
        let t = untwisted(Family::A, 2, 2);
        let shift = RootLatticeHom::zero(2, 2);
        let iso = make_isotope(&t, &shift).unwrap();
        assert!(iso.pass);
        for tw in &iso.twists {
            assert!(tw.is_identity());
        }
        for (a, b) in iso.twisted_tuple.entries.iter().zip(&t.tuple.entries) {
            assert_eq!(a.mat, b.mat);
        }
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::exactfield::CyclotomicNumber>();
        assert_send_sync::<crate::liealg::LieAlgebra>();
        assert_send_sync::<MultiloopTorus>();
        assert_send_sync::<crate::rootsys::RootSystem>();
    }

    #[test]
    fn untwisted_rejects_nonzero_shift() {
        // in the untwisted torus the only residue is 0, so any nonzero
        // residue shift is inadmissible only if it misses the support;
        // with orders all 1 every shift reduces to 0 and is admissible
        let t = untwisted(Family::A, 1, 1);
        let shift = RootLatticeHom { images: vec![vec![5]] };
        let iso = make_isotope(&t, &shift).unwrap();
        assert!(iso.pass);
    }
}
