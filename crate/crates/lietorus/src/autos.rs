//! Commuting finite-order automorphism tuples: diagram, torus-scalar and
//! conjugation constructions, the integer-matrix power action, subgroup
//! structure, the character grading of the base algebra, and the
//! simplicity/module/order condition checker that decides whether a triple
//! yields a Lie torus.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{LtError, Result};
use crate::exactfield::CyclotomicNumber;
use crate::intmat::{quotient_invariant_factors, IMat};
use crate::liealg::{
    analyze_module, cartan_hint_elements, cartan_subalgebra_with_hints, is_simple,
    root_space_decomposition, split_simple_subalgebra, sub_algebra, verify_multiplicative, KVec,
    LieAlgebra, ModuleReport, RootDatum, SimplicityCert, SplitSimpleSubalgebra, Subalgebra,
    Subspace,
};
use crate::linalg::{eigenspace, KMat, RowSpace};
use crate::rootsys::RootSystemType;

const GROUP_ENUM_BOUND: usize = 1 << 14;
const ORDER_BOUND: usize = 512;

/// A verified algebra automorphism with its exact multiplicative order.
#[derive(Clone)]
pub struct Automorphism {
    pub mat: KMat,
    pub order: usize,
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Automorphism(order {})", self.order)
    }
}

impl Automorphism {
    /// Verify multiplicativity on basis pairs and finite order, then wrap.
    pub fn new(alg: &LieAlgebra, mat: KMat) -> Result<Self> {
        if mat.rows != alg.dim() || mat.cols != alg.dim() {
            return Err(LtError::NotAnAutomorphism("wrong matrix size".into()));
        }
        if mat.inverse().is_none() {
            return Err(LtError::NotAnAutomorphism("matrix not invertible".into()));
        }
        verify_multiplicative(alg, &mat)?;
        let order = matrix_order(&mat, ORDER_BOUND)?;
        Ok(Automorphism { mat, order })
    }

    pub fn identity(alg: &LieAlgebra) -> Self {
        Automorphism { mat: KMat::identity(alg.ctx(), alg.dim()), order: 1 }
    }

    pub fn apply(&self, v: &[CyclotomicNumber]) -> KVec {
        self.mat.apply(v)
    }

    pub fn power(&self, k: i64) -> KMat {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut acc = KMat::identity(self.mat.ctx(), self.mat.rows);
        for _ in 0..e {
            acc = acc.matmul(&self.mat);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// JSON: conductor, declared order, matrix of cyclotomic strings.
    pub fn to_json(&self) -> Value {
        let d = self.mat.rows;
        let rows: Vec<Value> = (0..d)
            .map(|i| {
                Value::Array(
                    (0..d).map(|j| json!(self.mat.at(i, j).to_strings())).collect(),
                )
            })
            .collect();
        json!({
            "conductor": self.mat.ctx().conductor(),
            "order": self.order,
            "matrix": rows,
        })
    }

    /// Load and fully re-verify an automorphism from JSON.
    pub fn from_json(alg: &LieAlgebra, v: &Value) -> Result<Self> {
        let bad = |m: &str| LtError::SchemaError(format!("automorphism json: {m}"));
        let conductor = v["conductor"].as_u64().ok_or_else(|| bad("missing conductor"))?;
        if conductor != alg.ctx().conductor() {
            return Err(LtError::ContextMismatch(conductor, alg.ctx().conductor()));
        }
        let rows = v["matrix"].as_array().ok_or_else(|| bad("missing matrix"))?;
        let d = alg.dim();
        if rows.len() != d {
            return Err(bad("wrong matrix size"));
        }
        let mut m = KMat::zero(alg.ctx(), d, d);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().ok_or_else(|| bad("bad row"))?;
            if r.len() != d {
                return Err(bad("wrong row length"));
            }
            for (j, c) in r.iter().enumerate() {
                let strs: Vec<String> = c
                    .as_array()
                    .ok_or_else(|| bad("bad entry"))?
                    .iter()
                    .map(|s| s.as_str().unwrap_or_default().to_string())
                    .collect();
                m.set(i, j, CyclotomicNumber::from_strings(alg.ctx(), &strs)?);
            }
        }
        let auto = Automorphism::new(alg, m)?;
        if let Some(declared) = v["order"].as_u64() {
            if declared as usize != auto.order {
                return Err(LtError::NotAnAutomorphism(format!(
                    "declared order {declared} but actual order is {}",
                    auto.order
                )));
            }
        }
        Ok(auto)
    }
}

fn matrix_order(m: &KMat, bound: usize) -> Result<usize> {
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.matmul(m);
    }
    Err(LtError::OrderBoundExceeded(bound))
}

/// A commuting tuple with its subgroup structure: exponent kernel lattice,
/// group order and invariant factors of the generated group.
#[derive(Clone)]
pub struct AutTuple {
    pub entries: Vec<Automorphism>,
    pub orders: Vec<usize>,
    /// Rows generate the kernel lattice K = {a : sigma^a = id} in Z^n.
    pub kernel_lattice: IMat,
    pub group_order: usize,
    /// Invariant factors > 1 of Z^n / K, i.e. of the generated group.
    pub invariant_factors: Vec<i64>,
}

impl std::fmt::Debug for AutTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AutTuple(orders {:?}, group order {})", self.orders, self.group_order)
    }
}

impl AutTuple {
    pub fn new(entries: Vec<Automorphism>) -> Result<Self> {
        let n = entries.len();
        for i in 0..n {
            for j in i + 1..n {
                let ab = entries[i].mat.matmul(&entries[j].mat);
                let ba = entries[j].mat.matmul(&entries[i].mat);
                if ab != ba {
                    return Err(LtError::NonCommutingTuple(i, j));
                }
            }
        }
        let orders: Vec<usize> = entries.iter().map(|a| a.order).collect();
        let box_size: usize = orders.iter().product();
        if box_size > GROUP_ENUM_BOUND {
            return Err(LtError::OrbitTooLarge(GROUP_ENUM_BOUND));
        }
        // powers of each entry
        let powers: Vec<Vec<KMat>> = entries
            .iter()
            .map(|a| {
                let mut v = vec![KMat::identity(a.mat.ctx(), a.mat.rows)];
                for k in 1..a.order {
                    v.push(v[k - 1].matmul(&a.mat));
                }
                v
            })
            .collect();
        let mut kernel_rows: Vec<Vec<i64>> = vec![];
        for (i, &m) in orders.iter().enumerate() {
            let mut r = vec![0i64; n];
            r[i] = m as i64;
            kernel_rows.push(r);
        }
        let mut kernel_count = 0usize;
        for idx in 0..box_size {
            let mut rem = idx;
            let mut a = vec![0usize; n];
            for i in 0..n {
                a[i] = rem % orders[i];
                rem /= orders[i];
            }
            let mut prod: Option<KMat> = None;
            for i in 0..n {
                if a[i] != 0 {
                    prod = Some(match prod {
                        None => powers[i][a[i]].clone(),
                        Some(p) => p.matmul(&powers[i][a[i]]),
                    });
                }
            }
            let is_id = match &prod {
                None => true,
                Some(p) => p.is_identity(),
            };
            if is_id {
                kernel_count += 1;
                if a.iter().any(|&x| x != 0) {
                    kernel_rows.push(a.iter().map(|&x| x as i64).collect());
                }
            }
        }
        let group_order = box_size / kernel_count;
        let kernel_lattice = IMat::from_rows(kernel_rows);
        let invariant_factors = quotient_invariant_factors(&kernel_lattice, n)?;
        Ok(AutTuple { entries, orders, kernel_lattice, group_order, invariant_factors })
    }

    pub fn identity(alg: &LieAlgebra, n: usize) -> Result<Self> {
        Self::new((0..n).map(|_| Automorphism::identity(alg)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// sigma^m = 1 with m = product of the entry orders?
    pub fn satisfies_a3(&self) -> bool {
        self.group_order == self.orders.iter().product::<usize>()
    }

    /// All matrices of the generated subgroup, each with a representative
    /// exponent vector, in deterministic mixed-radix order.
    pub fn group_elements(&self) -> Vec<(Vec<i64>, KMat)> {
        let n = self.len();
        let ctx = self.entries[0].mat.ctx().clone();
        let d = self.entries[0].mat.rows;
        let mut seen: Vec<(Vec<i64>, KMat)> = vec![];
        let box_size: usize = self.orders.iter().product();
        for idx in 0..box_size {
            let mut rem = idx;
            let mut a = vec![0usize; n];
            for i in 0..n {
                a[i] = rem % self.orders[i];
                rem /= self.orders[i];
            }
            let mut prod = KMat::identity(&ctx, d);
            for i in 0..n {
                for _ in 0..a[i] {
                    prod = prod.matmul(&self.entries[i].mat);
                }
            }
            if !seen.iter().any(|(_, m)| *m == prod) {
                seen.push((a.iter().map(|&x| x as i64).collect(), prod));
            }
        }
        seen
    }
}

/// The right action sigma^P: entry j is prod_i sigma_i^{p_ij}.
pub fn tuple_power_action(alg: &LieAlgebra, tuple: &AutTuple, p: &IMat) -> Result<AutTuple> {
    let n = tuple.len();
    assert_eq!(p.rows, n);
    assert_eq!(p.cols, n);
    let mut entries = vec![];
    for j in 0..n {
        let mut m = KMat::identity(alg.ctx(), alg.dim());
        for i in 0..n {
            m = m.matmul(&tuple.entries[i].power(p.at(i, j)));
        }
        entries.push(Automorphism::new(alg, m)?);
    }
    AutTuple::new(entries)
}

/// Diagram automorphism from a base permutation (0-indexed), extended
/// through the root-vector basis; the order must equal the permutation's.
pub fn diagram_automorphism(
    alg: &LieAlgebra,
    ep: &crate::liealg::Epinglage,
    perm: &[usize],
) -> Result<Automorphism> {
    let m = crate::liealg::extend_diagram_automorphism(alg, ep, perm)?;
    let auto = Automorphism::new(alg, m)?;
    let mut p: Vec<usize> = perm.to_vec();
    let mut ord = 1;
    while p.iter().enumerate().any(|(i, &x)| i != x) {
        p = p.iter().map(|&i| perm[i]).collect();
        ord += 1;
        if ord > perm.len() + 2 {
            return Err(LtError::ExtensionInconsistent("permutation order overflow".into()));
        }
    }
    if auto.order != ord {
        return Err(LtError::ExtensionInconsistent(format!(
            "extension has order {} but the permutation has order {ord}",
            auto.order
        )));
    }
    Ok(auto)
}

/// Scalar-on-root-spaces automorphism: acts on the weight space of root
/// alpha by prod_i scalars[i]^{c_i} where c = base coordinates of alpha.
pub fn torus_automorphism(
    alg: &LieAlgebra,
    datum: &RootDatum,
    scalars: &[CyclotomicNumber],
) -> Result<Automorphism> {
    let ctx = alg.ctx().clone();
    if scalars.iter().any(|s| s.is_zero()) {
        return Err(LtError::ZeroScalar);
    }
    let ident = datum.system()?;
    if scalars.len() != ident.system.rank {
        return Err(LtError::SchemaError(format!(
            "expected {} scalars for the base, got {}",
            ident.system.rank,
            scalars.len()
        )));
    }
    let d = alg.dim();
    // columns of the basis-change: stacked weight-space bases
    let mut cols: Vec<KVec> = vec![];
    let mut diag: Vec<CyclotomicNumber> = vec![];
    for (widx, w) in datum.weights.iter().enumerate() {
        let coords = &ident.coords[widx];
        let mut s = ctx.one();
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                s = &s * &scalars[i].pow(c)?;
            }
        }
        for r in 0..w.space.dim() {
            cols.push(w.space.basis_row(r).to_vec());
            diag.push(s.clone());
        }
    }
    if cols.len() != d {
        return Err(LtError::InternalCheck("weight spaces do not span".into()));
    }
    let b = KMat::from_fn(&ctx, d, d, |i, j| cols[j][i].clone());
    let binv = b.inverse().ok_or_else(|| LtError::InternalCheck("weight basis singular".into()))?;
    let mut dm = KMat::zero(&ctx, d, d);
    for (i, s) in diag.iter().enumerate() {
        dm.set(i, i, s.clone());
    }
    let m = b.matmul(&dm).matmul(&binv);
    Automorphism::new(alg, m)
}

/// Conjugation c_g(x) = g x g^{-1} on a matrix-realized algebra; g must
/// preserve the defining form when one is present.
pub fn conjugation_automorphism(alg: &LieAlgebra, g: &KMat) -> Result<Automorphism> {
    let real = alg
        .matrix_real
        .as_ref()
        .ok_or_else(|| LtError::SchemaError("algebra has no matrix realization".into()))?;
    if g.rows != real.n || g.cols != real.n {
        return Err(LtError::SchemaError("conjugating matrix has the wrong size".into()));
    }
    let ginv = g.inverse().ok_or(LtError::NotInIsometryGroup)?;
    if let Some(gram) = &real.gram {
        let t = g.transpose().matmul(gram).matmul(g);
        if t != *gram {
            return Err(LtError::NotInIsometryGroup);
        }
    }
    let d = alg.dim();
    let mut m = KMat::zero(alg.ctx(), d, d);
    for j in 0..d {
        let img = g.matmul(&real.basis_mats[j]).matmul(&ginv);
        let coords = real
            .coordinates(&img)
            .ok_or_else(|| LtError::NotAnAutomorphism("conjugate leaves the algebra".into()))?;
        for i in 0..d {
            m.set(i, j, coords[i].clone());
        }
    }
    Automorphism::new(alg, m)
}

/// The character grading of the base algebra determined by a tuple:
/// components indexed by residues modulo the entry orders.
pub struct CharacterGrading {
    pub moduli: Vec<usize>,
    /// Nonzero components only, keyed by residue vectors, mixed-radix order.
    pub components: Vec<(Vec<i64>, Subspace)>,
    lookup: HashMap<Vec<i64>, usize>,
}

impl CharacterGrading {
    pub fn component(&self, residue: &[i64]) -> Option<&Subspace> {
        self.lookup.get(residue).map(|&i| &self.components[i].1)
    }

    pub fn reduce(&self, lambda: &[i64]) -> Vec<i64> {
        lambda
            .iter()
            .zip(&self.moduli)
            .map(|(&l, &m)| l.rem_euclid(m as i64))
            .collect()
    }

    pub fn zero_residue(&self) -> Vec<i64> {
        vec![0; self.moduli.len()]
    }

    /// Residues spanning the support.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.components.iter().map(|(r, _)| r.clone()).collect()
    }
}

/// Refine a subspace into joint eigenspaces of the tuple entries, keyed by
/// character residues.  The subspace must be stabilized by every entry.
pub fn refine_by_tuple(
    alg: &LieAlgebra,
    tuple: &AutTuple,
    start: &RowSpace,
) -> Result<Vec<(Vec<i64>, RowSpace)>> {
    let ctx = alg.ctx().clone();
    for &m in &tuple.orders {
        if ctx.conductor() % (m as u64) != 0 {
            return Err(LtError::ConductorTooSmall {
                conductor: ctx.conductor(),
                order: m as u64,
            });
        }
    }
    let d = alg.dim();
    let mut spaces: Vec<(Vec<i64>, RowSpace)> = vec![(vec![], start.clone())];
    for (j, auto) in tuple.entries.iter().enumerate() {
        let mj = tuple.orders[j];
        let zeta = ctx.zeta_of_order(mj as u64)?;
        let mut next = vec![];
        for (res, w) in &spaces {
            let k = w.dim();
            if k == 0 {
                continue;
            }
            // restricted operator
            let mut t = KMat::zero(&ctx, k, k);
            for c in 0..k {
                let img = auto.mat.apply(w.basis_row(c));
                let coords = w.coordinates(&img).ok_or_else(|| {
                    LtError::InternalCheck("automorphism does not stabilize component".into())
                })?;
                for r in 0..k {
                    t.set(r, c, coords[r].clone());
                }
            }
            let mut total = 0;
            for l in 0..mj {
                let ev = zeta.pow(l as i64)?;
                let es = eigenspace(&t, &ev)?;
                if es.dim() == 0 {
                    continue;
                }
                total += es.dim();
                let rows: Vec<KVec> = (0..es.dim())
                    .map(|r| {
                        let coef = es.basis_row(r);
                        let mut v = vec![ctx.zero(); d];
                        for (ci, co) in coef.iter().enumerate() {
                            if !co.is_zero() {
                                for (x, b) in v.iter_mut().zip(w.basis_row(ci)) {
                                    *x = &*x + &(co * b);
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let mut res2 = res.clone();
                res2.push(l as i64);
                next.push((res2, RowSpace::from_rows(&ctx, rows, d)));
            }
            if total != k {
                return Err(LtError::InternalCheck(
                    "finite-order automorphism failed to diagonalize".into(),
                ));
            }
        }
        spaces = next;
    }
    spaces.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(spaces)
}

/// Joint eigenspace decomposition of the base algebra under the tuple.
pub fn grading_by_tuple(alg: &LieAlgebra, tuple: &AutTuple) -> Result<CharacterGrading> {
    let full = RowSpace::full(alg.ctx(), alg.dim());
    let spaces = refine_by_tuple(alg, tuple, &full)?;
    let total: usize = spaces.iter().map(|(_, w)| w.dim()).sum();
    if total != alg.dim() {
        return Err(LtError::InternalCheck("character components do not fill".into()));
    }
    let lookup = spaces.iter().enumerate().map(|(i, (r, _))| (r.clone(), i)).collect();
    Ok(CharacterGrading { moduli: tuple.orders.clone(), components: spaces, lookup })
}

/// Joint fixed space of all entries.
pub fn fixed_space(alg: &LieAlgebra, tuple: &AutTuple) -> RowSpace {
    let ctx = alg.ctx().clone();
    let d = alg.dim();
    let n = tuple.len();
    if n == 0 {
        return RowSpace::full(&ctx, d);
    }
    let stacked = KMat::from_fn(&ctx, n * d, d, |r, c| {
        let (blk, i) = (r / d, r % d);
        let m = &tuple.entries[blk].mat;
        if i == c {
            m.at(i, c) - &ctx.one()
        } else {
            m.at(i, c).clone()
        }
    });
    RowSpace::from_rows(&ctx, stacked.nullspace().rows_vec(), d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaRelation {
    Equal,
    Enlarged,
}

/// Full report of the simplicity / module-shape / order conditions for a
/// (simple algebra, tuple, Cartan) triple.
pub struct AReport {
    pub a1: bool,
    pub a2: bool,
    pub a3: bool,
    pub passes: bool,
    pub fixed: Subalgebra,
    pub fixed_cert: SimplicityCert,
    pub h_ambient: Subspace,
    pub datum_s: RootDatum,
    pub split_g: Option<SplitSimpleSubalgebra>,
    pub delta_type: Option<RootSystemType>,
    pub delta_g_type: Option<RootSystemType>,
    pub relation: Option<DeltaRelation>,
    pub ind_matches: bool,
    pub components: Vec<(Vec<i64>, usize, Option<ModuleReport>)>,
    pub group_order: usize,
    pub order_product: usize,
    pub invariant_factors: Vec<i64>,
    pub failures: Vec<String>,
}

/// Evaluate the three conditions and the root-system relation for a tuple
/// acting on a simple algebra, with an optional prescribed Cartan
/// subalgebra of the fixed algebra and optional toral hint elements.
pub fn check_a_conditions(
    alg: &LieAlgebra,
    tuple: &AutTuple,
    h_ambient_opt: Option<&Subspace>,
    hint_space: Option<&Subspace>,
) -> Result<AReport> {
    let ctx = alg.ctx().clone();
    let mut failures: Vec<String> = vec![];
    let grading = grading_by_tuple(alg, tuple)?;
    let zero = grading.zero_residue();
    let fixed_rows = grading
        .component(&zero)
        .ok_or_else(|| LtError::InternalCheck("empty fixed algebra".into()))?
        .clone();
    let fixed = sub_algebra(alg, &fixed_rows)?;
    let fixed_cert = is_simple(&fixed.alg);
    let a1 = fixed_cert.simple;
    if !a1 {
        failures.push("fixed algebra is not simple".into());
    }

    // Cartan subalgebra of the fixed algebra, in ambient coordinates
    let h_ambient = match h_ambient_opt {
        Some(h) => {
            if !fixed_rows.contains_space(h) {
                return Err(LtError::NonCartanInput);
            }
            h.clone()
        }
        None => {
            let mut hints: Vec<KVec> = vec![];
            if let Some(hs) = hint_space {
                let toral = fixed_rows.intersect(hs);
                for cand in cartan_hint_elements(&ctx, &toral) {
                    if let Some(c) = fixed.from_ambient(&cand) {
                        hints.push(c);
                    }
                }
            }
            let h_sub = cartan_subalgebra_with_hints(&fixed.alg, &hints)?;
            let rows: Vec<KVec> =
                (0..h_sub.dim()).map(|i| fixed.to_ambient(h_sub.basis_row(i))).collect();
            RowSpace::from_rows(&ctx, rows, alg.dim())
        }
    };

    let datum_s = root_space_decomposition(alg, &h_ambient)?;
    let delta_type = datum_s.identified.as_ref().map(|i| i.system.rtype);
    if delta_type.is_none() {
        failures.push(format!(
            "weights of the base algebra do not form a root system: {}",
            datum_s.ident_error.clone().unwrap_or_default()
        ));
    }

    let split_g = if a1 {
        match split_simple_subalgebra(alg, &fixed_rows, &h_ambient) {
            Ok(s) => Some(s),
            Err(e) => {
                failures.push(format!("fixed algebra root data: {e}"));
                None
            }
        }
    } else {
        None
    };
    let delta_g_type =
        split_g.as_ref().and_then(|s| s.datum.identified.as_ref()).map(|i| i.system.rtype);

    // module-shape condition on every nonzero component
    let mut a2 = true;
    let mut components = vec![];
    for (res, space) in &grading.components {
        if *res == zero {
            components.push((res.clone(), space.dim(), None));
            continue;
        }
        match &split_g {
            Some(g) => {
                let rep = analyze_module(alg, g, space)?;
                if !rep.a2_shape {
                    a2 = false;
                    failures.push(format!(
                        "component {res:?} fails condition (M): not a trivial part plus one distinguished module"
                    ));
                }
                components.push((res.clone(), space.dim(), Some(rep)));
            }
            None => {
                a2 = false;
                components.push((res.clone(), space.dim(), None));
            }
        }
    }
    if split_g.is_none() {
        failures.push("module condition not evaluable without simple fixed algebra".into());
    }

    let order_product: usize = tuple.orders.iter().product();
    let a3 = tuple.group_order == order_product;
    if !a3 {
        failures.push(format!(
            "generated group has order {} but the orders multiply to {order_product}",
            tuple.group_order
        ));
    }

    // Delta = Delta_g or Delta = (Delta_g) enlarged, at the level of
    // weight value vectors on the shared Cartan basis
    let mut relation = None;
    let mut ind_matches = false;
    if let (Some(g), Some(_)) = (&split_g, &datum_s.identified) {
        let s_vals: Vec<KVec> = datum_s.weights.iter().map(|w| w.values.clone()).collect();
        let g_vals: Vec<KVec> = g.datum.weights.iter().map(|w| w.values.clone()).collect();
        let set =
            |v: &Vec<KVec>| -> std::collections::BTreeSet<Vec<String>> {
                v.iter()
                    .map(|w| w.iter().flat_map(|c| c.to_strings()).collect())
                    .collect()
            };
        let ss = set(&s_vals);
        let gs = set(&g_vals);
        if ss == gs {
            relation = Some(DeltaRelation::Equal);
        } else {
            // enlarged: g values plus doubled short g roots
            let gid = g.datum.identified.as_ref().unwrap();
            let mut en_vals = g_vals.clone();
            for (i, w) in g.datum.weights.iter().enumerate() {
                let coords = &gid.coords[i];
                if coords.iter().any(|&c| c != 0) && gid.system.is_short(coords) {
                    en_vals.push(w.values.iter().map(|c| c + c).collect());
                }
            }
            if ss == set(&en_vals) {
                relation = Some(DeltaRelation::Enlarged);
            } else {
                failures.push("support is neither the fixed root system nor its enlargement".into());
            }
        }
        // indivisible part of Delta equals Delta_g
        let ind: std::collections::BTreeSet<Vec<String>> = datum_s
            .weights
            .iter()
            .filter(|w| {
                let half_exists = datum_s.weights.iter().any(|u| {
                    u.values.iter().zip(&w.values).all(|(h, f)| &(h + h) == f)
                        && u.values.iter().any(|c| !c.is_zero())
                });
                !half_exists || w.values.iter().all(|c| c.is_zero())
            })
            .map(|w| w.values.iter().flat_map(|c| c.to_strings()).collect())
            .collect();
        ind_matches = ind == gs;
        if !ind_matches {
            failures.push("indivisible support differs from the fixed root system".into());
        }
    }

    let passes =
        a1 && a2 && a3 && relation.is_some() && ind_matches && datum_s.identified.is_some();
    Ok(AReport {
        a1,
        a2,
        a3,
        passes,
        fixed,
        fixed_cert,
        h_ambient,
        datum_s,
        split_g,
        delta_type,
        delta_g_type,
        relation,
        ind_matches,
        components,
        group_order: tuple.group_order,
        order_product,
        invariant_factors: tuple.invariant_factors.clone(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldContext;
    use crate::liealg::chevalley_basis;
    use crate::rootsys::Family;

    fn ty(f: Family, r: usize) -> RootSystemType {
        RootSystemType::new(f, r).unwrap()
    }

    #[test]
    fn a2_diagram_involution() {
        let ctx = FieldContext::new(2);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 2)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[1, 0]).unwrap();
        assert_eq!(sigma.order, 2);
        let tuple = AutTuple::new(vec![sigma]).unwrap();
        let grading = grading_by_tuple(&alg, &tuple).unwrap();
        let dims: Vec<usize> = grading.components.iter().map(|(_, s)| s.dim()).collect();
        assert_eq!(dims, vec![3, 5]);
    }

    #[test]
    fn d4_triality() {
        let ctx = FieldContext::new(3);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::D, 4)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[2, 1, 3, 0]).unwrap();
        assert_eq!(sigma.order, 3);
        let tuple = AutTuple::new(vec![sigma]).unwrap();
        let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan)).unwrap();
        assert!(report.a1 && report.a2 && report.a3);
        assert_eq!(report.fixed.alg.dim(), 14);
        assert_eq!(report.delta_g_type, Some(ty(Family::G, 2)));
        assert_eq!(report.relation, Some(DeltaRelation::Equal));
    }

    #[test]
    fn identity_permutation_is_identity() {
        let ctx = FieldContext::new(1);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 2)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[0, 1]).unwrap();
        assert!(sigma.is_identity());
    }

    #[test]
    fn rejects_non_symmetry() {
        let ctx = FieldContext::new(1);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::B, 2)).unwrap();
        assert!(matches!(
            diagram_automorphism(&alg, &ep, &[1, 0]),
            Err(LtError::NotADiagramSymmetry)
        ));
    }

    #[test]
    fn power_action_composition() {
        let ctx = FieldContext::new(2);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 2)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[1, 0]).unwrap();
        let id = Automorphism::identity(&alg);
        let tuple = AutTuple::new(vec![sigma, id]).unwrap();
        // (sigma^P)^{P'} = sigma^{P P'} on a couple of small matrices
        let p1 = IMat::from_rows(vec![vec![1, 0], vec![1, 1]]);
        let p2 = IMat::from_rows(vec![vec![1, 1], vec![0, 1]]);
        let lhs = tuple_power_action(&alg, &tuple_power_action(&alg, &tuple, &p1).unwrap(), &p2)
            .unwrap();
        let rhs = tuple_power_action(&alg, &tuple, &p1.matmul(&p2)).unwrap();
        for (a, b) in lhs.entries.iter().zip(&rhs.entries) {
            assert_eq!(a.mat, b.mat);
        }
        // expansion: sigma = (s, 1) turns into (s, s) when both columns
        // pick up the first generator
        let p = IMat::from_rows(vec![vec![1, 1], vec![0, 1]]);
        let t2 = tuple_power_action(&alg, &tuple, &p).unwrap();
        assert_eq!(t2.entries[0].mat, tuple.entries[0].mat);
        assert_eq!(t2.entries[1].mat, tuple.entries[0].mat);
    }

    #[test]
    fn group_structure_duplicated_generator() {
        let ctx = FieldContext::new(2);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 2)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[1, 0]).unwrap();
        let tuple = AutTuple::new(vec![sigma.clone(), sigma]).unwrap();
        assert_eq!(tuple.group_order, 2);
        assert!(!tuple.satisfies_a3());
        let id_tuple = AutTuple::identity(&alg, 2).unwrap();
        assert_eq!(id_tuple.group_order, 1);
        assert!(id_tuple.satisfies_a3());
    }

    #[test]
    fn a2_involution_check_passes_with_enlargement() {
        let ctx = FieldContext::new(2);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 2)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[1, 0]).unwrap();
        let tuple = AutTuple::new(vec![sigma]).unwrap();
        let report = check_a_conditions(&alg, &tuple, None, Some(&ep.cartan)).unwrap();
        assert!(report.passes, "failures: {:?}", report.failures);
        assert_eq!(report.delta_g_type, Some(ty(Family::A, 1)));
        assert_eq!(report.delta_type, Some(ty(Family::BC, 1)));
        assert_eq!(report.relation, Some(DeltaRelation::Enlarged));
        // the nonzero component is the 5-dimensional symmetric module
        let comp = report.components.iter().find(|(_, _, r)| r.is_some()).unwrap();
        assert_eq!(comp.1, 5);
        let rep = comp.2.as_ref().unwrap();
        assert_eq!(rep.summands.len(), 1);
        assert_eq!(rep.summands[0].identity, crate::liealg::SummandId::Symmetric);
    }

    #[test]
    fn torus_automorphism_scalars() {
        let ctx = FieldContext::new(4);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 1)).unwrap();
        let datum = root_space_decomposition(&alg, &ep.cartan).unwrap();
        // identity scalars give the identity
        let id = torus_automorphism(&alg, &datum, &[ctx.one()]).unwrap();
        assert!(id.is_identity());
        let i = ctx.zeta_of_order(4).unwrap();
        let tau = torus_automorphism(&alg, &datum, &[i]).unwrap();
        assert_eq!(tau.order, 4);
        assert!(matches!(
            torus_automorphism(&alg, &datum, &[ctx.zero()]),
            Err(LtError::ZeroScalar)
        ));
    }

    #[test]
    fn automorphism_json_round_trip() {
        let ctx = FieldContext::new(2);
        let (alg, ep) = chevalley_basis(&ctx, ty(Family::A, 2)).unwrap();
        let sigma = diagram_automorphism(&alg, &ep, &[1, 0]).unwrap();
        let j = sigma.to_json();
        let sigma2 = Automorphism::from_json(&alg, &j).unwrap();
        assert_eq!(sigma.mat, sigma2.mat);
        assert_eq!(sigma2.order, 2);
        // a corrupted matrix is rejected by the multiplicativity check
        let mut bad = j.clone();
        bad["matrix"][0][0] = json!(["7/1"]);
        assert!(Automorphism::from_json(&alg, &bad).is_err());
    }
}
