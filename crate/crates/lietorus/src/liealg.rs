//! Finite-dimensional Lie algebras over the working field: structure
//! constants with eager antisymmetry/Jacobi verification, split simple
//! constructions for every reduced type, orthogonal algebras from a gram
//! matrix, Killing forms, simplicity certificates, Cartan subalgebras,
//! root space decompositions and module decomposition against the three
//! distinguished module classes.
//!
//! Simple algebras of types A, D, E are built on a root-lattice basis with
//! a bimultiplicative sign cocycle; B, C, F4 and G2 are realized as fixed
//! algebras of diagram automorphisms of a simply-laced parent, so every
//! structure constant is a small integer and the Jacobi check pins the
//! conventions.

use std::collections::HashMap;
use std::sync::Arc;


use serde_json::{json, Value};

use crate::error::{LtError, Result};
use crate::exactfield::{CyclotomicNumber, FieldContext, Rat};
use crate::linalg::{KMat, RowSpace};
use crate::rootsys::{
    build_root_system, cartan_matrix, derive_variants, identify_rootsystem, Family,
    Identification, RootSystem, RootSystemType,
};

pub type Subspace = RowSpace;
pub type KVec = Vec<CyclotomicNumber>;

type SparseVec = Vec<(usize, CyclotomicNumber)>;

/// Matrix realization carried by algebras built from matrices, so that
/// conjugation automorphisms and matrix-level witnesses can be expressed.
#[derive(Clone)]
pub struct MatrixRealization {
    pub n: usize,
    pub gram: Option<KMat>,
    /// basis_mats[i] = the matrix realizing basis vector i.
    pub basis_mats: Vec<KMat>,
    /// Row space of flattened basis matrices, for coordinate solving.
    flat: RowSpace,
}

impl MatrixRealization {
    /// Coordinates of an n x n matrix in the algebra basis, if it lies in
    /// the realized subspace.
    pub fn coordinates(&self, m: &KMat) -> Option<KVec> {
        let v: KVec = (0..self.n * self.n).map(|k| m.at(k / self.n, k % self.n).clone()).collect();
        self.flat.coordinates(&v)
    }

    pub fn realize(&self, x: &[CyclotomicNumber]) -> KMat {
        let ctx = self.basis_mats[0].ctx().clone();
        let mut out = KMat::zero(&ctx, self.n, self.n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.basis_mats[i].scale(c));
            }
        }
        out
    }
}

/// Finite-dimensional Lie algebra given by a sparse bracket table on a
/// labeled basis.  Antisymmetry and the Jacobi identity are verified on
/// basis triples at construction.
#[derive(Clone)]
pub struct LieAlgebra {
    ctx: Arc<FieldContext>,
    dim: usize,
    /// table[i * dim + j] = [b_i, b_j] as a sparse coordinate list.
    table: Vec<SparseVec>,
    labels: Vec<String>,
    pub matrix_real: Option<MatrixRealization>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}, conductor {})", self.dim, self.ctx.conductor())
    }
}

impl LieAlgebra {
    pub fn new(
        ctx: Arc<FieldContext>,
        dim: usize,
        table: Vec<SparseVec>,
        labels: Vec<String>,
    ) -> Result<Self> {
        assert_eq!(table.len(), dim * dim);
        assert_eq!(labels.len(), dim);
        let alg = LieAlgebra { ctx, dim, table, labels, matrix_real: None };
        alg.verify_antisymmetry()?;
        alg.verify_jacobi()?;
        Ok(alg)
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> KVec {
        let mut v = vec![self.ctx.zero(); self.dim];
        v[i] = self.ctx.one();
        v
    }

    pub fn zero_vec(&self) -> KVec {
        vec![self.ctx.zero(); self.dim]
    }

    /// Bracket of arbitrary coordinate vectors.
    pub fn bracket(&self, x: &[CyclotomicNumber], y: &[CyclotomicNumber]) -> KVec {
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in self.basis_bracket(i, j) {
                    out[*k] = &out[*k] + &(&c * v);
                }
            }
        }
        out
    }

    /// Bracket of a basis vector with a sparse vector, sparse result.
    fn bracket_basis_sparse(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc: HashMap<usize, CyclotomicNumber> = HashMap::new();
        for (j, c) in y {
            for (k, v) in self.basis_bracket(i, *j) {
                let e = acc.entry(*k).or_insert_with(|| self.ctx.zero());
                *e = &*e + &(c * v);
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Matrix of ad(x): column j is [x, b_j].
    pub fn ad(&self, x: &[CyclotomicNumber]) -> KMat {
        let mut m = KMat::zero(&self.ctx, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, v) in self.basis_bracket(i, j) {
                    let cur = m.at(*k, j) + &(xi * v);
                    m.set(*k, j, cur);
                }
            }
        }
        m
    }

    fn verify_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..=i {
                let a = self.basis_bracket(i, j);
                let b = self.basis_bracket(j, i);
                let mut neg: SparseVec = b.iter().map(|(k, c)| (*k, -c)).collect();
                neg.sort_by_key(|(k, _)| *k);
                let mut a2 = a.clone();
                a2.sort_by_key(|(k, _)| *k);
                if a2 != neg {
                    return Err(LtError::InternalCheck(format!(
                        "antisymmetry fails on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn verify_jacobi(&self) -> Result<()> {
        // with antisymmetry verified, triples with repeated indices vanish
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let bij = self.basis_bracket(i, j).clone();
                for k in j + 1..self.dim {
                    let bjk = self.basis_bracket(j, k).clone();
                    let bki = self.basis_bracket(k, i).clone();
                    let mut acc: HashMap<usize, CyclotomicNumber> = HashMap::new();
                    for (idx, c) in self.bracket_basis_sparse(k, &bij) {
                        let e = acc.entry(idx).or_insert_with(|| self.ctx.zero());
                        *e = &*e - &c; // [ [bi,bj], bk ] = -[bk, [bi,bj]]
                    }
                    for (idx, c) in self.bracket_basis_sparse(i, &bjk) {
                        let e = acc.entry(idx).or_insert_with(|| self.ctx.zero());
                        *e = &*e - &c;
                    }
                    for (idx, c) in self.bracket_basis_sparse(j, &bki) {
                        let e = acc.entry(idx).or_insert_with(|| self.ctx.zero());
                        *e = &*e - &c;
                    }
                    if acc.values().any(|c| !c.is_zero()) {
                        return Err(LtError::InternalCheck(format!(
                            "Jacobi fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Is the bracket identically zero.
    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|t| t.is_empty())
    }

    /// Re-run the construction-time identity checks on all basis triples.
    pub fn verify_identities(&self) -> Result<()> {
        self.verify_antisymmetry()?;
        self.verify_jacobi()
    }

    pub fn to_json(&self) -> Value {
        let mut brackets = vec![];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let t = self.basis_bracket(i, j);
                if !t.is_empty() {
                    brackets.push(json!({
                        "i": i,
                        "j": j,
                        "terms": t.iter().map(|(k, c)| json!([k, c.to_strings()])).collect::<Vec<_>>(),
                    }));
                }
            }
        }
        json!({
            "conductor": self.ctx.conductor(),
            "dim": self.dim,
            "labels": self.labels,
            "brackets": brackets,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| LtError::SchemaError(format!("algebra json: {m}"));
        let conductor = v["conductor"].as_u64().ok_or_else(|| bad("missing conductor"))?;
        let ctx = FieldContext::new(conductor);
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let labels: Vec<String> = match v["labels"].as_array() {
            Some(a) => a.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect(),
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        let mut table = vec![SparseVec::new(); dim * dim];
        for b in v["brackets"].as_array().ok_or_else(|| bad("missing brackets"))? {
            let i = b["i"].as_u64().ok_or_else(|| bad("bad i"))? as usize;
            let j = b["j"].as_u64().ok_or_else(|| bad("bad j"))? as usize;
            if i >= dim || j >= dim {
                return Err(bad("index out of range"));
            }
            let mut terms = SparseVec::new();
            for t in b["terms"].as_array().ok_or_else(|| bad("bad terms"))? {
                let k = t[0].as_u64().ok_or_else(|| bad("bad term index"))? as usize;
                let strs: Vec<String> = t[1]
                    .as_array()
                    .ok_or_else(|| bad("bad term coeff"))?
                    .iter()
                    .map(|s| s.as_str().unwrap_or_default().to_string())
                    .collect();
                terms.push((k, CyclotomicNumber::from_strings(&ctx, &strs)?));
            }
            table[i * dim + j] = terms.clone();
            table[j * dim + i] = terms.iter().map(|(k, c)| (*k, -c)).collect();
        }
        LieAlgebra::new(ctx, dim, table, labels)
    }
}

// ---------------------------------------------------------------------------
// split simple constructions
// ---------------------------------------------------------------------------

/// Chevalley-style generator data: a splitting Cartan subalgebra, base
/// ordering, and e_i/f_i with [e_i, f_i] = the simple coroot.
pub struct Epinglage {
    pub rtype: RootSystemType,
    pub cartan: Subspace,
    pub h: Vec<KVec>,
    pub e: Vec<KVec>,
    pub f: Vec<KVec>,
    /// For lattice-basis constructions: nonzero root -> basis index.
    pub root_index: Option<RootIndex>,
}

pub struct RootIndex {
    pub system: RootSystem,
    pub of_root: HashMap<Vec<i64>, usize>,
}

/// Sign cocycle on the root lattice of a simply-laced system:
/// bimultiplicative with eps(a,a) = -1 on roots.
struct SignCocycle {
    rank: usize,
    /// neg[i][j] = true when eps(alpha_i, alpha_j) = -1.
    neg: Vec<Vec<bool>>,
}

impl SignCocycle {
    fn new(cm: &[Vec<i64>]) -> Self {
        let rank = cm.len();
        let mut neg = vec![vec![false; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                if i == j || (i < j && cm[i][j] == -1) {
                    neg[i][j] = true;
                }
            }
        }
        SignCocycle { rank, neg }
    }

    /// eps(a, b) as +-1 for lattice vectors in base coordinates.
    fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut parity = 0i64;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 && self.neg[i][j] {
                    parity += a[i] * b[j];
                }
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Split simple Lie algebra of a reduced type, with epinglage.
pub fn chevalley_basis(
    ctx: &Arc<FieldContext>,
    t: RootSystemType,
) -> Result<(LieAlgebra, Epinglage)> {
    if !t.is_reduced() {
        return Err(LtError::InvalidType(format!("{t} is not reduced")));
    }
    match t.family {
        Family::A | Family::D | Family::E => simply_laced_algebra(ctx, t),
        Family::B => folded_algebra(ctx, t),
        Family::C => folded_algebra(ctx, t),
        Family::F => folded_algebra(ctx, t),
        Family::G => folded_algebra(ctx, t),
        Family::BC => unreachable!(),
    }
}

/// Lattice construction for A, D, E: basis h_1..h_l then one vector per
/// nonzero root; brackets through the sign cocycle.
fn simply_laced_algebra(
    ctx: &Arc<FieldContext>,
    t: RootSystemType,
) -> Result<(LieAlgebra, Epinglage)> {
    let sys = build_root_system(t);
    let cm = cartan_matrix(t);
    let eps = SignCocycle::new(&cm);
    let l = t.rank;

    // order: positives by (height, lex), then their negatives
    let mut pos = sys.positive_roots();
    pos.sort_by_key(|r| (sys.height(r), r.clone()));
    let mut roots_ordered: Vec<Vec<i64>> = pos.clone();
    roots_ordered.extend(pos.iter().map(|r| r.iter().map(|&c| -c).collect::<Vec<i64>>()));

    let dim = l + roots_ordered.len();
    let mut of_root: HashMap<Vec<i64>, usize> = HashMap::new();
    for (k, r) in roots_ordered.iter().enumerate() {
        of_root.insert(r.clone(), l + k);
    }

    let mut labels: Vec<String> = (0..l).map(|i| format!("h{}", i + 1)).collect();
    for r in &roots_ordered {
        let cs: Vec<String> = r.iter().map(|c| c.to_string()).collect();
        labels.push(format!("x({})", cs.join(",")));
    }

    let mut table = vec![SparseVec::new(); dim * dim];
    let put = |table: &mut Vec<SparseVec>, i: usize, j: usize, v: SparseVec| {
        table[j * dim + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
        table[i * dim + j] = v;
    };
    // [h_i, x_r] = <r, alpha_i^vee> x_r
    for i in 0..l {
        for (k, r) in roots_ordered.iter().enumerate() {
            let pair: i64 = (0..l).map(|j| r[j] * cm[i][j]).sum();
            if pair != 0 {
                put(&mut table, i, l + k, vec![(l + k, ctx.from_int(pair))]);
            }
        }
    }
    // [x_a, x_b]
    for (ka, a) in roots_ordered.iter().enumerate() {
        for (kb, b) in roots_ordered.iter().enumerate() {
            if ka >= kb {
                continue;
            }
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&c| c == 0) {
                // [x_a, x_{-a}] = eps(a,-a) * a^vee; simply laced: a^vee = sum a_i alpha_i^vee
                let s = eps.eval(a, b);
                let v: SparseVec = (0..l)
                    .filter(|&i| a[i] != 0)
                    .map(|i| (i, ctx.from_int(s * a[i])))
                    .collect();
                put(&mut table, l + ka, l + kb, v);
            } else if sys.contains(&sum) && sum.iter().any(|&c| c != 0) {
                let s = eps.eval(a, b);
                let target = of_root[&sum];
                put(&mut table, l + ka, l + kb, vec![(target, ctx.from_int(s))]);
            }
        }
    }

    let alg = LieAlgebra::new(ctx.clone(), dim, table, labels)?;
    let mut h = vec![];
    let mut e = vec![];
    let mut f = vec![];
    for i in 0..l {
        h.push(alg.basis_vector(i));
        let mut simple = vec![0i64; l];
        simple[i] = 1;
        e.push(alg.basis_vector(of_root[&simple]));
        let neg: Vec<i64> = simple.iter().map(|&c| -c).collect();
        // [x_a, x_{-a}] = -a^vee, so f_i = -x_{-alpha_i}
        let mut fv = alg.zero_vec();
        fv[of_root[&neg]] = ctx.from_int(-1);
        f.push(fv);
    }
    let cartan = RowSpace::from_rows(ctx, h.clone(), dim);
    let ep = Epinglage {
        rtype: t,
        cartan,
        h,
        e,
        f,
        root_index: Some(RootIndex { system: sys, of_root }),
    };
    verify_epinglage(&alg, &ep)?;
    Ok((alg, ep))
}

/// Parent type and base permutation whose fixed algebra realizes `t`,
/// together with the child base as orbits of parent base indices in
/// Bourbaki order of the child.
fn folding_data(t: RootSystemType) -> (RootSystemType, Vec<usize>, Vec<Vec<usize>>) {
    let l = t.rank;
    match t.family {
        Family::B if l == 2 => {
            // parent A3 with the end flip; the middle node is the long root
            let parent = RootSystemType::new(Family::A, 3).unwrap();
            (parent, vec![2, 1, 0], vec![vec![1], vec![0, 2]])
        }
        Family::B => {
            // parent D_{l+1}, swap the fork nodes l-1, l (0-indexed)
            let parent = RootSystemType::new(Family::D, l + 1).unwrap();
            let mut perm: Vec<usize> = (0..l + 1).collect();
            perm.swap(l - 1, l);
            let mut orbits: Vec<Vec<usize>> = (0..l - 1).map(|i| vec![i]).collect();
            orbits.push(vec![l - 1, l]);
            (parent, perm, orbits)
        }
        Family::C => {
            // parent A_{2l-1}, reversal; middle node is the long child root
            let n = 2 * l - 1;
            let parent = RootSystemType::new(Family::A, n).unwrap();
            let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
            let mut orbits: Vec<Vec<usize>> = (0..l - 1).map(|i| vec![i, n - 1 - i]).collect();
            orbits.push(vec![l - 1]);
            (parent, perm, orbits)
        }
        Family::F => {
            // parent E6 (Bourbaki): 1<->6, 3<->5, fix 2 and 4
            let parent = RootSystemType::new(Family::E, 6).unwrap();
            let perm = vec![5, 1, 4, 3, 2, 0];
            let orbits = vec![vec![1], vec![3], vec![2, 4], vec![0, 5]];
            (parent, perm, orbits)
        }
        Family::G => {
            // parent D4, triality on nodes 1,3,4 (Bourbaki), fixing 2
            let parent = RootSystemType::new(Family::D, 4).unwrap();
            let perm = vec![2, 1, 3, 0];
            let orbits = vec![vec![0, 2, 3], vec![1]];
            (parent, perm, orbits)
        }
        _ => unreachable!("only folded families"),
    }
}

/// Extend a base permutation to an algebra automorphism of a lattice-basis
/// algebra, solving level by level in root height.
pub fn extend_diagram_automorphism(
    alg: &LieAlgebra,
    ep: &Epinglage,
    perm: &[usize],
) -> Result<KMat> {
    let l = ep.rtype.rank;
    let cm = cartan_matrix(ep.rtype);
    if perm.len() != l || {
        let mut seen = vec![false; l];
        perm.iter().any(|&i| i >= l || std::mem::replace(&mut seen[i], true))
    } {
        return Err(LtError::NotADiagramSymmetry);
    }
    // permutation must preserve the Cartan matrix
    for i in 0..l {
        for j in 0..l {
            if cm[perm[i]][perm[j]] != cm[i][j] {
                return Err(LtError::NotADiagramSymmetry);
            }
        }
    }
    let ri = ep
        .root_index
        .as_ref()
        .ok_or_else(|| LtError::InternalCheck("no root index on epinglage".into()))?;
    let sys = &ri.system;
    let ctx = alg.ctx().clone();
    let d = alg.dim();
    let mut images: Vec<Option<KVec>> = vec![None; d];
    // Cartan part: sigma(h_i) = h_{perm(i)}
    for i in 0..l {
        images[i] = Some(alg.basis_vector(perm[i]));
    }
    let apply_perm = |r: &[i64]| -> Vec<i64> {
        // root coords permute contravariantly: coefficient of alpha_{perm(i)} is r[i]
        let mut out = vec![0i64; l];
        for i in 0..l {
            out[perm[i]] = r[i];
        }
        out
    };
    // simple root vectors and their negatives
    for i in 0..l {
        let mut simple = vec![0i64; l];
        simple[i] = 1;
        let mut target = vec![0i64; l];
        target[perm[i]] = 1;
        images[ri.of_root[&simple]] = Some(alg.basis_vector(ri.of_root[&target]));
        let neg: Vec<i64> = simple.iter().map(|&c| -c).collect();
        let tneg: Vec<i64> = target.iter().map(|&c| -c).collect();
        images[ri.of_root[&neg]] = Some(alg.basis_vector(ri.of_root[&tneg]));
    }
    // positives by height, then negatives: sigma(x_g) = [sigma x_a, sigma x_d]/N
    let mut pos = sys.positive_roots();
    pos.sort_by_key(|r| (sys.height(r), r.clone()));
    for sign in [1i64, -1] {
        for r in &pos {
            if sys.height(r) == 1 {
                continue;
            }
            let signed: Vec<i64> = r.iter().map(|&c| sign * c).collect();
            let idx = ri.of_root[&signed];
            if images[idx].is_some() {
                continue;
            }
            // find a simple summand: signed = a + rest with both roots
            let mut found = None;
            for i in 0..l {
                let mut a = vec![0i64; l];
                a[i] = sign;
                let rest: Vec<i64> = signed.iter().zip(&a).map(|(x, y)| x - y).collect();
                if sys.contains(&rest) && rest.iter().any(|&c| c != 0) {
                    found = Some((a, rest));
                    break;
                }
            }
            let (a, rest) = found.ok_or_else(|| {
                LtError::ExtensionInconsistent("no simple decomposition of a root".into())
            })?;
            let ia = ri.of_root[&a];
            let irest = ri.of_root[&rest];
            let n = {
                let t = alg.basis_bracket(ia, irest);
                debug_assert_eq!(t.len(), 1);
                t[0].1.clone()
            };
            let sa = images[ia].clone().unwrap();
            let srest = images[irest].clone().unwrap();
            let img = alg.bracket(&sa, &srest);
            let ninv = n.inv()?;
            images[idx] = Some(img.iter().map(|c| c * &ninv).collect());
            // sanity: image must be supported on the permuted root line
            let timg = apply_perm(&signed);
            let tidx = ri.of_root[&timg];
            let v = images[idx].as_ref().unwrap();
            for (k, c) in v.iter().enumerate() {
                if k != tidx && !c.is_zero() {
                    return Err(LtError::ExtensionInconsistent(
                        "image not supported on the permuted root".into(),
                    ));
                }
            }
        }
    }
    let cols: Vec<KVec> = images.into_iter().map(|x| x.unwrap()).collect();
    let m = KMat::from_fn(&ctx, d, d, |r, c| cols[c][r].clone());
    verify_multiplicative(alg, &m)?;
    Ok(m)
}

/// Check phi(bracket_src(x,y)) = bracket_dst(phi x, phi y) on basis pairs;
/// src and dst may be different algebras on bases of equal size.
pub fn verify_isomorphism(src: &LieAlgebra, dst: &LieAlgebra, m: &KMat) -> Result<()> {
    if src.dim() != dst.dim() || m.rows != src.dim() || m.cols != src.dim() {
        return Err(LtError::NotAnIsomorphism("dimension mismatch".into()));
    }
    if m.inverse().is_none() {
        return Err(LtError::NotAnIsomorphism("not invertible".into()));
    }
    let d = src.dim();
    let cols: Vec<KVec> = (0..d).map(|j| (0..d).map(|i| m.at(i, j).clone()).collect()).collect();
    for i in 0..d {
        for j in i + 1..d {
            let mut lhs = dst.zero_vec();
            for (k, c) in src.basis_bracket(i, j) {
                for (r, v) in cols[*k].iter().enumerate() {
                    if !v.is_zero() {
                        lhs[r] = &lhs[r] + &(c * v);
                    }
                }
            }
            let rhs = dst.bracket(&cols[i], &cols[j]);
            if lhs != rhs {
                return Err(LtError::NotAnIsomorphism(format!(
                    "bracket compatibility fails on basis pair ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

/// Check phi([x,y]) = [phi x, phi y] on all basis pairs.
pub fn verify_multiplicative(alg: &LieAlgebra, m: &KMat) -> Result<()> {
    let d = alg.dim();
    let cols: Vec<KVec> = (0..d).map(|j| (0..d).map(|i| m.at(i, j).clone()).collect()).collect();
    for i in 0..d {
        for j in i + 1..d {
            let lhs = {
                let br = alg.basis_bracket(i, j);
                let mut acc = alg.zero_vec();
                for (k, c) in br {
                    for (r, v) in cols[*k].iter().enumerate() {
                        if !v.is_zero() {
                            acc[r] = &acc[r] + &(c * v);
                        }
                    }
                }
                acc
            };
            let rhs = alg.bracket(&cols[i], &cols[j]);
            if lhs != rhs {
                return Err(LtError::NotAnAutomorphism(format!(
                    "multiplicativity fails on basis pair ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

/// Build a non-simply-laced algebra as the fixed algebra of a diagram
/// automorphism of its simply-laced parent.
fn folded_algebra(ctx: &Arc<FieldContext>, t: RootSystemType) -> Result<(LieAlgebra, Epinglage)> {
    let (parent_t, perm, orbits) = folding_data(t);
    let (parent, pep) = simply_laced_algebra(ctx, parent_t)?;
    let sigma = extend_diagram_automorphism(&parent, &pep, &perm)?;
    let order = orbits.iter().map(|o| o.len()).max().unwrap();

    // fixed basis: orbit sums of root vectors (skipping sign cancellations),
    // then orbit sums of Cartan generators, in a deterministic order
    let ri = pep.root_index.as_ref().unwrap();
    let l = parent_t.rank;
    let d = parent.dim();
    let apply_perm = |r: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; l];
        for i in 0..l {
            out[perm[i]] = r[i];
        }
        out
    };
    let mut rows: Vec<KVec> = vec![];
    // Cartan orbit sums first, in child base order
    for orbit in &orbits {
        let mut v = parent.zero_vec();
        for &i in orbit {
            v[i] = ctx.one();
        }
        rows.push(v);
    }
    let mut seen: std::collections::HashSet<Vec<i64>> = Default::default();
    let mut roots_sorted: Vec<Vec<i64>> = ri.system.nonzero().cloned().collect();
    roots_sorted.sort_by_key(|r| (ri.system.height(r).abs(), r.clone()));
    for r in &roots_sorted {
        if seen.contains(r) {
            continue;
        }
        // orbit of the root under the base permutation
        let mut orb = vec![r.clone()];
        let mut cur = apply_perm(r);
        while cur != *r {
            orb.push(cur.clone());
            cur = apply_perm(&cur);
        }
        for o in &orb {
            seen.insert(o.clone());
        }
        // sum sigma^k(x_r) over the orbit length
        let mut v = parent.basis_vector(ri.of_root[r]);
        let mut acc = v.clone();
        for _ in 1..order {
            v = (0..d)
                .map(|i| {
                    let mut s = ctx.zero();
                    for (j, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            s = &s + &(sigma.at(i, j) * c);
                        }
                    }
                    s
                })
                .collect();
            for (a, b) in acc.iter_mut().zip(&v) {
                *a = &*a + b;
            }
        }
        // normalize: divide by orbit multiplicity so coordinates are +-1
        let mult = ctx.from_int((order / orb.len()) as i64);
        if acc.iter().all(|c| c.is_zero()) {
            continue;
        }
        let minv = mult.inv()?;
        rows.push(acc.iter().map(|c| c * &minv).collect());
    }

    let sub = sub_algebra_with_rows(&parent, rows, format!("{t}"))?;

    // child epinglage: generators are orbit sums of the parent generators
    let mut h = vec![];
    let mut e = vec![];
    let mut f = vec![];
    for orbit in &orbits {
        let mut hv = parent.zero_vec();
        let mut ev = parent.zero_vec();
        let mut fv = parent.zero_vec();
        for &i in orbit {
            for (a, b) in hv.iter_mut().zip(&pep.h[i]) {
                *a = &*a + b;
            }
            for (a, b) in ev.iter_mut().zip(&pep.e[i]) {
                *a = &*a + b;
            }
            for (a, b) in fv.iter_mut().zip(&pep.f[i]) {
                *a = &*a + b;
            }
        }
        let hc = sub
            .rows_space
            .coordinates(&hv)
            .ok_or_else(|| LtError::InternalCheck("cartan orbit sum not in fixed algebra".into()))?;
        let ec = sub
            .rows_space
            .coordinates(&ev)
            .ok_or_else(|| LtError::InternalCheck("e orbit sum not in fixed algebra".into()))?;
        let fc = sub
            .rows_space
            .coordinates(&fv)
            .ok_or_else(|| LtError::InternalCheck("f orbit sum not in fixed algebra".into()))?;
        h.push(hc);
        e.push(ec);
        f.push(fc);
    }
    let alg = sub.alg;
    let cartan = RowSpace::from_rows(ctx, h.clone(), alg.dim());
    let ep = Epinglage { rtype: t, cartan, h, e, f, root_index: None };
    verify_epinglage(&alg, &ep)?;
    Ok((alg, ep))
}

/// Chevalley–Serre relations for the epinglage generators.
pub fn verify_epinglage(alg: &LieAlgebra, ep: &Epinglage) -> Result<()> {
    let cm = cartan_matrix(ep.rtype);
    let l = ep.rtype.rank;
    let bad = |m: String| LtError::InternalCheck(format!("epinglage: {m}"));
    for i in 0..l {
        for j in 0..l {
            // [h_i, h_j] = 0
            if alg.bracket(&ep.h[i], &ep.h[j]).iter().any(|c| !c.is_zero()) {
                return Err(bad(format!("[h{i},h{j}] != 0")));
            }
            // [e_i, f_j] = delta_ij h_i
            let ef = alg.bracket(&ep.e[i], &ep.f[j]);
            let expect = if i == j { ep.h[i].clone() } else { alg.zero_vec() };
            if ef != expect {
                return Err(bad(format!("[e{i},f{j}] wrong")));
            }
            // [h_i, e_j] = c[i][j] e_j and [h_i, f_j] = -c[i][j] f_j
            let he = alg.bracket(&ep.h[i], &ep.e[j]);
            let want: KVec = ep.e[j].iter().map(|c| c.scale(&Rat::from_integer(cm[i][j].into()))).collect();
            if he != want {
                return Err(bad(format!("[h{i},e{j}] wrong")));
            }
            // Serre nilpotency (ad e_i)^{1-c_ij} e_j = 0, i != j
            if i != j {
                let mut v = ep.e[j].clone();
                for _ in 0..(1 - cm[i][j]) {
                    v = alg.bracket(&ep.e[i], &v);
                }
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(bad(format!("Serre relation fails for ({i},{j})")));
                }
            }
        }
    }
    Ok(())
}

/// The orthogonal algebra of an invertible symmetric form: all matrices x
/// with x^T g + g x = 0, with a matrix realization attached.
pub fn orthogonal_algebra(ctx: &Arc<FieldContext>, gram: &KMat) -> Result<LieAlgebra> {
    let n = gram.rows;
    if gram.cols != n || gram != &gram.transpose() {
        return Err(LtError::SchemaError("gram matrix must be square symmetric".into()));
    }
    if gram.inverse().is_none() {
        return Err(LtError::SingularGram);
    }
    // linear condition on flattened X: (X^T G + G X)_{pq} = 0
    let nn = n * n;
    let mut cond = KMat::zero(ctx, nn, nn);
    for p in 0..n {
        for q in 0..n {
            let row = p * n + q;
            for r in 0..n {
                // (X^T G)_{pq} = sum_r X_{rp} G_{rq}
                let cur = cond.at(row, r * n + p) + gram.at(r, q);
                cond.set(row, r * n + p, cur);
                // (G X)_{pq} = sum_r G_{pr} X_{rq}
                let cur = cond.at(row, r * n + q) + gram.at(p, r);
                cond.set(row, r * n + q, cur);
            }
        }
    }
    let ns = cond.nullspace();
    let basis_flat = RowSpace::from_rows(ctx, ns.rows_vec(), nn);
    let d = basis_flat.dim();
    let basis_mats: Vec<KMat> = (0..d)
        .map(|i| {
            KMat::from_fn(ctx, n, n, |r, c| basis_flat.basis_row(i)[r * n + c].clone())
        })
        .collect();
    // bracket: [X, Y] = XY - YX, expressed in the flat basis
    let mut table = vec![SparseVec::new(); d * d];
    for i in 0..d {
        for j in i + 1..d {
            let m = basis_mats[i].matmul(&basis_mats[j]).sub(&basis_mats[j].matmul(&basis_mats[i]));
            let flat: KVec = (0..nn).map(|k| m.at(k / n, k % n).clone()).collect();
            let coords = basis_flat
                .coordinates(&flat)
                .ok_or_else(|| LtError::InternalCheck("bracket left the orthogonal algebra".into()))?;
            let sp: SparseVec =
                coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            table[j * d + i] = sp.iter().map(|(k, c)| (*k, -c)).collect();
            table[i * d + j] = sp;
        }
    }
    let labels = (0..d).map(|i| format!("o{}", i)).collect();
    let mut alg = LieAlgebra::new(ctx.clone(), d, table, labels)?;
    alg.matrix_real = Some(MatrixRealization {
        n,
        gram: Some(gram.clone()),
        basis_mats,
        flat: basis_flat,
    });
    Ok(alg)
}

// ---------------------------------------------------------------------------
// subalgebras
// ---------------------------------------------------------------------------

/// A subalgebra with its own structure constants and the embedding rows.
pub struct Subalgebra {
    pub alg: LieAlgebra,
    /// Basis rows in ambient coordinates (the row space they span).
    pub rows_space: RowSpace,
}

impl Subalgebra {
    /// Map a vector in subalgebra coordinates to ambient coordinates.
    pub fn to_ambient(&self, x: &[CyclotomicNumber]) -> KVec {
        let amb = self.rows_space.ambient();
        let ctx = self.alg.ctx();
        let mut out = vec![ctx.zero(); amb];
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                for (j, b) in self.rows_space.basis_row(i).iter().enumerate() {
                    if !b.is_zero() {
                        out[j] = &out[j] + &(c * b);
                    }
                }
            }
        }
        out
    }

    pub fn from_ambient(&self, v: &[CyclotomicNumber]) -> Option<KVec> {
        self.rows_space.coordinates(v)
    }
}

/// Restrict the ambient bracket to a bracket-closed subspace.
pub fn sub_algebra(amb: &LieAlgebra, space: &RowSpace) -> Result<Subalgebra> {
    sub_algebra_with_rows(amb, space.basis().rows_vec(), "sub".into())
}

fn sub_algebra_with_rows(amb: &LieAlgebra, rows: Vec<KVec>, tag: String) -> Result<Subalgebra> {
    let ctx = amb.ctx().clone();
    let space = RowSpace::from_rows(&ctx, rows, amb.dim());
    let d = space.dim();
    let mut table = vec![SparseVec::new(); d * d];
    for i in 0..d {
        for j in i + 1..d {
            let br = amb.bracket(space.basis_row(i), space.basis_row(j));
            let coords = space.coordinates(&br).ok_or(LtError::NotClosed)?;
            let sp: SparseVec = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            table[j * d + i] = sp.iter().map(|(k, c)| (*k, -c)).collect();
            table[i * d + j] = sp;
        }
    }
    let labels = (0..d).map(|i| format!("{tag}{i}")).collect();
    let alg = LieAlgebra::new(ctx, d, table, labels)?;
    Ok(Subalgebra { alg, rows_space: space })
}

// ---------------------------------------------------------------------------
// killing form, simplicity
// ---------------------------------------------------------------------------

/// kappa(x, y) = trace(ad x ad y) on the basis, with invariance verified
/// on basis triples.
pub fn killing_form(alg: &LieAlgebra) -> KMat {
    let d = alg.dim();
    let ctx = alg.ctx().clone();
    let mut k = KMat::zero(&ctx, d, d);
    for i in 0..d {
        for j in i..d {
            let mut acc = ctx.zero();
            for l in 0..d {
                for (m, c) in alg.basis_bracket(i, l) {
                    // need coeff of b_l in [b_j, b_m]
                    for (t, c2) in alg.basis_bracket(j, *m) {
                        if *t == l {
                            acc = &acc + &(c * c2);
                        }
                    }
                }
            }
            k.set(i, j, acc.clone());
            k.set(j, i, acc);
        }
    }
    // invariance kappa([x,y],z) = kappa(x,[y,z]) on basis triples
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let mut lhs = ctx.zero();
                for (m, c) in alg.basis_bracket(i, j) {
                    lhs = &lhs + &(c * k.at(*m, l));
                }
                let mut rhs = ctx.zero();
                for (m, c) in alg.basis_bracket(j, l) {
                    rhs = &rhs + &(c * k.at(i, *m));
                }
                assert_eq!(lhs, rhs, "killing form invariance fails on ({i},{j},{l})");
            }
        }
    }
    k
}

/// Simplicity verdict with an explicit certificate.
pub struct SimplicityCert {
    pub simple: bool,
    /// A proper nonzero ideal when not simple (None for the abelian case
    /// of dimension 1 where any line is an ideal).
    pub ideal: Option<RowSpace>,
}

/// Smallest ideal containing the given vector.
pub fn ideal_closure(alg: &LieAlgebra, seed: &[CyclotomicNumber]) -> RowSpace {
    let ctx = alg.ctx().clone();
    let d = alg.dim();
    let mut space = RowSpace::empty(&ctx, d);
    let mut frontier: Vec<KVec> = vec![];
    if space.insert(seed) {
        frontier.push(seed.to_vec());
    }
    while let Some(w) = frontier.pop() {
        if space.dim() == d {
            break;
        }
        for i in 0..d {
            let img = alg.bracket(&alg.basis_vector(i), &w);
            if img.iter().any(|c| !c.is_zero()) && space.insert(&img) {
                frontier.push(img);
            }
        }
    }
    space
}

/// Nonabelian with no proper nonzero ideal.  The certificate is a genuine
/// ideal on failure; on success, the Killing radical is zero and the ideal
/// generated by every basis vector is everything.
pub fn is_simple(alg: &LieAlgebra) -> SimplicityCert {
    let d = alg.dim();
    if alg.is_abelian() {
        let ideal = if d > 1 {
            Some(RowSpace::from_rows(alg.ctx(), vec![alg.basis_vector(0)], d))
        } else {
            Some(RowSpace::from_rows(alg.ctx(), vec![alg.basis_vector(0)], d))
        };
        return SimplicityCert { simple: false, ideal };
    }
    // derived algebra
    let mut derived = RowSpace::empty(alg.ctx(), d);
    for i in 0..d {
        for j in i + 1..d {
            let mut v = alg.zero_vec();
            for (k, c) in alg.basis_bracket(i, j) {
                v[*k] = c.clone();
            }
            derived.insert(&v);
        }
    }
    if derived.dim() < d {
        return SimplicityCert { simple: false, ideal: Some(derived) };
    }
    // killing radical is an ideal
    let k = killing_form(alg);
    let rad = k.nullspace();
    if rad.rows > 0 {
        return SimplicityCert {
            simple: false,
            ideal: Some(RowSpace::from_rows(alg.ctx(), rad.rows_vec(), d)),
        };
    }
    for i in 0..d {
        let cl = ideal_closure(alg, &alg.basis_vector(i));
        if cl.dim() < d {
            return SimplicityCert { simple: false, ideal: Some(cl) };
        }
    }
    SimplicityCert { simple: true, ideal: None }
}

// ---------------------------------------------------------------------------
// Cartan subalgebras and root space decompositions
// ---------------------------------------------------------------------------

/// A weight space of an ad-diagonalizable subalgebra action.
#[derive(Clone)]
pub struct WeightSpace {
    /// Values on the rows of the acting subspace basis, in row order.
    pub values: KVec,
    pub space: RowSpace,
}

/// Joint eigenspace decomposition data with the identified root system.
pub struct RootDatum {
    pub h: Subspace,
    pub weights: Vec<WeightSpace>,
    pub zero_index: usize,
    pub identified: Option<Identification>,
    pub ident_error: Option<String>,
}

impl RootDatum {
    pub fn weight_index(&self, values: &[CyclotomicNumber]) -> Option<usize> {
        self.weights.iter().position(|w| w.values == values)
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = (usize, &WeightSpace)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.values.iter().any(|c| !c.is_zero()))
    }

    /// Identified abstract system; errors if identification failed.
    pub fn system(&self) -> Result<&Identification> {
        self.identified.as_ref().ok_or_else(|| {
            LtError::NotARootSystem(
                self.ident_error.clone().unwrap_or_else(|| "identification failed".into()),
            )
        })
    }

    /// Base coordinates of weight `i` in the identified system.
    pub fn coords_of(&self, i: usize) -> Result<&Vec<i64>> {
        Ok(&self.system()?.coords[i])
    }
}

/// Joint eigenspace decomposition of `start` under ad of the rows of `h`.
/// `h` must be abelian and stabilize `start`.
pub fn decompose_under(
    alg: &LieAlgebra,
    h: &RowSpace,
    start: &RowSpace,
) -> Result<Vec<WeightSpace>> {
    let ctx = alg.ctx().clone();
    for i in 0..h.dim() {
        for j in i + 1..h.dim() {
            let br = alg.bracket(h.basis_row(i), h.basis_row(j));
            if br.iter().any(|c| !c.is_zero()) {
                return Err(LtError::NonCartanInput);
            }
        }
    }
    let mut spaces: Vec<(KVec, RowSpace)> = vec![(vec![], start.clone())];
    for hi in 0..h.dim() {
        let ad = alg.ad(h.basis_row(hi));
        let mut next: Vec<(KVec, RowSpace)> = vec![];
        for (vals, w) in spaces {
            // restricted operator in the coordinates of w
            let k = w.dim();
            if k == 0 {
                continue;
            }
            let mut t = KMat::zero(&ctx, k, k);
            for c in 0..k {
                let img = ad.apply(w.basis_row(c));
                let coords = w.coordinates(&img).ok_or_else(|| {
                    LtError::NotAdDiagonalizable("action does not stabilize the subspace".into())
                })?;
                for r in 0..k {
                    t.set(r, c, coords[r].clone());
                }
            }
            let cp = t.char_poly();
            let roots = cp.split_into_linear_factors().map_err(|e| {
                LtError::NotAdDiagonalizable(format!("eigenvalues do not split: {e}"))
            })?;
            let mut total = 0;
            for (ev, _) in roots {
                let es = crate::linalg::eigenspace(&t, &ev)?;
                if es.dim() == 0 {
                    continue;
                }
                total += es.dim();
                // map back to ambient coordinates
                let rows: Vec<KVec> = (0..es.dim())
                    .map(|r| {
                        let coef = es.basis_row(r);
                        let mut v = vec![ctx.zero(); w.ambient()];
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
                let mut vals2 = vals.clone();
                vals2.push(ev);
                next.push((vals2, RowSpace::from_rows(&ctx, rows, w.ambient())));
            }
            if total != k {
                return Err(LtError::NotAdDiagonalizable(format!(
                    "eigenspaces fill {total} of {k} dimensions"
                )));
            }
        }
        spaces = next;
    }
    let mut out: Vec<WeightSpace> =
        spaces.into_iter().map(|(values, space)| WeightSpace { values, space }).collect();
    out.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(out)
}

/// Rational coordinates for a family of field-valued weight vectors:
/// pick a maximal independent subset as a frame and demand rational
/// coefficients against it.
fn rationalize_weights(ctx: &Arc<FieldContext>, weights: &[KVec]) -> Result<Vec<Vec<Rat>>> {
    let len = weights.first().map_or(0, |w| w.len());
    let mut frame: Vec<KVec> = vec![];
    let mut probe = RowSpace::empty(ctx, len);
    for w in weights {
        if probe.insert(w) {
            frame.push(w.clone());
        }
    }
    if frame.is_empty() {
        return Ok(weights.iter().map(|_| vec![]).collect());
    }
    let fm = KMat::from_rows(ctx, frame.clone());
    let mut out = vec![];
    for w in weights {
        let sol = fm
            .solve_left(w)
            .ok_or_else(|| LtError::InternalCheck("weight outside its own frame".into()))?;
        let mut rv = vec![];
        for c in sol {
            match c.as_rational() {
                Some(r) => rv.push(r),
                None => {
                    return Err(LtError::NonSplitWeights(
                        "weights are not rationally structured".into(),
                    ))
                }
            }
        }
        out.push(rv);
    }
    Ok(out)
}

/// Root space decomposition of `alg` relative to the abelian,
/// ad-diagonalizable subspace `h`, with bracket compatibility verified and
/// the weight set identified as a root system when possible.
pub fn root_space_decomposition(alg: &LieAlgebra, h: &RowSpace) -> Result<RootDatum> {
    let ctx = alg.ctx().clone();
    let full = RowSpace::full(&ctx, alg.dim());
    let weights = decompose_under(alg, h, &full)?;
    // dimensions must fill the algebra
    let total: usize = weights.iter().map(|w| w.space.dim()).sum();
    if total != alg.dim() {
        return Err(LtError::NotAdDiagonalizable("weight spaces do not fill".into()));
    }
    let zero_index = weights
        .iter()
        .position(|w| w.values.iter().all(|c| c.is_zero()))
        .ok_or_else(|| LtError::InternalCheck("no zero weight space".into()))?;
    // bracket compatibility [s_a, s_b] in s_{a+b}
    for a in &weights {
        for b in &weights {
            let sum: KVec = a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect();
            let target = weights.iter().find(|w| w.values == sum);
            for i in 0..a.space.dim() {
                for j in 0..b.space.dim() {
                    let br = alg.bracket(a.space.basis_row(i), b.space.basis_row(j));
                    if br.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    match target {
                        Some(t) => {
                            if !t.space.contains(&br) {
                                return Err(LtError::InternalCheck(
                                    "bracket escapes the weight grading".into(),
                                ));
                            }
                        }
                        None => {
                            return Err(LtError::InternalCheck(
                                "bracket lands outside every weight".into(),
                            ))
                        }
                    }
                }
            }
        }
    }
    let (identified, ident_error) = {
        let vals: Vec<KVec> = weights.iter().map(|w| w.values.clone()).collect();
        match rationalize_weights(&ctx, &vals)
            .and_then(|rw| identify_rootsystem(&rw))
        {
            Ok(id) => (Some(id), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    Ok(RootDatum { h: h.clone(), weights, zero_index, identified, ident_error })
}

/// Deterministic regular-element search for a splitting Cartan subalgebra.
/// Hint elements are tried first; bounded small-integer combinations after.
pub fn cartan_subalgebra(alg: &LieAlgebra) -> Result<Subspace> {
    cartan_subalgebra_with_hints(alg, &[])
}

/// Candidate regular elements drawn from a toral subspace: several
/// deterministic weightings of its basis rows.
pub fn cartan_hint_elements(ctx: &Arc<FieldContext>, space: &RowSpace) -> Vec<KVec> {
    let k = space.dim();
    let amb = space.ambient();
    let mut out = vec![];
    let mut weighted = |wf: &dyn Fn(usize) -> i64| {
        let mut v = vec![ctx.zero(); amb];
        for i in 0..k {
            let w = ctx.from_int(wf(i));
            for (x, b) in v.iter_mut().zip(space.basis_row(i)) {
                *x = &*x + &(&w * b);
            }
        }
        out.push(v);
    };
    weighted(&|i| (i as i64) + 1);
    weighted(&|i| ((i as i64) + 1) * ((i as i64) + 1));
    weighted(&|i| 3i64.pow((i as u32) % 12));
    weighted(&|i| 2 * (i as i64) + 1);
    weighted(&|i| 5i64.pow((i as u32) % 8) % 97);
    for i in 0..k {
        out.push(space.basis_row(i).to_vec());
    }
    out
}

pub fn cartan_subalgebra_with_hints(alg: &LieAlgebra, hints: &[KVec]) -> Result<Subspace> {
    let ctx = alg.ctx().clone();
    let d = alg.dim();
    if alg.is_abelian() {
        return Ok(RowSpace::full(&ctx, d));
    }
    let mut candidates: Vec<KVec> = hints.to_vec();
    for i in 0..d {
        candidates.push(alg.basis_vector(i));
    }
    for k in 1..d {
        let mut v = alg.zero_vec();
        for (i, x) in v.iter_mut().enumerate().take(k + 1) {
            let _ = i;
            *x = ctx.one();
        }
        candidates.push(v);
    }
    for (a, b) in [(3i64, 1i64), (5, 2), (7, 3), (5, 1), (3, 2)] {
        let v: KVec = (0..d).map(|i| ctx.from_int((i as i64 * b).rem_euclid(a) + 1)).collect();
        candidates.push(v);
    }
    for x in candidates {
        if x.iter().all(|c| c.is_zero()) {
            continue;
        }
        if let Some(h) = try_cartan_candidate(alg, &x) {
            return Ok(h);
        }
    }
    Err(LtError::NoRegularElementFound)
}

fn is_abelian_space(alg: &LieAlgebra, w: &RowSpace) -> bool {
    for i in 0..w.dim() {
        for j in i + 1..w.dim() {
            let br = alg.bracket(w.basis_row(i), w.basis_row(j));
            if br.iter().any(|c| !c.is_zero()) {
                return false;
            }
        }
    }
    true
}

fn try_cartan_candidate(alg: &LieAlgebra, x: &[CyclotomicNumber]) -> Option<Subspace> {
    let ctx = alg.ctx().clone();
    let d = alg.dim();
    let ad = alg.ad(x);
    // Fitting null component by preimage iteration: K_{i+1} = ad^{-1}(K_i).
    // This keeps entries bounded, unlike iterating matrix powers.
    let mut ker = RowSpace::from_rows(&ctx, ad.nullspace().rows_vec(), d);
    if ker.dim() == 0 || !is_abelian_space(alg, &ker) {
        return None; // the Fitting null contains ker(ad x)
    }
    loop {
        let reduced_cols = KMat::from_fn(&ctx, d, d, |_, _| ctx.zero());
        let mut m = reduced_cols;
        for j in 0..d {
            let col: KVec = (0..d).map(|i| ad.at(i, j).clone()).collect();
            let red = ker.reduce(&col);
            for i in 0..d {
                m.set(i, j, red[i].clone());
            }
        }
        let k2 = RowSpace::from_rows(&ctx, m.nullspace().rows_vec(), d);
        if k2.dim() == ker.dim() {
            break;
        }
        ker = k2;
        if ker.dim() == d || !is_abelian_space(alg, &ker) {
            return None;
        }
    }
    if ker.dim() == d {
        return None;
    }
    // fully splitting decomposition with zero component equal to the candidate
    let full = RowSpace::full(&ctx, d);
    let Ok(ws) = decompose_under(alg, &ker, &full) else {
        return None;
    };
    let total: usize = ws.iter().map(|w| w.space.dim()).sum();
    if total != d {
        return None;
    }
    let zero = ws.iter().find(|w| w.values.iter().all(|c| c.is_zero()))?;
    if zero.space.dim() != ker.dim() {
        return None;
    }
    Some(ker)
}

// ---------------------------------------------------------------------------
// module analysis
// ---------------------------------------------------------------------------

/// A split simple subalgebra prepared for highest-weight analysis of
/// ambient subspaces: root datum, identified base, raising/lowering
/// vectors in ambient coordinates, and the distinguished weight values.
pub struct SplitSimpleSubalgebra {
    pub sub: Subalgebra,
    pub h_ambient: RowSpace,
    pub datum: RootDatum,
    /// e_i / f_i in ambient coordinates per identified base root.
    pub raising: Vec<KVec>,
    pub lowering: Vec<KVec>,
    pub theta_values: KVec,
    pub theta_sh_values: KVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SummandId {
    Adjoint,
    LittleAdjoint,
    Symmetric,
    Trivial,
    Other,
}

impl std::fmt::Display for SummandId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SummandId::Adjoint => "adjoint",
            SummandId::LittleAdjoint => "little_adjoint",
            SummandId::Symmetric => "symmetric",
            SummandId::Trivial => "trivial",
            SummandId::Other => "other",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub highest_weight: KVec,
    pub dim: usize,
    pub identity: SummandId,
}

/// Decomposition report for a stable subspace as a module.
#[derive(Clone, Debug)]
pub struct ModuleReport {
    pub summands: Vec<Summand>,
    pub multiplicity_free_nonzero: bool,
    pub trivial_dim: usize,
    /// V = trivial part + at most one condition-(M) summand.
    pub a2_shape: bool,
}

/// Prepare a split simple subalgebra given its space and a Cartan inside it
/// (both in ambient coordinates).
pub fn split_simple_subalgebra(
    amb: &LieAlgebra,
    g_space: &RowSpace,
    h_ambient: &RowSpace,
) -> Result<SplitSimpleSubalgebra> {
    let sub = sub_algebra(amb, g_space)?;
    let h_sub_rows: Vec<KVec> = (0..h_ambient.dim())
        .map(|i| {
            sub.from_ambient(h_ambient.basis_row(i))
                .ok_or_else(|| LtError::InternalCheck("cartan not inside subalgebra".into()))
        })
        .collect::<Result<_>>()?;
    let h_sub = RowSpace::from_rows(amb.ctx(), h_sub_rows, sub.alg.dim());
    let datum = root_space_decomposition(&sub.alg, &h_sub)?;
    let ident = datum.system()?;
    let rank = ident.system.rank;
    let mut raising = vec![];
    let mut lowering = vec![];
    for i in 0..rank {
        let mut unit = vec![0i64; rank];
        unit[i] = 1;
        let widx = datum
            .identified
            .as_ref()
            .unwrap()
            .coords
            .iter()
            .position(|c| *c == unit)
            .ok_or_else(|| LtError::InternalCheck("base root has no weight space".into()))?;
        let wsp = &datum.weights[widx];
        if wsp.space.dim() != 1 {
            return Err(LtError::InternalCheck("base root space is not one dimensional".into()));
        }
        raising.push(sub.to_ambient(wsp.space.basis_row(0)));
        let neg: Vec<i64> = unit.iter().map(|&c| -c).collect();
        let nidx = datum
            .identified
            .as_ref()
            .unwrap()
            .coords
            .iter()
            .position(|c| *c == neg)
            .ok_or_else(|| LtError::InternalCheck("negative base root missing".into()))?;
        lowering.push(sub.to_ambient(datum.weights[nidx].space.basis_row(0)));
    }
    let find_values = |target: &Vec<i64>| -> Result<KVec> {
        let idx = datum
            .identified
            .as_ref()
            .unwrap()
            .coords
            .iter()
            .position(|c| c == target)
            .ok_or_else(|| LtError::InternalCheck("distinguished root missing".into()))?;
        Ok(datum.weights[idx].values.clone())
    };
    let theta_values = find_values(&ident.system.theta.clone())?;
    let theta_sh_values = find_values(&ident.system.theta_sh.clone())?;
    Ok(SplitSimpleSubalgebra {
        sub,
        h_ambient: h_ambient.clone(),
        datum,
        raising,
        lowering,
        theta_values,
        theta_sh_values,
    })
}

/// Decompose a stable subspace into irreducible summands by highest-weight
/// vectors and identify each against the distinguished modules.
pub fn analyze_module(
    amb: &LieAlgebra,
    g: &SplitSimpleSubalgebra,
    v_space: &RowSpace,
) -> Result<ModuleReport> {
    let ctx = amb.ctx().clone();
    // stability
    for i in 0..g.sub.rows_space.dim() {
        for j in 0..v_space.dim() {
            let br = amb.bracket(g.sub.rows_space.basis_row(i), v_space.basis_row(j));
            if br.iter().any(|c| !c.is_zero()) && !v_space.contains(&br) {
                return Err(LtError::NotStable);
            }
        }
    }
    // weight decomposition of V under h
    let vweights = decompose_under(amb, &g.h_ambient, v_space)
        .map_err(|e| LtError::NonSplitWeights(e.to_string()))?;
    let multiplicity_free_nonzero = vweights
        .iter()
        .filter(|w| w.values.iter().any(|c| !c.is_zero()))
        .all(|w| w.space.dim() == 1);

    // highest weight vectors per weight space
    let mut summands: Vec<Summand> = vec![];
    let mut covered = 0usize;
    for w in &vweights {
        let k = w.space.dim();
        // kernel of stacked raising actions on this weight space
        let cols = g.raising.len() * amb.dim();
        let mut m = KMat::zero(&ctx, k, cols.max(1));
        for r in 0..k {
            for (ei, e) in g.raising.iter().enumerate() {
                let img = amb.bracket(e, w.space.basis_row(r));
                for (c, val) in img.into_iter().enumerate() {
                    m.set(r, ei * amb.dim() + c, val);
                }
            }
        }
        // rows x with x * m = 0
        let hw = m.transpose().nullspace();
        for r in 0..hw.rows {
            let coef = hw.row(r);
            let mut v = vec![ctx.zero(); v_space.ambient()];
            for (ci, co) in coef.iter().enumerate() {
                if !co.is_zero() {
                    for (x, b) in v.iter_mut().zip(w.space.basis_row(ci)) {
                        *x = &*x + &(co * b);
                    }
                }
            }
            // summand: closure under lowering operators
            let mut span = RowSpace::empty(&ctx, v_space.ambient());
            let mut frontier = vec![v.clone()];
            span.insert(&v);
            while let Some(u) = frontier.pop() {
                for f in &g.lowering {
                    let img = amb.bracket(f, &u);
                    if img.iter().any(|c| !c.is_zero()) && span.insert(&img) {
                        frontier.push(img);
                    }
                }
            }
            covered += span.dim();
            let zero = w.values.iter().all(|c| c.is_zero());
            let two_theta_sh: KVec =
                g.theta_sh_values.iter().map(|c| c + c).collect();
            let identity = if zero && span.dim() == 1 {
                SummandId::Trivial
            } else if w.values == g.theta_values {
                SummandId::Adjoint
            } else if w.values == g.theta_sh_values {
                SummandId::LittleAdjoint
            } else if w.values == two_theta_sh {
                SummandId::Symmetric
            } else {
                SummandId::Other
            };
            summands.push(Summand { highest_weight: w.values.clone(), dim: span.dim(), identity });
        }
    }
    if covered != v_space.dim() {
        return Err(LtError::InternalCheck(format!(
            "summands cover {covered} of {} dimensions",
            v_space.dim()
        )));
    }
    // dimension cross-checks against Weyl-orbit weight counts
    let ident = g.datum.system()?;
    let sys = &ident.system;
    let variants = derive_variants(sys);
    for s in &summands {
        let expected = match s.identity {
            SummandId::Adjoint => Some(g.sub.alg.dim()),
            SummandId::LittleAdjoint => {
                let shorts = sys.short_roots().len();
                let short_simples = (0..sys.rank)
                    .filter(|&i| {
                        let mut u = vec![0i64; sys.rank];
                        u[i] = 1;
                        sys.is_short(&u)
                    })
                    .count();
                Some(shorts + short_simples)
            }
            SummandId::Symmetric => Some(variants.en.num_nonzero() + sys.rank),
            SummandId::Trivial => Some(1),
            SummandId::Other => None,
        };
        if let Some(exp) = expected {
            if exp != s.dim {
                return Err(LtError::InternalCheck(format!(
                    "summand {} has dimension {} but {} expected",
                    s.identity, s.dim, exp
                )));
            }
        }
    }
    let trivial_dim = summands.iter().filter(|s| s.identity == SummandId::Trivial).count();
    let nontrivial: Vec<&Summand> =
        summands.iter().filter(|s| s.identity != SummandId::Trivial).collect();
    let a2_shape = nontrivial.len() <= 1
        && nontrivial.iter().all(|s| {
            matches!(s.identity, SummandId::Adjoint | SummandId::LittleAdjoint | SummandId::Symmetric)
        });
    summands.sort_by(|a, b| a.highest_weight.cmp(&b.highest_weight).then(a.dim.cmp(&b.dim)));
    Ok(ModuleReport { summands, multiplicity_free_nonzero, trivial_dim, a2_shape })
}
