//! Finite irreducible root systems including 0, their enlarged/indivisible
//! variants, type identification from raw weight vectors, and Weyl orbits.
//!
//! Roots are integer coordinate vectors in a fixed standard base (Bourbaki
//! ordering); the pairing comes from the symmetrized Cartan matrix, so no
//! inner-product normalization ever enters.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{LtError, Result};
use crate::exactfield::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::BC => rank >= 1,
        };
        if ok {
            Ok(RootSystemType { family, rank })
        } else {
            Err(LtError::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.family != Family::BC
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (fam, digits) = if let Some(rest) = s.strip_prefix("BC") {
            (Family::BC, rest)
        } else {
            let mut chars = s.chars();
            let f = match chars.next() {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(LtError::InvalidType(s.to_string())),
            };
            (f, chars.as_str())
        };
        let rank: usize =
            digits.parse().map_err(|_| LtError::InvalidType(s.to_string()))?;
        RootSystemType::new(fam, rank)
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        };
        write!(f, "{}{}", fam, self.rank)
    }
}

/// Cartan matrix c[i][j] = <alpha_j, alpha_i^vee> in the Bourbaki base
/// order, for the reduced type underlying `t` (BC uses the B/A1 base).
pub fn cartan_matrix(t: RootSystemType) -> Vec<Vec<i64>> {
    let l = t.rank;
    let mut c = vec![vec![0i64; l]; l];
    for i in 0..l {
        c[i][i] = 2;
    }
    let mut chain = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t.family {
        Family::A => {
            for i in 0..l - 1 {
                chain(i, i + 1);
            }
        }
        Family::B | Family::BC => {
            // BC_l shares the B_l base; BC_1 uses the A_1 base.
            for i in 0..l.saturating_sub(1) {
                chain(i, i + 1);
            }
            if l >= 2 {
                // alpha_l short: <alpha_{l-1}, alpha_l^vee> = -2
                c[l - 1][l - 2] = -2;
            }
        }
        Family::C => {
            for i in 0..l - 1 {
                chain(i, i + 1);
            }
            // alpha_l long: <alpha_l, alpha_{l-1}^vee> = -2
            c[l - 2][l - 1] = -2;
        }
        Family::D => {
            for i in 0..l - 2 {
                chain(i, i + 1);
            }
            chain(l - 3, l - 1);
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4.
            chain(0, 2);
            chain(2, 3);
            chain(3, 4);
            chain(4, 5);
            if l >= 7 {
                chain(5, 6);
            }
            if l >= 8 {
                chain(6, 7);
            }
            chain(1, 3);
        }
        Family::F => {
            chain(0, 1);
            chain(1, 2);
            chain(2, 3);
            // alpha_2 long, alpha_3 short: <alpha_2, alpha_3^vee> = -2
            c[2][1] = -2;
        }
        Family::G => {
            // alpha_1 short, alpha_2 long: <alpha_2, alpha_1^vee> = -3
            c[0][1] = -3;
            c[1][0] = -1;
        }
    }
    c
}

/// Symmetrizer d with d_i * c[i][j] = d_j * c[j][i]; d_i = (alpha_i,alpha_i)/2
/// up to overall scale, normalized to the smallest positive integers.
fn symmetrizer(c: &[Vec<i64>]) -> Vec<i64> {
    let l = c.len();
    let mut d: Vec<Option<Rat>> = vec![None; l];
    d[0] = Some(Rat::from_integer(1.into()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..l {
            if i != j && c[i][j] != 0 && d[j].is_none() {
                // d_j = d_i * c[i][j] / c[j][i]
                let v = d[i].clone().unwrap()
                    * Rat::new(c[i][j].into(), c[j][i].into());
                d[j] = Some(v);
                queue.push_back(j);
            }
        }
    }
    let vals: Vec<Rat> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let lcm_den = vals
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, v| num_integer::lcm(acc, v.denom().clone()));
    let ints: Vec<num_bigint::BigInt> =
        vals.iter().map(|v| v.numer() * (&lcm_den / v.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, v| num_integer::gcd(acc, v.clone()));
    ints.iter().map(|v| i64::try_from(v / &g).unwrap()).collect()
}

/// A finite irreducible root system including 0, realized as integer
/// vectors in the coordinates of its standard base.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub rtype: RootSystemType,
    pub rank: usize,
    /// All roots including the zero vector, sorted lexicographically.
    pub roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Gram matrix (alpha_i, alpha_j) on the base, integer normalized.
    pub gram: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub theta_sh: Vec<i64>,
}

impl RootSystem {
    pub fn zero_root(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().any(|&c| c != 0))
    }

    pub fn num_nonzero(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a[i] * self.gram[i][j] * b[j];
            }
        }
        acc
    }

    pub fn len_sq(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    /// <a, b^vee> for nonzero b.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let bb = self.len_sq(b);
        assert!(bb != 0, "pairing with the zero root");
        let num = 2 * self.inner(a, b);
        assert_eq!(num % bb, 0, "non-integral pairing");
        num / bb
    }

    pub fn reflect(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let k = self.pairing(a, b);
        a.iter().zip(b.iter()).map(|(&x, &y)| x - k * y).collect()
    }

    /// Short roots: nonzero roots of minimal length.
    pub fn short_roots(&self) -> Vec<Vec<i64>> {
        let min = self.nonzero().map(|r| self.len_sq(r)).min().unwrap();
        self.nonzero().filter(|r| self.len_sq(r) == min).cloned().collect()
    }

    pub fn is_short(&self, a: &[i64]) -> bool {
        let min = self.nonzero().map(|r| self.len_sq(r)).min().unwrap();
        self.len_sq(a) == min
    }

    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.nonzero().filter(|r| r.iter().sum::<i64>() > 0).cloned().collect()
    }

    pub fn height(&self, a: &[i64]) -> i64 {
        a.iter().sum()
    }

    /// The base as coordinate unit vectors.
    pub fn base(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(j == i)).collect())
            .collect()
    }

    /// Indivisible roots (zero included).
    pub fn indivisible(&self) -> Vec<Vec<i64>> {
        self.roots
            .iter()
            .filter(|r| {
                if r.iter().all(|&c| c == 0) {
                    return true;
                }
                if r.iter().any(|&c| c % 2 != 0) {
                    return true;
                }
                let half: Vec<i64> = r.iter().map(|&c| c / 2).collect();
                !self.contains(&half)
            })
            .cloned()
            .collect()
    }

    /// Orbit of a root under the full reflection group.
    pub fn weyl_orbit(&self, a: &[i64]) -> Result<Vec<Vec<i64>>> {
        if !self.contains(a) {
            return Err(LtError::RootNotInSystem);
        }
        if a.iter().all(|&c| c == 0) {
            return Ok(vec![a.to_vec()]);
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::from([a.to_vec()]);
        seen.insert(a.to_vec());
        while let Some(cur) = queue.pop_front() {
            for b in self.nonzero() {
                let img = self.reflect(&cur, b);
                if !seen.contains(&img) {
                    seen.insert(img.clone());
                    queue.push_back(img);
                }
            }
        }
        let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

/// Enumerate the full root system of an admissible type.
pub fn build_root_system(t: RootSystemType) -> RootSystem {
    if t.family == Family::BC {
        return build_bc(t.rank);
    }
    // B2 is canonical for the rank-2 double-bond diagram; C and D entries
    // below the admissible ranks never reach here via `RootSystemType::new`.
    let c = cartan_matrix(t);
    let d = symmetrizer(&c);
    let l = t.rank;
    let gram: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| c[i][j] * d[i]).collect()).collect();
    // closure of the base under simple reflections
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..l {
        let mut v = vec![0i64; l];
        v[i] = 1;
        set.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..l {
            // w_i(v) = v - <v, alpha_i^vee> alpha_i; <v, alpha_i^vee> = sum_j v_j c[i][j]
            let k: i64 = (0..l).map(|j| v[j] * c[i][j]).sum();
            let mut img = v.clone();
            img[i] -= k;
            if set.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    set.insert(vec![0i64; l]);
    finish_system(t, set, gram)
}

fn build_bc(rank: usize) -> RootSystem {
    let reduced = if rank == 1 {
        build_root_system(RootSystemType::new(Family::A, 1).unwrap())
    } else {
        build_root_system(RootSystemType::new(Family::B, rank).unwrap())
    };
    let mut set: HashSet<Vec<i64>> = reduced.roots.iter().cloned().collect();
    for s in reduced.short_roots() {
        set.insert(s.iter().map(|&c| 2 * c).collect());
    }
    let t = RootSystemType::new(Family::BC, rank).unwrap();
    finish_system(t, set, reduced.gram.clone())
}

fn finish_system(t: RootSystemType, set: HashSet<Vec<i64>>, gram: Vec<Vec<i64>>) -> RootSystem {
    let mut roots: Vec<Vec<i64>> = set.into_iter().collect();
    roots.sort();
    let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut sys = RootSystem {
        rtype: t,
        rank: t.rank,
        roots,
        index,
        gram,
        theta: vec![],
        theta_sh: vec![],
    };
    let positives = sys.positive_roots();
    sys.theta = positives.iter().max_by_key(|r| (sys.height(r), (*r).clone())).unwrap().clone();
    let min = positives.iter().map(|r| sys.len_sq(r)).min().unwrap();
    sys.theta_sh = positives
        .iter()
        .filter(|r| sys.len_sq(r) == min)
        .max_by_key(|r| (sys.height(r), (*r).clone()))
        .unwrap()
        .clone();
    sys
}

/// The derived data of Notation-style enlargement and reduction.
pub struct Variants {
    pub ind: RootSystem,
    pub en: RootSystem,
    pub short: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub theta_sh: Vec<i64>,
}

/// Indivisible and enlarged systems share the coordinates of the input base.
pub fn derive_variants(sys: &RootSystem) -> Variants {
    let t = sys.rtype;
    let ind = match t.family {
        Family::BC => {
            if t.rank == 1 {
                build_root_system(RootSystemType::new(Family::A, 1).unwrap())
            } else {
                build_root_system(RootSystemType::new(Family::B, t.rank).unwrap())
            }
        }
        _ => sys.clone(),
    };
    let en = match t.family {
        Family::B => build_root_system(RootSystemType::new(Family::BC, t.rank).unwrap()),
        Family::A if t.rank == 1 => build_root_system(RootSystemType::new(Family::BC, 1).unwrap()),
        Family::BC => sys.clone(),
        _ => sys.clone(),
    };
    Variants {
        ind,
        en,
        short: sys.short_roots(),
        theta: sys.theta.clone(),
        theta_sh: sys.theta_sh.clone(),
    }
}

/// Result of identifying a raw weight set as an abstract root system:
/// the canonical system plus base coordinates for every input vector.
pub struct Identification {
    pub system: RootSystem,
    /// coords[i] = coordinates of input vector i in the canonical base.
    pub coords: Vec<Vec<i64>>,
}

/// Identify a finite irreducible root system (0 allowed in the input) given
/// as rational coordinate vectors, via strings and Cartan-matrix matching.
pub fn identify_rootsystem(vectors: &[Vec<Rat>]) -> Result<Identification> {
    let dim = vectors.first().map_or(0, |v| v.len());
    let mut nonzero: Vec<Vec<Rat>> = vec![];
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    for v in vectors {
        if v.len() != dim {
            return Err(LtError::NotARootSystem("mixed dimensions".into()));
        }
        if v.iter().any(|c| !c.is_zero()) && seen.insert(v.clone()) {
            nonzero.push(v.clone());
        }
    }
    if nonzero.is_empty() {
        return Err(LtError::NotARootSystem("no nonzero roots".into()));
    }
    let set: HashSet<Vec<Rat>> = nonzero.iter().cloned().collect();

    // synthetic pairing via strings within the nonzero roots
    let pairing = |a: &Vec<Rat>, b: &Vec<Rat>| -> Result<i64> {
        if a == b {
            return Ok(2);
        }
        let neg_b: Vec<Rat> = b.iter().map(|c| -c).collect();
        if *a == neg_b {
            return Ok(-2);
        }
        let mut p = 0i64;
        let mut cur: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        while set.contains(&cur) {
            p += 1;
            if p > 8 {
                return Err(LtError::NotARootSystem("unbounded root string".into()));
            }
            cur = cur.iter().zip(b).map(|(x, y)| x - y).collect();
        }
        let mut q = 0i64;
        let mut cur: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        while set.contains(&cur) {
            q += 1;
            if q > 8 {
                return Err(LtError::NotARootSystem("unbounded root string".into()));
            }
            cur = cur.iter().zip(b).map(|(x, y)| x + y).collect();
        }
        Ok(p - q)
    };

    // reflection stability
    for a in &nonzero {
        for b in &nonzero {
            let k = pairing(a, b)?;
            let img: Vec<Rat> =
                a.iter().zip(b).map(|(x, y)| x - Rat::from_integer(k.into()) * y).collect();
            if !set.contains(&img) {
                return Err(LtError::NotARootSystem(format!(
                    "reflection of a root left the set (pairing {k})"
                )));
            }
        }
    }

    // positives under a deterministic generic functional
    let positives: Vec<Vec<Rat>> = {
        let mut chosen: Option<Vec<Vec<Rat>>> = None;
        't: for t in 1i64..200 {
            let f: Vec<Rat> = (0..dim)
                .scan(Rat::from_integer(1.into()), |acc, _| {
                    let v = acc.clone();
                    *acc = acc.clone() * Rat::from_integer(t.into());
                    Some(v)
                })
                .collect();
            let mut pos = vec![];
            for r in &nonzero {
                let val: Rat = r.iter().zip(&f).map(|(a, b)| a * b).sum();
                if val.is_zero() {
                    continue 't;
                }
                if val.is_positive() {
                    pos.push(r.clone());
                }
            }
            chosen = Some(pos);
            break;
        }
        chosen.ok_or_else(|| LtError::NotARootSystem("no generic functional found".into()))?
    };

    // base: positive roots that are not sums of two positives
    let pos_set: HashSet<Vec<Rat>> = positives.iter().cloned().collect();
    let mut base: Vec<Vec<Rat>> = positives
        .iter()
        .filter(|g| {
            !positives.iter().any(|a| {
                let rest: Vec<Rat> = g.iter().zip(a).map(|(x, y)| x - y).collect();
                pos_set.contains(&rest)
            })
        })
        .cloned()
        .collect();
    base.sort();

    let rank = base.len();
    let not_reduced = nonzero.iter().any(|r| {
        let dbl: Vec<Rat> = r.iter().map(|c| c + c).collect();
        set.contains(&dbl)
    });

    // Cartan matrix of the found base
    let mut cm = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            cm[i][j] = pairing(&base[j], &base[i])?; // c[i][j] = <alpha_j, alpha_i^vee>
        }
    }
    for i in 0..rank {
        if cm[i][i] != 2 {
            return Err(LtError::NotARootSystem("base pairing diagonal is not 2".into()));
        }
    }

    // irreducibility via base connectivity
    {
        let mut seen = vec![false; rank];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..rank {
                if !seen[j] && cm[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(LtError::NotIrreducible);
        }
    }

    // candidate canonical types of this rank
    let candidates: Vec<RootSystemType> = if not_reduced {
        vec![RootSystemType::new(Family::BC, rank)?]
    } else {
        let mut c = vec![];
        for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            if let Ok(t) = RootSystemType::new(fam, rank) {
                c.push(t);
            }
        }
        c
    };

    for t in candidates {
        let canon_cm = cartan_matrix(t);
        // for BC the base Cartan matrix is the one of the reduced base
        let Some(perm) = match_permutation(&cm, &canon_cm) else {
            continue;
        };
        // perm[k] = index into `base` playing canonical simple root k
        let canon = build_root_system(t);
        // express every input vector in the canonical base
        let mut coords_out = Vec::with_capacity(vectors.len());
        let mut ok = true;
        let mut covered: HashSet<Vec<i64>> = HashSet::new();
        for v in vectors {
            match base_coordinates(v, &base, &perm) {
                Some(c) if canon.contains(&c) => {
                    covered.insert(c.clone());
                    coords_out.push(c);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        // every dedup'd input root covered a canonical root; demand the
        // converse so the input is the whole system
        let distinct_inputs = seen.len() + 1; // nonzero + zero
        if covered.len() < distinct_inputs.min(canon.roots.len()) {
            continue;
        }
        if nonzero.len() != canon.num_nonzero() {
            return Err(LtError::NotARootSystem(format!(
                "root count {} does not match {} ({} nonzero)",
                nonzero.len(),
                t,
                canon.num_nonzero()
            )));
        }
        return Ok(Identification { system: canon, coords: coords_out });
    }
    Err(LtError::NotARootSystem("no catalog type matches".into()))
}

/// Thin wrapper: just the type.
pub fn identify_type(vectors: &[Vec<Rat>]) -> Result<RootSystemType> {
    Ok(identify_rootsystem(vectors)?.system.rtype)
}

/// Find perm with canon[k][l] = found[perm[k]][perm[l]].
fn match_permutation(found: &[Vec<i64>], canon: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = found.len();
    if canon.len() != n {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    // deterministic first match in lexicographic permutation order
    fn rec(
        perm: &mut Vec<usize>,
        k: usize,
        found: &[Vec<i64>],
        canon: &[Vec<i64>],
    ) -> bool {
        let n = perm.len();
        if k == n {
            return true;
        }
        for i in k..n {
            perm.swap(k, i);
            let consistent = (0..=k).all(|a| {
                canon[a][k] == found[perm[a]][perm[k]] && canon[k][a] == found[perm[k]][perm[a]]
            });
            if consistent && rec(perm, k + 1, found, canon) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    if rec(&mut perm, 0, found, canon) {
        Some(perm)
    } else {
        None
    }
}

/// Rational coordinates of v over the found base, reordered by perm, must
/// be integers.
fn base_coordinates(v: &[Rat], base: &[Vec<Rat>], perm: &[usize]) -> Option<Vec<i64>> {
    // solve sum_k x_k * base[k] = v by Gaussian elimination over Q
    let rank = base.len();
    let dim = v.len();
    let mut aug: Vec<Vec<Rat>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rat> = (0..rank).map(|k| base[k][r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..rank {
        let Some(p) = (r..dim).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].clone().recip();
        for x in aug[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..dim {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=rank {
                    let v = aug[i][j].clone() - f.clone() * aug[r][j].clone();
                    aug[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // consistency
    for i in r..dim {
        if !aug[i][rank].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); rank];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][rank].clone();
    }
    // integer check, then reorder: out[k] = x[perm[k]]
    let mut out = vec![0i64; rank];
    for k in 0..rank {
        let xi = &x[perm[k]];
        if !xi.is_integer() {
            return None;
        }
        out[k] = i64::try_from(xi.to_integer()).ok()?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat_int;

    fn t(f: Family, r: usize) -> RootSystemType {
        RootSystemType::new(f, r).unwrap()
    }

    #[test]
    fn root_counts() {
        let cases = [
            (t(Family::A, 1), 2),
            (t(Family::A, 2), 6),
            (t(Family::A, 3), 12),
            (t(Family::A, 4), 20),
            (t(Family::B, 2), 8),
            (t(Family::B, 3), 18),
            (t(Family::C, 3), 18),
            (t(Family::D, 4), 24),
            (t(Family::G, 2), 12),
            (t(Family::F, 4), 48),
            (t(Family::E, 6), 72),
            (t(Family::BC, 1), 4),
            (t(Family::BC, 2), 12),
        ];
        for (ty, n) in cases {
            let sys = build_root_system(ty);
            assert_eq!(sys.num_nonzero(), n, "{ty}");
        }
    }

    #[test]
    fn admissibility() {
        assert!(RootSystemType::new(Family::B, 1).is_err());
        assert!(RootSystemType::new(Family::C, 2).is_err());
        assert!(RootSystemType::new(Family::D, 3).is_err());
        assert!(RootSystemType::new(Family::E, 9).is_err());
        assert!(RootSystemType::new(Family::BC, 1).is_ok());
    }

    #[test]
    fn bc1_is_not_reduced() {
        let sys = build_root_system(t(Family::BC, 1));
        let roots: Vec<Vec<i64>> = sys.nonzero().cloned().collect();
        assert_eq!(roots.len(), 4);
        assert!(sys.contains(&[1]) && sys.contains(&[2]));
        let ind = derive_variants(&sys).ind;
        assert_eq!(ind.rtype, t(Family::A, 1));
    }

    #[test]
    fn a1_enlarged_is_bc1() {
        let sys = build_root_system(t(Family::A, 1));
        let v = derive_variants(&sys);
        assert_eq!(v.en.rtype, t(Family::BC, 1));
        assert_eq!(v.ind.rtype, t(Family::A, 1));
    }

    #[test]
    fn e6_variants_trivial() {
        let sys = build_root_system(t(Family::E, 6));
        let v = derive_variants(&sys);
        assert_eq!(v.en.rtype, sys.rtype);
        assert_eq!(v.ind.rtype, sys.rtype);
        assert_eq!(v.en.num_nonzero(), 72);
    }

    #[test]
    fn bc2_ind_is_b2() {
        let sys = build_root_system(t(Family::BC, 2));
        let v = derive_variants(&sys);
        assert_eq!(v.ind.rtype, t(Family::B, 2));
    }

    #[test]
    fn reflection_stability_small_ranks() {
        for ty in [
            t(Family::A, 2),
            t(Family::B, 3),
            t(Family::C, 3),
            t(Family::D, 4),
            t(Family::G, 2),
            t(Family::F, 4),
            t(Family::BC, 2),
        ] {
            let sys = build_root_system(ty);
            let nz: Vec<Vec<i64>> = sys.nonzero().cloned().collect();
            for a in &nz {
                for b in &nz {
                    assert!(sys.contains(&sys.reflect(a, b)), "{ty}");
                }
            }
        }
    }

    #[test]
    fn identify_round_trip() {
        // every admissible type of rank at most 6
        let mut all = vec![];
        for r in 1..=6 {
            all.push(t(Family::A, r));
            all.push(t(Family::BC, r));
        }
        for r in 2..=6 {
            all.push(t(Family::B, r));
        }
        for r in 3..=6 {
            all.push(t(Family::C, r));
        }
        for r in 4..=6 {
            all.push(t(Family::D, r));
        }
        all.push(t(Family::E, 6));
        all.push(t(Family::F, 4));
        all.push(t(Family::G, 2));
        for ty in all {
            let sys = build_root_system(ty);
            let vecs: Vec<Vec<Rat>> = sys
                .roots
                .iter()
                .map(|r| r.iter().map(|&c| rat_int(c)).collect())
                .collect();
            let id = identify_rootsystem(&vecs).unwrap();
            assert_eq!(id.system.rtype, ty, "{ty}");
        }
    }

    #[test]
    fn identify_a1_from_pm_one() {
        let vecs: Vec<Vec<Rat>> = vec![vec![rat_int(1)], vec![rat_int(0)], vec![rat_int(-1)]];
        assert_eq!(identify_type(&vecs).unwrap(), t(Family::A, 1));
    }

    #[test]
    fn identify_bc1_from_divisible() {
        let vecs: Vec<Vec<Rat>> = vec![
            vec![rat_int(0)],
            vec![rat_int(1)],
            vec![rat_int(-1)],
            vec![rat_int(2)],
            vec![rat_int(-2)],
        ];
        assert_eq!(identify_type(&vecs).unwrap(), t(Family::BC, 1));
    }

    #[test]
    fn identify_rejects_non_system() {
        let vecs: Vec<Vec<Rat>> = vec![vec![rat_int(1)], vec![rat_int(-1)], vec![rat_int(3)]];
        assert!(identify_type(&vecs).is_err());
    }

    #[test]
    fn weyl_orbits() {
        let a1 = build_root_system(t(Family::A, 1));
        assert_eq!(a1.weyl_orbit(&[1]).unwrap().len(), 2);
        assert_eq!(a1.weyl_orbit(&[0]).unwrap(), vec![vec![0]]);
        let b2 = build_root_system(t(Family::B, 2));
        let shorts = b2.short_roots();
        let orbit = b2.weyl_orbit(&shorts[0]).unwrap();
        assert_eq!(orbit.len(), 4);
        assert!(matches!(b2.weyl_orbit(&[5, 5]), Err(LtError::RootNotInSystem)));
    }

    #[test]
    fn theta_values() {
        let g2 = build_root_system(t(Family::G, 2));
        assert_eq!(g2.theta, vec![3, 2]);
        assert_eq!(g2.theta_sh, vec![2, 1]);
        let a2 = build_root_system(t(Family::A, 2));
        assert_eq!(a2.theta, vec![1, 1]);
    }

    #[test]
    fn b3_pairing_and_shorts() {
        let b3 = build_root_system(t(Family::B, 3));
        assert_eq!(b3.short_roots().len(), 6);
        // theta = e1+e2 = a1 + 2a2 + 2a3, theta_sh = e1 = a1+a2+a3
        assert_eq!(b3.theta, vec![1, 2, 2]);
        assert_eq!(b3.theta_sh, vec![1, 1, 1]);
    }
}
