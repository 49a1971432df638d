//! Small integer matrices: determinants, Smith normal form with unimodular
//! transforms, and linear congruence solving.  Sizes here are tiny (the
//! number of loop directions), so everything is direct.

use crate::error::{LtError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        IMat { rows: r, cols: c, data }
    }

    pub fn diag(d: &[i64]) -> Self {
        let mut m = Self::zero(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss) in i128.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> =
            (0..n).map(|i| (0..n).map(|j| self.at(i, j) as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                    return 0;
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        i64::try_from(sign * m[n - 1][n - 1]).expect("determinant fits i64")
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    /// Inverse of a unimodular matrix (integer entries), via adjugate-free
    /// elimination over rationals followed by exact rounding is avoided:
    /// use Smith form transforms instead.
    pub fn unimodular_inverse(&self) -> Option<IMat> {
        if !self.is_unimodular() {
            return None;
        }
        let (u, d, v) = smith_normal_form(self);
        // u * self * v = d with |d_ii| = 1; self^{-1} = v * d^{-1} * u
        let n = self.rows;
        let mut dinv = IMat::zero(n, n);
        for i in 0..n {
            dinv.set(i, i, d.at(i, i));
        }
        Some(v.matmul(&dinv).matmul(&u))
    }
}

/// Smith normal form: returns (U, D, V) with U*A*V = D, U and V unimodular,
/// D diagonal with d_i | d_{i+1} and d_i >= 0.
pub fn smith_normal_form(a: &IMat) -> (IMat, IMat, IMat) {
    let mut d = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut v = IMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    fn swap_rows(m: &mut IMat, i: usize, j: usize) {
        for c in 0..m.cols {
            let t = m.at(i, c);
            m.set(i, c, m.at(j, c));
            m.set(j, c, t);
        }
    }
    fn swap_cols(m: &mut IMat, i: usize, j: usize) {
        for r in 0..m.rows {
            let t = m.at(r, i);
            m.set(r, i, m.at(r, j));
            m.set(r, j, t);
        }
    }
    fn add_row(m: &mut IMat, dst: usize, src: usize, f: i64) {
        for c in 0..m.cols {
            let t = m.at(dst, c) + f * m.at(src, c);
            m.set(dst, c, t);
        }
    }
    fn add_col(m: &mut IMat, dst: usize, src: usize, f: i64) {
        for r in 0..m.rows {
            let t = m.at(r, dst) + f * m.at(r, src);
            m.set(r, dst, t);
        }
    }

    for t in 0..n {
        loop {
            // find a nonzero pivot in the trailing block
            let mut pivot = None;
            'outer: for i in t..d.rows {
                for j in t..d.cols {
                    if d.at(i, j) != 0 {
                        pivot = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            if pi != t {
                swap_rows(&mut d, pi, t);
                swap_rows(&mut u, pi, t);
            }
            if pj != t {
                swap_cols(&mut d, pj, t);
                swap_cols(&mut v, pj, t);
            }
            // clear row and column t with euclidean steps
            let mut dirty = false;
            for i in t + 1..d.rows {
                if d.at(i, t) != 0 {
                    let q = d.at(i, t).div_euclid(d.at(t, t));
                    add_row(&mut d, i, t, -q);
                    add_row(&mut u, i, t, -q);
                    if d.at(i, t) != 0 {
                        swap_rows(&mut d, i, t);
                        swap_rows(&mut u, i, t);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..d.cols {
                if d.at(t, j) != 0 {
                    let q = d.at(t, j).div_euclid(d.at(t, t));
                    add_col(&mut d, j, t, -q);
                    add_col(&mut v, j, t, -q);
                    if d.at(t, j) != 0 {
                        swap_cols(&mut d, j, t);
                        swap_cols(&mut v, j, t);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility: pivot must divide every remaining entry
            let p = d.at(t, t);
            let mut fixed = true;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if d.at(i, j) % p != 0 {
                        add_row(&mut d, t, i, 1);
                        add_row(&mut u, t, i, 1);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    // normalize signs
    for t in 0..n {
        if d.at(t, t) < 0 {
            for j in 0..d.cols {
                d.set(t, j, -d.at(t, j));
            }
            for j in 0..u.cols {
                u.set(t, j, -u.at(t, j));
            }
        }
    }
    debug_assert_eq!(u.matmul(a).matmul(&v), d);
    (u, d, v)
}

/// Invariant factors > 1 of Z^n / (lattice spanned by the rows of `gens`).
/// The lattice must have full rank n.
pub fn quotient_invariant_factors(gens: &IMat, n: usize) -> Result<Vec<i64>> {
    assert_eq!(gens.cols, n);
    let (_, d, _) = smith_normal_form(gens);
    let mut out = vec![];
    for i in 0..n {
        if i >= d.rows || d.at(i, i) == 0 {
            return Err(LtError::InternalCheck("kernel lattice not of full rank".into()));
        }
        if d.at(i, i) > 1 {
            out.push(d.at(i, i));
        }
    }
    Ok(out)
}

/// Solve A * x == rhs (mod row-wise moduli m) over the integers:
/// row i of the congruence is taken modulo m[i].  Returns any solution.
pub fn solve_congruence_system(a: &IMat, m: &[i64], rhs: &[i64]) -> Option<Vec<i64>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(m.len(), n);
    assert_eq!(rhs.len(), n);
    // [A | diag(m)] * [x; y] = rhs has an integer solution iff the
    // congruence system does.
    let mut aug = IMat::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.at(i, j));
        }
        aug.set(i, n + i, m[i]);
    }
    let (u, d, v) = smith_normal_form(&aug);
    // solve D z = U rhs, then [x;y] = V z
    let urhs: Vec<i64> = (0..n).map(|i| (0..n).map(|j| u.at(i, j) * rhs[j]).sum()).collect();
    let mut z = vec![0i64; 2 * n];
    for i in 0..n {
        let di = d.at(i, i);
        if di == 0 {
            if urhs[i] != 0 {
                return None;
            }
        } else {
            if urhs[i] % di != 0 {
                return None;
            }
            z[i] = urhs[i] / di;
        }
    }
    let xy: Vec<i64> = (0..2 * n).map(|i| (0..2 * n).map(|j| v.at(i, j) * z[j]).sum()).collect();
    Some(xy[0..n].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_identity() {
        let a = IMat::identity(3);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d, IMat::identity(3));
        assert!(u.is_unimodular() && v.is_unimodular());
    }

    #[test]
    fn snf_diag_4_6() {
        let a = IMat::diag(&[4, 6]);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d, IMat::diag(&[2, 12]));
        assert_eq!(u.matmul(&a).matmul(&v), d);
    }

    #[test]
    fn snf_two_identity() {
        let a = IMat::diag(&[2, 2, 2]);
        let (_, d, _) = smith_normal_form(&a);
        assert_eq!(d, IMat::diag(&[2, 2, 2]));
    }

    #[test]
    fn snf_random_small() {
        let cases = vec![
            IMat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            IMat::from_rows(vec![vec![0, 0], vec![0, 3]]),
            IMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]),
        ];
        for a in cases {
            let (u, d, v) = smith_normal_form(&a);
            assert_eq!(u.matmul(&a).matmul(&v), d);
            for i in 0..a.rows.min(a.cols).saturating_sub(1) {
                if d.at(i + 1, i + 1) != 0 {
                    assert!(d.at(i, i) != 0, "zero before nonzero on diagonal");
                    assert_eq!(d.at(i + 1, i + 1) % d.at(i, i), 0);
                }
            }
            for i in 0..d.rows {
                for j in 0..d.cols {
                    if i != j {
                        assert_eq!(d.at(i, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_factors() {
        // lattice 2Z^3: quotient (Z/2)^3
        let gens = IMat::diag(&[2, 2, 2]);
        assert_eq!(quotient_invariant_factors(&gens, 3).unwrap(), vec![2, 2, 2]);
        // full lattice: trivial quotient
        let gens = IMat::identity(2);
        assert!(quotient_invariant_factors(&gens, 2).unwrap().is_empty());
    }

    #[test]
    fn congruence_solver() {
        // x == (1,0), (0,1) columns achievable mod (4,2)
        let a = IMat::from_rows(vec![vec![1, 2], vec![1, 1]]);
        let m = vec![4, 2];
        let x = solve_congruence_system(&a, &m, &[1, 0]).unwrap();
        let r0 = a.at(0, 0) * x[0] + a.at(0, 1) * x[1];
        let r1 = a.at(1, 0) * x[0] + a.at(1, 1) * x[1];
        assert_eq!(r0.rem_euclid(4), 1);
        assert_eq!(r1.rem_euclid(2), 0);
    }

    #[test]
    fn unimodular_inverse_works() {
        let p = IMat::from_rows(vec![vec![1, 1], vec![1, 2]]);
        let inv = p.unimodular_inverse().unwrap();
        assert_eq!(p.matmul(&inv), IMat::identity(2));
    }
}
