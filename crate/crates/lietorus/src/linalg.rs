//! Dense exact linear algebra over the working field: reduced echelon
//! forms, nullspaces, solves and characteristic polynomials.

use std::sync::Arc;

use crate::error::{LtError, Result};
use crate::exactfield::{CyclotomicNumber, ExactPolynomial, FieldContext};

/// Dense matrix over Q(zeta_N), row major.
#[derive(Clone, PartialEq)]
pub struct KMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CyclotomicNumber>,
    ctx: Arc<FieldContext>,
}

impl std::fmt::Debug for KMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "KMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl KMat {
    pub fn zero(ctx: &Arc<FieldContext>, rows: usize, cols: usize) -> Self {
        KMat { rows, cols, data: vec![ctx.zero(); rows * cols], ctx: Arc::clone(ctx) }
    }

    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<CyclotomicNumber>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        KMat { rows: r, cols: c, data, ctx: Arc::clone(ctx) }
    }

    pub fn from_fn(
        ctx: &Arc<FieldContext>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CyclotomicNumber,
    ) -> Self {
        let mut m = Self::zero(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CyclotomicNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<CyclotomicNumber> {
        self.row(i).to_vec()
    }

    pub fn rows_vec(&self) -> Vec<Vec<CyclotomicNumber>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let v = &(a * b) + out.at(i, j);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn apply(&self, v: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ctx.zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.data.swap(r * self.cols + c, p * self.cols + c);
            for j in 0..self.cols {
                if j != c {
                    self.data.swap(r * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv().expect("pivot nonzero");
            for j in 0..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j) - &(&f * self.at(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // drop zero rows
        let rank = pivots.len();
        self.data.truncate(rank * self.cols);
        self.rows = rank;
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right nullspace as rows.
    pub fn nullspace(&self) -> KMat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.ctx.zero(); self.cols];
            v[fc] = self.ctx.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(ri, fc);
            }
            rows.push(v);
        }
        if rows.is_empty() {
            KMat::zero(&self.ctx, 0, self.cols)
        } else {
            KMat::from_rows(&self.ctx, rows)
        }
    }

    pub fn det(&self) -> CyclotomicNumber {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.ctx.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return self.ctx.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(c * n + j, p * n + j);
                }
                det = -&det;
            }
            let piv = m.at(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c) * &inv;
                    for j in c..n {
                        let v = m.at(i, j) - &(&f * m.at(c, j));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<KMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = KMat::zero(&self.ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, self.ctx.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(KMat::from_fn(&self.ctx, n, n, |i, j| aug.at(i, n + j).clone()))
    }

    /// Solve x * self = rhs for a single row vector rhs, if consistent.
    /// (Row-vector convention matches subspace bases stored as rows.)
    pub fn solve_left(&self, rhs: &[CyclotomicNumber]) -> Option<Vec<CyclotomicNumber>> {
        // x * A = b  <=>  A^T x^T = b^T
        let at = self.transpose();
        at.solve_right(rhs)
    }

    /// Solve self * x = rhs for a single column vector rhs, if consistent.
    pub fn solve_right(&self, rhs: &[CyclotomicNumber]) -> Option<Vec<CyclotomicNumber>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = KMat::zero(&self.ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.ctx.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial det(x*I - A) via Hessenberg reduction.
    pub fn char_poly(&self) -> ExactPolynomial {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let ctx = &self.ctx;
        if n == 0 {
            return ExactPolynomial::new(vec![ctx.one()]);
        }
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h.at(i, c).is_zero()) else {
                continue;
            };
            if p != c + 1 {
                for j in 0..n {
                    h.data.swap((c + 1) * n + j, p * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + (c + 1), i * n + p);
                }
            }
            let inv = h.at(c + 1, c).inv().unwrap();
            for i in c + 2..n {
                if h.at(i, c).is_zero() {
                    continue;
                }
                let f = h.at(i, c) * &inv;
                // row_i -= f * row_{c+1}
                for j in 0..n {
                    let v = h.at(i, j) - &(&f * h.at(c + 1, j));
                    h.set(i, j, v);
                }
                // col_{c+1} += f * col_i
                for r in 0..n {
                    let v = h.at(r, c + 1) + &(&f * h.at(r, i));
                    h.set(r, c + 1, v);
                }
            }
        }
        // p_0 = 1; p_k(x) = (x - h[k-1][k-1]) p_{k-1}(x)
        //        - sum_{i<k-1} h[i][k-1] (prod_{j=i+1}^{k-1} h[j][j-1]) p_i(x)
        let one = ExactPolynomial::new(vec![ctx.one()]);
        let mut ps: Vec<ExactPolynomial> = vec![one];
        for k in 1..=n {
            let xm = ExactPolynomial::new(vec![-h.at(k - 1, k - 1), ctx.one()]);
            let mut p = ps[k - 1].mul(&xm);
            let mut prod = ctx.one();
            for i in (0..k - 1).rev() {
                prod = &prod * h.at(i + 1, i);
                let coef = &(h.at(i, k - 1) * &prod);
                if !coef.is_zero() {
                    let term = ps[i].mul(&ExactPolynomial::new(vec![coef.clone()]));
                    p = ExactPolynomial::new(
                        p.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(d, c)| {
                                if d < term.coeffs().len() && !term.is_zero() {
                                    c - &term.coeffs()[d]
                                } else {
                                    c.clone()
                                }
                            })
                            .collect(),
                    );
                }
            }
            ps.push(p);
        }
        ps.pop().unwrap()
    }
}

/// An echelonized row space: canonical basis for subspace comparisons.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpace {
    basis: KMat,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<CyclotomicNumber>>, ambient: usize) -> Self {
        if rows.is_empty() {
            return RowSpace { basis: KMat::zero(ctx, 0, ambient), pivots: vec![] };
        }
        let mut m = KMat::from_rows(ctx, rows);
        let pivots = m.rref_in_place();
        RowSpace { basis: m, pivots }
    }

    pub fn full(ctx: &Arc<FieldContext>, ambient: usize) -> Self {
        RowSpace { basis: KMat::identity(ctx, ambient), pivots: (0..ambient).collect() }
    }

    pub fn empty(ctx: &Arc<FieldContext>, ambient: usize) -> Self {
        RowSpace { basis: KMat::zero(ctx, 0, ambient), pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &KMat {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> &[CyclotomicNumber] {
        self.basis.row(i)
    }

    /// Residual of v after reduction by the basis; zero iff v in the span.
    pub fn reduce(&self, v: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
        let mut v = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if !v[c].is_zero() {
                let f = v[c].clone();
                for j in 0..v.len() {
                    let w = &v[j] - &(&f * self.basis.at(r, j));
                    v[j] = w;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CyclotomicNumber]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis_row(i)))
    }

    /// Coordinates of v in this basis, if v lies in the span.
    pub fn coordinates(&self, v: &[CyclotomicNumber]) -> Option<Vec<CyclotomicNumber>> {
        let mut v = v.to_vec();
        let mut coords = vec![self.basis.ctx().zero(); self.dim()];
        for (r, &c) in self.pivots.iter().enumerate() {
            if !v[c].is_zero() {
                let f = v[c].clone();
                for j in 0..v.len() {
                    let w = &v[j] - &(&f * self.basis.at(r, j));
                    v[j] = w;
                }
                coords[r] = f;
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Try to insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[CyclotomicNumber]) -> bool {
        let red = self.reduce(v);
        let Some(lead) = red.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = red[lead].inv().unwrap();
        let newrow: Vec<CyclotomicNumber> = red.iter().map(|c| c * &inv).collect();
        // reduce existing rows by the new row, keep echelon canonical
        let mut rows = self.basis.rows_vec();
        for row in rows.iter_mut() {
            if !row[lead].is_zero() {
                let f = row[lead].clone();
                for j in 0..row.len() {
                    let w = &row[j] - &(&f * &newrow[j]);
                    row[j] = w;
                }
            }
        }
        let pos = self.pivots.iter().position(|&p| p > lead).unwrap_or(self.pivots.len());
        rows.insert(pos, newrow);
        self.pivots.insert(pos, lead);
        self.basis = KMat::from_rows(self.basis.ctx(), rows);
        true
    }

    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        let ctx = self.basis.ctx().clone();
        let amb = self.ambient();
        if self.dim() == 0 || other.dim() == 0 {
            return RowSpace::empty(&ctx, amb);
        }
        // rows c with c = x*A = y*B: nullspace of [A^T | -B^T]
        let k1 = self.dim();
        let k2 = other.dim();
        let stacked = KMat::from_fn(&ctx, amb, k1 + k2, |i, j| {
            if j < k1 {
                self.basis.at(j, i).clone()
            } else {
                -other.basis.at(j - k1, i)
            }
        });
        let ns = stacked.nullspace();
        let rows: Vec<Vec<CyclotomicNumber>> = (0..ns.rows)
            .map(|r| {
                let x = &ns.row(r)[0..k1];
                (0..amb)
                    .map(|c| {
                        let mut acc = ctx.zero();
                        for (i, xi) in x.iter().enumerate() {
                            if !xi.is_zero() {
                                acc = &acc + &(xi * self.basis.at(i, c));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        RowSpace::from_rows(&ctx, rows, amb)
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut rows = self.basis.rows_vec();
        rows.extend(other.basis.rows_vec());
        RowSpace::from_rows(self.basis.ctx(), rows, self.ambient())
    }

    /// JSON export: conductor, ambient dimension and basis rows as exact
    /// coordinate strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "conductor": self.basis.ctx().conductor(),
            "ambient": self.ambient(),
            "rows": (0..self.dim())
                .map(|i| {
                    self.basis_row(i)
                        .iter()
                        .map(|c| serde_json::json!(c.to_strings()))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<RowSpace> {
        let bad = |m: &str| LtError::SchemaError(format!("subspace json: {m}"));
        let conductor = v["conductor"].as_u64().ok_or_else(|| bad("missing conductor"))?;
        let ctx = FieldContext::new(conductor);
        let ambient = v["ambient"].as_u64().ok_or_else(|| bad("missing ambient"))? as usize;
        let mut rows = vec![];
        for row in v["rows"].as_array().ok_or_else(|| bad("missing rows"))? {
            let row = row.as_array().ok_or_else(|| bad("bad row"))?;
            if row.len() != ambient {
                return Err(bad("row length mismatch"));
            }
            let mut out = vec![];
            for entry in row {
                let strs: Vec<String> = entry
                    .as_array()
                    .ok_or_else(|| bad("bad entry"))?
                    .iter()
                    .map(|s| s.as_str().unwrap_or_default().to_string())
                    .collect();
                out.push(CyclotomicNumber::from_strings(&ctx, &strs)?);
            }
            rows.push(out);
        }
        Ok(RowSpace::from_rows(&ctx, rows, ambient))
    }
}

/// Kernel of (M - c*I) as a row space.
pub fn eigenspace(m: &KMat, c: &CyclotomicNumber) -> Result<RowSpace> {
    if m.rows != m.cols {
        return Err(LtError::InternalCheck("eigenspace of nonsquare matrix".into()));
    }
    let ctx = m.ctx().clone();
    let shifted = KMat::from_fn(&ctx, m.rows, m.cols, |i, j| {
        if i == j {
            m.at(i, j) - c
        } else {
            m.at(i, j).clone()
        }
    });
    let ns = shifted.nullspace();
    Ok(RowSpace::from_rows(&ctx, ns.rows_vec(), m.cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat_int;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::new(4)
    }

    fn imat(c: &Arc<FieldContext>, rows: &[&[i64]]) -> KMat {
        KMat::from_rows(
            c,
            rows.iter().map(|r| r.iter().map(|&v| c.from_int(v)).collect()).collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let c = ctx();
        let m = imat(&c, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_orthogonality() {
        let c = ctx();
        let m = imat(&c, &[&[1, 2, 3], &[0, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.rows, 1);
        for r in 0..ns.rows {
            let v = ns.row_vec(r);
            let prod = m.apply(&v);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_and_inverse() {
        let c = ctx();
        let m = imat(&c, &[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), c.from_int(1));
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
    }

    #[test]
    fn char_poly_of_companion() {
        let c = ctx();
        // companion of x^2 - 3x + 2 = (x-1)(x-2)
        let m = imat(&c, &[&[0, -2], &[1, 3]]);
        let p = m.char_poly();
        assert_eq!(p.degree(), 2);
        let roots = p.split_into_linear_factors().unwrap();
        let vals: Vec<_> = roots.iter().map(|(r, _)| r.clone()).collect();
        assert!(vals.contains(&c.from_int(1)));
        assert!(vals.contains(&c.from_int(2)));
    }

    #[test]
    fn char_poly_with_complex_eigenvalues() {
        let c = ctx();
        // rotation has eigenvalues +-i over Q(i)
        let m = imat(&c, &[&[0, 1], &[-1, 0]]);
        let p = m.char_poly();
        let roots = p.split_into_linear_factors().unwrap();
        let z = c.zeta();
        assert!(roots.iter().any(|(r, _)| *r == z));
        assert!(roots.iter().any(|(r, _)| *r == -&z));
    }

    #[test]
    fn eigenspace_dims() {
        let c = ctx();
        let m = imat(&c, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 5]]);
        assert_eq!(eigenspace(&m, &c.from_int(2)).unwrap().dim(), 2);
        assert_eq!(eigenspace(&m, &c.from_int(5)).unwrap().dim(), 1);
        assert_eq!(eigenspace(&m, &c.from_int(7)).unwrap().dim(), 0);
    }

    #[test]
    fn rowspace_ops() {
        let c = ctx();
        let a = RowSpace::from_rows(
            &c,
            vec![
                vec![c.from_int(1), c.from_int(0), c.from_int(1)],
                vec![c.from_int(0), c.from_int(1), c.from_int(1)],
            ],
            3,
        );
        let b = RowSpace::from_rows(&c, vec![vec![c.from_int(1), c.from_int(1), c.from_int(2)]], 3);
        assert!(a.contains(b.basis_row(0)));
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        let mut a2 = a.clone();
        assert!(!a2.insert(&[c.from_int(1), c.from_int(1), c.from_int(2)]));
        assert!(a2.insert(&[c.from_int(1), c.from_int(1), c.from_int(3)]));
        assert_eq!(a2.dim(), 3);
    }

    #[test]
    fn solve_left_right() {
        let c = ctx();
        let m = imat(&c, &[&[1, 2], &[3, 5]]);
        let x = m.solve_right(&[c.from_int(5), c.from_int(12)]).unwrap();
        assert_eq!(m.apply(&x), vec![c.from_int(5), c.from_int(12)]);
        let y = m.solve_left(&[c.from_int(7), c.from_int(12)]).unwrap();
        // y * m == rhs
        let prod: Vec<CyclotomicNumber> = (0..2)
            .map(|j| {
                let mut acc = c.zero();
                for i in 0..2 {
                    acc = &acc + &(&y[i] * m.at(i, j));
                }
                acc
            })
            .collect();
        assert_eq!(prod, vec![c.from_int(7), c.from_int(12)]);
        let _ = rat_int(0);
    }
}
