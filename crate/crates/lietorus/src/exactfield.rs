//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in canonical form on the power basis
//! 1, zeta, ..., zeta^(phi(N)-1) modulo the N-th cyclotomic polynomial,
//! with fully reduced big-rational coordinates.  All primitive roots of
//! unity of order dividing N are obtained as powers of zeta_N, so
//! zeta_{m*l}^m = zeta_l holds for every divisor pair by construction.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LtError, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
///
/// Computed by exact division of x^n - 1 by the product of Phi_d over
/// proper divisors d of n.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (constant term first); panics on
/// nonzero remainder, which cannot happen for cyclotomic inputs.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    let lead = den[dd].clone();
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] / &lead;
        quot[k] = c.clone();
        for j in 0..=dd {
            let v = &rem[k + j] - &c * &den[j];
            rem[k + j] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder");
    quot
}

/// The working field Q(zeta_N): conductor, minimal polynomial and the
/// reduction table for powers zeta^k, phi(N) <= k <= 2*phi(N)-2.
///
/// Contexts compare by conductor alone; the derived tables are functions
/// of it.
pub struct FieldContext {
    conductor: u64,
    degree: usize,
    /// Phi_N, constant term first, length degree+1, monic.
    min_poly: Vec<BigInt>,
    /// reduction[k] = coordinates of zeta^(degree+k) on the power basis.
    reduction: Vec<Vec<Rat>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldContext(Q(zeta_{}), degree {})", self.conductor, self.degree)
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}
impl Eq for FieldContext {}

impl FieldContext {
    pub fn new(conductor: u64) -> Arc<FieldContext> {
        assert!(conductor >= 1, "conductor must be positive");
        let min_poly = cyclotomic_polynomial(conductor);
        let degree = min_poly.len() - 1;
        // zeta^degree = -(c_0 + c_1 zeta + ... + c_{d-1} zeta^{d-1})
        let mut reduction: Vec<Vec<Rat>> = Vec::with_capacity(degree.max(1));
        let base: Vec<Rat> = (0..degree)
            .map(|i| -Rat::from_integer(min_poly[i].clone()))
            .collect();
        if degree > 0 {
            reduction.push(base);
            for _ in 1..degree {
                let prev = reduction.last().unwrap().clone();
                reduction.push(shift_reduce(&prev, &reduction[0], degree));
            }
        }
        Arc::new(FieldContext { conductor, degree, min_poly, reduction })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Field degree phi(N) over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicNumber {
        CyclotomicNumber { coeffs: vec![Rat::zero(); self.degree], ctx: Arc::clone(self) }
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicNumber {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> CyclotomicNumber {
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[0] = r;
        CyclotomicNumber { coeffs, ctx: Arc::clone(self) }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CyclotomicNumber {
        self.from_rat(rat_int(n))
    }

    /// zeta_N itself (equals 1 when N = 1).
    pub fn zeta(self: &Arc<Self>) -> CyclotomicNumber {
        self.zeta_power(1)
    }

    /// zeta_N^k in canonical form.
    pub fn zeta_power(self: &Arc<Self>, k: i64) -> CyclotomicNumber {
        let n = self.conductor as i64;
        let k = k.rem_euclid(n) as usize;
        // raw power, then reduce by repeated single-step shifts
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        CyclotomicNumber { coeffs: self.reduce(coeffs), ctx: Arc::clone(self) }
    }

    /// A primitive m-th root of unity, m | N: zeta_N^(N/m).
    pub fn zeta_of_order(self: &Arc<Self>, m: u64) -> Result<CyclotomicNumber> {
        if m == 0 || self.conductor % m != 0 {
            return Err(LtError::OrderNotDividingConductor { order: m, conductor: self.conductor });
        }
        Ok(self.zeta_power((self.conductor / m) as i64))
    }

    /// Reduce an arbitrary-length coordinate vector modulo Phi_N.
    fn reduce(&self, mut coeffs: Vec<Rat>) -> Vec<Rat> {
        let d = self.degree;
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if !top.is_zero() {
                let k = coeffs.len() - d;
                let row = &self.reduction[k];
                for i in 0..d {
                    if !row[i].is_zero() {
                        coeffs[i] += &top * &row[i];
                    }
                }
            }
        }
        coeffs.resize(d, Rat::zero());
        coeffs
    }
}

/// One multiply-by-zeta step followed by reduction, on length-d vectors.
fn shift_reduce(prev: &[Rat], base: &[Rat], d: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); d];
    for i in 0..d - 1 {
        out[i + 1] = prev[i].clone();
    }
    let top = prev[d - 1].clone();
    if !top.is_zero() {
        for i in 0..d {
            out[i] += &top * &base[i];
        }
    }
    out
}

/// An element of Q(zeta_N) in canonical power-basis form.
#[derive(Clone)]
pub struct CyclotomicNumber {
    coeffs: Vec<Rat>,
    ctx: Arc<FieldContext>,
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if i == 1 {
                write!(f, "{}*z", c)?;
            } else {
                write!(f, "{}*z^{}", c, i)?;
            }
        }
        Ok(())
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for CyclotomicNumber {}

impl std::hash::Hash for CyclotomicNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CyclotomicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the canonical coefficient vector; used only for
/// deterministic output ordering, not as a field order.
impl Ord for CyclotomicNumber {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl CyclotomicNumber {
    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_ctx(&self, other: &Self) {
        assert_eq!(
            self.ctx.conductor, other.ctx.conductor,
            "field context mismatch; use checked_* operations on boundary data"
        );
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self + other)
    }
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self - other)
    }
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self * other)
    }
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self * &other.inv()?)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.conductor != other.ctx.conductor {
            return Err(LtError::ContextMismatch(self.ctx.conductor, other.ctx.conductor));
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CyclotomicNumber {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            ctx: Arc::clone(&self.ctx),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) minimal polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(LtError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.ctx.from_rat(r.recip()));
        }
        // gcd(self, Phi_N) = 1 = u*self + v*Phi_N over Q[x]
        let phi: Vec<Rat> =
            self.ctx.min_poly.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let a = trim(self.coeffs.clone());
        let (g, u) = ext_gcd_first(&a, &phi);
        // g is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let coeffs = self.ctx.reduce(u.into_iter().map(|c| c * &ginv).collect());
        Ok(CyclotomicNumber { coeffs, ctx: Arc::clone(&self.ctx) })
    }

    pub fn pow(&self, mut e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order when the element is a root of unity in the
    /// field, None otherwise (checked up to 2N).
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let bound = 2 * self.ctx.conductor;
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Serialization: array of "num/den" strings on the power basis.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_strings(ctx: &Arc<FieldContext>, parts: &[String]) -> Result<Self> {
        if parts.len() != ctx.degree {
            return Err(LtError::SchemaError(format!(
                "expected {} coordinates for conductor {}, got {}",
                ctx.degree,
                ctx.conductor,
                parts.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(parts.len());
        for p in parts {
            coeffs.push(parse_rat(p)?);
        }
        Ok(CyclotomicNumber { coeffs, ctx: Arc::clone(ctx) })
    }
}

/// Parse "a/b" or "a" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |_| LtError::SchemaError(format!("bad rational literal: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(bad)?;
            let d: BigInt = d.trim().parse().map_err(bad)?;
            if d.is_zero() {
                return Err(LtError::SchemaError(format!("zero denominator: {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(bad)?;
            Ok(Rat::from_integer(n))
        }
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Extended gcd over Q[x] returning (gcd, u) with u*a = gcd (mod b).
fn ext_gcd_first(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![Rat::one()];
    let mut u1: Vec<Rat> = vec![];
    while !trim(r1.clone()).is_empty() {
        let (q, r) = rat_poly_divrem(&r0, &r1);
        let u2 = rat_poly_sub(&u0, &rat_poly_mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
    }
    let r0 = trim(r0);
    (r0, u0)
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn rat_poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    let lead = b[db].clone();
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem[dr].clone() / lead.clone();
        quot[dr - db] = c.clone();
        for j in 0..=db {
            let v = &rem[dr - db + j] - &c * &b[j];
            rem[dr - db + j] = v;
        }
        rem = trim(rem);
    }
    (quot, rem)
}

macro_rules! impl_binop {
    ($trait:ident, $meth:ident, $op:tt) => {
        impl std::ops::$trait for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $meth(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.assert_ctx(rhs);
                let coeffs = self
                    .coeffs
                    .iter()
                    .zip(rhs.coeffs.iter())
                    .map(|(a, b)| a $op b)
                    .collect();
                CyclotomicNumber { coeffs, ctx: Arc::clone(&self.ctx) }
            }
        }
    };
}
impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);

impl std::ops::Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.assert_ctx(rhs);
        let d = self.ctx.degree;
        if d == 1 {
            return CyclotomicNumber {
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
                ctx: Arc::clone(&self.ctx),
            };
        }
        let mut raw = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber { coeffs: self.ctx.reduce(raw), ctx: Arc::clone(&self.ctx) }
    }
}

impl std::ops::Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ctx: Arc::clone(&self.ctx),
        }
    }
}

/// Dense polynomial over the working field, constant term first, leading
/// coefficient nonzero; the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPolynomial {
    coeffs: Vec<CyclotomicNumber>,
}

impl ExactPolynomial {
    pub fn new(coeffs: Vec<CyclotomicNumber>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: vec![] }
    }

    pub fn from_rational_coeffs(ctx: &Arc<FieldContext>, coeffs: &[Rat]) -> Self {
        Self::new(coeffs.iter().map(|c| ctx.from_rat(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 with is_zero() distinguishing it.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[CyclotomicNumber] {
        &self.coeffs
    }

    pub fn eval(&self, x: &CyclotomicNumber) -> CyclotomicNumber {
        let ctx = x.ctx();
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let ctx = self.coeffs[0].ctx().clone();
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Monic linear factor x - r.
    pub fn linear(r: &CyclotomicNumber) -> Self {
        ExactPolynomial { coeffs: vec![-r, r.ctx().one()] }
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        if self.is_zero() || self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let ctx = self.coeffs[0].ctx().clone();
        let lead_inv = d.coeffs.last().unwrap().inv().expect("leading coeff nonzero");
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let mut quot = vec![ctx.zero(); rem.len() - dd];
        for k in (0..=rem.len() - 1 - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                rem[k + j] = &rem[k + j] - &(&c * &d.coeffs[j]);
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// All roots in the working field with multiplicities, in lexicographic
    /// coefficient-vector order.  Errors with the residual factor when the
    /// polynomial does not split into linear factors over the field.
    pub fn split_into_linear_factors(&self) -> Result<Vec<(CyclotomicNumber, usize)>> {
        assert!(!self.is_zero(), "root finding needs a nonzero polynomial");
        let ctx = self.coeffs[0].ctx().clone();
        let mut roots: Vec<CyclotomicNumber> = Vec::new();
        let mut p = self.clone();

        // Candidate roots: powers of +-zeta_N (covers every root of unity in
        // the field), rational candidates from the rational root theorem when
        // the residual has rational coefficients, and direct extraction from
        // degree-one residuals.
        loop {
            if p.degree() == 0 {
                break;
            }
            if p.degree() == 1 {
                let r = p.coeffs[0].checked_div(&p.coeffs[1])?;
                roots.push(-&r);
                break;
            }
            let mut progressed = false;
            for cand in root_candidates(&ctx, &p) {
                while p.degree() >= 1 && p.eval(&cand).is_zero() {
                    roots.push(cand.clone());
                    let (q, r) = p.divrem(&ExactPolynomial::linear(&cand));
                    debug_assert!(r.is_zero());
                    p = q;
                    progressed = true;
                }
                if p.degree() <= 1 {
                    break;
                }
            }
            if p.degree() == 1 || p.degree() == 0 {
                continue;
            }
            if !progressed {
                return Err(LtError::NonSplittingPolynomial {
                    degree: p.degree(),
                    factor: format!(
                        "[{}]",
                        p.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                    ),
                });
            }
        }

        roots.sort();
        let mut out: Vec<(CyclotomicNumber, usize)> = Vec::new();
        for r in roots {
            match out.last_mut() {
                Some((prev, m)) if *prev == r => *m += 1,
                _ => out.push((r, 1)),
            }
        }
        // re-expand and compare: the product of the linear factors times the
        // leading coefficient must reproduce the input exactly
        let lead = self.coeffs.last().unwrap();
        let mut check = ExactPolynomial { coeffs: vec![lead.clone()] };
        for (r, m) in &out {
            for _ in 0..*m {
                check = check.mul(&ExactPolynomial::linear(r));
            }
        }
        if &check != self {
            return Err(LtError::InternalCheck("linear factor re-expansion mismatch".into()));
        }
        Ok(out)
    }
}

/// Deterministic candidate roots for linear-factor extraction.
fn root_candidates(ctx: &Arc<FieldContext>, p: &ExactPolynomial) -> Vec<CyclotomicNumber> {
    let mut cands: Vec<CyclotomicNumber> = Vec::new();
    cands.push(ctx.zero());
    for j in 0..ctx.conductor() {
        let z = ctx.zeta_power(j as i64);
        cands.push(z.clone());
        cands.push(-&z);
    }
    // rational-root-theorem candidates for rational residuals
    let rational: Option<Vec<Rat>> = p.coeffs.iter().map(|c| c.as_rational()).collect();
    if let Some(rc) = rational {
        let lcm_den = rc.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = rc.iter().map(|c| c.numer() * (&lcm_den / c.denom())).collect();
        let a0 = ints.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one);
        let an = ints.last().cloned().unwrap_or_else(BigInt::one);
        for num in small_divisors(&a0.abs(), 4096) {
            for den in small_divisors(&an.abs(), 4096) {
                let q = Rat::new(num.clone(), den.clone());
                cands.push(ctx.from_rat(q.clone()));
                cands.push(ctx.from_rat(-q));
            }
        }
    }
    cands
}

/// All positive divisors up to a scan bound, plus the value itself.
fn small_divisors(n: &BigInt, bound: u64) -> Vec<BigInt> {
    let mut out = vec![];
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut d = BigInt::one();
    let limit = BigInt::from(bound);
    while &d * &d <= *n && d <= limit {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}
