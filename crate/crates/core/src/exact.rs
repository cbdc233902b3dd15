//! Exact rational scalars, vectors and dense matrices.
//!
//! Every quantity in the crate is a [`Rat`]; nothing is ever rounded. The
//! ambient space is `R^n` with the sup norm, so functionals carry the dual
//! `l1` norm.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GeomError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// A point of `R^n` or a functional on it, depending on context.
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rvec(xs: &[i64]) -> RatVec {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Parses `"p/q"` or `"p"` (decimal big integers).
pub fn parse_rat(s: &str) -> Result<Rat, GeomError> {
    let t = s.trim();
    let bad = || GeomError::Parse(format!("invalid rational {s:?}"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(GeomError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(p, q))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_vec(s: &str) -> Result<RatVec, GeomError> {
    s.split(',').map(parse_rat).collect()
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scaled(a: &[Rat], r: &Rat) -> RatVec {
    a.iter().map(|x| x * r).collect()
}

pub fn neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn zeros(n: usize) -> RatVec {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> RatVec {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `max_i |v_i|`, the norm of the ambient space.
pub fn sup_norm(v: &[Rat]) -> Rat {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rat::zero)
}

/// `sum_i |f_i|`, the norm dual to [`sup_norm`].
pub fn dual_norm(f: &[Rat]) -> Rat {
    f.iter().fold(Rat::zero(), |acc, x| acc + x.abs())
}

/// Rescales `v` to the primitive integer vector on the same ray
/// (integer entries, gcd 1). The zero vector is returned unchanged.
pub fn primitive(v: &[Rat]) -> RatVec {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Dense rational matrix. `ncols` is kept explicitly so that matrices with no
/// rows still know their width.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMat {
    pub rows: Vec<RatVec>,
    pub ncols: usize,
}

impl RatMat {
    pub fn new(rows: Vec<RatVec>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Self { rows, ncols }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::new(rows.iter().map(|r| rvec(r)).collect(), ncols)
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self::new(vec![zeros(ncols); nrows], ncols)
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| unit(n, i)).collect(), n)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn mul_vec(&self, x: &[Rat]) -> RatVec {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// `y^T M`.
    pub fn tmul_vec(&self, y: &[Rat]) -> RatVec {
        let mut out = zeros(self.ncols);
        for (yi, row) in y.iter().zip(&self.rows) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += yi * a;
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMat {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMat::new(rows, self.nrows())
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", fmt_vec(r))?;
        }
        Ok(())
    }
}

/// Integer matrix obtained by clearing the denominators of each row.
fn integer_rows(rows: &[RatVec]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination. Returns the echelon matrix and
/// the pivot column of each nonzero row. Every division is exact.
fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        // Columns left of `c` in rows below are already zero.
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMat) -> usize {
    bareiss(integer_rows(&m.rows), m.ncols).1.len()
}

/// Back-substitution on an integer echelon form: fixes the free variables
/// to `free`, solves for the pivots against right-hand side `rhs`.
fn back_substitute(
    ech: &[Vec<BigInt>],
    pivots: &[usize],
    ncols: usize,
    rhs: &[Rat],
    free: &[(usize, Rat)],
) -> RatVec {
    let mut x = zeros(ncols);
    for (j, v) in free {
        x[*j] = v.clone();
    }
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = rhs[r].clone();
        for j in pc + 1..ncols {
            if !ech[r][j].is_zero() && !x[j].is_zero() {
                acc -= Rat::from_integer(ech[r][j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rat::from_integer(ech[r][pc].clone());
    }
    x
}

/// Basis of `{x : Mx = 0}`, one vector per free column.
pub fn kernel_basis(m: &RatMat) -> Vec<RatVec> {
    let n = m.ncols;
    let (ech, pivots) = bareiss(integer_rows(&m.rows), n);
    let zero_rhs = zeros(pivots.len());
    (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|j| primitive(&back_substitute(&ech, &pivots, n, &zero_rhs, &[(j, Rat::one())])))
        .collect()
}

/// Some particular solution of `Mx = b`, or `None` if the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_linear(m: &RatMat, b: &[Rat]) -> Option<RatVec> {
    assert_eq!(m.nrows(), b.len(), "row count must match right-hand side");
    let n = m.ncols;
    // Augment with b and eliminate; a pivot in the last column is a
    // contradiction 0 = nonzero.
    let aug: Vec<RatVec> = m
        .rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let (ech, pivots) = bareiss(integer_rows(&aug), n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let rhs: RatVec = ech.iter().map(|row| Rat::from_integer(row[n].clone())).collect();
    Some(back_substitute(&ech, &pivots, n, &rhs, &[]))
}

/// Reduced row echelon basis of the row span of `vecs`. Unique for a given
/// subspace, so it doubles as a canonical basis.
pub fn rref_basis(vecs: &[RatVec], n: usize) -> Vec<RatVec> {
    let mut m: Vec<RatVec> = vecs.to_vec();
    let mut out_rows = 0;
    for c in 0..n {
        let Some(p) = (out_rows..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(out_rows, p);
        let inv = m[out_rows][c].recip();
        m[out_rows] = scaled(&m[out_rows], &inv);
        for i in 0..m.len() {
            if i != out_rows && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[out_rows].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        out_rows += 1;
    }
    m.truncate(out_rows);
    m
}

/// Orthogonal projection of `x` onto the complement of `span(basis)`.
/// `basis` must be linearly independent.
pub fn project_out(x: &[Rat], basis: &[RatVec]) -> RatVec {
    if basis.is_empty() {
        return x.to_vec();
    }
    // Solve the Gram system G c = B x, then x - B^T c.
    let k = basis.len();
    let gram = RatMat::new(
        basis.iter().map(|bi| basis.iter().map(|bj| dot(bi, bj)).collect()).collect(),
        k,
    );
    let rhs: RatVec = basis.iter().map(|bi| dot(bi, x)).collect();
    let coef = solve_linear(&gram, &rhs).expect("Gram matrix of an independent family is invertible");
    let mut out = x.to_vec();
    for (c, bi) in coef.iter().zip(basis) {
        for (o, b) in out.iter_mut().zip(bi) {
            *o -= c * b;
        }
    }
    out
}

/// Lexicographic comparison helper used for canonical ordering.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    a.cmp(b)
}

/// Extended rational: the value set of support functions and Hausdorff
/// distances.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sum with the convention `inf + (-inf) = 0`.
    pub fn add(&self, other: &ExtRat) -> ExtRat {
        use ExtRat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => ExtRat::zero(),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }

    pub fn neg(&self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Finite(r) => ExtRat::Finite(-r),
        }
    }

    /// Product with a finite scalar, `0 * inf = 0`.
    pub fn mul_rat(&self, r: &Rat) -> ExtRat {
        match self {
            ExtRat::Finite(a) => ExtRat::Finite(a * r),
            _ if r.is_zero() => ExtRat::zero(),
            _ if r.is_positive() => self.clone(),
            _ => self.neg(),
        }
    }

    /// The extended distance `|x - y|` on the two-point compactified line:
    /// zero when both are the same infinity, infinite when exactly one is.
    pub fn abs_diff(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite((a - b).abs()),
            (a, b) if a == b => ExtRat::zero(),
            _ => ExtRat::PosInf,
        }
    }

    pub fn max(self, other: ExtRat) -> ExtRat {
        std::cmp::max(self, other)
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "inf"),
            ExtRat::Finite(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        assert_eq!(sup_norm(&rvec(&[0, 0, 0])), rat(0));
        assert_eq!(sup_norm(&rvec(&[3, -4])), rat(4));
        assert_eq!(sup_norm(&[ratio(1, 2), ratio(-2, 3)]), ratio(2, 3));
        assert_eq!(dual_norm(&rvec(&[1, -1])), rat(2));
        assert_eq!(dual_norm(&rvec(&[0, 0])), rat(0));
        assert_eq!(dual_norm(&[ratio(1, 3), ratio(1, 3), ratio(1, 3)]), rat(1));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMat::identity(3)), 3);
        assert_eq!(rank(&RatMat::zero(2, 4)), 0);
        assert_eq!(rank(&RatMat::from_ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RatMat::new(vec![], 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&RatMat::from_ints(&[&[1, 0, 0]]));
        assert_eq!(k.len(), 2);
        assert!(k.iter().all(|v| v[0].is_zero()));
        assert!(kernel_basis(&RatMat::identity(3)).is_empty());
        let k = kernel_basis(&RatMat::from_ints(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(!k[0][0].is_zero());
        // Rows with fractions.
        let m = RatMat::new(vec![vec![ratio(1, 2), ratio(1, 3), rat(1)]], 3);
        for v in kernel_basis(&m) {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_linear(&RatMat::identity(2), &rvec(&[5, 7])), Some(rvec(&[5, 7])));
        let x = solve_linear(&RatMat::from_ints(&[&[1, 1]]), &rvec(&[0])).unwrap();
        assert_eq!(&x[0] + &x[1], rat(0));
        assert_eq!(solve_linear(&RatMat::from_ints(&[&[1, 0], &[1, 0]]), &rvec(&[0, 1])), None);
        let m = RatMat::from_ints(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 5]]);
        let b = vec![ratio(1, 2), rat(-1), ratio(7, 3)];
        let x = solve_linear(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn rat_strings() {
        assert_eq!(parse_rat("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), rat(-4));
        assert_eq!(parse_rat(" 2/-4 ").unwrap(), ratio(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert_eq!(fmt_rat(&ratio(6, 4)), "3/2");
        assert_eq!(fmt_rat(&rat(-5)), "-5");
        assert_eq!(parse_vec("1,-1/2,0").unwrap(), vec![rat(1), ratio(-1, 2), rat(0)]);
    }

    #[test]
    fn primitive_and_projection() {
        assert_eq!(primitive(&[ratio(1, 2), ratio(-3, 4)]), rvec(&[2, -3]));
        assert_eq!(project_out(&rvec(&[3, 5]), &[rvec(&[1, 0])]), rvec(&[0, 5]));
        let p = project_out(&rvec(&[1, 0]), &[rvec(&[1, 1])]);
        assert_eq!(p, vec![ratio(1, 2), ratio(-1, 2)]);
    }

    #[test]
    fn extended_arithmetic() {
        use ExtRat::*;
        assert_eq!(PosInf.abs_diff(&PosInf), ExtRat::zero());
        assert_eq!(PosInf.abs_diff(&Finite(rat(3))), PosInf);
        assert_eq!(PosInf.add(&NegInf), ExtRat::zero());
        assert_eq!(PosInf.mul_rat(&rat(0)), ExtRat::zero());
        assert_eq!(PosInf.mul_rat(&rat(-2)), NegInf);
        assert!(Finite(rat(1000)) < PosInf);
        assert!(NegInf < Finite(rat(-1000)));
    }
}
