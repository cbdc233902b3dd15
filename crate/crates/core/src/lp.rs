//! Dense two-phase simplex over the rationals with Bland's rule.
//!
//! Problems have the form `opt c.x  s.t.  Ax <= b` with free `x`. Every
//! outcome carries a certificate that can be checked without trusting the
//! solver:
//!
//! * `Optimal`: a primal point and multipliers `y >= 0` with `y^T A = c` and
//!   `y.b = value` (maximization; see [`LpOutcome`] for minimization).
//! * `Unbounded`: a ray `d` with `Ad <= 0` and `c.d > 0`.
//! * `Infeasible`: a Farkas vector `y >= 0` with `y^T A = 0`, `y.b < 0`.

use num_traits::{One, Signed, Zero};

use crate::exact::{dot, zeros, Rat, RatMat, RatVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub a: RatMat,
    pub b: RatVec,
    pub c: RatVec,
    pub sense: Sense,
}

impl LinearProgram {
    pub fn maximize(a: RatMat, b: RatVec, c: RatVec) -> Self {
        Self { a, b, c, sense: Sense::Maximize }
    }

    pub fn minimize(a: RatMat, b: RatVec, c: RatVec) -> Self {
        Self { a, b, c, sense: Sense::Minimize }
    }
}

/// Result of [`lp_solve`].
///
/// For `Minimize` problems the certificates refer to the equivalent
/// maximization of `-c`: the dual satisfies `y^T A = -c` and `y.b = -value`,
/// and an unbounded ray has `c.ray < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible { farkas: RatVec },
    Unbounded { ray: RatVec },
    Optimal { value: Rat, point: RatVec, dual: RatVec },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<RatVec>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rat], j: usize) -> Rat {
        let mut r = cost[j].clone();
        for (row, &bj) in self.rows.iter().zip(&self.basis) {
            if !cost[bj].is_zero() && !row[j].is_zero() {
                r -= &cost[bj] * &row[j];
            }
        }
        r
    }

    /// Maximizes `cost` from the current basic feasible solution. Columns with
    /// `allowed(j) == false` never enter.
    fn optimize(&mut self, cost: &[Rat], allowed: &dyn Fn(usize) -> bool) -> Phase {
        loop {
            let mut in_basis = vec![false; self.ncols];
            for &b in &self.basis {
                in_basis[b] = true;
            }
            // Bland: lowest-index improving column, lowest-index leaving variable.
            let entering = (0..self.ncols)
                .find(|&j| !in_basis[j] && allowed(j) && self.reduced_cost(cost, j).is_positive());
            let Some(j) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return Phase::Unbounded(j),
            }
        }
    }

    fn value_of(&self, col: usize) -> Rat {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rat::zero, |i| self.rhs(i).clone())
    }
}

enum Solved {
    Infeasible,
    Unbounded(RatVec),
    Optimal(Rat, RatVec, RatVec),
}

/// Core routine: maximize `c.x` over `Ax <= b`.
fn simplex(a: &RatMat, b: &[Rat], c: &[Rat]) -> Solved {
    let m = a.nrows();
    let n = a.ncols;
    assert_eq!(b.len(), m, "rhs length must equal row count");
    assert_eq!(c.len(), n, "objective length must equal column count");

    // Columns: x+ (n), x- (n), slacks (m), artificials (one per negative rhs).
    let slack0 = 2 * n;
    let art0 = slack0 + m;
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let ncols = art0 + negative.len();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = zeros(ncols + 1);
        let sign = if b[i].is_negative() { -Rat::one() } else { Rat::one() };
        for j in 0..n {
            row[j] = &a.rows[i][j] * &sign;
            row[n + j] = -&row[j];
        }
        row[slack0 + i] = sign.clone();
        row[ncols] = &b[i] * &sign;
        if let Some(k) = negative.iter().position(|&r| r == i) {
            row[art0 + k] = Rat::one();
            basis.push(art0 + k);
        } else {
            basis.push(slack0 + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };

    if !negative.is_empty() {
        let mut cost = zeros(ncols);
        for c in cost.iter_mut().skip(art0) {
            *c = -Rat::one();
        }
        // Phase one is bounded above by zero, so it always ends optimal.
        let _ = t.optimize(&cost, &|_| true);
        if (0..t.rows.len()).any(|i| t.basis[i] >= art0 && !t.rhs(i).is_zero()) {
            return Solved::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art0 {
                if let Some(k) = (0..art0).find(|&k| !t.rows[i][k].is_zero()) {
                    t.pivot(i, k);
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut cost = zeros(ncols);
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -&c[j];
    }
    match t.optimize(&cost, &|j| j < art0) {
        Phase::Unbounded(j) => {
            let mut dir = zeros(ncols);
            dir[j] = Rat::one();
            for (row, &bj) in t.rows.iter().zip(&t.basis) {
                dir[bj] = -&row[j];
            }
            let ray = (0..n).map(|k| &dir[k] - &dir[n + k]).collect();
            Solved::Unbounded(ray)
        }
        Phase::Optimal => {
            let point: RatVec = (0..n).map(|k| t.value_of(k) - t.value_of(n + k)).collect();
            let dual: RatVec = (0..m)
                .map(|i| {
                    t.rows.iter().zip(&t.basis).fold(Rat::zero(), |acc, (row, &bj)| {
                        if cost[bj].is_zero() {
                            acc
                        } else {
                            acc + &cost[bj] * &row[slack0 + i]
                        }
                    })
                })
                .collect();
            let value = dot(c, &point);
            Solved::Optimal(value, point, dual)
        }
    }
}

/// Farkas vector for an infeasible system: `y >= 0`, `y^T A = 0`, `y.b = -1`.
fn farkas_vector(a: &RatMat, b: &[Rat]) -> RatVec {
    let m = a.nrows();
    let at = a.transpose();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for col in &at.rows {
        rows.push(col.clone());
        rhs.push(Rat::zero());
        rows.push(col.iter().map(|x| -x).collect());
        rhs.push(Rat::zero());
    }
    for i in 0..m {
        let mut r = zeros(m);
        r[i] = -Rat::one();
        rows.push(r);
        rhs.push(Rat::zero());
    }
    rows.push(b.to_vec());
    rhs.push(-Rat::one());
    rows.push(b.iter().map(|x| -x).collect());
    rhs.push(Rat::one());
    let sys = RatMat::new(rows, m);
    match simplex(&sys, &rhs, &zeros(m)) {
        Solved::Optimal(_, y, _) => y,
        _ => unreachable!("Farkas alternative system is feasible whenever the primal is infeasible"),
    }
}

/// Solves a linear program exactly. Deterministic for a fixed input.
pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    let c: RatVec = match lp.sense {
        Sense::Maximize => lp.c.clone(),
        Sense::Minimize => lp.c.iter().map(|x| -x).collect(),
    };
    match simplex(&lp.a, &lp.b, &c) {
        Solved::Infeasible => LpOutcome::Infeasible { farkas: farkas_vector(&lp.a, &lp.b) },
        Solved::Unbounded(ray) => LpOutcome::Unbounded { ray },
        Solved::Optimal(value, point, dual) => {
            let value = match lp.sense {
                Sense::Maximize => value,
                Sense::Minimize => -value,
            };
            LpOutcome::Optimal { value, point, dual }
        }
    }
}

/// A point of `{x : Ax <= b}`, or `None` when the system is infeasible.
/// An empty system yields the origin.
pub fn lp_feasible(a: &RatMat, b: &[Rat]) -> Option<RatVec> {
    match simplex(a, b, &zeros(a.ncols)) {
        Solved::Optimal(_, x, _) => Some(x),
        _ => None,
    }
}

/// Independent certificate check for an outcome of [`lp_solve`].
pub fn verify_outcome(lp: &LinearProgram, out: &LpOutcome) -> bool {
    let c: RatVec = match lp.sense {
        Sense::Maximize => lp.c.clone(),
        Sense::Minimize => lp.c.iter().map(|x| -x).collect(),
    };
    match out {
        LpOutcome::Infeasible { farkas } => {
            farkas.iter().all(|y| !y.is_negative())
                && lp.a.tmul_vec(farkas).iter().all(Zero::is_zero)
                && dot(farkas, &lp.b).is_negative()
        }
        LpOutcome::Unbounded { ray } => {
            lp.a.mul_vec(ray).iter().all(|x| !x.is_positive()) && dot(&c, ray).is_positive()
        }
        LpOutcome::Optimal { value, point, dual } => {
            let primal_ok = lp.a.mul_vec(point).iter().zip(&lp.b).all(|(ax, bi)| ax <= bi);
            let dual_ok = dual.iter().all(|y| !y.is_negative()) && lp.a.tmul_vec(dual) == c;
            let signed_value = match lp.sense {
                Sense::Maximize => value.clone(),
                Sense::Minimize => -value,
            };
            let gap_ok = dot(dual, &lp.b) == signed_value && dot(&c, point) == signed_value;
            primal_ok && dual_ok && gap_ok
        }
    }
}
