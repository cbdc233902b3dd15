//! Exact Hausdorff distance between polyhedra, separating functionals,
//! quotients by common lineality, and checkable metric identities.
//!
//! The directed distance `sup_{a in A} dist(a, B)` is infinite iff the
//! characteristic cone of `A` is not contained in that of `B`. Otherwise
//! `dist(., B)` is convex and does not increase along recession directions
//! of `B`, so the supremum is attained at a vertex of `A` (vertices are taken
//! in the complement of the lineality space, along which the distance is
//! constant). Each vertex needs one nearest-point LP.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{dual_cone_subset, recession_cone, PolyCone};
use crate::error::{GeomError, Result};
use crate::exact::{
    dot, dual_norm, fmt_rat, kernel_basis, rank, solve_linear, zeros, ExtRat, Rat, RatMat, RatVec,
};
use crate::lp::{lp_solve, LinearProgram, LpOutcome};
use crate::polyhedra::{
    convex_combination, hull_union, minkowski_sum, nearest_point, same_dim, scale, support, Polyhedron, VRep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    AtoB,
    BtoA,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HausdorffResult {
    pub value: ExtRat,
    /// Vertex of one set farthest from the other (finite positive values).
    pub witness_point: Option<RatVec>,
    pub witness_side: Option<Side>,
    /// Functional with `dual_norm = 1` and `|support(A) - support(B)| = value`.
    pub separator: Option<RatVec>,
    pub attained: bool,
    /// For infinite values: which cone containment fails.
    pub explanation: Option<String>,
}

struct Directed {
    value: ExtRat,
    witness: Option<(RatVec, Option<RatVec>)>,
}

fn directed(a: &Polyhedron, b: &Polyhedron, va: &PolyCone, vb: &PolyCone) -> Result<Directed> {
    if !vb.contains_cone(va) {
        return Ok(Directed { value: ExtRat::PosInf, witness: None });
    }
    let mut best: Option<(Rat, RatVec, Option<RatVec>)> = None;
    for v in &a.vrep().vertices {
        let near = nearest_point(b, v)?;
        if best.as_ref().map_or(true, |(d, _, _)| near.distance > *d) {
            best = Some((near.distance, v.clone(), near.separator));
        }
    }
    let (d, v, sep) = best.expect("polyhedra have at least one vertex");
    let witness = if d.is_positive() { Some((v, sep)) } else { None };
    Ok(Directed { value: ExtRat::Finite(d), witness })
}

/// `sup_{a in A} dist(a, B)`.
pub fn directed_hausdorff(a: &Polyhedron, b: &Polyhedron) -> Result<ExtRat> {
    same_dim(a, b)?;
    Ok(directed(a, b, &recession_cone(a), &recession_cone(b))?.value)
}

/// Hausdorff distance with a witness vertex and a separating functional.
pub fn hausdorff(a: &Polyhedron, b: &Polyhedron) -> Result<HausdorffResult> {
    same_dim(a, b)?;
    let (va, vb) = (recession_cone(a), recession_cone(b));
    let ab = directed(a, b, &va, &vb)?;
    let ba = directed(b, a, &vb, &va)?;
    if !ab.value.is_finite() || !ba.value.is_finite() {
        let side = if !ab.value.is_finite() { Side::AtoB } else { Side::BtoA };
        let explanation = match side {
            Side::AtoB => "characteristic cone of A is not contained in that of B",
            Side::BtoA => "characteristic cone of B is not contained in that of A",
        };
        return Ok(HausdorffResult {
            value: ExtRat::PosInf,
            witness_point: None,
            witness_side: Some(side),
            separator: None,
            attained: false,
            explanation: Some(explanation.to_string()),
        });
    }
    let (side, dir) = if ab.value >= ba.value { (Side::AtoB, ab) } else { (Side::BtoA, ba) };
    let value = dir.value.clone();
    let Some((point, sep)) = dir.witness else {
        return Ok(HausdorffResult {
            value,
            witness_point: None,
            witness_side: None,
            separator: None,
            attained: true,
            explanation: None,
        });
    };
    let sep = sep.expect("positive distance yields a separator");
    let gap = delta_gap(a, b, &sep)?;
    Ok(HausdorffResult {
        attained: gap == value,
        value,
        witness_point: Some(point),
        witness_side: Some(side),
        separator: Some(sep),
        explanation: None,
    })
}

/// `|support(A, f) - support(B, f)|` on the extended line; two infinite
/// supports give zero.
pub fn delta_gap(a: &Polyhedron, b: &Polyhedron, f: &[Rat]) -> Result<ExtRat> {
    if dual_norm(f) != Rat::one() {
        return Err(GeomError::InvalidArgument("functional must have dual norm 1".into()));
    }
    Ok(support(a, f)?.abs_diff(&support(b, f)?))
}

/// Projection of `R^n` onto `R^n / Z`, with coordinates taken in a basis of
/// the orthogonal complement of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub subspace_basis: Vec<RatVec>,
    pub complement_basis: Vec<RatVec>,
    /// `(n - k) × n`; annihilates exactly `span(Z)`.
    pub projection: RatMat,
}

impl QuotientMap {
    pub fn new(subspace_basis: Vec<RatVec>, n: usize) -> Result<Self> {
        if subspace_basis.iter().any(|z| z.len() != n) {
            return Err(GeomError::DimensionMismatch(format!("subspace vectors must have dimension {n}")));
        }
        let k = subspace_basis.len();
        if rank(&RatMat::new(subspace_basis.clone(), n)) != k {
            return Err(GeomError::InvalidArgument("subspace basis is linearly dependent".into()));
        }
        if k == n {
            return Err(GeomError::InvalidArgument("quotient by the whole space is zero-dimensional".into()));
        }
        let complement_basis = kernel_basis(&RatMat::new(subspace_basis.clone(), n));
        let p = complement_basis.len();
        let gram = RatMat::new(
            complement_basis.iter().map(|u| complement_basis.iter().map(|w| dot(u, w)).collect()).collect(),
            p,
        );
        // Column j of the projection solves G c = W^T e_j.
        let cols: Vec<RatVec> = (0..n)
            .map(|j| {
                let rhs: RatVec = complement_basis.iter().map(|w| w[j].clone()).collect();
                solve_linear(&gram, &rhs).expect("Gram matrix is invertible")
            })
            .collect();
        let projection = RatMat::new((0..p).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect(), n);
        Ok(Self { subspace_basis, complement_basis, projection })
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(vec![], n).expect("the zero subspace is valid")
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection.ncols
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.nrows()
    }

    pub fn project(&self, x: &[Rat]) -> RatVec {
        self.projection.mul_vec(x)
    }

    /// A representative `W u` of the coset with coordinates `u`.
    pub fn lift(&self, u: &[Rat]) -> RatVec {
        let n = self.ambient_dim();
        let mut x = zeros(n);
        for (ui, w) in u.iter().zip(&self.complement_basis) {
            for (xi, wi) in x.iter_mut().zip(w) {
                *xi += ui * wi;
            }
        }
        x
    }
}

/// Image of `P` in `R^n / Z`. Requires `Z` inside the lineality of `V_P`.
pub fn quotient(p: &Polyhedron, q: &QuotientMap) -> Result<Polyhedron> {
    if p.dim() != q.ambient_dim() {
        return Err(GeomError::DimensionMismatch(format!("set has dimension {}, map {}", p.dim(), q.ambient_dim())));
    }
    let a = &p.hrep().a;
    if let Some(i) = q.subspace_basis.iter().position(|z| a.mul_vec(z).iter().any(|x| !x.is_zero())) {
        return Err(GeomError::HypothesisViolated(format!(
            "subspace vector {i} is not in the lineality space of the characteristic cone"
        )));
    }
    let v = p.vrep();
    Polyhedron::from_vrep(VRep {
        vertices: v.vertices.iter().map(|x| q.project(x)).collect(),
        rays: v.rays.iter().map(|x| q.project(x)).collect(),
        lineality: v.lineality.iter().map(|x| q.project(x)).collect(),
    })
}

/// Distance from coset coordinates `x` to `P` (both in quotient
/// coordinates) in the quotient norm `||[w]|| = min_{z in Z} ||w - z||_inf`.
pub fn quotient_dist_point(p: &Polyhedron, x: &[Rat], q: &QuotientMap) -> Result<Rat> {
    let pd = q.quotient_dim();
    let k = q.subspace_basis.len();
    let n = q.ambient_dim();
    if p.dim() != pd || x.len() != pd {
        return Err(GeomError::DimensionMismatch("quotient coordinates have the wrong dimension".into()));
    }
    // Variables (y, alpha, t): maximize -t subject to y in P and
    // |(W(x - y) + Z alpha)_i| <= t for every ambient coordinate i.
    let nv = pd + k + 1;
    let h = p.hrep();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (r, bi) in h.a.rows.iter().zip(&h.b) {
        let mut row = r.clone();
        row.extend(zeros(k + 1));
        rows.push(row);
        rhs.push(bi.clone());
    }
    let wx = q.lift(x);
    for i in 0..n {
        let w_row: RatVec = q.complement_basis.iter().map(|w| w[i].clone()).collect();
        let z_row: RatVec = q.subspace_basis.iter().map(|z| z[i].clone()).collect();
        let mut up: RatVec = w_row.iter().map(|v| -v).collect();
        up.extend(z_row.iter().cloned());
        up.push(-Rat::one());
        rows.push(up);
        rhs.push(-&wx[i]);
        let mut down = w_row.clone();
        down.extend(z_row.iter().map(|v| -v));
        down.push(-Rat::one());
        rows.push(down);
        rhs.push(wx[i].clone());
    }
    let mut c = zeros(nv);
    c[nv - 1] = -Rat::one();
    match lp_solve(&LinearProgram::maximize(RatMat::new(rows, nv), rhs, c)) {
        LpOutcome::Optimal { value, .. } => Ok(-value),
        _ => unreachable!("distance program is feasible and bounded"),
    }
}

/// Hausdorff distance of two sets given in quotient coordinates, measured in
/// the quotient norm.
pub fn quotient_hausdorff(a: &Polyhedron, b: &Polyhedron, q: &QuotientMap) -> Result<ExtRat> {
    same_dim(a, b)?;
    let (va, vb) = (recession_cone(a), recession_cone(b));
    if !va.contains_cone(&vb) || !vb.contains_cone(&va) {
        return Ok(ExtRat::PosInf);
    }
    let mut best = Rat::zero();
    for (from, to) in [(a, b), (b, a)] {
        for v in &from.vrep().vertices {
            best = best.max(quotient_dist_point(to, v, q)?);
        }
    }
    Ok(ExtRat::Finite(best))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub original: ExtRat,
    pub quotient: ExtRat,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.original == self.quotient
    }
}

/// Computes `d_H(A, B)` and `d_H(A/Z, B/Z)`; they agree when `Z` lies in
/// both characteristic cones.
pub fn verify_quotient_isometry(a: &Polyhedron, b: &Polyhedron, q: &QuotientMap) -> Result<QuotientReport> {
    let aq = quotient(a, q)?;
    let bq = quotient(b, q)?;
    Ok(QuotientReport { original: hausdorff(a, b)?.value, quotient: quotient_hausdorff(&aq, &bq, q)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClauseStatus {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseCheck {
    pub clause: u8,
    pub relation: &'static str,
    pub lhs: ExtRat,
    pub rhs: ExtRat,
    pub status: ClauseStatus,
}

impl fmt::Display for ClauseCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {} {} {}: {:?}", self.clause, self.lhs, self.relation, self.rhs, self.status)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop42Report {
    pub clauses: Vec<ClauseCheck>,
}

impl Prop42Report {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.status != ClauseStatus::Fail)
    }

    pub fn clause(&self, k: u8) -> &ClauseCheck {
        self.clauses.iter().find(|c| c.clause == k).expect("all five clauses are reported")
    }
}

fn le(clause: u8, lhs: ExtRat, rhs: ExtRat) -> ClauseCheck {
    let status = if lhs <= rhs { ClauseStatus::Pass } else { ClauseStatus::Fail };
    ClauseCheck { clause, relation: "<=", lhs, rhs, status }
}

fn eq(clause: u8, lhs: ExtRat, rhs: ExtRat) -> ClauseCheck {
    let status = if lhs == rhs { ClauseStatus::Pass } else { ClauseStatus::Fail };
    ClauseCheck { clause, relation: "=", lhs, rhs, status }
}

/// Metric behaviour of the algebraic operations, one check per clause:
///
/// 1. `d(A⊕B, A'⊕B') <= d(A,A') + d(B,B')`
/// 2. `d(A⊕B, A⊕C) = d(B,C)` when `V*_A ⊇ V*_B ∪ V*_C`
/// 3. `d(max{A,B}, max{A',B'}) <= max(d(A,A'), d(B,B'))`
/// 4. `d(rA, rB) = |r| d(A,B)`
/// 5. `d(μ(A,B,t), μ(A,B,t')) = |t - t'| d(A,B)`
#[allow(clippy::too_many_arguments)]
pub fn verify_prop_4_2(
    a: &Polyhedron,
    b: &Polyhedron,
    c: &Polyhedron,
    a2: &Polyhedron,
    b2: &Polyhedron,
    r: &Rat,
    t: &Rat,
    t2: &Rat,
) -> Result<Prop42Report> {
    for p in [b, c, a2, b2] {
        same_dim(a, p)?;
    }
    let d = |x: &Polyhedron, y: &Polyhedron| hausdorff(x, y).map(|h| h.value);
    let d_aa = d(a, a2)?;
    let d_bb = d(b, b2)?;
    let d_ab = d(a, b)?;

    let c1 = le(1, d(&minkowski_sum(a, b)?, &minkowski_sum(a2, b2)?)?, d_aa.add(&d_bb));

    let (va, vb, vc) = (recession_cone(a), recession_cone(b), recession_cone(c));
    let c2 = if dual_cone_subset(&vb, &va) && dual_cone_subset(&vc, &va) {
        eq(2, d(&minkowski_sum(a, b)?, &minkowski_sum(a, c)?)?, d(b, c)?)
    } else {
        ClauseCheck {
            clause: 2,
            relation: "=",
            lhs: ExtRat::zero(),
            rhs: ExtRat::zero(),
            status: ClauseStatus::HypothesisNotMet,
        }
    };

    let c3 = le(3, d(&hull_union(a, b)?, &hull_union(a2, b2)?)?, d_aa.clone().max(d_bb.clone()));
    let c4 = eq(4, d(&scale(a, r), &scale(b, r))?, d_ab.mul_rat(&r.abs()));
    let c5 = eq(
        5,
        d(&convex_combination(a, b, t)?, &convex_combination(a, b, t2)?)?,
        d_ab.mul_rat(&(t - t2).abs()),
    );
    Ok(Prop42Report { clauses: vec![c1, c2, c3, c4, c5] })
}

/// Human-readable one-liner for a Hausdorff result.
pub fn describe(h: &HausdorffResult) -> String {
    match &h.value {
        ExtRat::Finite(v) => format!("d_H = {}", fmt_rat(v)),
        other => format!("d_H = {other}"),
    }
}
