//! Nonempty closed convex polyhedra with lazily converted dual
//! representations, support functions and point distances.

mod dd;
mod ops;

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};
use crate::exact::{dot, dual_norm, scaled, unit, zeros, ExtRat, Rat, RatMat, RatVec};
use crate::lp::{lp_feasible, lp_solve, LinearProgram, LpOutcome};

pub use dd::{dd_convert, prune, vrep_to_hrep};
pub(crate) use dd::{canonical, cone_generators};
pub use ops::{convex_combination, hull_union, minkowski_sum, reflect, scale, translate};

/// `{x : Ax <= b}`. No rows means the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HRep {
    pub a: RatMat,
    pub b: RatVec,
}

impl HRep {
    pub fn new(a: RatMat, b: RatVec) -> Self {
        assert_eq!(a.nrows(), b.len(), "one right-hand side per row");
        Self { a, b }
    }

    pub fn whole_space(n: usize) -> Self {
        Self::new(RatMat::new(vec![], n), vec![])
    }

    pub fn dim(&self) -> usize {
        self.a.ncols
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        self.a.rows.iter().zip(&self.b).all(|(r, bi)| dot(r, x) <= *bi)
    }

    /// Index of the first violated row, if any.
    pub fn first_violated(&self, x: &[Rat]) -> Option<usize> {
        self.a.rows.iter().zip(&self.b).position(|(r, bi)| dot(r, x) > *bi)
    }
}

/// `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VRep {
    pub vertices: Vec<RatVec>,
    pub rays: Vec<RatVec>,
    pub lineality: Vec<RatVec>,
}

impl VRep {
    pub fn point(x: RatVec) -> Self {
        Self { vertices: vec![x], rays: vec![], lineality: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.vertices
            .first()
            .or_else(|| self.rays.first())
            .or_else(|| self.lineality.first())
            .map_or(0, Vec::len)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(GeomError::Empty("generator form has no vertices".into()));
        }
        let all = self.vertices.iter().chain(&self.rays).chain(&self.lineality);
        if let Some(bad) = all.clone().position(|v| v.len() != n) {
            return Err(GeomError::DimensionMismatch(format!("generator {bad} does not have dimension {n}")));
        }
        Ok(())
    }
}

/// `true` iff `{x : Ax <= b}` has no point.
pub fn is_empty(h: &HRep) -> bool {
    lp_feasible(&h.a, &h.b).is_none()
}

/// A nonempty closed convex polyhedron. Both representations are available;
/// whichever was not supplied is computed on first use and cached.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    dim: usize,
    hrep: OnceLock<HRep>,
    vrep: OnceLock<VRep>,
}

impl Polyhedron {
    pub fn from_hrep(h: HRep) -> Result<Self> {
        if h.b.len() != h.a.nrows() {
            return Err(GeomError::DimensionMismatch("b must have one entry per row".into()));
        }
        if is_empty(&h) {
            return Err(GeomError::Empty("inequality system has no solution".into()));
        }
        let dim = h.dim();
        let hrep = OnceLock::new();
        let _ = hrep.set(h);
        Ok(Self { dim, hrep, vrep: OnceLock::new() })
    }

    /// Generators are pruned to the canonical minimal form.
    pub fn from_vrep(v: VRep) -> Result<Self> {
        let dim = v.dim();
        v.check(dim)?;
        let vrep = OnceLock::new();
        let _ = vrep.set(prune(&v));
        Ok(Self { dim, hrep: OnceLock::new(), vrep })
    }

    /// Both forms supplied; they must describe the same set.
    pub fn from_reps(h: HRep, v: VRep) -> Result<Self> {
        let p = Self::from_hrep(h)?;
        let q = Self::from_vrep(v)?;
        if p.dim != q.dim {
            return Err(GeomError::DimensionMismatch("hrep and vrep dimensions differ".into()));
        }
        if !contains(&p, &q) || !contains(&q, &p) {
            return Err(GeomError::Parse("reps inconsistent".into()));
        }
        let _ = p.vrep.set(q.vrep().clone());
        Ok(p)
    }

    pub fn point(x: RatVec) -> Self {
        Self::from_vrep(VRep::point(x)).expect("a point is a valid polyhedron")
    }

    pub fn whole_space(n: usize) -> Self {
        Self::from_hrep(HRep::whole_space(n)).expect("the whole space is nonempty")
    }

    /// Both forms already known to agree (internal constructions only).
    pub(crate) fn from_trusted(h: HRep, v: VRep) -> Self {
        let p = Self { dim: h.dim(), hrep: OnceLock::new(), vrep: OnceLock::new() };
        let _ = p.hrep.set(h);
        let _ = p.vrep.set(v);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| vrep_to_hrep(self.vrep()))
    }

    pub fn vrep(&self) -> &VRep {
        self.vrep.get_or_init(|| {
            dd_convert(self.hrep()).expect("emptiness is rejected at construction")
        })
    }

    pub fn is_bounded(&self) -> bool {
        let v = self.vrep();
        v.rays.is_empty() && v.lineality.is_empty()
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.hrep().satisfied_by(x)
    }

    /// Recession direction test: `A d <= 0`.
    pub fn recedes_along(&self, d: &[Rat]) -> bool {
        self.hrep().a.rows.iter().all(|r| !dot(r, d).is_positive())
    }
}

pub(crate) fn same_dim(p: &Polyhedron, q: &Polyhedron) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(GeomError::DimensionMismatch(format!("{} vs {}", p.dim(), q.dim())));
    }
    Ok(())
}

/// `Q subset of P`: vertices of `Q` satisfy `P`'s inequalities, rays of `Q`
/// recede in `P`, lineality of `Q` is lineality of `P`.
pub fn contains(p: &Polyhedron, q: &Polyhedron) -> bool {
    if p.dim() != q.dim() {
        return false;
    }
    let h = p.hrep();
    let v = q.vrep();
    v.vertices.iter().all(|x| h.satisfied_by(x))
        && v.rays.iter().all(|r| p.recedes_along(r))
        && v.lineality.iter().all(|l| h.a.mul_vec(l).iter().all(Zero::is_zero))
}

/// Set equality by mutual containment.
pub fn same_set(p: &Polyhedron, q: &Polyhedron) -> bool {
    contains(p, q) && contains(q, p)
}

/// `sup {f.x : x in P}`, `+inf` exactly when the LP is unbounded.
pub fn support(p: &Polyhedron, f: &[Rat]) -> Result<ExtRat> {
    if f.len() != p.dim() {
        return Err(GeomError::DimensionMismatch(format!("functional has dimension {}, set {}", f.len(), p.dim())));
    }
    let h = p.hrep();
    let lp = LinearProgram::maximize(h.a.clone(), h.b.clone(), f.to_vec());
    Ok(match lp_solve(&lp) {
        LpOutcome::Optimal { value, .. } => ExtRat::Finite(value),
        LpOutcome::Unbounded { .. } => ExtRat::PosInf,
        LpOutcome::Infeasible { .. } => unreachable!("polyhedra are nonempty"),
    })
}

/// Support value computed from generators alone. Independent of the LP
/// route; used for cross-checks.
pub fn support_from_generators(p: &Polyhedron, f: &[Rat]) -> ExtRat {
    let v = p.vrep();
    if v.lineality.iter().any(|l| !dot(f, l).is_zero()) || v.rays.iter().any(|r| dot(f, r).is_positive()) {
        return ExtRat::PosInf;
    }
    let best = v.vertices.iter().map(|x| dot(f, x)).max().expect("nonempty");
    ExtRat::Finite(best)
}

/// Nearest-point program at `x`: distance, a nearest point and, when the
/// distance is positive, a functional `f` with `dual_norm(f) = 1` and
/// `f.x - support(P, f) = distance`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nearest {
    pub distance: Rat,
    pub point: RatVec,
    pub separator: Option<RatVec>,
}

pub fn nearest_point(p: &Polyhedron, x: &[Rat]) -> Result<Nearest> {
    let n = p.dim();
    if x.len() != n {
        return Err(GeomError::DimensionMismatch(format!("point has dimension {}, set {n}", x.len())));
    }
    let h = p.hrep();
    let m = h.a.nrows();
    // Variables (y, t): maximize -t s.t. Ay <= b, |x_i - y_i| <= t.
    let mut rows = Vec::with_capacity(m + 2 * n);
    let mut rhs = Vec::with_capacity(m + 2 * n);
    for (r, bi) in h.a.rows.iter().zip(&h.b) {
        let mut row = r.clone();
        row.push(Rat::zero());
        rows.push(row);
        rhs.push(bi.clone());
    }
    for i in 0..n {
        let mut lo = scaled(&unit(n, i), &-Rat::one());
        lo.push(-Rat::one());
        rows.push(lo);
        rhs.push(-&x[i]);
        let mut hi = unit(n, i);
        hi.push(-Rat::one());
        rows.push(hi);
        rhs.push(x[i].clone());
    }
    let mut c = zeros(n + 1);
    c[n] = -Rat::one();
    let lp = LinearProgram::maximize(RatMat::new(rows, n + 1), rhs, c);
    let LpOutcome::Optimal { value, point, dual } = lp_solve(&lp) else {
        unreachable!("distance program is feasible and bounded below by zero");
    };
    let distance = -value;
    let separator = if distance.is_positive() {
        // f = mu_plus - mu_minus, the multipliers of the two box rows.
        let f: RatVec = (0..n).map(|i| &dual[m + 2 * i] - &dual[m + 2 * i + 1]).collect();
        let norm = dual_norm(&f);
        debug_assert!(!norm.is_zero());
        Some(scaled(&f, &norm.recip()))
    } else {
        None
    };
    Ok(Nearest { distance, point: point[..n].to_vec(), separator })
}

/// `min {||x - y||_inf : y in P}`.
pub fn dist_point(p: &Polyhedron, x: &[Rat]) -> Result<Rat> {
    Ok(nearest_point(p, x)?.distance)
}

/// The polyhedron's recession directions in generator form, as a polyhedron
/// with apex at the origin.
pub fn cone_polyhedron(rays: Vec<RatVec>, lineality: Vec<RatVec>, n: usize) -> Polyhedron {
    Polyhedron::from_vrep(VRep { vertices: vec![zeros(n)], rays, lineality }).expect("cones contain the origin")
}
