//! Characteristic cones, their polars, and the component classifier.
//!
//! For a polyhedron `P = {x : Ax <= b}` the characteristic (recession) cone
//! is `{x : Ax <= 0}`, its lineality space is the kernel of `A`, and the
//! functionals with finite supremum on `P` form the polar cone. Two
//! polyhedra lie in the same component of the hyperspace exactly when their
//! characteristic cones coincide, and the homeomorphism type of that
//! component is read off the cone.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{dot, kernel_basis, neg, primitive, project_out, rref_basis, zeros, Rat, RatMat, RatVec};
use crate::polyhedra::{cone_generators, same_dim, support, vrep_to_hrep, HRep, Polyhedron, VRep};

/// A polyhedral cone with both its inequality form (`b = 0`) and its
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    pub hrep: HRep,
    pub rays: Vec<RatVec>,
    pub lineality: Vec<RatVec>,
}

impl PolyCone {
    /// `{x : r.x <= 0 for every row r}`.
    pub fn from_rows(rows: Vec<RatVec>, n: usize) -> Self {
        let (rays, lines) = cone_generators(&rows, n);
        let gens = crate::polyhedra::canonical(vec![zeros(n)], rays, lines, n);
        let b = vec![Rat::zero(); rows.len()];
        Self { hrep: HRep::new(RatMat::new(rows, n), b), rays: gens.rays, lineality: gens.lineality }
    }

    /// `cone(rays) + span(lineality)`, with an irredundant inequality form.
    pub fn from_generators(rays: Vec<RatVec>, lineality: Vec<RatVec>, n: usize) -> Self {
        let p = crate::polyhedra::cone_polyhedron(rays, lineality, n);
        let v = p.vrep().clone();
        let h = p.hrep().clone();
        debug_assert!(h.b.iter().all(Zero::is_zero));
        Self { hrep: h, rays: v.rays, lineality: v.lineality }
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim()
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        self.hrep.a.rows.iter().all(|r| !dot(r, v).is_positive())
    }

    /// `other ⊆ self`, checked on the generators of `other`.
    pub fn contains_cone(&self, other: &PolyCone) -> bool {
        self.dim() == other.dim()
            && other.rays.iter().all(|r| self.contains_vector(r))
            && other.lineality.iter().all(|l| self.contains_vector(l) && self.contains_vector(&neg(l)))
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Every generator `g` has `-g` in the cone.
    pub fn is_subspace(&self) -> bool {
        self.rays.iter().all(|g| self.contains_vector(&neg(g)))
    }

    /// The cone as a polyhedron with apex at the origin.
    pub fn to_polyhedron(&self) -> Polyhedron {
        let n = self.dim();
        Polyhedron::from_trusted(
            self.hrep.clone(),
            VRep { vertices: vec![zeros(n)], rays: self.rays.clone(), lineality: self.lineality.clone() },
        )
    }

    /// Irredundant inequality form computed from the generators.
    pub fn irredundant_hrep(&self) -> HRep {
        vrep_to_hrep(&VRep { vertices: vec![zeros(self.dim())], rays: self.rays.clone(), lineality: self.lineality.clone() })
    }
}

/// Characteristic cone of `P`: inequality rows of `P` with zero right-hand
/// side, generators from `P`'s rays and lineality.
pub fn recession_cone(p: &Polyhedron) -> PolyCone {
    let h = p.hrep();
    let v = p.vrep();
    PolyCone {
        hrep: HRep::new(h.a.clone(), vec![Rat::zero(); h.a.nrows()]),
        rays: v.rays.clone(),
        lineality: v.lineality.clone(),
    }
}

/// Basis of `{x : Ax = 0}` for the cone's inequality rows; this is `-V ∩ V`.
pub fn lineality_space(v: &PolyCone) -> Vec<RatVec> {
    rref_basis(&kernel_basis(&v.hrep.a), v.dim())
}

/// `support(P, f) < inf`.
pub fn dual_cone_contains(p: &Polyhedron, f: &[Rat]) -> Result<bool> {
    Ok(support(p, f)?.is_finite())
}

/// Generators of the polar cone `{f : f.v <= 0 for all v in V}`. Lines of
/// the polar are listed as opposite pairs.
pub fn dual_cone_generators(v: &PolyCone) -> Vec<RatVec> {
    let n = v.dim();
    let mut rows: Vec<RatVec> = v.rays.clone();
    for l in &v.lineality {
        rows.push(l.clone());
        rows.push(neg(l));
    }
    let (rays, lines) = cone_generators(&rows, n);
    let lines = rref_basis(&lines, n);
    let mut out: Vec<RatVec> = rays.iter().map(|r| primitive(&project_out(r, &lines))).collect();
    for l in &lines {
        let l = primitive(l);
        out.push(neg(&l));
        out.push(l);
    }
    out.sort();
    out.dedup();
    out
}

/// Polar containment `inner* ⊆ outer*`: every polar generator of `inner`
/// is nonpositive on the generators of `outer`.
pub fn dual_cone_subset(inner: &PolyCone, outer: &PolyCone) -> bool {
    let outer_rows: Vec<RatVec> = outer.rays.iter().chain(&outer.lineality).cloned().collect();
    let neg_lin: Vec<RatVec> = outer.lineality.iter().map(|l| neg(l)).collect();
    dual_cone_generators(inner)
        .iter()
        .all(|f| outer_rows.iter().chain(&neg_lin).all(|g| !dot(f, g).is_positive()))
}

/// Checks that the characteristic cone equals the intersection of the
/// half-spaces `f <= 0` over the polar generators, and that each such `f`
/// has finite supremum on `P`.
pub fn verify_lemma_3_1(p: &Polyhedron) -> bool {
    let v = recession_cone(p);
    let gens = dual_cone_generators(&v);
    let w = PolyCone::from_rows(gens.clone(), p.dim());
    let equal = cone_equal(&v, &w);
    let finite = gens.iter().all(|f| dual_cone_contains(p, f).unwrap_or(false));
    equal && finite
}

pub fn cone_equal(v: &PolyCone, w: &PolyCone) -> bool {
    v.contains_cone(w) && w.contains_cone(v)
}

/// Same component of the hyperspace: equal characteristic cones.
pub fn same_component(p: &Polyhedron, q: &Polyhedron) -> Result<bool> {
    same_dim(p, q)?;
    Ok(cone_equal(&recession_cone(p), &recession_cone(q)))
}

/// Homeomorphism type of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentTag {
    /// The singleton `{0}`.
    WholeSpace,
    /// The real line.
    Line,
    /// `R × [0, inf)`.
    HalfPlaneStrip,
    /// `Q × [0, inf)` with `Q` the Hilbert cube.
    HilbertCubeRay,
    /// Separable Hilbert space `l2`.
    SeparableHilbert,
    /// Nonseparable Hilbert space; never produced for polyhedra.
    NonseparableHilbert,
}

impl ComponentTag {
    pub fn space(self) -> &'static str {
        match self {
            ComponentTag::WholeSpace => "{0}",
            ComponentTag::Line => "R",
            ComponentTag::HalfPlaneStrip => "R x [0,inf)",
            ComponentTag::HilbertCubeRay => "Q x [0,inf)",
            ComponentTag::SeparableHilbert => "l2",
            ComponentTag::NonseparableHilbert => "l2(kappa)",
        }
    }

    pub fn clause(self) -> &'static str {
        match self {
            ComponentTag::WholeSpace => "Theorem 1(1)",
            ComponentTag::Line => "Theorem 1(2)",
            ComponentTag::HalfPlaneStrip => "Theorem 1(3)",
            ComponentTag::HilbertCubeRay => "Theorem 1(4)",
            ComponentTag::SeparableHilbert => "Theorem 1(5)",
            ComponentTag::NonseparableHilbert => "Theorem 1(6)",
        }
    }
}

impl fmt::Display for ComponentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClass {
    pub tag: ComponentTag,
    pub codim_lineality: usize,
    pub clause: String,
    pub detail: String,
}

/// Classifies the component of `P` from its characteristic cone `V` and
/// the codimension `c` of the lineality space:
///
/// * `V = R^n` gives the singleton component;
/// * `V` not a subspace with `c = 1` (so `V` is a half-space) gives `R`;
/// * `V` a subspace with `c = 1` gives `R × [0, inf)`;
/// * `V` a subspace with `c >= 2` gives `Q × [0, inf)`;
/// * anything else gives `l2`.
pub fn classify(p: &Polyhedron) -> ComponentClass {
    let n = p.dim();
    let v = recession_cone(p);
    let lin = lineality_space(&v);
    let c = n - lin.len();
    let subspace = v.is_subspace();
    let (tag, why) = if c == 0 {
        (ComponentTag::WholeSpace, "the characteristic cone is the whole space, so the component is {X}".to_string())
    } else if !subspace && c == 1 {
        (ComponentTag::Line, "the characteristic cone is a closed half-space, which lies in the component".to_string())
    } else if subspace && c == 1 {
        (
            ComponentTag::HalfPlaneStrip,
            "the characteristic cone is a linear subspace of codimension 1 and lies in the component".to_string(),
        )
    } else if subspace {
        (
            ComponentTag::HilbertCubeRay,
            format!("the characteristic cone is a linear subspace of codimension {c} and lies in the component"),
        )
    } else {
        (
            ComponentTag::SeparableHilbert,
            format!(
                "the characteristic cone is polyhedral but neither a subspace nor a half-space \
                 (lineality codimension {c}); the component is separable and not locally compact"
            ),
        )
    };
    ComponentClass {
        tag,
        codim_lineality: c,
        clause: tag.clause().to_string(),
        detail: format!("{why}; decided from the characteristic cone alone, which belongs to the component of a polyhedron"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rvec;

    fn hp(rows: &[&[i64]], b: &[i64]) -> Polyhedron {
        Polyhedron::from_hrep(HRep::new(RatMat::from_ints(rows), rvec(b))).unwrap()
    }

    fn quadrant() -> Polyhedron {
        hp(&[&[-1, 0], &[0, -1]], &[0, 0])
    }

    fn strip() -> Polyhedron {
        hp(&[&[0, 1], &[0, -1]], &[1, 0])
    }

    fn cube(n: usize) -> Polyhedron {
        let mut rows = Vec::new();
        let mut b = Vec::new();
        for i in 0..n {
            rows.push(crate::exact::unit(n, i));
            b.push(Rat::from_integer(1.into()));
            rows.push(neg(&crate::exact::unit(n, i)));
            b.push(Rat::zero());
        }
        Polyhedron::from_hrep(HRep::new(RatMat::new(rows, n), b)).unwrap()
    }

    #[test]
    fn recession_examples() {
        let v = recession_cone(&cube(2));
        assert!(v.is_trivial());
        let v = recession_cone(&quadrant());
        assert!(cone_equal(&v, &PolyCone::from_rows(vec![rvec(&[-1, 0]), rvec(&[0, -1])], 2)));
        let s = strip();
        let v = recession_cone(&s);
        assert_eq!(v.lineality, vec![rvec(&[1, 0])]);
        assert!(v.rays.is_empty());
        // Definitional spot check: c + g and c + 10 g stay in P.
        for c in &s.vrep().vertices {
            for g in v.lineality.iter().flat_map(|l| [l.clone(), neg(l)]) {
                assert!(s.contains_point(&crate::exact::add(c, &g)));
                let ten = crate::exact::scaled(&g, &Rat::from_integer(10.into()));
                assert!(s.contains_point(&crate::exact::add(c, &ten)));
            }
        }
    }

    #[test]
    fn lineality_examples() {
        assert!(lineality_space(&recession_cone(&quadrant())).is_empty());
        assert_eq!(lineality_space(&recession_cone(&Polyhedron::whole_space(2))).len(), 2);
        assert_eq!(lineality_space(&recession_cone(&hp(&[&[0, 1]], &[0]))), vec![rvec(&[1, 0])]);
    }

    #[test]
    fn dual_cone_membership() {
        assert!(dual_cone_contains(&quadrant(), &rvec(&[-1, -1])).unwrap());
        assert!(!dual_cone_contains(&quadrant(), &rvec(&[1, 0])).unwrap());
        assert!(dual_cone_contains(&cube(2), &rvec(&[7, -3])).unwrap());
    }

    #[test]
    fn polar_generators() {
        assert_eq!(dual_cone_generators(&recession_cone(&quadrant())), vec![rvec(&[-1, 0]), rvec(&[0, -1])]);
        let g = dual_cone_generators(&recession_cone(&cube(2)));
        assert_eq!(g.len(), 4);
        for i in 0..2 {
            assert!(g.contains(&crate::exact::unit(2, i)));
            assert!(g.contains(&neg(&crate::exact::unit(2, i))));
        }
        assert!(dual_cone_generators(&recession_cone(&Polyhedron::whole_space(2))).is_empty());
    }

    #[test]
    fn lemma_3_1_examples() {
        assert!(verify_lemma_3_1(&quadrant()));
        assert!(verify_lemma_3_1(&cube(3)));
        assert!(verify_lemma_3_1(&strip()));
        assert!(verify_lemma_3_1(&Polyhedron::whole_space(2)));
    }

    #[test]
    fn cone_equality() {
        let redundant = hp(&[&[-1, 0], &[0, -1], &[-1, -1], &[-2, -1]], &[0, 0, 0, 0]);
        assert!(cone_equal(&recession_cone(&quadrant()), &recession_cone(&redundant)));
        assert!(!cone_equal(&recession_cone(&quadrant()), &recession_cone(&hp(&[&[0, -1]], &[0]))));
        assert!(cone_equal(&recession_cone(&cube(2)), &recession_cone(&Polyhedron::point(rvec(&[5, 5])))));
    }

    #[test]
    fn components() {
        assert!(same_component(&cube(2), &Polyhedron::point(rvec(&[9, -9]))).unwrap());
        assert!(!same_component(&cube(2), &quadrant()).unwrap());
        let shifted = crate::polyhedra::translate(&quadrant(), &rvec(&[1, 1])).unwrap();
        assert!(same_component(&quadrant(), &shifted).unwrap());
    }

    #[test]
    fn classifier_table() {
        use ComponentTag::*;
        assert_eq!(classify(&Polyhedron::whole_space(2)).tag, WholeSpace);
        assert_eq!(classify(&hp(&[&[1, 0]], &[0])).tag, Line);
        assert_eq!(classify(&hp(&[&[0, 1], &[0, -1]], &[0, 0])).tag, HalfPlaneStrip);
        assert_eq!(classify(&cube(3)).tag, HilbertCubeRay);
        assert_eq!(classify(&quadrant()).tag, SeparableHilbert);
        assert_eq!(classify(&cube(1)).tag, HalfPlaneStrip);
        assert_eq!(classify(&hp(&[&[-1]], &[0])).tag, Line);
        let c = classify(&quadrant());
        assert_eq!(c.clause, "Theorem 1(5)");
        assert_eq!(c.codim_lineality, 2);
    }

    #[test]
    fn half_space_cone_has_one_irredundant_row() {
        let p = hp(&[&[1, 1], &[2, 2]], &[3, 1]);
        assert_eq!(classify(&p).tag, ComponentTag::Line);
        assert_eq!(recession_cone(&p).irredundant_hrep().a.nrows(), 1);
    }

    #[test]
    fn polar_containment() {
        let q = recession_cone(&quadrant());
        let zero = recession_cone(&cube(2));
        // V*_q ⊆ V*_{0} = R^2, but not conversely.
        assert!(dual_cone_subset(&q, &zero));
        assert!(!dual_cone_subset(&zero, &q));
    }
}
