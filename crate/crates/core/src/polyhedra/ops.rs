//! Minkowski sum, closed convex hull of a union, scaling, convex
//! combination and translation.

use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};
use crate::exact::{add, scaled, zeros, Rat, RatVec};

use super::{same_dim, HRep, Polyhedron, VRep};

/// `P + Q`. For polyhedra the sum is already closed.
pub fn minkowski_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    same_dim(p, q)?;
    let (vp, vq) = (p.vrep(), q.vrep());
    let vertices = vp.vertices.iter().flat_map(|a| vq.vertices.iter().map(move |b| add(a, b))).collect();
    let rays = vp.rays.iter().chain(&vq.rays).cloned().collect();
    let lineality = vp.lineality.iter().chain(&vq.lineality).cloned().collect();
    Polyhedron::from_vrep(VRep { vertices, rays, lineality })
}

/// Closed convex hull of `P ∪ Q`: the union of generators.
pub fn hull_union(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    same_dim(p, q)?;
    let (vp, vq) = (p.vrep(), q.vrep());
    let cat = |a: &[RatVec], b: &[RatVec]| a.iter().chain(b).cloned().collect::<Vec<_>>();
    Polyhedron::from_vrep(VRep {
        vertices: cat(&vp.vertices, &vq.vertices),
        rays: cat(&vp.rays, &vq.rays),
        lineality: cat(&vp.lineality, &vq.lineality),
    })
}

/// `rP = {rx : x in P}`; `0P = {0}`.
pub fn scale(p: &Polyhedron, r: &Rat) -> Polyhedron {
    let n = p.dim();
    if r.is_zero() {
        return Polyhedron::point(zeros(n));
    }
    let v = p.vrep();
    let out = Polyhedron::from_vrep(VRep {
        vertices: v.vertices.iter().map(|x| scaled(x, r)).collect(),
        rays: v.rays.iter().map(|x| scaled(x, r)).collect(),
        lineality: v.lineality.clone(),
    })
    .expect("scaling keeps vertices");
    if let Some(h) = p.hrep.get() {
        // x in rP  iff  A(x/r) <= b  iff  sign(r) A x <= |r| b.
        let sign = if r.is_positive() { Rat::one() } else { -Rat::one() };
        let a = crate::exact::RatMat::new(h.a.rows.iter().map(|row| scaled(row, &sign)).collect(), n);
        let b = h.b.iter().map(|bi| bi * r.abs()).collect();
        let _ = out.hrep.set(HRep::new(a, b));
    }
    out
}

/// The Minkowski operation `(1 - t)P ⊕ tQ`, `t in [0, 1]`.
pub fn convex_combination(p: &Polyhedron, q: &Polyhedron, t: &Rat) -> Result<Polyhedron> {
    same_dim(p, q)?;
    if t.is_negative() || *t > Rat::one() {
        return Err(GeomError::InvalidArgument(format!("t = {t} is outside [0, 1]")));
    }
    minkowski_sum(&scale(p, &(Rat::one() - t)), &scale(q, t))
}

/// `P + {v}`. Both cached representations are carried over.
pub fn translate(p: &Polyhedron, v: &[Rat]) -> Result<Polyhedron> {
    if v.len() != p.dim() {
        return Err(GeomError::DimensionMismatch(format!("vector has dimension {}, set {}", v.len(), p.dim())));
    }
    let out = Polyhedron { dim: p.dim, hrep: Default::default(), vrep: Default::default() };
    if let Some(h) = p.hrep.get() {
        let b = h.a.rows.iter().zip(&h.b).map(|(row, bi)| bi + crate::exact::dot(row, v)).collect();
        let _ = out.hrep.set(HRep::new(h.a.clone(), b));
    }
    if let Some(g) = p.vrep.get() {
        // Canonical form keeps vertices orthogonal to the lineality space.
        let moved: Vec<RatVec> = g.vertices.iter().map(|x| add(x, v)).collect();
        let _ = out.vrep.set(super::canonical(moved, g.rays.clone(), g.lineality.clone(), p.dim));
    }
    Ok(out)
}

/// Reflection through the origin, `-P`.
pub fn reflect(p: &Polyhedron) -> Polyhedron {
    scale(p, &-Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, rvec, RatMat};
    use crate::exact::ExtRat;
    use crate::polyhedra::{same_set, support};

    fn hp(rows: &[&[i64]], b: &[i64]) -> Polyhedron {
        Polyhedron::from_hrep(HRep::new(RatMat::from_ints(rows), rvec(b))).unwrap()
    }

    fn vp(vs: &[&[i64]], rs: &[&[i64]]) -> Polyhedron {
        Polyhedron::from_vrep(VRep {
            vertices: vs.iter().map(|v| rvec(v)).collect(),
            rays: rs.iter().map(|v| rvec(v)).collect(),
            lineality: vec![],
        })
        .unwrap()
    }

    fn square(lo: i64, hi: i64) -> Polyhedron {
        hp(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[hi, -lo, hi, -lo])
    }

    fn quadrant() -> Polyhedron {
        hp(&[&[-1, 0], &[0, -1]], &[0, 0])
    }

    #[test]
    fn sums() {
        let s = minkowski_sum(&square(0, 1), &Polyhedron::point(rvec(&[3, 4]))).unwrap();
        assert!(same_set(&s, &hp(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[4, -3, 5, -4])));
        let s = minkowski_sum(&vp(&[&[0, 0], &[1, 0]], &[]), &vp(&[&[0, 0], &[0, 1]], &[])).unwrap();
        assert!(same_set(&s, &square(0, 1)));
        assert_eq!(s.vrep().vertices.len(), 4);
        let s = minkowski_sum(&quadrant(), &quadrant()).unwrap();
        assert!(same_set(&s, &quadrant()));
    }

    #[test]
    fn hulls() {
        let h = hull_union(&Polyhedron::point(rvec(&[0, 0])), &Polyhedron::point(rvec(&[1, 1]))).unwrap();
        assert!(same_set(&h, &vp(&[&[0, 0], &[1, 1]], &[])));
        assert!(same_set(&hull_union(&square(0, 1), &square(0, 1)).unwrap(), &square(0, 1)));
        let h = hull_union(&quadrant(), &Polyhedron::point(rvec(&[3, -1]))).unwrap();
        assert_eq!(h.vrep().vertices, vec![rvec(&[0, 0]), rvec(&[3, -1])]);
        assert_eq!(h.vrep().rays, vec![rvec(&[0, 1]), rvec(&[1, 0])]);
        // Independent H-form of the expected set via polarity.
        let expected = Polyhedron::from_hrep(crate::polyhedra::vrep_to_hrep(&VRep {
            vertices: vec![rvec(&[0, 0]), rvec(&[3, -1])],
            rays: vec![rvec(&[1, 0]), rvec(&[0, 1])],
            lineality: vec![],
        }))
        .unwrap();
        assert!(same_set(&h, &expected));
    }

    #[test]
    fn scaling() {
        assert!(same_set(&scale(&square(0, 1), &rat(2)), &square(0, 2)));
        assert!(same_set(&scale(&square(0, 1), &rat(1)), &square(0, 1)));
        assert!(same_set(&scale(&quadrant(), &rat(-1)), &hp(&[&[1, 0], &[0, 1]], &[0, 0])));
        let z = scale(&quadrant(), &rat(0));
        assert_eq!(z.vrep().vertices, vec![rvec(&[0, 0])]);
        // The cached H-form agrees with the generator form.
        let s = scale(&square(1, 2), &ratio(-3, 2));
        let fresh = Polyhedron::from_vrep(s.vrep().clone()).unwrap();
        assert!(same_set(&s, &fresh));
        assert!(crate::polyhedra::contains(&fresh, &s));
    }

    #[test]
    fn combinations() {
        let p = square(0, 1);
        let q = square(2, 5);
        assert!(same_set(&convex_combination(&p, &q, &rat(0)).unwrap(), &p));
        assert!(same_set(&convex_combination(&p, &q, &rat(1)).unwrap(), &q));
        let c = convex_combination(&Polyhedron::point(rvec(&[0, 0])), &Polyhedron::point(rvec(&[4, 0])), &ratio(1, 4)).unwrap();
        assert_eq!(c.vrep().vertices, vec![rvec(&[1, 0])]);
        assert!(convex_combination(&p, &q, &rat(2)).is_err());
    }

    #[test]
    fn translations() {
        let p = square(0, 1);
        assert!(same_set(&translate(&p, &rvec(&[0, 0])).unwrap(), &p));
        let t = translate(&Polyhedron::point(rvec(&[1, 2])), &rvec(&[3, 4])).unwrap();
        assert_eq!(t.vrep().vertices, vec![rvec(&[4, 6])]);
        let t = translate(&p, &rvec(&[1, -1])).unwrap();
        assert_eq!(t.hrep().b, rvec(&[2, -1, 0, 1]));
        assert!(same_set(&t, &Polyhedron::from_vrep(t.vrep().clone()).unwrap()));
    }

    #[test]
    fn negative_scalar_breaks_homogeneity() {
        let pt = Polyhedron::point(rvec(&[1, 0]));
        let f = rvec(&[1, 0]);
        assert_eq!(support(&reflect(&pt), &f).unwrap(), ExtRat::Finite(rat(-1)));
        assert_eq!(support(&pt, &f).unwrap().mul_rat(&rat(-1)), ExtRat::Finite(rat(-1)));
        let seg = vp(&[&[0, 0], &[1, 0]], &[]);
        assert_eq!(support(&reflect(&seg), &f).unwrap(), ExtRat::Finite(rat(0)));
        assert_eq!(support(&seg, &f).unwrap().mul_rat(&rat(-1)), ExtRat::Finite(rat(-1)));
    }
}
