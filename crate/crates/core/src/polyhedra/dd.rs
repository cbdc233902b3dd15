//! Double description: conversion between inequality and generator form.
//!
//! Both directions go through homogenization. A polyhedron `{x : Ax <= b}`
//! is the `x0 = 1` slice of the cone `{(x, x0) : Ax - b x0 <= 0, x0 >= 0}`;
//! generators of that cone with `x0 > 0` are vertices, those with `x0 = 0`
//! are rays. The reverse direction computes the polar of the homogenized
//! generator cone with the same routine.

use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};
use crate::exact::{
    dot, is_zero_vec, neg, primitive, project_out, rank, rref_basis, scaled, unit, Rat, RatMat,
    RatVec,
};
use crate::lp::lp_feasible;

use super::{HRep, VRep};

/// Generators of the cone `{x in R^d : r.x <= 0 for every r in rows}`.
///
/// Returns `(rays, lines)`: extreme rays of the pointed part (primitive
/// integer vectors) and a basis of the lineality space. Constraints are
/// inserted one at a time; two rays are combined only when they span a
/// two-dimensional face, decided exactly by a rank test on the constraints
/// active at both.
pub(crate) fn cone_generators(rows: &[RatVec], d: usize) -> (Vec<RatVec>, Vec<RatVec>) {
    let mut lines: Vec<RatVec> = (0..d).map(|i| unit(d, i)).collect();
    let mut rays: Vec<RatVec> = Vec::new();
    let mut processed: Vec<RatVec> = Vec::new();

    for a in rows {
        if is_zero_vec(a) {
            continue;
        }
        if let Some(k) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            // A line leaves the lineality space: half of it becomes a ray and
            // every other generator is moved into the hyperplane a.x = 0.
            let l = lines.remove(k);
            let al = dot(a, &l);
            for g in lines.iter_mut().chain(rays.iter_mut()) {
                let ag = dot(a, g);
                if !ag.is_zero() {
                    let moved: RatVec = g.iter().zip(&l).map(|(gi, li)| gi - &ag / &al * li).collect();
                    *g = primitive(&moved);
                }
            }
            let r0 = if al.is_positive() { neg(&l) } else { l };
            rays.push(primitive(&r0));
            processed.push(a.clone());
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg_idx: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<RatVec> =
            (0..rays.len()).filter(|&i| !vals[i].is_positive()).map(|i| rays[i].clone()).collect();
        if !pos.is_empty() && !neg_idx.is_empty() {
            let face_rank = d as isize - lines.len() as isize - 2;
            for &p in &pos {
                for &q in &neg_idx {
                    if adjacent(&processed, &rays[p], &rays[q], d) as isize == face_rank {
                        let comb: RatVec = rays[q]
                            .iter()
                            .zip(&rays[p])
                            .map(|(rq, rp)| &vals[p] * rq - &vals[q] * rp)
                            .collect();
                        next.push(primitive(&comb));
                    }
                }
            }
        }
        rays = next;
        processed.push(a.clone());
    }
    rays.sort();
    rays.dedup();
    (rays, lines)
}

/// Rank of the constraints active at both rays.
fn adjacent(processed: &[RatVec], p: &[Rat], q: &[Rat], d: usize) -> usize {
    let active: Vec<RatVec> = processed
        .iter()
        .filter(|r| dot(r, p).is_zero() && dot(r, q).is_zero())
        .cloned()
        .collect();
    rank(&RatMat::new(active, d))
}

/// Puts a generator description into canonical form: RREF lineality basis,
/// vertices and rays projected onto the orthogonal complement of the
/// lineality space, rays primitive, everything sorted and deduplicated.
pub(crate) fn canonical(vertices: Vec<RatVec>, rays: Vec<RatVec>, lineality: Vec<RatVec>, n: usize) -> VRep {
    let lineality = rref_basis(&lineality, n);
    let mut vertices: Vec<RatVec> = vertices.iter().map(|v| project_out(v, &lineality)).collect();
    vertices.sort();
    vertices.dedup();
    let mut rays: Vec<RatVec> = rays
        .iter()
        .map(|r| primitive(&project_out(r, &lineality)))
        .filter(|r| !is_zero_vec(r))
        .collect();
    rays.sort();
    rays.dedup();
    VRep { vertices, rays, lineality }
}

/// H-representation to canonical minimal V-representation.
pub fn dd_convert(h: &HRep) -> Result<VRep> {
    let n = h.dim();
    let mut rows: Vec<RatVec> = h
        .a
        .rows
        .iter()
        .zip(&h.b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(-bi);
            row
        })
        .collect();
    let mut x0 = vec![Rat::zero(); n + 1];
    x0[n] = -Rat::one();
    // x0 >= 0 first, so the homogenizing coordinate never stays a line.
    rows.insert(0, x0);
    let (rays, lines) = cone_generators(&rows, n + 1);

    let mut vertices = Vec::new();
    let mut out_rays = Vec::new();
    for r in rays {
        let (x, last) = r.split_at(n);
        if last[0].is_zero() {
            out_rays.push(x.to_vec());
        } else {
            vertices.push(scaled(x, &last[0].recip()));
        }
    }
    if vertices.is_empty() {
        return Err(GeomError::Empty("inequality system has no solution".into()));
    }
    let lineality = lines.iter().map(|l| l[..n].to_vec()).collect();
    Ok(canonical(vertices, out_rays, lineality, n))
}

/// V-representation to an irredundant H-representation.
///
/// Facets come from the extreme rays of the polar of the homogenized cone,
/// equalities from its lineality space (each as a pair of opposite rows).
pub fn vrep_to_hrep(v: &VRep) -> HRep {
    let n = v.dim();
    let lift = |x: &RatVec, last: i64| {
        let mut y = x.clone();
        y.push(Rat::from_integer(last.into()));
        y
    };
    let mut gens: Vec<RatVec> = Vec::new();
    gens.extend(v.vertices.iter().map(|x| lift(x, 1)));
    gens.extend(v.rays.iter().map(|x| lift(x, 0)));
    for l in &v.lineality {
        gens.push(lift(l, 0));
        gens.push(lift(&neg(l), 0));
    }
    let (prays, plines) = cone_generators(&gens, n + 1);
    let plines = rref_basis(&plines, n + 1);

    let mut rows: Vec<(RatVec, Rat)> = Vec::new();
    let mut push = |y: &RatVec| {
        let y = primitive(y);
        let (a, last) = y.split_at(n);
        if !is_zero_vec(a) {
            rows.push((a.to_vec(), -&last[0]));
        }
    };
    for l in &plines {
        push(l);
        push(&neg(l));
    }
    for r in &prays {
        push(&project_out(r, &plines));
    }
    rows.sort();
    rows.dedup();
    remove_redundant_rows(rows, n)
}

/// Drops rows implied by the remaining ones, one at a time.
pub(crate) fn remove_redundant_rows(mut rows: Vec<(RatVec, Rat)>, n: usize) -> HRep {
    let mut i = 0;
    while i < rows.len() {
        let others: Vec<&(RatVec, Rat)> = rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r).collect();
        let a = RatMat::new(others.iter().map(|(r, _)| r.clone()).collect(), n);
        let b: RatVec = others.iter().map(|(_, bi)| bi.clone()).collect();
        // Row i is redundant iff max row_i.x over the others is <= b_i.
        let lp = crate::lp::LinearProgram::maximize(a, b, rows[i].0.clone());
        let redundant = match crate::lp::lp_solve(&lp) {
            crate::lp::LpOutcome::Optimal { value, .. } => value <= rows[i].1,
            _ => false,
        };
        if redundant {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    HRep::new(
        RatMat::new(rows.iter().map(|(r, _)| r.clone()).collect(), n),
        rows.into_iter().map(|(_, b)| b).collect(),
    )
}

/// Whether `target = sum lambda_i v_i + sum mu_j r_j + sum nu_k l_k` with
/// `lambda >= 0`, `sum lambda = 1` (only when `affine`), `mu >= 0`, `nu` free.
fn in_generated_set(target: &[Rat], points: &[&RatVec], rays: &[&RatVec], lines: &[RatVec], affine: bool) -> bool {
    let n = target.len();
    let nv = points.len() + rays.len() + lines.len();
    let mut rows: Vec<RatVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let column = |i: usize| -> RatVec {
        if i < points.len() {
            points[i].clone()
        } else if i < points.len() + rays.len() {
            rays[i - points.len()].clone()
        } else {
            lines[i - points.len() - rays.len()].clone()
        }
    };
    let cols: Vec<RatVec> = (0..nv).map(column).collect();
    for k in 0..n {
        let row: RatVec = cols.iter().map(|c| c[k].clone()).collect();
        rows.push(row.clone());
        rhs.push(target[k].clone());
        rows.push(neg(&row));
        rhs.push(-&target[k]);
    }
    if affine {
        let mut row = vec![Rat::zero(); nv];
        for x in row.iter_mut().take(points.len()) {
            *x = Rat::one();
        }
        rows.push(row.clone());
        rhs.push(Rat::one());
        rows.push(neg(&row));
        rhs.push(-Rat::one());
    }
    for i in 0..points.len() + rays.len() {
        let mut row = vec![Rat::zero(); nv];
        row[i] = -Rat::one();
        rows.push(row);
        rhs.push(Rat::zero());
    }
    lp_feasible(&RatMat::new(rows, nv), &rhs).is_some()
}

/// Minimal canonical generator form of `conv(V) + cone(R) + span(L)` by LP
/// membership tests. Rays whose negation is generated join the lineality.
pub fn prune(v: &VRep) -> VRep {
    let n = v.dim();
    let rays_all: Vec<&RatVec> = v.rays.iter().collect();
    let mut lin: Vec<RatVec> = v.lineality.clone();
    for r in &v.rays {
        if in_generated_set(&neg(r), &[], &rays_all, &v.lineality, false) {
            lin.push(r.clone());
        }
    }
    let pre = canonical(v.vertices.clone(), v.rays.clone(), lin, n);

    let mut rays = pre.rays.clone();
    let mut i = 0;
    while i < rays.len() {
        let others: Vec<&RatVec> = rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r).collect();
        if in_generated_set(&rays[i], &[], &others, &pre.lineality, false) {
            rays.remove(i);
        } else {
            i += 1;
        }
    }
    let mut vertices = pre.vertices.clone();
    let ray_refs: Vec<&RatVec> = rays.iter().collect();
    let mut i = 0;
    while i < vertices.len() {
        let others: Vec<&RatVec> = vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r).collect();
        if !others.is_empty() && in_generated_set(&vertices[i], &others, &ray_refs, &pre.lineality, true) {
            vertices.remove(i);
        } else {
            i += 1;
        }
    }
    VRep { vertices, rays, lineality: pre.lineality }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rvec};

    fn h(rows: &[&[i64]], b: &[i64]) -> HRep {
        HRep::new(RatMat::from_ints(rows), rvec(b))
    }

    #[test]
    fn square_has_four_vertices() {
        let v = dd_convert(&h(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 0, 1, 0])).unwrap();
        assert_eq!(v.vertices, vec![rvec(&[0, 0]), rvec(&[0, 1]), rvec(&[1, 0]), rvec(&[1, 1])]);
        assert!(v.rays.is_empty() && v.lineality.is_empty());
    }

    #[test]
    fn quadrant() {
        let v = dd_convert(&h(&[&[-1, 0], &[0, -1]], &[0, 0])).unwrap();
        assert_eq!(v.vertices, vec![rvec(&[0, 0])]);
        assert_eq!(v.rays, vec![rvec(&[0, 1]), rvec(&[1, 0])]);
        assert!(v.lineality.is_empty());
    }

    #[test]
    fn strip_has_lineality() {
        let v = dd_convert(&h(&[&[0, 1], &[0, -1]], &[1, 0])).unwrap();
        assert_eq!(v.lineality, vec![rvec(&[1, 0])]);
        assert_eq!(v.vertices, vec![rvec(&[0, 0]), rvec(&[0, 1])]);
        assert!(v.rays.is_empty());
    }

    #[test]
    fn whole_space_and_empty() {
        let v = dd_convert(&HRep::new(RatMat::new(vec![], 2), vec![])).unwrap();
        assert_eq!(v.lineality.len(), 2);
        assert_eq!(v.vertices, vec![rvec(&[0, 0])]);
        assert!(dd_convert(&h(&[&[1], &[-1]], &[0, -1])).is_err());
    }

    #[test]
    fn triangle_to_hrep() {
        let v = VRep { vertices: vec![rvec(&[0, 0]), rvec(&[1, 0]), rvec(&[0, 1])], rays: vec![], lineality: vec![] };
        let hr = vrep_to_hrep(&v);
        assert_eq!(hr.a.nrows(), 3);
        let back = dd_convert(&hr).unwrap();
        assert_eq!(back, prune(&v));
    }

    #[test]
    fn ray_and_line_to_hrep() {
        let v = VRep { vertices: vec![rvec(&[0])], rays: vec![rvec(&[1])], lineality: vec![] };
        let hr = vrep_to_hrep(&v);
        assert_eq!(hr.a.rows, vec![rvec(&[-1])]);
        assert_eq!(hr.b, vec![rat(0)]);

        let v = VRep { vertices: vec![rvec(&[0, 0])], rays: vec![], lineality: vec![rvec(&[1, 0])] };
        let mut hr = vrep_to_hrep(&v);
        hr.a.rows.sort();
        assert_eq!(hr.a.rows, vec![rvec(&[0, -1]), rvec(&[0, 1])]);
        assert_eq!(hr.b, vec![rat(0), rat(0)]);
    }

    #[test]
    fn prune_merges_opposite_rays_and_drops_interior_points() {
        let v = VRep {
            vertices: vec![rvec(&[0, 0]), rvec(&[1, 1]), rvec(&[0, 1]), rvec(&[5, 1])],
            rays: vec![rvec(&[1, 0]), rvec(&[-2, 0]), rvec(&[1, 1])],
            lineality: vec![],
        };
        let p = prune(&v);
        assert_eq!(p.lineality, vec![rvec(&[1, 0])]);
        assert_eq!(p.rays, vec![rvec(&[0, 1])]);
        assert_eq!(p.vertices, vec![rvec(&[0, 0])]);
    }

    #[test]
    fn cone_generators_of_polar_quadrant() {
        let (rays, lines) = cone_generators(&[rvec(&[1, 0]), rvec(&[0, 1])], 2);
        assert!(lines.is_empty());
        assert_eq!(rays, vec![rvec(&[-1, 0]), rvec(&[0, -1])]);
    }
}
