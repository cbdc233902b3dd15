//! A uniformly separated sequence near a pointed cone, and a finite
//! biorthogonal family of polytopes.
//!
//! For a pointed cone `V` that is not a subspace we build a functional `h`
//! positive on `V \ {0}`, a facet normal `f` with `sup f(V) = 0` whose facet
//! contains a generator `x` with `h(x) = 1`, and a short vector `y` with
//! `h(y) = 0 < f(y)`. The sets `C_n = cconv(V ∪ {3^n x + y})` stay within
//! `ε = ||y||` of `V` but are pairwise at distance at least `f(y) / 2`.

use num_traits::{One, Signed, Zero};

use crate::cones::{dual_cone_generators, PolyCone};
use crate::error::{GeomError, Result};
use crate::exact::{
    add, dot, dual_norm, kernel_basis, lex_cmp, neg, scaled, sup_norm, unit, ExtRat, Rat, RatMat, RatVec,
};
use crate::lp::lp_feasible;
use crate::metric::hausdorff;
use crate::polyhedra::{hull_union, Polyhedron, VRep};

#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub cone: PolyCone,
    pub h: RatVec,
    pub f: RatVec,
    pub x: RatVec,
    pub y: RatVec,
    pub epsilon: Rat,
    /// `C_0, ..., C_N`.
    pub members: Vec<Polyhedron>,
    pub delta: Rat,
}

impl WitnessFamily {
    /// `c_n = 3^n x + y`.
    pub fn apex(&self, n: usize) -> RatVec {
        add(&scaled(&self.x, &pow3(n)), &self.y)
    }
}

fn pow3(n: usize) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(3u8).pow(n as u32))
}

fn check_pointed(v: &PolyCone) -> Result<()> {
    if !v.is_pointed() {
        return Err(GeomError::NotPointed);
    }
    if v.is_trivial() {
        return Err(GeomError::NoFacet);
    }
    Ok(())
}

/// A functional strictly positive on every nonzero vector of `V`.
pub fn build_h(v: &PolyCone) -> Result<RatVec> {
    check_pointed(v)?;
    let n = v.dim();
    let mut h = vec![Rat::zero(); n];
    for e in &v.rays {
        // h_e . g >= 0 on every generator g, and h_e . e >= 1.
        let mut rows: Vec<RatVec> = v.rays.iter().map(|g| neg(g)).collect();
        rows.push(neg(e));
        let mut b = vec![Rat::zero(); v.rays.len()];
        b.push(-Rat::one());
        let he = lp_feasible(&RatMat::new(rows, n), &b).ok_or(GeomError::NotPointed)?;
        h = add(&h, &he);
    }
    Ok(h)
}

/// A facet normal `f` of `V` (dual norm 1) and a generator `x` on that
/// facet with `h.x = 1`.
pub fn build_f_x(v: &PolyCone, h: &[Rat]) -> Result<(RatVec, RatVec)> {
    check_pointed(v)?;
    let mut normals = dual_cone_generators(v);
    normals.sort_by(|a, b| lex_cmp(b, a));
    let mut rays = v.rays.clone();
    rays.sort_by(|a, b| lex_cmp(a, b));
    for f in &normals {
        if let Some(g) = rays.iter().find(|g| dot(f, g).is_zero()) {
            let hg = dot(h, g);
            if !hg.is_positive() {
                return Err(GeomError::InvalidArgument("h is not positive on the cone".into()));
            }
            let f = scaled(f, &(Rat::one() / dual_norm(f)));
            return Ok((f, scaled(g, &(Rat::one() / hg))));
        }
    }
    Err(GeomError::NoFacet)
}

/// `y` with `h.y = 0`, `f.y > 0` and `sup_norm(y) = ε`.
pub fn build_y(h: &[Rat], f: &[Rat], epsilon: &Rat) -> Result<RatVec> {
    if !epsilon.is_positive() || *epsilon >= Rat::one() {
        return Err(GeomError::InvalidArgument(format!("epsilon = {epsilon} is outside (0, 1)")));
    }
    if h.len() != f.len() {
        return Err(GeomError::DimensionMismatch("h and f differ in dimension".into()));
    }
    let n = h.len();
    let mut best: Option<RatVec> = None;
    for k in kernel_basis(&RatMat::new(vec![h.to_vec()], n)) {
        for cand in [k.clone(), neg(&k)] {
            let y = scaled(&cand, &(epsilon / sup_norm(&cand)));
            if best.as_ref().map_or(true, |b| dot(f, &y) > dot(f, b)) {
                best = Some(y);
            }
        }
    }
    match best {
        Some(y) if dot(f, &y).is_positive() => Ok(y),
        _ => Err(GeomError::DependentFunctionals),
    }
}

/// `C_n = cconv(V ∪ {3^n x + y})` for `n = 0..=big_n`. `h` is scaled to
/// dual norm 1; the separation bound fails for larger `h`.
pub fn witness_family(v: &PolyCone, epsilon: &Rat, big_n: usize) -> Result<WitnessFamily> {
    if v.dim() < 2 {
        return Err(GeomError::InvalidArgument("the cone must live in dimension at least 2".into()));
    }
    check_pointed(v)?;
    if v.is_subspace() {
        return Err(GeomError::HypothesisViolated("the cone is a subspace".into()));
    }
    let h = build_h(v)?;
    let h = scaled(&h, &(Rat::one() / dual_norm(&h)));
    let (f, x) = build_f_x(v, &h)?;
    let y = build_y(&h, &f, epsilon)?;
    let delta = dot(&f, &y) / Rat::from_integer(2.into());
    let base = v.to_polyhedron();
    let mut fam = WitnessFamily {
        cone: v.clone(),
        h,
        f,
        x,
        y,
        epsilon: epsilon.clone(),
        members: Vec::with_capacity(big_n + 1),
        delta,
    };
    for n in 0..=big_n {
        let c = fam.apex(n);
        fam.members.push(hull_union(&base, &Polyhedron::point(c))?);
    }
    Ok(fam)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: usize,
    pub m: Option<usize>,
    pub value: ExtRat,
    pub bound: Rat,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    /// `d_H(C_n, V) <= ε`.
    pub near: Vec<BoundCheck>,
    /// `d_H(C_n, C_m) >= δ`, `n < m`.
    pub separated: Vec<BoundCheck>,
    /// `h.c_n = 3^n` and `f.c_n = 2δ` for every `n`.
    pub identities: bool,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.identities && self.near.iter().chain(&self.separated).all(|c| c.pass)
    }
}

fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn verify_witness(w: &WitnessFamily) -> Result<WitnessReport> {
    let base = w.cone.to_polyhedron();
    let two_delta = &w.delta * Rat::from_integer(2.into());
    let identities = (0..w.members.len()).all(|n| {
        let c = w.apex(n);
        dot(&w.h, &c) == pow3(n) && dot(&w.f, &c) == two_delta
    });
    let idx: Vec<usize> = (0..w.members.len()).collect();
    let near = parallel_map(&idx, |&n| {
        hausdorff(&w.members[n], &base).map(|r| {
            let pass = r.value <= ExtRat::Finite(w.epsilon.clone());
            BoundCheck { n, m: None, value: r.value, bound: w.epsilon.clone(), pass }
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..w.members.len()).flat_map(|n| (n + 1..w.members.len()).map(move |m| (n, m))).collect();
    let separated = parallel_map(&pairs, |&(n, m)| {
        hausdorff(&w.members[n], &w.members[m]).map(|r| {
            let pass = r.value >= ExtRat::Finite(w.delta.clone());
            BoundCheck { n, m: Some(m), value: r.value, bound: w.delta.clone(), pass }
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(WitnessReport { near, separated, identities })
}

/// `C_A = conv{e_i : i in A}` for 1-based index sets `A`, with the pairwise
/// separation bound `1`.
pub fn biorthogonal_family(n: usize, subsets: &[Vec<usize>]) -> Result<(Vec<Polyhedron>, Rat)> {
    if n == 0 {
        return Err(GeomError::InvalidArgument("dimension must be positive".into()));
    }
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut members = Vec::with_capacity(subsets.len());
    for (k, s) in subsets.iter().enumerate() {
        let mut set = s.clone();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(GeomError::InvalidArgument(format!("subset {k} is empty")));
        }
        if let Some(&i) = set.iter().find(|&&i| i == 0 || i > n) {
            return Err(GeomError::InvalidArgument(format!("subset {k}: index {i} is outside 1..={n}")));
        }
        if seen.contains(&set) {
            return Err(GeomError::InvalidArgument(format!("subset {k} repeats an earlier subset")));
        }
        let vertices = set.iter().map(|&i| unit(n, i - 1)).collect();
        members.push(Polyhedron::from_vrep(VRep { vertices, rays: vec![], lineality: vec![] })?);
        seen.push(set);
    }
    Ok((members, Rat::one()))
}

/// All nonempty subsets of `1..=n` in order of their bitmask.
pub fn all_nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n)).map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::same_component;
    use crate::exact::{rat, ratio, rvec};

    fn quadrant() -> PolyCone {
        PolyCone::from_generators(vec![rvec(&[1, 0]), rvec(&[0, 1])], vec![], 2)
    }

    fn positive_on(v: &PolyCone, h: &[Rat]) -> bool {
        v.rays.iter().all(|g| dot(h, g).is_positive())
    }

    #[test]
    fn h_examples() {
        let h = build_h(&quadrant()).unwrap();
        assert!(positive_on(&quadrant(), &h));
        assert_eq!(h[0], h[1]);
        let ray = PolyCone::from_generators(vec![rvec(&[1, 0])], vec![], 2);
        let h = build_h(&ray).unwrap();
        assert!(h[0] >= rat(1));
        let wedge = PolyCone::from_generators(vec![rvec(&[1, 0]), rvec(&[1, 1])], vec![], 2);
        assert!(positive_on(&wedge, &build_h(&wedge).unwrap()));
        assert!(positive_on(&wedge, &rvec(&[2, 1])));
        let half = PolyCone::from_generators(vec![rvec(&[0, 1])], vec![rvec(&[1, 0])], 2);
        assert_eq!(build_h(&half).unwrap_err(), GeomError::NotPointed);
    }

    #[test]
    fn f_x_examples() {
        let (f, x) = build_f_x(&quadrant(), &rvec(&[1, 1])).unwrap();
        assert_eq!((f, x), (rvec(&[0, -1]), rvec(&[1, 0])));
        let wedge = PolyCone::from_generators(vec![rvec(&[1, 0]), rvec(&[1, 1])], vec![], 2);
        let (f, x) = build_f_x(&wedge, &rvec(&[2, 1])).unwrap();
        assert_eq!((f, x), (rvec(&[0, -1]), vec![ratio(1, 2), rat(0)]));
        let half_line = PolyCone::from_generators(vec![rvec(&[0, 0, 1])], vec![], 3);
        let h = build_h(&half_line).unwrap();
        let (f, x) = build_f_x(&half_line, &h).unwrap();
        assert!(dot(&f, &x).is_zero());
        assert_eq!(dot(&h, &x), rat(1));
        assert!(half_line.contains_vector(&x));
        let trivial = PolyCone::from_generators(vec![], vec![], 2);
        assert_eq!(build_f_x(&trivial, &rvec(&[1, 1])).unwrap_err(), GeomError::NoFacet);
    }

    #[test]
    fn y_examples() {
        let y = build_y(&rvec(&[1, 1]), &rvec(&[0, -1]), &ratio(1, 2)).unwrap();
        assert_eq!(y, vec![ratio(1, 2), ratio(-1, 2)]);
        let y = build_y(&rvec(&[1, 0]), &rvec(&[0, 1]), &ratio(1, 3)).unwrap();
        assert_eq!(y, vec![rat(0), ratio(1, 3)]);
        assert!(build_y(&rvec(&[1, 0]), &rvec(&[0, 1]), &rat(1)).is_err());
        assert_eq!(build_y(&rvec(&[1, 1]), &rvec(&[2, 2]), &ratio(1, 2)).unwrap_err(), GeomError::DependentFunctionals);
    }

    #[test]
    fn quadrant_family() {
        let w = witness_family(&quadrant(), &ratio(1, 2), 3).unwrap();
        assert_eq!(w.members.len(), 4);
        assert_eq!(w.h, vec![ratio(1, 2), ratio(1, 2)]);
        for n in 0..4 {
            assert_eq!(w.apex(n), vec![rat(2) * pow3(n) + ratio(1, 2), ratio(-1, 2)]);
        }
        assert_eq!(w.delta, ratio(1, 4));
        let base = quadrant().to_polyhedron();
        for c in &w.members {
            assert!(same_component(c, &base).unwrap());
        }
        let rep = verify_witness(&w).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.separated.len(), 6);
    }

    #[test]
    fn unnormalized_h_breaks_separation() {
        let v = PolyCone::from_generators(vec![rvec(&[1, 0, 0]), rvec(&[1, 1, 0]), rvec(&[1, 1, 1])], vec![], 3);
        let mut w = witness_family(&v, &ratio(1, 2), 1).unwrap();
        assert!(verify_witness(&w).unwrap().all_pass());
        let h = build_h(&v).unwrap();
        assert!(dual_norm(&h) > rat(1));
        let (f, x) = build_f_x(&v, &h).unwrap();
        w.x = x;
        w.y = build_y(&h, &f, &ratio(1, 2)).unwrap();
        w.delta = dot(&f, &w.y) / rat(2);
        w.members = (0..2).map(|n| hull_union(&v.to_polyhedron(), &Polyhedron::point(w.apex(n))).unwrap()).collect();
        let d = hausdorff(&w.members[0], &w.members[1]).unwrap().value;
        assert!(d < ExtRat::Finite(w.delta.clone()), "{d}");
    }

    #[test]
    fn single_member_is_vacuous() {
        let w = witness_family(&quadrant(), &ratio(1, 2), 0).unwrap();
        let rep = verify_witness(&w).unwrap();
        assert!(rep.separated.is_empty());
        assert!(rep.all_pass());
    }

    #[test]
    fn biorthogonal_examples() {
        let (m, bound) = biorthogonal_family(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(hausdorff(&m[0], &m[1]).unwrap().value, ExtRat::Finite(bound));
        let (m, _) = biorthogonal_family(3, &[vec![1, 2], vec![1, 2, 3]]).unwrap();
        assert!(hausdorff(&m[0], &m[1]).unwrap().value >= ExtRat::Finite(rat(1)));
        assert!(biorthogonal_family(2, &[vec![1], vec![1]]).is_err());
        assert!(biorthogonal_family(2, &[vec![]]).is_err());
        assert!(biorthogonal_family(2, &[vec![3]]).is_err());
        assert_eq!(all_nonempty_subsets(4).len(), 15);
    }
}
