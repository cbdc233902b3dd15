//! Seeded random instances: functionals on the dual unit sphere and small
//! polyhedra with controlled characteristic cones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{dual_norm, is_zero_vec, rat, scaled, Rat, RatMat, RatVec};
use crate::polyhedra::{is_empty, HRep, Polyhedron, VRep};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn int_vec(&mut self, n: usize, lo: i64, hi: i64) -> RatVec {
        (0..n).map(|_| rat(self.int(lo, hi))).collect()
    }

    fn nonzero_vec(&mut self, n: usize, lo: i64, hi: i64) -> RatVec {
        loop {
            let v = self.int_vec(n, lo, hi);
            if !is_zero_vec(&v) {
                return v;
            }
        }
    }

    /// A functional with `dual_norm = 1`.
    pub fn functional(&mut self, n: usize) -> RatVec {
        let f = self.nonzero_vec(n, -9, 9);
        scaled(&f, &(Rat::from_integer(1.into()) / dual_norm(&f)))
    }

    /// Recession generators: up to two rays and, with some probability, one
    /// line.
    pub fn cone_generators(&mut self, n: usize) -> (Vec<RatVec>, Vec<RatVec>) {
        let nrays = self.int(0, 2) as usize;
        let rays = (0..nrays).map(|_| self.nonzero_vec(n, -2, 2)).collect();
        let lineality = if self.int(0, 3) == 0 { vec![self.nonzero_vec(n, -2, 2)] } else { vec![] };
        (rays, lineality)
    }

    /// Polyhedron with the given recession generators and 1 to 4 random
    /// vertices.
    pub fn with_cone(&mut self, n: usize, rays: &[RatVec], lineality: &[RatVec]) -> Polyhedron {
        let nv = self.int(1, 4) as usize;
        let vertices = (0..nv).map(|_| self.int_vec(n, -3, 3)).collect();
        Polyhedron::from_vrep(VRep { vertices, rays: rays.to_vec(), lineality: lineality.to_vec() })
            .expect("vertex list is nonempty")
    }

    pub fn polyhedron_v(&mut self, n: usize) -> Polyhedron {
        let (r, l) = self.cone_generators(n);
        self.with_cone(n, &r, &l)
    }

    /// A nonempty `{Ax <= b}` with `1..=max_rows` rows.
    pub fn polyhedron_h(&mut self, n: usize, max_rows: usize) -> Polyhedron {
        loop {
            let m = self.int(1, max_rows as i64) as usize;
            let rows: Vec<RatVec> = (0..m).map(|_| self.nonzero_vec(n, -3, 3)).collect();
            let b: RatVec = (0..m).map(|_| rat(self.int(-2, 5))).collect();
            let h = HRep::new(RatMat::new(rows, n), b);
            if !is_empty(&h) {
                return Polyhedron::from_hrep(h).expect("nonempty");
            }
        }
    }

    /// Either generator kind, alternating at random.
    pub fn polyhedron(&mut self, n: usize, max_rows: usize) -> Polyhedron {
        if self.int(0, 1) == 0 {
            self.polyhedron_v(n)
        } else {
            self.polyhedron_h(n, max_rows)
        }
    }

    /// Two polyhedra with the same characteristic cone.
    pub fn same_component_pair(&mut self, n: usize) -> (Polyhedron, Polyhedron) {
        let (r, l) = self.cone_generators(n);
        (self.with_cone(n, &r, &l), self.with_cone(n, &r, &l))
    }

    /// Two nonempty sets `{Ax <= b}`, `{Ax <= b'}` with a common matrix, hence
    /// a common characteristic cone.
    pub fn same_component_pair_h(&mut self, n: usize, max_rows: usize) -> (Polyhedron, Polyhedron) {
        loop {
            let m = self.int(1, max_rows as i64) as usize;
            let a = RatMat::new((0..m).map(|_| self.nonzero_vec(n, -3, 3)).collect(), n);
            let h1 = HRep::new(a.clone(), (0..m).map(|_| rat(self.int(-2, 5))).collect());
            let h2 = HRep::new(a, (0..m).map(|_| rat(self.int(-2, 5))).collect());
            if !is_empty(&h1) && !is_empty(&h2) {
                return (Polyhedron::from_hrep(h1).expect("nonempty"), Polyhedron::from_hrep(h2).expect("nonempty"));
            }
        }
    }

    /// Two polyhedra sharing a lineality vector `z`; the rest of each cone is
    /// drawn independently.
    pub fn pair_with_lineality(&mut self, n: usize) -> (Polyhedron, Polyhedron, RatVec) {
        let z = self.nonzero_vec(n, -2, 2);
        let lin = vec![z.clone()];
        let ra: Vec<RatVec> = (0..self.int(0, 1)).map(|_| self.nonzero_vec(n, -2, 2)).collect();
        let a = self.with_cone(n, &ra, &lin);
        let b = if self.int(0, 2) == 0 {
            let rb: Vec<RatVec> = (0..self.int(0, 1)).map(|_| self.nonzero_vec(n, -2, 2)).collect();
            self.with_cone(n, &rb, &lin)
        } else {
            self.with_cone(n, &ra, &lin)
        };
        (a, b, z)
    }

    /// Either a same-component pair or an independent pair.
    pub fn any_pair(&mut self, n: usize) -> (Polyhedron, Polyhedron) {
        if self.int(0, 1) == 0 {
            self.same_component_pair(n)
        } else {
            (self.polyhedron_v(n), self.polyhedron_v(n))
        }
    }

    pub fn rational(&mut self, lo: i64, hi: i64, den: i64) -> Rat {
        Rat::new(self.int(lo * den, hi * den).into(), den.into())
    }

    /// `k / den` with `0 <= k <= den`.
    pub fn unit_interval(&mut self, den: i64) -> Rat {
        self.rational(0, 1, den)
    }
}
