//! Rational polyhedral cones carried in both representations.
//!
//! A [`Cone`] stores its lineality basis and extreme rays (the primal side) and
//! the same data for its dual (equations and facet normals). Both sides are
//! canonical, so derived equality is set equality.

mod dd;
mod faces;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub use dd::{canonical_subspace_basis, cone_generators, Generators};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix, IntegerLattice, RationalMatrix};
use crate::num::{dot, neg_vec, pair, primitive, primitive_from_rat, to_rat_vec, Int, IntVec, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// Closed cone: every halfspace `≥ 0`.
    Boundary,
    /// Relative interior: equations hold, facet functionals are strictly positive.
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    primal: Generators,
    dual: Generators,
}

fn check_dims(n: usize, vs: &[IntVec]) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch { expected: n, found: v.len() }),
        None => Ok(()),
    }
}

impl Cone {
    pub fn from_rays(ambient_rank: usize, rays: &[IntVec]) -> Result<Self> {
        check_dims(ambient_rank, rays)?;
        let rays: Vec<IntVec> = rays.iter().map(|r| primitive(r)).collect();
        let dual = cone_generators(&rays, ambient_rank);
        let primal = cone_generators(&dual.all(), ambient_rank);
        Ok(Self { ambient_rank, primal, dual })
    }

    pub fn from_halfspaces(ambient_rank: usize, halfspaces: &[IntVec]) -> Result<Self> {
        check_dims(ambient_rank, halfspaces)?;
        let hs: Vec<IntVec> = halfspaces.iter().map(|h| primitive(h)).collect();
        let primal = cone_generators(&hs, ambient_rank);
        let dual = cone_generators(&primal.all(), ambient_rank);
        Ok(Self { ambient_rank, primal, dual })
    }

    pub fn from_rational_rays(ambient_rank: usize, rays: &[Vec<Rat>]) -> Result<Self> {
        let rays: Vec<IntVec> = rays.iter().map(|r| primitive_from_rat(r)).collect();
        Self::from_rays(ambient_rank, &rays)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_rays(n, &[]).expect("no rays")
    }

    pub fn full(n: usize) -> Self {
        Self::from_halfspaces(n, &[]).expect("no halfspaces")
    }

    /// Convenience constructor from small integer literals.
    pub fn of(ambient_rank: usize, rays: &[&[i64]]) -> Self {
        let rays: Vec<IntVec> = rays.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::from_rays(ambient_rank, &rays).expect("literal rays")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Canonical V-representation: extreme rays plus both signs of each lineality basis vector, sorted.
    pub fn rays(&self) -> Vec<IntVec> {
        self.primal.all()
    }

    /// Canonical H-representation: facet normals plus both signs of each equation, sorted.
    pub fn halfspaces(&self) -> Vec<IntVec> {
        self.dual.all()
    }

    pub fn extreme_rays(&self) -> &[IntVec] {
        &self.primal.extreme
    }

    pub fn lineality_basis(&self) -> &[IntVec] {
        &self.primal.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.dual.extreme
    }

    /// Basis of the functionals vanishing on the cone.
    pub fn equations(&self) -> &[IntVec] {
        &self.dual.lineality
    }

    pub fn lineality_rank(&self) -> usize {
        self.primal.lineality.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.dual.lineality.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn dual(&self) -> Cone {
        Cone { ambient_rank: self.ambient_rank, primal: self.dual.clone(), dual: self.primal.clone() }
    }

    pub fn negate(&self) -> Cone {
        let rays: Vec<IntVec> = self.rays().iter().map(|r| neg_vec(r)).collect();
        Cone::from_rays(self.ambient_rank, &rays).expect("same rank")
    }

    /// A point of the relative interior: the sum of the canonical rays.
    pub fn interior_point(&self) -> Vec<Rat> {
        let mut p = vec![Rat::zero(); self.ambient_rank];
        for r in &self.primal.extreme {
            for (x, y) in p.iter_mut().zip(r) {
                *x += Rat::from_integer(y.clone());
            }
        }
        p
    }

    pub fn contains(&self, v: &[Rat], strictness: Strictness) -> Result<bool> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: v.len() });
        }
        if !self.dual.lineality.iter().all(|h| pair(h, v).is_zero()) {
            return Ok(false);
        }
        Ok(self.dual.extreme.iter().all(|h| {
            let x = pair(h, v);
            match strictness {
                Strictness::Boundary => !x.is_negative(),
                Strictness::Interior => x.is_positive(),
            }
        }))
    }

    pub fn contains_int(&self, v: &[Int], strictness: Strictness) -> Result<bool> {
        self.contains(&to_rat_vec(v), strictness)
    }

    /// `other ⊆ self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.ambient_rank == self.ambient_rank
            && other.rays().iter().all(|r| self.halfspaces().iter().all(|h| !dot(h, r).is_negative()))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if other.ambient_rank != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: other.ambient_rank });
        }
        let mut hs = self.halfspaces();
        hs.extend(other.halfspaces());
        Cone::from_halfspaces(self.ambient_rank, &hs)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, g: &RationalMatrix) -> Result<Cone> {
        if g.cols() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: g.cols() });
        }
        let rays: Result<Vec<Vec<Rat>>> = self.rays().iter().map(|r| g.mul_vec(&to_rat_vec(r))).collect();
        Cone::from_rational_rays(g.rows(), &rays?)
    }

    /// Image under the coordinate projection onto the first `keep` coordinates.
    pub fn project(&self, keep: usize) -> Result<Cone> {
        if keep > self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: keep });
        }
        let rays: Vec<IntVec> = self.rays().iter().map(|r| r[..keep].to_vec()).collect();
        Cone::from_rays(keep, &rays)
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality_rank() == 0
    }

    pub fn is_top_dimensional(&self) -> bool {
        self.dual.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex() && {
            let rays = &self.primal.extreme;
            rays.is_empty() || IntMatrix::from_rows(rays, self.ambient_rank).expect("width").rank() == rays.len()
        }
    }

    /// Whether the rays form part of a basis of `lattice`.
    pub fn is_smooth(&self, lattice: &IntegerLattice) -> Result<bool> {
        if lattice.ambient_rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: lattice.ambient_rank() });
        }
        if !lattice.is_full_rank() {
            return Err(Error::NotFullRank { rank: lattice.rank(), ambient: lattice.ambient_rank() });
        }
        if !self.is_strongly_convex() {
            return Ok(false);
        }
        let coords = self.lattice_ray_coordinates(lattice)?;
        if coords.is_empty() {
            return Ok(true);
        }
        let m = IntMatrix::from_rows(&coords, self.ambient_rank)?;
        let snf = smith_normal_form(&m);
        Ok(snf.diag.len() == coords.len() && snf.diag.iter().all(One::is_one))
    }

    /// Primitive lattice coordinates of each extreme ray.
    pub fn lattice_ray_coordinates(&self, lattice: &IntegerLattice) -> Result<Vec<IntVec>> {
        self.primal
            .extreme
            .iter()
            .map(|r| {
                let c = lattice.rational_coordinates(&to_rat_vec(r))?.expect("full-rank lattice spans");
                Ok(primitive_from_rat(&c))
            })
            .collect()
    }

    pub fn faces(&self) -> Vec<Cone> {
        faces::faces(self)
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        faces::is_face_of(self, other)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient_rank": self.ambient_rank,
            "rays": crate::json::int_rows(&self.rays()),
            "halfspaces": crate::json::int_rows(&self.halfspaces()),
        })
    }

    /// Reads `{ "ambient_rank", "rays" }`, or `{ "ambient_rank", "halfspaces" }` when no rays are given.
    pub fn from_json(v: &Value) -> Result<Cone> {
        let n = crate::json::parse_count(crate::json::field(v, "ambient_rank")?, "ambient_rank")?;
        match (v.get("rays"), v.get("halfspaces")) {
            (Some(r), _) => Cone::from_rays(n, &crate::json::parse_int_rows(r)?),
            (None, Some(h)) => Cone::from_halfspaces(n, &crate::json::parse_int_rows(h)?),
            (None, None) => Err(Error::Parse("cone record needs \"rays\" or \"halfspaces\"".into())),
        }
    }
}

impl serde::Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays()
            .iter()
            .map(|r| format!("({})", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "cone[{}]", rays.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ivec, rvec};

    fn quadrant() -> Cone {
        Cone::of(2, &[&[1, 0], &[0, 1]])
    }

    #[test]
    fn from_rays_examples() {
        assert_eq!(quadrant().halfspaces(), vec![ivec(&[0, 1]), ivec(&[1, 0])]);
        let c = Cone::of(2, &[&[1, 0], &[1, 1]]);
        assert_eq!(c.halfspaces(), vec![ivec(&[0, 1]), ivec(&[1, -1])]);
        let s2 = Cone::of(2, &[&[1, 2], &[1, 3]]);
        assert_eq!(s2.halfspaces(), vec![ivec(&[-2, 1]), ivec(&[3, -1])]);
        assert!(matches!(Cone::from_rays(2, &[ivec(&[1])]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(quadrant().dual(), quadrant());
        assert_eq!(Cone::of(2, &[&[1, 0], &[1, 1]]).dual(), Cone::of(2, &[&[0, 1], &[1, -1]]));
        let plane = Cone::of(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(plane, Cone::full(2));
        assert_eq!(plane.dual(), Cone::zero(2));
    }

    #[test]
    fn containment_modes() {
        let q = quadrant();
        assert!(q.contains(&rvec(&[1, 1]), Strictness::Interior).unwrap());
        assert!(!q.contains(&rvec(&[1, 0]), Strictness::Interior).unwrap());
        assert!(q.contains(&rvec(&[1, 0]), Strictness::Boundary).unwrap());
        let c = Cone::of(2, &[&[1, 0], &[1, 1]]);
        assert!(c.contains(&rvec(&[2, 1]), Strictness::Interior).unwrap());
        // A ray is its own relative interior away from the origin.
        let ray = Cone::of(2, &[&[1, 1]]);
        assert!(ray.contains(&rvec(&[2, 2]), Strictness::Interior).unwrap());
        assert!(!ray.contains(&rvec(&[0, 0]), Strictness::Interior).unwrap());
        assert!(q.contains(&rvec(&[1]), Strictness::Boundary).is_err());
    }

    #[test]
    fn intersections() {
        let q = quadrant();
        let v = Cone::of(2, &[&[1, 1], &[-1, 1]]);
        assert_eq!(q.intersect(&v).unwrap(), Cone::of(2, &[&[0, 1], &[1, 1]]));
        let w = Cone::of(2, &[&[1, 1], &[1, -1]]);
        assert_eq!(v.intersect(&w).unwrap(), Cone::of(2, &[&[1, 1]]));
        assert_eq!(q.intersect(&q).unwrap(), q);
        assert_eq!(q.intersect(&q.negate()).unwrap(), Cone::zero(2));
    }

    #[test]
    fn predicates() {
        let z2 = IntegerLattice::standard(2);
        assert!(Cone::of(2, &[&[1, 2], &[1, 3]]).is_smooth(&z2).unwrap());
        assert!(!Cone::of(2, &[&[1, 0], &[1, 2]]).is_smooth(&z2).unwrap());
        let half = Cone::of(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        assert!(!half.is_strongly_convex());
        assert_eq!(half.lineality_rank(), 1);
        assert!(half.is_top_dimensional());
        assert!(!Cone::of(2, &[&[1, 1]]).is_top_dimensional());
        assert!(Cone::of(3, &[&[1, 0, 0], &[0, 1, 0]]).is_simplicial());
        let pyramid = Cone::of(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert!(!pyramid.is_simplicial());
        // Smoothness against a coarser lattice: (2,0),(0,2) is a basis of 2Z².
        let d2 = z2.scaled(&Int::from(2));
        assert!(quadrant().is_smooth(&d2).unwrap());
        let line = IntegerLattice::from_generators(2, &[ivec(&[1, 0])]).unwrap();
        assert!(quadrant().is_smooth(&line).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Cone::of(2, &[&[1, 2], &[1, 3]]);
        let j = c.to_json();
        assert_eq!(Cone::from_json(&j).unwrap(), c);
        assert_eq!(j["halfspaces"][0], json!(["-2", "1"]));
        let h = json!({"ambient_rank": 2, "halfspaces": [[1, 0], [0, 1]]});
        assert_eq!(Cone::from_json(&h).unwrap(), quadrant());
    }
}
