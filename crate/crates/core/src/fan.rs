//! Finite rational fans: validation, completeness over a support region,
//! smoothness, invariance under linear automorphisms, refinement and strata.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::{Cone, Strictness};
use crate::error::{Error, Result};
use crate::fm::{Constraint, System};
use crate::json;
use crate::linalg::{IntegerLattice, RationalMatrix};
use crate::num::{fmt_rat, IntVec, Rat};
use crate::par::{self, Exec};

/// The region a fan is meant to decompose: a closed cone, or `{0}` together with its relative interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportRegion {
    pub closed_cone: Cone,
    pub open_part_only: bool,
}

impl SupportRegion {
    pub fn closed(c: Cone) -> Self {
        Self { closed_cone: c, open_part_only: false }
    }

    pub fn open(c: Cone) -> Self {
        Self { closed_cone: c, open_part_only: true }
    }

    pub fn full(n: usize) -> Self {
        Self::closed(Cone::full(n))
    }

    /// Whether a whole cone lies in the region.
    pub fn contains_cone(&self, c: &Cone) -> bool {
        if !self.closed_cone.contains_cone(c) {
            return false;
        }
        !self.open_part_only
            || c.rays().iter().all(|r| {
                self.closed_cone.contains_int(r, Strictness::Interior).expect("same rank")
            })
    }

    /// Constraints describing the relative interior of the closed cone.
    fn interior_system(&self) -> System {
        let c = &self.closed_cone;
        let mut rows = Vec::new();
        for e in c.equations() {
            rows.extend(Constraint::equation(e));
        }
        for f in c.facets() {
            rows.push(Constraint::homogeneous(f, true));
        }
        System::from_rows(c.ambient_rank(), rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    NotStronglyConvex { cone: Cone },
    MissingFace { cone: Cone, face: Cone },
    BadIntersection { first: Cone, second: Cone, intersection: Cone },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub violations: Vec<Violation>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    /// A member cone that leaves the support region.
    pub outside_member: Option<Cone>,
    /// A rational point of the support not covered by any member.
    #[serde(serialize_with = "ser_opt_rats")]
    pub uncovered_witness: Option<Vec<Rat>>,
}

fn ser_opt_rats<S: serde::Serializer>(v: &Option<Vec<Rat>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => json::rats(v).serialize(s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceFailure {
    pub generator: usize,
    pub cone: Cone,
    pub image: Cone,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub failures: Vec<InvarianceFailure>,
    /// Images lying outside the window, skipped by design.
    pub exempted: usize,
}

impl InvarianceReport {
    pub fn is_invariant(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumLabel {
    pub index: usize,
    /// Dimension of the torus orbit: ambient rank minus cone dimension.
    pub orbit_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    lattice: IntegerLattice,
    cones: Vec<Cone>,
}

impl Fan {
    /// Members are sorted and deduplicated; no axiom is checked here (see [`Fan::validate`]).
    pub fn new(lattice: IntegerLattice, cones: Vec<Cone>) -> Result<Self> {
        let n = lattice.ambient_rank();
        if let Some(c) = cones.iter().find(|c| c.ambient_rank() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.ambient_rank() });
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        Ok(Self { ambient_rank: n, lattice, cones })
    }

    /// The given cones together with all their faces.
    pub fn from_maximal(lattice: IntegerLattice, maximal: &[Cone]) -> Result<Self> {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in maximal {
            all.extend(c.faces());
        }
        Self::new(lattice, all.into_iter().collect())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    pub fn validate(&self) -> FanReport {
        self.validate_with(Exec::default())
    }

    pub fn validate_with(&self, exec: Exec) -> FanReport {
        let per_cone: Vec<Vec<Violation>> = par::map(exec, &self.cones, |c| {
            let mut out = Vec::new();
            if !c.is_strongly_convex() {
                out.push(Violation::NotStronglyConvex { cone: c.clone() });
            }
            for f in c.faces() {
                if !self.contains(&f) {
                    out.push(Violation::MissingFace { cone: c.clone(), face: f });
                }
            }
            out
        });
        let pairs: Vec<(usize, usize)> = (0..self.cones.len())
            .flat_map(|i| (i + 1..self.cones.len()).map(move |j| (i, j)))
            .collect();
        let per_pair: Vec<Option<Violation>> = par::map(exec, &pairs, |&(i, j)| {
            let (a, b) = (&self.cones[i], &self.cones[j]);
            if a.is_face_of(b) || b.is_face_of(a) {
                return None;
            }
            let meet = a.intersect(b).expect("same rank");
            if meet.is_face_of(a) && meet.is_face_of(b) {
                None
            } else {
                Some(Violation::BadIntersection { first: a.clone(), second: b.clone(), intersection: meet })
            }
        });
        let violations = per_cone.into_iter().flatten().chain(per_pair.into_iter().flatten()).collect();
        FanReport { violations }
    }

    fn require_valid(&self) -> Result<()> {
        match self.validate().violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFan(format!("{v:?}"))),
        }
    }

    /// Whether the union of the members equals the support region, decided exactly.
    pub fn is_complete_over(&self, s: &SupportRegion) -> Result<CompletenessReport> {
        if s.closed_cone.ambient_rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: s.closed_cone.ambient_rank(),
            });
        }
        self.require_valid()?;
        if let Some(c) = self.cones.iter().find(|c| !s.contains_cone(c)) {
            return Ok(CompletenessReport {
                complete: false,
                outside_member: Some(c.clone()),
                uncovered_witness: None,
            });
        }
        let target_dim = s.closed_cone.dim();
        let tops: Vec<&Cone> = self.cones.iter().filter(|c| c.dim() == target_dim).collect();
        let mut halfspaces: BTreeSet<IntVec> = s.closed_cone.halfspaces().into_iter().collect();
        for c in &tops {
            halfspaces.extend(c.halfspaces());
        }
        let cap = self.ambient_rank * halfspaces.len().max(1);
        let witness = uncovered(&s.interior_system(), &tops, 0, cap)?;
        Ok(CompletenessReport { complete: witness.is_none(), outside_member: None, uncovered_witness: witness })
    }

    pub fn is_smooth(&self) -> Result<bool> {
        self.require_valid()?;
        for c in &self.cones {
            if !c.is_smooth(&self.lattice)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks that each generator maps members to members.
    ///
    /// With a window, an image whose relative interior misses the window's
    /// interior is exempt; an image inside the window must be a member, and an
    /// image straddling the window boundary is a failure.
    pub fn is_invariant_under(
        &self,
        gens: &[RationalMatrix],
        window: Option<&SupportRegion>,
    ) -> Result<InvarianceReport> {
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != self.ambient_rank || g.cols() != self.ambient_rank {
                return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: g.rows().max(g.cols()) });
            }
            if g.det()?.is_zero() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let mut report = InvarianceReport::default();
        for (gi, g) in gens.iter().enumerate() {
            for c in &self.cones {
                let image = c.image(g)?;
                if self.contains(&image) {
                    continue;
                }
                if let Some(w) = window {
                    if !w.closed_cone.contains_cone(&image) && !meets_interior(&image, &w.closed_cone) {
                        report.exempted += 1;
                        continue;
                    }
                }
                report.failures.push(InvarianceFailure { generator: gi, cone: c.clone(), image });
            }
        }
        Ok(report)
    }

    /// Every member of `self` lies in some member of `coarse`.
    pub fn refines(&self, coarse: &Fan) -> Result<bool> {
        if coarse.ambient_rank != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: coarse.ambient_rank });
        }
        Ok(self.cones.iter().all(|c| coarse.cones.iter().any(|d| d.contains_cone(c))))
    }

    /// One torus orbit per cone.
    pub fn stratum_index(&self) -> Result<BTreeMap<Cone, StratumLabel>> {
        self.require_valid()?;
        Ok(self
            .cones
            .iter()
            .enumerate()
            .map(|(index, c)| {
                (c.clone(), StratumLabel { index, orbit_dimension: self.ambient_rank - c.dim() })
            })
            .collect())
    }

    /// A union of strata is open iff the corresponding cone set is closed under faces.
    pub fn open_invariant_subsets(&self, subset: &[Cone]) -> Result<bool> {
        self.require_valid()?;
        if let Some(c) = subset.iter().find(|c| !self.contains(c)) {
            return Err(Error::InvalidFan(format!("{c} is not a member")));
        }
        let set: BTreeSet<&Cone> = subset.iter().collect();
        Ok(subset.iter().all(|c| c.faces().iter().all(|f| set.contains(f))))
    }

    /// Distinct extreme rays of all members, sorted.
    pub fn rays(&self) -> Vec<IntVec> {
        let set: BTreeSet<IntVec> = self.cones.iter().flat_map(|c| c.rays()).collect();
        set.into_iter().collect()
    }
}

fn meets_interior(image: &Cone, window: &Cone) -> bool {
    let region = SupportRegion::closed(window.clone()).interior_system();
    let mut sys = region;
    for e in image.equations() {
        for c in Constraint::equation(e) {
            sys.push(c);
        }
    }
    for f in image.facets() {
        sys.push(Constraint::homogeneous(f, true));
    }
    sys.is_feasible()
}

/// A point of `region` missed by every cone in `cones`, by recursive open-piece subdivision.
fn uncovered(region: &System, cones: &[&Cone], depth: usize, cap: usize) -> Result<Option<Vec<Rat>>> {
    if depth > cap {
        return Err(Error::DepthCapExceeded(cap));
    }
    let Some(point) = region.find_point() else {
        return Ok(None);
    };
    let interior_rows = |c: &Cone| -> Vec<Constraint> {
        let mut rows = Vec::new();
        for e in c.equations() {
            rows.extend(Constraint::equation(e));
        }
        for f in c.facets() {
            rows.push(Constraint::homogeneous(f, true));
        }
        rows
    };
    let hit = cones.iter().position(|c| region.with(interior_rows(c)).is_feasible());
    let Some(i) = hit else {
        return Ok(Some(point));
    };
    let sigma = cones[i];
    let rest: Vec<&Cone> = cones[i + 1..].to_vec();
    let facets = sigma.facets();
    for j in 0..facets.len() {
        let mut piece = region.clone();
        let neg: IntVec = facets[j].iter().map(|x| -x).collect();
        piece.push(Constraint::homogeneous(&neg, true));
        for f in &facets[..j] {
            piece.push(Constraint::homogeneous(f, true));
        }
        if let Some(w) = uncovered(&piece, &rest, depth + 1, cap)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The on-disk fan description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFile {
    pub fan: Fan,
    pub symmetry_generators: Vec<RationalMatrix>,
    pub support: Option<SupportRegion>,
}

impl FanFile {
    pub fn new(fan: Fan) -> Self {
        Self { fan, symmetry_generators: Vec::new(), support: None }
    }

    pub fn parse(v: &Value) -> Result<Self> {
        let n = json::parse_count(json::field(v, "lattice_rank")?, "lattice_rank")?;
        let rays = json::parse_int_rows(json::field(v, "rays")?)?;
        if let Some(r) = rays.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        let idx_lists = json::field(v, "cones")?
            .as_array()
            .ok_or_else(|| Error::Parse("cones: expected an array".into()))?;
        let mut cones = Vec::new();
        for list in idx_lists {
            let list = list.as_array().ok_or_else(|| Error::Parse("cone: expected an index array".into()))?;
            let mut gens = Vec::new();
            for i in list {
                let i = json::parse_count(i, "ray index")?;
                gens.push(rays.get(i).cloned().ok_or_else(|| Error::Parse(format!("ray index {i} out of range")))?);
            }
            cones.push(Cone::from_rays(n, &gens)?);
        }
        let mut symmetry_generators = Vec::new();
        if let Some(gs) = v.get("symmetry_generators") {
            let gs = gs.as_array().ok_or_else(|| Error::Parse("symmetry_generators: expected an array".into()))?;
            for g in gs {
                let rows = json::parse_rat_rows(g)?;
                symmetry_generators.push(RationalMatrix::from_rows(&rows, n)?);
            }
        }
        let support = match v.get("support") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) if s == "full" => Some(SupportRegion::full(n)),
            Some(rec @ Value::Object(_)) => {
                let c = Cone::from_json(rec)?;
                if c.ambient_rank() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: c.ambient_rank() });
                }
                let open = rec.get("open_part_only").and_then(Value::as_bool).unwrap_or(false);
                Some(SupportRegion { closed_cone: c, open_part_only: open })
            }
            Some(other) => return Err(Error::Parse(format!("support: unexpected {other}"))),
        };
        Ok(Self { fan: Fan::new(IntegerLattice::standard(n), cones)?, symmetry_generators, support })
    }

    pub fn to_json(&self) -> Value {
        let rays = self.fan.rays();
        let index: BTreeMap<&IntVec, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let cones: Vec<Value> = self
            .fan
            .cones()
            .iter()
            .map(|c| {
                let ids: Vec<Value> = c.rays().iter().map(|r| Value::String(index[r].to_string())).collect();
                Value::Array(ids)
            })
            .collect();
        let gens: Vec<Value> = self
            .symmetry_generators
            .iter()
            .map(|g| {
                Value::Array(
                    (0..g.rows())
                        .map(|i| Value::Array(g.row(i).iter().map(|x| Value::String(fmt_rat(x))).collect()))
                        .collect(),
                )
            })
            .collect();
        let support = match &self.support {
            None => Value::Null,
            Some(s) if s.closed_cone == Cone::full(self.fan.ambient_rank()) && !s.open_part_only => json!("full"),
            Some(s) => {
                let mut rec = s.closed_cone.to_json();
                if s.open_part_only {
                    rec["open_part_only"] = json!(true);
                }
                rec
            }
        };
        json!({
            "lattice_rank": self.fan.ambient_rank(),
            "rays": json::int_rows(&rays),
            "cones": cones,
            "symmetry_generators": gens,
            "support": support,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn z(n: usize) -> IntegerLattice {
        IntegerLattice::standard(n)
    }

    fn quadrant_fan() -> Fan {
        let quads: Vec<Cone> = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
            .iter()
            .map(|s| Cone::of(2, &[&[s[0], 0], &[0, s[1]]]))
            .collect();
        Fan::from_maximal(z(2), &quads).unwrap()
    }

    fn rot(m: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(m)
    }

    #[test]
    fn validation_examples() {
        let f = Fan::new(z(2), vec![Cone::zero(2), Cone::of(2, &[&[1, 0]])]).unwrap();
        assert!(f.validate().is_valid());
        let f = Fan::new(z(2), vec![Cone::of(2, &[&[1, 0], &[0, 1]])]).unwrap();
        let r = f.validate();
        assert_eq!(r.violations.len(), 3);
        assert!(r.violations.iter().all(|v| matches!(v, Violation::MissingFace { .. })));
        let f = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 0], &[1, 1]]), Cone::of(2, &[&[1, 1], &[1, 2]])]).unwrap();
        assert_eq!(f.cones().len(), 6);
        assert!(f.validate().is_valid());
        let bad = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 0], &[1, 2]]), Cone::of(2, &[&[1, 1], &[0, 1]])]).unwrap();
        assert!(bad.validate().violations.iter().any(|v| matches!(v, Violation::BadIntersection { .. })));
    }

    #[test]
    fn completeness_examples() {
        let gl2 = Fan::new(z(1), vec![Cone::zero(1), Cone::of(1, &[&[-1]])]).unwrap();
        let s = SupportRegion::closed(Cone::of(1, &[&[-1]]));
        assert!(gl2.is_complete_over(&s).unwrap().complete);
        assert!(quadrant_fan().is_complete_over(&SupportRegion::full(2)).unwrap().complete);

        let three = Fan::from_maximal(
            z(2),
            &[Cone::of(2, &[&[1, 0], &[0, 1]]), Cone::of(2, &[&[0, 1], &[-1, 0]]), Cone::of(2, &[&[-1, 0], &[0, -1]])],
        )
        .unwrap();
        let r = three.is_complete_over(&SupportRegion::full(2)).unwrap();
        assert!(!r.complete);
        let w = r.uncovered_witness.unwrap();
        assert!(w[0] > rat(0, 1) && w[1] < rat(0, 1));

        // A member leaving the support is reported.
        let r = quadrant_fan().is_complete_over(&SupportRegion::closed(Cone::of(2, &[&[1, 0], &[0, 1]]))).unwrap();
        assert!(!r.complete && r.outside_member.is_some());
    }

    #[test]
    fn completeness_of_open_support() {
        // Support {0} ∪ open quadrant: the closed quadrant fan sticks out, a fan inside misses the boundary wedge.
        let s = SupportRegion::open(Cone::of(2, &[&[1, 0], &[0, 1]]));
        let inner = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 1], &[1, 2]])]).unwrap();
        let r = inner.is_complete_over(&s).unwrap();
        assert!(!r.complete && r.uncovered_witness.is_some());
        let closed = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 0], &[0, 1]])]).unwrap();
        assert!(closed.is_complete_over(&s).unwrap().outside_member.is_some());
    }

    #[test]
    fn smoothness_examples() {
        let f = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 0], &[1, 2]])]).unwrap();
        assert!(!f.is_smooth().unwrap());
        let f = Fan::new(z(2), vec![Cone::zero(2)]).unwrap();
        assert!(f.is_smooth().unwrap());
        assert!(quadrant_fan().is_smooth().unwrap());
        let broken = Fan::new(z(2), vec![Cone::of(2, &[&[1, 0], &[0, 1]])]).unwrap();
        assert!(matches!(broken.is_smooth(), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn invariance_examples() {
        let gl2 = Fan::new(z(1), vec![Cone::zero(1), Cone::of(1, &[&[-1]])]).unwrap();
        assert!(gl2.is_invariant_under(&[rot(&[&[2]])], None).unwrap().is_invariant());
        let q = quadrant_fan();
        assert!(q.is_invariant_under(&[rot(&[&[0, -1], &[1, 0]])], None).unwrap().is_invariant());
        let r = q.is_invariant_under(&[rot(&[&[1, -1], &[1, 1]])], None).unwrap();
        assert!(!r.is_invariant());
        assert!(matches!(
            q.is_invariant_under(&[rot(&[&[1, 1], &[1, 1]])], None),
            Err(Error::SingularGenerator(0))
        ));
    }

    #[test]
    fn refinement_and_strata() {
        let split = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 0], &[1, 1]]), Cone::of(2, &[&[1, 1], &[0, 1]])]).unwrap();
        let quad = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, 0], &[0, 1]])]).unwrap();
        assert!(split.refines(&quad).unwrap());
        assert!(!quad.refines(&split).unwrap());
        let other = Fan::from_maximal(z(2), &[Cone::of(2, &[&[1, -1], &[1, 1]])]).unwrap();
        assert!(!other.refines(&quad).unwrap());

        let strata = quad.stratum_index().unwrap();
        assert_eq!(strata.len(), 4);
        assert_eq!(strata[&Cone::zero(2)].orbit_dimension, 2);
        assert_eq!(strata[&Cone::of(2, &[&[1, 0], &[0, 1]])].orbit_dimension, 0);
        assert!(!quad.open_invariant_subsets(&[Cone::of(2, &[&[1, 0], &[0, 1]])]).unwrap());
        assert!(quad.open_invariant_subsets(&[Cone::of(2, &[&[1, 0]]), Cone::zero(2)]).unwrap());
    }

    #[test]
    fn file_round_trip() {
        let mut file = FanFile::new(quadrant_fan());
        file.symmetry_generators.push(rot(&[&[0, -1], &[1, 0]]));
        file.support = Some(SupportRegion::full(2));
        let v = file.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["lattice_rank", "rays", "cones", "symmetry_generators", "support"]);
        assert_eq!(FanFile::parse(&v).unwrap(), file);
        let text = serde_json::to_string(&v).unwrap();
        let again = FanFile::parse(&serde_json::from_str(&text).unwrap()).unwrap().to_json();
        assert_eq!(serde_json::to_string(&again).unwrap(), text);
    }
}
