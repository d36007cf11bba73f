//! Affine toric charts of a torus `T = Y ⊗ C^×`, the `ord` map and the
//! stratification of a torus embedding.
//!
//! Points, cocharacters and characters are written in coordinates of the
//! chosen basis of the cocharacter lattice `Y`, so `Y = Z^r` and
//! `X*(T) = Z^r` with the standard pairing.

mod fundamental;
mod isogeny;
mod polydisc;

use std::collections::{BTreeMap, HashSet};

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cone::{Cone, Strictness};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{smith_normal_form, IntMatrix, IntegerLattice};
use crate::num::{dot, int, primitive_from_rat, to_rat_vec, Int, IntVec, Rat};

pub use fundamental::{approachability_sampler, fundamental_lemma_check, FlMode};
pub use isogeny::{quotient_by_isogeny, Isogeny, RootOfUnity};
pub use polydisc::{certified_radius, punctured_polydisc_check, PolydiscOptions};

/// Log-scale tolerance for numeric comparisons.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    coords: Vec<Complex64>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| c.norm() == 0.0 || !c.is_finite()) {
            return Err(Error::NotFinite(i));
        }
        Ok(Self { coords })
    }

    pub fn identity(r: usize) -> Self {
        Self { coords: vec![Complex64::new(1.0, 0.0); r] }
    }

    /// `exp(x_j + i θ_j)` coordinatewise.
    pub fn from_log(modulus_log: &[f64], arg: &[f64]) -> Self {
        let coords = modulus_log.iter().zip(arg).map(|(x, a)| Complex64::from_polar(x.exp(), *a)).collect();
        Self { coords }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).collect() }
    }
}

/// `Σ λ_j ⊗ t_j ↦ Σ λ_j ⊗ ln|t_j|`.
pub fn ord(t: &TorusPoint) -> Vec<f64> {
    t.coords.iter().map(|c| c.norm().ln()).collect()
}

/// `χ(t) = Π t_j^{χ_j}`.
pub fn character_value(chi: &[Int], t: &TorusPoint) -> Complex64 {
    chi.iter().zip(&t.coords).fold(Complex64::new(1.0, 0.0), |acc, (e, c)| {
        let e = i32::try_from(e).expect("character exponent fits in i32");
        acc * c.powi(e)
    })
}

/// `ln|χ(t)| = ⟨χ, ord t⟩`, without forming the power.
pub fn character_log_modulus(chi: &[Int], ord_t: &[f64]) -> f64 {
    chi.iter().zip(ord_t).map(|(e, x)| crate::num::rat_to_f64(&Rat::from_integer(e.clone())) * x).sum()
}

/// The affine chart `T ⊂ T_σ = Spec C[X*(T) ∩ σ̌]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusChartModel {
    lattice: IntegerLattice,
    /// `σ` in lattice-basis coordinates.
    cone: Cone,
    #[serde(serialize_with = "crate::json::ser_int_vecs")]
    generators: Vec<IntVec>,
    /// For smooth `σ`: the lattice basis extending the rays, as columns; generators are its dual.
    #[serde(skip)]
    basis: Option<IntMatrix>,
}

impl TorusChartModel {
    /// `cone` is given in the ambient coordinates of `lattice` and must be strongly convex.
    pub fn new(lattice: IntegerLattice, cone: &Cone) -> Result<Self> {
        if !lattice.is_full_rank() {
            return Err(Error::NotFullRank { rank: lattice.rank(), ambient: lattice.ambient_rank() });
        }
        if cone.ambient_rank() != lattice.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: lattice.ambient_rank(), found: cone.ambient_rank() });
        }
        if !cone.is_strongly_convex() {
            return Err(Error::InvalidFan("chart cone is not strongly convex".into()));
        }
        let r = lattice.rank();
        let rays = cone.lattice_ray_coordinates(&lattice)?;
        let y_cone = Cone::from_rays(r, &rays)?;
        let (generators, basis) = if y_cone.is_smooth(&IntegerLattice::standard(r))? {
            let basis = complete_basis(&rays, r);
            (smooth_generators(&basis, rays.len()), Some(basis))
        } else if y_cone.is_top_dimensional() && r <= 3 {
            (hilbert_basis(&y_cone), None)
        } else {
            return Err(Error::Unsupported(format!(
                "non-smooth chart of rank {r} and dimension {}",
                y_cone.dim()
            )));
        };
        Ok(Self { lattice, cone: y_cone, generators, basis })
    }

    /// Over the standard lattice `Z^r`.
    pub fn standard(cone: &Cone) -> Result<Self> {
        Self::new(IntegerLattice::standard(cone.ambient_rank()), cone)
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// The chart cone in lattice-basis coordinates.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn monoid_generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn is_smooth(&self) -> bool {
        self.basis.is_some()
    }

    /// Generators positive on the relative interior of `σ`: the ones cutting out the `σ`-stratum.
    pub fn vanishing_generators(&self) -> Vec<usize> {
        let p = self.cone.interior_point();
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| crate::num::pair(g, &p).is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn chart_coordinates(&self, t: &TorusPoint) -> Vec<Complex64> {
        self.generators.iter().map(|g| character_value(g, t)).collect()
    }

    /// Inverse of the chart for smooth top-dimensional `σ`: `t = Π_j w_j^{ρ_j}`.
    pub fn point_from_chart(&self, w: &[Complex64]) -> Result<TorusPoint> {
        let basis = match &self.basis {
            Some(b) if self.cone.is_top_dimensional() => b,
            _ => return Err(Error::NotSmooth),
        };
        let r = self.rank();
        let coords = (0..r)
            .map(|k| {
                (0..r).fold(Complex64::new(1.0, 0.0), |acc, j| {
                    let e = i32::try_from(&basis[(k, j)]).expect("small exponent");
                    acc * w[j].powi(e)
                })
            })
            .collect();
        TorusPoint::new(coords)
    }

    /// Whether every lattice point of `σ̌` in the box `[-bound, bound]^r` is a
    /// nonnegative integer combination of the generators.
    pub fn saturation_holds(&self, bound: i64) -> bool {
        let r = self.rank();
        let dual = self.cone.dual();
        let mut memo: BTreeMap<IntVec, bool> = BTreeMap::new();
        box_points(r, bound).into_iter().all(|u| {
            !dual.contains_int(&u, Strictness::Boundary).unwrap_or(false) || self.represents(&u, &mut memo)
        })
    }

    fn represents(&self, u: &IntVec, memo: &mut BTreeMap<IntVec, bool>) -> bool {
        if let Some(b) = &self.basis {
            // coefficients on the dual basis are the pairings with the basis columns
            let r = self.rank();
            let k = self.cone.extreme_rays().len();
            let mut sum = vec![Int::zero(); r];
            for j in 0..r {
                let col = b.col(j);
                let dual_j = self.generators.iter().find(|g| (0..r).all(|i| dot(g, &b.col(i)) == int((i == j) as i64)));
                let Some(g) = dual_j else { return false };
                let c = dot(u, &col);
                if j < k && c.is_negative() {
                    return false;
                }
                for (s, x) in sum.iter_mut().zip(g) {
                    *s += &c * x;
                }
            }
            return &sum == u;
        }
        if u.iter().all(Zero::is_zero) {
            return true;
        }
        if let Some(v) = memo.get(u) {
            return *v;
        }
        let dual = self.cone.dual();
        let ok = self.generators.iter().any(|g| {
            let rest: IntVec = u.iter().zip(g).map(|(a, b)| a - b).collect();
            dual.contains_int(&rest, Strictness::Boundary).unwrap_or(false) && self.represents(&rest, memo)
        });
        memo.insert(u.clone(), ok);
        ok
    }
}

fn box_points(r: usize, bound: i64) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(int(x));
                    q
                })
            })
            .collect();
    }
    out
}

/// A unimodular matrix whose first columns are `rays` (which must be part of a basis of `Z^r`).
fn complete_basis(rays: &[IntVec], r: usize) -> IntMatrix {
    let k = rays.len();
    let m = IntMatrix::from_cols(rays, r).expect("ray width");
    let snf = smith_normal_form(&m);
    let linv = snf.left.to_rational().inverse().expect("unimodular");
    let mut cols: Vec<IntVec> = rays.to_vec();
    for j in k..r {
        cols.push(linv.col(j).iter().map(|x| x.to_integer()).collect());
    }
    IntMatrix::from_cols(&cols, r).expect("square")
}

/// Dual basis rows of `basis`: the first `k` are monoid generators, the rest appear with both signs.
fn smooth_generators(basis: &IntMatrix, k: usize) -> Vec<IntVec> {
    let inv = basis.to_rational().inverse().expect("unimodular");
    let r = basis.rows();
    let mut out = Vec::new();
    for i in 0..r {
        let u: IntVec = inv.row(i).iter().map(|x| x.to_integer()).collect();
        if i >= k {
            out.push(u.iter().map(|x| -x).collect());
        }
        out.push(u);
    }
    out
}

/// Irreducible lattice points of a pointed `σ̌`, found among points of degree at most
/// the sum of the degrees of its extreme rays.
fn hilbert_basis(sigma: &Cone) -> Vec<IntVec> {
    let dual = sigma.dual();
    let r = sigma.ambient_rank();
    let s: IntVec = primitive_from_rat(&sigma.interior_point());
    let gens = dual.extreme_rays();
    let degree = |u: &[Int]| dot(u, &s);
    let total: Int = gens.iter().map(|g| degree(g)).sum();
    // the slab {deg ≤ total} ∩ σ̌ has vertices 0 and g·total/deg(g)
    let mut lo = vec![Int::zero(); r];
    let mut hi = vec![Int::zero(); r];
    for g in gens {
        let dg = degree(g);
        for i in 0..r {
            let v = Rat::new(&g[i] * &total, dg.clone());
            lo[i] = lo[i].clone().min(v.floor().to_integer());
            hi[i] = hi[i].clone().max(v.ceil().to_integer());
        }
    }
    let mut points: Vec<IntVec> = vec![Vec::new()];
    for i in 0..r {
        let (a, b) = (i64::try_from(&lo[i]).expect("small"), i64::try_from(&hi[i]).expect("small"));
        points = points
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(int(x));
                    q
                })
            })
            .collect();
    }
    let mut inside: Vec<IntVec> = points
        .into_iter()
        .filter(|u| {
            !u.iter().all(Zero::is_zero)
                && degree(u) <= total
                && dual.contains_int(u, Strictness::Boundary).unwrap_or(false)
        })
        .collect();
    inside.sort_by_key(|u| degree(u));
    let set: HashSet<IntVec> = inside.iter().cloned().collect();
    let mut basis: Vec<IntVec> = inside
        .iter()
        .filter(|u| {
            !inside.iter().take_while(|a| degree(a) < degree(u)).any(|a| {
                let b: IntVec = u.iter().zip(a).map(|(x, y)| x - y).collect();
                set.contains(&b)
            })
        })
        .cloned()
        .collect();
    basis.sort();
    basis
}

/// Whether the sequence tends to the `σ`-stratum: along the second half of the
/// sequence every vanishing generator has strictly decreasing log-modulus (by
/// more than `tolerance`), ending below `ln(tolerance)`.
///
/// An empty sequence approaches nothing; for `σ = {0}` the condition is vacuous.
pub fn approaches_stratum(m: &TorusChartModel, seq: &[TorusPoint], tolerance: f64) -> bool {
    if seq.is_empty() {
        return false;
    }
    let tail: Vec<Vec<f64>> = seq[seq.len() / 2..].iter().map(ord).collect();
    m.vanishing_generators().into_iter().all(|i| {
        let chi = &m.generators[i];
        let logs: Vec<f64> = tail.iter().map(|o| character_log_modulus(chi, o)).collect();
        logs.windows(2).all(|w| w[1] < w[0] - tolerance) && *logs.last().expect("nonempty") < tolerance.ln()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub cone: Cone,
    /// `r - dim σ`.
    pub orbit_dimension: usize,
}

/// `T ⊂ T_Σ`, one chart per cone of the fan.
#[derive(Clone, Debug)]
pub struct TorusEmbedding {
    fan: Fan,
    charts: Vec<TorusChartModel>,
}

impl TorusEmbedding {
    pub fn new(fan: Fan) -> Result<Self> {
        let charts = fan
            .cones()
            .iter()
            .map(|c| TorusChartModel::new(fan.lattice().clone(), c))
            .collect::<Result<_>>()?;
        Ok(Self { fan, charts })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn charts(&self) -> &[TorusChartModel] {
        &self.charts
    }

    /// One orbit per cone.
    pub fn strata(&self) -> Vec<Stratum> {
        let r = self.fan.lattice().rank();
        self.fan
            .cones()
            .iter()
            .map(|c| Stratum { cone: c.clone(), orbit_dimension: r - c.dim() })
            .collect()
    }

    /// The cone whose stratum the sequence tends to: the largest cone whose chart
    /// sees it approach its stratum.
    pub fn limit_stratum(&self, seq: &[TorusPoint], tolerance: f64) -> Option<usize> {
        (0..self.charts.len())
            .filter(|&i| approaches_stratum(&self.charts[i], seq, tolerance))
            .max_by_key(|&i| self.fan.cones()[i].dim())
    }
}

/// Escaping sequence `ord(t_k) = base + k·step·direction`, `k = 1..=len`, with arguments `args`.
pub fn escaping_sequence(base: &[f64], direction: &[f64], step: f64, len: usize, args: &[f64]) -> Vec<TorusPoint> {
    (1..=len)
        .map(|k| {
            let o: Vec<f64> = base.iter().zip(direction).map(|(b, d)| b + k as f64 * step * d).collect();
            TorusPoint::from_log(&o, args)
        })
        .collect()
}

pub fn to_f64_vec(v: &[Int]) -> Vec<f64> {
    to_rat_vec(v).iter().map(crate::num::rat_to_f64).collect()
}

/// Identity of the pairing check `ln|χ(t)| = ⟨χ, ord t⟩` for every generator.
pub fn chart_ord_compatible(m: &TorusChartModel, t: &TorusPoint, tolerance: f64) -> bool {
    let o = ord(t);
    m.chart_coordinates(t)
        .iter()
        .zip(m.monoid_generators())
        .all(|(w, g)| (w.norm().ln() - character_log_modulus(g, &o)).abs() < tolerance)
}
