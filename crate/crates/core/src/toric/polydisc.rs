//! Sampling check that a small punctured polydisc of a smooth chart lies in the
//! image of `c + C` under `ord`.

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::json;

use super::{ord, TorusChartModel};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::IntegerLattice;
use crate::num::{dot, pair, rat_to_f64, Int, IntVec, Rat};
use crate::report::Report;
use crate::rng::SplitMix64;

#[derive(Clone, Debug, PartialEq)]
pub struct PolydiscOptions {
    pub radius: f64,
    pub samples: usize,
    pub seed: u64,
    /// Translate `c`, ambient coordinates; `-ord` must land in the open set `c + C`.
    pub offset: Option<Vec<Rat>>,
    pub tolerance: f64,
}

impl PolydiscOptions {
    pub fn new(radius: f64, samples: usize, seed: u64) -> Self {
        Self { radius, samples, seed, offset: None, tolerance: super::TOLERANCE }
    }
}

fn to_lattice_cone(lattice: &IntegerLattice, c: &Cone) -> Result<Cone> {
    Cone::from_rays(lattice.rank(), &c.lattice_ray_coordinates(lattice)?)
}

/// Largest `r` such that every chart point with all moduli below `r` has `-ord ∈ c + C`:
/// `exp(-max_h max(0, ⟨h, c⟩ / Σ_j ⟨h, ρ_j⟩))` over the facets `h` of `C`.
pub fn certified_radius(c_lattice: &Cone, rays: &[IntVec], offset: &[Rat]) -> f64 {
    let worst = c_lattice
        .facets()
        .iter()
        .map(|h| {
            let total: Int = rays.iter().map(|r| dot(h, r)).sum();
            if total.is_zero() {
                return if pair(h, offset) < Rat::zero() { 0.0 } else { f64::INFINITY };
            }
            (rat_to_f64(&pair(h, offset)) / rat_to_f64(&Rat::from_integer(total))).max(0.0)
        })
        .fold(0.0, f64::max);
    (-worst).exp()
}

/// Samples chart points `w` with moduli in `(0, radius]` (the corner `|w_j| = radius`
/// always included), rebuilds the torus point, and tests `-ord(t) ∈ c + C` strictly.
pub fn punctured_polydisc_check(lattice: &IntegerLattice, c: &Cone, sigma: &Cone, opts: &PolydiscOptions) -> Result<Report> {
    if !sigma.is_top_dimensional() {
        return Err(Error::NotTopDimensional);
    }
    if !sigma.is_smooth(lattice)? {
        return Err(Error::NotSmooth);
    }
    if !c.is_top_dimensional() {
        return Err(Error::NotTopDimensional);
    }
    let model = TorusChartModel::new(lattice.clone(), sigma)?;
    let c_y = to_lattice_cone(lattice, c)?;
    if !c_y.contains_cone(model.cone()) {
        return Err(Error::HypothesisViolated { case: "sigma".into(), reason: "chart cone is not inside C".into() });
    }
    let r = lattice.rank();
    let offset = match &opts.offset {
        None => vec![Rat::zero(); r],
        Some(o) => lattice
            .rational_coordinates(o)?
            .ok_or(Error::DimensionMismatch { expected: r, found: o.len() })?,
    };
    let sigma_rays = sigma.lattice_ray_coordinates(lattice)?;
    let certified = certified_radius(&c_y, &sigma_rays, &offset);

    let facets: Vec<Vec<f64>> = c_y.facets().iter().map(|h| super::to_f64_vec(h)).collect();
    let off: Vec<f64> = offset.iter().map(rat_to_f64).collect();
    let mut rng = SplitMix64::new(opts.seed);
    let mut report = Report::new("polydisc", Some(opts.seed));
    let (mut passed, mut worst_round_trip) = (0usize, 0f64);
    let mut nearest_failure: Option<(f64, Vec<f64>)> = None;
    let mut smallest_margin = f64::INFINITY;
    for i in 0..opts.samples {
        let moduli: Vec<f64> = (0..r)
            .map(|_| if i == 0 { opts.radius } else { opts.radius * (1.0 - rng.next_f64()) })
            .collect();
        let w: Vec<Complex64> = moduli
            .iter()
            .map(|m| Complex64::from_polar(*m, std::f64::consts::TAU * rng.next_f64()))
            .collect();
        let t = model.point_from_chart(&w)?;
        let back = model.chart_coordinates(&t);
        let err = back.iter().zip(&w).map(|(a, b)| (a - b).norm() / b.norm().max(1.0)).fold(0.0, f64::max);
        worst_round_trip = worst_round_trip.max(err);
        let x: Vec<f64> = ord(&t).iter().map(|v| -v).collect();
        let margin = facets
            .iter()
            .map(|h| h.iter().zip(&x).zip(&off).map(|((a, b), o)| a * (b - o)).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        smallest_margin = smallest_margin.min(margin);
        if margin > opts.tolerance {
            passed += 1;
        } else if nearest_failure.as_ref().is_none_or(|(m, _)| margin.abs() < m.abs()) {
            nearest_failure = Some((margin, moduli));
        }
    }
    report.push("samples-inside", passed == opts.samples, json!(format!("{passed}/{}", opts.samples)));
    report.push("round-trip", worst_round_trip < opts.tolerance, json!(worst_round_trip));
    report.push("certified-radius", true, json!(certified));
    report.push("smallest-margin", true, json!(smallest_margin));
    if let Some((m, moduli)) = nearest_failure {
        report.push("nearest-failure", false, json!({"margin": m, "moduli": moduli}));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn quadrant() -> Cone {
        Cone::of(2, &[&[1, 0], &[0, 1]])
    }

    #[test]
    fn half_radius_passes_unit_radius_fails() {
        let z2 = IntegerLattice::standard(2);
        let r = punctured_polydisc_check(&z2, &quadrant(), &quadrant(), &PolydiscOptions::new(0.5, 200, 1)).unwrap();
        assert!(r.pass);
        let r = punctured_polydisc_check(&z2, &quadrant(), &quadrant(), &PolydiscOptions::new(1.0, 200, 1)).unwrap();
        assert!(!r.pass);
        assert!(r.checks.iter().any(|c| c.name == "nearest-failure"));
    }

    #[test]
    fn offset_shrinks_the_certified_radius() {
        let z2 = IntegerLattice::standard(2);
        let c = Cone::of(2, &[&[1, 0], &[1, 2]]);
        let sigma = Cone::of(2, &[&[1, 0], &[1, 1]]);
        let offset = vec![rat(1, 1), rat(0, 1)];
        let c_y = to_lattice_cone(&z2, &c).unwrap();
        let rays = sigma.lattice_ray_coordinates(&z2).unwrap();
        let r0 = certified_radius(&c_y, &rays, &[rat(0, 1), rat(0, 1)]);
        let r1 = certified_radius(&c_y, &rays, &offset);
        assert!((r0 - 1.0).abs() < 1e-12);
        assert!(r1 < r0);
        let mut opts = PolydiscOptions::new(r1 * 0.99, 300, 2);
        opts.offset = Some(offset.clone());
        assert!(punctured_polydisc_check(&z2, &c, &sigma, &opts).unwrap().pass);
        opts.radius = r1 * 1.01;
        assert!(!punctured_polydisc_check(&z2, &c, &sigma, &opts).unwrap().pass);
    }

    #[test]
    fn rejects_singular_charts() {
        let z2 = IntegerLattice::standard(2);
        let s = Cone::of(2, &[&[1, 0], &[1, 2]]);
        assert!(matches!(
            punctured_polydisc_check(&z2, &quadrant(), &s, &PolydiscOptions::new(0.5, 1, 0)),
            Err(Error::NotSmooth)
        ));
        let ray = Cone::of(2, &[&[1, 0]]);
        assert!(matches!(
            punctured_polydisc_check(&z2, &quadrant(), &ray, &PolydiscOptions::new(0.5, 1, 0)),
            Err(Error::NotTopDimensional)
        ));
    }
}
