//! Exact data for the example families: boundary-component dimensions,
//! congruence lattices, essential-dimension bounds and the two explicit fixed points.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;
use serde_json::json;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::{Fan, FanFile, SupportRegion};
use crate::linalg::{quotient_group, FiniteAbelianGroup, IntegerLattice, RationalMatrix};
use crate::num::{int, is_prime, ivec, Int, IntVec};
use crate::report::Report;
use crate::rng::SplitMix64;
use crate::toric::{ord, quotient_by_isogeny, Isogeny, RootOfUnity, TorusChartModel, TorusPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TorusR,
    Siegel,
    Universal,
    Kuga,
    Gl2,
    KugaGl2,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::TorusR, Family::Siegel, Family::Universal, Family::Kuga, Family::Gl2, Family::KugaGl2];

    pub fn name(self) -> &'static str {
        match self {
            Family::TorusR => "torus_r",
            Family::Siegel => "siegel",
            Family::Universal => "universal",
            Family::Kuga => "kuga",
            Family::Gl2 => "gl2",
            Family::KugaGl2 => "kuga_gl2",
        }
    }

    /// `gl2` and `kuga_gl2` are the genus-one members of `siegel` and `kuga`.
    fn fixed_genus(self) -> Option<usize> {
        matches!(self, Family::Gl2 | Family::KugaGl2).then_some(1)
    }

    fn check_level(self, d: i64) -> Result<()> {
        let ok = match self {
            Family::TorusR => d >= 1,
            Family::Universal => d >= 4 && d % 2 == 0,
            _ => d >= 3,
        };
        if ok {
            return Ok(());
        }
        let constraint = match self {
            Family::TorusR => "d >= 1",
            Family::Universal => "d >= 4 and d even",
            _ => "d >= 3",
        };
        Err(Error::InvalidLevel(format!("{} requires {constraint}, got d = {d}", self.name())))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnsupportedFamily(s.to_string()))
    }
}

fn triangle(k: usize) -> usize {
    k * (k + 1) / 2
}

fn check_rank(family: Family, n: usize, r: usize) -> Result<()> {
    if r > n {
        return Err(Error::InvalidRank(format!("isotropic rank {r} exceeds {n}")));
    }
    if let Some(g) = family.fixed_genus() {
        if n != g {
            return Err(Error::InvalidRank(format!("{family} has n = {g}, got {n}")));
        }
    }
    Ok(())
}

/// Dimension of the centre `U₁` of the unipotent radical for the boundary component of isotropic rank `r`.
///
/// For `torus_r`, `n` is the rank of the torus and `r` the rank of the congruence part taken into account.
pub fn u1_dimension(family: Family, n: usize, r: usize) -> Result<usize> {
    check_rank(family, n, r)?;
    Ok(match family {
        Family::TorusR => r,
        Family::Siegel | Family::Gl2 => triangle(r),
        Family::Universal => 1 + r + triangle(r),
        Family::Kuga | Family::KugaGl2 => r + triangle(r),
    })
}

/// Complex dimension of the connected Shimura variety.
pub fn base_dimension(family: Family, n: usize) -> usize {
    let n = family.fixed_genus().unwrap_or(n);
    match family {
        Family::TorusR => n,
        Family::Siegel | Family::Gl2 => triangle(n),
        Family::Universal => 1 + n + triangle(n),
        Family::Kuga | Family::KugaGl2 => n + triangle(n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponentData {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub u1_dimension: usize,
    pub base_dimension: usize,
}

impl BoundaryComponentData {
    pub fn new(family: Family, n: usize, r: usize) -> Result<Self> {
        Ok(Self { family, n, r, u1_dimension: u1_dimension(family, n, r)?, base_dimension: base_dimension(family, n) })
    }
}

/// `dim` of `{X ∈ sp_2n : X(V₀^⊥) = 0, X(V) ⊆ V₀}` for `V₀ = span(e_1..e_r)`, by exact rank.
///
/// Basis `e_1..e_n, f_1..f_n` with `ψ(e_i, f_j) = δ_ij`.
pub fn siegel_u1_rank_check(n: usize, r: usize) -> Result<usize> {
    if r > n {
        return Err(Error::InvalidRank(format!("isotropic rank {r} exceeds {n}")));
    }
    let dim = 2 * n;
    let unknowns = dim * dim;
    let var = |i: usize, j: usize| i * dim + j;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    // X^T J + J X = 0 with J = [[0, I], [-I, 0]]
    let j = |a: usize, b: usize| -> i64 {
        if a < n && b == a + n {
            1
        } else if a >= n && b + n == a {
            -1
        } else {
            0
        }
    };
    for a in 0..dim {
        for b in a..dim {
            let mut row = vec![0i64; unknowns];
            for k in 0..dim {
                // (X^T J)_{ab} = Σ_k X_{ka} J_{kb}; (J X)_{ab} = Σ_k J_{ak} X_{kb}
                row[var(k, a)] += j(k, b);
                row[var(k, b)] += j(a, k);
            }
            if row.iter().any(|x| *x != 0) {
                rows.push(row);
            }
        }
    }
    // kills e_1..e_n and f_{r+1}..f_n
    let killed = (0..n).chain(n + r..dim);
    for col in killed {
        for i in 0..dim {
            let mut row = vec![0i64; unknowns];
            row[var(i, col)] = 1;
            rows.push(row);
        }
    }
    // image of f_1..f_r inside V₀
    for col in n..n + r {
        for i in r..dim {
            let mut row = vec![0i64; unknowns];
            row[var(i, col)] = 1;
            rows.push(row);
        }
    }
    let slices: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let rank = RationalMatrix::from_i64(&slices).rank();
    Ok(unknowns - rank)
}

/// `(Γ_U₁(d), Γ_U₁(md))` inside `U₁(Z) = Z^u`.
fn congruence_pair(u: usize, d: i64, m: i64) -> (IntegerLattice, IntegerLattice) {
    let base = IntegerLattice::standard(u);
    (base.scaled(&int(d)), base.scaled(&int(m * d)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRecord {
    pub symbol: &'static str,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_int")]
    pub order: Option<Int>,
}

fn ser_opt_int<S: serde::Serializer>(v: &Option<Int>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceLevelData {
    pub family: Family,
    pub d: i64,
    pub md: i64,
    pub u1_dimension: usize,
    pub gamma_u1: IntegerLattice,
    pub gamma_u1_sub: IntegerLattice,
    pub quotient: FiniteAbelianGroup,
    pub ledger: Vec<GroupRecord>,
    /// Proof bookkeeping symbols that the catalog does not model.
    pub unhoused: Vec<&'static str>,
}

/// The congruence lattices of level `d` and `md` for the boundary component of rank `r`.
pub fn congruence_level_data(family: Family, n: usize, r: usize, d: i64, m: i64) -> Result<CongruenceLevelData> {
    family.check_level(d)?;
    if m < 1 {
        return Err(Error::InvalidLevel(format!("m >= 1 required, got m = {m}")));
    }
    let u = u1_dimension(family, n, r)?;
    let (gamma_u1, gamma_u1_sub) = congruence_pair(u, d, m);
    let quotient = quotient_group(&gamma_u1, &gamma_u1_sub)?;
    let record = |symbol, description: String, rank, order| GroupRecord { symbol, description, rank, order };
    let ledger = vec![
        record("Γ", format!("{family} congruence subgroup of level {d}, neat"), None, None),
        record("Γ_Z", "trivial: the centre meets a neat group trivially".into(), Some(0), Some(Int::one())),
        record("Δ", format!("Γ(d)/Γ(md) with d = {d}, m = {m}"), None, None),
        record("Γ_{ZU₁}", format!("Γ_Z × Γ_{{U₁}}, free of rank {u}"), Some(u), None),
        record("Γ_{U₁}", format!("{d}·U₁(Z), free of rank {u}"), Some(u), None),
        record("Ω_{U₁}", "equal to Γ_{U₁}".into(), Some(u), None),
        record("Γ_{U₁}/Γ'_{U₁}", format!("(Z/{m})^{u}"), Some(0), quotient.order()),
    ];
    Ok(CongruenceLevelData {
        family,
        d,
        md: m * d,
        u1_dimension: u,
        gamma_u1,
        gamma_u1_sub,
        quotient,
        ledger,
        unhoused: vec!["Λ_{ZU₁}", "Λ_{U₁}", "δ_Q", "Δ_Q"],
    })
}

/// One row of a bound table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub d: i64,
    pub m: i64,
    pub p: i64,
    pub u1_dim: usize,
    pub bound: usize,
    pub base_dim: usize,
    pub incompressible: bool,
}

pub const TSV_HEADER: &str = "family\tn\tr\td\tm\tp\tu1_dim\tbound\tbase_dim\tincompressible";

impl BoundRow {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.family, self.n, self.r, self.d, self.m, self.p, self.u1_dim, self.bound, self.base_dim, self.incompressible
        )
    }
}

/// `rank_p(Γ_U₁(d) / Γ_U₁(md))`, a lower bound for the essential `p`-dimension of the level-`md` cover.
pub fn ed_lower_bound(family: Family, n: usize, r: usize, d: i64, m: i64, p: i64) -> Result<BoundRow> {
    family.check_level(d)?;
    if m < 2 {
        return Err(Error::InvalidLevel(format!("m >= 2 required, got m = {m}")));
    }
    if !is_prime(&int(p)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let data = congruence_level_data(family, n, r, d, m)?;
    let bound = data.quotient.p_rank(&int(p))?;
    let base_dim = base_dimension(family, n);
    let n = family.fixed_genus().unwrap_or(n);
    Ok(BoundRow {
        family,
        n,
        r,
        d,
        m,
        p,
        u1_dim: data.u1_dimension,
        bound,
        base_dim,
        incompressible: r == n && bound == base_dim && m % p == 0,
    })
}

/// Rows for `r = 0..=n`.
pub fn bound_table(family: Family, n: usize, d: i64, m: i64, p: i64) -> Result<Vec<BoundRow>> {
    let n = family.fixed_genus().unwrap_or(n);
    (0..=n).map(|r| ed_lower_bound(family, n, r, d, m, p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusCoverEd {
    pub ed: usize,
    pub incompressible: bool,
}

/// `ed(G_m^r → G_m^r; p)` for the cover `(x_i) ↦ (x_i^{n_i})`, which equals `rank_p(⊕ Z/n_i)`.
pub fn torus_cover_ed(n_list: &[i64], p: i64) -> Result<TorusCoverEd> {
    if let Some(k) = n_list.iter().find(|k| **k < 1) {
        return Err(Error::InvalidLevel(format!("cover degrees must be >= 1, got {k}")));
    }
    let orders: Vec<Int> = n_list.iter().map(|k| int(*k)).collect();
    let ed = FiniteAbelianGroup::from_cyclic_orders(&orders).p_rank(&int(p))?;
    Ok(TorusCoverEd { ed, incompressible: n_list.iter().all(|k| k % p == 0) })
}

/// `ed(Sp_2n(F_p); p) = p^{n-1}`, quoted from the literature and not verified here.
pub fn siegel_external_reference(n: u32, p: i64) -> Int {
    num_traits::pow(int(p), n.saturating_sub(1) as usize)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointCertificate {
    /// The stratum's cone in lattice coordinates.
    pub stratum: Cone,
    pub orbit_dimension: usize,
    #[serde(serialize_with = "crate::json::ser_ints")]
    pub stabilizer_orders: Vec<Int>,
    pub fixes_stratum: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gl2FixedPoint {
    pub d: i64,
    /// Cones live in `(2πi)^{-1}`-twisted coordinates.
    pub twisted: bool,
    pub cone: Cone,
    #[serde(skip)]
    pub fan: Fan,
    #[serde(serialize_with = "crate::json::ser_ints")]
    pub character: IntVec,
    pub model: TorusChartModel,
    pub isogeny: Isogeny,
    pub certificate: FixedPointCertificate,
}

impl Gl2FixedPoint {
    /// The torus point of `z = x + (2πi)^{-1} s` in `(dZ)\C`.
    pub fn torus_point(&self, x: f64, s: f64) -> TorusPoint {
        let d = self.d as f64;
        TorusPoint::from_log(&[s / d], &[std::f64::consts::TAU * x / d])
    }

    /// `e^{-2πiz/d}`.
    pub fn chart(&self, x: f64, s: f64) -> Complex64 {
        self.model.chart_coordinates(&self.torus_point(x, s))[0]
    }

    /// Samples `z` with `s > 0` and checks the chart lands in the punctured disc at
    /// modulus `e^{-s/d}`, that `z ↦ z + d` is trivial and `z ↦ z + 1` is the kernel action.
    pub fn sample_check(&self, samples: usize, seed: u64, tolerance: f64) -> Report {
        let mut rng = SplitMix64::new(seed);
        let mut report = Report::new("gl2", Some(seed));
        let d = self.d as f64;
        let zeta = self.isogeny.act(&ivec(&[1])).expect("rank one")[0].to_complex();
        let (mut inside, mut closed_form, mut period, mut shift) = (0, 0f64, 0f64, 0f64);
        for _ in 0..samples {
            let x = d * rng.next_f64();
            let s = d * 8.0 * (1.0 - rng.next_f64());
            let w = self.chart(x, s);
            let modulus = w.norm();
            inside += usize::from(modulus > 0.0 && modulus < 1.0);
            closed_form = closed_form.max((modulus - (-s / d).exp()).abs());
            period = period.max((self.chart(x + d, s) - w).norm());
            shift = shift.max((self.chart(x + 1.0, s) - zeta * w).norm());
        }
        report.push("punctured-disc", inside == samples, json!(format!("{inside}/{samples}")));
        report.push("modulus-closed-form", closed_form <= tolerance, json!(closed_form));
        report.push("period-d-trivial", period <= tolerance, json!(period));
        report.push("unit-shift-is-kernel-action", shift <= tolerance, json!(shift));
        let expected = RootOfUnity::zeta(self.d, -1);
        report.push(
            "action-table",
            self.isogeny.action == vec![vec![expected.clone()]],
            json!({"expected": expected, "found": self.isogeny.action}),
        );
        report.push("fixes-origin", self.certificate.fixes_stratum, json!(self.certificate));
        report
    }
}

/// The modular-curve cusp: `Y = dZ`, `C` the positive half-axis, fan `{0, R≤0}`.
pub fn gl2_fixed_point_data(d: i64) -> Result<Gl2FixedPoint> {
    Family::Gl2.check_level(d)?;
    let y = IntegerLattice::standard(1).scaled(&int(d));
    let sigma = Cone::of(1, &[&[-1]]);
    let fan = Fan::from_maximal(y.clone(), std::slice::from_ref(&sigma))?;
    let model = TorusChartModel::new(y, &sigma)?;
    let isogeny = quotient_by_isogeny(&model, &IntegerLattice::standard(1))?;
    let certificate = FixedPointCertificate {
        stratum: model.cone().clone(),
        orbit_dimension: 1 - model.cone().dim(),
        stabilizer_orders: isogeny.kernel.invariant_factors().to_vec(),
        fixes_stratum: (0..isogeny.action.len()).all(|i| isogeny.fixes_stratum(i)),
    };
    Ok(Gl2FixedPoint {
        d,
        twisted: true,
        cone: Cone::of(1, &[&[1]]),
        fan,
        character: model.monoid_generators()[0].clone(),
        model,
        isogeny,
        certificate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KugaCone {
    pub index: i64,
    /// `-σ_n` in ambient coordinates.
    pub cone: Cone,
    /// Rows `(-(n+1), 1)` and `(n, -1)`.
    #[serde(serialize_with = "crate::json::ser_int_vecs")]
    pub characters: Vec<IntVec>,
    #[serde(serialize_with = "crate::json::ser_int")]
    pub det: Int,
    /// `action[i][j]`: how the unit vector `e_i` of `Z^2` acts on `characters[j]`.
    pub action: Vec<Vec<RootOfUnity>>,
    pub fixes_stratum: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KugaFixedPoint {
    pub d: i64,
    pub window: usize,
    pub twisted: bool,
    /// `R>0 × R`, given by its closure.
    pub cone: Cone,
    #[serde(skip)]
    pub fan_file: FanFile,
    pub cones: Vec<KugaCone>,
}

pub fn kuga_shift() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[1, 0], &[1, 1]])
}

/// `(λ, v) ↦ (λ, dλ - v)`.
pub fn kuga_reflection_with_shear(d: i64) -> RationalMatrix {
    RationalMatrix::from_i64(&[&[1, 0], &[d, -1]])
}

/// Rays `(-1, -n)` and `(-1, -n-1)`.
pub fn kuga_cone(n: i64) -> Cone {
    Cone::of(2, &[&[-1, -n], &[-1, -n - 1]])
}

pub fn kuga_characters(n: i64) -> Vec<IntVec> {
    vec![ivec(&[-(n + 1), 1]), ivec(&[n, -1])]
}

/// The wedge covered by `-σ_n` for `|n| ≤ window`.
pub fn kuga_window(window: usize) -> SupportRegion {
    let w = window as i64;
    SupportRegion::closed(Cone::of(2, &[&[-1, w], &[-1, -w - 1]]))
}

impl KugaFixedPoint {
    /// Samples moduli in `(0,1)^2` for each chart, rebuilds the torus point and checks `ord` lies in `C`.
    pub fn coverage_check(&self, samples: usize, seed: u64, tolerance: f64) -> Result<Report> {
        let mut report = Report::new("kuga", Some(seed));
        let y = self.fan_file.fan.lattice().clone();
        for (k, kc) in self.cones.iter().enumerate() {
            let model = TorusChartModel::new(y.clone(), &kc.cone)?;
            let mut rng = SplitMix64::fork(seed, k as u64);
            let (mut covered, mut worst) = (0, f64::INFINITY);
            for _ in 0..samples {
                let w: Vec<Complex64> = (0..2)
                    .map(|_| {
                        let modulus = loop {
                            let a = rng.next_f64();
                            if a > 0.0 {
                                break a;
                            }
                        };
                        Complex64::from_polar(modulus, std::f64::consts::TAU * rng.next_f64())
                    })
                    .collect();
                let lambda = ord(&model.point_from_chart(&w)?)[0];
                worst = worst.min(lambda);
                covered += usize::from(lambda > tolerance);
            }
            report.push(
                format!("sigma[{}]/covers-open-square", kc.index),
                covered == samples,
                json!({"covered": format!("{covered}/{samples}"), "smallest-lambda": worst}),
            );
        }
        Ok(report)
    }

    /// Every exact property: fan axioms, smoothness, invariance, characters and action table.
    pub fn exact_checks(&self) -> Result<Report> {
        let mut report = Report::new("kuga-exact", None);
        let fan = &self.fan_file.fan;
        let v = fan.validate();
        report.push("fan-valid", v.is_valid(), serde_json::to_value(&v).expect("serializable"));
        report.push("fan-smooth", fan.is_smooth()?, json!(null));
        let inv = fan.is_invariant_under(&self.fan_file.symmetry_generators, self.fan_file.support.as_ref())?;
        report.push("invariant", inv.is_invariant(), serde_json::to_value(&inv).expect("serializable"));
        let complete = fan.is_complete_over(self.fan_file.support.as_ref().expect("window"))?;
        report.push("window-complete", complete.complete, json!(null));
        let d = int(self.d);
        for kc in &self.cones {
            let n = kc.index;
            report.push(
                format!("sigma[{n}]/characters"),
                kc.characters == kuga_characters(n) && kc.det.is_one(),
                json!({"characters": crate::json::int_rows(&kc.characters), "det": kc.det.to_string()}),
            );
            let expected = vec![
                vec![RootOfUnity::zeta(self.d, -(n + 1)), RootOfUnity::zeta(self.d, n)],
                vec![RootOfUnity::zeta(self.d, 1), RootOfUnity::zeta(self.d, -1)],
            ];
            let exps: Vec<Vec<String>> = kc
                .action
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|z| z.as_power_of_zeta(&d).map_or_else(|| z.to_string(), |k| k.to_string()))
                        .collect()
                })
                .collect();
            report.push(format!("sigma[{n}]/action"), kc.action == expected, json!(exps));
            report.push(format!("sigma[{n}]/fixes-stratum"), kc.fixes_stratum, json!(null));
        }
        Ok(report)
    }
}

/// The Kuga boundary over the modular curve, truncated to `-σ_n` for `|n| ≤ window`, with `Y = dZ × dZ`.
pub fn kuga_fixed_point_data(d: i64, window: usize) -> Result<KugaFixedPoint> {
    Family::KugaGl2.check_level(d)?;
    if window < 1 {
        return Err(Error::InvalidRank("window must be at least 1".into()));
    }
    let y = IntegerLattice::standard(2).scaled(&int(d));
    let w = window as i64;
    let maximal: Vec<Cone> = (-w..=w).map(kuga_cone).collect();
    let fan = Fan::from_maximal(y.clone(), &maximal)?;
    let fan_file = FanFile {
        fan,
        symmetry_generators: vec![kuga_shift(), kuga_reflection_with_shear(d)],
        support: Some(kuga_window(window)),
    };
    let z2 = IntegerLattice::standard(2);
    let units = [ivec(&[1, 0]), ivec(&[0, 1])];
    let mut cones = Vec::new();
    for (n, c) in (-w..=w).zip(maximal) {
        let model = TorusChartModel::new(y.clone(), &c)?;
        let isogeny = quotient_by_isogeny(&model, &z2)?;
        let gens = model.monoid_generators();
        let order: Vec<usize> = kuga_characters(n)
            .iter()
            .map(|chi| gens.iter().position(|g| g == chi).unwrap_or(usize::MAX))
            .collect();
        let characters: Vec<IntVec> = if order.iter().all(|i| *i < gens.len()) {
            order.iter().map(|i| gens[*i].clone()).collect()
        } else {
            gens.to_vec()
        };
        let det = &characters[0][0] * &characters[1][1] - &characters[0][1] * &characters[1][0];
        let action = units
            .iter()
            .map(|u| {
                let row = isogeny.act(u)?;
                Ok(if order.iter().all(|i| *i < row.len()) { order.iter().map(|i| row[*i].clone()).collect() } else { row })
            })
            .collect::<Result<Vec<_>>>()?;
        let fixes_stratum = (0..isogeny.action.len()).all(|i| isogeny.fixes_stratum(i));
        cones.push(KugaCone { index: n, cone: c, characters, det, action, fixes_stratum });
    }
    Ok(KugaFixedPoint {
        d,
        window,
        twisted: true,
        cone: Cone::of(2, &[&[1, 0], &[0, 1], &[0, -1]]),
        fan_file,
        cones,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerLedger {
    pub family: Family,
    pub d: i64,
    /// The `±` ambiguity in the stabilizer, present only for `d ≤ 2`.
    pub sign_flag: bool,
    pub stabilizer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_part: Option<String>,
}

pub fn stabilizer_ledger(family: Family, d: i64) -> Result<StabilizerLedger> {
    if d < 1 {
        return Err(Error::InvalidLevel(format!("d >= 1 required, got d = {d}")));
    }
    let sign_flag = d <= 2;
    let sign = if sign_flag { "±" } else { "" };
    let torus = format!("{sign}[[a, b], [0, 1]], a > 0, b ∈ {d}Z");
    match family {
        Family::Gl2 => Ok(StabilizerLedger { family, d, sign_flag, stabilizer: torus, lattice_part: None }),
        Family::KugaGl2 => Ok(StabilizerLedger {
            family,
            d,
            sign_flag,
            stabilizer: format!("[Q; {d}Z] ⋊ {torus}"),
            lattice_part: Some(format!("Q × {d}Z")),
        }),
        other => Err(Error::UnsupportedFamily(other.name().to_string())),
    }
}
