//! Exact check that the second-factor points approachable along `-σ⁰` inside an
//! open cone (or canonical core) are exactly its Fourier–Motzkin projection.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cone::{Cone, Strictness};
use crate::cores::{sigma_zero, Case, OpenCone};
use crate::error::{Error, Result};
use crate::fm::{Constraint, System};
use crate::json;
use crate::num::{pair, rat_to_f64, Int, Rat};
use crate::report::Report;
use crate::rng::SplitMix64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlMode {
    Cone,
    /// The canonical core `base + C`.
    Core(Vec<Rat>),
}

impl FlMode {
    fn base(&self, dim: usize) -> Vec<Rat> {
        match self {
            FlMode::Cone => vec![Rat::zero(); dim],
            FlMode::Core(b) => b.clone(),
        }
    }
}

/// Samples kept at least this far (in the row normalization of the projected system) from its boundary.
const MARGIN: f64 = 1e-3;
const ESCAPE_STEPS: i32 = 60;
const TAIL_FROM: i32 = 45;

/// Strict rows `h·x > h·b` of the region, coordinates reordered to `(z, v)`.
fn region_rows(c: &OpenCone, base: &[Rat]) -> Vec<(Vec<Rat>, Rat)> {
    let (n, _) = c.split();
    c.closure()
        .facets()
        .iter()
        .map(|h| {
            let coeffs: Vec<Rat> = h[n..].iter().chain(&h[..n]).map(|x| Rat::from_integer(x.clone())).collect();
            (coeffs, pair(h, base))
        })
        .collect()
}

fn margin(sys: &System, w: &[Rat]) -> f64 {
    sys.rows()
        .iter()
        .map(|r| {
            let val = rat_to_f64(&(crate::num::dot_rat(&r.coeffs, w) - &r.rhs));
            let norm: f64 = r.coeffs.iter().map(|x| rat_to_f64(x).abs()).sum::<f64>().max(1.0);
            (val / norm).abs()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Exact projection certificates per sample, compared against [`approachability_sampler`]
/// with `sequences` sampled sequences split evenly over the samples.
pub fn fundamental_lemma_check(
    c: &OpenCone,
    sigma: &Cone,
    mode: &FlMode,
    samples: usize,
    sequences: usize,
    seed: u64,
) -> Result<Report> {
    let (n, m) = c.split();
    if sigma.ambient_rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: sigma.ambient_rank() });
    }
    let lift = |v: &[Int]| -> Vec<Int> { v.iter().map(|x| -x).chain(std::iter::repeat_n(Int::zero(), m)).collect() };
    for r in sigma.rays() {
        if !c.closure().contains_int(&lift(&r), Strictness::Boundary)? {
            return Err(Error::HypothesisViolated {
                case: "sigma".into(),
                reason: "the negated chart cone is not inside the closure".into(),
            });
        }
    }
    let (_, case) = sigma_zero(c);
    if case == Case::Neither {
        return Err(Error::HypothesisViolated {
            case: "neither".into(),
            reason: "the cone neither misses the plane cut nor contains its interior".into(),
        });
    }
    let base = mode.base(n + m);
    if matches!(mode, FlMode::Core(_)) && !c.contains(&base) {
        return Err(Error::HypothesisViolated { case: "core".into(), reason: "base point is not interior".into() });
    }

    let mut report = Report::new("fundamental", Some(seed));
    report.push("case", true, json!(format!("{case:?}")));
    let rows = region_rows(c, &base);
    let strict = System::from_rows(n + m, rows.iter().map(|(a, b)| Constraint::gt(a.clone(), b.clone())).collect());
    let image = strict.project(m).ok_or_else(|| Error::HypothesisViolated {
        case: "empty".into(),
        reason: "the region is empty".into(),
    })?;
    report.push(
        "projection",
        true,
        Value::Array(
            image
                .rows()
                .iter()
                .map(|r| json!({"coeffs": json::rats(&r.coeffs), "rhs": json::rat(&r.rhs), "strict": r.strict}))
                .collect(),
        ),
    );

    let mut rng = SplitMix64::new(seed);
    let escape = sigma.interior_point();
    let per_sample = (sequences / samples.max(1)).max(1);
    let mut agree = 0;
    for i in 0..samples {
        let w = loop {
            let w: Vec<Rat> = if i % 2 == 0 {
                let p = c.sample(&mut rng);
                p[n..].iter().zip(&base[n..]).map(|(a, b)| a + b).collect()
            } else {
                (0..m).map(|_| rng.rational(-12, 12, 4)).collect()
            };
            if m == 0 || margin(&image, &w) >= MARGIN {
                break w;
            }
        };
        let inside = image.holds(&w);
        let certificate = if inside {
            // a preimage over w, then the escaping ray (v - λ s, w)
            let fiber = System::from_rows(
                n,
                rows.iter()
                    .map(|(a, b)| Constraint::gt(a[m..].to_vec(), b - crate::num::dot_rat(&a[..m], &w)))
                    .collect(),
            );
            fiber.find_point().and_then(|v| {
                let x: Vec<Rat> = v.iter().chain(&w).cloned().collect();
                let shifted: Vec<Rat> = x.iter().zip(&base).map(|(a, b)| a - b).collect();
                let ray_ok = c.contains(&shifted);
                let dir: Vec<Rat> = escape.iter().map(|s| -s).chain(std::iter::repeat_n(Rat::zero(), m)).collect();
                let dir_ok = c.closure().contains(&dir, Strictness::Boundary).unwrap_or(false);
                (ray_ok && dir_ok).then(|| json!({"preimage": json::rats(&v), "escape": json::rats(&escape)}))
            })
        } else {
            image.rows().iter().find(|r| !r.holds(&w)).map(|r| {
                json!({"separating": json::rats(&r.coeffs), "rhs": json::rat(&r.rhs)})
            })
        };
        let wf: Vec<f64> = w.iter().map(rat_to_f64).collect();
        let sampled = approachability_sampler(c, sigma, mode, &wf, per_sample, super::TOLERANCE, &mut rng);
        let ok = certificate.is_some() && sampled == inside;
        agree += usize::from(sampled == inside);
        report.push(
            format!("sample[{i}]"),
            ok,
            json!({"w": json::rats(&w), "exact": inside, "sampled": sampled, "certificate": certificate}),
        );
    }
    report.push("sampler-agreement", agree == samples, json!(format!("{agree}/{samples}")));
    Ok(report)
}

/// Whether some of `trials` random sequences `(v₀ - 2^k s, w + δ 2^{-k})` with
/// `s` a random positive integer combination of the rays of `σ` eventually stays
/// inside the region (every facet value above `tolerance` for the last steps).
pub fn approachability_sampler(
    c: &OpenCone,
    sigma: &Cone,
    mode: &FlMode,
    w: &[f64],
    trials: usize,
    tolerance: f64,
    rng: &mut SplitMix64,
) -> bool {
    let (n, m) = c.split();
    let base: Vec<f64> = mode.base(n + m).iter().map(rat_to_f64).collect();
    let facets: Vec<Vec<f64>> = c.closure().facets().iter().map(|h| super::to_f64_vec(h)).collect();
    let rays: Vec<Vec<f64>> = sigma.rays().iter().map(|r| super::to_f64_vec(r)).collect();
    (0..trials).any(|_| {
        let scale = 10f64.powi(rng.index(4) as i32);
        let v0: Vec<f64> = (0..n).map(|_| scale * (2.0 * rng.next_f64() - 1.0)).collect();
        let mut s = vec![0.0; n];
        for r in &rays {
            let k = (1 + rng.index(3)) as f64;
            for (x, y) in s.iter_mut().zip(r) {
                *x += k * y;
            }
        }
        let noise: Vec<f64> = (0..m).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
        facets.iter().all(|h| {
            let hb: f64 = h.iter().zip(&base).map(|(a, b)| a * b).sum();
            let hv: f64 = h[..n].iter().zip(&v0).map(|(a, b)| a * b).sum();
            let hw: f64 = h[n..].iter().zip(w).map(|(a, b)| a * b).sum();
            let hs: f64 = h[..n].iter().zip(&s).map(|(a, b)| a * b).sum();
            let hd: f64 = h[n..].iter().zip(&noise).map(|(a, b)| a * b).sum();
            (TAIL_FROM..=ESCAPE_STEPS).all(|k| {
                let value = hv + hw - hb - 2f64.powi(k) * hs + hd * 2f64.powi(-k);
                value > tolerance
            })
        })
    })
}
