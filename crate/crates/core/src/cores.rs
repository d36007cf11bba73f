//! Open convex cones split as `R^n × R^m`, their canonical cores `b + C`, and
//! exact checkers for the projection and level-set properties of such cores.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::{Cone, Strictness};
use crate::error::{Error, Result};
use crate::fm::{Constraint, System};
use crate::json;
use crate::num::{pair, rat, rat_int, ExtRat, Int, IntVec, Rat};
use crate::par::Exec;
use crate::report::Report;
use crate::rng::SplitMix64;

/// The interior of a full-dimensional closed cone in `R^n × R^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenCone {
    closure: Cone,
    n: usize,
    m: usize,
}

impl OpenCone {
    pub fn new(closure: Cone, n: usize, m: usize) -> Result<Self> {
        if closure.ambient_rank() != n + m {
            return Err(Error::DimensionMismatch { expected: n + m, found: closure.ambient_rank() });
        }
        if !closure.is_top_dimensional() {
            return Err(Error::NotTopDimensional);
        }
        Ok(Self { closure, n, m })
    }

    pub fn closure(&self) -> &Cone {
        &self.closure
    }

    pub fn split(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn rank(&self) -> usize {
        self.n + self.m
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.closure.contains(x, Strictness::Interior).unwrap_or(false)
    }

    /// The strict system `h · x > 0` over the facets of the closure.
    pub fn strict_system(&self) -> System {
        System::from_rows(
            self.rank(),
            self.closure.facets().iter().map(|h| Constraint::homogeneous(h, true)).collect(),
        )
    }

    /// A rational point of the cone: a random positive combination of the closure's rays.
    pub fn sample(&self, rng: &mut SplitMix64) -> Vec<Rat> {
        positive_combination(&self.closure.rays(), self.rank(), rng)
    }
}

/// Random combination with coefficients in `(0, 3]`; a relative-interior point when `gens` generate the cone.
pub fn positive_combination(gens: &[IntVec], dim: usize, rng: &mut SplitMix64) -> Vec<Rat> {
    let mut p = vec![Rat::zero(); dim];
    for g in gens {
        let c = rng.positive_rational(3, 4);
        for (x, y) in p.iter_mut().zip(g) {
            *x += &c * rat_int(y);
        }
    }
    p
}

/// `D = base + C` for an interior base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Core {
    #[serde(serialize_with = "crate::json::ser_rats")]
    base: Vec<Rat>,
    parent: OpenCone,
}

impl Core {
    pub fn new(base: Vec<Rat>, parent: OpenCone) -> Result<Self> {
        if base.len() != parent.rank() {
            return Err(Error::DimensionMismatch { expected: parent.rank(), found: base.len() });
        }
        if !parent.contains(&base) {
            return Err(Error::HypothesisViolated {
                case: "core".into(),
                reason: "base point is not interior to the cone".into(),
            });
        }
        Ok(Self { base, parent })
    }

    pub fn base(&self) -> &[Rat] {
        &self.base
    }

    pub fn parent(&self) -> &OpenCone {
        &self.parent
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let shifted: Vec<Rat> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        self.parent.contains(&shifted)
    }
}

/// The solution set of `a_i · t > c_i` for all `i`, as an open interval `(lo, hi)`; `None` if empty.
pub fn open_interval(rows: &[(Rat, Rat)]) -> Option<(ExtRat, ExtRat)> {
    let (mut lo, mut hi) = (ExtRat::NegInf, ExtRat::PosInf);
    for (a, c) in rows {
        if a.is_zero() {
            if !c.is_negative() {
                return None;
            }
            continue;
        }
        let b = ExtRat::Finite(c / a);
        if a.is_positive() {
            lo = lo.max(b);
        } else {
            hi = hi.min(b);
        }
    }
    (lo < hi).then_some((lo, hi))
}

/// A rational point of a nonempty open interval.
pub fn interval_point(lo: &ExtRat, hi: &ExtRat) -> Rat {
    match (lo, hi) {
        (ExtRat::Finite(a), ExtRat::Finite(b)) => (a + b) / rat(2, 1),
        (ExtRat::Finite(a), _) => a + Rat::one(),
        (_, ExtRat::Finite(b)) => b - Rat::one(),
        _ => Rat::zero(),
    }
}

fn split_pair(h: &[Int], n: usize, v: &[Rat], z: &[Rat]) -> (Rat, Rat) {
    (pair(&h[..n], v), pair(&h[n..], z))
}

/// `inf { t : (v, t z) ∈ D }`, with `+inf` when the line misses `D`.
pub fn core_f(d: &Core, v: &[Rat], z: &[Rat]) -> Result<ExtRat> {
    let (n, m) = d.parent.split();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if z.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: z.len() });
    }
    // h·((v, t z) − b) > 0  ⇔  t (h_m·z) > h·b − h_n·v
    let rows: Vec<(Rat, Rat)> = d
        .parent
        .closure
        .facets()
        .iter()
        .map(|h| {
            let (hv, hz) = split_pair(h, n, v, z);
            (hz, pair(h, &d.base) - hv)
        })
        .collect();
    Ok(match open_interval(&rows) {
        Some((lo, _)) => lo,
        None => ExtRat::PosInf,
    })
}

/// Closed image of the projection onto the first `keep` coordinates, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCertificate {
    /// Cone generated by the projected rays of the closure.
    pub image: Cone,
    /// Fourier–Motzkin elimination of the closure's halfspaces.
    pub fm_image: Cone,
    pub closures_agree: bool,
    /// The projected open cone equals the interior of `image`.
    pub open_is_interior: bool,
}

/// Projects away the last `drop` coordinates.
pub fn project_open(c: &OpenCone, drop: usize) -> Result<ProjectionCertificate> {
    let total = c.rank();
    if drop == 0 || drop >= total {
        return Err(Error::DimensionMismatch { expected: total - 1, found: drop });
    }
    let keep = total - drop;
    let image = c.closure.project(keep)?;

    let closed = System::from_rows(
        total,
        c.closure.halfspaces().iter().map(|h| Constraint::homogeneous(h, false)).collect(),
    );
    let projected = closed.project(keep).expect("a cone contains the origin");
    let fm_image = Cone::from_halfspaces(keep, &normals(&projected))?;

    let open_is_interior = match c.strict_system().project(keep) {
        None => false,
        Some(strict) => {
            strict.rows().iter().all(|r| r.strict)
                && Cone::from_halfspaces(keep, &normals(&strict))? == image
                && image.is_top_dimensional()
        }
    };
    Ok(ProjectionCertificate { closures_agree: image == fm_image, image, fm_image, open_is_interior })
}

/// Integer normals of homogeneous rows (FM keeps them primitive).
fn normals(s: &System) -> Vec<IntVec> {
    s.rows().iter().map(|r| r.coeffs.iter().map(|c| c.to_integer()).collect()).collect()
}

/// A point of the open cone lying over `q` under the projection to the first coordinates.
pub fn interior_preimage(c: &OpenCone, q: &[Rat]) -> Option<Vec<Rat>> {
    let total = c.rank();
    let mut sys = c.strict_system();
    for (i, qi) in q.iter().enumerate() {
        let mut e = vec![Rat::zero(); total];
        e[i] = Rat::one();
        sys.push(Constraint::ge(e.clone(), qi.clone()));
        sys.push(Constraint::ge(e.iter().map(|x| -x).collect(), -qi));
    }
    sys.find_point()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// The cone misses `R^n × {0}`.
    A,
    /// The open plane cut lies in the cone.
    B,
    Neither,
}

/// The cut `σ = C̄ ∩ (R^n × {0})` as a cone in `R^n`, and which hypothesis holds.
/// `Neither` also covers an empty interior `σ⁰`.
pub fn sigma_zero(c: &OpenCone) -> (Cone, Case) {
    let (n, m) = c.split();
    let mut hs = c.closure.halfspaces();
    for j in 0..m {
        let mut e: IntVec = vec![Int::zero(); n + m];
        e[n + j] = Int::one();
        hs.push(e.clone());
        hs.push(e.iter().map(|x| -x).collect());
    }
    let cut = Cone::from_halfspaces(n + m, &hs).expect("same rank");
    let sigma = cut.project(n).expect("n ≤ rank");
    if sigma.dim() < n {
        return (sigma, Case::Neither);
    }
    let mut sys = c.strict_system();
    for j in 0..m {
        let mut e = vec![Rat::zero(); n + m];
        e[n + j] = Rat::one();
        sys.push(Constraint::ge(e.clone(), Rat::zero()));
        sys.push(Constraint::ge(e.iter().map(|x| -x).collect(), Rat::zero()));
    }
    if !sys.is_feasible() {
        return (sigma, Case::A);
    }
    let lifted: Vec<IntVec> = sigma
        .rays()
        .iter()
        .map(|r| r.iter().cloned().chain(std::iter::repeat_n(Int::zero(), m)).collect())
        .collect();
    let vanishing = c
        .closure
        .facets()
        .iter()
        .any(|h| lifted.iter().all(|r| crate::num::dot(h, r).is_zero()));
    (sigma, if vanishing { Case::Neither } else { Case::B })
}

fn ext_json(x: &ExtRat) -> Value {
    Value::String(x.to_string())
}

/// Projection certificate plus interior-preimage checks for `samples` rational points.
pub fn check_lemma51(c: &OpenCone, drop: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("5.1", Some(seed));
    let cert = project_open(c, drop)?;
    report.push(
        "closure-of-projection",
        cert.closures_agree,
        if cert.closures_agree { Value::Null } else { json!({"rays": cert.image, "fm": cert.fm_image}) },
    );
    report.push("open-image-is-interior", cert.open_is_interior, Value::Null);
    let mut rng = SplitMix64::new(seed);
    let keep = c.rank() - drop;
    let mut failed: Option<Value> = None;
    for _ in 0..samples {
        let q = positive_combination(&cert.image.rays(), keep, &mut rng);
        let ok = match interior_preimage(c, &q) {
            Some(x) => c.contains(&x) && x[..keep] == q[..],
            None => false,
        };
        if !ok && failed.is_none() {
            failed = Some(json::rats(&q));
        }
    }
    report.push("interior-preimage", failed.is_none(), failed.unwrap_or(Value::Null));
    Ok(report)
}

/// `(λ·v, z)` membership interval in the open set `x + C` shifted by `shift`.
fn scale_rows(c: &OpenCone, shift: &[Rat], v: &[Rat], z: &[Rat]) -> Vec<(Rat, Rat)> {
    let n = c.n;
    c.closure
        .facets()
        .iter()
        .map(|h| {
            let (hv, hz) = split_pair(h, n, v, z);
            (hv, pair(h, shift) - hz)
        })
        .collect()
}

fn concat(v: &[Rat], z: &[Rat]) -> Vec<Rat> {
    v.iter().chain(z).cloned().collect()
}

fn scale(v: &[Rat], s: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * s).collect()
}

/// Exact sample checks of the level-set properties of `f` on the core `d`.
///
/// For each of `samples` random pairs `(v_σ, z₀)` the report checks cone
/// generation of the level sets, that `D` generates `C`, the bounded-box
/// estimate (the smallest power-of-two `μ` found is reported), enterability of
/// `σ⁰` directions, and monotonicity, midpoint convexity and the sign or `-inf`
/// dichotomy of `λ ↦ f(λ v_σ, z₀)` over `lambdas` rational values `λ ≥ 1`.
pub fn check_lemma52(d: &Core, samples: usize, lambdas: usize, seed: u64) -> Result<Report> {
    check_lemma52_with(Exec::default(), d, samples, lambdas, seed)
}

pub fn check_lemma52_with(exec: Exec, d: &Core, samples: usize, lambdas: usize, seed: u64) -> Result<Report> {
    let c = &d.parent;
    let (n, m) = c.split();
    let (sigma, case) = sigma_zero(c);
    if case == Case::Neither {
        return Err(Error::HypothesisViolated {
            case: "neither".into(),
            reason: "the cone neither misses the plane cut nor contains its interior".into(),
        });
    }
    let mut report = Report::new("5.2", Some(seed));
    report.push("case", true, json!(format!("{case:?}")));

    if case == Case::B {
        // Projection onto the z-factor is everything: FM leaves no constraint.
        let mut rows = Vec::new();
        for h in c.closure.facets() {
            let rotated: IntVec = h[n..].iter().chain(&h[..n]).cloned().collect();
            rows.push(Constraint::homogeneous(&rotated, true));
        }
        let total = System::from_rows(n + m, rows).project(m).is_some_and(|s| s.rows().is_empty());
        report.push("case-b-projection-is-everything", total, Value::Null);
    }

    let per_sample = crate::par::map_range(exec, samples, |s| lemma52_sample(d, &sigma, case, s, lambdas, seed));
    let mut worst_mu: Option<Rat> = None;
    for (s, result) in per_sample.into_iter().enumerate() {
        let (checks, mu) = result?;
        for (name, pass, witness) in checks {
            report.push(format!("sample[{s}]/{name}"), pass, witness);
        }
        if let Some(mu) = mu {
            worst_mu = Some(worst_mu.map_or(mu.clone(), |w: Rat| w.max(mu)));
        }
    }
    if let Some(mu) = worst_mu {
        report.push("largest-mu-found", true, json::rat(&mu));
    }
    Ok(report)
}

type SampleChecks = (Vec<(String, bool, Value)>, Option<Rat>);

fn lemma52_sample(d: &Core, sigma: &Cone, case: Case, s: usize, lambdas: usize, seed: u64) -> Result<SampleChecks> {
    let c = &d.parent;
    let (n, m) = c.split();
    let mut rng = SplitMix64::fork(seed, s as u64);
    let mut out: Vec<(String, bool, Value)> = Vec::new();
    let mut push = |name: &str, pass: bool, w: Value| out.push((name.to_string(), pass, w));
    let x = c.sample(&mut rng);
    let (v, z0) = (x[..n].to_vec(), x[n..].to_vec());
    let v_sigma = positive_combination(&sigma.rays(), n, &mut rng);

    // (1) some λ > 0 puts (λ v_σ, z₀) in C.
    let rows = scale_rows(c, &vec![Rat::zero(); n + m], &v_sigma, &z0);
    let mut rows_pos = rows.clone();
    rows_pos.push((Rat::one(), Rat::zero()));
    let ok1 = open_interval(&rows_pos).is_some_and(|(lo, hi)| {
        let l = interval_point(&lo, &hi);
        c.contains(&concat(&scale(&v_sigma, &l), &z0))
    });
    push("level-set-generates-sigma", ok1, json::rats(&v_sigma));

    // (2) translation by the plane cut stays in C; some λ ≥ 1 puts λ x in D.
    let v_prime = positive_combination(&sigma.rays(), n, &mut rng);
    let ok2a = [1, 2, 5, 10].iter().all(|&l| {
        let moved: Vec<Rat> = v.iter().zip(&v_prime).map(|(a, b)| a + b * rat(l, 1)).collect();
        c.contains(&concat(&moved, &z0))
    });
    push("plane-translation-stays-inside", ok2a, Value::Null);
    let lam = c
        .closure
        .facets()
        .iter()
        .map(|h| pair(h, &d.base) / pair(h, &x))
        .fold(Rat::one(), |a, b| a.max(b))
        + Rat::one();
    push("core-generates-cone", d.contains(&scale(&x, &lam)), json::rat(&lam));

    // (4) a point of D at height z₀ lets every σ⁰ direction enter D.
    let y = d.base.iter().zip(c.sample(&mut rng)).map(|(b, p)| b + p).collect::<Vec<_>>();
    let (v0, z0d) = (y[..n].to_vec(), y[n..].to_vec());
    debug_assert!(d.contains(&concat(&v0, &z0d)));
    let mut rows4 = scale_rows(c, &d.base, &v_sigma, &z0d);
    rows4.push((Rat::one(), Rat::zero()));
    let entry = open_interval(&rows4).map(|(lo, hi)| interval_point(&lo, &hi));
    let ok4 = entry
        .as_ref()
        .is_some_and(|l| d.contains(&concat(&scale(&v_sigma, l), &z0d)));
    push("sigma-directions-enter-core", ok4, json::rats(&v_sigma));
    let Some(l0) = entry else { return Ok((out, None)) };

    // (5) f along λ ≥ 1 from a point of D(σ⁰).
    let vs = scale(&v_sigma, &l0);
    let mut ls: Vec<Rat> = vec![Rat::one()];
    while ls.len() < lambdas.max(2) {
        let next = ls.last().expect("nonempty") + rng.positive_rational(2, 8);
        ls.push(next);
    }
    let fs: Vec<ExtRat> = ls.iter().map(|l| core_f(d, &scale(&vs, l), &z0d)).collect::<Result<_>>()?;
    let decreasing = fs.windows(2).all(|w| w[1] <= w[0]);
    push("f-decreasing", decreasing, Value::Array(fs.iter().map(ext_json).collect()));
    let mut convex = true;
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            let mid = (&ls[i] + &ls[j]) / rat(2, 1);
            let fm = core_f(d, &scale(&vs, &mid), &z0d)?;
            let avg = fs[i].checked_add(&fs[j]).map(|s| s.half());
            convex &= avg.is_some_and(|a| fm <= a);
        }
    }
    push("f-midpoint-convex", convex, Value::Null);
    let inside = ls.iter().all(|l| d.contains(&concat(&scale(&vs, l), &z0d)));
    push("ray-stays-in-core", inside, Value::Null);
    match case {
        Case::A => {
            let positive = fs.iter().all(|f| *f > ExtRat::Finite(Rat::zero()) && *f < ExtRat::PosInf);
            push("f-positive", positive, Value::Null);
        }
        _ => {
            let all = fs.iter().all(|f| *f == ExtRat::NegInf);
            let none = fs.iter().all(|f| f.is_finite());
            push("f-infinity-dichotomy", all || none, Value::Null);
        }
    }

    // (3) μ for the box [-1, 1]^n around μ v_σ, probing t ∈ {1, 2, 4, ..., 1024}.
    let mu = find_mu(d, &vs, &z0d, &vec![Rat::zero(); n]);
    push("bounded-box-mu", mu.is_some(), mu.as_ref().map_or(Value::Null, json::rat));
    Ok((out, mu))
}

const MU_CAP_DOUBLINGS: u32 = 40;

fn find_mu(d: &Core, vs: &[Rat], z0: &[Rat], zero: &[Rat]) -> Option<Rat> {
    let n = vs.len();
    let mut corners: Vec<Vec<Rat>> = vec![zero.to_vec()];
    for mask in 0..(1u32 << n) {
        corners.push((0..n).map(|i| if mask >> i & 1 == 1 { Rat::one() } else { -Rat::one() }).collect());
    }
    let mut mu = Rat::one();
    for _ in 0..MU_CAP_DOUBLINGS {
        let bound = ExtRat::Finite(mu.clone());
        let ok = corners.iter().all(|k| {
            let v: Vec<Rat> = vs.iter().zip(k).map(|(a, b)| a * &mu + b).collect();
            (0..=10).all(|e| {
                let t = Rat::from_integer(Int::from(1u64 << e));
                core_f(d, &scale(&v, &t), z0).is_ok_and(|f| f < bound)
            })
        });
        if ok {
            return Some(mu);
        }
        mu *= rat(2, 1);
    }
    None
}
