//! Seeded generators for the built-in verification corpora.

use num_traits::Zero;

use crate::cone::Cone;
use crate::cores::{sigma_zero, Case, Core, OpenCone};
use crate::fan::Fan;
use crate::linalg::IntegerLattice;
use crate::num::{int, IntVec, Rat};
use crate::rng::SplitMix64;
use crate::toric::FlMode;

fn random_vec(rng: &mut SplitMix64, dim: usize, bound: i64) -> IntVec {
    (0..dim).map(|_| int(rng.range(-bound, bound))).collect()
}

/// A full-dimensional cone in `R^rank` with `rank..rank+3` random rays, entries in `[-3, 3]`.
pub fn random_full_cone(rng: &mut SplitMix64, rank: usize) -> Cone {
    loop {
        let k = rank + rng.index(4);
        let rays: Vec<IntVec> = (0..k).map(|_| random_vec(rng, rank, 3)).collect();
        if let Ok(c) = Cone::from_rays(rank, &rays) {
            if c.is_top_dimensional() {
                return c;
            }
        }
    }
}

/// A projection instance: an open cone of rank 2 to 4 and how many trailing coordinates to drop.
#[derive(Clone, Debug)]
pub struct ProjectionInstance {
    pub cone: OpenCone,
    pub drop: usize,
}

pub fn projection_instance(seed: u64, index: u64) -> ProjectionInstance {
    let mut rng = SplitMix64::fork(seed, index);
    let rank = 2 + rng.index(3);
    let closure = random_full_cone(&mut rng, rank);
    let drop = 1 + rng.index(rank - 1);
    let cone = OpenCone::new(closure, rank - drop, drop).expect("top-dimensional by construction");
    ProjectionInstance { cone, drop }
}

/// An open cone of the requested case with split `(n, m)`.
///
/// Case A takes rays `(r_i, 0)` spanning the plane cut together with rays whose
/// z-parts lie in the closed positive orthant; case B adds `(u, ±e_k)` with `u`
/// interior to the cut.
pub fn case_cone(rng: &mut SplitMix64, n: usize, m: usize, case: Case) -> OpenCone {
    loop {
        let sigma = random_full_cone(rng, n);
        let mut rays: Vec<IntVec> = sigma
            .rays()
            .into_iter()
            .map(|r| r.into_iter().chain(std::iter::repeat_n(int(0), m)).collect())
            .collect();
        match case {
            Case::A => {
                for _ in 0..=m {
                    let w = random_vec(rng, n, 3);
                    let mut z: IntVec = (0..m).map(|_| int(rng.range(0, 3))).collect();
                    if z.iter().all(Zero::is_zero) {
                        z[rng.index(m)] = int(1);
                    }
                    rays.push(w.into_iter().chain(z).collect());
                }
            }
            _ => {
                let srays = sigma.rays();
                for k in 0..m {
                    let u: IntVec = (0..n)
                        .map(|i| srays.iter().map(|r| &r[i] * int(1 + rng.range(0, 2))).sum())
                        .collect();
                    for sign in [1, -1] {
                        let mut z = vec![int(0); m];
                        z[k] = int(sign);
                        rays.push(u.iter().cloned().chain(z).collect());
                    }
                }
            }
        }
        let Ok(closure) = Cone::from_rays(n + m, &rays) else { continue };
        let Ok(c) = OpenCone::new(closure, n, m) else { continue };
        if sigma_zero(&c).1 == case {
            return c;
        }
    }
}

/// Canonical core over a case cone, with a random interior base point.
pub fn case_core(seed: u64, index: u64, n: usize, m: usize, case: Case) -> Core {
    let mut rng = SplitMix64::fork(seed, index);
    let c = case_cone(&mut rng, n, m, case);
    let base = c.sample(&mut rng);
    Core::new(base, c).expect("sampled base is interior")
}

pub const CORE_SPLITS: [(usize, usize); 3] = [(1, 1), (2, 1), (2, 2)];

/// `count` cores cycling through the splits and alternating cases A and B.
pub fn core_corpus(seed: u64, count: usize) -> Vec<(Case, Core)> {
    (0..count)
        .map(|i| {
            let (n, m) = CORE_SPLITS[i % CORE_SPLITS.len()];
            let case = if (i / CORE_SPLITS.len()).is_multiple_of(2) { Case::A } else { Case::B };
            (case, case_core(seed, i as u64, n, m, case))
        })
        .collect()
}

/// An input to the fundamental-lemma check.
#[derive(Clone, Debug)]
pub struct FlInstance {
    pub name: String,
    pub cone: OpenCone,
    pub sigma: Cone,
    pub mode: FlMode,
}

const FL_SPLITS: [(usize, usize); 3] = [(1, 1), (2, 1), (1, 2)];

/// 30 instances of rank at most 3: the modular-curve slice, Kuga slices over
/// three cones of the fan, and seeded case cones with `σ = -σ⁰` or one of its rays.
/// Each geometric instance appears in cone mode and in core mode.
pub fn fundamental_corpus(seed: u64) -> Vec<FlInstance> {
    let mut out = Vec::new();
    fn both(out: &mut Vec<FlInstance>, name: String, cone: OpenCone, sigma: Cone, base: Vec<Rat>) {
        out.push(FlInstance { name: format!("{name}/cone"), cone: cone.clone(), sigma: sigma.clone(), mode: FlMode::Cone });
        out.push(FlInstance { name: format!("{name}/core"), cone, sigma, mode: FlMode::Core(base) });
    }
    let half_line = OpenCone::new(Cone::of(1, &[&[1]]), 1, 0).expect("top-dimensional");
    both(&mut out, "gl2".into(), half_line, Cone::of(1, &[&[-1]]), vec![Rat::from_integer(int(1))]);
    let half_plane = OpenCone::new(Cone::of(2, &[&[1, 0], &[0, 1], &[0, -1]]), 2, 0).expect("top-dimensional");
    for n in [-1i64, 0, 2] {
        let sigma = Cone::of(2, &[&[-1, -n], &[-1, -n - 1]]);
        both(&mut out, format!("kuga[{n}]"), half_plane.clone(), sigma, vec![Rat::from_integer(int(1)), Rat::zero()]);
    }
    let mut i = 0u64;
    while out.len() < 30 {
        let mut rng = SplitMix64::fork(seed, i);
        let (n, m) = FL_SPLITS[(i as usize) % FL_SPLITS.len()];
        let case = if (i / 3).is_multiple_of(2) { Case::A } else { Case::B };
        let c = case_cone(&mut rng, n, m, case);
        let cut = sigma_zero(&c).0;
        i += 1;
        if !cut.is_strongly_convex() {
            continue;
        }
        let sigma = if i.is_multiple_of(4) {
            let rays = cut.rays();
            Cone::from_rays(n, &[crate::num::neg_vec(&rays[rng.index(rays.len())])]).expect("rank n")
        } else {
            cut.negate()
        };
        let base = c.sample(&mut rng);
        both(&mut out, format!("{case:?}[{i}]/({n},{m})"), c, sigma, base);
    }
    out
}

/// A random complete fan in `R^2` from 3 to 8 primitive rays sorted by angle.
pub fn random_complete_plane_fan(seed: u64, index: u64) -> Fan {
    let mut rng = SplitMix64::fork(seed, index);
    loop {
        let k = 3 + rng.index(6);
        let mut rays: Vec<IntVec> = (0..k)
            .map(|_| random_vec(&mut rng, 2, 4))
            .filter(|v| !v.iter().all(Zero::is_zero))
            .map(|v| crate::num::primitive(&v))
            .collect();
        rays.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
        rays.dedup();
        if rays.len() < 3 {
            continue;
        }
        let mut maximal = Vec::new();
        let mut ok = true;
        for i in 0..rays.len() {
            let (a, b) = (&rays[i], &rays[(i + 1) % rays.len()]);
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            // consecutive rays must turn strictly less than a half-turn
            if det <= int(0) {
                ok = false;
                break;
            }
            maximal.push(Cone::from_rays(2, &[a.clone(), b.clone()]).expect("rank 2"));
        }
        if ok {
            return Fan::from_maximal(IntegerLattice::standard(2), &maximal).expect("rank 2");
        }
    }
}

fn angle(v: &IntVec) -> f64 {
    let x = crate::num::rat_to_f64(&Rat::from_integer(v[0].clone()));
    let y = crate::num::rat_to_f64(&Rat::from_integer(v[1].clone()));
    y.atan2(x)
}

/// Random full-rank sublattice pair `sub ⊆ ambient` of rank at most 4 with entries at most 9.
pub fn sublattice_pair(seed: u64, index: u64, max_order: u64) -> (IntegerLattice, IntegerLattice) {
    let mut rng = SplitMix64::fork(seed, index);
    loop {
        let rank = 1 + rng.index(4);
        let amb: Vec<IntVec> = (0..rank).map(|_| random_vec(&mut rng, rank, 9)).collect();
        let Ok(ambient) = IntegerLattice::from_generators(rank, &amb) else { continue };
        if !ambient.is_full_rank() {
            continue;
        }
        // sub generated by integer combinations of the ambient basis
        let basis = ambient.basis_vectors();
        let sub_gens: Vec<IntVec> = (0..rank)
            .map(|_| {
                let coeffs: Vec<i64> = (0..rank).map(|_| rng.range(-9, 9)).collect();
                (0..rank)
                    .map(|i| basis.iter().zip(&coeffs).map(|(b, c)| &b[i] * int(*c)).sum())
                    .collect()
            })
            .collect();
        let Ok(sub) = IntegerLattice::from_generators(rank, &sub_gens) else { continue };
        if !sub.is_full_rank() {
            continue;
        }
        let index = ambient.express(&sub).ok().and_then(|m| m.det().ok()).map(|d| crate::num::abs_int(&d));
        if index.is_some_and(|i| i <= int(max_order as i64)) {
            return (ambient, sub);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_corpus_has_requested_cases() {
        for (case, d) in core_corpus(11, 12) {
            assert_eq!(sigma_zero(d.parent()).1, case);
        }
    }

    #[test]
    fn plane_fans_are_complete_and_valid() {
        for i in 0..5 {
            let f = random_complete_plane_fan(3, i);
            assert!(f.validate().is_valid());
            let r = f.is_complete_over(&crate::fan::SupportRegion::full(2)).unwrap();
            assert!(r.complete);
        }
    }

    #[test]
    fn sublattice_pairs_are_nested() {
        for i in 0..20 {
            let (a, s) = sublattice_pair(5, i, 10_000);
            assert!(a.contains_lattice(&s).unwrap());
        }
    }

    #[test]
    fn fundamental_corpus_agrees_with_sampler() {
        use crate::toric::fundamental_lemma_check;
        let corpus = fundamental_corpus(17);
        assert_eq!(corpus.len(), 30);
        for inst in &corpus {
            let r = fundamental_lemma_check(&inst.cone, &inst.sigma, &inst.mode, 10, 1000, 5).unwrap();
            assert!(r.pass, "{}: {:?}", inst.name, r.failures().collect::<Vec<_>>());
        }
    }
}
