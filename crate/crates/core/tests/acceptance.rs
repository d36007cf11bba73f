//! Acceptance criteria, one line of output per criterion.

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use conefort::catalog::{
    base_dimension, ed_lower_bound, gl2_fixed_point_data, kuga_fixed_point_data, siegel_u1_rank_check,
    torus_cover_ed, u1_dimension, Family,
};
use conefort::cone::Cone;
use conefort::cores::check_lemma51;
use conefort::cores::check_lemma52;
use conefort::corpus::{core_corpus, fundamental_corpus, projection_instance, random_complete_plane_fan, sublattice_pair};
use conefort::linalg::{quotient_group, IntegerLattice, RationalMatrix};
use conefort::num::{int, Int, Rat};
use conefort::rng::SplitMix64;
use conefort::toric::{
    approaches_stratum, escaping_sequence, fundamental_lemma_check, punctured_polydisc_check, PolydiscOptions,
    TorusEmbedding,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(id: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = o.pass && in_time;
    println!(
        "criterion {id:>2} {}: {title} ({}; {:.2?} of {:?})",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed,
        limit
    );
    pass
}

fn primes_up_to(n: i64) -> Vec<i64> {
    (2..=n).filter(|p| (2..*p).all(|q| p % q != 0)).collect()
}

/// Number of `x ∈ ⊕ Z/n_i` with `p x = 0`, by enumerating the whole group.
fn brute_p_rank(orders: &[i64], p: i64) -> usize {
    let total: i64 = orders.iter().product();
    let mut killed = 0i64;
    for mut code in 0..total {
        let mut ok = true;
        for n in orders {
            let x = code % n;
            code /= n;
            ok &= (p * x) % n == 0;
        }
        killed += i64::from(ok);
    }
    let mut rank = 0;
    while killed > 1 {
        assert_eq!(killed % p, 0);
        killed /= p;
        rank += 1;
    }
    rank
}

fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// Invariant factors of `ambient / sub` from the element orders of the quotient,
/// which is enumerated as `(Q/Z)^r` classes of `M^{-1} x` with `M` the sub basis in ambient coordinates.
fn brute_invariant_factors(ambient: &IntegerLattice, sub: &IntegerLattice) -> Vec<Int> {
    let to_rat = |vs: Vec<Vec<Int>>| -> Vec<Vec<Rat>> {
        vs.into_iter().map(|v| v.into_iter().map(Rat::from_integer).collect()).collect()
    };
    let r = ambient.rank();
    let b = RationalMatrix::from_cols(&to_rat(ambient.basis_vectors()), r).unwrap();
    let s = RationalMatrix::from_cols(&to_rat(sub.basis_vectors()), r).unwrap();
    let m = b.inverse().unwrap().mul(&s).unwrap();
    let minv = m.inverse().unwrap();
    let gens: Vec<Vec<Rat>> = (0..r).map(|i| minv.col(i).iter().map(frac).collect()).collect();
    let zero = vec![Rat::zero(); r];
    let mut seen: HashSet<Vec<Rat>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<Rat> = x.iter().zip(g).map(|(a, b)| frac(&(a + b))).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let orders: Vec<u64> = seen
        .iter()
        .map(|x| x.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom())).to_u64().unwrap())
        .collect();
    // for each prime p of |G|: how many invariant factors p^j divides, from |G[p^j]|
    let order = seen.len() as u64;
    let mut rest = order;
    let mut by_prime: Vec<(u64, Vec<usize>)> = Vec::new();
    for p in 2..=order {
        if !rest.is_multiple_of(p) {
            continue;
        }
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        let mut divisible = Vec::new();
        let (mut prev, mut pj) = (1usize, 1u64);
        loop {
            pj *= p;
            let killed = orders.iter().filter(|o| pj % **o == 0).count();
            if killed == prev {
                break;
            }
            let mut ratio = killed / prev;
            let mut count = 0;
            while ratio > 1 {
                ratio /= p as usize;
                count += 1;
            }
            divisible.push(count);
            prev = killed;
        }
        by_prime.push((p, divisible));
    }
    let k = by_prime.iter().map(|(_, e)| e.first().copied().unwrap_or(0)).max().unwrap_or(0);
    let mut factors = vec![1u64; k];
    for (p, divisible) in &by_prime {
        for count in divisible {
            for f in factors.iter_mut().rev().take(*count) {
                *f *= p;
            }
        }
    }
    factors.into_iter().map(Int::from).collect()
}

fn criterion_1() -> Outcome {
    let mut mismatches = Vec::new();
    let mut rows = 0;
    for n in 0..=5usize {
        for r in 0..=n {
            let t = r * (r + 1) / 2;
            let expected = [(Family::Siegel, t), (Family::Universal, 1 + r + t), (Family::Kuga, r + t)];
            for (f, e) in expected {
                rows += 1;
                if u1_dimension(f, n, r).unwrap() != e {
                    mismatches.push(format!("{f} n={n} r={r}"));
                }
            }
            if siegel_u1_rank_check(n, r).unwrap() != t {
                mismatches.push(format!("siegel rank n={n} r={r}"));
            }
        }
        let t = n * (n + 1) / 2;
        for (f, base) in [(Family::Siegel, t), (Family::Universal, 1 + n + t), (Family::Kuga, n + t)] {
            if u1_dimension(f, n, n).unwrap() != base || base_dimension(f, n) != base {
                mismatches.push(format!("{f} base n={n}"));
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{rows} formula rows, mismatches {mismatches:?}"))
}

fn criterion_2() -> Outcome {
    let primes = primes_up_to(13);
    let mut bad = Vec::new();
    let mut verdicts = 0;
    for family in Family::ALL {
        let d = if family == Family::Universal { 4 } else { 3 };
        let ns: Vec<usize> = if matches!(family, Family::Gl2 | Family::KugaGl2) { vec![1] } else { (1..=3).collect() };
        for n in ns {
            for m in 2..=12 {
                for &p in &primes {
                    let row = ed_lower_bound(family, n, n, d, m, p).unwrap();
                    verdicts += 1;
                    if row.incompressible != (m % p == 0) {
                        bad.push(format!("{family} n={n} m={m} p={p}"));
                    }
                }
            }
        }
    }
    let mut covers = 0;
    for &p in &primes {
        for a in 1..=30 {
            for b in 1..=30 {
                let lists: Vec<Vec<i64>> = if b == 1 { vec![vec![a], vec![a, b]] } else { vec![vec![a, b]] };
                for list in lists {
                    covers += 1;
                    let got = torus_cover_ed(&list, p).unwrap();
                    if got.ed != brute_p_rank(&list, p) || got.incompressible != list.iter().all(|k| k % p == 0) {
                        bad.push(format!("torus {list:?} p={p}"));
                    }
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{verdicts} verdicts, {covers} torus covers, mismatches {}", bad.len()))
}

fn criterion_3() -> Outcome {
    let mut bad = 0;
    for i in 0..500 {
        let (ambient, sub) = sublattice_pair(3, i, 10_000);
        let got = quotient_group(&ambient, &sub).unwrap();
        if got.free_rank() != 0 || got.invariant_factors() != brute_invariant_factors(&ambient, &sub).as_slice() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("500 pairs, mismatches {bad}"))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for i in 0..200 {
        let inst = projection_instance(4, i);
        let r = check_lemma51(&inst.cone, inst.drop, 50, i).unwrap();
        if !r.pass {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("200 cones x 50 interior samples, failing {bad:?}"))
}

fn criterion_5() -> Outcome {
    let corpus = core_corpus(2024, 50);
    let cases_a = corpus.iter().filter(|(c, _)| *c == conefort::cores::Case::A).count();
    let mut bad = Vec::new();
    for (i, (_, d)) in corpus.iter().enumerate() {
        let r = check_lemma52(d, 20, 20, i as u64).unwrap();
        if !r.pass {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("50 cores ({cases_a} case A), 20 rays x 20 lambdas, failing {bad:?}"))
}

fn criterion_6() -> Outcome {
    let corpus = fundamental_corpus(17);
    let named = corpus.iter().any(|i| i.name.starts_with("gl2")) && corpus.iter().any(|i| i.name.starts_with("kuga"));
    let mut bad = Vec::new();
    for (k, inst) in corpus.iter().enumerate() {
        let r = fundamental_lemma_check(&inst.cone, &inst.sigma, &inst.mode, 10, 1000, k as u64).unwrap();
        if !r.pass {
            bad.push(inst.name.clone());
        }
    }
    outcome(named && bad.is_empty() && corpus.len() == 30, format!("{} instances, failing {bad:?}", corpus.len()))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for d in [3, 4, 5] {
        let g = gl2_fixed_point_data(d).unwrap();
        let r = g.sample_check(1000, d as u64, 1e-12);
        if !r.pass {
            bad.extend(r.failures().map(|c| format!("d={d} {}", c.name)));
        }
        if g.certificate.stabilizer_orders != vec![int(d)] {
            bad.push(format!("d={d} stabilizer"));
        }
    }
    outcome(bad.is_empty(), format!("d in 3..=5, 1000 samples each, failing {bad:?}"))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for d in [3, 4] {
        for window in 1..=8 {
            let k = kuga_fixed_point_data(d, window).unwrap();
            let r = k.exact_checks().unwrap();
            if !r.pass {
                bad.extend(r.failures().map(|c| format!("d={d} N={window} {}", c.name)));
            }
        }
    }
    outcome(bad.is_empty(), format!("d in {{3,4}}, N in 1..=8, failing {bad:?}"))
}

fn criterion_9() -> Outcome {
    let z2 = IntegerLattice::standard(2);
    let quadrant = Cone::of(2, &[&[1, 0], &[0, 1]]);
    let half = punctured_polydisc_check(&z2, &quadrant, &quadrant, &PolydiscOptions::new(0.5, 1000, 9)).unwrap();
    let unit = punctured_polydisc_check(&z2, &quadrant, &quadrant, &PolydiscOptions::new(1.0, 1000, 9)).unwrap();
    let failures = unit.failures().count();
    outcome(half.pass && !unit.pass, format!("radius 0.5 pass={}, radius 1.0 failing checks {failures}", half.pass))
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    for i in 0..20 {
        let fan = random_complete_plane_fan(10, i);
        let rays = fan.rays().len();
        let emb = TorusEmbedding::new(fan.clone()).unwrap();
        // a complete plane fan with k rays has k two-dimensional cones, k rays and the origin
        if emb.strata().len() != fan.cones().len() || fan.cones().len() != 2 * rays + 1 {
            bad.push(format!("fan {i} strata"));
        }
        let mut rng = SplitMix64::fork(10, 1000 + i);
        for _ in 0..100 {
            let k = rng.index(fan.cones().len());
            let (cone, chart) = (&fan.cones()[k], &emb.charts()[k]);
            let dir: Vec<i64> = loop {
                let v = vec![rng.range(-3, 3), rng.range(-3, 3)];
                if v != [0, 0] {
                    break v;
                }
            };
            let base = [2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0];
            let args = [rng.next_f64(), rng.next_f64()];
            let dirf = [dir[0] as f64, dir[1] as f64];
            let seq = escaping_sequence(&base, &dirf, 1.0, 60, &args);
            let interior = cone.interior_point();
            let expected = chart.monoid_generators().iter().all(|g| {
                let on_interior: Rat = g.iter().zip(&interior).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum();
                let on_dir: Int = g.iter().zip(&dir).map(|(a, b)| a * Int::from(*b)).sum();
                on_interior <= Rat::zero() || on_dir < Int::zero()
            });
            if approaches_stratum(chart, &seq, 1e-9) != expected {
                bad.push(format!("fan {i} cone {cone} dir {dir:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("20 fans x 100 sequences, disagreements {}", bad.len()))
}

#[test]
fn acceptance_criteria() {
    let s = Duration::from_secs;
    let results = [
        run(1, "bound-table formulas", s(1), criterion_1),
        run(2, "incompressibility verdicts and torus covers", s(1), criterion_2),
        run(3, "lattice quotients against enumeration", s(30), criterion_3),
        run(4, "projection certificates", s(60), criterion_4),
        run(5, "core level-set function", s(30), criterion_5),
        run(6, "fundamental lemma against the sampler", s(60), criterion_6),
        run(7, "modular-curve fixed point", s(5), criterion_7),
        run(8, "Kuga fixed point", s(5), criterion_8),
        run(9, "punctured polydisc", s(5), criterion_9),
        run(10, "toric stratification", s(10), criterion_10),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, p)| !**p).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
