//! Double description: generators of `{y : A y ≥ 0}`.
//!
//! The lineality space is `ker A`. Extreme rays are computed for the pointed
//! cone obtained by restricting to the row space of `A`, with the incremental
//! method and a combinatorial adjacency test.

use num_traits::{Signed, Zero};

use crate::linalg::{independent_subset, IntMatrix, RationalMatrix};
use crate::num::{dot, primitive, primitive_from_rat, to_rat_vec, Int, IntVec};

/// Lineality basis plus extreme rays, both in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generators {
    /// Basis of the lineality space: rref, primitive, positive leading entry.
    pub lineality: Vec<IntVec>,
    /// Primitive extreme rays of the pointed part, sorted.
    pub extreme: Vec<IntVec>,
}

impl Generators {
    /// Every vector that generates the cone as a monoid: `±` lineality and extreme rays.
    pub fn all(&self) -> Vec<IntVec> {
        let mut out: Vec<IntVec> = Vec::new();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out.extend(self.extreme.iter().cloned());
        out.sort();
        out.dedup();
        out
    }
}

/// Canonical basis of a rational subspace given by spanning vectors.
pub fn canonical_subspace_basis(vectors: &[Vec<num_rational::BigRational>], dim: usize) -> Vec<IntVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors, dim).expect("vector length");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| primitive_from_rat(r.row(i))).collect()
}

pub fn cone_generators(ineqs: &[IntVec], dim: usize) -> Generators {
    let rows: Vec<IntVec> = ineqs.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if rows.is_empty() {
        let id: Vec<_> = (0..dim)
            .map(|i| to_rat_vec(&(0..dim).map(|j| Int::from((i == j) as i64)).collect::<Vec<_>>()))
            .collect();
        return Generators { lineality: canonical_subspace_basis(&id, dim), extreme: Vec::new() };
    }
    let a = IntMatrix::from_rows(&rows, dim).expect("row width").to_rational();
    let lineality = canonical_subspace_basis(&a.kernel(), dim);

    // Coordinates z on the row space: y = Bᵀ z for a basis B of independent rows.
    let rat_rows: Vec<_> = rows.iter().map(|r| to_rat_vec(r)).collect();
    let basis_idx = independent_subset(&rat_rows, dim);
    let basis: Vec<&IntVec> = basis_idx.iter().map(|&i| &rows[i]).collect();
    let k = basis.len();
    let reduced: Vec<IntVec> = rows
        .iter()
        .map(|r| basis.iter().map(|b| dot(r, b)).collect())
        .collect();

    let rays_z = pointed_rays(&reduced, k);
    let mut extreme: Vec<IntVec> = rays_z
        .iter()
        .map(|z| {
            let y: IntVec = (0..dim)
                .map(|j| basis.iter().zip(z).map(|(b, zi)| &b[j] * zi).sum())
                .collect();
            primitive(&y)
        })
        .collect();
    extreme.sort();
    extreme.dedup();
    Generators { lineality, extreme }
}

/// Extreme rays of the pointed cone `{z ∈ Q^k : M z ≥ 0}` with `rank M = k`.
fn pointed_rays(m: &[IntVec], k: usize) -> Vec<IntVec> {
    if k == 0 {
        return Vec::new();
    }
    let rat_rows: Vec<_> = m.iter().map(|r| to_rat_vec(r)).collect();
    let init = independent_subset(&rat_rows, k);
    assert_eq!(init.len(), k, "row space coordinates must have full rank");

    let mb = RationalMatrix::from_rows(&init.iter().map(|&i| rat_rows[i].clone()).collect::<Vec<_>>(), k)
        .expect("square");
    let inv = mb.inverse().expect("independent rows");

    // Zero sets are tracked as row indices.
    let mut rays: Vec<(IntVec, Vec<usize>)> = (0..k)
        .map(|j| {
            let r = primitive_from_rat(&inv.col(j));
            let zeros = init.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &row)| row).collect();
            (r, zeros)
        })
        .collect();

    for (idx, a) in m.iter().enumerate() {
        if init.contains(&idx) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, (_, z)) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.push(idx);
                }
            }
            continue;
        }
        let mut next: Vec<(IntVec, Vec<usize>)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            let mut z = z.clone();
            if vals[i].is_zero() {
                z.push(idx);
            }
            next.push((r.clone(), z));
        }
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = rays[p].1.iter().filter(|x| rays[n].1.contains(x)).copied().collect();
                if common.len() + 2 < k {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(t, (_, zt))| {
                    t == p || t == n || !common.iter().all(|c| zt.contains(c))
                });
                if !adjacent {
                    continue;
                }
                let (vp, vn) = (&vals[p], -&vals[n]);
                let v: IntVec = rays[p].0.iter().zip(&rays[n].0).map(|(x, y)| vp * y + &vn * x).collect();
                let mut z = common;
                z.push(idx);
                next.push((primitive(&v), z));
            }
        }
        rays = next;
    }
    let mut out: Vec<IntVec> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    out
}
