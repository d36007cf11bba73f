use std::collections::BTreeSet;

use num_traits::Zero;

use super::Cone;
use crate::num::{dot, pair, IntVec};

/// Subsets of extreme-ray indices cut out by intersections of facets, including the full set.
fn face_ray_sets(c: &Cone) -> BTreeSet<Vec<usize>> {
    let rays = c.extreme_rays();
    let full: Vec<usize> = (0..rays.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![full.clone()];
    seen.insert(full);
    while let Some(s) = stack.pop() {
        for f in c.facets() {
            let t: Vec<usize> = s.iter().copied().filter(|&i| dot(f, &rays[i]).is_zero()).collect();
            if t.len() < s.len() && seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    seen
}

fn face_from_set(c: &Cone, set: &[usize]) -> Cone {
    let mut gens: Vec<IntVec> = Vec::new();
    for l in c.lineality_basis() {
        gens.push(l.clone());
        gens.push(l.iter().map(|x| -x).collect());
    }
    gens.extend(set.iter().map(|&i| c.extreme_rays()[i].clone()));
    Cone::from_rays(c.ambient_rank(), &gens).expect("same rank")
}

/// All faces, from the minimal face (the lineality space) up to the cone itself,
/// ordered by dimension and then canonically.
pub(super) fn faces(c: &Cone) -> Vec<Cone> {
    let mut out: Vec<Cone> = face_ray_sets(c).iter().map(|s| face_from_set(c, s)).collect();
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// `a` is a face of `b`: `a ⊆ b` and `a` equals the smallest face of `b` containing its relative interior.
pub(super) fn is_face_of(a: &Cone, b: &Cone) -> bool {
    if a.ambient_rank() != b.ambient_rank() || a.lineality_basis() != b.lineality_basis() {
        return false;
    }
    if !b.contains_cone(a) {
        return false;
    }
    let x = a.interior_point();
    let tight: Vec<&IntVec> = b.facets().iter().filter(|f| pair(f, &x).is_zero()).collect();
    let mut expected: Vec<IntVec> = b
        .extreme_rays()
        .iter()
        .filter(|r| tight.iter().all(|f| dot(f, r).is_zero()))
        .cloned()
        .collect();
    expected.sort();
    expected == a.extreme_rays()
}
