use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::lattice::IntegerLattice;
use crate::linalg::matrix::IntMatrix;
use crate::linalg::snf::smith_normal_form;
use crate::num::{is_prime, Int, IntVec};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ... | d_k`, every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    #[serde(serialize_with = "crate::json::ser_ints")]
    invariant_factors: Vec<Int>,
    free_rank: usize,
}

/// A cyclic summand of a quotient together with a lifted generator in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFactor {
    pub order: Int,
    pub generator: IntVec,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self { invariant_factors: Vec::new(), free_rank: 0 }
    }

    /// Normalizes a product of cyclic groups `Z/n_i` (`n_i = 0` meaning `Z`).
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let k = orders.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, n) in orders.iter().enumerate() {
            m[(i, i)] = n.abs();
        }
        Self::from_diagonal(&smith_normal_form(&m).diag, 0)
    }

    fn from_diagonal(diag: &[Int], extra_free: usize) -> Self {
        let free = diag.iter().filter(|d| d.is_zero()).count() + extra_free;
        let invariant_factors = diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        Self { invariant_factors, free_rank: free }
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    /// Number of invariant factors divisible by the prime `p`.
    pub fn p_rank(&self, p: &Int) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if self.free_rank > 0 {
            return Err(Error::NotFinite(self.free_rank));
        }
        Ok(self.invariant_factors.iter().filter(|d| (*d % p).is_zero()).count())
    }
}

/// `ambient / sub` with a lifted generator for each nontrivial cyclic factor.
pub fn quotient_with_generators(
    ambient: &IntegerLattice,
    sub: &IntegerLattice,
) -> Result<(FiniteAbelianGroup, Vec<CyclicFactor>)> {
    let s = ambient.express(sub)?;
    let snf = smith_normal_form(&s);
    let extra_free = ambient.rank() - snf.diag.len();
    let group = FiniteAbelianGroup::from_diagonal(&snf.diag, extra_free);

    // ambient = span(L^{-1} e_i), sub = span(d_i L^{-1} e_i).
    let linv = snf.left.to_rational().inverse().expect("unimodular");
    let basis = ambient.basis();
    let mut factors = Vec::new();
    for (i, d) in snf.diag.iter().enumerate() {
        if d.is_zero() || d.is_one() {
            continue;
        }
        let coords: IntVec = linv.col(i).iter().map(|x| x.to_integer()).collect();
        let generator = basis.mul_vec(&coords)?;
        factors.push(CyclicFactor { order: d.clone(), generator });
    }
    Ok((group, factors))
}

pub fn quotient_group(ambient: &IntegerLattice, sub: &IntegerLattice) -> Result<FiniteAbelianGroup> {
    Ok(quotient_with_generators(ambient, sub)?.0)
}
