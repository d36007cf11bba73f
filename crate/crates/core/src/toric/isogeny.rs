use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::TorusChartModel;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{quotient_with_generators, FiniteAbelianGroup, IntegerLattice};
use crate::num::{pair, to_rat_vec, Int, Rat};

/// `exp(2πi · exponent)` with the exponent reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    exponent: Rat,
}

impl RootOfUnity {
    pub fn new(exponent: Rat) -> Self {
        let e = &exponent - exponent.floor();
        Self { exponent: e }
    }

    /// `ζ_d^k`.
    pub fn zeta(d: i64, k: i64) -> Self {
        Self::new(Rat::new(Int::from(k), Int::from(d)))
    }

    pub fn exponent(&self) -> &Rat {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    pub fn order(&self) -> Int {
        self.exponent.denom().clone()
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::new(&self.exponent + &other.exponent)
    }

    pub fn pow(&self, k: &Int) -> RootOfUnity {
        RootOfUnity::new(&self.exponent * Rat::from_integer(k.clone()))
    }

    /// Power `k` of `ζ_d` if this root has order dividing `d`, as the least absolute residue.
    pub fn as_power_of_zeta(&self, d: &Int) -> Option<Int> {
        let k = &self.exponent * Rat::from_integer(d.clone());
        if !k.is_integer() {
            return None;
        }
        let k = k.to_integer();
        let half = d / Int::from(2);
        Some(if k > half { k - d } else { k })
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let t = std::f64::consts::TAU * crate::num::rat_to_f64(&self.exponent);
        num_complex::Complex64::from_polar(1.0, t)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        write!(f, "zeta_{}^{}", self.exponent.denom(), self.exponent.numer())
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::num::fmt_rat(&self.exponent))
    }
}

/// `T = Y ⊗ C^× → T' = Y' ⊗ C^×` for `Y ⊆ Y'` of finite index, with its kernel
/// `Y'/Y` acting on the charts of `T`.
#[derive(Clone, Debug, Serialize)]
pub struct Isogeny {
    pub source: TorusChartModel,
    pub target: TorusChartModel,
    pub kernel: FiniteAbelianGroup,
    /// Lifts to `Y'` of generators of the kernel, in ambient coordinates.
    #[serde(serialize_with = "crate::json::ser_int_vecs")]
    pub kernel_generators: Vec<crate::num::IntVec>,
    /// `action[i][j]`: the root of unity by which kernel generator `i` multiplies chart coordinate `j` of the source.
    pub action: Vec<Vec<RootOfUnity>>,
}

impl Isogeny {
    /// Whether kernel generator `i` fixes the `σ`-stratum pointwise: every
    /// generator orthogonal to `σ` is acted on trivially.
    pub fn fixes_stratum(&self, i: usize) -> bool {
        let vanishing = self.source.vanishing_generators();
        self.action[i].iter().enumerate().all(|(j, z)| vanishing.contains(&j) || z.is_one())
    }

    /// Action of an element of the larger lattice (ambient coordinates) on the source chart coordinates.
    pub fn act(&self, element: &[Int]) -> Result<Vec<RootOfUnity>> {
        let y = self.source.lattice();
        let coords = y
            .rational_coordinates(&to_rat_vec(element))?
            .ok_or_else(|| Error::DimensionMismatch { expected: y.ambient_rank(), found: element.len() })?;
        Ok(self.source.monoid_generators().iter().map(|g| RootOfUnity::new(pair(g, &coords))).collect())
    }

    /// Whether each kernel generator acts with order dividing its invariant factor.
    pub fn orders_divide(&self) -> bool {
        self.kernel.invariant_factors().len() == self.action.len()
            && self
                .action
                .iter()
                .zip(self.kernel.invariant_factors())
                .all(|(row, n)| row.iter().all(|z| n.is_multiple_of(&z.order())))
    }

    /// Every coordinate of the action table as a power of `ζ_d`.
    pub fn exponents_mod(&self, d: &Int) -> Option<Vec<Vec<Int>>> {
        self.action.iter().map(|row| row.iter().map(|z| z.as_power_of_zeta(d)).collect()).collect()
    }
}

/// The quotient of the chart of `m` by `ker(T → T')`, where `sub ⊇ Y` is the larger cocharacter lattice.
pub fn quotient_by_isogeny(m: &TorusChartModel, sub: &IntegerLattice) -> Result<Isogeny> {
    let y = m.lattice();
    if sub.ambient_rank() != y.ambient_rank() {
        return Err(Error::DimensionMismatch { expected: y.ambient_rank(), found: sub.ambient_rank() });
    }
    if !sub.contains_lattice(y)? || sub.rank() != y.rank() {
        return Err(Error::NotFiniteIndex("the larger lattice must contain the cocharacters with the same rank".into()));
    }
    let (kernel, factors) = quotient_with_generators(sub, y)?;
    if kernel.free_rank() > 0 {
        return Err(Error::NotFiniteIndex("quotient is infinite".into()));
    }
    // σ back in ambient coordinates
    let basis = y.rational_basis();
    let ambient_rays: Vec<Vec<Rat>> = m
        .cone()
        .extreme_rays()
        .iter()
        .map(|r| basis.mul_vec(&to_rat_vec(r)).expect("width"))
        .collect();
    let ambient_cone = Cone::from_rational_rays(y.ambient_rank(), &ambient_rays)?;
    let target = TorusChartModel::new(sub.clone(), &ambient_cone)?;

    let kernel_generators = factors.into_iter().map(|f| f.generator).collect();
    let mut iso = Isogeny { source: m.clone(), target, kernel, kernel_generators, action: Vec::new() };
    iso.action = iso.kernel_generators.iter().map(|g| iso.act(g)).collect::<Result<_>>()?;
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ivec};
    use num_traits::One;

    #[test]
    fn rank_one_kernel_acts_by_zeta() {
        for d in 3..6 {
            let y = IntegerLattice::standard(1).scaled(&int(d));
            let m = TorusChartModel::new(y, &Cone::of(1, &[&[-1]])).unwrap();
            let iso = quotient_by_isogeny(&m, &IntegerLattice::standard(1)).unwrap();
            assert_eq!(iso.kernel.invariant_factors(), &[int(d)]);
            let z = &iso.action[0][0];
            assert!(z == &RootOfUnity::zeta(d, -1) || z == &RootOfUnity::zeta(d, 1));
            assert_eq!(z.order(), int(d));
            assert!(iso.fixes_stratum(0));
            assert!(iso.orders_divide());
        }
    }

    #[test]
    fn trivial_isogeny() {
        let m = TorusChartModel::standard(&Cone::of(2, &[&[1, 0], &[0, 1]])).unwrap();
        let iso = quotient_by_isogeny(&m, &IntegerLattice::standard(2)).unwrap();
        assert!(iso.kernel.is_trivial());
        assert!(iso.action.is_empty());
        assert_eq!(iso.target, m);
    }

    #[test]
    fn index_six() {
        let y = IntegerLattice::from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 3])]).unwrap();
        let m = TorusChartModel::new(y, &Cone::of(2, &[&[2, 0], &[1, 3]])).unwrap();
        let iso = quotient_by_isogeny(&m, &IntegerLattice::standard(2)).unwrap();
        assert_eq!(iso.kernel.invariant_factors(), &[int(6)]);
        assert_eq!(iso.action.len(), 1);
        // the generator has order 6 in the kernel, so some coordinate rotates by a primitive 6th root or the pair does
        let lcm = iso.action[0].iter().fold(Int::one(), |a, z| a.lcm(&z.order()));
        assert_eq!(lcm, int(6));
        assert!(iso.orders_divide());
    }

    #[test]
    fn rejects_non_superlattice() {
        let m = TorusChartModel::standard(&Cone::of(1, &[&[1]])).unwrap();
        let sub = IntegerLattice::standard(1).scaled(&int(2));
        assert!(matches!(quotient_by_isogeny(&m, &sub), Err(Error::NotFiniteIndex(_))));
    }

    #[test]
    fn root_arithmetic() {
        let z = RootOfUnity::zeta(3, -1);
        assert_eq!(z.exponent(), &Rat::new(int(2), int(3)));
        assert_eq!(z.as_power_of_zeta(&int(3)), Some(int(-1)));
        assert!(z.pow(&int(3)).is_one());
        assert!(z.mul(&RootOfUnity::zeta(3, 1)).is_one());
    }
}
