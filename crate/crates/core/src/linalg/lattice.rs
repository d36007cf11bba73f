use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::hnf::row_hnf;
use crate::linalg::matrix::{IntMatrix, RationalMatrix};
use crate::num::{to_rat_vec, Int, IntVec, Rat};

/// A lattice in `Z^ambient_rank`, stored by a column-HNF basis so that equal
/// lattices compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerLattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl serde::Serialize for IntegerLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntegerLattice", 2)?;
        st.serialize_field("ambient_rank", &self.ambient_rank)?;
        st.serialize_field("basis", &crate::json::int_rows(&self.basis_vectors()))?;
        st.end()
    }
}

impl IntegerLattice {
    /// Lattice spanned by arbitrary integer generators (dependent ones allowed).
    pub fn from_generators(ambient_rank: usize, gens: &[IntVec]) -> Result<Self> {
        let rows = IntMatrix::from_rows(gens, ambient_rank)?;
        let h = row_hnf(&rows);
        Ok(Self { ambient_rank, basis: h.transpose() })
    }

    pub fn standard(n: usize) -> Self {
        Self { ambient_rank: n, basis: IntMatrix::identity(n) }
    }

    pub fn scaled(&self, k: &Int) -> Self {
        let gens: Vec<IntVec> = self
            .basis_vectors()
            .into_iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        Self::from_generators(self.ambient_rank, &gens).expect("same ambient")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Basis matrix, one basis vector per column.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<IntVec> {
        self.basis.to_cols()
    }

    /// Coordinates of `v` in the basis, over the rationals, if `v` lies in the span.
    pub fn rational_coordinates(&self, v: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: v.len() });
        }
        self.basis.to_rational().solve(v)
    }

    /// Integer coordinates of `v`, if `v` is a lattice vector.
    pub fn coordinates(&self, v: &[Int]) -> Result<Option<IntVec>> {
        let Some(x) = self.rational_coordinates(&to_rat_vec(v))? else {
            return Ok(None);
        };
        if x.iter().all(|c| c.is_integer()) {
            Ok(Some(x.iter().map(|c| c.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> Result<bool> {
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Change of basis: the matrix whose columns are `other`'s basis in this lattice's coordinates.
    pub fn express(&self, other: &IntegerLattice) -> Result<IntMatrix> {
        if other.ambient_rank != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: other.ambient_rank,
            });
        }
        let mut cols = Vec::new();
        for (i, v) in other.basis_vectors().iter().enumerate() {
            cols.push(self.coordinates(v)?.ok_or(Error::NotASublattice(i))?);
        }
        IntMatrix::from_cols(&cols, self.rank())
    }

    pub fn rational_basis(&self) -> RationalMatrix {
        self.basis.to_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0 || self.basis_vectors().iter().all(|v| v.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ivec};

    #[test]
    fn canonical_bases_compare_equal() {
        let a = IntegerLattice::from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 3])]).unwrap();
        let b = IntegerLattice::from_generators(2, &[ivec(&[1, 3]), ivec(&[3, 3]), ivec(&[0, 6])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&ivec(&[3, 3])).unwrap());
        assert!(!a.contains(&ivec(&[1, 0])).unwrap());
    }

    #[test]
    fn scaling_and_containment() {
        let z2 = IntegerLattice::standard(2);
        let d3 = z2.scaled(&int(3));
        assert!(z2.contains_lattice(&d3).unwrap());
        assert!(!d3.contains_lattice(&z2).unwrap());
        assert_eq!(d3.coordinates(&ivec(&[6, -3])).unwrap(), Some(ivec(&[2, -1])));
    }

    #[test]
    fn lower_rank_lattice() {
        let l = IntegerLattice::from_generators(3, &[ivec(&[1, 1, 0]), ivec(&[2, 2, 0])]).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(!l.is_full_rank());
        assert_eq!(l.coordinates(&ivec(&[1, 0, 0])).unwrap(), None);
    }
}
