use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use conefort::linalg::{quotient_group, smith_normal_form, IntMatrix, IntegerLattice};
use conefort::num::{int, Int, IntVec};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-9i64..=9, rows * cols).prop_map(move |v| {
        let rs: Vec<IntVec> = v.chunks(cols).map(|c| c.iter().map(|x| int(*x)).collect()).collect();
        IntMatrix::from_rows(&rs, cols).unwrap()
    })
}

fn square() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4).prop_flat_map(|n| matrix(n, n))
}

/// Leibniz expansion.
fn leibniz(m: &IntMatrix) -> Int {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.rows();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let term: Int = (0..n).map(|i| m[(i, p[i])].clone()).product();
            if inversions % 2 == 0 { term } else { -term }
        })
        .sum()
}

fn diag_matrix(diag: &[Int], rows: usize, cols: usize) -> IntMatrix {
    let mut d = IntMatrix::zeros(rows, cols);
    for (i, x) in diag.iter().enumerate() {
        d[(i, i)] = x.clone();
    }
    d
}

proptest! {
    #[test]
    fn snf_is_idempotent(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (r, c) = (m.rows(), m.cols());
        let s = smith_normal_form(&m);
        let again = smith_normal_form(&diag_matrix(&s.diag, r, c));
        prop_assert_eq!(again.diag, s.diag.clone());
        prop_assert_eq!(s.left.mul(&m).unwrap().mul(&s.right).unwrap(), diag_matrix(&s.diag, r, c));
    }

    #[test]
    fn snf_conserves_abs_det(m in square()) {
        let s = smith_normal_form(&m);
        let det = leibniz(&m);
        let product: Int = s.diag.iter().product();
        let full = s.diag.len() == m.rows();
        if det.is_zero() {
            prop_assert!(!full || product.is_zero());
        } else {
            prop_assert_eq!(product.abs(), det.abs());
        }
    }

    #[test]
    fn snf_transforms_are_unimodular(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let s = smith_normal_form(&m);
        prop_assert!(leibniz(&s.left).abs().is_one());
        prop_assert!(leibniz(&s.right).abs().is_one());
    }

    #[test]
    fn scaled_lattice_quotient(m in square(), n in 2i64..=12, p in prop::sample::select(vec![2i64, 3, 5, 7, 11])) {
        prop_assume!(!leibniz(&m).is_zero());
        let l = IntegerLattice::from_generators(m.rows(), &m.to_cols()).unwrap();
        let q = quotient_group(&l, &l.scaled(&int(n))).unwrap();
        prop_assert!(q.invariant_factors().iter().all(|f| *f == int(n)));
        prop_assert_eq!(q.invariant_factors().len(), l.rank());
        let rank = q.p_rank(&int(p)).unwrap();
        prop_assert_eq!(rank == l.rank(), n % p == 0);
    }
}
