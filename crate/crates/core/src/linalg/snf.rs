use num_traits::{Signed, Zero};

use crate::linalg::matrix::IntMatrix;
use crate::num::Int;

/// Smith normal form `left * m * right = diag(diag)` (padded with zeros to the shape of `m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diag: Vec<Int>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Pivot: smallest nonzero absolute value in the trailing block, ties to the lowest (row, col).
fn pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn add_row(a: &mut IntMatrix, dst: usize, src: usize, f: &Int) {
    for j in 0..a.cols() {
        let v = &a[(dst, j)] + f * &a[(src, j)];
        a[(dst, j)] = v;
    }
}

fn add_col(a: &mut IntMatrix, dst: usize, src: usize, f: &Int) {
    for i in 0..a.rows() {
        let v = &a[(i, dst)] + f * &a[(i, src)];
        a[(i, dst)] = v;
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        while let Some((pi, pj)) = pivot(&a, t) {
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                add_row(&mut a, i, t, &q);
                add_row(&mut left, i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                add_col(&mut a, j, t, &q);
                add_col(&mut right, j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = Int::from(1);
                    add_row(&mut a, t, i, &one);
                    add_row(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for j in 0..cols {
                let v = -&a[(t, j)];
                a[(t, j)] = v;
            }
            for j in 0..rows {
                let v = -&left[(t, j)];
                left[(t, j)] = v;
            }
        }
    }

    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    Snf { diag, left, right }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ivec};

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j { s.diag[i].clone() } else { int(0) };
                assert_eq!(d[(i, j)], expect);
            }
        }
        assert_eq!(s.left.det().unwrap().abs(), int(1));
        assert_eq!(s.right.det().unwrap().abs(), int(1));
        for w in s.diag.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        s
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]])).diag, ivec(&[2, 4]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])).diag, ivec(&[2, 4]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[1, 0], &[0, 1]])).diag, ivec(&[1, 1]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 1], &[0, 3]])).diag, ivec(&[1, 6]));
    }

    #[test]
    fn rectangular_and_degenerate() {
        assert_eq!(check(&IntMatrix::from_i64(&[&[4, 6, 8]])).diag, ivec(&[2]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[0, 0], &[0, 0], &[0, 0]])).diag, ivec(&[0, 0]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3], &[0, 0]])).diag, ivec(&[1, 6]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[6, 0], &[0, 4]])).diag, ivec(&[2, 12]));
    }
}
