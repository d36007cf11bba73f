use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::linalg::matrix::IntMatrix;
use crate::num::Int;

/// Row Hermite normal form of the row span of `m`.
///
/// Zero rows are dropped. Each remaining row has a positive pivot strictly to the
/// right of the previous one, and entries above a pivot lie in `[0, pivot)`.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = &a[(i, c)] / &a[(r, c)];
                for j in c..cols {
                    let v = &a[(i, j)] - &q * &a[(r, j)];
                    a[(i, j)] = v;
                }
                clean &= a[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            for j in c..cols {
                let v = -&a[(r, j)];
                a[(r, j)] = v;
            }
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &a[(i, j)] - &q * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        r += 1;
    }
    let kept: Vec<Vec<Int>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows(&kept, cols).expect("row width")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let h = row_hnf(&IntMatrix::from_i64(&[&[2, 1], &[0, 3]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 1], &[0, 3]]));
        let h = row_hnf(&IntMatrix::from_i64(&[&[0, 3], &[2, 4]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 1], &[0, 3]]));
        let h = row_hnf(&IntMatrix::from_i64(&[&[3, 0], &[0, 3], &[1, 1]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 3]]));
        let h = row_hnf(&IntMatrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 2]]));
        let h = row_hnf(&IntMatrix::from_i64(&[&[-4, 0]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[4, 0]]));
    }
}
