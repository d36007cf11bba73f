//! Fourier–Motzkin elimination over the rationals with strict and non-strict rows.
//!
//! This is the exact feasibility engine used for cone projections, interior
//! witnesses and uncovered-region detection. Rows are kept primitive and
//! deduplicated after every elimination step.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{rat_int, Int, Rat};

/// `coeffs · x ≥ rhs`, or `> rhs` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self { coeffs, rhs, strict: false }
    }

    pub fn gt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self { coeffs, rhs, strict: true }
    }

    /// `h · x ≥ 0` (or `> 0`).
    pub fn homogeneous(h: &[Int], strict: bool) -> Self {
        Self { coeffs: h.iter().map(rat_int).collect(), rhs: Rat::zero(), strict }
    }

    /// The pair `h · x ≥ 0`, `-h · x ≥ 0`.
    pub fn equation(h: &[Int]) -> [Self; 2] {
        let neg: Vec<Int> = h.iter().map(|x| -x).collect();
        [Self::homogeneous(h, false), Self::homogeneous(&neg, false)]
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let lhs = self.coeffs.iter().zip(x).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trivially_holds(&self) -> bool {
        if self.strict {
            self.rhs.is_negative()
        } else {
            !self.rhs.is_positive()
        }
    }

    /// Positive rescaling making the coefficient vector a primitive integer vector.
    fn normalized(&self) -> Self {
        let den = self.coeffs.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Int> = self.coeffs.iter().map(|c| (c * rat_int(&den)).to_integer()).collect();
        let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        let scale = Rat::new(den, g);
        Self {
            coeffs: self.coeffs.iter().map(|c| c * &scale).collect(),
            rhs: &self.rhs * &scale,
            strict: self.strict,
        }
    }
}

/// A conjunction of constraints on `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    dim: usize,
    rows: Vec<Constraint>,
}

impl System {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn from_rows(dim: usize, rows: Vec<Constraint>) -> Self {
        debug_assert!(rows.iter().all(|r| r.coeffs.len() == dim));
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn push(&mut self, c: Constraint) {
        debug_assert_eq!(c.coeffs.len(), self.dim);
        self.rows.push(c);
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Constraint>) -> Self {
        let mut s = self.clone();
        for c in extra {
            s.push(c);
        }
        s
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        self.rows.iter().all(|r| r.holds(x))
    }

    /// Primitive, deduplicated rows keeping the tightest bound per direction.
    /// `None` if some row with zero coefficients is violated.
    fn simplified(dim: usize, rows: impl IntoIterator<Item = Constraint>) -> Option<Self> {
        let mut best: BTreeMap<Vec<Rat>, (Rat, bool)> = BTreeMap::new();
        for r in rows {
            if r.is_trivial() {
                if r.trivially_holds() {
                    continue;
                }
                return None;
            }
            let r = r.normalized();
            match best.get_mut(&r.coeffs) {
                Some((rhs, strict)) => {
                    if r.rhs > *rhs || (r.rhs == *rhs && r.strict) {
                        *rhs = r.rhs;
                        *strict = r.strict;
                    }
                }
                None => {
                    best.insert(r.coeffs, (r.rhs, r.strict));
                }
            }
        }
        let rows = best
            .into_iter()
            .map(|(coeffs, (rhs, strict))| Constraint { coeffs, rhs, strict })
            .collect();
        Some(Self { dim, rows })
    }

    /// Eliminates the last variable. `None` when infeasibility is detected.
    pub fn eliminate_last(&self) -> Option<Self> {
        assert!(self.dim > 0, "nothing to eliminate");
        let k = self.dim - 1;
        let (mut lower, mut upper, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in &self.rows {
            let c = &r.coeffs[k];
            if c.is_positive() {
                lower.push(r);
            } else if c.is_negative() {
                upper.push(r);
            } else {
                keep.push(Constraint { coeffs: r.coeffs[..k].to_vec(), rhs: r.rhs.clone(), strict: r.strict });
            }
        }
        for p in &lower {
            for n in &upper {
                let (cp, cn) = (p.coeffs[k].clone(), -&n.coeffs[k]);
                let coeffs = (0..k).map(|j| &cn * &p.coeffs[j] + &cp * &n.coeffs[j]).collect();
                keep.push(Constraint {
                    coeffs,
                    rhs: &cn * &p.rhs + &cp * &n.rhs,
                    strict: p.strict || n.strict,
                });
            }
        }
        Self::simplified(k, keep)
    }

    /// Projection onto the first `keep` variables.
    pub fn project(&self, keep: usize) -> Option<Self> {
        let mut s = Self::simplified(self.dim, self.rows.clone())?;
        while s.dim > keep {
            s = s.eliminate_last()?;
        }
        Some(s)
    }

    pub fn is_feasible(&self) -> bool {
        self.project(0).is_some()
    }

    /// An exact rational point satisfying every row, found by back substitution.
    pub fn find_point(&self) -> Option<Vec<Rat>> {
        let mut chain = vec![Self::simplified(self.dim, self.rows.clone())?];
        while chain.last().expect("nonempty").dim > 0 {
            let next = chain.last().expect("nonempty").eliminate_last()?;
            chain.push(next);
        }
        let mut x: Vec<Rat> = Vec::with_capacity(self.dim);
        for sys in chain.iter().rev().skip(1) {
            let k = x.len();
            let mut lo: Option<(Rat, bool)> = None;
            let mut hi: Option<(Rat, bool)> = None;
            for r in &sys.rows {
                let c = &r.coeffs[k];
                if c.is_zero() {
                    continue;
                }
                let rest = r.coeffs[..k].iter().zip(&x).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
                let bound = (&r.rhs - rest) / c;
                if c.is_positive() {
                    if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && r.strict && !s)) {
                        lo = Some((bound, r.strict));
                    }
                } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && r.strict && !s)) {
                    hi = Some((bound, r.strict));
                }
            }
            x.push(pick(lo, hi));
        }
        debug_assert!(self.holds(&x));
        Some(x)
    }
}

fn fits(v: &Rat, lo: &Option<(Rat, bool)>, hi: &Option<(Rat, bool)>) -> bool {
    let above = lo.as_ref().is_none_or(|(b, s)| if *s { v > b } else { v >= b });
    let below = hi.as_ref().is_none_or(|(b, s)| if *s { v < b } else { v <= b });
    above && below
}

/// A simple value inside the interval, preferring 0, then integers, then the midpoint.
fn pick(lo: Option<(Rat, bool)>, hi: Option<(Rat, bool)>) -> Rat {
    let zero = Rat::zero();
    if fits(&zero, &lo, &hi) {
        return zero;
    }
    let candidate = match (&lo, &hi) {
        (Some((b, _)), _) => Rat::from_integer(b.floor().to_integer() + 1),
        (None, Some((b, _))) => Rat::from_integer(b.ceil().to_integer() - 1),
        (None, None) => zero,
    };
    if fits(&candidate, &lo, &hi) {
        return candidate;
    }
    match (lo, hi) {
        (Some((a, _)), Some((b, _))) => (a + b) / Rat::from_integer(Int::from(2)),
        (Some((a, _)), None) => a,
        (None, Some((b, _))) => b,
        (None, None) => Rat::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ivec, rat, rvec};

    #[test]
    fn strict_interval() {
        // 0 < x < 1 is feasible; 0 < x, x < 0 is not.
        let s = System::from_rows(1, vec![Constraint::gt(rvec(&[1]), rat(0, 1)), Constraint::gt(rvec(&[-1]), rat(-1, 1))]);
        let p = s.find_point().unwrap();
        assert_eq!(p, vec![rat(1, 2)]);
        let s = System::from_rows(1, vec![Constraint::gt(rvec(&[1]), rat(0, 1)), Constraint::ge(rvec(&[-1]), rat(0, 1))]);
        assert!(s.find_point().is_none());
        let s = System::from_rows(1, vec![Constraint::ge(rvec(&[1]), rat(0, 1)), Constraint::ge(rvec(&[-1]), rat(0, 1))]);
        assert_eq!(s.find_point().unwrap(), rvec(&[0]));
    }

    #[test]
    fn projection_of_pyramid_is_everything() {
        // z ≥ |x|, z ≥ |y| projected to (x, y) has no constraints left.
        let hs = [ivec(&[1, 0, 1]), ivec(&[-1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[0, -1, 1])];
        let s = System::from_rows(3, hs.iter().map(|h| Constraint::homogeneous(h, false)).collect());
        let p = s.project(2).unwrap();
        assert!(p.rows().is_empty());
    }

    #[test]
    fn witness_satisfies_every_row() {
        // x > 0, y > 0, x + y < 1, y < x.
        let s = System::from_rows(
            2,
            vec![
                Constraint::gt(rvec(&[1, 0]), rat(0, 1)),
                Constraint::gt(rvec(&[0, 1]), rat(0, 1)),
                Constraint::gt(rvec(&[-1, -1]), rat(-1, 1)),
                Constraint::gt(rvec(&[1, -1]), rat(0, 1)),
            ],
        );
        let p = s.find_point().unwrap();
        assert!(s.holds(&p));
    }
}
