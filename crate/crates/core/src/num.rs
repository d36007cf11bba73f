//! Exact scalar helpers shared by every module.
//!
//! All exact quantities are arbitrary precision: [`Int`] for integers and
//! [`Rat`] for rationals (always normalized, positive denominator).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<Int>;
pub type RatVec = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn ivec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rvec(v: &[i64]) -> RatVec {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(rat_int).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of an integer functional with a rational point.
pub fn pair(h: &[Int], v: &[Rat]) -> Rat {
    h.iter()
        .zip(v)
        .fold(Rat::zero(), |acc, (x, y)| acc + y * x)
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// Divides out the content so that the entries have gcd 1. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> IntVec {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Positive rescaling of a rational vector to a primitive integer vector.
pub fn primitive_from_rat(v: &[Rat]) -> IntVec {
    let den = v
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: IntVec = v.iter().map(|x| (x * rat_int(&den)).to_integer()).collect();
    primitive(&scaled)
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg_vec(v: &[Int]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

pub fn is_prime(p: &Int) -> bool {
    if *p < int(2) {
        return false;
    }
    let mut d = int(2);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

pub fn parse_int(s: &str) -> Result<Int> {
    s.trim()
        .parse::<Int>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator: {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// `"3"` for integers, `"3/2"` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

/// Rational extended by both infinities, ordered as on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sum with the convention that `-inf + x = -inf` for every `x` other than `+inf`.
    /// `+inf + -inf` is undefined and returns `None`.
    pub fn checked_add(&self, other: &ExtRat) -> Option<ExtRat> {
        use ExtRat::*;
        match (self, other) {
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
        }
    }

    pub fn half(&self) -> ExtRat {
        match self {
            ExtRat::Finite(a) => ExtRat::Finite(a / rat(2, 1)),
            other => other.clone(),
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRat::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "+inf"),
            ExtRat::Finite(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

pub fn abs_int(v: &Int) -> Int {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&ivec(&[4, -6, 0])), ivec(&[2, -3, 0]));
        assert_eq!(primitive_from_rat(&[rat(1, 2), rat(1, 3)]), ivec(&[3, 2]));
        assert_eq!(primitive(&ivec(&[0, 0])), ivec(&[0, 0]));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rat("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(fmt_rat(&rat(6, 3)), "2");
        assert_eq!(fmt_rat(&rat(-1, 3)), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn extended_order() {
        assert!(ExtRat::NegInf < ExtRat::Finite(rat(-100, 1)));
        assert!(ExtRat::Finite(rat(5, 1)) < ExtRat::PosInf);
        assert_eq!(
            ExtRat::NegInf.checked_add(&ExtRat::Finite(rat(1, 1))),
            Some(ExtRat::NegInf)
        );
        assert_eq!(ExtRat::NegInf.checked_add(&ExtRat::PosInf), None);
    }

    #[test]
    fn primes() {
        let primes: Vec<i64> = (0..30).filter(|&p| is_prime(&int(p))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
