//! Closed intervals with rational endpoints, for certified enclosures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{BiPoly, RootInterval, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Distance from zero to the interval; zero when it contains zero.
    pub fn margin(&self) -> BigRational {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -self.hi.clone()
        } else {
            BigRational::zero()
        }
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Tight enclosure of `x^e` over the interval.
    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(BigRational::one());
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 || !self.lo.is_negative() {
            Interval::new(a.clone().min(b.clone()), a.max(b))
        } else if !self.hi.is_positive() {
            Interval::new(b, a)
        } else {
            Interval::new(BigRational::zero(), a.max(b))
        }
    }
}

impl From<&RootInterval> for Interval {
    fn from(r: &RootInterval) -> Self {
        Interval::new(r.lo.clone(), r.hi.clone())
    }
}

fn int(c: &BigInt) -> BigRational {
    BigRational::from_integer(c.clone())
}

/// Enclosure of a polynomial in `u` over `u_box`, summing monomial bounds.
pub fn uni_interval_eval(p: &UniPoly, u_box: &Interval) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&u_box.pow(i as u32).scale(&int(c)));
        }
    }
    acc
}

/// Certified enclosure of `f(u, v)` over `u_box × v_box`. If the result
/// excludes zero, `f` has no zero in the box.
pub fn interval_eval(f: &BiPoly, u_box: &Interval, v_box: &Interval) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for (j, cu) in f.coeffs().iter().enumerate() {
        if cu.is_zero() {
            continue;
        }
        acc = acc.add(&uni_interval_eval(cu, u_box).mul(&v_box.pow(j as u32)));
    }
    acc
}
