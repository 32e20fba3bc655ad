//! Dense exact polynomials.
//!
//! [`Poly<T>`] is generic over a [`Ring`]; the concrete instances used across
//! the crate are [`UniPoly`] (integer coefficients), [`QPoly`] (rational
//! coefficients) and [`BiPoly`], a polynomial in `v` whose coefficients are
//! [`UniPoly`] values in `u`. Coefficients are stored lowest degree first and
//! trailing zeros are always trimmed, so the zero polynomial has no
//! coefficients at all.

mod interval;
mod resultant;
mod ring;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use interval::{interval_eval, Interval};
pub use resultant::{resultant_v, sylvester_resultant};
pub use ring::{rat_sign, sign, ExactDiv, Ring};
pub use roots::{isolate_roots, refine, sign_at, sturm_count, Bound, RootInterval, RootIsolator};

pub type Rational = BigRational;
pub type UniPoly = Poly<BigInt>;
pub type QPoly = Poly<BigRational>;
pub type BiPoly = Poly<UniPoly>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Substitutes a polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(inner).add(&Self::constant(c.clone()))
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&T::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg n - deg d + 1) * n = q d + r`.
    pub fn pseudo_divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc = d.lc().expect("nonzero").clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = r[k + dd].clone();
            for qc in q.iter_mut() {
                *qc = qc.mul_ref(&lc);
            }
            q[k] = q[k].add_ref(&top);
            for c in r.iter_mut().take(k + dd) {
                *c = c.mul_ref(&lc);
            }
            for (i, dc) in d.coeffs.iter().enumerate().take(dd) {
                r[k + i] = r[k + i].sub_ref(&top.mul_ref(dc));
            }
            r[k + dd] = T::zero();
        }
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        Ok(self.pseudo_divrem(d)?.1)
    }
}

impl<T: ExactDiv> Poly<T> {
    /// Divides every coefficient by `c`; `None` if some division is inexact.
    pub fn div_scalar_exact(&self, c: &T) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// Exact polynomial division.
    pub fn div_poly_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.lc()?;
        let Some(nd) = self.degree() else {
            return Some(Self::zero());
        };
        if nd < dd {
            return None;
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = r[k + dd].div_exact(lc)?;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub_ref(&c.mul_ref(dc));
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| Self::new(q))
    }
}

impl<T: Ring> std::ops::Add for Poly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Poly::add(&self, &rhs)
    }
}

impl<T: Ring> std::ops::Mul for Poly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Poly::mul(&self, &rhs)
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn add_ref(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        Poly::neg(self)
    }
    fn from_i64(x: i64) -> Self {
        Poly::constant(T::from_i64(x))
    }
}

impl<T: ExactDiv> ExactDiv for Poly<T> {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_poly_exact(rhs)
    }
}

impl UniPoly {
    /// Gcd of the coefficients, taken nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `(content, primitive part)` with the primitive part's leading
    /// coefficient positive. The content carries the sign.
    pub fn content_primitive(&self) -> (BigInt, UniPoly) {
        if self.is_zero() {
            return (BigInt::zero(), UniPoly::zero());
        }
        let mut c = self.content();
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        let prim = self.div_scalar_exact(&c).expect("content divides");
        (c, prim)
    }

    pub fn primitive_part(&self) -> UniPoly {
        self.content_primitive().1
    }

    /// Gcd over Z[x], primitive with positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b nonzero").primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// p / gcd(p, p'), primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_poly_exact(&g)
            .expect("gcd divides")
            .primitive_part()
    }

    pub fn to_rational(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.to_rational().eval(x)
    }

    /// Decimal-string coefficient list, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(cs: &[S]) -> Result<UniPoly> {
        cs.iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("coefficient '{}': {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(UniPoly::new)
    }
}

impl QPoly {
    /// Euclidean division over Q.
    pub fn divrem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc = d.lc().unwrap().clone();
        let Some(nd) = self.degree() else {
            return Ok((QPoly::zero(), QPoly::zero()));
        };
        if nd < dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] / &lc;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &c * dc;
            }
            q[k] = c;
        }
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    /// Monic gcd over Q (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("b nonzero").1;
            a = b;
            b = r;
        }
        match a.lc().cloned() {
            Some(lc) => a.scale(&lc.recip()),
            None => a,
        }
    }

    /// Clears denominators; the result is primitive with positive leading coefficient.
    pub fn to_integer_primitive(&self) -> UniPoly {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        UniPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25` or `-1.5e-3`
/// without passing through binary floating point.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("'{text}' is not a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("'{text}' has a zero denominator")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * Ring::pow(&ten, scale as u32))
    } else {
        BigRational::new(all, Ring::pow(&ten, (-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
