//! Real-root counting and isolation with Sturm chains, in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{sign, UniPoly};
use crate::error::{Error, Result};

/// End of an open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(n: i64) -> Bound {
        Bound::Finite(BigRational::from_integer(BigInt::from(n)))
    }
}

/// Rational interval `(lo, hi)` isolating exactly one real root of a
/// squarefree polynomial; neither endpoint is a root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Sign of `p(x)` for rational `x`, computed without forming fractions.
pub fn sign_at(p: &UniPoly, x: &BigRational) -> i8 {
    let Some(d) = p.degree() else {
        return 0;
    };
    let (num, den) = (x.numer(), x.denom());
    let mut den_pow = BigInt::one();
    let mut acc = p.coeffs()[d].clone();
    for c in p.coeffs()[..d].iter().rev() {
        den_pow *= den;
        acc = acc * num + c * &den_pow;
    }
    // denominators of BigRational are positive
    sign(&acc)
}

fn sign_at_bound(p: &UniPoly, b: &Bound) -> i8 {
    match b {
        Bound::Finite(x) => sign_at(p, x),
        Bound::PosInf => p.lc().map_or(0, sign),
        Bound::NegInf => {
            let s = p.lc().map_or(0, sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

/// Squarefree polynomial together with its Sturm chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIsolator {
    sqf: UniPoly,
    chain: Vec<UniPoly>,
}

impl RootIsolator {
    /// Prepares `p` for counting on `(lo, hi)`: roots sitting exactly on a
    /// finite endpoint are divided out, then the squarefree part is taken.
    pub fn new(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<Self> {
        let points: Vec<BigRational> = [lo, hi]
            .into_iter()
            .filter_map(|b| match b {
                Bound::Finite(x) => Some(x.clone()),
                _ => None,
            })
            .collect();
        Self::avoiding(p, &points)
    }

    /// Like [`RootIsolator::new`], dividing out roots at every point given.
    /// One isolator then serves all intervals with endpoints among `points`.
    pub fn avoiding(p: &UniPoly, points: &[BigRational]) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut q = p.primitive_part();
        for x in points {
            let linear = UniPoly::new(vec![-x.numer().clone(), x.denom().clone()]);
            while q.degree().unwrap_or(0) > 0 && sign_at(&q, x) == 0 {
                q = q.div_poly_exact(&linear).expect("endpoint root divides");
            }
        }
        let sqf = if is_squarefree_mod_p(&q) {
            q
        } else {
            q.squarefree_part()
        };
        Ok(Self::from_squarefree(sqf))
    }

    fn from_squarefree(sqf: UniPoly) -> Self {
        let chain = sturm_chain(&sqf);
        RootIsolator { sqf, chain }
    }

    pub fn squarefree(&self) -> &UniPoly {
        &self.sqf
    }

    fn variations(&self, b: &Bound) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign_at_bound(p, b);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots strictly inside `(lo, hi)`.
    ///
    /// Endpoints must not be roots of the squarefree part; use a fresh
    /// isolator built for those endpoints otherwise.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        if self.sqf.degree().unwrap_or(0) == 0 {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Cauchy bound: every root has absolute value below the result.
    pub fn root_bound(&self) -> BigRational {
        let lc = self.sqf.lc().expect("nonzero").abs();
        let max = self
            .sqf
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigRational::from_integer(max / lc + BigInt::from(2))
    }

    fn finite(&self, b: &Bound) -> BigRational {
        match b {
            Bound::Finite(x) => x.clone(),
            Bound::PosInf => self.root_bound(),
            Bound::NegInf => -self.root_bound(),
        }
    }

    /// Isolating intervals for all roots in `(lo, hi)`, in increasing order.
    pub fn isolate(&self, lo: &Bound, hi: &Bound) -> Vec<RootInterval> {
        let mut out = Vec::new();
        if self.sqf.degree().unwrap_or(0) == 0 {
            return out;
        }
        let (a, b) = (self.finite(lo), self.finite(hi));
        if a >= b {
            return out;
        }
        let n = self.count(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()));
        self.bisect(a, b, n, &mut out);
        out
    }

    fn bisect(&self, a: BigRational, b: BigRational, n: usize, out: &mut Vec<RootInterval>) {
        if n == 0 {
            return;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b });
            return;
        }
        let m = self.split_point(&a, &b);
        let left = self.count(&Bound::Finite(a.clone()), &Bound::Finite(m.clone()));
        self.bisect(a, m.clone(), left, out);
        self.bisect(m, b, n - left, out);
    }

    /// Midpoint of `(a, b)`, nudged off any exact root.
    fn split_point(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let width = b - a;
        let mut k = 4i64;
        loop {
            for num in [k / 2, k / 2 - 1, k / 2 + 1] {
                let m = a + &width * BigRational::new(num.into(), k.into());
                if sign_at(&self.sqf, &m) != 0 {
                    return m;
                }
            }
            k *= 2;
        }
    }

    /// Shrinks an isolating interval by exact bisection to width at most `width`.
    pub fn refine(&self, r: &RootInterval, width: &BigRational) -> RootInterval {
        let mut lo = r.lo.clone();
        let mut hi = r.hi.clone();
        let s_lo = sign_at(&self.sqf, &lo);
        let two = BigRational::from_integer(BigInt::from(2));
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            match sign_at(&self.sqf, &mid) {
                0 => {
                    let eps = (width / &two).min((&hi - &lo) / &two) / &two;
                    return RootInterval {
                        lo: &mid - &eps,
                        hi: &mid + &eps,
                    };
                }
                s if s == s_lo => lo = mid,
                _ => hi = mid,
            }
        }
        RootInterval { lo, hi }
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`, in place.
fn prem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let db = b.degree().expect("nonzero divisor");
    let bc = b.coeffs();
    let lc = &bc[db];
    let mut r = a.coeffs().to_vec();
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        let k = r.len() - db;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (i, dc) in bc[..db].iter().enumerate() {
            r[k + i] -= &top * dc;
        }
    }
    UniPoly::new(r)
}

/// Sturm chain of a squarefree polynomial from the subresultant PRS.
///
/// Subresultant terms are scalar multiples of the Euclidean remainders; each
/// is negated where needed so it is a positive multiple of minus the
/// remainder of its two predecessors, which is all a Sturm count uses.
fn sturm_chain(sqf: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![sqf.clone()];
    let d = sqf.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.clone());
    let (mut a, mut b) = (sqf.clone(), d);
    let mut sign_a = 1i8;
    let mut sign_b = 1i8;
    let (mut g, mut h) = (BigInt::one(), BigInt::one());
    while b.degree().unwrap_or(0) > 0 {
        let delta = (a.degree().unwrap() - b.degree().unwrap()) as u32;
        let r = prem(&a, &b);
        if r.is_zero() {
            break;
        }
        let beta = &g * num_traits::pow(h.clone(), delta as usize);
        let next = r
            .div_scalar_exact(&beta)
            .expect("subresultant division is exact");
        let lc_b = sign(b.lc().unwrap());
        let lc_factor = if lc_b < 0 && (delta + 1) % 2 == 1 {
            -1
        } else {
            1
        };
        let sign_next = -sign_a * lc_factor * sign(&beta);
        chain.push(if sign_next < 0 {
            next.neg()
        } else {
            next.clone()
        });
        g = b.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h, delta as usize - 1)
        };
        a = std::mem::replace(&mut b, next);
        sign_a = sign_b;
        sign_b = sign_next;
    }
    chain
}

const CHECK_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` over `F_p`; inputs nonzero, lowest degree first.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv, p);
            let k = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[k + i] = (a[k + i] + p - mulmod(f, c, p)) % p;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for squarefreeness: `p` and `p'` stay coprime modulo a
/// prime that keeps both degrees, so they are coprime over the rationals.
fn is_squarefree_mod_p(q: &UniPoly) -> bool {
    let Some(d) = q.degree() else {
        return false;
    };
    if d == 0 {
        return true;
    }
    for &p in &CHECK_PRIMES {
        let pb = BigInt::from(p);
        let reduce = |c: &BigInt| -> u64 {
            use num_integer::Integer;
            c.mod_floor(&pb).try_into().expect("residue fits u64")
        };
        let a: Vec<u64> = q.coeffs().iter().map(reduce).collect();
        if a[d] == 0 || (d as u64).is_multiple_of(p) {
            continue;
        }
        let da: Vec<u64> = (1..=d).map(|i| mulmod(a[i], i as u64 % p, p)).collect();
        if gcd_degree_mod(a, da, p) == 0 {
            return true;
        }
    }
    false
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(RootIsolator::new(p, lo, hi)?.count(lo, hi))
}

/// Disjoint isolating intervals, one per distinct real root in `(lo, hi)`.
pub fn isolate_roots(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<Vec<RootInterval>> {
    Ok(RootIsolator::new(p, lo, hi)?.isolate(lo, hi))
}

/// Refines `r`, an isolating interval for a root of `p`, to width at most `width`.
pub fn refine(r: &RootInterval, p: &UniPoly, width: &BigRational) -> Result<RootInterval> {
    if &r.width() <= width {
        return Ok(r.clone());
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let iso = RootIsolator::from_squarefree(p.squarefree_part());
    Ok(iso.refine(r, width))
}
