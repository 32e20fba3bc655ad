//! Subset polynomials of a pattern graph at a rational point `(u, v, s)`.
//!
//! For `A ⊆ V(F)` the weight of `A` is `u^e(A) v^e(A^c) s^e(A, A^c)`. The
//! level sums `L_k` (total weight of the subsets of size `k`) determine
//! everything here:
//!
//! * `Λ(q)  = Σ_k L_k q^k (1-q)^(m-k)`
//! * `Λ*(x) = Σ_k L_k (x-1)^k`
//!
//! `F` is bad exactly when some triple with `u, v, s` not all equal makes
//! `Λ` a nonzero polynomial of degree at most one, i.e. `L_k = C(m,k)(a + bk)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{subset_profile, SmallGraph, SubsetProfile};
use crate::poly::{rat, BiPoly, QPoly, Ring, UniPoly};
use crate::report::ser_rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTriple {
    #[serde(serialize_with = "ser_rational")]
    pub u: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub v: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub s: BigRational,
}

impl WitnessTriple {
    pub fn new(u: BigRational, v: BigRational, s: BigRational) -> Result<Self> {
        if [&u, &v, &s].iter().any(|x| x < &&BigRational::zero()) {
            return Err(Error::InvalidArgument("u, v, s must be nonnegative".into()));
        }
        Ok(WitnessTriple { u, v, s })
    }

    /// The standard witness for single-edge patterns: `s = (u + v) / 2`.
    pub fn single_edge() -> Self {
        WitnessTriple {
            u: rat(3, 4),
            v: rat(1, 4),
            s: rat(1, 2),
        }
    }

    pub fn all_equal(&self) -> bool {
        self.u == self.v && self.v == self.s
    }

    pub fn in_unit_cube(&self) -> bool {
        let one = BigRational::one();
        [&self.u, &self.v, &self.s].iter().all(|x| **x <= one)
    }

    /// Rescales so that the largest entry is at most one. The conditions on
    /// `Λ` are homogeneous, so the verdict is unchanged.
    pub fn normalized(&self) -> Self {
        let max = self.u.clone().max(self.v.clone()).max(self.s.clone());
        if max <= BigRational::one() {
            return self.clone();
        }
        WitnessTriple {
            u: &self.u / &max,
            v: &self.v / &max,
            s: &self.s / &max,
        }
    }
}

/// `(a, b)` with `Λ(q) = a + b m q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinePair {
    #[serde(serialize_with = "ser_rational")]
    pub a: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub b: BigRational,
}

fn powers(x: &BigRational, max: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut cur = BigRational::one();
    for _ in 0..=max {
        out.push(cur.clone());
        cur = &cur * x;
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// `L_k` for `k = 0..=m`.
pub fn level_sums(profile: &SubsetProfile, w: &WitnessTriple) -> Vec<BigRational> {
    let e = profile.edges;
    let (pu, pv, ps) = (powers(&w.u, e), powers(&w.v, e), powers(&w.s, e));
    profile
        .levels
        .iter()
        .map(|level| {
            level
                .iter()
                .fold(BigRational::zero(), |acc, (&(a, b, c), &mult)| {
                    let term = &pu[a as usize] * &pv[b as usize] * &ps[c as usize];
                    acc + term * int(BigInt::from(mult))
                })
        })
        .collect()
}

fn lambda_q_from_levels(levels: &[BigRational]) -> QPoly {
    let m = levels.len() - 1;
    let mut coeffs = vec![BigRational::zero(); m + 1];
    for (k, lk) in levels.iter().enumerate() {
        if lk.is_zero() {
            continue;
        }
        // q^k (1 - q)^(m-k)
        for i in 0..=m - k {
            let c = int(binomial(m - k, i));
            let term = lk * c;
            if i % 2 == 0 {
                coeffs[k + i] += term;
            } else {
                coeffs[k + i] -= term;
            }
        }
    }
    QPoly::new(coeffs)
}

fn lambda_x_from_levels(levels: &[BigRational]) -> QPoly {
    let m = levels.len() - 1;
    let mut coeffs = vec![BigRational::zero(); m + 1];
    for (k, lk) in levels.iter().enumerate() {
        // (x - 1)^k
        for (i, c) in coeffs.iter_mut().enumerate().take(k + 1) {
            let term = lk * int(binomial(k, i));
            if (k - i) % 2 == 0 {
                *c += term;
            } else {
                *c -= term;
            }
        }
    }
    QPoly::new(coeffs)
}

/// `Λ_{F;u,v,s}(q)` in the power basis.
pub fn lambda_q(f: &SmallGraph, w: &WitnessTriple) -> Result<QPoly> {
    let profile = subset_profile(f)?;
    Ok(lambda_q_from_levels(&level_sums(&profile, w)))
}

/// Bernstein coefficients of `Λ` of degree `m`: `L_k / C(m, k)`.
pub fn lambda_bernstein(f: &SmallGraph, w: &WitnessTriple) -> Result<Vec<BigRational>> {
    let profile = subset_profile(f)?;
    let m = profile.m;
    Ok(level_sums(&profile, w)
        .into_iter()
        .enumerate()
        .map(|(k, l)| l / int(binomial(m, k)))
        .collect())
}

/// `Λ*_{F;u,v,s}(x) = Σ_A u^e(A) v^e(A^c) s^e(A,A^c) (x - 1)^|A|`.
pub fn lambda_x(f: &SmallGraph, w: &WitnessTriple) -> Result<QPoly> {
    let profile = subset_profile(f)?;
    Ok(lambda_x_from_levels(&level_sums(&profile, w)))
}

fn affine_from_lambda(lambda: &QPoly, m: usize) -> Option<AffinePair> {
    if lambda.is_zero() || lambda.degree() > Some(1) {
        return None;
    }
    let b = if m == 0 {
        BigRational::zero()
    } else {
        lambda.coeff(1) / int(BigInt::from(m))
    };
    Some(AffinePair {
        a: lambda.coeff(0),
        b,
    })
}

/// `Some((a, b))` when `Λ` is nonzero of degree at most one.
pub fn degree_le1_check(f: &SmallGraph, w: &WitnessTriple) -> Option<AffinePair> {
    let lambda = lambda_q(f, w).ok()?;
    affine_from_lambda(&lambda, f.vertex_count())
}

/// Solves `a = v^e`, `a + m b = u^e` and checks `L_k = C(m,k)(a + bk)` for
/// every `k`. Returns the pair when all equations hold and `(a, b) != (0, 0)`.
pub fn check_alg_system(f: &SmallGraph, w: &WitnessTriple) -> Option<AffinePair> {
    let profile = subset_profile(f).ok()?;
    check_alg_system_on(&profile, w)
}

pub(crate) fn check_alg_system_on(
    profile: &SubsetProfile,
    w: &WitnessTriple,
) -> Option<AffinePair> {
    let m = profile.m;
    let e = profile.edges;
    let a = Ring::pow(&w.v, e);
    let b = if m == 0 {
        BigRational::zero()
    } else {
        (Ring::pow(&w.u, e) - &a) / int(BigInt::from(m))
    };
    if a.is_zero() && b.is_zero() {
        return None;
    }
    let levels = level_sums(profile, w);
    let holds = levels
        .iter()
        .enumerate()
        .all(|(k, lk)| *lk == int(binomial(m, k)) * (&a + &b * int(BigInt::from(k))));
    holds.then_some(AffinePair { a, b })
}

/// The degree-sequence system with `s = 1`:
///
/// * `f1 = Σ_i u^(e-d_i) - (m-1) u^e - v^e`
/// * `f2 = Σ_i v^(e-d_i) - u^e - (m-1) v^e`
///
/// as polynomials in `v` over Z[u].
pub fn degree_seq_equations(f: &SmallGraph) -> Result<(BiPoly, BiPoly)> {
    let e = f.edge_count();
    if e == 0 {
        return Err(Error::InvalidArgument(
            "degree-sequence equations need at least one edge".into(),
        ));
    }
    let m = f.vertex_count() as i64;
    let one = BigInt::one();

    let mut f1_const = vec![BigInt::zero(); e + 1];
    let mut f2 = vec![UniPoly::zero(); e + 1];
    for d in f.degrees() {
        f1_const[e - d] += &one;
        f2[e - d] = f2[e - d].add(&UniPoly::one());
    }
    f1_const[e] -= BigInt::from(m - 1);
    let mut f1 = vec![UniPoly::zero(); e + 1];
    f1[0] = UniPoly::new(f1_const);
    f1[e] = f1[e].sub(&UniPoly::one());

    f2[0] = f2[0].sub(&UniPoly::monomial(one.clone(), e));
    f2[e] = f2[e].sub(&UniPoly::constant(BigInt::from(m - 1)));
    Ok((BiPoly::new(f1), BiPoly::new(f2)))
}
