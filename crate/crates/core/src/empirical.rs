//! Seeded random hosts, two-type graphon evaluation, and count experiments.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`. Stream 0
//! is used by the standalone generators and trial `t` of an experiment uses
//! stream `t + 1`, so reports do not depend on thread count or scheduling.
//! An edge with probability `p` is present when a fresh `u64` draw is below
//! `ceil(p * 2^64)`, one draw per vertex pair in lexicographic order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::count::{count_constrained, count_symmetrized, PartitionSpec};
use crate::error::{Error, Result};
use crate::graph::{subset_profile, SmallGraph};
use crate::lambda::{binomial, level_sums, WitnessTriple};
use crate::poly::{rat, QPoly};
use crate::report::{ser_rational, ser_rationals, to_f64, LIBRARY_VERSION, SCHEMA_VERSION};

/// Step graphon: `u` on `(1/2, 1]^2`, `v` on `[0, 1/2]^2`, `s` across.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoTypeGraphon {
    #[serde(serialize_with = "ser_rational")]
    pub u: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub v: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub s: BigRational,
}

impl TwoTypeGraphon {
    pub fn new(u: BigRational, v: BigRational, s: BigRational) -> Result<Self> {
        for (name, x) in [("u", &u), ("v", &v), ("s", &s)] {
            check_probability(name, x)?;
        }
        Ok(TwoTypeGraphon { u, v, s })
    }

    pub fn from_triple(w: &WitnessTriple) -> Result<Self> {
        Self::new(w.u.clone(), w.v.clone(), w.s.clone())
    }

    pub fn constant(p: BigRational) -> Result<Self> {
        Self::new(p.clone(), p.clone(), p)
    }

    pub fn is_constant(&self) -> bool {
        self.u == self.v && self.v == self.s
    }

    /// `W(x, y)`; both coordinates must be off the boundary `1/2`.
    pub fn value(&self, x: &BigRational, y: &BigRational) -> Result<BigRational> {
        let (hx, hy) = (is_high(x)?, is_high(y)?);
        Ok(match (hx, hy) {
            (true, true) => self.u.clone(),
            (false, false) => self.v.clone(),
            _ => self.s.clone(),
        })
    }

    /// Integral of `W` over the unit square.
    pub fn density(&self) -> BigRational {
        (&self.u + &self.v + &self.s + &self.s) / BigRational::from_integer(4.into())
    }

    fn triple(&self) -> WitnessTriple {
        WitnessTriple {
            u: self.u.clone(),
            v: self.v.clone(),
            s: self.s.clone(),
        }
    }
}

fn check_probability(name: &str, x: &BigRational) -> Result<()> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "{name} = {x} is outside [0, 1]"
        )));
    }
    Ok(())
}

fn is_high(x: &BigRational) -> Result<bool> {
    let half = rat(1, 2);
    if x.is_negative() || x > &BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "coordinate {x} is outside [0, 1]"
        )));
    }
    if x == &half {
        return Err(Error::Boundary(0));
    }
    Ok(x > &half)
}

/// Symmetrized `Ψ` of `F` and `W` at `x`: the average over all relabellings
/// of `Π_{ij ∈ E(F)} W(x_i, x_j)`. Only the number `k` of coordinates above
/// `1/2` matters and the value is `L_k / C(m, k)`.
pub fn two_type_psi(f: &SmallGraph, w: &TwoTypeGraphon, x: &[BigRational]) -> Result<BigRational> {
    let m = f.vertex_count();
    if x.len() != m {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, the pattern has {m} vertices",
            x.len()
        )));
    }
    let mut k = 0;
    for (i, xi) in x.iter().enumerate() {
        match is_high(xi) {
            Ok(h) => k += h as usize,
            Err(Error::Boundary(_)) => return Err(Error::Boundary(i)),
            Err(e) => return Err(e),
        }
    }
    let levels = level_sums(&subset_profile(f)?, &w.triple());
    Ok(&levels[k] / BigRational::from_integer(binomial(m, k)))
}

/// Measures `(low, high)` of one part inside `[0, 1/2]` and `(1/2, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Allocation {
    #[serde(serialize_with = "ser_rational")]
    pub low: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub high: BigRational,
}

impl Allocation {
    pub fn new(low: BigRational, high: BigRational) -> Self {
        Allocation { low, high }
    }

    pub fn measure(&self) -> BigRational {
        &self.low + &self.high
    }
}

/// Integral of the symmetrized `Ψ` over `A_1 × ... × A_m`, where part `i`
/// occupies `allocation[i]` of each half. The integrand is constant on
/// configurations with `k` high coordinates, so the integral is
/// `Σ_k L_k / C(m, k) · e_k`, with `e_k` the coefficient of `t^k` in
/// `Π_i (low_i + high_i t)`.
pub fn two_type_partition_integral(
    f: &SmallGraph,
    w: &TwoTypeGraphon,
    allocation: &[Allocation],
) -> Result<BigRational> {
    let m = f.vertex_count();
    if allocation.len() != m {
        return Err(Error::InvalidArgument(format!(
            "{} parts allocated, the pattern has {m} vertices",
            allocation.len()
        )));
    }
    let half = rat(1, 2);
    let (mut low, mut high) = (BigRational::zero(), BigRational::zero());
    for a in allocation {
        if a.low.is_negative() || a.high.is_negative() {
            return Err(Error::InvalidArgument(
                "allocations must be nonnegative".into(),
            ));
        }
        low += &a.low;
        high += &a.high;
    }
    if low > half || high > half {
        return Err(Error::InvalidArgument(format!(
            "parts overfill a half: low total {low}, high total {high}"
        )));
    }
    let product = allocation
        .iter()
        .fold(QPoly::constant(BigRational::one()), |acc, a| {
            acc.mul(&QPoly::new(vec![a.low.clone(), a.high.clone()]))
        });
    let levels = level_sums(&subset_profile(f)?, &w.triple());
    Ok(levels
        .iter()
        .enumerate()
        .map(|(k, l)| l / BigRational::from_integer(binomial(m, k)) * product.coeff(k))
        .sum())
}

/// `ceil(p * 2^64)`; a `u64` draw below this has probability exactly `p`.
fn threshold(p: &BigRational) -> u128 {
    let scaled = p.numer() * (BigInt::one() << 64u32);
    let t = Integer::div_ceil(&scaled, p.denom());
    t.try_into().expect("probability in [0, 1]")
}

fn sample_two_type(n: usize, w: &TwoTypeGraphon, rng: &mut ChaCha8Rng) -> SmallGraph {
    let (tu, tv, ts) = (threshold(&w.u), threshold(&w.v), threshold(&w.s));
    let low = n / 2;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let t = match (i >= low, j >= low) {
                (true, true) => tu,
                (false, false) => tv,
                _ => ts,
            };
            if (rng.next_u64() as u128) < t {
                edges.push((i, j));
            }
        }
    }
    SmallGraph::from_edges(n, &edges).expect("sampled edges are simple")
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `G(n, p)`. Shares the sampler with [`gen_two_type`].
pub fn gen_gnp(n: usize, p: &BigRational, seed: u64) -> Result<SmallGraph> {
    gen_two_type(n, &TwoTypeGraphon::constant(p.clone())?, seed)
}

/// Two-type random graph: the first `n / 2` vertices are low, the rest high.
pub fn gen_two_type(n: usize, w: &TwoTypeGraphon, seed: u64) -> Result<SmallGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(sample_two_type(n, w, &mut stream_rng(seed, 0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Generator {
    Gnp {
        n: usize,
        #[serde(serialize_with = "ser_rational")]
        p: BigRational,
    },
    TwoType {
        n: usize,
        graphon: TwoTypeGraphon,
    },
}

impl Generator {
    pub fn n(&self) -> usize {
        match self {
            Generator::Gnp { n, .. } | Generator::TwoType { n, .. } => *n,
        }
    }

    fn graphon(&self) -> Result<TwoTypeGraphon> {
        match self {
            Generator::Gnp { p, .. } => TwoTypeGraphon::constant(p.clone()),
            Generator::TwoType { graphon, .. } => Ok(graphon.clone()),
        }
    }

    /// Edge density `p` used for the expected count.
    pub fn density(&self) -> BigRational {
        match self {
            Generator::Gnp { p, .. } => p.clone(),
            Generator::TwoType { graphon, .. } => graphon.density(),
        }
    }
}

fn ser_display<S: Serializer, T: std::fmt::Display>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_rational<S: Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub edges: usize,
    #[serde(serialize_with = "ser_display")]
    pub count: u128,
    #[serde(serialize_with = "ser_rational")]
    pub symmetrized: BigRational,
    /// `|N - p^e(F) Π|U_i|| / (p^e(F) Π|U_i|)`; absent when the expectation is 0.
    #[serde(serialize_with = "ser_opt_rational")]
    pub relative_deviation: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub symmetrized_relative_deviation: Option<BigRational>,
    /// `|N - p^e(F) Π|U_i|| / n^m`.
    #[serde(serialize_with = "ser_rational")]
    pub normalized_deviation: BigRational,
    pub relative_deviation_f64: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub library_version: &'static str,
    pub pattern: String,
    pub generator: Generator,
    #[serde(serialize_with = "ser_rationals")]
    pub alphas: Vec<BigRational>,
    pub part_sizes: Vec<usize>,
    pub seed: u64,
    #[serde(serialize_with = "ser_rational")]
    pub expected: BigRational,
    pub trials: Vec<TrialRecord>,
    /// Mean over trials with a defined relative deviation.
    #[serde(serialize_with = "ser_opt_rational")]
    pub mean_relative_deviation: Option<BigRational>,
    pub mean_relative_deviation_f64: Option<f64>,
    pub max_relative_deviation_f64: Option<f64>,
    #[serde(serialize_with = "ser_rational")]
    pub mean_normalized_deviation: BigRational,
}

fn relative(dev: &BigRational, expected: &BigRational) -> Option<BigRational> {
    (!expected.is_zero()).then(|| dev / expected)
}

/// Samples a host and disjoint random parts of sizes `floor(alpha_i n)` per
/// trial, and compares the constrained and symmetrized counts of `f` with
/// `p^e(F) Π|U_i|`.
pub fn qr_experiment(
    f: &SmallGraph,
    generator: &Generator,
    alphas: &[BigRational],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let m = f.vertex_count();
    let n = generator.n();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if alphas.len() != m {
        return Err(Error::Partition(format!(
            "{} fractions for a pattern on {m} vertices",
            alphas.len()
        )));
    }
    if alphas.iter().any(|a| a.is_negative()) {
        return Err(Error::Partition("fractions must be nonnegative".into()));
    }
    if alphas.iter().sum::<BigRational>() > BigRational::one() {
        return Err(Error::Partition("fractions sum to more than 1".into()));
    }
    let graphon = generator.graphon()?;
    let sizes = PartitionSpec::sizes_from_fractions(n, alphas);
    let total: usize = sizes.iter().sum();
    if total > n {
        return Err(Error::Partition(format!(
            "parts need {total} of {n} vertices"
        )));
    }
    let p = generator.density();
    let product: BigInt = sizes.iter().map(|&s| BigInt::from(s)).product();
    let expected = num_traits::pow(p, f.edge_count()) * BigRational::from_integer(product);
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(n), m));

    let records = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, t as u64 + 1);
            let host = sample_two_type(n, &graphon, &mut rng);
            let mut vertices: Vec<usize> = (0..n).collect();
            let (chosen, _) = vertices.partial_shuffle(&mut rng, total);
            let mut parts = Vec::with_capacity(m);
            let mut start = 0;
            for &s in &sizes {
                let mut part = chosen[start..start + s].to_vec();
                part.sort_unstable();
                parts.push(part);
                start += s;
            }
            let spec = PartitionSpec::one_per_part(parts);
            let count = count_constrained(f, &host, &spec)?;
            let symmetrized = count_symmetrized(f, &host, &spec)?;
            let dev = (BigRational::from_integer(count.into()) - &expected).abs();
            let sdev = (&symmetrized - &expected).abs();
            let relative_deviation = relative(&dev, &expected);
            Ok(TrialRecord {
                trial: t,
                edges: host.edge_count(),
                count,
                symmetrized,
                relative_deviation_f64: relative_deviation.as_ref().map(to_f64),
                relative_deviation,
                symmetrized_relative_deviation: relative(&sdev, &expected),
                normalized_deviation: dev / &scale,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let defined: Vec<&BigRational> = records
        .iter()
        .filter_map(|r| r.relative_deviation.as_ref())
        .collect();
    let mean_relative_deviation = (!defined.is_empty()).then(|| {
        defined.iter().copied().sum::<BigRational>()
            / BigRational::from_integer(defined.len().into())
    });
    let max_relative_deviation_f64 = defined.iter().map(|r| to_f64(r)).reduce(f64::max);
    let mean_normalized_deviation = if records.is_empty() {
        BigRational::zero()
    } else {
        records
            .iter()
            .map(|r| &r.normalized_deviation)
            .sum::<BigRational>()
            / BigRational::from_integer(records.len().into())
    };
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        pattern: f.to_graph6()?,
        generator: generator.clone(),
        alphas: alphas.to_vec(),
        part_sizes: sizes,
        seed,
        expected,
        trials: records,
        mean_relative_deviation_f64: mean_relative_deviation.as_ref().map(to_f64),
        mean_relative_deviation,
        max_relative_deviation_f64,
        mean_normalized_deviation,
    })
}
