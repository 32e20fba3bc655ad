//! Good / bad verdicts for the equal-parts property of a pattern graph.
//!
//! The pipeline runs on the pattern with isolated vertices removed:
//!
//! 1. no edges: bad, `Λ` is the constant 1;
//! 2. one edge: bad, witness `(3/4, 1/4, 1/2)`;
//! 3. two or more components with an edge: good;
//! 4. regular with at least three vertices: good;
//! 5. star with at least three vertices: good;
//! 6. otherwise eliminate `v` from the degree-sequence system, count the
//!    roots of the resultant `R(u)` in `(0, 1)` and `(1, ∞)`, and if both
//!    counts are positive try to exclude every candidate pair `(u_i, v_j)`
//!    with exact interval enclosures.
//!
//! Good verdicts from step 6 are certificates: root counts come from Sturm
//! chains and pair exclusions from rational interval arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{classify, strip_isolated, SmallGraph, StructureKind, MAX_PATTERN_VERTICES};
use crate::lambda::{
    check_alg_system, degree_le1_check, degree_seq_equations, AffinePair, WitnessTriple,
};
use crate::poly::{
    interval_eval, rat_int, resultant_v, BiPoly, Bound, Interval, RootInterval, RootIsolator,
    UniPoly,
};
use crate::report::{ser_rational, LIBRARY_VERSION, SCHEMA_VERSION};

/// Box widths tried when excluding candidate pairs: 2^-16, 2^-32, 2^-64, 2^-128.
pub const REFINEMENT_SCHEDULE: [u32; 4] = [16, 32, 64, 128];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GoodMethod {
    FastPathRegular,
    FastPathStar,
    FastPathDisconnected,
    ResultantNoRoots,
    ResultantPairExclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    Good {
        method: GoodMethod,
    },
    Bad {
        witness: WitnessTriple,
        pair: AffinePair,
    },
    Inconclusive {
        roots_in_01: Option<usize>,
        roots_in_1inf: Option<usize>,
        unresolved_pairs: usize,
    },
}

impl Verdict {
    pub fn is_good(&self) -> bool {
        matches!(self, Verdict::Good { .. })
    }

    pub fn is_bad(&self) -> bool {
        matches!(self, Verdict::Bad { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Good { .. } => "Good",
            Verdict::Bad { .. } => "Bad",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn method_label(&self) -> String {
        match self {
            Verdict::Good { method } => format!("{method:?}"),
            Verdict::Bad { .. } => "Witness".into(),
            Verdict::Inconclusive { .. } => "None".into(),
        }
    }

    /// Process exit code: 0 good, 1 bad, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Good { .. } => 0,
            Verdict::Bad { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }
    }
}

/// Outcome of trying to separate one candidate pair from the common zero set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub u_index: usize,
    pub v_index: usize,
    pub u_box: Interval,
    pub v_box: Interval,
    /// `k` such that both boxes have width at most 2^-k.
    pub width_exponent: u32,
    /// `"f1"` or `"f2"` when an enclosure excluded zero.
    pub excluded_by: Option<String>,
    #[serde(serialize_with = "ser_rational")]
    pub margin: BigRational,
}

/// Resultant of the degree-sequence system and its root counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantAnalysis {
    pub f1: BiPoly,
    pub f2: BiPoly,
    /// Primitive part with positive leading coefficient.
    pub resultant: UniPoly,
    pub roots_01: usize,
    pub roots_1inf: usize,
    /// Sturm data for the resultant with the roots at 0 and 1 removed.
    pub isolator: RootIsolator,
}

/// Evidence accumulated along the pipeline.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub structure: Option<String>,
    pub resultant_coeffs: Vec<String>,
    pub roots_01: Option<usize>,
    pub roots_1inf: Option<usize>,
    pub boxes_01: Vec<RootInterval>,
    pub boxes_1inf: Vec<RootInterval>,
    pub pairs: Vec<PairRecord>,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub library_version: &'static str,
    /// Input pattern in graph6.
    pub graph: String,
    /// Pattern after removing isolated vertices, in graph6.
    pub reduced_graph: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(flatten)]
    pub evidence: Evidence,
}

fn g6(f: &SmallGraph) -> String {
    f.to_graph6()
        .unwrap_or_else(|_| format!("<{} vertices>", f.vertex_count()))
}

/// Builds the degree-sequence system and its resultant, and counts roots.
pub fn analyze_resultant(f: &SmallGraph) -> Result<Option<ResultantAnalysis>> {
    let (f1, f2) = degree_seq_equations(f)?;
    if f1 == f2 {
        return Ok(None);
    }
    let r = resultant_v(&f1, &f2)?;
    if r.is_zero() {
        return Ok(None);
    }
    let resultant = r.primitive_part();
    let (zero, one) = (Bound::int(0), Bound::int(1));
    let isolator = RootIsolator::avoiding(&resultant, &[rat_int(0), rat_int(1)])?;
    Ok(Some(ResultantAnalysis {
        roots_01: isolator.count(&zero, &one),
        roots_1inf: isolator.count(&one, &Bound::PosInf),
        f1,
        f2,
        resultant,
        isolator,
    }))
}

fn bad(f: &SmallGraph, witness: WitnessTriple) -> Verdict {
    let pair = degree_le1_check(f, &witness).expect("bad witness must give an affine Λ");
    Verdict::Bad { witness, pair }
}

/// Certifies `f`. See the module docs for the pipeline.
pub fn certify(f: &SmallGraph) -> Result<Certificate> {
    if f.vertex_count() > MAX_PATTERN_VERTICES {
        return Err(Error::TooManyVertices {
            got: f.vertex_count(),
            limit: MAX_PATTERN_VERTICES,
        });
    }
    let reduced = strip_isolated(f);
    let class = classify(&reduced);
    let mut evidence = Evidence {
        structure: Some(format!("{:?}", class.kind)),
        ..Evidence::default()
    };
    let verdict = match class.kind {
        StructureKind::Empty | StructureKind::SingleEdge => bad(f, WitnessTriple::single_edge()),
        StructureKind::DisconnectedNontrivial => Verdict::Good {
            method: GoodMethod::FastPathDisconnected,
        },
        StructureKind::Regular(_) => Verdict::Good {
            method: GoodMethod::FastPathRegular,
        },
        StructureKind::Star => Verdict::Good {
            method: GoodMethod::FastPathStar,
        },
        StructureKind::General => resultant_path(f, &reduced, &mut evidence)?,
    };
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        graph: g6(f),
        reduced_graph: g6(&reduced),
        verdict,
        evidence,
    })
}

/// The resultant stage alone, without the fast paths. Used to cross-check them.
pub fn certify_by_resultant(f: &SmallGraph) -> Result<(Verdict, Evidence)> {
    let reduced = strip_isolated(f);
    let mut evidence = Evidence::default();
    if reduced.edge_count() == 0 {
        return Err(Error::InvalidArgument(
            "the resultant method needs at least one edge".into(),
        ));
    }
    let verdict = resultant_path(f, &reduced, &mut evidence)?;
    Ok((verdict, evidence))
}

fn resultant_path(
    original: &SmallGraph,
    reduced: &SmallGraph,
    evidence: &mut Evidence,
) -> Result<Verdict> {
    let Some(analysis) = analyze_resultant(reduced)? else {
        evidence.diagnostic =
            Some("degenerate degree-sequence system (f1 = f2 or zero resultant)".into());
        return Ok(Verdict::Inconclusive {
            roots_in_01: None,
            roots_in_1inf: None,
            unresolved_pairs: 0,
        });
    };
    evidence.resultant_coeffs = analysis.resultant.to_strings();
    evidence.roots_01 = Some(analysis.roots_01);
    evidence.roots_1inf = Some(analysis.roots_1inf);
    if analysis.roots_01 == 0 || analysis.roots_1inf == 0 {
        return Ok(Verdict::Good {
            method: GoodMethod::ResultantNoRoots,
        });
    }

    let (zero, one) = (Bound::int(0), Bound::int(1));
    let iso = &analysis.isolator;
    let mut u_boxes = iso.isolate(&zero, &one);
    let mut v_boxes = iso.isolate(&one, &Bound::PosInf);

    let mut pending: Vec<(usize, usize)> = (0..u_boxes.len())
        .flat_map(|i| (0..v_boxes.len()).map(move |j| (i, j)))
        .collect();
    let mut records = Vec::new();
    let mut last_unresolved = Vec::new();
    for &k in &REFINEMENT_SCHEDULE {
        let width = BigRational::new(BigInt::one(), BigInt::one() << k);
        u_boxes = u_boxes.iter().map(|b| iso.refine(b, &width)).collect();
        v_boxes = v_boxes.iter().map(|b| iso.refine(b, &width)).collect();
        let mut still = Vec::new();
        last_unresolved.clear();
        for &(i, j) in &pending {
            let record = exclude_pair(&analysis, i, j, &u_boxes[i], &v_boxes[j], k);
            if record.excluded_by.is_some() {
                records.push(record);
            } else {
                still.push((i, j));
                last_unresolved.push(record);
            }
        }
        pending = still;
        if pending.is_empty() {
            break;
        }
    }
    records.extend(last_unresolved);
    evidence.boxes_01 = u_boxes.clone();
    evidence.boxes_1inf = v_boxes.clone();
    evidence.pairs = records;

    if pending.is_empty() {
        return Ok(Verdict::Good {
            method: GoodMethod::ResultantPairExclusion,
        });
    }

    // Surviving pairs do not prove badness; look for an exact witness at the
    // box midpoints before giving up.
    for &(i, j) in &pending {
        let candidate = WitnessTriple::new(
            u_boxes[i].midpoint(),
            v_boxes[j].midpoint(),
            BigRational::one(),
        )?
        .normalized();
        if !candidate.all_equal() && check_alg_system(original, &candidate).is_some() {
            return Ok(bad(original, candidate));
        }
    }
    evidence.diagnostic = Some(format!(
        "{} candidate pair(s) could not be excluded at width 2^-{}",
        pending.len(),
        REFINEMENT_SCHEDULE[REFINEMENT_SCHEDULE.len() - 1]
    ));
    Ok(Verdict::Inconclusive {
        roots_in_01: Some(analysis.roots_01),
        roots_in_1inf: Some(analysis.roots_1inf),
        unresolved_pairs: pending.len(),
    })
}

fn exclude_pair(
    analysis: &ResultantAnalysis,
    i: usize,
    j: usize,
    u: &RootInterval,
    v: &RootInterval,
    k: u32,
) -> PairRecord {
    let (ub, vb) = (Interval::from(u), Interval::from(v));
    let e1 = interval_eval(&analysis.f1, &ub, &vb);
    let e2 = interval_eval(&analysis.f2, &ub, &vb);
    let (excluded_by, margin) = if !e1.contains_zero() {
        (Some("f1".to_string()), e1.margin())
    } else if !e2.contains_zero() {
        (Some("f2".to_string()), e2.margin())
    } else {
        (None, BigRational::from_integer(BigInt::from(0)))
    };
    PairRecord {
        u_index: i,
        v_index: j,
        u_box: ub,
        v_box: vb,
        width_exponent: k,
        excluded_by,
        margin,
    }
}

/// Certificate for K_{a,b} together with the resultant root counts, which
/// are computed even when a fast path decides the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteReport {
    pub a: usize,
    pub b: usize,
    pub certificate: Certificate,
    pub roots_01: Option<usize>,
    pub roots_1inf: Option<usize>,
    /// Which of `(0,1)` and `(1,∞)` contain no root of `R(u)`.
    pub root_free: Vec<String>,
}

pub fn certify_bipartite(a: usize, b: usize) -> Result<BipartiteReport> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(
            "both sides of K_{a,b} need at least one vertex".into(),
        ));
    }
    if a + b > MAX_PATTERN_VERTICES {
        return Err(Error::TooManyVertices {
            got: a + b,
            limit: MAX_PATTERN_VERTICES,
        });
    }
    let f = SmallGraph::complete_bipartite(a, b);
    let certificate = certify(&f)?;
    let (roots_01, roots_1inf) = match (
        certificate.evidence.roots_01,
        certificate.evidence.roots_1inf,
    ) {
        (Some(a), Some(b)) => (Some(a), Some(b)),
        _ => match analyze_resultant(&f)? {
            Some(an) => (Some(an.roots_01), Some(an.roots_1inf)),
            None => (None, None),
        },
    };
    let mut root_free = Vec::new();
    if roots_01 == Some(0) {
        root_free.push("(0,1)".to_string());
    }
    if roots_1inf == Some(0) {
        root_free.push("(1,inf)".to_string());
    }
    Ok(BipartiteReport {
        a,
        b,
        certificate,
        roots_01,
        roots_1inf,
        root_free,
    })
}
