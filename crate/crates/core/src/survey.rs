//! Certify every isomorphism class of graphs on `m` vertices.

use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{certify, Certificate};
use crate::enumerate::nonisomorphic_graphs;
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, SmallGraph};

/// Structural category of the input graph as given (isolated vertices kept).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Category {
    NoEdges,
    OneEdge,
    Disconnected,
    Regular,
    Star,
    Path,
    Other,
}

pub fn categorize(f: &SmallGraph) -> Category {
    let m = f.vertex_count();
    let e = f.edge_count();
    let degrees = f.degrees();
    if e == 0 {
        Category::NoEdges
    } else if e == 1 {
        Category::OneEdge
    } else if f.components().len() > 1 {
        Category::Disconnected
    } else if degrees.iter().all(|&d| d == degrees[0]) {
        Category::Regular
    } else if e == m - 1 && degrees.contains(&(m - 1)) {
        Category::Star
    } else if e == m - 1 && degrees.iter().all(|&d| d <= 2) {
        Category::Path
    } else {
        Category::Other
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub graph6: String,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub category: Category,
    pub certificate: Certificate,
}

/// Certifies all classes on `m` vertices (2 <= m <= 8), in parallel.
pub fn survey(m: usize) -> Result<Vec<SurveyRow>> {
    if !(2..=8).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "survey needs 2 <= m <= 8, got {m}"
        )));
    }
    survey_graphs(&nonisomorphic_graphs(m)?)
}

/// Certifies graphs read from a graph6 list (one per line).
pub fn survey_from_graph6_list(text: &str) -> Result<Vec<SurveyRow>> {
    let graphs = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect::<Result<Vec<_>>>()?;
    survey_graphs(&graphs)
}

pub fn survey_graphs(graphs: &[SmallGraph]) -> Result<Vec<SurveyRow>> {
    graphs
        .par_iter()
        .map(|g| {
            let mut degrees = g.degrees();
            degrees.sort_unstable_by(|a, b| b.cmp(a));
            Ok(SurveyRow {
                graph6: g.to_graph6()?,
                edges: g.edge_count(),
                degrees,
                category: categorize(g),
                certificate: certify(g)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories() {
        assert_eq!(categorize(&SmallGraph::path(4)), Category::Path);
        assert_eq!(categorize(&SmallGraph::star(3)), Category::Star);
        assert_eq!(
            categorize(&SmallGraph::complete(3).with_isolated(1)),
            Category::Disconnected
        );
        assert_eq!(categorize(&SmallGraph::cycle(4)), Category::Regular);
        assert_eq!(categorize(&SmallGraph::empty(2)), Category::NoEdges);
    }

    #[test]
    fn rejects_out_of_range_sizes() {
        assert!(survey(1).is_err());
        assert!(survey(9).is_err());
    }
}
