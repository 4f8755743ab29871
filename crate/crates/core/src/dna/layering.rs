use serde::{Deserialize, Serialize};

use super::DnaSet;
use crate::error::invalid;
use crate::graph::Dag;
use crate::{Error, Result, VertexSet};

/// Ordered partition of the vertices into layers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Layering {
    layers: Vec<VertexSet>,
}

impl Layering {
    /// Rejects empty layers and anything that is not a partition of `0..p`.
    pub fn new(p: usize, layers: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for l in &layers {
            if l.is_empty() {
                return invalid("empty layer");
            }
            if !l.is_disjoint(seen) {
                return invalid("layers overlap");
            }
            seen = seen.union(*l);
        }
        if seen != VertexSet::full(p) {
            return invalid(format!("layers do not cover 0..{p}"));
        }
        Ok(Layering { layers })
    }

    pub fn layers(&self) -> &[VertexSet] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(v))
    }

    /// No edge of `g` points into an earlier layer.
    pub fn is_valid_for(&self, g: &Dag) -> bool {
        g.edges()
            .iter()
            .all(|&(a, b)| self.layer_of(a) <= self.layer_of(b))
    }

    /// Fraction of the edges of `g` joining distinct layers; 1.0 for an
    /// edgeless graph.
    pub fn interlayer_fraction(&self, g: &Dag) -> f64 {
        let edges = g.edges();
        if edges.is_empty() {
            return 1.0;
        }
        let crossing = edges
            .iter()
            .filter(|&&(a, b)| self.layer_of(a) != self.layer_of(b))
            .count();
        crossing as f64 / edges.len() as f64
    }
}

/// `{"layers": [[...], ...]}`, 1-indexed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayeringJson {
    pub layers: Vec<Vec<usize>>,
}

impl From<&Layering> for LayeringJson {
    fn from(l: &Layering) -> Self {
        LayeringJson {
            layers: l
                .layers
                .iter()
                .map(|s| s.iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}

impl TryFrom<LayeringJson> for Layering {
    type Error = Error;

    fn try_from(j: LayeringJson) -> Result<Layering> {
        let p: usize = j.layers.iter().map(|l| l.len()).sum();
        let mut layers = Vec::new();
        for l in &j.layers {
            if l.iter().any(|&v| v == 0 || v > p) {
                return invalid("layer vertex out of range");
            }
            layers.push(l.iter().map(|v| v - 1).collect());
        }
        Layering::new(p, layers)
    }
}

/// Maximal subset of `d` with no DNA cycles.
///
/// Pairs are admitted greedily in lexicographic order and skipped when they
/// would close a cycle, so of a mutual pair `(u, v), (v, u)` with `u < v`
/// normally `(u, v)` survives.
pub fn order_constraining_subset(d: &DnaSet) -> DnaSet {
    let p = d.p();
    let mut kept = DnaSet::new(p);
    for (u, v) in d.pairs() {
        // (u, v) adds the step u → v; it closes a cycle iff v already reaches u
        if !reaches(&kept, v, u) {
            kept.insert(u, v);
        }
    }
    kept
}

fn reaches(d: &DnaSet, from: usize, to: usize) -> bool {
    let mut seen = VertexSet::singleton(from);
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for w in d.non_descendants_of(x).difference(seen).iter() {
            seen.insert(w);
            stack.push(w);
        }
    }
    false
}

/// Layering from DNA by repeatedly peeling off the smallest source or sink
/// set of the remaining vertices.
///
/// `S` is a source set when every remaining vertex outside `S` is
/// non-ancestral to every member of `S`, and a sink set when every member of
/// `S` is non-ancestral to every remaining vertex outside it. Candidates are
/// tried by increasing size; at equal size source sets win, then the
/// lexicographically smallest set. The full remainder always qualifies, so
/// the search terminates. Exponential in the worst case.
pub fn layering_from_dna(d: &DnaSet, p: usize) -> Result<Layering> {
    if d.p() != p {
        return invalid(format!("DNA set over {} vertices, expected {p}", d.p()));
    }
    let mut remaining = VertexSet::full(p);
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    while !remaining.is_empty() {
        let (set, is_source) = smallest_peel(d, remaining);
        if is_source {
            sources.push(set);
        } else {
            sinks.push(set);
        }
        remaining = remaining.difference(set);
    }
    sources.extend(sinks.into_iter().rev());
    Layering::new(p, sources)
}

fn smallest_peel(d: &DnaSet, remaining: VertexSet) -> (VertexSet, bool) {
    for size in 1..=remaining.len() {
        let mut sink = None;
        for s in remaining.subsets_of_size(size) {
            let outside = remaining.difference(s);
            if s.iter().all(|x| outside.is_subset(d.non_ancestors_of(x))) {
                return (s, true);
            }
            if sink.is_none() && s.iter().all(|x| outside.is_subset(d.non_descendants_of(x))) {
                sink = Some(s);
            }
        }
        if let Some(s) = sink {
            return (s, false);
        }
    }
    unreachable!("the full remainder is always a source set")
}
