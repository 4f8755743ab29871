use super::{apply_dna_rules, apply_marginal_rule, DnaSet};
use crate::ci::{CiQuery, CiTester, MoralGraphSource};
use crate::error::invalid;
use crate::structure::skeleton_search;
use crate::{Result, VertexSet};

/// Which conditioning-set family drives DNA learning.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DnaMode {
    /// PC skeleton search stopped after conditioning sets of size `k`.
    SmallSets,
    /// Moral-graph comparisons removing at most `k` sink vertices.
    LargeSets,
    /// Independences from a full PC skeleton search; `k` is ignored.
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DnaConfig {
    pub k: usize,
    pub mode: DnaMode,
}

impl DnaConfig {
    pub fn small(k: usize) -> Self {
        DnaConfig {
            k,
            mode: DnaMode::SmallSets,
        }
    }

    pub fn large(k: usize) -> Self {
        DnaConfig {
            k,
            mode: DnaMode::LargeSets,
        }
    }
}

/// Runs the learner `cfg` selects.
pub fn learn_dna<T: CiTester>(tester: &mut T, cfg: DnaConfig) -> Result<DnaSet> {
    match cfg.mode {
        DnaMode::SmallSets => learn_dna_small(tester, cfg.k),
        DnaMode::LargeSets => learn_dna_large(tester, cfg.k),
        DnaMode::General => {
            let skel = skeleton_search(tester, None, None)?;
            learn_dna_general(tester, &skel.omega)
        }
    }
}

/// Extends recorded independences with single-vertex dependence checks.
///
/// For every `(x, y, S)` in `omega` and every `z` outside `{x, y} ∪ S`,
/// queries `x ⫫ y | S ∪ {z}`; a dependent verdict marks `z` as
/// non-ancestral to `x`, `y` and `S`. Marginal independences also mark `x`
/// and `y` as mutually non-ancestral. Inconclusive verdicts add nothing.
pub fn learn_dna_general<T: CiTester + ?Sized>(tester: &mut T, omega: &[CiQuery]) -> Result<DnaSet> {
    let p = tester.p();
    let mut d = DnaSet::new(p);
    for q in omega {
        if q.s.is_empty() {
            apply_marginal_rule(q.u, q.v, &mut d)?;
        }
        let outside = VertexSet::full(p).difference(q.s).without(q.u).without(q.v);
        for z in outside.iter() {
            if tester.test(q.u, q.v, q.s.with(z))?.is_dependent() {
                apply_dna_rules((q.u, q.v, q.s), z, &mut d)?;
            }
        }
    }
    Ok(d)
}

/// DNA from the first `k + 1` levels of the PC skeleton search.
pub fn learn_dna_small<T: CiTester + ?Sized>(tester: &mut T, k: usize) -> Result<DnaSet> {
    let p = tester.p();
    if p < 2 || k + 1 >= p {
        return invalid(format!("level k = {k} must be below p - 1 (p = {p})"));
    }
    let skel = skeleton_search(tester, Some(k), None)?;
    learn_dna_general(tester, &skel.omega)
}

/// DNA from moral graphs over shrinking vertex sets.
///
/// A vertex `u` of the current set `Ṽ` is a sink when the moral graph over
/// `Ṽ`, restricted to `Ṽ \ {u}`, has more edges than the moral graph over
/// `Ṽ \ {u}`: removing `u` un-marries some pair of its parents. Each sink
/// found is recorded as non-ancestral to the rest of `Ṽ` and removed, and
/// the scan restarts. Stops after `k` removals or a scan with no sink.
pub fn learn_dna_large<S: MoralGraphSource + ?Sized>(source: &mut S, k: usize) -> Result<DnaSet> {
    let p = source.vertex_count();
    if p > 0 && k > p - 1 {
        return invalid(format!("level k = {k} exceeds p - 1 = {}", p - 1));
    }
    let mut d = DnaSet::new(p);
    let mut current = VertexSet::full(p);
    while current.len() > p - k {
        let whole = source.moral_graph(current)?;
        let mut sink = None;
        for u in current.iter() {
            let rest = current.without(u);
            if rest.is_empty() {
                continue;
            }
            let restricted = whole.induced(rest);
            let marginal = source.moral_graph(rest)?;
            if restricted.n_edges() > marginal.n_edges() {
                sink = Some(u);
                break;
            }
        }
        let Some(u) = sink else { break };
        for w in current.without(u).iter() {
            d.insert(u, w);
        }
        current.remove(u);
    }
    Ok(d)
}
