use super::sp::{compatible_order, exhaustive_order, finish, greedy_order, SP_EXHAUSTIVE_MAX};
use super::{LearnResult, SpConfig};
use crate::ci::CiTester;
use crate::dna::{layering_from_dna, learn_dna, order_constraining_subset, DnaConfig, DnaMode, DnaSet};
use crate::{Error, Result, VertexSet};

/// Layered sparsest-permutation search.
///
/// Learns DNA with `base`, derives a layering from it and orders each layer
/// in turn by SP with the earlier layers fixed in front: every query's
/// conditioning set contains all earlier-layer vertices, and an ordering of
/// the layer is scored by all edges it induces into the layer, including
/// those from earlier layers. Greedy layer searches start from an ordering
/// compatible with the acyclic part of the DNA set. `base.k` is capped so
/// the learner accepts it on small graphs.
pub fn layered_sp<T: CiTester>(tester: &mut T, base: &DnaConfig, cfg: &SpConfig) -> Result<LearnResult> {
    layered_sp_with_dna(tester, base, cfg).map(|(r, _)| r)
}

/// [`layered_sp`] that also hands back the DNA set it learned.
pub(crate) fn layered_sp_with_dna<T: CiTester>(
    tester: &mut T,
    base: &DnaConfig,
    cfg: &SpConfig,
) -> Result<(LearnResult, DnaSet)> {
    cfg.validate()?;
    let p = tester.p();
    let d = if p < 2 {
        DnaSet::new(p)
    } else {
        let mut c = *base;
        c.k = match c.mode {
            DnaMode::SmallSets => c.k.min(p - 2),
            DnaMode::LargeSets => c.k.min(p - 1),
            DnaMode::General => c.k,
        };
        learn_dna(tester, c)?
    };
    let constraints = order_constraining_subset(&d);
    let layering = layering_from_dna(&d, p)?;

    let mut order = Vec::with_capacity(p);
    let mut earlier = VertexSet::EMPTY;
    for (l, &layer) in layering.layers().iter().enumerate() {
        let vertices = layer.to_vec();
        let part = if cfg.exhaustive_for(vertices.len()) {
            if vertices.len() > SP_EXHAUSTIVE_MAX {
                return Err(Error::Capacity(format!(
                    "layer of {} vertices exceeds the exhaustive SP limit {SP_EXHAUSTIVE_MAX}",
                    vertices.len()
                )));
            }
            exhaustive_order(tester, &vertices, earlier)?
        } else {
            let init = compatible_order(&constraints, &vertices, None);
            let layer_cfg = SpConfig {
                seed: cfg.seed.wrapping_add(l as u64),
                ..*cfg
            };
            greedy_order(tester, &init, earlier, &layer_cfg, Some(&constraints))?
        };
        order.extend(part);
        earlier = earlier.union(layer);
    }
    Ok((finish(tester, order)?, d))
}
