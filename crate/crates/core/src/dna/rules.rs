use super::DnaSet;
use crate::error::invalid;
use crate::{Result, VertexSet};

/// Records the DNA implied by `u ⫫ v | s` together with `u ⫫̸ v | s ∪ {z}`:
/// the witness `z` is non-ancestral to `u`, to `v` and to every member of `s`.
pub fn apply_dna_rules(
    (u, v, s): (usize, usize, VertexSet),
    witness: usize,
    d: &mut DnaSet,
) -> Result<()> {
    let p = d.p();
    if u >= p || v >= p || witness >= p || !s.is_subset(VertexSet::full(p)) {
        return invalid(format!("DNA rule arguments out of range for p = {p}"));
    }
    if u == v || s.contains(u) || s.contains(v) {
        return invalid(format!("malformed independence ({u}, {v} | {s:?})"));
    }
    if witness == u || witness == v || s.contains(witness) {
        return invalid(format!("witness {witness} must lie outside {{{u}, {v}}} ∪ {s:?}"));
    }
    d.insert(witness, u);
    d.insert(witness, v);
    for w in s.iter() {
        d.insert(witness, w);
    }
    Ok(())
}

/// A marginal independence `u ⫫ v` makes each endpoint non-ancestral to the
/// other.
pub fn apply_marginal_rule(u: usize, v: usize, d: &mut DnaSet) -> Result<()> {
    if u >= d.p() || v >= d.p() || u == v {
        return invalid(format!("invalid marginal pair ({u}, {v})"));
    }
    d.insert(u, v);
    d.insert(v, u);
    Ok(())
}
