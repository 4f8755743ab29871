use super::{cpdag_of, Cpdag, Dag};
use crate::dna::DnaSet;
use crate::{Error, Result, VertexSet};

/// Enumeration stops with a capacity error past this many members.
pub const MEC_MAX_MEMBERS: usize = 1_000_000;

const MAX_P: usize = 12;
const MAX_UNDIRECTED: usize = 20;

/// Every DAG in the Markov equivalence class of `g`.
///
/// Orients the undirected edges of `cpdag_of(g)` one at a time, discarding a
/// partial orientation as soon as it closes a directed cycle or creates an
/// unshielded collider. This yields exactly the orientations that survive
/// the acyclicity and v-structure filters over all `2^k` assignments.
/// Members come out in lexicographic order of their orientation vectors
/// (low → high index first), so the result is deterministic.
pub fn enumerate_mec(g: &Dag) -> Result<Vec<Dag>> {
    enumerate_cpdag(&cpdag_of(g))
}

pub(crate) fn enumerate_cpdag(c: &Cpdag) -> Result<Vec<Dag>> {
    let und = c.undirected_edges();
    if c.p() > MAX_P && und.len() > MAX_UNDIRECTED {
        return Err(Error::Capacity(format!(
            "MEC enumeration limited to p <= {MAX_P} or <= {MAX_UNDIRECTED} undirected edges \
             (p = {}, {} undirected)",
            c.p(),
            und.len()
        )));
    }
    let mut state = Search {
        c,
        und: &und,
        parents: (0..c.p()).map(|v| c.parents(v)).collect(),
        forward: Vec::with_capacity(und.len()),
        out: Vec::new(),
    };
    state.recurse()?;
    Ok(state.out)
}

struct Search<'a> {
    c: &'a Cpdag,
    und: &'a [(usize, usize)],
    parents: Vec<VertexSet>,
    forward: Vec<bool>,
    out: Vec<Dag>,
}

impl Search<'_> {
    fn recurse(&mut self) -> Result<()> {
        let i = self.forward.len();
        if i == self.und.len() {
            if self.out.len() >= MEC_MAX_MEMBERS {
                return Err(Error::Capacity(format!(
                    "Markov equivalence class has more than {MEC_MAX_MEMBERS} members"
                )));
            }
            self.out.push(self.c.orientation(self.und, &self.forward));
            return Ok(());
        }
        let (a, b) = self.und[i];
        for (forward, from, to) in [(true, a, b), (false, b, a)] {
            if self.admissible(from, to) {
                self.parents[to].insert(from);
                self.forward.push(forward);
                self.recurse()?;
                self.forward.pop();
                self.parents[to].remove(from);
            }
        }
        Ok(())
    }

    /// Can `from -> to` be added without a cycle or a new unshielded collider?
    fn admissible(&self, from: usize, to: usize) -> bool {
        // a new collider at `to` with an already-oriented, non-adjacent parent
        if self.parents[to]
            .iter()
            .any(|other| !self.c.adjacent(other, from))
        {
            return false;
        }
        // cycle iff `to` already reaches `from`; walk parents back from `from`
        let mut seen = VertexSet::singleton(from);
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            if x == to {
                return false;
            }
            for w in self.parents[x].difference(seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        true
    }
}

/// Definite non-ancestral pairs of `g` by brute force over its Markov
/// equivalence class: `(u, v)` is included iff `u` is an ancestor of `v` in
/// no member.
pub fn dna_ground_truth(g: &Dag) -> Result<DnaSet> {
    let members = enumerate_mec(g)?;
    let p = g.p();
    let mut possible_anc = vec![VertexSet::EMPTY; p];
    for m in &members {
        for (v, slot) in possible_anc.iter_mut().enumerate() {
            *slot = slot.union(m.ancestors(v));
        }
    }
    let mut d = DnaSet::new(p);
    for v in 0..p {
        for u in VertexSet::full(p).difference(possible_anc[v]).iter() {
            d.insert(u, v);
        }
    }
    Ok(d)
}
