use super::skeleton::skeleton_search;
use super::{LearnResult, LearnedGraph};
use crate::ci::CiTester;
use crate::dna::DnaSet;
use crate::error::invalid;
use crate::graph::{meek_closure, Cpdag};
use crate::Result;

/// PC: skeleton search, v-structures where the middle vertex is missing from
/// the separating set, then Meek's rules. Unresolved tests count as
/// dependences.
pub fn pc<T: CiTester + ?Sized>(tester: &mut T) -> Result<LearnResult> {
    run(tester, None)
}

/// PC with conditioning candidates pruned by the DNA set `d`.
pub fn pc_with_dna<T: CiTester + ?Sized>(tester: &mut T, d: &DnaSet) -> Result<LearnResult> {
    if d.p() != tester.p() {
        return invalid(format!(
            "DNA set over {} vertices, tester over {}",
            d.p(),
            tester.p()
        ));
    }
    run(tester, Some(d))
}

fn run<T: CiTester + ?Sized>(tester: &mut T, d: Option<&DnaSet>) -> Result<LearnResult> {
    let p = tester.p();
    let skel = skeleton_search(tester, None, d)?;
    let mut c = Cpdag::from_skeleton(&skel.adj);
    for a in 0..p {
        for b in a + 1..p {
            if skel.adj.has_edge(a, b) {
                continue;
            }
            let sep = skel.sepsets[&(a, b)];
            let common = skel.adj.neighbors(a).intersection(skel.adj.neighbors(b));
            for m in common.difference(sep).iter() {
                // a collider clashing with an earlier orientation is skipped
                if !c.has_directed(m, a) && !c.has_directed(m, b) {
                    c.orient(a, m);
                    c.orient(b, m);
                }
            }
        }
    }
    meek_closure(&mut c);
    Ok(LearnResult {
        graph: LearnedGraph::Cpdag(c),
        ordering: None,
        counts: tester.ledger().counts(),
    })
}
