use super::Cpdag;

/// Applies Meek's orientation rules R1–R3 until no rule fires.
///
/// * R1: `a -> x - y`, `a` and `y` non-adjacent: orient `x -> y`.
/// * R2: `x -> b -> y` and `x - y`: orient `x -> y`.
/// * R3: `x - c -> y`, `x - d -> y`, `c` and `d` non-adjacent, `x - y`:
///   orient `x -> y`.
///
/// Only undirected edges are ever oriented.
pub fn meek_closure(c: &mut Cpdag) {
    loop {
        let mut changed = false;
        for (a, b) in c.undirected_edges() {
            if !c.has_undirected(a, b) {
                continue;
            }
            if fires(c, a, b) {
                c.orient(a, b);
                changed = true;
            } else if fires(c, b, a) {
                c.orient(b, a);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Whether some rule orients the undirected edge `x - y` as `x -> y`.
fn fires(c: &Cpdag, x: usize, y: usize) -> bool {
    // R1
    if c.parents(x).iter().any(|a| a != y && !c.adjacent(a, y)) {
        return true;
    }
    // R2
    if !c.children(x).intersection(c.parents(y)).is_empty() {
        return true;
    }
    // R3
    let mids = c.undirected_neighbors(x).intersection(c.parents(y)).to_vec();
    for (i, &m1) in mids.iter().enumerate() {
        for &m2 in &mids[i + 1..] {
            if !c.adjacent(m1, m2) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_one_propagates_along_chain() {
        // 0 -> 1 - 2 - 3
        let mut c = Cpdag::new(4, &[(0, 1)], &[(1, 2), (2, 3)]).unwrap();
        meek_closure(&mut c);
        assert_eq!(c.directed_edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn rule_two_avoids_cycle() {
        // 0 -> 1 -> 2, 0 - 2
        let mut c = Cpdag::new(3, &[(0, 1), (1, 2)], &[(0, 2)]).unwrap();
        meek_closure(&mut c);
        assert!(c.has_directed(0, 2));
    }

    #[test]
    fn rule_three_kite() {
        // 0 - 1 -> 3, 0 - 2 -> 3, 0 - 3, 1 and 2 non-adjacent
        let mut c = Cpdag::new(4, &[(1, 3), (2, 3)], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        meek_closure(&mut c);
        assert!(c.has_directed(0, 3));
        assert!(c.has_undirected(0, 1));
        assert!(c.has_undirected(0, 2));
    }
}
