use std::fmt::Write as _;

use super::{enumerate_kp, kp_relation, OrientationLedger};
use crate::convex_order::ConvexOrder;
use crate::error::{Error, Result};
use crate::root_system::RootVector;

/// Cover pairs `(a, b)` of a partial order given as a relation matrix:
/// `a < b` with nothing strictly between.
pub fn cover_relation(rel: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = rel.len();
    let lt = |a: usize, b: usize| a != b && rel[a][b];
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Hasse diagram of `KP(nu)` in DOT format. Edges point from the smaller
/// partition to the one covering it; nodes are labelled by multiplicity
/// vectors in β-order.
pub fn hasse_dot(order: &ConvexOrder, nu: &RootVector, ledger: &OrientationLedger, cap: usize) -> Result<String> {
    let kps = enumerate_kp(order, nu);
    if kps.len() > cap {
        return Err(Error::CapExceeded { what: "Hasse diagram nodes", cap });
    }
    let rel = kp_relation(&kps, order, ledger)?;
    let mut out = String::new();
    writeln!(out, "digraph kostant_partitions {{").unwrap();
    writeln!(out, "  // type {} word {} nu {}", order.datum().label(), order.word(), nu).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (idx, kp) in kps.iter().enumerate() {
        writeln!(out, "  n{idx} [label=\"{kp}\"];").unwrap();
    }
    for (a, b) in cover_relation(&rel) {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::{kp_leq, OrderDirection};
    use crate::root_system::Word;
    use std::sync::Arc;

    fn order(ty: &str, w: &[usize]) -> ConvexOrder {
        ConvexOrder::new(Arc::new(ty.parse().unwrap()), Word::from_labels(w)).unwrap()
    }

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    #[test]
    fn a2_single_edge() {
        let o = order("A2", &[2, 1, 2]);
        let dot = hasse_dot(&o, &RootVector(vec![1, 1]), &OrientationLedger::PRINTED, 100).unwrap();
        assert_eq!(edges(&dot), 1);
        assert!(dot.contains("n0 [label=\"(0,1,0)\"]"));
        assert!(dot.contains("n0 -> n1;"));
    }

    #[test]
    fn simple_root_is_a_single_node() {
        let o = order("A2", &[2, 1, 2]);
        let dot = hasse_dot(&o, &RootVector(vec![0, 1]), &OrientationLedger::PRINTED, 100).unwrap();
        assert_eq!(edges(&dot), 0);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 1);
    }

    #[test]
    fn a3_covers_generate_the_order() {
        let o = order("A3", &[1, 2, 1, 3, 2, 1]);
        let ledger = OrientationLedger { order_direction: OrderDirection::Reversed, ..OrientationLedger::PRINTED };
        let nu = RootVector(vec![1, 1, 1]);
        let kps = enumerate_kp(&o, &nu);
        assert_eq!(kps.len(), 4);
        let rel = kp_relation(&kps, &o, &ledger).unwrap();
        let covers = cover_relation(&rel);
        // transitive closure of the covers recovers the strict order
        let mut closure = vec![vec![false; 4]; 4];
        for &(a, b) in &covers {
            closure[a][b] = true;
        }
        for k in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    if closure[a][k] && closure[k][b] {
                        closure[a][b] = true;
                    }
                }
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(closure[a][b], a != b && kp_leq(&kps[a], &kps[b], &o, &ledger).unwrap());
            }
        }
        let dot = hasse_dot(&o, &nu, &ledger, 100).unwrap();
        assert_eq!(edges(&dot), covers.len());
        assert!(hasse_dot(&o, &nu, &ledger, 3).is_err());
    }
}
