//! Combinatorial shadow of the Mackey filtration argument: which Kostant
//! partitions `n` can appear as restriction weights of a product of
//! semicuspidal modules of weights `m_t β_t`, and whether each of them is
//! dominated by `m`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{enumerate_kp, kp_leq, KostantPartition, OrientationLedger, ResLargeSide};
use crate::convex_order::ConvexOrder;
use crate::error::{Error, Result};
use crate::root_system::RootVector;

pub const DEFAULT_DECOMPOSITION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyRow {
    pub n: KostantPartition,
    /// `achievable[k]`: the prefix weight `Σ_{t<=k} n_t β_t` is a possible `Σ x_t`.
    pub achievable: Vec<bool>,
    pub kp_leq: bool,
}

impl MackeyRow {
    pub fn is_achievable(&self) -> bool {
        self.achievable.iter().all(|&a| a)
    }

    pub fn is_violation(&self) -> bool {
        self.is_achievable() && !self.kp_leq
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyReport {
    pub m: KostantPartition,
    pub res_large_side: ResLargeSide,
    /// Number of decompositions `m_t β_t = x_t + y_t` enumerated.
    pub decompositions: usize,
    pub rows: Vec<MackeyRow>,
}

impl MackeyReport {
    pub fn violations(&self) -> impl Iterator<Item = &MackeyRow> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn achievable(&self) -> impl Iterator<Item = &MackeyRow> {
        self.rows.iter().filter(|r| r.is_achievable())
    }

    /// Columns: `m`, `n`, per-prefix achievability flags, the order verdict.
    pub fn to_tsv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("m\tn\tachievable_per_k\tkp_leq\n");
        }
        for r in &self.rows {
            let flags: String = r.achievable.iter().map(|&a| if a { '1' } else { '0' }).collect();
            writeln!(out, "{}\t{}\t{}\t{}", self.m, r.n, flags, r.kp_leq).unwrap();
        }
        out
    }
}

/// Whether `v` is a nonnegative integer combination of `gens`.
fn in_nat_span(v: &RootVector, gens: &[&RootVector]) -> bool {
    if v.is_zero() {
        return true;
    }
    let Some((first, rest)) = gens.split_first() else {
        return false;
    };
    let mut cur = v.clone();
    loop {
        if in_nat_span(&cur, rest) {
            return true;
        }
        cur = cur.sub(first);
        if cur.0.iter().any(|&c| c < 0) {
            return false;
        }
    }
}

/// All vectors `0 <= x <= bound` coordinatewise.
fn boxed_vectors(bound: &RootVector) -> Vec<RootVector> {
    let mut out = vec![RootVector::zero(bound.0.len())];
    for (i, &b) in bound.0.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=b).map(move |c| {
                    let mut w = v.clone();
                    w.0[i] = c;
                    w
                })
            })
            .collect();
    }
    out
}

/// For every `n` in `KP(ν(m))`, decides whether each prefix weight of `n`
/// is a sum `Σ_t x_t` over decompositions `m_t β_t = x_t + y_t` obeying the
/// semicuspidal span constraint selected by the ledger, and whether
/// `n ⪯ m` holds.
pub fn mackey_dominance_check(
    m: &KostantPartition,
    order: &ConvexOrder,
    ledger: &OrientationLedger,
    cap: usize,
) -> Result<MackeyReport> {
    let len = order.len();
    let beta = order.beta();
    let mut sums: BTreeSet<RootVector> = BTreeSet::from([RootVector::zero(order.datum().rank())]);
    let mut decompositions: usize = 1;
    for t in 0..len {
        let mt = m.mults()[t];
        if mt == 0 {
            continue;
        }
        let (low, high): (Vec<&RootVector>, Vec<&RootVector>) = (beta[..=t].iter().collect(), beta[t..].iter().collect());
        let (x_gens, y_gens) = match ledger.res_large_side {
            ResLargeSide::SecondFactor => (&low, &high),
            ResLargeSide::FirstFactor => (&high, &low),
        };
        let total = beta[t].scale(mt as i64);
        let choices: Vec<RootVector> = boxed_vectors(&total)
            .into_iter()
            .filter(|x| in_nat_span(x, x_gens) && in_nat_span(&total.sub(x), y_gens))
            .collect();
        decompositions = decompositions
            .checked_mul(choices.len())
            .filter(|&d| d <= cap)
            .ok_or(Error::CapExceeded { what: "Mackey decompositions", cap })?;
        sums = sums.iter().flat_map(|s| choices.iter().map(move |x| s.add(x))).collect();
    }
    let rows = enumerate_kp(order, m.nu())
        .into_iter()
        .map(|n| {
            let mut prefix = RootVector::zero(order.datum().rank());
            let achievable = (0..len)
                .map(|k| {
                    prefix = prefix.add(&beta[k].scale(n.mults()[k] as i64));
                    sums.contains(&prefix)
                })
                .collect();
            let leq = kp_leq(&n, m, order, ledger)?;
            Ok(MackeyRow { n, achievable, kp_leq: leq })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MackeyReport { m: m.clone(), res_large_side: ledger.res_large_side, decompositions, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::OrderDirection;
    use crate::root_system::Word;
    use std::sync::Arc;

    fn order(ty: &str, w: &[usize]) -> ConvexOrder {
        ConvexOrder::new(Arc::new(ty.parse().unwrap()), Word::from_labels(w)).unwrap()
    }

    const CALIBRATED: OrientationLedger = OrientationLedger {
        order_direction: OrderDirection::Reversed,
        ..OrientationLedger::PRINTED
    };

    #[test]
    fn span_membership() {
        let a = RootVector(vec![1, 0]);
        let b = RootVector(vec![1, 1]);
        assert!(in_nat_span(&RootVector(vec![3, 1]), &[&a, &b]));
        assert!(!in_nat_span(&RootVector(vec![0, 1]), &[&a, &b]));
        assert!(in_nat_span(&RootVector(vec![0, 0]), &[]));
    }

    #[test]
    fn a2_dense_partition_splits() {
        let o = order("A2", &[2, 1, 2]);
        let m = KostantPartition::new(&o, vec![0, 1, 0]).unwrap();
        let report = mackey_dominance_check(&m, &o, &CALIBRATED, DEFAULT_DECOMPOSITION_CAP).unwrap();
        // x_2 ∈ {0, α2, α1+α2}
        assert_eq!(report.decompositions, 3);
        let achievable: Vec<_> = report.achievable().map(|r| r.n.mults().to_vec()).collect();
        assert_eq!(achievable, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(report.passed());
        let printed = mackey_dominance_check(&m, &o, &OrientationLedger::PRINTED, 100).unwrap();
        assert_eq!(printed.violations().count(), 1);
    }

    #[test]
    fn simple_part_only_achieves_itself() {
        let o = order("A3", &[1, 2, 1, 3, 2, 1]);
        for k in 0..o.len() {
            if o.beta()[k].simple_index().is_none() {
                continue;
            }
            let mut mults = vec![0; o.len()];
            mults[k] = 1;
            let m = KostantPartition::new(&o, mults).unwrap();
            let report = mackey_dominance_check(&m, &o, &CALIBRATED, 100).unwrap();
            let achievable: Vec<_> = report.achievable().map(|r| r.n.clone()).collect();
            assert_eq!(achievable, vec![m]);
        }
    }

    #[test]
    fn highest_root_refinements_in_a3() {
        let o = order("A3", &[1, 2, 1, 3, 2, 1]);
        let m = KostantPartition::from_parts(&o, &[RootVector(vec![1, 1, 1])]).unwrap();
        let report = mackey_dominance_check(&m, &o, &CALIBRATED, 1000).unwrap();
        assert!(report.achievable().count() > 1);
        assert!(report.passed());
        assert!(report.to_tsv(true).starts_with("m\tn\tachievable_per_k\tkp_leq\n"));
    }

    #[test]
    fn cap_is_enforced() {
        let o = order("A2", &[2, 1, 2]);
        let m = KostantPartition::new(&o, vec![0, 2, 0]).unwrap();
        assert!(matches!(mackey_dominance_check(&m, &o, &CALIBRATED, 2), Err(Error::CapExceeded { .. })));
    }
}
