//! Kostant partitions and the partial order on them defined by prefix sums
//! of the pairing matrix of a convex order.

mod hasse;
mod ledger;
mod mackey;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::convex_order::ConvexOrder;
use crate::error::{Error, Result};
use crate::quiver_words::commutation_class;
use crate::root_system::{join, CartanDatum, RootVector, Word};

pub use hasse::{cover_relation, hasse_dot};
pub use ledger::{HomFormulaDirection, OrderDirection, OrientationLedger, ResLargeSide};
pub use mackey::{mackey_dominance_check, MackeyReport, MackeyRow, DEFAULT_DECOMPOSITION_CAP};

/// Multiplicities `n_1, ..., n_N` of the roots `β_1, ..., β_N` of some
/// convex order, together with the dimension vector `ν = Σ n_k β_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantPartition {
    mults: Vec<u32>,
    nu: RootVector,
}

impl KostantPartition {
    pub fn new(order: &ConvexOrder, mults: Vec<u32>) -> Result<Self> {
        if mults.len() != order.len() {
            return Err(Error::WrongLength { got: mults.len(), expected: order.len() });
        }
        let nu = weight_of(order, &mults);
        Ok(KostantPartition { mults, nu })
    }

    /// The partition whose parts are the given positive roots.
    pub fn from_parts(order: &ConvexOrder, parts: &[RootVector]) -> Result<Self> {
        let mut mults = vec![0; order.len()];
        for p in parts {
            let k = order.position_of(p).ok_or_else(|| Error::NotPositiveRoot(p.0.clone()))?;
            mults[k] += 1;
        }
        Self::new(order, mults)
    }

    pub fn empty(order: &ConvexOrder) -> Self {
        KostantPartition { mults: vec![0; order.len()], nu: RootVector::zero(order.datum().rank()) }
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn nu(&self) -> &RootVector {
        &self.nu
    }

    /// Number of parts.
    pub fn size(&self) -> u32 {
        self.mults.iter().sum()
    }

    /// Parts as `(root, multiplicity)`, in β-order, zero multiplicities skipped.
    pub fn parts<'a>(&'a self, order: &'a ConvexOrder) -> impl Iterator<Item = (&'a RootVector, u32)> + 'a {
        self.mults.iter().zip(order.beta()).filter(|(m, _)| **m > 0).map(|(&m, b)| (b, m))
    }

    /// The multiplicity function on positive roots, independent of the order's indexing.
    pub fn root_multiset(&self, order: &ConvexOrder) -> BTreeMap<RootVector, u32> {
        self.parts(order).map(|(b, m)| (b.clone(), m)).collect()
    }

    /// Multiplicities listed in the fixed order of [`CartanDatum::positive_roots`].
    pub fn canonical_mults(&self, order: &ConvexOrder) -> Vec<u32> {
        order.datum().positive_roots().iter().map(|r| self.mults[order.position_of(r).unwrap()]).collect()
    }

    /// Parts rendered as `(1,1)+(1,0)`, `0` for the empty partition.
    pub fn parts_string(&self, order: &ConvexOrder) -> String {
        let parts: Vec<String> =
            self.parts(order).flat_map(|(b, m)| std::iter::repeat_n(b.to_string(), m as usize)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<i64> = self.mults.iter().map(|&x| x as i64).collect();
        write!(f, "({})", join(&m))
    }
}

fn weight_of(order: &ConvexOrder, mults: &[u32]) -> RootVector {
    let mut nu = RootVector::zero(order.datum().rank());
    for (&m, b) in mults.iter().zip(order.beta()) {
        if m > 0 {
            nu = nu.add(&b.scale(m as i64));
        }
    }
    nu
}

/// Parses a dimension vector given as comma-separated naturals in vertex order.
pub fn parse_nu(datum: &CartanDatum, s: &str) -> Result<RootVector> {
    let coords: Vec<i64> = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|p| p.trim().parse::<u32>().map(i64::from).map_err(|_| Error::Parse(format!("bad dimension vector {s:?}"))))
        .collect::<Result<_>>()?;
    if coords.len() != datum.rank() {
        return Err(Error::Parse(format!("dimension vector {s:?} needs {} entries", datum.rank())));
    }
    Ok(RootVector(coords))
}

/// Every nonzero dimension vector with total size at most `max`, by size then
/// descending coordinates.
pub fn dimension_vectors_up_to(rank: usize, max: u32) -> Vec<RootVector> {
    let mut out = Vec::new();
    let mut v = vec![0i64; rank];
    fn rec(v: &mut Vec<i64>, idx: usize, left: i64, out: &mut Vec<RootVector>) {
        if idx == v.len() {
            if v.iter().any(|&x| x > 0) {
                out.push(RootVector(v.clone()));
            }
            return;
        }
        for x in 0..=left {
            v[idx] = x;
            rec(v, idx + 1, left - x, out);
        }
        v[idx] = 0;
    }
    rec(&mut v, 0, max as i64, &mut out);
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    out
}

/// All Kostant partitions of `nu` for the given order, lexicographically
/// ascending in the multiplicity vector.
pub fn enumerate_kp(order: &ConvexOrder, nu: &RootVector) -> Vec<KostantPartition> {
    let n = order.len();
    let mut out = Vec::new();
    if nu.0.iter().any(|&c| c < 0) || nu.0.len() != order.datum().rank() {
        return out;
    }
    let mut mults = vec![0u32; n];
    fn rec(order: &ConvexOrder, k: usize, rem: &mut RootVector, mults: &mut Vec<u32>, out: &mut Vec<KostantPartition>) {
        if k == mults.len() {
            if rem.is_zero() {
                out.push(KostantPartition { mults: mults.clone(), nu: RootVector::zero(rem.0.len()) });
            }
            return;
        }
        let b = &order.beta()[k];
        let max = b.0.iter().zip(&rem.0).filter(|(bc, _)| **bc > 0).map(|(bc, rc)| rc / bc).min().unwrap_or(0);
        for m in 0..=max {
            mults[k] = m as u32;
            if m > 0 {
                *rem = rem.sub(b);
            }
            rec(order, k + 1, rem, mults, out);
        }
        *rem = rem.add(&b.scale(max));
        mults[k] = 0;
    }
    let mut rem = nu.clone();
    rec(order, 0, &mut rem, &mut mults, &mut out);
    for kp in &mut out {
        kp.nu = nu.clone();
    }
    out
}

/// The number of Kostant partitions of `nu`.
pub fn kpf(order: &ConvexOrder, nu: &RootVector) -> usize {
    enumerate_kp(order, nu).len()
}

/// `Σ_{t<=k} C[k][t] n_t` for every `k`.
pub fn prefix_pairings(order: &ConvexOrder, kp: &KostantPartition) -> Vec<i64> {
    (0..order.len())
        .map(|k| (0..=k).map(|t| order.c(k, t) * kp.mults[t] as i64).sum())
        .collect()
}

/// The prefix-sum order with the inequality exactly as written:
/// `λ ⪯ μ` iff `Σ_{t<=k} C[k][t] λ_t <= Σ_{t<=k} C[k][t] μ_t` for all `k`.
pub fn kp_leq_printed(lambda: &KostantPartition, mu: &KostantPartition, order: &ConvexOrder) -> Result<bool> {
    if lambda.nu != mu.nu {
        return Err(Error::MismatchedNu(lambda.nu.0.clone(), mu.nu.0.clone()));
    }
    let (a, b) = (prefix_pairings(order, lambda), prefix_pairings(order, mu));
    Ok(a.iter().zip(&b).all(|(x, y)| x <= y))
}

/// The partition order in the direction fixed by the ledger.
pub fn kp_leq(
    lambda: &KostantPartition,
    mu: &KostantPartition,
    order: &ConvexOrder,
    ledger: &OrientationLedger,
) -> Result<bool> {
    match ledger.order_direction {
        OrderDirection::AsPrinted => kp_leq_printed(lambda, mu, order),
        OrderDirection::Reversed => kp_leq_printed(mu, lambda, order),
    }
}

/// `rel[a][b]` = `kps[a] ⪯ kps[b]` under the ledger.
pub fn kp_relation(kps: &[KostantPartition], order: &ConvexOrder, ledger: &OrientationLedger) -> Result<Vec<Vec<bool>>> {
    kps.iter().map(|a| kps.iter().map(|b| kp_leq(a, b, order, ledger)).collect()).collect()
}

/// Whether a relation matrix is reflexive, antisymmetric and transitive.
pub fn is_partial_order(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    (0..n).all(|a| rel[a][a])
        && (0..n).all(|a| (0..n).all(|b| a == b || !(rel[a][b] && rel[b][a])))
        && (0..n).all(|a| (0..n).all(|b| !rel[a][b] || (0..n).all(|c| !rel[b][c] || rel[a][c])))
}

/// The printed-direction order on `KP(nu)` as a set of pairs of multiplicity
/// functions on the positive roots.
fn relation_as_root_pairs(order: &ConvexOrder, nu: &RootVector) -> Result<BTreeSet<(Vec<u32>, Vec<u32>)>> {
    let kps = enumerate_kp(order, nu);
    let mut out = BTreeSet::new();
    for a in &kps {
        for b in &kps {
            if kp_leq_printed(a, b, order)? {
                out.insert((a.canonical_mults(order), b.canonical_mults(order)));
            }
        }
    }
    Ok(out)
}

/// Whether every word in the commutation class of `w` induces the same
/// order on `KP(nu)`, comparing partitions as multiplicity functions on roots.
pub fn order_invariant_on_class(
    datum: std::sync::Arc<CartanDatum>,
    nu: &RootVector,
    w: &Word,
    cap: usize,
) -> Result<bool> {
    let class = commutation_class(&datum, w, cap)?;
    let mut reference: Option<BTreeSet<(Vec<u32>, Vec<u32>)>> = None;
    for word in class {
        let order = ConvexOrder::new(datum.clone(), word)?;
        let rel = relation_as_root_pairs(&order, nu)?;
        match &reference {
            None => reference = Some(rel),
            Some(r) if *r != rel => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}
