//! The convex order on positive roots attached to a reduced word of `w0`.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::root_system::{CartanDatum, CoweightVector, RootVector, Word};

/// A reduced word of `w0` with its root sequence
/// `β_k = s_{i_1} ... s_{i_{k-1}} α_{i_k}`, its coweight sequence
/// `γ_k = -s_{i_1} ... s_{i_k} ω^∨_{i_k}`, and the pairing matrix
/// `C[k][l] = <γ_k, β_l>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexOrder {
    datum: Arc<CartanDatum>,
    word: Word,
    beta: Vec<RootVector>,
    gamma: Vec<CoweightVector>,
    pairing: Vec<Vec<i64>>,
    /// `position[r]` is the index `k` with `β_k` equal to the `r`-th positive root.
    position: Vec<usize>,
}

impl ConvexOrder {
    pub fn new(datum: Arc<CartanDatum>, word: Word) -> Result<Self> {
        datum.check_word(&word)?;
        let n = datum.rank();
        let len = datum.num_positive_roots();
        if word.len() != len {
            return Err(Error::WrongLength { got: word.len(), expected: len });
        }
        if !datum.is_reduced(&word) {
            return Err(Error::NotReduced(word.to_string()));
        }
        let beta = datum.beta_sequence(&word);
        let gamma: Vec<CoweightVector> = (0..len)
            .map(|k| {
                let i = word.0[k];
                datum.apply_word_coweight(&word.0[..=k], &CoweightVector::fundamental(n, i)).neg()
            })
            .collect();
        let pairing: Vec<Vec<i64>> = gamma.iter().map(|g| beta.iter().map(|b| datum.pairing(g, b)).collect()).collect();
        let mut position = vec![usize::MAX; len];
        for (k, b) in beta.iter().enumerate() {
            let r = datum.root_index(b).ok_or_else(|| Error::Verification(format!("β_{} = {b} is not a positive root", k + 1)))?;
            if position[r] != usize::MAX {
                return Err(Error::Verification(format!("root {b} repeated in β-sequence")));
            }
            position[r] = k;
        }
        for (k, row) in pairing.iter().enumerate() {
            if row[k] != 1 {
                return Err(Error::Verification(format!("<γ_{0}, β_{0}> = {1}", k + 1, row[k])));
            }
            if let Some(l) = (k + 1..len).find(|&l| row[l] > 0) {
                return Err(Error::Verification(format!("<γ_{}, β_{}> > 0", k + 1, l + 1)));
            }
        }
        Ok(ConvexOrder { datum, word, beta, gamma, pairing, position })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn beta(&self) -> &[RootVector] {
        &self.beta
    }

    pub fn gamma(&self) -> &[CoweightVector] {
        &self.gamma
    }

    /// `C[k][l] = <γ_k, β_l>`, 0-based.
    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn c(&self, k: usize, l: usize) -> i64 {
        self.pairing[k][l]
    }

    /// Position of a positive root in the β-sequence.
    pub fn position_of(&self, root: &RootVector) -> Option<usize> {
        self.datum.root_index(root).map(|r| self.position[r])
    }

    /// Tab-separated pairing matrix with a header row.
    pub fn pairing_tsv(&self) -> String {
        let mut out = String::from("k");
        for l in 1..=self.len() {
            write!(out, "\tl={l}").unwrap();
        }
        out.push('\n');
        for (k, row) in self.pairing.iter().enumerate() {
            write!(out, "{}", k + 1).unwrap();
            for v in row {
                write!(out, "\t{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SignRule {
    /// `C[k][k] = 1`
    DiagonalOne,
    /// `C[k][l] <= 0` for `k < l`
    AboveNonPositive,
    /// `C[k][l] >= 0` for `k > l`
    BelowNonNegative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignViolation {
    pub k: usize,
    pub l: usize,
    pub value: i64,
    pub rule: SignRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingSignReport {
    pub word: Word,
    pub entries_checked: usize,
    pub violations: Vec<SignViolation>,
}

impl PairingSignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the sign pattern of the pairing matrix: ones on the diagonal,
/// nonpositive above it and nonnegative below it.
pub fn pairing_sign_report(order: &ConvexOrder) -> PairingSignReport {
    let n = order.len();
    let mut violations = Vec::new();
    for k in 0..n {
        for l in 0..n {
            let v = order.c(k, l);
            let rule = match k.cmp(&l) {
                std::cmp::Ordering::Equal if v != 1 => Some(SignRule::DiagonalOne),
                std::cmp::Ordering::Less if v > 0 => Some(SignRule::AboveNonPositive),
                std::cmp::Ordering::Greater if v < 0 => Some(SignRule::BelowNonNegative),
                _ => None,
            };
            if let Some(rule) = rule {
                violations.push(SignViolation { k, l, value: v, rule });
            }
        }
    }
    PairingSignReport { word: order.word.clone(), entries_checked: n * n, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn datum(s: &str) -> Arc<CartanDatum> {
        Arc::new(s.parse().unwrap())
    }

    #[test]
    fn a2_order_212() {
        let o = ConvexOrder::new(datum("A2"), Word::from_labels(&[2, 1, 2])).unwrap();
        let betas: Vec<_> = o.beta().iter().map(|b| b.0.clone()).collect();
        assert_eq!(betas, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        // γ_1 = α2^∨ - ω2^∨ = (-1, 2) - (0, 1)
        assert_eq!(o.gamma()[0], CoweightVector(vec![-1, 1]));
        assert_eq!(o.pairing_matrix(), &[vec![1, 0, -1], vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(o.position_of(&RootVector(vec![1, 0])), Some(2));
    }

    #[test]
    fn rejects_bad_words() {
        let d = datum("A2");
        assert!(matches!(ConvexOrder::new(d.clone(), Word::from_labels(&[1, 2])), Err(Error::WrongLength { .. })));
        assert!(matches!(ConvexOrder::new(d.clone(), Word::from_labels(&[1, 1, 2])), Err(Error::NotReduced(_))));
        assert!(ConvexOrder::new(d, Word::from_labels(&[1, 2, 3])).is_err());
    }

    #[test]
    fn sign_pattern_on_all_reduced_words() {
        for (ty, cap) in [("A1", 10), ("A2", 10), ("A3", 100), ("A4", 1000), ("D4", 3000)] {
            let d = datum(ty);
            for w in d.reduced_words_of_w0(cap).unwrap() {
                let o = ConvexOrder::new(d.clone(), w).unwrap();
                let report = pairing_sign_report(&o);
                assert!(report.passed(), "{ty} {:?}", report.violations);
                let betas: BTreeSet<_> = o.beta().iter().cloned().collect();
                assert_eq!(betas, d.root_set());
            }
        }
    }

    #[test]
    fn printed_middle_clause_fails() {
        // "k <= l implies >= 0" is contradicted by an entry above the diagonal
        let o = ConvexOrder::new(datum("A2"), Word::from_labels(&[2, 1, 2])).unwrap();
        assert!(o.c(0, 2) < 0);
    }

    #[test]
    fn commuting_swap_permutes_betas() {
        let d = datum("A3");
        let w = Word::from_labels(&[1, 3, 2, 1, 3, 2]);
        let mut v = w.clone();
        v.0.swap(0, 1);
        let (ow, ov) = (ConvexOrder::new(d.clone(), w).unwrap(), ConvexOrder::new(d, v).unwrap());
        let mut expected = ow.beta().to_vec();
        expected.swap(0, 1);
        assert_eq!(ov.beta(), expected.as_slice());
    }

    #[test]
    fn tsv_shape() {
        let o = ConvexOrder::new(datum("A2"), Word::from_labels(&[1, 2, 1])).unwrap();
        let tsv = o.pairing_tsv();
        assert_eq!(tsv.lines().count(), 4);
        assert!(tsv.starts_with("k\tl=1\tl=2\tl=3\n"));
    }
}
