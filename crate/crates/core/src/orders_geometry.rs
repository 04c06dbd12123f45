//! Brute-force comparison of the combinatorial data attached to a convex
//! order with the representation theory of an adapted quiver: the Hom
//! formula, the degeneration order on orbits, and the calibration of the
//! orientation ledger.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kostant::{
    enumerate_kp, kp_leq, mackey_dominance_check, HomFormulaDirection, KostantPartition, OrderDirection,
    OrientationLedger, ResLargeSide,
};
use crate::quiver_rep::RepCatalog;
use crate::root_system::RootVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingelReport {
    pub quiver: String,
    pub word: String,
    /// `brute[k][l] = dim Hom(M(β_k), M(β_l))`
    pub brute: Vec<Vec<usize>>,
    /// `max(C, 0)`
    pub predicted: Vec<Vec<usize>>,
    pub as_printed: bool,
    pub transposed: bool,
}

impl RingelReport {
    /// The unique matching direction.
    pub fn direction(&self) -> Option<HomFormulaDirection> {
        match (self.as_printed, self.transposed) {
            (true, false) => Some(HomFormulaDirection::AsPrinted),
            (false, true) => Some(HomFormulaDirection::Transposed),
            _ => None,
        }
    }

    pub fn entries(&self) -> usize {
        self.brute.len() * self.brute.len()
    }

    /// One line per entry: `k l hom max(C[k][l],0) max(C[l][k],0)`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tl\thom\tpredicted_as_printed\tpredicted_transposed\n");
        let n = self.brute.len();
        for k in 0..n {
            for l in 0..n {
                writeln!(out, "{}\t{}\t{}\t{}\t{}", k + 1, l + 1, self.brute[k][l], self.predicted[k][l], self.predicted[l][k])
                    .unwrap();
            }
        }
        out
    }
}

/// Compares the brute-force Hom table of the catalog with `max(C, 0)` and
/// its transpose. Fails if neither matches.
pub fn ringel_check<F: Field>(catalog: &RepCatalog<F>) -> Result<RingelReport> {
    let order = catalog.order();
    let n = order.len();
    let brute = catalog.hom_matrix().to_vec();
    let predicted: Vec<Vec<usize>> = (0..n).map(|k| (0..n).map(|l| order.c(k, l).max(0) as usize).collect()).collect();
    let as_printed = (0..n).all(|k| (0..n).all(|l| brute[k][l] == predicted[k][l]));
    let transposed = (0..n).all(|k| (0..n).all(|l| brute[l][k] == predicted[k][l]));
    let report = RingelReport {
        quiver: catalog.quiver().to_string(),
        word: order.word().to_string(),
        brute,
        predicted,
        as_printed,
        transposed,
    };
    if !as_printed && !transposed {
        return Err(Error::Verification(format!(
            "Hom table of {} with order {} matches max(C,0) in neither direction\n{}",
            report.quiver,
            report.word,
            report.to_tsv()
        )));
    }
    Ok(report)
}

fn check_same_nu(lambda: &KostantPartition, mu: &KostantPartition) -> Result<()> {
    if lambda.nu() != mu.nu() {
        return Err(Error::MismatchedNu(lambda.nu().0.clone(), mu.nu().0.clone()));
    }
    Ok(())
}

/// Pointwise `>=` of Hom profiles: the degeneration test.
fn profile_geq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Whether the orbit of `M(λ)` lies in the closure of the orbit of `M(μ)`:
/// `dim Hom(M(λ), X) >= dim Hom(M(μ), X)` for every indecomposable `X`.
pub fn closure_leq<F: Field>(catalog: &RepCatalog<F>, lambda: &KostantPartition, mu: &KostantPartition) -> Result<bool> {
    check_same_nu(lambda, mu)?;
    let a = catalog.hom_profile(&catalog.rep_of_kp(lambda)?)?;
    let b = catalog.hom_profile(&catalog.rep_of_kp(mu)?)?;
    Ok(profile_geq(&a, &b))
}

/// `rel[a][b] = closure_leq(kps[a], kps[b])`, computing each representation's
/// Hom profile once.
pub fn closure_relation<F: Field>(catalog: &RepCatalog<F>, kps: &[KostantPartition]) -> Result<Vec<Vec<bool>>> {
    if let Some(first) = kps.first() {
        for k in kps {
            check_same_nu(first, k)?;
        }
    }
    let profiles = kps
        .iter()
        .map(|k| catalog.hom_profile(&catalog.rep_of_kp(k)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(profiles.iter().map(|a| profiles.iter().map(|b| profile_geq(a, b)).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaumannReport {
    pub nu: RootVector,
    pub partitions: usize,
    /// `(λ, μ, kp_leq, closure_leq)` for every pair where the two disagree.
    pub mismatches: Vec<(KostantPartition, KostantPartition, bool, bool)>,
}

impl BaumannReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `kp_leq` under `ledger` with `closure_leq` on all pairs of `KP(ν)`.
pub fn baumann_report<F: Field>(catalog: &RepCatalog<F>, nu: &RootVector, ledger: &OrientationLedger) -> Result<BaumannReport> {
    let order = catalog.order();
    let kps = enumerate_kp(order, nu);
    let closure = closure_relation(catalog, &kps)?;
    let mut mismatches = Vec::new();
    for (a, la) in kps.iter().enumerate() {
        for (b, lb) in kps.iter().enumerate() {
            let comb = kp_leq(la, lb, order, ledger)?;
            if comb != closure[a][b] {
                mismatches.push((la.clone(), lb.clone(), comb, closure[a][b]));
            }
        }
    }
    Ok(BaumannReport { nu: nu.clone(), partitions: kps.len(), mismatches })
}

pub fn baumann_check<F: Field>(catalog: &RepCatalog<F>, nu: &RootVector, ledger: &OrientationLedger) -> Result<bool> {
    Ok(baumann_report(catalog, nu, ledger)?.passed())
}

/// One line of calibration evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceRow {
    pub quiver: String,
    pub word: String,
    pub check: &'static str,
    pub candidate: String,
    pub nu: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Calibration {
    pub ledger: OrientationLedger,
    pub evidence: Vec<EvidenceRow>,
    /// Settings for which every candidate passed, resolved by keeping the
    /// printed value.
    pub ties: Vec<&'static str>,
    /// Whether some restriction side leaves no Mackey violations under the
    /// calibrated order. When none does, the ledger is only consistent with
    /// the geometric checks.
    pub mackey_consistent: bool,
}

impl Calibration {
    pub fn evidence_tsv(&self) -> String {
        let mut out = String::from("quiver\tword\tcheck\tcandidate\tnu\tpassed\tdetail\n");
        for r in &self.evidence {
            writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}", r.quiver, r.word, r.check, r.candidate, r.nu, r.passed, r.detail).unwrap();
        }
        out
    }
}

/// A catalog together with the dimension vectors to test on it.
pub struct CalibrationInput<'a, F: Field> {
    pub catalog: &'a RepCatalog<F>,
    pub nus: Vec<RootVector>,
}

fn pick<T: Copy + PartialEq + std::fmt::Display>(
    name: &'static str,
    candidates: &[T],
    printed: T,
    passes: &[bool],
    ties: &mut Vec<&'static str>,
    evidence: &[EvidenceRow],
) -> Result<T> {
    let ok: Vec<T> = candidates.iter().zip(passes).filter(|(_, &p)| p).map(|(&c, _)| c).collect();
    match ok.len() {
        0 => {
            let table = Calibration {
                ledger: OrientationLedger::PRINTED,
                evidence: evidence.to_vec(),
                ties: Vec::new(),
                mackey_consistent: false,
            };
            Err(Error::NoConsistentLedger(format!("no value of {name} fits the evidence\n{}", table.evidence_tsv())))
        }
        1 => Ok(ok[0]),
        _ => {
            ties.push(name);
            Ok(if ok.contains(&printed) { printed } else { ok[0] })
        }
    }
}

/// Chooses the ledger: the Hom direction from the Ringel check, the order
/// direction making `kp_leq` agree with `closure_leq`, and the restriction
/// side leaving no Mackey violations under that order (or, if there is none,
/// under the opposite order). Ties keep the printed value. Fails when the
/// geometric checks admit no direction.
///
/// The evidence also records the Mackey check under the other order
/// direction, so that an inconsistency can be traced.
pub fn calibrate<F: Field>(inputs: &[CalibrationInput<'_, F>], mackey_cap: usize) -> Result<Calibration> {
    if inputs.is_empty() || inputs.iter().all(|i| i.nus.is_empty()) {
        return Err(Error::InsufficientData("calibration needs at least one test dimension vector".into()));
    }
    let mut evidence = Vec::new();
    let mut ties = Vec::new();

    let hom_candidates = [HomFormulaDirection::AsPrinted, HomFormulaDirection::Transposed];
    let mut hom_pass = [true, true];
    for input in inputs {
        let report = ringel_check(input.catalog)?;
        for (idx, (&cand, ok)) in hom_candidates.iter().zip([report.as_printed, report.transposed]).enumerate() {
            hom_pass[idx] &= ok;
            evidence.push(EvidenceRow {
                quiver: report.quiver.clone(),
                word: report.word.clone(),
                check: "ringel",
                candidate: cand.to_string(),
                nu: "-".into(),
                passed: ok,
                detail: format!("{} entries", report.entries()),
            });
        }
    }
    let hom_formula_direction = pick(
        "hom_formula_direction",
        &hom_candidates,
        OrientationLedger::PRINTED.hom_formula_direction,
        &hom_pass,
        &mut ties,
        &evidence,
    )?;

    let order_candidates = [OrderDirection::AsPrinted, OrderDirection::Reversed];
    let mut order_pass = [true, true];
    for input in inputs {
        let cat = input.catalog;
        for nu in &input.nus {
            for (idx, &cand) in order_candidates.iter().enumerate() {
                let ledger = OrientationLedger { order_direction: cand, hom_formula_direction, ..OrientationLedger::PRINTED };
                let report = baumann_report(cat, nu, &ledger)?;
                order_pass[idx] &= report.passed();
                evidence.push(EvidenceRow {
                    quiver: cat.quiver().to_string(),
                    word: cat.order().word().to_string(),
                    check: "closure-order",
                    candidate: cand.to_string(),
                    nu: nu.to_string(),
                    passed: report.passed(),
                    detail: format!("{} partitions, {} disagreeing pairs", report.partitions, report.mismatches.len()),
                });
            }
        }
    }
    let order_direction = pick(
        "order_direction",
        &order_candidates,
        OrientationLedger::PRINTED.order_direction,
        &order_pass,
        &mut ties,
        &evidence,
    )?;

    let side_candidates = [ResLargeSide::FirstFactor, ResLargeSide::SecondFactor];
    let mut side_violations = [0usize, 0];
    let mut side_violations_other = [0usize, 0];
    for input in inputs {
        let order = input.catalog.order();
        for nu in &input.nus {
            for (idx, &cand) in side_candidates.iter().enumerate() {
                let other = match order_direction {
                    OrderDirection::AsPrinted => OrderDirection::Reversed,
                    OrderDirection::Reversed => OrderDirection::AsPrinted,
                };
                for direction in [order_direction, other] {
                    let ledger = OrientationLedger { order_direction: direction, hom_formula_direction, res_large_side: cand };
                    let mut violations = 0;
                    let mut kps = 0;
                    for m in enumerate_kp(order, nu) {
                        violations += mackey_dominance_check(&m, order, &ledger, mackey_cap)?.violations().count();
                        kps += 1;
                    }
                    let calibrated = direction == order_direction;
                    if calibrated {
                        side_violations[idx] += violations;
                    } else {
                        side_violations_other[idx] += violations;
                    }
                    evidence.push(EvidenceRow {
                        quiver: input.catalog.quiver().to_string(),
                        word: order.word().to_string(),
                        check: if calibrated { "mackey" } else { "mackey-other-order" },
                        candidate: format!("{cand}@{direction}"),
                        nu: nu.to_string(),
                        passed: violations == 0,
                        detail: format!("{kps} partitions, {violations} violations"),
                    });
                }
            }
        }
    }
    // A side that passes under the calibrated order wins. Failing that, the
    // side under which the dominance statement holds for the other order
    // still identifies the restriction convention; otherwise fewest
    // violations.
    let mackey_consistent = side_violations.contains(&0);
    let side_pass = if mackey_consistent {
        side_violations.map(|v| v == 0)
    } else if side_violations_other.contains(&0) {
        side_violations_other.map(|v| v == 0)
    } else {
        let least = *side_violations.iter().min().expect("two candidates");
        side_violations.map(|v| v == least)
    };
    let res_large_side = pick(
        "res_large_side",
        &side_candidates,
        OrientationLedger::PRINTED.res_large_side,
        &side_pass,
        &mut ties,
        &evidence,
    )?;

    Ok(Calibration {
        ledger: OrientationLedger { order_direction, hom_formula_direction, res_large_side },
        evidence,
        ties,
        mackey_consistent,
    })
}
