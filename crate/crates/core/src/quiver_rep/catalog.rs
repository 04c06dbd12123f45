use std::sync::Arc;

use num::{BigRational, Signed, Zero};

use super::QuiverRep;
use crate::convex_order::ConvexOrder;
use crate::error::{Error, Result};
use crate::field::{rational_to_i64, Field, Rationals};
use crate::kostant::KostantPartition;
use crate::linalg::Matrix;
use crate::quiver_words::Quiver;
use crate::root_system::RootVector;

/// `|GL_n(F_q)| = Π_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> Result<u128> {
    let q = q as u128;
    let qn = q.checked_pow(n).ok_or(Error::Overflow("|GL_n(F_q)|"))?;
    (0..n).try_fold(1u128, |acc, i| acc.checked_mul(qn - q.pow(i)).ok_or(Error::Overflow("|GL_n(F_q)|")))
}

/// The indecomposable representation of `quiver` with dimension vector `beta`.
///
/// Writes `beta = β_k` for the adapted word of `quiver` and applies the
/// source reflections at `i_{k-1}, ..., i_1` to the simple `S_{i_k}` of the
/// quiver reflected at `i_1, ..., i_{k-1}`.
pub fn indecomposable<F: Field>(quiver: &Quiver, beta: &RootVector, field: &F) -> Result<QuiverRep<F>> {
    let word = quiver.adapted_word_of_w0()?;
    let order = ConvexOrder::new(quiver.datum_arc().clone(), word)?;
    let k = order.position_of(beta).ok_or_else(|| Error::NotPositiveRoot(beta.0.clone()))?;
    build_indecomposable(quiver, &order, k, field)
}

fn build_indecomposable<F: Field>(quiver: &Quiver, order: &ConvexOrder, k: usize, field: &F) -> Result<QuiverRep<F>> {
    let letters = order.word().letters();
    let mut q = quiver.clone();
    for &i in &letters[..k] {
        q = q.reflect(i);
    }
    let mut rep = QuiverRep::simple(q, field.clone(), letters[k]);
    for &i in letters[..k].iter().rev() {
        rep = rep.bgp_reflect(i)?;
    }
    if rep.dim_vector() != order.beta()[k] || rep.quiver() != quiver {
        return Err(Error::Verification(format!("reflection chain for {} went astray", order.beta()[k])));
    }
    Ok(rep)
}

/// All indecomposables of a quiver over one field, indexed by the adapted
/// convex order, with their pairwise Hom dimensions.
#[derive(Debug, Clone)]
pub struct RepCatalog<F: Field> {
    quiver: Quiver,
    order: ConvexOrder,
    field: F,
    indecs: Vec<QuiverRep<F>>,
    /// `hom[k][l] = dim Hom(M(β_k), M(β_l))`
    hom: Vec<Vec<usize>>,
}

impl<F: Field> RepCatalog<F> {
    pub fn new(quiver: &Quiver, field: F) -> Result<Self> {
        let word = quiver.adapted_word_of_w0()?;
        let order = ConvexOrder::new(quiver.datum_arc().clone(), word)?;
        Self::with_order(quiver, order, field)
    }

    /// Uses a given convex order, which must be adapted to the quiver.
    pub fn with_order(quiver: &Quiver, order: ConvexOrder, field: F) -> Result<Self> {
        if !quiver.is_adapted(order.word()) || order.datum() != quiver.datum() {
            return Err(Error::NotAdapted);
        }
        let indecs = (0..order.len())
            .map(|k| build_indecomposable(quiver, &order, k, &field))
            .collect::<Result<Vec<_>>>()?;
        let hom = indecs
            .iter()
            .map(|m| indecs.iter().map(|n| m.hom_dim(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for (k, row) in hom.iter().enumerate() {
            if row[k] != 1 {
                return Err(Error::Verification(format!("End(M({})) has dimension {}", order.beta()[k], row[k])));
            }
        }
        Ok(RepCatalog { quiver: quiver.clone(), order, field, indecs, hom })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> &ConvexOrder {
        &self.order
    }

    pub fn datum_arc(&self) -> &Arc<crate::root_system::CartanDatum> {
        self.order.datum_arc()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `M(β_k)`.
    pub fn indecomposable(&self, k: usize) -> &QuiverRep<F> {
        &self.indecs[k]
    }

    pub fn indecomposables(&self) -> &[QuiverRep<F>] {
        &self.indecs
    }

    pub fn of_root(&self, beta: &RootVector) -> Result<&QuiverRep<F>> {
        let k = self.order.position_of(beta).ok_or_else(|| Error::NotPositiveRoot(beta.0.clone()))?;
        Ok(&self.indecs[k])
    }

    /// `hom_matrix()[k][l] = dim Hom(M(β_k), M(β_l))`.
    pub fn hom_matrix(&self) -> &[Vec<usize>] {
        &self.hom
    }

    /// `M(λ) = ⊕_k M(β_k)^{n_k}`, summands in order of `k`.
    pub fn rep_of_kp(&self, lambda: &KostantPartition) -> Result<QuiverRep<F>> {
        self.check_kp(lambda)?;
        let summands: Vec<&QuiverRep<F>> = lambda
            .mults()
            .iter()
            .enumerate()
            .flat_map(|(k, &n)| std::iter::repeat_n(&self.indecs[k], n as usize))
            .collect();
        if summands.is_empty() {
            let n = self.quiver.rank();
            return Ok(QuiverRep::zero(self.quiver.clone(), self.field.clone(), vec![0; n]));
        }
        QuiverRep::direct_sum(self.quiver.clone(), self.field.clone(), &summands)
    }

    fn check_kp(&self, lambda: &KostantPartition) -> Result<()> {
        if lambda.mults().len() != self.order.len() {
            return Err(Error::WrongLength { got: lambda.mults().len(), expected: self.order.len() });
        }
        Ok(())
    }

    /// `(dim Hom(M, M(β_l)))_l`.
    pub fn hom_profile(&self, m: &QuiverRep<F>) -> Result<Vec<usize>> {
        self.indecs.iter().map(|x| m.hom_dim(x)).collect()
    }

    /// `(dim Hom(M(λ), M(β_l)))_l` from the Hom table, by additivity.
    pub fn kp_hom_profile(&self, lambda: &KostantPartition) -> Result<Vec<usize>> {
        self.check_kp(lambda)?;
        Ok((0..self.order.len())
            .map(|l| lambda.mults().iter().enumerate().map(|(k, &n)| n as usize * self.hom[k][l]).sum())
            .collect())
    }

    /// `dim End(M(λ))` from the Hom table.
    pub fn kp_end_dim(&self, lambda: &KostantPartition) -> Result<usize> {
        self.check_kp(lambda)?;
        let n = lambda.mults();
        Ok((0..n.len())
            .flat_map(|k| (0..n.len()).map(move |l| (k, l)))
            .map(|(k, l)| n[k] as usize * n[l] as usize * self.hom[k][l])
            .sum())
    }

    /// The Kostant partition `λ` with `M ≅ M(λ)`, from the Hom profile of `M`.
    pub fn iso_class(&self, m: &QuiverRep<F>) -> Result<KostantPartition> {
        if m.quiver() != &self.quiver {
            return Err(Error::QuiverMismatch);
        }
        let profile = self.hom_profile(m)?;
        let len = self.order.len();
        // Σ_k n_k hom[k][l] = profile[l]
        let q = Rationals;
        let sys = Matrix::from_fn(len, len, |l, k| BigRational::from_integer((self.hom[k][l] as i64).into()));
        let rhs: Vec<BigRational> = profile.iter().map(|&p| BigRational::from_integer((p as i64).into())).collect();
        let sol = sys
            .solve(&q, &rhs)
            .ok_or_else(|| Error::Verification(format!("Hom profile {profile:?} has no solution")))?;
        let mults = sol
            .iter()
            .map(|x| match rational_to_i64(x) {
                Some(v) if !x.is_negative() || x.is_zero() => u32::try_from(v).ok(),
                _ => None,
            })
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::Verification(format!("Hom profile {profile:?} gives non-natural multiplicities")))?;
        let lambda = KostantPartition::new(&self.order, mults)?;
        if lambda.nu() != &m.dim_vector() {
            return Err(Error::Verification(format!("iso class {lambda} has the wrong dimension vector")));
        }
        Ok(lambda)
    }

    /// `#O_λ(F_q) = |G_ν(F_q)| / |Aut M(λ)(F_q)|` with
    /// `|Aut M(λ)| = q^{e - Σ n_k²} Π_k |GL_{n_k}(F_q)|`, `e = dim End M(λ)`.
    pub fn orbit_point_count(&self, lambda: &KostantPartition, q: u64) -> Result<u128> {
        let e = self.kp_end_dim(lambda)? as u32;
        let g = lambda.nu().coords().iter().try_fold(1u128, |acc, &d| {
            acc.checked_mul(gl_order(d as u32, q)?).ok_or(Error::Overflow("|G_ν(F_q)|"))
        })?;
        let squares: u32 = lambda.mults().iter().map(|&n| n * n).sum();
        let unipotent = (q as u128).checked_pow(e - squares).ok_or(Error::Overflow("|Aut M(λ)|"))?;
        let aut = lambda.mults().iter().try_fold(unipotent, |acc, &n| {
            acc.checked_mul(gl_order(n, q)?).ok_or(Error::Overflow("|Aut M(λ)|"))
        })?;
        if g % aut != 0 {
            return Err(Error::Verification(format!("|Aut M({lambda})| = {aut} does not divide |G_ν| = {g}")));
        }
        Ok(g / aut)
    }
}

/// `dim E_ν = Σ_{arrows i->j} ν_i ν_j`.
pub fn rep_space_dim(quiver: &Quiver, nu: &RootVector) -> u32 {
    quiver.arrows().iter().map(|&(s, t)| (nu.0[s] * nu.0[t]) as u32).sum()
}
