//! Kostant partitions under a simple reflection at a sink: the bijection
//! `β ↦ s_i β` on partitions without the part `α_i`, its realisation by the
//! BGP reflection functor, and compatibility with the partition orders.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kostant::{enumerate_kp, kp_leq, KostantPartition, OrientationLedger};
use crate::quiver_rep::RepCatalog;
use crate::quiver_words::Quiver;
use crate::root_system::RootVector;

/// The reflection at a sink `i` of a quiver, with catalogs for the quiver
/// and its reflection, each indexed by its own adapted order.
#[derive(Debug, Clone)]
pub struct Reflection<F: Field> {
    i: usize,
    before: RepCatalog<F>,
    after: RepCatalog<F>,
}

/// One row of a reflection sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionRow {
    pub lambda: KostantPartition,
    pub reflected: KostantPartition,
    /// Iso class of the BGP image of `M(λ)`.
    pub bgp_class: KostantPartition,
    pub round_trip: bool,
}

impl ReflectionRow {
    pub fn passed(&self) -> bool {
        self.bgp_class == self.reflected && self.round_trip
    }
}

impl<F: Field> Reflection<F> {
    pub fn new(quiver: &Quiver, i: usize, field: F) -> Result<Self> {
        quiver.datum().check_vertex(i)?;
        if !quiver.is_sink(i) {
            return Err(Error::NotSink(i + 1));
        }
        let before = RepCatalog::new(quiver, field.clone())?;
        let after = RepCatalog::new(&quiver.reflect(i), field)?;
        Ok(Reflection { i, before, after })
    }

    pub fn vertex(&self) -> usize {
        self.i
    }

    pub fn before(&self) -> &RepCatalog<F> {
        &self.before
    }

    pub fn after(&self) -> &RepCatalog<F> {
        &self.after
    }

    fn simple(&self) -> RootVector {
        RootVector::simple(self.before.quiver().rank(), self.i)
    }

    fn mult_of_simple(&self, catalog: &RepCatalog<F>, lambda: &KostantPartition) -> u32 {
        let k = catalog.order().position_of(&self.simple()).expect("simple roots are positive");
        lambda.mults()[k]
    }

    /// Whether `λ` has no part `α_i`, cross-checked against surjectivity of
    /// `⊕_{j->i} M(λ)_j -> M(λ)_i`.
    pub fn in_ker_locus(&self, lambda: &KostantPartition) -> Result<bool> {
        let by_parts = self.mult_of_simple(&self.before, lambda) == 0;
        let surjective = self.before.rep_of_kp(lambda)?.is_surjective_at_sink(self.i)?;
        if by_parts != surjective {
            return Err(Error::Verification(format!(
                "part test and surjectivity disagree for {} at vertex {}",
                lambda.parts_string(self.before.order()),
                self.i + 1
            )));
        }
        Ok(by_parts)
    }

    /// The source-side locus on the reflected quiver: no part `α_i`,
    /// cross-checked against injectivity of `M_i -> ⊕_{i->j} M_j`.
    pub fn in_image_locus(&self, lambda: &KostantPartition) -> Result<bool> {
        let by_parts = self.mult_of_simple(&self.after, lambda) == 0;
        let injective = self.after.rep_of_kp(lambda)?.is_injective_at_source(self.i)?;
        if by_parts != injective {
            return Err(Error::Verification(format!(
                "part test and injectivity disagree for {} at vertex {}",
                lambda.parts_string(self.after.order()),
                self.i + 1
            )));
        }
        Ok(by_parts)
    }

    fn move_parts(&self, lambda: &KostantPartition, from: &RepCatalog<F>, to: &RepCatalog<F>) -> Result<KostantPartition> {
        let d = from.quiver().datum();
        let parts: Vec<RootVector> = lambda
            .parts(from.order())
            .flat_map(|(beta, n)| std::iter::repeat_n(d.reflect_root(self.i, beta), n as usize))
            .collect();
        KostantPartition::from_parts(to.order(), &parts)
    }

    /// Replaces each part `β` by `s_i β`, indexed by the reflected quiver's order.
    pub fn reflect_kp(&self, lambda: &KostantPartition) -> Result<KostantPartition> {
        if !self.in_ker_locus(lambda)? {
            return Err(Error::NotInLocus(self.i + 1));
        }
        self.move_parts(lambda, &self.before, &self.after)
    }

    /// Inverse of [`Reflection::reflect_kp`].
    pub fn unreflect_kp(&self, lambda: &KostantPartition) -> Result<KostantPartition> {
        if !self.in_image_locus(lambda)? {
            return Err(Error::NotInLocus(self.i + 1));
        }
        self.move_parts(lambda, &self.after, &self.before)
    }

    /// Whether the BGP reflection of `M(λ)` is isomorphic to `M(reflect_kp(λ))`.
    pub fn verify_reflection(&self, lambda: &KostantPartition) -> Result<bool> {
        Ok(self.row(lambda)?.passed())
    }

    /// Reflection data for one in-locus partition, including the round trip
    /// back through the source reflection.
    pub fn row(&self, lambda: &KostantPartition) -> Result<ReflectionRow> {
        let reflected = self.reflect_kp(lambda)?;
        let image = self.before.rep_of_kp(lambda)?.bgp_reflect(self.i)?;
        let bgp_class = self.after.iso_class(&image)?;
        let back = image.bgp_reflect(self.i)?;
        let round_trip = self.before.iso_class(&back)? == *lambda && self.unreflect_kp(&reflected)? == *lambda;
        Ok(ReflectionRow { lambda: lambda.clone(), reflected, bgp_class, round_trip })
    }

    /// In-locus partitions of `ν`.
    pub fn locus(&self, nu: &RootVector) -> Result<Vec<KostantPartition>> {
        let mut out = Vec::new();
        for k in enumerate_kp(self.before.order(), nu) {
            if self.in_ker_locus(&k)? {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Whether `λ ⪯ μ ⇔ reflect(λ) ⪯ reflect(μ)` for all in-locus `λ, μ ∈ KP(ν)`,
    /// each side ordered by its own adapted order.
    pub fn order_compat(&self, nu: &RootVector, ledger: &OrientationLedger) -> Result<bool> {
        let locus = self.locus(nu)?;
        let images = locus.iter().map(|l| self.reflect_kp(l)).collect::<Result<Vec<_>>>()?;
        for (a, la) in locus.iter().enumerate() {
            for (b, lb) in locus.iter().enumerate() {
                let here = kp_leq(la, lb, self.before.order(), ledger)?;
                let there = kp_leq(&images[a], &images[b], self.after.order(), ledger)?;
                if here != there {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// TSV of the sweep over `KP(ν)`: partitions in both indexings.
    pub fn sweep_tsv(&self, nu: &RootVector) -> Result<String> {
        let mut out = String::new();
        for lambda in self.locus(nu)? {
            let r = self.row(&lambda)?;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                self.i + 1,
                nu,
                r.lambda,
                r.reflected,
                r.reflected.parts_string(self.after.order()),
                r.passed()
            )
            .unwrap();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::kostant::{dimension_vectors_up_to, HomFormulaDirection, OrderDirection, ResLargeSide};
    use crate::root_system::CartanDatum;
    use std::sync::Arc;

    fn datum(ty: &str) -> Arc<CartanDatum> {
        Arc::new(ty.parse().unwrap())
    }

    const CALIBRATED: OrientationLedger = OrientationLedger {
        order_direction: OrderDirection::Reversed,
        hom_formula_direction: HomFormulaDirection::Transposed,
        res_large_side: ResLargeSide::FirstFactor,
    };

    fn a2() -> Reflection<Rationals> {
        Reflection::new(&Quiver::new(datum("A2"), &[(0, 1)]).unwrap(), 1, Rationals).unwrap()
    }

    fn kp(cat: &RepCatalog<Rationals>, parts: &[&[i64]]) -> KostantPartition {
        let parts: Vec<RootVector> = parts.iter().map(|p| RootVector(p.to_vec())).collect();
        KostantPartition::from_parts(cat.order(), &parts).unwrap()
    }

    #[test]
    fn a2_examples() {
        let r = a2();
        let dense = kp(r.before(), &[&[1, 1]]);
        assert!(r.in_ker_locus(&dense).unwrap());
        assert_eq!(r.reflect_kp(&dense).unwrap(), kp(r.after(), &[&[1, 0]]));
        assert!(r.verify_reflection(&dense).unwrap());
        let split = kp(r.before(), &[&[1, 0], &[0, 1]]);
        assert!(!r.in_ker_locus(&split).unwrap());
        assert!(matches!(r.reflect_kp(&split), Err(Error::NotInLocus(2))));
        let away = kp(r.before(), &[&[1, 0]]);
        assert!(r.in_ker_locus(&away).unwrap());
        let mixed = kp(r.before(), &[&[1, 0], &[1, 1]]);
        let image = r.reflect_kp(&mixed).unwrap();
        assert_eq!(image, kp(r.after(), &[&[1, 1], &[1, 0]]));
        assert_eq!(image.nu(), mixed.nu());
        let empty = KostantPartition::empty(r.before().order());
        assert_eq!(r.reflect_kp(&empty).unwrap(), KostantPartition::empty(r.after().order()));
        assert!(r.order_compat(&RootVector(vec![1, 1]), &CALIBRATED).unwrap());
    }

    #[test]
    fn needs_a_sink() {
        let q = Quiver::new(datum("A2"), &[(0, 1)]).unwrap();
        assert!(matches!(Reflection::new(&q, 0, Rationals), Err(Error::NotSink(1))));
        assert!(Reflection::new(&q, 7, Rationals).is_err());
    }

    #[test]
    fn locus_bijection() {
        for q in Quiver::all_orientations(datum("A3")) {
            for i in q.sinks() {
                let r = Reflection::new(&q, i, FiniteField::new(2, 1).unwrap()).unwrap();
                for nu in dimension_vectors_up_to(3, 3) {
                    let locus = r.locus(&nu).unwrap();
                    let target = q.datum().reflect_root(i, &nu);
                    if target.0.iter().any(|&c| c < 0) {
                        assert!(locus.is_empty());
                        continue;
                    }
                    let mut image: Vec<_> = locus.iter().map(|l| r.reflect_kp(l).unwrap()).collect();
                    image.sort();
                    let mut expected: Vec<_> = enumerate_kp(r.after().order(), &target)
                        .into_iter()
                        .filter(|l| r.in_image_locus(l).unwrap())
                        .collect();
                    expected.sort();
                    assert_eq!(image, expected);
                }
            }
        }
    }

    #[test]
    fn reflection_sweep_a3_d4() {
        for ty in ["A3", "D4"] {
            let q = Quiver::linear(datum(ty));
            for i in q.sinks() {
                let r = Reflection::new(&q, i, Rationals).unwrap();
                for nu in dimension_vectors_up_to(q.rank(), 3) {
                    for lambda in r.locus(&nu).unwrap() {
                        assert!(r.verify_reflection(&lambda).unwrap(), "{ty} {i} {lambda}");
                    }
                    assert!(r.order_compat(&nu, &CALIBRATED).unwrap());
                    assert!(r.order_compat(&nu, &OrientationLedger::PRINTED).unwrap());
                }
            }
        }
    }
}
