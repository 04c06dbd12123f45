//! Point counts over finite fields of the fibers of the map from flagged
//! representations to representations, of the fibre square over it, and
//! polynomial interpolation of those counts.

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Rationals};
use crate::kostant::{enumerate_kp, KostantPartition};
use crate::linalg::Matrix;
use crate::quiver_rep::{QuiverRep, RepCatalog};
use crate::quiver_words::Quiver;
use crate::root_system::RootVector;

type MemoKey<E> = (Vec<usize>, Vec<Vec<E>>);

struct FlagCounter<'a, F: Field> {
    quiver: &'a Quiver,
    field: &'a F,
    elements: Vec<F::Elem>,
    memo: HashMap<MemoKey<F::Elem>, u128>,
}

impl<F: Field> FlagCounter<'_, F> {
    /// Nonzero vectors of `F^k` whose first nonzero entry is `1`.
    fn projective_points(&self, k: usize) -> Vec<Vec<F::Elem>> {
        let mut out = Vec::new();
        for lead in 0..k {
            let mut partial: Vec<Vec<F::Elem>> = vec![{
                let mut v = vec![self.field.zero(); k];
                v[lead] = self.field.one();
                v
            }];
            for pos in lead + 1..k {
                partial = partial
                    .into_iter()
                    .flat_map(|v| {
                        self.elements.iter().map(move |e| {
                            let mut w = v.clone();
                            w[pos] = e.clone();
                            w
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out
    }

    fn count(&mut self, dims: &[usize], mats: &[Matrix<F::Elem>]) -> Result<u128> {
        if dims.iter().all(|&d| d == 0) {
            return Ok(1);
        }
        let key = (dims.to_vec(), mats.iter().map(|m| m.data().to_vec()).collect());
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        let f = self.field;
        let arrows = self.quiver.arrows();
        let mut total: u128 = 0;
        for i in 0..dims.len() {
            let d = dims[i];
            if d == 0 {
                continue;
            }
            let incoming: Vec<&Matrix<F::Elem>> =
                arrows.iter().zip(mats).filter(|((_, t), _)| *t == i).map(|(_, m)| m).collect();
            // functionals on M_i vanishing on the images of incoming arrows
            let annihilator = Matrix::hstack(d, &incoming).left_kernel(f);
            for c in self.projective_points(annihilator.rows()) {
                let row = Matrix::from_rows(1, c.len(), c);
                let phi = row.mul(f, &annihilator);
                let p = (0..d).find(|&j| !f.is_zero(phi.get(0, j))).expect("nonzero functional");
                let scale = f.inv(phi.get(0, p)).expect("nonzero pivot");
                let phi: Vec<F::Elem> = phi.data().iter().map(|x| f.mul(x, &scale)).collect();
                // basis of ker φ: e_j - φ_j e_p for j != p
                let basis = Matrix::from_fn(d, d - 1, |r, col| {
                    let j = if col < p { col } else { col + 1 };
                    if r == j {
                        f.one()
                    } else if r == p {
                        f.neg(&phi[j])
                    } else {
                        f.zero()
                    }
                });
                let new_mats: Vec<Matrix<F::Elem>> = arrows
                    .iter()
                    .zip(mats)
                    .map(|(&(s, t), m)| {
                        if t == i {
                            m.without_row(p)
                        } else if s == i {
                            m.mul(f, &basis)
                        } else {
                            m.clone()
                        }
                    })
                    .collect();
                let mut new_dims = dims.to_vec();
                new_dims[i] -= 1;
                let sub = self.count(&new_dims, &new_mats)?;
                total = total.checked_add(sub).ok_or(Error::Overflow("fiber point count"))?;
            }
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

/// Number of complete graded flags of subrepresentations of `m` with
/// one-dimensional steps, over the finite field of `m`.
///
/// Recurses on the top step: a graded `x`-stable hyperplane lives at one
/// vertex `i` and contains the images of all arrows into `i`.
pub fn fiber_point_count<F: Field>(m: &QuiverRep<F>) -> Result<u128> {
    let elements = m.field().elements().ok_or_else(|| Error::InfiniteField(m.field().spec().to_string()))?;
    let mut counter = FlagCounter { quiver: m.quiver(), field: m.field(), elements, memo: HashMap::new() };
    counter.count(m.dims(), m.mats())
}

/// `[n]_q! = Π_{k=1}^n (1 + q + ... + q^{k-1})`, the number of complete flags in `F_q^n`.
pub fn flag_variety_count(n: usize, q: u64) -> Result<u128> {
    let q = q as u128;
    let mut out: u128 = 1;
    let mut bracket: u128 = 0;
    for k in 0..n {
        bracket = bracket.checked_add(q.checked_pow(k as u32).ok_or(Error::Overflow("flag count"))?).ok_or(Error::Overflow("flag count"))?;
        out = out.checked_mul(bracket).ok_or(Error::Overflow("flag count"))?;
    }
    Ok(out)
}

/// `#Y_ν(F_q)`, counted flag-first: for each sequence recording at which
/// vertex each flag step lives, the graded flags of that shape times the
/// stable representations, `q^{Σ_{i->j} #{(m' < m): step m at i, step m' at j}}`.
pub fn y_point_count_oracle(quiver: &Quiver, nu: &RootVector, q: u64) -> Result<u128> {
    let overflow = || Error::Overflow("#Y_ν");
    let flags = nu.coords().iter().try_fold(1u128, |acc, &n| acc.checked_mul(flag_variety_count(n as usize, q)?).ok_or_else(overflow))?;
    let mut remaining: Vec<usize> = nu.coords().iter().map(|&c| c as usize).collect();
    let mut seq = Vec::new();
    let mut total: u128 = 0;
    fn walk(
        quiver: &Quiver,
        q: u128,
        remaining: &mut Vec<usize>,
        seq: &mut Vec<usize>,
        total: &mut u128,
    ) -> Option<()> {
        if remaining.iter().all(|&r| r == 0) {
            let mut exponent: u32 = 0;
            for &(s, t) in quiver.arrows() {
                for (m, &letter) in seq.iter().enumerate() {
                    if letter == s {
                        exponent += seq[..m].iter().filter(|&&l| l == t).count() as u32;
                    }
                }
            }
            *total = total.checked_add(q.checked_pow(exponent)?)?;
            return Some(());
        }
        for i in 0..remaining.len() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                seq.push(i);
                walk(quiver, q, remaining, seq, total)?;
                seq.pop();
                remaining[i] += 1;
            }
        }
        Some(())
    }
    walk(quiver, q as u128, &mut remaining, &mut seq, &mut total).ok_or_else(overflow)?;
    total.checked_mul(flags).ok_or_else(overflow)
}

/// `Σ_i C(ν_i, 2)`: the dimension of the flag variety of `G_ν`, which
/// bounds the degree of every fiber count.
pub fn fiber_degree_bound(nu: &RootVector) -> usize {
    nu.coords().iter().map(|&n| (n * (n - 1) / 2) as usize).sum()
}

/// A polynomial in `q` with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigRational>);

impl Polynomial {
    /// Lagrange interpolation through the given points.
    pub fn interpolate(points: &[(u64, u128)]) -> Polynomial {
        let mut coeffs = vec![BigRational::zero(); points.len()];
        for (a, &(xa, ya)) in points.iter().enumerate() {
            // basis polynomial Π_{b != a} (q - x_b) / (x_a - x_b)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (b, &(xb, _)) in points.iter().enumerate() {
                if a == b {
                    continue;
                }
                let xb = BigRational::from_integer(BigInt::from(xb));
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * &xb;
                }
                basis = next;
                denom *= BigRational::from_integer(BigInt::from(xa)) - xb;
            }
            let scale = BigRational::from_integer(BigInt::from(ya)) / denom;
            for (k, c) in basis.iter().enumerate() {
                coeffs[k] += c * &scale;
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn eval(&self, q: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(q));
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn has_nonnegative_integer_coefficients(&self) -> bool {
        self.0.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Coefficients as integers, when they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<i128>> {
        self.0.iter().map(|c| if c.is_integer() { c.numer().to_i128() } else { None }).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 if c.is_one() => "q".to_string(),
                1 => format!("{c}q"),
                _ if c.is_one() => format!("q^{k}"),
                _ => format!("{c}q^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Outcome of fitting a polynomial to point counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Integer coefficients, all nonnegative, and every held-out value matches.
    ConsistentWithEven,
    EvidenceAgainst,
    /// Too few values to interpolate and check.
    Insufficient,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConsistentWithEven => "consistent-with-even",
            Verdict::EvidenceAgainst => "evidence-against",
            Verdict::Insufficient => "insufficient",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationReport {
    pub values: Vec<(u64, u128)>,
    pub degree_bound: usize,
    /// Fitted through the first `degree_bound + 1` values.
    pub polynomial: Option<Polynomial>,
    /// The remaining values and whether the polynomial reproduces them.
    pub held_out: Vec<(u64, bool)>,
    pub verdict: Verdict,
}

impl InterpolationReport {
    pub fn from_values(values: Vec<(u64, u128)>, degree_bound: usize) -> Self {
        if values.len() < degree_bound + 2 {
            return InterpolationReport { values, degree_bound, polynomial: None, held_out: Vec::new(), verdict: Verdict::Insufficient };
        }
        let poly = Polynomial::interpolate(&values[..=degree_bound]);
        let held_out: Vec<(u64, bool)> = values[degree_bound + 1..]
            .iter()
            .map(|&(q, v)| (q, poly.eval(q) == BigRational::from_integer(BigInt::from(v))))
            .collect();
        let verdict = if poly.has_nonnegative_integer_coefficients() && held_out.iter().all(|&(_, ok)| ok) {
            Verdict::ConsistentWithEven
        } else {
            Verdict::EvidenceAgainst
        };
        InterpolationReport { values, degree_bound, polynomial: Some(poly), held_out, verdict }
    }

    pub fn polynomial_string(&self) -> String {
        self.polynomial.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
    }
}

/// `M(λ)` over `F_q`, obtained by reducing the integral representative built over the rationals.
pub fn rep_over_finite_field(catalog: &RepCatalog<Rationals>, lambda: &KostantPartition, q: u64) -> Result<QuiverRep<FiniteField>> {
    let m = catalog.rep_of_kp(lambda)?;
    if !m.is_integral() {
        return Err(Error::Verification(format!("representative of {lambda} is not integral")));
    }
    m.reduce(FiniteField::with_order(q)?)
}

/// Fiber counts of `M(λ)` at each `q`, interpolated with degree bound
/// `Σ C(ν_i, 2)` and checked on the remaining values.
pub fn interpolate_fiber_polynomial(
    catalog: &RepCatalog<Rationals>,
    lambda: &KostantPartition,
    q_list: &[u64],
) -> Result<InterpolationReport> {
    let bound = fiber_degree_bound(lambda.nu());
    if q_list.len() < bound + 2 {
        return Err(Error::InsufficientData(format!(
            "fiber counts for ν = {} need at least {} values of q, got {}",
            lambda.nu(),
            bound + 2,
            q_list.len()
        )));
    }
    let values = q_list
        .iter()
        .map(|&q| Ok((q, fiber_point_count(&rep_over_finite_field(catalog, lambda, q)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(InterpolationReport::from_values(values, bound))
}

/// `#Z_ν(F_q) = Σ_λ #O_λ(F_q) · fiber(M(λ))²`.
pub fn z_point_count(catalog: &RepCatalog<Rationals>, nu: &RootVector, q: u64) -> Result<u128> {
    let overflow = || Error::Overflow("#Z_ν");
    enumerate_kp(catalog.order(), nu).iter().try_fold(0u128, |acc, lambda| {
        let orbit = catalog.orbit_point_count(lambda, q)?;
        let fiber = fiber_point_count(&rep_over_finite_field(catalog, lambda, q)?)?;
        let term = fiber.checked_mul(fiber).and_then(|f2| f2.checked_mul(orbit)).ok_or_else(overflow)?;
        acc.checked_add(term).ok_or_else(overflow)
    })
}

/// Degree bound for `#Z_ν`: `dim E_ν + 2 Σ C(ν_i, 2)`.
pub fn z_degree_bound(quiver: &Quiver, nu: &RootVector) -> usize {
    crate::quiver_rep::rep_space_dim(quiver, nu) as usize + 2 * fiber_degree_bound(nu)
}

pub fn z_interpolation(catalog: &RepCatalog<Rationals>, nu: &RootVector, q_list: &[u64]) -> Result<InterpolationReport> {
    let values = q_list.iter().map(|&q| Ok((q, z_point_count(catalog, nu, q)?))).collect::<Result<Vec<_>>>()?;
    Ok(InterpolationReport::from_values(values, z_degree_bound(catalog.quiver(), nu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::dimension_vectors_up_to;
    use crate::root_system::CartanDatum;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn datum(ty: &str) -> Arc<CartanDatum> {
        Arc::new(ty.parse().unwrap())
    }

    fn a2_catalog() -> RepCatalog<Rationals> {
        RepCatalog::new(&Quiver::new(datum("A2"), &[(0, 1)]).unwrap(), Rationals).unwrap()
    }

    #[test]
    fn a2_spot_values() {
        let cat = a2_catalog();
        let o = cat.order();
        let split = KostantPartition::from_parts(o, &[RootVector(vec![1, 0]), RootVector(vec![0, 1])]).unwrap();
        let dense = KostantPartition::from_parts(o, &[RootVector(vec![1, 1])]).unwrap();
        for q in [2, 3, 4, 5, 7, 8, 9] {
            assert_eq!(fiber_point_count(&rep_over_finite_field(&cat, &split, q).unwrap()).unwrap(), 2);
            assert_eq!(fiber_point_count(&rep_over_finite_field(&cat, &dense, q).unwrap()).unwrap(), 1);
            let s1 = QuiverRep::simple(cat.quiver().clone(), FiniteField::with_order(q).unwrap(), 0);
            assert_eq!(fiber_point_count(&s1).unwrap(), 1);
        }
        assert!(matches!(fiber_point_count(&cat.rep_of_kp(&dense).unwrap()), Err(Error::InfiniteField(_))));
    }

    #[test]
    fn a2_z_counts() {
        let cat = a2_catalog();
        let nu = RootVector(vec![1, 1]);
        assert_eq!(z_point_count(&cat, &nu, 2).unwrap(), 5);
        assert_eq!(z_point_count(&cat, &nu, 3).unwrap(), 6);
        for q in [2, 4, 7] {
            assert_eq!(z_point_count(&cat, &RootVector(vec![0, 1]), q).unwrap(), 1);
        }
        let report = z_interpolation(&cat, &nu, &[2, 3, 4, 5]).unwrap();
        assert_eq!(report.polynomial_string(), "3 + q");
        assert_eq!(report.verdict, Verdict::ConsistentWithEven);
        assert_eq!(z_interpolation(&cat, &nu, &[2, 3]).unwrap().verdict, Verdict::Insufficient);
    }

    #[test]
    fn flag_counts() {
        assert_eq!(flag_variety_count(0, 3).unwrap(), 1);
        assert_eq!(flag_variety_count(2, 3).unwrap(), 4);
        assert_eq!(flag_variety_count(3, 2).unwrap(), 21);
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let pts: Vec<(u64, u128)> = [2u64, 3, 4, 5].iter().map(|&q| (q, (1 + 2 * q * q + q * q * q) as u128)).collect();
        let p = Polynomial::interpolate(&pts);
        assert_eq!(p.integer_coefficients().unwrap(), vec![1, 0, 2, 1]);
        assert_eq!(p.to_string(), "1 + 2q^2 + q^3");
        let report = InterpolationReport::from_values(vec![(2, 3), (3, 5), (4, 8)], 1);
        assert_eq!(report.verdict, Verdict::EvidenceAgainst);
    }

    #[test]
    fn fiber_polynomials_on_small_cases() {
        let cat = a2_catalog();
        let qs = [2, 3, 4, 5, 7];
        for lambda in enumerate_kp(cat.order(), &RootVector(vec![1, 1])) {
            let r = interpolate_fiber_polynomial(&cat, &lambda, &qs).unwrap();
            assert_eq!(r.verdict, Verdict::ConsistentWithEven);
            assert_eq!(r.polynomial.unwrap().degree(), 0);
        }
        let a3 = RepCatalog::new(&Quiver::linear(datum("A3")), Rationals).unwrap();
        let top = KostantPartition::from_parts(a3.order(), &[RootVector(vec![1, 1, 1])]).unwrap();
        let r = interpolate_fiber_polynomial(&a3, &top, &qs).unwrap();
        assert_eq!(r.polynomial_string(), "1");
        let two = KostantPartition::from_parts(a3.order(), &[RootVector(vec![0, 1, 0]), RootVector(vec![0, 1, 0])]).unwrap();
        assert_eq!(interpolate_fiber_polynomial(&a3, &two, &qs).unwrap().polynomial_string(), "1 + q");
        assert!(matches!(interpolate_fiber_polynomial(&a3, &two, &[2, 3]), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn flagged_representations_match_the_oracle() {
        for ty in ["A2", "A3"] {
            for quiver in Quiver::all_orientations(datum(ty)) {
                let cat = RepCatalog::new(&quiver, Rationals).unwrap();
                for nu in dimension_vectors_up_to(quiver.rank(), 3) {
                    for q in [2u64, 3, 4] {
                        let total: u128 = enumerate_kp(cat.order(), &nu)
                            .iter()
                            .map(|l| {
                                cat.orbit_point_count(l, q).unwrap()
                                    * fiber_point_count(&rep_over_finite_field(&cat, l, q).unwrap()).unwrap()
                            })
                            .sum();
                        assert_eq!(total, y_point_count_oracle(&quiver, &nu, q).unwrap(), "{quiver} {nu} q={q}");
                    }
                }
            }
        }
    }

    fn random_invertible(f: &FiniteField, n: usize, seed: &mut impl Iterator<Item = u32>) -> (Matrix<u32>, Matrix<u32>) {
        let q = f.order().unwrap() as u32;
        loop {
            let m = Matrix::from_fn(n, n, |_, _| seed.next().unwrap() % q);
            if m.rank(f) == n {
                let aug = Matrix::hstack(n, &[&m, &Matrix::identity(f, n)]);
                let inv = aug.rref(f).0.col_block(n, n);
                return (m, inv);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn fiber_count_is_an_orbit_invariant(seed in proptest::collection::vec(any::<u32>(), 400), which in 0usize..64) {
            let quiver = Quiver::linear(datum("A3"));
            let cat = RepCatalog::new(&quiver, Rationals).unwrap();
            let kps = enumerate_kp(cat.order(), &RootVector(vec![1, 2, 1]));
            let lambda = &kps[which % kps.len()];
            let f = FiniteField::new(3, 1).unwrap();
            let m = rep_over_finite_field(&cat, lambda, 3).unwrap();
            let mut it = seed.into_iter().cycle();
            let (g, ginv): (Vec<_>, Vec<_>) = m.dims().iter().map(|&d| random_invertible(&f, d, &mut it)).unzip();
            let moved = m.transform(&g, &ginv);
            prop_assert_eq!(fiber_point_count(&moved).unwrap(), fiber_point_count(&m).unwrap());
        }
    }
}
