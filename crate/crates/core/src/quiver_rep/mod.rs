//! Representations of Dynkin quivers over exact fields.

mod catalog;
mod json;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::Matrix;
use crate::quiver_words::Quiver;
use crate::root_system::RootVector;

pub use catalog::{gl_order, indecomposable, rep_space_dim, RepCatalog};

/// A representation: a vector space `F^{dims[i]}` at each vertex and a
/// `dims[target] x dims[source]` matrix on each arrow (arrows in the order
/// of [`Quiver::arrows`]).
#[derive(Debug, Clone)]
pub struct QuiverRep<F: Field> {
    quiver: Quiver,
    field: F,
    dims: Vec<usize>,
    mats: Vec<Matrix<F::Elem>>,
}

impl<F: Field> PartialEq for QuiverRep<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.quiver == other.quiver
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl<F: Field> Eq for QuiverRep<F> {}

impl<F: Field> QuiverRep<F> {
    pub fn new(quiver: Quiver, field: F, dims: Vec<usize>, mats: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if dims.len() != quiver.rank() || mats.len() != quiver.arrows().len() {
            return Err(Error::Parse("representation does not match its quiver".into()));
        }
        for (m, &(s, t)) in mats.iter().zip(quiver.arrows()) {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Parse(format!(
                    "arrow {} -> {} has a {}x{} matrix, expected {}x{}",
                    s + 1,
                    t + 1,
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(QuiverRep { quiver, field, dims, mats })
    }

    pub fn zero(quiver: Quiver, field: F, dims: Vec<usize>) -> Self {
        let mats = quiver.arrows().iter().map(|&(s, t)| Matrix::zeros(&field, dims[t], dims[s])).collect();
        QuiverRep { quiver, field, dims, mats }
    }

    /// The simple representation `S_i`.
    pub fn simple(quiver: Quiver, field: F, i: usize) -> Self {
        let mut dims = vec![0; quiver.rank()];
        dims[i] = 1;
        Self::zero(quiver, field, dims)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> RootVector {
        RootVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mats(&self) -> &[Matrix<F::Elem>] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Matrix<F::Elem> {
        &self.mats[arrow]
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(quiver: Quiver, field: F, summands: &[&QuiverRep<F>]) -> Result<Self> {
        if summands.iter().any(|s| s.quiver != quiver) {
            return Err(Error::QuiverMismatch);
        }
        let n = quiver.rank();
        let dims: Vec<usize> = (0..n).map(|i| summands.iter().map(|s| s.dims[i]).sum()).collect();
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(&field, dims[t], dims[s]);
                let (mut r0, mut c0) = (0, 0);
                for sm in summands {
                    let block = &sm.mats[a];
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            m.set(r0 + r, c0 + c, block.get(r, c).clone());
                        }
                    }
                    r0 += sm.dims[t];
                    c0 += sm.dims[s];
                }
                m
            })
            .collect();
        Ok(QuiverRep { quiver, field, dims, mats })
    }

    /// Changes basis at every vertex: `x_a ↦ g_t x_a g_s^{-1}`. `basis[i]`
    /// must be invertible; `inverse[i]` its inverse.
    pub fn transform(&self, basis: &[Matrix<F::Elem>], inverse: &[Matrix<F::Elem>]) -> Self {
        let f = &self.field;
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| basis[t].mul(f, m).mul(f, &inverse[s]))
            .collect();
        QuiverRep { quiver: self.quiver.clone(), field: self.field.clone(), dims: self.dims.clone(), mats }
    }

    /// `dim Hom(self, other)`: nullity of `(f_i) ↦ (f_t x_a - y_a f_s)_a`.
    pub fn hom_dim(&self, other: &QuiverRep<F>) -> Result<usize> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        let f = &self.field;
        let n = self.quiver.rank();
        // variable (i, r, c): entry (r, c) of f_i : F^{m_i} -> F^{n_i}
        let mut offset = vec![0usize; n + 1];
        for i in 0..n {
            offset[i + 1] = offset[i] + other.dims[i] * self.dims[i];
        }
        let vars = offset[n];
        if vars == 0 {
            return Ok(0);
        }
        let eqs: usize = self.quiver.arrows().iter().map(|&(s, t)| other.dims[t] * self.dims[s]).sum();
        let mut sys = Matrix::zeros(f, eqs, vars);
        let var = |i: usize, r: usize, c: usize| offset[i] + r * self.dims[i] + c;
        let mut row = 0;
        for (a, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            let (x, y) = (&self.mats[a], &other.mats[a]);
            for r in 0..other.dims[t] {
                for c in 0..self.dims[s] {
                    // (f_t x)[r][c] = Σ_k f_t[r][k] x[k][c]
                    for k in 0..self.dims[t] {
                        let v = f.add(sys.get(row, var(t, r, k)), x.get(k, c));
                        sys.set(row, var(t, r, k), v);
                    }
                    // -(y f_s)[r][c] = -Σ_k y[r][k] f_s[k][c]
                    for k in 0..other.dims[s] {
                        let v = f.sub(sys.get(row, var(s, k, c)), y.get(r, k));
                        sys.set(row, var(s, k, c), v);
                    }
                    row += 1;
                }
            }
        }
        Ok(vars - sys.rank(f))
    }

    /// Arrows `(index, other endpoint)` ending at `i`.
    fn incoming(&self, i: usize) -> Vec<(usize, usize)> {
        self.quiver.arrows().iter().enumerate().filter(|(_, &(_, t))| t == i).map(|(a, &(s, _))| (a, s)).collect()
    }

    fn outgoing(&self, i: usize) -> Vec<(usize, usize)> {
        self.quiver.arrows().iter().enumerate().filter(|(_, &(s, _))| s == i).map(|(a, &(_, t))| (a, t)).collect()
    }

    /// At a sink `i`: the map `⊕_{j->i} M_j -> M_i`.
    pub fn sink_map(&self, i: usize) -> Result<Matrix<F::Elem>> {
        if !self.quiver.is_sink(i) {
            return Err(Error::NotSink(i + 1));
        }
        let blocks: Vec<&Matrix<F::Elem>> = self.incoming(i).iter().map(|&(a, _)| &self.mats[a]).collect();
        Ok(Matrix::hstack(self.dims[i], &blocks))
    }

    /// At a source `i`: the map `M_i -> ⊕_{i->j} M_j`.
    pub fn source_map(&self, i: usize) -> Result<Matrix<F::Elem>> {
        if !self.quiver.is_source(i) {
            return Err(Error::NotSinkOrSource(i + 1));
        }
        let blocks: Vec<&Matrix<F::Elem>> = self.outgoing(i).iter().map(|&(a, _)| &self.mats[a]).collect();
        Ok(Matrix::vstack(self.dims[i], &blocks))
    }

    /// Whether `⊕_{j->i} M_j -> M_i` is onto, for a sink `i`.
    pub fn is_surjective_at_sink(&self, i: usize) -> Result<bool> {
        Ok(self.sink_map(i)?.rank(&self.field) == self.dims[i])
    }

    /// Whether `M_i -> ⊕_{i->j} M_j` is injective, for a source `i`.
    pub fn is_injective_at_source(&self, i: usize) -> Result<bool> {
        Ok(self.source_map(i)?.rank(&self.field) == self.dims[i])
    }

    /// BGP reflection functor at a sink or source `i`, giving a
    /// representation of `σ_i Q`.
    ///
    /// At a sink the new space at `i` is the kernel of `⊕_{j->i} M_j -> M_i`
    /// and the new arrows `i -> j` are the coordinate projections of the
    /// kernel. At a source it is the cokernel of `M_i -> ⊕_{i->j} M_j`,
    /// realised by a left-kernel basis, with arrows `j -> i` its blocks.
    pub fn bgp_reflect(&self, i: usize) -> Result<QuiverRep<F>> {
        self.quiver.datum().check_vertex(i)?;
        let f = &self.field;
        let new_quiver = self.quiver.reflect(i);
        let mut dims = self.dims.clone();
        let mut mats = self.mats.clone();
        if self.quiver.is_sink(i) {
            let incoming = self.incoming(i);
            let kernel = self.sink_map(i)?.kernel(f);
            dims[i] = kernel.cols();
            let mut start = 0;
            for (a, j) in incoming {
                mats[a] = kernel.row_block(start, self.dims[j]);
                start += self.dims[j];
            }
        } else if self.quiver.is_source(i) {
            let outgoing = self.outgoing(i);
            let coker = self.source_map(i)?.left_kernel(f);
            dims[i] = coker.rows();
            let mut start = 0;
            for (a, j) in outgoing {
                mats[a] = coker.col_block(start, self.dims[j]);
                start += self.dims[j];
            }
        } else {
            return Err(Error::NotSinkOrSource(i + 1));
        }
        QuiverRep::new(new_quiver, f.clone(), dims, mats)
    }

    /// Moves the representation to another field through the integers.
    /// Only meaningful when the entries are images of integers.
    pub fn map_entries<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<QuiverRep<G>> {
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let data = m.data().iter().map(&f).collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(m.rows(), m.cols(), data))
            })
            .collect::<Result<Vec<_>>>()?;
        QuiverRep::new(self.quiver.clone(), target, self.dims.clone(), mats)
    }
}

impl QuiverRep<Rationals> {
    /// Whether every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.mats.iter().all(|m| m.data().iter().all(|x| x.is_integer()))
    }

    /// Reduction of an integral representation into `target`.
    pub fn reduce<G: Field>(&self, target: G) -> Result<QuiverRep<G>> {
        self.map_entries(target.clone(), |x| {
            crate::field::rational_to_i64(x)
                .map(|v| target.of_i64(v))
                .ok_or_else(|| Error::Verification(format!("entry {x} is not a machine integer")))
        })
    }
}
