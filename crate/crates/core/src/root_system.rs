//! Simply-laced Cartan data, roots, coweights and reduced words.
//!
//! Vertices are numbered `1..=n` in every user-facing string and `0..n`
//! internally. The numbering of the Dynkin diagrams is fixed as follows:
//!
//! | type  | edges (1-based)                                              |
//! |-------|--------------------------------------------------------------|
//! | `A_n` | `i - (i+1)` for `1 <= i < n`                                 |
//! | `D_n` | `i - (i+1)` for `1 <= i < n-1`, plus `(n-2) - n`             |
//! | `E_n` | `1-3, 3-4, 4-5, 5-6, 2-4`, plus `6-7` (E7, E8) and `7-8` (E8) |
//!
//! So `D_4` has the branch vertex `2` with leaves `1, 3, 4`, and `E_n`
//! follows the Bourbaki labelling.
//!
//! Roots are integer vectors in the simple-root basis. Coweights are
//! integer vectors in the fundamental-coweight basis, so that the pairing
//! `<x, v>` is the dot product of coordinates and the coroot `α_i^∨` has the
//! `i`-th row of the Cartan matrix as coordinates.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `A3`, `a3`, `A_3`, `type = A3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut t = s.trim();
        if let Some(rest) = t.strip_prefix("type") {
            t = rest.trim_start().trim_start_matches('=').trim();
        }
        let bad = || Error::Parse(format!("unknown Dynkin type {s:?}"));
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        let ty = match letter {
            'A' => DynkinType::A(n),
            'D' => DynkinType::D(n),
            'E' => DynkinType::E(n),
            _ => return Err(bad()),
        };
        ty.check()?;
        Ok(ty)
    }
}

impl DynkinType {
    fn check(self) -> Result<()> {
        let ok = match self {
            DynkinType::A(n) => n >= 1,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDatum(format!("{self} is not a simply-laced finite type")))
        }
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// Edges of the diagram as 0-based pairs `(i, j)` with `i < j`, sorted.
    fn edges(self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = match self {
            DynkinType::A(n) => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinType::E(n) => {
                let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
                if n >= 7 {
                    e.push((5, 6));
                }
                if n == 8 {
                    e.push((6, 7));
                }
                e
            }
        };
        edges.sort_unstable();
        edges
    }
}

/// Positive root or general root-lattice vector, simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> RootVector {
        RootVector(self.0.iter().map(|a| a * k).collect())
    }

    /// The simple root index if this is `α_i`.
    pub fn simple_index(&self) -> Option<usize> {
        (self.height() == 1 && self.is_positive()).then(|| self.0.iter().position(|&c| c == 1).unwrap())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// Coweight-lattice vector in the fundamental-coweight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoweightVector(pub Vec<i64>);

impl CoweightVector {
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        CoweightVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        CoweightVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &CoweightVector) -> Self {
        CoweightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for CoweightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

pub(crate) fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Sequence of vertices `i_1, ..., i_m`, standing for `s_{i_1} ... s_{i_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    /// Builds a word from the 1-based vertex labels used in text.
    pub fn from_labels(labels: &[usize]) -> Self {
        Word(labels.iter().map(|&l| l - 1).collect())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.labels().iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// `2,1,2`, `(2,1,2)`, `2 1 2`, or `212` (single-digit labels only).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Parse(format!("bad word {s:?}"));
        let labels: Vec<usize> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' '])
                .filter(|p| !p.is_empty())
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if labels.contains(&0) {
            return Err(bad());
        }
        Ok(Word::from_labels(&labels))
    }
}

/// A simply-laced Cartan datum.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    label: DynkinType,
    matrix: Vec<Vec<i64>>,
    edges: Vec<(usize, usize)>,
    roots: OnceLock<Vec<RootVector>>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

impl Eq for CartanDatum {}

impl Hash for CartanDatum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.label.hash(state);
    }
}

impl FromStr for CartanDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CartanDatum::new(s.parse()?)
    }
}

impl CartanDatum {
    pub fn new(label: DynkinType) -> Result<Self> {
        label.check()?;
        let n = label.rank();
        let edges = label.edges();
        let mut matrix = vec![vec![0; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            matrix[i][j] = -1;
            matrix[j][i] = -1;
        }
        let datum = CartanDatum { label, matrix, edges, roots: OnceLock::new() };
        datum.validate()?;
        Ok(datum)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            if self.matrix[i][i] != 2 {
                return Err(Error::InvalidDatum("diagonal entry is not 2".into()));
            }
            for j in 0..n {
                if self.matrix[i][j] != self.matrix[j][i] || (i != j && !matches!(self.matrix[i][j], 0 | -1)) {
                    return Err(Error::InvalidDatum("matrix is not a simply-laced Cartan matrix".into()));
                }
            }
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in self.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidDatum("diagram is not connected".into()));
        }
        for k in 1..=n {
            let minor: Vec<Vec<i64>> = self.matrix[..k].iter().map(|r| r[..k].to_vec()).collect();
            if bareiss_det(minor) <= 0 {
                return Err(Error::InvalidDatum("Cartan matrix is not positive definite".into()));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> DynkinType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// Edges `(i, j)`, `i < j`, 0-based and sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.matrix[i][j] != 0)
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: i + 1, rank: self.rank() })
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|&i| self.check_vertex(i))
    }

    /// All positive roots, sorted by height and then by descending
    /// coordinates (so `α_1` precedes `α_2`).
    pub fn positive_roots(&self) -> &[RootVector] {
        self.roots.get_or_init(|| {
            let n = self.rank();
            let mut seen: HashSet<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
            let mut queue: VecDeque<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
            while let Some(r) = queue.pop_front() {
                for i in 0..n {
                    let s = self.reflect_root(i, &r);
                    if s.is_positive() && seen.insert(s.clone()) {
                        queue.push_back(s);
                    }
                }
            }
            let mut roots: Vec<RootVector> = seen.into_iter().collect();
            roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
            roots
        })
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots().len()
    }

    pub fn is_positive_root(&self, v: &RootVector) -> bool {
        v.0.len() == self.rank() && self.positive_roots().binary_search_by(|r| cmp_roots(r, v)).is_ok()
    }

    /// Index of a positive root in [`positive_roots`](Self::positive_roots).
    pub fn root_index(&self, v: &RootVector) -> Option<usize> {
        self.positive_roots().binary_search_by(|r| cmp_roots(r, v)).ok()
    }

    /// `<α_i^∨, v>`.
    pub fn coroot_pairing(&self, i: usize, v: &RootVector) -> i64 {
        self.matrix[i].iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    pub fn simple_coroot(&self, i: usize) -> CoweightVector {
        CoweightVector(self.matrix[i].clone())
    }

    /// `s_i(v) = v - <α_i^∨, v> α_i`.
    pub fn reflect_root(&self, i: usize, v: &RootVector) -> RootVector {
        let c = self.coroot_pairing(i, v);
        let mut out = v.clone();
        out.0[i] -= c;
        out
    }

    /// `s_i(x) = x - <x, α_i> α_i^∨`.
    pub fn reflect_coweight(&self, i: usize, x: &CoweightVector) -> CoweightVector {
        let c = x.0[i];
        CoweightVector(x.0.iter().zip(&self.matrix[i]).map(|(a, b)| a - c * b).collect())
    }

    /// Applies `s_{i_1} ... s_{i_m}` to a root (rightmost letter first).
    pub fn apply_word_root(&self, letters: &[usize], v: &RootVector) -> RootVector {
        letters.iter().rev().fold(v.clone(), |acc, &i| self.reflect_root(i, &acc))
    }

    pub fn apply_word_coweight(&self, letters: &[usize], x: &CoweightVector) -> CoweightVector {
        letters.iter().rev().fold(x.clone(), |acc, &i| self.reflect_coweight(i, &acc))
    }

    /// `<x, v>`.
    pub fn pairing(&self, x: &CoweightVector, v: &RootVector) -> i64 {
        x.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    /// The roots `β_k = s_{i_1} ... s_{i_{k-1}} α_{i_k}` of a word.
    pub fn beta_sequence(&self, w: &Word) -> Vec<RootVector> {
        let n = self.rank();
        (0..w.len()).map(|k| self.apply_word_root(&w.0[..k], &RootVector::simple(n, w.0[k]))).collect()
    }

    /// Whether every `β_k` of the word is a positive root.
    pub fn is_reduced(&self, w: &Word) -> bool {
        self.check_word(w).is_ok() && self.beta_sequence(w).iter().all(RootVector::is_positive)
    }

    /// Every reduced word of the longest element, by breadth-first search over
    /// the weak order, sorted lexicographically.
    pub fn reduced_words_of_w0(&self, cap: usize) -> Result<Vec<Word>> {
        let n = self.rank();
        let len = self.num_positive_roots();
        // state: images u(α_j) of the simple roots, flattened
        let identity: Vec<i64> = (0..n).flat_map(|j| RootVector::simple(n, j).0).collect();
        let mut layer: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::from([(identity, vec![vec![]])]);
        for _ in 0..len {
            let mut next: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
            let mut total = 0usize;
            for (state, words) in &layer {
                for i in 0..n {
                    let image_i = &state[i * n..(i + 1) * n];
                    if image_i.iter().any(|&c| c < 0) {
                        continue;
                    }
                    let mut new_state = state.clone();
                    for j in 0..n {
                        let a = self.matrix[i][j];
                        if a != 0 {
                            for c in 0..n {
                                new_state[j * n + c] -= a * image_i[c];
                            }
                        }
                    }
                    let bucket = next.entry(new_state).or_default();
                    for w in words {
                        let mut w2 = w.clone();
                        w2.push(i);
                        bucket.push(w2);
                        total += 1;
                    }
                }
                if total > cap {
                    return Err(Error::CapExceeded { what: "reduced words of w0", cap });
                }
            }
            layer = next;
        }
        let mut words: Vec<Word> = layer.into_values().flatten().map(Word).collect();
        words.sort();
        Ok(words)
    }

    /// The positive roots as an ordered set.
    pub fn root_set(&self) -> BTreeSet<RootVector> {
        self.positive_roots().iter().cloned().collect()
    }
}

fn cmp_roots(a: &RootVector, b: &RootVector) -> std::cmp::Ordering {
    a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0))
}

/// Integer determinant by fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<i64>>) -> i64 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}
