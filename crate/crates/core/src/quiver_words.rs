//! Orientations of Dynkin diagrams, sink reflections, adapted words and
//! commutation classes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::root_system::{CartanDatum, RootVector, Word};

/// An orientation of a Dynkin diagram.
///
/// Arrows are stored in the order of [`CartanDatum::edges`], so the `k`-th
/// arrow always orients the `k`-th edge. Reflection keeps this alignment,
/// which lets representations keep their per-arrow matrices in place.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    datum: Arc<CartanDatum>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Builds a quiver from 0-based arrows `(source, target)`; they must
    /// orient each edge of the diagram exactly once.
    pub fn new(datum: Arc<CartanDatum>, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut oriented = Vec::with_capacity(datum.edges().len());
        for &(i, j) in datum.edges() {
            let found: Vec<_> = arrows.iter().filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i)).collect();
            match found.as_slice() {
                [&a] => oriented.push(a),
                [] => return Err(Error::Parse(format!("edge {}-{} has no arrow", i + 1, j + 1))),
                _ => return Err(Error::Parse(format!("edge {}-{} has several arrows", i + 1, j + 1))),
            }
        }
        if arrows.len() != oriented.len() {
            let stray = arrows.iter().find(|a| !oriented.contains(a)).unwrap();
            return Err(Error::Parse(format!("arrow {} -> {} is not an edge of {}", stray.0 + 1, stray.1 + 1, datum.label())));
        }
        Ok(Quiver { datum, arrows: oriented })
    }

    /// Every edge `i - j` (`i < j`) oriented `i -> j`; for type A this is `1 -> 2 -> ... -> n`.
    pub fn linear(datum: Arc<CartanDatum>) -> Self {
        let arrows = datum.edges().to_vec();
        Quiver { datum, arrows }
    }

    /// All `2^|edges|` orientations, in a fixed order starting from [`linear`](Self::linear).
    pub fn all_orientations(datum: Arc<CartanDatum>) -> Vec<Quiver> {
        let edges = datum.edges().to_vec();
        (0..1u64 << edges.len())
            .map(|mask| {
                let arrows = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| if mask >> k & 1 == 0 { (i, j) } else { (j, i) })
                    .collect();
                Quiver { datum: datum.clone(), arrows }
            })
            .collect()
    }

    /// Parses the quiver file format:
    ///
    /// ```text
    /// # comment
    /// type A3
    /// 1 -> 2
    /// 3 -> 2
    /// ```
    ///
    /// `orientation linear` may replace the arrow lines.
    pub fn parse_spec(text: &str) -> Result<Self> {
        let mut datum: Option<Arc<CartanDatum>> = None;
        let mut arrows = Vec::new();
        let mut linear = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("type") {
                if datum.is_some() {
                    return Err(err("duplicate type line".into()));
                }
                datum = Some(Arc::new(rest.trim().trim_start_matches('=').trim().parse().map_err(|e: Error| err(e.to_string()))?));
            } else if let Some(rest) = line.strip_prefix("orientation") {
                if rest.trim() != "linear" {
                    return Err(err(format!("unknown orientation {:?}", rest.trim())));
                }
                linear = true;
            } else if let Some((s, t)) = line.split_once("->") {
                let d = datum.as_ref().ok_or_else(|| err("arrow before type line".into()))?;
                let parse = |x: &str| -> Result<usize> {
                    let v: usize = x.trim().parse().map_err(|_| err(format!("bad vertex {:?}", x.trim())))?;
                    if v == 0 || v > d.rank() {
                        return Err(err(format!("vertex {v} out of range")));
                    }
                    Ok(v - 1)
                };
                arrows.push((parse(s)?, parse(t)?));
            } else {
                return Err(err(format!("unrecognised line {line:?}")));
            }
        }
        let datum = datum.ok_or_else(|| Error::Parse("missing type line".into()))?;
        if linear {
            if !arrows.is_empty() {
                return Err(Error::Parse("orientation linear cannot be combined with arrows".into()));
            }
            return Ok(Quiver::linear(datum));
        }
        Quiver::new(datum, &arrows)
    }

    /// `A3linear`, `D4linear`, ...: the [`linear`](Self::linear) orientation of a type.
    pub fn from_shorthand(s: &str) -> Result<Self> {
        let ty = s.strip_suffix("linear").ok_or_else(|| Error::Parse(format!("unknown quiver shorthand {s:?}")))?;
        Ok(Quiver::linear(Arc::new(ty.parse()?)))
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Arrows `(source, target)`, 0-based, aligned with the diagram edges.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != i)
    }

    pub fn sinks(&self) -> BTreeSet<usize> {
        (0..self.rank()).filter(|&i| self.is_sink(i)).collect()
    }

    pub fn sources(&self) -> BTreeSet<usize> {
        (0..self.rank()).filter(|&i| self.is_source(i)).collect()
    }

    /// `σ_i`: reverses every arrow incident to `i`.
    pub fn reflect(&self, i: usize) -> Quiver {
        let arrows = self.arrows.iter().map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) }).collect();
        Quiver { datum: self.datum.clone(), arrows }
    }

    /// Whether each letter is a sink of the quiver reflected at all earlier letters.
    pub fn is_adapted(&self, w: &Word) -> bool {
        let mut q = self.clone();
        for &i in w.letters() {
            if i >= self.rank() || !q.is_sink(i) {
                return false;
            }
            q = q.reflect(i);
        }
        true
    }

    /// A reduced word of `w0` adapted to this quiver.
    ///
    /// Greedy: at each step take the least-index sink whose letter keeps the
    /// word reduced, append it and reflect. The result is verified before it
    /// is returned.
    pub fn adapted_word_of_w0(&self) -> Result<Word> {
        let d = self.datum();
        let n = d.rank();
        let target = d.num_positive_roots();
        let mut q = self.clone();
        let mut letters = Vec::with_capacity(target);
        while letters.len() < target {
            let next = q
                .sinks()
                .into_iter()
                .find(|&i| d.apply_word_root(&letters, &RootVector::simple(n, i)).is_positive())
                .ok_or_else(|| Error::Verification(format!("greedy adapted word stuck after {letters:?}")))?;
            letters.push(next);
            q = q.reflect(next);
        }
        let word = Word(letters);
        if !d.is_reduced(&word) || !self.is_adapted(&word) {
            return Err(Error::Verification(format!("adapted word {word} failed verification")));
        }
        let betas: BTreeSet<RootVector> = d.beta_sequence(&word).into_iter().collect();
        if betas != d.root_set() {
            return Err(Error::Verification(format!("β-sequence of {word} does not exhaust the positive roots")));
        }
        Ok(word)
    }

    /// The quiver file rendering of this orientation.
    pub fn to_spec(&self) -> String {
        let mut out = format!("type {}\n", self.datum.label());
        for &(s, t) in &self.arrows {
            out.push_str(&format!("{} -> {}\n", s + 1, t + 1));
        }
        out
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.arrows.iter().map(|&(s, t)| format!("{}->{}", s + 1, t + 1)).collect();
        write!(f, "{}[{}]", self.datum.label(), arrows.join(","))
    }
}

/// All words reachable from `w` by swapping adjacent commuting letters.
pub fn commutation_class(datum: &CartanDatum, w: &Word, cap: usize) -> Result<BTreeSet<Word>> {
    datum.check_word(w)?;
    if !datum.is_reduced(w) {
        return Err(Error::NotReduced(w.to_string()));
    }
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for k in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur.0[k], cur.0[k + 1]);
            if a != b && datum.entry(a, b) == 0 {
                let mut next = cur.clone();
                next.0.swap(k, k + 1);
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "commutation class", cap });
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Splits a list of reduced words into commutation classes.
pub fn commutation_classes(datum: &CartanDatum, words: &[Word], cap: usize) -> Result<Vec<BTreeSet<Word>>> {
    let mut classes: Vec<BTreeSet<Word>> = Vec::new();
    for w in words {
        if classes.iter().any(|c| c.contains(w)) {
            continue;
        }
        classes.push(commutation_class(datum, w, cap)?);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> Arc<CartanDatum> {
        Arc::new(format!("A{n}").parse().unwrap())
    }

    fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        let zero_based: Vec<_> = arrows.iter().map(|&(s, t)| (s - 1, t - 1)).collect();
        Quiver::new(a(n), &zero_based).unwrap()
    }

    #[test]
    fn sinks_and_sources() {
        let q = quiver(2, &[(1, 2)]);
        assert_eq!(q.sinks(), BTreeSet::from([1]));
        assert_eq!(q.sources(), BTreeSet::from([0]));
        assert_eq!(quiver(3, &[(1, 2), (2, 3)]).sinks(), BTreeSet::from([2]));
        let zig = quiver(3, &[(1, 2), (3, 2)]);
        assert_eq!(zig.sinks(), BTreeSet::from([1]));
        assert_eq!(zig.sources(), BTreeSet::from([0, 2]));
    }

    #[test]
    fn reflection_flips_incident_arrows() {
        let q = quiver(2, &[(1, 2)]);
        assert_eq!(q.reflect(1), quiver(2, &[(2, 1)]));
        assert_eq!(q.reflect(1).reflect(1), q);
        let lin = quiver(3, &[(1, 2), (2, 3)]);
        assert_eq!(lin.reflect(1), quiver(3, &[(2, 1), (3, 2)]));
    }

    #[test]
    fn adaptedness() {
        let q = quiver(2, &[(1, 2)]);
        assert!(q.is_adapted(&Word::from_labels(&[2, 1, 2])));
        assert!(!q.is_adapted(&Word::from_labels(&[1, 2, 1])));
        assert!(q.is_adapted(&Word::default()));
    }

    #[test]
    fn greedy_adapted_words() {
        assert_eq!(quiver(2, &[(1, 2)]).adapted_word_of_w0().unwrap(), Word::from_labels(&[2, 1, 2]));
        assert_eq!(quiver(2, &[(2, 1)]).adapted_word_of_w0().unwrap(), Word::from_labels(&[1, 2, 1]));
        let lin = quiver(3, &[(1, 2), (2, 3)]);
        let w = lin.adapted_word_of_w0().unwrap();
        assert_eq!(w.len(), 6);
        assert!(lin.is_adapted(&w) && lin.datum().is_reduced(&w));
    }

    #[test]
    fn adapted_words_for_every_orientation() {
        for ty in ["A1", "A2", "A3", "A4", "D4", "D5", "E6"] {
            let d: Arc<CartanDatum> = Arc::new(ty.parse().unwrap());
            for q in Quiver::all_orientations(d.clone()) {
                let w = q.adapted_word_of_w0().unwrap_or_else(|e| panic!("{q}: {e}"));
                assert!(q.is_adapted(&w) && d.is_reduced(&w), "{q}");
            }
        }
    }

    #[test]
    fn parse_quiver_files() {
        let q = Quiver::parse_spec("# zigzag\ntype A3\n1 -> 2\n3 -> 2\n").unwrap();
        assert_eq!(q, quiver(3, &[(1, 2), (3, 2)]));
        assert_eq!(Quiver::parse_spec(&q.to_spec()).unwrap(), q);
        let lin = Quiver::parse_spec("type A3\norientation linear\n").unwrap();
        assert_eq!(lin, quiver(3, &[(1, 2), (2, 3)]));
        assert_eq!(Quiver::from_shorthand("A3linear").unwrap(), lin);
        assert!(Quiver::parse_spec("type A3\n1 -> 2\n").is_err());
        assert!(Quiver::parse_spec("type A3\n1 -> 3\n2 -> 3\n").is_err());
        assert!(Quiver::parse_spec("type A2\n1 -> 2\n2 -> 1\n").is_err());
        assert!(Quiver::parse_spec("1 -> 2\n").is_err());
    }

    #[test]
    fn commutation_classes_in_a2_and_a3() {
        let d2 = a(2);
        let w = Word::from_labels(&[2, 1, 2]);
        assert_eq!(commutation_class(&d2, &w, 10).unwrap(), BTreeSet::from([w]));

        let d3 = a(3);
        let words = d3.reduced_words_of_w0(100).unwrap();
        let classes = commutation_classes(&d3, &words, 100).unwrap();
        let union: BTreeSet<Word> = classes.iter().flatten().cloned().collect();
        assert_eq!(union.len(), 16);
        assert_eq!(classes.iter().map(BTreeSet::len).sum::<usize>(), 16);
        let w = Word::from_labels(&[1, 3, 2, 1, 3, 2]);
        let class = commutation_class(&d3, &w, 100).unwrap();
        assert!(class.contains(&Word::from_labels(&[3, 1, 2, 1, 3, 2])));
        assert!(class.contains(&Word::from_labels(&[3, 1, 2, 3, 1, 2])));
        // symmetric membership
        for v in &class {
            assert!(commutation_class(&d3, v, 100).unwrap().contains(&w));
        }
    }

    #[test]
    fn commutation_class_rejects_non_reduced() {
        assert!(matches!(commutation_class(&a(2), &Word::from_labels(&[1, 1]), 10), Err(Error::NotReduced(_))));
    }
}
