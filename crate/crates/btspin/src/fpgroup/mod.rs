//! Finitely presented groups with distinguished peripheral words.
//!
//! Words are sequences of `(generator index, exponent)` letters kept in
//! freely reduced form, so inverses and concatenation are structural and
//! no string parsing ambiguity exists.  Presentations carry optional
//! meridian and longitude words.  The verification backend is
//! abelianization through Smith normal form plus exhaustive
//! homomorphism counting into symmetric groups of degree at most 6;
//! there is deliberately no coset enumeration, so triviality evidence is
//! always reported as partial.

mod homcount;
mod intmat;

use std::fmt;

use thiserror::Error;

#[cfg(feature = "parallel")]
pub use homcount::count_homs_symmetric_par;
pub use homcount::{count_homs_symmetric, count_homs_symmetric_seq, MAX_DEGREE};
pub use intmat::{smith_normal_form, IntMat, Snf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("hom counting is capped at degree {max}, got {0}", max = MAX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("presentation has {0} generators, enumeration supports at most 16")]
    TooManyGenerators(usize),
    #[error("word references generator {index}, presentation has {gens}")]
    GeneratorOutOfRange { index: usize, gens: usize },
}

/// A freely reduced word over indexed generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word {
            letters: vec![(index, 1)],
        }
    }

    /// Builds a word from raw letters, freely reducing on the way.  This
    /// is the reduction operation: it is idempotent and canonical.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((g2, e2)) if *g2 == g => {
                    *e2 += e;
                    if *e2 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        if e == 0 {
            return Word::empty();
        }
        let base = if e > 0 { self.clone() } else { self.inverse() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Total exponent of each generator.
    pub fn exponent_sums(&self, gens: usize) -> Vec<i64> {
        let mut sums = vec![0; gens];
        for &(g, e) in &self.letters {
            sums[g] += e;
        }
        sums
    }

    /// Renumbers generators through `map` (new index per old index).
    pub fn remap(&self, map: &[usize]) -> Word {
        Word::from_letters(self.letters.iter().map(|&(g, e)| (map[g], e)))
    }
}

/// Canonical freely reduced form of a raw letter sequence.
pub fn free_reduce(letters: impl IntoIterator<Item = (usize, i64)>) -> Word {
    Word::from_letters(letters)
}

/// Generators, relators and optional peripheral words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    meridian: Option<Word>,
    longitude: Option<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>) -> Self {
        GroupPresentation {
            generators,
            ..Default::default()
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> Option<&Word> {
        self.meridian.as_ref()
    }

    pub fn longitude(&self) -> Option<&Word> {
        self.longitude.as_ref()
    }

    pub fn set_meridian(&mut self, w: Word) {
        self.meridian = Some(w);
    }

    pub fn set_longitude(&mut self, w: Word) {
        self.longitude = Some(w);
    }

    fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        if let Some(max) = w.max_generator() {
            if max >= self.generators.len() {
                return Err(GroupError::GeneratorOutOfRange {
                    index: max,
                    gens: self.generators.len(),
                });
            }
        }
        Ok(())
    }

    /// Appends a relator without validation; for words built in-index.
    pub fn push_relator(&mut self, w: Word) {
        debug_assert!(self.check_word(&w).is_ok());
        self.relators.push(w);
    }

    /// Adds a generator, returning its index.  The name is made unique by
    /// suffixing a counter if needed.
    pub fn add_generator(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        let mut counter = 0usize;
        while self.generators.iter().any(|g| g == &name) {
            counter += 1;
            name = format!("{base}{counter}");
        }
        self.generators.push(name);
        self.generators.len() - 1
    }

    /// Returns a presentation extended by the given relators.
    pub fn add_relators(
        &self,
        words: impl IntoIterator<Item = Word>,
    ) -> Result<GroupPresentation, GroupError> {
        let mut out = self.clone();
        for w in words {
            out.check_word(&w)?;
            out.relators.push(w);
        }
        Ok(out)
    }

    /// Extends by a central generator `h`: one new generator plus a
    /// commutator relator with every existing generator.  Realizes the
    /// product with an infinite cyclic circle factor.
    pub fn adjoin_central_generator(&self) -> (GroupPresentation, usize) {
        let mut out = self.clone();
        let h = out.add_generator("h");
        for g in 0..h {
            out.relators
                .push(Word::from_letters([(g, 1), (h, 1), (g, -1), (h, -1)]));
        }
        (out, h)
    }

    /// The exponent-sum matrix: one row per relator, one column per
    /// generator.
    pub fn relation_matrix(&self) -> IntMat {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|rel| rel.exponent_sums(self.generators.len()))
            .collect();
        let mut m = IntMat::zeros(self.relators.len(), self.generators.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                m[(i, j)] = (*s).into();
            }
        }
        m
    }

    /// Invariants of the abelianized group, via Smith normal form of the
    /// exponent-sum matrix.
    pub fn abelianization(&self) -> AbelianInvariants {
        let snf = smith_normal_form(&self.relation_matrix());
        let factors = snf.invariant_factors();
        AbelianInvariants {
            rank: self.generators.len() - factors.len(),
            torsion: factors
                .iter()
                .filter(|d| **d > 1.into())
                .map(|d| i64::try_from(d).expect("torsion of a small presentation fits i64"))
                .collect(),
        }
    }

    /// Same generators, with all pairwise commutators added: a
    /// presentation of the abelianization.
    pub fn abelianized_presentation(&self) -> GroupPresentation {
        let mut out = self.clone();
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                out.relators
                    .push(Word::from_letters([(i, 1), (j, 1), (i, -1), (j, -1)]));
            }
        }
        out
    }

    /// Exact count of homomorphisms into the symmetric group of degree
    /// `k` (at most 6), by exhaustive enumeration.
    pub fn count_homs_symmetric(&self, k: usize) -> Result<u64, GroupError> {
        count_homs_symmetric(self, k)
    }

    /// Renders a word with named generators; uppercase marks inverses.
    pub fn render_word(&self, w: &Word) -> String {
        let mut parts = Vec::new();
        for &(g, e) in w.letters() {
            let name = &self.generators[g];
            let token = if e > 0 {
                name.clone()
            } else {
                name.to_uppercase()
            };
            for _ in 0..e.unsigned_abs() {
                parts.push(token.clone());
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for rel in &self.relators {
            writeln!(f, "rel: {}", self.render_word(rel))?;
        }
        if let Some(m) = &self.meridian {
            writeln!(f, "meridian: {}", self.render_word(m))?;
        }
        if let Some(l) = &self.longitude {
            writeln!(f, "longitude: {}", self.render_word(l))?;
        }
        Ok(())
    }
}

/// Rank and torsion of a finitely generated abelian group, torsion in
/// divisibility-chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torsion = self
            .torsion
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "rank {}, torsion [{}]", self.rank, torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GroupPresentation {
        let mut p = GroupPresentation::new(vec!["x".into(), "y".into()]);
        p.push_relator(Word::from_letters([
            (0, 1),
            (1, 1),
            (0, 1),
            (1, -1),
            (0, -1),
            (1, -1),
        ]));
        p.set_meridian(Word::generator(0));
        p
    }

    #[test]
    fn free_reduction_cancels() {
        assert!(free_reduce([(0, 1), (0, -1)]).is_empty());
        assert_eq!(
            free_reduce([(0, 1), (1, 1), (1, -1), (0, 1)]),
            Word::from_letters([(0, 2)])
        );
        let w = Word::from_letters([(0, 2), (1, -1), (0, 1)]);
        assert_eq!(free_reduce(w.letters().iter().copied()), w);
    }

    #[test]
    fn inverse_and_concat() {
        let w = Word::from_letters([(0, 2), (1, -1)]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.pow(-1), w.inverse());
        assert_eq!(w.pow(0), Word::empty());
        assert_eq!(w.pow(2), w.concat(&w));
    }

    #[test]
    fn abelianization_examples() {
        let t = trefoil();
        assert_eq!(
            t.abelianization(),
            AbelianInvariants {
                rank: 1,
                torsion: vec![]
            }
        );

        let mut c5 = GroupPresentation::new(vec!["x".into()]);
        c5.push_relator(Word::from_letters([(0, 5)]));
        assert_eq!(
            c5.abelianization(),
            AbelianInvariants {
                rank: 0,
                torsion: vec![5]
            }
        );

        let empty = GroupPresentation::new(vec![]);
        assert!(empty.abelianization().is_trivial());
    }

    #[test]
    fn abelianization_invariant_under_rewrites() {
        let t = trefoil();
        let base = t.abelianization();

        // Relator inversion.
        let mut inv = GroupPresentation::new(t.generators().to_vec());
        inv.push_relator(t.relators()[0].inverse());
        assert_eq!(inv.abelianization(), base);

        // Redundant zero-exponent relator (a commutator).
        let extra = t
            .add_relators([Word::from_letters([(0, 1), (1, 1), (0, -1), (1, -1)])])
            .unwrap();
        assert_eq!(extra.abelianization(), base);
    }

    #[test]
    fn adjoin_central_generator_counts() {
        let (ext, h) = trefoil().adjoin_central_generator();
        assert_eq!(ext.num_generators(), 3);
        assert_eq!(ext.relators().len(), 3);
        assert_eq!(ext.generators()[h], "h");

        let (free_ext, _) = GroupPresentation::new(vec!["x".into()]).adjoin_central_generator();
        assert_eq!(free_ext.num_generators(), 2);
        assert_eq!(free_ext.relators().len(), 1);

        let (empty_ext, _) = GroupPresentation::new(vec![]).adjoin_central_generator();
        assert_eq!(empty_ext.num_generators(), 1);
        assert!(empty_ext.relators().is_empty());

        // Name collision bumps the suffix.
        let (clash, h2) = GroupPresentation::new(vec!["h".into()]).adjoin_central_generator();
        assert_eq!(clash.generators()[h2], "h1");
    }

    #[test]
    fn add_relators_validates_indices() {
        let t = trefoil();
        assert!(matches!(
            t.add_relators([Word::generator(5)]),
            Err(GroupError::GeneratorOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn hom_count_invariant_under_redundant_relators() {
        // Adding a relator derivable in the abelianized sense (here an
        // honest consequence) must not change the count.
        let t = trefoil();
        let base = t.count_homs_symmetric(3).unwrap();
        let doubled = t.add_relators([t.relators()[0].clone()]).unwrap();
        assert_eq!(doubled.count_homs_symmetric(3).unwrap(), base);

        let conj = t
            .add_relators([Word::from_letters(
                std::iter::once((1, 1))
                    .chain(t.relators()[0].letters().iter().copied())
                    .chain(std::iter::once((1, -1))),
            )])
            .unwrap();
        assert_eq!(conj.count_homs_symmetric(3).unwrap(), base);
    }

    #[test]
    fn knot_group_peripheral_invariants() {
        let t = trefoil();
        let ab = t.abelianization();
        assert!(ab.is_infinite_cyclic());
        // The meridian exponent vector generates the abelianization.
        let sums = t.meridian().unwrap().exponent_sums(2);
        assert_eq!(sums, vec![1, 0]);
    }

    #[test]
    fn render_word_uppercases_inverses() {
        let t = trefoil();
        assert_eq!(t.render_word(&t.relators()[0]), "x y x Y X Y");
        assert_eq!(t.render_word(&Word::from_letters([(0, 2)])), "x x");
    }
}
