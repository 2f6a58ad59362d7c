//! Endomorphisms of free groups given by generator images.

use std::fmt;

use crate::error::WordError;
use crate::folding::FoldedGraph;
use crate::word::{push_reduced, words_of_length, Basis, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    basis: Basis,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(basis: Basis, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != basis.rank() {
            return Err(WordError::ImageCount { rank: basis.rank(), got: images.len() });
        }
        for w in &images {
            basis.check(w)?;
        }
        Ok(Endomorphism { basis, images })
    }

    /// Parses images written with the basis' word syntax, in generator order.
    pub fn parse(basis: Basis, images: &[&str]) -> Result<Self, WordError> {
        let images = images.iter().map(|s| basis.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(basis, images)
    }

    pub fn identity(basis: Basis) -> Self {
        let images = (0..basis.rank()).map(|g| Word::letter(Letter::new(g, false))).collect();
        Endomorphism { basis, images }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn image_of_letter(&self, l: Letter) -> Word {
        let w = &self.images[l.generator()];
        if l.is_inverse() {
            w.inverse()
        } else {
            w.clone()
        }
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    /// The reduced image φ(W).
    pub fn apply(&self, w: &Word) -> Word {
        Word::from_reduced(self.apply_letters(w.letters()))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        for &l in letters {
            let img = &self.images[l.generator()];
            if l.is_inverse() {
                push_reduced(&mut out, img.letters().iter().rev().map(|x| x.inverse()));
            } else {
                push_reduced(&mut out, img.letters().iter().copied());
            }
        }
        out
    }

    /// Basis-checked application.
    pub fn apply_checked(&self, w: &Word) -> Result<Word, WordError> {
        self.basis.check(w)?;
        Ok(self.apply(w))
    }

    /// `self ∘ other`: g ↦ self(other(g)).
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism, WordError> {
        if self.basis != other.basis {
            return Err(WordError::BasisMismatch);
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        Ok(Endomorphism { basis: self.basis.clone(), images })
    }

    /// `i_c ∘ self`: g ↦ c·φ(g)·c⁻¹.
    pub fn inner_twist(&self, c: &Word) -> Endomorphism {
        let ci = c.inverse();
        let images = self.images.iter().map(|w| c.mul(w).mul(&ci)).collect();
        Endomorphism { basis: self.basis.clone(), images }
    }

    /// `i_c ∘ self ∘ i_c⁻¹`, the similar endomorphism.
    pub fn conjugate_by_inner(&self, c: &Word) -> Endomorphism {
        let ci = c.inverse();
        let inner_inv: Vec<Word> = (0..self.rank())
            .map(|g| ci.mul(&Word::letter(Letter::new(g, false))).mul(c))
            .collect();
        let images = inner_inv
            .iter()
            .map(|w| c.mul(&self.apply(w)).mul(&ci))
            .collect();
        Endomorphism { basis: self.basis.clone(), images }
    }

    /// Folded graph of the image subgroup ⟨φ(g₁), …, φ(gₙ)⟩.
    pub fn image_subgroup(&self) -> FoldedGraph {
        FoldedGraph::from_words(&self.images)
    }

    /// φ is injective iff its image subgroup has rank n (free groups are Hopfian).
    pub fn is_injective(&self) -> bool {
        self.images.iter().all(|w| !w.is_identity()) && self.image_subgroup().rank() == self.rank()
    }

    /// Matrix with `m[j][i]` = exponent sum of generator j in φ(gᵢ).
    pub fn abelianization(&self) -> IntegerMatrix {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for (i, w) in self.images.iter().enumerate() {
            for (j, s) in w.exponent_sums(n).into_iter().enumerate() {
                m[j][i] = s;
            }
        }
        IntegerMatrix(m)
    }

    pub fn trace(&self) -> i64 {
        self.abelianization().trace()
    }

    /// A certified cancellation bound: `B = Σᵢ |φ(gᵢ)|`.
    ///
    /// The rose with petal lengths `|φ(gᵢ)|` maps 1-Lipschitz onto the core graph of
    /// the image subgroup, so the bounded cancellation lemma gives `Lip · vol = Σᵢ |φ(gᵢ)|`.
    pub fn cancellation_bound(&self) -> Result<usize, WordError> {
        if !self.is_injective() {
            return Err(WordError::NotInjective);
        }
        Ok(self.images.iter().map(Word::len).sum())
    }

    /// Largest cancellation observed over all cancellation-free products `W·V`
    /// with `|W|, |V| ≤ max_len`. A lower bound on the sharp constant; it is not a
    /// certificate by itself.
    pub fn observed_cancellation(&self, max_len: usize) -> usize {
        let n = self.rank();
        let mut best = 0;
        let mut by_len: Vec<Vec<(Word, Word)>> = Vec::new();
        for len in 0..=max_len {
            by_len.push(
                words_of_length(n, len)
                    .into_iter()
                    .map(|w| {
                        let img = self.apply(&w);
                        (w, img)
                    })
                    .collect(),
            );
        }
        for ws in by_len.iter().skip(1) {
            for (w, fw) in ws {
                for vs in by_len.iter().skip(1) {
                    for (v, fv) in vs {
                        if w.last() == v.first().map(|l| l.inverse()) {
                            continue;
                        }
                        best = best.max(fw.cancellation_with(fv));
                    }
                }
            }
        }
        best
    }

    /// Searches `u` with `|u| ≤ depth` in length-lexicographic order for
    /// `w′ = u·w·φ(u)⁻¹`.
    pub fn route_equivalent(&self, w: &Word, w_prime: &Word, depth: i64) -> Result<RouteSearch, WordError> {
        if depth < 0 {
            return Err(WordError::NegativeDepth);
        }
        self.basis.check(w)?;
        self.basis.check(w_prime)?;
        for len in 0..=depth as usize {
            for u in words_of_length(self.rank(), len) {
                let candidate = u.mul(w).mul(&self.apply(&u).inverse());
                if &candidate == w_prime {
                    return Ok(RouteSearch::Equivalent(u));
                }
            }
        }
        Ok(RouteSearch::NoWitness { depth: depth as usize })
    }

    pub fn format_images(&self) -> String {
        (0..self.rank())
            .map(|g| format!("{}->{}", self.basis.name(g), self.basis.format(&self.images[g])))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_images())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RouteSearch {
    Equivalent(Word),
    NoWitness { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix(pub Vec<Vec<i64>>);

impl IntegerMatrix {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim()).map(|i| self.0[i][i]).sum()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let n = self.dim();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        IntegerMatrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex4() -> Endomorphism {
        Endomorphism::parse(Basis::alphabetic(2), &["A", "Abb"]).unwrap()
    }

    fn ex2() -> Endomorphism {
        Endomorphism::parse(Basis::alphabetic(2), &["a", "Bab"]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let phi = ex4();
        let b = phi.basis().clone();
        let w = b.parse("B").unwrap();
        assert_eq!(b.format(&phi.apply(&w)), "BBa");
        assert_eq!(b.format(&phi.apply(&phi.apply(&w))), "BBaBB");
        let id = Endomorphism::identity(b.clone());
        let w = b.parse("abABBa").unwrap();
        assert_eq!(id.apply(&w), w);
    }

    #[test]
    fn twists_and_composition() {
        let phi = ex2();
        let b = phi.basis().clone();
        assert_eq!(phi.inner_twist(&Word::identity()), phi);
        let id = Endomorphism::identity(b.clone());
        let a = b.parse("a").unwrap();
        assert_eq!(b.format(&id.inner_twist(&a).image(1).clone()), "abA");
        // (i_a∘φ)∘i_c = i_{a·φ(c)}∘φ for c = a
        let lhs = phi.inner_twist(&a).compose(&id.inner_twist(&a)).unwrap();
        let rhs = phi.inner_twist(&a.mul(&phi.apply(&a)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn injectivity() {
        let r1 = Basis::alphabetic(1);
        for k in -3i64..=3 {
            let g = Word::letter(Letter::new(0, false)).pow(k);
            let phi = Endomorphism::new(r1.clone(), vec![g]).unwrap();
            assert_eq!(phi.is_injective(), k != 0, "k = {k}");
        }
        assert!(ex2().is_injective());
        assert!(!Endomorphism::parse(Basis::alphabetic(2), &["a", "a"]).unwrap().is_injective());
    }

    #[test]
    fn traces() {
        assert_eq!(Endomorphism::identity(Basis::alphabetic(3)).trace(), 3);
        assert_eq!(ex4().trace(), 1);
        let ex3 = Endomorphism::parse(Basis::alphabetic(2), &["b", "A"]).unwrap();
        assert_eq!(ex3.trace(), 0);
    }

    #[test]
    fn cancellation_bound_rejects_non_injective() {
        let phi = Endomorphism::parse(Basis::alphabetic(2), &["a", "a"]).unwrap();
        assert_eq!(phi.cancellation_bound(), Err(WordError::NotInjective));
        assert_eq!(ex2().cancellation_bound(), Ok(4));
    }

    #[test]
    fn route_search() {
        let phi = ex2();
        let b = phi.basis().clone();
        let w = b.parse("ab").unwrap();
        assert_eq!(phi.route_equivalent(&w, &w, 3), Ok(RouteSearch::Equivalent(Word::identity())));
        let id = Endomorphism::identity(b.clone());
        let r = id.route_equivalent(&b.parse("a").unwrap(), &b.parse("baB").unwrap(), 2).unwrap();
        assert_eq!(r, RouteSearch::Equivalent(b.parse("b").unwrap()));
        assert_eq!(id.route_equivalent(&w, &w, -1), Err(WordError::NegativeDepth));
    }
}
