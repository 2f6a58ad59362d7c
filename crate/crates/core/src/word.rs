//! Reduced words in a free group over a named basis.

use std::fmt;

use crate::error::WordError;

/// A signed generator: `Letter(i + 1)` is generator `i`, `Letter(-(i + 1))` its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let v = generator as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Index into a table of `2n` signed letters: `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub fn slot(self) -> usize {
        2 * self.generator() + self.is_inverse() as usize
    }

    pub fn from_slot(slot: usize) -> Self {
        Letter::new(slot / 2, slot % 2 == 1)
    }

    /// Order used for length-lexicographic enumeration: a < A < b < B < ...
    pub fn rank_key(self) -> usize {
        self.slot()
    }
}

/// Free generating set of a free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    letters: Vec<String>,
}

impl Basis {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(WordError::EmptyBasis);
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() {
                return Err(WordError::BadGeneratorName(l.clone()));
            }
            if letters[..i].contains(l) {
                return Err(WordError::DuplicateGenerator(l.clone()));
            }
        }
        Ok(Basis { letters })
    }

    /// The basis `a, b, c, ...` of the given rank (rank ≤ 26).
    pub fn alphabetic(rank: usize) -> Self {
        assert!((1..=26).contains(&rank), "alphabetic basis needs 1 ≤ rank ≤ 26");
        Basis {
            letters: (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.letters[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// True when every generator is a single lowercase ASCII letter, so the
    /// case convention (`A` = `a⁻¹`) applies.
    pub fn is_case_convention(&self) -> bool {
        self.letters
            .iter()
            .all(|l| l.len() == 1 && l.as_bytes()[0].is_ascii_lowercase())
    }

    /// Parse a word. With single-letter generators the case convention applies
    /// (`"abA"` = a·b·a⁻¹); otherwise tokens are whitespace separated with an
    /// optional `^-1` or `-` suffix for inverses.
    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        let mut raw = Vec::new();
        if self.is_case_convention() {
            for ch in text.chars() {
                if ch.is_whitespace() || ch == '.' || ch == '1' && text.trim() == "1" {
                    continue;
                }
                let lower = ch.to_ascii_lowercase().to_string();
                let g = self
                    .index_of(&lower)
                    .ok_or_else(|| WordError::UnknownGenerator(ch.to_string()))?;
                raw.push(Letter::new(g, ch.is_ascii_uppercase()));
            }
        } else {
            for tok in text.split_whitespace() {
                let (name, inv) = if let Some(n) = tok.strip_suffix("^-1") {
                    (n, true)
                } else if let Some(n) = tok.strip_suffix('-') {
                    (n, true)
                } else {
                    (tok, false)
                };
                let g = self
                    .index_of(name)
                    .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
                raw.push(Letter::new(g, inv));
            }
        }
        Ok(Word::reduce(raw))
    }

    pub fn format(&self, w: &Word) -> String {
        self.format_letters(w.letters())
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if self.is_case_convention() {
            letters
                .iter()
                .map(|l| {
                    let c = self.letters[l.generator()].as_bytes()[0] as char;
                    if l.is_inverse() {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect()
        } else {
            letters
                .iter()
                .map(|l| {
                    let n = &self.letters[l.generator()];
                    if l.is_inverse() {
                        format!("{n}^-1")
                    } else {
                        n.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.letters().iter().find(|l| l.generator() >= self.rank()) {
            Some(l) => Err(WordError::UnknownGenerator(format!("#{}", l.generator()))),
            None => Ok(()),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Free reduction by a single stack scan.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        push_reduced(&mut out, raw);
        Word(out)
    }

    /// Wraps letters the caller knows to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(is_reduced(&letters));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.0.clone();
        push_reduced(&mut out, other.0.iter().copied());
        Word(out)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn prefix(&self, m: usize) -> Word {
        Word(self.0[..m.min(self.0.len())].to_vec())
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    /// Longest common initial segment `W ∧ V`.
    pub fn common_prefix(&self, other: &Word) -> Word {
        Word(self.0[..common_prefix_len(&self.0, &other.0)].to_vec())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.0 {
            sums[l.generator()] += if l.is_inverse() { -1 } else { 1 };
        }
        sums
    }

    /// Length of the cancellation between `self` and `other` in the product.
    pub fn cancellation_with(&self, other: &Word) -> usize {
        self.0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| a.inverse() == **b)
            .count()
    }
}

pub(crate) fn push_reduced(out: &mut Vec<Letter>, raw: impl IntoIterator<Item = Letter>) {
    for l in raw {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

pub(crate) fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1].inverse())
}

pub fn common_prefix_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Common prefix of two reduced words over the same basis.
pub fn common_prefix(basis_w: &Basis, w: &Word, basis_v: &Basis, v: &Word) -> Result<Word, WordError> {
    if basis_w != basis_v {
        return Err(WordError::BasisMismatch);
    }
    Ok(w.common_prefix(v))
}

impl fmt::Display for Word {
    /// Letter-index form; use [`Basis::format`] for named output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.is_inverse() {
                write!(f, "g{}^-1", l.generator())?;
            } else {
                write!(f, "g{}", l.generator())?;
            }
        }
        Ok(())
    }
}

/// All reduced words over `rank` generators of length exactly `len`, in
/// lexicographic order of [`Letter::rank_key`].
pub fn words_of_length(rank: usize, len: usize) -> Vec<Word> {
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * (2 * rank).max(1));
        for w in &layer {
            for slot in 0..2 * rank {
                let l = Letter::from_slot(slot);
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    layer.into_iter().map(Word).collect()
}

/// Reduced words of length `0..=max_len` in length-lexicographic order.
pub fn words_up_to(rank: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|l| words_of_length(rank, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Basis {
        Basis::alphabetic(2)
    }

    #[test]
    fn reduce_cancels() {
        let b = ab();
        assert_eq!(b.format(&b.parse("aAb").unwrap()), "b");
        assert!(b.parse("").unwrap().is_identity());
        assert!(b.parse("AbbBBa").unwrap().is_identity());
    }

    #[test]
    fn unknown_generator_is_an_error() {
        assert!(matches!(ab().parse("abz"), Err(WordError::UnknownGenerator(_))));
    }

    #[test]
    fn common_prefix_examples() {
        let b = Basis::alphabetic(4);
        let p = |s: &str| b.parse(s).unwrap();
        assert_eq!(p("abc").common_prefix(&p("abd")), p("ab"));
        assert!(p("a").common_prefix(&p("A")).is_identity());
        assert_eq!(p("abca").common_prefix(&p("abca")), p("abca"));
        assert!(common_prefix(&b, &p("a"), &ab(), &p("a")).is_err());
    }

    #[test]
    fn multi_char_names() {
        let b = Basis::new(["a1", "a2"]).unwrap();
        let w = b.parse("a2^-1 a1 a2").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(b.format(&w), "a2^-1 a1 a2");
        assert!(Basis::new(["x", "x"]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // 4·3^(l-1) reduced words of length l in rank 2
        assert_eq!(words_of_length(2, 3).len(), 36);
        assert_eq!(words_up_to(2, 2).len(), 1 + 4 + 12);
    }
}
