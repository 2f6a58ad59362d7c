//! Infinite reduced words: points of the boundary of a free group.

use std::fmt;

use crate::endo::Endomorphism;
use crate::error::{BoundaryError, WordError};
use crate::folding::FoldedGraph;
use crate::word::{common_prefix_len, is_reduced, push_reduced, Basis, Letter, Word};

/// Iterates of a morphic seed are abandoned past this many letters.
pub const ITERATE_CAP: usize = 1 << 16;
const MAX_ITERATIONS: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteWord {
    /// `prefix · period · period · …` in normal form: the period is primitive and
    /// the prefix is as short as possible.
    EvPeriodic { basis: Basis, prefix: Word, period: Word },
    Morphic(MorphicRay),
}

/// `head · R[skip..]` where `R = lim φᵏ(seed)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphicRay {
    head: Word,
    skip: usize,
    seed: Word,
    endo: Endomorphism,
}

impl MorphicRay {
    pub fn seed(&self) -> &Word {
        &self.seed
    }

    pub fn endo(&self) -> &Endomorphism {
        &self.endo
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn skip(&self) -> usize {
        self.skip
    }
}

/// Result of comparing two infinite words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Exactly(usize),
    AtLeast(usize),
    /// Decided equal (eventually periodic words only).
    Equal,
}

impl Agreement {
    pub fn reaches(self, cap: usize) -> bool {
        match self {
            Agreement::Exactly(n) => n >= cap,
            Agreement::AtLeast(n) => n >= cap,
            Agreement::Equal => true,
        }
    }
}

impl InfiniteWord {
    pub fn periodic(basis: Basis, prefix: Word, period: Word) -> Result<Self, BoundaryError> {
        basis.check(&prefix)?;
        basis.check(&period)?;
        let (prefix, period) = normalize_periodic(prefix.into_letters(), period.into_letters())?;
        Ok(InfiniteWord::EvPeriodic { basis, prefix, period })
    }

    /// The ray `lim φᵏ(seed)`; requires `φ(seed) = seed · u` with `u` nontrivial.
    pub fn morphic(seed: Word, endo: Endomorphism) -> Result<Self, BoundaryError> {
        endo.basis().check(&seed)?;
        let image = endo.apply(&seed);
        if image == seed || seed.is_identity() {
            return Err(BoundaryError::StationaryRay);
        }
        if !image.starts_with(&seed) {
            return Err(BoundaryError::SeedNotPrefix(endo.basis().format(&seed)));
        }
        endo.cancellation_bound()?;
        Ok(InfiniteWord::Morphic(MorphicRay { head: Word::identity(), skip: 0, seed, endo }))
    }

    pub fn basis(&self) -> &Basis {
        match self {
            InfiniteWord::EvPeriodic { basis, .. } => basis,
            InfiniteWord::Morphic(r) => r.endo.basis(),
        }
    }

    /// The first `m` letters.
    pub fn prefix(&self, m: usize) -> Result<Word, BoundaryError> {
        Ok(Word::from_reduced(self.prefix_letters(m)?))
    }

    pub fn prefix_letters(&self, m: usize) -> Result<Vec<Letter>, BoundaryError> {
        match self {
            InfiniteWord::EvPeriodic { prefix, period, .. } => {
                let mut out: Vec<Letter> = prefix.letters().iter().take(m).copied().collect();
                let p = period.letters();
                let mut i = 0;
                while out.len() < m {
                    out.push(p[i % p.len()]);
                    i += 1;
                }
                Ok(out)
            }
            InfiniteWord::Morphic(r) => {
                let mut out: Vec<Letter> = r.head.letters().iter().take(m).copied().collect();
                if out.len() < m {
                    let need = m - out.len();
                    let ray = ray_prefix(&r.seed, &r.endo, r.skip + need)?;
                    out.extend_from_slice(&ray[r.skip..]);
                }
                Ok(out)
            }
        }
    }

    /// The reduced infinite word `U · self`.
    pub fn left_multiply(&self, u: &Word) -> Result<InfiniteWord, BoundaryError> {
        self.basis().check(u)?;
        match self {
            InfiniteWord::EvPeriodic { basis, prefix, period } => {
                let mut h = u.letters().to_vec();
                push_reduced(&mut h, prefix.letters().iter().copied());
                let p = period.letters();
                let mut j = 0;
                while let Some(&last) = h.last() {
                    if last.inverse() != p[j % p.len()] {
                        break;
                    }
                    h.pop();
                    j += 1;
                }
                let j = j % p.len();
                let rotated: Vec<Letter> = p[j..].iter().chain(&p[..j]).copied().collect();
                let (prefix, period) = normalize_periodic(h, rotated)?;
                Ok(InfiniteWord::EvPeriodic { basis: basis.clone(), prefix, period })
            }
            InfiniteWord::Morphic(r) => {
                let mut h = u.letters().to_vec();
                push_reduced(&mut h, r.head.letters().iter().copied());
                let ray = ray_prefix(&r.seed, &r.endo, r.skip + h.len())?;
                let tail = &ray[r.skip..];
                let c = h.iter().rev().zip(tail).take_while(|(a, b)| a.inverse() == **b).count();
                h.truncate(h.len() - c);
                Ok(InfiniteWord::Morphic(MorphicRay {
                    head: Word::from_reduced(h),
                    skip: r.skip + c,
                    seed: r.seed.clone(),
                    endo: r.endo.clone(),
                }))
            }
        }
    }

    /// `|W ∧ V|`, exact for two eventually periodic words, otherwise capped.
    pub fn agree_length(&self, other: &InfiniteWord, cap: usize) -> Result<Agreement, BoundaryError> {
        if self.basis() != other.basis() {
            return Err(WordError::BasisMismatch.into());
        }
        if let (
            InfiniteWord::EvPeriodic { prefix: p1, period: q1, .. },
            InfiniteWord::EvPeriodic { prefix: p2, period: q2, .. },
        ) = (self, other)
        {
            if p1 == p2 && q1 == q2 {
                return Ok(Agreement::Equal);
            }
            // past both prefixes, agreement over |q1| + |q2| letters forces equal tails
            let bound = p1.len().max(p2.len()) + q1.len() + q2.len();
            let n = common_prefix_len(&self.prefix_letters(bound)?, &other.prefix_letters(bound)?);
            return Ok(Agreement::Exactly(n));
        }
        let n = common_prefix_len(&self.prefix_letters(cap)?, &other.prefix_letters(cap)?);
        Ok(if n >= cap { Agreement::AtLeast(cap) } else { Agreement::Exactly(n) })
    }

    /// Human-readable form, e.g. `b(ab)^inf` or `a·[B]^inf`.
    pub fn describe(&self) -> String {
        match self {
            InfiniteWord::EvPeriodic { basis, prefix, period } => {
                format!("{}({})^inf", basis.format(prefix), basis.format(period))
            }
            InfiniteWord::Morphic(r) => {
                let b = r.endo.basis();
                let mut s = String::new();
                if !r.head.is_identity() {
                    s.push_str(&b.format(&r.head));
                    s.push('·');
                }
                s.push_str(&format!("[{}]^inf", b.format(&r.seed)));
                if r.skip > 0 {
                    s.push_str(&format!("[{}..]", r.skip));
                }
                s
            }
        }
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn normalize_periodic(mut prefix: Vec<Letter>, period: Vec<Letter>) -> Result<(Word, Word), BoundaryError> {
    if period.is_empty() {
        return Err(BoundaryError::EmptyPeriod);
    }
    let n = period.len();
    let junction_ok = prefix.last().map_or(true, |l| *l != period[0].inverse());
    if !is_reduced(&prefix) || !is_reduced(&period) || period[n - 1] == period[0].inverse() || !junction_ok {
        return Err(BoundaryError::NotReduced);
    }
    let d = (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| period[i] == period[i - d]))
        .unwrap_or(n);
    let mut period: Vec<Letter> = period[..d].to_vec();
    while prefix.last() == period.last() && !prefix.is_empty() {
        prefix.pop();
        period.rotate_right(1);
    }
    Ok((Word::from_reduced(prefix), Word::from_reduced(period)))
}

/// First `m` letters of `lim φᵏ(seed)`.
///
/// With `C` a common prefix of two consecutive iterates, `φ(C)` minus its last `B`
/// letters is again a common prefix of the next two; once these prefixes grow they
/// are prefixes of the limit. Rays that grow too slowly for this (linear growth)
/// fall back to agreement of three consecutive iterates.
pub(crate) fn ray_prefix(seed: &Word, endo: &Endomorphism, m: usize) -> Result<Vec<Letter>, BoundaryError> {
    let b = endo.cancellation_bound()?;
    let mut w = seed.letters().to_vec();
    let mut prev_common = 0;
    for _ in 0..MAX_ITERATIONS {
        if w.len() > ITERATE_CAP {
            break;
        }
        let next = endo.apply_letters(&w);
        let c = common_prefix_len(&w, &next);
        if let Some(p) = certify(&next[..c], endo, b, m) {
            return Ok(p);
        }
        if c >= m && prev_common >= m {
            return Ok(next[..m].to_vec());
        }
        prev_common = c;
        w = next;
    }
    Err(BoundaryError::Diverged)
}

fn certify(common: &[Letter], endo: &Endomorphism, b: usize, m: usize) -> Option<Vec<Letter>> {
    let mut cur = common.to_vec();
    loop {
        if cur.len() >= m {
            cur.truncate(m);
            return Some(cur);
        }
        let img = endo.apply_letters(&cur);
        if img.len() <= cur.len() + b {
            return None;
        }
        let d = &img[..img.len() - b];
        if !d.starts_with(&cur) {
            return None;
        }
        cur = d.to_vec();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttractionStatus {
    Attracting,
    FixedNotAttracting,
    NotFixed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractionVerdict {
    pub status: AttractionStatus,
    /// `(i, k(i))` with `k(i) = |W ∧ φ(W_i)|`.
    pub evidence: Vec<(usize, usize)>,
}

/// Tuning for [`attraction_check`]; `None` picks the defaults `4B + 8` and
/// `4 · max |φ(g)|`.
#[derive(Clone, Debug, Default)]
pub struct AttractionParams<'a> {
    pub burn_in: Option<usize>,
    pub window: Option<usize>,
    /// Generators of a subgroup of `fix φ`, used to certify non-attracting fixed words.
    pub fix_certificate: Option<&'a [Word]>,
}

/// Windowed test of `lim |W ∧ φ(W_i)| − i = ∞`.
///
/// `not-fixed` is a certificate: a fixed word satisfies `|φ(W_i)| − k(i) ≤ B`.
/// `attracting` asks that `g(i) = k(i) − i` exceed `B` when the window opens and
/// that its minima over consecutive blocks of `max |φ(g)|` indices strictly
/// increase; single steps may dip when an image letter shrinks.
pub fn attraction_check(
    w: &InfiniteWord,
    phi: &Endomorphism,
    params: &AttractionParams<'_>,
) -> Result<AttractionVerdict, BoundaryError> {
    if w.basis() != phi.basis() {
        return Err(WordError::BasisMismatch.into());
    }
    let b = phi.cancellation_bound()?;
    let stride = phi.max_image_len().max(1);
    let burn_in = params.burn_in.unwrap_or(4 * b + 8).max(1);
    let window = params.window.unwrap_or(4 * stride).max(1);
    let n = burn_in + window;
    let letters = w.prefix_letters(stride * n + 1)?;
    let mut evidence = Vec::with_capacity(n);
    let mut fixed = true;
    for i in 1..=n {
        let img = phi.apply_letters(&letters[..i]);
        let k = common_prefix_len(&letters, &img);
        if img.len() - k > b {
            fixed = false;
        }
        evidence.push((i, k));
    }
    if !fixed {
        return Ok(AttractionVerdict { status: AttractionStatus::NotFixed, evidence });
    }
    let gain: Vec<i64> = evidence.iter().map(|&(i, k)| k as i64 - i as i64).collect();
    let win = &gain[burn_in..];
    let minima: Vec<i64> = win.chunks(stride).map(|c| *c.iter().min().unwrap()).collect();
    let rising = minima.len() >= 2 && minima.windows(2).all(|p| p[1] > p[0]);
    if rising && win[0] > b as i64 {
        return Ok(AttractionVerdict { status: AttractionStatus::Attracting, evidence });
    }
    let constant = win.iter().all(|&g| g == win[0]);
    if constant {
        if let Some(gens) = params.fix_certificate {
            check_fixed(phi, gens)?;
            let h = FoldedGraph::from_words(gens);
            if in_boundary_of_subgroup(w, &h, n)? == SubgroupTrace::YesToDepth(n) {
                return Ok(AttractionVerdict { status: AttractionStatus::FixedNotAttracting, evidence });
            }
        }
    }
    Ok(AttractionVerdict { status: AttractionStatus::Inconclusive, evidence })
}

fn check_fixed(phi: &Endomorphism, gens: &[Word]) -> Result<(), BoundaryError> {
    for g in gens {
        phi.basis().check(g)?;
        if &phi.apply(g) != g {
            return Err(BoundaryError::NotFixed(phi.basis().format(g)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Word),
    NoWitness { depth: usize },
}

/// Agreement length treated as equality for rays that cannot be compared exactly.
pub const RAY_EQUALITY_CAP: usize = 256;

/// Searches `U` in the ball of radius `depth` of `⟨fix_gens⟩` with `W = U·V`.
pub fn equivalent_under(
    w: &InfiniteWord,
    v: &InfiniteWord,
    phi: &Endomorphism,
    fix_gens: &[Word],
    depth: usize,
) -> Result<Equivalence, BoundaryError> {
    check_fixed(phi, fix_gens)?;
    let mut frontier = vec![Word::identity()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(Word::identity());
    for radius in 0..=depth {
        for u in &frontier {
            if w.agree_length(&v.left_multiply(u)?, RAY_EQUALITY_CAP)?.reaches(RAY_EQUALITY_CAP) {
                return Ok(Equivalence::Equivalent(u.clone()));
            }
        }
        if radius == depth {
            break;
        }
        let mut next = Vec::new();
        for u in &frontier {
            for g in fix_gens {
                for s in [g.clone(), g.inverse()] {
                    let cand = u.mul(&s);
                    if seen.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(Equivalence::NoWitness { depth })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupTrace {
    YesToDepth(usize),
    /// 1-based index of the first letter leaving the subgroup graph.
    EscapesAt(usize),
}

pub fn in_boundary_of_subgroup(w: &InfiniteWord, h: &FoldedGraph, depth: usize) -> Result<SubgroupTrace, BoundaryError> {
    let letters = w.prefix_letters(depth)?;
    Ok(match h.trace(&letters) {
        Ok(_) => SubgroupTrace::YesToDepth(depth),
        Err(i) => SubgroupTrace::EscapesAt(i),
    })
}
