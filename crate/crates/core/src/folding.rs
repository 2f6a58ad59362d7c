//! Stallings folding: the labelled graph of a finitely generated subgroup.

use std::collections::{BTreeSet, HashMap};

use crate::word::{Letter, Word};

/// A folded (deterministic and co-deterministic) labelled graph with a base state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedGraph {
    states: usize,
    /// `(from, generator, to)`, reading the generator positively from `from` to `to`.
    edges: Vec<(usize, usize, usize)>,
    base: usize,
    /// `(state, letter slot) -> state`
    transitions: HashMap<(usize, usize), usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

impl FoldedGraph {
    /// Folds the bouquet of loops spelling `generators` at a common base.
    pub fn from_words<'a>(generators: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut states = 1usize;
        let mut raw: Vec<(usize, usize, usize)> = Vec::new();
        for w in generators {
            let n = w.len();
            if n == 0 {
                continue;
            }
            let mut cur = 0usize;
            for (i, l) in w.letters().iter().enumerate() {
                let next = if i + 1 == n {
                    0
                } else {
                    states += 1;
                    states - 1
                };
                if l.is_inverse() {
                    raw.push((next, l.generator(), cur));
                } else {
                    raw.push((cur, l.generator(), next));
                }
                cur = next;
            }
        }
        Self::fold(states, raw)
    }

    fn fold(states: usize, raw: Vec<(usize, usize, usize)>) -> Self {
        let mut uf = UnionFind((0..states).collect());
        loop {
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            let mut merged = false;
            for &(u, g, v) in &raw {
                let (u, v) = (uf.find(u), uf.find(v));
                for (state, slot, target) in [(u, 2 * g, v), (v, 2 * g + 1, u)] {
                    match seen.get(&(state, slot)) {
                        Some(&t) if uf.find(t) != target => {
                            uf.union(t, target);
                            merged = true;
                        }
                        Some(_) => {}
                        None => {
                            seen.insert((state, slot), target);
                        }
                    }
                }
                if merged {
                    break;
                }
            }
            if !merged {
                break;
            }
        }
        // compact state ids, base first
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let root = uf.find(0);
        ids.insert(root, 0);
        for s in 0..states {
            let r = uf.find(s);
            let next = ids.len();
            ids.entry(r).or_insert(next);
        }
        let edges: BTreeSet<(usize, usize, usize)> = raw
            .iter()
            .map(|&(u, g, v)| (ids[&uf.find(u)], g, ids[&uf.find(v)]))
            .collect();
        let edges: Vec<_> = edges.into_iter().collect();
        let mut transitions = HashMap::new();
        for &(u, g, v) in &edges {
            transitions.insert((u, 2 * g), v);
            transitions.insert((v, 2 * g + 1), u);
        }
        FoldedGraph { states: ids.len(), edges, base: 0, transitions }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Rank of the represented subgroup (the graph is connected).
    pub fn rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.states)
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.transitions.get(&(state, letter.slot())).copied()
    }

    /// Reads `letters` from the base. `Err(i)` gives the 1-based position of the
    /// first letter with no transition.
    pub fn trace(&self, letters: &[Letter]) -> Result<usize, usize> {
        let mut s = self.base;
        for (i, &l) in letters.iter().enumerate() {
            s = self.step(s, l).ok_or(i + 1)?;
        }
        Ok(s)
    }

    /// Subgroup membership.
    pub fn contains(&self, w: &Word) -> bool {
        self.trace(w.letters()) == Ok(self.base)
    }

    /// Checks the folded invariant: no state has two edges with the same signed label.
    pub fn is_folded(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, g, v)| seen.insert((u, 2 * g)) && seen.insert((v, 2 * g + 1)))
    }
}
