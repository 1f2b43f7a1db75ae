//! Stallings folding for finitely generated subgroups of free groups.
//!
//! The subgroup generated by a list of words is encoded as a wedge of
//! labelled loops at a base state. Folding identifies pairs of same-label
//! edges leaving a common state until the graph is deterministic. A reduced
//! word then lies in the subgroup iff it can be read from the base state
//! back to the base state.

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A folded, deterministic subgroup graph.
///
/// State 0 is the base state. `transitions[s][l.slot()]` is the target of
/// the `l`-edge at `s`, and the table is closed under inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedGraph {
    rank: usize,
    transitions: Vec<Vec<Option<usize>>>,
}

struct Folder {
    parent: Vec<usize>,
    out: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
    slots: usize,
}

impl Folder {
    fn new(rank: usize) -> Self {
        Folder {
            parent: Vec::new(),
            out: Vec::new(),
            pending: Vec::new(),
            slots: 2 * rank,
        }
    }

    fn state(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.out.push(vec![None; self.slots]);
        self.parent.len() - 1
    }

    fn find(&mut self, mut s: usize) -> usize {
        while self.parent[s] != s {
            self.parent[s] = self.parent[self.parent[s]];
            s = self.parent[s];
        }
        s
    }

    fn link(&mut self, from: usize, slot: usize, to: usize) {
        let from = self.find(from);
        let to = self.find(to);
        match self.out[from][slot] {
            None => self.out[from][slot] = Some(to),
            Some(existing) => {
                let existing = self.find(existing);
                if existing != to {
                    self.pending.push((existing, to));
                }
            }
        }
    }

    fn edge(&mut self, from: usize, l: Letter, to: usize) {
        self.link(from, l.slot(), to);
        self.link(to, l.inverse().slot(), from);
    }

    fn fold(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, gone) = (a.min(b), a.max(b));
            self.parent[gone] = keep;
            let moved = std::mem::take(&mut self.out[gone]);
            for (slot, target) in moved.into_iter().enumerate() {
                if let Some(t) = target {
                    self.link(keep, slot, t);
                }
            }
        }
    }
}

impl FoldedGraph {
    /// Folds the wedge of loops spelled by `generators`. Empty generators are
    /// ignored; the result for no generators is the trivial subgroup.
    pub fn new(rank: usize, generators: &[Word]) -> Result<Self> {
        let mut f = Folder::new(rank);
        let base = f.state();
        for w in generators {
            if let Some(l) = w.letters().iter().find(|l| l.generator >= rank) {
                return Err(Error::InvalidGenerator {
                    index: l.generator,
                    rank,
                });
            }
            let letters = w.letters();
            let mut at = base;
            for (i, &l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() {
                    base
                } else {
                    f.state()
                };
                f.edge(at, l, next);
                at = next;
            }
        }
        f.fold();

        // Renumber the surviving states breadth first from the base.
        let root = f.find(base);
        let mut order = vec![usize::MAX; f.parent.len()];
        let mut queue = vec![root];
        order[root] = 0;
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head];
            head += 1;
            for slot in 0..f.slots {
                if let Some(t) = f.out[s][slot] {
                    let t = f.find(t);
                    if order[t] == usize::MAX {
                        order[t] = queue.len();
                        queue.push(t);
                    }
                }
            }
        }
        let mut transitions = vec![vec![None; f.slots]; queue.len()];
        for (new, &old) in queue.iter().enumerate() {
            for slot in 0..f.slots {
                if let Some(t) = f.out[old][slot] {
                    let t = f.find(t);
                    transitions[new][slot] = Some(order[t]);
                }
            }
        }
        Ok(FoldedGraph { rank, transitions })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn step(&self, state: usize, l: Letter) -> Option<usize> {
        self.transitions[state][l.slot()]
    }

    /// Reads as much of `w` as possible from the base state. Returns the
    /// state reached and the number of letters consumed.
    pub fn trace(&self, w: &Word) -> (usize, usize) {
        let mut state = 0;
        for (i, &l) in w.letters().iter().enumerate() {
            match self.step(state, l) {
                Some(t) => state = t,
                None => return (state, i),
            }
        }
        (state, w.len())
    }

    pub fn accepts(&self, w: &Word) -> bool {
        matches!(self.trace(w), (0, n) if n == w.len())
    }

    /// Every state has an edge for every letter.
    pub fn is_complete(&self) -> bool {
        self.transitions
            .iter()
            .all(|row| row.iter().all(Option::is_some))
    }

    /// Positive edges `(from, generator, to)`, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.transitions.iter().enumerate() {
            for g in 0..self.rank {
                if let Some(t) = row[Letter::pos(g).slot()] {
                    out.push((s, g, t));
                }
            }
        }
        out
    }

    /// A free basis of the subgroup: one generator per edge outside a
    /// breadth-first spanning tree.
    pub fn basis(&self) -> SubgroupBasis {
        let n = self.state_count();
        let mut tree_word: Vec<Option<Word>> = vec![None; n];
        let mut tree_edge = vec![vec![false; 2 * self.rank]; n];
        tree_word[0] = Some(Word::identity());
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head];
            head += 1;
            for l in Letter::all(self.rank) {
                if let Some(t) = self.step(s, l) {
                    if tree_word[t].is_none() {
                        tree_word[t] = Some(tree_word[s].as_ref().unwrap().times(l));
                        tree_edge[s][l.slot()] = true;
                        tree_edge[t][l.inverse().slot()] = true;
                        queue.push(t);
                    }
                }
            }
        }
        let paths: Vec<Word> = tree_word.into_iter().map(Option::unwrap).collect();

        let mut generators = Vec::new();
        let mut contributes = vec![vec![None; 2 * self.rank]; n];
        for (s, g, t) in self.edges() {
            let l = Letter::pos(g);
            if tree_edge[s][l.slot()] {
                continue;
            }
            let index = generators.len();
            generators.push(paths[s].times(l).mul(&paths[t].inverse()));
            contributes[s][l.slot()] = Some(Letter::pos(index));
            contributes[t][l.inverse().slot()] = Some(Letter::neg(index));
        }
        SubgroupBasis {
            generators,
            contributes,
        }
    }
}

/// Free basis of a subgroup read off its folded graph.
#[derive(Clone, Debug)]
pub struct SubgroupBasis {
    pub generators: Vec<Word>,
    contributes: Vec<Vec<Option<Letter>>>,
}

impl SubgroupBasis {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Expresses a member of the subgroup as a word in the basis. Returns
    /// `None` when `w` is not accepted by `graph`.
    pub fn rewrite(&self, graph: &FoldedGraph, w: &Word) -> Option<Word> {
        let mut state = 0;
        let mut out = Word::identity();
        for &l in w.letters() {
            if let Some(b) = self.contributes[state][l.slot()] {
                out.push(b);
            }
            state = graph.step(state, l)?;
        }
        (state == 0).then_some(out)
    }
}
