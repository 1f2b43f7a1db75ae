//! Finitely generated subgroups: membership, right-coset keys and index.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::folding::FoldedGraph;
use super::lattice::Lattice;
use super::model::{exponents, GroupModel};
use super::word::Word;
use crate::error::{Error, Result};

/// Generators of a subgroup, as words over the ambient model's alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub generators: Vec<Word>,
}

impl SubgroupSpec {
    pub fn new(generators: Vec<Word>) -> Self {
        SubgroupSpec { generators }
    }

    pub fn trivial() -> Self {
        SubgroupSpec::default()
    }

    pub fn parse(model: &GroupModel, words: &[&str]) -> Result<Self> {
        let generators = words
            .iter()
            .map(|w| model.parse_word(w))
            .collect::<Result<_>>()?;
        Ok(SubgroupSpec { generators })
    }

    /// A product-form subgroup of a direct product: one generator list per
    /// factor, each using only that factor's letters.
    pub fn from_factors(model: &GroupModel, factors: Vec<Vec<Word>>) -> Result<Self> {
        let ranges = model.factor_ranges();
        if !matches!(model, GroupModel::Product { .. }) || ranges.len() != factors.len() {
            return Err(Error::FactorCountMismatch {
                expected: ranges.len(),
                got: factors.len(),
            });
        }
        for (range, list) in ranges.iter().zip(&factors) {
            for w in list {
                if w.letters().iter().any(|l| !range.contains(&l.generator)) {
                    return Err(Error::NotProductForm {
                        word: model.render(w),
                    });
                }
            }
        }
        Ok(SubgroupSpec {
            generators: factors.into_iter().flatten().collect(),
        })
    }
}

/// `[G:H]` (or `[H:K]`), finite or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexClass {
    Finite(u64),
    Infinite,
}

impl IndexClass {
    pub fn is_finite(self) -> bool {
        matches!(self, IndexClass::Finite(_))
    }

    fn times(self, other: IndexClass) -> Result<IndexClass> {
        match (self, other) {
            (IndexClass::Finite(a), IndexClass::Finite(b)) => a
                .checked_mul(b)
                .map(IndexClass::Finite)
                .ok_or(Error::Overflow("index product")),
            _ => Ok(IndexClass::Infinite),
        }
    }
}

impl fmt::Display for IndexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexClass::Finite(n) => write!(f, "{n}"),
            IndexClass::Infinite => write!(f, "infinite"),
        }
    }
}

/// Hashable identity of a right coset `Hw`.
///
/// Two words get equal keys iff they lie in the same right coset of the
/// subgroup that produced the keys. `Element` keys are normal forms, used
/// for Cayley graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CosetKey {
    Element(Word),
    /// Folded-graph state reached by the longest readable prefix, and the
    /// unread suffix.
    Free {
        state: usize,
        suffix: Word,
    },
    Lattice(Vec<i64>),
    Product(Vec<CosetKey>),
}

#[derive(Clone, Debug)]
enum Oracle {
    Free(FoldedGraph),
    Abelian(Lattice),
    Product(Vec<Oracle>),
}

/// Splits generators of a product model by factor, re-indexed locally.
fn split_by_factor(model: &GroupModel, gens: &[Word]) -> Result<Vec<Vec<Word>>> {
    let ranges = model.factor_ranges();
    let mut out = vec![Vec::new(); ranges.len()];
    for w in gens.iter().filter(|w| !w.is_empty()) {
        let home = ranges
            .iter()
            .position(|r| r.contains(&w.letters()[0].generator))
            .expect("validated word");
        if w.letters()
            .iter()
            .any(|l| !ranges[home].contains(&l.generator))
        {
            return Err(Error::NotProductForm {
                word: model.render(w),
            });
        }
        out[home].push(w.restrict(ranges[home].clone()));
    }
    Ok(out)
}

impl Oracle {
    fn build(model: &GroupModel, gens: &[Word]) -> Result<Oracle> {
        match model {
            GroupModel::Free { rank } => Ok(Oracle::Free(FoldedGraph::new(*rank, gens)?)),
            GroupModel::FreeAbelian { rank } => {
                let vectors: Vec<Vec<i64>> = gens.iter().map(|w| exponents(w, *rank)).collect();
                Ok(Oracle::Abelian(Lattice::new(*rank, &vectors)?))
            }
            GroupModel::Product { factors } => {
                let parts = split_by_factor(model, gens)?;
                factors
                    .iter()
                    .zip(&parts)
                    .map(|(f, g)| Oracle::build(f, g))
                    .collect::<Result<_>>()
                    .map(Oracle::Product)
            }
        }
    }

    fn coset_key(&self, model: &GroupModel, w: &Word) -> Result<CosetKey> {
        match (self, model) {
            (Oracle::Free(g), _) => {
                let (state, read) = g.trace(w);
                let suffix = w.letters()[read..].iter().copied().collect();
                Ok(CosetKey::Free { state, suffix })
            }
            (Oracle::Abelian(l), GroupModel::FreeAbelian { rank }) => {
                Ok(CosetKey::Lattice(l.reduce(&exponents(w, *rank))?))
            }
            (Oracle::Product(parts), GroupModel::Product { factors }) => parts
                .iter()
                .zip(factors)
                .zip(model.factor_ranges())
                .map(|((o, f), r)| o.coset_key(f, &w.restrict(r)))
                .collect::<Result<_>>()
                .map(CosetKey::Product),
            _ => unreachable!("oracle built for a different model"),
        }
    }

    fn contains(&self, model: &GroupModel, w: &Word) -> Result<bool> {
        match (self, model) {
            (Oracle::Free(g), _) => Ok(g.accepts(w)),
            (Oracle::Abelian(l), GroupModel::FreeAbelian { rank }) => {
                l.contains(&exponents(w, *rank))
            }
            (Oracle::Product(parts), GroupModel::Product { factors }) => {
                for ((o, f), r) in parts.iter().zip(factors).zip(model.factor_ranges()) {
                    if !o.contains(f, &w.restrict(r))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => unreachable!("oracle built for a different model"),
        }
    }

    fn index(&self) -> Result<IndexClass> {
        match self {
            Oracle::Free(g) if g.is_complete() => Ok(IndexClass::Finite(g.state_count() as u64)),
            Oracle::Free(_) => Ok(IndexClass::Infinite),
            Oracle::Abelian(l) => Ok(l.index()?.map_or(IndexClass::Infinite, IndexClass::Finite)),
            Oracle::Product(parts) => parts
                .iter()
                .try_fold(IndexClass::Finite(1), |acc, o| acc.times(o.index()?)),
        }
    }
}

/// `[H:K]` for `K <= H`, given generators of both. Returns the first
/// generator of `K` outside `H` as the error value.
fn relative_index(
    model: &GroupModel,
    outer: &[Word],
    inner: &[Word],
) -> Result<Result<IndexClass, Word>> {
    match model {
        GroupModel::Free { rank } => {
            let h = FoldedGraph::new(*rank, outer)?;
            let basis = h.basis();
            let mut rewritten = Vec::with_capacity(inner.len());
            for w in inner {
                match basis.rewrite(&h, w) {
                    Some(r) => rewritten.push(r),
                    None => return Ok(Err(w.clone())),
                }
            }
            let k = FoldedGraph::new(basis.rank(), &rewritten)?;
            Ok(Ok(if k.is_complete() {
                IndexClass::Finite(k.state_count() as u64)
            } else {
                IndexClass::Infinite
            }))
        }
        GroupModel::FreeAbelian { rank } => {
            let vectors: Vec<Vec<i64>> = outer.iter().map(|w| exponents(w, *rank)).collect();
            let h = Lattice::new(*rank, &vectors)?;
            let mut coords = Vec::with_capacity(inner.len());
            for w in inner {
                match h.coordinates(&exponents(w, *rank))? {
                    Some(c) => coords.push(c),
                    None => return Ok(Err(w.clone())),
                }
            }
            let k = Lattice::new(h.rank(), &coords)?;
            Ok(Ok(k
                .index()?
                .map_or(IndexClass::Infinite, IndexClass::Finite)))
        }
        GroupModel::Product { factors } => {
            let outer_parts = split_by_factor(model, outer)?;
            let inner_parts = split_by_factor(model, inner)?;
            let mut total = IndexClass::Finite(1);
            for (i, f) in factors.iter().enumerate() {
                match relative_index(f, &outer_parts[i], &inner_parts[i])? {
                    Ok(ix) => total = total.times(ix)?,
                    Err(w) => {
                        let start = model.factor_ranges()[i].start;
                        return Ok(Err(w.shifted(start)));
                    }
                }
            }
            Ok(Ok(total))
        }
    }
}

/// A validated subgroup with its membership oracle built.
#[derive(Clone, Debug)]
pub struct Subgroup {
    model: GroupModel,
    generators: Vec<Word>,
    oracle: Oracle,
    label: String,
}

impl Subgroup {
    pub fn new(model: &GroupModel, spec: &SubgroupSpec) -> Result<Self> {
        for w in &spec.generators {
            model.check_word(w)?;
        }
        let oracle = Oracle::build(model, &spec.generators)?;
        let parts: Vec<String> = spec.generators.iter().map(|w| model.render(w)).collect();
        Ok(Subgroup {
            model: model.clone(),
            generators: spec.generators.clone(),
            oracle,
            label: format!("<{}>", parts.join(", ")),
        })
    }

    pub fn trivial(model: &GroupModel) -> Self {
        Subgroup::new(model, &SubgroupSpec::trivial()).expect("trivial subgroup is always valid")
    }

    /// Sets the name used in error messages and reports.
    pub fn named(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Word::is_empty)
    }

    pub fn is_member(&self, w: &Word) -> Result<bool> {
        self.model.check_word(w)?;
        self.oracle.contains(&self.model, w)
    }

    /// Key of the right coset `Hw`.
    pub fn coset_key(&self, w: &Word) -> Result<CosetKey> {
        self.model.check_word(w)?;
        self.oracle.coset_key(&self.model, w)
    }

    /// `[G:H]`.
    pub fn index(&self) -> Result<IndexClass> {
        self.oracle.index()
    }

    /// First generator of `inner` that is not a member of `self`.
    pub fn first_non_member(&self, inner: &Subgroup) -> Result<Option<Word>> {
        for w in &inner.generators {
            if !self.is_member(w)? {
                return Ok(Some(w.clone()));
            }
        }
        Ok(None)
    }

    pub fn contains_subgroup(&self, inner: &Subgroup) -> Result<bool> {
        Ok(self.first_non_member(inner)?.is_none())
    }

    /// `[self : inner]`; fails with a chain violation unless `inner <= self`.
    pub fn relative_index(&self, inner: &Subgroup) -> Result<IndexClass> {
        if self.model != inner.model {
            return Err(Error::InconsistentBalls(
                "subgroups of different groups".to_string(),
            ));
        }
        match relative_index(&self.model, &self.generators, &inner.generators)? {
            Ok(ix) => Ok(ix),
            Err(w) => Err(Error::ChainViolation {
                inner: inner.label.clone(),
                outer: self.label.clone(),
                word: self.model.render(&w),
            }),
        }
    }
}

/// Whether `w` lies in the subgroup generated by `s`.
pub fn is_member(m: &GroupModel, s: &SubgroupSpec, w: &Word) -> Result<bool> {
    Subgroup::new(m, s)?.is_member(w)
}

/// `[G : <s>]`.
pub fn subgroup_index(m: &GroupModel, s: &SubgroupSpec) -> Result<IndexClass> {
    Subgroup::new(m, s)?.index()
}
