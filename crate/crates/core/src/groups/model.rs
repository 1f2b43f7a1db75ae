//! Group families with solvable word problems.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::word::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Largest total generator count accepted. Word syntax has one letter per
/// generator.
pub const MAX_GENERATORS: usize = 26;

/// A finitely generated group given by its standard generators.
///
/// Products take the disjoint union of the factors' generators, numbered in
/// factor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupModel {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Product { factors: Vec<GroupModel> },
}

impl GroupModel {
    pub fn free(rank: usize) -> Result<Self> {
        GroupModel::Free { rank }.validated()
    }

    pub fn free_abelian(rank: usize) -> Result<Self> {
        GroupModel::FreeAbelian { rank }.validated()
    }

    pub fn product(factors: Vec<GroupModel>) -> Result<Self> {
        GroupModel::Product { factors }.validated()
    }

    /// Checks the structural invariants and returns `self`.
    pub fn validated(self) -> Result<Self> {
        self.check()?;
        if self.rank() > MAX_GENERATORS {
            return Err(Error::InvalidModel(format!(
                "{} generators exceeds the limit of {MAX_GENERATORS}",
                self.rank()
            )));
        }
        Ok(self)
    }

    fn check(&self) -> Result<()> {
        match self {
            GroupModel::Free { rank } | GroupModel::FreeAbelian { rank } if *rank == 0 => Err(
                Error::InvalidModel("every factor needs rank >= 1".to_string()),
            ),
            GroupModel::Free { .. } | GroupModel::FreeAbelian { .. } => Ok(()),
            GroupModel::Product { factors } if factors.len() < 2 => Err(Error::InvalidModel(
                "a direct product needs at least two factors".to_string(),
            )),
            GroupModel::Product { factors } => factors.iter().try_for_each(GroupModel::check),
        }
    }

    /// Total number of generators.
    pub fn rank(&self) -> usize {
        match self {
            GroupModel::Free { rank } | GroupModel::FreeAbelian { rank } => *rank,
            GroupModel::Product { factors } => factors.iter().map(GroupModel::rank).sum(),
        }
    }

    /// Generator index ranges of the direct factors. A single range for
    /// non-products.
    pub fn factor_ranges(&self) -> Vec<Range<usize>> {
        match self {
            GroupModel::Product { factors } => {
                let mut start = 0;
                factors
                    .iter()
                    .map(|f| {
                        let r = start..start + f.rank();
                        start = r.end;
                        r
                    })
                    .collect()
            }
            _ => vec![0..self.rank()],
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            GroupModel::FreeAbelian { rank } if *rank <= 4 => Alphabet::Coordinate,
            _ => Alphabet::Latin,
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet().parse(text, self.rank())
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.alphabet())
    }

    /// Validates and reduces a raw letter sequence.
    pub fn word(&self, raw: &[Letter]) -> Result<Word> {
        Word::reduce(raw.iter().copied(), self.rank())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        let rank = self.rank();
        match w.letters().iter().find(|l| l.generator >= rank) {
            Some(l) => Err(Error::InvalidGenerator {
                index: l.generator,
                rank,
            }),
            None => Ok(()),
        }
    }

    /// Canonical form: two words have equal normal forms exactly when they
    /// represent the same element.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        Ok(self.normal_form_unchecked(w))
    }

    pub(crate) fn normal_form_unchecked(&self, w: &Word) -> Word {
        match self {
            GroupModel::Free { .. } => w.clone(),
            GroupModel::FreeAbelian { rank } => abelian_word(&exponents(w, *rank)),
            GroupModel::Product { factors } => {
                let mut out = Word::identity();
                for (f, range) in factors.iter().zip(self.factor_ranges()) {
                    let start = range.start;
                    let part = f.normal_form_unchecked(&w.restrict(range));
                    out = out.mul(&part.shifted(start));
                }
                out
            }
        }
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::Free { rank } => write!(f, "F{rank}"),
            GroupModel::FreeAbelian { rank: 1 } => write!(f, "Z"),
            GroupModel::FreeAbelian { rank } => write!(f, "Z^{rank}"),
            GroupModel::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// Signed generator multiplicities of `w`.
pub(crate) fn exponents(w: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for l in w.letters() {
        v[l.generator] += l.sign();
    }
    v
}

/// The sorted word `x^v0 y^v1 ...`.
pub(crate) fn abelian_word(v: &[i64]) -> Word {
    let mut out = Word::identity();
    for (g, &e) in v.iter().enumerate() {
        let l = Letter::new(g, e < 0);
        for _ in 0..e.unsigned_abs() {
            out.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn free_normal_form_is_reduction() {
        let m = GroupModel::free(2).unwrap();
        let w = m.parse_word("b a A").unwrap();
        assert_eq!(m.render(&m.normal_form(&w).unwrap()), "b");
    }

    #[test]
    fn abelian_normal_form_sorts() {
        let m = GroupModel::free_abelian(2).unwrap();
        let nf = |s: &str| m.render(&m.normal_form(&m.parse_word(s).unwrap()).unwrap());
        assert_eq!(nf("y x Y"), "x");
        assert_eq!(nf("x y x"), "x x y");
        assert_eq!(nf("Y X y"), "X");
    }

    #[test]
    fn product_normal_form_commutes_factors_only() {
        let m = GroupModel::product(vec![
            GroupModel::free(2).unwrap(),
            GroupModel::free_abelian(1).unwrap(),
        ])
        .unwrap();
        let nf = |s: &str| m.render(&m.normal_form(&m.parse_word(s).unwrap()).unwrap());
        assert_eq!(nf("c a c b"), "a b c c");
        assert_eq!(nf("b c a"), "b a c");
        assert_ne!(nf("a b"), nf("b a"));
    }

    #[test]
    fn invalid_models() {
        assert!(GroupModel::free(0).is_err());
        assert!(GroupModel::product(vec![GroupModel::free(1).unwrap()]).is_err());
        assert!(GroupModel::free_abelian(27).is_err());
        let m = GroupModel::free(2).unwrap();
        assert!(m.normal_form(&Word::letter(Letter::pos(2))).is_err());
    }

    #[test]
    fn serde_shape() {
        let m: GroupModel = toml::from_str(
            "family = \"product\"\nfactors = [{ family = \"free\", rank = 1 }, { family = \"free_abelian\", rank = 2 }]",
        )
        .unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.factor_ranges(), vec![0..1, 1..3]);
    }

    fn models() -> impl Strategy<Value = GroupModel> {
        prop_oneof![
            (1usize..4).prop_map(|r| GroupModel::Free { rank: r }),
            (1usize..4).prop_map(|r| GroupModel::FreeAbelian { rank: r }),
            Just(GroupModel::Product {
                factors: vec![
                    GroupModel::Free { rank: 2 },
                    GroupModel::FreeAbelian { rank: 2 }
                ],
            }),
        ]
    }

    fn word_for(rank: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..rank, any::<bool>()), 0..16)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    proptest! {
        #[test]
        fn normal_form_idempotent_and_multiplicative(
            (m, u, v) in models().prop_flat_map(|m| {
                let r = m.rank();
                (Just(m), word_for(r), word_for(r))
            })
        ) {
            let nf = |w: &Word| m.normal_form(w).unwrap();
            prop_assert_eq!(nf(&nf(&u)), nf(&u));
            prop_assert_eq!(nf(&u.mul(&v)), nf(&nf(&u).mul(&nf(&v))));
            prop_assert!(nf(&u.mul(&u.inverse())).is_empty());
        }
    }
}
