//! Verdicts for chains `K <= H <= G` and for `H <= K <= G`.

use std::sync::Arc;

use serde::Serialize;

use crate::ends::{pair_ends, EndsEstimate, Params};
use crate::error::{Error, Result};
use crate::groups::{IndexClass, Subgroup};

/// Attached to every VIOLATED verdict.
pub const VIOLATION_NOTE: &str = "the checked statement is a theorem, so this points at the \
    truncation (raise nmax and margin) or at a bug, not at the mathematics";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Violated,
    Inconclusive,
}

/// The cells of the regime table for a subgroup `K` relative to
/// a reference subgroup `H` with `e(G,H) = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegimeLabel {
    /// `[G:K]` finite.
    #[serde(rename = "0")]
    Zero,
    /// `K <= H`, `[H:K]` finite.
    #[serde(rename = "n-below")]
    SameBelow,
    /// `K <= H`, `[H:K]` infinite.
    #[serde(rename = "1")]
    One,
    /// `H <= K`, `[K:H]` finite.
    #[serde(rename = "n-above")]
    SameAbove,
    /// `H <= K`, `[K:H]` and `[G:K]` infinite.
    #[serde(rename = "inf")]
    Infinite,
    #[serde(rename = "unclassified")]
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub label: RegimeLabel,
    /// Predicted `e(G,K)`; `None` for the infinite and unclassified cells.
    pub predicted: Option<usize>,
    /// The prediction cannot be certified by truncation and is never
    /// turned into a verdict.
    pub diagnostic_only: bool,
    pub reason: String,
}

impl Regime {
    fn new(label: RegimeLabel, predicted: Option<usize>, reason: impl Into<String>) -> Regime {
        Regime {
            label,
            predicted,
            diagnostic_only: label == RegimeLabel::Infinite,
            reason: reason.into(),
        }
    }
}

fn stable_value(e: &EndsEstimate) -> Option<usize> {
    e.value.filter(|_| e.stabilized)
}

/// Places `K` in the regime table around `H`, given an estimate of `e(G,H)`.
pub fn classify_with(h: &Subgroup, k: &Subgroup, e_h: &EndsEstimate) -> Result<Regime> {
    use RegimeLabel::*;
    if k.index()?.is_finite() {
        return Ok(Regime::new(Zero, Some(0), "[G:K] is finite"));
    }
    let n = stable_value(e_h);
    if h.contains_subgroup(k)? {
        let Some(n) = n.filter(|&n| n > 0) else {
            return Ok(Regime::new(
                Unclassified,
                None,
                "K <= H but e(G,H) is not a stable positive count",
            ));
        };
        return Ok(match h.relative_index(k)? {
            IndexClass::Finite(_) => Regime::new(SameBelow, Some(n), "K <= H with [H:K] finite"),
            IndexClass::Infinite => Regime::new(One, Some(1), "K <= H with [H:K] infinite"),
        });
    }
    if k.contains_subgroup(h)? {
        return Ok(match (k.relative_index(h)?, n) {
            (IndexClass::Finite(_), Some(n)) if n > 0 => {
                Regime::new(SameAbove, Some(n), "H <= K with [K:H] finite")
            }
            (IndexClass::Infinite, Some(n)) if n > 1 => Regime::new(
                Infinite,
                None,
                "H <= K with [K:H] and [G:K] infinite and e(G,H) > 1",
            ),
            _ => Regime::new(
                Unclassified,
                None,
                "H <= K but e(G,H) is outside the table's range",
            ),
        });
    }
    Ok(Regime::new(Unclassified, None, "H and K are not nested"))
}

/// [`classify_with`] after estimating `e(G,H)`.
pub fn classify_regime(h: &Arc<Subgroup>, k: &Subgroup, params: &Params) -> Result<Regime> {
    let e_h = pair_ends(h, params)?;
    classify_with(h, k, &e_h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryCheck {
    pub verdict: Verdict,
    /// `e(G,K)` implied by `e(G,H)` and `[H:K]`.
    pub predicted: Option<usize>,
    pub index_gh: IndexClass,
    pub index_hk: IndexClass,
    pub e_h: EndsEstimate,
    pub e_k: EndsEstimate,
    pub note: String,
}

/// Decides the chain check from its ingredients.
pub fn corollary_verdict(
    index_gh: IndexClass,
    index_hk: IndexClass,
    e_h: &EndsEstimate,
    e_k: &EndsEstimate,
) -> (Verdict, Option<usize>, String) {
    use Verdict::*;
    if index_gh.is_finite() {
        return (
            Inconclusive,
            None,
            "H has finite index in G, outside the hypothesis".into(),
        );
    }
    let Some(n) = stable_value(e_h) else {
        let why = if e_h.increasing {
            "e(G,H) did not stabilize and its counts increase"
        } else {
            "e(G,H) did not stabilize"
        };
        return (Inconclusive, None, why.into());
    };
    if n == 0 {
        return (
            Inconclusive,
            None,
            "e(G,H) = 0, outside the hypothesis".into(),
        );
    }
    let predicted = if index_hk.is_finite() { n } else { 1 };
    match stable_value(e_k) {
        None => (
            Inconclusive,
            Some(predicted),
            "e(G,K) did not stabilize".into(),
        ),
        Some(v) if v == predicted => (Confirmed, Some(predicted), String::new()),
        Some(_) => (Violated, Some(predicted), VIOLATION_NOTE.into()),
    }
}

/// Compares `e(G,K)` with the value forced by `e(G,H) = n` for `K <= H`:
/// `n` when `[H:K]` is finite, 1 otherwise.
pub fn check_corollary(
    h: &Arc<Subgroup>,
    k: &Arc<Subgroup>,
    params: &Params,
) -> Result<CorollaryCheck> {
    let index_hk = h.relative_index(k)?;
    let index_gh = h.index()?;
    let e_h = pair_ends(h, params)?;
    let e_k = pair_ends(k, params)?;
    let (verdict, predicted, note) = corollary_verdict(index_gh, index_hk, &e_h, &e_k);
    Ok(CorollaryCheck {
        verdict,
        predicted,
        index_gh,
        index_hk,
        e_h,
        e_k,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityCheck {
    pub verdict: Verdict,
    /// False when `e(G,H) = 0`; the verdict then follows the `[G:K]`
    /// finite cell instead.
    pub applies: bool,
    pub index_gk: IndexClass,
    pub e_h: EndsEstimate,
    pub e_k: EndsEstimate,
    pub note: String,
}

pub fn monotonicity_verdict(
    index_gk: IndexClass,
    e_h: &EndsEstimate,
    e_k: &EndsEstimate,
) -> (Verdict, bool, String) {
    use Verdict::*;
    let (Some(eh), Some(ek)) = (stable_value(e_h), stable_value(e_k)) else {
        return (Inconclusive, true, "an estimate did not stabilize".into());
    };
    if eh == 0 {
        return match index_gk {
            IndexClass::Finite(_) if ek == 0 => (
                Confirmed,
                false,
                "e(G,H) = 0; judged as [G:K] finite, e(G,K) = 0".into(),
            ),
            IndexClass::Finite(_) => (Violated, false, VIOLATION_NOTE.into()),
            IndexClass::Infinite => (
                Inconclusive,
                false,
                "e(G,H) = 0 and [G:K] is infinite: no prediction applies".into(),
            ),
        };
    }
    if ek <= eh {
        (Confirmed, true, String::new())
    } else {
        (Violated, true, VIOLATION_NOTE.into())
    }
}

/// Checks `e(G,K) <= e(G,H)` for `K <= H`.
pub fn check_monotonicity(
    h: &Arc<Subgroup>,
    k: &Arc<Subgroup>,
    params: &Params,
) -> Result<MonotonicityCheck> {
    if let Some(w) = h.first_non_member(k)? {
        return Err(Error::ChainViolation {
            inner: k.label().to_string(),
            outer: h.label().to_string(),
            word: h.model().render(&w),
        });
    }
    let index_gk = k.index()?;
    let e_h = pair_ends(h, params)?;
    let e_k = pair_ends(k, params)?;
    let (verdict, applies, note) = monotonicity_verdict(index_gk, &e_h, &e_k);
    Ok(MonotonicityCheck {
        verdict,
        applies,
        index_gk,
        e_h,
        e_k,
        note,
    })
}
