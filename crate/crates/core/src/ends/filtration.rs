//! Finite filtrations of a ball and the well-filtered / regular conditions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{components, cw_complement, cw_neighborhood, Ball, Subgraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationKind {
    MetricBall,
    Regularized,
    Custom,
}

/// A monotone sequence of subgraphs `L0 <= L1 <= ... <= Ln` of a ball.
///
/// `depth` bounds how far from the base vertex the filtration is meant to
/// reach; a cover must extend at least a margin beyond it.
#[derive(Clone, Debug)]
pub struct Filtration<'b> {
    base: &'b Ball,
    levels: Vec<Subgraph<'b>>,
    kind: FiltrationKind,
    depth: usize,
}

impl<'b> Filtration<'b> {
    /// Validates monotonicity and wraps `levels` as a custom filtration.
    pub fn custom(base: &'b Ball, levels: Vec<Subgraph<'b>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidFiltration("no levels".to_string()));
        }
        for (i, pair) in levels.windows(2).enumerate() {
            if !pair[0].is_subgraph_of(&pair[1]) {
                return Err(Error::InvalidFiltration(format!(
                    "level {i} is not contained in level {}",
                    i + 1
                )));
            }
        }
        let depth = levels
            .iter()
            .flat_map(|l| l.vertices())
            .map(|v| base.distance(v))
            .max()
            .unwrap_or(0);
        Ok(Filtration {
            base,
            levels,
            kind: FiltrationKind::Custom,
            depth,
        })
    }

    pub fn base(&self) -> &'b Ball {
        self.base
    }

    pub fn levels(&self) -> &[Subgraph<'b>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Subgraph<'b> {
        &self.levels[i]
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Keeps every `stride`-th level, starting at level 0 and always
    /// including the last one.
    pub fn subsequence(&self, stride: usize) -> Filtration<'b> {
        let stride = stride.max(1);
        let last = self.levels.len() - 1;
        let mut picks: Vec<usize> = (0..=last).step_by(stride).collect();
        if *picks.last().unwrap() != last {
            picks.push(last);
        }
        Filtration {
            base: self.base,
            levels: picks.into_iter().map(|i| self.levels[i].clone()).collect(),
            kind: self.kind,
            depth: self.depth,
        }
    }
}

/// Level `n` is the closed metric ball of radius `n` around the base
/// vertex, for `n = 0..=n_max`.
pub fn ball_filtration(base: &Ball, n_max: usize) -> Result<Filtration<'_>> {
    if n_max > base.radius() {
        return Err(Error::DepthExceedsRadius {
            depth: n_max,
            radius: base.radius(),
        });
    }
    Ok(Filtration {
        base,
        levels: (0..=n_max)
            .map(|n| Subgraph::metric_ball(base, n))
            .collect(),
        kind: FiltrationKind::MetricBall,
        depth: n_max,
    })
}

/// Outcome of [`check_well_filtered`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellFiltered {
    pub holds: bool,
    /// First level whose neighbourhood no level absorbs.
    pub witness: Option<usize>,
    /// For each level, the first level absorbing its neighbourhood.
    pub absorbed_by: Vec<Option<usize>>,
}

/// Checks that the neighbourhood of each level, clipped to the vertices
/// within distance `interior` of the base vertex, lies in some level.
pub fn check_well_filtered(f: &Filtration<'_>, interior: usize) -> WellFiltered {
    let ball = f.base();
    let whole = Subgraph::full(ball);
    let region = Subgraph::metric_ball(ball, interior);
    let absorbed_by: Vec<Option<usize>> = f
        .levels()
        .iter()
        .map(|level| {
            let clipped = cw_neighborhood(&whole, level).intersection(&region);
            f.levels().iter().position(|l| clipped.is_subgraph_of(l))
        })
        .collect();
    let witness = absorbed_by.iter().position(Option::is_none);
    WellFiltered {
        holds: witness.is_none(),
        witness,
        absorbed_by,
    }
}

/// Augments every level with the non-horizon components of its complement
/// in the base, the truncated analogue of adding the finite components.
/// The result is still monotone: complements shrink as levels grow, and a
/// piece of a non-horizon component cannot reach the horizon.
pub fn regularize<'b>(f: &Filtration<'b>) -> Filtration<'b> {
    let ball = f.base();
    let whole = Subgraph::full(ball);
    let levels = f
        .levels()
        .iter()
        .map(|level| {
            let complement = cw_complement(&whole, level);
            let mut out = level.clone();
            for c in components(&complement).into_iter().filter(|c| !c.horizon) {
                let trapped = Subgraph::induced(ball, |v| c.vertices.binary_search(&v).is_ok());
                out = out.union(&trapped.intersection(&complement));
            }
            out
        })
        .collect();
    Filtration {
        base: f.base,
        levels,
        kind: FiltrationKind::Regularized,
        depth: f.depth,
    }
}

/// Number of non-horizon components of `ball` minus `level`.
pub fn trapped_components(level: &Subgraph<'_>) -> usize {
    let whole = Subgraph::full(level.ball());
    components(&cw_complement(&whole, level))
        .iter()
        .filter(|c| !c.horizon)
        .count()
}
