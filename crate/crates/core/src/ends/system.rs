//! The truncated inverse system of complement components, and the end
//! count read off it.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::filtration::{ball_filtration, regularize, Filtration};
use crate::error::{Error, Result};
use crate::graph::DEFAULT_BUDGET;
use crate::graph::{components, cw_complement, project, Ball, Component, Projection, Subgraph};
use crate::groups::{GroupModel, Subgroup};

/// Truncation parameters shared by every estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Deepest filtration level.
    pub n_max: usize,
    /// How far the cover extends beyond the deepest level.
    pub margin: usize,
    /// Number of trailing levels that must agree.
    pub window: usize,
    /// Vertex cap for every ball built.
    pub budget: usize,
}

impl Params {
    /// `margin = n_max`, window 3, default budget.
    pub fn new(n_max: usize) -> Self {
        Params {
            n_max,
            margin: n_max,
            window: 3,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn cover_radius(&self) -> usize {
        self.n_max + self.margin
    }
}

impl Default for Params {
    fn default() -> Self {
        Params::new(5)
    }
}

/// Components of the cover minus one pulled-back level. A component's
/// `horizon` flag records whether its image reaches the base horizon.
#[derive(Clone, Debug)]
pub struct LevelComponents {
    pub components: Vec<Component>,
    owner: Vec<Option<usize>>,
}

impl LevelComponents {
    /// Component containing cover vertex `v`, if `v` lies in the complement.
    pub fn owner(&self, v: usize) -> Option<usize> {
        self.owner[v]
    }

    pub fn horizon_count(&self) -> usize {
        self.components.iter().filter(|c| c.horizon).count()
    }

    pub fn trapped_count(&self) -> usize {
        self.components.len() - self.horizon_count()
    }
}

/// Per-level components of `cover - p^-1(L_n)` with the bonding maps
/// between consecutive levels.
#[derive(Clone, Debug)]
pub struct ComponentSystem {
    levels: Vec<LevelComponents>,
    /// `inclusions[n][c]` is the level-`n` component containing component
    /// `c` of level `n + 1`.
    inclusions: Vec<Vec<usize>>,
    margin: usize,
}

impl ComponentSystem {
    pub fn levels(&self) -> &[LevelComponents] {
        &self.levels
    }

    pub fn inclusion(&self, n: usize) -> &[usize] {
        &self.inclusions[n]
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Whether the bonding map from level `n + 1` to level `n`, restricted
    /// to horizon components, is a bijection.
    pub fn horizon_bijective(&self, n: usize) -> bool {
        let upper = &self.levels[n + 1];
        let lower = &self.levels[n];
        let mut hit = vec![0usize; lower.components.len()];
        for (c, comp) in upper.components.iter().enumerate() {
            if comp.horizon {
                hit[self.inclusions[n][c]] += 1;
            }
        }
        lower
            .components
            .iter()
            .zip(&hit)
            .all(|(comp, &h)| if comp.horizon { h == 1 } else { h == 0 })
    }
}

/// Builds the component system of the cover of `p` over the levels of `f`.
pub fn component_system(
    p: &Projection<'_, '_>,
    f: &Filtration<'_>,
    margin: usize,
) -> Result<ComponentSystem> {
    if !std::ptr::eq(p.base(), f.base()) {
        return Err(Error::InconsistentBalls(
            "filtration lives on a different ball than the projection's base".to_string(),
        ));
    }
    let cover = p.cover();
    if cover.radius() < f.depth() + margin {
        return Err(Error::RadiusTooSmall {
            radius: cover.radius(),
            depth: f.depth(),
            margin,
        });
    }
    // A component is unbounded when its image leaves every finite part of
    // the base, i.e. reaches the base's truncation horizon. For a cover of
    // itself this is the cover's own horizon.
    let base = p.base();
    let unbounded = |v: usize| !base.is_complete() && base.distance(p.image(v)) >= cover.radius();
    let whole = Subgraph::full(cover);
    let levels: Vec<LevelComponents> = f
        .levels()
        .par_iter()
        .map(|level| {
            let complement = cw_complement(&whole, &p.preimage(level));
            let mut components = components(&complement);
            for c in &mut components {
                c.horizon = c.vertices.iter().any(|&v| unbounded(v));
            }
            let mut owner = vec![None; cover.vertex_count()];
            for (i, c) in components.iter().enumerate() {
                for &v in &c.vertices {
                    owner[v] = Some(i);
                }
            }
            LevelComponents { components, owner }
        })
        .collect();

    let inclusions = levels
        .windows(2)
        .map(|pair| {
            pair[1]
                .components
                .iter()
                .map(|c| {
                    pair[0].owner(c.vertices[0]).ok_or_else(|| {
                        Error::InvalidFiltration("complements are not nested".to_string())
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ComponentSystem {
        levels,
        inclusions,
        margin,
    })
}

/// End-count estimate read off a component system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndsEstimate {
    /// Horizon components per level.
    pub counts: Vec<usize>,
    /// Non-horizon components per level.
    pub trapped: Vec<usize>,
    pub stabilized: bool,
    /// The stabilized count, when stabilized.
    pub value: Option<usize>,
    /// Largest count seen.
    pub lower_bound: usize,
    /// Counts strictly increase from level to level: the signal for
    /// infinitely many ends.
    pub increasing: bool,
    /// The base graph was exhausted within the filtration, so the complement
    /// is eventually empty.
    pub saturated: bool,
    pub window: usize,
    pub margin: usize,
}

/// Reads the end count off `cs`. The estimate stabilizes when the last
/// `window` counts agree and the bonding maps between those levels are
/// bijections on horizon components.
pub fn ends_estimate(cs: &ComponentSystem, window: usize) -> Result<EndsEstimate> {
    let window = window.max(1);
    let n = cs.levels.len();
    if n < window {
        return Err(Error::WindowTooLarge { window, levels: n });
    }
    let counts: Vec<usize> = cs
        .levels
        .iter()
        .map(LevelComponents::horizon_count)
        .collect();
    let trapped = cs
        .levels
        .iter()
        .map(LevelComponents::trapped_count)
        .collect();
    let tail = &counts[n - window..];
    let stabilized = tail.iter().all(|&c| c == tail[0])
        && (n - window..n - 1).all(|lvl| cs.horizon_bijective(lvl));
    let increasing = counts.len() >= 2 && counts.windows(2).all(|p| p[0] < p[1]);
    Ok(EndsEstimate {
        value: stabilized.then_some(tail[0]),
        lower_bound: counts.iter().copied().max().unwrap_or(0),
        counts,
        trapped,
        stabilized,
        increasing,
        saturated: false,
        window,
        margin: cs.margin,
    })
}

/// End estimate for the cover of `p` filtered by the preimages of `f`.
pub fn estimate_over(
    p: &Projection<'_, '_>,
    f: &Filtration<'_>,
    params: &Params,
) -> Result<EndsEstimate> {
    let cs = component_system(p, f, params.margin)?;
    ends_estimate(&cs, params.window)
}

/// Ends of the group itself: the Cayley graph filtered by metric balls.
pub fn group_ends(m: &GroupModel, params: &Params) -> Result<EndsEstimate> {
    let cover = Ball::cayley(m, params.cover_radius(), params.budget)?;
    let p = project(&cover, &cover)?;
    let f = regularize(&ball_filtration(&cover, params.n_max)?);
    estimate_over(&p, &f, params)
}

/// Filtered ends of the pair `(G, H)`: the Cayley ball filtered by
/// preimages of metric balls in the coset graph of `H`.
pub fn pair_ends(h: &Arc<Subgroup>, params: &Params) -> Result<EndsEstimate> {
    let radius = params.cover_radius();
    let cover = Ball::cayley(h.model(), radius, params.budget)?;
    let base = Ball::schreier(Arc::clone(h), radius, params.budget)?;
    pair_ends_on(&cover, &base, params)
}

/// [`pair_ends`] over prebuilt balls.
pub fn pair_ends_on(cover: &Ball, base: &Ball, params: &Params) -> Result<EndsEstimate> {
    let p = project(cover, base)?;
    let f = regularize(&ball_filtration(base, params.n_max)?);
    let mut est = estimate_over(&p, &f, params)?;
    let exhausted = (0..base.vertex_count()).all(|v| base.distance(v) <= params.n_max);
    if base.is_complete() && exhausted {
        est.saturated = true;
        est.stabilized = true;
        est.value = Some(0);
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cayley_ball;
    use crate::groups::SubgroupSpec;

    fn z(rank: usize) -> GroupModel {
        GroupModel::free_abelian(rank).unwrap()
    }

    fn sub(m: &GroupModel, gens: &[&str]) -> Arc<Subgroup> {
        Arc::new(Subgroup::new(m, &SubgroupSpec::parse(m, gens).unwrap()).unwrap())
    }

    #[test]
    fn line_has_two_stable_ends() {
        let b = cayley_ball(&z(1), 8, DEFAULT_BUDGET).unwrap();
        let p = project(&b, &b).unwrap();
        let f = ball_filtration(&b, 4).unwrap();
        let cs = component_system(&p, &f, 4).unwrap();
        for n in 0..4 {
            assert!(cs.horizon_bijective(n));
            assert_eq!(cs.levels()[n].components.len(), 2);
        }
        let e = ends_estimate(&cs, 3).unwrap();
        assert_eq!(e.counts, vec![2; 5]);
        assert_eq!(e.value, Some(2));
        assert!(!e.increasing);
    }

    #[test]
    fn slab_complement_has_two_components() {
        let m = z(2);
        let cover = cayley_ball(&m, 8, DEFAULT_BUDGET).unwrap();
        let base = Ball::schreier(sub(&m, &["x"]), 8, DEFAULT_BUDGET).unwrap();
        let p = project(&cover, &base).unwrap();
        let f = ball_filtration(&base, 4).unwrap();
        let cs = component_system(&p, &f, 4).unwrap();
        for lvl in cs.levels() {
            assert_eq!(lvl.horizon_count(), 2);
            assert_eq!(lvl.trapped_count(), 0);
        }
    }

    #[test]
    fn tree_counts_grow() {
        let m = GroupModel::free(2).unwrap();
        let e = group_ends(&m, &Params::new(3)).unwrap();
        assert_eq!(e.counts, vec![4, 12, 36, 108]);
        assert!(!e.stabilized);
        assert!(e.increasing);
        assert_eq!(e.lower_bound, 108);
        assert_eq!(e.value, None);
    }

    #[test]
    fn grid_has_one_end() {
        let e = group_ends(&z(2), &Params::new(4)).unwrap();
        assert_eq!(e.value, Some(1));
        assert_eq!(e.counts, vec![1; 5]);
    }

    #[test]
    fn pair_examples() {
        let e = pair_ends(&sub(&z(2), &["x"]), &Params::new(4)).unwrap();
        assert_eq!(e.value, Some(2));
        let e = pair_ends(&sub(&z(1), &["x x"]), &Params::new(4)).unwrap();
        assert_eq!(e.value, Some(0));
        assert!(e.saturated);
        let e = pair_ends(&sub(&z(3), &["x"]), &Params::new(4)).unwrap();
        assert_eq!(e.value, Some(1));
    }

    #[test]
    fn parameter_errors() {
        let b = cayley_ball(&z(1), 4, DEFAULT_BUDGET).unwrap();
        let p = project(&b, &b).unwrap();
        let f = ball_filtration(&b, 3).unwrap();
        assert!(matches!(
            component_system(&p, &f, 2),
            Err(Error::RadiusTooSmall { .. })
        ));
        let cs = component_system(&p, &ball_filtration(&b, 1).unwrap(), 2).unwrap();
        assert!(matches!(
            ends_estimate(&cs, 3),
            Err(Error::WindowTooLarge { .. })
        ));

        let other = cayley_ball(&z(1), 4, DEFAULT_BUDGET).unwrap();
        let f = ball_filtration(&other, 1).unwrap();
        assert!(component_system(&p, &f, 2).is_err());
    }

    #[test]
    fn equal_counts_without_bijection_are_not_stable() {
        // In the F2 ball, level 0 removes the identity (4 branches). Level 1
        // also removes `a` and the b- and B-branches: the a-branch splits in
        // three and the A-branch survives, so the count stays 4 while the
        // bonding map hits the a-branch three times.
        let m = GroupModel::free(2).unwrap();
        let b = cayley_ball(&m, 3, DEFAULT_BUDGET).unwrap();
        let p = project(&b, &b).unwrap();
        let l0 = Subgraph::from_vertices(&b, &[0]);
        let l1 = Subgraph::induced(&b, |v| {
            let w = b.word(v).letters();
            let is_a = w.len() == 1 && !w[0].inverse && w[0].generator == 0;
            w.is_empty() || is_a || w[0].generator == 1
        });
        let f = Filtration::custom(&b, vec![l0.clone(), l1.clone(), l1]).unwrap();
        let cs = component_system(&p, &f, 0).unwrap();
        let e = ends_estimate(&cs, 2).unwrap();
        assert_eq!(e.counts, vec![4, 4, 4]);
        assert!(!cs.horizon_bijective(0));
        assert!(cs.horizon_bijective(1));
        assert!(e.stabilized, "the last two levels agree");
        let e = ends_estimate(&cs, 3).unwrap();
        assert!(!e.stabilized);
    }
}
