//! Covering projections between balls: `Hg -> H'g` for `H <= H'`.

use super::ball::Ball;
use super::cw::Subgraph;
use crate::error::{Error, Result};
use crate::groups::Letter;

/// The covering map from a cover ball onto a base ball, restricted to the
/// cover's vertices.
#[derive(Clone, Debug)]
pub struct Projection<'c, 'b> {
    cover: &'c Ball,
    base: &'b Ball,
    map: Vec<usize>,
}

/// Builds the projection sending the vertex of `w` in `cover` to the vertex
/// of the coset `Hw` in `base`, where `H` is the base's subgroup.
///
/// The cover's subgroup must lie in `H`, and the base must reach at least as
/// far as the cover so that every cover vertex has an image.
pub fn project<'c, 'b>(cover: &'c Ball, base: &'b Ball) -> Result<Projection<'c, 'b>> {
    if cover.model() != base.model() {
        return Err(Error::InconsistentBalls(
            "cover and base balls belong to different groups".to_string(),
        ));
    }
    if cover.radius() > base.radius() && !base.is_complete() {
        return Err(Error::InconsistentBalls(format!(
            "cover radius {} exceeds base radius {}",
            cover.radius(),
            base.radius()
        )));
    }
    if let Some(w) = base.subgroup().first_non_member(cover.subgroup())? {
        return Err(Error::ChainViolation {
            inner: cover.subgroup().label().to_string(),
            outer: base.subgroup().label().to_string(),
            word: cover.model().render(&w),
        });
    }
    let map = (0..cover.vertex_count())
        .map(|v| {
            base.locate(cover.word(v))?
                .ok_or_else(|| Error::UnmatchedCoset {
                    word: cover.vertex_name(v),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Projection { cover, base, map })
}

impl<'c, 'b> Projection<'c, 'b> {
    pub fn cover(&self) -> &'c Ball {
        self.cover
    }

    pub fn base(&self) -> &'b Ball {
        self.base
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    /// Base edge carrying the cover edge `id`. Labels are preserved.
    pub fn edge_image(&self, id: usize) -> Option<usize> {
        let e = self.cover.edge(id);
        let image = self.base.out_edge(self.map[e.tail], e.generator)?;
        debug_assert_eq!(self.base.edge(image).head, self.map[e.head]);
        Some(image)
    }

    /// Whether the letter-labelled neighbourhood of `v` maps bijectively
    /// onto that of its image.
    pub fn is_local_isomorphism_at(&self, v: usize) -> bool {
        let image = self.map[v];
        Letter::all(self.cover.model().rank()).all(|l| {
            match (self.cover.step(v, l), self.base.step(image, l)) {
                (Some(u), Some(t)) => self.map[u] == t,
                _ => false,
            }
        })
    }

    /// All cover vertices and edges that map into `c`.
    pub fn preimage(&self, c: &Subgraph<'_>) -> Subgraph<'c> {
        let vertices: Vec<bool> = self.map.iter().map(|&t| c.has_vertex(t)).collect();
        let edges = (0..self.cover.edge_count())
            .map(|id| self.edge_image(id).is_some_and(|t| c.has_edge(t)))
            .collect();
        Subgraph::from_masks(self.cover, vertices, edges)
    }
}

/// Cover subgraph mapping into `c` under `p`.
pub fn preimage<'c>(p: &Projection<'c, '_>, c: &Subgraph<'_>) -> Subgraph<'c> {
    p.preimage(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ball::{cayley_ball, schreier_ball, DEFAULT_BUDGET};
    use crate::graph::cw::cw_complement;
    use crate::groups::{GroupModel, SubgroupSpec};

    #[test]
    fn trivial_subgroup_is_bijection() {
        let m = GroupModel::free(2).unwrap();
        let cover = cayley_ball(&m, 3, DEFAULT_BUDGET).unwrap();
        let base = schreier_ball(&m, &SubgroupSpec::trivial(), 3, DEFAULT_BUDGET).unwrap();
        let p = project(&cover, &base).unwrap();
        let mut seen = vec![false; base.vertex_count()];
        for v in 0..cover.vertex_count() {
            assert!(!seen[p.image(v)]);
            seen[p.image(v)] = true;
            assert_eq!(cover.word(v), base.word(p.image(v)));
        }
        let c = Subgraph::metric_ball(&base, 2);
        let pre = p.preimage(&c);
        assert_eq!(pre.vertex_count(), c.vertex_count());
        assert_eq!(pre.edge_count(), c.edge_count());
    }

    #[test]
    fn abelian_line_projection() {
        let m = GroupModel::free_abelian(2).unwrap();
        let h = SubgroupSpec::parse(&m, &["x"]).unwrap();
        let cover = cayley_ball(&m, 3, DEFAULT_BUDGET).unwrap();
        let base = schreier_ball(&m, &h, 3, DEFAULT_BUDGET).unwrap();
        let p = project(&cover, &base).unwrap();
        for s in ["x", "X", ""] {
            let v = cover.locate(&m.parse_word(s).unwrap()).unwrap().unwrap();
            assert_eq!(p.image(v), 0);
        }
        // Preimage of the base coset is the x-axis: x^k for |k| <= 3.
        let pre = p.preimage(&Subgraph::from_vertices(&base, &[0]));
        assert_eq!(pre.vertex_count(), 7);
        for v in pre.vertices() {
            let w = cover.word(v);
            assert!(w.letters().iter().all(|l| l.generator == 0));
        }
        // Whole base pulls back to the whole cover.
        let all = p.preimage(&Subgraph::full(&base));
        assert_eq!(all, Subgraph::full(&cover));
    }

    #[test]
    fn free_projection_follows_folded_loop() {
        let m = GroupModel::free(2).unwrap();
        let h = SubgroupSpec::parse(&m, &["a"]).unwrap();
        let cover = cayley_ball(&m, 3, DEFAULT_BUDGET).unwrap();
        let base = schreier_ball(&m, &h, 3, DEFAULT_BUDGET).unwrap();
        let p = project(&cover, &base).unwrap();
        let aaa = cover
            .locate(&m.parse_word("a a a").unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(p.image(aaa), 0);
        let b = cover.locate(&m.parse_word("b").unwrap()).unwrap().unwrap();
        let target = base.step(0, Letter::pos(1)).unwrap();
        assert_eq!(p.image(b), target);
        assert_ne!(target, 0);
    }

    #[test]
    fn label_preserving_and_locally_bijective() {
        let m = GroupModel::free_abelian(3).unwrap();
        let h = SubgroupSpec::parse(&m, &["x", "y y"]).unwrap();
        let cover = cayley_ball(&m, 4, DEFAULT_BUDGET).unwrap();
        let base = schreier_ball(&m, &h, 4, DEFAULT_BUDGET).unwrap();
        let p = project(&cover, &base).unwrap();
        for id in 0..cover.edge_count() {
            let t = p.edge_image(id).expect("image edge");
            assert_eq!(cover.edge(id).generator, base.edge(t).generator);
        }
        for v in 0..cover.vertex_count() {
            if cover.distance(v) + 1 < cover.radius() {
                assert!(p.is_local_isomorphism_at(v));
            }
        }
    }

    #[test]
    fn preimage_complement_exchange() {
        let m = GroupModel::free(2).unwrap();
        let h = SubgroupSpec::parse(&m, &["a b", "b b A"]).unwrap();
        let cover = cayley_ball(&m, 4, DEFAULT_BUDGET).unwrap();
        let base = schreier_ball(&m, &h, 4, DEFAULT_BUDGET).unwrap();
        let p = project(&cover, &base).unwrap();
        let c = Subgraph::metric_ball(&base, 1);
        let lhs = p.preimage(&cw_complement(&Subgraph::full(&base), &c));
        let rhs = cw_complement(&Subgraph::full(&cover), &p.preimage(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_inconsistent_pairs() {
        let m = GroupModel::free_abelian(2).unwrap();
        let cover = schreier_ball(
            &m,
            &SubgroupSpec::parse(&m, &["y"]).unwrap(),
            2,
            DEFAULT_BUDGET,
        )
        .unwrap();
        let base = schreier_ball(
            &m,
            &SubgroupSpec::parse(&m, &["x"]).unwrap(),
            2,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(matches!(
            project(&cover, &base),
            Err(Error::ChainViolation { .. })
        ));

        let cover = cayley_ball(&m, 3, DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            project(&cover, &base),
            Err(Error::InconsistentBalls(_))
        ));
    }
}
