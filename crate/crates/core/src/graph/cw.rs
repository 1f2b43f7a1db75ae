//! Subgraphs of a ball and the CW operations on them: complement,
//! neighbourhood, bridge edges and path components.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::ball::Ball;

/// A subgraph of a [`Ball`], given by vertex and edge masks.
///
/// Every selected edge has both endpoints selected.
#[derive(Clone, Debug)]
pub struct Subgraph<'b> {
    ball: &'b Ball,
    vertices: Vec<bool>,
    edges: Vec<bool>,
}

impl<'b> Subgraph<'b> {
    pub fn empty(ball: &'b Ball) -> Self {
        Subgraph {
            ball,
            vertices: vec![false; ball.vertex_count()],
            edges: vec![false; ball.edge_count()],
        }
    }

    pub fn full(ball: &'b Ball) -> Self {
        Subgraph {
            ball,
            vertices: vec![true; ball.vertex_count()],
            edges: vec![true; ball.edge_count()],
        }
    }

    /// The induced subgraph on the vertices selected by `keep`.
    pub fn induced(ball: &'b Ball, keep: impl Fn(usize) -> bool) -> Self {
        let vertices: Vec<bool> = (0..ball.vertex_count()).map(keep).collect();
        let edges = ball
            .edges()
            .iter()
            .map(|e| vertices[e.tail] && vertices[e.head])
            .collect();
        Subgraph {
            ball,
            vertices,
            edges,
        }
    }

    /// Vertices within distance `n` of the base vertex, with induced edges.
    pub fn metric_ball(ball: &'b Ball, n: usize) -> Self {
        Subgraph::induced(ball, |v| ball.distance(v) <= n)
    }

    /// Builds a subgraph from explicit masks, dropping edges whose
    /// endpoints are not both selected.
    pub fn from_masks(ball: &'b Ball, vertices: Vec<bool>, mut edges: Vec<bool>) -> Self {
        assert_eq!(vertices.len(), ball.vertex_count());
        assert_eq!(edges.len(), ball.edge_count());
        for (id, e) in ball.edges().iter().enumerate() {
            edges[id] &= vertices[e.tail] && vertices[e.head];
        }
        Subgraph {
            ball,
            vertices,
            edges,
        }
    }

    pub fn from_vertices(ball: &'b Ball, vs: &[usize]) -> Self {
        let mut s = Subgraph::empty(ball);
        for &v in vs {
            s.vertices[v] = true;
        }
        s
    }

    pub fn ball(&self) -> &'b Ball {
        self.ball
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices[v]
    }

    pub fn has_edge(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn vertex_mask(&self) -> &[bool] {
        &self.vertices
    }

    pub fn edge_mask(&self) -> &[bool] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| v)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(e, _)| e)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.vertices.iter().any(|&b| b)
    }

    pub fn insert_vertex(&mut self, v: usize) {
        self.vertices[v] = true;
    }

    /// Adds an edge together with its endpoints.
    pub fn insert_edge(&mut self, id: usize) {
        let e = self.ball.edge(id);
        self.edges[id] = true;
        self.vertices[e.tail] = true;
        self.vertices[e.head] = true;
    }

    pub fn is_subgraph_of(&self, other: &Subgraph<'_>) -> bool {
        self.vertices
            .iter()
            .zip(&other.vertices)
            .all(|(&a, &b)| !a || b)
            && self.edges.iter().zip(&other.edges).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Subgraph<'_>) -> Subgraph<'b> {
        Subgraph {
            ball: self.ball,
            vertices: zip_with(&self.vertices, &other.vertices, |a, b| a || b),
            edges: zip_with(&self.edges, &other.edges, |a, b| a || b),
        }
    }

    pub fn intersection(&self, other: &Subgraph<'_>) -> Subgraph<'b> {
        Subgraph {
            ball: self.ball,
            vertices: zip_with(&self.vertices, &other.vertices, |a, b| a && b),
            edges: zip_with(&self.edges, &other.edges, |a, b| a && b),
        }
    }
}

/// Equal when drawn from the same ball with the same masks.
impl PartialEq for Subgraph<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ball, other.ball)
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

impl Eq for Subgraph<'_> {}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

/// Largest subgraph of `g` whose vertices avoid `a`: vertices of `g` not in
/// `a`, and edges of `g` with both endpoints outside `a`.
pub fn cw_complement<'b>(g: &Subgraph<'b>, a: &Subgraph<'_>) -> Subgraph<'b> {
    let ball = g.ball;
    let vertices = zip_with(&g.vertices, &a.vertices, |in_g, in_a| in_g && !in_a);
    let edges = ball
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| g.edges[id] && !a.vertices[e.tail] && !a.vertices[e.head])
        .collect();
    Subgraph {
        ball,
        vertices,
        edges,
    }
}

/// Edges of `g` lying neither in `a` nor in `cw_complement(g, a)`: those
/// that touch `a` without belonging to it. For an induced `a` these are the
/// edges with exactly one endpoint in `a`.
pub fn bridge_edges(g: &Subgraph<'_>, a: &Subgraph<'_>) -> Vec<usize> {
    g.edge_ids()
        .filter(|&id| {
            let e = g.ball.edge(id);
            !a.edges[id] && (a.vertices[e.tail] || a.vertices[e.head])
        })
        .collect()
}

/// `a` together with every edge of `g` meeting `a`, and those edges'
/// endpoints.
pub fn cw_neighborhood<'b>(g: &Subgraph<'b>, a: &Subgraph<'_>) -> Subgraph<'b> {
    let mut n = Subgraph {
        ball: g.ball,
        vertices: a.vertices.clone(),
        edges: a.edges.clone(),
    };
    for id in g.edge_ids() {
        let e = g.ball.edge(id);
        if a.vertices[e.tail] || a.vertices[e.head] {
            n.insert_edge(id);
        }
    }
    n
}

/// A path component of a subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// Reaches the truncation horizon of an incomplete ball: the finite
    /// stand-in for an unbounded component.
    pub horizon: bool,
}

/// Path components of `s`, ordered by smallest vertex.
pub fn components(s: &Subgraph<'_>) -> Vec<Component> {
    let ball = s.ball;
    let n = ball.vertex_count();
    let mut uf = UnionFind::<usize>::new(n);
    for id in s.edge_ids() {
        let e = ball.edge(id);
        uf.union(e.tail, e.head);
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Component> = Vec::new();
    for v in s.vertices() {
        let root = uf.find(v);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Component {
                vertices: Vec::new(),
                horizon: false,
            });
        }
        let c = &mut out[slot[root]];
        c.vertices.push(v);
        c.horizon |= ball.on_horizon(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ball::{cayley_ball, schreier_ball, DEFAULT_BUDGET};
    use crate::groups::{GroupModel, SubgroupSpec};

    fn z_line(r: usize) -> Ball {
        cayley_ball(&GroupModel::free_abelian(1).unwrap(), r, DEFAULT_BUDGET).unwrap()
    }

    /// Vertex of x^k in a Z ball.
    fn at(b: &Ball, k: i64) -> usize {
        let m = b.model();
        let w = if k >= 0 {
            "x ".repeat(k as usize)
        } else {
            "X ".repeat((-k) as usize)
        };
        b.locate(&m.parse_word(&w).unwrap()).unwrap().unwrap()
    }

    /// Z/4: a 4-cycle 0-1-2-3-0.
    fn four_cycle() -> Ball {
        let m = GroupModel::free_abelian(1).unwrap();
        let h = SubgroupSpec::parse(&m, &["x x x x"]).unwrap();
        schreier_ball(&m, &h, 4, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn complement_examples() {
        let path = z_line(1);
        let g = Subgraph::full(&path);
        let a = Subgraph::from_vertices(&path, &[at(&path, 0)]);
        let c = cw_complement(&g, &a);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 0);
        assert_eq!(cw_complement(&g, &Subgraph::empty(&path)), g);

        let cyc = four_cycle();
        assert_eq!(cyc.vertex_count(), 4);
        let g = Subgraph::full(&cyc);
        let c = cw_complement(&g, &Subgraph::from_vertices(&cyc, &[0]));
        assert_eq!((c.vertex_count(), c.edge_count()), (3, 2));
        assert_eq!(components(&c).len(), 1);
    }

    #[test]
    fn neighborhood_examples() {
        let path = z_line(1);
        let g = Subgraph::full(&path);
        let mid = Subgraph::from_vertices(&path, &[at(&path, 0)]);
        assert_eq!(cw_neighborhood(&g, &mid), g);
        assert!(cw_neighborhood(&g, &Subgraph::empty(&path)).is_empty());

        let f2 = GroupModel::free(2).unwrap();
        let star = cayley_ball(&f2, 1, DEFAULT_BUDGET).unwrap();
        let leaf = Subgraph::from_vertices(&star, &[1]);
        let n = cw_neighborhood(&Subgraph::full(&star), &leaf);
        assert_eq!((n.vertex_count(), n.edge_count()), (2, 1));
        assert!(n.has_vertex(0));
    }

    #[test]
    fn bridge_examples() {
        let path = z_line(1);
        let g = Subgraph::full(&path);
        let mid = Subgraph::from_vertices(&path, &[at(&path, 0)]);
        assert_eq!(bridge_edges(&g, &mid).len(), 2);
        assert!(bridge_edges(&g, &g).is_empty());

        let cyc = four_cycle();
        let g = Subgraph::full(&cyc);
        // Vertices 0 (x^0) and 1 (x) with the edge between them.
        let a = Subgraph::induced(&cyc, |v| v <= 1);
        assert_eq!(a.edge_count(), 1);
        let bridges = bridge_edges(&g, &a);
        assert_eq!(bridges.len(), 2);
        for id in bridges {
            let e = cyc.edge(id);
            assert!(a.has_vertex(e.tail) != a.has_vertex(e.head));
        }
    }

    #[test]
    fn component_examples() {
        let b = z_line(3);
        let g = Subgraph::full(&b);
        let cs = components(&cw_complement(&g, &Subgraph::from_vertices(&b, &[0])));
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.horizon));

        // Z/3 is a triangle; radius 1 already exhausts it.
        let m = GroupModel::free_abelian(1).unwrap();
        let tri = schreier_ball(
            &m,
            &SubgroupSpec::parse(&m, &["x x x"]).unwrap(),
            1,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(tri.is_complete());
        assert_eq!(tri.vertex_count(), 3);
        let cs = components(&cw_complement(
            &Subgraph::full(&tri),
            &Subgraph::from_vertices(&tri, &[0]),
        ));
        assert_eq!(cs.len(), 1);
        assert!(!cs[0].horizon);

        let f2 = GroupModel::free(2).unwrap();
        let b = cayley_ball(&f2, 3, DEFAULT_BUDGET).unwrap();
        let cs = components(&cw_complement(
            &Subgraph::full(&b),
            &Subgraph::metric_ball(&b, 1),
        ));
        assert_eq!(cs.len(), 12);
        assert!(cs.iter().all(|c| c.horizon));
    }

    #[test]
    fn shrinking_never_merges() {
        let m = GroupModel::free_abelian(2).unwrap();
        let b = cayley_ball(&m, 4, DEFAULT_BUDGET).unwrap();
        let g = Subgraph::full(&b);
        let big = cw_complement(&g, &Subgraph::metric_ball(&b, 0));
        let small = cw_complement(&g, &Subgraph::metric_ball(&b, 2));
        let owner = |cs: &[Component], v: usize| cs.iter().position(|c| c.vertices.contains(&v));
        let cb = components(&big);
        let cs = components(&small);
        for c in &cs {
            let o = owner(&cb, c.vertices[0]);
            assert!(c.vertices.iter().all(|&v| owner(&cb, v) == o));
        }
    }
}
