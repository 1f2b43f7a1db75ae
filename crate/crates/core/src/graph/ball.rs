//! Finite balls in Cayley and Schreier coset graphs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{CosetKey, GroupModel, Letter, Subgroup, SubgroupSpec, Word};

/// Default cap on the number of vertices in a ball.
pub const DEFAULT_BUDGET: usize = 500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BallKind {
    Cayley,
    Schreier,
}

/// A directed, generator-labelled edge `tail --generator--> head`. Its
/// reverse traversal reads the inverse letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub generator: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// The metric ball of radius `radius` around the base vertex of a Cayley
/// graph (vertices are group elements) or Schreier graph (vertices are
/// right cosets `Hg`, edges `Hg -> Hgs`).
///
/// The ball is the induced subgraph on all vertices within distance
/// `radius`. Vertex 0 is the base vertex.
#[derive(Clone, Debug)]
pub struct Ball {
    kind: BallKind,
    subgroup: Arc<Subgroup>,
    words: Vec<Word>,
    keys: Vec<CosetKey>,
    lookup: HashMap<CosetKey, usize>,
    dist: Vec<usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<Option<usize>>>,
    incident: Vec<Vec<usize>>,
    radius: usize,
    complete: bool,
}

impl Ball {
    /// Breadth-first ball in the Cayley graph of `model`, keyed by normal
    /// forms.
    pub fn cayley(model: &GroupModel, radius: usize, budget: usize) -> Result<Ball> {
        let trivial = Arc::new(Subgroup::trivial(model).named("1"));
        Ball::build(BallKind::Cayley, trivial, radius, budget)
    }

    /// Breadth-first ball in the coset graph of `subgroup`. Each vertex is
    /// represented by the first word that reached it, which is the shortlex
    /// least word in its coset among those of length at most the radius.
    pub fn schreier(subgroup: Arc<Subgroup>, radius: usize, budget: usize) -> Result<Ball> {
        Ball::build(BallKind::Schreier, subgroup, radius, budget)
    }

    fn key_of(kind: BallKind, subgroup: &Subgroup, w: &Word) -> Result<CosetKey> {
        match kind {
            BallKind::Cayley => Ok(CosetKey::Element(subgroup.model().normal_form(w)?)),
            BallKind::Schreier => subgroup.coset_key(w),
        }
    }

    fn build(
        kind: BallKind,
        subgroup: Arc<Subgroup>,
        radius: usize,
        budget: usize,
    ) -> Result<Ball> {
        let model = subgroup.model().clone();
        let rank = model.rank();
        let letters: Vec<Letter> = Letter::all(rank).collect();

        let mut words = vec![Word::identity()];
        let mut keys = vec![Ball::key_of(kind, &subgroup, &Word::identity())?];
        let mut lookup = HashMap::from([(keys[0].clone(), 0)]);
        let mut dist = vec![0];

        let mut layer_start = 0;
        for d in 0..radius {
            let layer_end = words.len();
            for v in layer_start..layer_end {
                for &l in &letters {
                    let w = words[v].times(l);
                    let key = Ball::key_of(kind, &subgroup, &w)?;
                    if lookup.contains_key(&key) {
                        continue;
                    }
                    if words.len() >= budget {
                        return Err(Error::BudgetExceeded { budget, radius });
                    }
                    let rep = match kind {
                        BallKind::Cayley => model.normal_form_unchecked(&w),
                        BallKind::Schreier => w,
                    };
                    lookup.insert(key.clone(), words.len());
                    words.push(rep);
                    keys.push(key);
                    dist.push(d + 1);
                }
            }
            layer_start = layer_end;
            if layer_start == words.len() {
                break;
            }
        }

        // Induced edges, plus a completeness check on the outer layer.
        let n = words.len();
        let mut edges = Vec::new();
        let mut out = vec![vec![None; rank]; n];
        let mut incident = vec![Vec::new(); n];
        let mut complete = true;
        for v in 0..n {
            for &l in &letters {
                let w = words[v].times(l);
                let key = Ball::key_of(kind, &subgroup, &w)?;
                match lookup.get(&key) {
                    Some(&u) if !l.inverse => {
                        let id = edges.len();
                        edges.push(Edge {
                            tail: v,
                            head: u,
                            generator: l.generator,
                        });
                        out[v][l.generator] = Some(id);
                        incident[v].push(id);
                        if u != v {
                            incident[u].push(id);
                        }
                    }
                    Some(_) => {}
                    None => complete = false,
                }
            }
        }

        Ok(Ball {
            kind,
            subgroup,
            words,
            keys,
            lookup,
            dist,
            edges,
            out,
            incident,
            radius,
            complete,
        })
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    pub fn model(&self) -> &GroupModel {
        self.subgroup.model()
    }

    /// The subgroup whose cosets are the vertices (trivial for Cayley).
    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.subgroup
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// True iff every vertex has all its neighbours inside the ball, i.e.
    /// the whole (finite) graph was exhausted.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.words[v]
    }

    pub fn key(&self, v: usize) -> &CosetKey {
        &self.keys[v]
    }

    pub fn distance(&self, v: usize) -> usize {
        self.dist[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Edge ids touching `v`; a loop is listed once.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Edge id of `v --generator-->`, if its head is inside the ball.
    pub fn out_edge(&self, v: usize, generator: usize) -> Option<usize> {
        self.out[v][generator]
    }

    /// Neighbour of `v` across the letter `l`, if inside the ball.
    pub fn step(&self, v: usize, l: Letter) -> Option<usize> {
        if l.inverse {
            self.incident[v]
                .iter()
                .map(|&e| self.edges[e])
                .find(|e| e.head == v && e.generator == l.generator)
                .map(|e| e.tail)
        } else {
            self.out[v][l.generator].map(|e| self.edges[e].head)
        }
    }

    /// Vertex holding the coset (or element) of `w`, if it lies in the ball.
    pub fn locate(&self, w: &Word) -> Result<Option<usize>> {
        let key = Ball::key_of(self.kind, &self.subgroup, w)?;
        Ok(self.lookup.get(&key).copied())
    }

    /// Whether `v` lies on the truncation horizon of an incomplete ball.
    pub fn on_horizon(&self, v: usize) -> bool {
        !self.complete && self.dist[v] == self.radius
    }

    /// Display name of a vertex: its representative word, `1` for the
    /// identity.
    pub fn vertex_name(&self, v: usize) -> String {
        let w = &self.words[v];
        if w.is_empty() {
            "1".to_string()
        } else {
            self.model().render(w)
        }
    }
}

/// Ball of radius `radius` in the Cayley graph of `m`.
pub fn cayley_ball(m: &GroupModel, radius: usize, budget: usize) -> Result<Ball> {
    Ball::cayley(m, radius, budget)
}

/// Ball of radius `radius` in the coset graph of `<h>` in `m`.
pub fn schreier_ball(
    m: &GroupModel,
    h: &SubgroupSpec,
    radius: usize,
    budget: usize,
) -> Result<Ball> {
    Ball::schreier(Arc::new(Subgroup::new(m, h)?), radius, budget)
}
