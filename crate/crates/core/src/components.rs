//! Connected components, the largest cluster, and cutoff exploration.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::sampler::Graph;
use crate::{Error, Result};

/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Component label of every vertex, labels dense in `0..count`.
#[derive(Clone, Debug)]
pub struct ComponentLabels {
    pub label: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentLabels {
    /// Size of the component containing `v`.
    pub fn size_of(&self, v: usize) -> usize {
        self.sizes[self.label[v]]
    }
}

pub fn label_components(graph: &Graph) -> ComponentLabels {
    let n = graph.n();
    let mut uf = UnionFind::new(n);
    for &(u, v) in graph.edges() {
        uf.union(u, v);
    }
    let mut root_label = vec![usize::MAX; n];
    let mut label = vec![0; n];
    let mut sizes = Vec::with_capacity(uf.set_count());
    for v in 0..n {
        let r = uf.find(v);
        if root_label[r] == usize::MAX {
            root_label[r] = sizes.len();
            sizes.push(0);
        }
        label[v] = root_label[r];
        sizes[label[v]] += 1;
    }
    ComponentLabels { label, sizes }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub n: usize,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
    pub largest: usize,
    pub second_largest: usize,
    pub fraction: f64,
}

impl ComponentSummary {
    pub fn from_sizes(n: usize, mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let largest = sizes.first().copied().unwrap_or(0);
        let second_largest = sizes.get(1).copied().unwrap_or(0);
        ComponentSummary {
            n,
            largest,
            second_largest,
            fraction: largest as f64 / n as f64,
            component_sizes: sizes,
        }
    }

    pub fn n_components(&self) -> usize {
        self.component_sizes.len()
    }

    /// Number of vertices in components of size `>= omega`.
    pub fn vertices_in_components_at_least(&self, omega: usize) -> usize {
        self.component_sizes
            .iter()
            .take_while(|&&s| s >= omega)
            .sum()
    }

    /// `|B_omega| / n`.
    pub fn b_fraction(&self, omega: usize) -> f64 {
        self.vertices_in_components_at_least(omega) as f64 / self.n as f64
    }

    /// Expected size of the component of a uniformly chosen vertex,
    /// `sum s^2 / n`.
    pub fn mean_vertex_component_size(&self) -> f64 {
        self.component_sizes
            .iter()
            .map(|&s| (s * s) as f64)
            .sum::<f64>()
            / self.n as f64
    }
}

pub fn components(graph: &Graph) -> ComponentSummary {
    ComponentSummary::from_sizes(graph.n(), label_components(graph).sizes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    ReachedCutoff,
    Died,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationResult {
    pub start: usize,
    pub stopped_reason: StopReason,
    pub explored_count: usize,
    pub cutoff: usize,
}

/// Breadth-first exploration from `start`, halted once `omega` vertices are
/// discovered or the component is exhausted.
pub fn explore(graph: &Graph, start: usize, omega: usize) -> Result<ExplorationResult> {
    if start >= graph.n() {
        return Err(Error::VertexOutOfRange {
            vertex: start,
            n: graph.n(),
        });
    }
    if omega == 0 {
        return Err(Error::InvalidParams("cutoff omega must be >= 1".into()));
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let finish = |count: usize, reason| ExplorationResult {
        start,
        stopped_reason: reason,
        explored_count: count,
        cutoff: omega,
    };
    if omega == 1 {
        return Ok(finish(1, StopReason::ReachedCutoff));
    }
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if seen.insert(y) {
                if seen.len() >= omega {
                    return Ok(finish(seen.len(), StopReason::ReachedCutoff));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(finish(seen.len(), StopReason::Died))
}

/// `|B_omega| / n`: fraction of vertices in components of size `>= omega`.
pub fn b_fraction(graph: &Graph, omega: usize) -> f64 {
    components(graph).b_fraction(omega)
}

/// Default cutoff `ceil((ln n)^4)`.
pub fn default_omega(n: usize) -> usize {
    ((n as f64).ln().powi(4).ceil() as usize).max(1)
}
