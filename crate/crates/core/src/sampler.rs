//! Graph realisations: a per-pair reference sampler, a distance-class
//! sampler, and a filtration that couples the graphs for every `c' <= c_max`.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::model::{distance_classes, EdgeModel};
use crate::rng::{self, StreamRng};
use crate::{Error, Result};

/// Default bound on `n` for [`sample_naive`].
pub const NAIVE_LIMIT: usize = 10_000;

/// Undirected simple graph on `0..n` with CSR adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical `(u, v)` with `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Graph {
    /// Build from arbitrary pairs; rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph::from_canonical(n, canon))
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_canonical(n, Vec::new())
    }

    /// `edges` must be canonical, sorted and free of duplicates.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        // Sorted edge order fills every list in increasing order.
        for &(u, v) in &edges {
            neighbors[cursor[u]] = v;
            cursor[u] += 1;
            neighbors[cursor[v]] = u;
            cursor[v] += 1;
        }
        Graph {
            n,
            edges,
            offsets,
            neighbors,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edge-set inclusion on the same vertex set.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edges.len() > other.edges.len() {
            return false;
        }
        let mut it = other.edges.iter();
        self.edges.iter().all(|e| it.by_ref().any(|f| f == e))
    }

    /// Bytes held by the graph's buffers.
    pub fn heap_bytes(&self) -> usize {
        use std::mem::size_of;
        self.edges.capacity() * size_of::<(usize, usize)>()
            + (self.offsets.capacity() + self.neighbors.capacity()) * size_of::<usize>()
    }
}

/// Per-pair Bernoulli sampling in `O(n^2)`; the reference sampler.
pub fn sample_naive(model: &EdgeModel, stream: u64) -> Result<Graph> {
    sample_naive_with_limit(model, stream, NAIVE_LIMIT)
}

pub fn sample_naive_with_limit(model: &EdgeModel, stream: u64, limit: usize) -> Result<Graph> {
    let n = model.n();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let mut rng = rng::stream(stream);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = model.class_prob((v - u).min(n - v + u));
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_canonical(n, edges))
}

/// Pair `index` of the class at distance `d`: `{index, index + d mod n}`.
#[inline]
fn class_pair(index: usize, d: usize, n: usize) -> (usize, usize) {
    let w = (index + d) % n;
    (index.min(w), index.max(w))
}

/// Visit the realised pairs of every distance class. Class `d` draws from
/// substream `d` of `stream`: a binomial count, then that many distinct pairs.
fn for_each_class_edge<F>(model: &EdgeModel, stream: u64, mut emit: F)
where
    F: FnMut(usize, (usize, usize), &mut StreamRng),
{
    let n = model.n();
    for class in distance_classes(n) {
        let p = model.class_prob(class.d);
        if !(p > 0.0) {
            continue;
        }
        let mut rng = rng::substream(stream, class.d as u64);
        if p >= 1.0 {
            for i in 0..class.pairs {
                emit(class.d, class_pair(i, class.d, n), &mut rng);
            }
            continue;
        }
        let k = Binomial::new(class.pairs as u64, p)
            .expect("probability in (0, 1)")
            .sample(&mut rng) as usize;
        if k == 0 {
            continue;
        }
        for i in index::sample(&mut rng, class.pairs, k) {
            emit(class.d, class_pair(i, class.d, n), &mut rng);
        }
    }
}

/// Distance-class sampler: same law as [`sample_naive`], expected work
/// `O(n + |E|)`.
pub fn sample_fast(model: &EdgeModel, stream: u64) -> Graph {
    let mut edges = Vec::with_capacity((model.expected_edges() * 1.1) as usize + 16);
    for_each_class_edge(model, stream, |_, e, _| edges.push(e));
    edges.sort_unstable();
    Graph::from_canonical(model.n(), edges)
}

/// Realised edges at level `c_max`, each tagged with the smallest `c` at
/// which it is present.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Filtration {
    n: usize,
    c_max: f64,
    /// Sorted by `(u, v)`.
    edges: Vec<(usize, usize, f64)>,
}

impl Filtration {
    /// Validates endpoints and activations in `(0, c_max]`.
    pub fn from_parts(
        n: usize,
        c_max: f64,
        mut edges: Vec<(usize, usize, f64)>,
    ) -> Result<Filtration> {
        if !(c_max >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "c_max must be >= 0, got {c_max}"
            )));
        }
        for e in edges.iter_mut() {
            let (u, v, a) = *e;
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !(a > 0.0 && a <= c_max) {
                return Err(Error::InvalidParams(format!(
                    "activation {a} of edge {{{u}, {v}}} outside (0, {c_max}]"
                )));
            }
            *e = (u.min(v), u.max(v), a);
        }
        edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Filtration { n, c_max, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c_max(&self) -> f64 {
        self.c_max
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Graph of edges with activation `<= level`.
    pub fn subgraph_at(&self, level: f64) -> Result<Graph> {
        if level > self.c_max {
            return Err(Error::LevelAboveMax {
                level,
                c_max: self.c_max,
            });
        }
        if !(level >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "level must be >= 0, got {level}"
            )));
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(_, _, a)| a <= level)
            .map(|&(u, v, _)| (u, v))
            .collect();
        Ok(Graph::from_canonical(self.n, edges))
    }
}

/// Sample the coupled family up to `c_max = model.c()`.
///
/// An edge open at `c_max` has `U < min(1, c_max f / h)`, so its activation
/// `U h / f` is uniform on `(0, min(c_max, h / f)]`.
pub fn sample_filtration(model: &EdgeModel, stream: u64) -> Filtration {
    let c_max = model.c();
    let h = model.normalizer().value;
    let mut edges = Vec::with_capacity((model.expected_edges() * 1.1) as usize + 16);
    for_each_class_edge(model, stream, |d, (u, v), rng| {
        let upper = if model.raw_class_prob(d) > 1.0 {
            h / model.class_weight(d)
        } else {
            c_max
        };
        let activation = (upper * (1.0 - rng.random::<f64>())).min(c_max);
        edges.push((u, v, activation));
    });
    edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
    Filtration {
        n: model.n(),
        c_max,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use proptest::prelude::*;

    fn model(n: usize, alpha: f64, c: f64) -> EdgeModel {
        EdgeModel::new(&ModelParams::alpha_model(n, alpha, c, 0).unwrap()).unwrap()
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn adjacency_is_sorted_and_consistent() {
        let g = Graph::new(6, [(5, 0), (2, 4), (0, 2), (3, 1), (2, 5)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (0, 5), (1, 3), (2, 4), (2, 5)]);
        assert_eq!(g.neighbors(2), &[0, 4, 5]);
        assert_eq!(g.neighbors(5), &[0, 2]);
        assert_eq!(g.degree(1), 1);
        assert!(g.has_edge(4, 2) && !g.has_edge(0, 1));
        let total: usize = (0..6).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn two_vertices_clamped_edge_is_present() {
        let m = model(2, 1.0, 3.0);
        assert_eq!(m.edge_prob(0, 1).unwrap(), 1.0);
        assert_eq!(sample_naive(&m, 5).unwrap().edges(), &[(0, 1)]);
        assert_eq!(sample_fast(&m, 5).edges(), &[(0, 1)]);
    }

    #[test]
    fn zero_c_gives_empty_graphs() {
        let m = model(100, 0.0, 0.0);
        assert_eq!(sample_naive(&m, 1).unwrap().edge_count(), 0);
        assert_eq!(sample_fast(&m, 1).edge_count(), 0);
        assert_eq!(sample_filtration(&m, 1).edges().len(), 0);
    }

    #[test]
    fn naive_guard() {
        let m = model(20_001, 1.0, 1.0);
        assert!(matches!(sample_naive(&m, 0), Err(Error::TooLarge { .. })));
        assert!(sample_naive_with_limit(&model(50, 1.0, 1.0), 0, 10).is_err());
    }

    #[test]
    fn nearest_neighbour_has_only_unit_edges() {
        let m = model(100, f64::INFINITY, 1.0);
        let g = sample_fast(&m, 11);
        assert!(g.edge_count() > 20 && g.edge_count() < 80);
        for &(u, v) in g.edges() {
            assert_eq!(crate::model::ring_distance(u, v, 100).unwrap(), 1);
        }
    }

    #[test]
    fn deterministic_per_stream() {
        let m = model(5000, 1.0, 2.0);
        assert_eq!(sample_fast(&m, 99), sample_fast(&m, 99));
        assert_ne!(sample_fast(&m, 99), sample_fast(&m, 100));
    }

    #[test]
    fn clamped_classes_are_emitted_whole() {
        // alpha = 3, n = 10, c = 50: distance one is clamped at 1.
        let m = model(10, 3.0, 50.0);
        assert_eq!(m.class_prob(1), 1.0);
        let g = sample_fast(&m, 3);
        for u in 0..10 {
            assert!(g.has_edge(u, (u + 1) % 10));
        }
    }

    #[test]
    fn filtration_boundaries() {
        let m = model(500, 1.0, 2.0);
        let f = sample_filtration(&m, 7);
        let full = f.subgraph_at(2.0).unwrap();
        assert_eq!(full.edge_count(), f.edges().len());
        assert_eq!(f.subgraph_at(1e-300).unwrap().edge_count(), 0);
        assert!(matches!(
            f.subgraph_at(2.5),
            Err(Error::LevelAboveMax { .. })
        ));
        // the filtration at c_max is the distance-class sample itself
        assert_eq!(full, sample_fast(&m, 7));
    }

    #[test]
    fn filtration_activation_respects_clamp() {
        // p_1 clamps at c = 50; the activation of a distance-one edge lies
        // below h / f(1) = h, where it becomes certain.
        let m = model(10, 3.0, 50.0);
        let h = m.normalizer().value;
        let f = sample_filtration(&m, 1);
        for &(u, v, a) in f.edges() {
            if crate::model::ring_distance(u, v, 10).unwrap() == 1 {
                assert!(a <= h);
            }
        }
        let at_h = f.subgraph_at(h).unwrap();
        for u in 0..10 {
            assert!(at_h.has_edge(u, (u + 1) % 10));
        }
    }

    #[test]
    fn filtration_from_parts_validates() {
        assert!(Filtration::from_parts(4, 1.0, vec![(0, 1, 0.5), (2, 1, 1.0)]).is_ok());
        assert!(Filtration::from_parts(4, 1.0, vec![(0, 1, 1.5)]).is_err());
        assert!(Filtration::from_parts(4, 1.0, vec![(0, 1, 0.0)]).is_err());
        assert!(Filtration::from_parts(4, 1.0, vec![(0, 1, 0.2), (1, 0, 0.3)]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn filtration_levels_are_nested(seed in any::<u64>(), alpha in 0.0f64..3.0, n in 10usize..400) {
            let m = model(n, alpha, 3.0);
            let f = sample_filtration(&m, seed);
            let levels: Vec<f64> = (1..=10).map(|k| 0.3 * k as f64).collect();
            let graphs: Vec<Graph> = levels.iter().map(|&c| f.subgraph_at(c).unwrap()).collect();
            for w in graphs.windows(2) {
                prop_assert!(w[0].is_subgraph_of(&w[1]));
            }
        }

        #[test]
        fn fast_sample_is_a_simple_graph(seed in any::<u64>(), alpha in 0.0f64..3.0, n in 2usize..300, c in 0.0f64..6.0) {
            let g = sample_fast(&model(n, alpha, c), seed);
            prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(g.edges().iter().all(|&(u, v)| u < v && v < n));
            prop_assert_eq!(Graph::new(n, g.edges().iter().copied()).unwrap(), g);
        }
    }
}
