use serde::Serialize;

use crate::model::{EdgeModel, ModelParams};
use crate::par::{map_indexed, Execution};
use crate::rng::derive_seed;
use crate::sampler::{sample_fast, Graph};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleStats {
    /// Average number of triangles containing a vertex.
    pub mean_k: f64,
    pub mean_degree: f64,
    /// Average number of vertices at distance exactly two.
    pub mean_second_neighbors: f64,
}

/// Number of triangles through each vertex.
pub fn triangle_counts(graph: &Graph) -> Vec<u64> {
    let mut k = vec![0u64; graph.n()];
    for &(u, v) in graph.edges() {
        // each triangle u < v < w is found once, from its smallest edge
        let (a, b) = (graph.neighbors(u), graph.neighbors(v));
        let (mut i, mut j) = (
            a.partition_point(|&x| x <= v),
            b.partition_point(|&x| x <= v),
        );
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    k[u] += 1;
                    k[v] += 1;
                    k[a[i]] += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    k
}

pub fn triangle_stats(graph: &Graph) -> TriangleStats {
    let n = graph.n();
    let triangles: u64 = triangle_counts(graph).iter().sum();
    let mut mark = vec![usize::MAX; n];
    let mut second = 0usize;
    for v in 0..n {
        mark[v] = v;
        for &u in graph.neighbors(v) {
            mark[u] = v;
        }
        for &u in graph.neighbors(v) {
            for &w in graph.neighbors(u) {
                if mark[w] != v {
                    mark[w] = v;
                    second += 1;
                }
            }
        }
    }
    TriangleStats {
        mean_k: triangles as f64 / n as f64,
        mean_degree: 2.0 * graph.edge_count() as f64 / n as f64,
        mean_second_neighbors: second as f64 / n as f64,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleSummary {
    pub params: ModelParams,
    pub replicates: usize,
    pub mean_k: f64,
    /// Standard error of `mean_k` across replicates.
    pub se_k: f64,
    pub mean_degree: f64,
    pub mean_second_neighbors: f64,
    /// `p_1 p_2 p_1`: probability that `v, v+1, v+2` form a triangle, a
    /// lower bound on the expected triangles through `v`.
    pub consecutive_triangle_prob: f64,
    pub per_replicate: Vec<TriangleStats>,
}

/// Triangle statistics over replicates seeded from `params.seed`.
pub fn triangle_experiment(
    params: &ModelParams,
    replicates: usize,
    exec: Execution,
) -> Result<TriangleSummary> {
    let model = EdgeModel::new(params)?;
    let per_replicate = map_indexed(exec, replicates, |r| {
        triangle_stats(&sample_fast(&model, derive_seed(params.seed, r as u64)))
    });
    let k = replicates as f64;
    let mean_k = per_replicate.iter().map(|t| t.mean_k).sum::<f64>() / k;
    let var = if replicates > 1 {
        per_replicate
            .iter()
            .map(|t| (t.mean_k - mean_k).powi(2))
            .sum::<f64>()
            / (k - 1.0)
    } else {
        0.0
    };
    let p = |d: usize| {
        if d <= params.n / 2 {
            model.class_prob(d)
        } else {
            0.0
        }
    };
    let consecutive_triangle_prob = if params.n >= 3 {
        p(1) * p(2.min(params.n - 2)) * p(1)
    } else {
        0.0
    };
    Ok(TriangleSummary {
        params: params.clone(),
        replicates,
        mean_k,
        se_k: (var / k).sqrt(),
        mean_degree: per_replicate.iter().map(|t| t.mean_degree).sum::<f64>() / k,
        mean_second_neighbors: per_replicate
            .iter()
            .map(|t| t.mean_second_neighbors)
            .sum::<f64>()
            / k,
        consecutive_triangle_prob,
        per_replicate,
    })
}
