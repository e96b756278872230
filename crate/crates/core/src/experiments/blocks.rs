use serde::Serialize;

use crate::model::{EdgeModel, ModelParams};
use crate::par::{map_indexed, Execution};
use crate::rng::derive_seed;
use crate::sampler::{sample_fast, Graph};
use crate::{Error, Result};

/// Connection frequencies between contiguous blocks of `m` vertices.
///
/// Blocks are arranged on the ring. A block pair is connected if at least
/// one edge joins them. The adjacent frequency covers every pair at block
/// distance one; the non-adjacent frequency covers every pair at block
/// distance two, the closest pairs that are not neighbours.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockStats {
    pub m: usize,
    pub n: usize,
    pub blocks: usize,
    pub replicates: usize,
    pub adjacent_connect_freq: f64,
    pub nonadjacent_connect_freq: f64,
    pub adjacent_samples: usize,
    pub nonadjacent_samples: usize,
}

fn check_block_size(n: usize, m: usize) -> Result<()> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::InvalidParams(format!(
            "block size {m} must divide n = {n}"
        )));
    }
    if m > n / 4 {
        return Err(Error::InvalidParams(format!(
            "block size {m} leaves fewer than four blocks for n = {n}"
        )));
    }
    Ok(())
}

/// Number of distinct block pairs at block distance `k` on a ring of `b`.
fn pair_count(b: usize, k: usize) -> usize {
    if 2 * k == b {
        b / 2
    } else {
        b
    }
}

/// Connected (adjacent, distance-two) block pairs in one graph.
fn connected_pairs(graph: &Graph, m: usize) -> (usize, usize) {
    let b = graph.n() / m;
    let mut adjacent = vec![false; b];
    let mut distance_two = vec![false; b];
    for &(u, v) in graph.edges() {
        let (bu, bv) = (u / m, v / m);
        let gap = bv - bu;
        let k = gap.min(b - gap);
        // pair index: the block from which the other is `k` steps forward
        let start = if gap == k { bu } else { bv };
        match k {
            1 => adjacent[start] = true,
            2 => distance_two[if 2 * k == b { start % 2 } else { start }] = true,
            _ => {}
        }
    }
    let count = |marks: &[bool]| marks.iter().filter(|&&x| x).count();
    (count(&adjacent), count(&distance_two))
}

/// Block statistics for several block sizes, reusing each sampled graph.
pub fn block_sweep(
    params: &ModelParams,
    ms: &[usize],
    replicates: usize,
    exec: Execution,
) -> Result<Vec<BlockStats>> {
    for &m in ms {
        check_block_size(params.n, m)?;
    }
    if replicates == 0 {
        return Err(Error::InvalidParams("replicates must be >= 1".into()));
    }
    let model = EdgeModel::new(params)?;
    let hits = map_indexed(exec, replicates, |r| {
        let g = sample_fast(&model, derive_seed(params.seed, r as u64));
        ms.iter()
            .map(|&m| connected_pairs(&g, m))
            .collect::<Vec<_>>()
    });
    Ok(ms
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let b = params.n / m;
            let (adj, two) = hits
                .iter()
                .fold((0, 0), |(a, t), rep| (a + rep[i].0, t + rep[i].1));
            let adjacent_samples = pair_count(b, 1) * replicates;
            let nonadjacent_samples = pair_count(b, 2) * replicates;
            BlockStats {
                m,
                n: params.n,
                blocks: b,
                replicates,
                adjacent_connect_freq: adj as f64 / adjacent_samples as f64,
                nonadjacent_connect_freq: two as f64 / nonadjacent_samples as f64,
                adjacent_samples,
                nonadjacent_samples,
            }
        })
        .collect())
}

pub fn block_stats(params: &ModelParams, m: usize, replicates: usize) -> Result<BlockStats> {
    Ok(block_sweep(params, &[m], replicates, Execution::default())?.remove(0))
}

/// Least-squares slope of `ln y` against `ln x`; `None` if any value is not
/// positive or fewer than two points are given.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_block_sizes() {
        let p = ModelParams::alpha_model(64, 3.0, 0.9, 0).unwrap();
        assert!(block_stats(&p, 17, 1).is_err());
        assert!(block_stats(&p, 32, 1).is_err());
        assert!(block_stats(&p, 0, 1).is_err());
        assert!(block_stats(&p, 16, 1).is_ok());
    }

    #[test]
    fn zero_c_never_connects() {
        let p = ModelParams::alpha_model(256, 3.0, 0.0, 0).unwrap();
        for s in block_sweep(&p, &[8, 16, 64], 5, Execution::default()).unwrap() {
            assert_eq!(s.adjacent_connect_freq, 0.0);
            assert_eq!(s.nonadjacent_connect_freq, 0.0);
        }
    }

    #[test]
    fn pair_detection_on_handmade_graph() {
        // 8 blocks of 2: {0,1} {2,3} ... {14,15}
        let g = Graph::new(16, [(1, 2), (15, 0), (0, 5), (13, 1), (4, 11)]).unwrap();
        // adjacent: (0,1) via 1-2 and (7,0) via 15-0
        // distance two: (0,2) via 0-5, (6,0) via 13-1; 4-11 is block 2 to 5
        assert_eq!(connected_pairs(&g, 2), (2, 2));
    }

    #[test]
    fn four_blocks_have_two_distance_two_pairs() {
        let g = Graph::new(8, [(0, 4), (2, 6), (1, 5)]).unwrap();
        assert_eq!(connected_pairs(&g, 2), (0, 2));
        assert_eq!(pair_count(4, 2), 2);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [16.0, 32.0, 64.0, 128.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.0)).collect();
        assert!((loglog_slope(&xs, &ys).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(loglog_slope(&xs, &[1.0, 0.0, 1.0, 1.0]), None);
    }
}
