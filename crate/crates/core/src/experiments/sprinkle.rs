use serde::Serialize;

use crate::components::{components, label_components};
use crate::model::{EdgeModel, KernelSpec, ModelParams};
use crate::par::{map_indexed, Execution};
use crate::rng::derive_seed;
use crate::sampler::{sample_filtration, Graph};
use crate::{Error, Result};

/// Two-stage construction: a graph at `c_prime`, then the extra edges that
/// appear when the level rises to `c_prime + delta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SprinkleSpec {
    pub n: usize,
    pub kernel: KernelSpec,
    pub c_prime: f64,
    pub delta: f64,
    pub omega: usize,
    pub replicates: usize,
    pub master_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SprinkleReplicate {
    pub seed: u64,
    /// `|B_omega| / n` at `c_prime`.
    pub b_fraction: f64,
    /// All of `B_omega` lies in one component after sprinkling.
    pub merged: bool,
    /// All of `B_omega` lies in one component before sprinkling.
    pub baseline_merged: bool,
    pub fraction_before: f64,
    pub fraction_after: f64,
    /// Edge sets at the checked levels are nested.
    pub nested: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SprinkleRecord {
    pub spec: SprinkleSpec,
    pub merged_fraction: f64,
    pub baseline_merged_fraction: f64,
    pub mean_b_fraction: f64,
    pub mean_fraction_before: f64,
    pub mean_fraction_after: f64,
    pub nested_fraction: f64,
    /// Replicates where `|C_1|` did not shrink.
    pub monotone_fraction: f64,
    pub per_replicate: Vec<SprinkleReplicate>,
}

/// Whether every vertex of `set` has the same label in `graph`.
fn single_component(graph: &Graph, set: &[usize]) -> bool {
    let labels = label_components(graph);
    set.windows(2)
        .all(|w| labels.label[w[0]] == labels.label[w[1]])
}

fn run_replicate(model: &EdgeModel, spec: &SprinkleSpec, seed: u64) -> Result<SprinkleReplicate> {
    let filtration = sample_filtration(model, seed);
    let top = spec.c_prime + spec.delta;
    let levels = [
        spec.c_prime / 2.0,
        spec.c_prime,
        spec.c_prime + spec.delta / 2.0,
        top,
    ];
    let graphs = levels
        .iter()
        .map(|&c| filtration.subgraph_at(c.min(top)))
        .collect::<Result<Vec<_>>>()?;
    let nested = graphs.windows(2).all(|w| w[0].is_subgraph_of(&w[1]));
    let (before, after) = (&graphs[1], &graphs[3]);

    let labels = label_components(before);
    let b_set: Vec<usize> = (0..spec.n)
        .filter(|&v| labels.size_of(v) >= spec.omega)
        .collect();
    let fraction_after = components(after).fraction;
    let fraction_before = labels.sizes.iter().copied().max().unwrap_or(0) as f64 / spec.n as f64;
    Ok(SprinkleReplicate {
        seed,
        b_fraction: b_set.len() as f64 / spec.n as f64,
        merged: single_component(after, &b_set),
        baseline_merged: single_component(before, &b_set),
        fraction_before,
        fraction_after,
        nested,
    })
}

pub fn sprinkling_experiment(spec: &SprinkleSpec, exec: Execution) -> Result<SprinkleRecord> {
    if !(spec.c_prime > 0.0) || !(spec.delta >= 0.0) || spec.replicates == 0 || spec.omega == 0 {
        return Err(Error::InvalidParams(format!(
            "sprinkling needs c' > 0, delta >= 0, omega >= 1, replicates >= 1; got c'={}, delta={}, omega={}, replicates={}",
            spec.c_prime, spec.delta, spec.omega, spec.replicates
        )));
    }
    let params = ModelParams::new(
        spec.n,
        spec.kernel.clone(),
        spec.c_prime + spec.delta,
        spec.master_seed,
    )?;
    let model = EdgeModel::new(&params)?;
    let per_replicate = map_indexed(exec, spec.replicates, |r| {
        run_replicate(&model, spec, derive_seed(spec.master_seed, r as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let k = spec.replicates as f64;
    let frac = |pred: &dyn Fn(&SprinkleReplicate) -> bool| {
        per_replicate.iter().filter(|r| pred(r)).count() as f64 / k
    };
    let mean =
        |get: &dyn Fn(&SprinkleReplicate) -> f64| per_replicate.iter().map(get).sum::<f64>() / k;
    Ok(SprinkleRecord {
        merged_fraction: frac(&|r| r.merged),
        baseline_merged_fraction: frac(&|r| r.baseline_merged),
        mean_b_fraction: mean(&|r| r.b_fraction),
        mean_fraction_before: mean(&|r| r.fraction_before),
        mean_fraction_after: mean(&|r| r.fraction_after),
        nested_fraction: frac(&|r| r.nested),
        monotone_fraction: frac(&|r| r.fraction_after >= r.fraction_before),
        spec: spec.clone(),
        per_replicate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(delta: f64) -> SprinkleSpec {
        SprinkleSpec {
            n: 3000,
            kernel: KernelSpec::power(1.0),
            c_prime: 1.5,
            delta,
            omega: 30,
            replicates: 6,
            master_seed: 5,
        }
    }

    #[test]
    fn zero_delta_matches_baseline() {
        let r = sprinkling_experiment(&spec(0.0), Execution::default()).unwrap();
        for rep in &r.per_replicate {
            assert_eq!(rep.merged, rep.baseline_merged);
            assert_eq!(rep.fraction_before, rep.fraction_after);
        }
        assert_eq!(r.merged_fraction, r.baseline_merged_fraction);
    }

    #[test]
    fn sprinkling_is_monotone_and_nested() {
        let r = sprinkling_experiment(&spec(0.5), Execution::default()).unwrap();
        assert_eq!(r.nested_fraction, 1.0);
        assert_eq!(r.monotone_fraction, 1.0);
        for rep in &r.per_replicate {
            assert!(rep.fraction_after >= rep.fraction_before);
            // merging can only help
            assert!(rep.merged || !rep.baseline_merged);
        }
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(sprinkling_experiment(
            &SprinkleSpec {
                delta: -0.1,
                ..spec(0.0)
            },
            Execution::default()
        )
        .is_err());
        assert!(sprinkling_experiment(
            &SprinkleSpec {
                replicates: 0,
                ..spec(0.0)
            },
            Execution::default()
        )
        .is_err());
    }
}
