//! Ring metric, distance kernels and the normalised edge probabilities.
//!
//! Vertices `0..n` sit on a cycle. The probability of the edge `{u, v}` is
//! `min(1, c * f(d(u, v)) / h)` where `f` is a non-increasing kernel and
//! `h = sum_{u != 0} f(d(u, 0))` makes the expected degree equal `c`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Geodesic distance between `u` and `v` on a cycle of `n` vertices.
pub fn ring_distance(u: usize, v: usize, n: usize) -> Result<usize> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    Ok(ring_distance_unchecked(u, v, n))
}

#[inline]
pub(crate) fn ring_distance_unchecked(u: usize, v: usize, n: usize) -> usize {
    let diff = u.abs_diff(v);
    diff.min(n - diff)
}

/// Largest distance realised on a ring of `n` vertices.
#[inline]
pub fn max_distance(n: usize) -> usize {
    n / 2
}

/// One orbit of vertex pairs under rotation: all pairs at distance `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceClass {
    pub d: usize,
    /// Number of unordered pairs at distance `d`.
    pub pairs: usize,
    /// Number of vertices at distance `d` from a fixed vertex.
    pub per_vertex: usize,
}

/// Distance classes `1..=n/2` with their multiplicities.
pub fn distance_classes(n: usize) -> impl Iterator<Item = DistanceClass> {
    (1..=max_distance(n)).map(move |d| {
        if 2 * d == n {
            DistanceClass {
                d,
                pairs: n / 2,
                per_vertex: 1,
            }
        } else {
            DistanceClass {
                d,
                pairs: n,
                per_vertex: 2,
            }
        }
    })
}

/// Neumaier compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Distance kernel `f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelSpec {
    /// `f(x) = x^-alpha`.
    PowerLaw { alpha: f64 },
    /// `f(x) = 1 / (x^alpha * ln(x)^beta)` for `x >= 3`, and `x^-alpha` below,
    /// where `ln x < 1`.
    PowerLogLaw { alpha: f64, beta: f64 },
    /// Only distance-one edges; the `alpha = inf` member of the family.
    NearestNeighbor,
    /// Tabulated `f(1), f(2), ...`.
    Custom { source: String, values: Vec<f64> },
}

impl KernelSpec {
    /// Power-law kernel, mapping `alpha = inf` to [`KernelSpec::NearestNeighbor`].
    pub fn power(alpha: f64) -> KernelSpec {
        if alpha == f64::INFINITY {
            KernelSpec::NearestNeighbor
        } else {
            KernelSpec::PowerLaw { alpha }
        }
    }

    /// Exponent of the power-law part; `inf` for nearest-neighbour and NaN for
    /// tabulated kernels.
    pub fn alpha(&self) -> f64 {
        match self {
            KernelSpec::PowerLaw { alpha } | KernelSpec::PowerLogLaw { alpha, .. } => *alpha,
            KernelSpec::NearestNeighbor => f64::INFINITY,
            KernelSpec::Custom { .. } => f64::NAN,
        }
    }

    /// Kernel value at distance `d >= 1`.
    pub fn weight(&self, d: usize) -> Result<f64> {
        if d == 0 {
            return Err(Error::KernelUndefined {
                distance: 0,
                reason: "distance zero has no kernel value".into(),
            });
        }
        let x = d as f64;
        Ok(match self {
            KernelSpec::PowerLaw { alpha } => {
                if *alpha == 0.0 {
                    1.0
                } else {
                    x.powf(-alpha)
                }
            }
            KernelSpec::PowerLogLaw { alpha, beta } => {
                let base = if *alpha == 0.0 { 1.0 } else { x.powf(-alpha) };
                let ln = x.ln();
                if ln < 1.0 {
                    base
                } else {
                    base / ln.powf(*beta)
                }
            }
            KernelSpec::NearestNeighbor => {
                if d == 1 {
                    1.0
                } else {
                    0.0
                }
            }
            KernelSpec::Custom { values, .. } => {
                *values.get(d - 1).ok_or_else(|| Error::KernelUndefined {
                    distance: d,
                    reason: format!("table has only {} entries", values.len()),
                })?
            }
        })
    }

    /// Check that the kernel is usable on a ring of `n` vertices: finite,
    /// positive (except the nearest-neighbour tail) and non-increasing on
    /// `1..=n/2`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            KernelSpec::PowerLaw { alpha } => {
                if !(*alpha >= 0.0) || alpha.is_infinite() {
                    return Err(Error::InvalidParams(format!(
                        "power-law exponent must be finite and >= 0, got {alpha}"
                    )));
                }
                Ok(())
            }
            KernelSpec::PowerLogLaw { alpha, beta } => {
                if !(*alpha >= 0.0) || alpha.is_infinite() || !(*beta >= 0.0) || beta.is_infinite()
                {
                    return Err(Error::InvalidParams(format!(
                        "power-log kernel needs finite alpha, beta >= 0, got alpha={alpha}, beta={beta}"
                    )));
                }
                Ok(())
            }
            KernelSpec::NearestNeighbor => Ok(()),
            KernelSpec::Custom { values, .. } => {
                let needed = max_distance(n);
                if values.len() < needed {
                    return Err(Error::KernelUndefined {
                        distance: values.len() + 1,
                        reason: format!("table has only {} entries, n/2 = {needed}", values.len()),
                    });
                }
                let mut prev = f64::INFINITY;
                for (i, &f) in values[..needed].iter().enumerate() {
                    if !(f > 0.0) || !f.is_finite() {
                        return Err(Error::KernelUndefined {
                            distance: i + 1,
                            reason: format!("value {f} is not positive and finite"),
                        });
                    }
                    if f > prev {
                        return Err(Error::InvalidParams(format!(
                            "custom kernel increases at distance {}",
                            i + 1
                        )));
                    }
                    prev = f;
                }
                Ok(())
            }
        }
    }

    /// Load a tabulated kernel from a text file of `d f(d)` lines.
    pub fn load_custom(path: &Path) -> Result<KernelSpec> {
        let text = std::fs::read_to_string(path)?;
        let values = parse_custom_table(&text)?;
        Ok(KernelSpec::Custom {
            source: path.display().to_string(),
            values,
        })
    }
}

/// Parse `d f(d)` lines; distances must run `1, 2, 3, ...` without gaps.
pub fn parse_custom_table(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(d), Some(f), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "line {}: expected `d f(d)`",
                lineno + 1
            )));
        };
        let d: usize = d
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: distance: {e}", lineno + 1)))?;
        let f: f64 = f
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: value: {e}", lineno + 1)))?;
        if d != values.len() + 1 {
            return Err(Error::Parse(format!(
                "line {}: expected distance {}, found {d}",
                lineno + 1,
                values.len() + 1
            )));
        }
        values.push(f);
    }
    Ok(values)
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::PowerLaw { alpha } => write!(f, "power:alpha={alpha}"),
            KernelSpec::PowerLogLaw { alpha, beta } => {
                write!(f, "powerlog:alpha={alpha},beta={beta}")
            }
            KernelSpec::NearestNeighbor => f.write_str("nn"),
            KernelSpec::Custom { source, .. } => write!(f, "custom:{source}"),
        }
    }
}

fn parse_kv(body: &str) -> Result<Vec<(String, f64)>> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("`{kv}`: {e}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn lookup(kvs: &[(String, f64)], key: &str, default: Option<f64>) -> Result<f64> {
    kvs.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .or(default)
        .ok_or_else(|| Error::Parse(format!("missing `{key}`")))
}

impl FromStr for KernelSpec {
    type Err = Error;

    /// Accepts `power:alpha=1.0`, `powerlog:alpha=1.0,beta=1.0`, `nn` and
    /// `custom:<path>` (the file is read immediately).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "power" => {
                let kvs = parse_kv(body)?;
                Ok(KernelSpec::power(lookup(&kvs, "alpha", None)?))
            }
            "powerlog" => {
                let kvs = parse_kv(body)?;
                Ok(KernelSpec::PowerLogLaw {
                    alpha: lookup(&kvs, "alpha", Some(1.0))?,
                    beta: lookup(&kvs, "beta", None)?,
                })
            }
            "nn" => Ok(KernelSpec::NearestNeighbor),
            "custom" if !body.is_empty() => KernelSpec::load_custom(Path::new(body)),
            _ => Err(Error::Parse(format!("unknown kernel `{s}`"))),
        }
    }
}

/// Full specification of one random-graph law plus the replicate seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub c: f64,
    pub kernel: KernelSpec,
    pub seed: u64,
}

impl ModelParams {
    pub fn new(n: usize, kernel: KernelSpec, c: f64, seed: u64) -> Result<ModelParams> {
        let params = ModelParams { n, c, kernel, seed };
        params.validate()?;
        Ok(params)
    }

    /// Power-law model; `alpha = inf` selects nearest-neighbour percolation.
    pub fn alpha_model(n: usize, alpha: f64, c: f64, seed: u64) -> Result<ModelParams> {
        ModelParams::new(n, KernelSpec::power(alpha), c, seed)
    }

    pub fn alpha(&self) -> f64 {
        self.kernel.alpha()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!(
                "n must be >= 2, got {}",
                self.n
            )));
        }
        if !(self.c >= 0.0) || !self.c.is_finite() {
            return Err(Error::InvalidParams(format!(
                "c must be finite and >= 0, got {}",
                self.c
            )));
        }
        self.kernel.validate(self.n)
    }
}

/// Degree normaliser `h = sum_{u != 0} f(d(u, 0))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normalizer {
    pub value: f64,
    pub n: usize,
    pub kernel: KernelSpec,
}

/// Compute the normaliser in one pass over distance classes.
pub fn normalizer(n: usize, kernel: &KernelSpec) -> Result<Normalizer> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
    }
    kernel.validate(n)?;
    let mut acc = CompensatedSum::default();
    for class in distance_classes(n) {
        acc.add(class.per_vertex as f64 * kernel.weight(class.d)?);
    }
    let value = acc.value();
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::InvalidParams(format!(
            "normaliser {value} is not positive"
        )));
    }
    Ok(Normalizer {
        value,
        n,
        kernel: kernel.clone(),
    })
}

/// Edge probability `min(1, c f(d(u,v)) / h)` for a single pair.
///
/// Recomputes the normaliser; use [`EdgeModel`] for repeated queries.
pub fn edge_prob(u: usize, v: usize, params: &ModelParams) -> Result<f64> {
    EdgeModel::new(params)?.edge_prob(u, v)
}

/// `sum_{v != u} p_{u,v}`; equals `c` whenever no probability is clamped.
pub fn marginal_degree_sum(params: &ModelParams) -> Result<f64> {
    Ok(EdgeModel::new(params)?.marginal_degree_sum())
}

/// Precomputed per-distance probabilities for one parameter set.
#[derive(Clone, Debug)]
pub struct EdgeModel {
    params: ModelParams,
    normalizer: Normalizer,
    /// `probs[d - 1]` is the clamped probability at distance `d`.
    probs: Vec<f64>,
    weights: Vec<f64>,
}

impl EdgeModel {
    pub fn new(params: &ModelParams) -> Result<EdgeModel> {
        params.validate()?;
        let normalizer = normalizer(params.n, &params.kernel)?;
        let weights = (1..=max_distance(params.n))
            .map(|d| params.kernel.weight(d))
            .collect::<Result<Vec<_>>>()?;
        let probs = weights
            .iter()
            .map(|&w| (params.c * w / normalizer.value).min(1.0))
            .collect();
        Ok(EdgeModel {
            params: params.clone(),
            normalizer,
            probs,
            weights,
        })
    }

    /// Same kernel and normaliser, different `c`.
    pub fn with_c(&self, c: f64) -> Result<EdgeModel> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::InvalidParams(format!(
                "c must be finite and >= 0, got {c}"
            )));
        }
        let probs = self
            .weights
            .iter()
            .map(|&w| (c * w / self.normalizer.value).min(1.0))
            .collect();
        Ok(EdgeModel {
            params: ModelParams {
                c,
                ..self.params.clone()
            },
            normalizer: self.normalizer.clone(),
            probs,
            weights: self.weights.clone(),
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn c(&self) -> f64 {
        self.params.c
    }

    pub fn normalizer(&self) -> &Normalizer {
        &self.normalizer
    }

    /// Clamped probability for distance `d` in `1..=n/2`.
    #[inline]
    pub fn class_prob(&self, d: usize) -> f64 {
        self.probs[d - 1]
    }

    /// Kernel value `f(d)`.
    #[inline]
    pub fn class_weight(&self, d: usize) -> f64 {
        self.weights[d - 1]
    }

    /// Unclamped `c f(d) / h`.
    #[inline]
    pub fn raw_class_prob(&self, d: usize) -> f64 {
        self.params.c * self.weights[d - 1] / self.normalizer.value
    }

    pub fn edge_prob(&self, u: usize, v: usize) -> Result<f64> {
        let d = ring_distance(u, v, self.params.n)?;
        if d == 0 {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.class_prob(d))
    }

    /// Whether some distance class has `c f(d) / h > 1`.
    pub fn is_clamped(&self) -> bool {
        (1..=self.probs.len()).any(|d| self.raw_class_prob(d) > 1.0)
    }

    pub fn marginal_degree_sum(&self) -> f64 {
        distance_classes(self.params.n)
            .map(|cl| cl.per_vertex as f64 * self.class_prob(cl.d))
            .collect::<CompensatedSum>()
            .value()
    }

    /// Expected number of edges, `n * marginal_degree_sum / 2`.
    pub fn expected_edges(&self) -> f64 {
        distance_classes(self.params.n)
            .map(|cl| cl.pairs as f64 * self.class_prob(cl.d))
            .collect::<CompensatedSum>()
            .value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn ring_distance_examples() {
        assert_eq!(ring_distance(0, 1, 5).unwrap(), 1);
        assert_eq!(ring_distance(0, 4, 5).unwrap(), 1);
        assert_eq!(ring_distance(3, 3, 9).unwrap(), 0);
        assert_eq!(ring_distance(1, 5, 8).unwrap(), 4);
        assert!(matches!(
            ring_distance(0, 5, 5),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn normalizer_examples() {
        let h = normalizer(5, &KernelSpec::power(1.0)).unwrap();
        assert!(rel_close(h.value, 3.0, 1e-15));
        let h = normalizer(4, &KernelSpec::power(0.0)).unwrap();
        assert_eq!(h.value, 3.0);
        let h = normalizer(6, &KernelSpec::power(2.0)).unwrap();
        assert!(rel_close(h.value, 2.0 * (1.0 + 0.25) + 1.0 / 9.0, 1e-15));
    }

    #[test]
    fn normalizer_matches_sum_over_vertices() {
        for n in [2, 3, 7, 10, 11, 64] {
            for kernel in [
                KernelSpec::power(0.7),
                KernelSpec::power(2.5),
                KernelSpec::NearestNeighbor,
            ] {
                let brute: f64 = (1..n)
                    .map(|u| kernel.weight(ring_distance(u, 0, n).unwrap()).unwrap())
                    .sum();
                let h = normalizer(n, &kernel).unwrap().value;
                assert!(rel_close(h, brute, 1e-12), "n={n} {kernel}: {h} vs {brute}");
            }
        }
    }

    #[test]
    fn edge_prob_examples() {
        let p = ModelParams::alpha_model(5, 1.0, 1.0, 0).unwrap();
        assert!(rel_close(edge_prob(0, 1, &p).unwrap(), 1.0 / 3.0, 1e-15));

        let p = ModelParams::alpha_model(17, 0.0, 1.3, 0).unwrap();
        let m = EdgeModel::new(&p).unwrap();
        for v in 1..17 {
            assert!(rel_close(m.edge_prob(0, v).unwrap(), 1.3 / 16.0, 1e-15));
        }

        let p = ModelParams::alpha_model(20, f64::INFINITY, 1.5, 0).unwrap();
        let m = EdgeModel::new(&p).unwrap();
        assert_eq!(m.edge_prob(4, 5).unwrap(), 0.75);
        assert_eq!(m.edge_prob(4, 6).unwrap(), 0.0);
        assert_eq!(m.edge_prob(0, 19).unwrap(), 0.75);

        assert!(matches!(m.edge_prob(3, 3), Err(Error::SelfLoop(3))));
    }

    #[test]
    fn marginal_degree_examples() {
        let p = ModelParams::alpha_model(101, 1.0, 2.0, 0).unwrap();
        assert!(rel_close(marginal_degree_sum(&p).unwrap(), 2.0, 1e-12));
        let p = ModelParams::alpha_model(10, 3.0, 0.5, 0).unwrap();
        assert!(rel_close(marginal_degree_sum(&p).unwrap(), 0.5, 1e-12));
        // h_{3,10} ~ 2.3; c = 50 pushes p_1 above one.
        let p = ModelParams::alpha_model(10, 3.0, 50.0, 0).unwrap();
        let m = EdgeModel::new(&p).unwrap();
        assert!(m.is_clamped());
        assert!(m.marginal_degree_sum() < 50.0);
    }

    #[test]
    fn h_bounds_at_alpha_one() {
        let mut n = 8usize;
        while n <= 1 << 20 {
            let h = normalizer(n, &KernelSpec::power(1.0)).unwrap().value;
            let ln = (n as f64).ln();
            assert!(ln <= h && h <= 2.0 * ln, "n={n}: h={h}");
            n *= 2;
        }
    }

    #[test]
    fn distance_class_multiplicities() {
        for n in 2..60usize {
            let classes: Vec<_> = distance_classes(n).collect();
            let pairs: usize = classes.iter().map(|c| c.pairs).sum();
            assert_eq!(pairs, n * (n - 1) / 2);
            let per_vertex: usize = classes.iter().map(|c| c.per_vertex).sum();
            assert_eq!(per_vertex, n - 1);
            // brute-force count of pairs at each distance
            for cl in &classes {
                let count = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| ring_distance(u, v, n).unwrap() == cl.d)
                    .count();
                assert_eq!(count, cl.pairs);
            }
        }
    }

    #[test]
    fn powerlog_small_distances_fall_back_to_power() {
        let k = KernelSpec::PowerLogLaw {
            alpha: 1.0,
            beta: 1.0,
        };
        assert_eq!(k.weight(1).unwrap(), 1.0);
        assert_eq!(k.weight(2).unwrap(), 0.5);
        let w3 = k.weight(3).unwrap();
        assert!(rel_close(w3, 1.0 / (3.0 * 3f64.ln()), 1e-15));
        let mut prev = f64::INFINITY;
        for d in 1..10_000 {
            let w = k.weight(d).unwrap();
            assert!(w <= prev);
            prev = w;
        }
    }

    #[test]
    fn kernel_text_forms() {
        assert_eq!(
            "power:alpha=1.0".parse::<KernelSpec>().unwrap(),
            KernelSpec::power(1.0)
        );
        assert_eq!(
            "power:alpha=inf".parse::<KernelSpec>().unwrap(),
            KernelSpec::NearestNeighbor
        );
        assert_eq!(
            "powerlog:alpha=1.0,beta=2".parse::<KernelSpec>().unwrap(),
            KernelSpec::PowerLogLaw {
                alpha: 1.0,
                beta: 2.0
            }
        );
        assert_eq!(
            "nn".parse::<KernelSpec>().unwrap(),
            KernelSpec::NearestNeighbor
        );
        assert!("gauss:sigma=1".parse::<KernelSpec>().is_err());
        assert!("power:beta=1".parse::<KernelSpec>().is_err());
        for k in [
            KernelSpec::power(1.5),
            KernelSpec::PowerLogLaw {
                alpha: 1.0,
                beta: 2.0,
            },
        ] {
            assert_eq!(k.to_string().parse::<KernelSpec>().unwrap(), k);
        }
    }

    #[test]
    fn custom_kernel_table() {
        let values = parse_custom_table("# header\n1 1.0\n2 0.5\n3 0.25\n").unwrap();
        assert_eq!(values, vec![1.0, 0.5, 0.25]);
        assert!(parse_custom_table("1 1.0\n3 0.5\n").is_err());

        let k = KernelSpec::Custom {
            source: "t".into(),
            values,
        };
        assert!(k.validate(6).is_ok());
        assert!(matches!(
            k.validate(8),
            Err(Error::KernelUndefined { distance: 4, .. })
        ));
        let rising = KernelSpec::Custom {
            source: "t".into(),
            values: vec![1.0, 2.0],
        };
        assert!(rising.validate(4).is_err());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ModelParams::alpha_model(1, 1.0, 1.0, 0).is_err());
        assert!(ModelParams::alpha_model(10, -1.0, 1.0, 0).is_err());
        assert!(ModelParams::alpha_model(10, 1.0, -0.5, 0).is_err());
        assert!(ModelParams::alpha_model(10, 1.0, f64::NAN, 0).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_and_translation_invariant(
            n in 2usize..200, alpha in 0.0f64..4.0, c in 0.01f64..5.0,
            u in 0usize..1000, v in 0usize..1000,
        ) {
            let (u, v) = (u % n, v % n);
            prop_assume!(u != v);
            let m = EdgeModel::new(&ModelParams::alpha_model(n, alpha, c, 0).unwrap()).unwrap();
            let p = m.edge_prob(u, v).unwrap();
            prop_assert_eq!(p, m.edge_prob(v, u).unwrap());
            prop_assert_eq!(p, m.edge_prob(0, (v + n - u) % n).unwrap());
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn normalization_identity_grid() {
        for alpha in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            for n in [10usize, 101, 1000] {
                let c = 0.5;
                let m = EdgeModel::new(&ModelParams::alpha_model(n, alpha, c, 0).unwrap()).unwrap();
                assert!(!m.is_clamped());
                assert!(rel_close(m.marginal_degree_sum(), c, 1e-12));
            }
        }
    }
}
