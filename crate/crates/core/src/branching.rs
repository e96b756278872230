//! Galton–Watson extinction and survival probabilities.
//!
//! The extinction probability `q` is the smallest root of `f(s) = s` on
//! `[0, 1]`, where `f` is the offspring probability generating function.
//! Iterating `s <- f(s)` from `0` increases monotonically to that root.

use serde::Serialize;

use crate::model::{distance_classes, CompensatedSum, EdgeModel, ModelParams};
use crate::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;
/// Mean offspring within this distance above one is solved by bisection.
pub const NEAR_CRITICAL: f64 = 1e-3;

/// Offspring distribution, by its generating function.
#[derive(Clone, Debug, PartialEq)]
pub enum Pgf {
    /// `exp(c (s - 1))`.
    Poisson { mean: f64 },
    /// Sum of independent Bernoullis: `prod (1 - p (1 - s))^mult`.
    /// Stored as `(p, mult)` with equal consecutive `p` merged.
    FiniteDegree { terms: Vec<(f64, f64)> },
}

impl Pgf {
    pub fn poisson(mean: f64) -> Pgf {
        Pgf::Poisson { mean }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Pgf::Poisson { mean } => (mean * (s - 1.0)).exp(),
            Pgf::FiniteDegree { terms } => {
                if s == 1.0 {
                    return 1.0;
                }
                let t = 1.0 - s;
                // a certain edge with s = 0 has ln(0); keep it out of the compensated sum
                if terms.iter().any(|&(p, _)| p * t >= 1.0) {
                    return 0.0;
                }
                let log: CompensatedSum =
                    terms.iter().map(|&(p, k)| k * (-p * t).ln_1p()).collect();
                log.value().exp()
            }
        }
    }

    /// `f'(1)`.
    pub fn mean(&self) -> f64 {
        match self {
            Pgf::Poisson { mean } => *mean,
            Pgf::FiniteDegree { terms } => terms
                .iter()
                .map(|&(p, k)| p * k)
                .collect::<CompensatedSum>()
                .value(),
        }
    }
}

/// Generating function of a vertex degree in the finite model.
pub fn finite_degree_pgf(params: &ModelParams) -> Result<Pgf> {
    if params.alpha().is_infinite() {
        return Err(Error::InvalidParams(
            "finite-degree generating function needs a finite exponent".into(),
        ));
    }
    Ok(finite_degree_pgf_for(&EdgeModel::new(params)?))
}

pub fn finite_degree_pgf_for(model: &EdgeModel) -> Pgf {
    let mut terms: Vec<(f64, f64)> = Vec::new();
    for class in distance_classes(model.n()) {
        let p = model.class_prob(class.d);
        if p == 0.0 {
            continue;
        }
        match terms.last_mut() {
            Some((q, k)) if *q == p => *k += class.per_vertex as f64,
            _ => terms.push((p, class.per_vertex as f64)),
        }
    }
    Pgf::FiniteDegree { terms }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Mean offspring at most one (or certain single child).
    Closed,
    Iteration,
    Bisection,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GwResult {
    pub extinction_q: f64,
    pub survival_rho: f64,
    pub iterations: usize,
    pub residual: f64,
    pub method: Method,
}

impl GwResult {
    fn new(pgf: &Pgf, q: f64, iterations: usize, method: Method) -> GwResult {
        GwResult {
            extinction_q: q,
            survival_rho: 1.0 - q,
            iterations,
            residual: (pgf.eval(q) - q).abs(),
            method,
        }
    }
}

/// Smallest fixed point of `pgf` on `[0, 1]`.
///
/// Mean offspring `<= 1` gives `q = 1` directly; near-critical means use
/// bisection; otherwise monotone iteration from zero.
pub fn extinction(pgf: &Pgf, tolerance: f64) -> Result<GwResult> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParams(format!(
            "tolerance must be > 0, got {tolerance}"
        )));
    }
    let mean = pgf.mean();
    if let Some(r) = subcritical(pgf, mean) {
        return Ok(r);
    }
    if mean - 1.0 < NEAR_CRITICAL {
        return extinction_bisection(pgf, tolerance);
    }
    let mut s = 0.0;
    for it in 1..=MAX_ITERATIONS {
        let next = pgf.eval(s);
        if (next - s).abs() <= tolerance || next <= s {
            return Ok(GwResult::new(pgf, next.max(s), it, Method::Iteration));
        }
        s = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

fn subcritical(pgf: &Pgf, mean: f64) -> Option<GwResult> {
    if mean > 1.0 {
        return None;
    }
    // mean <= 1 with no chance of zero children means exactly one child.
    let q = if pgf.eval(0.0) == 0.0 { 0.0 } else { 1.0 };
    Some(GwResult::new(pgf, q, 0, Method::Closed))
}

/// Smallest root of `f(s) - s` by bisection; independent of the iteration.
pub fn extinction_bisection(pgf: &Pgf, tolerance: f64) -> Result<GwResult> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParams(format!(
            "tolerance must be > 0, got {tolerance}"
        )));
    }
    let mean = pgf.mean();
    if let Some(r) = subcritical(pgf, mean) {
        return Ok(r);
    }
    let g = |s: f64| pgf.eval(s) - s;
    if g(0.0) <= 0.0 {
        return Ok(GwResult::new(pgf, 0.0, 0, Method::Bisection));
    }
    // g > 0 left of q and g < 0 on (q, 1) by convexity.
    let mut hi = None;
    let mut gap = 0.5;
    for _ in 0..60 {
        if g(1.0 - gap) < 0.0 {
            hi = Some(1.0 - gap);
            break;
        }
        gap *= 0.5;
    }
    let Some(mut hi) = hi else {
        return Err(Error::NonConvergence { iterations: 60 });
    };
    let mut lo = 0.0;
    let mut iterations = 0;
    while hi - lo > tolerance * 1e-3 && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(GwResult::new(
        pgf,
        0.5 * (lo + hi),
        iterations,
        Method::Bisection,
    ))
}

/// Survival probability of the Poisson(`c`) Galton–Watson process.
pub fn rho_limit(c: f64) -> f64 {
    if !(c > 1.0) {
        return 0.0;
    }
    extinction(&Pgf::poisson(c), DEFAULT_TOLERANCE)
        .map(|r| r.survival_rho)
        .expect("Poisson generating function converges")
}
