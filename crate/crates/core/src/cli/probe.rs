//! Positivity probe for the formal extended process behind the tacnode
//! ratio formula.
//!
//! The block kernel on `R+ ⊔ R0 ⊔ R_tau` conditioned on no points in `R+`
//! is a kernel on `R0 ⊔ R_tau`. If it described a point process its 2x2
//! correlation determinants would be nonnegative; the probe samples pairs
//! of one point on `[sigma_tilde, sigma_tilde + 3] ⊂ R0` and one on
//! `[-3, 3] ⊂ R_tau` and reports the smallest determinant found.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fredholm::BlockKernel;
use crate::gapprob::tacnode_domains;
use crate::kernels::tacnode::{BLOCK_R0, BLOCK_RPLUS};
use crate::kernels::{ConditionedKernel, GapSpec, HKernel, TacnodeParams};
use crate::quadrature::HalfLine;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    pub sigmas: Vec<f64>,
    pub taus: Vec<f64>,
    /// Total number of sample pairs, spread round-robin over the grid.
    pub samples: usize,
    pub seed: u64,
    pub m: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            sigmas: vec![-1.0, 0.0, 1.0],
            taus: vec![-1.0, 0.0, 1.0],
            samples: 200,
            seed: 2024,
            m: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeSample {
    pub sigma: f64,
    pub tau: f64,
    /// Point on `R0`.
    pub x: f64,
    /// Point on `R_tau`.
    pub xi: f64,
    /// `[[K(x,x), K(x,xi)], [K(xi,x), K(xi,xi)]]`, row-major; `None` on failure.
    pub kernel: Option<[f64; 4]>,
    pub det: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub samples: Vec<ProbeSample>,
    /// Index into `samples` of the smallest determinant.
    pub witness: Option<usize>,
    pub min_det: Option<f64>,
}

impl ProbeReport {
    pub fn found_negative(&self) -> bool {
        self.min_det.is_some_and(|d| d < 0.0)
    }

    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| s.error.is_some()).count()
    }
}

/// The block kernel conditioned on no points in `R+`.
fn conditioned(h: &HKernel, m: usize) -> Result<ConditionedKernel<'_>> {
    let (domains, _) = tacnode_domains(
        &GapSpec::new(vec![vec![]; h.params.r()])?,
        &h.params,
        HalfLine::default(),
    )?;
    let rplus: Vec<_> = domains
        .into_iter()
        .filter(|c| c.block == HKernel::block(BLOCK_RPLUS))
        .collect();
    ConditionedKernel::new(h, &rplus, m)
}

fn evaluate(k: &ConditionedKernel<'_>, x: f64, xi: f64) -> Result<[f64; 4]> {
    let (p, q) = (HKernel::block(BLOCK_R0), HKernel::block(1));
    let (x, xi) = (Complex64::new(x, 0.0), Complex64::new(xi, 0.0));
    Ok([
        k.entry(p, p, x, x)?.re,
        k.entry(p, q, x, xi)?.re,
        k.entry(q, p, xi, x)?.re,
        k.entry(q, q, xi, xi)?.re,
    ])
}

pub fn positivity_probe(config: &ProbeConfig) -> Result<ProbeReport> {
    if config.sigmas.is_empty() || config.taus.is_empty() || config.samples == 0 {
        return Err(Error::argument(
            "positivity probe: empty grid or no samples",
        ));
    }
    let grid: Vec<(f64, f64)> = config
        .sigmas
        .iter()
        .flat_map(|&s| config.taus.iter().map(move |&t| (s, t)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let draws: Vec<(usize, f64, f64)> = (0..config.samples)
        .map(|i| (i % grid.len(), rng.gen::<f64>(), rng.gen_range(-3.0..3.0)))
        .collect();
    let kernels: Vec<HKernel> = grid
        .iter()
        .map(|&(s, t)| {
            Ok(HKernel {
                params: TacnodeParams::new(s, vec![t])?,
            })
        })
        .collect::<Result<_>>()?;
    let conditioned: Vec<Result<ConditionedKernel<'_>>> = kernels
        .par_iter()
        .map(|h| conditioned(h, config.m))
        .collect();
    let samples: Vec<ProbeSample> = draws
        .par_iter()
        .map(|&(cell, u, xi)| {
            let (sigma, tau) = grid[cell];
            let x = kernels[cell].params.sigma_tilde + 3.0 * u;
            let r = conditioned[cell]
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|k| evaluate(k, x, xi));
            match r {
                Ok(k) => ProbeSample {
                    sigma,
                    tau,
                    x,
                    xi,
                    kernel: Some(k),
                    det: Some(k[0] * k[3] - k[1] * k[2]),
                    error: None,
                },
                Err(e) => ProbeSample {
                    sigma,
                    tau,
                    x,
                    xi,
                    kernel: None,
                    det: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let witness = samples
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.det.map(|d| (i, d)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i);
    let min_det = witness.and_then(|i| samples[i].det);
    Ok(ProbeReport {
        samples,
        witness,
        min_det,
    })
}
