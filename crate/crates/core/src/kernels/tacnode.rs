use num_complex::Complex64;

use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};
use crate::fredholm::extended::BlockKernelDd;
use crate::fredholm::BlockKernel;
use crate::specfun::extended::{airy_dd, airy_shifted_dd, heat_kernel_dd};
use crate::specfun::{airy_ai_tail, airy_shifted, heat_kernel};

const CBRT2: f64 = 1.2599210498948732;
const CBRT4: f64 = 1.5874010519681996;

/// Overlap and times of an extended tacnode query.
#[derive(Debug, Clone, PartialEq)]
pub struct TacnodeParams {
    pub sigma: f64,
    /// `2^{2/3} sigma`
    pub sigma_tilde: f64,
    pub times: Vec<f64>,
}

impl TacnodeParams {
    pub fn new(sigma: f64, times: Vec<f64>) -> Result<Self> {
        if !sigma.is_finite() {
            return Err(Error::argument("tacnode: sigma must be finite"));
        }
        if times.is_empty() {
            return Err(Error::argument("tacnode: at least one time is required"));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::argument(
                "tacnode: times must be finite and strictly increasing",
            ));
        }
        Ok(TacnodeParams {
            sigma,
            sigma_tilde: CBRT4 * sigma,
            times,
        })
    }

    pub fn r(&self) -> usize {
        self.times.len()
    }
}

/// One gap interval with its occupation weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

/// Interval unions `E^(j)`, one per time, with optional z-weights.
///
/// Empty intervals (`a >= b`) are dropped and overlapping intervals at the
/// same time are merged, which requires them to carry the same weight.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GapSpec {
    pub per_time: Vec<Vec<Interval>>,
}

impl GapSpec {
    /// Pure gap probability (all weights 0).
    pub fn new(per_time: Vec<Vec<(f64, f64)>>) -> Result<Self> {
        Self::weighted(
            per_time
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|(a, b)| Interval { a, b, z: 0.0 })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn weighted(per_time: Vec<Vec<Interval>>) -> Result<Self> {
        let mut out = Vec::with_capacity(per_time.len());
        for mut ivs in per_time {
            if ivs
                .iter()
                .any(|i| !(i.a.is_finite() && i.b.is_finite() && i.z.is_finite()))
            {
                return Err(Error::argument(
                    "gap spec: endpoints and weights must be finite",
                ));
            }
            ivs.retain(|i| i.a < i.b);
            ivs.sort_by(|p, q| p.a.total_cmp(&q.a));
            let mut merged: Vec<Interval> = Vec::with_capacity(ivs.len());
            for iv in ivs {
                match merged.last_mut() {
                    Some(last) if iv.a <= last.b => {
                        if iv.z != last.z {
                            return Err(Error::argument(format!(
                                "gap spec: overlapping intervals [{}, {}] and [{}, {}] have different weights",
                                last.a, last.b, iv.a, iv.b
                            )));
                        }
                        last.b = last.b.max(iv.b);
                    }
                    _ => merged.push(iv),
                }
            }
            out.push(merged);
        }
        Ok(GapSpec { per_time: out })
    }

    /// The same intervals at every one of `r` times.
    pub fn uniform(r: usize, intervals: &[(f64, f64)]) -> Result<Self> {
        Self::new(vec![intervals.to_vec(); r])
    }

    pub fn is_empty(&self) -> bool {
        self.per_time.iter().all(|v| v.is_empty())
    }

    pub fn with_z(mut self, z: f64) -> Self {
        for v in &mut self.per_time {
            for i in v {
                i.z = z;
            }
        }
        self
    }
}

/// Kernel block index of ℝ₊.
pub const BLOCK_RPLUS: i32 = -1;
/// Kernel block index of ℝ₀ (restricted to `[sigma_tilde, inf)`).
pub const BLOCK_R0: i32 = 0;

fn time(params: &TacnodeParams, i: i32) -> Result<f64> {
    params.times.get((i - 1) as usize).copied().ok_or_else(|| {
        Error::argument(format!("tacnode block {i} out of range 1..={}", params.r()))
    })
}

/// One entry of the block kernel on `ℝ₊ ⊔ ℝ₀ ⊔ ℝ_{τ_1} ⊔ … ⊔ ℝ_{τ_r}`.
///
/// Blocks are numbered `-1` (ℝ₊), `0` (ℝ₀) and `1..=r` (times).
pub fn tacnode_h_block(i: i32, j: i32, x: f64, y: f64, params: &TacnodeParams) -> Result<f64> {
    let s = params.sigma;
    match (i, j) {
        (-1, -1) | (0, 0) => Ok(0.0),
        (-1, 0) | (0, -1) => Ok(-airy_ai_tail(x + y)?),
        (-1, j) => airy_shifted(-time(params, j)?, x * CBRT2 + s - y),
        (0, j) => airy_shifted(-time(params, j)?, x * CBRT2 + y - s),
        (i, -1) => airy_shifted(time(params, i)?, s - x + y * CBRT2),
        (i, 0) => airy_shifted(time(params, i)?, x - s + y * CBRT2),
        (i, j) => {
            let (ti, tj) = (time(params, i)?, time(params, j)?);
            if ti > tj {
                Ok(-heat_kernel(ti - tj, x, y)?)
            } else {
                Ok(0.0)
            }
        }
    }
}

pub fn tacnode_h_block_dd(i: i32, j: i32, x: Dd, y: Dd, params: &TacnodeParams) -> Result<Dd> {
    let s = Dd::from_f64(params.sigma);
    let t = |k: i32| time(params, k).map(Dd::from_f64);
    match (i, j) {
        (-1, -1) | (0, 0) => Ok(Dd::ZERO),
        (-1, 0) | (0, -1) => Ok(-airy_dd(x + y)?.0),
        (-1, j) => airy_shifted_dd(-t(j)?, x * Dd::CBRT2 + s - y),
        (0, j) => airy_shifted_dd(-t(j)?, x * Dd::CBRT2 + y - s),
        (i, -1) => airy_shifted_dd(t(i)?, s - x + y * Dd::CBRT2),
        (i, 0) => airy_shifted_dd(t(i)?, x - s + y * Dd::CBRT2),
        (i, j) => {
            let (ti, tj) = (t(i)?, t(j)?);
            if ti > tj {
                Ok(-heat_kernel_dd(ti - tj, x, y)?)
            } else {
                Ok(Dd::ZERO)
            }
        }
    }
}

/// [`tacnode_h_block`] with engine block `b` standing for kernel block `b - 1`.
#[derive(Debug, Clone)]
pub struct HKernel {
    pub params: TacnodeParams,
}

impl HKernel {
    /// Engine block index of a kernel block index.
    pub fn block(i: i32) -> usize {
        (i + 1) as usize
    }
}

impl BlockKernel for HKernel {
    fn entry(&self, i: usize, j: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
        let v = tacnode_h_block(i as i32 - 1, j as i32 - 1, x.re, y.re, &self.params)?;
        Ok(Complex64::new(v, 0.0))
    }
}

impl BlockKernelDd for HKernel {
    fn entry_dd(&self, i: usize, j: usize, x: Dd, y: Dd) -> Result<Dd> {
        tacnode_h_block_dd(i as i32 - 1, j as i32 - 1, x, y, &self.params)
    }
}
