//! The limit scans: Pearcey to Airy, tacnode to Pearcey, tacnode to Airy.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fredholm::DetResult;
use crate::gapprob::{
    pearcey_gap, tacnode_gap_ratio_with, tracy_widom_f2, TacnodeGap, TacnodeOptions,
};
use crate::kernels::{GapSpec, PearceyParams, TacnodeParams};

/// Numerical settings shared by all scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub m0: usize,
    /// Base node count for the Pearcey contours.
    pub m0_pearcey: usize,
    pub tol: f64,
    pub tacnode: TacnodeOptions,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            m0: 40,
            m0_pearcey: 60,
            tol: 1e-8,
            tacnode: TacnodeOptions::default(),
        }
    }
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwRow {
    pub s: f64,
    pub f2: Result<DetResult, String>,
}

/// `F2` on `steps + 1` equally spaced points of `[s_min, s_max]`.
pub fn tw_table(s_min: f64, s_max: f64, steps: usize, m0: usize, tol: f64) -> Result<Vec<TwRow>> {
    if !(s_min < s_max) || steps == 0 {
        return Err(Error::argument(format!(
            "tw: need s_min < s_max and steps >= 1, got {s_min}, {s_max}, {steps}"
        )));
    }
    Ok(linspace(s_min, s_max, steps + 1)
        .into_par_iter()
        .map(|s| TwRow {
            s,
            f2: tracy_widom_f2(s, m0, tol).map_err(|e| e.to_string()),
        })
        .collect())
}

/// Endpoints `(a_P, b_P)` of the Pearcey gap interval matched to the two
/// Airy edges at `rho` (left) and `sigma` (right).
pub fn pearcey_airy_interval(tau: f64, rho: f64, sigma: f64) -> (f64, f64) {
    let edge = 2.0 * (tau / 3.0).powf(1.5);
    let scale = (3.0 * tau).powf(1.0 / 6.0);
    (-edge + scale * rho, edge - scale * sigma)
}

#[derive(Debug, Clone, Serialize)]
pub struct PearceyAiryRow {
    pub rho: f64,
    pub sigma: f64,
    pub f_p: Option<DetResult>,
    pub f2f2: Option<f64>,
    /// `1 - F_P / (F2(sigma) F2(rho))`
    pub reldiff: Option<f64>,
    pub error: Option<String>,
}

pub fn scan_pearcey_to_airy(
    tau: f64,
    lo: f64,
    hi: f64,
    n: usize,
    settings: &ScanSettings,
) -> Result<Vec<PearceyAiryRow>> {
    if !(tau > 0.0) || !(lo <= hi) || n == 0 {
        return Err(Error::argument(format!(
            "scan-pearcey-airy: need tau > 0, lo <= hi, n >= 1, got {tau}, {lo}, {hi}, {n}"
        )));
    }
    let grid: Vec<(f64, f64)> = linspace(lo, hi, n)
        .iter()
        .flat_map(|&r| linspace(lo, hi, n).into_iter().map(move |s| (r, s)))
        .collect();
    Ok(grid
        .into_par_iter()
        .map(|(rho, sigma)| {
            let run = || -> Result<(DetResult, f64)> {
                let (a, b) = pearcey_airy_interval(tau, rho, sigma);
                let fp = if a < b {
                    pearcey_gap(
                        &PearceyParams::new(tau, vec![a, b])?,
                        settings.m0_pearcey,
                        settings.tol,
                    )?
                } else {
                    DetResult::exact(1.0)
                };
                let f2f2 = tracy_widom_f2(sigma, settings.m0, settings.tol)?.re()
                    * tracy_widom_f2(rho, settings.m0, settings.tol)?.re();
                Ok((fp, f2f2))
            };
            match run() {
                Ok((fp, f2f2)) => PearceyAiryRow {
                    rho,
                    sigma,
                    reldiff: Some(1.0 - fp.re() / f2f2),
                    f_p: Some(fp),
                    f2f2: Some(f2f2),
                    error: None,
                },
                Err(e) => PearceyAiryRow {
                    rho,
                    sigma,
                    f_p: None,
                    f2f2: None,
                    reldiff: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

/// Branch of the square root in the tacnode time scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// Tacnode gap interval and times matched to the Pearcey interval
/// `[a_p, b_p]` at times `tau_p`, for overlap `sigma < 0`.
pub fn tacnode_pearcey_params(
    sigma: f64,
    a_p: f64,
    b_p: f64,
    tau_p: &[f64],
    branch: Branch,
) -> Result<(f64, f64, Vec<f64>)> {
    if !(sigma < 0.0) {
        return Err(Error::argument(format!(
            "tacnode-to-Pearcey scaling needs sigma < 0, got {sigma}"
        )));
    }
    let space = (-8.0 * sigma).powf(0.125);
    let time = (-128.0 * sigma).powf(0.25);
    let centre = match branch {
        Branch::Plus => (-sigma / 2.0).sqrt(),
        Branch::Minus => -(-sigma / 2.0).sqrt(),
    };
    Ok((
        a_p / space,
        b_p / space,
        tau_p.iter().map(|t| centre + t / time).collect(),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct TacnodePearceyRow {
    pub sigma: f64,
    pub f_tac: Option<TacnodeGap>,
    /// Present for a single Pearcey time only.
    pub f_p: Option<DetResult>,
    /// `1 - F_tac / F_P`; for several times `1 - F_tac(sigma) / F_tac(previous sigma)`.
    pub reldiff: Option<f64>,
    pub error: Option<String>,
}

pub fn scan_tacnode_to_pearcey(
    sigmas: &[f64],
    a_p: f64,
    b_p: f64,
    tau_p: &[f64],
    branch: Branch,
    settings: &ScanSettings,
) -> Result<Vec<TacnodePearceyRow>> {
    if sigmas.is_empty() || tau_p.is_empty() || !(a_p < b_p) {
        return Err(Error::argument(
            "scan-tacnode-pearcey: need sigmas, Pearcey times and a_p < b_p",
        ));
    }
    if let Some(s) = sigmas.iter().find(|s| !(**s < 0.0)) {
        return Err(Error::argument(format!(
            "scan-tacnode-pearcey: sigma = {s} is not negative"
        )));
    }
    let f_p = if tau_p.len() == 1 {
        Some(pearcey_gap(
            &PearceyParams::new(tau_p[0], vec![a_p, b_p])?,
            settings.m0_pearcey,
            settings.tol,
        ))
    } else {
        None
    };
    let tac: Vec<Result<TacnodeGap>> = sigmas
        .par_iter()
        .map(|&sigma| {
            let (a, b, times) = tacnode_pearcey_params(sigma, a_p, b_p, tau_p, branch)?;
            let params = TacnodeParams::new(sigma, times)?;
            let spec = GapSpec::uniform(tau_p.len(), &[(a, b)])?;
            tacnode_gap_ratio_with(&spec, &params, settings.m0, settings.tol, &settings.tacnode)
        })
        .collect();
    let mut rows = Vec::with_capacity(sigmas.len());
    for (k, (&sigma, t)) in sigmas.iter().zip(&tac).enumerate() {
        let row = match (t, &f_p) {
            (Err(e), _) => TacnodePearceyRow {
                sigma,
                f_tac: None,
                f_p: None,
                reldiff: None,
                error: Some(e.to_string()),
            },
            (Ok(_), Some(Err(e))) => TacnodePearceyRow {
                sigma,
                f_tac: t.clone().ok(),
                f_p: None,
                reldiff: None,
                error: Some(e.to_string()),
            },
            (Ok(g), Some(Ok(p))) => TacnodePearceyRow {
                sigma,
                f_tac: Some(g.clone()),
                f_p: Some(p.clone()),
                reldiff: Some(1.0 - g.re() / p.re()),
                error: None,
            },
            (Ok(g), None) => {
                let prev = k.checked_sub(1).and_then(|j| tac[j].as_ref().ok());
                TacnodePearceyRow {
                    sigma,
                    f_tac: Some(g.clone()),
                    f_p: None,
                    reldiff: prev.map(|p| 1.0 - g.re() / p.re()),
                    error: None,
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Parameter swept in the tacnode-to-Airy scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Sigma,
    Tau,
}

/// The interval `[a - sigma - tau^2, -b + sigma + tau^2]`.
pub fn tacnode_airy_interval(a: f64, b: f64, sigma: f64, tau: f64) -> (f64, f64) {
    let shift = sigma + tau * tau;
    (a - shift, -b + shift)
}

#[derive(Debug, Clone, Serialize)]
pub struct TacnodeAiryRow {
    /// Value of the swept parameter.
    pub param: f64,
    pub f_tac: Option<TacnodeGap>,
    pub f2f2: f64,
    /// `1 - F_tac / (F2(a) F2(b))`
    pub reldiff: Option<f64>,
    pub error: Option<String>,
}

/// Sweeps `sigma` at fixed `tau = fixed`, or `tau` at fixed `sigma = fixed`.
pub fn scan_tacnode_to_airy(
    a: f64,
    b: f64,
    sweep: Sweep,
    values: &[f64],
    fixed: f64,
    settings: &ScanSettings,
) -> Result<Vec<TacnodeAiryRow>> {
    let f2f2 = tracy_widom_f2(a, settings.m0, settings.tol)?.re()
        * tracy_widom_f2(b, settings.m0, settings.tol)?.re();
    Ok(values
        .par_iter()
        .map(|&param| {
            let (sigma, tau) = match sweep {
                Sweep::Sigma => (param, fixed),
                Sweep::Tau => (fixed, param),
            };
            let run = || -> Result<TacnodeGap> {
                let (lo, hi) = tacnode_airy_interval(a, b, sigma, tau);
                let spec = GapSpec::uniform(1, &[(lo, hi)])?;
                let params = TacnodeParams::new(sigma, vec![tau])?;
                tacnode_gap_ratio_with(&spec, &params, settings.m0, settings.tol, &settings.tacnode)
            };
            match run() {
                Ok(g) => TacnodeAiryRow {
                    param,
                    reldiff: Some(1.0 - g.re() / f2f2),
                    f_tac: Some(g),
                    f2f2,
                    error: None,
                },
                Err(e) => TacnodeAiryRow {
                    param,
                    f_tac: None,
                    f2f2,
                    reldiff: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

/// Least-squares fit of `ln |y|` against `x`: `(slope, r_squared)`.
pub fn log_linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(_, v)| **v != 0.0)
        .map(|(u, v)| (*u, v.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Some((slope, r2))
}

/// Whether `|v|` strictly decreases along the sequence.
pub fn strictly_decreasing_magnitude(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1].abs() < w[0].abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_and_fits() {
        assert_eq!(linspace(-8.0, 4.0, 3), vec![-8.0, -2.0, 4.0]);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
        let x = [1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|t: &f64| 3.0 * (-2.0 * t).exp()).collect();
        let (slope, r2) = log_linear_fit(&x, &y).unwrap();
        assert!((slope + 2.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
        assert!(strictly_decreasing_magnitude(&[-0.5, 0.2, -0.1]));
        assert!(!strictly_decreasing_magnitude(&[0.1, 0.1]));
    }

    #[test]
    fn scalings() {
        let (a, b) = pearcey_airy_interval(3.0, 0.0, 0.0);
        assert!((a + 2.0).abs() < 1e-15 && (b - 2.0).abs() < 1e-15);
        let (a, b, t) = tacnode_pearcey_params(-2.0, -1.0, 1.0, &[0.0, 2.0], Branch::Plus).unwrap();
        assert!((a + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15 && (b + a).abs() < 1e-15);
        assert!((t[0] - 1.0).abs() < 1e-15 && (t[1] - 1.5).abs() < 1e-15);
        let (_, _, t) = tacnode_pearcey_params(-2.0, -1.0, 1.0, &[0.0], Branch::Minus).unwrap();
        assert!((t[0] + 1.0).abs() < 1e-15);
        assert!(tacnode_pearcey_params(1.0, -1.0, 1.0, &[0.0], Branch::Plus).is_err());
        assert_eq!(tacnode_airy_interval(-0.3, 0.5, 1.0, 0.0), (-1.3, 0.5));
    }

    #[test]
    fn tw_rows() {
        let rows = tw_table(-8.0, 4.0, 2, 40, 1e-8).unwrap();
        assert_eq!(rows.len(), 3);
        let v: Vec<f64> = rows.iter().map(|r| r.f2.as_ref().unwrap().re()).collect();
        assert!(v[0] < v[1] && v[1] < v[2]);
        assert!(tw_table(1.0, 0.0, 2, 40, 1e-8).is_err());
    }

    #[test]
    fn degenerate_tacnode_airy_interval_gives_one() {
        let s = ScanSettings::default();
        let rows = scan_tacnode_to_airy(-0.3, 0.5, Sweep::Sigma, &[0.05], 0.0, &s).unwrap();
        assert_eq!(rows[0].f_tac.as_ref().unwrap().re(), 1.0);
    }
}
