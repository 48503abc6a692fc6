//! Gap probabilities and occupation generating functions: Tracy-Widom F2,
//! the Pearcey gap probability and the tacnode gap probability (by two
//! independent routes).

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};
use crate::fredholm::extended::{assemble_dd, BlockKernelDd, DiscretizationDd};
use crate::fredholm::{
    assemble, converge, fredholm_det, BlockKernel, DetResult, Discretization, Lu, Matrix,
};
use crate::kernels::pearcey::{pearcey_domains, AxisMap, PearceyKernel, PearceyParams};
use crate::kernels::tacnode::{GapSpec, HKernel, TacnodeParams, BLOCK_R0, BLOCK_RPLUS};
use crate::kernels::{AiryKernel, TacnodeDirect};
use crate::quadrature::{oscillatory_factor, DomainComponent, HalfLine, DEFAULT_RAY_SCALE};

/// Values below this are recomputed in double-double.
pub const EXTENDED_THRESHOLD: f64 = 1e-12;
/// Smallest double-double denominator accepted in the tacnode ratio.
const MIN_DD_DENOMINATOR: f64 = 1e-250;
pub const SIGMA_LIMIT: f64 = 9.0;
pub const TW_WINDOW: (f64, f64) = (-12.0, 12.0);
pub const PEARCEY_TAU_WINDOW: (f64, f64) = (0.0, 8.0);

/// `det(1 - K)` of a real kernel in double-double.
fn det_dd(kernel: &dyn BlockKernelDd, domains: &[DomainComponent], m: usize) -> Result<Dd> {
    let disc = DiscretizationDd::new(domains, m)?;
    if disc.is_empty() {
        return Ok(Dd::ONE);
    }
    Ok(Lu::factor(assemble_dd(kernel, &disc)?).det())
}

fn converge_dd(
    m0: usize,
    tol: f64,
    mut eval: impl FnMut(usize) -> Result<Dd>,
) -> Result<(Dd, f64, usize)> {
    let mut fine = Dd::ZERO;
    let c = converge(m0, tol, |m| {
        fine = eval(m)?;
        Ok(Complex64::new(fine.to_f64(), 0.0))
    })?;
    Ok((fine, c.err_estimate, c.m))
}

/// Fredholm determinant of `kernel` with the occupation weights carried by
/// the components: `det(1 - sum_j (1 - z_j) 1_{E_j} K 1_E)`.
///
/// The real components must be disjoint.
pub fn generating_function(
    kernel: &dyn BlockKernel,
    intervals: &[DomainComponent],
    m0: usize,
    tol: f64,
) -> Result<DetResult> {
    check_disjoint(intervals)?;
    fredholm_det(kernel, intervals, m0, tol)
}

fn check_disjoint(parts: &[DomainComponent]) -> Result<()> {
    use crate::quadrature::DomainKind::*;
    let span = |c: &DomainComponent| match c.kind {
        Finite { a, b } => Some((c.block, a, b)),
        Ray { start, .. } => Some((c.block, start, f64::INFINITY)),
        _ => None,
    };
    let mut real: Vec<_> = parts.iter().filter_map(span).collect();
    real.sort_by(|p, q| p.0.cmp(&q.0).then(p.1.total_cmp(&q.1)));
    for w in real.windows(2) {
        if w[0].0 == w[1].0 && w[1].1 < w[0].2 {
            return Err(Error::argument(format!(
                "intervals [{}, {}] and [{}, {}] overlap",
                w[0].1, w[0].2, w[1].1, w[1].2
            )));
        }
    }
    Ok(())
}

/// Tracy-Widom GUE distribution `F2(s) = det(1 - K_Ai)` on `[s, inf)`.
///
/// Values below 1e-12 are recomputed in double-double.
pub fn tracy_widom_f2(s: f64, m0: usize, tol: f64) -> Result<DetResult> {
    if !(TW_WINDOW.0..=TW_WINDOW.1).contains(&s) {
        return Err(Error::domain("tracy_widom_f2", s, TW_WINDOW.0, TW_WINDOW.1));
    }
    let domain = [DomainComponent::ray(s, DEFAULT_RAY_SCALE, "[s,inf)", 0)?];
    let r = generating_function(&AiryKernel, &domain, m0, tol)?;
    if r.re().abs() >= EXTENDED_THRESHOLD {
        return Ok(r);
    }
    let (v, err, m) = converge_dd(m0, tol, |m| det_dd(&AiryKernel, &domain, m))?;
    Ok(DetResult {
        value: Complex64::new(v.to_f64(), 0.0),
        imag_residual: 0.0,
        err_estimate: err,
        m_used: vec![m],
    })
}

/// `P(no Pearcey point in the gap set at time tau)`.
pub fn pearcey_gap(params: &PearceyParams, m0: usize, tol: f64) -> Result<DetResult> {
    pearcey_gap_with(params, AxisMap::default(), m0, tol)
}

/// [`pearcey_gap`] with a choice of parametrization of the imaginary axis.
pub fn pearcey_gap_with(
    params: &PearceyParams,
    axis: AxisMap,
    m0: usize,
    tol: f64,
) -> Result<DetResult> {
    let (lo, hi) = PEARCEY_TAU_WINDOW;
    if !(lo..=hi).contains(&params.tau) {
        return Err(Error::domain("pearcey_gap", params.tau, lo, hi));
    }
    if params.endpoints.is_empty() {
        return Ok(DetResult::exact(1.0));
    }
    let kernel = PearceyKernel {
        params: params.clone(),
    };
    fredholm_det(&kernel, &pearcey_domains(axis), m0, tol)
}

/// Options of the tacnode computations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TacnodeOptions {
    pub half_line: HalfLine,
    /// Allow `|sigma| > 9`.
    pub force_sigma: bool,
}

fn check_window(params: &TacnodeParams, opts: &TacnodeOptions) -> Result<()> {
    if params.sigma.abs() > SIGMA_LIMIT && !opts.force_sigma {
        return Err(Error::StabilityWindow {
            sigma: params.sigma,
            limit: SIGMA_LIMIT,
        });
    }
    Ok(())
}

fn check_spec(spec: &GapSpec, params: &TacnodeParams) -> Result<()> {
    if spec.per_time.len() != params.r() {
        return Err(Error::argument(format!(
            "gap spec has {} times, parameters have {}",
            spec.per_time.len(),
            params.r()
        )));
    }
    Ok(())
}

/// `[sigma_tilde, inf)` for the Airy block, split at 0 when `sigma_tilde < 0`.
pub fn overlap_domain(
    sigma_tilde: f64,
    half_line: HalfLine,
    block: usize,
) -> Result<Vec<DomainComponent>> {
    DomainComponent::split_half_line(sigma_tilde, half_line, "R0", block)
}

/// Components of the restricted operator: `R+`, `[sigma_tilde, inf)`, then
/// the gap intervals with their weights. Also returns the number of leading
/// components (those of `R+` and `[sigma_tilde, inf)`).
pub fn tacnode_domains(
    spec: &GapSpec,
    params: &TacnodeParams,
    half_line: HalfLine,
) -> Result<(Vec<DomainComponent>, usize)> {
    let st = params.sigma_tilde;
    let rplus = HKernel::block(BLOCK_RPLUS);
    let mut d = if st < 0.0 && !matches!(half_line, HalfLine::Truncated { .. }) {
        // R+ pairs with [sigma_tilde, inf) through Ai(x + y), which
        // oscillates for x < -sigma_tilde.
        let cut = 1.0 - st;
        vec![
            DomainComponent::finite(0.0, cut, "R+:head", rplus)?
                .with_node_factor(oscillatory_factor(cut)),
            DomainComponent::half_line(cut, half_line, "R+:tail", rplus)?,
        ]
    } else {
        vec![DomainComponent::half_line(0.0, half_line, "R+", rplus)?]
    };
    d.extend(overlap_domain(st, half_line, HKernel::block(BLOCK_R0))?);
    let lead = d.len();
    for (j, ivs) in spec.per_time.iter().enumerate() {
        for iv in ivs {
            let c = DomainComponent::finite(
                iv.a,
                iv.b,
                format!("E{}", j + 1),
                HKernel::block(j as i32 + 1),
            )?;
            d.push(c.with_z(iv.z));
        }
    }
    Ok((d, lead))
}

/// Tacnode gap probability with the parts of the ratio it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TacnodeGap {
    pub ratio: DetResult,
    /// Determinant of the full restricted operator.
    pub numerator: DetResult,
    /// Determinant of its leading (`R+`, `[sigma_tilde, inf)`) block, an
    /// evaluation of `F2(sigma_tilde)` on the same nodes.
    pub denominator: DetResult,
    /// Whether the computation was carried out in double-double.
    pub extended: bool,
}

impl TacnodeGap {
    pub fn re(&self) -> f64 {
        self.ratio.re()
    }
}

#[derive(Debug, Clone, Copy)]
struct RatioLevel {
    numerator: f64,
    denominator: f64,
    ratio: f64,
}

fn lead_size(domains: &[DomainComponent], lead: usize, m: usize) -> usize {
    domains[..lead].iter().map(|c| c.nodes(m)).sum()
}

fn ratio_level_f64(
    h: &HKernel,
    domains: &[DomainComponent],
    lead: usize,
    m: usize,
) -> Result<RatioLevel> {
    let disc = Discretization::new(domains, m)?;
    let a: Matrix<f64> = assemble(h, &disc)?.map(|v: Complex64| v.re);
    let lu = Lu::factor_leading(a, lead_size(domains, lead, m));
    Ok(RatioLevel {
        numerator: lu.det(),
        denominator: lu.det_leading(),
        ratio: lu.det_schur(),
    })
}

fn ratio_level_dd(
    h: &HKernel,
    domains: &[DomainComponent],
    lead: usize,
    m: usize,
) -> Result<RatioLevel> {
    let disc = DiscretizationDd::new(domains, m)?;
    let lu = Lu::factor_leading(assemble_dd(h, &disc)?, lead_size(domains, lead, m));
    let den = lu.det_leading();
    if !(den.to_f64() > MIN_DD_DENOMINATOR) {
        return Err(Error::DivisionInstability {
            denominator: den.to_f64(),
        });
    }
    Ok(RatioLevel {
        numerator: lu.det().to_f64(),
        denominator: den.to_f64(),
        ratio: lu.det_schur().to_f64(),
    })
}

/// Tacnode gap probability as the ratio of the restricted block operator's
/// determinant to that of its leading block.
///
/// Both determinants come from one factorization whose pivots for the
/// leading columns stay within the leading block. When the denominator is
/// below 1e-12 the computation is redone in double-double; a double-double
/// denominator below 1e-250 is a [`Error::DivisionInstability`].
pub fn tacnode_gap_ratio(
    spec: &GapSpec,
    params: &TacnodeParams,
    m0: usize,
    tol: f64,
) -> Result<TacnodeGap> {
    tacnode_gap_ratio_with(spec, params, m0, tol, &TacnodeOptions::default())
}

pub fn tacnode_gap_ratio_with(
    spec: &GapSpec,
    params: &TacnodeParams,
    m0: usize,
    tol: f64,
    opts: &TacnodeOptions,
) -> Result<TacnodeGap> {
    check_spec(spec, params)?;
    check_window(params, opts)?;
    if m0 < 10 {
        return Err(Error::argument(format!(
            "tacnode_gap_ratio: m0 = {m0} is below 10"
        )));
    }
    let h = HKernel {
        params: params.clone(),
    };
    let (domains, lead) = tacnode_domains(spec, params, opts.half_line)?;
    let run = |dd: bool| -> Result<(RatioLevel, f64, usize)> {
        let mut last = None;
        let c = converge(m0, tol, |m| {
            let l = if dd {
                ratio_level_dd(&h, &domains, lead, m)?
            } else {
                let l = ratio_level_f64(&h, &domains, lead, m)?;
                if !(l.denominator >= EXTENDED_THRESHOLD) {
                    return Err(Error::DivisionInstability {
                        denominator: l.denominator,
                    });
                }
                l
            };
            last = Some(l);
            Ok(Complex64::new(l.ratio, 0.0))
        })?;
        Ok((last.expect("at least one level"), c.err_estimate, c.m))
    };
    let (level, err, m, extended) = match run(false) {
        Ok((l, e, m)) => (l, e, m, false),
        Err(Error::DivisionInstability { .. }) => {
            let (l, e, m) = run(true)?;
            (l, e, m, true)
        }
        Err(e) => return Err(e),
    };
    let m_used: Vec<usize> = domains.iter().map(|c| c.nodes(m)).collect();
    let det = |v: f64, m_used: Vec<usize>| DetResult {
        value: Complex64::new(v, 0.0),
        imag_residual: 0.0,
        err_estimate: err,
        m_used,
    };
    Ok(TacnodeGap {
        ratio: det(level.ratio, m_used.clone()),
        numerator: det(level.numerator, m_used.clone()),
        denominator: det(level.denominator, m_used[..lead].to_vec()),
        extended,
    })
}

/// Tacnode gap probability as `det(1 - K^tac)` on the gap intervals, with
/// the Airy resolvent on `[sigma_tilde, inf)` discretized at the same base
/// node count and the inner integrals at twice that.
pub fn tacnode_gap_direct(
    spec: &GapSpec,
    params: &TacnodeParams,
    m0: usize,
    tol: f64,
) -> Result<DetResult> {
    tacnode_gap_direct_with(spec, params, m0, tol, &TacnodeOptions::default())
}

pub fn tacnode_gap_direct_with(
    spec: &GapSpec,
    params: &TacnodeParams,
    m0: usize,
    tol: f64,
    opts: &TacnodeOptions,
) -> Result<DetResult> {
    check_spec(spec, params)?;
    check_window(params, opts)?;
    if m0 < 10 {
        return Err(Error::argument(format!(
            "tacnode_gap_direct: m0 = {m0} is below 10"
        )));
    }
    if spec.is_empty() {
        return Ok(DetResult::exact(1.0));
    }
    let resolvent = overlap_domain(params.sigma_tilde, opts.half_line, 0)?;
    let intervals: Vec<(usize, DomainComponent)> = spec
        .per_time
        .iter()
        .enumerate()
        .flat_map(|(j, ivs)| ivs.iter().map(move |iv| (j, *iv)))
        .map(|(j, iv)| {
            Ok((
                j + 1,
                DomainComponent::finite(iv.a, iv.b, format!("E{}", j + 1), j)?.with_z(iv.z),
            ))
        })
        .collect::<Result<_>>()?;
    let comps: Vec<DomainComponent> = intervals.iter().map(|(_, c)| c.clone()).collect();
    let c = converge(m0, tol, |m| {
        let direct = TacnodeDirect::new(params, &resolvent, m, 2 * m)?;
        let disc = Discretization::new(&comps, m)?;
        let mut pts = Vec::with_capacity(disc.len());
        for (k, (t, _)) in intervals.iter().enumerate() {
            pts.extend(std::iter::repeat_n(*t, disc.sizes[k]));
        }
        let pts: Vec<(usize, f64)> = pts
            .into_iter()
            .zip(&disc.points)
            .map(|(t, x)| (t, x.re))
            .collect();
        let w: Vec<f64> = disc.weights.iter().map(|w| w.re).collect();
        let lu = Lu::factor(direct.matrix(&pts, &w)?);
        Ok(Complex64::new(lu.det(), 0.0))
    })?;
    Ok(DetResult {
        value: c.value,
        imag_residual: 0.0,
        err_estimate: c.err_estimate,
        m_used: comps.iter().map(|d| d.nodes(c.m)).collect(),
    })
}
