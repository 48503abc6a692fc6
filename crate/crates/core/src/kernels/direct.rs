//! The extended tacnode kernel written out directly, with the Airy resolvent
//! on `[sigma_tilde, inf)` evaluated by Nyström.

use num_complex::Complex64;

use super::airy::AiryKernel;
use super::tacnode::TacnodeParams;
use crate::error::{Error, Result};
use crate::fredholm::{assemble, Discretization, Lu, Matrix};
use crate::quadrature::{gauss_legendre, map_ray, DomainComponent, DEFAULT_RAY_SCALE};
use crate::specfun::{airy_ai_tail, airy_shifted, heat_kernel};

const CBRT2: f64 = 1.2599210498948732;
/// Agreement required between `m_inner` and `2 m_inner` in the checked
/// single-value functions.
const INNER_TOL: f64 = 1e-8;
pub const DEFAULT_M_INNER: usize = 80;

/// Nodes and weights of the mapped ray `[0, inf)`.
fn inner_rule(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = gauss_legendre(m)?;
    let mut v = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let (x, dx) = map_ray(0.0, DEFAULT_RAY_SCALE, t)?;
        v.push(x);
        w.push(wt * dx);
    }
    Ok((v, w))
}

fn check_inner(m_inner: usize) -> Result<()> {
    if m_inner < 20 {
        return Err(Error::argument(format!("m_inner = {m_inner} is below 20")));
    }
    Ok(())
}

fn checked_doubling(m_inner: usize, f: impl Fn(usize) -> Result<f64>) -> Result<f64> {
    check_inner(m_inner)?;
    let coarse = f(m_inner)?;
    let fine = f(2 * m_inner)?;
    let err = (fine - coarse).abs();
    if err > INNER_TOL {
        return Err(Error::NonConvergence {
            coarse: Complex64::new(coarse, 0.0),
            fine: Complex64::new(fine, 0.0),
            err,
            tol: INNER_TOL,
            nodes: 2 * m_inner,
        });
    }
    Ok(fine)
}

fn ext_airy_at(tau1: f64, tau2: f64, x: f64, y: f64, m: usize) -> Result<f64> {
    let (v, w) = inner_rule(m)?;
    let mut s = 0.0;
    for (u, wu) in v.iter().zip(&w) {
        let a = airy_shifted(tau1, x + CBRT2 * u)?;
        if a == 0.0 {
            continue;
        }
        s += wu * a * airy_shifted(-tau2, y + CBRT2 * u)?;
    }
    Ok(s)
}

/// `int_0^inf Ai^{(tau1)}(x + 2^{1/3} u) Ai^{(-tau2)}(y + 2^{1/3} u) du`.
///
/// Computed with `m_inner` and `2 m_inner` nodes on the mapped ray; the
/// finer value is returned if the two agree to 1e-8.
pub fn ext_airy_kernel(tau1: f64, tau2: f64, x: f64, y: f64, m_inner: usize) -> Result<f64> {
    checked_doubling(m_inner, |m| ext_airy_at(tau1, tau2, x, y, m))
}

fn script_a_at(tau: f64, xi: f64, u: f64, m: usize) -> Result<f64> {
    let (v, w) = inner_rule(m)?;
    let mut s = 0.0;
    for (vv, wv) in v.iter().zip(&w) {
        let a = airy_ai_tail(u + vv)?;
        if a == 0.0 {
            continue;
        }
        s += wv * airy_shifted(tau, -xi + CBRT2 * vv)? * a;
    }
    Ok(airy_shifted(tau, xi + CBRT2 * u)? - s)
}

/// `Ai^{(tau)}(xi + 2^{1/3} u) - int_0^inf Ai^{(tau)}(-xi + 2^{1/3} v) Ai(u + v) dv`.
pub fn script_a(tau: f64, xi: f64, u: f64, m_inner: usize) -> Result<f64> {
    checked_doubling(m_inner, |m| script_a_at(tau, xi, u, m))
}

/// Precomputed pieces of the direct kernel: the factorized `1 - K_Ai` on
/// `[sigma_tilde, inf)` and the inner ray rule.
#[derive(Debug, Clone)]
pub struct TacnodeDirect {
    pub params: TacnodeParams,
    res_points: Vec<f64>,
    res_weights: Vec<f64>,
    lu: Lu<f64>,
    /// `det(1 - K_Ai)` on the resolvent domain, i.e. `F2(sigma_tilde)`.
    pub resolvent_det: f64,
    inner_points: Vec<f64>,
    inner_weights: Vec<f64>,
    /// `Ai(u_q + v_k)` for resolvent nodes `u_q` and inner nodes `v_k`.
    ai_uv: Vec<Vec<f64>>,
}

impl TacnodeDirect {
    /// `resolvent` must cover `[sigma_tilde, inf)`; `m` is the base node
    /// count for it.
    pub fn new(
        params: &TacnodeParams,
        resolvent: &[DomainComponent],
        m: usize,
        m_inner: usize,
    ) -> Result<Self> {
        check_inner(m_inner)?;
        let disc = Discretization::new(resolvent, m)?;
        let a = assemble(&AiryKernel, &disc)?.map(|v: Complex64| v.re);
        let lu = Lu::factor(a);
        let det = lu.det();
        if lu.is_singular() || det.abs() < 1e-14 {
            return Err(Error::SingularRestriction { det });
        }
        let res_points: Vec<f64> = disc.points.iter().map(|p| p.re).collect();
        let res_weights: Vec<f64> = disc.weights.iter().map(|w| w.re).collect();
        let (inner_points, inner_weights) = inner_rule(m_inner)?;
        let ai_uv = res_points
            .iter()
            .map(|u| {
                inner_points
                    .iter()
                    .map(|v| airy_ai_tail(u + v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TacnodeDirect {
            params: params.clone(),
            res_points,
            res_weights,
            lu,
            resolvent_det: det,
            inner_points,
            inner_weights,
            ai_uv,
        })
    }

    fn time(&self, idx: usize) -> Result<f64> {
        idx.checked_sub(1)
            .and_then(|k| self.params.times.get(k))
            .copied()
            .ok_or_else(|| {
                Error::argument(format!(
                    "time index {idx} out of range 1..={}",
                    self.params.r()
                ))
            })
    }

    /// `A^{tau}_{xi}` sampled at the resolvent nodes.
    fn script_a_vec(&self, tau: f64, xi: f64) -> Result<Vec<f64>> {
        let left: Vec<f64> = self
            .inner_points
            .iter()
            .zip(&self.inner_weights)
            .map(|(v, w)| Ok(w * airy_shifted(tau, -xi + CBRT2 * v)?))
            .collect::<Result<_>>()?;
        self.res_points
            .iter()
            .zip(&self.ai_uv)
            .map(|(u, row)| {
                let s: f64 = left.iter().zip(row).map(|(l, a)| l * a).sum();
                Ok(airy_shifted(tau, xi + CBRT2 * u)? - s)
            })
            .collect()
    }

    /// `Ai^{(tau)}(x + 2^{1/3} v_k)` times the inner weights.
    fn inner_vec(&self, tau: f64, x: f64, weighted: bool) -> Result<Vec<f64>> {
        self.inner_points
            .iter()
            .zip(&self.inner_weights)
            .map(|(v, w)| Ok(airy_shifted(tau, x + CBRT2 * v)? * if weighted { *w } else { 1.0 }))
            .collect()
    }

    fn resolvent_apply(&self, mut f: Vec<f64>) -> Result<Vec<f64>> {
        if !self.lu.solve_in_place(&mut f) {
            return Err(Error::SingularRestriction {
                det: self.resolvent_det,
            });
        }
        Ok(f)
    }

    /// `K^tac(tau_{t1}, xi1; tau_{t2}, xi2)`, times indexed from 1.
    pub fn kernel(&self, t1: usize, xi1: f64, t2: usize, xi2: f64) -> Result<f64> {
        let row = self.prepare(&[(t1, xi1)])?;
        let col = self.prepare(&[(t2, xi2)])?;
        self.combine(&row[0], &col[0])
    }

    fn prepare(&self, pts: &[(usize, f64)]) -> Result<Vec<Prepared>> {
        let s = self.params.sigma;
        pts.iter()
            .map(|&(t, xi)| {
                let tau = self.time(t)?;
                Ok(Prepared {
                    tau,
                    xi,
                    left: self.inner_vec(tau, s - xi, true)?,
                    right: self.inner_vec(-tau, s - xi, false)?,
                    resolved: self.resolvent_apply(self.script_a_vec(tau, xi - s)?)?,
                    back: self
                        .script_a_vec(-tau, xi - s)?
                        .iter()
                        .zip(&self.res_weights)
                        .map(|(a, w)| a * w)
                        .collect(),
                })
            })
            .collect()
    }

    fn combine(&self, p: &Prepared, q: &Prepared) -> Result<f64> {
        let k0: f64 = p.left.iter().zip(&q.right).map(|(a, b)| a * b).sum();
        let g = if p.tau > q.tau {
            heat_kernel(p.tau - q.tau, p.xi, q.xi)?
        } else {
            0.0
        };
        let res: f64 = p.resolved.iter().zip(&q.back).map(|(a, b)| a * b).sum();
        Ok(k0 - g + res)
    }

    /// `I - K^tac W` on the given (time index, position) nodes with column
    /// weights `weights`.
    pub fn matrix(&self, pts: &[(usize, f64)], weights: &[f64]) -> Result<Matrix<f64>> {
        let prep = self.prepare(pts)?;
        let n = pts.len();
        let mut m = Matrix::identity(n);
        for p in 0..n {
            for q in 0..n {
                m[(p, q)] -= weights[q] * self.combine(&prep[p], &prep[q])?;
            }
        }
        Ok(m)
    }
}

struct Prepared {
    tau: f64,
    xi: f64,
    /// weighted `Ai^{(tau)}(sigma - xi + c v)`
    left: Vec<f64>,
    /// `Ai^{(-tau)}(sigma - xi + c v)`
    right: Vec<f64>,
    /// `(1 - K_Ai)^{-1} A^{tau}_{xi - sigma}` at the resolvent nodes
    resolved: Vec<f64>,
    /// weighted `A^{-tau}_{xi - sigma}` at the resolvent nodes
    back: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::airy::airy_kernel;
    use crate::quadrature::HalfLine;

    fn direct(sigma: f64, times: Vec<f64>) -> TacnodeDirect {
        let p = TacnodeParams::new(sigma, times).unwrap();
        let res =
            DomainComponent::split_half_line(p.sigma_tilde, HalfLine::default(), "R0", 0).unwrap();
        TacnodeDirect::new(&p, &res, 40, 80).unwrap()
    }

    #[test]
    fn reduces_to_the_airy_kernel_at_zero_times() {
        for i in 0..5 {
            for j in 0..5 {
                let (x, y) = (-2.0 + i as f64, -1.5 + 0.8 * j as f64);
                let e = ext_airy_kernel(0.0, 0.0, x, y, 80).unwrap();
                assert!((e - airy_kernel(x, y).unwrap()).abs() < 1e-9, "{x} {y}");
            }
        }
        assert!(
            (ext_airy_kernel(0.0, 0.0, 0.3, 0.9, 60).unwrap() - airy_kernel(0.3, 0.9).unwrap())
                .abs()
                < 1e-9
        );
    }

    #[test]
    fn relabelling_symmetry() {
        let a = ext_airy_kernel(0.5, 0.2, 1.0, 2.0, 60).unwrap();
        let b = ext_airy_kernel(-0.2, -0.5, 2.0, 1.0, 60).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn self_convergence_at_equal_times() {
        let v: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&m| ext_airy_at(0.5, 0.5, 0.0, 0.0, m).unwrap())
            .collect();
        assert!(
            (v[1] - v[0]).abs() < 1e-9 && (v[2] - v[1]).abs() < 1e-9,
            "{v:?}"
        );
    }

    #[test]
    fn script_a_decays_and_matches_its_integral() {
        assert!(script_a(0.0, 0.0, 15.0, 80).unwrap().abs() < 1e-6);
        let direct = airy_shifted(0.0, 0.0).unwrap() - script_a(0.0, 0.0, 0.0, 80).unwrap();
        let (v, w) = inner_rule(200).unwrap();
        let q: f64 = v
            .iter()
            .zip(&w)
            .map(|(x, wx)| {
                wx * 1.122462048309373
                    * airy_ai_tail(CBRT2 * x).unwrap()
                    * airy_ai_tail(*x).unwrap()
            })
            .sum();
        assert!((direct - q).abs() < 1e-9);
    }

    #[test]
    fn resolvent_term_vanishes_for_large_overlap() {
        let d = direct(6.0, vec![0.0]);
        let (xi, tau) = (6.0, 0.0);
        let p = &d.prepare(&[(1, xi)]).unwrap()[0];
        let res: f64 = p.resolved.iter().zip(&p.back).map(|(a, b)| a * b).sum();
        assert!(res.abs() < 1e-6, "{res}");
        let k = d.kernel(1, xi, 1, xi).unwrap();
        let k0 = ext_airy_kernel(tau, tau, 0.0, 0.0, 80).unwrap();
        assert!((k - k0).abs() < 1e-6);
    }

    #[test]
    fn heat_term_only_below_the_diagonal_in_time() {
        let d = direct(0.0, vec![0.0, 1.0]);
        let up = d.kernel(2, 0.1, 1, 0.3).unwrap();
        let p = d.prepare(&[(2, 0.1), (1, 0.3)]).unwrap();
        let without: f64 = p[0]
            .left
            .iter()
            .zip(&p[1].right)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            + p[0]
                .resolved
                .iter()
                .zip(&p[1].back)
                .map(|(a, b)| a * b)
                .sum::<f64>();
        assert!((without - heat_kernel(1.0, 0.1, 0.3).unwrap() - up).abs() < 1e-14);
        let down = d.kernel(1, 0.3, 2, 0.1).unwrap();
        let without: f64 = p[1]
            .left
            .iter()
            .zip(&p[0].right)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            + p[1]
                .resolved
                .iter()
                .zip(&p[0].back)
                .map(|(a, b)| a * b)
                .sum::<f64>();
        assert!((without - down).abs() < 1e-14);
    }

    #[test]
    fn one_time_value_is_stable_under_refinement() {
        let p = TacnodeParams::new(0.0, vec![0.0]).unwrap();
        let res = DomainComponent::split_half_line(0.0, HalfLine::default(), "R0", 0).unwrap();
        let a = TacnodeDirect::new(&p, &res, 40, 80)
            .unwrap()
            .kernel(1, 0.0, 1, 0.0)
            .unwrap();
        let b = TacnodeDirect::new(&p, &res, 80, 160)
            .unwrap()
            .kernel(1, 0.0, 1, 0.0)
            .unwrap();
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }
}
