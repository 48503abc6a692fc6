//! Gauss-Legendre rules on (0,1) and the maps that pull integration domains
//! back onto (0,1).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};

pub const MAX_NODES: usize = 512;
/// Default scale of the ray map `s + L t/(1-t)`.
pub const DEFAULT_RAY_SCALE: f64 = 4.0;
/// Length used when half-lines are truncated instead of mapped.
pub const DEFAULT_TRUNCATION: f64 = 12.0;

/// Gauss-Legendre nodes and weights on (0,1).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub m: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn legendre_dd(n: usize, x: Dd) -> (Dd, Dd) {
    let (mut p0, mut p1) = (Dd::ONE, x);
    for k in 1..n {
        let p2 = (x * p1 * (2 * k + 1) as f64 - p0 * k as f64) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = (x * p1 - p0) * n as f64 / (x.sqr() - 1.0);
    (p1, dp)
}

/// Roots of `P_m` in (-1, 0] (ascending), with their weights on [-1, 1].
fn lower_half(m: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(m.div_ceil(2));
    for i in 0..m.div_ceil(2) {
        // Chebyshev-angle guess for the i-th root counted from -1.
        let mut x = -((PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos());
        for _ in 0..100 {
            let (p, dp) = legendre(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1e-3) {
                break;
            }
        }
        if m % 2 == 1 && i == m / 2 {
            x = 0.0;
        }
        let (_, dp) = legendre(m, x);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn build_rule(m: usize) -> QuadratureRule {
    let half = lower_half(m);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for (i, &(x, w)) in half.iter().enumerate() {
        let t = 0.5 * (1.0 + x);
        nodes[i] = t;
        nodes[m - 1 - i] = 1.0 - t;
        weights[i] = 0.5 * w;
        weights[m - 1 - i] = 0.5 * w;
    }
    QuadratureRule { m, nodes, weights }
}

/// The m-point Gauss-Legendre rule on (0,1), `1 <= m <= 512`.
///
/// Rules are computed once and shared.
///
/// ```
/// let r = gapdet::quadrature::gauss_legendre(2).unwrap();
/// let exact: f64 = r.nodes.iter().zip(&r.weights).map(|(t, w)| w * t.powi(3)).sum();
/// assert!((exact - 0.25).abs() < 1e-15);
/// ```
pub fn gauss_legendre(m: usize) -> Result<Arc<QuadratureRule>> {
    if m == 0 || m > MAX_NODES {
        return Err(Error::argument(format!(
            "gauss_legendre: m = {m} outside [1, {MAX_NODES}]"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&m) {
        return Ok(r.clone());
    }
    let rule = Arc::new(build_rule(m));
    cache.lock().unwrap().insert(m, rule.clone());
    Ok(rule)
}

/// Gauss-Legendre rule on (0,1) in double-double.
#[derive(Debug, Clone)]
pub struct QuadratureRuleDd {
    pub m: usize,
    pub nodes: Vec<Dd>,
    pub weights: Vec<Dd>,
}

pub fn gauss_legendre_dd(m: usize) -> Result<Arc<QuadratureRuleDd>> {
    if m == 0 || m > MAX_NODES {
        return Err(Error::argument(format!(
            "gauss_legendre_dd: m = {m} outside [1, {MAX_NODES}]"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRuleDd>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&m) {
        return Ok(r.clone());
    }
    let mut nodes = vec![Dd::ZERO; m];
    let mut weights = vec![Dd::ZERO; m];
    for (i, (x0, _)) in lower_half(m).into_iter().enumerate() {
        let mut x = Dd::from_f64(x0);
        if !(m % 2 == 1 && i == m / 2) {
            for _ in 0..3 {
                let (p, dp) = legendre_dd(m, x);
                x -= p / dp;
            }
        }
        let (_, dp) = legendre_dd(m, x);
        let w = (Dd::ONE - x.sqr()) * dp.sqr();
        let w = Dd::ONE / w;
        let t = (x + 1.0) * 0.5;
        nodes[i] = t;
        nodes[m - 1 - i] = Dd::ONE - t;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    let rule = Arc::new(QuadratureRuleDd { m, nodes, weights });
    cache.lock().unwrap().insert(m, rule.clone());
    Ok(rule)
}

fn check_open(what: &'static str, s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(what, s, 0.0, 1.0))
    }
}

/// Right hyperbola `1/2 (A + 1/A) - i/2 (A - 1/A)` with `A = s/(1-s)`,
/// running from `e^{i pi/4} inf` to `e^{-i pi/4} inf`.
pub fn map_contour_right(s: f64) -> Result<(Complex64, Complex64)> {
    check_open("map_contour_right", s)?;
    let a = s / (1.0 - s);
    let b = (1.0 - s) / s;
    let da = 1.0 / ((1.0 - s) * (1.0 - s));
    let db = -1.0 / (s * s);
    Ok((
        Complex64::new(0.5 * (a + b), -0.5 * (a - b)),
        Complex64::new(0.5 * (da + db), -0.5 * (da - db)),
    ))
}

pub fn map_contour_left(s: f64) -> Result<(Complex64, Complex64)> {
    let (p, d) =
        map_contour_right(s).map_err(|_| Error::domain("map_contour_left", s, 0.0, 1.0))?;
    Ok((-p, -d))
}

/// The imaginary axis, `i tan(pi (s - 1/2))`, from `-i inf` to `+i inf`.
pub fn map_contour_imag(s: f64) -> Result<(Complex64, Complex64)> {
    check_open("map_contour_imag", s)?;
    let a = PI * (s - 0.5);
    let c = a.cos();
    Ok((
        Complex64::new(0.0, a.tan()),
        Complex64::new(0.0, PI / (c * c)),
    ))
}

/// An alternative parametrization of the imaginary axis,
/// `i (2s - 1)/(s (1 - s))`, used to cross-check the choice of map.
pub fn map_contour_imag_algebraic(s: f64) -> Result<(Complex64, Complex64)> {
    check_open("map_contour_imag_algebraic", s)?;
    let q = s * (1.0 - s);
    let v = (2.0 * s - 1.0) / q;
    let dv = (2.0 * q - (2.0 * s - 1.0) * (1.0 - 2.0 * s)) / (q * q);
    Ok((Complex64::new(0.0, v), Complex64::new(0.0, dv)))
}

/// `s_start + L t/(1-t)` and its derivative.
pub fn map_ray(s_start: f64, scale: f64, t: f64) -> Result<(f64, f64)> {
    check_open("map_ray", t)?;
    if !s_start.is_finite() || !(scale > 0.0) {
        return Err(Error::argument(format!(
            "map_ray: start {s_start}, scale {scale}"
        )));
    }
    let u = 1.0 - t;
    Ok((s_start + scale * t / u, scale / (u * u)))
}

/// How a half-line `[s, inf)` is discretized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HalfLine {
    /// Rational map onto (0,1) with the given scale.
    Mapped { scale: f64 },
    /// Plain interval `[s, s + length]`; for debugging.
    Truncated { length: f64 },
}

impl Default for HalfLine {
    fn default() -> Self {
        HalfLine::Mapped {
            scale: DEFAULT_RAY_SCALE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainKind {
    Finite { a: f64, b: f64 },
    Ray { start: f64, scale: f64 },
    ContourRight,
    ContourLeft,
    ContourImag,
    ContourImagAlgebraic,
}

/// Node factor for a finite stretch of length `len` on which Airy-type
/// integrands oscillate.
pub fn oscillatory_factor(len: f64) -> f64 {
    (0.5 + len / 12.0).clamp(0.5, 3.0)
}

/// One piece of an integration domain together with the kernel block it
/// belongs to.
///
/// `z` is the occupation weight of the piece: the column factor in the
/// discretized operator is `1 - z`, so `z = 0` is a plain gap and `z = 1`
/// removes the piece. `node_factor` scales the node count relative to the
/// base count used by the convergence loop.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainComponent {
    pub kind: DomainKind,
    pub label: String,
    pub block: usize,
    pub z: f64,
    pub node_factor: f64,
}

impl DomainComponent {
    fn new(kind: DomainKind, label: impl Into<String>, block: usize) -> Self {
        DomainComponent {
            kind,
            label: label.into(),
            block,
            z: 0.0,
            node_factor: 1.0,
        }
    }

    pub fn finite(a: f64, b: f64, label: impl Into<String>, block: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::argument(format!(
                "finite component needs a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self::new(DomainKind::Finite { a, b }, label, block))
    }

    pub fn ray(start: f64, scale: f64, label: impl Into<String>, block: usize) -> Result<Self> {
        if !start.is_finite() || !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::argument(format!(
                "ray needs finite start and L > 0, got {start}, {scale}"
            )));
        }
        Ok(Self::new(DomainKind::Ray { start, scale }, label, block))
    }

    /// `[start, inf)` discretized according to `mode`.
    pub fn half_line(
        start: f64,
        mode: HalfLine,
        label: impl Into<String>,
        block: usize,
    ) -> Result<Self> {
        match mode {
            HalfLine::Mapped { scale } => Self::ray(start, scale, label, block),
            HalfLine::Truncated { length } => Self::finite(start, start + length, label, block),
        }
    }

    /// `[start, inf)` as a finite oscillatory part `[start, 0]` plus a ray
    /// from 0 when `start < 0`. Airy-type integrands oscillate on the
    /// negative axis and are much better served by a plain interval there.
    pub fn split_half_line(
        start: f64,
        mode: HalfLine,
        label: &str,
        block: usize,
    ) -> Result<Vec<Self>> {
        if start >= 0.0 || matches!(mode, HalfLine::Truncated { .. }) {
            return Ok(vec![Self::half_line(start, mode, label, block)?]);
        }
        let head = Self::finite(start, 0.0, format!("{label}:head"), block)?
            .with_node_factor(oscillatory_factor(-start));
        let tail = Self::half_line(0.0, mode, format!("{label}:tail"), block)?;
        Ok(vec![head, tail])
    }

    pub fn contour(kind: DomainKind, label: impl Into<String>, block: usize) -> Result<Self> {
        match kind {
            DomainKind::Finite { .. } | DomainKind::Ray { .. } => {
                Err(Error::argument("contour() expects a contour kind"))
            }
            _ => Ok(Self::new(kind, label, block)),
        }
    }

    pub fn with_z(mut self, z: f64) -> Self {
        self.z = z;
        self
    }

    pub fn with_node_factor(mut self, f: f64) -> Self {
        self.node_factor = f;
        self
    }

    /// Node count for base count `m`.
    pub fn nodes(&self, m: usize) -> usize {
        ((m as f64 * self.node_factor).ceil() as usize).clamp(1, MAX_NODES)
    }

    pub fn is_real(&self) -> bool {
        matches!(
            self.kind,
            DomainKind::Finite { .. } | DomainKind::Ray { .. }
        )
    }

    /// Point and derivative of the map (0,1) -> domain.
    pub fn map(&self, t: f64) -> Result<(Complex64, Complex64)> {
        match self.kind {
            DomainKind::Finite { a, b } => {
                check_open("finite map", t)?;
                Ok((
                    Complex64::new(a + (b - a) * t, 0.0),
                    Complex64::new(b - a, 0.0),
                ))
            }
            DomainKind::Ray { start, scale } => {
                let (x, d) = map_ray(start, scale, t)?;
                Ok((Complex64::new(x, 0.0), Complex64::new(d, 0.0)))
            }
            DomainKind::ContourRight => map_contour_right(t),
            DomainKind::ContourLeft => map_contour_left(t),
            DomainKind::ContourImag => map_contour_imag(t),
            DomainKind::ContourImagAlgebraic => map_contour_imag_algebraic(t),
        }
    }

    /// Double-double map; real components only.
    pub fn map_dd(&self, t: Dd) -> Result<(Dd, Dd)> {
        match self.kind {
            DomainKind::Finite { a, b } => {
                let len = Dd::from_f64(b) - a;
                Ok((len * t + a, len))
            }
            DomainKind::Ray { start, scale } => {
                let u = Dd::ONE - t;
                Ok((t / u * scale + start, Dd::from_f64(scale) / u.sqr()))
            }
            _ => Err(Error::argument(format!(
                "component {} is not real",
                self.label
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_order_rules() {
        let r = gauss_legendre(1).unwrap();
        assert_eq!(r.nodes, vec![0.5]);
        assert_eq!(r.weights, vec![1.0]);
        let r = gauss_legendre(2).unwrap();
        let d = 0.5 / 3f64.sqrt();
        assert!((r.nodes[0] - (0.5 - d)).abs() < 1e-15);
        assert!((r.nodes[1] - (0.5 + d)).abs() < 1e-15);
        assert!((r.weights[0] - 0.5).abs() < 1e-15 && (r.weights[1] - 0.5).abs() < 1e-15);
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(513).is_err());
    }

    #[test]
    fn rule_invariants() {
        for m in [3, 7, 40, 64, 160, 512] {
            let r = gauss_legendre(m).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - 1.0).abs() < 1e-14, "m = {m}: {s}");
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for i in 0..m {
                assert!((r.nodes[i] + r.nodes[m - 1 - i] - 1.0).abs() < 1e-14);
                if i > 0 {
                    assert!(r.nodes[i] > r.nodes[i - 1]);
                }
            }
            assert!(r.nodes[0] > 0.0 && r.nodes[m - 1] < 1.0);
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2m_minus_1() {
        for m in [2, 8, 32, 64] {
            let r = gauss_legendre(m).unwrap();
            for k in 0..2 * m {
                let q: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(t, w)| w * t.powi(k as i32))
                    .sum();
                assert!((q - 1.0 / (k + 1) as f64).abs() < 1e-13, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn extended_rule_refines_the_f64_rule() {
        let r = gauss_legendre(50).unwrap();
        let d = gauss_legendre_dd(50).unwrap();
        for i in 0..50 {
            assert!((d.nodes[i].to_f64() - r.nodes[i]).abs() < 1e-15);
            assert!((d.weights[i].to_f64() - r.weights[i]).abs() < 1e-15);
        }
        let s: Dd = d.weights.iter().copied().sum();
        assert!((s - 1.0).abs().to_f64() < 1e-30);
        // t^99 integrates exactly
        let q: Dd = d
            .nodes
            .iter()
            .zip(&d.weights)
            .map(|(t, w)| *w * t.powi(99))
            .sum();
        assert!((q - Dd::ONE / 100.0).abs().to_f64() < 1e-30);
    }

    #[test]
    fn contour_points() {
        let (p, _) = map_contour_right(0.5).unwrap();
        assert_eq!(p, Complex64::new(1.0, 0.0));
        let (p, _) = map_contour_left(0.5).unwrap();
        assert_eq!(p, Complex64::new(-1.0, 0.0));
        let (p, _) = map_contour_right(1.0 - 1e-9).unwrap();
        assert!((p.arg() + PI / 4.0).abs() < 1e-6);
        let (r, _) = map_contour_right(0.3).unwrap();
        let (l, _) = map_contour_left(0.3).unwrap();
        assert_eq!(r + l, Complex64::new(0.0, 0.0));
        let (p, _) = map_contour_imag(0.5).unwrap();
        assert_eq!(p, Complex64::new(0.0, 0.0));
        let (p, _) = map_contour_imag(0.75).unwrap();
        assert!((p - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let (a, _) = map_contour_imag(0.3).unwrap();
        let (b, _) = map_contour_imag(0.7).unwrap();
        assert!((a + b).norm() < 1e-15);
    }

    #[test]
    fn hyperbolas_stay_off_the_imaginary_axis() {
        let mut min_r = f64::INFINITY;
        let mut max_l = f64::NEG_INFINITY;
        for k in 1..10_000 {
            let s = k as f64 / 10_000.0;
            min_r = min_r.min(map_contour_right(s).unwrap().0.re);
            max_l = max_l.max(map_contour_left(s).unwrap().0.re);
            assert_eq!(map_contour_imag(s).unwrap().0.re, 0.0);
            assert_eq!(map_contour_imag_algebraic(s).unwrap().0.re, 0.0);
        }
        assert!(min_r >= 1.0 - 1e-15);
        assert!(max_l <= -1.0 + 1e-15);
    }

    #[test]
    fn endpoints_are_rejected() {
        for s in [0.0, 1.0] {
            assert!(map_contour_right(s).is_err());
            assert!(map_contour_left(s).is_err());
            assert!(map_contour_imag(s).is_err());
            assert!(map_ray(0.0, 4.0, s).is_err());
        }
        assert!(DomainComponent::finite(1.0, 1.0, "e", 0).is_err());
        assert!(DomainComponent::ray(0.0, 0.0, "r", 0).is_err());
    }

    #[test]
    fn analytic_derivatives_match_central_differences() {
        let comps = [
            DomainKind::Finite { a: -1.0, b: 2.5 },
            DomainKind::Ray {
                start: -2.0,
                scale: 4.0,
            },
            DomainKind::ContourRight,
            DomainKind::ContourLeft,
            DomainKind::ContourImag,
            DomainKind::ContourImagAlgebraic,
        ];
        let h = 1e-6;
        for kind in comps {
            let c = DomainComponent::new(kind, "c", 0);
            for k in 1..=20 {
                let t = k as f64 / 21.0;
                let (_, d) = c.map(t).unwrap();
                let fd = (c.map(t + h).unwrap().0 - c.map(t - h).unwrap().0) / (2.0 * h);
                assert!((fd - d).norm() <= 1e-6 * d.norm(), "{kind:?} at {t}");
                assert!(d.norm() > 0.0);
            }
        }
    }

    #[test]
    fn ray_map_values_and_exponential_integral() {
        let (x, d) = map_ray(1.5, 4.0, 0.5).unwrap();
        assert_eq!((x, d), (5.5, 16.0));
        let (x, _) = map_ray(1.5, 4.0, 1e-12).unwrap();
        assert!((x - 1.5).abs() < 1e-10);
        let r = gauss_legendre(40).unwrap();
        let q: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(&t, w)| {
                let (x, d) = map_ray(0.0, 4.0, t).unwrap();
                w * d * (-x).exp()
            })
            .sum();
        assert!((q - 1.0).abs() < 1e-8, "{q}");
    }

    #[test]
    fn dd_maps_agree_with_f64_maps() {
        let c = DomainComponent::ray(-1.25, 4.0, "r", 0).unwrap();
        let (x, d) = c.map_dd(Dd::from_f64(0.3)).unwrap();
        let (y, e) = c.map(0.3).unwrap();
        assert_relative_eq!(x.to_f64(), y.re, max_relative = 1e-15);
        assert_relative_eq!(d.to_f64(), e.re, max_relative = 1e-15);
    }

    #[test]
    fn split_half_line_covers_the_same_set() {
        let parts = DomainComponent::split_half_line(-6.0, HalfLine::default(), "R0", 1).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].kind, DomainKind::Finite { a: -6.0, b: 0.0 });
        assert_eq!(
            parts[1].kind,
            DomainKind::Ray {
                start: 0.0,
                scale: 4.0
            }
        );
        let parts = DomainComponent::split_half_line(1.0, HalfLine::default(), "R0", 1).unwrap();
        assert_eq!(parts.len(), 1);
    }
}
