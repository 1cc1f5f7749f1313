use crate::error::{Error, Result};

/// Largest number of panels either rule refines to before giving up.
const PANEL_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMethod {
    CompositeSimpson,
    GaussLegendre,
}

impl QuadratureMethod {
    pub fn name(self) -> &'static str {
        match self {
            QuadratureMethod::CompositeSimpson => "composite-simpson",
            QuadratureMethod::GaussLegendre => "gauss-legendre",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "composite-simpson" | "simpson" => Some(QuadratureMethod::CompositeSimpson),
            "gauss-legendre" | "gauss" => Some(QuadratureMethod::GaussLegendre),
            _ => None,
        }
    }
}

/// How a definite integral is computed.
///
/// For composite Simpson `panels_or_nodes` is the starting node count (an
/// even interval count is enforced by rounding up). For Gauss–Legendre it is
/// the number of nodes per panel, starting from a single panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    pub panels_or_nodes: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            method: QuadratureMethod::CompositeSimpson,
            panels_or_nodes: 4001,
            rel_tol: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn new(method: QuadratureMethod, panels_or_nodes: usize, rel_tol: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            method,
            panels_or_nodes,
            rel_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.panels_or_nodes < 8 {
            return Err(Error::Validation(format!(
                "quadrature panels_or_nodes must be >= 8, got {}",
                self.panels_or_nodes
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::Validation(format!(
                "quadrature rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }

    /// Same rule with a different tolerance, for oracles that need more digits.
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        QuadratureSpec { rel_tol, ..self }
    }
}

/// Definite integral of `f` over `[a, b]`.
///
/// The rule is refined by doubling until two successive estimates agree to
/// `rel_tol`, measured against the integral of `|f|` so that integrals which
/// cancel to zero still terminate. The returned value carries the
/// Richardson correction from the last pair of estimates.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(a < b) {
        return Err(Error::domain(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    spec.validate()?;
    match spec.method {
        QuadratureMethod::CompositeSimpson => simpson(&f, a, b, spec),
        QuadratureMethod::GaussLegendre => gauss_legendre(&f, a, b, spec),
    }
}

fn converged(coarse: f64, fine: f64, scale: f64, rel_tol: f64) -> bool {
    (fine - coarse).abs() <= rel_tol * scale
}

fn check_finite(v: f64, a: f64, b: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("integrand is not finite on [{a}, {b}]")))
    }
}

// Sums are kept split as endpoints / even interior / odd interior nodes so a
// refinement only evaluates the new midpoints.
struct SimpsonState {
    n: usize,
    ends: f64,
    even: f64,
    odd: f64,
    ends_abs: f64,
    even_abs: f64,
    odd_abs: f64,
}

impl SimpsonState {
    fn value(&self, h: f64) -> (f64, f64) {
        let v = h / 3.0 * (self.ends + 2.0 * self.even + 4.0 * self.odd);
        let s = h / 3.0 * (self.ends_abs + 2.0 * self.even_abs + 4.0 * self.odd_abs);
        (v, s)
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut n = spec.panels_or_nodes.saturating_sub(1).max(2);
    if n % 2 == 1 {
        n += 1;
    }
    let h = (b - a) / n as f64;
    let (fa, fb) = (f(a), f(b));
    let mut st = SimpsonState {
        n,
        ends: fa + fb,
        even: 0.0,
        odd: 0.0,
        ends_abs: fa.abs() + fb.abs(),
        even_abs: 0.0,
        odd_abs: 0.0,
    };
    for i in 1..n {
        let v = f(a + i as f64 * h);
        if i % 2 == 0 {
            st.even += v;
            st.even_abs += v.abs();
        } else {
            st.odd += v;
            st.odd_abs += v.abs();
        }
    }
    let (mut coarse, _) = st.value(h);
    check_finite(coarse, a, b)?;

    loop {
        // Old nodes all become even nodes; the new midpoints are the odd ones.
        let n2 = st.n * 2;
        let h2 = (b - a) / n2 as f64;
        st.even += st.odd;
        st.even_abs += st.odd_abs;
        st.odd = 0.0;
        st.odd_abs = 0.0;
        for i in (1..n2).step_by(2) {
            let v = f(a + i as f64 * h2);
            st.odd += v;
            st.odd_abs += v.abs();
        }
        st.n = n2;
        let (fine, scale) = st.value(h2);
        check_finite(fine, a, b)?;
        if converged(coarse, fine, scale, 15.0 * spec.rel_tol) {
            return Ok(fine + (fine - coarse) / 15.0);
        }
        if n2 >= PANEL_CAP {
            return Err(Error::NoConvergence {
                a,
                b,
                panels: n2,
                estimate: fine,
                error: (fine - coarse).abs() / 15.0,
            });
        }
        coarse = fine;
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let j = j as f64;
                let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let n = spec.panels_or_nodes;
    let (nodes, weights) = gauss_legendre_rule(n);
    let composite = |panels: usize| -> (f64, f64) {
        let w = (b - a) / panels as f64;
        let (mut sum, mut abs) = (0.0, 0.0);
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * w;
            for (x, wt) in nodes.iter().zip(&weights) {
                let v = f(mid + 0.5 * w * x);
                sum += wt * v;
                abs += wt * v.abs();
            }
        }
        (0.5 * w * sum, 0.5 * w * abs)
    };
    let mut panels = 1;
    let (mut coarse, _) = composite(panels);
    check_finite(coarse, a, b)?;
    loop {
        panels *= 2;
        let (fine, scale) = composite(panels);
        check_finite(fine, a, b)?;
        if converged(coarse, fine, scale, spec.rel_tol) {
            return Ok(fine);
        }
        if panels >= PANEL_CAP / n.max(1) {
            return Err(Error::NoConvergence {
                a,
                b,
                panels,
                estimate: fine,
                error: (fine - coarse).abs(),
            });
        }
        coarse = fine;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn specs() -> [QuadratureSpec; 2] {
        [
            QuadratureSpec::default(),
            QuadratureSpec::new(QuadratureMethod::GaussLegendre, 16, 1e-12).unwrap(),
        ]
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn square_on_unit_interval() {
        for s in specs() {
            let v = integrate(|x| x * x, 0.0, 1.0, &s).unwrap();
            assert!(close(v, 1.0 / 3.0, 1e-12), "{:?}: {v}", s.method);
        }
    }

    #[test]
    fn decaying_exponential() {
        for s in specs() {
            let v = integrate(|x| (-x).exp(), 0.0, 2.0, &s).unwrap();
            assert!(close(v, 1.0 - (-2.0f64).exp(), 1e-9), "{:?}: {v}", s.method);
        }
    }

    #[test]
    fn oscillatory_integrands() {
        for s in specs() {
            // Even frequency, whole periods: exact value is zero.
            let v = integrate(|x| (50.0 * x).sin(), 0.0, PI, &s).unwrap();
            assert!(v.abs() < 1e-9, "{:?}: {v}", s.method);
            let v = integrate(|x| (49.0 * x).sin(), 0.0, PI, &s).unwrap();
            assert!(close(v, 2.0 / 49.0, 1e-8), "{:?}: {v}", s.method);
        }
    }

    #[test]
    fn gauss_is_exact_for_degree_2n_minus_1() {
        let s = QuadratureSpec::new(QuadratureMethod::GaussLegendre, 8, 1e-12).unwrap();
        let p = |x: f64| 3.0 * x.powi(15) - x.powi(10) + 2.0 * x.powi(3) + 1.0;
        let exact = |x: f64| 3.0 / 16.0 * x.powi(16) - x.powi(11) / 11.0 + 0.5 * x.powi(4) + x;
        let v = integrate(p, -0.5, 1.25, &s).unwrap();
        assert!(close(v, exact(1.25) - exact(-0.5), 1e-13));
    }

    #[test]
    fn rule_weights_sum_to_two() {
        for n in [8, 9, 16, 33] {
            let (x, w) = gauss_legendre_rule(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn additive_over_subintervals() {
        let f = |x: f64| (3.0 * x).cos() * (-x * x).exp();
        for s in specs() {
            let s = s.with_rel_tol(1e-13);
            let whole = integrate(f, -1.0, 2.0, &s).unwrap();
            let parts = integrate(f, -1.0, 0.3, &s).unwrap() + integrate(f, 0.3, 2.0, &s).unwrap();
            assert!((whole - parts).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_specs_and_bounds() {
        assert!(QuadratureSpec::new(QuadratureMethod::CompositeSimpson, 7, 1e-9).is_err());
        assert!(QuadratureSpec::new(QuadratureMethod::CompositeSimpson, 9, 0.0).is_err());
        assert!(QuadratureSpec::new(QuadratureMethod::CompositeSimpson, 9, 1e-2).is_err());
        assert!(integrate(|x| x, 1.0, 1.0, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn singular_integrand_fails() {
        let s = QuadratureSpec::new(QuadratureMethod::CompositeSimpson, 9, 1e-10).unwrap();
        match integrate(|x| 1.0 / x.sqrt(), 1e-300, 1.0, &s) {
            Err(Error::NoConvergence { .. }) | Err(Error::Domain(_)) => {}
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
