//! Helpers for data sampled on 1-D grids: natural cubic spline interpolation
//! with exact per-segment integrals, and Fornberg finite-difference weights
//! for derivatives on (possibly non-uniform) grids.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid needs at least {need} points (got {got})")]
    TooFewPoints { need: usize, got: usize },
    #[error("grid abscissae must be strictly increasing (violated at index {index})")]
    NotIncreasing { index: usize },
    #[error("grid and value lengths differ ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("grid contains a non-finite entry at index {index}")]
    NonFinite { index: usize },
}

pub fn validate_grid(x: &[f64]) -> Result<(), GridError> {
    if x.len() < 2 {
        return Err(GridError::TooFewPoints { need: 2, got: x.len() });
    }
    for (i, w) in x.windows(2).enumerate() {
        if !w[0].is_finite() || !w[1].is_finite() {
            return Err(GridError::NonFinite { index: i });
        }
        if w[1] <= w[0] {
            return Err(GridError::NotIncreasing { index: i + 1 });
        }
    }
    Ok(())
}

/// Natural cubic spline through `(x[i], y[i])`. Evaluates to zero outside the
/// knot range (all users interpolate functions that decay to ~0 at the grid
/// ends, which the callers validate).
#[derive(Clone, Debug)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self, GridError> {
        validate_grid(x)?;
        if x.len() != y.len() {
            return Err(GridError::LengthMismatch { x: x.len(), y: y.len() });
        }
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(GridError::NonFinite { index: i });
        }
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas solve of the natural-spline tridiagonal system.
            let rows = n - 2;
            let mut diag = vec![0.0; rows];
            let mut upper = vec![0.0; rows];
            let mut rhs = vec![0.0; rows];
            for i in 0..rows {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                diag[i] = (h0 + h1) / 3.0;
                upper[i] = h1 / 6.0;
                rhs[i] = (y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0;
            }
            for i in 1..rows {
                let h0 = x[i + 1] - x[i];
                let lower = h0 / 6.0;
                let w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[rows] = rhs[rows - 1] / diag[rows - 1];
            for i in (1..rows).rev() {
                m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
            }
        }
        Ok(CubicSpline { x: x.to_vec(), y: y.to_vec(), m })
    }

    fn segment(&self, x: f64) -> usize {
        let n = self.x.len();
        self.x.partition_point(|&t| t <= x).clamp(1, n - 1) - 1
    }

    pub fn eval(&self, at: f64) -> f64 {
        let n = self.x.len();
        if at < self.x[0] || at > self.x[n - 1] {
            return 0.0;
        }
        let i = self.segment(at);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - at) / h;
        let b = (at - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    /// Exact integral of the spline over its full knot range.
    pub fn integral(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.x.len() - 1 {
            let h = self.x[i + 1] - self.x[i];
            acc += 0.5 * h * (self.y[i] + self.y[i + 1])
                - h * h * h * (self.m[i] + self.m[i + 1]) / 24.0;
        }
        acc
    }

    pub fn knot_range(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }
}

/// Complex-valued spline: independent natural splines for the real and
/// imaginary parts.
#[derive(Clone, Debug)]
pub struct ComplexSpline {
    re: CubicSpline,
    im: CubicSpline,
}

impl ComplexSpline {
    pub fn new(x: &[f64], values: &[Complex64]) -> Result<Self, GridError> {
        let re: Vec<f64> = values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = values.iter().map(|v| v.im).collect();
        Ok(ComplexSpline { re: CubicSpline::new(x, &re)?, im: CubicSpline::new(x, &im)? })
    }

    pub fn eval(&self, at: f64) -> Complex64 {
        Complex64::new(self.re.eval(at), self.im.eval(at))
    }

    pub fn integral(&self) -> Complex64 {
        Complex64::new(self.re.integral(), self.im.integral())
    }

    pub fn knot_range(&self) -> (f64, f64) {
        self.re.knot_range()
    }
}

/// Integral of sampled complex data over its grid (spline-accurate, O(h^4)
/// on smooth data).
pub fn integrate_sampled(x: &[f64], values: &[Complex64]) -> Result<Complex64, GridError> {
    Ok(ComplexSpline::new(x, values)?.integral())
}

/// Composite Simpson integral on a uniform grid (1/3 rule, with one 3/8
/// panel absorbing an even interval count). Unlike the natural spline it
/// carries no end-condition boundary layer, so it is preferred when the
/// integrand has curvature at a grid end.
pub fn integrate_sampled_simpson(x: &[f64], values: &[Complex64]) -> Result<Complex64, GridError> {
    validate_grid(x)?;
    if x.len() != values.len() {
        return Err(GridError::LengthMismatch { x: x.len(), y: values.len() });
    }
    let n = x.len();
    if n < 4 {
        return Err(GridError::TooFewPoints { need: 4, got: n });
    }
    let h = (x[n - 1] - x[0]) / (n - 1) as f64;
    for (i, w) in x.windows(2).enumerate() {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs() {
            return Err(GridError::NotIncreasing { index: i + 1 });
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let intervals = n - 1;
    // Odd interval count: lead with a 3/8 panel over the first three cells.
    let start = if intervals % 2 == 1 {
        acc += (values[0] + 3.0 * values[1] + 3.0 * values[2] + values[3]) * (3.0 * h / 8.0);
        3
    } else {
        0
    };
    let mut i = start;
    while i + 2 < n {
        acc += (values[i] + 4.0 * values[i + 1] + values[i + 2]) * (h / 3.0);
        i += 2;
    }
    Ok(acc)
}

/// Fornberg weights for the `m`-th derivative at `z` from the nodes `xs`.
/// Exact for polynomials up to degree `xs.len() - 1`.
pub fn fornberg_weights(z: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(n > m, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// First derivative of sampled complex data: five-point stencils in the
/// interior (fourth order on uniform grids), three-point one-sided stencils
/// (second order) at the two points nearest each end.
pub fn gradient_on_grid(x: &[f64], values: &[Complex64]) -> Result<Vec<Complex64>, GridError> {
    validate_grid(x)?;
    if x.len() != values.len() {
        return Err(GridError::LengthMismatch { x: x.len(), y: values.len() });
    }
    let n = x.len();
    if n < 5 {
        return Err(GridError::TooFewPoints { need: 5, got: n });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let (lo, stencil): (usize, &[f64]) = if i < 2 {
            (0, &x[0..3])
        } else if i >= n - 2 {
            (n - 3, &x[n - 3..n])
        } else {
            (i - 2, &x[i - 2..i + 3])
        };
        let w = fornberg_weights(x[i], stencil, 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &wk) in w.iter().enumerate() {
            acc += wk * values[lo + k];
        }
        out[i] = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn spline_interpolates_sine() {
        let x = uniform(0.0, 6.0, 301);
        let y: Vec<f64> = x.iter().map(|t| t.sin()).collect();
        let s = CubicSpline::new(&x, &y).unwrap();
        // Natural boundary conditions cost O(h^2) in a layer near the ends
        // (harmless in production: every interpolated function decays to ~0
        // there); check fourth-order accuracy in the interior.
        let mut worst = 0.0f64;
        for i in 0..1000 {
            let t = 0.5 + 5.0 * i as f64 / 999.0;
            worst = worst.max((s.eval(t) - t.sin()).abs());
        }
        assert!(worst < 1e-7, "spline sup error {worst}");
    }

    #[test]
    fn spline_integral_of_gaussian() {
        let x = uniform(-10.0, 10.0, 2001);
        let y: Vec<f64> = x.iter().map(|t| (-0.5 * t * t).exp()).collect();
        let s = CubicSpline::new(&x, &y).unwrap();
        let exact = (2.0 * std::f64::consts::PI).sqrt();
        assert!((s.integral() - exact).abs() < 1e-10);
    }

    #[test]
    fn spline_zero_outside_range() {
        let x = uniform(0.0, 1.0, 16);
        let y = vec![1.0; 16];
        let s = CubicSpline::new(&x, &y).unwrap();
        assert_eq!(s.eval(-0.1), 0.0);
        assert_eq!(s.eval(1.1), 0.0);
    }

    #[test]
    fn fornberg_reproduces_central_difference() {
        let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let w = fornberg_weights(0.0, &xs, 1);
        let expect = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn gradient_fourth_order_interior() {
        let run = |n: usize| {
            let x = uniform(0.0, 2.0, n);
            let v: Vec<Complex64> =
                x.iter().map(|t| Complex64::new(t.exp(), (2.0 * t).sin())).collect();
            let g = gradient_on_grid(&x, &v).unwrap();
            let mut worst = 0.0f64;
            for i in 5..n - 5 {
                let exact = Complex64::new(x[i].exp(), 2.0 * (2.0 * x[i]).cos());
                worst = worst.max((g[i] - exact).norm());
            }
            worst
        };
        let e1 = run(101);
        let e2 = run(201);
        let order = (e1 / e2).log2();
        assert!(order > 3.5, "interior stencil order {order}");
    }

    #[test]
    fn grid_validation_errors() {
        assert!(matches!(validate_grid(&[0.0]), Err(GridError::TooFewPoints { .. })));
        assert!(matches!(validate_grid(&[0.0, 0.0]), Err(GridError::NotIncreasing { .. })));
        assert!(matches!(validate_grid(&[0.0, f64::NAN]), Err(GridError::NonFinite { .. })));
        assert!(CubicSpline::new(&[0.0, 1.0], &[1.0]).is_err());
    }
}
