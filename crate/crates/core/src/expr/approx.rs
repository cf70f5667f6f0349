//! Polynomial approximants on a compact interval.
//!
//! Both bases are evaluated without ever forming monomial coefficients, so
//! degrees in the tens of thousands stay well conditioned.

use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::{eval, Expr};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `sum c_k C(d,k) t^k (1-t)^(d-k)` with `t = (x-lo)/(hi-lo)`.
    Bernstein,
    /// `sum c_k T_k(s)` with `s = (2x-lo-hi)/(hi-lo)`.
    Chebyshev,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub basis: Basis,
    pub lo: f64,
    pub hi: f64,
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.basis {
            Basis::Bernstein => bernstein_eval(&self.coeffs, (x - self.lo) / (self.hi - self.lo)),
            Basis::Chebyshev => clenshaw(&self.coeffs, (2.0 * x - self.lo - self.hi) / (self.hi - self.lo)),
        }
    }

    pub fn derivative(&self) -> Polynomial {
        let width = self.hi - self.lo;
        let coeffs = match self.basis {
            Basis::Bernstein => {
                let d = self.degree();
                if d == 0 {
                    vec![0.0]
                } else {
                    let scale = d as f64 / width;
                    self.coeffs.windows(2).map(|w| scale * (w[1] - w[0])).collect()
                }
            }
            Basis::Chebyshev => chebyshev_derivative(&self.coeffs, 2.0 / width),
        };
        Polynomial {
            coeffs,
            ..self.clone()
        }
    }

    /// The derivative as an expression; exactly zero when it vanishes.
    pub(crate) fn derivative_expr(&self) -> Expr {
        let d = self.derivative();
        if d.is_zero() {
            Expr::zero()
        } else {
            Expr::Poly(Arc::new(d))
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.basis {
            Basis::Bernstein => "bernstein",
            Basis::Chebyshev => "chebyshev",
        };
        write!(f, "{kind}<deg {} on [{}, {}]>", self.degree(), self.lo, self.hi)
    }
}

/// Degree-`degree` Bernstein polynomial of `f` (with `n` fixed) on `[a, b]`.
pub fn bernstein_approx(f: &Expr, n: u64, a: f64, b: f64, degree: usize) -> Result<Expr> {
    check_interval(a, b)?;
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "Bernstein degree must be at least 1".into(),
        ));
    }
    Ok(Expr::Poly(Arc::new(bernstein_poly(f, n, a, b, degree)?)))
}

pub(crate) fn bernstein_poly(f: &Expr, n: u64, a: f64, b: f64, degree: usize) -> Result<Polynomial> {
    let d = degree as f64;
    let coeffs = (0..=degree)
        .map(|k| {
            let node = if k == degree {
                b
            } else {
                a + (b - a) * (k as f64 / d)
            };
            eval(f, node, n)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial {
        basis: Basis::Bernstein,
        lo: a,
        hi: b,
        coeffs,
    })
}

/// Chebyshev interpolant of `f` (with `n` fixed) on `[a, b]`, sampled at
/// doubling numbers of Chebyshev extreme points until the trailing
/// coefficients fall below `1e-13` relative to the sampled magnitude (plus an
/// absolute floor of `1e-15`). Returns `None` when `max_degree` is reached
/// without resolving `f`.
pub fn chebyshev_approx(f: &Expr, n: u64, a: f64, b: f64, max_degree: usize) -> Result<Option<Polynomial>> {
    check_interval(a, b)?;
    let max_degree = max_degree.max(1);
    let mut points = 16.min(max_degree);
    let mut planner = FftPlanner::new();
    loop {
        let samples = (0..=points)
            .map(|j| {
                let s = (std::f64::consts::PI * j as f64 / points as f64).cos();
                eval(f, 0.5 * (a + b) + 0.5 * (b - a) * s, n)
            })
            .collect::<Result<Vec<_>>>()?;
        let coeffs = chebyshev_coefficients(&samples, &mut planner);
        let vscale = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let threshold = 1e-13 * vscale + 1e-15;
        let tail = ((points + 1) / 8).max(2);
        if coeffs[coeffs.len() - tail..].iter().all(|c| c.abs() <= threshold) {
            let keep = coeffs
                .iter()
                .rposition(|c| c.abs() > threshold)
                .map_or(1, |k| k + 1);
            let coeffs = coeffs[..keep].to_vec();
            return Ok(Some(Polynomial {
                basis: Basis::Chebyshev,
                lo: a,
                hi: b,
                coeffs,
            }));
        }
        if points >= max_degree {
            return Ok(None);
        }
        points = (points * 2).min(max_degree);
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a < b && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "interval [{a}, {b}] must satisfy a < b"
        )))
    }
}

/// Coefficients of the degree-N interpolant through values at
/// `cos(j pi / N)`, `j = 0..=N`, via a length-2N FFT (a DCT-I).
fn chebyshev_coefficients(values: &[f64], planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let n = values.len() - 1;
    if n == 0 {
        return vec![values[0]];
    }
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(2 * n);
    buf.extend(values.iter().map(|&v| Complex::new(v, 0.0)));
    buf.extend(values[1..n].iter().rev().map(|&v| Complex::new(v, 0.0)));
    planner.plan_fft_forward(2 * n).process(&mut buf);
    (0..=n)
        .map(|k| {
            let scale = if k == 0 || k == n {
                2.0 * n as f64
            } else {
                n as f64
            };
            buf[k].re / scale
        })
        .collect()
}

fn clenshaw(c: &[f64], s: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * s * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + s * b1 - b2
}

fn chebyshev_derivative(c: &[f64], scale: f64) -> Vec<f64> {
    let m = c.len() - 1;
    if m == 0 {
        return vec![0.0];
    }
    let mut d = vec![0.0; m + 2];
    for k in (1..=m).rev() {
        d[k - 1] = d[k + 1] + 2.0 * k as f64 * c[k];
    }
    d[0] /= 2.0;
    d.truncate(m);
    d.iter_mut().for_each(|v| *v *= scale);
    d
}

/// Evaluates `sum c_k b_{k,d}(t)`. Inside `[0, 1]` the basis weights are
/// the binomial probabilities, generated outward from the mode by their ratio
/// recurrence and normalised by their sum; outside, de Casteljau.
fn bernstein_eval(c: &[f64], t: f64) -> f64 {
    let d = c.len() - 1;
    if d == 0 {
        return c[0];
    }
    if !(0.0..=1.0).contains(&t) {
        return de_casteljau(c, t);
    }
    if t == 0.0 {
        return c[0];
    }
    if t == 1.0 {
        return c[d];
    }
    let odds = t / (1.0 - t);
    let mode = (((d + 1) as f64 * t).floor() as usize).min(d);
    let (mut sum_w, mut sum_wc) = (1.0, c[mode]);
    let mut w = 1.0;
    for k in mode..d {
        w *= (d - k) as f64 / (k + 1) as f64 * odds;
        if w < 1e-18 {
            break;
        }
        sum_w += w;
        sum_wc += w * c[k + 1];
    }
    w = 1.0;
    for k in (1..=mode).rev() {
        w *= k as f64 / (d - k + 1) as f64 / odds;
        if w < 1e-18 {
            break;
        }
        sum_w += w;
        sum_wc += w * c[k - 1];
    }
    sum_wc / sum_w
}

fn de_casteljau(c: &[f64], t: f64) -> f64 {
    let mut b = c.to_vec();
    for r in 1..b.len() {
        for k in 0..b.len() - r {
            b[k] = (1.0 - t) * b[k] + t * b[k + 1];
        }
    }
    b[0]
}
