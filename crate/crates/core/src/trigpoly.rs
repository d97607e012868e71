//! Raked trigonometric polynomials
//!
//! ```text
//! f(t) = c + Σ_{j=1..k} a_j cos((2j-1)t) + b_j sin((2j-1)t)
//! ```
//!
//! and their complex counterparts `p(z) = z^(2k-1) f(z)` under `z = e^{it}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients `(c; a_1..a_k; b_1..b_k)` of a raked trigonometric polynomial
/// of degree at most `2k - 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoly")]
pub struct RakedTrigPoly {
    k: usize,
    c: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPoly {
    k: usize,
    c: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawPoly> for RakedTrigPoly {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Self> {
        if raw.a.len() != raw.k || raw.b.len() != raw.k {
            return Err(Error::InvalidInput(format!(
                "k = {} but |a| = {}, |b| = {}",
                raw.k,
                raw.a.len(),
                raw.b.len()
            )));
        }
        RakedTrigPoly::new(raw.c, raw.a, raw.b)
    }
}

/// Harmonic number `2j - 1` of the `j`-th coefficient (1-based).
#[inline]
pub fn harmonic(j: usize) -> f64 {
    (2 * j - 1) as f64
}

/// `(d/dt)^order` of `(cos nt, sin nt)` expressed in the same basis:
/// returns `(cc, cs, sc, ss)` with
/// `D cos = cc cos + cs sin` and `D sin = sc cos + ss sin`, excluding the `n^order` factor.
#[inline]
fn rotation(order: usize) -> (f64, f64, f64, f64) {
    match order % 4 {
        0 => (1.0, 0.0, 0.0, 1.0),
        1 => (0.0, -1.0, 1.0, 0.0),
        2 => (-1.0, 0.0, 0.0, -1.0),
        _ => (0.0, 1.0, -1.0, 0.0),
    }
}

impl RakedTrigPoly {
    pub fn new(c: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::InvalidInput(format!(
                "need |a| = |b| = k >= 1, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if !(c.is_finite() && a.iter().chain(&b).all(|x| x.is_finite())) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        Ok(RakedTrigPoly { k: a.len(), c, a, b })
    }

    pub fn zero(k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        RakedTrigPoly {
            k,
            c: 0.0,
            a: vec![0.0; k],
            b: vec![0.0; k],
        }
    }

    pub fn constant(k: usize, c: f64) -> Self {
        let mut f = Self::zero(k);
        f.c = c;
        f
    }

    /// `coef * cos((2j-1) t)` in the degree-`(2k-1)` space.
    pub fn cosine(k: usize, j: usize, coef: f64) -> Self {
        let mut f = Self::zero(k);
        f.a[j - 1] = coef;
        f
    }

    /// `coef * sin((2j-1) t)` in the degree-`(2k-1)` space.
    pub fn sine(k: usize, j: usize, coef: f64) -> Self {
        let mut f = Self::zero(k);
        f.b[j - 1] = coef;
        f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Highest odd harmonic with a nonzero coefficient; 0 for constants.
    pub fn degree(&self) -> usize {
        (1..=self.k)
            .rev()
            .find(|&j| self.a[j - 1] != 0.0 || self.b[j - 1] != 0.0)
            .map_or(0, |j| 2 * j - 1)
    }

    /// Largest absolute coefficient.
    pub fn coefficient_scale(&self) -> f64 {
        self.a
            .iter()
            .chain(&self.b)
            .fold(self.c.abs(), |m, x| m.max(x.abs()))
    }

    /// Coefficients as one flat vector `(c, a_1..a_k, b_1..b_k)`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 * self.k + 1);
        v.push(self.c);
        v.extend_from_slice(&self.a);
        v.extend_from_slice(&self.b);
        v
    }

    /// Inverse of [`to_vec`](Self::to_vec).
    pub fn from_vec(k: usize, v: &[f64]) -> Result<Self> {
        if v.len() != 2 * k + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                2 * k + 1,
                v.len()
            )));
        }
        Self::new(v[0], v[1..=k].to_vec(), v[k + 1..].to_vec())
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_derivative(t, 0)
    }

    /// `f^{(order)}(t)` without materializing the derivative.
    pub fn eval_derivative(&self, t: f64, order: usize) -> f64 {
        let (cc, cs, sc, ss) = rotation(order);
        let mut acc = if order == 0 { self.c } else { 0.0 };
        for j in 1..=self.k {
            let (a, b) = (self.a[j - 1], self.b[j - 1]);
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let n = harmonic(j);
            let (s, c) = (n * t).sin_cos();
            let scale = n.powi(order as i32);
            acc += scale * ((a * cc + b * sc) * c + (a * cs + b * ss) * s);
        }
        acc
    }

    /// Term-wise derivative of the given order; order 0 is the identity.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        let (cc, cs, sc, ss) = rotation(order);
        let mut out = Self::zero(self.k);
        for j in 1..=self.k {
            let (a, b) = (self.a[j - 1], self.b[j - 1]);
            let scale = harmonic(j).powi(order as i32);
            out.a[j - 1] = scale * (a * cc + b * sc);
            out.b[j - 1] = scale * (a * cs + b * ss);
        }
        out
    }

    /// Term-wise antiderivative with the given constant term.
    pub fn antiderivative(&self, constant: f64) -> Self {
        let mut out = Self::zero(self.k);
        out.c = constant;
        for j in 1..=self.k {
            let n = harmonic(j);
            out.a[j - 1] = -self.b[j - 1] / n;
            out.b[j - 1] = self.a[j - 1] / n;
        }
        out
    }

    /// `t ↦ f(t + shift)`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = Self::constant(self.k, self.c);
        for j in 1..=self.k {
            let (s, c) = (harmonic(j) * shift).sin_cos();
            let (a, b) = (self.a[j - 1], self.b[j - 1]);
            out.a[j - 1] = a * c + b * s;
            out.b[j - 1] = b * c - a * s;
        }
        out
    }

    /// `t ↦ f(-t)`.
    pub fn reflected(&self) -> Self {
        let mut out = self.clone();
        out.b.iter_mut().for_each(|x| *x = -*x);
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        RakedTrigPoly {
            k: self.k,
            c: self.c * s,
            a: self.a.iter().map(|x| x * s).collect(),
            b: self.b.iter().map(|x| x * s).collect(),
        }
    }

    /// Re-embed in the degree-`(2k-1)` space. Fails when truncation would drop
    /// a nonzero coefficient.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        if k < self.k && self.degree() > 2 * k - 1 {
            return Err(Error::InvalidInput(format!(
                "degree {} does not fit k = {k}",
                self.degree()
            )));
        }
        let mut out = Self::constant(k, self.c);
        let m = k.min(self.k);
        out.a[..m].copy_from_slice(&self.a[..m]);
        out.b[..m].copy_from_slice(&self.b[..m]);
        Ok(out)
    }

    /// `self + s * other`, in the larger of the two spaces.
    pub fn add_scaled(&self, other: &Self, s: f64) -> Self {
        let k = self.k.max(other.k);
        let mut out = self.with_k(k).expect("widening never fails");
        out.c += s * other.c;
        for j in 0..other.k {
            out.a[j] += s * other.a[j];
            out.b[j] += s * other.b[j];
        }
        out
    }

    /// Largest coefficient difference.
    pub fn max_coefficient_diff(&self, other: &Self) -> f64 {
        let k = self.k.max(other.k);
        let x = self.with_k(k).expect("widening never fails").to_vec();
        let y = other.with_k(k).expect("widening never fails").to_vec();
        x.iter().zip(&y).fold(0.0, |m, (p, q)| m.max((p - q).abs()))
    }

    /// Maximum of `|f|` over an equispaced grid of `n` points.
    pub fn grid_max_abs(&self, n: usize) -> f64 {
        (0..n)
            .map(|i| self.eval(TAU * i as f64 / n as f64).abs())
            .fold(0.0, f64::max)
    }

    /// Cheap estimate of the sup norm, used to scale tolerances.
    pub fn norm_estimate(&self) -> f64 {
        self.grid_max_abs(32 * (2 * self.k + 1))
    }

    /// The complex polynomial `z^(2k-1) (c + Σ a_j (z^n + z^-n)/2 + b_j (z^n - z^-n)/2i)`.
    pub fn lift(&self) -> ComplexPoly {
        let m = 2 * self.k - 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * m + 1];
        coeffs[m] = Complex64::new(self.c, 0.0);
        for j in 1..=self.k {
            let n = 2 * j - 1;
            let (a, b) = (self.a[j - 1], self.b[j - 1]);
            coeffs[m + n] += Complex64::new(a / 2.0, -b / 2.0);
            coeffs[m - n] += Complex64::new(a / 2.0, b / 2.0);
        }
        ComplexPoly { coeffs }
    }

    /// Inverse of [`lift`](Self::lift). The input must carry only the raked
    /// harmonics with the conjugate symmetry of a real polynomial, up to `tol`
    /// relative to its largest coefficient.
    pub fn unlift(p: &ComplexPoly, k: usize, tol: f64) -> Result<Self> {
        let m = 2 * k - 1;
        if p.coeffs.len() > 2 * m + 1 {
            let excess = p.coeffs[2 * m + 1..].iter().any(|c| c.norm() > 0.0);
            if excess {
                return Err(Error::InvalidInput(format!(
                    "complex polynomial degree exceeds {}",
                    2 * m
                )));
            }
        }
        let at = |i: usize| p.coeffs.get(i).copied().unwrap_or_default();
        let scale = p.coeffs.iter().fold(0.0f64, |s, c| s.max(c.norm()));
        let mut defect = at(m).im.abs();
        for e in (2..=m).step_by(2) {
            defect = defect.max(at(m + e).norm()).max(at(m - e).norm());
        }
        let mut a = vec![0.0; k];
        let mut b = vec![0.0; k];
        for j in 1..=k {
            let n = 2 * j - 1;
            let (hi, lo) = (at(m + n), at(m - n));
            defect = defect.max((hi - lo.conj()).norm());
            a[j - 1] = (hi + lo).re;
            b[j - 1] = (Complex64::i() * (hi - lo)).re;
        }
        if defect > tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidInput(format!(
                "not the lift of a real raked polynomial (defect {defect:e})"
            )));
        }
        Self::new(at(m).re, a, b)
    }
}

/// Complex polynomial with ascending coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    pub coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        ComplexPoly { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        ComplexPoly { coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Index of the highest nonzero coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() != 0.0)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect::<Vec<_>>();
        ComplexPoly {
            coeffs: if coeffs.is_empty() {
                vec![Complex64::new(0.0, 0.0)]
            } else {
                coeffs
            },
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        ComplexPoly {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// `p^{(r)}(z) / r!` together with the matching magnitude bound
    /// `Σ_i C(i, r) |c_i| |z|^(i-r)`.
    pub fn taylor_coefficient(&self, z: Complex64, r: usize) -> (Complex64, f64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        let rho = z.norm();
        for (i, &c) in self.coeffs.iter().enumerate().skip(r) {
            let binom = binomial(i, r);
            value += c * binom * z.powu((i - r) as u32);
            bound += c.norm() * binom * rho.powi((i - r) as i32);
        }
        (value, bound)
    }
}

/// `C(n, r)` in floating point.
pub fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
