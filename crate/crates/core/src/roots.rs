//! Root extraction for raked polynomials through their complex lift.
//!
//! Roots of `lift(f)` come from the eigenvalues of its companion matrix. A root
//! of multiplicity `m` shows up as `m` eigenvalues scattered at distance
//! `~eps^(1/m)` around it, while their centroid stays accurate to working
//! precision, so roots are grouped into clusters and each cluster is validated
//! by the vanishing of the Taylor coefficients at its centroid.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::{Error, Result};
use crate::trigpoly::{ComplexPoly, RakedTrigPoly};

/// Default clustering tolerance.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
/// Default residual tolerance.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-12;

/// Coefficients below this fraction of the largest one are dropped before
/// building the companion matrix; they only produce roots of modulus beyond
/// `1e13` or below `1e-13`.
const TRIM: f64 = 1e-13;

/// All roots of a complex polynomial, with multiplicity, via the eigenvalues
/// of its companion matrix.
pub fn polynomial_roots(p: &ComplexPoly) -> Vec<Complex64> {
    let scale = p.coeffs.iter().fold(0.0f64, |s, c| s.max(c.norm()));
    if scale == 0.0 {
        return Vec::new();
    }
    let Some(hi) = p.coeffs.iter().rposition(|c| c.norm() > TRIM * scale) else {
        return Vec::new();
    };
    let lo = p
        .coeffs
        .iter()
        .position(|c| c.norm() > TRIM * scale)
        .unwrap_or(hi);
    let mut roots = vec![Complex64::new(0.0, 0.0); lo];
    let c = &p.coeffs[lo..=hi];
    let n = c.len() - 1;
    if n == 0 {
        return roots;
    }
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    balance(&mut m);
    roots.extend(eigenvalues(m));
    roots
}

/// Eigenvalues through a complex Schur decomposition. Shifted QR stalls on
/// permutation-like companion matrices (`z^n - 1`), so on non-convergence the
/// matrix is conjugated by a fixed Householder reflector and retried.
fn eigenvalues(m: DMatrix<Complex64>) -> Vec<Complex64> {
    let n = m.nrows();
    let diag = |t: &DMatrix<Complex64>| (0..n).map(|i| t[(i, i)]).collect::<Vec<_>>();
    if let Some(schur) = Schur::try_new(m.clone(), f64::EPSILON, 50 * n + 100) {
        return diag(&schur.unpack().1);
    }
    let mut current = m;
    for attempt in 1..=8 {
        let v = nalgebra::DVector::<Complex64>::from_fn(n, |i, _| {
            let x = (i + attempt) as f64;
            Complex64::new((0.7 * x).sin() + 1.1, (1.3 * x).cos())
        });
        let h = DMatrix::<Complex64>::identity(n, n) - (&v * v.adjoint()) * Complex64::new(2.0 / v.norm_squared(), 0.0);
        current = &h * current * &h;
        if let Some(schur) = Schur::try_new(current.clone(), f64::EPSILON, 200 * n + 100) {
            return diag(&schur.unpack().1);
        }
    }
    // Last resort: the unconverged triangle still carries usable estimates.
    let schur = Schur::try_new(current.clone(), 1e3 * f64::EPSILON, 1000 * n)
        .expect("Schur iteration failed on a reflected companion matrix");
    diag(&schur.unpack().1)
}

/// Diagonal similarity scaling (Parlett-Reinsch) to equalize row and column norms.
fn balance(m: &mut DMatrix<Complex64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    for _ in 0..100 {
        let mut done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / RADIX {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            while c > r * RADIX {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// A group of numerically coincident complex roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// Group roots of `p` into clusters.
///
/// For each seed root the `m` nearest unassigned roots are tried for growing
/// `m`, as long as they stay within `2 tol^(1/n)` (relative, `n` the root
/// count) of the seed: an `m`-fold root smears into an `m`-gon whose side can
/// exceed `tol^(1/j)` for the intermediate `j < m`, so the pruning must be as
/// loose as the largest possible multiplicity. The
/// largest `m` whose centroid annihilates the Taylor coefficients of orders
/// `0..m` (relative to `tol`) wins. Seeds are visited closest-to-the-unit-circle first.
pub fn cluster_roots(p: &ComplexPoly, roots: &[Complex64], tol: f64) -> Vec<RootCluster> {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| {
        (roots[i].norm() - 1.0)
            .abs()
            .total_cmp(&(roots[j].norm() - 1.0).abs())
    });
    let mut assigned = vec![false; roots.len()];
    let mut clusters = Vec::new();
    for &seed in &order {
        if assigned[seed] {
            continue;
        }
        let z = roots[seed];
        let mut near: Vec<(f64, usize)> = (0..roots.len())
            .filter(|&i| !assigned[i])
            .map(|i| ((roots[i] - z).norm(), i))
            .collect();
        near.sort_by(|x, y| x.0.total_cmp(&y.0));
        let reach = z.norm().max(1.0) * 2.0 * tol.powf(1.0 / roots.len().max(1) as f64);
        let mut best = (1usize, z);
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, &(dist, idx)) in near.iter().enumerate().map(|(i, x)| (i + 1, x)) {
            sum += roots[idx];
            if m > 1 && dist > reach {
                break;
            }
            let centroid = sum / m as f64;
            let vanishes = (0..m).all(|r| {
                let (value, bound) = p.taylor_coefficient(centroid, r);
                value.norm() <= tol * bound
            });
            if vanishes {
                best = (m, centroid);
            }
        }
        let (m, center) = best;
        for &(_, idx) in near.iter().take(m) {
            assigned[idx] = true;
        }
        clusters.push(RootCluster {
            center,
            multiplicity: m,
        });
    }
    clusters
}

/// A root of a raked polynomial on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleRoot {
    #[serde(rename = "angle")]
    pub point: CirclePoint,
    #[serde(rename = "mult")]
    pub multiplicity: usize,
}

/// Roots of `f` on the circle with multiplicities, sorted by angle.
///
/// `tol` controls both clustering and the distance to the unit circle.
/// Each multiplicity is confirmed on `f` itself:
/// `|f^{(r)}(t*)| < tol ‖f‖ (2k-1)^r` for `r < m`.
pub fn circle_roots(f: &RakedTrigPoly, tol: f64) -> Result<Vec<CircleRoot>> {
    let norm = f.norm_estimate();
    if norm <= tol {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.lift();
    let roots = polynomial_roots(&p);
    let clusters = cluster_roots(&p, &roots, tol);
    let top = (2 * f.k() - 1) as f64;
    let mut out = Vec::new();
    for cl in clusters {
        if (cl.center.norm() - 1.0).abs() > tol {
            continue;
        }
        let t = cl.center.arg();
        let m = cl.multiplicity;
        let threshold = |r: usize| tol * norm * top.powi(r as i32);
        for r in 0..m {
            let v = f.eval_derivative(t, r).abs();
            if v >= threshold(r) {
                return Err(Error::IllConditioned(format!(
                    "cluster of {m} roots at t = {t} leaves |f^({r})| = {v:e}"
                )));
            }
        }
        let next = f.eval_derivative(t, m).abs();
        if next < 10.0 * threshold(m) {
            return Err(Error::IllConditioned(format!(
                "multiplicity at t = {t} is not resolved: |f^({m})| = {next:e}"
            )));
        }
        out.push(CircleRoot {
            point: CirclePoint::new(t),
            multiplicity: m,
        });
    }
    out.sort_by(|x, y| x.point.angle().total_cmp(&y.point.angle()));
    Ok(out)
}

/// Candidate critical points of `f`: arguments of near-circle roots of
/// `lift(f')`, plus local extrema of a coarse grid, all refined by a guarded
/// Newton iteration on `f'`.
pub fn critical_points(f: &RakedTrigPoly) -> Vec<f64> {
    let d = f.derivative(1);
    let mut seeds: Vec<f64> = Vec::new();
    if d.degree() > 0 {
        for z in polynomial_roots(&d.lift()) {
            let r = z.norm();
            if r > 0.0 && (r.ln()).abs() < 0.25 {
                seeds.push(z.arg());
            }
        }
    }
    let n = 16 * (2 * f.k() + 1);
    let grid: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| f.eval(t)).collect();
    for i in 0..n {
        let (prev, next) = (vals[(i + n - 1) % n], vals[(i + 1) % n]);
        if (vals[i] <= prev && vals[i] <= next) || (vals[i] >= prev && vals[i] >= next) {
            seeds.push(grid[i]);
        }
    }
    seeds.into_iter().map(|t| polish_critical(f, t)).collect()
}

fn polish_critical(f: &RakedTrigPoly, mut t: f64) -> f64 {
    let mut g = f.eval_derivative(t, 1);
    for _ in 0..50 {
        let h = f.eval_derivative(t, 2);
        if h == 0.0 || g == 0.0 {
            break;
        }
        let step = (g / h).clamp(-0.05, 0.05);
        let cand = t - step;
        let gc = f.eval_derivative(cand, 1);
        if gc.abs() >= g.abs() {
            break;
        }
        t = cand;
        g = gc;
    }
    t
}

/// A closed subset of the circle given as closed arcs `[start, start + len]`,
/// or the whole circle.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Whole,
    Arcs(Vec<(f64, f64)>),
}

impl Region {
    /// The circle with open balls of `radius` removed around `centers`.
    /// `None` when nothing remains.
    pub fn excluding(centers: &[CirclePoint], radius: f64) -> Option<Region> {
        if centers.is_empty() {
            return Some(Region::Whole);
        }
        let mut angles: Vec<f64> = centers.iter().map(|p| p.angle()).collect();
        angles.sort_by(|a, b| a.total_cmp(b));
        let n = angles.len();
        let mut arcs = Vec::new();
        for i in 0..n {
            let a = angles[i];
            let b = if i + 1 < n { angles[i + 1] } else { angles[0] + TAU };
            let gap = b - a;
            let len = gap - 2.0 * radius;
            if len >= 0.0 && gap > 0.0 {
                arcs.push((a + radius, len));
            }
        }
        if arcs.is_empty() {
            None
        } else {
            Some(Region::Arcs(arcs))
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        match self {
            Region::Whole => true,
            Region::Arcs(arcs) => arcs.iter().any(|&(s, len)| {
                let d = crate::circle::canonicalize(t - s);
                d <= len + 1e-15 || d >= TAU - 1e-15
            }),
        }
    }

    fn endpoints(&self) -> Vec<f64> {
        match self {
            Region::Whole => Vec::new(),
            Region::Arcs(arcs) => arcs.iter().flat_map(|&(s, len)| [s, s + len]).collect(),
        }
    }
}

/// Minimum of `f` over `region` as `(argmin, value)`, from critical points and
/// region endpoints.
pub fn minimize_on(f: &RakedTrigPoly, region: &Region) -> (CirclePoint, f64) {
    extremum_on(f, region, |v| v)
}

/// Maximum of `f` over `region` as `(argmax, value)`.
pub fn maximize_on(f: &RakedTrigPoly, region: &Region) -> (CirclePoint, f64) {
    let (t, v) = extremum_on(f, region, |v| -v);
    (t, v)
}

fn extremum_on(f: &RakedTrigPoly, region: &Region, key: impl Fn(f64) -> f64) -> (CirclePoint, f64) {
    let mut candidates = region.endpoints();
    candidates.extend(critical_points(f).into_iter().filter(|&t| region.contains(t)));
    if candidates.is_empty() {
        // A region without endpoints is the whole circle, and a constant
        // polynomial has no critical points.
        candidates.push(0.0);
    }
    let best = candidates
        .into_iter()
        .map(|t| (t, f.eval(t)))
        .min_by(|x, y| key(x.1).total_cmp(&key(y.1)));
    let (t, v) = best.expect("at least one candidate");
    (CirclePoint::new(t), v)
}

/// `max_t |f(t)|`.
pub fn sup_norm(f: &RakedTrigPoly) -> f64 {
    let (_, hi) = maximize_on(f, &Region::Whole);
    let (_, lo) = minimize_on(f, &Region::Whole);
    hi.abs().max(lo.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn roots_of_quadratic() {
        let p = ComplexPoly::from_roots(&[Complex64::new(2.0, 0.0), Complex64::new(-0.5, 1.0)]);
        let mut r = polynomial_roots(&p);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - Complex64::new(-0.5, 1.0)).norm() < 1e-14);
        assert!((r[1] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cube_roots_of_one_double() {
        let f = RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap();
        let roots = circle_roots(&f, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]) {
            assert_eq!(r.multiplicity, 2);
            assert!(r.point.distance(CirclePoint::new(want)) < 1e-12);
        }
    }

    #[test]
    fn one_plus_sin() {
        for k in 1..=4 {
            let f = RakedTrigPoly::constant(k, 1.0).add_scaled(&RakedTrigPoly::sine(k, 1, 1.0), 1.0);
            let roots = circle_roots(&f, DEFAULT_CLUSTER_TOL).unwrap();
            assert_eq!(roots.len(), 1, "k = {k}");
            assert_eq!(roots[0].multiplicity, 2);
            assert!(roots[0].point.distance(CirclePoint::new(1.5 * PI)) < 1e-12);
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(circle_roots(&RakedTrigPoly::zero(2), 1e-7), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn sup_norm_examples() {
        let f = RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap();
        assert!((sup_norm(&f) - 2.0).abs() < 1e-14);
        assert!((sup_norm(&RakedTrigPoly::sine(1, 1, 1.0)) - 1.0).abs() < 1e-14);
        assert!((sup_norm(&RakedTrigPoly::constant(2, -3.0)) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn region_excluding() {
        let r = Region::excluding(&[CirclePoint::new(0.0)], 0.1).unwrap();
        assert!(!r.contains(0.05));
        assert!(!r.contains(-0.05));
        assert!(r.contains(0.1));
        assert!(r.contains(PI));
        assert!(Region::excluding(&[CirclePoint::new(0.0), CirclePoint::new(PI)], 2.0).is_none());
    }

    #[test]
    fn serialization_shape() {
        let r = CircleRoot {
            point: CirclePoint::new(1.5),
            multiplicity: 2,
        };
        assert_eq!(serde_json::to_string(&[r]).unwrap(), r#"[{"angle":1.5,"mult":2}]"#);
    }
}
