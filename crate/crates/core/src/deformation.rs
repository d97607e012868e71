//! The λ-deformation of even raked polynomials, and the families
//! `sin^{2k-1} t`, `h_k`, `F_k`, `f_k` behind the upper bound `β_k` and the
//! conjectured closed equation for `φ_k`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::roots::{cluster_roots, polynomial_roots, DEFAULT_CLUSTER_TOL};
use crate::trigpoly::{binomial, ComplexPoly, RakedTrigPoly};

/// Tolerance for `f(-t) = f(t)`, relative to `‖f‖`.
const EVEN_TOL: f64 = 1e-10;
/// Relative distance within which a root counts as the reciprocal of another.
const PAIR_TOL: f64 = 1e-6;
/// Scan step for [`alpha_conjecture`].
const ALPHA_STEP: f64 = PI / 8192.0;
/// Distance from `π/2` where the scan for [`alpha_conjecture`] stops.
const ALPHA_CAP: f64 = 1e-6;

/// Roots of a lifted even polynomial, split into reciprocal pairs `{ζ, 1/ζ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootPairing {
    pub pairs: Vec<(Complex64, Complex64)>,
}

impl RootPairing {
    /// `ζ + 1/ζ` for every pair.
    pub fn sums(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|&(z, w)| z + w).collect()
    }
}

fn check_even(f: &RakedTrigPoly) -> Result<()> {
    let norm = f.norm_estimate().max(f64::MIN_POSITIVE);
    let defect = (0..64)
        .map(|i| {
            let t = 0.1 + PI * i as f64 / 64.0;
            (f.eval(t) - f.eval(-t)).abs()
        })
        .fold(0.0, f64::max);
    if defect > EVEN_TOL * norm {
        return Err(Error::NotEven(defect));
    }
    Ok(())
}

/// Pair the roots of `lift(f)` for an even `f` of exact degree `2k - 1`.
///
/// Roots are clustered first; each remaining root is matched greedily with
/// the nearest unmatched root to its reciprocal, and a second candidate of a
/// different value within tolerance is reported as a failure.
pub fn pair_roots(f: &RakedTrigPoly) -> Result<RootPairing> {
    check_even(f)?;
    let p = f.lift();
    if p.coeffs[0].norm() <= 1e-14 * f.coefficient_scale() {
        return Err(Error::InvalidInput("degree is below 2k - 1 (lift(f)(0) = 0)".into()));
    }
    let roots = polynomial_roots(&p);
    let mut multiset: Vec<Complex64> = Vec::with_capacity(roots.len());
    for cl in cluster_roots(&p, &roots, DEFAULT_CLUSTER_TOL) {
        multiset.extend(std::iter::repeat_n(cl.center, cl.multiplicity));
    }
    let mut used = vec![false; multiset.len()];
    let mut pairs = Vec::new();
    for i in 0..multiset.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = multiset[i];
        let target = z.inv();
        let reach = PAIR_TOL * target.norm().max(1.0);
        let mut cands: Vec<(f64, usize)> = (0..multiset.len())
            .filter(|&j| !used[j])
            .map(|j| ((multiset[j] - target).norm(), j))
            .filter(|&(d, _)| d <= reach)
            .collect();
        cands.sort_by(|x, y| x.0.total_cmp(&y.0));
        let Some(&(_, j)) = cands.first() else {
            return Err(Error::PairingFailure(format!("no reciprocal partner for {z}")));
        };
        if cands[1..]
            .iter()
            .any(|&(_, l)| (multiset[l] - multiset[j]).norm() > reach)
        {
            return Err(Error::PairingFailure(format!("ambiguous partner for {z}")));
        }
        used[j] = true;
        pairs.push((z, multiset[j]));
    }
    Ok(RootPairing { pairs })
}

/// Roots `ξ` of `ξ² - λ s ξ + 1 = 0` for each pair sum `s`.
pub fn deformed_pairs(pairing: &RootPairing, lambda: f64) -> RootPairing {
    let pairs = pairing
        .sums()
        .into_iter()
        .map(|s| {
            let b = lambda * s;
            let disc = (b * b - 4.0).sqrt();
            ((b + disc) / 2.0, (b - disc) / 2.0)
        })
        .collect();
    RootPairing { pairs }
}

/// The λ-deformation: every reciprocal root pair with sum `s` is replaced by
/// the pair with sum `λ s`. The result is normalized to constant term 1 when
/// its constant term is nonzero.
pub fn lambda_deform(f: &RakedTrigPoly, lambda: f64) -> Result<RakedTrigPoly> {
    if !(lambda.is_finite() && lambda != 0.0) {
        return Err(Error::InvalidInput("lambda must be finite and nonzero".into()));
    }
    let k = f.k();
    let pairing = pair_roots(f)?;
    let one = Complex64::new(1.0, 0.0);
    // f(t) = (a_k / 2) Π (2 cos t - s_j); keep the top coefficient consistent
    // with x ↦ x / λ in the variable x = cos t.
    let gamma = f.a()[k - 1] / 2.0 * lambda.powi(-(2 * k as i32 - 1));
    let mut coeffs = vec![Complex64::new(gamma, 0.0)];
    for s in pairing.sums() {
        let factor = [one, -lambda * s, one];
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 2];
        for (i, c) in coeffs.iter().enumerate() {
            for (j, q) in factor.iter().enumerate() {
                next[i + j] += c * q;
            }
        }
        coeffs = next;
    }
    let g = RakedTrigPoly::unlift(&ComplexPoly::new(coeffs), k, 1e-8)?;
    // Evenness is exact in theory; drop the rounding residue in the sines.
    let g = RakedTrigPoly::new(g.c(), g.a().to_vec(), vec![0.0; k])?;
    if g.c().abs() > 1e-12 * g.coefficient_scale() {
        Ok(g.scaled(1.0 / g.c()))
    } else {
        Ok(g)
    }
}

/// `sin^{2k-1} t` as a raked polynomial.
pub fn sin_power(k: usize) -> RakedTrigPoly {
    let scale = (-4.0f64).powi(-(k as i32 - 1));
    let mut b = vec![0.0; k];
    for j in 0..k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        b[k - j - 1] = sign * binomial(2 * k - 1, j) * scale;
    }
    RakedTrigPoly::new(0.0, vec![0.0; k], b).expect("lengths match")
}

/// `h_k(t) = ∫_0^t sin^{2k-1} τ dτ`.
pub fn h_poly(k: usize) -> RakedTrigPoly {
    let s = sin_power(k);
    let at_zero = s.antiderivative(0.0).eval(0.0);
    s.antiderivative(-at_zero)
}

/// `n!!` by direct product.
pub fn double_factorial(n: usize) -> f64 {
    (1..=n).rev().step_by(2).map(|i| i as f64).product()
}

/// `(2j-1)!! / (2j)!!` as a running product of `(2i-1)/(2i)`.
pub fn odd_even_ratio(j: usize) -> f64 {
    (1..=j).map(|i| (2 * i - 1) as f64 / (2 * i) as f64).product()
}

/// `(2k-2)!! / (2k-1)!!` as a running product.
pub fn even_odd_ratio(k: usize) -> f64 {
    (1..k).map(|i| (2 * i) as f64 / (2 * i + 1) as f64).product()
}

/// Closed form `((2k-2)!!/(2k-1)!!) (1 - cos t Σ_{j<k} ((2j-1)!!/(2j)!!) sin^{2j} t)`.
pub fn h_closed_form(k: usize, t: f64) -> f64 {
    let s2 = t.sin().powi(2);
    let mut sum = 0.0;
    let mut pow = 1.0;
    for j in 0..k {
        sum += odd_even_ratio(j) * pow;
        pow *= s2;
    }
    even_odd_ratio(k) * (1.0 - t.cos() * sum)
}

/// `F_k(t) = sin² t · h_{k-1}(t) - h_k(t)`.
pub fn f_family(k: usize) -> impl Fn(f64) -> f64 {
    let lower = h_poly(k - 1);
    let upper = h_poly(k);
    move |t| t.sin().powi(2) * lower.eval(t) - upper.eval(t)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let positive_lo = f(lo) > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == positive_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `β_k`, the root of `F_k` in `(π/2, π)`.
pub fn beta(k: usize, tol: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidInput("β_k needs k >= 2".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let f = f_family(k);
    let (lo, hi) = (FRAC_PI_2, PI);
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(Error::BracketFailure { lo, hi });
    }
    Ok(bisect(f, lo, hi, tol))
}

/// `f_k = sin²(β_k) h_{k-1} - h_k`: nonnegative, with a root of order `2k - 2`
/// at 0 and double roots at `±β_k`.
pub fn witness_poly(k: usize) -> Result<RakedTrigPoly> {
    let b = beta(k, 1e-15)?;
    let lower = h_poly(k - 1).with_k(k)?;
    Ok(lower.scaled(b.sin().powi(2)).add_scaled(&h_poly(k), -1.0))
}

/// `cos α + 1 + Σ_{j=1}^{k-1} (-1)^j ((2j-1)!!/(2j)!!) tan^{2j} α`.
pub fn alpha_equation(k: usize, alpha: f64) -> f64 {
    let t2 = alpha.tan().powi(2);
    let mut sum = alpha.cos() + 1.0;
    let mut ratio = 1.0;
    let mut pow = 1.0;
    for j in 1..k {
        ratio *= (2 * j - 1) as f64 / (2 * j) as f64;
        pow *= -t2;
        sum += ratio * pow;
    }
    sum
}

/// Smallest positive root of [`alpha_equation`] on `(0, π/2)`, for even `k`.
pub fn alpha_conjecture(k: usize, tol: f64) -> Result<f64> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidInput(format!("k = {k} must be even and at least 2")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let f = |a: f64| alpha_equation(k, a);
    let cap = FRAC_PI_2 - ALPHA_CAP;
    let mut lo = 0.0;
    let mut flo = f(lo);
    while lo < cap {
        let hi = (lo + ALPHA_STEP).min(cap);
        let fhi = f(hi);
        if flo == 0.0 {
            return Ok(lo);
        }
        if (flo > 0.0) != (fhi > 0.0) || fhi == 0.0 {
            return Ok(bisect(f, lo, hi, tol));
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::NoRoot(format!("(0, π/2 - {ALPHA_CAP}) for k = {k}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::circle_roots;

    #[test]
    fn sin_powers() {
        let s1 = sin_power(1);
        assert_eq!(s1.b(), &[1.0]);
        let s2 = sin_power(2);
        assert!((s2.b()[0] - 0.75).abs() < 1e-15 && (s2.b()[1] + 0.25).abs() < 1e-15);
        let s4 = sin_power(4);
        for i in 0..128 {
            let t = 0.05 * i as f64;
            assert!((s4.eval(t) - t.sin().powi(7)).abs() < 1e-12);
        }
    }

    #[test]
    fn h_family() {
        let h1 = h_poly(1);
        let want = RakedTrigPoly::new(1.0, vec![-1.0], vec![0.0]).unwrap();
        assert!(h1.max_coefficient_diff(&want) < 1e-15);
        for k in 2..=6 {
            let h = h_poly(k);
            assert!((h.eval(PI) - 2.0 * even_odd_ratio(k)).abs() < 1e-12);
            for i in 0..128 {
                let t = 0.049 * i as f64;
                assert!((h.eval(t) - h_closed_form(k, t)).abs() < 1e-12);
                assert!((h.eval_derivative(t, 1) - t.sin().powi(2 * k as i32 - 1)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn double_factorials() {
        for j in 0..=20usize {
            let even = double_factorial(2 * j);
            assert_eq!(even, 2f64.powi(j as i32) * (1..=j).map(|i| i as f64).product::<f64>());
            let odd = if j == 0 { 1.0 } else { double_factorial(2 * j - 1) };
            let fact = |n: usize| (1..=n).map(|i| i as f64).product::<f64>();
            assert!((odd - fact(2 * j) / (2f64.powi(j as i32) * fact(j))).abs() <= 1e-15 * odd);
            assert!((odd_even_ratio(j) - odd / even).abs() < 1e-15);
        }
    }

    #[test]
    fn beta_two_and_three() {
        for k in 2..=5 {
            let b = beta(k, 1e-13).unwrap();
            assert!(b > FRAC_PI_2 && b < PI);
            let frac = (2 * k - 2) as f64 / (2 * k - 1) as f64;
            assert!(b.sin().powi(2) > frac);
        }
    }

    #[test]
    fn witness_roots() {
        let f = witness_poly(3).unwrap();
        let b = beta(3, 1e-15).unwrap();
        let roots = circle_roots(&f, 1e-6).unwrap();
        let mults: Vec<usize> = roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(roots.len(), 3, "{roots:?}");
        assert_eq!(mults.iter().sum::<usize>(), 8);
        assert!(roots.iter().any(|r| r.point.distance(0.0.into()) < 1e-6 && r.multiplicity == 4));
        assert!(roots.iter().any(|r| r.point.distance(b.into()) < 1e-6));
        assert!(roots.iter().any(|r| r.point.distance((-b).into()) < 1e-6));
    }

    #[test]
    fn alpha_two() {
        let a = alpha_conjecture(2, 1e-14).unwrap();
        assert!((a - PI / 3.0).abs() < 1e-10);
        assert!(alpha_conjecture(3, 1e-10).is_err());
    }

    #[test]
    fn identity_deformation() {
        let f = RakedTrigPoly::new(1.0, vec![0.3, -0.2, 0.4], vec![0.0; 3]).unwrap();
        let g = lambda_deform(&f, 1.0).unwrap();
        assert!(g.max_coefficient_diff(&f) < 1e-9);
    }

    #[test]
    fn deformation_rejects_odd_parts() {
        let f = RakedTrigPoly::new(1.0, vec![0.3, -0.2], vec![0.1, 0.0]).unwrap();
        assert!(matches!(lambda_deform(&f, 1.2), Err(Error::NotEven(_))));
        let f = RakedTrigPoly::new(1.0, vec![0.3, 0.0], vec![0.0, 0.0]).unwrap();
        assert!(matches!(lambda_deform(&f, 1.2), Err(Error::InvalidInput(_))));
    }
}
