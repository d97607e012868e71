//! Checks against oracles computed independently of the library code paths.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use symcurve::critical_arc::{phi, DEFAULT_TOL};
use symcurve::deformation::{beta, lambda_deform};
use symcurve::polytope::{count_faces, VertexConfig};
use symcurve::roots::sup_norm;
use symcurve::{circle_roots, interpolate, is_face, CirclePoint, FaceStatus, RakedTrigPoly, RootSpec};

fn direct_eval(f: &RakedTrigPoly, t: f64) -> f64 {
    let mut acc = f.c();
    for j in 0..f.k() {
        let n = (2 * j + 1) as f64;
        acc += f.a()[j] * (n * t).cos() + f.b()[j] * (n * t).sin();
    }
    acc
}

/// Chebyshev polynomial of the first kind by the three-term recurrence.
fn chebyshev(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn sup_norm_matches_dense_grid() {
    let polys = [
        RakedTrigPoly::new(0.3, vec![1.0, -0.4, 0.2], vec![0.5, 0.1, -0.7]).unwrap(),
        RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap(),
        RakedTrigPoly::new(-0.2, vec![0.1, 0.0, 0.0, 0.9], vec![0.0, 0.3, 0.0, 0.0]).unwrap(),
    ];
    for f in &polys {
        let n = 4096;
        let grid = (0..n)
            .map(|i| direct_eval(f, TAU * i as f64 / n as f64).abs())
            .fold(0.0, f64::max);
        let s = sup_norm(f);
        let top = (2 * f.k() - 1) as f64;
        let h = TAU / n as f64;
        assert!(s >= grid * (1.0 - 1e-12), "sup {s} below grid {grid}");
        assert!(s <= grid * (1.0 + h * h * top * top / 8.0) + 1e-12, "sup {s} far above grid {grid}");
    }
}

#[test]
fn lift_agrees_with_evaluation() {
    let f = RakedTrigPoly::new(0.3, vec![1.0, -0.4, 0.2], vec![0.5, 0.1, -0.7]).unwrap();
    let p = f.lift();
    for i in 0..50 {
        let t = 0.37 * i as f64;
        let z = Complex64::from_polar(1.0, t);
        let want = Complex64::from_polar(direct_eval(&f, t), 5.0 * t);
        assert!((p.eval(z) - want).norm() < 1e-12);
    }
}

#[test]
fn deformation_matches_chebyshev_rescaling() {
    // 1 - cos 5t = P(cos t) with P = 1 - T_5, so the deformation is
    // proportional to P(cos t / λ).
    let f = RakedTrigPoly::new(1.0, vec![0.0, 0.0, -1.0], vec![0.0; 3]).unwrap();
    for lambda in [0.7, 1.1, 1.0 / (PI / 5.0).cos(), 1.6] {
        let g = lambda_deform(&f, lambda).unwrap();
        let p = |t: f64| 1.0 - chebyshev(5, t.cos() / lambda);
        let t0 = 0.4;
        for i in 0..40 {
            let t = TAU * i as f64 / 40.0;
            let lhs = g.eval(t) * p(t0);
            let rhs = g.eval(t0) * p(t);
            assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs.abs()), "λ = {lambda}, t = {t}");
        }
    }
}

#[test]
fn deformation_round_trip() {
    let f = RakedTrigPoly::new(1.0, vec![0.4, -0.3, 0.2], vec![0.0; 3]).unwrap();
    for lambda in [0.8, 1.25, 2.0] {
        let back = lambda_deform(&lambda_deform(&f, lambda).unwrap(), 1.0 / lambda).unwrap();
        assert!(back.max_coefficient_diff(&f) < 1e-9, "λ = {lambda}");
    }
}

#[test]
fn interpolant_vanishes_to_the_prescribed_order() {
    let spec = RootSpec::new(
        4,
        vec![
            (CirclePoint::new(0.2), 3),
            (CirclePoint::new(0.9), 2),
            (CirclePoint::new(1.4), 1),
            (CirclePoint::new(2.1), 2),
        ],
    )
    .unwrap();
    let f = interpolate(&spec).unwrap();
    assert_eq!(f.c(), 1.0);
    let h = 1e-3;
    for &(p, m) in spec.roots() {
        let t = p.angle();
        // Finite differences of the direct sum, orders below m.
        let v = [direct_eval(&f, t - h), direct_eval(&f, t), direct_eval(&f, t + h)];
        assert!(v[1].abs() < 1e-12);
        if m >= 2 {
            assert!(((v[2] - v[0]) / (2.0 * h)).abs() < 1e-5);
        }
        if m >= 3 {
            assert!(((v[2] - 2.0 * v[1] + v[0]) / (h * h)).abs() < 1e-4);
        }
    }
    let roots = circle_roots(&f, 1e-7).unwrap();
    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    assert!(total >= 8);
}

#[test]
fn uniform_edges_match_the_arc_rule() {
    // For k = 2 a pair is an edge iff its shorter arc is below 2π/3. Sizes
    // divisible by 3 put pairs exactly on the threshold and are left out.
    for n in [7usize, 10, 11, 13] {
        let count = count_faces(&VertexConfig::uniform(2, n).unwrap(), 1).unwrap();
        let step = TAU / n as f64;
        let mut want = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                let d = (j - i).min(n - (j - i)) as f64 * step;
                want += u64::from(d < 2.0 * PI / 3.0 - 1e-9);
            }
        }
        assert_eq!(count.verified_count, want, "n = {n}");
        assert_eq!(count.unknown_count, 0);
    }
}

#[test]
fn phi_below_beta() {
    for k in 2..=5 {
        let (p, _) = phi(k, DEFAULT_TOL).unwrap();
        assert!(p <= beta(k, 1e-12).unwrap() + 1e-9, "k = {k}");
    }
}

#[test]
fn faces_have_face_subsets() {
    let pts: Vec<CirclePoint> = [0.1, 0.5, 1.2].map(CirclePoint::new).to_vec();
    assert_eq!(is_face(3, &pts).unwrap().status, FaceStatus::Face);
    for skip in 0..3 {
        let sub: Vec<CirclePoint> = (0..3).filter(|&i| i != skip).map(|i| pts[i]).collect();
        assert_ne!(is_face(3, &sub).unwrap().status, FaceStatus::NotFace);
    }
}
