//! Points of the symmetric moment curve in `R^{2k}`, centrally symmetric
//! vertex configurations, and face counting.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::{Error, Result};
use crate::interpolation::{is_face, FaceStatus};
use crate::lp::phase_one;
use crate::trigpoly::binomial;

/// Phase-1 objective above which the LP oracle reports a face.
pub const LP_SLACK: f64 = 1e-10;
/// Default cap on the number of enumerated subsets.
pub const DEFAULT_SUBSET_CAP: u128 = 10_000_000;
/// Grid size of the curve sample used to approximate `B_k` in LP checks.
pub const CURVE_SAMPLES: usize = 1024;

/// `U_k(t)` together with its parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub t: CirclePoint,
    pub coords: Vec<f64>,
}

/// `U_k(t) = (cos t, sin t, cos 3t, sin 3t, …, cos(2k-1)t, sin(2k-1)t)`.
pub fn embed(k: usize, t: CirclePoint) -> CurvePoint {
    let mut coords = Vec::with_capacity(2 * k);
    for j in 1..=k {
        let (s, c) = ((2 * j - 1) as f64 * t.angle()).sin_cos();
        coords.push(c);
        coords.push(s);
    }
    CurvePoint { t, coords }
}

/// Is `conv(points[subset])` a face of `conv(points)`?
///
/// The face condition asks for `(c, δ)` with `<c, p_i> = δ` on the subset and
/// `<c, p_j> <= δ - 1` elsewhere. By Farkas' lemma this fails iff some convex
/// combination of the outside points `(p_j, -1)` lies in the span of the subset
/// points `(p_i, -1)`; that dual system is solved by phase 1 of the simplex
/// method and the point set is declared a face when its infeasibility exceeds
/// [`LP_SLACK`].
pub fn lp_face_oracle(points: &[Vec<f64>], subset: &[usize]) -> Result<bool> {
    Ok(lp_face_blocker(points, subset)?.is_none())
}

/// `None` when the subset spans a face; otherwise the index of the outside
/// point carrying the largest weight in a convex combination that lands in
/// the span of the subset. Every functional vanishing on the subset and
/// nonnegative on all points must vanish there too.
pub fn lp_face_blocker(points: &[Vec<f64>], subset: &[usize]) -> Result<Option<usize>> {
    let Some(d) = points.first().map(Vec::len) else {
        return Ok(None);
    };
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidInput("points must share a positive dimension".into()));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= points.len()) {
        return Err(Error::InvalidInput(format!("subset index {bad} out of range")));
    }
    let lifted = |p: &Vec<f64>| {
        let mut q = p.clone();
        q.push(-1.0);
        q
    };
    let dim = d + 1;
    // Projector onto the orthogonal complement of span{(p_i, -1) : i in subset}.
    let mut proj = DMatrix::<f64>::identity(dim, dim);
    if !subset.is_empty() {
        let mut span = DMatrix::<f64>::zeros(dim, subset.len());
        for (col, &i) in subset.iter().enumerate() {
            for (row, x) in lifted(&points[i]).into_iter().enumerate() {
                span[(row, col)] = x;
            }
        }
        let svd = span.svd(true, false);
        let u = svd.u.ok_or_else(|| Error::SolverFailure("SVD without U".into()))?;
        let top = svd.singular_values.max();
        for (c, &sv) in svd.singular_values.iter().enumerate() {
            if sv > 1e-10 * top.max(1.0) {
                let col = u.column(c);
                proj -= col * col.transpose();
            }
        }
    }
    let outside: Vec<usize> = (0..points.len()).filter(|i| !subset.contains(i)).collect();
    if outside.is_empty() {
        return Ok(None);
    }
    let projected: Vec<Vec<f64>> = outside
        .iter()
        .map(|&j| {
            let q = nalgebra::DVector::from_vec(lifted(&points[j]));
            (&proj * q).iter().copied().collect()
        })
        .collect();
    let mut a: Vec<Vec<f64>> = (0..dim)
        .map(|r| projected.iter().map(|q| q[r]).collect())
        .collect();
    let mut b = vec![0.0; dim];
    a.push(vec![1.0; outside.len()]);
    b.push(1.0);
    let (infeasibility, y) = phase_one(&a, &b)?;
    if infeasibility > LP_SLACK {
        return Ok(None);
    }
    let heaviest = (0..y.len()).max_by(|&i, &j| y[i].total_cmp(&y[j])).unwrap_or(0);
    Ok(Some(outside[heaviest]))
}

/// LP oracle against a dense sample of the whole curve, approximating `B_k`:
/// the cloud is `points` plus [`CURVE_SAMPLES`] equispaced curve points that
/// stay at least `0.02` away from them.
pub fn curve_face_oracle(k: usize, points: &[CirclePoint]) -> Result<bool> {
    Ok(curve_face_blocker(k, points)?.is_none())
}

/// [`lp_face_blocker`] on the curve sample of [`curve_face_oracle`], as a
/// point of the circle.
pub fn curve_face_blocker(k: usize, points: &[CirclePoint]) -> Result<Option<CirclePoint>> {
    let mut params: Vec<CirclePoint> = points.to_vec();
    let subset: Vec<usize> = (0..points.len()).collect();
    for i in 0..CURVE_SAMPLES {
        let t = CirclePoint::new(TAU * i as f64 / CURVE_SAMPLES as f64);
        if points.iter().all(|p| p.distance(t) >= 0.02) {
            params.push(t);
        }
    }
    let cloud: Vec<Vec<f64>> = params.iter().map(|&p| embed(k, p).coords).collect();
    Ok(lp_face_blocker(&cloud, &subset)?.map(|i| params[i]))
}

/// Complete characterization of edges of `B_k`: the shorter arc between the
/// endpoints is below `(2k - 2)π / (2k - 1)`.
pub fn edge_check(k: usize, a: CirclePoint, b: CirclePoint) -> bool {
    a.distance(b) < edge_threshold(k)
}

pub fn edge_threshold(k: usize) -> f64 {
    (2 * k - 2) as f64 * PI / (2 * k - 1) as f64
}

/// Vertex parameters of a polytope `conv(U_k(t) : t in angles)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexConfig {
    pub k: usize,
    pub angles: Vec<CirclePoint>,
    pub symmetric: bool,
}

impl VertexConfig {
    /// Validates distinctness; `symmetric` is detected from the angles.
    pub fn new(k: usize, angles: Vec<CirclePoint>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        for (i, p) in angles.iter().enumerate() {
            if angles[i + 1..].iter().any(|q| p.distance(*q) <= 1e-9) {
                return Err(Error::InvalidInput(format!("duplicate angle {p}")));
            }
        }
        let symmetric = angles
            .iter()
            .all(|p| angles.iter().any(|q| q.distance(p.antipode()) <= 1e-9));
        Ok(VertexConfig {
            k,
            angles,
            symmetric,
        })
    }

    /// `n` equally spaced angles starting at 0.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Self::new(k, (0..n).map(|i| CirclePoint::new(TAU * i as f64 / n as f64)).collect())
    }
}

/// Clustered configuration: `m` equally spaced points in
/// `[jπ/2 - spread/2, jπ/2 + spread/2]` for `j = 0..3`, valid while arcs
/// between adjacent clusters stay below `phi`.
pub fn clustered_config_with_phi(k: usize, m: usize, spread: f64, phi: f64) -> Result<VertexConfig> {
    if m == 0 || !(spread >= 0.0) {
        return Err(Error::InvalidInput("need m >= 1 and spread >= 0".into()));
    }
    if m > 1 && spread == 0.0 {
        return Err(Error::InvalidInput("m > 1 needs a positive spread".into()));
    }
    let arc = PI / 2.0 + spread;
    if arc >= phi {
        return Err(Error::SpreadTooLarge {
            spread,
            arc,
            threshold: phi,
        });
    }
    let mut angles = Vec::with_capacity(4 * m);
    for j in 0..4 {
        let center = j as f64 * PI / 2.0;
        for i in 0..m {
            let offset = if m == 1 {
                0.0
            } else {
                -spread / 2.0 + spread * i as f64 / (m - 1) as f64
            };
            angles.push(CirclePoint::new(center + offset));
        }
    }
    VertexConfig::new(k, angles)
}

/// [`clustered_config_with_phi`] with `φ_k` computed at the default tolerance
/// (no constraint for `k = 1`, where every arc qualifies).
pub fn clustered_config(k: usize, m: usize, spread: f64) -> Result<VertexConfig> {
    let phi = if k >= 2 {
        crate::critical_arc::phi(k, crate::critical_arc::DEFAULT_TOL)?.0
    } else {
        TAU
    };
    clustered_config_with_phi(k, m, spread, phi)
}

/// Default spread `min(0.1, (φ_k - π/2)/2)`.
pub fn default_spread(phi: f64) -> f64 {
    0.1f64.min((phi - PI / 2.0) / 2.0)
}

/// The guaranteed count `4 C(2m, k) - 4 C(m, k)` of `(k-1)`-faces of the
/// clustered polytope.
pub fn clustered_face_bound(k: usize, m: usize) -> f64 {
    4.0 * binomial(2 * m, k) - 4.0 * binomial(m, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCount {
    pub dim: usize,
    pub verified_count: u64,
    pub unknown_count: u64,
    pub not_face_count: u64,
    pub total_subsets: u64,
}

/// All `size`-element index subsets in lexicographic order.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Verdict for every `(face_dim + 1)`-subset of the configuration, in
/// lexicographic subset order.
pub fn classify_subsets(
    config: &VertexConfig,
    face_dim: usize,
    cap: u128,
) -> Result<Vec<(Vec<usize>, FaceStatus)>> {
    let size = face_dim + 1;
    if size > config.k {
        return Err(Error::InvalidInput(format!(
            "faces of dimension {face_dim} need at most k - 1 = {}",
            config.k - 1
        )));
    }
    let total = binomial(config.angles.len(), size);
    if total > cap as f64 {
        return Err(Error::CombinatorialExplosion {
            subsets: total as u128,
            cap,
        });
    }
    combinations(config.angles.len(), size)
        .into_par_iter()
        .map(|subset| {
            let pts: Vec<CirclePoint> = subset.iter().map(|&i| config.angles[i]).collect();
            let verdict = is_face(config.k, &pts)?;
            Ok((subset, verdict.status))
        })
        .collect()
}

/// Count `face_dim`-dimensional faces of the polytope spanned by the
/// configuration, through face certificates.
pub fn count_faces(config: &VertexConfig, face_dim: usize) -> Result<FaceCount> {
    count_faces_capped(config, face_dim, DEFAULT_SUBSET_CAP)
}

pub fn count_faces_capped(config: &VertexConfig, face_dim: usize, cap: u128) -> Result<FaceCount> {
    let verdicts = classify_subsets(config, face_dim, cap)?;
    let mut count = FaceCount {
        dim: face_dim,
        verified_count: 0,
        unknown_count: 0,
        not_face_count: 0,
        total_subsets: verdicts.len() as u64,
    };
    for (_, status) in verdicts {
        match status {
            FaceStatus::Face => count.verified_count += 1,
            FaceStatus::NotFace => count.not_face_count += 1,
            FaceStatus::Unknown => count.unknown_count += 1,
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_examples() {
        assert_eq!(embed(1, CirclePoint::new(0.0)).coords, vec![1.0, 0.0]);
        let c = embed(2, CirclePoint::new(PI)).coords;
        let want = [-1.0, 0.0, -1.0, 0.0];
        assert!(c.iter().zip(want).all(|(x, y)| (x - y).abs() < 1e-15));
        for k in 1..5 {
            let t = CirclePoint::new(0.37 * k as f64);
            let u = embed(k, t).coords;
            let v = embed(k, t.antipode()).coords;
            assert!(u.iter().zip(&v).all(|(x, y)| (x + y).abs() < 1e-14));
            for pair in u.chunks(2) {
                assert!((pair[0].hypot(pair[1]) - 1.0).abs() < 1e-15);
            }
        }
    }

    fn square() -> Vec<Vec<f64>> {
        vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0]]
    }

    #[test]
    fn square_faces() {
        let sq = square();
        assert!(lp_face_oracle(&sq, &[0]).unwrap());
        assert!(lp_face_oracle(&sq, &[0, 1]).unwrap());
        assert!(!lp_face_oracle(&sq, &[0, 2]).unwrap());
        assert!(lp_face_oracle(&sq, &[]).unwrap());
        assert!(lp_face_oracle(&sq, &[0, 1, 2, 3]).unwrap());
        assert!(!lp_face_oracle(&sq, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn interior_point_is_not_a_vertex() {
        let mut pts = square();
        pts.push(vec![0.2, 0.1]);
        assert!(!lp_face_oracle(&pts, &[4]).unwrap());
        assert!(lp_face_oracle(&pts, &[2]).unwrap());
    }

    #[test]
    fn edge_thresholds() {
        let p = CirclePoint::new;
        assert!(edge_check(2, p(0.0), p(2.0 * PI / 3.0 - 0.01)));
        assert!(!edge_check(2, p(0.0), p(2.0 * PI / 3.0 + 0.01)));
        assert!(edge_check(3, p(1.0), p(1.0 + 0.99 * 4.0 * PI / 5.0)));
    }

    #[test]
    fn clustered_shape() {
        let cfg = clustered_config_with_phi(2, 3, 0.1, 2.0 * PI / 3.0).unwrap();
        assert_eq!(cfg.angles.len(), 12);
        assert!(cfg.symmetric);
        assert!(matches!(
            clustered_config_with_phi(2, 3, 0.6, 2.0 * PI / 3.0),
            Err(Error::SpreadTooLarge { .. })
        ));
    }

    #[test]
    fn combinations_enumerate() {
        let c = combinations(5, 3);
        assert_eq!(c.len(), 10);
        assert_eq!(c[0], vec![0, 1, 2]);
        assert_eq!(c[9], vec![2, 3, 4]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn subset_cap() {
        let cfg = VertexConfig::uniform(2, 12).unwrap();
        assert!(matches!(
            count_faces_capped(&cfg, 1, 10),
            Err(Error::CombinatorialExplosion { .. })
        ));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(clustered_face_bound(2, 5), 140.0);
    }
}
