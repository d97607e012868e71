//! Raked polynomials with prescribed roots, and face certificates for `B_k`.
//!
//! For `n` distinct points in an open semicircle with multiplicities summing
//! to `2k`, there is exactly one raked polynomial of degree `2k - 1` with
//! constant term 1 having exactly those roots. The convex hull of
//! `U(t_1), …, U(t_n)` is a face of `B_k` iff some raked polynomial vanishes
//! to even order at the `t_i` and nowhere else, which makes such
//! polynomials face certificates.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::circle::{in_open_semicircle, spanning_arc, CirclePoint};
use crate::error::{Error, Result};
use crate::polytope::curve_face_blocker;
use crate::roots::{circle_roots, minimize_on, CircleRoot, Region, DEFAULT_CLUSTER_TOL};
use crate::trigpoly::RakedTrigPoly;

/// Points closer than this are treated as coincident and rejected.
pub const MIN_SEPARATION: f64 = 1e-9;
/// Default radius of the neighborhoods cut out around roots when measuring positivity.
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 0.05;
/// Pivot ratio below which the interpolation system counts as singular.
const SINGULAR_RATIO: f64 = 1e-14;
/// Margins within this many units of rounding of `f` (relative to the sum of
/// the absolute coefficients) are not decided.
const DECISION_ULPS: f64 = 1e4;
/// Finite-difference step for [`family_velocity`].
pub const VELOCITY_STEP: f64 = 1e-6;

/// Prescribed roots `(t_i, m_i)` with `Σ m_i = 2k`, pairwise distinct and
/// contained in an open semicircle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSpec {
    k: usize,
    roots: Vec<(CirclePoint, usize)>,
}

impl RootSpec {
    pub fn new(k: usize, roots: Vec<(CirclePoint, usize)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        if roots.iter().any(|&(_, m)| m == 0) {
            return Err(Error::InvalidInput("multiplicities must be positive".into()));
        }
        let total: usize = roots.iter().map(|&(_, m)| m).sum();
        if total != 2 * k {
            return Err(Error::InvalidInput(format!(
                "multiplicities sum to {total}, expected {}",
                2 * k
            )));
        }
        let points: Vec<CirclePoint> = roots.iter().map(|&(p, _)| p).collect();
        check_distinct(&points)?;
        if !in_open_semicircle(&points) {
            return Err(Error::InvalidInput(
                "root points do not lie in an open semicircle".into(),
            ));
        }
        Ok(RootSpec { k, roots })
    }

    /// Every point a double root; requires exactly `k` points.
    pub fn doubles(points: &[CirclePoint]) -> Result<Self> {
        Self::new(points.len(), points.iter().map(|&p| (p, 2)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn roots(&self) -> &[(CirclePoint, usize)] {
        &self.roots
    }

    pub fn points(&self) -> Vec<CirclePoint> {
        self.roots.iter().map(|&(p, _)| p).collect()
    }

    /// The same multiplicities at points rotated by `shift`.
    pub fn shifted(&self, shift: f64) -> Self {
        RootSpec {
            k: self.k,
            roots: self.roots.iter().map(|&(p, m)| (p.rotate(shift), m)).collect(),
        }
    }

    /// Replace the point of root `index`, revalidating.
    pub fn with_point(&self, index: usize, point: CirclePoint) -> Result<Self> {
        let mut roots = self.roots.clone();
        let slot = roots
            .get_mut(index)
            .ok_or_else(|| Error::InvalidInput(format!("no root with index {index}")))?;
        slot.0 = point;
        Self::new(self.k, roots)
    }
}

fn check_distinct(points: &[CirclePoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if p.distance(*q) <= MIN_SEPARATION {
                return Err(Error::InvalidInput(format!(
                    "points {p} and {q} coincide"
                )));
            }
        }
    }
    Ok(())
}

/// One row `(d/dt)^r [cos((2j-1)t), sin((2j-1)t)]_{j=1..k}` at `t`, scaled by
/// `(2k-1)^-r` to balance rows of different orders.
fn condition_row(k: usize, t: f64, r: usize) -> Vec<f64> {
    let scale = ((2 * k - 1) as f64).powi(r as i32).recip();
    let mut row = vec![0.0; 2 * k];
    for j in 1..=k {
        row[j - 1] = RakedTrigPoly::cosine(k, j, 1.0).eval_derivative(t, r) * scale;
        row[k + j - 1] = RakedTrigPoly::sine(k, j, 1.0).eval_derivative(t, r) * scale;
    }
    row
}

/// Linear conditions `f^{(r)}(t_i) = 0`, `r < m_i`, on `(a, b)` with `c = 1`.
fn root_conditions(k: usize, roots: &[(CirclePoint, usize)]) -> (DMatrix<f64>, DVector<f64>) {
    let rows: usize = roots.iter().map(|&(_, m)| m).sum();
    let mut mat = DMatrix::zeros(rows, 2 * k);
    let mut rhs = DVector::zeros(rows);
    let mut i = 0;
    for &(p, m) in roots {
        for r in 0..m {
            let row = condition_row(k, p.angle(), r);
            for (j, x) in row.into_iter().enumerate() {
                mat[(i, j)] = x;
            }
            rhs[i] = if r == 0 { -1.0 } else { 0.0 };
            i += 1;
        }
    }
    (mat, rhs)
}

fn poly_from_solution(k: usize, x: &DVector<f64>) -> Result<RakedTrigPoly> {
    RakedTrigPoly::new(1.0, x.rows(0, k).iter().copied().collect(), x.rows(k, k).iter().copied().collect())
}

/// The unique raked polynomial of degree `2k - 1` with constant term 1 and
/// exactly the prescribed roots, from the square system
/// `f^{(r)}(t_i) = 0, r < m_i`, solved by LU with partial pivoting.
pub fn interpolate(spec: &RootSpec) -> Result<RakedTrigPoly> {
    solve_conditions(spec.k, &spec.roots)
}

/// Square root-condition system without the semicircle precondition; the
/// solution, when the system is regular, need not be unique in general.
fn solve_conditions(k: usize, roots: &[(CirclePoint, usize)]) -> Result<RakedTrigPoly> {
    let (mat, rhs) = root_conditions(k, roots);
    let lu = mat.clone().lu();
    let u = lu.u();
    let diag: Vec<f64> = (0..2 * k).map(|i| u[(i, i)].abs()).collect();
    let big = diag.iter().copied().fold(0.0, f64::max);
    let small = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio = if big > 0.0 { small / big } else { 0.0 };
    if !(ratio > SINGULAR_RATIO) {
        return Err(Error::SingularSystem(ratio));
    }
    let mut x = lu.solve(&rhs).ok_or(Error::SingularSystem(ratio))?;
    // One step of iterative refinement.
    let residual = &rhs - &mat * &x;
    if let Some(dx) = lu.solve(&residual) {
        x += dx;
    }
    poly_from_solution(k, &x)
}

/// Minimum of `f` over the circle minus open balls of `radius` around
/// `excluded`. Negative means `f` changes sign or vanishes off the excluded set;
/// `+∞` when the balls cover the circle.
pub fn positivity_margin(f: &RakedTrigPoly, excluded: &[CirclePoint], radius: f64) -> Result<f64> {
    Ok(positivity_witness(f, excluded, radius)?.1)
}

/// [`positivity_margin`] together with the point attaining it.
pub fn positivity_witness(
    f: &RakedTrigPoly,
    excluded: &[CirclePoint],
    radius: f64,
) -> Result<(Option<CirclePoint>, f64)> {
    if f.norm_estimate() == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    match Region::excluding(excluded, radius.max(0.0)) {
        None => Ok((None, f64::INFINITY)),
        Some(region) => {
            let (t, v) = minimize_on(f, &region);
            Ok((Some(t), v))
        }
    }
}

/// Exclusion radius for a point set: [`DEFAULT_EXCLUSION_RADIUS`], reduced to a
/// third of the minimum separation when points are closer than `0.15`.
pub fn exclusion_radius(points: &[CirclePoint]) -> f64 {
    let mut sep = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            sep = sep.min(p.distance(*q));
        }
    }
    if sep < 0.15 {
        DEFAULT_EXCLUSION_RADIUS.min(sep / 3.0)
    } else {
        DEFAULT_EXCLUSION_RADIUS
    }
}

/// Velocity `g_s = ∂f_s/∂s` of the family obtained by moving root
/// `moving_index` to `s` while keeping the others fixed, by central
/// differences of the interpolated coefficients.
pub fn family_velocity(spec: &RootSpec, moving_index: usize, s: CirclePoint) -> Result<RakedTrigPoly> {
    let h = VELOCITY_STEP;
    let plus = interpolate(&spec.with_point(moving_index, s.rotate(h))?)?;
    let minus = interpolate(&spec.with_point(moving_index, s.rotate(-h))?)?;
    let mut g = plus.add_scaled(&minus, -1.0).scaled(0.5 / h);
    g = RakedTrigPoly::new(0.0, g.a().to_vec(), g.b().to_vec())?;
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FaceStatus {
    Face,
    NotFace,
    Unknown,
}

/// A polynomial with constant term 1, nonnegative on the circle, vanishing
/// (to the listed even orders) exactly at `roots`. For a padded certificate
/// the roots include auxiliary points; the certified face is then a face of
/// the simplex spanned by all roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceCertificate {
    pub poly: RakedTrigPoly,
    pub roots: Vec<CircleRoot>,
    /// Minimum of `poly` off the exclusion neighborhoods of the roots.
    pub margin: f64,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceVerdict {
    pub status: FaceStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FaceCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CirclePoint>,
}

impl FaceVerdict {
    fn unknown() -> Self {
        FaceVerdict {
            status: FaceStatus::Unknown,
            certificate: None,
            witness: None,
        }
    }
}

/// Width of the undecided band around zero: a generous multiple of the
/// rounding error committed when evaluating `f`.
pub fn decision_band(f: &RakedTrigPoly) -> f64 {
    let total = f.c().abs() + f.a().iter().chain(f.b()).map(|x| x.abs()).sum::<f64>();
    DECISION_ULPS * f64::EPSILON * total
}

enum Check {
    Certified(FaceCertificate),
    Negative(CirclePoint),
    Undecided,
}

/// Does `f` certify that `points` span a face: double roots exactly at the
/// points, no other roots, positive margin away from them.
fn check_certificate(f: &RakedTrigPoly, points: &[CirclePoint], radius: f64) -> Result<Check> {
    let band = decision_band(f);
    let (witness, margin) = positivity_witness(f, points, radius)?;
    if margin < -band {
        return Ok(witness.map_or(Check::Undecided, Check::Negative));
    }
    if margin <= band {
        return Ok(Check::Undecided);
    }
    let Ok(roots) = circle_roots(f, DEFAULT_CLUSTER_TOL) else {
        return Ok(Check::Undecided);
    };
    let matches = roots.len() == points.len()
        && points.iter().all(|p| {
            roots
                .iter()
                .any(|r| r.multiplicity == 2 && r.point.distance(*p) < 1e-6)
        });
    if !matches {
        return Ok(Check::Undecided);
    }
    // Exact root positions from the input, not the numerical estimates.
    let mut exact: Vec<CircleRoot> = points
        .iter()
        .map(|&point| CircleRoot {
            point,
            multiplicity: 2,
        })
        .collect();
    exact.sort_by(|x, y| x.point.angle().total_cmp(&y.point.angle()));
    Ok(Check::Certified(FaceCertificate {
        poly: f.clone(),
        roots: exact,
        margin,
        radius,
    }))
}

/// Auxiliary points bringing `points` up to `k`. With two or more points the
/// widest gap of the spanning arc is split at `fraction` of its length until
/// enough points exist; a single point gets neighbors on one side, the side
/// chosen by `fraction < 0.5`.
fn pad_points(points: &[CirclePoint], k: usize, fraction: f64) -> Vec<CirclePoint> {
    let needed = k - points.len();
    if points.len() == 1 {
        let side = if fraction < 0.5 { -1.0 } else { 1.0 };
        return (1..=needed)
            .map(|j| points[0].rotate(side * 0.3 * j as f64 / needed as f64))
            .collect();
    }
    let (start, _) = spanning_arc(points).expect("nonempty");
    let mut offsets: Vec<f64> = points.iter().map(|p| start.ccw_to(*p)).collect();
    offsets.sort_by(|a, b| a.total_cmp(b));
    let mut added = Vec::with_capacity(needed);
    while added.len() < needed {
        let (i, _) = offsets
            .windows(2)
            .enumerate()
            .map(|(i, w)| (i, w[1] - w[0]))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("at least two offsets");
        let new = offsets[i] + fraction * (offsets[i + 1] - offsets[i]);
        offsets.insert(i + 1, new);
        added.push(start.rotate(new));
    }
    added
}

/// Gap fractions tried for in-arc paddings.
const PAD_FRACTIONS: [f64; 5] = [0.5, 1.0 / 3.0, 2.0 / 3.0, 0.25, 0.75];
/// Number of run positions tried by the circle-wide padding search.
const PAD_POSITIONS: usize = 240;
/// Spacing of a run of auxiliary points, and their minimum distance to the
/// query points.
const PAD_STEP: f64 = 0.15;
const PAD_CLEARANCE: f64 = 0.05;

/// Auxiliary point sets for `n < k`: in-arc paddings first, then short runs
/// starting all around the circle.
fn padding_candidates(points: &[CirclePoint], k: usize) -> Vec<Vec<CirclePoint>> {
    let needed = k - points.len();
    let mut out: Vec<Vec<CirclePoint>> = PAD_FRACTIONS.iter().map(|&f| pad_points(points, k, f)).collect();
    for i in 0..PAD_POSITIONS {
        let theta = points[0].rotate(std::f64::consts::TAU * (i as f64 + 0.5) / PAD_POSITIONS as f64);
        out.push((0..needed).map(|j| theta.rotate(PAD_STEP * j as f64)).collect());
    }
    out.retain(|extras| {
        extras
            .iter()
            .all(|e| points.iter().all(|p| p.distance(*e) >= PAD_CLEARANCE))
    });
    out
}

/// Are `U_k(t)` for the given points affinely independent?
fn affinely_independent(k: usize, points: &[CirclePoint]) -> bool {
    let mut m = DMatrix::<f64>::zeros(2 * k + 1, points.len());
    for (col, p) in points.iter().enumerate() {
        for (row, x) in crate::polytope::embed(k, *p).coords.into_iter().enumerate() {
            m[(row, col)] = x;
        }
        m[(2 * k, col)] = 1.0;
    }
    let sv = m.singular_values();
    sv.min() > 1e-8 * sv.max()
}

/// Certificate for `points` (`n < k`) through a padded `k`-point face.
///
/// If `f` certifies that `points ∪ extras` spans a face whose vertices are
/// affinely independent, that face is a simplex and every subset of its
/// vertices spans a face as well. Failing that, all nonnegative padded
/// polynomials are averaged: the sum vanishes only at their common roots.
fn padded_face(points: &[CirclePoint], k: usize, radius: f64) -> Result<Option<FaceCertificate>> {
    let mut sum: Option<RakedTrigPoly> = None;
    let mut count = 0usize;
    for extras in padding_candidates(points, k) {
        let mut all = points.to_vec();
        all.extend(extras);
        if check_distinct(&all).is_err() {
            continue;
        }
        let doubles: Vec<(CirclePoint, usize)> = all.iter().map(|&p| (p, 2)).collect();
        let Ok(f) = solve_conditions(k, &doubles) else {
            continue;
        };
        let all_radius = exclusion_radius(&all);
        let simplex = in_open_semicircle(&all) || affinely_independent(k, &all);
        if simplex {
            if let Check::Certified(cert) = check_certificate(&f, &all, all_radius)? {
                return Ok(Some(cert));
            }
        }
        let Ok(margin) = positivity_margin(&f, &all, all_radius) else {
            continue;
        };
        if margin >= -decision_band(&f) {
            count += 1;
            sum = Some(match sum {
                None => f,
                Some(acc) => acc.add_scaled(&f, 1.0),
            });
        }
    }
    match sum {
        Some(f) => match check_certificate(&f.scaled(1.0 / count as f64), points, radius)? {
            Check::Certified(cert) => Ok(Some(cert)),
            _ => Ok(None),
        },
        None => Ok(None),
    }
}

/// Least-squares candidate with double roots at all points and constant term
/// 1; `None` when the conditions are inconsistent.
fn least_squares_candidate(k: usize, points: &[CirclePoint]) -> Option<RakedTrigPoly> {
    let roots: Vec<(CirclePoint, usize)> = points.iter().map(|&p| (p, 2)).collect();
    let (mat, rhs) = root_conditions(k, &roots);
    let svd = mat.clone().svd(true, true);
    let x = svd.solve(&rhs, 1e-12).ok()?;
    let residual = (&mat * &x - &rhs).amax();
    (residual <= 1e-9 * (1.0 + x.amax())).then(|| poly_from_solution(k, &x).ok()).flatten()
}

/// Decide whether `conv(U(t_1), …, U(t_n))` is a face of `B_k`.
///
/// * `n = k` points in an open semicircle: the verdict is exact up to the
///   decision tolerance (FACE or NOT_FACE with a witness of negativity).
/// * `n < k` points in an open semicircle: the set is padded with auxiliary
///   double roots up to `k` points (in-arc positions first, then all around
///   the circle); a certified padded face, or the average of all nonnegative
///   padded polynomials, proves the face. Failure gives UNKNOWN.
/// * otherwise, or when interpolation is singular: a least-squares
///   certificate is tried, then the LP oracle on a dense sample of the curve
///   may rule the face out.
pub fn is_face(k: usize, points: &[CirclePoint]) -> Result<FaceVerdict> {
    if k == 0 || points.is_empty() {
        return Err(Error::InvalidInput("need k >= 1 and at least one point".into()));
    }
    check_distinct(points)?;
    let radius = exclusion_radius(points);
    let semicircle = in_open_semicircle(points);
    let n = points.len();

    if semicircle && n < k {
        return Ok(match padded_face(points, k, radius)? {
            Some(cert) => FaceVerdict {
                status: FaceStatus::Face,
                certificate: Some(cert),
                witness: None,
            },
            // A failed padding proves nothing.
            None => FaceVerdict::unknown(),
        });
    }

    if semicircle && n == k {
        if let Ok(f) = interpolate(&RootSpec::doubles(points)?) {
            return Ok(match check_certificate(&f, points, radius)? {
                Check::Certified(cert) => FaceVerdict {
                    status: FaceStatus::Face,
                    certificate: Some(cert),
                    witness: None,
                },
                Check::Negative(w) => FaceVerdict {
                    status: FaceStatus::NotFace,
                    certificate: None,
                    witness: Some(w),
                },
                // A margin inside the decision band decides nothing.
                Check::Undecided => FaceVerdict::unknown(),
            });
        }
        // Singular system: the points are degenerate for interpolation
        // (e.g. almost antipodal), so fall through to the general path.
    }

    let candidate = least_squares_candidate(k, points);
    let mut witness = None;
    if let Some(f) = &candidate {
        match check_certificate(f, points, radius)? {
            Check::Certified(cert) => {
                return Ok(FaceVerdict {
                    status: FaceStatus::Face,
                    certificate: Some(cert),
                    witness: None,
                })
            }
            Check::Negative(w) => witness = Some(w),
            Check::Undecided => {}
        }
    }
    match curve_face_blocker(k, points)? {
        Some(blocker) => Ok(FaceVerdict {
            status: FaceStatus::NotFace,
            certificate: None,
            witness: Some(witness.unwrap_or(blocker)),
        }),
        None => Ok(FaceVerdict::unknown()),
    }
}

/// Residual of the prescribed root conditions, `max |f^{(r)}(t_i)|` over all
/// `(i, r)` with `r < m_i`.
pub fn root_residual(f: &RakedTrigPoly, spec: &RootSpec) -> f64 {
    spec.roots
        .iter()
        .flat_map(|&(p, m)| (0..m).map(move |r| f.eval_derivative(p.angle(), r).abs()))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pts(angles: &[f64]) -> Vec<CirclePoint> {
        angles.iter().map(|&a| CirclePoint::new(a)).collect()
    }

    #[test]
    fn interpolate_one_minus_cos3() {
        let spec = RootSpec::new(
            2,
            vec![(CirclePoint::new(2.0 * PI / 3.0), 2), (CirclePoint::new(4.0 * PI / 3.0), 2)],
        )
        .unwrap();
        let f = interpolate(&spec).unwrap();
        let want = RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap();
        assert!(f.max_coefficient_diff(&want) < 1e-10, "{f:?}");
    }

    #[test]
    fn interpolate_one_minus_cos() {
        let spec = RootSpec::new(1, vec![(CirclePoint::new(0.0), 2)]).unwrap();
        let f = interpolate(&spec).unwrap();
        let want = RakedTrigPoly::new(1.0, vec![-1.0], vec![0.0]).unwrap();
        assert!(f.max_coefficient_diff(&want) < 1e-12);
    }

    #[test]
    fn spec_validation() {
        let p = CirclePoint::new;
        assert!(RootSpec::new(2, vec![(p(0.0), 2), (p(0.5), 1)]).is_err());
        assert!(RootSpec::new(2, vec![(p(0.0), 2), (p(1e-12), 2)]).is_err());
        assert!(RootSpec::new(2, vec![(p(0.0), 2), (p(PI), 2)]).is_err());
        assert!(RootSpec::new(2, vec![(p(0.0), 0), (p(0.5), 4)]).is_err());
        assert!(RootSpec::new(2, vec![(p(-0.3), 3), (p(0.5), 1)]).is_ok());
    }

    #[test]
    fn margin_examples() {
        let f = RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap();
        let roots = pts(&[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]);
        assert!(positivity_margin(&f, &roots, 0.1).unwrap() > 0.0);
        let s = RakedTrigPoly::sine(1, 1, 1.0);
        assert!((positivity_margin(&s, &[], 0.0).unwrap() + 1.0).abs() < 1e-14);
        assert_eq!(
            positivity_margin(&RakedTrigPoly::zero(2), &[], 0.0),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn face_examples() {
        let v = is_face(2, &pts(&[0.0, 0.9 * 2.0 * PI / 3.0])).unwrap();
        assert_eq!(v.status, FaceStatus::Face);
        assert!(v.certificate.unwrap().margin > 0.0);

        let v = is_face(2, &pts(&[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0])).unwrap();
        assert_eq!(v.status, FaceStatus::Face);
        let want = RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap();
        assert!(v.certificate.unwrap().poly.max_coefficient_diff(&want) < 1e-9);

        let d = 2.0 * PI / 5.0 - 0.05;
        assert_eq!(is_face(3, &pts(&[d, 0.0, -d])).unwrap().status, FaceStatus::Face);
    }

    #[test]
    fn long_edge_is_not_a_face() {
        let v = is_face(2, &pts(&[0.0, 2.0 * PI / 3.0 + 0.05])).unwrap();
        assert_eq!(v.status, FaceStatus::NotFace);
        assert!(v.witness.is_some());
    }

    #[test]
    fn padded_faces() {
        // A single point is a vertex; a short pair in B_3 is an edge.
        assert_eq!(is_face(3, &pts(&[1.0])).unwrap().status, FaceStatus::Face);
        let v = is_face(3, &pts(&[0.0, 0.8])).unwrap();
        assert_eq!(v.status, FaceStatus::Face);
        // The certificate is that of a padded triangle containing the edge.
        let cert = v.certificate.unwrap();
        assert_eq!(cert.roots.len(), 3);
        assert!(cert.margin > 0.0);
        let found = circle_roots(&cert.poly, DEFAULT_CLUSTER_TOL).unwrap();
        for p in pts(&[0.0, 0.8]) {
            assert!(found.iter().any(|r| r.multiplicity == 2 && r.point.distance(p) < 1e-6));
        }
    }

    #[test]
    fn invalid_face_queries() {
        assert!(is_face(2, &pts(&[0.3, 0.3])).is_err());
        assert!(is_face(2, &[]).is_err());
    }

    #[test]
    fn antipodal_pair_is_not_a_face() {
        let v = is_face(2, &pts(&[0.4, 0.4 + PI])).unwrap();
        assert_eq!(v.status, FaceStatus::NotFace);
    }

    #[test]
    fn verdict_json() {
        let v = is_face(2, &pts(&[0.0, 1.0])).unwrap();
        let s = serde_json::to_value(&v).unwrap();
        assert_eq!(s["status"], "FACE");
        assert_eq!(s["certificate"]["poly"]["k"], 2);
        assert!(s.get("witness").is_none());
    }
}
