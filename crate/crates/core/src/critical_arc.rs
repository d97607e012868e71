//! Critical arc lengths and the neighborliness threshold `φ_k`.
//!
//! For an arc `[0, L]` and even multiplicities `m_a + m_b = 2k`, the
//! polynomial with roots of orders `m_a` at 0 and `m_b` at `L` is positive
//! off its roots for short arcs. As `L` grows it first touches zero somewhere
//! in the opposite arc `[π, L + π]`; that `L` is the critical length of the
//! split, and `φ_k` is the smallest critical length over all splits.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::{Error, Result};
use crate::interpolation::{exclusion_radius, interpolate, positivity_margin, RootSpec};
use crate::roots::{minimize_on, Region};
use crate::trigpoly::RakedTrigPoly;

/// Default bisection tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Offset of the bisection bracket from `π/2` and `π`.
const BRACKET_OFFSET: f64 = 1e-6;

/// Even multiplicities at the two ends of an arc, `m_a + m_b = 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Split {
    pub m_a: usize,
    pub m_b: usize,
}

impl Split {
    pub fn new(m_a: usize, m_b: usize) -> Result<Self> {
        if m_a == 0 || m_b == 0 || m_a % 2 != 0 || m_b % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "split ({m_a}, {m_b}) needs positive even multiplicities"
            )));
        }
        Ok(Split { m_a, m_b })
    }

    pub fn k(self) -> usize {
        (self.m_a + self.m_b) / 2
    }

    /// `m_a <= m_b`; reflecting the arc swaps its endpoints.
    pub fn canonical(self) -> Self {
        Split {
            m_a: self.m_a.min(self.m_b),
            m_b: self.m_a.max(self.m_b),
        }
    }

    fn check_k(self, k: usize) -> Result<()> {
        if self.k() != k {
            return Err(Error::InvalidInput(format!(
                "split ({}, {}) does not sum to 2k = {}",
                self.m_a,
                self.m_b,
                2 * k
            )));
        }
        Ok(())
    }
}

/// Canonical splits `(2, 2k-2), (4, 2k-4), …` with `m_a <= m_b`.
pub fn canonical_splits(k: usize) -> Vec<Split> {
    (1..=k / 2)
        .map(|i| Split {
            m_a: 2 * i,
            m_b: 2 * k - 2 * i,
        })
        .collect()
}

/// Every ordered split `(2m, 2n)` with `m + n = k`.
pub fn ordered_splits(k: usize) -> Vec<Split> {
    (1..k)
        .map(|m| Split {
            m_a: 2 * m,
            m_b: 2 * (k - m),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalArcResult {
    pub split: Split,
    /// Critical length `L*`.
    pub length: f64,
    /// Touching polynomial at `L*`.
    pub poly: RakedTrigPoly,
    /// Where the touching polynomial meets zero in the opposite arc.
    pub extra_root: CirclePoint,
    pub bisection_width: f64,
}

/// The polynomial with constant term 1 and roots of orders `m_a` at 0 and
/// `m_b` at `L`.
pub fn endpoint_poly(k: usize, split: Split, length: f64) -> Result<RakedTrigPoly> {
    split.check_k(k)?;
    if !(length > 0.0 && length < PI) {
        return Err(Error::InvalidInput(format!("arc length {length} outside (0, π)")));
    }
    let spec = RootSpec::new(
        k,
        vec![
            (CirclePoint::new(0.0), split.m_a),
            (CirclePoint::new(length), split.m_b),
        ],
    )?;
    interpolate(&spec)
}

/// Minimum of [`endpoint_poly`] over the closed opposite arc `[π, L + π]`.
pub fn opposite_min(k: usize, split: Split, length: f64) -> Result<(CirclePoint, f64)> {
    let f = endpoint_poly(k, split, length)?;
    Ok(minimize_on(&f, &Region::Arcs(vec![(PI, length)])))
}

/// Critical length of `split` by bisection on the sign of [`opposite_min`].
pub fn critical_length(k: usize, split: Split, tol: f64) -> Result<CriticalArcResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    split.check_k(k)?;
    let value = |l: f64| opposite_min(k, split, l).map(|(_, v)| v);
    let mut lo = FRAC_PI_2 + BRACKET_OFFSET;
    if !(value(lo)? > 0.0) {
        return Err(Error::BracketFailure { lo, hi: PI - BRACKET_OFFSET });
    }
    // Close to π the two roots become nearly antipodal and the interpolation
    // system degenerates; back off until it is solvable.
    let mut hi = None;
    for offset in [BRACKET_OFFSET, 1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.4] {
        match value(PI - offset) {
            Ok(v) if v < 0.0 => {
                hi = Some(PI - offset);
                break;
            }
            Ok(_) => break,
            Err(Error::SingularSystem(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let Some(mut hi) = hi else {
        return Err(Error::BracketFailure { lo, hi: PI - BRACKET_OFFSET });
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if value(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let length = 0.5 * (lo + hi);
    let poly = endpoint_poly(k, split, length)?;
    let (extra_root, _) = minimize_on(&poly, &Region::Arcs(vec![(PI, length)]));
    Ok(CriticalArcResult {
        split,
        length,
        poly,
        extra_root,
        bisection_width: hi - lo,
    })
}

/// Critical lengths of all canonical splits, in split order.
pub fn critical_lengths(k: usize, tol: f64) -> Result<Vec<CriticalArcResult>> {
    if k < 2 {
        return Err(Error::InvalidInput("φ_k needs k >= 2".into()));
    }
    canonical_splits(k)
        .into_iter()
        .map(|s| critical_length(k, s, tol))
        .collect()
}

/// `φ_k` and the split attaining it.
pub fn phi(k: usize, tol: f64) -> Result<(f64, Split)> {
    let best = critical_lengths(k, tol)?
        .into_iter()
        .min_by(|x, y| x.length.total_cmp(&y.length))
        .expect("k >= 2 has a split");
    Ok((best.length, best.split))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemicircleReport {
    pub k: usize,
    /// `(split, margin)` for every ordered split at `L = π/2`.
    pub margins: Vec<(Split, f64)>,
    pub min_margin: f64,
}

/// Positivity of the endpoint polynomials of a quarter circle, off their roots.
pub fn semicircle_check(k: usize) -> Result<SemicircleReport> {
    if k < 2 {
        return Err(Error::InvalidInput("needs k >= 2".into()));
    }
    let ends = [CirclePoint::new(0.0), CirclePoint::new(FRAC_PI_2)];
    let radius = exclusion_radius(&ends);
    let mut margins = Vec::new();
    for split in ordered_splits(k) {
        let f = endpoint_poly(k, split, FRAC_PI_2)?;
        margins.push((split, positivity_margin(&f, &ends, radius)?));
    }
    let min_margin = margins.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    Ok(SemicircleReport {
        k,
        margins,
        min_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::circle_roots;

    fn split(a: usize, b: usize) -> Split {
        Split::new(a, b).unwrap()
    }

    #[test]
    fn split_enumeration() {
        assert_eq!(canonical_splits(2), vec![split(2, 2)]);
        assert_eq!(canonical_splits(5), vec![split(2, 8), split(4, 6)]);
        assert_eq!(ordered_splits(5).len(), 4);
        assert!(Split::new(3, 5).is_err());
    }

    #[test]
    fn equilateral_endpoint_poly() {
        let f = endpoint_poly(2, split(2, 2), 2.0 * PI / 3.0).unwrap();
        let want = RakedTrigPoly::new(1.0, vec![0.0, -1.0], vec![0.0, 0.0]).unwrap();
        assert!(f.max_coefficient_diff(&want) < 1e-9);
        let roots = circle_roots(&f, 1e-7).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.multiplicity == 2));
        let (t, v) = opposite_min(2, split(2, 2), 2.0 * PI / 3.0).unwrap();
        assert!(v.abs() < 1e-9);
        assert!(t.distance(CirclePoint::new(4.0 * PI / 3.0)) < 1e-6);
    }

    #[test]
    fn opposite_min_signs() {
        assert!(opposite_min(2, split(2, 2), 0.5).unwrap().1 > 0.0);
        assert!(opposite_min(2, split(2, 2), 2.5).unwrap().1 < 0.0);
        let f = endpoint_poly(3, split(2, 4), 0.3).unwrap();
        let pts = [CirclePoint::new(0.0), CirclePoint::new(0.3)];
        assert!(positivity_margin(&f, &pts, 0.05).unwrap() > 0.0);
    }

    #[test]
    fn phi_two() {
        let (l, s) = phi(2, 1e-10).unwrap();
        assert!((l - 2.0 * PI / 3.0).abs() < 1e-8);
        assert_eq!(s, split(2, 2));
    }

    #[test]
    fn quarter_circle_positive() {
        for k in 2..=4 {
            assert!(semicircle_check(k).unwrap().min_margin > 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(endpoint_poly(2, split(2, 4), 1.0).is_err());
        assert!(endpoint_poly(2, split(2, 2), PI).is_err());
        assert!(critical_length(2, split(2, 2), 0.0).is_err());
    }
}
