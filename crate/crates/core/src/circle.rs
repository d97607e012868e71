//! Points and open arcs on the circle `R / 2πZ`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Reduce an angle to its representative in `[0, 2π)`.
pub fn canonicalize(angle: f64) -> f64 {
    let r = angle - TAU * (angle / TAU).floor();
    if r >= TAU || r < 0.0 {
        0.0
    } else {
        r
    }
}

/// Length of the shorter arc between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = canonicalize(a - b);
    d.min(TAU - d)
}

/// An angle on the circle, always stored in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct CirclePoint(f64);

impl CirclePoint {
    pub fn new(angle: f64) -> Self {
        CirclePoint(canonicalize(angle))
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    /// Signed representative in `(-π, π]`.
    pub fn signed(self) -> f64 {
        if self.0 > PI {
            self.0 - TAU
        } else {
            self.0
        }
    }

    pub fn antipode(self) -> Self {
        CirclePoint::new(self.0 + PI)
    }

    pub fn rotate(self, by: f64) -> Self {
        CirclePoint::new(self.0 + by)
    }

    pub fn distance(self, other: CirclePoint) -> f64 {
        circular_distance(self.0, other.0)
    }

    /// Counterclockwise travel from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: CirclePoint) -> f64 {
        canonicalize(other.0 - self.0)
    }
}

impl From<f64> for CirclePoint {
    fn from(angle: f64) -> Self {
        CirclePoint::new(angle)
    }
}

impl From<CirclePoint> for f64 {
    fn from(p: CirclePoint) -> f64 {
        p.0
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Open arc traversed counterclockwise from `start`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    start: CirclePoint,
    length: f64,
}

impl Arc {
    /// Returns `None` unless `0 < length < 2π`.
    pub fn new(start: CirclePoint, length: f64) -> Option<Self> {
        (length > 0.0 && length < TAU).then_some(Arc { start, length })
    }

    pub fn start(&self) -> CirclePoint {
        self.start
    }

    pub fn end(&self) -> CirclePoint {
        self.start.rotate(self.length)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn contains(&self, p: CirclePoint) -> bool {
        let d = self.start.ccw_to(p);
        d > 0.0 && d < self.length
    }

    /// The arc rotated by half a turn.
    pub fn opposite(&self) -> Arc {
        Arc {
            start: self.start.antipode(),
            length: self.length,
        }
    }
}

/// Smallest arc containing all points, as `(start, length)`; the complement of
/// the largest gap between cyclically consecutive points. `None` for no points.
pub fn spanning_arc(points: &[CirclePoint]) -> Option<(CirclePoint, f64)> {
    if points.is_empty() {
        return None;
    }
    let mut angles: Vec<f64> = points.iter().map(|p| p.angle()).collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    let n = angles.len();
    let (mut best_gap, mut best_idx) = (angles[0] + TAU - angles[n - 1], 0);
    for i in 1..n {
        let gap = angles[i] - angles[i - 1];
        if gap > best_gap {
            best_gap = gap;
            best_idx = i;
        }
    }
    Some((CirclePoint::new(angles[best_idx]), TAU - best_gap))
}

/// True when all points fit in some open semicircle.
pub fn in_open_semicircle(points: &[CirclePoint]) -> bool {
    match spanning_arc(points) {
        Some((_, len)) => len < PI,
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_range() {
        for &a in &[0.0, -1e-17, TAU, -TAU, 7.0 * PI, -0.5, 1e6] {
            let c = canonicalize(a);
            assert!((0.0..TAU).contains(&c), "{a} -> {c}");
        }
        assert!((canonicalize(1.0 + TAU) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn antipode_and_distance() {
        let p = CirclePoint::new(0.25);
        assert!((p.antipode().angle() - (0.25 + PI)).abs() < 1e-15);
        assert!((CirclePoint::new(0.1).distance(CirclePoint::new(TAU - 0.1)) - 0.2).abs() < 1e-14);
        assert!((CirclePoint::new(-PI / 2.0).signed() + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn arc_is_open() {
        let arc = Arc::new(CirclePoint::new(TAU - 0.5), 1.0).unwrap();
        assert!(arc.contains(CirclePoint::new(0.0)));
        assert!(arc.contains(CirclePoint::new(0.4)));
        assert!(!arc.contains(arc.start()));
        assert!(!arc.contains(arc.end()));
        assert!(arc.opposite().contains(CirclePoint::new(PI)));
        assert!(Arc::new(CirclePoint::new(0.0), TAU).is_none());
    }

    #[test]
    fn spanning_arc_wraps() {
        let pts: Vec<_> = [-0.3, 0.2, 0.1].iter().map(|&a| CirclePoint::new(a)).collect();
        let (start, len) = spanning_arc(&pts).unwrap();
        assert!((start.signed() + 0.3).abs() < 1e-14);
        assert!((len - 0.5).abs() < 1e-14);
        assert!(in_open_semicircle(&pts));
        let tri: Vec<_> = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]
            .iter()
            .map(|&a| CirclePoint::new(a))
            .collect();
        assert!(!in_open_semicircle(&tri));
    }
}
