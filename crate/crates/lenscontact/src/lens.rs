//! Arithmetic and chart structure of the lens space L(p,q).
//!
//! L(p,q) is covered by two solid-torus charts with cylindrical coordinates
//! (r, θ, z), glued over 0 < r < 1 by the transition
//!
//! ```text
//!   (r, θ, z) in chart 1  ↦  (1 − r, −qθ + mz, pθ + sz) in chart 0,
//! ```
//!
//! where m·p + s·q = 1. The torus T² acts by angle translations in chart 0
//! and by the conjugated action in chart 1.

use crate::error::{Error, Result};
use crate::rational::{gcd_i64, mod_inverse};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// An angle stored reduced to [0, 2π). Reduction is idempotent; comparisons
/// use the circle metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(f64);

impl Angle {
    pub fn new(value: f64) -> Self {
        let mut r = value.rem_euclid(TAU);
        if r >= TAU {
            r -= TAU;
        }
        Angle(r)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Distance on the circle: min(|a−b|, 2π − |a−b|).
    pub fn dist(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(TAU - d)
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::new(self.0 + rhs.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    Zero,
    One,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::Zero => Chart::One,
            Chart::One => Chart::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Chart::Zero => 0,
            Chart::One => 1,
        }
    }
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A point in one toroidal chart. `r = 0` is the core circle of the chart
/// (θ undefined there, stored as 0 by convention).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub r: f64,
    pub theta: Angle,
    pub z: Angle,
}

impl ChartPoint {
    pub fn new(chart: Chart, r: f64, theta: f64, z: f64) -> Self {
        assert!((0.0..=1.0).contains(&r), "radial coordinate out of [0,1]");
        let theta = if r == 0.0 { Angle::new(0.0) } else { Angle::new(theta) };
        ChartPoint {
            chart,
            r,
            theta,
            z: Angle::new(z),
        }
    }
}

/// The arithmetic data (p, q, m, s) of L(p,q) with m·p + s·q = 1.
///
/// Canonical representative: s ≡ q⁻¹ mod p with 0 ≤ s < p when p > 1,
/// and (m, s) = (1, 0) when p = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensParams {
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub s: i64,
}

/// Build canonical lens parameters from coprime (p, q), p >= 1.
pub fn make_lens(p: i64, q: i64) -> Result<LensParams> {
    if p <= 0 {
        return Err(Error::InvalidLens {
            p,
            q,
            reason: "p must be positive".into(),
        });
    }
    if gcd_i64(p, q) != 1 {
        return Err(Error::InvalidLens {
            p,
            q,
            reason: format!("gcd(p, q) = {} != 1", gcd_i64(p, q)),
        });
    }
    let (m, s) = if p == 1 {
        (1, 0)
    } else {
        let s = mod_inverse(q, p).ok_or_else(|| Error::InvalidLens {
            p,
            q,
            reason: "q has no inverse mod p".into(),
        })?;
        let num = 1 - s * q;
        debug_assert_eq!(num % p, 0);
        (num / p, s)
    };
    debug_assert_eq!(m * p + s * q, 1);
    Ok(LensParams { p, q, m, s })
}

impl LensParams {
    /// Whether q² ≡ 1 mod p (trivially true for p = 1).
    pub fn q_squared_is_one(&self) -> bool {
        (self.q * self.q - 1).rem_euclid(self.p) == 0
    }
}

/// Chart-1 → chart-0 transition on the overlap 0 < r < 1:
/// (r, θ, z) ↦ (1−r, −qθ + mz, pθ + sz).
pub fn transition(lens: &LensParams, pt: &ChartPoint) -> Result<ChartPoint> {
    if pt.chart != Chart::One {
        return Err(Error::NotComparable(
            "transition expects a chart-1 point; use transition_inverse".into(),
        ));
    }
    if pt.r <= 0.0 || pt.r >= 1.0 {
        return Err(Error::NotInOverlap { r: pt.r });
    }
    let t = pt.theta.value();
    let z = pt.z.value();
    Ok(ChartPoint::new(
        Chart::Zero,
        1.0 - pt.r,
        -(lens.q as f64) * t + lens.m as f64 * z,
        lens.p as f64 * t + lens.s as f64 * z,
    ))
}

/// Chart-0 → chart-1 transition, the exact integer-matrix inverse of
/// [`transition`]: (r, θ, z) ↦ (1−r, −sθ + mz, pθ + qz).
pub fn transition_inverse(lens: &LensParams, pt: &ChartPoint) -> Result<ChartPoint> {
    if pt.chart != Chart::Zero {
        return Err(Error::NotComparable(
            "transition_inverse expects a chart-0 point".into(),
        ));
    }
    if pt.r <= 0.0 || pt.r >= 1.0 {
        return Err(Error::NotInOverlap { r: pt.r });
    }
    let t = pt.theta.value();
    let z = pt.z.value();
    Ok(ChartPoint::new(
        Chart::One,
        1.0 - pt.r,
        -(lens.s as f64) * t + lens.m as f64 * z,
        lens.p as f64 * t + lens.q as f64 * z,
    ))
}

/// Map a point to the other chart, extending the transition to the closed
/// interval (cores land on the opposite core). Used by canonicalization.
fn swap_chart(lens: &LensParams, pt: &ChartPoint) -> ChartPoint {
    let t = pt.theta.value();
    let z = pt.z.value();
    let (theta, zeta) = match pt.chart {
        Chart::One => (
            -(lens.q as f64) * t + lens.m as f64 * z,
            lens.p as f64 * t + lens.s as f64 * z,
        ),
        Chart::Zero => (
            -(lens.s as f64) * t + lens.m as f64 * z,
            lens.p as f64 * t + lens.q as f64 * z,
        ),
    };
    ChartPoint::new(pt.chart.other(), 1.0 - pt.r, theta, zeta)
}

/// The T²-action. In chart 0 the pair (θ', z') translates (θ, z); in chart 1
/// it acts through the conjugated formulas, so that the action commutes with
/// the transition maps.
pub fn torus_action(lens: &LensParams, angles: (Angle, Angle), pt: &ChartPoint) -> ChartPoint {
    let (tp, zp) = (angles.0.value(), angles.1.value());
    match pt.chart {
        Chart::Zero => ChartPoint::new(
            Chart::Zero,
            pt.r,
            pt.theta.value() + tp,
            pt.z.value() + zp,
        ),
        Chart::One => ChartPoint::new(
            Chart::One,
            pt.r,
            pt.theta.value() - lens.s as f64 * tp + lens.m as f64 * zp,
            pt.z.value() + lens.p as f64 * tp + lens.q as f64 * zp,
        ),
    }
}

/// Canonical representation: the chart where r ≤ 1/2, ties resolved to
/// chart 0. Idempotent.
pub fn canonicalize(lens: &LensParams, pt: &ChartPoint) -> ChartPoint {
    if pt.r > 0.5 || (pt.r == 0.5 && pt.chart == Chart::One) {
        swap_chart(lens, pt)
    } else {
        *pt
    }
}

/// Max circle distance between the coordinates of two points in the same
/// chart (∞ if charts or radii differ beyond `rtol`).
pub fn point_distance(a: &ChartPoint, b: &ChartPoint) -> f64 {
    if a.chart != b.chart {
        return f64::INFINITY;
    }
    let dr = (a.r - b.r).abs();
    dr.max(a.theta.dist(b.theta)).max(a.z.dist(b.z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn make_lens_canonical_values() {
        // oracle: extended Euclid, s = q^{-1} mod p
        let l = make_lens(7, 3).unwrap();
        assert_eq!((l.m, l.s), (-2, 5));
        let l = make_lens(1, 0).unwrap();
        assert_eq!((l.m, l.s), (1, 0));
        let l = make_lens(7, 4).unwrap();
        assert_eq!((l.m, l.s), (-1, 2));
        // bezout: (-1)*7 + 2*4 = 1
        assert_eq!(l.m * 7 + l.s * 4, 1);
    }

    #[test]
    fn make_lens_rejects_bad_input() {
        assert!(make_lens(4, 2).is_err());
        assert!(make_lens(0, 1).is_err());
        assert!(make_lens(-3, 1).is_err());
    }

    #[test]
    fn transition_formula_l73() {
        let l = make_lens(7, 3).unwrap();
        let pt = ChartPoint::new(Chart::One, 0.3, 0.4, 1.1);
        let out = transition(&l, &pt).unwrap();
        assert!((out.r - 0.7).abs() < 1e-15);
        assert!(out.theta.dist(Angle::new(-3.0 * 0.4 + -2.0 * 1.1)) < 1e-12);
        assert!(out.z.dist(Angle::new(7.0 * 0.4 + 5.0 * 1.1)) < 1e-12);
    }

    #[test]
    fn transition_l10_swaps_angles() {
        let l = make_lens(1, 0).unwrap();
        let pt = ChartPoint::new(Chart::One, 0.25, 1.0, 2.0);
        let out = transition(&l, &pt).unwrap();
        assert!((out.r - 0.75).abs() < 1e-15);
        assert!(out.theta.dist(Angle::new(2.0)) < 1e-12);
        assert!(out.z.dist(Angle::new(1.0)) < 1e-12);
    }

    #[test]
    fn transition_rejects_core_and_boundary() {
        let l = make_lens(7, 3).unwrap();
        assert!(matches!(
            transition(&l, &ChartPoint::new(Chart::One, 0.0, 0.0, 1.0)),
            Err(Error::NotInOverlap { .. })
        ));
        assert!(matches!(
            transition(&l, &ChartPoint::new(Chart::One, 1.0, 0.0, 1.0)),
            Err(Error::NotInOverlap { .. })
        ));
    }

    #[test]
    fn angular_blocks_multiply_to_identity() {
        // [[-q, m], [p, s]] · [[-s, m], [p, q]] = I when mp + sq = 1
        for &(p, q) in &[(7i64, 3i64), (8, 3), (5, 2), (1, 0), (2, 1)] {
            let l = make_lens(p, q).unwrap();
            let fwd = [[-l.q, l.m], [l.p, l.s]];
            let inv = [[-l.s, l.m], [l.p, l.q]];
            let mut prod = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        prod[i][j] += fwd[i][k] * inv[k][j];
                    }
                }
            }
            assert_eq!(prod, [[1, 0], [0, 1]], "L({p},{q})");
        }
    }

    #[test]
    fn round_trip_many_points() {
        let l = make_lens(7, 3).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let pt = ChartPoint::new(
                Chart::One,
                rng.random_range(0.01..0.99),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
            );
            let back = transition_inverse(&l, &transition(&l, &pt).unwrap()).unwrap();
            assert!(point_distance(&pt, &back) < 1e-12);
        }
    }

    #[test]
    fn l10_transition_is_involution() {
        let l = make_lens(1, 0).unwrap();
        let pt = ChartPoint::new(Chart::One, 0.3, 0.7, 2.9);
        let once = transition(&l, &pt).unwrap();
        // forward and inverse angular maps agree for (m, s) = (1, 0), q = 0
        let inv = transition_inverse(&l, &once).unwrap();
        assert!(point_distance(&pt, &inv) < 1e-12);
        assert!(once.theta.dist(pt.z) < 1e-12 && once.z.dist(pt.theta) < 1e-12);
    }

    #[test]
    fn action_identity_and_group_law() {
        let l = make_lens(7, 3).unwrap();
        let pt = ChartPoint::new(Chart::One, 0.4, 1.0, 2.0);
        let id = (Angle::new(0.0), Angle::new(0.0));
        assert!(point_distance(&torus_action(&l, id, &pt), &pt) < 1e-12);

        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let a = (
                Angle::new(rng.random_range(0.0..TAU)),
                Angle::new(rng.random_range(0.0..TAU)),
            );
            let b = (
                Angle::new(rng.random_range(0.0..TAU)),
                Angle::new(rng.random_range(0.0..TAU)),
            );
            let ab = (a.0 + b.0, a.1 + b.1);
            let lhs = torus_action(&l, a, &torus_action(&l, b, &pt));
            let rhs = torus_action(&l, ab, &pt);
            assert!(point_distance(&lhs, &rhs) < 1e-11);
        }
    }

    #[test]
    fn action_commutes_with_transition() {
        let l = make_lens(7, 3).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let pt = ChartPoint::new(
                Chart::One,
                rng.random_range(0.05..0.95),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
            );
            let a = (
                Angle::new(rng.random_range(0.0..TAU)),
                Angle::new(rng.random_range(0.0..TAU)),
            );
            // act in chart 1, then move to chart 0
            let lhs = transition(&l, &torus_action(&l, a, &pt)).unwrap();
            // move to chart 0, then act there
            let rhs = torus_action(&l, a, &transition(&l, &pt).unwrap());
            assert!(
                point_distance(&lhs, &rhs) < 1e-12,
                "equivariance residual {}",
                point_distance(&lhs, &rhs)
            );
        }
    }

    #[test]
    fn canonicalize_rules() {
        let l = make_lens(7, 3).unwrap();
        let far = ChartPoint::new(Chart::One, 0.9, 1.0, 2.0);
        let canon = canonicalize(&l, &far);
        assert_eq!(canon.chart, Chart::Zero);
        assert!((canon.r - 0.1).abs() < 1e-15);

        let near = ChartPoint::new(Chart::Zero, 0.2, 1.0, 2.0);
        assert_eq!(canonicalize(&l, &near), near);

        let tie = ChartPoint::new(Chart::One, 0.5, 1.0, 2.0);
        assert_eq!(canonicalize(&l, &tie).chart, Chart::Zero);

        // idempotent
        for pt in [far, near, tie] {
            let once = canonicalize(&l, &pt);
            assert_eq!(canonicalize(&l, &once), once);
        }
    }

    #[test]
    fn angle_reduction_idempotent() {
        for &x in &[-10.0, -1e-18, 0.0, 1.0, TAU, TAU + 1.0, 1e9] {
            let a = Angle::new(x);
            assert!(a.value() >= 0.0 && a.value() < TAU, "{x} -> {}", a.value());
            assert_eq!(Angle::new(a.value()), a);
        }
    }
}
