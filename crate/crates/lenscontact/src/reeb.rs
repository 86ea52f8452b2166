//! Reeb vector fields, flows, monodromy rotation numbers, and the
//! quasi-regular/irregular classification.
//!
//! For a rotationally invariant form f(r)dz + g(r)dθ the Reeb field solves
//! α(R) = 1, dα(R,·) = 0, which gives
//!
//! ```text
//!   R = (g'·∂z − f'·∂θ) / (f·g' − g·f'),
//! ```
//!
//! with the r → 0 limit dz/dt = 1/f(0), dθ/dt = −f''(0)/(g''(0)·f(0)).
//! Flows preserve r, so orbits live on the tori {r = const}; the cores are
//! periodic with minimal period τᵢ and the monodromy of the linearized
//! return map about a core is a rotation by 2π·φᵢ.

use crate::error::{Error, Result};
use crate::form::{ContactForm, RadialCoefficients};
use crate::lens::{Chart, ChartPoint};
use crate::rational::{big_ratio, convergents, mod1, mod1_denominator, rational_detect};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::f64::consts::TAU;

const CORE_RADIUS: f64 = 1e-6;

/// Reeb velocity (dθ/dt, dz/dt) at radius r for generic coefficients.
pub fn reeb_generic<C: RadialCoefficients + ?Sized>(coeffs: &C, r: f64) -> Result<(f64, f64)> {
    if r < CORE_RADIUS {
        let f0 = coeffs.f(0.0, 0);
        let g2 = coeffs.g(0.0, 2);
        let f2 = coeffs.f(0.0, 2);
        if f0.abs() < 1e-300 || g2.abs() < 1e-300 {
            return Err(Error::NotContactAtPoint { r });
        }
        return Ok((-f2 / (g2 * f0), 1.0 / f0));
    }
    let f = coeffs.f(r, 0);
    let g = coeffs.g(r, 0);
    let f1 = coeffs.f(r, 1);
    let g1 = coeffs.g(r, 1);
    let w = f * g1 - g * f1;
    let scale = (f * g1).abs() + (g * f1).abs();
    if w.abs() <= 1e-12 * scale.max(1e-300) {
        return Err(Error::NotContactAtPoint { r });
    }
    Ok((-f1 / w, g1 / w))
}

/// Exact Reeb flow of a triple form for time t, in the point's own chart:
/// θ += 2π·φᵢ·t/τᵢ, z += 2π·t/τᵢ, r unchanged.
pub fn flow(form: &ContactForm, pt: &ChartPoint, t: f64) -> ChartPoint {
    let tau = form.tau(pt.chart);
    let phi = form.phi(pt.chart);
    ChartPoint::new(
        pt.chart,
        pt.r,
        pt.theta.value() + TAU * phi * t / tau,
        pt.z.value() + TAU * t / tau,
    )
}

/// Fixed-step classical 4th-order integration of the generic Reeb field.
/// The radial velocity is identically zero, so r is carried unchanged.
pub fn flow_ode<C: RadialCoefficients + ?Sized>(
    coeffs: &C,
    pt: &ChartPoint,
    t: f64,
    dt: f64,
) -> Result<ChartPoint> {
    const MAX_STEPS: usize = 20_000_000;
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Domain(format!("dt = {dt} must be positive")));
    }
    let steps = (t.abs() / dt).ceil() as usize;
    if steps > MAX_STEPS {
        return Err(Error::Numeric(format!(
            "flow budget exceeded: {steps} steps requested, {MAX_STEPS} allowed"
        )));
    }
    let sign = t.signum();
    let mut theta = pt.theta.value();
    let mut z = pt.z.value();
    // Kahan compensation keeps the accumulated angle error near one ulp of
    // the final value instead of growing with the step count
    let (mut c_theta, mut c_z) = (0.0f64, 0.0f64);
    let kahan_add = |acc: &mut f64, comp: &mut f64, x: f64| {
        let y = x - *comp;
        let t = *acc + y;
        *comp = (t - *acc) - y;
        *acc = t;
    };
    let mut remaining = t.abs();
    // state is (θ, z, r) with ṙ = 0; the rate is queried per RK4 stage
    let rate = |r: f64| reeb_generic(coeffs, r);
    while remaining > 0.0 {
        let h = sign * dt.min(remaining);
        let (k1t, k1z) = rate(pt.r)?;
        let (k2t, k2z) = rate(pt.r)?;
        let (k3t, k3z) = rate(pt.r)?;
        let (k4t, k4z) = rate(pt.r)?;
        kahan_add(&mut theta, &mut c_theta, h * (k1t + 2.0 * k2t + 2.0 * k3t + k4t) / 6.0);
        kahan_add(&mut z, &mut c_z, h * (k1z + 2.0 * k2z + 2.0 * k3z + k4z) / 6.0);
        remaining -= dt;
    }
    Ok(ChartPoint::new(pt.chart, pt.r, theta, z))
}

/// Rotation number of the core orbit of the given coefficients, obtained by
/// integrating the variational equations of the flow linearized about the
/// core in Cartesian chart coordinates over one minimal period. Returns the
/// rotation angle / 2π of the 2×2 return map, reduced mod 1.
///
/// Errors with a model violation if the return map fails to be a rotation
/// (orthogonality residual above 1e-8), which signals either a bug or a
/// non-K-contact input.
pub fn monodromy_rotation<C: RadialCoefficients + ?Sized>(
    coeffs: &C,
    steps: usize,
) -> Result<f64> {
    let period = coeffs.core_period();
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::ModelViolation(format!(
            "core period {period} is not positive"
        )));
    }
    // Jacobian of the (x, y) velocity at the core: the field is
    // (−y·ω(r), x·ω(r)) in Cartesian coordinates, so the linearization is
    // the constant rotation generator with rate ω(0).
    let jac = |_t: f64| -> Result<[[f64; 2]; 2]> {
        let (omega, _) = reeb_generic(coeffs, 0.0)?;
        Ok([[0.0, -omega], [omega, 0.0]])
    };
    let h = period / steps as f64;
    let mut y = [[1.0f64, 0.0], [0.0, 1.0]];
    let mul = |a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]| -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    };
    let add_scaled = |a: &[[f64; 2]; 2], b: &[[f64; 2]; 2], s: f64| -> [[f64; 2]; 2] {
        let mut out = *a;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += s * b[i][j];
            }
        }
        out
    };
    for step in 0..steps {
        let t = step as f64 * h;
        let a1 = jac(t)?;
        let k1 = mul(&a1, &y);
        let a2 = jac(t + 0.5 * h)?;
        let k2 = mul(&a2, &add_scaled(&y, &k1, 0.5 * h));
        let k3 = mul(&a2, &add_scaled(&y, &k2, 0.5 * h));
        let a4 = jac(t + h)?;
        let k4 = mul(&a4, &add_scaled(&y, &k3, h));
        for i in 0..2 {
            for j in 0..2 {
                y[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
            }
        }
    }
    // the return map must be a rotation matrix
    let det = y[0][0] * y[1][1] - y[0][1] * y[1][0];
    let ortho = [
        y[0][0] * y[0][0] + y[1][0] * y[1][0] - 1.0,
        y[0][1] * y[0][1] + y[1][1] * y[1][1] - 1.0,
        y[0][0] * y[0][1] + y[1][0] * y[1][1],
    ];
    let residual = ortho.iter().fold((det - 1.0).abs(), |m, v| m.max(v.abs()));
    if residual > 1e-8 {
        return Err(Error::ModelViolation(format!(
            "return map is not a rotation (residual {residual:.3e})"
        )));
    }
    let angle = y[1][0].atan2(y[0][0]) / TAU;
    Ok(angle.rem_euclid(1.0))
}

/// Periodicity data for one Reeb orbit.
#[derive(Debug, Clone)]
pub struct OrbitClassification {
    pub periodic: bool,
    pub minimal_period: Option<f64>,
    pub rotation_number: Option<f64>,
    pub is_core: bool,
    pub radius: f64,
    pub chart: Chart,
}

/// Rationality certificate: the parameter window scanned and the best
/// rational approximation found inside it.
#[derive(Debug, Clone, Copy)]
pub struct Certificate {
    pub dmax: i64,
    pub tol: f64,
    /// (n, d, |x − n/d|) minimizing the error among candidates with d ≤ dmax.
    pub best: Option<(i64, i64, f64)>,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    /// φ₀ = n/d at the certificate; all orbits periodic.
    QuasiRegular { numerator: i64, denominator: i64 },
    /// no rational value within the certificate window; exactly two
    /// periodic orbits (the cores).
    Irregular,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub orbits: Vec<OrbitClassification>,
    /// exceptional fiber orders (a₀, a₁) for the quasi-regular case
    pub orders: Option<(BigInt, BigInt)>,
    /// generic minimal period d·τ₀ for the quasi-regular case
    pub generic_period: Option<f64>,
    /// minimum recurrence gap of a generic orbit for the irregular case
    pub recurrence_gap: Option<f64>,
}

fn best_approximation(x: f64, dmax: i64) -> Option<(i64, i64, f64)> {
    let convs = convergents(x, dmax);
    let mut best: Option<(i64, i64, f64)> = None;
    let mut consider = |n: i64, d: i64| {
        let err = (x - n as f64 / d as f64).abs();
        if best.is_none_or(|b| err < b.2) {
            best = Some((n, d, err));
        }
    };
    for &(n, d) in &convs {
        consider(n, d);
    }
    if convs.len() >= 2 {
        let (h1, k1) = convs[convs.len() - 1];
        let (h0, k0) = convs[convs.len() - 2];
        let t = (dmax - k0) / k1;
        if t > 0 && k0 + t * k1 <= dmax {
            consider(h0 + t * h1, k0 + t * k1);
        }
    }
    best
}

/// Classify the Reeb dynamics of a form at an explicit rationality
/// certificate (dmax, tol).
pub fn classify(form: &ContactForm, dmax: i64, tol: f64) -> Result<Classification> {
    let detected = rational_detect(form.phi0, dmax, tol);
    let certificate = Certificate {
        dmax,
        tol,
        best: best_approximation(form.phi0, dmax),
    };
    let cores = vec![
        OrbitClassification {
            periodic: true,
            minimal_period: Some(form.tau0),
            rotation_number: Some(form.phi0.rem_euclid(1.0)),
            is_core: true,
            radius: 0.0,
            chart: Chart::Zero,
        },
        OrbitClassification {
            periodic: true,
            minimal_period: Some(form.tau1),
            rotation_number: Some(form.phi1.rem_euclid(1.0)),
            is_core: true,
            radius: 0.0,
            chart: Chart::One,
        },
    ];
    match detected {
        Some((n, d)) => {
            // exact arithmetic for the discrete invariants
            let phi0 = big_ratio(n, d);
            let p = BigInt::from(form.lens.p);
            let s = BigInt::from(form.lens.s);
            // τ₀/τ₁ = q + p·φ₀ = u/v reduced
            let ratio = big_ratio(form.lens.q, 1) + big_ratio(form.lens.p, 1) * &phi0;
            let (u, v) = (ratio.numer().clone(), ratio.denom().clone());
            // φ₁ = (v − s·u)/(p·u)
            let phi1 = num_rational::BigRational::new(&v - &s * &u, &p * &u);
            let a0 = mod1_denominator(&mod1(&phi0));
            let a1 = mod1_denominator(&mod1(&phi1));
            let a0_f = a0.to_f64().ok_or_else(|| {
                Error::Numeric("exceptional order a0 exceeds f64 range".into())
            })?;
            let a1_f = a1.to_f64().ok_or_else(|| {
                Error::Numeric("exceptional order a1 exceeds f64 range".into())
            })?;
            let generic_period = a0_f * form.tau0;
            let cross = a1_f * form.tau1;
            if (cross - generic_period).abs() > 1e-9 * generic_period.abs().max(1.0) {
                return Err(Error::ModelViolation(format!(
                    "order consistency a0·τ0 = {generic_period} vs a1·τ1 = {cross}"
                )));
            }
            let mut orbits = cores;
            orbits.push(OrbitClassification {
                periodic: true,
                minimal_period: Some(generic_period),
                rotation_number: Some(0.0),
                is_core: false,
                radius: 0.5,
                chart: Chart::Zero,
            });
            Ok(Classification {
                verdict: Verdict::QuasiRegular {
                    numerator: n,
                    denominator: d,
                },
                certificate,
                orbits,
                orders: Some((a0, a1)),
                generic_period: Some(generic_period),
                recurrence_gap: None,
            })
        }
        None => {
            let sample = ChartPoint::new(Chart::Zero, 0.5, 0.0, 0.0);
            let gap = recurrence_gap(form, &sample, 1e3 * form.tau0, form.tau0 / 8.0);
            let mut orbits = cores;
            orbits.push(OrbitClassification {
                periodic: false,
                minimal_period: None,
                rotation_number: None,
                is_core: false,
                radius: 0.5,
                chart: Chart::Zero,
            });
            Ok(Classification {
                verdict: Verdict::Irregular,
                certificate,
                orbits,
                orders: None,
                generic_period: None,
                recurrence_gap: Some(gap),
            })
        }
    }
}

/// Minimum distance (max of the two circle distances) between the starting
/// point and the orbit samples over (w, horizon], where the exclusion
/// window w is half the chart period. Reports the observed gap; a verdict
/// belongs to [`classify`].
pub fn recurrence_gap(form: &ContactForm, pt: &ChartPoint, horizon: f64, dt: f64) -> f64 {
    let exclusion = 0.5 * form.tau(pt.chart);
    let mut t = dt;
    let mut gap = f64::INFINITY;
    while t <= horizon {
        if t > exclusion {
            let moved = flow(form, pt, t);
            let d = pt
                .theta
                .dist(moved.theta)
                .max(pt.z.dist(moved.z));
            gap = gap.min(d);
        }
        t += dt;
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{from_periods, FormCoefficients};
    use crate::lens::{make_lens, point_distance, torus_action, Angle};
    use rand::{Rng, SeedableRng};

    fn l73_sqrt2() -> ContactForm {
        from_periods(make_lens(7, 3).unwrap(), 1.0, 2.0f64.sqrt()).unwrap()
    }

    fn reeb_residuals(c: &FormCoefficients, r: f64) -> (f64, f64) {
        let (dtheta, dz) = reeb_generic(c, r).unwrap();
        // α(R) = f·ż + g·θ̇
        let alpha_r = c.f(r, 0) * dz + c.g(r, 0) * dtheta;
        // dα(R, ∂r) = −(f'·ż + g'·θ̇); the ∂θ and ∂z contractions vanish
        // because R has no radial component
        let dalpha_r = c.f(r, 1) * dz + c.g(r, 1) * dtheta;
        ((alpha_r - 1.0).abs(), dalpha_r.abs())
    }

    #[test]
    fn reeb_equations_hold_everywhere() {
        let form = l73_sqrt2();
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for chart in [Chart::Zero, Chart::One] {
            let c = form.coefficients(chart);
            for _ in 0..1000 {
                let r = rng.random_range(0.0..1.0);
                let (e_alpha, e_dalpha) = reeb_residuals(&c, r);
                assert!(e_alpha < 1e-10, "chart {chart} r={r}: {e_alpha}");
                assert!(e_dalpha < 1e-10, "chart {chart} r={r}: {e_dalpha}");
            }
        }
    }

    /// f = τ/2π constant, g = r²/2: the flat model around a core.
    struct FlatModel {
        tau: f64,
    }

    impl RadialCoefficients for FlatModel {
        fn f(&self, _r: f64, order: usize) -> f64 {
            if order == 0 {
                self.tau / TAU
            } else {
                0.0
            }
        }
        fn g(&self, r: f64, order: usize) -> f64 {
            match order {
                0 => 0.5 * r * r,
                1 => r,
                2 => 1.0,
                _ => 0.0,
            }
        }
    }

    #[test]
    fn flat_model_velocity() {
        use crate::form::RadialCoefficients as _;
        let flat = FlatModel { tau: 3.0 };
        for r in [0.0, 1e-8, 0.3, 0.9] {
            let (dtheta, dz) = reeb_generic(&flat, r).unwrap();
            assert!(dtheta.abs() < 1e-12, "r={r}");
            assert!((dz - TAU / 3.0).abs() < 1e-12, "r={r}");
        }
        assert!((flat.core_period() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn triple_form_velocity_is_constant() {
        let form = l73_sqrt2();
        let c = form.coefficients(Chart::Zero);
        let expect = (TAU * form.phi0 / form.tau0, TAU / form.tau0);
        for r in [0.0, 1e-9, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
            let (dtheta, dz) = reeb_generic(&c, r).unwrap();
            assert!((dtheta - expect.0).abs() < 1e-9, "r={r}");
            assert!((dz - expect.1).abs() < 1e-9, "r={r}");
        }
    }

    #[test]
    fn flow_identity_and_core_period() {
        let form = l73_sqrt2();
        let pt = ChartPoint::new(Chart::Zero, 0.3, 1.0, 2.0);
        assert!(point_distance(&flow(&form, &pt, 0.0), &pt) < 1e-15);

        let core = ChartPoint::new(Chart::Zero, 0.0, 0.0, 1.0);
        let back = flow(&form, &core, form.tau0);
        assert!(point_distance(&back, &core) < 1e-12);
        let core1 = ChartPoint::new(Chart::One, 0.0, 0.0, 1.0);
        let back1 = flow(&form, &core1, form.tau1);
        assert!(point_distance(&back1, &core1) < 1e-12);
    }

    #[test]
    fn flow_commutes_with_torus_action() {
        let form = l73_sqrt2();
        let lens = form.lens;
        let pt = ChartPoint::new(Chart::Zero, 0.4, 0.7, 2.2);
        let ang = (Angle::new(1.1), Angle::new(2.3));
        let lhs = flow(&form, &torus_action(&lens, ang, &pt), 3.7);
        let rhs = torus_action(&lens, ang, &flow(&form, &pt, 3.7));
        assert!(point_distance(&lhs, &rhs) < 1e-11);
    }

    #[test]
    fn ode_flow_matches_exact_flow() {
        let form = l73_sqrt2();
        let c = form.coefficients(Chart::Zero);
        let pt = ChartPoint::new(Chart::Zero, 0.35, 0.2, 0.9);
        let t = 100.0;
        let numerical = flow_ode(&c, &pt, t, 1e-3).unwrap();
        let exact = flow(&form, &pt, t);
        assert!(
            point_distance(&numerical, &exact) < 1e-9,
            "{}",
            point_distance(&numerical, &exact)
        );
    }

    #[test]
    fn ode_flow_time_reversal() {
        let form = l73_sqrt2();
        let c = form.coefficients(Chart::One);
        let pt = ChartPoint::new(Chart::One, 0.62, 1.0, 0.1);
        let fwd = flow_ode(&c, &pt, 12.5, 1e-3).unwrap();
        let back = flow_ode(&c, &fwd, -12.5, 1e-3).unwrap();
        assert!(point_distance(&back, &pt) < 1e-9);
        assert_eq!(back.r, pt.r, "r must be carried untouched");
    }

    #[test]
    fn ode_flow_budget() {
        let form = l73_sqrt2();
        let c = form.coefficients(Chart::Zero);
        let pt = ChartPoint::new(Chart::Zero, 0.5, 0.0, 0.0);
        assert!(matches!(
            flow_ode(&c, &pt, 1e9, 1e-3),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn monodromy_matches_rotation_numbers() {
        let form = l73_sqrt2();
        let m0 = monodromy_rotation(&form.coefficients(Chart::Zero), 10_000).unwrap();
        let m1 = monodromy_rotation(&form.coefficients(Chart::One), 10_000).unwrap();
        let wrap = |x: f64| x.rem_euclid(1.0);
        let d0 = (m0 - wrap(form.phi0)).abs().min(1.0 - (m0 - wrap(form.phi0)).abs());
        let d1 = (m1 - wrap(form.phi1)).abs().min(1.0 - (m1 - wrap(form.phi1)).abs());
        assert!(d0 < 1e-8, "chart 0: {m0} vs {}", wrap(form.phi0));
        assert!(d1 < 1e-8, "chart 1: {m1} vs {}", wrap(form.phi1));
    }

    #[test]
    fn classify_hopf_like_quasi_regular() {
        let lens = make_lens(1, 0).unwrap();
        let form = from_periods(lens, 2.0, 3.0).unwrap();
        let c = classify(&form, 1_000_000, 1e-12).unwrap();
        match c.verdict {
            Verdict::QuasiRegular {
                numerator,
                denominator,
            } => {
                assert_eq!((numerator, denominator), (2, 3));
            }
            _ => panic!("expected quasi-regular"),
        }
        let (a0, a1) = c.orders.unwrap();
        assert_eq!(a0, BigInt::from(3));
        assert_eq!(a1, BigInt::from(2));
        assert!((c.generic_period.unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn classify_equal_periods_regular() {
        let lens = make_lens(1, 0).unwrap();
        let form = from_periods(lens, 1.0, 1.0).unwrap();
        let c = classify(&form, 1_000_000, 1e-12).unwrap();
        assert!(matches!(c.verdict, Verdict::QuasiRegular { .. }));
        let (a0, a1) = c.orders.unwrap();
        assert_eq!(a0, BigInt::from(1));
        assert_eq!(a1, BigInt::from(1));
        assert!((c.generic_period.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_irrational_ratio_irregular() {
        let form = l73_sqrt2();
        let c = classify(&form, 1_000_000, 1e-12).unwrap();
        assert!(matches!(c.verdict, Verdict::Irregular));
        let periodic: Vec<_> = c.orbits.iter().filter(|o| o.periodic).collect();
        assert_eq!(periodic.len(), 2);
        assert!(periodic.iter().all(|o| o.is_core));
        assert!(c.recurrence_gap.unwrap() > 0.0);
        // certificate carries the best rejected approximation
        let best = c.certificate.best.unwrap();
        assert!(best.2 > 1e-12);
    }

    #[test]
    fn recurrence_gap_hits_zero_for_rational() {
        let lens = make_lens(1, 0).unwrap();
        let form = from_periods(lens, 2.0, 3.0).unwrap();
        let pt = ChartPoint::new(Chart::Zero, 0.5, 1.0, 0.3);
        // generic period is 6 = 3·τ₀; sample step divides it exactly
        let gap = recurrence_gap(&form, &pt, 12.0, 0.5);
        assert!(gap < 1e-9, "gap {gap}");
    }

    #[test]
    fn recurrence_gap_positive_for_irrational() {
        let form = l73_sqrt2();
        let pt = ChartPoint::new(Chart::Zero, 0.5, 1.0, 0.3);
        let gap = recurrence_gap(&form, &pt, 1e3 * form.tau0, form.tau0 / 8.0);
        assert!(gap > 1e-6, "gap {gap}");
    }

    #[test]
    fn recurrence_gap_torus_invariant() {
        let form = l73_sqrt2();
        let lens = form.lens;
        let pt = ChartPoint::new(Chart::Zero, 0.5, 1.0, 0.3);
        let moved = torus_action(&lens, (Angle::new(0.9), Angle::new(2.8)), &pt);
        let g1 = recurrence_gap(&form, &pt, 200.0, 0.25);
        let g2 = recurrence_gap(&form, &moved, 200.0, 0.25);
        assert!((g1 - g2).abs() < 1e-9);
    }

    #[test]
    fn flow_conjugates_through_transition() {
        use crate::lens::{transition, Chart};
        let form = l73_sqrt2();
        let lens = form.lens;
        let pt1 = ChartPoint::new(Chart::One, 0.3, 0.8, 1.9);
        let pt0 = transition(&lens, &pt1).unwrap();
        for &t in &[0.37, 2.0, 11.3] {
            let lhs = transition(&lens, &flow(&form, &pt1, t)).unwrap();
            let rhs = flow(&form, &pt0, t);
            assert!(
                point_distance(&lhs, &rhs) < 1e-9,
                "t={t}: {}",
                point_distance(&lhs, &rhs)
            );
        }
    }
}
