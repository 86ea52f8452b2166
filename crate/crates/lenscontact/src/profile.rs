//! Radial profile functions a: [0,1] → ℝ generating the contact forms.
//!
//! A profile is a polynomial P (without constant term) composed with
//! u(r) = (1 − cos πr)/2, so a(r) = P(u(r)). The substitution makes every
//! odd r-derivative vanish at r = 0 and r = 1 by construction — u is exactly
//! even there, down to the bit level thanks to the folded circular functions
//! — so the smoothness conditions for extending the chart form across the
//! cores are structural rather than numerical.
//!
//! The default profile additionally pins a''(0) = 1 and a''(1) = −τ₁/τ₀,
//! the normalization that makes the associated chart metric smooth across
//! both cores (the cone angle closes up exactly when a'(r)/r → 1).

use crate::error::{Error, Result};
use crate::lens::LensParams;
use crate::numeric::{central_derivative, central_odd_high, cos_pi, sin_pi, solve_dense};
use std::f64::consts::{PI, TAU};

/// Boundary and normalization constants shared by every profile attached to
/// a triple (a, τ₀, φ₀) on a given lens space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub lens: LensParams,
    pub tau0: f64,
    pub phi0: f64,
    /// Required end value a(1) = p·τ₀ / (2π(p·φ₀ + q)) = p·τ₁/2π.
    pub a_end: f64,
    /// Target a''(0); fixed to 1 by the smooth-metric gauge.
    pub app0: f64,
    /// Target a''(1) = −τ₁/τ₀.
    pub app1: f64,
}

impl BoundaryData {
    pub fn new(lens: LensParams, tau0: f64, phi0: f64) -> Result<Self> {
        if !tau0.is_finite() || tau0 <= 0.0 {
            return Err(Error::Domain(format!("tau0 = {tau0} must be positive")));
        }
        let denom = lens.p as f64 * phi0 + lens.q as f64;
        if !denom.is_finite() || denom <= 0.0 {
            return Err(Error::InvalidRotation { value: denom });
        }
        let a_end = lens.p as f64 * tau0 / (TAU * denom);
        Ok(BoundaryData {
            lens,
            tau0,
            phi0,
            a_end,
            app0: 1.0,
            app1: -1.0 / denom,
        })
    }

    /// τ₁ = τ₀ / (q + p·φ₀).
    pub fn tau1(&self) -> f64 {
        self.tau0 / (self.lens.q as f64 + self.lens.p as f64 * self.phi0)
    }
}

/// a(r) = P(u(r)) with u(r) = (1 − cos πr)/2 and P(0) = 0 structurally.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSpec {
    /// coeffs[k] is the coefficient of u^(k+1).
    coeffs: Vec<f64>,
    pub boundary: BoundaryData,
}

/// u(r) and derivatives to order 4, anchored at the origin.
fn u_derivs(r: f64) -> [f64; 5] {
    let c = cos_pi(r);
    let s = sin_pi(r);
    [
        0.5 * (1.0 - c),
        0.5 * PI * s,
        0.5 * PI * PI * c,
        -0.5 * PI * PI * PI * s,
        -0.5 * PI * PI * PI * PI * c,
    ]
}

/// Derivatives of x ↦ u(1 − x) to order 4; exactly even in x at x = 0.
fn u_derivs_end(x: f64) -> [f64; 5] {
    let c = cos_pi(x);
    let s = sin_pi(x);
    [
        0.5 * (1.0 + c),
        -0.5 * PI * s,
        -0.5 * PI * PI * c,
        0.5 * PI * PI * PI * s,
        0.5 * PI * PI * PI * PI * c,
    ]
}

/// Faà di Bruno for (P ∘ u) up to order 4, given P-derivatives at u and
/// u-derivatives at the evaluation point.
fn compose(p: &[f64; 5], u: &[f64; 5]) -> [f64; 5] {
    let (u1, u2, u3, u4) = (u[1], u[2], u[3], u[4]);
    [
        p[0],
        p[1] * u1,
        p[2] * u1 * u1 + p[1] * u2,
        p[3] * u1 * u1 * u1 + 3.0 * p[2] * u1 * u2 + p[1] * u3,
        p[4] * u1 * u1 * u1 * u1
            + 6.0 * p[3] * u1 * u1 * u2
            + p[2] * (3.0 * u2 * u2 + 4.0 * u1 * u3)
            + p[1] * u4,
    ]
}

impl ProfileSpec {
    /// Wrap raw coefficients; only structural sanity is checked here. The
    /// boundary residuals are the business of [`validate_smoothness`] and of
    /// the contact-form constructor, so deliberately inconsistent profiles
    /// remain representable for validation tests.
    pub fn from_coeffs(coeffs: Vec<f64>, boundary: BoundaryData) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > 16 {
            return Err(Error::InvalidProfile(format!(
                "polynomial degree {} out of range 1..=16",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidProfile("non-finite coefficient".into()));
        }
        Ok(ProfileSpec { coeffs, boundary })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Derivatives of P at a point: P, P', P'', P''', P''''.
    fn p_derivs(&self, u: f64) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (idx, &c) in self.coeffs.iter().enumerate() {
            let k = idx + 1;
            let mut fall = 1.0;
            for (order, slot) in out.iter_mut().enumerate() {
                if order > k {
                    break;
                }
                *slot += c * fall * u.powi((k - order) as i32);
                fall *= (k - order) as f64;
            }
        }
        out
    }

    /// dᵏa/drᵏ(r) for k ≤ 4. Defined for every finite r; the geometric
    /// domain is [0,1].
    pub fn eval(&self, r: f64, order: usize) -> Result<f64> {
        if order > 4 {
            return Err(Error::UnsupportedOrder(order));
        }
        let u = u_derivs(r);
        let p = self.p_derivs(u[0]);
        Ok(compose(&p, &u)[order])
    }

    /// dᵏ/dxᵏ of the end-anchored profile x ↦ a(1 − x); exactly even in x
    /// at x = 0, so symmetric stencils cancel bitwise.
    pub fn eval_end(&self, x: f64, order: usize) -> Result<f64> {
        if order > 4 {
            return Err(Error::UnsupportedOrder(order));
        }
        let u = u_derivs_end(x);
        let p = self.p_derivs(u[0]);
        Ok(compose(&p, &u)[order])
    }

    /// All derivatives 0..=4 at once (origin-anchored).
    pub fn derivs(&self, r: f64) -> [f64; 5] {
        let u = u_derivs(r);
        let p = self.p_derivs(u[0]);
        compose(&p, &u)
    }

    /// All derivatives 0..=4 of x ↦ a(1 − x).
    pub fn derivs_end(&self, x: f64) -> [f64; 5] {
        let u = u_derivs_end(x);
        let p = self.p_derivs(u[0]);
        compose(&p, &u)
    }

    /// −a'''(r)/a'(r) with the common sin(πr) factor cancelled analytically:
    /// since u''' = −π²·u', the quotient equals
    /// π² − (P'''(u)·u'² + 3·P''(u)·u'')/P'(u), finite at both cores.
    pub fn curvature(&self, r: f64) -> f64 {
        let u = u_derivs(r);
        let p = self.p_derivs(u[0]);
        PI * PI - (p[3] * u[1] * u[1] + 3.0 * p[2] * u[2]) / p[1]
    }

    /// Same quotient anchored at the far end: −ã'''(x)/ã'(x) for
    /// ã(x) = a(1 − x). The relation ũ''' = −π²·ũ' gives the identical
    /// factored expression in the end-anchored derivatives.
    pub fn curvature_end(&self, x: f64) -> f64 {
        let u = u_derivs_end(x);
        let p = self.p_derivs(u[0]);
        PI * PI - (p[3] * u[1] * u[1] + 3.0 * p[2] * u[2]) / p[1]
    }
}

/// Monotonicity of P' on [0,1], with a relative safety margin.
fn p_prime_positive(coeffs: &[f64]) -> bool {
    let eval_p1 = |u: f64| -> f64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (i as f64 + 1.0) * u.powi(i as i32))
            .sum()
    };
    let n = 2001;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for i in 0..=n {
        let v = eval_p1(i as f64 / n as f64);
        min = min.min(v);
        max = max.max(v);
    }
    min > 0.0 && min > 1e-9 * max
}

/// Assemble and solve the interpolation constraints for degree d:
/// P(1) = a_end, P'(0), P'(1) fixed; for d ≥ 5 also P''(0) = P''(1) = 0,
/// for d ≥ 7 also P''' and for d = 9 also P'''' at both ends.
fn solve_profile(degree: usize, a_end: f64, p1_at_0: f64, p1_at_1: f64) -> Option<Vec<f64>> {
    let d = degree;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let fall = |k: usize, order: usize| -> f64 {
        let mut f = 1.0;
        for j in 0..order {
            if k <= j {
                return 0.0;
            }
            f *= (k - j) as f64;
        }
        f
    };
    // value and first derivative constraints
    rows.push((1..=d).map(|_| 1.0).collect());
    rhs.push(a_end);
    rows.push((1..=d).map(|k| if k == 1 { 1.0 } else { 0.0 }).collect());
    rhs.push(p1_at_0);
    rows.push((1..=d).map(|k| k as f64).collect());
    rhs.push(p1_at_1);
    for order in 2..=(d - 1) / 2 {
        // P^(order)(0) = 0 forces the u^order coefficient to vanish
        rows.push(
            (1..=d)
                .map(|k| if k == order { fall(k, order) } else { 0.0 })
                .collect(),
        );
        rhs.push(0.0);
        rows.push((1..=d).map(|k| fall(k, order)).collect());
        rhs.push(0.0);
    }
    debug_assert_eq!(rows.len(), d);
    solve_dense(&rows, &rhs)
}

/// Canonical profile for prescribed core periods: solves the lowest-degree
/// polynomial satisfying the boundary and normalization conditions, then
/// escalates the degree (5, 7, 9) if monotonicity fails.
pub fn default_profile(lens: &LensParams, tau0: f64, tau1: f64) -> Result<ProfileSpec> {
    for degree in [3usize, 5, 7, 9] {
        match default_profile_with_degree(lens, tau0, tau1, degree) {
            Ok(p) => return Ok(p),
            Err(Error::ProfileConstruction(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ProfileConstruction(format!(
        "no monotone profile of degree <= 9 for periods ({tau0}, {tau1})"
    )))
}

/// Same as [`default_profile`] but pinned to one polynomial degree
/// (3, 5, 7 or 9); distinct degrees give distinct profiles for the same
/// triple, which is what the contactomorphism construction pairs up.
pub fn default_profile_with_degree(
    lens: &LensParams,
    tau0: f64,
    tau1: f64,
    degree: usize,
) -> Result<ProfileSpec> {
    if !(tau0.is_finite() && tau1.is_finite()) || tau0 <= 0.0 || tau1 <= 0.0 {
        return Err(Error::Domain(format!(
            "periods must be positive, got ({tau0}, {tau1})"
        )));
    }
    if !matches!(degree, 3 | 5 | 7 | 9) {
        return Err(Error::ProfileConstruction(format!(
            "supported profile degrees are 3, 5, 7, 9; got {degree}"
        )));
    }
    let phi0 = (tau0 / tau1 - lens.q as f64) / lens.p as f64;
    let boundary = BoundaryData::new(*lens, tau0, phi0)?;
    let p1_at_0 = 2.0 / (PI * PI);
    let p1_at_1 = 2.0 * tau1 / (PI * PI * tau0);
    let coeffs = solve_profile(degree, boundary.a_end, p1_at_0, p1_at_1)
        .ok_or_else(|| Error::ProfileConstruction("singular interpolation system".into()))?;
    if !p_prime_positive(&coeffs) {
        return Err(Error::ProfileConstruction(format!(
            "degree-{degree} profile is not monotone for periods ({tau0}, {tau1})"
        )));
    }
    ProfileSpec::from_coeffs(coeffs, boundary)
}

/// One named residual check.
#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ValidationCheck {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let value = value.abs();
        ValidationCheck {
            name: name.into(),
            value,
            tolerance,
            pass: value < tolerance,
        }
    }
}

/// Boundary, parity and gauge residuals of a profile. The gauge checks
/// (metric normalization a''(0) = 1, a''(1) = −τ₁/τ₀) are flagged
/// separately from the smoothness conditions.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub gauge: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn gauge_pass(&self) -> bool {
        self.gauge.iter().all(|c| c.pass)
    }

    pub fn worst(&self) -> Option<&ValidationCheck> {
        self.checks
            .iter()
            .max_by(|a, b| (a.value / a.tolerance).total_cmp(&(b.value / b.tolerance)))
    }
}

const ANALYTIC_TOL: f64 = 1e-12;
const FD_TOL: f64 = 1e-8;
const GAUGE_TOL: f64 = 1e-10;

/// Validate the smoothness conditions for a profile: a(0) = 0,
/// a(1) = a_end, and vanishing odd derivatives at both ends up to order
/// `k_max` (analytic through order 3, finite differences with step `h`
/// beyond that).
pub fn validate_smoothness(profile: &ProfileSpec, k_max: usize, h: f64) -> ValidationReport {
    let b = &profile.boundary;
    let mut checks = vec![
        ValidationCheck::new("a(0)", profile.eval(0.0, 0).unwrap(), ANALYTIC_TOL),
        ValidationCheck::new(
            "a(1)-a_end",
            profile.eval(1.0, 0).unwrap() - b.a_end,
            ANALYTIC_TOL,
        ),
    ];
    let mut k = 1;
    while k <= k_max && k <= 7 {
        if k <= 3 {
            checks.push(ValidationCheck::new(
                format!("a^({k})(0)"),
                profile.eval(0.0, k).unwrap(),
                ANALYTIC_TOL,
            ));
            checks.push(ValidationCheck::new(
                format!("a^({k})(1)"),
                profile.eval_end(0.0, k).unwrap(),
                ANALYTIC_TOL,
            ));
        } else {
            // symmetric stencils cancel exactly for the structural
            // representation; anything else shows up loudly
            let at0 = central_odd_high(|x| profile.eval(x, 0).unwrap(), 0.0, k, h);
            let at1 = central_odd_high(|x| profile.eval_end(x, 0).unwrap(), 0.0, k, h);
            checks.push(ValidationCheck::new(format!("fd a^({k})(0)"), at0, FD_TOL));
            checks.push(ValidationCheck::new(format!("fd a^({k})(1)"), at1, FD_TOL));
        }
        k += 2;
    }
    let gauge = vec![
        ValidationCheck::new(
            "a''(0)-1",
            profile.eval(0.0, 2).unwrap() - b.app0,
            GAUGE_TOL,
        ),
        ValidationCheck::new(
            "a''(1)+tau1/tau0",
            profile.eval_end(0.0, 2).unwrap() - b.app1,
            GAUGE_TOL,
        ),
    ];
    ValidationReport { checks, gauge }
}

/// Finite-difference smoothness validation for an arbitrary radial function
/// handle (must be evaluable slightly outside [0,1]). Tolerances follow the
/// finite-difference path.
pub fn validate_smoothness_radial<F: Fn(f64) -> f64>(
    a: F,
    a_end: f64,
    k_max: usize,
    h: f64,
) -> ValidationReport {
    let mut checks = vec![
        ValidationCheck::new("a(0)", a(0.0), FD_TOL),
        ValidationCheck::new("a(1)-a_end", a(1.0) - a_end, FD_TOL),
    ];
    let mut k = 1;
    while k <= k_max && k <= 7 {
        let (at0, at1) = if k <= 3 {
            (
                central_derivative(&a, 0.0, k, h),
                central_derivative(&a, 1.0, k, h),
            )
        } else {
            (
                central_odd_high(&a, 0.0, k, h),
                central_odd_high(&a, 1.0, k, h),
            )
        };
        checks.push(ValidationCheck::new(format!("fd a^({k})(0)"), at0, FD_TOL));
        checks.push(ValidationCheck::new(format!("fd a^({k})(1)"), at1, FD_TOL));
        k += 2;
    }
    ValidationReport {
        checks,
        gauge: Vec::new(),
    }
}

/// (min, max) of a' over `n` Chebyshev-spaced interior samples.
pub fn monotone_stats(profile: &ProfileSpec, n: usize) -> (f64, f64) {
    assert!(n >= 100, "use at least 100 sample points");
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for k in 1..=n {
        let r = 0.5 * (1.0 + ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos());
        let v = profile.eval(r, 1).unwrap();
        min = min.min(v);
        max = max.max(v);
    }
    (min, max)
}

/// Monotonicity of a' at `n` Chebyshev-spaced interior samples, with the
/// minimum required to clear a small fraction of the maximum.
pub fn validate_monotone(profile: &ProfileSpec, n: usize) -> bool {
    let (min, max) = monotone_stats(profile, n);
    min > 0.0 && min > 1e-9 * max
}

/// Evaluator for the chart-1 profile g₁(r) = p·τ₀/2π − (q + p·φ₀)·a(1 − r)
/// and its derivatives to order 4. g₁(0) = 0 and g₁(1) = p·τ₀/2π.
#[derive(Debug, Clone)]
pub struct ChartOneProfile {
    profile: ProfileSpec,
    scale: f64,
    constant: f64,
}

pub fn induced_a1(profile: &ProfileSpec) -> ChartOneProfile {
    let b = &profile.boundary;
    ChartOneProfile {
        profile: profile.clone(),
        scale: b.lens.q as f64 + b.lens.p as f64 * b.phi0,
        constant: b.lens.p as f64 * b.tau0 / TAU,
    }
}

impl ChartOneProfile {
    pub fn eval(&self, r: f64, order: usize) -> Result<f64> {
        let e = self.profile.eval_end(r, order)?;
        Ok(if order == 0 {
            self.constant - self.scale * e
        } else {
            -self.scale * e
        })
    }

    pub fn derivs(&self, r: f64) -> [f64; 5] {
        let mut d = self.profile.derivs_end(r);
        for v in d.iter_mut() {
            *v *= -self.scale;
        }
        d[0] += self.constant;
        d
    }
}
