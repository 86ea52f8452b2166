//! Contact forms on L(p,q) associated to triples (a, τ₀, φ₀).
//!
//! In chart 0 the form is (τ₀/2π − φ₀·a(r))dz + a(r)dθ; in chart 1 it is
//! (τ₁/2π − φ₁·g₁(r))dz + g₁(r)dθ with g₁ the induced chart-1 profile and
//!
//!   τ₁ = τ₀/(q + p·φ₀),     φ₁ = (m − s·φ₀)/(q + p·φ₀).
//!
//! The contact volume density in chart i is (τᵢ/2π)·(chart profile)'(r),
//! which integrates to p·τ₀·τ₁ over the whole space.

use crate::error::{Error, Result};
use crate::lens::{Chart, LensParams};
use crate::profile::{
    default_profile, default_profile_with_degree, induced_a1, validate_monotone,
    validate_smoothness, ChartOneProfile, ProfileSpec,
};
use crate::quadrature;
use rand::Rng;
use std::f64::consts::TAU;

/// Rotationally invariant coefficient functions f(r)dz + g(r)dθ with
/// derivatives to order 4. Implemented by the chart coefficients of a
/// [`ContactForm`] and by their deformations.
pub trait RadialCoefficients {
    fn f(&self, r: f64, order: usize) -> f64;
    fn g(&self, r: f64, order: usize) -> f64;

    /// Minimal period of the core orbit r = 0: the z-velocity there is
    /// 1/f(0), so one 2π turn takes 2π·f(0).
    fn core_period(&self) -> f64 {
        TAU * self.f(0.0, 0)
    }
}

/// A contact form with its derived chart-1 invariants. The profile is
/// validated at construction: boundary residuals, parity, monotonicity.
#[derive(Debug, Clone)]
pub struct ContactForm {
    pub lens: LensParams,
    pub tau0: f64,
    pub phi0: f64,
    pub profile: ProfileSpec,
    pub tau1: f64,
    pub phi1: f64,
}

/// Build a form from a validated triple.
pub fn from_triple(
    profile: ProfileSpec,
    tau0: f64,
    phi0: f64,
    lens: LensParams,
) -> Result<ContactForm> {
    let denom = lens.q as f64 + lens.p as f64 * phi0;
    if !denom.is_finite() || denom <= 0.0 {
        return Err(Error::InvalidRotation { value: denom });
    }
    if !tau0.is_finite() || tau0 <= 0.0 {
        return Err(Error::Domain(format!("tau0 = {tau0} must be positive")));
    }
    let b = &profile.boundary;
    if b.lens != lens || (b.tau0 - tau0).abs() > 1e-12 || (b.phi0 - phi0).abs() > 1e-12 {
        return Err(Error::InvalidProfile(
            "profile boundary data is inconsistent with the requested triple".into(),
        ));
    }
    let expected_end = lens.p as f64 * tau0 / (TAU * denom);
    let end = profile.eval(1.0, 0)?;
    if (end - expected_end).abs() > 1e-12 * expected_end.abs().max(1.0) {
        return Err(Error::InvalidProfile(format!(
            "a(1) = {end} but the triple requires {expected_end}"
        )));
    }
    let report = validate_smoothness(&profile, 5, 1e-4);
    if !report.pass() {
        let worst = report.worst().unwrap();
        return Err(Error::InvalidProfile(format!(
            "smoothness violation: {} = {:.3e} (tol {:.1e})",
            worst.name, worst.value, worst.tolerance
        )));
    }
    if !validate_monotone(&profile, 512) {
        return Err(Error::NotContact(
            "profile derivative is not positive on (0,1)".into(),
        ));
    }
    let tau1 = tau0 / denom;
    let phi1 = (lens.m as f64 - lens.s as f64 * phi0) / denom;
    // cross-check the two routes to the derived invariants
    let phi0_back = (tau0 / tau1 - lens.q as f64) / lens.p as f64;
    let phi1_back = (tau1 / tau0 - lens.s as f64) / lens.p as f64;
    debug_assert!((phi0_back - phi0).abs() < 1e-10 * phi0.abs().max(1.0));
    debug_assert!((phi1_back - phi1).abs() < 1e-10 * phi1.abs().max(1.0));
    Ok(ContactForm {
        lens,
        tau0,
        phi0,
        profile,
        tau1,
        phi1,
    })
}

/// Build without the smoothness/monotonicity gates (the derived invariants
/// still need p·φ₀ + q > 0). Used by re-validation flows that want gate
/// failures reported as check rows instead of load errors.
pub fn from_triple_unvalidated(
    profile: ProfileSpec,
    tau0: f64,
    phi0: f64,
    lens: LensParams,
) -> Result<ContactForm> {
    let denom = lens.q as f64 + lens.p as f64 * phi0;
    if !denom.is_finite() || denom <= 0.0 {
        return Err(Error::InvalidRotation { value: denom });
    }
    if !tau0.is_finite() || tau0 <= 0.0 {
        return Err(Error::Domain(format!("tau0 = {tau0} must be positive")));
    }
    let tau1 = tau0 / denom;
    let phi1 = (lens.m as f64 - lens.s as f64 * phi0) / denom;
    Ok(ContactForm {
        lens,
        tau0,
        phi0,
        profile,
        tau1,
        phi1,
    })
}

/// Build the canonical form with prescribed core periods (τ₀, τ₁); the
/// rotation numbers come out as φ₀ = (τ₀/τ₁ − q)/p and φ₁ = (τ₁/τ₀ − s)/p.
pub fn from_periods(lens: LensParams, tau0: f64, tau1: f64) -> Result<ContactForm> {
    let profile = default_profile(&lens, tau0, tau1)?;
    let phi0 = profile.boundary.phi0;
    from_triple(profile, tau0, phi0, lens)
}

/// Same but with a pinned profile degree (3, 5, 7 or 9).
pub fn from_periods_with_degree(
    lens: LensParams,
    tau0: f64,
    tau1: f64,
    degree: usize,
) -> Result<ContactForm> {
    let profile = default_profile_with_degree(&lens, tau0, tau1, degree)?;
    let phi0 = profile.boundary.phi0;
    from_triple(profile, tau0, phi0, lens)
}

impl ContactForm {
    pub fn coefficients(&self, chart: Chart) -> FormCoefficients {
        match chart {
            Chart::Zero => FormCoefficients {
                chart,
                tau: self.tau0,
                phi: self.phi0,
                profile: ChartProfile::Zero(self.profile.clone()),
            },
            Chart::One => FormCoefficients {
                chart,
                tau: self.tau1,
                phi: self.phi1,
                profile: ChartProfile::One(induced_a1(&self.profile)),
            },
        }
    }

    pub fn tau(&self, chart: Chart) -> f64 {
        match chart {
            Chart::Zero => self.tau0,
            Chart::One => self.tau1,
        }
    }

    pub fn phi(&self, chart: Chart) -> f64 {
        match chart {
            Chart::Zero => self.phi0,
            Chart::One => self.phi1,
        }
    }

    /// α∧dα density (f·g' − g·f') at radius r in the given chart; equals
    /// (τᵢ/2π)·(chart profile)'(r) identically.
    pub fn volume_density(&self, chart: Chart, r: f64) -> f64 {
        let c = self.coefficients(chart);
        c.f(r, 0) * c.g(r, 1) - c.g(r, 0) * c.f(r, 1)
    }

    /// Total contact volume by adaptive quadrature over the dense chart 0,
    /// times the (2π)² angular factor. Agrees with p·τ₀·τ₁.
    pub fn total_volume(&self) -> Result<f64> {
        let c = self.coefficients(Chart::Zero);
        let q = quadrature::integrate(
            |r| c.f(r, 0) * c.g(r, 1) - c.g(r, 0) * c.f(r, 1),
            0.0,
            1.0,
            1e-12,
        )?;
        Ok(q.value * TAU * TAU)
    }

    /// Closed-form volume p·τ₀·τ₁.
    pub fn volume_closed_form(&self) -> f64 {
        self.lens.p as f64 * self.tau0 * self.tau1
    }

    /// Pull the chart-0 coefficients back through the transition map and
    /// compare with the chart-1 coefficients at `n` random radii; returns
    /// the max absolute residual. The pullback acts by the angular block:
    /// dz ↦ s·dz + p·dθ and dθ ↦ m·dz − q·dθ.
    pub fn overlap_consistency<R: Rng>(&self, n: usize, rng: &mut R) -> f64 {
        assert!(n >= 1);
        let c0 = self.coefficients(Chart::Zero);
        let c1 = self.coefficients(Chart::One);
        let (p, q, m, s) = (
            self.lens.p as f64,
            self.lens.q as f64,
            self.lens.m as f64,
            self.lens.s as f64,
        );
        let mut worst: f64 = 0.0;
        for _ in 0..n {
            let r = rng.random_range(0.001..0.999);
            let f0 = c0.f(1.0 - r, 0);
            let g0 = c0.g(1.0 - r, 0);
            let f_pulled = s * f0 + m * g0;
            let g_pulled = p * f0 - q * g0;
            worst = worst
                .max((c1.f(r, 0) - f_pulled).abs())
                .max((c1.g(r, 0) - g_pulled).abs());
        }
        worst
    }
}

#[derive(Debug, Clone)]
enum ChartProfile {
    Zero(ProfileSpec),
    One(ChartOneProfile),
}

/// Coefficients (f, g) of one chart of a [`ContactForm`]:
/// f = τᵢ/2π − φᵢ·gᵢ and g = gᵢ, with gᵢ the chart profile.
#[derive(Debug, Clone)]
pub struct FormCoefficients {
    pub chart: Chart,
    pub tau: f64,
    pub phi: f64,
    profile: ChartProfile,
}

impl FormCoefficients {
    fn profile_eval(&self, r: f64, order: usize) -> f64 {
        match &self.profile {
            ChartProfile::Zero(p) => p.eval(r, order).expect("order <= 4"),
            ChartProfile::One(p) => p.eval(r, order).expect("order <= 4"),
        }
    }
}

impl RadialCoefficients for FormCoefficients {
    fn f(&self, r: f64, order: usize) -> f64 {
        let base = -self.phi * self.profile_eval(r, order);
        if order == 0 {
            self.tau / TAU + base
        } else {
            base
        }
    }

    fn g(&self, r: f64, order: usize) -> f64 {
        self.profile_eval(r, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::make_lens;
    use crate::profile::{BoundaryData, ProfileSpec};
    use rand::SeedableRng;

    fn l73_sqrt2() -> ContactForm {
        let lens = make_lens(7, 3).unwrap();
        from_periods(lens, 1.0, 2.0f64.sqrt()).unwrap()
    }

    #[test]
    fn derived_invariants_from_periods() {
        let form = l73_sqrt2();
        assert!((form.tau1 - 2.0f64.sqrt()).abs() < 1e-12);
        let expected_phi0 = (1.0 / 2.0f64.sqrt() - 3.0) / 7.0;
        assert!((form.phi0 - expected_phi0).abs() < 1e-14);
        assert!((form.phi0 + 0.32755).abs() < 1e-4);

        let lens = make_lens(1, 0).unwrap();
        let hopf = from_periods(lens, 2.0, 3.0).unwrap();
        assert!((hopf.phi0 - 2.0 / 3.0).abs() < 1e-13);
        assert!((hopf.phi1 - 3.0 / 2.0).abs() < 1e-13);
    }

    #[test]
    fn from_triple_identity_case() {
        let lens = make_lens(1, 0).unwrap();
        let form = from_periods(lens, 1.0, 1.0).unwrap();
        assert!((form.phi0 - 1.0).abs() < 1e-13);
        // φ₁ = m − s·φ₀ = 1 for (m, s) = (1, 0)
        assert!((form.phi1 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn bad_end_value_is_rejected() {
        let lens = make_lens(7, 3).unwrap();
        let good = default_profile(&lens, 1.0, 2.0f64.sqrt()).unwrap();
        let boundary = good.boundary;
        let mut coeffs = good.coeffs().to_vec();
        coeffs[0] += 0.1; // shifts a(1) by 0.1
        let bad = ProfileSpec::from_coeffs(coeffs, boundary).unwrap();
        assert!(matches!(
            from_triple(bad, 1.0, boundary.phi0, lens),
            Err(Error::InvalidProfile(_))
        ));
    }

    #[test]
    fn nonpositive_rotation_is_rejected() {
        let lens = make_lens(7, 3).unwrap();
        let boundary = BoundaryData::new(lens, 1.0, 0.0).unwrap();
        let prof = ProfileSpec::from_coeffs(vec![0.1], boundary).unwrap();
        // p·φ₀ + q = -4 < 0 for φ₀ = -1
        assert!(matches!(
            from_triple(prof, 1.0, -1.0, lens),
            Err(Error::InvalidRotation { .. })
        ));
    }

    #[test]
    fn chart_coefficients_at_cores() {
        let form = l73_sqrt2();
        let c0 = form.coefficients(Chart::Zero);
        assert!((c0.f(0.0, 0) - 1.0 / TAU).abs() < 1e-14);
        assert_eq!(c0.g(0.0, 0), 0.0);
        let c1 = form.coefficients(Chart::One);
        assert!((c1.f(0.0, 0) - form.tau1 / TAU).abs() < 1e-12);
        assert!(c1.g(0.0, 0).abs() < 1e-12);
        // chart 0 at r = 1: g = a_end = p·τ₁/2π
        assert!((c0.g(1.0, 0) - 7.0 * form.tau1 / TAU).abs() < 1e-12);
    }

    #[test]
    fn chart_one_matches_transition_expression() {
        // f₁ = s·τ₀/2π + (m − s·φ₀)·a(1−r), g₁ = p·τ₀/2π − (q + p·φ₀)·a(1−r)
        let form = l73_sqrt2();
        let c1 = form.coefficients(Chart::One);
        let (p, q, m, s) = (7.0, 3.0, -2.0, 5.0);
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            let a = form.profile.eval_end(r, 0).unwrap();
            let f_alt = s * form.tau0 / TAU + (m - s * form.phi0) * a;
            let g_alt = p * form.tau0 / TAU - (q + p * form.phi0) * a;
            assert!((c1.f(r, 0) - f_alt).abs() < 1e-13, "r={r}");
            assert!((c1.g(r, 0) - g_alt).abs() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn volume_density_positive_and_cancels() {
        let form = l73_sqrt2();
        for chart in [Chart::Zero, Chart::One] {
            let c = form.coefficients(chart);
            for i in 1..1000 {
                let r = i as f64 / 1000.0;
                let density = form.volume_density(chart, r);
                assert!(density > 0.0, "chart {chart} r={r}");
                // f·g' − g·f' = (τ/2π)·g' identically
                let expected = c.tau / TAU * c.g(r, 1);
                assert!((density - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn total_volume_matches_closed_form() {
        let form = l73_sqrt2();
        let vol = form.total_volume().unwrap();
        let closed = form.volume_closed_form();
        assert!((vol - closed).abs() < 1e-8 * closed, "{vol} vs {closed}");
        assert!((closed - 7.0 * 2.0f64.sqrt()).abs() < 1e-12);

        let lens = make_lens(1, 0).unwrap();
        let hopf = from_periods(lens, 2.0, 3.0).unwrap();
        assert!((hopf.total_volume().unwrap() - 6.0).abs() < 1e-8);
    }

    #[test]
    fn volume_scales_quadratically() {
        let lens = make_lens(7, 3).unwrap();
        let lam = 1.7;
        let base = from_periods(lens, 1.0, 1.3).unwrap();
        let scaled = from_periods(lens, lam, lam * 1.3).unwrap();
        let ratio = scaled.volume_closed_form() / base.volume_closed_form();
        assert!((ratio - lam * lam).abs() < 1e-12);
    }

    #[test]
    fn chart_1_integral_gives_the_same_volume() {
        // the complement of either core is null, so integrating the other
        // chart's density must reproduce the same total volume
        let form = l73_sqrt2();
        let q1 = quadrature::integrate(
            |r| form.volume_density(Chart::One, r),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        let vol1 = q1.value * TAU * TAU;
        assert!(
            (vol1 - form.volume_closed_form()).abs() < 1e-9,
            "{vol1} vs {}",
            form.volume_closed_form()
        );
    }

    #[test]
    fn chart_0_integral_equals_p_tau0_tau1() {
        // fundamental theorem of calculus: ∫ (τ₀/2π) a' dr = (τ₀/2π) a_end
        let form = l73_sqrt2();
        let q = quadrature::integrate(
            |r| form.volume_density(Chart::Zero, r),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        let ftc = form.tau0 / TAU * form.profile.eval(1.0, 0).unwrap();
        assert!((q.value - ftc).abs() < 1e-12);
        assert!((q.value * TAU * TAU - form.volume_closed_form()).abs() < 1e-9);
    }

    #[test]
    fn overlap_residual_small_for_valid_forms() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        let form = l73_sqrt2();
        assert!(form.overlap_consistency(200, &mut rng) < 1e-10);

        let lens = make_lens(1, 0).unwrap();
        let symm = from_periods(lens, 1.0, 1.0).unwrap();
        assert!(symm.overlap_consistency(200, &mut rng) < 1e-12);
    }

    #[test]
    fn overlap_residual_detects_corruption() {
        let form = l73_sqrt2();
        let c0 = form.coefficients(Chart::Zero);
        let c1 = form.coefficients(Chart::One);
        let (p, q, m, s) = (7.0, 3.0, -2.0, 5.0);
        let r = 0.37;
        let f0 = c0.f(1.0 - r, 0);
        let g0 = c0.g(1.0 - r, 0);
        let corrupted = c1.f(r, 0) + 1e-3;
        let residual = (corrupted - (s * f0 + m * g0)).abs();
        assert!((residual - 1e-3).abs() < 1e-10);
        let _ = (p, q);
    }

    #[test]
    fn chart_symmetry_rebuild() {
        // seen from the other core, the same form is associated to the
        // triple (g₁-profile, τ₁, φ₁) on the lens with q and s exchanged;
        // rebuilding from that data must reproduce the chart-0 coefficients
        let form = l73_sqrt2();
        let (p, q, m, s) = (form.lens.p, form.lens.q, form.lens.m, form.lens.s);
        let lens_swapped = crate::lens::LensParams { p, q: s, m, s: q };
        assert_eq!(lens_swapped.m * p + lens_swapped.s * lens_swapped.q, 1);

        // g₁(r) = p·τ₀/2π − (q + pφ₀)·P(1 − u(r)) is itself poly-in-u:
        // expand Q(u) = p·τ₀/2π − (q + pφ₀)·P(1 − u) by binomials
        let scale = q as f64 + p as f64 * form.phi0;
        let d = form.profile.degree();
        let mut q_coeffs = vec![0.0f64; d];
        let mut constant = p as f64 * form.tau0 / TAU;
        for (idx, &c) in form.profile.coeffs().iter().enumerate() {
            let k = idx + 1;
            // (1 − u)^k = Σ_j C(k,j) (−u)^j
            let mut binom = 1.0f64;
            for j in 0..=k {
                let term = -scale * c * binom * if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 {
                    constant += term;
                } else {
                    q_coeffs[j - 1] += term;
                }
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        assert!(constant.abs() < 1e-12, "Q(0) = {constant}");

        let boundary = BoundaryData::new(lens_swapped, form.tau1, form.phi1).unwrap();
        let profile = ProfileSpec::from_coeffs(q_coeffs, boundary).unwrap();
        let rebuilt = from_triple(profile, form.tau1, form.phi1, lens_swapped).unwrap();
        assert!((rebuilt.tau1 - form.tau0).abs() < 1e-12);
        assert!((rebuilt.phi1 - form.phi0).abs() < 1e-12);

        let original_c0 = form.coefficients(Chart::Zero);
        let rebuilt_c1 = rebuilt.coefficients(Chart::One);
        for i in 0..=40 {
            let r = i as f64 / 40.0;
            assert!(
                (original_c0.f(r, 0) - rebuilt_c1.f(r, 0)).abs() < 1e-10,
                "f at r={r}"
            );
            assert!(
                (original_c0.g(r, 0) - rebuilt_c1.g(r, 0)).abs() < 1e-10,
                "g at r={r}"
            );
        }
    }

    #[test]
    fn derived_invariants_two_routes_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let lenses = [(1i64, 0i64), (2, 1), (5, 2), (7, 3), (8, 3)];
        for _ in 0..100 {
            let (p, q) = lenses[rng.random_range(0..lenses.len())];
            let lens = make_lens(p, q).unwrap();
            let tau0 = rng.random_range(0.5..2.5);
            let tau1 = rng.random_range(0.5..2.5);
            let form = from_periods(lens, tau0, tau1).unwrap();
            let phi1_route2 = (form.tau1 / form.tau0 - lens.s as f64) / lens.p as f64;
            assert!(
                (form.phi1 - phi1_route2).abs() < 1e-12 * form.phi1.abs().max(1.0),
                "L({p},{q}) taus ({tau0},{tau1})"
            );
        }
    }
}
