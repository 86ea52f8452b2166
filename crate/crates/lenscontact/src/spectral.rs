//! Heat-trace expansion coefficients for both regularity classes, Seifert
//! data extraction, and the quasi-regular deformation pipeline.
//!
//! The small-time expansion of the sub-Laplacian heat trace is
//! (C₀ + C₁·t)/(16·t²) + O(1). For an irregular form the coefficients are
//! (p·τ₀·τ₁, 2π(τ₀ + τ₁)); for a quasi-regular form they are
//! (−τ·e, 2π·τ·χ_orb) with τ the generic minimal period, e = −vol/τ the
//! Seifert Euler number in the volume normalization, and
//! χ_orb = 1/a₀ + 1/a₁ the orbifold Euler characteristic.
//!
//! Irregular forms are connected to the quasi-regular world by the momentum
//! deformation α_ε = α/(1 + ε·μ) with μ = 2πτ₀·a in chart 0: the core
//! periods become τ₀ and τ₁/(1 + ε·p·τ₀·τ₁), and a continued-fraction
//! choice of ε makes their ratio rational step by step.

use crate::error::{Error, Result};
use crate::form::{ContactForm, FormCoefficients, RadialCoefficients};
use crate::lens::Chart;
use crate::metric::total_curvature;
use crate::numeric::quotient_derivs;
use crate::quadrature;
use crate::rational::{big_ratio, convergents, mod1, mod1_denominator, rational_detect};
use crate::reeb::{classify, monodromy_rotation, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::f64::consts::TAU;

/// Default rationality certificate for classification gates.
pub const DEFAULT_DMAX: i64 = 1_000_000;
pub const DEFAULT_TOL: f64 = 1e-12;

/// Certificate used on monodromy-derived rotation numbers in the
/// deformation pipeline; tighter tolerance because the candidate rationals
/// are exact and the monodromy noise is far below it.
const DEFORM_DMAX: i64 = 1_000_000;
const DEFORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSource {
    ClosedForm,
    Quadrature,
    DeformationLimit,
}

/// Leading heat-trace coefficients: the trace expands as
/// (c0 + c1·t)/(16·t²).
#[derive(Debug, Clone, Copy)]
pub struct HeatTraceCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub source: CoefficientSource,
}

/// Seifert invariants of a quasi-regular form: generic period τ,
/// exceptional fiber orders (a₀, a₁) with a₀·τ₀ = a₁·τ₁ = τ, the exact
/// orbifold Euler characteristic, and the Euler number e = −vol/τ.
///
/// The sign/scale convention for `euler_number` is the one tied to
/// ∫α∧dα = −τ·e; it rescales with the periods and is reported as such.
#[derive(Debug, Clone)]
pub struct SeifertData {
    pub tau: f64,
    pub a0: BigInt,
    pub a1: BigInt,
    pub chi_orb: BigRational,
    pub euler_number: f64,
}

/// Closed-form coefficients for an irregular form: (p·τ₀·τ₁, 2π(τ₀+τ₁)).
pub fn heat_coeffs_irregular(form: &ContactForm) -> Result<HeatTraceCoefficients> {
    let class = classify(form, DEFAULT_DMAX, DEFAULT_TOL)?;
    if !matches!(class.verdict, Verdict::Irregular) {
        return Err(Error::WrongClass {
            expected: "irregular",
            actual: "quasi-regular",
        });
    }
    Ok(HeatTraceCoefficients {
        c0: form.volume_closed_form(),
        c1: TAU * (form.tau0 + form.tau1),
        source: CoefficientSource::ClosedForm,
    })
}

/// Seifert data of a quasi-regular form, with exact integer orders.
pub fn seifert_data(form: &ContactForm) -> Result<SeifertData> {
    let class = classify(form, DEFAULT_DMAX, DEFAULT_TOL)?;
    let (a0, a1) = match class.verdict {
        Verdict::QuasiRegular { .. } => class.orders.expect("orders present"),
        Verdict::Irregular => {
            return Err(Error::WrongClass {
                expected: "quasi-regular",
                actual: "irregular",
            })
        }
    };
    let tau = class.generic_period.expect("period present");
    let chi_orb = BigRational::new(BigInt::from(1), a0.clone())
        + BigRational::new(BigInt::from(1), a1.clone());
    let euler_number = -form.volume_closed_form() / tau;
    Ok(SeifertData {
        tau,
        a0,
        a1,
        chi_orb,
        euler_number,
    })
}

/// Coefficients of the quasi-regular expansion: C₀ = −τ·e = vol and
/// C₁ = 2π·τ·χ_orb.
pub fn heat_coeffs_quasiregular(data: &SeifertData) -> HeatTraceCoefficients {
    let chi = data.chi_orb.to_f64().expect("chi_orb in f64 range");
    HeatTraceCoefficients {
        c0: -data.tau * data.euler_number,
        c1: TAU * data.tau * chi,
        source: CoefficientSource::ClosedForm,
    }
}

/// Quadrature cross-check of a coefficient pair against the integrals they
/// represent; returns the relative residuals (volume, curvature).
pub fn heat_cross_check(form: &ContactForm, coeffs: &HeatTraceCoefficients) -> Result<(f64, f64)> {
    let vol = form.total_volume()?;
    let curv = total_curvature(form)?;
    Ok((
        (coeffs.c0 - vol).abs() / vol.abs().max(1e-300),
        (coeffs.c1 - curv).abs() / curv.abs().max(1e-300),
    ))
}

/// (C₀ + C₁·t)/(16·t²).
pub fn heat_trace_eval(coeffs: &HeatTraceCoefficients, t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("heat trace needs t > 0, got {t}")));
    }
    Ok((coeffs.c0 + coeffs.c1 * t) / (16.0 * t * t))
}

/// The deformed form α/(1 + ε·μ) with μ the tube-volume momentum map
/// (μ = 2πτ₀·a in chart 0, μ = vol − 2πτ₁·g₁ in chart 1). Coefficients
/// live in the generic (f, g) representation with quotient-rule
/// derivatives; they need not satisfy the metric normalization.
#[derive(Debug, Clone)]
pub struct DeformedForm {
    pub base: ContactForm,
    pub epsilon: f64,
}

/// Deform a form; ε must keep 1 + ε·μ positive on [0,1], i.e.
/// ε > −1/vol on the negative side.
pub fn deform(form: &ContactForm, epsilon: f64) -> Result<DeformedForm> {
    let vol = form.volume_closed_form();
    if 1.0 + epsilon * vol <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidDeformation { epsilon });
    }
    Ok(DeformedForm {
        base: form.clone(),
        epsilon,
    })
}

impl DeformedForm {
    pub fn coefficients(&self, chart: Chart) -> DeformedCoefficients {
        DeformedCoefficients {
            base: self.base.coefficients(chart),
            chart,
            epsilon: self.epsilon,
            tau0: self.base.tau0,
            tau1: self.base.tau1,
            volume: self.base.volume_closed_form(),
        }
    }

    /// Momentum map value at radius r of the given chart.
    pub fn mu(&self, chart: Chart, r: f64) -> f64 {
        self.coefficients(chart).mu_derivs(r)[0]
    }
}

#[derive(Debug, Clone)]
pub struct DeformedCoefficients {
    base: FormCoefficients,
    chart: Chart,
    epsilon: f64,
    tau0: f64,
    tau1: f64,
    volume: f64,
}

impl DeformedCoefficients {
    /// μ and derivatives to order 4 in this chart's radial coordinate.
    fn mu_derivs(&self, r: f64) -> [f64; 5] {
        let mut out = [0.0; 5];
        match self.chart {
            Chart::Zero => {
                for (k, v) in out.iter_mut().enumerate() {
                    *v = TAU * self.tau0 * self.base.g(r, k);
                }
            }
            Chart::One => {
                for (k, v) in out.iter_mut().enumerate() {
                    *v = -TAU * self.tau1 * self.base.g(r, k);
                }
                out[0] += self.volume;
            }
        }
        out
    }

    fn denominator_derivs(&self, r: f64) -> [f64; 5] {
        let mut u = self.mu_derivs(r);
        for v in u.iter_mut() {
            *v *= self.epsilon;
        }
        u[0] += 1.0;
        u
    }
}

impl RadialCoefficients for DeformedCoefficients {
    fn f(&self, r: f64, order: usize) -> f64 {
        let num: Vec<f64> = (0..=order).map(|k| self.base.f(r, k)).collect();
        let den = self.denominator_derivs(r);
        quotient_derivs(&num, &den[..=order], order)[order]
    }

    fn g(&self, r: f64, order: usize) -> f64 {
        let num: Vec<f64> = (0..=order).map(|k| self.base.g(r, k)).collect();
        let den = self.denominator_derivs(r);
        quotient_derivs(&num, &den[..=order], order)[order]
    }
}

/// Continued-fraction approximants rₙ = n/d → τ₀/τ₁ with the deformation
/// parameters εₙ = (rₙ·τ₁/τ₀ − 1)/vol that make the perturbed period ratio
/// exactly rₙ. Approximants with n ≤ 0 or inadmissible ε are skipped.
pub fn rational_approximants(form: &ContactForm, count: usize) -> Result<Vec<(f64, (i64, i64))>> {
    assert!(count >= 1);
    let ratio = form.tau0 / form.tau1;
    let vol = form.volume_closed_form();
    let mut out = Vec::new();
    for (n, d) in convergents(ratio, i64::MAX / 4) {
        if n <= 0 {
            continue;
        }
        let r_n = n as f64 / d as f64;
        let eps = (r_n * form.tau1 / form.tau0 - 1.0) / vol;
        if 1.0 + eps * vol <= 0.0 {
            continue;
        }
        out.push((eps, (n, d)));
        if out.len() == count {
            return Ok(out);
        }
    }
    Err(Error::Numeric(format!(
        "only {} usable continued-fraction approximants at working precision (requested {count})",
        out.len()
    )))
}

/// One step of the deformation pipeline.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: usize,
    pub epsilon: f64,
    pub ratio_num: i64,
    pub ratio_den: i64,
    pub a0: BigInt,
    pub a1: BigInt,
    pub tau: f64,
    pub c0: f64,
    pub c1: f64,
    pub resid_c0: f64,
    pub resid_c1: f64,
    /// perturbed core-1 period measured from the deformed Reeb field
    pub period_core1: f64,
    /// |measured − τ₁/(1 + ε·p·τ₀·τ₁)|
    pub period_residual: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    /// ε = 0 coefficients: the irregular closed forms.
    pub base: HeatTraceCoefficients,
    pub rows: Vec<ConvergenceRow>,
}

/// Deform an irregular form along the continued-fraction approximants of
/// its period ratio, classify each deformed form (it must come out
/// quasi-regular), and table the quasi-regular coefficients together with
/// their residuals against the irregular closed forms.
pub fn convergence_study(form: &ContactForm, count: usize) -> Result<ConvergenceStudy> {
    let base = heat_coeffs_irregular(form)?;
    let approximants = rational_approximants(form, count)?;
    let p = form.lens.p;
    let q = form.lens.q;
    let s = form.lens.s;
    let mut rows = Vec::with_capacity(approximants.len());
    for (idx, (eps, (num, den))) in approximants.into_iter().enumerate() {
        let deformed = deform(form, eps)?;
        let c0_chart = deformed.coefficients(Chart::Zero);
        let c1_chart = deformed.coefficients(Chart::One);

        // exact expected rotation numbers for the perturbed cores:
        // φ₀(ε) = (rₙ − q)/p and φ₁(ε) = (1/rₙ − s)/p
        let expected_phi0 = mod1(&((big_ratio(num, den) - big_ratio(q, 1)) / big_ratio(p, 1)));
        let expected_phi1 = mod1(&((big_ratio(den, num) - big_ratio(s, 1)) / big_ratio(p, 1)));

        let measured_phi0 = monodromy_rotation(&c0_chart, 10_000)?;
        let measured_phi1 = monodromy_rotation(&c1_chart, 10_000)?;
        let detected_phi0 = rational_detect(measured_phi0, DEFORM_DMAX, DEFORM_TOL)
            .map(|(n, d)| mod1(&big_ratio(n, d)));
        let detected_phi1 = rational_detect(measured_phi1, DEFORM_DMAX, DEFORM_TOL)
            .map(|(n, d)| mod1(&big_ratio(n, d)));
        match (&detected_phi0, &detected_phi1) {
            (Some(d0), Some(d1)) if *d0 == expected_phi0 && *d1 == expected_phi1 => {}
            _ => {
                return Err(Error::DeformationPipeline(format!(
                    "step {idx}: deformed rotation numbers {measured_phi0}, {measured_phi1} \
                     did not certify as the expected rationals {expected_phi0}, {expected_phi1}"
                )))
            }
        }

        let a0 = mod1_denominator(&expected_phi0);
        let a1 = mod1_denominator(&expected_phi1);
        let period_core0 = c0_chart.core_period();
        let period_core1 = c1_chart.core_period();
        let period_formula = form.tau1 / (1.0 + eps * form.volume_closed_form());
        let period_residual = (period_core1 - period_formula).abs();

        let a0_f = a0.to_f64().expect("a0 in range");
        let a1_f = a1.to_f64().expect("a1 in range");
        let tau = a0_f * period_core0;
        let cross = a1_f * period_core1;
        if (cross - tau).abs() > 1e-9 * tau.abs().max(1.0) {
            return Err(Error::DeformationPipeline(format!(
                "step {idx}: order consistency a0·T0 = {tau} vs a1·T1 = {cross}"
            )));
        }

        // C₀ = volume of the deformed form, by quadrature on its own
        // coefficients
        let vol_q = quadrature::integrate(
            |r| c0_chart.f(r, 0) * c0_chart.g(r, 1) - c0_chart.g(r, 0) * c0_chart.f(r, 1),
            0.0,
            1.0,
            1e-12,
        )?;
        let c0 = vol_q.value * TAU * TAU;
        let chi = 1.0 / a0_f + 1.0 / a1_f;
        let c1 = TAU * tau * chi;
        rows.push(ConvergenceRow {
            n: idx + 1,
            epsilon: eps,
            ratio_num: num,
            ratio_den: den,
            a0,
            a1,
            tau,
            c0,
            c1,
            resid_c0: (c0 - base.c0).abs(),
            resid_c1: (c1 - base.c1).abs(),
            period_core1,
            period_residual,
        });
    }
    Ok(ConvergenceStudy { base, rows })
}
