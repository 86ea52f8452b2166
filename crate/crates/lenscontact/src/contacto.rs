//! Strict contactomorphisms between forms sharing a triple (τ₀, φ₀), and
//! the q² ≡ 1 mod p equivalence count for prescribed periods.
//!
//! Two positive contact forms associated to (a, τ₀, φ₀) and (b, τ₀, φ₀) on
//! the same lens space are related by the radial diffeomorphism whose
//! chart-0 profile map is r ↦ b⁻¹(a(r)); the chart-1 map is the analogous
//! inversion of the induced chart-1 profiles, and the two are compatible
//! through the transition (the cocycle identity
//! m₁(r) = 1 − m₀(1 − r)).

use crate::error::{Error, Result};
use crate::form::{ContactForm, RadialCoefficients};
use crate::lens::{transition, transition_inverse, Chart, ChartPoint, LensParams};
use crate::profile::{induced_a1, ProfileSpec};
use crate::rational::{rational_detect, QuadIrr};
use crate::reeb::{classify, Verdict};
use rand::Rng;
use std::f64::consts::TAU;

/// Monotone per-chart radial reparametrizations carrying one form's profile
/// onto another's. Both maps fix 0 and 1 and are strictly increasing.
#[derive(Debug, Clone)]
pub struct RadialMap {
    pub lens: LensParams,
    pub tau0: f64,
    pub phi0: f64,
    profile_a: ProfileSpec,
    profile_b: ProfileSpec,
}

/// Invert a strictly increasing function on [lo, hi]: bisection to width
/// 1e-6, then Newton polished to 1e-13.
fn invert_monotone<F, D>(f: F, df: D, target: f64, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (f_lo, f_hi) = (f(lo), f(hi));
    if target <= f_lo {
        return Ok(lo);
    }
    if target >= f_hi {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > 1e-6 {
        let mid = 0.5 * (a + b);
        if f(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..60 {
        let step = (f(x) - target) / df(x);
        if !step.is_finite() {
            break;
        }
        let next = (x - step).clamp(a, b);
        if (next - x).abs() < 1e-13 {
            return Ok(next);
        }
        x = next;
    }
    // Newton stalled (flat derivative near the cores); finish by bisection
    while b - a > 1e-15 {
        let mid = 0.5 * (a + b);
        if f(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Build the radial map carrying `form_a` onto `form_b`; requires the same
/// lens and matching (τ₀, φ₀) to 1e-12.
pub fn build_psi_map(form_a: &ContactForm, form_b: &ContactForm) -> Result<RadialMap> {
    if form_a.lens != form_b.lens {
        return Err(Error::NotComparable(
            "forms live on different lens spaces".into(),
        ));
    }
    if (form_a.tau0 - form_b.tau0).abs() > 1e-12 || (form_a.phi0 - form_b.phi0).abs() > 1e-12 {
        return Err(Error::NotComparable(format!(
            "triples differ: (tau0, phi0) = ({}, {}) vs ({}, {})",
            form_a.tau0, form_a.phi0, form_b.tau0, form_b.phi0
        )));
    }
    Ok(RadialMap {
        lens: form_a.lens,
        tau0: form_a.tau0,
        phi0: form_a.phi0,
        profile_a: form_a.profile.clone(),
        profile_b: form_b.profile.clone(),
    })
}

impl RadialMap {
    /// Chart-0 map r ↦ b⁻¹(a(r)).
    pub fn map0(&self, r: f64) -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        if r == 1.0 {
            return Ok(1.0);
        }
        let target = self.profile_a.eval(r, 0)?;
        invert_monotone(
            |x| self.profile_b.eval(x, 0).expect("order 0"),
            |x| self.profile_b.eval(x, 1).expect("order 1"),
            target,
            0.0,
            1.0,
        )
    }

    /// Chart-1 map: the inversion of the induced chart-1 profiles.
    pub fn map1(&self, r: f64) -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        if r == 1.0 {
            return Ok(1.0);
        }
        let g1a = induced_a1(&self.profile_a);
        let g1b = induced_a1(&self.profile_b);
        let target = g1a.eval(r, 0)?;
        invert_monotone(
            |x| g1b.eval(x, 0).expect("order 0"),
            |x| g1b.eval(x, 1).expect("order 1"),
            target,
            0.0,
            1.0,
        )
    }

    pub fn apply(&self, pt: &ChartPoint) -> Result<ChartPoint> {
        let image_r = match pt.chart {
            Chart::Zero => self.map0(pt.r)?,
            Chart::One => self.map1(pt.r)?,
        };
        Ok(ChartPoint::new(
            pt.chart,
            image_r,
            pt.theta.value(),
            pt.z.value(),
        ))
    }
}

/// Max coefficient residual of the pullback identity Ψ*β = α at `n` random
/// radii in each chart. The map fixes θ and z, so the pullback acts through
/// the radial reparametrization alone.
pub fn verify_pullback<R: Rng>(
    map: &RadialMap,
    form_a: &ContactForm,
    form_b: &ContactForm,
    n: usize,
    rng: &mut R,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for chart in [Chart::Zero, Chart::One] {
        let ca = form_a.coefficients(chart);
        let cb = form_b.coefficients(chart);
        for _ in 0..n {
            let r = rng.random_range(0.0..=1.0);
            let image = match chart {
                Chart::Zero => map.map0(r)?,
                Chart::One => map.map1(r)?,
            };
            worst = worst
                .max((cb.f(image, 0) - ca.f(r, 0)).abs())
                .max((cb.g(image, 0) - ca.g(r, 0)).abs());
        }
    }
    Ok(worst)
}

/// Max residual of the well-definedness identity
/// ψ⁻¹ ∘ Ψ₀ ∘ ψ = Ψ₁ at `n` random overlap points, measured as chart-point
/// distance (radial + circle distances).
pub fn verify_cocycle<R: Rng>(map: &RadialMap, n: usize, rng: &mut R) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let pt = ChartPoint::new(
            Chart::One,
            rng.random_range(0.01..0.99),
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..TAU),
        );
        let through_chart0 = {
            let in0 = transition(&map.lens, &pt)?;
            let mapped = ChartPoint::new(
                Chart::Zero,
                map.map0(in0.r)?,
                in0.theta.value(),
                in0.z.value(),
            );
            transition_inverse(&map.lens, &mapped)?
        };
        let direct = map.apply(&pt)?;
        let residual = (through_chart0.r - direct.r)
            .abs()
            .max(through_chart0.theta.dist(direct.theta))
            .max(through_chart0.z.dist(direct.z));
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// How the irrationality of the period ratio is witnessed.
#[derive(Debug, Clone, Copy)]
pub enum RatioWitness {
    /// Floating certificate: no rational within tol at denominators ≤ dmax.
    Numeric { dmax: i64, tol: f64 },
    /// Exact quadratic-irrational representation of τ₀/τ₁.
    Exact(QuadIrr),
}

/// Number of strict-contactomorphism classes with prescribed unordered
/// periods {τ₀, τ₁}, together with the two candidate chart-0 rotation
/// numbers mod 1.
#[derive(Debug, Clone)]
pub struct EquivalenceVerdict {
    pub count: u8,
    pub q_squared_mod_p: i64,
    /// ((τ₀/τ₁ − q)/p mod 1, (τ₀/τ₁ − s)/p mod 1)
    pub candidate_rotations: (f64, f64),
    pub coincide: bool,
}

/// Classification count for irregular forms with periods (τ₀, τ₁):
/// one class iff q² ≡ 1 mod p, two otherwise.
pub fn classify_pair(
    lens: &LensParams,
    tau0: f64,
    tau1: f64,
    witness: RatioWitness,
) -> Result<EquivalenceVerdict> {
    let ratio = tau0 / tau1;
    let rational = match witness {
        RatioWitness::Numeric { dmax, tol } => rational_detect(ratio, dmax, tol).is_some(),
        RatioWitness::Exact(qi) => {
            if ((qi.value() - ratio) / ratio).abs() > 1e-9 {
                return Err(Error::NotComparable(format!(
                    "exact witness value {} does not match tau0/tau1 = {ratio}",
                    qi.value()
                )));
            }
            qi.is_rational()
        }
    };
    if rational {
        return Err(Error::WrongClass {
            expected: "irrational period ratio",
            actual: "rational",
        });
    }
    let q_squared_mod_p = (lens.q * lens.q).rem_euclid(lens.p);
    // q ≡ s mod p ⟺ q² ≡ 1 mod p (since q·s ≡ 1)
    let coincide = (lens.q - lens.s).rem_euclid(lens.p) == 0;
    let count = if coincide { 1 } else { 2 };
    debug_assert_eq!(coincide, (lens.q * lens.q - 1).rem_euclid(lens.p) == 0);
    let cand_q = ((ratio - lens.q as f64) / lens.p as f64).rem_euclid(1.0);
    let cand_s = ((ratio - lens.s as f64) / lens.p as f64).rem_euclid(1.0);
    Ok(EquivalenceVerdict {
        count,
        q_squared_mod_p,
        candidate_rotations: (cand_q, cand_s),
        coincide,
    })
}

/// Whether two irregular forms on the same lens space are strictly
/// contactomorphic: some pairing of their cores must match in (minimal
/// period, rotation number mod 1) to 1e-10.
///
/// The irregularity gate runs at the explicit certificate (dmax, tol);
/// quadratic-irrational rotation numbers can have convergents with error
/// just under 1e-12 at denominators near 10⁶, so tolerances at or below
/// ~5e-13 keep the window inside the uniqueness regime tol < 1/(2·dmax²).
pub fn strict_equivalence_predicate(
    form_a: &ContactForm,
    form_b: &ContactForm,
    dmax: i64,
    tol: f64,
) -> Result<bool> {
    if form_a.lens != form_b.lens {
        return Err(Error::NotComparable(
            "forms live on different lens spaces".into(),
        ));
    }
    for form in [form_a, form_b] {
        let class = classify(form, dmax, tol)?;
        if !matches!(class.verdict, Verdict::Irregular) {
            return Err(Error::WrongClass {
                expected: "irregular",
                actual: "quasi-regular",
            });
        }
    }
    let cores =
        |f: &ContactForm| [(f.tau0, f.phi0.rem_euclid(1.0)), (f.tau1, f.phi1.rem_euclid(1.0))];
    let a = cores(form_a);
    let b = cores(form_b);
    let matches_core = |x: (f64, f64), y: (f64, f64)| {
        let rot = (x.1 - y.1).abs();
        (x.0 - y.0).abs() < 1e-10 && rot.min(1.0 - rot) < 1e-10
    };
    Ok((matches_core(a[0], b[0]) && matches_core(a[1], b[1]))
        || (matches_core(a[0], b[1]) && matches_core(a[1], b[0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{from_periods, from_periods_with_degree};
    use crate::lens::make_lens;
    use rand::SeedableRng;

    fn pair_l73() -> (ContactForm, ContactForm) {
        let lens = make_lens(7, 3).unwrap();
        let a = from_periods_with_degree(lens, 1.0, 2.0f64.sqrt(), 3).unwrap();
        let b = from_periods_with_degree(lens, 1.0, 2.0f64.sqrt(), 5).unwrap();
        (a, b)
    }

    #[test]
    fn identity_map_for_identical_forms() {
        let (a, _) = pair_l73();
        let map = build_psi_map(&a, &a).unwrap();
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            assert!((map.map0(r).unwrap() - r).abs() < 1e-13, "r={r}");
            assert!((map.map1(r).unwrap() - r).abs() < 1e-13, "r={r}");
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        assert!(verify_pullback(&map, &a, &a, 100, &mut rng).unwrap() < 1e-13);
        assert!(verify_cocycle(&map, 100, &mut rng).unwrap() < 1e-12);
    }

    #[test]
    fn map_is_monotone_and_fixes_endpoints() {
        let (a, b) = pair_l73();
        let map = build_psi_map(&a, &b).unwrap();
        assert_eq!(map.map0(0.0).unwrap(), 0.0);
        assert_eq!(map.map0(1.0).unwrap(), 1.0);
        let mut prev = 0.0;
        for i in 1..=50 {
            let r = i as f64 / 50.0;
            let m = map.map0(r).unwrap();
            assert!(m > prev, "not monotone at r={r}");
            prev = m;
        }
        // oracle: dense tabulation of b then inverse lookup
        let samples: Vec<(f64, f64)> = (0..=4000)
            .map(|i| {
                let x = i as f64 / 4000.0;
                (b.profile.eval(x, 0).unwrap(), x)
            })
            .collect();
        for i in 1..10 {
            let r = i as f64 / 10.0;
            let target = a.profile.eval(r, 0).unwrap();
            let pos = samples.partition_point(|(v, _)| *v < target);
            let approx = samples[pos.min(samples.len() - 1)].1;
            assert!(
                (map.map0(r).unwrap() - approx).abs() < 1e-3,
                "r={r}: {} vs {approx}",
                map.map0(r).unwrap()
            );
        }
    }

    #[test]
    fn pullback_residual_small() {
        let (a, b) = pair_l73();
        let map = build_psi_map(&a, &b).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let residual = verify_pullback(&map, &a, &b, 300, &mut rng).unwrap();
        assert!(residual < 1e-8, "residual {residual}");
    }

    #[test]
    fn pullback_detects_mismatched_triples() {
        // bypass the gate: same lens, different phi0
        let lens = make_lens(7, 3).unwrap();
        let a = from_periods(lens, 1.0, 2.0f64.sqrt()).unwrap();
        let c = from_periods(lens, 1.0, 1.2).unwrap();
        let map = build_psi_map(&a, &a).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        let residual = verify_pullback(&map, &a, &c, 100, &mut rng).unwrap();
        assert!(residual > 1e-2, "expected O(1) residual, got {residual}");
    }

    #[test]
    fn cocycle_identity_holds() {
        let (a, b) = pair_l73();
        let map = build_psi_map(&a, &b).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        let residual = verify_cocycle(&map, 200, &mut rng).unwrap();
        assert!(residual < 1e-8, "residual {residual}");
        // closed-form version of the same identity
        for i in 1..20 {
            let r = i as f64 / 20.0;
            let lhs = 1.0 - map.map0(1.0 - r).unwrap();
            let rhs = map.map1(r).unwrap();
            assert!((lhs - rhs).abs() < 1e-8, "r={r}");
        }
    }

    #[test]
    fn cocycle_detects_broken_chart1_map() {
        let (a, b) = pair_l73();
        let map = build_psi_map(&a, &b).unwrap();
        // replacing the chart-1 map by the identity breaks the identity
        for i in 1..10 {
            let r = i as f64 / 10.0;
            let lhs = 1.0 - map.map0(1.0 - r).unwrap();
            assert!((lhs - r).abs() > 1e-4, "r={r}");
        }
    }

    #[test]
    fn maps_compose() {
        let lens = make_lens(7, 3).unwrap();
        let a = from_periods_with_degree(lens, 1.0, 2.0f64.sqrt(), 3).unwrap();
        let b = from_periods_with_degree(lens, 1.0, 2.0f64.sqrt(), 5).unwrap();
        let c = from_periods_with_degree(lens, 1.0, 2.0f64.sqrt(), 7).unwrap();
        let ab = build_psi_map(&a, &b).unwrap();
        let bc = build_psi_map(&b, &c).unwrap();
        let ac = build_psi_map(&a, &c).unwrap();
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            let composed = bc.map0(ab.map0(r).unwrap()).unwrap();
            let direct = ac.map0(r).unwrap();
            assert!((composed - direct).abs() < 1e-8, "r={r}");
        }
    }

    #[test]
    fn classify_pair_counts() {
        let w = RatioWitness::Exact(QuadIrr::sqrt(2).recip());
        let l73 = make_lens(7, 3).unwrap();
        let v = classify_pair(&l73, 1.0, 2.0f64.sqrt(), w).unwrap();
        assert_eq!(v.count, 2);
        assert_eq!(v.q_squared_mod_p, 2);
        assert!(!v.coincide);
        // the count equals the number of distinct mod-1 candidate rotations
        let gap = (v.candidate_rotations.0 - v.candidate_rotations.1).rem_euclid(1.0);
        assert!(gap.min(1.0 - gap) > 1e-3);

        let l83 = make_lens(8, 3).unwrap();
        let v = classify_pair(&l83, 1.0, 2.0f64.sqrt(), w).unwrap();
        assert_eq!(v.count, 1);
        assert_eq!(v.q_squared_mod_p, 1);
        assert!(v.coincide);

        let l10 = make_lens(1, 0).unwrap();
        let v = classify_pair(&l10, 1.0, 2.0f64.sqrt(), w).unwrap();
        assert_eq!(v.count, 1, "p = 1 has a single class");
    }

    #[test]
    fn classify_pair_rejects_rational_ratio() {
        let l73 = make_lens(7, 3).unwrap();
        assert!(matches!(
            classify_pair(
                &l73,
                2.0,
                3.0,
                RatioWitness::Numeric {
                    dmax: 1_000_000,
                    tol: 1e-12
                }
            ),
            Err(Error::WrongClass { .. })
        ));
        assert!(matches!(
            classify_pair(&l73, 2.0, 3.0, RatioWitness::Exact(QuadIrr::rational(2, 3))),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn swapped_periods_inequivalent_iff_q_squared() {
        // certificate tol 1e-13: the swapped form's φ₀ = (√2 − 3)/7 has a
        // convergent at error ~4.8e-13, so 1e-12 would spuriously read it
        // as rational
        let (dmax, tol) = (1_000_000, 1e-13);
        let l73 = make_lens(7, 3).unwrap();
        let a = from_periods(l73, 1.0, 2.0f64.sqrt()).unwrap();
        let b = from_periods(l73, 2.0f64.sqrt(), 1.0).unwrap();
        // q² = 9 ≡ 2 mod 7, so the swapped pair is NOT equivalent, and no
        // radial map can even be attempted (the triples differ)
        assert!(!strict_equivalence_predicate(&a, &b, dmax, tol).unwrap());
        assert!(matches!(
            build_psi_map(&a, &b),
            Err(Error::NotComparable(_))
        ));
        // a form is equivalent to itself and to any same-triple profile
        assert!(strict_equivalence_predicate(&a, &a, dmax, tol).unwrap());
        let a5 = from_periods_with_degree(l73, 1.0, 2.0f64.sqrt(), 5).unwrap();
        assert!(strict_equivalence_predicate(&a, &a5, dmax, tol).unwrap());
        // the τ₀-cores of the two forms differ in rotation number by
        // (s − q)/7 = 2/7 mod 1
        let b_phi_tau0_core = (1.0 / 2.0f64.sqrt() - 5.0) / 7.0;
        let shift = (a.phi0 - b_phi_tau0_core).rem_euclid(1.0);
        assert!((shift - 2.0 / 7.0).abs() < 1e-12);
    }
}
