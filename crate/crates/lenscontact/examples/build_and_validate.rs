//! Build a K-contact form on L(7,3) with core periods (1, √2) and run the
//! full validation stack: boundary/parity conditions, monotonicity, chart
//! overlap consistency, metric compatibility, and Reeb invariance.

use lenscontact::form::from_periods;
use lenscontact::lens::make_lens;
use lenscontact::metric::{reeb_invariance_check, verify_compatibility};
use lenscontact::profile::{validate_monotone, validate_smoothness};
use rand::{rngs::StdRng, SeedableRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lens = make_lens(7, 3)?;
    println!("lens L(7,3): m = {}, s = {} (m·p + s·q = 1)", lens.m, lens.s);

    let form = from_periods(lens, 1.0, 2.0f64.sqrt())?;
    println!(
        "form: tau0 = {}, tau1 = {:.15}, phi0 = {:.15}, phi1 = {:.15}",
        form.tau0, form.tau1, form.phi0, form.phi1
    );
    println!("profile degree {} in u = (1 - cos pi r)/2", form.profile.degree());

    let report = validate_smoothness(&form.profile, 5, 1e-4);
    println!("\nsmoothness conditions:");
    for check in report.checks.iter().chain(report.gauge.iter()) {
        println!(
            "  {:<14} {:>12.3e}  (tol {:.0e}) {}",
            check.name,
            check.value,
            check.tolerance,
            if check.pass { "ok" } else { "FAIL" }
        );
    }
    println!("monotone a' > 0: {}", validate_monotone(&form.profile, 512));

    let mut rng = StdRng::seed_from_u64(0);
    println!(
        "overlap consistency (200 samples): {:.3e}",
        form.overlap_consistency(200, &mut rng)
    );
    let compat = verify_compatibility(&form, 200, &mut rng)?;
    println!(
        "metric compatibility: g(R,.) = alpha to {:.3e}, sqrt(det g) = density to {:.3e}",
        compat.reeb_identity, compat.volume_identity
    );
    println!(
        "Reeb invariance of the metric (finite-difference Lie derivative): {:.3e}",
        reeb_invariance_check(&form, 100, 1e-4, &mut rng)
    );
    Ok(())
}
