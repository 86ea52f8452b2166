//! Classify Reeb dynamics: an irrational period ratio gives exactly two
//! periodic orbits (the chart cores), a rational ratio makes every orbit
//! periodic with a common generic period.

use lenscontact::form::from_periods;
use lenscontact::lens::{make_lens, Chart, ChartPoint, point_distance};
use lenscontact::reeb::{classify, flow, recurrence_gap, Verdict};

fn describe(label: &str, p: i64, q: i64, tau0: f64, tau1: f64) {
    let lens = make_lens(p, q).unwrap();
    let form = from_periods(lens, tau0, tau1).unwrap();
    let class = classify(&form, 1_000_000, 1e-12).unwrap();
    println!("{label}: L({p},{q}) periods ({tau0}, {tau1})");
    match &class.verdict {
        Verdict::QuasiRegular {
            numerator,
            denominator,
        } => {
            println!("  quasi-regular: phi0 = {numerator}/{denominator}");
            let (a0, a1) = class.orders.as_ref().unwrap();
            println!("  exceptional orders (a0, a1) = ({a0}, {a1})");
            let period = class.generic_period.unwrap();
            println!("  generic minimal period = {period}");
            // first-return oracle at a generic radius
            let pt = ChartPoint::new(Chart::Zero, 0.5, 1.0, 0.5);
            let returned = flow(&form, &pt, period);
            println!(
                "  first-return residual at t = {period}: {:.3e}",
                point_distance(&pt, &returned)
            );
        }
        Verdict::Irregular => {
            let cores = class.orbits.iter().filter(|o| o.periodic).count();
            println!("  irregular: {cores} periodic orbits (the two cores)");
            let best = class.certificate.best.unwrap();
            println!(
                "  certificate: no n/d with d <= {} within {:.0e}; best rejected {}/{} at {:.3e}",
                class.certificate.dmax, class.certificate.tol, best.0, best.1, best.2
            );
            let pt = ChartPoint::new(Chart::Zero, 0.5, 0.0, 0.0);
            let gap = recurrence_gap(&form, &pt, 1e3 * form.tau0, form.tau0 / 8.0);
            println!("  recurrence gap over 10^3 periods: {gap:.4}");
        }
    }
    println!();
}

fn main() {
    describe("irrational ratio", 7, 3, 1.0, 2.0f64.sqrt());
    describe("rational ratio", 1, 0, 2.0, 3.0);
    describe("equal periods (regular fibration)", 1, 0, 1.0, 1.0);
    describe("rational ratio on L(7,3)", 7, 3, 1.0, 1.5);
}
