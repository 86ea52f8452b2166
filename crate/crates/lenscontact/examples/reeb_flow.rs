//! Reeb flows: the exact linear flow in each chart, the generic fixed-step
//! integrator, rotation numbers by monodromy, and the conjugacy of the two
//! chart flows through the transition map.

use lenscontact::form::from_periods;
use lenscontact::lens::{make_lens, point_distance, transition, Chart, ChartPoint};
use lenscontact::reeb::{flow, flow_ode, monodromy_rotation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lens = make_lens(7, 3)?;
    let form = from_periods(lens, 1.0, 2.0f64.sqrt())?;

    // exact flow vs generic integrator over a long horizon
    let c0 = form.coefficients(Chart::Zero);
    let start = ChartPoint::new(Chart::Zero, 0.35, 0.2, 0.9);
    let horizon = 100.0;
    let numeric = flow_ode(&c0, &start, horizon, 1e-3)?;
    let exact = flow(&form, &start, horizon);
    println!(
        "flow over t = {horizon}: integrator vs exact angular error {:.3e}",
        point_distance(&numeric, &exact)
    );

    // the linearized return map about each core is a rotation by 2*pi*phi
    let m0 = monodromy_rotation(&form.coefficients(Chart::Zero), 10_000)?;
    let m1 = monodromy_rotation(&form.coefficients(Chart::One), 10_000)?;
    println!("monodromy rotation chart 0: {m0:.12} (phi0 mod 1 = {:.12})", form.phi0.rem_euclid(1.0));
    println!("monodromy rotation chart 1: {m1:.12} (phi1 mod 1 = {:.12})", form.phi1.rem_euclid(1.0));

    // chart-1 orbits transition to chart-0 orbits of the same flow
    let pt1 = ChartPoint::new(Chart::One, 0.3, 0.8, 1.9);
    let pt0 = transition(&lens, &pt1)?;
    let mut worst: f64 = 0.0;
    for k in 1..=40 {
        let t = 0.25 * k as f64;
        let lhs = transition(&lens, &flow(&form, &pt1, t))?;
        let rhs = flow(&form, &pt0, t);
        worst = worst.max(point_distance(&lhs, &rhs));
    }
    println!("flow conjugacy through the transition (40 samples): {worst:.3e}");

    // a few samples of the orbit in CSV form
    println!("\nt,chart,r,theta,z");
    for k in 0..=10 {
        let t = 0.5 * k as f64;
        let pt = flow(&form, &start, t);
        println!(
            "{t},{},{},{:.12},{:.12}",
            pt.chart.index(),
            pt.r,
            pt.theta.value(),
            pt.z.value()
        );
    }
    Ok(())
}
