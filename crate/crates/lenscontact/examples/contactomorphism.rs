//! Strict contactomorphisms: the radial map between two profiles realizing
//! the same triple, the cocycle compatibility of its chart components, and
//! the q² ≡ 1 mod p count of equivalence classes for prescribed periods.

use lenscontact::contacto::{
    build_psi_map, classify_pair, strict_equivalence_predicate, verify_cocycle, verify_pullback,
    RatioWitness,
};
use lenscontact::form::{from_periods, from_periods_with_degree};
use lenscontact::lens::make_lens;
use lenscontact::rational::QuadIrr;
use rand::{rngs::StdRng, SeedableRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lens = make_lens(7, 3)?;
    let tau1 = 2.0f64.sqrt();

    // same triple realized by profiles of different polynomial degree
    let cubic = from_periods_with_degree(lens, 1.0, tau1, 3)?;
    let quintic = from_periods_with_degree(lens, 1.0, tau1, 5)?;
    let map = build_psi_map(&cubic, &quintic)?;
    let mut rng = StdRng::seed_from_u64(0);
    println!(
        "pullback residual (degree 3 -> 5): {:.3e}",
        verify_pullback(&map, &cubic, &quintic, 300, &mut rng)?
    );
    println!(
        "cocycle residual: {:.3e}",
        verify_cocycle(&map, 300, &mut rng)?
    );
    println!("radial map samples (r, map0, map1):");
    for k in 0..=5 {
        let r = k as f64 / 5.0;
        println!("  {r:.1}  {:.12}  {:.12}", map.map0(r)?, map.map1(r)?);
    }

    // swapped periods are inequivalent exactly when q^2 != 1 mod p
    let swapped = from_periods(lens, tau1, 1.0)?;
    let equivalent = strict_equivalence_predicate(&cubic, &swapped, 1_000_000, 1e-13)?;
    println!("\nL(7,3): periods (1, sqrt2) ~ (sqrt2, 1)? {equivalent} (q^2 = 9 = 2 mod 7)");

    // the classification count, with the irrationality witnessed exactly:
    // tau0/tau1 = 1/sqrt2 = (0 + 1*sqrt2)/2
    let witness = RatioWitness::Exact(QuadIrr::new(0, 1, 2, 2));
    for (p, q) in [(7i64, 3i64), (8, 3), (1, 0)] {
        let lens = make_lens(p, q)?;
        let verdict = classify_pair(&lens, 1.0, tau1, witness)?;
        println!(
            "L({p},{q}): q^2 mod p = {}, classes with periods {{1, sqrt2}}: {}",
            verdict.q_squared_mod_p, verdict.count
        );
    }
    Ok(())
}
