//! `sum A(D, 4m) m^-s` against `2 zeta(s)/zeta(2s) sum chi_D(m^) a(D, m) m^-s`,
//! compared coefficient by coefficient.

use cubezeta::arith::Discriminant;
use cubezeta::series::{coeffs_a, coeffs_rhs, verify_coefficient_identity, verify_ptilde2};

fn main() -> Result<(), cubezeta::error::Error> {
    let disc = Discriminant::new(-23)?;
    let a = coeffs_a(disc, 16)?;
    let b = coeffs_rhs(disc, 16)?;
    println!("m:      {:?}", (1..=16).collect::<Vec<_>>());
    println!("A-side: {:?}", a.coeffs);
    println!("WMDS:   {:?}", b.coeffs);

    for d in [-23, 5, -3, -75, 45, -135] {
        let disc = Discriminant::new(d)?;
        let r = verify_coefficient_identity(disc, 5000)?;
        let t = verify_ptilde2(disc, 6)?;
        println!(
            "D = {d:>5}: 5000 coefficients {}, 2-adic table {:?} ratio {:?}",
            if r.passed() { "agree" } else { "DIFFER" },
            t.table,
            t.ratio
        );
    }
    Ok(())
}
