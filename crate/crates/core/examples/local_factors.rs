//! Spherical functions and the split and inert local identities in
//! `q = p^(-1/2)`.

use cubezeta::arith::Discriminant;
use cubezeta::localfactors::{
    check_local_identity, lfactor_ratio_inert, macdonald, place_type, SatakeParameter,
};

fn main() -> Result<(), cubezeta::error::Error> {
    let alpha = SatakeParameter::from_ratio(3, 2)?;
    for n in 0..3 {
        println!("sigma(p^{n}) = {}", macdonald(&alpha, 3, n, 6)?);
    }

    let disc = Discriminant::new(-23)?;
    for p in [3, 5, 7, 11, 13] {
        let check = check_local_identity(disc, p, &alpha, 40)?;
        println!(
            "p = {p:>2} ({}): {}",
            place_type(disc, p)?,
            if check.passed() {
                "identity holds to q^40"
            } else {
                "MISMATCH"
            }
        );
        println!("    first terms {}", check.integral.truncate(4));
    }
    let inert = lfactor_ratio_inert(&SatakeParameter::from_ratio(7, 1)?, 80)?;
    println!("inert ratio at alpha = 7, order 80: {}", inert.truncate(2));
    Ok(())
}
