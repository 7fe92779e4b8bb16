//! Truncated Shintani double series and the A_2 double Dirichlet series.

use cubezeta::arith::Discriminant;
use cubezeta::series::{shintani_z, wmds_z};
use num_complex::Complex64;

fn main() -> Result<(), cubezeta::error::Error> {
    let (s, w) = (Complex64::new(3.0, 0.0), Complex64::new(3.0, 0.0));
    for cut in [25, 50, 100, 200] {
        let z = shintani_z(s, w, cut, cut);
        println!(
            "cutoff {cut:>3}: xi1 = {:.12}, xi2 = {:.12}, Z = {:.12}, outer shell {:.2e}",
            z.xi1.re,
            z.xi2.re,
            z.value.re,
            z.last_shell.norm()
        );
    }

    let dset: Vec<Discriminant> = (-50..=50)
        .filter(|d: &i64| d.rem_euclid(4) == 1)
        .map(Discriminant::new)
        .collect::<Result<_, _>>()?;
    let s = Complex64::new(2.0, 1.0);
    println!(
        "Z_A2(2+i, 3) over {} odd discriminants = {:.10}",
        dset.len(),
        wmds_z(s, w, 400, &dset)?
    );
    Ok(())
}
