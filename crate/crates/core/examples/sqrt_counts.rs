//! Square roots modulo `a`: closed form against brute force, plus the WMDS
//! weights `a(D, m)`.

use cubezeta::arith::{count_sqrt_mod, count_sqrt_mod_brute, m_hat, wmds_coeff, Discriminant};

fn main() -> Result<(), cubezeta::error::Error> {
    let d = -23;
    println!("A({d}, a) for a = 1..=24");
    for a in 1..=24u64 {
        let fast = count_sqrt_mod(d, a)?;
        assert_eq!(fast, count_sqrt_mod_brute(d, a)?);
        print!("{fast} ");
    }
    println!();

    // large prime powers never touch the residues
    println!(
        "A(-23 * 3^4, 3^30) = {}",
        count_sqrt_mod(-23 * 81, 3u64.pow(30))?
    );

    let disc = Discriminant::new(-3 * 81)?;
    println!("D = {disc}: m, m^, a(D, m)");
    for m in [1, 3, 9, 27, 81, 243, 10, 18] {
        println!("  {m:>4} {:>4} {:>4}", m_hat(disc, m), wmds_coeff(disc, m));
    }
    Ok(())
}
