//! Build cubes from prescribed invariants `(D, m, n, x, y)` and count orbits.

use cubezeta::arith::Discriminant;
use cubezeta::cubes::{
    congruence_roots, construct_cube, constructed_tuples, count_orbits, CubeInvariants, Slicing,
};

fn main() -> Result<(), cubezeta::error::Error> {
    let (d, m, n) = (-23, 2, 3);
    for x in congruence_roots(d, m)? {
        for y in congruence_roots(d, n)? {
            let cube = construct_cube(&CubeInvariants::from_i64(d, m, n, x, y))?;
            println!(
                "(x, y) = ({x}, {y})  cube = [{cube}]  Q1 = {}  Q2 = {}  Q3 = {}",
                cube.qform(Slicing::First),
                cube.qform(Slicing::Second),
                cube.qform(Slicing::Third)
            );
        }
    }
    let orbits = count_orbits(Discriminant::new(d)?, m, n)?;
    let tuples = constructed_tuples(d, m, n)?.len();
    println!("orbits with (D, m, n) = ({d}, {m}, {n}): {orbits}, distinct tuples: {tuples}");

    match construct_cube(&CubeInvariants::from_i64(d, 1, 1, 0, 1)) {
        Ok(_) => unreachable!(),
        Err(e) => println!("(x, y) = (0, 1) rejected: {e}"),
    }
    Ok(())
}
