//! Alternating pairs: Pfaffian, the associated binary form, and fusion of cubes.

use cubezeta::altforms::{fuse, AltForm4, AltFormPair};
use cubezeta::cubes::{Cube, Slicing};
use cubezeta::linalg::mat4_det;

fn main() -> Result<(), cubezeta::error::Error> {
    let m = AltForm4::from_i64([1, 1, 2, 3, 4, 5]);
    println!(
        "Pf{:?} = {}, det = {}",
        [1, 1, 2, 3, 4, 5],
        m.pfaffian(),
        mat4_det(&m.to_matrix())
    );
    println!("Pf(J) = {}", AltForm4::standard().pfaffian());

    let cube = Cube::from_i64([0, 1, 1, -6, 1, -1, -6, 0]);
    let f = fuse(&cube);
    println!(
        "cube [{cube}] -> Q_F = {}, Q_A^1 = {}",
        f.qform(),
        cube.qform(Slicing::First)
    );
    let (disc, p0, p1) = f.invariants_w()?;
    println!("  (disc, P0, P1) = ({disc}, {p0}, {p1})");

    let w = AltFormPair::base_point(-23);
    let (disc, p0, p1) = w.invariants_w()?;
    println!(
        "base point: Q_F = {}, (disc, P0, P1) = ({disc}, {p0}, {p1})",
        w.qform()
    );
    Ok(())
}
