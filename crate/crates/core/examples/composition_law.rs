//! Cubes realize every pair of classes and their three forms multiply to the
//! identity.

use cubezeta::arith::Discriminant;
use cubezeta::cubes::verify_composition_law;

fn main() -> Result<(), cubezeta::error::Error> {
    for d in [-7, -15, -23, -31, -47, -71] {
        let r = verify_composition_law(Discriminant::new(d)?)?;
        println!(
            "D = {d:>4}  h = {}  class pairs hit = {:>2}  cubes = {:>2}  {}",
            r.class_number,
            r.cube_classes,
            r.cubes_checked,
            if r.passed() { "ok" } else { "FAILED" }
        );
        for f in &r.failures {
            println!("    {} x {}: {}", f.first, f.second, f.reason);
        }
    }
    Ok(())
}
