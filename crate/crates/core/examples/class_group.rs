//! Class group of an imaginary quadratic discriminant: reduced forms, the
//! composition table and Heegner points.
//!
//! `cargo run --example class_group -- -47`

use cubezeta::arith::Discriminant;
use cubezeta::qforms::enumerate_class_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: i64 = std::env::args().nth(1).map_or(Ok(-23), |s| s.parse())?;
    let disc = Discriminant::new(d)?;
    let classes = enumerate_class_group(disc)?;
    println!("h({d}) = {}", classes.len());

    for (i, c) in classes.iter().enumerate() {
        let z = c.heegner_point();
        println!(
            "  [{i}] {}  tau = {} + i*sqrt({})",
            c.representative(),
            z.re,
            z.im_sq
        );
    }

    println!("composition table (row * column):");
    for a in &classes {
        let row: Vec<String> = classes
            .iter()
            .map(|b| {
                let c = a.compose(b).expect("same discriminant");
                classes.iter().position(|x| *x == c).unwrap().to_string()
            })
            .collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
