//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use cubezeta::arith::{class_number, Discriminant};
use cubezeta::cubes::verify_composition_law;
use cubezeta::localfactors::{place_type, PlaceType, SatakeParameter};
use cubezeta::verify::{self, Report};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_report(r: cubezeta::error::Result<Report>) -> Outcome {
    match r {
        Ok(r) => Outcome {
            passed: r.passed(),
            detail: match &r.first_failure {
                None => format!("{} cases", r.cases_run),
                Some(f) => format!(
                    "{} cases; first failure {}: expected {}, got {}",
                    r.cases_run, f.inputs, f.expected, f.actual
                ),
            },
        },
        Err(e) => Outcome {
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn disc(d: i64) -> Discriminant {
    Discriminant::new(d).unwrap()
}

fn prime_powers() -> Outcome {
    from_report(Ok(verify::prime_power_suite(&[3, 5, 7, 11, 13], 6, 6, 10)))
}

fn coefficient_identity() -> Outcome {
    from_report(verify::coefficient_identity_suite(&verify::odd_fundamentals(200), 5000))
}

fn ptilde2() -> Outcome {
    from_report(verify::ptilde2_suite(&verify::odd_discriminants(400), 6))
}

fn construction() -> Outcome {
    from_report(verify::construction_suite(
        &verify::odd_fundamentals(300),
        20,
    ))
}

fn orbits() -> Outcome {
    from_report(verify::orbit_suite(&verify::fundamentals(300), 20))
}

fn composition() -> Outcome {
    let discs: Vec<_> = [-7, -15, -23, -31].into_iter().map(disc).collect();
    let mut out = from_report(verify::composition_suite(&discs));
    for &d in &discs {
        let h = class_number(d).unwrap() as usize;
        let r = verify_composition_law(d).unwrap();
        if r.cube_classes != h * h {
            out.passed = false;
            out.detail = format!("D = {d}: {} cube classes, h^2 = {}", r.cube_classes, h * h);
        }
    }
    out
}

fn fusion() -> Outcome {
    from_report(Ok(verify::fusion_suite(0, 10_000)))
}

fn characters() -> Outcome {
    from_report(Ok(verify::characters_suite(0, 10_000)))
}

fn local() -> Outcome {
    let alphas: Vec<_> = [(2, 1), (3, 2), (5, 1), (7, 3)]
        .into_iter()
        .map(|(n, d)| SatakeParameter::from_ratio(n, d).unwrap())
        .collect();
    let d = disc(-23);
    assert_eq!(place_type(d, 3), Ok(PlaceType::Split));
    assert_eq!(place_type(d, 5), Ok(PlaceType::Inert));
    from_report(verify::local_suite(d, &[3, 5], &alphas, 40))
}

fn pfaffian() -> Outcome {
    from_report(Ok(verify::pfaffian_suite(0, 10_000)))
}

fn main() {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (
            "prime-power solution law",
            Some(Duration::from_secs(5)),
            prime_powers,
        ),
        (
            "A(D,4m) series identity",
            Some(Duration::from_secs(60)),
            coefficient_identity,
        ),
        (
            "2-adic factor equals 2",
            Some(Duration::from_secs(5)),
            ptilde2,
        ),
        (
            "cube construction",
            Some(Duration::from_secs(120)),
            construction,
        ),
        ("orbit counts", None, orbits),
        (
            "composition law",
            Some(Duration::from_secs(10)),
            composition,
        ),
        ("fusion compatibility", Some(Duration::from_secs(5)), fusion),
        ("Borel characters", None, characters),
        ("local identities", Some(Duration::from_secs(5)), local),
        ("Pfaffian contract", None, pfaffian),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                outcome.passed = false;
                outcome.detail = format!("{}; over the {:?} limit", outcome.detail, limit);
            }
        }
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {:>2}. {name:<26} {:>8.1} ms  {}",
            i + 1,
            elapsed.as_secs_f64() * 1e3,
            outcome.detail
        );
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
