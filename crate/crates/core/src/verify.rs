//! Verification suites with uniform pass/fail reports.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::altforms::{fuse, pfaffian, AltForm4};
use crate::arith::{
    count_sqrt_mod, count_sqrt_mod_brute, count_sqrt_prime_power, is_fundamental, Discriminant,
};
use crate::cubes::{
    congruence_roots, construct_cube, constructed_tuples, count_orbits, verify_composition_law,
    BorelElement, Cube, CubeInvariants, RationalCube, Slicing,
};
use crate::error::Result;
use crate::linalg::{mat4_det, mat4_from_i64, Mat2, Mat4};
use crate::localfactors::{check_local_identity, SatakeParameter};
use crate::series::{verify_coefficient_identity, verify_ptilde2};

pub const DEFAULT_CASES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub status: Status,
    pub cases_run: u64,
    pub first_failure: Option<Failure>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates cases until the first failure.
struct Run {
    suite: String,
    start: Instant,
    cases: u64,
    failure: Option<Failure>,
}

impl Run {
    fn new(suite: &str) -> Self {
        Run {
            suite: suite.to_string(),
            start: Instant::now(),
            cases: 0,
            failure: None,
        }
    }

    /// Records one case; returns `false` once a failure has been seen.
    fn check(
        &mut self,
        ok: bool,
        inputs: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) -> bool {
        self.cases += 1;
        if !ok {
            self.failure = Some(Failure {
                inputs: inputs(),
                expected: expected(),
                actual: actual(),
            });
        }
        ok
    }

    fn finish(self) -> Report {
        Report {
            suite: self.suite,
            status: if self.failure.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            cases_run: self.cases,
            first_failure: self.failure,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        rng.gen_range(-12i64..=12).into(),
        rng.gen_range(1i64..=9).into(),
    )
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Odd fundamental discriminants with `|D| <= bound`.
pub fn odd_fundamentals(bound: i64) -> Vec<Discriminant> {
    (-bound..=bound)
        .filter(|&d| d.rem_euclid(4) == 1 && is_fundamental(d))
        .map(|d| Discriminant::new(d).expect("fundamental"))
        .collect()
}

/// All fundamental discriminants with `|D| <= bound`.
pub fn fundamentals(bound: i64) -> Vec<Discriminant> {
    (-bound..=bound)
        .filter(|&d| is_fundamental(d))
        .map(|d| Discriminant::new(d).expect("fundamental"))
        .collect()
}

/// Odd discriminants (`D = 1 mod 4`, `D != 0`) with `|D| <= bound`.
pub fn odd_discriminants(bound: i64) -> Vec<Discriminant> {
    (-bound..=bound)
        .filter(|&d| d.rem_euclid(4) == 1)
        .map(|d| Discriminant::new(d).expect("odd discriminant"))
        .collect()
}

/// Closed-form `A(d, p^l)` against brute force for `d = d0 p^k`.
pub fn prime_power_suite(primes: &[u64], kmax: u32, lmax: u32, d0max: i64) -> Report {
    let mut run = Run::new("prime-power");
    'outer: for &p in primes {
        for d0 in (-d0max..=d0max).filter(|d| *d != 0 && d.rem_euclid(p as i64) != 0) {
            for k in 0..=kmax {
                let d = d0 * (p as i64).pow(k);
                for l in 0..=lmax {
                    let fast = count_sqrt_prime_power(d, p, l);
                    let slow = count_sqrt_mod_brute(d, p.pow(l));
                    let ok = fast.is_ok() && fast == slow;
                    if !run.check(
                        ok,
                        || format!("d = {d0}*{p}^{k}, modulus {p}^{l}"),
                        || format!("{slow:?}"),
                        || format!("{fast:?}"),
                    ) {
                        break 'outer;
                    }
                }
            }
        }
    }
    run.finish()
}

/// The `A(D, 4m)` series against the WMDS-side convolution.
pub fn coefficient_identity_suite(discs: &[Discriminant], limit: u64) -> Result<Report> {
    let mut run = Run::new("prop2");
    for &d in discs {
        let r = verify_coefficient_identity(d, limit)?;
        let miss = r.first_mismatch.clone();
        if !run.check(
            r.passed(),
            || format!("D = {}, m = {}", d, miss.as_ref().map_or(0, |m| m.m)),
            || format!("{}", miss.as_ref().map_or(0, |m| m.rhs)),
            || format!("{}", miss.as_ref().map_or(0, |m| m.lhs)),
        ) {
            break;
        }
    }
    Ok(run.finish())
}

/// The 2-adic tables and the constant `2` for each discriminant.
pub fn ptilde2_suite(discs: &[Discriminant], lmax: u32) -> Result<Report> {
    let mut run = Run::new("ptilde2");
    for &d in discs {
        let r = verify_ptilde2(d, lmax)?;
        if !run.check(
            r.passed(),
            || format!("D = {d}, lmax = {lmax}"),
            || "tables match, ratio 2".to_string(),
            || format!("table {:?}, numerator {:?}", r.table_mismatch, r.numerator),
        ) {
            break;
        }
    }
    Ok(run.finish())
}

fn check_constructed(cube: &Cube, inv: &CubeInvariants) -> std::result::Result<(), String> {
    let e = &cube.entries;
    if !e[0].is_zero() {
        return Err(format!("a = {}", e[0]));
    }
    if !e[1].gcd(&e[4]).gcd(&e[5]).is_one() {
        return Err(format!("gcd(b, e, f) = {}", e[1].gcd(&e[4]).gcd(&e[5])));
    }
    if cube.disc() != inv.disc {
        return Err(format!("disc = {}", cube.disc()));
    }
    let q1 = cube.qform(Slicing::First);
    let q2 = cube.qform(Slicing::Second);
    if q1.a != inv.m || q1.b != inv.x || q2.a != inv.n || q2.b != inv.y {
        return Err(format!("Q1 = {q1}, Q2 = {q2}"));
    }
    Ok(())
}

/// Runs the cube constructor over every admissible `(x, y)`.
pub fn construction_suite(discs: &[Discriminant], bound: i64) -> Result<Report> {
    let mut run = Run::new("cube-construction");
    let range: Vec<i64> = (-bound..=bound).filter(|x| *x != 0).collect();
    'outer: for &d in discs {
        let roots: Vec<Vec<i64>> = range
            .iter()
            .map(|&m| congruence_roots(d.value(), m))
            .collect::<Result<_>>()?;
        for (i, &m) in range.iter().enumerate() {
            for (j, &n) in range.iter().enumerate() {
                for &x in &roots[i] {
                    for &y in &roots[j] {
                        let inv = CubeInvariants::from_i64(d.value(), m, n, x, y);
                        let outcome = construct_cube(&inv)
                            .map_err(|e| e.to_string())
                            .and_then(|c| check_constructed(&c, &inv).map(|_| c));
                        if !run.check(
                            outcome.is_ok(),
                            || format!("(D, m, n, x, y) = ({d}, {m}, {n}, {x}, {y})"),
                            || {
                                format!(
                                    "a = 0, gcd(b,e,f) = 1, Q1 = ({m}, {x}, _), Q2 = ({n}, {y}, _)"
                                )
                            },
                            || outcome.clone().err().unwrap_or_default(),
                        ) {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    Ok(run.finish())
}

/// Orbit counts against `A(D, 4m) A(D, 4n) / 4` and the constructed tuples.
pub fn orbit_suite(discs: &[Discriminant], bound: i64) -> Result<Report> {
    let mut run = Run::new("orbit-count");
    let range: Vec<i64> = (-bound..=bound).filter(|x| *x != 0).collect();
    'outer: for &d in discs {
        for &m in &range {
            for &n in &range {
                let count = count_orbits(d, m, n)?;
                let am = count_sqrt_mod(d.value(), 4 * m.unsigned_abs())?;
                let an = count_sqrt_mod(d.value(), 4 * n.unsigned_abs())?;
                let formula = BigRational::new(BigInt::from(am * an), BigInt::from(4));
                let tuples = constructed_tuples(d.value(), m, n)?.len();
                let ok = count == formula && count == BigRational::from_integer(tuples.into());
                if !run.check(
                    ok,
                    || format!("(D, m, n) = ({d}, {m}, {n})"),
                    || format!("{formula} = #tuples {tuples}"),
                    || format!("{count}"),
                ) {
                    break 'outer;
                }
            }
        }
    }
    Ok(run.finish())
}

/// Composition law for each discriminant.
pub fn composition_suite(discs: &[Discriminant]) -> Result<Report> {
    let mut run = Run::new("composition");
    for &d in discs {
        let r = verify_composition_law(d)?;
        let h = r.class_number;
        if !run.check(
            r.passed(),
            || format!("D = {d}"),
            || format!("{} cube classes, all products principal", h * h),
            || {
                format!(
                    "{} cube classes, {}",
                    r.cube_classes,
                    r.failures
                        .first()
                        .map_or(String::new(), |f| f.reason.clone())
                )
            },
        ) {
            break;
        }
    }
    Ok(run.finish())
}

/// Split and inert local identities at every `alpha`.
pub fn local_suite(
    disc: Discriminant,
    primes: &[u64],
    alphas: &[SatakeParameter],
    order: usize,
) -> Result<Report> {
    let mut run = Run::new("local");
    'outer: for &p in primes {
        for alpha in alphas {
            let c = check_local_identity(disc, p, alpha, order)?;
            if !run.check(
                c.passed(),
                || {
                    format!(
                        "D = {disc}, p = {p} ({}), alpha = {alpha}, order {order}",
                        c.place
                    )
                },
                || c.expected.to_string(),
                || c.integral.to_string(),
            ) {
                break 'outer;
            }
        }
    }
    Ok(run.finish())
}

pub fn random_cube(rng: &mut ChaCha8Rng, bound: i64) -> Cube {
    Cube::from_i64(std::array::from_fn(|_| rng.gen_range(-bound..=bound)))
}

/// `Q_{fuse(A)} = Q_A^1` and `disc(fuse(A)) = disc(A)` on random cubes.
pub fn fusion_suite(seed: u64, cases: u64) -> Report {
    let mut run = Run::new("fusion");
    let mut rng = rng(seed);
    for _ in 0..cases {
        let cube = random_cube(&mut rng, 50);
        let fused = fuse(&cube);
        let q = fused.qform().to_integral();
        let expected = cube.qform(Slicing::First);
        let ok =
            q.as_ref() == Ok(&expected) && fused.disc() == BigRational::from_integer(cube.disc());
        if !run.check(
            ok,
            || format!("cube {cube}"),
            || format!("{expected}, disc {}", cube.disc()),
            || format!("{}, disc {}", fused.qform(), fused.disc()),
        ) {
            break;
        }
    }
    run.finish()
}

fn random_lower(rng: &mut ChaCha8Rng) -> Mat2<BigRational> {
    Mat2::new(
        nonzero_rational(rng),
        BigRational::zero(),
        random_rational(rng),
        nonzero_rational(rng),
    )
}

pub fn random_borel(rng: &mut ChaCha8Rng) -> BorelElement {
    loop {
        let g3 = Mat2::new(
            random_rational(rng),
            random_rational(rng),
            random_rational(rng),
            random_rational(rng),
        );
        if let Ok(b) = BorelElement::new(random_lower(rng), random_lower(rng), g3) {
            return b;
        }
    }
}

/// `D, m, n` scale by `chi_1, chi_2, chi_3` under random Borel elements.
pub fn characters_suite(seed: u64, cases: u64) -> Report {
    let mut run = Run::new("characters");
    let mut rng = rng(seed);
    for _ in 0..cases {
        let cube: RationalCube = Cube::new(std::array::from_fn(|_| random_rational(&mut rng)));
        let g = random_borel(&mut rng);
        let (d, m, n) = cube.borel_invariants();
        let (d2, m2, n2) = g.act(&cube).borel_invariants();
        let expected = (g.chi1() * &d, g.chi2() * &m, g.chi3() * &n);
        let ok = (d2.clone(), m2.clone(), n2.clone()) == expected;
        if !run.check(
            ok,
            || format!("cube {cube}, element {:?}", g.parts()),
            || format!("{expected:?}"),
            || format!("{:?}", (d2, m2, n2)),
        ) {
            break;
        }
    }
    run.finish()
}

pub fn random_alternating(rng: &mut ChaCha8Rng, bound: i64) -> AltForm4 {
    AltForm4::from_i64(std::array::from_fn(|_| rng.gen_range(-bound..=bound)))
}

pub fn random_mat4(rng: &mut ChaCha8Rng, bound: i64) -> Mat4 {
    mat4_from_i64(std::array::from_fn(|_| {
        std::array::from_fn(|_| rng.gen_range(-bound..=bound))
    }))
}

/// `Pfaff^2 = det`, `Pfaff(g M g^t) = det(g) Pfaff(M)`, plus the two
/// normalization cases.
pub fn pfaffian_suite(seed: u64, cases: u64) -> Report {
    let mut run = Run::new("pfaffian");
    let j = mat4_from_i64([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]);
    let fixed = [
        (j, 1i64),
        (AltForm4::from_i64([1, 1, 2, 3, 4, 5]).to_matrix(), -7),
    ];
    for (m, value) in fixed {
        let got = pfaffian(&m);
        let want = BigRational::from_integer(value.into());
        if !run.check(
            got.as_ref() == Ok(&want),
            || format!("{m:?}"),
            || want.to_string(),
            || format!("{got:?}"),
        ) {
            return run.finish();
        }
    }
    let mut rng = rng(seed);
    for _ in 0..cases {
        let form = random_alternating(&mut rng, 20);
        let m = form.to_matrix();
        let pf = form.pfaffian();
        let det = mat4_det(&m);
        let g = random_mat4(&mut rng, 4);
        let moved = form.congruence(&g).pfaffian();
        let scaled = mat4_det(&g) * &pf;
        let ok = &pf * &pf == det && moved == scaled && pfaffian(&m) == Ok(pf.clone());
        if !run.check(
            ok,
            || format!("M = {form:?}, g = {g:?}"),
            || format!("Pf^2 = {det}, Pf(gMg^t) = {scaled}"),
            || format!("Pf^2 = {}, Pf(gMg^t) = {moved}", &pf * &pf),
        ) {
            break;
        }
    }
    run.finish()
}
