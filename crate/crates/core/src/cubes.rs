//! Bhargava cubes.
//!
//! A cube is stored by its eight letters `a..h`, front face `[[a, b], [c, d]]`
//! and back face `[[e, f], [g, h]]`. The three ways of cutting it into a pair
//! of opposite faces are
//!
//! ```text
//! M1 = [[a, b], [c, d]]   N1 = [[e, f], [g, h]]
//! M2 = [[a, e], [c, g]]   N2 = [[b, f], [d, h]]
//! M3 = [[a, e], [b, f]]   N3 = [[c, g], [d, h]]
//! ```
//!
//! and each slicing carries the form `Q_i(u, v) = -det(M_i u - N_i v)`.
//! A 2x2 matrix `g` acts on slicing `i` by the row combination
//! `(M_i, N_i) -> (g11 M_i + g12 N_i, g21 M_i + g22 N_i)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::arith::{count_sqrt_mod, Discriminant};
use crate::error::{CongruenceSlot, Error, Result};
use crate::linalg::Mat2;
use crate::qforms::{enumerate_class_group, BinaryQuadraticForm, FormClass};

/// Index of each slice entry in the `a..h` ordering, as `(M, N)` read row-major.
const SLICES: [([usize; 4], [usize; 4]); 3] = [
    ([0, 1, 2, 3], [4, 5, 6, 7]),
    ([0, 4, 2, 6], [1, 5, 3, 7]),
    ([0, 4, 1, 5], [2, 6, 3, 7]),
];

/// Which pair of opposite faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slicing {
    First,
    Second,
    Third,
}

impl Slicing {
    pub const ALL: [Slicing; 3] = [Slicing::First, Slicing::Second, Slicing::Third];

    fn index(self) -> usize {
        match self {
            Slicing::First => 0,
            Slicing::Second => 1,
            Slicing::Third => 2,
        }
    }

    pub fn from_number(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Slicing::First),
            2 => Ok(Slicing::Second),
            3 => Ok(Slicing::Third),
            _ => Err(Error::Invalid(format!("slicing index {i} not in 1..=3"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cube<T = BigInt> {
    pub entries: [T; 8],
}

pub type RationalCube = Cube<BigRational>;

impl<T: fmt::Display> fmt::Display for Cube<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl<T> Cube<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    pub fn new(entries: [T; 8]) -> Self {
        Cube { entries }
    }

    pub fn zero() -> Self {
        Cube::new(std::array::from_fn(|_| T::zero()))
    }

    fn mat(&self, idx: [usize; 4]) -> Mat2<T> {
        let e = &self.entries;
        Mat2::new(
            e[idx[0]].clone(),
            e[idx[1]].clone(),
            e[idx[2]].clone(),
            e[idx[3]].clone(),
        )
    }

    pub fn slice(&self, which: Slicing) -> (Mat2<T>, Mat2<T>) {
        let (m, n) = SLICES[which.index()];
        (self.mat(m), self.mat(n))
    }

    pub fn slices(&self) -> [(Mat2<T>, Mat2<T>); 3] {
        Slicing::ALL.map(|s| self.slice(s))
    }

    /// Coefficients `(A, B, C)` of `-det(M u - N v) = A u^2 + B uv + C v^2`.
    pub fn qform_coeffs(&self, which: Slicing) -> [T; 3] {
        let (m, n) = self.slice(which);
        let middle = m.a.clone() * n.d.clone() + m.d.clone() * n.a.clone()
            - m.b.clone() * n.c.clone()
            - m.c.clone() * n.b.clone();
        [-m.det(), middle, -n.det()]
    }

    /// `(-ah + bg + cf - de)^2 - 4(ad - bc)(eh - fg)`.
    pub fn disc(&self) -> T {
        let [a, b, c, d, e, f, g, h] = self.entries.clone();
        let mid = -(a.clone() * h.clone()) + b.clone() * g.clone() + c.clone() * f.clone()
            - d.clone() * e.clone();
        let four = T::one() + T::one() + T::one() + T::one();
        mid.clone() * mid - four * (a * d - b * c) * (e * h - f * g)
    }

    /// `m(A) = -(ad - bc) = Q_1(1, 0)`.
    pub fn m(&self) -> T {
        -self.slice(Slicing::First).0.det()
    }

    /// `n(A) = -(ag - ce) = Q_2(1, 0)`.
    pub fn n(&self) -> T {
        -self.slice(Slicing::Second).0.det()
    }

    /// The three Borel relative invariants `(D, m, n)`.
    pub fn borel_invariants(&self) -> (T, T, T) {
        (self.disc(), self.m(), self.n())
    }

    pub fn act_slice(&self, which: Slicing, g: &Mat2<T>) -> Self {
        let (mi, ni) = SLICES[which.index()];
        let mut out = self.entries.clone();
        for k in 0..4 {
            let mv = self.entries[mi[k]].clone();
            let nv = self.entries[ni[k]].clone();
            out[mi[k]] = g.a.clone() * mv.clone() + g.b.clone() * nv.clone();
            out[ni[k]] = g.c.clone() * mv + g.d.clone() * nv;
        }
        Cube::new(out)
    }

    /// `(g1, g2, g3)` acting slice by slice; the three actions commute.
    pub fn act(&self, g1: &Mat2<T>, g2: &Mat2<T>, g3: &Mat2<T>) -> Self {
        self.act_slice(Slicing::First, g1)
            .act_slice(Slicing::Second, g2)
            .act_slice(Slicing::Third, g3)
    }
}

impl Cube<BigInt> {
    pub fn from_i64(entries: [i64; 8]) -> Self {
        Cube::new(entries.map(BigInt::from))
    }

    pub fn to_rational(&self) -> RationalCube {
        Cube::new(self.entries.clone().map(BigRational::from_integer))
    }

    pub fn qform(&self, which: Slicing) -> BinaryQuadraticForm {
        let [a, b, c] = self.qform_coeffs(which);
        BinaryQuadraticForm { a, b, c }
    }

    /// All three forms primitive.
    pub fn is_projective(&self) -> bool {
        Slicing::ALL.iter().all(|&s| self.qform(s).is_primitive())
    }

    /// `(D, m, n, x, y)` with `x`, `y` the middle coefficients of `Q_1`, `Q_2`
    /// reduced into `[0, 2|m|)` and `[0, 2|n|)`.
    pub fn invariant_tuple(&self) -> Result<CubeInvariants> {
        let disc = self.disc();
        let q1 = self.qform(Slicing::First);
        let q2 = self.qform(Slicing::Second);
        if disc.is_zero() || q1.a.is_zero() || q2.a.is_zero() {
            return Err(Error::DegenerateInvariants);
        }
        let x = q1.b.mod_floor(&(BigInt::from(2) * q1.a.abs()));
        let y = q2.b.mod_floor(&(BigInt::from(2) * q2.a.abs()));
        Ok(CubeInvariants {
            disc,
            m: q1.a,
            n: q2.a,
            x,
            y,
        })
    }
}

/// `(D, m, n, x, y)`: `x^2 = D (mod 4m)`, `y^2 = D (mod 4n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeInvariants {
    pub disc: BigInt,
    pub m: BigInt,
    pub n: BigInt,
    pub x: BigInt,
    pub y: BigInt,
}

impl CubeInvariants {
    pub fn from_i64(disc: i64, m: i64, n: i64, x: i64, y: i64) -> Self {
        CubeInvariants {
            disc: disc.into(),
            m: m.into(),
            n: n.into(),
            x: x.into(),
            y: y.into(),
        }
    }
}

fn check_congruence(
    slot: CongruenceSlot,
    disc: &BigInt,
    lead: &BigInt,
    root: &BigInt,
) -> Result<BigInt> {
    let two_lead = BigInt::from(2) * lead.abs();
    if root.is_negative() || *root >= two_lead {
        return Err(Error::Congruence {
            slot,
            detail: format!("{root} outside [0, {}]", &two_lead - 1),
        });
    }
    let four_lead = BigInt::from(4) * lead;
    let num = root * root - disc;
    if !(&num % &four_lead).is_zero() {
        return Err(Error::Congruence {
            slot,
            detail: format!("{root}^2 - ({disc}) is not divisible by {four_lead}"),
        });
    }
    Ok(num / four_lead)
}

/// Builds a cube with `a = 0`, `gcd(b, e, f) = 1`, `disc = D`,
/// `Q_1 = (m, x, s)` and `Q_2 = (n, y, t)`.
///
/// With `c = gcd(m, n, (x+y)/2)`, `b = m/c`, `e = n/c`, `f = -(x+y)/(2c)`,
/// the remaining letters solve `s = fg - eh`, `t = fd - bh`,
/// `(x-y)/2 = de - bg`. Free choices are pinned down so the output is
/// deterministic: `h` is the least non-negative solution mod `|f|`, and when
/// `f = 0` the pair `(d, g)` has `d` reduced mod `|b|`.
pub fn construct_cube(inv: &CubeInvariants) -> Result<Cube> {
    let CubeInvariants { disc, m, n, x, y } = inv;
    if m.is_zero() || n.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let s = check_congruence(CongruenceSlot::First, disc, m, x)?;
    let t = check_congruence(CongruenceSlot::Second, disc, n, y)?;

    // x and y share parity since x^2 = y^2 = D (mod 4)
    let half_sum: BigInt = (x + y) / 2;
    let half_diff: BigInt = (x - y) / 2;
    let c = m.gcd(n).gcd(&half_sum);
    let b = m / &c;
    let e = n / &c;
    let f = -(&half_sum / &c);

    let (d, g, h) = if f.is_zero() {
        // b s = e t with gcd(b, e) = 1, so e | s
        let h = -(&s / &e);
        let bez = e.extended_gcd(&b);
        debug_assert!(bez.gcd.is_one());
        let d0 = &bez.x * &half_diff;
        let g0 = -(&bez.y * &half_diff);
        // (d0 + b j, g0 + e j) all solve e d - b g = (x - y)/2
        let d = d0.mod_floor(&b.abs());
        let j = (&d - &d0) / &b;
        let g = &g0 + &e * &j;
        (d, g, h)
    } else {
        // u e + v b + w f = 1
        let eb = e.extended_gcd(&b);
        let ef = eb.gcd.extended_gcd(&f);
        debug_assert!(ef.gcd.is_one());
        let u = &ef.x * &eb.x;
        let v = &ef.x * &eb.y;
        let h = (-(&u * &s + &v * &t)).mod_floor(&f.abs());
        let g_num = &s + &e * &h;
        let d_num = &t + &b * &h;
        debug_assert!((&g_num % &f).is_zero() && (&d_num % &f).is_zero());
        (d_num / &f, g_num / &f, h)
    };

    Ok(Cube::new([BigInt::zero(), b, c, d, e, f, g, h]))
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

/// All `x` in `[0, 2|m|)` with `x^2 = D (mod 4m)`.
pub fn congruence_roots(disc: i64, m: i64) -> Result<Vec<i64>> {
    if m == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let modulus = 4 * m.unsigned_abs() as i128;
    Ok((0..2 * m.abs())
        .filter(|&x| ((x as i128) * (x as i128) - disc as i128).rem_euclid(modulus) == 0)
        .collect())
}

/// Number of integral orbits with invariants `(D, m, n)`:
/// `1/4 * sum_{d | gcd(D1, m, n)} d * A(D/d^2, 4m/d) * A(D/d^2, 4n/d)` where
/// `D = D0 * D1^2`, `D0` squarefree.
pub fn count_orbits(disc: Discriminant, m: i64, n: i64) -> Result<BigRational> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let d_val = disc.value();
    let cofactor = disc.square_cofactor();
    let g = cofactor.gcd(&m.unsigned_abs()).gcd(&n.unsigned_abs());
    let mut total = BigInt::zero();
    for d in (1..=g).filter(|d| g.is_multiple_of(*d)) {
        let reduced = d_val / (d * d) as i64;
        let am = count_sqrt_mod(reduced, 4 * m.unsigned_abs() / d)?;
        let an = count_sqrt_mod(reduced, 4 * n.unsigned_abs() / d)?;
        total += BigInt::from(d) * BigInt::from(am) * BigInt::from(an);
    }
    Ok(BigRational::new(total, BigInt::from(4)))
}

/// An element `(b1, b2, g3)` of `B'_2 x B'_2 x GL_2` over `Q`, with
/// `b_i = [[r_i, 0], [u_i, s_i]]` lower triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelElement {
    b1: Mat2<BigRational>,
    b2: Mat2<BigRational>,
    g3: Mat2<BigRational>,
}

impl BorelElement {
    pub fn new(
        b1: Mat2<BigRational>,
        b2: Mat2<BigRational>,
        g3: Mat2<BigRational>,
    ) -> Result<Self> {
        if !b1.is_lower_triangular() || !b2.is_lower_triangular() {
            return Err(Error::NotLowerTriangular);
        }
        if b1.det().is_zero() || b2.det().is_zero() || g3.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(BorelElement { b1, b2, g3 })
    }

    pub fn identity() -> Self {
        BorelElement {
            b1: Mat2::identity(),
            b2: Mat2::identity(),
            g3: Mat2::identity(),
        }
    }

    pub fn parts(&self) -> (&Mat2<BigRational>, &Mat2<BigRational>, &Mat2<BigRational>) {
        (&self.b1, &self.b2, &self.g3)
    }

    /// `det(b1)^2 det(b2)^2 det(g3)^2`
    pub fn chi1(&self) -> BigRational {
        let x = self.b1.det() * self.b2.det() * self.g3.det();
        &x * &x
    }

    /// `r1^2 det(b2) det(g3)`
    pub fn chi2(&self) -> BigRational {
        let r1 = &self.b1.a;
        r1 * r1 * self.b2.det() * self.g3.det()
    }

    /// `det(b1) r2^2 det(g3)`
    pub fn chi3(&self) -> BigRational {
        let r2 = &self.b2.a;
        self.b1.det() * r2 * r2 * self.g3.det()
    }

    pub fn act(&self, cube: &RationalCube) -> RationalCube {
        cube.act(&self.b1, &self.b2, &self.g3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionFailure {
    pub first: FormClass,
    pub second: FormClass,
    pub reason: String,
}

/// Outcome of checking the cube composition law on one discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub disc: Discriminant,
    pub class_number: usize,
    /// Distinct `([Q1], [Q2])` pairs hit by the constructed projective cubes.
    pub cube_classes: usize,
    pub cubes_checked: usize,
    pub failures: Vec<CompositionFailure>,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cube_classes == self.class_number * self.class_number
    }
}

/// For every pair of form classes builds the cube with `Q_1`, `Q_2` in those
/// classes and checks that it is projective, that the pair map is a bijection
/// onto `Cl(D) x Cl(D)`, and that `[Q_1][Q_2][Q_3]` is principal.
pub fn verify_composition_law(disc: Discriminant) -> Result<CompositionReport> {
    let disc = disc.require_negative_fundamental()?.require_odd()?;
    let classes = enumerate_class_group(disc)?;
    let d = BigInt::from(disc.value());
    let mut hit = BTreeSet::new();
    let mut failures = Vec::new();
    let mut cubes_checked = 0;
    for first in &classes {
        for second in &classes {
            let q1 = first.representative();
            let q2 = second.representative();
            let inv = CubeInvariants {
                disc: d.clone(),
                m: q1.a.clone(),
                n: q2.a.clone(),
                x: q1.b.mod_floor(&(BigInt::from(2) * &q1.a)),
                y: q2.b.mod_floor(&(BigInt::from(2) * &q2.a)),
            };
            let fail = |reason: String| CompositionFailure {
                first: first.clone(),
                second: second.clone(),
                reason,
            };
            let cube = match construct_cube(&inv) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(fail(format!("construction failed: {e}")));
                    continue;
                }
            };
            cubes_checked += 1;
            if !cube.is_projective() {
                failures.push(fail(format!("cube {cube} is not projective")));
                continue;
            }
            let images: Result<Vec<FormClass>> = Slicing::ALL
                .iter()
                .map(|&s| FormClass::new(&cube.qform(s)))
                .collect();
            let images = match images {
                Ok(v) => v,
                Err(e) => {
                    failures.push(fail(format!("cube {cube}: {e}")));
                    continue;
                }
            };
            if images[0] != *first || images[1] != *second {
                failures.push(fail(format!(
                    "cube {cube} maps to ({}, {})",
                    images[0], images[1]
                )));
                continue;
            }
            let product = images[0].compose(&images[1])?.compose(&images[2])?;
            if !product.is_principal() {
                failures.push(fail(format!(
                    "cube {cube}: [Q1][Q2][Q3] = {product}, expected principal"
                )));
                continue;
            }
            hit.insert((images[0].clone(), images[1].clone()));
        }
    }
    Ok(CompositionReport {
        disc,
        class_number: classes.len(),
        cube_classes: hit.len(),
        cubes_checked,
        failures,
    })
}

/// Invariant tuples of every cube produced by [`construct_cube`] for fixed
/// `(D, m, n)` over all admissible `(x, y)`.
pub fn constructed_tuples(disc: i64, m: i64, n: i64) -> Result<BTreeSet<CubeInvariants>> {
    let mut out = BTreeSet::new();
    for x in congruence_roots(disc, m)? {
        for y in congruence_roots(disc, n)? {
            let cube = construct_cube(&CubeInvariants::from_i64(disc, m, n, x, y))?;
            out.insert(cube.invariant_tuple()?);
        }
    }
    Ok(out)
}

/// `(D, m, n)` as machine integers, for handing to the counting routines.
pub fn invariants_i64(cube: &Cube) -> Result<(i64, i64, i64)> {
    let (d, m, n) = cube.borel_invariants();
    Ok((to_i64(&d)?, to_i64(&m)?, to_i64(&n)?))
}
