//! Pairs of quaternary alternating 2-forms.
//!
//! A 4x4 alternating matrix is kept in the coordinates
//!
//! ```text
//! [[ 0,  r,  a,  b],
//!  [-r,  0,  c,  d],
//!  [-a, -c,  0,  l],
//!  [-b, -d, -l,  0]]
//! ```
//!
//! and its Pfaffian is normalized as `ad - bc - rl`, so that the block matrix
//! `[[0, I], [-I, 0]]` has Pfaffian `1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cubes::Cube;
use crate::error::{Error, Result};
use crate::linalg::{mat4_det, mat4_mul, mat4_transpose, Mat2, Mat4};
use crate::qforms::{BinaryQuadraticForm, FormClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltForm4 {
    pub r: BigRational,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub l: BigRational,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl AltForm4 {
    pub fn new(
        r: BigRational,
        a: BigRational,
        b: BigRational,
        c: BigRational,
        d: BigRational,
        l: BigRational,
    ) -> Self {
        AltForm4 { r, a, b, c, d, l }
    }

    /// `(r, a, b, c, d, l)` from integers.
    pub fn from_i64(v: [i64; 6]) -> Self {
        let [r, a, b, c, d, l] = v.map(q);
        AltForm4 { r, a, b, c, d, l }
    }

    pub fn zero() -> Self {
        AltForm4::from_i64([0; 6])
    }

    /// `[[0, I], [-I, 0]]`
    pub fn standard() -> Self {
        AltForm4::from_i64([0, 1, 0, 0, 1, 0])
    }

    pub fn to_matrix(&self) -> Mat4 {
        let z = BigRational::zero();
        let AltForm4 { r, a, b, c, d, l } = self.clone();
        [
            [z.clone(), r.clone(), a.clone(), b.clone()],
            [-r, z.clone(), c.clone(), d.clone()],
            [-a, -c, z.clone(), l.clone()],
            [-b, -d, -l, z],
        ]
    }

    #[allow(clippy::needless_range_loop)]
    pub fn from_matrix(m: &Mat4) -> Result<Self> {
        for i in 0..4 {
            if !m[i][i].is_zero() {
                return Err(Error::NotAlternating);
            }
            for j in i + 1..4 {
                if m[i][j] != -m[j][i].clone() {
                    return Err(Error::NotAlternating);
                }
            }
        }
        Ok(AltForm4 {
            r: m[0][1].clone(),
            a: m[0][2].clone(),
            b: m[0][3].clone(),
            c: m[1][2].clone(),
            d: m[1][3].clone(),
            l: m[2][3].clone(),
        })
    }

    /// `ad - bc - rl`
    pub fn pfaffian(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c - &self.r * &self.l
    }

    /// `s * self + t * other`
    pub fn combine(&self, s: &BigRational, other: &AltForm4, t: &BigRational) -> AltForm4 {
        let mix = |x: &BigRational, y: &BigRational| s * x + t * y;
        AltForm4 {
            r: mix(&self.r, &other.r),
            a: mix(&self.a, &other.a),
            b: mix(&self.b, &other.b),
            c: mix(&self.c, &other.c),
            d: mix(&self.d, &other.d),
            l: mix(&self.l, &other.l),
        }
    }

    /// `g M g^t`
    pub fn congruence(&self, g: &Mat4) -> AltForm4 {
        let out = mat4_mul(&mat4_mul(g, &self.to_matrix()), &mat4_transpose(g));
        AltForm4::from_matrix(&out).expect("congruence preserves alternation")
    }

    pub fn is_integral(&self) -> bool {
        [&self.r, &self.a, &self.b, &self.c, &self.d, &self.l]
            .iter()
            .all(|x| x.is_integer())
    }
}

/// Pfaffian of a full 4x4 matrix; rejects anything that is not alternating.
pub fn pfaffian(m: &Mat4) -> Result<BigRational> {
    Ok(AltForm4::from_matrix(m)?.pfaffian())
}

/// `A u^2 + B uv + C v^2` over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalForm {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl RationalForm {
    pub fn disc(&self) -> BigRational {
        &self.b * &self.b - q(4) * &self.a * &self.c
    }

    pub fn to_integral(&self) -> Result<BinaryQuadraticForm> {
        for x in [&self.a, &self.b, &self.c] {
            if !x.is_integer() {
                return Err(Error::NotIntegral(x.to_string()));
            }
        }
        Ok(BinaryQuadraticForm {
            a: self.a.to_integer(),
            b: self.b.to_integer(),
            c: self.c.to_integer(),
        })
    }
}

impl From<&BinaryQuadraticForm> for RationalForm {
    fn from(f: &BinaryQuadraticForm) -> Self {
        RationalForm {
            a: BigRational::from_integer(f.a.clone()),
            b: BigRational::from_integer(f.b.clone()),
            c: BigRational::from_integer(f.c.clone()),
        }
    }
}

/// `F = (M_F, N_F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltFormPair {
    pub first: AltForm4,
    pub second: AltForm4,
}

impl AltFormPair {
    pub fn new(first: AltForm4, second: AltForm4) -> Self {
        AltFormPair { first, second }
    }

    pub fn zero() -> Self {
        AltFormPair::new(AltForm4::zero(), AltForm4::zero())
    }

    /// `-Pfaff(M u - N v)` at a point.
    fn eval_qform(&self, u: i64, v: i64) -> BigRational {
        -self.first.combine(&q(u), &self.second, &q(-v)).pfaffian()
    }

    /// `Q_F(u, v) = -Pfaff(M_F u - N_F v)`, read off from its values at
    /// `(1, 0)`, `(0, 1)` and `(1, 1)`.
    pub fn qform(&self) -> RationalForm {
        let a = self.eval_qform(1, 0);
        let c = self.eval_qform(0, 1);
        let b = self.eval_qform(1, 1) - &a - &c;
        RationalForm { a, b, c }
    }

    pub fn disc(&self) -> BigRational {
        self.qform().disc()
    }

    pub fn is_integral(&self) -> bool {
        self.first.is_integral() && self.second.is_integral()
    }

    /// Class of `Q_F` in the form class group; lattice-level, so the pair must
    /// be integral.
    pub fn form_class(&self) -> Result<FormClass> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(format!("{self:?}")));
        }
        FormClass::new(&self.qform().to_integral()?)
    }

    /// `(g1, g)` with `g1 = [[s, t], [u, v]]` sends `(M, N)` to
    /// `(s gMg^t + t gNg^t, u gMg^t + v gNg^t)`.
    pub fn act(&self, g1: &Mat2<BigRational>, g: &Mat4) -> Result<AltFormPair> {
        if g1.det().is_zero() || mat4_det(g).is_zero() {
            return Err(Error::Singular);
        }
        let m = self.first.congruence(g);
        let n = self.second.congruence(g);
        Ok(AltFormPair {
            first: m.combine(&g1.a, &n, &g1.b),
            second: m.combine(&g1.c, &n, &g1.d),
        })
    }

    /// `(disc, P0, P1) = (disc Q_F, r2, -Pfaff(M_F))`, defined on the subspace
    /// where `r1 = 0`.
    pub fn invariants_w(&self) -> Result<(BigRational, BigRational, BigRational)> {
        if !self.first.r.is_zero() {
            return Err(Error::OutsideW(self.first.r.to_string()));
        }
        Ok((self.disc(), self.second.r.clone(), -self.first.pfaffian()))
    }

    /// Rational base point of discriminant `D`:
    /// `M = (0, 0, 1, -1, 0, 0)`, `N = (1, 0, 0, 0, 0, D/4)`, with `Q_F = (-1, 0, D/4)`.
    pub fn base_point(disc: i64) -> AltFormPair {
        let quarter = BigRational::new(BigInt::from(disc), BigInt::from(4));
        AltFormPair {
            first: AltForm4::from_i64([0, 0, 1, -1, 0, 0]),
            second: AltForm4::new(BigRational::one(), q(0), q(0), q(0), q(0), quarter),
        }
    }
}

/// The linear embedding of cubes: `[[a, b], [c, d]]` and `[[e, f], [g, h]]`
/// become the off-diagonal blocks of the two alternating matrices.
pub fn fuse(cube: &Cube) -> AltFormPair {
    let e = cube.entries.clone().map(BigRational::from_integer);
    let [a, b, c, d, e_, f, g, h] = e;
    let z = BigRational::zero;
    AltFormPair {
        first: AltForm4::new(z(), a, b, c, d, z()),
        second: AltForm4::new(z(), e_, f, g, h, z()),
    }
}
