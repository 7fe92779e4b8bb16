//! Binary quadratic forms `au^2 + buv + cv^2`: the `SL_2(Z)` action, reduction of
//! positive-definite forms, Dirichlet composition and class-group enumeration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Discriminant;
use crate::error::{Error, Result};
use crate::linalg::Mat2;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryQuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// `u^2 + uv + (1 - D)/4 v^2` or `u^2 - D/4 v^2`.
    pub fn principal(disc: Discriminant) -> Self {
        let d = BigInt::from(disc.value());
        let b = if disc.is_odd() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        let c = (&b * &b - d) / 4;
        BinaryQuadraticForm {
            a: BigInt::one(),
            b,
            c,
        }
    }

    /// `b^2 - 4ac`
    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        &self.a * u * u + &self.b * u * v + &self.c * v * v
    }

    /// `(u, v) -> Q(au + cv, bu + dv)` for `g = [[a, b], [c, d]]`, so that
    /// `q.act(h).act(g) == q.act(&g.mul(&h))`.
    pub fn act(&self, g: &Mat2<BigInt>) -> Self {
        let (x, y, z, w) = (&g.a, &g.b, &g.c, &g.d);
        let two = BigInt::from(2);
        BinaryQuadraticForm {
            a: self.eval(x, y),
            b: &two * &self.a * x * z + &self.b * (x * w + y * z) + &two * &self.c * y * w,
            c: self.eval(z, w),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.disc().is_negative() && self.a.is_positive()
    }

    /// `-a < b <= a <= c`, with `b >= 0` whenever `a == c`.
    pub fn is_reduced(&self) -> bool {
        let a = &self.a;
        let b = &self.b;
        let c = &self.c;
        -a < *b && b <= a && a <= c && !(a == c && b.is_negative())
    }

    /// The unique reduced form `SL_2(Z)`-equivalent to a positive-definite form.
    pub fn reduce(&self) -> Result<Self> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite(self.to_string()));
        }
        let mut q = self.clone();
        loop {
            q = q.normalize();
            if q.a > q.c {
                q = BinaryQuadraticForm {
                    a: q.c.clone(),
                    b: -q.b.clone(),
                    c: q.a.clone(),
                };
                continue;
            }
            if q.a == q.c && q.b.is_negative() {
                q.b = -q.b;
            }
            return Ok(q);
        }
    }

    /// Translate `b` into `(-a, a]` via `u -> u + kv`.
    fn normalize(&self) -> Self {
        let two_a = BigInt::from(2) * &self.a;
        // b' = b - 2ak with k chosen so that -a < b' <= a
        let shifted = &self.b + &self.a - BigInt::one();
        let k = shifted.div_floor(&two_a);
        let b = &self.b - &two_a * &k;
        // c' = Q(-k, 1) evaluated with the old coefficients
        let c = &self.a * &k * &k - &self.b * &k + &self.c;
        BinaryQuadraticForm {
            a: self.a.clone(),
            b,
            c,
        }
    }

    /// Root of `a z^2 + b z + c` in the upper half plane.
    pub fn heegner_point(&self) -> Result<HeegnerPoint> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite(self.to_string()));
        }
        let two_a = BigInt::from(2) * &self.a;
        Ok(HeegnerPoint {
            re: BigRational::new(-self.b.clone(), two_a.clone()),
            im_sq: BigRational::new(-self.disc(), &two_a * &two_a),
        })
    }
}

/// `z = re + i * sqrt(im_sq)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegnerPoint {
    pub re: BigRational,
    pub im_sq: BigRational,
}

/// A primitive positive-definite class, stored by its reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormClass {
    rep: BinaryQuadraticForm,
    disc: Discriminant,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

fn disc_of(form: &BinaryQuadraticForm) -> Result<Discriminant> {
    let d = form.disc();
    let value = d.to_i64().ok_or_else(|| Error::Overflow(d.to_string()))?;
    Discriminant::new(value)
}

impl FormClass {
    pub fn new(form: &BinaryQuadraticForm) -> Result<Self> {
        if !form.is_primitive() {
            return Err(Error::Imprimitive(form.to_string()));
        }
        let rep = form.reduce()?;
        let disc = disc_of(&rep)?;
        Ok(FormClass { rep, disc })
    }

    pub fn principal(disc: Discriminant) -> Result<Self> {
        if disc.value() > 0 {
            return Err(Error::NotNegative(disc.value()));
        }
        FormClass::new(&BinaryQuadraticForm::principal(disc))
    }

    pub fn representative(&self) -> &BinaryQuadraticForm {
        &self.rep
    }

    pub fn disc(&self) -> Discriminant {
        self.disc
    }

    pub fn is_principal(&self) -> bool {
        self.rep.a.is_one()
    }

    /// Class of `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        let flipped = BinaryQuadraticForm {
            a: self.rep.a.clone(),
            b: -self.rep.b.clone(),
            c: self.rep.c.clone(),
        };
        FormClass::new(&flipped).expect("inverse of a reduced primitive form")
    }

    /// Dirichlet composition (Cohen, Algorithm 5.4.7) followed by reduction.
    pub fn compose(&self, other: &FormClass) -> Result<FormClass> {
        if self.disc != other.disc {
            return Err(Error::MismatchedDiscriminants(
                self.disc.to_string(),
                other.disc.to_string(),
            ));
        }
        let (f1, f2) = if self.rep.a > other.rep.a {
            (&other.rep, &self.rep)
        } else {
            (&self.rep, &other.rep)
        };
        let s: BigInt = (&f1.b + &f2.b) / 2;
        let n: BigInt = &f2.b - &s;

        let (y1, d): (BigInt, BigInt) = if (&f2.a % &f1.a).is_zero() {
            (BigInt::zero(), f1.a.clone())
        } else {
            let e = f2.a.extended_gcd(&f1.a);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if (&s % &d).is_zero() {
            (BigInt::zero(), -BigInt::one(), d.clone())
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = &f1.a / &d1;
        let v2 = &f2.a / &d1;
        let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
        let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
        let a3 = &v1 * &v2;
        let c3 = (&f2.c * &d1 + &r * (&f2.b + &v2 * &r)) / &v1;
        FormClass::new(&BinaryQuadraticForm {
            a: a3,
            b: b3,
            c: c3,
        })
    }

    pub fn pow(&self, mut e: u64) -> FormClass {
        let mut acc = FormClass::principal(self.disc).expect("negative discriminant");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same discriminant");
            }
            base = base.compose(&base).expect("same discriminant");
            e >>= 1;
        }
        acc
    }

    /// Number of elements of `SL_2(Z)` fixing the representative, up to `+-1`:
    /// 3 for `D = -3`, 2 for `D = -4`, else 1.
    pub fn stabilizer_order(&self) -> u32 {
        match self.disc.value() {
            -3 => 3,
            -4 => 2,
            _ => 1,
        }
    }

    pub fn heegner_point(&self) -> HeegnerPoint {
        self.rep
            .heegner_point()
            .expect("reduced positive-definite form")
    }
}

/// All reduced primitive forms of a negative fundamental discriminant, sorted
/// by `a`, then `|b|`, positive `b` first.
pub fn enumerate_class_group(disc: Discriminant) -> Result<Vec<FormClass>> {
    let disc = disc.require_negative_fundamental()?;
    let d = BigInt::from(disc.value());
    let abs_d = -&d;
    let a_max = (&abs_d / 3u32).sqrt();
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while a <= a_max {
        let mut b = BigInt::zero();
        while b <= a {
            for sign in [1i32, -1] {
                if sign == -1 && b.is_zero() {
                    continue;
                }
                let bb = &b * BigInt::from(sign);
                let num = &bb * &bb - &d;
                let four_a = BigInt::from(4) * &a;
                if !(&num % &four_a).is_zero() {
                    continue;
                }
                let q = BinaryQuadraticForm {
                    a: a.clone(),
                    b: bb,
                    c: num / four_a,
                };
                if q.is_reduced() && q.is_primitive() {
                    out.push(FormClass { rep: q, disc });
                }
            }
            b += 1;
        }
        a += 1;
    }
    Ok(out)
}
