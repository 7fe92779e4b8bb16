//! Small exact matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Clone + Num> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let m = |x: &T, y: &T, z: &T, w: &T| x.clone() * y.clone() + z.clone() * w.clone();
        Mat2::new(
            m(&self.a, &rhs.a, &self.b, &rhs.c),
            m(&self.a, &rhs.b, &self.b, &rhs.d),
            m(&self.c, &rhs.a, &self.d, &rhs.c),
            m(&self.c, &rhs.b, &self.d, &rhs.d),
        )
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.b.is_zero()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

impl Mat2<BigInt> {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn to_rational(&self) -> Mat2<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// `[[1, 0], [j, 1]]`
    pub fn lower_unipotent(j: i64) -> Self {
        Mat2::from_i64(1, 0, j, 1)
    }

    /// `[[1, j], [0, 1]]`
    pub fn upper_unipotent(j: i64) -> Self {
        Mat2::from_i64(1, j, 0, 1)
    }

    /// `[[0, 1], [-1, 0]]`
    pub fn rotation() -> Self {
        Mat2::from_i64(0, 1, -1, 0)
    }
}

pub type Mat4 = [[BigRational; 4]; 4];

pub fn mat4_zero() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
}

pub fn mat4_identity() -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    })
}

pub fn mat4_from_i64(rows: [[i64; 4]; 4]) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| BigRational::from_integer(rows[i][j].into())))
}

pub fn mat4_mul(x: &Mat4, y: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..4).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j])
        })
    })
}

pub fn mat4_transpose(x: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[j][i].clone()))
}

/// Determinant by fraction-exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn mat4_det(x: &Mat4) -> BigRational {
    let mut m = x.clone();
    let mut det = BigRational::one();
    for col in 0..4 {
        let Some(pivot) = (col..4).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..4 {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..4 {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}
