//! Coefficient-level Dirichlet series: the `A(D, 4m)` series of an odd
//! discriminant, its WMDS-side factorization, and truncated double sums.

use num_complex::Complex64;

use crate::arith::{
    count_sqrt_mod, count_sqrt_mod_brute, field_character, is_squarefree, m_hat, wmds_coeff,
    Discriminant,
};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSide {
    /// `sum A(D, 4m) m^-s`
    A,
    /// `2 zeta(s)/zeta(2s) sum chi_D(m^) a(D, m) m^-s`
    Wmds,
}

/// Coefficients `c_1, ..., c_N` of a Dirichlet series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    pub limit: u64,
    pub coeffs: Vec<i64>,
    pub label: SeriesSide,
}

impl CoeffVector {
    /// `c_m` for `1 <= m <= limit`.
    pub fn get(&self, m: u64) -> Option<i64> {
        if m == 0 {
            return None;
        }
        self.coeffs.get(m as usize - 1).copied()
    }
}

fn odd_disc(disc: Discriminant) -> Result<Discriminant> {
    disc.require_odd()
}

/// `m -> A(D, 4m)` for `m <= limit`.
pub fn coeffs_a(disc: Discriminant, limit: u64) -> Result<CoeffVector> {
    let disc = odd_disc(disc)?;
    let coeffs = (1..=limit)
        .map(|m| count_sqrt_mod(disc.value(), 4 * m).map(|c| c as i64))
        .collect::<Result<_>>()?;
    Ok(CoeffVector {
        limit,
        coeffs,
        label: SeriesSide::A,
    })
}

/// `m -> chi_D(m^) a(D, m)`, multiplicative in `m`.
pub fn wmds_side_coeffs(disc: Discriminant, limit: u64) -> Vec<i64> {
    (1..=limit)
        .map(|m| {
            let a = wmds_coeff(disc, m) as i64;
            if a == 0 {
                0
            } else {
                field_character(disc, m_hat(disc, m) as i64) as i64 * a
            }
        })
        .collect()
}

/// `m -> 2 sum_{de = m, d squarefree} chi_D(e^) a(D, e)`.
pub fn coeffs_rhs(disc: Discriminant, limit: u64) -> Result<CoeffVector> {
    let disc = odd_disc(disc)?;
    let w = wmds_side_coeffs(disc, limit);
    let n = limit as usize;
    let mut coeffs = vec![0i64; n];
    for d in 1..=n {
        if !is_squarefree(d as u64) {
            continue;
        }
        for e in 1..=n / d {
            coeffs[d * e - 1] += 2 * w[e - 1];
        }
    }
    Ok(CoeffVector {
        limit,
        coeffs,
        label: SeriesSide::Wmds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMismatch {
    pub m: u64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffIdentityReport {
    pub disc: i64,
    pub limit: u64,
    pub first_mismatch: Option<CoeffMismatch>,
}

impl CoeffIdentityReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares [`coeffs_a`] and [`coeffs_rhs`] entry by entry.
pub fn verify_coefficient_identity(disc: Discriminant, limit: u64) -> Result<CoeffIdentityReport> {
    let lhs = coeffs_a(disc, limit)?;
    let rhs = coeffs_rhs(disc, limit)?;
    let first_mismatch = lhs
        .coeffs
        .iter()
        .zip(&rhs.coeffs)
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(i, (&lhs, &rhs))| CoeffMismatch {
            m: i as u64 + 1,
            lhs,
            rhs,
        });
    Ok(CoeffIdentityReport {
        disc: disc.value(),
        limit,
        first_mismatch,
    })
}

/// Integer polynomial in `X = 2^-s`, lowest degree first.
type Poly = Vec<i64>;

fn poly_mul(x: &[i64], y: &[i64]) -> Poly {
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMismatch {
    pub level: u32,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTilde2Report {
    pub disc: i64,
    pub lmax: u32,
    /// `A(D, 4)` followed by `A(D, 2^(l+2))` for `1 <= l <= lmax`.
    pub table: Vec<u64>,
    pub table_mismatch: Option<TableMismatch>,
    /// Numerator of the 2-part ratio over the denominator `1 - X^2`.
    pub numerator: Vec<i64>,
    /// The ratio when it reduces to a constant.
    pub ratio: Option<i64>,
}

impl PTilde2Report {
    pub fn passed(&self) -> bool {
        self.table_mismatch.is_none() && self.ratio == Some(2)
    }
}

/// Brute-forces `A(D, 2^(l+2))` and checks that the 2-part
/// `sum_l A(D, 2^(l+2)) X^l * (1 - X)(1 - chi_D(2) X) / (1 - X^2)`, with
/// `X = 2^-s`, is the constant `2`.
///
/// With `c0 = A(D, 4)` and `c1 = A(D, 8) = A(D, 16) = ...` the sum is
/// `(c0 + (c1 - c0) X) / (1 - X)`, so the ratio is the polynomial
/// `(c0 + (c1 - c0) X)(1 - chi X)` over `1 - X^2`.
pub fn verify_ptilde2(disc: Discriminant, lmax: u32) -> Result<PTilde2Report> {
    let disc = odd_disc(disc)?;
    let d = disc.value();
    let mut table = Vec::with_capacity(lmax as usize + 1);
    let mut table_mismatch = None;
    for l in 0..=lmax {
        let actual = count_sqrt_mod_brute(d, 1u64 << (l + 2))?;
        let expected = match (l, d.rem_euclid(8)) {
            (0, 1 | 5) => 2,
            (0, _) => 0,
            (_, 1) => 4,
            _ => 0,
        };
        if actual != expected && table_mismatch.is_none() {
            table_mismatch = Some(TableMismatch {
                level: l,
                expected,
                actual,
            });
        }
        table.push(actual);
    }
    let c0 = table[0] as i64;
    let c1 = if lmax >= 1 {
        table[1] as i64
    } else {
        count_sqrt_mod_brute(d, 8)? as i64
    };
    let chi = field_character(disc, 2) as i64;
    let numerator = poly_mul(&[c0, c1 - c0], &[1, -chi]);
    let ratio = match numerator.as_slice() {
        [k, 0, minus_k] if *minus_k == -k => Some(*k),
        [0] => Some(0),
        _ => None,
    };
    Ok(PTilde2Report {
        disc: d,
        lmax,
        table,
        table_mismatch,
        numerator,
        ratio,
    })
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = *acc;
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    *acc = (t, comp + c);
}

impl CompensatedSum {
    fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// `n^-s`
fn npow(n: u64, s: Complex64) -> Complex64 {
    (-s * (n as f64).ln()).exp()
}

/// Partial sums of `Z(s, w) = xi_1 + xi_2` with
/// `xi_i = sum_{a <= amax, d <= dmax} A((-1)^(i-1) d, 4a) a^-s d^-w`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDoubleSum {
    pub s: Complex64,
    pub w: Complex64,
    pub amax: u64,
    pub dmax: u64,
    pub xi1: Complex64,
    pub xi2: Complex64,
    pub value: Complex64,
    /// Contribution of the outermost shell `a = amax` or `d = dmax`; a rough
    /// indicator of the truncation error.
    pub last_shell: Complex64,
}

pub fn shintani_z(s: Complex64, w: Complex64, amax: u64, dmax: u64) -> TruncatedDoubleSum {
    let mut xi = [CompensatedSum::default(); 2];
    let mut shell = CompensatedSum::default();
    let a_pows: Vec<Complex64> = (1..=amax).map(|a| npow(a, s)).collect();
    for d in 1..=dmax {
        let dw = npow(d, w);
        for (i, sign) in [1i64, -1].into_iter().enumerate() {
            let dd = sign * d as i64;
            for a in 1..=amax {
                let count = count_sqrt_mod(dd, 4 * a).expect("modulus is positive");
                if count == 0 {
                    continue;
                }
                let term = a_pows[a as usize - 1] * dw * count as f64;
                xi[i].add(term);
                if a == amax || d == dmax {
                    shell.add(term);
                }
            }
        }
    }
    let (xi1, xi2) = (xi[0].value(), xi[1].value());
    TruncatedDoubleSum {
        s,
        w,
        amax,
        dmax,
        xi1,
        xi2,
        value: xi1 + xi2,
        last_shell: shell.value(),
    }
}

/// `sum_{m <= mmax, D in dset} chi_D(m^) a(D, m) m^-s |D|^-w`.
pub fn wmds_z(s: Complex64, w: Complex64, mmax: u64, dset: &[Discriminant]) -> Result<Complex64> {
    let mut total = CompensatedSum::default();
    for &disc in dset {
        let disc = odd_disc(disc)?;
        let dw = npow(disc.value().unsigned_abs(), w);
        for (m, c) in (1..=mmax).zip(wmds_side_coeffs(disc, mmax)) {
            if c != 0 {
                total.add(npow(m, s) * dw * c as f64);
            }
        }
    }
    Ok(total.value())
}
