//! Unramified local factors as power series in the formal variable
//! `q = p^(-1/2)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{
    count_sqrt_prime_power, field_character, is_prime, Discriminant, SolutionCount,
};
use crate::error::{Error, Result};
use crate::powerseries::TruncatedSeries;

/// The Satake parameter `alpha` of an unramified principal series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SatakeParameter(BigRational);

impl SatakeParameter {
    pub fn new(alpha: BigRational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroSatake);
        }
        Ok(SatakeParameter(alpha))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn alpha(&self) -> &BigRational {
        &self.0
    }

    pub fn inverse(&self) -> BigRational {
        self.0.recip()
    }

    /// Rejects the poles `alpha^2 = 1`.
    pub fn require_nondegenerate(&self) -> Result<&Self> {
        if (&self.0 * &self.0).is_one() {
            return Err(Error::DegenerateSatake(self.0.to_string()));
        }
        Ok(self)
    }
}

impl fmt::Display for SatakeParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `c0 + c1 q + c2 q^2`
fn quad(c0: BigRational, c1: BigRational, c2: BigRational, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_poly(&[c0, c1, c2], order)
}

fn one_minus_q2(c: &BigRational, order: usize) -> TruncatedSeries {
    quad(rat(1), rat(0), -c, order)
}

fn inv(s: &TruncatedSeries) -> TruncatedSeries {
    s.inverse().expect("constant term is 1")
}

/// The spherical function at `diag(p^n, 1)`:
/// `q^n / (1 + q^2) * (alpha^n (1 - alpha^-2 q^2)/(1 - alpha^-2) + alpha^-n (1 - alpha^2 q^2)/(1 - alpha^2))`.
///
/// `p` only fixes the meaning of `q`; the series itself depends on `alpha`.
pub fn macdonald(alpha: &SatakeParameter, p: u64, n: u32, order: usize) -> Result<TruncatedSeries> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    alpha.require_nondegenerate()?;
    let a = alpha.alpha();
    let a_inv = alpha.inverse();
    let a2 = a * a;
    let a_inv2 = &a_inv * &a_inv;
    let x = one_minus_q2(&a_inv2, order).scale(&(a.pow(n as i32) / (rat(1) - &a_inv2)));
    let y = one_minus_q2(&a2, order).scale(&(a_inv.pow(n as i32) / (rat(1) - &a2)));
    let bracket = &x + &y;
    let denom = inv(&quad(rat(1), rat(0), rat(1), order));
    Ok((&bracket * &denom).shift(n as usize))
}

/// Number of `W'_D(Z_p)` orbits at level `p^l`, i.e. `A(D, p^l)`.
pub fn orbit_count_wprime(disc: Discriminant, p: u64, l: u32) -> Result<SolutionCount> {
    count_sqrt_prime_power(disc.value(), p, l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceType {
    Split,
    Inert,
}

impl fmt::Display for PlaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceType::Split => write!(f, "split"),
            PlaceType::Inert => write!(f, "inert"),
        }
    }
}

/// Splitting type of an odd prime `p` not dividing `D`.
pub fn place_type(disc: Discriminant, p: u64) -> Result<PlaceType> {
    if p == 2 || disc.value().rem_euclid(p as i64) == 0 {
        return Err(Error::Ramified {
            p,
            disc: disc.value(),
        });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(match field_character(disc, p as i64) {
        1 => PlaceType::Split,
        _ => PlaceType::Inert,
    })
}

/// `sum_{l=0}^{lmax} A(D, p^l) sigma(p^l)`, expanded to order `lmax`.
pub fn local_a_integral(
    disc: Discriminant,
    p: u64,
    alpha: &SatakeParameter,
    lmax: u32,
) -> Result<TruncatedSeries> {
    place_type(disc, p)?;
    let order = lmax as usize;
    let mut total = TruncatedSeries::zero(order);
    for l in 0..=lmax {
        let count = orbit_count_wprime(disc, p, l)?;
        if count == 0 {
            continue;
        }
        let sigma = macdonald(alpha, p, l, order)?;
        total = &total + &sigma.scale(&rat(count as i64));
    }
    Ok(total)
}

/// `[(1 - alpha^2 q^2)(1 - q^2)(1 - alpha^-2 q^2)]`, the reciprocal of `L(1, Ad)`.
fn adjoint_inverse(alpha: &SatakeParameter, order: usize) -> TruncatedSeries {
    let a2 = alpha.alpha() * alpha.alpha();
    let a_inv2 = alpha.inverse() * alpha.inverse();
    &(&one_minus_q2(&a2, order) * &one_minus_q2(&rat(1), order)) * &one_minus_q2(&a_inv2, order)
}

/// `1 - c q`
fn one_minus_q(c: &BigRational, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_poly(&[rat(1), -c], order)
}

/// `L(1/2, pi_E) = [(1 - alpha q)(1 - alpha^-1 q)]^-2` at a split place.
pub fn base_change_split(alpha: &SatakeParameter, order: usize) -> TruncatedSeries {
    let f = &one_minus_q(alpha.alpha(), order) * &one_minus_q(&alpha.inverse(), order);
    inv(&f.pow(2))
}

/// `L(1/2, pi_E) = [(1 - alpha^2 q^2)(1 - alpha^-2 q^2)]^-1` at an inert place.
pub fn base_change_inert(alpha: &SatakeParameter, order: usize) -> TruncatedSeries {
    let a2 = alpha.alpha() * alpha.alpha();
    let a_inv2 = alpha.inverse() * alpha.inverse();
    inv(&(&one_minus_q2(&a2, order) * &one_minus_q2(&a_inv2, order)))
}

/// `(1 - q^2)/(1 - q^4) * L(1/2, pi_E) / L(1, Ad)` at a split place.
pub fn lfactor_ratio_split(alpha: &SatakeParameter, order: usize) -> Result<TruncatedSeries> {
    alpha.require_nondegenerate()?;
    let pre =
        &one_minus_q2(&rat(1), order) * &inv(&TruncatedSeries::from_i64(&[1, 0, 0, 0, -1], order));
    Ok(&(&pre * &base_change_split(alpha, order)) * &adjoint_inverse(alpha, order))
}

/// `(1 + q^2)/(1 - q^4) * L(1/2, pi_E) / L(1, Ad)` at an inert place.
pub fn lfactor_ratio_inert(alpha: &SatakeParameter, order: usize) -> Result<TruncatedSeries> {
    alpha.require_nondegenerate()?;
    let pre = &TruncatedSeries::from_i64(&[1, 0, 1], order)
        * &inv(&TruncatedSeries::from_i64(&[1, 0, 0, 0, -1], order));
    Ok(&(&pre * &base_change_inert(alpha, order)) * &adjoint_inverse(alpha, order))
}

/// Split case summed in closed form:
/// `(1 + q^2)^-1 [(1 + alpha q)/(1 - alpha q) X + (1 + alpha^-1 q)/(1 - alpha^-1 q) Y]`
/// where `X, Y` are the two Macdonald brackets at `n = 0`.
pub fn split_geometric_form(alpha: &SatakeParameter, order: usize) -> Result<TruncatedSeries> {
    alpha.require_nondegenerate()?;
    let a = alpha.alpha();
    let a_inv = alpha.inverse();
    let a2 = a * a;
    let a_inv2 = &a_inv * &a_inv;
    let x = one_minus_q2(&a_inv2, order).scale(&(rat(1) - &a_inv2).recip());
    let y = one_minus_q2(&a2, order).scale(&(rat(1) - &a2).recip());
    let geo = |c: &BigRational| &one_minus_q(&-c, order) * &inv(&one_minus_q(c, order));
    let bracket = &(&geo(a) * &x) + &(&geo(&a_inv) * &y);
    Ok(&bracket * &inv(&TruncatedSeries::from_i64(&[1, 0, 1], order)))
}

/// Split case as a product:
/// `(1 - q^2)(1 + alpha q)(1 + alpha^-1 q) / ((1 + q^2)(1 - alpha q)(1 - alpha^-1 q))`.
pub fn split_product_form(alpha: &SatakeParameter, order: usize) -> Result<TruncatedSeries> {
    alpha.require_nondegenerate()?;
    let a = alpha.alpha();
    let a_inv = alpha.inverse();
    let num =
        &(&one_minus_q2(&rat(1), order) * &one_minus_q(&-a, order)) * &one_minus_q(&-&a_inv, order);
    let den = &(&TruncatedSeries::from_i64(&[1, 0, 1], order) * &one_minus_q(a, order))
        * &one_minus_q(&a_inv, order);
    Ok(&num * &inv(&den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCheck {
    pub disc: i64,
    pub p: u64,
    pub alpha: BigRational,
    pub order: usize,
    pub place: PlaceType,
    pub integral: TruncatedSeries,
    pub expected: TruncatedSeries,
    /// Index of the first coefficient where the two sides differ.
    pub first_difference: Option<usize>,
}

impl LocalCheck {
    pub fn passed(&self) -> bool {
        self.first_difference.is_none()
    }
}

fn first_difference(x: &TruncatedSeries, y: &TruncatedSeries) -> Option<usize> {
    (0..=x.order().max(y.order())).find(|&k| x.coeff(k) != y.coeff(k))
}

/// Compares the local integral with the L-factor ratio for the splitting
/// type of `p`. In the inert case every expression must also be the
/// constant `1`.
pub fn check_local_identity(
    disc: Discriminant,
    p: u64,
    alpha: &SatakeParameter,
    order: usize,
) -> Result<LocalCheck> {
    let place = place_type(disc, p)?;
    let integral = local_a_integral(disc, p, alpha, order as u32)?;
    let expected = match place {
        PlaceType::Split => lfactor_ratio_split(alpha, order)?,
        PlaceType::Inert => lfactor_ratio_inert(alpha, order)?,
    };
    let mut diff = first_difference(&integral, &expected);
    if place == PlaceType::Inert && diff.is_none() {
        diff = first_difference(&integral, &TruncatedSeries::one(order));
    }
    if place == PlaceType::Split && diff.is_none() {
        diff = first_difference(&integral, &split_product_form(alpha, order)?).or(
            first_difference(&integral, &split_geometric_form(alpha, order)?),
        );
    }
    Ok(LocalCheck {
        disc: disc.value(),
        p,
        alpha: alpha.alpha().clone(),
        order,
        place,
        integral,
        expected,
        first_difference: diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(n: i64, d: i64) -> SatakeParameter {
        SatakeParameter::from_ratio(n, d).unwrap()
    }

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    fn qq(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    const ALPHAS: [(i64, i64); 4] = [(2, 1), (3, 2), (5, 1), (7, 3)];

    #[test]
    fn satake_validation() {
        assert_eq!(SatakeParameter::from_ratio(0, 1), Err(Error::ZeroSatake));
        let one = alpha(-1, 1);
        assert!(matches!(
            macdonald(&one, 3, 2, 5),
            Err(Error::DegenerateSatake(_))
        ));
        assert!(matches!(
            lfactor_ratio_split(&one, 5),
            Err(Error::DegenerateSatake(_))
        ));
        assert!(matches!(
            lfactor_ratio_inert(&alpha(1, 1), 5),
            Err(Error::DegenerateSatake(_))
        ));
        assert_eq!(macdonald(&alpha(2, 1), 4, 2, 5), Err(Error::NotPrime(4)));
    }

    #[test]
    fn macdonald_low_degrees() {
        for (n, d) in ALPHAS {
            let a = alpha(n, d);
            assert!(macdonald(&a, 3, 0, 20).unwrap().is_constant(&qq(1, 1)));
            // sigma_1 = (alpha + alpha^-1) q / (1 + q^2)
            let trace = a.alpha() + a.inverse();
            let expected = &TruncatedSeries::monomial(trace, 1, 20)
                * &TruncatedSeries::from_i64(&[1, 0, 1], 20).inverse().unwrap();
            assert_eq!(macdonald(&a, 3, 1, 20).unwrap(), expected);
        }
    }

    #[test]
    fn macdonald_alpha_two_degree_two() {
        // q^2 (4 (1 - q^2/4)/(3/4) + (1/4)(1 - 4q^2)/(-3)) / (1 + q^2)
        let bracket = TruncatedSeries::from_poly(
            &[qq(16, 3) - qq(1, 12), qq(0, 1), qq(-4, 3) + qq(1, 3)],
            12,
        );
        let expected =
            (&bracket * &TruncatedSeries::from_i64(&[1, 0, 1], 12).inverse().unwrap()).shift(2);
        assert_eq!(macdonald(&alpha(2, 1), 7, 2, 12).unwrap(), expected);
    }

    #[test]
    fn macdonald_satisfies_hecke_recursion() {
        let order = 30;
        for (n, d) in ALPHAS {
            let a = alpha(n, d);
            let tq = TruncatedSeries::monomial(a.alpha() + a.inverse(), 1, order);
            let q2 = TruncatedSeries::monomial(qq(1, 1), 2, order);
            let sig: Vec<_> = (0..=11)
                .map(|k| macdonald(&a, 5, k, order).unwrap())
                .collect();
            for k in 1..=10 {
                let rhs = &(&tq * &sig[k]) - &(&q2 * &sig[k - 1]);
                assert_eq!(sig[k + 1], rhs, "alpha = {a}, n = {k}");
            }
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_count_wprime(disc(-23), 3, 0).unwrap(), 1);
        assert_eq!(orbit_count_wprime(disc(-23), 3, 1).unwrap(), 2);
        assert_eq!(orbit_count_wprime(disc(5), 3, 1).unwrap(), 0);
    }

    #[test]
    fn place_types() {
        assert_eq!(place_type(disc(-23), 3), Ok(PlaceType::Split));
        assert_eq!(place_type(disc(-23), 5), Ok(PlaceType::Inert));
        assert_eq!(
            place_type(disc(-23), 23),
            Err(Error::Ramified { p: 23, disc: -23 })
        );
        assert_eq!(
            place_type(disc(-23), 2),
            Err(Error::Ramified { p: 2, disc: -23 })
        );
    }

    #[test]
    fn split_identity() {
        for (n, d) in ALPHAS {
            let a = alpha(n, d);
            let integral = local_a_integral(disc(-23), 3, &a, 40).unwrap();
            assert_eq!(integral, lfactor_ratio_split(&a, 40).unwrap());
            assert_eq!(integral, split_product_form(&a, 40).unwrap());
            assert_eq!(integral, split_geometric_form(&a, 40).unwrap());
            assert!(check_local_identity(disc(-23), 3, &a, 40).unwrap().passed());
        }
        let lone = local_a_integral(disc(-23), 3, &alpha(2, 1), 0).unwrap();
        assert!(lone.is_constant(&qq(1, 1)));
    }

    #[test]
    fn inert_identity() {
        for (n, d) in ALPHAS {
            let a = alpha(n, d);
            assert!(local_a_integral(disc(-23), 5, &a, 40)
                .unwrap()
                .is_constant(&qq(1, 1)));
            assert!(lfactor_ratio_inert(&a, 40).unwrap().is_constant(&qq(1, 1)));
            assert!(check_local_identity(disc(-23), 5, &a, 40).unwrap().passed());
        }
        assert!(lfactor_ratio_inert(&alpha(7, 1), 80)
            .unwrap()
            .is_constant(&qq(1, 1)));
        assert!(lfactor_ratio_split(&alpha(2, 1), 0)
            .unwrap()
            .is_constant(&qq(1, 1)));
    }

    #[test]
    fn ramified_rejected() {
        let a = alpha(2, 1);
        assert!(matches!(
            local_a_integral(disc(-15), 5, &a, 4),
            Err(Error::Ramified { .. })
        ));
        assert!(matches!(
            local_a_integral(disc(-15), 3, &a, 4),
            Err(Error::Ramified { .. })
        ));
    }
}
