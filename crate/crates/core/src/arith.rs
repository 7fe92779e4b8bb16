//! Integer primitives: prime factorization, square-root counting modulo `a`,
//! Kronecker characters, the multiplicative weights `a(D, m)` of the quadratic
//! double Dirichlet series, and discriminant predicates.
//!
//! Everything here works on machine integers. Moduli up to about `10^12`
//! factor instantly by trial division; larger values still work, only slower.

use crate::error::{Error, Result};
use crate::qforms;

/// `#{x mod a : x^2 = d (mod a)}`.
pub type SolutionCount = u64;

/// A value of the multiplicative weight `a(D, m)`.
pub type WmdsCoeff = u64;

/// A nonzero integer congruent to 0 or 1 mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        if value == 0 || !matches!(value.rem_euclid(4), 0 | 1) {
            return Err(Error::NotDiscriminant(value));
        }
        Ok(Discriminant(value))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 != 0
    }

    pub fn is_fundamental(self) -> bool {
        is_fundamental(self.0)
    }

    /// The signed squarefree `D0` in `D = D0 * D1^2`.
    pub fn squarefree_part(self) -> i64 {
        squarefree_decomposition(self.0).0
    }

    /// `D1` in `D = D0 * D1^2` with `D0` squarefree.
    pub fn square_cofactor(self) -> u64 {
        squarefree_decomposition(self.0).1
    }

    /// Discriminant of the field `Q(sqrt D)`; `1` when `D` is a square.
    pub fn field_discriminant(self) -> i64 {
        let d0 = self.squarefree_part();
        if d0.rem_euclid(4) == 1 {
            d0
        } else {
            4 * d0
        }
    }

    /// `D < 0`, fundamental, else an error naming the failed condition.
    pub fn require_negative_fundamental(self) -> Result<Self> {
        if self.0 > 0 {
            return Err(Error::NotNegative(self.0));
        }
        if !self.is_fundamental() {
            return Err(Error::NotFundamental(self.0));
        }
        Ok(self)
    }

    pub fn require_odd(self) -> Result<Self> {
        if self.is_odd() {
            Ok(self)
        } else {
            Err(Error::EvenDiscriminant(self.0))
        }
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        Discriminant::new(value)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, sorted by prime. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        out.push((2, tz));
        n >>= tz;
    }
    let mut p = 3u64;
    while n > 1 {
        if p.saturating_mul(p) > n || is_prime(n) {
            out.push((n, 1));
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    out
}

/// Writes `n = sign * D0 * D1^2` with `D0` squarefree and returns `(sign * D0, D1)`.
pub fn squarefree_decomposition(n: i64) -> (i64, u64) {
    let sign = if n < 0 { -1 } else { 1 };
    let mut core = 1i64;
    let mut cofactor = 1u64;
    for (p, e) in factorize(n.unsigned_abs()) {
        if e % 2 == 1 {
            core *= p as i64;
        }
        cofactor *= p.pow(e / 2);
    }
    (sign * core, cofactor)
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// True iff `d` is the discriminant of a quadratic field. `1` is excluded.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let k = d / 4;
            matches!(k.rem_euclid(4), 2 | 3) && is_squarefree(k.unsigned_abs())
        }
        _ => false,
    }
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

fn legendre_odd(d: u64, p: u64) -> i8 {
    let d = d % p;
    if d == 0 {
        return 0;
    }
    if pow_mod(d, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `#{x mod p^l : x^2 = d (mod p^l)}` for an odd prime `p`, from the closed-form
/// valuation case table.
pub fn count_sqrt_prime_power(d: i64, p: u64, l: u32) -> Result<SolutionCount> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if l == 0 {
        return Ok(1);
    }
    let (k, unit) = split_valuation(d.unsigned_abs(), p);
    if k >= l {
        return checked_pow(p, l / 2);
    }
    if k % 2 == 1 {
        return Ok(0);
    }
    let unit = if d < 0 { (p - unit % p) % p } else { unit };
    if legendre_odd(unit, p) == 1 {
        Ok(2 * p.pow(k / 2))
    } else {
        Ok(0)
    }
}

fn split_valuation(mut r: u64, p: u64) -> (u32, u64) {
    if r == 0 {
        return (u32::MAX, 0);
    }
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (k, r)
}

/// The 2-adic analogue of [`count_sqrt_prime_power`].
pub fn count_sqrt_two_power(d: i64, l: u32) -> Result<SolutionCount> {
    if l == 0 {
        return Ok(1);
    }
    let modulus = checked_pow(2, l)?;
    let r = (d as i128).rem_euclid(modulus as i128) as u64;
    if r == 0 {
        return Ok(1 << (l / 2));
    }
    let k = r.trailing_zeros();
    if k % 2 == 1 {
        return Ok(0);
    }
    let unit = r >> k;
    let base = match l - k {
        1 => 1,
        2 => {
            if unit % 4 == 1 {
                2
            } else {
                0
            }
        }
        _ => {
            if unit % 8 == 1 {
                4
            } else {
                0
            }
        }
    };
    Ok(base << (k / 2))
}

/// `A(d, a) = #{x mod a : x^2 = d (mod a)}`, assembled prime by prime.
pub fn count_sqrt_mod(d: i64, a: u64) -> Result<SolutionCount> {
    if a == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut total: SolutionCount = 1;
    for (p, l) in factorize(a) {
        let local = if p == 2 {
            count_sqrt_two_power(d, l)?
        } else {
            count_sqrt_prime_power(d, p, l)?
        };
        if local == 0 {
            return Ok(0);
        }
        total *= local;
    }
    Ok(total)
}

fn add_mod(x: u64, y: u64, m: u64) -> u64 {
    let (s, overflow) = x.overflowing_add(y);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

/// Reference count by exhausting every residue class; linear in `a`.
pub fn count_sqrt_mod_brute(d: i64, a: u64) -> Result<SolutionCount> {
    if a == 0 {
        return Err(Error::ZeroModulus);
    }
    let target = (d as i128).rem_euclid(a as i128) as u64;
    // (x + 1)^2 = x^2 + 2x + 1
    let (mut sq, mut step, mut count) = (0u64, 1u64 % a, 0u64);
    for _ in 0..a {
        if sq == target {
            count += 1;
        }
        sq = add_mod(sq, step, a);
        step = add_mod(step, 2 % a, a);
    }
    Ok(count)
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
fn jacobi(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// The Kronecker symbol `(a / n)` for arbitrary integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    if n < 0 && a < 0 {
        result = -result;
    }
    let mut m = n.unsigned_abs();
    let twos = m.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        m >>= twos;
    }
    result * jacobi(a, m)
}

/// `chi_D(n)`, the Kronecker symbol `(D / n)`.
pub fn kronecker(disc: Discriminant, n: i64) -> i8 {
    kronecker_symbol(disc.value(), n)
}

/// The character of the field `Q(sqrt D)`. Agrees with [`kronecker`] for
/// fundamental `D`; for `D = D_fund * f^2` it ignores primes dividing only `f`.
pub fn field_character(disc: Discriminant, n: i64) -> i8 {
    kronecker_symbol(disc.field_discriminant(), n)
}

/// `a(D, m) = prod a(p^k, p^l)` over `p^k || D`, `p^l || m`, with
/// `a(p^k, p^l) = p^(min(k,l)/2)` when `min(k, l)` is even and `0` otherwise.
pub fn wmds_coeff(disc: Discriminant, m: u64) -> WmdsCoeff {
    assert!(m >= 1, "wmds_coeff: m must be positive");
    let d = disc.value().unsigned_abs();
    let mut value = 1;
    for (p, l) in factorize(m) {
        let (k, _) = split_valuation(d, p);
        let low = k.min(l);
        if low % 2 == 1 {
            return 0;
        }
        value *= p.pow(low / 2);
    }
    value
}

/// Largest divisor of `m` coprime to the squarefree part of `D`.
pub fn m_hat(disc: Discriminant, m: u64) -> u64 {
    assert!(m >= 1, "m_hat: m must be positive");
    let core = disc.squarefree_part().unsigned_abs();
    let mut out = m;
    for (p, _) in factorize(core) {
        while out.is_multiple_of(p) {
            out /= p;
        }
    }
    out
}

/// `h(D)` for a negative fundamental discriminant: the number of reduced
/// primitive positive-definite forms.
pub fn class_number(disc: Discriminant) -> Result<u64> {
    Ok(qforms::enumerate_class_group(disc)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn sqrt_counts_from_examples() {
        assert_eq!(count_sqrt_mod(5, 4).unwrap(), 2);
        assert_eq!(count_sqrt_mod(-17, 1).unwrap(), 1);
        assert_eq!(count_sqrt_mod(9, 81).unwrap(), 6);
        assert_eq!(count_sqrt_mod_brute(9, 81).unwrap(), 6);
        assert_eq!(count_sqrt_mod(3, 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(count_sqrt_prime_power(1, 3, 0).unwrap(), 1);
        assert_eq!(count_sqrt_prime_power(3, 3, 1).unwrap(), 1);
        assert_eq!(count_sqrt_prime_power(3, 3, 2).unwrap(), 0);
        assert_eq!(count_sqrt_prime_power(-23, 3, 2).unwrap(), 2);
        assert_eq!(count_sqrt_prime_power(5, 2, 3), Err(Error::NotOddPrime(2)));
        assert_eq!(count_sqrt_prime_power(5, 9, 3), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn two_adic_tables_match_brute_force() {
        for d in -200..200 {
            for l in 0..9 {
                assert_eq!(
                    count_sqrt_two_power(d, l).unwrap(),
                    count_sqrt_mod_brute(d, 1 << l).unwrap(),
                    "d={d} l={l}"
                );
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(disc(-7), 2), 1);
        assert!(count_sqrt_mod(-7, 8).unwrap() > 0);
        assert_eq!(kronecker(disc(5), 2), -1);
        assert_eq!(kronecker(disc(-23), 1), 1);
        assert_eq!(kronecker(disc(-23), 23), 0);
        assert_eq!(kronecker_symbol(-1, -1), -1);
        assert_eq!(kronecker_symbol(5, 0), 0);
    }

    #[test]
    fn kronecker_matches_euler_criterion_on_primes() {
        for p in (3..200u64).filter(|&p| is_prime(p)) {
            for d in -60i64..60 {
                let euler = legendre_odd((d as i128).rem_euclid(p as i128) as u64, p);
                assert_eq!(kronecker_symbol(d, p as i64), euler, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn wmds_examples() {
        // 3^2 || 45, 3^2 || 9
        assert_eq!(wmds_coeff(disc(45), 9), 3);
        // 3 || -15
        assert_eq!(wmds_coeff(disc(-15), 3), 0);
        assert_eq!(wmds_coeff(disc(-23), 1), 1);
        assert_eq!(wmds_coeff(disc(-23), 23 * 23), 0);
        assert_eq!(wmds_coeff(disc(-3 * 81), 27), 0);
        assert_eq!(wmds_coeff(disc(-3 * 81), 81), 9);
    }

    #[test]
    fn m_hat_examples() {
        assert_eq!(m_hat(disc(5), 10), 2);
        assert_eq!(m_hat(disc(-23), 23), 1);
        assert_eq!(m_hat(disc(-23), 12), 12);
        // 45 = 5 * 3^2 keeps the factor 3
        assert_eq!(m_hat(disc(45), 15), 3);
    }

    #[test]
    fn fundamental_predicate() {
        assert!(is_fundamental(-23));
        assert!(is_fundamental(-4));
        assert!(is_fundamental(8));
        assert!(is_fundamental(-3));
        assert!(!is_fundamental(45));
        assert!(!is_fundamental(1));
        assert!(!is_fundamental(-12));
        assert!(!is_fundamental(0));
        assert!(!is_fundamental(2));
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(disc(-7)).unwrap(), 1);
        assert_eq!(class_number(disc(-23)).unwrap(), 3);
        assert_eq!(class_number(disc(-3)).unwrap(), 1);
        assert_eq!(class_number(disc(-15)).unwrap(), 2);
        assert_eq!(class_number(disc(5)), Err(Error::NotNegative(5)));
        assert_eq!(class_number(disc(-27)), Err(Error::NotFundamental(-27)));
    }

    #[test]
    fn discriminant_validation() {
        assert!(Discriminant::new(0).is_err());
        assert!(Discriminant::new(-22).is_err());
        assert!(Discriminant::new(7).is_err());
        assert_eq!(disc(45).field_discriminant(), 5);
        assert_eq!(disc(9).field_discriminant(), 1);
        assert_eq!(disc(-12).field_discriminant(), -3);
        assert_eq!(disc(-63).square_cofactor(), 3);
    }

    #[test]
    fn factorization_and_primality() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(
            factorize(999_983 * 1_000_003),
            vec![(999_983, 1), (1_000_003, 1)]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }
}
