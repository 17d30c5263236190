//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored at its minimal conductor `n` as rational coordinates
//! in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}` of `ℚ(ζ_n)`. Every constructor and
//! operation returns this canonical form, so derived equality is field equality.

mod literal;
mod poly;
mod quadratic;

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{ext_gcd, mobius, prime_divisors_u64, totient};

pub use literal::LiteralError;
pub use poly::cyclotomic_polynomial;
pub use quadratic::sqrt_of_squarefree;

pub type BigInt = num_bigint::BigInt;
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("value {0} is not a rational integer")]
    NotAnInteger(String),
    #[error("galois exponent {k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("{0} is not a squarefree integer other than 0 and 1")]
    BadDiscriminant(i64),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    // exponent → nonzero coefficient, exponents ascending and < φ(conductor)
    coeffs: Vec<(u32, BigRat)>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRat::one())
    }

    pub fn from_rational(r: BigRat) -> Self {
        let coeffs = if r.is_zero() {
            Vec::new()
        } else {
            vec![(0, r)]
        };
        Cyclotomic {
            conductor: 1,
            coeffs,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRat::from_integer(n.into()))
    }

    /// `E(n)^k`, the root of unity `exp(2πik/n)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        Self::from_terms(n, [(k, BigRat::one())])
    }

    /// Canonical form of `Σ c · ζ_n^e` for arbitrary integer exponents.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRat)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![BigRat::zero(); n as usize];
        for (e, c) in terms {
            let idx = e.rem_euclid(n as i64) as usize;
            dense[idx] += c;
        }
        Self::from_dense(n, dense)
    }

    fn from_dense(n: u64, dense: Vec<BigRat>) -> Self {
        if n == 1 {
            let r: BigRat = dense.into_iter().fold(BigRat::zero(), |a, b| a + b);
            return Self::from_rational(r);
        }
        let coords = poly::reduce_dense(n, dense);
        Self::minimized(n, coords)
    }

    fn minimized(mut n: u64, mut coords: Vec<BigRat>) -> Self {
        'outer: while n > 1 {
            if coords.iter().skip(1).all(|c| c.is_zero()) {
                let r = coords.into_iter().next().unwrap_or_else(BigRat::zero);
                return Self::from_rational(r);
            }
            for p in prime_divisors_u64(n) {
                if let Some(lower) = descend(n, p, &coords) {
                    n /= p;
                    coords = lower;
                    continue 'outer;
                }
            }
            break;
        }
        if n == 1 {
            let r = coords.into_iter().next().unwrap_or_else(BigRat::zero);
            return Self::from_rational(r);
        }
        let coeffs = coords
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        Cyclotomic {
            conductor: n,
            coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Nonzero power-basis coordinates `(exponent, coefficient)`, exponents ascending.
    pub fn coefficients(&self) -> impl Iterator<Item = (u32, &BigRat)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<BigRat> {
        if !self.is_rational() {
            return None;
        }
        Some(
            self.coeffs
                .first()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(BigRat::zero),
        )
    }

    pub fn as_integer(&self) -> Result<BigInt, CycError> {
        match self.as_rational() {
            Some(r) if r.is_integer() => Ok(r.to_integer()),
            _ => Err(CycError::NotAnInteger(self.to_string())),
        }
    }

    /// Membership in `ℤ[ζ_n]`; the power basis is an integral basis.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_integer())
    }

    pub fn galois(&self, k: i64) -> Result<Self, CycError> {
        let n = self.conductor;
        if n == 1 {
            return Ok(self.clone());
        }
        let km = k.rem_euclid(n as i64);
        if (km as u64).gcd(&n) != 1 {
            return Err(CycError::NotCoprime { k, n });
        }
        let terms = self
            .coeffs
            .iter()
            .map(|(e, c)| ((*e as i64) * km, c.clone()));
        Ok(Self::from_terms(n, terms))
    }

    /// Complex conjugation, `galois(a, n − 1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is coprime to every conductor")
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Field trace down to `ℚ` from `ℚ(ζ_n)`, n the conductor.
    pub fn trace(&self) -> BigRat {
        let n = self.conductor;
        let phi = totient(n);
        let mut acc = BigRat::zero();
        for (k, c) in &self.coeffs {
            let g = (*k as u64).gcd(&n);
            let m = n / g;
            let t = mobius(m) * (phi / totient(m)) as i64;
            acc += c * BigRat::from_integer(t.into());
        }
        acc
    }

    /// Power-basis coordinates inside `ℚ(ζ_n)` for a multiple `n` of the conductor.
    pub fn coords_in(&self, n: u64) -> Vec<BigRat> {
        assert!(
            n % self.conductor == 0,
            "conductor {} does not divide {n}",
            self.conductor
        );
        let stride = n / self.conductor;
        let mut dense = vec![BigRat::zero(); n as usize];
        for (k, c) in &self.coeffs {
            dense[(*k as u64 * stride) as usize] = c.clone();
        }
        poly::reduce_dense(n, dense)
    }

    /// Inverse of [`Cyclotomic::coords_in`].
    pub fn from_coords(n: u64, coords: &[BigRat]) -> Self {
        let mut dense = vec![BigRat::zero(); n as usize];
        for (k, c) in coords.iter().enumerate() {
            dense[k] = c.clone();
        }
        Self::from_dense(n, dense)
    }

    pub fn in_quadratic_field(&self, d: i64) -> Result<bool, CycError> {
        quadratic::in_quadratic_field(self, d)
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_rational() && other.is_rational() {
            return Self::from_rational(self.coeffs[0].1.clone() + &other.coeffs[0].1);
        }
        let n = self.conductor.lcm(&other.conductor);
        let mut dense = vec![BigRat::zero(); n as usize];
        for x in [self, other] {
            let stride = n / x.conductor;
            for (k, c) in &x.coeffs {
                dense[(*k as u64 * stride) as usize] += c;
            }
        }
        Self::from_dense(n, dense)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let n = self.conductor.lcm(&other.conductor);
        let (s1, s2) = (n / self.conductor, n / other.conductor);
        let mut dense = vec![BigRat::zero(); n as usize];
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                let e = (*k1 as u64 * s1 + *k2 as u64 * s2) % n;
                dense[e as usize] += c1 * c2;
            }
        }
        Self::from_dense(n, dense)
    }
}

// Attempts to rewrite an element of ℚ(ζ_n) inside ℚ(ζ_{n/p}).
fn descend(n: u64, p: u64, coords: &[BigRat]) -> Option<Vec<BigRat>> {
    let m = n / p;
    let mu = m as usize;
    if m % p == 0 {
        // basis 1, ζ_n, …, ζ_n^{p-1} over ℚ(ζ_m); ζ_n^{r+pq} = ζ_n^r ζ_m^q
        let mut parts = vec![vec![BigRat::zero(); mu]; p as usize];
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let k = k as u64;
                parts[(k % p) as usize][(k / p) as usize] += c;
            }
        }
        for part in parts.iter().skip(1) {
            if part.iter().any(|c| !c.is_zero())
                && !poly::is_zero_vec(&poly::reduce_dense(m, part.clone()))
            {
                return None;
            }
        }
        let base = parts.swap_remove(0);
        return Some(poly::reduce_dense(m, base));
    }
    // ζ_n = ζ_m^u ζ_p^v with u p + v m = 1
    let (_, u, v) = ext_gcd(p as i64, m as i64);
    let (u, v) = (u.rem_euclid(m as i64) as u64, v.rem_euclid(p as i64) as u64);
    let mut parts = vec![vec![BigRat::zero(); mu]; p as usize];
    for (k, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            let k = k as u64;
            parts[(v * k % p) as usize][(u * k % m) as usize] += c;
        }
    }
    let reduced: Vec<Vec<BigRat>> = parts
        .into_iter()
        .map(|x| poly::reduce_dense(m, x))
        .collect();
    let last = &reduced[p as usize - 1];
    if reduced[1..].iter().any(|x| x != last) {
        return None;
    }
    Some(reduced[0].iter().zip(last).map(|(a, b)| a - b).collect())
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRat> for Cyclotomic {
    fn from(r: BigRat) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        self.add_ref(&rhs)
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.add_ref(rhs);
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.add_ref(&-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        self.mul_ref(&rhs)
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.mul_ref(rhs);
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::one()
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        sum_values(iter.collect::<Vec<_>>().iter())
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        sum_values(iter)
    }
}

/// Sums many values with a single canonicalization at the common conductor.
pub fn sum_values<'a, I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Cyclotomic {
    let items: Vec<&Cyclotomic> = iter.collect();
    let n = items.iter().fold(1u64, |acc, x| acc.lcm(&x.conductor));
    if n == 1 {
        let r = items
            .iter()
            .filter_map(|x| x.coeffs.first())
            .fold(BigRat::zero(), |acc, (_, c)| acc + c);
        return Cyclotomic::from_rational(r);
    }
    let mut dense = vec![BigRat::zero(); n as usize];
    for x in items {
        let stride = n / x.conductor;
        for (k, c) in &x.coeffs {
            dense[(*k as u64 * stride) as usize] += c;
        }
    }
    Cyclotomic::from_dense(n, dense)
}

/// Whether a rational is a nonnegative integer, returning it when so.
pub fn nonnegative_integer(r: &BigRat) -> Option<BigInt> {
    (r.is_integer() && !r.is_negative()).then(|| r.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn q(a: i64, b: i64) -> Cyclotomic {
        Cyclotomic::from_rational(BigRat::new(a.into(), b.into()))
    }

    #[test]
    fn vanishing_sums() {
        assert_eq!(&e(3, 1) + &e(3, 2), q(-1, 1));
        let all: Cyclotomic = (0..7).map(|k| e(7, k)).sum();
        assert!(all.is_zero());
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn products() {
        assert_eq!(&e(4, 1) * &e(4, 1), q(-1, 1));
        let a = &e(5, 1) + &e(5, 4);
        let b = &e(5, 2) + &e(5, 3);
        assert_eq!(&a * &b, q(-1, 1));
    }

    #[test]
    fn conductor_is_minimal() {
        assert_eq!(e(6, 1).conductor(), 3);
        assert_eq!(e(6, 1), &q(1, 1) + &e(3, 1));
        assert_eq!(e(2, 1), q(-1, 1));
        assert_eq!(e(12, 4).conductor(), 3);
        assert_eq!(e(9, 3), e(3, 1));
        // √5 = ζ5 − ζ5² − ζ5³ + ζ5⁴ lives at conductor 5
        let s5 = &(&e(5, 1) + &e(5, 4)) - &(&e(5, 2) + &e(5, 3));
        assert_eq!(s5.conductor(), 5);
        assert_eq!(&s5 * &s5, q(5, 1));
        // √-3 at conductor 3 even when built in ℚ(ζ12)
        let s = &e(12, 4) - &e(12, 8);
        assert_eq!(s.conductor(), 3);
    }

    #[test]
    fn galois_action() {
        assert_eq!(q(3, 7).galois(5).unwrap(), q(3, 7));
        assert_eq!(e(3, 1).galois(2).unwrap(), &q(-1, 1) - &e(3, 1));
        let a = &e(5, 1) + &e(5, 4);
        assert_eq!(a.galois(2).unwrap(), &e(5, 2) + &e(5, 3));
        assert!(e(6, 1).galois(3).is_err());
        assert!(matches!(
            e(9, 1).galois(3),
            Err(CycError::NotCoprime { .. })
        ));
    }

    #[test]
    fn rationality() {
        let x = &e(3, 1) + &e(3, 2);
        assert!(x.is_rational());
        assert_eq!(x.as_integer().unwrap(), BigInt::from(-1));
        assert!(matches!(
            q(1, 2).as_integer(),
            Err(CycError::NotAnInteger(_))
        ));
        assert!(!e(7, 1).is_rational());
    }

    #[test]
    fn trace_of_roots() {
        assert_eq!(e(7, 1).trace(), BigRat::from_integer((-1).into()));
        let n = &e(5, 1) * &e(5, 1).conj();
        assert_eq!(n, q(1, 1));
        assert_eq!(e(8, 1).trace(), BigRat::zero());
    }
}
