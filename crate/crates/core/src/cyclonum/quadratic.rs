//! Square roots of squarefree integers as cyclotomic numbers, and membership
//! in quadratic subfields.

use num_integer::Integer;

use super::{BigRat, CycError, Cyclotomic};
use crate::arith::{factorize_u64, is_squarefree_i64, legendre};

// Gauss sum Σ (a/p) ζ_p^a = √p*, p* = (−1)^{(p−1)/2} p.
fn gauss_sum(p: u64) -> Cyclotomic {
    let terms = (1..p as i64).map(|a| (a, BigRat::from_integer(legendre(a, p).into())));
    Cyclotomic::from_terms(p, terms)
}

/// A square root of the squarefree integer `d`, expressed in `ℚ(ζ_{4|d|})`.
pub fn sqrt_of_squarefree(d: i64) -> Result<Cyclotomic, CycError> {
    if d == 0 || d == 1 || !is_squarefree_i64(d) {
        return Err(CycError::BadDiscriminant(d));
    }
    let i = Cyclotomic::root_of_unity(4, 1);
    let mut root = Cyclotomic::one();
    // tracks the sign s with root² = s·(product so far)
    let mut sign = 1i64;
    for (p, _) in factorize_u64(d.unsigned_abs()) {
        if p == 2 {
            let s2 = &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, 7);
            root = &root * &s2;
        } else {
            root = &root * &gauss_sum(p);
            if p % 4 == 3 {
                sign = -sign;
            }
        }
    }
    let want = if d < 0 { -1 } else { 1 };
    if sign != want {
        root = &root * &i;
    }
    debug_assert_eq!(&root * &root, Cyclotomic::from_integer(d));
    Ok(root)
}

pub(super) fn in_quadratic_field(a: &Cyclotomic, d: i64) -> Result<bool, CycError> {
    let s = sqrt_of_squarefree(d)?;
    if a.is_rational() {
        return Ok(true);
    }
    let n = a.conductor().lcm(&s.conductor());
    for k in 1..n as i64 {
        if (k as u64).gcd(&n) != 1 {
            continue;
        }
        if s.galois(k)? == s && a.galois(k)? != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_square_correctly() {
        for d in [
            -1i64, 2, -2, 3, -3, 5, -5, 6, -7, 10, -15, -23, -59, -71, -119, 105,
        ] {
            let s = sqrt_of_squarefree(d).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_integer(d), "d = {d}");
        }
        assert!(sqrt_of_squarefree(4).is_err());
        assert!(sqrt_of_squarefree(1).is_err());
    }

    #[test]
    fn quadratic_membership() {
        let half = Cyclotomic::from_rational(BigRat::new(1.into(), 2.into()));
        assert!(half.in_quadratic_field(-7).unwrap());
        let i = Cyclotomic::root_of_unity(4, 1);
        assert!(i.in_quadratic_field(-1).unwrap());
        let g = &Cyclotomic::root_of_unity(5, 1) + &Cyclotomic::root_of_unity(5, 4);
        assert!(g.in_quadratic_field(5).unwrap());
        assert!(!g.in_quadratic_field(-1).unwrap());
        assert!(!Cyclotomic::root_of_unity(7, 1)
            .in_quadratic_field(-7)
            .unwrap());
        let b = "E(23)+E(23)^2+E(23)^3+E(23)^4+E(23)^6+E(23)^8+E(23)^9+E(23)^12+E(23)^13+E(23)^16+E(23)^18"
            .parse::<Cyclotomic>()
            .unwrap();
        assert!(b.in_quadratic_field(-23).unwrap());
        assert!(!b.in_quadratic_field(23).unwrap());
    }
}
