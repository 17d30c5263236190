//! Cyclotomic polynomials and remainder reduction of exponent vectors.

use num_traits::Zero;

use super::BigRat;
use crate::arith::{divisors_u64, mobius, radical, totient};

/// Integer coefficients of Φ_n, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let rad = radical(n);
    let base = squarefree_cyclotomic(rad);
    let stretch = (n / rad) as usize;
    let mut out = vec![0i64; (base.len() - 1) * stretch + 1];
    for (i, c) in base.into_iter().enumerate() {
        out[i * stretch] = c;
    }
    out
}

// Φ_m(x) = ∏_{d | m} (x^d − 1)^{μ(m/d)} for squarefree m.
fn squarefree_cyclotomic(m: u64) -> Vec<i64> {
    let mut poly: Vec<i128> = vec![1];
    let divs = divisors_u64(m);
    let mut denominators = Vec::new();
    for &d in &divs {
        match mobius(m / d) {
            1 => {
                // multiply by x^d - 1
                let d = d as usize;
                let mut next = vec![0i128; poly.len() + d];
                for (i, &c) in poly.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                poly = next;
            }
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    for d in denominators {
        // exact division by x^d - 1: q[i] = q[i-d] - p[i]
        let qlen = poly.len() - d;
        let mut q = vec![0i128; qlen];
        for i in 0..qlen {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - poly[i];
        }
        poly = q;
    }
    if poly.last().copied() == Some(-1) {
        for c in poly.iter_mut() {
            *c = -*c;
        }
    }
    debug_assert_eq!(poly.len() as u64 - 1, totient(m));
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

/// Reduces a dense vector indexed by exponents modulo x^n − 1 and then Φ_n.
/// Output length is φ(n).
pub fn reduce_dense(n: u64, mut dense: Vec<BigRat>) -> Vec<BigRat> {
    let n_us = n as usize;
    if dense.len() > n_us {
        let tail = dense.split_off(n_us);
        for (i, c) in tail.into_iter().enumerate() {
            if !c.is_zero() {
                dense[i % n_us] += c;
            }
        }
    }
    dense.resize(n_us, BigRat::zero());
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let terms: Vec<(usize, i64)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    for i in (deg..n_us).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[i], BigRat::zero());
        let shift = i - deg;
        for &(j, pj) in &terms {
            // x^i = -Σ_{j<deg} Φ[j] x^{j+shift}
            let delta = scale_small(&c, pj);
            dense[j + shift] -= delta;
        }
    }
    dense.truncate(deg);
    dense
}

fn scale_small(c: &BigRat, k: i64) -> BigRat {
    match k {
        1 => c.clone(),
        -1 => -c.clone(),
        _ => c * BigRat::from_integer(k.into()),
    }
}

/// Whether the reduced vector of length φ(n) is zero.
pub fn is_zero_vec(v: &[BigRat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_1() {
        for n in 1..=40u64 {
            let mut prod: Vec<i64> = vec![1];
            for d in divisors_u64(n) {
                let f = cyclotomic_polynomial(d);
                let mut next = vec![0i64; prod.len() + f.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }
}
