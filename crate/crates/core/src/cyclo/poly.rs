//! Dense univariate polynomials with CycloNum coefficients, plus the integer
//! cyclotomic polynomials Φ_n used for reduction and eigenvalue tests.

use super::{CycloNum, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

static PHI_CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();

/// Φ_n with integer coefficients, ascending degree, monic.
///
/// Computed by exact division: Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d.
pub fn cyclotomic_polynomial_int(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n > 0);
    let cache = PHI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial_int(d);
                num = int_poly_div_exact(&num, &phi_d);
            }
        }
        num
    };
    let arc = Arc::new(result);
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(arc)
        .clone()
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (b.len() - 1..a.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        let shift = k + 1 - b.len();
        quot[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Φ_n lifted into Q(ζ_L).
pub fn cyclotomic_polynomial(n: u32, conductor: u32) -> CycPoly {
    let ints = cyclotomic_polynomial_int(n);
    let coeffs = ints
        .iter()
        .map(|c| CycloNum::from_rational(conductor, Rational::from_integer(c.clone())))
        .collect();
    CycPoly::new(conductor, coeffs)
}

/// Dense polynomial over Q(ζ_L), ascending coefficients, trailing zeros trimmed
/// (the zero polynomial has an empty coefficient vector).
#[derive(Clone, PartialEq, Eq)]
pub struct CycPoly {
    conductor: u32,
    coeffs: Vec<CycloNum>,
}

impl CycPoly {
    pub fn new(conductor: u32, mut coeffs: Vec<CycloNum>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        CycPoly { conductor, coeffs }
    }

    pub fn zero(conductor: u32) -> Self {
        CycPoly {
            conductor,
            coeffs: vec![],
        }
    }

    pub fn from_ints(conductor: u32, ints: &[i64]) -> Self {
        let coeffs = ints
            .iter()
            .map(|&k| CycloNum::from_int(conductor, k))
            .collect();
        CycPoly::new(conductor, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let mut acc = CycloNum::zero(self.conductor);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, rhs: &CycPoly) -> CycPoly {
        assert_eq!(self.conductor, rhs.conductor);
        if self.is_zero() || rhs.is_zero() {
            return CycPoly::zero(self.conductor);
        }
        let mut out = vec![CycloNum::zero(self.conductor); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = a * b;
                    out[i + j] += &t;
                }
            }
        }
        CycPoly::new(self.conductor, out)
    }

    pub fn sub(&self, rhs: &CycPoly) -> CycPoly {
        assert_eq!(self.conductor, rhs.conductor);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![CycloNum::zero(self.conductor); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] = a.clone();
        }
        for (i, b) in rhs.coeffs.iter().enumerate() {
            out[i] -= b;
        }
        CycPoly::new(self.conductor, out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, rhs: &CycPoly) -> (CycPoly, CycPoly) {
        assert_eq!(self.conductor, rhs.conductor);
        assert!(!rhs.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < rhs.coeffs.len() {
            return (CycPoly::zero(self.conductor), self.clone());
        }
        let lead_inv = rhs.coeffs.last().unwrap().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CycloNum::zero(self.conductor); rem.len() - rhs.coeffs.len() + 1];
        for k in (rhs.coeffs.len() - 1..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &lead_inv;
            let shift = k + 1 - rhs.coeffs.len();
            for (i, bc) in rhs.coeffs.iter().enumerate() {
                let t = &c * bc;
                rem[shift + i] -= &t;
            }
            quot[shift] = c;
        }
        (CycPoly::new(self.conductor, quot), CycPoly::new(self.conductor, rem))
    }

    pub fn divides(&self, other: &CycPoly) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() || other.coeffs.len() < self.coeffs.len() {
            return false;
        }
        other.divrem(self).1.is_zero()
    }

    pub fn lift(&self, conductor: u32) -> CycPoly {
        CycPoly::new(
            conductor,
            self.coeffs.iter().map(|c| c.lift(conductor)).collect(),
        )
    }

    /// x^{deg}·p(1/x), the coefficient-reversed polynomial.
    pub fn reversed(&self) -> CycPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        CycPoly::new(self.conductor, coeffs)
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*x^{k}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{euler_phi, CycloNum};

    fn ints(p: &Arc<Vec<BigInt>>) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c.clone()).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics_match_known_tables() {
        assert_eq!(ints(&cyclotomic_polynomial_int(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(5)), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial_int(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_over_divisors_recovers_x_pow_n_minus_one() {
        for n in 1u32..=30 {
            let mut prod = CycPoly::from_ints(1, &[1]);
            for d in 1..=n {
                if n % d == 0 {
                    let phi = cyclotomic_polynomial(d, 1);
                    assert_eq!(phi.degree(), Some(euler_phi(d) as usize));
                    prod = prod.mul(&phi);
                }
            }
            let mut expect = vec![0i64; (n + 1) as usize];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, CycPoly::from_ints(1, &expect), "n = {n}");
        }
    }

    #[test]
    fn phi_vanishes_exactly_on_primitive_roots() {
        for n in [3u32, 4, 5, 8, 12] {
            let phi = cyclotomic_polynomial(n, n);
            for k in 0..n {
                let val = phi.eval(&CycloNum::zeta(n).pow(k as i64));
                let primitive = num_integer::gcd(k, n) == 1;
                assert_eq!(val.is_zero(), primitive, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let phi12 = cyclotomic_polynomial(12, 12);
        let phi4 = cyclotomic_polynomial(4, 12);
        let prod = phi12.mul(&phi4);
        assert!(phi4.divides(&prod));
        assert!(phi12.divides(&prod));
        let (q, r) = prod.divrem(&phi4);
        assert!(r.is_zero());
        assert_eq!(q, phi12);
        assert!(!phi4.divides(&phi12));
    }
}
