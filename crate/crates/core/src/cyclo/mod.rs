//! Exact arithmetic in cyclotomic fields Q(ζ_L).
//!
//! A `CycloNum` is a residue in Q[x]/(Φ_L(x)): a dense coefficient vector of
//! length φ(L) over arbitrary-precision rationals, always fully reduced mod the
//! L-th cyclotomic polynomial. The representation is canonical, so equality and
//! zero tests are exact coefficient comparisons. Values at different conductors
//! are never combined implicitly; callers lift to a common conductor first
//! (ζ_d = ζ_L^{L/d} whenever d | L).
//!
//! Conductors are kept normalized: L ≡ 2 (mod 4) is replaced by L/2, which
//! names the same field (−ζ_m generates the 2m-th roots for odd m) with half
//! the label. In particular ζ_2 = −1 lives at conductor 1.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod subspace;

pub use matrix::Matrix;
pub use parse::{parse_scalar, parse_scalar_at, parse_vector};
pub use poly::{cyclotomic_polynomial, CycPoly};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut ds: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    ds.sort_unstable();
    ds
}

/// Smallest L' with Q(ζ_{L'}) = Q(ζ_L): strip the factor 2 when L ≡ 2 (mod 4).
pub fn normalize_conductor(n: u32) -> u32 {
    assert!(n > 0, "conductor must be positive");
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Normalized conductor of the compositum Q(ζ_a, ζ_b).
pub fn lcm_conductor(a: u32, b: u32) -> u32 {
    normalize_conductor(num_integer::lcm(a, b))
}

/// Per-conductor reduction data, built once and shared.
struct FieldCtx {
    degree: usize,
    /// Φ_L as integer coefficients, monic, length degree + 1.
    phi: Vec<BigInt>,
    /// Row j holds x^{degree+j} reduced mod Φ_L (length degree).
    red: Vec<Vec<Rational>>,
}

static CTX_CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldCtx>>>> = OnceLock::new();

fn ctx(conductor: u32) -> Arc<FieldCtx> {
    assert!(
        conductor % 4 != 2,
        "conductor {conductor} is not normalized (use {} instead)",
        conductor / 2
    );
    let cache = CTX_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().unwrap().get(&conductor) {
        return c.clone();
    }
    let phi = poly::cyclotomic_polynomial_int(conductor);
    let degree = phi.len() - 1;
    let mut red: Vec<Vec<Rational>> = Vec::with_capacity(degree.max(1));
    // x^degree = -(phi_0 + phi_1 x + ... + phi_{degree-1} x^{degree-1})
    let row0: Vec<Rational> = phi[..degree]
        .iter()
        .map(|c| Rational::from_integer(-c.clone()))
        .collect();
    red.push(row0);
    for j in 1..degree.max(1) {
        let prev = &red[j - 1];
        let carry = prev[degree - 1].clone();
        let mut row = vec![Rational::zero(); degree];
        for k in 1..degree {
            row[k] = prev[k - 1].clone();
        }
        if !carry.is_zero() {
            for k in 0..degree {
                row[k] += &carry * &red[0][k];
            }
        }
        red.push(row);
    }
    let arc = Arc::new(FieldCtx {
        degree,
        phi: phi.as_ref().clone(),
        red,
    });
    cache
        .write()
        .unwrap()
        .entry(conductor)
        .or_insert(arc)
        .clone()
}

/// An element of Q(ζ_L), stored as its canonical residue mod Φ_L.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    conductor: u32,
    coeffs: Box<[Rational]>,
}

impl CycloNum {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn zero(conductor: u32) -> Self {
        let d = ctx(conductor).degree;
        CycloNum {
            conductor,
            coeffs: vec![Rational::zero(); d].into(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(conductor: u32, k: i64) -> Self {
        Self::from_rational(conductor, rat_int(k))
    }

    /// Build from raw residue coefficients; reduces mod Φ_L if too long.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Self {
        let c = ctx(conductor);
        if coeffs.len() <= c.degree {
            let mut v = coeffs;
            v.resize(c.degree, Rational::zero());
            return CycloNum {
                conductor,
                coeffs: v.into(),
            };
        }
        let mut buf = coeffs;
        reduce_in_place(&c, &mut buf);
        buf.truncate(c.degree);
        CycloNum {
            conductor,
            coeffs: buf.into(),
        }
    }

    /// ζ_L itself.
    pub fn zeta(conductor: u32) -> Self {
        let d = ctx(conductor).degree;
        if d == 1 {
            // Φ_1 = x - 1, so x ≡ 1 (only conductor 1 has degree 1 after
            // normalization).
            return Self::one(conductor);
        }
        let mut z = Self::zero(conductor);
        z.coeffs[1] = Rational::one();
        z
    }

    /// A primitive b-th root of unity expressed at conductor L.
    ///
    /// Uses ζ_L^{L/b} when b | L; for b ≡ 2 (mod 4) it uses −ζ_{b/2}^{(b/2+1)/2},
    /// which squares to ζ_{b/2} and has order b. Requires that the normalized
    /// conductor of b divide L.
    pub fn root_of_unity(conductor: u32, b: u32) -> Result<Self> {
        assert!(b > 0);
        if b == 1 {
            return Ok(Self::one(conductor));
        }
        let nb = normalize_conductor(b);
        if conductor % nb != 0 {
            return Err(Error::Dimension(format!(
                "zeta_{b} is not expressible at conductor {conductor}"
            )));
        }
        if b % 4 == 2 {
            let half = b / 2;
            let base = if half == 1 {
                Self::one(conductor)
            } else {
                Self::zeta(conductor).pow((conductor / half) as i64)
            };
            Ok(-&base.pow(((half + 1) / 2) as i64))
        } else {
            Ok(Self::zeta(conductor).pow((conductor / b) as i64))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the value lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express at a conductor L' with L | L'.
    pub fn lift(&self, conductor: u32) -> Self {
        if conductor == self.conductor {
            return self.clone();
        }
        assert!(
            conductor % self.conductor == 0,
            "cannot lift from conductor {} to {}",
            self.conductor,
            conductor
        );
        let step = CycloNum::zeta(conductor).pow((conductor / self.conductor) as i64);
        let mut acc = CycloNum::one(conductor);
        let mut out = CycloNum::zero(conductor);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &acc.scale(c);
            }
            if k + 1 < self.coeffs.len() {
                acc = &acc * &step;
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs: Vec<Rational> = self.coeffs.iter().map(|c| c * r).collect();
        CycloNum {
            conductor: self.conductor,
            coeffs: coeffs.into(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_L
    /// (irreducible, so any nonzero residue is a unit).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                conductor: self.conductor,
            });
        }
        let c = ctx(self.conductor);
        let phi: Vec<Rational> = c
            .phi
            .iter()
            .map(|k| Rational::from_integer(k.clone()))
            .collect();
        let a: Vec<Rational> = self.coeffs.to_vec();
        // Invariant: r0 = s0*a (mod Φ), r1 = s1*a (mod Φ).
        let mut r0 = phi;
        let mut r1 = trim(a);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divrem(&r0, &r1);
            let s_new = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_new;
        }
        // r0 is a nonzero constant (gcd of a unit with an irreducible).
        debug_assert_eq!(r0.len(), 1);
        let unit = r0[0].recip();
        let inv: Vec<Rational> = s0.iter().map(|x| x * &unit).collect();
        Ok(CycloNum::from_coeffs(self.conductor, inv))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("pow of zero to negative exponent").pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = CycloNum::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (b.len() - 1..a.len()).rev() {
        let c = &rem[k] / lead;
        if c.is_zero() {
            continue;
        }
        let shift = k + 1 - b.len();
        quot[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            rem[shift + i] -= t;
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Fold coefficients at index ≥ degree back down using the reduction rows.
fn reduce_in_place(c: &FieldCtx, buf: &mut Vec<Rational>) {
    let d = c.degree;
    for e in (d..buf.len()).rev() {
        if buf[e].is_zero() {
            continue;
        }
        let coef = std::mem::replace(&mut buf[e], Rational::zero());
        let row = &c.red[e - d];
        for k in 0..d {
            if !row[k].is_zero() {
                buf[k] += &coef * &row[k];
            }
        }
    }
    buf.truncate(d);
}

/// Accumulator for Σ aᵢ·bᵢ that convolves into one buffer and reduces once.
pub struct MulAcc {
    conductor: u32,
    buf: Vec<Rational>,
}

impl MulAcc {
    pub fn new(conductor: u32) -> Self {
        let d = ctx(conductor).degree;
        MulAcc {
            conductor,
            buf: vec![Rational::zero(); 2 * d - 1],
        }
    }

    pub fn add_product(&mut self, a: &CycloNum, b: &CycloNum) {
        debug_assert_eq!(a.conductor, self.conductor);
        debug_assert_eq!(b.conductor, self.conductor);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    self.buf[i + j] += x * y;
                }
            }
        }
    }

    pub fn finish(mut self) -> CycloNum {
        let c = ctx(self.conductor);
        reduce_in_place(&c, &mut self.buf);
        CycloNum {
            conductor: self.conductor,
            coeffs: self.buf.into(),
        }
    }
}

/// Σ xᵢ·yᵢ over two equal-length slices at a shared conductor.
pub fn dot(xs: &[CycloNum], ys: &[CycloNum]) -> CycloNum {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let mut acc = MulAcc::new(xs[0].conductor);
    for (x, y) in xs.iter().zip(ys) {
        acc.add_product(x, y);
    }
    acc.finish()
}

macro_rules! check_conductor {
    ($a:expr, $b:expr) => {
        assert_eq!(
            $a.conductor, $b.conductor,
            "conductor mismatch: {} vs {} (lift explicitly first)",
            $a.conductor, $b.conductor
        );
    };
}

impl std::ops::Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        check_conductor!(self, rhs);
        let coeffs: Vec<Rational> = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a + b)
            .collect();
        CycloNum {
            conductor: self.conductor,
            coeffs: coeffs.into(),
        }
    }
}

impl std::ops::Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        check_conductor!(self, rhs);
        let coeffs: Vec<Rational> = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a - b)
            .collect();
        CycloNum {
            conductor: self.conductor,
            coeffs: coeffs.into(),
        }
    }
}

impl std::ops::Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        check_conductor!(self, rhs);
        let mut acc = MulAcc::new(self.conductor);
        acc.add_product(self, rhs);
        acc.finish()
    }
}

impl std::ops::Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let coeffs: Vec<Rational> = self.coeffs.iter().map(|c| -c).collect();
        CycloNum {
            conductor: self.conductor,
            coeffs: coeffs.into(),
        }
    }
}

impl std::ops::AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        check_conductor!(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl std::ops::SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        check_conductor!(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on (conductor, coefficients). Purely syntactic; used
/// for deterministic tie-breaking, not as a field order.
impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for CycloNum {
    /// Renders in the scalar literal grammar, e.g. `1/2 - z12^2 + 3*z12^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
