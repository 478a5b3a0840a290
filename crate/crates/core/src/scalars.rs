//! Exact arithmetic in cyclotomic fields `Q(zeta_N)` and roots of unity.
//!
//! A [`CycScalar`] stores its coordinates in the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)` after reduction modulo the N-th
//! cyclotomic polynomial, so equality is plain coordinate comparison once
//! both operands share a conductor. Mixed conductors are promoted to their
//! least common multiple; results whose only nonzero coordinate is the
//! constant term are demoted back to conductor 1.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("invalid scalar literal `{0}`")]
    Parse(String),
}

/// Precomputed data for one conductor: Euler phi and the reductions of
/// `x^k mod Phi_N` for `0 <= k < N`.
#[derive(Debug)]
struct CycloTable {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert!(lead == 1);
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    quot
}

impl CycloTable {
    fn build(n: u32) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi.max(1)];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Phi_n
            let top = if phi > 0 { cur[phi - 1] } else { 0 };
            let mut next = vec![0i64; phi.max(1)];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            if phi > 0 {
                for (i, slot) in next.iter_mut().enumerate().take(phi) {
                    *slot -= top * poly[i];
                }
            }
            cur = next;
        }
        CycloTable { phi, powers }
    }
}

fn table(n: u32) -> Arc<CycloTable> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(t);
    }
    let t = Arc::new(CycloTable::build(n));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&t))
        .clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    table(n).phi
}

/// A root of unity `zeta_n^k`, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    n: u32,
    k: u32,
}

impl RootOfUnity {
    pub fn new(n: u32, k: i64) -> Self {
        assert!(n > 0, "root of unity with conductor 0");
        let k = k.rem_euclid(n as i64) as u32;
        let g = k.gcd(&n).max(1);
        let (n, k) = if k == 0 { (1, 0) } else { (n / g, k / g) };
        RootOfUnity { n, k }
    }

    pub fn one() -> Self {
        RootOfUnity { n: 1, k: 0 }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    /// Exponent of this root as a power of `zeta_m`, if it lies in `mu_m`.
    pub fn exponent_in(&self, m: u32) -> Option<u32> {
        if m.is_multiple_of(self.n) {
            Some(self.k * (m / self.n))
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.n.lcm(&other.n);
        let a = self.k as i64 * (l / self.n) as i64;
        let b = other.k as i64 * (l / other.n) as i64;
        RootOfUnity::new(l, a + b)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.n, -(self.k as i64))
    }

    pub fn pow(&self, e: i64) -> Self {
        RootOfUnity::new(self.n, self.k as i64 * e)
    }

    pub fn to_scalar(&self) -> CycScalar {
        CycScalar::root(self.n, self.k as i64)
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = std::f64::consts::TAU * self.k as f64 / self.n as f64;
        Complex64::new(t.cos(), t.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({})^{}", self.n, self.k)
    }
}

/// An exact element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(rat(v))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `zeta_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let t = table(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let coeffs = t.powers[idx].iter().map(|&c| rat(c)).collect();
        CycScalar {
            conductor: n,
            coeffs,
        }
        .normalized()
    }

    /// Builds `sum_i coeffs[i] * zeta_n^i` for an arbitrary-length coefficient list.
    pub fn from_power_sum(n: u32, terms: &[(BigRational, i64)]) -> Self {
        let t = table(n);
        let mut coeffs = vec![BigRational::zero(); t.phi.max(1)];
        for (c, k) in terms {
            let idx = k.rem_euclid(n as i64) as usize;
            for (j, &p) in t.powers[idx].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += c * rat(p);
                }
            }
        }
        CycScalar {
            conductor: n,
            coeffs,
        }
        .normalized()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    fn normalized(mut self) -> Self {
        if self.conductor != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = std::mem::take(&mut self.coeffs[0]);
            return CycScalar::from_rational(c);
        }
        self
    }

    /// Re-expresses `self` in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn promote(&self, m: u32) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "cannot promote conductor {} to {}", self.conductor, m);
        let step = (m / self.conductor) as i64;
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), i as i64 * step))
            .collect();
        let t = table(m);
        let mut coeffs = vec![BigRational::zero(); t.phi.max(1)];
        for (c, k) in terms {
            for (j, &p) in t.powers[k as usize % m as usize].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += &c * rat(p);
                }
            }
        }
        CycScalar {
            conductor: m,
            coeffs,
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self, u32) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone(), a.conductor);
        }
        let l = a.conductor.lcm(&b.conductor);
        (a.promote(l), b.promote(l), l)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.conductor == other.conductor {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return CycScalar { conductor: self.conductor, coeffs }.normalized();
        }
        let (a, b, _) = Self::aligned(self, other);
        a.add(&b)
    }

    pub fn neg(&self) -> Self {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.conductor != other.conductor {
            let (a, b, _) = Self::aligned(self, other);
            return a.mul(&b);
        }
        let n = self.conductor as usize;
        let t = table(self.conductor);
        let mut conv = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[(i + j) % n] += a * b;
                }
            }
        }
        let mut coeffs = vec![BigRational::zero(); t.phi];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < t.phi {
                coeffs[k] += c;
                continue;
            }
            for (j, &p) in t.powers[k].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += &c * rat(p);
                }
            }
        }
        CycScalar {
            conductor: self.conductor,
            coeffs,
        }
        .normalized()
    }

    /// `self += a * b`, accumulating in place in the power basis.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let t_cond = self.conductor.lcm(&a.conductor).lcm(&b.conductor);
        let lift = |x: &Self| -> Option<Self> { (x.conductor != 1 && x.conductor != t_cond).then(|| x.promote(t_cond)) };
        let (pa, pb) = (lift(a), lift(b));
        let (a, b) = (pa.as_ref().unwrap_or(a), pb.as_ref().unwrap_or(b));
        if self.conductor != t_cond {
            *self = if self.is_zero() {
                CycScalar {
                    conductor: t_cond,
                    coeffs: vec![BigRational::zero(); table(t_cond).phi.max(1)],
                }
            } else {
                self.promote(t_cond)
            };
        }
        if a.conductor == 1 || b.conductor == 1 {
            let (r, v) = if a.conductor == 1 { (&a.coeffs[0], b) } else { (&b.coeffs[0], a) };
            if v.conductor == 1 {
                self.coeffs[0] += r * &v.coeffs[0];
            } else {
                for (c, x) in self.coeffs.iter_mut().zip(&v.coeffs) {
                    if !x.is_zero() {
                        *c += r * x;
                    }
                }
            }
        } else {
            let n = t_cond as usize;
            let t = table(t_cond);
            for (i, x) in a.coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.coeffs.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let k = (i + j) % n;
                    if k < t.phi {
                        self.coeffs[k] += x * y;
                        continue;
                    }
                    let xy = x * y;
                    for (l, &p) in t.powers[k].iter().enumerate() {
                        match p {
                            0 => {}
                            1 => self.coeffs[l] += &xy,
                            -1 => self.coeffs[l] -= &xy,
                            _ => self.coeffs[l] += &xy * rat(p),
                        }
                    }
                }
            }
        }
        if self.conductor != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            *self = std::mem::take(self).normalized();
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
        .normalized()
    }

    /// Image under the Galois automorphism `zeta -> zeta^j` (`gcd(j, N) = 1`).
    pub fn galois(&self, j: i64) -> Self {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), i as i64 * j))
            .collect();
        Self::from_power_sum(self.conductor, &terms)
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInverse);
        }
        if self.conductor == 1 {
            return Ok(CycScalar::from_rational(self.coeffs[0].recip()));
        }
        // x^-1 = (prod of the other conjugates) / norm(x)
        let n = self.conductor as i64;
        let mut others = CycScalar::one();
        for j in 2..n {
            if j.gcd(&n) == 1 {
                others = others.mul(&self.galois(j));
            }
        }
        let norm = self.mul(&others);
        let norm = norm
            .as_rational()
            .cloned()
            .expect("field norm of a cyclotomic element is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Complex embedding sending `zeta_N` to `exp(2 pi i / N)`.
    pub fn embed_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let t = std::f64::consts::TAU * k as f64 / n;
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex64::new(v * t.cos(), v * t.sin())
            })
            .sum()
    }

    /// Returns the root of unity equal to `self`, if `self` lies in `mu_m`.
    pub fn as_root_of_unity(&self, m: u32) -> Option<RootOfUnity> {
        let z = self.embed_complex();
        if (z.norm() - 1.0).abs() > 1e-6 {
            return None;
        }
        let k = (z.arg() / std::f64::consts::TAU * m as f64).round() as i64;
        let r = RootOfUnity::new(m, k);
        (r.to_scalar() == *self).then_some(r)
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        CycScalar::from_integer(v)
    }
}

impl From<RootOfUnity> for CycScalar {
    fn from(r: RootOfUnity) -> Self {
        r.to_scalar()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                CycScalar::$inner(self, rhs)
            }
        }
        impl std::ops::$tr for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                CycScalar::$inner(&self, &rhs)
            }
        }
    };
}
forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(&self)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycScalar {
    /// Serializes as `c` for rationals, otherwise as a sum of `c*zeta(N)^k` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return f.write_str(&fmt_rational(r));
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if k == 0 {
                    fmt_rational(c)
                } else if c.is_one() {
                    format!("zeta({})^{}", self.conductor, k)
                } else {
                    format!("{}*zeta({})^{}", fmt_rational(c), self.conductor, k)
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar({})", self)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

fn parse_root(s: &str) -> Option<(u32, i64)> {
    let s = s.trim();
    let rest = s.strip_prefix("zeta(")?;
    let (n, rest) = rest.split_once(')')?;
    let n: u32 = n.trim().parse().ok()?;
    if n == 0 {
        return None;
    }
    let rest = rest.trim();
    let k = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.trim().parse().ok()?
    };
    Some((n, k))
}

fn parse_term(term: &str) -> Option<CycScalar> {
    let term = term.trim();
    let (neg, body) = match term.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, term.strip_prefix('+').unwrap_or(term).trim()),
    };
    let value = if let Some((c, z)) = body.split_once('*') {
        let c = parse_rational(c)?;
        let (n, k) = parse_root(z)?;
        CycScalar::root(n, k).scale(&c)
    } else if body.starts_with("zeta(") {
        let (n, k) = parse_root(body)?;
        CycScalar::root(n, k)
    } else {
        CycScalar::from_rational(parse_rational(body)?)
    };
    Some(if neg { value.neg() } else { value })
}

impl FromStr for CycScalar {
    type Err = ScalarError;

    /// Accepts rationals (`-3/4`), roots (`zeta(8)^3`) and `+`-separated sums
    /// of `c*zeta(N)^k` terms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(err());
        }
        // split on '+' and on '-' that start a new term (not after '^', '/', '*', '(')
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            let starts_term = (ch == '+' || ch == '-')
                && !cur.trim().is_empty()
                && !matches!(prev, Some('^' | '/' | '*' | '(' | '+' | '-'));
            if starts_term {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        terms.push(cur);
        let mut acc = CycScalar::zero();
        for t in terms {
            acc = acc.add(&parse_term(&t).ok_or_else(err)?);
        }
        Ok(acc)
    }
}

/// Least common multiple helper used across modules.
pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Absolute value of a rational as f64; handy for diagnostics.
pub fn rational_abs_f64(r: &BigRational) -> f64 {
    r.abs().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycScalar {
        CycScalar::root(n, k)
    }

    #[test]
    fn fused_product_matches_add_and_mul() {
        let vals = [
            CycScalar::zero(),
            CycScalar::from_integer(3),
            z(3, 1),
            z(4, 3).add(&CycScalar::from_rational(BigRational::new(1.into(), 2.into()))),
            z(12, 5).sub(&z(12, 7)),
            z(5, 2).add(&z(5, 4)),
        ];
        for acc in &vals {
            for a in &vals {
                for b in &vals {
                    let mut fused = acc.clone();
                    fused.add_product(a, b);
                    let plain = acc.add(&a.mul(b));
                    assert_eq!(fused, plain);
                    assert_eq!(fused.conductor() == 1, plain.conductor() == 1);
                }
            }
        }
        let mut x = z(4, 1);
        x.add_product(&z(4, 1), &z(4, 3));
        assert_eq!(x, z(4, 1).add(&CycScalar::one()));
        let mut y = z(3, 1);
        y.add_product(&CycScalar::from_integer(-1), &z(3, 1));
        assert!(y.is_zero() && y.conductor() == 1);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(4, 1).mul(&z(4, 1)), CycScalar::from_integer(-1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        assert_eq!(z(3, 1).add(&z(3, 2)), CycScalar::from_integer(-1));
    }

    #[test]
    fn inverse_law() {
        let x = CycScalar::one().add(&z(5, 1));
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(CycScalar::zero().inv(), Err(ScalarError::ZeroInverse));
    }

    #[test]
    fn mixed_conductors_promote() {
        // zeta_4 * zeta_6 = zeta_12^(3+2)
        assert_eq!(z(4, 1).mul(&z(6, 1)), z(12, 5));
        assert_eq!(z(2, 1), CycScalar::from_integer(-1));
        assert_eq!(z(8, 2), z(4, 1));
    }

    #[test]
    fn embeddings() {
        assert!((CycScalar::one().embed_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((z(4, 1).embed_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z(8, 1).embed_complex() - Complex64::new(h, h)).norm() < 1e-12);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0", "-3/4", "zeta(8)^3", "1/2*zeta(12)^1 + -2*zeta(12)^3"] {
            let v: CycScalar = s.parse().unwrap();
            let back: CycScalar = v.to_string().parse().unwrap();
            assert_eq!(v, back, "{s}");
        }
        let v: CycScalar = "1 - zeta(4)^1".parse().unwrap();
        assert_eq!(v, CycScalar::one().sub(&z(4, 1)));
        assert!("zeta(0)^1".parse::<CycScalar>().is_err());
        assert!("abc".parse::<CycScalar>().is_err());
    }

    #[test]
    fn roots_of_unity() {
        let r = RootOfUnity::new(8, 6);
        assert_eq!(r, RootOfUnity::new(4, 3));
        assert_eq!(r.mul(&r.inv()), RootOfUnity::one());
        assert_eq!(z(8, 6).as_root_of_unity(8), Some(r));
        assert_eq!(CycScalar::from_integer(2).as_root_of_unity(8), None);
        assert_eq!(r.exponent_in(12), Some(9));
        assert_eq!(r.exponent_in(6), None);
    }

    #[test]
    fn conjugation_is_inverse_on_roots() {
        for n in [3u32, 5, 8, 12] {
            for k in 0..n as i64 {
                assert_eq!(z(n, k).conj(), z(n, -k));
            }
        }
    }
}
