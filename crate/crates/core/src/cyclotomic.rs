//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! An element is stored as an integer coefficient vector over the power basis
//! `1, ζ, …, ζ^(φ(M)-1)` together with a single positive denominator. The
//! representative is always reduced modulo the `M`-th cyclotomic polynomial and
//! the fraction is kept in lowest terms, so equality is a structural comparison.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Divides `num` by the monic polynomial `den`, asserting a zero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Coefficients (low degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u32, memo: &mut BTreeMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut acc = vec![BigInt::zero(); m as usize + 1];
    acc[0] = BigInt::from(-1);
    acc[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_memo(d, memo);
            acc = poly_div_exact(&acc, &phi_d);
        }
    }
    memo.insert(m, acc.clone());
    acc
}

/// Reduction data for one conductor. Shared through `Arc` by all its elements.
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    modulus: Vec<BigInt>,
    /// `powers[k]` is `x^k mod Φ_M` for `0 <= k < M`.
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

impl CyclotomicField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(conductor);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and fold the overflow term back through Φ_M
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        Arc::new(CyclotomicField {
            conductor,
            degree,
            modulus,
            powers,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree of the field over `Q`, i.e. `φ(M)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CycloNum {
        CycloNum {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloNum {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> CycloNum {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(self: &Arc<Self>, v: BigInt) -> CycloNum {
        let mut z = self.zero();
        z.num[0] = v;
        z
    }

    pub fn from_ratio(self: &Arc<Self>, p: i64, q: i64) -> CycloNum {
        assert!(q != 0, "zero denominator");
        let mut z = self.zero();
        z.num[0] = BigInt::from(p);
        z.den = BigInt::from(q);
        z.normalize();
        z
    }

    /// `ζ_M^k` for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycloNum {
        let m = self.conductor as i64;
        let e = k.rem_euclid(m) as usize;
        CycloNum {
            field: Arc::clone(self),
            num: self.powers[e].clone(),
            den: BigInt::one(),
        }
    }

    /// Builds `Σ c_k ζ^k` from `(k, c_k)` pairs, `k` taken modulo `M`.
    pub fn from_exponent_sum(self: &Arc<Self>, terms: &[(i64, i64)]) -> CycloNum {
        let m = self.conductor as i64;
        let mut acc = vec![BigInt::zero(); self.conductor as usize];
        for &(k, c) in terms {
            acc[k.rem_euclid(m) as usize] += c;
        }
        self.reduce_exponents(acc, BigInt::one())
    }

    /// Builds an element from power-basis numerators and a common denominator.
    pub fn from_coeffs(self: &Arc<Self>, num: Vec<BigInt>, den: BigInt) -> Result<CycloNum> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.len() != self.degree {
            return Err(Error::InvalidInput(alloc::format!(
                "expected {} coefficients for conductor {}, got {}",
                self.degree,
                self.conductor,
                num.len()
            )));
        }
        let mut z = CycloNum {
            field: Arc::clone(self),
            num,
            den,
        };
        z.normalize();
        Ok(z)
    }

    /// Builds an element from rational coefficients over the power basis.
    pub fn from_rationals(self: &Arc<Self>, coeffs: &[BigRational]) -> Result<CycloNum> {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        self.from_coeffs(num, den)
    }

    /// `cos(2πk/n)`; requires `n | M`.
    pub fn cos_2pi(self: &Arc<Self>, k: i64, n: u32) -> CycloNum {
        assert!(self.conductor.is_multiple_of(n), "conductor must be a multiple of {n}");
        let s = (self.conductor / n) as i64;
        let half = self.from_ratio(1, 2);
        &(&self.zeta_pow(k * s) + &self.zeta_pow(-k * s)) * &half
    }

    /// `sin(2πk/n)`; requires `4 | M` and `n | M`.
    pub fn sin_2pi(self: &Arc<Self>, k: i64, n: u32) -> CycloNum {
        assert!(self.conductor.is_multiple_of(n) && self.conductor.is_multiple_of(4));
        let s = (self.conductor / n) as i64;
        let i = self.zeta_pow(self.conductor as i64 / 4);
        // (ζ^a - ζ^-a) / (2i) = -i (ζ^a - ζ^-a) / 2
        let diff = &self.zeta_pow(k * s) - &self.zeta_pow(-k * s);
        let minus_half_i = &i * &self.from_ratio(-1, 2);
        &diff * &minus_half_i
    }

    /// `√5` inside the field; requires `5 | M`.
    pub fn sqrt5(self: &Arc<Self>) -> CycloNum {
        assert!(self.conductor.is_multiple_of(5));
        // ζ5 + ζ5^-1 = (√5 - 1)/2
        let s = (self.conductor / 5) as i64;
        let t = &self.zeta_pow(s) + &self.zeta_pow(-s);
        &(&t * &self.from_int(2)) + &self.one()
    }

    fn reduce_exponents(self: &Arc<Self>, acc: Vec<BigInt>, den: BigInt) -> CycloNum {
        let mut num = vec![BigInt::zero(); self.degree];
        for (k, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.degree {
                num[k] += c;
            } else {
                for (slot, p) in num.iter_mut().zip(&self.powers[k]) {
                    if !p.is_zero() {
                        *slot += &c * p;
                    }
                }
            }
        }
        let mut z = CycloNum {
            field: Arc::clone(self),
            num,
            den,
        };
        z.normalize();
        z
    }
}

/// An element of `Q(ζ_M)` in canonical reduced form.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Binary operations accepted by [`CycloNum::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CycloNum {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Power-basis coefficients as reduced fractions `(p, q)`.
    pub fn coeff_ratios(&self) -> Vec<(BigInt, BigInt)> {
        self.num
            .iter()
            .map(|n| {
                let g = n.gcd(&self.den);
                if g.is_zero() {
                    (BigInt::zero(), BigInt::one())
                } else {
                    (n / &g, &self.den / &g)
                }
            })
            .collect()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -core::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn same_field(&self, other: &CycloNum) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor
    }

    fn check_field(&self, other: &CycloNum) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor(), other.conductor()))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns `(p, q)` when the element is rational.
    pub fn to_rational(&self) -> Option<(BigInt, BigInt)> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Exact integer value, if the element is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self.to_rational() {
            Some((p, q)) if q.is_one() => Some(p),
            _ => None,
        }
    }

    fn add_impl(&self, other: &CycloNum, sign: i8) -> CycloNum {
        assert!(
            self.same_field(other),
            "conductor mismatch: {} vs {}",
            self.conductor(),
            other.conductor()
        );
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if sign > 0 { a * &fa + b * &fb } else { a * &fa - b * &fb })
            .collect();
        let mut z = CycloNum {
            field: Arc::clone(&self.field),
            num,
            den: l,
        };
        z.normalize();
        z
    }

    fn mul_impl(&self, other: &CycloNum) -> CycloNum {
        assert!(
            self.same_field(other),
            "conductor mismatch: {} vs {}",
            self.conductor(),
            other.conductor()
        );
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let m = self.field.conductor as usize;
        let mut acc = vec![BigInt::zero(); m];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % m] += a * b;
            }
        }
        self.field.reduce_exponents(acc, &self.den * &other.den)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to `M`).
    pub fn galois(&self, k: i64) -> CycloNum {
        let m = self.field.conductor as i64;
        let mut acc = vec![BigInt::zero(); m as usize];
        for (i, a) in self.num.iter().enumerate() {
            if !a.is_zero() {
                acc[(i as i64 * k).rem_euclid(m) as usize] += a;
            }
        }
        self.field.reduce_exponents(acc, self.den.clone())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycloNum {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Field norm down to `Q`, returned as `(p, q)`.
    pub fn norm(&self) -> (BigInt, BigInt) {
        let mut prod = self.clone();
        for k in self.galois_exponents().into_iter().skip(1) {
            prod = &prod * &self.galois(k);
        }
        prod.to_rational().expect("norm of a cyclotomic number is rational")
    }

    fn galois_exponents(&self) -> Vec<i64> {
        let m = self.field.conductor as i64;
        (1..=m.max(1)).filter(|k| k.gcd(&m) == 1).collect()
    }

    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut conj_prod = self.field.one();
        for k in self.galois_exponents().into_iter().skip(1) {
            conj_prod = &conj_prod * &self.galois(k);
        }
        let norm = (&conj_prod * self)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        let mut z = conj_prod;
        for c in &mut z.num {
            *c *= &norm.1;
        }
        z.den *= &norm.0;
        z.normalize();
        Ok(z)
    }

    pub fn checked_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_field(other)?;
        Ok(self * &other.inv()?)
    }

    /// Conductor-checked binary arithmetic.
    pub fn arith(&self, other: &CycloNum, op: CycloOp) -> Result<CycloNum> {
        self.check_field(other)?;
        Ok(match op {
            CycloOp::Add => self + other,
            CycloOp::Sub => self - other,
            CycloOp::Mul => self * other,
            CycloOp::Div => return self.checked_div(other),
        })
    }

    pub fn pow(&self, e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value at `ζ_M = exp(2πi/M)`.
    pub fn eval(&self) -> Complex64 {
        let m = self.field.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * core::f64::consts::PI * k as f64 / m;
            re += cf * libm::cos(ang);
            im += cf * libm::sin(ang);
        }
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        Complex64::new(re / d, im / d)
    }

    /// Sign of a real element (`None` if the element is not real).
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        if !self.is_real() {
            return None;
        }
        if let Some((p, _)) = self.to_rational() {
            return Some(p.cmp(&BigInt::zero()));
        }
        let v = self.eval().re;
        Some(if v > 0.0 { Ordering::Greater } else { Ordering::Less })
    }

    /// Embeds into `Q(ζ_{M'})` for a multiple `M'` of the current conductor.
    pub fn promote(&self, target: &Arc<CyclotomicField>) -> Result<CycloNum> {
        let m = self.field.conductor;
        let mt = target.conductor;
        if !mt.is_multiple_of(m) {
            return Err(Error::ConductorMismatch(m, mt));
        }
        if mt == m {
            return Ok(CycloNum {
                field: Arc::clone(target),
                num: self.num.clone(),
                den: self.den.clone(),
            });
        }
        let s = (mt / m) as usize;
        let mut acc = vec![BigInt::zero(); mt as usize];
        for (i, a) in self.num.iter().enumerate() {
            if !a.is_zero() {
                acc[(i * s) % mt as usize] += a;
            }
        }
        Ok(target.reduce_exponents(acc, self.den.clone()))
    }

    /// Inverse of [`promote`](Self::promote): rewrites the element over the
    /// subfield `Q(ζ_M)` when it lies there.
    pub fn demote(&self, target: &Arc<CyclotomicField>) -> Option<CycloNum> {
        let m = target.conductor;
        let big = self.field.conductor;
        if !big.is_multiple_of(m) {
            return None;
        }
        // columns: images of the subfield basis ζ_m^i
        let d = target.degree;
        let rows = self.field.degree;
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; rows];
        for i in 0..d {
            let img = target.zeta_pow(i as i64).promote(&self.field).ok()?;
            for r in 0..rows {
                mat[r][i] = BigRational::new(img.num[r].clone(), img.den.clone());
            }
        }
        for r in 0..rows {
            mat[r][d] = BigRational::new(self.num[r].clone(), self.den.clone());
        }
        let sol = solve_rational(mat, d)?;
        let z = target.from_rationals(&sol).ok()?;
        if z.promote(&self.field).ok()? == *self {
            Some(z)
        } else {
            None
        }
    }

    /// Structural order on representatives (deterministic, not numeric).
    pub fn cmp_repr(&self, other: &CycloNum) -> Ordering {
        self.conductor().cmp(&other.conductor()).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                // compare a/da against b/db
                let l = a * &other.den;
                let r = b * &self.den;
                match l.cmp(&r) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

/// Solves an augmented system with `unknowns` columns; `None` if inconsistent.
fn solve_rational(mut mat: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = mat.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for v in mat[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..=unknowns {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if mat[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = mat[i][unknowns].clone();
    }
    Some(sol)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.same_field(other) {
            return self.den == other.den && self.num == other.num;
        }
        let l = CyclotomicField::new(lcm(self.conductor(), other.conductor()));
        match (self.promote(&l), other.promote(&l)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, (p, q)) in self.coeff_ratios().into_iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if q.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}/{q}")?;
            }
            if k > 0 {
                write!(f, "*z{}^{}", self.conductor(), k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                f(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn totient_and_polynomials() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(140), 48);
        let p12: Vec<i64> = cyclotomic_polynomial(12).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(p12, [1, 0, -1, 0, 1]);
        let p6: Vec<i64> = cyclotomic_polynomial(6).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(p6, [1, -1, 1]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = CyclotomicField::new(4);
        let i = f.zeta_pow(1);
        assert_eq!(&i * &i, f.from_int(-1));
    }

    #[test]
    fn nontrivial_fifth_roots_sum_to_minus_one() {
        let f = CyclotomicField::new(5);
        let s = (1..5).fold(f.zero(), |acc, k| &acc + &f.zeta_pow(k));
        assert_eq!(s, f.from_int(-1));
    }

    #[test]
    fn two_cos_pi_over_six_squares_to_three() {
        let f = CyclotomicField::new(12);
        let c = &f.zeta_pow(1) + &f.zeta_pow(-1);
        assert!(close(c.eval(), Complex64::new(libm::sqrt(3.0), 0.0)));
        assert_eq!(&c * &c, f.from_int(3));
    }

    #[test]
    fn eval_examples() {
        let f = CyclotomicField::new(5);
        assert!(close(f.from_int(3).eval(), Complex64::new(3.0, 0.0)));
        let g = CyclotomicField::new(4);
        assert!(close(g.zeta_pow(1).eval(), Complex64::new(0.0, 1.0)));
        let c = &f.zeta_pow(1) + &f.zeta_pow(-1);
        let oracle = 2.0 * libm::cos(2.0 * core::f64::consts::PI / 5.0);
        assert!((c.eval().re - oracle).abs() < 1e-12);
        assert!((c.eval().re - 0.618_033_988_749_894_8).abs() < 1e-12);
    }

    #[test]
    fn division_and_zero_division() {
        let f = CyclotomicField::new(15);
        let a = &f.zeta_pow(2) + &f.from_ratio(3, 7);
        let q = a.checked_div(&a).unwrap();
        assert!(q.is_one());
        assert_eq!(a.checked_div(&f.zero()), Err(Error::DivisionByZero));
        let b = &f.zeta_pow(4) - &f.from_int(2);
        let back = &a.checked_div(&b).unwrap() * &b;
        assert_eq!(back, a);
    }

    #[test]
    fn mismatched_conductors_are_rejected() {
        let a = CyclotomicField::new(3).one();
        let b = CyclotomicField::new(5).one();
        assert_eq!(a.arith(&b, CycloOp::Add), Err(Error::ConductorMismatch(3, 5)));
        // cross-conductor equality is by value
        assert_eq!(a, b);
    }

    #[test]
    fn conj_and_real_sign() {
        let f = CyclotomicField::new(20);
        let z = f.zeta_pow(3);
        assert!(close(z.conj().eval(), z.eval().conj()));
        let s5 = f.sqrt5();
        assert!((s5.eval().re - libm::sqrt(5.0)).abs() < 1e-12);
        assert_eq!((&s5 * &s5), f.from_int(5));
        assert_eq!(s5.real_sign(), Some(Ordering::Greater));
        assert_eq!((-&s5).real_sign(), Some(Ordering::Less));
        assert_eq!(z.real_sign(), None);
    }

    #[test]
    fn sin_cos_identities() {
        let f = CyclotomicField::new(28);
        let c = f.cos_2pi(1, 7);
        let s = f.sin_2pi(1, 7);
        assert_eq!(&(&c * &c) + &(&s * &s), f.one());
        let ang = 2.0 * core::f64::consts::PI / 7.0;
        assert!((s.eval().re - libm::sin(ang)).abs() < 1e-12);
        assert!(s.is_real());
    }

    #[test]
    fn promote_then_demote_is_identity() {
        let small = CyclotomicField::new(6);
        let big = CyclotomicField::new(60);
        let a = &small.zeta_pow(1) + &small.from_ratio(-5, 3);
        let up = a.promote(&big).unwrap();
        assert!(close(up.eval(), a.eval()));
        let down = up.demote(&small).unwrap();
        assert_eq!(down, a);
        // ζ_60 itself is not in Q(ζ_6)
        assert!(big.zeta_pow(1).demote(&small).is_none());
    }
}
