//! Dense univariate polynomials over one field level.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::text;

/// A polynomial with coefficients in `field`, constant term first.
///
/// The coefficient vector never has a zero leading entry; the zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// `c * x^k`.
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(field.clone(), coeffs)
    }

    /// Build from small integers mapped into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::LevelMismatch)
        }
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f.clone(), coeffs)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.sub(rem[k - dd + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor over the same field");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    pub fn make_monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int((i % f.characteristic() as usize) as i64), c))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
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

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        self.same_field(modulus)?;
        match modulus.degree() {
            None => return Err(Error::DivisionByZero),
            Some(0) => return Err(Error::BadInput("modulus must have degree at least 1".into())),
            _ => {}
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Apply a map to every coefficient, landing in `field`.
    pub fn map_coeffs(&self, field: &Field, g: impl Fn(Elem) -> Elem) -> Poly {
        Poly::new(field.clone(), self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Text form with `var` as the indeterminate.
    pub fn to_string_in(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, self.field.format(c)));
        text::render_terms(terms, var)
    }

    /// Uniformly random monic polynomial of the given degree.
    pub fn random_monic<R: Rng + ?Sized>(field: &Field, degree: usize, rng: &mut R) -> Poly {
        let mut coeffs: Vec<Elem> = (0..degree).map(|_| field.random(rng)).collect();
        coeffs.push(Elem::ONE);
        Poly::new(field.clone(), coeffs)
    }

    /// Random polynomial of degree below `bound`, possibly zero.
    pub fn random_below<R: Rng + ?Sized>(field: &Field, bound: usize, rng: &mut R) -> Poly {
        Poly::new(field.clone(), (0..bound).map(|_| field.random(rng)).collect())
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    x.make_monic()
}

/// Monic least common multiple.
pub fn lcm(a: &Poly, b: &Poly) -> Result<Poly> {
    let g = gcd(a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(a.field()));
    }
    (a * b).div_exact(&g).make_monic()
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let field = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = field.inv(r0.leading().expect("nonzero gcd"))?;
    Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical order: degree first, then coefficient indices compared from the
/// constant term upward.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        self.add_unchecked(&-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}
