//! Finite fields and the three-level tower `F_p ⊆ F_q ⊆ F_{q^m}`.
//!
//! Every field level is either a prime field or an explicit extension of the
//! level below it by a monic irreducible modulus. Elements are plain indices:
//! the coefficient vector of an element over its immediate subfield, read as
//! little-endian digits in base `|subfield|`. Unfolding recursively, this is the
//! same as little-endian base-`p` digits of the flattened coefficient vector, so
//! addition is digitwise and a subfield element keeps its index when embedded.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::factorization::is_irreducible;
use crate::polynomials::Poly;
use crate::text;

/// Largest field order the crate will construct.
pub const MAX_ORDER: u64 = 1 << 31;
/// Largest field order that may be enumerated element by element.
pub const MAX_ENUMERABLE: u64 = 1 << 20;
const TABLE_LIMIT: u64 = 1 << 16;

/// A field element, stored as its canonical integer encoding.
///
/// An `Elem` carries no reference to its field; it is interpreted by the
/// [`Field`] that operates on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    p: u32,
    order: u32,
    degree: usize,
    abs_degree: usize,
    sub: Option<Field>,
    modulus: Vec<Elem>,
    symbol: Option<char>,
    tables: Option<LogTables>,
}

/// One level of a field tower. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        let (a, b) = (&self.inner, &other.inner);
        a.p == b.p && a.order == b.order && a.symbol == b.symbol && a.modulus == b.modulus && a.sub == b.sub
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.sub {
            None => write!(f, "GF({})", self.inner.p),
            Some(sub) => write!(
                f,
                "GF({}^{})[{}]/({})",
                self.inner.p,
                self.inner.abs_degree,
                self.inner.symbol.unwrap_or('?'),
                self.modulus_poly(sub).to_string_in(&self.inner.symbol.unwrap_or('?').to_string())
            ),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_ORDER {
            return Err(Error::SizeOverflow(format!("prime {p} exceeds {MAX_ORDER}")));
        }
        let mut inner = FieldInner {
            p: p as u32,
            order: p as u32,
            degree: 1,
            abs_degree: 1,
            sub: None,
            modulus: Vec::new(),
            symbol: None,
            tables: None,
        };
        inner.tables = build_tables(&inner);
        Ok(Field { inner: Arc::new(inner) })
    }

    /// The extension `sub[symbol]/(modulus)` where `modulus` is a monic
    /// irreducible polynomial over `sub`.
    pub fn extension(modulus: &Poly, symbol: char) -> Result<Field> {
        let sub = modulus.field().clone();
        let degree = match modulus.degree() {
            None | Some(0) => return Err(Error::BadInput("modulus must have degree at least 1".into())),
            Some(d) => d,
        };
        let shown = modulus.to_string_in(&symbol.to_string());
        if !modulus.is_monic() {
            return Err(Error::NotMonic(shown));
        }
        let order = (sub.order() as u128).checked_pow(degree as u32);
        let order = match order {
            Some(o) if o < MAX_ORDER as u128 => o as u32,
            _ => return Err(Error::SizeOverflow(format!("{}^{degree} exceeds {MAX_ORDER}", sub.order()))),
        };
        if !is_irreducible(modulus)? {
            return Err(Error::NotIrreducible(shown));
        }
        let mut inner = FieldInner {
            p: sub.characteristic(),
            order,
            degree,
            abs_degree: degree * sub.absolute_degree(),
            modulus: modulus.coeffs().to_vec(),
            sub: Some(sub),
            symbol: Some(symbol),
            tables: None,
        };
        inner.tables = build_tables(&inner);
        Ok(Field { inner: Arc::new(inner) })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Degree over the immediate subfield (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> usize {
        self.inner.abs_degree
    }

    pub fn subfield(&self) -> Option<&Field> {
        self.inner.sub.as_ref()
    }

    /// Order of the immediate subfield (the field itself for a prime field).
    pub fn sub_order(&self) -> u32 {
        self.inner.sub.as_ref().map_or(self.inner.p, |s| s.order())
    }

    pub fn symbol(&self) -> Option<char> {
        self.inner.symbol
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.sub.is_none()
    }

    /// The defining modulus over the immediate subfield, if any.
    pub fn modulus(&self) -> Option<Poly> {
        self.inner.sub.as_ref().map(|s| self.modulus_poly(s))
    }

    fn modulus_poly(&self, sub: &Field) -> Poly {
        Poly::new(sub.clone(), self.inner.modulus.clone())
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The adjoined root of the modulus, or `None` for a prime field.
    pub fn generator(&self) -> Option<Elem> {
        let sub = self.inner.sub.as_ref()?;
        if self.inner.degree == 1 {
            Some(sub.neg(self.inner.modulus[0]))
        } else {
            Some(Elem(sub.order()))
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.inner.order
    }

    /// Element with the given canonical index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.inner.order as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::BadInput(format!(
                "index {index} out of range for a field of order {}",
                self.inner.order
            )))
        }
    }

    /// Image of an integer under `Z -> F_p -> self`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = p as u64;
        if self.inner.abs_degree == 1 {
            return Elem(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (mut x, mut y, mut r, mut w) = (a.0 as u64, b.0 as u64, 0u64, 1u64);
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w *= p;
        }
        Elem(r as u32)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let p = p as u64;
        let (mut x, mut r, mut w) = (a.0 as u64, 0u64, 1u64);
        while x > 0 {
            r += ((p - x % p) % p) * w;
            x /= p;
            w *= p;
        }
        Elem(r as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        if let Some(t) = &self.inner.tables {
            return Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let Some(sub) = &self.inner.sub else {
            let p = self.inner.p as u64;
            return Elem(((a.0 as u64 * b.0 as u64) % p) as u32);
        };
        let n = self.inner.degree;
        let ac = self.coeffs(a);
        let bc = self.coeffs(b);
        let mut prod = vec![Elem::ZERO; 2 * n - 1];
        for (i, &x) in ac.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in bc.iter().enumerate() {
                prod[i + j] = sub.add(prod[i + j], sub.mul(x, y));
            }
        }
        let modulus = &self.inner.modulus;
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                prod[k - n + j] = sub.sub(prod[k - n + j], sub.mul(c, modulus[j]));
            }
        }
        self.from_coeffs(&prod[..n])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        if let Some(t) = &self.inner.tables {
            let n = (self.inner.order - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
            return Elem(t.exp[l as usize]);
        }
        let mut base = a;
        let mut e = e;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.inner.tables {
            let n = self.inner.order - 1;
            return Ok(Elem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]));
        }
        Ok(self.pow(a, self.inner.order as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The relative Frobenius `x -> x^{|subfield|}`; the identity on a prime field.
    pub fn frobenius(&self, a: Elem) -> Elem {
        if self.is_prime_field() {
            return a;
        }
        self.pow(a, self.sub_order() as u64)
    }

    /// Unique `p`-th root, `a^{order/p}`.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.inner.order / self.inner.p) as u64)
    }

    /// Coefficient vector over the immediate subfield, constant term first.
    pub fn coeffs(&self, a: Elem) -> Vec<Elem> {
        let so = self.sub_order();
        let mut x = a.0;
        (0..self.inner.degree)
            .map(|_| {
                let c = x % so;
                x /= so;
                Elem(c)
            })
            .collect()
    }

    /// Inverse of [`Field::coeffs`]; `coeffs` may be shorter than the degree.
    pub fn from_coeffs(&self, coeffs: &[Elem]) -> Elem {
        let so = self.sub_order();
        debug_assert!(coeffs.len() <= self.inner.degree);
        Elem(coeffs.iter().rev().fold(0u32, |acc, c| acc * so + c.0))
    }

    /// All elements in ascending index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Elem>> {
        if self.inner.order as u64 > MAX_ENUMERABLE {
            return Err(Error::SizeOverflow(format!(
                "cannot enumerate a field of order {}",
                self.inner.order
            )));
        }
        Ok((0..self.inner.order).map(Elem))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..self.inner.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(1..self.inner.order))
    }

    /// Canonical text form: an integer for a prime field, otherwise a
    /// polynomial in the generator symbol with descending powers.
    pub fn format(&self, a: Elem) -> String {
        match (&self.inner.sub, self.inner.symbol) {
            (Some(sub), Some(sym)) => {
                let terms = self
                    .coeffs(a)
                    .into_iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, sub.format(c)));
                text::render_terms(terms, &sym.to_string())
            }
            _ => a.0.to_string(),
        }
    }
}

fn build_tables(inner: &FieldInner) -> Option<LogTables> {
    let order = inner.order as u64;
    if !(2..=TABLE_LIMIT).contains(&order) {
        return None;
    }
    let n = order - 1;
    let field = Field {
        inner: Arc::new(FieldInner {
            p: inner.p,
            order: inner.order,
            degree: inner.degree,
            abs_degree: inner.abs_degree,
            sub: inner.sub.clone(),
            modulus: inner.modulus.clone(),
            symbol: inner.symbol,
            tables: None,
        }),
    };
    let factors = prime_factors(n);
    let generator = (1..inner.order).map(Elem).find(|&g| {
        let pow = |e: u64| field.pow(g, e);
        pow(n) == Elem::ONE && factors.iter().all(|&r| pow(n / r) != Elem::ONE)
    })?;
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; order as usize];
    let mut x = Elem::ONE;
    for i in 0..n as usize {
        exp[i] = x.0;
        exp[i + n as usize] = x.0;
        log[x.0 as usize] = i as u32;
        x = field.mul_slow(x, generator);
    }
    Some(LogTables { exp, log })
}

/// Lexicographically least monic irreducible of `degree` over `field`.
///
/// Candidates are ordered by their coefficient vectors read constant term
/// first, each coefficient compared by its index.
pub fn default_modulus(field: &Field, degree: usize) -> Result<Poly> {
    if degree == 0 {
        return Err(Error::BadInput("degree must be at least 1".into()));
    }
    if (field.order() as u128).checked_pow(degree as u32).is_none_or(|o| o > u64::MAX as u128) {
        return Err(Error::SizeOverflow(format!("{} candidates of degree {degree}", field.order())));
    }
    let order = field.order();
    let mut digits = vec![0u32; degree];
    loop {
        let mut coeffs: Vec<Elem> = digits.iter().map(|&d| Elem(d)).collect();
        coeffs.push(Elem::ONE);
        let candidate = Poly::new(field.clone(), coeffs);
        if is_irreducible(&candidate)? {
            return Ok(candidate);
        }
        // odometer with the constant term as the most significant digit
        let mut i = degree;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// The tower `F_p ⊆ F_q ⊆ F_{q^m}`.
///
/// When `q = p` the base level is the prime field itself; when `m = 1` the
/// extension level is the base level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    prime: Field,
    base: Field,
    ext: Field,
}

/// Which level of a [`Tower`] a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Base,
    Ext,
}

impl Tower {
    /// Build a tower from explicit moduli given as coefficient indices,
    /// constant term first. The base modulus has coefficients in `F_p`,
    /// the extension modulus in `F_q`.
    pub fn new(p: u64, base_modulus: Option<&[u32]>, ext_modulus: Option<&[u32]>) -> Result<Tower> {
        let prime = Field::prime(p)?;
        let base = match base_modulus {
            None => prime.clone(),
            Some(c) => Field::extension(&poly_from_indices(&prime, c)?, 't')?,
        };
        let ext = match ext_modulus {
            None => base.clone(),
            Some(c) => Field::extension(&poly_from_indices(&base, c)?, 'a')?,
        };
        Ok(Tower { prime, base, ext })
    }

    /// Tower with `[F_q : F_p] = d` and `[F_{q^m} : F_q] = m`, using the
    /// default moduli.
    pub fn with_degrees(p: u64, d: usize, m: usize) -> Result<Tower> {
        if d == 0 || m == 0 {
            return Err(Error::BadInput("extension degrees must be at least 1".into()));
        }
        let prime = Field::prime(p)?;
        let base = if d == 1 { prime.clone() } else { Field::extension(&default_modulus(&prime, d)?, 't')? };
        let ext = if m == 1 { base.clone() } else { Field::extension(&default_modulus(&base, m)?, 'a')? };
        Ok(Tower { prime, base, ext })
    }

    /// Assemble a tower from already-built levels.
    pub fn from_fields(base: Field, ext: Field) -> Result<Tower> {
        let prime = Field::prime(base.characteristic() as u64)?;
        if ext != base && ext.subfield() != Some(&base) {
            return Err(Error::LevelMismatch);
        }
        if !base.is_prime_field() && base.subfield() != Some(&prime) {
            return Err(Error::LevelMismatch);
        }
        Ok(Tower { prime, base, ext })
    }

    pub fn p(&self) -> u64 {
        self.prime.order() as u64
    }

    /// `q = |F_q|`.
    pub fn q(&self) -> u64 {
        self.base.order() as u64
    }

    /// `[F_{q^m} : F_q]`.
    pub fn m(&self) -> usize {
        if self.ext == self.base {
            1
        } else {
            self.ext.degree()
        }
    }

    /// `[F_q : F_p]`.
    pub fn d(&self) -> usize {
        self.base.absolute_degree()
    }

    /// `q^m`.
    pub fn ext_order(&self) -> u64 {
        self.ext.order() as u64
    }

    pub fn prime_field(&self) -> &Field {
        &self.prime
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn field(&self, level: Level) -> &Field {
        match level {
            Level::Base => &self.base,
            Level::Ext => &self.ext,
        }
    }

    /// `x -> x^q` on the extension level.
    pub fn frobenius_q(&self, x: Elem) -> Elem {
        self.ext.pow(x, self.q())
    }

    /// Base-level element viewed in the extension level.
    pub fn embed(&self, x: Elem) -> Elem {
        debug_assert!(self.base.contains(x));
        x
    }

    /// Extension-level element that lies in the embedded base field.
    pub fn project(&self, x: Elem) -> Result<Elem> {
        if (x.0 as u64) < self.q() {
            Ok(x)
        } else {
            Err(Error::NotInSubfield(self.ext.format(x)))
        }
    }

    pub fn embed_poly(&self, f: &Poly) -> Result<Poly> {
        if f.field() != &self.base {
            return Err(Error::LevelMismatch);
        }
        Ok(Poly::new(self.ext.clone(), f.coeffs().to_vec()))
    }

    pub fn project_poly(&self, f: &Poly) -> Result<Poly> {
        if f.field() != &self.ext {
            return Err(Error::LevelMismatch);
        }
        let coeffs = f.coeffs().iter().map(|&c| self.project(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(self.base.clone(), coeffs))
    }
}

fn poly_from_indices(field: &Field, coeffs: &[u32]) -> Result<Poly> {
    let coeffs = coeffs.iter().map(|&c| field.elem(c as u64)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field.clone(), coeffs))
}
