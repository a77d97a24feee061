//! Linear recurring sequences: generation, Berlekamp–Massey, the coordinate
//! view of an `F_{q^m}` sequence as an `m`-fold multisequence over `F_q`,
//! coprime decomposition, and a differential harness that checks the
//! algebraic `F_q` minimal polynomial against the measured one.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, Tower};
use crate::polynomials::{gcd, lcm, xgcd, Poly};
use crate::subfield_minpoly::{linear_complexity_over_base, min_poly_over_base};
use crate::text;

/// A finite prefix `s_0, ..., s_{N-1}` of a sequence over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    field: Field,
    terms: Vec<Elem>,
}

impl Sequence {
    pub fn new(field: Field, terms: Vec<Elem>) -> Result<Sequence> {
        if let Some(bad) = terms.iter().find(|t| !field.contains(**t)) {
            return Err(Error::BadInput(format!("element index {} out of range", bad.0)));
        }
        Ok(Sequence { field, terms })
    }

    pub fn zeros(field: &Field, len: usize) -> Sequence {
        Sequence { field: field.clone(), terms: vec![Elem::ZERO; len] }
    }

    /// Parse a comma-separated list of element literals.
    pub fn parse(field: &Field, s: &str) -> Result<Sequence> {
        Sequence::new(field.clone(), text::parse_elems(field, s)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[Elem] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// Termwise sum of two prefixes of equal length.
    pub fn checked_add(&self, other: &Sequence) -> Result<Sequence> {
        if self.field != other.field {
            return Err(Error::LevelMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::BadInput("sequences differ in length".into()));
        }
        let f = &self.field;
        let terms = self.terms.iter().zip(&other.terms).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Sequence { field: f.clone(), terms })
    }

    /// Whether `f` annihilates the prefix, i.e. every full window satisfies
    /// the recurrence it defines.
    pub fn satisfies(&self, f: &Poly) -> Result<bool> {
        if f.field() != &self.field {
            return Err(Error::LevelMismatch);
        }
        let Some(n) = f.degree() else {
            return Ok(false);
        };
        Ok((0..self.len().saturating_sub(n)).all(|k| apply_at(f, &self.terms, k).is_zero()))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_elems(&self.field, &self.terms))
    }
}

/// `Σ_i c_i s_{k+i}`: the polynomial `c` applied, as a shift operator, at index `k`.
fn apply_at(c: &Poly, terms: &[Elem], k: usize) -> Elem {
    let f = c.field();
    c.coeffs().iter().enumerate().fold(Elem::ZERO, |acc, (i, &ci)| f.add(acc, f.mul(ci, terms[k + i])))
}

/// `m` parallel base-field sequences of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSequence {
    components: Vec<Sequence>,
}

impl MultiSequence {
    pub fn new(components: Vec<Sequence>) -> Result<MultiSequence> {
        let Some(first) = components.first() else {
            return Err(Error::BadInput("a multisequence needs at least one component".into()));
        };
        if components.iter().any(|c| c.len() != first.len()) {
            return Err(Error::BadInput("components differ in length".into()));
        }
        if components.iter().any(|c| c.field != first.field) {
            return Err(Error::LevelMismatch);
        }
        Ok(MultiSequence { components })
    }

    pub fn components(&self) -> &[Sequence] {
        &self.components
    }

    pub fn field(&self) -> &Field {
        self.components[0].field()
    }
}

/// Run the recurrence of the monic `char_poly` from `initial` for `len` terms.
pub fn lfsr_generate(char_poly: &Poly, initial: &[Elem], len: usize) -> Result<Sequence> {
    if !char_poly.is_monic() {
        return Err(Error::NotMonic(char_poly.to_string()));
    }
    let field = char_poly.field();
    let n = char_poly.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::BadInput("characteristic polynomial must have degree at least 1".into()));
    }
    if initial.len() != n {
        return Err(Error::BadStateLength { expected: n, got: initial.len() });
    }
    if len < n {
        return Err(Error::BadInput(format!("length {len} is shorter than the state {n}")));
    }
    let mut terms = Sequence::new(field.clone(), initial.to_vec())?.terms;
    let lower = &char_poly.coeffs()[..n];
    for k in 0..len - n {
        let acc = lower
            .iter()
            .zip(&terms[k..k + n])
            .fold(Elem::ZERO, |acc, (&a, &s)| field.add(acc, field.mul(a, s)));
        terms.push(field.neg(acc));
    }
    Ok(Sequence { field: field.clone(), terms })
}

/// Shortest monic characteristic polynomial of the prefix. The all-zero
/// prefix yields `1`.
pub fn berlekamp_massey(seq: &Sequence) -> Poly {
    let f = &seq.field;
    let s = &seq.terms;
    let mut c = vec![Elem::ONE];
    let mut b = vec![Elem::ONE];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = Elem::ONE;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in 1..=len {
            d = f.add(d, f.mul(c.get(i).copied().unwrap_or(Elem::ZERO), s[n - i]));
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = f.div(d, last).expect("last discrepancy is nonzero");
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Elem::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    // reciprocal of the connection polynomial, padded to degree `len`
    let coeffs = (0..=len).map(|i| c.get(len - i).copied().unwrap_or(Elem::ZERO)).collect();
    Poly::new(f.clone(), coeffs)
}

/// Coordinates of each term with respect to `1, a, ..., a^{m-1}`.
pub fn decompose_to_base(tower: &Tower, seq: &Sequence) -> Result<MultiSequence> {
    if seq.field() != tower.ext() {
        return Err(Error::LevelMismatch);
    }
    let m = tower.m();
    if m == 1 {
        let terms = seq.terms.clone();
        return MultiSequence::new(vec![Sequence { field: tower.base().clone(), terms }]);
    }
    let mut comps = vec![Vec::with_capacity(seq.len()); m];
    for &t in &seq.terms {
        for (j, c) in tower.ext().coeffs(t).into_iter().enumerate() {
            comps[j].push(c);
        }
    }
    MultiSequence::new(
        comps.into_iter().map(|terms| Sequence { field: tower.base().clone(), terms }).collect(),
    )
}

/// Inverse of [`decompose_to_base`].
pub fn recombine(tower: &Tower, ms: &MultiSequence) -> Result<Sequence> {
    if ms.field() != tower.base() || ms.components().len() != tower.m() {
        return Err(Error::LevelMismatch);
    }
    let len = ms.components()[0].len();
    let terms = (0..len)
        .map(|i| {
            if tower.m() == 1 {
                return ms.components()[0].terms[i];
            }
            let coeffs: Vec<Elem> = ms.components().iter().map(|c| c.terms[i]).collect();
            tower.ext().from_coeffs(&coeffs)
        })
        .collect();
    Ok(Sequence { field: tower.ext().clone(), terms })
}

/// Least-degree monic polynomial annihilating every component: the lcm of
/// the components' Berlekamp–Massey polynomials.
pub fn joint_min_poly(ms: &MultiSequence) -> Poly {
    ms.components()
        .iter()
        .map(berlekamp_massey)
        .fold(Poly::one(ms.field()), |acc, g| lcm(&acc, &g).expect("nonzero operands"))
}

/// Split `seq` into components annihilated by the pairwise coprime `parts`,
/// whose product must annihilate `seq`. Component `i` is `c_i(E) seq` where
/// `E` is the shift and `c_i ≡ 1 mod parts[i]`, `c_i ≡ 0 mod parts[j]`.
pub fn decompose_by_coprime_factors(seq: &Sequence, parts: &[Poly]) -> Result<Vec<Sequence>> {
    let field = seq.field();
    for p in parts {
        if p.field() != field {
            return Err(Error::LevelMismatch);
        }
        if !p.is_monic() {
            return Err(Error::NotMonic(p.to_string()));
        }
    }
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !gcd(a, b)?.is_one() {
                return Err(Error::NotCoprime);
            }
        }
    }
    let product = parts.iter().fold(Poly::one(field), |acc, p| &acc * p);
    let total = product.degree().unwrap_or(0);
    let widest = parts.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let needed = total + widest;
    if seq.len() < needed {
        return Err(Error::PrefixTooShort { needed, got: seq.len() });
    }
    if !seq.satisfies(&product)? {
        return Err(Error::NotCharacteristic(product.to_string()));
    }
    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        let n = part.degree().unwrap_or(0);
        if n == 0 {
            out.push(Sequence::zeros(field, seq.len()));
            continue;
        }
        let cofactor = product.divrem(part)?.0;
        let (_, inv, _) = xgcd(&cofactor.rem(part)?, part)?;
        let idempotent = (&cofactor * &inv).rem(&product)?;
        let initial: Vec<Elem> = (0..n).map(|k| apply_at(&idempotent, &seq.terms, k)).collect();
        out.push(lfsr_generate(part, &initial, seq.len())?);
    }
    let sum = out.iter().try_fold(Sequence::zeros(field, seq.len()), |acc, s| acc.checked_add(s))?;
    if &sum != seq {
        return Err(Error::NotCharacteristic(product.to_string()));
    }
    Ok(out)
}

/// One trial where the algebraic and measured `F_q` minimal polynomials differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub trial: usize,
    pub measured: Poly,
    pub theory: Poly,
    pub oracle: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    /// Prefix length used per trial.
    pub terms: usize,
    pub mismatches: Vec<Mismatch>,
    /// Trials where the measured `F_{q^m}` minimal polynomial equals `h`.
    pub exact_recoveries: usize,
    /// Trials where the measured polynomial does not divide the lifted `H`.
    pub divisibility_failures: usize,
    /// Trials where `deg H` differs from the class-table sum.
    pub degree_failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.divisibility_failures == 0 && self.degree_failures == 0
    }

    pub fn recovery_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.exact_recoveries as f64 / self.trials as f64
        }
    }
}

/// Generate sequences with characteristic polynomial `h` from random initial
/// states and compare the `F_q` minimal polynomial predicted from the
/// measured `F_{q^m}` minimal polynomial against the joint minimal
/// polynomial of the coordinate multisequence.
pub fn verify_subfield_minpoly(tower: &Tower, h: &Poly, trials: usize, seed: u64) -> Result<VerifyReport> {
    if h.field() != tower.ext() {
        return Err(Error::LevelMismatch);
    }
    if !h.is_monic() {
        return Err(Error::NotMonic(h.to_string()));
    }
    let n = h.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::BadInput("h must have degree at least 1".into()));
    }
    let terms = 2 * tower.m() * n + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport {
        trials,
        terms,
        mismatches: Vec::new(),
        exact_recoveries: 0,
        divisibility_failures: 0,
        degree_failures: 0,
    };
    for trial in 0..trials {
        let initial: Vec<Elem> = (0..n).map(|_| tower.ext().random(&mut rng)).collect();
        let seq = lfsr_generate(h, &initial, terms)?;
        let measured = berlekamp_massey(&seq);
        let theory = min_poly_over_base(tower, &measured)?.h_base;
        let oracle = joint_min_poly(&decompose_to_base(tower, &seq)?);
        if &measured == h {
            report.exact_recoveries += 1;
        }
        if !measured.divides(&tower.embed_poly(&theory)?)? {
            report.divisibility_failures += 1;
        }
        if theory.degree().unwrap_or(0) != linear_complexity_over_base(tower, &measured)? {
            report.degree_failures += 1;
        }
        if theory != oracle {
            report.mismatches.push(Mismatch { trial, measured, theory, oracle });
        }
    }
    Ok(report)
}
