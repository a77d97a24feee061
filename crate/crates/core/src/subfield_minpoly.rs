//! Minimal polynomial and linear complexity over `F_q` from the minimal
//! polynomial over `F_{q^m}`, the admissible `F_{q^m}` minimal polynomials
//! for a given `F_q` minimal polynomial, and the lower bound on `F_{q^m}`
//! linear complexity together with its tightness test.

use crate::error::{Error, Result};
use crate::factorization::factor_canonical;
use crate::fields::Tower;
use crate::frobenius::{factor_over_extension, orbit_product, partition_classes, SigmaOrbit};
use crate::polynomials::Poly;

/// Default cap on the number of exponent vectors `enumerate_admissible_h` may visit.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// One `σ`-class of the factors of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub representative: Poly,
    /// Orbit length of the representative.
    pub k: usize,
    pub degree: usize,
    /// Multiplicity in `h` of each orbit member, in orbit order.
    pub exponents: Vec<usize>,
    pub max_exponent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldResult {
    /// Minimal polynomial over `F_q`.
    pub h_base: Poly,
    /// Linear complexity over `F_q`, the degree of `h_base`.
    pub linear_complexity: usize,
    pub classes: Vec<ClassRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub bound: usize,
    /// Degree of the tested `h`, the linear complexity over `F_{q^m}`.
    pub degree: usize,
    pub tight: bool,
    /// When tight, the single orbit member chosen from each class with its exponent.
    pub witness: Vec<(Poly, usize)>,
}

fn require_level(f: &Poly, field: &crate::fields::Field) -> Result<()> {
    if f.field() != field {
        return Err(Error::LevelMismatch);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    Ok(())
}

fn class_table(tower: &Tower, h: &Poly) -> Result<Vec<(SigmaOrbit, Vec<usize>)>> {
    require_level(h, tower.ext())?;
    let fz = factor_canonical(h)?;
    Ok(partition_classes(tower, &fz)?.classes.into_iter().map(|c| (c.orbit, c.multiplicities)).collect())
}

/// `H = ∏_j R(P_j)^{e_j}` over the `σ`-classes of `h`'s factors, with `e_j`
/// the largest multiplicity in class `j`.
pub fn min_poly_over_base(tower: &Tower, h: &Poly) -> Result<SubfieldResult> {
    let classes = class_table(tower, h)?;
    let mut h_base = Poly::one(tower.base());
    let mut rows = Vec::with_capacity(classes.len());
    for (orbit, exponents) in classes {
        let e = exponents.iter().copied().max().unwrap_or(0);
        h_base = &h_base * &orbit_product(tower, &orbit).pow(e as u64);
        rows.push(ClassRow {
            representative: orbit.representative().clone(),
            k: orbit.k(),
            degree: orbit.representative().degree().unwrap_or(0),
            exponents,
            max_exponent: e,
        });
    }
    let linear_complexity = h_base.degree().unwrap_or(0);
    debug_assert_eq!(linear_complexity, rows.iter().map(|r| r.max_exponent * r.k * r.degree).sum::<usize>());
    Ok(SubfieldResult { h_base, linear_complexity, classes: rows })
}

/// `Σ_j e_j k(P_j) deg(P_j)`, without forming `H`.
pub fn linear_complexity_over_base(tower: &Tower, h: &Poly) -> Result<usize> {
    let classes = class_table(tower, h)?;
    let l = classes
        .iter()
        .map(|(orbit, exps)| {
            let e = exps.iter().copied().max().unwrap_or(0);
            e * orbit.k() * orbit.representative().degree().unwrap_or(0)
        })
        .sum();
    debug_assert_eq!(l, min_poly_over_base(tower, h)?.linear_complexity);
    Ok(l)
}

/// Orbits of the `F_{q^m}` factors of each irreducible `r_i | f`, paired
/// with the multiplicity `e_i` of `r_i` in `f`.
fn base_classes(tower: &Tower, f: &Poly) -> Result<Vec<(SigmaOrbit, usize)>> {
    require_level(f, tower.base())?;
    factor_canonical(f)?.factors().iter().map(|(r, e)| Ok((factor_over_extension(tower, r)?, *e))).collect()
}

/// Whether `h` can be the `F_{q^m}` minimal polynomial of a sequence whose
/// `F_q` minimal polynomial is `f`: every factor of `h` lies in the orbit
/// of some `r_i | f`, and within each orbit the largest exponent equals `e_i`.
pub fn admissible_h(tower: &Tower, f: &Poly, h: &Poly) -> Result<bool> {
    let classes = base_classes(tower, f)?;
    require_level(h, tower.ext())?;
    let structural = exponent_table(&classes, h)?.is_some();
    debug_assert_eq!(structural, min_poly_over_base(tower, h)?.h_base == *f);
    Ok(structural)
}

/// Exponent of every orbit member in `h`, or `None` if `h` violates the
/// admissible form.
fn exponent_table(classes: &[(SigmaOrbit, usize)], h: &Poly) -> Result<Option<Vec<Vec<usize>>>> {
    let mut table: Vec<Vec<usize>> = classes.iter().map(|(o, _)| vec![0; o.k()]).collect();
    for (p, e) in factor_canonical(h)?.factors() {
        let hit = classes.iter().enumerate().find_map(|(i, (o, _))| o.position(p).map(|j| (i, j)));
        match hit {
            Some((i, j)) if *e <= classes[i].1 => table[i][j] = *e,
            _ => return Ok(None),
        }
    }
    let ok = table.iter().zip(classes).all(|(exps, (_, e))| exps.iter().copied().max() == Some(*e));
    Ok(ok.then_some(table))
}

/// Number of admissible `h`: `∏_i ((e_i+1)^{u_i} - e_i^{u_i})`.
pub fn admissible_count(tower: &Tower, f: &Poly) -> Result<u128> {
    base_classes(tower, f)?
        .iter()
        .try_fold(1u128, |acc, (o, e)| {
            let e = *e as u128;
            let u = o.k() as u32;
            let term = (e + 1).checked_pow(u)? - e.checked_pow(u)?;
            acc.checked_mul(term)
        })
        .ok_or_else(|| Error::SizeOverflow("admissible count".into()))
}

/// Iterator over all admissible `h` for a fixed `f`.
///
/// Exponent vectors are visited in odometer order: classes in the canonical
/// order of the `r_i`, the last class varying fastest; within a class the
/// first orbit member's exponent is the most significant digit.
pub struct AdmissibleIter {
    per_class: Vec<Vec<Poly>>,
    cursor: Vec<usize>,
    done: bool,
    one: Poly,
}

impl Iterator for AdmissibleIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let h = self
            .cursor
            .iter()
            .zip(&self.per_class)
            .fold(self.one.clone(), |acc, (&i, polys)| &acc * &polys[i]);
        let mut i = self.cursor.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cursor[i] += 1;
            if self.cursor[i] < self.per_class[i].len() {
                break;
            }
            self.cursor[i] = 0;
        }
        Some(h)
    }
}

/// Enumerate admissible `h` with the default cap.
pub fn enumerate_admissible_h(tower: &Tower, f: &Poly) -> Result<AdmissibleIter> {
    enumerate_admissible_h_capped(tower, f, ENUMERATION_CAP)
}

/// Enumerate admissible `h`, refusing when `∏ (e_i+1)^{u_i}` exceeds `cap`.
pub fn enumerate_admissible_h_capped(tower: &Tower, f: &Poly, cap: u128) -> Result<AdmissibleIter> {
    let classes = base_classes(tower, f)?;
    let total = classes
        .iter()
        .try_fold(1u128, |acc, (o, e)| acc.checked_mul((*e as u128 + 1).checked_pow(o.k() as u32)?))
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::EnumerationTooLarge(total, cap));
    }
    let per_class = classes
        .iter()
        .map(|(orbit, e)| {
            let mut out = Vec::new();
            let mut digits = vec![0usize; orbit.k()];
            loop {
                if digits.iter().copied().max() == Some(*e) {
                    let p = orbit
                        .members()
                        .iter()
                        .zip(&digits)
                        .fold(Poly::one(orbit.representative().field()), |acc, (m, &d)| {
                            &acc * &m.pow(d as u64)
                        });
                    out.push(p);
                }
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] <= *e {
                        break;
                    }
                    digits[i] = 0;
                }
            }
        })
        .collect();
    Ok(AdmissibleIter { cursor: vec![0; classes.len()], per_class, done: false, one: Poly::one(tower.ext()) })
}

/// `Σ_i e_i n_i / gcd(n_i, m)` over the canonical factorization of `f`.
pub fn mo_lower_bound(f: &Poly, m: usize) -> Result<usize> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    if m == 0 {
        return Err(Error::BadInput("extension degree must be at least 1".into()));
    }
    Ok(factor_canonical(f)?
        .factors()
        .iter()
        .map(|(r, e)| {
            let n = r.degree().unwrap_or(0);
            e * n / gcd_usize(n, m)
        })
        .sum())
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Compare `deg h` with the lower bound for an admissible `h`; the bound is
/// attained exactly when each class contributes a single orbit member.
pub fn bound_tightness(tower: &Tower, f: &Poly, h: &Poly) -> Result<BoundReport> {
    let classes = base_classes(tower, f)?;
    require_level(h, tower.ext())?;
    let Some(table) = exponent_table(&classes, h)? else {
        return Err(Error::NotAdmissible(h.to_string()));
    };
    let bound = mo_lower_bound(f, tower.m())?;
    let degree = h.degree().unwrap_or(0);
    let tight = table.iter().all(|exps| exps.iter().filter(|&&e| e > 0).count() == 1);
    let witness = if tight {
        table
            .iter()
            .zip(&classes)
            .map(|(exps, (orbit, e))| {
                let j = exps.iter().position(|&x| x > 0).expect("one member present");
                (orbit.members()[j].clone(), *e)
            })
            .collect()
    } else {
        Vec::new()
    };
    debug_assert!(degree >= bound);
    debug_assert_eq!(tight, degree == bound);
    Ok(BoundReport { bound, degree, tight, witness })
}
