//! Factorization into monic irreducibles: squarefree decomposition,
//! distinct-degree splitting and Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{prime_factors, Elem, Field};
use crate::polynomials::{gcd, Poly};

const EDF_ATTEMPTS: usize = 256;

/// `unit * prod factor^multiplicity`, factors monic irreducible, pairwise
/// distinct and sorted in canonical polynomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    field: Field,
    unit: Elem,
    factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Assemble from parts, sorting the factors canonically.
    pub fn from_parts(field: Field, unit: Elem, mut factors: Vec<(Poly, usize)>) -> Factorization {
        factors.sort();
        Factorization { field, unit, factors }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn factors(&self) -> &[(Poly, usize)] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<(Poly, usize)> {
        self.factors
    }

    /// Multiply the factorization back out.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(&self.field, self.unit), |acc, (p, e)| &acc * &p.pow(*e as u64))
    }
}

fn require_monic(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    Ok(())
}

/// `x^{Q} mod f` where `Q` is the order of the coefficient field.
fn frobenius_power(g: &Poly, f: &Poly) -> Poly {
    g.powmod(g.field().order() as u64, f).expect("modulus of positive degree")
}

/// Coefficientwise `p`-th root of a polynomial whose exponents are all
/// multiples of `p`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| field.pth_root(c)).collect();
    Poly::new(field.clone(), coeffs)
}

/// Split a monic polynomial into pairwise coprime squarefree parts, each
/// tagged with its multiplicity, ordered by multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    require_monic(f)?;
    if f.degree() == Some(0) {
        return Err(Error::BadInput("squarefree decomposition needs degree at least 1".into()));
    }
    let mut out = Vec::new();
    sqf_into(f, 1, &mut out);
    out.sort_by_key(|(_, e)| *e);
    Ok(out)
}

fn sqf_into(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        sqf_into(&pth_root(f), scale * p, out);
        return;
    }
    let mut c = gcd(f, &df).expect("f is nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(&w, &c).expect("w is nonzero");
        let part = w.div_exact(&y);
        if !part.is_one() {
            out.push((part, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        sqf_into(&pth_root(&c), scale * p, out);
    }
}

fn require_squarefree(f: &Poly) -> Result<()> {
    require_monic(f)?;
    if f.degree() == Some(0) {
        return Ok(());
    }
    let df = f.derivative();
    if df.is_zero() || !gcd(f, &df)?.is_one() {
        return Err(Error::NotSquarefree(f.to_string()));
    }
    Ok(())
}

/// Group the irreducible factors of a squarefree monic polynomial by degree.
/// Each entry is the product of all factors of that degree.
pub fn distinct_degree_split(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    require_squarefree(f)?;
    let field = f.field();
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = frobenius_power(&h, &rest);
        let g = gcd(&rest, &(&h - &x))?;
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles
/// all of degree `d`. The result is sorted canonically and does not depend
/// on `seed`.
pub fn equal_degree_split(f: &Poly, d: usize, seed: u64) -> Result<Vec<Poly>> {
    require_monic(f)?;
    let n = f.degree().unwrap_or(0);
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::BadInput(format!("degree {n} is not a multiple of {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut pending = vec![f.clone()];
    while let Some(g) = pending.pop() {
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if deg == d {
            out.push(g);
            continue;
        }
        let (a, b) = split_once(&g, d, &mut rng)?;
        pending.push(a);
        pending.push(b);
    }
    out.sort();
    Ok(out)
}

fn split_once(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<(Poly, Poly)> {
    let field = f.field();
    let n = f.degree().expect("nonzero");
    let order = field.order() as u64;
    for _ in 0..EDF_ATTEMPTS {
        let r = Poly::random_below(field, n, rng);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if field.characteristic() == 2 {
            // absolute trace r + r^2 + ... + r^{2^{kd-1}} lands in F_2 modulo each factor
            let steps = field.absolute_degree() * d;
            let mut acc = r.clone();
            let mut cur = r.clone();
            for _ in 1..steps {
                cur = cur.powmod(2, f)?;
                acc = &acc + &cur;
            }
            acc
        } else {
            // r^{(Q^d - 1)/2} = (r^{1 + Q + ... + Q^{d-1}})^{(Q-1)/2}
            let mut norm = r.clone();
            let mut cur = r.clone();
            for _ in 1..d {
                cur = frobenius_power(&cur, f);
                norm = (&norm * &cur).rem(f)?;
            }
            &norm.powmod((order - 1) / 2, f)? - &Poly::one(field)
        };
        if probe.is_zero() {
            continue;
        }
        let g = gcd(f, &probe)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = f.div_exact(&g);
            return Ok((g, other));
        }
    }
    Err(Error::BadInput(format!("{f} did not split into factors of degree {d}")))
}

/// FNV-1a over the canonical coefficient encoding.
fn seed_for(f: &Poly) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in f.coeffs() {
        for b in c.index().to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Full canonical factorization over the polynomial's own field.
pub fn factor_canonical(f: &Poly) -> Result<Factorization> {
    let field = f.field().clone();
    let unit = f.leading().ok_or(Error::ZeroPolynomial)?;
    let monic = f.make_monic()?;
    if monic.degree() == Some(0) {
        return Ok(Factorization::from_parts(field, unit, Vec::new()));
    }
    let seed = seed_for(&monic);
    let mut factors = Vec::new();
    for (part, e) in squarefree_decomposition(&monic)? {
        for (block, d) in distinct_degree_split(&part)? {
            for g in equal_degree_split(&block, d, seed)? {
                factors.push((g, e));
            }
        }
    }
    Ok(Factorization::from_parts(field, unit, factors))
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    require_monic(f)?;
    let n = match f.degree() {
        Some(0) | None => return Err(Error::BadInput("irreducibility needs degree at least 1".into())),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let x = Poly::x(f.field());
    let divisors: Vec<usize> = prime_factors(n as u64).into_iter().map(|r| n / r as usize).collect();
    let mut h = x.clone();
    for i in 1..=n {
        h = frobenius_power(&h, f);
        if divisors.contains(&i) && !gcd(f, &(&h - &x))?.is_one() {
            return Ok(false);
        }
    }
    Ok(h == x)
}

/// Uniformly random monic irreducible of the given degree.
pub fn random_irreducible<R: rand::Rng + ?Sized>(field: &Field, degree: usize, rng: &mut R) -> Poly {
    assert!(degree >= 1);
    loop {
        let f = Poly::random_monic(field, degree, rng);
        if is_irreducible(&f).expect("monic of positive degree") {
            return f;
        }
    }
}
