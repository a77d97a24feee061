//! The coefficientwise Frobenius `σ` on `F_{q^m}[x]`, orbits of irreducibles
//! under it, orbit products and factoring `F_q` irreducibles over `F_{q^m}`.

use crate::error::{Error, Result};
use crate::factorization::{factor_canonical, is_irreducible, Factorization};
use crate::fields::Tower;
use crate::polynomials::Poly;

/// The orbit `f, σ(f), ..., σ^{k-1}(f)` of a monic irreducible, listed from
/// its canonically least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaOrbit {
    members: Vec<Poly>,
}

impl SigmaOrbit {
    pub fn representative(&self) -> &Poly {
        &self.members[0]
    }

    /// Members in `σ` order starting at the representative.
    pub fn members(&self) -> &[Poly] {
        &self.members
    }

    /// Orbit length `k(f)`.
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn position(&self, f: &Poly) -> Option<usize> {
        self.members.iter().position(|g| g == f)
    }
}

/// A `σ`-equivalence class of factors: the orbit plus the multiplicity of
/// every member, zero for members absent from the factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaClass {
    pub orbit: SigmaOrbit,
    pub multiplicities: Vec<usize>,
}

impl SigmaClass {
    /// Largest multiplicity within the class.
    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.iter().copied().max().unwrap_or(0)
    }
}

/// Partition of a factorization's irreducible factors into `σ`-classes,
/// ordered by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaClassPartition {
    pub classes: Vec<SigmaClass>,
}

fn require_ext(tower: &Tower, f: &Poly) -> Result<()> {
    if f.field() == tower.ext() {
        Ok(())
    } else {
        Err(Error::LevelMismatch)
    }
}

/// Raise every coefficient to the `q`-th power.
pub fn sigma(tower: &Tower, f: &Poly) -> Result<Poly> {
    require_ext(tower, f)?;
    Ok(f.map_coeffs(tower.ext(), |c| tower.frobenius_q(c)))
}

/// `σ` composed `j` times.
pub fn sigma_iter(tower: &Tower, f: &Poly, j: usize) -> Result<Poly> {
    require_ext(tower, f)?;
    let j = j % tower.m();
    let mut g = f.clone();
    for _ in 0..j {
        g = sigma(tower, &g)?;
    }
    Ok(g)
}

/// Least `k >= 1` with `σ^k(f) = f`.
pub fn orbit_order(tower: &Tower, f: &Poly) -> Result<usize> {
    require_ext(tower, f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = sigma(tower, f)?;
    let mut k = 1;
    while &g != f {
        g = sigma(tower, &g)?;
        k += 1;
    }
    debug_assert_eq!(tower.m() % k, 0);
    Ok(k)
}

fn require_irreducible(f: &Poly) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 || !f.is_monic() || !is_irreducible(f)? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    Ok(())
}

/// Orbit of an irreducible without re-checking irreducibility.
fn orbit_unchecked(tower: &Tower, f: &Poly) -> Result<SigmaOrbit> {
    let mut members = vec![f.clone()];
    let mut g = sigma(tower, f)?;
    while &g != f {
        let next = sigma(tower, &g)?;
        members.push(g);
        g = next;
    }
    let start = members.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i).unwrap_or(0);
    members.rotate_left(start);
    Ok(SigmaOrbit { members })
}

/// `σ`-orbit of a monic irreducible extension-level polynomial.
pub fn orbit(tower: &Tower, f: &Poly) -> Result<SigmaOrbit> {
    require_ext(tower, f)?;
    require_irreducible(f)?;
    orbit_unchecked(tower, f)
}

pub(crate) fn orbit_product(tower: &Tower, orbit: &SigmaOrbit) -> Poly {
    let product = orbit.members().iter().fold(Poly::one(tower.ext()), |acc, g| &acc * g);
    tower.project_poly(&product).expect("orbit products have coefficients in the base field")
}

/// `R(f) = f σ(f) ... σ^{k(f)-1}(f)`, returned as a base-level polynomial.
pub fn closure_r(tower: &Tower, f: &Poly) -> Result<Poly> {
    Ok(orbit_product(tower, &orbit(tower, f)?))
}

/// Group the factors of an extension-level factorization into `σ`-classes.
pub fn partition_classes(tower: &Tower, fz: &Factorization) -> Result<SigmaClassPartition> {
    if fz.field() != tower.ext() {
        return Err(Error::LevelMismatch);
    }
    let mut classes: Vec<SigmaClass> = Vec::new();
    for (p, e) in fz.factors() {
        if let Some(class) = classes.iter_mut().find(|c| c.orbit.position(p).is_some()) {
            let i = class.orbit.position(p).unwrap();
            class.multiplicities[i] = *e;
            continue;
        }
        let orbit = orbit_unchecked(tower, p)?;
        let mut multiplicities = vec![0; orbit.k()];
        multiplicities[orbit.position(p).unwrap()] = *e;
        classes.push(SigmaClass { orbit, multiplicities });
    }
    classes.sort_by(|a, b| a.orbit.representative().cmp(b.orbit.representative()));
    Ok(SigmaClassPartition { classes })
}

/// Factor a monic irreducible over `F_q` into irreducibles over `F_{q^m}`:
/// the factors form a single orbit of length `gcd(deg f, m)`.
pub fn factor_over_extension(tower: &Tower, f: &Poly) -> Result<SigmaOrbit> {
    if f.field() != tower.base() {
        return Err(Error::LevelMismatch);
    }
    require_irreducible(f)?;
    let lifted = tower.embed_poly(f)?;
    let fz = factor_canonical(&lifted)?;
    let (first, _) = fz.factors().first().expect("positive degree");
    let orbit = orbit_unchecked(tower, first)?;
    debug_assert_eq!(orbit.k(), fz.factors().len());
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Tower;
    use crate::text::parse_poly;

    fn f4() -> Tower {
        Tower::new(2, None, Some(&[1, 1, 1])).unwrap()
    }

    fn ext(t: &Tower, s: &str) -> Poly {
        parse_poly(t.ext(), s).unwrap()
    }

    fn base(t: &Tower, s: &str) -> Poly {
        parse_poly(t.base(), s).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let t = f4();
        assert_eq!(sigma(&t, &ext(&t, "x+a")).unwrap(), ext(&t, "x+a^2"));
        assert_eq!(sigma(&t, &ext(&t, "x+a")).unwrap(), ext(&t, "x+a+1"));
        assert_eq!(sigma(&t, &ext(&t, "x^2+x+1")).unwrap(), ext(&t, "x^2+x+1"));
        assert_eq!(sigma(&t, &ext(&t, "x^2+x+a")).unwrap(), ext(&t, "x^2+x+a+1"));
        assert_eq!(sigma(&t, &base(&t, "x+1")).unwrap_err(), Error::LevelMismatch);
    }

    #[test]
    fn sigma_iter_examples() {
        let t = f4();
        let f = ext(&t, "x+a");
        assert_eq!(sigma_iter(&t, &f, 2).unwrap(), f);
        assert_eq!(sigma_iter(&t, &f, 0).unwrap(), f);
        assert_eq!(sigma_iter(&t, &f, 5).unwrap(), ext(&t, "x+a+1"));
    }

    #[test]
    fn orbit_order_examples() {
        let t = f4();
        assert_eq!(orbit_order(&t, &ext(&t, "x+a")).unwrap(), 2);
        assert_eq!(orbit_order(&t, &ext(&t, "x^2+x+1")).unwrap(), 1);
        assert_eq!(orbit_order(&t, &ext(&t, "x^2+x+a")).unwrap(), 2);
    }

    #[test]
    fn orbit_examples() {
        let t = f4();
        let o = orbit(&t, &ext(&t, "x+a+1")).unwrap();
        assert_eq!(o.members(), &[ext(&t, "x+a"), ext(&t, "x+a+1")]);
        assert_eq!(o.k(), 2);
        let o = orbit(&t, &ext(&t, "x^2+x+a")).unwrap();
        assert_eq!(o.members(), &[ext(&t, "x^2+x+a"), ext(&t, "x^2+x+a+1")]);
        // x^2+x+1 splits over F_4, so use an irreducible with base coefficients
        let o = orbit(&t, &ext(&t, "x^3+x+1")).unwrap();
        assert_eq!(o.k(), 1);
        assert_eq!(orbit(&t, &ext(&t, "x^2+x+1")).unwrap_err().code(), "NotIrreducible");
    }

    #[test]
    fn closure_examples() {
        let t = f4();
        assert_eq!(closure_r(&t, &ext(&t, "x+a")).unwrap(), base(&t, "x^2+x+1"));
        assert_eq!(closure_r(&t, &ext(&t, "x^2+x+a")).unwrap(), base(&t, "x^4+x+1"));
        assert_eq!(closure_r(&t, &ext(&t, "x^3+x+1")).unwrap(), base(&t, "x^3+x+1"));
        // on F_2 ⊂ F_2 (m = 1) every polynomial is already over F_q
        let t1 = Tower::new(2, None, None).unwrap();
        assert_eq!(closure_r(&t1, &ext(&t1, "x^2+x+1")).unwrap(), base(&t1, "x^2+x+1"));
    }

    #[test]
    fn partition_examples() {
        let t = f4();
        let fz = factor_canonical(&ext(&t, "x^3+a^2*x^2+a^2")).unwrap();
        let part = partition_classes(&t, &fz).unwrap();
        assert_eq!(part.classes.len(), 2);
        assert_eq!(part.classes[0].multiplicities, vec![1, 0]);
        assert_eq!(part.classes[1].multiplicities, vec![1, 0]);

        let fz = factor_canonical(&ext(&t, "(x+a)*(x+a+1)")).unwrap();
        let part = partition_classes(&t, &fz).unwrap();
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.classes[0].multiplicities, vec![1, 1]);
        assert_eq!(part.classes[0].orbit, orbit(&t, &ext(&t, "x+a")).unwrap());

        let fz = factor_canonical(&ext(&t, "x+1")).unwrap();
        let part = partition_classes(&t, &fz).unwrap();
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.classes[0].orbit.k(), 1);
    }

    #[test]
    fn extension_factor_examples() {
        let t = f4();
        let o = factor_over_extension(&t, &base(&t, "x^4+x+1")).unwrap();
        assert_eq!(o.members(), &[ext(&t, "x^2+x+a"), ext(&t, "x^2+x+a+1")]);
        let o = factor_over_extension(&t, &base(&t, "x^2+x+1")).unwrap();
        assert_eq!(o.members(), &[ext(&t, "x+a"), ext(&t, "x+a+1")]);
        let o = factor_over_extension(&t, &base(&t, "x^3+x+1")).unwrap();
        assert_eq!(o.members(), &[ext(&t, "x^3+x+1")]);
        assert!(is_irreducible(&o.members()[0]).unwrap());
        assert_eq!(factor_over_extension(&t, &base(&t, "x^2+1")).unwrap_err().code(), "NotIrreducible");
    }

    mod props {
        use super::*;
        use crate::factorization::random_irreducible;
        use proptest::prelude::*;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        fn towers() -> Vec<Tower> {
            vec![
                Tower::with_degrees(2, 1, 2).unwrap(),
                Tower::with_degrees(2, 1, 3).unwrap(),
                Tower::with_degrees(3, 1, 2).unwrap(),
                Tower::with_degrees(2, 2, 2).unwrap(),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn sigma_is_a_ring_automorphism(seed in any::<u64>(), which in 0usize..4) {
                let t = &towers()[which];
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = Poly::random_below(t.ext(), 6, &mut rng);
                let g = Poly::random_below(t.ext(), 6, &mut rng);
                let s = |p: &Poly| sigma(t, p).unwrap();
                prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
                prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
            }

            #[test]
            fn fixed_iterates_are_multiples_of_the_order(seed in any::<u64>(), which in 0usize..4) {
                let t = &towers()[which];
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = Poly::random_monic(t.ext(), rng.gen_range(1..5), &mut rng);
                let k = orbit_order(t, &f).unwrap();
                for l in 0..=3 * t.m() {
                    prop_assert_eq!(sigma_iter(t, &f, l).unwrap() == f, l % k == 0);
                }
            }

            #[test]
            fn sigma_preserves_irreducibility(seed in any::<u64>(), which in 0usize..4) {
                let t = &towers()[which];
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = Poly::random_monic(t.ext(), rng.gen_range(1..6), &mut rng);
                prop_assert_eq!(
                    is_irreducible(&sigma(t, &f).unwrap()).unwrap(),
                    is_irreducible(&f).unwrap()
                );
            }

            #[test]
            fn closure_is_irreducible_and_representative_free(seed in any::<u64>(), which in 0usize..4) {
                let t = &towers()[which];
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = random_irreducible(t.ext(), rng.gen_range(1..5), &mut rng);
                let r = closure_r(t, &f).unwrap();
                prop_assert!(is_irreducible(&r).unwrap());
                let lifted = t.embed_poly(&r).unwrap();
                prop_assert_eq!(sigma(t, &lifted).unwrap(), lifted);
                let o = orbit(t, &f).unwrap();
                for g in o.members() {
                    prop_assert_eq!(&closure_r(t, g).unwrap(), &r);
                    prop_assert_eq!(&orbit(t, g).unwrap(), &o);
                }
                let back = factor_over_extension(t, &r).unwrap();
                prop_assert_eq!(back, o);
            }
        }
    }
}
