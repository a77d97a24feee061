//! End-to-end acceptance checks. Each check prints one PASS/FAIL line with
//! its runtime against the allowed budget; the process exits non-zero if any
//! check fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sublc::fields::Level;
use sublc::{
    berlekamp_massey, bound_tightness, closure_r, decompose_to_base, enumerate_admissible_h,
    factor_canonical, factor_over_extension, is_irreducible, joint_min_poly, lfsr_generate,
    min_poly_over_base, mo_lower_bound, orbit, orbit_order, parse_elems, parse_poly, random_irreducible,
    verify_subfield_minpoly, Elem, Field, Poly, Sequence, Tower,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn towers() -> Vec<(&'static str, Tower)> {
    vec![
        ("q=2,m=2", Tower::with_degrees(2, 1, 2).unwrap()),
        ("q=2,m=3", Tower::with_degrees(2, 1, 3).unwrap()),
        ("q=2,m=4", Tower::with_degrees(2, 1, 4).unwrap()),
        ("q=3,m=2", Tower::with_degrees(3, 1, 2).unwrap()),
        ("q=4,m=2", Tower::with_degrees(2, 2, 2).unwrap()),
    ]
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

fn golden_example() -> Check {
    let t = Tower::new(2, None, Some(&[1, 1, 1])).map_err(|e| e.to_string())?;
    let h = parse_poly(t.ext(), "x^3+a^2*x^2+a^2").unwrap();
    let init = parse_elems(t.ext(), "a^2,a,a").unwrap();
    let seq = lfsr_generate(&h, &init, 30).unwrap();
    let measured = berlekamp_massey(&seq);
    ensure!(measured == h, "BM returned {measured}");

    let fz = factor_canonical(&h).unwrap();
    let expected =
        vec![(parse_poly(t.ext(), "x+a").unwrap(), 1), (parse_poly(t.ext(), "x^2+x+a").unwrap(), 1)];
    ensure!(fz.factors() == expected.as_slice(), "factorization {:?}", fz.factors());
    for (p, _) in &expected {
        let k = orbit_order(&t, p).unwrap();
        ensure!(k == 2, "k({p}) = {k}");
    }

    let res = min_poly_over_base(&t, &measured).unwrap();
    let big_h = parse_poly(t.base(), "x^6+x^5+x^4+x^3+1").unwrap();
    ensure!(res.h_base == big_h, "H = {}", res.h_base);
    ensure!(res.linear_complexity == 6, "L = {}", res.linear_complexity);

    let joint = joint_min_poly(&decompose_to_base(&t, &seq).unwrap());
    ensure!(joint == big_h, "joint = {joint}");
    Ok("H = x^6+x^5+x^4+x^3+1, L = 6".into())
}

fn closure_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = 0;
    for (name, t) in towers() {
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let f = random_irreducible(t.ext(), n, &mut rng);
            let k = orbit_order(&t, &f).unwrap();
            let r = closure_r(&t, &f).unwrap();
            ensure!(r.field() == t.base(), "{name}: R({f}) not at base level");
            ensure!(is_irreducible(&r).unwrap(), "{name}: R({f}) = {r} reducible");
            ensure!(r.degree() == Some(k * n), "{name}: deg R({f}) = {:?}, k = {k}", r.degree());
            ensure!(t.m() % k == 0, "{name}: k({f}) = {k} does not divide m");
            for g in orbit(&t, &f).unwrap().members() {
                ensure!(closure_r(&t, g).unwrap() == r, "{name}: R differs on {g} vs {f}");
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} irreducibles"))
}

fn splitting_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = 0;
    for (name, t) in towers() {
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let f = random_irreducible(t.base(), n, &mut rng);
            let g = gcd_usize(n, t.m());
            let orb = factor_over_extension(&t, &f).unwrap();
            ensure!(orb.k() == g, "{name}: {f} splits into {} factors, expected {g}", orb.k());
            ensure!(
                orbit_order(&t, orb.representative()).unwrap() == g,
                "{name}: k of a factor of {f} is not {g}"
            );
            let lifted = t.embed_poly(&f).unwrap();
            let fz = factor_canonical(&lifted).unwrap();
            ensure!(fz.factors().len() == g, "{name}: {f} has {} factors", fz.factors().len());
            let mut product = Poly::one(t.ext());
            for p in orb.members() {
                ensure!(p.degree() == Some(n / g), "{name}: factor {p} of {f}");
                ensure!(fz.factors().iter().any(|(q, e)| q == p && *e == 1), "{name}: {p} ∤ {f}");
                product = &product * p;
            }
            ensure!(product == lifted, "{name}: orbit product of {f} is {product}");
            ensure!(t.project_poly(&product).unwrap() == f, "{name}: projection of {product}");
            cases += 1;
        }
    }
    Ok(format!("{cases} irreducibles"))
}

fn differential_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut trials = 0;
    let mut recovered = 0;
    for (name, t) in towers() {
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let h = Poly::random_monic(t.ext(), n, &mut rng);
            let report = verify_subfield_minpoly(&t, &h, 1, rng.gen()).unwrap();
            ensure!(report.mismatches.is_empty(), "{name}: {h}: {:?}", report.mismatches);
            ensure!(report.divisibility_failures == 0, "{name}: {h}: divisibility");
            ensure!(report.degree_failures == 0, "{name}: {h}: degree sum");
            trials += 1;
            recovered += report.exact_recoveries;
        }
    }
    Ok(format!("{trials} trials, 0 mismatches, h recovered exactly in {recovered}"))
}

fn all_monic(field: &Field, n: usize) -> Vec<Poly> {
    let q = field.order() as usize;
    (0..q.pow(n as u32))
        .map(|idx| {
            let mut coeffs: Vec<Elem> = (0..n).map(|i| Elem(((idx / q.pow(i as u32)) % q) as u32)).collect();
            coeffs.push(Elem::ONE);
            Poly::new(field.clone(), coeffs)
        })
        .collect()
}

fn exhaustive_suite() -> Check {
    let t = Tower::with_degrees(2, 1, 2).unwrap();
    let mut polys = 0;
    let mut candidates = 0;
    for n in 0..=4 {
        for f in all_monic(t.base(), n) {
            let expected: usize = factor_canonical(&f)
                .unwrap()
                .factors()
                .iter()
                .map(|(r, e)| {
                    let u = gcd_usize(r.degree().unwrap(), 2) as u32;
                    (e + 1).pow(u) - e.pow(u)
                })
                .product();
            let hs: Vec<Poly> = enumerate_admissible_h(&t, &f).unwrap().collect();
            ensure!(hs.len() == expected, "{f}: {} candidates, expected {expected}", hs.len());
            let bound = mo_lower_bound(&f, 2).unwrap();
            let min_deg = hs.iter().map(|h| h.degree().unwrap()).min().unwrap();
            ensure!(min_deg == bound, "{f}: min degree {min_deg}, bound {bound}");
            for h in &hs {
                ensure!(min_poly_over_base(&t, h).unwrap().h_base == f, "{f}: H({h}) differs");
                let report = bound_tightness(&t, &f, h).unwrap();
                ensure!(report.bound == bound, "{f}: bound mismatch for {h}");
                ensure!(
                    report.tight == (h.degree() == Some(min_deg)),
                    "{f}: tightness of {h} is {}",
                    report.tight
                );
            }
            polys += 1;
            candidates += hs.len();
        }
    }
    Ok(format!("{polys} polynomials, {candidates} candidates"))
}

fn bm_suite() -> Check {
    let fields: Vec<Field> = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
        .iter()
        .map(|&(p, d)| Tower::with_degrees(p, d, 1).unwrap().ext().clone())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..200 {
        let field = &fields[i % fields.len()];
        let n = rng.gen_range(1..=8);
        let c = Poly::random_monic(field, n, &mut rng);
        let init: Vec<Elem> = (0..n).map(|_| field.random(&mut rng)).collect();
        let seq = lfsr_generate(&c, &init, 2 * n).unwrap();
        let g = berlekamp_massey(&seq);
        ensure!(g.divides(&c).unwrap(), "BM {g} does not divide {c}");
        ensure!(seq.satisfies(&g).unwrap(), "BM {g} does not regenerate {seq}");
        let zero = Sequence::zeros(field, 2 * n);
        ensure!(berlekamp_massey(&zero).is_one(), "zero prefix over F_{}", field.order());
    }
    Ok("200 characteristic polynomials".into())
}

fn degeneracy_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trivial: Vec<Tower> = [(2, 1), (3, 1), (2, 2), (5, 1)]
        .iter()
        .map(|&(p, d)| Tower::with_degrees(p, d, 1).unwrap())
        .collect();
    for i in 0..100 {
        let t = &trivial[i % trivial.len()];
        let h = Poly::random_monic(t.ext(), rng.gen_range(1..=6), &mut rng);
        let res = min_poly_over_base(t, &h).unwrap();
        ensure!(res.h_base == h, "m = 1: H({h}) = {}", res.h_base);
    }
    for (name, t) in towers() {
        for _ in 0..20 {
            let f = Poly::random_monic(t.base(), rng.gen_range(1..=6), &mut rng);
            let h = t.embed_poly(&f).unwrap();
            let res = min_poly_over_base(&t, &h).unwrap();
            ensure!(res.h_base == f, "{name}: H({h}) = {}", res.h_base);
            ensure!(t.field(Level::Base) == res.h_base.field(), "{name}: level");
        }
    }
    Ok("100 trivial-extension and 100 base-coefficient cases".into())
}

fn main() {
    let checks: [Criterion; 7] = [
        ("1 worked example end to end", golden_example, Duration::from_secs(1)),
        ("2 orbit closures are irreducible", closure_suite, Duration::from_secs(30)),
        ("3 base irreducibles split into one orbit", splitting_suite, Duration::from_secs(30)),
        ("4 subfield minimal polynomial vs joint BM", differential_suite, Duration::from_secs(60)),
        ("5 exhaustive admissible sets and bound, q=2 m=2", exhaustive_suite, Duration::from_secs(60)),
        ("6 Berlekamp-Massey", bm_suite, Duration::from_secs(10)),
        ("7 degenerate towers", degeneracy_suite, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (name, check, budget) in checks {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{name}] {:.3}s (limit {}s): {detail}", elapsed.as_secs_f64(), budget.as_secs());
    }
    if failed > 0 {
        eprintln!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}
