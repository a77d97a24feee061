//! Minimal polynomials and linear complexity over `F_q` of linear recurring
//! sequences over `F_{q^m}`.
//!
//! Given the minimal polynomial `h` of a sequence over `F_{q^m}`, its minimal
//! polynomial over the subfield `F_q` is obtained by factoring `h`, grouping
//! the irreducible factors into orbits of the coefficientwise Frobenius `σ`,
//! and multiplying the orbit products raised to the largest multiplicity seen
//! in each orbit. The [`sequences`] module measures the same quantity directly
//! from sequence data with Berlekamp–Massey, which the test suites use as an
//! independent oracle.
//!
//! ```
//! use sublc::{Tower, parse_poly, min_poly_over_base};
//!
//! let tower = Tower::new(2, None, Some(&[1, 1, 1])).unwrap(); // F_2 ⊂ F_4
//! let h = parse_poly(tower.ext(), "x^3+a^2*x^2+a^2").unwrap();
//! let res = min_poly_over_base(&tower, &h).unwrap();
//! assert_eq!(res.h_base.to_string(), "x^6+x^5+x^4+x^3+1");
//! assert_eq!(res.linear_complexity, 6);
//! ```

pub mod error;
pub mod factorization;
pub mod fields;
pub mod frobenius;
pub mod polynomials;
pub mod sequences;
pub mod subfield_minpoly;
pub mod text;

pub use error::{Error, Result};
pub use factorization::{
    distinct_degree_split, equal_degree_split, factor_canonical, is_irreducible, random_irreducible,
    squarefree_decomposition, Factorization,
};
pub use fields::{default_modulus, Elem, Field, Level, Tower};
pub use frobenius::{
    closure_r, factor_over_extension, orbit, orbit_order, partition_classes, sigma, sigma_iter, SigmaClass,
    SigmaClassPartition, SigmaOrbit,
};
pub use polynomials::{gcd, lcm, Poly};
pub use sequences::{
    berlekamp_massey, decompose_by_coprime_factors, decompose_to_base, joint_min_poly, lfsr_generate,
    verify_subfield_minpoly, MultiSequence, Sequence, VerifyReport,
};
pub use subfield_minpoly::{
    admissible_count, admissible_h, bound_tightness, enumerate_admissible_h, linear_complexity_over_base,
    min_poly_over_base, mo_lower_bound, BoundReport, ClassRow, SubfieldResult,
};
pub use text::{parse_elem, parse_elems, parse_poly, parse_poly_in};
