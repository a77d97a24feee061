//! Text and JSON rendering. JSON keys keep declaration order and polynomials
//! are emitted in their canonical text form, so every value parses back.

use serde::Serialize;
use serde_json::Value;
use sublc::{BoundReport, Factorization, Poly, SigmaOrbit, SubfieldResult, VerifyReport};

pub fn emit<T: Serialize>(json: bool, value: &T, text: String) -> String {
    if json {
        serde_json::to_string(value).expect("JSON rendering of plain data")
    } else {
        text
    }
}

#[derive(Serialize)]
struct FactorJson {
    poly: String,
    mult: usize,
}

#[derive(Serialize)]
struct FactorizationJson {
    unit: String,
    factors: Vec<FactorJson>,
}

#[derive(Serialize)]
struct OrbitJson {
    k: usize,
    members: Vec<String>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    r: Option<String>,
}

#[derive(Serialize)]
struct ClassJson {
    representative: String,
    k: usize,
    degree: usize,
    exponents: Vec<usize>,
    max_exponent: usize,
}

#[derive(Serialize)]
struct SubfieldJson {
    #[serde(rename = "H")]
    h: String,
    #[serde(rename = "L")]
    l: usize,
    classes: Vec<ClassJson>,
}

#[derive(Serialize)]
struct WitnessJson {
    poly: String,
    exponent: usize,
}

#[derive(Serialize)]
struct BoundJson {
    bound: usize,
    degree: usize,
    tight: bool,
    witness: Vec<WitnessJson>,
}

#[derive(Serialize)]
struct MinPolyJson {
    poly: String,
    #[serde(rename = "L")]
    l: usize,
}

#[derive(Serialize)]
struct CandidatesJson {
    count: usize,
    h: Vec<String>,
}

#[derive(Serialize)]
struct MismatchJson {
    trial: usize,
    measured: String,
    theory: String,
    oracle: String,
}

#[derive(Serialize)]
struct VerifyJson {
    passed: bool,
    trials: usize,
    terms: usize,
    exact_recoveries: usize,
    recovery_rate: f64,
    divisibility_failures: usize,
    degree_failures: usize,
    mismatches: Vec<MismatchJson>,
}

fn value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("JSON rendering of plain data")
}

pub struct Json;

impl Json {
    pub fn factorization(fz: &Factorization) -> Value {
        value(FactorizationJson {
            unit: fz.field().format(fz.unit()),
            factors: fz.factors().iter().map(|(p, e)| FactorJson { poly: p.to_string(), mult: *e }).collect(),
        })
    }

    pub fn orbit(orb: &SigmaOrbit, r: Option<&Poly>) -> Value {
        value(OrbitJson {
            k: orb.k(),
            members: orb.members().iter().map(|p| p.to_string()).collect(),
            r: r.map(|r| r.to_string()),
        })
    }

    pub fn subfield(res: &SubfieldResult) -> Value {
        value(SubfieldJson {
            h: res.h_base.to_string(),
            l: res.linear_complexity,
            classes: res
                .classes
                .iter()
                .map(|c| ClassJson {
                    representative: c.representative.to_string(),
                    k: c.k,
                    degree: c.degree,
                    exponents: c.exponents.clone(),
                    max_exponent: c.max_exponent,
                })
                .collect(),
        })
    }

    pub fn bound(rep: &BoundReport) -> Value {
        value(BoundJson {
            bound: rep.bound,
            degree: rep.degree,
            tight: rep.tight,
            witness: rep
                .witness
                .iter()
                .map(|(p, e)| WitnessJson { poly: p.to_string(), exponent: *e })
                .collect(),
        })
    }

    pub fn min_poly(g: &Poly) -> Value {
        value(MinPolyJson { poly: g.to_string(), l: g.degree().unwrap_or(0) })
    }

    pub fn candidates(hs: &[Poly]) -> Value {
        value(CandidatesJson { count: hs.len(), h: hs.iter().map(|h| h.to_string()).collect() })
    }

    pub fn verify(rep: &VerifyReport) -> Value {
        value(VerifyJson {
            passed: rep.passed(),
            trials: rep.trials,
            terms: rep.terms,
            exact_recoveries: rep.exact_recoveries,
            recovery_rate: rep.recovery_rate(),
            divisibility_failures: rep.divisibility_failures,
            degree_failures: rep.degree_failures,
            mismatches: rep
                .mismatches
                .iter()
                .map(|m| MismatchJson {
                    trial: m.trial,
                    measured: m.measured.to_string(),
                    theory: m.theory.to_string(),
                    oracle: m.oracle.to_string(),
                })
                .collect(),
        })
    }
}

pub fn subfield_text(res: &SubfieldResult) -> String {
    let mut out = format!("H = {}\nL = {}\nclasses:", res.h_base, res.linear_complexity);
    for c in &res.classes {
        let exps: Vec<String> = c.exponents.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!(
            "\n  {}  k={} deg={} exponents=[{}] max={}",
            c.representative,
            c.k,
            c.degree,
            exps.join(","),
            c.max_exponent
        ));
    }
    out
}

pub fn bound_text(rep: &BoundReport) -> String {
    let mut out = format!("bound = {}\ndegree = {}\ntight = {}", rep.bound, rep.degree, rep.tight);
    if rep.tight {
        let w: Vec<String> = rep.witness.iter().map(|(p, e)| format!("({p})^{e}")).collect();
        out.push_str(&format!("\nwitness: {}", w.join(" * ")));
    }
    out
}

pub fn verify_text(rep: &VerifyReport) -> String {
    let mut out = format!(
        "{} trials, {} terms each\nmismatches: {}\ndivisibility failures: {}\ndegree failures: {}\nexact recoveries: {} ({:.3})",
        rep.trials,
        rep.terms,
        rep.mismatches.len(),
        rep.divisibility_failures,
        rep.degree_failures,
        rep.exact_recoveries,
        rep.recovery_rate()
    );
    for m in &rep.mismatches {
        out.push_str(&format!(
            "\n  trial {}: measured {}, theory {}, oracle {}",
            m.trial, m.measured, m.theory, m.oracle
        ));
    }
    out.push_str(if rep.passed() { "\nPASS" } else { "\nFAIL" });
    out
}
