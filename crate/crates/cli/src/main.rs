//! `sublc`: command-line access to subfield minimal polynomials, factorization
//! over finite-field towers and Berlekamp–Massey.

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sublc::text::format_factorization;
use sublc::{
    berlekamp_massey, bound_tightness, closure_r, decompose_to_base, default_modulus, factor_canonical,
    factor_over_extension, joint_min_poly, linear_complexity_over_base, min_poly_over_base, mo_lower_bound,
    orbit, parse_poly, parse_poly_in, verify_subfield_minpoly, Error, Field, MultiSequence, Poly, Sequence,
    Tower,
};

use crate::render::{emit, Json};

#[derive(Parser, Debug)]
#[command(name = "sublc", version, about = "Subfield minimal polynomials of linear recurring sequences")]
struct Cli {
    #[command(flatten)]
    tower: TowerArgs,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TowerArgs {
    /// Characteristic p.
    #[arg(long = "char", global = true)]
    char_p: Option<u64>,
    /// Modulus of F_q over F_p, in `t`.
    #[arg(long, global = true)]
    base_poly: Option<String>,
    /// [F_q : F_p], using the default modulus.
    #[arg(long, global = true)]
    base_deg: Option<usize>,
    /// Modulus of F_{q^m} over F_q, in `a`.
    #[arg(long, global = true)]
    ext_poly: Option<String>,
    /// [F_{q^m} : F_q], using the default modulus.
    #[arg(long, global = true)]
    ext_deg: Option<usize>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LevelArg {
    Base,
    Ext,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical factorization of a monic polynomial.
    Factor {
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value = "ext")]
        level: LevelArg,
    },
    /// σ-orbit and closure R(f) of a monic irreducible over F_{q^m}.
    Orbit {
        #[arg(long)]
        poly: String,
    },
    /// Factors over F_{q^m} of a monic irreducible over F_q.
    Extfactor {
        #[arg(long)]
        poly: String,
    },
    /// Minimal polynomial over F_q from the minimal polynomial over F_{q^m}.
    SubfieldMinpoly {
        #[arg(long)]
        poly: String,
    },
    /// Linear complexity over F_q.
    Lc {
        #[arg(long)]
        poly: String,
    },
    /// Lower bound on F_{q^m} linear complexity, optionally testing a candidate.
    Bound {
        /// Minimal polynomial over F_q.
        #[arg(long)]
        poly: String,
        /// Extension degree; defaults to the tower's.
        #[arg(long)]
        m: Option<usize>,
        /// Candidate minimal polynomial over F_{q^m}.
        #[arg(long)]
        h: Option<String>,
    },
    /// All F_{q^m} minimal polynomials compatible with an F_q minimal polynomial.
    EnumerateH {
        #[arg(long)]
        poly: String,
    },
    /// Berlekamp–Massey over F_{q^m}.
    Bm {
        /// Comma-separated terms.
        #[arg(long)]
        seq: String,
    },
    /// Joint minimal polynomial of several sequences.
    JointBm {
        /// Comma-separated terms; repeat for each component.
        #[arg(long, required = true)]
        seq: Vec<String>,
        #[arg(long, value_enum, default_value = "base")]
        level: LevelArg,
        /// Treat each sequence as F_{q^m}-valued and split it into F_q coordinates first.
        #[arg(long)]
        decompose: bool,
    },
    /// Check the subfield minimal polynomial against joint Berlekamp–Massey on random sequences.
    Verify {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// An input error tagged with the flag it came from.
struct Failure {
    flag: &'static str,
    code: &'static str,
    message: String,
}

impl Failure {
    fn missing(flag: &'static str) -> Failure {
        Failure { flag, code: "MissingFlag", message: "required flag not given".into() }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

trait Flag<T> {
    fn flag(self, flag: &'static str) -> Outcome<T>;
}

impl<T> Flag<T> for sublc::Result<T> {
    fn flag(self, flag: &'static str) -> Outcome<T> {
        self.map_err(|err| Failure { flag, code: err.code(), message: err.to_string() })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure { flag, code, message }) => {
            eprintln!("error[{code}] {flag}: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_modulus(field: &Field, s: &str, var: char) -> sublc::Result<Poly> {
    parse_poly_in(field, s, var).or_else(|e| parse_poly(field, s).map_err(|_| e))
}

fn default_level(sub: &Field, degree: Option<usize>, symbol: char) -> sublc::Result<Field> {
    match degree {
        Some(d) if d > 1 => Field::extension(&default_modulus(sub, d)?, symbol),
        _ => Ok(sub.clone()),
    }
}

fn parse_tower(args: &TowerArgs, ext_deg_hint: Option<usize>) -> Outcome<Tower> {
    let Some(p) = args.char_p else {
        return Err(Failure::missing("--char"));
    };
    let prime = Field::prime(p).flag("--char")?;
    let base = match &args.base_poly {
        Some(s) => {
            let modulus = parse_modulus(&prime, s, 't').flag("--base-poly")?;
            Field::extension(&modulus, 't').flag("--base-poly")?
        }
        None => default_level(&prime, args.base_deg, 't').flag("--base-deg")?,
    };
    let ext = match &args.ext_poly {
        Some(s) => {
            let modulus = parse_modulus(&base, s, 'a').flag("--ext-poly")?;
            Field::extension(&modulus, 'a').flag("--ext-poly")?
        }
        None => default_level(&base, args.ext_deg.or(ext_deg_hint), 'a').flag("--ext-deg")?,
    };
    Tower::from_fields(base, ext).flag("--ext-poly")
}

fn field_at(tower: &Tower, level: LevelArg) -> &Field {
    match level {
        LevelArg::Base => tower.base(),
        LevelArg::Ext => tower.ext(),
    }
}

fn run(cli: &Cli) -> Outcome<ExitCode> {
    let hint = match &cli.command {
        Command::Bound { m, .. } => *m,
        _ => None,
    };
    let tower = parse_tower(&cli.tower, hint)?;
    let out = match &cli.command {
        Command::Factor { poly, level } => {
            let f = parse_poly(field_at(&tower, *level), poly).flag("--poly")?;
            let fz = factor_canonical(&f).flag("--poly")?;
            emit(cli.json, &Json::factorization(&fz), format_factorization(&fz))
        }
        Command::Orbit { poly } => {
            let f = parse_poly(tower.ext(), poly).flag("--poly")?;
            let orb = orbit(&tower, &f).flag("--poly")?;
            let r = closure_r(&tower, &f).flag("--poly")?;
            let text = format!(
                "k = {}\norbit: {}\nR = {r}",
                orb.k(),
                join(orb.members().iter().map(|p| p.to_string()))
            );
            emit(cli.json, &Json::orbit(&orb, Some(&r)), text)
        }
        Command::Extfactor { poly } => {
            let f = parse_poly(tower.base(), poly).flag("--poly")?;
            let orb = factor_over_extension(&tower, &f).flag("--poly")?;
            let text =
                format!("k = {}\nfactors: {}", orb.k(), join(orb.members().iter().map(|p| p.to_string())));
            emit(cli.json, &Json::orbit(&orb, None), text)
        }
        Command::SubfieldMinpoly { poly } => {
            let h = parse_poly(tower.ext(), poly).flag("--poly")?;
            let res = min_poly_over_base(&tower, &h).flag("--poly")?;
            emit(cli.json, &Json::subfield(&res), render::subfield_text(&res))
        }
        Command::Lc { poly } => {
            let h = parse_poly(tower.ext(), poly).flag("--poly")?;
            let l = linear_complexity_over_base(&tower, &h).flag("--poly")?;
            emit(cli.json, &serde_json::json!({ "L": l }), format!("L = {l}"))
        }
        Command::Bound { poly, m, h } => {
            let m = m.unwrap_or(tower.m());
            let f = parse_poly(tower.base(), poly).flag("--poly")?;
            match h {
                None => {
                    let bound = mo_lower_bound(&f, m).flag("--m")?;
                    emit(cli.json, &serde_json::json!({ "bound": bound }), format!("bound = {bound}"))
                }
                Some(h) => {
                    if m != tower.m() {
                        let err = Error::BadInput(format!("tower has extension degree {}", tower.m()));
                        return Err(err).flag("--m");
                    }
                    let h = parse_poly(tower.ext(), h).flag("--h")?;
                    let rep = bound_tightness(&tower, &f, &h).flag("--h")?;
                    emit(cli.json, &Json::bound(&rep), render::bound_text(&rep))
                }
            }
        }
        Command::EnumerateH { poly } => {
            let f = parse_poly(tower.base(), poly).flag("--poly")?;
            let hs: Vec<Poly> = sublc::enumerate_admissible_h(&tower, &f).flag("--poly")?.collect();
            let text = join_lines(hs.iter().map(|h| h.to_string()));
            emit(cli.json, &Json::candidates(&hs), text)
        }
        Command::Bm { seq } => {
            let s = Sequence::parse(tower.ext(), seq).flag("--seq")?;
            let g = berlekamp_massey(&s);
            emit(cli.json, &Json::min_poly(&g), g.to_string())
        }
        Command::JointBm { seq, level, decompose } => {
            let mut comps = Vec::new();
            if *decompose {
                for s in seq {
                    let s = Sequence::parse(tower.ext(), s).flag("--seq")?;
                    let ms = decompose_to_base(&tower, &s).flag("--seq")?;
                    comps.extend(ms.components().iter().cloned());
                }
            } else {
                for s in seq {
                    comps.push(Sequence::parse(field_at(&tower, *level), s).flag("--seq")?);
                }
            }
            let ms = MultiSequence::new(comps).flag("--seq")?;
            let g = joint_min_poly(&ms);
            emit(cli.json, &Json::min_poly(&g), g.to_string())
        }
        Command::Verify { poly, trials, seed } => {
            let h = parse_poly(tower.ext(), poly).flag("--poly")?;
            let rep = verify_subfield_minpoly(&tower, &h, *trials, *seed).flag("--poly")?;
            let code = if rep.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
            let out = emit(cli.json, &Json::verify(&rep), render::verify_text(&rep));
            println!("{out}");
            return Ok(code);
        }
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ")
}

fn join_lines(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join("\n")
}
