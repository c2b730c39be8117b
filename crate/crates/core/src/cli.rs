//! Command line front end: subcommand dispatch, deterministic seeding, and
//! machine-readable reports.
//!
//! Results go to the output stream, diagnostics to the error stream. Exit
//! codes: 0 definite answer, 1 usage/parse error, 2 precondition
//! violation, 3 undecided within the configured cap. Structured output is
//! line-delimited JSON under the schema tag `galkit/1`, with every
//! arbitrary-precision value rendered as a decimal string.

use crate::commensurable::{
    is_commensurable, Commensurability, TORSION_CAP,
};
use crate::construct::{
    bauer_combine, construct_symmetric, furtwaengler_search, least_primitive_root,
    schur_alternating, verify_certificate, verify_furtwaengler, ConstructionCertificate,
    PatternPrescription, SchurFamily, SchurMode,
};
use crate::elliptic::{torsion_order, CurvePoint, TorsionResult, WeierstrassCurve};
use crate::frobenius::{cycle_type_at, primes_below, sample_cycle_types, PrimeClass, SampleReport};
use crate::groups::{identify_group, GroupTable};
use crate::identity::{same_field, FieldVerdict, MixedResolventSet, NotIdenticalEvidence, TschirnhausMap};
use crate::parse::{parse_poly, print_poly};
use crate::pell::{cf_expand, CfVerdict};
use crate::poly::{BigRat, IntPoly, RatPoly};
use crate::speiser::speiser_order;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;

pub const SCHEMA: &str = "galkit/1";

/// Exit codes as documented on the command line interface.
pub mod exit_code {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const PRECONDITION: i32 = 2;
    pub const UNDECIDED: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "galkit",
    about = "Exact computational Galois theory workbench",
    version
)]
pub struct Cli {
    /// Output format: human or json (line-delimited, schema-versioned)
    #[arg(long, global = true, default_value = "human")]
    pub format: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor pattern (degrees and multiplicities) of a polynomial mod p
    Pattern { poly: String, prime: u64 },
    /// Sample Frobenius cycle types over a range or list of primes
    Sample {
        poly: String,
        /// either "<bound" or a comma-separated list of primes
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Identify the Galois group (degrees 2..=5) from sampled cycle types
    Identify {
        poly: String,
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Period of the recurrence y(m+n) = -a_1 y(m+n-1) - ... mod p and the
    /// Frobenius order at p
    Speiser { poly: String, prime: u64 },
    /// Construct polynomials with prescribed group evidence
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Search integer vectors with circulant determinant +-p satisfying
    /// the primitive-root congruence
    Furtwaengler {
        p: u64,
        #[arg(long)]
        bound: i64,
    },
    /// Decide identity of the fields generated by two monic irreducible
    /// cubics or quartics, recovering the map when identical
    SameField { f: String, g: String },
    /// Continued fraction of sqrt(R) with quasi-period detection and
    /// functional unit extraction
    Pell {
        r: String,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Exact order of the point (x, y) on y^2 = x^3 + a x + b
    Torsion {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = TORSION_CAP)]
        cap: u64,
    },
    /// Decide commensurability (torsion of the infinity class) for a
    /// genus-1 quartic y^2 = R(x)
    Commensurable { r: String },
    /// Re-verify the certificate embedded in a structured report
    Verify { report: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Certified symmetric-group polynomial of degree n
    Sn {
        n: usize,
        /// three primes p,q,r
        #[arg(long)]
        primes: String,
        #[arg(long)]
        seed: u64,
    },
    /// Alternating-group family member of degree n
    An {
        n: usize,
        /// odd-degree family behind the verification gate
        #[arg(long, default_value_t = false)]
        provisional: bool,
    },
    /// CRT construction from a pattern prescription file
    Bauer {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn ok(stdout: String) -> RunOutcome {
        RunOutcome {
            exit_code: exit_code::OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: String) -> RunOutcome {
        RunOutcome {
            exit_code: code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

fn is_json(format: &str) -> bool {
    format == "json"
}

/// Executes a parsed command line. Pure with respect to the process: all
/// output is returned, nothing is printed here.
pub fn run(cli: &Cli) -> RunOutcome {
    let json_out = is_json(&cli.format);
    match &cli.command {
        Command::Pattern { poly, prime } => cmd_pattern(poly, *prime, json_out),
        Command::Sample {
            poly,
            primes,
            workers,
        } => cmd_sample(poly, primes, *workers, json_out),
        Command::Identify {
            poly,
            primes,
            workers,
        } => cmd_identify(poly, primes, *workers, json_out),
        Command::Speiser { poly, prime } => cmd_speiser(poly, *prime, json_out),
        Command::Construct { kind } => match kind {
            ConstructKind::Sn { n, primes, seed } => cmd_construct_sn(*n, primes, *seed, json_out),
            ConstructKind::An { n, provisional } => cmd_construct_an(*n, *provisional, json_out),
            ConstructKind::Bauer { spec, seed } => cmd_construct_bauer(spec, *seed, json_out),
        },
        Command::Furtwaengler { p, bound } => cmd_furtwaengler(*p, *bound, json_out),
        Command::SameField { f, g } => cmd_same_field(f, g, json_out),
        Command::Pell { r, max_steps } => cmd_pell(r, *max_steps, json_out),
        Command::Torsion { a, b, x, y, cap } => cmd_torsion(a, b, x, y, *cap, json_out),
        Command::Commensurable { r } => cmd_commensurable(r, json_out),
        Command::Verify { report } => cmd_verify(report, json_out),
    }
}

fn parse_poly_arg(text: &str) -> Result<(RatPoly, String), RunOutcome> {
    match parse_poly(text) {
        Ok(expr) => Ok((expr.poly, expr.var)),
        Err(e) => Err(RunOutcome::fail(
            exit_code::USAGE,
            format!("cannot parse polynomial {text:?}: {e}\n"),
        )),
    }
}

fn parse_int_poly_arg(text: &str) -> Result<IntPoly, RunOutcome> {
    let (p, _) = parse_poly_arg(text)?;
    p.to_int().ok_or_else(|| {
        RunOutcome::fail(
            exit_code::USAGE,
            format!("polynomial {text:?} must have integer coefficients\n"),
        )
    })
}

fn parse_rat_arg(text: &str) -> Result<BigRat, RunOutcome> {
    text.parse::<BigRat>().map_err(|e| {
        RunOutcome::fail(
            exit_code::USAGE,
            format!("cannot parse rational {text:?}: {e}\n"),
        )
    })
}

/// Primes spec: "<bound" for all primes below, otherwise a comma list.
fn parse_primes_spec(spec: &str) -> Result<Vec<u64>, RunOutcome> {
    let bad = |msg: String| RunOutcome::fail(exit_code::USAGE, msg);
    if let Some(bound) = spec.strip_prefix('<') {
        let bound: u64 = bound
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid prime bound in {spec:?}\n")))?;
        let primes = primes_below(bound);
        if primes.is_empty() {
            return Err(bad(format!("no primes below {bound}\n")));
        }
        Ok(primes)
    } else {
        let mut out = Vec::new();
        for part in spec.split(',') {
            let p: u64 = part
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid prime {part:?} in list\n")))?;
            if !crate::finite::is_prime_u64(p) {
                return Err(bad(format!("{p} is not prime\n")));
            }
            out.push(p);
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(bad("empty prime list\n".into()));
        }
        Ok(out)
    }
}

fn rat_str(v: &BigRat) -> String {
    if v.denom() == &crate::poly::int(1) {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn emit(json_out: bool, value: Value, human: String) -> RunOutcome {
    if json_out {
        RunOutcome::ok(format!("{value}\n"))
    } else {
        RunOutcome::ok(human)
    }
}

fn prime_class_json(class: &PrimeClass) -> Value {
    match class {
        PrimeClass::Type(t) => json!({"class": "type", "cycle_type": t.parts()}),
        PrimeClass::Ramified => json!({"class": "ramified"}),
        PrimeClass::LeadingDrop => json!({"class": "leading-coefficient-drop"}),
    }
}

fn sample_report_json(report: &SampleReport) -> Value {
    let freqs: Vec<Value> = report
        .frequencies
        .iter()
        .map(|(t, c)| json!({"cycle_type": t.parts(), "count": c}))
        .collect();
    json!({
        "polynomial": report.polynomial,
        "degree": report.degree,
        "unramified": report.unramified,
        "ramified": report.ramified,
        "leading_drops": report.leading_drops,
        "frequencies": freqs,
    })
}

fn cmd_pattern(poly: &str, prime: u64, json_out: bool) -> RunOutcome {
    let f = match parse_int_poly_arg(poly) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let class = match cycle_type_at(&f, prime) {
        Ok(c) => c,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let pattern = crate::finite::ModPoly::from_int_poly(&f, prime)
        .and_then(|fp| crate::finite::distinct_degree_pattern(&fp))
        .ok();
    let value = json!({
        "schema": SCHEMA,
        "command": "pattern",
        "input": {"poly": f.to_string(), "prime": prime},
        "result": prime_class_json(&class),
        "pattern": pattern.as_ref().map(|p| p.entries().to_vec()),
    });
    let human = match &class {
        PrimeClass::Type(t) => format!("{} mod {}: cycle type {}\n", f, prime, t),
        PrimeClass::Ramified => format!("{} mod {}: ramified\n", f, prime),
        PrimeClass::LeadingDrop => {
            format!("{} mod {}: leading coefficient drops\n", f, prime)
        }
    };
    emit(json_out, value, human)
}

fn cmd_sample(poly: &str, primes: &str, workers: usize, json_out: bool) -> RunOutcome {
    let f = match parse_int_poly_arg(poly) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let prime_list = match parse_primes_spec(primes) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let report = match sample_cycle_types(&f, &prime_list, workers) {
        Ok(r) => r,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "sample",
        "input": {"poly": f.to_string(), "primes": primes},
        "result": sample_report_json(&report),
    });
    let mut human = format!(
        "{}: {} unramified primes, {} ramified\n",
        f,
        report.unramified,
        report.ramified.len()
    );
    for (t, c) in &report.frequencies {
        human.push_str(&format!(
            "  {}: {} ({:.4})\n",
            t,
            c,
            *c as f64 / report.unramified.max(1) as f64
        ));
    }
    emit(json_out, value, human)
}

fn cmd_identify(poly: &str, primes: &str, workers: usize, json_out: bool) -> RunOutcome {
    let f = match parse_int_poly_arg(poly) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let prime_list = match parse_primes_spec(primes) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let report = match sample_cycle_types(&f, &prime_list, workers) {
        Ok(r) => r,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let table = GroupTable::standard();
    let id = match identify_group(&report, &table) {
        Ok(id) => id,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let candidates: Vec<Value> = id
        .candidates
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "order": c.order,
                "chi_square": c.chi_square,
                "densities": c.densities,
            })
        })
        .collect();
    let value = json!({
        "schema": SCHEMA,
        "command": "identify",
        "input": {"poly": f.to_string(), "primes": primes},
        "sample": sample_report_json(&report),
        "result": {
            "candidates": candidates,
            "excluded": id.excluded,
            "unique": id.unique,
        },
    });
    let mut human = format!("{}: candidates after {} samples:\n", f, id.samples);
    for c in &id.candidates {
        human.push_str(&format!(
            "  {} (order {}, chi^2 = {:.3})\n",
            c.name, c.order, c.chi_square
        ));
    }
    if !id.excluded.is_empty() {
        human.push_str(&format!("  excluded: {}\n", id.excluded.join(", ")));
    }
    emit(json_out, value, human)
}

fn cmd_speiser(poly: &str, prime: u64, json_out: bool) -> RunOutcome {
    let f = match parse_int_poly_arg(poly) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let r = match speiser_order(&f, prime) {
        Ok(r) => r,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "speiser",
        "input": {"poly": f.to_string(), "prime": prime},
        "result": {"u": r.u, "order": r.frobenius_order, "prefix": r.prefix},
    });
    let human = format!(
        "{} at p = {}: period u = {}, Frobenius order = {}\n",
        f, prime, r.u, r.frobenius_order
    );
    emit(json_out, value, human)
}

fn certificate_json(cert: &ConstructionCertificate) -> Value {
    json!({
        "polynomial": cert.polynomial,
        "coefficients": cert.coefficients,
        "degree": cert.degree,
        "group": cert.group_claim,
        "prescribed_patterns": cert.prescribed_patterns,
        "irreducibility_witness": cert.irreducibility_witness,
        "evidence": sample_report_json(&cert.evidence),
        "seed": cert.seed,
    })
}

fn cmd_construct_sn(n: usize, primes: &str, seed: u64, json_out: bool) -> RunOutcome {
    let parts: Vec<u64> = match primes
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
    {
        Ok(v) => v,
        Err(_) => {
            return RunOutcome::fail(
                exit_code::USAGE,
                format!("--primes expects three comma-separated primes, got {primes:?}\n"),
            )
        }
    };
    if parts.len() != 3 {
        return RunOutcome::fail(
            exit_code::USAGE,
            format!("--primes expects exactly three primes, got {}\n", parts.len()),
        );
    }
    let cert = match construct_symmetric(n, (parts[0], parts[1], parts[2]), seed) {
        Ok(c) => c,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "construct-sn",
        "input": {"n": n, "primes": parts, "seed": seed},
        "certificate": certificate_json(&cert),
    });
    let human = format!(
        "{} with group {} (patterns at {:?}, irreducible mod {})\n",
        cert.polynomial,
        cert.group_claim,
        cert.prescribed_patterns
            .iter()
            .map(|(p, _)| *p)
            .collect::<Vec<_>>(),
        cert.irreducibility_witness
    );
    emit(json_out, value, human)
}

fn schur_json(fam: &SchurFamily) -> Value {
    json!({
        "polynomial": fam.polynomial,
        "coefficients": fam.coefficients,
        "n": fam.n,
        "mode": fam.mode,
        "discriminant_is_square": fam.discriminant_is_square,
    })
}

fn cmd_construct_an(n: usize, provisional: bool, json_out: bool) -> RunOutcome {
    let mode = if provisional {
        SchurMode::Provisional
    } else {
        SchurMode::Certified
    };
    let fam = match schur_alternating(n, mode) {
        Ok(f) => f,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "construct-an",
        "input": {"n": n, "provisional": provisional},
        "family": schur_json(&fam),
    });
    let human = format!("{} ({} alternating family, A{})\n", fam.polynomial, fam.mode, n);
    emit(json_out, value, human)
}

fn cmd_construct_bauer(spec: &PathBuf, seed: u64, json_out: bool) -> RunOutcome {
    let text = match std::fs::read_to_string(spec) {
        Ok(t) => t,
        Err(e) => {
            return RunOutcome::fail(
                exit_code::USAGE,
                format!("cannot read {}: {e}\n", spec.display()),
            )
        }
    };
    #[derive(serde::Deserialize)]
    struct SpecFile {
        degree: usize,
        patterns: Vec<(u64, Vec<usize>)>,
    }
    let parsed: SpecFile = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => {
            return RunOutcome::fail(
                exit_code::USAGE,
                format!("invalid prescription file: {e}\n"),
            )
        }
    };
    let prescription = PatternPrescription {
        patterns: parsed.patterns,
        degree: parsed.degree,
        seed,
    };
    let f = match bauer_combine(&prescription) {
        Ok(f) => f,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "construct-bauer",
        "input": {
            "degree": prescription.degree,
            "patterns": prescription.patterns,
            "seed": seed,
        },
        "polynomial": f.to_string(),
        "coefficients": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    let human = format!("{f}\n");
    emit(json_out, value, human)
}

fn cmd_furtwaengler(p: u64, bound: i64, json_out: bool) -> RunOutcome {
    let sols = match furtwaengler_search(p, bound) {
        Ok(s) => s,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let g = least_primitive_root(p);
    let value = json!({
        "schema": SCHEMA,
        "command": "furtwaengler",
        "input": {"p": p, "bound": bound},
        "primitive_root": g,
        "count": sols.len(),
        "solutions": sols,
    });
    let mut human = format!(
        "p = {p}, bound = {bound}, primitive root {g}: {} solution(s)\n",
        sols.len()
    );
    for e in &sols {
        human.push_str(&format!("  {e:?}\n"));
    }
    emit(json_out, value, human)
}

fn map_json(map: &TschirnhausMap) -> Vec<String> {
    map.coeffs.iter().map(rat_str).collect()
}

fn resolvents_json(set: &MixedResolventSet) -> Value {
    match set {
        MixedResolventSet::Cubic { z, u } => {
            json!({"kind": "cubic", "z": rat_str(z), "u": rat_str(u)})
        }
        MixedResolventSet::Quartic {
            resolvent_cubic,
            resolvent_cubic_bar,
            zeta,
            u,
            ubar,
            pairing_quartic,
            t,
            theta,
            z_cap,
        } => json!({
            "kind": "quartic",
            "resolvent_cubic": resolvent_cubic.to_string(),
            "resolvent_cubic_bar": resolvent_cubic_bar.to_string(),
            "zeta": rat_str(zeta),
            "u": rat_str(u),
            "ubar": rat_str(ubar),
            "pairing_quartic": pairing_quartic.to_string(),
            "t": rat_str(t),
            "theta": rat_str(theta),
            "z": rat_str(z_cap),
        }),
    }
}

fn cmd_same_field(f_text: &str, g_text: &str, json_out: bool) -> RunOutcome {
    let (f, _) = match parse_poly_arg(f_text) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let (g, _) = match parse_poly_arg(g_text) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let verdict = match same_field(&f, &g) {
        Ok(v) => v,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    match verdict {
        FieldVerdict::Identical(w) => {
            let value = json!({
                "schema": SCHEMA,
                "command": "same-field",
                "input": {"f": f.to_string(), "g": g.to_string()},
                "verdict": "identical",
                "map": map_json(&w.map),
                "witness": {
                    "k": w.k_used,
                    "depressed_moments": w.depressed_moments.iter().map(rat_str).collect::<Vec<_>>(),
                    "resolvents": resolvents_json(&w.resolvents),
                },
            });
            let human = format!(
                "identical; map y = {}\n",
                print_poly(&w.map.as_poly(), "x")
            );
            emit(json_out, value, human)
        }
        FieldVerdict::NotIdentical(ev) => {
            let evidence = match &ev {
                NotIdenticalEvidence::NonSquareDiscriminantProduct { product } => json!({
                    "kind": "non-square-discriminant-product",
                    "product": rat_str(product),
                }),
                NotIdenticalEvidence::NoCertifyingRationalRoot { candidates_tried } => json!({
                    "kind": "no-certifying-rational-root",
                    "candidates_tried": candidates_tried,
                }),
            };
            let value = json!({
                "schema": SCHEMA,
                "command": "same-field",
                "input": {"f": f.to_string(), "g": g.to_string()},
                "verdict": "not-identical",
                "evidence": evidence,
            });
            emit(json_out, value, "not identical\n".to_string())
        }
    }
}

fn cmd_pell(r_text: &str, max_steps: usize, json_out: bool) -> RunOutcome {
    let r = match parse_int_poly_arg(r_text) {
        Ok(r) => r,
        Err(e) => return e,
    };
    let report = match cf_expand(&r, max_steps) {
        Ok(rep) => rep,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    match &report.verdict {
        CfVerdict::Periodic {
            preperiod,
            quasi_period,
            unit,
        } => {
            let value = json!({
                "schema": SCHEMA,
                "command": "pell",
                "input": {"r": r.to_string(), "max_steps": max_steps},
                "periodic": true,
                "preperiod": preperiod,
                "quasi_period": quasi_period,
                "unit": {
                    "p": unit.p.to_string(),
                    "q": unit.q.to_string(),
                    "norm": rat_str(&unit.norm),
                },
                "partial_quotients": report
                    .partial_quotients
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>(),
            });
            let human = format!(
                "periodic with quasi-period {}; unit p = {}, q = {}, norm = {}\n",
                quasi_period,
                unit.p,
                unit.q,
                rat_str(&unit.norm)
            );
            emit(json_out, value, human)
        }
        CfVerdict::NoPeriodWithinCap { cap, growth } => {
            let growth_json: Vec<Value> = growth
                .iter()
                .map(|g| json!({"step": g.step, "q_degree": g.q_degree, "height_bits": g.height_bits}))
                .collect();
            let value = json!({
                "schema": SCHEMA,
                "command": "pell",
                "input": {"r": r.to_string(), "max_steps": max_steps},
                "periodic": false,
                "cap": cap,
                "growth": growth_json,
            });
            let human = format!("no period within {cap} steps; state heights grow\n");
            let mut out = emit(json_out, value, human);
            out.exit_code = exit_code::UNDECIDED;
            out
        }
    }
}

fn cmd_torsion(a: &str, b: &str, x: &str, y: &str, cap: u64, json_out: bool) -> RunOutcome {
    let (a, b, x, y) = match (
        parse_rat_arg(a),
        parse_rat_arg(b),
        parse_rat_arg(x),
        parse_rat_arg(y),
    ) {
        (Ok(a), Ok(b), Ok(x), Ok(y)) => (a, b, x, y),
        (Err(e), ..) | (_, Err(e), ..) | (_, _, Err(e), _) | (_, _, _, Err(e)) => return e,
    };
    let curve = match WeierstrassCurve::new(a, b) {
        Ok(c) => c,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let point = CurvePoint::affine(x, y);
    let result = match torsion_order(&curve, &point, cap) {
        Ok(r) => r,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    match result {
        TorsionResult::Order(m) => {
            let value = json!({
                "schema": SCHEMA,
                "command": "torsion",
                "input": {"a": rat_str(&curve.a), "b": rat_str(&curve.b),
                           "x": point_x(&point), "y": point_y(&point), "cap": cap},
                "result": {"order": m},
            });
            emit(json_out, value, format!("torsion of order {m}\n"))
        }
        TorsionResult::NonTorsionWithinCap { cap } => {
            // with cap >= 16 the classical bound on rational torsion makes
            // this a definite verdict over Q
            let definite = cap >= TORSION_CAP;
            let value = json!({
                "schema": SCHEMA,
                "command": "torsion",
                "input": {"a": rat_str(&curve.a), "b": rat_str(&curve.b),
                           "x": point_x(&point), "y": point_y(&point), "cap": cap},
                "result": {"non_torsion_within_cap": cap, "definite_over_q": definite},
            });
            let human = if definite {
                "non-torsion (definite over Q: rational torsion orders are at most 12)\n"
            } else {
                "no torsion order found within the cap\n"
            };
            let mut out = emit(json_out, value, human.to_string());
            if !definite {
                out.exit_code = exit_code::UNDECIDED;
            }
            out
        }
    }
}

fn point_x(p: &CurvePoint) -> String {
    match p {
        CurvePoint::Affine(x, _) => rat_str(x),
        CurvePoint::Infinity => "infinity".into(),
    }
}

fn point_y(p: &CurvePoint) -> String {
    match p {
        CurvePoint::Affine(_, y) => rat_str(y),
        CurvePoint::Infinity => "infinity".into(),
    }
}

fn cmd_commensurable(r_text: &str, json_out: bool) -> RunOutcome {
    let r = match parse_int_poly_arg(r_text) {
        Ok(r) => r,
        Err(e) => return e,
    };
    let report = match is_commensurable(&r) {
        Ok(rep) => rep,
        Err(e) => return RunOutcome::fail(exit_code::PRECONDITION, format!("{e}\n")),
    };
    let curve_json = json!({
        "a": rat_str(&report.model.curve.a),
        "b": rat_str(&report.model.curve.b),
        "marked_point": [point_x(&report.model.marked_point), point_y(&report.model.marked_point)],
        "map": report.model.description,
    });
    match &report.verdict {
        Commensurability::Commensurable { torsion_order, cf } => {
            let (quasi_period, unit) = match &cf.verdict {
                CfVerdict::Periodic {
                    quasi_period, unit, ..
                } => (*quasi_period, unit.clone()),
                _ => unreachable!("commensurable implies periodic"),
            };
            let value = json!({
                "schema": SCHEMA,
                "command": "commensurable",
                "input": {"r": r.to_string()},
                "verdict": "commensurable",
                "torsion_order": torsion_order,
                "quasi_period": quasi_period,
                "unit": {
                    "p": unit.p.to_string(),
                    "q": unit.q.to_string(),
                    "norm": rat_str(&unit.norm),
                },
                "curve": curve_json,
            });
            let human = format!(
                "commensurable: marked point has torsion order {torsion_order}; quasi-period {quasi_period}\n"
            );
            emit(json_out, value, human)
        }
        Commensurability::NonCommensurable { oracle_trace } => {
            let trace: Vec<Value> = oracle_trace
                .iter()
                .map(|p| json!([point_x(p), point_y(p)]))
                .collect();
            let value = json!({
                "schema": SCHEMA,
                "command": "commensurable",
                "input": {"r": r.to_string()},
                "verdict": "non-commensurable",
                "oracle_trace": trace,
                "curve": curve_json,
            });
            let human =
                "non-commensurable: the marked point is non-torsion over Q\n".to_string();
            emit(json_out, value, human)
        }
    }
}

/// Re-verifies a structured report produced by any certificate-bearing
/// subcommand.
fn cmd_verify(path: &PathBuf, json_out: bool) -> RunOutcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return RunOutcome::fail(
                exit_code::USAGE,
                format!("cannot read {}: {e}\n", path.display()),
            )
        }
    };
    // reports are line-delimited; verify every line
    let mut checked = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => {
                return RunOutcome::fail(exit_code::USAGE, format!("invalid report line: {e}\n"))
            }
        };
        if let Err(msg) = verify_report_line(&value) {
            let out = json!({
                "schema": SCHEMA,
                "command": "verify",
                "verified": false,
                "reason": msg,
            });
            return RunOutcome {
                exit_code: exit_code::PRECONDITION,
                stdout: if json_out {
                    format!("{out}\n")
                } else {
                    format!("verification FAILED: {msg}\n")
                },
                stderr: String::new(),
            };
        }
        checked += 1;
    }
    let value = json!({
        "schema": SCHEMA,
        "command": "verify",
        "verified": true,
        "reports_checked": checked,
    });
    emit(json_out, value, format!("verified {checked} report(s)\n"))
}

fn verify_report_line(value: &Value) -> Result<(), String> {
    let getstr = |v: &Value, k: &str| -> Result<String, String> {
        v.get(k)
            .and_then(|x| x.as_str())
            .map(|s| s.to_string())
            .ok_or_else(|| format!("missing field {k}"))
    };
    if value.get("schema").and_then(|s| s.as_str()) != Some(SCHEMA) {
        return Err("unknown schema".into());
    }
    let command = getstr(value, "command")?;
    let rerun = |cli: Cli| -> Result<Value, String> {
        let out = run(&cli);
        if out.exit_code != exit_code::OK && out.exit_code != exit_code::UNDECIDED {
            return Err(format!("re-run failed: {}", out.stderr.trim()));
        }
        serde_json::from_str(out.stdout.trim()).map_err(|e| e.to_string())
    };
    let input = value.get("input").cloned().unwrap_or(Value::Null);
    let cli = match command.as_str() {
        "pattern" => Cli {
            format: "json".into(),
            command: Command::Pattern {
                poly: getstr(&input, "poly")?,
                prime: input
                    .get("prime")
                    .and_then(|v| v.as_u64())
                    .ok_or("missing prime")?,
            },
        },
        "sample" | "identify" => Cli {
            format: "json".into(),
            command: if command == "sample" {
                Command::Sample {
                    poly: getstr(&input, "poly")?,
                    primes: getstr(&input, "primes")?,
                    workers: 1,
                }
            } else {
                Command::Identify {
                    poly: getstr(&input, "poly")?,
                    primes: getstr(&input, "primes")?,
                    workers: 1,
                }
            },
        },
        "speiser" => Cli {
            format: "json".into(),
            command: Command::Speiser {
                poly: getstr(&input, "poly")?,
                prime: input
                    .get("prime")
                    .and_then(|v| v.as_u64())
                    .ok_or("missing prime")?,
            },
        },
        "construct-sn" => {
            // structural re-verification of the embedded certificate plus
            // a deterministic re-run
            let cert_value = value.get("certificate").ok_or("missing certificate")?;
            verify_construct_sn(&input, cert_value)?;
            return Ok(());
        }
        "construct-an" => Cli {
            format: "json".into(),
            command: Command::Construct {
                kind: ConstructKind::An {
                    n: input.get("n").and_then(|v| v.as_u64()).ok_or("missing n")? as usize,
                    provisional: input
                        .get("provisional")
                        .and_then(|v| v.as_bool())
                        .unwrap_or(false),
                },
            },
        },
        "construct-bauer" => {
            return verify_construct_bauer(&input, value);
        }
        "furtwaengler" => {
            return verify_furtwaengler_report(&input, value);
        }
        "same-field" => {
            return verify_same_field_report(&input, value);
        }
        "pell" => Cli {
            format: "json".into(),
            command: Command::Pell {
                r: getstr(&input, "r")?,
                max_steps: input
                    .get("max_steps")
                    .and_then(|v| v.as_u64())
                    .ok_or("missing max_steps")? as usize,
            },
        },
        "torsion" => Cli {
            format: "json".into(),
            command: Command::Torsion {
                a: getstr(&input, "a")?,
                b: getstr(&input, "b")?,
                x: getstr(&input, "x")?,
                y: getstr(&input, "y")?,
                cap: input.get("cap").and_then(|v| v.as_u64()).unwrap_or(TORSION_CAP),
            },
        },
        "commensurable" => Cli {
            format: "json".into(),
            command: Command::Commensurable {
                r: getstr(&input, "r")?,
            },
        },
        other => return Err(format!("cannot verify reports for command {other:?}")),
    };
    let recomputed = rerun(cli)?;
    if &recomputed == value {
        Ok(())
    } else {
        Err("recomputed report differs from the stored one".into())
    }
}

fn verify_construct_sn(input: &Value, cert_value: &Value) -> Result<(), String> {
    let cert = ConstructionCertificate {
        polynomial: cert_value
            .get("polynomial")
            .and_then(|v| v.as_str())
            .ok_or("missing polynomial")?
            .to_string(),
        coefficients: serde_json::from_value(
            cert_value.get("coefficients").cloned().ok_or("missing coefficients")?,
        )
        .map_err(|e| e.to_string())?,
        degree: cert_value
            .get("degree")
            .and_then(|v| v.as_u64())
            .ok_or("missing degree")? as usize,
        group_claim: cert_value
            .get("group")
            .and_then(|v| v.as_str())
            .ok_or("missing group")?
            .to_string(),
        prescribed_patterns: serde_json::from_value(
            cert_value
                .get("prescribed_patterns")
                .cloned()
                .ok_or("missing prescribed_patterns")?,
        )
        .map_err(|e| e.to_string())?,
        irreducibility_witness: cert_value
            .get("irreducibility_witness")
            .and_then(|v| v.as_u64())
            .ok_or("missing irreducibility_witness")?,
        evidence: {
            // recompute the evidence from scratch rather than trusting the
            // stored copy; verify_certificate compares them
            let f: Vec<String> = serde_json::from_value(
                cert_value.get("coefficients").cloned().unwrap(),
            )
            .map_err(|e| e.to_string())?;
            let poly = IntPoly::new(
                f.iter()
                    .map(|s| s.parse().map_err(|_| "bad coefficient".to_string()))
                    .collect::<Result<_, _>>()?,
            );
            sample_cycle_types(&poly, &primes_below(200), 1).map_err(|e| e.to_string())?
        },
        seed: input.get("seed").and_then(|v| v.as_u64()).unwrap_or(0),
    };
    // the stored evidence must match the recomputed one
    let stored = cert_value.get("evidence").ok_or("missing evidence")?;
    if stored != &sample_report_json(&cert.evidence) {
        return Err("stored sampling evidence does not reproduce".into());
    }
    verify_certificate(&cert)
}

fn verify_construct_bauer(input: &Value, value: &Value) -> Result<(), String> {
    let degree = input.get("degree").and_then(|v| v.as_u64()).ok_or("missing degree")? as usize;
    let patterns: Vec<(u64, Vec<usize>)> = serde_json::from_value(
        input.get("patterns").cloned().ok_or("missing patterns")?,
    )
    .map_err(|e| e.to_string())?;
    let seed = input.get("seed").and_then(|v| v.as_u64()).ok_or("missing seed")?;
    let f = bauer_combine(&PatternPrescription {
        patterns,
        degree,
        seed,
    })
    .map_err(|e| e.to_string())?;
    let stored = value
        .get("polynomial")
        .and_then(|v| v.as_str())
        .ok_or("missing polynomial")?;
    if f.to_string() != stored {
        return Err("re-running the construction gives a different polynomial".into());
    }
    Ok(())
}

fn verify_furtwaengler_report(input: &Value, value: &Value) -> Result<(), String> {
    let p = input.get("p").and_then(|v| v.as_u64()).ok_or("missing p")?;
    let bound = input
        .get("bound")
        .and_then(|v| v.as_i64())
        .ok_or("missing bound")?;
    let sols: Vec<Vec<i64>> =
        serde_json::from_value(value.get("solutions").cloned().ok_or("missing solutions")?)
            .map_err(|e| e.to_string())?;
    let g = least_primitive_root(p);
    for e in &sols {
        if !verify_furtwaengler(p, g, e) {
            return Err(format!("vector {e:?} fails re-verification"));
        }
    }
    let rerun = furtwaengler_search(p, bound).map_err(|e| e.to_string())?;
    if rerun != sols {
        return Err("search re-run disagrees with the stored solutions".into());
    }
    Ok(())
}

fn verify_same_field_report(input: &Value, value: &Value) -> Result<(), String> {
    let f = parse_poly(
        input.get("f").and_then(|v| v.as_str()).ok_or("missing f")?,
    )
    .map_err(|e| e.to_string())?
    .poly;
    let g = parse_poly(
        input.get("g").and_then(|v| v.as_str()).ok_or("missing g")?,
    )
    .map_err(|e| e.to_string())?
    .poly;
    match value.get("verdict").and_then(|v| v.as_str()) {
        Some("identical") => {
            let map_strs: Vec<String> =
                serde_json::from_value(value.get("map").cloned().ok_or("missing map")?)
                    .map_err(|e| e.to_string())?;
            let coeffs: Result<Vec<BigRat>, _> =
                map_strs.iter().map(|s| s.parse::<BigRat>()).collect();
            let map = TschirnhausMap {
                coeffs: coeffs.map_err(|e| format!("bad map coefficient: {e}"))?,
            };
            if map.certifies(&f, &g) {
                Ok(())
            } else {
                Err("stored map does not certify g(map(x)) = 0 mod f".into())
            }
        }
        Some("not-identical") => {
            match same_field(&f, &g).map_err(|e| e.to_string())? {
                FieldVerdict::NotIdentical(_) => Ok(()),
                FieldVerdict::Identical(_) => {
                    Err("re-run decides identical, report says not".into())
                }
            }
        }
        _ => Err("missing verdict".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(args: &[&str]) -> RunOutcome {
        let cli = Cli::try_parse_from(args).expect("valid args");
        run(&cli)
    }

    #[test]
    fn speiser_structured_output() {
        let out = run_cmd(&["galkit", "--format", "json", "speiser", "x^2+1", "3"]);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["result"]["u"], 4);
        assert_eq!(v["result"]["order"], 2);
    }

    #[test]
    fn same_field_structured_output() {
        let out = run_cmd(&[
            "galkit",
            "--format",
            "json",
            "same-field",
            "x^3+x+3",
            "x^3-3x^2+4x+1",
        ]);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["verdict"], "identical");
        assert_eq!(v["map"], json!(["1", "1", "0"]));
    }

    #[test]
    fn pell_structured_output() {
        let out = run_cmd(&["galkit", "--format", "json", "pell", "x^4+1"]);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["periodic"], true);
        assert_eq!(v["quasi_period"], 1);
        assert_eq!(v["unit"]["p"], "x^2");
        assert_eq!(v["unit"]["q"], "1");
        assert_eq!(v["unit"]["norm"], "-1");
    }

    #[test]
    fn exit_codes() {
        // parse error -> 1
        let out = run_cmd(&["galkit", "pattern", "x^-1", "3"]);
        assert_eq!(out.exit_code, 1);
        assert!(out.stderr.contains("offset 2"));
        // precondition violation -> 2
        let out = run_cmd(&["galkit", "speiser", "x^2-1", "2"]);
        assert_eq!(out.exit_code, 2);
        // undecided within cap -> 3
        let out = run_cmd(&["galkit", "--format", "json", "pell", "x^4+2x^3+3x^2+x+5", "--max-steps", "6"]);
        assert_eq!(out.exit_code, 3, "{}", out.stdout);
        // torsion with a small cap on a non-torsion point -> 3
        let out = run_cmd(&["galkit", "torsion", "0", "-2", "3", "5", "--cap", "5"]);
        assert_eq!(out.exit_code, 3);
        // same point with the default cap: definite -> 0
        let out = run_cmd(&["galkit", "torsion", "0", "-2", "3", "5"]);
        assert_eq!(out.exit_code, 0);
    }

    #[test]
    fn sampling_is_worker_independent() {
        let a = run_cmd(&[
            "galkit", "--format", "json", "sample", "x^3-x-1", "--primes", "<500",
            "--workers", "1",
        ]);
        let b = run_cmd(&[
            "galkit", "--format", "json", "sample", "x^3-x-1", "--primes", "<500",
            "--workers", "7",
        ]);
        assert_eq!(a, b);
        assert_eq!(a.exit_code, 0);
    }

    #[test]
    fn construct_sn_deterministic_and_verifiable() {
        let args = [
            "galkit", "--format", "json", "construct", "sn", "4", "--primes", "2,3,5",
            "--seed", "7",
        ];
        let a = run_cmd(&args);
        let b = run_cmd(&args);
        assert_eq!(a, b);
        assert_eq!(a.exit_code, 0);
        // verify round trip through a file
        let dir = std::env::temp_dir().join("galkit-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sn4.json");
        std::fs::write(&path, &a.stdout).unwrap();
        let v = run_cmd(&["galkit", "--format", "json", "verify", path.to_str().unwrap()]);
        assert_eq!(v.exit_code, 0, "verify failed: {}", v.stdout);
    }

    #[test]
    fn verify_detects_tampering() {
        let out = run_cmd(&[
            "galkit", "--format", "json", "same-field", "x^3-x-1", "x^3-x-1",
        ]);
        let tampered = out.stdout.replace("\"1\",\"0\"", "\"1\",\"1\"");
        assert_ne!(tampered, out.stdout, "tampering changed the report");
        let dir = std::env::temp_dir().join("galkit-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tampered.json");
        std::fs::write(&path, &tampered).unwrap();
        let v = run_cmd(&["galkit", "verify", path.to_str().unwrap()]);
        assert_eq!(v.exit_code, 2);
    }

    #[test]
    fn identify_v4_quartic() {
        let out = run_cmd(&[
            "galkit", "--format", "json", "identify", "x^4+1", "--primes", "<100",
        ]);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["result"]["unique"], true);
        assert_eq!(v["result"]["candidates"][0]["name"], "V4");
    }

    #[test]
    fn bauer_via_spec_file() {
        let dir = std::env::temp_dir().join("galkit-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bauer.json");
        std::fs::write(
            &path,
            r#"{"degree": 3, "patterns": [[2, [3]], [3, [2, 1]]]}"#,
        )
        .unwrap();
        let out = run_cmd(&[
            "galkit", "--format", "json", "construct", "bauer", "--spec",
            path.to_str().unwrap(), "--seed", "5",
        ]);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        let report_path = dir.join("bauer-report.json");
        std::fs::write(&report_path, &out.stdout).unwrap();
        let v = run_cmd(&["galkit", "verify", report_path.to_str().unwrap()]);
        assert_eq!(v.exit_code, 0, "{}", v.stdout);
    }

    #[test]
    fn commensurable_pell_instance() {
        let out = run_cmd(&["galkit", "--format", "json", "commensurable", "x^4+1"]);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["verdict"], "commensurable");
        assert_eq!(v["torsion_order"], 2);
        assert_eq!(v["unit"]["p"], "x^2");
    }
}
