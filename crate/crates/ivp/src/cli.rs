//! Command execution behind the binary: parses an input expression, runs the
//! requested analysis, and renders a text or JSON report.
//!
//! Exit codes: 0 success, 1 property-false (for the boolean commands), 2
//! input or precondition error, 3 verification mismatch against the
//! brute-force oracle.

use std::collections::BTreeSet;
use std::fmt::Write as _;


use serde_json::{json, Value};

use crate::covers::{CoverInstance, CoveringFamily};
use crate::expr::{self, ParseError};
use crate::factorize::{
    factorizations, is_image_primitive, is_irreducible, is_irreducible_fast, normalize_factors,
    p_image_primitive_structural, to_ivp, Certificate, FactoredIvp, Factorization, Irreducibility,
    IvpError, IvpPart,
};
use crate::oracle::{self, OracleError};
use crate::polyz::{Poly, DEFAULT_DEGREE_BOUND};
use crate::residues::{root_set_mod_p, ResidueError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FALSE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_VERIFY_MISMATCH: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    FixedDivisor,
    Roots { prime: u64 },
    Covers { prime: u64 },
    ImagePrimitive,
    Irreducible,
    Factor,
    Lengths,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub json: bool,
    pub verify: bool,
    pub certificates: bool,
    pub max_degree: usize,
    pub window: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            verify: false,
            certificates: false,
            max_degree: DEFAULT_DEGREE_BOUND,
            window: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<IvpError> for Failure {
    fn from(e: IvpError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ResidueError> for Failure {
    fn from(e: ResidueError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Input(e.to_string())
    }
}

pub fn run(command: &Command, input: &str, opts: &Options) -> Outcome {
    match run_inner(command, input, opts) {
        Ok(outcome) => outcome,
        Err(Failure::Input(message)) => failure_outcome(EXIT_INPUT_ERROR, &message, opts),
        Err(Failure::Mismatch(message)) => failure_outcome(EXIT_VERIFY_MISMATCH, &message, opts),
    }
}

fn failure_outcome(code: i32, message: &str, opts: &Options) -> Outcome {
    let report = if opts.json {
        pretty(&json!({ "error": message, "exit_code": code }))
    } else {
        format!("error: {message}\n")
    };
    Outcome { code, report }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn run_inner(command: &Command, input: &str, opts: &Options) -> Result<Outcome, Failure> {
    match command {
        Command::FixedDivisor => fixed_divisor(input, opts),
        Command::Roots { prime } => roots(input, *prime, opts),
        Command::Covers { prime } => covers(input, *prime, opts),
        Command::ImagePrimitive => image_primitive(input, opts),
        Command::Irreducible => irreducible(input, opts),
        Command::Factor => factor(input, opts),
        Command::Lengths => lengths_cmd(input, opts),
    }
}

fn build_ivp(input: &str, opts: &Options) -> Result<FactoredIvp, Failure> {
    let parsed = expr::parse(input)?;
    Ok(to_ivp(&parsed.numerator_factors, &parsed.denominator, opts.max_degree)?)
}

fn default_window(g: &Poly) -> u64 {
    10 * (g.degree().unwrap_or(0) as u64 + 1)
}

fn fixed_divisor(input: &str, opts: &Options) -> Result<Outcome, Failure> {
    let parsed = expr::parse(input)?;
    let g = parsed.numerator_poly();
    let d = g.fixed_divisor();
    let mut verified_window = None;
    if opts.verify {
        let window = opts.window.unwrap_or_else(|| default_window(&g));
        let brute = oracle::brute_fixed_divisor(&g, window)?;
        if brute != d {
            return Err(Failure::Mismatch(format!(
                "fixed divisor mismatch: computed {d}, oracle window {window} gives {brute}"
            )));
        }
        verified_window = Some(window);
    }
    let report = if opts.json {
        pretty(&json!({
            "command": "fixed-divisor",
            "numerator": poly_json(&g),
            "fixed_divisor": d.to_string(),
            "verified_window": verified_window,
        }))
    } else {
        let mut out = format!("numerator: {g}\nfixed divisor: {d}\n");
        if let Some(w) = verified_window {
            let _ = writeln!(out, "verified against the window [{}, {}]", -(w as i64), w);
        }
        out
    };
    Ok(Outcome { code: EXIT_OK, report })
}

fn parsed_factors(input: &str, opts: &Options) -> Result<Vec<Poly>, Failure> {
    let parsed = expr::parse(input)?;
    let (_sign, _content, factors) = normalize_factors(&parsed.numerator_factors, opts.max_degree)?;
    Ok(factors)
}

fn roots(input: &str, prime: u64, opts: &Options) -> Result<Outcome, Failure> {
    let factors = parsed_factors(input, opts)?;
    let mut sets = Vec::with_capacity(factors.len());
    for g in &factors {
        sets.push(root_set_mod_p(g, prime)?);
    }
    let report = if opts.json {
        pretty(&json!({
            "command": "roots",
            "prime": prime,
            "factors": factors.iter().map(poly_json).collect::<Vec<_>>(),
            "root_sets": sets.iter().map(|s| s.members().iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = format!("prime: {prime}\n");
        for (i, (g, s)) in factors.iter().zip(&sets).enumerate() {
            let _ = writeln!(out, "g_{} = {g}: C = {}", i + 1, fmt_u64_set(s.members()));
        }
        out
    };
    Ok(Outcome { code: EXIT_OK, report })
}

fn covers(input: &str, prime: u64, opts: &Options) -> Result<Outcome, Failure> {
    let factors = parsed_factors(input, opts)?;
    let mut sets = Vec::with_capacity(factors.len());
    for g in &factors {
        sets.push(root_set_mod_p(g, prime)?);
    }
    let instance = CoverInstance::new(
        prime,
        sets.iter().enumerate().map(|(i, s)| (i, s.members().clone())).collect(),
    );
    let minimal: Vec<BTreeSet<usize>> = instance.minimal_covers().into_iter().collect();
    let report = if opts.json {
        pretty(&json!({
            "command": "covers",
            "prime": prime,
            "factors": factors.iter().map(poly_json).collect::<Vec<_>>(),
            "root_sets": sets.iter().map(|s| s.members().iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
            "minimal_covers": minimal.iter().map(indices_1based).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = format!("prime: {prime}\n");
        for (i, (g, s)) in factors.iter().zip(&sets).enumerate() {
            let _ = writeln!(out, "g_{} = {g}: C = {}", i + 1, fmt_u64_set(s.members()));
        }
        if minimal.is_empty() {
            let _ = writeln!(
                out,
                "no {prime}-covering exists ({prime} does not divide the fixed divisor of the product)"
            );
        } else {
            let shown: Vec<String> = minimal.iter().map(fmt_idx_set).collect();
            let _ = writeln!(out, "minimal {prime}-coverings: {}", shown.join(", "));
        }
        out
    };
    Ok(Outcome { code: EXIT_OK, report })
}

fn image_primitive(input: &str, opts: &Options) -> Result<Outcome, Failure> {
    let f = build_ivp(input, opts)?;
    let verdict = is_image_primitive(&f);
    let fixed = f.numerator_fixed_divisor();
    let denominator = f.denominator();
    let mut witnesses = Vec::new();
    for &p in f.denom_primes() {
        let (ok, witness) = p_image_primitive_structural(&f, p)?;
        witnesses.push((p, ok, witness));
    }
    let report = if opts.json {
        pretty(&json!({
            "command": "image-primitive",
            "input": input_json(&f),
            "image_primitive": verdict,
            "numerator_fixed_divisor": fixed.to_string(),
            "denominator": denominator.to_string(),
            "witnesses": witnesses.iter().map(|(p, ok, w)| json!({
                "prime": p,
                "p_image_primitive": ok,
                "witness": w.map(|(i, j)| json!({ "factor_index": i + 1, "residue": j })),
            })).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = format!("f = {f}\n");
        if verdict {
            let _ = writeln!(
                out,
                "image primitive: fixed divisor of numerator equals the denominator {denominator}"
            );
        } else {
            let _ = writeln!(
                out,
                "not image primitive: fixed divisor of numerator is {fixed} (denominator {denominator})"
            );
        }
        for (p, ok, witness) in &witnesses {
            match witness {
                Some((i, j)) => {
                    let _ = writeln!(
                        out,
                        "p = {p}: witness residue j = {j}, unique simple factor g_{} = {}",
                        i + 1,
                        f.factors()[*i]
                    );
                }
                None => {
                    debug_assert!(!ok);
                    let _ = writeln!(
                        out,
                        "p = {p}: no residue class has exactly one factor with a simple root"
                    );
                }
            }
        }
        out
    };
    let code = if verdict { EXIT_OK } else { EXIT_PROPERTY_FALSE };
    Ok(Outcome { code, report })
}

fn irreducible(input: &str, opts: &Options) -> Result<Outcome, Failure> {
    let f = build_ivp(input, opts)?;
    let verdict = is_irreducible(&f)?;
    let fast = is_irreducible_fast(&f)?;
    if opts.verify {
        let brute = oracle::brute_is_irreducible(&f)?;
        if brute != verdict.is_irreducible() {
            return Err(Failure::Mismatch(format!(
                "irreducibility mismatch: covering criterion says {}, oracle says {brute}",
                verdict.is_irreducible()
            )));
        }
    }
    let report = if opts.json {
        pretty(&json!({
            "command": "irreducible",
            "input": input_json(&f),
            "irreducible": verdict.is_irreducible(),
            "corollary_prime": match &verdict {
                Irreducibility::Irreducible { corollary_prime } => *corollary_prime,
                _ => None,
            },
            "witness": witness_json(&verdict),
            "verified": opts.verify,
        }))
    } else {
        let mut out = format!("f = {f}\n");
        out.push_str(&verdict_text(&f, &verdict, fast));
        if opts.verify {
            out.push_str("verified against the brute-force oracle\n");
        }
        out
    };
    let code = if verdict.is_irreducible() { EXIT_OK } else { EXIT_PROPERTY_FALSE };
    Ok(Outcome { code, report })
}

fn verdict_text(f: &FactoredIvp, verdict: &Irreducibility, fast: Option<bool>) -> String {
    match verdict {
        Irreducibility::Irreducible { corollary_prime } => match (corollary_prime, fast) {
            (Some(p), _) => {
                format!("irreducible (unique minimal {p}-covering equals I)\n")
            }
            _ => "irreducible (every family of minimal coverings spans all factors and does not split)\n"
                .to_string(),
        },
        Irreducibility::Unit => "not irreducible: the element is a unit\n".to_string(),
        Irreducibility::ReducibleOverZ => {
            "reducible: a product of two or more integer irreducibles\n".to_string()
        }
        Irreducibility::FamilyMissesFactors { family, outside } => {
            let leftovers: Vec<String> = outside
                .iter()
                .map(|&i| format!("g_{} = {}", i + 1, f.factors()[i]))
                .collect();
            format!(
                "reducible: family {} leaves {} aside\n",
                family_text(family),
                leftovers.join(", ")
            )
        }
        Irreducibility::FamilySplits { family, components } => {
            let blocks: Vec<String> = components.iter().map(fmt_u64_set).collect();
            format!(
                "reducible: family {} splits into prime blocks {}\n",
                family_text(family),
                blocks.join(" | ")
            )
        }
    }
}

fn verify_factorizations(f: &FactoredIvp, facts: &[Factorization]) -> Result<(), Failure> {
    let brute = oracle::brute_factorizations(f)?;
    if brute != facts {
        return Err(Failure::Mismatch(format!(
            "factorization mismatch: covering algorithm finds {}, oracle finds {}",
            facts.len(),
            brute.len()
        )));
    }
    Ok(())
}

fn factor(input: &str, opts: &Options) -> Result<Outcome, Failure> {
    let f = build_ivp(input, opts)?;
    let facts = factorizations(&f)?;
    if opts.verify {
        verify_factorizations(&f, &facts)?;
    }
    let report = if opts.json {
        pretty(&json!({
            "command": "factor",
            "input": input_json(&f),
            "count": facts.len(),
            "factorizations": facts
                .iter()
                .map(|fact| factorization_json(fact, opts.certificates))
                .collect::<Vec<_>>(),
            "verified": opts.verify,
        }))
    } else {
        let mut out = format!("f = {f}\n");
        let _ = writeln!(
            out,
            "{} essentially different factorization{}:",
            facts.len(),
            if facts.len() == 1 { "" } else { "s" }
        );
        for fact in &facts {
            let _ = writeln!(out, "  {fact}");
            if opts.certificates {
                match fact.certificate() {
                    Some(cert) => {
                        let _ = writeln!(out, "    family: {}", family_text(&cert.family));
                        let blocks: Vec<String> = cert.partition.iter().map(fmt_u64_set).collect();
                        let _ = writeln!(out, "    partition: {}", blocks.join(" | "));
                    }
                    None => {
                        let _ = writeln!(out, "    (trivial factorization, no certificate)");
                    }
                }
            }
        }
        if opts.verify {
            out.push_str("verified against the brute-force oracle\n");
        }
        out
    };
    Ok(Outcome { code: EXIT_OK, report })
}

fn lengths_cmd(input: &str, opts: &Options) -> Result<Outcome, Failure> {
    let f = build_ivp(input, opts)?;
    let facts = factorizations(&f)?;
    if opts.verify {
        verify_factorizations(&f, &facts)?;
    }
    let mut lens: Vec<usize> = facts.iter().map(Factorization::len).collect();
    lens.sort_unstable();
    let report = if opts.json {
        pretty(&json!({
            "command": "lengths",
            "input": input_json(&f),
            "lengths": lens,
            "verified": opts.verify,
        }))
    } else {
        let shown: Vec<String> = lens.iter().map(|l| l.to_string()).collect();
        format!("f = {f}\nlengths: {{{}}}\n", shown.join(", "))
    };
    Ok(Outcome { code: EXIT_OK, report })
}

fn poly_json(g: &Poly) -> Value {
    Value::Array(g.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn input_json(f: &FactoredIvp) -> Value {
    json!({
        "sign": f.sign(),
        "numerator_factors": f.factors().iter().map(poly_json).collect::<Vec<_>>(),
        "denominator_primes": f.denom_primes(),
        "content_primes": f.content_primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn part_json(part: &IvpPart) -> Value {
    json!({
        "sign": 1,
        "numerator_factors": part.numerator().iter().map(poly_json).collect::<Vec<_>>(),
        "denominator_primes": part.denom_primes(),
    })
}

fn certificate_json(cert: &Certificate) -> Value {
    json!({
        "family": family_json(&cert.family),
        "partition": cert.partition.iter().map(|b| b.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn factorization_json(fact: &Factorization, with_certificate: bool) -> Value {
    let mut obj = json!({
        "unit": fact.unit(),
        "length": fact.len(),
        "parts": fact.parts().iter().map(part_json).collect::<Vec<_>>(),
    });
    if with_certificate {
        obj["certificate"] = match fact.certificate() {
            Some(cert) => certificate_json(cert),
            None => Value::Null,
        };
    }
    obj
}

fn witness_json(verdict: &Irreducibility) -> Value {
    match verdict {
        Irreducibility::Irreducible { .. } => Value::Null,
        Irreducibility::Unit => json!({ "kind": "unit" }),
        Irreducibility::ReducibleOverZ => json!({ "kind": "reducible_over_z" }),
        Irreducibility::FamilyMissesFactors { family, outside } => json!({
            "kind": "family_misses_factors",
            "family": family_json(family),
            "outside": indices_1based(outside),
        }),
        Irreducibility::FamilySplits { family, components } => json!({
            "kind": "family_splits",
            "family": family_json(family),
            "components": components.iter().map(|b| b.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}

fn family_json(family: &CoveringFamily) -> Value {
    let mut map = serde_json::Map::new();
    for (p, cover) in family.as_map() {
        map.insert(p.to_string(), json!(indices_1based(cover)));
    }
    Value::Object(map)
}

fn family_text(family: &CoveringFamily) -> String {
    let parts: Vec<String> = family
        .as_map()
        .iter()
        .map(|(p, cover)| format!("p={p} -> {}", fmt_idx_set(cover)))
        .collect();
    format!("{{{}}}", parts.join("; "))
}

fn indices_1based(set: &BTreeSet<usize>) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn fmt_u64_set(set: &BTreeSet<u64>) -> String {
    let parts: Vec<String> = set.iter().map(|j| j.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_idx_set(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = indices_1based(set).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
