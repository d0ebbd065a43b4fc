use std::fmt::Write as _;

use ivpoly::factor::DEFAULT_DEGREE_CAP;
use ivpoly::irreducibility::{
    is_irreducible_prime_d_with, is_irreducible_with, oracle_is_irreducible_with,
};
use ivpoly::ivp::{fixed_divisor_with, image_divisor, is_member_with};
use ivpoly::sequences::build_d_sequence_with;
use ivpoly::{build_pi_sequence, parse_polynomial, Error, IvpPoly, Options, SubsetSpec, Verdict};
use serde_json::{json, Value};

use crate::report::{join, number, numbers, table, Input, Report, Witness};
use crate::{Command, Common};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ENGINE: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_ENGINE
            },
            message: e.to_string(),
        }
    }
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::PiSeq { common, .. }
            | Command::DSeq { common, .. }
            | Command::Member { common, .. }
            | Command::FixedDivisor { common, .. }
            | Command::ImagePrimitive { common, .. }
            | Command::Irreducible { common, .. }
            | Command::Oracle { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::PiSeq { .. } => "pi-seq",
            Command::DSeq { .. } => "d-seq",
            Command::Member { .. } => "member",
            Command::FixedDivisor { .. } => "fixed-divisor",
            Command::ImagePrimitive { .. } => "image-primitive",
            Command::Irreducible { .. } => "irreducible",
            Command::Oracle { .. } => "oracle",
        }
    }

    fn poly(&self) -> Option<&str> {
        match self {
            Command::Member { poly, .. }
            | Command::FixedDivisor { poly, .. }
            | Command::ImagePrimitive { poly, .. }
            | Command::Irreducible { poly, .. }
            | Command::Oracle { poly, .. } => Some(poly),
            _ => None,
        }
    }
}

/// Parse errors, including a polynomial that reduces to zero, are usage
/// errors.
pub fn parse_poly(text: &str) -> Result<IvpPoly, Failure> {
    parse_polynomial(text).map_err(|e| Failure::usage(e.to_string()))
}

pub fn parse_subset(common: &Common) -> Result<SubsetSpec, Failure> {
    let s: SubsetSpec = common.set.parse()?;
    Ok(match common.search_cap {
        Some(cap) => s.with_search_cap(cap),
        None => s,
    })
}

fn options(common: &Common) -> Options {
    Options {
        degree_cap: common.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP),
        ..Options::default()
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Irreducible => "IRREDUCIBLE",
        Verdict::Reducible => "REDUCIBLE",
    }
}

pub fn run(command: &Command) -> Result<Report, Failure> {
    let common = command.common();
    let s = parse_subset(common)?;
    let f = command.poly().map(parse_poly).transpose()?;
    let input = Input {
        poly: f.as_ref().map(ToString::to_string),
        subset: s.to_string(),
    };
    let options = options(common);
    let mut report = Report::new(command.name(), input, Value::Null);
    match command {
        Command::PiSeq { pi, k, .. } => {
            let seq = build_pi_sequence(&s, *pi, *k)?;
            report.result = json!({
                "prime": pi,
                "elements": numbers(seq.elements()),
                "step_valuations": seq.step_valuations(),
                "exponent": crate::report::Exponent::from(seq.step_exponent(*k)),
            });
        }
        Command::DSeq { d, k, .. } => {
            let dseq = build_d_sequence_with(&s, d, *k, options.execution)?;
            report.result = json!({ "elements": numbers(dseq.elements()) });
            report.dsequence = Some((&dseq).into());
        }
        Command::Member { .. } => {
            let f = f.expect("member takes a polynomial");
            let m = is_member_with(&f, &s, &options)?;
            report.result = match &m.witness {
                None => json!({ "verdict": "MEMBER", "witness": null }),
                Some(w) => json!({
                    "verdict": "NOT A MEMBER",
                    "witness": {
                        "element": number(&w.element),
                        "value": number(&w.element_value),
                        "prime": w.prime,
                    },
                }),
            };
            report.dsequence = m.dsequence.as_ref().map(Into::into);
        }
        Command::FixedDivisor { .. } => {
            let f = f.expect("fixed-divisor takes a polynomial");
            let value = fixed_divisor_with(f.g(), &s, options.execution)?;
            report.result = json!({ "value": number(&value) });
        }
        Command::ImagePrimitive { .. } => {
            let f = f.expect("image-primitive takes a polynomial");
            let divisor = image_divisor(&f, &s, &options)?;
            report.result = json!({
                "verdict": num_traits::One::is_one(&divisor),
                "divisor": number(&divisor),
            });
        }
        Command::Irreducible { prime_d, .. } => {
            let f = f.expect("irreducible takes a polynomial");
            let cert = if *prime_d {
                is_irreducible_prime_d_with(&f, &s, &options)?
            } else {
                is_irreducible_with(&f, &s, &options)?
            };
            let factors: Vec<Value> = cert
                .factorization
                .factors
                .iter()
                .map(|(g, m)| json!([g.to_string(), m]))
                .collect();
            report.result = json!({
                "verdict": verdict_text(cert.verdict),
                "parts": cert.parts.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
                "factors": factors,
            });
            report.witnesses = cert.witnesses.iter().map(Witness::from).collect();
            report.dsequence = cert.dsequence.as_ref().map(Into::into);
        }
        Command::Oracle { .. } => {
            let f = f.expect("oracle takes a polynomial");
            let verdict = oracle_is_irreducible_with(&f, &s, &options)?;
            report.result = json!({ "verdict": verdict_text(verdict) });
        }
    }
    Ok(report)
}

fn values(v: &Value) -> String {
    match v {
        Value::Array(items) => join(&items.iter().map(plain).collect::<Vec<_>>()),
        other => plain(other),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_text(report: &Report) -> String {
    let r = &report.result;
    let subset = &report.input.subset;
    let poly = report.input.poly.as_deref().unwrap_or_default();
    let mut out = String::new();
    match report.command.as_str() {
        "pi-seq" => {
            let _ = writeln!(
                out,
                "{}-sequence over {subset}: {}",
                plain(&r["prime"]),
                values(&r["elements"])
            );
            let _ = writeln!(out, "step valuations: {}", values(&r["step_valuations"]));
        }
        "d-seq" => {
            let d = report
                .dsequence
                .as_ref()
                .expect("d-seq report carries its sequence");
            let _ = writeln!(out, "{}-sequence over {subset}: {}", d.d, join(&d.elements));
            let _ = writeln!(out, "moduli: {}", join(&d.moduli));
        }
        "member" => match &r["witness"] {
            Value::Null => out.push_str("MEMBER\n"),
            w => {
                let _ = writeln!(out, "NOT A MEMBER, witness a={}", plain(&w["element"]));
                let _ = writeln!(
                    out,
                    "  g({}) = {}",
                    plain(&w["element"]),
                    plain(&w["value"])
                );
            }
        },
        "fixed-divisor" => {
            let _ = writeln!(out, "{}", plain(&r["value"]));
        }
        "image-primitive" => {
            if r["verdict"] == Value::Bool(true) {
                out.push_str("IMAGE PRIMITIVE\n");
            } else {
                let _ = writeln!(
                    out,
                    "NOT IMAGE PRIMITIVE, every value divisible by {}",
                    plain(&r["divisor"])
                );
            }
        }
        "irreducible" => {
            let _ = writeln!(out, "{}", plain(&r["verdict"]));
            if let Value::Array(parts) = &r["parts"] {
                let _ = writeln!(
                    out,
                    "  {poly} = ({}) * ({})",
                    plain(&parts[0]),
                    plain(&parts[1])
                );
            }
            if !report.witnesses.is_empty() {
                let rows: Vec<Vec<String>> = report
                    .witnesses
                    .iter()
                    .map(|w| {
                        vec![
                            w.split[0].clone(),
                            w.split[1].clone(),
                            w.pi.to_string(),
                            plain(&serde_json::to_value(&w.e).unwrap()),
                            w.j.to_string(),
                            w.point.to_string(),
                            w.value.to_string(),
                        ]
                    })
                    .collect();
                out.push_str(&table(
                    &["g1", "g2", "pi", "e", "j", "a_j", "g2(a_j)"],
                    &rows,
                ));
            }
        }
        "oracle" => {
            let _ = writeln!(out, "{}", plain(&r["verdict"]));
        }
        _ => unreachable!("unknown command {}", report.command),
    }
    out
}
