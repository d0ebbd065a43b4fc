//! `--verify FILE`: recomputes a JSON report from its input and rechecks
//! every witness divisibility of an irreducibility certificate.

use std::path::Path;

use ivpoly::factor::factor_with_cap;
use ivpoly::{
    build_d_sequence, is_member, parse_int_poly, split_exponent, splittings, valuation, IntPoly,
    IvpPoly, SubsetSpec, Valuation,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::commands::{self, parse_poly, Failure};
use crate::report::{to_bigint, Report, Witness};
use crate::{Command, Common};

pub fn verify_file(path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let report: Report = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: not a report: {e}", path.display())))?;
    verify(&report)
}

fn check(cond: bool, message: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::verify(format!(
            "VERIFICATION FAILED: {}",
            message()
        )))
    }
}

pub fn verify(report: &Report) -> Result<(), Failure> {
    let common = Common {
        set: report.input.subset.clone(),
        json: true,
        search_cap: None,
        degree_cap: None,
    };
    let poly = || {
        report
            .input
            .poly
            .clone()
            .ok_or_else(|| Failure::usage("report has no input polynomial"))
    };
    let command = match report.command.as_str() {
        "pi-seq" => {
            let pi = report.result["prime"]
                .as_u64()
                .ok_or_else(|| Failure::usage("missing prime"))?;
            let len = report.result["elements"].as_array().map_or(0, Vec::len);
            check(len > 0, || "empty pi-sequence".into())?;
            Command::PiSeq {
                pi,
                k: len - 1,
                common,
            }
        }
        "d-seq" => {
            let d = report
                .dsequence
                .as_ref()
                .ok_or_else(|| Failure::usage("missing dsequence"))?;
            let denominator = to_bigint(&d.d).ok_or_else(|| Failure::usage("bad denominator"))?;
            Command::DSeq {
                d: denominator,
                k: d.k,
                common,
            }
        }
        "member" => Command::Member {
            poly: poly()?,
            common,
        },
        "fixed-divisor" => Command::FixedDivisor {
            poly: poly()?,
            common,
        },
        "image-primitive" => Command::ImagePrimitive {
            poly: poly()?,
            common,
        },
        "oracle" => Command::Oracle {
            poly: poly()?,
            common,
        },
        "irreducible" => return verify_certificate(report),
        other => return Err(Failure::usage(format!("unknown command {other}"))),
    };
    let fresh = commands::run(&command)?;
    check(fresh.result == report.result, || {
        format!("result {} recomputes as {}", report.result, fresh.result)
    })?;
    check(fresh.dsequence == report.dsequence, || {
        "d-sequence differs on recomputation".into()
    })
}

fn verify_certificate(report: &Report) -> Result<(), Failure> {
    let f = parse_poly(report.input.poly.as_deref().unwrap_or_default())?;
    let s: SubsetSpec = report.input.subset.parse()?;
    match report.result["verdict"].as_str() {
        Some("REDUCIBLE") => verify_parts(&f, &s, &report.result["parts"]),
        Some("IRREDUCIBLE") => verify_witnesses(&f, &s, report),
        _ => Err(Failure::usage("certificate has no verdict")),
    }
}

fn verify_parts(f: &IvpPoly, s: &SubsetSpec, parts: &Value) -> Result<(), Failure> {
    let parts = parts
        .as_array()
        .filter(|p| p.len() == 2)
        .ok_or_else(|| Failure::usage("missing parts"))?;
    let parse = |v: &Value| parse_poly(v.as_str().unwrap_or_default());
    let (a, b) = (parse(&parts[0])?, parse(&parts[1])?);
    check(
        a.signed_numerator() * b.signed_numerator() == f.signed_numerator()
            && a.d() * b.d() == *f.d(),
        || format!("({a}) * ({b}) is not {f}"),
    )?;
    check(a.degree() > 0 && b.degree() > 0, || {
        "a part is a unit".into()
    })?;
    for part in [&a, &b] {
        check(is_member(part, s)?.is_member(), || {
            format!("{part} is not in Int(S, Z)")
        })?;
    }
    Ok(())
}

fn same_split(w: &Witness, g1: &IntPoly, g2: &IntPoly) -> Result<bool, Failure> {
    let a = parse_int_poly(&w.split[0])?;
    let b = parse_int_poly(&w.split[1])?;
    Ok((&a == g1 && &b == g2) || (&a == g2 && &b == g1))
}

fn verify_witnesses(f: &IvpPoly, s: &SubsetSpec, report: &Report) -> Result<(), Failure> {
    let factorization = factor_with_cap(f.g(), f.degree())?;
    let splits = splittings(&factorization);
    check(splits.len() == report.witnesses.len(), || {
        format!(
            "{} splittings but {} witnesses",
            splits.len(),
            report.witnesses.len()
        )
    })?;
    if f.d().is_one() {
        return Ok(());
    }
    let dseq = build_d_sequence(s, f.d(), f.degree())?;
    if let Some(reported) = &report.dsequence {
        let elements: Vec<Option<BigInt>> = reported.elements.iter().map(to_bigint).collect();
        let expected: Vec<Option<BigInt>> = dseq.elements().iter().cloned().map(Some).collect();
        check(elements == expected, || {
            "d-sequence differs on recomputation".into()
        })?;
    }
    for (w, (g1, g2)) in report.witnesses.iter().zip(&splits) {
        check(same_split(w, g1, g2)?, || {
            format!("witness split {:?} is not ({g1}, {g2})", w.split)
        })?;
        let p = w.pi;
        let v = match valuation(f.d(), p)? {
            Valuation::Finite(v) if v > 0 => v,
            _ => {
                return Err(Failure::verify(format!(
                    "VERIFICATION FAILED: {p} does not divide {}",
                    f.d()
                )))
            }
        };
        let h1 = parse_int_poly(&w.split[0])?;
        let h2 = parse_int_poly(&w.split[1])?;
        let e = split_exponent(&h1, p, &dseq)?;
        check(Some(e) == w.e.to_valuation(), || {
            format!("split exponent of {h1} at {p} is {e}")
        })?;
        let Valuation::Finite(e) = e else {
            return Err(Failure::verify(
                "VERIFICATION FAILED: infinite split exponent",
            ));
        };
        check(e < v && w.j <= h2.degree(), || {
            format!("witness at {p} is out of range")
        })?;
        let point = &dseq.elements()[w.j];
        let value = h2.eval(point);
        check(Some(point) == to_bigint(&w.point).as_ref(), || {
            format!("a_{} is {point}", w.j)
        })?;
        check(Some(&value) == to_bigint(&w.value).as_ref(), || {
            format!("{h2} at {point} is {value}")
        })?;
        let pv = num_traits::pow(BigInt::from(p), (v - e) as usize);
        check(!(&value % &pv).is_zero(), || {
            format!("{pv} divides {value}")
        })?;
    }
    Ok(())
}
