//! JSON report schema shared by every subcommand, and its text rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use ivpoly::sequences::DSequence;
use ivpoly::{Valuation, WitnessRecord};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("decimal integer")
}

pub fn numbers(ns: &[BigInt]) -> Vec<Number> {
    ns.iter().map(number).collect()
}

pub fn to_bigint(n: &Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}

/// A valuation in JSON: a number, or `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Finite(u32),
    Infinite(String),
}

impl From<Valuation> for Exponent {
    fn from(v: Valuation) -> Self {
        match v {
            Valuation::Finite(e) => Exponent::Finite(e),
            Valuation::Infinite => Exponent::Infinite("inf".into()),
        }
    }
}

impl Exponent {
    pub fn to_valuation(&self) -> Option<Valuation> {
        match self {
            Exponent::Finite(e) => Some(Valuation::Finite(*e)),
            Exponent::Infinite(s) if s == "inf" => Some(Valuation::Infinite),
            Exponent::Infinite(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub poly: Option<String>,
    pub subset: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub split: [String; 2],
    pub pi: u64,
    pub e: Exponent,
    pub j: usize,
    pub value: Number,
    pub point: Number,
    pub valuation: Exponent,
}

impl From<&WitnessRecord> for Witness {
    fn from(w: &WitnessRecord) -> Self {
        Witness {
            split: [w.g1.to_string(), w.g2.to_string()],
            pi: w.prime,
            e: w.e.into(),
            j: w.j,
            value: number(&w.value),
            point: number(&w.point),
            valuation: w.valuation.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DSequenceJson {
    pub d: Number,
    pub k: usize,
    pub elements: Vec<Number>,
    pub moduli: Vec<Number>,
}

impl From<&DSequence> for DSequenceJson {
    fn from(s: &DSequence) -> Self {
        DSequenceJson {
            d: number(s.d()),
            k: s.length(),
            elements: numbers(s.elements()),
            moduli: numbers(&s.moduli()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Input,
    pub result: Value,
    pub witnesses: Vec<Witness>,
    pub dsequence: Option<DSequenceJson>,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, input: Input, result: Value) -> Self {
        Report {
            command: command.to_string(),
            input,
            result,
            witnesses: Vec::new(),
            dsequence: None,
            version: VERSION.to_string(),
        }
    }
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let text: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", text.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
