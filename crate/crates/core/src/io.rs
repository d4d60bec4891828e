//! The `modseries/1` text format: `#key=value` header lines, then one
//! coefficient per line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::modular::ModSeries;
use crate::series::{Coeff, IntegerSeries, QPolySeries, RationalSeries, Series};

pub const FORMAT: &str = "modseries/1";

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesFile {
    Int(IntegerSeries),
    Rat(RationalSeries),
    QPoly(QPolySeries),
    Mod(ModSeries),
}

impl SeriesFile {
    pub fn domain(&self) -> &'static str {
        match self {
            SeriesFile::Int(_) => "int",
            SeriesFile::Rat(_) => "rat",
            SeriesFile::QPoly(_) => "qpoly",
            SeriesFile::Mod(_) => "mod",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            SeriesFile::Int(s) => s.order(),
            SeriesFile::Rat(s) => s.order(),
            SeriesFile::QPoly(s) => s.order(),
            SeriesFile::Mod(s) => s.order(),
        }
    }

    pub fn var(&self) -> &str {
        match self {
            SeriesFile::Int(s) => s.var(),
            SeriesFile::Rat(s) => s.var(),
            SeriesFile::QPoly(s) => s.var(),
            SeriesFile::Mod(s) => s.var(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            SeriesFile::Int(s) => exact_text(s, "int"),
            SeriesFile::Rat(s) => exact_text(s, "rat"),
            SeriesFile::QPoly(s) => exact_text(s, "qpoly"),
            SeriesFile::Mod(s) => {
                let mut out = header(s.var(), "mod", s.modulus(), s.order());
                for c in s.coeffs() {
                    writeln!(out, "{c}").unwrap();
                }
                out
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut head = BTreeMap::new();
        let mut body = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(kv) = line.strip_prefix('#') {
                if !body.is_empty() {
                    return Err(Error::Parse(format!("line {}: header after coefficients", i + 1)));
                }
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", i + 1)))?;
                head.insert(k.trim().to_string(), v.trim().to_string());
            } else {
                body.push(line);
            }
        }
        let get = |k: &str| head.get(k).map(String::as_str);
        match get("format") {
            Some(FORMAT) => {}
            Some(other) => return Err(Error::Parse(format!("unsupported format {other}"))),
            None => return Err(Error::Parse("missing #format header".into())),
        }
        let var = get("var").unwrap_or("w").to_string();
        let modulus: u64 = get("modulus")
            .unwrap_or("0")
            .parse()
            .map_err(|_| Error::Parse("modulus must be a nonnegative integer".into()))?;
        let n: usize = get("n")
            .ok_or_else(|| Error::Parse("missing #n header".into()))?
            .parse()
            .map_err(|_| Error::Parse("n must be a nonnegative integer".into()))?;
        if body.len() != n + 1 {
            return Err(Error::Parse(format!("expected {} coefficients, found {}", n + 1, body.len())));
        }
        let domain = get("domain").unwrap_or(if modulus > 0 { "mod" } else { "int" });
        if modulus > 0 && domain != "mod" {
            return Err(Error::Parse(format!("domain {domain} with nonzero modulus")));
        }
        match domain {
            "int" => Ok(SeriesFile::Int(parse_body(&var, &body)?)),
            "rat" => Ok(SeriesFile::Rat(parse_body(&var, &body)?)),
            "qpoly" => Ok(SeriesFile::QPoly(parse_body(&var, &body)?)),
            "mod" => {
                if modulus < 2 {
                    return Err(Error::Parse("domain mod needs modulus >= 2".into()));
                }
                let c = body
                    .iter()
                    .enumerate()
                    .map(|(i, t)| match t.parse::<u64>() {
                        Ok(v) if v < modulus => Ok(v),
                        _ => Err(Error::Parse(format!("coefficient {i}: expected a residue below {modulus}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SeriesFile::Mod(ModSeries::new(var, modulus, c)?))
            }
            other => Err(Error::Parse(format!("unknown domain {other}"))),
        }
    }

    /// The series as exact integers, if it is in that domain (rationals that are integral are accepted).
    pub fn into_integer(self) -> Result<IntegerSeries> {
        match self {
            SeriesFile::Int(s) => Ok(s),
            SeriesFile::Rat(s) => s.to_integer(),
            other => Err(Error::DomainMismatch(format!("expected an integer series, found {}", other.domain()))),
        }
    }

    pub fn into_rational(self) -> Result<RationalSeries> {
        match self {
            SeriesFile::Int(s) => Ok(s.to_rational()),
            SeriesFile::Rat(s) => Ok(s),
            other => Err(Error::DomainMismatch(format!("expected a rational series, found {}", other.domain()))),
        }
    }

    pub fn into_mod(self) -> Result<ModSeries> {
        match self {
            SeriesFile::Mod(s) => Ok(s),
            other => Err(Error::DomainMismatch(format!("expected a modular series, found {}", other.domain()))),
        }
    }
}

fn header(var: &str, domain: &str, modulus: u64, n: usize) -> String {
    format!("#format={FORMAT}\n#var={var}\n#domain={domain}\n#modulus={modulus}\n#n={n}\n")
}

fn exact_text<T: Coeff>(s: &Series<T>, domain: &str) -> String {
    let mut out = header(s.var(), domain, 0, s.order());
    for c in s.coeffs() {
        out.push_str(&c.to_text());
        out.push('\n');
    }
    out
}

fn parse_body<T: Coeff>(var: &str, body: &[&str]) -> Result<Series<T>> {
    let c = body
        .iter()
        .enumerate()
        .map(|(i, t)| T::parse_text(t).map_err(|e| Error::Parse(format!("coefficient {i}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(var, c))
}
