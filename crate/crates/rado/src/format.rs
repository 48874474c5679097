//! Text and JSON formats for groups, matrices, sets, colorings, certificates,
//! skeleton bases and translates.
//!
//! Arbitrary-precision values are written as decimal strings; small
//! structural integers (ranks, indices, residues) as JSON numbers.

use std::fs;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rado_core::ramsey::{SkeletonBasis, Translate};
use rado_core::{Coloring, ColoringScheme, ColumnsCertificate, ElementSet, GroupSpec, IntMatrix, Ring};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Reads `@path` arguments from disk; anything else is returned unchanged.
pub fn load_arg(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}"))),
        None => Ok(arg.to_owned()),
    }
}

fn parse_json(text: &str, what: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| CliError::usage(format!("{what}: {e}")))
}

fn json_u64(v: &Value, what: &str) -> CliResult<u64> {
    v.as_u64().ok_or_else(|| CliError::usage(format!("{what}: expected a nonnegative integer, got {v}")))
}

fn json_int(v: &Value, what: &str) -> CliResult<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integral JSON number")),
        Value::String(s) => s.trim().parse().map_err(|_| CliError::usage(format!("{what}: `{s}` is not an integer"))),
        _ => Err(CliError::usage(format!("{what}: expected an integer, got {v}"))),
    }
}

/// `Z4xZ2`, `Z4 x Z2`, `Z1` for the trivial group, or a JSON factor list `[4,2]`.
/// Factors need not be invariant factors; the result is normalized.
pub fn parse_group(text: &str) -> CliResult<GroupSpec> {
    let text = text.trim();
    let factors: Vec<u64> = if text.starts_with('[') {
        let v = parse_json(text, "group")?;
        let items = v.as_array().ok_or_else(|| CliError::usage("group: expected a JSON list"))?;
        items.iter().map(|x| json_u64(x, "group factor")).collect::<CliResult<_>>()?
    } else {
        text.split(['x', '×'])
            .map(|part| {
                let part = part.trim();
                part.strip_prefix('Z')
                    .or_else(|| part.strip_prefix('ℤ'))
                    .and_then(|n| n.trim().parse().ok())
                    .ok_or_else(|| CliError::usage(format!("group: `{part}` is not of the form Zn")))
            })
            .collect::<CliResult<_>>()?
    };
    let factors: Vec<u64> = factors.into_iter().filter(|&f| f != 1).collect();
    if factors.is_empty() {
        return Ok(GroupSpec::trivial());
    }
    Ok(GroupSpec::from_product(&factors)?)
}

/// `Z`, `Q`, or `Zn` for ℤ/nℤ.
pub fn parse_ring(text: &str) -> CliResult<Ring> {
    let ring = match text.trim() {
        "Z" | "ZZ" => Ring::Integers,
        "Q" | "QQ" => Ring::Rationals,
        other => {
            let n = other
                .strip_prefix('Z')
                .and_then(|n| n.trim_start_matches(['/', '_']).parse().ok())
                .ok_or_else(|| CliError::usage(format!("ring: `{other}` is not Z, Q or Zn")))?;
            Ring::ModN(n)
        }
    };
    Ok(ring.validate()?)
}

/// JSON rows of integers (numbers or decimal strings), possibly via `@file`.
pub fn parse_matrix(arg: &str) -> CliResult<IntMatrix> {
    let v = parse_json(&load_arg(arg)?, "matrix")?;
    let rows = v.as_array().ok_or_else(|| CliError::usage("matrix: expected a JSON list of rows"))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::usage("matrix: every row must be a JSON list"))?
                .iter()
                .map(|x| json_int(x, "matrix entry"))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(rows)?)
}

pub fn matrix_json(a: &IntMatrix) -> Vec<Vec<Value>> {
    a.to_rows().iter().map(|r| r.iter().map(int_value).collect()).collect()
}

/// Small integers as numbers, anything outside `i64` as a decimal string.
pub fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

fn parse_element(g: &GroupSpec, v: &Value) -> CliResult<Vec<u64>> {
    let items = v.as_array().ok_or_else(|| CliError::usage("element: expected a residue list"))?;
    let x: Vec<u64> = items.iter().map(|c| json_u64(c, "residue")).collect::<CliResult<_>>()?;
    g.check_element(&x)?;
    Ok(x)
}

fn set_from_value(g: &GroupSpec, v: &Value) -> CliResult<ElementSet> {
    let items = v.as_array().ok_or_else(|| CliError::usage("set: expected a JSON list"))?;
    if items.iter().all(Value::is_array) {
        let elements = items.iter().map(|x| parse_element(g, x)).collect::<CliResult<Vec<_>>>()?;
        Ok(ElementSet::from_elements(g, &elements)?)
    } else {
        let ranks = items.iter().map(|x| json_u64(x, "rank")).collect::<CliResult<Vec<_>>>()?;
        Ok(ElementSet::from_ranks(g, ranks)?)
    }
}

/// A list of ranks or of residue vectors.
pub fn parse_set(g: &GroupSpec, arg: &str) -> CliResult<ElementSet> {
    set_from_value(g, &parse_json(&load_arg(arg)?, "set")?)
}

/// A JSON list of sets, one per column.
pub fn parse_sets(g: &GroupSpec, arg: &str, columns: usize) -> CliResult<Vec<ElementSet>> {
    let v = parse_json(&load_arg(arg)?, "sets")?;
    let items = v.as_array().ok_or_else(|| CliError::usage("sets: expected a JSON list of sets"))?;
    if items.len() != columns {
        return Err(CliError::usage(format!("sets: need {columns} sets, got {}", items.len())));
    }
    items.iter().map(|s| set_from_value(g, s)).collect()
}

/// `by-order`, `random` (with `colors` and the run seed), or an explicit
/// JSON list of colors for ranks `1..|G|`, possibly via `@file`.
pub fn parse_coloring(g: &GroupSpec, arg: &str, colors: Option<u32>, seed: u64) -> CliResult<Coloring> {
    let scheme = match arg.trim() {
        "by-order" | "by_order" => ColoringScheme::ByOrder,
        "random" => {
            let colors = colors.ok_or_else(|| CliError::usage("random colorings need --colors"))?;
            ColoringScheme::Random { colors, seed }
        }
        other => {
            let v = parse_json(&load_arg(other)?, "coloring")?;
            let items = v.as_array().ok_or_else(|| CliError::usage("coloring: expected a JSON list of colors"))?;
            let values = items
                .iter()
                .map(|c| {
                    let c = json_u64(c, "color")?;
                    u32::try_from(c).map_err(|_| CliError::usage("color out of range"))
                })
                .collect::<CliResult<Vec<u32>>>()?;
            let r = colors.unwrap_or_else(|| values.iter().copied().max().unwrap_or(1));
            ColoringScheme::Explicit { colors: r, values }
        }
    };
    Ok(rado_core::count::make_coloring(g, &scheme)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub ring: String,
    pub order: Vec<usize>,
    pub breakpoints: Vec<usize>,
    /// `lambda[i][j]` multiplies the `j`-th column in order for block `i + 1`;
    /// entries are decimal `p` or `p/q` strings.
    pub lambda: Vec<Vec<String>>,
}

fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_rational(s: &str) -> CliResult<BigRational> {
    let bad = || CliError::usage(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl CertificateJson {
    pub fn from_certificate(c: &ColumnsCertificate) -> Self {
        CertificateJson {
            ring: c.ring().to_string(),
            order: c.order().to_vec(),
            breakpoints: c.breakpoints().to_vec(),
            lambda: c.lambda().iter().map(|l| l.iter().map(rational_string).collect()).collect(),
        }
    }

    pub fn to_certificate(&self) -> CliResult<ColumnsCertificate> {
        let lambda = self
            .lambda
            .iter()
            .map(|l| l.iter().map(|x| parse_rational(x)).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ColumnsCertificate::new(parse_ring(&self.ring)?, self.order.clone(), self.breakpoints.clone(), lambda)?)
    }
}

pub fn parse_certificate(arg: &str) -> CliResult<ColumnsCertificate> {
    let json: CertificateJson =
        serde_json::from_str(&load_arg(arg)?).map_err(|e| CliError::usage(format!("certificate: {e}")))?;
    json.to_certificate()
}

/// A JSON list of basis vectors of `ℤ_n^{dim}`; `dim` defaults to the vector length.
pub fn parse_basis(arg: &str, n: u64, dim: Option<usize>, strict: bool) -> CliResult<SkeletonBasis> {
    let v = parse_json(&load_arg(arg)?, "basis")?;
    let rows = v.as_array().ok_or_else(|| CliError::usage("basis: expected a JSON list of vectors"))?;
    let vectors = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::usage("basis: every vector must be a residue list"))?
                .iter()
                .map(|c| json_u64(c, "basis entry"))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let dim = dim.or_else(|| vectors.first().map(Vec::len)).ok_or_else(|| CliError::usage("basis: empty"))?;
    Ok(SkeletonBasis::new(n, dim, vectors, strict)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateJson {
    pub base: Vec<u64>,
    pub generators: Vec<Vec<u64>>,
}

impl TranslateJson {
    pub fn from_translate(t: &Translate) -> Self {
        TranslateJson { base: t.base().to_vec(), generators: t.generators().to_vec() }
    }

    pub fn to_translate(&self, g: &GroupSpec) -> CliResult<Translate> {
        Ok(Translate::new(g, self.base.clone(), &self.generators)?)
    }
}

pub fn parse_translate(g: &GroupSpec, arg: &str) -> CliResult<Translate> {
    let json: TranslateJson =
        serde_json::from_str(&load_arg(arg)?).map_err(|e| CliError::usage(format!("translate: {e}")))?;
    json.to_translate(g)
}

#[derive(Debug, Clone, Deserialize)]
struct ColoredTranslate {
    base: Vec<u64>,
    generators: Vec<Vec<u64>>,
    color: u32,
}

/// A JSON list of `{base, generators, color}` objects.
pub fn parse_translate_colors(g: &GroupSpec, arg: &str) -> CliResult<std::collections::BTreeMap<Translate, u32>> {
    let items: Vec<ColoredTranslate> =
        serde_json::from_str(&load_arg(arg)?).map_err(|e| CliError::usage(format!("translate colors: {e}")))?;
    items.into_iter().map(|c| Ok((Translate::new(g, c.base, &c.generators)?, c.color))).collect()
}

/// `p/q`, `p`, or a decimal such as `0.25`, as an exact rational.
pub fn parse_epsilon(text: &str) -> CliResult<BigRational> {
    let text = text.trim();
    if let Some((int, frac)) = text.split_once('.') {
        let digits = format!("{int}{frac}");
        let numer: BigInt = digits.parse().map_err(|_| CliError::usage(format!("`{text}` is not a decimal")))?;
        return Ok(BigRational::new(numer, BigInt::from(10u32).pow(frac.len() as u32)));
    }
    parse_rational(text)
}

pub fn rational_json(x: &BigRational) -> String {
    rational_string(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_parse_in_both_forms() {
        let a = parse_group("Z4xZ2").unwrap();
        let b = parse_group("[2, 4]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.invariant_factors(), &[2, 4]);
        assert_eq!(parse_group("Z6").unwrap().order(), 6);
        assert!(parse_group("Z1").unwrap().is_trivial());
        assert!(parse_group("Y4").is_err());
    }

    #[test]
    fn rings_parse() {
        assert_eq!(parse_ring("Z").unwrap(), Ring::Integers);
        assert_eq!(parse_ring("Q").unwrap(), Ring::Rationals);
        assert_eq!(parse_ring("Z6").unwrap(), Ring::ModN(6));
        assert!(parse_ring("Z1").is_err());
    }

    #[test]
    fn sets_accept_ranks_and_residues() {
        let g = parse_group("Z2xZ2").unwrap();
        let by_rank = parse_set(&g, "[1, 3]").unwrap();
        let by_residue = parse_set(&g, "[[0,1],[1,1]]").unwrap();
        assert_eq!(by_rank, by_residue);
    }

    #[test]
    fn epsilon_forms_agree() {
        assert_eq!(parse_epsilon("0.25").unwrap(), parse_epsilon("1/4").unwrap());
        assert!(parse_epsilon("1/0").is_err());
    }
}
