//! JSON file formats.
//!
//! Each type is (de)serialized through a plain mirror struct; semantic
//! validation happens in `TryFrom`, and its errors name the offending
//! field.
//!
//! Rationals are strings `"p/q"` (or `"p"`), polynomials are strings in the
//! [`Poly::parse`] grammar over `x1..xn`, and index keys are 1-based lists
//! such as `"[1,2]"`.

use std::collections::BTreeMap;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{BilinearOp, OneOneTensor, Vector};
use crate::cartan::{PolyBivector, PolyForm, PolyOneOne, PolyVectorField};
use crate::courant_fd::{BlockTensor, CourantStructure, LieBialgebra, Pairing, Subspace};
use crate::courant_tm::{CourantTensor, DiracGraph};
use crate::poly::rational::{format_rational, parse_rational};
use crate::poly::{Poly, Rational};
use crate::{Error, Result};

macro_rules! via_raw {
    ($ty:ty, $raw:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                <$raw>::from(self).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let raw = <$raw>::deserialize(d)?;
                <$ty>::try_from(raw).map_err(de::Error::custom)
            }
        }
    };
}

/// Reads a document from JSON text. Syntax errors report line and column,
/// semantic errors the path of the offending field.
pub fn from_str<T: de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.strip_prefix("invalid document: ").unwrap_or(&msg);
        Error::Format(msg.to_string())
    })
}

/// Pretty JSON text with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn context<T>(what: impl FnOnce() -> String, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Format(format!("{}: {e}", what())))
}

fn rational(s: &str, what: impl FnOnce() -> String) -> Result<Rational> {
    context(what, parse_rational(s))
}

fn poly(s: &str, n: usize, what: impl FnOnce() -> String) -> Result<Poly> {
    context(what, Poly::parse(s, n))
}

fn rational_rows(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn parse_rational_rows(m: &[Vec<String>], name: &str) -> Result<Vec<Vec<Rational>>> {
    m.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| rational(s, || format!("{name}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn check_square(m: &[Vec<String>], dim: usize, name: &str) -> Result<()> {
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(Error::Format(format!("{name} must be a {dim}×{dim} matrix")));
    }
    Ok(())
}

fn rational_matrix(m: &[Vec<String>], dim: usize, name: &str) -> Result<OneOneTensor> {
    check_square(m, dim, name)?;
    OneOneTensor::new(parse_rational_rows(m, name)?)
}

fn poly_rows(m: &PolyOneOne) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(Poly::to_string).collect()).collect()
}

fn poly_matrix(m: &[Vec<String>], n: usize, name: &str) -> Result<PolyOneOne> {
    check_square(m, n, name)?;
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| poly(s, n, || format!("{name}[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<Vec<Vec<Poly>>>>()?;
    PolyOneOne::new(rows)
}

fn index_key(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_index_key(key: &str, n: usize) -> Result<Vec<usize>> {
    let bad = || Error::Format(format!("bad component key {key:?}: expected a list like \"[1,2]\""));
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|k| k.strip_suffix(']'))
        .ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|p| {
            let i: usize = p.trim().parse().map_err(|_| bad())?;
            if i == 0 || i > n {
                return Err(Error::Format(format!(
                    "component key {key:?}: index {i} outside 1..={n}"
                )));
            }
            Ok(i - 1)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBilinear {
    dim: usize,
    c: Vec<Vec<Vec<String>>>,
}

impl From<&BilinearOp> for RawBilinear {
    fn from(op: &BilinearOp) -> Self {
        RawBilinear {
            dim: op.dim(),
            c: op.constants().iter().map(|m| rational_rows(m)).collect(),
        }
    }
}

impl TryFrom<RawBilinear> for BilinearOp {
    type Error = Error;

    fn try_from(raw: RawBilinear) -> Result<Self> {
        let d = raw.dim;
        if raw.c.len() != d || raw.c.iter().flatten().any(|r| r.len() != d) || raw.c.iter().any(|m| m.len() != d) {
            return Err(Error::Format(format!("c must be a {d}×{d}×{d} array")));
        }
        let c = raw
            .c
            .iter()
            .enumerate()
            .map(|(i, m)| parse_rational_rows(m, &format!("c[{i}]")))
            .collect::<Result<_>>()?;
        BilinearOp::new(c)
    }
}

via_raw!(BilinearOp, RawBilinear);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    dim: usize,
    m: Vec<Vec<String>>,
}

impl From<&OneOneTensor> for RawTensor {
    fn from(t: &OneOneTensor) -> Self {
        RawTensor {
            dim: t.dim(),
            m: rational_rows(t.rows()),
        }
    }
}

impl TryFrom<RawTensor> for OneOneTensor {
    type Error = Error;

    fn try_from(raw: RawTensor) -> Result<Self> {
        rational_matrix(&raw.m, raw.dim, "m")
    }
}

via_raw!(OneOneTensor, RawTensor);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<String>>,
}

impl From<&Subspace> for RawSubspace {
    fn from(l: &Subspace) -> Self {
        RawSubspace {
            ambient_dim: l.ambient_dim(),
            basis: l
                .basis()
                .iter()
                .map(|v| v.coords().iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl TryFrom<RawSubspace> for Subspace {
    type Error = Error;

    fn try_from(raw: RawSubspace) -> Result<Self> {
        if raw.basis.iter().any(|v| v.len() != raw.ambient_dim) {
            return Err(Error::Format(format!(
                "every basis vector must have {} entries",
                raw.ambient_dim
            )));
        }
        let basis = parse_rational_rows(&raw.basis, "basis")?
            .into_iter()
            .map(Vector::new)
            .collect();
        Subspace::new(raw.ambient_dim, basis)
    }
}

via_raw!(Subspace, RawSubspace);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCourant {
    op: BilinearOp,
    pairing: Vec<Vec<String>>,
}

impl From<&CourantStructure> for RawCourant {
    fn from(cs: &CourantStructure) -> Self {
        RawCourant {
            op: cs.op.clone(),
            pairing: rational_rows(cs.pairing.matrix().rows()),
        }
    }
}

impl TryFrom<RawCourant> for CourantStructure {
    type Error = Error;

    fn try_from(raw: RawCourant) -> Result<Self> {
        let g = rational_matrix(&raw.pairing, raw.op.dim(), "pairing")?;
        CourantStructure::new(raw.op, Pairing::new(g)?)
    }
}

via_raw!(CourantStructure, RawCourant);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBialgebra {
    dim_e: usize,
    bracket_e: BilinearOp,
    bracket_estar: BilinearOp,
}

impl From<&LieBialgebra> for RawBialgebra {
    fn from(b: &LieBialgebra) -> Self {
        RawBialgebra {
            dim_e: b.dim_e(),
            bracket_e: b.bracket_e.clone(),
            bracket_estar: b.bracket_estar.clone(),
        }
    }
}

impl TryFrom<RawBialgebra> for LieBialgebra {
    type Error = Error;

    fn try_from(raw: RawBialgebra) -> Result<Self> {
        Error::check_dim(raw.dim_e, raw.bracket_e.dim())?;
        LieBialgebra::new(raw.bracket_e, raw.bracket_estar)
    }
}

via_raw!(LieBialgebra, RawBialgebra);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    n_e: usize,
    #[serde(rename = "N_E")]
    block_e: Vec<Vec<String>>,
    #[serde(rename = "Lambda")]
    lambda: Vec<Vec<String>>,
    #[serde(rename = "Omega")]
    omega: Vec<Vec<String>>,
    #[serde(rename = "N_Estar")]
    block_estar: Vec<Vec<String>>,
}

impl From<&BlockTensor> for RawBlock {
    fn from(t: &BlockTensor) -> Self {
        RawBlock {
            n_e: t.dim_e(),
            block_e: rational_rows(t.n_e.rows()),
            lambda: rational_rows(t.lambda.rows()),
            omega: rational_rows(t.omega.rows()),
            block_estar: rational_rows(t.n_estar.rows()),
        }
    }
}

impl TryFrom<RawBlock> for BlockTensor {
    type Error = Error;

    fn try_from(raw: RawBlock) -> Result<Self> {
        let n = raw.n_e;
        BlockTensor::new(
            rational_matrix(&raw.block_e, n, "N_E")?,
            rational_matrix(&raw.lambda, n, "Lambda")?,
            rational_matrix(&raw.omega, n, "Omega")?,
            rational_matrix(&raw.block_estar, n, "N_Estar")?,
        )
    }
}

via_raw!(BlockTensor, RawBlock);

/// Shared shape of vector fields, forms and bivectors.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    n: usize,
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    components: BTreeMap<String, String>,
}

impl RawField {
    fn expect_kind(&self, kind: &str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Format(format!("expected type {kind:?}, found {:?}", self.kind)))
        }
    }

    fn entries(&self) -> Result<Vec<(Vec<usize>, Poly)>> {
        self.components
            .iter()
            .map(|(k, v)| {
                let idx = parse_index_key(k, self.n)?;
                let p = poly(v, self.n, || format!("components[{k}]"))?;
                Ok((idx, p))
            })
            .collect()
    }
}

impl From<&PolyVectorField> for RawField {
    fn from(x: &PolyVectorField) -> Self {
        RawField {
            n: x.n(),
            kind: "vector_field".into(),
            degree: None,
            components: x
                .components()
                .iter()
                .enumerate()
                .map(|(i, p)| (index_key(&[i]), p.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<RawField> for PolyVectorField {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        raw.expect_kind("vector_field")?;
        let mut c = vec![Poly::zero(raw.n); raw.n];
        for (idx, p) in raw.entries()? {
            match idx.as_slice() {
                [i] => c[*i] = c[*i].clone() + p,
                _ => return Err(Error::Format("vector field keys have one index".into())),
            }
        }
        PolyVectorField::new(c)
    }
}

via_raw!(PolyVectorField, RawField);

impl From<&PolyForm> for RawField {
    fn from(w: &PolyForm) -> Self {
        RawField {
            n: w.n(),
            kind: "form".into(),
            degree: Some(w.degree()),
            components: w
                .components()
                .iter()
                .map(|(idx, p)| (index_key(idx), p.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<RawField> for PolyForm {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        raw.expect_kind("form")?;
        let degree = raw
            .degree
            .ok_or_else(|| Error::Format("form documents need a degree".into()))?;
        PolyForm::from_components(raw.n, degree, raw.entries()?)
    }
}

via_raw!(PolyForm, RawField);

impl From<&PolyBivector> for RawField {
    fn from(b: &PolyBivector) -> Self {
        RawField {
            n: b.n(),
            kind: "bivector".into(),
            degree: None,
            components: b
                .components()
                .iter()
                .map(|(&(i, j), p)| (index_key(&[i, j]), p.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<RawField> for PolyBivector {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        raw.expect_kind("bivector")?;
        let entries = raw
            .entries()?
            .into_iter()
            .map(|(idx, p)| match idx.as_slice() {
                [i, j] if i < j => Ok(((*i, *j), p)),
                _ => Err(Error::Format(
                    "bivector keys are increasing index pairs like \"[1,2]\"".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        PolyBivector::from_components(raw.n, entries)
    }
}

via_raw!(PolyBivector, RawField);

impl From<&DiracGraph> for RawField {
    fn from(g: &DiracGraph) -> Self {
        match g {
            DiracGraph::Form(w) => w.into(),
            DiracGraph::Bivector(b) => b.into(),
        }
    }
}

impl TryFrom<RawField> for DiracGraph {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        match raw.kind.as_str() {
            "form" => Ok(DiracGraph::Form(raw.try_into()?)),
            "bivector" => Ok(DiracGraph::Bivector(raw.try_into()?)),
            other => Err(Error::Format(format!(
                "a Dirac graph is a \"form\" or a \"bivector\", found {other:?}"
            ))),
        }
    }
}

via_raw!(DiracGraph, RawField);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolyTensor {
    n: usize,
    #[serde(rename = "type")]
    kind: String,
    m: Vec<Vec<String>>,
}

impl From<&PolyOneOne> for RawPolyTensor {
    fn from(t: &PolyOneOne) -> Self {
        RawPolyTensor {
            n: t.n(),
            kind: "tensor".into(),
            m: poly_rows(t),
        }
    }
}

impl TryFrom<RawPolyTensor> for PolyOneOne {
    type Error = Error;

    fn try_from(raw: RawPolyTensor) -> Result<Self> {
        if raw.kind != "tensor" {
            return Err(Error::Format(format!("expected type \"tensor\", found {:?}", raw.kind)));
        }
        poly_matrix(&raw.m, raw.n, "m")
    }
}

via_raw!(PolyOneOne, RawPolyTensor);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCourantTensor {
    n: usize,
    #[serde(rename = "N0")]
    n0: Vec<Vec<String>>,
    #[serde(rename = "Lambda")]
    lambda: PolyBivector,
    #[serde(rename = "Omega")]
    omega: PolyForm,
    #[serde(rename = "N1")]
    n1: Vec<Vec<String>>,
}

impl From<&CourantTensor> for RawCourantTensor {
    fn from(t: &CourantTensor) -> Self {
        RawCourantTensor {
            n: t.n(),
            n0: poly_rows(&t.n0),
            lambda: t.lambda.clone(),
            omega: t.omega.clone(),
            n1: poly_rows(&t.n1),
        }
    }
}

impl TryFrom<RawCourantTensor> for CourantTensor {
    type Error = Error;

    fn try_from(raw: RawCourantTensor) -> Result<Self> {
        let n = raw.n;
        CourantTensor::new(
            poly_matrix(&raw.n0, n, "N0")?,
            raw.lambda,
            raw.omega,
            poly_matrix(&raw.n1, n, "N1")?,
        )
    }
}

via_raw!(CourantTensor, RawCourantTensor);
