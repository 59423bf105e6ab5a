//! Structure files: one ring, one relation and an optional window, as JSON.
//!
//! ```json
//! {"ring": {"kind": "integers"},
//!  "relation": {"kind": "valuation", "valuation": {"kind": "padic", "p": 2}},
//!  "window": {"kind": "interval", "lo": -20, "hi": 20}}
//! ```

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::group::{GroupElem, Value};
use crate::order::{OrderSpec, PositiveCone};
use crate::relation::{QuasiOrderSpec, Relation};
use crate::ring::{Ideal, Ring, Window};
use crate::valuation::ValuationSpec;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RingDesc {
    Modular {
        n: u64,
    },
    Integers,
    Polynomial {
        vars: Vec<String>,
    },
    Product {
        factors: Vec<RingDesc>,
    },
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        zero: Option<usize>,
        #[serde(default)]
        one: Option<usize>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ValuationDesc {
    Padic { p: u64 },
    Monomial { weights: BTreeMap<String, Vec<i64>> },
    Trivial { generators: Vec<Json> },
    Table { values: Vec<Json> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum OrderDesc {
    Standard,
    PolyAtInfinity { precedence: Vec<String> },
    Cone { elements: Vec<Json> },
    Matrix { rows: Vec<Vec<bool>> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RelationDesc {
    Valuation { valuation: ValuationDesc },
    Order { order: OrderDesc },
    Matrix { rows: Vec<Vec<bool>> },
    TrivialAtPrime { generators: Vec<Json> },
    CounterexampleSec3,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDesc {
    ring: RingDesc,
    relation: RelationDesc,
    #[serde(default)]
    window: Option<Window>,
}

/// A parsed structure file.
#[derive(Clone, Debug)]
pub struct Structure {
    pub relation: Relation,
    pub window: Window,
}

impl Structure {
    pub fn ring(&self) -> &Ring {
        self.relation.ring()
    }
}

fn build_ring(d: RingDesc) -> Result<Ring> {
    match d {
        RingDesc::Modular { n } => Ring::modular(n),
        RingDesc::Integers => Ok(Ring::Integers),
        RingDesc::Polynomial { vars } => Ring::polynomial(vars),
        RingDesc::Product { factors } => {
            Ring::product(factors.into_iter().map(build_ring).collect::<Result<_>>()?)
        }
        RingDesc::Table { add, mul, zero, one } => Ring::table(add, mul, zero, one),
    }
}

fn elems(ring: &Ring, xs: &[Json]) -> Result<Vec<crate::ring::Elem>> {
    xs.iter().map(|x| ring.parse_elem(x)).collect()
}

fn parse_value(v: &Json) -> Result<Value> {
    match v {
        Json::String(s) if s == "inf" => Ok(Value::Infinity),
        Json::Number(_) => v
            .as_i64()
            .map(Value::scalar)
            .ok_or_else(|| Error::Parse(format!("value {v} is not an integer"))),
        Json::Array(xs) => xs
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("value {v} is not an integer vector"))))
            .collect::<Result<_>>()
            .map(|g| Value::Finite(GroupElem(g))),
        _ => Err(Error::Parse(format!("cannot read value {v}"))),
    }
}

fn var_index(ring: &Ring, name: &str) -> Result<usize> {
    ring.vars()
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::structural(format!("unknown variable `{name}`")))
}

fn build_valuation(ring: &Ring, d: ValuationDesc) -> Result<ValuationSpec> {
    Ok(match d {
        ValuationDesc::Padic { p } => ValuationSpec::PAdic { p },
        ValuationDesc::Monomial { weights } => {
            let mut by_var = vec![None; ring.nvars()];
            for (name, w) in weights {
                by_var[var_index(ring, &name)?] = Some(w);
            }
            let weights = by_var
                .into_iter()
                .zip(ring.vars())
                .map(|(w, v)| w.ok_or_else(|| Error::structural(format!("missing weight for `{v}`"))))
                .collect::<Result<_>>()?;
            ValuationSpec::Monomial { weights }
        }
        ValuationDesc::Trivial { generators } => ValuationSpec::Trivial {
            ideal: Ideal::generated(ring, elems(ring, &generators)?)?,
        },
        ValuationDesc::Table { values } => ValuationSpec::Table {
            values: values.iter().map(parse_value).collect::<Result<_>>()?,
        },
    })
}

fn build_order(ring: &Ring, d: OrderDesc) -> Result<OrderSpec> {
    Ok(match d {
        OrderDesc::Standard => OrderSpec::StandardInteger,
        OrderDesc::PolyAtInfinity { precedence } => OrderSpec::PolynomialAtInfinity {
            precedence: precedence.iter().map(|v| var_index(ring, v)).collect::<Result<_>>()?,
        },
        OrderDesc::Cone { elements } => OrderSpec::FromCone(PositiveCone::Explicit {
            elements: elems(ring, &elements)?,
        }),
        OrderDesc::Matrix { rows } => OrderSpec::ExplicitMatrix { leq: rows },
    })
}

fn build_relation(ring: Ring, d: RelationDesc) -> Result<Relation> {
    let spec = match d {
        RelationDesc::Valuation { valuation } => QuasiOrderSpec::FromValuation(build_valuation(&ring, valuation)?),
        RelationDesc::Order { order } => QuasiOrderSpec::FromOrder(build_order(&ring, order)?),
        RelationDesc::Matrix { rows } => QuasiOrderSpec::ExplicitMatrix { leq: rows },
        RelationDesc::TrivialAtPrime { generators } => {
            QuasiOrderSpec::TrivialAtPrime(Ideal::generated(&ring, elems(&ring, &generators)?)?)
        }
        RelationDesc::CounterexampleSec3 => QuasiOrderSpec::CounterexampleSec3,
    };
    Relation::new(ring, spec)
}

/// Parses a structure document. Unknown keys are rejected; the window may
/// be omitted for finite rings.
pub fn parse_structure(src: &str) -> Result<Structure> {
    let desc: StructureDesc = serde_json::from_str(src)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let ring = build_ring(desc.ring)?;
    let window = match desc.window {
        Some(w) => w,
        None if ring.is_finite() => Window::All,
        None => return Err(Error::InvalidWindow(format!("{ring} is infinite and needs a window"))),
    };
    window.elements(&ring)?;
    let relation = build_relation(ring, desc.relation)?;
    Ok(Structure { relation, window })
}

/// Parses a window given on its own, e.g. from a command-line override.
pub fn parse_window(src: &str) -> Result<Window> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("window: {e}")))
}
