//! Input parsing: algebra spec files, inline flags, weights and rationals.
//! Rationals are accepted as JSON integers or "p/q" strings — never floats.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use oprime_core::algebra::{build_algebra, GFunctional, GenReductiveAlgebra};
use oprime_core::ratio;
use oprime_core::roots::{build_root_system, cartan_by_name, RootSystem, Weight};
use oprime_core::Rational;
use serde_json::Value;

use crate::AlgebraArgs;

pub type InputResult<T> = Result<T, String>;

pub fn depth_limit() -> usize {
    std::env::var("OPRIME_DEPTH_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(64)
}

pub fn effective_depth(requested: Option<usize>, rank: usize) -> InputResult<usize> {
    let depth = requested.unwrap_or(if rank <= 1 { 12 } else { 6 });
    if depth == 0 {
        return Err("depth must be at least 1".into());
    }
    let cap = depth_limit();
    if depth > cap {
        return Err(format!("depth {depth} exceeds OPRIME_DEPTH_LIMIT ({cap})"));
    }
    Ok(depth)
}

fn rational_from_value(v: &Value) -> InputResult<Rational> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| {
                format!("non-integer numeric literal {n}; write rationals as \"p/q\" strings")
            })?;
            Ok(oprime_core::linalg::rat(i))
        }
        Value::String(s) => ratio::parse(s).map_err(|e| e.to_string()),
        other => Err(format!("expected a rational, got {other}")),
    }
}

pub fn parse_rational_vector(text: &str) -> InputResult<Vec<Rational>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("bad JSON vector {text:?}: {e}"))?;
    let arr = value
        .as_array()
        .ok_or_else(|| format!("expected a JSON array, got {value}"))?;
    arr.iter().map(rational_from_value).collect()
}

pub fn parse_weight(text: &str, rank: usize) -> InputResult<Weight> {
    let coords = parse_rational_vector(text)?;
    if coords.len() != rank {
        return Err(format!(
            "weight {text:?} has {} coordinates, the root system has rank {rank}",
            coords.len()
        ));
    }
    Ok(Weight::new(coords))
}

fn parse_cartan(value: &Value) -> InputResult<Vec<Vec<i64>>> {
    match value {
        Value::String(name) => cartan_by_name(name)
            .ok_or_else(|| format!("unknown Cartan type {name:?}; use A1, A2, B2, G2 or a matrix")),
        Value::Array(rows) => rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| "Cartan matrix rows must be arrays".to_string())?
                    .iter()
                    .map(|v| {
                        v.as_i64()
                            .ok_or_else(|| format!("Cartan entries must be integers, got {v}"))
                    })
                    .collect()
            })
            .collect(),
        other => Err(format!("bad cartan specification {other}")),
    }
}

fn parse_radical(value: &Value, rank: usize) -> InputResult<Vec<Weight>> {
    let arr = value
        .as_array()
        .ok_or_else(|| "radical must be an array of weight vectors".to_string())?;
    arr.iter()
        .map(|row| {
            let coords: Vec<Rational> = row
                .as_array()
                .ok_or_else(|| "radical weights must be arrays".to_string())?
                .iter()
                .map(rational_from_value)
                .collect::<InputResult<_>>()?;
            if coords.len() != rank {
                return Err(format!(
                    "radical weight has {} coordinates for rank {rank}",
                    coords.len()
                ));
            }
            Ok(Weight::new(coords))
        })
        .collect()
}

/// Resolved algebra description after merging the spec file and flags.
pub struct ResolvedAlgebra {
    pub algebra: Arc<GenReductiveAlgebra>,
    pub functional: GFunctional,
}

impl ResolvedAlgebra {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.algebra.root_system()
    }
}

pub fn resolve(args: &AlgebraArgs) -> InputResult<ResolvedAlgebra> {
    let mut cartan_value: Option<Value> = None;
    let mut radical_value: Option<Value> = None;
    let mut g_by_summand: Option<BTreeMap<String, Vec<String>>> = None;
    if let Some(path) = &args.spec {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read spec file {}: {e}", path.display()))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| format!("spec file is not JSON: {e}"))?;
        let obj = value
            .as_object()
            .ok_or_else(|| "spec file must be a JSON object".to_string())?;
        cartan_value = obj.get("cartan").cloned();
        radical_value = obj.get("radical").cloned();
        if let Some(g) = obj.get("g") {
            let map = g
                .as_object()
                .ok_or_else(|| "spec \"g\" must map summand index to value arrays".to_string())?;
            let mut parsed = BTreeMap::new();
            for (k, v) in map {
                let vals: Vec<String> = v
                    .as_array()
                    .ok_or_else(|| format!("g[{k}] must be an array"))?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => n
                            .as_i64()
                            .map(|i| i.to_string())
                            .ok_or_else(|| format!("g[{k}] has a non-integer number")),
                        other => Err(format!("g[{k}] has a non-rational entry {other}")),
                    })
                    .collect::<InputResult<_>>()?;
                parsed.insert(k.clone(), vals);
            }
            g_by_summand = Some(parsed);
        }
    }
    if let Some(c) = &args.cartan {
        cartan_value = Some(serde_json::from_str(c).unwrap_or_else(|_| Value::String(c.clone())));
    }
    if let Some(r) = &args.radical {
        radical_value =
            Some(serde_json::from_str(r).map_err(|e| format!("bad radical JSON: {e}"))?);
    }

    let cartan_value = cartan_value
        .ok_or_else(|| "no Cartan matrix given (use --cartan or --spec)".to_string())?;
    let cartan = parse_cartan(&cartan_value)?;
    let rs = Arc::new(build_root_system(cartan).map_err(|e| e.to_string())?);
    let radical = match &radical_value {
        Some(v) => parse_radical(v, rs.rank())?,
        None => Vec::new(),
    };
    let algebra = build_algebra(rs, &radical).map_err(|e| e.to_string())?;

    // Functional values: flat --g array wins over per-summand spec data.
    let raw: Vec<Rational> = if let Some(flat) = &args.g {
        let v = parse_rational_vector(flat)?;
        if v.len() != algebra.radical_dim() {
            return Err(format!(
                "--g has {} values; the radical basis has {}",
                v.len(),
                algebra.radical_dim()
            ));
        }
        v
    } else if let Some(by_summand) = &g_by_summand {
        let mut raw = vec![Rational::from_integer(0.into()); algebra.radical_dim()];
        for (key, vals) in by_summand {
            let idx: usize = key
                .parse()
                .map_err(|_| format!("bad summand index {key:?} in g"))?;
            let summand = algebra.summands().get(idx).ok_or_else(|| {
                format!(
                    "g references summand {idx}, radical has {}",
                    algebra.summands().len()
                )
            })?;
            if vals.len() != summand.dim {
                return Err(format!(
                    "g[{idx}] has {} values; summand {idx} has dimension {}",
                    vals.len(),
                    summand.dim
                ));
            }
            for (offset, s) in vals.iter().enumerate() {
                raw[summand.positions.start + offset] =
                    ratio::parse(s).map_err(|e| e.to_string())?;
            }
        }
        raw
    } else {
        vec![Rational::from_integer(0.into()); algebra.radical_dim()]
    };

    let functional = match algebra.validate_g(&raw).map_err(|e| e.to_string())? {
        oprime_core::GValidation::Valid(g) => g,
        oprime_core::GValidation::Invalid(violations) => {
            let first = &violations[0];
            return Err(format!(
                "functional rejected: {} violated at {} (value {})",
                first.constraint, first.witness, first.value
            ));
        }
    };
    Ok(ResolvedAlgebra {
        algebra,
        functional,
    })
}
