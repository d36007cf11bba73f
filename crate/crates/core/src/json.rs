//! Exact values in JSON: integers and rationals travel as strings (`"3/2"`).
//! Parsers also accept plain JSON integers on input.

use serde::Serializer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::num::{fmt_rat, parse_int, parse_rat, Int, IntVec, Rat};

pub fn ser_int<S: Serializer>(v: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_ints<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_int_vecs<S: Serializer>(v: &[IntVec], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

pub fn ser_rats<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rat))
}

pub fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn int_rows(v: &[IntVec]) -> Value {
    Value::Array(v.iter().map(|r| ints(r)).collect())
}

pub fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

pub fn rat(v: &Rat) -> Value {
    Value::String(fmt_rat(v))
}

pub fn parse_int_value(v: &Value) -> Result<Int> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub fn parse_rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        other => Err(Error::Parse(format!("expected an exact rational, found {other}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what}: expected an array")))
}

pub fn parse_int_vec(v: &Value) -> Result<IntVec> {
    array(v, "vector")?.iter().map(parse_int_value).collect()
}

pub fn parse_int_rows(v: &Value) -> Result<Vec<IntVec>> {
    array(v, "vector list")?.iter().map(parse_int_vec).collect()
}

pub fn parse_rat_rows(v: &Value) -> Result<Vec<Vec<Rat>>> {
    array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(parse_rat_value).collect())
        .collect()
}

pub fn parse_count(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .or_else(|| v.as_str().and_then(|s| s.trim().parse().ok()))
        .ok_or_else(|| Error::Parse(format!("{what}: expected a non-negative integer")))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}
