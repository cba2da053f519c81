//! Serde helpers: integers are written as JSON numbers when they fit in an
//! `i64` and as decimal strings otherwise. Both forms are accepted on input.

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::intmat::Int;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Small(i64),
    Big(String),
}

fn to_wire(x: &Int) -> Wire {
    match x.to_i64() {
        Some(v) => Wire::Small(v),
        None => Wire::Big(x.to_string()),
    }
}

fn from_wire<E: serde::de::Error>(w: Wire) -> Result<Int, E> {
    match w {
        Wire::Small(v) => Ok(Int::from(v)),
        Wire::Big(s) => s
            .parse()
            .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        to_wire(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        from_wire(Wire::deserialize(d)?)
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_wire).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        Vec::<Wire>::deserialize(d)?
            .into_iter()
            .map(from_wire)
            .collect()
    }
}

pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(to_wire).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        Option::<Wire>::deserialize(d)?
            .map(from_wire::<D::Error>)
            .transpose()
    }
}
