//! Serde adapters that write a `BigInt` as a JSON number when it fits in
//! `i64` and as a decimal string otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

impl Repr {
    fn into_int<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            Repr::Signed(v) => Ok(BigInt::from(v)),
            Repr::Unsigned(v) => Ok(BigInt::from(v)),
            Repr::Text(s) => s
                .parse()
                .map_err(|_| E::custom(format!("invalid integer {s:?}"))),
        }
    }
}

pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => serializer.serialize_i64(v),
        None => serializer.serialize_str(&value.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
    Repr::deserialize(deserializer)?.into_int()
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<BigInt>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => super::serialize(v, serializer),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<BigInt>, D::Error> {
        Option::<Repr>::deserialize(deserializer)?
            .map(Repr::into_int)
            .transpose()
    }
}
