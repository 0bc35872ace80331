//! Big integers serialize as JSON numbers while they fit in 64 bits and as
//! decimal strings beyond that.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.collect_str(v),
    }
}

pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.collect_str(v),
    }
}
