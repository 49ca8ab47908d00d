//! Text form of exact rationals shared by every report: `"num/den"`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::Rational;

pub fn format_ratio<T: Integer + std::fmt::Display + Clone>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Serde adapter for `Rational` fields.
pub mod serde_ratio {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Serde adapter for `(abscissa, height)` vertices, rendered `[n, "a/b"]`.
pub mod serde_vertex {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &(u64, Rational), s: S) -> Result<S::Ok, S::Error> {
        (v.0, format_ratio(&v.1)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(u64, Rational), D::Error> {
        let (n, r) = <(u64, String)>::deserialize(d)?;
        let r = parse_ratio(&r).ok_or_else(|| serde::de::Error::custom(format!("bad rational {r:?}")))?;
        Ok((n, r))
    }
}

/// Same as [`serde_vertex`] for optional vertices.
pub mod serde_opt_vertex {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<(u64, Rational)>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|(n, r)| (*n, format_ratio(r))).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(u64, Rational)>, D::Error> {
        match <Option<(u64, String)>>::deserialize(d)? {
            None => Ok(None),
            Some((n, r)) => parse_ratio(&r)
                .map(|r| Some((n, r)))
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {r:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_text_round_trip() {
        let r = Rational::new(6, 4);
        assert_eq!(format_ratio(&r), "3/2");
        assert_eq!(parse_ratio("3/2"), Some(r));
        assert_eq!(parse_ratio("1"), Some(Rational::from_integer(1)));
        assert_eq!(parse_ratio("1/0"), None);
    }
}
