//! Exact ratios serialized as `"p/q"` strings.

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<u64>;

pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Rational, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: u64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: u64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

/// `|D| / |P|`, or `None` when the packing is empty.
pub fn achieved(d: usize, p: usize) -> Option<Rational> {
    (p > 0).then(|| Rational::new(d as u64, p as u64))
}

pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

pub mod opt_as_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_ratio(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_ratio(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_reduced() {
        assert_eq!(format_ratio(&Rational::new(6, 4)), "3/2");
        assert_eq!(format_ratio(&Rational::from_integer(10)), "10/1");
        assert_eq!(parse_ratio("10").unwrap(), Rational::from_integer(10));
        assert_eq!(parse_ratio("4/2").unwrap(), Rational::from_integer(2));
        assert!(parse_ratio("1/0").is_err());
        assert_eq!(achieved(3, 0), None);
    }
}
