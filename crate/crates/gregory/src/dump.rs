//! JSON form of a truncated series: `{"m_min": .., "N": .., "coeffs": ["num/den", ..]}`.

use gregory_core::{ExactRational, TruncatedSeries};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub m_min: i64,
    #[serde(rename = "N")]
    pub order: i64,
    pub coeffs: Vec<String>,
}

impl From<&TruncatedSeries> for SeriesDump {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesDump { m_min: s.m_min(), order: s.order(), coeffs: s.coeffs().iter().map(|c| c.to_string()).collect() }
    }
}

impl SeriesDump {
    pub fn to_series(&self) -> Result<TruncatedSeries> {
        let expect = self.order - self.m_min + 1;
        if expect < 0 || self.coeffs.len() as i64 != expect {
            return Err(Error::Config(format!(
                "series dump has {} coefficients for z^{}..z^{}",
                self.coeffs.len(),
                self.m_min,
                self.order
            )));
        }
        let coeffs = self.coeffs.iter().map(|c| c.parse::<ExactRational>()).collect::<gregory_core::Result<Vec<_>>>()?;
        Ok(TruncatedSeries::new(self.m_min, coeffs))
    }

    /// The generating function `1/z + 1/ln(1-z) = Σ_{m>=0} p_{m+2} z^m` from
    /// `(n, p_n)` pairs starting at `n = 2` with no gaps.
    pub fn from_pn<'a>(rows: impl IntoIterator<Item = (usize, &'a str)>) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (i, (n, p)) in rows.into_iter().enumerate() {
            if n != i + 2 {
                return Err(Error::Config(format!("p_n rows must run n = 2, 3, ..; found n = {n} at position {i}")));
            }
            coeffs.push(p.to_string());
        }
        if coeffs.is_empty() {
            return Err(Error::Config("no p_n rows".into()));
        }
        Ok(SeriesDump { m_min: 0, order: coeffs.len() as i64 - 1, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gregory_core::series::inv_log_power;

    #[test]
    fn round_trip_with_poles() {
        let s = inv_log_power(2, 8).unwrap();
        let d = SeriesDump::from(&s);
        assert_eq!(d.m_min, -2);
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.starts_with("{\"m_min\":-2,\"N\":"));
        let back: SeriesDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_series().unwrap(), s);
    }

    #[test]
    fn length_mismatch() {
        let d = SeriesDump { m_min: 0, order: 3, coeffs: vec!["1".into()] };
        assert!(d.to_series().is_err());
    }
}
