use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::probability::{Probability, StepProbability};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    #[serde(rename = "closed")]
    Closed,
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "brute")]
    Brute,
    #[serde(rename = "mc")]
    MonteCarlo,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Closed => "closed",
            Engine::Exact => "exact",
            Engine::Brute => "brute",
            Engine::MonteCarlo => "mc",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMoments {
    pub e_lambda: BigRational,
    pub var_lambda: BigRational,
    pub e_mu: BigRational,
    pub var_mu: BigRational,
}

/// Sample statistics; variances and standard errors are absent for a
/// single sample.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledMoments {
    pub samples: u64,
    pub e_lambda: f64,
    pub var_lambda: Option<f64>,
    pub e_mu: f64,
    pub var_mu: Option<f64>,
    pub se_lambda: Option<f64>,
    pub se_mu: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Moments {
    Exact(ExactMoments),
    Sampled(SampledMoments),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub engine: Engine,
    pub modulus: u64,
    pub p: Probability,
    pub moments: Moments,
}

/// Column order of [`MomentReport::csv_row`].
pub const CSV_HEADER: &str = "engine,T,p,e_lambda,var_lambda,e_mu,var_mu,se_lambda,se_mu";

/// Wire form. Exact rationals travel as `"num/den"` strings.
#[derive(Serialize, Deserialize)]
struct Record {
    engine: Engine,
    #[serde(rename = "T")]
    modulus: u64,
    p: String,
    e_lambda: Value,
    var_lambda: Value,
    e_mu: Value,
    var_mu: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    se_lambda: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    se_mu: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
}

fn float_value(x: Option<f64>) -> Value {
    x.and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number)
}

fn rational_value(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("expected a rational string, got {v}")))?
        .parse()
        .map_err(|e| Error::Parse(format!("{v}: {e}")))
}

fn parse_float(v: &Value) -> Result<Option<f64>> {
    match v {
        Value::Null => Ok(None),
        Value::Number(n) => Ok(n.as_f64()),
        _ => Err(Error::Parse(format!("expected a number, got {v}"))),
    }
}

impl MomentReport {
    pub fn exact(&self) -> Option<&ExactMoments> {
        match &self.moments {
            Moments::Exact(m) => Some(m),
            Moments::Sampled(_) => None,
        }
    }

    pub fn sampled(&self) -> Option<&SampledMoments> {
        match &self.moments {
            Moments::Sampled(m) => Some(m),
            Moments::Exact(_) => None,
        }
    }

    fn record(&self) -> Record {
        let p = self.p.to_string();
        match &self.moments {
            Moments::Exact(m) => Record {
                engine: self.engine,
                modulus: self.modulus,
                p,
                e_lambda: rational_value(&m.e_lambda),
                var_lambda: rational_value(&m.var_lambda),
                e_mu: rational_value(&m.e_mu),
                var_mu: rational_value(&m.var_mu),
                se_lambda: None,
                se_mu: None,
                samples: None,
            },
            Moments::Sampled(m) => Record {
                engine: self.engine,
                modulus: self.modulus,
                p,
                e_lambda: float_value(Some(m.e_lambda)),
                var_lambda: float_value(m.var_lambda),
                e_mu: float_value(Some(m.e_mu)),
                var_mu: float_value(m.var_mu),
                se_lambda: Some(float_value(m.se_lambda)),
                se_mu: Some(float_value(m.se_mu)),
                samples: Some(m.samples),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.record()).expect("record serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let r: Record =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let p = match r.p.parse::<BigRational>() {
            Ok(p) => Probability::Exact(StepProbability::new(p)?),
            Err(_) => Probability::float(r.p.parse().map_err(|_| Error::Parse(r.p.clone()))?)?,
        };
        let moments = match r.engine {
            Engine::MonteCarlo => Moments::Sampled(SampledMoments {
                samples: r.samples.ok_or_else(|| Error::Parse("missing samples".into()))?,
                e_lambda: parse_float(&r.e_lambda)?.ok_or_else(|| Error::Parse("e_lambda".into()))?,
                var_lambda: parse_float(&r.var_lambda)?,
                e_mu: parse_float(&r.e_mu)?.ok_or_else(|| Error::Parse("e_mu".into()))?,
                var_mu: parse_float(&r.var_mu)?,
                se_lambda: r.se_lambda.as_ref().map(parse_float).transpose()?.flatten(),
                se_mu: r.se_mu.as_ref().map(parse_float).transpose()?.flatten(),
            }),
            _ => Moments::Exact(ExactMoments {
                e_lambda: parse_rational(&r.e_lambda)?,
                var_lambda: parse_rational(&r.var_lambda)?,
                e_mu: parse_rational(&r.e_mu)?,
                var_mu: parse_rational(&r.var_mu)?,
            }),
        };
        Ok(MomentReport { engine: r.engine, modulus: r.modulus, p, moments })
    }

    /// One CSV line in [`CSV_HEADER`] order; absent values are empty cells.
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let cells: [String; 6] = match &self.moments {
            Moments::Exact(m) => [
                m.e_lambda.to_string(),
                m.var_lambda.to_string(),
                m.e_mu.to_string(),
                m.var_mu.to_string(),
                String::new(),
                String::new(),
            ],
            Moments::Sampled(m) => [
                m.e_lambda.to_string(),
                opt(m.var_lambda),
                m.e_mu.to_string(),
                opt(m.var_mu),
                opt(m.se_lambda),
                opt(m.se_mu),
            ],
        };
        format!("{},{},{},{}", self.engine, self.modulus, self.p, cells.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use proptest::prelude::*;

    fn exact_report(vals: [(i64, i64); 4]) -> MomentReport {
        MomentReport {
            engine: Engine::Exact,
            modulus: 7,
            p: Probability::Exact(StepProbability::from_ratio(1, 3).unwrap()),
            moments: Moments::Exact(ExactMoments {
                e_lambda: ratio(vals[0].0, vals[0].1),
                var_lambda: ratio(vals[1].0, vals[1].1),
                e_mu: ratio(vals[2].0, vals[2].1),
                var_mu: ratio(vals[3].0, vals[3].1),
            }),
        }
    }

    #[test]
    fn exact_json_layout() {
        let r = exact_report([(4, 9), (44, 81), (66, 1), (2, 27)]);
        assert_eq!(
            r.to_json().to_string(),
            r#"{"engine":"exact","T":7,"p":"1/3","e_lambda":"4/9","var_lambda":"44/81","e_mu":"66","var_mu":"2/27"}"#
        );
        assert_eq!(r.csv_row(), "exact,7,1/3,4/9,44/81,66,2/27,,");
    }

    #[test]
    fn sampled_round_trip() {
        let r = MomentReport {
            engine: Engine::MonteCarlo,
            modulus: 30,
            p: Probability::Float(0.5),
            moments: Moments::Sampled(SampledMoments {
                samples: 1,
                e_lambda: 1.0,
                var_lambda: None,
                e_mu: 20.0,
                var_mu: None,
                se_lambda: None,
                se_mu: None,
            }),
        };
        let json = r.to_json();
        assert_eq!(json["var_mu"], Value::Null);
        assert_eq!(MomentReport::from_json(&json).unwrap(), r);
    }

    proptest! {
        #[test]
        fn exact_round_trip(a in -50i64..50, b in 1i64..50, c in 0i64..500, d in 1i64..50) {
            let r = exact_report([(a, b), (c, d), (c, b), (a.abs(), d)]);
            let text = r.to_json().to_string();
            let back = MomentReport::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
