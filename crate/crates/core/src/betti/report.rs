use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::presentations::ExponentStatus;
use crate::rational::{format_q, parse_q, Q};
use crate::words::VagueCardinal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub classification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ExponentReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<EulerCharacteristic>,
    #[serde(with = "order_format")]
    pub order: VagueCardinal,
    pub betti: Betti,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cd: Option<u32>,
    pub assumptions: Vec<String>,
    pub conditional: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationOutcome>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub value: VagueCardinal,
    pub status: ExponentStatus,
}

/// χ(G). `MinusInfinity` is the convention for infinitely generated
/// one-relator groups; finite presentations never produce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerCharacteristic {
    Finite(Q),
    MinusInfinity,
}

impl EulerCharacteristic {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            EulerCharacteristic::Finite(q) => Some(q),
            EulerCharacteristic::MinusInfinity => None,
        }
    }
}

impl Serialize for EulerCharacteristic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EulerCharacteristic::Finite(q) => s.serialize_str(&format_q(q)),
            EulerCharacteristic::MinusInfinity => s.serialize_str("-infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for EulerCharacteristic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "-infinity" {
            return Ok(EulerCharacteristic::MinusInfinity);
        }
        parse_q(&s).map(EulerCharacteristic::Finite).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tail {
    #[serde(rename = "b_n = 0 for n >= 2")]
    ZeroFromTwo,
    #[serde(rename = "b_n undetermined for n >= 3")]
    UndeterminedFromThree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Betti {
    #[serde(with = "crate::rational::serde_q")]
    pub b0: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub b1: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub b2: Q,
    pub tail: Tail,
}

impl Betti {
    pub fn values(&self) -> Vec<Q> {
        vec![self.b0.clone(), self.b1.clone(), self.b2.clone()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub status: OutcomeStatus,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub formula: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_q_vec")]
    pub oracle: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationOutcome {
    pub fn passed(report: &BettiReport, oracle: Vec<Q>) -> Self {
        VerificationOutcome { status: OutcomeStatus::Pass, formula: report.betti.values(), oracle: Some(oracle), detail: None }
    }

    pub fn failed(report: &BettiReport, oracle: Option<Vec<Q>>, detail: String) -> Self {
        VerificationOutcome { status: OutcomeStatus::Fail, formula: report.betti.values(), oracle, detail: Some(detail) }
    }

    pub fn skipped(report: &BettiReport, why: &str) -> Self {
        VerificationOutcome {
            status: OutcomeStatus::Skipped,
            formula: report.betti.values(),
            oracle: None,
            detail: Some(why.to_owned()),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == OutcomeStatus::Pass
    }
}

mod opt_q_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
        match xs {
            Some(v) => crate::rational::serde_q_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Q>>, D::Error> {
        crate::rational::serde_q_vec::deserialize(d).map(Some)
    }
}

/// `"finite:N"` or `"infinite"`.
mod order_format {
    use super::*;

    pub fn serialize<S: Serializer>(o: &VagueCardinal, s: S) -> Result<S::Ok, S::Error> {
        match o {
            VagueCardinal::Finite(n) => s.serialize_str(&format!("finite:{n}")),
            VagueCardinal::Infinite => s.serialize_str("infinite"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<VagueCardinal, D::Error> {
        let s = String::deserialize(d)?;
        if s == "infinite" {
            return Ok(VagueCardinal::Infinite);
        }
        s.strip_prefix("finite:")
            .and_then(|n| n.parse().ok())
            .map(VagueCardinal::Finite)
            .ok_or_else(|| serde::de::Error::custom(format!("bad order {s:?}")))
    }
}
