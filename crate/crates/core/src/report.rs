//! The invariant report produced by `moduli-topology invariants`, and its
//! table / JSON / CSV renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::moduli::{self, HodgeLimits, SpectralData};
use crate::params::ModuliParams;

/// Largest magnitude a JSON consumer can hold in an IEEE double without loss.
pub const JSON_SAFE_INTEGER: i64 = 1 << 53;

/// An exact integer that serializes as a JSON number when it fits in 53 bits
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInt(pub BigInt);

impl From<BigInt> for ExactInt {
    fn from(value: BigInt) -> Self {
        ExactInt(value)
    }
}

impl From<i64> for ExactInt {
    fn from(value: i64) -> Self {
        ExactInt(BigInt::from(value))
    }
}

impl std::fmt::Display for ExactInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= JSON_SAFE_INTEGER => serializer.serialize_i64(v),
            _ => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(v) => Ok(ExactInt(BigInt::from(v))),
            Repr::Text(s) => BigInt::from_str(&s)
                .map(ExactInt)
                .map_err(|e| serde::de::Error::custom(format!("invalid integer {s:?}: {e}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub g: u32,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "D")]
    pub deg_e: i64,
    pub d: i64,
    #[serde(rename = "K")]
    pub k: i64,
}

impl From<&ModuliParams> for ReportParams {
    fn from(p: &ModuliParams) -> Self {
        ReportParams {
            g: p.genus(),
            n: p.rank(),
            deg_e: p.deg_e(),
            d: p.deg_l(),
            k: p.stabilization(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFlags {
    /// The formal dimension is negative and the moduli space is empty.
    pub empty: bool,
    /// Hodge numbers were requested but the parameters exceed the computation limits.
    pub hodge_skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub params: ReportParams,
    pub dimension: i64,
    pub euler: ExactInt,
    pub betti: Vec<ExactInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<Vec<ExactInt>>>,
    pub spectral: SpectralData,
    pub flags: ReportFlags,
}

/// Output format of the `invariants` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format {other:?} (expected table, json or csv)"
            )),
        }
    }
}

impl InvariantReport {
    /// Computes every invariant; `with_hodge` opts into the Hodge table.
    pub fn compute(params: &ModuliParams, with_hodge: bool) -> Result<Self> {
        Self::compute_with_limits(params, with_hodge, HodgeLimits::default())
    }

    pub fn compute_with_limits(
        params: &ModuliParams,
        with_hodge: bool,
        limits: HodgeLimits,
    ) -> Result<Self> {
        let dimension = moduli::dimension(params);
        let euler = moduli::euler_characteristic(params)?;
        let betti = moduli::betti_table(params)?;
        let mut flags = ReportFlags {
            empty: dimension < 0,
            hodge_skipped: false,
        };
        let hodge = if !with_hodge {
            None
        } else if dimension >= 0 && !limits.allows(params) {
            flags.hodge_skipped = true;
            None
        } else {
            let table = moduli::hodge_table_with_limits(params, limits)?;
            Some(
                table
                    .rows()
                    .iter()
                    .map(|row| row.iter().cloned().map(ExactInt).collect())
                    .collect(),
            )
        };
        Ok(InvariantReport {
            params: params.into(),
            dimension,
            euler: euler.into(),
            betti: betti.values().iter().cloned().map(ExactInt).collect(),
            hodge,
            spectral: moduli::spectral_numerology(params),
            flags,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,b_r\n");
        for (r, b) in self.betti.iter().enumerate() {
            let _ = writeln!(out, "{r},{b}");
        }
        if let Some(rows) = &self.hodge {
            out.push_str("\np,q,h\n");
            for (p, row) in rows.iter().enumerate() {
                for (q, h) in row.iter().enumerate() {
                    let _ = writeln!(out, "{p},{q},{h}");
                }
            }
        }
        out
    }

    pub fn to_table(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "g = {}, N = {}, D = {}, d = {}, K = {}",
            p.g, p.n, p.deg_e, p.d, p.k
        );
        let _ = writeln!(out, "dimension      {}", self.dimension);
        if self.flags.empty {
            let _ = writeln!(out, "               (negative: the moduli space is empty)");
        }
        let _ = writeln!(out, "euler          {}", self.euler);
        let betti: Vec<String> = self.betti.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "betti          [{}]", betti.join(", "));
        let s = &self.spectral;
        let _ = writeln!(
            out,
            "spectral       delta = {}, genus_Y = {}, dimension check {}",
            s.delta,
            s.genus_y,
            if s.dim_consistency { "ok" } else { "FAILED" }
        );
        if let Some(rows) = &self.hodge {
            let _ = writeln!(out, "hodge h^{{p,q}}  (row p, column q)");
            let width = rows
                .iter()
                .flatten()
                .map(|h| h.to_string().len())
                .max()
                .unwrap_or(1);
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|h| format!("{:>width$}", h.to_string()))
                    .collect();
                let _ = writeln!(out, "               {}", cells.join(" "));
            }
        } else if self.flags.hodge_skipped {
            let _ = writeln!(
                out,
                "hodge          skipped (outside the computation limits)"
            );
        }
        out
    }
}
