use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Direction of the prefix-sum inequality defining the partition order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderDirection {
    AsPrinted,
    Reversed,
}

/// Which index of the pairing matrix plays the source module in the Hom formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomFormulaDirection {
    /// `dim Hom(M(β_k), M(β_l)) = max(C[k][l], 0)`
    AsPrinted,
    /// `dim Hom(M(β_l), M(β_k)) = max(C[k][l], 0)`
    Transposed,
}

/// Which restriction factor carries the span of the roots `>= β_t` in the
/// semicuspidality constraint used by the Mackey dominance check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResLargeSide {
    /// `x_t` in the span of `β_t..β_N`, `y_t` in the span of `β_1..β_t`.
    FirstFactor,
    /// `x_t` in the span of `β_1..β_t`, `y_t` in the span of `β_t..β_N`.
    SecondFactor,
}

/// Calibrated convention constants shared by every order-sensitive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct OrientationLedger {
    pub order_direction: OrderDirection,
    pub hom_formula_direction: HomFormulaDirection,
    pub res_large_side: ResLargeSide,
}

impl OrientationLedger {
    /// The conventions exactly as written down, before any calibration.
    pub const PRINTED: OrientationLedger = OrientationLedger {
        order_direction: OrderDirection::AsPrinted,
        hom_formula_direction: HomFormulaDirection::AsPrinted,
        res_large_side: ResLargeSide::SecondFactor,
    };

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ledger serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("ledger: {e}")))
    }
}

impl fmt::Display for OrderDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderDirection::AsPrinted => "as-printed",
            OrderDirection::Reversed => "reversed",
        })
    }
}

impl fmt::Display for HomFormulaDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomFormulaDirection::AsPrinted => "as-printed",
            HomFormulaDirection::Transposed => "transposed",
        })
    }
}

impl fmt::Display for ResLargeSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResLargeSide::FirstFactor => "first-factor",
            ResLargeSide::SecondFactor => "second-factor",
        })
    }
}
