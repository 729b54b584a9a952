use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Outcome of comparing the transfer result against the direct oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Skipped => "SKIPPED",
        }
    }

    /// Process exit status: only a disagreement is a failure.
    pub fn exit_status(self) -> u8 {
        match self {
            Verdict::Mismatch => 2,
            Verdict::Match | Verdict::Skipped => 0,
        }
    }
}

/// Machine-readable result of `compute` and `oracle`. Numbers are decimal
/// strings so no precision is lost in transit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<(String, String)>,
    pub descending: Vec<String>,
    pub ascending: Vec<String>,
    /// Sum of the coefficients; the Hosoya index unless `truncated`.
    pub hosoya: String,
    pub truncated: bool,
    /// The remaining blocks (G - a, G - b, G - a - b), ascending, when a
    /// pair is known.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub other_blocks: Vec<Vec<String>>,
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verdict>,
}

pub fn decimal(values: &[BigUint]) -> Vec<String> {
    values.iter().map(BigUint::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert_eq!(Verdict::Mismatch.exit_status(), 2);
        assert_eq!(Verdict::Match.exit_status(), 0);
        assert_eq!(Verdict::Skipped.exit_status(), 0);
        assert_eq!(
            serde_json::to_string(&Verdict::Mismatch).unwrap(),
            "\"MISMATCH\""
        );
        assert_eq!(Verdict::Skipped.as_str(), "SKIPPED");
    }
}
