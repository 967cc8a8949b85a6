//! JSON-serializable reports emitted by identity checks and the CLI.

use crate::error::Result;
use crate::scalar::{scalar_eq, EqPolicy, Scalar};

/// Outcome of comparing two sides of an identity under an equality policy.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub holds: bool,
}

impl IdentityReport {
    pub fn compare(name: impl Into<String>, lhs: Scalar, rhs: Scalar, policy: &EqPolicy) -> Result<IdentityReport> {
        let holds = scalar_eq(&lhs, &rhs, policy)?;
        Ok(IdentityReport {
            name: name.into(),
            lhs,
            rhs,
            holds,
        })
    }

    /// |lhs - rhs| as a float, for residual summaries.
    pub fn residual(&self) -> rug::Float {
        (&self.lhs - &self.rhs).abs_float()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "residual": self.residual().to_f64(),
            "holds": self.holds,
        })
    }
}
