//! Three-way classification of a defect against two thresholds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Broken,
    Inconclusive,
}

/// Defects below `accept` hold; above `reject` are broken; in between
/// nothing is claimed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub accept: f64,
    pub reject: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            accept: 1e-9,
            reject: 1e-4,
        }
    }
}

impl Tolerances {
    pub fn new(accept: f64, reject: f64) -> Result<Self> {
        let t = Self { accept, reject };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.accept > 0.0 && self.accept.is_finite() && self.reject.is_finite() && self.accept <= self.reject) {
            return Err(Error::InvalidParameter(format!(
                "tolerances need 0 < accept ≤ reject, got ({}, {})",
                self.accept, self.reject
            )));
        }
        Ok(())
    }

    pub fn classify(&self, defect: f64) -> Verdict {
        if defect < self.accept {
            Verdict::Holds
        } else if defect > self.reject {
            Verdict::Broken
        } else {
            Verdict::Inconclusive
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_way_split() {
        let t = Tolerances::default();
        assert_eq!(t.classify(0.0), Verdict::Holds);
        assert_eq!(t.classify(1e-6), Verdict::Inconclusive);
        assert_eq!(t.classify(1e-3), Verdict::Broken);
        assert_eq!(t.classify(f64::NAN), Verdict::Inconclusive);
        assert!(Tolerances::new(1e-3, 1e-6).is_err());
    }
}
