//! Logic identities and per-logic connective signatures.
//!
//! Each supported logic is a bounded-lattice propositional logic extended
//! with some multiplicative connectives. A [`Logic`] value names the system
//! and carries the optional axiom flags that make sense for it: the
//! subclassical axiom set for BiBI/BiBBI and the modal class for SML.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// The ten bunched systems handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LogicName {
    #[serde(rename = "LGL")]
    Lgl,
    #[serde(rename = "ILGL")]
    Ilgl,
    #[serde(rename = "BI")]
    Bi,
    #[serde(rename = "BBI")]
    Bbi,
    #[serde(rename = "SML")]
    Sml,
    #[serde(rename = "DMBI")]
    Dmbi,
    #[serde(rename = "CBI")]
    Cbi,
    #[serde(rename = "BiBI")]
    BiBi,
    #[serde(rename = "BiBBI")]
    BiBbi,
    #[serde(rename = "CKBI")]
    Ckbi,
}

impl LogicName {
    pub const ALL: [LogicName; 10] = [
        LogicName::Lgl,
        LogicName::Ilgl,
        LogicName::Bi,
        LogicName::Bbi,
        LogicName::Sml,
        LogicName::Dmbi,
        LogicName::Cbi,
        LogicName::BiBi,
        LogicName::BiBbi,
        LogicName::Ckbi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LogicName::Lgl => "LGL",
            LogicName::Ilgl => "ILGL",
            LogicName::Bi => "BI",
            LogicName::Bbi => "BBI",
            LogicName::Sml => "SML",
            LogicName::Dmbi => "DMBI",
            LogicName::Cbi => "CBI",
            LogicName::BiBi => "BiBI",
            LogicName::BiBbi => "BiBBI",
            LogicName::Ckbi => "CKBI",
        }
    }

    pub fn parse(s: &str) -> Option<LogicName> {
        LogicName::ALL.iter().copied().find(|n| n.as_str().eq_ignore_ascii_case(s))
    }

    /// Boolean additives (classical) vs. intuitionistic additives.
    pub fn is_boolean(self) -> bool {
        matches!(
            self,
            LogicName::Lgl
                | LogicName::Bbi
                | LogicName::Sml
                | LogicName::Cbi
                | LogicName::BiBbi
                | LogicName::Ckbi
        )
    }

    /// Logics whose frames carry a genuine preorder.
    pub fn is_intuitionistic(self) -> bool {
        !self.is_boolean()
    }

    /// Logics whose `*` is commutative with unit set `E` (everything above LGL/ILGL).
    pub fn has_munit(self) -> bool {
        !matches!(self, LogicName::Lgl | LogicName::Ilgl)
    }
}

impl fmt::Display for LogicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Subclassical axiom rows (optional for BiBI/BiBBI).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SigmaAxiom {
    #[serde(rename = "assoc")]
    Associativity,
    #[serde(rename = "mbot-weak")]
    MBotWeakening,
    #[serde(rename = "mbot-contr")]
    MBotContraction,
    #[serde(rename = "mor-contr")]
    MOrContraction,
    #[serde(rename = "weak-dist")]
    WeakDistributivity,
}

impl SigmaAxiom {
    pub const ALL: [SigmaAxiom; 5] = [
        SigmaAxiom::Associativity,
        SigmaAxiom::MBotWeakening,
        SigmaAxiom::MBotContraction,
        SigmaAxiom::MOrContraction,
        SigmaAxiom::WeakDistributivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SigmaAxiom::Associativity => "assoc",
            SigmaAxiom::MBotWeakening => "mbot-weak",
            SigmaAxiom::MBotContraction => "mbot-contr",
            SigmaAxiom::MOrContraction => "mor-contr",
            SigmaAxiom::WeakDistributivity => "weak-dist",
        }
    }

    pub fn parse(s: &str) -> Option<SigmaAxiom> {
        SigmaAxiom::ALL.iter().copied().find(|a| a.as_str() == s)
    }
}

impl fmt::Display for SigmaAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Modal class of the SML diamond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum ModalClass {
    #[default]
    #[serde(rename = "none")]
    None,
    #[serde(rename = "s4")]
    S4,
    #[serde(rename = "s5")]
    S5,
}

impl ModalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModalClass::None => "none",
            ModalClass::S4 => "s4",
            ModalClass::S5 => "s5",
        }
    }

    pub fn parse(s: &str) -> Option<ModalClass> {
        match s {
            "none" => Some(ModalClass::None),
            "s4" | "S4" => Some(ModalClass::S4),
            "s5" | "S5" => Some(ModalClass::S5),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("sigma axiom flags are only legal for BiBI/BiBBI, not {0}")]
    SigmaNotAllowed(LogicName),
    #[error("modal class is only legal for SML, not {0}")]
    ModalNotAllowed(LogicName),
}

/// A logic together with its optional flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Logic {
    name: LogicName,
    sigma: BTreeSet<SigmaAxiom>,
    modal: ModalClass,
}

impl Logic {
    pub fn new(name: LogicName) -> Logic {
        Logic { name, sigma: BTreeSet::new(), modal: ModalClass::None }
    }

    pub fn with_sigma(
        name: LogicName,
        sigma: impl IntoIterator<Item = SigmaAxiom>,
    ) -> Result<Logic, LogicError> {
        let sigma: BTreeSet<_> = sigma.into_iter().collect();
        if !sigma.is_empty() && !matches!(name, LogicName::BiBi | LogicName::BiBbi) {
            return Err(LogicError::SigmaNotAllowed(name));
        }
        Ok(Logic { name, sigma, modal: ModalClass::None })
    }

    pub fn with_modal(name: LogicName, modal: ModalClass) -> Result<Logic, LogicError> {
        if modal != ModalClass::None && name != LogicName::Sml {
            return Err(LogicError::ModalNotAllowed(name));
        }
        Ok(Logic { name, sigma: BTreeSet::new(), modal })
    }

    pub fn build(
        name: LogicName,
        sigma: impl IntoIterator<Item = SigmaAxiom>,
        modal: ModalClass,
    ) -> Result<Logic, LogicError> {
        let sigma: BTreeSet<_> = sigma.into_iter().collect();
        if !sigma.is_empty() && !matches!(name, LogicName::BiBi | LogicName::BiBbi) {
            return Err(LogicError::SigmaNotAllowed(name));
        }
        if modal != ModalClass::None && name != LogicName::Sml {
            return Err(LogicError::ModalNotAllowed(name));
        }
        Ok(Logic { name, sigma, modal })
    }

    pub fn name(&self) -> LogicName {
        self.name
    }

    pub fn sigma(&self) -> &BTreeSet<SigmaAxiom> {
        &self.sigma
    }

    pub fn modal(&self) -> ModalClass {
        self.modal
    }

    pub fn is_boolean(&self) -> bool {
        self.name.is_boolean()
    }
}

impl From<LogicName> for Logic {
    fn from(name: LogicName) -> Logic {
        Logic::new(name)
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.sigma.is_empty() {
            let rows: Vec<&str> = self.sigma.iter().map(|a| a.as_str()).collect();
            write!(f, "[{}]", rows.join(","))?;
        }
        if self.modal != ModalClass::None {
            write!(f, "({})", self.modal.as_str())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_only_for_subclassical() {
        assert!(Logic::with_sigma(LogicName::BiBbi, [SigmaAxiom::Associativity]).is_ok());
        assert_eq!(
            Logic::with_sigma(LogicName::Bbi, [SigmaAxiom::Associativity]),
            Err(LogicError::SigmaNotAllowed(LogicName::Bbi))
        );
    }

    #[test]
    fn modal_only_for_sml() {
        assert!(Logic::with_modal(LogicName::Sml, ModalClass::S4).is_ok());
        assert_eq!(
            Logic::with_modal(LogicName::Cbi, ModalClass::S5),
            Err(LogicError::ModalNotAllowed(LogicName::Cbi))
        );
    }
}
