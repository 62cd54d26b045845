//! Rules of iK_d, iK_d*, STL(N,H) and STL(N); proof trees; the checker;
//! backward rule enumeration; and derived proofs.

mod check;
pub mod derived;
mod enumerate;
mod proof;
mod rule;

use core::fmt;

pub use check::{check_instance, check_proof, ProofError, Violation};
pub use derived::{derived_proof, DerivedKind};
pub use enumerate::applicable_instances;
pub use proof::{build, ProofNode, ProofTree};
pub use rule::{RuleId, RuleInstance};

/// The four base calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    /// iK_d, cut-free.
    Ikd,
    /// iK_d*, the ⊃-free restriction.
    Ikds,
    /// STL(N,H), with cut.
    Stlnh,
    /// STL(N), the ⊃-free restriction.
    Stln,
}

impl Base {
    pub fn allows_heyting(self) -> bool {
        matches!(self, Base::Ikd | Base::Stlnh)
    }

    pub fn is_cut_free_family(self) -> bool {
        matches!(self, Base::Ikd | Base::Ikds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CalculusId {
    pub base: Base,
    pub allow_cut: bool,
    pub allow_hypotheses: bool,
}

impl CalculusId {
    /// The base calculus with its default cut setting.
    pub fn new(base: Base) -> Self {
        CalculusId {
            base,
            allow_cut: !base.is_cut_free_family(),
            allow_hypotheses: false,
        }
    }

    pub fn ikd() -> Self {
        CalculusId::new(Base::Ikd)
    }

    pub fn ikds() -> Self {
        CalculusId::new(Base::Ikds)
    }

    pub fn stlnh() -> Self {
        CalculusId::new(Base::Stlnh)
    }

    pub fn stln() -> Self {
        CalculusId::new(Base::Stln)
    }

    pub fn with_cut(self, allow_cut: bool) -> Self {
        CalculusId { allow_cut, ..self }
    }

    pub fn with_hypotheses(self, allow_hypotheses: bool) -> Self {
        CalculusId {
            allow_hypotheses,
            ..self
        }
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.base {
            Base::Ikd => "iK_d",
            Base::Ikds => "iK_d*",
            Base::Stlnh => "STL(N,H)",
            Base::Stln => "STL(N)",
        })?;
        if self.allow_cut != !self.base.is_cut_free_family() {
            f.write_str(if self.allow_cut { "+cut" } else { "-cut" })?;
        }
        if self.allow_hypotheses {
            f.write_str("+hyp")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
