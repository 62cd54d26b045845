use core::fmt;

use crate::syntax::{Formula, Multiset};

/// Rule identifiers of both calculus families. STL-only rules keep distinct names
/// even where they resemble an iK_d rule (`Lw` vs `LW`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    IdP,
    LBot,
    RTop,
    LW,
    Rw,
    LAndN,
    RAnd,
    LOrN,
    ROr1,
    ROr2,
    LDynImpN,
    RDynImp,
    LHeytImpN,
    RHeytImp,
    N,
    Lc,
    Cut,
    LAnd1,
    LAnd2,
    LOr,
    LDynImp,
    LHeytImp,
    Lw,
    Id,
}

impl RuleId {
    pub const ALL: [RuleId; 24] = [
        RuleId::IdP,
        RuleId::LBot,
        RuleId::RTop,
        RuleId::LW,
        RuleId::Rw,
        RuleId::LAndN,
        RuleId::RAnd,
        RuleId::LOrN,
        RuleId::ROr1,
        RuleId::ROr2,
        RuleId::LDynImpN,
        RuleId::RDynImp,
        RuleId::LHeytImpN,
        RuleId::RHeytImp,
        RuleId::N,
        RuleId::Lc,
        RuleId::Cut,
        RuleId::LAnd1,
        RuleId::LAnd2,
        RuleId::LOr,
        RuleId::LDynImp,
        RuleId::LHeytImp,
        RuleId::Lw,
        RuleId::Id,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::IdP => "IdP",
            RuleId::LBot => "LBot",
            RuleId::RTop => "RTop",
            RuleId::LW => "LW",
            RuleId::Rw => "Rw",
            RuleId::LAndN => "LAndN",
            RuleId::RAnd => "RAnd",
            RuleId::LOrN => "LOrN",
            RuleId::ROr1 => "ROr1",
            RuleId::ROr2 => "ROr2",
            RuleId::LDynImpN => "LDynImpN",
            RuleId::RDynImp => "RDynImp",
            RuleId::LHeytImpN => "LHeytImpN",
            RuleId::RHeytImp => "RHeytImp",
            RuleId::N => "N",
            RuleId::Lc => "Lc",
            RuleId::Cut => "Cut",
            RuleId::LAnd1 => "LAnd1",
            RuleId::LAnd2 => "LAnd2",
            RuleId::LOr => "LOr",
            RuleId::LDynImp => "LDynImp",
            RuleId::LHeytImp => "LHeytImp",
            RuleId::Lw => "Lw",
            RuleId::Id => "Id",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.iter().copied().find(|r| r.name() == name)
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, RuleId::IdP | RuleId::LBot | RuleId::RTop | RuleId::Id)
    }

    pub fn arity(self) -> usize {
        match self {
            RuleId::IdP | RuleId::LBot | RuleId::RTop | RuleId::Id => 0,
            RuleId::RAnd
            | RuleId::LOrN
            | RuleId::LDynImpN
            | RuleId::LHeytImpN
            | RuleId::Cut
            | RuleId::LOr
            | RuleId::LDynImp
            | RuleId::LHeytImp => 2,
            _ => 1,
        }
    }

    /// Right rules whose principal formula is the succedent.
    pub fn is_right_rule(self) -> bool {
        matches!(
            self,
            RuleId::RTop | RuleId::RAnd | RuleId::ROr1 | RuleId::ROr2 | RuleId::RDynImp | RuleId::RHeytImp
        )
    }

    pub fn is_heyting_rule(self) -> bool {
        matches!(self, RuleId::LHeytImpN | RuleId::RHeytImp | RuleId::LHeytImp)
    }

    pub(crate) fn needs_n(self) -> bool {
        matches!(
            self,
            RuleId::LAndN | RuleId::LOrN | RuleId::LDynImpN | RuleId::LHeytImpN
        )
    }

    pub(crate) fn needs_principal(self) -> bool {
        self.needs_n()
            || matches!(
                self,
                RuleId::Lc | RuleId::LAnd1 | RuleId::LAnd2 | RuleId::LOr | RuleId::LDynImp | RuleId::LHeytImp
            )
    }

    pub(crate) fn needs_intro(self) -> bool {
        matches!(self, RuleId::LW | RuleId::Lw)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule identifier together with the data that pins down one instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub n: Option<usize>,
    pub principal: Option<Formula>,
    pub intro: Option<Multiset>,
    pub cut_formula: Option<Formula>,
    pub cut_exponent: Option<usize>,
}

impl RuleInstance {
    /// An instance carrying no data, for rules that need none.
    pub fn bare(rule: RuleId) -> Self {
        RuleInstance {
            rule,
            n: None,
            principal: None,
            intro: None,
            cut_formula: None,
            cut_exponent: None,
        }
    }

    /// A rule with exponent and principal formula.
    pub fn left_n(rule: RuleId, n: usize, principal: Formula) -> Self {
        RuleInstance {
            n: Some(n),
            principal: Some(principal),
            ..RuleInstance::bare(rule)
        }
    }

    /// A rule with a principal formula only.
    pub fn with_principal(rule: RuleId, principal: Formula) -> Self {
        RuleInstance {
            principal: Some(principal),
            ..RuleInstance::bare(rule)
        }
    }

    pub fn lw(intro: Multiset) -> Self {
        RuleInstance {
            intro: Some(intro),
            ..RuleInstance::bare(RuleId::LW)
        }
    }

    pub fn stl_lw(f: Formula) -> Self {
        RuleInstance {
            intro: Some(Multiset::singleton(f)),
            ..RuleInstance::bare(RuleId::Lw)
        }
    }

    pub fn cut(formula: Formula, exponent: usize) -> Self {
        RuleInstance {
            cut_formula: Some(formula),
            cut_exponent: (exponent > 0).then_some(exponent),
            ..RuleInstance::bare(RuleId::Cut)
        }
    }

    pub fn exponent(&self) -> usize {
        self.cut_exponent.unwrap_or(0)
    }
}
