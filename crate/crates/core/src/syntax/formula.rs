use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// A formula over ⊤, ⊥, atoms, ∧, ∨, → (dynamic), ⊃ (Heyting) and ∇.
///
/// Children are reference counted, so cloning is cheap and subterms are
/// shared freely between sequents and proofs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Arc<str>),
    Top,
    Bot,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    DynImp(Arc<Formula>, Arc<Formula>),
    HeytImp(Arc<Formula>, Arc<Formula>),
    Nabla(Arc<Formula>),
}

/// Binary connectives, used where an operation is uniform over them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    And,
    Or,
    DynImp,
    HeytImp,
}

/// Checks the atom name shape `[a-z][a-zA-Z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Formula {
    /// Builds an atom. Panics on a malformed name; use the parser for
    /// untrusted input.
    pub fn atom(name: &str) -> Formula {
        assert!(is_atom_name(name), "malformed atom name {name:?}");
        Formula::Atom(Arc::from(name))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn dyn_imp(l: Formula, r: Formula) -> Formula {
        Formula::DynImp(Arc::new(l), Arc::new(r))
    }

    pub fn heyt_imp(l: Formula, r: Formula) -> Formula {
        Formula::HeytImp(Arc::new(l), Arc::new(r))
    }

    pub fn nabla(body: Formula) -> Formula {
        Formula::Nabla(Arc::new(body))
    }

    /// `∇ⁿ self`.
    pub fn nabla_n(self, n: usize) -> Formula {
        (0..n).fold(self, |f, _| Formula::nabla(f))
    }

    /// `□A`, i.e. `⊤ → A`.
    pub fn boxed(body: Formula) -> Formula {
        Formula::dyn_imp(Formula::Top, body)
    }

    pub fn binary(conn: Connective, l: Formula, r: Formula) -> Formula {
        match conn {
            Connective::And => Formula::and(l, r),
            Connective::Or => Formula::or(l, r),
            Connective::DynImp => Formula::dyn_imp(l, r),
            Connective::HeytImp => Formula::heyt_imp(l, r),
        }
    }

    /// Splits a binary formula into its connective and operands.
    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::And(l, r) => Some((Connective::And, l, r)),
            Formula::Or(l, r) => Some((Connective::Or, l, r)),
            Formula::DynImp(l, r) => Some((Connective::DynImp, l, r)),
            Formula::HeytImp(l, r) => Some((Connective::HeytImp, l, r)),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn is_nabla(&self) -> bool {
        matches!(self, Formula::Nabla(_))
    }

    /// The body of a ∇-headed formula.
    pub fn unwrap_nabla(&self) -> Option<&Formula> {
        match self {
            Formula::Nabla(b) => Some(b),
            _ => None,
        }
    }

    /// The body of `⊤ → B`.
    pub fn unwrap_box(&self) -> Option<&Formula> {
        match self {
            Formula::DynImp(l, r) if **l == Formula::Top => Some(r),
            _ => None,
        }
    }

    /// Connective-counting rank; ∇ does not contribute.
    pub fn rank(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Nabla(b) => b.rank(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::DynImp(l, r) | Formula::HeytImp(l, r) => {
                l.rank().max(r.rank()) + 1
            }
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Nabla(b) => 1 + b.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::DynImp(l, r) | Formula::HeytImp(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Largest number of ∇ on any root-to-leaf path.
    pub fn nabla_nesting(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::Nabla(b) => 1 + b.nabla_nesting(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::DynImp(l, r) | Formula::HeytImp(l, r) => {
                l.nabla_nesting().max(r.nabla_nesting())
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Nabla(b) => b.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::DynImp(l, r) | Formula::HeytImp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// True when no ⊃ occurs anywhere.
    pub fn is_heyting_free(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => true,
            Formula::HeytImp(..) => false,
            Formula::Nabla(b) => b.is_heyting_free(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::DynImp(l, r) => {
                l.is_heyting_free() && r.is_heyting_free()
            }
        }
    }

    pub fn strip_nabla(&self) -> NablaPrefix {
        let mut depth = 0;
        let mut core = self;
        while let Formula::Nabla(b) = core {
            depth += 1;
            core = b;
        }
        NablaPrefix {
            depth,
            core: core.clone(),
        }
    }

    /// Removes exactly `n` leading ∇, if present.
    pub fn peel_nabla(&self, n: usize) -> Option<&Formula> {
        let mut f = self;
        for _ in 0..n {
            f = f.unwrap_nabla()?;
        }
        Some(f)
    }

    /// Every formula reachable from `self` by at most `d` applications of ∇
    /// and □, without duplicates, in canonical order.
    pub fn variants_up_to(&self, d: usize) -> BTreeSet<Formula> {
        let mut all = BTreeSet::new();
        let mut frontier = Vec::from([self.clone()]);
        all.insert(self.clone());
        for _ in 0..d {
            let mut next = Vec::new();
            for f in &frontier {
                for g in [Formula::nabla(f.clone()), Formula::boxed(f.clone())] {
                    if all.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
            frontier = next;
        }
        all
    }

    /// If `self` is a variant of `base`, the chain of operations that
    /// produces it, outermost last.
    pub fn variant_path(&self, base: &Formula) -> Option<Vec<VariantStep>> {
        if self == base {
            return Some(Vec::new());
        }
        let (step, inner) = match self {
            Formula::Nabla(b) => (VariantStep::Nabla, &**b),
            Formula::DynImp(l, r) if **l == Formula::Top => (VariantStep::Box, &**r),
            _ => return None,
        };
        let mut path = inner.variant_path(base)?;
        path.push(step);
        Some(path)
    }
}

/// One application in a variant chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantStep {
    Nabla,
    Box,
}

/// `∇ⁿ core` with `core` not ∇-headed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NablaPrefix {
    pub depth: usize,
    pub core: Formula,
}

impl NablaPrefix {
    pub fn rewrap(&self) -> Formula {
        self.core.clone().nabla_n(self.depth)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        super::print::write_formula(&mut s, self, 0);
        f.write_str(&s)
    }
}
