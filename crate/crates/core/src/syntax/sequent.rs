use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::Formula;

/// A finite multiset of formulas, kept sorted so that equality is
/// order-insensitive and multiplicity-preserving.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(Vec<Formula>);

impl Multiset {
    pub fn new() -> Self {
        Multiset(Vec::new())
    }

    pub fn singleton(f: Formula) -> Self {
        Multiset(alloc::vec![f])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }

    pub fn count(&self, f: &Formula) -> usize {
        let lo = self.0.partition_point(|g| g < f);
        let hi = self.0.partition_point(|g| g <= f);
        hi - lo
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    pub fn insert(&mut self, f: Formula) {
        let at = self.0.partition_point(|g| g <= &f);
        self.0.insert(at, f);
    }

    /// Removes one occurrence; false when absent.
    pub fn remove(&mut self, f: &Formula) -> bool {
        match self.0.binary_search(f) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with(&self, f: Formula) -> Self {
        let mut m = self.clone();
        m.insert(f);
        m
    }

    /// A copy with one occurrence of `f` removed.
    pub fn without(&self, f: &Formula) -> Option<Self> {
        let mut m = self.clone();
        m.remove(f).then_some(m)
    }

    /// Multiset sum.
    pub fn union(&self, other: &Multiset) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i].clone());
                i += 1;
            } else {
                v.push(other.0[j].clone());
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Multiset(v)
    }

    /// `self − other`, defined only when `other ⊆ self`.
    pub fn difference(&self, other: &Multiset) -> Option<Self> {
        let mut m = self.clone();
        for f in other.iter() {
            if !m.remove(f) {
                return None;
            }
        }
        Some(m)
    }

    pub fn is_submultiset_of(&self, other: &Multiset) -> bool {
        other.difference(self).is_some()
    }

    /// Each member wrapped in `n` ∇.
    pub fn nabla(&self, n: usize) -> Self {
        Multiset(self.0.iter().map(|f| f.clone().nabla_n(n)).collect())
    }

    /// Each member wrapped in □.
    pub fn boxed(&self) -> Self {
        self.0.iter().cloned().map(Formula::boxed).collect()
    }

    /// Strips one ∇ from every member, if all are ∇-headed.
    pub fn unwrap_nabla(&self) -> Option<Self> {
        self.0
            .iter()
            .map(|f| f.unwrap_nabla().cloned())
            .collect::<Option<Vec<_>>>()
            .map(Multiset::from)
    }

    pub fn all_nabla_headed(&self) -> bool {
        self.0.iter().all(Formula::is_nabla)
    }

    /// Distinct members in canonical order.
    pub fn distinct(&self) -> impl Iterator<Item = &Formula> {
        let mut last: Option<&Formula> = None;
        self.0.iter().filter(move |f| {
            let fresh = last != Some(*f);
            last = Some(*f);
            fresh
        })
    }

    /// The collapsed set form.
    pub fn to_set(&self) -> Self {
        Multiset(self.distinct().cloned().collect())
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for f in &self.0 {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn into_vec(self) -> Vec<Formula> {
        self.0
    }
}

impl From<Vec<Formula>> for Multiset {
    fn from(mut v: Vec<Formula>) -> Self {
        v.sort();
        Multiset(v)
    }
}

impl FromIterator<Formula> for Multiset {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Multiset::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl<'a> IntoIterator for &'a Multiset {
    type Item = &'a Formula;
    type IntoIter = core::slice::Iter<'a, Formula>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// `Γ ⇒ Δ` with a multiset antecedent and at most one succedent formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Multiset,
    pub succedent: Option<Formula>,
}

impl Sequent {
    pub fn new(antecedent: impl Into<Multiset>, succedent: Option<Formula>) -> Self {
        Sequent {
            antecedent: antecedent.into(),
            succedent,
        }
    }

    /// `⇒ A`.
    pub fn theorem(f: Formula) -> Self {
        Sequent::new(Multiset::new(), Some(f))
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = self.antecedent.atoms();
        if let Some(s) = &self.succedent {
            s.collect_atoms(&mut out);
        }
        out
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    pub fn is_heyting_free(&self) -> bool {
        self.formulas().all(Formula::is_heyting_free)
    }

    /// Same sequent with the antecedent collapsed to a set.
    pub fn collapsed(&self) -> Sequent {
        Sequent {
            antecedent: self.antecedent.to_set(),
            succedent: self.succedent.clone(),
        }
    }

    pub fn with_antecedent(&self, antecedent: Multiset) -> Sequent {
        Sequent {
            antecedent,
            succedent: self.succedent.clone(),
        }
    }

    pub fn with_succedent(&self, succedent: Option<Formula>) -> Sequent {
        Sequent {
            antecedent: self.antecedent.clone(),
            succedent,
        }
    }

    pub fn max_nabla_nesting(&self) -> usize {
        self.formulas().map(Formula::nabla_nesting).max().unwrap_or(0)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::print_sequent(self))
    }
}
