use alloc::format;
use alloc::vec::Vec;

use super::{internal, node_of, MetaError, Res};
use crate::kernel::build::*;
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::syntax::{Formula, Multiset, Sequent};

/// The antecedent `{∇^{m_i}(A_i⊃B_i)}_i, {∇^{n_j}(C_j→D_j)}_j`. Indices into
/// either list are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VisserAntecedent {
    pub heyting_parts: Vec<(usize, Formula, Formula)>,
    pub dyn_parts: Vec<(usize, Formula, Formula)>,
}

impl VisserAntecedent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn heyting(mut self, m: usize, a: Formula, b: Formula) -> Self {
        self.heyting_parts.push((m, a, b));
        self
    }

    pub fn dynamic(mut self, n: usize, c: Formula, d: Formula) -> Self {
        self.dyn_parts.push((n, c, d));
        self
    }

    /// Reads an antecedent whose members are all of the form `∇ᵐ(A⊃B)` or
    /// `∇ⁿ(C→D)`.
    pub fn from_antecedent(m: &Multiset) -> Option<Self> {
        let mut x = Self::new();
        for f in m.iter() {
            let p = f.strip_nabla();
            match &p.core {
                Formula::HeytImp(a, b) => x.heyting_parts.push((p.depth, (**a).clone(), (**b).clone())),
                Formula::DynImp(c, d) => x.dyn_parts.push((p.depth, (**c).clone(), (**d).clone())),
                _ => return None,
            }
        }
        Some(x)
    }

    pub fn heyting_formula(&self, i: usize) -> Formula {
        let (m, a, b) = &self.heyting_parts[i];
        Formula::heyt_imp(a.clone(), b.clone()).nabla_n(*m)
    }

    pub fn dyn_formula(&self, j: usize) -> Formula {
        let (n, c, d) = &self.dyn_parts[j];
        Formula::dyn_imp(c.clone(), d.clone()).nabla_n(*n)
    }

    fn formulas(&self) -> impl Iterator<Item = Formula> + '_ {
        let h = (0..self.heyting_parts.len()).map(|i| self.heyting_formula(i));
        h.chain((0..self.dyn_parts.len()).map(|j| self.dyn_formula(j)))
    }

    pub fn antecedent(&self) -> Multiset {
        self.formulas().collect()
    }

    /// The conjunction `X`, Heyting parts first, folded to the left.
    pub fn to_formula(&self) -> Formula {
        self.formulas().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    pub fn is_heyting_free(&self) -> bool {
        self.heyting_parts.is_empty()
            && self
                .dyn_parts
                .iter()
                .all(|(_, c, d)| c.is_heyting_free() && d.is_heyting_free())
    }

    /// The endsequent a verdict must prove, for a goal with components `E`
    /// and `F`. `None` when the verdict does not belong to the family or
    /// its indices do not fit.
    pub fn verdict_sequent(
        &self,
        family: VisserFamily,
        e: &Formula,
        f: &Formula,
        verdict: &VisserVerdict,
    ) -> Option<Sequent> {
        let gamma = self.antecedent();
        match verdict {
            VisserVerdict::HeytingPremise { index, .. } => {
                let (m, a, _) = self.heyting_parts.get(*index)?;
                Some(Sequent::new(gamma, Some(a.clone().nabla_n(*m))))
            }
            VisserVerdict::DynPremise { index, .. } => {
                let (n, c, _) = self.dyn_parts.get(*index)?;
                let n = n.checked_sub(1)?;
                Some(Sequent::new(gamma, Some(c.clone().nabla_n(n))))
            }
            VisserVerdict::LeftDisjunct(_) if family == VisserFamily::Disjunctive => {
                Some(Sequent::new(gamma, Some(e.clone())))
            }
            VisserVerdict::RightDisjunct(_) if family == VisserFamily::Disjunctive => {
                Some(Sequent::new(gamma, Some(f.clone())))
            }
            VisserVerdict::Residual { heyting, dyn_, .. } => {
                let (k, lift) = match family {
                    VisserFamily::Implicative(k) => (k, 1),
                    VisserFamily::Heyting(k) => (k, 0),
                    VisserFamily::Disjunctive => return None,
                };
                let mut ant = Multiset::singleton(e.clone());
                for &i in heyting {
                    let (m, a, b) = self.heyting_parts.get(i)?;
                    let m = m.checked_sub(k)?;
                    ant.insert(Formula::heyt_imp(a.clone(), b.clone()).nabla_n(m + lift));
                }
                for &j in dyn_ {
                    let (n, c, d) = self.dyn_parts.get(j)?;
                    let n = n.checked_sub(k)?;
                    ant.insert(Formula::dyn_imp(c.clone(), d.clone()).nabla_n(n + lift));
                }
                Some(Sequent::new(ant, Some(f.clone())))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VisserFamily {
    /// Goal `E ∨ F`.
    Disjunctive,
    /// Goal `∇ᵏ(E → F)`.
    Implicative(usize),
    /// Goal `∇ᵏ(E ⊃ F)`.
    Heyting(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VisserVerdict {
    /// `Γ_X ⇒ ∇^{m_i}A_i`.
    HeytingPremise { index: usize, proof: ProofTree },
    /// `Γ_X ⇒ ∇^{n_j−1}C_j`.
    DynPremise { index: usize, proof: ProofTree },
    /// `Γ_X ⇒ E`.
    LeftDisjunct(ProofTree),
    /// `Γ_X ⇒ F`.
    RightDisjunct(ProofTree),
    /// The selected parts, with shifted exponents, together with `E` prove `F`.
    Residual {
        heyting: Vec<usize>,
        dyn_: Vec<usize>,
        proof: ProofTree,
    },
}

impl VisserVerdict {
    pub fn proof(&self) -> &ProofTree {
        match self {
            VisserVerdict::HeytingPremise { proof, .. }
            | VisserVerdict::DynPremise { proof, .. }
            | VisserVerdict::LeftDisjunct(proof)
            | VisserVerdict::RightDisjunct(proof)
            | VisserVerdict::Residual { proof, .. } => proof,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            VisserVerdict::HeytingPremise { .. } => "heyting-premise",
            VisserVerdict::DynPremise { .. } => "dyn-premise",
            VisserVerdict::LeftDisjunct(_) => "left-disjunct",
            VisserVerdict::RightDisjunct(_) => "right-disjunct",
            VisserVerdict::Residual { .. } => "residual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disjunct {
    Left(ProofTree),
    Right(ProofTree),
}

impl Disjunct {
    pub fn proof(&self) -> &ProofTree {
        match self {
            Disjunct::Left(t) | Disjunct::Right(t) => t,
        }
    }
}

/// From a proof of `⇒ A ∨ B` in iK_d or iK_d*, a proof of `⇒ A` or of `⇒ B`.
pub fn split_disjunction(t: &ProofTree) -> Result<Disjunct, MetaError> {
    let calc = if t.mentions_heyting() {
        CalculusId::ikd()
    } else {
        CalculusId::ikds()
    };
    check_proof(t, calc).map_err(MetaError::InputRejected)?;
    let s = t.sequent();
    if !s.antecedent.is_empty() {
        return Err(MetaError::AntecedentMismatch {
            expected: Multiset::new(),
            found: s.antecedent.clone(),
        });
    }
    let verdict = extract(t, &VisserAntecedent::new(), VisserFamily::Disjunctive, calc)?;
    match verdict {
        VisserVerdict::LeftDisjunct(p) => Ok(Disjunct::Left(p)),
        VisserVerdict::RightDisjunct(p) => Ok(Disjunct::Right(p)),
        other => internal(format!("{} verdict with an empty antecedent", other.kind())),
    }
}

/// Visser's rule for a proof of `Γ_X ⇒ E ∨ F`.
pub fn visser_disjunctive(t: &ProofTree, x: &VisserAntecedent) -> Result<VisserVerdict, MetaError> {
    checked_extract(t, x, VisserFamily::Disjunctive, CalculusId::ikd())
}

/// Visser's rule for a proof of `Γ_X ⇒ ∇ᵏ(E → F)`.
pub fn visser_implicative(t: &ProofTree, x: &VisserAntecedent, k: usize) -> Result<VisserVerdict, MetaError> {
    checked_extract(t, x, VisserFamily::Implicative(k), CalculusId::ikd())
}

/// Visser's rule for a proof of `Γ_X ⇒ ∇ᵏ(E ⊃ F)`.
pub fn visser_heyting(t: &ProofTree, x: &VisserAntecedent, k: usize) -> Result<VisserVerdict, MetaError> {
    checked_extract(t, x, VisserFamily::Heyting(k), CalculusId::ikd())
}

/// The disjunctive and implicative rules for ⊃-free inputs; verdict proofs
/// are certified in iK_d*.
pub fn visser_star(t: &ProofTree, x: &VisserAntecedent, family: VisserFamily) -> Result<VisserVerdict, MetaError> {
    if !x.is_heyting_free() || !t.sequent().is_heyting_free() || matches!(family, VisserFamily::Heyting(_)) {
        return Err(MetaError::OutsideLanguage);
    }
    checked_extract(t, x, family, CalculusId::ikds())
}

fn checked_extract(t: &ProofTree, x: &VisserAntecedent, family: VisserFamily, calc: CalculusId) -> Res<VisserVerdict> {
    check_proof(t, calc).map_err(MetaError::InputRejected)?;
    let expected = x.antecedent();
    if t.sequent().antecedent != expected {
        return Err(MetaError::AntecedentMismatch {
            expected,
            found: t.sequent().antecedent.clone(),
        });
    }
    extract(t, x, family, calc)
}

/// Splits the goal into `E` and `F` according to the family.
fn goal_components(s: &Sequent, family: VisserFamily) -> Option<(Formula, Formula)> {
    let g = s.succedent.as_ref()?;
    let (body, heyting) = match family {
        VisserFamily::Disjunctive => {
            return match g {
                Formula::Or(e, f) => Some(((**e).clone(), (**f).clone())),
                _ => None,
            }
        }
        VisserFamily::Implicative(k) => (g.peel_nabla(k)?, false),
        VisserFamily::Heyting(k) => (g.peel_nabla(k)?, true),
    };
    match (body, heyting) {
        (Formula::DynImp(e, f), false) | (Formula::HeytImp(e, f), true) => Some(((**e).clone(), (**f).clone())),
        _ => None,
    }
}

fn extract(t: &ProofTree, x: &VisserAntecedent, family: VisserFamily, calc: CalculusId) -> Res<VisserVerdict> {
    let (e, f) = goal_components(t.sequent(), family).ok_or_else(|| MetaError::Shape(t.sequent().clone()))?;
    let parts = Part::all(x);
    let goal = match family {
        VisserFamily::Disjunctive => Goal::Disjunction(e.clone()),
        VisserFamily::Implicative(k) => Goal::Implication { k, heyting: false },
        VisserFamily::Heyting(k) => Goal::Implication { k, heyting: true },
    };
    let gamma = x.antecedent();
    let verdict = match walk(t, &parts, goal)? {
        Found::Heyting(index, p) => VisserVerdict::HeytingPremise {
            index,
            proof: lw_to(p, &gamma),
        },
        Found::Dyn(index, p) => VisserVerdict::DynPremise {
            index,
            proof: lw_to(p, &gamma),
        },
        Found::Left(p) => VisserVerdict::LeftDisjunct(lw_to(p, &gamma)),
        Found::Right(p) => VisserVerdict::RightDisjunct(lw_to(p, &gamma)),
        Found::Residual(heyting, dyn_, proof) => VisserVerdict::Residual { heyting, dyn_, proof },
    };
    let want = x
        .verdict_sequent(family, &e, &f, &verdict)
        .ok_or_else(|| MetaError::Internal(format!("{} verdict outside the family", verdict.kind())))?;
    if verdict.proof().sequent() != &want {
        return internal(format!(
            "verdict proves `{}` instead of `{want}`",
            verdict.proof().sequent()
        ));
    }
    check_proof(verdict.proof(), calc).map_err(|e| MetaError::Internal(format!("verdict proof rejected: {e}")))?;
    Ok(verdict)
}

/// One antecedent part at the current ∇ depth.
#[derive(Clone)]
struct Part {
    index: usize,
    heyting: bool,
    exponent: usize,
    formula: Formula,
}

impl Part {
    fn all(x: &VisserAntecedent) -> Vec<Part> {
        let h = x.heyting_parts.iter().enumerate().map(|(i, (m, a, b))| Part {
            index: i,
            heyting: true,
            exponent: *m,
            formula: Formula::heyt_imp(a.clone(), b.clone()),
        });
        let d = x.dyn_parts.iter().enumerate().map(|(j, (n, c, d))| Part {
            index: j,
            heyting: false,
            exponent: *n,
            formula: Formula::dyn_imp(c.clone(), d.clone()),
        });
        h.chain(d).collect()
    }

    fn current(&self) -> Formula {
        self.formula.clone().nabla_n(self.exponent)
    }
}

#[derive(Clone)]
enum Goal {
    Disjunction(Formula),
    Implication { k: usize, heyting: bool },
    Empty,
}

enum Found {
    Heyting(usize, ProofTree),
    Dyn(usize, ProofTree),
    Left(ProofTree),
    Right(ProofTree),
    Residual(Vec<usize>, Vec<usize>, ProofTree),
}

fn lookup(parts: &[Part], principal: &Formula, heyting: bool) -> Res<usize> {
    parts
        .iter()
        .find(|p| p.heyting == heyting && &p.current() == principal)
        .map(|p| p.index)
        .ok_or_else(|| MetaError::Internal(format!("principal `{principal}` is not a part")))
}

/// Assigns each antecedent occurrence to a distinct part.
fn residual_indices(ant: &Multiset, parts: &[Part]) -> Res<(Vec<usize>, Vec<usize>)> {
    let mut used = alloc::vec![false; parts.len()];
    let (mut hs, mut ds) = (Vec::new(), Vec::new());
    for f in ant.iter() {
        let Some(k) = (0..parts.len()).find(|&k| !used[k] && &parts[k].current() == f) else {
            return internal(format!("`{f}` is not a part"));
        };
        used[k] = true;
        if parts[k].heyting {
            hs.push(parts[k].index);
        } else {
            ds.push(parts[k].index);
        }
    }
    hs.sort_unstable();
    ds.sort_unstable();
    Ok((hs, ds))
}

fn walk(t: &ProofTree, parts: &[Part], goal: Goal) -> Res<Found> {
    let nd = node_of(t)?;
    let p0 = || nd.premises[0].clone();
    let principal = || nd.rule.principal.as_ref().unwrap();
    match (nd.rule.rule, &goal) {
        (RuleId::LW, _) => walk(&nd.premises[0], parts, goal),
        (RuleId::LHeytImpN, _) => Ok(Found::Heyting(lookup(parts, principal(), true)?, p0())),
        (RuleId::LDynImpN, _) => Ok(Found::Dyn(lookup(parts, principal(), false)?, p0())),
        (RuleId::Rw, Goal::Disjunction(e)) => Ok(Found::Left(rw(p0(), e.clone()))),
        (RuleId::Rw, Goal::Implication { .. }) => walk(&nd.premises[0], parts, Goal::Empty),
        (RuleId::ROr1, Goal::Disjunction(_)) => Ok(Found::Left(p0())),
        (RuleId::ROr2, Goal::Disjunction(_)) => Ok(Found::Right(p0())),
        (RuleId::N, Goal::Implication { k, heyting }) if *k > 0 => {
            let inner = Goal::Implication {
                k: k - 1,
                heyting: *heyting,
            };
            lift(walk(&nd.premises[0], &unwrapped(parts), inner)?)
        }
        (RuleId::N, Goal::Empty) => lift(walk(&nd.premises[0], &unwrapped(parts), Goal::Empty)?),
        (RuleId::RDynImp, Goal::Implication { k: 0, heyting: false })
        | (RuleId::RHeytImp, Goal::Implication { k: 0, heyting: true }) => {
            let (hs, ds) = residual_indices(&nd.sequent.antecedent, parts)?;
            Ok(Found::Residual(hs, ds, p0()))
        }
        (rule, _) => internal(format!("{} cannot end this proof", rule.name())),
    }
}

fn unwrapped(parts: &[Part]) -> Vec<Part> {
    parts
        .iter()
        .filter(|p| p.exponent > 0)
        .map(|p| Part {
            exponent: p.exponent - 1,
            ..p.clone()
        })
        .collect()
}

/// Re-applies `N` to the premise outcomes; residuals pass through.
fn lift(found: Found) -> Res<Found> {
    match found {
        Found::Heyting(i, p) => Ok(Found::Heyting(i, n(p))),
        Found::Dyn(j, p) => Ok(Found::Dyn(j, n(p))),
        r @ Found::Residual(..) => Ok(r),
        Found::Left(_) | Found::Right(_) => internal("disjunct under N"),
    }
}
