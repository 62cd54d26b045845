//! Bounded backward proof search for iK_d and iK_d*.
//!
//! Weakening is only ever needed at the leaves and directly below `N`, so
//! the search folds it into those steps: axioms close a sequent by weakening
//! away the rest of the context, and the `N` step weakens away every
//! antecedent formula that is not ∇-headed. `max_depth` bounds the number of
//! logical steps on a branch; weakenings are free.
//!
//! `Exhausted` only says that no proof was found inside the budget.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::build::*;
use crate::kernel::{Base, CalculusId, ProofTree};
use crate::syntax::{Formula, Multiset, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    /// Logical steps on any branch.
    pub max_depth: usize,
    /// How far ∇-nesting may grow beyond the goal's maximum.
    pub max_nabla_excess: usize,
    /// Total sequent expansions.
    pub max_nodes: usize,
}

impl SearchBudget {
    pub const fn new(max_depth: usize, max_nabla_excess: usize, max_nodes: usize) -> Self {
        SearchBudget {
            max_depth,
            max_nabla_excess,
            max_nodes,
        }
    }

    pub fn with_depth(self, max_depth: usize) -> Self {
        SearchBudget { max_depth, ..self }
    }

    pub fn with_nabla_excess(self, max_nabla_excess: usize) -> Self {
        SearchBudget {
            max_nabla_excess,
            ..self
        }
    }

    pub fn with_nodes(self, max_nodes: usize) -> Self {
        SearchBudget { max_nodes, ..self }
    }

    /// Pointwise `self ≥ other`.
    pub fn covers(&self, other: &SearchBudget) -> bool {
        self.max_depth >= other.max_depth
            && self.max_nabla_excess >= other.max_nabla_excess
            && self.max_nodes >= other.max_nodes
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(30, 4, 200_000)
    }
}

/// The budget bound that stopped the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BudgetDimension {
    Depth,
    NablaExcess,
    Nodes,
}

impl BudgetDimension {
    pub fn name(self) -> &'static str {
        match self {
            BudgetDimension::Depth => "depth",
            BudgetDimension::NablaExcess => "nabla-excess",
            BudgetDimension::Nodes => "nodes",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub expansions: usize,
    pub loop_prunes: usize,
    pub depth_cutoffs: usize,
    /// Applications of `R→` that had to drop context formulas nested
    /// beyond the ∇-excess bound.
    pub nabla_drops: usize,
    /// Deepest depth bound tried.
    pub depth_reached: usize,
    /// `None` when the bounded space was explored completely.
    pub binding: Option<BudgetDimension>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(ProofTree),
    Exhausted(SearchReport),
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::Exhausted(_) => None,
        }
    }

    pub fn into_proof(self) -> Option<ProofTree> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::Exhausted(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Prune a branch whose sequent, collapsed to set form, already
    /// occurs below it.
    pub loop_check: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { loop_check: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    /// Search only runs in iK_d and iK_d*.
    UnsupportedCalculus(CalculusId),
    /// The goal mentions ⊃ but the calculus is iK_d*.
    OutsideLanguage(Sequent),
    /// Every budget bound must be at least one.
    InvalidBudget(SearchBudget),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::UnsupportedCalculus(c) => write!(f, "proof search is not available for {c}"),
            SearchError::OutsideLanguage(s) => write!(f, "`{s}` mentions => but the calculus is ⊃-free"),
            SearchError::InvalidBudget(b) => write!(f, "budget bounds must be at least 1, got {b:?}"),
        }
    }
}

impl core::error::Error for SearchError {}

pub fn prove(goal: &Sequent, calc: CalculusId, budget: SearchBudget) -> Result<SearchOutcome, SearchError> {
    prove_with(goal, calc, budget, SearchOptions::default())
}

/// Searches for a proof of `⇒ f`.
pub fn prove_formula(f: &Formula, calc: CalculusId, budget: SearchBudget) -> Result<SearchOutcome, SearchError> {
    prove(&Sequent::theorem(f.clone()), calc, budget)
}

/// Iterative deepening on the number of logical steps. Cut is never used,
/// whatever `calc.allow_cut` says.
pub fn prove_with(
    goal: &Sequent,
    calc: CalculusId,
    budget: SearchBudget,
    options: SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    if !calc.base.is_cut_free_family() {
        return Err(SearchError::UnsupportedCalculus(calc));
    }
    if calc.base == Base::Ikds && !goal.is_heyting_free() {
        return Err(SearchError::OutsideLanguage(goal.clone()));
    }
    if budget.max_depth == 0 || budget.max_nabla_excess == 0 || budget.max_nodes == 0 {
        return Err(SearchError::InvalidBudget(budget));
    }
    let mut s = Searcher {
        loop_check: options.loop_check,
        nabla_limit: goal.max_nabla_nesting() + budget.max_nabla_excess,
        max_nodes: budget.max_nodes,
        report: SearchReport::default(),
        on_path: BTreeMap::new(),
        depth_on_path: 0,
        proved: BTreeMap::new(),
        failed: BTreeMap::new(),
    };
    for d in 0..=budget.max_depth {
        s.report.depth_reached = d;
        match s.search(goal, d) {
            Err(NodesExhausted) => {
                s.report.binding = Some(BudgetDimension::Nodes);
                break;
            }
            Ok(Ok((t, _))) => {
                debug_assert_eq!(crate::kernel::check_proof(&t, calc), Ok(()));
                return Ok(SearchOutcome::Found(t));
            }
            Ok(Err(f)) => {
                s.report.binding = if f.depth_cut {
                    Some(BudgetDimension::Depth)
                } else if f.nabla_cut {
                    Some(BudgetDimension::NablaExcess)
                } else {
                    None
                };
                if !f.depth_cut {
                    break;
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted(s.report))
}

struct NodesExhausted;

const NO_LOOP: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Failure {
    depth: usize,
    depth_cut: bool,
    nabla_cut: bool,
    /// Lowest path position whose presence caused a loop prune inside.
    loop_dep: usize,
}

impl Failure {
    fn clean(depth: usize) -> Self {
        Failure {
            depth,
            depth_cut: false,
            nabla_cut: false,
            loop_dep: NO_LOOP,
        }
    }

    fn merge(&mut self, other: Failure) {
        self.depth_cut |= other.depth_cut;
        self.nabla_cut |= other.nabla_cut;
        self.loop_dep = self.loop_dep.min(other.loop_dep);
    }
}

type Attempt = Result<(ProofTree, usize), Failure>;

struct Searcher {
    loop_check: bool,
    nabla_limit: usize,
    max_nodes: usize,
    report: SearchReport,
    on_path: BTreeMap<Sequent, usize>,
    depth_on_path: usize,
    /// Proofs with their step height.
    proved: BTreeMap<Sequent, (ProofTree, usize)>,
    /// Failures independent of the path they were found on.
    failed: BTreeMap<Sequent, Failure>,
}

#[derive(Clone, Debug)]
enum Step {
    LAnd(usize, Formula),
    LOr(usize, Formula),
    RAnd,
    ROr1(Formula),
    ROr2(Formula),
    RDyn { a: Formula, dropped: Multiset },
    RHeyt(Formula),
    LDyn(usize, Formula),
    LHeyt(usize, Formula),
    Nabla,
    Rw,
}

impl Searcher {
    fn search(&mut self, s: &Sequent, d: usize) -> Result<Attempt, NodesExhausted> {
        if let Some(t) = closure(s) {
            return Ok(Ok((t, 0)));
        }
        if let Some((t, h)) = self.proved.get(s) {
            if *h <= d {
                return Ok(Ok((t.clone(), *h)));
            }
        }
        if let Some(f) = self.failed.get(s) {
            if !f.depth_cut || d <= f.depth {
                return Ok(Err(Failure { depth: d, ..*f }));
            }
        }
        let key = s.collapsed();
        if self.loop_check {
            if let Some(&i) = self.on_path.get(&key) {
                self.report.loop_prunes += 1;
                return Ok(Err(Failure {
                    loop_dep: i,
                    ..Failure::clean(d)
                }));
            }
        }
        if d == 0 {
            self.report.depth_cutoffs += 1;
            return Ok(Err(Failure {
                depth_cut: true,
                ..Failure::clean(0)
            }));
        }
        self.report.expansions += 1;
        if self.report.expansions > self.max_nodes {
            return Err(NodesExhausted);
        }

        let pos = self.depth_on_path;
        if self.loop_check {
            self.on_path.insert(key.clone(), pos);
        }
        self.depth_on_path += 1;
        let result = self.expand(s, d);
        self.depth_on_path -= 1;
        if self.loop_check {
            self.on_path.remove(&key);
        }

        match result? {
            Ok((t, h)) => {
                self.proved.insert(s.clone(), (t.clone(), h));
                Ok(Ok((t, h)))
            }
            Err(mut f) => {
                if f.loop_dep >= pos {
                    f.loop_dep = NO_LOOP;
                    self.failed.insert(s.clone(), f);
                }
                Ok(Err(f))
            }
        }
    }

    fn expand(&mut self, s: &Sequent, d: usize) -> Result<Attempt, NodesExhausted> {
        let (committed, steps) = self.steps(s);
        let mut failure = Failure::clean(d);
        'steps: for (step, premises) in steps {
            let mut proofs = Vec::with_capacity(premises.len());
            let mut height = 0;
            for p in &premises {
                match self.search(p, d - 1)? {
                    Ok((t, h)) => {
                        height = height.max(h + 1);
                        proofs.push(t);
                    }
                    Err(f) => {
                        failure.merge(f);
                        if let Step::RDyn { dropped, .. } = &step {
                            failure.nabla_cut |= !dropped.is_empty();
                        }
                        if committed {
                            break 'steps;
                        }
                        continue 'steps;
                    }
                }
            }
            return Ok(Ok((build_step(s, step, proofs), height)));
        }
        Ok(Err(failure))
    }

    /// Backward steps in search order. The flag marks a single invertible
    /// step whose failure fails the sequent.
    fn steps(&mut self, s: &Sequent) -> (bool, Vec<(Step, Vec<Sequent>)>) {
        let gamma = &s.antecedent;
        for f in gamma.distinct() {
            let sn = f.strip_nabla();
            let n = sn.depth;
            let rest = || gamma.without(f).unwrap();
            match &sn.core {
                Formula::And(a, b) => {
                    let prem = rest().with((**a).clone().nabla_n(n)).with((**b).clone().nabla_n(n));
                    return (true, vec![(Step::LAnd(n, f.clone()), vec![s.with_antecedent(prem)])]);
                }
                Formula::Or(a, b) => {
                    let left = s.with_antecedent(rest().with((**a).clone().nabla_n(n)));
                    let right = s.with_antecedent(rest().with((**b).clone().nabla_n(n)));
                    return (true, vec![(Step::LOr(n, f.clone()), vec![left, right])]);
                }
                _ => {}
            }
        }

        let mut out = Vec::new();
        match &s.succedent {
            Some(Formula::And(a, b)) => out.push((
                Step::RAnd,
                vec![
                    s.with_succedent(Some((**a).clone())),
                    s.with_succedent(Some((**b).clone())),
                ],
            )),
            Some(Formula::Or(a, b)) => {
                out.push((Step::ROr1((**b).clone()), vec![s.with_succedent(Some((**a).clone()))]));
                out.push((Step::ROr2((**a).clone()), vec![s.with_succedent(Some((**b).clone()))]));
            }
            Some(Formula::DynImp(a, b)) => {
                let mut kept = Multiset::new();
                let mut dropped = Multiset::new();
                for g in gamma.nabla(1).iter() {
                    if g.nabla_nesting() > self.nabla_limit {
                        dropped.insert(g.clone());
                    } else {
                        kept.insert(g.clone());
                    }
                }
                if !dropped.is_empty() {
                    self.report.nabla_drops += 1;
                }
                let prem = Sequent::new(kept.with((**a).clone()), Some((**b).clone()));
                out.push((
                    Step::RDyn {
                        a: (**a).clone(),
                        dropped,
                    },
                    vec![prem],
                ));
            }
            Some(Formula::HeytImp(a, b)) => out.push((
                Step::RHeyt((**a).clone()),
                vec![Sequent::new(gamma.with((**a).clone()), Some((**b).clone()))],
            )),
            _ => {}
        }

        for f in gamma.distinct() {
            let sn = f.strip_nabla();
            let n = sn.depth;
            match &sn.core {
                Formula::DynImp(a, b) if n >= 1 => out.push((
                    Step::LDyn(n - 1, f.clone()),
                    vec![
                        Sequent::new(gamma.clone(), Some((**a).clone().nabla_n(n - 1))),
                        s.with_antecedent(gamma.with((**b).clone().nabla_n(n - 1))),
                    ],
                )),
                Formula::HeytImp(a, b) => out.push((
                    Step::LHeyt(n, f.clone()),
                    vec![
                        Sequent::new(gamma.clone(), Some((**a).clone().nabla_n(n))),
                        s.with_antecedent(gamma.without(f).unwrap().with((**b).clone().nabla_n(n))),
                    ],
                )),
                _ => {}
            }
        }

        let succ = match &s.succedent {
            None => Some(None),
            Some(d) => d.unwrap_nabla().map(|x| Some(x.clone())),
        };
        if let Some(succ) = succ {
            let inner: Multiset = gamma.iter().filter_map(|g| g.unwrap_nabla().cloned()).collect();
            if !(inner.is_empty() && succ.is_none()) {
                out.push((Step::Nabla, vec![Sequent::new(inner, succ)]));
            }
        }

        if s.succedent.is_some() {
            out.push((Step::Rw, vec![s.with_succedent(None)]));
        }
        (false, out)
    }
}

/// Closes `s` with an axiom plus weakening, if possible.
fn closure(s: &Sequent) -> Option<ProofTree> {
    let ant = &s.antecedent;
    match &s.succedent {
        Some(p @ Formula::Atom(_)) if ant.contains(p) => return Some(lw_to(id_p(p.clone()), ant)),
        Some(Formula::Top) => return Some(lw_to(r_top(), ant)),
        _ => {}
    }
    if ant.contains(&Formula::Bot) {
        let t = lw_to(l_bot(), ant);
        return Some(match &s.succedent {
            Some(c) => rw(t, c.clone()),
            None => t,
        });
    }
    None
}

fn build_step(s: &Sequent, step: Step, proofs: Vec<ProofTree>) -> ProofTree {
    let mut it = proofs.into_iter();
    let mut next = || it.next().expect("premise proof");
    match step {
        Step::LAnd(n, p) => l_and_n(next(), n, p),
        Step::LOr(n, p) => {
            let l = next();
            l_or_n(l, next(), n, p)
        }
        Step::RAnd => {
            let l = next();
            r_and(l, next())
        }
        Step::ROr1(other) => r_or1(next(), other),
        Step::ROr2(other) => r_or2(next(), other),
        Step::RDyn { a, dropped } => r_dyn_imp(lw(next(), &dropped), s.antecedent.clone(), a),
        Step::RHeyt(a) => r_heyt_imp(next(), a),
        Step::LDyn(n, p) => {
            let l = next();
            l_dyn_imp_n(l, next(), n, p)
        }
        Step::LHeyt(n, p) => {
            let l = next();
            l_heyt_imp_n(l, next(), n, p)
        }
        Step::Nabla => lw_to(n(next()), &s.antecedent),
        Step::Rw => rw(next(), s.succedent.clone().expect("Rw needs a succedent")),
    }
}
