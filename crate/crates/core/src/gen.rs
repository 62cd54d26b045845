//! Random formulas, sequents and proofs for corpora, property tests and
//! benchmarks. Every generator is driven by a caller-supplied RNG, so a
//! seeded RNG reproduces the same output.

use alloc::vec::Vec;

use rand::Rng;

use crate::kernel::build::*;
use crate::kernel::derived::{identity, mp};
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::meta::{VisserAntecedent, VisserFamily};
use crate::syntax::{Formula, Multiset, Sequent};
use crate::transform::stl_to_ikd;

/// Shape of random formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaShape {
    pub atoms: Vec<&'static str>,
    pub max_depth: usize,
    pub heyting: bool,
}

impl FormulaShape {
    pub fn new(atoms: &[&'static str], max_depth: usize, heyting: bool) -> Self {
        FormulaShape {
            atoms: atoms.to_vec(),
            max_depth,
            heyting,
        }
    }
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape::new(&["p", "q", "r"], 2, true)
    }
}

pub fn formula<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape) -> Formula {
    formula_at(rng, shape, shape.max_depth)
}

fn formula_at<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape, depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(shape.atoms[rng.gen_range(0..shape.atoms.len())]),
        };
    }
    let kinds = if shape.heyting { 5 } else { 4 };
    let sub = |rng: &mut R| formula_at(rng, shape, depth - 1);
    match rng.gen_range(0..kinds) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::dyn_imp(sub(rng), sub(rng)),
        3 => Formula::nabla(sub(rng)),
        _ => Formula::heyt_imp(sub(rng), sub(rng)),
    }
}

/// A sequent with up to `max_antecedent` antecedent formulas and a
/// succedent with probability 9/10.
pub fn sequent<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape, max_antecedent: usize) -> Sequent {
    let k = rng.gen_range(0..=max_antecedent);
    let ant: Multiset = (0..k).map(|_| formula(rng, shape)).collect();
    let succ = (!rng.gen_ratio(1, 10)).then(|| formula(rng, shape));
    Sequent::new(ant, succ)
}

/// Parameters for forward generation of STL proofs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofShape {
    pub formulas: FormulaShape,
    /// Bound on generating steps along a branch. Auxiliary weakenings and
    /// contractions sit on top of it, so tree height can exceed it.
    pub max_height: usize,
    /// Bound on rule applications, which keeps branching in check.
    pub max_steps: usize,
}

impl Default for ProofShape {
    fn default() -> Self {
        ProofShape {
            formulas: FormulaShape::default(),
            max_height: 10,
            max_steps: 24,
        }
    }
}

/// A random STL(N,H) proof, or an STL(N) proof when the shape is ⊃-free,
/// built by forward rule application. It may contain cuts.
pub fn stl_proof<R: Rng + ?Sized>(rng: &mut R, shape: &ProofShape) -> ProofTree {
    let mut b = Forward { rng, shape, steps: 0 };
    let t = b.proof(shape.max_height);
    debug_assert!(check_proof(&t, stl_calculus(shape)).is_ok());
    t
}

/// A random cut-free iK_d proof (iK_d* when ⊃-free): a translated STL proof.
pub fn ikd_proof<R: Rng + ?Sized>(rng: &mut R, shape: &ProofShape) -> ProofTree {
    stl_to_ikd(&stl_proof(rng, shape)).expect("generated STL proofs translate")
}

/// The STL calculus a shape generates proofs in.
pub fn stl_calculus(shape: &ProofShape) -> CalculusId {
    if shape.formulas.heyting {
        CalculusId::stlnh()
    } else {
        CalculusId::stln()
    }
}

struct Forward<'a, R: ?Sized> {
    rng: &'a mut R,
    shape: &'a ProofShape,
    steps: usize,
}

impl<R: Rng + ?Sized> Forward<'_, R> {
    fn formula(&mut self) -> Formula {
        formula(self.rng, &self.shape.formulas)
    }

    fn heyting(&self) -> bool {
        self.shape.formulas.heyting
    }

    fn leaf(&mut self) -> ProofTree {
        match self.rng.gen_range(0..8) {
            0 => l_bot(),
            1 => r_top(),
            _ => id(self.formula()),
        }
    }

    fn proof(&mut self, h: usize) -> ProofTree {
        if h == 0 || self.steps >= self.shape.max_steps || self.rng.gen_ratio(1, 6) {
            return self.leaf();
        }
        self.steps += 1;
        let h = h - 1;
        match self.rng.gen_range(0..14) {
            0 => {
                let p = self.proof(h);
                let f = self.formula();
                stl_lw(p, f)
            }
            1 => {
                let p = self.proof(h);
                let dup = p
                    .sequent()
                    .antecedent
                    .distinct()
                    .find(|f| p.sequent().antecedent.count(f) > 1)
                    .cloned();
                match dup {
                    Some(f) => lc(p, f),
                    None => {
                        let (p, f) = self.pick_or_add(p);
                        lc(stl_lw(p, f.clone()), f)
                    }
                }
            }
            2 => {
                let p = self.proof(h);
                let (p, f) = self.pick_or_add(p);
                let other = self.formula();
                if self.rng.gen_bool(0.5) {
                    l_and_i(p, Formula::and(f, other), true)
                } else {
                    l_and_i(p, Formula::and(other, f), false)
                }
            }
            3 => {
                let (l, a) = {
                    let p = self.proof(h);
                    self.pick_or_add(p)
                };
                let (r, b) = {
                    let p = self.proof(h);
                    self.pick_or_add(p)
                };
                let (l, r) = self.same_succedent(l, r);
                let (l, r) = common_rest(l, &a, r, &b);
                stl_l_or(l, r, Formula::or(a, b))
            }
            4 | 5 => {
                let l = self.proof(h);
                let l = self.with_succedent(l);
                let (r, b) = {
                    let p = self.proof(h);
                    self.pick_or_add(p)
                };
                let a = l.sequent().succedent.clone().unwrap();
                let ctx = lub(&l.sequent().antecedent, &r.sequent().antecedent.without(&b).unwrap());
                let l = weaken_to(l, &ctx);
                let r = weaken_to(r, &ctx.with(b.clone()));
                if self.heyting() && self.rng.gen_bool(0.5) {
                    stl_l_heyt_imp(l, r, Formula::heyt_imp(a, b))
                } else {
                    stl_l_dyn_imp(l, r, Formula::nabla(Formula::dyn_imp(a, b)))
                }
            }
            6 => {
                let l = self.proof(h);
                let l = self.with_succedent(l);
                let r = self.proof(h);
                let r = self.with_succedent(r);
                let ctx = lub(&l.sequent().antecedent, &r.sequent().antecedent);
                r_and(weaken_to(l, &ctx), weaken_to(r, &ctx))
            }
            7 => {
                let p = self.proof(h);
                let p = self.with_succedent(p);
                let other = self.formula();
                if self.rng.gen_bool(0.5) {
                    r_or1(p, other)
                } else {
                    r_or2(p, other)
                }
            }
            8 | 9 => {
                let p = self.proof(h);
                let p = self.with_succedent(p);
                if self.heyting() && self.rng.gen_bool(0.5) {
                    let (p, f) = self.pick_or_add(p);
                    return r_heyt_imp(p, f);
                }
                let gamma = p.sequent().antecedent.clone();
                let q = n(p);
                if !gamma.is_empty() && self.rng.gen_bool(0.5) {
                    let g = gamma.iter().nth(self.rng.gen_range(0..gamma.len())).unwrap().clone();
                    r_dyn_imp(q, gamma.without(&g).unwrap(), Formula::nabla(g))
                } else {
                    let x = self.formula();
                    r_dyn_imp(stl_lw(q, x.clone()), gamma, x)
                }
            }
            10 => {
                let p = self.proof(h);
                n(p)
            }
            11 => {
                let p = self.proof(h);
                match p.sequent().succedent {
                    None => {
                        let f = self.formula();
                        rw(p, f)
                    }
                    Some(_) => n(p),
                }
            }
            _ => {
                let l = self.proof(h);
                let l = self.with_succedent(l);
                let a = l.sequent().succedent.clone().unwrap();
                let r = if self.rng.gen_bool(0.5) {
                    self.seeded(&a, h)
                } else {
                    let r = self.proof(h);
                    if r.sequent().antecedent.contains(&a) {
                        r
                    } else {
                        stl_lw(r, a)
                    }
                };
                cut(l, r, 0)
            }
        }
    }

    /// A proof whose antecedent contains `a`, decomposing `a` where its
    /// shape allows.
    fn seeded(&mut self, a: &Formula, h: usize) -> ProofTree {
        let base = match a {
            Formula::And(x, _) => l_and_i(id((**x).clone()), a.clone(), true),
            Formula::Or(x, y) => stl_l_or(
                r_or1(id((**x).clone()), (**y).clone()),
                r_or2(id((**y).clone()), (**x).clone()),
                a.clone(),
            ),
            Formula::Nabla(inner) => match &**inner {
                Formula::DynImp(x, y) => {
                    stl_l_dyn_imp(id((**x).clone()), stl_lw(id((**y).clone()), (**x).clone()), a.clone())
                }
                _ => n(id((**inner).clone())),
            },
            Formula::HeytImp(x, y) => {
                stl_l_heyt_imp(id((**x).clone()), stl_lw(id((**y).clone()), (**x).clone()), a.clone())
            }
            _ => id(a.clone()),
        };
        if h == 0 || self.steps >= self.shape.max_steps {
            return base;
        }
        self.steps += 1;
        match self.rng.gen_range(0..3) {
            0 => {
                let f = self.formula();
                stl_lw(base, f)
            }
            1 => {
                let other = self.formula();
                match base.sequent().succedent {
                    Some(_) => r_or1(base, other),
                    None => rw(base, other),
                }
            }
            _ => {
                let base = self.with_succedent(base);
                let r = self.proof(h - 1);
                let r = self.with_succedent(r);
                let ctx = lub(&base.sequent().antecedent, &r.sequent().antecedent);
                r_and(weaken_to(base, &ctx), weaken_to(r, &ctx))
            }
        }
    }

    fn with_succedent(&mut self, p: ProofTree) -> ProofTree {
        if p.sequent().succedent.is_some() {
            p
        } else {
            let f = self.formula();
            rw(p, f)
        }
    }

    /// An antecedent formula of `p`, weakening a fresh one in if needed.
    fn pick_or_add(&mut self, p: ProofTree) -> (ProofTree, Formula) {
        let ant = &p.sequent().antecedent;
        if !ant.is_empty() && self.rng.gen_ratio(7, 10) {
            let f = ant.iter().nth(self.rng.gen_range(0..ant.len())).unwrap().clone();
            (p, f)
        } else {
            let f = self.formula();
            (stl_lw(p, f.clone()), f)
        }
    }

    fn same_succedent(&mut self, l: ProofTree, r: ProofTree) -> (ProofTree, ProofTree) {
        match (l.sequent().succedent.clone(), r.sequent().succedent.clone()) {
            (a, b) if a == b => (l, r),
            (Some(a), Some(b)) => (r_or1(l, b), r_or2(r, a)),
            (Some(a), None) => (l, rw(r, a)),
            (None, Some(b)) => (rw(l, b), r),
            (None, None) => (l, r),
        }
    }
}

/// Least multiset containing both.
fn lub(a: &Multiset, b: &Multiset) -> Multiset {
    let mut out = a.clone();
    for f in b.distinct() {
        for _ in a.count(f)..b.count(f) {
            out.insert(f.clone());
        }
    }
    out
}

fn weaken_to(p: ProofTree, target: &Multiset) -> ProofTree {
    let extra = target
        .difference(&p.sequent().antecedent)
        .expect("weakening target contains the antecedent");
    stl_lw_all(p, &extra)
}

/// Weakens `l` (with `a`) and `r` (with `b`) to a shared side context.
fn common_rest(l: ProofTree, a: &Formula, r: ProofTree, b: &Formula) -> (ProofTree, ProofTree) {
    let rest_l = l.sequent().antecedent.without(a).unwrap();
    let rest_r = r.sequent().antecedent.without(b).unwrap();
    let ctx = lub(&rest_l, &rest_r);
    (weaken_to(l, &ctx.with(a.clone())), weaken_to(r, &ctx.with(b.clone())))
}

/// A random iK_d proof with cuts whose hypothesis leaves are all `⇒ a`.
pub fn hypothesis_proof<R: Rng + ?Sized>(rng: &mut R, a: &Formula, shape: &ProofShape) -> ProofTree {
    let mut b = Hyp {
        rng,
        shape,
        a,
        steps: 0,
    };
    let t = b.proof(shape.max_height.min(6));
    debug_assert!(check_proof(&t, CalculusId::ikd().with_cut(true).with_hypotheses(true)).is_ok());
    t
}

struct Hyp<'a, R: ?Sized> {
    rng: &'a mut R,
    shape: &'a ProofShape,
    a: &'a Formula,
    steps: usize,
}

impl<R: Rng + ?Sized> Hyp<'_, R> {
    fn formula(&mut self) -> Formula {
        formula(self.rng, &self.shape.formulas)
    }

    fn small_proof(&mut self) -> ProofTree {
        let shape = ProofShape {
            max_height: 3,
            max_steps: 4,
            ..self.shape.clone()
        };
        ikd_proof(self.rng, &shape)
    }

    fn with_succedent(&mut self, p: ProofTree) -> ProofTree {
        if p.sequent().succedent.is_some() {
            p
        } else {
            let f = self.formula();
            rw(p, f)
        }
    }

    fn proof(&mut self, h: usize) -> ProofTree {
        if h == 0 || self.steps >= self.shape.max_steps || self.rng.gen_ratio(1, 5) {
            return hypothesis(Sequent::theorem(self.a.clone()));
        }
        self.steps += 1;
        let h = h - 1;
        match self.rng.gen_range(0..8) {
            0 => n(self.proof(h)),
            1 => {
                let p = self.proof(h);
                let f = self.formula();
                lw(p, &Multiset::singleton(f))
            }
            2 => {
                let l = self.proof(h);
                let l = self.with_succedent(l);
                let r = if self.rng.gen_bool(0.5) {
                    self.proof(h)
                } else {
                    self.small_proof()
                };
                let r = self.with_succedent(r);
                let ctx = lub(&l.sequent().antecedent, &r.sequent().antecedent);
                r_and(lw_to(l, &ctx), lw_to(r, &ctx))
            }
            3 => {
                let p = self.proof(h);
                let p = self.with_succedent(p);
                let other = self.formula();
                if self.rng.gen_bool(0.5) {
                    r_or1(p, other)
                } else {
                    r_or2(p, other)
                }
            }
            4 => {
                let p = self.proof(h);
                let p = self.with_succedent(p);
                let gamma = p.sequent().antecedent.clone();
                let x = self.formula();
                r_dyn_imp(lw(n(p), &Multiset::singleton(x.clone())), gamma, x)
            }
            5 => {
                let l = self.proof(h);
                let l = self.with_succedent(l);
                let b = l.sequent().succedent.clone().unwrap();
                let k = self.rng.gen_range(0..=2);
                let r = match self.rng.gen_range(0..3) {
                    0 => identity(&b),
                    1 => {
                        let c = self.formula();
                        mp(&b, &c)
                    }
                    _ => {
                        let x = self.formula();
                        lw(identity(&b), &Multiset::singleton(x))
                    }
                };
                cut(l, n_times(r, k), k)
            }
            6 => {
                let l = self.small_proof();
                let l = self.with_succedent(l);
                let c = l.sequent().succedent.clone().unwrap();
                let k = self.rng.gen_range(0..=2);
                let r = self.proof(h);
                cut(l, lw(r, &Multiset::singleton(c.nabla_n(k))), k)
            }
            _ => {
                let p = self.proof(h);
                let (x, y) = (self.formula(), self.formula());
                let k = self.rng.gen_range(0..=1);
                let q = lw(
                    p,
                    &Multiset::from(alloc::vec![x.clone().nabla_n(k), y.clone().nabla_n(k)]),
                );
                l_and_n(q, k, Formula::and(x, y).nabla_n(k))
            }
        }
    }
}

/// Adds `sigma` to every sequent from the root up to the axioms or the
/// first N, so that the extra formulas reach the leaves. Used to build
/// non-trivial contraction inputs.
pub fn spread_weakening(t: &ProofTree, sigma: &Multiset) -> ProofTree {
    if sigma.is_empty() {
        return t.clone();
    }
    let ProofTree::Node(nd) = t else {
        return lw(t.clone(), sigma);
    };
    let s = &nd.sequent;
    let concl = s.with_antecedent(s.antecedent.union(sigma));
    let rebuild = |ps: Vec<ProofTree>| ProofTree::node(concl.clone(), nd.rule.clone(), ps);
    match nd.rule.rule {
        RuleId::LW => lw(nd.premises[0].clone(), &nd.rule.intro.as_ref().unwrap().union(sigma)),
        RuleId::RDynImp => rebuild(alloc::vec![spread_weakening(&nd.premises[0], &sigma.nabla(1))]),
        RuleId::Rw
        | RuleId::LAndN
        | RuleId::LOrN
        | RuleId::LDynImpN
        | RuleId::LHeytImpN
        | RuleId::RAnd
        | RuleId::ROr1
        | RuleId::ROr2
        | RuleId::RHeytImp => rebuild(nd.premises.iter().map(|p| spread_weakening(p, sigma)).collect()),
        _ => lw(t.clone(), sigma),
    }
}

/// A random Visser antecedent and a goal of the given family, as the
/// sequent `Γ_X ⇒ goal`. Part premises are often `⊤` and goal components
/// often reuse part conclusions, so a fair share of goals is provable.
pub fn visser_instance<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &FormulaShape,
    family: VisserFamily,
) -> (VisserAntecedent, Sequent) {
    let small = FormulaShape {
        max_depth: 1,
        ..shape.clone()
    };
    let mut x = VisserAntecedent::new();
    let mut reachable = Vec::new();
    let premise = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            Formula::Top
        } else {
            formula(rng, &small)
        }
    };
    let heyting = if shape.heyting { rng.gen_range(0..=2) } else { 0 };
    for _ in 0..heyting {
        let (m, a, b) = (rng.gen_range(0..=2), premise(rng), formula(rng, &small));
        reachable.push(b.clone().nabla_n(m));
        x = x.heyting(m, a, b);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let (n, c, d) = (rng.gen_range(0..=2usize), premise(rng), formula(rng, &small));
        reachable.push(d.clone().nabla_n(n.saturating_sub(1)));
        x = x.dynamic(n, c, d);
    }
    let component = |rng: &mut R| {
        if !reachable.is_empty() && rng.gen_bool(0.4) {
            reachable[rng.gen_range(0..reachable.len())].clone()
        } else {
            formula(rng, &small)
        }
    };
    let (e, f) = (component(rng), component(rng));
    let goal = match family {
        VisserFamily::Disjunctive => Formula::or(e, f),
        VisserFamily::Implicative(k) => Formula::dyn_imp(e, f).nabla_n(k),
        VisserFamily::Heyting(k) => Formula::heyt_imp(e, f).nabla_n(k),
    };
    (x.clone(), Sequent::new(x.antecedent(), Some(goal)))
}
