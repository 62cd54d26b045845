use alloc::format;
use alloc::vec::Vec;

use super::structural::contract_to_unchecked;
use super::{internal, node_key, node_of, rebuild, Memo, Res, TransformError};
use crate::kernel::build::*;
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::syntax::{Formula, Multiset};

/// Which premise a non-principal cut is permuted into first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CutStrategy {
    /// Into the left premise unless its last rule introduces the cut
    /// formula on the right.
    #[default]
    LeftFirst,
    /// Into the right premise whenever the cut formula is not principal
    /// there.
    RightFirst,
}

/// From cut-free proofs of `Π ⇒ A` and `Φ, ∇ⁿA ⇒ Λ` builds a cut-free
/// proof of `Φ, ∇ⁿΠ ⇒ Λ`.
pub fn cut_once(d1: &ProofTree, d2: &ProofTree, n: usize) -> Result<ProofTree, TransformError> {
    for d in [d1, d2] {
        check_proof(d, CalculusId::ikd()).map_err(TransformError::InputRejected)?;
    }
    let Some(a) = d1.sequent().succedent.clone() else {
        return Err(TransformError::Shape(format!("`{}` has no succedent", d1.sequent())));
    };
    if !d2.sequent().antecedent.contains(&a.clone().nabla_n(n)) {
        return Err(TransformError::Shape(format!(
            "`{}` does not contain the cut formula `{}`",
            d2.sequent(),
            a.nabla_n(n)
        )));
    }
    cut_unchecked(d1, d2, n, CutStrategy::LeftFirst)
}

/// Removes every cut, topmost first.
pub fn eliminate_cuts(t: &ProofTree) -> Result<ProofTree, TransformError> {
    eliminate_cuts_with(t, CutStrategy::LeftFirst)
}

pub fn eliminate_cuts_with(t: &ProofTree, strategy: CutStrategy) -> Result<ProofTree, TransformError> {
    check_proof(t, CalculusId::ikd().with_cut(true)).map_err(TransformError::InputRejected)?;
    elim(t, strategy, &mut Memo::new())
}

pub(crate) fn elim(t: &ProofTree, strategy: CutStrategy, memo: &mut Memo) -> Res<ProofTree> {
    let key = node_key(t);
    if let Some(done) = key.and_then(|k| memo.get(&k)) {
        return Ok(done.clone());
    }
    let nd = node_of(t)?;
    let ps = nd
        .premises
        .iter()
        .map(|p| elim(p, strategy, memo))
        .collect::<Res<Vec<_>>>()?;
    let out = if nd.rule.rule == RuleId::Cut {
        cut_unchecked(&ps[0], &ps[1], nd.rule.exponent(), strategy)?
    } else if ps.iter().zip(&nd.premises).all(|(a, b)| node_key(a) == node_key(b)) {
        t.clone()
    } else {
        rebuild(nd, nd.sequent.clone(), ps)
    };
    memo.insert(key.unwrap(), out.clone());
    Ok(out)
}

/// Lexicographic induction measure: cut rank, then the height sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Measure {
    rank: usize,
    heights: usize,
}

struct Cutter {
    strategy: CutStrategy,
}

pub(crate) fn cut_unchecked(d1: &ProofTree, d2: &ProofTree, n: usize, strategy: CutStrategy) -> Res<ProofTree> {
    let out = Cutter { strategy }.cut(d1, d2, n, None)?;
    let phi = d2
        .sequent()
        .antecedent
        .without(&d1.sequent().succedent.clone().unwrap().nabla_n(n))
        .unwrap();
    let expected = d2
        .sequent()
        .with_antecedent(phi.union(&d1.sequent().antecedent.nabla(n)));
    if out.sequent() != &expected {
        return internal(format!("cut produced `{}` instead of `{expected}`", out.sequent()));
    }
    Ok(out)
}

fn is_left_principal(rule: RuleId) -> bool {
    matches!(
        rule,
        RuleId::LAndN | RuleId::LOrN | RuleId::LDynImpN | RuleId::LHeytImpN
    )
}

impl Cutter {
    fn cut(&self, d1: &ProofTree, d2: &ProofTree, n: usize, bound: Option<Measure>) -> Res<ProofTree> {
        let Some(a) = d1.sequent().succedent.clone() else {
            return internal("left cut premise has no succedent");
        };
        let m = Measure {
            rank: a.rank(),
            heights: d1.height() + d2.height(),
        };
        if let Some(b) = bound {
            if m >= b {
                return Err(TransformError::MeasureViolation {
                    rank: m.rank,
                    heights: m.heights,
                    bound_rank: b.rank,
                    bound_heights: b.heights,
                });
            }
        }
        let t = a.clone().nabla_n(n);
        let n1 = node_of(d1)?;
        let n2 = node_of(d2)?;
        let Some(phi) = d2.sequent().antecedent.without(&t) else {
            return internal(format!("`{t}` missing from `{}`", d2.sequent()));
        };
        let target = phi.union(&d1.sequent().antecedent.nabla(n));
        let principal_right = is_left_principal(n2.rule.rule) && n2.rule.principal.as_ref() == Some(&t);
        let left_intro = n1.rule.rule.is_right_rule();

        if self.strategy == CutStrategy::RightFirst
            && !principal_right
            && !n2.rule.rule.is_axiom()
            && !(n2.rule.rule == RuleId::N && n == 0)
        {
            return self.push_right(d1, d2, n, &t, &target, m);
        }
        if !left_intro {
            return self.push_left(d1, d2, n, &phi, m);
        }
        if !principal_right {
            return self.push_right(d1, d2, n, &t, &target, m);
        }
        self.principal(d1, d2, n, &a, &target, m)
    }

    /// The cut formula is not introduced by the last rule of `d1`.
    fn push_left(&self, d1: &ProofTree, d2: &ProofTree, n: usize, phi: &Multiset, m: Measure) -> Res<ProofTree> {
        let n1 = node_of(d1)?;
        let p = |i: usize| &n1.premises[i];
        let lift = |principal: &Formula| principal.clone().nabla_n(n);
        match n1.rule.rule {
            RuleId::IdP => Ok(d2.clone()),
            RuleId::Rw => {
                let t = lw(n_times(p(0).clone(), n), phi);
                Ok(match &d2.sequent().succedent {
                    Some(c) => rw(t, c.clone()),
                    None => t,
                })
            }
            RuleId::LW => {
                let sigma = n1.rule.intro.as_ref().unwrap().nabla(n);
                Ok(lw(self.cut(p(0), d2, n, Some(m))?, &sigma))
            }
            RuleId::LAndN => {
                let r = n1.rule.n.unwrap();
                let q = self.cut(p(0), d2, n, Some(m))?;
                Ok(l_and_n(q, n + r, lift(n1.rule.principal.as_ref().unwrap())))
            }
            RuleId::LOrN => {
                let r = n1.rule.n.unwrap();
                let l = self.cut(p(0), d2, n, Some(m))?;
                let rt = self.cut(p(1), d2, n, Some(m))?;
                Ok(l_or_n(l, rt, n + r, lift(n1.rule.principal.as_ref().unwrap())))
            }
            RuleId::LDynImpN | RuleId::LHeytImpN => {
                let r = n1.rule.n.unwrap();
                let left = lw(n_times(p(0).clone(), n), phi);
                let right = self.cut(p(1), d2, n, Some(m))?;
                let principal = lift(n1.rule.principal.as_ref().unwrap());
                Ok(if n1.rule.rule == RuleId::LDynImpN {
                    l_dyn_imp_n(left, right, n + r, principal)
                } else {
                    l_heyt_imp_n(left, right, n + r, principal)
                })
            }
            RuleId::N => self.cut(p(0), d2, n + 1, Some(m)),
            other => internal(format!("left cut premise ends in {}", other.name())),
        }
    }

    /// The cut formula `t` is not principal in the last rule of `d2`.
    fn push_right(
        &self,
        d1: &ProofTree,
        d2: &ProofTree,
        n: usize,
        t: &Formula,
        target: &Multiset,
        m: Measure,
    ) -> Res<ProofTree> {
        let n2 = node_of(d2)?;
        let concl = d2.sequent().with_antecedent(target.clone());
        let p = |i: usize| &n2.premises[i];
        match n2.rule.rule {
            RuleId::LW => {
                let sigma = n2.rule.intro.as_ref().unwrap();
                match sigma.without(t) {
                    Some(rest) => Ok(lw(p(0).clone(), &rest.union(&d1.sequent().antecedent.nabla(n)))),
                    None => Ok(lw(self.cut(d1, p(0), n, Some(m))?, sigma)),
                }
            }
            RuleId::RDynImp => {
                let q = self.cut(d1, p(0), n + 1, Some(m))?;
                Ok(rebuild(n2, concl, alloc::vec![q]))
            }
            RuleId::N => {
                if n == 0 {
                    return internal("cut formula under N without a ∇ prefix");
                }
                let q = self.cut(d1, p(0), n - 1, Some(m))?;
                Ok(rebuild(n2, concl, alloc::vec![q]))
            }
            RuleId::Rw
            | RuleId::LAndN
            | RuleId::LOrN
            | RuleId::LDynImpN
            | RuleId::LHeytImpN
            | RuleId::RAnd
            | RuleId::ROr1
            | RuleId::ROr2
            | RuleId::RHeytImp => {
                let ps = n2
                    .premises
                    .iter()
                    .map(|q| self.cut(d1, q, n, Some(m)))
                    .collect::<Res<Vec<_>>>()?;
                Ok(rebuild(n2, concl, ps))
            }
            other => internal(format!(
                "right cut premise ends in {} with a non-principal cut formula",
                other.name()
            )),
        }
    }

    /// The cut formula is principal on both sides.
    fn principal(
        &self,
        d1: &ProofTree,
        d2: &ProofTree,
        n: usize,
        a: &Formula,
        target: &Multiset,
        m: Measure,
    ) -> Res<ProofTree> {
        let n1 = node_of(d1)?;
        let n2 = node_of(d2)?;
        let l = |i: usize| &n1.premises[i];
        let r = |i: usize| &n2.premises[i];
        let mm = Some(m);
        match (n1.rule.rule, n2.rule.rule) {
            (RuleId::RAnd, RuleId::LAndN) => {
                let x = self.cut(l(0), r(0), n, mm)?;
                let y = self.cut(l(1), &x, n, mm)?;
                contract_to_unchecked(&y, target)
            }
            (RuleId::ROr1, RuleId::LOrN) => self.cut(l(0), r(0), n, mm),
            (RuleId::ROr2, RuleId::LOrN) => self.cut(l(0), r(1), n, mm),
            (RuleId::RHeytImp, RuleId::LHeytImpN) => {
                let d = self.cut(l(0), r(1), n, mm)?;
                let e = self.cut(d1, r(0), n, mm)?;
                let f = self.cut(&e, &d, 0, mm)?;
                contract_to_unchecked(&f, target)
            }
            (RuleId::RDynImp, RuleId::LDynImpN) => {
                if n == 0 {
                    return internal("L→ principal without a ∇ prefix");
                }
                let e1 = self.cut(d1, r(1), n, mm)?;
                let d = self.cut(l(0), &e1, n - 1, mm)?;
                let e2 = self.cut(d1, r(0), n, mm)?;
                let f = self.cut(&e2, &d, 0, mm)?;
                contract_to_unchecked(&f, target)
            }
            (x, y) => internal(format!("principal cut between {} and {} for `{a}`", x.name(), y.name())),
        }
    }
}
