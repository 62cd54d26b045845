use alloc::format;
use alloc::vec::Vec;

use super::cut::{cut_unchecked, CutStrategy};
use super::structural::contract_unchecked;
use super::{internal, node_key, node_of, rebuild, Memo, Res, TransformError};
use crate::kernel::build::{self, *};
use crate::kernel::derived::identity;
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::syntax::{Connective, Formula, Multiset};

/// Translates an STL(N,H) or STL(N) proof, possibly with cuts, into a
/// cut-free iK_d proof of the same endsequent.
pub fn stl_to_ikd(t: &ProofTree) -> Result<ProofTree, TransformError> {
    check_proof(t, CalculusId::stlnh()).map_err(TransformError::InputRejected)?;
    let out = from_stl(t, &mut Memo::new())?;
    debug_assert_eq!(out.sequent(), t.sequent());
    Ok(out)
}

fn from_stl(t: &ProofTree, memo: &mut Memo) -> Res<ProofTree> {
    let key = node_key(t);
    if let Some(done) = key.and_then(|k| memo.get(&k)) {
        return Ok(done.clone());
    }
    let nd = node_of(t)?;
    let ps = nd.premises.iter().map(|p| from_stl(p, memo)).collect::<Res<Vec<_>>>()?;
    let principal = || nd.rule.principal.clone().unwrap();
    let one = |f: Formula| Multiset::singleton(f);
    let mut ps = ps.into_iter();
    let mut next = || ps.next().unwrap();
    let out = match nd.rule.rule {
        RuleId::Id => identity(nd.sequent.succedent.as_ref().unwrap()),
        RuleId::Lw => {
            let f = nd.rule.intro.as_ref().unwrap();
            lw(next(), f)
        }
        RuleId::Lc => contract_unchecked(&next(), &principal())?,
        RuleId::Cut => {
            let (l, r) = (next(), next());
            cut_unchecked(&l, &r, 0, CutStrategy::LeftFirst)?
        }
        RuleId::LAnd1 | RuleId::LAnd2 => {
            let p = principal();
            let (a, b) = components(&p, 0);
            let other = if nd.rule.rule == RuleId::LAnd1 { b } else { a };
            l_and_n(lw(next(), &one(other)), 0, p)
        }
        RuleId::LOr => {
            let (l, r) = (next(), next());
            l_or_n(l, r, 0, principal())
        }
        RuleId::LDynImp => {
            let p = principal();
            let (l, r) = (next(), next());
            l_dyn_imp_n(lw(l, &one(p.clone())), lw(r, &one(p.clone())), 0, p)
        }
        RuleId::LHeytImp => {
            let p = principal();
            let (l, r) = (next(), next());
            l_heyt_imp_n(lw(l, &one(p.clone())), r, 0, p)
        }
        RuleId::LBot | RuleId::RTop => t.clone(),
        RuleId::Rw | RuleId::RAnd | RuleId::ROr1 | RuleId::ROr2 | RuleId::RDynImp | RuleId::RHeytImp | RuleId::N => {
            let qs: Vec<_> = (0..nd.premises.len()).map(|_| next()).collect();
            rebuild(nd, nd.sequent.clone(), qs)
        }
        other => return internal(format!("{} in an STL proof", other.name())),
    };
    memo.insert(key.unwrap(), out.clone());
    Ok(out)
}

/// Translates an iK_d proof, possibly with generalized cuts, into STL(N,H).
/// The result is in STL(N) when the input is ⊃-free.
pub fn ikd_to_stl(t: &ProofTree) -> Result<ProofTree, TransformError> {
    check_proof(t, CalculusId::ikd().with_cut(true)).map_err(TransformError::InputRejected)?;
    let out = to_stl(t, &mut Memo::new())?;
    debug_assert_eq!(out.sequent(), t.sequent());
    Ok(out)
}

fn to_stl(t: &ProofTree, memo: &mut Memo) -> Res<ProofTree> {
    let key = node_key(t);
    if let Some(done) = key.and_then(|k| memo.get(&k)) {
        return Ok(done.clone());
    }
    let nd = node_of(t)?;
    let ps = nd.premises.iter().map(|p| to_stl(p, memo)).collect::<Res<Vec<_>>>()?;
    let p0 = || ps[0].clone();
    let p1 = || ps[1].clone();
    let n = nd.rule.n.unwrap_or(0);
    let out = match nd.rule.rule {
        RuleId::IdP => id(nd.sequent.succedent.clone().unwrap()),
        RuleId::LBot | RuleId::RTop => t.clone(),
        RuleId::LW => stl_lw_all(p0(), nd.rule.intro.as_ref().unwrap()),
        RuleId::Rw | RuleId::RAnd | RuleId::ROr1 | RuleId::ROr2 | RuleId::RDynImp | RuleId::RHeytImp | RuleId::N => {
            rebuild(nd, nd.sequent.clone(), ps.clone())
        }
        RuleId::LAndN => {
            let p = nd.rule.principal.clone().unwrap();
            let (a, b) = components(&p, n);
            let q = Formula::and(a.clone().nabla_n(n), b.clone().nabla_n(n));
            let x = l_and_i(p0(), q.clone(), true);
            let x = lc(l_and_i(x, q.clone(), false), q);
            if n == 0 {
                x
            } else {
                build::cut(nabla_dist_raw(Connective::And, n, &a, &b), x, 0)
            }
        }
        RuleId::LOrN => {
            let p = nd.rule.principal.clone().unwrap();
            let (a, b) = components(&p, n);
            let q = Formula::or(a.clone().nabla_n(n), b.clone().nabla_n(n));
            let x = stl_l_or(p0(), p1(), q);
            if n == 0 {
                x
            } else {
                build::cut(nabla_dist_raw(Connective::Or, n, &a, &b), x, 0)
            }
        }
        RuleId::LDynImpN => {
            let p = nd.rule.principal.clone().unwrap();
            let (a, b) = components(&p, n + 1);
            let q = Formula::nabla(Formula::dyn_imp(a.clone().nabla_n(n), b.clone().nabla_n(n)));
            let x = stl_l_dyn_imp(p0(), p1(), q);
            let x = if n == 0 {
                x
            } else {
                build::cut(build::n(nabla_dist_raw(Connective::DynImp, n, &a, &b)), x, 0)
            };
            lc(x, p)
        }
        RuleId::LHeytImpN => {
            let p = nd.rule.principal.clone().unwrap();
            let (a, b) = components(&p, n);
            let q = Formula::heyt_imp(a.clone().nabla_n(n), b.clone().nabla_n(n));
            let x = stl_l_heyt_imp(p0(), stl_lw(p1(), p.clone()), q);
            let x = if n == 0 {
                x
            } else {
                build::cut(nabla_dist_raw(Connective::HeytImp, n, &a, &b), x, 0)
            };
            lc(x, p)
        }
        RuleId::Cut => build::cut(n_times(p0(), nd.rule.exponent()), p1(), 0),
        other => return internal(format!("{} in an iK_d proof", other.name())),
    };
    debug_assert!(check_proof(&out, CalculusId::stlnh()).is_ok());
    memo.insert(key.unwrap(), out.clone());
    Ok(out)
}

/// A proof of `∇ⁿ(A∘B) ⇒ ∇ⁿA ∘ ∇ⁿB` in the given STL calculus; for `→` the
/// conclusion is `∇ⁿ(A→B) ⇒ ∇ⁿA → ∇ⁿB`.
pub fn nabla_dist_proof(
    conn: Connective,
    n: usize,
    a: &Formula,
    b: &Formula,
    calc: CalculusId,
) -> Result<ProofTree, TransformError> {
    if calc.base.is_cut_free_family() {
        return Err(TransformError::Shape(format!(
            "distribution proofs are built in STL, not {calc}"
        )));
    }
    if !calc.base.allows_heyting() && (conn == Connective::HeytImp || !a.is_heyting_free() || !b.is_heyting_free()) {
        return Err(TransformError::OutsideLanguage);
    }
    if !calc.allow_cut && conn == Connective::Or && n > 0 {
        return Err(TransformError::Shape(format!(
            "the ∨ distribution needs cut, which {calc} forbids"
        )));
    }
    let out = nabla_dist_raw(conn, n, a, b);
    check_proof(&out, calc).map_err(TransformError::InputRejected)?;
    Ok(out)
}

fn nabla_dist_raw(conn: Connective, n: usize, a: &Formula, b: &Formula) -> ProofTree {
    let (a, b) = (a.clone(), b.clone());
    match conn {
        Connective::And => {
            let p = Formula::and(a.clone(), b.clone());
            let l = n_times(l_and_i(id(a), p.clone(), true), n);
            let r = n_times(l_and_i(id(b), p, false), n);
            r_and(l, r)
        }
        Connective::DynImp => {
            let p = Formula::dyn_imp(a.clone(), b.clone());
            let base = stl_l_dyn_imp(id(a.clone()), stl_lw(id(b), a.clone()), Formula::nabla(p.clone()));
            r_dyn_imp(n_times(base, n), Multiset::singleton(p.nabla_n(n)), a.nabla_n(n))
        }
        Connective::HeytImp => {
            let p = Formula::heyt_imp(a.clone(), b.clone());
            let base = stl_l_heyt_imp(id(a.clone()), stl_lw(id(b), a.clone()), p);
            r_heyt_imp(n_times(base, n), a.nabla_n(n))
        }
        Connective::Or => or_dist(n, &a, &b),
    }
}

/// `∇ⁿ(A∨B) ⇒ ∇ⁿA ∨ ∇ⁿB`, one ∇ layer at a time.
fn or_dist(n: usize, a: &Formula, b: &Formula) -> ProofTree {
    if n == 0 {
        return id(Formula::or(a.clone(), b.clone()));
    }
    let step = or_step(&a.clone().nabla_n(n - 1), &b.clone().nabla_n(n - 1));
    build::cut(build::n(or_dist(n - 1, a, b)), step, 0)
}

/// `∇(X∨Y) ⇒ ∇X ∨ ∇Y`, routed through `⊤ → (∇X ∨ ∇Y)`.
fn or_step(x: &Formula, y: &Formula) -> ProofTree {
    let (nx, ny) = (Formula::nabla(x.clone()), Formula::nabla(y.clone()));
    let c = Formula::or(nx.clone(), ny.clone());
    let lift = |proof: ProofTree, ctx: &Formula| {
        r_dyn_imp(
            stl_lw(proof, Formula::Top),
            Multiset::singleton(ctx.clone()),
            Formula::Top,
        )
    };
    let lx = lift(r_or1(id(nx.clone()), ny.clone()), x);
    let ly = lift(r_or2(id(ny), nx), y);
    let split = build::n(stl_l_or(lx, ly, Formula::or(x.clone(), y.clone())));
    let unbox = stl_l_dyn_imp(r_top(), id(c.clone()), Formula::nabla(Formula::boxed(c)));
    build::cut(split, unbox, 0)
}
