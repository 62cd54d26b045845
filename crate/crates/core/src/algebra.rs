//! Finite normal ∇-algebras: enumeration, evaluation and refutation.
//!
//! Elements are `0..size`; `0` is the bottom and `size - 1` the top.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Formula, Sequent};

/// Largest carrier `enumerate_algebras` accepts.
pub const MAX_SIZE: usize = 6;

pub type Table = Vec<Vec<usize>>;
pub type Valuation = BTreeMap<Arc<str>, usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteNablaAlgebra {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub meet: Table,
    pub join: Table,
    pub bot: usize,
    pub top: usize,
    pub nabla: Vec<usize>,
    pub dyn_imp: Table,
    /// Present exactly when the lattice is distributive.
    pub heyt_imp: Option<Table>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    SizeBound(usize),
    /// ⊃ needs a Heyting carrier.
    NoHeytingImplication,
    UnassignedAtom(Arc<str>),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::SizeBound(k) => write!(f, "algebra size {k} exceeds the bound {MAX_SIZE}"),
            AlgebraError::NoHeytingImplication => f.write_str("=> needs a Heyting algebra"),
            AlgebraError::UnassignedAtom(a) => write!(f, "atom `{a}` has no value"),
        }
    }
}

impl core::error::Error for AlgebraError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub algebra: FiniteNablaAlgebra,
    pub valuation: Valuation,
    pub refuted: Sequent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Refutation {
    Countermodel(Countermodel),
    /// No claim either way.
    NotFoundWithinBound,
}

impl Refutation {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Refutation::Countermodel(c) => Some(c),
            Refutation::NotFoundWithinBound => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Lattice {
    size: usize,
    leq: Vec<Vec<bool>>,
    meet: Table,
    join: Table,
}

impl Lattice {
    fn from_order(leq: Vec<Vec<bool>>) -> Option<Lattice> {
        let k = leq.len();
        let bound = |i: usize, j: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..k)
                .filter(|&x| {
                    if upper {
                        leq[i][x] && leq[j][x]
                    } else {
                        leq[x][i] && leq[x][j]
                    }
                })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&x| cands.iter().all(|&y| if upper { leq[x][y] } else { leq[y][x] }))
        };
        let mut meet = vec![vec![0; k]; k];
        let mut join = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                join[i][j] = bound(i, j, true)?;
                meet[i][j] = bound(i, j, false)?;
            }
        }
        Some(Lattice {
            size: k,
            leq,
            meet,
            join,
        })
    }

    fn is_distributive(&self) -> bool {
        let k = self.size;
        (0..k).all(|a| {
            (0..k).all(|b| (0..k).all(|c| self.meet[a][self.join[b][c]] == self.join[self.meet[a][b]][self.meet[a][c]]))
        })
    }

    /// `⋁{x : f(x)}`, with `f` closed under the join it is used with.
    fn join_of(&self, pred: impl Fn(usize) -> bool) -> usize {
        (0..self.size).filter(|&x| pred(x)).fold(0, |acc, x| self.join[acc][x])
    }

    fn residual(&self, left: impl Fn(usize, usize) -> usize) -> Table {
        let k = self.size;
        (0..k)
            .map(|a| (0..k).map(|b| self.join_of(|c| self.leq[left(c, a)][b])).collect())
            .collect()
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Maps fixing bottom and top, as full element permutations.
fn middle_permutations(k: usize) -> Vec<Vec<usize>> {
    let middle: Vec<usize> = (1..k - 1).collect();
    permutations(&middle)
        .into_iter()
        .map(|p| {
            let mut full = vec![0];
            full.extend(p);
            full.push(k - 1);
            full
        })
        .collect()
}

fn permuted_order(leq: &[Vec<bool>], pi: &[usize]) -> Vec<Vec<bool>> {
    let k = leq.len();
    let mut out = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            out[pi[i]][pi[j]] = leq[i][j];
        }
    }
    out
}

/// All lattices of size `k` up to isomorphism, each in its canonical
/// labelling.
fn lattices(k: usize) -> Vec<Lattice> {
    let m = k - 2;
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
    let perms = middle_permutations(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut leq: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| i == j || i == 0 || j == k - 1).collect())
            .collect();
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => leq[i][j] = true,
                2 => leq[j][i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if !transitive {
            continue;
        }
        let canon = perms.iter().map(|p| permuted_order(&leq, p)).max().unwrap();
        if !seen.insert(canon.clone()) {
            continue;
        }
        if let Some(l) = Lattice::from_order(canon) {
            out.push(l);
        }
    }
    out
}

/// Every ∇-algebra of sizes `2..=max_size` up to isomorphism, ordered by
/// size, then lattice, then ∇ table.
pub fn enumerate_algebras(max_size: usize, need_heyting: bool) -> Result<Vec<FiniteNablaAlgebra>, AlgebraError> {
    if max_size > MAX_SIZE {
        return Err(AlgebraError::SizeBound(max_size));
    }
    let mut out = Vec::new();
    for k in 2..=max_size {
        let perms = middle_permutations(k);
        for lat in lattices(k) {
            let distributive = lat.is_distributive();
            if need_heyting && !distributive {
                continue;
            }
            let autos: Vec<&Vec<usize>> = perms
                .iter()
                .filter(|p| permuted_order(&lat.leq, p) == lat.leq)
                .collect();
            let heyt_imp = distributive.then(|| lat.residual(|x, a| lat.meet[x][a]));
            for nabla in nabla_candidates(&lat) {
                let canonical = autos
                    .iter()
                    .map(|p| {
                        let mut conj = vec![0; k];
                        for x in 0..k {
                            conj[p[x]] = p[nabla[x]];
                        }
                        conj
                    })
                    .max()
                    .unwrap();
                if canonical != nabla {
                    continue;
                }
                let dyn_imp = lat.residual(|c, a| lat.meet[nabla[c]][a]);
                let alg = FiniteNablaAlgebra {
                    size: k,
                    leq: lat.leq.clone(),
                    meet: lat.meet.clone(),
                    join: lat.join.clone(),
                    bot: 0,
                    top: k - 1,
                    nabla,
                    dyn_imp,
                    heyt_imp: heyt_imp.clone(),
                };
                if alg.adjunction_holds() {
                    out.push(alg);
                }
            }
        }
    }
    Ok(out)
}

/// Bounded lattice endomorphisms, in lexicographic order.
fn nabla_candidates(lat: &Lattice) -> Vec<Vec<usize>> {
    let k = lat.size;
    let m = k - 2;
    let mut out = Vec::new();
    for code in 0..k.pow(m as u32) {
        let mut f = vec![0; k];
        f[k - 1] = k - 1;
        let mut c = code;
        for slot in f.iter_mut().take(m + 1).skip(1).rev() {
            *slot = c % k;
            c /= k;
        }
        let hom = (0..k).all(|a| {
            (0..k).all(|b| f[lat.meet[a][b]] == lat.meet[f[a]][f[b]] && f[lat.join[a][b]] == lat.join[f[a]][f[b]])
        });
        if hom {
            out.push(f);
        }
    }
    out
}

impl FiniteNablaAlgebra {
    fn elements(&self) -> core::ops::Range<usize> {
        0..self.size
    }

    pub fn adjunction_holds(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements()
                    .all(|c| self.leq[self.meet[self.nabla[c]][a]][b] == self.leq[c][self.dyn_imp[a][b]])
            })
        })
    }

    pub fn is_distributive(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements()
                    .all(|c| self.meet[a][self.join[b][c]] == self.join[self.meet[a][b]][self.meet[a][c]])
            })
        })
    }

    /// Re-verifies every structural law from the tables alone.
    pub fn check_invariants(&self) -> Result<(), String> {
        let k = self.size;
        let e = || 0..k;
        let leq = &self.leq;
        for a in e() {
            if !leq[a][a] || !leq[self.bot][a] || !leq[a][self.top] {
                return Err(format!("order fails at {a}"));
            }
            for b in e() {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(format!("{a} and {b} are not antisymmetric"));
                }
                for c in e() {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(format!("order is not transitive at {a}, {b}, {c}"));
                    }
                }
                let (m, j) = (self.meet[a][b], self.join[a][b]);
                let is_meet = leq[m][a] && leq[m][b] && e().all(|x| !(leq[x][a] && leq[x][b]) || leq[x][m]);
                let is_join = leq[a][j] && leq[b][j] && e().all(|x| !(leq[a][x] && leq[b][x]) || leq[j][x]);
                if !is_meet || !is_join {
                    return Err(format!("meet or join wrong at {a}, {b}"));
                }
                if self.nabla[m] != self.meet[self.nabla[a]][self.nabla[b]] {
                    return Err(format!("∇ does not preserve the meet of {a}, {b}"));
                }
            }
        }
        if self.nabla[self.top] != self.top || self.nabla[self.bot] != self.bot {
            return Err("∇ does not fix the bounds".into());
        }
        if !self.adjunction_holds() {
            return Err("∇ and → are not adjoint".into());
        }
        match &self.heyt_imp {
            Some(h) => {
                for a in e() {
                    for b in e() {
                        for x in e() {
                            if leq[self.meet[x][a]][b] != leq[x][h[a][b]] {
                                return Err(format!("⊃ is not the residual at {a}, {b}"));
                            }
                        }
                    }
                }
            }
            None if self.is_distributive() => return Err("distributive lattice without ⊃".into()),
            None => {}
        }
        Ok(())
    }

    pub fn evaluate(&self, f: &Formula, v: &Valuation) -> Result<usize, AlgebraError> {
        Ok(match f {
            Formula::Atom(a) => *v.get(a).ok_or_else(|| AlgebraError::UnassignedAtom(a.clone()))?,
            Formula::Top => self.top,
            Formula::Bot => self.bot,
            Formula::And(a, b) => self.meet[self.evaluate(a, v)?][self.evaluate(b, v)?],
            Formula::Or(a, b) => self.join[self.evaluate(a, v)?][self.evaluate(b, v)?],
            Formula::DynImp(a, b) => self.dyn_imp[self.evaluate(a, v)?][self.evaluate(b, v)?],
            Formula::HeytImp(a, b) => {
                let h = self.heyt_imp.as_ref().ok_or(AlgebraError::NoHeytingImplication)?;
                h[self.evaluate(a, v)?][self.evaluate(b, v)?]
            }
            Formula::Nabla(a) => self.nabla[self.evaluate(a, v)?],
        })
    }

    /// Whether `⋀Γ ≤ ⋁Δ` under `v`.
    pub fn satisfies(&self, s: &Sequent, v: &Valuation) -> Result<bool, AlgebraError> {
        let mut lhs = self.top;
        for g in s.antecedent.iter() {
            lhs = self.meet[lhs][self.evaluate(g, v)?];
        }
        let rhs = match &s.succedent {
            Some(d) => self.evaluate(d, v)?,
            None => self.bot,
        };
        Ok(self.leq[lhs][rhs])
    }

    /// The first valuation falsifying `s`, in lexicographic order over the
    /// sorted atoms.
    pub fn falsifying_valuation(&self, s: &Sequent) -> Result<Option<Valuation>, AlgebraError> {
        if self.heyt_imp.is_none() && !s.is_heyting_free() {
            return Err(AlgebraError::NoHeytingImplication);
        }
        let atoms: Vec<Arc<str>> = s.atoms().into_iter().collect();
        let mut digits = vec![0usize; atoms.len()];
        loop {
            let v: Valuation = atoms.iter().cloned().zip(digits.iter().copied()).collect();
            if !self.satisfies(s, &v)? {
                return Ok(Some(v));
            }
            let mut i = atoms.len();
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < self.size {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

/// Looks for a countermodel among the distributive ∇-algebras of size at
/// most `max_size`. Non-distributive carriers are never used: they falsify
/// sequents that are provable, such as `r, p | q |- r & p | r & q`.
pub fn refute(s: &Sequent, max_size: usize, need_heyting: bool) -> Result<Refutation, AlgebraError> {
    if !need_heyting && !s.is_heyting_free() {
        return Err(AlgebraError::NoHeytingImplication);
    }
    refute_in(s, &enumerate_algebras(max_size, true)?)
}

/// `refute` over a precomputed list of algebras.
pub fn refute_in(s: &Sequent, algebras: &[FiniteNablaAlgebra]) -> Result<Refutation, AlgebraError> {
    for alg in algebras {
        if let Some(valuation) = alg.falsifying_valuation(s)? {
            return Ok(Refutation::Countermodel(Countermodel {
                algebra: alg.clone(),
                valuation,
                refuted: s.clone(),
            }));
        }
    }
    Ok(Refutation::NotFoundWithinBound)
}

impl Countermodel {
    /// Re-evaluates the refuted sequent.
    pub fn is_valid(&self) -> bool {
        self.algebra.satisfies(&self.refuted, &self.valuation) == Ok(false)
    }
}
