//! JSON readers and writers for proofs, countermodels and command reports.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use ikd_core::algebra::{Countermodel, FiniteNablaAlgebra};
use ikd_core::syntax::print_sequent;
use ikd_core::{
    parse_formula, parse_sequent, Formula, Multiset, ParseError, ProofTree, RuleId, RuleInstance, SearchReport,
};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    Parse {
        text: String,
        error: ParseError,
    },
    UnknownRule(String),
    /// A countermodel whose tables are inconsistent or that does not refute.
    Countermodel(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "malformed JSON: {e}"),
            FormatError::Parse { text, error } => write!(f, "cannot parse `{text}`: {error}"),
            FormatError::UnknownRule(r) => write!(f, "unknown rule `{r}`"),
            FormatError::Countermodel(s) => write!(f, "invalid countermodel: {s}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

fn formula(text: &str) -> Result<Formula, FormatError> {
    parse_formula(text).map_err(|error| FormatError::Parse {
        text: text.to_owned(),
        error,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProofJson {
    Node(Box<NodeJson>),
    Hypothesis(HypothesisJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesisJson {
    pub hypothesis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub sequent: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intro: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_exponent: Option<usize>,
    pub premises: Vec<ProofJson>,
}

pub fn proof_to_json(t: &ProofTree) -> ProofJson {
    match t {
        ProofTree::Hypothesis(s) => ProofJson::Hypothesis(HypothesisJson {
            hypothesis: print_sequent(s),
        }),
        ProofTree::Node(nd) => {
            let r = &nd.rule;
            ProofJson::Node(Box::new(NodeJson {
                sequent: print_sequent(&nd.sequent),
                rule: r.rule.name().to_owned(),
                n: r.n,
                principal: r.principal.as_ref().map(ToString::to_string),
                intro: r.intro.as_ref().map(|m| m.iter().map(ToString::to_string).collect()),
                cut_formula: r.cut_formula.as_ref().map(ToString::to_string),
                cut_exponent: r.cut_exponent,
                premises: nd.premises.iter().map(proof_to_json).collect(),
            }))
        }
    }
}

/// Rebuilds a proof tree. Nothing is checked beyond syntax.
pub fn proof_from_json(j: &ProofJson) -> Result<ProofTree, FormatError> {
    let sequent = |text: &str| {
        parse_sequent(text).map_err(|error| FormatError::Parse {
            text: text.to_owned(),
            error,
        })
    };
    match j {
        ProofJson::Hypothesis(h) => Ok(ProofTree::Hypothesis(sequent(&h.hypothesis)?)),
        ProofJson::Node(nd) => {
            let rule = RuleId::from_name(&nd.rule).ok_or_else(|| FormatError::UnknownRule(nd.rule.clone()))?;
            let intro = match &nd.intro {
                Some(fs) => Some(fs.iter().map(|f| formula(f)).collect::<Result<Multiset, _>>()?),
                None => None,
            };
            let instance = RuleInstance {
                rule,
                n: nd.n,
                principal: nd.principal.as_deref().map(formula).transpose()?,
                intro,
                cut_formula: nd.cut_formula.as_deref().map(formula).transpose()?,
                cut_exponent: nd.cut_exponent,
            };
            let premises = nd.premises.iter().map(proof_from_json).collect::<Result<_, _>>()?;
            Ok(ProofTree::node(sequent(&nd.sequent)?, instance, premises))
        }
    }
}

pub fn write_proof(t: &ProofTree) -> String {
    serde_json::to_string_pretty(&proof_to_json(t)).expect("proof JSON serializes")
}

pub fn read_proof(text: &str) -> Result<ProofTree, FormatError> {
    proof_from_json(&serde_json::from_str(text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountermodelJson {
    pub size: usize,
    /// `leq[a][b]` is 1 when `a ≤ b`.
    pub leq: Vec<Vec<u8>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bot: usize,
    pub top: usize,
    pub nabla: Vec<usize>,
    pub dyn_imp: Vec<Vec<usize>>,
    pub heyt_imp: Option<Vec<Vec<usize>>>,
    pub valuation: BTreeMap<String, usize>,
    pub refuted: String,
}

pub fn countermodel_to_json(c: &Countermodel) -> CountermodelJson {
    let a = &c.algebra;
    CountermodelJson {
        size: a.size,
        leq: a
            .leq
            .iter()
            .map(|row| row.iter().map(|&b| u8::from(b)).collect())
            .collect(),
        meet: a.meet.clone(),
        join: a.join.clone(),
        bot: a.bot,
        top: a.top,
        nabla: a.nabla.clone(),
        dyn_imp: a.dyn_imp.clone(),
        heyt_imp: a.heyt_imp.clone(),
        valuation: c.valuation.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        refuted: print_sequent(&c.refuted),
    }
}

/// Rebuilds a countermodel and re-validates both the algebra and the
/// refutation.
pub fn countermodel_from_json(j: &CountermodelJson) -> Result<Countermodel, FormatError> {
    let k = j.size;
    let square = |t: &Vec<Vec<usize>>| t.len() == k && t.iter().all(|r| r.len() == k && r.iter().all(|&x| x < k));
    let shapes_ok = j.leq.len() == k
        && j.leq.iter().all(|r| r.len() == k && r.iter().all(|&x| x <= 1))
        && square(&j.meet)
        && square(&j.join)
        && square(&j.dyn_imp)
        && j.heyt_imp.as_ref().is_none_or(square)
        && j.nabla.len() == k
        && j.nabla.iter().all(|&x| x < k)
        && j.bot < k
        && j.top < k
        && j.valuation.values().all(|&x| x < k);
    if !shapes_ok {
        return Err(FormatError::Countermodel("table shapes do not match the size".into()));
    }
    let algebra = FiniteNablaAlgebra {
        size: k,
        leq: j.leq.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect(),
        meet: j.meet.clone(),
        join: j.join.clone(),
        bot: j.bot,
        top: j.top,
        nabla: j.nabla.clone(),
        dyn_imp: j.dyn_imp.clone(),
        heyt_imp: j.heyt_imp.clone(),
    };
    algebra.check_invariants().map_err(FormatError::Countermodel)?;
    let refuted = parse_sequent(&j.refuted).map_err(|error| FormatError::Parse {
        text: j.refuted.clone(),
        error,
    })?;
    let valuation = j.valuation.iter().map(|(k, v)| (Arc::from(k.as_str()), *v)).collect();
    let c = Countermodel {
        algebra,
        valuation,
        refuted,
    };
    if !c.is_valid() {
        return Err(FormatError::Countermodel(
            "the valuation does not falsify the sequent".into(),
        ));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchReportJson {
    pub expansions: usize,
    pub loop_prunes: usize,
    pub depth_cutoffs: usize,
    pub nabla_drops: usize,
    pub depth_reached: usize,
    /// `null` when the bounded space was explored completely.
    pub binding: Option<String>,
}

impl From<&SearchReport> for SearchReportJson {
    fn from(r: &SearchReport) -> Self {
        SearchReportJson {
            expansions: r.expansions,
            loop_prunes: r.loop_prunes,
            depth_cutoffs: r.depth_cutoffs,
            nabla_drops: r.nabla_drops,
            depth_reached: r.depth_reached,
            binding: r.binding.map(|b| b.name().to_owned()),
        }
    }
}

/// `parse` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParseReport {
    /// `formula` or `sequent`.
    pub kind: String,
    pub canonical: String,
    pub atoms: Vec<String>,
    pub heyting_free: bool,
    pub nabla_nesting: usize,
}

/// `prove` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProveReport {
    /// `found` or `exhausted`.
    pub status: String,
    pub sequent: String,
    pub calculus: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof: Option<ProofJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<SearchReportJson>,
}

/// `check` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub valid: bool,
    pub sequent: String,
    pub calculus: String,
    pub height: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

/// Output of commands that produce one proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofReport {
    pub sequent: String,
    pub height: usize,
    pub proof: ProofJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceStepJson {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    pub construction: String,
}

/// `interpolate` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationReport {
    pub interpolant: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub left_proof: ProofJson,
    pub right_proof: ProofJson,
    pub trace: Vec<TraceStepJson>,
}

/// `visser` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VisserReport {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Residual index sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heyting: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynamic: Option<Vec<usize>>,
    /// The parts indices refer to, in order.
    pub heyting_parts: Vec<String>,
    pub dynamic_parts: Vec<String>,
    pub sequent: String,
    pub proof: ProofJson,
}

/// `split-disjunction` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitReport {
    /// `left` or `right`.
    pub side: String,
    pub sequent: String,
    pub proof: ProofJson,
}

/// `deduce export` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExportReport {
    pub sigma: Vec<String>,
    pub sequent: String,
    pub proof: ProofJson,
}

/// `refute` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefuteReport {
    /// `refuted` or `not-found-within-bound`.
    pub status: String,
    pub sequent: String,
    pub max_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<CountermodelJson>,
}
