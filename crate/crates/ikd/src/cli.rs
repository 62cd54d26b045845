//! Command line front end.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ikd_core::algebra::{refute, AlgebraError, Refutation};
use ikd_core::meta::{
    interpolate, split_disjunction, visser_disjunctive, visser_heyting, visser_implicative, visser_star, Construction,
    Disjunct, MetaError, Side, VisserAntecedent, VisserFamily, VisserVerdict,
};
use ikd_core::syntax::{parse_sequent_ordered, print_sequent};
use ikd_core::transform::{
    deduction_export, deduction_import, eliminate_cuts_with, ikd_to_stl, stl_to_ikd, CutStrategy, TransformError,
};
use ikd_core::{
    check_proof, parse_formula, parse_sequent, prove, CalculusId, Formula, Multiset, ParseError, ProofTree,
    SearchBudget, SearchError, SearchOutcome, Sequent,
};

use crate::format::*;
use crate::render;

#[derive(Parser, Debug)]
#[command(
    name = "ikd",
    version,
    about = "Proof search, checking and proof transformations for iK_d"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Bound on logical steps along a branch.
    #[arg(long, env = "IKD_DEPTH", default_value_t = SearchBudget::default().max_depth)]
    depth: usize,
    /// Bound on ∇ nesting beyond that of the goal.
    #[arg(long, env = "IKD_NABLA_EXCESS", default_value_t = SearchBudget::default().max_nabla_excess)]
    nabla_excess: usize,
    /// Bound on expanded search nodes.
    #[arg(long, env = "IKD_NODES", default_value_t = SearchBudget::default().max_nodes)]
    nodes: usize,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        SearchBudget::new(self.depth, self.nabla_excess, self.nodes)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Calc {
    Ikd,
    Ikds,
    Stlnh,
    Stln,
}

impl Calc {
    fn id(self) -> CalculusId {
        match self {
            Calc::Ikd => CalculusId::ikd(),
            Calc::Ikds => CalculusId::ikds(),
            Calc::Stlnh => CalculusId::stlnh(),
            Calc::Stln => CalculusId::stln(),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Ascii,
    Latex,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum RenderFormat {
    Ascii,
    Latex,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Ikd,
    Stl,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Strategy {
    LeftFirst,
    RightFirst,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Disj,
    Imp,
    Heyt,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula or, if it contains `|-`, a sequent.
    Parse { text: String },
    /// Search for a cut-free proof.
    Prove {
        #[arg(long, value_enum, default_value = "ikd")]
        calc: Calc,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        sequent: String,
    },
    /// Check a proof file (`-` reads standard input).
    Check {
        #[arg(long, value_enum, default_value = "ikd")]
        calc: Calc,
        /// Allow generalized cuts in iK_d or iK_d*.
        #[arg(long)]
        cut: bool,
        /// Allow hypothesis leaves.
        #[arg(long)]
        hypotheses: bool,
        proof: PathBuf,
    },
    /// Translate a proof between STL and iK_d.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        proof: PathBuf,
    },
    /// Eliminate generalized cuts from an iK_d proof.
    Cutelim {
        #[arg(long, value_enum, default_value = "left-first")]
        strategy: Strategy,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        proof: PathBuf,
    },
    /// Interpolate a sequent (searched first) or a proof file.
    Interpolate {
        /// Antecedent positions forming the left part, counted from 0 in
        /// the order written.
        #[arg(long, value_delimiter = ',')]
        left: Vec<usize>,
        #[arg(long, conflicts_with = "sequent")]
        proof: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(required_unless_present = "proof")]
        sequent: Option<String>,
    },
    /// Run a Visser extractor on a sequent (searched first) or a proof file.
    Visser {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Work in iK_d*.
        #[arg(long)]
        star: bool,
        #[arg(long, conflicts_with = "sequent")]
        proof: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(required_unless_present = "proof")]
        sequent: Option<String>,
    },
    /// Split a proof of `|- A | B` into a proof of one disjunct.
    SplitDisjunction {
        #[arg(long, conflicts_with = "sequent")]
        proof: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ikd")]
        calc: Calc,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(required_unless_present = "proof")]
        sequent: Option<String>,
    },
    /// The deduction theorem in both directions.
    Deduce {
        #[command(subcommand)]
        op: DeduceOp,
    },
    /// Look for a finite countermodel.
    Refute {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        sequent: String,
    },
    /// Render a proof file.
    Render {
        #[arg(long, value_enum, default_value = "ascii")]
        format: RenderFormat,
        proof: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DeduceOp {
    /// Discharge hypotheses `|- A` into antecedent variants of `A`.
    Export {
        #[arg(long)]
        assumption: String,
        proof: PathBuf,
    },
    /// Cut the given variants of `A` against hypotheses `|- A`.
    Import {
        #[arg(long)]
        assumption: String,
        /// A variant of the assumption to discharge; repeat for several.
        #[arg(long)]
        sigma: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        proof: PathBuf,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

type Outcome = Result<i32, Failure>;

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Internal(_) | TransformError::MeasureViolation { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<MetaError> for Failure {
    fn from(e: MetaError) -> Self {
        match e {
            MetaError::Internal(_) => Failure::Internal(e.to_string()),
            MetaError::Transform(t) => t.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Runs the command line and returns the process exit code: 0 success,
/// 1 not found, 2 input error, 3 internal invariant violation.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            3
        }
    }
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    put(out, &format!("{text}\n"))
}

/// Writes to the output stream; a closed reader is not an error.
fn put(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match out.write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Input(format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn load_proof(path: &PathBuf) -> Result<ProofTree, Failure> {
    Ok(read_proof(&read_source(path)?)?)
}

fn emit_proof(out: &mut dyn Write, t: &ProofTree, format: OutputFormat) -> Result<(), Failure> {
    match format {
        OutputFormat::Json => emit(
            out,
            &ProofReport {
                sequent: print_sequent(t.sequent()),
                height: t.height(),
                proof: proof_to_json(t),
            },
        ),
        OutputFormat::Ascii => put(out, &render::ascii(t)),
        OutputFormat::Latex => put(out, &render::latex(t)),
    }
}

/// Searches, re-checks a found proof, and reports exhaustion on `out`.
fn search(
    out: &mut dyn Write,
    goal: &Sequent,
    calc: CalculusId,
    budget: SearchBudget,
) -> Result<Option<ProofTree>, Failure> {
    match prove(goal, calc, budget)? {
        SearchOutcome::Found(t) => {
            if t.sequent() != goal {
                return Err(Failure::Internal(format!(
                    "search returned a proof of `{}`",
                    t.sequent()
                )));
            }
            check_proof(&t, calc).map_err(|e| Failure::Internal(format!("search returned an invalid proof: {e}")))?;
            Ok(Some(t))
        }
        SearchOutcome::Exhausted(r) => {
            emit(
                out,
                &ProveReport {
                    status: "exhausted".into(),
                    sequent: print_sequent(goal),
                    calculus: calc.to_string(),
                    proof: None,
                    report: Some((&r).into()),
                },
            )?;
            Ok(None)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Parse { text } => parse(out, &text),
        Command::Prove {
            calc,
            budget,
            format,
            sequent,
        } => {
            let goal = parse_sequent(&sequent)?;
            let calc = calc.id();
            let Some(t) = search(out, &goal, calc, budget.budget())? else {
                return Ok(1);
            };
            if format == OutputFormat::Json {
                emit(
                    out,
                    &ProveReport {
                        status: "found".into(),
                        sequent: print_sequent(&goal),
                        calculus: calc.to_string(),
                        proof: Some(proof_to_json(&t)),
                        report: None,
                    },
                )?;
            } else {
                emit_proof(out, &t, format)?;
            }
            Ok(0)
        }
        Command::Check {
            calc,
            cut,
            hypotheses,
            proof,
        } => {
            let t = load_proof(&proof)?;
            let mut calc = calc.id().with_hypotheses(hypotheses);
            if cut {
                calc = calc.with_cut(true);
            }
            let res = check_proof(&t, calc);
            let (path, violation) = match &res {
                Ok(()) => (None, None),
                Err(e) => (Some(e.path.clone()), Some(e.violation.to_string())),
            };
            emit(
                out,
                &CheckReport {
                    valid: res.is_ok(),
                    sequent: print_sequent(t.sequent()),
                    calculus: calc.to_string(),
                    height: t.height(),
                    size: t.size(),
                    path,
                    violation,
                },
            )?;
            Ok(if res.is_ok() { 0 } else { 1 })
        }
        Command::Translate { to, format, proof } => {
            let t = load_proof(&proof)?;
            let r = match to {
                Target::Ikd => stl_to_ikd(&t)?,
                Target::Stl => ikd_to_stl(&t)?,
            };
            emit_proof(out, &r, format)?;
            Ok(0)
        }
        Command::Cutelim {
            strategy,
            format,
            proof,
        } => {
            let t = load_proof(&proof)?;
            let strategy = match strategy {
                Strategy::LeftFirst => CutStrategy::LeftFirst,
                Strategy::RightFirst => CutStrategy::RightFirst,
            };
            emit_proof(out, &eliminate_cuts_with(&t, strategy)?, format)?;
            Ok(0)
        }
        Command::Interpolate {
            left,
            proof,
            budget,
            sequent,
        } => {
            let (t, positions) = match (proof, sequent) {
                (Some(p), _) => (load_proof(&p)?, left),
                (None, Some(s)) => {
                    let (written, succ) = parse_sequent_ordered(&s)?;
                    let goal = Sequent::new(Multiset::from(written.clone()), succ);
                    let Some(t) = search(out, &goal, CalculusId::ikd(), budget.budget())? else {
                        return Ok(1);
                    };
                    let positions = canonical_positions(&written, goal.antecedent.as_slice(), &left)?;
                    (t, positions)
                }
                (None, None) => return Err(Failure::Input("a sequent or --proof is required".into())),
            };
            let r = interpolate(&t, &positions)?;
            let ant = t.sequent().antecedent.as_slice();
            let (l, rt): (Vec<_>, Vec<_>) = (0..ant.len()).partition(|i| positions.contains(i));
            emit(
                out,
                &InterpolationReport {
                    interpolant: r.interpolant.to_string(),
                    left: l.iter().map(|&i| ant[i].to_string()).collect(),
                    right: rt.iter().map(|&i| ant[i].to_string()).collect(),
                    left_proof: proof_to_json(&r.left_proof),
                    right_proof: proof_to_json(&r.right_proof),
                    trace: r
                        .trace
                        .iter()
                        .map(|s| TraceStepJson {
                            rule: s.rule.name().to_owned(),
                            side: s.side.map(|x| match x {
                                Side::Left => "left".to_owned(),
                                Side::Right => "right".to_owned(),
                            }),
                            construction: construction_name(s.construction).to_owned(),
                        })
                        .collect(),
                },
            )?;
            Ok(0)
        }
        Command::Visser {
            mode,
            k,
            star,
            proof,
            budget,
            sequent,
        } => {
            let calc = if star { CalculusId::ikds() } else { CalculusId::ikd() };
            let t = match (proof, sequent) {
                (Some(p), _) => load_proof(&p)?,
                (None, Some(s)) => {
                    let Some(t) = search(out, &parse_sequent(&s)?, calc, budget.budget())? else {
                        return Ok(1);
                    };
                    t
                }
                (None, None) => return Err(Failure::Input("a sequent or --proof is required".into())),
            };
            let x = VisserAntecedent::from_antecedent(&t.sequent().antecedent)
                .ok_or_else(|| Failure::Input("every antecedent formula must be a ∇-prefixed implication".into()))?;
            let family = match mode {
                Mode::Disj => VisserFamily::Disjunctive,
                Mode::Imp => VisserFamily::Implicative(k),
                Mode::Heyt => VisserFamily::Heyting(k),
            };
            let v = if star {
                visser_star(&t, &x, family)?
            } else {
                match family {
                    VisserFamily::Disjunctive => visser_disjunctive(&t, &x)?,
                    VisserFamily::Implicative(k) => visser_implicative(&t, &x, k)?,
                    VisserFamily::Heyting(k) => visser_heyting(&t, &x, k)?,
                }
            };
            let (index, heyting, dynamic) = match &v {
                VisserVerdict::HeytingPremise { index, .. } | VisserVerdict::DynPremise { index, .. } => {
                    (Some(*index), None, None)
                }
                VisserVerdict::Residual { heyting, dyn_, .. } => (None, Some(heyting.clone()), Some(dyn_.clone())),
                _ => (None, None, None),
            };
            emit(
                out,
                &VisserReport {
                    kind: v.kind().to_owned(),
                    index,
                    heyting,
                    dynamic,
                    heyting_parts: (0..x.heyting_parts.len())
                        .map(|i| x.heyting_formula(i).to_string())
                        .collect(),
                    dynamic_parts: (0..x.dyn_parts.len()).map(|j| x.dyn_formula(j).to_string()).collect(),
                    sequent: print_sequent(v.proof().sequent()),
                    proof: proof_to_json(v.proof()),
                },
            )?;
            Ok(0)
        }
        Command::SplitDisjunction {
            proof,
            calc,
            budget,
            sequent,
        } => {
            let t = match (proof, sequent) {
                (Some(p), _) => load_proof(&p)?,
                (None, Some(s)) => {
                    let Some(t) = search(out, &parse_sequent(&s)?, calc.id(), budget.budget())? else {
                        return Ok(1);
                    };
                    t
                }
                (None, None) => return Err(Failure::Input("a sequent or --proof is required".into())),
            };
            let (side, p) = match split_disjunction(&t)? {
                Disjunct::Left(p) => ("left", p),
                Disjunct::Right(p) => ("right", p),
            };
            emit(
                out,
                &SplitReport {
                    side: side.into(),
                    sequent: print_sequent(p.sequent()),
                    proof: proof_to_json(&p),
                },
            )?;
            Ok(0)
        }
        Command::Deduce { op } => match op {
            DeduceOp::Export { assumption, proof } => {
                let a = parse_formula(&assumption)?;
                let t = load_proof(&proof)?;
                let r = deduction_export(&t, &a)?;
                emit(
                    out,
                    &ExportReport {
                        sigma: r.sigma.iter().map(ToString::to_string).collect(),
                        sequent: print_sequent(r.proof.sequent()),
                        proof: proof_to_json(&r.proof),
                    },
                )?;
                Ok(0)
            }
            DeduceOp::Import {
                assumption,
                sigma,
                format,
                proof,
            } => {
                let a = parse_formula(&assumption)?;
                let sigma = sigma
                    .iter()
                    .map(|s| parse_formula(s))
                    .collect::<Result<Multiset, _>>()?;
                let t = load_proof(&proof)?;
                emit_proof(out, &deduction_import(&a, &sigma, &t)?, format)?;
                Ok(0)
            }
        },
        Command::Refute { max_size, sequent } => {
            let s = parse_sequent(&sequent)?;
            let r = refute(&s, max_size, true)?;
            let found = matches!(r, Refutation::Countermodel(_));
            emit(
                out,
                &RefuteReport {
                    status: if found { "refuted" } else { "not-found-within-bound" }.into(),
                    sequent: print_sequent(&s),
                    max_size,
                    countermodel: r.countermodel().map(countermodel_to_json),
                },
            )?;
            Ok(if found { 0 } else { 1 })
        }
        Command::Render { format, proof } => {
            let t = load_proof(&proof)?;
            let anywhere = [
                CalculusId::ikd().with_cut(true).with_hypotheses(true),
                CalculusId::stlnh().with_hypotheses(true),
            ];
            let errors: Vec<_> = anywhere.iter().filter_map(|c| check_proof(&t, *c).err()).collect();
            if errors.len() == anywhere.len() {
                return Err(Failure::Input(format!("proof does not check: {}", errors[0])));
            }
            let text = match format {
                RenderFormat::Ascii => render::ascii(&t),
                RenderFormat::Latex => render::latex(&t),
            };
            put(out, &text)?;
            Ok(0)
        }
    }
}

fn parse(out: &mut dyn Write, text: &str) -> Outcome {
    let (kind, canonical, atoms, heyting_free, nabla_nesting) = if text.contains("|-") {
        let s = parse_sequent(text)?;
        (
            "sequent",
            print_sequent(&s),
            s.atoms(),
            s.is_heyting_free(),
            s.max_nabla_nesting(),
        )
    } else {
        let f = parse_formula(text)?;
        (
            "formula",
            f.to_string(),
            f.atoms(),
            f.is_heyting_free(),
            f.nabla_nesting(),
        )
    };
    emit(
        out,
        &ParseReport {
            kind: kind.into(),
            canonical,
            atoms: atoms.iter().map(ToString::to_string).collect(),
            heyting_free,
            nabla_nesting,
        },
    )?;
    Ok(0)
}

fn construction_name(c: Construction) -> &'static str {
    match c {
        Construction::Atom => "atom",
        Construction::Top => "top",
        Construction::Bot => "bot",
        Construction::Passed => "passed",
        Construction::Conjunction => "conjunction",
        Construction::Disjunction => "disjunction",
        Construction::HeytingImplication => "heyting-implication",
        Construction::Boxed => "boxed",
        Construction::Nabla => "nabla",
    }
}

/// Maps positions in the written antecedent to positions in the canonical
/// order, matching equal formulas by occurrence.
fn canonical_positions(written: &[Formula], canonical: &[Formula], left: &[usize]) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for (n, &i) in left.iter().enumerate() {
        if i >= written.len() || left[..n].contains(&i) {
            return Err(Failure::Input(format!(
                "--left position {i} is out of range or repeated"
            )));
        }
        let f = &written[i];
        let rank = written[..i].iter().filter(|g| *g == f).count();
        let pos = canonical
            .iter()
            .enumerate()
            .filter(|(_, g)| *g == f)
            .nth(rank)
            .map(|(p, _)| p)
            .ok_or_else(|| Failure::Internal("canonical antecedent lost an occurrence".into()))?;
        out.push(pos);
    }
    Ok(out)
}
