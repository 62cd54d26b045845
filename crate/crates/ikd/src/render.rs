//! Text renderings of proof trees.

use std::fmt::Write;

use ikd_core::syntax::print_sequent;
use ikd_core::{Formula, ProofTree, RuleId, RuleInstance, Sequent};

/// Short rule label with its exponent, e.g. `L->^1`.
pub fn rule_label(r: &RuleInstance) -> String {
    let base = match r.rule {
        RuleId::IdP => "Id^p",
        RuleId::LBot => "LF",
        RuleId::RTop => "RT",
        RuleId::LW => "LW",
        RuleId::Rw => "Rw",
        RuleId::LAndN => "L&",
        RuleId::RAnd => "R&",
        RuleId::LOrN => "L|",
        RuleId::ROr1 => "R|1",
        RuleId::ROr2 => "R|2",
        RuleId::LDynImpN => "L->",
        RuleId::RDynImp => "R->",
        RuleId::LHeytImpN => "L=>",
        RuleId::RHeytImp => "R=>",
        RuleId::N => "N",
        RuleId::Lc => "Lc",
        RuleId::Cut => "Cut",
        RuleId::LAnd1 => "L&1",
        RuleId::LAnd2 => "L&2",
        RuleId::LOr => "L|",
        RuleId::LDynImp => "L->",
        RuleId::LHeytImp => "L=>",
        RuleId::Lw => "Lw",
        RuleId::Id => "Id",
    };
    match (r.n, r.cut_exponent) {
        (Some(n), _) => format!("{base}^{n}"),
        (None, Some(k)) => format!("{base}^{k}"),
        _ => base.to_owned(),
    }
}

/// One sequent per line, premises indented under their conclusion.
pub fn ascii(t: &ProofTree) -> String {
    let mut out = String::new();
    ascii_into(t, 0, &mut out);
    out
}

fn ascii_into(t: &ProofTree, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match t {
        ProofTree::Hypothesis(s) => {
            let _ = writeln!(out, "{pad}{}   [hyp]", print_sequent(s));
        }
        ProofTree::Node(nd) => {
            let _ = writeln!(out, "{pad}{}   [{}]", print_sequent(&nd.sequent), rule_label(&nd.rule));
            for p in &nd.premises {
                ascii_into(p, depth + 1, out);
            }
        }
    }
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::DynImp(..) | Formula::HeytImp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn latex_formula(out: &mut String, f: &Formula, min: u8) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(&a.replace('_', "\\_")),
        Formula::Top => out.push_str("\\top"),
        Formula::Bot => out.push_str("\\bot"),
        Formula::Nabla(b) => {
            out.push_str("\\nabla ");
            latex_formula(out, b, UNARY);
        }
        Formula::And(l, r) => {
            latex_formula(out, l, AND);
            out.push_str(" \\wedge ");
            latex_formula(out, r, UNARY);
        }
        Formula::Or(l, r) => {
            latex_formula(out, l, OR);
            out.push_str(" \\vee ");
            latex_formula(out, r, AND);
        }
        Formula::DynImp(l, r) | Formula::HeytImp(l, r) => {
            latex_formula(out, l, OR);
            out.push_str(if matches!(f, Formula::DynImp(..)) {
                " \\to "
            } else {
                " \\supset "
            });
            latex_formula(out, r, IMP);
        }
    }
    if paren {
        out.push(')');
    }
}

fn latex_sequent(s: &Sequent) -> String {
    let mut out = String::from("$");
    for (i, f) in s.antecedent.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        latex_formula(&mut out, f, 0);
    }
    if !s.antecedent.is_empty() {
        out.push(' ');
    }
    out.push_str("\\Rightarrow");
    if let Some(g) = &s.succedent {
        out.push(' ');
        latex_formula(&mut out, g, 0);
    }
    out.push('$');
    out
}

fn latex_label(r: &RuleInstance) -> String {
    let base = match r.rule {
        RuleId::IdP => "Id^p",
        RuleId::LBot => "L\\bot",
        RuleId::RTop => "R\\top",
        RuleId::LW => "LW",
        RuleId::Rw => "Rw",
        RuleId::LAndN => "L\\wedge",
        RuleId::RAnd => "R\\wedge",
        RuleId::LOrN => "L\\vee",
        RuleId::ROr1 => "R\\vee_1",
        RuleId::ROr2 => "R\\vee_2",
        RuleId::LDynImpN => "L{\\to}",
        RuleId::RDynImp => "R{\\to}",
        RuleId::LHeytImpN => "L{\\supset}",
        RuleId::RHeytImp => "R{\\supset}",
        RuleId::N => "N",
        RuleId::Lc => "Lc",
        RuleId::Cut => "cut",
        RuleId::LAnd1 => "L\\wedge_1",
        RuleId::LAnd2 => "L\\wedge_2",
        RuleId::LOr => "L\\vee",
        RuleId::LDynImp => "L{\\to}",
        RuleId::LHeytImp => "L{\\supset}",
        RuleId::Lw => "Lw",
        RuleId::Id => "Id",
    };
    match (r.n, r.cut_exponent) {
        (Some(n), _) => format!("$({base}^{{{n}}})$"),
        (None, Some(k)) => format!("$({base}^{{{k}}})$"),
        _ => format!("$({base})$"),
    }
}

fn latex_into(t: &ProofTree, out: &mut String) {
    match t {
        ProofTree::Hypothesis(s) => {
            let _ = writeln!(out, "\\AxiomC{{{}}}", latex_sequent(s));
        }
        ProofTree::Node(nd) => {
            if nd.premises.is_empty() {
                out.push_str("\\AxiomC{}\n");
            }
            for p in &nd.premises {
                latex_into(p, out);
            }
            let _ = writeln!(out, "\\RightLabel{{\\scriptsize {}}}", latex_label(&nd.rule));
            let inf = match nd.premises.len() {
                0 | 1 => "UnaryInfC",
                2 => "BinaryInfC",
                _ => "TrinaryInfC",
            };
            let _ = writeln!(out, "\\{inf}{{{}}}", latex_sequent(&nd.sequent));
        }
    }
}

/// A standalone document typesetting the proof with `bussproofs`.
pub fn latex(t: &ProofTree) -> String {
    let mut body = String::new();
    latex_into(t, &mut body);
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amssymb}}\n\\usepackage{{bussproofs}}\n\\begin{{document}}\n\\begin{{prooftree}}\n{body}\\end{{prooftree}}\n\\end{{document}}\n"
    )
}
