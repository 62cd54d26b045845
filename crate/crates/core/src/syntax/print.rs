use alloc::string::String;

use super::{Formula, Sequent};

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// Minimal-parenthesis rendering that re-parses to the same tree.
pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f, 0);
    s
}

pub fn print_sequent(s: &Sequent) -> String {
    let mut out = String::new();
    for (i, f) in s.antecedent.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_formula(&mut out, f, 0);
    }
    if !s.antecedent.is_empty() {
        out.push(' ');
    }
    out.push_str("|-");
    if let Some(g) = &s.succedent {
        out.push(' ');
        write_formula(&mut out, g, 0);
    }
    out
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::DynImp(..) | Formula::HeytImp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

pub(crate) fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(a),
        Formula::Top => out.push('T'),
        Formula::Bot => out.push('F'),
        Formula::Nabla(b) => {
            out.push('#');
            write_formula(out, b, UNARY);
        }
        Formula::And(l, r) => {
            write_formula(out, l, AND);
            out.push_str(" & ");
            write_formula(out, r, UNARY);
        }
        Formula::Or(l, r) => {
            write_formula(out, l, OR);
            out.push_str(" | ");
            write_formula(out, r, AND);
        }
        Formula::DynImp(l, r) | Formula::HeytImp(l, r) => {
            write_formula(out, l, OR);
            out.push_str(if matches!(f, Formula::DynImp(..)) {
                " -> "
            } else {
                " => "
            });
            write_formula(out, r, IMP);
        }
    }
    if paren {
        out.push(')');
    }
}
