//! Formula AST shared by every logic, plus the first-order pointer fragment.
//!
//! One node type covers the whole family; which node kinds are admissible is
//! decided by the signature check against a [`Logic`]. Defined connectives
//! (`!`, `[]`, and in DMBI/CBI `mbot`/`mor`) are parsed and printed but are
//! eliminated by [`expand_defined`] before any primitive-only reasoning.

use crate::logic::{Logic, LogicName};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Terms of the pointer-logic fragment: variables, integer constants, and
/// (when the heap universe enables modular arithmetic) sums and differences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(i64),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
        }
    }

    pub fn uses_arithmetic(&self) -> bool {
        match self {
            Term::Var(_) | Term::Const(_) => false,
            Term::Add(..) | Term::Sub(..) => true,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(n) => write!(f, "{n}"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Sub(a, b) => write!(f, "({a} - {b})"),
        }
    }
}

/// Formula AST for the whole propositional family plus the FO pointer fragment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    /// Multiplicative unit, written `emp`.
    MUnit,
    /// Multiplicative falsum.
    MBot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Star(Box<Formula>, Box<Formula>),
    Wand(Box<Formula>, Box<Formula>),
    /// The other implication adjoint to a non-commutative `*`, written `*-`.
    Dnaw(Box<Formula>, Box<Formula>),
    /// De Morgan multiplicative negation, written `mnot`.
    MNeg(Box<Formula>),
    /// Multiplicative disjunction, written `mor`.
    MOr(Box<Formula>, Box<Formula>),
    /// Residual of `mor`, written `rslash`.
    RSlash(Box<Formula>, Box<Formula>),
    /// Sequential composition, written `;`.
    Seq(Box<Formula>, Box<Formula>),
    /// Right residual of `;`, written `-;`.
    RSeq(Box<Formula>, Box<Formula>),
    /// Left residual of `;`, written `;-`.
    LSeq(Box<Formula>, Box<Formula>),
    Diamond(Box<Formula>),
    BoxM(Box<Formula>),
    Not(Box<Formula>),
    Eq(Term, Term),
    PointsTo(Term, Term),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

pub fn atom(name: &str) -> Formula {
    Formula::Atom(name.to_string())
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn star(a: Formula, b: Formula) -> Formula {
        Formula::Star(Box::new(a), Box::new(b))
    }
    pub fn wand(a: Formula, b: Formula) -> Formula {
        Formula::Wand(Box::new(a), Box::new(b))
    }
    pub fn dnaw(a: Formula, b: Formula) -> Formula {
        Formula::Dnaw(Box::new(a), Box::new(b))
    }
    pub fn mneg(a: Formula) -> Formula {
        Formula::MNeg(Box::new(a))
    }
    pub fn mor(a: Formula, b: Formula) -> Formula {
        Formula::MOr(Box::new(a), Box::new(b))
    }
    pub fn rslash(a: Formula, b: Formula) -> Formula {
        Formula::RSlash(Box::new(a), Box::new(b))
    }
    pub fn seq(a: Formula, b: Formula) -> Formula {
        Formula::Seq(Box::new(a), Box::new(b))
    }
    pub fn rseq(a: Formula, b: Formula) -> Formula {
        Formula::RSeq(Box::new(a), Box::new(b))
    }
    pub fn lseq(a: Formula, b: Formula) -> Formula {
        Formula::LSeq(Box::new(a), Box::new(b))
    }
    pub fn diamond(a: Formula) -> Formula {
        Formula::Diamond(Box::new(a))
    }
    pub fn boxm(a: Formula) -> Formula {
        Formula::BoxM(Box::new(a))
    }
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }
    pub fn exists(v: &str, a: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(a))
    }
    pub fn forall(v: &str, a: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(a))
    }

    /// The parameterised diamond of SML, `<>_phi psi := !(phi -* !<>psi)`.
    /// The modality is definable rather than primitive, so this constructor
    /// builds the defining formula directly.
    pub fn diamond_sub(phi: Formula, psi: Formula) -> Formula {
        Formula::not(Formula::wand(phi, Formula::not(Formula::diamond(psi))))
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Top
            | Formula::Bot
            | Formula::MUnit
            | Formula::MBot
            | Formula::Eq(..)
            | Formula::PointsTo(..) => {}
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Star(a, b)
            | Formula::Wand(a, b)
            | Formula::Dnaw(a, b)
            | Formula::MOr(a, b)
            | Formula::RSlash(a, b)
            | Formula::Seq(a, b)
            | Formula::RSeq(a, b)
            | Formula::LSeq(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::MNeg(a)
            | Formula::Diamond(a)
            | Formula::BoxM(a)
            | Formula::Not(a)
            | Formula::Exists(_, a)
            | Formula::Forall(_, a) => a.collect_atoms(out),
        }
    }

    /// Free variables of a pointer-fragment formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    fn collect_free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(s, t) | Formula::PointsTo(s, t) => {
                s.free_vars(out);
                t.free_vars(out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                let mut inner = BTreeSet::new();
                a.collect_free_vars(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Star(a, b)
            | Formula::Wand(a, b)
            | Formula::Dnaw(a, b)
            | Formula::MOr(a, b)
            | Formula::RSlash(a, b)
            | Formula::Seq(a, b)
            | Formula::RSeq(a, b)
            | Formula::LSeq(a, b) => {
                a.collect_free_vars(out);
                b.collect_free_vars(out);
            }
            Formula::MNeg(a) | Formula::Diamond(a) | Formula::BoxM(a) | Formula::Not(a) => {
                a.collect_free_vars(out)
            }
            _ => {}
        }
    }

    /// Connective name as used in error messages and the signature table.
    pub fn connective_name(&self) -> &'static str {
        match self {
            Formula::Atom(_) => "atom",
            Formula::Top => "top",
            Formula::Bot => "bot",
            Formula::MUnit => "emp",
            Formula::MBot => "mbot",
            Formula::And(..) => "/\\",
            Formula::Or(..) => "\\/",
            Formula::Imp(..) => "->",
            Formula::Star(..) => "*",
            Formula::Wand(..) => "-*",
            Formula::Dnaw(..) => "*-",
            Formula::MNeg(..) => "mnot",
            Formula::MOr(..) => "mor",
            Formula::RSlash(..) => "rslash",
            Formula::Seq(..) => ";",
            Formula::RSeq(..) => "-;",
            Formula::LSeq(..) => ";-",
            Formula::Diamond(..) => "<>",
            Formula::BoxM(..) => "[]",
            Formula::Not(..) => "!",
            Formula::Eq(..) => "=",
            Formula::PointsTo(..) => "|->",
            Formula::Exists(..) => "exists",
            Formula::Forall(..) => "forall",
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Star(a, b)
            | Formula::Wand(a, b)
            | Formula::Dnaw(a, b)
            | Formula::MOr(a, b)
            | Formula::RSlash(a, b)
            | Formula::Seq(a, b)
            | Formula::RSeq(a, b)
            | Formula::LSeq(a, b) => vec![a, b],
            Formula::MNeg(a)
            | Formula::Diamond(a)
            | Formula::BoxM(a)
            | Formula::Not(a)
            | Formula::Exists(_, a)
            | Formula::Forall(_, a) => vec![a],
            _ => vec![],
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("connective `{connective}` is not in the {logic} signature")]
    NotInSignature { connective: &'static str, logic: LogicName },
    #[error("connective `{0}` belongs to the first-order pointer fragment, not to {1}")]
    PointerOnly(&'static str, LogicName),
}

/// Whether a node kind is admitted by the propositional signature of `logic`.
/// Defined connectives (`!`, `[]`, and `mbot`/`mor` in DMBI/CBI) count as
/// admitted; they expand to primitives.
fn admitted(f: &Formula, logic: LogicName) -> bool {
    use LogicName::*;
    match f {
        Formula::Atom(_) | Formula::Top | Formula::Bot => true,
        Formula::And(..) | Formula::Or(..) | Formula::Imp(..) | Formula::Not(..) => true,
        Formula::Star(..) | Formula::Wand(..) => true,
        Formula::Dnaw(..) => matches!(logic, Lgl | Ilgl),
        Formula::MUnit => logic.has_munit(),
        Formula::MNeg(..) => matches!(logic, Dmbi | Cbi),
        Formula::MBot | Formula::MOr(..) => matches!(logic, Dmbi | Cbi | BiBi | BiBbi),
        Formula::RSlash(..) => matches!(logic, BiBi | BiBbi),
        Formula::Seq(..) | Formula::RSeq(..) | Formula::LSeq(..) => logic == Ckbi,
        Formula::Diamond(..) | Formula::BoxM(..) => logic == Sml,
        Formula::Eq(..) | Formula::PointsTo(..) | Formula::Exists(..) | Formula::Forall(..) => {
            false
        }
    }
}

/// Signature-check a propositional formula against a logic.
pub fn check_signature(f: &Formula, logic: &Logic) -> Result<(), SignatureError> {
    let name = logic.name();
    if !admitted(f, name) {
        let c = f.connective_name();
        return Err(match f {
            Formula::Eq(..) | Formula::PointsTo(..) | Formula::Exists(..) | Formula::Forall(..) => {
                SignatureError::PointerOnly(c, name)
            }
            _ => SignatureError::NotInSignature { connective: c, logic: name },
        });
    }
    for c in f.children() {
        check_signature(c, logic)?;
    }
    Ok(())
}

/// Signature-check a formula of the first-order pointer fragment.
/// Atoms are not part of the pointer grammar; `emp` stands for the
/// multiplicative unit.
pub fn check_pointer_signature(f: &Formula) -> Result<(), SignatureError> {
    let ok = matches!(
        f,
        Formula::Top
            | Formula::Bot
            | Formula::MUnit
            | Formula::And(..)
            | Formula::Or(..)
            | Formula::Imp(..)
            | Formula::Not(..)
            | Formula::Star(..)
            | Formula::Wand(..)
            | Formula::Eq(..)
            | Formula::PointsTo(..)
            | Formula::Exists(..)
            | Formula::Forall(..)
    );
    if !ok {
        return Err(SignatureError::NotInSignature {
            connective: f.connective_name(),
            logic: LogicName::Bbi,
        });
    }
    for c in f.children() {
        check_pointer_signature(c)?;
    }
    Ok(())
}

/// Replace every defined connective by its definition:
/// `!phi := phi -> bot`, `[]phi := !<>!phi`, and in DMBI/CBI
/// `mbot := mnot emp` and `phi mor psi := mnot (mnot phi * mnot psi)`.
/// The result uses only primitive connectives of the logic. Idempotent.
pub fn expand_defined(f: &Formula, logic: &Logic) -> Formula {
    let name = logic.name();
    let demorgan_sugar = matches!(name, LogicName::Dmbi | LogicName::Cbi);
    let go = |g: &Formula| expand_defined(g, logic);
    match f {
        Formula::Not(a) => Formula::imp(go(a), Formula::Bot),
        Formula::BoxM(a) => Formula::imp(
            Formula::diamond(Formula::imp(go(a), Formula::Bot)),
            Formula::Bot,
        ),
        Formula::MBot if demorgan_sugar => Formula::mneg(Formula::MUnit),
        Formula::MOr(a, b) if demorgan_sugar => {
            Formula::mneg(Formula::star(Formula::mneg(go(a)), Formula::mneg(go(b))))
        }
        Formula::Atom(_)
        | Formula::Top
        | Formula::Bot
        | Formula::MUnit
        | Formula::MBot
        | Formula::Eq(..)
        | Formula::PointsTo(..) => f.clone(),
        Formula::And(a, b) => Formula::and(go(a), go(b)),
        Formula::Or(a, b) => Formula::or(go(a), go(b)),
        Formula::Imp(a, b) => Formula::imp(go(a), go(b)),
        Formula::Star(a, b) => Formula::star(go(a), go(b)),
        Formula::Wand(a, b) => Formula::wand(go(a), go(b)),
        Formula::Dnaw(a, b) => Formula::dnaw(go(a), go(b)),
        Formula::MNeg(a) => Formula::mneg(go(a)),
        Formula::MOr(a, b) => Formula::mor(go(a), go(b)),
        Formula::RSlash(a, b) => Formula::rslash(go(a), go(b)),
        Formula::Seq(a, b) => Formula::seq(go(a), go(b)),
        Formula::RSeq(a, b) => Formula::rseq(go(a), go(b)),
        Formula::LSeq(a, b) => Formula::lseq(go(a), go(b)),
        Formula::Diamond(a) => Formula::diamond(go(a)),
        Formula::Exists(v, a) => Formula::Exists(v.clone(), Box::new(go(a))),
        Formula::Forall(v, a) => Formula::Forall(v.clone(), Box::new(go(a))),
    }
}

// Printer precedence levels, tightest first:
//   4 atoms/constants/unary, 3 {* ;}, 2 {/\}, 1 {\/ mor}, 0 implications.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..)
        | Formula::Wand(..)
        | Formula::Dnaw(..)
        | Formula::RSeq(..)
        | Formula::LSeq(..)
        | Formula::RSlash(..)
        | Formula::Exists(..)
        | Formula::Forall(..) => 0,
        Formula::Or(..) | Formula::MOr(..) => 1,
        Formula::And(..) => 2,
        Formula::Star(..) | Formula::Seq(..) => 3,
        _ => 4,
    }
}

fn print_at(f: &Formula, min: u8, out: &mut String) {
    let p = prec(f);
    let parens = p < min;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(a),
        Formula::Top => out.push_str("top"),
        Formula::Bot => out.push_str("bot"),
        Formula::MUnit => out.push_str("emp"),
        Formula::MBot => out.push_str("mbot"),
        Formula::And(a, b) => {
            // left-assoc: right child printed one level tighter
            print_at(a, 2, out);
            out.push_str(" /\\ ");
            print_at(b, 3, out);
        }
        Formula::Or(a, b) => {
            print_at(a, 1, out);
            out.push_str(" \\/ ");
            print_at(b, 2, out);
        }
        Formula::MOr(a, b) => {
            print_at(a, 1, out);
            out.push_str(" mor ");
            print_at(b, 2, out);
        }
        Formula::Star(a, b) => {
            print_at(a, 3, out);
            out.push_str(" * ");
            print_at(b, 4, out);
        }
        Formula::Seq(a, b) => {
            print_at(a, 3, out);
            out.push_str(" ; ");
            print_at(b, 4, out);
        }
        Formula::Imp(a, b) => {
            // right-assoc
            print_at(a, 1, out);
            out.push_str(" -> ");
            print_at(b, 0, out);
        }
        Formula::Wand(a, b) => {
            print_at(a, 1, out);
            out.push_str(" -* ");
            print_at(b, 0, out);
        }
        Formula::Dnaw(a, b) => {
            print_at(a, 1, out);
            out.push_str(" *- ");
            print_at(b, 0, out);
        }
        Formula::RSeq(a, b) => {
            print_at(a, 1, out);
            out.push_str(" -; ");
            print_at(b, 0, out);
        }
        Formula::LSeq(a, b) => {
            print_at(a, 1, out);
            out.push_str(" ;- ");
            print_at(b, 0, out);
        }
        Formula::RSlash(a, b) => {
            print_at(a, 1, out);
            out.push_str(" rslash ");
            print_at(b, 0, out);
        }
        Formula::MNeg(a) => {
            out.push_str("mnot ");
            print_at(a, 4, out);
        }
        Formula::Not(a) => {
            out.push('!');
            print_at(a, 4, out);
        }
        Formula::Diamond(a) => {
            out.push_str("<>");
            print_at(a, 4, out);
        }
        Formula::BoxM(a) => {
            out.push_str("[]");
            print_at(a, 4, out);
        }
        Formula::Eq(s, t) => {
            print_term(s, out);
            out.push_str(" = ");
            print_term(t, out);
        }
        Formula::PointsTo(s, t) => {
            print_term(s, out);
            out.push_str(" |-> ");
            print_term(t, out);
        }
        Formula::Exists(v, a) => {
            out.push_str("exists ");
            out.push_str(v);
            out.push_str(". ");
            print_at(a, 0, out);
        }
        Formula::Forall(v, a) => {
            out.push_str("forall ");
            out.push_str(v);
            out.push_str(". ");
            print_at(a, 0, out);
        }
    }
    if parens {
        out.push(')');
    }
}

fn print_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Const(n) => out.push_str(&n.to_string()),
        Term::Add(a, b) => {
            out.push('(');
            print_term(a, out);
            out.push_str(" + ");
            print_term(b, out);
            out.push(')');
        }
        Term::Sub(a, b) => {
            out.push('(');
            print_term(a, out);
            out.push_str(" - ");
            print_term(b, out);
            out.push(')');
        }
    }
}

/// Canonical ASCII rendering; `parse_formula(print_formula(f), _)` returns `f`.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    print_at(f, 0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

/// A single-formula turnstile `antecedent |- consequent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Formula,
    pub consequent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Formula, consequent: Formula) -> Sequent {
        Sequent { antecedent, consequent }
    }

    pub fn check_signature(&self, logic: &Logic) -> Result<(), SignatureError> {
        check_signature(&self.antecedent, logic)?;
        check_signature(&self.consequent, logic)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut a = self.antecedent.atoms();
        a.extend(self.consequent.atoms());
        a
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.antecedent, self.consequent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::LogicName::*;

    #[test]
    fn signature_table_matches_grammars() {
        // golden table: connective names admitted per logic
        let probes: Vec<(Formula, Vec<LogicName>)> = vec![
            (atom("p"), LogicName::ALL.to_vec()),
            (Formula::MUnit, vec![Bi, Bbi, Sml, Dmbi, Cbi, BiBi, BiBbi, Ckbi]),
            (Formula::dnaw(atom("p"), atom("q")), vec![Lgl, Ilgl]),
            (Formula::mneg(atom("p")), vec![Dmbi, Cbi]),
            (Formula::MBot, vec![Dmbi, Cbi, BiBi, BiBbi]),
            (Formula::mor(atom("p"), atom("q")), vec![Dmbi, Cbi, BiBi, BiBbi]),
            (Formula::rslash(atom("p"), atom("q")), vec![BiBi, BiBbi]),
            (Formula::seq(atom("p"), atom("q")), vec![Ckbi]),
            (Formula::rseq(atom("p"), atom("q")), vec![Ckbi]),
            (Formula::lseq(atom("p"), atom("q")), vec![Ckbi]),
            (Formula::diamond(atom("p")), vec![Sml]),
            (Formula::boxm(atom("p")), vec![Sml]),
            (Formula::not(atom("p")), LogicName::ALL.to_vec()),
        ];
        for (f, admitted_in) in probes {
            for name in LogicName::ALL {
                let ok = check_signature(&f, &Logic::new(name)).is_ok();
                assert_eq!(
                    ok,
                    admitted_in.contains(&name),
                    "connective {} in {name}",
                    f.connective_name()
                );
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let bi = Logic::new(Bi);
        assert_eq!(
            expand_defined(&Formula::not(atom("p")), &bi),
            Formula::imp(atom("p"), Formula::Bot)
        );
        let dmbi = Logic::new(Dmbi);
        assert_eq!(
            expand_defined(&Formula::mor(atom("p"), atom("q")), &dmbi),
            Formula::mneg(Formula::star(Formula::mneg(atom("p")), Formula::mneg(atom("q"))))
        );
        assert_eq!(expand_defined(&Formula::MBot, &dmbi), Formula::mneg(Formula::MUnit));
        // mbot is primitive in BiBBI
        let bibbi = Logic::new(BiBbi);
        assert_eq!(expand_defined(&Formula::MBot, &bibbi), Formula::MBot);
        // <>_phi psi := !(phi -* !<>psi)
        assert_eq!(
            Formula::diamond_sub(atom("p"), atom("q")),
            Formula::not(Formula::wand(atom("p"), Formula::not(Formula::diamond(atom("q")))))
        );
        let sml = Logic::new(Sml);
        assert_eq!(
            expand_defined(&Formula::boxm(atom("p")), &sml),
            Formula::imp(
                Formula::diamond(Formula::imp(atom("p"), Formula::Bot)),
                Formula::Bot
            )
        );
    }

    #[test]
    fn expansion_idempotent_and_atom_preserving() {
        let dmbi = Logic::new(Dmbi);
        let f = Formula::mor(Formula::not(atom("p")), Formula::MBot);
        let once = expand_defined(&f, &dmbi);
        assert_eq!(once, expand_defined(&once, &dmbi));
        assert_eq!(f.atoms(), once.atoms());
    }
}
