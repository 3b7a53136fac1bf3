//! Hilbert-system proof objects and a rule-by-rule checker.
//!
//! Rules are schemas over the metavariables `phi`, `psi`, `eta`, `xi`,
//! `chi`, `psi1`, `psi2`. A proof step supplies the rule, the indices of
//! its premises among earlier steps, and an explicit substitution; no
//! unification is attempted. Rules with an `i = 1 or 2` side condition and
//! the bidirectional axioms carry several variants, and a step is accepted
//! when any variant matches exactly.
//!
//! Numbering follows the source systems, including the gap: there are no
//! rules 32 or 33.

use crate::formula::{Formula, Sequent};
use crate::logic::{Logic, LogicName, ModalClass, SigmaAxiom};
use crate::parser::parse_formula_any;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// Identifier of a Hilbert rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// R0..R31, R34, R35 (32 and 33 are deliberately absent).
    R(u8),
    Sigma(SigmaAxiom),
    SmlMono,
    SmlDist,
    SmlBot,
    SmlT,
    Sml4,
    SmlB5,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::R(k) => write!(f, "R{k}"),
            RuleId::Sigma(s) => write!(f, "Sigma-{}", s.as_str()),
            RuleId::SmlMono => write!(f, "SML-Mono"),
            RuleId::SmlDist => write!(f, "SML-Dist"),
            RuleId::SmlBot => write!(f, "SML-Bot"),
            RuleId::SmlT => write!(f, "SML-T"),
            RuleId::Sml4 => write!(f, "SML-4"),
            RuleId::SmlB5 => write!(f, "SML-B5"),
        }
    }
}

impl RuleId {
    pub fn parse(s: &str) -> Option<RuleId> {
        if let Some(num) = s.strip_prefix('R') {
            let k: u8 = num.parse().ok()?;
            if k <= 31 || k == 34 || k == 35 {
                return Some(RuleId::R(k));
            }
            return None;
        }
        if let Some(row) = s.strip_prefix("Sigma-") {
            return SigmaAxiom::parse(row).map(RuleId::Sigma);
        }
        match s {
            "SML-Mono" => Some(RuleId::SmlMono),
            "SML-Dist" => Some(RuleId::SmlDist),
            "SML-Bot" => Some(RuleId::SmlBot),
            "SML-T" => Some(RuleId::SmlT),
            "SML-4" => Some(RuleId::Sml4),
            "SML-B5" => Some(RuleId::SmlB5),
            _ => None,
        }
    }
}

/// One way to read a rule: premise sequents and a conclusion, all over
/// metavariables.
#[derive(Debug, Clone)]
pub struct RuleVariant {
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

/// A rule schema: display text plus its variants.
#[derive(Debug, Clone)]
pub struct RuleSchema {
    pub id: RuleId,
    pub variants: Vec<RuleVariant>,
}

impl RuleSchema {
    pub fn premise_count(&self) -> usize {
        self.variants[0].premises.len()
    }

    /// Human-readable schema text, variants joined by `|`.
    pub fn text(&self) -> String {
        self.variants
            .iter()
            .map(|v| {
                if v.premises.is_empty() {
                    format!("=> {}", v.conclusion)
                } else {
                    let ps: Vec<String> = v.premises.iter().map(|s| s.to_string()).collect();
                    format!("{} => {}", ps.join(" ; "), v.conclusion)
                }
            })
            .collect::<Vec<_>>()
            .join("  |  ")
    }
}

fn seq(a: &str, c: &str) -> Sequent {
    Sequent::new(
        parse_formula_any(a).expect("schema antecedent parses"),
        parse_formula_any(c).expect("schema consequent parses"),
    )
}

fn axiom(id: RuleId, a: &str, c: &str) -> RuleSchema {
    RuleSchema { id, variants: vec![RuleVariant { premises: vec![], conclusion: seq(a, c) }] }
}

fn axiom2(id: RuleId, a: &str, c: &str) -> RuleSchema {
    // bidirectional axiom: either direction may be concluded
    RuleSchema {
        id,
        variants: vec![
            RuleVariant { premises: vec![], conclusion: seq(a, c) },
            RuleVariant { premises: vec![], conclusion: seq(c, a) },
        ],
    }
}

fn rule(id: RuleId, premises: &[(&str, &str)], a: &str, c: &str) -> RuleSchema {
    RuleSchema {
        id,
        variants: vec![RuleVariant {
            premises: premises.iter().map(|(x, y)| seq(x, y)).collect(),
            conclusion: seq(a, c),
        }],
    }
}

fn schema_table() -> &'static BTreeMap<RuleId, RuleSchema> {
    static TABLE: OnceLock<BTreeMap<RuleId, RuleSchema>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = BTreeMap::new();
        let mut add = |s: RuleSchema| {
            t.insert(s.id, s);
        };
        add(axiom(RuleId::R(0), "!!phi", "phi"));
        add(axiom(RuleId::R(1), "phi", "phi"));
        add(axiom(RuleId::R(2), "phi", "top"));
        add(axiom(RuleId::R(3), "bot", "phi"));
        add(rule(RuleId::R(4), &[("eta", "phi"), ("eta", "psi")], "eta", "phi /\\ psi"));
        add(RuleSchema {
            id: RuleId::R(5),
            variants: vec![
                RuleVariant {
                    premises: vec![seq("phi", "psi1 /\\ psi2")],
                    conclusion: seq("phi", "psi1"),
                },
                RuleVariant {
                    premises: vec![seq("phi", "psi1 /\\ psi2")],
                    conclusion: seq("phi", "psi2"),
                },
            ],
        });
        add(rule(RuleId::R(6), &[("phi", "psi")], "eta /\\ phi", "psi"));
        add(rule(RuleId::R(7), &[("eta", "psi"), ("phi", "psi")], "eta \\/ phi", "psi"));
        add(RuleSchema {
            id: RuleId::R(8),
            variants: vec![
                RuleVariant {
                    premises: vec![seq("phi", "psi1")],
                    conclusion: seq("phi", "psi1 \\/ psi2"),
                },
                RuleVariant {
                    premises: vec![seq("phi", "psi2")],
                    conclusion: seq("phi", "psi1 \\/ psi2"),
                },
            ],
        });
        add(rule(RuleId::R(9), &[("eta", "phi -> psi"), ("eta", "phi")], "eta", "psi"));
        add(rule(RuleId::R(10), &[("eta /\\ phi", "psi")], "eta", "phi -> psi"));
        add(rule(RuleId::R(11), &[("xi", "phi"), ("eta", "psi")], "xi * eta", "phi * psi"));
        add(rule(RuleId::R(12), &[("eta * phi", "psi")], "eta", "phi -* psi"));
        add(rule(RuleId::R(13), &[("xi", "phi -* psi"), ("eta", "phi")], "xi * eta", "psi"));
        add(rule(RuleId::R(14), &[("eta * phi", "psi")], "phi", "eta *- psi"));
        add(rule(RuleId::R(15), &[("xi", "phi *- psi"), ("eta", "phi")], "eta * xi", "psi"));
        add(axiom(RuleId::R(16), "(phi * psi) * xi", "phi * (psi * xi)"));
        add(axiom(RuleId::R(17), "phi * psi", "psi * phi"));
        add(axiom2(RuleId::R(18), "phi * emp", "phi"));
        add(axiom2(RuleId::R(19), "mnot mnot phi", "phi"));
        add(axiom2(RuleId::R(20), "mnot phi", "phi -* mbot"));
        add(rule(RuleId::R(21), &[("eta", "phi mor psi")], "eta rslash phi", "psi"));
        add(rule(RuleId::R(22), &[("eta rslash phi", "psi")], "eta", "phi mor psi"));
        add(rule(RuleId::R(23), &[("xi", "phi"), ("eta", "psi")], "xi mor eta", "phi mor psi"));
        add(axiom(RuleId::R(24), "phi mor psi", "psi mor phi"));
        add(axiom(
            RuleId::Sigma(SigmaAxiom::Associativity),
            "phi mor (psi mor chi)",
            "(phi mor psi) mor chi",
        ));
        add(axiom(RuleId::Sigma(SigmaAxiom::MBotWeakening), "phi", "phi mor mbot"));
        add(axiom(RuleId::Sigma(SigmaAxiom::MBotContraction), "phi mor mbot", "phi"));
        add(axiom(RuleId::Sigma(SigmaAxiom::MOrContraction), "phi mor phi", "phi"));
        add(axiom(
            RuleId::Sigma(SigmaAxiom::WeakDistributivity),
            "phi * (psi mor chi)",
            "(phi * psi) mor chi",
        ));
        add(rule(RuleId::R(25), &[("xi", "phi"), ("eta", "psi")], "xi ; eta", "phi ; psi"));
        add(rule(RuleId::R(26), &[("eta ; phi", "psi")], "eta", "phi -; psi"));
        add(rule(RuleId::R(27), &[("xi", "phi -; psi"), ("eta", "phi")], "xi ; eta", "psi"));
        add(rule(RuleId::R(28), &[("eta ; phi", "psi")], "phi", "eta ;- psi"));
        add(rule(RuleId::R(29), &[("xi", "phi ;- psi"), ("eta", "phi")], "eta ; xi", "psi"));
        add(axiom2(RuleId::R(30), "emp ; phi", "phi"));
        add(axiom2(RuleId::R(31), "phi ; emp", "phi"));
        add(axiom2(RuleId::R(34), "phi ; (psi ; chi)", "(phi ; psi) ; chi"));
        add(axiom(
            RuleId::R(35),
            "(phi * psi) ; (chi * xi)",
            "(phi ; chi) * (psi ; xi)",
        ));
        add(rule(RuleId::SmlMono, &[("phi", "psi")], "<>phi", "<>psi"));
        add(axiom2(RuleId::SmlDist, "<>(phi \\/ psi)", "<>phi \\/ <>psi"));
        add(axiom(RuleId::SmlBot, "<>bot", "bot"));
        add(axiom(RuleId::SmlT, "phi", "<>phi"));
        add(axiom(RuleId::Sml4, "<><>phi", "<>phi"));
        add(axiom(RuleId::SmlB5, "<>[]phi", "[]phi"));
        t
    })
}

pub fn schema(id: RuleId) -> &'static RuleSchema {
    schema_table().get(&id).expect("every RuleId has a schema")
}

/// The rule set of a logic, in display order.
pub fn list_rules(logic: &Logic) -> Vec<&'static RuleSchema> {
    let mut ids: Vec<RuleId> = Vec::new();
    let name = logic.name();
    let base_start = if name.is_boolean() { 0 } else { 1 };
    for k in base_start..=15u8 {
        ids.push(RuleId::R(k));
    }
    if name.has_munit() {
        for k in 16..=18u8 {
            ids.push(RuleId::R(k));
        }
    }
    match name {
        LogicName::Dmbi | LogicName::Cbi => {
            ids.push(RuleId::R(19));
            ids.push(RuleId::R(20));
        }
        LogicName::BiBi | LogicName::BiBbi => {
            for k in 21..=24u8 {
                ids.push(RuleId::R(k));
            }
            for &row in logic.sigma().iter() {
                ids.push(RuleId::Sigma(row));
            }
        }
        LogicName::Ckbi => {
            for k in 25..=31u8 {
                ids.push(RuleId::R(k));
            }
            ids.push(RuleId::R(34));
            ids.push(RuleId::R(35));
        }
        LogicName::Sml => {
            ids.push(RuleId::SmlMono);
            ids.push(RuleId::SmlDist);
            ids.push(RuleId::SmlBot);
            match logic.modal() {
                ModalClass::None => {}
                ModalClass::S4 => {
                    ids.push(RuleId::SmlT);
                    ids.push(RuleId::Sml4);
                }
                ModalClass::S5 => {
                    ids.push(RuleId::SmlT);
                    ids.push(RuleId::Sml4);
                    ids.push(RuleId::SmlB5);
                }
            }
        }
        _ => {}
    }
    ids.into_iter().map(schema).collect()
}

/// Substitution of formulas for schema metavariables.
pub type Substitution = BTreeMap<String, Formula>;

/// Apply a substitution to a schema formula (metavariables are atoms).
pub fn apply_subst(f: &Formula, subst: &Substitution) -> Formula {
    match f {
        Formula::Atom(p) => subst.get(p).cloned().unwrap_or_else(|| f.clone()),
        Formula::And(a, b) => Formula::and(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Or(a, b) => Formula::or(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Imp(a, b) => Formula::imp(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Star(a, b) => Formula::star(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Wand(a, b) => Formula::wand(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Dnaw(a, b) => Formula::dnaw(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::MNeg(a) => Formula::mneg(apply_subst(a, subst)),
        Formula::MOr(a, b) => Formula::mor(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::RSlash(a, b) => Formula::rslash(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Seq(a, b) => Formula::seq(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::RSeq(a, b) => Formula::rseq(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::LSeq(a, b) => Formula::lseq(apply_subst(a, subst), apply_subst(b, subst)),
        Formula::Diamond(a) => Formula::diamond(apply_subst(a, subst)),
        Formula::BoxM(a) => Formula::boxm(apply_subst(a, subst)),
        Formula::Not(a) => Formula::not(apply_subst(a, subst)),
        _ => f.clone(),
    }
}

pub fn apply_subst_sequent(s: &Sequent, subst: &Substitution) -> Sequent {
    Sequent::new(apply_subst(&s.antecedent, subst), apply_subst(&s.consequent, subst))
}

/// One step of a proof.
#[derive(Debug, Clone)]
pub struct ProofStep {
    pub sequent: Sequent,
    pub rule: RuleId,
    pub premises: Vec<usize>,
    pub subst: Substitution,
}

/// An explicit Hilbert proof: an ordered list of justified steps.
#[derive(Debug, Clone, Default)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

/// Checker outcome: accepted, or the first failing step with a reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { step: usize, reason: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "accepted"),
            Verdict::Rejected { step, reason } => write!(f, "rejected at step {step}: {reason}"),
        }
    }
}

/// Check every step of a proof against the rule set of `logic`.
pub fn check_proof(p: &Proof, logic: &Logic) -> Verdict {
    let rules = list_rules(logic);
    for (i, step) in p.steps.iter().enumerate() {
        if let Err(e) = step.sequent.check_signature(logic) {
            return Verdict::Rejected { step: i, reason: format!("signature violation: {e}") };
        }
        let Some(schema) = rules.iter().find(|s| s.id == step.rule) else {
            return Verdict::Rejected {
                step: i,
                reason: format!("rule {} is not part of {}", step.rule, logic),
            };
        };
        for &j in &step.premises {
            if j >= i {
                return Verdict::Rejected {
                    step: i,
                    reason: format!("premise index {j} does not refer to an earlier step"),
                };
            }
        }
        if step.premises.len() != schema.premise_count() {
            return Verdict::Rejected {
                step: i,
                reason: format!(
                    "rule {} takes {} premise(s), got {}",
                    step.rule,
                    schema.premise_count(),
                    step.premises.len()
                ),
            };
        }
        let matched = schema.variants.iter().any(|v| {
            let conc = apply_subst_sequent(&v.conclusion, &step.subst);
            if conc != step.sequent {
                return false;
            }
            v.premises.iter().zip(&step.premises).all(|(pschema, &j)| {
                apply_subst_sequent(pschema, &step.subst) == p.steps[j].sequent
            })
        });
        if !matched {
            return Verdict::Rejected {
                step: i,
                reason: format!(
                    "instantiation mismatch: the substitution does not turn {} into this step",
                    step.rule
                ),
            };
        }
    }
    Verdict::Accepted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::atom;
    use crate::parser::parse_formula;

    fn subst(pairs: &[(&str, &str)], logic: &Logic) -> Substitution {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse_formula(v, logic).unwrap()))
            .collect()
    }

    #[test]
    fn identity_step_in_ilgl() {
        let ilgl = Logic::new(LogicName::Ilgl);
        let p = Proof {
            steps: vec![ProofStep {
                sequent: Sequent::new(atom("p"), atom("p")),
                rule: RuleId::R(1),
                premises: vec![],
                subst: subst(&[("phi", "p")], &ilgl),
            }],
        };
        assert_eq!(check_proof(&p, &ilgl), Verdict::Accepted);
    }

    #[test]
    fn commutativity_axiom_in_bbi() {
        let bbi = Logic::new(LogicName::Bbi);
        let p = Proof {
            steps: vec![ProofStep {
                sequent: crate::parser::parse_sequent("p * q |- q * p", &bbi).unwrap(),
                rule: RuleId::R(17),
                premises: vec![],
                subst: subst(&[("phi", "p"), ("psi", "q")], &bbi),
            }],
        };
        assert_eq!(check_proof(&p, &bbi), Verdict::Accepted);
    }

    #[test]
    fn bad_instantiation_is_rejected() {
        let bbi = Logic::new(LogicName::Bbi);
        let p = Proof {
            steps: vec![ProofStep {
                sequent: crate::parser::parse_sequent("p |- p * p", &bbi).unwrap(),
                rule: RuleId::R(17),
                premises: vec![],
                subst: subst(&[("phi", "p"), ("psi", "p")], &bbi),
            }],
        };
        match check_proof(&p, &bbi) {
            Verdict::Rejected { step: 0, reason } => {
                assert!(reason.contains("instantiation mismatch"), "{reason}");
            }
            v => panic!("expected rejection, got {v:?}"),
        }
    }

    #[test]
    fn rule_zero_only_in_boolean_logics() {
        let bi = Logic::new(LogicName::Bi);
        let p = Proof {
            steps: vec![ProofStep {
                sequent: crate::parser::parse_sequent("!!p |- p", &bi).unwrap(),
                rule: RuleId::R(0),
                premises: vec![],
                subst: subst(&[("phi", "p")], &bi),
            }],
        };
        match check_proof(&p, &bi) {
            Verdict::Rejected { reason, .. } => assert!(reason.contains("not part of BI")),
            v => panic!("expected rejection, got {v:?}"),
        }
    }

    #[test]
    fn modus_ponens_with_premises() {
        let bbi = Logic::new(LogicName::Bbi);
        let s = |t: &str| crate::parser::parse_sequent(t, &bbi).unwrap();
        let p = Proof {
            steps: vec![
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- p -> q"),
                    rule: RuleId::R(5),
                    premises: vec![2],
                    subst: Substitution::new(),
                },
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- p"),
                    rule: RuleId::R(5),
                    premises: vec![2],
                    subst: Substitution::new(),
                },
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- p /\\ (p -> q)"),
                    rule: RuleId::R(1),
                    premises: vec![],
                    subst: subst(&[("phi", "p /\\ (p -> q)")], &bbi),
                },
            ],
        };
        // steps 0 and 1 reference step 2 which comes later: rejected
        match check_proof(&p, &bbi) {
            Verdict::Rejected { step: 0, reason } => {
                assert!(reason.contains("earlier step"), "{reason}");
            }
            v => panic!("{v:?}"),
        }
        // reorder correctly and give real substitutions
        let p2 = Proof {
            steps: vec![
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- p /\\ (p -> q)"),
                    rule: RuleId::R(1),
                    premises: vec![],
                    subst: subst(&[("phi", "p /\\ (p -> q)")], &bbi),
                },
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- p"),
                    rule: RuleId::R(5),
                    premises: vec![0],
                    subst: subst(&[("phi", "p /\\ (p -> q)"), ("psi1", "p"), ("psi2", "p -> q")], &bbi),
                },
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- p -> q"),
                    rule: RuleId::R(5),
                    premises: vec![0],
                    subst: subst(&[("phi", "p /\\ (p -> q)"), ("psi1", "p"), ("psi2", "p -> q")], &bbi),
                },
                ProofStep {
                    sequent: s("p /\\ (p -> q) |- q"),
                    rule: RuleId::R(9),
                    premises: vec![2, 1],
                    subst: subst(&[("eta", "p /\\ (p -> q)"), ("phi", "p"), ("psi", "q")], &bbi),
                },
            ],
        };
        assert_eq!(check_proof(&p2, &bbi), Verdict::Accepted);
    }

    #[test]
    fn rule_lists_match_systems() {
        let ids = |l: LogicName| -> Vec<String> {
            list_rules(&Logic::new(l)).iter().map(|s| s.id.to_string()).collect()
        };
        assert_eq!(ids(LogicName::Bbi).first().map(String::as_str), Some("R0"));
        assert_eq!(ids(LogicName::Bi).first().map(String::as_str), Some("R1"));
        assert_eq!(ids(LogicName::Bbi).len(), 19); // R0..R18
        assert_eq!(ids(LogicName::Bi).len(), 18); // R1..R18
        assert_eq!(ids(LogicName::Lgl).len(), 16); // R0..R15
        assert_eq!(ids(LogicName::Ilgl).len(), 15); // R1..R15
        assert!(ids(LogicName::Ckbi).contains(&"R35".to_string()));
        assert!(!ids(LogicName::Ckbi).contains(&"R32".to_string()));
        assert!(!ids(LogicName::Ckbi).contains(&"R33".to_string()));
        assert_eq!(ids(LogicName::Ckbi).len(), 19 + 9); // BBI rules + 25..31,34,35
        let sml_s5 = Logic::with_modal(LogicName::Sml, ModalClass::S5).unwrap();
        let sml_ids: Vec<String> =
            list_rules(&sml_s5).iter().map(|s| s.id.to_string()).collect();
        assert!(sml_ids.contains(&"SML-B5".to_string()));
        assert_eq!(sml_ids.len(), 19 + 6);
    }
}
