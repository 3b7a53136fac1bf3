//! Finite algebras for the ten logics: lattice and residuation law checking,
//! homomorphic evaluation, sequent validation by interpretation enumeration,
//! and the residuation-property reports.
//!
//! Operations are stored as full tables over a finite carrier. Meets, joins
//! and the bounds are derived from `leq`; `->` may be supplied or derived as
//! the Heyting residual; `*-` is derived as `-*` for the commutative kinds
//! and `mnot` is always derived as `a -* mbot`.

use crate::formula::{Formula, Sequent};
use crate::logic::{Logic, LogicName, ModalClass, SigmaAxiom};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier has {0} elements but `{1}` has size {2}")]
    SizeMismatch(usize, &'static str, usize),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element name `{0}`")]
    UnknownElement(String),
    #[error("`leq` is not a partial order ({0})")]
    NotPartialOrder(&'static str),
    #[error("carrier is not a bounded lattice: {0}")]
    NotLattice(String),
    #[error("no Heyting residual exists for -> at ({0}, {1})")]
    NoImplication(String, String),
    #[error("operation `{0}` is required for kind {1} but missing")]
    MissingOp(&'static str, LogicName),
    #[error("operation `{0}` is not part of kind {1}")]
    ForeignOp(&'static str, LogicName),
    #[error("interpretation does not cover atom `{0}`")]
    UncoveredAtom(String),
    #[error("formula node `{0}` has no interpretation in a {1} algebra")]
    BadNode(&'static str, LogicName),
    #[error("enumeration budget exceeded: {0} interpretations > cap {1}")]
    BudgetExceeded(u128, u64),
}

/// A named law violation with element-name witnesses.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LawViolation {
    pub law: String,
    pub witness: Vec<String>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.law, self.witness.join(", "))
    }
}

pub type BinTable = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub kind: Logic,
    pub elems: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: BinTable,
    pub join: BinTable,
    pub imp: BinTable,
    pub top: usize,
    pub bot: usize,
    pub star: BinTable,
    pub wand: BinTable,
    /// `*-`; equals `wand` for every commutative kind.
    pub dnaw: BinTable,
    pub munit: Option<usize>,
    pub mbot: Option<usize>,
    /// Derived `a -* mbot` for DMBI/CBI.
    pub mneg: Option<Vec<usize>>,
    pub mor: Option<BinTable>,
    pub rslash: Option<BinTable>,
    pub seq: Option<BinTable>,
    pub rseq: Option<BinTable>,
    pub lseq: Option<BinTable>,
    pub diamond: Option<Vec<usize>>,
}

/// Raw ingredients for an algebra; everything derivable is optional.
#[derive(Debug, Clone, Default)]
pub struct AlgebraSpec {
    pub elems: Vec<String>,
    pub leq_pairs: Vec<(usize, usize)>,
    pub imp: Option<BinTable>,
    pub star: Option<BinTable>,
    pub wand: Option<BinTable>,
    pub dnaw: Option<BinTable>,
    pub munit: Option<usize>,
    pub mbot: Option<usize>,
    pub mor: Option<BinTable>,
    pub rslash: Option<BinTable>,
    pub seq: Option<BinTable>,
    pub rseq: Option<BinTable>,
    pub lseq: Option<BinTable>,
    pub diamond: Option<Vec<usize>>,
}

fn check_table(t: &BinTable, n: usize, name: &'static str) -> Result<(), AlgebraError> {
    if t.len() != n {
        return Err(AlgebraError::SizeMismatch(n, name, t.len()));
    }
    for row in t {
        if row.len() != n {
            return Err(AlgebraError::SizeMismatch(n, name, row.len()));
        }
        for &v in row {
            if v >= n {
                return Err(AlgebraError::BadIndex(v));
            }
        }
    }
    Ok(())
}

impl Algebra {
    /// Build and structurally validate an algebra: partial order, lattice
    /// bounds, table sizes, kind-appropriate operations. Residuals that can
    /// be derived are derived here; law checking is `check_algebra`'s job.
    pub fn from_spec(kind: Logic, spec: AlgebraSpec) -> Result<Algebra, AlgebraError> {
        let n = spec.elems.len();
        {
            let mut seen = std::collections::BTreeSet::new();
            for e in &spec.elems {
                if !seen.insert(e.clone()) {
                    return Err(AlgebraError::DuplicateElement(e.clone()));
                }
            }
        }
        // close leq reflexively and transitively; reject cycles afterwards
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(x, y) in &spec.leq_pairs {
            if x >= n || y >= n {
                return Err(AlgebraError::BadIndex(x.max(y)));
            }
            leq[x][y] = true;
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if !leq[x][y] {
                        continue;
                    }
                    for z in 0..n {
                        if leq[y][z] && !leq[x][z] {
                            leq[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(AlgebraError::NotPartialOrder("antisymmetry"));
                }
            }
        }
        // glb/lub: a bound that dominates every other bound
        let glb2 = |x: usize, y: usize| -> Option<usize> {
            (0..n).find(|&m| {
                leq[m][x] && leq[m][y] && (0..n).all(|z| !(leq[z][x] && leq[z][y]) || leq[z][m])
            })
        };
        let lub2 = |x: usize, y: usize| -> Option<usize> {
            (0..n).find(|&m| {
                leq[x][m] && leq[y][m] && (0..n).all(|z| !(leq[x][z] && leq[y][z]) || leq[m][z])
            })
        };
        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                meet[x][y] = glb2(x, y).ok_or_else(|| {
                    AlgebraError::NotLattice(format!(
                        "no meet of {} and {}",
                        spec.elems[x], spec.elems[y]
                    ))
                })?;
                join[x][y] = lub2(x, y).ok_or_else(|| {
                    AlgebraError::NotLattice(format!(
                        "no join of {} and {}",
                        spec.elems[x], spec.elems[y]
                    ))
                })?;
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x][t]))
            .ok_or_else(|| AlgebraError::NotLattice("no top".into()))?;
        let bot = (0..n)
            .find(|&b| (0..n).all(|x| leq[b][x]))
            .ok_or_else(|| AlgebraError::NotLattice("no bottom".into()))?;
        // -> : given or derived as the Heyting residual max{a | a ∧ b ≤ c}
        let imp = match spec.imp {
            Some(t) => {
                check_table(&t, n, "imp")?;
                t
            }
            None => {
                let mut t = vec![vec![0usize; n]; n];
                for b in 0..n {
                    for c in 0..n {
                        let mut cand: Option<usize> = None;
                        for a in 0..n {
                            if leq[meet[a][b]][c] {
                                cand = match cand {
                                    None => Some(a),
                                    Some(m) => Some(join[m][a]),
                                };
                            }
                        }
                        let m = cand.ok_or_else(|| {
                            AlgebraError::NoImplication(
                                spec.elems[b].clone(),
                                spec.elems[c].clone(),
                            )
                        })?;
                        if !leq[meet[m][b]][c] {
                            return Err(AlgebraError::NoImplication(
                                spec.elems[b].clone(),
                                spec.elems[c].clone(),
                            ));
                        }
                        t[b][c] = m;
                    }
                }
                t
            }
        };
        let name = kind.name();
        let star = spec.star.ok_or(AlgebraError::MissingOp("star", name))?;
        check_table(&star, n, "star")?;
        let wand = spec.wand.ok_or(AlgebraError::MissingOp("wand", name))?;
        check_table(&wand, n, "wand")?;
        let dnaw = match spec.dnaw {
            Some(t) => {
                check_table(&t, n, "dnaw")?;
                t
            }
            // commutativity collapses the two implications
            None => wand.clone(),
        };
        let needs = |have: bool, op: &'static str, wanted: bool| -> Result<(), AlgebraError> {
            if wanted && !have {
                Err(AlgebraError::MissingOp(op, name))
            } else if !wanted && have {
                Err(AlgebraError::ForeignOp(op, name))
            } else {
                Ok(())
            }
        };
        needs(spec.munit.is_some(), "munit", name.has_munit())?;
        needs(
            spec.mbot.is_some(),
            "mbot",
            matches!(name, LogicName::Dmbi | LogicName::Cbi | LogicName::BiBi | LogicName::BiBbi),
        )?;
        needs(spec.mor.is_some(), "mor", matches!(name, LogicName::BiBi | LogicName::BiBbi))?;
        needs(spec.rslash.is_some(), "rslash", matches!(name, LogicName::BiBi | LogicName::BiBbi))?;
        needs(spec.seq.is_some(), "seq", name == LogicName::Ckbi)?;
        needs(spec.rseq.is_some(), "rseq", name == LogicName::Ckbi)?;
        needs(spec.lseq.is_some(), "lseq", name == LogicName::Ckbi)?;
        needs(spec.diamond.is_some(), "diamond", name == LogicName::Sml)?;
        if let Some(u) = spec.munit {
            if u >= n {
                return Err(AlgebraError::BadIndex(u));
            }
        }
        if let Some(u) = spec.mbot {
            if u >= n {
                return Err(AlgebraError::BadIndex(u));
            }
        }
        for (t, nm) in [
            (&spec.mor, "mor"),
            (&spec.rslash, "rslash"),
            (&spec.seq, "seq"),
            (&spec.rseq, "rseq"),
            (&spec.lseq, "lseq"),
        ] {
            if let Some(t) = t {
                check_table(t, n, nm)?;
            }
        }
        if let Some(d) = &spec.diamond {
            if d.len() != n {
                return Err(AlgebraError::SizeMismatch(n, "diamond", d.len()));
            }
            for &v in d {
                if v >= n {
                    return Err(AlgebraError::BadIndex(v));
                }
            }
        }
        let mneg = spec.mbot.map(|mb| (0..n).map(|a| wand[a][mb]).collect());
        Ok(Algebra {
            kind,
            elems: spec.elems,
            leq,
            meet,
            join,
            imp,
            top,
            bot,
            star,
            wand,
            dnaw,
            munit: spec.munit,
            mbot: spec.mbot,
            mneg: if matches!(name, LogicName::Dmbi | LogicName::Cbi) { mneg } else { None },
            mor: spec.mor,
            rslash: spec.rslash,
            seq: spec.seq,
            rseq: spec.rseq,
            lseq: spec.lseq,
            diamond: spec.diamond,
        })
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn element_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.elems
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    fn viol(&self, law: &str, witness: &[usize]) -> LawViolation {
        LawViolation {
            law: law.to_string(),
            witness: witness.iter().map(|&i| self.elems[i].clone()).collect(),
        }
    }

    pub fn big_join(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |a, b| self.join[a][b])
    }

    pub fn big_meet(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |a, b| self.meet[a][b])
    }

    /// Join-irreducible elements: x ≠ ⊥ such that x = a ∨ b implies x = a or
    /// x = b. On a finite distributive lattice these are exactly the elements
    /// with a unique lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .filter(|&x| {
                x != self.bot
                    && (0..n).all(|a| {
                        (0..n).all(|b| self.join[a][b] != x || a == x || b == x)
                    })
            })
            .collect()
    }
}

fn residuation_ok(
    a: &Algebra,
    op: &BinTable,
    right: &BinTable,
    swap: bool,
) -> Option<(usize, usize, usize)> {
    let n = a.n();
    for x in 0..n {
        for y in 0..n {
            for c in 0..n {
                let lhs = if swap { a.le(op[y][x], c) } else { a.le(op[x][y], c) };
                if lhs != a.le(x, right[y][c]) {
                    return Some((x, y, c));
                }
            }
        }
    }
    None
}

/// Every lattice, residuation, monoid, and kind-specific law. Empty result
/// means the structure is an algebra of its kind.
pub fn check_algebra(a: &Algebra) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let n = a.n();
    if a.top == a.bot {
        out.push(a.viol("Non-degenerate", &[a.top]));
    }
    // distributivity
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a.meet[x][a.join[y][z]] != a.join[a.meet[x][y]][a.meet[x][z]] {
                    out.push(a.viol("Distributivity", &[x, y, z]));
                }
            }
        }
    }
    // -> is the Heyting residual: a ∧ b ≤ c iff a ≤ b -> c
    for x in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a.le(a.meet[x][b], c) != a.le(x, a.imp[b][c]) {
                    out.push(a.viol("Heyting Residuation", &[x, b, c]));
                }
            }
        }
    }
    if a.kind.is_boolean() {
        for x in 0..n {
            let nx = a.imp[x][a.bot];
            if a.meet[x][nx] != a.bot || a.join[x][nx] != a.top {
                out.push(a.viol("Boolean Complement", &[x]));
            }
        }
    }
    // * residuation: a * b ≤ c iff a ≤ b -* c iff b ≤ a *- c
    if let Some((x, y, c)) = residuation_ok(a, &a.star, &a.wand, false) {
        out.push(a.viol("Wand Residuation", &[x, y, c]));
    }
    if let Some((x, y, c)) = residuation_ok(a, &a.star, &a.dnaw, true) {
        out.push(a.viol("Dnaw Residuation", &[x, y, c]));
    }
    let name = a.kind.name();
    if name.has_munit() {
        // commutative monoid with unit munit
        for x in 0..n {
            for y in 0..n {
                if a.star[x][y] != a.star[y][x] {
                    out.push(a.viol("Star Commutativity", &[x, y]));
                }
                for z in 0..n {
                    if a.star[a.star[x][y]][z] != a.star[x][a.star[y][z]] {
                        out.push(a.viol("Star Associativity", &[x, y, z]));
                    }
                }
            }
        }
        let e = a.munit.expect("validated");
        for x in 0..n {
            if a.star[x][e] != x {
                out.push(a.viol("Star Unit", &[x]));
            }
        }
    }
    match name {
        LogicName::Dmbi | LogicName::Cbi => {
            let mneg = a.mneg.as_ref().expect("validated");
            let mb = a.mbot.expect("validated");
            for x in 0..n {
                if mneg[mneg[x]] != x {
                    out.push(a.viol("MNeg Involution", &[x]));
                }
            }
            let e = a.munit.expect("validated");
            if mneg[e] != mb {
                out.push(a.viol("MNeg Unit", &[e]));
            }
        }
        LogicName::BiBi | LogicName::BiBbi => {
            let mor = a.mor.as_ref().expect("validated");
            let rslash = a.rslash.as_ref().expect("validated");
            for x in 0..n {
                for y in 0..n {
                    if mor[x][y] != mor[y][x] {
                        out.push(a.viol("MOr Commutativity", &[x, y]));
                    }
                }
            }
            // a ≤ b mor c iff a rslash b ≤ c
            for x in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a.le(x, mor[b][c]) != a.le(rslash[x][b], c) {
                            out.push(a.viol("MOr Residuation", &[x, b, c]));
                        }
                    }
                }
            }
            let mb = a.mbot.expect("validated");
            for &row in a.kind.sigma().iter() {
                match row {
                    SigmaAxiom::Associativity => {
                        for x in 0..n {
                            for y in 0..n {
                                for z in 0..n {
                                    if !a.le(mor[x][mor[y][z]], mor[mor[x][y]][z]) {
                                        out.push(a.viol("Sigma Associativity", &[x, y, z]));
                                    }
                                }
                            }
                        }
                    }
                    SigmaAxiom::MBotWeakening => {
                        for x in 0..n {
                            if !a.le(x, mor[x][mb]) {
                                out.push(a.viol("Sigma MBot Weakening", &[x]));
                            }
                        }
                    }
                    SigmaAxiom::MBotContraction => {
                        for x in 0..n {
                            if !a.le(mor[x][mb], x) {
                                out.push(a.viol("Sigma MBot Contraction", &[x]));
                            }
                        }
                    }
                    SigmaAxiom::MOrContraction => {
                        for x in 0..n {
                            if !a.le(mor[x][x], x) {
                                out.push(a.viol("Sigma MOr Contraction", &[x]));
                            }
                        }
                    }
                    SigmaAxiom::WeakDistributivity => {
                        for x in 0..n {
                            for y in 0..n {
                                for z in 0..n {
                                    if !a.le(a.star[x][mor[y][z]], mor[a.star[x][y]][z]) {
                                        out.push(a.viol("Sigma Weak Distributivity", &[x, y, z]));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        LogicName::Ckbi => {
            let seq = a.seq.as_ref().expect("validated");
            let rseq = a.rseq.as_ref().expect("validated");
            let lseq = a.lseq.as_ref().expect("validated");
            let e = a.munit.expect("validated");
            for x in 0..n {
                if seq[e][x] != x {
                    out.push(a.viol("Seq Left Unit", &[x]));
                }
                if seq[x][e] != x {
                    out.push(a.viol("Seq Right Unit", &[x]));
                }
                for y in 0..n {
                    for z in 0..n {
                        if seq[seq[x][y]][z] != seq[x][seq[y][z]] {
                            out.push(a.viol("Seq Associativity", &[x, y, z]));
                        }
                    }
                }
            }
            if let Some((x, y, c)) = residuation_ok(a, seq, rseq, false) {
                out.push(a.viol("RSeq Residuation", &[x, y, c]));
            }
            if let Some((x, y, c)) = residuation_ok(a, seq, lseq, true) {
                out.push(a.viol("LSeq Residuation", &[x, y, c]));
            }
            // Exchange: (a * b) ; (c * d) ≤ (a ; c) * (b ; d)
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for w in 0..n {
                            let lhs = seq[a.star[x][y]][a.star[z][w]];
                            let rhs = a.star[seq[x][z]][seq[y][w]];
                            if !a.le(lhs, rhs) {
                                out.push(a.viol("Exchange", &[x, y, z, w]));
                            }
                        }
                    }
                }
            }
        }
        LogicName::Sml => {
            let dia = a.diamond.as_ref().expect("validated");
            if dia[a.bot] != a.bot {
                out.push(a.viol("Diamond Normality (bot)", &[a.bot]));
            }
            for x in 0..n {
                for y in 0..n {
                    if dia[a.join[x][y]] != a.join[dia[x]][dia[y]] {
                        out.push(a.viol("Diamond Normality (join)", &[x, y]));
                    }
                }
            }
            let boxm = |x: usize| a.imp[dia[a.imp[x][a.bot]]][a.bot];
            match a.kind.modal() {
                ModalClass::None => {}
                ModalClass::S4 | ModalClass::S5 => {
                    for x in 0..n {
                        if !a.le(x, dia[x]) {
                            out.push(a.viol("Diamond T", &[x]));
                        }
                        if !a.le(dia[dia[x]], dia[x]) {
                            out.push(a.viol("Diamond 4", &[x]));
                        }
                    }
                    if a.kind.modal() == ModalClass::S5 {
                        for x in 0..n {
                            if !a.le(dia[boxm(x)], boxm(x)) {
                                out.push(a.viol("Diamond B5", &[x]));
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Interpretation of atoms as carrier elements.
pub type Interpretation = BTreeMap<String, usize>;

/// Homomorphic evaluation of a formula. Defined connectives evaluate through
/// their definitions.
pub fn evaluate(a: &Algebra, i: &Interpretation, f: &Formula) -> Result<usize, AlgebraError> {
    let name = a.kind.name();
    Ok(match f {
        Formula::Atom(p) => {
            *i.get(p).ok_or_else(|| AlgebraError::UncoveredAtom(p.clone()))?
        }
        Formula::Top => a.top,
        Formula::Bot => a.bot,
        Formula::MUnit => a.munit.ok_or(AlgebraError::BadNode("emp", name))?,
        Formula::MBot => match name {
            LogicName::Dmbi | LogicName::Cbi | LogicName::BiBi | LogicName::BiBbi => {
                a.mbot.expect("kind has mbot")
            }
            _ => return Err(AlgebraError::BadNode("mbot", name)),
        },
        Formula::And(x, y) => a.meet[evaluate(a, i, x)?][evaluate(a, i, y)?],
        Formula::Or(x, y) => a.join[evaluate(a, i, x)?][evaluate(a, i, y)?],
        Formula::Imp(x, y) => a.imp[evaluate(a, i, x)?][evaluate(a, i, y)?],
        Formula::Not(x) => a.imp[evaluate(a, i, x)?][a.bot],
        Formula::Star(x, y) => a.star[evaluate(a, i, x)?][evaluate(a, i, y)?],
        Formula::Wand(x, y) => a.wand[evaluate(a, i, x)?][evaluate(a, i, y)?],
        // for commutative kinds dnaw was derived equal to wand
        Formula::Dnaw(x, y) => a.dnaw[evaluate(a, i, x)?][evaluate(a, i, y)?],
        Formula::MNeg(x) => {
            let mneg = a.mneg.as_ref().ok_or(AlgebraError::BadNode("mnot", name))?;
            mneg[evaluate(a, i, x)?]
        }
        Formula::MOr(x, y) => match (&a.mor, &a.mneg) {
            (Some(mor), _) => mor[evaluate(a, i, x)?][evaluate(a, i, y)?],
            (None, Some(mneg)) => {
                let vx = evaluate(a, i, x)?;
                let vy = evaluate(a, i, y)?;
                mneg[a.star[mneg[vx]][mneg[vy]]]
            }
            _ => return Err(AlgebraError::BadNode("mor", name)),
        },
        Formula::RSlash(x, y) => {
            let t = a.rslash.as_ref().ok_or(AlgebraError::BadNode("rslash", name))?;
            t[evaluate(a, i, x)?][evaluate(a, i, y)?]
        }
        Formula::Seq(x, y) => {
            let t = a.seq.as_ref().ok_or(AlgebraError::BadNode(";", name))?;
            t[evaluate(a, i, x)?][evaluate(a, i, y)?]
        }
        Formula::RSeq(x, y) => {
            let t = a.rseq.as_ref().ok_or(AlgebraError::BadNode("-;", name))?;
            t[evaluate(a, i, x)?][evaluate(a, i, y)?]
        }
        Formula::LSeq(x, y) => {
            let t = a.lseq.as_ref().ok_or(AlgebraError::BadNode(";-", name))?;
            t[evaluate(a, i, x)?][evaluate(a, i, y)?]
        }
        Formula::Diamond(x) => {
            let d = a.diamond.as_ref().ok_or(AlgebraError::BadNode("<>", name))?;
            d[evaluate(a, i, x)?]
        }
        Formula::BoxM(x) => {
            let d = a.diamond.as_ref().ok_or(AlgebraError::BadNode("[]", name))?;
            let v = evaluate(a, i, x)?;
            a.imp[d[a.imp[v][a.bot]]][a.bot]
        }
        Formula::Eq(..) | Formula::PointsTo(..) | Formula::Exists(..) | Formula::Forall(..) => {
            return Err(AlgebraError::BadNode(f.connective_name(), name))
        }
    })
}

/// True iff every interpretation of the sequent's atoms gives
/// ⟦antecedent⟧ ≤ ⟦consequent⟧. Errors out if the interpretation space
/// exceeds `cap`.
pub fn validates_sequent(a: &Algebra, s: &Sequent, cap: u64) -> Result<bool, AlgebraError> {
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    let n = a.n() as u128;
    let space = n.checked_pow(atoms.len() as u32).unwrap_or(u128::MAX);
    if space > cap as u128 {
        return Err(AlgebraError::BudgetExceeded(space, cap));
    }
    let mut idx = vec![0usize; atoms.len()];
    loop {
        let interp: Interpretation =
            atoms.iter().cloned().zip(idx.iter().copied()).collect();
        let va = evaluate(a, &interp, &s.antecedent)?;
        let vc = evaluate(a, &interp, &s.consequent)?;
        if !a.le(va, vc) {
            return Ok(false);
        }
        // next tuple
        let mut k = 0;
        loop {
            if k == atoms.len() {
                return Ok(true);
            }
            idx[k] += 1;
            if idx[k] < a.n() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// One line of a residuation/property report.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PropertyLine {
    pub name: String,
    pub holds: bool,
    pub witness: Vec<String>,
}

/// Checks the consequences of residuation: monotonicity, join/meet
/// preservation (over all subsets for carriers ≤ 8), the bottom/top
/// absorption laws, and their duals for `mor`/`rslash` and the analogues
/// for `;` on CKBI algebras.
pub fn residuation_report(a: &Algebra) -> Vec<PropertyLine> {
    let mut out = Vec::new();
    let n = a.n();
    let mut line = |name: &str, w: Option<Vec<usize>>| {
        out.push(PropertyLine {
            name: name.to_string(),
            holds: w.is_none(),
            witness: w
                .map(|ws| ws.iter().map(|&i| a.elems[i].clone()).collect())
                .unwrap_or_default(),
        });
    };

    let mono = |op: &BinTable| -> Option<Vec<usize>> {
        for x in 0..n {
            for xp in 0..n {
                if !a.le(x, xp) {
                    continue;
                }
                for y in 0..n {
                    for yp in 0..n {
                        if a.le(y, yp) && !a.le(op[x][y], op[xp][yp]) {
                            return Some(vec![x, xp, y, yp]);
                        }
                    }
                }
            }
        }
        None
    };
    line("star monotone", mono(&a.star));
    line(
        "bot * b = a * bot = bot",
        (0..n)
            .find_map(|x| {
                (a.star[a.bot][x] != a.bot || a.star[x][a.bot] != a.bot).then(|| vec![x])
            }),
    );
    line(
        "a -* top = a *- top = bot -* a = bot *- a = top",
        (0..n).find_map(|x| {
            (a.wand[x][a.top] != a.top
                || a.dnaw[x][a.top] != a.top
                || a.wand[a.bot][x] != a.top
                || a.dnaw[a.bot][x] != a.top)
                .then(|| vec![x])
        }),
    );
    if n <= 8 {
        // subset laws: (⋁X)*(⋁Y) = ⋁ x*y; (⋁X) -* z = ⋀ (x -* z); z -* ⋀X = ⋀ (z -* x)
        let subsets: Vec<Vec<usize>> = (0..(1u32 << n))
            .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
            .collect();
        let mut w_joinstar = None;
        let mut w_wandleft = None;
        let mut w_wandright = None;
        for xs in &subsets {
            let jx = a.big_join(xs.iter().copied());
            for ys in &subsets {
                let jy = a.big_join(ys.iter().copied());
                let lhs = a.star[jx][jy];
                let rhs = a.big_join(
                    xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y)))
                        .map(|(x, y)| a.star[x][y]),
                );
                if lhs != rhs && w_joinstar.is_none() {
                    w_joinstar = Some(vec![jx, jy]);
                }
            }
            for z in 0..n {
                let lhs = a.wand[jx][z];
                let rhs = a.big_meet(xs.iter().map(|&x| a.wand[x][z]));
                if lhs != rhs && w_wandleft.is_none() {
                    w_wandleft = Some(vec![jx, z]);
                }
                let mx = a.big_meet(xs.iter().copied());
                let lhs2 = a.wand[z][mx];
                let rhs2 = a.big_meet(xs.iter().map(|&x| a.wand[z][x]));
                if lhs2 != rhs2 && w_wandright.is_none() {
                    w_wandright = Some(vec![z, mx]);
                }
            }
        }
        line("(join X) * (join Y) = join of pairwise *", w_joinstar);
        line("(join X) -* z = meet of (x -* z)", w_wandleft);
        line("z -* (meet X) = meet of (z -* x)", w_wandright);
    }
    if let (Some(mor), Some(rslash)) = (&a.mor, &a.rslash) {
        line("mor monotone", mono(mor));
        line(
            "top mor b = a mor top = top",
            (0..n).find_map(|x| {
                (mor[a.top][x] != a.top || mor[x][a.top] != a.top).then(|| vec![x])
            }),
        );
        line(
            "a rslash top = bot rslash a = bot",
            (0..n).find_map(|x| {
                (rslash[x][a.top] != a.bot || rslash[a.bot][x] != a.bot).then(|| vec![x])
            }),
        );
        if n <= 8 {
            let subsets: Vec<Vec<usize>> = (0..(1u32 << n))
                .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
                .collect();
            let mut w_meetmor = None;
            let mut w_rsleft = None;
            let mut w_rsright = None;
            for xs in &subsets {
                let mx = a.big_meet(xs.iter().copied());
                for ys in &subsets {
                    let my = a.big_meet(ys.iter().copied());
                    let lhs = mor[mx][my];
                    let rhs = a.big_meet(
                        xs.iter()
                            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
                            .map(|(x, y)| mor[x][y]),
                    );
                    if lhs != rhs && w_meetmor.is_none() {
                        w_meetmor = Some(vec![mx, my]);
                    }
                }
                for z in 0..n {
                    let lhs = rslash[a.big_meet(xs.iter().copied())][z];
                    let rhs = a.big_join(xs.iter().map(|&x| rslash[x][z]));
                    if lhs != rhs && w_rsleft.is_none() {
                        w_rsleft = Some(vec![mx, z]);
                    }
                    let jx = a.big_join(xs.iter().copied());
                    let lhs2 = rslash[z][jx];
                    let rhs2 = a.big_join(xs.iter().map(|&x| rslash[z][x]));
                    if lhs2 != rhs2 && w_rsright.is_none() {
                        w_rsright = Some(vec![z, jx]);
                    }
                }
            }
            line("(meet X) mor (meet Y) = meet of pairwise mor", w_meetmor);
            line("(meet X) rslash z = join of (x rslash z)", w_rsleft);
            line("z rslash (join X) = join of (z rslash x)", w_rsright);
        }
    }
    if let Some(seq) = &a.seq {
        line("seq monotone", mono(seq));
        line(
            "bot ; b = a ; bot = bot",
            (0..n)
                .find_map(|x| (seq[a.bot][x] != a.bot || seq[x][a.bot] != a.bot).then(|| vec![x])),
        );
    }
    out
}

/// ASL-style Frame and Concurrency rules read as inequalities over a CKBI
/// algebra: p;c ≤ q implies (p*r);c ≤ q*r, and pairwise concurrency.
pub fn asl_rules_report(a: &Algebra) -> Vec<PropertyLine> {
    let seq = a.seq.as_ref().expect("asl rules need a CKBI algebra");
    let n = a.n();
    let mut out = Vec::new();
    let mut frame_witness = None;
    'frame: for p in 0..n {
        for c in 0..n {
            for q in 0..n {
                if !a.le(seq[p][c], q) {
                    continue;
                }
                for r in 0..n {
                    if !a.le(seq[a.star[p][r]][c], a.star[q][r]) {
                        frame_witness = Some(vec![p, c, q, r]);
                        break 'frame;
                    }
                }
            }
        }
    }
    out.push(PropertyLine {
        name: "Frame rule".into(),
        holds: frame_witness.is_none(),
        witness: frame_witness
            .map(|w| w.iter().map(|&i| a.elems[i].clone()).collect())
            .unwrap_or_default(),
    });
    let mut conc_witness = None;
    'conc: for p1 in 0..n {
        for c1 in 0..n {
            for q1 in 0..n {
                if !a.le(seq[p1][c1], q1) {
                    continue;
                }
                for p2 in 0..n {
                    for c2 in 0..n {
                        for q2 in 0..n {
                            if !a.le(seq[p2][c2], q2) {
                                continue;
                            }
                            if !a.le(
                                seq[a.star[p1][p2]][a.star[c1][c2]],
                                a.star[q1][q2],
                            ) {
                                conc_witness = Some(vec![p1, c1, q1, p2, c2, q2]);
                                break 'conc;
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(PropertyLine {
        name: "Concurrency rule".into(),
        holds: conc_witness.is_none(),
        witness: conc_witness
            .map(|w| w.iter().map(|&i| a.elems[i].clone()).collect())
            .unwrap_or_default(),
    });
    out
}

/// The two-element Boolean algebra as a BBI algebra with * = ∧.
pub fn two_element_bbi() -> Algebra {
    Algebra::from_spec(
        Logic::new(LogicName::Bbi),
        AlgebraSpec {
            elems: vec!["0".into(), "1".into()],
            leq_pairs: vec![(0, 1)],
            star: Some(vec![vec![0, 0], vec![0, 1]]),
            wand: Some(vec![vec![1, 1], vec![0, 1]]),
            munit: Some(1),
            ..Default::default()
        },
    )
    .expect("structurally valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::atom;
    use crate::parser::parse_sequent;

    #[test]
    fn two_element_meet_monoid_is_bbi_algebra() {
        let a = two_element_bbi();
        assert!(check_algebra(&a).is_empty());
    }

    #[test]
    fn wrong_unit_reports_unit_law() {
        let mut spec = AlgebraSpec {
            elems: vec!["0".into(), "1".into()],
            leq_pairs: vec![(0, 1)],
            star: Some(vec![vec![0, 0], vec![0, 1]]),
            wand: Some(vec![vec![1, 1], vec![0, 1]]),
            munit: Some(0),
            ..Default::default()
        };
        spec.munit = Some(0);
        let a = Algebra::from_spec(Logic::new(LogicName::Bbi), spec).unwrap();
        let viols = check_algebra(&a);
        assert!(viols.iter().any(|v| v.law == "Star Unit" && v.witness == vec!["1"]));
    }

    #[test]
    fn evaluate_examples() {
        let a = two_element_bbi();
        let mut i = Interpretation::new();
        i.insert("p".into(), 1);
        assert_eq!(
            evaluate(&a, &i, &Formula::and(atom("p"), Formula::Top)).unwrap(),
            1
        );
        // emp * p = p (unit law), for both values of p
        for v in 0..2 {
            i.insert("p".into(), v);
            assert_eq!(
                evaluate(&a, &i, &Formula::star(Formula::MUnit, atom("p"))).unwrap(),
                v
            );
        }
    }

    #[test]
    fn validates_trivial_sequent() {
        let a = two_element_bbi();
        let s = parse_sequent("p |- p", &Logic::new(LogicName::Bbi)).unwrap();
        assert!(validates_sequent(&a, &s, 1 << 20).unwrap());
        let s2 = parse_sequent("p /\\ q |- p", &Logic::new(LogicName::Bbi)).unwrap();
        assert!(validates_sequent(&a, &s2, 1 << 20).unwrap());
        let s3 = parse_sequent("p |- q", &Logic::new(LogicName::Bbi)).unwrap();
        assert!(!validates_sequent(&a, &s3, 1 << 20).unwrap());
    }

    #[test]
    fn residuation_report_on_two_element() {
        let a = two_element_bbi();
        let rep = residuation_report(&a);
        assert!(rep.iter().all(|l| l.holds), "{rep:?}");
    }

    #[test]
    fn join_irreducibles_of_chain() {
        let a = Algebra::from_spec(
            Logic::new(LogicName::Bi),
            AlgebraSpec {
                elems: vec!["0".into(), "m".into(), "1".into()],
                leq_pairs: vec![(0, 1), (1, 2)],
                star: Some(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]),
                wand: Some(vec![vec![2, 2, 2], vec![0, 2, 2], vec![0, 1, 2]]),
                munit: Some(2),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(check_algebra(&a).is_empty(), "{:?}", check_algebra(&a));
        assert_eq!(a.join_irreducibles(), vec![1, 2]);
    }
}
