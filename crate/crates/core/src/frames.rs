//! Finite Kripke frames for all ten logics: structural validation, axiom
//! checking, satisfaction, entailment-in-model, persistence, the up/down
//! closure construction, and morphism checking.
//!
//! A [`Frame`] stores states by index with a preorder `leq` (identity for the
//! Boolean-based kinds), a nondeterministic composition `comp`, the unit set,
//! and whichever extra components the kind calls for (`minus`, `nabla`/`U`,
//! `seq`, `R`). Satisfaction is computed bottom-up as state sets so that one
//! evaluator covers every kind and both the strong and the UDMF reading of
//! the multiplicatives.

use crate::formula::{Formula, Sequent};
use crate::logic::{Logic, LogicName, ModalClass, SigmaAxiom};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Ternary relation stored as `rel[x][y] = sorted list of z with z ∈ x ∘ y`.
pub type Rel3 = Vec<Vec<Vec<usize>>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame has {0} states but component `{1}` has size {2}")]
    SizeMismatch(usize, &'static str, usize),
    #[error("state index {0} out of range")]
    BadIndex(usize),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("unknown state name `{0}`")]
    UnknownState(String),
    #[error("component `{0}` is required for kind {1} but missing")]
    MissingComponent(&'static str, LogicName),
    #[error("component `{0}` is not part of kind {1}")]
    ForeignComponent(&'static str, LogicName),
    #[error("frame fails its kind's axioms: {0}")]
    InvalidFrame(Violation),
}

/// A named axiom violation with a witness tuple of state names.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub kind: Logic,
    pub states: Vec<String>,
    /// `leq[x][y]` iff x ≼ y.
    pub leq: Vec<Vec<bool>>,
    pub comp: Rel3,
    /// Unit set E; empty for LGL/ILGL.
    pub units: Vec<bool>,
    /// DMBI/CBI total involution.
    pub minus: Option<Vec<usize>>,
    /// BiBI/BiBBI multiplicative-disjunction relation.
    pub nabla: Option<Rel3>,
    /// BiBI/BiBBI U set (where `mbot` fails).
    pub uset: Option<Vec<bool>>,
    /// CKBI sequencing relation.
    pub seq: Option<Rel3>,
    /// SML accessibility relation.
    pub rel: Option<Vec<Vec<bool>>>,
}

fn empty_rel3(n: usize) -> Rel3 {
    vec![vec![Vec::new(); n]; n]
}

pub fn identity_order(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

impl Frame {
    /// Structural validation: sizes, index ranges, kind-appropriate fields,
    /// reflexive-transitive order (identity for Boolean kinds).
    pub fn new(
        kind: Logic,
        states: Vec<String>,
        leq: Vec<Vec<bool>>,
        comp: Rel3,
        units: Vec<bool>,
        minus: Option<Vec<usize>>,
        nabla: Option<Rel3>,
        uset: Option<Vec<bool>>,
        seq: Option<Rel3>,
        rel: Option<Vec<Vec<bool>>>,
    ) -> Result<Frame, FrameError> {
        let n = states.len();
        {
            let mut sorted = states.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                let mut seen = std::collections::BTreeSet::new();
                for s in &states {
                    if !seen.insert(s) {
                        return Err(FrameError::DuplicateState(s.clone()));
                    }
                }
            }
        }
        if leq.len() != n {
            return Err(FrameError::SizeMismatch(n, "order", leq.len()));
        }
        for row in &leq {
            if row.len() != n {
                return Err(FrameError::SizeMismatch(n, "order", row.len()));
            }
        }
        let check_rel3 = |r: &Rel3, name: &'static str| -> Result<(), FrameError> {
            if r.len() != n {
                return Err(FrameError::SizeMismatch(n, name, r.len()));
            }
            for row in r {
                if row.len() != n {
                    return Err(FrameError::SizeMismatch(n, name, row.len()));
                }
                for cell in row {
                    for &z in cell {
                        if z >= n {
                            return Err(FrameError::BadIndex(z));
                        }
                    }
                }
            }
            Ok(())
        };
        check_rel3(&comp, "comp")?;
        if units.len() != n {
            return Err(FrameError::SizeMismatch(n, "E", units.len()));
        }
        let name = kind.name();
        let needs = |have: bool, field: &'static str, wanted: bool| -> Result<(), FrameError> {
            if wanted && !have {
                Err(FrameError::MissingComponent(field, name))
            } else if !wanted && have {
                Err(FrameError::ForeignComponent(field, name))
            } else {
                Ok(())
            }
        };
        needs(minus.is_some(), "minus", matches!(name, LogicName::Dmbi | LogicName::Cbi))?;
        needs(nabla.is_some(), "nabla", matches!(name, LogicName::BiBi | LogicName::BiBbi))?;
        needs(uset.is_some(), "U", matches!(name, LogicName::BiBi | LogicName::BiBbi))?;
        needs(seq.is_some(), "seq", name == LogicName::Ckbi)?;
        needs(rel.is_some(), "R", name == LogicName::Sml)?;
        if let Some(m) = &minus {
            if m.len() != n {
                return Err(FrameError::SizeMismatch(n, "minus", m.len()));
            }
            for &y in m {
                if y >= n {
                    return Err(FrameError::BadIndex(y));
                }
            }
        }
        if let Some(nb) = &nabla {
            check_rel3(nb, "nabla")?;
        }
        if let Some(u) = &uset {
            if u.len() != n {
                return Err(FrameError::SizeMismatch(n, "U", u.len()));
            }
        }
        if let Some(s) = &seq {
            check_rel3(s, "seq")?;
        }
        if let Some(r) = &rel {
            if r.len() != n {
                return Err(FrameError::SizeMismatch(n, "R", r.len()));
            }
            for row in r {
                if row.len() != n {
                    return Err(FrameError::SizeMismatch(n, "R", row.len()));
                }
            }
        }
        Ok(Frame { kind, states, leq, comp, units, minus, nabla, uset, seq, rel })
    }

    /// One-point frame of a unit-bearing Boolean kind, used in tests.
    pub fn point(kind: Logic) -> Frame {
        let name = kind.name();
        let mut comp = empty_rel3(1);
        comp[0][0] = vec![0];
        Frame::new(
            kind,
            vec!["e".to_string()],
            identity_order(1),
            comp,
            vec![true],
            matches!(name, LogicName::Dmbi | LogicName::Cbi).then(|| vec![0]),
            matches!(name, LogicName::BiBi | LogicName::BiBbi).then(|| {
                let mut nb = empty_rel3(1);
                nb[0][0] = vec![0];
                nb
            }),
            matches!(name, LogicName::BiBi | LogicName::BiBbi).then(|| vec![true]),
            (name == LogicName::Ckbi).then(|| {
                let mut sq = empty_rel3(1);
                sq[0][0] = vec![0];
                sq
            }),
            (name == LogicName::Sml).then(|| vec![vec![false]]),
        )
        .expect("one-point frame is structurally valid")
    }

    pub fn n(&self) -> usize {
        self.states.len()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn state_index(&self, name: &str) -> Result<usize, FrameError> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| FrameError::UnknownState(name.to_string()))
    }

    pub fn unit_list(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.units[i]).collect()
    }

    fn viol(&self, axiom: &str, witness: &[usize]) -> Violation {
        Violation {
            axiom: axiom.to_string(),
            witness: witness.iter().map(|&i| self.states[i].clone()).collect(),
        }
    }

    /// Comp triples `(x, y, z)` with z ∈ x ∘ y.
    pub fn comp_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n() {
            for y in 0..self.n() {
                for &z in &self.comp[x][y] {
                    out.push((x, y, z));
                }
            }
        }
        out
    }
}

fn rel3_contains(r: &Rel3, x: usize, y: usize, z: usize) -> bool {
    r[x][y].contains(&z)
}

/// Order checks shared by every kind.
fn check_order(f: &Frame, out: &mut Vec<Violation>) {
    let n = f.n();
    for x in 0..n {
        if !f.le(x, x) {
            out.push(f.viol("Order Reflexivity", &[x]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if f.le(x, y) {
                for z in 0..n {
                    if f.le(y, z) && !f.le(x, z) {
                        out.push(f.viol("Order Transitivity", &[x, y, z]));
                    }
                }
            }
        }
    }
    if f.kind.is_boolean() {
        for x in 0..n {
            for y in 0..n {
                if f.le(x, y) != (x == y) {
                    out.push(f.viol("Order Discreteness", &[x, y]));
                }
            }
        }
    }
}

fn check_commutativity(f: &Frame, r: &Rel3, label: &str, out: &mut Vec<Violation>) {
    for x in 0..f.n() {
        for y in 0..f.n() {
            for &z in &r[x][y] {
                if !rel3_contains(r, y, x, z) {
                    out.push(f.viol(&format!("{label} Commutativity"), &[x, y, z]));
                }
            }
        }
    }
}

/// (Unit Existence) for every x there is e ∈ E with x ∈ x ∘ e.
fn check_unit_existence(f: &Frame, out: &mut Vec<Violation>) {
    for x in 0..f.n() {
        let ok = (0..f.n()).any(|e| f.units[e] && rel3_contains(&f.comp, x, e, x));
        if !ok {
            out.push(f.viol("Unit Existence", &[x]));
        }
    }
}

/// (Coherence) x ∈ y ∘ e and e ∈ E imply y ≼ x.
fn check_coherence(f: &Frame, out: &mut Vec<Violation>) {
    for y in 0..f.n() {
        for e in 0..f.n() {
            if !f.units[e] {
                continue;
            }
            for &x in &f.comp[y][e] {
                if !f.le(y, x) {
                    out.push(f.viol("Coherence", &[x, y, e]));
                }
            }
        }
    }
}

/// (Closure) E is upwards-closed.
fn check_unit_closure(f: &Frame, out: &mut Vec<Violation>) {
    for e in 0..f.n() {
        if !f.units[e] {
            continue;
        }
        for e2 in 0..f.n() {
            if f.le(e, e2) && !f.units[e2] {
                out.push(f.viol("Unit Closure", &[e, e2]));
            }
        }
    }
}

/// BI (Associativity): t ≼ t' with t ∈ x∘y and w ∈ t'∘z imply there are
/// s, s', w' with s ∈ y∘z, s ≼ s', w' ∈ x∘s', w' ≼ w.
fn check_bi_associativity(f: &Frame, out: &mut Vec<Violation>) {
    let n = f.n();
    for (x, y, t) in f.comp_triples() {
        for tp in 0..n {
            if !f.le(t, tp) {
                continue;
            }
            for z in 0..n {
                for &w in &f.comp[tp][z] {
                    let ok = (0..n).any(|s| {
                        rel3_contains(&f.comp, y, z, s)
                            && (0..n).any(|sp| {
                                f.le(s, sp)
                                    && f.comp[x][sp].iter().any(|&wp| f.le(wp, w))
                            })
                    });
                    if !ok {
                        out.push(f.viol("Associativity", &[x, y, t, tp, z, w]));
                    }
                }
            }
        }
    }
}

/// CKBI seq (Associativity), an iff: ∃t(t ∈ x▷y ∧ w ∈ t▷z) ⟷ ∃t'(t' ∈ y▷z ∧ w ∈ x▷t').
fn check_seq_associativity(f: &Frame, r: &Rel3, out: &mut Vec<Violation>) {
    let n = f.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = (0..n).any(|t| rel3_contains(r, x, y, t) && rel3_contains(r, t, z, w));
                    let rhs =
                        (0..n).any(|t| rel3_contains(r, y, z, t) && rel3_contains(r, x, t, w));
                    if lhs != rhs {
                        out.push(f.viol("Seq Associativity", &[x, y, z, w]));
                    }
                }
            }
        }
    }
}

/// Every axiom of the frame's kind (plus any enabled sigma/modal flags).
/// Empty result means the frame is a legal model of its logic.
pub fn check_frame(f: &Frame) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = f.n();
    check_order(f, &mut out);
    let name = f.kind.name();
    match name {
        LogicName::Lgl | LogicName::Ilgl => {
            // no composition axioms; E must be empty
            for e in 0..n {
                if f.units[e] {
                    out.push(f.viol("No Unit Set", &[e]));
                }
            }
        }
        _ => {
            check_commutativity(f, &f.comp, "*", &mut out);
            check_unit_existence(f, &mut out);
            check_coherence(f, &mut out);
            check_unit_closure(f, &mut out);
            check_bi_associativity(f, &mut out);
        }
    }
    match name {
        LogicName::Dmbi | LogicName::Cbi => {
            let m = f.minus.as_ref().expect("validated");
            for x in 0..n {
                if m[m[x]] != x {
                    out.push(f.viol("Involutive", &[x]));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    if f.le(y, x) && !f.le(m[x], m[y]) {
                        out.push(f.viol("Dual", &[x, y]));
                    }
                }
            }
            for (x, y, z) in f.comp_triples() {
                if !rel3_contains(&f.comp, m[z], y, m[x]) {
                    out.push(f.viol("Compatibility", &[x, y, z]));
                }
            }
        }
        LogicName::BiBi | LogicName::BiBbi => {
            let nb = f.nabla.as_ref().expect("validated");
            let u = f.uset.as_ref().expect("validated");
            check_commutativity(f, nb, "mor", &mut out);
            // (U-Closure) u ∈ U and u' ≼ u imply u' ∈ U
            for x in 0..n {
                if !u[x] {
                    continue;
                }
                for y in 0..n {
                    if f.le(y, x) && !u[y] {
                        out.push(f.viol("U-Closure", &[x, y]));
                    }
                }
            }
            for &row in f.kind.sigma().iter() {
                check_sigma_correspondent(f, row, &mut out);
            }
        }
        LogicName::Ckbi => {
            let sq = f.seq.as_ref().expect("validated");
            for x in 0..n {
                if !(0..n).any(|e| f.units[e] && rel3_contains(sq, e, x, x)) {
                    out.push(f.viol("Unit Existence L", &[x]));
                }
                if !(0..n).any(|e| f.units[e] && rel3_contains(sq, x, e, x)) {
                    out.push(f.viol("Unit Existence R", &[x]));
                }
            }
            for e in 0..n {
                if !f.units[e] {
                    continue;
                }
                for y in 0..n {
                    for &x in &sq[e][y] {
                        if x != y {
                            out.push(f.viol("Coherence L", &[e, y, x]));
                        }
                    }
                    for &x in &sq[y][e] {
                        if x != y {
                            out.push(f.viol("Coherence R", &[y, e, x]));
                        }
                    }
                }
            }
            check_seq_associativity(f, sq, &mut out);
            // (Exchange) t ∈ w∘y, s ∈ x∘z, u ∈ t▷s imply
            // ∃r,v: r ∈ w▷x, v ∈ y▷z, u ∈ r∘v.
            for (w, y, t) in f.comp_triples() {
                for (x, z, s) in f.comp_triples() {
                    for &u in &sq[t][s] {
                        let ok = (0..n).any(|r| {
                            rel3_contains(sq, w, x, r)
                                && sq[y][z].iter().any(|&v| rel3_contains(&f.comp, r, v, u))
                        });
                        if !ok {
                            out.push(f.viol("Exchange", &[w, y, t, x, z, s, u]));
                        }
                    }
                }
            }
        }
        LogicName::Sml => {
            let r = f.rel.as_ref().expect("validated");
            match f.kind.modal() {
                ModalClass::None => {}
                ModalClass::S4 | ModalClass::S5 => {
                    for x in 0..n {
                        if !r[x][x] {
                            out.push(f.viol("R Reflexivity", &[x]));
                        }
                    }
                    for x in 0..n {
                        for y in 0..n {
                            if !r[x][y] {
                                continue;
                            }
                            for z in 0..n {
                                if r[y][z] && !r[x][z] {
                                    out.push(f.viol("R Transitivity", &[x, y, z]));
                                }
                            }
                        }
                    }
                    if f.kind.modal() == ModalClass::S5 {
                        for x in 0..n {
                            for y in 0..n {
                                if r[x][y] && !r[y][x] {
                                    out.push(f.viol("R Symmetry", &[x, y]));
                                }
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

/// Fig 14 frame correspondents, one row at a time. BiBBI variants are the
/// same statements with the order discrete.
pub fn check_sigma_correspondent(f: &Frame, row: SigmaAxiom, out: &mut Vec<Violation>) {
    let n = f.n();
    let nb = f.nabla.as_ref().expect("sigma rows only apply to BiBI/BiBBI frames");
    let u = f.uset.as_ref().expect("sigma rows only apply to BiBI/BiBBI frames");
    match row {
        SigmaAxiom::Associativity => {
            // t' ≼ t ∈ x▽y and w ∈ t'▽z imply ∃s,s',w': s' ≼ s ∈ y▽z and w ≼ w' ∈ x▽s'
            for x in 0..n {
                for y in 0..n {
                    for &t in &nb[x][y] {
                        for tp in 0..n {
                            if !f.le(tp, t) {
                                continue;
                            }
                            for z in 0..n {
                                for &w in &nb[tp][z] {
                                    let ok = (0..n).any(|s| {
                                        rel3_contains(nb, y, z, s)
                                            && (0..n).any(|sp| {
                                                f.le(sp, s)
                                                    && nb[x][sp].iter().any(|&wp| f.le(w, wp))
                                            })
                                    });
                                    if !ok {
                                        out.push(f.viol(
                                            "Sigma Associativity",
                                            &[x, y, t, tp, z, w],
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        SigmaAxiom::MBotWeakening => {
            // u ∈ U and x ∈ y▽u imply x ≼ y
            for y in 0..n {
                for uu in 0..n {
                    if !u[uu] {
                        continue;
                    }
                    for &x in &nb[y][uu] {
                        if !f.le(x, y) {
                            out.push(f.viol("Sigma MBot Weakening", &[x, y, uu]));
                        }
                    }
                }
            }
        }
        SigmaAxiom::MBotContraction => {
            // for every w there is u ∈ U with w ∈ w▽u
            for w in 0..n {
                let ok = (0..n).any(|uu| u[uu] && rel3_contains(nb, w, uu, w));
                if !ok {
                    out.push(f.viol("Sigma MBot Contraction", &[w]));
                }
            }
        }
        SigmaAxiom::MOrContraction => {
            for x in 0..n {
                if !rel3_contains(nb, x, x, x) {
                    out.push(f.viol("Sigma MOr Contraction", &[x]));
                }
            }
        }
        SigmaAxiom::WeakDistributivity => {
            // t ≼ t' with t ∈ x1∘x2, t' ≼ t'' ∈ y1▽y2 imply
            // ∃w: y1 ∈ x1∘w and x2 ∈ w▽y2
            for (x1, x2, t) in f.comp_triples() {
                for tp in 0..n {
                    if !f.le(t, tp) {
                        continue;
                    }
                    for y1 in 0..n {
                        for y2 in 0..n {
                            for &tpp in &nb[y1][y2] {
                                if !f.le(tp, tpp) {
                                    continue;
                                }
                                let ok = (0..n).any(|w| {
                                    rel3_contains(&f.comp, x1, w, y1)
                                        && rel3_contains(nb, w, y2, x2)
                                });
                                if !ok {
                                    out.push(f.viol(
                                        "Sigma Weak Distributivity",
                                        &[x1, x2, t, tp, tpp, y1, y2],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Monoidal-frame checks: commutativity, non-deterministic associativity,
/// unit conditions, and upwards/downwards closure. A frame passing all of
/// these is a UDMF in the sense used by the `udmf` satisfaction mode.
pub fn check_udmf(f: &Frame) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = f.n();
    check_order(f, &mut out);
    check_commutativity(f, &f.comp, "*", &mut out);
    // non-deterministic associativity: s ∈ x∘y and t ∈ s∘z imply
    // ∃s': s' ∈ y∘z and t ∈ x∘s'
    for (x, y, s) in f.comp_triples() {
        for z in 0..n {
            for &t in &f.comp[s][z] {
                let ok = (0..n)
                    .any(|sp| rel3_contains(&f.comp, y, z, sp) && rel3_contains(&f.comp, x, sp, t));
                if !ok {
                    out.push(f.viol("ND Associativity", &[x, y, s, z, t]));
                }
            }
        }
    }
    check_unit_existence(f, &mut out);
    check_coherence(f, &mut out);
    check_unit_closure(f, &mut out);
    // downwards-closed: x ∈ y∘z, y' ≼ y, z' ≼ z imply ∃x' ≼ x: x' ∈ y'∘z'
    for (y, z, x) in f.comp_triples() {
        for yp in 0..n {
            if !f.le(yp, y) {
                continue;
            }
            for zp in 0..n {
                if !f.le(zp, z) {
                    continue;
                }
                let ok = f.comp[yp][zp].iter().any(|&xp| f.le(xp, x));
                if !ok {
                    out.push(f.viol("Downwards Closure", &[x, y, z, yp, zp]));
                }
            }
        }
    }
    // upwards-closed: x ∈ y∘z and x ≼ x' imply ∃y' ≽ y, z' ≽ z: x' ∈ y'∘z'
    for (y, z, x) in f.comp_triples() {
        for xp in 0..n {
            if !f.le(x, xp) {
                continue;
            }
            let ok = (0..n).any(|yp| {
                f.le(y, yp)
                    && (0..n).any(|zp| f.le(z, zp) && rel3_contains(&f.comp, yp, zp, xp))
            });
            if !ok {
                out.push(f.viol("Upwards Closure", &[x, y, z, xp]));
            }
        }
    }
    out
}

/// The up/down closure of a BI frame: x ∈ y ∘' z iff there are x' ≼ x,
/// y ≼ y', z ≼ z' with x' ∈ y' ∘ z'. States, order and E are unchanged, and
/// the result is a UDMF with the same (strong-mode) satisfaction relation.
pub fn updown_closure(f: &Frame) -> Result<Frame, FrameError> {
    if let Some(v) = check_frame(f).into_iter().next() {
        return Err(FrameError::InvalidFrame(v));
    }
    let n = f.n();
    let mut comp = empty_rel3(n);
    for y in 0..n {
        for z in 0..n {
            for x in 0..n {
                let mem = (0..n).any(|xp| {
                    f.le(xp, x)
                        && (0..n).any(|yp| {
                            f.le(y, yp)
                                && (0..n)
                                    .any(|zp| f.le(z, zp) && rel3_contains(&f.comp, yp, zp, xp))
                        })
                });
                if mem {
                    comp[y][z].push(x);
                }
            }
        }
    }
    Ok(Frame { comp, ..f.clone() })
}

/// Valuation: atom name → state set. For intuitionistic kinds every value
/// must be a ≼-up-set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Valuation {
    pub map: BTreeMap<String, Vec<bool>>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation { map: BTreeMap::new() }
    }

    pub fn set(&mut self, atom: &str, states: Vec<bool>) {
        self.map.insert(atom.to_string(), states);
    }

    pub fn get(&self, atom: &str, n: usize) -> Vec<bool> {
        self.map.get(atom).cloned().unwrap_or_else(|| vec![false; n])
    }
}

/// True iff every valuation value is upwards-closed in the frame order.
pub fn check_persistent(f: &Frame, v: &Valuation) -> bool {
    let n = f.n();
    v.map.values().all(|set| {
        (0..n).all(|x| !set[x] || (0..n).all(|y| !f.le(x, y) || set[y]))
    })
}

/// Which clause family the multiplicatives use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// The general clauses that work on any frame of the kind.
    Strong,
    /// The simpler clauses that are sound on upwards+downwards closed
    /// monoidal frames. Only meaningful for BI/BBI kinds.
    Udmf,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("udmf mode is only defined for BI/BBI frames, not {0}")]
    UdmfMode(LogicName),
    #[error("valuation is not persistent: atom `{0}` is not an up-set")]
    NotPersistent(String),
}

#[derive(Debug, Clone)]
pub struct Model {
    pub frame: Frame,
    pub valuation: Valuation,
    pub mode: Mode,
}

impl Model {
    pub fn new(frame: Frame, valuation: Valuation, mode: Mode) -> Result<Model, ModelError> {
        if mode == Mode::Udmf && !matches!(frame.kind.name(), LogicName::Bi | LogicName::Bbi) {
            return Err(ModelError::UdmfMode(frame.kind.name()));
        }
        if frame.kind.name().is_intuitionistic() {
            let n = frame.n();
            for (a, set) in &valuation.map {
                let up = (0..n).all(|x| !set[x] || (0..n).all(|y| !frame.le(x, y) || set[y]));
                if !up {
                    return Err(ModelError::NotPersistent(a.clone()));
                }
            }
        }
        Ok(Model { frame, valuation, mode })
    }

    pub fn strong(frame: Frame, valuation: Valuation) -> Result<Model, ModelError> {
        Model::new(frame, valuation, Mode::Strong)
    }
}

/// Evaluate a formula to its set of satisfying states.
pub fn eval(m: &Model, f: &Formula) -> Vec<bool> {
    let fr = &m.frame;
    let n = fr.n();
    match f {
        Formula::Atom(p) => m.valuation.get(p, n),
        Formula::Top => vec![true; n],
        Formula::Bot => vec![false; n],
        Formula::MUnit => fr.units.clone(),
        Formula::MBot => match fr.kind.name() {
            // derived: x ⊨ mbot iff -x ∉ E
            LogicName::Dmbi | LogicName::Cbi => {
                let minus = fr.minus.as_ref().expect("kind checked");
                (0..n).map(|x| !fr.units[minus[x]]).collect()
            }
            // primitive: x ⊨ mbot iff x ∉ U
            LogicName::BiBi | LogicName::BiBbi => {
                let u = fr.uset.as_ref().expect("kind checked");
                (0..n).map(|x| !u[x]).collect()
            }
            _ => vec![false; n],
        },
        Formula::And(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            (0..n).map(|x| sa[x] && sb[x]).collect()
        }
        Formula::Or(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            (0..n).map(|x| sa[x] || sb[x]).collect()
        }
        Formula::Imp(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            (0..n)
                .map(|x| (0..n).all(|y| !fr.le(x, y) || !sa[y] || sb[y]))
                .collect()
        }
        Formula::Not(a) => {
            let sa = eval(m, a);
            (0..n).map(|x| (0..n).all(|y| !fr.le(x, y) || !sa[y])).collect()
        }
        Formula::Star(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            match m.mode {
                Mode::Strong => (0..n)
                    .map(|x| {
                        (0..n).any(|y| {
                            sa[y]
                                && (0..n).any(|z| {
                                    sb[z] && fr.comp[y][z].iter().any(|&xp| fr.le(xp, x))
                                })
                        })
                    })
                    .collect(),
                Mode::Udmf => (0..n)
                    .map(|x| {
                        (0..n).any(|y| {
                            sa[y] && (0..n).any(|z| sb[z] && rel3_contains(&fr.comp, y, z, x))
                        })
                    })
                    .collect(),
            }
        }
        Formula::Wand(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            match m.mode {
                Mode::Strong => (0..n)
                    .map(|x| {
                        (0..n).all(|xp| {
                            !fr.le(x, xp)
                                || (0..n).all(|y| {
                                    !sa[y] || fr.comp[xp][y].iter().all(|&z| sb[z])
                                })
                        })
                    })
                    .collect(),
                Mode::Udmf => (0..n)
                    .map(|x| (0..n).all(|y| !sa[y] || fr.comp[x][y].iter().all(|&z| sb[z])))
                    .collect(),
            }
        }
        Formula::Dnaw(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            (0..n)
                .map(|x| {
                    (0..n).all(|xp| {
                        !fr.le(x, xp)
                            || (0..n).all(|y| !sa[y] || fr.comp[y][xp].iter().all(|&z| sb[z]))
                    })
                })
                .collect()
        }
        Formula::MNeg(a) => {
            let sa = eval(m, a);
            let minus = fr.minus.as_ref().expect("mnot needs a DMBI/CBI frame");
            (0..n).map(|x| !sa[minus[x]]).collect()
        }
        Formula::MOr(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            match fr.kind.name() {
                LogicName::BiBi | LogicName::BiBbi => {
                    let nb = fr.nabla.as_ref().expect("kind checked");
                    (0..n)
                        .map(|x| {
                            (0..n).all(|s| {
                                !fr.le(x, s)
                                    || (0..n).all(|t| {
                                        (0..n).all(|u| {
                                            !rel3_contains(nb, t, u, s) || sa[t] || sb[u]
                                        })
                                    })
                            })
                        })
                        .collect()
                }
                // DMBI/CBI sugar: mnot (mnot a * mnot b)
                _ => {
                    let minus = fr.minus.as_ref().expect("mor needs DMBI/CBI or BiBI/BiBBI");
                    let na: Vec<bool> = (0..n).map(|x| !sa[minus[x]]).collect();
                    let nb_: Vec<bool> = (0..n).map(|x| !sb[minus[x]]).collect();
                    let star: Vec<bool> = (0..n)
                        .map(|x| {
                            (0..n).any(|y| {
                                na[y]
                                    && (0..n).any(|z| {
                                        nb_[z] && fr.comp[y][z].iter().any(|&xp| fr.le(xp, x))
                                    })
                            })
                        })
                        .collect();
                    (0..n).map(|x| !star[minus[x]]).collect()
                }
            }
        }
        Formula::RSlash(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            let nb = fr.nabla.as_ref().expect("rslash needs a BiBI/BiBBI frame");
            (0..n)
                .map(|x| {
                    (0..n).any(|s| {
                        fr.le(s, x)
                            && (0..n).any(|t| {
                                !sb[t] && nb[t][s].iter().any(|&u| sa[u])
                            })
                    })
                })
                .collect()
        }
        Formula::Seq(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            let sq = fr.seq.as_ref().expect("; needs a CKBI frame");
            (0..n)
                .map(|x| {
                    (0..n).any(|y| sa[y] && (0..n).any(|z| sb[z] && rel3_contains(sq, y, z, x)))
                })
                .collect()
        }
        Formula::RSeq(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            let sq = fr.seq.as_ref().expect("-; needs a CKBI frame");
            (0..n)
                .map(|x| (0..n).all(|y| !sa[y] || sq[x][y].iter().all(|&z| sb[z])))
                .collect()
        }
        Formula::LSeq(a, b) => {
            let (sa, sb) = (eval(m, a), eval(m, b));
            let sq = fr.seq.as_ref().expect(";- needs a CKBI frame");
            (0..n)
                .map(|x| (0..n).all(|y| !sa[y] || sq[y][x].iter().all(|&z| sb[z])))
                .collect()
        }
        Formula::Diamond(a) => {
            let sa = eval(m, a);
            let r = fr.rel.as_ref().expect("<> needs an SML frame");
            (0..n).map(|x| (0..n).any(|y| r[x][y] && sa[y])).collect()
        }
        Formula::BoxM(a) => {
            let sa = eval(m, a);
            let r = fr.rel.as_ref().expect("[] needs an SML frame");
            (0..n).map(|x| (0..n).all(|y| !r[x][y] || sa[y])).collect()
        }
        Formula::Eq(..) | Formula::PointsTo(..) | Formula::Exists(..) | Formula::Forall(..) => {
            panic!("first-order formulas are evaluated by the heap module")
        }
    }
}

/// x ⊨ f in the model.
pub fn satisfies(m: &Model, x: usize, f: &Formula) -> bool {
    eval(m, f)[x]
}

/// Every state satisfying the antecedent satisfies the consequent.
pub fn entails_in_model(m: &Model, s: &Sequent) -> bool {
    let a = eval(m, &s.antecedent);
    let c = eval(m, &s.consequent);
    (0..m.frame.n()).all(|x| !a[x] || c[x])
}

/// Persistence violations (formula index, x, y) with x ≼ y, x ⊨ φ, y ⊭ φ.
pub fn persistence_sweep(m: &Model, fs: &[Formula]) -> Vec<(usize, usize, usize)> {
    let n = m.frame.n();
    let mut out = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let s = eval(m, f);
        for x in 0..n {
            if !s[x] {
                continue;
            }
            for y in 0..n {
                if m.frame.le(x, y) && !s[y] {
                    out.push((i, x, y));
                }
            }
        }
    }
    out
}

/// All ≼-up-sets of the frame, in a stable order. These are the legal
/// valuation values for one atom.
pub fn up_sets(f: &Frame) -> Vec<Vec<bool>> {
    let n = f.n();
    assert!(n <= 20, "up-set enumeration is for desk-scale frames");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        let up = (0..n).all(|x| !set[x] || (0..n).all(|y| !f.le(x, y) || set[y]));
        if up {
            out.push(set);
        }
    }
    out
}

/// All persistent valuations of the given atoms (cartesian product of
/// up-sets). Deterministic order.
pub fn persistent_valuations(f: &Frame, atoms: &[String]) -> Vec<Valuation> {
    let sets = up_sets(f);
    let mut out = Vec::new();
    let k = atoms.len();
    let total = sets.len().checked_pow(k as u32).expect("valuation space fits");
    for idx in 0..total {
        let mut v = Valuation::new();
        let mut rest = idx;
        for a in atoms {
            v.set(a, sets[rest % sets.len()].clone());
            rest /= sets.len();
        }
        out.push(v);
    }
    out
}

/// Valid in the frame: satisfied at every state under every persistent
/// valuation of the formula's atoms.
pub fn valid_in_frame(f: &Frame, formula: &Formula) -> bool {
    let atoms: Vec<String> = formula.atoms().into_iter().collect();
    for v in persistent_valuations(f, &atoms) {
        let m = Model::strong(f.clone(), v).expect("persistent by construction");
        let s = eval(&m, formula);
        if !s.iter().all(|&b| b) {
            return false;
        }
    }
    true
}

/// Morphism clause checking. `g` maps state indices of `a` to state indices
/// of `b`; the clauses checked depend on `a`'s kind (clauses 1–6 collapse to
/// the LGL set when the order is discrete; clause 7 covers E; 8 covers `-`;
/// 8–10 cover nabla, with the analogous clauses for U, seq and R).
pub fn check_morphism(g: &[usize], a: &Frame, b: &Frame) -> Vec<Violation> {
    let mut out = Vec::new();
    let (na, nb_) = (a.n(), b.n());
    assert_eq!(g.len(), na, "morphism must be total on the source states");
    for &gx in g {
        assert!(gx < nb_, "morphism target out of range");
    }
    let name = a.kind.name();
    let viol = |axiom: &str, wa: &[usize], wb: &[usize]| Violation {
        axiom: axiom.to_string(),
        witness: wa
            .iter()
            .map(|&i| a.states[i].clone())
            .chain(wb.iter().map(|&j| format!("'{}", b.states[j])))
            .collect(),
    };

    // (1) order forth, (2) order back
    for x in 0..na {
        for y in 0..na {
            if a.le(x, y) && !b.le(g[x], g[y]) {
                out.push(viol("clause 1 (order forth)", &[x, y], &[]));
            }
        }
        for yp in 0..nb_ {
            if b.le(g[x], yp) {
                let ok = (0..na).any(|y| a.le(x, y) && g[y] == yp);
                if !ok {
                    out.push(viol("clause 2 (order back)", &[x], &[yp]));
                }
            }
        }
    }
    // (3) comp forth
    for (y, z, x) in a.comp_triples() {
        if !rel3_contains(&b.comp, g[y], g[z], g[x]) {
            out.push(viol("clause 3 (comp forth)", &[x, y, z], &[]));
        }
    }
    // (4) w' ≼' g(x), w' ∈ y'∘'z' → ∃w,y,z: w ≼ x, w ∈ y∘z, y' ≼' g(y), z' ≼' g(z)
    for x in 0..na {
        for wp in 0..nb_ {
            if !b.le(wp, g[x]) {
                continue;
            }
            for yp in 0..nb_ {
                for zp in 0..nb_ {
                    if !rel3_contains(&b.comp, yp, zp, wp) {
                        continue;
                    }
                    let ok = (0..na).any(|w| {
                        a.le(w, x)
                            && (0..na).any(|y| {
                                b.le(yp, g[y])
                                    && a.comp[y]
                                        .iter()
                                        .enumerate()
                                        .any(|(z, cell)| cell.contains(&w) && b.le(zp, g[z]))
                            })
                    });
                    if !ok {
                        out.push(viol("clause 4 (comp back)", &[x], &[wp, yp, zp]));
                    }
                }
            }
        }
    }
    // (5) g(x) ≼' w', z' ∈ w'∘'y' → ∃w,y,z: x ≼ w, z ∈ w∘y, y' ≼' g(y), g(z) ≼' z'
    for x in 0..na {
        for wp in 0..nb_ {
            if !b.le(g[x], wp) {
                continue;
            }
            for yp in 0..nb_ {
                for &zp in &b.comp[wp][yp] {
                    let ok = (0..na).any(|w| {
                        a.le(x, w)
                            && (0..na).any(|y| {
                                b.le(yp, g[y])
                                    && a.comp[w][y].iter().any(|&z| b.le(g[z], zp))
                            })
                    });
                    if !ok {
                        out.push(viol("clause 5 (wand back)", &[x], &[wp, yp, zp]));
                    }
                }
            }
        }
    }
    // (6) g(x) ≼' w', z' ∈ y'∘'w' → ∃w,y,z: x ≼ w, z ∈ y∘w, y' ≼' g(y), g(z) ≼' z'
    for x in 0..na {
        for wp in 0..nb_ {
            if !b.le(g[x], wp) {
                continue;
            }
            for yp in 0..nb_ {
                for &zp in &b.comp[yp][wp] {
                    let ok = (0..na).any(|w| {
                        a.le(x, w)
                            && (0..na).any(|y| {
                                b.le(yp, g[y])
                                    && a.comp[y][w].iter().any(|&z| b.le(g[z], zp))
                            })
                    });
                    if !ok {
                        out.push(viol("clause 6 (dnaw back)", &[x], &[wp, yp, zp]));
                    }
                }
            }
        }
    }
    // (7) e ∈ E iff g(e) ∈ E'
    if name.has_munit() {
        for x in 0..na {
            if a.units[x] != b.units[g[x]] {
                out.push(viol("clause 7 (units)", &[x], &[]));
            }
        }
    }
    // (8) g(-x) = -'g(x)
    if let (Some(ma), Some(mb)) = (&a.minus, &b.minus) {
        for x in 0..na {
            if g[ma[x]] != mb[g[x]] {
                out.push(viol("clause 8 (minus)", &[x], &[]));
            }
        }
    }
    // (8)–(10) nabla clauses plus the U analogue of clause 7
    if let (Some(nba), Some(nbb), Some(ua), Some(ub)) = (&a.nabla, &b.nabla, &a.uset, &b.uset) {
        for y in 0..na {
            for z in 0..na {
                for &x in &nba[y][z] {
                    if !rel3_contains(nbb, g[y], g[z], g[x]) {
                        out.push(viol("clause 8 (nabla forth)", &[x, y, z], &[]));
                    }
                }
            }
        }
        // (9) g(x) ≼' s' ∈ t'▽'u' → ∃s,t,u: x ≼ s ∈ t▽u, g(t) ≼' t', g(u) ≼' u'
        for x in 0..na {
            for sp in 0..nb_ {
                if !b.le(g[x], sp) {
                    continue;
                }
                for tp in 0..nb_ {
                    for up in 0..nb_ {
                        if !rel3_contains(nbb, tp, up, sp) {
                            continue;
                        }
                        let ok = (0..na).any(|s| {
                            a.le(x, s)
                                && (0..na).any(|t| {
                                    b.le(g[t], tp)
                                        && nba[t]
                                            .iter()
                                            .enumerate()
                                            .any(|(u, cell)| cell.contains(&s) && b.le(g[u], up))
                                })
                        });
                        if !ok {
                            out.push(viol("clause 9 (nabla back)", &[x], &[sp, tp, up]));
                        }
                    }
                }
            }
        }
        // (10) g(x) ≽' s', u' ∈ t'▽'s' → ∃s,t,u: x ≽ s, u ∈ t▽s, g(u) ≽' u', t' ≽' g(t)
        for x in 0..na {
            for sp in 0..nb_ {
                if !b.le(sp, g[x]) {
                    continue;
                }
                for tp in 0..nb_ {
                    for &up in &nbb[tp][sp] {
                        let ok = (0..na).any(|s| {
                            a.le(s, x)
                                && (0..na).any(|t| {
                                    b.le(g[t], tp)
                                        && nba[t][s].iter().any(|&u| b.le(up, g[u]))
                                })
                        });
                        if !ok {
                            out.push(viol("clause 10 (rslash back)", &[x], &[sp, tp, up]));
                        }
                    }
                }
            }
        }
        for x in 0..na {
            if ua[x] != ub[g[x]] {
                out.push(viol("clause 11 (U)", &[x], &[]));
            }
        }
    }
    // seq analogues of the LGL clauses for CKBI frames
    if let (Some(sa), Some(sb)) = (&a.seq, &b.seq) {
        for y in 0..na {
            for z in 0..na {
                for &x in &sa[y][z] {
                    if !rel3_contains(sb, g[y], g[z], g[x]) {
                        out.push(viol("seq clause (forth)", &[x, y, z], &[]));
                    }
                }
            }
        }
        for x in 0..na {
            for yp in 0..nb_ {
                for zp in 0..nb_ {
                    if rel3_contains(sb, yp, zp, g[x])
                        && !(0..na).any(|y| {
                            g[y] == yp
                                && sa[y]
                                    .iter()
                                    .enumerate()
                                    .any(|(z, cell)| cell.contains(&x) && g[z] == zp)
                        })
                    {
                        out.push(viol("seq clause (back)", &[x], &[yp, zp]));
                    }
                    if rel3_contains(sb, g[x], yp, zp)
                        && !(0..na).any(|y| {
                            g[y] == yp && sa[x][y].iter().any(|&z| g[z] == zp)
                        })
                    {
                        out.push(viol("seq clause (rseq back)", &[x], &[yp, zp]));
                    }
                    if rel3_contains(sb, yp, g[x], zp)
                        && !(0..na).any(|y| {
                            g[y] == yp && sa[y][x].iter().any(|&z| g[z] == zp)
                        })
                    {
                        out.push(viol("seq clause (lseq back)", &[x], &[yp, zp]));
                    }
                }
            }
        }
    }
    // R p-morphism clauses for SML frames
    if let (Some(ra), Some(rb)) = (&a.rel, &b.rel) {
        for x in 0..na {
            for y in 0..na {
                if ra[x][y] && !rb[g[x]][g[y]] {
                    out.push(viol("R clause (forth)", &[x, y], &[]));
                }
            }
            for yp in 0..nb_ {
                if rb[g[x]][yp] && !(0..na).any(|y| ra[x][y] && g[y] == yp) {
                    out.push(viol("R clause (back)", &[x], &[yp]));
                }
            }
        }
    }
    out
}

/// Derived CBI "infinity" set together with the uniqueness property it must
/// satisfy on a finite CBI frame: for every x, -x is the unique y such that
/// infinity meets y ∘ x.
pub fn cbi_infinity(f: &Frame) -> (Vec<usize>, Vec<Violation>) {
    let minus = f.minus.as_ref().expect("cbi_infinity needs a CBI frame");
    let n = f.n();
    let mut inf: Vec<usize> = (0..n).filter(|&e| f.units[e]).map(|e| minus[e]).collect();
    inf.sort_unstable();
    inf.dedup();
    let mut viols = Vec::new();
    for x in 0..n {
        let candidates: Vec<usize> = (0..n)
            .filter(|&y| inf.iter().any(|&i| rel3_contains(&f.comp, y, x, i)))
            .collect();
        if candidates != vec![minus[x]] {
            viols.push(f.viol("Infinity Uniqueness", &[x]));
        }
    }
    (inf, viols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::atom;
    use crate::logic::{Logic, LogicName};

    pub(crate) fn two_point_bbi() -> Frame {
        // X = {e, a}, e∘e = {e}, e∘a = a∘e = {a}, a∘a = ∅, E = {e}
        let mut comp = empty_rel3(2);
        comp[0][0] = vec![0];
        comp[0][1] = vec![1];
        comp[1][0] = vec![1];
        Frame::new(
            Logic::new(LogicName::Bbi),
            vec!["e".into(), "a".into()],
            identity_order(2),
            comp,
            vec![true, false],
            None,
            None,
            None,
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn one_point_and_two_point_bbi_pass() {
        let f = Frame::point(Logic::new(LogicName::Bbi));
        assert!(check_frame(&f).is_empty());
        let g = two_point_bbi();
        assert!(check_frame(&g).is_empty());
    }

    #[test]
    fn missing_units_is_reported() {
        let mut g = two_point_bbi();
        g.units = vec![false, false];
        let viols = check_frame(&g);
        assert!(viols.iter().any(|v| v.axiom == "Unit Existence" && v.witness == vec!["e"]));
    }

    #[test]
    fn p_star_p_fails_at_a() {
        let g = two_point_bbi();
        let mut v = Valuation::new();
        v.set("p", vec![false, true]);
        let m = Model::strong(g, v).unwrap();
        // only decompositions of a are (e,a) and (a,e); e ∉ V(p)
        assert!(!satisfies(&m, 1, &Formula::star(atom("p"), atom("p"))));
        assert!(satisfies(&m, 1, &atom("p")));
        let s = crate::parser::parse_sequent("p |- p * p", &Logic::new(LogicName::Bbi)).unwrap();
        assert!(!entails_in_model(&m, &s));
    }

    #[test]
    fn munit_clause() {
        let f = Frame::point(Logic::new(LogicName::Bbi));
        let mut v = Valuation::new();
        v.set("p", vec![true]);
        let m = Model::strong(f, v).unwrap();
        assert!(satisfies(&m, 0, &Formula::MUnit));
    }

    #[test]
    fn cbi_one_point_mbot_false() {
        let f = Frame::point(Logic::new(LogicName::Cbi));
        assert!(check_frame(&f).is_empty());
        let m = Model::strong(f, Valuation::new()).unwrap();
        // -e = e ∈ E, so e ⊭ mbot; equivalently U = ∅
        assert!(!satisfies(&m, 0, &Formula::MBot));
        assert!(satisfies(&m, 0, &Formula::mneg(Formula::MUnit)) == false);
        let (inf, viols) = cbi_infinity(&m.frame);
        assert_eq!(inf, vec![0]);
        assert!(viols.is_empty());
    }

    #[test]
    fn persistence_on_a_chain() {
        // x ≼ y chain as a BI frame with empty composition? needs units.
        // Use an ILGL frame: no unit axioms at all.
        let f = Frame::new(
            Logic::new(LogicName::Ilgl),
            vec!["x".into(), "y".into()],
            vec![vec![true, true], vec![false, true]],
            empty_rel3(2),
            vec![false, false],
            None,
            None,
            None,
            None,
            None,
        )
        .unwrap();
        assert!(check_frame(&f).is_empty());
        let mut v = Valuation::new();
        v.set("p", vec![false, true]);
        assert!(check_persistent(&f, &v));
        let mut w = Valuation::new();
        w.set("p", vec![true, false]);
        assert!(!check_persistent(&f, &w));
        // model construction rejects non-persistent valuations
        assert!(Model::strong(f, w).is_err());
    }

    #[test]
    fn updown_closure_discrete_is_identity() {
        let g = two_point_bbi();
        let mut bi = g.clone();
        bi.kind = Logic::new(LogicName::Bi);
        let closed = updown_closure(&bi).unwrap();
        assert_eq!(closed.comp, bi.comp);
        assert!(check_udmf(&closed).is_empty());
    }

    #[test]
    fn identity_morphism_passes() {
        let g = two_point_bbi();
        assert!(check_morphism(&[0, 1], &g, &g).is_empty());
    }

    #[test]
    fn unit_to_nonunit_map_fails_clause7() {
        let g = two_point_bbi();
        let viols = check_morphism(&[1, 1], &g, &g);
        assert!(viols.iter().any(|v| v.axiom.contains("clause 7")));
    }

    #[test]
    fn constant_map_needs_matching_units() {
        // Collapsing the two-point frame onto a one-point frame sends the
        // non-unit a to a unit, so clause 7 (x ∈ E iff g(x) ∈ E') rejects it.
        let g = two_point_bbi();
        let p = Frame::point(Logic::new(LogicName::Bbi));
        let viols = check_morphism(&[0, 0], &g, &p);
        assert!(viols.iter().any(|v| v.axiom.contains("clause 7")));
        assert!(viols.iter().all(|v| v.axiom.contains("clause 7")));
    }
}
