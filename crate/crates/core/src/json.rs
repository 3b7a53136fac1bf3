//! JSON wire formats for frames, algebras, valuations, proofs, heaps,
//! stores, universes and scaffolds. Composition-like relations are triple
//! lists `[x, y, z]` meaning z ∈ x ∘ y (or op(x, y) = z on the algebra
//! side); orders and R are pair lists; named constants are strings.

use crate::algebras::{Algebra, AlgebraSpec, BinTable};
use crate::frames::{Frame, Rel3, Valuation};
use crate::heap::{Heap, HeapUniverse, Store};
use crate::logic::{Logic, LogicName, ModalClass, SigmaAxiom};
use crate::models::{Scaffold, ScaffoldOrder, Subgraph};
use crate::proofs::{Proof, ProofStep, RuleId, Substitution};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("JSON parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unknown logic `{0}`")]
    UnknownLogic(String),
    #[error("unknown sigma axiom `{0}`")]
    UnknownSigma(String),
    #[error("unknown modal class `{0}`")]
    UnknownModal(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown order `{0}` (expected subgraph/supergraph/equality)")]
    UnknownOrder(String),
    #[error(transparent)]
    Logic(#[from] crate::logic::LogicError),
    #[error(transparent)]
    Frame(#[from] crate::frames::FrameError),
    #[error(transparent)]
    Algebra(#[from] crate::algebras::AlgebraError),
    #[error(transparent)]
    Formula(#[from] crate::parser::ParseError),
    #[error(transparent)]
    Heap(#[from] crate::heap::HeapError),
    #[error(transparent)]
    Model(#[from] crate::models::ModelError),
}

pub fn logic_from_parts(
    kind: &str,
    sigma: &[String],
    modal: &str,
) -> Result<Logic, JsonError> {
    let name =
        LogicName::parse(kind).ok_or_else(|| JsonError::UnknownLogic(kind.to_string()))?;
    let sigma = sigma
        .iter()
        .map(|s| SigmaAxiom::parse(s).ok_or_else(|| JsonError::UnknownSigma(s.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let modal =
        ModalClass::parse(modal).ok_or_else(|| JsonError::UnknownModal(modal.to_string()))?;
    Ok(Logic::build(name, sigma, modal)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FrameJson {
    pub kind: String,
    pub states: Vec<String>,
    pub order: Vec<(String, String)>,
    pub comp: Vec<(String, String, String)>,
    #[serde(rename = "E")]
    pub units: Vec<String>,
    #[serde(default)]
    pub minus: BTreeMap<String, String>,
    #[serde(default)]
    pub nabla: Vec<(String, String, String)>,
    #[serde(default, rename = "U")]
    pub uset: Vec<String>,
    #[serde(default)]
    pub seq: Vec<(String, String, String)>,
    #[serde(default, rename = "R")]
    pub rel: Vec<(String, String)>,
    #[serde(default)]
    pub sigma: Vec<String>,
    #[serde(default = "default_modal")]
    pub modal: String,
}

fn default_modal() -> String {
    "none".to_string()
}

pub fn frame_to_json(f: &Frame) -> FrameJson {
    let n = f.n();
    let name = |i: usize| f.states[i].clone();
    let mut order = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if f.le(x, y) {
                order.push((name(x), name(y)));
            }
        }
    }
    let rel3 = |r: &Rel3| -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for &z in &r[x][y] {
                    out.push((name(x), name(y), name(z)));
                }
            }
        }
        out
    };
    FrameJson {
        kind: f.kind.name().as_str().to_string(),
        states: f.states.clone(),
        order,
        comp: rel3(&f.comp),
        units: (0..n).filter(|&i| f.units[i]).map(name).collect(),
        minus: f
            .minus
            .as_ref()
            .map(|m| (0..n).map(|i| (name(i), name(m[i]))).collect())
            .unwrap_or_default(),
        nabla: f.nabla.as_ref().map(|r| rel3(r)).unwrap_or_default(),
        uset: f
            .uset
            .as_ref()
            .map(|u| (0..n).filter(|&i| u[i]).map(name).collect())
            .unwrap_or_default(),
        seq: f.seq.as_ref().map(|r| rel3(r)).unwrap_or_default(),
        rel: f
            .rel
            .as_ref()
            .map(|r| {
                let mut out = Vec::new();
                for x in 0..n {
                    for y in 0..n {
                        if r[x][y] {
                            out.push((name(x), name(y)));
                        }
                    }
                }
                out
            })
            .unwrap_or_default(),
        sigma: f.kind.sigma().iter().map(|s| s.as_str().to_string()).collect(),
        modal: f.kind.modal().as_str().to_string(),
    }
}

pub fn frame_from_json(j: &FrameJson) -> Result<Frame, JsonError> {
    let kind = logic_from_parts(&j.kind, &j.sigma, &j.modal)?;
    let n = j.states.len();
    let idx = |s: &str| -> Result<usize, JsonError> {
        j.states
            .iter()
            .position(|t| t == s)
            .ok_or_else(|| JsonError::UnknownState(s.to_string()))
    };
    // reflexive closure is implicit; transitivity is the caller's business
    // and is validated by check_frame
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for (a, b) in &j.order {
        leq[idx(a)?][idx(b)?] = true;
    }
    let rel3 = |triples: &Vec<(String, String, String)>| -> Result<Rel3, JsonError> {
        let mut r: Rel3 = vec![vec![Vec::new(); n]; n];
        for (x, y, z) in triples {
            let cell = &mut r[idx(x)?][idx(y)?];
            let zi = idx(z)?;
            if !cell.contains(&zi) {
                cell.push(zi);
                cell.sort_unstable();
            }
        }
        Ok(r)
    };
    let comp = rel3(&j.comp)?;
    let mut units = vec![false; n];
    for e in &j.units {
        units[idx(e)?] = true;
    }
    let name = kind.name();
    let minus = if matches!(name, LogicName::Dmbi | LogicName::Cbi) {
        let mut m = vec![0usize; n];
        for i in 0..n {
            let from = &j.states[i];
            let to = j
                .minus
                .get(from)
                .ok_or_else(|| JsonError::UnknownState(format!("minus({from})")))?;
            m[i] = idx(to)?;
        }
        Some(m)
    } else {
        None
    };
    let nabla = if matches!(name, LogicName::BiBi | LogicName::BiBbi) {
        Some(rel3(&j.nabla)?)
    } else {
        None
    };
    let uset = if matches!(name, LogicName::BiBi | LogicName::BiBbi) {
        let mut u = vec![false; n];
        for s in &j.uset {
            u[idx(s)?] = true;
        }
        Some(u)
    } else {
        None
    };
    let seq = if name == LogicName::Ckbi { Some(rel3(&j.seq)?) } else { None };
    let rel = if name == LogicName::Sml {
        let mut r = vec![vec![false; n]; n];
        for (a, b) in &j.rel {
            r[idx(a)?][idx(b)?] = true;
        }
        Some(r)
    } else {
        None
    };
    Ok(Frame::new(kind, j.states.clone(), leq, comp, units, minus, nabla, uset, seq, rel)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub kind: String,
    #[serde(default)]
    pub sigma: Vec<String>,
    #[serde(default = "default_modal")]
    pub modal: String,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub and: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub or: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub imp: Vec<(String, String, String)>,
    pub star: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wand: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dnaw: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mor: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rslash: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seq: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rseq: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lseq: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mnot: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diamond: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bot: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mbot: Option<String>,
}

pub fn algebra_to_json(a: &Algebra) -> AlgebraJson {
    let n = a.n();
    let name = |i: usize| a.elems[i].clone();
    let tab = |t: &BinTable| -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                out.push((name(x), name(y), name(t[x][y])));
            }
        }
        out
    };
    let un = |t: &Vec<usize>| -> Vec<(String, String)> {
        (0..n).map(|x| (name(x), name(t[x]))).collect()
    };
    let mut leq = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if a.le(x, y) {
                leq.push((name(x), name(y)));
            }
        }
    }
    AlgebraJson {
        kind: a.kind.name().as_str().to_string(),
        sigma: a.kind.sigma().iter().map(|s| s.as_str().to_string()).collect(),
        modal: a.kind.modal().as_str().to_string(),
        elements: a.elems.clone(),
        leq,
        and: tab(&a.meet),
        or: tab(&a.join),
        imp: tab(&a.imp),
        star: tab(&a.star),
        wand: tab(&a.wand),
        dnaw: if matches!(a.kind.name(), LogicName::Lgl | LogicName::Ilgl) {
            tab(&a.dnaw)
        } else {
            Vec::new()
        },
        mor: a.mor.as_ref().map(|t| tab(t)).unwrap_or_default(),
        rslash: a.rslash.as_ref().map(|t| tab(t)).unwrap_or_default(),
        seq: a.seq.as_ref().map(|t| tab(t)).unwrap_or_default(),
        rseq: a.rseq.as_ref().map(|t| tab(t)).unwrap_or_default(),
        lseq: a.lseq.as_ref().map(|t| tab(t)).unwrap_or_default(),
        mnot: a.mneg.as_ref().map(|t| un(t)).unwrap_or_default(),
        diamond: a.diamond.as_ref().map(|t| un(t)).unwrap_or_default(),
        top: Some(name(a.top)),
        bot: Some(name(a.bot)),
        emp: a.munit.map(name),
        mbot: a.mbot.map(name),
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<Algebra, JsonError> {
    let kind = logic_from_parts(&j.kind, &j.sigma, &j.modal)?;
    let n = j.elements.len();
    let idx = |s: &str| -> Result<usize, JsonError> {
        j.elements
            .iter()
            .position(|t| t == s)
            .ok_or_else(|| JsonError::UnknownElement(s.to_string()))
    };
    let leq_pairs = j
        .leq
        .iter()
        .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    let tab = |triples: &Vec<(String, String, String)>| -> Result<Option<BinTable>, JsonError> {
        if triples.is_empty() {
            return Ok(None);
        }
        let mut t = vec![vec![usize::MAX; n]; n];
        for (x, y, z) in triples {
            t[idx(x)?][idx(y)?] = idx(z)?;
        }
        for row in &t {
            for &v in row {
                if v == usize::MAX {
                    return Err(JsonError::UnknownElement("(incomplete table)".into()));
                }
            }
        }
        Ok(Some(t))
    };
    let star = tab(&j.star)?.ok_or_else(|| {
        JsonError::UnknownElement("star table is required".into())
    })?;
    // -* may be omitted: derive the residual candidate max{a | a*b ≤ c}
    let spec_probe = AlgebraSpec {
        elems: j.elements.clone(),
        leq_pairs: leq_pairs.clone(),
        imp: tab(&j.imp)?,
        star: Some(star.clone()),
        wand: Some(vec![vec![0; n]; n]),
        ..Default::default()
    };
    let probe = Algebra::from_spec(Logic::new(LogicName::Bbi), {
        let mut s = spec_probe;
        s.munit = Some(0);
        s
    })?;
    let derive_residual = |swap: bool| -> BinTable {
        let mut t = vec![vec![0usize; n]; n];
        for b in 0..n {
            for c in 0..n {
                let mut acc = probe.bot;
                for x in 0..n {
                    let prod = if swap { star[b][x] } else { star[x][b] };
                    if probe.le(prod, c) {
                        acc = probe.join[acc][x];
                    }
                }
                t[b][c] = acc;
            }
        }
        t
    };
    let wand = match tab(&j.wand)? {
        Some(t) => t,
        None => derive_residual(false),
    };
    let dnaw = match tab(&j.dnaw)? {
        Some(t) => Some(t),
        None if matches!(kind.name(), LogicName::Lgl | LogicName::Ilgl) => {
            Some(derive_residual(true))
        }
        None => None,
    };

    let spec = AlgebraSpec {
        elems: j.elements.clone(),
        leq_pairs,
        imp: tab(&j.imp)?,
        star: Some(star),
        wand: Some(wand),
        dnaw,
        munit: j.emp.as_deref().map(&idx).transpose()?,
        mbot: j.mbot.as_deref().map(&idx).transpose()?,
        mor: tab(&j.mor)?,
        rslash: tab(&j.rslash)?,
        seq: tab(&j.seq)?,
        rseq: tab(&j.rseq)?,
        lseq: tab(&j.lseq)?,
        diamond: if j.diamond.is_empty() {
            None
        } else {
            let mut d = vec![usize::MAX; n];
            for (x, y) in &j.diamond {
                d[idx(x)?] = idx(y)?;
            }
            Some(d)
        },
    };
    let a = Algebra::from_spec(kind, spec)?;
    // the given and/or tables, when present, must agree with the lattice
    if !j.and.is_empty() {
        if let Some(t) = tab(&j.and)? {
            if t != a.meet {
                return Err(JsonError::UnknownElement("`and` disagrees with leq".into()));
            }
        }
    }
    if !j.or.is_empty() {
        if let Some(t) = tab(&j.or)? {
            if t != a.join {
                return Err(JsonError::UnknownElement("`or` disagrees with leq".into()));
            }
        }
    }
    Ok(a)
}

pub fn valuation_to_json(v: &Valuation, f: &Frame) -> BTreeMap<String, Vec<String>> {
    v.map
        .iter()
        .map(|(a, set)| {
            (
                a.clone(),
                (0..f.n()).filter(|&i| set[i]).map(|i| f.states[i].clone()).collect(),
            )
        })
        .collect()
}

pub fn valuation_from_json(
    j: &BTreeMap<String, Vec<String>>,
    f: &Frame,
) -> Result<Valuation, JsonError> {
    let mut v = Valuation::new();
    for (atom, states) in j {
        let mut set = vec![false; f.n()];
        for s in states {
            let i = f
                .states
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| JsonError::UnknownState(s.clone()))?;
            set[i] = true;
        }
        v.set(atom, set);
    }
    Ok(v)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProofStepJson {
    pub seq: (String, String),
    pub rule: String,
    #[serde(default)]
    pub premises: Vec<usize>,
    #[serde(default)]
    pub subst: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProofJson {
    pub logic: String,
    #[serde(default)]
    pub sigma: Vec<String>,
    #[serde(default = "default_modal")]
    pub modal: String,
    pub steps: Vec<ProofStepJson>,
}

pub fn proof_from_json(j: &ProofJson) -> Result<(Proof, Logic), JsonError> {
    let logic = logic_from_parts(&j.logic, &j.sigma, &j.modal)?;
    let mut steps = Vec::new();
    for s in &j.steps {
        let rule = RuleId::parse(&s.rule).ok_or_else(|| JsonError::UnknownRule(s.rule.clone()))?;
        let ante = crate::parser::parse_formula_any(&s.seq.0)?;
        let cons = crate::parser::parse_formula_any(&s.seq.1)?;
        let mut subst = Substitution::new();
        for (k, v) in &s.subst {
            subst.insert(k.clone(), crate::parser::parse_formula_any(v)?);
        }
        steps.push(ProofStep {
            sequent: crate::formula::Sequent::new(ante, cons),
            rule,
            premises: s.premises.clone(),
            subst,
        });
    }
    Ok((Proof { steps }, logic))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UniverseJson {
    pub loc: Vec<i64>,
    pub val: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<i64>,
}

pub fn universe_from_json(j: &UniverseJson) -> Result<HeapUniverse, JsonError> {
    Ok(HeapUniverse::new(j.loc.clone(), j.val.clone(), j.modulus)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HeapJson {
    pub heap: BTreeMap<String, i64>,
}

pub fn heap_from_json(j: &HeapJson) -> Result<Heap, JsonError> {
    let mut m = BTreeMap::new();
    for (k, &v) in &j.heap {
        let loc: i64 = k
            .parse()
            .map_err(|_| JsonError::UnknownElement(format!("heap location `{k}`")))?;
        m.insert(loc, v);
    }
    Ok(Heap(m))
}

pub fn heap_to_json(h: &Heap) -> HeapJson {
    HeapJson { heap: h.0.iter().map(|(k, &v)| (k.to_string(), v)).collect() }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StoreJson {
    pub ctx: Vec<String>,
    pub vals: Vec<i64>,
}

pub fn store_from_json(j: &StoreJson) -> Store {
    Store::new(j.ctx.clone(), j.vals.clone())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SubgraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScaffoldJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub eset: Vec<(String, String)>,
    pub x: Vec<SubgraphJson>,
    pub order: String,
}

pub fn scaffold_from_json(j: &ScaffoldJson) -> Result<Scaffold, JsonError> {
    let idx = |s: &str| -> Result<usize, JsonError> {
        j.vertices
            .iter()
            .position(|t| t == s)
            .ok_or_else(|| JsonError::UnknownVertex(s.to_string()))
    };
    let pairs = |ps: &Vec<(String, String)>| -> Result<Vec<(usize, usize)>, JsonError> {
        ps.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect()
    };
    let order =
        ScaffoldOrder::parse(&j.order).ok_or_else(|| JsonError::UnknownOrder(j.order.clone()))?;
    let mut x_set = Vec::new();
    for sg in &j.x {
        let vertices = sg
            .vertices
            .iter()
            .map(|v| idx(v))
            .collect::<Result<std::collections::BTreeSet<_>, _>>()?;
        let edges = pairs(&sg.edges)?.into_iter().collect();
        x_set.push(Subgraph { vertices, edges });
    }
    Ok(Scaffold::new(
        j.vertices.clone(),
        pairs(&j.edges)?,
        pairs(&j.eset)?,
        x_set,
        order,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::sample_library;

    #[test]
    fn frame_round_trips_through_json() {
        for (name, f) in sample_library() {
            let j = frame_to_json(&f);
            let text = serde_json::to_string_pretty(&j).unwrap();
            let j2: FrameJson = serde_json::from_str(&text).unwrap();
            let f2 = frame_from_json(&j2).unwrap();
            assert_eq!(f, f2, "{name}");
        }
    }

    #[test]
    fn spec_frame_document_parses() {
        let text = r#"{"kind":"BBI","states":["e","a"],"order":[["e","e"],["a","a"]],
            "comp":[["e","e","e"],["e","a","a"],["a","e","a"]],"E":["e"],
            "minus":{},"nabla":[],"U":[],"seq":[],"R":[],"sigma":[],"modal":"none"}"#;
        let j: FrameJson = serde_json::from_str(text).unwrap();
        let f = frame_from_json(&j).unwrap();
        assert!(crate::frames::check_frame(&f).is_empty());
        assert_eq!(f.comp[0][1], vec![1]);
    }

    #[test]
    fn algebra_round_trips_through_json() {
        let a = crate::algebras::two_element_bbi();
        let j = algebra_to_json(&a);
        let text = serde_json::to_string(&j).unwrap();
        let j2: AlgebraJson = serde_json::from_str(&text).unwrap();
        let a2 = algebra_from_json(&j2).unwrap();
        assert_eq!(a, a2);
    }

    #[test]
    fn wand_can_be_derived() {
        // two-element meet monoid with the wand omitted
        let text = r#"{"kind":"BBI","elements":["0","1"],"leq":[["0","1"]],
            "star":[["0","0","0"],["0","1","0"],["1","0","0"],["1","1","1"]],
            "emp":"1"}"#;
        let j: AlgebraJson = serde_json::from_str(text).unwrap();
        let a = algebra_from_json(&j).unwrap();
        assert!(crate::algebras::check_algebra(&a).is_empty());
        assert_eq!(a.wand, crate::algebras::two_element_bbi().wand);
    }

    #[test]
    fn proof_json_parses() {
        let text = r#"{"logic":"BBI","steps":[{"seq":["p * q","q * p"],"rule":"R17",
            "premises":[],"subst":{"phi":"p","psi":"q"}}]}"#;
        let j: ProofJson = serde_json::from_str(text).unwrap();
        let (p, logic) = proof_from_json(&j).unwrap();
        assert!(crate::proofs::check_proof(&p, &logic).is_accepted());
    }
}
