//! Generators for the concrete model families: layered-graph scaffolds,
//! resource-monoid frames, and a curated sample library of small frames.

use crate::frames::{check_frame, identity_order, Frame, Rel3, Violation};
use crate::logic::{Logic, LogicName};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("distinguished edge ({0}, {1}) is not an edge of the graph")]
    NotAnEdge(String, String),
    #[error("subgraph edge ({0}, {1}) has an endpoint outside its vertex set")]
    DanglingEdge(String, String),
    #[error("scaffold state space is not closed: {0}")]
    NotClosed(String),
    #[error("scaffold too large: {0} vertices (cap 4)")]
    TooLarge(usize),
    #[error("monoid is not commutative at ({0}, {1})")]
    NotCommutative(String, String),
    #[error("monoid is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("`{0}` is not a unit")]
    BadUnit(String),
    #[error("order is not bifunctorial at ({0}, {1})")]
    NotBifunctorial(String, String),
    #[error("generated frame fails its axioms: {0}")]
    BadFrame(Violation),
    #[error(transparent)]
    Frame(#[from] crate::frames::FrameError),
}

/// A subgraph of the ambient graph: a vertex subset and an edge subset whose
/// endpoints lie in it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl Subgraph {
    fn disjoint(&self, other: &Subgraph) -> bool {
        self.vertices.is_disjoint(&other.vertices)
    }

    fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }
}

/// Which preorder the scaffold frame carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaffoldOrder {
    Subgraph,
    Supergraph,
    Equality,
}

impl ScaffoldOrder {
    pub fn parse(s: &str) -> Option<ScaffoldOrder> {
        match s {
            "subgraph" => Some(ScaffoldOrder::Subgraph),
            "supergraph" => Some(ScaffoldOrder::Supergraph),
            "equality" => Some(ScaffoldOrder::Equality),
            _ => None,
        }
    }
}

/// A scaffold: ambient directed graph, distinguished edge set, an admissible
/// set of subgraphs closed under layering decomposition, and an order choice.
#[derive(Debug, Clone)]
pub struct Scaffold {
    pub vertices: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
    pub eset: BTreeSet<(usize, usize)>,
    pub x_set: Vec<Subgraph>,
    pub order: ScaffoldOrder,
}

impl Scaffold {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        eset: Vec<(usize, usize)>,
        x_set: Vec<Subgraph>,
        order: ScaffoldOrder,
    ) -> Result<Scaffold, ModelError> {
        if vertices.len() > 4 {
            return Err(ModelError::TooLarge(vertices.len()));
        }
        let nv = vertices.len();
        let name = |i: usize| vertices[i].clone();
        let edges: BTreeSet<_> = edges.into_iter().collect();
        for &(a, b) in &edges {
            if a >= nv || b >= nv {
                return Err(ModelError::UnknownVertex(format!("#{}", a.max(b))));
            }
        }
        let eset: BTreeSet<_> = eset.into_iter().collect();
        for &(a, b) in &eset {
            if !edges.contains(&(a, b)) {
                return Err(ModelError::NotAnEdge(name(a), name(b)));
            }
        }
        for sg in &x_set {
            for &(a, b) in &sg.edges {
                if !sg.vertices.contains(&a) || !sg.vertices.contains(&b) {
                    return Err(ModelError::DanglingEdge(name(a), name(b)));
                }
            }
        }
        let s = Scaffold { vertices, edges, eset, x_set, order };
        s.check_closure()?;
        Ok(s)
    }

    /// `H ⇝ K`: some vertex of K is reached from a vertex of H by an edge of
    /// the distinguished set.
    fn reaches(&self, h: &Subgraph, k: &Subgraph) -> bool {
        self.eset
            .iter()
            .any(|&(a, b)| h.vertices.contains(&a) && k.vertices.contains(&b))
    }

    /// The layering composition `H @ K`: defined when the vertex sets are
    /// disjoint, H reaches K, and K does not reach back; the result adds all
    /// distinguished edges from H to K.
    pub fn compose(&self, h: &Subgraph, k: &Subgraph) -> Option<Subgraph> {
        if !h.disjoint(k) || !self.reaches(h, k) || self.reaches(k, h) {
            return None;
        }
        let vertices: BTreeSet<usize> = h.vertices.union(&k.vertices).copied().collect();
        let mut edges: BTreeSet<(usize, usize)> = h.edges.union(&k.edges).copied().collect();
        for &(a, b) in &self.eset {
            if h.vertices.contains(&a) && k.vertices.contains(&b) {
                edges.insert((a, b));
            }
        }
        Some(Subgraph { vertices, edges })
    }

    /// The admissibility condition on X: whenever `H @ K` is defined,
    /// H, K ∈ X iff H @ K ∈ X. Membership of composites is checked over X
    /// itself; the converse direction enumerates the layering decompositions
    /// of each member.
    fn check_closure(&self) -> Result<(), ModelError> {
        for h in &self.x_set {
            for k in &self.x_set {
                if let Some(g) = self.compose(h, k) {
                    if !self.x_set.contains(&g) {
                        return Err(ModelError::NotClosed(format!(
                            "composite of two members is missing from X ({:?} @ {:?})",
                            h.vertices, k.vertices
                        )));
                    }
                }
            }
        }
        // decompositions: split the vertex set of a member in two
        for g in &self.x_set {
            let vs: Vec<usize> = g.vertices.iter().copied().collect();
            let nv = vs.len();
            for mask in 1u32..(1 << nv) {
                if mask == (1 << nv) - 1 {
                    continue;
                }
                let va: BTreeSet<usize> =
                    (0..nv).filter(|&i| mask & (1 << i) != 0).map(|i| vs[i]).collect();
                let vb: BTreeSet<usize> =
                    (0..nv).filter(|&i| mask & (1 << i) == 0).map(|i| vs[i]).collect();
                let ea: BTreeSet<(usize, usize)> = g
                    .edges
                    .iter()
                    .copied()
                    .filter(|(a, b)| va.contains(a) && va.contains(b))
                    .collect();
                let eb: BTreeSet<(usize, usize)> = g
                    .edges
                    .iter()
                    .copied()
                    .filter(|(a, b)| vb.contains(a) && vb.contains(b))
                    .collect();
                let h = Subgraph { vertices: va, edges: ea };
                let k = Subgraph { vertices: vb, edges: eb };
                if let Some(composite) = self.compose(&h, &k) {
                    if composite == *g && !(self.x_set.contains(&h) && self.x_set.contains(&k)) {
                        return Err(ModelError::NotClosed(format!(
                            "member decomposes as {:?} @ {:?} but a part is missing from X",
                            h.vertices, k.vertices
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn subgraph_name(sg: &Subgraph, vertices: &[String]) -> String {
    let vs: Vec<&str> = sg.vertices.iter().map(|&i| vertices[i].as_str()).collect();
    let es: Vec<String> = sg
        .edges
        .iter()
        .map(|&(a, b)| format!("{}>{}", vertices[a], vertices[b]))
        .collect();
    format!("<{};{}>", vs.join(","), es.join(","))
}

/// Turn a scaffold into an (I)LGL frame: states are the admissible
/// subgraphs, composition is the layering (partial deterministic), and the
/// order is the chosen subgraph/supergraph relation.
pub fn scaffold_frame(s: &Scaffold) -> Result<Frame, ModelError> {
    let n = s.x_set.len();
    let states: Vec<String> =
        s.x_set.iter().map(|sg| subgraph_name(sg, &s.vertices)).collect();
    let leq: Vec<Vec<bool>> = match s.order {
        ScaffoldOrder::Equality => identity_order(n),
        ScaffoldOrder::Subgraph => (0..n)
            .map(|i| (0..n).map(|j| s.x_set[i].is_subgraph_of(&s.x_set[j])).collect())
            .collect(),
        ScaffoldOrder::Supergraph => (0..n)
            .map(|i| (0..n).map(|j| s.x_set[j].is_subgraph_of(&s.x_set[i])).collect())
            .collect(),
    };
    let mut comp: Rel3 = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if let Some(g) = s.compose(&s.x_set[i], &s.x_set[j]) {
                if let Some(k) = s.x_set.iter().position(|x| *x == g) {
                    comp[i][j].push(k);
                }
            }
        }
    }
    let kind = Logic::new(if s.order == ScaffoldOrder::Equality {
        LogicName::Lgl
    } else {
        LogicName::Ilgl
    });
    let f = Frame::new(kind, states, leq, comp, vec![false; n], None, None, None, None, None)?;
    if let Some(v) = check_frame(&f).into_iter().next() {
        return Err(ModelError::BadFrame(v));
    }
    Ok(f)
}

/// A finite commutative partial monoid given by an operation table
/// (`None` = undefined) with a unit, plus a preorder.
pub struct PartialMonoid {
    pub elems: Vec<String>,
    pub table: Vec<Vec<Option<usize>>>,
    pub unit: usize,
    pub leq_pairs: Vec<(usize, usize)>,
}

/// Build a BI frame (BBI when the order is discrete) from a resource
/// monoid: composition is the (partial) monoid operation, E is the upwards
/// closure of the unit. The up/down closure is applied when the raw frame
/// misses the associativity axiom.
pub fn monoid_frame(m: &PartialMonoid) -> Result<Frame, ModelError> {
    let n = m.elems.len();
    let name = |i: usize| m.elems[i].clone();
    // commutativity / associativity where defined / unit
    for x in 0..n {
        for y in 0..n {
            if m.table[x][y] != m.table[y][x] {
                return Err(ModelError::NotCommutative(name(x), name(y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = m.table[x][y].and_then(|xy| m.table[xy][z]);
                let rhs = m.table[y][z].and_then(|yz| m.table[x][yz]);
                if lhs != rhs {
                    return Err(ModelError::NotAssociative(name(x), name(y), name(z)));
                }
            }
        }
    }
    for x in 0..n {
        if m.table[x][m.unit] != Some(x) {
            return Err(ModelError::BadUnit(name(m.unit)));
        }
    }
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for &(a, b) in &m.leq_pairs {
        leq[a][b] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if leq[x][y] {
                    for z in 0..n {
                        if leq[y][z] && !leq[x][z] {
                            leq[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // bifunctoriality where defined: a ≼ a', b ≼ b' imply a∘b ≼ a'∘b'
    for a in 0..n {
        for ap in 0..n {
            if !leq[a][ap] {
                continue;
            }
            for b in 0..n {
                for bp in 0..n {
                    if !leq[b][bp] {
                        continue;
                    }
                    if let (Some(ab), Some(apbp)) = (m.table[a][b], m.table[ap][bp]) {
                        if !leq[ab][apbp] {
                            return Err(ModelError::NotBifunctorial(name(a), name(b)));
                        }
                    }
                }
            }
        }
    }
    let discrete = (0..n).all(|i| (0..n).all(|j| leq[i][j] == (i == j)));
    let mut comp: Rel3 = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            if let Some(z) = m.table[x][y] {
                comp[x][y].push(z);
            }
        }
    }
    let units: Vec<bool> = (0..n).map(|i| leq[m.unit][i]).collect();
    let kind = Logic::new(if discrete { LogicName::Bbi } else { LogicName::Bi });
    let f = Frame::new(
        kind,
        m.elems.clone(),
        leq,
        comp,
        units,
        None,
        None,
        None,
        None,
        None,
    )?;
    let f = if check_frame(&f).is_empty() { f } else { updown_closure_raw(&f)? };
    if let Some(v) = check_frame(&f).into_iter().next() {
        return Err(ModelError::BadFrame(v));
    }
    Ok(f)
}

// The closure construction without the validity precondition; monoid frames
// may need it exactly when the raw frame is not yet a BI frame.
fn updown_closure_raw(f: &Frame) -> Result<Frame, ModelError> {
    let n = f.n();
    let mut comp: Rel3 = vec![vec![Vec::new(); n]; n];
    for y in 0..n {
        for z in 0..n {
            for x in 0..n {
                let mem = (0..n).any(|xp| {
                    f.le(xp, x)
                        && (0..n).any(|yp| {
                            f.le(y, yp)
                                && (0..n).any(|zp| f.le(z, zp) && f.comp[yp][zp].contains(&xp))
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

/// The additive monoid on {0..cap} with addition undefined past the cap,
/// ordered by ≤. A standard finite resource monoid.
pub fn capped_nat_monoid(cap: usize) -> PartialMonoid {
    let n = cap + 1;
    let elems: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let table: Vec<Vec<Option<usize>>> = (0..n)
        .map(|x| (0..n).map(|y| (x + y <= cap).then_some(x + y)).collect())
        .collect();
    let leq_pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    PartialMonoid { elems, table, unit: 0, leq_pairs }
}

/// Curated library of small frames, each passing its kind's checks.
pub fn sample_library() -> Vec<(String, Frame)> {
    let mut out: Vec<(String, Frame)> = Vec::new();

    // two-point BBI frame: e∘e={e}, e∘a=a∘e={a}, a∘a=∅
    let bbi2 = {
        let mut comp: Rel3 = vec![vec![Vec::new(); 2]; 2];
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
    };
    out.push(("bbi-2pt".into(), bbi2.clone()));

    out.push(("cbi-1pt".into(), Frame::point(Logic::new(LogicName::Cbi))));

    // two-point CKBI frame: parallel composition as in bbi-2pt, sequential
    // composition e▷x = x▷e = {x}, a▷a = ∅
    let ckbi2 = {
        let mut seq: Rel3 = vec![vec![Vec::new(); 2]; 2];
        seq[0][0] = vec![0];
        seq[0][1] = vec![1];
        seq[1][0] = vec![1];
        Frame::new(
            Logic::new(LogicName::Ckbi),
            vec!["e".into(), "a".into()],
            identity_order(2),
            bbi2.comp.clone(),
            vec![true, false],
            None,
            None,
            None,
            Some(seq),
            None,
        )
        .unwrap()
    };
    out.push(("ckbi-2pt".into(), ckbi2));

    // one-point BiBBI frame satisfying every subclassical frame property
    let bibbi1 = {
        let mut comp: Rel3 = vec![vec![Vec::new(); 1]; 1];
        comp[0][0] = vec![0];
        let nabla = comp.clone();
        Frame::new(
            Logic::build(
                LogicName::BiBbi,
                crate::logic::SigmaAxiom::ALL,
                crate::logic::ModalClass::None,
            )
            .unwrap(),
            vec!["e".into()],
            identity_order(1),
            comp,
            vec![true],
            None,
            Some(nabla),
            Some(vec![true]),
            None,
            None,
        )
        .unwrap()
    };
    out.push(("bibbi-1pt-sigma".into(), bibbi1));

    // two-point SML frame with an S4 accessibility relation
    let sml2 = {
        Frame::new(
            Logic::with_modal(LogicName::Sml, crate::logic::ModalClass::S4).unwrap(),
            vec!["e".into(), "a".into()],
            identity_order(2),
            bbi2.comp.clone(),
            vec![true, false],
            None,
            None,
            None,
            None,
            Some(vec![vec![true, true], vec![false, true]]),
        )
        .unwrap()
    };
    out.push(("sml-2pt-s4".into(), sml2));

    // two-point CBI frame: the swap involution, with -e = a realising the
    // derived infinity set {a}
    let cbi2 = Frame::new(
        Logic::new(LogicName::Cbi),
        vec!["e".into(), "a".into()],
        identity_order(2),
        bbi2.comp.clone(),
        vec![true, false],
        Some(vec![1, 0]),
        None,
        None,
        None,
        None,
    )
    .unwrap();
    out.push(("cbi-2pt".into(), cbi2));

    // intuitionistic two-chain ILGL frame with empty composition
    let ilgl2 = Frame::new(
        Logic::new(LogicName::Ilgl),
        vec!["x".into(), "y".into()],
        vec![vec![true, true], vec![false, true]],
        vec![vec![Vec::new(); 2]; 2],
        vec![false, false],
        None,
        None,
        None,
        None,
        None,
    )
    .unwrap();
    out.push(("ilgl-2chain".into(), ilgl2));

    // capped additive monoid as a BI frame
    out.push((
        "bi-monoid-cap2".into(),
        monoid_frame(&capped_nat_monoid(2)).expect("capped monoid is a BI frame"),
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::atom;
    use crate::frames::{satisfies, Model, Valuation};

    fn two_vertex_scaffold(order: ScaffoldOrder) -> Scaffold {
        // u → v with the edge distinguished; X = {{u}, {v}, {u,v}+edge}
        let sg_u = Subgraph { vertices: [0].into(), edges: BTreeSet::new() };
        let sg_v = Subgraph { vertices: [1].into(), edges: BTreeSet::new() };
        let sg_uv = Subgraph { vertices: [0, 1].into(), edges: [(0, 1)].into() };
        Scaffold::new(
            vec!["u".into(), "v".into()],
            vec![(0, 1)],
            vec![(0, 1)],
            vec![sg_u, sg_v, sg_uv],
            order,
        )
        .unwrap()
    }

    #[test]
    fn layering_is_directional() {
        let s = two_vertex_scaffold(ScaffoldOrder::Equality);
        let u = &s.x_set[0];
        let v = &s.x_set[1];
        assert!(s.compose(u, v).is_some());
        assert!(s.compose(v, u).is_none());
        let f = scaffold_frame(&s).unwrap();
        assert_eq!(f.comp[0][1], vec![2]);
        assert!(f.comp[1][0].is_empty());
        // composition is partial deterministic
        assert!(f.comp.iter().flatten().all(|cell| cell.len() <= 1));
    }

    #[test]
    fn empty_eset_means_empty_composition() {
        let sg_u = Subgraph { vertices: [0].into(), edges: BTreeSet::new() };
        let sg_v = Subgraph { vertices: [1].into(), edges: BTreeSet::new() };
        let s = Scaffold::new(
            vec!["u".into(), "v".into()],
            vec![(0, 1)],
            vec![],
            vec![sg_u, sg_v],
            ScaffoldOrder::Subgraph,
        )
        .unwrap();
        let f = scaffold_frame(&s).unwrap();
        assert!(f.comp.iter().flatten().all(|cell| cell.is_empty()));
    }

    #[test]
    fn layering_distinguishes_star_order() {
        // p*q vs q*p under V(p) = {u-layer}, V(q) = {v-layer}
        let s = two_vertex_scaffold(ScaffoldOrder::Equality);
        let f = scaffold_frame(&s).unwrap();
        let mut v = Valuation::new();
        v.set("p", vec![true, false, false]);
        v.set("q", vec![false, true, false]);
        let m = Model::strong(f, v).unwrap();
        let pq = crate::formula::Formula::star(atom("p"), atom("q"));
        let qp = crate::formula::Formula::star(atom("q"), atom("p"));
        assert!(satisfies(&m, 2, &pq));
        assert!(!satisfies(&m, 2, &qp));
    }

    #[test]
    fn closure_violation_detected() {
        let sg_u = Subgraph { vertices: [0].into(), edges: BTreeSet::new() };
        let sg_v = Subgraph { vertices: [1].into(), edges: BTreeSet::new() };
        // missing the composite {u,v}
        let r = Scaffold::new(
            vec!["u".into(), "v".into()],
            vec![(0, 1)],
            vec![(0, 1)],
            vec![sg_u, sg_v],
            ScaffoldOrder::Equality,
        );
        assert!(matches!(r, Err(ModelError::NotClosed(_))));
    }

    #[test]
    fn capped_monoid_gives_bi_frame() {
        let f = monoid_frame(&capped_nat_monoid(2)).unwrap();
        assert!(check_frame(&f).is_empty());
        assert_eq!(f.kind.name(), LogicName::Bi);
        // E is the up-closure of 0, which is everything under ≤
        assert!(f.units.iter().all(|&b| b));
    }

    #[test]
    fn trivial_monoid_gives_point() {
        let m = PartialMonoid {
            elems: vec!["e".into()],
            table: vec![vec![Some(0)]],
            unit: 0,
            leq_pairs: vec![],
        };
        let f = monoid_frame(&m).unwrap();
        assert_eq!(f.n(), 1);
        assert_eq!(f.kind.name(), LogicName::Bbi);
    }

    #[test]
    fn discrete_monoid_gives_bbi_frame() {
        // {e, a} with a∘a undefined
        let m = PartialMonoid {
            elems: vec!["e".into(), "a".into()],
            table: vec![vec![Some(0), Some(1)], vec![Some(1), None]],
            unit: 0,
            leq_pairs: vec![],
        };
        let f = monoid_frame(&m).unwrap();
        assert_eq!(f.kind.name(), LogicName::Bbi);
        assert!(check_frame(&f).is_empty());
    }

    #[test]
    fn library_samples_pass_their_checks() {
        for (name, f) in sample_library() {
            let viols = check_frame(&f);
            assert!(viols.is_empty(), "{name}: {viols:?}");
        }
    }

    #[test]
    fn ckbi_sample_satisfies_exchange() {
        let lib = sample_library();
        let (_, f) = lib.iter().find(|(n, _)| n == "ckbi-2pt").unwrap();
        assert!(check_frame(f).is_empty());
    }

    #[test]
    fn cbi_sample_has_empty_u() {
        let lib = sample_library();
        let (_, f) = lib.iter().find(|(n, _)| n == "cbi-1pt").unwrap();
        let minus = f.minus.as_ref().unwrap();
        // U = {x | -x ∉ E} is empty because -e = e ∈ E
        assert!((0..f.n()).all(|x| f.units[minus[x]]));
    }
}
