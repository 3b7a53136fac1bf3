//! The separation-logic instance: finite heaps and stores, both pointer
//! semantics (intuitionistic and classical points-to), the store-indexed
//! frame with its context-growing satisfaction, quantifier adjoints, and the
//! separation-property checks.

use crate::formula::{Formula, Term};
use crate::frames::{identity_order, Frame, Rel3};
use crate::logic::{Logic, LogicName};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeapError {
    #[error("universe must have at least one value")]
    EmptyUniverse,
    #[error("locations must be a subset of values (offender: {0})")]
    LocNotVal(i64),
    #[error("universe too large: {0} heaps (cap {1})")]
    TooManyHeaps(usize, usize),
    #[error("free variable `{0}` is not in the store context")]
    UnboundVariable(String),
    #[error("term arithmetic requires a modular universe (set `modulus`)")]
    NoArithmetic,
    #[error("formula is not in the pointer fragment: {0}")]
    NotPointer(#[from] crate::formula::SignatureError),
    #[error("heap maps location {0} outside the universe")]
    BadHeap(i64),
    #[error("store value {0} outside the universe")]
    BadStore(i64),
}

const HEAP_CAP: usize = 4096;

/// Finite universe of locations and values, Loc ⊆ Val. Arithmetic on terms
/// is available only when `modulus` is set, and then works mod that value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapUniverse {
    pub locs: Vec<i64>,
    pub vals: Vec<i64>,
    pub modulus: Option<i64>,
}

impl HeapUniverse {
    pub fn new(
        mut locs: Vec<i64>,
        mut vals: Vec<i64>,
        modulus: Option<i64>,
    ) -> Result<HeapUniverse, HeapError> {
        locs.sort_unstable();
        locs.dedup();
        vals.sort_unstable();
        vals.dedup();
        if vals.is_empty() {
            return Err(HeapError::EmptyUniverse);
        }
        if let Some(&l) = locs.iter().find(|l| !vals.contains(l)) {
            return Err(HeapError::LocNotVal(l));
        }
        let count = vals
            .len()
            .checked_add(1)
            .and_then(|k| k.checked_pow(locs.len() as u32))
            .unwrap_or(usize::MAX);
        if count > HEAP_CAP {
            return Err(HeapError::TooManyHeaps(count, HEAP_CAP));
        }
        Ok(HeapUniverse { locs, vals, modulus })
    }
}

/// A heap: finite partial map Loc → Val.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Heap(pub BTreeMap<i64, i64>);

impl Heap {
    pub fn empty() -> Heap {
        Heap(BTreeMap::new())
    }

    pub fn dom(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn disjoint(&self, other: &Heap) -> bool {
        self.0.keys().all(|k| !other.0.contains_key(k))
    }

    /// `self ⊑ other`: graph inclusion.
    pub fn subheap(&self, other: &Heap) -> bool {
        self.0.iter().all(|(k, v)| other.0.get(k) == Some(v))
    }
}

impl fmt::Display for Heap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "[{}]", cells.join(","))
    }
}

/// Union of heaps with disjoint domains; undefined on overlap.
pub fn compose_heaps(h1: &Heap, h2: &Heap) -> Option<Heap> {
    if !h1.disjoint(h2) {
        return None;
    }
    let mut m = h1.0.clone();
    m.extend(h2.0.iter().map(|(&k, &v)| (k, v)));
    Some(Heap(m))
}

/// Every heap over the universe, in a stable order (domains by subset mask,
/// values lexicographically).
pub fn all_heaps(u: &HeapUniverse) -> Vec<Heap> {
    let nl = u.locs.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << nl) {
        let dom: Vec<i64> =
            (0..nl).filter(|&i| mask & (1 << i) != 0).map(|i| u.locs[i]).collect();
        let k = dom.len();
        let mut idx = vec![0usize; k];
        loop {
            let heap = Heap(
                dom.iter().copied().zip(idx.iter().map(|&i| u.vals[i])).collect(),
            );
            out.push(heap);
            let mut c = 0;
            loop {
                if c == k {
                    break;
                }
                idx[c] += 1;
                if idx[c] < u.vals.len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == k {
                break;
            }
        }
    }
    out
}

/// A store: ordered variable context with a value vector of equal length.
/// Quantifier bindings shadow earlier entries of the same name, so lookups
/// resolve to the rightmost occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Store {
    pub ctx: Vec<String>,
    pub vals: Vec<i64>,
}

impl Store {
    pub fn new(ctx: Vec<String>, vals: Vec<i64>) -> Store {
        assert_eq!(ctx.len(), vals.len(), "store vector must match its context");
        Store { ctx, vals }
    }

    pub fn lookup(&self, var: &str) -> Option<i64> {
        self.ctx.iter().rposition(|v| v == var).map(|i| self.vals[i])
    }

    /// `[s | v ↦ a]`: update in place when bound, extend otherwise.
    pub fn update(&self, var: &str, val: i64) -> Store {
        let mut s = self.clone();
        match s.ctx.iter().rposition(|v| v == var) {
            Some(i) => s.vals[i] = val,
            None => {
                s.ctx.push(var.to_string());
                s.vals.push(val);
            }
        }
        s
    }
}

/// Which pointer semantics: intuitionistic (BI) or classical (BBI).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Bi,
    Bbi,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Bi => "bi",
            Variant::Bbi => "bbi",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "bi" | "BI" => Some(Variant::Bi),
            "bbi" | "BBI" => Some(Variant::Bbi),
            _ => None,
        }
    }
}

fn eval_term(t: &Term, s: &Store, u: &HeapUniverse) -> Result<i64, HeapError> {
    Ok(match t {
        Term::Var(v) => s.lookup(v).ok_or_else(|| HeapError::UnboundVariable(v.clone()))?,
        Term::Const(n) => match u.modulus {
            Some(m) => n.rem_euclid(m),
            None => *n,
        },
        Term::Add(a, b) | Term::Sub(a, b) => {
            let m = u.modulus.ok_or(HeapError::NoArithmetic)?;
            let va = eval_term(a, s, u)?;
            let vb = eval_term(b, s, u)?;
            let r = if matches!(t, Term::Add(..)) { va + vb } else { va - vb };
            r.rem_euclid(m)
        }
    })
}

/// Pointer-logic satisfaction `s, h ⊨ φ` by direct clause evaluation.
/// Quantifiers range over the universe's values; the intuitionistic variant
/// quantifies heap extensions in `->` and reads `emp` as `h ⊒ []`.
pub fn pointer_sat(
    u: &HeapUniverse,
    s: &Store,
    h: &Heap,
    f: &Formula,
    variant: Variant,
) -> Result<bool, HeapError> {
    crate::formula::check_pointer_signature(f)?;
    for l in h.dom() {
        if !u.locs.contains(&l) {
            return Err(HeapError::BadHeap(l));
        }
    }
    for fv in f.free_vars() {
        if s.lookup(&fv).is_none() {
            return Err(HeapError::UnboundVariable(fv));
        }
    }
    pointer_sat_rec(u, s, h, f, variant)
}

fn pointer_sat_rec(
    u: &HeapUniverse,
    s: &Store,
    h: &Heap,
    f: &Formula,
    variant: Variant,
) -> Result<bool, HeapError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::MUnit => match variant {
            Variant::Bi => true, // every heap extends []
            Variant::Bbi => h.0.is_empty(),
        },
        Formula::Eq(t1, t2) => eval_term(t1, s, u)? == eval_term(t2, s, u)?,
        Formula::PointsTo(t1, t2) => {
            let l = eval_term(t1, s, u)?;
            let v = eval_term(t2, s, u)?;
            match variant {
                Variant::Bi => h.0.get(&l) == Some(&v),
                Variant::Bbi => h.0.len() == 1 && h.0.get(&l) == Some(&v),
            }
        }
        Formula::And(a, b) => {
            pointer_sat_rec(u, s, h, a, variant)? && pointer_sat_rec(u, s, h, b, variant)?
        }
        Formula::Or(a, b) => {
            pointer_sat_rec(u, s, h, a, variant)? || pointer_sat_rec(u, s, h, b, variant)?
        }
        Formula::Imp(a, b) => match variant {
            Variant::Bi => {
                for hp in heap_extensions(u, h) {
                    if pointer_sat_rec(u, s, &hp, a, variant)?
                        && !pointer_sat_rec(u, s, &hp, b, variant)?
                    {
                        return Ok(false);
                    }
                }
                true
            }
            Variant::Bbi => {
                !pointer_sat_rec(u, s, h, a, variant)? || pointer_sat_rec(u, s, h, b, variant)?
            }
        },
        Formula::Not(a) => {
            pointer_sat_rec(u, s, h, &Formula::imp((**a).clone(), Formula::Bot), variant)?
        }
        Formula::Star(a, b) => {
            for (h1, h2) in heap_splits(h) {
                if pointer_sat_rec(u, s, &h1, a, variant)?
                    && pointer_sat_rec(u, s, &h2, b, variant)?
                {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Wand(a, b) => {
            for hp in heaps_disjoint_from(u, h) {
                if pointer_sat_rec(u, s, &hp, a, variant)? {
                    let joined = compose_heaps(h, &hp).expect("disjoint by construction");
                    if !pointer_sat_rec(u, s, &joined, b, variant)? {
                        return Ok(false);
                    }
                }
            }
            true
        }
        Formula::Exists(v, a) => {
            for &val in &u.vals {
                if pointer_sat_rec(u, &s.update(v, val), h, a, variant)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Forall(v, a) => {
            for &val in &u.vals {
                if !pointer_sat_rec(u, &s.update(v, val), h, a, variant)? {
                    return Ok(false);
                }
            }
            true
        }
        _ => unreachable!("pointer signature check admits no other nodes"),
    })
}

/// All splits h = h1 · h2 with disjoint domains.
pub fn heap_splits(h: &Heap) -> Vec<(Heap, Heap)> {
    let cells: Vec<(i64, i64)> = h.0.iter().map(|(&k, &v)| (k, v)).collect();
    let n = cells.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut h1 = BTreeMap::new();
        let mut h2 = BTreeMap::new();
        for (i, &(k, v)) in cells.iter().enumerate() {
            if mask & (1 << i) != 0 {
                h1.insert(k, v);
            } else {
                h2.insert(k, v);
            }
        }
        out.push((Heap(h1), Heap(h2)));
    }
    out
}

/// All heaps over the universe with domain disjoint from h.
pub fn heaps_disjoint_from(u: &HeapUniverse, h: &Heap) -> Vec<Heap> {
    let free: Vec<i64> = u.locs.iter().copied().filter(|l| !h.0.contains_key(l)).collect();
    let sub = HeapUniverse { locs: free, vals: u.vals.clone(), modulus: u.modulus };
    all_heaps(&sub)
}

/// All extensions h' ⊒ h within the universe.
pub fn heap_extensions(u: &HeapUniverse, h: &Heap) -> Vec<Heap> {
    heaps_disjoint_from(u, h)
        .into_iter()
        .map(|rest| compose_heaps(h, &rest).expect("disjoint by construction"))
        .collect()
}

/// The frame of all heaps: `(H, ⊎, ⊑, H)` for the BI variant and
/// `(H, ⊎, {[]})` for the BBI variant.
pub fn heap_frame(u: &HeapUniverse, variant: Variant) -> Frame {
    let heaps = all_heaps(u);
    let n = heaps.len();
    let states: Vec<String> = heaps.iter().map(|h| h.to_string()).collect();
    let leq = match variant {
        Variant::Bi => (0..n)
            .map(|i| (0..n).map(|j| heaps[i].subheap(&heaps[j])).collect())
            .collect(),
        Variant::Bbi => identity_order(n),
    };
    let mut comp: Rel3 = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if let Some(h) = compose_heaps(&heaps[i], &heaps[j]) {
                let k = heaps.iter().position(|x| *x == h).expect("closed under union");
                comp[i][j].push(k);
            }
        }
    }
    let units = match variant {
        Variant::Bi => vec![true; n],
        Variant::Bbi => heaps.iter().map(|h| h.0.is_empty()).collect(),
    };
    let kind = Logic::new(match variant {
        Variant::Bi => LogicName::Bi,
        Variant::Bbi => LogicName::Bbi,
    });
    Frame::new(kind, states, leq, comp, units, None, None, None, None, None)
        .expect("heap frame is structurally valid")
}

/// The store-indexed frame at context size `n`: states are pairs of a value
/// vector and a heap, composition requires equal vectors, and the order is
/// heap extension under a fixed vector (BI) or equality (BBI).
pub struct StoreFrame {
    pub universe: HeapUniverse,
    pub ctx_len: usize,
    pub variant: Variant,
    pub states: Vec<(Vec<i64>, Heap)>,
    pub frame: Frame,
}

fn all_vectors(u: &HeapUniverse, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for &val in &u.vals {
                let mut w = v.clone();
                w.push(val);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn store_frame(u: &HeapUniverse, n: usize, variant: Variant) -> StoreFrame {
    let heaps = all_heaps(u);
    let vecs = all_vectors(u, n);
    let mut states = Vec::new();
    for v in &vecs {
        for h in &heaps {
            states.push((v.clone(), h.clone()));
        }
    }
    let k = states.len();
    let names: Vec<String> = states
        .iter()
        .map(|(v, h)| {
            let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({}|{})", vs.join(","), h)
        })
        .collect();
    let leq = match variant {
        Variant::Bi => (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| states[i].0 == states[j].0 && states[i].1.subheap(&states[j].1))
                    .collect()
            })
            .collect(),
        Variant::Bbi => identity_order(k),
    };
    let mut comp: Rel3 = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if states[i].0 != states[j].0 {
                continue;
            }
            if let Some(h) = compose_heaps(&states[i].1, &states[j].1) {
                let target = (states[i].0.clone(), h);
                let t = states.iter().position(|x| *x == target).expect("closed");
                comp[i][j].push(t);
            }
        }
    }
    let units = match variant {
        Variant::Bi => vec![true; k],
        Variant::Bbi => states.iter().map(|(_, h)| h.0.is_empty()).collect(),
    };
    let kind = Logic::new(match variant {
        Variant::Bi => LogicName::Bi,
        Variant::Bbi => LogicName::Bbi,
    });
    let frame = Frame::new(kind, names, leq, comp, units, None, None, None, None, None)
        .expect("store frame is structurally valid");
    StoreFrame { universe: u.clone(), ctx_len: n, variant, states, frame }
}

impl StoreFrame {
    pub fn state_index(&self, v: &[i64], h: &Heap) -> Option<usize> {
        self.states.iter().position(|(w, g)| w == v && g == h)
    }

    /// The action of the projection that drops the last coordinate.
    pub fn project(&self, state: usize) -> (Vec<i64>, Heap) {
        let (v, h) = &self.states[state];
        assert!(self.ctx_len >= 1, "projection needs a nonempty context");
        (v[..v.len() - 1].to_vec(), h.clone())
    }

    /// The action of the diagonal that duplicates the last coordinate.
    pub fn diagonal(&self, state: usize) -> (Vec<i64>, Heap) {
        let (v, h) = &self.states[state];
        let mut w = v.clone();
        w.push(*v.last().expect("diagonal needs a nonempty context"));
        (w, h.clone())
    }
}

/// Satisfaction on the store-indexed frame, context-growing clauses for the
/// quantifiers und equality-via-diagonal-range. The context lists the free
/// variables in vector order; bound variables extend it on the right and
/// shadow by name.
pub fn indexed_sat(
    u: &HeapUniverse,
    ctx: &[String],
    vec: &[i64],
    h: &Heap,
    f: &Formula,
    variant: Variant,
) -> Result<bool, HeapError> {
    crate::formula::check_pointer_signature(f)?;
    assert_eq!(ctx.len(), vec.len(), "vector must match its context");
    for fv in f.free_vars() {
        if !ctx.contains(&fv) {
            return Err(HeapError::UnboundVariable(fv));
        }
    }
    indexed_sat_rec(u, ctx, vec, h, f, variant)
}

fn indexed_lookup(ctx: &[String], vec: &[i64], var: &str) -> Result<i64, HeapError> {
    ctx.iter()
        .rposition(|v| v == var)
        .map(|i| vec[i])
        .ok_or_else(|| HeapError::UnboundVariable(var.to_string()))
}

fn eval_term_indexed(
    t: &Term,
    ctx: &[String],
    vec: &[i64],
    u: &HeapUniverse,
) -> Result<i64, HeapError> {
    Ok(match t {
        Term::Var(v) => indexed_lookup(ctx, vec, v)?,
        Term::Const(n) => match u.modulus {
            Some(m) => n.rem_euclid(m),
            None => *n,
        },
        Term::Add(a, b) | Term::Sub(a, b) => {
            let m = u.modulus.ok_or(HeapError::NoArithmetic)?;
            let va = eval_term_indexed(a, ctx, vec, u)?;
            let vb = eval_term_indexed(b, ctx, vec, u)?;
            let r = if matches!(t, Term::Add(..)) { va + vb } else { va - vb };
            r.rem_euclid(m)
        }
    })
}

fn indexed_sat_rec(
    u: &HeapUniverse,
    ctx: &[String],
    vec: &[i64],
    h: &Heap,
    f: &Formula,
    variant: Variant,
) -> Result<bool, HeapError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bot => false,
        // x ∈ E: everything for BI, empty-heap fibre for BBI
        Formula::MUnit => match variant {
            Variant::Bi => true,
            Variant::Bbi => h.0.is_empty(),
        },
        // t = t' iff the pairing map lands in the range of the diagonal
        Formula::Eq(t1, t2) => {
            eval_term_indexed(t1, ctx, vec, u)? == eval_term_indexed(t2, ctx, vec, u)?
        }
        Formula::PointsTo(t1, t2) => {
            let l = eval_term_indexed(t1, ctx, vec, u)?;
            let v = eval_term_indexed(t2, ctx, vec, u)?;
            match variant {
                Variant::Bi => h.0.get(&l) == Some(&v),
                Variant::Bbi => h.0.len() == 1 && h.0.get(&l) == Some(&v),
            }
        }
        Formula::And(a, b) => {
            indexed_sat_rec(u, ctx, vec, h, a, variant)?
                && indexed_sat_rec(u, ctx, vec, h, b, variant)?
        }
        Formula::Or(a, b) => {
            indexed_sat_rec(u, ctx, vec, h, a, variant)?
                || indexed_sat_rec(u, ctx, vec, h, b, variant)?
        }
        Formula::Imp(a, b) => match variant {
            Variant::Bi => {
                for hp in heap_extensions(u, h) {
                    if indexed_sat_rec(u, ctx, vec, &hp, a, variant)?
                        && !indexed_sat_rec(u, ctx, vec, &hp, b, variant)?
                    {
                        return Ok(false);
                    }
                }
                true
            }
            Variant::Bbi => {
                !indexed_sat_rec(u, ctx, vec, h, a, variant)?
                    || indexed_sat_rec(u, ctx, vec, h, b, variant)?
            }
        },
        Formula::Not(a) => {
            indexed_sat_rec(u, ctx, vec, h, &Formula::imp((**a).clone(), Formula::Bot), variant)?
        }
        // exists x' ≼ x with x' ∈ y ∘ z; under a fixed vector this means a
        // subheap that splits
        Formula::Star(a, b) => {
            let lowers: Vec<Heap> = match variant {
                Variant::Bi => all_heaps(u).into_iter().filter(|g| g.subheap(h)).collect(),
                Variant::Bbi => vec![h.clone()],
            };
            for h0 in lowers {
                for (h1, h2) in heap_splits(&h0) {
                    if indexed_sat_rec(u, ctx, vec, &h1, a, variant)?
                        && indexed_sat_rec(u, ctx, vec, &h2, b, variant)?
                    {
                        return Ok(true);
                    }
                }
            }
            false
        }
        // for all x' ≽ x and z ∈ x' ∘ y with y ⊨ a: z ⊨ b
        Formula::Wand(a, b) => {
            let uppers: Vec<Heap> = match variant {
                Variant::Bi => heap_extensions(u, h),
                Variant::Bbi => vec![h.clone()],
            };
            for hx in uppers {
                for hy in heaps_disjoint_from(u, &hx) {
                    if indexed_sat_rec(u, ctx, vec, &hy, a, variant)? {
                        let hz = compose_heaps(&hx, &hy).expect("disjoint");
                        if !indexed_sat_rec(u, ctx, vec, &hz, b, variant)? {
                            return Ok(false);
                        }
                    }
                }
            }
            true
        }
        // there is x' in the extended frame with π(x') = x satisfying a
        Formula::Exists(v, a) => {
            let mut ctx2: Vec<String> = ctx.to_vec();
            ctx2.push(v.clone());
            for &val in &u.vals {
                let mut vec2 = vec.to_vec();
                vec2.push(val);
                if indexed_sat_rec(u, &ctx2, &vec2, h, a, variant)? {
                    return Ok(true);
                }
            }
            false
        }
        // every x' whose projection dominates x satisfies a
        Formula::Forall(v, a) => {
            let mut ctx2: Vec<String> = ctx.to_vec();
            ctx2.push(v.clone());
            let uppers: Vec<Heap> = match variant {
                Variant::Bi => heap_extensions(u, h),
                Variant::Bbi => vec![h.clone()],
            };
            for hp in uppers {
                for &val in &u.vals {
                    let mut vec2 = vec.to_vec();
                    vec2.push(val);
                    if !indexed_sat_rec(u, &ctx2, &vec2, &hp, a, variant)? {
                        return Ok(false);
                    }
                }
            }
            true
        }
        _ => unreachable!("pointer signature check admits no other nodes"),
    })
}

/// The two quantifier adjoints on up-sets of the extended store frame:
/// `exists(A) = {x | ∃y ∈ A: π(y) ≼ x}` and
/// `forall(A) = {x | ∀y: x ≼ π(y) → y ∈ A}`.
pub struct AdjointImages {
    pub exists_image: Vec<bool>,
    pub forall_image: Vec<bool>,
    pub report: Vec<crate::algebras::PropertyLine>,
}

/// Compute both adjoint images of `a` (a set of states of `ext`, up-closed
/// in the BI variant) over `base`, where `ext` extends `base` by one
/// coordinate. Verifies up-closure of the outputs, the identity of the
/// existential image with the direct image, the unit/counit laws, and both
/// adjunction equivalences against every principal up-set.
pub fn quantifier_adjoints(base: &StoreFrame, ext: &StoreFrame, a: &[bool]) -> AdjointImages {
    assert_eq!(ext.ctx_len, base.ctx_len + 1);
    assert_eq!(a.len(), ext.states.len());
    let nb = base.states.len();
    let ne = ext.states.len();
    let le_base = |i: usize, j: usize| base.frame.le(i, j);
    // π as an index map ext -> base
    let proj: Vec<usize> = (0..ne)
        .map(|i| {
            let (v, h) = ext.project(i);
            base.state_index(&v, &h).expect("projection stays in the base frame")
        })
        .collect();
    let exists_image: Vec<bool> = (0..nb)
        .map(|x| (0..ne).any(|y| a[y] && le_base(proj[y], x)))
        .collect();
    let forall_image: Vec<bool> = (0..nb)
        .map(|x| (0..ne).all(|y| !le_base(x, proj[y]) || a[y]))
        .collect();
    let mut report = Vec::new();
    let mut line = |name: &str, ok: bool| {
        report.push(crate::algebras::PropertyLine {
            name: name.to_string(),
            holds: ok,
            witness: vec![],
        });
    };
    let up_closed = |s: &[bool], frame: &Frame| {
        (0..s.len()).all(|x| !s[x] || (0..s.len()).all(|y| !frame.le(x, y) || s[y]))
    };
    line("exists image is an up-set", up_closed(&exists_image, &base.frame));
    line("forall image is an up-set", up_closed(&forall_image, &base.frame));
    // the left adjoint coincides with the direct image under π
    let direct: Vec<bool> = {
        let mut d = vec![false; nb];
        for y in 0..ne {
            if a[y] {
                d[proj[y]] = true;
            }
        }
        // close upwards for the BI variant
        (0..nb)
            .map(|x| (0..nb).any(|w| d[w] && le_base(w, x)))
            .collect()
    };
    line("exists image equals the direct image", exists_image == direct);
    // unit / counit
    line(
        "A ⊆ π⁻¹(exists A)",
        (0..ne).all(|y| !a[y] || exists_image[proj[y]]),
    );
    line(
        "π⁻¹(forall A) ⊆ A",
        (0..ne).all(|y| !forall_image[proj[y]] || a[y]),
    );
    // adjunction equivalences against every principal up-set, plus the
    // extremes and the images themselves
    let mut test_sets: Vec<Vec<bool>> = vec![
        vec![false; nb],
        vec![true; nb],
        exists_image.clone(),
        forall_image.clone(),
    ];
    for x in 0..nb {
        test_sets.push((0..nb).map(|y| le_base(x, y)).collect());
    }
    let mut exists_adj = true;
    let mut forall_adj = true;
    for b in &test_sets {
        let lhs = (0..nb).all(|x| !exists_image[x] || b[x]);
        let rhs = (0..ne).all(|y| !a[y] || b[proj[y]]);
        if lhs != rhs {
            exists_adj = false;
        }
        let lhs2 = (0..ne).all(|y| !b[proj[y]] || a[y]);
        let rhs2 = (0..nb).all(|x| !b[x] || forall_image[x]);
        if lhs2 != rhs2 {
            forall_adj = false;
        }
    }
    line("exists A ≤ B iff A ≤ π⁻¹ B", exists_adj);
    line("π⁻¹ B ≤ A iff B ≤ forall A", forall_adj);
    AdjointImages { exists_image, forall_image, report }
}

/// A term map Val^n → Val^m given coordinatewise by pointer terms over the
/// canonical variables of the source context.
pub struct TermMap {
    pub arity_in: usize,
    pub terms: Vec<Term>,
}

impl TermMap {
    pub fn apply(&self, u: &HeapUniverse, v: &[i64]) -> Result<Vec<i64>, HeapError> {
        assert_eq!(v.len(), self.arity_in);
        let ctx: Vec<String> = (0..self.arity_in).map(|i| format!("v{}", i + 1)).collect();
        self.terms.iter().map(|t| eval_term_indexed(t, &ctx, v, u)).collect()
    }
}

/// The square condition of indexed frames for the projection against a term
/// map `s: Val^n → Val^m`: in the BI variant the Pseudo Epi property, in the
/// BBI variant the quasi-pullback property.
pub fn pseudo_epi_check(
    u: &HeapUniverse,
    s: &TermMap,
    variant: Variant,
) -> Result<bool, HeapError> {
    let n = s.arity_in;
    let m = s.terms.len();
    let base_n = store_frame(u, n, variant);
    let ext_n = store_frame(u, n + 1, variant);
    let base_m = store_frame(u, m, variant);
    let ext_m = store_frame(u, m + 1, variant);
    let le = |sf: &StoreFrame, a: usize, b: usize| sf.frame.le(a, b);
    for (x_idx, (xv, xh)) in base_n.states.iter().enumerate() {
        let sx = s.apply(u, xv)?;
        let sx_idx = base_m.state_index(&sx, xh).expect("term map stays in universe");
        for (y_idx, (yv, yh)) in ext_m.states.iter().enumerate() {
            let proj_y = base_m
                .state_index(&yv[..m], yh)
                .expect("projection stays in the frame");
            if !le(&base_m, proj_y, sx_idx) {
                continue;
            }
            // need z over n+1 coordinates with π(z) ≼ x and y ≼ (s × id)(z)
            let found = ext_n.states.iter().any(|(zv, zh)| {
                let proj_z = base_n
                    .state_index(&zv[..n], zh)
                    .expect("projection stays in the frame");
                if !le(&base_n, proj_z, x_idx) {
                    return false;
                }
                let mut sz = match s.apply(u, &zv[..n]) {
                    Ok(v) => v,
                    Err(_) => return false,
                };
                sz.push(zv[n]);
                match ext_m.state_index(&sz, zh) {
                    Some(sz_idx) => le(&ext_m, y_idx, sz_idx),
                    None => false,
                }
            });
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The six separation properties of the classical memory model, checked on
/// any unit-bearing frame. Witnesses name the offending states.
pub fn separation_properties(f: &Frame) -> Vec<crate::algebras::PropertyLine> {
    let n = f.n();
    let name = |i: usize| f.states[i].clone();
    let mut out = Vec::new();
    let mut line = |nm: &str, witness: Option<Vec<usize>>| {
        out.push(crate::algebras::PropertyLine {
            name: nm.to_string(),
            holds: witness.is_none(),
            witness: witness.map(|w| w.iter().map(|&i| name(i)).collect()).unwrap_or_default(),
        });
    };
    // Partial deterministic: w, w' ∈ w1 ∘ w2 implies w = w'
    let mut pd = None;
    'pd: for x in 0..n {
        for y in 0..n {
            if f.comp[x][y].len() > 1 {
                pd = Some(vec![x, y]);
                break 'pd;
            }
        }
    }
    line("Partial deterministic", pd);
    // Cancellative: w∘w1 ∩ w∘w2 ≠ ∅ implies w1 = w2
    let mut canc = None;
    'canc: for w in 0..n {
        for w1 in 0..n {
            for w2 in 0..n {
                if w1 != w2 && f.comp[w][w1].iter().any(|z| f.comp[w][w2].contains(z)) {
                    canc = Some(vec![w, w1, w2]);
                    break 'canc;
                }
            }
        }
    }
    line("Cancellative", canc);
    // Indivisible units: (w ∘ w') ∩ E ≠ ∅ implies w ∈ E
    let mut iu = None;
    'iu: for w in 0..n {
        for wp in 0..n {
            if f.comp[w][wp].iter().any(|&z| f.units[z]) && !f.units[w] {
                iu = Some(vec![w, wp]);
                break 'iu;
            }
        }
    }
    line("Indivisible units", iu);
    // Disjointness: w ∘ w ≠ ∅ implies w ∈ E
    line(
        "Disjointness",
        (0..n).find(|&w| !f.comp[w][w].is_empty() && !f.units[w]).map(|w| vec![w]),
    );
    // Divisibility: every w ∉ E splits into two non-units
    line(
        "Divisibility",
        (0..n)
            .find(|&w| {
                !f.units[w]
                    && !(0..n).any(|w1| {
                        !f.units[w1]
                            && (0..n)
                                .any(|w2| !f.units[w2] && f.comp[w1][w2].contains(&w))
                    })
            })
            .map(|w| vec![w]),
    );
    // Cross split
    let mut cs = None;
    'cs: for t in 0..n {
        for u_ in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if !f.comp[t][u_].iter().any(|z| f.comp[v][w].contains(z)) {
                        continue;
                    }
                    let ok = (0..n).any(|tv| {
                        (0..n).any(|tw| {
                            f.comp[tv][tw].contains(&t)
                                && (0..n).any(|uv| {
                                    (0..n).any(|uw| {
                                        f.comp[uv][uw].contains(&u_)
                                            && f.comp[tv][uv].contains(&v)
                                            && f.comp[tw][uw].contains(&w)
                                    })
                                })
                        })
                    });
                    if !ok {
                        cs = Some(vec![t, u_, v, w]);
                        break 'cs;
                    }
                }
            }
        }
    }
    line("Cross split", cs);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{check_frame, check_udmf};
    use crate::parser::parse_pointer_formula;

    fn u12() -> HeapUniverse {
        HeapUniverse::new(vec![1], vec![0, 1], None).unwrap()
    }

    #[test]
    fn compose_examples() {
        let h1 = Heap([(1, 5)].into_iter().collect());
        let h2 = Heap([(2, 7)].into_iter().collect());
        let h12 = compose_heaps(&h1, &h2).unwrap();
        assert_eq!(h12.0.len(), 2);
        let h1b = Heap([(1, 6)].into_iter().collect());
        assert_eq!(compose_heaps(&h1, &h1b), None);
        assert_eq!(compose_heaps(&h1, &Heap::empty()), Some(h1));
    }

    #[test]
    fn heap_frame_counts_and_axioms() {
        // |Loc| = 1, |Val| = 2: heaps are [], {l↦v1}, {l↦v2}
        let u = u12();
        let f = heap_frame(&u, Variant::Bbi);
        assert_eq!(f.n(), 3);
        assert!(check_frame(&f).is_empty());
        let g = heap_frame(&u, Variant::Bi);
        assert_eq!(g.unit_list().len(), 3);
        assert!(check_frame(&g).is_empty());
        assert!(check_udmf(&g).is_empty());
    }

    #[test]
    fn pointsto_variants() {
        let u = HeapUniverse::new(vec![1, 2], vec![0, 1, 2, 5, 7], None).unwrap();
        let s = Store::new(vec!["x".into()], vec![1]);
        let h = Heap([(1, 5)].into_iter().collect());
        let f = parse_pointer_formula("x |-> 5").unwrap();
        assert!(pointer_sat(&u, &s, &h, &f, Variant::Bi).unwrap());
        assert!(pointer_sat(&u, &s, &h, &f, Variant::Bbi).unwrap());
        let h2 = Heap([(1, 5), (2, 7)].into_iter().collect());
        assert!(pointer_sat(&u, &s, &h2, &f, Variant::Bi).unwrap());
        assert!(!pointer_sat(&u, &s, &h2, &f, Variant::Bbi).unwrap());
        // Emp collapses to top in the intuitionistic reading
        let emp = parse_pointer_formula("emp").unwrap();
        assert!(pointer_sat(&u, &s, &h2, &emp, Variant::Bi).unwrap());
        assert!(!pointer_sat(&u, &s, &h2, &emp, Variant::Bbi).unwrap());
    }

    #[test]
    fn store_frame_counts() {
        let u = u12();
        let sf = store_frame(&u, 1, Variant::Bbi);
        assert_eq!(sf.states.len(), 2 * 3);
        assert!(check_frame(&sf.frame).is_empty());
        let sf0 = store_frame(&u, 0, Variant::Bbi);
        assert_eq!(sf0.states.len(), 3);
        let bi = store_frame(&u, 1, Variant::Bi);
        assert!(check_frame(&bi.frame).is_empty());
    }

    #[test]
    fn indexed_exists_example() {
        let u = u12();
        let ctx = vec!["x".to_string()];
        let h = Heap([(1, 1)].into_iter().collect());
        let f = parse_pointer_formula("exists v. v |-> 1").unwrap();
        assert!(indexed_sat(&u, &ctx, &[1], &h, &f, Variant::Bbi).unwrap());
        let g = parse_pointer_formula("exists v. v |-> 0").unwrap();
        assert!(!indexed_sat(&u, &ctx, &[1], &h, &g, Variant::Bbi).unwrap());
        // t = t is always satisfied
        let e = parse_pointer_formula("x = x").unwrap();
        assert!(indexed_sat(&u, &ctx, &[0], &Heap::empty(), &e, Variant::Bi).unwrap());
    }

    #[test]
    fn shadowing_agrees_between_semantics() {
        let u = u12();
        let s = Store::new(vec!["x".into()], vec![1]);
        let h = Heap([(1, 0)].into_iter().collect());
        // inner x shadows outer x
        let f = parse_pointer_formula("exists x. x = 0 /\\ x |-> 0").unwrap();
        let p = pointer_sat(&u, &s, &h, &f, Variant::Bbi).unwrap();
        let i = indexed_sat(&u, &["x".to_string()], &[1], &h, &f, Variant::Bbi).unwrap();
        assert_eq!(p, i);
        assert!(!p); // 0 is not a location that maps to 0 here; x|->0 forces x=1
    }

    #[test]
    fn adjoint_extremes() {
        let u = u12();
        let base = store_frame(&u, 0, Variant::Bi);
        let ext = store_frame(&u, 1, Variant::Bi);
        let all = vec![true; ext.states.len()];
        let none = vec![false; ext.states.len()];
        let im = quantifier_adjoints(&base, &ext, &all);
        assert!(im.report.iter().all(|l| l.holds), "{:?}", im.report);
        assert!(im.exists_image.iter().all(|&b| b));
        assert!(im.forall_image.iter().all(|&b| b));
        let im0 = quantifier_adjoints(&base, &ext, &none);
        assert!(im0.exists_image.iter().all(|&b| !b));
        assert!(im0.forall_image.iter().all(|&b| !b) == (ext.states.len() > 0));
    }

    #[test]
    fn pseudo_epi_for_projection_and_diagonal() {
        let u = u12();
        // s = π: drop a coordinate (terms v1 of arity 2)
        let proj = TermMap { arity_in: 2, terms: vec![Term::var("v1")] };
        assert!(pseudo_epi_check(&u, &proj, Variant::Bi).unwrap());
        assert!(pseudo_epi_check(&u, &proj, Variant::Bbi).unwrap());
        // s = Δ: duplicate (v1, v1)
        let diag = TermMap { arity_in: 1, terms: vec![Term::var("v1"), Term::var("v1")] };
        assert!(pseudo_epi_check(&u, &diag, Variant::Bi).unwrap());
        assert!(pseudo_epi_check(&u, &diag, Variant::Bbi).unwrap());
    }

    #[test]
    fn separation_properties_of_small_frames() {
        let one = Frame::point(Logic::new(LogicName::Bbi));
        assert!(separation_properties(&one).iter().all(|l| l.holds));
        let u = u12();
        let f = heap_frame(&u, Variant::Bbi);
        let rep = separation_properties(&f);
        let get = |n: &str| rep.iter().find(|l| l.name == n).unwrap().holds;
        assert!(get("Partial deterministic"));
        assert!(get("Cancellative"));
        assert!(get("Indivisible units"));
        assert!(get("Disjointness"));
        assert!(get("Cross split"));
        assert!(!get("Divisibility"));
    }
}
