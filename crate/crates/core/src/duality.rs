//! Finite duality between frames and algebras: complex algebras, prime
//! filter enumeration and frames, the θ-embedding and η-map checks behind
//! the representation theorems, inverse-image functoriality, and the
//! subclassical correspondence checks.
//!
//! On finite structures the topological side is discrete, so the space
//! axioms are vacuous and the whole duality is carried by `Com` and `Pr`
//! together with θ(a) = {F | a ∈ F} and η(x) = {A | x ∈ A}.

use crate::algebras::{check_algebra, Algebra, AlgebraSpec, BinTable, LawViolation, PropertyLine};
use crate::frames::{check_frame, check_morphism, Frame, Rel3, Violation};
use crate::logic::{LogicName, SigmaAxiom};
use crate::proofs::{schema, RuleId};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("input frame fails its axioms: {0}")]
    InvalidFrame(Violation),
    #[error("input algebra fails its laws: {0}")]
    InvalidAlgebra(LawViolation),
    #[error("input morphism fails its clauses: {0}")]
    InvalidMorphism(Violation),
    #[error("frame too large for complex algebra construction: {0} states gives {1} carrier elements (cap {2})")]
    TooLarge(usize, usize, usize),
    #[error("carrier too large for prime filter enumeration: {0} elements (cap 16)")]
    CarrierTooLarge(usize),
    #[error("operation `{0}` did not map up-sets to up-sets; the input frame is not legal")]
    NotClosed(&'static str),
    #[error(transparent)]
    Algebra(#[from] crate::algebras::AlgebraError),
    #[error(transparent)]
    Frame(#[from] crate::frames::FrameError),
}

const COMPLEX_CARRIER_CAP: usize = 4096;

/// The complex algebra of a frame: carrier = up-sets of the state preorder
/// (all subsets for the Boolean kinds), with the operations induced
/// pointwise from the frame structure. Element `i` of the result corresponds
/// to `carrier_masks[i]` over the frame's states.
pub struct ComplexAlgebra {
    pub algebra: Algebra,
    pub carrier_masks: Vec<u32>,
    mask_index: BTreeMap<u32, usize>,
}

impl ComplexAlgebra {
    pub fn index_of_mask(&self, mask: u32) -> Option<usize> {
        self.mask_index.get(&mask).copied()
    }

    /// Membership of state `x` in carrier element `i`.
    pub fn contains_state(&self, i: usize, x: usize) -> bool {
        self.carrier_masks[i] & (1 << x) != 0
    }
}

fn mask_name(mask: u32, states: &[String]) -> String {
    let members: Vec<&str> = (0..states.len())
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| states[i].as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

pub fn complex_algebra(f: &Frame) -> Result<ComplexAlgebra, DualityError> {
    if let Some(v) = check_frame(f).into_iter().next() {
        return Err(DualityError::InvalidFrame(v));
    }
    let n = f.n();
    if n > 20 {
        return Err(DualityError::TooLarge(n, usize::MAX, COMPLEX_CARRIER_CAP));
    }
    // carrier: up-closed subsets, in ascending mask order
    let mut masks: Vec<u32> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let up = (0..n).all(|x| {
            mask & (1 << x) == 0 || (0..n).all(|y| !f.le(x, y) || mask & (1 << y) != 0)
        });
        if up {
            masks.push(mask);
        }
    }
    if masks.len() > COMPLEX_CARRIER_CAP {
        return Err(DualityError::TooLarge(n, masks.len(), COMPLEX_CARRIER_CAP));
    }
    let mask_index: BTreeMap<u32, usize> =
        masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let c = masks.len();
    let elems: Vec<String> = masks.iter().map(|&m| mask_name(m, &f.states)).collect();
    let mut leq_pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..c {
        for j in 0..c {
            if masks[i] & !masks[j] == 0 {
                leq_pairs.push((i, j));
            }
        }
    }

    let member = |mask: u32, x: usize| mask & (1 << x) != 0;
    let lookup = |mask: u32, op: &'static str| -> Result<usize, DualityError> {
        mask_index.get(&mask).copied().ok_or(DualityError::NotClosed(op))
    };

    // A => B = {x | for all x' ≽ x, x' ∈ A implies x' ∈ B}
    let mut imp = vec![vec![0usize; c]; c];
    for (i, &ma) in masks.iter().enumerate() {
        for (j, &mb) in masks.iter().enumerate() {
            let mut m = 0u32;
            for x in 0..n {
                let ok = (0..n).all(|y| !f.le(x, y) || !member(ma, y) || member(mb, y));
                if ok {
                    m |= 1 << x;
                }
            }
            imp[i][j] = lookup(m, "imp")?;
        }
    }
    // A • B = {x | exists w ≼ x, w ∈ y∘z, y ∈ A, z ∈ B}
    let mut star = vec![vec![0usize; c]; c];
    let mut wand = vec![vec![0usize; c]; c];
    let mut dnaw = vec![vec![0usize; c]; c];
    for (i, &ma) in masks.iter().enumerate() {
        for (j, &mb) in masks.iter().enumerate() {
            let mut st = 0u32;
            let mut wa = 0u32;
            let mut dn = 0u32;
            for x in 0..n {
                let in_star = (0..n).any(|y| {
                    member(ma, y)
                        && (0..n).any(|z| {
                            member(mb, z) && f.comp[y][z].iter().any(|&w| f.le(w, x))
                        })
                });
                if in_star {
                    st |= 1 << x;
                }
                let in_wand = (0..n).all(|w| {
                    !f.le(x, w)
                        || (0..n).all(|y| {
                            !member(ma, y) || f.comp[w][y].iter().all(|&z| member(mb, z))
                        })
                });
                if in_wand {
                    wa |= 1 << x;
                }
                let in_dnaw = (0..n).all(|w| {
                    !f.le(x, w)
                        || (0..n).all(|y| {
                            !member(ma, y) || f.comp[y][w].iter().all(|&z| member(mb, z))
                        })
                });
                if in_dnaw {
                    dn |= 1 << x;
                }
            }
            star[i][j] = lookup(st, "star")?;
            wand[i][j] = lookup(wa, "wand")?;
            dnaw[i][j] = lookup(dn, "dnaw")?;
        }
    }

    let name = f.kind.name();
    let munit = if name.has_munit() {
        let mut m = 0u32;
        for e in 0..n {
            if f.units[e] {
                m |= 1 << e;
            }
        }
        Some(lookup(m, "munit")?)
    } else {
        None
    };

    let mbot = match name {
        // U = {x | -x ∉ E} is the interpretation of mbot
        LogicName::Dmbi | LogicName::Cbi => {
            let minus = f.minus.as_ref().expect("kind checked");
            let mut m = 0u32;
            for x in 0..n {
                if !f.units[minus[x]] {
                    m |= 1 << x;
                }
            }
            Some(lookup(m, "mbot")?)
        }
        // mbot holds exactly off U
        LogicName::BiBi | LogicName::BiBbi => {
            let u = f.uset.as_ref().expect("kind checked");
            let mut m = 0u32;
            for x in 0..n {
                if !u[x] {
                    m |= 1 << x;
                }
            }
            Some(lookup(m, "mbot")?)
        }
        _ => None,
    };

    let (mor, rslash) = if matches!(name, LogicName::BiBi | LogicName::BiBbi) {
        let nb = f.nabla.as_ref().expect("kind checked");
        let mut mo = vec![vec![0usize; c]; c];
        let mut rs = vec![vec![0usize; c]; c];
        for (i, &ma) in masks.iter().enumerate() {
            for (j, &mb) in masks.iter().enumerate() {
                let mut m_mo = 0u32;
                let mut m_rs = 0u32;
                for x in 0..n {
                    let in_mor = (0..n).all(|s| {
                        !f.le(x, s)
                            || (0..n).all(|t| {
                                (0..n).all(|u| {
                                    !nb[t][u].contains(&s) || member(ma, t) || member(mb, u)
                                })
                            })
                    });
                    if in_mor {
                        m_mo |= 1 << x;
                    }
                    let in_rs = (0..n).any(|s| {
                        f.le(s, x)
                            && (0..n).any(|t| {
                                !member(mb, t) && nb[t][s].iter().any(|&u| member(ma, u))
                            })
                    });
                    if in_rs {
                        m_rs |= 1 << x;
                    }
                }
                mo[i][j] = lookup(m_mo, "mor")?;
                rs[i][j] = lookup(m_rs, "rslash")?;
            }
        }
        (Some(mo), Some(rs))
    } else {
        (None, None)
    };

    let (seq_t, rseq_t, lseq_t) = if name == LogicName::Ckbi {
        let sq = f.seq.as_ref().expect("kind checked");
        let mut se = vec![vec![0usize; c]; c];
        let mut rs = vec![vec![0usize; c]; c];
        let mut ls = vec![vec![0usize; c]; c];
        for (i, &ma) in masks.iter().enumerate() {
            for (j, &mb) in masks.iter().enumerate() {
                let mut m_se = 0u32;
                let mut m_rs = 0u32;
                let mut m_ls = 0u32;
                for x in 0..n {
                    if (0..n).any(|y| {
                        member(ma, y)
                            && (0..n).any(|z| member(mb, z) && sq[y][z].contains(&x))
                    }) {
                        m_se |= 1 << x;
                    }
                    if (0..n).all(|y| !member(ma, y) || sq[x][y].iter().all(|&z| member(mb, z))) {
                        m_rs |= 1 << x;
                    }
                    if (0..n).all(|y| !member(ma, y) || sq[y][x].iter().all(|&z| member(mb, z))) {
                        m_ls |= 1 << x;
                    }
                }
                se[i][j] = lookup(m_se, "seq")?;
                rs[i][j] = lookup(m_rs, "rseq")?;
                ls[i][j] = lookup(m_ls, "lseq")?;
            }
        }
        (Some(se), Some(rs), Some(ls))
    } else {
        (None, None, None)
    };

    let diamond = if name == LogicName::Sml {
        let r = f.rel.as_ref().expect("kind checked");
        let mut d = vec![0usize; c];
        for (i, &ma) in masks.iter().enumerate() {
            let mut m = 0u32;
            for x in 0..n {
                if (0..n).any(|y| r[x][y] && member(ma, y)) {
                    m |= 1 << x;
                }
            }
            d[i] = lookup(m, "diamond")?;
        }
        Some(d)
    } else {
        None
    };

    let algebra = Algebra::from_spec(
        f.kind.clone(),
        AlgebraSpec {
            elems,
            leq_pairs,
            imp: Some(imp),
            star: Some(star),
            wand: Some(wand),
            dnaw: Some(dnaw),
            munit,
            mbot,
            mor,
            rslash,
            seq: seq_t,
            rseq: rseq_t,
            lseq: lseq_t,
            diamond,
        },
    )?;
    Ok(ComplexAlgebra { algebra, carrier_masks: masks, mask_index })
}



/// Exhaustive prime filter enumeration: non-empty, upwards-closed,
/// meet-closed, proper subsets such that membership of a join forces
/// membership of a disjunct. Brute force over all subsets; carriers beyond
/// 16 elements are rejected.
pub fn enumerate_prime_filters(a: &Algebra) -> Result<Vec<Vec<usize>>, DualityError> {
    let n = a.n();
    if n > 16 {
        return Err(DualityError::CarrierTooLarge(n));
    }
    let mut out = Vec::new();
    'subset: for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if members.contains(&a.bot) {
            continue;
        }
        for &x in &members {
            for y in 0..n {
                if a.le(x, y) && mask & (1 << y) == 0 {
                    continue 'subset; // not up-closed
                }
            }
        }
        for &x in &members {
            for &y in &members {
                if mask & (1 << a.meet[x][y]) == 0 {
                    continue 'subset; // not meet-closed
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if mask & (1 << a.join[x][y]) != 0
                    && mask & (1 << x) == 0
                    && mask & (1 << y) == 0
                {
                    continue 'subset; // not prime
                }
            }
        }
        out.push(members);
    }
    Ok(out)
}

/// Prime filter frame together with the filters themselves (element-index
/// sets, aligned with the frame's states).
pub struct PrimeFilterFrame {
    pub frame: Frame,
    pub filters: Vec<Vec<usize>>,
}

pub fn prime_filter_frame(a: &Algebra) -> Result<PrimeFilterFrame, DualityError> {
    if let Some(v) = check_algebra(a).into_iter().next() {
        return Err(DualityError::InvalidAlgebra(v));
    }
    let filters = enumerate_prime_filters(a)?;
    let k = filters.len();
    let name = a.kind.name();
    // a finite filter is principal: name it by its minimum element
    let states: Vec<String> = filters
        .iter()
        .map(|f| {
            let m = a.big_meet(f.iter().copied());
            format!("F({})", a.elems[m])
        })
        .collect();
    let contains = |fi: usize, x: usize| filters[fi].contains(&x);
    let mut leq = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            leq[i][j] = filters[i].iter().all(|&x| contains(j, x));
        }
    }
    if a.kind.is_boolean() {
        // prime filters on a Boolean algebra are maximal, so ⊆ collapses to =
        for (i, row) in leq.iter().enumerate() {
            for (j, &le) in row.iter().enumerate() {
                debug_assert_eq!(le, i == j, "Boolean prime filters must be incomparable");
            }
        }
    }
    let mut comp: Rel3 = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            for t in 0..k {
                let ok = filters[i]
                    .iter()
                    .all(|&x| filters[j].iter().all(|&y| contains(t, a.star[x][y])));
                if ok {
                    comp[i][j].push(t);
                }
            }
        }
    }
    let units: Vec<bool> = match a.munit {
        Some(e) => (0..k).map(|i| contains(i, e)).collect(),
        None => vec![false; k],
    };
    let minus = if matches!(name, LogicName::Dmbi | LogicName::Cbi) {
        let mneg = a.mneg.as_ref().expect("kind checked");
        let mut m = vec![0usize; k];
        for i in 0..k {
            // -F = complement of the mneg-image of F
            let image: Vec<usize> = filters[i].iter().map(|&x| mneg[x]).collect();
            let compl: Vec<usize> = (0..a.n()).filter(|x| !image.contains(x)).collect();
            let j = filters
                .iter()
                .position(|f| *f == compl)
                .ok_or(DualityError::NotClosed("minus"))?;
            m[i] = j;
        }
        Some(m)
    } else {
        None
    };
    let (nabla, uset) = if matches!(name, LogicName::BiBi | LogicName::BiBbi) {
        let mor = a.mor.as_ref().expect("kind checked");
        let mb = a.mbot.expect("kind checked");
        let mut nb: Rel3 = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                for t in 0..k {
                    let ok = (0..a.n()).all(|x| {
                        (0..a.n()).all(|y| {
                            !contains(t, mor[x][y]) || contains(i, x) || contains(j, y)
                        })
                    });
                    if ok {
                        nb[i][j].push(t);
                    }
                }
            }
        }
        let u: Vec<bool> = (0..k).map(|i| !contains(i, mb)).collect();
        (Some(nb), Some(u))
    } else {
        (None, None)
    };
    let seq = if name == LogicName::Ckbi {
        let st = a.seq.as_ref().expect("kind checked");
        let mut sq: Rel3 = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                for t in 0..k {
                    let ok = filters[i]
                        .iter()
                        .all(|&x| filters[j].iter().all(|&y| contains(t, st[x][y])));
                    if ok {
                        sq[i][j].push(t);
                    }
                }
            }
        }
        Some(sq)
    } else {
        None
    };
    let rel = if name == LogicName::Sml {
        let dia = a.diamond.as_ref().expect("kind checked");
        let mut r = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                r[i][j] = filters[j].iter().all(|&x| contains(i, dia[x]));
            }
        }
        Some(r)
    } else {
        None
    };
    let frame = Frame::new(a.kind.clone(), states, leq, comp, units, minus, nabla, uset, seq, rel)?;
    Ok(PrimeFilterFrame { frame, filters })
}

/// Result of the θ round trip on one algebra.
pub struct ThetaReport {
    pub lines: Vec<PropertyLine>,
    pub surjective: bool,
    pub prime_filter_count: usize,
}

impl ThetaReport {
    /// θ is an injective homomorphism for every in-kind operation.
    pub fn embedding_ok(&self) -> bool {
        self.lines.iter().all(|l| l.holds)
    }
}

/// Verify that θ(a) = {F | a ∈ F} embeds the algebra into the complex
/// algebra of its prime filter frame, preserving every in-kind operation
/// and constant.
pub fn theta_check(a: &Algebra) -> Result<ThetaReport, DualityError> {
    let pf = prime_filter_frame(a)?;
    let com = complex_algebra(&pf.frame)?;
    let n = a.n();
    let k = pf.filters.len();
    let mut lines: Vec<PropertyLine> = Vec::new();
    let mut line = |name: &str, witness: Option<Vec<String>>| {
        lines.push(PropertyLine {
            name: name.to_string(),
            holds: witness.is_none(),
            witness: witness.unwrap_or_default(),
        });
    };
    // theta as a map into the complex carrier
    let mut theta = vec![0usize; n];
    let mut well_defined = None;
    for x in 0..n {
        let mut mask = 0u32;
        for (i, f) in pf.filters.iter().enumerate() {
            if f.contains(&x) {
                mask |= 1 << i;
            }
        }
        match com.index_of_mask(mask) {
            Some(i) => theta[x] = i,
            None => {
                well_defined = Some(vec![a.elems[x].clone()]);
                break;
            }
        }
    }
    line("theta maps into the complex carrier", well_defined.clone());
    if well_defined.is_some() {
        return Ok(ThetaReport { lines, surjective: false, prime_filter_count: k });
    }
    let ca = &com.algebra;
    line(
        "theta injective",
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| x != y && theta[x] == theta[y])
            .map(|(x, y)| vec![a.elems[x].clone(), a.elems[y].clone()]),
    );
    line(
        "theta order-embedding",
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| a.le(x, y) != ca.le(theta[x], theta[y]))
            .map(|(x, y)| vec![a.elems[x].clone(), a.elems[y].clone()]),
    );
    let bin = |t: &BinTable, tc: &BinTable, theta: &[usize]| -> Option<Vec<String>> {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| theta[t[x][y]] != tc[theta[x]][theta[y]])
            .map(|(x, y)| vec![a.elems[x].clone(), a.elems[y].clone()])
    };
    line("theta preserves meet", bin(&a.meet, &ca.meet, &theta));
    line("theta preserves join", bin(&a.join, &ca.join, &theta));
    line("theta preserves ->", bin(&a.imp, &ca.imp, &theta));
    line(
        "theta preserves top/bot",
        (theta[a.top] != ca.top || theta[a.bot] != ca.bot).then(|| vec![]),
    );
    line("theta preserves *", bin(&a.star, &ca.star, &theta));
    line("theta preserves -*", bin(&a.wand, &ca.wand, &theta));
    if matches!(a.kind.name(), LogicName::Lgl | LogicName::Ilgl) {
        line("theta preserves *-", bin(&a.dnaw, &ca.dnaw, &theta));
    }
    if let (Some(e), Some(ec)) = (a.munit, ca.munit) {
        line("theta(emp) = E", (theta[e] != ec).then(|| vec![a.elems[e].clone()]));
    }
    if let (Some(mb), Some(mbc)) = (a.mbot, ca.mbot) {
        line("theta(mbot) matches", (theta[mb] != mbc).then(|| vec![a.elems[mb].clone()]));
    }
    if let (Some(mneg), Some(mnegc)) = (&a.mneg, &ca.mneg) {
        line(
            "theta preserves mnot",
            (0..n)
                .find(|&x| theta[mneg[x]] != mnegc[theta[x]])
                .map(|x| vec![a.elems[x].clone()]),
        );
    }
    if let (Some(t), Some(tc)) = (&a.mor, &ca.mor) {
        line("theta preserves mor", bin(t, tc, &theta));
    }
    if let (Some(t), Some(tc)) = (&a.rslash, &ca.rslash) {
        line("theta preserves rslash", bin(t, tc, &theta));
    }
    if let (Some(t), Some(tc)) = (&a.seq, &ca.seq) {
        line("theta preserves ;", bin(t, tc, &theta));
    }
    if let (Some(t), Some(tc)) = (&a.rseq, &ca.rseq) {
        line("theta preserves -;", bin(t, tc, &theta));
    }
    if let (Some(t), Some(tc)) = (&a.lseq, &ca.lseq) {
        line("theta preserves ;-", bin(t, tc, &theta));
    }
    if let (Some(d), Some(dc)) = (&a.diamond, &ca.diamond) {
        line(
            "theta preserves <>",
            (0..n).find(|&x| theta[d[x]] != dc[theta[x]]).map(|x| vec![a.elems[x].clone()]),
        );
    }
    let surjective = {
        let mut hit = vec![false; ca.n()];
        for &t in &theta {
            hit[t] = true;
        }
        hit.iter().all(|&b| b)
    };
    Ok(ThetaReport { lines, surjective, prime_filter_count: k })
}

/// Result of the η round trip on one frame.
pub struct EtaReport {
    pub lines: Vec<PropertyLine>,
    pub antisymmetric: bool,
    pub bijective: bool,
    /// η(x) = η(y) exactly when x and y are order-equivalent.
    pub kernel_ok: bool,
}

impl EtaReport {
    pub fn ok(&self) -> bool {
        self.kernel_ok && (!self.antisymmetric || (self.bijective && self.lines.iter().all(|l| l.holds)))
    }
}

/// Compute η: X → Pr(Com(X)) and verify it is injective up to
/// order-equivalence and (for antisymmetric orders) a structure-preserving
/// bijection. Composition is compared through the order closure of the
/// frame operation, which coincides with the operation itself on the
/// Boolean kinds.
pub fn eta_check(f: &Frame) -> Result<EtaReport, DualityError> {
    let com = complex_algebra(f)?;
    let pf = prime_filter_frame(&com.algebra)?;
    let n = f.n();
    let k = pf.filters.len();
    let mut lines = Vec::new();
    let mut line = |name: &str, witness: Option<Vec<String>>| {
        lines.push(PropertyLine {
            name: name.to_string(),
            holds: witness.is_none(),
            witness: witness.unwrap_or_default(),
        });
    };
    // eta(x) = the set of carrier elements containing x, as a filter index
    let mut eta = vec![usize::MAX; n];
    for x in 0..n {
        let fil: Vec<usize> =
            (0..com.algebra.n()).filter(|&i| com.contains_state(i, x)).collect();
        match pf.filters.iter().position(|g| *g == fil) {
            Some(i) => eta[x] = i,
            None => {
                return Ok(EtaReport {
                    lines: vec![PropertyLine {
                        name: "eta lands in the prime filters".into(),
                        holds: false,
                        witness: vec![f.states[x].clone()],
                    }],
                    antisymmetric: false,
                    bijective: false,
                    kernel_ok: false,
                })
            }
        }
    }
    let antisymmetric =
        (0..n).all(|x| (0..n).all(|y| !(f.le(x, y) && f.le(y, x)) || x == y));
    let kernel_ok = (0..n).all(|x| {
        (0..n).all(|y| (eta[x] == eta[y]) == (f.le(x, y) && f.le(y, x)))
    });
    let surjective = (0..k).all(|i| eta.contains(&i));
    let bijective = surjective && kernel_ok && antisymmetric;

    let p = &pf.frame;
    line(
        "eta preserves the order both ways",
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| f.le(x, y) != p.le(eta[x], eta[y]))
            .map(|(x, y)| vec![f.states[x].clone(), f.states[y].clone()]),
    );
    // composition, up to the order closure of ∘
    let closure_comp = |x: usize, y: usize, z: usize| -> bool {
        (0..n).any(|zp| {
            f.le(zp, z)
                && (0..n).any(|xp| {
                    f.le(x, xp)
                        && (0..n).any(|yp| f.le(y, yp) && f.comp[xp][yp].contains(&zp))
                })
        })
    };
    line(
        "eta preserves composition (up to order closure)",
        iter_triples(n)
            .find(|&(x, y, z)| {
                closure_comp(x, y, z) != p.comp[eta[x]][eta[y]].contains(&eta[z])
            })
            .map(|(x, y, z)| {
                vec![f.states[x].clone(), f.states[y].clone(), f.states[z].clone()]
            }),
    );
    if f.kind.name().has_munit() {
        line(
            "eta preserves units",
            (0..n)
                .find(|&x| f.units[x] != p.units[eta[x]])
                .map(|x| vec![f.states[x].clone()]),
        );
    }
    if let (Some(ma), Some(mp)) = (&f.minus, &p.minus) {
        line(
            "eta preserves minus",
            (0..n)
                .find(|&x| eta[ma[x]] != mp[eta[x]])
                .map(|x| vec![f.states[x].clone()]),
        );
    }
    if let (Some(nba), Some(nbp)) = (&f.nabla, &p.nabla) {
        // dual closure: result up, arguments down
        let closure_nabla = |x: usize, y: usize, z: usize| -> bool {
            (0..n).any(|s| {
                f.le(z, s)
                    && (0..n).any(|t| {
                        f.le(t, x) && (0..n).any(|u| f.le(u, y) && nba[t][u].contains(&s))
                    })
            })
        };
        line(
            "eta preserves nabla (up to order closure)",
            iter_triples(n)
                .find(|&(x, y, z)| {
                    closure_nabla(x, y, z) != nbp[eta[x]][eta[y]].contains(&eta[z])
                })
                .map(|(x, y, z)| {
                    vec![f.states[x].clone(), f.states[y].clone(), f.states[z].clone()]
                }),
        );
        let (ua, up_) = (f.uset.as_ref().unwrap(), p.uset.as_ref().unwrap());
        line(
            "eta preserves U",
            (0..n).find(|&x| ua[x] != up_[eta[x]]).map(|x| vec![f.states[x].clone()]),
        );
    }
    if let (Some(sa), Some(sp)) = (&f.seq, &p.seq) {
        line(
            "eta preserves seq",
            iter_triples(n)
                .find(|&(x, y, z)| sa[x][y].contains(&z) != sp[eta[x]][eta[y]].contains(&eta[z]))
                .map(|(x, y, z)| {
                    vec![f.states[x].clone(), f.states[y].clone(), f.states[z].clone()]
                }),
        );
    }
    if let (Some(ra), Some(rp)) = (&f.rel, &p.rel) {
        line(
            "eta preserves R",
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| ra[x][y] != rp[eta[x]][eta[y]])
                .map(|(x, y)| vec![f.states[x].clone(), f.states[y].clone()]),
        );
    }
    Ok(EtaReport { lines, antisymmetric, bijective, kernel_ok })
}

fn iter_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
}

/// Check that the inverse image of a frame morphism is an algebra
/// homomorphism between the complex algebras, for the full signature of the
/// kind.
pub fn inverse_image_check(
    g: &[usize],
    a: &Frame,
    b: &Frame,
) -> Result<Vec<PropertyLine>, DualityError> {
    if let Some(v) = check_morphism(g, a, b).into_iter().next() {
        return Err(DualityError::InvalidMorphism(v));
    }
    let ca = complex_algebra(a)?;
    let cb = complex_algebra(b)?;
    // h(B) = g^{-1}(B), as a map on carrier indices
    let mut h = vec![0usize; cb.algebra.n()];
    for (j, &mb) in cb.carrier_masks.iter().enumerate() {
        let mut m = 0u32;
        for x in 0..a.n() {
            if mb & (1 << g[x]) != 0 {
                m |= 1 << x;
            }
        }
        h[j] = ca.index_of_mask(m).ok_or(DualityError::NotClosed("inverse image"))?;
    }
    let mut lines = Vec::new();
    let mut line = |name: &str, witness: Option<Vec<String>>| {
        lines.push(PropertyLine {
            name: name.to_string(),
            holds: witness.is_none(),
            witness: witness.unwrap_or_default(),
        });
    };
    let ba = &ca.algebra;
    let bb = &cb.algebra;
    let m = bb.n();
    let bin = |ta: &BinTable, tb: &BinTable| -> Option<Vec<String>> {
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .find(|&(x, y)| h[tb[x][y]] != ta[h[x]][h[y]])
            .map(|(x, y)| vec![bb.elems[x].clone(), bb.elems[y].clone()])
    };
    line("inverse image preserves meet", bin(&ba.meet, &bb.meet));
    line("inverse image preserves join", bin(&ba.join, &bb.join));
    line("inverse image preserves ->", bin(&ba.imp, &bb.imp));
    line(
        "inverse image preserves top/bot",
        (h[bb.top] != ba.top || h[bb.bot] != ba.bot).then(Vec::new),
    );
    line("inverse image preserves *", bin(&ba.star, &bb.star));
    line("inverse image preserves -*", bin(&ba.wand, &bb.wand));
    line("inverse image preserves *-", bin(&ba.dnaw, &bb.dnaw));
    if let (Some(ea), Some(eb)) = (ba.munit, bb.munit) {
        line("inverse image preserves E", (h[eb] != ea).then(Vec::new));
    }
    if let (Some(ma_), Some(mb_)) = (ba.mbot, bb.mbot) {
        line("inverse image preserves mbot", (h[mb_] != ma_).then(Vec::new));
    }
    if let (Some(na), Some(nb)) = (&ba.mneg, &bb.mneg) {
        line(
            "inverse image preserves mnot",
            (0..m).find(|&x| h[nb[x]] != na[h[x]]).map(|x| vec![bb.elems[x].clone()]),
        );
    }
    if let (Some(ta), Some(tb)) = (&ba.mor, &bb.mor) {
        line("inverse image preserves mor", bin(ta, tb));
    }
    if let (Some(ta), Some(tb)) = (&ba.rslash, &bb.rslash) {
        line("inverse image preserves rslash", bin(ta, tb));
    }
    if let (Some(ta), Some(tb)) = (&ba.seq, &bb.seq) {
        line("inverse image preserves ;", bin(ta, tb));
    }
    if let (Some(ta), Some(tb)) = (&ba.rseq, &bb.rseq) {
        line("inverse image preserves -;", bin(ta, tb));
    }
    if let (Some(ta), Some(tb)) = (&ba.lseq, &bb.lseq) {
        line("inverse image preserves ;-", bin(ta, tb));
    }
    if let (Some(da), Some(db)) = (&ba.diamond, &bb.diamond) {
        line(
            "inverse image preserves <>",
            (0..m).find(|&x| h[db[x]] != da[h[x]]).map(|x| vec![bb.elems[x].clone()]),
        );
    }
    Ok(lines)
}

/// Outcome of a correspondence check for one subclassical axiom row.
pub struct CorrespondenceReport {
    pub row: SigmaAxiom,
    pub correspondent_holds: bool,
    pub correspondent_witness: Vec<String>,
    /// When the correspondent holds this must be `Some(true)` (sound
    /// direction of the correspondence).
    pub axiom_valid: Option<bool>,
    /// When the correspondent fails: a falsifying interpretation of the
    /// axiom in the complex algebra, if one exists.
    pub falsifier: Option<BTreeMap<String, String>>,
}

/// Sound direction of the subclassical correspondence: a frame satisfying a
/// row's property validates the row's axiom in its complex algebra. When the
/// property fails, search the complex algebra for a falsifying
/// interpretation (best effort; absence is not a proof).
pub fn correspondence_check(
    f: &Frame,
    row: SigmaAxiom,
) -> Result<CorrespondenceReport, DualityError> {
    assert!(
        matches!(f.kind.name(), LogicName::BiBi | LogicName::BiBbi),
        "correspondence rows concern BiBI/BiBBI frames"
    );
    let mut viols = Vec::new();
    crate::frames::check_sigma_correspondent(f, row, &mut viols);
    let com = complex_algebra(f)?;
    let ax = &schema(RuleId::Sigma(row)).variants[0].conclusion;
    let atoms: Vec<String> = ax.atoms().into_iter().collect();
    let c = com.algebra.n();
    let mut falsifier = None;
    let mut all_valid = true;
    let mut idx = vec![0usize; atoms.len()];
    'outer: loop {
        let interp: crate::algebras::Interpretation =
            atoms.iter().cloned().zip(idx.iter().copied()).collect();
        let va = crate::algebras::evaluate(&com.algebra, &interp, &ax.antecedent)?;
        let vc = crate::algebras::evaluate(&com.algebra, &interp, &ax.consequent)?;
        if !com.algebra.le(va, vc) {
            all_valid = false;
            falsifier = Some(
                interp
                    .iter()
                    .map(|(k, &v)| (k.clone(), com.algebra.elems[v].clone()))
                    .collect(),
            );
            break 'outer;
        }
        let mut k = 0;
        loop {
            if k == atoms.len() {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < c {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    let holds = viols.is_empty();
    Ok(CorrespondenceReport {
        row,
        correspondent_holds: holds,
        correspondent_witness: viols.first().map(|v| v.witness.clone()).unwrap_or_default(),
        axiom_valid: if holds { Some(all_valid) } else { None },
        falsifier: if holds { None } else { falsifier },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::two_element_bbi;
    use crate::frames::identity_order;
    use crate::logic::Logic;

    fn two_point_bbi_frame() -> Frame {
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
    }

    #[test]
    fn complex_of_one_point_bbi() {
        let f = Frame::point(Logic::new(LogicName::Bbi));
        let com = complex_algebra(&f).unwrap();
        assert_eq!(com.algebra.n(), 2);
        assert!(check_algebra(&com.algebra).is_empty());
        // {e} * {e} = {e}
        let full = com.index_of_mask(1).unwrap();
        assert_eq!(com.algebra.star[full][full], full);
        assert_eq!(com.algebra.munit, Some(full));
    }

    #[test]
    fn complex_of_two_point_is_valid_bbi_algebra() {
        let f = two_point_bbi_frame();
        let com = complex_algebra(&f).unwrap();
        assert_eq!(com.algebra.n(), 4);
        assert!(check_algebra(&com.algebra).is_empty());
        // p |- p * p fails: interpretation p := {a}
        let s = crate::parser::parse_sequent("p |- p * p", &Logic::new(LogicName::Bbi)).unwrap();
        assert!(!crate::algebras::validates_sequent(&com.algebra, &s, 1 << 20).unwrap());
    }

    #[test]
    fn ilgl_two_chain_complex_is_three_chain() {
        // x ≼ y, empty composition
        let f = Frame::new(
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
        let com = complex_algebra(&f).unwrap();
        // up-sets: {}, {y}, {x,y}
        assert_eq!(com.algebra.n(), 3);
        assert!(check_algebra(&com.algebra).is_empty());
        let empty = com.index_of_mask(0).unwrap();
        let y_only = com.index_of_mask(0b10).unwrap();
        // {y} => {} = {}
        assert_eq!(com.algebra.imp[y_only][empty], empty);
    }

    #[test]
    fn prime_filters_of_small_algebras() {
        let a2 = two_element_bbi();
        let pf = enumerate_prime_filters(&a2).unwrap();
        assert_eq!(pf, vec![vec![1]]);

        // 4-element Boolean algebra = complex algebra of the 2-point frame
        let com = complex_algebra(&two_point_bbi_frame()).unwrap();
        let pf4 = enumerate_prime_filters(&com.algebra).unwrap();
        assert_eq!(pf4.len(), 2);
        // cross-check: prime filters = principal up-sets of join-irreducibles
        let ji = com.algebra.join_irreducibles();
        assert_eq!(pf4.len(), ji.len());
        for &j in &ji {
            let up: Vec<usize> =
                (0..com.algebra.n()).filter(|&x| com.algebra.le(j, x)).collect();
            assert!(pf4.contains(&up));
        }
    }

    #[test]
    fn prime_filter_frame_of_complex_recovers_two_point_frame() {
        let f = two_point_bbi_frame();
        let com = complex_algebra(&f).unwrap();
        let pf = prime_filter_frame(&com.algebra).unwrap();
        assert!(check_frame(&pf.frame).is_empty());
        assert_eq!(pf.frame.n(), 2);
        let eta = eta_check(&f).unwrap();
        assert!(eta.ok(), "{:?}", eta.lines);
    }

    #[test]
    fn theta_on_two_element_bbi_is_iso() {
        let rep = theta_check(&two_element_bbi()).unwrap();
        assert!(rep.embedding_ok(), "{:?}", rep.lines);
        assert!(rep.surjective);
    }

    #[test]
    fn three_chain_heyting_as_bi_algebra() {
        use crate::algebras::AlgebraSpec;
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
        let pf = prime_filter_frame(&a).unwrap();
        // prime filters: ↑m and ↑1, ordered by ⊆ into a 2-chain
        assert_eq!(pf.filters.len(), 2);
        assert!(check_frame(&pf.frame).is_empty());
        let rep = theta_check(&a).unwrap();
        assert!(rep.embedding_ok(), "{:?}", rep.lines);
    }

    #[test]
    fn cbi_point_duality() {
        let f = Frame::point(Logic::new(LogicName::Cbi));
        let com = complex_algebra(&f).unwrap();
        assert!(check_algebra(&com.algebra).is_empty());
        // ∼{e} = {} and ∼{} = {e}
        let mneg = com.algebra.mneg.as_ref().unwrap();
        let full = com.index_of_mask(1).unwrap();
        let empty = com.index_of_mask(0).unwrap();
        assert_eq!(mneg[full], empty);
        assert_eq!(mneg[empty], full);
        let rep = theta_check(&com.algebra).unwrap();
        assert!(rep.embedding_ok(), "{:?}", rep.lines);
        let eta = eta_check(&f).unwrap();
        assert!(eta.ok());
    }

    #[test]
    fn identity_inverse_image_is_homomorphism() {
        let f = two_point_bbi_frame();
        let lines = inverse_image_check(&[0, 1], &f, &f).unwrap();
        assert!(lines.iter().all(|l| l.holds), "{lines:?}");
    }
}
