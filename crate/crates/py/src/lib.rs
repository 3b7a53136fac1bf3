//! Python bindings for the bunched-logic workbench. Structured values
//! (frames, algebras, proofs, reports) cross the boundary as JSON strings
//! in the same formats the CLI uses; simple results come back as native
//! Python values.

use bunchkit_core::explorer::{SearchBudget, SearchOutcome};
use bunchkit_core::frames::{Mode, Model};
use bunchkit_core::heap::Variant;
use bunchkit_core::json;
use bunchkit_core::logic::Logic;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn logic_of(logic: &str, sigma: Vec<String>, modal: &str) -> PyResult<Logic> {
    json::logic_from_parts(logic, &sigma, modal).map_err(err)
}

fn frame_of(text: &str) -> PyResult<bunchkit_core::frames::Frame> {
    let j: json::FrameJson = serde_json::from_str(text).map_err(err)?;
    json::frame_from_json(&j).map_err(err)
}

fn algebra_of(text: &str) -> PyResult<bunchkit_core::algebras::Algebra> {
    let j: json::AlgebraJson = serde_json::from_str(text).map_err(err)?;
    json::algebra_from_json(&j).map_err(err)
}

/// Canonical form of a formula after signature checking.
#[pyfunction]
#[pyo3(signature = (text, logic, sigma=vec![], modal="none"))]
fn parse_formula(text: &str, logic: &str, sigma: Vec<String>, modal: &str) -> PyResult<String> {
    let logic = logic_of(logic, sigma, modal)?;
    let f = bunchkit_core::parser::parse_formula(text, &logic).map_err(err)?;
    Ok(bunchkit_core::formula::print_formula(&f))
}

/// Expansion of the defined connectives, as a formula string.
#[pyfunction]
#[pyo3(signature = (text, logic, sigma=vec![], modal="none"))]
fn expand_defined(text: &str, logic: &str, sigma: Vec<String>, modal: &str) -> PyResult<String> {
    let logic = logic_of(logic, sigma, modal)?;
    let f = bunchkit_core::parser::parse_formula(text, &logic).map_err(err)?;
    let e = bunchkit_core::formula::expand_defined(&f, &logic);
    Ok(bunchkit_core::formula::print_formula(&e))
}

/// Frame axiom violations, as display strings (empty = valid frame).
#[pyfunction]
fn check_frame(frame_json: &str) -> PyResult<Vec<String>> {
    let f = frame_of(frame_json)?;
    Ok(bunchkit_core::frames::check_frame(&f).iter().map(|v| v.to_string()).collect())
}

/// Algebra law violations, as display strings (empty = valid algebra).
#[pyfunction]
fn check_algebra(algebra_json: &str) -> PyResult<Vec<String>> {
    let a = algebra_of(algebra_json)?;
    Ok(bunchkit_core::algebras::check_algebra(&a).iter().map(|v| v.to_string()).collect())
}

/// Satisfaction of a formula at a state under a valuation
/// (atom → list of state names).
#[pyfunction]
#[pyo3(signature = (frame_json, valuation_json, state, formula, mode="strong"))]
fn sat(
    frame_json: &str,
    valuation_json: &str,
    state: &str,
    formula: &str,
    mode: &str,
) -> PyResult<bool> {
    let f = frame_of(frame_json)?;
    let v: std::collections::BTreeMap<String, Vec<String>> =
        serde_json::from_str(valuation_json).map_err(err)?;
    let v = json::valuation_from_json(&v, &f).map_err(err)?;
    let x = f.state_index(state).map_err(err)?;
    let kind = f.kind.clone();
    let phi = bunchkit_core::parser::parse_formula(formula, &kind).map_err(err)?;
    let mode = if mode == "udmf" { Mode::Udmf } else { Mode::Strong };
    let m = Model::new(f, v, mode).map_err(err)?;
    Ok(bunchkit_core::frames::satisfies(&m, x, &phi))
}

/// Entailment in one model: every antecedent state satisfies the consequent.
#[pyfunction]
#[pyo3(signature = (frame_json, valuation_json, sequent, mode="strong"))]
fn entails(frame_json: &str, valuation_json: &str, sequent: &str, mode: &str) -> PyResult<bool> {
    let f = frame_of(frame_json)?;
    let v: std::collections::BTreeMap<String, Vec<String>> =
        serde_json::from_str(valuation_json).map_err(err)?;
    let v = json::valuation_from_json(&v, &f).map_err(err)?;
    let kind = f.kind.clone();
    let s = bunchkit_core::parser::parse_sequent(sequent, &kind).map_err(err)?;
    let mode = if mode == "udmf" { Mode::Udmf } else { Mode::Strong };
    let m = Model::new(f, v, mode).map_err(err)?;
    Ok(bunchkit_core::frames::entails_in_model(&m, &s))
}

/// Complex algebra of a frame, as algebra JSON.
#[pyfunction]
fn complex_algebra(frame_json: &str) -> PyResult<String> {
    let f = frame_of(frame_json)?;
    let com = bunchkit_core::duality::complex_algebra(&f).map_err(err)?;
    serde_json::to_string(&json::algebra_to_json(&com.algebra)).map_err(err)
}

/// Prime filter frame of an algebra, as frame JSON.
#[pyfunction]
fn prime_filter_frame(algebra_json: &str) -> PyResult<String> {
    let a = algebra_of(algebra_json)?;
    let pf = bunchkit_core::duality::prime_filter_frame(&a).map_err(err)?;
    serde_json::to_string(&json::frame_to_json(&pf.frame)).map_err(err)
}

/// Representation round trip on an algebra: (embedding_ok, surjective,
/// failing line names).
#[pyfunction]
fn theta_check(algebra_json: &str) -> PyResult<(bool, bool, Vec<String>)> {
    let a = algebra_of(algebra_json)?;
    let rep = bunchkit_core::duality::theta_check(&a).map_err(err)?;
    let failures =
        rep.lines.iter().filter(|l| !l.holds).map(|l| l.name.clone()).collect();
    Ok((rep.embedding_ok(), rep.surjective, failures))
}

/// η round trip on a frame: overall verdict.
#[pyfunction]
fn eta_check(frame_json: &str) -> PyResult<bool> {
    let f = frame_of(frame_json)?;
    Ok(bunchkit_core::duality::eta_check(&f).map_err(err)?.ok())
}

/// Pointer-logic satisfaction. The store is (context list, value list).
#[pyfunction]
#[pyo3(signature = (universe_json, ctx, vals, heap_json, formula, variant="bbi"))]
fn heap_sat(
    universe_json: &str,
    ctx: Vec<String>,
    vals: Vec<i64>,
    heap_json: &str,
    formula: &str,
    variant: &str,
) -> PyResult<bool> {
    let u = json::universe_from_json(&serde_json::from_str(universe_json).map_err(err)?)
        .map_err(err)?;
    let h = json::heap_from_json(&serde_json::from_str(heap_json).map_err(err)?).map_err(err)?;
    let s = bunchkit_core::heap::Store::new(ctx, vals);
    let f = bunchkit_core::parser::parse_pointer_formula(formula).map_err(err)?;
    let variant = Variant::parse(variant).ok_or_else(|| err("unknown variant"))?;
    bunchkit_core::heap::pointer_sat(&u, &s, &h, &f, variant).map_err(err)
}

/// Satisfaction on the store-indexed frame.
#[pyfunction]
#[pyo3(signature = (universe_json, ctx, vals, heap_json, formula, variant="bbi"))]
fn indexed_sat(
    universe_json: &str,
    ctx: Vec<String>,
    vals: Vec<i64>,
    heap_json: &str,
    formula: &str,
    variant: &str,
) -> PyResult<bool> {
    let u = json::universe_from_json(&serde_json::from_str(universe_json).map_err(err)?)
        .map_err(err)?;
    let h = json::heap_from_json(&serde_json::from_str(heap_json).map_err(err)?).map_err(err)?;
    let f = bunchkit_core::parser::parse_pointer_formula(formula).map_err(err)?;
    let variant = Variant::parse(variant).ok_or_else(|| err("unknown variant"))?;
    bunchkit_core::heap::indexed_sat(&u, &ctx, &vals, &h, &f, variant).map_err(err)
}

/// The six separation properties of a frame: name → holds.
#[pyfunction]
fn separation_properties(frame_json: &str) -> PyResult<Vec<(String, bool)>> {
    let f = frame_of(frame_json)?;
    Ok(bunchkit_core::heap::separation_properties(&f)
        .into_iter()
        .map(|l| (l.name, l.holds))
        .collect())
}

/// Bounded countermodel search. Returns None on exhaustion, else a JSON
/// document with the frame, valuation and witness state.
#[pyfunction]
#[pyo3(signature = (logic, sequent, max_states=3, sigma=vec![], modal="none"))]
fn countermodel(
    logic: &str,
    sequent: &str,
    max_states: usize,
    sigma: Vec<String>,
    modal: &str,
) -> PyResult<Option<String>> {
    let logic = logic_of(logic, sigma, modal)?;
    let s = bunchkit_core::parser::parse_sequent(sequent, &logic).map_err(err)?;
    let b = SearchBudget::new(logic, max_states);
    match bunchkit_core::explorer::countermodel_search(&s, &b) {
        SearchOutcome::Found(cm) => {
            let body = serde_json::json!({
                "frame": json::frame_to_json(&cm.frame),
                "valuation": json::valuation_to_json(&cm.valuation, &cm.frame),
                "state": cm.frame.states[cm.state].clone(),
            });
            Ok(Some(serde_json::to_string(&body).map_err(err)?))
        }
        SearchOutcome::Exhausted { .. } => Ok(None),
    }
}

/// Names and frame JSON of the sample library.
#[pyfunction]
fn samples() -> PyResult<Vec<(String, String)>> {
    bunchkit_core::models::sample_library()
        .into_iter()
        .map(|(name, f)| {
            Ok((name, serde_json::to_string(&json::frame_to_json(&f)).map_err(err)?))
        })
        .collect()
}

#[pymodule]
fn pybunchkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse_formula, m)?)?;
    m.add_function(wrap_pyfunction!(expand_defined, m)?)?;
    m.add_function(wrap_pyfunction!(check_frame, m)?)?;
    m.add_function(wrap_pyfunction!(check_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(sat, m)?)?;
    m.add_function(wrap_pyfunction!(entails, m)?)?;
    m.add_function(wrap_pyfunction!(complex_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(prime_filter_frame, m)?)?;
    m.add_function(wrap_pyfunction!(theta_check, m)?)?;
    m.add_function(wrap_pyfunction!(eta_check, m)?)?;
    m.add_function(wrap_pyfunction!(heap_sat, m)?)?;
    m.add_function(wrap_pyfunction!(indexed_sat, m)?)?;
    m.add_function(wrap_pyfunction!(separation_properties, m)?)?;
    m.add_function(wrap_pyfunction!(countermodel, m)?)?;
    m.add_function(wrap_pyfunction!(samples, m)?)?;
    Ok(())
}
