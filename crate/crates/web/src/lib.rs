//! Browser bindings: every entry point takes an inline generator list such
//! as `a*f,b*f,a*b*c` and returns text or JSON, or an error message.

use serde_json::json;
use synor::algebra::Field;
use synor::chains::{FormalChain, OrderChain, Simplex};
use synor::corpus::IdealSpec;
use synor::poset::LcmLattice;
use synor::resolution::betti_from_intervals;
use synor::shuffle::{chain_map_sides, enumerate_shuffles, shuffle_product, tau};
use synor::synor::SynorComplex;
use wasm_bindgen::prelude::*;

fn setup(ideal: &str, field: &str) -> Result<(LcmLattice, Field), String> {
    let field: Field = field.parse().map_err(|e: synor::Error| e.to_string())?;
    let spec = IdealSpec::parse_inline("input", ideal).map_err(|e| e.to_string())?;
    Ok((spec.lattice().map_err(|e| e.to_string())?, field))
}

fn labels(l: &LcmLattice) -> Vec<String> {
    l.labels().iter().map(|m| m.display(l.vars()).to_string()).collect()
}

/// The graded Betti table in the usual text layout.
#[wasm_bindgen]
pub fn betti_table(ideal: &str, field: &str) -> Result<String, String> {
    let (l, field) = setup(ideal, field)?;
    Ok(betti_from_intervals(&l, field).to_text())
}

/// Covers, labels, degrees and synors of the LCM lattice, as JSON.
#[wasm_bindgen]
pub fn lattice_json(ideal: &str, field: &str) -> Result<String, String> {
    let (l, field) = setup(ideal, field)?;
    let (bar, _) = l.proper_parts().map_err(|e| e.to_string())?;
    let synors: Vec<_> = SynorComplex::build(&bar, field)
        .synor_list()
        .into_iter()
        .map(|(x, i, m)| json!({ "element": bar.origin()[x], "i": i, "multiplicity": m }))
        .collect();
    let v = json!({
        "n": l.len(),
        "covers": l.cover_pairs(),
        "labels": labels(&l),
        "degrees": l.labels().iter().map(|m| m.degree()).collect::<Vec<_>>(),
        "synors": synors,
        "totals": betti_from_intervals(&l, field).totals(),
    });
    Ok(v.to_string())
}

fn parse_chain(l: &LcmLattice, names: &[String], text: &str) -> Result<OrderChain, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(OrderChain::empty());
    }
    let ids = text
        .split('>')
        .map(|t| names.iter().position(|n| n == t.trim()).ok_or(format!("`{}` is not in the lattice", t.trim())))
        .collect::<Result<Vec<_>, _>>()?;
    OrderChain::new(l, ids).map_err(|e| e.to_string())
}

/// The shuffle product of two chains written `top>...>bottom`, term by
/// term, with both sides of the boundary formula.
#[wasm_bindgen]
pub fn shuffle_demo(ideal: &str, left: &str, right: &str, field: &str) -> Result<String, String> {
    let (l, field) = setup(ideal, field)?;
    let names = labels(&l);
    let name = |x: usize| names[x].clone();
    let a = parse_chain(&l, &names, left)?;
    let b = parse_chain(&l, &names, right)?;
    let tuple: Vec<usize> = a.elements().iter().chain(b.elements()).copied().collect();
    let mut out = String::new();
    for s in enumerate_shuffles(a.dim(), b.dim()) {
        let m = tau(&l, &s.apply(&tuple));
        let text: Vec<String> = m.elements().iter().map(|&x| name(x)).collect();
        let note = if m.has_repeat() { "   (degenerate)" } else { "" };
        out.push_str(&format!("{:+} ({}){note}\n", s.sign, text.join(">=")));
    }
    let ca = FormalChain::basis(field, a);
    let cb = FormalChain::basis(field, b);
    let (lhs, rhs) = chain_map_sides(&l, &ca, &cb);
    out.push_str(&format!("\nproduct:          {}\n", shuffle_product(&l, &ca, &cb).display_with(name)));
    out.push_str(&format!("boundary:         {}\n", lhs.display_with(name)));
    out.push_str(&format!("boundary formula: {}\n", rhs.display_with(name)));
    out.push_str(if lhs == rhs { "chain map: holds\n" } else { "chain map: FAILS\n" });
    Ok(out)
}
