//! Subcommand implementations. Each prints to stdout and reports failures
//! through [`Failure`].

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use synor::algebra::Field;
use synor::chains::{homology_ranks, FormalChain, MultiChain, OrderChain, Simplex};
use synor::corpus::IdealSpec;
use synor::poset::{Lattice, LcmLattice};
use synor::resolution::{betti_from_intervals, certify_resolution, synor_resolution};
use synor::shuffle::{chain_map_sides, enumerate_shuffles, shuffle_product, tau};
use synor::synor::SynorComplex;
use synor::verify::{
    check_subadditivity, subadditivity_triples, sweep_lattices, verify_interval_decomposition,
};

use crate::input::{load_any_lattice, load_lattice};
use crate::{properties, Failure, Format, IdealArgs, Verify};

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn internal(e: synor::Error) -> Failure {
    Failure::Verification(e.to_string())
}

pub fn betti(a: &IdealArgs, field: Field, format: Format) -> Result<(), Failure> {
    let (_, l) = load_lattice(&a.input, a.vars.as_deref())?;
    let table = betti_from_intervals(&l, field);
    match format {
        Format::Text => print!("{}", table.to_text()),
        Format::Json => print_json(&table.to_json(&l)),
    }
    Ok(())
}

pub fn resolve(a: &IdealArgs, field: Field, format: Format) -> Result<(), Failure> {
    let (_, l) = load_lattice(&a.input, a.vars.as_deref())?;
    let r = synor_resolution(&l, field).map_err(internal)?;
    let cert = certify_resolution(&r, &l);
    match format {
        Format::Json => print_json(&json!({
            "resolution": r.to_json(&l),
            "certification": {
                "certified": cert.is_certified(),
                "strands_checked": cert.strands_checked,
                "reductions_checked": cert.reductions_checked,
                "failures": cert.failures,
            },
        })),
        Format::Text => {
            for (i, basis) in r.modules.iter().enumerate() {
                let shifts: Vec<String> = basis.iter().map(|b| b.monomial.display(l.vars()).to_string()).collect();
                println!("F{i}: rank {} shifts {}", basis.len(), shifts.join(" "));
            }
            println!("ranks: {}", join(&r.ranks()));
            println!(
                "certification: {} strands, {} reductions, {}",
                cert.strands_checked,
                cert.reductions_checked,
                if cert.is_certified() { "certified" } else { "FAILED" }
            );
        }
    }
    if cert.is_certified() {
        Ok(())
    } else {
        Err(Failure::Verification(cert.failures.join("\n")))
    }
}

pub fn lattice(a: &IdealArgs, field: Field, format: Format) -> Result<(), Failure> {
    let (_, l) = load_lattice(&a.input, a.vars.as_deref())?;
    let name = |x: usize| l.label(x).display(l.vars()).to_string();
    // synors of the lattice minus its top, in lattice ids
    let (bar, _) = l.proper_parts().map_err(|e| Failure::Input(e.to_string()))?;
    let synors: Vec<(usize, isize, usize)> = SynorComplex::build(&bar, field)
        .synor_list()
        .into_iter()
        .map(|(x, i, m)| (bar.origin()[x], i, m))
        .collect();
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(l.to_json()).expect("serializable");
            v["generators"] = json!(l.generators().iter().map(|&g| name(g)).collect::<Vec<_>>());
            v["synors"] = synors
                .iter()
                .map(|&(x, i, m)| json!({ "element": x, "label": name(x), "i": i, "multiplicity": m }))
                .collect();
            print_json(&v);
        }
        Format::Text => {
            println!("{} elements, bottom {}, top {}", l.len(), name(l.bottom()), name(l.top()));
            for x in 0..l.len() {
                let covers: Vec<String> = l.upper_covers(x).iter().map(|&y| name(y)).collect();
                let marks: Vec<String> = synors
                    .iter()
                    .filter(|s| s.0 == x)
                    .map(|&(_, i, m)| if m == 1 { format!("{i}-synor") } else { format!("{i}-synor x{m}") })
                    .collect();
                let mut line = format!("{x:>3} {:<12} < {}", name(x), covers.join(" "));
                if !marks.is_empty() {
                    let _ = write!(line, "  [{}]", marks.join(", "));
                }
                println!("{}", line.trim_end());
            }
        }
    }
    Ok(())
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_chain(l: &Lattice, names: &[String], text: &str) -> Result<OrderChain, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(OrderChain::empty());
    }
    let ids = text
        .split('>')
        .map(|t| {
            let t = t.trim();
            names
                .iter()
                .position(|n| n == t)
                .or_else(|| t.parse().ok().filter(|&i: &usize| i < l.len()))
                .ok_or_else(|| Failure::Input(format!("unknown element `{t}` in chain `{text}`")))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    OrderChain::new(l, ids).map_err(|e| Failure::Input(format!("`{text}`: {e}")))
}

pub fn shuffle_demo(
    input: &str,
    vars: Option<&str>,
    left: &str,
    right: &str,
    field: Field,
    format: Format,
) -> Result<(), Failure> {
    let (l, names) = load_any_lattice(input, vars)?;
    let name = |x: usize| names[x].clone();
    let a = parse_chain(&l, &names, left)?;
    let b = parse_chain(&l, &names, right)?;
    let tuple: Vec<usize> = a.elements().iter().chain(b.elements()).copied().collect();
    let terms: Vec<(i8, MultiChain)> =
        enumerate_shuffles(a.dim(), b.dim()).iter().map(|s| (s.sign, tau(&l, &s.apply(&tuple)))).collect();
    let ca = FormalChain::basis(field, a);
    let cb = FormalChain::basis(field, b);
    let product = shuffle_product(&l, &ca, &cb);
    let (lhs, rhs) = chain_map_sides(&l, &ca, &cb);
    let multichain = |m: &MultiChain| m.elements().iter().map(|&x| name(x)).collect::<Vec<_>>().join(">=");
    match format {
        Format::Json => print_json(&json!({
            "left": ca.display_with(name).to_string(),
            "right": cb.display_with(name).to_string(),
            "terms": terms.iter().map(|(s, m)| json!({
                "sign": s, "tau": multichain(m), "degenerate": m.has_repeat(),
            })).collect::<Vec<_>>(),
            "product": product.display_with(name).to_string(),
            "boundary_of_product": lhs.display_with(name).to_string(),
            "boundary_formula": rhs.display_with(name).to_string(),
            "chain_map_holds": lhs == rhs,
        })),
        Format::Text => {
            println!("left:  {} (dim {})", ca.display_with(name), ca.dim());
            println!("right: {} (dim {})", cb.display_with(name), cb.dim());
            println!("{} shuffles:", terms.len());
            for (s, m) in &terms {
                let note = if m.has_repeat() { "  (degenerate, dropped)" } else { "" };
                println!("  {:+} ({}){note}", s, multichain(m));
            }
            println!("product: {}", product.display_with(name));
            println!("boundary of product: {}", lhs.display_with(name));
            println!("boundary formula:    {}", rhs.display_with(name));
            println!("chain map: {}", if lhs == rhs { "holds" } else { "FAILS" });
        }
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure::Verification("shuffle boundary formula fails".into()))
    }
}

/// Lines of a verification run plus what is needed to reproduce a failure.
struct Report {
    lines: Vec<String>,
    failures: Vec<String>,
    json: Vec<Value>,
    /// Self-contained input for a rerun.
    input: String,
}

impl Report {
    fn new(input: String) -> Self {
        Report { lines: Vec::new(), failures: Vec::new(), json: Vec::new(), input }
    }

    fn push(&mut self, pass: bool, line: String, json: Value) {
        if !pass {
            self.failures.push(line.clone());
        }
        self.lines.push(line);
        self.json.push(json);
    }

    fn finish(self, format: Format, command: &str, reproducer: &Path) -> Result<(), Failure> {
        match format {
            Format::Text => {
                for l in &self.lines {
                    println!("{l}");
                }
                println!("{} checks, {} failed", self.lines.len(), self.failures.len());
            }
            Format::Json => print_json(&json!({
                "checks": self.json,
                "failed": self.failures.len(),
            })),
        }
        if self.failures.is_empty() {
            return Ok(());
        }
        let mut text = format!("# synor {command}\n# failing checks:\n");
        for f in &self.failures {
            let _ = writeln!(text, "#   {f}");
        }
        text.push_str(&self.input);
        fs::write(reproducer, text)
            .map_err(|e| Failure::Verification(format!("cannot write {}: {e}", reproducer.display())))?;
        Err(Failure::Verification(format!(
            "{} of {} checks failed; reproducer written to {}",
            self.failures.len(),
            self.lines.len(),
            reproducer.display()
        )))
    }
}

pub fn verify(which: Verify, field: Field, format: Format, reproducer: &Path) -> Result<(), Failure> {
    match which {
        Verify::Subadditivity { ideal, exact } => {
            let (spec, l) = load_lattice(&ideal.input, ideal.vars.as_deref())?;
            let command = format!("verify subadditivity{}", if exact { " --exact" } else { "" });
            subadditivity(&spec, &l, field, exact)?.finish(format, &command, reproducer)
        }
        Verify::Decomposition(a) => {
            let (spec, l) = load_lattice(&a.input, a.vars.as_deref())?;
            decomposition(&spec, &l, field)?.finish(format, "verify decomposition", reproducer)
        }
        Verify::Lattices { max } => {
            let mut report = Report::new(String::new());
            for line in sweep_lattices(max, field).map_err(|e| Failure::Input(e.to_string()))? {
                let json = json!({
                    "lattice": line.hash, "i1": line.i1, "i2": line.i2, "k": line.k,
                    "pass": line.pass, "witness": line.witness, "note": line.note,
                });
                report.push(line.pass, line.to_string(), json);
            }
            report.input = format!("# rerun with: synor verify lattices --max {max} --field {field}\n");
            report.finish(format, "verify lattices", reproducer)
        }
        Verify::Properties { seed, max, count } => {
            let mut report = Report::new(format!(
                "# rerun with: synor verify properties --seed {seed} --max {max} --count {count} --field {field}\n"
            ));
            for (name, checked, failures) in properties::run(seed, max, count, field)? {
                let pass = failures.is_empty();
                let mut line = format!("PROPERTY {name} checked={checked} failed={}", failures.len());
                if let Some(first) = failures.first() {
                    let _ = write!(line, " first={first}");
                }
                let json = json!({ "property": name, "checked": checked, "failures": failures });
                report.push(pass, line, json);
            }
            report.finish(format, "verify properties", reproducer)
        }
    }
}

fn subadditivity(spec: &IdealSpec, l: &LcmLattice, field: Field, exact: bool) -> Result<Report, Failure> {
    let table = betti_from_intervals(l, field);
    let name = |x: usize| l.label(x).display(l.vars()).to_string();
    let mut report = Report::new(spec.to_text());
    for (i1, i2, k) in subadditivity_triples(&table) {
        let r = check_subadditivity(l, &table, i1, i2, k).map_err(internal)?;
        let pass = r.holds() && (!exact || r.exact_degrees());
        let witnesses: Vec<String> = r
            .witnesses
            .iter()
            .map(|(m, w)| match w {
                Some(w) => format!("{}={}|{}{}", name(*m), name(w.n1), name(w.n2), if w.exact_degrees { "" } else { "~" }),
                None => format!("{}=none", name(*m)),
            })
            .collect();
        let line = format!(
            "i1={i1} i2={i2} k={k} t={} <= {} RESULT={} witness={}",
            r.lhs,
            r.rhs,
            if pass { "pass" } else { "fail" },
            if witnesses.is_empty() { "-".into() } else { witnesses.join(";") }
        );
        let json = json!({
            "i1": i1, "i2": i2, "k": k, "lhs": r.lhs, "rhs": r.rhs, "pass": pass,
            "inequality": r.inequality_holds(), "exact_degrees": r.exact_degrees(),
            "witnesses": r.witnesses.iter().map(|(m, w)| json!({
                "m": name(*m),
                "n1": w.as_ref().map(|w| name(w.n1)),
                "n2": w.as_ref().map(|w| name(w.n2)),
                "exact_degrees": w.as_ref().map(|w| w.exact_degrees),
            })).collect::<Vec<_>>(),
        });
        report.push(pass, line, json);
    }
    Ok(report)
}

fn decomposition(spec: &IdealSpec, l: &LcmLattice, field: Field) -> Result<Report, Failure> {
    let name = |x: usize| l.label(x).display(l.vars()).to_string();
    let mut report = Report::new(spec.to_text());
    let bottom = l.bottom();
    for m in (0..l.len()).filter(|&m| m != bottom) {
        let interval = l.open_interval(bottom, m).map_err(internal)?;
        // ranks[s] is the dimension of H_{s-1}; a class there splits as i1 + i2 = s + 1
        for (s, _) in homology_ranks(&interval, field).iter().enumerate().filter(|&(s, &r)| r > 0 && s > 0) {
            for i1 in 1..=s {
                let i2 = s + 1 - i1;
                let (pass, witness) = match verify_interval_decomposition(l, m, i1, i2, field) {
                    Ok(w) => (w.certify(l, field) && l.join(w.n1, w.n2) == m, format!("{},{}", name(w.n1), name(w.n2))),
                    Err(e) => (false, format!("error: {e}")),
                };
                let line = format!(
                    "m={} i1={i1} i2={i2} RESULT={} witness={witness}",
                    name(m),
                    if pass { "pass" } else { "fail" }
                );
                report.push(pass, line, json!({ "m": name(m), "i1": i1, "i2": i2, "pass": pass, "witness": witness }));
            }
        }
    }
    Ok(report)
}
