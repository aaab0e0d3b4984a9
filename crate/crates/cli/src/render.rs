use std::collections::BTreeMap;
use std::fmt::Write as _;

use beid_core::census::CensusOutcome;
use beid_core::dual::{prime_label, DualGraph};
use beid_core::{ClassificationReport, CutSetFamily, Graph, Verdict, VertexSet};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verdict_line(v: Verdict) -> String {
    match v {
        Verdict::CohenMacaulay => "Cohen-Macaulay (by characterization)".to_string(),
        other => other.to_string(),
    }
}

pub fn report_text(r: &ClassificationReport, family: &CutSetFamily, warnings: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph6:        {}", r.graph6);
    let _ = writeln!(s, "vertices:      {}, edges: {}", r.n, r.edges);
    let _ = writeln!(s, "bipartite:     {}", yes_no(r.bipartite));
    let _ = writeln!(s, "connected:     {}", yes_no(r.connected));
    let sets: Vec<String> = family.sets().iter().map(VertexSet::to_string).collect();
    let _ = writeln!(s, "cut sets:      {} [{}]", r.cut_sets, sets.join(", "));
    let _ = writeln!(s, "height:        {}", r.height);
    match &r.unmixed_witness {
        None => {
            let _ = writeln!(s, "unmixed:       yes");
        }
        Some(w) => {
            let _ = writeln!(
                s,
                "unmixed:       no, S = {} has c = {} (expected {})",
                w.set, w.c, w.expected
            );
        }
    }
    match r.peeling_witness {
        None => {
            let _ = writeln!(s, "peeling:       holds");
        }
        Some(w) => {
            let _ = writeln!(s, "peeling:       fails at {w}");
        }
    }
    let _ = writeln!(
        s,
        "dual graph:    {}",
        if r.dual_connected {
            "connected"
        } else {
            "disconnected"
        }
    );
    if let Some(h) = r.hirsch {
        match h.diameter {
            Some(d) => {
                let _ = writeln!(
                    s,
                    "diameter:      {d} (Hirsch bound {}: {})",
                    h.bound,
                    if h.holds { "holds" } else { "fails" }
                );
            }
            None => {
                let _ = writeln!(s, "diameter:      infinite");
            }
        }
    }
    if let Some(cert) = &r.certificate {
        let _ = writeln!(s, "certificate:   {:?}", cert.shape());
        if let Some(e) = &r.expression {
            let _ = writeln!(s, "expression:    {e}");
        }
    }
    if let Some(refutation) = &r.refutation {
        let _ = writeln!(s, "refutation:    {refutation}");
    }
    for (i, c) in r.components.iter().enumerate() {
        let _ = writeln!(
            s,
            "component {}:   {} ({})",
            i + 1,
            c.graph6,
            verdict_line(c.verdict)
        );
    }
    for note in &r.notes {
        let _ = writeln!(s, "note:          {note}");
    }
    for w in warnings {
        let _ = writeln!(s, "warning:       {w}");
    }
    let _ = writeln!(s, "verdict:       {}", verdict_line(r.verdict));
    s
}

pub fn dual_text(d: &DualGraph) -> String {
    let mut s = String::new();
    let labels: Vec<String> = d.nodes.iter().map(|&n| prime_label(n)).collect();
    let _ = writeln!(s, "nodes ({}): {}", labels.len(), labels.join(" "));
    let _ = writeln!(s, "edges ({}):", d.edges.len());
    for &(i, j) in &d.edges {
        let _ = writeln!(s, "  {} -- {}", labels[i], labels[j]);
    }
    let isolated: Vec<&str> = (0..d.node_count())
        .filter(|&i| d.neighbors(i).is_empty() && d.node_count() > 1)
        .map(|i| labels[i].as_str())
        .collect();
    if !isolated.is_empty() {
        let _ = writeln!(s, "isolated: {}", isolated.join(" "));
    }
    let h = d.hirsch();
    let _ = writeln!(s, "connected: {}", yes_no(d.is_connected()));
    match h.diameter {
        Some(x) => {
            let _ = writeln!(
                s,
                "diameter: {x} (Hirsch bound {}: {})",
                h.bound,
                if h.holds { "holds" } else { "fails" }
            );
        }
        None => {
            let _ = writeln!(s, "diameter: infinite");
        }
    }
    s
}

pub fn generated_text(g: &Graph, predicted: Option<&[VertexSet]>, warnings: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph6:   {}", beid_core::graph6::encode(g));
    let _ = writeln!(s, "vertices: {}", g.n());
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let _ = writeln!(s, "edges:    {}", edges.join(" "));
    if let Some(p) = predicted {
        let sets: Vec<String> = p.iter().map(VertexSet::to_string).collect();
        let _ = writeln!(s, "cut sets: {}", sets.join(" "));
    }
    for w in warnings {
        let _ = writeln!(s, "warning:  {w}");
    }
    s
}

#[derive(Default)]
struct SizeTally {
    graphs: usize,
    unmixed: usize,
    cm: usize,
    unmixed_not_cm: Vec<String>,
}

pub fn census_text(outcome: &CensusOutcome) -> String {
    let mut by_n: BTreeMap<usize, SizeTally> = BTreeMap::new();
    for row in &outcome.rows {
        let t = by_n.entry(row.n).or_default();
        t.graphs += 1;
        t.unmixed += row.unmixed as usize;
        t.cm += row.dual_connected as usize;
        if row.bipartite && row.unmixed && !row.dual_connected {
            t.unmixed_not_cm.push(row.graph6.clone());
        }
    }
    let mut s = String::from(" n  graphs  unmixed  dual-connected  unmixed-not-CM\n");
    for (n, t) in &by_n {
        let _ = writeln!(
            s,
            "{n:>2}  {:>6}  {:>7}  {:>14}  {}",
            t.graphs,
            t.unmixed,
            t.cm,
            if t.unmixed_not_cm.is_empty() {
                "-".to_string()
            } else {
                t.unmixed_not_cm.join(" ")
            }
        );
    }
    let _ = writeln!(s, "violations: {}", outcome.violations.len());
    for v in &outcome.violations {
        let _ = writeln!(s, "  {} [{}] {}", v.graph6, v.check, v.detail);
    }
    s
}
