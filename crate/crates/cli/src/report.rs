//! Reports: one struct per command, rendered as text or JSON.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: u64,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    pub payload: Payload,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
    #[serde(skip)]
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Check(CheckPayload),
    Table(TablePayload),
    Subgroups(SubgroupsPayload),
    SnCertificate(SnPayload),
    Theorem1(Theorem1Payload),
    Corpus(CorpusPayload),
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub contains: usize,
    pub excludes: usize,
    pub subgroup_class: usize,
    pub subgroup_order: u64,
    pub linear_character: usize,
    pub subgroup_generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckPayload {
    pub irreducibles: usize,
    pub degrees: Vec<u64>,
    pub subgroup_classes: usize,
    pub induced_pairs: usize,
    pub almost_monomial: bool,
    pub monomial: bool,
    pub failing_pairs: Vec<(usize, usize)>,
    pub witness_count: usize,
    pub witnesses_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessRecord>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub representative: String,
    pub size: u64,
    pub element_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TablePayload {
    pub conductor: u64,
    pub classes: Vec<ClassRecord>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRecord {
    pub index: usize,
    pub order: u64,
    pub class_length: u64,
    pub abelianization: Vec<u64>,
    pub linear_characters: u64,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupsPayload {
    pub class_count: usize,
    pub subgroup_count: u64,
    pub classes: Vec<SubgroupRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SnPairRecord {
    pub alpha: String,
    pub beta: String,
    pub branch: String,
    pub vanishing_kostka: String,
    pub trivial_kostka: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SnPayload {
    pub n: usize,
    pub partitions: usize,
    pub pairs: usize,
    pub trivial_branch: usize,
    pub sign_branch: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<SnPairRecord>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Payload {
    pub bound: i64,
    pub irreducibles: usize,
    pub constraint_rows: usize,
    pub degree_row: Vec<u64>,
    pub almost_monomial: bool,
    pub counterexample: Option<Vec<i64>>,
    pub nodes: u64,
    pub corollary_holds: bool,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRecord {
    pub group: String,
    pub order: Option<u64>,
    pub expected_almost_monomial: bool,
    pub observed_almost_monomial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_monomial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_monomial: Option<bool>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusPayload {
    pub entries: Vec<CorpusRecord>,
    pub passed: usize,
    pub failed: usize,
    pub warnings: Vec<String>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable text; timing is appended only when requested.
    pub fn to_text(&self, with_timing: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(g) = &self.group {
            let _ = writeln!(
                out,
                "group: {} (order {}, degree {})",
                g.name, g.order, g.degree
            );
        }
        match &self.payload {
            Payload::Check(p) => render_check(&mut out, p),
            Payload::Table(p) => render_table(&mut out, p),
            Payload::Subgroups(p) => render_subgroups(&mut out, p),
            Payload::SnCertificate(p) => render_sn(&mut out, p),
            Payload::Theorem1(p) => render_theorem1(&mut out, p),
            Payload::Corpus(p) => render_corpus(&mut out, p),
        }
        if with_timing {
            if let Some(t) = self.elapsed {
                let _ = writeln!(out, "elapsed: {:.3} s", t.as_secs_f64());
            }
        }
        out
    }
}

fn render_check(out: &mut String, p: &CheckPayload) {
    let _ = writeln!(out, "irreducibles: {}", p.irreducibles);
    let _ = writeln!(out, "degrees: {}", join(&p.degrees, " "));
    let _ = writeln!(out, "subgroup classes: {}", p.subgroup_classes);
    let _ = writeln!(out, "induced pairs: {}", p.induced_pairs);
    let _ = writeln!(out, "almost monomial: {}", yes(p.almost_monomial));
    let _ = writeln!(out, "monomial: {}", yes(p.monomial));
    if p.failing_pairs.is_empty() {
        let _ = writeln!(out, "failing pairs: none");
    } else {
        let pairs: Vec<String> = p
            .failing_pairs
            .iter()
            .map(|(j, k)| format!("({j},{k})"))
            .collect();
        let _ = writeln!(out, "failing pairs: {}", pairs.join(" "));
    }
    let _ = writeln!(
        out,
        "witnesses: {} (verified: {})",
        p.witness_count,
        yes(p.witnesses_verified)
    );
    if let Some(ws) = &p.witnesses {
        for w in ws {
            let _ = writeln!(
                out,
                "  chi{} not chi{}: class {} (order {}) character {} <{}>",
                w.contains,
                w.excludes,
                w.subgroup_class,
                w.subgroup_order,
                w.linear_character,
                w.subgroup_generators.join(", ")
            );
        }
    }
}

fn render_table(out: &mut String, p: &TablePayload) {
    let _ = writeln!(out, "values in Q(z), z = exp(2 pi i / {})", p.conductor);
    for (i, c) in p.classes.iter().enumerate() {
        let _ = writeln!(
            out,
            "class {i}: {} size {} order {}",
            c.representative, c.size, c.element_order
        );
    }
    for (i, row) in p.rows.iter().enumerate() {
        let _ = writeln!(out, "chi{i} [{}]: {}", p.degrees[i], row.join(" | "));
    }
}

fn render_subgroups(out: &mut String, p: &SubgroupsPayload) {
    let _ = writeln!(out, "classes: {}", p.class_count);
    let _ = writeln!(out, "subgroups: {}", p.subgroup_count);
    for c in &p.classes {
        let ab = if c.abelianization.is_empty() {
            "1".to_string()
        } else {
            join(&c.abelianization, "x")
        };
        let _ = writeln!(
            out,
            "{:>4}: order {} length {} abelianization {} linear {} <{}>",
            c.index,
            c.order,
            c.class_length,
            ab,
            c.linear_characters,
            c.generators.join(", ")
        );
    }
}

fn render_sn(out: &mut String, p: &SnPayload) {
    let _ = writeln!(out, "n: {}", p.n);
    let _ = writeln!(out, "partitions: {}", p.partitions);
    let _ = writeln!(out, "witnessed pairs: {}", p.pairs);
    let _ = writeln!(out, "trivial branch: {}", p.trivial_branch);
    let _ = writeln!(out, "sign branch: {}", p.sign_branch);
    let _ = writeln!(out, "verified: {}", yes(p.verified));
    if let Some(ws) = &p.witnesses {
        for w in ws {
            let _ = writeln!(
                out,
                "  {} {}: {} ({} = 0)",
                w.alpha, w.beta, w.branch, w.vanishing_kostka
            );
        }
    }
}

fn render_theorem1(out: &mut String, p: &Theorem1Payload) {
    let _ = writeln!(out, "bound: {}", p.bound);
    let _ = writeln!(out, "irreducibles: {}", p.irreducibles);
    let _ = writeln!(out, "constraint rows: {}", p.constraint_rows);
    let _ = writeln!(out, "degree row: {}", join(&p.degree_row, " "));
    let _ = writeln!(out, "almost monomial: {}", yes(p.almost_monomial));
    match &p.counterexample {
        None => {
            let _ = writeln!(out, "counterexample: none");
        }
        Some(n) => {
            let _ = writeln!(out, "counterexample: {}", join(n, " "));
        }
    }
    let _ = writeln!(out, "search nodes: {}", p.nodes);
    let _ = writeln!(out, "corollary holds: {}", yes(p.corollary_holds));
    if !p.note.is_empty() {
        let _ = writeln!(out, "note: {}", p.note);
    }
}

fn render_corpus(out: &mut String, p: &CorpusPayload) {
    for w in &p.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for e in &p.entries {
        let observed = match e.observed_almost_monomial {
            Some(b) => yes(b).to_string(),
            None => "error".to_string(),
        };
        let mut line = format!(
            "{} {:<10} order {:>5}  expected {:<5} observed {}",
            if e.pass { "PASS" } else { "FAIL" },
            e.group,
            e.order.map_or("-".to_string(), |o| o.to_string()),
            yes(e.expected_almost_monomial),
            observed
        );
        if let (Some(x), Some(y)) = (e.expected_monomial, e.observed_monomial) {
            let _ = write!(line, "  monomial expected {} observed {}", yes(x), yes(y));
        }
        if let Some(err) = &e.error {
            let _ = write!(line, "  ({err})");
        }
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "passed: {}  failed: {}", p.passed, p.failed);
}
