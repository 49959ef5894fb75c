//! The subcommands, as functions returning reports.

use std::time::Instant;

use almono_core::am::{analyze, verify_witnesses, Census, ScanOptions};
use almono_core::lfun::{
    build_constraints, corollary2_check, theorem1_search, DEFAULT_BOUND, DEFAULT_BUDGET,
};
use almono_core::symcert::{certify_sn, Branch};
use almono_core::{subgroup_classes, CharacterTable, PermGroup, DEFAULT_CAP};

use crate::corpus::CorpusEntry;
use crate::report::*;
use crate::spec::GroupSpec;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub cap: u64,
    pub fast: bool,
    pub witnesses: bool,
    pub bound: i64,
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cap: DEFAULT_CAP,
            fast: false,
            witnesses: false,
            bound: DEFAULT_BOUND,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn info(name: &str, g: &PermGroup) -> GroupInfo {
    GroupInfo {
        name: name.to_string(),
        order: g.order() as u64,
        degree: g.degree(),
    }
}

fn cycles(g: &PermGroup, elements: &[u32]) -> Result<Vec<String>, CliError> {
    let table = g.table()?;
    Ok(elements
        .iter()
        .map(|&x| table.perm(x).to_string())
        .collect())
}

pub fn cmd_check(spec: &GroupSpec, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let (name, g) = spec.resolve(opts.cap)?;
    let census = Census::compute(&g)?;
    let verdict = analyze(&census, ScanOptions { fast: opts.fast })?;
    let verified = verify_witnesses(&census, &verdict.matrix)?;
    let listed = verdict.matrix.witness_list();
    let witnesses = if opts.witnesses {
        let mut records = Vec::with_capacity(listed.len());
        for &((j, k), w) in &listed {
            let class = &census.classes[w.subgroup_class];
            records.push(WitnessRecord {
                contains: j,
                excludes: k,
                subgroup_class: w.subgroup_class,
                subgroup_order: class.order,
                linear_character: w.character,
                subgroup_generators: cycles(&g, class.representative.generators())?,
            });
        }
        Some(records)
    } else {
        None
    };
    let mut command = format!("check {name}");
    if opts.fast {
        command.push_str(" --fast");
    }
    Ok(Report {
        command,
        group: Some(info(&name, &g)),
        payload: Payload::Check(CheckPayload {
            irreducibles: census.r(),
            degrees: census.chars.degrees().to_vec(),
            subgroup_classes: census.classes.len(),
            induced_pairs: census.pairs().len(),
            almost_monomial: verdict.almost_monomial,
            monomial: verdict.monomial,
            failing_pairs: verdict.failing_pairs.clone(),
            witness_count: listed.len(),
            witnesses_verified: verified,
            witnesses,
        }),
        elapsed: Some(start.elapsed()),
        exit_code: if verdict.almost_monomial { 0 } else { 1 },
    })
}

pub fn cmd_table(spec: &GroupSpec, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let (name, g) = spec.resolve(opts.cap)?;
    let table = g.table()?;
    let chars = CharacterTable::compute(&g)?;
    chars.verify_orthogonality()?;
    let classes = table
        .classes()
        .iter()
        .map(|c| ClassRecord {
            representative: c.representative.to_string(),
            size: c.size,
            element_order: c.element_order,
        })
        .collect();
    let rows = chars
        .irreducibles()
        .iter()
        .map(|chi| chi.values().iter().map(|v| v.to_string()).collect())
        .collect();
    Ok(Report {
        command: format!("table {name}"),
        group: Some(info(&name, &g)),
        payload: Payload::Table(TablePayload {
            conductor: table.exponent(),
            classes,
            degrees: chars.degrees().to_vec(),
            rows,
        }),
        elapsed: Some(start.elapsed()),
        exit_code: 0,
    })
}

pub fn cmd_subgroups(spec: &GroupSpec, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let (name, g) = spec.resolve(opts.cap)?;
    let classes = subgroup_classes(&g)?;
    let mut records = Vec::with_capacity(classes.len());
    for (index, c) in classes.iter().enumerate() {
        records.push(SubgroupRecord {
            index,
            order: c.order,
            class_length: c.class_length,
            abelianization: c.abelianization.clone(),
            linear_characters: c.abelianization_order(),
            generators: cycles(&g, c.representative.generators())?,
        });
    }
    Ok(Report {
        command: format!("subgroups {name}"),
        group: Some(info(&name, &g)),
        payload: Payload::Subgroups(SubgroupsPayload {
            class_count: classes.len(),
            subgroup_count: classes.iter().map(|c| c.class_length).sum(),
            classes: records,
        }),
        elapsed: Some(start.elapsed()),
        exit_code: 0,
    })
}

pub fn cmd_sn_certify(n: usize, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let cert = certify_sn(n)?;
    let verified = cert.verify().is_ok();
    let (trivial, sign) = cert.branch_counts();
    let witnesses = opts.witnesses.then(|| {
        (0..cert.len())
            .map(|i| {
                let w = cert.witness(i);
                let vanishing = match w.branch {
                    Branch::TrivialOnYoung => format!("K[{},{}]", w.beta, w.alpha),
                    Branch::SignOnConjugateYoung => {
                        format!("K[{},{}]", w.beta.conjugate(), w.alpha.conjugate())
                    }
                };
                SnPairRecord {
                    alpha: w.alpha.to_string(),
                    beta: w.beta.to_string(),
                    branch: w.branch.to_string(),
                    vanishing_kostka: vanishing,
                    trivial_kostka: w.trivial_kostka,
                }
            })
            .collect()
    });
    Ok(Report {
        command: format!("sn-certify {n}"),
        group: None,
        payload: Payload::SnCertificate(SnPayload {
            n,
            partitions: cert.partitions.len(),
            pairs: cert.len(),
            trivial_branch: trivial,
            sign_branch: sign,
            verified,
            witnesses,
        }),
        elapsed: Some(start.elapsed()),
        exit_code: if verified { 0 } else { 1 },
    })
}

pub fn cmd_theorem1(spec: &GroupSpec, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let (name, g) = spec.resolve(opts.cap)?;
    let census = Census::compute(&g)?;
    let verdict = analyze(&census, ScanOptions { fast: true })?;
    let system = build_constraints(&census)?;
    let search = theorem1_search(&system, opts.bound, opts.budget)?;
    let corollary = corollary2_check(&system, opts.bound, opts.budget)?;
    let am = verdict.almost_monomial;
    let note = match (am, &search.found) {
        (true, None) => String::new(),
        (true, Some(_)) => {
            "a counterexample for an almost monomial group contradicts the holomorphy theorem"
                .into()
        }
        (false, None) => "group is not almost monomial; no pattern found within the bound".into(),
        (false, Some(_)) => {
            "group is not almost monomial; pattern reported as exploratory output".into()
        }
    };
    Ok(Report {
        command: format!("theorem1 {name} --bound {}", opts.bound),
        group: Some(info(&name, &g)),
        payload: Payload::Theorem1(Theorem1Payload {
            bound: opts.bound,
            irreducibles: system.r(),
            constraint_rows: system.rows().len(),
            degree_row: system.degree_row().to_vec(),
            almost_monomial: am,
            counterexample: search.found.map(|n| n.0),
            nodes: search.nodes,
            corollary_holds: corollary,
            note,
        }),
        elapsed: Some(start.elapsed()),
        exit_code: if am && !corollary { 1 } else { 0 },
    })
}

pub fn cmd_corpus(entries: &[CorpusEntry], opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    if entries.is_empty() {
        warnings.push("corpus is empty; nothing to check".to_string());
    }
    let mut records = Vec::with_capacity(entries.len());
    for e in entries {
        records.push(run_entry(e, opts));
    }
    let passed = records.iter().filter(|r| r.pass).count();
    let failed = records.len() - passed;
    Ok(Report {
        command: "corpus".into(),
        group: None,
        payload: Payload::Corpus(CorpusPayload {
            entries: records,
            passed,
            failed,
            warnings,
        }),
        elapsed: Some(start.elapsed()),
        exit_code: if failed == 0 { 0 } else { 1 },
    })
}

fn run_entry(e: &CorpusEntry, opts: &Options) -> CorpusRecord {
    let mut record = CorpusRecord {
        group: e.group.clone(),
        order: None,
        expected_almost_monomial: e.almost_monomial,
        observed_almost_monomial: None,
        expected_monomial: e.monomial,
        observed_monomial: None,
        pass: false,
        error: None,
    };
    let outcome = (|| -> Result<(u64, bool, bool), CliError> {
        let spec = GroupSpec::parse(std::slice::from_ref(&e.group))?;
        let (_, g) = spec.resolve(opts.cap)?;
        let census = Census::compute(&g)?;
        let v = analyze(&census, ScanOptions { fast: opts.fast })?;
        Ok((g.order() as u64, v.almost_monomial, v.monomial))
    })();
    match outcome {
        Ok((order, am, mono)) => {
            record.order = Some(order);
            record.observed_almost_monomial = Some(am);
            if e.monomial.is_some() {
                record.observed_monomial = Some(mono);
            }
            record.pass = am == e.almost_monomial && e.monomial.is_none_or(|m| m == mono);
        }
        Err(err) => record.error = Some(err.to_string()),
    }
    record
}
