//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use almono_cli::{cmd_corpus, default_corpus, GroupSpec, Options};
use almono_core::charops::SubgroupFunction;
use almono_core::lfun::{build_constraints, corollary2_check, theorem1_search, DEFAULT_BUDGET};
use almono_core::symcert::KostkaTable;
use almono_core::{
    analyze, certify_sn, constituents, induce, is_almost_monomial, kostka, linear_characters,
    normal_subgroups, partitions, restrict, subgroup_classes, Census, CharacterTable, Cyclotomic,
    Family, LinearCharacter, Partition, PermGroup, Permutation, Preset, ScanOptions, Subgroup,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn corpus_groups() -> Result<Vec<(String, PermGroup, bool)>, String> {
    default_corpus()
        .into_iter()
        .map(|entry| {
            let spec = GroupSpec::parse(std::slice::from_ref(&entry.group)).map_err(e)?;
            let (name, g) = spec.resolve(almono_core::DEFAULT_CAP).map_err(e)?;
            Ok((name, g, entry.almost_monomial))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let entries = default_corpus();
    let report = cmd_corpus(&entries, &Options::default()).map_err(e)?;
    let text = report.to_text(false);
    let failures: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    ensure!(
        report.exit_code == 0 && failures.is_empty(),
        "{}",
        failures.join("; ")
    );
    ensure!(entries.len() == 18, "corpus has {} groups", entries.len());
    Ok(format!("{} corpus verdicts match", entries.len()))
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    for n in 1..=20 {
        let cert = certify_sn(n).map_err(e)?;
        let p = cert.partitions.len();
        ensure!(
            cert.len() == p * (p - 1),
            "n = {n}: {} of {} pairs",
            cert.len(),
            p * (p - 1)
        );
        cert.verify().map_err(|err| format!("n = {n}: {err}"))?;
        // re-check every vanishing value by strip removal
        if n <= 10 {
            for i in 0..cert.len() {
                let w = cert.witness(i);
                let (shape, content) = match w.branch {
                    almono_core::Branch::TrivialOnYoung => (w.beta.clone(), w.alpha.clone()),
                    almono_core::Branch::SignOnConjugateYoung => {
                        (w.beta.conjugate(), w.alpha.conjugate())
                    }
                };
                ensure!(
                    KostkaTable::new(&content).count(&shape) == 0,
                    "n = {n}: K[{shape},{content}] nonzero"
                );
            }
        }
        total += cert.len();
    }
    Ok(format!("S1..S20 certified, {total} pairs re-verified"))
}

fn young_subgroup(g: &PermGroup, alpha: &Partition) -> Result<Subgroup, String> {
    let table = g.table().map_err(e)?;
    let n = g.degree();
    let mut gens = Vec::new();
    let mut start = 0usize;
    for &part in alpha.parts() {
        for i in start..start + part as usize - 1 {
            let t = Permutation::from_cycles(n, &[&[i + 1, i + 2]]).map_err(e)?;
            gens.push(table.index_of(&t).ok_or("transposition not in group")?);
        }
        start += part as usize;
    }
    Ok(Subgroup::generated(table, &gens))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let g = Family::Symmetric(n).build().map_err(e)?;
        let table = g.table().map_err(e)?;
        let chars = CharacterTable::compute(&g).map_err(e)?;
        let parts = partitions(n).map_err(e)?;
        // fingerprint of chi: multiplicities in every Ind 1 and Ind sgn
        let mut trivial_fp = vec![Vec::new(); chars.len()];
        let mut sign_fp = vec![Vec::new(); chars.len()];
        for alpha in &parts {
            let young = young_subgroup(&g, alpha)?;
            ensure!(
                young.order()
                    == alpha
                        .parts()
                        .iter()
                        .map(|&k| (1..=k as u64).product::<u64>())
                        .product::<u64>(),
                "Young subgroup order for {alpha}"
            );
            let one = LinearCharacter::trivial(table, &young);
            let sgn = LinearCharacter::sign(table, &young);
            let m1 = constituents(&induce(table, &young, &one).map_err(e)?, &chars).map_err(e)?;
            let ms = constituents(&induce(table, &young, &sgn).map_err(e)?, &chars).map_err(e)?;
            for i in 0..chars.len() {
                trivial_fp[i].push(m1[i] as u128);
                sign_fp[i].push(ms[i] as u128);
            }
        }
        let mut by_fingerprint: BTreeMap<Vec<u128>, &Partition> = BTreeMap::new();
        for beta in &parts {
            let fp = parts
                .iter()
                .map(|a| kostka(beta, a))
                .collect::<Result<Vec<_>, _>>()
                .map_err(e)?;
            by_fingerprint.insert(fp, beta);
        }
        ensure!(
            by_fingerprint.len() == parts.len(),
            "n = {n}: Kostka rows not distinct"
        );
        ensure!(chars.len() == parts.len(), "n = {n}: class count");
        let mut matched = Vec::new();
        for i in 0..chars.len() {
            let beta = *by_fingerprint
                .get(&trivial_fp[i])
                .ok_or(format!("n = {n}: chi{i} matches no Kostka row"))?;
            // <Ind sgn, chi_beta> = <Ind 1, chi_beta x sgn> = K[beta', alpha]
            let bc = beta.conjugate();
            for (a, alpha) in parts.iter().enumerate() {
                let expected = kostka(&bc, alpha).map_err(e)?;
                ensure!(
                    sign_fp[i][a] == expected,
                    "n = {n}: sign identity at {beta}, {alpha}"
                );
            }
            matched.push(beta.clone());
        }
        matched.sort();
        matched.dedup();
        ensure!(
            matched.len() == parts.len(),
            "n = {n}: fingerprint map is not a bijection"
        );
        checked += parts.len() * parts.len();
    }
    Ok(format!(
        "S1..S6 induction multiplicities equal Kostka numbers ({checked} entries each branch)"
    ))
}

fn abelian_groups(max: usize) -> Result<Vec<(String, PermGroup)>, String> {
    fn prime_partitions(k: u32, max_part: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=k.min(max_part)).rev() {
            for mut rest in prime_partitions(k - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for m in 1..=max {
        // factor m
        let mut factors = Vec::new();
        let mut x = m;
        let mut p = 2;
        while x > 1 {
            let mut k = 0;
            while x % p == 0 {
                x /= p;
                k += 1;
            }
            if k > 0 {
                factors.push((p, k));
            }
            p += 1;
        }
        let mut choices: Vec<Vec<usize>> = vec![vec![]];
        for &(p, k) in &factors {
            let mut next = Vec::new();
            for c in &choices {
                for part in prime_partitions(k, k) {
                    let mut c = c.clone();
                    c.extend(part.iter().map(|&j| p.pow(j)));
                    next.push(c);
                }
            }
            choices = next;
        }
        for cyclic in choices {
            let mut g = Family::Cyclic(1).build().map_err(e)?;
            for &c in &cyclic {
                g = g
                    .direct_product(&Family::Cyclic(c).build().map_err(e)?)
                    .map_err(e)?;
            }
            ensure!(g.order() == m as u128, "abelian group of order {m}");
            let name = if cyclic.is_empty() {
                "C1".to_string()
            } else {
                cyclic
                    .iter()
                    .map(|c| format!("C{c}"))
                    .collect::<Vec<_>>()
                    .join("x")
            };
            out.push((name, g));
        }
    }
    Ok(out)
}

fn criterion_4() -> Outcome {
    let mut groups = Vec::new();
    for f in [
        Family::Symmetric(3),
        Family::Symmetric(4),
        Family::Symmetric(5),
        Family::Sl2(3),
        Family::Dihedral(4),
        Family::Preset(Preset::Quaternion),
    ] {
        groups.push((f.to_string(), f.build().map_err(e)?));
    }
    let abelian = abelian_groups(32)?;
    let abelian_count = abelian.len();
    groups.extend(abelian);
    let mut quotients = 0;
    for (name, g) in &groups {
        ensure!(
            is_almost_monomial(g).map_err(e)?.almost_monomial,
            "{name} is not almost monomial"
        );
        for n in normal_subgroups(g).map_err(e)? {
            let sub = n.representative.to_perm_group(g).map_err(e)?;
            let q = g.coset_action_quotient(&sub).map_err(e)?;
            ensure!(
                q.order() * sub.order() == g.order(),
                "{name}: quotient order"
            );
            ensure!(
                is_almost_monomial(&q).map_err(e)?.almost_monomial,
                "{name} / N (|N| = {}) is not almost monomial",
                sub.order()
            );
            quotients += 1;
        }
    }
    Ok(format!(
        "{quotients} quotients over {} groups ({abelian_count} abelian) are almost monomial",
        groups.len()
    ))
}

fn criterion_5() -> Outcome {
    use Family::*;
    let pairs = [
        (Symmetric(3), Symmetric(3)),
        (Symmetric(3), Cyclic(2)),
        (Symmetric(4), Cyclic(2)),
        (Alternating(4), Cyclic(3)),
        (Sl2(3), Cyclic(2)),
        (Symmetric(4), Symmetric(3)),
        (Alternating(5), Cyclic(2)),
        (Symmetric(5), Cyclic(2)),
        (Dihedral(4), Family::Preset(almono_core::Preset::Quaternion)),
        (Sl2(3), Symmetric(3)),
        (Alternating(4), Alternating(4)),
        (Cyclic(4), Symmetric(4)),
        (Symmetric(5), Symmetric(3)),
        (Gl2(3), Cyclic(1)),
        (Gl2(3), Cyclic(2)),
        (Gl2(3), Cyclic(3)),
        (Gl2(3), Symmetric(3)),
        (Sl2(5), Cyclic(2)),
        (Sl2(5), Cyclic(3)),
        (Alternating(6), Cyclic(2)),
        (Gl2(3), Alternating(4)),
    ];
    let mut verdict = BTreeMap::new();
    let mut mixed = 0;
    for (a, b) in pairs {
        for f in [a, b] {
            if let std::collections::btree_map::Entry::Vacant(slot) = verdict.entry(f.to_string()) {
                let g = f.build().map_err(e)?;
                slot.insert(is_almost_monomial(&g).map_err(e)?.almost_monomial);
            }
        }
        let ga = a.build().map_err(e)?;
        let gb = b.build().map_err(e)?;
        let prod = ga.direct_product(&gb).map_err(e)?;
        ensure!(prod.order() <= 2000, "{a} x {b} too large");
        let expected = verdict[&a.to_string()] && verdict[&b.to_string()];
        let observed = is_almost_monomial(&prod).map_err(e)?.almost_monomial;
        ensure!(
            observed == expected,
            "{a} x {b}: expected {expected}, observed {observed}"
        );
        if verdict[&a.to_string()] != verdict[&b.to_string()] {
            mixed += 1;
        }
    }
    // no pair of non-almost-monomial groups has product order within 2000
    Ok(format!(
        "{} direct products agree ({} true x true, {mixed} true x false)",
        pairs.len(),
        pairs.len() - mixed
    ))
}

fn criterion_6() -> Outcome {
    let mut monomial = 0;
    for (name, g, _) in corpus_groups()? {
        let v = is_almost_monomial(&g).map_err(e)?;
        ensure!(
            !v.monomial || v.almost_monomial,
            "{name} monomial but not almost monomial"
        );
        monomial += v.monomial as usize;
    }
    let sl = Family::Sl2(3).build().map_err(e)?;
    let v = is_almost_monomial(&sl).map_err(e)?;
    ensure!(
        v.almost_monomial && !v.monomial,
        "SL2(3): almost {} monomial {}",
        v.almost_monomial,
        v.monomial
    );
    Ok(format!("{monomial} monomial corpus groups are almost monomial; SL2(3) almost monomial, not monomial"))
}

fn criterion_7() -> Outcome {
    let groups = corpus_groups()?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tables = Vec::new();
    for (name, g, _) in &groups {
        let chars = CharacterTable::compute(g).map_err(e)?;
        let sum: u128 = chars.degrees().iter().map(|&d| (d * d) as u128).sum();
        ensure!(sum == g.order(), "{name}: sum of squared degrees {sum}");
        ensure!(
            chars.len() == g.conjugacy_classes().map_err(e)?.len(),
            "{name}: class count"
        );
        chars
            .verify_orthogonality()
            .map_err(|err| format!("{name}: {err}"))?;
        tables.push(chars);
    }
    let mut triples = 0;
    let candidates: Vec<usize> = (0..groups.len())
        .filter(|&i| groups[i].1.order() <= 720)
        .collect();
    let mut subgroup_cache: BTreeMap<usize, Vec<almono_core::SubgroupClass>> = BTreeMap::new();
    while triples < 120 {
        let gi = *candidates.choose(&mut rng).unwrap();
        let (name, g, _) = &groups[gi];
        let table = g.table().map_err(e)?;
        let chars = &tables[gi];
        if let std::collections::btree_map::Entry::Vacant(slot) = subgroup_cache.entry(gi) {
            slot.insert(subgroup_classes(g).map_err(e)?);
        }
        let classes = &subgroup_cache[&gi];
        let h = &classes[rng.gen_range(0..classes.len())].representative;
        let lins = linear_characters(table, h);
        let lambda = &lins[rng.gen_range(0..lins.len())];
        let chi = chars.character(rng.gen_range(0..chars.len()));
        let lhs = induce(table, h, lambda)
            .map_err(e)?
            .inner_product(chi)
            .map_err(e)?;
        let rhs = SubgroupFunction::from_linear(table, lambda)
            .inner_product(&restrict(table, chi, h).map_err(e)?)
            .map_err(e)?;
        let rhs_conj: Cyclotomic = rhs.conj();
        ensure!(
            lhs == rhs || lhs == rhs_conj,
            "{name}: reciprocity fails at |H| = {}",
            h.order()
        );
        ensure!(
            lhs.as_integer().is_some(),
            "{name}: non-integral multiplicity"
        );
        triples += 1;
    }
    Ok(format!(
        "{} tables satisfy degree, orthogonality and class-count checks; {triples} reciprocity triples exact",
        groups.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut checked = Vec::new();
    for (name, g, am) in corpus_groups()? {
        if !am {
            continue;
        }
        let census = Census::compute(&g).map_err(e)?;
        if census.r() > 12 {
            continue;
        }
        ensure!(
            analyze(&census, ScanOptions { fast: true })
                .map_err(e)?
                .almost_monomial,
            "{name}"
        );
        let system = build_constraints(&census).map_err(e)?;
        let start = Instant::now();
        let search = theorem1_search(&system, 3, DEFAULT_BUDGET).map_err(e)?;
        ensure!(
            search.found.is_none(),
            "{name}: counterexample {:?}",
            search.found
        );
        ensure!(
            corollary2_check(&system, 3, DEFAULT_BUDGET).map_err(e)?,
            "{name}: corollary fails"
        );
        ensure!(start.elapsed().as_secs() < 10, "{name}: search too slow");
        checked.push(name);
    }
    Ok(format!(
        "no counterexample at B = 3 for {}",
        checked.join(" ")
    ))
}

fn shuffled_copy(g: &PermGroup, rng: &mut ChaCha8Rng) -> Result<PermGroup, String> {
    let n = g.degree();
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    let sigma = Permutation::from_images(images).map_err(e)?;
    let inv = sigma.inverse();
    let mut gens = Vec::new();
    for x in g.generators() {
        gens.push(sigma.compose(x).map_err(e)?.compose(&inv).map_err(e)?);
    }
    let extra = gens[0].compose(&gens[gens.len() - 1]).map_err(e)?;
    gens.push(extra);
    gens.shuffle(rng);
    PermGroup::new(n, gens).map_err(e)
}

fn criterion_9() -> Outcome {
    let opts = Options::default();
    let entries = default_corpus();
    let a = cmd_corpus(&entries, &opts).map_err(e)?;
    let b = cmd_corpus(&entries, &opts).map_err(e)?;
    ensure!(a.to_text(false) == b.to_text(false), "text reports differ");
    ensure!(a.to_json() == b.to_json(), "JSON reports differ");
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for f in [Family::Symmetric(4), Family::Sl2(3)] {
        let g = f.build().map_err(e)?;
        let base = is_almost_monomial(&g).map_err(e)?;
        for trial in 0..10 {
            let h = shuffled_copy(&g, &mut rng)?;
            let v = is_almost_monomial(&h).map_err(e)?;
            ensure!(
                v.almost_monomial == base.almost_monomial && v.monomial == base.monomial,
                "{f}: trial {trial} changed the verdict"
            );
        }
    }
    Ok("corpus reports byte-identical; 20 shuffled-generator trials agree".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("corpus verdicts", criterion_1),
        ("S_n certificates up to 20", criterion_2),
        ("Young subgroup induction vs Kostka", criterion_3),
        ("quotients stay almost monomial", criterion_4),
        ("direct products", criterion_5),
        ("monomial implies almost monomial", criterion_6),
        ("character table invariants", criterion_7),
        ("holomorphy search", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} ({secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
