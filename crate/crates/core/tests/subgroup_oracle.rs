//! Subgroup classes against a brute-force enumeration built from permutation products.

use std::collections::{BTreeSet, HashSet};

use almono_core::{subgroup_classes, Family, PermGroup, Permutation, Preset};

type ElemSet = BTreeSet<Vec<u32>>;

fn closure(seed: &[Permutation]) -> ElemSet {
    let degree = seed[0].degree();
    let mut set: ElemSet = BTreeSet::new();
    let id = Permutation::identity(degree);
    set.insert(id.images().to_vec());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in seed {
            let y = x.compose(s).unwrap();
            if set.insert(y.images().to_vec()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn to_perm(images: &[u32]) -> Permutation {
    Permutation::from_images(images.to_vec()).unwrap()
}

/// Every subgroup, grown from the trivial one by adjoining single elements.
fn all_subgroups(elements: &[Permutation]) -> HashSet<ElemSet> {
    let degree = elements[0].degree();
    let trivial: ElemSet = [Permutation::identity(degree).images().to_vec()].into();
    let mut found: HashSet<ElemSet> = [trivial.clone()].into();
    let mut queue = vec![trivial];
    while let Some(sub) = queue.pop() {
        for g in elements {
            if sub.contains(g.images()) {
                continue;
            }
            let mut seed: Vec<Permutation> = sub.iter().map(|x| to_perm(x)).collect();
            seed.push(g.clone());
            let joined = closure(&seed);
            if found.insert(joined.clone()) {
                queue.push(joined);
            }
        }
    }
    found
}

fn conjugate_set(set: &ElemSet, g: &Permutation) -> ElemSet {
    let inv = g.inverse();
    set.iter()
        .map(|x| {
            g.compose(&to_perm(x))
                .unwrap()
                .compose(&inv)
                .unwrap()
                .images()
                .to_vec()
        })
        .collect()
}

fn brute_census(group: &PermGroup) -> (usize, Vec<(usize, usize)>) {
    let table = group.table().unwrap();
    let elements: Vec<Permutation> = (0..table.len() as u32).map(|i| table.perm(i)).collect();
    let subs = all_subgroups(&elements);
    let mut left: HashSet<ElemSet> = subs.clone();
    let mut classes = Vec::new();
    let mut sorted: Vec<&ElemSet> = subs.iter().collect();
    sorted.sort();
    for s in sorted {
        if !left.contains(s) {
            continue;
        }
        let orbit: HashSet<ElemSet> = elements.iter().map(|g| conjugate_set(s, g)).collect();
        for o in &orbit {
            left.remove(o);
        }
        classes.push((s.len(), orbit.len()));
    }
    classes.sort();
    (subs.len(), classes)
}

fn groups() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = [
        Family::Symmetric(3),
        Family::Symmetric(4),
        Family::Alternating(4),
        Family::Dihedral(4),
        Family::Dihedral(6),
        Family::Dihedral(10),
        Family::Preset(Preset::Quaternion),
        Family::Preset(Preset::Klein),
        Family::Cyclic(12),
        Family::Sl2(3),
    ]
    .into_iter()
    .map(|f| (f.to_string(), f.build().unwrap()))
    .collect();
    let c2 = Family::Cyclic(2).build().unwrap();
    let s3 = Family::Symmetric(3).build().unwrap();
    let c4 = Family::Cyclic(4).build().unwrap();
    out.push((
        "C2xC2xC2".into(),
        c2.direct_product(&c2).unwrap().direct_product(&c2).unwrap(),
    ));
    out.push(("C4xC2".into(), c4.direct_product(&c2).unwrap()));
    out.push(("S3xS3".into(), s3.direct_product(&s3).unwrap()));
    out
}

#[test]
fn census_matches_brute_force() {
    for (name, g) in groups() {
        let classes = subgroup_classes(&g).unwrap();
        let mut ours: Vec<(usize, usize)> = classes
            .iter()
            .map(|c| (c.order as usize, c.class_length as usize))
            .collect();
        ours.sort();
        let (total, brute) = brute_census(&g);
        assert_eq!(ours, brute, "{name}");
        assert_eq!(
            classes
                .iter()
                .map(|c| c.class_length as usize)
                .sum::<usize>(),
            total,
            "{name}"
        );
    }
}

#[test]
fn known_class_counts() {
    let counts: Vec<usize> = [
        Family::Symmetric(3),
        Family::Cyclic(7),
        Family::Symmetric(4),
        Family::Alternating(5),
    ]
    .into_iter()
    .map(|f| subgroup_classes(&f.build().unwrap()).unwrap().len())
    .collect();
    assert_eq!(counts, vec![4, 2, 11, 9]);
}

#[test]
fn representatives_are_closed_and_pairwise_non_conjugate() {
    for f in [
        Family::Symmetric(4),
        Family::Sl2(3),
        Family::Dihedral(6),
        Family::Alternating(5),
    ] {
        let g = f.build().unwrap();
        let t = g.table().unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let sets: Vec<BTreeSet<u32>> = classes
            .iter()
            .map(|c| c.representative.elements().iter().copied().collect())
            .collect();
        for (c, set) in classes.iter().zip(&sets) {
            assert_eq!(set.len() as u64, c.order);
            for &a in set {
                for &b in set {
                    assert!(set.contains(&t.mul(a, b)));
                }
            }
            let sub = c.representative.to_perm_group(&g).unwrap();
            assert_eq!(sub.order(), c.order as u128);
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].len() != sets[j].len() {
                    continue;
                }
                let conjugate = (0..t.len() as u32).any(|x| {
                    sets[i]
                        .iter()
                        .map(|&h| t.conjugate(x, h))
                        .collect::<BTreeSet<u32>>()
                        == sets[j]
                });
                assert!(!conjugate, "{f}: classes {i} and {j} are conjugate");
            }
        }
    }
}

#[test]
fn enumeration_does_not_depend_on_generators() {
    let a = Family::Symmetric(4).build().unwrap();
    let b = PermGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[3, 4]]).unwrap(),
            Permutation::from_cycles(4, &[&[1, 4], &[2, 3]]).unwrap(),
        ],
    )
    .unwrap();
    let ca = subgroup_classes(&a).unwrap();
    let cb = subgroup_classes(&b).unwrap();
    assert_eq!(ca.len(), cb.len());
    for (x, y) in ca.iter().zip(&cb) {
        assert_eq!(x.representative.elements(), y.representative.elements());
        assert_eq!(x.class_length, y.class_length);
        assert_eq!(x.abelianization, y.abelianization);
    }
}
