use super::nested::{below, is_laminar};
use super::*;
use crate::matroid::{GraphicMatroid, GroundSet, Uniform, DEFAULT_SUBSET_LIMIT};
use crate::rational::{int, Rational};
use itertools::Itertools;
use proptest::prelude::*;

const LIMIT: u64 = DEFAULT_SUBSET_LIMIT;

fn k4() -> GraphicMatroid {
    GraphicMatroid::complete(&["a", "b", "c", "d"])
}

fn kite() -> GraphicMatroid {
    GraphicMatroid::from_named_edges(&[("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("c", "d")]).unwrap()
}

/// Two blocks joined at the cut vertex d.
fn bowtie() -> GraphicMatroid {
    GraphicMatroid::from_named_edges(&[
        ("a", "b"),
        ("a", "c"),
        ("b", "d"),
        ("c", "d"),
        ("a", "d"),
        ("d", "e"),
        ("d", "f"),
        ("e", "f"),
        ("e", "g"),
        ("f", "g"),
    ])
    .unwrap()
}

fn s(m: &impl Matroid, labels: &[&str]) -> ElementSet {
    m.ground().subset(labels).unwrap()
}

fn w(v: &[i64]) -> WeightVector {
    WeightVector::from_ints(v)
}

fn wns(m: &impl Matroid, members: &[(&[&str], i64)]) -> WeightedNestedSet {
    WeightedNestedSet::new(members.iter().map(|(f, a)| (s(m, f), int(*a)))).unwrap()
}

/// Hides the graphic fast paths so the generic routes run.
struct Opaque<'a>(&'a GraphicMatroid);

impl Matroid for Opaque<'_> {
    fn ground(&self) -> &GroundSet {
        self.0.ground()
    }
    fn rank(&self, set: &ElementSet) -> usize {
        self.0.rank(set)
    }
}

#[test]
fn membership_examples() {
    let m = kite();
    assert!(!is_m_ultrametric(&m, &w(&[2, 4, 5, 6, 10])));
    assert!(is_m_ultrametric(&m, &w(&[2, 4, 4, 6, 6])));
    assert!(is_m_ultrametric(&k4(), &w(&[5, 7, 9, 7, 9, 9])));
    assert!(!is_m_ultrametric(&k4(), &w(&[2, 4, 6, 8, 10, 12])));
    assert!(!is_m_ultrametric(&m, &w(&[1, 2, 3])));
}

#[test]
fn violation_names_a_circuit() {
    let m = kite();
    let x = w(&[2, 4, 5, 6, 10]);
    let (e, c) = fan_violation(&m, &x).unwrap();
    assert_eq!(m.ground().label(e), "b-c");
    assert_eq!(c, s(&m, &["a-b", "a-c", "b-c"]));
    match check_in_fan(&m, &x) {
        Err(Error::NotInFan { element, circuit }) => {
            assert_eq!(element, "b-c");
            assert_eq!(circuit, vec!["a-b", "a-c", "b-c"]);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(check_in_fan(&m, &w(&[2, 4, 4, 6, 6])).is_ok());
}

#[test]
fn loops_leave_the_fan_empty() {
    let m = GraphicMatroid::new(vec!["a".into(), "b".into()], vec![(0, 1), (1, 1)]).unwrap();
    assert!(!is_m_ultrametric(&m, &w(&[0, 0])));
    assert!(!is_m_ultrametric_by_bases(&m, &w(&[0, 0])));
    assert!(matches!(subdominant(&m, &w(&[0, 0])), Err(Error::Precondition(_))));
}

#[test]
fn subdominant_examples() {
    let m = kite();
    let x = w(&[2, 4, 5, 6, 10]);
    assert_eq!(subdominant(&m, &x).unwrap(), w(&[2, 4, 4, 6, 6]));
    assert_eq!(subdominant(&Opaque(&m), &x).unwrap(), w(&[2, 4, 4, 6, 6]));
    assert_eq!(subdominant_by_circuits(&m, &x, LIMIT).unwrap(), w(&[2, 4, 4, 6, 6]));

    let delta = w(&[2, 4, 6, 8, 10, 12]);
    assert_eq!(subdominant(&k4(), &delta).unwrap(), w(&[2, 4, 6, 4, 6, 6]));

    let u = w(&[5, 7, 9, 7, 9, 9]);
    assert_eq!(subdominant(&k4(), &u).unwrap(), u);
}

#[test]
fn realize_examples() {
    let m = bowtie();
    let t = wns(
        &m,
        &[
            (&["a-b", "a-c", "b-d", "c-d", "a-d"], 3),
            (&["a-b", "b-d", "a-d"], 2),
            (&["a-b"], 1),
            (&["d-e", "d-f", "e-f", "e-g", "f-g"], 3),
            (&["d-f"], 2),
            (&["f-g"], 1),
        ],
    );
    let weights = w(&[1, 3, 2, 3, 2, 3, 2, 3, 3, 1]);
    assert_eq!(realize(&m, &t, LIMIT).unwrap(), weights);
    assert_eq!(topology(&m, &weights).unwrap(), t);

    let k = k4();
    let e: &[&str] = &["a-b", "a-c", "a-d", "b-c", "b-d", "c-d"];
    let s1 = wns(&k, &[(e, 2), (&["a-b"], 1)]);
    let s2 = wns(&k, &[(e, 2), (&["c-d"], 2), (&["a-b"], 1)]);
    let s3 = wns(&k, &[(e, 2), (&["a-b", "a-c", "b-c"], 2), (&["a-b"], 1)]);
    let target = realize(&k, &s1, LIMIT).unwrap();
    assert_eq!(realize(&k, &s2, LIMIT).unwrap(), target);
    assert_eq!(realize(&k, &s3, LIMIT).unwrap(), target);
    assert_eq!(topology(&k, &target).unwrap(), s1);

    let c = wns(&k, &[(e, 7)]);
    assert_eq!(realize(&k, &c, LIMIT).unwrap(), w(&[7; 6]));
}

#[test]
fn realize_rejects_invalid_families() {
    let k = k4();
    let bad = wns(&k, &[(&["a-b"], 1)]);
    assert!(realize(&k, &bad, LIMIT).is_err());
    let e: &[&str] = &["a-b", "a-c", "a-d", "b-c", "b-d", "c-d"];
    let inverted = wns(&k, &[(e, 1), (&["a-b"], 2)]);
    assert!(realize(&k, &inverted, LIMIT).is_err());
}

#[test]
fn topology_examples() {
    let m = kite();
    let t = topology(&m, &w(&[4, 6, 6, 8, 8])).unwrap();
    assert_eq!(t, wns(&m, &[(&["a-b"], 4), (&["a-b", "a-c", "b-c"], 6), (&["a-b", "a-c", "b-c", "a-d", "c-d"], 8)]));
    assert!(t.is_compatible(true));

    let k = k4();
    assert_eq!(topology(&k, &w(&[3; 6])).unwrap(), wns(&k, &[(&["a-b", "a-c", "a-d", "b-c", "b-d", "c-d"], 3)]));
    assert!(topology(&m, &w(&[2, 4, 5, 6, 10])).is_err());
}

#[test]
fn nested_set_examples() {
    let k = k4();
    let e = k.ground().full();
    let fam = |sets: &[&[&str]]| -> Vec<ElementSet> { sets.iter().map(|f| s(&k, f)).collect() };
    let e_labels: &[&str] = &["a-b", "a-c", "a-d", "b-c", "b-d", "c-d"];
    assert!(is_nested_set(&k, &fam(&[e_labels, &["a-b", "a-c", "b-c"], &["a-b"]]), LIMIT).unwrap());
    assert!(is_nested_set(&k, &fam(&[e_labels, &["a-b"], &["c-d"]]), LIMIT).unwrap());
    assert!(!is_nested_set(&k, &fam(&[e_labels, &["a-b"], &["a-c"]]), LIMIT).unwrap());
    // Missing the component, not a flat, not connected.
    assert!(!is_nested_set(&k, &fam(&[&["a-b"]]), LIMIT).unwrap());
    assert!(!is_nested_set(&k, &[e.clone(), s(&k, &["a-b", "a-c"])], LIMIT).unwrap());
    assert!(!is_nested_set(&k, &[e.clone(), s(&k, &["a-b", "c-d"])], LIMIT).unwrap());
    assert!(!is_nested_set(&k, &[e.clone(), e], LIMIT).unwrap());
}

#[test]
fn polytomy_examples() {
    let k = k4();
    let e = k.ground().full();
    let ab = s(&k, &["a-b"]);
    let abc = s(&k, &["a-b", "a-c", "b-c"]);
    assert_eq!(polytomies(&k, &[e.clone(), ab.clone()]), vec![e.clone()]);
    assert!(polytomies(&k, &[e.clone(), abc.clone(), ab.clone()]).is_empty());

    let m = kite();
    let full = m.ground().full();
    let tri = s(&m, &["a-b", "a-c", "b-c"]);
    assert_eq!(polytomies(&m, &[full, tri.clone()]), vec![tri]);
}

#[test]
fn insertion_examples() {
    let m = kite();
    let full = m.ground().full();
    let tri = s(&m, &["a-b", "a-c", "b-c"]);
    let fam = vec![full.clone(), tri.clone()];
    let singles = vec![s(&m, &["a-b"]), s(&m, &["a-c"]), s(&m, &["b-c"])];
    let mut got = insertable_flats(&m, &fam, &tri, LIMIT).unwrap();
    got.sort();
    let mut want = singles.clone();
    want.sort();
    assert_eq!(got, want);
    let mut r1 = rank_one_insertions(&m, &fam, &tri, LIMIT).unwrap();
    r1.sort();
    assert_eq!(r1, want);
    assert!(insertable_flats(&m, &fam, &full, LIMIT).is_err());

    let k = k4();
    let e = k.ground().full();
    let fam = vec![e.clone(), s(&k, &["a-b"])];
    let got = insertable_flats(&k, &fam, &e, LIMIT).unwrap();
    assert!(got.contains(&s(&k, &["c-d"])));
    assert!(got.contains(&s(&k, &["a-b", "a-c", "b-c"])));
    assert!(got.contains(&s(&k, &["a-b", "a-d", "b-d"])));
}

#[test]
fn resolution_examples() {
    let k = k4();
    let e = k.ground().full();
    let ab = s(&k, &["a-b"]);
    let sorted = |mut v: Vec<ElementSet>| {
        v.sort();
        v
    };
    let res = resolutions(&k, &[e.clone(), ab.clone()], LIMIT).unwrap();
    // c and d are interchangeable, so both triangles through ab resolve it.
    assert_eq!(
        res,
        [
            sorted(vec![e.clone(), ab.clone(), s(&k, &["c-d"])]),
            sorted(vec![e.clone(), ab.clone(), s(&k, &["a-b", "a-c", "b-c"])]),
            sorted(vec![e.clone(), ab.clone(), s(&k, &["a-b", "a-d", "b-d"])]),
        ]
        .into_iter()
        .sorted()
        .collect::<Vec<_>>()
    );

    let binary = sorted(vec![e.clone(), ab.clone(), s(&k, &["a-b", "a-c", "b-c"])]);
    assert_eq!(resolutions(&k, &binary, LIMIT).unwrap(), vec![binary.clone()]);

    let k5 = GraphicMatroid::complete(&["a", "b", "c", "d", "e"]);
    let full = k5.ground().full();
    let abc = s(&k5, &["a-b", "a-c", "b-c"]);
    let res = resolutions(&k5, &[full.clone(), abc.clone()], LIMIT).unwrap();
    let abcd = s(&k5, &["a-b", "a-c", "a-d", "b-c", "b-d", "c-d"]);
    let one = sorted(vec![full.clone(), abc.clone(), s(&k5, &["a-b"]), s(&k5, &["d-e"])]);
    let two = sorted(vec![full.clone(), abc.clone(), s(&k5, &["a-b"]), abcd]);
    assert!(res.contains(&one));
    assert!(res.contains(&two));
    for r in &res {
        assert!(polytomies(&k5, r).is_empty());
        assert!(is_nested_set(&k5, r, LIMIT).unwrap());
    }
}

#[test]
fn json_round_trip() {
    let m = kite();
    let t = topology(&m, &w(&[4, 6, 6, 8, 8])).unwrap();
    let j = t.to_json(m.ground(), None);
    assert_eq!(
        j.to_string(),
        r#"[{"alpha":"4","flat":["a-b"]},{"alpha":"6","flat":["a-b","a-c","b-c"]},{"alpha":"8","flat":["a-b","a-c","b-c","a-d","c-d"]}]"#
    );
    assert_eq!(WeightedNestedSet::from_json(m.ground(), &j).unwrap(), t);
}

#[test]
fn uniform_matroid_routes() {
    // In U(2,4) every pair is a basis and the only proper nonempty flats are
    // singletons.
    let m = Uniform::numbered(2, 4);
    let x = w(&[1, 5, 3, 4]);
    let sub = subdominant(&m, &x).unwrap();
    assert_eq!(sub, w(&[1, 3, 3, 3]));
    assert_eq!(subdominant_by_circuits(&m, &x, LIMIT).unwrap(), sub);
    assert!(is_m_ultrametric(&m, &sub));
    let t = topology(&m, &sub).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(realize(&m, &t, LIMIT).unwrap(), sub);
}

// ---- randomized properties ----

fn random_graph() -> impl Strategy<Value = GraphicMatroid> {
    (3usize..6)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
            let k = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), k))
        })
        .prop_map(|(n, pairs, keep)| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
            let names = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            GraphicMatroid::new(names, if edges.is_empty() { vec![(0, 1)] } else { edges }).unwrap()
        })
        .prop_filter("at most 12 edges", |g| g.size() <= 12)
}

fn random_weights(n: usize, range: i64) -> impl Strategy<Value = WeightVector> {
    proptest::collection::vec(0..range, n).prop_map(|v| WeightVector::from_ints(&v))
}

fn graph_and_weights(range: i64) -> impl Strategy<Value = (GraphicMatroid, WeightVector)> {
    random_graph().prop_flat_map(move |g| {
        let n = g.size();
        (Just(g), random_weights(n, range))
    })
}

/// Brute-force nested-set test over every antichain.
fn nested_by_antichains(m: &impl Matroid, family: &[ElementSet]) -> bool {
    let comps = m.components(&m.ground().full());
    if family.iter().any(|f| !m.is_connected_flat(f).unwrap()) || !comps.iter().all(|c| family.contains(c)) {
        return false;
    }
    for k in 2..=family.len() {
        for combo in family.iter().combinations(k) {
            if combo.iter().tuple_combinations().any(|(a, b)| a.comparable(b)) {
                continue;
            }
            let mut u = ElementSet::new();
            for c in &combo {
                u.union_with(c);
            }
            if m.is_connected(&m.closure(&u)) {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn membership_routes_agree((g, x) in graph_and_weights(4)) {
        prop_assert_eq!(is_m_ultrametric(&g, &x), is_m_ultrametric_by_bases(&g, &x));
        prop_assert_eq!(is_m_ultrametric(&g, &x), fan_violation(&g, &x).is_none());
    }

    #[test]
    fn subdominant_routes_agree((g, x) in graph_and_weights(8)) {
        let fast = subdominant(&g, &x).unwrap();
        prop_assert_eq!(&fast, &subdominant(&Opaque(&g), &x).unwrap());
        prop_assert_eq!(&fast, &subdominant_by_circuits(&g, &x, LIMIT).unwrap());
        prop_assert!(is_m_ultrametric(&g, &fast));
        prop_assert!(fast.dominated_by(&x));
    }

    #[test]
    fn topology_round_trip((g, x) in graph_and_weights(6)) {
        let u = subdominant(&g, &x).unwrap();
        let t = topology(&g, &u).unwrap();
        prop_assert!(t.is_compatible(true));
        prop_assert_eq!(&realize(&g, &t, LIMIT).unwrap(), &u);
        prop_assert_eq!(topology(&g, &t.weights(g.size()).unwrap()).unwrap(), t.clone());
        prop_assert!(is_laminar(&t.flats()));
        prop_assert!(nested_by_antichains(&g, &t.flats()));
    }

    #[test]
    fn nested_test_matches_antichains((g, x) in graph_and_weights(6), extra in proptest::collection::vec(any::<u16>(), 1..3)) {
        let u = subdominant(&g, &x).unwrap();
        let mut fam = topology(&g, &u).unwrap().flats();
        for bits in extra {
            let cand: ElementSet = (0..g.size()).filter(|e| bits >> (e % 16) & 1 == 1).collect();
            let cl = g.closure(&cand);
            if !cl.is_empty() && !fam.contains(&cl) {
                fam.push(cl);
            }
        }
        prop_assert_eq!(is_nested_set(&g, &fam, LIMIT).unwrap(), is_laminar(&fam) && nested_by_antichains(&g, &fam));
    }

    #[test]
    fn resolutions_are_polytomy_free((g, x) in graph_and_weights(3)) {
        let u = subdominant(&g, &x).unwrap();
        let fam = topology(&g, &u).unwrap().flats();
        let res = resolutions(&g, &fam, LIMIT).unwrap();
        prop_assert!(!res.is_empty());
        for r in &res {
            prop_assert!(polytomies(&g, r).is_empty());
            prop_assert!(is_nested_set(&g, r, LIMIT).unwrap());
            prop_assert!(fam.iter().all(|f| r.contains(f)));
            // The fan point can be displayed on every resolution.
            let shown = WeightedNestedSet::new(r.iter().map(|f| {
                let h = u.max_on(f).unwrap();
                (f.clone(), h)
            })).unwrap();
            prop_assert_eq!(&shown.weights(g.size()).unwrap(), &u);
        }
    }

    #[test]
    fn subdominant_is_maximal((g, x) in graph_and_weights(6)) {
        let u = subdominant(&g, &x).unwrap();
        let candidates = x.distinct_values();
        for e in 0..g.size() {
            if let Some(next) = candidates.iter().find(|v| **v > u[e] && **v <= x[e]) {
                let mut raised = u.clone();
                raised.set(e, *next);
                prop_assert!(!is_m_ultrametric(&g, &raised));
            }
        }
    }

    #[test]
    fn topology_classes_are_tropically_convex((g, x) in graph_and_weights(6), shift in 0i64..5, l in -4i64..1, which in any::<bool>()) {
        let u = subdominant(&g, &x).unwrap();
        let t = topology(&g, &u).unwrap();
        // A second point on the same topology: heights moved by an
        // order-preserving map.
        let heights: Vec<Rational> = t.iter().map(|(_, a)| *a).sorted().dedup().collect();
        let moved = WeightedNestedSet::new(t.iter().map(|(f, a)| {
            let rank = heights.iter().position(|h| h == a).unwrap() as i64;
            (f.clone(), *a * int(2) + int(rank * shift))
        })).unwrap();
        let v = moved.weights(g.size()).unwrap();
        prop_assert_eq!(&topology(&g, &v).unwrap().flats(), &t.flats());
        let (lu, lv) = if which { (int(0), int(l)) } else { (int(l), int(0)) };
        let mix: Vec<Rational> = (0..g.size()).map(|e| (u[e] + lu).max(v[e] + lv)).collect();
        let mix = WeightVector::new(mix);
        prop_assert!(is_m_ultrametric(&g, &mix));
        prop_assert_eq!(topology(&g, &mix).unwrap().flats(), t.flats());
    }
}

#[test]
fn below_lists_proper_submembers() {
    let m = kite();
    let fam = vec![m.ground().full(), s(&m, &["a-b", "a-c", "b-c"]), s(&m, &["a-b"])];
    assert_eq!(below(&fam, &fam[0]).count(), 2);
    assert_eq!(children(&fam, &fam[0]), vec![fam[1].clone()]);
    assert_eq!(own_elements(&fam, &fam[0]), s(&m, &["a-d", "c-d"]));
}
