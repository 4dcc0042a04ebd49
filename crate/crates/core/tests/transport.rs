mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use graphprod::cayley_ball::{ball, generating_set};
use graphprod::iso_transport::{check_cayley_iso, FailureKind};
use graphprod::word_engine::full_genset;
use graphprod::{
    build_product_iso, find_vertex_iso, verify_iso_on_ball, CayleyMap, Presentation, ProductIso,
    Syllable, VertexFactor, VertexIso, Word,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exacay_iso() -> ProductIso {
    build_product_iso(&z4_free_s3(), &v4_free_z6(), &BTreeMap::new()).unwrap()
}

#[test]
fn identity_family_lifts_to_identity() {
    let p = square_racg();
    let iso = build_product_iso(&p, &p, &BTreeMap::new()).unwrap();
    let b = ball(&p, 3).unwrap();
    for w in b.vertices() {
        // auto-found maps on K2 are forced to be the identity
        assert_eq!(&iso.lift(w).unwrap(), w);
    }
    let report = verify_iso_on_ball(&iso, 2).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn lift_examples() {
    let iso = exacay_iso();
    let (g, h) = (iso.source(), iso.target());
    assert!(iso.lift(&g.identity()).unwrap().is_identity());
    let fu = &iso.family()[0].map;
    let fv = &iso.family()[1].map;
    let a = g.canonical_form(&g.parse_word("u:a").unwrap()).unwrap();
    assert_eq!(
        iso.lift(&a).unwrap().syllables(),
        &[Syllable::new(0, fu.apply(1))]
    );
    let w = g
        .canonical_form(&g.parse_word("u:a;v:b1;u:a2").unwrap())
        .unwrap();
    let lifted = iso.lift(&w).unwrap();
    assert_eq!(
        lifted.syllables(),
        &[
            Syllable::new(0, fu.apply(1)),
            Syllable::new(1, fv.apply(1)),
            Syllable::new(0, fu.apply(2))
        ]
    );
    assert_eq!(h.canonical_form(&lifted.to_word()).unwrap(), lifted);
    assert!(iso.lift(&h.identity()).is_err());
}

#[test]
fn lift_preserves_lengths_and_inverts() {
    for iso in [exacay_iso(), {
        let p = path_mixed();
        build_product_iso(&p, &p, &BTreeMap::new()).unwrap()
    }] {
        let inv = iso.inverse();
        let b = ball(iso.source(), 3).unwrap();
        for w in b.vertices() {
            let f = iso.lift(w).unwrap();
            assert_eq!(f.syllable_count(), w.syllable_count());
            assert_eq!(iso.target().s_length(&f), iso.source().s_length(w));
            let vs: Vec<usize> = w.syllables().iter().map(|s| s.vertex).collect();
            let fs: Vec<usize> = f.syllables().iter().map(|s| s.vertex).collect();
            assert_eq!(vs, fs);
            assert_eq!(&inv.lift(&f).unwrap(), w);
        }
    }
}

#[test]
fn lift_does_not_depend_on_representative() {
    // square RACG with itself through non-trivial Z2 maps is trivial, so use
    // a commuting product of Z4 and S3 with 4-cycle / hexagon generators
    let g = Presentation::new(
        "G",
        graph(&["u", "v", "w"], &[("u", "v"), ("v", "w")]),
        [
            ("u", VertexFactor::new(z(4), vec![1, 3])),
            ("v", VertexFactor::new(s3(), vec![1, 2])),
            ("w", VertexFactor::full(z(3))),
        ],
    )
    .unwrap();
    let h = Presentation::new(
        "H",
        graph(&["u", "v", "w"], &[("u", "v"), ("v", "w")]),
        [
            ("u", VertexFactor::new(z(4), vec![1, 3])),
            ("v", VertexFactor::new(z(6), vec![1, 5])),
            ("w", VertexFactor::full(z(3))),
        ],
    )
    .unwrap();
    let iso = build_product_iso(&g, &h, &BTreeMap::new()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let w = random_word(&g, &mut rng, 8);
        let reduced = g.reduce(&w).unwrap();
        let shuffled = random_shuffle(&g, &reduced.syllables, &mut rng, 15);
        // map the raw shuffled word directly, then canonicalize in H
        let mapped: Vec<Syllable> = shuffled.iter().map(|&s| iso.map_syllable(s)).collect();
        let direct = h.canonical_form(&Word::new(mapped)).unwrap();
        let via_canonical = iso.lift(&g.canonical_form(&reduced).unwrap()).unwrap();
        assert_eq!(direct, via_canonical);
    }
    let report = verify_iso_on_ball(&iso, 4).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn exacay_verification_radius_three() {
    let report = verify_iso_on_ball(&exacay_iso(), 3).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.vertices_checked, 159);
}

#[test]
fn edges_map_by_right_multiplication_with_target_generator() {
    let iso = exacay_iso();
    let (g, h) = (iso.source(), iso.target());
    let t: BTreeSet<Syllable> = generating_set(h).into_iter().collect();
    let b = ball(g, 3).unwrap();
    for e in b.edges() {
        if b.distance(e.a) == 3 || b.distance(e.b) == 3 {
            continue;
        }
        let fa = iso.lift(&b.vertices()[e.a]).unwrap();
        let fb = iso.lift(&b.vertices()[e.b]).unwrap();
        let step = h.multiply(&h.invert(&fa), &fb).unwrap();
        assert_eq!(step.syllable_count(), 1);
        assert!(t.contains(&step.syllables()[0]));
    }
}

#[test]
fn corrupted_family_is_caught() {
    let p = Presentation::new(
        "C",
        graph(&["u", "v"], &[]),
        [
            ("u", VertexFactor::new(z(4), vec![1, 3])),
            ("v", VertexFactor::full(z(2))),
        ],
    )
    .unwrap();
    let good = build_product_iso(&p, &p, &BTreeMap::new()).unwrap();
    let mut family: Vec<VertexIso> = good.family().to_vec();
    // swap the images of a and a2: a bijection fixing e that breaks the 4-cycle
    family[0].map = CayleyMap {
        mapping: vec![0, 2, 1, 3],
        ..family[0].map.clone()
    };
    let bad = ProductIso::from_parts_unchecked(p.clone(), p.clone(), family);
    let report = verify_iso_on_ball(&bad, 2).unwrap();
    assert!(!report.passed());
    assert!(!report.failures.is_empty());
    assert!(!report.genset_mapped);
    assert!(report
        .failures
        .iter()
        .any(|f| f.kind == FailureKind::ForwardAdjacency || f.kind == FailureKind::OutsideSphere));
    let json = serde_json::to_value(&report).unwrap();
    assert!(json["failures"][0]["from"].is_string());
}

#[test]
fn normalized_maps_fix_identity_and_generators() {
    let pairs = [
        (z(4), full_genset(&z(4)), v4(), full_genset(&v4())),
        (s3(), full_genset(&s3()), z(6), full_genset(&z(6))),
        (z(6), vec![1, 5], s3(), vec![1, 2]),
        (z(4), vec![1, 3], z(4), vec![1, 3]),
    ];
    for (g, s, h, t) in pairs {
        let f = find_vertex_iso(&g, &s, &h, &t).unwrap();
        check_cayley_iso(&f.mapping, &g, &s, &h, &t).unwrap();
        assert_eq!(f.apply(g.identity()), h.identity());
        let image: BTreeSet<usize> = s.iter().map(|&x| f.apply(x)).collect();
        assert_eq!(image, t.iter().copied().collect());
    }
}
