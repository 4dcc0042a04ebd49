#![allow(dead_code)]

use graphprod::{FiniteGroup, Presentation, SimplicialGraph, Syllable, Word};
use graphprod_oracle::{RawProduct, RawWord};
use rand::Rng;

pub fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n).unwrap()
}

pub fn s3() -> FiniteGroup {
    FiniteGroup::symmetric(3).unwrap()
}

pub fn v4() -> FiniteGroup {
    FiniteGroup::direct_product(&[z(2), z(2)]).unwrap()
}

pub fn graph(vs: &[&str], es: &[(&str, &str)]) -> SimplicialGraph {
    SimplicialGraph::new(vs.iter().copied(), es.iter().copied()).unwrap()
}

pub fn full(name: &str, g: SimplicialGraph, groups: Vec<FiniteGroup>) -> Presentation {
    let names: Vec<String> = g.names().to_vec();
    Presentation::with_full_gensets(name, g, names.into_iter().zip(groups)).unwrap()
}

/// Z4 * S3 with all non-identity elements as generators.
pub fn z4_free_s3() -> Presentation {
    full("G", graph(&["u", "v"], &[]), vec![z(4), s3()])
}

/// (Z2 x Z2) * Z6 with all non-identity elements as generators.
pub fn v4_free_z6() -> Presentation {
    full("H", graph(&["u", "v"], &[]), vec![v4(), z(6)])
}

/// Right-angled Coxeter group of the 4-cycle a-b-c-d-a.
pub fn square_racg() -> Presentation {
    full(
        "Square",
        graph(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        ),
        vec![z(2), z(2), z(2), z(2)],
    )
}

pub fn triangle_z2() -> Presentation {
    full(
        "Triangle",
        graph(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")]),
        vec![z(2), z(2), z(2)],
    )
}

/// Path u - v - w with mixed vertex groups.
pub fn path_mixed() -> Presentation {
    full(
        "Path",
        graph(&["u", "v", "w"], &[("u", "v"), ("v", "w")]),
        vec![z(3), z(2), s3()],
    )
}

pub fn raw(p: &Presentation) -> RawProduct {
    let n = p.vertex_count();
    RawProduct::new(
        (0..n)
            .map(|a| (0..n).map(|b| p.graph().adjacent(a, b)).collect())
            .collect(),
        (0..n).map(|v| p.group(v).table()).collect(),
        (0..n).map(|v| p.group(v).identity()).collect(),
    )
}

pub fn to_raw(syllables: &[Syllable]) -> RawWord {
    syllables.iter().map(|s| (s.vertex, s.element)).collect()
}

pub fn from_raw(w: &RawWord) -> Word {
    Word::new(w.iter().map(|&(v, x)| Syllable::new(v, x)).collect())
}

/// Uniform random word of length `0..=max_len`, identities included.
pub fn random_word(p: &Presentation, rng: &mut impl Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| {
                let v = rng.gen_range(0..p.vertex_count());
                Syllable::new(v, rng.gen_range(0..p.group(v).order()))
            })
            .collect(),
    )
}

/// Applies `steps` random legal swaps of adjacent commuting syllables.
pub fn random_shuffle(
    p: &Presentation,
    w: &[Syllable],
    rng: &mut impl Rng,
    steps: usize,
) -> Vec<Syllable> {
    let mut w = w.to_vec();
    for _ in 0..steps {
        let legal: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| {
                w[i].vertex != w[i + 1].vertex && p.graph().adjacent(w[i].vertex, w[i + 1].vertex)
            })
            .collect();
        if legal.is_empty() {
            break;
        }
        let i = legal[rng.gen_range(0..legal.len())];
        w.swap(i, i + 1);
    }
    w
}
