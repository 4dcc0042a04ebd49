//! Brute-force reference computations for graph products of finite groups.
//!
//! Everything here works on raw multiplication tables and an adjacency
//! matrix, and explores rewriting systems exhaustively. Nothing is shared
//! with the library under test.

use std::collections::{HashMap, HashSet, VecDeque};

/// A syllable as `(vertex, element)`.
pub type RawSyllable = (usize, usize);
pub type RawWord = Vec<RawSyllable>;

#[derive(Debug, Clone)]
pub struct RawProduct {
    pub adjacency: Vec<Vec<bool>>,
    /// `tables[v][a][b]` is `a * b` in the group at vertex `v`.
    pub tables: Vec<Vec<Vec<usize>>>,
    pub identities: Vec<usize>,
}

impl RawProduct {
    pub fn new(
        adjacency: Vec<Vec<bool>>,
        tables: Vec<Vec<Vec<usize>>>,
        identities: Vec<usize>,
    ) -> Self {
        RawProduct {
            adjacency,
            tables,
            identities,
        }
    }

    fn commute(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    /// All words obtained from `w` by one deletion of an identity syllable,
    /// one merge of two consecutive same-vertex syllables, or one swap of
    /// consecutive syllables at adjacent vertices.
    pub fn single_steps(&self, w: &RawWord) -> Vec<RawWord> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            let (v, x) = w[i];
            if x == self.identities[v] {
                let mut n = w.clone();
                n.remove(i);
                out.push(n);
            }
            if i + 1 < w.len() {
                let (u, y) = w[i + 1];
                if u == v {
                    let mut n = w.clone();
                    n[i] = (v, self.tables[v][x][y]);
                    n.remove(i + 1);
                    out.push(n);
                } else if self.commute(u, v) {
                    let mut n = w.clone();
                    n.swap(i, i + 1);
                    out.push(n);
                }
            }
        }
        out
    }

    /// Every word reachable from `w` by any sequence of single steps.
    pub fn rewriting_closure(&self, w: &RawWord) -> HashSet<RawWord> {
        let mut seen = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(cur) = queue.pop_front() {
            for next in self.single_steps(&cur) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Words reachable from `w` by swaps alone.
    pub fn shuffle_closure(&self, w: &RawWord) -> HashSet<RawWord> {
        let mut seen = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i].0 != cur[i + 1].0 && self.commute(cur[i].0, cur[i + 1].0) {
                    let mut n = cur.clone();
                    n.swap(i, i + 1);
                    if seen.insert(n.clone()) {
                        queue.push_back(n);
                    }
                }
            }
        }
        seen
    }

    /// The lexicographically smallest among the shortest words reachable
    /// from `w`, after checking that those shortest words form a single
    /// shuffle class.
    pub fn normal_form(&self, w: &RawWord) -> Result<RawWord, String> {
        let closure = self.rewriting_closure(w);
        let min_len = closure.iter().map(Vec::len).min().unwrap_or(0);
        let shortest: HashSet<RawWord> =
            closure.into_iter().filter(|x| x.len() == min_len).collect();
        let best = shortest.iter().min().cloned().unwrap_or_default();
        let class = self.shuffle_closure(&best);
        if class != shortest {
            return Err(format!(
                "shortest words reachable from {w:?} split into several shuffle classes \
                 ({} shortest, {} in the class of {best:?})",
                shortest.len(),
                class.len()
            ));
        }
        Ok(best)
    }

    /// Cancels syllables directly: deletes an identity syllable, or merges
    /// two same-vertex syllables whose in-between syllables all commute with
    /// that vertex, until neither applies. Then takes the smallest word in
    /// the shuffle class. Polynomial apart from the final shuffle closure,
    /// so it handles longer words than [`RawProduct::normal_form`].
    pub fn normal_form_by_pairs(&self, w: &RawWord) -> RawWord {
        let mut w = w.clone();
        'outer: loop {
            for i in 0..w.len() {
                let (v, x) = w[i];
                if x == self.identities[v] {
                    w.remove(i);
                    continue 'outer;
                }
                for j in i + 1..w.len() {
                    let (u, y) = w[j];
                    if u == v {
                        w[i] = (v, self.tables[v][x][y]);
                        w.remove(j);
                        continue 'outer;
                    }
                    if !self.commute(u, v) {
                        break;
                    }
                }
            }
            break;
        }
        self.shuffle_closure(&w)
            .into_iter()
            .min()
            .unwrap_or_default()
    }

    pub fn inverse(&self, v: usize, x: usize) -> usize {
        let e = self.identities[v];
        (0..self.tables[v].len())
            .find(|&y| self.tables[v][x][y] == e)
            .expect("group element")
    }

    /// Sphere sizes of the ball of `radius` in the Cayley graph with the
    /// given generators, using [`RawProduct::normal_form`] as vertex key.
    /// Also returns the number of edges inside the ball.
    pub fn ball_by_normal_forms(
        &self,
        generators: &[RawSyllable],
        radius: usize,
    ) -> (Vec<usize>, usize) {
        let mut dist: HashMap<RawWord, usize> = HashMap::from([(Vec::new(), 0)]);
        let mut order = vec![Vec::new()];
        let mut head = 0;
        while head < order.len() {
            let cur: RawWord = order[head].clone();
            head += 1;
            let d = dist[&cur];
            if d == radius {
                continue;
            }
            for &s in generators {
                let mut w = cur.clone();
                w.push(s);
                let nf = self.normal_form(&w).expect("normal form");
                if !dist.contains_key(&nf) {
                    dist.insert(nf.clone(), d + 1);
                    order.push(nf);
                }
            }
        }
        let mut spheres = vec![0; radius + 1];
        for &d in dist.values() {
            spheres[d] += 1;
        }
        let mut edges = HashSet::new();
        for w in dist.keys() {
            for &s in generators {
                let mut n = w.clone();
                n.push(s);
                let nf = self.normal_form(&n).expect("normal form");
                if dist.contains_key(&nf) && nf != *w {
                    let key = if *w < nf {
                        (w.clone(), nf)
                    } else {
                        (nf, w.clone())
                    };
                    edges.insert(key);
                }
            }
        }
        (spheres, edges.len())
    }
}

/// Sphere sizes in a free product of groups of the given orders, with every
/// non-identity element a generator: reduced words alternate between
/// factors, so `N_k(v) = (|G_v| - 1) * (sum of N_{k-1}(u) for u != v)`.
pub fn free_product_spheres(orders: &[usize], radius: usize) -> Vec<usize> {
    let mut ending: Vec<usize> = vec![0; orders.len()];
    let mut spheres = vec![1];
    for k in 1..=radius {
        let total_prev: usize = ending.iter().sum();
        let next: Vec<usize> = orders
            .iter()
            .enumerate()
            .map(|(v, &n)| {
                let not_ending_at_v = if k == 1 { 1 } else { total_prev - ending[v] };
                (n - 1) * not_ending_at_v
            })
            .collect();
        spheres.push(next.iter().sum());
        ending = next;
    }
    spheres
}

/// Multiplication table of `Z_n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect()
}
