//! Ground-truth matching counts.
//!
//! [`match_series`] evaluates `p(G, i)` for `i = 0..=k` by splitting into
//! connected components (the series of a disjoint union is the truncated
//! product of the parts) and, on a connected piece, expanding around a
//! maximum-degree vertex `v`: every matching either leaves `v` uncovered or
//! uses exactly one edge `vu`, so
//!
//! ```text
//! p(G, i) = p(G - v, i) + sum_{u ~ v} p(G - v - u, i - 1)
//! ```
//!
//! which is the single-edge deletion recurrence applied to each edge at `v`
//! in turn. Sub-problems are induced subgraphs of the root graph, so they are
//! memoized on their surviving-vertex bitset.
//!
//! [`match_series_naive`] is a separate brute force over edge subsets and
//! shares no code with the recursive path.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Count;
use crate::series::CoeffSeries;
use crate::transfer::KVector;

/// Largest edge count [`match_series_naive`] will enumerate (2^24 subsets).
pub const NAIVE_EDGE_LIMIT: usize = 24;

/// Bitset over the vertex indices of a root graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mask(SmallVec<[u64; 2]>);

impl Mask {
    pub(crate) fn full(n: usize) -> Self {
        let mut words: SmallVec<[u64; 2]> = SmallVec::from_elem(u64::MAX, n.div_ceil(64));
        if !n.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Mask(words)
    }

    fn empty_like(&self) -> Self {
        Mask(SmallVec::from_elem(0, self.0.len()))
    }

    #[inline]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub(crate) fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub(crate) fn without(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.remove(i);
        m
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Memoizing evaluator of `p(H, i)` over induced subgraphs `H` of one root
/// graph. The memo lives and dies with the value.
pub(crate) struct Oracle<'g, T> {
    graph: &'g Graph,
    k: usize,
    memo: HashMap<Mask, CoeffSeries<T>>,
}

impl<'g, T: Count> Oracle<'g, T> {
    pub(crate) fn new(graph: &'g Graph, k: usize) -> Self {
        Oracle {
            graph,
            k,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn root(&self) -> Mask {
        Mask::full(self.graph.vertex_count())
    }

    /// Series of the subgraph induced by `mask`.
    pub(crate) fn series(&mut self, mask: &Mask) -> CoeffSeries<T> {
        if self.k == 0 || mask.len() < 2 {
            return CoeffSeries::one(self.k);
        }
        if let Some(hit) = self.memo.get(mask) {
            return hit.clone();
        }
        let parts = self.split(mask);
        let result = if parts.len() > 1 {
            let mut acc = CoeffSeries::one(self.k);
            for part in &parts {
                let s = self.series(part);
                let mut next = CoeffSeries::zero(self.k);
                next.add_product_unchecked(&acc, &s);
                acc = next;
            }
            acc
        } else {
            self.expand_connected(mask)
        };
        self.memo.insert(mask.clone(), result.clone());
        result
    }

    fn degree_in(&self, v: usize, mask: &Mask) -> usize {
        self.graph
            .neighbors(v)
            .iter()
            .filter(|&&u| mask.contains(u))
            .count()
    }

    fn expand_connected(&mut self, mask: &Mask) -> CoeffSeries<T> {
        let pivot = mask
            .iter()
            .max_by_key(|&v| (self.degree_in(v, mask), std::cmp::Reverse(v)))
            .expect("non-empty mask");
        let rest = mask.without(pivot);
        let mut result = self.series(&rest);
        let mut covered = CoeffSeries::zero(self.k);
        let neighbors: Vec<usize> = self
            .graph
            .neighbors(pivot)
            .iter()
            .copied()
            .filter(|&u| mask.contains(u))
            .collect();
        for u in neighbors {
            covered.add_assign_unchecked(&self.series(&rest.without(u)));
        }
        result.add_assign_unchecked(&covered.shift(1));
        result
    }

    /// Connected components of the induced subgraph, as masks.
    fn split(&self, mask: &Mask) -> Vec<Mask> {
        let mut left = mask.clone();
        let mut parts = Vec::new();
        let mut stack = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = mask.empty_like();
            left.remove(start);
            comp.insert(start);
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in self.graph.neighbors(u) {
                    if left.contains(v) {
                        left.remove(v);
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            parts.push(comp);
        }
        parts
    }
}

/// `p(g, i)` for `i = 0..=k`.
pub fn match_series<T: Count>(g: &Graph, k: usize) -> CoeffSeries<T> {
    let mut oracle = Oracle::new(g, k);
    let root = oracle.root();
    oracle.series(&root)
}

/// Same contract as [`match_series`], by enumerating every edge subset and
/// keeping the ones with pairwise disjoint endpoints. Test-grade only.
pub fn match_series_naive<T: Count>(g: &Graph, k: usize) -> Result<CoeffSeries<T>> {
    let edges: Vec<(usize, usize)> = g.edge_indices().collect();
    if edges.len() > NAIVE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: edges.len(),
            limit: NAIVE_EDGE_LIMIT,
        });
    }
    // at most 48 endpoints, so a u64 covers the compacted vertex range
    let mut compact = HashMap::new();
    let bits: Vec<u64> = edges
        .iter()
        .map(|&(u, v)| {
            let n = compact.len();
            let cu = *compact.entry(u).or_insert(n);
            let n = compact.len();
            let cv = *compact.entry(v).or_insert(n);
            (1u64 << cu) | (1u64 << cv)
        })
        .collect();

    let mut counts = vec![0u64; k + 1];
    'subsets: for subset in 0u32..(1u32 << edges.len()) {
        let size = subset.count_ones() as usize;
        if size > k {
            continue;
        }
        let mut used = 0u64;
        for (e, &b) in bits.iter().enumerate() {
            if subset >> e & 1 == 1 {
                if used & b != 0 {
                    continue 'subsets;
                }
                used |= b;
            }
        }
        counts[size] += 1;
    }

    let mut series = CoeffSeries::zero(k);
    for (slot, &c) in counts.iter().enumerate() {
        series.coeffs_mut()[slot] = from_u64(c);
    }
    Ok(series)
}

fn from_u64<T: Count>(mut n: u64) -> T {
    // binary expansion keeps this generic over Count
    let mut acc = T::zero();
    let mut pow = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc.add_ref(&pow);
        }
        let p = pow.clone();
        pow.add_ref(&p);
        n >>= 1;
    }
    acc
}

/// Total number of matchings, `Z(g)`.
pub fn hosoya<T: Count>(g: &Graph) -> T {
    match_series::<T>(g, g.vertex_count() / 2).total()
}

/// The k-matching vector of `g` with respect to `(a, b)`, computed directly
/// from the four graphs `g`, `g - a`, `g - b`, `g - a - b`.
pub fn k_vector_direct<T: Count>(g: &Graph, a: &str, b: &str, k: usize) -> Result<KVector<T>> {
    if a == b {
        return Err(Error::InvalidPair(a.to_owned(), b.to_owned()));
    }
    let ia = g
        .index_of(a)
        .ok_or_else(|| Error::InvalidPair(a.to_owned(), b.to_owned()))?;
    let ib = g
        .index_of(b)
        .ok_or_else(|| Error::InvalidPair(a.to_owned(), b.to_owned()))?;
    let mut oracle = Oracle::new(g, k);
    let root = oracle.root();
    let minus_a = root.without(ia);
    let minus_b = root.without(ib);
    let minus_ab = minus_a.without(ib);
    let blocks = [
        oracle.series(&root),
        oracle.series(&minus_a),
        oracle.series(&minus_b),
        oracle.series(&minus_ab),
    ];
    Ok(KVector::new((a.to_owned(), b.to_owned()), blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cycle(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        Graph::from_edges(
            labels.iter().map(String::as_str),
            (0..n).map(|i| (labels[i].as_str(), labels[(i + 1) % n].as_str())),
        )
        .unwrap()
    }

    fn path(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        Graph::from_edges(
            labels.iter().map(String::as_str),
            labels.windows(2).map(|w| (w[0].as_str(), w[1].as_str())),
        )
        .unwrap()
    }

    fn triangle_with_pendant() -> Graph {
        Graph::from_edges(
            ["a", "b", "c", "z"],
            [("a", "b"), ("b", "c"), ("a", "c"), ("c", "z")],
        )
        .unwrap()
    }

    fn s(k: usize, c: &[u64]) -> CoeffSeries<u64> {
        CoeffSeries::from_prefix(k, c.iter().copied())
    }

    #[test]
    fn naive_oracle_values() {
        assert_eq!(
            match_series_naive::<u64>(&cycle(6), 3).unwrap(),
            s(3, &[1, 6, 9, 2])
        );
        assert_eq!(
            match_series_naive::<u64>(&path(3), 2).unwrap(),
            s(2, &[1, 2, 0])
        );
        assert_eq!(
            match_series_naive::<u64>(&cycle(5), 2).unwrap(),
            s(2, &[1, 5, 5])
        );
    }

    #[test]
    fn recursive_oracle_values() {
        assert_eq!(match_series::<u64>(&path(2), 2), s(2, &[1, 1, 0]));
        assert_eq!(
            match_series::<u64>(&triangle_with_pendant(), 2),
            s(2, &[1, 4, 1])
        );
        assert_eq!(match_series::<u64>(&cycle(3), 2), s(2, &[1, 3, 0]));
        assert_eq!(match_series::<u64>(&cycle(6), 3), s(3, &[1, 6, 9, 2]));
        assert_eq!(match_series::<u64>(&Graph::new(), 3), s(3, &[1]));
        assert_eq!(match_series::<u64>(&cycle(6), 0), s(0, &[1]));
    }

    #[test]
    fn naive_refuses_large_graphs() {
        let big = cycle(25);
        assert!(matches!(
            match_series_naive::<u64>(&big, 3),
            Err(Error::TooLarge { edges: 25, .. })
        ));
    }

    #[test]
    fn hosoya_small() {
        assert_eq!(hosoya::<BigUint>(&path(2)), BigUint::from(2u8));
        assert_eq!(hosoya::<u64>(&cycle(6)), 18);
        assert_eq!(hosoya::<u64>(&Graph::new()), 1);
    }

    #[test]
    fn k_vector_direct_examples() {
        let p2 = Graph::from_edges(["a", "b"], [("a", "b")]).unwrap();
        let v = k_vector_direct::<u64>(&p2, "a", "b", 1).unwrap();
        assert_eq!(
            v.blocks(),
            &[s(1, &[1, 1]), s(1, &[1]), s(1, &[1]), s(1, &[1])]
        );

        let c5 = cycle(5);
        let v = k_vector_direct::<u64>(&c5, "c0", "c1", 2).unwrap();
        assert_eq!(
            v.blocks(),
            &[
                s(2, &[1, 5, 5]),
                s(2, &[1, 3, 1]),
                s(2, &[1, 3, 1]),
                s(2, &[1, 2, 0])
            ]
        );

        assert!(matches!(
            k_vector_direct::<u64>(&c5, "c0", "c0", 2),
            Err(Error::InvalidPair(..))
        ));
        assert!(matches!(
            k_vector_direct::<u64>(&c5, "c0", "zz", 2),
            Err(Error::InvalidPair(..))
        ));
    }

    #[test]
    fn mask_handles_multiword_graphs() {
        let big = cycle(130);
        let series = match_series::<u64>(&big, 2);
        // C_n: n edges, n(n-3)/2 two-matchings
        assert_eq!(series, s(2, &[1, 130, 130 * 127 / 2]));
        let m = Mask::full(130);
        assert_eq!(m.len(), 130);
        assert_eq!(m.iter().last(), Some(129));
    }
}
