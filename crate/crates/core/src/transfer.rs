//! Transfer matrices for amalgamation over a two-vertex set.
//!
//! Gluing a block `H` onto a graph `G'` along the pair `(x, y)` gives a graph
//! `G` whose k-matching vector with respect to a new pair `(a, b)` is a
//! linear image of the k-matching vector of `G'` with respect to `(x, y)`.
//! The linear map is a 4x4 matrix of upper-triangular Toeplitz blocks; here
//! each block is stored as its first row, i.e. as an element of the ring of
//! polynomials truncated at degree `k`, and the matrix-vector product becomes
//! sums of truncated convolutions.
//!
//! Write `H''` for the block interior (`H` minus `x, y`), and `X`, `Y`, `Z`
//! for the interior vertices adjacent to `x` only, `y` only and both. For a
//! row indexed by the surviving interior `W = H'' - S`, a matching of `G`
//! restricted to the edges at `x` and `y` falls into one of four shapes:
//!
//! * no interior edge at `x` or `y`: `p(W) * p(G')`
//! * one edge `xu`, `u` in `X ∪ Z`: `t * p(W - u) * p(G' - x)`
//! * one edge `yv`, `v` in `Y ∪ Z`: `t * p(W - v) * p(G' - y)`
//! * both, `u != v`: `t^2 * p(W - u - v) * p(G' - x - y)`
//!
//! The last family includes pairs drawn from `Z` twice, which only matters
//! when `|Z| >= 2`. When `a` or `b` coincides with `x` or `y`, the rows for
//! the graphs that lose that vertex read from the `G' - x` / `G' - y` columns
//! instead; see [`OutCase`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, NeighborPartition};
use crate::oracle::{Mask, Oracle};
use crate::scalar::Count;
use crate::series::CoeffSeries;

/// Ordered vertex pair `(first, second)`.
pub type Pair = (String, String);

/// The four coefficient series of `G`, `G - a`, `G - b`, `G - a - b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVector<T> {
    pair: Pair,
    blocks: [CoeffSeries<T>; 4],
}

impl<T: Count> KVector<T> {
    /// # Panics
    /// If the blocks disagree on `k`.
    pub fn new(pair: Pair, blocks: [CoeffSeries<T>; 4]) -> Self {
        let k = blocks[0].k();
        assert!(
            blocks.iter().all(|b| b.k() == k),
            "k-vector blocks must share k"
        );
        KVector { pair, blocks }
    }

    pub fn k(&self) -> usize {
        self.blocks[0].k()
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn blocks(&self) -> &[CoeffSeries<T>; 4] {
        &self.blocks
    }

    /// Series of the whole graph.
    pub fn graph_series(&self) -> &CoeffSeries<T> {
        &self.blocks[0]
    }

    /// Hosoya index, provided `k` is at least the matching number.
    pub fn hosoya(&self) -> T {
        self.blocks[0].total()
    }

    /// The flat `4(k+1)` column with each block in descending order.
    pub fn descending(&self) -> Vec<T> {
        self.blocks
            .iter()
            .flat_map(CoeffSeries::descending)
            .collect()
    }
}

/// Where the output pair sits relative to the attach pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutCase {
    /// Neither `a` nor `b` is an attach vertex.
    General,
    AIsX,
    AIsY,
    BIsX,
    BIsY,
}

/// Everything [`build_transfer`] needs to know about one block.
#[derive(Clone, Debug)]
pub struct AttachProfile {
    interior: Graph,
    attach: Pair,
    out: Pair,
    x_only: BTreeSet<String>,
    y_only: BTreeSet<String>,
    both: BTreeSet<String>,
    case: OutCase,
}

impl AttachProfile {
    /// Profile of a block given as the graph `H` on `V(H'') ∪ {x, y}`.
    /// An `x`-`y` edge in `H`, if present, is ignored.
    pub fn from_block_graph(h: &Graph, attach: Pair, out: Pair) -> Result<Self> {
        let partition = h.neighbor_partition(&attach.0, &attach.1)?;
        let interior = h.delete_vertices([&attach.0, &attach.1])?;
        Self::new(interior, attach, out, partition)
    }

    pub fn new(
        interior: Graph,
        attach: Pair,
        out: Pair,
        partition: NeighborPartition,
    ) -> Result<Self> {
        let (x, y) = (&attach.0, &attach.1);
        let (a, b) = (&out.0, &out.1);
        let invalid = |msg: String| Err(Error::InvalidProfile(msg));
        if x == y {
            return invalid(format!("attach pair repeats `{x}`"));
        }
        if a == b {
            return invalid(format!("output pair repeats `{a}`"));
        }
        if interior.contains(x) || interior.contains(y) {
            return invalid("attach vertex inside the interior".into());
        }
        let is_attach = |v: &String| v == x || v == y;
        if is_attach(a) && is_attach(b) {
            return invalid("output pair equals the attach pair".into());
        }
        for v in [a, b] {
            if !is_attach(v) && !interior.contains(v) {
                return invalid(format!("output vertex `{v}` is not in the block"));
            }
        }
        let NeighborPartition {
            x_only,
            y_only,
            both,
        } = partition;
        let mut seen = BTreeSet::new();
        for v in x_only.iter().chain(&y_only).chain(&both) {
            if !interior.contains(v) {
                return invalid(format!("neighbour `{v}` is not an interior vertex"));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidSets(v.clone()));
            }
        }
        let case = match (a == x, a == y, b == x, b == y) {
            (true, ..) => OutCase::AIsX,
            (_, true, ..) => OutCase::AIsY,
            (.., true, _) => OutCase::BIsX,
            (.., true) => OutCase::BIsY,
            _ => OutCase::General,
        };
        Ok(AttachProfile {
            interior,
            attach,
            out,
            x_only,
            y_only,
            both,
            case,
        })
    }

    /// `H''`, the block minus its attach pair.
    pub fn interior(&self) -> &Graph {
        &self.interior
    }

    pub fn attach(&self) -> &Pair {
        &self.attach
    }

    pub fn out(&self) -> &Pair {
        &self.out
    }

    pub fn x_only(&self) -> &BTreeSet<String> {
        &self.x_only
    }

    pub fn y_only(&self) -> &BTreeSet<String> {
        &self.y_only
    }

    pub fn both(&self) -> &BTreeSet<String> {
        &self.both
    }

    pub fn case(&self) -> OutCase {
        self.case
    }
}

/// 4x4 matrix over the truncated polynomial ring. Rows and columns are
/// ordered `(G, G - first, G - second, G - first - second)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix<T> {
    cells: [[CoeffSeries<T>; 4]; 4],
    attach: Option<Pair>,
    out: Option<Pair>,
}

impl<T: Count> TransferMatrix<T> {
    /// Matrix with no pair bookkeeping.
    ///
    /// # Panics
    /// If the cells disagree on `k`.
    pub fn from_cells(cells: [[CoeffSeries<T>; 4]; 4]) -> Self {
        let k = cells[0][0].k();
        assert!(
            cells.iter().flatten().all(|c| c.k() == k),
            "transfer cells must share k"
        );
        TransferMatrix {
            cells,
            attach: None,
            out: None,
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_cells(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    CoeffSeries::one(k)
                } else {
                    CoeffSeries::zero(k)
                }
            })
        }))
    }

    pub fn k(&self) -> usize {
        self.cells[0][0].k()
    }

    pub fn cell(&self, row: usize, col: usize) -> &CoeffSeries<T> {
        &self.cells[row][col]
    }

    pub fn cells(&self) -> &[[CoeffSeries<T>; 4]; 4] {
        &self.cells
    }

    /// Pair the input vector must be taken over, if recorded.
    pub fn attach(&self) -> Option<&Pair> {
        self.attach.as_ref()
    }

    /// Pair of the output vector, if recorded.
    pub fn out(&self) -> Option<&Pair> {
        self.out.as_ref()
    }

    /// `self · v`. The result is taken over this matrix's output pair
    /// (or `v`'s pair when none is recorded).
    pub fn apply(&self, v: &KVector<T>) -> Result<KVector<T>> {
        if v.k() != self.k() {
            return Err(Error::Dimension(self.k(), v.k()));
        }
        if let Some(attach) = &self.attach {
            if attach != v.pair() {
                return Err(pair_mismatch(v.pair(), attach));
            }
        }
        let k = self.k();
        let blocks = std::array::from_fn(|i| {
            let mut acc = CoeffSeries::zero(k);
            for (cell, block) in self.cells[i].iter().zip(v.blocks()) {
                acc.add_product_unchecked(cell, block);
            }
            acc
        });
        let pair = self.out.clone().unwrap_or_else(|| v.pair().clone());
        Ok(KVector::new(pair, blocks))
    }

    /// The product `self · inner`, i.e. apply `inner` first.
    pub fn compose(&self, inner: &TransferMatrix<T>) -> Result<TransferMatrix<T>> {
        if inner.k() != self.k() {
            return Err(Error::Dimension(self.k(), inner.k()));
        }
        if let (Some(mid), Some(attach)) = (&inner.out, &self.attach) {
            if mid != attach {
                return Err(pair_mismatch(mid, attach));
            }
        }
        let k = self.k();
        let cells = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = CoeffSeries::zero(k);
                for m in 0..4 {
                    acc.add_product_unchecked(&self.cells[i][m], &inner.cells[m][j]);
                }
                acc
            })
        });
        Ok(TransferMatrix {
            cells,
            attach: inner.attach.clone().or_else(|| self.attach.clone()),
            out: self.out.clone().or_else(|| inner.out.clone()),
        })
    }

    /// Dense `4(k+1)` square form with every cell expanded into its
    /// upper-triangular Toeplitz block, for use with descending vectors.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.k() + 1;
        let mut dense = vec![vec![T::zero(); 4 * n]; 4 * n];
        for (bi, row) in self.cells.iter().enumerate() {
            for (bj, cell) in row.iter().enumerate() {
                for (r, line) in cell.to_toeplitz().into_iter().enumerate() {
                    for (c, value) in line.into_iter().enumerate() {
                        dense[bi * n + r][bj * n + c] = value;
                    }
                }
            }
        }
        dense
    }
}

fn pair_mismatch(got: &Pair, want: &Pair) -> Error {
    Error::PairMismatch {
        got_a: got.0.clone(),
        got_b: got.1.clone(),
        want_a: want.0.clone(),
        want_b: want.1.clone(),
    }
}

fn indices_of<'a>(g: &Graph, labels: impl IntoIterator<Item = &'a String>) -> Result<Vec<usize>> {
    labels.into_iter().map(|l| g.require(l)).collect()
}

/// `sum_{v in set ∩ base} p(base - v)`.
fn single_sum<T: Count>(
    oracle: &mut Oracle<'_, T>,
    k: usize,
    base: &Mask,
    set: &[usize],
) -> CoeffSeries<T> {
    let mut acc = CoeffSeries::zero(k);
    for &v in set.iter().filter(|&&v| base.contains(v)) {
        acc.add_assign_unchecked(&oracle.series(&base.without(v)));
    }
    acc
}

/// `sum p(base - u - v)` over `u in x_side`, `v in y_side`, `u != v`, both in `base`.
fn pair_sum<T: Count>(
    oracle: &mut Oracle<'_, T>,
    k: usize,
    base: &Mask,
    x_side: &[usize],
    y_side: &[usize],
) -> CoeffSeries<T> {
    let mut acc = CoeffSeries::zero(k);
    for &u in x_side.iter().filter(|&&u| base.contains(u)) {
        let without_u = base.without(u);
        for &v in y_side.iter().filter(|&&v| v != u && base.contains(v)) {
            acc.add_assign_unchecked(&oracle.series(&without_u.without(v)));
        }
    }
    acc
}

/// `P(h, s)`: coefficientwise sum of the series of `h - v` over `v in s`.
pub fn p_single_series<T: Count, S: AsRef<str>>(
    h: &Graph,
    s: impl IntoIterator<Item = S>,
    k: usize,
) -> Result<CoeffSeries<T>> {
    let set: Vec<usize> = s
        .into_iter()
        .map(|l| h.require(l.as_ref()))
        .collect::<Result<_>>()?;
    let mut oracle = Oracle::new(h, k);
    let root = oracle.root();
    Ok(single_sum(&mut oracle, k, &root, &set))
}

/// `P(h, (X, Y, Z))`: sum of the series of `h - u - v` over ordered choices
/// with `u` in `X ∪ Z`, `v` in `Y ∪ Z` and `u != v`.
pub fn p_pairs_series<T: Count>(
    h: &Graph,
    x_only: &BTreeSet<String>,
    y_only: &BTreeSet<String>,
    both: &BTreeSet<String>,
    k: usize,
) -> Result<CoeffSeries<T>> {
    if let Some(v) = x_only
        .intersection(y_only)
        .chain(x_only.intersection(both))
        .chain(y_only.intersection(both))
        .next()
    {
        return Err(Error::InvalidSets(v.clone()));
    }
    let x_side = indices_of(h, x_only.iter().chain(both))?;
    let y_side = indices_of(h, y_only.iter().chain(both))?;
    let mut oracle = Oracle::new(h, k);
    let root = oracle.root();
    Ok(pair_sum(&mut oracle, k, &root, &x_side, &y_side))
}

/// Which template a transfer-matrix row follows.
enum RowKind {
    /// Both attach vertices present; interior restricted to the mask.
    Full(Mask),
    /// The row's graph has lost `x`: only `y` reaches the interior.
    LostX(Mask),
    /// The row's graph has lost `y`.
    LostY(Mask),
}

fn build_row<T: Count>(
    oracle: &mut Oracle<'_, T>,
    k: usize,
    kind: &RowKind,
    x_side: &[usize],
    y_side: &[usize],
) -> [CoeffSeries<T>; 4] {
    let zero = || CoeffSeries::zero(k);
    match kind {
        RowKind::Full(base) => [
            oracle.series(base),
            single_sum(oracle, k, base, x_side).shift(1),
            single_sum(oracle, k, base, y_side).shift(1),
            pair_sum(oracle, k, base, x_side, y_side).shift(2),
        ],
        RowKind::LostX(base) => [
            zero(),
            oracle.series(base),
            zero(),
            single_sum(oracle, k, base, y_side).shift(1),
        ],
        RowKind::LostY(base) => [
            zero(),
            zero(),
            oracle.series(base),
            single_sum(oracle, k, base, x_side).shift(1),
        ],
    }
}

/// Builds the transfer matrix of one block.
pub fn build_transfer<T: Count>(profile: &AttachProfile, k: usize) -> Result<TransferMatrix<T>> {
    let h = &profile.interior;
    let x_side = indices_of(h, profile.x_only.iter().chain(&profile.both))?;
    let y_side = indices_of(h, profile.y_only.iter().chain(&profile.both))?;
    let mut oracle = Oracle::new(h, k);
    let root = oracle.root();

    // interior minus the given output vertices (attach vertices are skipped)
    let minus = |labels: &[&String]| -> Mask {
        let mut m = root.clone();
        for l in labels {
            if let Some(i) = h.index_of(l) {
                m.remove(i);
            }
        }
        m
    };
    let (a, b) = (&profile.out.0, &profile.out.1);
    use RowKind::*;
    let kinds = match profile.case {
        OutCase::General => [
            Full(root.clone()),
            Full(minus(&[a])),
            Full(minus(&[b])),
            Full(minus(&[a, b])),
        ],
        OutCase::AIsX => [
            Full(root.clone()),
            LostX(root.clone()),
            Full(minus(&[b])),
            LostX(minus(&[b])),
        ],
        OutCase::AIsY => [
            Full(root.clone()),
            LostY(root.clone()),
            Full(minus(&[b])),
            LostY(minus(&[b])),
        ],
        OutCase::BIsX => [
            Full(root.clone()),
            Full(minus(&[a])),
            LostX(root.clone()),
            LostX(minus(&[a])),
        ],
        OutCase::BIsY => [
            Full(root.clone()),
            Full(minus(&[a])),
            LostY(root.clone()),
            LostY(minus(&[a])),
        ],
    };
    let rows = kinds.map(|kind| build_row(&mut oracle, k, &kind, &x_side, &y_side));

    let mut tm = TransferMatrix::from_cells(rows);
    tm.attach = Some(profile.attach.clone());
    tm.out = Some(profile.out.clone());
    Ok(tm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{k_vector_direct, match_series, match_series_naive};

    fn s(k: usize, c: &[u64]) -> CoeffSeries<u64> {
        CoeffSeries::from_prefix(k, c.iter().copied())
    }

    fn pair(a: &str, b: &str) -> Pair {
        (a.to_owned(), b.to_owned())
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn block_graph(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
        Graph::from_edges(vertices.iter().copied(), edges.iter().copied()).unwrap()
    }

    /// Triangle-bridge block: attach (x, y), out (a, b), interior a, b, c, z.
    fn t_profile() -> AttachProfile {
        let h = block_graph(
            &["x", "y", "z", "c", "a", "b"],
            &[
                ("x", "z"),
                ("y", "z"),
                ("z", "c"),
                ("c", "a"),
                ("c", "b"),
                ("a", "b"),
            ],
        );
        AttachProfile::from_block_graph(&h, pair("x", "y"), pair("a", "b")).unwrap()
    }

    /// Hexagon over (a, b) with out pair the opposite edge (v1, v2).
    fn c6_profile() -> AttachProfile {
        let h = block_graph(
            &["a", "b", "h1", "v1", "v2", "h2"],
            &[
                ("a", "h1"),
                ("h1", "v1"),
                ("v1", "v2"),
                ("v2", "h2"),
                ("h2", "b"),
            ],
        );
        AttachProfile::from_block_graph(&h, pair("a", "b"), pair("v1", "v2")).unwrap()
    }

    /// Pentagon over (v3, v4) whose out pair (x, y) has x adjacent to v3.
    fn c5_profile() -> AttachProfile {
        let h = block_graph(
            &["v3", "v4", "x", "y", "p"],
            &[("v3", "x"), ("x", "y"), ("y", "p"), ("p", "v4")],
        );
        AttachProfile::from_block_graph(&h, pair("v3", "v4"), pair("x", "y")).unwrap()
    }

    fn assert_row(tm: &TransferMatrix<u64>, row: usize, expected: [CoeffSeries<u64>; 4]) {
        for (col, want) in expected.iter().enumerate() {
            assert_eq!(tm.cell(row, col), want, "cell ({row}, {col})");
        }
    }

    #[test]
    fn t_block_matrix() {
        let k = 6;
        let tm = build_transfer::<u64>(&t_profile(), k).unwrap();
        assert_eq!(t_profile().case(), OutCase::General);
        let z = CoeffSeries::zero(k);
        assert_row(
            &tm,
            0,
            [
                s(k, &[1, 4, 1]),
                s(k, &[1, 3, 0]).shift(1),
                s(k, &[1, 3, 0]).shift(1),
                z.clone(),
            ],
        );
        assert_row(
            &tm,
            1,
            [
                s(k, &[1, 2, 0]),
                s(k, &[1, 1, 0]).shift(1),
                s(k, &[1, 1, 0]).shift(1),
                z.clone(),
            ],
        );
        assert_row(
            &tm,
            2,
            [
                s(k, &[1, 2, 0]),
                s(k, &[1, 1, 0]).shift(1),
                s(k, &[1, 1, 0]).shift(1),
                z.clone(),
            ],
        );
        assert_row(
            &tm,
            3,
            [
                s(k, &[1, 1, 0]),
                s(k, &[1]).shift(1),
                s(k, &[1]).shift(1),
                z,
            ],
        );
    }

    #[test]
    fn hexagon_matrix() {
        let k = 6;
        let tm = build_transfer::<u64>(&c6_profile(), k).unwrap();
        let m = |c: &[u64]| s(k, c);
        assert_row(
            &tm,
            0,
            [
                m(&[1, 3, 1]),
                m(&[1, 2]).shift(1),
                m(&[1, 2]).shift(1),
                m(&[1, 1]).shift(2),
            ],
        );
        assert_row(
            &tm,
            1,
            [
                m(&[1, 1]),
                m(&[1, 1]).shift(1),
                m(&[1]).shift(1),
                m(&[1]).shift(2),
            ],
        );
        assert_row(
            &tm,
            2,
            [
                m(&[1, 1]),
                m(&[1]).shift(1),
                m(&[1, 1]).shift(1),
                m(&[1]).shift(2),
            ],
        );
        assert_row(
            &tm,
            3,
            [
                m(&[1]),
                m(&[1]).shift(1),
                m(&[1]).shift(1),
                m(&[1]).shift(2),
            ],
        );
    }

    #[test]
    fn pentagon_matrix() {
        let k = 6;
        let profile = c5_profile();
        assert_eq!(profile.x_only(), &set(&["x"]));
        assert_eq!(profile.y_only(), &set(&["p"]));
        let tm = build_transfer::<u64>(&profile, k).unwrap();
        let m = |c: &[u64]| s(k, c);
        let z = CoeffSeries::zero(k);
        assert_row(
            &tm,
            0,
            [
                m(&[1, 2]),
                m(&[1, 1]).shift(1),
                m(&[1, 1]).shift(1),
                m(&[1]).shift(2),
            ],
        );
        assert_row(&tm, 1, [m(&[1, 1]), z.clone(), m(&[1]).shift(1), z.clone()]);
        assert_row(
            &tm,
            2,
            [
                m(&[1]),
                m(&[1]).shift(1),
                m(&[1]).shift(1),
                m(&[1]).shift(2),
            ],
        );
        assert_row(&tm, 3, [m(&[1]), z.clone(), m(&[1]).shift(1), z]);
    }

    #[test]
    fn pentagon_maps_edge_vector_to_pentagon_vector() {
        let k = 6;
        let base = Graph::from_edges(["v3", "v4"], [("v3", "v4")]).unwrap();
        let start = k_vector_direct::<u64>(&base, "v3", "v4", k).unwrap();
        let got = build_transfer::<u64>(&c5_profile(), k)
            .unwrap()
            .apply(&start)
            .unwrap();
        let c5 = base
            .union_glue(
                ["x", "y", "p"],
                [("v3", "x"), ("x", "y"), ("y", "p"), ("p", "v4")],
            )
            .unwrap();
        assert_eq!(got, k_vector_direct::<u64>(&c5, "x", "y", k).unwrap());
    }

    #[test]
    fn single_and_pair_aggregators() {
        let t2 = t_profile().interior().clone();
        assert_eq!(
            p_single_series::<u64, _>(&t2, ["z"], 2).unwrap(),
            s(2, &[1, 3, 0])
        );
        assert!(p_single_series::<u64, &str>(&t2, [], 2).unwrap().is_zero());
        assert!(matches!(
            p_single_series::<u64, _>(&t2, ["q"], 2),
            Err(Error::NotFound(_))
        ));

        assert!(
            p_pairs_series::<u64>(&t2, &set(&[]), &set(&[]), &set(&["z"]), 2)
                .unwrap()
                .is_zero()
        );
        let single = p_pairs_series::<u64>(&t2, &set(&["a"]), &set(&["z"]), &set(&[]), 2).unwrap();
        assert_eq!(
            single,
            match_series(&t2.delete_vertices(["a", "z"]).unwrap(), 2)
        );
        assert!(matches!(
            p_pairs_series::<u64>(&t2, &set(&["a"]), &set(&["a"]), &set(&[]), 2),
            Err(Error::InvalidSets(_))
        ));

        // C4: every vertex deletion leaves P3 = [1, 2, 0]
        let c4 = block_graph(
            &["0", "1", "2", "3"],
            &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")],
        );
        let p3 = match_series_naive::<u64>(&c4.delete_vertices(["0"]).unwrap(), 2).unwrap();
        assert_eq!(p3, s(2, &[1, 2, 0]));
        assert_eq!(
            p_single_series::<u64, _>(&c4, ["0", "1", "2", "3"], 2).unwrap(),
            s(2, &[4, 8, 0])
        );
    }

    /// Block whose two interior vertices are both adjacent to x and y.
    fn double_z_block() -> (Graph, AttachProfile) {
        let h = block_graph(
            &["x", "y", "u", "v"],
            &[("x", "u"), ("x", "v"), ("y", "u"), ("y", "v"), ("u", "v")],
        );
        let profile = AttachProfile::from_block_graph(&h, pair("x", "y"), pair("u", "v")).unwrap();
        (h, profile)
    }

    #[test]
    fn pair_family_from_z_twice_is_required() {
        let k = 2;
        let (h, profile) = double_z_block();
        let interior = profile.interior();
        let with_zz = p_pairs_series::<u64>(
            interior,
            profile.x_only(),
            profile.y_only(),
            profile.both(),
            k,
        )
        .unwrap();
        // the three cross families are all empty here; only (u, v) and (v, u) remain
        let both: Vec<&String> = profile.both().iter().collect();
        let mut zz = match_series::<u64>(&interior.delete_vertices([both[0], both[1]]).unwrap(), k);
        let again = zz.clone();
        zz.add_assign(&again).unwrap();
        assert_eq!(with_zz, zz);

        // glue onto an edge and compare against brute force, with and without the term
        let base = Graph::from_edges(["x", "y"], [("x", "y")]).unwrap();
        let realized = base
            .union_glue(
                ["u", "v"],
                h.to_fragment()
                    .edges
                    .iter()
                    .map(|(a, b)| (a.as_str(), b.as_str())),
            )
            .unwrap();
        let truth = k_vector_direct::<u64>(&realized, "u", "v", k).unwrap();
        let start = k_vector_direct::<u64>(&base, "x", "y", k).unwrap();
        let tm = build_transfer::<u64>(&profile, k).unwrap();
        assert_eq!(tm.apply(&start).unwrap(), truth);

        let mut cells = tm.cells().clone();
        cells[0][3] = CoeffSeries::zero(k);
        let three_sum_only = TransferMatrix::from_cells(cells);
        assert_ne!(
            three_sum_only.apply(&start).unwrap().blocks(),
            truth.blocks()
        );
        assert_eq!(
            match_series_naive::<u64>(&realized, k).unwrap(),
            truth.blocks()[0].clone()
        );
    }

    #[test]
    fn attach_coincident_cases_dispatch() {
        let h = block_graph(&["x", "y", "w"], &[("x", "w")]);
        let cases = [
            (pair("x", "w"), OutCase::AIsX),
            (pair("y", "w"), OutCase::AIsY),
            (pair("w", "x"), OutCase::BIsX),
            (pair("w", "y"), OutCase::BIsY),
        ];
        for (out, case) in cases {
            let p = AttachProfile::from_block_graph(&h, pair("x", "y"), out).unwrap();
            assert_eq!(p.case(), case);
        }
        for bad in [
            pair("x", "y"),
            pair("y", "x"),
            pair("w", "w"),
            pair("w", "q"),
        ] {
            assert!(matches!(
                AttachProfile::from_block_graph(&h, pair("x", "y"), bad),
                Err(Error::InvalidProfile(_))
            ));
        }
    }

    #[test]
    fn identity_and_errors() {
        let k = 3;
        let v = KVector::new(
            pair("p", "q"),
            [s(k, &[1, 2]), s(k, &[1]), s(k, &[1, 1]), s(k, &[1])],
        );
        let id = TransferMatrix::<u64>::identity(k);
        assert_eq!(id.apply(&v).unwrap(), v);
        let a = build_transfer::<u64>(&t_profile(), k).unwrap();
        assert_eq!(id.compose(&a).unwrap(), a);
        assert!(matches!(
            TransferMatrix::<u64>::identity(2).apply(&v),
            Err(Error::Dimension(2, 3))
        ));
        assert!(matches!(a.apply(&v), Err(Error::PairMismatch { .. })));
        assert!(matches!(
            build_transfer::<u64>(&c6_profile(), k)
                .unwrap()
                .compose(&build_transfer(&c5_profile(), k).unwrap()),
            Err(Error::PairMismatch { .. })
        ));
    }

    #[test]
    fn corner_cells_carry_shift_factors() {
        let tm = build_transfer::<u64>(&c6_profile(), 5).unwrap();
        assert_eq!(tm.cell(0, 0), &match_series(c6_profile().interior(), 5));
        let corner = tm.cell(0, 3).coeffs();
        assert_eq!((corner[0], corner[1]), (0, 0));
    }
}
