//! Graph and chain constructors.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::transfer::Pair;
use crate::Block;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicKind {
    Path,
    Cycle,
    Complete,
    Star,
}

/// Standard graph on `n` vertices labelled `v0 .. v{n-1}`. The star has
/// centre `v0`.
pub fn gen_basic(kind: BasicKind, n: usize) -> Result<Graph> {
    let min = if kind == BasicKind::Cycle { 3 } else { 1 };
    if n < min {
        return Err(Error::BadSpec(format!(
            "{kind:?} needs at least {min} vertices, got {n}"
        )));
    }
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(usize, usize)> = match kind {
        BasicKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        BasicKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        BasicKind::Complete => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        BasicKind::Star => (1..n).map(|i| (0, i)).collect(),
    };
    Graph::from_edges(
        &labels,
        edges.into_iter().map(|(i, j)| (&labels[i], &labels[j])),
    )
}

/// Chains transcribed from worked examples, stored as JSON in `fixtures/`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// Hexagon, triangle-bridge graph and pentagon on 13 vertices; `Z = 912`.
    Sporadic912,
    /// 22-vertex polycyclic molecule; `Z = 74816`.
    Molecule74816,
}

impl Fixture {
    pub const ALL: [Fixture; 2] = [Fixture::Sporadic912, Fixture::Molecule74816];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Sporadic912 => "sporadic-912",
            Fixture::Molecule74816 => "molecule-74816",
        }
    }

    pub fn json(self) -> &'static str {
        match self {
            Fixture::Sporadic912 => include_str!("../fixtures/sporadic-912.json"),
            Fixture::Molecule74816 => include_str!("../fixtures/molecule-74816.json"),
        }
    }

    pub fn chain(self) -> Chain {
        Chain::from_json(self.json()).expect("bundled fixture parses")
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadSpec(format!("unknown fixture `{s}`")))
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hexagon placement letter in a benzenoid chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSpec {
    /// Cycles of the given lengths glued edge to edge. The output edge of a
    /// cycle is its `offset`-th edge counted from the attach vertex `x`
    /// along the new path, so `1 <= offset <= len - 1`.
    Cyclic(Vec<(usize, usize)>),
    /// `turns.len() + 1` hexagons; turn `i` picks the edge of hexagon `i`
    /// that hexagon `i + 1` is fused to.
    Benzenoid(Vec<Turn>),
    Fixture(Fixture),
}

impl ChainSpec {
    /// Parses `"6:1,5:2"`.
    pub fn parse_cyclic(s: &str) -> Result<Self> {
        let bad = || Error::BadSpec(format!("expected `len:offset,...`, got `{s}`"));
        let cycles = s
            .split(',')
            .map(|item| {
                let (len, off) = item.trim().split_once(':').ok_or_else(bad)?;
                Ok((
                    len.trim().parse().map_err(|_| bad())?,
                    off.trim().parse().map_err(|_| bad())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainSpec::Cyclic(cycles))
    }

    /// Parses an `L`/`R` word; the empty word is a single hexagon.
    pub fn parse_benzenoid(s: &str) -> Result<Self> {
        let turns = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'L' => Ok(Turn::L),
                'R' => Ok(Turn::R),
                other => Err(Error::BadSpec(format!(
                    "benzenoid letter `{other}` is not L or R"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainSpec::Benzenoid(turns))
    }
}

fn edge_base() -> (Graph, Pair) {
    let g = Graph::from_edges(["b0", "b1"], [("b0", "b1")]).expect("static base");
    (g, ("b0".into(), "b1".into()))
}

/// Block that closes a cycle of length `len` over the attach edge, with
/// fresh vertices `{prefix}1 .. {prefix}{len-2}` on the path from `x` to `y`.
fn cycle_block(name: String, prefix: &str, attach: Pair, len: usize, out_edge: usize) -> Block {
    let inner: Vec<String> = (1..=len - 2).map(|j| format!("{prefix}{j}")).collect();
    let ring: Vec<&String> = std::iter::once(&attach.0)
        .chain(&inner)
        .chain(std::iter::once(&attach.1))
        .collect();
    let edges = ring
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    let out = (ring[out_edge - 1].clone(), ring[out_edge].clone());
    Block {
        name,
        attach,
        out,
        vertices: inner,
        edges,
    }
}

pub fn gen_chain(spec: &ChainSpec) -> Result<Chain> {
    match spec {
        ChainSpec::Fixture(f) => Ok(f.chain()),
        ChainSpec::Cyclic(cycles) => {
            if cycles.is_empty() {
                return Err(Error::BadSpec(
                    "cyclic chain needs at least one cycle".into(),
                ));
            }
            let (base, pair) = edge_base();
            let mut attach = pair.clone();
            let mut blocks = Vec::with_capacity(cycles.len());
            for (i, &(len, offset)) in cycles.iter().enumerate() {
                if len < 3 || offset < 1 || offset > len - 1 {
                    return Err(Error::BadSpec(format!(
                        "cycle {i}: need len >= 3 and 1 <= offset <= len - 1, got {len}:{offset}"
                    )));
                }
                let block = cycle_block(
                    format!("C{len}#{i}"),
                    &format!("c{i}_"),
                    attach,
                    len,
                    offset,
                );
                attach = block.out.clone();
                blocks.push(block);
            }
            Ok(Chain {
                base,
                pair,
                blocks,
                k: None,
            })
        }
        ChainSpec::Benzenoid(turns) => {
            let (base, pair) = edge_base();
            let mut attach = pair.clone();
            let mut blocks = Vec::with_capacity(turns.len() + 1);
            for i in 0..=turns.len() {
                // ring is x, u1, u2, u3, u4, y; edge j joins ring[j-1], ring[j]
                let out_edge = match turns.get(i) {
                    Some(Turn::L) => 2,
                    Some(Turn::R) => 4,
                    None => 3,
                };
                let block = cycle_block(
                    format!("hexagon#{i}"),
                    &format!("h{i}_"),
                    attach,
                    6,
                    out_edge,
                );
                attach = block.out.clone();
                blocks.push(block);
            }
            Ok(Chain {
                base,
                pair,
                blocks,
                k: None,
            })
        }
    }
}

/// Deterministic workload for benchmarks: `blocks` cycles of lengths 5 to
/// 8 with a rotating mix of output positions.
pub fn bench_chain(blocks: usize) -> Chain {
    const PATTERN: [(usize, usize); 6] = [(6, 3), (5, 1), (6, 2), (8, 4), (5, 4), (7, 6)];
    let cycles = (0..blocks).map(|i| PATTERN[i % PATTERN.len()]).collect();
    gen_chain(&ChainSpec::Cyclic(cycles)).expect("static pattern is valid")
}

/// Realized graphs of random chains stay at or below this many vertices.
pub const RANDOM_CHAIN_VERTEX_CAP: usize = 16;

/// Pseudorandom valid chain for oracle sweeps. The same arguments always
/// give the same chain.
///
/// Each block picks, per fresh vertex, whether it touches `x`, `y`, both or
/// neither, adds random interior edges, and places its output pair in one
/// of the five positions (both interior, or one of them an attach vertex).
pub fn gen_random_chain(seed: u64, max_blocks: usize, max_block_size: usize) -> Chain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_blocks = max_blocks.max(1);
    let max_block_size = max_block_size.max(1);

    let base_n = rng.gen_range(2..=4);
    let base_labels: Vec<String> = (0..base_n).map(|i| format!("b{i}")).collect();
    let mut base = Graph::new();
    for l in &base_labels {
        base.add_vertex(l).expect("fresh label");
    }
    for i in 0..base_n {
        for j in i + 1..base_n {
            if rng.gen_bool(0.6) {
                base.add_edge(&base_labels[i], &base_labels[j])
                    .expect("valid edge");
            }
        }
    }
    let pair: Pair = (base_labels[0].clone(), base_labels[1].clone());

    let mut total = base_n;
    let mut attach = pair.clone();
    let mut blocks = Vec::new();
    for i in 0..rng.gen_range(1..=max_blocks) {
        let room = RANDOM_CHAIN_VERTEX_CAP - total;
        if room == 0 {
            break;
        }
        let m = rng.gen_range(1..=max_block_size.min(room));
        total += m;
        let fresh: Vec<String> = (0..m).map(|j| format!("n{i}_{j}")).collect();
        let (x, y) = attach.clone();
        let mut edges = Vec::new();
        for v in &fresh {
            match rng.gen_range(0..4) {
                0 => edges.push((x.clone(), v.clone())),
                1 => edges.push((y.clone(), v.clone())),
                2 => {
                    edges.push((x.clone(), v.clone()));
                    edges.push((v.clone(), y.clone()));
                }
                _ => {}
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                if rng.gen_bool(0.45) {
                    edges.push((fresh[a].clone(), fresh[b].clone()));
                }
            }
        }
        let pick = |rng: &mut ChaCha8Rng| fresh.choose(rng).expect("non-empty").clone();
        // 0: both interior; 1..=4: a = x, a = y, b = x, b = y
        let case = if m >= 2 && rng.gen_bool(0.5) {
            0
        } else {
            rng.gen_range(1..=4)
        };
        let out = match case {
            0 => {
                let mut two = fresh.choose_multiple(&mut rng, 2);
                let a = two.next().expect("two").clone();
                let b = two.next().expect("two").clone();
                (a, b)
            }
            1 => (x.clone(), pick(&mut rng)),
            2 => (y.clone(), pick(&mut rng)),
            3 => (pick(&mut rng), x.clone()),
            _ => (pick(&mut rng), y.clone()),
        };
        let block = Block {
            name: format!("random#{i}"),
            attach: attach.clone(),
            out: out.clone(),
            vertices: fresh,
            edges,
        };
        attach = out;
        blocks.push(block);
    }

    Chain {
        base,
        pair,
        blocks,
        k: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Severity, Strictness};
    use crate::oracle::{match_series, match_series_naive};
    use crate::series::CoeffSeries;

    #[test]
    fn basic_graphs() {
        let c6 = gen_basic(BasicKind::Cycle, 6).unwrap();
        assert_eq!(match_series_naive::<u64>(&c6, 3).unwrap().total(), 18);
        let p2 = gen_basic(BasicKind::Path, 2).unwrap();
        assert_eq!((p2.vertex_count(), p2.edge_count()), (2, 1));
        let k3 = gen_basic(BasicKind::Complete, 3).unwrap();
        assert_eq!(
            match_series::<u64>(&k3, 2),
            CoeffSeries::from_prefix(2, [1u64, 3, 0])
        );
        let star = gen_basic(BasicKind::Star, 5).unwrap();
        assert_eq!(star.degree("v0").unwrap(), 4);
        assert!(gen_basic(BasicKind::Cycle, 2).is_err());
        assert!(gen_basic(BasicKind::Path, 0).is_err());
    }

    #[test]
    fn cyclic_chain_shapes() {
        let chain = gen_chain(&ChainSpec::parse_cyclic("6:1").unwrap()).unwrap();
        let g = chain.realize().unwrap();
        assert!(g.same_as(&{
            let mut c = Graph::from_edges(
                ["b0", "c0_1", "c0_2", "c0_3", "c0_4", "b1"],
                [
                    ("b0", "c0_1"),
                    ("c0_1", "c0_2"),
                    ("c0_2", "c0_3"),
                    ("c0_3", "c0_4"),
                    ("c0_4", "b1"),
                ],
            )
            .unwrap();
            c.add_edge("b0", "b1").unwrap();
            c
        }));
        assert_eq!(chain.hosoya::<u64>().unwrap(), 18);

        let two = gen_chain(&ChainSpec::parse_cyclic("6:1,5:2").unwrap()).unwrap();
        assert_eq!(two.blocks.len(), 2);
        assert_eq!(two.realize().unwrap().vertex_count(), 9);

        assert!(gen_chain(&ChainSpec::Cyclic(vec![(5, 5)])).is_err());
        assert!(gen_chain(&ChainSpec::Cyclic(vec![(2, 1)])).is_err());
        assert!(ChainSpec::parse_cyclic("6-1").is_err());
    }

    #[test]
    fn benzenoid_counts() {
        let chain = gen_chain(&ChainSpec::parse_benzenoid("LL").unwrap()).unwrap();
        let g = chain.realize().unwrap();
        assert_eq!(
            (chain.blocks.len(), g.vertex_count(), g.edge_count()),
            (3, 14, 16)
        );
        assert!(ChainSpec::parse_benzenoid("LX").is_err());
        let naph = gen_chain(&ChainSpec::parse_benzenoid("L").unwrap()).unwrap();
        let brute = match_series_naive::<u64>(&naph.realize().unwrap(), 5).unwrap();
        assert_eq!(naph.hosoya::<u64>().unwrap(), brute.total());
    }

    #[test]
    fn random_chain_is_deterministic_and_valid() {
        for seed in 0..50 {
            let a = gen_random_chain(seed, 4, 5);
            assert_eq!(a, gen_random_chain(seed, 4, 5));
            assert!(a.vertex_count() <= RANDOM_CHAIN_VERTEX_CAP);
            let errors: Vec<_> = a
                .validate(Strictness::Lenient)
                .into_iter()
                .filter(|d| d.severity == Severity::Error)
                .collect();
            assert!(errors.is_empty(), "seed {seed}: {errors:?}");
        }
    }

    #[test]
    fn fixture_names_round_trip() {
        for f in Fixture::ALL {
            assert_eq!(f.name().parse::<Fixture>().unwrap(), f);
        }
        assert!("nope".parse::<Fixture>().is_err());
    }
}
