//! Simple undirected graphs with string-labelled vertices.
//!
//! Vertices carry a user-facing label and a dense index `0..n`. Operations
//! that remove vertices return a fresh graph whose surviving vertices keep
//! their relative order, so indices are remapped deterministically.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk graph form: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFragment {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

/// Interior neighbours of an attach pair `(x, y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeighborPartition {
    /// Adjacent to `x` only.
    pub x_only: BTreeSet<String>,
    /// Adjacent to `y` only.
    pub y_only: BTreeSet<String>,
    /// Adjacent to both.
    pub both: BTreeSet<String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph, rejecting duplicate labels, loops and repeated edges.
    pub fn from_edges<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.to_owned(), v.to_owned()));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn from_fragment(fragment: &GraphFragment) -> Result<Self> {
        Self::from_edges(
            fragment.vertices.iter().map(String::as_str),
            fragment.edges.iter().map(|(u, v)| (u.as_str(), v.as_str())),
        )
    }

    pub fn to_fragment(&self) -> GraphFragment {
        GraphFragment {
            vertices: self.labels.clone(),
            edges: self
                .edge_indices()
                .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
                .collect(),
        }
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.index.contains_key(label) {
            return Err(Error::DuplicateVertex(label.to_owned()));
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        self.adj.push(Vec::new());
        Ok(id)
    }

    /// Adds the edge `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        let iu = self.require(u)?;
        let iv = self.require(v)?;
        if iu == iv {
            return Err(Error::SelfLoop(u.to_owned()));
        }
        if let Err(pos) = self.adj[iu].binary_search(&iv) {
            self.adj[iu].insert(pos, iv);
            let pos = self.adj[iv].binary_search(&iu).unwrap_err();
            self.adj[iv].insert(pos, iu);
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Sorted neighbour indices of vertex `id`.
    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adj[id]
    }

    pub fn degree(&self, label: &str) -> Result<usize> {
        Ok(self.adj[self.require(label)?].len())
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(iu), Some(iv)) => self.adj[iu].binary_search(&iv).is_ok(),
            _ => false,
        }
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Label-level edge set with each pair ordered, for order-free comparison.
    pub fn edge_set(&self) -> BTreeSet<(String, String)> {
        self.edge_indices()
            .map(|(u, v)| {
                let (a, b) = (&self.labels[u], &self.labels[v]);
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect()
    }

    /// True when both graphs have the same labelled vertices and edges,
    /// regardless of insertion order.
    pub fn same_as(&self, other: &Graph) -> bool {
        let mine: BTreeSet<&String> = self.labels.iter().collect();
        let theirs: BTreeSet<&String> = other.labels.iter().collect();
        mine == theirs && self.edge_set() == other.edge_set()
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::NotFound(label.to_owned()))
    }

    /// Induced subgraph on the vertices for which `keep` is true.
    pub(crate) fn induced_by(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut g = Graph::new();
        for (i, label) in self.labels.iter().enumerate() {
            if keep(i) {
                remap[i] = g.labels.len();
                g.labels.push(label.clone());
                g.index.insert(label.clone(), remap[i]);
            }
        }
        g.adj = vec![Vec::new(); g.labels.len()];
        for (i, ns) in self.adj.iter().enumerate() {
            if remap[i] == usize::MAX {
                continue;
            }
            // remap is monotone on survivors, so sortedness is preserved
            g.adj[remap[i]] = ns
                .iter()
                .filter(|&&j| remap[j] != usize::MAX)
                .map(|&j| remap[j])
                .collect();
        }
        g
    }

    /// Induced subgraph on `V(self) \ s`.
    pub fn delete_vertices<I, S>(&self, s: I) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut drop = vec![false; self.labels.len()];
        for label in s {
            drop[self.require(label.as_ref())?] = true;
        }
        Ok(self.induced_by(|i| !drop[i]))
    }

    /// Copy of the graph without the edge `{u, v}`.
    pub fn delete_edge(&self, u: &str, v: &str) -> Result<Graph> {
        let iu = self.require(u)?;
        let iv = self.require(v)?;
        let mut g = self.clone();
        if let Ok(pos) = g.adj[iu].binary_search(&iv) {
            g.adj[iu].remove(pos);
            let pos = g.adj[iv].binary_search(&iu).unwrap();
            g.adj[iv].remove(pos);
            Ok(g)
        } else {
            Err(Error::NotFound(format!("{u}-{v}")))
        }
    }

    /// Splits the neighbourhood of the pair `(x, y)` into the vertices
    /// adjacent to `x` only, to `y` only, and to both. `x` and `y`
    /// themselves never appear in any part.
    pub fn neighbor_partition(&self, x: &str, y: &str) -> Result<NeighborPartition> {
        if x == y {
            return Err(Error::InvalidPair(x.to_owned(), y.to_owned()));
        }
        let ix = self.require(x)?;
        let iy = self.require(y)?;
        let nx: BTreeSet<usize> = self.adj[ix].iter().copied().filter(|&v| v != iy).collect();
        let ny: BTreeSet<usize> = self.adj[iy].iter().copied().filter(|&v| v != ix).collect();
        let name = |set: Vec<usize>| -> BTreeSet<String> {
            set.into_iter().map(|v| self.labels[v].clone()).collect()
        };
        Ok(NeighborPartition {
            x_only: name(nx.difference(&ny).copied().collect()),
            y_only: name(ny.difference(&nx).copied().collect()),
            both: name(nx.intersection(&ny).copied().collect()),
        })
    }

    /// Component id per vertex plus the number of components.
    pub(crate) fn component_ids(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.labels.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.labels.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().1 <= 1
    }

    /// Connected components as induced subgraphs, ordered by their
    /// lexicographically least vertex label.
    pub fn components(&self) -> Vec<Graph> {
        let (comp, count) = self.component_ids();
        let mut parts: Vec<Graph> = (0..count)
            .map(|c| self.induced_by(|i| comp[i] == c))
            .collect();
        parts.sort_by(|a, b| a.labels.iter().min().cmp(&b.labels.iter().min()));
        parts
    }

    /// Adds fresh `block_vertices` and `block_edges` onto a copy of `self`.
    ///
    /// Block edges may touch existing vertices; an edge between two existing
    /// vertices is accepted only if it is already present (it collapses),
    /// otherwise it would rewire the old graph and is rejected.
    pub fn union_glue<V, E, S>(&self, block_vertices: V, block_edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut g = self.clone();
        g.glue_in_place(block_vertices, block_edges)?;
        Ok(g)
    }

    pub(crate) fn glue_in_place<V, E, S>(&mut self, block_vertices: V, block_edges: E) -> Result<()>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let old_n = self.labels.len();
        for v in block_vertices {
            self.add_vertex(v.as_ref())?;
        }
        for (u, v) in block_edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = self.require(u)?;
            let iv = self.require(v)?;
            if iu < old_n && iv < old_n && !self.has_edge(u, v) {
                return Err(Error::IllegalCrossEdge(u.to_owned(), v.to_owned()));
            }
            self.add_edge(u, v)?;
        }
        Ok(())
    }

    /// Disjoint union; labels must not collide.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let fragment = other.to_fragment();
        self.union_glue(
            fragment.vertices.iter().map(String::as_str),
            fragment.edges.iter().map(|(u, v)| (u.as_str(), v.as_str())),
        )
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl TryFrom<GraphFragment> for Graph {
    type Error = Error;

    fn try_from(fragment: GraphFragment) -> Result<Self> {
        Graph::from_fragment(&fragment)
    }
}
