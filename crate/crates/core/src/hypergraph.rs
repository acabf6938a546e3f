//! r-uniform hypergraphs on dense vertex indices `0..n`.
//!
//! A [`UniformHypergraph`] is always in canonical form: every edge is a
//! strictly increasing r-tuple and the edge list is sorted lexicographically.
//! Vertex → edge incidence lists are built once at construction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};

/// One corner of an edge: the edge index and the position of the vertex in
/// the sorted edge tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub edge: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: Vec<usize>,
    incidence_offsets: Vec<usize>,
    incidences: Vec<Incidence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// Minimum degree δ over all n vertices (0 if any vertex is isolated).
    pub min: usize,
    /// Maximum degree Δ.
    pub max: usize,
}

/// A hypergraph carved out of a parent, with maps back to the parent's
/// vertex and edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubHypergraph {
    pub graph: UniformHypergraph,
    /// `vertices[local] = parent vertex`
    pub vertices: Vec<usize>,
    /// `edges[local] = parent edge index`
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Edge-connected components, ordered by their smallest vertex.
    pub parts: Vec<SubHypergraph>,
    /// Vertices of degree zero.
    pub isolated: Vec<usize>,
}

/// Vertex names declared with `# alias <index> <name>` comment lines.
pub type Aliases = BTreeMap<usize, String>;

impl UniformHypergraph {
    /// Builds the canonical hypergraph from edges given in any vertex order.
    ///
    /// `r` may be 1 here so that one-vertex operands of the join can be
    /// expressed; the text parser insists on `r ≥ 2`.
    pub fn new<E, I>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r == 0 {
            return Err(Error::Uniformity { r, min: 1 });
        }
        let mut rows: Vec<(Vec<usize>, usize)> = Vec::new();
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = edge.as_ref();
            if edge.len() != r {
                return Err(Error::EdgeArity { edge: index, len: edge.len(), r });
            }
            let mut sorted = edge.to_vec();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::RepeatedVertex { edge: index, vertex: pair[0] });
                }
            }
            if let Some(&v) = sorted.last().filter(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { edge: index, vertex: v, n });
            }
            rows.push((sorted, index));
        }
        rows.sort();
        for pair in rows.windows(2) {
            if pair[0].0 == pair[1].0 {
                let (first, edge) = (pair[0].1.min(pair[1].1), pair[0].1.max(pair[1].1));
                return Err(Error::DuplicateEdge { edge, first });
            }
        }
        let flat: Vec<usize> = rows.into_iter().flat_map(|(e, _)| e).collect();
        Ok(Self::from_canonical(r, n, flat))
    }

    /// Assumes `flat` is already canonical.
    fn from_canonical(r: usize, n: usize, edges: Vec<usize>) -> Self {
        let mut counts = vec![0usize; n + 1];
        for &v in &edges {
            counts[v + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let mut cursor = counts;
        let mut incidences = vec![Incidence { edge: 0, slot: 0 }; edges.len()];
        for (pos, &v) in edges.iter().enumerate() {
            incidences[cursor[v]] = Incidence { edge: pos / r, slot: pos % r };
            cursor[v] += 1;
        }
        UniformHypergraph {
            r,
            n,
            edges,
            incidence_offsets: offsets,
            incidences,
        }
    }

    /// The hypergraph with `n` vertices and no edges.
    pub fn empty(r: usize, n: usize) -> Result<Self> {
        Self::new::<[usize; 0], _>(r, n, [])
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len() / self.r
    }

    #[inline]
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e * self.r..(e + 1) * self.r]
    }

    pub fn edges(&self) -> core::slice::ChunksExact<'_, usize> {
        self.edges.chunks_exact(self.r)
    }

    #[inline]
    pub fn incidences(&self, v: usize) -> &[Incidence] {
        &self.incidences[self.incidence_offsets[v]..self.incidence_offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.incidence_offsets[v + 1] - self.incidence_offsets[v]
    }

    pub fn degrees(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        DegreeProfile { degrees, min, max }
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        let (mut lo, mut hi) = (0, self.m());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(&sorted[..]) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Partitions the non-isolated vertices into edge-connected components.
    pub fn connected_components(&self) -> Components {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for edge in self.edges() {
            let mut root = find(&mut parent, edge[0]);
            for &v in &edge[1..] {
                let other = find(&mut parent, v);
                if other != root {
                    let (lo, hi) = (root.min(other), root.max(other));
                    parent[hi] = lo;
                    root = lo;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut isolated = Vec::new();
        for v in 0..self.n {
            if self.degree(v) == 0 {
                isolated.push(v);
            } else {
                let root = find(&mut parent, v);
                groups.entry(root).or_default().push(v);
            }
        }
        let mut parts: Vec<SubHypergraph> =
            groups.into_values().map(|vs| self.induced(&vs)).collect();
        parts.sort_by_key(|part| part.vertices[0]);
        Components { parts, isolated }
    }

    /// G[S]: the edges fully contained in `subset`, with vertices relabelled
    /// in increasing order of their parent index. Out-of-range entries of
    /// `subset` are ignored; duplicates are collapsed.
    pub fn induced(&self, subset: &[usize]) -> SubHypergraph {
        let mut vertices: Vec<usize> = subset.iter().copied().filter(|&v| v < self.n).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut flat = Vec::new();
        let mut edges = Vec::new();
        for (e, edge) in self.edges().enumerate() {
            if edge.iter().all(|&v| local[v] != usize::MAX) {
                flat.extend(edge.iter().map(|&v| local[v]));
                edges.push(e);
            }
        }
        // The relabelling is monotone, so canonical order is preserved.
        let graph = Self::from_canonical(self.r, vertices.len(), flat);
        SubHypergraph { graph, vertices, edges }
    }

    /// Vertex-disjoint union, with `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::precondition("disjoint union", "operands of equal uniformity"));
        }
        let shift = self.n;
        let edges = self
            .edges()
            .map(|e| e.to_vec())
            .chain(other.edges().map(|e| e.iter().map(|&v| v + shift).collect()));
        Self::new(self.r, self.n + other.n, edges)
    }

    /// Returns the hypergraph with `edge` added.
    pub fn with_edge(&self, edge: &[usize]) -> Result<Self> {
        let edges = self.edges().map(|e| e.to_vec()).chain(core::iter::once(edge.to_vec()));
        Self::new(self.r, self.n, edges)
    }

    /// Canonical `.uhg` text: a `r n` header and one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.r, self.n);
        for edge in self.edges() {
            let mut first = true;
            for v in edge {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_hypergraph(text)
    }
}

impl core::fmt::Display for UniformHypergraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses `.uhg` text into canonical form.
pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph> {
    parse_hypergraph_with_aliases(text).map(|(g, _)| g)
}

/// Like [`parse_hypergraph`], also returning the alias table. Edge lines may
/// refer to vertices by alias name.
pub fn parse_hypergraph_with_aliases(text: &str) -> Result<(UniformHypergraph, Aliases)> {
    let mut aliases = Aliases::new();
    let mut by_name: BTreeMap<String, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let Some(comment) = line.strip_prefix('#') else { continue };
        let mut tokens = comment.split_whitespace();
        if tokens.next() != Some("alias") {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: idx + 1, message };
        let (Some(index), Some(name), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_err("alias lines read `# alias <index> <name>`".to_string()));
        };
        let index: usize = index
            .parse()
            .map_err(|_| parse_err(format!("alias index `{index}` is not an integer")))?;
        if by_name.insert(name.to_string(), index).is_some() {
            return Err(parse_err(format!("alias `{name}` declared twice")));
        }
        aliases.insert(index, name.to_string());
    }

    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let parse_err = |message: String| Error::Parse { line: lineno, message };
        match header {
            None => {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                let [r, n] = tokens[..] else {
                    return Err(parse_err(format!("header must be `r n`, got `{line}`")));
                };
                let r: usize = r.parse().map_err(|_| parse_err(format!("bad uniformity `{r}`")))?;
                let n: usize = n.parse().map_err(|_| parse_err(format!("bad vertex count `{n}`")))?;
                if r < 2 {
                    return Err(Error::Uniformity { r, min: 2 });
                }
                if let Some((&v, _)) = aliases.iter().find(|(&v, _)| v >= n) {
                    return Err(parse_err(format!("alias for vertex {v} but n = {n}")));
                }
                header = Some((r, n));
            }
            Some(_) => {
                let edge = line
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .ok()
                            .or_else(|| by_name.get(tok).copied())
                            .ok_or_else(|| parse_err(format!("unknown vertex `{tok}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                edges.push(edge);
                edge_lines.push(lineno);
            }
        }
    }
    let Some((r, n)) = header else {
        return Err(Error::Parse { line: 0, message: "missing `r n` header".to_string() });
    };
    let graph = UniformHypergraph::new(r, n, &edges).map_err(|err| {
        let line = match &err {
            Error::EdgeArity { edge, .. }
            | Error::RepeatedVertex { edge, .. }
            | Error::VertexOutOfRange { edge, .. }
            | Error::DuplicateEdge { edge, .. } => edge_lines[*edge],
            _ => 0,
        };
        Error::Parse { line, message: err.to_string() }
    })?;
    Ok((graph, aliases))
}
