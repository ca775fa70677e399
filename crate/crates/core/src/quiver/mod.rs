//! Finite quivers (directed multigraphs with named vertices and arrows), paths
//! and oriented cycles.
//!
//! Paths are written left to right in traversal order: for `a_1 ⋯ a_m` the
//! target of `a_i` is the source of `a_{i+1}`. Every other module relies on
//! this convention.

mod parse;

pub use parse::{parse_quiver, Problem, SourcePosition};

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Index of a vertex in its quiver's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an arrow in its quiver's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(String),
    #[error("unknown arrow `{0}`")]
    NoSuchArrow(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("path from {src} to {tgt} is not a cycle")]
    NotACycle { src: String, tgt: String },
}

/// A finite quiver. Parallel arrows and loops are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a quiver from vertex names and `(name, src, tgt)` triples.
    pub fn from_parts<V, A, S>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, src, tgt) in arrows {
            q.add_arrow(name.as_ref(), src.as_ref(), tgt.as_ref())?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, QuiverError> {
        if self.vertex_index.contains_key(name) {
            return Err(QuiverError::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertices.len());
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        self.out_arrows.push(Vec::new());
        self.in_arrows.push(Vec::new());
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, src: &str, tgt: &str) -> Result<ArrowId, QuiverError> {
        if self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        let lookup = |v: &str| {
            self.vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| QuiverError::UnknownVertex { arrow: name.to_string(), vertex: v.to_string() })
        };
        let (s, t) = (lookup(src)?, lookup(tgt)?);
        Ok(self.push_arrow(name.to_string(), s, t))
    }

    pub(crate) fn push_arrow(&mut self, name: String, src: VertexId, tgt: VertexId) -> ArrowId {
        let id = ArrowId(self.arrows.len());
        self.arrow_index.insert(name.clone(), id);
        self.arrows.push(Arrow { name, src, tgt });
        self.out_arrows[src.0].push(id);
        self.in_arrows[tgt.0].push(id);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl ExactSizeIterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].src
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].tgt
    }

    /// Arrows `a` with `s(a) = v`, in declaration order.
    pub fn arrows_from(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v.0]
    }

    /// Arrows `a` with `t(a) = v`, in declaration order.
    pub fn arrows_into(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v.0]
    }

    /// No arrow starts at `v`.
    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_arrows[v.0].is_empty()
    }

    /// No arrow ends at `v`.
    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_arrows[v.0].is_empty()
    }

    /// Connectedness of the underlying undirected graph. The empty quiver is
    /// not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            let nbrs = self.out_arrows[v]
                .iter()
                .map(|&a| self.target(a))
                .chain(self.in_arrows[v].iter().map(|&a| self.source(a)));
            for w in nbrs {
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w.0);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A shortest oriented cycle, or `None` when the quiver is acyclic.
    pub fn shortest_cycle(&self) -> Option<Cycle> {
        let mut best: Option<Cycle> = None;
        for h in self.vertices() {
            if let Some(c) = self.shortest_cycle_at(h) {
                if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
        }
        best
    }

    fn shortest_cycle_at(&self, h: VertexId) -> Option<Cycle> {
        // BFS over vertices, remembering the arrow used to first reach each one.
        let n = self.vertex_count();
        let mut via: Vec<Option<ArrowId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &a in &self.out_arrows[h.0] {
            let t = self.target(a);
            if t == h {
                return Some(Cycle { path: Path::from_arrows_unchecked(self, vec![a]) });
            }
            if !seen[t.0] {
                seen[t.0] = true;
                via[t.0] = Some(a);
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &a in &self.out_arrows[v.0] {
                let t = self.target(a);
                if t == h {
                    let mut arrows = vec![a];
                    let mut cur = v;
                    while cur != h {
                        let b = via[cur.0].expect("bfs parent");
                        arrows.push(b);
                        cur = self.source(b);
                    }
                    arrows.reverse();
                    return Some(Cycle { path: Path::from_arrows_unchecked(self, arrows) });
                }
                if !seen[t.0] {
                    seen[t.0] = true;
                    via[t.0] = Some(a);
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Minimum length of an oriented cycle.
    pub fn girth(&self) -> Girth {
        match self.shortest_cycle() {
            Some(c) => Girth::Finite(c.len()),
            None => Girth::Infinite,
        }
    }

    /// Parses a path written as arrow names, e.g. `["x1", "x2"]`.
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, QuiverError> {
        let arrows = names
            .iter()
            .map(|n| self.arrow_id(n.as_ref()).ok_or_else(|| QuiverError::NoSuchArrow(n.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, arrows)
    }

    /// Looks up a path written as a `·`- or whitespace-separated list of arrow
    /// names. A bare vertex name gives the trivial path there.
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let names: Vec<&str> = text.split(|c: char| c == '·' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if names.len() == 1 && self.arrow_id(names[0]).is_none() {
            if let Some(v) = self.vertex_id(names[0]) {
                return Ok(Path::trivial(v));
            }
        }
        self.path_from_names(&names)
    }

    /// Sort key realizing the canonical path order: length, then the
    /// arrow-name sequence, trivial paths by vertex name.
    pub fn path_sort_key<'a>(&'a self, p: &Path) -> (usize, Vec<&'a str>) {
        if p.is_trivial() {
            (0, vec![self.vertex_name(p.src)])
        } else {
            (p.len(), p.arrows.iter().map(|&a| self.arrow_name(a)).collect())
        }
    }

    pub fn canonical_cmp(&self, p: &Path, q: &Path) -> Ordering {
        self.path_sort_key(p).cmp(&self.path_sort_key(q))
    }

    pub fn sort_paths(&self, paths: &mut [Path]) {
        paths.sort_by_cached_key(|p| {
            let (len, names) = self.path_sort_key(p);
            (len, names.into_iter().map(str::to_owned).collect::<Vec<_>>())
        });
    }

    /// Human-readable name: arrow names joined by `·`, or `e_v` for a trivial path.
    pub fn path_display(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertex_name(p.src))
        } else {
            p.arrows.iter().map(|&a| self.arrow_name(a)).collect::<Vec<_>>().join("·")
        }
    }

    /// Arrow names concatenated without separator (`z2z3`), used to name the
    /// extension arrows `y_p`.
    pub fn path_word(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertex_name(p.src))
        } else {
            p.arrows.iter().map(|&a| self.arrow_name(a)).collect()
        }
    }

    /// All paths of length `0..=max_length` with optional endpoint filters, in
    /// canonical order.
    pub fn enumerate_paths(&self, max_length: usize, from: Option<VertexId>, to: Option<VertexId>) -> Vec<Path> {
        let mut out = Vec::new();
        let starts: Vec<VertexId> = match from {
            Some(v) => vec![v],
            None => self.vertices().collect(),
        };
        for s in starts {
            let mut stack = Vec::new();
            self.walk(s, max_length, &mut stack, &mut |p_tgt, arrows| {
                if to.is_none_or(|t| t == p_tgt) {
                    out.push(Path { src: s, tgt: p_tgt, arrows: arrows.to_vec() });
                }
            });
        }
        self.sort_paths(&mut out);
        out
    }

    fn walk<F: FnMut(VertexId, &[ArrowId])>(
        &self,
        at: VertexId,
        remaining: usize,
        stack: &mut Vec<ArrowId>,
        visit: &mut F,
    ) {
        visit(at, stack);
        if remaining == 0 {
            return;
        }
        for &a in &self.out_arrows[at.0] {
            stack.push(a);
            self.walk(self.target(a), remaining - 1, stack, visit);
            stack.pop();
        }
    }

    /// All origin-anchored cycles at `h` of length `1..=max_length`, in
    /// canonical order.
    pub fn enumerate_cycles_at(&self, h: VertexId, max_length: usize) -> Vec<Cycle> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.walk(h, max_length, &mut stack, &mut |t, arrows| {
            if t == h && !arrows.is_empty() {
                out.push(Path { src: h, tgt: h, arrows: arrows.to_vec() });
            }
        });
        self.sort_paths(&mut out);
        out.into_iter().map(|path| Cycle { path }).collect()
    }
}

/// Length of a shortest oriented cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= n,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinity"),
        }
    }
}

/// A path of a quiver: either the trivial path `e_v` (no arrows, `src == tgt`)
/// or a composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    src: VertexId,
    tgt: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        Path { src: q.source(a), tgt: q.target(a), arrows: vec![a] }
    }

    /// Builds a nonempty path, checking composability at every junction.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Self, QuiverError> {
        let (Some(&first), Some(&last)) = (arrows.first(), arrows.last()) else {
            return Err(QuiverError::NotComposable("empty arrow sequence".into()));
        };
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(QuiverError::NotComposable(format!(
                    "t({}) = {} but s({}) = {}",
                    q.arrow_name(w[0]),
                    q.vertex_name(q.target(w[0])),
                    q.arrow_name(w[1]),
                    q.vertex_name(q.source(w[1]))
                )));
            }
        }
        Ok(Path { src: q.source(first), tgt: q.target(last), arrows })
    }

    pub(crate) fn from_arrows_unchecked(q: &Quiver, arrows: Vec<ArrowId>) -> Self {
        debug_assert!(!arrows.is_empty());
        Path { src: q.source(arrows[0]), tgt: q.target(*arrows.last().unwrap()), arrows }
    }

    pub(crate) fn from_raw(src: VertexId, tgt: VertexId, arrows: Vec<ArrowId>) -> Self {
        Path { src, tgt, arrows }
    }

    pub fn source(&self) -> VertexId {
        self.src
    }

    pub fn target(&self) -> VertexId {
        self.tgt
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.src == self.tgt
    }

    /// Concatenation with `self` traversed first. Trivial paths are identities.
    pub fn compose(&self, q: &Quiver, other: &Path) -> Result<Path, QuiverError> {
        if self.tgt != other.src {
            return Err(QuiverError::NotComposable(format!(
                "t({}) = {} but s({}) = {}",
                q.path_display(self),
                q.vertex_name(self.tgt),
                q.path_display(other),
                q.vertex_name(other.src)
            )));
        }
        Ok(self.concat_unchecked(other))
    }

    /// Concatenation when `self.target() == other.source()` is known.
    pub fn concat_unchecked(&self, other: &Path) -> Path {
        debug_assert_eq!(self.tgt, other.src);
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Path { src: self.src, tgt: other.tgt, arrows }
    }

    /// The contiguous sub-path of arrows `range` (may be empty, giving the
    /// trivial path at the appropriate vertex).
    pub fn subpath(&self, q: &Quiver, start: usize, end: usize) -> Path {
        assert!(start <= end && end <= self.len());
        if start == end {
            let v = if start == 0 { self.src } else { q.target(self.arrows[start - 1]) };
            return Path::trivial(v);
        }
        Path::from_arrows_unchecked(q, self.arrows[start..end].to_vec())
    }

    /// Every junction satisfies `t(a_i) = s(a_{i+1})` and the stored endpoints agree.
    pub fn is_well_formed(&self, q: &Quiver) -> bool {
        match (self.arrows.first(), self.arrows.last()) {
            (None, _) => self.src == self.tgt,
            (Some(&f), Some(&l)) => {
                q.source(f) == self.src
                    && q.target(l) == self.tgt
                    && self.arrows.windows(2).all(|w| q.target(w[0]) == q.source(w[1]))
            }
            _ => unreachable!(),
        }
    }
}

/// An oriented cycle anchored at its origin: a nonempty closed path whose first
/// arrow starts at the origin. Rotations are distinct cycles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    path: Path,
}

impl Cycle {
    pub fn new(path: Path) -> Result<Self, CycleError> {
        if path.is_trivial() {
            return Err(CycleError::Empty);
        }
        if !path.is_closed() {
            return Err(CycleError::Open);
        }
        Ok(Cycle { path })
    }

    pub fn from_names<S: AsRef<str>>(q: &Quiver, names: &[S]) -> Result<Self, QuiverError> {
        let path = q.path_from_names(names)?;
        if !path.is_closed() {
            return Err(QuiverError::NotACycle {
                src: q.vertex_name(path.src).to_string(),
                tgt: q.vertex_name(path.tgt).to_string(),
            });
        }
        Ok(Cycle { path })
    }

    pub fn origin(&self) -> VertexId {
        self.path.src
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn into_path(self) -> Path {
        self.path
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.path.arrows
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The cycle `a_i ⋯ a_m a_1 ⋯ a_{i-1}` with origin `s(a_i)`, for
    /// `1 <= i <= len`.
    pub fn rotate(&self, q: &Quiver, i: usize) -> Cycle {
        assert!(i >= 1 && i <= self.len(), "rotation index {i} out of 1..={}", self.len());
        let mut arrows = self.path.arrows[i - 1..].to_vec();
        arrows.extend_from_slice(&self.path.arrows[..i - 1]);
        Cycle { path: Path::from_arrows_unchecked(q, arrows) }
    }

    /// All `len` rotations, starting with the cycle itself.
    pub fn rotations(&self, q: &Quiver) -> Vec<Cycle> {
        (1..=self.len()).map(|i| self.rotate(q, i)).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("a cycle needs at least one arrow")]
    Empty,
    #[error("path is not closed")]
    Open,
}
