//! Labeled directed moment graphs.
//!
//! Vertices are Weyl group elements; each edge joins `w` and `s_α w`, carries
//! the positive root `α`, and points from the longer element to the shorter.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GkmError, Result};
use crate::poly::LinearForm;
use crate::weyl::{enumerate_group, reflections, Family, LieType, WeylElement};

/// A nondecreasing `h: {1..n} -> {1..n}` with `h(i) >= i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HessenbergFunction {
    values: Vec<usize>,
}

impl HessenbergFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(GkmError::Argument("empty Hessenberg function".into()));
        }
        for (k, &h) in values.iter().enumerate() {
            let i = k + 1;
            if h < i || h > n {
                return Err(GkmError::Argument(format!("h({i}) = {h} must satisfy {i} <= h({i}) <= {n}")));
            }
            if k > 0 && h < values[k - 1] {
                return Err(GkmError::Argument(format!("h is not nondecreasing at {i}")));
            }
        }
        Ok(HessenbergFunction { values })
    }

    /// Every Hessenberg function on `{1..n}`.
    pub fn all(n: usize) -> Vec<HessenbergFunction> {
        fn rec(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<HessenbergFunction>) {
            let i = prefix.len() + 1;
            if i > n {
                out.push(HessenbergFunction { values: prefix.clone() });
                return;
            }
            let lo = prefix.last().copied().unwrap_or(1).max(i);
            for h in lo..=n {
                prefix.push(h);
                rec(n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `h(i)` for 1-based `i`.
    pub fn h(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for HessenbergFunction {
    type Err = GkmError;

    /// Accepts `2,2,3` or the compact `223`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|x| x.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let values = values.ok_or_else(|| GkmError::Parse(format!("bad Hessenberg function '{s}'")))?;
        HessenbergFunction::new(values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    Flag,
    Hessenberg(HessenbergFunction),
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: LinearForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PalaisSmale {
    Holds,
    /// An edge `v -> u` with `outdegree(v) <= outdegree(u)`.
    Fails {
        edge: usize,
    },
}

#[derive(Debug, Clone)]
pub struct MomentGraph {
    lie_type: LieType,
    vertices: Vec<WeylElement>,
    edges: Vec<Edge>,
    kind: GraphKind,
    index: HashMap<WeylElement, usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    pairs: HashMap<(usize, usize), usize>,
    id: String,
}

impl PartialEq for MomentGraph {
    fn eq(&self, other: &Self) -> bool {
        self.lie_type == other.lie_type && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MomentGraph {}

impl MomentGraph {
    fn assemble(lie_type: LieType, vertices: Vec<WeylElement>, mut edges: Vec<Edge>, kind: GraphKind) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.lie_type() != lie_type {
                return Err(GkmError::TypeMismatch(format!("vertex {v} is not in {lie_type}")));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(GkmError::Argument(format!("duplicate vertex {v}")));
            }
        }
        edges.sort_by_key(|e| (e.source, e.target));
        let n = vertices.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        let mut pairs = HashMap::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            if e.source >= n || e.target >= n || e.source == e.target {
                return Err(GkmError::Argument(format!("bad edge endpoints {} -> {}", e.source, e.target)));
            }
            if e.label.is_zero() || e.label.num_vars() != lie_type.num_vars() {
                return Err(GkmError::Argument(format!("bad label on edge {k}")));
            }
            let key = (e.source.min(e.target), e.source.max(e.target));
            if pairs.insert(key, k).is_some() {
                return Err(GkmError::Argument(format!(
                    "duplicate edge between {} and {}",
                    vertices[e.source], vertices[e.target]
                )));
            }
            down[e.source].push(k);
            up[e.target].push(k);
        }
        let mut graph = MomentGraph { lie_type, vertices, edges, kind, index, down, up, pairs, id: String::new() };
        graph.id = graph.compute_id();
        Ok(graph)
    }

    fn compute_id(&self) -> String {
        match &self.kind {
            GraphKind::Flag => self.lie_type.to_string(),
            GraphKind::Hessenberg(h) => format!("{}/h={}", self.lie_type, h),
            GraphKind::Custom => format!("{}/custom-{:016x}", self.lie_type, fnv1a(self.to_json().as_bytes())),
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn is_flag(&self) -> bool {
        self.kind == GraphKind::Flag
    }

    /// Identifier recorded in serialized classes.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn vertices(&self) -> &[WeylElement] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vars(&self) -> usize {
        self.lie_type.num_vars()
    }

    pub fn vertex_index(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn require_vertex(&self, w: &WeylElement) -> Result<usize> {
        self.vertex_index(w).ok_or_else(|| GkmError::Argument(format!("{w} is not a vertex of {}", self.id())))
    }

    /// Edge indices leaving `v`.
    pub fn down_edges(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    /// Edge indices arriving at `v`.
    pub fn up_edges(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.down[v].len()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.get(&(a.min(b), a.max(b))).copied()
    }

    /// The same graph with every arrow reversed.
    pub fn reversed(&self) -> MomentGraph {
        let edges =
            self.edges.iter().map(|e| Edge { source: e.target, target: e.source, label: e.label.clone() }).collect();
        MomentGraph::assemble(self.lie_type, self.vertices.clone(), edges, GraphKind::Custom)
            .expect("reversing a valid graph")
    }

    pub fn palais_smale_check(&self) -> PalaisSmale {
        for (k, e) in self.edges.iter().enumerate() {
            if self.outdegree(e.source) <= self.outdegree(e.target) {
                return PalaisSmale::Fails { edge: k };
            }
        }
        PalaisSmale::Holds
    }

    /// Entry `k` counts vertices with `k` down-edges.
    pub fn poincare_counts(&self) -> Vec<usize> {
        let max = (0..self.num_vertices()).map(|v| self.outdegree(v)).max().unwrap_or(0);
        let mut counts = vec![0; max + 1];
        for v in 0..self.num_vertices() {
            counts[self.outdegree(v)] += 1;
        }
        counts
    }

    pub fn reachable_down(&self, from: &WeylElement, to: &WeylElement) -> Result<bool> {
        let a = self.require_vertex(from)?;
        let b = self.require_vertex(to)?;
        Ok(self.reaches(a, b))
    }

    pub(crate) fn reaches(&self, from: usize, to: usize) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            for &k in &self.down[x] {
                let y = self.edges[k].target;
                if y == to {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Vertices with a directed chain down to `v`, including `v`.
    pub fn up_set(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(x) = queue.pop_front() {
            for &k in &self.up[x] {
                let y = self.edges[k].source;
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Bottom-up topological order: every vertex follows all of its
    /// down-neighbours. Ties go to the smallest vertex index.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.num_vertices();
        let mut pending: Vec<usize> = (0..n).map(|v| self.outdegree(v)).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &k in &self.up[v] {
                let s = self.edges[k].source;
                pending[s] -= 1;
                if pending[s] == 0 {
                    ready.insert(s);
                }
            }
        }
        if order.len() != n {
            return Err(GkmError::Argument(format!("graph {} has a directed cycle", self.id())));
        }
        Ok(order)
    }

    /// Vertices without incoming edges.
    pub fn maximal_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.up[v].is_empty()).collect()
    }

    /// Whether left multiplication by `w` maps vertices to vertices and edges
    /// to edges; reports a witness edge otherwise.
    pub fn check_left_invariant(&self, w: &WeylElement) -> Result<()> {
        if self.is_flag() {
            return Ok(());
        }
        let image = |v: usize| -> Result<usize> {
            let x = w.compose(&self.vertices[v])?;
            self.vertex_index(&x).ok_or_else(|| GkmError::ActionUndefined {
                by: w.to_string(),
                from: self.vertices[v].to_string(),
                to: x.to_string(),
            })
        };
        for e in &self.edges {
            let (a, b) = (image(e.source)?, image(e.target)?);
            if self.edge_between(a, b).is_none() {
                return Err(GkmError::ActionUndefined {
                    by: w.to_string(),
                    from: self.vertices[e.source].to_string(),
                    to: self.vertices[e.target].to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n", self.id());
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[e.source], self.vertices[e.target], e.label
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            lie_type: self.lie_type.to_string(),
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: self.vertices[e.source].to_string(),
                    to: self.vertices[e.target].to_string(),
                    label: e.label.coeffs().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }

    /// Loads a graph from the JSON schema used by [`MomentGraph::to_json`].
    /// Flag and Hessenberg graphs are recognized and keep their kind.
    pub fn from_json(text: &str) -> Result<MomentGraph> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| GkmError::Parse(format!("graph JSON: {e}")))?;
        let lie_type: LieType = doc.lie_type.parse()?;
        let vertices = doc.vertices.iter().map(|s| WeylElement::parse(lie_type, s)).collect::<Result<Vec<_>>>()?;
        let roots: BTreeSet<LinearForm> = lie_type.positive_roots().into_iter().collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            index.insert(v.clone(), i);
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            let lookup = |s: &str| -> Result<usize> {
                let w = WeylElement::parse(lie_type, s)?;
                index.get(&w).copied().ok_or_else(|| GkmError::Argument(format!("edge endpoint {s} is not a vertex")))
            };
            let (source, target) = (lookup(&e.from)?, lookup(&e.to)?);
            let label = LinearForm::new(e.label.iter().copied());
            if !roots.contains(&label) {
                return Err(GkmError::Argument(format!("edge label {label} is not a positive root")));
            }
            if vertices[source].length() <= vertices[target].length() {
                return Err(GkmError::Argument(format!(
                    "edge {} -> {} does not point from longer to shorter",
                    e.from, e.to
                )));
            }
            edges.push(Edge { source, target, label });
        }
        let mut graph = MomentGraph::assemble(lie_type, vertices, edges, GraphKind::Custom)?;
        graph.kind = graph.classify();
        graph.id = graph.compute_id();
        Ok(graph)
    }

    fn classify(&self) -> GraphKind {
        if self.num_vertices() as u128 != self.lie_type.group_order() {
            return GraphKind::Custom;
        }
        if let Ok(flag) = build_flag_graph(self.lie_type) {
            if flag == *self {
                return GraphKind::Flag;
            }
        }
        if self.lie_type.family() == Family::A {
            for h in HessenbergFunction::all(self.lie_type.letters()) {
                if let Ok(g) = build_hessenberg_graph(&h) {
                    if g == *self {
                        return GraphKind::Hessenberg(h);
                    }
                }
            }
        }
        GraphKind::Custom
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    lie_type: String,
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    from: String,
    to: String,
    label: Vec<i64>,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Edges `s_α w -> w` for every reflection and vertex, oriented by length.
fn flag_edges(lie_type: LieType, vertices: &[WeylElement], index: &HashMap<WeylElement, usize>) -> Vec<(Edge, usize)> {
    let lengths: Vec<usize> = vertices.iter().map(|v| v.length()).collect();
    let refl = reflections(lie_type);
    let mut edges = Vec::with_capacity(vertices.len() * refl.len() / 2);
    for (w, v) in vertices.iter().enumerate() {
        for (r_idx, r) in refl.iter().enumerate() {
            let x = index[&r.element.compose_unchecked(v)];
            if lengths[x] > lengths[w] {
                edges.push((Edge { source: x, target: w, label: r.positive_root.clone() }, r_idx));
            }
        }
    }
    edges
}

pub fn build_flag_graph(lie_type: LieType) -> Result<MomentGraph> {
    let vertices = enumerate_group(lie_type)?;
    let index: HashMap<WeylElement, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let edges = flag_edges(lie_type, &vertices, &index).into_iter().map(|(e, _)| e).collect();
    MomentGraph::assemble(lie_type, vertices, edges, GraphKind::Flag)
}

/// Type-A Hessenberg graph. The pair `{w, (ij)w}` with `i < j` is an edge iff
/// `w⁻¹(i) <= h(w⁻¹(j))` for the longer element `w` of the pair.
pub fn build_hessenberg_graph(h: &HessenbergFunction) -> Result<MomentGraph> {
    let n = h.n();
    if n < 2 {
        return Err(GkmError::Unsupported("Hessenberg graphs need n >= 2".into()));
    }
    let lie_type = LieType::new(Family::A, n - 1)?;
    let vertices = enumerate_group(lie_type)?;
    let index: HashMap<WeylElement, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let refl = reflections(lie_type);
    let edges = flag_edges(lie_type, &vertices, &index)
        .into_iter()
        .filter(|(e, r_idx)| {
            let root = refl[*r_idx].positive_root.coeffs();
            let i = root.iter().position(|&c| c == 1).unwrap() + 1;
            let j = root.iter().position(|&c| c == -1).unwrap() + 1;
            let w_inv = vertices[e.source].inverse();
            w_inv.apply(i) as usize <= h.h(w_inv.apply(j) as usize)
        })
        .map(|(e, _)| e)
        .collect();
    MomentGraph::assemble(lie_type, vertices, edges, GraphKind::Hessenberg(h.clone()))
}

/// Builds a graph directly from parts, checking structural invariants.
pub fn custom_graph(lie_type: LieType, vertices: Vec<WeylElement>, edges: Vec<Edge>) -> Result<MomentGraph> {
    MomentGraph::assemble(lie_type, vertices, edges, GraphKind::Custom)
}
