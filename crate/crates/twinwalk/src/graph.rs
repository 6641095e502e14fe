//! Connected weighted undirected graphs with loops, their adjacency and
//! Laplacian Hamiltonians, and twin-vertex structure.
//!
//! Two distinct vertices u, v are *twins* when they have the same neighbours
//! outside {u, v}, corresponding edges carry the same weight, and their loop
//! weights agree (zero when absent). Twins are *true* when adjacent and
//! *false* otherwise. A twin set T(ω, η) collects pairwise twins that share a
//! loop weight ω and a pairwise edge weight η; the vector e_u − e_v is then an
//! eigenvector of both Hamiltonians with eigenvalue θ (ω − η for the
//! adjacency, deg(u) − ω + η for the Laplacian).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::Matrix;

pub type Rat = BigRational;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex index {0} out of range (n = {1})")]
    BadVertex(usize, usize),
    #[error("self edge ({0},{0}) must be given as a loop")]
    SelfEdge(usize),
    #[error("invalid weight `{0}`")]
    BadWeight(String),
    #[error("invalid family parameters: {0}")]
    BadFamily(String),
    #[error("malformed graph file: {0}")]
    BadFile(String),
}

/// Parse a weight written as an integer, a decimal, or a `p/q` fraction into
/// an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, GraphError> {
    let s = s.trim();
    let bad = || GraphError::BadWeight(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let num = int_part.magnitude().clone() * scale.magnitude().clone() + frac.magnitude();
        let mut value = Rat::new(BigInt::from(num), scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let num = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(Rat::from_integer(num))
}

/// Render a rational compactly (`3`, `-1/2`).
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of lossy conversions for huge terms.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Which Hamiltonian drives the walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::Adjacency => write!(f, "adjacency"),
            MatrixKind::Laplacian => write!(f, "laplacian"),
        }
    }
}

/// Weighted undirected graph with optional loops. Weights are exact
/// rationals; graphs whose numeric origin is untrusted carry `inexact`,
/// which downgrades all exact verdicts downstream.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rat>,
    loops: BTreeMap<usize, Rat>,
    inexact: bool,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: BTreeMap::new(),
            loops: BTreeMap::new(),
            inexact: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_inexact(&self) -> bool {
        self.inexact
    }

    pub fn mark_inexact(&mut self) {
        self.inexact = true;
    }

    fn check_vertex(&self, u: usize) -> Result<(), GraphError> {
        if u < self.n {
            Ok(())
        } else {
            Err(GraphError::BadVertex(u, self.n))
        }
    }

    /// Set the weight of edge (u,v); a zero weight removes the edge.
    pub fn set_edge(&mut self, u: usize, v: usize, w: Rat) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfEdge(u));
        }
        let key = (u.min(v), u.max(v));
        if w.is_zero() {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, w);
        }
        Ok(())
    }

    /// Set the loop weight on u; zero removes the loop.
    pub fn set_loop(&mut self, u: usize, w: Rat) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        if w.is_zero() {
            self.loops.remove(&u);
        } else {
            self.loops.insert(u, w);
        }
        Ok(())
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Rat {
        if u == v {
            return Rat::zero();
        }
        self.edges
            .get(&(u.min(v), u.max(v)))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn loop_weight(&self, u: usize) -> Rat {
        self.loops.get(&u).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn loops(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.loops.iter().map(|(&u, w)| (u, w))
    }

    pub fn neighbors(&self, u: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (&(a, b), _) in &self.edges {
            if a == u {
                out.insert(b);
            } else if b == u {
                out.insert(a);
            }
        }
        out
    }

    /// Weighted degree: deg(u) = 2·ω_{u,u} + Σ_j ω_{u,j}.
    pub fn degree(&self, u: usize) -> Rat {
        let mut d = self.loop_weight(u) * Rat::from_integer(BigInt::from(2));
        for (&(a, b), w) in &self.edges {
            if a == u || b == u {
                d += w.clone();
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Subgraph induced by `vertices` (which must be sorted and distinct).
    /// Vertex i of the result corresponds to `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> WeightedGraph {
        let index: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = WeightedGraph::new(vertices.len());
        g.inexact = self.inexact;
        for (&(a, b), w) in &self.edges {
            if let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) {
                g.edges.insert((ia.min(ib), ia.max(ib)), w.clone());
            }
        }
        for (&u, w) in &self.loops {
            if let Some(&iu) = index.get(&u) {
                g.loops.insert(iu, w.clone());
            }
        }
        g
    }

    /// Parse the text graph format: a `n <count>` header, then `e u v w`
    /// edge lines and `l u w` loop lines. Vertices are 0-indexed; weights
    /// may be integers, decimals, or `p/q` fractions. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_text(input: &str) -> Result<WeightedGraph, GraphError> {
        let mut graph: Option<WeightedGraph> = None;
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            let tag = tok.next().unwrap();
            let fail = |msg: &str| GraphError::BadFile(format!("line {}: {}", lineno + 1, msg));
            match tag {
                "n" => {
                    if graph.is_some() {
                        return Err(fail("duplicate header"));
                    }
                    let count: usize = tok
                        .next()
                        .ok_or_else(|| fail("missing vertex count"))?
                        .parse()
                        .map_err(|_| fail("bad vertex count"))?;
                    graph = Some(WeightedGraph::new(count));
                }
                "e" => {
                    let g = graph.as_mut().ok_or_else(|| fail("edge before header"))?;
                    let u: usize = tok
                        .next()
                        .ok_or_else(|| fail("missing endpoint"))?
                        .parse()
                        .map_err(|_| fail("bad endpoint"))?;
                    let v: usize = tok
                        .next()
                        .ok_or_else(|| fail("missing endpoint"))?
                        .parse()
                        .map_err(|_| fail("bad endpoint"))?;
                    let w = parse_rational(tok.next().ok_or_else(|| fail("missing weight"))?)
                        .map_err(|e| fail(&e.to_string()))?;
                    if w.is_zero() {
                        return Err(fail("zero edge weight"));
                    }
                    g.set_edge(u, v, w).map_err(|e| fail(&e.to_string()))?;
                }
                "l" => {
                    let g = graph.as_mut().ok_or_else(|| fail("loop before header"))?;
                    let u: usize = tok
                        .next()
                        .ok_or_else(|| fail("missing vertex"))?
                        .parse()
                        .map_err(|_| fail("bad vertex"))?;
                    let w = parse_rational(tok.next().ok_or_else(|| fail("missing weight"))?)
                        .map_err(|e| fail(&e.to_string()))?;
                    g.set_loop(u, w).map_err(|e| fail(&e.to_string()))?;
                }
                other => return Err(fail(&format!("unknown record `{other}`"))),
            }
        }
        graph.ok_or_else(|| GraphError::BadFile("missing `n <count>` header".into()))
    }

    /// Render in the same text format accepted by [`WeightedGraph::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (&(u, v), w) in &self.edges {
            out.push_str(&format!("e {} {} {}\n", u, v, format_rational(w)));
        }
        for (&u, w) in &self.loops {
            out.push_str(&format!("l {} {}\n", u, format_rational(w)));
        }
        out
    }
}

/// A Hamiltonian for the walk: the adjacency or Laplacian matrix, kept both
/// as exact rational entries and as an f64 matrix.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub kind: MatrixKind,
    n: usize,
    exact: Vec<Rat>,
    inexact_source: bool,
}

impl Hamiltonian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.exact[i * self.n + j]
    }

    /// True when the entries came from exact rational weights.
    pub fn is_exact(&self) -> bool {
        !self.inexact_source
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = rat_to_f64(self.entry(i, j));
            }
        }
        m
    }
}

/// Build the adjacency matrix A or the Laplacian L = D − A of `g`, with
/// deg(u) = 2ω_{u,u} + Σ_j ω_{u,j}.
pub fn build_hamiltonian(g: &WeightedGraph, kind: MatrixKind) -> Hamiltonian {
    let n = g.n();
    let mut exact = vec![Rat::zero(); n * n];
    for (u, v, w) in g.edges() {
        exact[u * n + v] = w.clone();
        exact[v * n + u] = w.clone();
    }
    for (u, w) in g.loops() {
        exact[u * n + u] = w.clone();
    }
    if kind == MatrixKind::Laplacian {
        for i in 0..n {
            for j in 0..n {
                exact[i * n + j] = -exact[i * n + j].clone();
            }
        }
        for u in 0..n {
            exact[u * n + u] += g.degree(u);
        }
    }
    Hamiltonian {
        kind,
        n,
        exact,
        inexact_source: g.is_inexact(),
    }
}

/// Whether a set of twins is pairwise adjacent (η ≠ 0) or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwinKind {
    True,
    False,
}

/// A maximal set of pairwise twins with common loop weight ω and common
/// pairwise edge weight η.
#[derive(Clone, Debug, PartialEq)]
pub struct TwinSet {
    pub vertices: Vec<usize>,
    pub omega: Rat,
    pub eta: Rat,
    pub kind: TwinKind,
}

impl TwinSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.vertices.binary_search(&u).is_ok()
    }
}

/// Twin test: same neighbourhood outside {u,v}, matching edge weights there,
/// and matching loop weights.
pub fn are_twins(g: &WeightedGraph, u: usize, v: usize) -> Result<bool, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(false);
    }
    if g.loop_weight(u) != g.loop_weight(v) {
        return Ok(false);
    }
    let mut nu: BTreeSet<usize> = g.neighbors(u);
    let mut nv: BTreeSet<usize> = g.neighbors(v);
    nu.remove(&u);
    nu.remove(&v);
    nv.remove(&u);
    nv.remove(&v);
    if nu != nv {
        return Ok(false);
    }
    for w in nu {
        if g.edge_weight(u, w) != g.edge_weight(v, w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal twin sets, built as unions of the pairwise twin relation.
/// Vertices without a twin are omitted. On each returned set the relation is
/// an equivalence with a single (ω, η); this is re-verified and any
/// inconsistency would be a bug in `are_twins`.
pub fn twin_sets(g: &WeightedGraph) -> Vec<TwinSet> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if are_twins(g, u, v).unwrap() {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for u in 0..n {
        classes.entry(find(&mut parent, u)).or_default().push(u);
    }
    let mut sets = Vec::new();
    for (_, vertices) in classes {
        if vertices.len() < 2 {
            continue;
        }
        let omega = g.loop_weight(vertices[0]);
        let eta = g.edge_weight(vertices[0], vertices[1]);
        for i in 0..vertices.len() {
            debug_assert_eq!(g.loop_weight(vertices[i]), omega);
            for j in (i + 1)..vertices.len() {
                debug_assert!(are_twins(g, vertices[i], vertices[j]).unwrap());
                debug_assert_eq!(g.edge_weight(vertices[i], vertices[j]), eta);
            }
        }
        let kind = if eta.is_zero() {
            TwinKind::False
        } else {
            TwinKind::True
        };
        sets.push(TwinSet {
            vertices,
            omega,
            eta,
            kind,
        });
    }
    sets
}

/// The twin eigenvalue θ of e_u − e_v: ω − η for the adjacency,
/// deg(u) − ω + η for the Laplacian.
pub fn theta_of(ts: &TwinSet, g: &WeightedGraph, kind: MatrixKind) -> Rat {
    let u = ts.vertices[0];
    match kind {
        MatrixKind::Adjacency => ts.omega.clone() - ts.eta.clone(),
        MatrixKind::Laplacian => g.degree(u) - ts.omega.clone() + ts.eta.clone(),
    }
}

/// Graph families used throughout: the named constructions plus a recursive
/// join. `Empty` exists as a join operand (O_n).
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Complete graph on m vertices, every edge weight η, every loop ω.
    Complete { m: usize, omega: Rat, eta: Rat },
    CompleteBipartite { m: usize, n: usize },
    CompleteMultipartite { parts: Vec<usize> },
    /// Complement of m disjoint edges; vertices 2i and 2i+1 are nonadjacent.
    CocktailParty { m: usize },
    /// K_m minus one edge; vertices 1 and 2 are the nonadjacent pair.
    CompleteMinusEdge { m: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// Star K_{1,n}: center 0, leaves 1..=n.
    Star { leaves: usize },
    Join(Box<Family>, Box<Family>),
    /// P3 (2-3-4) with pendant vertices 0 and 1 attached to vertex 2.
    Figure2,
    Empty { n: usize },
}

/// Join of two graphs: disjoint union plus all unit-weight cross edges.
/// Vertices of `x` come first.
pub fn join(x: &WeightedGraph, y: &WeightedGraph) -> WeightedGraph {
    let nx = x.n();
    let mut g = WeightedGraph::new(nx + y.n());
    if x.is_inexact() || y.is_inexact() {
        g.mark_inexact();
    }
    for (u, v, w) in x.edges() {
        g.set_edge(u, v, w.clone()).unwrap();
    }
    for (u, w) in x.loops() {
        g.set_loop(u, w.clone()).unwrap();
    }
    for (u, v, w) in y.edges() {
        g.set_edge(nx + u, nx + v, w.clone()).unwrap();
    }
    for (u, w) in y.loops() {
        g.set_loop(nx + u, w.clone()).unwrap();
    }
    for u in 0..nx {
        for v in 0..y.n() {
            g.set_edge(u, nx + v, Rat::one()).unwrap();
        }
    }
    g
}

fn unweighted_complete(m: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(m);
    for u in 0..m {
        for v in (u + 1)..m {
            g.set_edge(u, v, Rat::one()).unwrap();
        }
    }
    g
}

/// Build the named family with its canonical vertex labels.
pub fn generate_family(family: &Family) -> Result<WeightedGraph, GraphError> {
    match family {
        Family::Complete { m, omega, eta } => {
            if *m < 1 {
                return Err(GraphError::BadFamily("complete requires m >= 1".into()));
            }
            if eta.is_zero() && *m > 1 {
                return Err(GraphError::BadFamily("complete requires eta != 0".into()));
            }
            let mut g = WeightedGraph::new(*m);
            for u in 0..*m {
                for v in (u + 1)..*m {
                    g.set_edge(u, v, eta.clone())?;
                }
                g.set_loop(u, omega.clone())?;
            }
            Ok(g)
        }
        Family::CompleteBipartite { m, n } => {
            if *m < 1 || *n < 1 {
                return Err(GraphError::BadFamily(
                    "complete_bipartite requires m,n >= 1".into(),
                ));
            }
            let mut g = WeightedGraph::new(m + n);
            for u in 0..*m {
                for v in 0..*n {
                    g.set_edge(u, m + v, Rat::one())?;
                }
            }
            Ok(g)
        }
        Family::CompleteMultipartite { parts } => {
            if parts.is_empty() || parts.iter().any(|&p| p == 0) {
                return Err(GraphError::BadFamily(
                    "complete_multipartite requires nonempty positive parts".into(),
                ));
            }
            let n: usize = parts.iter().sum();
            let mut part_of = vec![0usize; n];
            let mut idx = 0;
            for (p, &size) in parts.iter().enumerate() {
                for _ in 0..size {
                    part_of[idx] = p;
                    idx += 1;
                }
            }
            let mut g = WeightedGraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if part_of[u] != part_of[v] {
                        g.set_edge(u, v, Rat::one())?;
                    }
                }
            }
            Ok(g)
        }
        Family::CocktailParty { m } => {
            if *m < 1 {
                return Err(GraphError::BadFamily("cocktail_party requires m >= 1".into()));
            }
            let n = 2 * m;
            let mut g = WeightedGraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if !(u / 2 == v / 2) {
                        g.set_edge(u, v, Rat::one())?;
                    }
                }
            }
            Ok(g)
        }
        Family::CompleteMinusEdge { m } => {
            if *m < 3 {
                return Err(GraphError::BadFamily(
                    "complete_minus_edge requires m >= 3".into(),
                ));
            }
            let mut g = unweighted_complete(*m);
            g.set_edge(1, 2, Rat::zero())?;
            Ok(g)
        }
        Family::Path { n } => {
            if *n < 1 {
                return Err(GraphError::BadFamily("path requires n >= 1".into()));
            }
            let mut g = WeightedGraph::new(*n);
            for u in 0..n.saturating_sub(1) {
                g.set_edge(u, u + 1, Rat::one())?;
            }
            Ok(g)
        }
        Family::Cycle { n } => {
            if *n < 3 {
                return Err(GraphError::BadFamily("cycle requires n >= 3".into()));
            }
            let mut g = WeightedGraph::new(*n);
            for u in 0..*n {
                g.set_edge(u, (u + 1) % n, Rat::one())?;
            }
            Ok(g)
        }
        Family::Star { leaves } => {
            if *leaves < 1 {
                return Err(GraphError::BadFamily("star requires n >= 1 leaves".into()));
            }
            let mut g = WeightedGraph::new(leaves + 1);
            for v in 1..=*leaves {
                g.set_edge(0, v, Rat::one())?;
            }
            Ok(g)
        }
        Family::Join(x, y) => Ok(join(&generate_family(x)?, &generate_family(y)?)),
        Family::Figure2 => {
            let mut g = WeightedGraph::new(5);
            g.set_edge(0, 2, Rat::one())?;
            g.set_edge(1, 2, Rat::one())?;
            g.set_edge(2, 3, Rat::one())?;
            g.set_edge(3, 4, Rat::one())?;
            Ok(g)
        }
        Family::Empty { n } => {
            if *n < 1 {
                return Err(GraphError::BadFamily("empty requires n >= 1".into()));
            }
            Ok(WeightedGraph::new(*n))
        }
    }
}

impl Family {
    /// Parse a compact family spec, e.g. `path(4)`, `complete(3;0;1)`,
    /// `complete_multipartite(2,2,2)`, `join(complete(2),path(3))`.
    /// `complete(m)` defaults to ω = 0, η = 1.
    pub fn parse(spec: &str) -> Result<Family, GraphError> {
        let spec = spec.trim();
        let bad = |msg: &str| GraphError::BadFamily(format!("`{spec}`: {msg}"));
        let (name, args) = match spec.find('(') {
            Some(open) => {
                if !spec.ends_with(')') {
                    return Err(bad("missing closing parenthesis"));
                }
                (spec[..open].trim(), &spec[open + 1..spec.len() - 1])
            }
            None => (spec, ""),
        };
        let split_top = |s: &str, sep: char| -> Vec<String> {
            let mut parts = Vec::new();
            let mut depth = 0usize;
            let mut cur = String::new();
            for c in s.chars() {
                match c {
                    '(' => {
                        depth += 1;
                        cur.push(c);
                    }
                    ')' => {
                        depth = depth.saturating_sub(1);
                        cur.push(c);
                    }
                    c if c == sep && depth == 0 => {
                        parts.push(std::mem::take(&mut cur));
                    }
                    c => cur.push(c),
                }
            }
            if !cur.trim().is_empty() {
                parts.push(cur);
            }
            parts
        };
        let usize_arg = |s: &str| -> Result<usize, GraphError> {
            s.trim().parse().map_err(|_| bad("expected an integer"))
        };
        match name {
            "complete" => {
                let parts = split_top(args, ';');
                if parts.is_empty() {
                    return Err(bad("complete(m[;omega;eta])"));
                }
                let m = usize_arg(&parts[0])?;
                let omega = if parts.len() > 1 {
                    parse_rational(&parts[1])?
                } else {
                    Rat::zero()
                };
                let eta = if parts.len() > 2 {
                    parse_rational(&parts[2])?
                } else {
                    Rat::one()
                };
                Ok(Family::Complete { m, omega, eta })
            }
            "complete_bipartite" => {
                let parts = split_top(args, ',');
                if parts.len() != 2 {
                    return Err(bad("complete_bipartite(m,n)"));
                }
                Ok(Family::CompleteBipartite {
                    m: usize_arg(&parts[0])?,
                    n: usize_arg(&parts[1])?,
                })
            }
            "complete_multipartite" => {
                let parts = split_top(args, ',');
                if parts.is_empty() {
                    return Err(bad("complete_multipartite(m1,m2,...)"));
                }
                let sizes = parts
                    .iter()
                    .map(|p| usize_arg(p))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Family::CompleteMultipartite { parts: sizes })
            }
            "cocktail_party" => Ok(Family::CocktailParty {
                m: usize_arg(args)?,
            }),
            "complete_minus_edge" => Ok(Family::CompleteMinusEdge {
                m: usize_arg(args)?,
            }),
            "path" => Ok(Family::Path { n: usize_arg(args)? }),
            "cycle" => Ok(Family::Cycle { n: usize_arg(args)? }),
            "star" => Ok(Family::Star {
                leaves: usize_arg(args)?,
            }),
            "join" => {
                let parts = split_top(args, ',');
                if parts.len() != 2 {
                    return Err(bad("join(left,right)"));
                }
                Ok(Family::Join(
                    Box::new(Family::parse(&parts[0])?),
                    Box::new(Family::parse(&parts[1])?),
                ))
            }
            "figure2" => Ok(Family::Figure2),
            "empty" => Ok(Family::Empty { n: usize_arg(args)? }),
            other => Err(bad(&format!("unknown family `{other}`"))),
        }
    }
}
