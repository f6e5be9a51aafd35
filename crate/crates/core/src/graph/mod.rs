//! Metric graphs with Neumann or Dirichlet vertices, directed bonds, and the
//! structural operations used by the interlacing checks.

mod cycles;

pub use cycles::CycleBasis;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Vertex condition. Neumann here means continuity plus zero total outgoing derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexCondition {
    Neumann,
    Dirichlet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub condition: VertexCondition,
    pub degree: usize,
}

/// An undirected edge stored with `endpoints.0 <= endpoints.1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge<T> {
    pub id: usize,
    pub endpoints: (usize, usize),
    pub length: T,
}

/// A directed copy of an edge. Bond `e` runs along edge `e` from its lower
/// endpoint; bond `E + e` is its reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bond {
    pub id: usize,
    pub edge: usize,
    pub reversal: usize,
    pub origin: usize,
    pub terminus: usize,
}

/// Compact metric graph. Dirichlet vertices always have degree one: a
/// Dirichlet vertex of higher degree is split into leaves when the graph is built.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph<T> {
    vertices: Vec<Vertex>,
    edges: Vec<Edge<T>>,
    bonds: Vec<Bond>,
    outgoing: Vec<Vec<usize>>,
    total_length: T,
}

impl<T: Real> MetricGraph<T> {
    /// Builds a graph from per-vertex conditions and `(u, v, length)` edge triples.
    pub fn new(conditions: &[VertexCondition], edges: &[(usize, usize, T)]) -> Result<Self> {
        if conditions.is_empty() || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let nv = conditions.len();
        let mut oriented = Vec::with_capacity(edges.len());
        for (id, &(u, v, length)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= nv {
                    return Err(Error::DanglingEndpoint { edge: id, vertex: w });
                }
            }
            if !(length.is_finite() && length > T::zero()) {
                return Err(Error::NonPositiveLength { edge: id, length: length.as_f64() });
            }
            oriented.push((u.min(v), u.max(v), length));
        }
        let mut degree = vec![0usize; nv];
        for &(u, v, _) in &oriented {
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedVertex(v));
        }

        // Split Dirichlet vertices of degree >= 2 into leaves. The first edge
        // end (in edge order, lower end first) keeps the original id.
        let mut conds = conditions.to_vec();
        let mut seen = vec![false; nv];
        for e in oriented.iter_mut() {
            for end in 0..2 {
                let w = if end == 0 { e.0 } else { e.1 };
                if conds[w] != VertexCondition::Dirichlet {
                    continue;
                }
                if !seen[w] {
                    seen[w] = true;
                    continue;
                }
                let fresh = conds.len();
                conds.push(VertexCondition::Dirichlet);
                if end == 0 {
                    e.0 = fresh;
                } else {
                    e.1 = fresh;
                }
            }
            // A fresh leaf id may exceed the other end; keep edges low-to-high
            // so that rebuilding from the output is the identity.
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        Ok(Self::assemble(&conds, &oriented))
    }

    fn assemble(conds: &[VertexCondition], edges: &[(usize, usize, T)]) -> Self {
        let ne = edges.len();
        let mut vertices: Vec<Vertex> =
            conds.iter().enumerate().map(|(id, &condition)| Vertex { id, condition, degree: 0 }).collect();
        let mut bonds = Vec::with_capacity(2 * ne);
        let mut edge_list = Vec::with_capacity(ne);
        for (id, &(u, v, length)) in edges.iter().enumerate() {
            edge_list.push(Edge { id, endpoints: (u, v), length });
            bonds.push(Bond { id, edge: id, reversal: id + ne, origin: u, terminus: v });
        }
        for (id, &(u, v, _)) in edges.iter().enumerate() {
            bonds.push(Bond { id: id + ne, edge: id, reversal: id, origin: v, terminus: u });
        }
        let mut outgoing = vec![Vec::new(); conds.len()];
        for b in &bonds {
            outgoing[b.origin].push(b.id);
            vertices[b.origin].degree += 1;
        }
        // Outgoing lists ordered by edge id, forward bond first.
        for list in &mut outgoing {
            list.sort_by_key(|&b| (b % ne, b));
        }
        let total_length = edge_list.iter().map(|e| e.length).sum();
        Self { vertices, edges: edge_list, bonds, outgoing, total_length }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }
    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }
    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }
    /// Sum of edge lengths (each edge once).
    pub fn total_length(&self) -> T {
        self.total_length
    }
    pub fn condition(&self, v: usize) -> VertexCondition {
        self.vertices[v].condition
    }
    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].degree
    }
    pub fn bond_length(&self, b: usize) -> T {
        self.edges[self.bonds[b].edge].length
    }
    /// Bonds starting at `v`.
    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }
    pub fn dirichlet_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.condition == VertexCondition::Dirichlet).count()
    }
    pub fn conditions(&self) -> Vec<VertexCondition> {
        self.vertices.iter().map(|v| v.condition).collect()
    }
    pub fn edge_triples(&self) -> Vec<(usize, usize, T)> {
        self.edges.iter().map(|e| (e.endpoints.0, e.endpoints.1, e.length)).collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            label[start] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for &b in &self.outgoing[u] {
                    let w = self.bonds[b].terminus;
                    if label[w] == usize::MAX {
                        label[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// Number of components that contain no Dirichlet vertex; this is the
    /// multiplicity of the eigenvalue zero.
    pub fn neumann_component_count(&self) -> usize {
        self.components()
            .iter()
            .filter(|c| c.iter().all(|&v| self.condition(v) == VertexCondition::Neumann))
            .count()
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + self.components().len() - self.vertex_count()
    }

    pub fn fundamental_cycles(&self) -> CycleBasis {
        CycleBasis::new(self)
    }

    /// Removes Neumann vertices of degree two by fusing their two edges.
    /// A vertex whose two ends belong to one loop is kept.
    pub fn suppress_degree2_neumann(&self) -> Self {
        let mut conds = self.conditions();
        let mut edges: Vec<Option<(usize, usize, T)>> = self.edge_triples().into_iter().map(Some).collect();
        let mut alive = vec![true; conds.len()];
        loop {
            let mut changed = false;
            for v in 0..conds.len() {
                if !alive[v] || conds[v] != VertexCondition::Neumann {
                    continue;
                }
                let incident: Vec<usize> = edges
                    .iter()
                    .enumerate()
                    .filter_map(|(i, e)| e.filter(|e| e.0 == v || e.1 == v).map(|_| i))
                    .collect();
                let ends: usize = incident
                    .iter()
                    .map(|&i| {
                        let e = edges[i].unwrap();
                        usize::from(e.0 == v) + usize::from(e.1 == v)
                    })
                    .sum();
                if ends != 2 || incident.len() != 2 {
                    continue;
                }
                let (i, j) = (incident[0], incident[1]);
                let (a, b) = (edges[i].unwrap(), edges[j].unwrap());
                let other = |e: (usize, usize, T)| if e.0 == v { e.1 } else { e.0 };
                let (x, y) = (other(a), other(b));
                edges[i] = Some((x.min(y), x.max(y), a.2 + b.2));
                edges[j] = None;
                alive[v] = false;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let mut new_id = vec![usize::MAX; conds.len()];
        let mut kept = Vec::new();
        for (v, c) in conds.drain(..).enumerate() {
            if alive[v] {
                new_id[v] = kept.len();
                kept.push(c);
            }
        }
        let fused: Vec<(usize, usize, T)> = edges.into_iter().flatten().map(|(u, v, l)| (new_id[u], new_id[v], l)).collect();
        Self::new(&kept, &fused).expect("suppression preserves validity")
    }

    /// Returns a copy with the condition at `v` replaced. Imposing Dirichlet
    /// on a vertex of degree `d` splits it into `d` leaves.
    pub fn modify_condition(&self, v: usize, condition: VertexCondition) -> Result<Self> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        let mut conds = self.conditions();
        conds[v] = condition;
        Self::new(&conds, &self.edge_triples())
    }

    /// Identifies Neumann vertices `v1` and `v2`. The merged vertex takes the
    /// smaller id; ids above the removed one shift down by one. Edge ids are kept.
    pub fn merge_vertices(&self, v1: usize, v2: usize) -> Result<Self> {
        for v in [v1, v2] {
            if v >= self.vertex_count() {
                return Err(Error::UnknownVertex(v));
            }
            if self.condition(v) != VertexCondition::Neumann {
                return Err(Error::NotNeumann(v));
            }
        }
        if v1 == v2 {
            return Err(Error::SameVertex(v1));
        }
        let (keep, drop) = (v1.min(v2), v1.max(v2));
        let map = |w: usize| {
            let w = if w == drop { keep } else { w };
            if w > drop {
                w - 1
            } else {
                w
            }
        };
        let mut conds = self.conditions();
        conds.remove(drop);
        let edges: Vec<_> = self.edge_triples().into_iter().map(|(u, v, l)| (map(u), map(v), l)).collect();
        Self::new(&conds, &edges)
    }

    /// Disjoint union; vertex and edge ids of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut conds = self.conditions();
        let shift = conds.len();
        conds.extend(other.conditions());
        let mut edges = self.edge_triples();
        edges.extend(other.edge_triples().into_iter().map(|(u, v, l)| (u + shift, v + shift, l)));
        Self::new(&conds, &edges).expect("union of valid graphs is valid")
    }
}
