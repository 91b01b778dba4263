use std::collections::{HashMap, VecDeque};
use std::fmt::{Display, Write};

use serde::Serialize;

use super::tree::TreeVertex;
use crate::amalgam::{CosetOracle, Factor, GroupWord, Syllable};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::psystem::PSystem;

/// Largest radius [`ball`] will explore.
pub const RADIUS_GUARD: usize = 4;

type Label<E> = (Factor, Vec<(Factor, E)>);

#[derive(Clone, Debug, Serialize)]
pub struct BallVertex<E: GroupElement> {
    pub side: Factor,
    /// normal-form letters of the coset representative
    pub label: Vec<(Factor, E)>,
    pub depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallEdge<E: GroupElement> {
    pub from: usize,
    pub to: usize,
    /// normal-form letters of `x` for the edge `x·G_{stage-1}`
    pub label: Vec<(Factor, E)>,
}

/// A breadth-first ball in the tree of a finite system, built from
/// transversal normal forms only.
#[derive(Clone, Debug, Serialize)]
pub struct Ball<E: GroupElement> {
    pub stage: usize,
    pub radius: usize,
    pub vertices: Vec<BallVertex<E>>,
    pub edges: Vec<BallEdge<E>>,
}

impl<E: GroupElement> Ball<E> {
    pub fn vertex_word(&self, k: usize) -> TreeVertex<E> {
        let v = &self.vertices[k];
        let rep = GroupWord::new(
            self.stage,
            v.label.iter().map(|(f, g)| Syllable::Elem(*f, g.clone())).collect(),
        );
        TreeVertex::new(v.side, rep)
    }

    /// Number of leaves at the outer boundary.
    pub fn boundary(&self) -> usize {
        self.vertices.iter().filter(|v| v.depth == self.radius).count()
    }
}

fn short<E: Display>(letters: &[(Factor, E)]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters.iter().map(|(f, g)| format!("{f}{g}")).collect::<Vec<_>>().join(" ")
}

impl<E: GroupElement + Display> Ball<E> {
    /// Graphviz rendering; vertex labels give side and coset representative,
    /// edge labels the stabilizer `x G x⁻¹`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph ball {{").unwrap();
        writeln!(out, "  node [shape=circle, fontsize=9];").unwrap();
        for (k, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{k} [label=\"{}:{}\"];", v.side, short(&v.label)).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  v{} -- v{} [label=\"x G{} x^-1, x={}\"];",
                e.from,
                e.to,
                self.stage - 1,
                short(&e.label)
            )
            .unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// The ball of the given combinatorial radius around `center`.
pub fn ball<S: PSystem>(sys: &S, center: &TreeVertex<S::Elem>, radius: usize) -> Result<Ball<S::Elem>> {
    if radius > RADIUS_GUARD {
        return Err(Error::GuardExceeded(RADIUS_GUARD));
    }
    let oracle = CosetOracle::new(sys, center.stage)?;
    let mut index: HashMap<Label<S::Elem>, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut reps: Vec<GroupWord<S::Elem>> = Vec::new();
    let mut queue = VecDeque::new();

    let start_label = oracle.vertex_label(&center.rep, center.side)?;
    index.insert((center.side, start_label.clone()), 0);
    vertices.push(BallVertex { side: center.side, label: start_label.clone(), depth: 0 });
    reps.push(oracle.word_of(&start_label));
    queue.push_back(0usize);

    while let Some(k) = queue.pop_front() {
        let (side, depth) = (vertices[k].side, vertices[k].depth);
        if depth == radius {
            continue;
        }
        let mut known = 0;
        for t in oracle.transversal() {
            let x = reps[k].concat(&GroupWord::new(center.stage, vec![Syllable::Elem(side, t.clone())]))?;
            let other = side.other();
            let label = (other, oracle.vertex_label(&x, other)?);
            if index.contains_key(&label) {
                known += 1;
                continue;
            }
            let j = vertices.len();
            index.insert(label.clone(), j);
            vertices.push(BallVertex { side: other, label: label.1.clone(), depth: depth + 1 });
            reps.push(oracle.word_of(&label.1));
            edges.push(BallEdge { from: k, to: j, label: oracle.edge_label(&x)? });
            queue.push_back(j);
        }
        // only the parent may already be known; anything else closes a cycle
        if known != usize::from(k != 0) {
            return Err(Error::Construction(format!("coset graph is not a tree at vertex {k}")));
        }
    }
    Ok(Ball { stage: center.stage, radius, vertices, edges })
}

/// Breadth-first distances between ball vertices, for use as an oracle.
pub fn ball_distances<E: GroupElement>(b: &Ball<E>, from: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); b.vertices.len()];
    for e in &b.edges {
        adj[e.from].push(e.to);
        adj[e.to].push(e.from);
    }
    let mut dist = vec![usize::MAX; b.vertices.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(k) = queue.pop_front() {
        for &j in &adj[k] {
            if dist[j] == usize::MAX {
                dist[j] = dist[k] + 1;
                queue.push_back(j);
            }
        }
    }
    dist
}
