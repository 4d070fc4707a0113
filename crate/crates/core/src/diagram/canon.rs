//! Canonical forms of open graphs.
//!
//! The graph is encoded as a vertex-coloured simple graph (nodes, ports and
//! boundary positions are vertices) and canonically labelled by colour
//! refinement followed by individualisation with backtracking. Boundary
//! vertices carry unique colours, so components touching the boundary are
//! usually discrete after the first refinement; closed components are
//! labelled one at a time and compared as a sorted multiset.

use std::collections::BTreeSet;

use super::graph::{Endpoint, Node, OpenGraph};
use super::signature::Factor;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Colour {
    BoundaryIn(usize, Factor),
    BoundaryOut(usize, Factor),
    Box {
        label: String,
        dagger: bool,
        inputs: Vec<Factor>,
        outputs: Vec<Factor>,
    },
    Spider {
        atom: String,
        genus: u32,
    },
    PortIn(usize),
    PortOut(usize),
    Leg,
}

/// Canonical code of one group of components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Code {
    colours: Vec<Colour>,
    edges: Vec<(usize, usize)>,
}

/// An isomorphism invariant that is complete: two open graphs have equal
/// canonical forms iff they are isomorphic (preserving labels, port order and
/// boundary order), with loops compared as multisets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    inputs: Vec<Factor>,
    outputs: Vec<Factor>,
    anchored: Code,
    closed: Vec<Code>,
    loops: Vec<String>,
}

struct Encoded {
    colours: Vec<Colour>,
    adj: Vec<Vec<usize>>,
}

fn encode(g: &OpenGraph) -> Encoded {
    let mut colours = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let add = |c: Colour, colours: &mut Vec<Colour>, adj: &mut Vec<Vec<usize>>| {
        colours.push(c);
        adj.push(Vec::new());
        colours.len() - 1
    };
    let mut endpoint_vertex = std::collections::HashMap::new();
    for (i, f) in g.inputs.factors().iter().enumerate() {
        let v = add(Colour::BoundaryIn(i, f.clone()), &mut colours, &mut adj);
        endpoint_vertex.insert(Endpoint::In(i), v);
    }
    for (i, f) in g.outputs.factors().iter().enumerate() {
        let v = add(Colour::BoundaryOut(i, f.clone()), &mut colours, &mut adj);
        endpoint_vertex.insert(Endpoint::Out(i), v);
    }
    for (n, node) in g.nodes.iter().enumerate() {
        match node {
            Node::Box {
                label,
                dagger,
                inputs,
                outputs,
            } => {
                let nv = add(
                    Colour::Box {
                        label: label.clone(),
                        dagger: *dagger,
                        inputs: inputs.clone(),
                        outputs: outputs.clone(),
                    },
                    &mut colours,
                    &mut adj,
                );
                for p in 0..inputs.len() {
                    let pv = add(Colour::PortIn(p), &mut colours, &mut adj);
                    adj[nv].push(pv);
                    adj[pv].push(nv);
                    endpoint_vertex.insert(Endpoint::NodeIn(n, p), pv);
                }
                for p in 0..outputs.len() {
                    let pv = add(Colour::PortOut(p), &mut colours, &mut adj);
                    adj[nv].push(pv);
                    adj[pv].push(nv);
                    endpoint_vertex.insert(Endpoint::NodeOut(n, p), pv);
                }
            }
            Node::Spider { atom, legs, genus } => {
                let nv = add(
                    Colour::Spider {
                        atom: atom.clone(),
                        genus: *genus,
                    },
                    &mut colours,
                    &mut adj,
                );
                for p in 0..*legs {
                    let pv = add(Colour::Leg, &mut colours, &mut adj);
                    adj[nv].push(pv);
                    adj[pv].push(nv);
                    endpoint_vertex.insert(Endpoint::Leg(n, p), pv);
                }
            }
        }
    }
    for (a, b) in &g.wires {
        let (va, vb) = (endpoint_vertex[a], endpoint_vertex[b]);
        adj[va].push(vb);
        adj[vb].push(va);
    }
    Encoded { colours, adj }
}

/// Refines `cells` (cell index per vertex) to the coarsest equitable partition.
/// Cell indices are ranks of sorted signatures, hence isomorphism-invariant.
fn refine(adj: &[Vec<usize>], cells: &mut Vec<usize>) {
    let n = cells.len();
    let mut count = cells.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = adj[v].iter().map(|&u| cells[u]).collect();
                ns.sort_unstable();
                (cells[v], ns)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let new: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        *cells = new;
        if distinct.len() == count {
            return;
        }
        count = distinct.len();
    }
}

fn leaf_code(colours: &[Colour], adj: &[Vec<usize>], vertices: &[usize], cells: &[usize]) -> Code {
    // cells are a permutation of 0..k over `vertices`
    let mut order: Vec<(usize, usize)> = vertices.iter().map(|&v| (cells[v], v)).collect();
    order.sort_unstable();
    let mut pos = std::collections::HashMap::with_capacity(vertices.len());
    for (i, &(_, v)) in order.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut edges = Vec::new();
    for &v in vertices {
        for &u in &adj[v] {
            let (a, b) = (pos[&v], pos[&u]);
            if a <= b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    Code {
        colours: order.iter().map(|&(_, v)| colours[v].clone()).collect(),
        edges,
    }
}

/// Canonical code of the subgraph induced by `vertices` (a union of components).
fn canonical_code(enc: &Encoded, vertices: &[usize]) -> Code {
    // local re-indexing so refinement only touches this group
    let mut local = std::collections::HashMap::with_capacity(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        local.insert(v, i);
    }
    let colours: Vec<Colour> = vertices.iter().map(|&v| enc.colours[v].clone()).collect();
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| enc.adj[v].iter().map(|u| local[u]).collect())
        .collect();
    let mut palette: Vec<&Colour> = colours.iter().collect();
    palette.sort();
    palette.dedup();
    let mut cells: Vec<usize> = colours
        .iter()
        .map(|c| palette.binary_search(&c).expect("present"))
        .collect();
    refine(&adj, &mut cells);
    let all: Vec<usize> = (0..vertices.len()).collect();
    let mut best: Option<Code> = None;
    search(&colours, &adj, &all, cells, &mut best);
    best.expect("at least one leaf")
}

fn search(
    colours: &[Colour],
    adj: &[Vec<usize>],
    all: &[usize],
    cells: Vec<usize>,
    best: &mut Option<Code>,
) {
    let n = cells.len();
    let mut sizes = vec![0usize; n];
    for &c in &cells {
        sizes[c] += 1;
    }
    // first smallest non-singleton cell
    let target = (0..n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c));
    let Some(target) = target else {
        let code = leaf_code(colours, adj, all, &cells);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    let members: Vec<usize> = (0..n).filter(|&v| cells[v] == target).collect();
    for &v in &members {
        // individualise v: it keeps rank 2*cell, everything else moves to 2*cell+1
        let mut next: Vec<usize> = cells
            .iter()
            .enumerate()
            .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
            .collect();
        compress(&mut next);
        refine(adj, &mut next);
        search(colours, adj, all, next, best);
    }
}

fn compress(cells: &mut [usize]) {
    let mut ranks: Vec<usize> = cells.to_vec();
    ranks.sort_unstable();
    ranks.dedup();
    for c in cells.iter_mut() {
        *c = ranks.binary_search(c).expect("present");
    }
}

fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &u in &adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn canonical_form(g: &OpenGraph) -> CanonicalForm {
    let enc = encode(g);
    let boundary_count = g.inputs.len() + g.outputs.len();
    let mut anchored = Vec::new();
    let mut closed = Vec::new();
    for comp in components(&enc.adj) {
        // boundary vertices are numbered first
        if comp.iter().any(|&v| v < boundary_count) {
            anchored.extend(comp);
        } else {
            closed.push(canonical_code(&enc, &comp));
        }
    }
    anchored.sort_unstable();
    closed.sort();
    let mut loops = g.loops.clone();
    loops.sort();
    CanonicalForm {
        inputs: g.inputs.0.clone(),
        outputs: g.outputs.0.clone(),
        anchored: canonical_code(&enc, &anchored),
        closed,
        loops,
    }
}

/// Equality of diagrams in the free dagger compact category: isomorphism of
/// their open graphs.
pub fn graph_eq(a: &OpenGraph, b: &OpenGraph) -> bool {
    a.inputs == b.inputs
        && a.outputs == b.outputs
        && a.nodes.len() == b.nodes.len()
        && a.wires.len() == b.wires.len()
        && canonical_form(a) == canonical_form(b)
}
