//! Port-graph normal form of diagram terms.
//!
//! Boxes keep ordered input and output ports; spiders have unordered,
//! undirected legs. Identities, swaps, cups and caps produce no nodes: they
//! only decide which ports a wire connects. Closed wire cycles without any
//! node are recorded as loops labelled by their atom.

use std::fmt;

use super::signature::{Factor, ObjectWord, Signature};
use super::term::DiagramTerm;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Box {
        label: String,
        /// Formal adjoint mark.
        dagger: bool,
        inputs: Vec<Factor>,
        outputs: Vec<Factor>,
    },
    Spider {
        atom: String,
        legs: usize,
        genus: u32,
    },
}

impl Node {
    pub fn is_spider(&self) -> bool {
        matches!(self, Node::Spider { .. })
    }
}

/// One end of a wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    /// Boundary input position.
    In(usize),
    /// Boundary output position.
    Out(usize),
    /// Input port of a box.
    NodeIn(usize, usize),
    /// Output port of a box.
    NodeOut(usize, usize),
    /// Leg of a spider.
    Leg(usize, usize),
}

impl Endpoint {
    /// Sources emit a wire into the diagram: boundary inputs, box outputs and
    /// spider legs. Sinks absorb one: boundary outputs and box inputs.
    pub fn is_source(&self) -> bool {
        matches!(self, Endpoint::In(_) | Endpoint::NodeOut(..) | Endpoint::Leg(..))
    }

    pub fn node(&self) -> Option<usize> {
        match *self {
            Endpoint::NodeIn(n, _) | Endpoint::NodeOut(n, _) | Endpoint::Leg(n, _) => Some(n),
            _ => None,
        }
    }

    pub(crate) fn renumber(self, map: &[usize]) -> Endpoint {
        match self {
            Endpoint::NodeIn(n, p) => Endpoint::NodeIn(map[n], p),
            Endpoint::NodeOut(n, p) => Endpoint::NodeOut(map[n], p),
            Endpoint::Leg(n, p) => Endpoint::Leg(map[n], p),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenGraph {
    pub nodes: Vec<Node>,
    pub wires: Vec<(Endpoint, Endpoint)>,
    pub inputs: ObjectWord,
    pub outputs: ObjectWord,
    /// Atoms of closed node-free wire loops, sorted.
    pub loops: Vec<String>,
}

impl OpenGraph {
    pub fn empty() -> Self {
        OpenGraph {
            nodes: Vec::new(),
            wires: Vec::new(),
            inputs: ObjectWord::unit(),
            outputs: ObjectWord::unit(),
            loops: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.wires.is_empty() && self.loops.is_empty()
    }

    /// Atom carried by an endpoint.
    pub fn atom_at(&self, e: Endpoint) -> &str {
        match e {
            Endpoint::In(i) => &self.inputs.0[i].atom,
            Endpoint::Out(i) => &self.outputs.0[i].atom,
            Endpoint::NodeIn(n, p) => match &self.nodes[n] {
                Node::Box { inputs, .. } => &inputs[p].atom,
                Node::Spider { atom, .. } => atom,
            },
            Endpoint::NodeOut(n, p) => match &self.nodes[n] {
                Node::Box { outputs, .. } => &outputs[p].atom,
                Node::Spider { atom, .. } => atom,
            },
            Endpoint::Leg(n, _) => match &self.nodes[n] {
                Node::Spider { atom, .. } => atom,
                Node::Box { label, .. } => label,
            },
        }
    }

    /// All endpoints that must carry exactly one wire.
    pub fn endpoints(&self) -> Vec<Endpoint> {
        let mut v: Vec<Endpoint> = (0..self.inputs.len()).map(Endpoint::In).collect();
        v.extend((0..self.outputs.len()).map(Endpoint::Out));
        for (n, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Box {
                    inputs, outputs, ..
                } => {
                    v.extend((0..inputs.len()).map(|p| Endpoint::NodeIn(n, p)));
                    v.extend((0..outputs.len()).map(|p| Endpoint::NodeOut(n, p)));
                }
                Node::Spider { legs, .. } => v.extend((0..*legs).map(|p| Endpoint::Leg(n, p))),
            }
        }
        v
    }

    /// Checks the structural invariants: every endpoint is used by exactly one
    /// wire and both ends of every wire carry the same atom.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut seen = std::collections::HashMap::new();
        for &(a, b) in &self.wires {
            for e in [a, b] {
                *seen.entry(e).or_insert(0) += 1;
            }
            if self.atom_at(a) != self.atom_at(b) {
                return Err(format!(
                    "wire {a:?}-{b:?} joins `{}` to `{}`",
                    self.atom_at(a),
                    self.atom_at(b)
                ));
            }
        }
        for e in self.endpoints() {
            match seen.remove(&e) {
                Some(1) => {}
                Some(k) => return Err(format!("{e:?} has {k} wires")),
                None => return Err(format!("{e:?} is dangling")),
            }
        }
        if let Some(e) = seen.keys().next() {
            return Err(format!("wire touches unknown endpoint {e:?}"));
        }
        Ok(())
    }

    /// The adjoint graph: boundaries exchanged, box ports flipped and labels
    /// dagger-marked. Spiders are unchanged.
    pub fn flipped(&self) -> OpenGraph {
        let flip_end = |e: Endpoint| match e {
            Endpoint::In(i) => Endpoint::Out(i),
            Endpoint::Out(i) => Endpoint::In(i),
            Endpoint::NodeIn(n, p) => Endpoint::NodeOut(n, p),
            Endpoint::NodeOut(n, p) => Endpoint::NodeIn(n, p),
            leg => leg,
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Box {
                    label,
                    dagger,
                    inputs,
                    outputs,
                } => Node::Box {
                    label: label.clone(),
                    dagger: !dagger,
                    inputs: outputs.clone(),
                    outputs: inputs.clone(),
                },
                spider => spider.clone(),
            })
            .collect();
        let mut g = OpenGraph {
            nodes,
            wires: self
                .wires
                .iter()
                .map(|&(a, b)| (flip_end(a), flip_end(b)))
                .collect(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
            loops: self.loops.clone(),
        };
        g.normalize_wires();
        g
    }

    pub(crate) fn normalize_wires(&mut self) {
        for w in &mut self.wires {
            if w.1 < w.0 {
                *w = (w.1, w.0);
            }
        }
        self.wires.sort();
        self.loops.sort();
    }

    /// For every endpoint, the endpoint at the other end of its wire.
    pub fn partner_map(&self) -> std::collections::HashMap<Endpoint, Endpoint> {
        let mut m = std::collections::HashMap::with_capacity(self.wires.len() * 2);
        for &(a, b) in &self.wires {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }
}

impl fmt::Display for OpenGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {} -> {}", self.inputs, self.outputs)?;
        for (i, n) in self.nodes.iter().enumerate() {
            match n {
                Node::Box {
                    label,
                    dagger,
                    inputs,
                    outputs,
                } => writeln!(
                    f,
                    "  n{i}: {label}{} : {} -> {}",
                    if *dagger { "†" } else { "" },
                    ObjectWord(inputs.clone()),
                    ObjectWord(outputs.clone())
                )?,
                Node::Spider { atom, legs, genus } => {
                    writeln!(f, "  n{i}: spider {atom} legs={legs} genus={genus}")?
                }
            }
        }
        for (a, b) in &self.wires {
            writeln!(f, "  {a:?} -- {b:?}")?;
        }
        for l in &self.loops {
            writeln!(f, "  loop {l}")?;
        }
        Ok(())
    }
}

/// Inner side of a stub: what it is attached to inside the piece that made it.
#[derive(Clone, Copy)]
enum Inner {
    Port(Endpoint),
    Link(usize),
}

/// Outer side: the stub it was glued to, or the final boundary.
#[derive(Clone, Copy)]
enum Outer {
    Open,
    Glue(usize),
    Boundary(Endpoint),
}

struct Stub {
    inner: Inner,
    outer: Outer,
    atom: String,
}

struct Builder<'s> {
    sig: &'s Signature,
    nodes: Vec<Node>,
    stubs: Vec<Stub>,
}

type Interface = (Vec<usize>, Vec<usize>);

impl<'s> Builder<'s> {
    fn stub(&mut self, inner: Inner, atom: &str) -> usize {
        self.stubs.push(Stub {
            inner,
            outer: Outer::Open,
            atom: atom.to_string(),
        });
        self.stubs.len() - 1
    }

    /// A bare wire: two stubs linked to each other.
    fn wire(&mut self, atom: &str) -> (usize, usize) {
        let a = self.stubs.len();
        self.stub(Inner::Link(a + 1), atom);
        self.stub(Inner::Link(a), atom);
        (a, a + 1)
    }

    fn glue(&mut self, a: usize, b: usize) {
        debug_assert!(matches!(self.stubs[a].outer, Outer::Open));
        debug_assert!(matches!(self.stubs[b].outer, Outer::Open));
        self.stubs[a].outer = Outer::Glue(b);
        self.stubs[b].outer = Outer::Glue(a);
    }

    fn boxed(&mut self, label: String, dagger: bool, inputs: Vec<Factor>, outputs: Vec<Factor>) -> Interface {
        let n = self.nodes.len();
        let dom = inputs
            .iter()
            .enumerate()
            .map(|(p, f)| self.stub(Inner::Port(Endpoint::NodeIn(n, p)), &f.atom))
            .collect();
        let cod = outputs
            .iter()
            .enumerate()
            .map(|(p, f)| self.stub(Inner::Port(Endpoint::NodeOut(n, p)), &f.atom))
            .collect();
        self.nodes.push(Node::Box {
            label,
            dagger,
            inputs,
            outputs,
        });
        (dom, cod)
    }

    fn identity(&mut self, w: &ObjectWord) -> Interface {
        w.factors()
            .iter()
            .map(|f| self.wire(&f.atom))
            .unzip()
    }

    fn compile(&mut self, t: &DiagramTerm, flipped: bool) -> Result<Interface> {
        Ok(match t {
            DiagramTerm::Gen(name) => {
                let g = self.sig.generator(name)?;
                match (flipped, &g.dagger_partner) {
                    (false, _) => {
                        self.boxed(name.clone(), false, g.dom.0.clone(), g.cod.0.clone())
                    }
                    (true, Some(p)) => {
                        let p = self.sig.generator(p)?;
                        self.boxed(p.name.clone(), false, p.dom.0.clone(), p.cod.0.clone())
                    }
                    (true, None) => self.boxed(name.clone(), true, g.cod.0.clone(), g.dom.0.clone()),
                }
            }
            DiagramTerm::Id(w) => self.identity(w),
            DiagramTerm::Seq(after, before) => {
                let (first, second) = if flipped { (after, before) } else { (before, after) };
                let (d1, c1) = self.compile(first, flipped)?;
                let (d2, c2) = self.compile(second, flipped)?;
                for (&a, &b) in c1.iter().zip(&d2) {
                    self.glue(a, b);
                }
                (d1, c2)
            }
            DiagramTerm::Par(l, r) => {
                let (mut d1, mut c1) = self.compile(l, flipped)?;
                let (d2, c2) = self.compile(r, flipped)?;
                d1.extend(d2);
                c1.extend(c2);
                (d1, c1)
            }
            DiagramTerm::Swap(w1, w2) => {
                let (w1, w2) = if flipped { (w2, w1) } else { (w1, w2) };
                let (a1, b1) = self.identity(w1);
                let (a2, b2) = self.identity(w2);
                let dom = a1.into_iter().chain(a2).collect();
                let cod = b2.into_iter().chain(b1).collect();
                (dom, cod)
            }
            DiagramTerm::Cup(f) | DiagramTerm::Cap(f) => {
                let (a, b) = self.wire(&f.atom);
                let cup_shaped = matches!(t, DiagramTerm::Cup(_)) != flipped;
                if cup_shaped {
                    (vec![], vec![a, b])
                } else {
                    (vec![a, b], vec![])
                }
            }
            DiagramTerm::Dagger(inner) => self.compile(inner, !flipped)?,
            DiagramTerm::Spider {
                atom,
                inputs,
                outputs,
            } => {
                let n = self.nodes.len();
                let legs = inputs + outputs;
                self.nodes.push(Node::Spider {
                    atom: atom.clone(),
                    legs,
                    genus: 0,
                });
                let stubs: Vec<usize> = (0..legs)
                    .map(|p| self.stub(Inner::Port(Endpoint::Leg(n, p)), atom))
                    .collect();
                let k = if flipped { *outputs } else { *inputs };
                (stubs[..k].to_vec(), stubs[k..].to_vec())
            }
        })
    }

    /// Traces every stub chain between two endpoints; leftover cycles are loops.
    fn finish(self, dom: ObjectWord, cod: ObjectWord) -> OpenGraph {
        let Builder { nodes, stubs, .. } = self;
        let mut visited = vec![false; stubs.len()];
        let mut wires = Vec::new();

        // leaving stub `s` through its inner side (`via_inner`) or outer side
        let walk = |mut s: usize, mut via_inner: bool, visited: &mut Vec<bool>| -> Endpoint {
            loop {
                visited[s] = true;
                if via_inner {
                    match stubs[s].inner {
                        Inner::Port(e) => return e,
                        Inner::Link(t) => {
                            s = t;
                            via_inner = false;
                        }
                    }
                } else {
                    match stubs[s].outer {
                        Outer::Boundary(e) => return e,
                        Outer::Glue(t) => {
                            s = t;
                            via_inner = true;
                        }
                        Outer::Open => unreachable!("open stub after boundary assignment"),
                    }
                }
            }
        };

        for s in 0..stubs.len() {
            if visited[s] {
                continue;
            }
            let start = match (stubs[s].inner, stubs[s].outer) {
                (Inner::Port(e), _) => Some((e, false)),
                (_, Outer::Boundary(e)) => Some((e, true)),
                _ => None,
            };
            if let Some((e, via_inner)) = start {
                let other = walk(s, via_inner, &mut visited);
                wires.push((e, other));
            }
        }
        let mut loops = Vec::new();
        for s in 0..stubs.len() {
            if visited[s] {
                continue;
            }
            loops.push(stubs[s].atom.clone());
            let mut cur = s;
            let mut via_inner = true;
            while !visited[cur] {
                visited[cur] = true;
                cur = match (via_inner, stubs[cur].inner, stubs[cur].outer) {
                    (true, Inner::Link(t), _) => t,
                    (false, _, Outer::Glue(t)) => t,
                    _ => unreachable!("loop stubs are linked and glued"),
                };
                via_inner = !via_inner;
            }
        }
        let mut g = OpenGraph {
            nodes,
            wires,
            inputs: dom,
            outputs: cod,
            loops,
        };
        g.normalize_wires();
        g
    }
}

/// Builds the open graph of a well-typed term.
pub fn to_graph(t: &DiagramTerm, sig: &Signature) -> Result<OpenGraph> {
    let (dom, cod) = t.typecheck(sig)?;
    let mut b = Builder {
        sig,
        nodes: Vec::new(),
        stubs: Vec::new(),
    };
    let (d, c) = b.compile(t, false)?;
    for (i, s) in d.into_iter().enumerate() {
        b.stubs[s].outer = Outer::Boundary(Endpoint::In(i));
    }
    for (i, s) in c.into_iter().enumerate() {
        b.stubs[s].outer = Outer::Boundary(Endpoint::Out(i));
    }
    Ok(b.finish(dom, cod))
}
