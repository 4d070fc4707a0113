//! Spider rewriting for commutative Frobenius structures and the 2Cob
//! equality decision.
//!
//! Spiders are undirected nodes, so (co)commutativity is built in. Fusion
//! applies three rewrites until none is left:
//!
//! * two same-atom spiders joined by a wire merge, adding their genera;
//! * a wire from a spider to itself is removed, adding one to the genus
//!   unless the structure is special;
//! * a two-legged genus-zero spider whose legs reach different endpoints is
//!   replaced by a plain wire.
//!
//! A closed node-free loop on a frobenius atom is spiderized as a two-legged
//! spider wired to itself, so it fuses to a closed torus (or to the closed
//! sphere when special), agreeing with cap ∘ cup = ε ∘ μ ∘ δ ∘ e.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::diagram::{to_graph, DiagramTerm, Endpoint, Node, ObjectWord, OpenGraph, Signature};
use crate::error::{Error, Result};

/// Replaces closed wire loops on frobenius atoms by self-wired spiders.
/// Everything else is already in spider form after [`to_graph`].
pub fn spiderize(graph: &OpenGraph, sig: &Signature) -> OpenGraph {
    let mut g = graph.clone();
    let mut kept = Vec::new();
    for atom in std::mem::take(&mut g.loops) {
        let frob = sig.atom(&atom).map(|a| a.frobenius).unwrap_or(false);
        if frob {
            let n = g.nodes.len();
            g.nodes.push(Node::Spider {
                atom,
                legs: 2,
                genus: 0,
            });
            g.wires.push((Endpoint::Leg(n, 0), Endpoint::Leg(n, 1)));
        } else {
            kept.push(atom);
        }
    }
    g.loops = kept;
    canonicalize_layout(&mut g);
    g
}

/// One applicable fusion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Redex {
    /// Merge the two spiders joined by this wire.
    Merge(usize),
    /// Remove this spider self-wire.
    SelfLoop(usize),
    /// Dissolve this two-legged genus-zero spider.
    Identity(usize),
}

/// All redexes of a graph, in a deterministic order.
pub fn redexes(g: &OpenGraph) -> Vec<Redex> {
    let mut out = Vec::new();
    for (w, &(a, b)) in g.wires.iter().enumerate() {
        if let (Endpoint::Leg(n, _), Endpoint::Leg(m, _)) = (a, b) {
            if n == m {
                out.push(Redex::SelfLoop(w));
            } else if spider_atom(g, n) == spider_atom(g, m) {
                out.push(Redex::Merge(w));
            }
        }
    }
    for (n, node) in g.nodes.iter().enumerate() {
        if let Node::Spider {
            legs: 2, genus: 0, ..
        } = node
        {
            let self_wired = g
                .wires
                .iter()
                .any(|&(a, b)| a == Endpoint::Leg(n, 0) && b == Endpoint::Leg(n, 1));
            if !self_wired {
                out.push(Redex::Identity(n));
            }
        }
    }
    out
}

fn spider_atom(g: &OpenGraph, n: usize) -> Option<&str> {
    match &g.nodes[n] {
        Node::Spider { atom, .. } => Some(atom),
        _ => None,
    }
}

/// Applies one redex, returning a compacted graph.
pub fn apply(g: &OpenGraph, redex: Redex, special: bool) -> OpenGraph {
    let mut nodes: Vec<Option<Node>> = g.nodes.iter().cloned().map(Some).collect();
    let mut wires: Vec<(Endpoint, Endpoint)> = g.wires.clone();
    match redex {
        Redex::SelfLoop(w) => {
            let (a, _) = wires.remove(w);
            let n = a.node().expect("spider leg");
            if !special {
                if let Some(Node::Spider { genus, .. }) = &mut nodes[n] {
                    *genus += 1;
                }
            }
        }
        Redex::Merge(w) => {
            let (a, b) = wires.remove(w);
            let (keep, gone) = (a.node().expect("leg"), b.node().expect("leg"));
            let gone_genus = match nodes[gone].take() {
                Some(Node::Spider { genus, .. }) => genus,
                _ => unreachable!("merge joins spiders"),
            };
            // fresh leg indices on the kept spider for the absorbed legs
            let mut next_leg = match &nodes[keep] {
                Some(Node::Spider { legs, .. }) => *legs,
                _ => unreachable!(),
            };
            for wire in wires.iter_mut() {
                for e in [&mut wire.0, &mut wire.1] {
                    if let Endpoint::Leg(n, _) = *e {
                        if n == gone {
                            *e = Endpoint::Leg(keep, next_leg);
                            next_leg += 1;
                        }
                    }
                }
            }
            if let Some(Node::Spider { genus, legs, .. }) = &mut nodes[keep] {
                *genus += gone_genus;
                *legs = next_leg;
            }
        }
        Redex::Identity(n) => {
            let ends: Vec<usize> = wires
                .iter()
                .enumerate()
                .filter(|(_, (a, b))| a.node() == Some(n) || b.node() == Some(n))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(ends.len(), 2, "identity spider has two wires");
            let other = |i: usize| {
                let (a, b) = wires[i];
                if a.node() == Some(n) {
                    b
                } else {
                    a
                }
            };
            let joined = (other(ends[0]), other(ends[1]));
            wires.remove(ends[1]);
            wires.remove(ends[0]);
            wires.push(joined);
            nodes[n] = None;
        }
    }
    compact(nodes, wires, g)
}

/// Drops removed nodes, renumbers nodes and spider legs densely.
fn compact(nodes: Vec<Option<Node>>, wires: Vec<(Endpoint, Endpoint)>, g: &OpenGraph) -> OpenGraph {
    let mut map = vec![usize::MAX; nodes.len()];
    let mut kept = Vec::new();
    for (i, n) in nodes.into_iter().enumerate() {
        if let Some(n) = n {
            map[i] = kept.len();
            kept.push(n);
        }
    }
    let mut leg_count = vec![0usize; kept.len()];
    let mut out = OpenGraph {
        nodes: kept,
        wires: Vec::with_capacity(wires.len()),
        inputs: g.inputs.clone(),
        outputs: g.outputs.clone(),
        loops: g.loops.clone(),
    };
    let mut relabel = |e: Endpoint| match e.renumber(&map) {
        Endpoint::Leg(n, _) => {
            leg_count[n] += 1;
            Endpoint::Leg(n, leg_count[n] - 1)
        }
        other => other,
    };
    for (a, b) in wires {
        let a = relabel(a);
        let b = relabel(b);
        out.wires.push((a, b));
    }
    for (n, node) in out.nodes.iter_mut().enumerate() {
        if let Node::Spider { legs, .. } = node {
            *legs = leg_count[n];
        }
    }
    canonicalize_layout(&mut out);
    out
}

fn canonicalize_layout(g: &mut OpenGraph) {
    for w in &mut g.wires {
        if w.1 < w.0 {
            *w = (w.1, w.0);
        }
    }
    g.wires.sort();
    g.loops.sort();
}

/// Fuses to normal form, always taking the first redex.
pub fn fuse(g: &OpenGraph, special: bool) -> OpenGraph {
    let mut cur = g.clone();
    while let Some(&r) = redexes(&cur).first() {
        cur = apply(&cur, r, special);
    }
    cur
}

/// Fuses to normal form choosing redexes at random; returns every
/// intermediate graph, starting with the input and ending with the normal form.
pub fn fuse_trace<R: Rng>(g: &OpenGraph, special: bool, rng: &mut R) -> Vec<OpenGraph> {
    let mut trace = vec![g.clone()];
    loop {
        let rs = redexes(trace.last().expect("non-empty"));
        if rs.is_empty() {
            return trace;
        }
        let r = rs[rng.gen_range(0..rs.len())];
        let next = apply(trace.last().expect("non-empty"), r, special);
        trace.push(next);
    }
}

/// One connected piece of a cobordism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentClass {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub genus: u32,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "component(in=[{}], out=[{}], genus={})",
            list(&self.inputs),
            list(&self.outputs),
            self.genus
        )
    }
}

/// Homeomorphism class of a 2-cobordism: its components, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CobordismClass {
    /// The frobenius atom; `None` for the empty cobordism.
    pub atom: Option<String>,
    pub components: Vec<ComponentClass>,
}

impl fmt::Display for CobordismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The frobenius atom a term is built over, checking that the term only uses
/// 2Cob structure (spiders, identities, swaps, cups, caps, daggers) on it.
pub fn cob_atom(t: &DiagramTerm, sig: &Signature) -> Result<Option<String>> {
    fn visit(t: &DiagramTerm, sig: &Signature, found: &mut Option<String>) -> Result<()> {
        let mut note = |atom: &str| -> Result<()> {
            let decl = sig.atom(atom)?;
            if !decl.frobenius {
                return Err(Error::Unsupported(format!(
                    "`{atom}` is not a frobenius object; cobordisms live on one frobenius object"
                )));
            }
            match found {
                Some(a) if a != atom => Err(Error::Unsupported(format!(
                    "cobordism mixes frobenius objects `{a}` and `{atom}`"
                ))),
                _ => {
                    *found = Some(atom.to_string());
                    Ok(())
                }
            }
        };
        match t {
            DiagramTerm::Gen(name) => Err(Error::Unsupported(format!(
                "foreign generator `{name}` in a cobordism"
            ))),
            DiagramTerm::Id(w) => w.factors().iter().try_for_each(|f| note(&f.atom)),
            DiagramTerm::Swap(a, b) => a
                .factors()
                .iter()
                .chain(b.factors())
                .try_for_each(|f| note(&f.atom)),
            DiagramTerm::Cup(f) | DiagramTerm::Cap(f) => note(&f.atom),
            DiagramTerm::Spider { atom, .. } => note(atom),
            DiagramTerm::Seq(a, b) | DiagramTerm::Par(a, b) => {
                visit(a, sig, found)?;
                visit(b, sig, found)
            }
            DiagramTerm::Dagger(a) => visit(a, sig, found),
        }
    }
    let mut found = None;
    visit(t, sig, &mut found)?;
    Ok(found)
}

/// Reads the component structure off a fused graph.
pub fn components_of(g: &OpenGraph) -> Vec<ComponentClass> {
    // union-find over: inputs, outputs, nodes
    let (ni, no) = (g.inputs.len(), g.outputs.len());
    let total = ni + no + g.nodes.len();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let owner = |e: Endpoint| match e {
        Endpoint::In(i) => i,
        Endpoint::Out(i) => ni + i,
        other => ni + no + other.node().expect("node endpoint"),
    };
    for &(a, b) in &g.wires {
        let (x, y) = (find(&mut parent, owner(a)), find(&mut parent, owner(b)));
        parent[x] = y;
    }
    let mut groups: BTreeMap<usize, ComponentClass> = BTreeMap::new();
    for v in 0..total {
        let root = find(&mut parent, v);
        let entry = groups.entry(root).or_insert(ComponentClass {
            inputs: vec![],
            outputs: vec![],
            genus: 0,
        });
        if v < ni {
            entry.inputs.push(v);
        } else if v < ni + no {
            entry.outputs.push(v - ni);
        } else if let Node::Spider { genus, .. } = &g.nodes[v - ni - no] {
            entry.genus += genus;
        }
    }
    let mut comps: Vec<ComponentClass> = groups.into_values().collect();
    for c in &mut comps {
        c.inputs.sort_unstable();
        c.outputs.sort_unstable();
    }
    comps.sort();
    comps
}

/// Classifies a 2Cob term up to homeomorphism.
pub fn classify_cob(t: &DiagramTerm, sig: &Signature) -> Result<CobordismClass> {
    let atom = cob_atom(t, sig)?;
    let g = to_graph(t, sig)?;
    let fused = fuse(&spiderize(&g, sig), false);
    Ok(CobordismClass {
        atom,
        components: components_of(&fused),
    })
}

/// Homeomorphism of two cobordisms with the same boundary.
pub fn eq_cob(a: &DiagramTerm, b: &DiagramTerm, sig: &Signature) -> Result<bool> {
    let ta: (ObjectWord, ObjectWord) = a.typecheck(sig)?;
    let tb = b.typecheck(sig)?;
    if ta != tb {
        return Err(Error::Type(format!(
            "cobordisms have different boundaries: {} -> {} vs {} -> {}",
            ta.0, ta.1, tb.0, tb.1
        )));
    }
    Ok(classify_cob(a, sig)?.components == classify_cob(b, sig)?.components)
}

/// Spiderizes and fuses, for Frobenius-aware equality of arbitrary diagrams.
pub fn normal_form(t: &DiagramTerm, sig: &Signature, special: bool) -> Result<OpenGraph> {
    Ok(fuse(&spiderize(&to_graph(t, sig)?, sig), special))
}
