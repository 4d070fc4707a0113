//! Evaluation of an open graph as a tensor network.
//!
//! Every endpoint is a tensor index. Nodes contribute their matrices with
//! all ports as indices (boxes as `outputs..., inputs...`, spiders in their
//! all-output form), and every wire contributes a two-index tensor that
//! depends on the orientation of its ends: identity from an output to an
//! input, the cap between two outputs, the cup between two inputs. Boundary
//! inputs count as outputs of the surrounding context and vice versa.

use std::collections::HashMap;

use super::Interpretation;
use crate::diagram::{Endpoint, Factor, Node, OpenGraph};
use crate::error::{Error, Result};
use crate::matcat::Matrix;
use crate::scalars::{Scalar, SemiringTag};

#[derive(Debug, Clone)]
struct Tensor {
    legs: Vec<usize>,
    dims: Vec<usize>,
    data: Vec<Scalar>,
}

impl Tensor {
    fn from_matrix(m: &Matrix, legs: Vec<usize>, dims: Vec<usize>) -> Tensor {
        debug_assert_eq!(dims.iter().product::<usize>(), m.rows() * m.cols());
        Tensor {
            legs,
            dims,
            data: m.entries().to_vec(),
        }
    }
}

/// Row-major strides for `dims`.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Contracts every leg shared between `a` and `b`.
fn contract(tag: SemiringTag, a: &Tensor, b: &Tensor) -> Tensor {
    let shared: Vec<usize> = a.legs.iter().copied().filter(|l| b.legs.contains(l)).collect();
    let mut legs = Vec::new();
    let mut dims = Vec::new();
    for t in [a, b] {
        for (i, &l) in t.legs.iter().enumerate() {
            if !shared.contains(&l) {
                legs.push(l);
                dims.push(t.dims[i]);
            }
        }
    }
    let pos = |t: &Tensor, l: usize| t.legs.iter().position(|&x| x == l).expect("leg");
    let shared_dims: Vec<usize> = shared.iter().map(|&l| a.dims[pos(a, l)]).collect();
    let (sa, sb) = (strides(&a.dims), strides(&b.dims));
    // offsets of each free and shared leg inside a and b
    let free_off: Vec<(usize, usize)> = legs
        .iter()
        .map(|&l| {
            if let Some(i) = a.legs.iter().position(|&x| x == l) {
                (sa[i], 0)
            } else {
                (0, sb[pos(b, l)])
            }
        })
        .collect();
    let shared_off: Vec<(usize, usize)> =
        shared.iter().map(|&l| (sa[pos(a, l)], sb[pos(b, l)])).collect();
    let out_size: usize = dims.iter().product();
    let inner: usize = shared_dims.iter().product();
    let (out_strides, inner_strides) = (strides(&dims), strides(&shared_dims));
    let mut data = vec![tag.zero(); out_size];
    for (o, slot) in data.iter_mut().enumerate() {
        let (mut ia, mut ib) = (0, 0);
        for (k, &(oa, ob)) in free_off.iter().enumerate() {
            let digit = (o / out_strides[k]) % dims[k];
            ia += digit * oa;
            ib += digit * ob;
        }
        for s in 0..inner {
            let (mut ja, mut jb) = (ia, ib);
            for (k, &(oa, ob)) in shared_off.iter().enumerate() {
                let digit = (s / inner_strides[k]) % shared_dims[k];
                ja += digit * oa;
                jb += digit * ob;
            }
            let (x, y) = (&a.data[ja], &b.data[jb]);
            if !x.is_zero() && !y.is_zero() {
                slot.add_assign(&x.mul(y));
            }
        }
    }
    Tensor { legs, dims, data }
}

/// Evaluates `g` under `interp`. Frobenius atoms use their Frobenius cup and
/// cap on bent wires; other atoms use the standard ones.
pub fn evaluate_graph(g: &OpenGraph, interp: &Interpretation) -> Result<Matrix> {
    g.validate().map_err(Error::Interpretation)?;
    let tag = interp.tag;
    let mut index: HashMap<Endpoint, usize> = HashMap::new();
    for e in g.endpoints() {
        let n = index.len();
        index.insert(e, n);
    }
    let dim_of = |e: Endpoint| interp.dim(g.atom_at(e));
    let mut tensors = Vec::new();
    for (n, node) in g.nodes.iter().enumerate() {
        match node {
            Node::Box {
                label,
                dagger,
                inputs,
                outputs,
            } => {
                let base = interp.generator(label)?;
                tag.ensure_compatible(&base.tag())?;
                let m = if *dagger { base.dagger() } else { base.clone() };
                let mut legs = Vec::new();
                let mut dims = Vec::new();
                for p in 0..outputs.len() {
                    legs.push(index[&Endpoint::NodeOut(n, p)]);
                    dims.push(interp.dim(&outputs[p].atom)?);
                }
                for p in 0..inputs.len() {
                    legs.push(index[&Endpoint::NodeIn(n, p)]);
                    dims.push(interp.dim(&inputs[p].atom)?);
                }
                if dims.iter().product::<usize>() != m.rows() * m.cols() {
                    return Err(Error::Interpretation(format!(
                        "matrix for `{label}` has the wrong shape"
                    )));
                }
                tensors.push(Tensor::from_matrix(&m, legs, dims));
            }
            Node::Spider { atom, legs, genus } => {
                let p = interp.frobenius(atom).ok_or_else(|| {
                    Error::Interpretation(format!("no frobenius structure for object `{atom}`"))
                })?;
                let m = p.spider(0, *legs, *genus);
                tensors.push(Tensor::from_matrix(
                    &m,
                    (0..*legs).map(|i| index[&Endpoint::Leg(n, i)]).collect(),
                    vec![p.dim(); *legs],
                ));
            }
        }
    }
    for &(a, b) in &g.wires {
        let atom = g.atom_at(a);
        let d = dim_of(a)?;
        let factor = Factor::plain(atom);
        let m = match (a.is_source(), b.is_source()) {
            (true, true) => interp.cap_matrix(&factor)?,
            (false, false) => interp.cup_matrix(&factor)?,
            _ => Matrix::identity(tag, d),
        };
        tensors.push(Tensor::from_matrix(&m, vec![index[&a], index[&b]], vec![d, d]));
    }
    // loops are closed scalars
    let mut scalar = Matrix::identity(tag, 1);
    for atom in &g.loops {
        let f = Factor::plain(atom.as_str());
        let l = interp.cap_matrix(&f)?.compose(&interp.cup_matrix(&f)?)?;
        scalar = scalar.compose(&l)?;
    }
    let mut result = contract_all(tag, tensors);
    // order the open legs as outputs then inputs
    let mut legs = Vec::new();
    let mut dims = Vec::new();
    for i in 0..g.outputs.len() {
        legs.push(index[&Endpoint::Out(i)]);
        dims.push(dim_of(Endpoint::Out(i))?);
    }
    for i in 0..g.inputs.len() {
        legs.push(index[&Endpoint::In(i)]);
        dims.push(dim_of(Endpoint::In(i))?);
    }
    let perm: Vec<usize> = legs
        .iter()
        .map(|l| result.legs.iter().position(|x| x == l).expect("open leg"))
        .collect();
    let src_strides = strides(&result.dims);
    let dst_strides = strides(&dims);
    let total: usize = dims.iter().product();
    let mut data = Vec::with_capacity(total);
    for o in 0..total {
        let mut src = 0;
        for (k, &p) in perm.iter().enumerate() {
            src += ((o / dst_strides[k]) % dims[k]) * src_strides[p];
        }
        data.push(result.data[src].clone());
    }
    result = Tensor { legs, dims, data };
    let rows: usize = result.dims[..g.outputs.len()].iter().product();
    let cols: usize = result.dims[g.outputs.len()..].iter().product();
    let m = Matrix::new(tag, rows, cols, result.data)?;
    let s = scalar.to_scalar()?;
    m.scalar_multiple(&s)
}

/// Greedy pairwise contraction: connected pairs first, smallest result first.
fn contract_all(tag: SemiringTag, mut tensors: Vec<Tensor>) -> Tensor {
    let unit = Tensor {
        legs: vec![],
        dims: vec![],
        data: vec![tag.one()],
    };
    while tensors.len() > 1 {
        let mut best: Option<(bool, usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let (a, b) = (&tensors[i], &tensors[j]);
                let shared = a.legs.iter().filter(|l| b.legs.contains(l)).count();
                let free: usize = a
                    .legs
                    .iter()
                    .zip(&a.dims)
                    .chain(b.legs.iter().zip(&b.dims))
                    .filter(|(l, _)| !(a.legs.contains(l) && b.legs.contains(l)))
                    .map(|(_, d)| *d)
                    .product();
                let key = (shared == 0, free, i, j);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, _, i, j) = best.expect("at least two tensors");
        let b = tensors.swap_remove(j);
        let a = tensors.swap_remove(i);
        tensors.push(contract(tag, &a, &b));
    }
    tensors.pop().unwrap_or(unit)
}
