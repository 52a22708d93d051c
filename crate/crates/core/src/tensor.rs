//! Dense coefficient tensors. A tensor of shape `(d_out, d_1, ..., d_n)`
//! stores the structure constants of a multilinear map
//! `V_1 x ... x V_n -> W`: entry `[k][i_1]..[i_n]` is the `k`-th
//! coordinate of the image of the basis tuple `(e_{i_1}, ..., e_{i_n})`.

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::{Scalar, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<S = Q> {
    shape: Vec<usize>,
    data: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn new(shape: Vec<usize>, data: Vec<S>) -> Result<Self> {
        let size: usize = shape.iter().product();
        if size != data.len() {
            return Err(Error::Shape(format!(
                "tensor of shape {shape:?} needs {size} entries, got {}",
                data.len()
            )));
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let size = shape.iter().product();
        Tensor {
            shape,
            data: vec![S::zero(); size],
        }
    }

    /// Fills the tensor by evaluating `f` on each multi-index in row-major
    /// order.
    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let mut data = Vec::with_capacity(shape.iter().product());
        for_each_index(&shape, |idx| data.push(f(idx)));
        Tensor { shape, data }
    }

    /// Builds a multilinear-map tensor from the images of basis tuples:
    /// `image(idx)` returns the output vector (length `d_out`) for the
    /// input basis tuple `idx`.
    pub fn from_images(d_out: usize, inputs: &[usize], mut image: impl FnMut(&[usize]) -> Vec<S>) -> Self {
        let mut shape = vec![d_out];
        shape.extend_from_slice(inputs);
        let block: usize = inputs.iter().product();
        let mut data = vec![S::zero(); d_out * block];
        let mut pos = 0;
        for_each_index(inputs, |idx| {
            let v = image(idx);
            debug_assert_eq!(v.len(), d_out);
            for (k, x) in v.into_iter().enumerate() {
                data[k * block + pos] = x;
            }
            pos += 1;
        });
        Tensor { shape, data }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<S> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Tensor<S>) -> Result<Tensor<S>> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Tensor<S>) -> Result<Tensor<S>> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &S) -> Tensor<S> {
        self.map(|x| c.clone() * x.clone())
    }

    fn zip(&self, other: &Tensor<S>, f: impl Fn(&S, &S) -> S) -> Result<Tensor<S>> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!(
                "tensor shapes {:?} and {:?} differ",
                self.shape, other.shape
            )));
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Output vector for a tuple of input basis indices.
    pub fn basis_image(&self, idx: &[usize]) -> Vec<S> {
        let block: usize = self.shape[1..].iter().product();
        let pos = idx.iter().zip(&self.shape[1..]).fold(0, |acc, (&i, &d)| acc * d + i);
        (0..self.shape[0]).map(|k| self.data[k * block + pos].clone()).collect()
    }

    /// Contracts the tensor against one vector per input slot.
    pub fn multilinear_apply(&self, args: &[&[S]]) -> Result<Vec<S>> {
        if args.len() + 1 != self.shape.len() {
            return Err(Error::Shape(format!(
                "tensor of shape {:?} takes {} arguments, got {}",
                self.shape,
                self.shape.len().saturating_sub(1),
                args.len()
            )));
        }
        for (i, (a, &d)) in args.iter().zip(&self.shape[1..]).enumerate() {
            if a.len() != d {
                return Err(Error::Shape(format!(
                    "argument {i} has length {}, expected {d}",
                    a.len()
                )));
            }
        }
        Ok(self.apply(args))
    }

    /// Unchecked contraction; shapes are assumed to agree.
    pub(crate) fn apply(&self, args: &[&[S]]) -> Vec<S> {
        // Contract the last slot first: each pass shrinks the working
        // buffer by the extent of that slot.
        let mut buf: Vec<S> = Vec::new();
        let mut current: &[S] = &self.data;
        for a in args.iter().rev() {
            let d = a.len();
            if d == 0 {
                return vec![S::zero(); self.shape[0]];
            }
            let next: Vec<S> = current.chunks(d).map(|chunk| dot(chunk, a)).collect();
            buf = next;
            current = &buf;
        }
        if args.is_empty() {
            return self.data.clone();
        }
        buf
    }

    /// Bilinear evaluation; the common case for products and actions.
    pub fn bilinear(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.apply(&[x, y])
    }

    /// Precomposes input slot `slot` with the linear map `m`
    /// (`T'(.., v, ..) = T(.., m v, ..)`).
    pub fn precompose(&self, slot: usize, m: &Matrix<S>) -> Tensor<S> {
        let inputs = self.shape[1..].to_vec();
        let mut new_inputs = inputs.clone();
        new_inputs[slot] = m.cols();
        Tensor::from_images(self.shape[0], &new_inputs, |idx| {
            let args: Vec<Vec<S>> = idx
                .iter()
                .enumerate()
                .map(|(s, &i)| {
                    if s == slot {
                        m.column(i)
                    } else {
                        crate::matrix::unit(inputs[s], i)
                    }
                })
                .collect();
            let refs: Vec<&[S]> = args.iter().map(Vec::as_slice).collect();
            self.apply(&refs)
        })
    }

    /// Postcomposes the output with `m` (`T' = m o T`).
    pub fn postcompose(&self, m: &Matrix<S>) -> Tensor<S> {
        Tensor::from_images(m.rows(), &self.shape[1..], |idx| m.apply(&self.basis_image(idx)))
    }
}

impl Tensor<Q> {
    pub fn lift<S: Scalar>(&self) -> Tensor<S> {
        self.map(S::from_rational)
    }
}

/// Calls `f` on every multi-index of `shape` in row-major order.
pub fn for_each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    if shape.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; shape.len()];
    loop {
        f(&idx);
        let mut k = shape.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All multi-indices of `shape` in row-major order.
pub fn all_indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_index(shape, |i| out.push(i.to_vec()));
    out
}
