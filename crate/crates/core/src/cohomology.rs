//! Cochain complexes of Hom-associative bimodules, of Hom-Omega-associative
//! bimodules, and of twisted Rota-Baxter families, with differential
//! matrices, cohomology dimensions and transport along operator morphisms.
//!
//! A degree-`n` cochain is a table of tensors indexed by `Omega`-tuples of
//! length `n` in lexicographic order; each tensor has shape
//! `(target, source, ..., source)`. Degree 0 is a single vector stored as
//! a tensor of shape `(target,)`.

use serde::{Deserialize, Serialize};

use crate::elim::{inverse, rank, Subspace};
use crate::error::{Error, Result};
use crate::family::{check_omega_assoc, check_omega_bimodule, operator_bimodule, OmegaBimodule};
use crate::hom::{check_bimodule, eval, hochschild_differential, HomBimodule};
use crate::matrix::{sign, vadd, vscale, vsub, Matrix};
use crate::operators::{check_operator_morphism, check_twisted_rbf, OperatorMorphism, TwistedRBFamily};
use crate::scalar::{Scalar, Q};
use crate::tensor::{all_indices, for_each_index, Tensor};

pub const DEFAULT_DEGREE_CAP: usize = 2;
pub const DEFAULT_MAX_ENTRIES: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Ha,
    Omega,
    Rbf,
}

impl ComplexKind {
    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Ha => "ha",
            ComplexKind::Omega => "omega",
            ComplexKind::Rbf => "rbf",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<S: Scalar = Q> {
    pub degree: usize,
    pub components: Vec<Tensor<S>>,
}

fn tuple_index(tuple: &[usize], k: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * k + a)
}

impl<S: Scalar> Cochain<S> {
    pub fn new(degree: usize, components: Vec<Tensor<S>>) -> Self {
        Cochain { degree, components }
    }

    /// Degree-0 cochain from a vector of the target space.
    pub fn vector(u: Vec<S>) -> Self {
        let d = u.len();
        Cochain {
            degree: 0,
            components: vec![Tensor::new(vec![d], u).expect("length matches")],
        }
    }

    /// Degree-1 cochain from one `target x source` matrix per index.
    pub fn from_maps(maps: &[Matrix<S>]) -> Self {
        Cochain {
            degree: 1,
            components: maps
                .iter()
                .map(|m| Tensor::new(vec![m.rows(), m.cols()], m.entries().to_vec()).expect("sizes agree"))
                .collect(),
        }
    }

    /// Inverse of [`Cochain::from_maps`].
    pub fn to_maps(&self) -> Result<Vec<Matrix<S>>> {
        if self.degree != 1 {
            return Err(Error::Shape(format!(
                "expected a degree-1 cochain, got degree {}",
                self.degree
            )));
        }
        self.components
            .iter()
            .map(|t| Matrix::new(t.shape()[0], t.shape()[1], t.entries().to_vec()))
            .collect()
    }

    pub fn component(&self, tuple: &[usize], k: usize) -> &Tensor<S> {
        &self.components[tuple_index(tuple, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Tensor::is_zero)
    }

    pub fn flatten(&self) -> Vec<S> {
        self.components
            .iter()
            .flat_map(|t| t.entries().iter().cloned())
            .collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        Cochain {
            degree: self.degree,
            components: self.components.iter().map(|t| t.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Cochain<S>) -> Result<Self> {
        if self.degree != other.degree || self.components.len() != other.components.len() {
            return Err(Error::Shape("cochains of different degree".into()));
        }
        Ok(Cochain {
            degree: self.degree,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect::<Result<_>>()?,
        })
    }
}

/// Source and target data of a complex: the source algebra dimension `s`
/// and structure map, the target module dimension `t` and structure map,
/// and `|Omega|`.
struct Frame<'a, S: Scalar> {
    k: usize,
    s: usize,
    t: usize,
    p_source: &'a Matrix<S>,
    q_target: &'a Matrix<S>,
}

impl<S: Scalar> Frame<'_, S> {
    fn shape(&self, n: usize) -> Vec<usize> {
        let mut shape = vec![self.t];
        shape.extend(std::iter::repeat_n(self.s, n));
        shape
    }

    fn components(&self, n: usize) -> usize {
        self.k.pow(n as u32)
    }

    /// Shape checks and `q o f = f o p^{(x)n}` (`q u = u` in degree 0).
    fn membership(&self, f: &Cochain<S>) -> Result<()> {
        let n = f.degree;
        if f.components.len() != self.components(n) {
            return Err(Error::Shape(format!(
                "degree-{n} cochain needs {} components, got {}",
                self.components(n),
                f.components.len()
            )));
        }
        let shape = self.shape(n);
        for (ci, comp) in f.components.iter().enumerate() {
            if comp.shape() != shape.as_slice() {
                return Err(Error::Shape(format!(
                    "cochain component has shape {:?}, expected {shape:?}",
                    comp.shape()
                )));
            }
            let mut bad = None;
            for_each_index(&shape[1..], |i| {
                if bad.is_some() {
                    return;
                }
                let args: Vec<Vec<S>> = i.iter().map(|&j| crate::matrix::unit(self.s, j)).collect();
                let (lhs, rhs) = if n == 0 {
                    (self.q_target.apply(comp.entries()), comp.entries().to_vec())
                } else {
                    let twisted: Vec<Vec<S>> = args.iter().map(|x| self.p_source.apply(x)).collect();
                    (self.q_target.apply(&eval(comp, &args)), eval(comp, &twisted))
                };
                if lhs != rhs {
                    bad = Some(i.to_vec());
                }
            });
            if let Some(i) = bad {
                return Err(Error::Membership(format!(
                    "component {ci} does not intertwine the structure maps at basis tuple {i:?}"
                )));
            }
        }
        Ok(())
    }
}

fn omega_frame<S: Scalar>(m: &OmegaBimodule<S>) -> Frame<'_, S> {
    Frame {
        k: m.omega().size(),
        s: m.algebra().dim(),
        t: m.dim(),
        p_source: m.algebra().p(),
        q_target: m.q(),
    }
}

/// The generic differential of a Hom-Omega-associative algebra with
/// coefficients in a bimodule.
pub fn omega_differential<S: Scalar>(m: &OmegaBimodule<S>, f: &Cochain<S>) -> Result<Cochain<S>> {
    let frame = omega_frame(m);
    frame.membership(f)?;
    let g = m.algebra();
    let om = m.omega();
    let (k, s, t, n) = (frame.k, frame.s, frame.t, f.degree);
    if n == 0 {
        let one = om.require_unit()?;
        let u = f.components[0].entries().to_vec();
        let components = (0..k)
            .map(|al| {
                Tensor::from_images(t, &[s], |ix| {
                    let x = g.e(ix[0]);
                    vsub(&m.act_l(al, one, &x, &u), &m.act_r(one, al, &u, &x))
                })
            })
            .collect();
        return Ok(Cochain::new(1, components));
    }
    let pk = g.p().pow(n - 1);
    let components = all_indices(&vec![k; n + 1])
        .into_iter()
        .map(|al| {
            let tail = om.product(&al[1..]).expect("nonempty");
            let head = om.product(&al[..n]).expect("nonempty");
            let f_tail = f.component(&al[1..], k);
            let f_head = f.component(&al[..n], k);
            Tensor::from_images(t, &vec![s; n + 1], |ix| {
                let xs: Vec<Vec<S>> = ix.iter().map(|&i| g.e(i)).collect();
                let mut out = m.act_l(al[0], tail, &pk.apply(&xs[0]), &eval(f_tail, &xs[1..]));
                let last = m.act_r(head, al[n], &eval(f_head, &xs[..n]), &pk.apply(&xs[n]));
                out = vadd(&out, &vscale(&sign::<S>(n + 1), &last));
                for i in 1..=n {
                    let mut merged_tuple = al[..i - 1].to_vec();
                    merged_tuple.push(om.mul(al[i - 1], al[i]));
                    merged_tuple.extend_from_slice(&al[i + 1..]);
                    let mut args: Vec<Vec<S>> = xs[..i - 1].iter().map(|x| g.twist(x)).collect();
                    args.push(g.mul(al[i - 1], al[i], &xs[i - 1], &xs[i]));
                    args.extend(xs[i + 1..].iter().map(|x| g.twist(x)));
                    let term = eval(f.component(&merged_tuple, k), &args);
                    out = vadd(&out, &vscale(&sign::<S>(i), &term));
                }
                out
            })
        })
        .collect();
    Ok(Cochain::new(n + 1, components))
}

/// `(d x)_a(u) = R_a u . x - R_a(u ._r x) - R_a Phi(R_a u, x) - x . R_a u
/// + R_a(x ._l u) + R_a Phi(x, R_a u)`, without requiring `p x = x`.
pub(crate) fn rbf_delta0_unchecked<S: Scalar>(r: &TwistedRBFamily<S>, x: &[S]) -> Cochain<S> {
    let (a, m, c) = (r.algebra(), r.module(), r.cocycle());
    let components = (0..r.omega().size())
        .map(|al| {
            Tensor::from_images(a.dim(), &[m.dim()], |ix| {
                let u = m.v(ix[0]);
                let ru = r.r(al, &u);
                let left = vsub(&a.mul(&ru, x), &r.r(al, &vadd(&m.act_r(&u, x), &c.eval(&ru, x))));
                let right = vsub(&a.mul(x, &ru), &r.r(al, &vadd(&m.act_l(x, &u), &c.eval(x, &ru))));
                vsub(&left, &right)
            })
        })
        .collect();
    Cochain::new(1, components)
}

/// The differential of a twisted Rota-Baxter family written out in terms
/// of `R`, the actions and `Phi` (no intermediate Omega-bimodule).
pub fn rbf_differential_direct<S: Scalar>(r: &TwistedRBFamily<S>, f: &Cochain<S>) -> Result<Cochain<S>> {
    let (a, m, c, om) = (r.algebra(), r.module(), r.cocycle(), r.omega());
    let frame = Frame {
        k: om.size(),
        s: m.dim(),
        t: a.dim(),
        p_source: m.q(),
        q_target: a.p(),
    };
    frame.membership(f)?;
    let (k, s, t, n) = (frame.k, frame.s, frame.t, f.degree);
    if n == 0 {
        return Ok(rbf_delta0_unchecked(r, f.components[0].entries()));
    }
    let qk = m.q().pow(n - 1);
    let components = all_indices(&vec![k; n + 1])
        .into_iter()
        .map(|al| {
            let all = om.product(&al).expect("nonempty");
            let f_tail = f.component(&al[1..], k);
            let f_head = f.component(&al[..n], k);
            Tensor::from_images(t, &vec![s; n + 1], |ix| {
                let us: Vec<Vec<S>> = ix.iter().map(|&i| m.v(i)).collect();
                let q1 = qk.apply(&us[0]);
                let ru1 = r.r(al[0], &q1);
                let fv = eval(f_tail, &us[1..]);
                let mut out = vsub(
                    &a.mul(&ru1, &fv),
                    &r.r(all, &vadd(&m.act_r(&q1, &fv), &c.eval(&ru1, &fv))),
                );
                for i in 1..=n {
                    let (ui, uj) = (&us[i - 1], &us[i]);
                    let (rui, ruj) = (r.r(al[i - 1], ui), r.r(al[i], uj));
                    let merged = vadd(&vadd(&m.act_l(&rui, uj), &m.act_r(ui, &ruj)), &c.eval(&rui, &ruj));
                    let mut merged_tuple = al[..i - 1].to_vec();
                    merged_tuple.push(om.mul(al[i - 1], al[i]));
                    merged_tuple.extend_from_slice(&al[i + 1..]);
                    let mut args: Vec<Vec<S>> = us[..i - 1].iter().map(|u| m.twist(u)).collect();
                    args.push(merged);
                    args.extend(us[i + 1..].iter().map(|u| m.twist(u)));
                    let term = eval(f.component(&merged_tuple, k), &args);
                    out = vadd(&out, &vscale(&sign::<S>(i), &term));
                }
                let fu = eval(f_head, &us[..n]);
                let qn = qk.apply(&us[n]);
                let rv = r.r(al[n], &qn);
                let last = vsub(
                    &a.mul(&fu, &rv),
                    &r.r(all, &vadd(&m.act_l(&fu, &qn), &c.eval(&fu, &rv))),
                );
                vadd(&out, &vscale(&sign::<S>(n + 1), &last))
            })
        })
        .collect();
    Ok(Cochain::new(n + 1, components))
}

/// Both routes for the twisted-family differential; they must agree
/// exactly. Degree 0 needs a unital semigroup.
pub fn rbf_differential<S: Scalar>(r: &TwistedRBFamily<S>, f: &Cochain<S>) -> Result<Cochain<S>> {
    let data = operator_bimodule(r)?;
    rbf_differential_with(r, &data, f)
}

fn rbf_differential_with<S: Scalar>(
    r: &TwistedRBFamily<S>,
    data: &OmegaBimodule<S>,
    f: &Cochain<S>,
) -> Result<Cochain<S>> {
    if f.degree == 0 {
        r.omega().require_unit()?;
    }
    let direct = rbf_differential_direct(r, f)?;
    let generic = omega_differential(data, f)?;
    if direct != generic {
        return Err(Error::Consistency(format!(
            "the two degree-{} differentials of the operator family disagree",
            f.degree
        )));
    }
    Ok(direct)
}

#[derive(Clone, Debug)]
enum Source<S: Scalar> {
    Ha(HomBimodule<S>),
    Omega,
    Rbf(TwistedRBFamily<S>),
}

/// A complex ready for computation: the Omega-bimodule data every route
/// reduces to, the original structure, and the size limits.
#[derive(Clone, Debug)]
pub struct ComplexHandle<S: Scalar = Q> {
    data: OmegaBimodule<S>,
    source: Source<S>,
    degree_cap: usize,
    max_entries: u128,
}

impl<S: Scalar> ComplexHandle<S> {
    pub fn ha(m: HomBimodule<S>) -> Result<Self> {
        let report = check_bimodule(&m);
        if !report.passed {
            return Err(Error::Precondition(format!("bimodule check failed\n{report}")));
        }
        let alg = crate::hom::check_hom_algebra(m.algebra());
        if !alg.passed {
            return Err(Error::Precondition(format!("algebra check failed\n{alg}")));
        }
        Ok(Self::wrap(OmegaBimodule::from_hom_bimodule(&m), Source::Ha(m)))
    }

    pub fn omega(m: OmegaBimodule<S>) -> Result<Self> {
        let alg = check_omega_assoc(m.algebra());
        if !alg.passed {
            return Err(Error::Precondition(format!("algebra check failed\n{alg}")));
        }
        let report = check_omega_bimodule(&m);
        if !report.passed {
            return Err(Error::Precondition(format!("bimodule check failed\n{report}")));
        }
        Ok(Self::wrap(m, Source::Omega))
    }

    pub fn rbf(r: TwistedRBFamily<S>) -> Result<Self> {
        let report = check_twisted_rbf(&r);
        if !report.passed {
            return Err(Error::Precondition(format!("operator family check failed\n{report}")));
        }
        let data = operator_bimodule(&r)?;
        Ok(Self::wrap(data, Source::Rbf(r)))
    }

    fn wrap(data: OmegaBimodule<S>, source: Source<S>) -> Self {
        ComplexHandle {
            data,
            source,
            degree_cap: DEFAULT_DEGREE_CAP,
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn with_max_entries(mut self, max: u128) -> Self {
        self.max_entries = max;
        self
    }

    pub fn kind(&self) -> ComplexKind {
        match self.source {
            Source::Ha(_) => ComplexKind::Ha,
            Source::Omega => ComplexKind::Omega,
            Source::Rbf(_) => ComplexKind::Rbf,
        }
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// The Omega-bimodule whose generic differential this complex uses.
    pub fn omega_data(&self) -> &OmegaBimodule<S> {
        &self.data
    }

    pub fn semigroup_size(&self) -> usize {
        self.data.omega().size()
    }

    pub fn source_dim(&self) -> usize {
        self.data.algebra().dim()
    }

    pub fn target_dim(&self) -> usize {
        self.data.dim()
    }

    fn frame(&self) -> Frame<'_, S> {
        omega_frame(&self.data)
    }

    pub fn membership(&self, f: &Cochain<S>) -> Result<()> {
        self.frame().membership(f)
    }

    /// Entries of a degree-`n` cochain and of its constraint matrix.
    pub fn estimated_entries(&self, n: usize) -> u128 {
        let (k, s, t) = (
            self.semigroup_size() as u128,
            self.source_dim() as u128,
            self.target_dim() as u128,
        );
        let pow = |b: u128| (0..n).try_fold(1u128, |acc, _| acc.checked_mul(b)).unwrap_or(u128::MAX);
        let per = t.saturating_mul(pow(s));
        pow(k).saturating_mul(per).max(per.saturating_mul(per))
    }

    fn guard(&self, n: usize, cap: usize) -> Result<()> {
        let entries = self.estimated_entries(n);
        if n > cap {
            return Err(Error::DegreeCap {
                degree: n,
                entries,
                reason: format!("degree cap is {}", self.degree_cap),
            });
        }
        if entries > self.max_entries {
            return Err(Error::DegreeCap {
                degree: n,
                entries,
                reason: format!("more than {} entries", self.max_entries),
            });
        }
        Ok(())
    }

    pub fn differential(&self, f: &Cochain<S>) -> Result<Cochain<S>> {
        match &self.source {
            Source::Ha(m) => {
                let comp = f
                    .components
                    .first()
                    .ok_or_else(|| Error::Shape("empty cochain".into()))?;
                if f.components.len() != 1 {
                    return Err(Error::Shape("Hochschild cochains have one component".into()));
                }
                Ok(Cochain::new(
                    f.degree + 1,
                    vec![hochschild_differential(m, f.degree, comp)?],
                ))
            }
            Source::Omega => omega_differential(&self.data, f),
            Source::Rbf(r) => rbf_differential_with(r, &self.data, f),
        }
    }

    pub fn zero_cochain(&self, n: usize) -> Cochain<S> {
        let frame = self.frame();
        Cochain::new(n, vec![Tensor::zeros(frame.shape(n)); frame.components(n)])
    }
}

/// A basis of `C^n`: the constraint kernel of one component, repeated
/// for every index tuple.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: usize,
    pub components: usize,
    pub shape: Vec<usize>,
    pub per_component: Subspace,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.components * self.per_component.dim()
    }

    pub fn basis_element(&self, j: usize) -> Cochain<Q> {
        let per = self.per_component.dim();
        let (comp, idx) = (j / per, j % per);
        let components = (0..self.components)
            .map(|c| {
                if c == comp {
                    Tensor::new(self.shape.clone(), self.per_component.basis[idx].clone()).expect("sizes agree")
                } else {
                    Tensor::zeros(self.shape.clone())
                }
            })
            .collect();
        Cochain::new(self.degree, components)
    }

    pub fn basis(&self) -> Vec<Cochain<Q>> {
        (0..self.dim()).map(|j| self.basis_element(j)).collect()
    }

    pub fn combine(&self, coords: &[Q]) -> Cochain<Q> {
        let per = self.per_component.dim();
        let components = (0..self.components)
            .map(|c| {
                let v = if per == 0 {
                    vec![Q::from_integer(0.into()); self.per_component.ambient]
                } else {
                    self.per_component.combine(&coords[c * per..(c + 1) * per])
                };
                Tensor::new(self.shape.clone(), v).expect("sizes agree")
            })
            .collect();
        Cochain::new(self.degree, components)
    }

    pub fn coords(&self, f: &Cochain<Q>) -> Result<Vec<Q>> {
        let mut out = Vec::with_capacity(self.dim());
        for comp in &f.components {
            out.extend(self.per_component.coords(comp.entries())?);
        }
        Ok(out)
    }
}

/// Computes the space of degree-`n` cochains (up to one above the cap, so
/// the top differential has a target).
pub fn cochain_space(h: &ComplexHandle<Q>, n: usize) -> Result<CochainSpace> {
    h.guard(n, h.degree_cap + 1)?;
    if n == 0 && h.kind() != ComplexKind::Ha {
        h.data.omega().require_unit()?;
    }
    let frame = h.frame();
    let shape = frame.shape(n);
    let size: usize = shape.iter().product();
    let constraint = Matrix::from_columns(
        size,
        &(0..size)
            .map(|j| {
                let e = Tensor::new(shape.clone(), crate::matrix::unit(size, j)).expect("sizes agree");
                let mut img = e.postcompose(frame.q_target);
                let mut twisted = e.clone();
                for slot in 0..n {
                    twisted = twisted.precompose(slot, frame.p_source);
                }
                if n == 0 {
                    twisted = e;
                }
                img = img.sub(&twisted).expect("shapes agree");
                img.into_entries()
            })
            .collect::<Vec<_>>(),
    )?;
    Ok(CochainSpace {
        degree: n,
        components: frame.components(n),
        shape,
        per_component: Subspace::kernel_of(&constraint),
    })
}

pub fn cochain_basis(h: &ComplexHandle<Q>, n: usize) -> Result<Vec<Cochain<Q>>> {
    Ok(cochain_space(h, n)?.basis())
}

/// Column `j` holds the coordinates of the differential of basis element `j`.
pub fn differential_matrix(h: &ComplexHandle<Q>, n: usize) -> Result<Matrix<Q>> {
    h.guard(n, h.degree_cap)?;
    let source = cochain_space(h, n)?;
    let target = cochain_space(h, n + 1)?;
    let cols = (0..source.dim())
        .map(|j| target.coords(&h.differential(&source.basis_element(j))?))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(target.dim(), &cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub complex: ComplexKind,
    pub degree: usize,
    #[serde(rename = "dimC")]
    pub dim_c: usize,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
}

pub fn cohomology_dims(h: &ComplexHandle<Q>, n: usize) -> Result<CohomologyDims> {
    h.guard(n, h.degree_cap)?;
    let dim_c = cochain_space(h, n)?.dim();
    let dim_z = dim_c - rank(&differential_matrix(h, n)?);
    let dim_b = if n == 0 {
        0
    } else {
        rank(&differential_matrix(h, n - 1)?)
    };
    Ok(CohomologyDims {
        complex: h.kind(),
        degree: n,
        dim_c,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b,
    })
}

/// `xi(f) = psi o f o (phi^{-1})^{(x)n}` from the complex of `source` to the
/// complex of `target`; the chain-map identity is verified on `f`.
pub fn transport_cochain(
    m: &OperatorMorphism<Q>,
    source: &TwistedRBFamily<Q>,
    target: &TwistedRBFamily<Q>,
    f: &Cochain<Q>,
) -> Result<Cochain<Q>> {
    let report = check_operator_morphism(m, source, target)?;
    if !report.passed {
        return Err(Error::Precondition(format!("not an operator morphism\n{report}")));
    }
    let phi_inv = inverse(&m.phi)?;
    let xi = |g: &Cochain<Q>| -> Cochain<Q> {
        let components = g
            .components
            .iter()
            .map(|t| {
                let mut out = t.postcompose(&m.psi);
                for slot in 0..g.degree {
                    out = out.precompose(slot, &phi_inv);
                }
                out
            })
            .collect();
        Cochain::new(g.degree, components)
    };
    let image = xi(f);
    let lhs = xi(&rbf_differential(source, f)?);
    let rhs = rbf_differential(target, &image)?;
    if lhs != rhs {
        return Err(Error::Consistency(format!(
            "transport does not commute with the differential in degree {}",
            f.degree
        )));
    }
    Ok(image)
}
