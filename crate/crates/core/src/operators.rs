//! Semigroup-indexed operator families: twisted Rota-Baxter families,
//! Nijenhuis families and weighted Rota-Baxter families, with their
//! checkers, morphisms, the graph characterization, and packings into a
//! single operator over `K Omega`.

use crate::elim::solve;
use crate::error::{Error, Result};
use crate::hom::{
    algebra_morphism_laws, check_two_cocycle, expect_matrix, semidirect_product_unchecked, tensor_algebra,
    tensor_bimodule, HomAlgebra, HomBimodule, TwoCocycle,
};
use crate::matrix::{block_diagonal, embed_block, unit, vadd, vneg, vscale, vsub, Matrix};
use crate::report::{check_law, residual, Axis, LawOutcome, Report};
use crate::scalar::{Scalar, Q};
use crate::semigroup::FiniteSemigroup;
use crate::tensor::Tensor;

fn check_family_shapes<S: Scalar>(
    what: &str,
    omega: &FiniteSemigroup,
    maps: &[Matrix<S>],
    rows: usize,
    cols: usize,
) -> Result<()> {
    if maps.len() != omega.size() {
        return Err(Error::Shape(format!(
            "{what} has {} maps, the semigroup has {} elements",
            maps.len(),
            omega.size()
        )));
    }
    for (a, m) in maps.iter().enumerate() {
        expect_matrix(&format!("{what} map {a}"), m, rows, cols)?;
    }
    Ok(())
}

/// `{R_alpha : V -> L}` twisted by a 2-cocycle `Phi`. Each `R_alpha` is an
/// `n x d` matrix whose columns are the images of the module basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedRBFamily<S: Scalar = Q> {
    cocycle: TwoCocycle<S>,
    omega: FiniteSemigroup,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> TwistedRBFamily<S> {
    pub fn new(cocycle: TwoCocycle<S>, omega: FiniteSemigroup, maps: Vec<Matrix<S>>) -> Result<Self> {
        let (n, d) = (cocycle.algebra().dim(), cocycle.module().dim());
        check_family_shapes("operator family", &omega, &maps, n, d)?;
        Ok(TwistedRBFamily { cocycle, omega, maps })
    }

    /// A single operator, i.e. a family over the trivial semigroup.
    pub fn single(cocycle: TwoCocycle<S>, r: Matrix<S>) -> Result<Self> {
        Self::new(cocycle, FiniteSemigroup::trivial(), vec![r])
    }

    pub fn zero(cocycle: TwoCocycle<S>, omega: FiniteSemigroup) -> Self {
        let (n, d) = (cocycle.algebra().dim(), cocycle.module().dim());
        let maps = vec![Matrix::zeros(n, d); omega.size()];
        TwistedRBFamily { cocycle, omega, maps }
    }

    /// Same host structures, different maps.
    pub fn with_maps(&self, maps: Vec<Matrix<S>>) -> Result<Self> {
        Self::new(self.cocycle.clone(), self.omega.clone(), maps)
    }

    pub fn cocycle(&self) -> &TwoCocycle<S> {
        &self.cocycle
    }

    pub fn module(&self) -> &HomBimodule<S> {
        self.cocycle.module()
    }

    pub fn algebra(&self) -> &HomAlgebra<S> {
        self.cocycle.algebra()
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.omega
    }

    pub fn maps(&self) -> &[Matrix<S>] {
        &self.maps
    }

    pub fn r(&self, alpha: usize, u: &[S]) -> Vec<S> {
        self.maps[alpha].apply(u)
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TwistedRBFamily<T> {
        TwistedRBFamily {
            cocycle: self.cocycle.map_scalars(&f),
            omega: self.omega.clone(),
            maps: self.maps.iter().map(|m| m.map(&f)).collect(),
        }
    }
}

impl TwistedRBFamily<Q> {
    pub fn lift<T: Scalar>(&self) -> TwistedRBFamily<T> {
        self.map_scalars(T::from_rational)
    }
}

/// `R_a u . R_b v - R_ab(R_a u ._l v + u ._r R_b v + Phi(R_a u, R_b v))`.
pub fn twisted_identity_residual<S: Scalar>(
    r: &TwistedRBFamily<S>,
    alpha: usize,
    beta: usize,
    u: &[S],
    v: &[S],
) -> Vec<S> {
    let (a, m, c) = (r.algebra(), r.module(), r.cocycle());
    let ru = r.r(alpha, u);
    let rv = r.r(beta, v);
    let lhs = a.mul(&ru, &rv);
    let inner = vadd(&vadd(&m.act_l(&ru, v), &m.act_r(u, &rv)), &c.eval(&ru, &rv));
    residual(lhs, r.r(r.omega.mul(alpha, beta), &inner))
}

pub fn check_twisted_rbf<S: Scalar>(r: &TwistedRBFamily<S>) -> Report {
    let (a, m) = (r.algebra(), r.module());
    let (k, d) = (r.omega.size(), m.dim());
    let mut report = Report::new("twisted Rota-Baxter family");
    report.push(check_law(
        "equivariance R_a q = p R_a",
        &[Axis::omega("alpha", k), Axis::basis("u", d)],
        |i| {
            let u = m.v(i[1]);
            residual(r.r(i[0], &m.twist(&u)), a.twist(&r.r(i[0], &u)))
        },
    ));
    report.push(check_law(
        "twisted family identity",
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::basis("u", d),
            Axis::basis("v", d),
        ],
        |i| twisted_identity_residual(r, i[0], i[1], &m.v(i[2]), &m.v(i[3])),
    ));
    report
}

/// `{N_alpha : L -> L}` on a Hom-associative algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisFamily<S: Scalar = Q> {
    algebra: HomAlgebra<S>,
    omega: FiniteSemigroup,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> NijenhuisFamily<S> {
    pub fn new(algebra: HomAlgebra<S>, omega: FiniteSemigroup, maps: Vec<Matrix<S>>) -> Result<Self> {
        let n = algebra.dim();
        check_family_shapes("Nijenhuis family", &omega, &maps, n, n)?;
        Ok(NijenhuisFamily { algebra, omega, maps })
    }

    pub fn algebra(&self) -> &HomAlgebra<S> {
        &self.algebra
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.omega
    }

    pub fn maps(&self) -> &[Matrix<S>] {
        &self.maps
    }

    pub fn n(&self, alpha: usize, x: &[S]) -> Vec<S> {
        self.maps[alpha].apply(x)
    }
}

fn nijenhuis_residual<S: Scalar>(
    a: &HomAlgebra<S>,
    omega: &FiniteSemigroup,
    maps: &[Matrix<S>],
    alpha: usize,
    beta: usize,
    x: &[S],
    y: &[S],
) -> Vec<S> {
    let ab = omega.mul(alpha, beta);
    let nx = maps[alpha].apply(x);
    let ny = maps[beta].apply(y);
    let inner = vsub(&vadd(&a.mul(&nx, y), &a.mul(x, &ny)), &maps[ab].apply(&a.mul(x, y)));
    residual(a.mul(&nx, &ny), maps[ab].apply(&inner))
}

pub fn check_nijenhuis_family<S: Scalar>(nf: &NijenhuisFamily<S>) -> Report {
    let a = &nf.algebra;
    let (k, n) = (nf.omega.size(), a.dim());
    let mut report = Report::new("Nijenhuis family");
    report.push(check_law(
        "commutes with p",
        &[Axis::omega("alpha", k), Axis::basis("x", n)],
        |i| {
            let x = a.e(i[1]);
            residual(a.twist(&nf.n(i[0], &x)), nf.n(i[0], &a.twist(&x)))
        },
    ));
    report.push(check_law(
        "Nijenhuis family identity",
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::basis("x", n),
            Axis::basis("y", n),
        ],
        |i| nijenhuis_residual(a, &nf.omega, &nf.maps, i[0], i[1], &a.e(i[2]), &a.e(i[3])),
    ));
    report
}

/// Default entry grid for the Nijenhuis search.
pub fn nijenhuis_grid() -> Vec<Q> {
    use crate::scalar::{frac, q};
    vec![q(0), q(1), q(-1), frac(1, 2), frac(-1, 2)]
}

pub const NIJENHUIS_SEARCH_CAP: u128 = 1_000_000;

/// Every Nijenhuis family whose matrix entries all lie in `grid`, in
/// lexicographic order of the entries. Refuses search spaces larger
/// than `cap` candidates.
pub fn search_nijenhuis_families(
    algebra: &HomAlgebra<Q>,
    omega: &FiniteSemigroup,
    grid: &[Q],
    cap: u128,
) -> Result<Vec<NijenhuisFamily<Q>>> {
    let n = algebra.dim();
    let k = omega.size();
    let per_entry = grid.len() as u128;
    let total = (0..n * n * k).try_fold(1u128, |acc, _| acc.checked_mul(per_entry));
    match total {
        Some(t) if t <= cap => {}
        _ => {
            return Err(Error::InvalidParameter(format!(
                "search space of {} candidates exceeds the cap of {cap}; supply an explicit candidate",
                total.map_or_else(|| "more than 2^128".to_string(), |t| t.to_string())
            )))
        }
    }
    // Single matrices commuting with p.
    let mut singles = Vec::new();
    let entries = n * n;
    let mut idx = vec![0usize; entries];
    loop {
        let m = Matrix::from_fn(n, n, |i, j| grid[idx[i * n + j]].clone());
        if m.mul(algebra.p()).unwrap() == algebra.p().mul(&m).unwrap() {
            singles.push(m);
        }
        let mut pos = entries;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
        }
        if idx.iter().all(|&i| i == 0) {
            break;
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Matrix> = Vec::with_capacity(k);
    extend_search(algebra, omega, &singles, &mut chosen, &mut out);
    Ok(out)
}

fn extend_search(
    a: &HomAlgebra<Q>,
    omega: &FiniteSemigroup,
    singles: &[Matrix],
    chosen: &mut Vec<Matrix>,
    out: &mut Vec<NijenhuisFamily<Q>>,
) {
    let k = omega.size();
    if chosen.len() == k {
        out.push(NijenhuisFamily {
            algebra: a.clone(),
            omega: omega.clone(),
            maps: chosen.clone(),
        });
        return;
    }
    let last = chosen.len();
    let n = a.dim();
    for m in singles {
        chosen.push(m.clone());
        // Every (alpha, beta) whose three indices are now assigned and
        // which involves the newest index.
        let ok = (0..=last).all(|al| {
            (0..=last).all(|be| {
                let ab = omega.mul(al, be);
                if ab > last || (al != last && be != last && ab != last) {
                    return true;
                }
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        nijenhuis_residual(a, omega, chosen, al, be, &a.e(i), &a.e(j))
                            .iter()
                            .all(num_traits::Zero::is_zero)
                    })
                })
            })
        });
        if ok {
            extend_search(a, omega, singles, chosen, out);
        }
        chosen.pop();
    }
}

/// `{T_alpha : L -> L}` of weight `lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedRBFamily<S: Scalar = Q> {
    algebra: HomAlgebra<S>,
    omega: FiniteSemigroup,
    weight: S,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> WeightedRBFamily<S> {
    pub fn new(algebra: HomAlgebra<S>, omega: FiniteSemigroup, weight: S, maps: Vec<Matrix<S>>) -> Result<Self> {
        let n = algebra.dim();
        check_family_shapes("weighted family", &omega, &maps, n, n)?;
        Ok(WeightedRBFamily {
            algebra,
            omega,
            weight,
            maps,
        })
    }

    pub fn algebra(&self) -> &HomAlgebra<S> {
        &self.algebra
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.omega
    }

    pub fn weight(&self) -> &S {
        &self.weight
    }

    pub fn maps(&self) -> &[Matrix<S>] {
        &self.maps
    }

    pub fn t(&self, alpha: usize, x: &[S]) -> Vec<S> {
        self.maps[alpha].apply(x)
    }
}

pub fn check_weighted_rbf<S: Scalar>(w: &WeightedRBFamily<S>) -> Report {
    let a = &w.algebra;
    let (k, n) = (w.omega.size(), a.dim());
    let mut report = Report::new("weighted Rota-Baxter family");
    report.push(check_law(
        "commutes with p",
        &[Axis::omega("alpha", k), Axis::basis("x", n)],
        |i| {
            let x = a.e(i[1]);
            residual(a.twist(&w.t(i[0], &x)), w.t(i[0], &a.twist(&x)))
        },
    ));
    report.push(check_law(
        "weighted family identity",
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::basis("x", n),
            Axis::basis("y", n),
        ],
        |i| {
            let (x, y) = (a.e(i[2]), a.e(i[3]));
            let tx = w.t(i[0], &x);
            let ty = w.t(i[1], &y);
            let inner = vadd(
                &vadd(&a.mul(&tx, &y), &a.mul(&x, &ty)),
                &vscale(&w.weight, &a.mul(&x, &y)),
            );
            residual(a.mul(&tx, &ty), w.t(w.omega.mul(i[0], i[1]), &inner))
        },
    ));
    report
}

/// A pair `(psi: L -> L', phi: V -> V')`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMorphism<S: Scalar = Q> {
    pub psi: Matrix<S>,
    pub phi: Matrix<S>,
}

pub fn check_operator_morphism<S: Scalar>(
    m: &OperatorMorphism<S>,
    source: &TwistedRBFamily<S>,
    target: &TwistedRBFamily<S>,
) -> Result<Report> {
    if source.omega != target.omega {
        return Err(Error::Shape(
            "operator families are indexed by different semigroups".into(),
        ));
    }
    expect_matrix("psi", &m.psi, target.algebra().dim(), source.algebra().dim())?;
    expect_matrix("phi", &m.phi, target.module().dim(), source.module().dim())?;
    let mut report = Report::new("operator morphism");
    report.extend_laws(morphism_laws(&m.psi, std::slice::from_ref(&m.phi), source, target));
    Ok(report)
}

/// The morphism laws for `psi` and a module map that may depend on the
/// semigroup index (`phis` has length 1 or `|Omega|`).
pub(crate) fn morphism_laws<S: Scalar>(
    psi: &Matrix<S>,
    phis: &[Matrix<S>],
    source: &TwistedRBFamily<S>,
    target: &TwistedRBFamily<S>,
) -> Vec<LawOutcome> {
    let (a, a2) = (source.algebra(), target.algebra());
    let (m, m2) = (source.module(), target.module());
    let (n, d, k, f) = (a.dim(), m.dim(), source.omega.size(), phis.len());
    let phi = |alpha: usize| &phis[alpha % f];
    let mut laws = algebra_morphism_laws(a, a2, psi, n);
    laws.push(check_law(
        "psi R_a = R'_a phi",
        &[Axis::omega("alpha", k), Axis::basis("u", d)],
        |i| {
            let u = m.v(i[1]);
            residual(psi.apply(&source.r(i[0], &u)), target.r(i[0], &phi(i[0]).apply(&u)))
        },
    ));
    laws.push(check_law(
        "phi Phi = Phi'(psi, psi)",
        &[Axis::omega("alpha", f), Axis::basis("x", n), Axis::basis("y", n)],
        |i| {
            let (x, y) = (a.e(i[1]), a.e(i[2]));
            residual(
                phi(i[0]).apply(&source.cocycle().eval(&x, &y)),
                target.cocycle().eval(&psi.apply(&x), &psi.apply(&y)),
            )
        },
    ));
    laws.push(check_law(
        "phi q = q' phi",
        &[Axis::omega("alpha", f), Axis::basis("u", d)],
        |i| {
            let u = m.v(i[1]);
            residual(phi(i[0]).apply(&m.twist(&u)), m2.twist(&phi(i[0]).apply(&u)))
        },
    ));
    laws.push(check_law(
        "phi(x.u) = psi(x).phi(u)",
        &[Axis::omega("alpha", f), Axis::basis("x", n), Axis::basis("u", d)],
        |i| {
            let (x, u) = (a.e(i[1]), m.v(i[2]));
            residual(
                phi(i[0]).apply(&m.act_l(&x, &u)),
                m2.act_l(&psi.apply(&x), &phi(i[0]).apply(&u)),
            )
        },
    ));
    laws.push(check_law(
        "phi(u.x) = phi(u).psi(x)",
        &[Axis::omega("alpha", f), Axis::basis("u", d), Axis::basis("x", n)],
        |i| {
            let (u, x) = (m.v(i[1]), a.e(i[2]));
            residual(
                phi(i[0]).apply(&m.act_r(&u, &x)),
                m2.act_r(&phi(i[0]).apply(&u), &psi.apply(&x)),
            )
        },
    ));
    laws
}

/// Decides the twisted family identity through graphs: each
/// `Gr(R_a) = {(R_a u, u)}` must be stable under `p (+) q` and
/// `Gr(R_a) Gr(R_b)` must lie in `Gr(R_ab)` inside the twisted semidirect
/// product. Membership is decided by exact linear solves.
pub fn graph_check(r: &TwistedRBFamily<Q>) -> Result<Report> {
    let cocycle_report = check_two_cocycle(r.cocycle());
    if !cocycle_report.passed {
        return Err(Error::Precondition(format!(
            "the semidirect product needs a valid cocycle\n{cocycle_report}"
        )));
    }
    let sd = semidirect_product_unchecked(r.cocycle());
    let (n, d, k) = (r.algebra().dim(), r.module().dim(), r.omega.size());
    let graphs: Vec<Matrix> = (0..k)
        .map(|al| {
            let cols: Vec<Vec<Q>> = (0..d)
                .map(|a| {
                    let mut w = r.r(al, &unit(d, a));
                    w.extend(unit::<Q>(d, a));
                    w
                })
                .collect();
            Matrix::from_columns(n + d, &cols).expect("graph columns")
        })
        .collect();
    let defect = |al: usize, w: &[Q]| -> Vec<Q> {
        let member = solve(&graphs[al], w).expect("shapes agree").is_some();
        if member {
            Vec::new()
        } else {
            let (x, u) = w.split_at(n);
            vsub(x, &r.r(al, u))
        }
    };
    let mut report = Report::new("graph characterization");
    report.push(check_law(
        "graph stable under p+q",
        &[Axis::omega("alpha", k), Axis::basis("u", d)],
        |i| defect(i[0], &sd.twist(&graphs[i[0]].column(i[1]))),
    ));
    report.push(check_law(
        "graph products contained",
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::basis("u", d),
            Axis::basis("v", d),
        ],
        |i| {
            let w = sd.mul(&graphs[i[0]].column(i[2]), &graphs[i[1]].column(i[3]));
            defect(r.omega.mul(i[0], i[1]), &w)
        },
    ));
    Ok(report)
}

/// The single operator `R-(u (x) a) = R_a u (x) a` from `V (x) K Omega` to
/// `L (x) K Omega`, twisted by the packed cocycle.
pub fn pack_operator<S: Scalar>(r: &TwistedRBFamily<S>) -> Result<TwistedRBFamily<S>> {
    let report = check_twisted_rbf(r);
    if !report.passed {
        return Err(Error::Precondition(format!("operator family check failed\n{report}")));
    }
    pack_operator_unchecked(r)
}

pub(crate) fn pack_operator_unchecked<S: Scalar>(r: &TwistedRBFamily<S>) -> Result<TwistedRBFamily<S>> {
    let (_, packed_cocycle) = tensor_bimodule(r.cocycle(), &r.omega)?;
    let (n, d, k) = (r.algebra().dim(), r.module().dim(), r.omega.size());
    let big = Matrix::from_fn(n * k, d * k, |i, j| {
        if i / n == j / d {
            r.maps[i / n].get(i % n, j % d).clone()
        } else {
            S::zero()
        }
    });
    TwistedRBFamily::single(packed_cocycle, big)
}

/// `Id_alpha(x) = x (x) alpha` from `L` into `L (x) K Omega`, twisted by
/// `Phi^(x (x) a, y (x) b) = -xy`.
pub fn tensor_identity_family<S: Scalar>(a: &HomAlgebra<S>, omega: &FiniteSemigroup) -> TwistedRBFamily<S> {
    let (_, _, cocycle) = crate::hom::tensor_semigroup_algebra(a, omega);
    TwistedRBFamily {
        cocycle,
        omega: omega.clone(),
        maps: identity_embeddings(a.dim(), omega.size()),
    }
}

fn identity_embeddings<S: Scalar>(n: usize, k: usize) -> Vec<Matrix<S>> {
    (0..k)
        .map(|al| Matrix::from_fn(n * k, n, |i, j| if i == al * n + j { S::one() } else { S::zero() }))
        .collect()
}

/// The structures induced by a Nijenhuis family on `L (x) K Omega`: the
/// product `._N`, the module `L`, the cocycle `Phi_N`, and the family
/// `Id_alpha` twisted by `Phi_N`.
pub fn nijenhuis_induced_data<S: Scalar>(nf: &NijenhuisFamily<S>) -> Result<TwistedRBFamily<S>> {
    let report = check_nijenhuis_family(nf);
    if !report.passed {
        return Err(Error::Precondition(format!("Nijenhuis family check failed\n{report}")));
    }
    let a = &nf.algebra;
    let (n, k) = (a.dim(), nf.omega.size());
    let big = n * k;
    let split = |ix: usize| (ix / n, a.e(ix % n));
    let mu = Tensor::from_images(big, &[big, big], |ix| {
        let ((al, x), (be, y)) = (split(ix[0]), split(ix[1]));
        let ab = nf.omega.mul(al, be);
        let v = vsub(
            &vadd(&a.mul(&nf.n(al, &x), &y), &a.mul(&x, &nf.n(be, &y))),
            &nf.n(ab, &a.mul(&x, &y)),
        );
        embed_block(&v, ab, k)
    });
    let algebra = HomAlgebra::new(mu, block_diagonal(a.p(), k))?;
    let left = Tensor::from_images(n, &[big, n], |ix| {
        let (al, x) = split(ix[0]);
        a.mul(&nf.n(al, &x), &a.e(ix[1]))
    });
    let right = Tensor::from_images(n, &[n, big], |ix| {
        let (be, x) = split(ix[1]);
        a.mul(&a.e(ix[0]), &nf.n(be, &x))
    });
    let module = HomBimodule::new(algebra, left, right, a.p().clone())?;
    let phi = Tensor::from_images(n, &[big, big], |ix| {
        let ((al, x), (be, y)) = (split(ix[0]), split(ix[1]));
        vneg(&nf.n(nf.omega.mul(al, be), &a.mul(&x, &y)))
    });
    let cocycle = TwoCocycle::new(module, phi)?;
    TwistedRBFamily::new(cocycle, nf.omega.clone(), identity_embeddings(n, k))
}

/// The Nijenhuis-type packing of the algebra alone (`L (x) K Omega` with
/// `._N`), handy when only the product is needed.
pub fn nijenhuis_product_algebra<S: Scalar>(nf: &NijenhuisFamily<S>) -> Result<HomAlgebra<S>> {
    Ok(nijenhuis_induced_data(nf)?.algebra().clone())
}

/// Plain tensor product algebra `L (x) K Omega`, re-exported for callers
/// that only hold an operator family.
pub fn host_tensor_algebra<S: Scalar>(r: &TwistedRBFamily<S>) -> HomAlgebra<S> {
    tensor_algebra(r.algebra(), &r.omega)
}
