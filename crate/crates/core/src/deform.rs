//! Linear deformations `R + t R1` of twisted Rota-Baxter families: the
//! order-wise conditions, the induced NS-family deformation, equivalence
//! through `(phi^t, psi^t)`, Nijenhuis elements, trivialization of
//! 1-cocycles and the rigidity probe.

use serde::Serialize;

use crate::cohomology::{
    cochain_space, cohomology_dims, differential_matrix, rbf_delta0_unchecked, rbf_differential, Cochain, ComplexHandle,
};
use crate::elim::{kernel_basis, solve};
use crate::error::{Error, Result};
use crate::family::{
    check_hom_ns_family, check_omega_assoc, ns_family_from_operator_unchecked, omega_assoc_from_ns_family_unchecked,
    operator_bimodule,
};
use crate::hom::expect_matrix;
use crate::matrix::{unit, vadd, vneg, vsub, Matrix};
use crate::operators::{check_twisted_rbf, morphism_laws, twisted_identity_residual, TwistedRBFamily};
use crate::report::{check_law, residual, Axis, LawOutcome, Report};
use crate::scalar::{format_rational, Trunc, Q};

pub const DEFAULT_ORDER: usize = 3;

/// `R^t = R + t R1`. The equivariance `R1_a q = p R1_a` is part of the
/// order-1 check rather than the constructor.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearDeformation {
    base: TwistedRBFamily<Q>,
    direction: Vec<Matrix<Q>>,
    order: usize,
}

impl LinearDeformation {
    pub fn new(base: TwistedRBFamily<Q>, direction: Vec<Matrix<Q>>) -> Result<Self> {
        Self::with_order(base, direction, DEFAULT_ORDER)
    }

    /// `order` is the truncation order reported alongside the deformation;
    /// the checks themselves work modulo `t^2` and `t^3`.
    pub fn with_order(base: TwistedRBFamily<Q>, direction: Vec<Matrix<Q>>, order: usize) -> Result<Self> {
        let (n, d, k) = (base.algebra().dim(), base.module().dim(), base.omega().size());
        if direction.len() != k {
            return Err(Error::Shape(format!(
                "direction has {} maps, expected {k}",
                direction.len()
            )));
        }
        for (a, m) in direction.iter().enumerate() {
            expect_matrix(&format!("direction map {a}"), m, n, d)?;
        }
        if order < 2 {
            return Err(Error::InvalidParameter("truncation order must be at least 2".into()));
        }
        Ok(LinearDeformation { base, direction, order })
    }

    pub fn base(&self) -> &TwistedRBFamily<Q> {
        &self.base
    }

    pub fn direction(&self) -> &[Matrix<Q>] {
        &self.direction
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `R1_a q = p R1_a` for every index.
    pub fn is_equivariant(&self) -> bool {
        let (q, p) = (self.base.module().q(), self.base.algebra().p());
        self.direction.iter().all(|m| m.mul(q).ok() == p.mul(m).ok())
    }

    pub fn direction_cochain(&self) -> Cochain<Q> {
        Cochain::from_maps(&self.direction)
    }

    /// `R + t R1` over polynomials truncated at `t^K`.
    pub fn family_t<const K: usize>(&self) -> TwistedRBFamily<Trunc<K>> {
        let t = Trunc::<K>::t();
        let maps = self
            .base
            .maps()
            .iter()
            .zip(&self.direction)
            .map(|(r, r1)| {
                r.lift::<Trunc<K>>()
                    .add(&r1.lift::<Trunc<K>>().scale(&t))
                    .expect("shapes agree")
            })
            .collect();
        self.base.lift::<Trunc<K>>().with_maps(maps).expect("shapes agree")
    }
}

fn require_base(r: &TwistedRBFamily<Q>) -> Result<()> {
    let report = check_twisted_rbf(r);
    if !report.passed {
        return Err(Error::Precondition(format!(
            "base operator family check failed\n{report}"
        )));
    }
    Ok(())
}

fn coefficient<const K: usize>(v: &[Trunc<K>], order: usize) -> Vec<Q> {
    v.iter().map(|x| x.coeff(order).clone()).collect()
}

/// Order-1 coefficient of the family identity for `R + t R1`, on all
/// basis pairs and index pairs.
fn order_law(d: &LinearDeformation, order: usize, name: &str) -> LawOutcome {
    let rt = d.family_t::<3>();
    let (k, dim) = (rt.omega().size(), rt.module().dim());
    check_law(
        name,
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::basis("u", dim),
            Axis::basis("v", dim),
        ],
        |i| {
            let m = rt.module();
            coefficient(
                &twisted_identity_residual(&rt, i[0], i[1], &m.v(i[2]), &m.v(i[3])),
                order,
            )
        },
    )
}

pub fn check_infinitesimal(d: &LinearDeformation) -> Result<Report> {
    require_base(&d.base)?;
    let mut report = Report::new("infinitesimal deformation");
    let (k, dim) = (d.base.omega().size(), d.base.module().dim());
    let (q, p) = (d.base.module().q(), d.base.algebra().p());
    let equivariance = check_law(
        "R1_a q = p R1_a",
        &[Axis::omega("alpha", k), Axis::basis("u", dim)],
        |i| {
            let r1 = &d.direction[i[0]];
            residual(r1.apply(&q.column(i[1])), p.apply(&r1.column(i[1])))
        },
    );
    let order1 = order_law(d, 1, "order-1 family identity");
    let cocycle = if equivariance.passed {
        rbf_differential(&d.base, &d.direction_cochain())?.is_zero()
    } else {
        false
    };
    if (order1.passed && equivariance.passed) != cocycle {
        return Err(Error::Consistency(
            "order-1 verdict disagrees with the cocycle condition".into(),
        ));
    }
    report.push(equivariance);
    report.push(order1);
    report.push(LawOutcome::verdict("R1 is a 1-cocycle", cocycle));
    report.flag(order_law(d, 2, "order-2 family identity"));
    Ok(report)
}

/// Deformed NS-family and Omega-associative products, checked modulo `t^2`.
pub fn deform_ns_family(d: &LinearDeformation) -> Result<Report> {
    let inf = check_infinitesimal(d)?;
    if !inf.passed {
        return Err(Error::Precondition(format!("not an infinitesimal deformation\n{inf}")));
    }
    deform_ns_family_unchecked(d)
}

/// Same as [`deform_ns_family`] without the order-1 precondition.
pub fn deform_ns_family_unchecked(d: &LinearDeformation) -> Result<Report> {
    require_base(&d.base)?;
    let rt = d.family_t::<2>();
    let ns = ns_family_from_operator_unchecked(&rt);
    let mut report = Report::new("deformed Hom-NS-family algebra (mod t^2)");
    report.absorb("NS-family", check_hom_ns_family(&ns));
    report.absorb(
        "Omega-associative",
        check_omega_assoc(&omega_assoc_from_ns_family_unchecked(&ns)),
    );
    Ok(report)
}

/// Helpers for a fixed `x` with the base family `R`.
struct Probe<'a> {
    r: &'a TwistedRBFamily<Q>,
    x: &'a [Q],
}

impl Probe<'_> {
    /// `xa - ax`.
    fn ad(&self, a: &[Q]) -> Vec<Q> {
        let alg = self.r.algebra();
        vsub(&alg.mul(self.x, a), &alg.mul(a, self.x))
    }

    /// `x ._l u - u ._r x + Phi(x, R_a u) - Phi(R_a u, x)`.
    fn dv(&self, alpha: usize, u: &[Q]) -> Vec<Q> {
        let (m, c) = (self.r.module(), self.r.cocycle());
        let ru = self.r.r(alpha, u);
        vadd(
            &vsub(&m.act_l(self.x, u), &m.act_r(u, self.x)),
            &vsub(&c.eval(self.x, &ru), &c.eval(&ru, self.x)),
        )
    }
}

pub fn check_nijenhuis_element(x: &[Q], r: &TwistedRBFamily<Q>) -> Result<Report> {
    let (a, m, c) = (r.algebra(), r.module(), r.cocycle());
    let (n, d, k) = (a.dim(), m.dim(), r.omega().size());
    if x.len() != n {
        return Err(Error::Shape(format!(
            "element has length {}, algebra has dimension {n}",
            x.len()
        )));
    }
    require_base(r)?;
    let bm = operator_bimodule(r)?;
    let pr = Probe { r, x };
    let mut report = Report::new("Nijenhuis element");
    report.push(check_law::<Q>("p(x) = x", &[], |_| residual(a.twist(x), x.to_vec())));
    report.push(check_law(
        "commutator law",
        &[Axis::omega("alpha", k), Axis::omega("beta", k), Axis::basis("u", d)],
        |i| {
            let u = m.v(i[2]);
            let w = vsub(&bm.act_l(i[0], i[1], &u, x), &bm.act_r(i[0], i[1], x, &u));
            residual(a.mul(x, &w), a.mul(&w, x))
        },
    ));
    let ab = [Axis::basis("a", n), Axis::basis("b", n)];
    report.push(check_law("algebra compatibility", &ab, |i| {
        let (aa, bb) = (a.e(i[0]), a.e(i[1]));
        let (xa, ax) = (a.mul(x, &aa), a.mul(&aa, x));
        let (xb, bx) = (a.mul(x, &bb), a.mul(&bb, x));
        vadd(
            &vsub(&vsub(&a.mul(&xa, &xb), &a.mul(&xa, &bx)), &a.mul(&ax, &xb)),
            &a.mul(&ax, &bx),
        )
    }));
    let alpha_ab = [Axis::omega("alpha", k), Axis::basis("a", n), Axis::basis("b", n)];
    report.push(check_law("cocycle compatibility, first order", &alpha_ab, |i| {
        let (aa, bb) = (a.e(i[1]), a.e(i[2]));
        let w = c.eval(&aa, &bb);
        let lhs = pr.dv(i[0], &w);
        let rhs = vadd(&c.eval(&pr.ad(&aa), &bb), &c.eval(&aa, &pr.ad(&bb)));
        residual(lhs, rhs)
    }));
    report.push(check_law("cocycle compatibility, second order", &ab, |i| {
        c.eval(&pr.ad(&a.e(i[0])), &pr.ad(&a.e(i[1])))
    }));
    let alpha_au = [Axis::omega("alpha", k), Axis::basis("a", n), Axis::basis("u", d)];
    report.push(check_law("left action compatibility, first order", &alpha_au, |i| {
        let (aa, u) = (a.e(i[1]), m.v(i[2]));
        let lhs = pr.dv(i[0], &m.act_l(&aa, &u));
        let rhs = vadd(&m.act_l(&pr.ad(&aa), &u), &m.act_l(&aa, &pr.dv(i[0], &u)));
        residual(lhs, rhs)
    }));
    report.push(check_law("left action compatibility, second order", &alpha_au, |i| {
        let (aa, u) = (a.e(i[1]), m.v(i[2]));
        m.act_l(&pr.ad(&aa), &pr.dv(i[0], &u))
    }));
    report.push(check_law("right action compatibility, first order", &alpha_au, |i| {
        let (aa, u) = (a.e(i[1]), m.v(i[2]));
        let lhs = pr.dv(i[0], &m.act_r(&u, &aa));
        let rhs = vadd(&m.act_r(&u, &pr.ad(&aa)), &m.act_r(&pr.dv(i[0], &u), &aa));
        residual(lhs, rhs)
    }));
    report.push(check_law("right action compatibility, second order", &alpha_au, |i| {
        let (aa, u) = (a.e(i[1]), m.v(i[2]));
        m.act_r(&pr.dv(i[0], &u), &pr.ad(&aa))
    }));
    report.note("second-order action laws read u ._l x as u ._r x");
    Ok(report)
}

/// `psi^t = Id + t(x. - .x)` on `L`.
fn psi_t<const K: usize>(r: &TwistedRBFamily<Q>, x: &[Q]) -> Matrix<Trunc<K>> {
    let a = r.algebra();
    let n = a.dim();
    let pr = Probe { r, x };
    let cols: Vec<Vec<Q>> = (0..n).map(|j| pr.ad(&a.e(j))).collect();
    perturbed_identity(n, &cols)
}

/// `phi^t_a = Id + t(x._l - ._r x + Phi(x, R_a -) - Phi(R_a -, x))` on `V`.
fn phi_t<const K: usize>(r: &TwistedRBFamily<Q>, x: &[Q]) -> Vec<Matrix<Trunc<K>>> {
    let d = r.module().dim();
    let pr = Probe { r, x };
    (0..r.omega().size())
        .map(|al| {
            let cols: Vec<Vec<Q>> = (0..d).map(|j| pr.dv(al, &unit(d, j))).collect();
            perturbed_identity(d, &cols)
        })
        .collect()
}

fn perturbed_identity<const K: usize>(n: usize, cols: &[Vec<Q>]) -> Matrix<Trunc<K>> {
    Matrix::from_fn(n, n, |i, j| {
        let c0 = if i == j {
            Q::from_integer(1.into())
        } else {
            Q::from_integer(0.into())
        };
        Trunc::linear(c0, cols[j][i].clone())
    })
}

/// Checks whether `(phi^t, psi^t)` built from `x` is a morphism from `d`
/// to `other`, modulo `t^2`. The order-2 parts are reported as flags.
pub fn check_equivalence(d: &LinearDeformation, other: &LinearDeformation, x: &[Q]) -> Result<Report> {
    if d.base != other.base {
        return Err(Error::Precondition(
            "deformations of different operator families".into(),
        ));
    }
    let r = &d.base;
    if x.len() != r.algebra().dim() {
        return Err(Error::Shape(format!(
            "element has length {}, algebra has dimension {}",
            x.len(),
            r.algebra().dim()
        )));
    }
    for (which, def) in [("first", d), ("second", other)] {
        let inf = check_infinitesimal(def)?;
        if !inf.passed {
            return Err(Error::Precondition(format!(
                "{which} deformation fails the order-1 check\n{inf}"
            )));
        }
    }
    if r.algebra().twist(x) != x {
        return Err(Error::Precondition("the element must satisfy p(x) = x".into()));
    }
    let mut report = Report::new("equivalence of deformations (mod t^2)");
    report.extend_laws(morphism_laws(
        &psi_t::<2>(r, x),
        &phi_t::<2>(r, x),
        &d.family_t::<2>(),
        &other.family_t::<2>(),
    ));
    for law in morphism_laws(
        &psi_t::<3>(r, x),
        &phi_t::<3>(r, x),
        &d.family_t::<3>(),
        &other.family_t::<3>(),
    ) {
        let mut flag = LawOutcome::verdict(format!("order-2 part of {}", law.law), !law.fails_at_order(2));
        flag.checked = law.checked;
        report.flag(flag);
    }
    // The t^2 coefficient of psi(ab) - psi(a)psi(b) is -(xa - ax)(xb - bx).
    let a = r.algebra();
    let pr = Probe { r, x };
    let psi3 = psi_t::<3>(r, x);
    let a3 = a.lift::<Trunc<3>>();
    let n = a.dim();
    report.flag(check_law(
        "order-2 multiplicativity residual equals -(xa - ax)(xb - bx)",
        &[Axis::basis("a", n), Axis::basis("b", n)],
        |i| {
            let (ea, eb) = (a3.e(i[0]), a3.e(i[1]));
            let res = residual(
                psi3.apply(&a3.mul(&ea, &eb)),
                a3.mul(&psi3.apply(&ea), &psi3.apply(&eb)),
            );
            let expected = vneg(&a.mul(&pr.ad(&a.e(i[0])), &pr.ad(&a.e(i[1]))));
            residual(coefficient(&res, 2), expected)
        },
    ));
    if report.passed {
        let diff: Vec<Matrix<Q>> = d
            .direction
            .iter()
            .zip(&other.direction)
            .map(|(m1, m2)| m1.sub(m2))
            .collect::<Result<_>>()?;
        let delta = rbf_delta0_unchecked(r, x);
        if Cochain::from_maps(&diff) != delta {
            return Err(Error::Consistency(
                "equivalent deformations whose difference is not the coboundary of x".into(),
            ));
        }
        report.note("R1 - R1' equals the coboundary of x");
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    /// `"particular"`, `"+k{i}"` or `"-k{i}"`.
    pub label: String,
    pub element: Vec<String>,
    pub nijenhuis: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trivialization {
    pub particular: Vec<Q>,
    pub kernel: Vec<Vec<Q>>,
    pub candidates: Vec<Candidate>,
}

impl Trivialization {
    /// First candidate that is a Nijenhuis element.
    pub fn nijenhuis_witness(&self) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.nijenhuis)
    }
}

fn format_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Solves `d x = f` over `{x : p x = x}`. `None` means `f` is not a
/// coboundary.
pub fn trivialize_cocycle(r: &TwistedRBFamily<Q>, f: &Cochain<Q>) -> Result<Option<Trivialization>> {
    require_base(r)?;
    if f.degree != 1 {
        return Err(Error::Shape(format!(
            "expected a degree-1 cochain, got degree {}",
            f.degree
        )));
    }
    if !rbf_differential(r, f)?.is_zero() {
        return Err(Error::Precondition("the cochain is not a cocycle".into()));
    }
    let n = r.algebra().dim();
    let images: Vec<Vec<Q>> = (0..n).map(|j| rbf_delta0_unchecked(r, &unit(n, j)).flatten()).collect();
    let rows = images.first().map_or(0, Vec::len);
    let p = r.algebra().p();
    let system = Matrix::from_fn(rows + n, n, |i, j| {
        if i < rows {
            images[j][i].clone()
        } else {
            let one = if i - rows == j {
                Q::from_integer(1.into())
            } else {
                Q::from_integer(0.into())
            };
            p.get(i - rows, j).clone() - one
        }
    });
    let mut rhs = f.flatten();
    rhs.resize(rows + n, Q::from_integer(0.into()));
    let Some((particular, kernel)) = solve(&system, &rhs)? else {
        return Ok(None);
    };
    let mut candidates = Vec::new();
    let mut push = |label: String, v: Vec<Q>| -> Result<()> {
        let nij = check_nijenhuis_element(&v, r)?.passed;
        candidates.push(Candidate {
            label,
            element: format_vec(&v),
            nijenhuis: nij,
        });
        Ok(())
    };
    push("particular".into(), particular.clone())?;
    for (i, b) in kernel.iter().enumerate() {
        push(format!("+k{i}"), vadd(&particular, b))?;
        push(format!("-k{i}"), vsub(&particular, b))?;
    }
    Ok(Some(Trivialization {
        particular,
        kernel,
        candidates,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidityVerdict {
    SufficientConditionMet,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleOutcome {
    pub cocycle: Vec<String>,
    pub coboundary: bool,
    pub witness: Option<Candidate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidityReport {
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub outcomes: Vec<CocycleOutcome>,
    pub verdict: RigidityVerdict,
}

/// Tests the rigidity criterion on a basis of `Z^1`: every basis cocycle
/// must be the coboundary of some candidate Nijenhuis element. Failing
/// that the answer is inconclusive, never "not rigid".
pub fn rigidity_probe(r: &TwistedRBFamily<Q>) -> Result<RigidityReport> {
    rigidity_probe_with(&ComplexHandle::rbf(r.clone())?, r)
}

pub fn rigidity_probe_with(h: &ComplexHandle<Q>, r: &TwistedRBFamily<Q>) -> Result<RigidityReport> {
    let dims = cohomology_dims(h, 1)?;
    let space = cochain_space(h, 1)?;
    let z1 = kernel_basis(&differential_matrix(h, 1)?);
    let mut outcomes = Vec::with_capacity(z1.len());
    for coords in &z1 {
        let f = space.combine(coords);
        let triv = trivialize_cocycle(r, &f)?;
        outcomes.push(CocycleOutcome {
            cocycle: format_vec(&f.flatten()),
            coboundary: triv.is_some(),
            witness: triv.as_ref().and_then(|t| t.nijenhuis_witness().cloned()),
        });
    }
    let met = outcomes.iter().all(|o| o.witness.is_some());
    Ok(RigidityReport {
        dim_z1: dims.dim_z,
        dim_b1: dims.dim_b,
        dim_h1: dims.dim_h,
        outcomes,
        verdict: if met {
            RigidityVerdict::SufficientConditionMet
        } else {
            RigidityVerdict::Inconclusive
        },
    })
}

/// The trivial infinitesimal deformation `R + t d x`.
pub fn coboundary_deformation(r: &TwistedRBFamily<Q>, x: &[Q]) -> Result<LinearDeformation> {
    if r.algebra().twist(x) != x {
        return Err(Error::Precondition("the element must satisfy p(x) = x".into()));
    }
    let maps = rbf_delta0_unchecked(r, x).to_maps()?;
    LinearDeformation::new(r.clone(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::HomAlgebra;
    use crate::operators::tensor_identity_family;
    use crate::scalar::q;
    use crate::semigroup::FiniteSemigroup;

    fn d1() -> TwistedRBFamily {
        let c2 = HomAlgebra::from_products(2, Matrix::identity(2), |i, j| unit(2, (i + j) % 2)).unwrap();
        tensor_identity_family(&c2, &FiniteSemigroup::cyclic(2).unwrap())
    }

    #[test]
    fn zero_direction_is_infinitesimal() {
        let r = d1();
        let zero = vec![Matrix::zeros(4, 2); 2];
        let d = LinearDeformation::new(r.clone(), zero).unwrap();
        let rep = check_infinitesimal(&d).unwrap();
        assert!(rep.passed);
        assert!(rep.flags[0].passed);
        assert!(deform_ns_family(&d).unwrap().passed);
        assert!(check_equivalence(&d, &d, &[q(0), q(0), q(0), q(0)]).unwrap().passed);
    }

    #[test]
    fn coboundary_directions_are_cocycles() {
        let r = d1();
        let x = vec![q(1), q(2), q(0), q(-1)];
        let d = coboundary_deformation(&r, &x).unwrap();
        assert!(check_infinitesimal(&d).unwrap().passed);
    }

    #[test]
    fn non_equivariant_direction_fails_order_one() {
        let p = Matrix::from_fn(2, 2, |i, j| if i == 0 && j == 0 { q(1) } else { q(0) });
        let a = HomAlgebra::from_products(2, p, |_, _| vec![q(0), q(0)]).unwrap();
        let c = crate::hom::TwoCocycle::zero(crate::hom::regular_bimodule(&a));
        let r = TwistedRBFamily::single(c, Matrix::zeros(2, 2)).unwrap();
        let m = Matrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { q(1) } else { q(0) });
        let d = LinearDeformation::new(r, vec![m]).unwrap();
        assert!(!d.is_equivariant());
        let rep = check_infinitesimal(&d).unwrap();
        assert!(!rep.passed);
        assert!(!rep.law("R1_a q = p R1_a").unwrap().passed);
        assert!(LinearDeformation::new(d1(), vec![Matrix::zeros(3, 2); 2]).is_err());
    }
}
