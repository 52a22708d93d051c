//! Hom-NS-algebras, Hom-NS-family algebras, Hom-tridendriform family
//! algebras, Hom-Omega-associative algebras and their bimodules, with the
//! constructions that produce them from operator families.
//!
//! Hom-dendriform (family) algebras are NS instances whose `vee` products
//! vanish; the checkers add a note when that happens.

use crate::elim::rank_of;
use crate::error::{Error, Result};
use crate::hom::{expect_matrix, expect_shape, HomAlgebra};
use crate::matrix::{block_diagonal, embed_block, vadd, vneg, vsub, Matrix};
use crate::operators::{check_twisted_rbf, check_weighted_rbf, TwistedRBFamily, WeightedRBFamily};
use crate::report::{check_law, residual, Axis, LawOutcome, Report};
use crate::scalar::{Scalar, Q};
use crate::semigroup::FiniteSemigroup;
use crate::tensor::Tensor;

fn expect_products<S: Scalar>(what: &str, ts: &[Tensor<S>], count: usize, n: usize) -> Result<()> {
    if ts.len() != count {
        return Err(Error::Shape(format!(
            "{what}: expected {count} products, got {}",
            ts.len()
        )));
    }
    for (i, t) in ts.iter().enumerate() {
        expect_shape(&format!("{what} {i}"), t, &[n, n, n])?;
    }
    Ok(())
}

fn note_regularity<S: Scalar>(report: &mut Report, p: &Matrix<S>) {
    if let Ok(r) = rank_of(p) {
        if r == p.rows() {
            report.note("regular: the structure map is bijective");
        }
    }
}

/// Borrowed view of NS-family data. A plain NS-algebra is the view over
/// the trivial semigroup; a tridendriform family uses its `odot` for every
/// `vee_{a,b}`.
struct NsView<'a, S: Scalar> {
    n: usize,
    omega: &'a FiniteSemigroup,
    prec: Vec<&'a Tensor<S>>,
    succ: Vec<&'a Tensor<S>>,
    vee: Vec<&'a Tensor<S>>,
    p: &'a Matrix<S>,
}

impl<S: Scalar> NsView<'_, S> {
    fn k(&self) -> usize {
        self.omega.size()
    }

    fn pr(&self, a: usize, x: &[S], y: &[S]) -> Vec<S> {
        self.prec[a].bilinear(x, y)
    }

    fn su(&self, a: usize, x: &[S], y: &[S]) -> Vec<S> {
        self.succ[a].bilinear(x, y)
    }

    fn ve(&self, a: usize, b: usize, x: &[S], y: &[S]) -> Vec<S> {
        self.vee[a * self.k() + b].bilinear(x, y)
    }

    /// `x <_b y + x >_a y + x v_{a,b} y`.
    fn star(&self, a: usize, b: usize, x: &[S], y: &[S]) -> Vec<S> {
        vadd(&vadd(&self.pr(b, x, y), &self.su(a, x, y)), &self.ve(a, b, x, y))
    }

    fn e(&self, i: usize) -> Vec<S> {
        crate::matrix::unit(self.n, i)
    }

    fn tw(&self, x: &[S]) -> Vec<S> {
        self.p.apply(x)
    }

    fn vee_vanishes(&self) -> bool {
        self.vee.iter().all(|t| t.is_zero())
    }

    /// Multiplicativity of `p` and the three identities shared by NS and
    /// tridendriform families; the mixed `vee` identity when `mixed`.
    fn laws(&self, mixed: bool) -> Vec<LawOutcome> {
        let (n, k) = (self.n, self.k());
        let om = self.omega;
        let bx = |l| Axis::basis(l, n);
        let ox = |l| Axis::omega(l, k);
        let mut laws = vec![
            check_law("p(x<y) = p(x)<p(y)", &[ox("alpha"), bx("x"), bx("y")], |i| {
                let (x, y) = (self.e(i[1]), self.e(i[2]));
                residual(
                    self.tw(&self.pr(i[0], &x, &y)),
                    self.pr(i[0], &self.tw(&x), &self.tw(&y)),
                )
            }),
            check_law("p(x>y) = p(x)>p(y)", &[ox("alpha"), bx("x"), bx("y")], |i| {
                let (x, y) = (self.e(i[1]), self.e(i[2]));
                residual(
                    self.tw(&self.su(i[0], &x, &y)),
                    self.su(i[0], &self.tw(&x), &self.tw(&y)),
                )
            }),
            check_law(
                "p(x v y) = p(x) v p(y)",
                &[ox("alpha"), ox("beta"), bx("x"), bx("y")],
                |i| {
                    let (x, y) = (self.e(i[2]), self.e(i[3]));
                    residual(
                        self.tw(&self.ve(i[0], i[1], &x, &y)),
                        self.ve(i[0], i[1], &self.tw(&x), &self.tw(&y)),
                    )
                },
            ),
            check_law(
                "p(x) < (y*z) = (x<y) < p(z)",
                &[ox("alpha"), ox("beta"), bx("x"), bx("y"), bx("z")],
                |i| {
                    let (a, b) = (i[0], i[1]);
                    let (x, y, z) = (self.e(i[2]), self.e(i[3]), self.e(i[4]));
                    residual(
                        self.pr(om.mul(a, b), &self.tw(&x), &self.star(a, b, &y, &z)),
                        self.pr(b, &self.pr(a, &x, &y), &self.tw(&z)),
                    )
                },
            ),
            check_law(
                "(x>y) < p(z) = p(x) > (y<z)",
                &[ox("alpha"), ox("beta"), bx("x"), bx("y"), bx("z")],
                |i| {
                    let (a, b) = (i[0], i[1]);
                    let (x, y, z) = (self.e(i[2]), self.e(i[3]), self.e(i[4]));
                    residual(
                        self.pr(b, &self.su(a, &x, &y), &self.tw(&z)),
                        self.su(a, &self.tw(&x), &self.pr(b, &y, &z)),
                    )
                },
            ),
            check_law(
                "(x*y) > p(z) = p(x) > (y>z)",
                &[ox("alpha"), ox("beta"), bx("x"), bx("y"), bx("z")],
                |i| {
                    let (a, b) = (i[0], i[1]);
                    let (x, y, z) = (self.e(i[2]), self.e(i[3]), self.e(i[4]));
                    residual(
                        self.su(om.mul(a, b), &self.star(a, b, &x, &y), &self.tw(&z)),
                        self.su(a, &self.tw(&x), &self.su(b, &y, &z)),
                    )
                },
            ),
        ];
        if mixed {
            laws.push(check_law(
                "p(x)>(y v z) + p(x) v (y*z) = (x v y)<p(z) + (x*y) v p(z)",
                &[ox("alpha"), ox("beta"), ox("gamma"), bx("x"), bx("y"), bx("z")],
                |i| {
                    let (a, b, c) = (i[0], i[1], i[2]);
                    let (x, y, z) = (self.e(i[3]), self.e(i[4]), self.e(i[5]));
                    let (px, pz) = (self.tw(&x), self.tw(&z));
                    let lhs = vadd(
                        &self.su(a, &px, &self.ve(b, c, &y, &z)),
                        &self.ve(a, om.mul(b, c), &px, &self.star(b, c, &y, &z)),
                    );
                    let rhs = vadd(
                        &self.pr(c, &self.ve(a, b, &x, &y), &pz),
                        &self.ve(om.mul(a, b), c, &self.star(a, b, &x, &y), &pz),
                    );
                    residual(lhs, rhs)
                },
            ));
        }
        laws
    }

    /// Laws for `f` being a morphism into `other` (same semigroup).
    fn morphism_laws(&self, other: &NsView<'_, S>, f: &Matrix<S>) -> Vec<LawOutcome> {
        let (n, k) = (self.n, self.k());
        let bx = |l| Axis::basis(l, n);
        let ox = |l| Axis::omega(l, k);
        vec![
            check_law("f(x<y) = f(x)<f(y)", &[ox("alpha"), bx("x"), bx("y")], |i| {
                let (x, y) = (self.e(i[1]), self.e(i[2]));
                residual(
                    f.apply(&self.pr(i[0], &x, &y)),
                    other.pr(i[0], &f.apply(&x), &f.apply(&y)),
                )
            }),
            check_law("f(x>y) = f(x)>f(y)", &[ox("alpha"), bx("x"), bx("y")], |i| {
                let (x, y) = (self.e(i[1]), self.e(i[2]));
                residual(
                    f.apply(&self.su(i[0], &x, &y)),
                    other.su(i[0], &f.apply(&x), &f.apply(&y)),
                )
            }),
            check_law(
                "f(x v y) = f(x) v f(y)",
                &[ox("alpha"), ox("beta"), bx("x"), bx("y")],
                |i| {
                    let (x, y) = (self.e(i[2]), self.e(i[3]));
                    residual(
                        f.apply(&self.ve(i[0], i[1], &x, &y)),
                        other.ve(i[0], i[1], &f.apply(&x), &f.apply(&y)),
                    )
                },
            ),
            check_law("f p = p' f", &[bx("x")], |i| {
                let x = self.e(i[0]);
                residual(f.apply(&self.tw(&x)), other.tw(&f.apply(&x)))
            }),
        ]
    }
}

/// `(G, <, >, v, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomNSAlgebra<S: Scalar = Q> {
    prec: Tensor<S>,
    succ: Tensor<S>,
    vee: Tensor<S>,
    p: Matrix<S>,
}

impl<S: Scalar> HomNSAlgebra<S> {
    pub fn new(prec: Tensor<S>, succ: Tensor<S>, vee: Tensor<S>, p: Matrix<S>) -> Result<Self> {
        let n = p.rows();
        expect_matrix("structure map", &p, n, n)?;
        for (what, t) in [("prec", &prec), ("succ", &succ), ("vee", &vee)] {
            expect_shape(what, t, &[n, n, n])?;
        }
        Ok(HomNSAlgebra { prec, succ, vee, p })
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    pub fn prec(&self) -> &Tensor<S> {
        &self.prec
    }

    pub fn succ(&self) -> &Tensor<S> {
        &self.succ
    }

    pub fn vee(&self) -> &Tensor<S> {
        &self.vee
    }

    pub fn p(&self) -> &Matrix<S> {
        &self.p
    }

    fn view<'a>(&'a self, triv: &'a FiniteSemigroup) -> NsView<'a, S> {
        NsView {
            n: self.dim(),
            omega: triv,
            prec: vec![&self.prec],
            succ: vec![&self.succ],
            vee: vec![&self.vee],
            p: &self.p,
        }
    }
}

pub fn check_hom_ns<S: Scalar>(a: &HomNSAlgebra<S>) -> Report {
    let triv = FiniteSemigroup::trivial();
    let view = a.view(&triv);
    let mut report = Report::new("Hom-NS-algebra");
    report.extend_laws(view.laws(true));
    if view.vee_vanishes() {
        report.note("vee vanishes: Hom-dendriform");
    }
    note_regularity(&mut report, &a.p);
    report
}

/// Checks that `f` is a morphism of Hom-NS-algebras.
pub fn check_ns_morphism<S: Scalar>(
    source: &HomNSAlgebra<S>,
    target: &HomNSAlgebra<S>,
    f: &Matrix<S>,
) -> Result<Report> {
    expect_matrix("NS morphism", f, target.dim(), source.dim())?;
    let triv = FiniteSemigroup::trivial();
    let mut report = Report::new("Hom-NS-algebra morphism");
    report.extend_laws(source.view(&triv).morphism_laws(&target.view(&triv), f));
    Ok(report)
}

/// The Hom-associative algebra `(G, x*y = x<y + x>y + x v y, p)`.
pub fn total_product<S: Scalar>(a: &HomNSAlgebra<S>) -> HomAlgebra<S> {
    let mu = a.prec.add(&a.succ).and_then(|t| t.add(&a.vee)).expect("shapes agree");
    HomAlgebra::new(mu, a.p.clone()).expect("shapes agree")
}

/// `(G, {<_a, >_a, v_{a,b}}, p)`. `vee[a * |Omega| + b]` holds `v_{a,b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomNSFamilyAlgebra<S: Scalar = Q> {
    omega: FiniteSemigroup,
    prec: Vec<Tensor<S>>,
    succ: Vec<Tensor<S>>,
    vee: Vec<Tensor<S>>,
    p: Matrix<S>,
}

impl<S: Scalar> HomNSFamilyAlgebra<S> {
    pub fn new(
        omega: FiniteSemigroup,
        prec: Vec<Tensor<S>>,
        succ: Vec<Tensor<S>>,
        vee: Vec<Tensor<S>>,
        p: Matrix<S>,
    ) -> Result<Self> {
        let (n, k) = (p.rows(), omega.size());
        expect_matrix("structure map", &p, n, n)?;
        expect_products("prec", &prec, k, n)?;
        expect_products("succ", &succ, k, n)?;
        expect_products("vee", &vee, k * k, n)?;
        Ok(HomNSFamilyAlgebra {
            omega,
            prec,
            succ,
            vee,
            p,
        })
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.omega
    }

    pub fn prec(&self, alpha: usize) -> &Tensor<S> {
        &self.prec[alpha]
    }

    pub fn succ(&self, alpha: usize) -> &Tensor<S> {
        &self.succ[alpha]
    }

    pub fn vee(&self, alpha: usize, beta: usize) -> &Tensor<S> {
        &self.vee[alpha * self.omega.size() + beta]
    }

    pub fn p(&self) -> &Matrix<S> {
        &self.p
    }

    fn view(&self) -> NsView<'_, S> {
        NsView {
            n: self.dim(),
            omega: &self.omega,
            prec: self.prec.iter().collect(),
            succ: self.succ.iter().collect(),
            vee: self.vee.iter().collect(),
            p: &self.p,
        }
    }
}

pub fn check_hom_ns_family<S: Scalar>(g: &HomNSFamilyAlgebra<S>) -> Report {
    let view = g.view();
    let mut report = Report::new("Hom-NS-family algebra");
    report.extend_laws(view.laws(true));
    if view.vee_vanishes() {
        report.note("vee vanishes: Hom-dendriform family");
    }
    note_regularity(&mut report, &g.p);
    report
}

pub fn check_ns_family_morphism<S: Scalar>(
    source: &HomNSFamilyAlgebra<S>,
    target: &HomNSFamilyAlgebra<S>,
    f: &Matrix<S>,
) -> Result<Report> {
    if source.omega != target.omega {
        return Err(Error::Shape("NS-family algebras over different semigroups".into()));
    }
    expect_matrix("NS-family morphism", f, target.dim(), source.dim())?;
    let mut report = Report::new("Hom-NS-family morphism");
    report.extend_laws(source.view().morphism_laws(&target.view(), f));
    Ok(report)
}

/// Every index carries the same products.
pub fn constant_ns_family<S: Scalar>(a: &HomNSAlgebra<S>, omega: &FiniteSemigroup) -> HomNSFamilyAlgebra<S> {
    let k = omega.size();
    HomNSFamilyAlgebra {
        omega: omega.clone(),
        prec: vec![a.prec.clone(); k],
        succ: vec![a.succ.clone(); k],
        vee: vec![a.vee.clone(); k * k],
        p: a.p.clone(),
    }
}

/// The Hom-NS-algebra on `G (x) K Omega`: `(a (x) al) < (b (x) be) = (a <_be b) (x) al be`,
/// `>` uses `>_al`, `v` uses `v_{al,be}`. Basis index `al * n + i`.
pub fn ns_family_pack<S: Scalar>(g: &HomNSFamilyAlgebra<S>) -> Result<HomNSAlgebra<S>> {
    let report = check_hom_ns_family(g);
    if !report.passed {
        return Err(Error::Precondition(format!("NS-family check failed\n{report}")));
    }
    Ok(ns_family_pack_unchecked(g))
}

pub(crate) fn ns_family_pack_unchecked<S: Scalar>(g: &HomNSFamilyAlgebra<S>) -> HomNSAlgebra<S> {
    let (n, k) = (g.dim(), g.omega.size());
    let big = n * k;
    let build = |ts: &[Tensor<S>], pick: &dyn Fn(usize, usize) -> usize| {
        Tensor::from_images(big, &[big, big], |ix| {
            let (al, i) = (ix[0] / n, ix[0] % n);
            let (be, j) = (ix[1] / n, ix[1] % n);
            let v = ts[pick(al, be)].basis_image(&[i, j]);
            embed_block(&v, g.omega.mul(al, be), k)
        })
    };
    HomNSAlgebra {
        prec: build(&g.prec, &|_, be| be),
        succ: build(&g.succ, &|al, _| al),
        vee: build(&g.vee, &|al, be| al * k + be),
        p: block_diagonal(&g.p, k),
    }
}

/// `f-(a (x) al) = f(a) (x) al` for a family morphism `f`, together with the
/// report checking it is a morphism of the packed NS-algebras.
pub fn pack_ns_family_morphism<S: Scalar>(
    source: &HomNSFamilyAlgebra<S>,
    target: &HomNSFamilyAlgebra<S>,
    f: &Matrix<S>,
) -> Result<(Matrix<S>, Report)> {
    let family_report = check_ns_family_morphism(source, target, f)?;
    if !family_report.passed {
        return Err(Error::Precondition(format!("not a family morphism\n{family_report}")));
    }
    let packed = block_diagonal(f, source.omega.size());
    let report = check_ns_morphism(&ns_family_pack(source)?, &ns_family_pack(target)?, &packed)?;
    Ok((packed, report))
}

/// `u <_a v = u ._r R_a v`, `u >_a v = R_a u ._l v`,
/// `u v_{a,b} v = Phi(R_a u, R_b v)` on `V`, structure map `q`.
pub fn ns_family_from_operator<S: Scalar>(r: &TwistedRBFamily<S>) -> Result<HomNSFamilyAlgebra<S>> {
    let report = check_twisted_rbf(r);
    if !report.passed {
        return Err(Error::Precondition(format!("operator family check failed\n{report}")));
    }
    Ok(ns_family_from_operator_unchecked(r))
}

pub(crate) fn ns_family_from_operator_unchecked<S: Scalar>(r: &TwistedRBFamily<S>) -> HomNSFamilyAlgebra<S> {
    let m = r.module();
    let (d, k) = (m.dim(), r.omega().size());
    let prec = (0..k)
        .map(|al| Tensor::from_images(d, &[d, d], |ix| m.act_r(&m.v(ix[0]), &r.r(al, &m.v(ix[1])))))
        .collect();
    let succ = (0..k)
        .map(|al| Tensor::from_images(d, &[d, d], |ix| m.act_l(&r.r(al, &m.v(ix[0])), &m.v(ix[1]))))
        .collect();
    let vee = (0..k * k)
        .map(|ab| {
            let (al, be) = (ab / k, ab % k);
            Tensor::from_images(d, &[d, d], |ix| {
                r.cocycle().eval(&r.r(al, &m.v(ix[0])), &r.r(be, &m.v(ix[1])))
            })
        })
        .collect();
    HomNSFamilyAlgebra {
        omega: r.omega().clone(),
        prec,
        succ,
        vee,
        p: m.q().clone(),
    }
}

/// The Hom-NS-algebra of a single twisted operator (trivial semigroup).
pub fn ns_algebra_from_operator<S: Scalar>(r: &TwistedRBFamily<S>) -> Result<HomNSAlgebra<S>> {
    if !r.omega().is_trivial() {
        return Err(Error::InvalidParameter(
            "a single operator is indexed by the trivial semigroup".into(),
        ));
    }
    let g = ns_family_from_operator(r)?;
    Ok(HomNSAlgebra {
        prec: g.prec[0].clone(),
        succ: g.succ[0].clone(),
        vee: g.vee[0].clone(),
        p: g.p,
    })
}

/// `(G, {<_a, >_a}, odot, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomTridendFamily<S: Scalar = Q> {
    omega: FiniteSemigroup,
    prec: Vec<Tensor<S>>,
    succ: Vec<Tensor<S>>,
    odot: Tensor<S>,
    p: Matrix<S>,
}

impl<S: Scalar> HomTridendFamily<S> {
    pub fn new(
        omega: FiniteSemigroup,
        prec: Vec<Tensor<S>>,
        succ: Vec<Tensor<S>>,
        odot: Tensor<S>,
        p: Matrix<S>,
    ) -> Result<Self> {
        let (n, k) = (p.rows(), omega.size());
        expect_matrix("structure map", &p, n, n)?;
        expect_products("prec", &prec, k, n)?;
        expect_products("succ", &succ, k, n)?;
        expect_shape("odot", &odot, &[n, n, n])?;
        Ok(HomTridendFamily {
            omega,
            prec,
            succ,
            odot,
            p,
        })
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.omega
    }

    pub fn prec(&self, alpha: usize) -> &Tensor<S> {
        &self.prec[alpha]
    }

    pub fn succ(&self, alpha: usize) -> &Tensor<S> {
        &self.succ[alpha]
    }

    pub fn odot(&self) -> &Tensor<S> {
        &self.odot
    }

    pub fn p(&self) -> &Matrix<S> {
        &self.p
    }

    fn view(&self) -> NsView<'_, S> {
        let k = self.omega.size();
        NsView {
            n: self.dim(),
            omega: &self.omega,
            prec: self.prec.iter().collect(),
            succ: self.succ.iter().collect(),
            vee: vec![&self.odot; k * k],
            p: &self.p,
        }
    }
}

pub fn check_tridend_family<S: Scalar>(t: &HomTridendFamily<S>) -> Report {
    let view = t.view();
    let (n, k) = (t.dim(), t.omega.size());
    let o = |x: &[S], y: &[S]| t.odot.bilinear(x, y);
    let mut report = Report::new("Hom-tridendriform family algebra");
    report.extend_laws(view.laws(false));
    let triple = [
        Axis::omega("alpha", k),
        Axis::basis("x", n),
        Axis::basis("y", n),
        Axis::basis("z", n),
    ];
    let args = |i: &[usize]| (view.e(i[1]), view.e(i[2]), view.e(i[3]));
    report.push(check_law("(x>y) o p(z) = p(x) > (y o z)", &triple, |i| {
        let (x, y, z) = args(i);
        residual(
            o(&view.su(i[0], &x, &y), &view.tw(&z)),
            view.su(i[0], &view.tw(&x), &o(&y, &z)),
        )
    }));
    report.push(check_law("(x<y) o p(z) = p(x) o (y>z)", &triple, |i| {
        let (x, y, z) = args(i);
        residual(
            o(&view.pr(i[0], &x, &y), &view.tw(&z)),
            o(&view.tw(&x), &view.su(i[0], &y, &z)),
        )
    }));
    report.push(check_law("(x o y) < p(z) = p(x) o (y<z)", &triple, |i| {
        let (x, y, z) = args(i);
        residual(
            view.pr(i[0], &o(&x, &y), &view.tw(&z)),
            o(&view.tw(&x), &view.pr(i[0], &y, &z)),
        )
    }));
    report.push(check_law(
        "(x o y) o p(z) = p(x) o (y o z)",
        &[Axis::basis("x", n), Axis::basis("y", n), Axis::basis("z", n)],
        |i| {
            let (x, y, z) = (view.e(i[0]), view.e(i[1]), view.e(i[2]));
            residual(o(&o(&x, &y), &view.tw(&z)), o(&view.tw(&x), &o(&y, &z)))
        },
    ));
    if t.odot.is_zero() {
        report.note("odot vanishes: Hom-dendriform family");
    }
    report
}

/// `x <_a y = x T_a y`, `x >_a y = T_a x y`, `x o y = lambda x y`.
pub fn tridend_from_weighted_rbf<S: Scalar>(w: &WeightedRBFamily<S>) -> Result<HomTridendFamily<S>> {
    let report = check_weighted_rbf(w);
    if !report.passed {
        return Err(Error::Precondition(format!("weighted family check failed\n{report}")));
    }
    let a = w.algebra();
    let (n, k) = (a.dim(), w.omega().size());
    let prec = (0..k)
        .map(|al| Tensor::from_images(n, &[n, n], |ix| a.mul(&a.e(ix[0]), &w.t(al, &a.e(ix[1])))))
        .collect();
    let succ = (0..k)
        .map(|al| Tensor::from_images(n, &[n, n], |ix| a.mul(&w.t(al, &a.e(ix[0])), &a.e(ix[1]))))
        .collect();
    Ok(HomTridendFamily {
        omega: w.omega().clone(),
        prec,
        succ,
        odot: a.mu().scale(w.weight()),
        p: a.p().clone(),
    })
}

/// Same `<_a`, `>_a`, with `v_{a,b} = odot` for all indices.
pub fn ns_family_from_tridend<S: Scalar>(t: &HomTridendFamily<S>) -> Result<HomNSFamilyAlgebra<S>> {
    let report = check_tridend_family(t);
    if !report.passed {
        return Err(Error::Precondition(format!(
            "tridendriform family check failed\n{report}"
        )));
    }
    let k = t.omega.size();
    Ok(HomNSFamilyAlgebra {
        omega: t.omega.clone(),
        prec: t.prec.clone(),
        succ: t.succ.clone(),
        vee: vec![t.odot.clone(); k * k],
        p: t.p.clone(),
    })
}

/// Yau twist by `m`: products `x <^m_a y = m(x) <_a m(y)` (and likewise),
/// structure map `m p`. `m` must be a family morphism of `g` to itself.
pub fn yau_twist_ns_family<S: Scalar>(g: &HomNSFamilyAlgebra<S>, m: &Matrix<S>) -> Result<HomNSFamilyAlgebra<S>> {
    let report = check_ns_family_morphism(g, g, m)?;
    if !report.passed {
        return Err(Error::Precondition(format!(
            "twisting map is not an endomorphism\n{report}"
        )));
    }
    let twist = |t: &Tensor<S>| t.precompose(0, m).precompose(1, m);
    Ok(HomNSFamilyAlgebra {
        omega: g.omega.clone(),
        prec: g.prec.iter().map(twist).collect(),
        succ: g.succ.iter().map(twist).collect(),
        vee: g.vee.iter().map(twist).collect(),
        p: m.mul(&g.p)?,
    })
}

/// `(G, {._{a,b}}, p)`. `products[a * |Omega| + b]` holds `._{a,b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaAssocAlgebra<S: Scalar = Q> {
    omega: FiniteSemigroup,
    products: Vec<Tensor<S>>,
    p: Matrix<S>,
}

impl<S: Scalar> OmegaAssocAlgebra<S> {
    pub fn new(omega: FiniteSemigroup, products: Vec<Tensor<S>>, p: Matrix<S>) -> Result<Self> {
        let (n, k) = (p.rows(), omega.size());
        expect_matrix("structure map", &p, n, n)?;
        expect_products("product", &products, k * k, n)?;
        Ok(OmegaAssocAlgebra { omega, products, p })
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.omega
    }

    pub fn product(&self, alpha: usize, beta: usize) -> &Tensor<S> {
        &self.products[alpha * self.omega.size() + beta]
    }

    pub fn p(&self) -> &Matrix<S> {
        &self.p
    }

    pub fn mul(&self, alpha: usize, beta: usize, x: &[S], y: &[S]) -> Vec<S> {
        self.product(alpha, beta).bilinear(x, y)
    }

    pub fn twist(&self, x: &[S]) -> Vec<S> {
        self.p.apply(x)
    }

    pub fn e(&self, i: usize) -> Vec<S> {
        crate::matrix::unit(self.dim(), i)
    }

    /// Ordinary Hom-associative algebra viewed over the trivial semigroup.
    pub fn from_hom_algebra(a: &HomAlgebra<S>) -> Self {
        OmegaAssocAlgebra {
            omega: FiniteSemigroup::trivial(),
            products: vec![a.mu().clone()],
            p: a.p().clone(),
        }
    }
}

pub fn check_omega_assoc<S: Scalar>(g: &OmegaAssocAlgebra<S>) -> Report {
    let (n, k) = (g.dim(), g.omega.size());
    let mut report = Report::new("Hom-Omega-associative algebra");
    report.push(check_law(
        "p(x.y) = p(x).p(y)",
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::basis("x", n),
            Axis::basis("y", n),
        ],
        |i| {
            let (x, y) = (g.e(i[2]), g.e(i[3]));
            residual(
                g.twist(&g.mul(i[0], i[1], &x, &y)),
                g.mul(i[0], i[1], &g.twist(&x), &g.twist(&y)),
            )
        },
    ));
    report.push(check_law(
        "p(x)._{a,bc}(y._{b,c}z) = (x._{a,b}y)._{ab,c}p(z)",
        &[
            Axis::omega("alpha", k),
            Axis::omega("beta", k),
            Axis::omega("gamma", k),
            Axis::basis("x", n),
            Axis::basis("y", n),
            Axis::basis("z", n),
        ],
        |i| {
            let (a, b, c) = (i[0], i[1], i[2]);
            let (x, y, z) = (g.e(i[3]), g.e(i[4]), g.e(i[5]));
            residual(
                g.mul(a, g.omega.mul(b, c), &g.twist(&x), &g.mul(b, c, &y, &z)),
                g.mul(g.omega.mul(a, b), c, &g.mul(a, b, &x, &y), &g.twist(&z)),
            )
        },
    ));
    report
}

/// `x *_{a,b} y = x <_b y + x >_a y + x v_{a,b} y`.
pub fn omega_assoc_from_ns_family<S: Scalar>(g: &HomNSFamilyAlgebra<S>) -> Result<OmegaAssocAlgebra<S>> {
    let report = check_hom_ns_family(g);
    if !report.passed {
        return Err(Error::Precondition(format!("NS-family check failed\n{report}")));
    }
    Ok(omega_assoc_from_ns_family_unchecked(g))
}

pub(crate) fn omega_assoc_from_ns_family_unchecked<S: Scalar>(g: &HomNSFamilyAlgebra<S>) -> OmegaAssocAlgebra<S> {
    let k = g.omega.size();
    let products = (0..k * k)
        .map(|ab| {
            let (al, be) = (ab / k, ab % k);
            g.prec[be]
                .add(&g.succ[al])
                .and_then(|t| t.add(&g.vee[ab]))
                .expect("shapes agree")
        })
        .collect();
    OmegaAssocAlgebra {
        omega: g.omega.clone(),
        products,
        p: g.p.clone(),
    }
}

/// A bimodule `(V, {l_{a,b}, r_{a,b}}, q)` over a Hom-Omega-associative
/// algebra. `left[a*k+b]` has shape `(d, n, d)`, `right[a*k+b]` shape `(d, d, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaBimodule<S: Scalar = Q> {
    algebra: OmegaAssocAlgebra<S>,
    left: Vec<Tensor<S>>,
    right: Vec<Tensor<S>>,
    q: Matrix<S>,
}

impl<S: Scalar> OmegaBimodule<S> {
    pub fn new(
        algebra: OmegaAssocAlgebra<S>,
        left: Vec<Tensor<S>>,
        right: Vec<Tensor<S>>,
        q: Matrix<S>,
    ) -> Result<Self> {
        let (n, k, d) = (algebra.dim(), algebra.omega.size(), q.rows());
        expect_matrix("module structure map", &q, d, d)?;
        for (what, ts, shape) in [("left action", &left, [d, n, d]), ("right action", &right, [d, d, n])] {
            if ts.len() != k * k {
                return Err(Error::Shape(format!(
                    "{what}: expected {} tensors, got {}",
                    k * k,
                    ts.len()
                )));
            }
            for t in ts {
                expect_shape(what, t, &shape)?;
            }
        }
        Ok(OmegaBimodule {
            algebra,
            left,
            right,
            q,
        })
    }

    /// The zero module of dimension `d`.
    pub fn zero(algebra: OmegaAssocAlgebra<S>, d: usize) -> Self {
        let (n, k) = (algebra.dim(), algebra.omega.size());
        OmegaBimodule {
            left: vec![Tensor::zeros(vec![d, n, d]); k * k],
            right: vec![Tensor::zeros(vec![d, d, n]); k * k],
            algebra,
            q: Matrix::zeros(d, d),
        }
    }

    pub fn algebra(&self) -> &OmegaAssocAlgebra<S> {
        &self.algebra
    }

    pub fn omega(&self) -> &FiniteSemigroup {
        &self.algebra.omega
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn q(&self) -> &Matrix<S> {
        &self.q
    }

    pub fn left(&self, alpha: usize, beta: usize) -> &Tensor<S> {
        &self.left[alpha * self.omega().size() + beta]
    }

    pub fn right(&self, alpha: usize, beta: usize) -> &Tensor<S> {
        &self.right[alpha * self.omega().size() + beta]
    }

    pub fn act_l(&self, alpha: usize, beta: usize, x: &[S], u: &[S]) -> Vec<S> {
        self.left(alpha, beta).bilinear(x, u)
    }

    pub fn act_r(&self, alpha: usize, beta: usize, u: &[S], x: &[S]) -> Vec<S> {
        self.right(alpha, beta).bilinear(u, x)
    }

    pub fn twist(&self, u: &[S]) -> Vec<S> {
        self.q.apply(u)
    }

    pub fn v(&self, a: usize) -> Vec<S> {
        crate::matrix::unit(self.dim(), a)
    }

    /// An ordinary bimodule over the trivial semigroup.
    pub fn from_hom_bimodule(m: &crate::hom::HomBimodule<S>) -> Self {
        OmegaBimodule {
            algebra: OmegaAssocAlgebra::from_hom_algebra(m.algebra()),
            left: vec![m.left().clone()],
            right: vec![m.right().clone()],
            q: m.q().clone(),
        }
    }
}

/// The right-equivariance clause is read as `q(u ._r x) = q(u) ._r p(x)`.
pub const RIGHT_EQUIVARIANCE_READING: &str = "right equivariance read as q(u ._r x) = q(u) ._r p(x)";

pub fn check_omega_bimodule<S: Scalar>(m: &OmegaBimodule<S>) -> Report {
    let g = &m.algebra;
    let (n, k, d) = (g.dim(), g.omega.size(), m.dim());
    let om = &g.omega;
    let pair = [Axis::omega("alpha", k), Axis::omega("beta", k)];
    let triple = [Axis::omega("alpha", k), Axis::omega("beta", k), Axis::omega("gamma", k)];
    let mut report = Report::new("Omega-bimodule");
    report.push(check_law(
        "q(x.u) = p(x).q(u)",
        &[pair[0], pair[1], Axis::basis("x", n), Axis::basis("u", d)],
        |i| {
            let (x, u) = (g.e(i[2]), m.v(i[3]));
            residual(
                m.twist(&m.act_l(i[0], i[1], &x, &u)),
                m.act_l(i[0], i[1], &g.twist(&x), &m.twist(&u)),
            )
        },
    ));
    report.push(check_law(
        "q(u.x) = q(u).p(x)",
        &[pair[0], pair[1], Axis::basis("u", d), Axis::basis("x", n)],
        |i| {
            let (u, x) = (m.v(i[2]), g.e(i[3]));
            residual(
                m.twist(&m.act_r(i[0], i[1], &u, &x)),
                m.act_r(i[0], i[1], &m.twist(&u), &g.twist(&x)),
            )
        },
    ));
    report.push(check_law(
        "q(u)._{a,bc}(x._{b,c}y) = (u._{a,b}x)._{ab,c}p(y)",
        &[
            triple[0],
            triple[1],
            triple[2],
            Axis::basis("u", d),
            Axis::basis("x", n),
            Axis::basis("y", n),
        ],
        |i| {
            let (a, b, c) = (i[0], i[1], i[2]);
            let (u, x, y) = (m.v(i[3]), g.e(i[4]), g.e(i[5]));
            residual(
                m.act_r(a, om.mul(b, c), &m.twist(&u), &g.mul(b, c, &x, &y)),
                m.act_r(om.mul(a, b), c, &m.act_r(a, b, &u, &x), &g.twist(&y)),
            )
        },
    ));
    report.push(check_law(
        "p(x)._{a,bc}(u._{b,c}y) = (x._{a,b}u)._{ab,c}p(y)",
        &[
            triple[0],
            triple[1],
            triple[2],
            Axis::basis("x", n),
            Axis::basis("u", d),
            Axis::basis("y", n),
        ],
        |i| {
            let (a, b, c) = (i[0], i[1], i[2]);
            let (x, u, y) = (g.e(i[3]), m.v(i[4]), g.e(i[5]));
            residual(
                m.act_l(a, om.mul(b, c), &g.twist(&x), &m.act_r(b, c, &u, &y)),
                m.act_r(om.mul(a, b), c, &m.act_l(a, b, &x, &u), &g.twist(&y)),
            )
        },
    ));
    report.push(check_law(
        "p(x)._{a,bc}(y._{b,c}u) = (x._{a,b}y)._{ab,c}q(u)",
        &[
            triple[0],
            triple[1],
            triple[2],
            Axis::basis("x", n),
            Axis::basis("y", n),
            Axis::basis("u", d),
        ],
        |i| {
            let (a, b, c) = (i[0], i[1], i[2]);
            let (x, y, u) = (g.e(i[3]), g.e(i[4]), m.v(i[5]));
            residual(
                m.act_l(a, om.mul(b, c), &g.twist(&x), &m.act_l(b, c, &y, &u)),
                m.act_l(om.mul(a, b), c, &g.mul(a, b, &x, &y), &m.twist(&u)),
            )
        },
    ));
    report.note(RIGHT_EQUIVARIANCE_READING);
    report
}

/// The bimodule `(L, {<|_{a,b}, |>_{a,b}}, p)` over `(V, *_{a,b}, q)`:
/// `u <| x = R_a u . x - R_ab(u ._r x) - R_ab Phi(R_a u, x)` acts on the
/// left (argument order `(u, x)`), `x |> u = x . R_b u - R_ab(x ._l u) - R_ab Phi(x, R_b u)`
/// on the right.
pub fn operator_bimodule<S: Scalar>(r: &TwistedRBFamily<S>) -> Result<OmegaBimodule<S>> {
    let report = check_twisted_rbf(r);
    if !report.passed {
        return Err(Error::Precondition(format!("operator family check failed\n{report}")));
    }
    Ok(operator_bimodule_unchecked(r))
}

pub(crate) fn operator_bimodule_unchecked<S: Scalar>(r: &TwistedRBFamily<S>) -> OmegaBimodule<S> {
    let algebra = omega_assoc_from_ns_family_unchecked(&ns_family_from_operator_unchecked(r));
    let (a, m, c) = (r.algebra(), r.module(), r.cocycle());
    let (n, d, k) = (a.dim(), m.dim(), r.omega().size());
    let om = r.omega();
    let left = (0..k * k)
        .map(|ab| {
            let (al, be) = (ab / k, ab % k);
            let rab = om.mul(al, be);
            Tensor::from_images(n, &[d, n], |ix| {
                let (u, x) = (m.v(ix[0]), a.e(ix[1]));
                let ru = r.r(al, &u);
                vsub(&a.mul(&ru, &x), &r.r(rab, &vadd(&m.act_r(&u, &x), &c.eval(&ru, &x))))
            })
        })
        .collect();
    let right = (0..k * k)
        .map(|ab| {
            let (al, be) = (ab / k, ab % k);
            let rab = om.mul(al, be);
            Tensor::from_images(n, &[n, d], |ix| {
                let (x, u) = (a.e(ix[0]), m.v(ix[1]));
                let ru = r.r(be, &u);
                vsub(&a.mul(&x, &ru), &r.r(rab, &vadd(&m.act_l(&x, &u), &c.eval(&x, &ru))))
            })
        })
        .collect();
    OmegaBimodule {
        algebra,
        left,
        right,
        q: a.p().clone(),
    }
}

/// Negated product tensor.
pub fn negated_product<S: Scalar>(a: &HomAlgebra<S>) -> Tensor<S> {
    Tensor::from_images(a.dim(), &[a.dim(), a.dim()], |ix| {
        vneg(&a.mul(&a.e(ix[0]), &a.e(ix[1])))
    })
}
