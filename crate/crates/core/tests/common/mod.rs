//! Independent oracles shared by the integration tests. Nothing here calls
//! library algorithms: structure constants are read out of the library
//! objects once, then every evaluation, differential and elimination is
//! recomputed with plain nested loops.

#![allow(dead_code, clippy::needless_range_loop)]

use hom_rbf::matrix::Matrix;
use hom_rbf::operators::TwistedRBFamily;
use hom_rbf::Q;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Rank by textbook Gauss-Jordan elimination over the rationals.
pub fn naive_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = Q::one() / m[rank][c].clone();
        for j in 0..cols {
            m[rank][j] = m[rank][j].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..cols {
                    let v = m[rank][j].clone() * f.clone();
                    m[r][j] = m[r][j].clone() - v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn matrix_rows(m: &Matrix<Q>) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn random_grid_entry(rng: &mut ChaCha8Rng) -> Q {
    const GRID: [(i64, i64); 5] = [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2)];
    let (n, d) = GRID[rng.gen_range(0..GRID.len())];
    frac(n, d)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<Q> {
    Matrix::from_fn(rows, cols, |_, _| random_grid_entry(rng))
}

/// Dense copy of an operator family: `L` with product `mu`, `V` with
/// actions, `Phi`, the maps `R_a` and the semigroup table.
pub struct Dense {
    pub t: usize,
    pub s: usize,
    pub k: usize,
    pub table: Vec<Vec<usize>>,
    /// `mu[i][j][o]`: `e_o` coefficient of `e_i e_j`.
    pub mu: Vec<Vec<Vec<Q>>>,
    pub p: Vec<Vec<Q>>,
    pub q: Vec<Vec<Q>>,
    /// `left[i][a][o]`: `v_o` coefficient of `e_i ._l v_a`.
    pub left: Vec<Vec<Vec<Q>>>,
    /// `right[a][i][o]`: `v_o` coefficient of `v_a ._r e_i`.
    pub right: Vec<Vec<Vec<Q>>>,
    /// `phi[i][j][o]`: `v_o` coefficient of `Phi(e_i, e_j)`.
    pub phi: Vec<Vec<Vec<Q>>>,
    /// `r[a][o][j]`: entry `(o, j)` of `R_a`.
    pub r: Vec<Vec<Vec<Q>>>,
}

fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn scale(c: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

fn bilinear(table: &[Vec<Vec<Q>>], x: &[Q], y: &[Q], out: usize) -> Vec<Q> {
    let mut acc = zeros(out);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi.clone() * yj.clone();
            for o in 0..out {
                acc[o] = acc[o].clone() + c.clone() * table[i][j][o].clone();
            }
        }
    }
    acc
}

fn apply(m: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

impl Dense {
    pub fn of(r: &TwistedRBFamily<Q>) -> Self {
        let a = r.algebra();
        let m = r.module();
        let (t, s, k) = (a.dim(), m.dim(), r.omega().size());
        let mu = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| (0..t).map(|o| a.mu().get(&[o, i, j]).clone()).collect())
                    .collect()
            })
            .collect();
        let left = (0..t)
            .map(|i| {
                (0..s)
                    .map(|u| (0..s).map(|o| m.left().get(&[o, i, u]).clone()).collect())
                    .collect()
            })
            .collect();
        let right = (0..s)
            .map(|u| {
                (0..t)
                    .map(|i| (0..s).map(|o| m.right().get(&[o, u, i]).clone()).collect())
                    .collect()
            })
            .collect();
        let phi = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| (0..s).map(|o| r.cocycle().phi().get(&[o, i, j]).clone()).collect())
                    .collect()
            })
            .collect();
        let mat = |m: &Matrix<Q>| matrix_rows(m);
        Dense {
            t,
            s,
            k,
            table: r.omega().table().to_vec(),
            mu,
            p: mat(a.p()),
            q: mat(m.q()),
            left,
            right,
            phi,
            r: r.maps().iter().map(mat).collect(),
        }
    }

    pub fn lmul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        bilinear(&self.mu, x, y, self.t)
    }

    pub fn act_l(&self, x: &[Q], u: &[Q]) -> Vec<Q> {
        bilinear(&self.left, x, u, self.s)
    }

    pub fn act_r(&self, u: &[Q], x: &[Q]) -> Vec<Q> {
        bilinear(&self.right, u, x, self.s)
    }

    pub fn cocycle(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        bilinear(&self.phi, x, y, self.s)
    }

    pub fn rr(&self, a: usize, u: &[Q]) -> Vec<Q> {
        apply(&self.r[a], u)
    }

    pub fn pp(&self, x: &[Q]) -> Vec<Q> {
        apply(&self.p, x)
    }

    pub fn qq(&self, u: &[Q]) -> Vec<Q> {
        apply(&self.q, u)
    }

    fn qpow(&self, u: &[Q], n: usize) -> Vec<Q> {
        (0..n).fold(u.to_vec(), |acc, _| self.qq(&acc))
    }

    fn word(&self, alphas: &[usize]) -> usize {
        alphas[1..].iter().fold(alphas[0], |acc, &b| self.table[acc][b])
    }

    /// Flattened cochain index: component tuple, output coordinate, inputs.
    fn ambient(&self, n: usize) -> usize {
        self.k.pow(n as u32) * self.t * self.s.pow(n as u32)
    }

    fn tuple_index(base: usize, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * base + i)
    }

    fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..base).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// `f_{alphas}(us)` for a flattened degree-`n` cochain.
    fn eval(&self, f: &[Q], n: usize, alphas: &[usize], us: &[Vec<Q>]) -> Vec<Q> {
        let comp = Self::tuple_index(self.k, alphas);
        let per = self.t * self.s.pow(n as u32);
        let mut out = zeros(self.t);
        for ins in Self::tuples(self.s, n) {
            let mut c = Q::one();
            for (u, &i) in us.iter().zip(&ins) {
                c *= u[i].clone();
                if c.is_zero() {
                    break;
                }
            }
            if c.is_zero() {
                continue;
            }
            let inner = Self::tuple_index(self.s, &ins);
            for o in 0..self.t {
                let e = &f[comp * per + o * self.s.pow(n as u32) + inner];
                out[o] = out[o].clone() + c.clone() * e.clone();
            }
        }
        out
    }

    /// `(delta^0 x)_a(u)` written out term by term.
    pub fn delta0(&self, x: &[Q], a: usize, u: &[Q]) -> Vec<Q> {
        let ru = self.rr(a, u);
        let mut v = self.lmul(&ru, x);
        v = sub(&v, &self.rr(a, &self.act_r(u, x)));
        v = sub(&v, &self.rr(a, &self.cocycle(&ru, x)));
        v = sub(&v, &self.lmul(x, &ru));
        v = add(&v, &self.rr(a, &self.act_l(x, u)));
        add(&v, &self.rr(a, &self.cocycle(x, &ru)))
    }

    /// `(delta^n f)_{alphas}(us)` for `n >= 1`, term by term.
    fn delta_n(&self, f: &[Q], n: usize, alphas: &[usize], us: &[Vec<Q>]) -> Vec<Q> {
        let all = self.word(alphas);
        let a1 = alphas[0];
        let an1 = alphas[n];
        let head = self.qpow(&us[0], n - 1);
        let rest = self.eval(f, n, &alphas[1..], &us[1..]);
        let rh = self.rr(a1, &head);
        let mut out = self.lmul(&rh, &rest);
        out = sub(&out, &self.rr(all, &self.act_r(&head, &rest)));
        out = sub(&out, &self.rr(all, &self.cocycle(&rh, &rest)));
        for i in 0..n {
            let (ai, aj) = (alphas[i], alphas[i + 1]);
            let (ui, uj) = (&us[i], &us[i + 1]);
            let (rui, ruj) = (self.rr(ai, ui), self.rr(aj, uj));
            let merged = add(
                &add(&self.act_l(&rui, uj), &self.act_r(ui, &ruj)),
                &self.cocycle(&rui, &ruj),
            );
            let mut args: Vec<Vec<Q>> = us[..i].iter().map(|u| self.qq(u)).collect();
            args.push(merged);
            args.extend(us[i + 2..].iter().map(|u| self.qq(u)));
            let mut merged_alphas = alphas[..i].to_vec();
            merged_alphas.push(self.table[ai][aj]);
            merged_alphas.extend_from_slice(&alphas[i + 2..]);
            let term = self.eval(f, n, &merged_alphas, &args);
            out = if (i + 1) % 2 == 1 {
                sub(&out, &term)
            } else {
                add(&out, &term)
            };
        }
        let g = self.eval(f, n, &alphas[..n], &us[..n]);
        let tail = self.qpow(&us[n], n - 1);
        let rt = self.rr(an1, &tail);
        let mut last = self.lmul(&g, &rt);
        last = sub(&last, &self.rr(all, &self.act_l(&g, &tail)));
        last = sub(&last, &self.rr(all, &self.cocycle(&g, &rt)));
        if (n + 1) % 2 == 1 {
            sub(&out, &last)
        } else {
            add(&out, &last)
        }
    }

    /// Rows of the constraint `p f - f q^{(x)n}` on the ambient space.
    fn constraint_rows(&self, n: usize) -> Vec<Vec<Q>> {
        let amb = self.ambient(n);
        let cols: Vec<Vec<Q>> = (0..amb)
            .map(|j| {
                let f = unit_vec(amb, j);
                let mut out = Vec::new();
                if n == 0 {
                    return sub(&self.pp(&f), &f);
                }
                for alphas in Self::tuples(self.k, n) {
                    for ins in Self::tuples(self.s, n) {
                        let us: Vec<Vec<Q>> = ins.iter().map(|&i| unit_vec(self.s, i)).collect();
                        let qs: Vec<Vec<Q>> = us.iter().map(|u| self.qq(u)).collect();
                        out.extend(sub(
                            &self.pp(&self.eval(&f, n, &alphas, &us)),
                            &self.eval(&f, n, &alphas, &qs),
                        ));
                    }
                }
                out
            })
            .collect();
        transpose(&cols)
    }

    /// Rows of `delta^n` from the ambient degree-`n` space, evaluated on
    /// every basis tuple of degree `n + 1`.
    fn delta_rows(&self, n: usize) -> Vec<Vec<Q>> {
        let amb = self.ambient(n);
        let cols: Vec<Vec<Q>> = (0..amb)
            .map(|j| {
                let f = unit_vec(amb, j);
                let mut out = Vec::new();
                for alphas in Self::tuples(self.k, n + 1) {
                    for ins in Self::tuples(self.s, n + 1) {
                        let us: Vec<Vec<Q>> = ins.iter().map(|&i| unit_vec(self.s, i)).collect();
                        if n == 0 {
                            out.extend(self.delta0(&f, alphas[0], &us[0]));
                        } else {
                            out.extend(self.delta_n(&f, n, &alphas, &us));
                        }
                    }
                }
                out
            })
            .collect();
        transpose(&cols)
    }

    /// `(dim C, dim Z)` at degree `n`.
    fn c_and_z(&self, n: usize) -> (usize, usize) {
        let amb = self.ambient(n);
        let cons = self.constraint_rows(n);
        let dim_c = amb - naive_rank(&cons);
        let mut stacked = cons;
        stacked.extend(self.delta_rows(n));
        (dim_c, amb - naive_rank(&stacked))
    }

    /// `(dim C, dim Z, dim B, dim H)` of the operator complex at degree `n`.
    pub fn rbf_dims(&self, n: usize) -> (usize, usize, usize, usize) {
        let (c, z) = self.c_and_z(n);
        let b = if n == 0 {
            0
        } else {
            let (c_prev, z_prev) = self.c_and_z(n - 1);
            c_prev - z_prev
        };
        (c, z, b, z - b)
    }

    /// `xa - ax`.
    fn ad(&self, x: &[Q], a: &[Q]) -> Vec<Q> {
        sub(&self.lmul(x, a), &self.lmul(a, x))
    }

    /// `x ._l u - u ._r x + Phi(x, R_a u) - Phi(R_a u, x)`.
    fn dmod(&self, x: &[Q], a: usize, u: &[Q]) -> Vec<Q> {
        let ru = self.rr(a, u);
        add(
            &sub(&self.act_l(x, u), &self.act_r(u, x)),
            &sub(&self.cocycle(x, &ru), &self.cocycle(&ru, x)),
        )
    }

    /// Whether `x` is a Nijenhuis element, every condition evaluated on
    /// all basis elements and indices.
    pub fn is_nijenhuis(&self, x: &[Q]) -> bool {
        let zero = |v: &[Q]| v.iter().all(Zero::is_zero);
        if self.pp(x) != x {
            return false;
        }
        let es: Vec<Vec<Q>> = (0..self.t).map(|i| unit_vec(self.t, i)).collect();
        let vs: Vec<Vec<Q>> = (0..self.s).map(|i| unit_vec(self.s, i)).collect();
        for a in 0..self.k {
            for b in 0..self.k {
                let ab = self.table[a][b];
                for u in &vs {
                    let ru = self.rr(a, u);
                    let lhd = sub(
                        &self.lmul(&ru, x),
                        &self.rr(ab, &add(&self.act_r(u, x), &self.cocycle(&ru, x))),
                    );
                    let rub = self.rr(b, u);
                    let rhd = sub(
                        &self.lmul(x, &rub),
                        &self.rr(ab, &add(&self.act_l(x, u), &self.cocycle(x, &rub))),
                    );
                    let w = sub(&lhd, &rhd);
                    if !zero(&sub(&self.lmul(x, &w), &self.lmul(&w, x))) {
                        return false;
                    }
                }
            }
        }
        for ea in &es {
            let xa = self.lmul(x, ea);
            let ax = self.lmul(ea, x);
            for eb in &es {
                let xb = self.lmul(x, eb);
                let bx = self.lmul(eb, x);
                let e53 = add(
                    &sub(&sub(&self.lmul(&xa, &xb), &self.lmul(&xa, &bx)), &self.lmul(&ax, &xb)),
                    &self.lmul(&ax, &bx),
                );
                if !zero(&e53) {
                    return false;
                }
                if !zero(&self.cocycle(&self.ad(x, ea), &self.ad(x, eb))) {
                    return false;
                }
                for al in 0..self.k {
                    let w = self.cocycle(ea, eb);
                    let lhs = self.dmod(x, al, &w);
                    let rhs = add(&self.cocycle(&self.ad(x, ea), eb), &self.cocycle(ea, &self.ad(x, eb)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            for u in &vs {
                for al in 0..self.k {
                    let du = self.dmod(x, al, u);
                    let adx = self.ad(x, ea);
                    let lhs = self.dmod(x, al, &self.act_l(ea, u));
                    let rhs = add(&self.act_l(&adx, u), &self.act_l(ea, &du));
                    if lhs != rhs || !zero(&self.act_l(&adx, &du)) {
                        return false;
                    }
                    let lhs = self.dmod(x, al, &self.act_r(u, ea));
                    let rhs = add(&self.act_r(u, &adx), &self.act_r(&du, ea));
                    if lhs != rhs || !zero(&self.act_r(&du, &adx)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Order-0 family identity `R_a u R_b v = R_ab(R_a u._l v + u._r R_b v + Phi(R_a u, R_b v))`
    /// plus equivariance, on all basis pairs.
    pub fn is_twisted_rbf(&self, maps: &[Vec<Vec<Q>>]) -> bool {
        let r = |a: usize, u: &[Q]| apply(&maps[a], u);
        let vs: Vec<Vec<Q>> = (0..self.s).map(|i| unit_vec(self.s, i)).collect();
        for a in 0..self.k {
            for u in &vs {
                if r(a, &self.qq(u)) != self.pp(&r(a, u)) {
                    return false;
                }
            }
            for b in 0..self.k {
                for u in &vs {
                    for v in &vs {
                        let (ru, rv) = (r(a, u), r(b, v));
                        let inner = add(&add(&self.act_l(&ru, v), &self.act_r(u, &rv)), &self.cocycle(&ru, &rv));
                        if self.lmul(&ru, &rv) != r(self.table[a][b], &inner) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Coefficient of `t` in the family identity for `R + t S`, written out
    /// by the product rule, plus `S_a q = p S_a`.
    pub fn order_one_holds(&self, dir: &[Vec<Vec<Q>>]) -> bool {
        let s = |a: usize, u: &[Q]| apply(&dir[a], u);
        let vs: Vec<Vec<Q>> = (0..self.s).map(|i| unit_vec(self.s, i)).collect();
        for a in 0..self.k {
            for u in &vs {
                if s(a, &self.qq(u)) != self.pp(&s(a, u)) {
                    return false;
                }
            }
            for b in 0..self.k {
                let ab = self.table[a][b];
                for u in &vs {
                    for v in &vs {
                        let (ru, rv, su, sv) = (self.rr(a, u), self.rr(b, v), s(a, u), s(b, v));
                        let inner = add(&add(&self.act_l(&ru, v), &self.act_r(u, &rv)), &self.cocycle(&ru, &rv));
                        let inner1 = add(
                            &add(&self.act_l(&su, v), &self.act_r(u, &sv)),
                            &add(&self.cocycle(&su, &rv), &self.cocycle(&ru, &sv)),
                        );
                        let lhs = add(&self.lmul(&su, &rv), &self.lmul(&ru, &sv));
                        let rhs = add(&s(ab, &inner), &self.rr(ab, &inner1));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn transpose(cols: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

pub fn scaled(c: &Q, v: &[Q]) -> Vec<Q> {
    scale(c, v)
}

/// Structure-level axiom oracles, evaluated on every basis triple.
pub mod axioms {
    use super::{add, apply, unit_vec, Q};
    use hom_rbf::family::{HomNSFamilyAlgebra, HomTridendFamily, OmegaAssocAlgebra, OmegaBimodule};
    use hom_rbf::matrix::Matrix;
    use hom_rbf::tensor::Tensor;
    use num_traits::Zero;

    fn bil(t: &Tensor, x: &[Q], y: &[Q]) -> Vec<Q> {
        let out = t.shape()[0];
        let mut acc = vec![Q::zero(); out];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (o, a) in acc.iter_mut().enumerate() {
                    *a = a.clone() + xi.clone() * yj.clone() * t.get(&[o, i, j]).clone();
                }
            }
        }
        acc
    }

    fn mat(m: &Matrix, x: &[Q]) -> Vec<Q> {
        apply(&super::matrix_rows(m), x)
    }

    fn basis(n: usize) -> Vec<Vec<Q>> {
        (0..n).map(|i| unit_vec(n, i)).collect()
    }

    fn sum3(a: &[Q], b: &[Q], c: &[Q]) -> Vec<Q> {
        add(&add(a, b), c)
    }

    pub fn ns_family_holds(g: &HomNSFamilyAlgebra) -> bool {
        let om = g.omega();
        let k = om.size();
        let p = |x: &[Q]| mat(g.p(), x);
        let pr = |a: usize, x: &[Q], y: &[Q]| bil(g.prec(a), x, y);
        let su = |a: usize, x: &[Q], y: &[Q]| bil(g.succ(a), x, y);
        let ve = |a: usize, b: usize, x: &[Q], y: &[Q]| bil(g.vee(a, b), x, y);
        let star = |a: usize, b: usize, x: &[Q], y: &[Q]| sum3(&pr(b, x, y), &su(a, x, y), &ve(a, b, x, y));
        let es = basis(g.dim());
        for x in &es {
            for y in &es {
                for a in 0..k {
                    if p(&pr(a, x, y)) != pr(a, &p(x), &p(y)) || p(&su(a, x, y)) != su(a, &p(x), &p(y)) {
                        return false;
                    }
                    for b in 0..k {
                        if p(&ve(a, b, x, y)) != ve(a, b, &p(x), &p(y)) {
                            return false;
                        }
                    }
                }
                for z in &es {
                    for a in 0..k {
                        for b in 0..k {
                            let ab = om.mul(a, b);
                            if pr(ab, &p(x), &star(a, b, y, z)) != pr(b, &pr(a, x, y), &p(z)) {
                                return false;
                            }
                            if pr(b, &su(a, x, y), &p(z)) != su(a, &p(x), &pr(b, y, z)) {
                                return false;
                            }
                            if su(ab, &star(a, b, x, y), &p(z)) != su(a, &p(x), &su(b, y, z)) {
                                return false;
                            }
                            for c in 0..k {
                                let bc = om.mul(b, c);
                                let lhs = add(&su(a, &p(x), &ve(b, c, y, z)), &ve(a, bc, &p(x), &star(b, c, y, z)));
                                let rhs = add(&pr(c, &ve(a, b, x, y), &p(z)), &ve(ab, c, &star(a, b, x, y), &p(z)));
                                if lhs != rhs {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn tridend_holds(t: &HomTridendFamily) -> bool {
        let om = t.omega();
        let k = om.size();
        let p = |x: &[Q]| mat(t.p(), x);
        let pr = |a: usize, x: &[Q], y: &[Q]| bil(t.prec(a), x, y);
        let su = |a: usize, x: &[Q], y: &[Q]| bil(t.succ(a), x, y);
        let od = |x: &[Q], y: &[Q]| bil(t.odot(), x, y);
        let es = basis(t.dim());
        for x in &es {
            for y in &es {
                if p(&od(x, y)) != od(&p(x), &p(y)) {
                    return false;
                }
                for a in 0..k {
                    if p(&pr(a, x, y)) != pr(a, &p(x), &p(y)) || p(&su(a, x, y)) != su(a, &p(x), &p(y)) {
                        return false;
                    }
                }
                for z in &es {
                    if od(&od(x, y), &p(z)) != od(&p(x), &od(y, z)) {
                        return false;
                    }
                    for a in 0..k {
                        if od(&su(a, x, y), &p(z)) != su(a, &p(x), &od(y, z))
                            || od(&pr(a, x, y), &p(z)) != od(&p(x), &su(a, y, z))
                            || pr(a, &od(x, y), &p(z)) != od(&p(x), &pr(a, y, z))
                        {
                            return false;
                        }
                        for b in 0..k {
                            let ab = om.mul(a, b);
                            let yz = sum3(&pr(b, y, z), &su(a, y, z), &od(y, z));
                            let xy = sum3(&pr(b, x, y), &su(a, x, y), &od(x, y));
                            if pr(ab, &p(x), &yz) != pr(b, &pr(a, x, y), &p(z))
                                || pr(b, &su(a, x, y), &p(z)) != su(a, &p(x), &pr(b, y, z))
                                || su(ab, &xy, &p(z)) != su(a, &p(x), &su(b, y, z))
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn omega_assoc_holds(g: &OmegaAssocAlgebra) -> bool {
        let om = g.omega();
        let k = om.size();
        let p = |x: &[Q]| mat(g.p(), x);
        let m = |a: usize, b: usize, x: &[Q], y: &[Q]| bil(g.product(a, b), x, y);
        let es = basis(g.dim());
        for x in &es {
            for y in &es {
                for a in 0..k {
                    for b in 0..k {
                        if p(&m(a, b, x, y)) != m(a, b, &p(x), &p(y)) {
                            return false;
                        }
                        for z in &es {
                            for c in 0..k {
                                let lhs = m(a, om.mul(b, c), &p(x), &m(b, c, y, z));
                                let rhs = m(om.mul(a, b), c, &m(a, b, x, y), &p(z));
                                if lhs != rhs {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Bimodule axioms, reading the second equivariance clause with the
    /// right action.
    pub fn omega_bimodule_holds(mo: &OmegaBimodule) -> bool {
        let g = mo.algebra();
        let om = g.omega();
        let k = om.size();
        let p = |x: &[Q]| mat(g.p(), x);
        let q = |u: &[Q]| mat(mo.q(), u);
        let m = |a: usize, b: usize, x: &[Q], y: &[Q]| bil(g.product(a, b), x, y);
        let l = |a: usize, b: usize, x: &[Q], u: &[Q]| bil(mo.left(a, b), x, u);
        let r = |a: usize, b: usize, u: &[Q], x: &[Q]| bil(mo.right(a, b), u, x);
        let xs = basis(g.dim());
        let us = basis(mo.dim());
        for u in &us {
            for x in &xs {
                for a in 0..k {
                    for b in 0..k {
                        if q(&l(a, b, x, u)) != l(a, b, &p(x), &q(u)) || q(&r(a, b, u, x)) != r(a, b, &q(u), &p(x)) {
                            return false;
                        }
                        for y in &xs {
                            for c in 0..k {
                                let (ab, bc) = (om.mul(a, b), om.mul(b, c));
                                if r(a, bc, &q(u), &m(b, c, x, y)) != r(ab, c, &r(a, b, u, x), &p(y))
                                    || l(a, bc, &p(x), &r(b, c, u, y)) != r(ab, c, &l(a, b, x, u), &p(y))
                                    || l(a, bc, &p(x), &l(b, c, y, u)) != l(ab, c, &m(a, b, x, y), &q(u))
                                {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}
