//! The shipped desk instances D0, D1, D2.

use crate::hom::{regular_bimodule, HomAlgebra, TwoCocycle};
use crate::matrix::{unit, Matrix};
use crate::operators::{tensor_identity_family, TwistedRBFamily};
use crate::scalar::{q, Q};
use crate::semigroup::FiniteSemigroup;

#[derive(Clone, Debug, PartialEq)]
pub struct DeskInstance {
    pub name: &'static str,
    pub description: &'static str,
    pub operator: TwistedRBFamily<Q>,
}

/// The ground field as a 1-dimensional algebra with `p = id`.
pub fn ground_field() -> HomAlgebra<Q> {
    HomAlgebra::from_products(1, Matrix::identity(1), |_, _| vec![q(1)]).expect("1x1 table")
}

/// Group algebra of C2: `e0` is the unit and `e1 e1 = e0`, with `p = id`.
pub fn c2_group_algebra() -> HomAlgebra<Q> {
    HomAlgebra::from_products(2, Matrix::identity(2), |i, j| unit(2, (i + j) % 2)).expect("2x2 table")
}

/// D0: `L = V = K`, `Phi = 0`, trivial semigroup, `R = 0`.
pub fn d0() -> TwistedRBFamily<Q> {
    let cocycle = TwoCocycle::zero(regular_bimodule(&ground_field()));
    TwistedRBFamily::zero(cocycle, FiniteSemigroup::trivial())
}

/// D1: `Id_alpha` on the C2 group algebra, indexed by the group C2.
pub fn d1() -> TwistedRBFamily<Q> {
    tensor_identity_family(&c2_group_algebra(), &FiniteSemigroup::cyclic(2).expect("cyclic(2)"))
}

/// D2: as D1, indexed by the boolean monoid.
pub fn d2() -> TwistedRBFamily<Q> {
    tensor_identity_family(&c2_group_algebra(), &FiniteSemigroup::boolean_monoid())
}

pub fn desk_catalog() -> Vec<DeskInstance> {
    vec![
        DeskInstance {
            name: "D0",
            description: "1-dimensional field, zero cocycle, trivial semigroup, R = 0",
            operator: d0(),
        },
        DeskInstance {
            name: "D1",
            description: "C2 group algebra, identity family into L (x) K[C2]",
            operator: d1(),
        },
        DeskInstance {
            name: "D2",
            description: "C2 group algebra, identity family into L (x) K[boolean monoid]",
            operator: d2(),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{check_hom_algebra, check_two_cocycle};
    use crate::operators::check_twisted_rbf;

    #[test]
    fn desk_instances_pass_their_checks() {
        for inst in desk_catalog() {
            let r = &inst.operator;
            assert!(check_hom_algebra(r.algebra()).passed, "{}", inst.name);
            assert!(check_two_cocycle(r.cocycle()).passed, "{}", inst.name);
            assert!(check_twisted_rbf(r).passed, "{}", inst.name);
        }
    }
}
