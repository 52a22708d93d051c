//! Workspace documents: named objects in one JSON file, rationals as
//! strings, references by name. Tables list inputs first and the output
//! coordinate last, so `mu[i][j][k]` is the `e_k` coefficient of `e_i e_j`;
//! matrices are row-major, `p[i][j]` being row `i`, column `j`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cohomology::{Cochain, ComplexKind};
use crate::deform::LinearDeformation;
use crate::error::{Error, Result};
use crate::family::{HomNSAlgebra, HomNSFamilyAlgebra, HomTridendFamily, OmegaAssocAlgebra, OmegaBimodule};
use crate::hom::{HomAlgebra, HomBimodule, TwoCocycle};
use crate::matrix::Matrix;
use crate::operators::{NijenhuisFamily, OperatorMorphism, TwistedRBFamily, WeightedRBFamily};
use crate::scalar::{format_rational, parse_rational, Q};
use crate::semigroup::FiniteSemigroup;
use crate::tensor::{for_each_index, Tensor};

pub type RawMatrix = Vec<Vec<String>>;

/// Nested arrays of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nested {
    Leaf(String),
    List(Vec<Nested>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDirection {
    pub maps: Vec<RawMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawObject {
    Semigroup {
        table: Vec<Vec<usize>>,
    },
    HomAlgebra {
        dim: usize,
        mu: Nested,
        p: RawMatrix,
    },
    Bimodule {
        algebra: String,
        dim: usize,
        left: Nested,
        right: Nested,
        q: RawMatrix,
    },
    Cocycle {
        bimodule: String,
        phi: Nested,
    },
    OperatorFamily {
        cocycle: String,
        omega: String,
        maps: Vec<RawMatrix>,
    },
    NijenhuisFamily {
        algebra: String,
        omega: String,
        maps: Vec<RawMatrix>,
    },
    WeightedFamily {
        algebra: String,
        omega: String,
        weight: String,
        maps: Vec<RawMatrix>,
    },
    NsAlgebra {
        dim: usize,
        prec: Nested,
        succ: Nested,
        vee: Nested,
        p: RawMatrix,
    },
    NsFamily {
        omega: String,
        dim: usize,
        prec: Vec<Nested>,
        succ: Vec<Nested>,
        vee: Vec<Nested>,
        p: RawMatrix,
    },
    TridendFamily {
        omega: String,
        dim: usize,
        prec: Vec<Nested>,
        succ: Vec<Nested>,
        odot: Nested,
        p: RawMatrix,
    },
    OmegaAssoc {
        omega: String,
        dim: usize,
        products: Vec<Nested>,
        p: RawMatrix,
    },
    OmegaBimodule {
        algebra: String,
        dim: usize,
        left: Vec<Nested>,
        right: Vec<Nested>,
        q: RawMatrix,
    },
    Cochain {
        complex: ComplexKind,
        data: String,
        degree: usize,
        components: Vec<Nested>,
    },
    Deformation {
        base: String,
        direction: RawDirection,
        order: usize,
    },
    Element {
        operator: String,
        vector: Vec<String>,
    },
    Equivalence {
        source: String,
        target: String,
        element: Vec<String>,
    },
    OperatorMorphism {
        source: String,
        target: String,
        psi: RawMatrix,
        phi: RawMatrix,
    },
}

impl RawObject {
    pub fn kind(&self) -> &'static str {
        match self {
            RawObject::Semigroup { .. } => "semigroup",
            RawObject::HomAlgebra { .. } => "hom_algebra",
            RawObject::Bimodule { .. } => "bimodule",
            RawObject::Cocycle { .. } => "cocycle",
            RawObject::OperatorFamily { .. } => "operator_family",
            RawObject::NijenhuisFamily { .. } => "nijenhuis_family",
            RawObject::WeightedFamily { .. } => "weighted_family",
            RawObject::NsAlgebra { .. } => "ns_algebra",
            RawObject::NsFamily { .. } => "ns_family",
            RawObject::TridendFamily { .. } => "tridend_family",
            RawObject::OmegaAssoc { .. } => "omega_assoc",
            RawObject::OmegaBimodule { .. } => "omega_bimodule",
            RawObject::Cochain { .. } => "cochain",
            RawObject::Deformation { .. } => "deformation",
            RawObject::Element { .. } => "element",
            RawObject::Equivalence { .. } => "equivalence",
            RawObject::OperatorMorphism { .. } => "operator_morphism",
        }
    }

    fn references(&self) -> Vec<&str> {
        match self {
            RawObject::Semigroup { .. } | RawObject::HomAlgebra { .. } | RawObject::NsAlgebra { .. } => vec![],
            RawObject::Bimodule { algebra, .. } => vec![algebra],
            RawObject::Cocycle { bimodule, .. } => vec![bimodule],
            RawObject::OperatorFamily { cocycle, omega, .. } => vec![cocycle, omega],
            RawObject::NijenhuisFamily { algebra, omega, .. } | RawObject::WeightedFamily { algebra, omega, .. } => {
                vec![algebra, omega]
            }
            RawObject::NsFamily { omega, .. }
            | RawObject::TridendFamily { omega, .. }
            | RawObject::OmegaAssoc { omega, .. } => vec![omega],
            RawObject::OmegaBimodule { algebra, .. } => vec![algebra],
            RawObject::Cochain { data, .. } => vec![data],
            RawObject::Deformation { base, .. } => vec![base],
            RawObject::Element { operator, .. } => vec![operator],
            RawObject::Equivalence { source, target, .. } | RawObject::OperatorMorphism { source, target, .. } => {
                vec![source, target]
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub objects: BTreeMap<String, RawObject>,
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// A document holding `object` under `name` plus everything it refers to.
    pub fn single(name: &str, object: &Object) -> Self {
        let mut doc = Document::default();
        doc.insert(name, object);
        doc
    }

    /// Adds `object` and its dependencies; returns the name actually used.
    /// Dependencies equal to an existing entry are shared.
    pub fn insert(&mut self, name: &str, object: &Object) -> String {
        let raw = match object {
            Object::Semigroup(g) => RawObject::Semigroup {
                table: g.table().to_vec(),
            },
            Object::HomAlgebra(a) => RawObject::HomAlgebra {
                dim: a.dim(),
                mu: tensor_to_raw(a.mu()),
                p: matrix_to_raw(a.p()),
            },
            Object::Bimodule(m) => RawObject::Bimodule {
                algebra: self.dep(name, "algebra", &Object::HomAlgebra(m.algebra().clone())),
                dim: m.dim(),
                left: tensor_to_raw(m.left()),
                right: tensor_to_raw(m.right()),
                q: matrix_to_raw(m.q()),
            },
            Object::Cocycle(c) => RawObject::Cocycle {
                bimodule: self.dep(name, "bimodule", &Object::Bimodule(c.module().clone())),
                phi: tensor_to_raw(c.phi()),
            },
            Object::OperatorFamily(r) => RawObject::OperatorFamily {
                cocycle: self.dep(name, "cocycle", &Object::Cocycle(r.cocycle().clone())),
                omega: self.dep(name, "omega", &Object::Semigroup(r.omega().clone())),
                maps: r.maps().iter().map(matrix_to_raw).collect(),
            },
            Object::NijenhuisFamily(nf) => RawObject::NijenhuisFamily {
                algebra: self.dep(name, "algebra", &Object::HomAlgebra(nf.algebra().clone())),
                omega: self.dep(name, "omega", &Object::Semigroup(nf.omega().clone())),
                maps: nf.maps().iter().map(matrix_to_raw).collect(),
            },
            Object::WeightedFamily(w) => RawObject::WeightedFamily {
                algebra: self.dep(name, "algebra", &Object::HomAlgebra(w.algebra().clone())),
                omega: self.dep(name, "omega", &Object::Semigroup(w.omega().clone())),
                weight: format_rational(w.weight()),
                maps: w.maps().iter().map(matrix_to_raw).collect(),
            },
            Object::NsAlgebra(a) => RawObject::NsAlgebra {
                dim: a.dim(),
                prec: tensor_to_raw(a.prec()),
                succ: tensor_to_raw(a.succ()),
                vee: tensor_to_raw(a.vee()),
                p: matrix_to_raw(a.p()),
            },
            Object::NsFamily(g) => {
                let k = g.omega().size();
                RawObject::NsFamily {
                    omega: self.dep(name, "omega", &Object::Semigroup(g.omega().clone())),
                    dim: g.dim(),
                    prec: (0..k).map(|a| tensor_to_raw(g.prec(a))).collect(),
                    succ: (0..k).map(|a| tensor_to_raw(g.succ(a))).collect(),
                    vee: pairs(k).map(|(a, b)| tensor_to_raw(g.vee(a, b))).collect(),
                    p: matrix_to_raw(g.p()),
                }
            }
            Object::TridendFamily(t) => {
                let k = t.omega().size();
                RawObject::TridendFamily {
                    omega: self.dep(name, "omega", &Object::Semigroup(t.omega().clone())),
                    dim: t.dim(),
                    prec: (0..k).map(|a| tensor_to_raw(t.prec(a))).collect(),
                    succ: (0..k).map(|a| tensor_to_raw(t.succ(a))).collect(),
                    odot: tensor_to_raw(t.odot()),
                    p: matrix_to_raw(t.p()),
                }
            }
            Object::OmegaAssoc(g) => RawObject::OmegaAssoc {
                omega: self.dep(name, "omega", &Object::Semigroup(g.omega().clone())),
                dim: g.dim(),
                products: pairs(g.omega().size())
                    .map(|(a, b)| tensor_to_raw(g.product(a, b)))
                    .collect(),
                p: matrix_to_raw(g.p()),
            },
            Object::OmegaBimodule(m) => {
                let k = m.omega().size();
                RawObject::OmegaBimodule {
                    algebra: self.dep(name, "algebra", &Object::OmegaAssoc(m.algebra().clone())),
                    dim: m.dim(),
                    left: pairs(k).map(|(a, b)| tensor_to_raw(m.left(a, b))).collect(),
                    right: pairs(k).map(|(a, b)| tensor_to_raw(m.right(a, b))).collect(),
                    q: matrix_to_raw(m.q()),
                }
            }
            Object::Cochain(c) => {
                let (complex, data) = match &c.data {
                    CochainData::Ha(m) => (ComplexKind::Ha, self.dep(name, "data", &Object::Bimodule(m.clone()))),
                    CochainData::Omega(m) => (
                        ComplexKind::Omega,
                        self.dep(name, "data", &Object::OmegaBimodule(m.clone())),
                    ),
                    CochainData::Rbf(r) => (
                        ComplexKind::Rbf,
                        self.dep(name, "data", &Object::OperatorFamily(r.clone())),
                    ),
                };
                RawObject::Cochain {
                    complex,
                    data,
                    degree: c.cochain.degree,
                    components: c.cochain.components.iter().map(tensor_to_raw).collect(),
                }
            }
            Object::Deformation(d) => self.deformation_raw(name, d),
            Object::Element(e) => RawObject::Element {
                operator: self.dep(name, "operator", &Object::OperatorFamily(e.operator.clone())),
                vector: e.vector.iter().map(format_rational).collect(),
            },
            Object::Equivalence(e) => RawObject::Equivalence {
                source: self.dep(name, "source", &Object::Deformation(e.source.clone())),
                target: self.dep(name, "target", &Object::Deformation(e.target.clone())),
                element: e.element.iter().map(format_rational).collect(),
            },
            Object::OperatorMorphism(m) => RawObject::OperatorMorphism {
                source: self.dep(name, "source", &Object::OperatorFamily(m.source.clone())),
                target: self.dep(name, "target", &Object::OperatorFamily(m.target.clone())),
                psi: matrix_to_raw(&m.morphism.psi),
                phi: matrix_to_raw(&m.morphism.phi),
            },
        };
        self.put(name, raw)
    }

    fn deformation_raw(&mut self, name: &str, d: &LinearDeformation) -> RawObject {
        RawObject::Deformation {
            base: self.dep(name, "base", &Object::OperatorFamily(d.base().clone())),
            direction: RawDirection {
                maps: d.direction().iter().map(matrix_to_raw).collect(),
            },
            order: d.order(),
        }
    }

    fn dep(&mut self, parent: &str, role: &str, object: &Object) -> String {
        self.insert(&format!("{parent}.{role}"), object)
    }

    fn put(&mut self, name: &str, raw: RawObject) -> String {
        if let Some((existing, _)) = self.objects.iter().find(|(_, r)| **r == raw) {
            return existing.clone();
        }
        let mut chosen = name.to_string();
        let mut i = 2;
        while self.objects.contains_key(&chosen) {
            chosen = format!("{name}#{i}");
            i += 1;
        }
        self.objects.insert(chosen.clone(), raw);
        chosen
    }
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |a| (0..k).map(move |b| (a, b)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum CochainData {
    Ha(HomBimodule<Q>),
    Omega(OmegaBimodule<Q>),
    Rbf(TwistedRBFamily<Q>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CochainObject {
    pub data: CochainData,
    pub cochain: Cochain<Q>,
}

/// A candidate element `x` of the algebra of an operator family.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementObject {
    pub operator: TwistedRBFamily<Q>,
    pub vector: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceObject {
    pub source: LinearDeformation,
    pub target: LinearDeformation,
    pub element: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismObject {
    pub source: TwistedRBFamily<Q>,
    pub target: TwistedRBFamily<Q>,
    pub morphism: OperatorMorphism<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Semigroup(FiniteSemigroup),
    HomAlgebra(HomAlgebra<Q>),
    Bimodule(HomBimodule<Q>),
    Cocycle(TwoCocycle<Q>),
    OperatorFamily(TwistedRBFamily<Q>),
    NijenhuisFamily(NijenhuisFamily<Q>),
    WeightedFamily(WeightedRBFamily<Q>),
    NsAlgebra(HomNSAlgebra<Q>),
    NsFamily(HomNSFamilyAlgebra<Q>),
    TridendFamily(HomTridendFamily<Q>),
    OmegaAssoc(OmegaAssocAlgebra<Q>),
    OmegaBimodule(OmegaBimodule<Q>),
    Cochain(CochainObject),
    Deformation(LinearDeformation),
    Element(ElementObject),
    Equivalence(EquivalenceObject),
    OperatorMorphism(MorphismObject),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Semigroup(_) => "semigroup",
            Object::HomAlgebra(_) => "hom_algebra",
            Object::Bimodule(_) => "bimodule",
            Object::Cocycle(_) => "cocycle",
            Object::OperatorFamily(_) => "operator_family",
            Object::NijenhuisFamily(_) => "nijenhuis_family",
            Object::WeightedFamily(_) => "weighted_family",
            Object::NsAlgebra(_) => "ns_algebra",
            Object::NsFamily(_) => "ns_family",
            Object::TridendFamily(_) => "tridend_family",
            Object::OmegaAssoc(_) => "omega_assoc",
            Object::OmegaBimodule(_) => "omega_bimodule",
            Object::Cochain(_) => "cochain",
            Object::Deformation(_) => "deformation",
            Object::Element(_) => "element",
            Object::Equivalence(_) => "equivalence",
            Object::OperatorMorphism(_) => "operator_morphism",
        }
    }
}

/// A loaded document: every object resolved and shape-validated.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Workspace {
    objects: BTreeMap<String, Object>,
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Self> {
        Self::load(&Document::from_json(text)?)
    }

    pub fn load(doc: &Document) -> Result<Self> {
        let mut r = Resolver {
            raw: &doc.objects,
            done: BTreeMap::new(),
            visiting: BTreeSet::new(),
        };
        for name in doc.objects.keys() {
            r.resolve(name)?;
        }
        Ok(Workspace { objects: r.done })
    }

    pub fn get(&self, name: &str) -> Result<&Object> {
        self.objects.get(name).ok_or_else(|| Error::Unknown {
            what: "object",
            name: name.to_string(),
        })
    }

    pub fn objects(&self) -> &BTreeMap<String, Object> {
        &self.objects
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::default();
        for (name, obj) in &self.objects {
            doc.insert(name, obj);
        }
        doc
    }
}

struct Resolver<'a> {
    raw: &'a BTreeMap<String, RawObject>,
    done: BTreeMap<String, Object>,
    visiting: BTreeSet<String>,
}

fn wrong_kind(name: &str, found: &str, expected: &str) -> Error {
    Error::Parse(format!("{name:?} is a {found}, expected a {expected}"))
}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty, $label:expr) => {
        fn $fn(&mut self, name: &str) -> Result<$ty> {
            match self.resolve(name)? {
                Object::$variant(x) => Ok(x),
                other => Err(wrong_kind(name, other.kind(), $label)),
            }
        }
    };
}

impl Resolver<'_> {
    getter!(semigroup, Semigroup, FiniteSemigroup, "semigroup");
    getter!(algebra, HomAlgebra, HomAlgebra<Q>, "hom_algebra");
    getter!(bimodule, Bimodule, HomBimodule<Q>, "bimodule");
    getter!(cocycle, Cocycle, TwoCocycle<Q>, "cocycle");
    getter!(operator, OperatorFamily, TwistedRBFamily<Q>, "operator_family");
    getter!(omega_assoc, OmegaAssoc, OmegaAssocAlgebra<Q>, "omega_assoc");
    getter!(omega_bimodule, OmegaBimodule, OmegaBimodule<Q>, "omega_bimodule");
    getter!(deformation, Deformation, LinearDeformation, "deformation");

    fn resolve(&mut self, name: &str) -> Result<Object> {
        if let Some(obj) = self.done.get(name) {
            return Ok(obj.clone());
        }
        let raw = self.raw.get(name).ok_or_else(|| Error::Unknown {
            what: "object",
            name: name.to_string(),
        })?;
        if !self.visiting.insert(name.to_string()) {
            return Err(Error::Parse(format!("reference cycle through {name:?}")));
        }
        for dep in raw.references() {
            if !self.raw.contains_key(dep) {
                return Err(Error::Unknown {
                    what: "object",
                    name: dep.to_string(),
                });
            }
        }
        let obj = self.build(raw).map_err(|e| match e {
            Error::Unknown { .. } => e,
            Error::Parse(m) if m.starts_with("reference cycle") => Error::Parse(m),
            other => Error::Parse(format!("object {name:?}: {other}")),
        })?;
        self.visiting.remove(name);
        self.done.insert(name.to_string(), obj.clone());
        Ok(obj)
    }

    fn build(&mut self, raw: &RawObject) -> Result<Object> {
        Ok(match raw {
            RawObject::Semigroup { table } => Object::Semigroup(FiniteSemigroup::new(table.clone())?),
            RawObject::HomAlgebra { dim, mu, p } => {
                let n = *dim;
                Object::HomAlgebra(HomAlgebra::new(
                    tensor_from_raw("mu", mu, &[n, n, n])?,
                    matrix_from_raw("p", p, n, n)?,
                )?)
            }
            RawObject::Bimodule {
                algebra,
                dim,
                left,
                right,
                q,
            } => {
                let a = self.algebra(algebra)?;
                let (n, d) = (a.dim(), *dim);
                Object::Bimodule(HomBimodule::new(
                    a,
                    tensor_from_raw("left", left, &[d, n, d])?,
                    tensor_from_raw("right", right, &[d, d, n])?,
                    matrix_from_raw("q", q, d, d)?,
                )?)
            }
            RawObject::Cocycle { bimodule, phi } => {
                let m = self.bimodule(bimodule)?;
                let (n, d) = (m.algebra().dim(), m.dim());
                Object::Cocycle(TwoCocycle::new(m, tensor_from_raw("phi", phi, &[d, n, n])?)?)
            }
            RawObject::OperatorFamily { cocycle, omega, maps } => {
                let c = self.cocycle(cocycle)?;
                let g = self.semigroup(omega)?;
                let (n, d) = (c.algebra().dim(), c.module().dim());
                Object::OperatorFamily(TwistedRBFamily::new(c, g, matrices("maps", maps, n, d)?)?)
            }
            RawObject::NijenhuisFamily { algebra, omega, maps } => {
                let a = self.algebra(algebra)?;
                let g = self.semigroup(omega)?;
                let n = a.dim();
                Object::NijenhuisFamily(NijenhuisFamily::new(a, g, matrices("maps", maps, n, n)?)?)
            }
            RawObject::WeightedFamily {
                algebra,
                omega,
                weight,
                maps,
            } => {
                let a = self.algebra(algebra)?;
                let g = self.semigroup(omega)?;
                let n = a.dim();
                Object::WeightedFamily(WeightedRBFamily::new(
                    a,
                    g,
                    parse_rational(weight)?,
                    matrices("maps", maps, n, n)?,
                )?)
            }
            RawObject::NsAlgebra {
                dim,
                prec,
                succ,
                vee,
                p,
            } => {
                let s = [*dim; 3];
                Object::NsAlgebra(HomNSAlgebra::new(
                    tensor_from_raw("prec", prec, &s)?,
                    tensor_from_raw("succ", succ, &s)?,
                    tensor_from_raw("vee", vee, &s)?,
                    matrix_from_raw("p", p, *dim, *dim)?,
                )?)
            }
            RawObject::NsFamily {
                omega,
                dim,
                prec,
                succ,
                vee,
                p,
            } => {
                let g = self.semigroup(omega)?;
                let k = g.size();
                let s = [*dim; 3];
                Object::NsFamily(HomNSFamilyAlgebra::new(
                    g,
                    tensors("prec", prec, k, &s)?,
                    tensors("succ", succ, k, &s)?,
                    tensors("vee", vee, k * k, &s)?,
                    matrix_from_raw("p", p, *dim, *dim)?,
                )?)
            }
            RawObject::TridendFamily {
                omega,
                dim,
                prec,
                succ,
                odot,
                p,
            } => {
                let g = self.semigroup(omega)?;
                let k = g.size();
                let s = [*dim; 3];
                Object::TridendFamily(HomTridendFamily::new(
                    g,
                    tensors("prec", prec, k, &s)?,
                    tensors("succ", succ, k, &s)?,
                    tensor_from_raw("odot", odot, &s)?,
                    matrix_from_raw("p", p, *dim, *dim)?,
                )?)
            }
            RawObject::OmegaAssoc {
                omega,
                dim,
                products,
                p,
            } => {
                let g = self.semigroup(omega)?;
                let k = g.size();
                Object::OmegaAssoc(OmegaAssocAlgebra::new(
                    g,
                    tensors("products", products, k * k, &[*dim; 3])?,
                    matrix_from_raw("p", p, *dim, *dim)?,
                )?)
            }
            RawObject::OmegaBimodule {
                algebra,
                dim,
                left,
                right,
                q,
            } => {
                let a = self.omega_assoc(algebra)?;
                let (n, d, k) = (a.dim(), *dim, a.omega().size());
                Object::OmegaBimodule(OmegaBimodule::new(
                    a,
                    tensors("left", left, k * k, &[d, n, d])?,
                    tensors("right", right, k * k, &[d, d, n])?,
                    matrix_from_raw("q", q, d, d)?,
                )?)
            }
            RawObject::Cochain {
                complex,
                data,
                degree,
                components,
            } => {
                let (data, k, s, t) = match complex {
                    ComplexKind::Ha => {
                        let m = self.bimodule(data)?;
                        let (s, t) = (m.algebra().dim(), m.dim());
                        (CochainData::Ha(m), 1, s, t)
                    }
                    ComplexKind::Omega => {
                        let m = self.omega_bimodule(data)?;
                        let (k, s, t) = (m.omega().size(), m.algebra().dim(), m.dim());
                        (CochainData::Omega(m), k, s, t)
                    }
                    ComplexKind::Rbf => {
                        let r = self.operator(data)?;
                        let (k, s, t) = (r.omega().size(), r.module().dim(), r.algebra().dim());
                        (CochainData::Rbf(r), k, s, t)
                    }
                };
                let count = k
                    .checked_pow(*degree as u32)
                    .ok_or_else(|| Error::Shape("degree too large".into()))?;
                let mut shape = vec![t];
                shape.extend(std::iter::repeat_n(s, *degree));
                let comps = tensors("components", components, count, &shape)?;
                Object::Cochain(CochainObject {
                    data,
                    cochain: Cochain::new(*degree, comps),
                })
            }
            RawObject::Deformation { base, direction, order } => {
                let r = self.operator(base)?;
                let (n, d) = (r.algebra().dim(), r.module().dim());
                let maps = matrices("direction", &direction.maps, n, d)?;
                Object::Deformation(LinearDeformation::with_order(r, maps, *order)?)
            }
            RawObject::Element { operator, vector } => {
                let r = self.operator(operator)?;
                let v = vector_from_raw("vector", vector, r.algebra().dim())?;
                Object::Element(ElementObject { operator: r, vector: v })
            }
            RawObject::Equivalence {
                source,
                target,
                element,
            } => {
                let s = self.deformation(source)?;
                let t = self.deformation(target)?;
                let v = vector_from_raw("element", element, s.base().algebra().dim())?;
                Object::Equivalence(EquivalenceObject {
                    source: s,
                    target: t,
                    element: v,
                })
            }
            RawObject::OperatorMorphism {
                source,
                target,
                psi,
                phi,
            } => {
                let s = self.operator(source)?;
                let t = self.operator(target)?;
                let psi = matrix_from_raw("psi", psi, t.algebra().dim(), s.algebra().dim())?;
                let phi = matrix_from_raw("phi", phi, t.module().dim(), s.module().dim())?;
                Object::OperatorMorphism(MorphismObject {
                    source: s,
                    target: t,
                    morphism: OperatorMorphism { psi, phi },
                })
            }
        })
    }
}

pub fn matrix_to_raw(m: &Matrix<Q>) -> RawMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_raw(what: &str, raw: &RawMatrix, rows: usize, cols: usize) -> Result<Matrix<Q>> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let data = raw
        .iter()
        .flatten()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(rows, cols, data)
}

fn matrices(what: &str, raw: &[RawMatrix], rows: usize, cols: usize) -> Result<Vec<Matrix<Q>>> {
    raw.iter().map(|m| matrix_from_raw(what, m, rows, cols)).collect()
}

fn vector_from_raw(what: &str, raw: &[String], len: usize) -> Result<Vec<Q>> {
    if raw.len() != len {
        return Err(Error::Shape(format!(
            "{what}: expected {len} entries, got {}",
            raw.len()
        )));
    }
    raw.iter().map(|s| parse_rational(s)).collect()
}

/// Tensor of shape `(out, in_1, ..., in_r)` as nested lists indexed
/// `[in_1]...[in_r][out]`.
pub fn tensor_to_raw(t: &Tensor<Q>) -> Nested {
    let shape = t.shape();
    let mut order: Vec<usize> = shape[1..].to_vec();
    order.push(shape[0]);
    build_nested(&order, &mut |ix: &[usize]| {
        let mut full = Vec::with_capacity(ix.len());
        full.push(ix[ix.len() - 1]);
        full.extend_from_slice(&ix[..ix.len() - 1]);
        format_rational(t.get(&full))
    })
}

fn build_nested(dims: &[usize], leaf: &mut dyn FnMut(&[usize]) -> String) -> Nested {
    fn go(dims: &[usize], prefix: &mut Vec<usize>, leaf: &mut dyn FnMut(&[usize]) -> String) -> Nested {
        if prefix.len() == dims.len() {
            return Nested::Leaf(leaf(prefix));
        }
        let extent = dims[prefix.len()];
        let mut out = Vec::with_capacity(extent);
        for i in 0..extent {
            prefix.push(i);
            out.push(go(dims, prefix, leaf));
            prefix.pop();
        }
        Nested::List(out)
    }
    go(dims, &mut Vec::new(), leaf)
}

pub fn tensor_from_raw(what: &str, raw: &Nested, shape: &[usize]) -> Result<Tensor<Q>> {
    let mut order: Vec<usize> = shape[1..].to_vec();
    order.push(shape[0]);
    let mut t = Tensor::zeros(shape.to_vec());
    let mut err = None;
    for_each_index(&order, |ix| {
        if err.is_some() {
            return;
        }
        let mut node = raw;
        for (depth, &i) in ix.iter().enumerate() {
            match node {
                Nested::List(items) if items.len() == order[depth] => node = &items[i],
                _ => {
                    err = Some(Error::Shape(format!("{what}: expected nested extents {order:?}")));
                    return;
                }
            }
        }
        match node {
            Nested::Leaf(s) => match parse_rational(s) {
                Ok(v) => {
                    let mut full = Vec::with_capacity(ix.len());
                    full.push(ix[ix.len() - 1]);
                    full.extend_from_slice(&ix[..ix.len() - 1]);
                    t.set(&full, v);
                }
                Err(e) => err = Some(e),
            },
            Nested::List(_) => err = Some(Error::Shape(format!("{what}: nested deeper than {order:?}"))),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

fn tensors(what: &str, raw: &[Nested], count: usize, shape: &[usize]) -> Result<Vec<Tensor<Q>>> {
    if raw.len() != count {
        return Err(Error::Shape(format!(
            "{what}: expected {count} tables, got {}",
            raw.len()
        )));
    }
    raw.iter().map(|n| tensor_from_raw(what, n, shape)).collect()
}

/// The shipped desk instances as one document with objects `D0`, `D1`,
/// `D2` and the C2 group algebra they are built from.
pub fn catalog_document() -> Document {
    let mut doc = Document::default();
    doc.insert(
        "C2_group_algebra",
        &Object::HomAlgebra(crate::catalog::c2_group_algebra()),
    );
    for inst in crate::catalog::desk_catalog() {
        doc.insert(inst.name, &Object::OperatorFamily(inst.operator));
    }
    doc
}
