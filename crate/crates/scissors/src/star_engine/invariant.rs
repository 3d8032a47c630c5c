//! Objects, morphisms and multiplicative polytope invariants as expression
//! trees over a few base valuations.

use crate::exact_geometry::linalg::{dot_q, QVec, Rational};
use crate::exact_geometry::{Cone, Subspace};
use crate::ring_values::{RingMap, RingValue};
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::StarError;

/// An orthonormal frame `(u_1, .., u_k)`; vectors of different lengths are
/// compared after padding with zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    vectors: Vec<QVec>,
}

fn dot_padded(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
}

impl Frame {
    /// Checks the Gram matrix is exactly the identity.
    pub fn new(vectors: Vec<QVec>) -> Result<Frame, StarError> {
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate() {
                let g = dot_padded(a, b);
                let want = if i == j { Rational::one() } else { Rational::zero() };
                if g != want {
                    return Err(StarError::Frame(format!("<u{i}, u{j}> = {g}, expected {want}")));
                }
            }
        }
        Ok(Frame { vectors })
    }

    pub fn vectors(&self) -> &[QVec] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The span W of the frame inside Q^n.
    pub fn span(&self, n: usize) -> Subspace {
        let vs: Vec<QVec> = self.vectors.iter().map(|v| pad(v, n)).collect();
        Subspace::span(n, &vs)
    }

    /// `v >= 0`: the first nonzero inner product with a frame vector is positive.
    pub fn nonneg(&self, v: &[Rational]) -> bool {
        for u in &self.vectors {
            let d = dot_padded(u, v);
            if !d.is_zero() {
                return d.is_positive();
            }
        }
        true
    }

    /// `P >= 0` for a convex cone: every ray is nonnegative and the lineality
    /// space is orthogonal to the frame.
    pub fn cone_nonneg(&self, c: &Cone) -> bool {
        let q = |v: &[num_bigint::BigInt]| -> QVec { v.iter().map(|x| Rational::from_integer(x.clone())).collect() };
        c.rays().iter().all(|r| self.nonneg(&q(r)))
            && c.lineality().iter().all(|l| self.vectors.iter().all(|u| dot_padded(u, &q(l)).is_zero()))
    }

    /// Iterated maximization: the face of `P` on which `<-, u_1>` is maximal,
    /// then its face maximizing `<-, u_2>`, and so on.
    pub fn extreme_face(&self, p: &crate::exact_geometry::Polytope) -> crate::exact_geometry::Polytope {
        let mut verts = p.vertices();
        for u in &self.vectors {
            let u = pad(u, p.ambient());
            let best = verts.iter().map(|v| dot_q(v, &u)).max().expect("nonempty polytope");
            verts.retain(|v| dot_q(v, &u) == best);
        }
        crate::exact_geometry::Polytope::from_points(p.ambient(), &verts).expect("nonempty")
    }
}

fn pad(v: &[Rational], n: usize) -> QVec {
    let mut w: QVec = v.iter().take(n).cloned().collect();
    w.resize(n, Rational::zero());
    w
}

/// A multiplicative function of vector spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    /// `V ↦ a^dim V`.
    Scalar(RingValue),
    /// `O^U`: 1 if `V ⊂ U`, else 0.
    Space(Subspace),
    /// The span of a frame, as a space object.
    FrameSpan(Frame),
    /// The orthogonal complement of a frame span.
    FrameComplement(Frame),
    Product(Vec<Object>),
    /// `s(F)_V = F_V(V)`.
    Source(Box<Morphism>),
    /// `t(F)_V = F_V(0)`.
    Target(Box<Morphism>),
    /// `p(G)_V = G_V(point)`.
    Location(Box<PolytopeInvariant>),
}

/// A multiplicative family of cone valuations.
#[derive(Clone, Debug, PartialEq)]
pub enum Morphism {
    Epsilon,
    LocalEuler,
    ConicalVolume,
    DualVolume,
    Zero,
    /// `L^U(P) = 1` iff `P >= 0` in the frame order.
    FrameL(Frame),
    Scale(Object, Box<Morphism>),
    Star(Box<Morphism>, Box<Morphism>),
    /// `(FD)_V(P) = F_V(D_V P)`, the groupoid inverse of `F`.
    Dual(Box<Morphism>),
    /// `(FI)_V(P) = F_V(I P)`.
    Interior(Box<Morphism>),
    /// `(FΔ(-1))_V(P) = F_V(-P)`.
    Reflect(Box<Morphism>),
    Mapped(RingMap, Box<Morphism>),
}

/// A multiplicative, translation-invariant family of polytope valuations.
#[derive(Clone, Debug, PartialEq)]
pub enum PolytopeInvariant {
    Euler,
    Volume,
    Zero,
    Scale(Object, Box<PolytopeInvariant>),
    /// `F ⋆ G` for a morphism `F`.
    Transport(Box<Morphism>, Box<PolytopeInvariant>),
    Interior(Box<PolytopeInvariant>),
    Reflect(Box<PolytopeInvariant>),
    Mapped(RingMap, Box<PolytopeInvariant>),
}

impl Object {
    pub fn scalar(a: impl Into<RingValue>) -> Object {
        Object::Scalar(a.into())
    }

    pub fn var(name: &str) -> Object {
        Object::Scalar(RingValue::var(name))
    }

    pub fn times(self, o: Object) -> Object {
        match self {
            Object::Product(mut v) => {
                v.push(o);
                Object::Product(v)
            }
            s => Object::Product(vec![s, o]),
        }
    }
}

impl Morphism {
    pub fn scaled(self, o: Object) -> Morphism {
        Morphism::Scale(o, Box::new(self))
    }

    pub fn by(self, a: impl Into<RingValue>) -> Morphism {
        self.scaled(Object::scalar(a))
    }

    /// Unchecked ⋆-product; see `star_engine::star` for the checked one.
    pub fn then(self, g: Morphism) -> Morphism {
        Morphism::Star(Box::new(self), Box::new(g))
    }

    pub fn inverse(self) -> Morphism {
        Morphism::Dual(Box::new(self))
    }

    pub fn interior(self) -> Morphism {
        Morphism::Interior(Box::new(self))
    }

    pub fn reflect(self) -> Morphism {
        Morphism::Reflect(Box::new(self))
    }

    pub fn map(self, m: RingMap) -> Morphism {
        Morphism::Mapped(m, Box::new(self))
    }

    /// `F` in slot `slot` of an `R^{⊗rank}`-valued morphism.
    pub fn in_slot(self, slot: usize, rank: usize) -> Morphism {
        self.map(RingMap::embed(slot, rank))
    }

    pub fn source(&self) -> Object {
        Object::Source(Box::new(self.clone()))
    }

    pub fn target(&self) -> Object {
        Object::Target(Box::new(self.clone()))
    }

    /// The identity morphism `1_O = O ∙ ε`.
    pub fn identity(o: Object) -> Morphism {
        Morphism::Epsilon.scaled(o)
    }
}

impl PolytopeInvariant {
    pub fn scaled(self, o: Object) -> PolytopeInvariant {
        PolytopeInvariant::Scale(o, Box::new(self))
    }

    pub fn by(self, a: impl Into<RingValue>) -> PolytopeInvariant {
        self.scaled(Object::scalar(a))
    }

    pub fn transported(self, f: Morphism) -> PolytopeInvariant {
        PolytopeInvariant::Transport(Box::new(f), Box::new(self))
    }

    pub fn interior(self) -> PolytopeInvariant {
        PolytopeInvariant::Interior(Box::new(self))
    }

    pub fn reflect(self) -> PolytopeInvariant {
        PolytopeInvariant::Reflect(Box::new(self))
    }

    pub fn map(self, m: RingMap) -> PolytopeInvariant {
        PolytopeInvariant::Mapped(m, Box::new(self))
    }

    pub fn in_slot(self, slot: usize, rank: usize) -> PolytopeInvariant {
        self.map(RingMap::embed(slot, rank))
    }

    pub fn location(&self) -> Object {
        Object::Location(Box::new(self.clone()))
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Scalar(a) => write!(f, "{a}"),
            Object::Space(u) => write!(f, "O^[dim {}]", u.dim()),
            Object::FrameSpan(u) => write!(f, "O^W[{}]", u.len()),
            Object::FrameComplement(u) => write!(f, "O^W⊥[{}]", u.len()),
            Object::Product(v) => {
                let s: Vec<String> = v.iter().map(|o| o.to_string()).collect();
                write!(f, "{}", s.join("·"))
            }
            Object::Source(m) => write!(f, "s({m})"),
            Object::Target(m) => write!(f, "t({m})"),
            Object::Location(g) => write!(f, "p({g})"),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Epsilon => write!(f, "ε"),
            Morphism::LocalEuler => write!(f, "e"),
            Morphism::ConicalVolume => write!(f, "U"),
            Morphism::DualVolume => write!(f, "W"),
            Morphism::Zero => write!(f, "0"),
            Morphism::FrameL(u) => write!(f, "L^U[{}]", u.len()),
            Morphism::Scale(o, m) => write!(f, "({o})∙{m}"),
            Morphism::Star(a, b) => write!(f, "({a} ⋆ {b})"),
            Morphism::Dual(m) => write!(f, "{m}D"),
            Morphism::Interior(m) => write!(f, "{m}I"),
            Morphism::Reflect(m) => write!(f, "{m}Δ(-1)"),
            Morphism::Mapped(r, m) => write!(f, "{r:?}({m})"),
        }
    }
}

impl fmt::Display for PolytopeInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeInvariant::Euler => write!(f, "χ"),
            PolytopeInvariant::Volume => write!(f, "V"),
            PolytopeInvariant::Zero => write!(f, "0"),
            PolytopeInvariant::Scale(o, g) => write!(f, "({o})∙{g}"),
            PolytopeInvariant::Transport(m, g) => write!(f, "({m} ⋆ {g})"),
            PolytopeInvariant::Interior(g) => write!(f, "{g}I"),
            PolytopeInvariant::Reflect(g) => write!(f, "{g}Δ(-1)"),
            PolytopeInvariant::Mapped(r, g) => write!(f, "{r:?}({g})"),
        }
    }
}
