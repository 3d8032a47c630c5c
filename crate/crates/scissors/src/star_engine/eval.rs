use super::invariant::{Morphism, Object, PolytopeInvariant};
use super::StarError;
use crate::cone_invariants::{cone_dual_volume, cone_volume, McOptions};
use crate::constructible::{ConeElement, PolytopeElement};
use crate::exact_geometry::linalg::Rational;
use crate::exact_geometry::{Cone, Polytope, Subspace};
use crate::ring_values::{ExactReal, RingValue};
use num_bigint::BigInt;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::HashMap;

/// Evaluates objects, morphisms and polytope invariants. Solid angles are
/// memoized per cone; the cache does not change any result.
pub struct Evaluator {
    pub opts: McOptions,
    conical: RefCell<HashMap<(Cone, Subspace), (RingValue, f64)>>,
    dual: RefCell<HashMap<Cone, (RingValue, f64)>>,
    half_width: RefCell<f64>,
}

fn add(a: &RingValue, b: &RingValue) -> Result<RingValue, StarError> {
    Ok(a.add(b)?)
}

fn scale_int(v: &RingValue, c: &BigInt) -> Result<RingValue, StarError> {
    Ok(v.scale(&Rational::from_integer(c.clone()))?)
}

fn indicator(b: bool) -> RingValue {
    RingValue::from(i64::from(b))
}

/// `V ⊂ U` for subspaces of possibly different ambient dimensions, both
/// regarded inside R^∞.
fn contained_padded(v: &Subspace, u: &Subspace) -> bool {
    let n = u.ambient();
    v.basis().iter().all(|b| {
        if b.iter().skip(n).any(|x| !x.is_zero()) {
            return false;
        }
        let mut w: Vec<Rational> = b.iter().take(n).cloned().collect();
        w.resize(n, Rational::zero());
        u.contains(&w)
    })
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(McOptions::default())
    }
}

impl Evaluator {
    pub fn new(opts: McOptions) -> Self {
        Evaluator {
            opts,
            conical: RefCell::new(HashMap::new()),
            dual: RefCell::new(HashMap::new()),
            half_width: RefCell::new(0.0),
        }
    }

    /// Largest Monte-Carlo half-width met so far (0 when every solid angle
    /// was exact).
    pub fn max_half_width(&self) -> f64 {
        *self.half_width.borrow()
    }

    fn note(&self, hw: f64) {
        let mut h = self.half_width.borrow_mut();
        *h = h.max(hw);
    }

    fn u(&self, k: &Cone, v: &Subspace) -> Result<RingValue, StarError> {
        let key = (k.clone(), v.clone());
        if let Some((x, _)) = self.conical.borrow().get(&key) {
            return Ok(x.clone());
        }
        let a = cone_volume(k, v, self.opts)?;
        self.note(a.half_width);
        self.conical.borrow_mut().insert(key, (a.value.clone(), a.half_width));
        Ok(a.value)
    }

    fn w(&self, k: &Cone) -> Result<RingValue, StarError> {
        if let Some((x, _)) = self.dual.borrow().get(k) {
            return Ok(x.clone());
        }
        let a = cone_dual_volume(k, self.opts)?;
        self.note(a.half_width);
        self.dual.borrow_mut().insert(k.clone(), (a.value.clone(), a.half_width));
        Ok(a.value)
    }

    pub fn object(&self, o: &Object, v: &Subspace) -> Result<RingValue, StarError> {
        let n = v.ambient();
        match o {
            Object::Scalar(a) => Ok(a.pow(v.dim() as u32)?),
            Object::Space(u) => Ok(indicator(contained_padded(v, u))),
            Object::FrameSpan(fr) => Ok(indicator(v.is_subspace_of(&fr.span(n)))),
            Object::FrameComplement(fr) => Ok(indicator(v.is_subspace_of(&fr.span(n).complement()))),
            Object::Product(list) => {
                let mut acc = RingValue::one();
                for x in list {
                    acc = acc.mul(&self.object(x, v)?)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            Object::Source(f) => self.cone(f, &Cone::subspace(v), v),
            Object::Target(f) => self.cone(f, &Cone::origin(n), v),
            Object::Location(g) => self.polytope(g, &Polytope::point(&vec![Rational::zero(); n]), v),
        }
    }

    /// `F_V(K)` for a closed convex cone `K ⊂ V`.
    pub fn cone(&self, f: &Morphism, k: &Cone, v: &Subspace) -> Result<RingValue, StarError> {
        match f {
            Morphism::Epsilon => Ok(RingValue::one()),
            Morphism::LocalEuler => Ok(if !k.is_subspace() {
                RingValue::zero()
            } else {
                RingValue::from(if k.dim().is_multiple_of(2) { 1 } else { -1 })
            }),
            Morphism::ConicalVolume => self.u(k, v),
            Morphism::DualVolume => self.w(k),
            Morphism::Zero => Ok(indicator(v.dim() == 0)),
            Morphism::FrameL(fr) => Ok(indicator(fr.cone_nonneg(k))),
            Morphism::Scale(o, g) => {
                let a = self.object(o, v)?;
                if a.is_zero() {
                    return Ok(RingValue::zero());
                }
                Ok(a.mul(&self.cone(g, k, v)?)?)
            }
            Morphism::Star(a, b) => self.star_cone(a, b, k, v),
            Morphism::Dual(g) => self.cone(g, &k.dual_in(v)?, v),
            Morphism::Interior(g) => {
                let x = ConeElement::from_cone(v, k)?.interior();
                self.cone_element(g, &x)
            }
            Morphism::Reflect(g) => self.cone(g, &k.negate(), v),
            Morphism::Mapped(m, g) => Ok(m.apply(&self.cone(g, k, v)?)?),
        }
    }

    /// Linear extension over the pieces of a cone element, in its space.
    pub fn cone_element(&self, f: &Morphism, x: &ConeElement) -> Result<RingValue, StarError> {
        let mut acc = RingValue::zero();
        for (k, c) in x.terms() {
            acc = add(&acc, &scale_int(&self.cone(f, k, x.space())?, c)?)?;
        }
        Ok(acc)
    }

    /// `G_σ(int σ) = Σ_{τ ≤ σ} (-1)^(dim σ - dim τ) G_σ(τ)` for a cone σ.
    fn open_cone(&self, g: &Morphism, sigma: &Cone) -> Result<RingValue, StarError> {
        let span = sigma.span();
        let mut acc = RingValue::zero();
        for t in sigma.faces() {
            let tau = sigma.face_cone(t);
            let val = self.cone(g, &tau, &span)?;
            acc = if (sigma.dim() - t.dim).is_multiple_of(2) { add(&acc, &val)? } else { acc.sub(&val)? };
        }
        Ok(acc)
    }

    /// `(F⋆G)_V(K) = Σ_σ F_{V∩σ⊥}(ν(σ,K)) G_σ(int σ)` over the faces σ of K.
    fn star_cone(&self, f: &Morphism, g: &Morphism, k: &Cone, v: &Subspace) -> Result<RingValue, StarError> {
        let mut acc = RingValue::zero();
        for face in k.faces() {
            let sigma = k.face_cone(face);
            let vp = v.intersect(&sigma.span().complement());
            let nu = k.normal_cone(&sigma);
            let fv = self.cone(f, &nu, &vp)?;
            if fv.is_zero() {
                continue;
            }
            let gv = self.open_cone(g, &sigma)?;
            acc = add(&acc, &fv.mul(&gv)?)?;
        }
        Ok(acc)
    }

    /// `G_V(P)` for a convex polytope `P` lying in a translate of `V`.
    pub fn polytope(&self, g: &PolytopeInvariant, p: &Polytope, v: &Subspace) -> Result<RingValue, StarError> {
        match g {
            PolytopeInvariant::Euler => Ok(RingValue::one()),
            PolytopeInvariant::Volume => {
                if p.dim() != v.dim() {
                    return Ok(RingValue::zero());
                }
                let vol = p.volume();
                Ok(ExactReal::scaled_sqrt(&vol.coef, &vol.radicand).into())
            }
            PolytopeInvariant::Zero => Ok(indicator(v.dim() == 0)),
            PolytopeInvariant::Scale(o, h) => {
                let a = self.object(o, v)?;
                if a.is_zero() {
                    return Ok(RingValue::zero());
                }
                Ok(a.mul(&self.polytope(h, p, v)?)?)
            }
            PolytopeInvariant::Transport(f, h) => self.star_polytope(f, h, p, v),
            PolytopeInvariant::Interior(h) => {
                let x = PolytopeElement::from_polytope(p).interior();
                let mut acc = RingValue::zero();
                for (q, c) in x.terms() {
                    acc = add(&acc, &scale_int(&self.polytope(h, q, v)?, c)?)?;
                }
                Ok(acc)
            }
            PolytopeInvariant::Reflect(h) => self.polytope(h, &p.dilate(&Rational::from_integer((-1).into())), v),
            PolytopeInvariant::Mapped(m, h) => Ok(m.apply(&self.polytope(h, p, v)?)?),
        }
    }

    /// Linear extension over the pieces of a polytope element in `Q^n`.
    pub fn polytope_element(&self, g: &PolytopeInvariant, x: &PolytopeElement) -> Result<RingValue, StarError> {
        self.polytope_element_in(g, x, &Subspace::full(x.ambient()))
    }

    pub fn polytope_element_in(
        &self,
        g: &PolytopeInvariant,
        x: &PolytopeElement,
        v: &Subspace,
    ) -> Result<RingValue, StarError> {
        let mut acc = RingValue::zero();
        for (p, c) in x.terms() {
            acc = add(&acc, &scale_int(&self.polytope(g, p, v)?, c)?)?;
        }
        Ok(acc)
    }

    fn open_polytope(&self, g: &PolytopeInvariant, sigma: &Polytope) -> Result<RingValue, StarError> {
        let dir = sigma.direction();
        let d = sigma.dim();
        let mut acc = RingValue::zero();
        for (tau, dt) in sigma.faces_with_dims() {
            let val = self.polytope(g, &tau, &dir)?;
            acc = if (d - dt).is_multiple_of(2) { add(&acc, &val)? } else { acc.sub(&val)? };
        }
        Ok(acc)
    }

    /// `(F⋆G)_V(P) = Σ_σ F_{V∩σ⊥}(ν(σ,P)) G_σ(int σ)` over the faces σ of P.
    fn star_polytope(
        &self,
        f: &Morphism,
        g: &PolytopeInvariant,
        p: &Polytope,
        v: &Subspace,
    ) -> Result<RingValue, StarError> {
        let mut acc = RingValue::zero();
        for (sigma, _) in p.faces_with_dims() {
            let vp = v.intersect(&sigma.direction().complement());
            let nu = p.germ_cone_projected(&sigma);
            let fv = self.cone(f, &nu, &vp)?;
            if fv.is_zero() {
                continue;
            }
            let gv = self.open_polytope(g, &sigma)?;
            acc = add(&acc, &fv.mul(&gv)?)?;
        }
        Ok(acc)
    }
}
