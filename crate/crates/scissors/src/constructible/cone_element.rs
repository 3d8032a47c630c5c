use super::{add_term, normal_form, signed_faces, ConstructibleError, OpenCell};
use crate::exact_geometry::linalg::{dot_q, QVec, Rational};
use crate::exact_geometry::{Cone, Subspace};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// An element of Σ(V): a finite integer combination of closed convex cones
/// inside the subspace `V` of Q^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    space: Subspace,
    terms: BTreeMap<Cone, BigInt>,
}

impl ConeElement {
    pub fn zero(space: &Subspace) -> Self {
        ConeElement { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn from_cone(space: &Subspace, c: &Cone) -> Result<Self, ConstructibleError> {
        if c.ambient() != space.ambient() || !c.span().is_subspace_of(space) {
            return Err(ConstructibleError::OutsideSpace);
        }
        let mut e = ConeElement::zero(space);
        add_term(&mut e.terms, c.clone(), BigInt::one());
        Ok(e)
    }

    /// A cone in the whole of Q^n.
    pub fn cone(c: &Cone) -> Self {
        ConeElement::from_cone(&Subspace::full(c.ambient()), c).expect("full space contains every cone")
    }

    pub fn from_terms(space: &Subspace, terms: &[(Cone, i64)]) -> Result<Self, ConstructibleError> {
        let mut e = ConeElement::zero(space);
        for (c, k) in terms {
            e = e.add(&ConeElement::from_cone(space, c)?.scale(*k));
        }
        Ok(e)
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cone, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, o: &ConeElement) -> ConeElement {
        assert_eq!(self.space, o.space, "cone elements live in different spaces");
        let mut r = self.clone();
        for (c, k) in &o.terms {
            add_term(&mut r.terms, c.clone(), k.clone());
        }
        r
    }

    pub fn neg(&self) -> ConeElement {
        self.scale(-1)
    }

    pub fn sub(&self, o: &ConeElement) -> ConeElement {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> ConeElement {
        self.scale_big(&BigInt::from(k))
    }

    pub fn scale_big(&self, k: &BigInt) -> ConeElement {
        let mut r = ConeElement::zero(&self.space);
        for (c, w) in &self.terms {
            add_term(&mut r.terms, c.clone(), w * k);
        }
        r
    }

    /// The same element regarded inside a larger subspace.
    pub fn in_space(&self, space: &Subspace) -> Result<ConeElement, ConstructibleError> {
        if !self.space.is_subspace_of(space) {
            return Err(ConstructibleError::OutsideSpace);
        }
        Ok(ConeElement { space: space.clone(), terms: self.terms.clone() })
    }

    /// Interior involution: `I[K] = Σ_F (-1)^dim F [F]` over faces of each
    /// piece.
    pub fn interior(&self) -> ConeElement {
        let mut out = BTreeMap::new();
        for (c, k) in &self.terms {
            signed_faces(c, false, 0, k, &mut out);
        }
        ConeElement { space: self.space.clone(), terms: out }
    }

    /// Duality in V, termwise on convex pieces.
    pub fn dual(&self) -> ConeElement {
        let mut out = BTreeMap::new();
        for (c, k) in &self.terms {
            let d = c.dual_in(&self.space).expect("pieces lie in the space");
            add_term(&mut out, d, k.clone());
        }
        ConeElement { space: self.space.clone(), terms: out }
    }

    /// Dilatation `v ↦ λv`; only the sign of λ matters.
    pub fn dilate(&self, lambda: &Rational) -> Result<ConeElement, ConstructibleError> {
        if lambda.is_zero() {
            return Err(ConstructibleError::ZeroDilation);
        }
        if lambda.is_positive() {
            return Ok(self.clone());
        }
        let mut out = BTreeMap::new();
        for (c, k) in &self.terms {
            add_term(&mut out, c.negate(), k.clone());
        }
        Ok(ConeElement { space: self.space.clone(), terms: out })
    }

    /// External product in V × W ⊂ Q^(n+m).
    pub fn product(&self, o: &ConeElement) -> ConeElement {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                add_term(&mut out, a.product(b), x * y);
            }
        }
        ConeElement { space: self.space.product(&o.space), terms: out }
    }

    /// Pushforward along a linear map (rows of an m x n matrix) that is
    /// injective on V; the image lives in f(V).
    pub fn push_injective(&self, rows: &[QVec]) -> Result<ConeElement, ConstructibleError> {
        let m = rows.len();
        let image: Vec<QVec> =
            self.space.basis().iter().map(|b| rows.iter().map(|r| dot_q(r, b)).collect()).collect();
        let target = Subspace::span(m, &image);
        if target.dim() != self.space.dim() {
            return Err(ConstructibleError::UnsupportedMap("map is not injective on the cone space".into()));
        }
        let mut out = BTreeMap::new();
        for (c, k) in &self.terms {
            add_term(&mut out, c.linear_image(rows), k.clone());
        }
        Ok(ConeElement { space: target, terms: out })
    }

    /// Value at the origin.
    pub fn epsilon(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, k| a + k)
    }

    /// `χ(P, P - 0)`: a convex cone contributes `(-1)^dim W` when it is a
    /// subspace `W` and 0 otherwise.
    pub fn local_euler(&self) -> BigInt {
        self.terms
            .iter()
            .filter(|(c, _)| c.is_subspace())
            .fold(BigInt::zero(), |a, (c, k)| if c.dim() % 2 == 0 { a + k } else { a - k })
    }

    /// Compactly supported Euler characteristic; equal to `local_euler` for
    /// conical sets.
    pub fn euler_char(&self) -> BigInt {
        self.local_euler()
    }

    pub fn value_at(&self, x: &[Rational]) -> BigInt {
        self.terms.iter().filter(|(c, _)| c.contains(x)).fold(BigInt::zero(), |a, (_, k)| a + k)
    }

    pub fn normal_form(&self) -> Vec<OpenCell<Cone>> {
        normal_form(&self.terms, false, &[])
            .into_values()
            .map(|(closure, weight)| OpenCell { dim: closure.dim(), closure, weight })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.normal_form().is_empty()
    }

    /// Exact equality as constructible functions.
    pub fn equals(&self, o: &ConeElement) -> bool {
        self.space == o.space && self.sub(o).is_zero()
    }

    /// Dimension of the support, `None` for the zero element.
    pub fn support_dim(&self) -> Option<usize> {
        self.normal_form().iter().map(|c| c.dim).max()
    }

    /// Largest dimension of a piece; an upper bound for `support_dim`.
    pub fn max_piece_dim(&self) -> Option<usize> {
        self.terms.keys().map(|c| c.dim()).max()
    }

    /// Membership in the n-th filtration stage.
    pub fn in_filtration(&self, n: usize) -> bool {
        match self.max_piece_dim() {
            Some(d) if d > n => self.support_dim().is_none_or(|s| s <= n),
            _ => true,
        }
    }

    /// `δ_n ξ = ξ - (-1)^n I ξ`.
    pub fn delta(&self, n: usize) -> Result<ConeElement, ConstructibleError> {
        if !self.in_filtration(n) {
            return Err(ConstructibleError::Filtration { n, support: self.support_dim().unwrap_or(0) });
        }
        let i = self.interior();
        Ok(if n.is_multiple_of(2) { self.sub(&i) } else { self.add(&i) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{ivec, q};

    fn half_line() -> Cone {
        Cone::orthant(1, &[0])
    }

    #[test]
    fn table_values_on_line_pieces() {
        let d = ConeElement::cone(&half_line());
        let s = ConeElement::cone(&Cone::whole(1));
        let t = ConeElement::cone(&Cone::origin(1));
        assert_eq!(d.epsilon(), BigInt::from(1));
        assert_eq!(s.local_euler(), BigInt::from(-1));
        assert_eq!(d.local_euler(), BigInt::from(0));
        // t + s = d + Δ(-1)d
        assert!(t.add(&s).equals(&d.add(&d.dilate(&q(-1)).unwrap())));
        // I t = t, I s = -s, I d = -d' with d' = d - t
        assert!(t.interior().equals(&t));
        assert!(s.interior().equals(&s.neg()));
        assert!(d.interior().equals(&d.sub(&t).neg()));
        assert!(t.dual().equals(&s));
        // polar convention: the dual of a half-line is the opposite half-line
        assert!(d.dual().equals(&d.dilate(&q(-1)).unwrap()));
    }

    #[test]
    fn involutions() {
        let c = Cone::from_generators(3, &[ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[-1, -1, 2])], &[]);
        let h = Cone::from_hrep(3, &[], &[ivec(&[1, 1, 0])]);
        let x = ConeElement::cone(&c).scale(2).sub(&ConeElement::cone(&h));
        assert!(x.interior().interior().equals(&x));
        assert!(x.dual().dual().equals(&x));
        assert_eq!(x.interior().epsilon(), x.local_euler());
    }

    #[test]
    fn delta_squares_to_zero() {
        let q2 = ConeElement::cone(&Cone::orthant(2, &[0, 1]));
        let d2 = q2.delta(2).unwrap();
        assert_eq!(d2.support_dim(), Some(1));
        assert!(d2.delta(1).unwrap().is_zero());
        assert!(q2.delta(1).is_err());
    }

    #[test]
    fn normal_form_counts_cells() {
        let a = ConeElement::cone(&Cone::orthant(2, &[0, 1]));
        let b = ConeElement::cone(&Cone::from_generators(2, &[ivec(&[1, 1]), ivec(&[-1, 1])], &[]));
        let nf = a.add(&b).normal_form();
        let total: BigInt = nf.iter().filter(|c| c.dim == 0).map(|c| c.weight.clone()).sum();
        assert_eq!(total, BigInt::from(2));
        assert_eq!(a.add(&b).value_at(&[q(1), q(2)]), BigInt::from(2));
    }
}
