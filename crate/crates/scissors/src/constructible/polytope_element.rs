use super::{add_term, normal_form, signed_faces, ConstructibleError, OpenCell};
use crate::exact_geometry::complex::triangulation_coefficients;
use crate::exact_geometry::linalg::{QVec, Rational};
use crate::exact_geometry::{CellComplex, Cone, GeometryError, Polytope, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// An element of P(Q^n): a finite integer combination of convex polytopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeElement {
    ambient: usize,
    terms: BTreeMap<Polytope, BigInt>,
}

impl PolytopeElement {
    pub fn zero(ambient: usize) -> Self {
        PolytopeElement { ambient, terms: BTreeMap::new() }
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        let mut e = PolytopeElement::zero(p.ambient());
        add_term(&mut e.terms, p.clone(), BigInt::one());
        e
    }

    /// Indicator of the support of a cell complex: every open cell gets weight 1.
    pub fn from_complex(k: &CellComplex) -> Self {
        let mut e = PolytopeElement::zero(k.ambient());
        for c in k.cells() {
            e = e.add(&PolytopeElement::open_cell(c));
        }
        e
    }

    /// Indicator of the relative interior of `p`.
    pub fn open_cell(p: &Polytope) -> Self {
        let x = PolytopeElement::from_polytope(p).interior();
        if p.dim().is_multiple_of(2) {
            x
        } else {
            x.neg()
        }
    }

    /// `Σ_σ (1 - χ Lk(σ, K)) [σ]` over the closed simplices of a geometric
    /// simplicial complex with the given vertex coordinates.
    pub fn from_triangulation(coords: &[QVec], k: &SimplicialComplex) -> Result<Self, GeometryError> {
        let n = coords.first().map_or(0, |v| v.len());
        let mut e = PolytopeElement::zero(n);
        for (s, c) in triangulation_coefficients(k) {
            let pts: Vec<QVec> = s.iter().map(|&i| coords[i].clone()).collect();
            let p = Polytope::from_points(n, &pts)?;
            add_term(&mut e.terms, p, BigInt::from(c));
        }
        Ok(e)
    }

    pub fn from_terms(ambient: usize, terms: &[(Polytope, i64)]) -> Self {
        let mut e = PolytopeElement::zero(ambient);
        for (p, k) in terms {
            add_term(&mut e.terms, p.clone(), BigInt::from(*k));
        }
        e
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Polytope, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, o: &PolytopeElement) -> PolytopeElement {
        assert_eq!(self.ambient, o.ambient, "polytope elements live in different spaces");
        let mut r = self.clone();
        for (p, k) in &o.terms {
            add_term(&mut r.terms, p.clone(), k.clone());
        }
        r
    }

    pub fn neg(&self) -> PolytopeElement {
        self.scale(-1)
    }

    pub fn sub(&self, o: &PolytopeElement) -> PolytopeElement {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> PolytopeElement {
        self.scale_big(&BigInt::from(k))
    }

    pub fn scale_big(&self, k: &BigInt) -> PolytopeElement {
        let mut r = PolytopeElement::zero(self.ambient);
        for (p, w) in &self.terms {
            add_term(&mut r.terms, p.clone(), w * k);
        }
        r
    }

    fn cone_terms(&self) -> BTreeMap<Cone, BigInt> {
        self.terms.iter().map(|(p, k)| (p.homogenized().clone(), k.clone())).collect()
    }

    fn from_cone_terms(ambient: usize, terms: BTreeMap<Cone, BigInt>) -> Self {
        PolytopeElement {
            ambient,
            terms: terms.into_iter().map(|(c, k)| (Polytope::from_cone_unchecked(ambient, c), k)).collect(),
        }
    }

    /// `I[P] = Σ_F (-1)^dim F [F]`.
    pub fn interior(&self) -> PolytopeElement {
        let mut out = BTreeMap::new();
        for (p, k) in &self.terms {
            signed_faces(p.homogenized(), true, 0, k, &mut out);
        }
        PolytopeElement::from_cone_terms(self.ambient, out)
    }

    pub fn product(&self, o: &PolytopeElement) -> PolytopeElement {
        let mut r = PolytopeElement::zero(self.ambient + o.ambient);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                add_term(&mut r.terms, a.product(b), x * y);
            }
        }
        r
    }

    pub fn dilate(&self, lambda: &Rational) -> Result<PolytopeElement, ConstructibleError> {
        if lambda.is_zero() {
            return Err(ConstructibleError::ZeroDilation);
        }
        let mut r = PolytopeElement::zero(self.ambient);
        for (p, k) in &self.terms {
            add_term(&mut r.terms, p.dilate(lambda), k.clone());
        }
        Ok(r)
    }

    pub fn translate(&self, t: &[Rational]) -> PolytopeElement {
        let mut r = PolytopeElement::zero(self.ambient);
        for (p, k) in &self.terms {
            add_term(&mut r.terms, p.translate(t), k.clone());
        }
        r
    }

    /// Pushforward along `x -> A x + b`: the value at `y` is the Euler
    /// characteristic of the fibre. Fibres of a convex polytope are convex, so
    /// each piece maps to the indicator of its image.
    pub fn pushforward(&self, rows: &[QVec], shift: &[Rational]) -> Result<PolytopeElement, ConstructibleError> {
        if rows.len() != shift.len() || rows.iter().any(|r| r.len() != self.ambient) {
            return Err(ConstructibleError::UnsupportedMap("matrix shape does not match the ambient space".into()));
        }
        let mut r = PolytopeElement::zero(rows.len());
        for (p, k) in &self.terms {
            add_term(&mut r.terms, p.affine_image(rows, shift), k.clone());
        }
        Ok(r)
    }

    /// Compactly supported Euler characteristic; every convex polytope has χ = 1.
    pub fn euler_char(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, k| a + k)
    }

    pub fn value_at(&self, x: &[Rational]) -> BigInt {
        self.terms.iter().filter(|(p, _)| p.contains(x)).fold(BigInt::zero(), |a, (_, k)| a + k)
    }

    pub fn normal_form(&self) -> Vec<OpenCell<Polytope>> {
        normal_form(&self.cone_terms(), true, &[])
            .into_values()
            .map(|(c, weight)| {
                let closure = Polytope::from_cone_unchecked(self.ambient, c);
                OpenCell { dim: closure.dim(), closure, weight }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.normal_form().is_empty()
    }

    pub fn equals(&self, o: &PolytopeElement) -> bool {
        self.ambient == o.ambient && self.sub(o).is_zero()
    }

    /// The element rewritten as `Σ weight · [open cell]`, a canonical form for
    /// a fixed arrangement.
    pub fn normalized(&self) -> PolytopeElement {
        let mut r = PolytopeElement::zero(self.ambient);
        for c in self.normal_form() {
            let cell = PolytopeElement::open_cell(&c.closure);
            for (p, k) in cell.terms {
                add_term(&mut r.terms, p, k * &c.weight);
            }
        }
        r
    }

    pub fn support_dim(&self) -> Option<usize> {
        self.normal_form().iter().map(|c| c.dim).max()
    }

    pub fn max_piece_dim(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.dim()).max()
    }

    pub fn in_filtration(&self, n: usize) -> bool {
        match self.max_piece_dim() {
            Some(d) if d > n => self.support_dim().is_none_or(|s| s <= n),
            _ => true,
        }
    }

    /// `δ_n ξ = ξ - (-1)^n I ξ`.
    pub fn delta(&self, n: usize) -> Result<PolytopeElement, ConstructibleError> {
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
    use crate::exact_geometry::linalg::{q, qfrac, qvec};

    fn segment() -> Polytope {
        Polytope::from_int_points(1, &[vec![0], vec![1]]).unwrap()
    }

    fn square() -> Polytope {
        Polytope::unit_cube(2)
    }

    #[test]
    fn closed_segment_has_three_unit_cells() {
        let nf = PolytopeElement::from_polytope(&segment()).normal_form();
        assert_eq!(nf.len(), 3);
        assert!(nf.iter().all(|c| c.weight == BigInt::one()));
    }

    #[test]
    fn interior_of_segment_is_minus_open_segment() {
        let s = PolytopeElement::from_polytope(&segment());
        let i = s.interior();
        let nf = i.normal_form();
        assert_eq!(nf.len(), 1);
        assert_eq!(nf[0].dim, 1);
        assert_eq!(nf[0].weight, BigInt::from(-1));
        assert_eq!(i.euler_char(), BigInt::one());
        assert_eq!(PolytopeElement::open_cell(&segment()).euler_char(), BigInt::from(-1));
        assert!(i.interior().equals(&s));
        let pt = PolytopeElement::from_polytope(&Polytope::point(&[q(3)]));
        assert!(pt.interior().equals(&pt));
    }

    #[test]
    fn delta_of_square_is_boundary() {
        let sq = PolytopeElement::from_polytope(&square());
        let b = sq.delta(2).unwrap();
        assert_eq!(b.value_at(&[qfrac(1, 2), qfrac(1, 2)]), BigInt::zero());
        assert_eq!(b.value_at(&[qfrac(1, 2), q(0)]), BigInt::one());
        assert_eq!(b.value_at(&[q(1), q(1)]), BigInt::one());
        assert!(b.delta(1).unwrap().is_zero());
        let pt = PolytopeElement::from_polytope(&Polytope::point(&[q(0), q(0)]));
        assert!(pt.delta(1).unwrap().equals(&pt.scale(2)));
    }

    #[test]
    fn projected_boundary_counts_fibres() {
        let b = PolytopeElement::from_polytope(&square()).delta(2).unwrap();
        let pr = b.pushforward(&[qvec(&[1, 0])], &[q(0)]).unwrap();
        assert_eq!(pr.value_at(&[qfrac(1, 3)]), BigInt::from(2));
        assert_eq!(pr.value_at(&[q(0)]), BigInt::one());
        assert_eq!(pr.value_at(&[q(1)]), BigInt::one());
        assert_eq!(pr.value_at(&[q(2)]), BigInt::zero());
    }

    #[test]
    fn segment_squared_is_square() {
        let s = PolytopeElement::from_polytope(&segment());
        assert!(s.product(&s).equals(&PolytopeElement::from_polytope(&square())));
        assert!(s.product(&s).interior().equals(&s.interior().product(&s.interior())));
    }

    #[test]
    fn valuation_law_on_overlapping_squares() {
        let a = Polytope::cuboid(&[q(0), q(0)], &[q(2), q(2)]);
        let b = Polytope::cuboid(&[q(1), q(1)], &[q(3), q(3)]);
        let i = Polytope::cuboid(&[q(1), q(1)], &[q(2), q(2)]);
        let u = PolytopeElement::from_polytope(&a).add(&PolytopeElement::from_polytope(&b));
        let nf = u.sub(&PolytopeElement::from_polytope(&i)).normal_form();
        assert!(nf.iter().all(|c| c.weight == BigInt::one()));
    }

    #[test]
    fn triangulation_coefficients_give_the_indicator() {
        let coords = vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])];
        let k = SimplicialComplex::simplex(2);
        let e = PolytopeElement::from_triangulation(&coords, &k).unwrap();
        let t = Polytope::from_points(2, &coords).unwrap();
        assert!(e.equals(&PolytopeElement::from_polytope(&t)));
        let cx = CellComplex::from_polytope(&t);
        assert!(PolytopeElement::from_complex(&cx).equals(&PolytopeElement::from_polytope(&t)));
    }
}
