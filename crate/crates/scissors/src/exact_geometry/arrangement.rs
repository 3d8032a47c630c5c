//! Refinement of convex pieces along a hyperplane arrangement.
//!
//! Every piece is cut into relatively open cells, each labelled by its sign
//! vector over the arrangement. When the arrangement contains the facet
//! hyperplanes and span equations of every piece, two cells from different
//! pieces with the same sign vector are the same set.

use super::cone::Cone;
use super::linalg::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// A relatively open cell: relint(`closure`), with its sign vector.
#[derive(Clone, Debug)]
pub struct ArrangementCell {
    pub signs: Vec<i8>,
    pub closure: Cone,
}

impl ArrangementCell {
    pub fn dim(&self) -> usize {
        self.closure.dim()
    }
}

/// Hyperplanes through the origin whose union contains the relative boundary of
/// the cone, together with equations of its span. Normals are primitive with
/// positive leading entry.
pub fn hyperplanes_of(c: &Cone) -> Vec<IVec> {
    let f = c.facets();
    let mut out: Vec<IVec> = f
        .normals
        .iter()
        .chain(f.equations.iter())
        .map(|v| sign_normalized(primitive(v.clone())))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn union_hyperplanes<'a>(pieces: impl IntoIterator<Item = &'a Cone>) -> Vec<IVec> {
    let mut set = BTreeSet::new();
    for p in pieces {
        for h in hyperplanes_of(p) {
            set.insert(h);
        }
    }
    set.into_iter().collect()
}

/// Sign of `h` on the relative interior of `c`, or `None` when `h` changes sign
/// on it.
pub fn sign_on_relint(c: &Cone, h: &[BigInt]) -> Option<i8> {
    if c.lineality().iter().any(|l| !dot_i(h, l).is_zero()) {
        return None;
    }
    let mut pos = false;
    let mut neg = false;
    for r in c.rays() {
        let v = dot_i(h, r);
        if v.is_positive() {
            pos = true;
        } else if v.is_negative() {
            neg = true;
        }
    }
    match (pos, neg) {
        (true, true) => None,
        (true, false) => Some(1),
        (false, true) => Some(-1),
        (false, false) => Some(0),
    }
}

/// Cuts the relatively open faces of `piece` along `hyperplanes`. With
/// `skip_apex` the face without rays is dropped (homogenized polytopes).
pub fn refine(piece: &Cone, hyperplanes: &[IVec], skip_apex: bool) -> Vec<ArrangementCell> {
    let mut work: Vec<(Vec<i8>, Cone)> = piece
        .faces()
        .iter()
        .filter(|f| !(skip_apex && f.rays.is_empty()))
        .map(|f| (Vec::with_capacity(hyperplanes.len()), piece.face_cone(f)))
        .collect();
    for h in hyperplanes {
        let mut next = Vec::with_capacity(work.len());
        for (signs, c) in work {
            match sign_on_relint(&c, h) {
                Some(s) => {
                    let mut s2 = signs;
                    s2.push(s);
                    next.push((s2, c));
                }
                None => {
                    let neg: IVec = neg_i(h);
                    for (s, part) in [(1i8, c.cut(h, false)), (0, c.cut(h, true)), (-1, c.cut(&neg, false))] {
                        let mut s2 = signs.clone();
                        s2.push(s);
                        next.push((s2, part));
                    }
                }
            }
        }
        work = next;
    }
    work.into_iter()
        .map(|(signs, closure)| ArrangementCell { signs, closure })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_against_axis() {
        let q = Cone::orthant(2, &[0, 1]);
        let hs = vec![ivec(&[1, -1])];
        let cells = refine(&q, &hs, false);
        // origin, two rays, diagonal ray, two open sectors
        assert_eq!(cells.len(), 6);
        let dims: Vec<usize> = cells.iter().map(|c| c.dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 2);
    }

    #[test]
    fn line_split_by_point() {
        let line = Cone::whole(1);
        let cells = refine(&line, &[ivec(&[1])], false);
        assert_eq!(cells.len(), 3);
    }
}
