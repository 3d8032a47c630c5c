//! Builders for the named invariant families.

use super::invariant::{Frame, Morphism, Object, PolytopeInvariant};
use crate::exact_geometry::linalg::QVec;
use crate::ring_values::RingValue;

/// `T^{x,y} = (x∙𝒲) ⋆ (y∙𝒰)`.
pub fn t_xy(x: RingValue, y: RingValue) -> Morphism {
    Morphism::DualVolume.by(x).then(Morphism::ConicalVolume.by(y))
}

/// `S^{x,y} = (x∙𝒲) ⋆ (y∙𝒱)`.
pub fn s_xy(x: RingValue, y: RingValue) -> PolytopeInvariant {
    PolytopeInvariant::Volume.by(y).transported(Morphism::DualVolume.by(x))
}

/// Intrinsic volumes as an `R[x]`-valued invariant: `χ(n, P)` is the
/// coefficient of `x^n` in `(𝒲 ⋆ x∙𝒱)(P)`.
pub fn intrinsic() -> PolytopeInvariant {
    s_xy(RingValue::one(), RingValue::var("x"))
}

/// Conical intrinsic volumes `𝒲(j, P)` as coefficients of `x^j` in `𝒲 ⋆ x∙𝒰`.
pub fn conical_intrinsic() -> Morphism {
    t_xy(RingValue::one(), RingValue::var("x"))
}

/// `𝒲 ⋆ 0`, which equals `χ`.
pub fn star_w_zero() -> PolytopeInvariant {
    PolytopeInvariant::Zero.transported(Morphism::DualVolume)
}

/// `𝒰 ⋆ χ`, which vanishes.
pub fn star_u_euler() -> PolytopeInvariant {
    PolytopeInvariant::Euler.transported(Morphism::ConicalVolume)
}

/// `S̃^{x,y}`: `x∙𝒲` in the first slot of `R⊗R`, `y∙𝒱` in the second.
/// The coefficient of `y^j` at `x = 1` is `χ̃(j)`.
pub fn dehn_s(x: RingValue, y: RingValue) -> PolytopeInvariant {
    PolytopeInvariant::Volume
        .by(y)
        .in_slot(1, 2)
        .transported(Morphism::DualVolume.by(x).in_slot(0, 2))
}

/// `T̃^{x,y}`: as `dehn_s` with `𝒰` in place of `𝒱`.
pub fn dehn_t(x: RingValue, y: RingValue) -> Morphism {
    Morphism::DualVolume
        .by(x)
        .in_slot(0, 2)
        .then(Morphism::ConicalVolume.by(y).in_slot(1, 2))
}

/// `K = (𝒰 ⊗ 1) ⋆ (1 ⊗ 𝒲)`.
pub fn k_morphism() -> Morphism {
    Morphism::ConicalVolume.in_slot(0, 2).then(Morphism::DualVolume.in_slot(1, 2))
}

/// `T^{x_0, .., x_r}`: the ⋆-product of `T^{x_i, x_{i+1}}` placed in slot `i`
/// of `R^{⊗r}`; a single index gives `x_0∙ε`.
pub fn t_multi(xs: &[RingValue]) -> Morphism {
    assert!(!xs.is_empty(), "at least one index");
    let r = xs.len() - 1;
    if r == 0 {
        return Morphism::Epsilon.by(xs[0].clone());
    }
    (1..r).fold(t_xy(xs[0].clone(), xs[1].clone()).in_slot(0, r), |acc, i| {
        acc.then(t_xy(xs[i].clone(), xs[i + 1].clone()).in_slot(i, r))
    })
}

/// `S^{x_0, .., x_r}`: `T^{x_i, x_{i+1}}` in slots `0..r-1` followed by
/// `S^{x_{r-1}, x_r}` in the last slot.
pub fn s_multi(xs: &[RingValue]) -> PolytopeInvariant {
    assert!(xs.len() >= 2, "at least two indices");
    let r = xs.len() - 1;
    let last = s_xy(xs[r - 1].clone(), xs[r].clone()).in_slot(r - 1, r);
    if r == 1 {
        return last;
    }
    last.transported(t_multi(&xs[..r]).map(crate::ring_values::RingMap::PlaceSlots {
        positions: (0..r - 1).collect(),
        rank: r,
    }))
}

/// `L^U`.
pub fn frame_l(frame: &Frame) -> Morphism {
    Morphism::FrameL(frame.clone())
}

/// `(x O^W ∙ L^{-U}) ⋆ 𝒱`, whose `x^k` coefficient is the frame invariant
/// `f_U(P)`. The normal cone at the face maximizing `<-, u_1>` points
/// towards `-u_1`, hence the negated frame.
pub fn frame_polytope(frame: &Frame) -> PolytopeInvariant {
    let neg: Vec<QVec> = frame.vectors().iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    let neg = Frame::new(neg).expect("negating an orthonormal frame keeps it orthonormal");
    let obj = Object::var("x").times(Object::FrameSpan(frame.clone()));
    PolytopeInvariant::Volume.transported(Morphism::FrameL(neg).scaled(obj))
}
