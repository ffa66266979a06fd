//! The C3v double group: elements with their orbital and spinor actions,
//! the character table, reduction of representations and projection operators.
//!
//! Geometry convention: z is the NV axis, carbon 1 lies in the xz plane on the
//! +x side, carbons 2 and 3 follow at +120° and +240°. The mirror σv1 is the xz
//! plane, σv2 and σv3 contain carbons 2 and 3.

mod group;
mod project;

pub(crate) use group::site_directions;
pub use group::{
    build_double_group_c3v, ClassId, DoubleGroup, GroupElement, Irrep, IrrepName, RepCharacters, CLASS_SIZES,
    GROUP_ORDER,
};
pub use project::{Basis, DanglingBondRep, OrbitalRep, OrbitalVector, Representation, SpinorRep};
