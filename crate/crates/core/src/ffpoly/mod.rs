//! Arithmetic in F_q and F_q[T], irreducibility, and places of F_q(T).

mod field;
mod place;
mod poly;
mod text;

pub use field::{prime_power, FieldSpec, Fq, FqElem};
pub use place::{
    all_odd, count_irreducibles, monic_irreducibles, monic_polys, polys_up_to, AnyPlace, Place,
    RamSet,
};
pub use poly::Poly;
pub use text::{parse_elem, parse_poly, parse_poly_list};
