//! Milnor K-theory mod 2 over finite fields and `F_q(t)`, and Gersten
//! complexes of the affine and projective line.

pub mod field;
pub mod gersten;
pub mod poly;
pub mod symbol;

pub use field::{Elem, FiniteField};
pub use gersten::{gersten_complex, reduction_map, two_level_pair, GerstenComplex, Space};
pub use poly::{Place, PlaceData, Poly, PolyRing, RatFn};
pub use symbol::{
    function_kgroup, k2_bruteforce_check, kgroup, kgroup_bruteforce, normalize, tame_symbol, FiniteKGroup,
    FunctionField, FunctionKGroup, Symbol,
};
