pub mod factor;
pub mod field;
pub mod linalg;
pub mod place;
pub mod poly;
pub mod ratfunc;

pub use factor::{extension_field, factorize, factorize_seeded, is_irreducible, Factorization};
pub use field::{enumerate_units, make_field, mul_order, prime_power, Field, FieldSpec, FqElem};
pub use place::{finite_places_up_to, valuation, Place, PlaceKind, Valuation};
pub use poly::{poly_gcd, poly_ext_gcd, Degree, FqPoly};
pub use ratfunc::RatFunc;
