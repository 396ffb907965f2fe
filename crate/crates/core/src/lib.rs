//! Exact construction and verification of group cocycles on groups of
//! polynomial diffeomorphisms of ℝⁿ that preserve exact forms.
//!
//! The pipeline is: exterior calculus on polynomial forms ([`poly_forms`]),
//! concrete group elements ([`diffeo`]), affine chains with exact integration
//! ([`chains`]), the group-cochain / de Rham bicomplex ([`cochain`]) and the
//! zig-zag descent producing the real-valued cocycle ([`zigzag`]).
//!
//! All types are generic over a [`Scalar`]; the `Q*` aliases below fix the
//! exact rational instantiation that every verification path uses.

pub mod chains;
pub mod checks;
pub mod cochain;
pub mod diffeo;
pub mod error;
pub mod json;
pub mod poly_forms;
pub mod random;
pub mod scalar;
pub mod zigzag;

pub use chains::{AffineSimplex, Chain};
pub use cochain::{
    big_d, big_d_capped, big_f_gamma, delta_double_prime, delta_prime, delta_prime_capped, f_gamma, transgress,
    FormCochain, RealCochain,
};
pub use diffeo::{GroupPresentation, NamedForm, PolyDiffeo};
pub use error::{Error, Result};
pub use poly_forms::{MultiIndex, PolyForm, PolyVectorField, Polynomial};
pub use random::{Bounds, RandomInputs};
pub use scalar::{Rational, Scalar};
pub use zigzag::{closed_form_translation, CocycleIdentityReport, ZigzagState};

pub type QPolynomial = Polynomial<Rational>;
pub type QForm = PolyForm<Rational>;
pub type QVectorField = PolyVectorField<Rational>;
pub type QDiffeo = PolyDiffeo<Rational>;
pub type QChain = Chain<Rational>;
pub type QGroup = GroupPresentation<Rational>;
pub type QZigzag = ZigzagState<Rational>;
