#![no_std]
// `num_traits::Float` supplies sqrt, powf and friends on no_std builds. When a
// build links std (tests, or dev-dependencies unifying features) the inherent
// methods win and the import reads as unused.
#![allow(unused_imports)]
extern crate alloc;

pub mod ball_bodies;
pub mod bodies;
pub mod error;
pub mod hull;
pub mod intersection_bodies;
pub mod linalg;
pub mod lp;
pub mod quadrature;
pub mod rng;
pub mod sections;
pub mod special;
pub mod subspace;
pub mod verify;
pub mod volume;

pub use error::{GeomError, Result};
