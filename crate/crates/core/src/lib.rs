//! Constructive coisotropic embeddings of precosymplectic structures.
//!
//! The crate is organised bottom-up:
//!
//! * [`forms`]: exact exterior calculus for polynomial forms on a chart;
//! * [`coslinalg`]: exact linear algebra of (pre)symplectic and (pre)cosymplectic
//!   vector spaces;
//! * [`thicken`]: the thickening of a precosymplectic chart structure to a
//!   cosymplectic one on the dual of its characteristic bundle;
//! * [`moser`]: relative Poincaré primitives and the two-stage Moser flow that
//!   realises neighbourhood equivalences numerically.

pub mod coslinalg;
pub mod forms;
pub mod matrix;
pub mod moser;
pub mod rational;
pub mod thicken;
pub mod report;
pub mod sampling;
