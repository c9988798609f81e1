//! Twisted Alexander polynomials and Reidemeister torsion of knot exteriors
//! along curves of SL(2, C) characters.

pub mod algebra;
pub mod knots;
pub mod reps;
pub mod torsion;
pub mod dfj;
pub mod explorer;
pub mod io;
