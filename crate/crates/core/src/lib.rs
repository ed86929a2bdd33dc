//! Domino insertion, cycles on domino tableaux and combinatorial cells for the
//! Weyl group of type `B_n` with unequal parameters, together with an exact
//! Kazhdan–Lusztig cell computation used as an independent oracle.

pub mod cells;
pub mod cycles;
pub mod error;
pub mod hecke;
pub mod insertion;
pub mod shapes;
pub mod tableaux;
pub mod verify;
pub mod wgroup;

pub use error::{Error, Result};
pub use shapes::{Domino, Shape, Square};
pub use tableaux::{DominoTableau, TableauPair};
pub use wgroup::{DescentSet, Generator, SignedPermutation};
pub use cells::{CellPartition, Side};
pub use cycles::{Convention, Cycle, CycleKind};
pub use hecke::{HeckeElement, KlOracle, LaurentPolynomial, WeightFunction};
