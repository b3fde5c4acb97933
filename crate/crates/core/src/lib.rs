//! Exact finite geometry in PG(2,q^3) around an order-3 planar collineation.
//!
//! The crate builds GF(q^3) from discrete-log tables, enumerates the plane,
//! partitions it into orbits of the stabiliser `S_T`, and constructs the
//! Fig-blocks and the Figueroa plane FIG(q^3). Every structural statement
//! about these objects is exposed as an exhaustive check.

pub mod collineation;
pub mod error;
pub mod field;
pub mod figueroa;
pub mod linalg;
pub mod maps;
pub mod plane;
pub mod special;
pub mod verify;

pub use collineation::{Category, ObjType, Side, TypeTables};
pub use error::{FieldError, GeometryError};
pub use field::{Elem, Field, FieldSpec};
pub use figueroa::{FigBlock, IncidencePlane};
pub use maps::{ImageKind, LinearSetImage, MuImage};
pub use plane::{frame, Line, Plane, Point};
pub use special::{SlsId, SubplaneSet};
