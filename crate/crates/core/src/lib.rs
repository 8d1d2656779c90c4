//! Exact tools for two-dimensional substitutions, Wang tiles and polygon
//! exchange transformations on the torus, together with the pipelines that
//! check they describe the same aperiodic subshift.

pub mod data;
pub mod exactnum;
pub mod geometry;
pub mod markers;
pub mod morphism2d;
pub mod pet;
pub mod selfsim;
pub mod wangtiles;
pub mod word2d;

pub use exactnum::{Golden, NumError};
pub use markers::{find_markers, find_substitution, fuse, is_equivalent, DesubstitutionResult, MarkerReport, Side};
pub use morphism2d::{Morphism2d, MorphismError};
pub use wangtiles::{Lattice, TileIndex, TilingInstance, WangTile, WangTileSet};
pub use word2d::{Axis, Language2d, Letter, Shape, Word2d, WordError};
pub use geometry::{GeometryError, Point, Polygon, Region, TorusPartition};
pub use pet::{Pet, PetError, Window, Z2Action};
pub use selfsim::{verify_all, PipelineError, VerificationReport, VerifyOptions};
