//! Quivers, their bilinear forms, exact signatures and classification.

mod classify;
mod dimvec;
mod forms;
mod quiver;
mod signature;

pub use classify::{base_type, classify, sym_det, BaseType, ComponentClass, QuiverClass};
pub use dimvec::DimVector;
pub use forms::FormData;
pub use quiver::{Quiver, QuiverError, QuiverFile, Relabeling};
pub use signature::{signature, Signature, SignatureError};
