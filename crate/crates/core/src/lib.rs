//! Root systems of finite acyclic quivers: Euler and Tits forms, exact
//! classification, generic hom/ext, canonical decompositions and the
//! accumulation rays of real Schur roots.

pub mod accumulation;
pub mod candecomp;
pub mod cli;
pub mod corpus;
pub mod homext;
pub mod linalg;
pub mod quiver_core;
pub mod roots;

use homext::HomExtTable;
use quiver_core::{FormData, Quiver};

/// A quiver bundled with its forms and a hom/ext memo table.
#[derive(Debug)]
pub struct QuiverContext {
    quiver: Quiver,
    forms: FormData,
    homext: HomExtTable,
}

impl QuiverContext {
    pub fn new(quiver: Quiver) -> Self {
        let forms = FormData::new(&quiver);
        let homext = HomExtTable::new(&forms);
        QuiverContext {
            quiver,
            forms,
            homext,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn forms(&self) -> &FormData {
        &self.forms
    }

    pub fn homext(&self) -> &HomExtTable {
        &self.homext
    }

    pub fn n(&self) -> usize {
        self.quiver.vertex_count()
    }
}
