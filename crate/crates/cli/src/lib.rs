//! Command-line front end and local evaluation service.
//!
//! `validate` evaluates descriptor files (or the bundled scenarios) and writes
//! JSON, Markdown or HTML reports. `serve` exposes the same evaluation over
//! HTTP on the loopback interface for the scenario builder.

pub mod args;
pub mod service;
pub mod validate;

use std::path::Path;

use tiergov_core::{load_catalog, CatalogError, KnowledgeBase};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Input = 1,
    Catalog = 2,
}

/// A failure carrying the exit status it maps to.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            exit: Exit::Input,
            message: message.into(),
        }
    }

    pub fn catalog(message: impl Into<String>) -> Self {
        Failure {
            exit: Exit::Catalog,
            message: message.into(),
        }
    }
}

/// The bundled catalog, or the one at `path`.
pub fn open_catalog(path: Option<&Path>) -> Result<KnowledgeBase, Failure> {
    let result = match path {
        None => KnowledgeBase::bundled(),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::input(format!("cannot read catalog {}: {e}", p.display())))?;
            load_catalog(&text)
        }
    };
    result.map_err(|e| match e {
        CatalogError::Parse(_) | CatalogError::Integrity { .. } => Failure::catalog(e.to_string()),
    })
}
