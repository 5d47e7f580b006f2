//! Shared plumbing: error classification, code resolution, formatting.

use std::fmt;
use std::path::Path;

use grandlab::codes::{self, bch_code, hamming74, LinearCode, MatrixFormat};
use grandlab::orbgrand::{generate_ep_set, EpSet};

use crate::args::{BuiltinCode, CodeSource, DecoderArg, FormatArg, MessageModeArg};
use grandlab::channel::{DecoderKind, MessageMode};

/// Exit codes: 0 success, 2 usage (clap), 3 data, 4 internal.
#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Data(_) => 3,
            AppError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(m) => write!(f, "usage error: {m}"),
            AppError::Data(m) => write!(f, "error: {m}"),
            AppError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<grandlab::Error> for AppError {
    fn from(e: grandlab::Error) -> Self {
        AppError::Data(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Data(e.to_string())
    }
}

pub type AppResult<T> = Result<T, AppError>;

impl FormatArg {
    pub fn to_core(self) -> MatrixFormat {
        match self {
            FormatArg::Dense => MatrixFormat::DenseText,
            FormatArg::Alist => MatrixFormat::Alist,
        }
    }
}

impl DecoderArg {
    pub fn to_core(self) -> DecoderKind {
        match self {
            DecoderArg::Orbgrand => DecoderKind::Orbgrand,
            DecoderArg::ElimFull => DecoderKind::ElimFull,
            DecoderArg::ElimReduced => DecoderKind::ElimReduced,
        }
    }
}

impl MessageModeArg {
    pub fn to_core(self) -> MessageMode {
        match self {
            MessageModeArg::AllZero => MessageMode::AllZero,
            MessageModeArg::Random => MessageMode::Random,
        }
    }
}

/// Metadata accompanying a resolved code, for manifests and sidecars.
pub struct ResolvedCode {
    pub code: LinearCode,
    pub source_desc: String,
    pub primitive_poly: Option<String>,
    pub generator_poly: Option<String>,
}

pub fn resolve_code(source: &CodeSource) -> AppResult<ResolvedCode> {
    match (&source.code, &source.matrix) {
        (Some(builtin), None) => Ok(match builtin {
            BuiltinCode::Hamming74 => {
                let bch = bch_code(3, 7, 1).map_err(AppError::from)?;
                ResolvedCode {
                    code: hamming74(),
                    source_desc: "builtin hamming74".into(),
                    primitive_poly: Some(format!("{:#x}", bch.field.primitive_poly())),
                    generator_poly: Some(bch.generator_poly.to_coeff_string()),
                }
            }
            BuiltinCode::Bch127_113 => {
                let bch = bch_code(7, 127, 2).map_err(AppError::from)?;
                ResolvedCode {
                    primitive_poly: Some(format!("{:#x}", bch.field.primitive_poly())),
                    generator_poly: Some(bch.generator_poly.to_coeff_string()),
                    source_desc: "builtin bch127_113".into(),
                    code: bch.code,
                }
            }
        }),
        (None, Some(path)) => {
            let code = codes::load_matrix(path, source.format.to_core())?;
            if code.is_rank_deficient() {
                eprintln!(
                    "warning: parity-check matrix is rank deficient (rank {} < {} rows); \
                     decoding proceeds with effective redundancy {}",
                    code.h_rank(),
                    code.n() - code.k(),
                    code.h_rank()
                );
            }
            Ok(ResolvedCode {
                source_desc: format!("matrix {}", path.display()),
                primitive_poly: None,
                generator_poly: None,
                code,
            })
        }
        (None, None) => Err(AppError::Usage(
            "a code is required: pass --code or --matrix".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

pub fn build_ep_set(
    n: usize,
    budget: usize,
    ep_order: Option<&Path>,
) -> AppResult<(EpSet, String)> {
    match ep_order {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let eps = EpSet::import(n, &text)?;
            Ok((eps, format!("imported {}", path.display())))
        }
        None => {
            let eps = generate_ep_set(n, budget)?;
            Ok((
                eps,
                "generated: ascending logistic weight, ties by Hamming weight then lexicographic"
                    .into(),
            ))
        }
    }
}

/// Floats in reports carry six significant digits.
pub fn fmt_g6(x: f64) -> String {
    format!("{x:.5e}")
}

/// Eb/N0 tag for file names: `5` for 5.0, `4.5` for 4.5.
pub fn db_tag(db: f64) -> String {
    if db.fract() == 0.0 {
        format!("{}", db as i64)
    } else {
        format!("{db}")
    }
}
