//! BCH construction: parity-check matrix file plus a JSON sidecar.

use serde::Serialize;

use grandlab::codes::{bch_code, format_matrix};

use crate::args::GenCodeArgs;
use crate::common::{AppError, AppResult};

#[derive(Serialize)]
struct Sidecar {
    name: String,
    n: usize,
    k: usize,
    primitive_poly: String,
    generator_poly: String,
}

pub fn run(args: GenCodeArgs) -> AppResult<()> {
    let bch = bch_code(args.m, args.n, args.t)?;
    std::fs::create_dir_all(&args.out)?;
    let stem = format!("bch_{}_{}", bch.code.n(), bch.code.k());

    let ext = match args.format {
        crate::args::FormatArg::Dense => "txt",
        crate::args::FormatArg::Alist => "alist",
    };
    let matrix_path = args.out.join(format!("{stem}.{ext}"));
    std::fs::write(
        &matrix_path,
        format_matrix(bch.code.parity_check(), args.format.to_core()),
    )?;

    let sidecar = Sidecar {
        name: bch.code.name().to_string(),
        n: bch.code.n(),
        k: bch.code.k(),
        primitive_poly: format!("{:#x}", bch.field.primitive_poly()),
        generator_poly: bch.generator_poly.to_coeff_string(),
    };
    let json =
        serde_json::to_string_pretty(&sidecar).map_err(|e| AppError::Internal(e.to_string()))?;
    std::fs::write(args.out.join(format!("{stem}.json")), json + "\n")?;
    println!(
        "wrote {} and {}.json (n = {}, k = {})",
        matrix_path.display(),
        args.out.join(&stem).display(),
        bch.code.n(),
        bch.code.k()
    );
    Ok(())
}
