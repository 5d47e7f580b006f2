pub mod analyze;
pub mod decode;
pub mod gencode;
pub mod simulate;
