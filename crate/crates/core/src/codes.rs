//! Linear block codes: parity-check storage, file formats, and BCH
//! construction over GF(2^m).
//!
//! Two interchange formats are supported:
//!
//! - dense text: first line `rows cols`, then one row of space-free
//!   `0`/`1` characters per line;
//! - alist (MacKay's sparse format, padded variant).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Columns, OpCounter};

/// A binary linear block code described by its parity-check matrix.
#[derive(Clone)]
pub struct LinearCode {
    name: String,
    n: usize,
    k: usize,
    h: BitMatrix,
    h_rank: usize,
    h_cols: Columns,
}

impl LinearCode {
    /// Wraps a parity-check matrix. `k` is inferred as `n - rows`.
    ///
    /// A rank-deficient matrix is accepted (decoding only needs the check
    /// `H e = s`), but the deficiency is visible via [`Self::is_rank_deficient`]
    /// so callers can warn.
    pub fn from_parity_check(name: impl Into<String>, h: BitMatrix) -> Result<Self> {
        let n = h.n_cols();
        let rows = h.n_rows();
        if n == 0 || rows == 0 || rows >= n {
            return Err(Error::Dimension(format!(
                "parity-check matrix must be r x n with 0 < r < n, got {rows} x {n}"
            )));
        }
        let h_rank = h.rank();
        let h_cols = Columns::from_matrix(&h);
        Ok(Self {
            name: name.into(),
            n,
            k: n - rows,
            h,
            h_rank,
            h_cols,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    /// Column-major cache of `H`, shared by the decoders.
    pub fn parity_columns(&self) -> &Columns {
        &self.h_cols
    }

    pub fn h_rank(&self) -> usize {
        self.h_rank
    }

    pub fn is_rank_deficient(&self) -> bool {
        self.h_rank < self.n - self.k
    }

    /// True iff `w` satisfies every parity check.
    pub fn is_codeword(&self, w: &BitVector) -> bool {
        let mut c = OpCounter::new();
        self.h
            .mat_vec_mul(w, &mut c)
            .map(|s| s.is_zero())
            .unwrap_or(false)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode({}, n={}, k={})", self.name, self.n, self.k)
    }
}

/// Generator matrix with the info positions recorded, systematic up to
/// the column permutation chosen during elimination.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    matrix: BitMatrix,
    info_columns: Vec<usize>,
}

impl GeneratorMatrix {
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn info_columns(&self) -> &[usize] {
        &self.info_columns
    }

    /// Encodes a K-bit message: XOR of the generator rows selected by it.
    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.matrix.n_rows() {
            return Err(Error::LengthMismatch {
                left: self.matrix.n_rows(),
                right: message.len(),
            });
        }
        let mut w = BitVector::zeros(self.matrix.n_cols());
        let mut c = OpCounter::new();
        for i in message.iter_ones() {
            w.xor_into(self.matrix.row(i), &mut c)?;
        }
        Ok(w)
    }
}

/// Builds a K x N generator with `G H^T = 0` from a full-row-rank `H`.
///
/// Gauss-Jordan on a working copy of `H` picks pivot columns; the
/// remaining columns become the systematic info positions.
pub fn systematic_generator(code: &LinearCode) -> Result<GeneratorMatrix> {
    let r = code.n - code.k;
    if code.h_rank < r {
        return Err(Error::RankDeficient {
            rank: code.h_rank,
            rows: r,
        });
    }
    let mut work = code.h.clone();
    let mut counter = OpCounter::new();
    let mut pivot_cols = Vec::with_capacity(r);
    let mut pivot_row = 0;
    for col in 0..code.n {
        if pivot_row == r {
            break;
        }
        let Some(p) = (pivot_row..r).find(|&i| work.get(i, col)) else {
            continue;
        };
        work.swap_rows(pivot_row, p)?;
        for i in 0..r {
            if i != pivot_row && work.get(i, col) {
                work.xor_rows(i, pivot_row, &mut counter)?;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    debug_assert_eq!(pivot_cols.len(), r);

    let pivot_set: BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let info_columns: Vec<usize> = (0..code.n).filter(|c| !pivot_set.contains(c)).collect();

    // After Gauss-Jordan, row i of `work` reads e_i on the pivot columns,
    // so for every info column f the word with 1 at f and work[i][f] at
    // pivot column i satisfies all checks.
    let mut rows = Vec::with_capacity(code.k);
    for &f in &info_columns {
        let mut g = BitVector::zeros(code.n);
        g.set(f);
        for (i, &pc) in pivot_cols.iter().enumerate() {
            if work.get(i, f) {
                g.set(pc);
            }
        }
        rows.push(g);
    }
    let matrix = BitMatrix::from_rows(rows)?;
    Ok(GeneratorMatrix {
        matrix,
        info_columns,
    })
}

/// The finite field GF(2^m) with log/antilog tables.
#[derive(Clone)]
pub struct Gf2mField {
    m: u32,
    primitive_poly: u32,
    log: Vec<u16>,
    antilog: Vec<u16>,
}

impl Gf2mField {
    /// Constructs the field, verifying that `primitive_poly` is primitive:
    /// powers of `x` must not return to 1 before exponent `2^m - 1`.
    pub fn new(m: u32, primitive_poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "extension degree m={m} out of supported range 2..=16"
            )));
        }
        if primitive_poly >> m != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {primitive_poly:#b} does not have degree {m}"
            )));
        }
        let order = (1u32 << m) - 1;
        let mut antilog = vec![0u16; order as usize];
        let mut log = vec![0u16; (1usize << m).max(2)];
        let mut elem: u32 = 1;
        for i in 0..order {
            if elem == 1 && i > 0 {
                return Err(Error::InvalidParameter(format!(
                    "polynomial {primitive_poly:#b} is not primitive: x^{i} = 1"
                )));
            }
            antilog[i as usize] = elem as u16;
            log[elem as usize] = i as u16;
            elem <<= 1;
            if elem >> m == 1 {
                elem ^= primitive_poly;
            }
        }
        let wrapped = {
            let mut e = antilog[(order - 1) as usize] as u32;
            e <<= 1;
            if e >> m == 1 {
                e ^= primitive_poly;
            }
            e
        };
        if wrapped != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {primitive_poly:#b} is not primitive: x^{order} != 1"
            )));
        }
        Ok(Self {
            m,
            primitive_poly,
            log,
            antilog,
        })
    }

    /// Standard primitive polynomial for degree `m` (the one used for
    /// GF(2^7) is x^7 + x^3 + 1).
    pub fn default_primitive_poly(m: u32) -> Result<u32> {
        let poly = match m {
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            5 => 0b100101,
            6 => 0b1000011,
            7 => 0b10001001,
            8 => 0b100011101,
            9 => 0b1000010001,
            10 => 0b10000001001,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no default primitive polynomial for m={m}"
                )))
            }
        };
        Ok(poly)
    }

    pub fn with_default_poly(m: u32) -> Result<Self> {
        Self::new(m, Self::default_primitive_poly(m)?)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    pub fn order(&self) -> u32 {
        (1u32 << self.m) - 1
    }

    /// alpha^i as a polynomial-basis bit pattern.
    pub fn alpha_pow(&self, i: u32) -> u16 {
        self.antilog[(i % self.order()) as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] as u32 + self.log[b as usize] as u32) % self.order();
        self.antilog[s as usize]
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }
}

/// A generator polynomial over GF(2), coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorPolynomial {
    coeffs: BitVector,
}

impl GeneratorPolynomial {
    pub fn from_coeffs(bits: &[u8]) -> Self {
        Self {
            coeffs: BitVector::from_bits(bits),
        }
    }

    pub fn degree(&self) -> usize {
        (0..self.coeffs.len()).rev().find(|&i| self.coeffs.get(i)).unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> bool {
        i < self.coeffs.len() && self.coeffs.get(i)
    }

    /// Ascending-degree coefficient string, e.g. `x + 1` is `11`.
    pub fn to_coeff_string(&self) -> String {
        (0..=self.degree())
            .map(|i| if self.coeff(i) { '1' } else { '0' })
            .collect()
    }

    /// True iff this polynomial divides x^n + 1 over GF(2).
    pub fn divides_xn_plus_1(&self, n: usize) -> bool {
        // long division of x^n + 1 by self
        let d = self.degree();
        if d == 0 || d > n {
            return false;
        }
        let mut rem = vec![false; n + 1];
        rem[0] = true;
        rem[n] = true;
        for lead in (d..=n).rev() {
            if rem[lead] {
                for i in 0..=d {
                    if self.coeff(i) {
                        rem[lead - d + i] ^= true;
                    }
                }
            }
        }
        rem.iter().all(|&b| !b)
    }
}

impl fmt::Debug for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratorPolynomial({})", self.to_coeff_string())
    }
}

/// Minimal polynomial of alpha^element_exp over GF(2).
///
/// Expands the product of (x - alpha^c) over the conjugacy class
/// {e 2^j mod 2^m - 1}; the result always lands in GF(2).
pub fn minimal_polynomial(field: &Gf2mField, element_exp: u32) -> Result<GeneratorPolynomial> {
    let order = field.order();
    if element_exp >= order {
        return Err(Error::InvalidParameter(format!(
            "element exponent {element_exp} out of range 0..{order}"
        )));
    }
    let mut class = Vec::new();
    let mut e = element_exp;
    loop {
        class.push(e);
        e = (e * 2) % order;
        if e == element_exp {
            break;
        }
    }
    // product over the class, coefficients in GF(2^m)
    let mut poly: Vec<u16> = vec![1]; // constant 1
    for &c in &class {
        let root = field.alpha_pow(c);
        let mut next = vec![0u16; poly.len() + 1];
        for (i, &coef) in poly.iter().enumerate() {
            next[i + 1] ^= coef; // x * poly
            next[i] ^= field.mul(coef, root); // root * poly (== -root in GF(2^m))
        }
        poly = next;
    }
    let mut bits = Vec::with_capacity(poly.len());
    for &coef in &poly {
        if coef > 1 {
            return Err(Error::InvalidParameter(format!(
                "minimal polynomial product left GF(2): coefficient {coef:#x}"
            )));
        }
        bits.push(coef as u8);
    }
    Ok(GeneratorPolynomial::from_coeffs(&bits))
}

/// A constructed BCH code together with its build artifacts.
pub struct BchCode {
    pub code: LinearCode,
    pub generator_poly: GeneratorPolynomial,
    pub field: Gf2mField,
}

/// Binary BCH code of length `n = 2^m - 1` with designed error-correction
/// capability `t`.
///
/// `g(x)` is the least common multiple of the minimal polynomials of
/// alpha^1 .. alpha^2t. The parity-check matrix is the cyclic form whose
/// column `j` is `x^j mod g(x)`, so the syndrome of a word equals its
/// polynomial remainder mod `g` and the first `n - k` columns are the
/// identity.
pub fn bch_code(m: u32, n: usize, designed_t: usize) -> Result<BchCode> {
    let field = Gf2mField::with_default_poly(m)?;
    bch_code_with_field(field, n, designed_t)
}

pub fn bch_code_with_field(field: Gf2mField, n: usize, designed_t: usize) -> Result<BchCode> {
    let m = field.m();
    if n != (1usize << m) - 1 {
        return Err(Error::InvalidParameter(format!(
            "BCH length must be 2^m - 1 = {}, got {n}",
            (1usize << m) - 1
        )));
    }
    if designed_t == 0 {
        return Err(Error::InvalidParameter(
            "designed error-correction capability t must be >= 1 (t = 0 leaves no parity)".into(),
        ));
    }
    // distinct conjugacy classes of exponents 1..=2t, keyed by minimum member
    let order = field.order();
    let mut seen = BTreeSet::new();
    let mut class_reps = Vec::new();
    for e in 1..=(2 * designed_t as u32) {
        let e = e % order;
        if seen.contains(&e) {
            continue;
        }
        let mut c = e;
        loop {
            seen.insert(c);
            c = (c * 2) % order;
            if c == e {
                break;
            }
        }
        class_reps.push(e);
    }
    // g = product of the minimal polynomials (classes are distinct, so the
    // lcm is the plain product)
    let mut g = vec![true];
    for rep in class_reps {
        let mp = minimal_polynomial(&field, rep)?;
        let mut next = vec![false; g.len() + mp.degree()];
        for (i, &a) in g.iter().enumerate() {
            if !a {
                continue;
            }
            for j in 0..=mp.degree() {
                if mp.coeff(j) {
                    next[i + j] ^= true;
                }
            }
        }
        g = next;
    }
    let deg = g.len() - 1;
    if deg >= n {
        return Err(Error::InvalidParameter(format!(
            "generator degree {deg} leaves no information bits for n = {n}"
        )));
    }
    let k = n - deg;
    let gen_bits: Vec<u8> = g.iter().map(|&b| b as u8).collect();
    let generator_poly = GeneratorPolynomial::from_coeffs(&gen_bits);
    debug_assert!(generator_poly.divides_xn_plus_1(n));

    // column j of H is x^j mod g(x)
    let mut h = BitMatrix::zeros(deg, n);
    let mut col = vec![false; deg]; // x^0 = 1
    col[0] = true;
    for j in 0..n {
        for (i, &bit) in col.iter().enumerate() {
            if bit {
                h.set(i, j, true);
            }
        }
        // multiply by x mod g
        let carry = col[deg - 1];
        for i in (1..deg).rev() {
            col[i] = col[i - 1];
        }
        col[0] = false;
        if carry {
            for (i, slot) in col.iter_mut().enumerate() {
                *slot ^= g[i];
            }
        }
    }
    let code = LinearCode::from_parity_check(format!("BCH({n},{k})"), h)?;
    Ok(BchCode {
        code,
        generator_poly,
        field,
    })
}

/// The (7,4) Hamming code in cyclic form.
pub fn hamming74() -> LinearCode {
    let mut bch = bch_code(3, 7, 1).expect("Hamming(7,4) construction");
    bch.code.name = "Hamming(7,4)".into();
    bch.code
}

/// Matrix interchange formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    DenseText,
    Alist,
}

impl MatrixFormat {
    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "dense" | "dense-text" | "txt" => Ok(Self::DenseText),
            "alist" => Ok(Self::Alist),
            other => Err(Error::InvalidParameter(format!(
                "unknown matrix format {other:?} (expected dense or alist)"
            ))),
        }
    }
}

pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<BitMatrix> {
    match format {
        MatrixFormat::DenseText => parse_dense(text),
        MatrixFormat::Alist => parse_alist(text),
    }
}

pub fn format_matrix(m: &BitMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::DenseText => format_dense(m),
        MatrixFormat::Alist => format_alist(m),
    }
}

/// Loads a parity-check matrix file into a [`LinearCode`].
pub fn load_matrix(path: &Path, format: MatrixFormat) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)?;
    let h = parse_matrix(&text, format)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "loaded".into());
    LinearCode::from_parity_check(name, h)
}

pub fn save_matrix(path: &Path, m: &BitMatrix, format: MatrixFormat) -> Result<()> {
    std::fs::write(path, format_matrix(m, format))?;
    Ok(())
}

fn parse_dense(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let rows: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(Error::Parse {
            line: 1,
            msg: "expected \"rows cols\" header".into(),
        })?;
    let cols: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(Error::Parse {
            line: 1,
            msg: "expected \"rows cols\" header".into(),
        })?;
    let mut m = BitMatrix::zeros(rows, cols);
    let mut filled = 0;
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if filled == rows {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("more than {rows} rows"),
            });
        }
        if line.len() != cols {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected {cols} characters, found {}", line.len()),
            });
        }
        for (j, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' => m.set(filled, j, true),
                other => {
                    return Err(Error::Parse {
                        line: idx + 1,
                        msg: format!("unexpected character {other:?} at column {}", j + 1),
                    })
                }
            }
        }
        filled += 1;
    }
    if filled != rows {
        return Err(Error::Parse {
            line: filled + 1,
            msg: format!("expected {rows} rows, found {filled}"),
        });
    }
    Ok(m)
}

fn format_dense(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.n_rows(), m.n_cols());
    for i in 0..m.n_rows() {
        out.push_str(&m.row(i).to_string01());
        out.push('\n');
    }
    out
}

/// Parses MacKay alist. The first header field is the column count (code
/// length), the second the row count.
fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut nums = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("expected integer, found {tok:?}"),
            })?;
            nums.push(v);
        }
    }
    let mut it = nums.into_iter();
    let mut take = |what: &str| {
        it.next().ok_or(Error::Parse {
            line: 0,
            msg: format!("unexpected end of alist data while reading {what}"),
        })
    };
    let n = take("column count")?;
    let rows = take("row count")?;
    let max_col_deg = take("max column degree")?;
    let _max_row_deg = take("max row degree")?;
    let mut col_degs = Vec::with_capacity(n);
    for _ in 0..n {
        col_degs.push(take("column degree")?);
    }
    let mut row_degs = Vec::with_capacity(rows);
    for _ in 0..rows {
        row_degs.push(take("row degree")?);
    }
    let mut m = BitMatrix::zeros(rows, n);
    for (j, &deg) in col_degs.iter().enumerate() {
        if deg > max_col_deg {
            return Err(Error::Parse {
                line: 0,
                msg: format!("column {} degree {deg} exceeds declared max", j + 1),
            });
        }
        for slot in 0..max_col_deg {
            let v = take("column entry")?;
            if slot < deg {
                if v == 0 || v > rows {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("column {} lists row {v}, out of range", j + 1),
                    });
                }
                m.set(v - 1, j, true);
            }
        }
    }
    // row lists are redundant with the column lists; they may be absent
    Ok(m)
}

fn format_alist(m: &BitMatrix) -> String {
    let rows = m.n_rows();
    let n = m.n_cols();
    let col_lists: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..rows).filter(|&i| m.get(i, j)).collect())
        .collect();
    let row_lists: Vec<Vec<usize>> = (0..rows)
        .map(|i| m.row(i).iter_ones().collect())
        .collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("{n} {rows}\n{max_col} {max_row}\n");
    out.push_str(
        &col_lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str(
        &row_lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    for list in &col_lists {
        let mut entries: Vec<String> = list.iter().map(|&i| (i + 1).to_string()).collect();
        entries.resize(max_col, "0".into());
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    for list in &row_lists {
        let mut entries: Vec<String> = list.iter().map(|&j| (j + 1).to_string()).collect();
        entries.resize(max_row, "0".into());
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_messages(k: usize) -> impl Iterator<Item = BitVector> {
        (0..(1u32 << k)).map(move |bits| {
            let mut v = BitVector::zeros(k);
            for i in 0..k {
                if (bits >> i) & 1 == 1 {
                    v.set(i);
                }
            }
            v
        })
    }

    #[test]
    fn minimal_polynomial_of_one_is_x_plus_1() {
        let field = Gf2mField::with_default_poly(7).unwrap();
        let mp = minimal_polynomial(&field, 0).unwrap();
        assert_eq!(mp.to_coeff_string(), "11");
        assert_eq!(mp.degree(), 1);
    }

    #[test]
    fn minimal_polynomial_of_alpha_is_primitive_poly() {
        let field = Gf2mField::with_default_poly(7).unwrap();
        let mp = minimal_polynomial(&field, 1).unwrap();
        assert_eq!(mp.degree(), 7);
        // must equal x^7 + x^3 + 1
        let expect = [1u8, 0, 0, 1, 0, 0, 0, 1];
        for (i, &b) in expect.iter().enumerate() {
            assert_eq!(mp.coeff(i), b == 1, "coefficient of x^{i}");
        }
        // brute-force check: evaluating at alpha gives zero
        let mut acc = 0u16;
        for i in 0..=mp.degree() {
            if mp.coeff(i) {
                acc ^= field.alpha_pow(i as u32);
            }
        }
        assert_eq!(acc, 0);
    }

    #[test]
    fn minimal_polynomial_m3_exp3() {
        // conjugacy class of 3 in GF(8) is {3, 6, 5}; product expands to
        // x^3 + x^2 + 1
        let field = Gf2mField::with_default_poly(3).unwrap();
        let mp = minimal_polynomial(&field, 3).unwrap();
        assert_eq!(mp.to_coeff_string(), "1011");
    }

    #[test]
    fn field_rejects_non_primitive() {
        // x^4 + x^3 + x^2 + x + 1 divides x^5 + 1, so x has order 5 < 15
        assert!(Gf2mField::new(4, 0b11111).is_err());
    }

    #[test]
    fn bch_127_113() {
        let bch = bch_code(7, 127, 2).unwrap();
        assert_eq!(bch.code.n(), 127);
        assert_eq!(bch.code.k(), 113);
        assert_eq!(bch.generator_poly.degree(), 14);
        assert_eq!(bch.code.h_rank(), 14);
        assert!(bch.generator_poly.divides_xn_plus_1(127));
    }

    #[test]
    fn bch_rejects_t0_and_bad_length() {
        assert!(bch_code(7, 127, 0).is_err());
        assert!(bch_code(7, 126, 2).is_err());
    }

    #[test]
    fn hamming74_is_distance_3() {
        let code = hamming74();
        assert_eq!((code.n(), code.k()), (7, 4));
        let g = systematic_generator(&code).unwrap();
        // exhaustive: all 16 codewords check out, minimum nonzero weight 3
        let mut min_w = usize::MAX;
        for msg in all_messages(4) {
            let w = g.encode(&msg).unwrap();
            assert!(code.is_codeword(&w));
            if !w.is_zero() {
                min_w = min_w.min(w.weight());
            }
        }
        assert_eq!(min_w, 3);
    }

    #[test]
    fn generator_annihilates_random_full_rank_h() {
        // deterministic pseudo-random 5x10 full-rank H
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        loop {
            let mut h = BitMatrix::zeros(5, 10);
            for i in 0..5 {
                for j in 0..10 {
                    if next() & 1 == 1 {
                        h.set(i, j, true);
                    }
                }
            }
            if h.rank() < 5 {
                continue;
            }
            let code = LinearCode::from_parity_check("rand", h).unwrap();
            let g = systematic_generator(&code).unwrap();
            for msg in all_messages(5) {
                let w = g.encode(&msg).unwrap();
                assert!(code.is_codeword(&w));
            }
            // distinct messages give distinct codewords (G has full rank)
            assert_eq!(g.matrix().rank(), 5);
            break;
        }
    }

    #[test]
    fn generator_of_identity_pair_code() {
        // H = [I | I] annihilates G = [I | I]
        let mut h = BitMatrix::zeros(3, 6);
        for i in 0..3 {
            h.set(i, i, true);
            h.set(i, i + 3, true);
        }
        let code = LinearCode::from_parity_check("selfdual", h).unwrap();
        let g = systematic_generator(&code).unwrap();
        for i in 0..3 {
            let row = g.matrix().row(i);
            assert_eq!(row.weight(), 2);
            let ones: Vec<usize> = row.iter_ones().collect();
            assert_eq!(ones[1], ones[0] + 3);
        }
    }

    #[test]
    fn dense_text_hamming_roundtrip() {
        let code = hamming74();
        let text = format_matrix(code.parity_check(), MatrixFormat::DenseText);
        let back = parse_matrix(&text, MatrixFormat::DenseText).unwrap();
        assert_eq!(&back, code.parity_check());
        let reloaded = LinearCode::from_parity_check("h", back).unwrap();
        assert_eq!((reloaded.n(), reloaded.k()), (7, 4));
    }

    #[test]
    fn dense_text_rejects_empty_and_ragged() {
        assert!(parse_matrix("", MatrixFormat::DenseText).is_err());
        assert!(parse_matrix("2 3\n101\n10", MatrixFormat::DenseText).is_err());
        assert!(parse_matrix("2 3\n101\n102", MatrixFormat::DenseText).is_err());
        assert!(parse_matrix("2 3\n101", MatrixFormat::DenseText).is_err());
    }

    #[test]
    fn alist_roundtrip_random_14x127() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut m = BitMatrix::zeros(14, 127);
        for i in 0..14 {
            for j in 0..127 {
                if next() % 5 == 0 {
                    m.set(i, j, true);
                }
            }
        }
        let text = format_matrix(&m, MatrixFormat::Alist);
        let back = parse_matrix(&text, MatrixFormat::Alist).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn encoded_words_satisfy_checks_bch127() {
        let bch = bch_code(7, 127, 2).unwrap();
        let g = systematic_generator(&bch.code).unwrap();
        let mut state = 1u64;
        for _ in 0..1000 {
            let mut msg = BitVector::zeros(113);
            for i in 0..113 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if state >> 63 == 1 {
                    msg.set(i);
                }
            }
            let w = g.encode(&msg).unwrap();
            assert!(bch.code.is_codeword(&w));
        }
    }
}
