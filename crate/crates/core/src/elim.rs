//! Elimination-aided decoding.
//!
//! Before scanning the pre-stored pattern list, the decoder runs
//! incremental column-wise Gauss-Jordan elimination on the
//! reliability-permuted check matrix, augmented with the syndrome.
//! The first column `n` at which the syndrome enters the span of the
//! processed columns certifies two facts at once:
//!
//! - no pattern supported on the first `n - 1` ranks solves the system,
//!   so every stored pattern with RMRE at most `n` can be skipped without
//!   a test (the RMRE-`n` solutions themselves are recovered exactly);
//! - the complete set of solutions with RMRE exactly `n` is recoverable
//!   by back-substitution, and a hash lookup of those solutions yields an
//!   upper bound `t*` on how far the ordered scan must run.
//!
//! Two elimination engines share the interface: `Full` keeps the whole
//! augmented matrix in Gauss-Jordan form (each pivot touches every
//! column), while `Reduced` transforms only the active column and the
//! syndrome, replaying recorded row transforms on demand so the work is
//! bounded by the number of pivots rather than the code length.

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Columns, OpCounter};
use crate::orbgrand::{Checker, DecodeOutcome, EpSet, ErrorPattern, GeStats, Prepared};
use crate::real::Real;

/// Elimination engine variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeMode {
    Full,
    Reduced,
}

/// Result of processing one column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeStep {
    /// A pivot was established at the current column; the cursor stays
    /// put so the caller can run the consistency check before advancing.
    PivotFound,
    /// The column is dependent on earlier pivots; the cursor advanced.
    NoPivot,
    /// Every column has been processed.
    Exhausted,
}

/// A recorded row transform: eliminating with the pivot at `pivot_row`
/// XORs the pivot row into every row flagged by `pattern` (the pivot
/// column as it stood before elimination, with the pivot bit cleared).
/// Applying it to a column vector `v` is the conditional XOR
/// `if v[pivot_row] { v ^= pattern }`.
#[derive(Clone, Debug)]
struct Transform {
    pivot_row: usize,
    pattern: BitVector,
}

/// Incremental elimination state over `[H_pi | s]`.
///
/// Row swaps are physical in full mode; in reduced mode they are pure
/// bookkeeping in `row_perm` (current index -> original row) and all
/// stored vectors stay in original row coordinates.
pub struct GeState {
    mode: GeMode,
    rows: usize,
    n_cols: usize,
    pivots: usize,
    cursor: usize,
    pivot_cols: Vec<usize>,
    /// Bit-XOR work spent establishing pivots (transform replay on pivot
    /// columns plus column and syndrome elimination). This is the
    /// quantity the closed-form elimination cost bounds refer to.
    pivot_xor_bits: u64,
    /// Bit-XOR work on columns that yielded no pivot. Those transforms
    /// produce exactly the free columns back-substitution consumes, so
    /// the cost is attributed to the solve stage.
    aux_xor_bits: u64,
    row_perm: Vec<usize>,
    // full mode
    aug: Option<BitMatrix>,
    // reduced mode
    s_cur: BitVector,
    transforms: Vec<Transform>,
    processed: Vec<BitVector>,
    pivot_rows: Vec<usize>,
}

impl GeState {
    pub fn new(mode: GeMode, h_pi: &Columns, syndrome: &BitVector) -> Self {
        let rows = h_pi.n_rows();
        let n_cols = h_pi.n_cols();
        debug_assert_eq!(syndrome.len(), rows);
        let aug = match mode {
            GeMode::Full => {
                let mut m = BitMatrix::zeros(rows, n_cols + 1);
                for i in 0..rows {
                    for j in 0..n_cols {
                        if h_pi.get(i, j) {
                            m.set(i, j, true);
                        }
                    }
                    if syndrome.get(i) {
                        m.set(i, n_cols, true);
                    }
                }
                Some(m)
            }
            GeMode::Reduced => None,
        };
        Self {
            mode,
            rows,
            n_cols,
            pivots: 0,
            cursor: 0,
            pivot_cols: Vec::new(),
            pivot_xor_bits: 0,
            aux_xor_bits: 0,
            row_perm: (0..rows).collect(),
            aug,
            s_cur: syndrome.clone(),
            transforms: Vec::new(),
            processed: Vec::new(),
            pivot_rows: Vec::new(),
        }
    }

    pub fn mode(&self) -> GeMode {
        self.mode
    }

    /// Pivots completed so far (m).
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// 1-based index of the column under the cursor (n).
    pub fn column(&self) -> usize {
        self.cursor + 1
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn pivot_xor_bits(&self) -> u64 {
        self.pivot_xor_bits
    }

    pub fn aux_xor_bits(&self) -> u64 {
        self.aux_xor_bits
    }

    /// Advances past the current column after a pivot whose consistency
    /// check came back negative.
    pub fn advance_cursor(&mut self) {
        self.cursor += 1;
    }

    /// Full-mode working matrix (test support).
    pub fn augmented(&self) -> Option<&BitMatrix> {
        self.aug.as_ref()
    }

    /// Number of columns transformed so far in reduced mode.
    pub fn processed_len(&self) -> usize {
        self.processed.len()
    }

    /// Transformed column `c` in current (post-swap) row coordinates.
    pub fn transformed_column(&self, c: usize) -> BitVector {
        match self.mode {
            GeMode::Full => self.aug.as_ref().expect("full mode").column(c),
            GeMode::Reduced => {
                let src = &self.processed[c];
                let mut out = BitVector::zeros(self.rows);
                for (cur, &orig) in self.row_perm.iter().enumerate() {
                    if src.get(orig) {
                        out.set(cur);
                    }
                }
                out
            }
        }
    }

    /// Transformed syndrome in current row coordinates.
    pub fn syndrome_now(&self) -> BitVector {
        match self.mode {
            GeMode::Full => self.aug.as_ref().expect("full mode").column(self.n_cols),
            GeMode::Reduced => {
                let mut out = BitVector::zeros(self.rows);
                for (cur, &orig) in self.row_perm.iter().enumerate() {
                    if self.s_cur.get(orig) {
                        out.set(cur);
                    }
                }
                out
            }
        }
    }

    /// Processes the column under the cursor.
    ///
    /// Full mode scans the column for a pivot among the still-unpivoted
    /// rows; on a find it swaps the pivot up and eliminates every other
    /// flagged row across the whole augmented matrix. Reduced mode first
    /// replays the accumulated transforms on the pristine column, then on
    /// a find eliminates only within that column and the syndrome and
    /// records the new transform.
    pub fn advance(&mut self, h_pi: &Columns, counter: &mut OpCounter) -> GeStep {
        if self.cursor >= self.n_cols {
            return GeStep::Exhausted;
        }
        match self.mode {
            GeMode::Full => self.advance_full(counter),
            GeMode::Reduced => self.advance_reduced(h_pi, counter),
        }
    }

    fn advance_full(&mut self, counter: &mut OpCounter) -> GeStep {
        let aug = self.aug.as_mut().expect("full mode");
        let col = self.cursor;
        let Some(p) = (self.pivots..self.rows).find(|&r| aug.get(r, col)) else {
            self.cursor += 1;
            return GeStep::NoPivot;
        };
        aug.swap_rows(self.pivots, p).expect("row bounds");
        self.row_perm.swap(self.pivots, p);
        let k = self.pivots;
        let before = counter.xor_bit_ops;
        for i in 0..self.rows {
            if i != k && aug.get(i, col) {
                aug.xor_rows(i, k, counter).expect("row bounds");
            }
        }
        self.pivot_xor_bits += counter.xor_bit_ops - before;
        self.pivot_cols.push(col);
        self.pivots += 1;
        GeStep::PivotFound
    }

    fn advance_reduced(&mut self, h_pi: &Columns, counter: &mut OpCounter) -> GeStep {
        let col = self.cursor;
        let mut v = h_pi.col_vector(col);
        let before = counter.xor_bit_ops;
        for tr in &self.transforms {
            if v.get(tr.pivot_row) {
                v.xor_into(&tr.pattern, counter).expect("row length");
            }
        }
        let replay_bits = counter.xor_bit_ops - before;

        let found = (self.pivots..self.rows).find(|&ci| v.get(self.row_perm[ci]));
        let Some(p) = found else {
            self.aux_xor_bits += replay_bits;
            self.processed.push(v);
            self.cursor += 1;
            return GeStep::NoPivot;
        };
        self.pivot_xor_bits += replay_bits;
        self.row_perm.swap(self.pivots, p);
        let pivot_row = self.row_perm[self.pivots];

        let mut pattern = v.clone();
        pattern.clear(pivot_row);
        let elim_before = counter.xor_bit_ops;
        if !pattern.is_zero() {
            // clear the flagged rows of the active column
            let pat = pattern.clone();
            v.xor_into(&pat, counter).expect("row length");
        }
        if self.s_cur.get(pivot_row) {
            self.s_cur.xor_into(&pattern, counter).expect("row length");
        }
        self.pivot_xor_bits += counter.xor_bit_ops - elim_before;
        debug_assert!(v.weight() == 1 && v.get(pivot_row));

        self.transforms.push(Transform { pivot_row, pattern });
        self.processed.push(v);
        self.pivot_cols.push(col);
        self.pivot_rows.push(pivot_row);
        self.pivots += 1;
        GeStep::PivotFound
    }

    /// True iff the transformed syndrome is zero on every pivot-free row,
    /// i.e. the syndrome lies in the span of the processed columns. With
    /// the working matrix in Gauss-Jordan form this is equivalent to the
    /// rank equality between the processed block and its augmentation.
    pub fn consistency_holds(&self) -> bool {
        match self.mode {
            GeMode::Full => {
                let aug = self.aug.as_ref().expect("full mode");
                (self.pivots..self.rows).all(|i| !aug.get(i, self.n_cols))
            }
            GeMode::Reduced => {
                (self.pivots..self.rows).all(|ci| !self.s_cur.get(self.row_perm[ci]))
            }
        }
    }

    fn solve_base(&self) -> BitVector {
        match self.mode {
            GeMode::Full => self.syndrome_now(),
            GeMode::Reduced => self.s_cur.clone(),
        }
    }

    fn free_column(&self, c: usize) -> BitVector {
        match self.mode {
            GeMode::Full => self.aug.as_ref().expect("full mode").column(c),
            GeMode::Reduced => self.processed[c].clone(),
        }
    }

    fn pivot_value_row(&self, j: usize) -> usize {
        match self.mode {
            // full mode swapped rows physically: pivot j sits at row j
            GeMode::Full => j,
            GeMode::Reduced => self.pivot_rows[j],
        }
    }
}

/// All solutions of the processed system; each has RMRE equal to the
/// consistency column.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    /// 1-based column where consistency held (the common RMRE value).
    pub rmre_col: usize,
    pub solutions: Vec<ErrorPattern>,
}

/// Enumerates every pattern supported on the processed columns that
/// solves the system: one per assignment of the free (non-pivot) columns,
/// with pivot values filled by back-substitution.
///
/// Fails with [`Error::SolutionSpaceTooLarge`] when the free-variable
/// count would expand past `cap`; callers fall back to the single
/// all-free-zero solution from [`enumerate_first_solution`].
pub fn enumerate_solutions(
    state: &GeState,
    cap: u64,
    counter: &mut OpCounter,
) -> Result<SolutionSet> {
    debug_assert!(state.consistency_holds());
    let free: Vec<usize> = (0..=state.cursor)
        .filter(|c| !state.pivot_cols.contains(c))
        .collect();
    let f = free.len();
    if f >= 63 || (1u64 << f) > cap {
        return Err(Error::SolutionSpaceTooLarge { free_vars: f, cap });
    }
    let free_vecs: Vec<BitVector> = free.iter().map(|&c| state.free_column(c)).collect();
    let base = state.solve_base();
    let mut solutions = Vec::with_capacity(1 << f);
    for mask in 0u64..(1u64 << f) {
        solutions.push(solve_one(state, &base, &free, &free_vecs, mask, counter)?);
    }
    Ok(SolutionSet {
        rmre_col: state.column(),
        solutions,
    })
}

/// The single solution with every free variable set to zero.
pub fn enumerate_first_solution(state: &GeState, counter: &mut OpCounter) -> Result<SolutionSet> {
    let base = state.solve_base();
    let sol = solve_one(state, &base, &[], &[], 0, counter)?;
    Ok(SolutionSet {
        rmre_col: state.column(),
        solutions: vec![sol],
    })
}

fn solve_one(
    state: &GeState,
    base: &BitVector,
    free: &[usize],
    free_vecs: &[BitVector],
    mask: u64,
    counter: &mut OpCounter,
) -> Result<ErrorPattern> {
    let mut s_eff = base.clone();
    let mut flips: Vec<u16> = Vec::new();
    for (b, (&c, vec)) in free.iter().zip(free_vecs.iter()).enumerate() {
        if (mask >> b) & 1 == 1 {
            s_eff.xor_into(vec, counter)?;
            flips.push(c as u16 + 1);
        }
    }
    for (j, &c) in state.pivot_cols.iter().enumerate() {
        if s_eff.get(state.pivot_value_row(j)) {
            flips.push(c as u16 + 1);
        }
    }
    flips.sort_unstable();
    ErrorPattern::new(flips)
}

/// Decoder configuration knobs.
#[derive(Clone, Copy, Debug)]
pub struct DecodeConfig {
    /// Upper bound on the enumerated solution-set size.
    pub solution_cap: u64,
    /// When the solution set misses the stored list and the filtered scan
    /// fails, emit the lightest elimination-found solution instead of
    /// abandoning. Off by default: the default decoder is
    /// outcome-equivalent to the plain scan on every instance.
    pub emit_ge_solution_on_abandon: bool,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        Self {
            solution_cap: 1 << 20,
            emit_ge_solution_on_abandon: false,
        }
    }
}

/// Elimination-aided decoding.
///
/// Runs the incremental elimination until consistency first holds (at
/// column `n` with `m` pivots), enumerates the solution set, resolves the
/// scan ceiling `t*` by hash lookup, and then scans the stored list in
/// priority order, skipping without a test every pattern whose
/// precomputed RMRE is at most `n`. A success inside the scan wins;
/// otherwise the `t*` pattern is emitted without re-verification (it is
/// valid by construction and not counted as a guess). If the solution set
/// misses the stored list entirely and the scan fails, the decoder
/// abandons exactly like the plain scan.
pub fn decode_elim_aided<F: Real>(
    code: &LinearCode,
    llrs: &[F],
    eps: &EpSet,
    mode: GeMode,
    config: &DecodeConfig,
) -> Result<DecodeOutcome> {
    if eps.n() != code.n() {
        return Err(Error::LengthMismatch {
            left: code.n(),
            right: eps.n(),
        });
    }
    let mut p = Prepared::new(code, llrs)?;
    if p.syndrome.is_zero() {
        let theta = p.theta.clone();
        return Ok(DecodeOutcome {
            codeword: Some(theta),
            guesses: 0,
            ep_index: None,
            counters: p.counters,
            cost: p.cost,
            ge_stats: Some(GeStats {
                pivots: 0,
                consistency_col: 0,
                t_star: None,
                solutions: 0,
            }),
            via_ge_fallback: false,
        });
    }

    let mut state = GeState::new(mode, &p.cols, &p.syndrome);
    loop {
        match state.advance(&p.cols, &mut p.counters) {
            GeStep::PivotFound => {
                if state.consistency_holds() {
                    break;
                }
                state.advance_cursor();
            }
            GeStep::NoPivot => {}
            GeStep::Exhausted => {
                // unreachable for a genuine syndrome: s = H theta always
                // lies in the column space, so consistency holds by the
                // last pivot at the latest
                debug_assert!(false, "elimination exhausted without consistency");
                break;
            }
        }
    }
    let filter_col = state.column();
    let pivots = state.pivots();

    let enum_before = p.counters.xor_bit_ops;
    let sols = match enumerate_solutions(&state, config.solution_cap, &mut p.counters) {
        Ok(s) => s,
        Err(Error::SolutionSpaceTooLarge { .. }) => {
            enumerate_first_solution(&state, &mut p.counters)?
        }
        Err(e) => return Err(e),
    };
    let enum_bits = p.counters.xor_bit_ops - enum_before;
    p.cost.ge_pivot_xor_bits = state.pivot_xor_bits();
    p.cost.ge_aux_xor_bits = state.aux_xor_bits() + enum_bits;

    let t_star = sols.solutions.iter().filter_map(|e| eps.lookup(e)).min();
    let ge_stats = GeStats {
        pivots,
        consistency_col: filter_col,
        t_star,
        solutions: sols.solutions.len(),
    };

    let scan_end = t_star.unwrap_or(eps.len() + 1);
    let mut checker = Checker::new(&p.cols, &p.syndrome, code.n());
    let mut guesses = 0u64;
    for t in 1..scan_end {
        if eps.rmre(t) <= filter_col {
            continue; // filtered by stored RMRE, no test performed
        }
        guesses += 1;
        if checker.check(eps.pattern(t), &mut p.counters, &mut p.cost) {
            let w = p.apply_pattern(eps.pattern(t));
            return Ok(DecodeOutcome {
                codeword: Some(w),
                guesses,
                ep_index: Some(t),
                counters: p.counters,
                cost: p.cost,
                ge_stats: Some(ge_stats),
                via_ge_fallback: false,
            });
        }
    }
    if let Some(ts) = t_star {
        // valid by construction; emitted without re-verification and the
        // emission is not counted as a guess
        let w = p.apply_pattern(eps.pattern(ts));
        return Ok(DecodeOutcome {
            codeword: Some(w),
            guesses,
            ep_index: Some(ts),
            counters: p.counters,
            cost: p.cost,
            ge_stats: Some(ge_stats),
            via_ge_fallback: false,
        });
    }
    if config.emit_ge_solution_on_abandon {
        if let Some(best) = sols
            .solutions
            .iter()
            .min_by_key(|e| (e.logistic_weight(), e.weight(), e.flips().to_vec()))
        {
            let w = p.apply_pattern(best);
            return Ok(DecodeOutcome {
                codeword: Some(w),
                guesses,
                ep_index: None,
                counters: p.counters,
                cost: p.cost,
                ge_stats: Some(ge_stats),
                via_ge_fallback: true,
            });
        }
    }
    Ok(DecodeOutcome {
        codeword: None,
        guesses,
        ep_index: None,
        counters: p.counters,
        cost: p.cost,
        ge_stats: Some(ge_stats),
        via_ge_fallback: false,
    })
}

/// Partitions the stored priorities below the stopping point into the
/// RMRE-filtered set and the tested set (CLI reporting).
pub fn filter_partition(eps: &EpSet, filter_col: usize, stop: usize) -> (Vec<usize>, Vec<usize>) {
    let mut skipped = Vec::new();
    let mut tested = Vec::new();
    for t in 1..=stop.min(eps.len()) {
        if eps.rmre(t) <= filter_col {
            skipped.push(t);
        } else {
            tested.push(t);
        }
    }
    (skipped, tested)
}
