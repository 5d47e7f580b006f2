//! Pre-stored error-pattern generation and the plain ordered-reliability
//! decoder.
//!
//! Error patterns (EPs) live in the rank domain: positions index bits by
//! reliability rank (1 = least reliable). The pre-stored list is ordered
//! by logistic weight (the sum of flipped ranks), with ties broken by
//! Hamming weight and then lexicographically on the ascending flip list.
//! That tie order is normative: the screening trace for the (7,4) worked
//! example depends on it.

use std::collections::HashMap;
use std::fmt;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Columns, OpCounter, WORD_BITS};
use crate::real::Real;

/// A rank-domain error pattern: ascending 1-based flip positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    flips: Vec<u16>,
}

impl ErrorPattern {
    pub fn new(flips: Vec<u16>) -> Result<Self> {
        for w in flips.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidParameter(format!(
                    "flip positions must be strictly ascending, got {:?} before {:?}",
                    w[0], w[1]
                )));
            }
        }
        if flips.first().is_some_and(|&f| f == 0) {
            return Err(Error::InvalidParameter(
                "flip positions are 1-based; 0 is not valid".into(),
            ));
        }
        Ok(Self { flips })
    }

    pub fn empty() -> Self {
        Self { flips: Vec::new() }
    }

    pub fn flips(&self) -> &[u16] {
        &self.flips
    }

    pub fn weight(&self) -> usize {
        self.flips.len()
    }

    /// Logistic weight: sum of the flipped rank positions.
    pub fn logistic_weight(&self) -> u64 {
        self.flips.iter().map(|&f| f as u64).sum()
    }

    /// Rank of the most reliable erroneous bit: the largest flipped rank,
    /// 0 for the empty pattern.
    pub fn rmre(&self) -> usize {
        self.flips.last().map_or(0, |&f| f as usize)
    }

    /// Expands to a rank-domain bit vector of length `n`.
    pub fn to_bitvector(&self, n: usize) -> BitVector {
        let mut v = BitVector::zeros(n);
        for &f in &self.flips {
            v.set(f as usize - 1);
        }
        v
    }
}

impl fmt::Debug for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ep{:?}", self.flips)
    }
}

/// The ordered pre-stored EP list with RMRE annotations and the
/// pattern-to-priority hash used for threshold lookups.
pub struct EpSet {
    n: usize,
    patterns: Vec<ErrorPattern>,
    rmre: Vec<u32>,
    index: HashMap<Vec<u16>, usize>,
}

impl EpSet {
    /// Code length the patterns were built for.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored patterns (the guess budget T).
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Pattern at 1-based priority `t`.
    pub fn pattern(&self, t: usize) -> &ErrorPattern {
        &self.patterns[t - 1]
    }

    /// RMRE of the pattern at 1-based priority `t`.
    pub fn rmre(&self, t: usize) -> usize {
        self.rmre[t - 1] as usize
    }

    /// 1-based priority of a pattern, if stored.
    pub fn lookup(&self, ep: &ErrorPattern) -> Option<usize> {
        self.index.get(ep.flips()).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ErrorPattern> {
        self.patterns.iter()
    }

    /// True iff priorities are non-decreasing in logistic weight (always
    /// holds for generated sets; imported orders may be arbitrary).
    pub fn is_lw_ordered(&self) -> bool {
        self.patterns
            .windows(2)
            .all(|w| w[0].logistic_weight() <= w[1].logistic_weight())
    }

    fn from_patterns(n: usize, patterns: Vec<ErrorPattern>) -> Result<Self> {
        let mut index = HashMap::with_capacity(patterns.len());
        let mut rmre = Vec::with_capacity(patterns.len());
        for (i, p) in patterns.iter().enumerate() {
            if let Some(&f) = p.flips().last() {
                if f as usize > n {
                    return Err(Error::InvalidParameter(format!(
                        "pattern {:?} exceeds code length {n}",
                        p.flips()
                    )));
                }
            }
            if p.flips().is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "empty pattern at priority {}",
                    i + 1
                )));
            }
            rmre.push(p.rmre() as u32);
            if index.insert(p.flips().to_vec(), i + 1).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate pattern {:?} at priority {}",
                    p.flips(),
                    i + 1
                )));
            }
        }
        Ok(Self {
            n,
            patterns,
            rmre,
            index,
        })
    }

    /// Parses an external EP order: one pattern per line as
    /// comma-separated ascending rank positions; line number = priority.
    pub fn import(n: usize, text: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let flips = line
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<u16>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("expected rank position, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<u16>>>()?;
            let ep = ErrorPattern::new(flips).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
            patterns.push(ep);
        }
        Self::from_patterns(n, patterns)
    }
}

/// Emits all partitions of `total` into strictly increasing parts <= `max_part`,
/// appending each complete partition (as the ascending part list) to `out`.
fn distinct_partitions(total: u64, max_part: u64, min_part: u64, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    let mut part = min_part;
    while part <= max_part && part <= total {
        cur.push(part as u16);
        if part == total {
            out.push(cur.clone());
        } else {
            distinct_partitions(total - part, max_part, part + 1, cur, out);
        }
        cur.pop();
        part += 1;
    }
}

/// Generates the first `t_max` rank-domain patterns in the pre-stored
/// order: ascending logistic weight, ties by ascending Hamming weight,
/// remaining ties lexicographic on the ascending flip list.
pub fn generate_ep_set(n: usize, t_max: usize) -> Result<EpSet> {
    if n == 0 || t_max == 0 {
        return Err(Error::InvalidParameter(
            "code length and budget must both be at least 1".into(),
        ));
    }
    if n < 128 {
        let available = (1u128 << n) - 1;
        if t_max as u128 > available {
            return Err(Error::BudgetTooLarge {
                requested: t_max,
                available,
                n,
            });
        }
    }
    let max_lw = (n as u64) * (n as u64 + 1) / 2;
    let mut patterns = Vec::with_capacity(t_max);
    let mut scratch = Vec::new();
    let mut band = Vec::new();
    let mut lw = 1u64;
    'outer: while lw <= max_lw {
        band.clear();
        distinct_partitions(lw, n as u64, 1, &mut scratch, &mut band);
        band.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for flips in band.drain(..) {
            patterns.push(ErrorPattern { flips });
            if patterns.len() == t_max {
                break 'outer;
            }
        }
        lw += 1;
    }
    EpSet::from_patterns(n, patterns)
}

/// The reliability ranking of an LLR vector.
///
/// `rank_to_pos[i]` is the 0-based channel position of the bit with the
/// (i+1)-th smallest magnitude; `pos_to_rank` is the inverse map.
#[derive(Clone, Debug)]
pub struct RankingPermutation {
    rank_to_pos: Vec<usize>,
    pos_to_rank: Vec<usize>,
}

impl RankingPermutation {
    pub fn len(&self) -> usize {
        self.rank_to_pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank_to_pos.is_empty()
    }

    /// Channel position of 1-based rank `i`.
    pub fn pos_of_rank(&self, rank: usize) -> usize {
        self.rank_to_pos[rank - 1]
    }

    /// 1-based rank of channel position `pos`.
    pub fn rank_of_pos(&self, pos: usize) -> usize {
        self.pos_to_rank[pos] + 1
    }

    pub fn rank_to_pos(&self) -> &[usize] {
        &self.rank_to_pos
    }
}

/// Sorts positions by ascending LLR magnitude.
///
/// The sort is stable with positions as the tie-break, so equal
/// magnitudes keep their channel order. Every float comparison is
/// counted as one float operation.
pub fn rank_llrs<F: Real>(llrs: &[F], counter: &mut OpCounter) -> Result<RankingPermutation> {
    if llrs.is_empty() {
        return Err(Error::InvalidParameter("empty LLR vector".into()));
    }
    for (i, l) in llrs.iter().enumerate() {
        if l.is_nan() {
            return Err(Error::NanLlr(i));
        }
    }
    let mut rank_to_pos: Vec<usize> = (0..llrs.len()).collect();
    let mut comparisons = 0u64;
    rank_to_pos.sort_by(|&a, &b| {
        comparisons += 1;
        llrs[a]
            .abs()
            .partial_cmp(&llrs[b].abs())
            .expect("NaN screened above")
            .then(a.cmp(&b))
    });
    counter.float_ops += comparisons;
    let mut pos_to_rank = vec![0usize; llrs.len()];
    for (r, &p) in rank_to_pos.iter().enumerate() {
        pos_to_rank[p] = r;
    }
    Ok(RankingPermutation {
        rank_to_pos,
        pos_to_rank,
    })
}

/// Reorders the parity-check columns by reliability: column `i` of the
/// result is column `perm.pos_of_rank(i+1)` of `code`'s check matrix.
pub fn permuted_check_matrix(code: &LinearCode, perm: &RankingPermutation) -> Result<BitMatrix> {
    if perm.len() != code.n() {
        return Err(Error::LengthMismatch {
            left: code.n(),
            right: perm.len(),
        });
    }
    let h = code.parity_check();
    let mut out = BitMatrix::zeros(h.n_rows(), h.n_cols());
    for i in 0..h.n_rows() {
        for (j, &p) in perm.rank_to_pos().iter().enumerate() {
            if h.get(i, p) {
                out.set(i, j, true);
            }
        }
    }
    Ok(out)
}

/// Tests a pattern against the permuted check matrix: XORs the columns
/// it selects and compares with the syndrome. Costs `weight * (N - K)`
/// counted bit operations.
pub fn verify_ep(
    h_pi: &BitMatrix,
    s: &BitVector,
    ep: &ErrorPattern,
    counter: &mut OpCounter,
) -> bool {
    let mut acc = BitVector::zeros(s.len());
    for &f in ep.flips() {
        let col = h_pi.column(f as usize - 1);
        acc.xor_into(&col, counter).expect("column length");
    }
    acc == *s
}

/// Row-oriented verification of the same check: parity rows of
/// `H_pi (theta + e)` are evaluated top-down and the scan stops at the
/// first failing row. Returns validity and the number of rows consumed.
///
/// This is the instrumentation path behind the average-rows-per-check
/// constant of the complexity models; the decoders use the column form.
pub fn verify_ep_rowwise(h_pi: &BitMatrix, s: &BitVector, ep: &ErrorPattern) -> (bool, usize) {
    let rows = h_pi.n_rows();
    for i in 0..rows {
        let mut bit = s.get(i);
        for &f in ep.flips() {
            if h_pi.get(i, f as usize - 1) {
                bit = !bit;
            }
        }
        if bit {
            return (false, i + 1);
        }
    }
    (true, rows)
}

/// Summary of the elimination stage of a decode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeStats {
    /// Pivots completed when consistency first held (m).
    pub pivots: usize,
    /// 1-based column where consistency first held (n).
    pub consistency_col: usize,
    /// Priority of the best pre-stored pattern found by elimination, if
    /// the solution set intersects the stored list.
    pub t_star: Option<usize>,
    /// Size of the solution set at the consistency column.
    pub solutions: usize,
}

/// Per-phase operation breakdown of one decode.
///
/// `verify_xor_bits` charges each pattern test at `weight * (N - K)` (the
/// column-XOR engine cost); `verify_row_model_bits` charges the same
/// tests at `rows_consumed * N`, the row-oriented checker model used for
/// complexity comparisons. Exactly one of the two belongs in any total.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostBreakdown {
    pub sort_float_ops: u64,
    pub syndrome_xor_bits: u64,
    pub verify_xor_bits: u64,
    pub verify_row_model_bits: u64,
    pub ge_pivot_xor_bits: u64,
    pub ge_aux_xor_bits: u64,
}

impl CostBreakdown {
    /// Engine accounting: actual column-XOR work plus 8 XORs per float op.
    pub fn normalized_engine(&self) -> u64 {
        self.syndrome_xor_bits
            + self.verify_xor_bits
            + self.ge_pivot_xor_bits
            + self.ge_aux_xor_bits
            + 8 * self.sort_float_ops
    }

    /// Checker-model accounting: verification charged row-wise.
    pub fn normalized_checker_model(&self) -> u64 {
        self.syndrome_xor_bits
            + self.verify_row_model_bits
            + self.ge_pivot_xor_bits
            + self.ge_aux_xor_bits
            + 8 * self.sort_float_ops
    }
}

/// Result of one decode.
#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    /// Decoded channel-domain codeword; `None` means abandonment.
    pub codeword: Option<BitVector>,
    /// Number of pattern tests actually performed.
    pub guesses: u64,
    /// 1-based priority of the successful pre-stored pattern, if the
    /// decoder output came from the list (the zero pattern reports `None`).
    pub ep_index: Option<usize>,
    pub counters: OpCounter,
    pub cost: CostBreakdown,
    /// Elimination statistics; `None` for the plain decoder.
    pub ge_stats: Option<GeStats>,
    /// Set when the output came from the elimination fallback rather than
    /// the pre-stored list (only with the opt-in fallback flag).
    pub via_ge_fallback: bool,
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        self.codeword.is_some()
    }
}

/// Shared front end of both decoders: ranking, hard decision, permuted
/// column cache, syndrome.
pub(crate) struct Prepared {
    pub perm: RankingPermutation,
    /// Channel-domain hard decision.
    pub theta: BitVector,
    /// Permuted column cache of the check matrix.
    pub cols: Columns,
    /// Syndrome (length N - K).
    pub syndrome: BitVector,
    pub counters: OpCounter,
    pub cost: CostBreakdown,
}

impl Prepared {
    pub fn new<F: Real>(code: &LinearCode, llrs: &[F]) -> Result<Self> {
        if llrs.len() != code.n() {
            return Err(Error::LengthMismatch {
                left: code.n(),
                right: llrs.len(),
            });
        }
        let mut counters = OpCounter::new();
        let mut cost = CostBreakdown::default();

        let perm = rank_llrs(llrs, &mut counters)?;
        cost.sort_float_ops = counters.float_ops;

        let mut theta = BitVector::zeros(code.n());
        for (i, l) in llrs.iter().enumerate() {
            if *l < F::zero() {
                theta.set(i);
            }
        }

        let cols = code.parity_columns().permuted(perm.rank_to_pos());

        // syndrome = XOR of the check columns where the hard decision is 1
        let r = code.n() - code.k();
        let mut acc = vec![0u64; r.div_ceil(WORD_BITS).max(1)];
        let before = counters.xor_bit_ops;
        for pos in theta.iter_ones() {
            let rank = perm.rank_of_pos(pos);
            cols.xor_col_into(rank - 1, &mut acc, &mut counters);
        }
        cost.syndrome_xor_bits = counters.xor_bit_ops - before;
        let mut syndrome = BitVector::zeros(r);
        for (i, w) in acc.iter().enumerate() {
            let mut rem = *w;
            while rem != 0 {
                let b = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                syndrome.set(i * WORD_BITS + b);
            }
        }
        Ok(Self {
            perm,
            theta,
            cols,
            syndrome,
            counters,
            cost,
        })
    }

    /// Channel-domain codeword for a rank-domain pattern.
    pub fn apply_pattern(&self, ep: &ErrorPattern) -> BitVector {
        let mut w = self.theta.clone();
        for &f in ep.flips() {
            w.flip(self.perm.pos_of_rank(f as usize));
        }
        w
    }
}

/// One pattern test against the cached columns; updates both accountings.
pub(crate) struct Checker<'a> {
    cols: &'a Columns,
    syndrome_words: Vec<u64>,
    scratch: Vec<u64>,
    n: usize,
}

impl<'a> Checker<'a> {
    pub fn new(cols: &'a Columns, syndrome: &BitVector, n: usize) -> Self {
        let word_count = cols.col(0).len();
        let mut syndrome_words = vec![0u64; word_count];
        syndrome_words.copy_from_slice(&syndrome.words()[..word_count]);
        Self {
            cols,
            scratch: vec![0u64; syndrome_words.len()],
            syndrome_words,
            n,
        }
    }

    pub fn check(
        &mut self,
        ep: &ErrorPattern,
        counters: &mut OpCounter,
        cost: &mut CostBreakdown,
    ) -> bool {
        self.scratch.fill(0);
        let before = counters.xor_bit_ops;
        for &f in ep.flips() {
            self.cols
                .xor_col_into(f as usize - 1, &mut self.scratch, counters);
        }
        cost.verify_xor_bits += counters.xor_bit_ops - before;

        let rows = self.cols.n_rows();
        let mut mismatch_row = rows;
        for (i, (a, b)) in self
            .scratch
            .iter()
            .zip(self.syndrome_words.iter())
            .enumerate()
        {
            let diff = a ^ b;
            if diff != 0 {
                mismatch_row = i * WORD_BITS + diff.trailing_zeros() as usize;
                break;
            }
        }
        let valid = mismatch_row == rows;
        let rows_consumed = if valid { rows } else { mismatch_row + 1 };
        cost.verify_row_model_bits += (rows_consumed * self.n) as u64;
        valid
    }
}

/// Plain pre-stored-list decoding.
///
/// The zero pattern is dispatched by the syndrome check before the loop
/// and reported as zero guesses; otherwise patterns are tested in priority
/// order until one satisfies every check or the list is exhausted
/// (abandonment, reported as a missing codeword rather than an error).
pub fn decode_orbgrand<F: Real>(
    code: &LinearCode,
    llrs: &[F],
    eps: &EpSet,
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
            ge_stats: None,
            via_ge_fallback: false,
        });
    }
    let mut checker = Checker::new(&p.cols, &p.syndrome, code.n());
    let mut guesses = 0u64;
    for t in 1..=eps.len() {
        let ep = eps.pattern(t);
        guesses += 1;
        if checker.check(ep, &mut p.counters, &mut p.cost) {
            let w = p.apply_pattern(ep);
            return Ok(DecodeOutcome {
                codeword: Some(w),
                guesses,
                ep_index: Some(t),
                counters: p.counters,
                cost: p.cost,
                ge_stats: None,
                via_ge_fallback: false,
            });
        }
    }
    Ok(DecodeOutcome {
        codeword: None,
        guesses,
        ep_index: None,
        counters: p.counters,
        cost: p.cost,
        ge_stats: None,
        via_ge_fallback: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hamming74;

    /// Worked-example permuted check matrix (three rows, seven columns).
    pub(crate) fn example_h_pi() -> BitMatrix {
        BitMatrix::from_str_rows(&["1110000", "0111010", "1011101"]).unwrap()
    }

    fn ep(flips: &[u16]) -> ErrorPattern {
        ErrorPattern::new(flips.to_vec()).unwrap()
    }

    #[test]
    fn first_nine_patterns_match_screening_table() {
        let eps = generate_ep_set(7, 9).unwrap();
        let expect: Vec<Vec<u16>> = vec![
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![4],
            vec![1, 3],
            vec![5],
            vec![1, 4],
            vec![2, 3],
        ];
        for (t, flips) in expect.iter().enumerate() {
            assert_eq!(eps.pattern(t + 1).flips(), flips.as_slice(), "t={}", t + 1);
        }
        let rmres: Vec<usize> = (1..=9).map(|t| eps.rmre(t)).collect();
        assert_eq!(rmres, vec![1, 2, 3, 2, 4, 3, 5, 4, 3]);
    }

    #[test]
    fn full_enumeration_for_n3() {
        let eps = generate_ep_set(3, 7).unwrap();
        // brute-force oracle: all nonempty subsets sorted by (LW, weight, lex)
        let mut all: Vec<Vec<u16>> = (1u8..8)
            .map(|mask| (1..=3).filter(|i| (mask >> (i - 1)) & 1 == 1).collect())
            .collect();
        all.sort_by_key(|f| {
            (
                f.iter().map(|&x| x as u64).sum::<u64>(),
                f.len(),
                f.clone(),
            )
        });
        let got: Vec<Vec<u16>> = eps.iter().map(|p| p.flips().to_vec()).collect();
        assert_eq!(got, all);
        assert!(eps.is_lw_ordered());
    }

    #[test]
    fn budget_larger_than_pattern_space_is_rejected() {
        assert!(matches!(
            generate_ep_set(3, 8),
            Err(Error::BudgetTooLarge { .. })
        ));
        assert!(generate_ep_set(3, 7).is_ok());
        assert!(generate_ep_set(0, 1).is_err());
        assert!(generate_ep_set(3, 0).is_err());
    }

    #[test]
    fn import_rejects_duplicates_and_bad_lines() {
        assert!(EpSet::import(7, "1\n2\n1\n").is_err());
        assert!(EpSet::import(7, "3,2\n").is_err());
        assert!(EpSet::import(7, "0\n").is_err());
        assert!(EpSet::import(7, "8\n").is_err());
        let eps = EpSet::import(7, "# comment\n5\n1,2\n").unwrap();
        assert_eq!(eps.len(), 2);
        assert_eq!(eps.pattern(1).flips(), &[5]);
        assert_eq!(eps.rmre(2), 2);
        assert!(!eps.is_lw_ordered());
    }

    #[test]
    fn decode_matches_minimum_priority_scan_oracle() {
        // independent oracle: test every stored pattern through the
        // row-major matrix product and take the smallest valid priority
        let code = hamming74();
        let eps = generate_ep_set(7, 127).unwrap();
        let mut state = 4242u64;
        for trial in 0..10_000 {
            let llrs: Vec<f64> = (0..7)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 11) as f64 / (1u64 << 53) as f64) * 3.0 - 1.5
                })
                .collect();
            let out = decode_orbgrand(&code, &llrs, &eps).unwrap();

            let mut c = OpCounter::new();
            let perm = rank_llrs(&llrs, &mut c).unwrap();
            let h_pi = permuted_check_matrix(&code, &perm).unwrap();
            let mut theta = BitVector::zeros(7);
            for (i, &l) in llrs.iter().enumerate() {
                if l < 0.0 {
                    theta.set(i);
                }
            }
            let s = h_pi
                .mat_vec_mul(
                    &{
                        let mut tp = BitVector::zeros(7);
                        for i in 0..7 {
                            if theta.get(perm.pos_of_rank(i + 1)) {
                                tp.set(i);
                            }
                        }
                        tp
                    },
                    &mut c,
                )
                .unwrap();
            let oracle = if s.is_zero() {
                None
            } else {
                (1..=eps.len()).find(|&t| {
                    h_pi.mat_vec_mul(&eps.pattern(t).to_bitvector(7), &mut c)
                        .unwrap()
                        == s
                })
            };
            match oracle {
                Some(t) => assert_eq!(out.ep_index, Some(t), "trial {trial}"),
                None => assert!(
                    out.ep_index.is_none(),
                    "trial {trial}: decoder found {:?}, oracle found nothing",
                    out.ep_index
                ),
            }
        }
    }

    #[test]
    fn lookup_is_injective_inverse() {
        let eps = generate_ep_set(16, 2000).unwrap();
        for t in 1..=eps.len() {
            assert_eq!(eps.lookup(eps.pattern(t)), Some(t));
        }
        assert!(eps.lookup(&ep(&[15, 16])).is_some());
        assert_eq!(eps.lookup(&ep(&[1, 2, 3, 4, 5, 6, 7, 8, 9])), None);
    }

    #[test]
    fn rank_llrs_orders_by_magnitude() {
        let mut c = OpCounter::new();
        let perm = rank_llrs(&[-0.1f64, 3.0, 0.5], &mut c).unwrap();
        assert_eq!(perm.rank_to_pos(), &[0, 2, 1]);
        assert_eq!(perm.pos_of_rank(1), 0);
        assert_eq!(perm.rank_of_pos(1), 3);
        assert!(c.float_ops > 0);
    }

    #[test]
    fn rank_llrs_stable_on_ties() {
        let mut c = OpCounter::new();
        let perm = rank_llrs(&[1.0f64, 1.0, 1.0, 1.0], &mut c).unwrap();
        assert_eq!(perm.rank_to_pos(), &[0, 1, 2, 3]);
        let perm = rank_llrs(&[-0.5f64, 0.5], &mut c).unwrap();
        assert_eq!(perm.rank_to_pos(), &[0, 1]);
    }

    #[test]
    fn rank_llrs_rejects_nan_and_empty() {
        let mut c = OpCounter::new();
        assert!(matches!(
            rank_llrs(&[0.1f64, f64::NAN], &mut c),
            Err(Error::NanLlr(1))
        ));
        assert!(rank_llrs::<f64>(&[], &mut c).is_err());
    }

    #[test]
    fn permuted_check_matrix_identity_and_inverse() {
        let code = hamming74();
        let mut c = OpCounter::new();
        let llrs: Vec<f64> = (1..=7).map(|i| i as f64).collect();
        let perm = rank_llrs(&llrs, &mut c).unwrap();
        let h_pi = permuted_check_matrix(&code, &perm).unwrap();
        assert_eq!(&h_pi, code.parity_check());

        // a nontrivial permutation, undone by permuting with the inverse
        let llrs = vec![0.7, 0.3, 0.5, 0.1, 0.6, 0.2, 0.4];
        let perm = rank_llrs(&llrs, &mut c).unwrap();
        let h_pi = permuted_check_matrix(&code, &perm).unwrap();
        let mut undone = BitMatrix::zeros(3, 7);
        for i in 0..3 {
            for j in 0..7 {
                if h_pi.get(i, j) {
                    undone.set(i, perm.pos_of_rank(j + 1), true);
                }
            }
        }
        assert_eq!(&undone, code.parity_check());
    }

    #[test]
    fn verify_ep_worked_example() {
        let h_pi = example_h_pi();
        let s = BitVector::from_str01("001").unwrap();
        let mut c = OpCounter::new();
        assert!(verify_ep(&h_pi, &s, &ep(&[2, 3]), &mut c));
        assert!(!verify_ep(&h_pi, &s, &ep(&[1]), &mut c));
        let zero = BitVector::zeros(3);
        assert!(verify_ep(&h_pi, &zero, &ErrorPattern::empty(), &mut c));
        // cost: weight * rows per test
        assert_eq!(c.xor_bit_ops, (2 + 1) * 3);
    }

    #[test]
    fn rowwise_verifier_matches_column_verifier() {
        let h_pi = example_h_pi();
        let s = BitVector::from_str01("001").unwrap();
        let mut c = OpCounter::new();
        for flips in [vec![1], vec![2, 3], vec![4], vec![5], vec![1, 2]] {
            let e = ep(&flips);
            let (ok, rows) = verify_ep_rowwise(&h_pi, &s, &e);
            assert_eq!(ok, verify_ep(&h_pi, &s, &e, &mut c));
            assert!((1..=3).contains(&rows));
            if ok {
                assert_eq!(rows, 3);
            }
        }
    }

    #[test]
    fn example_instance_decodes_at_priority_seven() {
        // LLR fixture reproducing the worked example: identity ranking,
        // hard decision 0000100, syndrome 001.
        let h_pi = example_h_pi();
        let code = LinearCode::from_parity_check("example", h_pi).unwrap();
        let llrs = vec![0.1, 0.2, 0.3, 0.4, -0.5, 0.6, 0.7];
        let eps = generate_ep_set(7, 50).unwrap();
        let out = decode_orbgrand(&code, &llrs, &eps).unwrap();
        assert_eq!(out.guesses, 7);
        assert_eq!(out.ep_index, Some(7));
        assert!(out.codeword.as_ref().unwrap().is_zero());
    }

    #[test]
    fn f32_llrs_decode_identically() {
        let h_pi = example_h_pi();
        let code = LinearCode::from_parity_check("example", h_pi).unwrap();
        let eps = generate_ep_set(7, 50).unwrap();
        let llrs32: Vec<f32> = vec![0.1, 0.2, 0.3, 0.4, -0.5, 0.6, 0.7];
        let out = decode_orbgrand(&code, &llrs32, &eps).unwrap();
        assert_eq!(out.guesses, 7);
        assert_eq!(out.ep_index, Some(7));
    }

    #[test]
    fn noiseless_input_short_circuits() {
        let code = hamming74();
        let llrs = vec![5.0f64; 7];
        let eps = generate_ep_set(7, 20).unwrap();
        let out = decode_orbgrand(&code, &llrs, &eps).unwrap();
        assert_eq!(out.guesses, 0);
        assert_eq!(out.ep_index, None);
        assert!(out.codeword.as_ref().unwrap().is_zero());
    }

    #[test]
    fn exhausted_budget_abandons() {
        // an unsatisfiable instance: restrict the budget below the first
        // valid pattern for the worked example
        let h_pi = example_h_pi();
        let code = LinearCode::from_parity_check("example", h_pi).unwrap();
        let llrs = vec![0.1, 0.2, 0.3, 0.4, -0.5, 0.6, 0.7];
        let eps = generate_ep_set(7, 4).unwrap();
        let out = decode_orbgrand(&code, &llrs, &eps).unwrap();
        assert!(out.codeword.is_none());
        assert_eq!(out.guesses, 4);
    }

    #[test]
    fn decoded_word_is_always_a_codeword() {
        let code = hamming74();
        let eps = generate_ep_set(7, 127).unwrap();
        let mut state = 7u64;
        for _ in 0..2000 {
            let llrs: Vec<f64> = (0..7)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
                })
                .collect();
            let out = decode_orbgrand(&code, &llrs, &eps).unwrap();
            if let Some(w) = &out.codeword {
                assert!(code.is_codeword(w));
            }
        }
    }

    #[test]
    fn rmre_matches_channel_domain_definition() {
        // rank-domain RMRE (last flip) equals the channel-domain maximum
        // rank over the permuted pattern
        let mut c = OpCounter::new();
        let llrs = vec![0.7, 0.3, 0.5, 0.1, 0.6, 0.2, 0.4];
        let perm = rank_llrs(&llrs, &mut c).unwrap();
        let pattern = ep(&[2, 5]);
        let channel: Vec<usize> = pattern
            .flips()
            .iter()
            .map(|&f| perm.pos_of_rank(f as usize))
            .collect();
        let via_channel = channel
            .iter()
            .map(|&pos| perm.rank_of_pos(pos))
            .max()
            .unwrap();
        assert_eq!(via_channel, pattern.rmre());
    }
}
