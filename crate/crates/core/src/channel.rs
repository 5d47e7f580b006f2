//! AWGN/BPSK Monte Carlo harness.
//!
//! Transmissions are generated per trial from a counter-based substream
//! (ChaCha8 keyed by the run seed, stream = trial index), so results are
//! independent of execution order and thread count. Every registered
//! decoder sees the identical noise stream (common random numbers),
//! which makes per-instance comparisons exact and paired statistics
//! noiseless. All aggregation is integer-valued, so merged statistics
//! are bit-identical regardless of scheduling.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::codes::{systematic_generator, GeneratorMatrix, LinearCode};
use crate::elim::{decode_elim_aided, DecodeConfig, GeMode};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, OpCounter};
use crate::orbgrand::{decode_orbgrand, rank_llrs, DecodeOutcome, EpSet};
use crate::real::Real;

/// RNG identifier recorded in run manifests.
pub const RNG_NAME: &str = "chacha8(seed, stream = trial index)";

/// Deterministic per-trial generator: same (seed, trial) always yields
/// the same stream, in any order, on any thread.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Channel operating point.
///
/// `sigma2 = 1 / (2 R 10^(EbN0_dB / 10))` with the energy per information
/// bit convention; the LLR scale factor is `2 / sigma2`.
#[derive(Clone, Copy, Debug)]
pub struct ChannelParams<F: Real> {
    ebn0_db: F,
    rate: F,
    sigma2: F,
}

impl<F: Real> ChannelParams<F> {
    pub fn new(ebn0_db: F, rate: F) -> Result<Self> {
        if !(rate > F::zero() && rate < F::one()) {
            return Err(Error::InvalidParameter(format!(
                "code rate must lie in (0, 1), got {rate}"
            )));
        }
        let ten = F::from_f64_lossy(10.0);
        let ebn0 = ten.powf(ebn0_db / ten);
        let sigma2 = (F::from_f64_lossy(2.0) * rate * ebn0).recip();
        Ok(Self {
            ebn0_db,
            rate,
            sigma2,
        })
    }

    pub fn for_code(ebn0_db: F, code: &LinearCode) -> Result<Self> {
        Self::new(ebn0_db, F::from_f64_lossy(code.rate()))
    }

    pub fn ebn0_db(&self) -> F {
        self.ebn0_db
    }

    pub fn rate(&self) -> F {
        self.rate
    }

    pub fn sigma2(&self) -> F {
        self.sigma2
    }

    pub fn noise_std(&self) -> F {
        self.sigma2.sqrt()
    }

    pub fn llr_scale(&self) -> F {
        F::from_f64_lossy(2.0) / self.sigma2
    }
}

/// Message selection for transmissions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MessageMode {
    /// Transmit the all-zero codeword (the decoders are symmetric).
    AllZero,
    /// Encode uniformly random messages through the generator matrix.
    Random,
}

/// One channel use: codeword, received samples, LLRs.
#[derive(Clone, Debug)]
pub struct Transmission<F> {
    pub codeword: BitVector,
    pub received: Vec<F>,
    pub llrs: Vec<F>,
}

/// BPSK-modulates a codeword (0 -> +1, 1 -> -1), adds white Gaussian
/// noise of variance sigma^2, and scales to LLRs.
pub fn transmit<F: Real>(
    code: &LinearCode,
    params: &ChannelParams<F>,
    rng: &mut impl Rng,
    mode: MessageMode,
    generator: Option<&GeneratorMatrix>,
) -> Result<Transmission<F>>
where
    StandardNormal: Distribution<F>,
{
    let codeword = match mode {
        MessageMode::AllZero => BitVector::zeros(code.n()),
        MessageMode::Random => {
            let g = generator.ok_or_else(|| {
                Error::InvalidParameter("random message mode requires a generator matrix".into())
            })?;
            let mut msg = BitVector::zeros(code.k());
            for i in 0..code.k() {
                if rng.random::<bool>() {
                    msg.set(i);
                }
            }
            g.encode(&msg)?
        }
    };
    let std = params.noise_std();
    let scale = params.llr_scale();
    let mut received = Vec::with_capacity(code.n());
    let mut llrs = Vec::with_capacity(code.n());
    for i in 0..code.n() {
        let x = if codeword.get(i) { -F::one() } else { F::one() };
        let noise: F = rng.sample(StandardNormal);
        let y = x + std * noise;
        received.push(y);
        llrs.push(scale * y);
    }
    Ok(Transmission {
        codeword,
        received,
        llrs,
    })
}

/// The decoders the harness can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Orbgrand,
    ElimFull,
    ElimReduced,
}

impl DecoderKind {
    pub fn id(&self) -> &'static str {
        match self {
            DecoderKind::Orbgrand => "orbgrand",
            DecoderKind::ElimFull => "elim_full",
            DecoderKind::ElimReduced => "elim_reduced",
        }
    }

    pub fn from_id(s: &str) -> Result<Self> {
        match s {
            "orbgrand" => Ok(DecoderKind::Orbgrand),
            "elim_full" => Ok(DecoderKind::ElimFull),
            "elim_reduced" => Ok(DecoderKind::ElimReduced),
            other => Err(Error::InvalidParameter(format!(
                "unknown decoder {other:?} (expected orbgrand, elim_full or elim_reduced)"
            ))),
        }
    }

    pub fn decode<F: Real>(
        &self,
        code: &LinearCode,
        llrs: &[F],
        eps: &EpSet,
        config: &DecodeConfig,
    ) -> Result<DecodeOutcome> {
        match self {
            DecoderKind::Orbgrand => decode_orbgrand(code, llrs, eps),
            DecoderKind::ElimFull => decode_elim_aided(code, llrs, eps, GeMode::Full, config),
            DecoderKind::ElimReduced => decode_elim_aided(code, llrs, eps, GeMode::Reduced, config),
        }
    }
}

/// Outcome of one decode attempt inside a trial.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub decoder: DecoderKind,
    pub success: bool,
    /// Mismatch against the transmitted codeword, or abandonment.
    pub block_error: bool,
    pub guesses: u64,
    pub xor_engine: u64,
    pub xor_checker_model: u64,
    pub ge_stats: Option<crate::orbgrand::GeStats>,
    /// RMRE of the true error pattern theta(y) xor w.
    pub rmre_true: usize,
}

/// Aggregated per-decoder statistics.
#[derive(Clone, Debug, Default)]
pub struct SimStats {
    pub trials: u64,
    pub block_errors: u64,
    pub abandonments: u64,
    pub total_guesses: u128,
    pub guess_histogram: BTreeMap<u64, u64>,
    /// Engine accounting: column-XOR verification costs.
    pub total_xor_engine: u128,
    /// Checker-model accounting: row-wise verification charge.
    pub total_xor_checker: u128,
    pub total_float_ops: u128,
    /// Elimination work split by phase (elimination decoders only).
    pub total_ge_pivot_xor: u128,
    pub total_ge_aux_xor: u128,
    /// Rows consumed across all verifications (drives the average
    /// parity-checks-per-test constant).
    pub total_verify_rows: u128,
    pub rmre_histogram: BTreeMap<u32, u64>,
    pub m_histogram: BTreeMap<u32, u64>,
    pub sum_m: u128,
    pub sum_m_m3_half: u128,
    /// Trial indices that ended in block error (sorted after the run).
    pub error_trials: Vec<u64>,
}

impl SimStats {
    pub fn bler(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.block_errors as f64 / self.trials as f64)
    }

    pub fn mean_guesses(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.total_guesses as f64 / self.trials as f64)
    }

    /// Mean queries counting the initial syndrome test as one query per
    /// trial. Published average-guess tables follow this convention; the
    /// decoders themselves report pattern tests only.
    pub fn mean_queries(&self) -> Option<f64> {
        (self.trials > 0)
            .then(|| (self.total_guesses + self.trials as u128) as f64 / self.trials as f64)
    }

    pub fn mean_xor_engine(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.total_xor_engine as f64 / self.trials as f64)
    }

    pub fn mean_xor_checker(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.total_xor_checker as f64 / self.trials as f64)
    }

    pub fn mean_m(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.sum_m as f64 / self.trials as f64)
    }

    pub fn mean_m_m3_half(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.sum_m_m3_half as f64 / self.trials as f64)
    }

    /// Average parity-check rows consumed per verification.
    pub fn mean_verify_rows(&self) -> Option<f64> {
        (self.total_guesses > 0).then(|| self.total_verify_rows as f64 / self.total_guesses as f64)
    }

    fn absorb(&mut self, rec: &TrialRecord, trial: u64) {
        self.trials += 1;
        if rec.block_error {
            self.block_errors += 1;
            self.error_trials.push(trial);
        }
        if !rec.success {
            self.abandonments += 1;
        }
        self.total_guesses += rec.guesses as u128;
        *self.guess_histogram.entry(rec.guesses).or_insert(0) += 1;
        self.total_xor_engine += rec.xor_engine as u128;
        self.total_xor_checker += rec.xor_checker_model as u128;
        *self.rmre_histogram.entry(rec.rmre_true as u32).or_insert(0) += 1;
        if let Some(ge) = rec.ge_stats {
            let m = ge.pivots as u128;
            *self.m_histogram.entry(ge.pivots as u32).or_insert(0) += 1;
            self.sum_m += m;
            self.sum_m_m3_half += m * (m + 3) / 2;
        }
    }

    fn merge(&mut self, other: SimStats) {
        self.trials += other.trials;
        self.block_errors += other.block_errors;
        self.abandonments += other.abandonments;
        self.total_guesses += other.total_guesses;
        for (k, v) in other.guess_histogram {
            *self.guess_histogram.entry(k).or_insert(0) += v;
        }
        self.total_xor_engine += other.total_xor_engine;
        self.total_xor_checker += other.total_xor_checker;
        self.total_float_ops += other.total_float_ops;
        self.total_ge_pivot_xor += other.total_ge_pivot_xor;
        self.total_ge_aux_xor += other.total_ge_aux_xor;
        self.total_verify_rows += other.total_verify_rows;
        for (k, v) in other.rmre_histogram {
            *self.rmre_histogram.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.m_histogram {
            *self.m_histogram.entry(k).or_insert(0) += v;
        }
        self.sum_m += other.sum_m;
        self.sum_m_m3_half += other.sum_m_m3_half;
        self.error_trials.extend(other.error_trials);
    }
}

/// Cross-decoder paired checks, exact under common random numbers.
#[derive(Clone, Debug, Default)]
pub struct PairedStats {
    /// Trials where any decoder disagreed with the first on codeword or
    /// priority.
    pub outcome_mismatches: u64,
    /// Trials where an elimination decoder tested more patterns than the
    /// plain scan.
    pub guess_domination_violations: u64,
    /// Trials violating m <= RMRE(theta(y) xor w).
    pub m_exceeds_rmre_violations: u64,
    /// Trials where the reduced GE-phase work exceeded m(m+3)/2 (N-K).
    pub reduced_ge_bound_violations: u64,
    /// Trials where the full GE-phase work exceeded m (N+1) (N-K).
    pub full_ge_bound_violations: u64,
}

impl PairedStats {
    fn merge(&mut self, other: PairedStats) {
        self.outcome_mismatches += other.outcome_mismatches;
        self.guess_domination_violations += other.guess_domination_violations;
        self.m_exceeds_rmre_violations += other.m_exceeds_rmre_violations;
        self.reduced_ge_bound_violations += other.reduced_ge_bound_violations;
        self.full_ge_bound_violations += other.full_ge_bound_violations;
    }
}

/// Full result of a Monte Carlo run.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub decoders: Vec<DecoderKind>,
    pub stats: Vec<SimStats>,
    pub paired: PairedStats,
}

impl RunSummary {
    pub fn stats_for(&self, kind: DecoderKind) -> Option<&SimStats> {
        self.decoders
            .iter()
            .position(|&d| d == kind)
            .map(|i| &self.stats[i])
    }
}

/// Stopping rule for a run.
#[derive(Clone, Copy, Debug)]
pub enum StopRule {
    FixedTrials(u64),
    /// Run batches until the first decoder has seen at least this many
    /// block errors (or the cap is hit).
    MinErrors { errors: u64, max_trials: u64 },
}

struct Partial {
    stats: Vec<SimStats>,
    paired: PairedStats,
}

impl Partial {
    fn new(n_decoders: usize) -> Self {
        Self {
            stats: (0..n_decoders).map(|_| SimStats::default()).collect(),
            paired: PairedStats::default(),
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (a, b) in self.stats.iter_mut().zip(other.stats) {
            a.merge(b);
        }
        self.paired.merge(other.paired);
        self
    }
}

/// Runs paired Monte Carlo trials.
///
/// Each trial draws one transmission from its substream and hands the
/// identical LLRs to every decoder. Results are deterministic for a
/// given (seed, stop rule, decoder list) regardless of thread count.
#[allow(clippy::too_many_arguments)]
pub fn run_trials<F: Real>(
    code: &LinearCode,
    params: &ChannelParams<F>,
    decoders: &[DecoderKind],
    eps: &EpSet,
    seed: u64,
    stop: StopRule,
    mode: MessageMode,
    config: &DecodeConfig,
) -> Result<RunSummary>
where
    StandardNormal: Distribution<F>,
{
    if decoders.is_empty() {
        return Err(Error::InvalidParameter("no decoders registered".into()));
    }
    if eps.n() != code.n() {
        return Err(Error::LengthMismatch {
            left: code.n(),
            right: eps.n(),
        });
    }
    let generator = match mode {
        MessageMode::Random => Some(systematic_generator(code)?),
        MessageMode::AllZero => None,
    };
    let generator = generator.as_ref();

    const BATCH: u64 = 4096;
    let mut acc = Partial::new(decoders.len());
    let mut next_trial = 0u64;
    loop {
        let target = match stop {
            StopRule::FixedTrials(t) => t,
            StopRule::MinErrors { max_trials, .. } => max_trials,
        };
        if next_trial >= target {
            break;
        }
        let end = (next_trial + BATCH).min(target);
        let batch = (next_trial..end)
            .into_par_iter()
            .map(|trial| -> Result<Partial> {
                let mut part = Partial::new(decoders.len());
                let mut rng = trial_rng(seed, trial);
                let tx = transmit(code, params, &mut rng, mode, generator)?;
                run_one_trial(code, &tx, decoders, eps, config, trial, &mut part)?;
                Ok(part)
            })
            .try_reduce(|| Partial::new(decoders.len()), |a, b| Ok(a.merge(b)))?;
        acc = acc.merge(batch);
        next_trial = end;
        if let StopRule::MinErrors { errors, .. } = stop {
            if acc.stats[0].block_errors >= errors {
                break;
            }
        }
    }
    let mut stats = acc.stats;
    for s in &mut stats {
        s.error_trials.sort_unstable();
    }
    Ok(RunSummary {
        decoders: decoders.to_vec(),
        stats,
        paired: acc.paired,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_one_trial<F: Real>(
    code: &LinearCode,
    tx: &Transmission<F>,
    decoders: &[DecoderKind],
    eps: &EpSet,
    config: &DecodeConfig,
    trial: u64,
    part: &mut Partial,
) -> Result<()> {
    let rmre_true = true_pattern_rmre(&tx.llrs, &tx.codeword)?;
    let r = code.redundancy() as u64;
    let n = code.n() as u64;

    let mut outcomes: Vec<DecodeOutcome> = Vec::with_capacity(decoders.len());
    for (di, d) in decoders.iter().enumerate() {
        let out = d.decode(code, &tx.llrs, eps, config)?;
        let rec = TrialRecord {
            decoder: *d,
            success: out.is_success(),
            block_error: out.codeword.as_ref() != Some(&tx.codeword),
            guesses: out.guesses,
            xor_engine: out.cost.normalized_engine(),
            xor_checker_model: out.cost.normalized_checker_model(),
            ge_stats: out.ge_stats,
            rmre_true,
        };
        let s = &mut part.stats[di];
        s.absorb(&rec, trial);
        s.total_float_ops += out.counters.float_ops as u128;
        s.total_ge_pivot_xor += out.cost.ge_pivot_xor_bits as u128;
        s.total_ge_aux_xor += out.cost.ge_aux_xor_bits as u128;
        s.total_verify_rows += (out.cost.verify_row_model_bits / n.max(1)) as u128;

        if let Some(ge) = out.ge_stats {
            let m = ge.pivots as u64;
            if m > rmre_true as u64 {
                part.paired.m_exceeds_rmre_violations += 1;
            }
            match d {
                DecoderKind::ElimReduced => {
                    if out.cost.ge_pivot_xor_bits > m * (m + 3) / 2 * r {
                        part.paired.reduced_ge_bound_violations += 1;
                    }
                }
                DecoderKind::ElimFull => {
                    if out.cost.ge_pivot_xor_bits > m * (n + 1) * r {
                        part.paired.full_ge_bound_violations += 1;
                    }
                }
                DecoderKind::Orbgrand => {}
            }
        }
        outcomes.push(out);
    }

    // paired comparisons against the first decoder
    let base = &outcomes[0];
    for (di, out) in outcomes.iter().enumerate().skip(1) {
        if out.codeword != base.codeword || out.ep_index != base.ep_index {
            part.paired.outcome_mismatches += 1;
        }
        if decoders[di] != DecoderKind::Orbgrand
            && decoders[0] == DecoderKind::Orbgrand
            && out.guesses > base.guesses
        {
            part.paired.guess_domination_violations += 1;
        }
    }
    Ok(())
}

/// RMRE of the true error pattern theta(y) xor w for one transmission.
pub fn true_pattern_rmre<F: Real>(llrs: &[F], codeword: &BitVector) -> Result<usize> {
    let mut scratch = OpCounter::new();
    let perm = rank_llrs(llrs, &mut scratch)?;
    let mut rmre = 0usize;
    for (pos, l) in llrs.iter().enumerate() {
        let hard = *l < F::zero();
        if hard != codeword.get(pos) {
            rmre = rmre.max(perm.rank_of_pos(pos));
        }
    }
    Ok(rmre)
}

/// Measures the average number of parity-check rows a row-wise verifier
/// consumes per pattern test, by running the plain decoder over `trials`
/// transmissions and averaging the instrumented row counts.
pub fn measure_c<F: Real>(
    code: &LinearCode,
    params: &ChannelParams<F>,
    eps: &EpSet,
    trials: u64,
    seed: u64,
) -> Result<f64>
where
    StandardNormal: Distribution<F>,
{
    let summary = run_trials(
        code,
        params,
        &[DecoderKind::Orbgrand],
        eps,
        seed,
        StopRule::FixedTrials(trials),
        MessageMode::AllZero,
        &DecodeConfig::default(),
    )?;
    Ok(summary.stats[0].mean_verify_rows().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hamming74;
    use crate::gf2::BitMatrix;
    use crate::orbgrand::{generate_ep_set, verify_ep_rowwise, ErrorPattern};

    #[test]
    fn sigma2_follows_ebn0_convention() {
        let p = ChannelParams::new(5.0f64, 113.0 / 127.0).unwrap();
        let expect = 1.0 / (2.0 * (113.0 / 127.0) * 10f64.powf(0.5));
        assert!((p.sigma2() - expect).abs() < 1e-15);
        assert!((p.llr_scale() - 2.0 / expect).abs() < 1e-12);
        assert!(ChannelParams::new(5.0f64, 1.0).is_err());
    }

    #[test]
    fn all_zero_mode_sends_all_plus_one() {
        let code = hamming74();
        let p = ChannelParams::new(40.0f64, code.rate()).unwrap();
        let mut rng = trial_rng(1, 0);
        let tx = transmit(&code, &p, &mut rng, MessageMode::AllZero, None).unwrap();
        assert!(tx.codeword.is_zero());
        for &y in &tx.received {
            assert!(y > 0.9);
        }
    }

    #[test]
    fn fixed_seed_reproduces_bit_identical_samples() {
        let code = hamming74();
        let p = ChannelParams::new(3.0f64, code.rate()).unwrap();
        let a = transmit(&code, &p, &mut trial_rng(42, 7), MessageMode::AllZero, None).unwrap();
        let b = transmit(&code, &p, &mut trial_rng(42, 7), MessageMode::AllZero, None).unwrap();
        assert_eq!(a.received, b.received);
        let c = transmit(&code, &p, &mut trial_rng(42, 8), MessageMode::AllZero, None).unwrap();
        assert_ne!(a.received, c.received);
    }

    #[test]
    fn random_mode_requires_generator() {
        let code = hamming74();
        let p = ChannelParams::new(3.0f64, code.rate()).unwrap();
        assert!(transmit(&code, &p, &mut trial_rng(1, 0), MessageMode::Random, None).is_err());
        let g = systematic_generator(&code).unwrap();
        let tx = transmit(&code, &p, &mut trial_rng(1, 0), MessageMode::Random, Some(&g)).unwrap();
        assert!(code.is_codeword(&tx.codeword));
    }

    #[test]
    fn high_snr_hard_decisions_match_transmitted() {
        // at 12 dB the per-bit flip probability is Q(1/sigma) ~ 3e-10,
        // so essentially all of 10^4 trials decode by sign alone
        let code = hamming74();
        let p = ChannelParams::new(12.0f64, code.rate()).unwrap();
        let mut clean = 0;
        for trial in 0..10_000u64 {
            let tx =
                transmit(&code, &p, &mut trial_rng(5, trial), MessageMode::AllZero, None).unwrap();
            if tx.llrs.iter().all(|&l| l > 0.0) {
                clean += 1;
            }
        }
        assert!(clean >= 9_990, "clean {clean}");
    }

    #[test]
    fn run_trials_is_thread_invariant_and_paired() {
        let code = hamming74();
        let p = ChannelParams::new(3.0f64, code.rate()).unwrap();
        let eps = generate_ep_set(7, 127).unwrap();
        let decoders = [
            DecoderKind::Orbgrand,
            DecoderKind::ElimFull,
            DecoderKind::ElimReduced,
        ];
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                run_trials(
                    &code,
                    &p,
                    &decoders,
                    &eps,
                    9,
                    StopRule::FixedTrials(2000),
                    MessageMode::AllZero,
                    &DecodeConfig::default(),
                )
                .unwrap()
            })
        };
        let a = run(1);
        let b = run(2);
        for (sa, sb) in a.stats.iter().zip(b.stats.iter()) {
            assert_eq!(sa.block_errors, sb.block_errors);
            assert_eq!(sa.total_guesses, sb.total_guesses);
            assert_eq!(sa.total_xor_engine, sb.total_xor_engine);
            assert_eq!(sa.guess_histogram, sb.guess_histogram);
            assert_eq!(sa.error_trials, sb.error_trials);
        }
        // per-instance equivalence and identical error sets
        assert_eq!(a.paired.outcome_mismatches, 0);
        assert_eq!(a.paired.guess_domination_violations, 0);
        assert_eq!(a.stats[0].error_trials, a.stats[1].error_trials);
        assert_eq!(a.stats[0].error_trials, a.stats[2].error_trials);
        // the rmre histograms are decoder-independent
        assert_eq!(a.stats[0].rmre_histogram, a.stats[1].rmre_histogram);
    }

    #[test]
    fn min_errors_stop_rule_reaches_threshold() {
        let code = hamming74();
        let p = ChannelParams::new(1.0f64, code.rate()).unwrap();
        let eps = generate_ep_set(7, 127).unwrap();
        let summary = run_trials(
            &code,
            &p,
            &[DecoderKind::Orbgrand],
            &eps,
            3,
            StopRule::MinErrors {
                errors: 20,
                max_trials: 1_000_000,
            },
            MessageMode::AllZero,
            &DecodeConfig::default(),
        )
        .unwrap();
        assert!(summary.stats[0].block_errors >= 20);
        assert!(summary.stats[0].trials < 1_000_000);
    }

    #[test]
    fn zero_trials_yield_empty_stats() {
        let code = hamming74();
        let p = ChannelParams::new(3.0f64, code.rate()).unwrap();
        let eps = generate_ep_set(7, 20).unwrap();
        let summary = run_trials(
            &code,
            &p,
            &[DecoderKind::Orbgrand],
            &eps,
            3,
            StopRule::FixedTrials(0),
            MessageMode::AllZero,
            &DecodeConfig::default(),
        )
        .unwrap();
        assert_eq!(summary.stats[0].trials, 0);
        assert_eq!(summary.stats[0].bler(), None);
        assert_eq!(summary.stats[0].mean_guesses(), None);
    }

    #[test]
    fn rowwise_rows_consumed_statistics() {
        // random syndrome against random patterns: each parity row
        // mismatches independently with probability 1/2, so the mean rows
        // consumed approaches 2 (1 - 2^-(N-K))
        let rows = 12;
        let mut state = 0xabcdef12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut h = BitMatrix::zeros(rows, 24);
        for i in 0..rows {
            for j in 0..24 {
                if next() & 1 == 1 {
                    h.set(i, j, true);
                }
            }
        }
        let mut total = 0usize;
        let mut count = 0usize;
        for _ in 0..4000 {
            let mut s = BitVector::zeros(rows);
            for i in 0..rows {
                if next() & 1 == 1 {
                    s.set(i);
                }
            }
            let mut flips = vec![];
            for j in 1..=24u16 {
                if next() % 4 == 0 {
                    flips.push(j);
                }
            }
            let ep = ErrorPattern::new(flips).unwrap();
            let (_, consumed) = verify_ep_rowwise(&h, &s, &ep);
            total += consumed;
            count += 1;
        }
        let c = total as f64 / count as f64;
        let analytic = 2.0 * (1.0 - 2f64.powi(-(rows as i32)));
        assert!(
            (c - analytic).abs() / analytic < 0.05,
            "c = {c}, analytic = {analytic}"
        );
    }

    #[test]
    fn measure_c_on_short_code() {
        // failing tests dominate, so the averaged rows-per-verification
        // sits near the geometric-success value 2(1 - 2^-(N-K)) = 1.75,
        // pulled up slightly by the full check of each winning pattern
        let code = hamming74();
        let p = ChannelParams::new(2.0f64, code.rate()).unwrap();
        let eps = generate_ep_set(7, 127).unwrap();
        let c = measure_c(&code, &p, &eps, 4000, 11).unwrap();
        assert!(c > 1.0 && c < 3.0, "c = {c}");
    }

    #[test]
    fn rank_deficient_matrix_still_decodes() {
        // duplicate parity row: rank 3 with 4 rows; both decoders must
        // agree instance by instance, with effective redundancy 3
        let h = BitMatrix::from_str_rows(&["1110000", "0111010", "1011101", "1110000"]).unwrap();
        let code = crate::codes::LinearCode::from_parity_check("deficient", h).unwrap();
        assert!(code.is_rank_deficient());
        let eps = generate_ep_set(7, 127).unwrap();
        let p = ChannelParams::new(2.0f64, code.rate()).unwrap();
        let summary = run_trials(
            &code,
            &p,
            &[
                DecoderKind::Orbgrand,
                DecoderKind::ElimFull,
                DecoderKind::ElimReduced,
            ],
            &eps,
            21,
            StopRule::FixedTrials(2000),
            MessageMode::AllZero,
            &DecodeConfig::default(),
        )
        .unwrap();
        assert_eq!(summary.paired.outcome_mismatches, 0);
        assert_eq!(summary.paired.guess_domination_violations, 0);
    }

    #[test]
    fn rowwise_exact_match_consumes_all_rows() {
        let h = BitMatrix::from_str_rows(&["1110000", "0111010", "1011101"]).unwrap();
        let s = BitVector::from_str01("001").unwrap();
        let ep = ErrorPattern::new(vec![2, 3]).unwrap();
        let (ok, rows) = verify_ep_rowwise(&h, &s, &ep);
        assert!(ok);
        assert_eq!(rows, 3);

        // single parity row always consumes exactly one
        let h1 = BitMatrix::from_str_rows(&["1010"]).unwrap();
        let s1 = BitVector::from_str01("1").unwrap();
        let (_, rows) = verify_ep_rowwise(&h1, &s1, &ErrorPattern::new(vec![1]).unwrap());
        assert_eq!(rows, 1);
        let (_, rows) = verify_ep_rowwise(&h1, &s1, &ErrorPattern::new(vec![2]).unwrap());
        assert_eq!(rows, 1);
    }

    #[test]
    fn true_pattern_rmre_matches_definition() {
        let codeword = BitVector::zeros(5);
        // positions 0 and 3 negative -> errors; magnitudes rank them
        // 2nd and 3rd
        let llrs = vec![-0.2f64, 0.1, 0.5, -0.4, 0.9];
        let rmre = true_pattern_rmre(&llrs, &codeword).unwrap();
        assert_eq!(rmre, 3);
        let clean = vec![0.2f64, 0.1, 0.5, 0.4, 0.9];
        assert_eq!(true_pattern_rmre(&clean, &codeword).unwrap(), 0);
    }
}
