//! Plug-in estimation of conditional transfer entropy on symbol series.
//!
//! For a target series x, a source series y and a conditioning series b, the
//! estimator counts joint occurrences of `(x_{n+1}, x_n^(k), y_n, b_n)` over
//! a sliding window and evaluates, in bits,
//!
//! ```text
//! T = (1/(L-k)) * sum_n log2[ p(x_{n+1} | x_n^(k), y_n, b_n)
//!                           / p(x_{n+1} | x_n^(k), b_n) ]
//! ```
//!
//! with maximum-likelihood conditionals read off the contingency table. The
//! average runs over the L-k window positions for which a full k-history
//! exists, which is also the sum over observed table entries weighted by
//! count/total — zero-count conditionals never enter.
//!
//! [`brute_force_te_oracle`] computes the same quantity through an
//! independent route: four marginal tables built directly from the raw
//! series and combined as a 4-entropy decomposition. The two routes agree to
//! well below 1e-12 bits and cross-check each other in the tests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::math::{self, KahanSum};
use crate::trace::SymbolSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EstimatorError {
    #[error("history length k must be at least 1")]
    InvalidHistory,
    #[error("series lengths differ: x={x}, y={y}, b={b}")]
    LengthMismatch { x: usize, y: usize, b: usize },
    #[error("series of length {len} too short for history k={k}")]
    SeriesTooShort { len: usize, k: usize },
}

/// Estimator parameters. Estimates are always reported in bits (log base 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    history_k: usize,
}

impl EstimatorConfig {
    pub fn new(history_k: usize) -> Result<EstimatorConfig, EstimatorError> {
        if history_k == 0 {
            return Err(EstimatorError::InvalidHistory);
        }
        Ok(EstimatorConfig { history_k })
    }

    pub fn history_k(&self) -> usize {
        self.history_k
    }
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig { history_k: 2 }
    }
}

/// One decoded contingency-table key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JointObservation<'a> {
    /// Target symbol at n+1.
    pub x_next: u8,
    /// Target history `x_{n-k+1} ... x_n`, oldest first.
    pub x_past: &'a [u8],
    /// Source symbol at n.
    pub source: u8,
    /// Conditioning symbol at n.
    pub cond: u8,
}

/// Joint occurrence counts of `(x_{n+1}, x_n^(k), y_n, b_n)`.
///
/// Keys are stored as packed byte strings `[x_next, past.., y, b]`; the map
/// is ordered, so iteration (and therefore every sum taken over the table)
/// is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: BTreeMap<Vec<u8>, u32>,
    total: u32,
    history_k: usize,
}

impl ContingencyTable {
    /// Sum of all counts: the number of valid window positions, L - k.
    pub fn total(&self) -> u32 {
        self.total
    }

    /// Number of distinct joint tuples observed.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn history_k(&self) -> usize {
        self.history_k
    }

    pub fn iter(&self) -> impl Iterator<Item = (JointObservation<'_>, u32)> {
        let k = self.history_k;
        self.counts.iter().map(move |(key, &count)| {
            (
                JointObservation {
                    x_next: key[0],
                    x_past: &key[1..=k],
                    source: key[k + 1],
                    cond: key[k + 2],
                },
                count,
            )
        })
    }
}

fn check_lengths(
    x: &SymbolSeries,
    y: &SymbolSeries,
    b: Option<&SymbolSeries>,
    k: usize,
) -> Result<usize, EstimatorError> {
    let (lx, ly) = (x.len(), y.len());
    let lb = b.map_or(lx, SymbolSeries::len);
    if lx != ly || lx != lb {
        return Err(EstimatorError::LengthMismatch {
            x: lx,
            y: ly,
            b: lb,
        });
    }
    if lx <= k {
        return Err(EstimatorError::SeriesTooShort { len: lx, k });
    }
    Ok(lx)
}

fn bump(counts: &mut BTreeMap<Vec<u8>, u32>, key: &[u8]) {
    if let Some(c) = counts.get_mut(key) {
        *c += 1;
    } else {
        counts.insert(key.to_vec(), 1);
    }
}

/// Builds the contingency table over all window positions n in [k-1, L-2].
pub fn joint_counts(
    x: &SymbolSeries,
    y: &SymbolSeries,
    b: &SymbolSeries,
    cfg: &EstimatorConfig,
) -> Result<ContingencyTable, EstimatorError> {
    let k = cfg.history_k;
    let len = check_lengths(x, y, Some(b), k)?;
    let (xs, ys, bs) = (x.symbols(), y.symbols(), b.symbols());

    let mut counts = BTreeMap::new();
    let mut key = Vec::with_capacity(k + 3);
    for n in (k - 1)..(len - 1) {
        key.clear();
        key.push(xs[n + 1]);
        key.extend_from_slice(&xs[n + 1 - k..=n]);
        key.push(ys[n]);
        key.push(bs[n]);
        bump(&mut counts, &key);
    }
    Ok(ContingencyTable {
        counts,
        total: (len - k) as u32,
        history_k: k,
    })
}

/// Plug-in average conditional transfer entropy from y to x given b, in bits.
///
/// Exactly zero whenever the two plug-in conditionals coincide on every
/// observed tuple (for example when the source series is constant).
pub fn conditional_transfer_entropy(
    x: &SymbolSeries,
    y: &SymbolSeries,
    b: &SymbolSeries,
    cfg: &EstimatorConfig,
) -> Result<f64, EstimatorError> {
    let table = joint_counts(x, y, b, cfg)?;
    Ok(te_from_table(&table))
}

/// Evaluates the plug-in TE sum over an existing contingency table.
pub fn te_from_table(table: &ContingencyTable) -> f64 {
    let k = table.history_k;
    // Marginal counts derived from the joint table. Key layouts:
    //   past_source_cond: [past.., y, b]
    //   next_past_cond:   [x_next, past.., b]
    //   past_cond:        [past.., b]
    let mut past_source_cond: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut next_past_cond: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut past_cond: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut reduced = Vec::with_capacity(k + 2);
    for (key, &count) in &table.counts {
        *past_source_cond.entry(key[1..].to_vec()).or_insert(0) += count;

        reduced.clear();
        reduced.push(key[0]);
        reduced.extend_from_slice(&key[1..=k]);
        reduced.push(key[k + 2]);
        if let Some(c) = next_past_cond.get_mut(reduced.as_slice()) {
            *c += count;
        } else {
            next_past_cond.insert(reduced.clone(), count);
        }

        reduced.clear();
        reduced.extend_from_slice(&key[1..=k]);
        reduced.push(key[k + 2]);
        if let Some(c) = past_cond.get_mut(reduced.as_slice()) {
            *c += count;
        } else {
            past_cond.insert(reduced.clone(), count);
        }
    }

    let mut sum = KahanSum::new();
    let mut reduced = Vec::with_capacity(k + 2);
    for (key, &count) in &table.counts {
        let n_pyb = past_source_cond[&key[1..]];

        reduced.clear();
        reduced.push(key[0]);
        reduced.extend_from_slice(&key[1..=k]);
        reduced.push(key[k + 2]);
        let n_xpb = next_past_cond[reduced.as_slice()];

        reduced.clear();
        reduced.extend_from_slice(&key[1..=k]);
        reduced.push(key[k + 2]);
        let n_pb = past_cond[reduced.as_slice()];

        // log2 of p(x'|past,y,b) / p(x'|past,b) = (n_joint * n_pb) / (n_pyb * n_xpb).
        // The integer products are exact in f64 for any realistic series
        // length, so a ratio of equal conditionals is exactly 1.
        let num = count as f64 * n_pb as f64;
        let den = n_pyb as f64 * n_xpb as f64;
        sum.add(count as f64 * (math::log2(num) - math::log2(den)));
    }
    sum.value() / table.total as f64
}

/// Plug-in Shannon entropy, in bits, of a table of counts.
fn table_entropy(counts: &BTreeMap<Vec<u8>, u32>, total: u32) -> f64 {
    let total = total as f64;
    let mut sum = KahanSum::new();
    for &count in counts.values() {
        let p = count as f64 / total;
        sum.add(-p * math::log2(p));
    }
    sum.value()
}

/// Brute-force oracle for [`conditional_transfer_entropy`].
///
/// Builds the four marginal tables (joint, past+cond, past+source+cond,
/// next+past+cond) each in its own pass over the raw series, and combines
/// their plug-in entropies:
///
/// ```text
/// T = H(x_next, past, b) + H(past, y, b) - H(x_next, past, y, b) - H(past, b)
/// ```
///
/// Intended for cross-checking at moderate lengths (L up to ~1e5).
pub fn brute_force_te_oracle(
    x: &SymbolSeries,
    y: &SymbolSeries,
    b: &SymbolSeries,
    cfg: &EstimatorConfig,
) -> Result<f64, EstimatorError> {
    let k = cfg.history_k;
    let len = check_lengths(x, y, Some(b), k)?;
    let (xs, ys, bs) = (x.symbols(), y.symbols(), b.symbols());
    let total = (len - k) as u32;

    let mut joint: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    for n in (k - 1)..(len - 1) {
        let mut key = Vec::with_capacity(k + 3);
        key.push(xs[n + 1]);
        key.extend_from_slice(&xs[n + 1 - k..=n]);
        key.push(ys[n]);
        key.push(bs[n]);
        bump(&mut joint, &key);
    }

    let mut next_past_cond: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    for n in (k - 1)..(len - 1) {
        let mut key = Vec::with_capacity(k + 2);
        key.push(xs[n + 1]);
        key.extend_from_slice(&xs[n + 1 - k..=n]);
        key.push(bs[n]);
        bump(&mut next_past_cond, &key);
    }

    let mut past_source_cond: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    for n in (k - 1)..(len - 1) {
        let mut key = Vec::with_capacity(k + 2);
        key.extend_from_slice(&xs[n + 1 - k..=n]);
        key.push(ys[n]);
        key.push(bs[n]);
        bump(&mut past_source_cond, &key);
    }

    let mut past_cond: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    for n in (k - 1)..(len - 1) {
        let mut key = Vec::with_capacity(k + 1);
        key.extend_from_slice(&xs[n + 1 - k..=n]);
        key.push(bs[n]);
        bump(&mut past_cond, &key);
    }

    Ok(table_entropy(&next_past_cond, total) + table_entropy(&past_source_cond, total)
        - table_entropy(&joint, total)
        - table_entropy(&past_cond, total))
}

/// Brute-force plug-in transfer entropy from y to x *without* the
/// conditioning series, via the same 4-entropy route:
///
/// ```text
/// T = H(x_next, past) + H(past, y) - H(x_next, past, y) - H(past)
/// ```
///
/// Used to contrast conditioned against unconditioned estimates when a
/// common driver is present.
pub fn brute_force_te_unconditioned(
    x: &SymbolSeries,
    y: &SymbolSeries,
    cfg: &EstimatorConfig,
) -> Result<f64, EstimatorError> {
    let k = cfg.history_k;
    let len = check_lengths(x, y, None, k)?;
    let (xs, ys) = (x.symbols(), y.symbols());
    let total = (len - k) as u32;

    let mut joint: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut next_past: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut past_source: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    let mut past: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    for n in (k - 1)..(len - 1) {
        let hist = &xs[n + 1 - k..=n];

        let mut key = Vec::with_capacity(k + 2);
        key.push(xs[n + 1]);
        key.extend_from_slice(hist);
        key.push(ys[n]);
        bump(&mut joint, &key);

        let mut key = Vec::with_capacity(k + 1);
        key.push(xs[n + 1]);
        key.extend_from_slice(hist);
        bump(&mut next_past, &key);

        let mut key = Vec::with_capacity(k + 1);
        key.extend_from_slice(hist);
        key.push(ys[n]);
        bump(&mut past_source, &key);

        bump(&mut past, hist);
    }

    Ok(table_entropy(&next_past, total) + table_entropy(&past_source, total)
        - table_entropy(&joint, total)
        - table_entropy(&past, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::EntityId;
    use alloc::vec;
    use proptest::prelude::*;
    use rand_core::RngCore;

    fn series(symbols: Vec<u8>, alphabet: u8) -> SymbolSeries {
        SymbolSeries::new(EntityId::Ball, symbols, alphabet).unwrap()
    }

    fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        use rand_core::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_series(r: &mut impl RngCore, len: usize, alphabet: u8) -> SymbolSeries {
        let symbols = (0..len)
            .map(|_| (r.next_u64() % alphabet as u64) as u8)
            .collect();
        series(symbols, alphabet)
    }

    #[test]
    fn boundary_window_has_total_one() {
        let cfg = EstimatorConfig::new(2).unwrap();
        let x = series(vec![0, 1, 0], 2);
        let y = series(vec![1, 1, 1], 2);
        let b = series(vec![0, 0, 0], 2);
        let t = joint_counts(&x, &y, &b, &cfg).unwrap();
        assert_eq!(t.total(), 1);
        assert_eq!(t.distinct(), 1);
    }

    #[test]
    fn constant_series_collapse_to_single_key() {
        let cfg = EstimatorConfig::new(1).unwrap();
        let x = series(vec![0, 0, 0, 0], 2);
        let t = joint_counts(&x, &x, &x, &cfg).unwrap();
        assert_eq!(t.total(), 3);
        assert_eq!(t.distinct(), 1);
        let (obs, count) = t.iter().next().unwrap();
        assert_eq!(count, 3);
        assert_eq!(obs.x_next, 0);
        assert_eq!(obs.x_past, &[0]);
    }

    // Hand enumeration of x=[0,1,0,1], y=[1,0,1,0], b=0, k=1:
    //   n=0: (x1=1 | x0=0, y0=1, b=0)
    //   n=1: (x2=0 | x1=1, y1=0, b=0)
    //   n=2: (x3=1 | x2=0, y2=1, b=0)  -- same tuple as n=0
    // giving two distinct tuples with counts {2, 1}, total 3. Since y here
    // is a function of the current x, both conditionals coincide and the
    // transfer entropy is exactly zero.
    #[test]
    fn alternating_pair_enumeration_and_zero_te() {
        let cfg = EstimatorConfig::new(1).unwrap();
        let x = series(vec![0, 1, 0, 1], 2);
        let y = series(vec![1, 0, 1, 0], 2);
        let b = series(vec![0, 0, 0, 0], 2);
        let t = joint_counts(&x, &y, &b, &cfg).unwrap();
        assert_eq!(t.total(), 3);
        assert_eq!(t.distinct(), 2);
        let mut counts: Vec<u32> = t.iter().map(|(_, c)| c).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![1, 2]);

        let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
        assert_eq!(te, 0.0);
        let oracle = brute_force_te_oracle(&x, &y, &b, &cfg).unwrap();
        assert!((oracle - te).abs() <= 1e-12);
    }

    #[test]
    fn length_mismatch_and_too_short_are_rejected() {
        let cfg = EstimatorConfig::new(2).unwrap();
        let x = series(vec![0, 1, 0], 2);
        let y = series(vec![0, 1], 2);
        let b = series(vec![0, 0, 0], 2);
        assert!(matches!(
            joint_counts(&x, &y, &b, &cfg),
            Err(EstimatorError::LengthMismatch { .. })
        ));
        let short = series(vec![0, 1], 2);
        let t = joint_counts(&short, &short, &short, &cfg);
        assert_eq!(t.unwrap_err(), EstimatorError::SeriesTooShort { len: 2, k: 2 });
    }

    #[test]
    fn zero_history_is_rejected() {
        assert_eq!(
            EstimatorConfig::new(0).unwrap_err(),
            EstimatorError::InvalidHistory
        );
    }

    #[test]
    fn identical_constant_series_give_exact_zero() {
        for k in 1..=3 {
            let cfg = EstimatorConfig::new(k).unwrap();
            let x = series(vec![1; 50], 3);
            let b = series(vec![0; 50], 3);
            let te = conditional_transfer_entropy(&x, &x, &b, &cfg).unwrap();
            assert_eq!(te, 0.0);
        }
    }

    #[test]
    fn copy_coupling_approaches_one_bit() {
        // x_{n+1} = y_n with y i.i.d. uniform binary, b constant, k = 1.
        let mut r = rng(7);
        let len = 10_000;
        let y: Vec<u8> = (0..len).map(|_| (r.next_u64() & 1) as u8).collect();
        let mut x = vec![0u8; len];
        x[1..].copy_from_slice(&y[..len - 1]);
        let cfg = EstimatorConfig::new(1).unwrap();
        let x = series(x, 2);
        let y = series(y, 2);
        let b = series(vec![0; len], 2);
        let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
        assert!((0.95..=1.0).contains(&te), "te = {te}");
        let oracle = brute_force_te_oracle(&x, &y, &b, &cfg).unwrap();
        assert!((te - oracle).abs() <= 1e-12);
    }

    #[test]
    fn independent_series_stay_near_zero() {
        for seed in 0..20 {
            let mut r = rng(1000 + seed);
            let len = 10_000;
            let x = random_series(&mut r, len, 2);
            let y = random_series(&mut r, len, 2);
            let b = random_series(&mut r, len, 2);
            let cfg = EstimatorConfig::new(1).unwrap();
            let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
            assert!((0.0..=0.05).contains(&te), "seed {seed}: te = {te}");
        }
    }

    #[test]
    fn constant_source_gives_exact_zero() {
        let mut r = rng(42);
        for k in 1..=2 {
            let cfg = EstimatorConfig::new(k).unwrap();
            let x = random_series(&mut r, 500, 4);
            let b = random_series(&mut r, 500, 4);
            let y = series(vec![2; 500], 4);
            let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
            assert_eq!(te, 0.0, "k = {k}");
        }
    }

    fn relabel(s: &SymbolSeries, perm: &[u8]) -> SymbolSeries {
        let symbols = s.symbols().iter().map(|&v| perm[v as usize]).collect();
        series(symbols, s.alphabet_size())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn estimator_matches_oracle(
            seed in 0u64..10_000,
            len in 3usize..400,
            alphabet in 2u8..6,
            k in 1usize..3,
        ) {
            prop_assume!(len > k);
            let mut r = rng(seed);
            let x = random_series(&mut r, len, alphabet);
            let y = random_series(&mut r, len, alphabet);
            let b = random_series(&mut r, len, alphabet);
            let cfg = EstimatorConfig::new(k).unwrap();
            let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
            let oracle = brute_force_te_oracle(&x, &y, &b, &cfg).unwrap();
            prop_assert!((te - oracle).abs() <= 1e-12, "te={te} oracle={oracle}");
        }

        #[test]
        fn nonnegative_up_to_rounding(seed in 0u64..10_000, len in 3usize..300) {
            let mut r = rng(seed);
            let x = random_series(&mut r, len, 3);
            let y = random_series(&mut r, len, 3);
            let b = random_series(&mut r, len, 3);
            let cfg = EstimatorConfig::new(1).unwrap();
            let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
            prop_assert!(te >= -1e-12, "te = {te}");
        }

        #[test]
        fn invariant_under_alphabet_relabeling(seed in 0u64..10_000, len in 4usize..200) {
            let mut r = rng(seed);
            let x = random_series(&mut r, len, 4);
            let y = random_series(&mut r, len, 4);
            let b = random_series(&mut r, len, 4);
            let cfg = EstimatorConfig::new(1).unwrap();
            let perm = [2u8, 0, 3, 1];
            let te = conditional_transfer_entropy(&x, &y, &b, &cfg).unwrap();
            let te_relabeled = conditional_transfer_entropy(
                &relabel(&x, &perm),
                &relabel(&y, &perm),
                &relabel(&b, &perm),
                &cfg,
            )
            .unwrap();
            prop_assert!((te - te_relabeled).abs() <= 1e-12);
        }
    }
}
