//! Statistics over the `(G, H, I)` sub-triplets of 3D sequences:
//! 27-bin histograms, Shannon entropy, the class entropy ratio, angle
//! histograms and threshold sweeps.

mod report;
mod sweep;

pub use report::{
    write_angle_histogram_csv, write_reports_csv, write_sweep_csv, AnalysisReport,
};
pub use sweep::{
    classify, classify_entropy, entropy_at, entropy_reports, sweep, AnalysisOptions,
    Classification, ClassStats, LabeledPair, SweepResult, SweepRow,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QtcError, Result};
use crate::frenet::{FrameOptions, TransformMode};
use crate::geometry::TaitBryanAngles;
use crate::qtc::{quantize_angles, relative_angles, QtcSequence, QtcSymbol, QtcTuple, Variant};
use crate::trajectory::TrajectoryPair;

/// Number of `(G, H, I)` combinations.
pub const TRIPLET_BINS: usize = 27;

/// Bin of the all-zero triplet.
pub const ZERO_TRIPLET: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    LeaderFollower,
    LeaderNonfollower,
    Unlabeled,
}

impl PairClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PairClass::LeaderFollower => "leader-follower",
            PairClass::LeaderNonfollower => "leader-nonfollower",
            PairClass::Unlabeled => "unlabeled",
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairClass {
    type Err = QtcError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "leader-follower" | "lf" => Ok(PairClass::LeaderFollower),
            "leader-nonfollower" | "lnf" => Ok(PairClass::LeaderNonfollower),
            "unlabeled" | "" => Ok(PairClass::Unlabeled),
            _ => Err(QtcError::InvalidArgument(format!("unknown pair class '{s}'"))),
        }
    }
}

/// Occurrence counts of the 27 triplets in lexicographic `(-, 0, +)³` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolHistogram {
    pub counts: [u64; TRIPLET_BINS],
    pub total: u64,
}

impl Default for SymbolHistogram {
    fn default() -> Self {
        Self { counts: [0; TRIPLET_BINS], total: 0 }
    }
}

impl SymbolHistogram {
    pub fn bin(triplet: [QtcSymbol; 3]) -> usize {
        9 * triplet[0].ordinal() + 3 * triplet[1].ordinal() + triplet[2].ordinal()
    }

    pub fn triplet(bin: usize) -> [QtcSymbol; 3] {
        [QtcSymbol::ALL[bin / 9], QtcSymbol::ALL[bin / 3 % 3], QtcSymbol::ALL[bin % 3]]
    }

    pub fn add(&mut self, triplet: [QtcSymbol; 3]) {
        self.counts[Self::bin(triplet)] += 1;
        self.total += 1;
    }

    pub fn from_triplets(triplets: impl IntoIterator<Item = [QtcSymbol; 3]>) -> Self {
        let mut h = Self::default();
        triplets.into_iter().for_each(|t| h.add(t));
        h
    }

    /// Maximum-likelihood bin probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }

    pub fn zero_count(&self) -> u64 {
        self.counts[ZERO_TRIPLET]
    }
}

/// Histogram of 3D tuples; `include_warned = false` drops tuples carrying
/// any warning.
pub fn histogram_of_tuples<'a>(
    tuples: impl IntoIterator<Item = &'a QtcTuple>,
    include_warned: bool,
) -> Result<SymbolHistogram> {
    let mut h = SymbolHistogram::default();
    for t in tuples {
        if !include_warned && !t.warnings.is_empty() {
            continue;
        }
        let ghi = t.ghi().ok_or_else(|| {
            QtcError::InvalidArgument(format!("variant {} has no G, H, I symbols", t.variant))
        })?;
        h.add(ghi);
    }
    if h.total == 0 {
        return Err(QtcError::EmptySequence);
    }
    Ok(h)
}

/// `(G, H, I)` histogram of a 3D sequence, warned tuples included.
pub fn triplet_histogram(seq: &QtcSequence) -> Result<SymbolHistogram> {
    if seq.variant != Variant::ThreeD {
        return Err(QtcError::InvalidArgument(format!("expected a 3D sequence, got {}", seq.variant)));
    }
    histogram_of_tuples(&seq.tuples, true)
}

/// Quantizes relative angles at `th` straight into a histogram. Undefined
/// frames count as `(0, 0, 0)` unless `include_undefined` is false.
pub fn histogram_of_angles(
    angles: &[Option<TaitBryanAngles>],
    th: f64,
    include_undefined: bool,
) -> Result<SymbolHistogram> {
    let h = SymbolHistogram::from_triplets(angles.iter().filter_map(|a| match a {
        Some(a) => Some(quantize_angles(*a, th)),
        None if include_undefined => Some([QtcSymbol::Zero; 3]),
        None => None,
    }));
    if h.total == 0 {
        return Err(QtcError::EmptySequence);
    }
    Ok(h)
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn entropy(h: &SymbolHistogram) -> Result<f64> {
    if h.total == 0 {
        return Err(QtcError::EmptySequence);
    }
    let total = h.total as f64;
    let bits: f64 = h
        .counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    Ok(bits.max(0.0))
}

/// `(Σ lf / Σ lnf) * (M / N)` with `N = |lf|`, `M = |lnf|`: the ratio of
/// the class mean entropies.
pub fn entropy_ratio(lf: &[f64], lnf: &[f64]) -> Result<f64> {
    if lf.is_empty() {
        return Err(QtcError::EmptyClass(PairClass::LeaderFollower));
    }
    if lnf.is_empty() {
        return Err(QtcError::EmptyClass(PairClass::LeaderNonfollower));
    }
    let lnf_sum: f64 = lnf.iter().sum();
    if lnf_sum == 0.0 {
        return Err(QtcError::DivisionByZero);
    }
    let lf_sum: f64 = lf.iter().sum();
    Ok(lf_sum / lnf_sum * (lnf.len() as f64 / lf.len() as f64))
}

/// One entropy value for a labeled pair at one threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub pair_label: String,
    pub class: PairClass,
    /// Tait-Bryan threshold, radians.
    pub th: f64,
    /// Bits, within `[0, log2 27]`.
    pub entropy: f64,
}

/// Per-angle counts over `[-180°, 180°]`. The bin count is odd so one bin
/// is centered on zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleHistogram {
    /// Actual bin width, degrees.
    pub bin_width: f64,
    pub psi: Vec<u64>,
    pub theta: Vec<u64>,
    pub phi: Vec<u64>,
}

impl AngleHistogram {
    /// Uses `round(360 / w)` bins, bumped to the next odd count, so the
    /// realized width is close to the requested `w`.
    pub fn new(requested_width_deg: f64) -> Result<Self> {
        if !(requested_width_deg > 0.0 && requested_width_deg <= 360.0) {
            return Err(QtcError::InvalidArgument(format!("bin width {requested_width_deg} out of (0, 360]")));
        }
        let mut bins = (360.0 / requested_width_deg).round().max(1.0) as usize;
        if bins % 2 == 0 {
            bins += 1;
        }
        Ok(Self {
            bin_width: 360.0 / bins as f64,
            psi: vec![0; bins],
            theta: vec![0; bins],
            phi: vec![0; bins],
        })
    }

    pub fn bins(&self) -> usize {
        self.psi.len()
    }

    pub fn center_bin(&self) -> usize {
        self.bins() / 2
    }

    /// Bin holding `deg`; the top edge `180` falls in the last bin.
    pub fn bin_of(&self, deg: f64) -> usize {
        (((deg + 180.0) / self.bin_width).floor().max(0.0) as usize).min(self.bins() - 1)
    }

    /// Lower edge of each bin, degrees.
    pub fn lower_edges(&self) -> Vec<f64> {
        (0..self.bins()).map(|i| -180.0 + i as f64 * self.bin_width).collect()
    }

    pub fn add(&mut self, a: TaitBryanAngles) {
        let (i, j, k) = (self.bin_of(a.psi.to_degrees()), self.bin_of(a.theta.to_degrees()), self.bin_of(a.phi.to_degrees()));
        self.psi[i] += 1;
        self.theta[j] += 1;
        self.phi[k] += 1;
    }
}

/// Histograms of the relative yaw, pitch and roll of a pair. Undefined
/// frames are skipped.
pub fn angle_histograms(
    pair: &TrajectoryPair,
    mode: TransformMode,
    frames: &FrameOptions,
    bin_width_deg: f64,
) -> Result<AngleHistogram> {
    let mut h = AngleHistogram::new(bin_width_deg)?;
    relative_angles(pair, mode, frames)?.into_iter().flatten().for_each(|a| h.add(a));
    Ok(h)
}

/// `sqrt(-2 ln R)` where `R` is the mean resultant length, radians.
pub fn circular_std_dev(angles: &[f64]) -> f64 {
    if angles.is_empty() {
        return 0.0;
    }
    let n = angles.len() as f64;
    let (s, c) = angles.iter().fold((0.0, 0.0), |(s, c), a| (s + a.sin(), c + a.cos()));
    let r = ((s / n).powi(2) + (c / n).powi(2)).sqrt().min(1.0);
    (-2.0 * r.ln()).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use QtcSymbol::*;

    #[test]
    fn bin_layout_is_lexicographic() {
        assert_eq!(SymbolHistogram::bin([Minus, Minus, Minus]), 0);
        assert_eq!(SymbolHistogram::bin([Zero, Zero, Zero]), ZERO_TRIPLET);
        assert_eq!(SymbolHistogram::bin([Plus, Plus, Plus]), 26);
        assert_eq!(SymbolHistogram::bin([Minus, Zero, Plus]), 5);
        for b in 0..TRIPLET_BINS {
            assert_eq!(SymbolHistogram::bin(SymbolHistogram::triplet(b)), b);
        }
    }

    #[test]
    fn entropy_examples() {
        let h = SymbolHistogram::from_triplets(vec![[Zero; 3]; 10]);
        assert_eq!(h.zero_count(), 10);
        assert_eq!(h.total, 10);
        assert_eq!(entropy(&h).unwrap(), 0.0);

        let uniform = SymbolHistogram::from_triplets((0..27).map(SymbolHistogram::triplet));
        assert!(uniform.counts.iter().all(|&c| c == 1));
        assert!((entropy(&uniform).unwrap() - 27f64.log2()).abs() < 1e-12);
        assert!((27f64.log2() - 4.754887502163468).abs() < 1e-15);

        let two = SymbolHistogram::from_triplets([[Plus, Zero, Zero], [Minus, Zero, Zero]]);
        assert!((entropy(&two).unwrap() - 1.0).abs() < 1e-15);

        assert!(matches!(entropy(&SymbolHistogram::default()), Err(QtcError::EmptySequence)));
    }

    #[test]
    fn ratio_examples() {
        assert!((entropy_ratio(&[3.26], &[4.01]).unwrap() - 0.8130).abs() < 0.0005);
        assert_eq!(entropy_ratio(&[2.0, 3.0], &[2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(entropy_ratio(&[1.0, 1.0], &[2.0]).unwrap(), 0.5);
        assert!(matches!(entropy_ratio(&[1.0], &[0.0]), Err(QtcError::DivisionByZero)));
        assert!(matches!(entropy_ratio(&[], &[1.0]), Err(QtcError::EmptyClass(_))));
    }

    #[test]
    fn angle_bins() {
        let mut h = AngleHistogram::new(8.0).unwrap();
        assert_eq!(h.bins(), 45);
        assert_eq!(h.bin_width, 8.0);
        assert_eq!(h.center_bin(), 22);
        assert_eq!(h.bin_of(0.0), 22);
        assert_eq!(h.bin_of(-3.99), 22);
        assert_eq!(h.bin_of(4.0), 23);
        assert_eq!(h.bin_of(-180.0), 0);
        assert_eq!(h.bin_of(180.0), 44);
        h.add(TaitBryanAngles::default());
        assert_eq!(h.psi[22] + h.theta[22] + h.phi[22], 3);
        assert_eq!(AngleHistogram::new(10.0).unwrap().bins(), 37);
    }

    #[test]
    fn circular_spread() {
        assert!(circular_std_dev(&[0.3; 10]) < 1e-6);
        let wide: Vec<f64> = (0..100).map(|i| (i as f64 / 100.0 - 0.5) * 6.0).collect();
        assert!(circular_std_dev(&wide) > 1.0);
    }

    fn histogram() -> impl Strategy<Value = SymbolHistogram> {
        proptest::collection::vec(0u64..50, TRIPLET_BINS)
            .prop_filter("non-empty", |c| c.iter().sum::<u64>() > 0)
            .prop_map(|c| {
                let mut counts = [0; TRIPLET_BINS];
                counts.copy_from_slice(&c);
                SymbolHistogram { counts, total: c.iter().sum() }
            })
    }

    proptest! {
        #[test]
        fn entropy_is_bounded_and_permutation_invariant(h in histogram(), shift in 0usize..27) {
            let e = entropy(&h).unwrap();
            prop_assert!((0.0..=27f64.log2() + 1e-12).contains(&e));
            let mut rotated = h.clone();
            rotated.counts.rotate_left(shift);
            prop_assert!((entropy(&rotated).unwrap() - e).abs() < 1e-12);
            let uniform = h.counts.iter().all(|&c| c == h.counts[0]);
            prop_assert_eq!(uniform, (e - 27f64.log2()).abs() < 1e-12);
        }

        #[test]
        fn ratio_reciprocity(a in proptest::collection::vec(0.1..5.0f64, 1..10),
                             b in proptest::collection::vec(0.1..5.0f64, 1..10)) {
            let r = entropy_ratio(&a, &b).unwrap() * entropy_ratio(&b, &a).unwrap();
            prop_assert!((r - 1.0).abs() < 1e-12);
        }
    }
}
