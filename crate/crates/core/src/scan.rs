//! Deterministic scans over the Littlewood families with zero-count
//! aggregation, plus the table experiments built on the same counters.
//!
//! Determinism contract: for fixed (family, degree, mode) the resulting
//! record is byte-identical regardless of worker count. The position space
//! is cut into fixed blocks of [`SCAN_BLOCK`] members; a batch of
//! workers-many blocks runs in parallel and its partial summaries are
//! merged strictly in position order, so thread scheduling never reaches
//! the output. Checkpoints are only taken at batch boundaries, which keeps
//! the processed range contiguous.
//!
//! Sampling is counter-based so that reruns and other implementations can
//! reproduce draws exactly: word k of the stream with seed s is
//! mix(s + (k+1) * 0x9E3779B97F4A7C15), where mix is the splitmix64
//! finalizer (xor-shift 30, multiply 0xBF58476D1CE4E5B9, xor-shift 27,
//! multiply 0x94D049BB133111EB, xor-shift 31). Draw i for a family of
//! population N combines words 2i and 2i+1 into a 128-bit value reduced
//! mod N.

use std::collections::BTreeMap;
use std::thread;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{fekete, LittlewoodFamily};
use crate::poly::{CosinePoly, Poly};
use crate::zeros::{count_period_zeros_exact, nz_unit_circle, nz_unit_circle_float};

/// Exhaustive mode refuses families larger than this.
pub const EXHAUSTIVE_CAP: u128 = 1 << 26;

/// Fixed partition width of the position space; the unit of parallel work.
pub const SCAN_BLOCK: u64 = 64;

/// Largest degree sent down the exact zero-count path; beyond it scans
/// fall back to the floating grid counter.
pub const EXACT_DEGREE_CAP: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    SelfReciprocalLittlewood,
    SkewReciprocalLittlewood,
    Fekete,
    PeriodicTail,
    CustomAlphabet,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::SelfReciprocalLittlewood => "self-reciprocal-littlewood",
            FamilyTag::SkewReciprocalLittlewood => "skew-reciprocal-littlewood",
            FamilyTag::Fekete => "fekete",
            FamilyTag::PeriodicTail => "periodic-tail",
            FamilyTag::CustomAlphabet => "custom-alphabet",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyTag> {
        match s {
            "self-reciprocal-littlewood" => Ok(FamilyTag::SelfReciprocalLittlewood),
            "skew-reciprocal-littlewood" => Ok(FamilyTag::SkewReciprocalLittlewood),
            "fekete" => Ok(FamilyTag::Fekete),
            "periodic-tail" => Ok(FamilyTag::PeriodicTail),
            "custom-alphabet" => Ok(FamilyTag::CustomAlphabet),
            _ => Err(Error::Format(format!("unknown family tag '{s}'"))),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// What a progress driver tells the engine after each merged batch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanProgress {
    Continue,
    Stop,
}

#[derive(Debug)]
pub enum ScanOutcome {
    Done(ScanRecord),
    Stopped(Checkpoint),
}

/// Resume token. The processed range is always 0..next_index; argmin_index
/// is the enumeration position (not the member index) of the current
/// minimizer, and is absent only when nothing has been processed yet.
/// Sample scans carry their seed and target count; exhaustive scans leave
/// both null.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checkpoint {
    pub family: String,
    pub n: usize,
    pub next_index: u64,
    pub argmin_index: Option<u64>,
    pub partial_histogram: BTreeMap<usize, u64>,
    pub seed: Option<u64>,
    pub sample_count: Option<u64>,
}

/// Aggregated outcome of one scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub family: FamilyTag,
    pub degree: usize,
    /// Members scanned: the full population in exhaustive mode, the draw
    /// count in sample mode.
    pub population: u64,
    pub min_nz: usize,
    /// Minimizing member; ties break to the smallest enumeration position,
    /// which for the Littlewood families is the lexicographically first
    /// free-coefficient vector with +1 ordered before -1.
    pub argmin: Poly,
    /// Exact mean of NZ over the scanned members.
    pub mean_nz: BigRational,
    pub histogram: BTreeMap<usize, u64>,
    pub exhaustive: bool,
    /// Completed resume token; resuming from it returns this record again.
    pub checkpoint: String,
}

impl Serialize for ScanRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ScanRecord", 9)?;
        st.serialize_field("family", self.family.as_str())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("population", &self.population)?;
        st.serialize_field("min_nz", &self.min_nz)?;
        let argmin: Vec<String> = self.argmin.coeffs().iter().map(|c| c.to_string()).collect();
        st.serialize_field("argmin", &argmin)?;
        st.serialize_field("mean_nz", &self.mean_nz.to_string())?;
        st.serialize_field("histogram", &self.histogram)?;
        st.serialize_field("exhaustive", &self.exhaustive)?;
        st.serialize_field("checkpoint", &self.checkpoint)?;
        st.end()
    }
}

/// Splitmix64 finalizer.
pub fn mix64(state: u64) -> u64 {
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Word k of the counter-based stream for `seed`.
pub fn stream_word(seed: u64, k: u64) -> u64 {
    mix64(seed.wrapping_add((k.wrapping_add(1)).wrapping_mul(0x9E3779B97F4A7C15)))
}

/// Member index for draw i: two stream words reduced mod the population.
pub fn sample_index(seed: u64, i: u64, population: u128) -> u128 {
    let hi = stream_word(seed, 2 * i) as u128;
    let lo = stream_word(seed, 2 * i + 1) as u128;
    ((hi << 64) | lo) % population
}

struct BlockSummary {
    histogram: BTreeMap<usize, u64>,
    // (nz, position) of the first block-local minimizer
    min: Option<(usize, u64)>,
}

struct Aggregate {
    histogram: BTreeMap<usize, u64>,
    min_nz: Option<usize>,
    argmin_pos: Option<u64>,
}

impl Aggregate {
    fn merge(&mut self, block: BlockSummary) {
        for (k, v) in block.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        if let Some((nz, pos)) = block.min {
            // blocks arrive in position order, so on a tie the incumbent
            // already has the smaller position
            if self.min_nz.is_none_or(|cur| nz < cur) {
                self.min_nz = Some(nz);
                self.argmin_pos = Some(pos);
            }
        }
    }
}

fn scan_block<F>(eval: &F, start: u64, end: u64) -> Result<BlockSummary>
where
    F: Fn(u64) -> Result<usize> + Sync,
{
    let mut histogram = BTreeMap::new();
    let mut min: Option<(usize, u64)> = None;
    for pos in start..end {
        let nz = eval(pos)?;
        *histogram.entry(nz).or_insert(0) += 1;
        if min.is_none_or(|(cur, _)| nz < cur) {
            min = Some((nz, pos));
        }
    }
    Ok(BlockSummary { histogram, min })
}

/// Core loop: processes positions start..total in contiguous batches of
/// workers * SCAN_BLOCK, merging block summaries in position order and
/// consulting the driver between batches.
fn scan_positions<F>(
    eval: &F,
    start: u64,
    total: u64,
    workers: usize,
    agg: &mut Aggregate,
    mut checkpoint_at: impl FnMut(u64, &Aggregate) -> Checkpoint,
    driver: &mut dyn FnMut(&Checkpoint) -> ScanProgress,
) -> Result<Option<Checkpoint>>
where
    F: Fn(u64) -> Result<usize> + Sync,
{
    let mut pos = start;
    while pos < total {
        let batch_end = total.min(pos + workers as u64 * SCAN_BLOCK);
        let mut summaries: Vec<Result<BlockSummary>> = Vec::new();
        thread::scope(|s| {
            let mut handles = Vec::new();
            let mut lo = pos;
            while lo < batch_end {
                let hi = batch_end.min(lo + SCAN_BLOCK);
                handles.push(s.spawn(move || scan_block(eval, lo, hi)));
                lo = hi;
            }
            summaries = handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect();
        });
        for summary in summaries {
            agg.merge(summary?);
        }
        pos = batch_end;
        if pos < total {
            let cp = checkpoint_at(pos, agg);
            if driver(&cp) == ScanProgress::Stop {
                return Ok(Some(cp));
            }
        }
    }
    Ok(None)
}

fn build_family(tag: FamilyTag, n: usize) -> Result<LittlewoodFamily> {
    match tag {
        FamilyTag::SelfReciprocalLittlewood => LittlewoodFamily::self_reciprocal(n),
        FamilyTag::SkewReciprocalLittlewood => LittlewoodFamily::skew_reciprocal(n),
        other => Err(Error::Domain(format!(
            "scan_family enumerates the Littlewood families; '{}' has its own operation",
            other.as_str()
        ))),
    }
}

fn member_nz(p: &Poly) -> Result<usize> {
    let report = if p.degree() <= EXACT_DEGREE_CAP {
        nz_unit_circle(p)?
    } else {
        nz_unit_circle_float(p, 32 * p.degree().max(1), 1e-9)?
    };
    Ok(report.total_with_multiplicity)
}

fn run_scan(
    tag: FamilyTag,
    n: usize,
    mode: ScanMode,
    workers: usize,
    resume_from: Option<&Checkpoint>,
    driver: &mut dyn FnMut(&Checkpoint) -> ScanProgress,
) -> Result<ScanOutcome> {
    if workers < 1 {
        return Err(Error::Range("worker count must be at least 1".into()));
    }
    let fam = build_family(tag, n)?;
    if fam.population() == 0 {
        return Err(Error::DegenerateInput(format!(
            "the {} family is empty at degree {n}",
            tag.as_str()
        )));
    }
    let (total, seed) = match mode {
        ScanMode::Exhaustive => {
            if fam.population() > EXHAUSTIVE_CAP {
                return Err(Error::Capacity(format!(
                    "population {} exceeds the exhaustive cap {EXHAUSTIVE_CAP}; use sample mode",
                    fam.population()
                )));
            }
            (fam.population() as u64, None)
        }
        ScanMode::Sample { count, seed } => {
            if count < 1 {
                return Err(Error::Range("sample count must be at least 1".into()));
            }
            (count, Some(seed))
        }
    };

    let member_index = |pos: u64| -> u128 {
        match mode {
            ScanMode::Exhaustive => pos as u128,
            ScanMode::Sample { seed, .. } => sample_index(seed, pos, fam.population()),
        }
    };
    let eval = |pos: u64| -> Result<usize> {
        let p = fam.at(member_index(pos))?;
        member_nz(&p)
    };

    let mut agg = Aggregate {
        histogram: BTreeMap::new(),
        min_nz: None,
        argmin_pos: None,
    };
    let mut start = 0u64;
    if let Some(cp) = resume_from {
        agg.histogram = cp.partial_histogram.clone();
        agg.min_nz = agg.histogram.keys().next().copied();
        agg.argmin_pos = cp.argmin_index;
        start = cp.next_index;
    }

    let sample_count = match mode {
        ScanMode::Exhaustive => None,
        ScanMode::Sample { count, .. } => Some(count),
    };
    let checkpoint_at = |next: u64, a: &Aggregate| Checkpoint {
        family: tag.as_str().to_string(),
        n,
        next_index: next,
        argmin_index: a.argmin_pos,
        partial_histogram: a.histogram.clone(),
        seed,
        sample_count,
    };

    if let Some(cp) = scan_positions(&eval, start, total, workers, &mut agg, checkpoint_at, driver)?
    {
        return Ok(ScanOutcome::Stopped(cp));
    }

    let min_nz = agg.min_nz.expect("nonempty scan");
    let argmin_pos = agg.argmin_pos.expect("nonempty scan");
    let argmin = fam.at(member_index(argmin_pos))?;
    let weighted: BigInt = agg
        .histogram
        .iter()
        .map(|(&k, &cnt)| BigInt::from(k) * BigInt::from(cnt))
        .sum();
    let mean_nz = BigRational::new(weighted, BigInt::from(total));
    let final_cp = Checkpoint {
        family: tag.as_str().to_string(),
        n,
        next_index: total,
        argmin_index: Some(argmin_pos),
        partial_histogram: agg.histogram.clone(),
        seed,
        sample_count,
    };
    let checkpoint =
        serde_json::to_string(&final_cp).map_err(|e| Error::Format(e.to_string()))?;
    Ok(ScanOutcome::Done(ScanRecord {
        family: tag,
        degree: n,
        population: total,
        min_nz,
        argmin,
        mean_nz,
        histogram: agg.histogram,
        exhaustive: matches!(mode, ScanMode::Exhaustive),
        checkpoint,
    }))
}

/// Scans a Littlewood family to completion.
pub fn scan_family(tag: FamilyTag, n: usize, mode: ScanMode, workers: usize) -> Result<ScanRecord> {
    match scan_family_driven(tag, n, mode, workers, &mut |_| ScanProgress::Continue)? {
        ScanOutcome::Done(record) => Ok(record),
        ScanOutcome::Stopped(_) => unreachable!("driver never stops"),
    }
}

/// Like [`scan_family`] but consults `driver` with a checkpoint after each
/// merged batch; returning [`ScanProgress::Stop`] hands that checkpoint
/// back instead of the final record.
pub fn scan_family_driven(
    tag: FamilyTag,
    n: usize,
    mode: ScanMode,
    workers: usize,
    driver: &mut dyn FnMut(&Checkpoint) -> ScanProgress,
) -> Result<ScanOutcome> {
    run_scan(tag, n, mode, workers, None, driver)
}

/// Parses a checkpoint, reporting the JSON position on failure.
pub fn parse_checkpoint(json: &str) -> Result<Checkpoint> {
    serde_json::from_str(json).map_err(|e| Error::Format(format!("bad checkpoint: {e}")))
}

fn validate_checkpoint(cp: &Checkpoint) -> Result<(FamilyTag, ScanMode, u64)> {
    let tag = FamilyTag::parse(&cp.family)?;
    let fam = build_family(tag, cp.n)
        .map_err(|e| Error::Format(format!("checkpoint family is not scannable: {e}")))?;
    let (mode, total) = match (cp.seed, cp.sample_count) {
        (None, None) => {
            if fam.population() > EXHAUSTIVE_CAP {
                return Err(Error::Format(format!(
                    "checkpoint population {} exceeds the exhaustive cap",
                    fam.population()
                )));
            }
            (ScanMode::Exhaustive, fam.population() as u64)
        }
        (Some(seed), Some(count)) => (ScanMode::Sample { count, seed }, count),
        _ => {
            return Err(Error::Format(
                "checkpoint must carry both seed and sample_count or neither".into(),
            ))
        }
    };
    if cp.next_index > total {
        return Err(Error::Format(format!(
            "checkpoint next_index {} exceeds the scan size {total}",
            cp.next_index
        )));
    }
    let processed: u64 = cp.partial_histogram.values().sum();
    if processed != cp.next_index {
        return Err(Error::Format(format!(
            "checkpoint histogram covers {processed} members but next_index is {}",
            cp.next_index
        )));
    }
    match cp.argmin_index {
        Some(pos) if pos >= cp.next_index.max(1) => {
            return Err(Error::Format(format!(
                "checkpoint argmin_index {pos} lies outside the processed range"
            )));
        }
        None if cp.next_index > 0 => {
            return Err(Error::Format(
                "checkpoint has processed members but no argmin_index".into(),
            ));
        }
        _ => {}
    }
    if let (Some(pos), Some(&min_key)) = (cp.argmin_index, cp.partial_histogram.keys().next()) {
        // cheap integrity check: the recorded minimizer must actually
        // attain the histogram minimum
        let member = match mode {
            ScanMode::Exhaustive => pos as u128,
            ScanMode::Sample { seed, .. } => sample_index(seed, pos, fam.population()),
        };
        let nz = member_nz(&fam.at(member)?)?;
        if nz != min_key {
            return Err(Error::Format(format!(
                "checkpoint argmin has NZ {nz} but the histogram minimum is {min_key}"
            )));
        }
    }
    Ok((tag, mode, total))
}

/// Continues a scan from a checkpoint; the final record is identical to an
/// uninterrupted run. A completed checkpoint returns immediately.
pub fn resume(cp: &Checkpoint, workers: usize) -> Result<ScanRecord> {
    match resume_driven(cp, workers, &mut |_| ScanProgress::Continue)? {
        ScanOutcome::Done(record) => Ok(record),
        ScanOutcome::Stopped(_) => unreachable!("driver never stops"),
    }
}

pub fn resume_driven(
    cp: &Checkpoint,
    workers: usize,
    driver: &mut dyn FnMut(&Checkpoint) -> ScanProgress,
) -> Result<ScanOutcome> {
    let (tag, mode, _) = validate_checkpoint(cp)?;
    run_scan(tag, cp.n, mode, workers, Some(cp), driver)
}

/// One row of the mean-versus-n/4 table.
#[derive(Clone, Debug, PartialEq)]
pub struct AvgRow {
    pub n: usize,
    pub mean_nz: BigRational,
    pub quarter: BigRational,
    pub pass: bool,
}

impl Serialize for AvgRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AvgRow", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("mean_nz", &self.mean_nz.to_string())?;
        st.serialize_field("quarter", &self.quarter.to_string())?;
        st.serialize_field("pass", &self.pass)?;
        st.end()
    }
}

/// Exhaustive mean NZ for each degree, compared against n/4 exactly.
pub fn average_vs_quarter_n(ns: &[usize], workers: usize) -> Result<Vec<AvgRow>> {
    ns.iter()
        .map(|&n| {
            let record = scan_family(
                FamilyTag::SelfReciprocalLittlewood,
                n,
                ScanMode::Exhaustive,
                workers,
            )?;
            let quarter = BigRational::new(BigInt::from(n), BigInt::from(4));
            let pass = record.mean_nz >= quarter;
            Ok(AvgRow {
                n,
                mean_nz: record.mean_nz,
                quarter,
                pass,
            })
        })
        .collect()
}

/// One row of the window-count versus zero-count table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NckRow {
    pub index: u64,
    /// NC_1 .. NC_k_max.
    pub nc: Vec<usize>,
    pub nz: usize,
}

/// Joint table of NC_k and NZ over an exhaustive even-degree scan. Emits
/// data only; the growth picture it feeds is asymptotic and not asserted.
pub fn nck_vs_nz(tag: FamilyTag, n: usize, k_max: usize) -> Result<Vec<NckRow>> {
    if tag != FamilyTag::SelfReciprocalLittlewood {
        return Err(Error::Domain(
            "the joint table needs self-reciprocal members".into(),
        ));
    }
    if n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "the joint table needs an even degree, got {n}"
        )));
    }
    if k_max < 1 {
        return Err(Error::Range("k_max must be at least 1".into()));
    }
    let fam = LittlewoodFamily::self_reciprocal(n)?;
    if fam.population() > EXHAUSTIVE_CAP {
        return Err(Error::Capacity(format!(
            "population {} exceeds the exhaustive cap {EXHAUSTIVE_CAP}",
            fam.population()
        )));
    }
    let mut rows = Vec::with_capacity(fam.population() as usize);
    for index in 0..fam.population() {
        let p = fam.at(index)?;
        let nc = (1..=k_max).map(|k| p.nc_k(k)).collect::<Result<_>>()?;
        let nz = member_nz(&p)?;
        rows.push(NckRow {
            index: index as u64,
            nc,
            nz,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicTailRow {
    pub n: usize,
    /// Zeros in the full period, with multiplicity.
    pub nz: usize,
    /// Half the full count. Cosine sums are even in t, so zeros either pair
    /// up across 0 or sit at 0 or -pi with even multiplicity; halving quotients
    /// out the mirror symmetry and is what the linear fit runs on.
    pub nz_reduced: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicTailReport {
    pub rows: Vec<PeriodicTailRow>,
    /// Least-squares slope of nz_reduced against n.
    pub alpha: f64,
    pub beta: f64,
    /// max(n) / min(n) over the requested degrees.
    pub span_factor: f64,
}

/// Builds coefficient sequences with an eventually periodic tail: a_j
/// follows `prefix` for j < prefix.len(), then cycles through `block`.
/// For each n the cosine sum with those coefficients is counted exactly
/// over the period and a line NZ_reduced = alpha n + beta is fitted.
pub fn periodic_tail_experiment(
    prefix: &[BigRational],
    block: &[BigRational],
    ns: &[usize],
) -> Result<PeriodicTailReport> {
    if block.is_empty() {
        return Err(Error::Precondition("the block must be nonempty".into()));
    }
    if let Some(j) = block.iter().position(|b| b.is_zero()) {
        return Err(Error::Precondition(format!(
            "block entry {j} is zero; every block entry must be nonzero"
        )));
    }
    if prefix.len() % block.len() != 0 {
        return Err(Error::Precondition(format!(
            "prefix length {} is not a multiple of the block length {}",
            prefix.len(),
            block.len()
        )));
    }
    if ns.len() < 2 {
        return Err(Error::Precondition(
            "need at least two degrees to fit a slope".into(),
        ));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < prefix.len() {
            return Err(Error::Precondition(format!(
                "degree {n} does not reach past the prefix of length {}",
                prefix.len()
            )));
        }
        let coeffs: Vec<BigRational> = (0..=n)
            .map(|j| {
                if j < prefix.len() {
                    prefix[j].clone()
                } else {
                    block[(j - prefix.len()) % block.len()].clone()
                }
            })
            .collect();
        let c = CosinePoly::new(coeffs)?;
        let nz = count_period_zeros_exact(&c)?.total_with_multiplicity;
        debug_assert!(nz % 2 == 0, "even cosine sums have evenly paired zeros");
        rows.push(PeriodicTailRow {
            n,
            nz,
            nz_reduced: nz / 2,
        });
    }

    let len = rows.len() as f64;
    let mean_n = rows.iter().map(|r| r.n as f64).sum::<f64>() / len;
    let mean_y = rows.iter().map(|r| r.nz_reduced as f64).sum::<f64>() / len;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for r in &rows {
        let dx = r.n as f64 - mean_n;
        sxx += dx * dx;
        sxy += dx * (r.nz_reduced as f64 - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::Precondition(
            "need at least two distinct degrees to fit a slope".into(),
        ));
    }
    let alpha = sxy / sxx;
    let beta = mean_y - alpha * mean_n;
    let max_n = ns.iter().copied().max().expect("nonempty") as f64;
    let min_n = ns.iter().copied().min().expect("nonempty") as f64;
    Ok(PeriodicTailReport {
        rows,
        alpha,
        beta,
        span_factor: max_n / min_n,
    })
}

pub const FEKETE_BAND_LO: f64 = 0.45;
pub const FEKETE_BAND_HI: f64 = 0.56;

/// Smallest prime at which the density band is checked; ratios below it
/// are reported but exempt.
pub const FEKETE_BAND_MIN_P: u64 = 101;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeketeRow {
    pub p: u64,
    pub nz: usize,
    pub ratio: f64,
    /// The band is an engineering tolerance around the asymptotic density,
    /// not a sharp claim; it is echoed into every row so output files are
    /// self-describing.
    pub band_lo: f64,
    pub band_hi: f64,
    pub band_checked: bool,
    pub pass: bool,
}

/// Unimodular zero counts of the Legendre-symbol polynomials and their
/// density ratios NZ/p, with the band check applied from p = 101 up.
pub fn fekete_density(ps: &[u64]) -> Result<Vec<FeketeRow>> {
    ps.iter()
        .map(|&p| {
            if p > 5000 {
                return Err(Error::Range(format!(
                    "p = {p} exceeds the density scan cap 5000"
                )));
            }
            let f = fekete(p)?;
            let nz = member_nz(&f)?;
            let ratio = nz as f64 / p as f64;
            let band_checked = p >= FEKETE_BAND_MIN_P;
            let pass = !band_checked || (FEKETE_BAND_LO..=FEKETE_BAND_HI).contains(&ratio);
            Ok(FeketeRow {
                p,
                nz,
                ratio,
                band_lo: FEKETE_BAND_LO,
                band_hi: FEKETE_BAND_HI,
                band_checked,
                pass,
            })
        })
        .collect()
}
