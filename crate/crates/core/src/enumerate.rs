//! Exhaustive generation of conforming instances and oracle-vs-closed-form
//! verification.
//!
//! An instance with half size `m` has vertices `S, v1..v2m` (ids `0..=2m`),
//! the even edge `{v1..v2m}`, and one 3-edge `{S, vi, vj}` per pair in a
//! nonempty set of distinct pairs in which every index occurs at most twice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{iso_canonical_key, DEFAULT_ISO_BOUND};
use crate::classify::{check_lemmas, classify, Group, Lemma};
use crate::closed_form::{predict, ClosedFormError, Prediction, PredictionSource};
use crate::grundy::{grundy_value, SearchConfig, SearchError, TranspositionTable};
use crate::position::{Hyperedge, Instance, Labels, Position, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_half_size: usize,
    /// Keep one representative per isomorphism class.
    pub iso_dedup: bool,
}

impl EnumerationBounds {
    pub fn labeled(max_half_size: usize) -> Self {
        EnumerationBounds { max_half_size, iso_dedup: false }
    }
}

/// Largest supported half size. Pair sets are 64-bit masks over the
/// `m(2m - 1)` pairs, so `m <= 5`.
pub const MAX_HALF_SIZE: usize = 5;

fn pairs(m: usize) -> Vec<(u8, u8)> {
    let n = 2 * m as u8;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Pair sets with every index in at most two pairs, as bitmasks over
/// `pairs(m)`, in ascending numeric order. Includes the empty set.
fn degree_bounded_pair_sets(m: usize) -> Vec<u64> {
    let pairs = pairs(m);
    let mut degree = [0u8; 2 * MAX_HALF_SIZE + 1];
    let mut out = Vec::new();
    // Highest pair decided first, exclusion before inclusion: ascending masks.
    fn walk(k: usize, mask: u64, pairs: &[(u8, u8)], degree: &mut [u8], out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        let idx = k - 1;
        walk(idx, mask, pairs, degree, out);
        let (i, j) = pairs[idx];
        if degree[i as usize] < 2 && degree[j as usize] < 2 {
            degree[i as usize] += 1;
            degree[j as usize] += 1;
            walk(idx, mask | 1 << idx, pairs, degree, out);
            degree[i as usize] -= 1;
            degree[j as usize] -= 1;
        }
    }
    walk(pairs.len(), 0, &pairs, &mut degree, &mut out);
    out
}

/// Labels `S, v1, .., v2m`.
pub fn instance_labels(m: usize) -> Labels {
    let mut names = Vec::with_capacity(2 * m + 1);
    names.push(String::from("S"));
    names.extend((1..=2 * m).map(|i| format!("v{i}")));
    Labels::new(names).expect("generated names are distinct")
}

fn build_instance(m: usize, pairs: &[(u8, u8)], mask: u64) -> Position {
    let n = 2 * m as u8;
    let x: VertexSet = (1..=n).map(VertexId).collect();
    let mut edges = Vec::with_capacity(1 + mask.count_ones() as usize);
    edges.push(Hyperedge::new(x).expect("even edge has at least two members"));
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        if mask & (1 << idx) != 0 {
            let members = VertexSet::EMPTY.with(VertexId(0)).with(VertexId(i)).with(VertexId(j));
            edges.push(Hyperedge::new(members).expect("3-edge"));
        }
    }
    Position::from_parts(x.with(VertexId(0)), edges).expect("generated instance is well formed")
}

/// Instances for half sizes `1..=max_half_size`, ordered by half size and then
/// by pair-set mask.
pub fn enumerate_instances(b: EnumerationBounds) -> impl Iterator<Item = Instance> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    (1..=b.max_half_size.min(MAX_HALF_SIZE)).flat_map(move |m| {
        let pairs = pairs(m);
        let labels = instance_labels(m);
        degree_bounded_pair_sets(m)
            .into_iter()
            .filter(|&mask| mask != 0)
            .map(move |mask| Instance { labels: labels.clone(), position: build_instance(m, &pairs, mask) })
    })
    .filter(move |inst| {
        if !b.iso_dedup {
            return true;
        }
        let key = iso_canonical_key(&inst.position, DEFAULT_ISO_BOUND.max(2 * MAX_HALF_SIZE + 1))
            .expect("bound covers every generated instance");
        seen.insert(key)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Match,
    Mismatch,
    NoPrediction,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Match => "match",
            Outcome::Mismatch => "mismatch",
            Outcome::NoPrediction => "no-prediction",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRecord {
    /// 1-based position in enumeration order.
    pub instance_id: usize,
    pub instance: Instance,
    pub group: Group,
    pub v_catx: usize,
    pub e_caty: usize,
    pub oracle: u8,
    pub prediction: Prediction,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub matched: usize,
    pub mismatched: usize,
    pub no_prediction: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.matched + self.mismatched + self.no_prediction
    }

    fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Match => self.matched += 1,
            Outcome::Mismatch => self.mismatched += 1,
            Outcome::NoPrediction => self.no_prediction += 1,
        }
    }
}

/// Outcome counts per (group, parity of |E(CatY)|).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub cells: BTreeMap<(Group, Parity), Tally>,
}

impl Summary {
    pub fn from_records(records: &[VerificationRecord]) -> Self {
        let mut cells: BTreeMap<(Group, Parity), Tally> = BTreeMap::new();
        for r in records {
            cells.entry((r.group, Parity::of(r.e_caty))).or_default().add(r.outcome);
        }
        Summary { cells }
    }

    pub fn totals(&self) -> Tally {
        self.cells.values().fold(Tally::default(), |acc, t| Tally {
            matched: acc.matched + t.matched,
            mismatched: acc.mismatched + t.mismatched,
            no_prediction: acc.no_prediction + t.no_prediction,
        })
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<6} {:<7} {:>8} {:>8} {:>8} {:>13}", "group", "|E(Y)|", "records", "match", "mismatch", "no-prediction")?;
        for ((g, p), t) in &self.cells {
            writeln!(
                f,
                "{:<6} {:<7} {:>8} {:>8} {:>8} {:>13}",
                g.as_str(),
                p.as_str(),
                t.total(),
                t.matched,
                t.mismatched,
                t.no_prediction
            )?;
        }
        let t = self.totals();
        writeln!(f, "{:<6} {:<7} {:>8} {:>8} {:>8} {:>13}", "total", "", t.total(), t.matched, t.mismatched, t.no_prediction)?;
        write!(f, "{} mismatches", t.mismatched)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("half size {0} exceeds the supported maximum {MAX_HALF_SIZE}")]
    SizeBoundExceeded(usize),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

/// Verifies a single classified instance against the oracle.
pub fn verify_instance(
    instance_id: usize,
    instance: Instance,
    table: &mut TranspositionTable,
    cfg: &SearchConfig,
) -> Result<VerificationRecord, VerifyError> {
    let report = classify(&instance.position);
    let prediction = predict(&report)?;
    let oracle = grundy_value(&instance.position, table, cfg)?;
    let outcome = match prediction.value {
        None => Outcome::NoPrediction,
        Some(v) if v == oracle => Outcome::Match,
        Some(_) => Outcome::Mismatch,
    };
    Ok(VerificationRecord {
        instance_id,
        instance,
        group: report.group,
        v_catx: report.cat_x_vertices.len(),
        e_caty: report.cat_y_count(),
        oracle,
        prediction,
        outcome,
    })
}

/// One record per enumerated instance, in enumeration order, plus the summary.
pub fn verify(b: EnumerationBounds) -> Result<(Vec<VerificationRecord>, Summary), VerifyError> {
    if b.max_half_size > MAX_HALF_SIZE {
        return Err(VerifyError::SizeBoundExceeded(b.max_half_size));
    }
    let cfg = SearchConfig::default();
    let mut table = TranspositionTable::new();
    let mut records = Vec::new();
    for (i, inst) in enumerate_instances(b).enumerate() {
        records.push(verify_instance(i + 1, inst, &mut table, &cfg)?);
    }
    let summary = Summary::from_records(&records);
    Ok((records, summary))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaSweep {
    pub instances: usize,
    /// Instances whose lemma check failed, per lemma.
    pub violations: BTreeMap<Lemma, usize>,
    /// Conforming instances with only subcategories B and C.
    pub bc_instances: usize,
}

impl LemmaSweep {
    pub fn violations_of(&self, lemma: Lemma) -> usize {
        self.violations.get(&lemma).copied().unwrap_or(0)
    }
}

/// Runs every lemma check over the enumerated instances.
pub fn sweep_lemmas(b: EnumerationBounds) -> LemmaSweep {
    let mut sweep = LemmaSweep::default();
    for lemma in Lemma::ALL {
        sweep.violations.insert(lemma, 0);
    }
    for inst in enumerate_instances(b) {
        let report = classify(&inst.position);
        sweep.instances += 1;
        if report.group == Group::BC {
            sweep.bc_instances += 1;
        }
        // Every generated instance is mixed, so the checks always run.
        for check in check_lemmas(&report).expect("enumerated instances conform") {
            if !check.holds {
                *sweep.violations.entry(check.lemma).or_default() += 1;
            }
        }
    }
    sweep
}

impl VerificationRecord {
    pub fn predicted_value(&self) -> Option<u8> {
        self.prediction.value
    }

    pub fn source(&self) -> PredictionSource {
        self.prediction.source
    }
}
