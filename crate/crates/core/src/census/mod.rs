//! Exhaustive class counts of lattice polygons: `v(2,m)`, `κ(2,w)` and their
//! centrally symmetric and interior-point variants.
//!
//! Candidates are convex polygons with vertices in `[0,N]^2`, normalized by
//! translation so both coordinate minima are zero. They are grown vertex by
//! vertex in counterclockwise order from the lexicographically smallest
//! vertex. The star polygon over any prefix is contained in every completion,
//! so its doubled area and its Pick count prune the search.

mod generate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::equivalence::{are_equivalent, canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::limits::max_points;
use crate::linalg::IntegerPoint;
use crate::polytope::LatticePolytope;

pub use generate::{candidates, Candidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// `m = d! · vol`.
    NormalizedVolume,
    /// `w = |P ∩ Z^d|`.
    Cardinality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    None,
    /// Symmetric about a lattice point.
    CentrallySymmetric,
    NonemptyInterior,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::NormalizedVolume => "normalized_volume",
            Statistic::Cardinality => "cardinality",
        }
    }
}

impl Constraint {
    pub fn name(self) -> &'static str {
        match self {
            Constraint::None => "none",
            Constraint::CentrallySymmetric => "centrally_symmetric",
            Constraint::NonemptyInterior => "nonempty_interior",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized_volume" | "volume" | "m" => Ok(Statistic::NormalizedVolume),
            "cardinality" | "w" => Ok(Statistic::Cardinality),
            _ => Err(Error::InvalidInput(format!("unknown statistic {s:?}"))),
        }
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Constraint::None),
            "centrally_symmetric" | "symmetric" => Ok(Constraint::CentrallySymmetric),
            "nonempty_interior" | "interior" => Ok(Constraint::NonemptyInterior),
            _ => Err(Error::InvalidInput(format!("unknown constraint {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusQuery {
    pub dimension: usize,
    pub statistic: Statistic,
    pub value: i64,
    pub constraint: Constraint,
    /// First search box `N`; `None` picks the smallest box that holds the
    /// thinnest triangle with the requested statistic.
    pub search_box: Option<i64>,
}

impl CensusQuery {
    pub fn new(statistic: Statistic, value: i64, constraint: Constraint) -> Self {
        CensusQuery { dimension: 2, statistic, value, constraint, search_box: None }
    }

    pub fn with_box(mut self, n: i64) -> Self {
        self.search_box = Some(n);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dimension != 2 {
            return Err(Error::InvalidInput(format!(
                "the census runs in dimension 2 only; got {} (unrestricted counts are infinite for d >= 3)",
                self.dimension
            )));
        }
        let min = match self.statistic {
            Statistic::NormalizedVolume => 1,
            Statistic::Cardinality => 3,
        };
        if self.value < min {
            return Err(Error::InvalidInput(format!("{} must be at least {min}", self.statistic)));
        }
        if self.search_box.is_some_and(|n| n < 1) {
            return Err(Error::InvalidInput("search box must be positive".into()));
        }
        Ok(())
    }

    fn start_box(&self) -> i64 {
        self.search_box.unwrap_or(match self.statistic {
            Statistic::NormalizedVolume => self.value,
            Statistic::Cardinality => (self.value - 2).max(1),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representative {
    pub canonical: CanonicalForm,
    /// Vertices of a member that fits in the smallest box, counterclockwise.
    pub vertices: Vec<[i64; 2]>,
    /// Smallest `N` such that some member of the class fits in `[0,N]^2`.
    pub min_box: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub query: CensusQuery,
    pub class_count: usize,
    pub representatives: Vec<Representative>,
    /// Box where the count was taken; the count was unchanged at `box + 2`
    /// and `box + 4`.
    pub search_box: i64,
    pub box_sufficiency: bool,
    /// `(N, count)` for every box examined.
    pub counts_by_box: Vec<(i64, usize)>,
}

/// Largest box the census will scan under the current point cap.
fn box_cap() -> i64 {
    let cap = max_points() as f64;
    (cap.sqrt().floor() as i64 - 1).max(1)
}

/// Classes of all candidates in `[0,N]^2`, with the smallest box each class
/// fits in.
fn classes(q: &CensusQuery, n: i64) -> Result<BTreeMap<CanonicalForm, Representative>> {
    let found: Vec<(CanonicalForm, Candidate)> = candidates(q.statistic, q.value, q.constraint, n)
        .into_par_iter()
        .map(|c| {
            let p = c.polytope()?;
            Ok((canonical_form(&p), c))
        })
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<CanonicalForm, Representative> = BTreeMap::new();
    for (form, c) in found {
        let bbox = c.bbox();
        match out.get_mut(&form) {
            Some(r) if r.min_box <= bbox => {}
            Some(r) => {
                r.min_box = bbox;
                r.vertices = c.vertices;
            }
            None => {
                out.insert(form.clone(), Representative { canonical: form, vertices: c.vertices, min_box: bbox });
            }
        }
    }
    Ok(out)
}

fn count_within(classes: &BTreeMap<CanonicalForm, Representative>, n: i64) -> usize {
    classes.values().filter(|r| r.min_box <= n).count()
}

/// Counts classes, enlarging the box in steps of two until the count is the
/// same at `N`, `N+2` and `N+4`.
pub fn enumerate_classes(q: &CensusQuery) -> Result<CensusRecord> {
    q.validate()?;
    let cap = box_cap();
    let mut n = q.start_box();
    let mut counts_by_box: Vec<(i64, usize)> = Vec::new();
    loop {
        let hi = n + 4;
        if hi > cap {
            let stable = counts_by_box
                .windows(3)
                .filter(|w| w[0].1 == w[1].1 && w[1].1 == w[2].1)
                .map(|w| w[0].0)
                .next_back();
            return Err(Error::ResourceCap {
                what: format!(
                    "census box {hi} for {} = {} (largest stable box: {})",
                    q.statistic,
                    q.value,
                    stable.map_or("none".to_string(), |s| s.to_string())
                ),
                size: ((hi + 1) * (hi + 1)) as usize,
                cap: max_points(),
            });
        }
        let found = classes(q, hi)?;
        let c: Vec<usize> = [n, n + 2, hi].iter().map(|&b| count_within(&found, b)).collect();
        for (b, k) in [n, n + 2, hi].into_iter().zip(&c) {
            if !counts_by_box.iter().any(|(x, _)| *x == b) {
                counts_by_box.push((b, *k));
            }
        }
        if c[0] == c[1] && c[1] == c[2] {
            let representatives: Vec<Representative> = found.into_values().filter(|r| r.min_box <= n).collect();
            return Ok(CensusRecord {
                query: q.clone(),
                class_count: representatives.len(),
                representatives,
                search_box: n,
                box_sufficiency: true,
                counts_by_box,
            });
        }
        n += 2;
    }
}

/// Second pipeline: partitions the candidates of the record's box with
/// pairwise `are_equivalent` tests, bucketed by `(|P|, volume, vertex
/// count)`, and compares the number of blocks with the canonical count.
/// Disagreement is an error listing both sides.
pub fn census_crosscheck(q: &CensusQuery) -> Result<bool> {
    let record = enumerate_classes(q)?;
    let n = record.search_box;
    let mut buckets: BTreeMap<(usize, i64, usize), Vec<LatticePolytope<i64>>> = BTreeMap::new();
    for c in candidates(q.statistic, q.value, q.constraint, n) {
        let p = c.polytope()?;
        let key = (p.num_lattice_points(), *p.normalized_volume(), p.vertices().len());
        let reps = buckets.entry(key).or_default();
        let mut known = false;
        for r in reps.iter() {
            if are_equivalent(r, &p)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(p);
        }
    }
    let blocks: Vec<&LatticePolytope<i64>> = buckets.values().flatten().collect();
    if blocks.len() == record.class_count {
        return Ok(true);
    }
    let mut forms: Vec<String> = blocks.iter().map(|p| canonical_form(*p).to_hex()).collect();
    forms.sort();
    let canon: Vec<String> = record.representatives.iter().map(|r| r.canonical.to_hex()).collect();
    Err(Error::CensusDisagreement(format!(
        "{} = {} ({}): canonical dedup found {} classes, pairwise partition found {}; \
         partition block forms {:?}; canonical forms {:?}",
        q.statistic,
        q.value,
        q.constraint,
        record.class_count,
        blocks.len(),
        forms,
        canon
    )))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub statistic: Statistic,
    pub value: i64,
    pub constraint: Constraint,
    pub search_box: i64,
    pub stable: bool,
    pub class_count: usize,
    /// `ln(class_count)`; absent when the count is zero.
    pub log_count: Option<f64>,
    pub cube_root: f64,
    /// `log_count / cube_root`.
    pub ratio: Option<f64>,
}

pub const CSV_HEADER: &str = "statistic,value,constraint,box,stable,class_count,log_count,cube_root,ratio";

impl GrowthRow {
    pub fn from_record(r: &CensusRecord) -> Self {
        let cube_root = (r.query.value as f64).cbrt();
        let log_count = (r.class_count > 0).then(|| (r.class_count as f64).ln());
        GrowthRow {
            statistic: r.query.statistic,
            value: r.query.value,
            constraint: r.query.constraint,
            search_box: r.search_box,
            stable: r.box_sufficiency,
            class_count: r.class_count,
            log_count,
            cube_root,
            ratio: log_count.map(|l| l / cube_root),
        }
    }

    pub fn csv_line(&self) -> String {
        let opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.6}"));
        format!(
            "{},{},{},{},{},{},{},{:.6},{}",
            self.statistic,
            self.value,
            self.constraint,
            self.search_box,
            self.stable,
            self.class_count,
            opt(self.log_count),
            self.cube_root,
            opt(self.ratio)
        )
    }
}

pub fn growth_table(
    statistic: Statistic,
    range: std::ops::RangeInclusive<i64>,
    constraint: Constraint,
) -> Result<Vec<GrowthRow>> {
    range
        .map(|v| enumerate_classes(&CensusQuery::new(statistic, v, constraint)).map(|r| GrowthRow::from_record(&r)))
        .collect()
}

pub fn to_csv(rows: &[GrowthRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}

pub(crate) fn polygon(vertices: &[[i64; 2]]) -> Result<LatticePolytope<i64>> {
    let pts: Vec<IntegerPoint<i64>> = vertices.iter().map(|v| IntegerPoint::new(v.to_vec())).collect();
    LatticePolytope::convex_hull(&pts, 2)
}
