//! Equivalence classes of non-zero cycles and of in-arrows at a vertex, and a
//! direct search for the Brenner numbers `(N_e, n_e)` of `T_α(A)`.
//!
//! The search works with the canonical complete arrow sets: one
//! representative per quiver arrow into the vertex (for `rad T e`) and out of
//! it (for `rad e T`). Whether a product `ab` vanishes is decided by `Φ` on
//! the two-arrow path.

use std::collections::HashMap;

use serde::Serialize;

use crate::cycles::{nonzero_cycles_at, CycleClass};
use crate::hochschild::HochschildExtension;
use crate::partition::{Partition, UnionFind};
use crate::quiver::{ArrowId, Cycle, Path, Quiver, VertexId};

/// `𝒜_h`: the arrows of the extension quiver ending at `h`, ordered by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSet {
    pub vertex: VertexId,
    pub arrows: Vec<ArrowId>,
}

fn by_name(q: &Quiver, arrows: &[ArrowId]) -> Vec<ArrowId> {
    let mut v = arrows.to_vec();
    v.sort_by(|&a, &b| q.arrow_name(a).cmp(q.arrow_name(b)));
    v
}

pub fn in_arrows(ext: &HochschildExtension, h: VertexId) -> ArrowSet {
    let q = ext.quiver();
    ArrowSet { vertex: h, arrows: by_name(q, q.arrows_into(h)) }
}

pub fn out_arrows(ext: &HochschildExtension, h: VertexId) -> Vec<ArrowId> {
    let q = ext.quiver();
    by_name(q, q.arrows_from(h))
}

/// `nonzero[i][j]` records `Φ(a_i b_j) ≠ 0` for `a_i ∈ 𝒜_h` and `b_j` leaving `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub ins: Vec<ArrowId>,
    pub outs: Vec<ArrowId>,
    pub nonzero: Vec<Vec<bool>>,
}

pub fn product_table(ext: &HochschildExtension, h: VertexId) -> ProductTable {
    let q = ext.quiver();
    let ins = in_arrows(ext, h).arrows;
    let outs = out_arrows(ext, h);
    let nonzero = ins
        .iter()
        .map(|&a| {
            outs.iter()
                .map(|&b| {
                    let ab = Path::from_arrows(q, vec![a, b]).expect("a ends where b starts");
                    !ext.phi(&ab).is_zero()
                })
                .collect()
        })
        .collect();
    ProductTable { ins, outs, nonzero }
}

/// `𝒞_h/≡`: cycles are related when they share an arrow that starts or ends at
/// `h`, anywhere along either cycle.
pub fn cycle_classes(ext: &HochschildExtension, h: VertexId, cycles: &[(Cycle, CycleClass)]) -> Partition {
    let q = ext.quiver();
    let mut uf = UnionFind::new(cycles.len());
    let mut first_with: HashMap<ArrowId, usize> = HashMap::new();
    for (i, (c, _)) in cycles.iter().enumerate() {
        for &a in c.arrows() {
            if q.source(a) == h || q.target(a) == h {
                let j = *first_with.entry(a).or_insert(i);
                uf.union(i, j);
            }
        }
    }
    uf.into_partition()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClasses {
    pub set: ArrowSet,
    /// Blocks index into `set.arrows`.
    pub partition: Partition,
    /// Arrows `a ∈ 𝒜_h` with `ab = 0` for every `b`; none for a correct pipeline.
    pub without_partner: Vec<ArrowId>,
}

/// `𝒜_h/≈`: `a ≈ a′` when some `b` leaving `h` has `ab ≠ 0` and `a′b ≠ 0`.
pub fn arrow_classes(ext: &HochschildExtension, h: VertexId) -> ArrowClasses {
    arrow_classes_from(in_arrows(ext, h), &product_table(ext, h))
}

fn arrow_classes_from(set: ArrowSet, table: &ProductTable) -> ArrowClasses {
    let mut uf = UnionFind::new(set.arrows.len());
    for j in 0..table.outs.len() {
        let mut first = None;
        for i in 0..table.ins.len() {
            if table.nonzero[i][j] {
                match first {
                    None => first = Some(i),
                    Some(f) => {
                        uf.union(f, i);
                    }
                }
            }
        }
    }
    let without_partner = (0..table.ins.len()).filter(|&i| !table.nonzero[i].iter().any(|&x| x)).map(|i| table.ins[i]).collect();
    ArrowClasses { set, partition: uf.into_partition(), without_partner }
}

/// `(card 𝒞_h/≡, card 𝒜_h/≈)`.
pub fn counts(ext: &HochschildExtension, h: VertexId) -> (usize, usize) {
    let cycles = nonzero_cycles_at(ext, h);
    (cycle_classes(ext, h, &cycles).block_count(), arrow_classes(ext, h).partition.block_count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// `N_e`.
    #[serde(rename = "N")]
    pub max_total: usize,
    /// `n_e`: the fewest labelled blocks among arrangements attaining `N_e`.
    #[serde(rename = "n")]
    pub min_blocks: usize,
    pub arrangements: u64,
}

pub fn brenner_oracle(ext: &HochschildExtension, h: VertexId) -> OracleResult {
    brenner_search(&product_table(ext, h).nonzero, ext.quiver().arrows_from(h).len())
}

/// Exact search over arrangements `Λ_0, …, Λ_n` of the in-arrows (rows of
/// `nonzero`) and `Γ_0, …, Γ_n` of the `outs` out-arrows.
///
/// Labelled blocks are generated as restricted growth strings, so each
/// unordered arrangement is visited once. Once the `Λ`'s are fixed, an
/// out-arrow with a nonzero product against `Λ_i` must lie in `Γ_i`; the
/// remaining out-arrows are free and can fill blocks whose forced `Γ_i` is
/// empty or go to `Γ_0`.
pub fn brenner_search(nonzero: &[Vec<bool>], outs: usize) -> OracleResult {
    struct Search<'a> {
        nonzero: &'a [Vec<bool>],
        owner: Vec<usize>,
        forced: Vec<usize>,
        blocks: usize,
        zeros: usize,
        best: Option<(usize, usize)>,
        arrangements: u64,
    }
    const FREE: usize = 0;
    impl Search<'_> {
        fn go(&mut self, a: usize) {
            let rows = self.nonzero.len();
            if self.blocks + self.zeros + (rows - a) < self.best.map_or(0, |b| b.0) {
                return;
            }
            if a == rows {
                self.arrangements += 1;
                let free = self.owner.iter().filter(|&&o| o == FREE).count();
                let unforced = (1..=self.blocks).filter(|&l| self.forced[l] == 0).count();
                if unforced > free {
                    return;
                }
                let cand = (self.blocks + self.zeros, self.blocks);
                self.best = Some(match self.best {
                    Some((n, m)) if n > cand.0 || (n == cand.0 && m <= cand.1) => (n, m),
                    _ => cand,
                });
                return;
            }
            // a new block first, so large totals are found early
            for label in (1..=self.blocks + 1).rev().chain(std::iter::once(0)) {
                if label == 0 {
                    if self.nonzero[a].iter().any(|&x| x) {
                        continue;
                    }
                    self.zeros += 1;
                    self.go(a + 1);
                    self.zeros -= 1;
                    continue;
                }
                let mut claimed = Vec::new();
                let ok = self.nonzero[a].iter().enumerate().filter(|(_, &x)| x).all(|(b, _)| {
                    match self.owner[b] {
                        FREE => {
                            self.owner[b] = label;
                            claimed.push(b);
                            true
                        }
                        o => o == label,
                    }
                });
                if ok {
                    let opened = label > self.blocks;
                    if opened {
                        self.blocks += 1;
                        self.forced.push(0);
                    }
                    self.forced[label] += claimed.len();
                    self.go(a + 1);
                    self.forced[label] -= claimed.len();
                    if opened {
                        self.blocks -= 1;
                        self.forced.pop();
                    }
                }
                for b in claimed {
                    self.owner[b] = FREE;
                }
            }
        }
    }
    let mut s = Search {
        nonzero,
        owner: vec![FREE; outs],
        forced: vec![0],
        blocks: 0,
        zeros: 0,
        best: None,
        arrangements: 0,
    };
    s.go(0);
    let (max_total, min_blocks) = s.best.unwrap_or((0, 0));
    OracleResult { max_total, min_blocks, arrangements: s.arrangements }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: String,
    pub card_c: usize,
    pub card_a: usize,
    #[serde(rename = "oracle_N")]
    pub oracle_max_total: usize,
    #[serde(rename = "oracle_n")]
    pub oracle_min_blocks: usize,
    pub middle_term_summands: usize,
    pub middle_term_projective_summands: usize,
    #[serde(rename = "radP_socP_summands")]
    pub rad_soc_summands: usize,
    pub counts_agree: bool,
    pub oracle_agrees: bool,
    /// Every in-arrow has a nonzero product with some out-arrow.
    pub partners_exist: bool,
    /// `card_c = 1`, checked when `n ≥ 3` and the vertex is neither a sink
    /// nor a source of the base quiver.
    pub single_class_expected: bool,
    pub diagnostic: Option<String>,
}

impl VertexReport {
    pub fn consistent(&self) -> bool {
        self.counts_agree
            && self.oracle_agrees
            && self.partners_exist
            && self.middle_term_projective_summands == 0
            && (!self.single_class_expected || self.card_c == 1)
            && self.diagnostic.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrennerReport {
    pub vertices: Vec<VertexReport>,
}

impl BrennerReport {
    pub fn consistent(&self) -> bool {
        self.vertices.iter().all(VertexReport::consistent)
    }

    pub fn vertex(&self, name: &str) -> Option<&VertexReport> {
        self.vertices.iter().find(|v| v.vertex == name)
    }
}

pub fn vertex_report(ext: &HochschildExtension, h: VertexId) -> VertexReport {
    let cycles = nonzero_cycles_at(ext, h);
    vertex_report_with(ext, h, &cycles)
}

pub fn vertex_report_with(ext: &HochschildExtension, h: VertexId, cycles: &[(Cycle, CycleClass)]) -> VertexReport {
    let base = ext.algebra().quiver();
    let card_c = cycle_classes(ext, h, cycles).block_count();
    let table = product_table(ext, h);
    let arrows = arrow_classes_from(in_arrows(ext, h), &table);
    let card_a = arrows.partition.block_count();
    let oracle = brenner_search(&table.nonzero, table.outs.len());
    let diagnostic = cycles.is_empty().then(|| format!("no non-zero cycle at {}", base.vertex_name(h)));
    VertexReport {
        vertex: base.vertex_name(h).to_string(),
        card_c,
        card_a,
        oracle_max_total: oracle.max_total,
        oracle_min_blocks: oracle.min_blocks,
        middle_term_summands: card_c,
        middle_term_projective_summands: oracle.max_total - oracle.min_blocks,
        rad_soc_summands: card_c,
        counts_agree: card_c == card_a,
        oracle_agrees: oracle.max_total == card_c && oracle.min_blocks == card_c,
        partners_exist: arrows.without_partner.is_empty(),
        single_class_expected: ext.algebra().n() >= 3 && !base.is_sink(h) && !base.is_source(h),
        diagnostic,
    }
}

pub fn report(ext: &HochschildExtension) -> BrennerReport {
    BrennerReport { vertices: ext.quiver().vertices().map(|h| vertex_report(ext, h)).collect() }
}
