//! End-to-end runs: Rees presentation, optional transform or search,
//! initial ideal, G + B split, criterion, and optional cross-checks.
//! Reports serialize to a stable JSON schema.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::groebner::{groebner_in, ideal_power, IdealGens};
use crate::hilbert::{hs_bigraded, hs_quotient, BigradedSeries, HilbertSeries};
use crate::homology::betti_table;
use crate::poly::{Monomial, MonomialOrder, RingSpec};
use crate::rees::{
    criterion, format_census, rees_presentation, slice_agrees, split_linear, CriterionReport,
    LinearSplit, ReesPresentation,
};
use crate::transform::{apply_bitransform, search_transform, BiTransform, CandidateLog, SearchConfig};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub order: MonomialOrder,
    pub transform: Option<BiTransform>,
    /// Searched when set and `transform` is `None`.
    pub search: Option<SearchConfig>,
    pub betti: bool,
    pub hilbert: bool,
    /// Largest `j` for the finite-slice soundness check.
    pub slice_max_j: u32,
    pub timings: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            order: MonomialOrder::degrevlex(),
            transform: None,
            search: None,
            betti: false,
            hilbert: false,
            slice_max_j: 6,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub ideal: String,
    pub ring: String,
    pub generators: Vec<String>,
    pub degree: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReesSummary {
    /// Minimal generators of `P` by bidegree.
    pub census: String,
    pub gb_size: usize,
    pub gb_census: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BElement {
    pub monomial: String,
    pub bidegree: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitSummary {
    pub g_count: usize,
    pub b: Vec<BElement>,
    pub b_census: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionSummary {
    pub passes: bool,
    pub k0: Option<u32>,
    pub t_max: u32,
    /// `m * t^α` products not covered by `G`.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceCheck {
    pub ks: Vec<u32>,
    pub max_j: u32,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub seed: u64,
    pub budget: usize,
    pub found: bool,
    pub log: Vec<CandidateLog>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerRegularity {
    pub k: u32,
    pub regularity: Option<i64>,
    pub linear: Option<bool>,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerSeries {
    pub k: u32,
    pub series: HilbertSeries,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertSummary {
    pub powers: Vec<PowerSeries>,
    /// Series of `T / in(g(P))`.
    pub initial_bigraded: BigradedSeries,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputEcho,
    pub order: String,
    pub transform: Option<Vec<String>>,
    pub rees: ReesSummary,
    pub split: SplitSummary,
    pub criterion: CriterionSummary,
    pub conclusion: Option<String>,
    pub slice_check: Option<SliceCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<PowerRegularity>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn passes(&self) -> bool {
        self.criterion.passes
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn ring_string(spec: &RingSpec) -> String {
    let block = |c: char, n: usize| match n {
        0 => None,
        1 => Some(format!("{c}1")),
        n => Some(format!("{c}1..{c}{n}")),
    };
    [block('x', spec.x_count), block('t', spec.t_count)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn echo_input(name: &str, ideal: &IdealGens) -> Result<InputEcho> {
    let spec = ideal.spec();
    Ok(InputEcho {
        ideal: name.to_string(),
        ring: ring_string(spec),
        generators: ideal
            .gens
            .iter()
            .map(|g| g.display(spec).to_string())
            .collect(),
        degree: ideal.generator_degree()?,
    })
}

pub fn summarize_rees(rees: &ReesPresentation) -> ReesSummary {
    ReesSummary {
        census: format_census(&rees.census),
        gb_size: rees.p.len(),
        gb_census: format_census(&rees.gb_census),
    }
}

fn summarize_split(split: &LinearSplit) -> SplitSummary {
    SplitSummary {
        g_count: split.g.len(),
        b: split
            .b
            .iter()
            .map(|m| BElement {
                monomial: m.display(&split.spec).to_string(),
                bidegree: m.bidegree(&split.spec).unwrap().to_string(),
            })
            .collect(),
        b_census: format_census(&split.b_census()),
    }
}

fn summarize_criterion(c: &CriterionReport) -> CriterionSummary {
    CriterionSummary {
        passes: c.passes,
        k0: c.k0,
        t_max: c.t_max,
        failures: c.witness_strings(),
    }
}

/// `in(g(P))` split into `G + B` for a fixed transform.
pub fn transformed_split(
    rees: &ReesPresentation,
    order: MonomialOrder,
    g: Option<&BiTransform>,
) -> Result<LinearSplit> {
    let ring = rees.t_ring().with_order(order);
    let p = IdealGens::new(ring.clone(), rees.p.elements.clone());
    let gens = match g {
        Some(g) => apply_bitransform(&p, g)?.gens,
        None => p.gens,
    };
    let gb = groebner_in(&ring, &gens);
    split_linear(
        &IdealGens::from_monomials(ring, gb.leading_monomials()),
        g.cloned(),
    )
}

/// Regularity of `I^k` for monomial `I`; non-monomial powers are not
/// computed and are marked unverified.
pub fn power_regularity(ideal: &IdealGens, k: u32, d: u32) -> Result<PowerRegularity> {
    if !ideal.is_monomial() {
        return Ok(PowerRegularity {
            k,
            regularity: None,
            linear: None,
            status: "consistent/unverified (non-monomial)".into(),
        });
    }
    let power = ideal_power(ideal, k)?;
    let reg = betti_table(&power)?.regularity();
    Ok(PowerRegularity {
        k,
        regularity: reg,
        linear: reg.map(|r| r == (k * d) as i64),
        status: "computed".into(),
    })
}

struct Clock {
    on: bool,
    laps: BTreeMap<String, u128>,
    last: Instant,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if self.on {
            self.laps
                .insert(name.to_string(), self.last.elapsed().as_millis());
            self.last = Instant::now();
        }
    }
}

pub fn run_pipeline(name: &str, ideal: &IdealGens, opts: &PipelineOptions) -> Result<Report> {
    let mut clock = Clock {
        on: opts.timings,
        laps: BTreeMap::new(),
        last: Instant::now(),
    };
    let input = echo_input(name, ideal)?;
    let rees = rees_presentation(ideal, opts.order)?;
    clock.lap("rees");

    let mut search_summary = None;
    let mut transform = opts.transform.clone();
    if transform.is_none() {
        if let Some(cfg) = &opts.search {
            let outcome = search_transform(&rees, opts.order, cfg)?;
            search_summary = Some(SearchSummary {
                seed: cfg.seed,
                budget: cfg.max_candidates,
                found: outcome.best.is_some(),
                log: outcome.log,
            });
            transform = outcome.best;
            clock.lap("search");
        }
    }
    let transform = transform.filter(|g| !g.is_identity());

    let split = transformed_split(&rees, opts.order, transform.as_ref())?;
    let crit = criterion(&split, rees.m(), rees.d);
    clock.lap("criterion");

    let slice_check = crit.k0.filter(|_| crit.passes).map(|k0| {
        let ks = vec![k0, k0 + 1];
        let agrees = ks
            .iter()
            .all(|&k| (0..=opts.slice_max_j).all(|j| slice_agrees(&split, k, j)));
        SliceCheck {
            ks,
            max_j: opts.slice_max_j,
            agrees,
        }
    });

    let upto = crit.k0.unwrap_or(crit.t_max + 1).max(1);
    let betti = if opts.betti {
        let v = (1..=upto)
            .map(|k| power_regularity(ideal, k, rees.d))
            .collect::<Result<Vec<_>>>()?;
        clock.lap("betti");
        Some(v)
    } else {
        None
    };
    let hilbert = if opts.hilbert {
        let powers = (1..=upto)
            .map(|k| {
                Ok(PowerSeries {
                    k,
                    series: hs_quotient(&ideal_power(ideal, k)?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ring = rees.t_ring().with_order(opts.order);
        let in_gp = IdealGens::from_monomials(ring, split.g.iter().chain(&split.b).cloned().collect::<Vec<Monomial>>());
        let initial_bigraded = hs_bigraded(&in_gp)?;
        clock.lap("hilbert");
        Some(HilbertSummary {
            powers,
            initial_bigraded,
        })
    } else {
        None
    };

    Ok(Report {
        schema: SCHEMA,
        input,
        order: opts.order.short_name(),
        transform: transform.as_ref().map(|g| g.assignments_text(&rees.spec())),
        rees: summarize_rees(&rees),
        split: summarize_split(&split),
        criterion: summarize_criterion(&crit),
        conclusion: crit.conclusion(name),
        slice_check,
        search: search_summary,
        betti,
        hilbert,
        timings_ms: opts.timings.then_some(clock.laps),
    })
}

/// Human-readable rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!(
        "ideal {} in {} ({} generators of degree {})",
        r.input.ideal,
        r.input.ring,
        r.input.generators.len(),
        r.input.degree
    ));
    line(format!("order: {}", r.order));
    match &r.transform {
        Some(t) => line(format!("transform: {}", t.join(", "))),
        None => line("transform: identity".into()),
    }
    if let Some(s) = &r.search {
        let passed = s.log.iter().filter(|c| c.passes).count();
        line(format!(
            "search: seed {}, {} of {} candidates evaluated, {} passed, {}",
            s.seed,
            s.log.len(),
            s.budget,
            passed,
            if s.found { "found" } else { "none found" }
        ));
    }
    line(format!(
        "P: census {} ({} basis elements)",
        r.rees.census, r.rees.gb_size
    ));
    let b: Vec<String> = r.split.b.iter().map(|e| e.monomial.clone()).collect();
    line(format!("|G| = {}, B = {{{}}}", r.split.g_count, b.join(", ")));
    line(format!(
        "criterion: {}{}",
        if r.criterion.passes { "passes" } else { "fails" },
        r.criterion
            .k0
            .map(|k| format!(", k0 = {k}"))
            .unwrap_or_default()
    ));
    for f in &r.criterion.failures {
        line(format!("  not in G: {f}"));
    }
    if let Some(c) = &r.conclusion {
        line(c.clone());
    }
    if let Some(s) = &r.slice_check {
        line(format!(
            "slice check k in {:?}, j <= {}: {}",
            s.ks,
            s.max_j,
            if s.agrees { "ok" } else { "MISMATCH" }
        ));
    }
    if let Some(b) = &r.betti {
        for p in b {
            match p.regularity {
                Some(reg) => line(format!("reg({}^{}) = {}", r.input.ideal, p.k, reg)),
                None => line(format!("reg({}^{}): {}", r.input.ideal, p.k, p.status)),
            }
        }
    }
    if let Some(h) = &r.hilbert {
        for p in &h.powers {
            line(format!("HS(S/{}^{}) = {}", r.input.ideal, p.k, p.series));
        }
        line(format!("HS(T/in(g(P))) = {}", h.initial_bigraded));
    }
    if let Some(t) = &r.timings_ms {
        for (k, v) in t {
            line(format!("time {k}: {v} ms"));
        }
    }
    out
}
