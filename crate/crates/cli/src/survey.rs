//! Batch survey over a manifest: ladder index and minimum admissible
//! normal index for each instance and ε.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use workbench_core::corpus::ManifestEntry;
use workbench_core::structure::{find_structure_among, pareto_front};
use workbench_core::{build_group, enumerate_normal_subgroups, fmt_rational, ladder_index, Rational};

use crate::subset::parse_subset_spec;

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub group: String,
    pub set: String,
    pub k: String,
    pub eps: String,
    pub min_index: String,
    pub sym_diff: String,
    pub ms: String,
    pub error: String,
}

/// One row of the optional Pareto table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParetoRecord {
    pub group: String,
    pub set: String,
    pub index: usize,
    pub sym_diff: usize,
}

pub struct SurveyOptions {
    pub eps: Vec<Rational>,
    /// `None` means `|G|` for each group.
    pub max_index: Option<usize>,
    pub timing: bool,
    pub k_cap: usize,
}

struct EntryOutput {
    records: Vec<SurveyRecord>,
    pareto: Vec<ParetoRecord>,
}

fn run_entry(entry: &ManifestEntry, opts: &SurveyOptions) -> EntryOutput {
    let started = Instant::now();
    let row = |eps: &Rational| SurveyRecord {
        group: entry.group.clone(),
        set: entry.set.clone(),
        k: String::new(),
        eps: fmt_rational(eps),
        min_index: String::new(),
        sym_diff: String::new(),
        ms: String::new(),
        error: String::new(),
    };
    let fail = |msg: String| EntryOutput {
        records: opts.eps.iter().map(|e| SurveyRecord { error: msg.clone(), ..row(e) }).collect(),
        pareto: Vec::new(),
    };
    let g = match build_group(&entry.group) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    let a = match parse_subset_spec(&entry.set, &g, entry.seed) {
        Ok(a) => a,
        Err(e) => return fail(e.to_string()),
    };
    let budget = opts.max_index.unwrap_or(g.order());
    let k = ladder_index(&g, &a, opts.k_cap).0;
    let candidates = enumerate_normal_subgroups(&g, budget);
    let setup_ms = started.elapsed().as_millis();
    let records = opts
        .eps
        .iter()
        .map(|eps| {
            let t = Instant::now();
            let mut rec = row(eps);
            rec.k = k.to_string();
            if *eps <= Rational::from_integer(0) || *eps >= Rational::from_integer(1) {
                rec.error = format!("epsilon {} outside (0, 1)", fmt_rational(eps));
            } else {
                match find_structure_among(&g, &a, *eps, &candidates) {
                    Some(res) => {
                        rec.min_index = res.index.to_string();
                        rec.sym_diff = res.sym_diff.to_string();
                    }
                    None => rec.min_index = format!("none<={budget}"),
                }
            }
            if opts.timing {
                rec.ms = (setup_ms + t.elapsed().as_millis()).to_string();
            }
            rec
        })
        .collect();
    let pareto = pareto_front(&g, &a, budget)
        .into_iter()
        .map(|p| ParetoRecord { group: entry.group.clone(), set: entry.set.clone(), index: p.index, sym_diff: p.sym_diff })
        .collect();
    EntryOutput { records, pareto }
}

/// Runs every manifest entry (in parallel) and returns rows in manifest
/// order, then ε order.
pub fn run_survey(entries: &[ManifestEntry], opts: &SurveyOptions) -> (Vec<SurveyRecord>, Vec<ParetoRecord>) {
    let outputs: Vec<EntryOutput> = entries.par_iter().map(|e| run_entry(e, opts)).collect();
    let mut records = Vec::new();
    let mut pareto = Vec::new();
    for o in outputs {
        records.extend(o.records);
        pareto.extend(o.pareto);
    }
    (records, pareto)
}

pub fn write_csv<T: Serialize, W: std::io::Write>(rows: &[T], header: &[&str], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const SURVEY_HEADER: [&str; 8] = ["group", "set", "k", "eps", "min_index", "sym_diff", "ms", "error"];
pub const PARETO_HEADER: [&str; 4] = ["group", "set", "index", "sym_diff"];
