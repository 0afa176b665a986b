//! Directories of AGS group files, classified in parallel into the
//! per-dimension diffuse / non-diffuse table.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::GroupSpec;
use crate::ags::read_group;
use crate::analysis::{is_solvable, sylow_all_cyclic};
use crate::decider::{decide, shortcut_verdict, Outcome, Shortcut};
use crate::error::{Error, Result};
use crate::holonomy::{validate_with_bound, DEFAULT_MAX_ORDER};
use crate::hw::hw_search;

#[derive(Clone, Debug)]
pub struct Catalog {
    pub source: Vec<PathBuf>,
    pub entries: Vec<(String, GroupSpec)>,
}

fn collect_files(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let read = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for entry in read {
        let path = entry.map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?.path();
        if path.is_dir() {
            collect_files(&path, out)?;
        } else if path.extension().is_some_and(|e| e == "ags") {
            out.push(path);
        }
    }
    Ok(())
}

impl Catalog {
    /// Entries sorted by name; names must be unique.
    pub fn from_entries(source: Vec<PathBuf>, mut entries: Vec<(String, GroupSpec)>) -> Result<Self> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid(format!("duplicate catalog name `{}`", w[0].0)));
        }
        Ok(Catalog { source, entries })
    }

    /// Every `*.ags` file below the given paths (files are taken as is).
    /// A group is named by its `name` line, else by its file stem.
    pub fn load(paths: &[PathBuf]) -> Result<Self> {
        let mut files = Vec::new();
        for p in paths {
            if p.is_dir() {
                collect_files(p, &mut files)?;
            } else {
                files.push(p.clone());
            }
        }
        files.sort();
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        for f in files {
            if !seen.insert(f.clone()) {
                continue;
            }
            let spec =
                read_group(&f).map_err(|e| Error::InFile { path: f.display().to_string(), source: Box::new(e) })?;
            let name = match spec.name() {
                Some(n) => n.to_string(),
                None => f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            };
            entries.push((name, spec));
        }
        Self::from_entries(paths.to_vec(), entries)
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        Self::load(&[dir.to_path_buf()])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub jobs: usize,
    /// Also run the Hantzsche–Wendt search with this exploration bound.
    pub hw_explore_bound: Option<usize>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { jobs: 1, hw_explore_bound: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub name: String,
    pub dimension: usize,
    pub betti: usize,
    pub holonomy_order: usize,
    pub solvable: bool,
    pub sylow_cyclic: bool,
    pub verdict: String,
    pub chain: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hw: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCount {
    pub dimension: usize,
    pub total: usize,
    pub non_diffuse: usize,
    pub diffuse: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvalidEntry {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationTable {
    pub rows: Vec<ClassificationRow>,
    pub summary: Vec<DimensionCount>,
    pub invalid: Vec<InvalidEntry>,
}

const CSV_HEADER: &str = "name,dimension,betti,holonomy_order,solvable,sylow_cyclic,verdict,chain";

impl ClassificationTable {
    pub fn count(&self, dimension: usize) -> Option<DimensionCount> {
        self.summary.iter().find(|c| c.dimension == dimension).copied()
    }

    pub fn to_csv(&self) -> String {
        let with_hw = self.rows.iter().any(|r| r.hw.is_some());
        let mut out = String::from(CSV_HEADER);
        if with_hw {
            out.push_str(",hw");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.name, r.dimension, r.betti, r.holonomy_order, r.solvable, r.sylow_cyclic, r.verdict, r.chain
            );
            if with_hw {
                let _ = write!(out, ",{}", r.hw.as_deref().unwrap_or(""));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Columns: dimension, total, non-diffuse, diffuse.
    pub fn summary_table(&self) -> String {
        let mut out = format!("{:>9} {:>6} {:>11} {:>7}\n", "dimension", "total", "non-diffuse", "diffuse");
        for c in &self.summary {
            let _ = writeln!(out, "{:>9} {:>6} {:>11} {:>7}", c.dimension, c.total, c.non_diffuse, c.diffuse);
        }
        out
    }
}

/// Classifies one group; the inner error is a validation failure.
pub fn classify_group(
    name: &str,
    spec: &GroupSpec,
    options: &ClassifyOptions,
) -> Result<std::result::Result<ClassificationRow, String>> {
    let (report, h) = validate_with_bound(spec, DEFAULT_MAX_ORDER);
    let h = match h {
        Some(h) if report.is_bieberbach() => h,
        _ => return Ok(Err(report.failures.join("; "))),
    };
    let verdict = decide(spec)?;
    let expected = match shortcut_verdict(&h) {
        Shortcut::Diffuse => Some(Outcome::Diffuse),
        Shortcut::NonDiffuse => Some(Outcome::NonDiffuse),
        Shortcut::Inconclusive => None,
    };
    if expected.is_some_and(|o| o != verdict.outcome) {
        return Err(Error::Internal(format!("{name}: holonomy shortcut contradicts the reduction verdict")));
    }
    let hw = match options.hw_explore_bound {
        Some(bound) => Some(hw_search(spec, bound)?.label().to_string()),
        None => None,
    };
    Ok(Ok(ClassificationRow {
        name: name.to_string(),
        dimension: spec.dimension(),
        betti: h.fixed_space_rank(),
        holonomy_order: h.order(),
        solvable: is_solvable(&h),
        sylow_cyclic: sylow_all_cyclic(&h),
        verdict: verdict.outcome.as_str().to_string(),
        chain: verdict.chain.to_string(),
        hw,
    }))
}

/// Classifies every entry on a pool of `options.jobs` threads; rows come back in name order.
pub fn classify_catalog(catalog: &Catalog, options: &ClassifyOptions) -> Result<ClassificationTable> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        catalog.entries.par_iter().map(|(name, spec)| classify_group(name, spec, options)).collect::<Result<Vec<_>>>()
    })?;

    let mut rows = Vec::new();
    let mut invalid = Vec::new();
    for ((name, _), r) in catalog.entries.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(reason) => invalid.push(InvalidEntry { name: name.clone(), reason }),
        }
    }
    let mut counts: BTreeMap<usize, DimensionCount> = BTreeMap::new();
    for r in &rows {
        let c = counts.entry(r.dimension).or_insert(DimensionCount {
            dimension: r.dimension,
            total: 0,
            non_diffuse: 0,
            diffuse: 0,
        });
        c.total += 1;
        if r.verdict == Outcome::Diffuse.as_str() {
            c.diffuse += 1;
        } else {
            c.non_diffuse += 1;
        }
    }
    Ok(ClassificationTable { rows, summary: counts.into_values().collect(), invalid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_hw_entry() {
        let cat = Catalog::from_entries(vec![], vec![("hw".into(), fixtures::hw_standard())]).unwrap();
        let t = classify_catalog(&cat, &ClassifyOptions::default()).unwrap();
        assert_eq!(t.count(3), Some(DimensionCount { dimension: 3, total: 1, non_diffuse: 1, diffuse: 0 }));
        assert_eq!(t.to_csv(), format!("{CSV_HEADER}\nhw,3,0,4,true,false,non-diffuse,3:0:TrivialCenter\n"));
    }

    #[test]
    fn invalid_entries_are_excluded() {
        let cat = Catalog::from_entries(
            vec![],
            vec![("d".into(), fixtures::infinite_dihedral()), ("kb".into(), fixtures::klein_bottle())],
        )
        .unwrap();
        let t = classify_catalog(&cat, &ClassifyOptions { jobs: 2, hw_explore_bound: Some(10) }).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].hw.as_deref(), Some("not-contained"));
        assert_eq!(t.invalid.len(), 1);
        assert_eq!(t.invalid[0].name, "d");
        assert!(t.to_json().contains("\"verdict\": \"diffuse\""));
    }

    #[test]
    fn duplicate_names_rejected() {
        let e = vec![("a".into(), fixtures::klein_bottle()), ("a".into(), fixtures::hw_standard())];
        assert!(Catalog::from_entries(vec![], e).is_err());
    }

    #[test]
    fn summary_layout() {
        let cat = Catalog::from_entries(vec![], vec![("kb".into(), fixtures::klein_bottle())]).unwrap();
        let t = classify_catalog(&cat, &ClassifyOptions::default()).unwrap();
        assert_eq!(
            t.summary_table().lines().nth(1).unwrap().split_whitespace().collect::<Vec<_>>(),
            ["2", "1", "0", "1"]
        );
    }
}
