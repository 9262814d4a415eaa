//! Run configuration, dispatch, and report rendering.

pub mod properties;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::constructions::{build_family, catalog, corpus, FamilySpec};
use crate::cyclotomic::{CycClass, CycNum};
use crate::error::{usage, FszError, Result};
use crate::group::{ElementId, Group};
use crate::indicator::{
    abelian_centralizer_indicators, cyclic_restriction_from_table, is_fsz, relevant_degrees, zeta_table, DegreeMode,
    DegreeStatus, FszOptions, FszVerdict, Witness,
};

pub use properties::{run_suites, PropertyResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Fsz,
    FszPlus,
    Indicators,
    Zeta,
    Catalog,
    VerifyProperties,
}

impl Command {
    pub fn parse(s: &str) -> Result<Command> {
        Ok(match s {
            "fsz" => Command::Fsz,
            "fsz-plus" => Command::FszPlus,
            "indicators" => Command::Indicators,
            "zeta" => Command::Zeta,
            "catalog" => Command::Catalog,
            "verify-properties" => Command::VerifyProperties,
            _ => return usage(format!("unknown command '{s}'")),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Fsz => "fsz",
            Command::FszPlus => "fsz-plus",
            Command::Indicators => "indicators",
            Command::Zeta => "zeta",
            Command::Catalog => "catalog",
            Command::VerifyProperties => "verify-properties",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Family(FamilySpec),
    File(PathBuf),
}

impl Source {
    pub fn load(&self) -> Result<Group> {
        match self {
            Source::Family(spec) => build_family(spec),
            Source::File(path) => crate::io::load_group(path),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degrees {
    Auto,
    List(Vec<u64>),
}

impl Degrees {
    /// `auto` or a comma-separated list of positive integers.
    pub fn parse(s: &str) -> Result<Degrees> {
        if s == "auto" {
            return Ok(Degrees::Auto);
        }
        let list = s
            .split(',')
            .map(|t| match t.trim().parse::<u64>() {
                Ok(n) if n > 0 => Ok(n),
                _ => usage(format!("degree '{t}' is not a positive integer")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Degrees::List(list))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => usage(format!("unknown format '{s}' (json, csv or text)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Required except for `catalog`; `verify-properties` defaults to the
    /// built-in corpus.
    pub source: Option<Source>,
    pub degrees: Degrees,
    pub plus: bool,
    pub fail_fast: bool,
    pub workers: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub reductions: bool,
    pub seed: u64,
    pub samples: usize,
    /// For `indicators`: also list `<Res zeta_n, lambda>` over cyclic
    /// subgroups of nonabelian centralizers.
    pub cyclic_restrictions: bool,
}

impl RunConfig {
    pub fn new(command: Command, source: Option<Source>) -> RunConfig {
        RunConfig {
            command,
            source,
            degrees: Degrees::Auto,
            plus: false,
            fail_fast: false,
            workers: 1,
            output: None,
            format: Format::Text,
            reductions: true,
            seed: 1,
            samples: 1000,
            cyclic_restrictions: false,
        }
    }

    fn options(&self) -> FszOptions {
        FszOptions { fail_fast: self.fail_fast, workers: self.workers, reductions: self.reductions }
    }

    fn degrees_for(&self, g: &Group) -> Vec<u64> {
        match &self.degrees {
            Degrees::Auto if self.reductions => relevant_degrees(g, DegreeMode::Reduced),
            Degrees::Auto => relevant_degrees(g, DegreeMode::Full),
            Degrees::List(l) => l.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupMeta {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
    pub class_count: usize,
}

impl GroupMeta {
    fn of(g: &Group) -> GroupMeta {
        GroupMeta {
            name: g.name().to_string(),
            order: g.order(),
            exponent: g.exponent(),
            class_count: g.conjugacy_classes().len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndicatorRow {
    pub n: u64,
    pub u_class: usize,
    pub u: ElementId,
    /// `abelian-centralizer` or `cyclic-restriction`.
    pub kind: String,
    /// Character label (abelian) or `g=<id>,j=<j>` (cyclic restriction).
    pub label: String,
    pub value: CycNum,
    pub class: CycClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaRow {
    pub n: u64,
    pub u_class: usize,
    pub u: ElementId,
    pub g: ElementId,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRow {
    pub family: String,
    pub order: usize,
    pub exponent: u64,
    pub class_count: usize,
    pub fsz: bool,
    pub fsz_plus: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: Command,
    pub group: Option<GroupMeta>,
    pub degrees: Vec<u64>,
    pub verdicts: BTreeMap<u64, DegreeStatus>,
    pub certified: Vec<u64>,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
    pub indicators: Vec<IndicatorRow>,
    /// Classes whose centralizer is nonabelian, so no full indicator list.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped_classes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<ZetaRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<Vec<PropertyResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<Vec<CatalogRow>>,
    pub timing: Timing,
}

impl ReportDocument {
    fn new(command: Command, group: Option<&Group>) -> ReportDocument {
        ReportDocument {
            command,
            group: group.map(GroupMeta::of),
            degrees: Vec::new(),
            verdicts: BTreeMap::new(),
            certified: Vec::new(),
            passed: true,
            witnesses: Vec::new(),
            indicators: Vec::new(),
            skipped_classes: Vec::new(),
            zeta: None,
            properties: None,
            catalog: None,
            timing: Timing { total_ms: 0.0 },
        }
    }

    fn absorb(&mut self, v: FszVerdict) {
        self.degrees = v.degrees.clone();
        self.passed = v.passed();
        self.verdicts = v.verdicts;
        self.certified = v.certified;
        self.witnesses = v.witnesses;
    }
}

fn label_string(label: &[u32]) -> String {
    let parts: Vec<String> = label.iter().map(|j| j.to_string()).collect();
    format!("({})", parts.join(","))
}

fn need_group(config: &RunConfig) -> Result<Group> {
    match &config.source {
        Some(s) => s.load(),
        None => usage(format!("command {} needs --family or --file", config.command.name())),
    }
}

fn indicators(config: &RunConfig, g: &Group, doc: &mut ReportDocument) -> Result<()> {
    let degrees = config.degrees_for(g);
    for (ci, class) in g.conjugacy_classes().iter().enumerate() {
        let u = class.representative;
        for &n in &degrees {
            match abelian_centralizer_indicators(g, u, n) {
                Ok(values) => {
                    for cv in values {
                        doc.indicators.push(IndicatorRow {
                            n,
                            u_class: ci,
                            u,
                            kind: "abelian-centralizer".into(),
                            label: label_string(&cv.label),
                            class: cv.value.classify(),
                            value: cv.value,
                        });
                    }
                }
                Err(FszError::Unsupported(_)) => {
                    if !doc.skipped_classes.contains(&ci) {
                        doc.skipped_classes.push(ci);
                    }
                    if config.cyclic_restrictions {
                        let table = zeta_table(g, u, n)?;
                        let c = g.as_group(&table.centralizer)?;
                        for block in &c.rational_power_classes().blocks {
                            let x = c.embed(block.leader).expect("member");
                            for j in 0..block.order {
                                let value = cyclic_restriction_from_table(g, &table, x, j)?;
                                doc.indicators.push(IndicatorRow {
                                    n,
                                    u_class: ci,
                                    u,
                                    kind: "cyclic-restriction".into(),
                                    label: format!("g={x},j={j}"),
                                    class: value.classify(),
                                    value,
                                });
                            }
                        }
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    doc.degrees = degrees;
    doc.passed = doc.indicators.iter().all(|r| r.class == CycClass::Integer);
    Ok(())
}

/// Executes a configuration. The returned document's `passed` flag drives
/// the CLI exit code.
pub fn run(config: &RunConfig) -> Result<ReportDocument> {
    if config.workers == 0 {
        return usage("workers must be at least 1");
    }
    let start = Instant::now();
    let mut doc = match config.command {
        Command::Fsz | Command::FszPlus => {
            let g = need_group(config)?;
            let plus = config.plus || config.command == Command::FszPlus;
            let mut doc = ReportDocument::new(config.command, Some(&g));
            let v = match (&config.degrees, plus) {
                (Degrees::Auto, _) => is_fsz(&g, plus, &config.options())?,
                (Degrees::List(list), false) => explicit_degrees(&g, list, &config.options())?,
                (Degrees::List(_), true) => {
                    return usage("explicit degrees are not supported in FSZ+ mode (each centralizer uses its own)")
                }
            };
            doc.absorb(v);
            doc
        }
        Command::Indicators => {
            let g = need_group(config)?;
            let mut doc = ReportDocument::new(config.command, Some(&g));
            indicators(config, &g, &mut doc)?;
            doc
        }
        Command::Zeta => {
            let g = need_group(config)?;
            let mut doc = ReportDocument::new(config.command, Some(&g));
            let degrees = config.degrees_for(&g);
            let mut rows = Vec::new();
            for (ci, class) in g.conjugacy_classes().iter().enumerate() {
                for &n in &degrees {
                    let t = zeta_table(&g, class.representative, n)?;
                    rows.extend(t.entries().map(|(x, count)| ZetaRow {
                        n,
                        u_class: ci,
                        u: class.representative,
                        g: x,
                        count,
                    }));
                }
            }
            doc.degrees = degrees;
            doc.zeta = Some(rows);
            doc
        }
        Command::Catalog => {
            let mut doc = ReportDocument::new(config.command, None);
            let mut rows = Vec::new();
            for spec in catalog() {
                let g = build_family(&spec)?;
                let fsz = is_fsz(&g, false, &config.options())?.passed();
                let fsz_plus = is_fsz(&g, true, &config.options())?.passed();
                doc.passed &= fsz && fsz_plus;
                rows.push(CatalogRow {
                    family: spec.to_string(),
                    order: g.order(),
                    exponent: g.exponent(),
                    class_count: g.conjugacy_classes().len(),
                    fsz,
                    fsz_plus,
                });
            }
            doc.catalog = Some(rows);
            doc
        }
        Command::VerifyProperties => {
            let groups = match &config.source {
                Some(s) => vec![s.load()?],
                None => corpus()?,
            };
            let mut doc = ReportDocument::new(config.command, groups.first().filter(|_| groups.len() == 1));
            let results = run_suites(&groups, config.seed, config.samples)?;
            doc.passed = results.iter().all(|r| r.passed());
            doc.properties = Some(results);
            doc
        }
    };
    doc.timing.total_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(doc)
}

fn explicit_degrees(g: &Group, list: &[u64], opts: &FszOptions) -> Result<FszVerdict> {
    let mut merged: Option<FszVerdict> = None;
    for &n in list {
        let v = crate::indicator::is_fsz_n(g, n, opts)?;
        let failed = !v.passed();
        merged = Some(match merged {
            None => v,
            Some(mut m) => {
                m.degrees.extend(v.degrees);
                m.verdicts.extend(v.verdicts);
                m.certified.extend(v.certified);
                m.witnesses.extend(v.witnesses);
                m
            }
        });
        if failed && opts.fail_fast {
            break;
        }
    }
    merged.ok_or_else(|| FszError::Usage("empty degree list".into()))
}

/// JSON rendering with the timing block removed, for reproducibility checks.
pub fn canonical_json(doc: &ReportDocument) -> Result<String> {
    let mut v = serde_json::to_value(doc)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    Ok(serde_json::to_string_pretty(&v)?)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn csv_bytes(doc: &ReportDocument) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc.command {
        Command::Indicators => {
            w.write_record(["n", "u_class", "u", "kind", "label", "value", "class"])?;
            for r in &doc.indicators {
                w.write_record([
                    r.n.to_string(),
                    r.u_class.to_string(),
                    r.u.to_string(),
                    r.kind.clone(),
                    r.label.clone(),
                    r.value.to_string(),
                    r.class.to_string(),
                ])?;
            }
        }
        Command::Zeta => {
            w.write_record(["n", "u_class", "u", "g", "count"])?;
            for r in doc.zeta.iter().flatten() {
                w.write_record([r.n, r.u_class as u64, r.u.0 as u64, r.g.0 as u64, r.count].map(|x| x.to_string()))?;
            }
        }
        Command::Catalog => {
            w.write_record(["family", "order", "exponent", "class_count", "fsz", "fsz_plus"])?;
            for r in doc.catalog.iter().flatten() {
                w.write_record([
                    r.family.clone(),
                    r.order.to_string(),
                    r.exponent.to_string(),
                    r.class_count.to_string(),
                    r.fsz.to_string(),
                    r.fsz_plus.to_string(),
                ])?;
            }
        }
        Command::VerifyProperties => {
            w.write_record(["property", "instances", "failures", "first_failure"])?;
            for r in doc.properties.iter().flatten() {
                w.write_record([
                    r.name.clone(),
                    r.instances.to_string(),
                    r.failures.to_string(),
                    opt(&r.first_failure),
                ])?;
            }
        }
        Command::Fsz | Command::FszPlus => {
            w.write_record([
                "n",
                "centralizer_of",
                "h",
                "u",
                "u_class",
                "u_order",
                "u_class_size",
                "g",
                "g_order",
                "m",
                "count_g",
                "count_gm",
            ])?;
            for x in &doc.witnesses {
                w.write_record([
                    x.n.to_string(),
                    opt(&x.centralizer_of),
                    opt(&x.h),
                    x.u.to_string(),
                    x.u_class.to_string(),
                    x.u_order.to_string(),
                    x.u_class_size.to_string(),
                    x.g.to_string(),
                    x.g_order.to_string(),
                    x.m.to_string(),
                    x.count_g.to_string(),
                    x.count_gm.to_string(),
                ])?;
            }
        }
    }
    w.into_inner().map_err(|e| FszError::Io(e.into_error()))
}

fn text(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let verdict = |p: bool| if p { "pass" } else { "FAIL" };
    if let Some(g) = &doc.group {
        writeln!(s, "group {}: order {}, exponent {}, {} classes", g.name, g.order, g.exponent, g.class_count).unwrap();
    }
    match doc.command {
        Command::Fsz | Command::FszPlus => {
            let degrees: Vec<String> = doc.degrees.iter().map(|d| d.to_string()).collect();
            writeln!(s, "degrees tested: {{{}}}", degrees.join(",")).unwrap();
            for (n, st) in &doc.verdicts {
                let tag = if doc.certified.contains(n) { " (certified by element orders)" } else { "" };
                writeln!(s, "n = {n}: {}{tag}", verdict(*st == DegreeStatus::Pass)).unwrap();
            }
            for w in &doc.witnesses {
                let inside = match (w.centralizer_of, w.h) {
                    (Some(c), Some(h)) => format!("in C(h={h}, class {c}): "),
                    _ => String::new(),
                };
                writeln!(
                    s,
                    "  {inside}n={} u={} (class {}, order {}, size {}) g={} (order {}) m={}: |G_n(u,g)| = {} but |G_n(u,g^m)| = {}",
                    w.n, w.u, w.u_class, w.u_order, w.u_class_size, w.g, w.g_order, w.m, w.count_g, w.count_gm
                )
                .unwrap();
            }
            let what = if doc.command == Command::FszPlus { "FSZ+" } else { "FSZ" };
            writeln!(s, "{what}: {}", verdict(doc.passed)).unwrap();
        }
        Command::Indicators => {
            for r in &doc.indicators {
                let head = match r.kind.as_str() {
                    "abelian-centralizer" => format!("nu_{}(u={}, eta={})", r.n, r.u, r.label),
                    _ => format!("res_{}(u={}, {})", r.n, r.u, r.label),
                };
                let flag = if r.class == CycClass::Integer { "" } else { "   !!! NON-INTEGER !!!" };
                writeln!(s, "{head} = {}{flag}", r.value).unwrap();
            }
            if !doc.skipped_classes.is_empty() {
                let list: Vec<String> = doc.skipped_classes.iter().map(|c| c.to_string()).collect();
                writeln!(s, "classes with nonabelian centralizer (no full list): {}", list.join(",")).unwrap();
            }
        }
        Command::Zeta => {
            for r in doc.zeta.iter().flatten() {
                writeln!(s, "zeta_{}(u={}, g={}) = {}", r.n, r.u, r.g, r.count).unwrap();
            }
        }
        Command::Catalog => {
            for r in doc.catalog.iter().flatten() {
                writeln!(
                    s,
                    "{:<32} order {:>4}  exponent {:>4}  classes {:>3}  FSZ {}  FSZ+ {}",
                    r.family,
                    r.order,
                    r.exponent,
                    r.class_count,
                    verdict(r.fsz),
                    verdict(r.fsz_plus)
                )
                .unwrap();
            }
        }
        Command::VerifyProperties => {
            for r in doc.properties.iter().flatten() {
                writeln!(s, "{:<34} {:>6} instances  {} failures", r.name, r.instances, r.failures).unwrap();
                if let Some(f) = &r.first_failure {
                    writeln!(s, "    first failure: {f}").unwrap();
                }
            }
            writeln!(s, "properties: {}", verdict(doc.passed)).unwrap();
        }
    }
    writeln!(s, "time: {:.1} ms", doc.timing.total_ms).unwrap();
    s
}

/// Renders `doc` in `format`.
pub fn render(doc: &ReportDocument, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(doc)?;
            v.push(b'\n');
            v
        }
        Format::Csv => csv_bytes(doc)?,
        Format::Text => text(doc).into_bytes(),
    })
}

/// Writes `doc` to `out`; returns the number of bytes written.
pub fn emit(doc: &ReportDocument, format: Format, out: &mut dyn Write) -> Result<usize> {
    let bytes = render(doc, format)?;
    out.write_all(&bytes)?;
    Ok(bytes.len())
}
