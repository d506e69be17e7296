use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use plderham::bump::{bump_function, check_bump, BumpSpec};
use plderham::cochains::{colimit, Cohomology, CompactCochains, NormalizedCochains};
use plderham::derham::{colimit_hc, derham_check, derham_check_compact, derham_check_relative};
use plderham::forms::TruncatedComplex;
use plderham::mv::{instances, mv_v1, mv_v2, FinitePushout, HalfLinesAtPoint, PushoutTower};
use plderham::simplicial::text::{self, Document};
use plderham::simplicial::{
    Exhaustion, FiniteExhaustion, Generator, HalfLine, PlaneExhaustion, RealLine, SimplexRef, SimplicialSet, SubSet,
};
use serde::Serialize;

/// Compactly supported PL de Rham theory on simplicial sets, over exact rationals.
#[derive(Parser, Debug)]
#[command(name = "plderham", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Degree bound D of the truncated form complexes; defaults to the dimension of the input.
    #[arg(long, global = true)]
    degree: Option<u32>,

    /// Exhaustion depth: the highest truncation level computed.
    #[arg(long, global = true, default_value_t = 6)]
    exhaustion: usize,

    /// Exit with status 2 when any verdict of the report is negative.
    #[arg(long, global = true)]
    strict: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Simplicial-set text file.
    #[arg(long, conflicts_with = "generate")]
    input: Option<PathBuf>,

    /// Built-in space, `name` or `name:params` (see `generate --list`).
    #[arg(long)]
    generate: Option<String>,

    /// Space to use when the file defines several.
    #[arg(long)]
    space: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    V1,
    V2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tower {
    RealLine,
    HalfLine,
    Plane,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the simplicial identities of every space, subset and map in a file.
    Validate(Input),
    /// Cohomology of normalized cochains and of truncated PL forms.
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// Subset (name, or generators `dim:id …`) to compute relative cohomology.
        #[arg(long)]
        relative: Option<String>,
    },
    /// Compactly supported cohomology as a colimit over an exhaustion.
    CohomologyCompact {
        #[arg(long, value_enum)]
        tower: Option<Tower>,
        #[command(flatten)]
        input: Input,
    },
    /// Compare PL forms with normalized cochains through integration.
    DerhamCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        relative: Option<String>,
        /// Compactly supported comparison over a built-in exhaustion.
        #[arg(long, value_enum)]
        tower: Option<Tower>,
    },
    /// Verify a Mayer–Vietoris sequence.
    MvCheck {
        #[arg(long, value_enum)]
        variant: Variant,
        /// Built-in instance: v1 `circle-arcs`, `torus-cylinders`; v2 `disjoint`, `circle`, `half-lines`.
        #[arg(long)]
        instance: Option<String>,
        #[command(flatten)]
        input: Input,
        /// v1 cover, as subset names or generators.
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        /// v2 pushout data, as map names in the input file.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        iota: Option<String>,
    },
    /// Emit a bump function for `L ⊆ K`.
    Bump {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        l: String,
        /// Defaults to the minimal neighbourhood of `L`.
        #[arg(long)]
        k: Option<String>,
    },
    /// Emit a built-in space in the text format.
    Generate {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

struct Report {
    text: String,
    structured: serde_json::Value,
    ok: bool,
}

impl Report {
    fn new<T: Serialize>(text: String, value: &T, ok: bool) -> Result<Self> {
        Ok(Self { text, structured: serde_json::to_value(value)?, ok })
    }
}

struct Loaded {
    doc: Document,
    space: SimplicialSet,
    label: String,
}

fn load(input: &Input) -> Result<Loaded> {
    let (doc, label) = match (&input.input, &input.generate) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (text::parse_document(&text)?, path.display().to_string())
        }
        (None, Some(spec)) => {
            let x = Generator::parse(spec)?.build()?;
            (Document { spaces: vec![(spec.clone(), x)], ..Document::default() }, spec.clone())
        }
        _ => bail!("give exactly one of --input or --generate"),
    };
    let space = match &input.space {
        Some(name) => doc.space(name).cloned().ok_or_else(|| anyhow!("no space named {name}"))?,
        None => doc.spaces.first().map(|(_, x)| x.clone()).ok_or_else(|| anyhow!("input defines no space"))?,
    };
    let label = match &input.space {
        Some(name) => format!("{label}:{name}"),
        None => label,
    };
    Ok(Loaded { doc, space, label })
}

/// A subset by name, or generated by whitespace-separated `dim:id` tokens.
fn subset(loaded: &Loaded, spec: &str) -> Result<SubSet> {
    if let Some(s) = loaded.doc.subset(spec) {
        if s.host() != &loaded.space {
            bail!("subset {spec} lives on another space");
        }
        return Ok(s.clone());
    }
    let refs = spec
        .split_whitespace()
        .map(|tok| {
            let (d, id) = tok.split_once(':').ok_or_else(|| anyhow!("expected a subset name or `dim:id`, got {tok:?}"))?;
            let dim: usize = d.parse().with_context(|| format!("bad dimension in {tok:?}"))?;
            loaded.space.find(dim, id).ok_or_else(|| anyhow!("unknown {dim}-simplex {id}"))
        })
        .collect::<Result<Vec<SimplexRef>>>()?;
    Ok(SubSet::generated(&loaded.space, refs)?)
}

fn bound_for(degree: Option<u32>, x: &SimplicialSet) -> Result<u32> {
    let d = degree.unwrap_or_else(|| x.dim().unwrap_or(0).max(1) as u32);
    if d < 1 {
        bail!("--degree must be at least 1");
    }
    Ok(d)
}

fn tower(t: Tower) -> Box<dyn Exhaustion> {
    match t {
        Tower::RealLine => Box::new(RealLine),
        Tower::HalfLine => Box::new(HalfLine),
        Tower::Plane => Box::new(PlaneExhaustion),
    }
}

fn names(s: &SubSet) -> Vec<String> {
    s.members().iter().map(|&r| format!("{}:{}", r.dim, s.host().name(r))).collect()
}

#[derive(Serialize)]
struct ValidateReport {
    spaces: Vec<(String, Vec<usize>)>,
    subsets: Vec<(String, String, usize)>,
    maps: Vec<String>,
}

fn validate(input: &Input) -> Result<Report> {
    let loaded = load(input)?;
    let doc = &loaded.doc;
    let mut text = String::new();
    for (name, x) in &doc.spaces {
        x.validate()?;
        text.push_str(&format!("space {name} ok counts {:?}\n", x.counts()));
    }
    for (name, space, s) in &doc.subsets {
        text.push_str(&format!("subset {name} of {space} ok size {}\n", s.len()));
    }
    for (name, f) in &doc.maps {
        f.validate()?;
        text.push_str(&format!("map {name} ok\n"));
    }
    let report = ValidateReport {
        spaces: doc.spaces.iter().map(|(n, x)| (n.clone(), x.counts())).collect(),
        subsets: doc.subsets.iter().map(|(n, s, sub)| (n.clone(), s.clone(), sub.len())).collect(),
        maps: doc.maps.iter().map(|(n, _)| n.clone()).collect(),
    };
    Report::new(text, &report, true)
}

#[derive(Serialize)]
struct CohomologyReport {
    space: String,
    counts: Vec<usize>,
    relative: Option<Vec<String>>,
    degree_bound: u32,
    cochain_betti: Vec<usize>,
    form_betti: Vec<usize>,
}

fn cohomology(cli: &Cli, input: &Input, relative: Option<&str>) -> Result<Report> {
    let loaded = load(input)?;
    let x = &loaded.space;
    let a = match relative {
        Some(spec) => subset(&loaded, spec)?,
        None => SubSet::empty(x),
    };
    let bound = bound_for(cli.degree, x)?;
    let cochains = Cohomology::new(NormalizedCochains::relative(&a).complex()).betti();
    let forms = Cohomology::new(TruncatedComplex::relative(&a, bound)?.complex()).betti();
    let report = CohomologyReport {
        space: loaded.label.clone(),
        counts: x.counts(),
        relative: relative.map(|_| names(&a)),
        degree_bound: bound,
        cochain_betti: cochains.clone(),
        form_betti: forms.clone(),
    };
    let mut text = format!("space {}\ncounts {:?}\n", report.space, report.counts);
    if let Some(r) = &report.relative {
        text.push_str(&format!("relative to {}\n", r.join(" ")));
    }
    text.push_str(&format!("degree bound {bound}\ncochains betti {cochains:?}\nforms betti {forms:?}\n"));
    let ok = cochains == forms;
    Report::new(text, &report, ok)
}

#[derive(Serialize)]
struct CompactReport {
    space: String,
    degree_bound: u32,
    forms: plderham::cochains::Colimit,
    cochains: plderham::cochains::Colimit,
}

fn compact_source(t: Option<Tower>, input: &Input) -> Result<(Box<dyn Exhaustion>, String)> {
    match t {
        Some(t) => {
            let e = tower(t);
            let name = e.name();
            Ok((e, name))
        }
        None => {
            let loaded = load(input)?;
            Ok((Box::new(FiniteExhaustion::new(loaded.space.clone(), loaded.label.clone())), loaded.label))
        }
    }
}

fn cohomology_compact(cli: &Cli, t: Option<Tower>, input: &Input) -> Result<Report> {
    let (e, name) = compact_source(t, input)?;
    let bound = bound_for(cli.degree, &e.level(1))?;
    let forms = colimit_hc(e.as_ref(), bound, cli.exhaustion)?;
    let cochains = colimit(&mut CompactCochains::new(e.as_ref()), cli.exhaustion)?.0;
    let mut text = format!("space {name}\ndegree bound {bound}\n");
    for (label, c) in [("forms", &forms), ("cochains", &cochains)] {
        for (n, b) in c.levels.iter().enumerate() {
            text.push_str(&format!("{label} level {} betti {b:?}\n", n + 1));
        }
        match (&c.betti, c.stable_level) {
            (Some(b), Some(n)) => text.push_str(&format!("{label} compact betti {b:?} stable at level {n}\n")),
            _ => text.push_str(&format!("{label} not stabilized by level {}\n", c.max_level)),
        }
    }
    let ok = forms.stabilized() && cochains.stabilized() && forms.betti == cochains.betti;
    Report::new(text, &CompactReport { space: name, degree_bound: bound, forms, cochains }, ok)
}

fn derham(cli: &Cli, input: &Input, relative: Option<&str>, t: Option<Tower>) -> Result<Report> {
    let report = match t {
        Some(t) => {
            let e = tower(t);
            let bound = bound_for(cli.degree, &e.level(1))?;
            derham_check_compact(e.as_ref(), bound, cli.exhaustion)?
        }
        None => {
            let loaded = load(input)?;
            let bound = bound_for(cli.degree, &loaded.space)?;
            match relative {
                Some(spec) => derham_check_relative(&loaded.label, &subset(&loaded, spec)?, bound)?,
                None => derham_check(&loaded.label, &loaded.space, bound)?,
            }
        }
    };
    Report::new(report.render_text(), &report, report.all_verdicts())
}

fn mv(cli: &Cli, variant: Variant, instance: Option<&str>, input: &Input, sides: [Option<&str>; 4]) -> Result<Report> {
    let [u, v, f, iota] = sides;
    let report = match variant {
        Variant::V1 => {
            let (label, cover) = match instance {
                Some("circle-arcs") => ("circle by arcs".to_string(), instances::circle_by_arcs()?),
                Some("torus-cylinders") => ("torus by cylinders".to_string(), instances::torus_by_cylinders()?),
                Some(other) => bail!("unknown v1 instance {other:?}"),
                None => {
                    let loaded = load(input)?;
                    let (u, v) = (u.ok_or_else(|| anyhow!("--u is required"))?, v.ok_or_else(|| anyhow!("--v is required"))?);
                    let cover = (subset(&loaded, u)?, subset(&loaded, v)?);
                    (loaded.label, cover)
                }
            };
            let bound = bound_for(cli.degree, cover.0.host())?;
            mv_v1(&label, &cover.0, &cover.1, bound)?
        }
        Variant::V2 => {
            let system: Box<dyn PushoutTower> = match instance {
                Some("disjoint") => Box::new(instances::disjoint_union()?),
                Some("circle") => Box::new(instances::circle_from_interval()?),
                Some("half-lines") => Box::new(HalfLinesAtPoint),
                Some(other) => bail!("unknown v2 instance {other:?}"),
                None => {
                    let loaded = load(input)?;
                    let (f, iota) = (f.ok_or_else(|| anyhow!("--f is required"))?, iota.ok_or_else(|| anyhow!("--iota is required"))?);
                    let get = |n: &str| loaded.doc.map(n).cloned().ok_or_else(|| anyhow!("no map named {n}"));
                    Box::new(FinitePushout { label: loaded.label.clone(), f: get(f)?, iota: get(iota)? })
                }
            };
            let (f, iota) = system.level(1)?;
            let top = [f.source(), f.target(), iota.target()].iter().filter_map(|x| x.dim()).max().unwrap_or(0);
            let bound = cli.degree.unwrap_or(top.max(1) as u32);
            mv_v2(system.as_ref(), bound, cli.exhaustion)?
        }
    };
    Report::new(report.render_text(), &report, report.all_verdicts())
}

#[derive(Serialize)]
struct BumpReport {
    space: String,
    l: Vec<String>,
    k: Vec<String>,
    support: Vec<String>,
    form: String,
    verified: bool,
}

fn bump(input: &Input, l: &str, k: Option<&str>) -> Result<Report> {
    let loaded = load(input)?;
    let l = subset(&loaded, l)?;
    let k = match k {
        Some(spec) => subset(&loaded, spec)?,
        None => l.minimal_neighborhood(),
    };
    let phi = bump_function(&BumpSpec::new(l.clone(), k.clone())?)?;
    let verified = check_bump(&phi, &l, &k).is_ok();
    let support = phi.support();
    let report = BumpReport {
        space: loaded.label.clone(),
        l: names(&l),
        k: names(&k),
        support: names(&support),
        form: phi.render(),
        verified,
    };
    let text = format!(
        "space {}\nL {}\nK {}\nsupport {} simplices, {} triangles\nverified {verified}\n{}",
        report.space,
        report.l.join(" "),
        report.k.join(" "),
        support.len(),
        support.members().iter().filter(|r| r.dim == 2).count(),
        report.form
    );
    Report::new(text, &report, verified)
}

fn generate(name: Option<&str>, list: bool) -> Result<Report> {
    if list {
        let text: String = Generator::CATALOGUE.iter().map(|(n, d)| format!("{n:<16} {d}\n")).collect();
        let value: Vec<_> = Generator::CATALOGUE.iter().map(|(n, d)| (n.to_string(), d.to_string())).collect();
        return Report::new(text, &value, true);
    }
    let name = name.ok_or_else(|| anyhow!("give a generator name or --list"))?;
    let x = Generator::parse(name)?.build()?;
    let text = text::render(&x);
    Report::new(text.clone(), &serde_json::json!({ "name": name, "counts": x.counts(), "text": text }), true)
}

fn run(cli: &Cli) -> Result<Report> {
    if cli.exhaustion < 1 {
        bail!("--exhaustion must be at least 1");
    }
    match &cli.command {
        Command::Validate(input) => validate(input),
        Command::Cohomology { input, relative } => cohomology(cli, input, relative.as_deref()),
        Command::CohomologyCompact { tower, input } => cohomology_compact(cli, *tower, input),
        Command::DerhamCheck { input, relative, tower } => derham(cli, input, relative.as_deref(), *tower),
        Command::MvCheck { variant, instance, input, u, v, f, iota } => {
            mv(cli, *variant, instance.as_deref(), input, [u.as_deref(), v.as_deref(), f.as_deref(), iota.as_deref()])
        }
        Command::Bump { input, l, k } => bump(input, l, k.as_deref()),
        Command::Generate { name, list } => generate(name.as_deref(), *list),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&report.structured).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &body).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).context("writing output"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if cli.strict && !report.ok {
        eprintln!("negative verdict");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
