//! The `ftree` command line.
//!
//! Exit codes: `0` on success, `1` on a domain error (reported on stderr as
//! `error[KIND]: message`), `2` on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::abelian::abelian_invariants;
use crate::diagram::{diagram_to_link, parse_diagram, render_with_peripherals, wirtinger};
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fundtree::{compare_g_images, surjection_census, CompareScope, GImageOptions, HandlebodyLink};
use crate::group::{format, simplify, Presentation};
use crate::homs::{classify, is_surjective, plan_search, ClassifyMode, SearchOptions, DEFAULT_NODE_BUDGET};
use crate::tree::{are_isomorphic, are_isomorphic_unbased, canonical_code, unbased_code, BasedTree};

#[derive(Parser, Debug)]
#[command(name = "ftree", version, about = "Finite-group and tree invariants of links and handlebody links")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for homomorphism search (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum number of search nodes before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Identify homomorphisms up to: none, conj or aut.
    #[arg(long, global = true, default_value = "aut")]
    pub up_to: ClassifyMode,
}

impl Global {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            node_budget: self.node_budget,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a presentation, from a presentation file or a `.hld` diagram.
    Presentation(PresentationArgs),
    /// Count or list homomorphisms onto a finite group.
    Homs(HomsArgs),
    /// Abelian invariants of a presentation.
    Abelianize(SourceArgs),
    /// Based trees: canonical codes and isomorphism.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// G-image of a handlebody link.
    Gimage(GimageArgs),
    /// Compare the G-images of two handlebody links.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Presentation file (text or JSON).
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    /// Diagram file in `.hld` format.
    #[arg(long)]
    pub diagram: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SourceArgs {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Args, Debug)]
pub struct PresentationArgs {
    #[command(flatten)]
    pub source: Source,
    /// Apply Tietze simplification.
    #[arg(long)]
    pub simplify: bool,
}

#[derive(Args, Debug)]
pub struct HomsArgs {
    #[command(flatten)]
    pub source: Source,
    /// Target group: A4, S4, Z6, D5, or perm:(1 2 3),(1 2).
    #[arg(long)]
    pub group: String,
    /// Only surjective homomorphisms.
    #[arg(long)]
    pub surjective: bool,
    /// List orbit representatives in text output (JSON always lists them).
    #[arg(long)]
    pub list: bool,
}

#[derive(Subcommand, Debug)]
pub enum TreeCommand {
    /// Based isomorphism of two JSON trees.
    Iso { a: PathBuf, b: PathBuf },
    /// Canonical code of a JSON tree.
    Code {
        tree: PathBuf,
        /// Forget the base.
        #[arg(long)]
        unbased: bool,
    },
    /// Isomorphism after forgetting the base.
    Unbased { a: PathBuf, b: PathBuf },
}

#[derive(Args, Debug)]
pub struct GimageArgs {
    /// Link file: `.hld` diagram or JSON link.
    #[arg(long)]
    pub link: PathBuf,
    /// Target group.
    #[arg(long)]
    pub group: String,
    /// Comma-separated component ids; all `fold`-subsets when omitted.
    #[arg(long, value_delimiter = ',')]
    pub components: Vec<u32>,
    /// Number of components examined together.
    #[arg(long, default_value_t = 1)]
    pub fold: usize,
    /// Print the text table (default unless --json).
    #[arg(long)]
    pub table: bool,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Exactly two link files.
    #[arg(long, num_args = 1, required = true)]
    pub link: Vec<PathBuf>,
    /// Target group.
    #[arg(long)]
    pub group: String,
    /// Number of components examined together.
    #[arg(long, default_value_t = 1)]
    pub fold: usize,
    /// Compare peripheral classes as well as kernel classes.
    #[arg(long)]
    pub full: bool,
}

/// Run with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error[{}]: {msg}", e.kind());
            1
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn is_diagram(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "hld")
}

fn load_presentation(src: &Source) -> Result<Presentation> {
    match (&src.presentation, &src.diagram) {
        (Some(p), _) if is_diagram(p) => Ok(wirtinger(&parse_diagram(&read(p)?)?)?.0),
        (Some(p), _) => format::parse_any(&read(p)?),
        (None, Some(d)) => Ok(wirtinger(&parse_diagram(&read(d)?)?)?.0),
        (None, None) => Err(Error::Precondition("no input given".into())),
    }
}

/// Load a link from a `.hld` diagram or a JSON link file.
pub fn load_link(path: &Path) -> Result<HandlebodyLink> {
    let text = read(path)?;
    let name = path.file_stem().map_or("link".into(), |s| s.to_string_lossy().into_owned());
    if is_diagram(path) {
        diagram_to_link(&parse_diagram(&text)?, name)
    } else {
        let mut l = HandlebodyLink::from_json(&text)?;
        if l.name == "link" {
            l.name = name;
        }
        Ok(l)
    }
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Presentation(a) => {
            let (mut p, ext) = match (&a.source.diagram, &a.source.presentation) {
                (Some(d), _) => {
                    let (p, e) = wirtinger(&parse_diagram(&read(d)?)?)?;
                    (p, Some(e))
                }
                _ => (load_presentation(&a.source)?, None),
            };
            let mut ext = ext;
            if a.simplify {
                let rw = simplify(&p)?;
                if let Some(e) = ext.as_mut() {
                    for c in &mut e.components {
                        c.meridians = c.meridians.iter().map(|w| rw.map_word(w)).collect();
                        c.longitudes = c.longitudes.iter().map(|w| rw.map_word(w)).collect();
                    }
                }
                p = rw.presentation;
            }
            if g.json {
                #[derive(Serialize)]
                struct Out<'a> {
                    presentation: format::PresentationJson,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    peripherals: Option<&'a crate::diagram::PeripheralExtraction>,
                }
                json(out, &Out { presentation: (&p).into(), peripherals: ext.as_ref() })
            } else {
                match &ext {
                    Some(e) => write!(out, "{}", render_with_peripherals(&p, e))?,
                    None => write!(out, "{p}")?,
                }
                Ok(())
            }
        }
        Command::Homs(a) => {
            let p = load_presentation(&a.source)?;
            let grp: FiniteGroup = a.group.parse()?;
            let plan = plan_search(&p);
            let mut homs = crate::homs::enumerate_homomorphisms(&p, &grp, &plan, g.search())?;
            let total = homs.len();
            if a.surjective {
                homs.retain(|h| is_surjective(h, &grp));
            }
            let orbits = classify(&homs, &grp, g.up_to)?;
            #[derive(Serialize)]
            struct OrbitOut {
                images: Vec<String>,
                size: usize,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                group: &'a str,
                mode: ClassifyMode,
                total: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                surjective: Option<usize>,
                orbits: Vec<OrbitOut>,
            }
            let o = Out {
                group: grp.name(),
                mode: g.up_to,
                total,
                surjective: a.surjective.then_some(homs.len()),
                orbits: orbits
                    .iter()
                    .map(|o| OrbitOut {
                        images: o.representative.images.iter().map(|&e| grp.element_label(e)).collect(),
                        size: o.size,
                    })
                    .collect(),
            };
            if g.json {
                json(out, &o)
            } else {
                writeln!(out, "homomorphisms: {}", o.total)?;
                if let Some(s) = o.surjective {
                    writeln!(out, "surjective: {s}")?;
                }
                writeln!(out, "orbits ({}): {}", o.mode, o.orbits.len())?;
                if a.list {
                    for r in &o.orbits {
                        let pairs: Vec<String> =
                            p.names().iter().zip(&r.images).map(|(n, e)| format!("{n}->{e}")).collect();
                        writeln!(out, "  [{}] {}", r.size, pairs.join(" "))?;
                    }
                }
                Ok(())
            }
        }
        Command::Abelianize(a) => {
            let p = load_presentation(&a.source)?;
            let inv = abelian_invariants(&p);
            if g.json {
                json(out, &inv)
            } else {
                writeln!(out, "{inv}")?;
                Ok(())
            }
        }
        Command::Tree(t) => {
            let load = |p: &PathBuf| -> Result<BasedTree> { BasedTree::from_json(&read(p)?) };
            let verdict = |iso: bool| if iso { "isomorphic" } else { "not-isomorphic" };
            let line = match t {
                TreeCommand::Iso { a, b } => verdict(are_isomorphic(&load(a)?, &load(b)?)).to_string(),
                TreeCommand::Unbased { a, b } => verdict(are_isomorphic_unbased(&load(a)?, &load(b)?)).to_string(),
                TreeCommand::Code { tree, unbased } => {
                    let t = load(tree)?;
                    if *unbased { unbased_code(&t) } else { canonical_code(&t) }.to_string()
                }
            };
            if g.json {
                json(out, &serde_json::json!({ "result": line }))
            } else {
                writeln!(out, "{line}")?;
                Ok(())
            }
        }
        Command::Gimage(a) => {
            let link = load_link(&a.link)?;
            let grp: FiniteGroup = a.group.parse()?;
            let opts = GImageOptions {
                mode: g.up_to,
                search: g.search(),
                simplify: true,
            };
            let census = surjection_census(&link, &grp, opts)?;
            let reports = if a.components.is_empty() {
                census.profile(a.fold)?.reports
            } else {
                vec![census.report(&a.components)?]
            };
            if a.table || !g.json {
                for r in &reports {
                    write!(out, "{}", r.render_table())?;
                }
            }
            if g.json {
                json(out, &reports)?;
            }
            Ok(())
        }
        Command::Compare(a) => {
            if a.link.len() != 2 {
                return Err(Error::Precondition(format!("compare needs exactly two --link, got {}", a.link.len())));
            }
            let grp: FiniteGroup = a.group.parse()?;
            let opts = GImageOptions {
                mode: g.up_to,
                search: g.search(),
                simplify: true,
            };
            let profile = |p: &PathBuf| -> Result<_> { surjection_census(&load_link(p)?, &grp, opts)?.profile(a.fold) };
            let (pa, pb) = (profile(&a.link[0])?, profile(&a.link[1])?);
            let scope = if a.full { CompareScope::Full } else { CompareScope::Kernel };
            let v = compare_g_images(&pa, &pb, scope)?;
            if g.json {
                json(out, &serde_json::json!({ "verdict": v, "fold": a.fold, "group": grp.name() }))
            } else {
                writeln!(out, "{v}")?;
                Ok(())
            }
        }
    }
}

impl clap::ValueEnum for ClassifyMode {
    fn value_variants<'a>() -> &'a [Self] {
        &[ClassifyMode::None, ClassifyMode::Conjugation, ClassifyMode::Automorphism]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            ClassifyMode::None => "none",
            ClassifyMode::Conjugation => "conj",
            ClassifyMode::Automorphism => "aut",
        }))
    }
}
