//! The `.hld` diagram format.
//!
//! ```text
//! # trefoil
//! component K: a b c
//! X: o=c u=a>b s=-
//! X: o=a u=b>c s=-
//! X: o=b u=c>a s=-
//! ```
//!
//! * `component NAME: arc…` declares the arcs of one component. An arc
//!   preceded by `loop` is a closed circle with no endpoints.
//! * `X: o=OVER u=IN>OUT s=±` is a crossing: the under strand leaves arc
//!   `IN` and continues as arc `OUT` beneath arc `OVER`. The sign is `+`
//!   when the under strand passes from the right of the over strand to its
//!   left.
//! * `V: a> b< c>` is a trivalent vertex listing its arcs counterclockwise;
//!   `>` marks an arc leaving the vertex and `<` one arriving.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub name: String,
    pub component: usize,
    pub closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexEnd {
    pub arc: usize,
    pub outgoing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Counterclockwise.
    pub ends: Vec<VertexEnd>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramComponent {
    pub name: String,
    pub arcs: Vec<usize>,
}

/// Where an arc starts or ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Crossing(usize),
    Vertex(usize),
}

/// A validated diagram of a link or spatial graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCode {
    pub arcs: Vec<Arc>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
    pub components: Vec<DiagramComponent>,
    starts: Vec<Option<Endpoint>>,
    ends: Vec<Option<Endpoint>>,
}

impl DiagramCode {
    pub fn arc_id(&self, name: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.name == name)
    }

    pub fn start(&self, arc: usize) -> Option<Endpoint> {
        self.starts[arc]
    }

    pub fn end(&self, arc: usize) -> Option<Endpoint> {
        self.ends[arc]
    }

    /// First Betti number of a component's underlying graph.
    pub fn spine_genus(&self, component: usize) -> usize {
        let arcs = &self.components[component].arcs;
        let vs = self
            .vertices
            .iter()
            .filter(|v| v.ends.iter().any(|e| self.arcs[e.arc].component == component))
            .count();
        // arcs are edges; under-crossings and closed arcs contribute one point each
        let joins = self
            .crossings
            .iter()
            .filter(|x| self.arcs[x.under_in].component == component)
            .count();
        let closed = arcs.iter().filter(|&&a| self.arcs[a].closed).count();
        arcs.len() + 1 - vs - joins - closed
    }

    /// Build and validate from parts; `lines` maps items to source lines for errors.
    fn validate(mut self, spans: &Spans) -> Result<Self> {
        let n = self.arcs.len();
        let mut starts: Vec<Option<Endpoint>> = vec![None; n];
        let mut ends: Vec<Option<Endpoint>> = vec![None; n];
        let set = |slot: &mut Option<Endpoint>, at: Endpoint, what: &str, name: &str, pos: (usize, usize)| {
            if slot.is_some() {
                return Err(Error::parse(pos.0, pos.1, format!("arc {name} has two {what}s")));
            }
            *slot = Some(at);
            Ok(())
        };
        for (i, x) in self.crossings.iter().enumerate() {
            let pos = spans.crossings[i];
            let (a, b) = (&self.arcs[x.under_in], &self.arcs[x.under_out]);
            if a.component != b.component {
                return Err(Error::parse(pos.0, pos.1, format!(
                    "under strand {}>{} joins different components",
                    a.name, b.name
                )));
            }
            if a.closed || b.closed {
                return Err(Error::parse(pos.0, pos.1, "a closed loop arc cannot pass under".to_string()));
            }
            set(&mut ends[x.under_in], Endpoint::Crossing(i), "end", &a.name, pos)?;
            set(&mut starts[x.under_out], Endpoint::Crossing(i), "start", &b.name, pos)?;
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let pos = spans.vertices[i];
            if v.ends.len() != 3 {
                return Err(Error::parse(pos.0, pos.1, format!("vertex has {} arcs, expected 3", v.ends.len())));
            }
            let comp = self.arcs[v.ends[0].arc].component;
            for e in &v.ends {
                let a = &self.arcs[e.arc];
                if a.component != comp {
                    return Err(Error::parse(pos.0, pos.1, format!("vertex joins arcs of different components ({})", a.name)));
                }
                if a.closed {
                    return Err(Error::parse(pos.0, pos.1, format!("closed arc {} cannot meet a vertex", a.name)));
                }
                let slot = if e.outgoing { &mut starts[e.arc] } else { &mut ends[e.arc] };
                set(slot, Endpoint::Vertex(i), if e.outgoing { "start" } else { "end" }, &a.name, pos)?;
            }
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if !a.closed && (starts[i].is_none() || ends[i].is_none()) {
                let pos = spans.arcs[i];
                let which = if starts[i].is_none() { "start" } else { "end" };
                return Err(Error::parse(pos.0, pos.1, format!("dangling arc {}: no {which}", a.name)));
            }
        }
        self.starts = starts;
        self.ends = ends;
        // each component is connected along its arcs
        for (c, comp) in self.components.iter().enumerate() {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            for x in &self.crossings {
                let (a, b) = (find(&mut parent, x.under_in), find(&mut parent, x.under_out));
                parent[a] = b;
            }
            for v in &self.vertices {
                for e in &v.ends[1..] {
                    let (a, b) = (find(&mut parent, v.ends[0].arc), find(&mut parent, e.arc));
                    parent[a] = b;
                }
            }
            let root = find(&mut parent, comp.arcs[0]);
            if comp.arcs.iter().any(|&a| find(&mut parent, a) != root) {
                let pos = spans.components[c];
                return Err(Error::parse(pos.0, pos.1, format!("component {} is not connected", comp.name)));
            }
        }
        Ok(self)
    }
}

#[derive(Default)]
struct Spans {
    arcs: Vec<(usize, usize)>,
    crossings: Vec<(usize, usize)>,
    vertices: Vec<(usize, usize)>,
    components: Vec<(usize, usize)>,
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn valid_arc_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_diagram(text: &str) -> Result<DiagramCode> {
    let mut arcs: Vec<Arc> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut components: Vec<DiagramComponent> = Vec::new();
    let mut spans = Spans::default();
    // crossings and vertices reference arcs that may be declared later
    let mut raw_crossings: Vec<(usize, Vec<(usize, String)>)> = Vec::new();
    let mut raw_vertices: Vec<(usize, Vec<(usize, String)>)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let toks = tokens(line);
        let (c0, head) = toks[0];
        if head == "component" {
            let Some(&(cn, name_tok)) = toks.get(1) else {
                return Err(Error::parse(ln, c0, "component needs a name"));
            };
            let Some(name) = name_tok.strip_suffix(':') else {
                return Err(Error::parse(ln, cn + name_tok.chars().count(), "expected ':' after the component name"));
            };
            if name.is_empty() {
                return Err(Error::parse(ln, cn, "empty component name"));
            }
            let cid = components.len();
            let mut comp_arcs = Vec::new();
            let mut closed = false;
            for &(col, t) in &toks[2..] {
                if t == "loop" {
                    closed = true;
                    continue;
                }
                if !valid_arc_name(t) {
                    return Err(Error::parse(ln, col, format!("invalid arc name {t:?}")));
                }
                if names.contains_key(t) {
                    return Err(Error::parse(ln, col, format!("arc {t} declared twice")));
                }
                names.insert(t.to_string(), arcs.len());
                comp_arcs.push(arcs.len());
                spans.arcs.push((ln, col));
                arcs.push(Arc {
                    name: t.to_string(),
                    component: cid,
                    closed,
                });
                closed = false;
            }
            if closed {
                return Err(Error::parse(ln, line.trim_end().chars().count(), "'loop' must precede an arc name"));
            }
            if comp_arcs.is_empty() {
                return Err(Error::parse(ln, cn, format!("component {name} has no arcs")));
            }
            spans.components.push((ln, c0));
            components.push(DiagramComponent {
                name: name.to_string(),
                arcs: comp_arcs,
            });
        } else if head == "X:" {
            raw_crossings.push((ln, toks[1..].iter().map(|&(c, t)| (c, t.to_string())).collect()));
        } else if head == "V:" {
            raw_vertices.push((ln, toks[1..].iter().map(|&(c, t)| (c, t.to_string())).collect()));
        } else {
            return Err(Error::parse(ln, c0, format!("unknown line kind {head:?} (component, X:, V:)")));
        }
    }

    let lookup = |ln: usize, col: usize, name: &str| {
        names
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(ln, col, format!("unknown arc {name:?}")))
    };

    let mut crossings = Vec::new();
    for (ln, toks) in &raw_crossings {
        let (mut over, mut under, mut sign) = (None, None, None);
        for (col, t) in toks {
            let (key, val) = t
                .split_once('=')
                .ok_or_else(|| Error::parse(*ln, *col, format!("expected key=value, got {t:?}")))?;
            let vcol = col + key.chars().count() + 1;
            match key {
                "o" => over = Some(lookup(*ln, vcol, val)?),
                "u" => {
                    let (a, b) = val
                        .split_once('>')
                        .ok_or_else(|| Error::parse(*ln, vcol, "under strand must read IN>OUT"))?;
                    under = Some((lookup(*ln, vcol, a)?, lookup(*ln, vcol + a.chars().count() + 1, b)?));
                }
                "s" => {
                    sign = Some(match val {
                        "+" | "+1" => 1,
                        "-" | "-1" => -1,
                        _ => return Err(Error::parse(*ln, vcol, format!("sign must be + or -, got {val:?}"))),
                    })
                }
                _ => return Err(Error::parse(*ln, *col, format!("unknown crossing field {key:?}"))),
            }
        }
        let missing = |f: &str| Error::parse(*ln, 1, format!("crossing is missing {f}="));
        let (under_in, under_out) = under.ok_or_else(|| missing("u"))?;
        crossings.push(Crossing {
            over: over.ok_or_else(|| missing("o"))?,
            under_in,
            under_out,
            sign: sign.ok_or_else(|| missing("s"))?,
        });
        spans.crossings.push((*ln, 1));
    }

    let mut vertices = Vec::new();
    for (ln, toks) in &raw_vertices {
        let mut ends = Vec::new();
        for (col, t) in toks {
            let (name, outgoing) = if let Some(n) = t.strip_suffix('>') {
                (n, true)
            } else if let Some(n) = t.strip_suffix('<') {
                (n, false)
            } else {
                return Err(Error::parse(*ln, *col, format!("vertex arc {t:?} needs '>' or '<'")));
            };
            ends.push(VertexEnd {
                arc: lookup(*ln, *col, name)?,
                outgoing,
            });
        }
        vertices.push(Vertex { ends });
        spans.vertices.push((*ln, 1));
    }

    let n = arcs.len();
    DiagramCode {
        arcs,
        crossings,
        vertices,
        components,
        starts: vec![None; n],
        ends: vec![None; n],
    }
    .validate(&spans)
}

impl FromStr for DiagramCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}

impl fmt::Display for DiagramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            write!(f, "component {}:", c.name)?;
            for &a in &c.arcs {
                let arc = &self.arcs[a];
                write!(f, " {}{}", if arc.closed { "loop " } else { "" }, arc.name)?;
            }
            writeln!(f)?;
        }
        for x in &self.crossings {
            writeln!(
                f,
                "X: o={} u={}>{} s={}",
                self.arcs[x.over].name,
                self.arcs[x.under_in].name,
                self.arcs[x.under_out].name,
                if x.sign > 0 { "+" } else { "-" }
            )?;
        }
        for v in &self.vertices {
            write!(f, "V:")?;
            for e in &v.ends {
                write!(f, " {}{}", self.arcs[e.arc].name, if e.outgoing { '>' } else { '<' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Per-component check of spine genus against expectations.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GenusCheck {
    pub component: String,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub checks: Vec<GenusCheck>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.expected == c.actual)
    }
}

pub fn validate_against_link(d: &DiagramCode, expected: &[usize]) -> Result<ValidationReport> {
    if expected.len() != d.components.len() {
        return Err(Error::Precondition(format!(
            "{} genera given for {} components",
            expected.len(),
            d.components.len()
        )));
    }
    Ok(ValidationReport {
        checks: d
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| GenusCheck {
                component: c.name.clone(),
                expected: expected[i],
                actual: d.spine_genus(i),
            })
            .collect(),
    })
}
