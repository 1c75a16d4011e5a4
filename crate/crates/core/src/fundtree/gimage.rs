use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{iso_class, normal_closure_within, subgroup_closure, FiniteGroup, IsoClassLabel, Subgroup};
use crate::fundtree::link::{HandlebodyLink, PeripheralComponent};
use crate::group::simplify;
use crate::homs::{
    all_homomorphisms, classify, is_surjective, restrict_along, ClassifyMode, Homomorphism, SearchOptions,
};

/// Subgroup generated by the images of a component's meridians and longitudes.
pub fn peripheral_image(g: &FiniteGroup, h: &Homomorphism, c: &PeripheralComponent) -> Result<Subgroup> {
    let words: Vec<_> = c.peripheral_words().cloned().collect();
    Ok(subgroup_closure(g, &restrict_along(h, g, &words)?))
}

/// Image of the kernel of the inclusion into the handlebody: the normal
/// closure of the meridian images inside the peripheral image.
pub fn kernel_image(g: &FiniteGroup, h: &Homomorphism, c: &PeripheralComponent) -> Result<Subgroup> {
    let ambient = peripheral_image(g, h, c)?;
    let meridians = restrict_along(h, g, &c.meridians)?;
    normal_closure_within(g, &meridians, &ambient)
}

/// Surjective, and no selected component's peripheral image is all of `g`.
pub fn is_proper(g: &FiniteGroup, h: &Homomorphism, link: &HandlebodyLink, components: &[u32]) -> Result<bool> {
    if components.is_empty() {
        return Err(Error::Precondition("properness needs at least one component".into()));
    }
    let selected = components.iter().map(|&id| link.component(id)).collect::<Result<Vec<_>>>()?;
    if !is_surjective(h, g) {
        return Ok(false);
    }
    for c in selected {
        if peripheral_image(g, h, c)?.is_whole() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug)]
pub struct GImageOptions {
    pub mode: ClassifyMode,
    pub search: SearchOptions,
    /// Run Tietze simplification on the ambient presentation first.
    pub simplify: bool,
}

impl Default for GImageOptions {
    fn default() -> Self {
        GImageOptions {
            mode: ClassifyMode::Automorphism,
            search: SearchOptions::default(),
            simplify: true,
        }
    }
}

/// One surjective orbit with per-component subgroup data.
#[derive(Clone, Debug)]
pub struct SurjectionOrbit {
    pub representative: Homomorphism,
    pub size: usize,
    pub peripheral: Vec<Subgroup>,
    pub kernel: Vec<Subgroup>,
}

/// All surjections of a link group onto `G` up to the chosen mode, with the
/// subgroups every G-image report is built from.
#[derive(Clone, Debug)]
pub struct SurjectionCensus {
    pub link: String,
    pub group: FiniteGroup,
    pub mode: ClassifyMode,
    pub component_ids: Vec<u32>,
    pub component_labels: Vec<String>,
    pub homomorphism_count: usize,
    pub orbits: Vec<SurjectionOrbit>,
}

pub fn surjection_census(link: &HandlebodyLink, g: &FiniteGroup, opts: GImageOptions) -> Result<SurjectionCensus> {
    let link = if opts.simplify {
        let rw = simplify(link.ambient())?;
        link.rewritten(rw.presentation.clone(), &rw.images)?
    } else {
        link.clone()
    };
    let homs = all_homomorphisms(link.ambient(), g, opts.search)?;
    let homomorphism_count = homs.len();
    let surjective: Vec<Homomorphism> = homs.into_iter().filter(|h| is_surjective(h, g)).collect();
    let orbits = classify(&surjective, g, opts.mode)?
        .into_iter()
        .map(|o| {
            let h = o.representative;
            let peripheral = link.components().iter().map(|c| peripheral_image(g, &h, c)).collect::<Result<_>>()?;
            let kernel = link.components().iter().map(|c| kernel_image(g, &h, c)).collect::<Result<_>>()?;
            Ok(SurjectionOrbit {
                representative: h,
                size: o.size,
                peripheral,
                kernel,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurjectionCensus {
        link: link.name.clone(),
        group: g.clone(),
        mode: opts.mode,
        component_ids: link.components().iter().map(|c| c.id).collect(),
        component_labels: link.components().iter().map(|c| c.label.clone()).collect(),
        homomorphism_count,
        orbits,
    })
}

impl SurjectionCensus {
    fn indices(&self, ids: &[u32]) -> Result<Vec<usize>> {
        if ids.is_empty() {
            return Err(Error::Precondition("select at least one component".into()));
        }
        let mut idx = Vec::with_capacity(ids.len());
        for id in ids {
            let i = self
                .component_ids
                .iter()
                .position(|c| c == id)
                .ok_or_else(|| Error::Invalid(format!("link {} has no component {id}", self.link)))?;
            if idx.contains(&i) {
                return Err(Error::Invalid(format!("component {id} selected twice")));
            }
            idx.push(i);
        }
        Ok(idx)
    }

    /// The G-image with respect to the components `ids`, in the given order.
    pub fn report(&self, ids: &[u32]) -> Result<GImageReport> {
        let idx = self.indices(ids)?;
        let mut labels: HashMap<Subgroup, IsoClassLabel> = HashMap::new();
        let mut label = |s: &Subgroup| -> Result<IsoClassLabel> {
            if let Some(l) = labels.get(s) {
                return Ok(l.clone());
            }
            let l = iso_class(&self.group, s)?;
            labels.insert(s.clone(), l.clone());
            Ok(l)
        };
        let mut tally: BTreeMap<TupleKey, usize> = BTreeMap::new();
        let mut proper = 0;
        for o in &self.orbits {
            if idx.iter().any(|&i| o.peripheral[i].is_whole()) {
                continue;
            }
            proper += 1;
            let orders = idx.iter().map(|&i| o.peripheral[i].order()).collect();
            let per = idx.iter().map(|&i| label(&o.peripheral[i])).collect::<Result<_>>()?;
            let ker = idx.iter().map(|&i| label(&o.kernel[i])).collect::<Result<_>>()?;
            *tally.entry((orders, per, ker)).or_default() += 1;
        }
        let mut entries: Vec<GImageEntry> = tally
            .into_iter()
            .map(|((peripheral_order, peripheral, kernel), multiplicity)| GImageEntry {
                peripheral,
                peripheral_order,
                kernel,
                multiplicity,
            })
            .collect();
        entries.sort_by(|a, b| {
            b.peripheral_order
                .cmp(&a.peripheral_order)
                .then_with(|| a.peripheral.cmp(&b.peripheral))
                .then_with(|| a.kernel.cmp(&b.kernel))
        });
        Ok(GImageReport {
            link: self.link.clone(),
            group: self.group.name().to_string(),
            mode: self.mode,
            components: idx.iter().map(|&i| self.component_ids[i]).collect(),
            component_labels: idx.iter().map(|&i| self.component_labels[i].clone()).collect(),
            homomorphism_count: self.homomorphism_count,
            surjective_orbits: self.orbits.len(),
            proper_orbits: proper,
            entries,
        })
    }

    /// Reports for every `fold`-element subset of components, in
    /// lexicographic order of component positions.
    pub fn profile(&self, fold: usize) -> Result<GImageProfile> {
        let n = self.component_ids.len();
        if fold == 0 || fold > n {
            return Err(Error::Precondition(format!("fold {fold} needs 1 ≤ fold ≤ {n}")));
        }
        let reports = subsets(n, fold)
            .into_iter()
            .map(|s| self.report(&s.iter().map(|&i| self.component_ids[i]).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        Ok(GImageProfile {
            link: self.link.clone(),
            fold,
            component_count: n,
            reports,
        })
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The G-image of a link with respect to `components`.
pub fn g_image(link: &HandlebodyLink, g: &FiniteGroup, components: &[u32], opts: GImageOptions) -> Result<GImageReport> {
    surjection_census(link, g, opts)?.report(components)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GImageEntry {
    /// Isomorphism class of each selected component's peripheral image.
    pub peripheral: Vec<IsoClassLabel>,
    pub peripheral_order: Vec<usize>,
    /// Isomorphism class of each selected component's kernel image `H`.
    pub kernel: Vec<IsoClassLabel>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GImageReport {
    pub link: String,
    pub group: String,
    pub mode: ClassifyMode,
    pub components: Vec<u32>,
    pub component_labels: Vec<String>,
    pub homomorphism_count: usize,
    pub surjective_orbits: usize,
    pub proper_orbits: usize,
    pub entries: Vec<GImageEntry>,
}

pub type Breakdown = BTreeMap<IsoClassLabel, BTreeMap<IsoClassLabel, usize>>;

impl GImageReport {
    pub fn fold(&self) -> usize {
        self.components.len()
    }

    /// Multiset of kernel tuples.
    pub fn kernel_tuples(&self) -> BTreeMap<Vec<IsoClassLabel>, usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.kernel.clone()).or_default() += e.multiplicity;
        }
        m
    }

    /// Peripheral class ↦ (kernel class ↦ count) for the component at
    /// position `pos` of the selection.
    pub fn breakdown(&self, pos: usize) -> Breakdown {
        let mut m: Breakdown = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.peripheral[pos].clone())
                .or_default()
                .entry(e.kernel[pos].clone())
                .or_default() += e.multiplicity;
        }
        m
    }

    /// Peripheral class ↦ count for position `pos`.
    pub fn peripheral_counts(&self, pos: usize) -> BTreeMap<IsoClassLabel, usize> {
        self.breakdown(pos)
            .into_iter()
            .map(|(k, v)| (k, v.values().sum()))
            .collect()
    }

    /// A text table: one row per peripheral class with its kernel split for
    /// a single component, one row per tuple otherwise.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} -> {} ({}), components {}: {} proper of {} surjective orbits",
            self.link,
            self.group,
            self.mode,
            self.component_labels.join(", "),
            self.proper_orbits,
            self.surjective_orbits
        );
        if self.fold() == 1 {
            let mut columns: Vec<(usize, IsoClassLabel)> = Vec::new();
            for e in &self.entries {
                let key = (e.peripheral_order[0], e.peripheral[0].clone());
                if !columns.contains(&key) {
                    columns.push(key);
                }
            }
            let bd = self.breakdown(0);
            let _ = writeln!(out, "  {:<16} | H", "image");
            for (_, p) in columns {
                let split = &bd[&p];
                let total: usize = split.values().sum();
                let mut hs: Vec<(&IsoClassLabel, &usize)> = split.iter().collect();
                hs.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
                let hs: Vec<String> = hs.iter().map(|(h, c)| format!("{h}: {c}")).collect();
                let _ = writeln!(out, "  {:<16} | {}", format!("{p}: {total}"), hs.join(", "));
            }
        } else {
            for (t, c) in self.kernel_tuples() {
                let t: Vec<&str> = t.iter().map(|l| l.as_str()).collect();
                let _ = writeln!(out, "  ({}) x{c}", t.join(", "));
            }
        }
        out
    }
}

/// Reports for all `fold`-subsets of a link's components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GImageProfile {
    pub link: String,
    pub fold: usize,
    pub component_count: usize,
    pub reports: Vec<GImageReport>,
}

/// What [`compare_g_images`] compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CompareScope {
    /// Multisets of kernel tuples: the invariant itself.
    #[default]
    Kernel,
    /// Peripheral and kernel classes together.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "distinguished")]
    Distinguished,
    #[serde(rename = "indistinguishable-at-this-invariant")]
    Indistinguishable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "distinguished",
            Verdict::Indistinguishable => "indistinguishable-at-this-invariant",
        })
    }
}

/// Component subset, peripheral classes, kernel classes.
type TupleKey = (Vec<usize>, Vec<IsoClassLabel>, Vec<IsoClassLabel>);
type Tally = BTreeMap<Vec<(Option<IsoClassLabel>, IsoClassLabel)>, usize>;

fn tally(r: &GImageReport, scope: CompareScope, order: &[usize]) -> Tally {
    let mut m = Tally::new();
    for e in &r.entries {
        let key = order
            .iter()
            .map(|&j| {
                let p = (scope == CompareScope::Full).then(|| e.peripheral[j].clone());
                (p, e.kernel[j].clone())
            })
            .collect();
        *m.entry(key).or_default() += e.multiplicity;
    }
    m
}

/// Indistinguishable iff some permutation of the components carries every
/// report of `a` onto the matching report of `b`.
pub fn compare_g_images(a: &GImageProfile, b: &GImageProfile, scope: CompareScope) -> Result<Verdict> {
    if a.fold != b.fold {
        return Err(Error::Precondition(format!("folds differ: {} vs {}", a.fold, b.fold)));
    }
    if let (Some(ra), Some(rb)) = (a.reports.first(), b.reports.first()) {
        if ra.group != rb.group || ra.mode != rb.mode {
            return Err(Error::Precondition("reports use different groups or modes".into()));
        }
    }
    if a.component_count != b.component_count {
        return Ok(Verdict::Distinguished);
    }
    let n = a.component_count;
    let subs = subsets(n, a.fold);
    let b_tallies: HashMap<Vec<usize>, Tally> = subs
        .iter()
        .zip(&b.reports)
        .map(|(s, r)| (s.clone(), tally(r, scope, &(0..s.len()).collect::<Vec<_>>())))
        .collect();
    let matches = |sigma: &[usize]| {
        subs.iter().zip(&a.reports).all(|(s, ra)| {
            let mut image: Vec<usize> = s.iter().map(|&i| sigma[i]).collect();
            image.sort_unstable();
            // position in a's tuple that lands at each position of b's tuple
            let order: Vec<usize> = image
                .iter()
                .map(|&t| s.iter().position(|&i| sigma[i] == t).expect("in image"))
                .collect();
            b_tallies.get(&image) == Some(&tally(ra, scope, &order))
        })
    };
    Ok(if permutations(n).iter().any(|s| matches(s)) {
        Verdict::Indistinguishable
    } else {
        Verdict::Distinguished
    })
}
