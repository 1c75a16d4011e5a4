use std::collections::VecDeque;

use serde::Serialize;

use crate::diagram::code::{DiagramCode, Endpoint};
use crate::error::{Error, Result};
use crate::fundtree::{HandlebodyLink, PeripheralComponent};
use crate::group::{Presentation, Word};

/// Peripheral words of one diagram component, all based at the start of
/// the component's first declared arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractedComponent {
    pub name: String,
    pub genus: usize,
    pub base_arc: usize,
    /// One per spine edge; the first `genus` are dual to the longitudes.
    pub meridians: Vec<Word>,
    /// One per independent cycle of the spine.
    pub longitudes: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeripheralExtraction {
    pub components: Vec<ExtractedComponent>,
}

fn gen(a: usize) -> Word {
    Word::generator(a as u32)
}

/// The Wirtinger presentation: one generator per arc, one relator per
/// crossing and per vertex.
///
/// A generator is the loop passing under its arc from left to right. At a
/// crossing `x_out = x_over^s · x_in · x_over^-s`; at a vertex the
/// counterclockwise product of `x` (arriving arcs) and `x⁻¹` (leaving arcs)
/// is trivial.
pub fn wirtinger(d: &DiagramCode) -> Result<(Presentation, PeripheralExtraction)> {
    let mut relators = Vec::with_capacity(d.crossings.len() + d.vertices.len());
    for x in &d.crossings {
        let o = gen(x.over).pow(x.sign as i64);
        let r = o.mul(&gen(x.under_in)).mul(&o.inverse()).mul(&gen(x.under_out).inverse());
        relators.push(r);
    }
    for v in &d.vertices {
        let r = v.ends.iter().fold(Word::identity(), |acc, e| {
            let g = gen(e.arc);
            acc.mul(&if e.outgoing { g.inverse() } else { g })
        });
        relators.push(r);
    }
    let names = d.arcs.iter().map(|a| a.name.clone()).collect();
    let mut p = Presentation::with_names(names, relators)?;
    p.metadata = Some("Wirtinger presentation".into());
    let components = (0..d.components.len()).map(|c| extract(d, c)).collect::<Result<_>>()?;
    Ok((p, PeripheralExtraction { components }))
}

/// Walk the top of the component's tube. Nodes are arc starts (ids
/// `0..arcs`) and vertices (ids `arcs..`); an edge's word is what a path
/// on top of the tube picks up while following it forward.
fn extract(d: &DiagramCode, c: usize) -> Result<ExtractedComponent> {
    let n = d.arcs.len();
    let comp = &d.components[c];
    let mut edges: Vec<(usize, usize, Word, usize)> = Vec::new();
    for &a in &comp.arcs {
        if d.arcs[a].closed {
            edges.push((a, a, Word::identity(), a));
            continue;
        }
        match d.end(a) {
            Some(Endpoint::Crossing(i)) => {
                let x = &d.crossings[i];
                edges.push((a, x.under_out, gen(x.over).pow(-(x.sign as i64)), a));
            }
            Some(Endpoint::Vertex(v)) => edges.push((a, n + v, Word::identity(), a)),
            None => {}
        }
        if let Some(Endpoint::Vertex(v)) = d.start(a) {
            edges.push((n + v, a, Word::identity(), a));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + d.vertices.len()];
    for (i, (u, w, _, _)) in edges.iter().enumerate() {
        adj[*u].push(i);
        if u != w {
            adj[*w].push(i);
        }
    }
    let base = comp.arcs[0];
    let mut path: Vec<Option<Word>> = vec![None; adj.len()];
    let mut tree = vec![false; edges.len()];
    path[base] = Some(Word::identity());
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &e in &adj[u] {
            let (from, to, ref w, _) = edges[e];
            let pu = path[u].clone().expect("visited");
            let (next, word) = if from == u { (to, pu.mul(w)) } else { (from, pu.mul(&w.inverse())) };
            if path[next].is_none() {
                path[next] = Some(word);
                tree[e] = true;
                queue.push_back(next);
            }
        }
    }

    // spine edges: arcs joined through under-crossings
    let mut class: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = p[p[x]];
            return find(p, p[x]);
        }
        x
    }
    for x in &d.crossings {
        if d.arcs[x.under_in].component == c {
            let (a, b) = (find(&mut class, x.under_in), find(&mut class, x.under_out));
            let (lo, hi) = (a.min(b), a.max(b));
            class[hi] = lo;
        }
    }
    let based_meridian = |a: usize| {
        let p = path[a].clone().expect("component is connected");
        gen(a).conjugate_by(&p)
    };

    let mut longitudes = Vec::new();
    let mut reps = Vec::new();
    for (e, (from, to, w, arc)) in edges.iter().enumerate() {
        if tree[e] {
            continue;
        }
        let (pf, pt) = (path[*from].clone().expect("visited"), path[*to].clone().expect("visited"));
        longitudes.push(pf.mul(w).mul(&pt.inverse()));
        let rep = find(&mut class, *arc);
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    }
    let genus = longitudes.len();
    let mut rest: Vec<usize> = comp.arcs.iter().map(|&a| find(&mut class, a)).collect();
    rest.sort_unstable();
    rest.dedup();
    for r in rest {
        if !reps.contains(&r) {
            reps.push(r);
        }
    }
    if genus != d.spine_genus(c) {
        return Err(Error::Invalid(format!(
            "component {}: traced {genus} cycles but the spine has genus {}",
            comp.name,
            d.spine_genus(c)
        )));
    }
    Ok(ExtractedComponent {
        name: comp.name.clone(),
        genus,
        base_arc: base,
        meridians: reps.into_iter().map(based_meridian).collect(),
        longitudes,
    })
}

/// The handlebody link of a diagram: exterior group plus peripheral words.
/// Component ids are `1..` in declaration order.
pub fn diagram_to_link(d: &DiagramCode, name: impl Into<String>) -> Result<HandlebodyLink> {
    let (p, ext) = wirtinger(d)?;
    let components = ext
        .components
        .into_iter()
        .enumerate()
        .map(|(i, c)| PeripheralComponent {
            id: i as u32 + 1,
            genus: c.genus as u32,
            meridians: c.meridians,
            longitudes: c.longitudes,
            label: c.name,
        })
        .collect();
    HandlebodyLink::new(name, p, components)
}

/// Presentation text followed by the peripheral words as comment lines.
pub fn render_with_peripherals(p: &Presentation, ext: &PeripheralExtraction) -> String {
    let mut out = p.to_string();
    for c in &ext.components {
        out.push_str(&format!("# component {} genus {}\n", c.name, c.genus));
        for m in &c.meridians {
            out.push_str(&format!("#   meridian: {}\n", m.display_with(p.names())));
        }
        for l in &c.longitudes {
            out.push_str(&format!("#   longitude: {}\n", l.display_with(p.names())));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelian_invariants;
    use crate::diagram::code::parse_diagram;
    use crate::finite::FiniteGroup;
    use crate::homs::{all_homomorphisms, count_homomorphisms, plan_search, SearchOptions};

    const TREFOIL: &str = "component K: a b c\nX: o=c u=a>b s=+\nX: o=a u=b>c s=+\nX: o=b u=c>a s=+\n";
    const HOPF: &str = "component A: a\ncomponent B: b\nX: o=b u=a>a s=+\nX: o=a u=b>b s=+\n";
    const THETA: &str = "component T: p q r\nV: p> q> r>\nV: p< r< q<\n";

    fn naive_count(p: &Presentation, g: &FiniteGroup) -> usize {
        let n = p.generator_count();
        let mut count = 0;
        let mut imgs = vec![0u32; n];
        loop {
            let h = crate::homs::Homomorphism::new(imgs.clone());
            if h.respects(p, g) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                imgs[k] += 1;
                if (imgs[k] as usize) < g.order() {
                    break;
                }
                imgs[k] = 0;
                k += 1;
            }
        }
    }

    fn commute_everywhere(p: &Presentation, a: &Word, b: &Word, groups: &[&str]) {
        for g in groups {
            let g: FiniteGroup = g.parse().unwrap();
            for h in all_homomorphisms(p, &g, SearchOptions::default()).unwrap() {
                let (x, y) = (h.eval(&g, a).unwrap(), h.eval(&g, b).unwrap());
                assert_eq!(g.mul(x, y), g.mul(y, x), "in {}", g.name());
            }
        }
    }

    #[test]
    fn unknot() {
        let (p, ext) = wirtinger(&parse_diagram("component K: loop a").unwrap()).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(ext.components[0].meridians, vec![Word::generator(0)]);
        assert_eq!(ext.components[0].longitudes, vec![Word::identity()]);
    }

    #[test]
    fn trefoil() {
        let (p, ext) = wirtinger(&parse_diagram(TREFOIL).unwrap()).unwrap();
        assert_eq!((p.generator_count(), p.relators().len()), (3, 3));
        assert_eq!(abelian_invariants(&p).to_string(), "Z");
        let s3: FiniteGroup = "S3".parse().unwrap();
        let fast = count_homomorphisms(&p, &s3, &plan_search(&p), SearchOptions::default()).unwrap();
        assert_eq!(fast as usize, naive_count(&p, &s3));
        assert_eq!(fast, 12);
        let k = &ext.components[0];
        assert_eq!(k.genus, 1);
        assert_eq!(k.longitudes[0].len(), 3);
        commute_everywhere(&p, &k.meridians[0], &k.longitudes[0], &["S3", "A4", "S4", "A5"]);
    }

    #[test]
    fn hopf() {
        let (p, ext) = wirtinger(&parse_diagram(HOPF).unwrap()).unwrap();
        assert_eq!(abelian_invariants(&p).to_string(), "Z^2");
        let (a, b) = (&ext.components[0], &ext.components[1]);
        // each longitude is homologous to ± the other meridian
        assert_eq!(a.longitudes[0].exponent_sum(0), 0);
        assert_eq!(a.longitudes[0].exponent_sum(1).abs(), 1);
        assert_eq!(b.longitudes[0].exponent_sum(1), 0);
        assert_eq!(b.longitudes[0].exponent_sum(0).abs(), 1);
        assert_eq!(a.longitudes[0].exponent_sum(1), b.longitudes[0].exponent_sum(0));
    }

    #[test]
    fn theta_is_a_genus_two_handlebody() {
        let (p, ext) = wirtinger(&parse_diagram(THETA).unwrap()).unwrap();
        let t = &ext.components[0];
        assert_eq!(t.genus, 2);
        assert_eq!(t.meridians.len(), 3);
        assert_eq!(abelian_invariants(&p).to_string(), "Z^2");
        let a4: FiniteGroup = "A4".parse().unwrap();
        assert_eq!(count_homomorphisms(&p, &a4, &plan_search(&p), SearchOptions::default()).unwrap(), 144);
        // an unknotted handlebody: the boundary carries the whole group
        let l = diagram_to_link(&parse_diagram(THETA).unwrap(), "theta").unwrap();
        let r = crate::fundtree::g_image(&l, &a4, &[1], Default::default()).unwrap();
        assert_eq!(r.surjective_orbits, 4);
        assert_eq!(r.proper_orbits, 0);
    }

    #[test]
    fn peripheral_words_commute_where_they_should() {
        // on a torus boundary meridian and longitude commute
        for text in [TREFOIL, HOPF] {
            let (p, ext) = wirtinger(&parse_diagram(text).unwrap()).unwrap();
            for c in &ext.components {
                commute_everywhere(&p, &c.meridians[0], &c.longitudes[0], &["S3", "A4", "S4"]);
            }
        }
    }

    #[test]
    fn one_crossing_relation_is_redundant() {
        let a4: FiniteGroup = "A4".parse().unwrap();
        let s4: FiniteGroup = "S4".parse().unwrap();
        for text in [TREFOIL, HOPF] {
            let (p, _) = wirtinger(&parse_diagram(text).unwrap()).unwrap();
            for drop in 0..p.relators().len() {
                let mut rels = p.relators().to_vec();
                rels.remove(drop);
                let q = Presentation::with_names(p.names().to_vec(), rels).unwrap();
                for g in [&a4, &s4] {
                    let c = |p: &Presentation| count_homomorphisms(p, g, &plan_search(p), SearchOptions::default()).unwrap();
                    assert_eq!(c(&p), c(&q));
                }
            }
        }
    }

    #[test]
    fn reidemeister_two_leaves_counts_unchanged() {
        // push arc b of the Hopf link under arc a once more
        let moved = "component A: a\ncomponent B: b1 b2 b3\n\
                     X: o=b1 u=a>a s=+\nX: o=a u=b1>b2 s=+\nX: o=a u=b2>b3 s=-\nX: o=a u=b3>b1 s=+\n";
        // consistency of the extra pair: b2 enters and leaves under a with opposite signs
        let (p0, _) = wirtinger(&parse_diagram(HOPF).unwrap()).unwrap();
        let (p1, _) = wirtinger(&parse_diagram(moved).unwrap()).unwrap();
        for g in ["S3", "A4", "S4"] {
            let g: FiniteGroup = g.parse().unwrap();
            let c = |p: &Presentation| count_homomorphisms(p, &g, &plan_search(p), SearchOptions::default()).unwrap();
            assert_eq!(c(&p0), c(&p1));
        }
    }

    #[test]
    fn links_from_diagrams() {
        let l = diagram_to_link(&parse_diagram(HOPF).unwrap(), "hopf").unwrap();
        assert_eq!(l.components().len(), 2);
        assert_eq!(l.component(2).unwrap().label, "B");
        let (p, ext) = wirtinger(&parse_diagram(THETA).unwrap()).unwrap();
        let text = render_with_peripherals(&p, &ext);
        assert!(text.contains("gens: p, q, r"));
        assert!(text.contains("longitude"));
    }
}
